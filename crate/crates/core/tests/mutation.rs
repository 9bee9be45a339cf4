use knot_detect_core::diagram::{dt_to_pd, parse_dt};
use knot_detect_core::invariants::{alexander, homflypt, jones, signature};
use knot_detect_core::khovanov::khovanov_f2;
use knot_detect_core::tangle::{find_tangle_regions, is_oriented_mutation, mutate, SquareSymmetry, TangleRegion};
use knot_detect_core::LinkDiagram;

fn dt(s: &str) -> LinkDiagram {
    dt_to_pd(&parse_dt(s).unwrap()).unwrap()
}

const CONWAY: &str = "4 8 12 2 -16 -18 6 -20 -22 -14 -10";
const KINOSHITA_TERASAKA: &str = "4 8 12 2 -18 -20 6 -10 -22 -14 -16";

#[test]
fn half_turn_of_five_crossing_region_gives_the_other_diagram() {
    let conway = dt(CONWAY);
    let kt = dt(KINOSHITA_TERASAKA);
    let region = TangleRegion::from_crossings(&conway, &[0, 1, 2, 3, 6]).unwrap();
    let m = mutate(&conway, &region, SquareSymmetry::RotateZ).unwrap();
    assert_eq!(m.canonical_key(), kt.reverse().canonical_key());
}

#[test]
fn oriented_mutant_shares_invariants() {
    let conway = dt(CONWAY);
    let kt = dt(KINOSHITA_TERASAKA);
    let region = TangleRegion::from_crossings(&conway, &[0, 1, 2, 3, 6]).unwrap();
    let oriented: Vec<SquareSymmetry> = SquareSymmetry::ALL
        .into_iter()
        .filter(|&s| s != SquareSymmetry::Identity && is_oriented_mutation(&region, s))
        .collect();
    assert_eq!(oriented.len(), 1);
    let m = mutate(&conway, &region, oriented[0]).unwrap();
    assert_eq!(jones(&m).unwrap(), jones(&kt).unwrap());
    assert_eq!(homflypt(&m).unwrap(), homflypt(&kt).unwrap());
    assert_eq!(alexander(&m).unwrap(), alexander(&kt).unwrap());
    assert_eq!(signature(&m).unwrap(), signature(&kt).unwrap());
    assert_eq!(khovanov_f2(&m).unwrap(), khovanov_f2(&kt).unwrap());
}

#[test]
fn mutation_preserves_invariants_on_small_knots() {
    for code in ["4 8 10 2 6", "4 10 -14 -12 2 -8 -6", "4 8 -12 2 -14 -6 -10", "6 10 12 14 2 4 8"] {
        let d = dt(code);
        let (j, h, k) = (jones(&d).unwrap(), homflypt(&d).unwrap(), khovanov_f2(&d).unwrap());
        for r in find_tangle_regions(&d, 4) {
            for s in SquareSymmetry::ALL {
                let m = mutate(&d, &r, s).unwrap();
                assert!(m.is_knot());
                assert_eq!(jones(&m).unwrap(), j, "{code} {:?} {s:?}", r.crossings());
                if is_oriented_mutation(&r, s) {
                    assert_eq!(homflypt(&m).unwrap(), h, "{code} {:?} {s:?}", r.crossings());
                    assert_eq!(khovanov_f2(&m).unwrap(), k, "{code} {:?} {s:?}", r.crossings());
                }
            }
        }
    }
}
