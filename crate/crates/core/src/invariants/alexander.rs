use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;

use super::{check_cap, linalg, Caps, InvariantError};
use crate::diagram::{LinkDiagram, Sign};
use crate::laurent::LaurentPoly1;

/// Alexander polynomial of a knot, normalized so that `Δ(t) = Δ(t^-1)` and
/// `Δ(1) = 1`.
///
/// Rows of the Alexander matrix come from the Wirtinger relation at each
/// crossing: `1 - t` on the over-arc and `t`, `-1` on the incoming and
/// outgoing under-arcs (swapped at negative crossings).
pub fn alexander(d: &LinkDiagram) -> Result<LaurentPoly1, InvariantError> {
    alexander_with(d, &Caps::default())
}

pub fn alexander_with(d: &LinkDiagram, caps: &Caps) -> Result<LaurentPoly1, InvariantError> {
    if d.n_components() != 1 {
        return Err(InvariantError::MultiComponentUnsupported(d.n_components()));
    }
    let n = d.n_crossings();
    check_cap(n, caps.bracket)?;
    if n == 0 {
        return Ok(LaurentPoly1::one('t'));
    }
    let w = d.wiring();
    // Wirtinger arcs: merge the two halves of every over-strand
    let mut parent: Vec<usize> = (0..w.n_arcs()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for s in &w.slots {
        let (a, b) = (find(&mut parent, s[1]), find(&mut parent, s[3]));
        parent[a] = b;
    }
    let mut index = vec![usize::MAX; w.n_arcs()];
    let mut n_gen = 0;
    for a in 0..w.n_arcs() {
        let r = find(&mut parent, a);
        if index[r] == usize::MAX {
            index[r] = n_gen;
            n_gen += 1;
        }
    }
    let gen = |p: &mut Vec<usize>, a: usize| index[find(p, a)];

    let one = LaurentPoly1::one('t');
    let t = LaurentPoly1::monomial('t', 1, 1);
    let minus_one = LaurentPoly1::monomial('t', 0, -1);
    let one_minus_t = &one - &t;
    let mut m = vec![vec![LaurentPoly1::zero('t'); n_gen]; n];
    for (c, x) in d.crossings().iter().enumerate() {
        let s = w.slots[c];
        let (over, inc, out) = (gen(&mut parent, s[1]), gen(&mut parent, s[0]), gen(&mut parent, s[2]));
        let (ci, co) = match x.sign() {
            Sign::Positive => (&t, &minus_one),
            Sign::Negative => (&minus_one, &t),
        };
        m[c][over] = &m[c][over] + &one_minus_t;
        m[c][inc] = &m[c][inc] + ci;
        m[c][out] = &m[c][out] + co;
    }
    let minor: Vec<Vec<LaurentPoly1>> = m[..n - 1].iter().map(|row| row[..n_gen - 1].to_vec()).collect();
    let det = linalg::det_laurent(minor, 't');
    Ok(normalize(det))
}

/// Multiply by the unit `±t^k` that makes the polynomial symmetric with
/// value 1 at `t = 1`.
fn normalize(p: LaurentPoly1) -> LaurentPoly1 {
    let (Some(lo), Some(hi)) = (p.min_exp(), p.max_exp()) else {
        return p;
    };
    let centred = p.shift(-(lo + hi) / 2);
    if centred.evaluate_unit(1).is_negative() {
        -centred
    } else {
        centred
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{dt_to_pd, parse_dt, parse_pd};

    fn dt(s: &str) -> LinkDiagram {
        dt_to_pd(&parse_dt(s).unwrap()).unwrap()
    }

    fn t(terms: &[(i64, i64)]) -> LaurentPoly1 {
        LaurentPoly1::from_terms('t', terms.iter().copied())
    }

    #[test]
    fn small_knots() {
        assert!(alexander(&LinkDiagram::unknot()).unwrap().is_one());
        assert!(alexander(&parse_pd("X(1,1,2,2)").unwrap()).unwrap().is_one());
        let tre = t(&[(-1, 1), (0, -1), (1, 1)]);
        assert_eq!(alexander(&dt("4 6 2")).unwrap(), tre);
        assert_eq!(alexander(&dt("4 6 2").mirror()).unwrap(), tre);
        assert_eq!(alexander(&dt("4 6 8 2")).unwrap(), t(&[(-1, -1), (0, 3), (1, -1)]));
        assert_eq!(alexander(&dt("6 8 10 2 4")).unwrap(), t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn links_are_rejected() {
        let hopf = parse_pd("X(4,1,3,2);X(2,3,1,4)").unwrap();
        assert_eq!(alexander(&hopf), Err(InvariantError::MultiComponentUnsupported(2)));
    }
}
