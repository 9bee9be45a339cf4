use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{check_cap, linalg, Caps, InvariantError};
use crate::diagram::{LinkDiagram, Sign};
use crate::planar::Wiring;

/// Goeritz matrix of the white regions (one region deleted) together with
/// the Gordon–Litherland correction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzData {
    pub matrix: Vec<Vec<BigInt>>,
    pub correction: i64,
}

impl GoeritzData {
    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }
}

pub fn goeritz(d: &LinkDiagram) -> Result<GoeritzData, InvariantError> {
    goeritz_coloured(d, 0, &Caps::default())
}

/// Goeritz data with the faces of colour `white` (0 or 1) as the white
/// regions. Both colourings give the same signature and determinant.
pub(crate) fn goeritz_coloured(d: &LinkDiagram, white: u8, caps: &Caps) -> Result<GoeritzData, InvariantError> {
    check_cap(d.n_crossings(), caps.bracket)?;
    if d.n_crossings() == 0 {
        if d.n_components() > 1 {
            return Err(InvariantError::DisconnectedDiagram);
        }
        return Ok(GoeritzData { matrix: Vec::new(), correction: 0 });
    }
    let w = d.wiring();
    if d.free_loops() > 0 || w.pieces().1 != 1 {
        return Err(InvariantError::DisconnectedDiagram);
    }
    let (faces, n_faces) = w.faces();
    let colour = w.checkerboard(&faces, n_faces).expect("planar diagrams are checkerboard colourable");
    let mut white_index = vec![usize::MAX; n_faces];
    let mut n_white = 0;
    for f in 0..n_faces {
        if colour[f] == white {
            white_index[f] = n_white;
            n_white += 1;
        }
    }
    let mut g = vec![vec![BigInt::zero(); n_white]; n_white];
    let mut correction = 0i64;
    for (c, x) in d.crossings().iter().enumerate() {
        let corner = |j: u8| Wiring::corner_face(&faces, c, j);
        // corners b|c and d|a are the ones the A-smoothing merges
        let a_merged_white = colour[corner(1)] == white;
        let eta: i64 = if a_merged_white { -1 } else { 1 };
        let (u, v) = if a_merged_white { (corner(1), corner(3)) } else { (corner(0), corner(2)) };
        let (u, v) = (white_index[u], white_index[v]);
        if u != v {
            g[u][v] -= eta;
            g[v][u] -= eta;
            g[u][u] += eta;
            g[v][v] += eta;
        }
        // the oriented smoothing is the A-smoothing at positive crossings
        let oriented_merges_white = a_merged_white == (x.sign() == Sign::Positive);
        if !oriented_merges_white {
            correction += eta;
        }
    }
    let matrix: Vec<Vec<BigInt>> = g[1..].iter().map(|row| row[1..].to_vec()).collect();
    Ok(GoeritzData { matrix, correction })
}

/// Link signature, `sign(G) - μ`.
pub fn signature(d: &LinkDiagram) -> Result<i64, InvariantError> {
    let g = goeritz(d)?;
    Ok(signature_of(&g))
}

pub(crate) fn signature_of(g: &GoeritzData) -> i64 {
    linalg::signature(&g.matrix) - g.correction
}

/// `|det G|`; for a knot this is `|Δ(-1)|`.
pub fn determinant(d: &LinkDiagram) -> Result<BigInt, InvariantError> {
    let g = goeritz(d)?;
    Ok(linalg::det_int(g.matrix).abs())
}

/// Invariant factors of `H_1` of the double branched cover, omitting units.
/// A free summand appears as `0`.
pub fn dbc_homology(d: &LinkDiagram) -> Result<Vec<BigInt>, InvariantError> {
    let g = goeritz(d)?;
    Ok(linalg::invariant_factors(&g.matrix).into_iter().filter(|x| *x != BigInt::from(1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{dt_to_pd, parse_dt, parse_pd};

    fn dt(s: &str) -> LinkDiagram {
        dt_to_pd(&parse_dt(s).unwrap()).unwrap()
    }

    #[test]
    fn unknot() {
        let g = goeritz(&LinkDiagram::unknot()).unwrap();
        assert_eq!(g.dimension(), 0);
        assert_eq!(g.correction, 0);
        assert_eq!(signature(&LinkDiagram::unknot()).unwrap(), 0);
        assert_eq!(determinant(&LinkDiagram::unknot()).unwrap(), BigInt::from(1));
        assert!(dbc_homology(&LinkDiagram::unknot()).unwrap().is_empty());
    }

    #[test]
    fn kinks_are_invisible() {
        for pd in ["X(1,1,2,2)", "X(2,1,1,2)"] {
            let d = parse_pd(pd).unwrap();
            assert_eq!(signature(&d).unwrap(), 0, "{pd}");
            assert_eq!(determinant(&d).unwrap(), BigInt::from(1), "{pd}");
        }
    }

    #[test]
    fn trefoil() {
        let d = dt("4 6 2");
        assert_eq!(signature(&d).unwrap(), -2);
        assert_eq!(signature(&d.mirror()).unwrap(), 2);
        assert_eq!(determinant(&d).unwrap(), BigInt::from(3));
        assert_eq!(dbc_homology(&d).unwrap(), vec![BigInt::from(3)]);
    }

    #[test]
    fn figure_eight() {
        let d = dt("4 6 8 2");
        assert_eq!(signature(&d).unwrap(), 0);
        assert_eq!(determinant(&d).unwrap(), BigInt::from(5));
    }

    #[test]
    fn colourings_agree() {
        let caps = Caps::default();
        for code in ["4 6 2", "4 6 8 2", "6 8 10 2 4", "4 8 6 2", "4 8 -12 2 -14 -6 -10", "4 10 -14 -12 2 -8 -6"] {
            for d in [dt(code), dt(code).mirror()] {
                let a = goeritz_coloured(&d, 0, &caps).unwrap();
                let b = goeritz_coloured(&d, 1, &caps).unwrap();
                assert_eq!(signature_of(&a), signature_of(&b), "{code}");
                assert_eq!(linalg::det_int(a.matrix).abs(), linalg::det_int(b.matrix).abs(), "{code}");
            }
        }
    }

    #[test]
    fn split_diagram_is_rejected() {
        let d = dt("4 6 2").disjoint_union(&dt("4 6 2"));
        assert_eq!(goeritz(&d), Err(InvariantError::DisconnectedDiagram));
        assert_eq!(goeritz(&LinkDiagram::unlink(2)), Err(InvariantError::DisconnectedDiagram));
    }
}
