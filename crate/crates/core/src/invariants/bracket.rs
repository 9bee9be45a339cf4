use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{check_cap, Caps, InvariantError};
use crate::diagram::LinkDiagram;
use crate::laurent::LaurentPoly1;

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Returns `true` if the two classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Histogram of states: `counts[k][l]` is the number of states with `k`
/// B-smoothings (bit set) and `l` loops.
pub(crate) fn state_histogram(d: &LinkDiagram) -> Vec<Vec<u64>> {
    let n = d.n_crossings();
    let w = d.wiring();
    let n_arcs = w.n_arcs();
    let max_loops = n_arcs + d.free_loops() + 1;
    let mut counts = vec![vec![0u64; max_loops + 1]; n + 1];
    for state in 0u64..(1u64 << n) {
        let mut dsu = Dsu::new(n_arcs);
        let mut comps = n_arcs;
        for (c, slots) in w.slots.iter().enumerate() {
            let pairs = if (state >> c) & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
            for (x, y) in pairs {
                if dsu.union(slots[x], slots[y]) {
                    comps -= 1;
                }
            }
        }
        counts[state.count_ones() as usize][comps + d.free_loops()] += 1;
    }
    counts
}

/// Raw Kauffman bracket: sum over states of `A^(#A - #B) δ^(loops - 1)`.
pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly1, InvariantError> {
    kauffman_bracket_with(d, &Caps::default())
}

pub fn kauffman_bracket_with(d: &LinkDiagram, caps: &Caps) -> Result<LaurentPoly1, InvariantError> {
    let n = d.n_crossings();
    check_cap(n, caps.bracket)?;
    let delta = LaurentPoly1::from_terms('A', [(2, -1), (-2, -1)]);
    let hist = state_histogram(d);
    let max_loops = hist.iter().map(Vec::len).max().unwrap_or(1);
    let mut delta_pow = vec![LaurentPoly1::one('A')];
    for i in 1..max_loops {
        let next = &delta_pow[i - 1] * &delta;
        delta_pow.push(next);
    }
    let mut out = LaurentPoly1::zero('A');
    for (b, row) in hist.iter().enumerate() {
        let a_exp = n as i64 - 2 * b as i64;
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = delta_pow[loops - 1].shift(a_exp).scalar_mul(&BigInt::from(count));
            out = out + term;
        }
    }
    Ok(out)
}

/// Jones polynomial, in `t` when all exponents are integral and in
/// `s = t^(1/2)` otherwise.
pub fn jones(d: &LinkDiagram) -> Result<LaurentPoly1, InvariantError> {
    jones_with(d, &Caps::default())
}

pub fn jones_with(d: &LinkDiagram, caps: &Caps) -> Result<LaurentPoly1, InvariantError> {
    let bracket = kauffman_bracket_with(d, caps)?;
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let v_a = bracket.shift(-3 * w).scalar_mul(&BigInt::from(sign));
    if v_a.terms().all(|(e, _)| e % 4 == 0) {
        Ok(v_a.map_exponents(|e| -e / 4).renamed('t'))
    } else {
        Ok(v_a.map_exponents(|e| -e / 2).renamed('s'))
    }
}

/// Unnormalized Jones polynomial in `q`, the graded Euler characteristic of
/// Khovanov homology:
/// `(-1)^n- q^(n+ - 2n-) Σ_s (-q)^|s| (q + q^-1)^loops(s)`.
pub fn unnormalized_jones(d: &LinkDiagram) -> Result<LaurentPoly1, InvariantError> {
    let caps = Caps::default();
    check_cap(d.n_crossings(), caps.bracket)?;
    let (np, nm) = d.sign_counts();
    let hist = state_histogram(d);
    let circle = LaurentPoly1::from_terms('q', [(1, 1), (-1, 1)]);
    let mut out = LaurentPoly1::zero('q');
    for (r, row) in hist.iter().enumerate() {
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let sign = if r % 2 == 0 { 1 } else { -1 };
            let term = circle.pow(loops as u32).shift(r as i64).scalar_mul(&BigInt::from(sign * count as i64));
            out = out + term;
        }
    }
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    Ok(out.shift(np as i64 - 2 * nm as i64).scalar_mul(&BigInt::from(sign)))
}
