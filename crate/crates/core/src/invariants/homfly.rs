//! HOMFLYPT by skein recursion on signed Gauss codes.
//!
//! A state is a list of components, each a cyclic sequence of passages
//! `(crossing, over)`, plus a count of crossingless circles. Walking the
//! components in order from their base points, the first passage met at
//! every crossing should be an over-passage; such a descending state is an
//! unlink. Otherwise the first offending crossing is switched (making it
//! good) and smoothed (removing it), which terminates.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{check_cap, Caps, InvariantError};
use crate::diagram::LinkDiagram;
use crate::laurent::{LaurentPoly1, LaurentPoly2, Slot};

type Passage = (u16, bool);

#[derive(Clone, Debug)]
struct State {
    comps: Vec<Vec<Passage>>,
    signs: Vec<i8>,
    free: usize,
}

impl State {
    fn from_diagram(d: &LinkDiagram) -> Self {
        let comps = d
            .walks()
            .into_iter()
            .map(|walk| walk.into_iter().map(|(c, slot)| (c as u16, slot % 2 == 1)).collect())
            .collect();
        let signs = d.crossings().iter().map(|x| x.sign().value() as i8).collect();
        State { comps, signs, free: d.free_loops() }
    }

    /// Removes curls: a crossing met twice in a row along one component.
    fn remove_kinks(&mut self) {
        loop {
            let mut changed = false;
            for comp in self.comps.iter_mut() {
                let n = comp.len();
                if n < 2 {
                    continue;
                }
                if let Some(i) = (0..n).find(|&i| comp[i].0 == comp[(i + 1) % n].0) {
                    let j = (i + 1) % n;
                    let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                    comp.remove(hi);
                    comp.remove(lo);
                    changed = true;
                }
            }
            let before = self.comps.len();
            self.comps.retain(|c| !c.is_empty());
            self.free += before - self.comps.len();
            if !changed {
                return;
            }
        }
    }

    fn first_bad(&self) -> Option<u16> {
        let mut seen = vec![false; self.signs.len()];
        for comp in &self.comps {
            for &(c, over) in comp {
                if !seen[c as usize] {
                    if !over {
                        return Some(c);
                    }
                    seen[c as usize] = true;
                }
            }
        }
        None
    }

    fn switched(&self, c: u16) -> State {
        let mut s = self.clone();
        s.signs[c as usize] = -s.signs[c as usize];
        for comp in s.comps.iter_mut() {
            for p in comp.iter_mut() {
                if p.0 == c {
                    p.1 = !p.1;
                }
            }
        }
        s
    }

    fn smoothed(&self, c: u16) -> State {
        let mut hits = Vec::new();
        for (k, comp) in self.comps.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                if p.0 == c {
                    hits.push((k, i));
                }
            }
        }
        let (k1, i1) = hits[0];
        let (k2, i2) = hits[1];
        let mut comps: Vec<Vec<Passage>> = Vec::with_capacity(self.comps.len() + 1);
        let mut free = self.free;
        if k1 == k2 {
            let comp = &self.comps[k1];
            let inner: Vec<Passage> = comp[i1 + 1..i2].to_vec();
            let mut outer: Vec<Passage> = comp[i2 + 1..].to_vec();
            outer.extend_from_slice(&comp[..i1]);
            for (k, other) in self.comps.iter().enumerate() {
                if k == k1 {
                    for part in [&outer, &inner] {
                        if part.is_empty() {
                            free += 1;
                        } else {
                            comps.push(part.clone());
                        }
                    }
                } else {
                    comps.push(other.clone());
                }
            }
        } else {
            let rot = |k: usize, i: usize| {
                let comp = &self.comps[k];
                let mut v: Vec<Passage> = comp[i + 1..].to_vec();
                v.extend_from_slice(&comp[..i]);
                v
            };
            let mut merged = rot(k1, i1);
            merged.extend(rot(k2, i2));
            for (k, other) in self.comps.iter().enumerate() {
                if k == k1 {
                    if merged.is_empty() {
                        free += 1;
                    } else {
                        comps.push(merged.clone());
                    }
                } else if k != k2 {
                    comps.push(other.clone());
                }
            }
        }
        State { comps, signs: self.signs.clone(), free }
    }

    /// Relabelled encoding; states with equal keys are the same diagram up
    /// to renaming crossings, rotating components and reordering them.
    fn key(&self) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        let n = self.comps.len();
        for first in 0..n {
            for rot in 0..self.comps[first].len() {
                let mut label = vec![u32::MAX; self.signs.len()];
                let mut next = 0u32;
                let mut out = vec![self.free as u32, n as u32];
                let order = core::iter::once(first).chain((0..n).filter(|&k| k != first));
                for k in order {
                    let comp = &self.comps[k];
                    let start = if k == first {
                        rot
                    } else {
                        (0..comp.len()).min_by_key(|&i| label[comp[i].0 as usize]).unwrap_or(0)
                    };
                    out.push(comp.len() as u32);
                    for i in 0..comp.len() {
                        let (c, over) = comp[(start + i) % comp.len()];
                        if label[c as usize] == u32::MAX {
                            label[c as usize] = next;
                            next += 1;
                        }
                        let sign = (self.signs[c as usize] > 0) as u32;
                        out.push(label[c as usize] * 4 + 2 * over as u32 + sign);
                    }
                }
                if best.as_ref().is_none_or(|b| out < *b) {
                    best = Some(out);
                }
            }
        }
        best.unwrap_or_else(|| vec![self.free as u32, 0])
    }
}

struct Evaluator {
    memo: BTreeMap<Vec<u32>, LaurentPoly2>,
    nodes: usize,
    budget: usize,
    delta_pows: Vec<LaurentPoly2>,
}

const AZ: (char, char) = ('a', 'z');

impl Evaluator {
    fn delta_pow(&mut self, k: usize) -> LaurentPoly2 {
        let delta = LaurentPoly2::from_terms(AZ, [((1, -1), 1), ((-1, -1), -1)]);
        while self.delta_pows.len() <= k {
            let next = &self.delta_pows[self.delta_pows.len() - 1] * &delta;
            self.delta_pows.push(next);
        }
        self.delta_pows[k].clone()
    }

    fn eval(&mut self, mut s: State) -> Result<LaurentPoly2, InvariantError> {
        s.remove_kinks();
        let Some(c) = s.first_bad() else {
            return Ok(self.delta_pow(s.comps.len() + s.free - 1));
        };
        let key = s.key();
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(InvariantError::RecursionBudgetExceeded(self.budget));
        }
        let sw = self.eval(s.switched(c))?;
        let sm = self.eval(s.smoothed(c))?;
        let v = if s.signs[c as usize] > 0 {
            // P+ = a^-2 P- + a^-1 z P0
            sw.shift(-2, 0) + sm.shift(-1, 1)
        } else {
            // P- = a^2 P+ - a z P0
            sw.shift(2, 0) - sm.shift(1, 1)
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// HOMFLYPT in variables `(a, z)` with `z = q - q^-1`; links carry negative
/// powers of `z` down to `z^(1-c)`.
pub fn homflypt_az(d: &LinkDiagram) -> Result<LaurentPoly2, InvariantError> {
    homflypt_az_with(d, &Caps::default())
}

pub fn homflypt_az_with(d: &LinkDiagram, caps: &Caps) -> Result<LaurentPoly2, InvariantError> {
    check_cap(d.n_crossings(), caps.homflypt)?;
    let mut ev = Evaluator {
        memo: BTreeMap::new(),
        nodes: 0,
        budget: caps.skein_budget,
        delta_pows: vec![LaurentPoly2::one(AZ)],
    };
    ev.eval(State::from_diagram(d))
}

/// HOMFLYPT in `(a, q)`, multiplied by `(q - q^-1)^(c-1)` for a
/// `c`-component link.
pub fn homflypt(d: &LinkDiagram) -> Result<LaurentPoly2, InvariantError> {
    homflypt_with(d, &Caps::default())
}

pub fn homflypt_with(d: &LinkDiagram, caps: &Caps) -> Result<LaurentPoly2, InvariantError> {
    let p = homflypt_az_with(d, caps)?;
    let cleared = p.shift(0, d.n_components() as i64 - 1);
    let z = LaurentPoly1::from_terms('q', [(1, 1), (-1, -1)]);
    Ok(cleared.substitute_second_poly(&z).expect("cleared HOMFLYPT is polynomial in z"))
}

/// `SL_N` polynomial: `a ↦ q^N` in [`homflypt`].
pub fn sl_n(d: &LinkDiagram, n: u32) -> Result<LaurentPoly1, InvariantError> {
    sl_n_with(d, n, &Caps::default())
}

pub fn sl_n_with(d: &LinkDiagram, n: u32, caps: &Caps) -> Result<LaurentPoly1, InvariantError> {
    Ok(homflypt_with(d, caps)?.substitute(Slot::First, 1, n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{dt_to_pd, parse_dt, parse_pd};
    use crate::invariants::{jones, jones_to_sl2};

    fn dt(s: &str) -> LinkDiagram {
        dt_to_pd(&parse_dt(s).unwrap()).unwrap()
    }

    fn aq(terms: &[((i64, i64), i64)]) -> LaurentPoly2 {
        LaurentPoly2::from_terms(('a', 'q'), terms.iter().copied())
    }

    #[test]
    fn unknot_and_kinks() {
        assert!(homflypt(&LinkDiagram::unknot()).unwrap() == LaurentPoly2::one(('a', 'q')));
        assert!(homflypt(&parse_pd("X(1,1,2,2)").unwrap()).unwrap() == LaurentPoly2::one(('a', 'q')));
        assert!(sl_n(&LinkDiagram::unknot(), 3).unwrap().is_one());
    }

    #[test]
    fn unlink_of_two() {
        let p = homflypt(&LinkDiagram::unlink(2)).unwrap();
        assert_eq!(p, aq(&[((1, 0), 1), ((-1, 0), -1)]));
        // a split diagram with crossings gives the same value
        let kinks = parse_pd("X(1,1,2,2)").unwrap().disjoint_union(&parse_pd("X(2,1,1,2)").unwrap());
        assert_eq!(homflypt(&kinks).unwrap(), p);
    }

    #[test]
    fn positive_trefoil() {
        let p = homflypt(&dt("4 6 2")).unwrap();
        assert_eq!(p, aq(&[((-2, 2), 1), ((-2, -2), 1), ((-4, 0), -1)]));
        let s3 = sl_n(&dt("4 6 2"), 3).unwrap();
        assert_eq!(s3, LaurentPoly1::from_terms('q', [(-4, 1), (-8, 1), (-12, -1)]));
    }

    #[test]
    fn specialization_to_jones() {
        for code in ["4 6 2", "4 6 8 2", "6 8 10 2 4", "4 8 -12 2 -14 -6 -10", "4 10 -14 -12 2 -8 -6"] {
            let d = dt(code);
            let j = jones_to_sl2(&jones(&d).unwrap());
            assert_eq!(sl_n(&d, 2).unwrap(), j, "{code}");
            assert_eq!(sl_n(&d.mirror(), 2).unwrap(), j.invert_variable(), "{code}");
        }
    }

    #[test]
    fn hopf_link_specializes_to_jones() {
        let hopf = parse_pd("X(4,1,3,2);X(2,3,1,4)").unwrap();
        let j = jones_to_sl2(&jones(&hopf).unwrap());
        let z = LaurentPoly1::from_terms('q', [(1, 1), (-1, -1)]);
        assert_eq!(sl_n(&hopf, 2).unwrap(), &j * &z);
    }

    #[test]
    fn skein_identity_at_each_crossing() {
        // P(L+) a - P(L-) a^-1 = z P(L0) for the trefoil and figure-eight
        for code in ["4 6 2", "4 6 8 2", "6 8 10 2 4"] {
            let d = dt(code);
            let s = State::from_diagram(&d);
            let caps = Caps::default();
            for c in 0..d.n_crossings() as u16 {
                let mut ev = Evaluator {
                    memo: BTreeMap::new(),
                    nodes: 0,
                    budget: caps.skein_budget,
                    delta_pows: vec![LaurentPoly2::one(AZ)],
                };
                let here = ev.eval(s.clone()).unwrap();
                let other = ev.eval(s.switched(c)).unwrap();
                let zero = ev.eval(s.smoothed(c)).unwrap();
                let (plus, minus) = if s.signs[c as usize] > 0 { (here, other) } else { (other, here) };
                assert_eq!(plus.shift(1, 0) - minus.shift(-1, 0), zero.shift(0, 1), "{code} crossing {c}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let caps = Caps { skein_budget: 1, ..Caps::default() };
        assert_eq!(homflypt_with(&dt("6 8 10 2 4"), &caps), Err(InvariantError::RecursionBudgetExceeded(1)));
    }
}
