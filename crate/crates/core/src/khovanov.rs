//! Khovanov homology over F2 from the cube of resolutions.
//!
//! Vertex `s` of the cube is a bit vector with bit `c` set when crossing `c`
//! takes its 1-smoothing (the B-smoothing). Its circles carry the algebra
//! `F2[x]/x^2`; a generator is a bitmask marking which circles carry `x`.
//! Gradings: `i = |s| - n-` and `j = #1 - #x + |s| + n+ - 2n-`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::diagram::LinkDiagram;
use crate::invariants::{check_cap, Caps, InvariantError};
use crate::laurent::{LaurentPoly1, LaurentPoly2, Slot};

/// Dimensions of `Kh^{i,j}` over F2, keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BigradedDims {
    dims: BTreeMap<(i64, i64), u64>,
}

impl BigradedDims {
    pub fn from_entries(entries: impl IntoIterator<Item = ((i64, i64), u64)>) -> Self {
        let mut dims = BTreeMap::new();
        for (k, v) in entries {
            if v > 0 {
                *dims.entry(k).or_insert(0) += v;
            }
        }
        BigradedDims { dims }
    }

    pub fn get(&self, i: i64, j: i64) -> u64 {
        self.dims.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64), u64)> + '_ {
        self.dims.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total_dimension(&self) -> u64 {
        self.dims.values().sum()
    }
}

/// `Σ dim · q^j t^i`, in variables `(q, t)`.
pub fn poincare_poly(b: &BigradedDims) -> LaurentPoly2 {
    LaurentPoly2::from_terms(('q', 't'), b.dims.iter().map(|(&(i, j), &d)| ((j, i), BigInt::from(d))))
}

/// The Poincaré polynomial at `t = ±1`; `t = -1` gives the unnormalized
/// Jones polynomial.
pub fn specialize_t(b: &BigradedDims, t: i8) -> LaurentPoly1 {
    poincare_poly(b).substitute(Slot::Second, t, 0)
}

struct Cube {
    n: usize,
    free: usize,
    slots: Vec<[usize; 4]>,
    /// Circle id of every arc, per vertex.
    circle: Vec<Vec<u8>>,
    /// Number of circles (free loops included) per vertex.
    count: Vec<u8>,
    /// A representative arc of each arc-circle, per vertex.
    rep: Vec<Vec<u8>>,
    offset: Vec<usize>,
}

impl Cube {
    fn new(d: &LinkDiagram) -> Cube {
        let n = d.n_crossings();
        let w = d.wiring();
        let n_arcs = w.n_arcs();
        let free = d.free_loops();
        let mut circle = Vec::with_capacity(1 << n);
        let mut count = Vec::with_capacity(1 << n);
        let mut rep = Vec::with_capacity(1 << n);
        let mut offset = Vec::with_capacity((1 << n) + 1);
        let mut total = 0usize;
        for s in 0usize..(1 << n) {
            let mut parent: Vec<usize> = (0..n_arcs).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            for (c, sl) in w.slots.iter().enumerate() {
                let pairs = if (s >> c) & 1 == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
                for (x, y) in pairs {
                    let (a, b) = (find(&mut parent, sl[x]), find(&mut parent, sl[y]));
                    parent[a] = b;
                }
            }
            let mut id = vec![u8::MAX; n_arcs];
            let mut ids = vec![0u8; n_arcs];
            let mut reps = Vec::new();
            for (a, slot) in ids.iter_mut().enumerate() {
                let r = find(&mut parent, a);
                if id[r] == u8::MAX {
                    id[r] = reps.len() as u8;
                    reps.push(a as u8);
                }
                *slot = id[r];
            }
            let k = reps.len() + free;
            circle.push(ids);
            count.push(k as u8);
            rep.push(reps);
            offset.push(total);
            total += 1 << k;
        }
        offset.push(total);
        Cube { n, free, slots: w.slots.clone(), circle, count, rep, offset }
    }

    fn arc_circles(&self, s: usize) -> usize {
        self.count[s] as usize - self.free
    }

    /// Images of generator `m` at vertex `s` along the edge flipping `c`,
    /// as masks at vertex `s | 1 << c`.
    fn edge_images(&self, s: usize, c: usize, m: u64, out: &mut Vec<u64>) {
        out.clear();
        let t = s | (1 << c);
        let sl = self.slots[c];
        let (cs, ct) = (&self.circle[s], &self.circle[t]);
        let (x, y) = (cs[sl[0]] as usize, cs[sl[2]] as usize);
        // carry over every circle not touching the crossing
        let mut base = 0u64;
        for (z, &ra) in self.rep[s].iter().enumerate() {
            if z != x && z != y && (m >> z) & 1 == 1 {
                base |= 1 << ct[ra as usize];
            }
        }
        let (ks, kt) = (self.arc_circles(s), self.arc_circles(t));
        for f in 0..self.free {
            if (m >> (ks + f)) & 1 == 1 {
                base |= 1 << (kt + f);
            }
        }
        if x != y {
            let w = ct[sl[0]];
            match ((m >> x) & 1, (m >> y) & 1) {
                (0, 0) => out.push(base),
                (1, 1) => {}
                _ => out.push(base | 1 << w),
            }
        } else {
            let (w1, w2) = (ct[sl[0]], ct[sl[1]]);
            if (m >> x) & 1 == 0 {
                out.push(base | 1 << w1);
                out.push(base | 1 << w2);
            } else {
                out.push(base | 1 << w1 | 1 << w2);
            }
        }
    }

    /// Full differential of a generator as a sorted set of global ids.
    fn differential(&self, s: usize, m: u64) -> Vec<u32> {
        let mut col: Vec<u32> = Vec::new();
        let mut buf = Vec::new();
        for c in 0..self.n {
            if (s >> c) & 1 == 1 {
                continue;
            }
            let t = s | (1 << c);
            self.edge_images(s, c, m, &mut buf);
            for &img in &buf {
                col.push((self.offset[t] + img as usize) as u32);
            }
        }
        col.sort_unstable();
        dedup_xor(&mut col);
        col
    }
}

/// Cancels equal pairs in a sorted list (addition over F2).
fn dedup_xor(v: &mut Vec<u32>) {
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(v[i]);
        }
        i = j;
    }
    *v = out;
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Rank over F2 of a set of sparse rows, by elimination on the largest
/// column index.
struct Eliminator {
    pivot: BTreeMap<u32, Vec<u32>>,
}

impl Eliminator {
    fn insert(&mut self, mut row: Vec<u32>) -> bool {
        while let Some(&lead) = row.last() {
            match self.pivot.get(&lead) {
                Some(p) => row = xor_sorted(&row, p),
                None => {
                    self.pivot.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }
}

pub fn khovanov_f2(d: &LinkDiagram) -> Result<BigradedDims, InvariantError> {
    khovanov_f2_with(d, &Caps::default())
}

pub fn khovanov_f2_with(d: &LinkDiagram, caps: &Caps) -> Result<BigradedDims, InvariantError> {
    check_cap(d.n_crossings(), caps.khovanov)?;
    let cube = Cube::new(d);
    let n = cube.n;
    let (np, nm) = d.sign_counts();
    let shift_j = np as i64 - 2 * nm as i64;

    // chain dimensions and ranks keyed by (r, j) with r = |s|
    let mut dim: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    let mut rows: BTreeMap<(i64, i64), Vec<Vec<u32>>> = BTreeMap::new();
    for s in 0usize..(1 << n) {
        let r = s.count_ones() as i64;
        let k = cube.count[s] as u32;
        for m in 0u64..(1u64 << k) {
            let j = k as i64 - 2 * m.count_ones() as i64 + r;
            *dim.entry((r, j)).or_insert(0) += 1;
            if r < n as i64 {
                let col = cube.differential(s, m);
                if !col.is_empty() {
                    rows.entry((r, j)).or_default().push(col);
                }
            }
        }
    }
    let mut rank: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for (key, block) in rows {
        let mut el = Eliminator { pivot: BTreeMap::new() };
        let mut rk = 0;
        for row in block {
            if el.insert(row) {
                rk += 1;
            }
        }
        rank.insert(key, rk);
    }
    let mut out = BTreeMap::new();
    for (&(r, j), &c) in &dim {
        let h = c - rank.get(&(r, j)).copied().unwrap_or(0) - rank.get(&(r - 1, j)).copied().unwrap_or(0);
        if h > 0 {
            out.insert((r - nm as i64, j + shift_j), h);
        }
    }
    Ok(BigradedDims { dims: out })
}

/// Checks `d ∘ d = 0` on every generator of the cube.
pub fn differential_squares_to_zero(d: &LinkDiagram) -> bool {
    let cube = Cube::new(d);
    let n = cube.n;
    // inverse of the global numbering
    let mut vertex_of = Vec::with_capacity(*cube.offset.last().unwrap());
    for s in 0usize..(1 << n) {
        for m in 0u64..(1u64 << cube.count[s]) {
            vertex_of.push((s, m));
        }
    }
    for s in 0usize..(1 << n) {
        for m in 0u64..(1u64 << cube.count[s]) {
            let mut acc: Vec<u32> = Vec::new();
            for g in cube.differential(s, m) {
                let (t, mt) = vertex_of[g as usize];
                acc.extend(cube.differential(t, mt));
            }
            acc.sort_unstable();
            dedup_xor(&mut acc);
            if !acc.is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{dt_to_pd, parse_dt, parse_pd};
    use crate::invariants::unnormalized_jones;

    fn dt(s: &str) -> LinkDiagram {
        dt_to_pd(&parse_dt(s).unwrap()).unwrap()
    }

    #[test]
    fn unknot() {
        let k = khovanov_f2(&LinkDiagram::unknot()).unwrap();
        assert_eq!(k, BigradedDims::from_entries([((0, 1), 1), ((0, -1), 1)]));
        let circle = LaurentPoly1::from_terms('q', [(1, 1), (-1, 1)]);
        assert_eq!(specialize_t(&k, -1), circle);
        assert_eq!(specialize_t(&k, 1), circle);
    }

    #[test]
    fn kinks_are_invisible() {
        let u = khovanov_f2(&LinkDiagram::unknot()).unwrap();
        assert_eq!(khovanov_f2(&parse_pd("X(1,1,2,2)").unwrap()).unwrap(), u);
        assert_eq!(khovanov_f2(&parse_pd("X(2,1,1,2)").unwrap()).unwrap(), u);
    }

    #[test]
    fn positive_trefoil() {
        let k = khovanov_f2(&dt("4 6 2")).unwrap();
        let expect =
            BigradedDims::from_entries([((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((2, 7), 1), ((3, 7), 1), ((3, 9), 1)]);
        assert_eq!(k, expect);
        assert_eq!(specialize_t(&k, -1), unnormalized_jones(&dt("4 6 2")).unwrap());
    }

    #[test]
    fn trefoil_with_a_kink_matches() {
        assert_eq!(khovanov_f2(&dt("4 8 6 2")).unwrap(), khovanov_f2(&dt("4 6 2")).unwrap());
    }

    #[test]
    fn euler_characteristic_and_d_squared() {
        for code in ["4 6 8 2", "6 8 10 2 4", "4 8 -12 2 -14 -6 -10", "4 10 -14 -12 2 -8 -6"] {
            let d = dt(code);
            let k = khovanov_f2(&d).unwrap();
            assert_eq!(specialize_t(&k, -1), unnormalized_jones(&d).unwrap(), "{code}");
            assert!(differential_squares_to_zero(&d), "{code}");
        }
    }

    #[test]
    fn two_component_unlink() {
        let k = khovanov_f2(&LinkDiagram::unlink(2)).unwrap();
        assert_eq!(k, BigradedDims::from_entries([((0, 2), 1), ((0, 0), 2), ((0, -2), 1)]));
        let hopf = parse_pd("X(4,1,3,2);X(2,3,1,4)").unwrap();
        let k = khovanov_f2(&hopf).unwrap();
        assert_eq!(specialize_t(&k, -1), unnormalized_jones(&hopf).unwrap());
        assert_eq!(k.total_dimension(), 4);
    }

    #[test]
    fn cap() {
        let caps = Caps { khovanov: 2, ..Caps::default() };
        assert!(khovanov_f2_with(&dt("4 6 2"), &caps).is_err());
    }
}
