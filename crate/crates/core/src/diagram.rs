//! Knot and link diagrams: PD codes, DT codes, realization and mirroring.
//!
//! A PD crossing `X(a,b,c,d)` lists its four arcs counterclockwise starting at
//! the incoming under-strand, so the under-strand runs `a → c`. The crossing
//! is positive when the over-strand runs `d → b`. Signs are always derived
//! from the arc wiring and orientation; they are never read from input.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::planar::{HalfEdge, Wiring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("malformed PD code at offset {position}: {reason}")]
    MalformedPd { position: usize, reason: &'static str },
    #[error("arc {label} appears {count} times (expected 2)")]
    InconsistentArcs { label: u32, count: usize },
    #[error("diagram is not realizable: {0}")]
    NonRealizable(&'static str),
    #[error("malformed DT token {0:?}")]
    MalformedDt(String),
    #[error("DT entries are not a permutation of 2, 4, ..., 2n")]
    NotPermutation,
    #[error("DT code admits no planar realization")]
    NonRealizableDt,
    #[error("expected a knot, found {0} components")]
    NotAKnot(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PdCrossing {
    arcs: [u32; 4],
    sign: Sign,
}

impl PdCrossing {
    pub fn arcs(&self) -> [u32; 4] {
        self.arcs
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }
}

/// An oriented, signed link diagram.
///
/// Crossingless components are held as a count of free loops; the empty
/// diagram is the unknot.
#[derive(Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<PdCrossing>,
    n_components: usize,
    writhe: i64,
    name: Option<String>,
    free_loops: usize,
    labels: Vec<u32>,
    wiring: Wiring,
    head: Vec<HalfEdge>,
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinkDiagram")
            .field("name", &self.name)
            .field("pd", &serialize_pd(self))
            .field("n_components", &self.n_components)
            .field("writhe", &self.writhe)
            .finish()
    }
}

impl LinkDiagram {
    /// The crossingless diagram of the `k`-component unlink.
    pub fn unlink(k: usize) -> Self {
        assert!(k >= 1, "an unlink has at least one component");
        LinkDiagram {
            crossings: Vec::new(),
            n_components: k,
            writhe: 0,
            name: None,
            free_loops: k,
            labels: Vec::new(),
            wiring: Wiring { slots: Vec::new(), ends: Vec::new() },
            head: Vec::new(),
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// Builds a diagram from PD quadruples, deriving orientation and signs.
    pub fn from_pd(quads: &[[u32; 4]]) -> Result<Self, DiagramError> {
        if quads.is_empty() {
            return Ok(Self::unknot());
        }
        Self::build(quads, 0)
    }

    fn wire(quads: &[[u32; 4]]) -> Result<(Vec<u32>, Wiring), DiagramError> {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for q in quads {
            for &l in q {
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &c)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(DiagramError::InconsistentArcs { label, count: c });
        }
        let labels: Vec<u32> = count.keys().copied().collect();
        let dense = |l: u32| labels.binary_search(&l).unwrap();
        let slots: Vec<[usize; 4]> = quads.iter().map(|q| q.map(dense)).collect();
        let wiring = Wiring::new(slots, labels.len()).map_err(|_| DiagramError::NonRealizable("arc wiring"))?;
        if !wiring.is_planar() {
            return Err(DiagramError::NonRealizable("wiring is not planar"));
        }
        Ok((labels, wiring))
    }

    /// Walks every strand once in an arbitrary direction, returning for each
    /// component the `(arc, arriving half-edge)` pairs in order.
    fn strands(wiring: &Wiring) -> Result<Vec<Vec<(usize, HalfEdge)>>, DiagramError> {
        let n_arcs = wiring.n_arcs();
        let mut seen = vec![false; n_arcs];
        let mut out = Vec::new();
        for start in 0..n_arcs {
            if seen[start] {
                continue;
            }
            let mut walk: Vec<(usize, HalfEdge)> = Vec::new();
            let first = wiring.ends[start][1];
            let mut arc = start;
            let mut arrive = first;
            loop {
                if seen[arc] {
                    return Err(DiagramError::NonRealizable("strand does not close up"));
                }
                seen[arc] = true;
                walk.push((arc, arrive));
                let exit = (arrive.0, (arrive.1 + 2) % 4);
                arc = wiring.arc_at(exit);
                arrive = wiring.other_end(exit);
                if arc == start {
                    if arrive != first {
                        return Err(DiagramError::NonRealizable("strand does not close up"));
                    }
                    break;
                }
            }
            out.push(walk);
        }
        Ok(out)
    }

    /// Builds a diagram from quadruples that list arcs counterclockwise with
    /// the under-strand in slots 0 and 2 but in either direction.
    ///
    /// Each component is oriented so that its smallest-labelled arc with a
    /// `hint` ends at the hinted `(crossing, slot)`; components without a
    /// usable hint follow increasing labels. Crossings are then rotated so
    /// that slot 0 is the incoming under-strand.
    pub(crate) fn from_unoriented(
        quads: &[[u32; 4]],
        free_loops: usize,
        hint: impl Fn(u32) -> Option<HalfEdge>,
    ) -> Result<Self, DiagramError> {
        if quads.is_empty() {
            return Ok(Self::unlink(free_loops.max(1)));
        }
        let (labels, wiring) = Self::wire(quads)?;
        let mut head: Vec<HalfEdge> = vec![(0, 0); labels.len()];
        for walk in Self::strands(&wiring)? {
            let mut by_label: Vec<&(usize, HalfEdge)> = walk.iter().collect();
            by_label.sort_by_key(|(a, _)| labels[*a]);
            let hinted = by_label.iter().find_map(|&&(a, h)| match hint(labels[a]) {
                Some(want) if want == h => Some(false),
                Some(want) if want == wiring.other_end(h) => Some(true),
                _ => None,
            });
            let reverse = hinted.unwrap_or_else(|| {
                let start = walk[0].0;
                let succ = walk.get(1).map_or(start, |w| w.0);
                let pred = walk.last().map_or(start, |w| w.0);
                labels[pred] < labels[succ]
            });
            for &(a, h) in &walk {
                head[a] = if reverse { wiring.other_end(h) } else { h };
            }
        }
        let rotated: Vec<[u32; 4]> = quads
            .iter()
            .enumerate()
            .map(|(c, &[a, b, cc, d])| if head[wiring.slots[c][0]] == (c, 0) { [a, b, cc, d] } else { [cc, d, a, b] })
            .collect();
        Self::build(&rotated, free_loops)
    }

    fn build(quads: &[[u32; 4]], free_loops: usize) -> Result<Self, DiagramError> {
        let (labels, wiring) = Self::wire(quads)?;
        let n_arcs = labels.len();
        let mut head: Vec<Option<HalfEdge>> = vec![None; n_arcs];
        let walks = Self::strands(&wiring)?;
        let n_comp = walks.len();
        for walk in walks {
            let forward_under = walk.iter().filter(|(_, h)| h.1 == 0).count();
            let backward_under = walk.iter().filter(|(_, h)| h.1 == 2).count();
            let reverse = match (forward_under, backward_under) {
                (0, 0) => {
                    // no under-passages: follow increasing labels
                    let start = walk[0].0;
                    let succ = walk.get(1).map_or(start, |w| w.0);
                    let pred = walk.last().map_or(start, |w| w.0);
                    labels[pred] < labels[succ]
                }
                (_, 0) => false,
                (0, _) => true,
                _ => return Err(DiagramError::NonRealizable("inconsistent strand orientation")),
            };
            for (a, h) in walk {
                head[a] = Some(if reverse { wiring.other_end(h) } else { h });
            }
        }
        let head: Vec<HalfEdge> = head.into_iter().map(Option::unwrap).collect();

        let mut crossings = Vec::with_capacity(quads.len());
        let mut writhe = 0;
        for (c, q) in quads.iter().enumerate() {
            if head[wiring.slots[c][0]] != (c, 0) || head[wiring.slots[c][2]] == (c, 2) {
                return Err(DiagramError::NonRealizable("under-strand orientation"));
            }
            let sign = if head[wiring.slots[c][3]] == (c, 3) { Sign::Positive } else { Sign::Negative };
            writhe += sign.value();
            crossings.push(PdCrossing { arcs: *q, sign });
        }
        Ok(LinkDiagram {
            crossings,
            n_components: n_comp + free_loops,
            writhe,
            name: None,
            free_loops,
            labels,
            wiring,
            head,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_components(&self) -> usize {
        self.n_components
    }

    pub fn writhe(&self) -> i64 {
        self.writhe
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of components that meet no crossing.
    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_knot(&self) -> bool {
        self.n_components == 1
    }

    /// Counts of positive and negative crossings.
    pub fn sign_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign == Sign::Positive).count();
        (pos, self.crossings.len() - pos)
    }

    /// Over and under passages alternate along every strand.
    pub fn is_alternating(&self) -> bool {
        (0..self.labels.len()).all(|a| {
            let h = self.head[a];
            let t = self.wiring.other_end(h);
            (h.1 + t.1) % 2 == 1
        })
    }

    pub(crate) fn wiring(&self) -> &Wiring {
        &self.wiring
    }

    /// Arc label of a dense arc index.
    pub(crate) fn label(&self, arc: usize) -> u32 {
        self.labels[arc]
    }

    /// Slot where a dense arc ends (enters a crossing).
    pub(crate) fn head(&self, arc: usize) -> HalfEdge {
        self.head[arc]
    }

    /// Slot where a dense arc starts (leaves a crossing).
    pub(crate) fn tail(&self, arc: usize) -> HalfEdge {
        self.wiring.other_end(self.head[arc])
    }

    /// For each crossing component, the arriving half-edges in traversal
    /// order, starting at the head of its smallest-labelled arc.
    pub(crate) fn walks(&self) -> Vec<Vec<HalfEdge>> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.labels.len()];
        for start in 0..self.labels.len() {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut arc = start;
            loop {
                seen[arc] = true;
                let h = self.head[arc];
                walk.push(h);
                arc = self.wiring.arc_at((h.0, (h.1 + 2) % 4));
                if arc == start {
                    break;
                }
            }
            out.push(walk);
        }
        out
    }

    /// New labels `1, 2, ...` for the dense arcs, numbered along the
    /// orientation from `start`. Further components are numbered in the
    /// order their outgoing arcs are met at crossings; components not met
    /// that way start at their smallest old label.
    fn traversal_numbering(&self, start: usize) -> Vec<u32> {
        let n = self.labels.len();
        let mut new = vec![0u32; n];
        let mut next = 1u32;
        let mut queue: Vec<usize> = vec![start];
        let mut q = 0;
        let mut fallback = 0;
        loop {
            let begin = loop {
                if q < queue.len() {
                    q += 1;
                    if new[queue[q - 1]] == 0 {
                        break Some(queue[q - 1]);
                    }
                } else {
                    while fallback < n && new[fallback] != 0 {
                        fallback += 1;
                    }
                    break (fallback < n).then_some(fallback);
                }
            };
            let Some(begin) = begin else { break };
            let mut arc = begin;
            loop {
                new[arc] = next;
                next += 1;
                let (c, slot) = self.head[arc];
                for other in [(slot + 1) % 4, (slot + 3) % 4] {
                    let a = self.wiring.arc_at((c, other));
                    if self.tail(a) == (c, other) {
                        queue.push(a);
                    }
                }
                arc = self.wiring.arc_at((c, (slot + 2) % 4));
                if arc == begin {
                    break;
                }
            }
        }
        new
    }

    fn with_numbering(&self, new: &[u32]) -> Vec<[u32; 4]> {
        self.wiring.slots.iter().map(|s| s.map(|a| new[a])).collect()
    }

    /// The same diagram with arcs renumbered `1, 2, ...` along the
    /// orientation, starting from the arc labelled `start`. Crossing order is
    /// kept. Returns `None` if no arc has that label.
    pub fn relabeled_from(&self, start: u32) -> Option<LinkDiagram> {
        let arc = self.labels.binary_search(&start).ok()?;
        let quads = self.with_numbering(&self.traversal_numbering(arc));
        let mut d = Self::build(&quads, self.free_loops).expect("relabelling a valid diagram");
        d.name = self.name.clone();
        Some(d)
    }

    /// A key that is equal for two diagrams exactly when they differ by arc
    /// relabelling and crossing order.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut best: Option<Vec<[u32; 4]>> = None;
        for start in 0..self.labels.len() {
            let mut quads = self.with_numbering(&self.traversal_numbering(start));
            quads.sort_unstable();
            if best.as_ref().is_none_or(|b| quads < *b) {
                best = Some(quads);
            }
        }
        let mut key = vec![self.free_loops as u32];
        key.extend(best.unwrap_or_default().into_iter().flatten());
        key
    }

    /// Mirror image: every crossing switched, labels and orientation kept.
    pub fn mirror(&self) -> LinkDiagram {
        if self.crossings.is_empty() {
            let mut m = self.clone();
            m.name = self.name.clone();
            return m;
        }
        let quads: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.arcs;
                match x.sign {
                    Sign::Positive => [d, a, b, c],
                    Sign::Negative => [b, c, d, a],
                }
            })
            .collect();
        let mut m = Self::build(&quads, self.free_loops).expect("mirror of a valid diagram");
        m.name = self.name.clone();
        m
    }

    /// Every component with its orientation reversed.
    pub fn reverse(&self) -> LinkDiagram {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let quads: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.arcs;
                [c, d, a, b]
            })
            .collect();
        let mut r = Self::build(&quads, self.free_loops).expect("reverse of a valid diagram");
        r.name = self.name.clone();
        r
    }

    /// Disjoint union; arc labels of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let shift = self.labels.last().copied().unwrap_or(0);
        let mut quads: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.arcs).collect();
        quads.extend(other.crossings.iter().map(|c| c.arcs.map(|l| l + shift)));
        let free = self.free_loops + other.free_loops;
        if quads.is_empty() {
            return Self::unlink(free);
        }
        Self::build(&quads, free).expect("union of valid diagrams")
    }

    /// The DT code read from the head of the largest-labelled arc.
    pub fn dt_code(&self) -> Result<DtCode, DiagramError> {
        if self.n_components != 1 {
            return Err(DiagramError::NotAKnot(self.n_components));
        }
        if self.crossings.is_empty() {
            return Ok(DtCode { evens: Vec::new() });
        }
        let n = self.crossings.len();
        let start = self.labels.len() - 1;
        let mut pos: Vec<[Option<(usize, bool)>; 2]> = vec![[None, None]; n];
        let mut arc = start;
        for p in 1..=2 * n {
            let h = self.head[arc];
            let under = h.1.is_multiple_of(2);
            let slot = if pos[h.0][0].is_none() { 0 } else { 1 };
            pos[h.0][slot] = Some((p, under));
            arc = self.wiring.arc_at((h.0, (h.1 + 2) % 4));
        }
        let mut pairs: Vec<(usize, i64)> = Vec::with_capacity(n);
        for visits in pos {
            let (p1, u1) = visits[0].unwrap();
            let (p2, u2) = visits[1].unwrap();
            let ((odd, _), (even, even_under)) = match (p1 % 2, p2 % 2) {
                (1, 0) => ((p1, u1), (p2, u2)),
                (0, 1) => ((p2, u2), (p1, u1)),
                _ => return Err(DiagramError::NonRealizable("crossing visited at equal parities")),
            };
            let e = even as i64;
            pairs.push((odd, if even_under { e } else { -e }));
        }
        pairs.sort_unstable();
        Ok(DtCode { evens: pairs.into_iter().map(|(_, e)| e).collect() })
    }
}

/// Parses `X(a,b,c,d);X(...)` with whitespace ignored. The empty string is
/// the unknot.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
    let s: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut quads = Vec::new();
    let mut i = 0;
    let err = |position, reason| DiagramError::MalformedPd { position, reason };
    while i < s.len() {
        if !quads.is_empty() {
            if s[i] != b';' {
                return Err(err(i, "expected ';'"));
            }
            i += 1;
        }
        if s.get(i) != Some(&b'X') || s.get(i + 1) != Some(&b'(') {
            return Err(err(i, "expected 'X('"));
        }
        i += 2;
        let mut quad = [0u32; 4];
        for (k, slot) in quad.iter_mut().enumerate() {
            let begin = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            if begin == i {
                return Err(err(i, "expected arc label"));
            }
            let digits = core::str::from_utf8(&s[begin..i]).unwrap();
            *slot = digits.parse().map_err(|_| err(begin, "arc label out of range"))?;
            if *slot == 0 {
                return Err(err(begin, "arc labels are positive"));
            }
            let sep = if k == 3 { b')' } else { b',' };
            if s.get(i) != Some(&sep) {
                return Err(err(i, if k == 3 { "expected ')'" } else { "expected ','" }));
            }
            i += 1;
        }
        quads.push(quad);
    }
    LinkDiagram::from_pd(&quads)
}

/// Crossings in stored order with labels as given, no whitespace.
pub fn serialize_pd(d: &LinkDiagram) -> String {
    let mut out = String::new();
    for (i, c) in d.crossings.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        let [a, b, c, e] = c.arcs;
        let _ = write!(out, "X({a},{b},{c},{e})");
    }
    out
}

pub fn mirror(d: &LinkDiagram) -> LinkDiagram {
    d.mirror()
}

/// Dowker–Thistlethwaite code: the signed even partner of each odd position.
/// A positive entry means the even-numbered passage goes under.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DtCode {
    evens: Vec<i64>,
}

impl DtCode {
    pub fn new(evens: Vec<i64>) -> Result<Self, DiagramError> {
        let n = evens.len();
        let mut seen = vec![false; n];
        for &e in &evens {
            if e == 0 || e % 2 != 0 {
                return Err(DiagramError::MalformedDt(alloc::format!("{e}")));
            }
            let k = (e.unsigned_abs() / 2) as usize;
            if k > n || seen[k - 1] {
                return Err(DiagramError::NotPermutation);
            }
            seen[k - 1] = true;
        }
        Ok(DtCode { evens })
    }

    pub fn evens(&self) -> &[i64] {
        &self.evens
    }

    pub fn n_crossings(&self) -> usize {
        self.evens.len()
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.evens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn parse_dt(text: &str) -> Result<DtCode, DiagramError> {
    let mut evens = Vec::new();
    for tok in text.split_whitespace() {
        let v: i64 = tok.parse().map_err(|_| DiagramError::MalformedDt(tok.into()))?;
        if v == 0 || v % 2 != 0 {
            return Err(DiagramError::MalformedDt(tok.into()));
        }
        evens.push(v);
    }
    DtCode::new(evens)
}

/// Realizes a DT code as a planar diagram.
///
/// Positions `1..=2n` run along the knot and arc `k` joins position `k` to
/// `k+1` (arc `2n` closes up to position 1). At each crossing the two
/// passages can be arranged in one of two counterclockwise orders; we search
/// these choices for one whose rotation system is spherical. The first
/// crossing's choice is fixed, which fixes the chirality.
pub fn dt_to_pd(code: &DtCode) -> Result<LinkDiagram, DiagramError> {
    let n = code.n_crossings();
    if n == 0 {
        return Ok(LinkDiagram::unknot());
    }
    let m = 2 * n as u32;
    let arc_in = |p: u32| if p == 1 { m } else { p - 1 };
    let arc_out = |p: u32| p;
    let cyc = |eps: bool, i: usize| -> [u32; 4] {
        let o = 2 * i as u32 + 1;
        let e = code.evens[i].unsigned_abs() as u32;
        if eps {
            [arc_in(o), arc_in(e), arc_out(o), arc_out(e)]
        } else {
            [arc_in(o), arc_out(e), arc_out(o), arc_in(e)]
        }
    };
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut slots = Vec::with_capacity(n);
        for i in 0..n {
            let eps = i == 0 || (mask >> (i - 1)) & 1 == 0;
            slots.push(cyc(eps, i).map(|l| (l - 1) as usize));
        }
        let wiring = Wiring::new(slots, m as usize).map_err(|_| DiagramError::NonRealizableDt)?;
        if !wiring.is_planar() {
            continue;
        }
        let quads: Vec<[u32; 4]> = (0..n)
            .map(|i| {
                let eps = i == 0 || (mask >> (i - 1)) & 1 == 0;
                let ccw = cyc(eps, i);
                let e = code.evens[i].unsigned_abs() as u32;
                let under_in = if code.evens[i] > 0 { arc_in(e) } else { arc_in(2 * i as u32 + 1) };
                // both passages may enter on the same arc only for a kink; pick the
                // slot whose opposite is the matching outgoing arc
                let under_out = if code.evens[i] > 0 { arc_out(e) } else { arc_out(2 * i as u32 + 1) };
                let r = (0..4).find(|&r| ccw[r] == under_in && ccw[(r + 2) % 4] == under_out).unwrap();
                [ccw[r], ccw[(r + 1) % 4], ccw[(r + 2) % 4], ccw[(r + 3) % 4]]
            })
            .collect();
        return LinkDiagram::from_pd(&quads).map_err(|_| DiagramError::NonRealizableDt);
    }
    Err(DiagramError::NonRealizableDt)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)";

    #[test]
    fn empty_is_unknot() {
        let d = parse_pd("").unwrap();
        assert_eq!(d.n_crossings(), 0);
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn trefoil_pd() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.writhe().abs(), 3);
        assert!(d.is_alternating());
        let sum: i64 = d.crossings().iter().map(|c| c.sign().value()).sum();
        assert_eq!(sum, d.writhe());
    }

    #[test]
    fn whitespace_is_ignored() {
        let d = parse_pd(" X(1, 4,2,5) ;\nX(3,6,4,1);X(5,2,6,3) ").unwrap();
        assert_eq!(serialize_pd(&d), TREFOIL);
    }

    #[test]
    fn arity_violation() {
        let e = parse_pd("X(1,4,2,5);X(3,6,4,1)").unwrap_err();
        assert!(matches!(e, DiagramError::InconsistentArcs { .. }));
    }

    #[test]
    fn grammar_violations() {
        for bad in ["X(1,2,3)", "Y(1,1,2,2)", "X(1,1,2,2);", "X(0,0,1,1)", "X(1,1,2,2)X(3,3,4,4)", "X(a,1,2,2)"] {
            assert!(matches!(parse_pd(bad), Err(DiagramError::MalformedPd { .. })), "{bad}");
        }
    }

    #[test]
    fn orientation_conflict_is_rejected() {
        // both under-strands of the second crossing would point the wrong way
        assert!(matches!(parse_pd("X(1,4,2,5);X(4,6,3,1);X(5,2,6,3)"), Err(DiagramError::NonRealizable(_))));
    }

    #[test]
    fn nonplanar_wiring_is_rejected() {
        assert!(matches!(parse_pd("X(1,2,3,4);X(1,3,2,4)"), Err(DiagramError::NonRealizable(_))));
    }

    #[test]
    fn positive_kink() {
        let d = parse_pd("X(1,1,2,2)").unwrap();
        assert_eq!(d.writhe(), 1);
        let d = parse_pd("X(2,1,1,2)").unwrap();
        assert_eq!(d.writhe(), -1);
    }

    #[test]
    fn hopf_link_components() {
        let d = parse_pd("X(4,1,3,2);X(2,3,1,4)").unwrap();
        assert_eq!(d.n_components(), 2);
        assert_eq!(d.writhe().abs(), 2);
    }

    #[test]
    fn mirror_is_involution() {
        let d = parse_pd(TREFOIL).unwrap().with_name("3_1");
        let m = d.mirror();
        assert_eq!(m.writhe(), -d.writhe());
        assert_eq!(m.n_components(), d.n_components());
        assert_eq!(m.mirror(), d);
        assert_eq!(LinkDiagram::unknot().mirror(), LinkDiagram::unknot());
    }

    #[test]
    fn dt_parsing() {
        assert_eq!(parse_dt("4 6 2").unwrap().evens(), &[4, 6, 2]);
        assert_eq!(parse_dt("4 4 2"), Err(DiagramError::NotPermutation));
        assert_eq!(parse_dt("").unwrap().n_crossings(), 0);
        assert!(matches!(parse_dt("4 5 2"), Err(DiagramError::MalformedDt(_))));
        assert!(matches!(parse_dt("4 x 2"), Err(DiagramError::MalformedDt(_))));
        assert_eq!(parse_dt("4 8 2"), Err(DiagramError::NotPermutation));
    }

    #[test]
    fn trefoil_from_dt_is_positive() {
        let d = dt_to_pd(&parse_dt("4 6 2").unwrap()).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!(d.writhe(), 3);
        assert!(d.is_alternating());
    }

    #[test]
    fn figure_eight_has_zero_writhe() {
        let d = dt_to_pd(&parse_dt("4 6 8 2").unwrap()).unwrap();
        assert_eq!(d.n_crossings(), 4);
        assert_eq!(d.writhe(), 0);
        assert!(d.is_alternating());
    }

    #[test]
    fn empty_dt_is_unknot() {
        let d = dt_to_pd(&parse_dt("").unwrap()).unwrap();
        assert_eq!(d.n_crossings(), 0);
        assert_eq!(d.n_components(), 1);
    }

    #[test]
    fn kink_dt() {
        let d = dt_to_pd(&parse_dt("2").unwrap()).unwrap();
        assert_eq!(serialize_pd(&d), "X(1,1,2,2)");
    }

    #[test]
    fn non_realizable_dt() {
        assert_eq!(dt_to_pd(&parse_dt("4 6 8 10 2").unwrap()).unwrap_err(), DiagramError::NonRealizableDt);
        assert_eq!(dt_to_pd(&parse_dt("2 6 8 10 12 4").unwrap()).unwrap_err(), DiagramError::NonRealizableDt);
    }

    #[test]
    fn trefoil_with_kink_dt() {
        // the pair (5,6) is a kink on the trefoil
        let d = dt_to_pd(&parse_dt("4 8 6 2").unwrap()).unwrap();
        assert_eq!(d.n_crossings(), 4);
        assert_eq!(d.writhe(), 4);
    }

    #[test]
    fn dt_round_trip() {
        for code in ["4 6 2", "4 8 6 2", "6 8 10 2 4", "4 8 -12 2 -14 -6 -10", "4 10 -14 -12 2 -8 -6", "2"] {
            let dt = parse_dt(code).unwrap();
            let d = dt_to_pd(&dt).unwrap();
            assert_eq!(d.dt_code().unwrap(), dt, "{code}");
            let expect_alt = dt.evens().iter().all(|&e| e > 0) || dt.evens().iter().all(|&e| e < 0);
            assert_eq!(d.is_alternating(), expect_alt, "{code}");
        }
    }

    #[test]
    fn pd_round_trip() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(parse_pd(&serialize_pd(&d)).unwrap(), d);
    }

    #[test]
    fn disjoint_union_counts() {
        let t = parse_pd(TREFOIL).unwrap();
        let u = t.disjoint_union(&LinkDiagram::unknot());
        assert_eq!(u.n_components(), 2);
        assert_eq!(u.free_loops(), 1);
        let tt = t.disjoint_union(&t);
        assert_eq!(tt.n_crossings(), 6);
        assert_eq!(tt.writhe(), 2 * t.writhe());
    }
}
