//! Four-ended tangles: rational tangle expressions and their fractions,
//! tangle regions inside link diagrams, and Conway mutation.
//!
//! Boundary points of a tangle are numbered counterclockwise from the
//! northwest corner: `0 = NW`, `1 = SW`, `2 = SE`, `3 = NE`. The horizontal
//! sum `S +h T` joins the east side of `S` to the west side of `T`; the
//! vertical sum `S +v T` stacks `S` above `T`. The integer tangle `n` is a row
//! of `|n|` horizontal twists and `n̄` (written `nb`) a column of vertical
//! twists, so that `f(n) = n` and `f(n̄) = 1/n`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diagram::{DiagramError, LinkDiagram};
use crate::laurent::LaurentPoly1;
use crate::planar::HalfEdge;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("malformed tangle expression at offset {position}: {reason}")]
    Parse { position: usize, reason: &'static str },
    #[error("tangle is not rational")]
    NotRational,
    #[error("expression is not a left-nested chain of twist summands")]
    NotNormalForm,
    #[error("summand order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("invalid tangle region: {0}")]
    RegionInvalid(&'static str),
    #[error("tangle has {crossings} crossings, cap is {cap}")]
    CrossingCapExceeded { crossings: usize, cap: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumKind {
    Horizontal,
    Vertical,
}

/// A tangle built from twist tangles by horizontal and vertical sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TangleExpr {
    /// `n` horizontal half-twists; `0` is the zero tangle.
    Twist(i64),
    /// `n` vertical half-twists; `0b` is the infinity tangle.
    VerticalTwist(i64),
    Sum(SumKind, Box<TangleExpr>, Box<TangleExpr>),
}

impl TangleExpr {
    pub fn horizontal(self, other: TangleExpr) -> TangleExpr {
        TangleExpr::Sum(SumKind::Horizontal, Box::new(self), Box::new(other))
    }

    pub fn vertical(self, other: TangleExpr) -> TangleExpr {
        TangleExpr::Sum(SumKind::Vertical, Box::new(self), Box::new(other))
    }

    pub fn crossing_count(&self) -> usize {
        match self {
            TangleExpr::Twist(n) | TangleExpr::VerticalTwist(n) => n.unsigned_abs() as usize,
            TangleExpr::Sum(_, l, r) => l.crossing_count() + r.crossing_count(),
        }
    }

    fn is_atom(&self) -> bool {
        !matches!(self, TangleExpr::Sum(..))
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleExpr::Twist(n) => write!(f, "{n}"),
            TangleExpr::VerticalTwist(n) => write!(f, "{n}b"),
            TangleExpr::Sum(kind, l, r) => {
                let op = match kind {
                    SumKind::Horizontal => "+h",
                    SumKind::Vertical => "+v",
                };
                write!(f, "({l} {op} {r})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Op(SumKind),
    Atom(i64, bool),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, TangleError> {
    let chars: Vec<char> = text.chars().collect();
    let err = |position, reason| TangleError::Parse { position, reason };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => i += 1,
            '(' => {
                out.push((start, Token::Open));
                i += 1;
            }
            ')' => {
                out.push((start, Token::Close));
                i += 1;
            }
            '∞' => {
                out.push((start, Token::Atom(0, true)));
                i += 1;
            }
            'i' if chars[i..].starts_with(&['i', 'n', 'f']) => {
                out.push((start, Token::Atom(0, true)));
                i += 3;
            }
            '+' if matches!(chars.get(i + 1), Some('h') | Some('v')) => {
                let kind = if chars[i + 1] == 'h' { SumKind::Horizontal } else { SumKind::Vertical };
                out.push((start, Token::Op(kind)));
                i += 2;
            }
            '+' | '-' | '0'..='9' => {
                let negative = c == '-';
                if !c.is_ascii_digit() {
                    i += 1;
                }
                let digits_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return Err(err(i, "expected digits"));
                }
                let digits: String = chars[digits_start..i].iter().collect();
                let value: i64 = digits.parse().map_err(|_| err(digits_start, "twist count out of range"))?;
                let bar = chars.get(i) == Some(&'b');
                if bar {
                    i += 1;
                }
                out.push((start, Token::Atom(if negative { -value } else { value }, bar)));
            }
            _ => return Err(err(start, "unexpected character")),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn expr(&mut self) -> Result<TangleExpr, TangleError> {
        let mut acc = self.term()?;
        while let Some(&(_, Token::Op(kind))) = self.tokens.get(self.pos) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = TangleExpr::Sum(kind, Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TangleExpr, TangleError> {
        let position = self.offset();
        match self.tokens.get(self.pos).map(|t| t.1) {
            Some(Token::Atom(n, bar)) => {
                self.pos += 1;
                Ok(if bar { TangleExpr::VerticalTwist(n) } else { TangleExpr::Twist(n) })
            }
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.tokens.get(self.pos).map(|t| t.1) != Some(Token::Close) {
                    return Err(TangleError::Parse { position: self.offset(), reason: "expected ')'" });
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(TangleError::Parse { position, reason: "expected a twist or '('" }),
        }
    }
}

/// Parses expressions such as `(2 +v 3b) +h 1` or `-2 +h -3b`. Sums are left
/// associative; `inf` and `∞` stand for `0b`.
pub fn parse_tangle(text: &str) -> Result<TangleExpr, TangleError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, end: text.chars().count() };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(TangleError::Parse { position: p.offset(), reason: "trailing input" });
    }
    Ok(e)
}

/// A rational number or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Fraction {
    Finite(BigRational),
    Infinite,
}

impl Fraction {
    pub fn integer(n: i64) -> Fraction {
        Fraction::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn reciprocal(&self) -> Fraction {
        match self {
            Fraction::Infinite => Fraction::Finite(BigRational::zero()),
            Fraction::Finite(q) if q.is_zero() => Fraction::Infinite,
            Fraction::Finite(q) => Fraction::Finite(q.recip()),
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Fraction::Finite(q) if q.is_integer())
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fraction::Infinite => f.write_str("inf"),
            Fraction::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// `x + y` where one side must be an integer; `∞ + n = ∞`.
fn add_with_integer(x: Fraction, y: Fraction) -> Result<Fraction, TangleError> {
    if !x.is_integer() && !y.is_integer() {
        return Err(TangleError::NotRational);
    }
    Ok(match (x, y) {
        (Fraction::Finite(a), Fraction::Finite(b)) => Fraction::Finite(a + b),
        _ => Fraction::Infinite,
    })
}

/// The fraction of a rational tangle. Horizontal sums add fractions and
/// vertical sums add reciprocals; each sum needs an integer (respectively
/// reciprocal-integer) summand, otherwise the result is not rational.
pub fn tangle_fraction(t: &TangleExpr) -> Result<Fraction, TangleError> {
    match t {
        TangleExpr::Twist(n) => Ok(Fraction::integer(*n)),
        TangleExpr::VerticalTwist(n) => Ok(Fraction::integer(*n).reciprocal()),
        TangleExpr::Sum(SumKind::Horizontal, l, r) => add_with_integer(tangle_fraction(l)?, tangle_fraction(r)?),
        TangleExpr::Sum(SumKind::Vertical, l, r) => {
            let inv = add_with_integer(tangle_fraction(l)?.reciprocal(), tangle_fraction(r)?.reciprocal())?;
            Ok(inv.reciprocal())
        }
    }
}

/// Splits a left-nested chain `((a0 op1 a1) op2 a2) ...` into its atoms and
/// operators.
fn chain(t: &TangleExpr) -> Option<(Vec<&TangleExpr>, Vec<SumKind>)> {
    match t {
        TangleExpr::Sum(kind, l, r) if r.is_atom() => {
            let (mut atoms, mut ops) = chain(l)?;
            atoms.push(r);
            ops.push(*kind);
            Some((atoms, ops))
        }
        TangleExpr::Sum(..) => None,
        atom => Some((vec![atom], Vec::new())),
    }
}

/// Rebuilds the chain `t` with its summands reordered (`order[k]` is the
/// original index of the summand placed at position `k`, operators stay in
/// place) and reports whether the fraction is unchanged.
pub fn summand_permutation_invariance_check(t: &TangleExpr, order: &[usize]) -> Result<bool, TangleError> {
    let (atoms, ops) = chain(t).ok_or(TangleError::NotNormalForm)?;
    let n = atoms.len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || core::mem::replace(&mut seen[i], true)) {
        return Err(TangleError::InvalidPermutation(n));
    }
    let original = tangle_fraction(t)?;
    let mut permuted = atoms[order[0]].clone();
    for (k, op) in ops.iter().enumerate() {
        permuted = TangleExpr::Sum(*op, Box::new(permuted), Box::new(atoms[order[k + 1]].clone()));
    }
    Ok(tangle_fraction(&permuted).is_ok_and(|f| f == original))
}

/// A tangle diagram: crossings list their edge labels counterclockwise with
/// the under-strand in slots 0 and 2, and `boundary` gives the edge at each
/// of `NW, SW, SE, NE`. Every label occurs exactly twice in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleDiagram {
    crossings: Vec<[u32; 4]>,
    boundary: [u32; 4],
    free_loops: usize,
}

/// Crossing cap for the tangle bracket state sum.
pub const TANGLE_BRACKET_CAP: usize = 16;

fn find(parent: &mut BTreeMap<u32, u32>, x: u32) -> u32 {
    let mut r = x;
    while let Some(&p) = parent.get(&r) {
        if p == r {
            break;
        }
        r = p;
    }
    parent.insert(x, r);
    r
}

impl TangleDiagram {
    fn zero() -> Self {
        TangleDiagram { crossings: Vec::new(), boundary: [1, 2, 2, 1], free_loops: 0 }
    }

    fn infinity() -> Self {
        TangleDiagram { crossings: Vec::new(), boundary: [1, 1, 2, 2], free_loops: 0 }
    }

    fn unit(positive: bool) -> Self {
        // the positive crossing has its over-strand running SW to NE
        let quad = if positive { [1, 2, 3, 4] } else { [2, 3, 4, 1] };
        TangleDiagram { crossings: vec![quad], boundary: [1, 2, 3, 4], free_loops: 0 }
    }

    fn max_label(&self) -> u32 {
        self.crossings.iter().flatten().chain(self.boundary.iter()).copied().max().unwrap_or(0)
    }

    /// Joins boundary points of `self` and `other` pairwise and keeps the
    /// listed boundary points (`false` picks from `self`, `true` from
    /// `other`).
    fn glue(&self, other: &TangleDiagram, joins: [(usize, usize); 2], keep: [(bool, usize); 4]) -> TangleDiagram {
        let shift = self.max_label();
        let theirs: Vec<[u32; 4]> = other.crossings.iter().map(|q| q.map(|l| l + shift)).collect();
        let their_boundary = other.boundary.map(|l| l + shift);
        let mut parent = BTreeMap::new();
        for (i, j) in joins {
            let (a, b) = (find(&mut parent, self.boundary[i]), find(&mut parent, their_boundary[j]));
            parent.insert(a, b);
        }
        let mut crossings: Vec<[u32; 4]> = self.crossings.clone();
        crossings.extend(theirs);
        let boundary = keep.map(|(from_other, i)| if from_other { their_boundary[i] } else { self.boundary[i] });
        let crossings: Vec<[u32; 4]> = crossings.iter().map(|q| q.map(|l| find(&mut parent, l))).collect();
        let boundary = boundary.map(|l| find(&mut parent, l));
        // joined edge chains with no remaining end are closed loops
        let mut used = BTreeSet::new();
        used.extend(crossings.iter().flatten().copied());
        used.extend(boundary);
        let mut closed = BTreeSet::new();
        for (i, j) in joins {
            let r = find(&mut parent, self.boundary[i]);
            if !used.contains(&r) {
                closed.insert(r);
            }
            let r = find(&mut parent, their_boundary[j]);
            if !used.contains(&r) {
                closed.insert(r);
            }
        }
        TangleDiagram { crossings, boundary, free_loops: self.free_loops + other.free_loops + closed.len() }
    }

    fn horizontal(&self, other: &TangleDiagram) -> TangleDiagram {
        self.glue(other, [(3, 0), (2, 1)], [(false, 0), (false, 1), (true, 2), (true, 3)])
    }

    fn vertical(&self, other: &TangleDiagram) -> TangleDiagram {
        self.glue(other, [(1, 0), (2, 3)], [(false, 0), (true, 1), (true, 2), (false, 3)])
    }

    /// The standard diagram of an expression.
    pub fn from_expr(t: &TangleExpr) -> TangleDiagram {
        match *t {
            TangleExpr::Twist(0) => Self::zero(),
            TangleExpr::VerticalTwist(0) => Self::infinity(),
            TangleExpr::Twist(n) => {
                let unit = Self::unit(n > 0);
                (1..n.unsigned_abs()).fold(unit.clone(), |acc, _| acc.horizontal(&unit))
            }
            TangleExpr::VerticalTwist(n) => {
                let unit = Self::unit(n > 0);
                (1..n.unsigned_abs()).fold(unit.clone(), |acc, _| acc.vertical(&unit))
            }
            TangleExpr::Sum(kind, ref l, ref r) => {
                let (l, r) = (Self::from_expr(l), Self::from_expr(r));
                match kind {
                    SumKind::Horizontal => l.horizontal(&r),
                    SumKind::Vertical => l.vertical(&r),
                }
            }
        }
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    fn closure(&self, joins: [(usize, usize); 2]) -> Result<LinkDiagram, TangleError> {
        let mut parent = BTreeMap::new();
        for (i, j) in joins {
            let (a, b) = (find(&mut parent, self.boundary[i]), find(&mut parent, self.boundary[j]));
            parent.insert(a, b);
        }
        let quads: Vec<[u32; 4]> = self.crossings.iter().map(|q| q.map(|l| find(&mut parent, l))).collect();
        let used: BTreeSet<u32> = quads.iter().flatten().copied().collect();
        let closed: BTreeSet<u32> =
            self.boundary.iter().map(|&l| find(&mut parent, l)).filter(|r| !used.contains(r)).collect();
        let free = self.free_loops + closed.len();
        Ok(LinkDiagram::from_unoriented(&quads, free, |_| None)?)
    }

    /// Numerator closure: `NW` joined to `NE` and `SW` to `SE`.
    pub fn numerator_closure(&self) -> Result<LinkDiagram, TangleError> {
        self.closure([(0, 3), (1, 2)])
    }

    /// Denominator closure: `NW` joined to `SW` and `NE` to `SE`.
    pub fn denominator_closure(&self) -> Result<LinkDiagram, TangleError> {
        self.closure([(0, 1), (3, 2)])
    }

    /// Kauffman bracket of the tangle as `(f, g)` with `⟨T⟩ = f⟨0⟩ + g⟨∞⟩`.
    pub fn bracket(&self) -> Result<(LaurentPoly1, LaurentPoly1), TangleError> {
        let n = self.crossings.len();
        if n > TANGLE_BRACKET_CAP {
            return Err(TangleError::CrossingCapExceeded { crossings: n, cap: TANGLE_BRACKET_CAP });
        }
        let delta = LaurentPoly1::from_terms('A', [(2, -1), (-2, -1)]);
        let mut zero: BTreeMap<(i64, usize), i64> = BTreeMap::new();
        let mut inf: BTreeMap<(i64, usize), i64> = BTreeMap::new();
        let labels: BTreeSet<u32> = self.crossings.iter().flatten().chain(self.boundary.iter()).copied().collect();
        for state in 0u32..1 << n {
            let mut parent = BTreeMap::new();
            for (c, q) in self.crossings.iter().enumerate() {
                let pairs =
                    if state >> c & 1 == 0 { [(q[0], q[1]), (q[2], q[3])] } else { [(q[0], q[3]), (q[1], q[2])] };
                for (x, y) in pairs {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    parent.insert(a, b);
                }
            }
            let roots: BTreeSet<u32> = labels.iter().map(|&l| find(&mut parent, l)).collect();
            let b = self.boundary.map(|l| find(&mut parent, l));
            let loops = roots.len() - 2 + self.free_loops;
            let a_minus_b = n as i64 - 2 * state.count_ones() as i64;
            let target = if b[0] == b[3] { &mut zero } else { &mut inf };
            *target.entry((a_minus_b, loops)).or_default() += 1;
        }
        let collect = |m: BTreeMap<(i64, usize), i64>| {
            m.into_iter().fold(LaurentPoly1::zero('A'), |acc, ((e, loops), count)| {
                let term = LaurentPoly1::monomial('A', e, count) * delta.pow(loops as u32);
                acc + term
            })
        };
        Ok((collect(zero), collect(inf)))
    }

    /// The bracket pair up to the factor `(-A^3)^k` that framing changes
    /// introduce: the leading nonzero coefficient polynomial is shifted so
    /// that its smallest exponent lies in `0..3`.
    pub fn bracket_key(&self) -> Result<(LaurentPoly1, LaurentPoly1), TangleError> {
        let (f, g) = self.bracket()?;
        let lead = if f.is_zero() { &g } else { &f };
        let Some(lo) = lead.min_exp() else { return Ok((f, g)) };
        let k = -lo.div_euclid(3);
        let unit = LaurentPoly1::monomial('A', 3 * k, if k % 2 == 0 { 1 } else { -1 });
        Ok((&f * &unit, &g * &unit))
    }
}

/// The symmetries of the square boundary used for mutation, as rotations by
/// a half turn about the coordinate axes (the tangle lies in the `xy`-plane).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SquareSymmetry {
    Identity,
    /// Flip top to bottom; crossings switch.
    RotateX,
    /// Flip left to right; crossings switch.
    RotateY,
    /// Half turn in the plane.
    RotateZ,
}

impl SquareSymmetry {
    pub const ALL: [SquareSymmetry; 4] =
        [SquareSymmetry::Identity, SquareSymmetry::RotateX, SquareSymmetry::RotateY, SquareSymmetry::RotateZ];

    /// Where boundary point `i` is sent.
    pub fn apply(self, i: usize) -> usize {
        match self {
            SquareSymmetry::Identity => i,
            SquareSymmetry::RotateX => (5 - i) % 4,
            SquareSymmetry::RotateY => 3 - i,
            SquareSymmetry::RotateZ => (i + 2) % 4,
        }
    }

    /// Whether the symmetry reverses the plane, which switches crossings.
    pub fn reflects(self) -> bool {
        matches!(self, SquareSymmetry::RotateX | SquareSymmetry::RotateY)
    }

    /// `self ∘ other`.
    pub fn compose(self, other: SquareSymmetry) -> SquareSymmetry {
        let target: [usize; 4] = core::array::from_fn(|i| self.apply(other.apply(i)));
        Self::ALL.into_iter().find(|s| (0..4).all(|i| s.apply(i) == target[i])).expect("the symmetries form a group")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryEnd {
    /// The strand enters the region here.
    In,
    Out,
}

/// A connected set of crossings whose complement is connected and which
/// meets the rest of the diagram in exactly four arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangleRegion {
    crossings: Vec<usize>,
    boundary: [u32; 4],
    ends: [BoundaryEnd; 4],
    inner: [HalfEdge; 4],
}

impl TangleRegion {
    /// Validates `crossings` as a region of `d` and orders its boundary arcs
    /// counterclockwise starting from the smallest label.
    pub fn from_crossings(d: &LinkDiagram, crossings: &[usize]) -> Result<TangleRegion, TangleError> {
        let n = d.n_crossings();
        let mut inside = vec![false; n];
        for &c in crossings {
            if c >= n || core::mem::replace(&mut inside[c], true) {
                return Err(TangleError::RegionInvalid("crossing index out of range or repeated"));
            }
        }
        if crossings.is_empty() {
            return Err(TangleError::RegionInvalid("empty region"));
        }
        let w = d.wiring();
        let mut boundary_arcs = Vec::new();
        for a in 0..w.n_arcs() {
            let [x, y] = w.ends[a];
            if inside[x.0] != inside[y.0] {
                boundary_arcs.push(a);
            }
        }
        if boundary_arcs.len() != 4 {
            return Err(TangleError::RegionInvalid("region must meet exactly four arcs"));
        }
        for side in [true, false] {
            if !connected(w.ends.iter().map(|e| (e[0].0, e[1].0)), |c| inside[c] == side, n) {
                return Err(TangleError::RegionInvalid("region or complement is disconnected"));
            }
        }
        let inner_end = |a: usize| {
            let [x, y] = w.ends[a];
            if inside[x.0] {
                x
            } else {
                y
            }
        };
        // walk around the region: turn counterclockwise, crossing internal arcs
        let start = inner_end(boundary_arcs[0]);
        let mut order = vec![start];
        let mut h = start;
        loop {
            h = (h.0, (h.1 + 1) % 4);
            while inside[w.other_end(h).0] {
                let o = w.other_end(h);
                h = (o.0, (o.1 + 1) % 4);
            }
            if h == start {
                break;
            }
            order.push(h);
            if order.len() > 4 {
                break;
            }
        }
        if order.len() != 4 {
            return Err(TangleError::RegionInvalid("boundary is not a single circle"));
        }
        let label = |h: HalfEdge| d.label(w.arc_at(h));
        let first = (0..4).min_by_key(|&i| label(order[i])).unwrap();
        let inner: [HalfEdge; 4] = core::array::from_fn(|i| order[(first + i) % 4]);
        let boundary = inner.map(label);
        let ends = inner.map(|h| if d.head(w.arc_at(h)) == h { BoundaryEnd::In } else { BoundaryEnd::Out });
        let mut crossings = crossings.to_vec();
        crossings.sort_unstable();
        Ok(TangleRegion { crossings, boundary, ends, inner })
    }

    pub fn crossings(&self) -> &[usize] {
        &self.crossings
    }

    pub fn size(&self) -> usize {
        self.crossings.len()
    }

    /// Boundary arc labels, counterclockwise from the smallest.
    pub fn boundary(&self) -> [u32; 4] {
        self.boundary
    }

    pub fn ends(&self) -> [BoundaryEnd; 4] {
        self.ends
    }
}

fn connected(edges: impl Iterator<Item = (usize, usize)>, keep: impl Fn(usize) -> bool, n: usize) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        if keep(a) && keep(b) {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let roots: BTreeSet<usize> = (0..n).filter(|&c| keep(c)).map(|c| root(&mut parent, c)).collect();
    roots.len() <= 1
}

/// All tangle regions with between 2 and `max_size` crossings, ordered by
/// size and then by crossing indices.
pub fn find_tangle_regions(d: &LinkDiagram, max_size: usize) -> Vec<TangleRegion> {
    let n = d.n_crossings();
    let w = d.wiring();
    let mut adjacent: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for e in &w.ends {
        if e[0].0 != e[1].0 {
            adjacent[e[0].0].insert(e[1].0);
            adjacent[e[1].0].insert(e[0].0);
        }
    }
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut level: BTreeSet<Vec<usize>> = (0..n).map(|c| vec![c]).collect();
    for size in 2..=max_size.min(n.saturating_sub(1)) {
        let mut next = BTreeSet::new();
        for set in &level {
            for &c in set {
                for &m in &adjacent[c] {
                    if let Err(pos) = set.binary_search(&m) {
                        let mut grown = set.clone();
                        grown.insert(pos, m);
                        next.insert(grown);
                    }
                }
            }
        }
        for set in &next {
            if TangleRegion::from_crossings(d, set).is_ok() {
                found.insert((size, set.clone()));
            }
        }
        level = next;
    }
    found.into_iter().map(|(_, s)| TangleRegion::from_crossings(d, &s).expect("validated above")).collect()
}

/// Whether the strands leaving the region through the rotated boundary keep
/// their directions, so that the mutant inherits an orientation.
pub fn is_oriented_mutation(r: &TangleRegion, s: SquareSymmetry) -> bool {
    (0..4).all(|i| r.ends[s.apply(i)] == r.ends[i])
}

/// Cuts out the region, applies `s` to it and glues it back. The inner end
/// at boundary point `i` is reattached to the outer end at `s(i)`. The result
/// keeps the orientation of the outside where possible, keeps the crossing
/// order, and is relabelled along the orientation from the smallest original
/// boundary arc.
pub fn mutate(d: &LinkDiagram, r: &TangleRegion, s: SquareSymmetry) -> Result<LinkDiagram, TangleError> {
    let check = TangleRegion::from_crossings(d, &r.crossings)?;
    if check != *r {
        return Err(TangleError::RegionInvalid("region does not belong to this diagram"));
    }
    let w = d.wiring();
    let inside: BTreeSet<usize> = r.crossings.iter().copied().collect();
    let mut quads: Vec<[u32; 4]> = d.crossings().iter().map(|x| x.arcs()).collect();
    for &c in &r.crossings {
        let mut q = quads[c];
        for (i, h) in r.inner.iter().enumerate() {
            if h.0 == c {
                q[h.1 as usize] = r.boundary[s.apply(i)];
            }
        }
        quads[c] = if s.reflects() { [q[3], q[2], q[1], q[0]] } else { q };
    }
    let hints: BTreeMap<u32, HalfEdge> =
        (0..w.n_arcs()).filter(|&a| !inside.contains(&d.head(a).0)).map(|a| (d.label(a), d.head(a))).collect();
    let m = LinkDiagram::from_unoriented(&quads, d.free_loops(), |l| hints.get(&l).copied())?;
    let m = m.relabeled_from(r.boundary[0]).expect("boundary arc survives regluing");
    Ok(match d.name() {
        Some(name) => m.with_name(name),
        None => m,
    })
}

/// Numerator and denominator in lowest terms; infinity is `1/0`.
pub fn fraction_parts(f: &Fraction) -> (BigInt, BigInt) {
    match f {
        Fraction::Infinite => (BigInt::one(), BigInt::zero()),
        Fraction::Finite(q) => (q.numer().clone(), q.denom().clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{dt_to_pd, parse_dt};
    use alloc::string::ToString;

    fn dt(s: &str) -> LinkDiagram {
        dt_to_pd(&parse_dt(s).unwrap()).unwrap()
    }

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::Finite(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    #[test]
    fn parse_and_print() {
        let e = parse_tangle("(2 +v 3b) +h 1").unwrap();
        assert_eq!(e.to_string(), "((2 +v 3b) +h 1)");
        assert_eq!(parse_tangle(&e.to_string()).unwrap(), e);
        assert_eq!(parse_tangle("-2 +h -3b").unwrap(), TangleExpr::Twist(-2).horizontal(TangleExpr::VerticalTwist(-3)));
        assert_eq!(parse_tangle("inf").unwrap(), TangleExpr::VerticalTwist(0));
        assert_eq!(parse_tangle("+4").unwrap(), TangleExpr::Twist(4));
        assert!(matches!(parse_tangle("2 +h"), Err(TangleError::Parse { .. })));
        assert!(matches!(parse_tangle("(2"), Err(TangleError::Parse { .. })));
        assert!(matches!(parse_tangle("2 3"), Err(TangleError::Parse { .. })));
        assert!(matches!(parse_tangle("2 *h 3"), Err(TangleError::Parse { .. })));
    }

    #[test]
    fn fractions() {
        let f = |s: &str| tangle_fraction(&parse_tangle(s).unwrap());
        assert_eq!(f("(2 +v 3b) +h 1").unwrap(), frac(9, 7));
        assert_eq!(f("-2 +h -3b").unwrap(), frac(-7, 3));
        assert_eq!(f("0").unwrap(), frac(0, 1));
        assert_eq!(f("inf").unwrap(), Fraction::Infinite);
        assert_eq!(f("0 +h 5").unwrap(), frac(5, 1));
        assert_eq!(f("inf +v 2b").unwrap(), frac(1, 2));
        assert_eq!(f("inf +h 3").unwrap(), Fraction::Infinite);
        assert_eq!(f("inf +h inf"), Err(TangleError::NotRational));
        assert_eq!(f("0 +v 0"), Err(TangleError::NotRational));
        assert_eq!(f("3b +h 2b"), Err(TangleError::NotRational));
    }

    #[test]
    fn summand_permutations() {
        let e = parse_tangle("-2 +h -3b").unwrap();
        assert_eq!(summand_permutation_invariance_check(&e, &[1, 0]), Ok(true));
        let e = parse_tangle("2 +h 3").unwrap();
        assert_eq!(summand_permutation_invariance_check(&e, &[1, 0]), Ok(true));
        let e = parse_tangle("2 +h 3b +v 4b").unwrap();
        assert_eq!(summand_permutation_invariance_check(&e, &[1, 0, 2]), Ok(true));
        assert_eq!(summand_permutation_invariance_check(&e, &[2, 1, 0]), Ok(false));
        assert_eq!(summand_permutation_invariance_check(&e, &[0, 0, 1]), Err(TangleError::InvalidPermutation(3)));
        let nested = parse_tangle("2 +h (3b +v 4)").unwrap();
        assert_eq!(summand_permutation_invariance_check(&nested, &[0, 1]), Err(TangleError::NotNormalForm));
    }

    #[test]
    fn twist_diagrams() {
        let t = TangleDiagram::from_expr(&parse_tangle("3").unwrap());
        assert_eq!(t.n_crossings(), 3);
        // N(3) is the trefoil, D(3) the unknot
        let n = t.numerator_closure().unwrap();
        assert_eq!(n.n_components(), 1);
        assert_eq!(crate::invariants::determinant(&n).unwrap(), BigInt::from(3));
        let d = t.denominator_closure().unwrap();
        assert_eq!(crate::invariants::determinant(&d).unwrap(), BigInt::from(1));
        let zero = TangleDiagram::from_expr(&TangleExpr::Twist(0));
        assert_eq!(zero.numerator_closure().unwrap().n_components(), 2);
        assert_eq!(zero.denominator_closure().unwrap().n_components(), 1);
        let loop_ = TangleDiagram::from_expr(&parse_tangle("0 +v 0").unwrap());
        assert_eq!(loop_.free_loops, 1);
    }

    /// All expressions built from twists by adding integer tangles
    /// horizontally and vertical twists vertically: on the right or below,
    /// and also on the left or above up to `two_sided` crossings.
    fn rational_expressions(max: usize, two_sided: usize) -> Vec<TangleExpr> {
        let mut by_size: Vec<Vec<TangleExpr>> = vec![Vec::new(); max + 1];
        for k in 1..=max as i64 {
            for n in [k, -k] {
                by_size[k as usize].push(TangleExpr::Twist(n));
                if k > 1 {
                    by_size[k as usize].push(TangleExpr::VerticalTwist(n));
                }
            }
        }
        for size in 2..=max {
            let mut new = Vec::new();
            for k in 1..size {
                for e in by_size[size - k].clone() {
                    for n in [k as i64, -(k as i64)] {
                        new.push(e.clone().horizontal(TangleExpr::Twist(n)));
                        new.push(e.clone().vertical(TangleExpr::VerticalTwist(n)));
                        if size <= two_sided {
                            new.push(TangleExpr::Twist(n).horizontal(e.clone()));
                            new.push(TangleExpr::VerticalTwist(n).vertical(e.clone()));
                        }
                    }
                }
            }
            by_size[size].extend(new);
        }
        let mut all: Vec<TangleExpr> = by_size.into_iter().flatten().collect();
        let mut seen = BTreeSet::new();
        all.retain(|e| seen.insert(e.to_string()));
        all
    }

    #[test]
    fn fraction_classifies_small_rational_tangles() {
        let exprs = rational_expressions(6, 4);
        let mut by_fraction: BTreeMap<String, (LaurentPoly1, LaurentPoly1)> = BTreeMap::new();
        let mut by_key: BTreeMap<String, String> = BTreeMap::new();
        for e in &exprs {
            let f = tangle_fraction(e).unwrap();
            let t = TangleDiagram::from_expr(e);
            let key = t.bracket_key().unwrap();
            let key_text = alloc::format!("{}|{}", key.0.canonical_string(), key.1.canonical_string());
            let f_text = f.to_string();
            if let Some(k) = by_fraction.get(&f_text) {
                assert_eq!(*k, key, "{e} has fraction {f_text} but a different bracket");
            } else {
                by_fraction.insert(f_text.clone(), key);
            }
            if let Some(other) = by_key.insert(key_text, f_text.clone()) {
                assert_eq!(other, f_text, "{e}: distinct fractions share a bracket");
            }
            // det N(T) = |p|
            let (p, _) = fraction_parts(&f);
            let n = t.numerator_closure().unwrap();
            if p != BigInt::zero() && n.free_loops() == 0 {
                assert_eq!(crate::invariants::determinant(&n).unwrap(), num_traits::Signed::abs(&p), "{e}");
            }
        }
        assert!(by_fraction.len() > 50);
    }

    #[test]
    fn symmetries_form_klein_group() {
        use SquareSymmetry::*;
        for s in SquareSymmetry::ALL {
            assert_eq!(s.compose(s), Identity);
            assert_eq!(s.compose(Identity), s);
        }
        assert_eq!(RotateX.compose(RotateY), RotateZ);
        assert_eq!(RotateY.compose(RotateZ), RotateX);
    }

    #[test]
    fn regions_of_the_figure_eight() {
        let d = dt("4 6 8 2");
        let regions = find_tangle_regions(&d, 3);
        assert!(!regions.is_empty());
        for r in &regions {
            let ins = r.ends().iter().filter(|e| **e == BoundaryEnd::In).count();
            assert_eq!(ins, 2);
            let oriented = SquareSymmetry::ALL.iter().filter(|&&s| is_oriented_mutation(r, s)).count();
            assert_eq!(oriented, 2);
        }
        assert!(matches!(TangleRegion::from_crossings(&d, &[0, 1, 2, 3]), Err(TangleError::RegionInvalid(_))));
        assert!(matches!(TangleRegion::from_crossings(&d, &[]), Err(TangleError::RegionInvalid(_))));
    }

    #[test]
    fn identity_mutation_and_involution() {
        for code in ["4 6 8 2", "6 8 10 2 4", "4 8 12 2 -16 -18 6 -20 -22 -14 -10"] {
            let d = dt(code);
            for r in find_tangle_regions(&d, 5) {
                let id = mutate(&d, &r, SquareSymmetry::Identity).unwrap();
                assert_eq!(id.canonical_key(), d.canonical_key());
                for s in SquareSymmetry::ALL {
                    let m = mutate(&d, &r, s).unwrap();
                    assert_eq!(m.n_crossings(), d.n_crossings());
                    let r2 = TangleRegion::from_crossings(&m, r.crossings()).unwrap();
                    let back = mutate(&m, &r2, s).unwrap();
                    assert_eq!(back.canonical_key(), d.canonical_key(), "{code} {:?} {s:?}", r.crossings());
                }
            }
        }
    }
}
