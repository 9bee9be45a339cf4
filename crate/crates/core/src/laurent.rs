//! Laurent polynomials in one and two variables with arbitrary-precision
//! integer coefficients.
//!
//! Terms are kept in a `BTreeMap` from exponent to coefficient with no zero
//! coefficient ever stored, so structural equality is mathematical equality
//! and [`LaurentPoly1::canonical_string`] is injective.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("variable mismatch: {left:?} vs {right:?}")]
    VariableMismatch { left: String, right: String },
}

fn mismatch(left: impl fmt::Debug, right: impl fmt::Debug) -> AlgebraError {
    let mut l = String::new();
    let mut r = String::new();
    let _ = write!(l, "{left:?}");
    let _ = write!(r, "{right:?}");
    AlgebraError::VariableMismatch { left: l, right: r }
}

fn insert_term<K: Ord>(terms: &mut BTreeMap<K, BigInt>, key: K, coef: BigInt) {
    if coef.is_zero() {
        return;
    }
    match terms.entry(key) {
        alloc::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coef);
        }
        alloc::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A Laurent polynomial in a single named variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    var: char,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly1 {
    pub fn zero(var: char) -> Self {
        LaurentPoly1 { var, terms: BTreeMap::new() }
    }

    pub fn one(var: char) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: char, exp: i64, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(var);
        insert_term(&mut p.terms, exp, coef.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(var: char, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            insert_term(&mut p.terms, e, c.into());
        }
        p
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Same coefficients, different variable name.
    pub fn renamed(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(mismatch(self.var, other.var))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            insert_term(&mut out.terms, *e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            insert_term(&mut out.terms, *e, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                insert_term(&mut out.terms, e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.var);
        for (e, c) in &self.terms {
            insert_term(&mut out.terms, *e, c * k);
        }
        out
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly1 { var: self.var, terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies an injective map to every exponent.
    pub fn map_exponents(&self, f: impl Fn(i64) -> i64) -> Self {
        LaurentPoly1 { var: self.var, terms: self.terms.iter().map(|(e, c)| (f(*e), c.clone())).collect() }
    }

    /// `var ↦ var⁻¹`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly1 { var: self.var, terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Substitute `var ↦ sign · new_var^k` (`sign` is ±1, `k` may be zero or negative).
    pub fn substitute_monomial(&self, new_var: char, sign: i8, k: i64) -> Self {
        let mut out = Self::zero(new_var);
        for (e, c) in &self.terms {
            let coef = if sign < 0 && e.is_odd() { -c } else { c.clone() };
            insert_term(&mut out.terms, e * k, coef);
        }
        out
    }

    /// Value at `var = value` for `value ∈ {1, -1}`.
    pub fn evaluate_unit(&self, value: i8) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| if value < 0 && e.is_odd() { -c } else { c.clone() })
            .fold(BigInt::zero(), |a, b| a + b)
    }

    /// Value at an arbitrary integer point; `None` if a negative power would
    /// require division by zero.
    pub fn evaluate_int(&self, value: &BigInt) -> Option<num_rational::BigRational> {
        use num_rational::BigRational;
        if value.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let x = BigRational::from_integer(value.clone());
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let term = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += term * BigRational::from_integer(c.clone());
        }
        Some(acc)
    }

    /// Exact division; `None` when `divisor` does not divide `self` in
    /// `Z[var, var⁻¹]` or when `divisor` is zero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.var != self.var || divisor.is_zero() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        let (dmax, dlead) = divisor.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let dmin = divisor.min_exp()?;
        while let Some((rmax, rlead)) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let rmin = rem.min_exp()?;
            if rmax - rmin < dmax - dmin {
                return None;
            }
            let (q, r) = rlead.div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            let e = rmax - dmax;
            insert_term(&mut quot.terms, e, q.clone());
            for (de, dc) in &divisor.terms {
                insert_term(&mut rem.terms, de + e, -(dc * &q));
            }
        }
        Some(quot)
    }

    /// `coef*var^exp` terms in increasing exponent order joined by `+`;
    /// the zero polynomial is `0`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push('+');
            }
            let _ = write!(s, "{}*{}^{}", c, self.var, e);
        }
        s
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly1({})", self.canonical_string())
    }
}

/// A Laurent polynomial in two named variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    vars: (char, char),
    terms: BTreeMap<(i64, i64), BigInt>,
}

/// Which of the two variables of a [`LaurentPoly2`] a substitution eliminates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

impl LaurentPoly2 {
    pub fn zero(vars: (char, char)) -> Self {
        LaurentPoly2 { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: (char, char)) -> Self {
        Self::monomial(vars, (0, 0), 1)
    }

    pub fn monomial(vars: (char, char), exps: (i64, i64), coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        insert_term(&mut p.terms, exps, coef.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(vars: (char, char), terms: impl IntoIterator<Item = ((i64, i64), C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            insert_term(&mut p.terms, e, c.into());
        }
        p
    }

    pub fn vars(&self) -> (char, char) {
        self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = ((i64, i64), &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exps: (i64, i64)) -> BigInt {
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(mismatch(self.vars, other.vars))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            insert_term(&mut out.terms, *e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            insert_term(&mut out.terms, *e, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = Self::zero(self.vars);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                insert_term(&mut out.terms, (a1 + a2, b1 + b2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.vars);
        for (e, c) in &self.terms {
            insert_term(&mut out.terms, *e, c * k);
        }
        out
    }

    /// Multiply by `first^i · second^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        LaurentPoly2 {
            vars: self.vars,
            terms: self.terms.iter().map(|((a, b), c)| ((a + i, b + j), c.clone())).collect(),
        }
    }

    /// Substitute the variable in `slot` by `sign · other^k`, where `other` is
    /// the remaining variable. `k = 0` specializes the variable to `sign`.
    pub fn substitute(&self, slot: Slot, sign: i8, k: i64) -> LaurentPoly1 {
        let other = match slot {
            Slot::First => self.vars.1,
            Slot::Second => self.vars.0,
        };
        let mut out = LaurentPoly1::zero(other);
        for ((a, b), c) in &self.terms {
            let (gone, kept) = match slot {
                Slot::First => (*a, *b),
                Slot::Second => (*b, *a),
            };
            let coef = if sign < 0 && gone.is_odd() { -c } else { c.clone() };
            insert_term(&mut out.terms, kept + gone * k, coef);
        }
        out
    }

    /// Substitute by variable name; errors when `var` is not one of ours.
    pub fn substitute_var(&self, var: char, sign: i8, k: i64) -> Result<LaurentPoly1, AlgebraError> {
        if var == self.vars.0 {
            Ok(self.substitute(Slot::First, sign, k))
        } else if var == self.vars.1 {
            Ok(self.substitute(Slot::Second, sign, k))
        } else {
            Err(mismatch(var, self.vars))
        }
    }

    /// Collect as a polynomial in the first variable whose coefficients are
    /// polynomials in the second.
    pub fn coefficients_in_first(&self) -> BTreeMap<i64, LaurentPoly1> {
        let mut out: BTreeMap<i64, LaurentPoly1> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let entry = out.entry(*a).or_insert_with(|| LaurentPoly1::zero(self.vars.1));
            insert_term(&mut entry.terms, *b, c.clone());
        }
        out
    }

    /// Sum over terms `coef · first^a · p^b`, i.e. substituting a polynomial
    /// for the second variable. Negative powers of `p` are rejected.
    pub(crate) fn substitute_second_poly(&self, p: &LaurentPoly1) -> Option<LaurentPoly2> {
        let target = (self.vars.0, p.var);
        let mut out = LaurentPoly2::zero(target);
        let mut powers: Vec<LaurentPoly1> = alloc::vec![LaurentPoly1::one(p.var)];
        for ((a, b), c) in &self.terms {
            if *b < 0 {
                return None;
            }
            let b = *b as usize;
            while powers.len() <= b {
                let next = &powers[powers.len() - 1] * p;
                powers.push(next);
            }
            for (e, pc) in powers[b].terms() {
                insert_term(&mut out.terms, (*a, e), c * pc);
            }
        }
        Some(out)
    }

    /// Terms `coef*x^i*y^j` sorted lexicographically by `(i, j)`, joined by `+`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push('+');
            }
            let _ = write!(s, "{}*{}^{}*{}^{}", c, self.vars.0, a, self.vars.1, b);
        }
        s
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({})", self.canonical_string())
    }
}

macro_rules! forward_ops {
    ($t:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                self.try_add(rhs).expect("variable mismatch in add")
            }
        }
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self.try_sub(rhs).expect("variable mismatch in sub")
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                self.try_mul(rhs).expect("variable mismatch in mul")
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.scalar_mul(&BigInt::from(-1))
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

forward_ops!(LaurentPoly1);
forward_ops!(LaurentPoly2);

/// Coefficientwise absolute sum, used for quick size bounds.
pub fn l1_norm(p: &LaurentPoly1) -> BigInt {
    p.terms().map(|(_, c)| c.abs()).fold(BigInt::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(terms: &[(i64, i64)]) -> LaurentPoly1 {
        LaurentPoly1::from_terms('q', terms.iter().copied())
    }

    #[test]
    fn cancellation_drops_zero_terms() {
        let p = q(&[(1, 1), (-1, 1)]) + q(&[(-1, -1)]);
        assert_eq!(p, q(&[(1, 1)]));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn difference_of_squares() {
        let p = q(&[(1, 1), (-1, -1)]) * q(&[(1, 1), (-1, 1)]);
        assert_eq!(p, q(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn zero_annihilates() {
        let p = q(&[(3, 7), (-2, -5)]);
        assert!((LaurentPoly1::zero('q') * p).is_zero());
    }

    #[test]
    fn mismatched_variables_error() {
        let a = LaurentPoly1::one('q');
        let b = LaurentPoly1::one('t');
        assert!(matches!(a.try_add(&b), Err(AlgebraError::VariableMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(q(&[(1, 1), (-1, 1)]).canonical_string(), "1*q^-1+1*q^1");
        assert_eq!(LaurentPoly1::zero('q').canonical_string(), "0");
        assert_eq!(q(&[(2, -1)]).canonical_string(), "-1*q^2");
        let h = LaurentPoly2::from_terms(('a', 'q'), [((1, 0), 1), ((-1, 0), -1)]);
        assert_eq!(h.canonical_string(), "-1*a^-1*q^0+1*a^1*q^0");
    }

    #[test]
    fn substitution_examples() {
        // a^2 q - a^-2 q with a -> q^3
        let p = LaurentPoly2::from_terms(('a', 'q'), [((2, 1), 1), ((-2, 1), -1)]);
        assert_eq!(p.substitute(Slot::First, 1, 3), q(&[(7, 1), (-5, -1)]));
        // q + q^-1 in (q, t) with t -> -1
        let u = LaurentPoly2::from_terms(('q', 't'), [((1, 0), 1), ((-1, 0), 1)]);
        assert_eq!(u.substitute(Slot::Second, -1, 0), q(&[(1, 1), (-1, 1)]));
        // q t + q t^2 with t -> 1
        let w = LaurentPoly2::from_terms(('q', 't'), [((1, 1), 1), ((1, 2), 1)]);
        assert_eq!(w.substitute(Slot::Second, 1, 0), q(&[(1, 2)]));
    }

    #[test]
    fn exact_division() {
        let z = q(&[(1, 1), (-1, -1)]);
        let p = &z * &q(&[(3, 2), (0, -1), (-4, 5)]);
        assert_eq!(p.div_exact(&z), Some(q(&[(3, 2), (0, -1), (-4, 5)])));
        assert_eq!(q(&[(0, 1)]).div_exact(&z), None);
        assert_eq!(q(&[(0, 3)]).div_exact(&q(&[(0, 2)])), None);
    }

    #[test]
    fn unit_evaluation() {
        let p = q(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]);
        assert_eq!(p.evaluate_unit(1), BigInt::from(1));
        assert_eq!(p.evaluate_unit(-1), BigInt::from(5));
    }
}
