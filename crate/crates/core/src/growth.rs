//! Exact power series for the growth-rate argument: the generating functions
//! of basic templates `bt(z)`, rational templates `rt(y, z)` and their
//! summand-permutation quotient `rtp(y, z)`, the fixed point
//! `at(z) = rt(bt(at(z)), z)`, the singularity constants and the decay bound.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("reciprocal needs a nonzero constant term")]
    ReciprocalNeedsUnitConstant,
    #[error("composition needs an inner series with zero constant term")]
    CompositionNeedsZeroConstantTerm,
    #[error("binomial power needs constant term 1")]
    BinomialNeedsUnitConstant,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrowthError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("no branch of the quadratic gives a counting series")]
    BranchSelectionFailed,
    #[error("fixed point did not stabilize within {0} iterations")]
    NoStabilization(usize),
    #[error("slack too large: alpha + epsilon must be below beta - epsilon")]
    SlackTooLarge,
    #[error("invalid sandwich parameters: {0}")]
    InvalidSandwich(&'static str),
    #[error("sequences have lengths {ambient} and {sub}")]
    LengthMismatch { ambient: usize, sub: usize },
    #[error("ambient count at index {0} is not positive")]
    NonPositiveAmbient(usize),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `Σ n_i / d_i` accumulated over a common denominator and reduced once.
fn sum_fractions<'a>(terms: impl Iterator<Item = (BigInt, &'a BigInt)>) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (n, d) in terms {
        if n.is_zero() {
            continue;
        }
        if *d == den {
            num += n;
        } else {
            let g = den.lcm(d);
            num = num * (&g / &den) + n * (&g / d);
            den = g;
        }
    }
    BigRational::new(num, den)
}

/// A power series in `z` known exactly up to `z^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates to `order`.
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        Self::new(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    /// The series `z`.
    pub fn variable(order: usize) -> Self {
        Self::new(order, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(order, self.coeffs.iter().take(order + 1).cloned().collect())
    }

    /// Integer coefficients, or `None` if some coefficient is not an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn is_counting_series(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && !c.is_negative())
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let order = self.order().min(other.order());
        Self { coeffs: (0..=order).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                let denoms: Vec<BigInt> =
                    (0..=n).map(|k| self.coeffs[k].denom() * other.coeffs[n - k].denom()).collect();
                sum_fractions((0..=n).map(|k| (self.coeffs[k].numer() * other.coeffs[n - k].numer(), &denoms[k])))
            })
            .collect();
        Self { coeffs }
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let u0 = &self.coeffs[0];
        if u0.is_zero() {
            return Err(SeriesError::ReciprocalNeedsUnitConstant);
        }
        let inv0 = u0.recip();
        let mut g = vec![inv0.clone()];
        for n in 1..self.coeffs.len() {
            let denoms: Vec<BigInt> = (1..=n).map(|k| self.coeffs[k].denom() * g[n - k].denom()).collect();
            let s = sum_fractions((1..=n).map(|k| (self.coeffs[k].numer() * g[n - k].numer(), &denoms[k - 1])));
            g.push(-s * &inv0);
        }
        Ok(Self { coeffs: g })
    }

    /// `u^p` for `u(0) = 1`, from the recurrence given by `u f' = p u' f`.
    pub fn pow_binomial(&self, p: &BigRational) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BinomialNeedsUnitConstant);
        }
        let mut f = vec![BigRational::one()];
        let (pn, pd) = (p.numer(), p.denom());
        for n in 1..self.coeffs.len() {
            // (p k - (n - k)) = (pn k - pd (n - k)) / pd
            let denoms: Vec<BigInt> = (1..=n).map(|k| pd * self.coeffs[k].denom() * f[n - k].denom()).collect();
            let s = sum_fractions((1..=n).map(|k| {
                let weight = pn * BigInt::from(k) - pd * BigInt::from(n - k);
                (weight * self.coeffs[k].numer() * f[n - k].numer(), &denoms[k - 1])
            }));
            f.push(s / q(n as i64));
        }
        Ok(Self { coeffs: f })
    }

    pub fn sqrt_binomial(&self) -> Result<Self, SeriesError> {
        self.pow_binomial(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// `self(g(z))` for `g(0) = 0`, by Horner's rule.
    pub fn compose(&self, g: &Self) -> Result<Self, SeriesError> {
        if !g.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionNeedsZeroConstantTerm);
        }
        let order = self.order().min(g.order());
        let g = g.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `c_{n+1} / c_n` as a float.
    pub fn ratio_estimate(&self, n: usize) -> Option<f64> {
        let (a, b) = (self.coeffs.get(n)?, self.coeffs.get(n + 1)?);
        if a.is_zero() {
            return None;
        }
        (b / a).to_f64()
    }
}

/// A power series in `y` and `z` known exactly for `y^m z^n` with
/// `m ≤ orders.0` and `n ≤ orders.1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    coeffs: Vec<Vec<BigRational>>,
}

impl BivariateSeries {
    pub fn zero(orders: (usize, usize)) -> Self {
        BivariateSeries { coeffs: vec![vec![BigRational::zero(); orders.1 + 1]; orders.0 + 1] }
    }

    fn monomial(orders: (usize, usize), m: usize, n: usize, c: i64) -> Self {
        let mut s = Self::zero(orders);
        if m <= orders.0 && n <= orders.1 {
            s.coeffs[m][n] = q(c);
        }
        s
    }

    /// A polynomial from `(m, n, coefficient)` terms.
    pub fn polynomial(orders: (usize, usize), terms: &[(usize, usize, i64)]) -> Self {
        terms.iter().fold(Self::zero(orders), |acc, &(m, n, c)| acc.add(&Self::monomial(orders, m, n, c)))
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    pub fn coeff(&self, m: usize, n: usize) -> BigRational {
        self.coeffs.get(m).and_then(|r| r.get(n)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, row) in other.coeffs.iter().enumerate() {
            for (n, c) in row.iter().enumerate() {
                out.coeffs[m][n] += c;
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BivariateSeries { coeffs: self.coeffs.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (mo, no) = self.orders();
        let mut out = Self::zero((mo, no));
        for (m1, r1) in self.coeffs.iter().enumerate() {
            for (n1, a) in r1.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                for (m2, r2) in other.coeffs.iter().enumerate().take(mo + 1 - m1) {
                    for (n2, b) in r2.iter().enumerate().take(no + 1 - n1) {
                        if !b.is_zero() {
                            out.coeffs[m1 + m2][n1 + n2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// `Σ_k w_k v^k` where `v` has zero constant term; the sum is finite.
    fn power_sum(v: &Self, weights: impl Fn(usize) -> BigRational) -> Self {
        let (mo, no) = v.orders();
        let mut out = Self::zero((mo, no));
        let mut power = Self::monomial((mo, no), 0, 0, 1);
        for k in 0..=mo + no {
            out = out.add(&power.scale(&weights(k)));
            power = power.mul(v);
        }
        out
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let c = self.coeffs[0][0].clone();
        if c.is_zero() {
            return Err(SeriesError::ReciprocalNeedsUnitConstant);
        }
        let inv = c.recip();
        // 1/u = (1/c) Σ (-v)^k with v = u/c - 1
        let v = self.scale(&inv).sub(&Self::monomial(self.orders(), 0, 0, 1));
        Ok(Self::power_sum(&v, |k| if k % 2 == 0 { inv.clone() } else { -inv.clone() }))
    }

    /// `u^p` for `u(0,0) = 1` as the binomial series in `u - 1`.
    pub fn pow_binomial(&self, p: &BigRational) -> Result<Self, SeriesError> {
        if !self.coeffs[0][0].is_one() {
            return Err(SeriesError::BinomialNeedsUnitConstant);
        }
        let v = self.sub(&Self::monomial(self.orders(), 0, 0, 1));
        let mut binom = vec![BigRational::one()];
        for k in 1..=v.orders().0 + v.orders().1 {
            let prev = binom[k - 1].clone();
            binom.push(prev * (p - q(k as i64 - 1)) / q(k as i64));
        }
        Ok(Self::power_sum(&v, |k| binom[k].clone()))
    }

    pub fn sqrt_binomial(&self) -> Result<Self, SeriesError> {
        self.pow_binomial(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Coefficients in nonnegative integers for total degree `≤ degree`.
    pub fn is_counting_up_to(&self, degree: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(m, row)| row.iter().enumerate().all(|(n, c)| m + n > degree || (c.is_integer() && !c.is_negative())))
    }
}

/// `bt(f)` from the closed form
/// `((1-4f)^{3/2}(f+1) - 2f^5 - 10f^4 - 10f^3 + 5f - 1) / (2(f+1)(f+2)^3)`.
fn bt_of(f: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let order = f.order();
    let one = TruncatedSeries::one(order);
    let c = |n: i64| TruncatedSeries::constant(order, q(n));
    let f2 = f.mul(f);
    let f3 = f2.mul(f);
    let f4 = f3.mul(f);
    let f5 = f4.mul(f);
    let root = one.sub(&f.scale(&q(4))).pow_binomial(&BigRational::new(BigInt::from(3), BigInt::from(2)))?;
    let f_plus_1 = f.add(&one);
    let numerator = root
        .mul(&f_plus_1)
        .sub(&f5.scale(&q(2)))
        .sub(&f4.scale(&q(10)))
        .sub(&f3.scale(&q(10)))
        .add(&f.scale(&q(5)))
        .sub(&one);
    let f_plus_2 = f.add(&c(2));
    let denominator = f_plus_1.mul(&f_plus_2).mul(&f_plus_2).mul(&f_plus_2).scale(&q(2));
    Ok(numerator.mul(&denominator.reciprocal()?))
}

/// `rt(y, z)` with `y` a series in `z`, from
/// `2rt = 1 + z - y - ((1-z+y)^2 - 8(z^2-yz+y)/(1-z))^{1/2}`.
fn rt_of(y: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let order = y.order();
    let one = TruncatedSeries::one(order);
    let z = TruncatedSeries::variable(order);
    let base = one.sub(&z).add(y);
    let inner = z.mul(&z).sub(&y.mul(&z)).add(y).scale(&q(8)).mul(&one.sub(&z).reciprocal()?);
    let root = base.mul(&base).sub(&inner).sqrt_binomial()?;
    Ok(one.add(&z).sub(y).sub(&root).scale(&BigRational::new(BigInt::one(), BigInt::from(2))))
}

/// Basic templates by number of slots.
pub fn bt_series(order: usize) -> TruncatedSeries {
    bt_of(&TruncatedSeries::variable(order)).expect("closed form has unit constant terms")
}

/// Rational templates up to flypes, `y` counting slots and `z` crossings.
pub fn rt_series(orders: (usize, usize)) -> BivariateSeries {
    let one = BivariateSeries::monomial(orders, 0, 0, 1);
    let y = BivariateSeries::monomial(orders, 1, 0, 1);
    let z = BivariateSeries::monomial(orders, 0, 1, 1);
    let base = one.sub(&z).add(&y);
    let numer = BivariateSeries::polynomial(orders, &[(0, 2, 1), (1, 1, -1), (1, 0, 1)]).scale(&q(8));
    let inner = numer.mul(&one.sub(&z).reciprocal().expect("unit constant"));
    let root = base.mul(&base).sub(&inner).sqrt_binomial().expect("unit constant");
    one.add(&z).sub(&y).sub(&root).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// Rational templates up to flypes and summand permutations: the root `r`
/// of `-2r^2(y-1) + r(y-1)(3y-z+1) - y^3 + y^2(z+1) + y + z^2/(1-z) = 0`
/// whose coefficients up to total degree 10 are counting numbers.
pub fn rtp_series(orders: (usize, usize)) -> Result<BivariateSeries, GrowthError> {
    let one = BivariateSeries::monomial(orders, 0, 0, 1);
    let z = BivariateSeries::monomial(orders, 0, 1, 1);
    let a = BivariateSeries::polynomial(orders, &[(0, 0, 2), (1, 0, -2)]);
    let b = BivariateSeries::polynomial(orders, &[(1, 0, 1), (0, 0, -1)])
        .mul(&BivariateSeries::polynomial(orders, &[(1, 0, 3), (0, 1, -1), (0, 0, 1)]));
    let c = BivariateSeries::polynomial(orders, &[(3, 0, -1), (2, 1, 1), (2, 0, 1), (1, 0, 1)])
        .add(&z.mul(&z).mul(&one.sub(&z).reciprocal()?));
    let disc = b.mul(&b).sub(&a.mul(&c).scale(&q(4)));
    // disc(0,0) = 1, so its square root is a binomial series
    let root = disc.sqrt_binomial()?;
    let inv_2a = a.scale(&q(2)).reciprocal()?;
    let minus_b = b.scale(&q(-1));
    let degree = 10.min(orders.0 + orders.1);
    [minus_b.sub(&root), minus_b.add(&root)]
        .into_iter()
        .map(|num| num.mul(&inv_2a))
        .find(|r| r.is_counting_up_to(degree))
        .ok_or(GrowthError::BranchSelectionFailed)
}

/// Alternating prime tangles: the fixed point of `f ↦ rt(bt(f), z)` from
/// `f = z`.
///
/// Since `bt(w) = O(w^5)` and `rt` is linear in `y` to first order, a pass
/// fixes about four more coefficients, so the working order grows by four
/// per pass. The fixed point is unique modulo `z^(order+1)`, and iteration
/// stops only once a full-order pass changes nothing, so the schedule does
/// not affect the result.
pub fn solve_at(order: usize) -> Result<TruncatedSeries, GrowthError> {
    let budget = order + 8;
    let mut f = TruncatedSeries::variable(order.min(1));
    for pass in 0..budget {
        let working = (4 * pass + 2).min(order);
        let g = rt_of(&bt_of(&f.truncate(working))?)?;
        if working == order && g == f {
            return Ok(g);
        }
        f = g;
    }
    Err(GrowthError::NoStabilization(budget))
}

/// A number `(a + b√d) / c` with integers `a, b, c`, `c > 0` and `d > 0`
/// free of square factors below `10^6`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticNumber {
    a: BigInt,
    b: BigInt,
    d: BigInt,
    c: BigInt,
}

impl QuadraticNumber {
    pub fn new(a: BigInt, b: BigInt, d: BigInt, c: BigInt) -> Self {
        assert!(d.is_positive() && !c.is_zero(), "need d > 0 and c != 0");
        let (mut b, mut d) = (b, d);
        let mut p = BigInt::from(2);
        let limit = BigInt::from(1_000_000);
        while &p * &p <= d && p < limit {
            let sq = &p * &p;
            while (&d % &sq).is_zero() {
                d /= &sq;
                b *= &p;
            }
            p += 1;
        }
        let mut x = QuadraticNumber { a, b, d, c };
        x.reduce();
        x
    }

    fn reduce(&mut self) {
        if self.c.is_negative() {
            self.a = -&self.a;
            self.b = -&self.b;
            self.c = -&self.c;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_zero() && !g.is_one() {
            self.a /= &g;
            self.b /= &g;
            self.c /= &g;
        }
    }

    /// The root `(-q + √(q^2 - 4pr)) / 2p` of `p z^2 + q z + r`.
    pub fn larger_root(p: i64, q: i64, r: i64) -> Self {
        let disc = BigInt::from(q) * q - BigInt::from(4) * p * r;
        Self::new(BigInt::from(-q), BigInt::one(), disc, BigInt::from(2 * p))
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.d, &self.c)
    }

    /// `c (a - b√d) / (a^2 - b^2 d)`.
    pub fn recip(&self) -> Self {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        assert!(!norm.is_zero(), "irrational part must not cancel");
        Self::new(&self.c * &self.a, -(&self.c * &self.b), self.d.clone(), norm)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.a * r.numer(), &self.b * r.numer(), self.d.clone(), &self.c * r.denom())
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        let a = &self.a * r.denom() + r.numer() * &self.c;
        Self::new(a, &self.b * r.denom(), self.d.clone(), &self.c * r.denom())
    }

    /// Sum of two numbers over the same surd.
    pub fn add(&self, other: &Self) -> Option<Self> {
        (self.d == other.d).then(|| {
            let a = &self.a * &other.c + &other.a * &self.c;
            let b = &self.b * &other.c + &other.b * &self.c;
            Self::new(a, b, self.d.clone(), &self.c * &other.c)
        })
    }

    pub fn square(&self) -> Self {
        let a = &self.a * &self.a + &self.b * &self.b * &self.d;
        let b = BigInt::from(2) * &self.a * &self.b;
        Self::new(a, b, self.d.clone(), &self.c * &self.c)
    }

    /// The value when the surd part vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| BigRational::new(self.a.clone(), self.c.clone()))
    }

    /// `floor(value · 10^digits)`, exact.
    pub fn scaled_floor(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10).pow(digits);
        // floor(b√d · 10^k) with the sign of b
        let s2 = &self.b * &self.b * &self.d * &scale * &scale;
        let root = s2.sqrt();
        let surd = if self.b.is_negative() {
            if &root * &root == s2 {
                -root
            } else {
                -root - 1
            }
        } else {
            root
        };
        // floor((a·10^k + surd_exact) / c) with surd_exact in [surd, surd + 1)
        (&self.a * &scale + surd).div_floor(&self.c)
    }

    /// Decimal expansion truncated to `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        decimal_string(&self.scaled_floor(digits), digits)
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * libm::sqrt(d))
            / self.c.to_f64().unwrap_or(f64::NAN)
    }
}

fn decimal_string(scaled: &BigInt, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let (int, frac) = scaled.div_mod_floor(&scale);
    let frac = format!("{frac:0>width$}", width = digits as usize);
    if digits == 0 {
        format!("{int}")
    } else {
        format!("{int}.{frac}")
    }
}

impl fmt::Display for QuadraticNumber {
    /// `(a+b*sqrt(d))/c`, omitting unit factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if self.b == -BigInt::one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b, self.d)
        };
        let sum = if self.a.is_zero() {
            surd
        } else if surd.starts_with('-') {
            format!("{}{}", self.a, surd)
        } else {
            format!("{}+{}", self.a, surd)
        };
        if self.c.is_one() {
            f.write_str(&sum)
        } else {
            write!(f, "({sum})/{}", self.c)
        }
    }
}

/// The smallest positive singularities of the two counting series and the
/// corresponding growth constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityConstants {
    /// Root of `135 z^2 + 101 z - 20`.
    pub z1: QuadraticNumber,
    /// Root of `145530 z^2 + 109417 z - 21667`.
    pub z2: QuadraticNumber,
    /// `1/z1`, the growth rate of alternating links.
    pub lower: QuadraticNumber,
    /// `1/z2`, the bound for alternating links modulo oriented mutation.
    pub upper: QuadraticNumber,
}

pub fn singularity_constants() -> SingularityConstants {
    let z1 = QuadraticNumber::larger_root(135, 101, -20);
    let z2 = QuadraticNumber::larger_root(145_530, 109_417, -21_667);
    let lower = z1.recip();
    let upper = z2.recip();
    SingularityConstants { z1, z2, lower, upper }
}

/// `γ = (α + ε) / (β - ε)` for a quotient family of growth at most `α`
/// inside an ambient family of growth at least `β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSandwich {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub epsilon: BigRational,
    pub gamma: BigRational,
}

pub fn sandwich_gamma(
    alpha: BigRational,
    beta: BigRational,
    epsilon: BigRational,
) -> Result<GrowthSandwich, GrowthError> {
    if alpha < BigRational::one() {
        return Err(GrowthError::InvalidSandwich("alpha must be at least 1"));
    }
    if !epsilon.is_positive() {
        return Err(GrowthError::InvalidSandwich("epsilon must be positive"));
    }
    let (r1, r2) = (&alpha + &epsilon, &beta - &epsilon);
    if r1 >= r2 {
        return Err(GrowthError::SlackTooLarge);
    }
    let gamma = r1 / r2;
    Ok(GrowthSandwich { alpha, beta, epsilon, gamma })
}

/// The decay base certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecayBound {
    /// `6.1433 / 6.1479`.
    pub rounded_ratio: BigRational,
    /// `9993 / 10000`.
    pub threshold: BigRational,
    /// `(1/z2) / (1/z1)` to 30 decimal places.
    pub exact_ratio: String,
    /// Both ratios are below the threshold.
    pub holds: bool,
}

pub fn decay_bound() -> DecayBound {
    let rounded_ratio = BigRational::new(BigInt::from(61_433), BigInt::from(61_479));
    let threshold = BigRational::new(BigInt::from(9_993), BigInt::from(10_000));
    let c = singularity_constants();
    let digits = 30;
    let guard = 10;
    let upper = c.upper.scaled_floor(digits + guard);
    let lower = c.lower.scaled_floor(digits + guard);
    let scaled = (upper * BigInt::from(10).pow(digits)).div_floor(&lower);
    let exact_below = scaled < BigInt::from(9_993) * BigInt::from(10).pow(digits - 4);
    DecayBound {
        holds: rounded_ratio < threshold && exact_below,
        rounded_ratio,
        threshold,
        exact_ratio: decimal_string(&scaled, digits),
    }
}

/// Pointwise ratios `#Y_n / #X_n` and cumulative ratios
/// `Σ_{k≤n} #Y_k / Σ_{k≤n} #X_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCurve {
    pub pointwise: Vec<BigRational>,
    pub cumulative: Vec<BigRational>,
}

pub fn density_curve(ambient: &[BigInt], sub: &[BigInt]) -> Result<DensityCurve, GrowthError> {
    if ambient.len() != sub.len() {
        return Err(GrowthError::LengthMismatch { ambient: ambient.len(), sub: sub.len() });
    }
    if let Some(i) = ambient.iter().position(|x| !x.is_positive()) {
        return Err(GrowthError::NonPositiveAmbient(i));
    }
    let pointwise = ambient.iter().zip(sub).map(|(x, y)| BigRational::new(y.clone(), x.clone())).collect();
    let mut cumulative = Vec::with_capacity(ambient.len());
    let (mut sx, mut sy) = (BigInt::zero(), BigInt::zero());
    for (x, y) in ambient.iter().zip(sub) {
        sx += x;
        sy += y;
        cumulative.push(BigRational::new(sy.clone(), sx.clone()));
    }
    Ok(DensityCurve { pointwise, cumulative })
}
