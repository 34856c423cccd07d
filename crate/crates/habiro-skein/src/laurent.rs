//! Exact integer Laurent polynomials in the variable `A`, and the
//! q-combinatorial scalars built from them.
//!
//! Everything downstream works over the ring Z[A, A^-1]. We write `a = A^2`,
//! so the braces and brackets
//!
//! ```text
//! {n} = a^n - a^-n,    [n] = {n}/{1} = a^(n-1) + a^(n-3) + ... + a^(1-n)
//! ```
//!
//! are Laurent polynomials with even A-exponents, while twist eigenvalues
//! `mu_i = (-1)^i A^(i^2+2i)` and half-twist data produce odd exponents.
//! Storing exponents of `A` (not `a`) keeps every scalar integral.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact Laurent polynomial in `A` with arbitrary-precision integer
/// coefficients.
///
/// Canonical form: no stored coefficient is zero, so equality is term-wise.
/// Terms iterate in ascending exponent order, which makes serialization
/// deterministic.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The monomial `coeff * A^exp` (zero coefficient gives the zero polynomial).
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        LaurentPoly { terms }
    }

    /// `A^exp`.
    pub fn a_power(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// `a^exp = A^(2 exp)`, the paper-facing variable.
    pub fn lowercase_a_power(exp: i64) -> Self {
        Self::monomial(2 * exp, 1)
    }

    /// The constant polynomial `c`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// Builds from (exponent, coefficient) pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = LaurentPoly::zero();
        for (e, c) in iter {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `A^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Conjugation `A -> A^-1`: every exponent is negated. A ring involution.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplies by the monomial `coeff * A^exp`.
    pub fn mul_monomial(&self, exp: i64, coeff: &BigInt) -> Self {
        if coeff.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + exp, c * coeff))
                .collect(),
        }
    }

    /// Small non-negative integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = LaurentPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / divisor` in Z[A^\pm].
    ///
    /// Long division by ascending exponents; a nonzero remainder (or a
    /// coefficient that fails integer division) raises `NotDivisible`, which
    /// always signals a formula-implementation bug rather than a data error.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible(self.to_string(), divisor.to_string()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let not_divisible = || Error::NotDivisible(self.to_string(), divisor.to_string());
        let (d_min, d_max) = (divisor.min_exp().unwrap(), divisor.max_exp().unwrap());
        let d_lead = divisor.terms.get(&d_min).unwrap().clone();
        // If a quotient exists its exponents lie in this window.
        let q_max = self.max_exp().unwrap() - d_max;
        let mut remainder = self.clone();
        let mut quotient = LaurentPoly::zero();
        while !remainder.is_zero() {
            let r_min = remainder.min_exp().unwrap();
            let q_exp = r_min - d_min;
            if q_exp > q_max {
                return Err(not_divisible());
            }
            let r_lead = remainder.terms.get(&r_min).unwrap();
            let (q_coeff, rem) = num_integer_div_rem(r_lead, &d_lead);
            if !rem.is_zero() {
                return Err(not_divisible());
            }
            quotient.add_term(q_exp, q_coeff.clone());
            remainder = &remainder - &divisor.mul_monomial(q_exp, &q_coeff);
        }
        Ok(quotient)
    }

    /// Exact evaluation at a nonzero rational value of `A`.
    pub fn eval_rational(&self, base: &BigRational) -> Result<BigRational> {
        if base.is_zero() {
            return Err(Error::ZeroBase);
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 {
                pow_rational(base, e as u64)
            } else {
                pow_rational(base, (-e) as u64).recip()
            };
            acc += p * BigRational::from(c.clone());
        }
        Ok(acc)
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

fn pow_rational(base: &BigRational, mut e: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        sq = &sq * &sq;
        e >>= 1;
    }
    acc
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Plain-text rendering with terms in ascending exponent order,
/// e.g. `A^-1 + 2 - A^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "A")?,
                (1, false) => write!(f, "{mag}*A")?,
                (_, true) => write!(f, "A^{e}")?,
                (_, false) => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    var: String,
    terms: Vec<(i64, String)>,
}

/// JSON form `{"var":"A","terms":[[exp,"coeff"],...]}` with exponents
/// strictly ascending and coefficients as decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            var: "A".to_string(),
            terms: self.terms().map(|(e, c)| (e, c.to_string())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        if repr.var != "A" {
            return Err(D::Error::custom(format!(
                "unsupported variable {:?}, expected \"A\"",
                repr.var
            )));
        }
        let mut out = LaurentPoly::zero();
        for (e, c) in repr.terms {
            let coeff: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            out.add_term(e, coeff);
        }
        Ok(out)
    }
}

/// An exact quotient of Laurent polynomials, kept as a numerator/denominator
/// pair.
///
/// Used for the few scalars that are genuinely not Laurent polynomials, such
/// as the cap coefficient ([k]!)^2/[2k]! and the raw series coefficients
/// c_{n,p} = c'_{n,p}/{n}!. Equality is by cross-multiplication; no gcd
/// reduction is attempted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaurentFraction {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl LaurentFraction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::NotDivisible(
                numerator.to_string(),
                denominator.to_string(),
            ));
        }
        Ok(LaurentFraction {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        LaurentFraction {
            numerator: p,
            denominator: LaurentPoly::one(),
        }
    }

    pub fn mul(&self, other: &LaurentFraction) -> LaurentFraction {
        LaurentFraction {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> LaurentFraction {
        LaurentFraction {
            numerator: &self.numerator * p,
            denominator: self.denominator.clone(),
        }
    }

    /// `a/b == c/d` iff `a d == c b` (denominators are nonzero).
    pub fn eq_value(&self, other: &LaurentFraction) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn is_one(&self) -> bool {
        self.numerator == self.denominator
    }

    /// Collapses to a single polynomial when the division is exact.
    pub fn into_poly(self) -> Result<LaurentPoly> {
        self.numerator.exact_div(&self.denominator)
    }
}

/// Descriptive tags for the q-scalar constructors; each variant names exactly
/// one of the functions below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QScalarTag {
    /// `{n} = a^n - a^-n` (see [`qbrace`]).
    Brace,
    /// `[n] = {n}/{1}` (see [`qint`]).
    Bracket,
    /// `{n}!` (see [`qbrace_fact`]).
    BraceFactorial,
    /// `[n]!` (see [`qint_fact`]).
    BracketFactorial,
    /// Gaussian binomial (see [`qbinom`]).
    Binomial,
    /// `[n]! / ([k_1]! ... [k_p]!)` (see [`multi_qbinom`]).
    Multinomial,
    /// `(q^m; q)_n` with `q = a^2` (see [`pochhammer`]).
    Pochhammer,
}

/// `{n} = a^n - a^-n`. Defined for all integers via `{-n} = -{n}`.
pub fn qbrace(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_terms([(2 * n, 1), (-2 * n, -1)])
}

/// `[n] = (a^n - a^-n)/(a - a^-1) = a^(n-1) + a^(n-3) + ... + a^(1-n)`.
pub fn qint(n: i64) -> LaurentPoly {
    let m = n.abs();
    let mut out = LaurentPoly::zero();
    let mut e = -(m - 1);
    while e <= m - 1 {
        out.add_term(2 * e, BigInt::one());
        e += 2;
    }
    if n < 0 {
        out = -out;
    }
    out
}

/// `{n}! = {1}{2}...{n}` (empty product for n = 0).
pub fn qbrace_fact(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    let mut out = LaurentPoly::one();
    for i in 1..=n {
        out = &out * &qbrace(i);
    }
    Ok(out)
}

/// `[n]! = [1][2]...[n]` (empty product for n = 0).
pub fn qint_fact(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeFactorial(n));
    }
    let mut out = LaurentPoly::one();
    for i in 1..=n {
        out = &out * &qint(i);
    }
    Ok(out)
}

/// Gaussian binomial `[n choose k] = [n]!/([k]![n-k]!)` for `n >= 0`,
/// extended by zero for `k < 0` or `k > n`.
///
/// Built division-free from the q-Pascal recursion
/// `[n choose k] = a^k [n-1 choose k] + a^(k-n) [n-1 choose k-1]`;
/// the factorial-quotient form is kept as an independent test oracle.
pub fn qbinom(n: i64, k: i64) -> LaurentPoly {
    if k < 0 || k > n || n < 0 {
        return LaurentPoly::zero();
    }
    let k = k.min(n - k);
    // row m of Pascal's triangle, entries 0..=k
    let mut row: Vec<LaurentPoly> = vec![LaurentPoly::one()];
    for m in 1..=n {
        let width = (k.min(m) + 1) as usize;
        let mut next: Vec<LaurentPoly> = Vec::with_capacity(width);
        for j in 0..width as i64 {
            let stay = if (j as usize) < row.len() {
                row[j as usize].mul_monomial(2 * j, &BigInt::one())
            } else {
                LaurentPoly::zero()
            };
            let carry = if j >= 1 {
                row[(j - 1) as usize].mul_monomial(2 * (j - m), &BigInt::one())
            } else {
                LaurentPoly::zero()
            };
            next.push(&stay + &carry);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// q-multinomial `[n]!/([k_1]!...[k_p]!)` with `sum(parts) = n`,
/// computed as a product of Gaussian binomials of the partial sums.
pub fn multi_qbinom(n: i64, parts: &[i64]) -> Result<LaurentPoly> {
    if parts.iter().any(|&k| k < 0) || parts.iter().sum::<i64>() != n {
        return Err(Error::BadMultiIndex {
            expected: n,
            got: parts.iter().sum(),
        });
    }
    let mut out = LaurentPoly::one();
    let mut partial = 0i64;
    for &k in parts {
        partial += k;
        out = &out * &qbinom(partial, k);
    }
    Ok(out)
}

/// Twist eigenvalue `mu_i = (-1)^i A^(i^2 + 2i)`.
pub fn mu(i: usize) -> LaurentPoly {
    mu_pow(i, 1)
}

/// `mu_i^p` for any integer `p`, by monomial exponent arithmetic.
pub fn mu_pow(i: usize, p: i64) -> LaurentPoly {
    let i = i as i64;
    let sign = if (i * p) % 2 == 0 { 1 } else { -1 };
    LaurentPoly::monomial(p * (i * i + 2 * i), sign)
}

/// Pairing eigenvalue `lambda_i = -a^(i+1) - a^(-i-1)`.
pub fn lambda(i: usize) -> LaurentPoly {
    let i = i as i64;
    LaurentPoly::from_terms([(2 * (i + 1), -1), (-2 * (i + 1), -1)])
}

/// q-Pochhammer `(x; q)_n` with `x = q^m` and `q = a^2 = A^4`:
/// the product `(1 - q^m)(1 - q^(m+1)) ... (1 - q^(m+n-1))`.
pub fn pochhammer(m: i64, n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for j in 0..n as i64 {
        let factor = &LaurentPoly::one() - &LaurentPoly::a_power(4 * (m + j));
        out = &out * &factor;
    }
    out
}
