//! The Kauffman bracket skein module of the solid torus, B = Z[A^\pm][z].
//!
//! `z` is the core curve. The module carries seven named bases:
//!
//! * `PowerZ`        - the powers z^n (the internal canonical basis),
//! * `ChebyshevE`    - the twist eigenvectors e_n (e_n = z e_{n-1} - e_{n-2}),
//! * `HabiroR`       - R_n = prod_{i<n} (z - lambda_{2i}),
//! * `HabiroRPrime`  - R'_n = R_n / {n}!,
//! * `HabiroS`       - S_n = prod_{i<n} (z^2 - lambda_i^2), a basis of the even part,
//! * `TwistedCurlyS` - script S_n with t(script S_n) = mu_{2n} S_n, monic,
//! * `TwistedCurlyR` - script R_n with t(script R_n) = mu_n R_n, monic.
//!
//! All conversions go through triangular change-of-basis data computed on
//! demand and memoized. The twist map acts diagonally on `ChebyshevE`, and
//! the Hopf pairing is evaluated through <f(z), e_i> = f(lambda_i) <e_i>.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{lambda, mu_pow, qbrace_fact, qint, LaurentPoly};

/// Which basis a [`SkeinElement`]'s coordinates refer to.
///
/// `HabiroS` and `TwistedCurlyS` index only the even part: their element `n`
/// has z-degree `2n`. All other tags index by degree directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisTag {
    PowerZ,
    ChebyshevE,
    HabiroR,
    HabiroRPrime,
    HabiroS,
    TwistedCurlyS,
    TwistedCurlyR,
}

impl BasisTag {
    /// True for the bases that span only the even subspace.
    pub fn is_even_only(self) -> bool {
        matches!(self, BasisTag::HabiroS | BasisTag::TwistedCurlyS)
    }

    /// z-degree of basis element `n`.
    pub fn degree_of_index(self, n: usize) -> usize {
        if self.is_even_only() {
            2 * n
        } else {
            n
        }
    }

    pub const ALL: [BasisTag; 7] = [
        BasisTag::PowerZ,
        BasisTag::ChebyshevE,
        BasisTag::HabiroR,
        BasisTag::HabiroRPrime,
        BasisTag::HabiroS,
        BasisTag::TwistedCurlyS,
        BasisTag::TwistedCurlyR,
    ];
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A finite-degree element of the skein module, stored as coefficients
/// against a tagged basis. Trailing zero coefficients are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinElement {
    basis: BasisTag,
    coeffs: Vec<LaurentPoly>,
}

// ---------------------------------------------------------------------------
// coefficient-vector helpers (index = z-power)

fn trim(mut v: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    while v.last().is_some_and(LaurentPoly::is_zero) {
        v.pop();
    }
    v
}

fn vec_sub(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let n = a.len().max(b.len());
    let zero = LaurentPoly::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x - y);
    }
    trim(out)
}

fn vec_add(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let n = a.len().max(b.len());
    let zero = LaurentPoly::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x + y);
    }
    trim(out)
}

fn vec_scale(a: &[LaurentPoly], s: &LaurentPoly) -> Vec<LaurentPoly> {
    trim(a.iter().map(|c| c * s).collect())
}

/// Multiply by z^by (shift up).
fn vec_shift(a: &[LaurentPoly], by: usize) -> Vec<LaurentPoly> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![LaurentPoly::zero(); by];
    out.extend_from_slice(a);
    out
}

fn vec_mul(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![LaurentPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

/// Evaluate the z-polynomial with LaurentPoly coefficients at a scalar.
fn vec_eval(a: &[LaurentPoly], at: &LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for c in a.iter().rev() {
        acc = &(&acc * at) + c;
    }
    acc
}

/// Expand a z-coordinate vector in the Chebyshev basis e_0, e_1, ...
/// Triangular back-substitution; exact because each e_n is monic.
fn z_to_e(v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut rem = trim(v.to_vec());
    if rem.is_empty() {
        return Vec::new();
    }
    let deg = rem.len() - 1;
    let mut coords = vec![LaurentPoly::zero(); deg + 1];
    for n in (0..=deg).rev() {
        let c = rem.get(n).cloned().unwrap_or_default();
        if !c.is_zero() {
            rem = vec_sub(&rem, &vec_scale(&expansion_in_z(BasisTag::ChebyshevE, n), &c));
            coords[n] = c;
        }
    }
    debug_assert!(trim(rem).is_empty());
    trim(coords)
}

fn e_to_z(coords: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    for (n, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            out = vec_add(&out, &vec_scale(&expansion_in_z(BasisTag::ChebyshevE, n), c));
        }
    }
    out
}

/// Apply t^p to a z-coordinate vector through the eigenbasis.
fn vec_twist(v: &[LaurentPoly], p: i64) -> Vec<LaurentPoly> {
    let mut coords = z_to_e(v);
    for (i, c) in coords.iter_mut().enumerate() {
        if !c.is_zero() {
            *c = &*c * &mu_pow(i, p);
        }
    }
    e_to_z(&coords)
}

// ---------------------------------------------------------------------------
// basis expansions, memoized per (tag, index)

fn expansion_cache() -> &'static Mutex<HashMap<(BasisTag, usize), Arc<Vec<LaurentPoly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(BasisTag, usize), Arc<Vec<LaurentPoly>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// PowerZ coefficient vector of basis element `n` of `tag`.
///
/// Not defined for `HabiroRPrime` (R'_n has leading coefficient 1/{n}!, so it
/// lies outside Z[A^\pm][z] for n >= 1); conversions handle that tag by exact
/// division against the `HabiroR` family instead.
///
/// The cache is written under a lock that is never held while computing, so
/// concurrent callers at worst recompute the same (immutable) vector.
fn expansion_in_z(tag: BasisTag, n: usize) -> Arc<Vec<LaurentPoly>> {
    assert!(
        tag != BasisTag::HabiroRPrime,
        "R'_n has no integral PowerZ expansion"
    );
    if let Some(hit) = expansion_cache().lock().unwrap().get(&(tag, n)) {
        return hit.clone();
    }
    let computed: Vec<LaurentPoly> = match tag {
        BasisTag::PowerZ => {
            let mut v = vec![LaurentPoly::zero(); n + 1];
            v[n] = LaurentPoly::one();
            v
        }
        BasisTag::ChebyshevE => match n {
            0 => vec![LaurentPoly::one()],
            1 => vec![LaurentPoly::zero(), LaurentPoly::one()],
            _ => vec_sub(
                &vec_shift(&expansion_in_z(tag, n - 1), 1),
                &expansion_in_z(tag, n - 2),
            ),
        },
        BasisTag::HabiroR => {
            if n == 0 {
                vec![LaurentPoly::one()]
            } else {
                // R_n = (z - lambda_{2(n-1)}) R_{n-1}
                let lin = [-lambda(2 * (n - 1)), LaurentPoly::one()];
                vec_mul(&lin, &expansion_in_z(tag, n - 1))
            }
        }
        BasisTag::HabiroS => {
            if n == 0 {
                vec![LaurentPoly::one()]
            } else {
                // S_n = (z^2 - lambda_{n-1}^2) S_{n-1}
                let quad = [
                    -lambda(n - 1).pow(2),
                    LaurentPoly::zero(),
                    LaurentPoly::one(),
                ];
                vec_mul(&quad, &expansion_in_z(tag, n - 1))
            }
        }
        BasisTag::TwistedCurlyS => {
            // script S_n = mu_{2n} t^{-1}(S_n)
            let base = expansion_in_z(BasisTag::HabiroS, n);
            vec_scale(&vec_twist(&base, -1), &mu_pow(2 * n, 1))
        }
        BasisTag::TwistedCurlyR => {
            // script R_n = mu_n t^{-1}(R_n)
            let base = expansion_in_z(BasisTag::HabiroR, n);
            vec_scale(&vec_twist(&base, -1), &mu_pow(n, 1))
        }
        BasisTag::HabiroRPrime => unreachable!(),
    };
    let arc = Arc::new(computed);
    expansion_cache()
        .lock()
        .unwrap()
        .entry((tag, n))
        .or_insert(arc)
        .clone()
}

impl SkeinElement {
    /// Builds an element from raw coordinates in the given basis.
    pub fn new(basis: BasisTag, coeffs: Vec<LaurentPoly>) -> Self {
        SkeinElement {
            basis,
            coeffs: trim(coeffs),
        }
    }

    pub fn zero(basis: BasisTag) -> Self {
        SkeinElement {
            basis,
            coeffs: Vec::new(),
        }
    }

    /// The unit 1 (= z^0 = e_0 = R_0 = ...).
    pub fn one() -> Self {
        Self::z_power(0)
    }

    /// The monomial z^k in the PowerZ basis.
    pub fn z_power(k: usize) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); k + 1];
        coeffs[k] = LaurentPoly::one();
        SkeinElement {
            basis: BasisTag::PowerZ,
            coeffs,
        }
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> LaurentPoly {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// z-degree, or None for the zero element.
    pub fn z_degree(&self) -> Option<usize> {
        let top = self.coeffs.len().checked_sub(1)?;
        Some(self.basis.degree_of_index(top))
    }

    /// PowerZ coordinate vector. Exact for every basis; for `HabiroRPrime`
    /// each coordinate is divided by {n}! and a non-divisible coordinate
    /// raises `NotDivisible` (such an element lies outside the module).
    pub fn power_z_coeffs(&self) -> Result<Vec<LaurentPoly>> {
        let mut acc = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match self.basis {
                BasisTag::PowerZ => {
                    acc = vec_add(&acc, &vec_scale(&vec_shift(&[LaurentPoly::one()], n), c));
                }
                BasisTag::HabiroRPrime => {
                    let integral = c.exact_div(&qbrace_fact(n as i64)?)?;
                    acc = vec_add(
                        &acc,
                        &vec_scale(&expansion_in_z(BasisTag::HabiroR, n), &integral),
                    );
                }
                tag => {
                    acc = vec_add(&acc, &vec_scale(&expansion_in_z(tag, n), c));
                }
            }
        }
        Ok(acc)
    }

    /// Change of basis. Exact and invertible; converting an element with a
    /// nonzero odd part into an even-only basis raises `NotEven`.
    pub fn convert(&self, target: BasisTag) -> Result<SkeinElement> {
        if self.basis == target {
            return Ok(self.clone());
        }
        let v = self.power_z_coeffs()?;
        SkeinElement::from_power_z(v, target)
    }

    fn from_power_z(v: Vec<LaurentPoly>, target: BasisTag) -> Result<SkeinElement> {
        let v = trim(v);
        match target {
            BasisTag::PowerZ => Ok(SkeinElement::new(target, v)),
            BasisTag::HabiroRPrime => {
                let r = SkeinElement::from_power_z(v, BasisTag::HabiroR)?;
                let coeffs = r
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| Ok(c * &qbrace_fact(n as i64)?))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SkeinElement::new(target, coeffs))
            }
            tag if tag.is_even_only() => {
                if v.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
                    return Err(Error::NotEven);
                }
                if v.is_empty() {
                    return Ok(SkeinElement::zero(tag));
                }
                let mut rem = v;
                let top = (rem.len() - 1) / 2;
                let mut coords = vec![LaurentPoly::zero(); top + 1];
                for n in (0..=top).rev() {
                    let c = rem.get(2 * n).cloned().unwrap_or_default();
                    if !c.is_zero() {
                        rem = vec_sub(&rem, &vec_scale(&expansion_in_z(tag, n), &c));
                        coords[n] = c;
                    }
                }
                debug_assert!(trim(rem).is_empty());
                Ok(SkeinElement::new(tag, coords))
            }
            tag => {
                if v.is_empty() {
                    return Ok(SkeinElement::zero(tag));
                }
                let mut rem = v;
                let top = rem.len() - 1;
                let mut coords = vec![LaurentPoly::zero(); top + 1];
                for n in (0..=top).rev() {
                    let c = rem.get(n).cloned().unwrap_or_default();
                    if !c.is_zero() {
                        rem = vec_sub(&rem, &vec_scale(&expansion_in_z(tag, n), &c));
                        coords[n] = c;
                    }
                }
                debug_assert!(trim(rem).is_empty());
                Ok(SkeinElement::new(tag, coords))
            }
        }
    }

    /// Scales every coordinate by a Laurent polynomial.
    pub fn scale(&self, s: &LaurentPoly) -> SkeinElement {
        SkeinElement::new(self.basis, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Sum, computed in `self`'s basis.
    pub fn add(&self, other: &SkeinElement) -> Result<SkeinElement> {
        let other = other.convert(self.basis)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(&self.coeff(i) + &other.coeff(i));
        }
        Ok(SkeinElement::new(self.basis, coeffs))
    }

    pub fn sub(&self, other: &SkeinElement) -> Result<SkeinElement> {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    /// Semantic equality: same element of the module, regardless of basis.
    pub fn eq_element(&self, other: &SkeinElement) -> Result<bool> {
        Ok(self.power_z_coeffs()? == other.power_z_coeffs()?)
    }
}

/// Basis element `n` of the given basis, as a [`SkeinElement`] in that basis.
///
/// For the even-only tags, index `n` means the degree-2n element (an odd
/// index is not an error). Conversion realizes the defining products and
/// twists; see [`SkeinElement::convert`].
pub fn basis_element(tag: BasisTag, n: usize) -> SkeinElement {
    let mut coeffs = vec![LaurentPoly::zero(); n + 1];
    coeffs[n] = LaurentPoly::one();
    SkeinElement::new(tag, coeffs)
}

/// Exact product, returned in the PowerZ basis. When re-expressed in
/// `HabiroR`, the expansion of R_n R_m has zero coefficients below max(n, m).
pub fn multiply(x: &SkeinElement, y: &SkeinElement) -> Result<SkeinElement> {
    let a = x.power_z_coeffs()?;
    let b = y.power_z_coeffs()?;
    Ok(SkeinElement::new(BasisTag::PowerZ, vec_mul(&a, &b)))
}

/// The twist map t^p (t(e_i) = mu_i e_i), returned in the input's basis.
pub fn twist(x: &SkeinElement, p: i64) -> Result<SkeinElement> {
    let v = x.power_z_coeffs()?;
    SkeinElement::from_power_z(vec_twist(&v, p), x.basis())
}

/// The bracket <x> = <x, 1>: evaluation of the PowerZ form at z = lambda_0.
pub fn bracket(x: &SkeinElement) -> Result<LaurentPoly> {
    let v = x.power_z_coeffs()?;
    Ok(vec_eval(&v, &lambda(0)))
}

/// The Hopf pairing <x, y>, computed via <f(z), e_i> = f(lambda_i) <e_i>
/// with <e_i> = (-1)^i [i+1].
pub fn pairing(x: &SkeinElement, y: &SkeinElement) -> Result<LaurentPoly> {
    let f = x.power_z_coeffs()?;
    let y_e = z_to_e(&y.power_z_coeffs()?);
    let mut acc = LaurentPoly::zero();
    for (i, c) in y_e.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let e_bracket = qint(i as i64 + 1).mul_monomial(0, &sign.into());
        acc = &acc + &(&(c * &vec_eval(&f, &lambda(i))) * &e_bracket);
    }
    Ok(acc)
}

/// The twisted form <x, y>_1 = <t(x), t(y)>.
pub fn pairing1(x: &SkeinElement, y: &SkeinElement) -> Result<LaurentPoly> {
    pairing(&twist(x, 1)?, &twist(y, 1)?)
}

/// The operator t (z^2 . ) t^{-1}, returned in the PowerZ basis.
pub fn conj_mult_z2(x: &SkeinElement) -> Result<SkeinElement> {
    let untwisted = twist(x, -1)?;
    let shifted = multiply(&untwisted, &SkeinElement::z_power(2))?;
    twist(&shifted, 1)
}

/// Which eigenvalue sum to form in [`lambda_power_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaSumKind {
    /// x_{n-1} = sum_{i=0}^{n-1} lambda_{2i}
    EvenIndex,
    /// y_{n-1} = sum_{i=0}^{n-1} lambda_i^2
    Squared,
}

/// The subleading-coefficient sums x_{n-1} and y_{n-1} of R_n and S_n.
pub fn lambda_power_sum(n: usize, kind: LambdaSumKind) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for i in 0..n {
        let term = match kind {
            LambdaSumKind::EvenIndex => lambda(2 * i),
            LambdaSumKind::Squared => lambda(i).pow(2),
        };
        acc = &acc + &term;
    }
    acc
}

impl fmt::Display for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{}: 0", self.basis);
        }
        write!(f, "{}:", self.basis)?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, "\n  [{n}] {c}")?;
            }
        }
        Ok(())
    }
}
