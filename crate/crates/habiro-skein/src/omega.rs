//! Coefficient engines for the twist series omega^p.
//!
//! omega^p = sum_n c_{n,p} R_n = sum_n c'_{n,p} R'_n is the (formal) skein
//! element whose pairing against any even element applies p full twists:
//! <omega^p, x> = <t^p(x)>. Two independent routes compute the cleared
//! coefficients c'_{n,p} = {n}! c_{n,p}:
//!
//! * [`c_np`] - the single sum over k (a mu-weighted quotient of brackets),
//! * [`c_prime`] - the multi-index sum over compositions of n into p parts.
//!
//! They serve as mutual oracles; the acceptance suite also drives the
//! end-to-end pairing identity through [`omega_pairing_check`].
//!
//! The module also houses the recursion data alpha/beta/gamma for the
//! twisted even basis, the closed form of <script S_n>, the cap coefficients
//! C_{n,p,k} and C_{n,n}^(p), and the admissible-coloring scalars
//! (trihedron, half-twist squared, cap scalar) that back them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{
    mu_pow, multi_qbinom, qbinom, qbrace, qbrace_fact, qint, qint_fact, LaurentFraction,
    LaurentPoly,
};
use crate::skein::{basis_element, bracket, multiply, pairing, twist, BasisTag, SkeinElement};

fn brace_fact(n: usize) -> LaurentPoly {
    qbrace_fact(n as i64).expect("nonnegative")
}

fn int_fact(n: usize) -> LaurentPoly {
    qint_fact(n as i64).expect("nonnegative")
}

fn a_pow(e: i64) -> LaurentPoly {
    LaurentPoly::lowercase_a_power(e)
}

fn sign(n: usize) -> LaurentPoly {
    if n % 2 == 0 {
        LaurentPoly::one()
    } else {
        -LaurentPoly::one()
    }
}

/// A composition k = (k_1, ..., k_p) of n into p nonnegative parts, with the
/// partial sums s_i = k_1 + ... + k_i and tails r_i = n - s_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiIndex {
    parts: Vec<i64>,
    n: i64,
}

impl MultiIndex {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if let Some(&bad) = parts.iter().find(|&&k| k < 0) {
            return Err(Error::BadMultiIndex {
                expected: 0,
                got: bad,
            });
        }
        let n = parts.iter().sum();
        Ok(MultiIndex { parts, n })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.n
    }

    /// Partial sum s_i = k_1 + ... + k_i (s_0 = 0).
    pub fn s(&self, i: usize) -> i64 {
        self.parts[..i].iter().sum()
    }

    /// Tail r_i = n - s_i (r_0 = n, r_p = 0).
    pub fn r(&self, i: usize) -> i64 {
        self.n - self.s(i)
    }

    /// All compositions of `n` into `p` parts, in lexicographic order.
    pub fn compositions(n: usize, p: usize) -> Vec<MultiIndex> {
        fn go(remaining: i64, slots: usize, prefix: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
            if slots == 1 {
                prefix.push(remaining);
                out.push(MultiIndex::new(prefix.clone()).expect("nonnegative parts"));
                prefix.pop();
                return;
            }
            for k in 0..=remaining {
                prefix.push(k);
                go(remaining - k, slots - 1, prefix, out);
                prefix.pop();
            }
        }
        if p == 0 {
            return if n == 0 {
                vec![MultiIndex { parts: vec![], n: 0 }]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        go(n as i64, p, &mut Vec::new(), &mut out);
        out
    }
}

/// Twist exponent phi(k) = sum_{i=1}^{p-1} r_i (r_{i-1} + r_i + 2).
pub fn phi(k: &MultiIndex) -> i64 {
    let p = k.len();
    let mut acc = 0;
    let mut r_prev = k.r(0);
    for i in 1..p {
        let r_i = k.r(i);
        acc += r_i * (r_prev + r_i + 2);
        r_prev = r_i;
    }
    acc
}

/// Recursion coefficient alpha_n = 2 + a^(6n+4) [3] - a^(2n); zero for n < 0.
pub fn alpha(n: i64) -> LaurentPoly {
    if n < 0 {
        return LaurentPoly::zero();
    }
    &(&LaurentPoly::constant(2) + &(&a_pow(6 * n + 4) * &qint(3))) - &a_pow(2 * n)
}

/// Recursion coefficient beta_m; the defining formula is stated at n = m + 1:
/// beta_{n-1} = (a^(4n+1) + a^(8n+1) [3]) {2n} {2n+1}. Zero for m < 0.
pub fn beta(m: i64) -> LaurentPoly {
    if m < 0 {
        return LaurentPoly::zero();
    }
    let n = m + 1;
    let head = &a_pow(4 * n + 1) + &(&a_pow(8 * n + 1) * &qint(3));
    &(&head * &qbrace(2 * n)) * &qbrace(2 * n + 1)
}

/// Recursion coefficient gamma_m; the defining formula is stated at n = m + 2:
/// gamma_{n-2} = a^(10n-4) {2n-2} {2n-1} {2n} {2n+1}. Zero for m < 0.
pub fn gamma(m: i64) -> LaurentPoly {
    if m < 0 {
        return LaurentPoly::zero();
    }
    let n = m + 2;
    let mut out = a_pow(10 * n - 4);
    for j in (2 * n - 2)..=(2 * n + 1) {
        out = &out * &qbrace(j);
    }
    out
}

/// Closed form of the bracket of the twisted even basis element:
/// <script S_n> = (-1)^n a^((3n^2+n)/2) {n+1}{n+2}...{2n+1} / {1}.
///
/// Satisfies the four-term recursion
/// <script S_{n+1}> = (lambda_0^2 - alpha_n) <script S_n>
///   - beta_{n-1} <script S_{n-1}> - gamma_{n-2} <script S_{n-2}>.
pub fn curly_s_bracket(n: usize) -> Result<LaurentPoly> {
    let n_i = n as i64;
    let mut prod = a_pow(n_i * (3 * n_i + 1) / 2);
    for j in (n_i + 1)..=(2 * n_i + 1) {
        prod = &prod * &qbrace(j);
    }
    Ok(&sign(n) * &prod.exact_div(&qbrace(1))?)
}

/// The cleared coefficient c'_{n,p} = {n}! c_{n,p} computed from the single
/// sum
///
/// ```text
/// c'_{n,p} = (a - a^-1)^-n  sum_{k=0}^n (-1)^k mu_{2k}^p [2k+1] [n]! / ([n+k+1]! [n-k]!)
/// ```
///
/// valid for every integer p. The sum is assembled over the common
/// denominator [2n+1]! and divided out exactly.
pub fn c_np(n: usize, p: i64) -> Result<LaurentPoly> {
    let n_i = n as i64;
    let mut numerator = LaurentPoly::zero();
    let n_fact = int_fact(n);
    for k in 0..=n_i {
        // [n]!/([n+k+1]! [n-k]!) = [n]! [2n+1 choose n-k] / [2n+1]!
        let mut term = &(&mu_pow(2 * k as usize, p) * &qint(2 * k + 1))
            * &(&n_fact * &qbinom(2 * n_i + 1, n_i - k));
        if k % 2 == 1 {
            term = -term;
        }
        numerator = &numerator + &term;
    }
    let denominator = &qbrace(1).pow(n as u32) * &int_fact(2 * n + 1);
    numerator.exact_div(&denominator)
}

/// The cleared coefficient c'_{n,p} from the multi-index sum
///
/// ```text
/// c'_{n,p} = (-1)^n a^(n(n+3)/2)  sum_{k: compositions of n into p parts}
///            a^phi(k) [n; k_1,...,k_p]       (p >= 1),
/// ```
///
/// extended to p = 0 by omega^0 = 1 and to p < 0 by the conjugation rule
/// c'_{n,-p} = (-1)^n conj(c'_{n,p}).
pub fn c_prime(n: usize, p: i64) -> Result<LaurentPoly> {
    if p == 0 {
        return Ok(if n == 0 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        });
    }
    if p < 0 {
        return Ok(&sign(n) * &c_prime(n, -p)?.bar());
    }
    let n_i = n as i64;
    let mut sum = LaurentPoly::zero();
    for k in MultiIndex::compositions(n, p as usize) {
        let term = multi_qbinom(n_i, k.parts())?.mul_monomial(2 * phi(&k), &1.into());
        sum = &sum + &term;
    }
    Ok(&(&sign(n) * &a_pow(n_i * (n_i + 3) / 2)) * &sum)
}

/// Cap coefficient C_{n,p,k} = a^(p(n-k)) [p choose k] prod_{j=n-k+1}^n (1 - a^-2j),
/// with C_{n,p,k} = 0 for k < 0 or k > p.
pub fn big_c(n: usize, p: usize, k: i64) -> LaurentPoly {
    let (n_i, p_i) = (n as i64, p as i64);
    if k < 0 || k > p_i {
        return LaurentPoly::zero();
    }
    let mut out = &a_pow(p_i * (n_i - k)) * &qbinom(p_i, k);
    for j in (n_i - k + 1)..=n_i {
        out = &out * &(&LaurentPoly::one() - &a_pow(-j));
    }
    out
}

/// The diagonal cap coefficient
///
/// ```text
/// C_{n,n}^(p) = mu_n^(2-2p) a^(-n(n+1)/2) {n}!  sum_k a^phi(k) [n; k]
/// ```
///
/// (sum over compositions of n into p parts, p >= 1). Satisfies
/// c'_{n,p} = (-1)^n mu_n^(2p) ({n}!)^-1 C_{n,n}^(p), and for p = 1 collapses
/// to C_{n,n} = a^(-n(n+1)/2) {n}!.
pub fn big_c_nn(n: usize, p: usize) -> Result<LaurentPoly> {
    let n_i = n as i64;
    let mut sum = LaurentPoly::zero();
    for k in MultiIndex::compositions(n, p) {
        let term = multi_qbinom(n_i, k.parts())?.mul_monomial(2 * phi(&k), &1.into());
        sum = &sum + &term;
    }
    let unit = mu_pow(n, 2 - 2 * p as i64).mul_monomial(-2 * (n_i * (n_i + 1) / 2), &1.into());
    Ok(&(&unit * &brace_fact(n)) * &sum)
}

/// Admissibility of a color triple: a + b + c even and the triangle
/// inequalities |a-b| <= c <= a+b.
pub fn is_admissible(a: usize, b: usize, c: usize) -> bool {
    (a + b + c) % 2 == 0 && a.abs_diff(b) <= c && c <= a + b
}

/// Internal colors (i, j, k) = ((b+c-a)/2, (c+a-b)/2, (a+b-c)/2) of an
/// admissible triple.
pub fn internal_colors(a: usize, b: usize, c: usize) -> Result<(usize, usize, usize)> {
    if !is_admissible(a, b, c) {
        return Err(Error::NotAdmissible(a, b, c));
    }
    Ok(((b + c - a) / 2, (c + a - b) / 2, (a + b - c) / 2))
}

/// Trihedron coefficient of an admissible triple:
/// <a,b,c> = (-1)^(i+j+k) [i+j+k+1]! [i]! [j]! [k]! / ([a]! [b]! [c]!).
pub fn trihedron(a: usize, b: usize, c: usize) -> Result<LaurentPoly> {
    let (i, j, k) = internal_colors(a, b, c)?;
    let numerator = &(&int_fact(i + j + k + 1) * &int_fact(i)) * &(&int_fact(j) * &int_fact(k));
    let denominator = &(&int_fact(a) * &int_fact(b)) * &int_fact(c);
    Ok(&sign(i + j + k) * &numerator.exact_div(&denominator)?)
}

/// Squared half-twist coefficient delta(c; a, b)^2 = mu_c / (mu_a mu_b), an
/// exact monomial for admissible triples.
pub fn half_twist_sq(c: usize, a: usize, b: usize) -> Result<LaurentPoly> {
    if !is_admissible(a, b, c) {
        return Err(Error::NotAdmissible(a, b, c));
    }
    mu_pow(c, 1).exact_div(&(&mu_pow(a, 1) * &mu_pow(b, 1)))
}

/// The cap scalar ([k]!)^2 / [2k]! (0 <= k <= n), which is not a Laurent
/// polynomial for k >= 1 and is therefore returned as an exact fraction.
pub fn lemma1_coeff(n: usize, k: usize) -> Result<LaurentFraction> {
    if k > n {
        return Err(Error::IndexOutOfRange { n, k: k as i64 });
    }
    LaurentFraction::new(int_fact(k).pow(2), int_fact(2 * k))
}

/// Checks the defining property of omega^p against the test vector z^(2k):
///
/// ```text
/// sum_{n=0}^k c_{n,p} <R_n, z^2k>  ==  <t^p(z^2k)>
/// ```
///
/// with c_{n,p} = c'_{n,p}/{n}!. Both sides are cleared by {k}! so the
/// comparison stays inside Z[A^\pm]; the truncation at n = k is exact since
/// <R_n, z^2k> = 0 for n > k.
pub fn omega_pairing_check(p: i64, k: usize) -> Result<bool> {
    let test_vector = SkeinElement::z_power(2 * k);
    let k_fact = brace_fact(k);
    let mut lhs = LaurentPoly::zero();
    for n in 0..=k {
        let r_n = basis_element(BasisTag::HabiroR, n);
        let paired = pairing(&r_n, &test_vector)?;
        if paired.is_zero() {
            continue;
        }
        // {k}!/{n}! = {n+1}{n+2}...{k}
        let mut clearing = LaurentPoly::one();
        for j in (n as i64 + 1)..=(k as i64) {
            clearing = &clearing * &qbrace(j);
        }
        lhs = &lhs + &(&(&c_prime(n, p)? * &clearing) * &paired);
    }
    let rhs = &k_fact * &bracket(&twist(&test_vector, p)?)?;
    Ok(lhs == rhs)
}

/// The sequence c'_{n,p} for a fixed twist power p, extended lazily.
#[derive(Clone, Debug)]
pub struct OmegaCoefficients {
    p: i64,
    prime_coeffs: Vec<LaurentPoly>,
}

impl OmegaCoefficients {
    pub fn new(p: i64) -> Self {
        OmegaCoefficients {
            p,
            prime_coeffs: Vec::new(),
        }
    }

    pub fn twist_power(&self) -> i64 {
        self.p
    }

    /// Number of coefficients computed so far.
    pub fn computed(&self) -> usize {
        self.prime_coeffs.len()
    }

    /// c'_{n,p}, computing and caching every index up to n.
    pub fn prime_coeff(&mut self, n: usize) -> Result<&LaurentPoly> {
        while self.prime_coeffs.len() <= n {
            let next = c_prime(self.prime_coeffs.len(), self.p)?;
            self.prime_coeffs.push(next);
        }
        Ok(&self.prime_coeffs[n])
    }

    /// The raw coefficient c_{n,p} = c'_{n,p}/{n}! as an exact fraction.
    pub fn raw_coeff(&mut self, n: usize) -> Result<LaurentFraction> {
        let c = self.prime_coeff(n)?.clone();
        LaurentFraction::new(c, brace_fact(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{lambda, mu};
    use crate::skein::LambdaSumKind;

    #[test]
    fn alpha_at_zero() {
        // 2 + a^4 [3] - 1 = 1 + a^2 + a^4 + a^6
        let expect = LaurentPoly::from_terms([(0, 1), (4, 1), (8, 1), (12, 1)]);
        assert_eq!(alpha(0), expect);
    }

    #[test]
    fn beta_at_zero() {
        let head = &a_pow(5) + &(&a_pow(9) * &qint(3));
        let expect = &(&head * &qbrace(2)) * &qbrace(3);
        assert_eq!(beta(0), expect);
    }

    #[test]
    fn recursion_data_vanishes_below_zero() {
        for m in -4..0 {
            assert!(alpha(m).is_zero());
            assert!(beta(m).is_zero());
            assert!(gamma(m).is_zero());
        }
    }

    #[test]
    fn four_term_recursion_for_twisted_basis() {
        // script S_{n+1} = (z^2 - alpha_n) script S_n
        //   - beta_{n-1} script S_{n-1} - gamma_{n-2} script S_{n-2}
        let curly = |m: i64| -> SkeinElement {
            if m < 0 {
                SkeinElement::zero(BasisTag::PowerZ)
            } else {
                basis_element(BasisTag::TwistedCurlyS, m as usize)
            }
        };
        for n in 1..=8i64 {
            let lhs = curly(n + 1);
            let z2s = multiply(&SkeinElement::z_power(2), &curly(n)).unwrap();
            let rhs = z2s
                .sub(&curly(n).scale(&alpha(n)))
                .unwrap()
                .sub(&curly(n - 1).scale(&beta(n - 1)))
                .unwrap()
                .sub(&curly(n - 2).scale(&gamma(n - 2)))
                .unwrap();
            assert!(lhs.eq_element(&rhs).unwrap(), "n={n}");
        }
    }

    #[test]
    fn curly_s_bracket_small_values() {
        assert!(curly_s_bracket(0).unwrap().is_one());
        let expect = -(&(&a_pow(1).pow(2) * &qbrace(2)) * &qbrace(3))
            .exact_div(&qbrace(1))
            .unwrap();
        assert_eq!(curly_s_bracket(1).unwrap(), expect);
    }

    #[test]
    fn curly_s_bracket_matches_construction() {
        // independent oracle: build script S_n in the skein module and bracket it
        for n in 0..=6 {
            let constructed = bracket(&basis_element(BasisTag::TwistedCurlyS, n)).unwrap();
            assert_eq!(curly_s_bracket(n).unwrap(), constructed, "n={n}");
        }
    }

    #[test]
    fn curly_s_bracket_satisfies_recursion() {
        // <script S_{n+1}> = (lambda_0^2 - alpha_n) <script S_n>
        //   - beta_{n-1} <script S_{n-1}> - gamma_{n-2} <script S_{n-2}>
        let value = |m: i64| -> LaurentPoly {
            if m < 0 {
                LaurentPoly::zero()
            } else {
                curly_s_bracket(m as usize).unwrap()
            }
        };
        for n in 2..=10i64 {
            let lhs = value(n + 1);
            let rhs = &(&(&(&lambda(0).pow(2) - &alpha(n)) * &value(n))
                - &(&beta(n - 1) * &value(n - 1)))
                - &(&gamma(n - 2) * &value(n - 2));
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn c_np_unit_row() {
        for p in -5..=5 {
            assert!(c_np(0, p).unwrap().is_one(), "p={p}");
        }
    }

    #[test]
    fn c_np_closed_forms_at_p_one() {
        for n in 0..=12usize {
            let n_i = n as i64;
            let mut plus = a_pow(n_i * (n_i + 3) / 2);
            if n % 2 == 1 {
                plus = -plus;
            }
            assert_eq!(c_np(n, 1).unwrap(), plus, "n={n} p=1");
            assert_eq!(c_np(n, -1).unwrap(), a_pow(-n_i * (n_i + 3) / 2), "n={n} p=-1");
        }
    }

    #[test]
    fn phi_special_shapes() {
        let single = MultiIndex::new(vec![7]).unwrap();
        assert_eq!(phi(&single), 0);
        for n in 0..=6i64 {
            let front_empty = MultiIndex::new(vec![0, n]).unwrap();
            assert_eq!(phi(&front_empty), 2 * n * n + 2 * n);
            let back_empty = MultiIndex::new(vec![n, 0]).unwrap();
            assert_eq!(phi(&back_empty), 0);
        }
    }

    #[test]
    fn compositions_count_and_order() {
        let comps = MultiIndex::compositions(3, 2);
        let parts: Vec<&[i64]> = comps.iter().map(|k| k.parts()).collect();
        assert_eq!(parts, vec![&[0, 3][..], &[1, 2], &[2, 1], &[3, 0]]);
        assert_eq!(MultiIndex::compositions(8, 4).len(), 165);
    }

    #[test]
    fn c_prime_single_twist_closed_form() {
        for n in 0..=12usize {
            let n_i = n as i64;
            let expect = &sign(n) * &a_pow(n_i * (n_i + 3) / 2);
            assert_eq!(c_prime(n, 1).unwrap(), expect, "n={n}");
        }
    }

    #[test]
    fn c_prime_double_twist_explicit_sum() {
        // c'_{n,2} = (-1)^n a^((5n^2+7n)/2) sum_k a^(k^2-2k-3nk) [n choose k]
        for n in 0..=10usize {
            let n_i = n as i64;
            let mut sum = LaurentPoly::zero();
            for k in 0..=n_i {
                let e = k * k - 2 * k - 3 * n_i * k;
                sum = &sum + &qbinom(n_i, k).mul_monomial(2 * e, &1.into());
            }
            let expect = &(&sign(n) * &a_pow(n_i * (5 * n_i + 7) / 2)) * &sum;
            assert_eq!(c_prime(n, 2).unwrap(), expect, "n={n}");
        }
    }

    #[test]
    fn dual_formulas_agree() {
        for n in 0..=8 {
            for p in -4..=4i64 {
                assert_eq!(
                    c_prime(n, p).unwrap(),
                    c_np(n, p).unwrap(),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn conjugation_rule() {
        for n in 0..=8usize {
            for p in 1..=4 {
                let lhs = c_prime(n, -p).unwrap();
                let rhs = &sign(n) * &c_prime(n, p).unwrap().bar();
                assert_eq!(lhs, rhs, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn big_c_small_values() {
        assert_eq!(big_c(1, 1, 0), a_pow(1));
        assert_eq!(big_c(1, 1, 1), &LaurentPoly::one() - &a_pow(-1));
        for n in 0..=6 {
            assert!(big_c(n, 0, 0).is_one());
        }
        assert!(big_c(3, 2, -1).is_zero());
        assert!(big_c(3, 2, 3).is_zero());
    }

    #[test]
    fn big_c_recursion() {
        // C_{n,p+1,k} = a^(n-2k) C_{n,p,k} + a^(n-2k+1)(1 - a^(-2(n-k+1))) C_{n,p,k-1}
        for n in 0..=6usize {
            for p in 0..=6usize {
                for k in 0..=(p as i64 + 1) {
                    let n_i = n as i64;
                    let lhs = big_c(n, p + 1, k);
                    let stay = &a_pow(n_i - 2 * k) * &big_c(n, p, k);
                    let carry = &(&a_pow(n_i - 2 * k + 1)
                        * &(&LaurentPoly::one() - &a_pow(-(n_i - k + 1))))
                        * &big_c(n, p, k - 1);
                    assert_eq!(lhs, &stay + &carry, "n={n} p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn big_c_divisibility() {
        // C_{n,p,k} is divisible by prod_{j=n-k+1}^n (1 - a^2j) up to a unit;
        // for k > n both sides degenerate (C vanishes, the product hits 1-a^0)
        for n in 0..=10usize {
            for p in 0..=4usize {
                for k in 0..=(p.min(n) as i64) {
                    let mut divisor = LaurentPoly::one();
                    for j in (n as i64 - k + 1)..=(n as i64) {
                        divisor = &divisor * &(&LaurentPoly::one() - &a_pow(j));
                    }
                    assert!(
                        big_c(n, p, k).exact_div(&divisor).is_ok(),
                        "n={n} p={p} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn big_c_nn_single_twist() {
        // C_{n,n}^(1) = a^(-n(n+1)/2) {n}!
        for n in 0..=10usize {
            let n_i = n as i64;
            let expect = brace_fact(n).mul_monomial(-2 * (n_i * (n_i + 1) / 2), &1.into());
            assert_eq!(big_c_nn(n, 1).unwrap(), expect, "n={n}");
        }
        for p in 1..=4 {
            assert!(big_c_nn(0, p).unwrap().is_one());
        }
    }

    #[test]
    fn big_c_nn_reproduces_c_prime() {
        // c'_{n,p} = (-1)^n mu_n^(2p) ({n}!)^-1 C_{n,n}^(p)
        for n in 0..=8usize {
            for p in 1..=3usize {
                let quotient = big_c_nn(n, p).unwrap().exact_div(&brace_fact(n)).unwrap();
                let lhs = &(&sign(n) * &mu_pow(n, 2 * p as i64)) * &quotient;
                assert_eq!(lhs, c_prime(n, p as i64).unwrap(), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn admissibility_and_internal_colors() {
        assert!(!is_admissible(1, 1, 1));
        assert!(is_admissible(3, 4, 5));
        assert!(!is_admissible(1, 1, 4));
        assert_eq!(internal_colors(3, 4, 5).unwrap(), (3, 2, 1));
        assert!(matches!(
            internal_colors(1, 1, 1),
            Err(Error::NotAdmissible(1, 1, 1))
        ));
    }

    #[test]
    fn trihedron_collapses_to_loop_value() {
        // <n, n, 2n> = <e_{2n}> = [2n+1]
        for n in 0..=8usize {
            let lhs = trihedron(n, n, 2 * n).unwrap();
            assert_eq!(lhs, qint(2 * n as i64 + 1), "n={n}");
            let loop_value = bracket(&basis_element(BasisTag::ChebyshevE, 2 * n)).unwrap();
            assert_eq!(lhs, loop_value, "n={n}");
        }
    }

    #[test]
    fn half_twist_squared() {
        for n in 1..=6usize {
            for k in 0..=n {
                let lhs = half_twist_sq(2 * k, n, n).unwrap();
                let rhs = mu_pow(2 * k, 1).exact_div(&mu(n).pow(2)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(half_twist_sq(1, 1, 1).is_err());
    }

    #[test]
    fn lemma1_cap_scalar() {
        for n in 0..=8usize {
            assert!(lemma1_coeff(n, 0).unwrap().is_one());
            // ([n]!)^2 [2n choose n] = [2n]!  (cleared form of the identity)
            let frac = lemma1_coeff(n, n).unwrap();
            assert!(frac.mul_poly(&qbinom(2 * n as i64, n as i64)).is_one());
            assert_eq!(
                &frac.numerator * &qbinom(2 * n as i64, n as i64),
                frac.denominator
            );
        }
        assert!(matches!(
            lemma1_coeff(2, 3),
            Err(Error::IndexOutOfRange { n: 2, k: 3 })
        ));
    }

    #[test]
    fn omega_pairing_property() {
        for k in 0..=8 {
            assert!(omega_pairing_check(1, k).unwrap(), "p=1 k={k}");
            assert!(omega_pairing_check(-1, k).unwrap(), "p=-1 k={k}");
        }
        for k in 0..=4 {
            assert!(omega_pairing_check(0, k).unwrap(), "p=0 k={k}");
        }
    }

    #[test]
    fn omega_is_a_unit() {
        // The truncated product of omega and omega^-1 collapses to R'_0.
        // Work with the {6}!-cleared truncations X = sum c'_{n,1}({6}!/{n}!) R_n:
        // the R-expansion of X X~ must equal ({6}!)^2 R_0 up to index 6.
        let cap = 6usize;
        let clearing = |n: usize| -> LaurentPoly {
            let mut out = LaurentPoly::one();
            for j in (n as i64 + 1)..=(cap as i64) {
                out = &out * &qbrace(j);
            }
            out
        };
        let mut x = SkeinElement::zero(BasisTag::PowerZ);
        let mut y = SkeinElement::zero(BasisTag::PowerZ);
        for n in 0..=cap {
            let r_n = basis_element(BasisTag::HabiroR, n);
            let weight_x = &c_prime(n, 1).unwrap() * &clearing(n);
            let weight_y = &c_prime(n, -1).unwrap() * &clearing(n);
            x = x.add(&r_n.scale(&weight_x)).unwrap();
            y = y.add(&r_n.scale(&weight_y)).unwrap();
        }
        let product = multiply(&x, &y)
            .unwrap()
            .convert(BasisTag::HabiroR)
            .unwrap();
        let expected_unit = brace_fact(cap).pow(2);
        assert_eq!(product.coeff(0), expected_unit);
        for n in 1..=cap {
            assert!(product.coeff(n).is_zero(), "n={n}");
        }
    }

    #[test]
    fn lazy_coefficient_sequence() {
        let mut seq = OmegaCoefficients::new(2);
        assert!(seq.prime_coeff(0).unwrap().is_one());
        assert_eq!(seq.computed(), 1);
        let c3 = seq.prime_coeff(3).unwrap().clone();
        assert_eq!(seq.computed(), 4);
        assert_eq!(c3, c_prime(3, 2).unwrap());
        let raw = seq.raw_coeff(3).unwrap();
        assert_eq!(raw.numerator, c3);
        assert_eq!(raw.denominator, brace_fact(3));
    }

    #[test]
    fn subleading_sums_feed_the_recursion() {
        // alpha_n is exactly 1 - mu_2(1 - lambda_0^2) only at n = 0; the
        // general consistency with the operator expansion is covered by the
        // four-term test, so here we only pin the x/y sums' first values.
        assert_eq!(
            crate::skein::lambda_power_sum(2, LambdaSumKind::EvenIndex),
            &lambda(0) + &lambda(2)
        );
    }
}
