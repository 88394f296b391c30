//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored as its coordinate vector in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}`, reduced modulo the `N`-th cyclotomic polynomial.
//! Elements of different fields combine by embedding both into `Q(ζ_L)` with
//! `L = lcm(N₁, N₂)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, LazyLock, RwLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};
use smallvec::{smallvec, SmallVec};

pub(crate) fn q_add(a: &Rational64, b: &Rational64) -> Rational64 {
    a.checked_add(b)
        .expect("exact rational arithmetic overflowed i64")
}

pub(crate) fn q_sub(a: &Rational64, b: &Rational64) -> Rational64 {
    a.checked_sub(b)
        .expect("exact rational arithmetic overflowed i64")
}

pub(crate) fn q_mul(a: &Rational64, b: &Rational64) -> Rational64 {
    a.checked_mul(b)
        .expect("exact rational arithmetic overflowed i64")
}

/// Reduction data for one cyclotomic field.
#[derive(Debug)]
struct CycloField {
    phi: usize,
    /// `powers[k]` is `ζ^k` in the power basis, for `0 <= k < N`.
    powers: Vec<Vec<i64>>,
}

static FIELDS: LazyLock<RwLock<HashMap<u32, Arc<CycloField>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "cyclotomic order must be positive");
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &div);
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    // den is monic
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn field(order: u32) -> Arc<CycloField> {
    if let Some(f) = FIELDS.read().unwrap().get(&order) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(order);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce by the monic polynomial
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1];
        }
        if top != 0 {
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
        }
        cur = next;
    }
    let f = Arc::new(CycloField { phi, powers });
    FIELDS.write().unwrap().insert(order, f.clone());
    f
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: SmallVec<[Rational64; 2]>,
}

impl CycScalar {
    pub fn zero() -> Self {
        Self {
            order: 1,
            coeffs: smallvec![Rational64::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational64::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational64::from_integer(v))
    }

    pub fn from_rational(q: Rational64) -> Self {
        Self {
            order: 1,
            coeffs: smallvec![q],
        }
    }

    /// `ζ_order^exponent`.
    pub fn root_of_unity(order: u32, exponent: i64) -> Self {
        assert!(order > 0);
        let k = exponent.rem_euclid(order as i64) as usize;
        if order <= 2 {
            let v = if order == 2 && k == 1 { -1 } else { 1 };
            return Self::from_int(v);
        }
        let f = field(order);
        let coeffs = f.powers[k]
            .iter()
            .map(|&c| Rational64::from_integer(c))
            .collect();
        Self { order, coeffs }
    }

    /// Builds `Σ_k terms[k].0 · ζ_order^{terms[k].1}` (powers may be any integers).
    pub fn from_terms(order: u32, terms: &[(Rational64, i64)]) -> Self {
        let mut acc = Self::zero_in(order);
        for (q, p) in terms {
            acc = acc + Self::root_of_unity(order, *p).scale(q);
        }
        acc
    }

    fn zero_in(order: u32) -> Self {
        if order <= 2 {
            return Self::zero();
        }
        let phi = field(order).phi;
        Self {
            order,
            coeffs: smallvec![Rational64::zero(); phi],
        }
    }

    /// The cyclotomic order `N` of the field this element is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn scale(&self, q: &Rational64) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| q_mul(c, q)).collect(),
        }
    }

    /// Re-expresses the element in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn embed(&self, target: u32) -> Self {
        if target == self.order || (target <= 2 && self.order <= 2) {
            return Self {
                order: target.max(1),
                coeffs: self.coeffs.clone(),
            }
            .normalize_small();
        }
        assert!(
            target % self.order == 0,
            "cannot embed Q(ζ_{}) into Q(ζ_{})",
            self.order,
            target
        );
        let step = (target / self.order) as usize;
        let f = field(target);
        let mut out: SmallVec<[Rational64; 2]> = smallvec![Rational64::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rep = &f.powers[(k * step) % target as usize];
            for (o, &r) in out.iter_mut().zip(rep) {
                if r != 0 {
                    *o = q_add(o, &q_mul(c, &Rational64::from_integer(r)));
                }
            }
        }
        Self {
            order: target,
            coeffs: out,
        }
    }

    fn normalize_small(mut self) -> Self {
        if self.order == 2 {
            self.order = 1;
        }
        self
    }

    /// Rewrites a rational element into order 1, leaving others unchanged.
    fn simplified(self) -> Self {
        if self.order > 2 && self.is_rational() {
            return Self::from_rational(self.coeffs[0]);
        }
        self
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let l = (a.order as u64).lcm(&(b.order as u64)) as u32;
        (a.embed(l), b.embed(l))
    }

    /// Complex conjugate, i.e. `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let f = field(self.order);
        let n = self.order as usize;
        let mut out: SmallVec<[Rational64; 2]> = smallvec![Rational64::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rep = &f.powers[(n - k) % n];
            for (o, &r) in out.iter_mut().zip(rep) {
                if r != 0 {
                    *o = q_add(o, &q_mul(c, &Rational64::from_integer(r)));
                }
            }
        }
        Self {
            order: self.order,
            coeffs: out,
        }
    }

    /// Value under the embedding `ζ_N ↦ e^{2πi/N}`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let v = *c.numer() as f64 / *c.denom() as f64;
                Complex64::from_polar(v, 2.0 * std::f64::consts::PI * k as f64 / n)
            })
            .sum()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order <= 2 || self.is_rational() {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        // Solve (multiplication-by-self) x = 1 over Q.
        let f = field(self.order);
        let phi = f.phi;
        let mut m = vec![vec![Rational64::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul_basis_power(j, &f);
            for i in 0..phi {
                m[i][j] = col[i];
            }
        }
        m[0][phi] = Rational64::one();
        let sol = solve_dense_rational(m)?;
        Some(
            Self {
                order: self.order,
                coeffs: sol.into_iter().collect(),
            }
            .simplified(),
        )
    }

    fn mul_basis_power(&self, j: usize, f: &CycloField) -> Vec<Rational64> {
        let n = self.order as usize;
        let mut out = vec![Rational64::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let rep = &f.powers[(k + j) % n];
            for (o, &r) in out.iter_mut().zip(rep) {
                if r != 0 {
                    *o = q_add(o, &q_mul(c, &Rational64::from_integer(r)));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Nonzero `(coefficient, power)` terms of the canonical representation.
    pub fn terms(&self) -> Vec<(Rational64, usize)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (*c, k))
            .collect()
    }
}

fn solve_dense_rational(mut m: Vec<Vec<Rational64>>) -> Option<Vec<Rational64>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v = q_mul(v, &inv);
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=n {
                    let t = q_mul(&f, &m[col][c]);
                    m[r][c] = q_sub(&m[r][c], &t);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n]).collect())
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs[0] == other.coeffs[0];
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if self.order == rhs.order {
            return CycScalar {
                order: self.order,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| q_add(a, b))
                    .collect(),
            };
        }
        if rhs.is_rational() {
            let mut out = self.clone();
            out.coeffs[0] = q_add(&out.coeffs[0], &rhs.coeffs[0]);
            return out;
        }
        if self.is_rational() {
            let mut out = rhs.clone();
            out.coeffs[0] = q_add(&out.coeffs[0], &self.coeffs[0]);
            return out;
        }
        let (a, b) = CycScalar::common(self, rhs);
        (&a + &b).simplified()
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a = q_add(a, b);
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if self.order != rhs.order {
            let (a, b) = CycScalar::common(self, rhs);
            return (&a * &b).simplified();
        }
        let f = field(self.order);
        let n = self.order as usize;
        let mut out: SmallVec<[Rational64; 2]> = smallvec![Rational64::zero(); f.phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = q_mul(a, b);
                let rep = &f.powers[(i + j) % n];
                for (o, &r) in out.iter_mut().zip(rep) {
                    if r != 0 {
                        *o = q_add(o, &q_mul(&ab, &Rational64::from_integer(r)));
                    }
                }
            }
        }
        CycScalar {
            order: self.order,
            coeffs: out,
        }
        .simplified()
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl From<i64> for CycScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational64> for CycScalar {
    fn from(q: Rational64) -> Self {
        Self::from_rational(q)
    }
}

/// Formats as space-separated `<rational>p<power>` terms, `0p0` for zero.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0p0");
        }
        for (i, (c, p)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}p{p}")?;
        }
        Ok(())
    }
}

/// Parses a `<rational>p<power>` token.
pub fn parse_term(tok: &str) -> Option<(Rational64, i64)> {
    let (q, p) = tok.split_once('p')?;
    let q = if let Some((n, d)) = q.split_once('/') {
        let d: i64 = d.parse().ok()?;
        if d == 0 {
            return None;
        }
        Rational64::new(n.parse().ok()?, d)
    } else {
        Rational64::from_integer(q.parse().ok()?)
    };
    Some((q, p.parse().ok()?))
}

/// Smallest order `M` dividing `bound` such that the element lies in `Q(ζ_M)`,
/// or its present order if none is smaller.
pub fn minimal_order(x: &CycScalar) -> u32 {
    let n = x.order();
    if x.is_rational() {
        return 1;
    }
    let mut divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    divisors.sort_unstable();
    for d in divisors {
        if d == n {
            break;
        }
        // x lies in Q(ζ_d) iff it is fixed by every automorphism fixing Q(ζ_d).
        let fixed = (1..=n as u64)
            .filter(|k| k.gcd(&(n as u64)) == 1 && k % d as u64 == 1 % d as u64)
            .all(|k| galois_act(x, k as u32) == *x);
        if fixed {
            return d;
        }
    }
    n
}

/// Applies the automorphism `ζ ↦ ζ^k` (`k` coprime to the order).
pub fn galois_act(x: &CycScalar, k: u32) -> CycScalar {
    let n = x.order();
    if n <= 2 {
        return x.clone();
    }
    let terms: Vec<(Rational64, i64)> = x
        .terms()
        .into_iter()
        .map(|(c, p)| (c, (p as i64 * k as i64) % n as i64))
        .collect();
    CycScalar::from_terms(n, &terms)
}

/// Absolute value helper used by numeric checks.
pub fn rational_abs(q: &Rational64) -> Rational64 {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12).len() - 1, euler_phi(12));
    }

    #[test]
    fn roots_of_unity_multiply() {
        let z = CycScalar::root_of_unity(5, 1);
        assert_eq!(z.pow(5), CycScalar::one());
        let sum = (0..5).fold(CycScalar::zero(), |acc, k| {
            acc + CycScalar::root_of_unity(5, k)
        });
        assert!(sum.is_zero());
        assert_eq!(CycScalar::root_of_unity(4, 2), CycScalar::from_int(-1));
        assert_eq!(CycScalar::root_of_unity(6, 3), CycScalar::from_int(-1));
    }

    #[test]
    fn embedding_between_fields() {
        let i4 = CycScalar::root_of_unity(4, 1);
        let i12 = CycScalar::root_of_unity(12, 3);
        assert_eq!(i4, i12);
        let w3 = CycScalar::root_of_unity(3, 1);
        let prod = &i4 * &w3;
        assert_eq!(prod, CycScalar::root_of_unity(12, 7));
    }

    #[test]
    fn inverse_of_non_unit_element() {
        let x = CycScalar::from_int(2) + CycScalar::root_of_unity(7, 2);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(CycScalar::zero().inv().is_none());
    }

    #[test]
    fn conjugation_matches_complex() {
        let x = CycScalar::from_terms(
            8,
            &[(Rational64::new(1, 3), 1), (Rational64::from_integer(2), 3)],
        );
        let c = x.conj().to_complex();
        let d = x.to_complex().conj();
        assert!((c - d).norm() < 1e-12);
    }

    #[test]
    fn display_and_parse() {
        let x = CycScalar::from_terms(
            3,
            &[
                (Rational64::new(-1, 2), 0),
                (Rational64::from_integer(3), 1),
            ],
        );
        assert_eq!(x.to_string(), "-1/2p0 3p1");
        assert_eq!(parse_term("-1/2p0"), Some((Rational64::new(-1, 2), 0)));
        assert_eq!(CycScalar::zero().to_string(), "0p0");
    }

    #[test]
    fn minimal_order_detects_subfield() {
        let i = CycScalar::root_of_unity(4, 1).embed(12);
        assert_eq!(i.order(), 12);
        assert_eq!(minimal_order(&i), 4);
        assert_eq!(minimal_order(&CycScalar::from_int(3).embed(6)), 1);
    }

    proptest! {
        #[test]
        fn field_axioms_hold(n in 1u32..13, a in -5i64..5, b in -5i64..5, p in 0i64..12, q in 0i64..12) {
            let x = CycScalar::from_terms(n, &[(Rational64::from_integer(a), p), (Rational64::one(), q)]);
            let y = CycScalar::from_terms(n, &[(Rational64::from_integer(b), q)]);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) * &x, &(&x * &x) + &(&y * &x));
            prop_assert!(((&x * &y).to_complex() - x.to_complex() * y.to_complex()).norm() < 1e-9);
            if let Some(xi) = x.inv() {
                prop_assert!((&x * &xi).is_one());
            }
        }
    }
}
