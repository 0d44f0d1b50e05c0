//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! An element is a coefficient vector in Q[x]/(Phi_N) with x standing for zeta_N.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Cached data for one conductor.
struct Cyclo {
    n: u64,
    phi: usize,
    /// Monic Phi_N as integer coefficients, low degree first.
    poly: Vec<BigInt>,
    /// x^k mod Phi_N for 0 <= k < N, stored sparsely.
    powers: Vec<Vec<(usize, Rational)>>,
}

fn cyclo_cache() -> &'static RwLock<HashMap<u64, Arc<Cyclo>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Cyclo>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn cyclo(n: u64) -> Arc<Cyclo> {
    if let Some(c) = cyclo_cache().read().unwrap().get(&n) {
        return c.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur: Vec<Rational> = vec![Rational::zero(); phi];
    cur[0] = Rational::one();
    for _ in 0..n {
        powers.push(
            cur.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        );
        // multiply cur by x and reduce: x^phi = -sum poly[i] x^i
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = Rational::zero();
        if !top.is_zero() {
            for (i, ci) in cur.iter_mut().enumerate() {
                *ci -= &top * Rational::from_integer(poly[i].clone());
            }
        }
    }
    let c = Arc::new(Cyclo {
        n,
        phi,
        poly,
        powers,
    });
    cyclo_cache().write().unwrap().insert(n, c.clone());
    c
}

fn poly_divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

static PHI_CACHE: OnceLock<RwLock<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();

/// The n-th cyclotomic polynomial, integer coefficients low degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let cache = PHI_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = poly_divide_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    cache.write().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of Q(zeta_N).
#[derive(Clone)]
pub struct CycScalar {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    /// Builds an element from raw coefficients; the length must be phi(conductor).
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidParameter("conductor must be positive".into()));
        }
        if coeffs.len() as u64 != euler_phi(conductor) {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients for conductor {}",
                euler_phi(conductor),
                conductor
            )));
        }
        Ok(CycScalar { conductor, coeffs })
    }

    /// zeta_n^k.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "root_of_unity needs n >= 1");
        let c = cyclo(n);
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![Rational::zero(); c.phi];
        for (i, v) in &c.powers[e] {
            coeffs[*i] = v.clone();
        }
        CycScalar {
            conductor: n,
            coeffs,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in Q(zeta_m); m must be a multiple of the conductor.
    pub fn promote(&self, m: u64) -> Self {
        assert!(
            m % self.conductor == 0,
            "promotion target must be a multiple of the conductor"
        );
        if m == self.conductor {
            return self.clone();
        }
        let c = cyclo(m);
        let factor = (m / self.conductor) as usize;
        let mut coeffs = vec![Rational::zero(); c.phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, v) in &c.powers[(i * factor) % m as usize] {
                coeffs[*j] += a * v;
            }
        }
        CycScalar {
            conductor: m,
            coeffs,
        }
    }

    /// Rewrites the element over the smallest conductor dividing the current one
    /// that contains it.
    pub fn minimize(&self) -> Self {
        let n = self.conductor;
        let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        divisors.sort();
        for d in divisors {
            if d == n {
                break;
            }
            if let Some(x) = self.demote(d) {
                return x;
            }
        }
        self.clone()
    }

    /// Recognizes the element inside Q(zeta_d) for d dividing the conductor.
    pub fn demote(&self, d: u64) -> Option<Self> {
        if self.conductor % d != 0 {
            return None;
        }
        if d == self.conductor {
            return Some(self.clone());
        }
        // Solve for coefficients in Q(zeta_d) whose promotion equals self.
        let phi_d = euler_phi(d) as usize;
        let basis: Vec<CycScalar> = (0..phi_d)
            .map(|i| CycScalar::root_of_unity(d, i as i64).promote(self.conductor))
            .collect();
        let cols: Vec<Vec<Rational>> = basis.into_iter().map(|b| b.coeffs).collect();
        let sol = solve_rational(&cols, &self.coeffs)?;
        Some(CycScalar {
            conductor: d,
            coeffs: sol,
        })
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.promote(m), b.promote(m))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor <= 2 {
            return Ok(CycScalar::from_rational(self.coeffs[0].recip()));
        }
        let c = cyclo(self.conductor);
        let modulus: Vec<Rational> = c
            .poly
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let a = trim(self.coeffs.clone());
        let s = poly_inverse_mod(&a, &modulus);
        let mut coeffs = vec![Rational::zero(); c.phi];
        for (i, v) in s.into_iter().enumerate() {
            coeffs[i] = v;
        }
        Ok(CycScalar {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Smallest n with a^n = 1, if any.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = 2u64.lcm(&self.conductor);
        let mut divisors: Vec<u64> = (1..=bound).filter(|d| bound % d == 0).collect();
        divisors.sort();
        divisors
            .into_iter()
            .find(|&d| self.pow(d as i64).map(|p| p.is_one()).unwrap_or(false))
    }

    /// [i]_q = 1 + q + ... + q^{i-1}.
    pub fn q_integer(q: &CycScalar, i: u64) -> CycScalar {
        let mut acc = CycScalar::zero();
        let mut p = CycScalar::one();
        for _ in 0..i {
            acc = &acc + &p;
            p = &p * q;
        }
        acc
    }

    /// A square root of a rational number inside a cyclotomic field.
    ///
    /// Built from quadratic Gauss sums, so the conductor grows with the
    /// squarefree part of r.
    pub fn sqrt_rational(r: &Rational) -> CycScalar {
        if r.is_zero() {
            return CycScalar::zero();
        }
        let negative = r.is_negative();
        let r = r.abs();
        // r = (num/den) = num*den / den^2
        let m = r.numer() * r.denom();
        let mut outside = BigInt::one();
        let mut squarefree = BigInt::one();
        let mut rest = m;
        let mut p = BigInt::from(2);
        while &p * &p <= rest {
            let mut e = 0;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            for _ in 0..e / 2 {
                outside *= &p;
            }
            if e % 2 == 1 {
                squarefree *= &p;
            }
            p += 1;
        }
        if rest > BigInt::one() {
            squarefree *= &rest;
        }
        let mut root = CycScalar::from_rational(Rational::new(outside, r.denom().clone()));
        let mut sf = squarefree;
        let mut p = 2u64;
        while !sf.is_one() {
            let pb = BigInt::from(p);
            if (&sf % &pb).is_zero() {
                sf /= &pb;
                root = &root * &sqrt_prime(p);
            }
            p += 1;
        }
        if negative {
            root = &root * &CycScalar::root_of_unity(4, 1);
        }
        root
    }
}

fn sqrt_prime(p: u64) -> CycScalar {
    if p == 2 {
        return &CycScalar::root_of_unity(8, 1) + &CycScalar::root_of_unity(8, 7);
    }
    // Gauss sum g = sum_{a} (a/p) zeta_p^a satisfies g^2 = (-1/p) p.
    let mut g = CycScalar::zero();
    for a in 1..p {
        let leg = legendre(a, p);
        let z = CycScalar::root_of_unity(p, a as i64);
        g = if leg == 1 { &g + &z } else { &g - &z };
    }
    if p % 4 == 1 {
        g
    } else {
        -(&CycScalar::root_of_unity(4, 1) * &g)
    }
}

fn legendre(a: u64, p: u64) -> i32 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_degree(v: &[Rational]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let mut q = vec![Rational::zero(); a.len().max(1)];
    let lead = b[db].clone();
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] / &lead;
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
    }
    (trim(q), trim(r))
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

/// Inverse of a modulo m via the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
    while poly_degree(&r1).map(|d| d > 0).unwrap_or(false) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r1 is a nonzero constant since Phi_N is irreducible.
    let c = r1[0].clone();
    let s = s1.into_iter().map(|x| x / &c).collect::<Vec<_>>();
    let (_, rem) = poly_divmod(&s, m);
    rem
}

/// Solves sum_j x_j cols[j] = b over Q when the solution exists.
fn solve_rational(cols: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let nrows = b.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=ncols {
                    let t = &f * &m[row][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Some(x)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycScalar::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl Default for CycScalar {
    fn default() -> Self {
        CycScalar::zero()
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        CycScalar::from_int(n)
    }
}

impl From<Rational> for CycScalar {
    fn from(r: Rational) -> Self {
        CycScalar::from_rational(r)
    }
}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        if self.conductor == rhs.conductor {
            return CycScalar {
                conductor: self.conductor,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| a + b)
                    .collect(),
            };
        }
        let (a, b) = CycScalar::common(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            conductor: self.conductor,
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
        if self.conductor != rhs.conductor {
            let (a, b) = CycScalar::common(self, rhs);
            return &a * &b;
        }
        let n = self.conductor;
        if n <= 2 {
            return CycScalar {
                conductor: n,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        // Fast paths for rational factors.
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        let c = cyclo(n);
        let mut prod = vec![Rational::zero(); 2 * c.phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut coeffs: Vec<Rational> = prod[..c.phi].to_vec();
        for (k, v) in prod.iter().enumerate().skip(c.phi) {
            if v.is_zero() {
                continue;
            }
            for (j, p) in &c.powers[k % c.n as usize] {
                coeffs[*j] += v * p;
            }
        }
        CycScalar {
            conductor: n,
            coeffs,
        }
    }
}

impl CycScalar {
    pub fn scale(&self, r: &Rational) -> CycScalar {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<'a> Div<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    /// Panics on division by zero; use `inv` for a fallible version.
    fn div(self, rhs: &CycScalar) -> CycScalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl CycScalar {
    /// True when the printed form is a single signed term, so it can be used
    /// as a coefficient without parentheses.
    pub fn is_simple_term(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
    }

    pub fn is_negative_term(&self) -> bool {
        self.is_simple_term()
            && self
                .coeffs
                .iter()
                .find(|c| !c.is_zero())
                .map(|c| c.is_negative())
                .unwrap_or(false)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => format!("zeta{}", self.conductor),
                _ => format!("zeta{}^{}", self.conductor, i),
            };
            if var.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", var)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for CycScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::expr::parse_scalar(s)
    }
}

impl CycScalar {
    /// Small integer value, if this is one.
    pub fn to_i64(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if r.is_integer() {
            r.numer().to_i64()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycScalar {
        CycScalar::root_of_unity(n, k)
    }

    #[test]
    fn basic_examples() {
        assert_eq!(
            &CycScalar::frac(1, 2) + &CycScalar::frac(1, 3),
            CycScalar::frac(5, 6)
        );
        assert_eq!(&z(4, 1) + &z(4, 1), &CycScalar::from_int(2) * &z(4, 1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycScalar::from_int(-1));
        assert_eq!(&z(4, 1) * &z(4, 1), CycScalar::from_int(-1));
        assert_eq!(&z(6, 1) * &z(6, -1), CycScalar::one());
        let one = CycScalar::one();
        assert_eq!(
            &(&one + &z(8, 1)) * &(&one - &z(8, 1)),
            &one - &z(8, 2)
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(CycScalar::from_int(2).inv().unwrap(), CycScalar::frac(1, 2));
        for m in 1..12 {
            assert_eq!(z(m, 1).inv().unwrap(), z(m, m as i64 - 1));
        }
        let a = &CycScalar::one() + &z(4, 1);
        let expect = (&CycScalar::one() - &z(4, 1)).scale(&rat(1, 2));
        assert_eq!(a.inv().unwrap(), expect);
        assert_eq!(CycScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn roots_and_orders() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(2, 1), CycScalar::from_int(-1));
        for n in 1..=24 {
            assert_eq!(z(n, 1).multiplicative_order(), Some(n));
        }
        assert_eq!(z(6, 2).multiplicative_order(), Some(3));
        assert_eq!(CycScalar::from_int(2).multiplicative_order(), None);
        assert_eq!(CycScalar::zero().multiplicative_order(), None);
        assert_eq!(z(12, 8).multiplicative_order(), Some(3));
    }

    #[test]
    fn q_integers() {
        let q = z(5, 2);
        assert!(CycScalar::q_integer(&q, 0).is_zero());
        assert_eq!(
            CycScalar::q_integer(&CycScalar::one(), 5),
            CycScalar::from_int(5)
        );
        assert!(CycScalar::q_integer(&z(3, 1), 3).is_zero());
    }

    #[test]
    fn cyclotomic_product_identity() {
        for n in 1..=24u64 {
            let mut prod = vec![BigInt::one()];
            for d in 1..=n {
                if n % d == 0 {
                    let p = cyclotomic_polynomial(d);
                    let mut out = vec![BigInt::zero(); prod.len() + p.len() - 1];
                    for (i, a) in prod.iter().enumerate() {
                        for (j, b) in p.iter().enumerate() {
                            out[i + j] += a * b;
                        }
                    }
                    prod = out;
                }
            }
            let mut expect = vec![BigInt::zero(); n as usize + 1];
            expect[0] = -BigInt::one();
            expect[n as usize] = BigInt::one();
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    #[test]
    fn promotion_round_trip() {
        for n in 1..=12u64 {
            let x = &z(n, 1) + &z(n, 2).scale(&rat(3, 7));
            let up = x.promote(2 * n);
            assert_eq!(up.conductor(), 2 * n);
            let down = up.demote(n).unwrap();
            assert_eq!(down.coeffs(), x.coeffs());
        }
        assert_eq!(z(8, 2).minimize().conductor(), 4);
    }

    #[test]
    fn square_roots() {
        for (n, d) in [(2, 1), (3, 1), (5, 1), (7, 1), (-1, 1), (-3, 4), (12, 5), (9, 4)] {
            let r = rat(n, d);
            let s = CycScalar::sqrt_rational(&r);
            assert_eq!(&s * &s, CycScalar::from_rational(r), "sqrt({n}/{d})");
        }
    }

    #[test]
    fn display_and_parse() {
        let x = &z(8, 3) - &z(8, 1).scale(&rat(1, 2));
        assert_eq!(x.to_string(), "zeta8^3 - 1/2*zeta8");
        assert_eq!("zeta8^3 - 1/2*zeta8".parse::<CycScalar>().unwrap(), x);
        assert_eq!("2/3".parse::<CycScalar>().unwrap(), CycScalar::frac(2, 3));
        assert_eq!(CycScalar::zero().to_string(), "0");
        assert_eq!(CycScalar::from_int(-4).to_string(), "-4");
    }
}
