//! Exact arithmetic in `Z[zeta_N] = Z[q] / Phi_N(q)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::laurent::{LaurentPoly, QExp};
use crate::error::{Error, Result};

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<[i64]>>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // q^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let div = cyclotomic_polynomial(d);
        num = divide_monic(&num, &div);
    }
    let phi: Arc<[i64]> = num.into();
    cache.lock().unwrap().insert(n, phi.clone());
    phi
}

fn divide_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let dd = div.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &di) in div.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Z[zeta_N]`, stored as its residue modulo `Phi_N` in the
/// power basis `1, zeta, ..., zeta^{phi(N)-1}`.
#[derive(Clone, Debug)]
pub struct CyclotomicInt {
    order: u32,
    modulus: Arc<[i64]>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInt {}

impl CyclotomicInt {
    /// Reduce an arbitrary coefficient vector (powers `0, 1, 2, ...` of
    /// `zeta`) modulo `Phi_N`.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigInt>) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let mut c = CyclotomicInt { order, modulus, coeffs };
        c.reduce();
        c
    }

    pub fn zero(order: u32) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(order, vec![c.into()])
    }

    /// `zeta^e` for any integer `e`.
    pub fn zeta_pow(order: u32, e: i64) -> Self {
        let e = e.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::from(1);
        Self::from_coeffs(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Residue coefficients, length `phi(N)` (trailing zeros trimmed).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn reduce(&mut self) {
        let dd = self.modulus.len() - 1;
        let c = &mut self.coeffs;
        if c.len() > dd {
            for k in (dd..c.len()).rev() {
                if c[k].is_zero() {
                    continue;
                }
                let lead = std::mem::take(&mut c[k]);
                for (i, &mi) in self.modulus[..dd].iter().enumerate() {
                    if mi != 0 {
                        c[k - dd + i] -= &lead * mi;
                    }
                }
            }
            c.truncate(dd);
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
    }

    /// Multiply by `zeta^e`.
    pub fn mul_zeta_pow(&self, e: i64) -> Self {
        let e = e.rem_euclid(self.order as i64) as usize;
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        CyclotomicInt::from_coeffs(self.order, coeffs)
    }

    /// The value at `q = exp(2 pi i / N)`.
    pub fn embed_complex(&self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI / self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta * i as f64))
            .sum()
    }

    /// Residue written as a polynomial in `q`.
    pub fn to_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            p.add_term(QExp::q(i as i64), 0, c.clone());
        }
        p
    }

    pub fn add_assign_ref(&mut self, rhs: &CyclotomicInt) {
        assert_eq!(self.order, rhs.order, "mismatched cyclotomic orders");
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|x| x.is_zero()) {
            self.coeffs.pop();
        }
    }
}

/// Exact image of a `q`-polynomial in `Z[zeta_N]`.
pub fn cyclotomic_reduce(p: &LaurentPoly, order: u32) -> Result<CyclotomicInt> {
    if order == 0 {
        return Err(Error::InvalidArgument("cyclotomic order must be positive".into()));
    }
    let mut coeffs = vec![BigInt::zero(); order as usize];
    for (e, f, c) in p.iter() {
        if f != 0 {
            return Err(Error::InvalidArgument(format!("polynomial {p} depends on z")));
        }
        let k = e.to_q().ok_or_else(|| Error::NonIntegerPower(p.to_string()))?;
        coeffs[k.rem_euclid(order as i64) as usize] += c;
    }
    Ok(CyclotomicInt::from_coeffs(order, coeffs))
}

pub fn embed_complex(c: &CyclotomicInt) -> Complex64 {
    c.embed_complex()
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            order: self.order,
            modulus: self.modulus.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.order, rhs.order, "mismatched cyclotomic orders");
        if self.is_zero() || rhs.is_zero() {
            return CyclotomicInt::zero(self.order);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut out = CyclotomicInt { order: self.order, modulus: self.modulus.clone(), coeffs };
        out.reduce();
        out
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(2), &[1, 1]);
        assert_eq!(&*cyclotomic_polynomial(3), &[1, 1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn reduce_examples() {
        let r = cyclotomic_reduce(&p("q + q^3 - q^4"), 2).unwrap();
        assert_eq!(r, CyclotomicInt::from_int(2, -3));
        let r = cyclotomic_reduce(&p("1 + q + q^2"), 3).unwrap();
        assert!(r.is_zero());
        let r = cyclotomic_reduce(&p("5*q^-7 + 2*q^3 - q"), 1).unwrap();
        assert_eq!(r, CyclotomicInt::from_int(1, 6));
        assert!(cyclotomic_reduce(&p("q^(1/2)"), 4).is_err());
    }

    #[test]
    fn embedding_examples() {
        let c = CyclotomicInt::from_int(2, -3).embed_complex();
        assert!((c - Complex64::new(-3.0, 0.0)).norm() < 1e-12);
        let c = CyclotomicInt::zeta_pow(4, 1).embed_complex();
        assert!((c - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let c = cyclotomic_reduce(&p("1 + q"), 5).unwrap().embed_complex();
        assert!((c.norm() - 1.618_033_988_749_895).abs() < 1e-9);
    }

    #[test]
    fn negative_powers_wrap() {
        let a = CyclotomicInt::zeta_pow(7, -1);
        let b = CyclotomicInt::zeta_pow(7, 6);
        assert_eq!(a, b);
        assert_eq!(&a * &CyclotomicInt::zeta_pow(7, 1), CyclotomicInt::one(7));
    }
}
