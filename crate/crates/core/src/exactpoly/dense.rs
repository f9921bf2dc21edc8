use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{LaurentPoly, QExp};

/// Laurent polynomial in integer powers of `q` stored densely with `i128`
/// coefficients. Arithmetic is checked; callers fall back to `LaurentPoly`
/// when a result does not fit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DensePoly {
    low: i64,
    coeffs: Vec<i128>,
}

impl DensePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i128, e: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        DensePoly { low: e, coeffs: vec![c] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` if `p` involves `z`, fractional powers of `q`, or coefficients
    /// beyond `i128`.
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (e, f, c) in p.iter() {
            if f != 0 {
                return None;
            }
            terms.push((e.to_q()?, c.to_i128()?));
        }
        let Some(&(low, _)) = terms.first() else {
            return Some(Self::zero());
        };
        let high = terms.iter().map(|t| t.0).max().unwrap_or(low);
        let low = terms.iter().map(|t| t.0).min().unwrap_or(low);
        let mut coeffs = vec![0i128; (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] = c;
        }
        let mut out = DensePoly { low, coeffs };
        out.trim();
        Some(out)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out.add_term(QExp::q(self.low + i as i64), 0, BigInt::from(c));
            }
        }
        out
    }

    pub fn shift(&self, e: i64) -> Self {
        DensePoly { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    /// `self += other`; `false` on overflow, leaving `self` unspecified.
    pub fn checked_add_assign(&mut self, other: &Self) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.is_zero() {
            *self = other.clone();
            return true;
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        if low < self.low {
            let pad = (self.low - low) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(0, pad));
            self.low = low;
        }
        self.coeffs.resize((high - low + 1) as usize, 0);
        let off = (other.low - low) as usize;
        for (slot, &c) in self.coeffs[off..].iter_mut().zip(&other.coeffs) {
            match slot.checked_add(c) {
                Some(v) => *slot = v,
                None => return false,
            }
        }
        self.trim();
        true
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.is_zero() || other.is_zero() {
            return Some(Self::zero());
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in coeffs[i..].iter_mut().zip(&other.coeffs) {
                *slot = slot.checked_add(a.checked_mul(b)?)?;
            }
        }
        let mut out = DensePoly { low: self.low + other.low, coeffs };
        out.trim();
        Some(out)
    }

    /// `self *= 1 - q^k`; `false` on overflow.
    pub fn mul_one_minus_q_pow(&mut self, k: i64) -> bool {
        if self.is_zero() {
            return true;
        }
        if k == 0 {
            *self = Self::zero();
            return true;
        }
        let m = k.unsigned_abs() as usize;
        if k > 0 {
            self.coeffs.resize(self.coeffs.len() + m, 0);
            for i in (m..self.coeffs.len()).rev() {
                match self.coeffs[i].checked_sub(self.coeffs[i - m]) {
                    Some(v) => self.coeffs[i] = v,
                    None => return false,
                }
            }
        } else {
            // Write `v - q^-m v` over the lowered support.
            self.coeffs.splice(0..0, std::iter::repeat_n(0, m));
            self.low -= m as i64;
            for i in 0..self.coeffs.len() - m {
                match self.coeffs[i].checked_sub(self.coeffs[i + m]) {
                    Some(v) => self.coeffs[i] = v,
                    None => return false,
                }
            }
        }
        self.trim();
        true
    }

    fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn round_trip_and_arithmetic() {
        let a = p("q^-2 - 3*q + 5*q^4");
        let b = p("2 - q^3");
        let (da, db) = (DensePoly::from_laurent(&a).unwrap(), DensePoly::from_laurent(&b).unwrap());
        assert_eq!(da.to_laurent(), a);
        assert_eq!(da.checked_mul(&db).unwrap().to_laurent(), &a * &b);
        let mut s = da.clone();
        assert!(s.checked_add_assign(&db));
        assert_eq!(s.to_laurent(), &a + &b);
        let mut z = da.clone();
        assert!(z.checked_add_assign(&DensePoly::from_laurent(&-&a).unwrap()));
        assert!(z.is_zero());
        assert_eq!(da.shift(3).to_laurent(), a.shift_q(QExp::q(3)));
        assert!(DensePoly::from_laurent(&p("q^(1/2)")).is_none());
        assert!(DensePoly::from_laurent(&p("z")).is_none());
    }

    #[test]
    fn binomial_factors() {
        let a = p("q^-2 - 3*q + 5*q^4");
        for k in [-7, -3, -1, 0, 1, 2, 6] {
            let mut d = DensePoly::from_laurent(&a).unwrap();
            assert!(d.mul_one_minus_q_pow(k));
            assert_eq!(d.to_laurent(), &a * &(&LaurentPoly::one() - &LaurentPoly::q_pow(k)), "k = {k}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = DensePoly::monomial(i128::MAX, 0);
        assert!(big.checked_mul(&DensePoly::monomial(2, 0)).is_none());
        let mut s = big.clone();
        assert!(!s.checked_add_assign(&DensePoly::one()));
    }
}
