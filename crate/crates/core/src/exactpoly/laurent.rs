//! Sparse Laurent polynomials in `q` (on a quarter-integer exponent lattice)
//! and an auxiliary commuting variable `z`, with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent of `q` measured in quarters: `q = QExp(4)`, `v = q^{1/2} = QExp(2)`,
/// `v^{1/2} = QExp(1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QExp(pub i64);

impl QExp {
    pub const ZERO: QExp = QExp(0);

    /// `q^n`.
    pub const fn q(n: i64) -> Self {
        QExp(4 * n)
    }

    /// `v^n` with `v^2 = q`.
    pub const fn v(n: i64) -> Self {
        QExp(2 * n)
    }

    pub const fn quarters(n: i64) -> Self {
        QExp(n)
    }

    pub fn is_integral(self) -> bool {
        self.0 % 4 == 0
    }

    /// The integer power of `q`, if there is one.
    pub fn to_q(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 4)
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp(self.0 + rhs.0)
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp(self.0 - rhs.0)
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl Mul<i64> for QExp {
    type Output = QExp;
    fn mul(self, rhs: i64) -> QExp {
        QExp(self.0 * rhs)
    }
}

/// Exact Laurent polynomial in `q^{1/4}` and `z`.
///
/// Terms are kept in a `BTreeMap` keyed by `(z exponent, q exponent)` with no
/// zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, QExp), BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, QExp::ZERO, 0)
    }

    /// `c * q^e * z^f`.
    pub fn monomial(c: impl Into<BigInt>, e: QExp, f: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, f, c.into());
        p
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn z() -> Self {
        Self::monomial(1, QExp::ZERO, 1)
    }

    pub fn q_pow(n: i64) -> Self {
        Self::monomial(1, QExp::q(n), 0)
    }

    pub fn qexp_pow(e: QExp) -> Self {
        Self::monomial(1, e, 0)
    }

    pub fn z_pow(n: i64) -> Self {
        Self::monomial(1, QExp::ZERO, n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, QExp::ZERO)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate over `(q exponent, z exponent, coefficient)`, ascending in `z`
    /// then `q`.
    pub fn iter(&self) -> impl Iterator<Item = (QExp, i64, &BigInt)> {
        self.terms.iter().map(|(&(f, e), c)| (e, f, c))
    }

    pub fn add_term(&mut self, e: QExp, f: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((f, e)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, e: QExp, f: i64) -> BigInt {
        self.terms.get(&(f, e)).cloned().unwrap_or_default()
    }

    /// Multiply by `q^e`.
    pub fn shift_q(&self, e: QExp) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&(f, x), c)| ((f, x + e), c.clone())).collect() }
    }

    /// Multiply by `z^f`.
    pub fn shift_z(&self, f: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&(g, e), c)| ((g + f, e), c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&key, c)| (key, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `z -> q^e`.
    pub fn subs_z(&self, e: QExp) -> Self {
        let mut out = Self::zero();
        for (&(f, x), c) in &self.terms {
            out.add_term(x + e * f, 0, c.clone());
        }
        out
    }

    /// Substitute `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&(f, e), c)| ((f, -e), c.clone())).collect() }
    }

    /// Substitute `z -> z^{-1}`.
    pub fn invert_z(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&(f, e), c)| ((-f, e), c.clone())).collect() }
    }

    /// Substitute `q -> 1` (requires nothing of the exponents).
    pub fn at_q_one(&self) -> Self {
        let mut out = Self::zero();
        for (&(f, _), c) in &self.terms {
            out.add_term(QExp::ZERO, f, c.clone());
        }
        out
    }

    pub fn is_q_integral(&self) -> bool {
        self.terms.keys().all(|(_, e)| e.is_integral())
    }

    pub fn has_z(&self) -> bool {
        self.terms.keys().any(|&(f, _)| f != 0)
    }

    pub fn has_q(&self) -> bool {
        self.terms.keys().any(|&(_, e)| e != QExp::ZERO)
    }

    pub fn z_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.0).min()?;
        let hi = self.terms.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    pub fn q_range(&self) -> Option<(QExp, QExp)> {
        let lo = self.terms.keys().map(|k| k.1).min()?;
        let hi = self.terms.keys().map(|k| k.1).max()?;
        Some((lo, hi))
    }

    /// Sum of all coefficients with `q = z = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluate at complex `q` and `z`. Quarter powers of `q` are taken along
    /// the principal branch of `q^{1/4}`.
    pub fn eval(&self, q: Complex64, z: Complex64) -> Complex64 {
        let q4 = q.powf(0.25);
        self.terms
            .iter()
            .map(|(&(f, e), c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                q4.powi(e.0 as i32) * z.powi(f as i32) * c
            })
            .sum()
    }

    /// Evaluate a `q`-only polynomial at `q = exp(i*theta)`, quarter powers
    /// being `exp(i*theta*e/4)`.
    pub fn eval_unit_q(&self, theta: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(_, e), c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(c, theta * e.0 as f64 / 4.0)
            })
            .sum()
    }

    /// Exact division of univariate polynomials in integer powers of `q`.
    /// Returns `None` when the divisor does not divide `self` over `Z`.
    pub fn div_exact_q(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() || self.has_z() || divisor.has_z() {
            return None;
        }
        if !self.is_q_integral() || !divisor.is_q_integral() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dhi) = divisor.q_range()?;
        let lead = divisor.coeff(dhi, 0);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((_, hi)) = rem.q_range() {
            let (lo, _) = rem.q_range()?;
            if hi.0 - dhi.0 < lo.0 - dlo.0 {
                return None;
            }
            let c = rem.coeff(hi, 0);
            if (&c % &lead) != BigInt::zero() {
                return None;
            }
            let k = c / &lead;
            let shift = hi - dhi;
            let term = LaurentPoly::monomial(k, shift, 0);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }
}

/// `prod_{i=0}^{d-1} (1 - z^{z_degree} q^{base + step*i})`, `step` in whole
/// powers of `q`.
pub fn q_pochhammer(base: QExp, step: i64, d: usize, z_degree: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for i in 0..d as i64 {
        let mut factor = LaurentPoly::one();
        factor.add_term(base + QExp::q(step * i), z_degree, BigInt::from(-1));
        acc = &acc * &factor;
    }
    acc
}

/// Gaussian binomial `prod_{i=1}^{l} (n-i+1)_{t} / (l-i+1)_{t}` where
/// `(n)_t = (1 - t^{-n}) / (1 - t^{-1})` and `t = q^{sign}`.
///
/// Equivalently the standard Gaussian binomial in `q^{-sign}`. Returns zero
/// when `l > n`.
pub fn q_int_binom(n: usize, l: usize, sign: i64) -> LaurentPoly {
    if l > n {
        return LaurentPoly::zero();
    }
    let l = l.min(n - l);
    // Pascal: [n, l] = [n-1, l-1] + t^l [n-1, l], t the standard variable.
    let t = QExp::q(-sign);
    let mut row: Vec<LaurentPoly> = vec![LaurentPoly::one(); l + 1];
    for (j, r) in row.iter_mut().enumerate() {
        if j > 0 {
            *r = LaurentPoly::zero();
        }
    }
    for m in 1..=n {
        for j in (1..=l.min(m)).rev() {
            let shifted = row[j].shift_q(t * j as i64);
            row[j] = &row[j - 1] + &shifted;
        }
    }
    row.swap_remove(l)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&(f1, e1), c1) in &self.terms {
            for (&(f2, e2), c2) in &rhs.terms {
                out.add_term(e1 + e2, f1 + f2, c1 * c2);
            }
        }
        out
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&(f, e), c) in &rhs.terms {
            self.add_term(e, f, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&(f, e), c) in &rhs.terms {
            self.add_term(e, f, -c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<'a> std::iter::Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

fn fmt_qexp(e: QExp) -> String {
    if e.is_integral() {
        match e.0 / 4 {
            1 => "q".into(),
            n => format!("q^{n}"),
        }
    } else {
        let (num, den) = if e.0 % 2 == 0 { (e.0 / 2, 2) } else { (e.0, 4) };
        format!("q^({num}/{den})")
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending terms `c*q^e*z^f` joined by ` + ` / ` - `; unit coefficients
    /// are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(zf, e), c)) in self.terms.iter().enumerate() {
            let mut parts = Vec::new();
            if e != QExp::ZERO {
                parts.push(fmt_qexp(e));
            }
            if zf != 0 {
                parts.push(if zf == 1 { "z".to_string() } else { format!("z^{zf}") });
            }
            let mag = c.abs();
            let body = if parts.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                parts.join("*")
            } else {
                format!("{mag}*{}", parts.join("*"))
            };
            let neg = c.is_negative();
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

fn parse_exponent(s: &str) -> Option<(i64, i64)> {
    let s = s.trim();
    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    match inner.split_once('/') {
        Some((a, b)) => Some((a.trim().parse().ok()?, b.trim().parse().ok()?)),
        None => Some((inner.parse().ok()?, 1)),
    }
}

fn parse_term(term: &str, position: usize) -> Result<LaurentPoly> {
    let err = |message: String| Error::Parse { position, message };
    let mut coeff = BigInt::one();
    let mut e = QExp::ZERO;
    let mut zf = 0i64;
    for factor in term.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(err(format!("empty factor in '{term}'")));
        }
        let (var, exp) = match factor.split_once('^') {
            Some((v, x)) => (v, Some(x)),
            None => (factor, None),
        };
        match var {
            "q" | "z" | "t" => {
                let (num, den) = match exp {
                    Some(x) => parse_exponent(x).ok_or_else(|| err(format!("bad exponent in '{factor}'")))?,
                    None => (1, 1),
                };
                if var == "q" {
                    if !matches!(den, 1 | 2 | 4) || (4 * num) % den != 0 {
                        return Err(err(format!("unsupported q exponent in '{factor}'")));
                    }
                    e = e + QExp(4 * num / den);
                } else {
                    if den != 1 {
                        return Err(err(format!("fractional z exponent in '{factor}'")));
                    }
                    zf += num;
                }
            }
            digits => {
                if exp.is_some() {
                    return Err(err(format!("exponent on a constant in '{factor}'")));
                }
                let c: BigInt = digits.parse().map_err(|_| err(format!("unrecognised factor '{factor}'")))?;
                coeff *= c;
            }
        }
    }
    Ok(LaurentPoly::monomial(coeff, e, zf))
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the `Display` format; `t` is accepted as a synonym for `z`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse { position: 0, message: "empty polynomial".into() });
        }
        let mut out = LaurentPoly::zero();
        let mut depth = 0usize;
        let mut start = 0usize;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'^' => {
                    pieces.push(&compact[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(&compact[start..]);
        for (pos, piece) in pieces.into_iter().enumerate() {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            let t = parse_term(body, pos)?;
            if neg {
                out -= &t;
            } else {
                out += &t;
            }
        }
        Ok(out)
    }
}
