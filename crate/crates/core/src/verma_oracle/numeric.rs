//! Floating-point state sum at `q = exp(2 pi i / N)`, generic over the real
//! type so that it can run in `f64` or double-double.

use std::collections::HashMap;
use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::{Complex, Complex64};
use twofloat::TwoFloat;

use super::all_states;
use crate::braid::{BraidWord, Crossing, Sign};
use crate::error::{Error, Result};

pub trait Real:
    Copy + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + AddAssign + num_traits::Num
{
    fn to_f64(self) -> f64;
    /// `exp(2 pi i k / n)` for `k = 0..n`.
    fn unit_roots(n: usize) -> Vec<Complex<Self>>;
}

impl Real for f64 {
    fn to_f64(self) -> f64 {
        self
    }
    fn unit_roots(n: usize) -> Vec<Complex64> {
        (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect()
    }
}

impl Real for TwoFloat {
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
    fn unit_roots(n: usize) -> Vec<Complex<TwoFloat>> {
        (0..n).map(|k| dd_unit_root(k as i64, n as i64)).collect()
    }
}

/// `exp(2 pi i k / n)` in double-double: reduce to `|x| <= pi/4` with exact
/// integer arithmetic, then sum Taylor series. Only `TwoFloat / f64` is used:
/// `TwoFloat / TwoFloat` in twofloat 0.8 is no more accurate than `f64`.
fn dd_unit_root(k: i64, n: i64) -> Complex<TwoFloat> {
    let k = k.rem_euclid(n);
    // 2 pi k / n = x + j pi/2 with x = pi (4k - jn) / (2n)
    let j = (4 * k + n / 2).div_euclid(n);
    let x = twofloat::consts::PI * TwoFloat::from((4 * k - j * n) as f64) / (2 * n) as f64;
    let x2 = x * x;
    let (mut s, mut c) = (x, TwoFloat::from(1.0));
    let (mut ts, mut tc) = (x, TwoFloat::from(1.0));
    for i in 1..30 {
        ts = -ts * x2 / ((2 * i) * (2 * i + 1)) as f64;
        tc = -tc * x2 / ((2 * i - 1) * (2 * i)) as f64;
        s += ts;
        c += tc;
    }
    match j.rem_euclid(4) {
        0 => Complex::new(c, s),
        1 => Complex::new(-s, c),
        2 => Complex::new(-c, -s),
        _ => Complex::new(s, -c),
    }
}

/// Braiding coefficients with the `q^{-+(N-1)^2/4}` factors removed,
/// tabulated for `n1, n2, l < N`.
struct Tables<T: Real> {
    n: usize,
    pos: Vec<Complex<T>>,
    neg: Vec<Complex<T>>,
}

impl<T: Real> Tables<T> {
    fn new(n: usize, roots: &[Complex<T>]) -> Self {
        let ni = n as i64;
        let pw = |e: i64| roots[e.rem_euclid(ni) as usize];
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        // Gaussian binomials [a, l]_q by Pascal.
        let mut binom = vec![zero; n * n];
        for a in 0..n {
            binom[a * n] = one;
            for l in 1..=a {
                let prev = if l < a { binom[(a - 1) * n + l] } else { zero };
                binom[a * n + l] = binom[(a - 1) * n + l - 1] + pw(l as i64) * prev;
            }
        }
        // prod_{i<l} (1 - q^{base + step i}); exactly zero once an exponent is 0 mod N
        let poch = |base: i64, step: i64, l: usize| {
            let mut acc = one;
            for i in 0..l as i64 {
                let e = base + step * i;
                if e.rem_euclid(ni) == 0 {
                    return zero;
                }
                acc = acc * (one - pw(e));
            }
            acc
        };
        let mut pos = vec![zero; n * n * n];
        let mut neg = vec![zero; n * n * n];
        for a in 0..n {
            for b in 0..n {
                let (ai, bi) = (a as i64, b as i64);
                for l in 0..=a {
                    let li = l as i64;
                    // [a, l]_{q^{-1}} = q^{-l(a-l)} [a, l]_q
                    pos[(a * n + b) * n + l] = binom[a * n + l]
                        * pw(-li * (ai - li) + bi * (li - ai) + (ni - 1) * bi)
                        * poch(ni - 1 - bi, -1, l);
                }
                for l in 0..=b {
                    let li = l as i64;
                    neg[(a * n + b) * n + l] =
                        binom[b * n + l] * pw(ai * (bi - li) - (ni - 1) * ai) * poch(ai - (ni - 1), 1, l);
                }
            }
        }
        Tables { n, pos, neg }
    }

    fn coeff(&self, sign: Sign, n1: usize, n2: usize, l: usize) -> Complex<T> {
        let idx = (n1 * self.n + n2) * self.n + l;
        match sign {
            Sign::Pos => self.pos[idx],
            Sign::Neg => self.neg[idx],
        }
    }
}

fn encode(s: &[usize], n: usize) -> u64 {
    s.iter().rev().fold(0u64, |acc, &x| acc * n as u64 + x as u64)
}

fn decode(mut code: u64, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut() {
        *slot = (code % n as u64) as usize;
        code /= n as u64;
    }
}

/// Amplitude together with the sum of absolute values of everything that was
/// added into it, which bounds the cancellation.
type Sparse<T> = HashMap<u64, (Complex<T>, f64)>;

fn abs<T: Real>(c: Complex<T>) -> f64 {
    c.re.to_f64().hypot(c.im.to_f64())
}

/// Push a ket through `letters`, rightmost letter first.
fn push_forward<T: Real>(tables: &Tables<T>, m: usize, start: u64, letters: &[Crossing]) -> Sparse<T> {
    let nn = tables.n;
    let zero = Complex::new(T::zero(), T::zero());
    let mut s = vec![0usize; m];
    let mut v: Sparse<T> = HashMap::new();
    v.insert(start, (Complex::new(T::one(), T::zero()), 1.0));
    for cr in letters.iter().rev() {
        let i = cr.generator - 1;
        let mut out: Sparse<T> = HashMap::with_capacity(v.len() * 2);
        for (&code, &(c, mag)) in &v {
            decode(code, nn, &mut s);
            let (n1, n2) = (s[i], s[i + 1]);
            let lmax = if cr.sign == Sign::Pos { n1 } else { n2 };
            for l in 0..=lmax {
                let (o1, o2) = if cr.sign == Sign::Pos { (n2 + l, n1 - l) } else { (n2 - l, n1 + l) };
                if o1 >= nn || o2 >= nn {
                    continue;
                }
                let k = tables.coeff(cr.sign, n1, n2, l);
                if k == zero {
                    continue;
                }
                s[i] = o1;
                s[i + 1] = o2;
                let e = out.entry(encode(&s, nn)).or_insert((zero, 0.0));
                e.0 = e.0 + c * k;
                e.1 += mag * abs(k);
                s[i] = n1;
                s[i + 1] = n2;
            }
        }
        v = out;
    }
    v
}

/// Pull a bra back through `letters`, leftmost letter first, using the
/// preimages of each crossing.
fn pull_back<T: Real>(tables: &Tables<T>, m: usize, start: u64, letters: &[Crossing]) -> Sparse<T> {
    let nn = tables.n;
    let zero = Complex::new(T::zero(), T::zero());
    let mut s = vec![0usize; m];
    let mut u: Sparse<T> = HashMap::new();
    u.insert(start, (Complex::new(T::one(), T::zero()), 1.0));
    for cr in letters {
        let i = cr.generator - 1;
        let mut out: Sparse<T> = HashMap::with_capacity(u.len() * 2);
        for (&code, &(c, mag)) in &u {
            decode(code, nn, &mut s);
            let (o1, o2) = (s[i], s[i + 1]);
            let lmax = if cr.sign == Sign::Pos { o1 } else { o2 };
            for l in 0..=lmax {
                let (n1, n2) = if cr.sign == Sign::Pos { (o2 + l, o1 - l) } else { (o2 - l, o1 + l) };
                if n1 >= nn || n2 >= nn {
                    continue;
                }
                let k = tables.coeff(cr.sign, n1, n2, l);
                if k == zero {
                    continue;
                }
                s[i] = n1;
                s[i + 1] = n2;
                let e = out.entry(encode(&s, nn)).or_insert((zero, 0.0));
                e.0 = e.0 + c * k;
                e.1 += mag * abs(k);
                s[i] = o1;
                s[i + 1] = o2;
            }
        }
        u = out;
    }
    u
}

/// Floating-point value of a state sum and the absolute size of the terms it
/// was assembled from.
#[derive(Clone, Copy, Debug)]
pub struct NumericSum {
    pub value: Complex64,
    pub magnitude: f64,
}

impl NumericSum {
    /// Decimal digits cancelled away, `log10(magnitude / |value|)`.
    pub fn digits_lost(&self) -> f64 {
        (self.magnitude / self.value.norm()).log10().max(0.0)
    }
}

/// Each diagonal entry `<s| T_a T_b |s>` is computed by pushing `|s>` through
/// `T_b`, pulling `<s|` back through `T_a`, and pairing the two halves.
pub fn state_sum<T: Real>(b: &BraidWord, n: u32) -> Result<NumericSum> {
    b.require_knot()?;
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if n == 1 {
        return Ok(NumericSum { value: Complex64::new(1.0, 0.0), magnitude: 1.0 });
    }
    let nn = n as usize;
    let m = b.strands();
    let roots = T::unit_roots(nn);
    let tables = Tables::new(nn, &roots);
    let (front, back) = b.crossings().split_at(b.len() / 2);
    let ni = n as i64;
    let mut total = Complex::new(T::zero(), T::zero());
    let mut magnitude = 0.0;
    for tail in all_states(m - 1, nn) {
        let mut s = vec![0];
        s.extend(&tail);
        let code = encode(&s, nn);
        let right = push_forward(&tables, m, code, back);
        if right.is_empty() {
            continue;
        }
        let left = pull_back(&tables, m, code, front);
        let (small, large) = if right.len() <= left.len() { (&right, &left) } else { (&left, &right) };
        let mut diag = Complex::new(T::zero(), T::zero());
        for (k, (a, ma)) in small {
            if let Some((b, mb)) = large.get(k) {
                diag = diag + *a * *b;
                magnitude += ma * mb;
            }
        }
        let weight: i64 = tail.iter().map(|&x| x as i64).sum();
        total = total + diag * roots[weight.rem_euclid(ni) as usize];
    }
    let e = (ni - 1) * (b.writhe() - m as i64 + 1) / 2;
    let out = total * roots[e.rem_euclid(ni) as usize];
    Ok(NumericSum { value: Complex64::new(out.re.to_f64(), out.im.to_f64()), magnitude })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_double_roots() {
        for n in [3usize, 7, 12, 100] {
            let dd = TwoFloat::unit_roots(n);
            let fl = f64::unit_roots(n);
            for (a, b) in dd.iter().zip(&fl) {
                assert!((a.re.to_f64() - b.re).abs() < 1e-15 && (a.im.to_f64() - b.im).abs() < 1e-15);
            }
            // |zeta|^2 = 1 and zeta^n = 1 far beyond f64 precision
            let z = dd[1];
            let norm = z.re * z.re + z.im * z.im - TwoFloat::from(1.0);
            assert!(f64::from(norm).abs() < 1e-30, "n={n} norm={:e}", f64::from(norm));
            let mut p = Complex::new(TwoFloat::from(1.0), TwoFloat::from(0.0));
            for _ in 0..n {
                p = p * z;
            }
            assert!(f64::from(p.re - TwoFloat::from(1.0)).abs() < 1e-29 && f64::from(p.im).abs() < 1e-29);
        }
        let c = TwoFloat::unit_roots(3)[1].re + TwoFloat::from(0.5);
        assert!(f64::from(c).abs() < 1e-31);
    }
}
