//! Colored Jones polynomial from the twisted R-matrix state sum on
//! `e_0 (x) W_N^{(x)(m-1)}`. Shares no code with the MacMahon engine beyond
//! polynomial arithmetic, so it serves as an independent check.

use std::collections::HashMap;

use crate::braid::{BraidWord, Sign};
use crate::error::{Error, Result};
use crate::exactpoly::{q_int_binom, q_pochhammer, LaurentPoly, QExp};

mod numeric;

pub use numeric::NumericSum;

/// `[n] = (v^n - v^{-n}) / (v - v^{-1})`.
pub fn quantum_int(n: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let sign = n.signum();
    for k in 0..n.abs() {
        out.add_term(QExp::v(n.abs() - 1 - 2 * k), 0, sign.into());
    }
    out
}

/// `1 + q + ... + q^{n-1}`.
fn round_int(n: i64) -> LaurentPoly {
    (0..n).map(LaurentPoly::q_pow).sum()
}

/// The action of `K`, `E`, `F` on the basis `e_i` of `V_N`:
/// `K e_i = v^{N-1-2i} e_i`, `E e_i = (1 + q^{-1} + ... + q^{1-i}) e_{i-1}`,
/// `F e_i = v^i [N-1-i] e_{i+1}`.
#[derive(Clone, Copy, Debug)]
pub struct VermaAction {
    pub n: i64,
}

impl VermaAction {
    pub fn new(n: i64) -> Self {
        VermaAction { n }
    }

    pub fn k(&self, i: i64) -> LaurentPoly {
        LaurentPoly::qexp_pow(QExp::v(self.n - 1 - 2 * i))
    }

    pub fn k_inv(&self, i: i64) -> LaurentPoly {
        LaurentPoly::qexp_pow(QExp::v(-(self.n - 1 - 2 * i)))
    }

    /// Coefficient of `e_{i-1}` in `E e_i`.
    pub fn e(&self, i: i64) -> LaurentPoly {
        round_int(i).shift_q(QExp::q(1 - i.max(1)))
    }

    /// Coefficient of `e_{i+1}` in `F e_i`.
    pub fn f(&self, i: i64) -> LaurentPoly {
        quantum_int(self.n - 1 - i).shift_q(QExp::v(i))
    }

    /// `KE = qEK`, `KF = q^{-1}FK` and
    /// `(EF - FE)(v - v^{-1}) = K - K^{-1}` on `e_0, ..., e_max_i`.
    pub fn check_relations(&self, max_i: i64) -> bool {
        let q = LaurentPoly::q();
        let v_diff = LaurentPoly::qexp_pow(QExp::v(1)) - LaurentPoly::qexp_pow(QExp::v(-1));
        (0..=max_i).all(|i| {
            let ke = self.e(i) * self.k(i - 1);
            let ek = self.k(i) * self.e(i);
            let kf = self.f(i) * self.k(i + 1);
            let fk = self.k(i) * self.f(i);
            let ef = self.f(i) * self.e(i + 1);
            let fe = if i > 0 { self.e(i) * self.f(i - 1) } else { LaurentPoly::zero() };
            ke == &q * &ek && &q * &kf == fk && (ef - fe) * &v_diff == self.k(i) - self.k_inv(i)
        })
    }
}

/// Coefficient of `e_{n2+l} (x) e_{n1-l}` (sign `+`) or `e_{n2-l} (x) e_{n1+l}`
/// (sign `-`) in the twisted braiding applied to `e_{n1} (x) e_{n2}`, with
/// `z = q^{N-1}`:
///
/// * `+`: `q^{-(N-1)^2/4} [n1, l]_{q^{-1}} q^{n2(l-n1)} z^{n2} prod_{i<l} (1 - z q^{-n2-i})`
/// * `-`: `q^{(N-1)^2/4} [n2, l]_q q^{n1(n2-l)} z^{-n1} prod_{i<l} (1 - z^{-1} q^{n1+i})`
///
/// where `[n, l]_t` is the ordinary Gaussian binomial in `t`.
pub fn braiding_coeff(sign: Sign, n1: usize, n2: usize, l: usize, n: i64) -> LaurentPoly {
    let shift = QExp((n - 1) * (n - 1));
    let (a, b, li) = (n1 as i64, n2 as i64, l as i64);
    match sign {
        Sign::Pos => {
            if l > n1 {
                return LaurentPoly::zero();
            }
            q_int_binom(n1, l, 1)
                * q_pochhammer(QExp::q(n - 1 - b), -1, l, 0)
                    .shift_q(QExp::q(b * (li - a) + (n - 1) * b))
                    .shift_q(-shift)
        }
        Sign::Neg => {
            if l > n2 {
                return LaurentPoly::zero();
            }
            q_int_binom(n2, l, -1)
                * q_pochhammer(QExp::q(a - (n - 1)), 1, l, 0)
                    .shift_q(QExp::q(a * (b - li) - (n - 1) * a))
                    .shift_q(shift)
        }
    }
}

type State = Vec<usize>;

/// Apply the twisted braiding of the given sign on factors `i, i+1` (0-based
/// `i`) to a sparse vector, keeping only basis vectors with entries `< cap`.
fn apply_crossing(
    v: &HashMap<State, LaurentPoly>,
    sign: Sign,
    i: usize,
    n: i64,
    cap: usize,
    cache: &mut HashMap<(Sign, usize, usize, usize), LaurentPoly>,
) -> HashMap<State, LaurentPoly> {
    let mut out: HashMap<State, LaurentPoly> = HashMap::new();
    for (s, c) in v {
        let (n1, n2) = (s[i], s[i + 1]);
        let lmax = match sign {
            Sign::Pos => n1,
            Sign::Neg => n2,
        };
        for l in 0..=lmax {
            let (o1, o2) = match sign {
                Sign::Pos => (n2 + l, n1 - l),
                Sign::Neg => (n2 - l, n1 + l),
            };
            if o1 >= cap || o2 >= cap {
                continue;
            }
            let coef = cache.entry((sign, n1, n2, l)).or_insert_with(|| braiding_coeff(sign, n1, n2, l, n));
            if coef.is_zero() {
                continue;
            }
            let mut t = s.clone();
            t[i] = o1;
            t[i + 1] = o2;
            *out.entry(t).or_default() += &(c * &*coef);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Apply `sigma_{i_1}^{e_1} ... sigma_{i_k}^{e_k}` as an operator (rightmost
/// letter first).
fn apply_word(
    b: &BraidWord,
    start: &State,
    n: i64,
    cap: usize,
    cache: &mut HashMap<(Sign, usize, usize, usize), LaurentPoly>,
) -> HashMap<State, LaurentPoly> {
    let mut v = HashMap::new();
    v.insert(start.clone(), LaurentPoly::one());
    for cr in b.crossings().iter().rev() {
        v = apply_crossing(&v, cr.sign, cr.generator - 1, n, cap, cache);
        if v.is_empty() {
            break;
        }
    }
    v
}

pub(crate) fn all_states(len: usize, cap: usize) -> Vec<State> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..cap).map(move |x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// `J'_K(N) = v^{w(N^2-1)/2} tr(p_0(tau(beta) K^{-1}), e_0 (x) W_N^{(x)(m-1)})`
/// with the `K^{-1}` weight `v^{(m-1)(1-N) + 2n}` on the traced factors.
pub fn state_sum_jones(b: &BraidWord, n: u32) -> Result<LaurentPoly> {
    b.require_knot()?;
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let m = b.strands();
    let ni = n as i64;
    let cap = n as usize;
    let mut cache = HashMap::new();
    let mut total = LaurentPoly::zero();
    for tail in all_states(m - 1, cap) {
        let mut s = vec![0];
        s.extend(&tail);
        let image = apply_word(b, &s, ni, cap, &mut cache);
        if let Some(c) = image.get(&s) {
            let weight: i64 = tail.iter().map(|&x| x as i64).sum();
            total += &c.shift_q(QExp::v((m as i64 - 1) * (1 - ni) + 2 * weight));
        }
    }
    let out = total.shift_q(QExp::v(b.writhe() * (ni * ni - 1)).div_half());
    if !out.is_q_integral() {
        return Err(Error::NonIntegerPower(out.to_string()));
    }
    Ok(out)
}

trait HalfExp {
    fn div_half(self) -> QExp;
}

impl HalfExp for QExp {
    /// Halve an exponent; callers only pass even quarter counts.
    fn div_half(self) -> QExp {
        debug_assert!(self.0 % 2 == 0);
        QExp(self.0 / 2)
    }
}

/// Check `b12 b23 b12 = b23 b12 b23` for the braiding of the given sign on
/// every basis vector of `W_cap^{(x)3}` inside `V_N^{(x)3}`.
pub fn check_braid_relation(n: i64, cap: usize) -> bool {
    let mut cache = HashMap::new();
    [Sign::Pos, Sign::Neg].into_iter().all(|sign| {
        all_states(3, cap).into_iter().all(|s| {
            let mut lhs = HashMap::new();
            lhs.insert(s.clone(), LaurentPoly::one());
            let mut rhs = lhs.clone();
            let big = usize::MAX / 4;
            for i in [0, 1, 0] {
                lhs = apply_crossing(&lhs, sign, i, n, big, &mut cache);
            }
            for i in [1, 0, 1] {
                rhs = apply_crossing(&rhs, sign, i, n, big, &mut cache);
            }
            lhs == rhs
        })
    })
}

/// Check that the negative braiding undoes the positive one (in both orders)
/// on `W_cap^{(x)2}`.
pub fn check_inverse(n: i64, cap: usize) -> bool {
    let mut cache = HashMap::new();
    let big = usize::MAX / 4;
    all_states(2, cap).into_iter().all(|s| {
        let mut one = HashMap::new();
        one.insert(s.clone(), LaurentPoly::one());
        let pm =
            apply_crossing(&apply_crossing(&one, Sign::Pos, 0, n, big, &mut cache), Sign::Neg, 0, n, big, &mut cache);
        let mp =
            apply_crossing(&apply_crossing(&one, Sign::Neg, 0, n, big, &mut cache), Sign::Pos, 0, n, big, &mut cache);
        pm == one && mp == one
    })
}

/// `J'_K(N)` at `q = exp(2 pi i / N)`, computed in double-double precision
/// (about 32 significant digits) and rounded to `f64` at the end. The state
/// sum cancels heavily for large `N`, so plain `f64` is not enough beyond
/// `N` of about 60. The returned magnitude tells how many digits were lost.
pub fn numeric_state_sum(b: &BraidWord, n: u32) -> Result<NumericSum> {
    numeric::state_sum::<twofloat::TwoFloat>(b, n)
}

/// The same state sum in plain `f64`.
pub fn numeric_state_sum_f64(b: &BraidWord, n: u32) -> Result<NumericSum> {
    numeric::state_sum::<f64>(b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::exactpoly::cyclotomic_reduce;
    use crate::qweyl::{AlgebraElement, GenPowers, NormalMonomial, StrandSigns};
    use num_complex::Complex64;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn verma_relations() {
        for n in [0, 2, 3, 5] {
            assert!(VermaAction::new(n).check_relations(10), "N={n}");
        }
    }

    #[test]
    fn braiding_examples() {
        for n in 1..6 {
            let e = QExp((n - 1) * (n - 1));
            assert_eq!(braiding_coeff(Sign::Pos, 0, 0, 0, n), LaurentPoly::qexp_pow(-e));
            assert_eq!(braiding_coeff(Sign::Neg, 0, 0, 0, n), LaurentPoly::qexp_pow(e));
            assert!(braiding_coeff(Sign::Pos, 1, 3, 2, n).is_zero());
        }
    }

    #[test]
    fn braid_relation_and_inverse() {
        for n in 2..=4 {
            assert!(check_inverse(n as i64, n), "inverse N={n}");
            assert!(check_braid_relation(n as i64, n), "braid N={n}");
            assert!(check_braid_relation(0, 3), "Verma N=0");
        }
    }

    #[test]
    fn state_sum_examples() {
        let tre = parse_braid("1 1 1", None).unwrap();
        assert_eq!(state_sum_jones(&tre, 2).unwrap(), p("q + q^3 - q^4"));
        let unknot = parse_braid("1", None).unwrap();
        assert_eq!(state_sum_jones(&unknot, 3).unwrap(), LaurentPoly::one());
        let fig8 = parse_braid("1 -2 1 -2", None).unwrap();
        let j = state_sum_jones(&fig8, 2).unwrap();
        let at_minus_one = j.eval(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0));
        assert!((at_minus_one.norm() - 5.0).abs() < 1e-9);
    }

    #[test]
    fn numeric_matches_exact() {
        let tre = parse_braid("1 1 1", None).unwrap();
        let v = numeric_state_sum(&tre, 2).unwrap().value;
        assert!((v - Complex64::new(-3.0, 0.0)).norm() < 1e-9);
        for w in ["1 1 1", "-1 -1 -1", "1 -2 1 -2", "1 1 1 2 -1 2", "1 1 1 1 1"] {
            let b = parse_braid(w, None).unwrap();
            assert!((numeric_state_sum(&b, 1).unwrap().value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            for n in 2..=5 {
                let exact = cyclotomic_reduce(&state_sum_jones(&b, n).unwrap(), n).unwrap().embed_complex();
                let approx = numeric_state_sum(&b, n).unwrap().value;
                assert!((exact - approx).norm() < 1e-9, "{w} N={n}: {exact} vs {approx}");
            }
        }
    }

    #[test]
    fn gauss_binomial_formula() {
        // c a = q^{-1} a c in A_+, so with X = c, Y = a we have YX = q XY.
        let s = StrandSigns::new(vec![Sign::Pos]);
        let sum = AlgebraElement::c(1).add(&AlgebraElement::a(1));
        let mut power = AlgebraElement::one();
        for n in 0..=6u32 {
            let mut expect = AlgebraElement::zero();
            for l in 0..=n {
                let m = NormalMonomial::single(1, GenPowers::new(0, l, n - l));
                expect = expect.add(&AlgebraElement::from_monomial(m, q_int_binom(n as usize, l as usize, -1)));
            }
            assert_eq!(power, expect, "n={n}");
            power = power.mul(&sum, &s);
        }
    }
}
