//! The `N = 0` evaluation (a Habiro-ring element), exact Kashaev invariants
//! at roots of unity, growth rates `2 pi ln|<K>_N| / N`, Mahler measures and
//! a hyperbolic-volume reference computed from the Lobachevsky function.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::exactpoly::{CyclotomicInt, LaurentPoly, QExp};
use crate::mcmahon::{
    c_sum, fermionic_terms, graded_terms_at_color, scaled_reduced_matrix, AtRootOfUnity, Termination,
};
use crate::verma_oracle::numeric_state_sum;

/// The first terms `E_0(C^n)`, `n = 0..=depth`, of the series whose sum,
/// times `q^{prefactor_exponent}`, is the Habiro-ring invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct HabiroTruncation {
    pub terms: Vec<LaurentPoly>,
    pub prefactor_exponent: i64,
    /// Number of crossings `k` of the braid the series came from.
    pub crossings: usize,
}

impl HabiroTruncation {
    /// `(1 - q)(1 - q^2)...(1 - q^d)`.
    pub fn cyclotomic_factorial(d: usize) -> LaurentPoly {
        (1..=d as i64).fold(LaurentPoly::one(), |acc, i| acc * (LaurentPoly::one() - LaurentPoly::q_pow(i)))
    }

    /// Indices `n` whose term is not divisible by
    /// `(1 - q)...(1 - q^{floor(n/k)})`.
    pub fn divisibility_failures(&self) -> Vec<usize> {
        let k = self.crossings.max(1);
        self.terms
            .iter()
            .enumerate()
            .filter(|(n, t)| t.div_exact_q(&Self::cyclotomic_factorial(n / k)).is_none())
            .map(|(n, _)| n)
            .collect()
    }

    /// Sum of the stored terms times the prefactor, reduced at `zeta_N`.
    /// Equals `<K>_N` once `depth >= k N`.
    pub fn at_root_of_unity(&self, n: u32) -> Result<CyclotomicInt> {
        let sum: LaurentPoly = self.terms.iter().sum();
        crate::exactpoly::cyclotomic_reduce(&sum.shift_q(QExp::q(self.prefactor_exponent)), n)
    }
}

/// `(m - w - 1) / 2`.
pub fn kashaev_prefactor_exponent(b: &BraidWord) -> i64 {
    (b.strands() as i64 - b.writhe() - 1) / 2
}

pub fn kashaev_series(b: &BraidWord, depth: usize) -> Result<HabiroTruncation> {
    let m = scaled_reduced_matrix(b)?;
    let c = c_sum(&m);
    let mut terms = graded_terms_at_color(&c, m.signs(), 0, depth)?;
    terms.resize(depth + 1, LaurentPoly::zero());
    Ok(HabiroTruncation { terms, prefactor_exponent: kashaev_prefactor_exponent(b), crossings: b.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KashaevMode {
    Exact,
    Float,
}

/// `<K>_N`, exactly in `Z[zeta_N]` when available, and as a complex number.
#[derive(Clone, Debug, PartialEq)]
pub struct KashaevValue {
    pub n: u32,
    pub exact: Option<CyclotomicInt>,
    pub approx: Complex64,
}

impl KashaevValue {
    fn from_exact(n: u32, exact: CyclotomicInt) -> Self {
        let approx = exact.embed_complex();
        KashaevValue { n, exact: Some(exact), approx }
    }
}

/// `<K>_N = q^{(m-w-1)/2} E_0(1 / det~_q(I - q rho'))` at `q = exp(2 pi i/N)`.
/// Exact mode sums `n <= k N` in `Z[zeta_N]`; float mode runs the state sum.
pub fn kashaev_value(b: &BraidWord, n: u32, mode: KashaevMode) -> Result<KashaevValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    match mode {
        KashaevMode::Exact => {
            let m = scaled_reduced_matrix(b)?;
            let c = c_sum(&m);
            let spec = AtRootOfUnity(n);
            let bound = b.len() * n as usize;
            let terms = fermionic_terms(&spec, &c, m.signs(), Termination::RootOfUnityBound, Some(bound))?;
            let mut sum = CyclotomicInt::zero(n);
            for t in &terms {
                sum.add_assign_ref(t);
            }
            Ok(KashaevValue::from_exact(n, sum.mul_zeta_pow(kashaev_prefactor_exponent(b))))
        }
        KashaevMode::Float => Ok(KashaevValue { n, exact: None, approx: numeric_state_sum(b, n)?.value }),
    }
}

/// `q sum_n (1 - q)(1 - q^2)...(1 - q^n)` at `q = exp(2 pi i / N)`; terms with
/// `n >= N` vanish.
pub fn kz_series(n: u32) -> Result<KashaevValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let mut sum = LaurentPoly::zero();
    let mut term = LaurentPoly::one();
    for k in 0..n as i64 {
        if k > 0 {
            term = term * (LaurentPoly::one() - LaurentPoly::q_pow(k));
        }
        sum += &term;
    }
    let exact = crate::exactpoly::cyclotomic_reduce(&sum.shift_q(QExp::q(1)), n)?;
    Ok(KashaevValue::from_exact(n, exact))
}

/// One entry of a growth-rate sequence; `rate` is `None` where `<K>_N = 0`.
/// `digits_lost` counts decimal digits cancelled in the state sum, out of
/// roughly [`WORKING_DIGITS`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateSample {
    pub n: u32,
    pub abs_value: f64,
    pub rate: Option<f64>,
    pub digits_lost: f64,
}

/// Decimal precision of the double-double state sum.
pub const WORKING_DIGITS: f64 = 31.0;

impl RateSample {
    /// At least six correct digits survive the cancellation.
    pub fn is_reliable(&self) -> bool {
        self.digits_lost <= WORKING_DIGITS - 6.0
    }
}

/// `v_N = 2 pi ln|<K>_N| / N` from the floating-point state sum. Independent
/// values of `N` are spread over worker threads; output order follows the
/// input.
pub fn volume_rate(b: &BraidWord, ns: &[u32]) -> Result<Vec<RateSample>> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    volume_rate_with_threads(b, ns, threads)
}

/// [`volume_rate`] on at most `threads` workers. The result does not depend on
/// the thread count.
pub fn volume_rate_with_threads(b: &BraidWord, ns: &[u32], threads: usize) -> Result<Vec<RateSample>> {
    b.require_knot()?;
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidArgument(format!("volume rate needs N >= 2, got {bad}")));
    }
    let workers = threads.max(1).min(ns.len().max(1));
    let results: Vec<Result<RateSample>> = if workers <= 1 {
        ns.iter().map(|&n| rate_sample(b, n)).collect()
    } else {
        let mut slots: Vec<Option<Result<RateSample>>> = vec![None; ns.len()];
        std::thread::scope(|s| {
            for (w, chunk) in slots.chunks_mut(ns.len().div_ceil(workers)).enumerate() {
                let start = w * ns.len().div_ceil(workers);
                s.spawn(move || {
                    for (i, slot) in chunk.iter_mut().enumerate() {
                        *slot = Some(rate_sample(b, ns[start + i]));
                    }
                });
            }
        });
        slots.into_iter().map(|s| s.expect("filled")).collect()
    };
    results.into_iter().collect()
}

fn rate_sample(b: &BraidWord, n: u32) -> Result<RateSample> {
    let sum = numeric_state_sum(b, n)?;
    let abs_value = sum.value.norm();
    let rate = (abs_value > 0.0).then(|| 2.0 * PI * abs_value.ln() / n as f64);
    Ok(RateSample { n, abs_value, rate, digits_lost: sum.digits_lost() })
}

/// Coefficients `a_0, ..., a_d` of `z^{-lo} delta(z)`.
fn ordinary_coefficients(delta: &LaurentPoly) -> Result<Vec<f64>> {
    if delta.is_zero() {
        return Err(Error::InvalidArgument("Mahler measure of zero".into()));
    }
    if delta.has_q() {
        return Err(Error::InvalidArgument(format!("{delta} depends on q")));
    }
    let (lo, hi) = delta.z_range().expect("nonzero");
    let mut coeffs = vec![0.0; (hi - lo + 1) as usize];
    for (_, f, c) in delta.iter() {
        coeffs[(f - lo) as usize] = c.to_f64().unwrap_or(f64::NAN);
    }
    Ok(coeffs)
}

fn horner(coeffs: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All complex roots of `a_0 + a_1 x + ... + a_d x^d` (`a_d != 0`), from the
/// companion-matrix eigenvalues polished by Newton's method. Each root must
/// satisfy `|p(r)| <= 1e-9 * sum |a_i| |r|^i`.
pub fn polynomial_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    if lead == 0.0 {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let mut comp = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        comp[(i, d - 1)] = -coeffs[i] / lead;
    }
    let mut roots: Vec<Complex64> = comp.complex_eigenvalues().iter().map(|c| Complex64::new(c.re, c.im)).collect();
    for r in roots.iter_mut() {
        for _ in 0..50 {
            let (p, dp) = horner(coeffs, *r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            *r -= step;
            if step.norm() <= 1e-16 * r.norm().max(1.0) {
                break;
            }
        }
        let (p, _) = horner(coeffs, *r);
        let scale: f64 = coeffs.iter().enumerate().map(|(i, c)| c.abs() * r.norm().powi(i as i32)).sum();
        if p.norm() > 1e-9 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::RootFinding(format!("residual {} at root {r}", p.norm())));
        }
    }
    Ok(roots)
}

/// `|a_d| prod max(1, |r|)` over the roots of the ordinary polynomial
/// attached to `delta`.
pub fn mahler_measure(delta: &LaurentPoly) -> Result<f64> {
    let coeffs = ordinary_coefficients(delta)?;
    let lead = coeffs.last().copied().unwrap_or(0.0).abs();
    let roots = polynomial_roots(&coeffs)?;
    Ok(roots.iter().fold(lead, |acc, r| acc * r.norm().max(1.0)))
}

fn zeta_even(s: u32) -> f64 {
    // Partial sum plus an Euler-Maclaurin tail.
    let k = 64.0f64;
    let head: f64 = (1..64).map(|j| (j as f64).powi(-(s as i32))).sum();
    let s = s as f64;
    head + k.powf(1.0 - s) / (s - 1.0) + 0.5 * k.powf(-s) + s / 12.0 * k.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * k.powf(-s - 3.0)
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * k.powf(-s - 5.0)
}

/// Clausen function `Cl_2(t) = -int_0^t ln|2 sin(x/2)| dx`.
pub fn clausen2(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t == 0.0 {
        return 0.0;
    }
    // Cl_2(t) = t - t ln|t| + sum_n 2 zeta(2n) t^{2n+1} / ((2 pi)^{2n} 2n (2n+1))
    let mut sum = t - t * t.abs().ln();
    let ratio = (t / (2.0 * PI)).powi(2);
    let mut pw = t;
    for n in 1..60u32 {
        pw *= ratio;
        let term = 2.0 * zeta_even(2 * n) * pw / ((2 * n) as f64 * (2 * n + 1) as f64);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

/// Lobachevsky function `L(t) = -int_0^t ln|2 sin x| dx = Cl_2(2t) / 2`.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen2(2.0 * theta)
}

/// Volume of the ideal tetrahedron with shape parameter `z` (`Im z > 0`).
pub fn ideal_tetrahedron_volume(z: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    lobachevsky(z.arg()) + lobachevsky((one / (one - z)).arg()) + lobachevsky((one - one / z).arg())
}

/// Hyperbolic volume of the figure-eight complement: two regular ideal
/// tetrahedra.
pub fn figure_eight_volume() -> f64 {
    2.0 * ideal_tetrahedron_volume(Complex64::from_polar(1.0, PI / 3.0))
}

/// Hyperbolic volume of the 5_2 complement: three tetrahedra of shape `z`,
/// the root of `x^3 - x^2 + 1` in the upper half-plane.
pub fn five_two_volume() -> Result<f64> {
    let roots = polynomial_roots(&[1.0, 0.0, -1.0, 1.0])?;
    let z = roots
        .into_iter()
        .find(|r| r.im > 1e-9)
        .ok_or_else(|| Error::RootFinding("no root of x^3 - x^2 + 1 in the upper half-plane".into()))?;
    Ok(3.0 * ideal_tetrahedron_volume(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn braid(w: &str) -> BraidWord {
        parse_braid(w, None).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn series_examples() {
        let unknot = kashaev_series(&braid("1"), 4).unwrap();
        assert_eq!(unknot.prefactor_exponent, 0);
        assert_eq!(unknot.terms[0], LaurentPoly::one());
        assert!(unknot.terms[1..].iter().all(LaurentPoly::is_zero));

        let tre = kashaev_series(&braid("1 1 1"), 1).unwrap();
        assert_eq!(tre.terms, vec![LaurentPoly::one(), p("1 - q^-1")]);

        let left = kashaev_series(&braid("-1 -1 -1"), 6).unwrap();
        assert_eq!(left.prefactor_exponent, 2);
        assert!(left.divisibility_failures().is_empty());
    }

    #[test]
    fn exact_values() {
        let left = braid("-1 -1 -1");
        assert_eq!(kashaev_value(&left, 1, KashaevMode::Exact).unwrap().exact, Some(CyclotomicInt::one(1)));
        let v2 = kashaev_value(&left, 2, KashaevMode::Exact).unwrap();
        assert_eq!(v2.exact, Some(CyclotomicInt::from_int(2, -3)));
        let fig8 = kashaev_value(&braid("1 -2 1 -2"), 2, KashaevMode::Exact).unwrap();
        assert!((fig8.approx.norm() - 5.0).abs() < 1e-12);
        for n in 1..=6 {
            assert_eq!(kz_series(n).unwrap().exact, kashaev_value(&left, n, KashaevMode::Exact).unwrap().exact);
        }
        assert_eq!(kz_series(2).unwrap().exact, Some(CyclotomicInt::from_int(2, -3)));
    }

    #[test]
    fn float_agrees_with_exact() {
        for w in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2"] {
            for n in 2..=6 {
                let e = kashaev_value(&braid(w), n, KashaevMode::Exact).unwrap();
                let f = kashaev_value(&braid(w), n, KashaevMode::Float).unwrap();
                assert!((e.approx - f.approx).norm() < 1e-9 * e.approx.norm().max(1.0), "{w} N={n}");
            }
        }
    }

    #[test]
    fn mahler_examples() {
        assert!((mahler_measure(&p("z^-1 - 1 + z")).unwrap() - 1.0).abs() < 1e-9);
        let golden = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((mahler_measure(&p("-z^-1 + 3 - z")).unwrap() - golden).abs() < 1e-9);
        assert!((mahler_measure(&LaurentPoly::one()).unwrap() - 1.0).abs() < 1e-12);
        assert!((mahler_measure(&p("2*z^-1 - 3 + 2*z")).unwrap() - 2.0).abs() < 1e-9);
    }

    fn quadrature_lobachevsky(t: f64) -> f64 {
        // -int_0^t ln|2 sin x| dx with the singular part ln(2x) integrated exactly.
        let n = 20000;
        let h = t / n as f64;
        let g = |x: f64| if x == 0.0 { 0.0 } else { (x.sin() / x).ln() };
        let mut s = g(0.0) + g(t);
        for i in 1..n {
            s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let smooth = s * h / 3.0;
        -(t * (2.0 * t).ln() - t + smooth)
    }

    #[test]
    fn lobachevsky_against_quadrature() {
        for t in [0.1, 0.5, PI / 6.0, PI / 3.0, 1.3, 2.0, 3.0] {
            assert!((lobachevsky(t) - quadrature_lobachevsky(t)).abs() < 1e-10, "{t}");
        }
        assert!(lobachevsky(PI).abs() < 1e-12);
    }

    #[test]
    fn reference_volumes() {
        assert!((zeta_even(2) - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta_even(4) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((figure_eight_volume() - 2.029883212819307).abs() < 1e-12);
        assert!((five_two_volume().unwrap() - 2.828122088330783).abs() < 1e-12);
    }
}
