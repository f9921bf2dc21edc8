//! Quantum determinants, the MacMahon inverse series and the colored Jones
//! and Alexander polynomials of a braid closure.
//!
//! `E_N(1 / det~_q(I - M))` is computed without ever forming the inverse:
//! either as `sum_n E_N(C^n)` with `C` the inclusion-exclusion sum of
//! principal quantum minors ("fermionic"), or as the sum of diagonal
//! coefficients of `Z_1^{n_1} ... Z_p^{n_p}` ("bosonic").

use std::cell::Cell;
use std::collections::HashMap;

use crate::braid::{BraidWord, Sign};
use crate::deformed_burau::{classical_specialization, rho, rho_prime, PolyMatrix, QuantumMatrix};
use crate::error::{Error, Result};
use crate::exactpoly::{CyclotomicInt, DensePoly, LaurentPoly, QExp};
use crate::qweyl::{eval_factor_n, factor_n_shape, reorder_exponent, AlgebraElement, GenPowers, StrandSigns};

/// `det_q(M) = sum_pi (-q)^{inv pi} M_{pi 1, 1} ... M_{pi p, p}`.
pub fn qdet(m: &QuantumMatrix) -> AlgebraElement {
    let n = m.dim();
    let signs = m.signs();
    fn rec(
        m: &QuantumMatrix,
        signs: &StrandSigns,
        col: usize,
        used: &mut Vec<usize>,
        acc: AlgebraElement,
        out: &mut AlgebraElement,
    ) {
        if acc.is_zero() {
            return;
        }
        if col > m.dim() {
            let inv = (0..used.len())
                .flat_map(|i| (i + 1..used.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| used[i] > used[j])
                .count() as i64;
            let sign = if inv % 2 == 0 { 1 } else { -1 };
            *out = out.add(&acc.scale(&LaurentPoly::monomial(sign, QExp::q(inv), 0)));
            return;
        }
        for row in 1..=m.dim() {
            if used.contains(&row) {
                continue;
            }
            let e = m.get(row, col);
            if e.is_zero() {
                continue;
            }
            used.push(row);
            rec(m, signs, col + 1, used, acc.mul(e, signs), out);
            used.pop();
        }
    }
    let mut out = AlgebraElement::zero();
    if n == 0 {
        return AlgebraElement::one();
    }
    rec(m, signs, 1, &mut Vec::new(), AlgebraElement::one(), &mut out);
    out
}

/// `C = sum_{J nonempty} (-1)^{|J|-1} det_q(M_J)`, so that
/// `det~_q(I - M) = 1 - C`.
pub fn c_sum(m: &QuantumMatrix) -> AlgebraElement {
    let n = m.dim();
    let mut out = AlgebraElement::zero();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
        let d = qdet(&m.principal_submatrix(&idx));
        out = if idx.len() % 2 == 1 { out.add(&d) } else { out.sub(&d) };
    }
    out
}

/// How the inverse series is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    Fermionic,
    Bosonic,
}

/// When to stop the fermionic series `sum_n C^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// `n <= k N`; exact only when evaluating at `zeta_N`.
    RootOfUnityBound,
    /// `n <= max_n`.
    GradedCutoff(usize),
    /// Stop after `window` consecutive vanishing terms; give up after
    /// `max_terms`.
    Adaptive { window: usize, max_terms: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InverseSeriesConfig {
    pub mode: SeriesMode,
    pub termination: Termination,
}

impl InverseSeriesConfig {
    pub fn bosonic() -> Self {
        InverseSeriesConfig {
            mode: SeriesMode::Bosonic,
            termination: Termination::Adaptive { window: 1, max_terms: 1 },
        }
    }

    /// Fermionic expansion with the adaptive window `max(k, m)`.
    pub fn fermionic(k: usize, m: usize) -> Self {
        InverseSeriesConfig {
            mode: SeriesMode::Fermionic,
            termination: Termination::Adaptive { window: k.max(m).max(1), max_terms: 400 },
        }
    }
}

/// A target ring for `E_N` together with the pruning it allows.
pub trait Specialization {
    type V: Clone;
    fn zero(&self) -> Self::V;
    fn one(&self) -> Self::V;
    fn is_zero(&self, v: &Self::V) -> bool;
    fn add_assign(&self, a: &mut Self::V, b: &Self::V);
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul_q_pow(&self, a: &Self::V, e: i64) -> Self::V;
    fn coefficient(&self, c: &LaurentPoly) -> Result<Self::V>;
    /// Canonicalize the exponents `[r_1, d_1, r_2, d_2, ...]`; `false` if
    /// every continuation of this monomial evaluates to zero.
    fn reduce(&self, key: &mut [u32]) -> bool;
    /// `E_N` of one factor `b^s c^r a^d`.
    fn factor(&self, sign: Sign, r: u32, d: u32) -> Self::V;
    /// `v * factor(sign, r, d)`; override when the product is cheaper than
    /// forming the factor.
    fn mul_factor(&self, v: &Self::V, sign: Sign, r: u32, d: u32, cache: &mut FactorCache<Self::V>) -> Self::V {
        let f = cache.entry((sign, r, d)).or_insert_with(|| self.factor(sign, r, d));
        self.mul(v, f)
    }
}

pub type FactorCache<V> = HashMap<(Sign, u32, u32), V>;

/// `E_N` into `Z[q^{+-1}]` for any integer `N` (`N = 0` gives `E_0`).
#[derive(Clone, Copy, Debug)]
pub struct AtColor(pub i64);

impl Specialization for AtColor {
    type V = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn is_zero(&self, v: &LaurentPoly) -> bool {
        v.is_zero()
    }
    fn add_assign(&self, a: &mut LaurentPoly, b: &LaurentPoly) {
        *a += b;
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a * b
    }
    fn mul_q_pow(&self, a: &LaurentPoly, e: i64) -> LaurentPoly {
        a.shift_q(QExp::q(e))
    }
    fn coefficient(&self, c: &LaurentPoly) -> Result<LaurentPoly> {
        Ok(c.clone())
    }
    fn reduce(&self, _key: &mut [u32]) -> bool {
        true
    }
    fn factor(&self, sign: Sign, r: u32, d: u32) -> LaurentPoly {
        eval_factor_n(sign, r, d, self.0)
    }
}

/// `AtColor` with dense `i128` arithmetic. Results are only meaningful when
/// `overflowed()` is still false afterwards.
#[derive(Debug)]
pub struct AtColorDense {
    n: i64,
    overflow: Cell<bool>,
}

impl AtColorDense {
    pub fn new(n: i64) -> Self {
        AtColorDense { n, overflow: Cell::new(false) }
    }

    pub fn overflowed(&self) -> bool {
        self.overflow.get()
    }

    fn flag<T: Default>(&self, v: Option<T>) -> T {
        v.unwrap_or_else(|| {
            self.overflow.set(true);
            T::default()
        })
    }
}

impl Specialization for AtColorDense {
    type V = DensePoly;

    fn zero(&self) -> DensePoly {
        DensePoly::zero()
    }
    fn one(&self) -> DensePoly {
        DensePoly::one()
    }
    fn is_zero(&self, v: &DensePoly) -> bool {
        v.is_zero()
    }
    fn add_assign(&self, a: &mut DensePoly, b: &DensePoly) {
        if !a.checked_add_assign(b) {
            self.overflow.set(true);
        }
    }
    fn mul(&self, a: &DensePoly, b: &DensePoly) -> DensePoly {
        self.flag(a.checked_mul(b))
    }
    fn mul_q_pow(&self, a: &DensePoly, e: i64) -> DensePoly {
        a.shift(e)
    }
    fn coefficient(&self, c: &LaurentPoly) -> Result<DensePoly> {
        DensePoly::from_laurent(c).ok_or_else(|| Error::NonIntegerPower(c.to_string()))
    }
    fn reduce(&self, _key: &mut [u32]) -> bool {
        true
    }
    fn factor(&self, sign: Sign, r: u32, d: u32) -> DensePoly {
        let p = eval_factor_n(sign, r, d, self.n);
        self.flag(DensePoly::from_laurent(&p))
    }
    /// One binomial at a time: `d` passes over `v` instead of a product with
    /// a factor of length about `d^2 / 2`.
    fn mul_factor(&self, v: &DensePoly, sign: Sign, r: u32, d: u32, _: &mut FactorCache<DensePoly>) -> DensePoly {
        let (shift, base, step) = factor_n_shape(sign, r, d, self.n);
        let mut out = v.shift(shift);
        for i in 0..d as i64 {
            if !out.mul_one_minus_q_pow(base + step * i) {
                self.overflow.set(true);
                return DensePoly::zero();
            }
        }
        out
    }
}

/// `E_N(C^0), ..., E_N(C^depth)` in `Z[q^{+-1}]`, on the dense path when the
/// coefficients allow it.
pub fn graded_terms_at_color(
    c: &AlgebraElement,
    signs: &StrandSigns,
    n: i64,
    depth: usize,
) -> Result<Vec<LaurentPoly>> {
    let dense = AtColorDense::new(n);
    if let Ok(terms) = fermionic_terms(&dense, c, signs, Termination::GradedCutoff(depth), None) {
        if !dense.overflowed() {
            return Ok(terms.iter().map(DensePoly::to_laurent).collect());
        }
    }
    fermionic_terms(&AtColor(n), c, signs, Termination::GradedCutoff(depth), None)
}

/// `E_N` followed by `q -> zeta_N`, exactly in `Z[zeta_N]`. Exponents `r` are
/// reduced mod `N` and monomials with some `d >= N` are dropped, since
/// `(1 - x)(1 - xq)...(1 - xq^{N-1})` contains the factor `1 - 1`.
#[derive(Clone, Copy, Debug)]
pub struct AtRootOfUnity(pub u32);

impl Specialization for AtRootOfUnity {
    type V = CyclotomicInt;

    fn zero(&self) -> CyclotomicInt {
        CyclotomicInt::zero(self.0)
    }
    fn one(&self) -> CyclotomicInt {
        CyclotomicInt::one(self.0)
    }
    fn is_zero(&self, v: &CyclotomicInt) -> bool {
        v.is_zero()
    }
    fn add_assign(&self, a: &mut CyclotomicInt, b: &CyclotomicInt) {
        a.add_assign_ref(b);
    }
    fn mul(&self, a: &CyclotomicInt, b: &CyclotomicInt) -> CyclotomicInt {
        a * b
    }
    fn mul_q_pow(&self, a: &CyclotomicInt, e: i64) -> CyclotomicInt {
        a.mul_zeta_pow(e)
    }
    fn coefficient(&self, c: &LaurentPoly) -> Result<CyclotomicInt> {
        crate::exactpoly::cyclotomic_reduce(c, self.0)
    }
    fn reduce(&self, key: &mut [u32]) -> bool {
        let n = self.0;
        for pair in key.chunks_mut(2) {
            if pair[1] >= n {
                return false;
            }
            pair[0] %= n;
        }
        true
    }
    fn factor(&self, sign: Sign, r: u32, d: u32) -> CyclotomicInt {
        let p = eval_factor_n(sign, r, d, self.0 as i64);
        crate::exactpoly::cyclotomic_reduce(&p, self.0).expect("q-polynomial")
    }
}

/// Nonzero entries `(column, entry)` of one matrix row.
type Row<V> = Vec<(usize, Prepared<V>)>;

/// An algebra element with coefficients already mapped into the target ring.
struct Prepared<V> {
    terms: Vec<(Vec<(usize, GenPowers)>, V)>,
}

fn prepare<S: Specialization>(spec: &S, x: &AlgebraElement) -> Result<Prepared<S::V>> {
    let mut terms = Vec::with_capacity(x.len());
    for (m, c) in x.terms() {
        terms.push((m.factors().to_vec(), spec.coefficient(c)?));
    }
    Ok(Prepared { terms })
}

/// Right-multiplication chain `X_1 X_2 ... X_n` tracked only through what `E`
/// and later products can see: the `c` and `a` exponents of every index. The
/// `b` exponents of a left factor never enter the reordering q-power, so they
/// are dropped.
struct Chain<'a, S: Specialization> {
    spec: &'a S,
    signs: &'a StrandSigns,
    states: HashMap<Vec<u32>, S::V>,
}

impl<'a, S: Specialization> Clone for Chain<'a, S> {
    fn clone(&self) -> Self {
        Chain { spec: self.spec, signs: self.signs, states: self.states.clone() }
    }
}

impl<'a, S: Specialization> Chain<'a, S> {
    fn unit(spec: &'a S, signs: &'a StrandSigns) -> Self {
        let mut states = HashMap::new();
        states.insert(vec![0; 2 * signs.len()], spec.one());
        Chain { spec, signs, states }
    }

    fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Right-multiply by `q^shift * x`.
    fn step(&self, x: &Prepared<S::V>, shift: i64) -> Self {
        let mut out: HashMap<Vec<u32>, S::V> = HashMap::with_capacity(self.states.len() * 2);
        for (key, val) in &self.states {
            for (factors, coef) in &x.terms {
                let mut k = key.clone();
                let mut qpow = shift;
                for &(j, p) in factors {
                    let (r, d) = (k[2 * (j - 1)], k[2 * (j - 1) + 1]);
                    qpow += reorder_exponent(self.signs.sign(j), GenPowers::new(0, r, d), p);
                    k[2 * (j - 1)] += p.c;
                    k[2 * (j - 1) + 1] += p.a;
                }
                if !self.spec.reduce(&mut k) {
                    continue;
                }
                let v = self.spec.mul_q_pow(&self.spec.mul(val, coef), qpow);
                match out.get_mut(&k) {
                    Some(acc) => self.spec.add_assign(acc, &v),
                    None => {
                        out.insert(k, v);
                    }
                }
            }
        }
        out.retain(|_, v| !self.spec.is_zero(v));
        Chain { spec: self.spec, signs: self.signs, states: out }
    }

    fn merge(&mut self, other: &Self) {
        for (k, v) in &other.states {
            match self.states.get_mut(k) {
                Some(acc) => self.spec.add_assign(acc, v),
                None => {
                    self.states.insert(k.clone(), v.clone());
                }
            }
        }
        let spec = self.spec;
        self.states.retain(|_, v| !spec.is_zero(v));
    }

    /// Contracts the last index first, so states sharing a prefix are
    /// multiplied by the earlier factors only once.
    fn evaluate(&self, cache: &mut FactorCache<S::V>) -> S::V {
        let mut layer: HashMap<&[u32], S::V> = self.states.iter().map(|(k, v)| (k.as_slice(), v.clone())).collect();
        for j in (1..=self.signs.len()).rev() {
            let mut next: HashMap<&[u32], S::V> = HashMap::with_capacity(layer.len());
            for (key, val) in layer {
                let (head, pair) = key.split_at(2 * (j - 1));
                let v = if pair == [0, 0] {
                    val
                } else {
                    self.spec.mul_factor(&val, self.signs.sign(j), pair[0], pair[1], cache)
                };
                if self.spec.is_zero(&v) {
                    continue;
                }
                match next.get_mut(head) {
                    Some(acc) => self.spec.add_assign(acc, &v),
                    None => {
                        next.insert(head, v);
                    }
                }
            }
            layer = next;
        }
        layer.into_values().next().unwrap_or_else(|| self.spec.zero())
    }
}

/// The terms `E(C^0), E(C^1), ...` of the fermionic series, stopping as
/// configured. The chain also stops once every monomial has been pruned.
pub fn fermionic_terms<S: Specialization>(
    spec: &S,
    c: &AlgebraElement,
    signs: &StrandSigns,
    termination: Termination,
    root_bound: Option<usize>,
) -> Result<Vec<S::V>> {
    let prepared = prepare(spec, c)?;
    let mut chain = Chain::unit(spec, signs);
    let mut cache = HashMap::new();
    let mut terms = vec![chain.evaluate(&mut cache)];
    let (limit, window) = match termination {
        Termination::RootOfUnityBound => {
            (root_bound.ok_or_else(|| Error::InvalidArgument("root-of-unity bound needs N > 0".into()))?, usize::MAX)
        }
        Termination::GradedCutoff(n) => (n, usize::MAX),
        Termination::Adaptive { window, max_terms } => (max_terms, window),
    };
    let mut zeros = 0usize;
    loop {
        if zeros >= window {
            break;
        }
        if terms.len() > limit {
            if matches!(termination, Termination::Adaptive { .. }) {
                return Err(Error::Unterminated { iterations: limit });
            }
            break;
        }
        chain = chain.step(&prepared, 0);
        if chain.is_empty() {
            break;
        }
        let t = chain.evaluate(&mut cache);
        zeros = if spec.is_zero(&t) { zeros + 1 } else { 0 };
        terms.push(t);
    }
    while terms.len() > 1 && terms.last().is_some_and(|t| spec.is_zero(t)) {
        terms.pop();
    }
    Ok(terms)
}

/// Sum over `(n_1, ..., n_p) in [0, N-1]^p` of the coefficient of
/// `z_1^{n_1} ... z_p^{n_p}` in `Z_1^{n_1} ... Z_p^{n_p}`, `Z_i = sum_j M_ij z_j`,
/// with `z_i z_j = q z_j z_i` for `i < j`, pushed through `E_N`.
pub fn bosonic_sum<S: Specialization>(spec: &S, m: &QuantumMatrix, cap: u32) -> Result<S::V> {
    let p = m.dim();
    let signs = m.signs();
    let mut rows = Vec::with_capacity(p);
    for i in 1..=p {
        let mut row = Vec::new();
        for j in 1..=p {
            let e = m.get(i, j);
            if !e.is_zero() {
                row.push((j, prepare(spec, e)?));
            }
        }
        rows.push(row);
    }

    // Per row: states keyed by the column counts so far.
    type Layer<'a, S> = HashMap<Vec<u32>, Chain<'a, S>>;

    fn place_once<'a, S: Specialization>(
        layer: &Layer<'a, S>,
        row: &[(usize, Prepared<S::V>)],
        bound: &[u32],
    ) -> Layer<'a, S> {
        let mut out: Layer<'a, S> = HashMap::new();
        for (counts, chain) in layer {
            for (j, entry) in row {
                let j = *j;
                if counts[j - 1] + 1 > bound[j - 1] {
                    continue;
                }
                let inv: u32 = counts[j..].iter().sum();
                let next = chain.step(entry, -(inv as i64));
                if next.is_empty() {
                    continue;
                }
                let mut c = counts.clone();
                c[j - 1] += 1;
                match out.get_mut(&c) {
                    Some(acc) => acc.merge(&next),
                    None => {
                        out.insert(c, next);
                    }
                }
            }
        }
        out
    }

    struct Ctx<'r, 'a, S: Specialization> {
        spec: &'a S,
        rows: &'r [Row<S::V>],
        cap: u32,
        cache: FactorCache<S::V>,
        total: S::V,
    }

    fn descend<S: Specialization>(ctx: &mut Ctx<'_, '_, S>, row: usize, layer: Layer<'_, S>, fixed: &mut Vec<u32>) {
        let p = ctx.rows.len();
        if row == p {
            for (counts, chain) in &layer {
                if counts == fixed {
                    let v = chain.evaluate(&mut ctx.cache);
                    ctx.spec.add_assign(&mut ctx.total, &v);
                }
            }
            return;
        }
        let mut bound: Vec<u32> = vec![ctx.cap.saturating_sub(1); p];
        bound[..row].copy_from_slice(&fixed[..row]);
        let mut current = layer;
        for n in 0..ctx.cap {
            if n > 0 {
                current = place_once(&current, &ctx.rows[row], &bound);
            }
            if current.is_empty() {
                break;
            }
            // Column `row` can only grow later through rows below it, so a
            // count already above `n` is dead.
            let viable: Layer<'_, S> =
                current.iter().filter(|(c, _)| c[row] <= n).map(|(c, ch)| (c.clone(), ch.clone())).collect();
            fixed.push(n);
            descend(ctx, row + 1, viable, fixed);
            fixed.pop();
        }
    }

    if p == 0 {
        return Ok(spec.one());
    }
    let mut start: Layer<'_, S> = HashMap::new();
    start.insert(vec![0; p], Chain::unit(spec, signs));
    let mut ctx = Ctx { spec, rows: &rows, cap, cache: HashMap::new(), total: spec.zero() };
    descend(&mut ctx, 0, start, &mut Vec::new());
    Ok(ctx.total)
}

/// `E_N(1 / det~_q(I - M))` for `N >= 1`.
pub fn inverse_series_en(m: &QuantumMatrix, n: u32, cfg: InverseSeriesConfig) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let spec = AtColor(n as i64);
    match cfg.mode {
        SeriesMode::Bosonic => bosonic_sum(&spec, m, n),
        SeriesMode::Fermionic => {
            let c = c_sum(m);
            let bound = m.signs().len() * n as usize;
            let terms = fermionic_terms(&spec, &c, m.signs(), cfg.termination, Some(bound))?;
            Ok(terms.iter().sum())
        }
    }
}

/// `q rho'(gamma)` for a braid whose closure is a knot.
pub fn scaled_reduced_matrix(b: &BraidWord) -> Result<QuantumMatrix> {
    b.require_knot()?;
    Ok(rho_prime(&rho(b))?.scale_q(1))
}

/// `J'_K(N)`, normalized to 1 on the unknot, via the bosonic expansion.
pub fn colored_jones(b: &BraidWord, n: u32) -> Result<LaurentPoly> {
    colored_jones_with(b, n, InverseSeriesConfig::bosonic())
}

pub fn colored_jones_with(b: &BraidWord, n: u32, cfg: InverseSeriesConfig) -> Result<LaurentPoly> {
    let m = scaled_reduced_matrix(b)?;
    let series = inverse_series_en(&m, n, cfg)?;
    let w = b.writhe();
    let e = (n as i64 - 1) * (w - b.strands() as i64 + 1);
    debug_assert!(e % 2 == 0);
    let out = series.shift_q(QExp::v(e));
    if !out.is_q_integral() {
        return Err(Error::NonIntegerPower(out.to_string()));
    }
    Ok(out)
}

/// Multiply by a unit `+-z^j` so that `D(z) = D(z^{-1})` and `D(1) = 1`.
pub fn normalize_alexander(d: &LaurentPoly) -> Result<LaurentPoly> {
    let (lo, hi) = d.z_range().ok_or_else(|| Error::InvalidArgument("zero Alexander polynomial".into()))?;
    if (lo + hi) % 2 != 0 {
        return Err(Error::InvalidArgument(format!("{d} cannot be made symmetric")));
    }
    let mut out = d.shift_z(-(lo + hi) / 2);
    let at_one = out.coefficient_sum();
    if at_one == (-1).into() {
        out = -out;
    } else if at_one != 1.into() {
        return Err(Error::InvalidArgument(format!("{d} is not a knot Alexander polynomial")));
    }
    Ok(out)
}

/// `det E(I - rho'(gamma))`, normalized.
pub fn alexander(b: &BraidWord) -> Result<LaurentPoly> {
    b.require_knot()?;
    let r = classical_specialization(&rho_prime(&rho(b))?).map(|e| e.at_q_one());
    let d = PolyMatrix::identity(r.dim()).sub(&r).det();
    normalize_alexander(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::deformed_burau::{s_matrix, strand_signs};
    use crate::qweyl::NormalMonomial;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn braid(w: &str) -> BraidWord {
        parse_braid(w, None).unwrap()
    }

    #[test]
    fn qdet_examples() {
        let signs = StrandSigns::new(vec![Sign::Pos]);
        let d = qdet(&s_matrix(Sign::Pos, 1, &signs));
        let bc = NormalMonomial::single(1, GenPowers::new(1, 1, 0));
        assert_eq!(d, AlgebraElement::from_monomial(bc, p("-q^-1")));
        assert_eq!(qdet(&QuantumMatrix::identity(3, signs.clone())), AlgebraElement::one());
    }

    #[test]
    fn c_sum_examples() {
        let b = braid("1 1 1");
        let m = scaled_reduced_matrix(&b).unwrap();
        assert_eq!(c_sum(&m), m.get(1, 1).clone());
        let z = QuantumMatrix::zero(2, StrandSigns::new(vec![]));
        assert!(c_sum(&z).is_zero());
    }

    #[test]
    fn trefoil_n2() {
        let b = braid("1 1 1");
        let m = scaled_reduced_matrix(&b).unwrap();
        let f = inverse_series_en(&m, 2, InverseSeriesConfig::fermionic(3, 2)).unwrap();
        assert_eq!(f, p("1 + q^2 - q^3"));
        assert_eq!(colored_jones(&b, 2).unwrap(), p("q + q^3 - q^4"));
    }

    #[test]
    fn n_one_is_one() {
        for w in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2"] {
            let b = braid(w);
            assert_eq!(colored_jones(&b, 1).unwrap(), LaurentPoly::one());
            let cfg = InverseSeriesConfig::fermionic(b.len(), b.strands());
            assert_eq!(colored_jones_with(&b, 1, cfg).unwrap(), LaurentPoly::one());
        }
    }

    #[test]
    fn unknot() {
        let b = braid("1");
        for n in 1..=5 {
            assert_eq!(colored_jones(&b, n).unwrap(), LaurentPoly::one());
        }
        assert_eq!(alexander(&b).unwrap(), LaurentPoly::one());
        assert_eq!(colored_jones(&braid("1 1"), 2), Err(Error::NotAKnot));
    }

    #[test]
    fn fermionic_equals_bosonic() {
        for w in ["1 1 1", "-1 -1 -1", "1 -2 1 -2", "1 1 1 1 1", "1 1 1 2 -1 2"] {
            let b = braid(w);
            for n in 1..=3 {
                let cfg = InverseSeriesConfig::fermionic(b.len(), b.strands());
                assert_eq!(colored_jones_with(&b, n, cfg).unwrap(), colored_jones(&b, n).unwrap(), "{w} N={n}");
            }
        }
    }

    #[test]
    fn dense_matches_sparse() {
        for w in ["-1 -1 -1", "1 -2 1 -2", "1 1 1 2 -1 2"] {
            let m = scaled_reduced_matrix(&braid(w)).unwrap();
            let c = c_sum(&m);
            for n in [0, 2, -1] {
                let sparse = fermionic_terms(&AtColor(n), &c, m.signs(), Termination::GradedCutoff(6), None).unwrap();
                assert_eq!(graded_terms_at_color(&c, m.signs(), n, 6).unwrap(), sparse, "{w} N={n}");
            }
        }
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&braid("1 1 1")).unwrap(), p("z^-1 - 1 + z"));
        assert_eq!(alexander(&braid("1 -2 1 -2")).unwrap(), p("-z^-1 + 3 - z"));
        let s = strand_signs(&braid("1"));
        assert_eq!(s.len(), 1);
    }
}
