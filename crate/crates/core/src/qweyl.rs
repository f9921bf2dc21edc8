//! The algebra `A_eps` generated by `a_j, b_j, c_j` (one triple per crossing),
//! its normal ordering, and the evaluation maps `E` and `E_N`.
//!
//! Inside one index the relations are
//!
//! * positive crossing: `ab = ba`, `ac = q ca`, `bc = q^2 cb`;
//! * negative crossing: `ab = q^2 ba`, `ca = q ac`, `cb = q^2 bc`;
//!
//! and generators with different indices commute. Monomials are stored in the
//! order `b^s c^r a^d` for each index.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::braid::Sign;
use crate::exactpoly::{q_pochhammer, LaurentPoly, QExp};

/// The crossing signs `eps_1, ..., eps_k`, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrandSigns(Vec<Sign>);

impl StrandSigns {
    pub fn new(signs: Vec<Sign>) -> Self {
        StrandSigns(signs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign of the 1-based index `j`.
    pub fn sign(&self, j: usize) -> Sign {
        self.0[j - 1]
    }

    pub fn as_slice(&self) -> &[Sign] {
        &self.0
    }
}

/// Exponents `(s, r, d)` of `b^s c^r a^d` at one index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenPowers {
    pub b: u32,
    pub c: u32,
    pub a: u32,
}

impl GenPowers {
    pub fn new(b: u32, c: u32, a: u32) -> Self {
        GenPowers { b, c, a }
    }

    pub fn is_trivial(&self) -> bool {
        self.b == 0 && self.c == 0 && self.a == 0
    }
}

/// q-power picked up when `(b^s c^r a^d)(b^s' c^r' a^d')` is brought to normal
/// order at a single index.
pub fn reorder_exponent(sign: Sign, left: GenPowers, right: GenPowers) -> i64 {
    let (r, d) = (left.c as i64, left.a as i64);
    let (s2, r2) = (right.b as i64, right.c as i64);
    match sign {
        Sign::Pos => -2 * r * s2 + d * r2,
        Sign::Neg => 2 * d * s2 + 2 * r * s2 - d * r2,
    }
}

/// A normal-ordered monomial `prod_j b_j^{s_j} c_j^{r_j} a_j^{d_j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalMonomial {
    factors: Vec<(usize, GenPowers)>,
}

impl NormalMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn single(j: usize, p: GenPowers) -> Self {
        let mut m = Self::default();
        if !p.is_trivial() {
            m.factors.push((j, p));
        }
        m
    }

    /// Build from `(index, powers)` pairs; indices must be distinct.
    pub fn from_factors(mut factors: Vec<(usize, GenPowers)>) -> Self {
        factors.retain(|(_, p)| !p.is_trivial());
        factors.sort_by_key(|(j, _)| *j);
        debug_assert!(factors.windows(2).all(|w| w[0].0 != w[1].0));
        NormalMonomial { factors }
    }

    pub fn factors(&self) -> &[(usize, GenPowers)] {
        &self.factors
    }

    pub fn get(&self, j: usize) -> GenPowers {
        self.factors.binary_search_by_key(&j, |(i, _)| *i).map(|k| self.factors[k].1).unwrap_or_default()
    }

    /// Total power of the `a` generators.
    pub fn ideal_degree(&self) -> u32 {
        self.factors.iter().map(|(_, p)| p.a).sum()
    }

    /// Product in normal order together with the accumulated power of `q`.
    pub fn mul(&self, rhs: &NormalMonomial, signs: &StrandSigns) -> (NormalMonomial, i64) {
        let mut out = Vec::with_capacity(self.factors.len() + rhs.factors.len());
        let mut qpow = 0i64;
        let (mut i, mut k) = (0, 0);
        while i < self.factors.len() || k < rhs.factors.len() {
            match (self.factors.get(i), rhs.factors.get(k)) {
                (Some(&(j1, p1)), Some(&(j2, p2))) if j1 == j2 => {
                    qpow += reorder_exponent(signs.sign(j1), p1, p2);
                    out.push((j1, GenPowers::new(p1.b + p2.b, p1.c + p2.c, p1.a + p2.a)));
                    i += 1;
                    k += 1;
                }
                (Some(&(j1, p1)), Some(&(j2, _))) if j1 < j2 => {
                    out.push((j1, p1));
                    i += 1;
                }
                (Some(&(j1, p1)), None) => {
                    out.push((j1, p1));
                    i += 1;
                }
                (_, Some(&(j2, p2))) => {
                    out.push((j2, p2));
                    k += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        (NormalMonomial { factors: out }, qpow)
    }
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (j, p) in &self.factors {
            for (name, e) in [("b", p.b), ("c", p.c), ("a", p.a)] {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{j}")),
                    e => parts.push(format!("{name}{j}^{e}")),
                }
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A finite `Z[q^{+-1}]`-linear combination of normal monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: HashMap<NormalMonomial, LaurentPoly>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::from_monomial(NormalMonomial::one(), c)
    }

    pub fn from_monomial(m: NormalMonomial, c: LaurentPoly) -> Self {
        let mut x = Self::zero();
        x.add_term(m, c);
        x
    }

    pub fn a(j: usize) -> Self {
        Self::from_monomial(NormalMonomial::single(j, GenPowers::new(0, 0, 1)), LaurentPoly::one())
    }

    pub fn b(j: usize) -> Self {
        Self::from_monomial(NormalMonomial::single(j, GenPowers::new(1, 0, 0)), LaurentPoly::one())
    }

    pub fn c(j: usize) -> Self {
        Self::from_monomial(NormalMonomial::single(j, GenPowers::new(0, 1, 0)), LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &NormalMonomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: NormalMonomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &AlgebraElement) -> AlgebraElement {
        self.add(&rhs.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> AlgebraElement {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Multiply by `q^n`.
    pub fn scale_q(&self, n: i64) -> AlgebraElement {
        AlgebraElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.shift_q(QExp::q(n)))).collect() }
    }

    /// `min_m sum_j d_j` over the monomials; `None` for zero.
    pub fn ideal_degree(&self) -> Option<u32> {
        self.terms.keys().map(NormalMonomial::ideal_degree).min()
    }

    pub fn mul(&self, rhs: &AlgebraElement, signs: &StrandSigns) -> AlgebraElement {
        normal_order_product(self, rhs, signs)
    }

    fn sorted_terms(&self) -> Vec<(&NormalMonomial, &LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.sorted_terms().into_iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn normal_order_product(x: &AlgebraElement, y: &AlgebraElement, signs: &StrandSigns) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (m1, c1) in &x.terms {
        for (m2, c2) in &y.terms {
            let (m, qpow) = m1.mul(m2, signs);
            out.add_term(m, (c1 * c2).shift_q(QExp::q(qpow)));
        }
    }
    out
}

/// `E(b^s c^r a^d)` at one index, a polynomial in `q` and `z`. Independent of
/// `s`.
pub fn eval_factor(sign: Sign, r: u32, d: u32) -> LaurentPoly {
    let (r, d) = (r as i64, d as i64);
    match sign {
        Sign::Pos => q_pochhammer(QExp::q(-r), -1, d as usize, 1).shift_q(QExp::q(-r * d)).shift_z(r),
        Sign::Neg => q_pochhammer(QExp::q(r), 1, d as usize, -1).shift_z(-r),
    }
}

/// `E(b^s c^r a^d)` at one index with `z = q^{N-1}` substituted.
pub fn eval_factor_n(sign: Sign, r: u32, d: u32, n: i64) -> LaurentPoly {
    let (shift, base, step) = factor_n_shape(sign, r, d, n);
    q_pochhammer(QExp::q(base), step, d as usize, 0).shift_q(QExp::q(shift))
}

/// `(shift, base, step)` with `eval_factor_n = q^shift prod_{i<d} (1 - q^{base + step i})`.
pub fn factor_n_shape(sign: Sign, r: u32, d: u32, n: i64) -> (i64, i64, i64) {
    let (r, d) = (r as i64, d as i64);
    match sign {
        Sign::Pos => (-r * d + r * (n - 1), n - 1 - r, -1),
        Sign::Neg => (-r * (n - 1), r - n + 1, 1),
    }
}

pub fn eval_monomial(m: &NormalMonomial, signs: &StrandSigns) -> LaurentPoly {
    m.factors.iter().fold(LaurentPoly::one(), |acc, &(j, p)| acc * eval_factor(signs.sign(j), p.c, p.a))
}

/// The evaluation map `E`: act on the constant function 1, then set every
/// `u_j = 1` and every `x_j = y_j = z`.
pub fn eval_e(x: &AlgebraElement, signs: &StrandSigns) -> LaurentPoly {
    x.terms.iter().map(|(m, c)| c * eval_monomial(m, signs)).sum()
}

/// `E` followed by `z -> q^{N-1}`. `n` may be any integer.
pub fn eval_en(x: &AlgebraElement, signs: &StrandSigns, n: i64) -> LaurentPoly {
    x.terms
        .iter()
        .map(|(m, c)| m.factors.iter().fold(c.clone(), |acc, &(j, p)| acc * eval_factor_n(signs.sign(j), p.c, p.a, n)))
        .sum()
}

/// Laurent polynomial in `x_j, y_j, u_j` (three slots per index) with
/// coefficients in `Z[q^{+-1}]`, on which the generators act as q-difference
/// operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorPoly {
    slots: usize,
    terms: HashMap<(Vec<i64>, i64), BigInt>,
}

const X: usize = 0;
const Y: usize = 1;
const U: usize = 2;

impl OperatorPoly {
    /// The constant function 1 on `k` indices.
    pub fn one(k: usize) -> Self {
        let mut terms = HashMap::new();
        terms.insert((vec![0; 3 * k], 0), BigInt::one());
        OperatorPoly { slots: 3 * k, terms }
    }

    /// A single monomial `c * q^e * prod vars^exps`.
    pub fn monomial(exps: Vec<i64>, e: i64, c: i64) -> Self {
        let slots = exps.len();
        let mut terms = HashMap::new();
        terms.insert((exps, e), BigInt::from(c));
        OperatorPoly { slots, terms }
    }

    fn add_term(&mut self, key: (Vec<i64>, i64), c: BigInt) {
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if num_traits::Zero::is_zero(e) {
            self.terms.remove(&key);
        }
    }

    fn add(&self, rhs: &OperatorPoly, scale: i64) -> OperatorPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c * scale);
        }
        out
    }

    /// Multiply by `var^p`.
    fn mul_var(&self, var: usize, p: i64) -> OperatorPoly {
        let mut out = OperatorPoly { slots: self.slots, terms: HashMap::new() };
        for ((exps, e), c) in &self.terms {
            let mut exps = exps.clone();
            exps[var] += p;
            out.add_term((exps, *e), c.clone());
        }
        out
    }

    /// `f(.., var, ..) -> f(.., q^p var, ..)`.
    fn tau(&self, var: usize, p: i64) -> OperatorPoly {
        let mut out = OperatorPoly { slots: self.slots, terms: HashMap::new() };
        for ((exps, e), c) in &self.terms {
            out.add_term((exps.clone(), e + p * exps[var]), c.clone());
        }
        out
    }

    /// Apply one generator (`'a'`, `'b'` or `'c'`) of index `j` with the
    /// given crossing sign.
    pub fn apply(&self, generator: char, sign: Sign, j: usize) -> OperatorPoly {
        let base = 3 * (j - 1);
        let (x, y, u) = (base + X, base + Y, base + U);
        match (generator, sign) {
            // a+ = (u - y tau_x^{-1}) tau_y^{-1}
            ('a', Sign::Pos) => {
                let g = self.tau(y, -1);
                g.mul_var(u, 1).add(&g.tau(x, -1).mul_var(y, 1), -1)
            }
            // a- = (tau_y - x^{-1}) tau_x^{-1} tau_u
            ('a', Sign::Neg) => {
                let h = self.tau(u, 1).tau(x, -1);
                h.tau(y, 1).add(&h.mul_var(x, -1), -1)
            }
            ('b', _) => self.mul_var(u, 2),
            // c+ = x tau_y^{-2} tau_u^{-1}
            ('c', Sign::Pos) => self.tau(u, -1).tau(y, -2).mul_var(x, 1),
            // c- = y^{-1} tau_x^{-1} tau_u
            ('c', Sign::Neg) => self.tau(u, 1).tau(x, -1).mul_var(y, -1),
            _ => panic!("unknown generator {generator}"),
        }
    }

    /// Set `u_j = 1`, `x_j = y_j = z`.
    pub fn specialize(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((exps, e), c) in &self.terms {
            let zdeg: i64 = exps.iter().enumerate().filter(|(i, _)| i % 3 != U).map(|(_, &p)| p).sum();
            out.add_term(QExp::q(*e), zdeg, c.clone());
        }
        out
    }
}

/// `E(mono)` computed by literally applying the q-difference operators to the
/// constant function 1, rightmost factor first.
pub fn operator_action_oracle(mono: &NormalMonomial, signs: &StrandSigns) -> LaurentPoly {
    let mut f = OperatorPoly::one(signs.len());
    for &(j, p) in mono.factors() {
        let sign = signs.sign(j);
        for _ in 0..p.a {
            f = f.apply('a', sign, j);
        }
        for _ in 0..p.c {
            f = f.apply('c', sign, j);
        }
        for _ in 0..p.b {
            f = f.apply('b', sign, j);
        }
    }
    f.specialize()
}
