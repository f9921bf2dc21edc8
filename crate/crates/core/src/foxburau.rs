//! Free-group side of the Burau representation: the Artin action, Fox
//! derivatives and the Jacobian `psi(beta)`.
//!
//! Conventions. `sigma_j` acts by `z_j -> z_j z_{j+1} z_j^{-1}`,
//! `z_{j+1} -> z_j`, and the letters of a word act in reading order, so
//! `beta(z) = sigma_{i_k}( ... sigma_{i_1}(z))`. With this order the
//! abelianized Jacobian satisfies `ab psi(reverse beta) = E(rho(beta))^T` at
//! `q = 1`, where `E(S_+) = [[1 - z, 1], [z, 0]]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::braid::{BraidWord, Sign};
use crate::deformed_burau::PolyMatrix;
use crate::error::{Error, Result};
use crate::exactpoly::{LaurentPoly, QExp};
use crate::mcmahon::normalize_alexander;

/// `z_generator^{exponent}` with `exponent = +-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, exponent: -self.exponent }
    }
}

/// Freely reduced word in `z_1, ..., z_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord { letters: vec![Letter { generator: i, exponent: 1 }] }
    }

    /// Reduces the input.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Signed generator indices, `-i` for `z_i^{-1}`.
    pub fn from_ints(ints: &[i64]) -> Result<Self> {
        ints.iter()
            .map(|&x| {
                if x == 0 {
                    Err(Error::InvalidArgument("generator index 0".into()))
                } else {
                    Ok(Letter { generator: x.unsigned_abs() as usize, exponent: x.signum() as i8 })
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(FreeWord::from_letters)
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, rhs: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &rhs.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Image under the endomorphism `z_i -> images[i - 1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::identity();
        for l in &self.letters {
            let img = &images[l.generator - 1];
            if l.exponent > 0 {
                img.letters.iter().for_each(|&x| out.push(x));
            } else {
                img.letters.iter().rev().for_each(|&x| out.push(x.inverse()));
            }
        }
        out
    }

    /// Exponent sum: the image under `z_i -> t`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent as i64).sum()
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "z{}", l.generator)?;
            if l.exponent < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Parses the output of `Display`, e.g. `"z1 z2 z1^-1"` or `"1"`.
impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (position, tok) in s.split_whitespace().enumerate() {
            if tok == "1" {
                continue;
            }
            let bad = || Error::Parse { position, message: format!("bad free-group letter {tok:?}") };
            let body = tok.strip_prefix('z').ok_or_else(bad)?;
            let (idx, exponent) = match body.strip_suffix("^-1") {
                Some(idx) => (idx, -1),
                None => (body, 1),
            };
            let generator: usize = idx.parse().map_err(|_| bad())?;
            if generator == 0 {
                return Err(bad());
            }
            letters.push(Letter { generator, exponent });
        }
        Ok(FreeWord::from_letters(letters))
    }
}

/// Element of the integral group ring of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        GroupRingElement::term(1, w)
    }

    pub fn term(c: impl Into<BigInt>, w: FreeWord) -> Self {
        let mut out = GroupRingElement::zero();
        out.add_term(c.into(), w);
        out
    }

    fn add_term(&mut self, c: BigInt, w: FreeWord) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &FreeWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add(&self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &GroupRingElement) -> GroupRingElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn mul(&self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(a * b, u.mul(v));
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, w: &FreeWord) -> GroupRingElement {
        GroupRingElement { terms: self.terms.iter().map(|(u, c)| (w.mul(u), c.clone())).collect() }
    }

    /// Image under the ring map induced by `z_i -> images[i - 1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, c) in &self.terms {
            out.add_term(c.clone(), w.substitute(images));
        }
        out
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Image in `Z[z, z^-1]` under every `z_i -> z`.
    pub fn abelianize(&self) -> LaurentPoly {
        self.terms.iter().map(|(w, c)| LaurentPoly::monomial(c.clone(), QExp::ZERO, w.exponent_sum())).sum()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Images of all generators under `sigma_j^{sign}`.
fn generator_images(m: usize, j: usize, sign: Sign) -> Vec<FreeWord> {
    let mut images: Vec<FreeWord> = (1..=m).map(FreeWord::generator).collect();
    let (a, b) = (FreeWord::generator(j), FreeWord::generator(j + 1));
    match sign {
        Sign::Pos => {
            images[j - 1] = a.mul(&b).mul(&a.inverse());
            images[j] = a;
        }
        Sign::Neg => {
            images[j - 1] = b.clone();
            images[j] = b.inverse().mul(&a).mul(&b);
        }
    }
    images
}

/// `beta(z_1), ..., beta(z_m)`.
pub fn artin_images(b: &BraidWord) -> Vec<FreeWord> {
    let m = b.strands();
    let mut images: Vec<FreeWord> = (1..=m).map(FreeWord::generator).collect();
    for cr in b.crossings() {
        let step = generator_images(m, cr.generator, cr.sign);
        images = images.iter().map(|w| w.substitute(&step)).collect();
    }
    images
}

/// `beta(z_i)`, `1 <= i <= m`.
pub fn artin_action(b: &BraidWord, i: usize) -> Result<FreeWord> {
    if i == 0 || i > b.strands() {
        return Err(Error::InvalidGenerator { generator: i as i64, strands: b.strands() });
    }
    Ok(artin_images(b).swap_remove(i - 1))
}

/// Relators `r_i = beta(z_i) z_i^{-1}` of the closure's knot group.
pub fn relators(b: &BraidWord) -> Vec<FreeWord> {
    artin_images(b).iter().enumerate().map(|(k, w)| w.mul(&FreeWord::generator(k + 1).inverse())).collect()
}

/// `d w / d z_i`.
pub fn fox_derivative(w: &FreeWord, i: usize) -> GroupRingElement {
    // d(u l) = du + u dl, accumulated along the word
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &l in w.letters() {
        if l.generator == i {
            if l.exponent > 0 {
                out.add_term(BigInt::one(), prefix.clone());
            } else {
                out.add_term(-BigInt::one(), prefix.mul(&FreeWord::from_letters([l])));
            }
        }
        prefix.push(l);
    }
    out
}

/// `psi(beta)_{ij} = d beta(z_i) / d z_j`.
pub fn psi_matrix(b: &BraidWord) -> Vec<Vec<GroupRingElement>> {
    let m = b.strands();
    artin_images(b).iter().map(|w| (1..=m).map(|j| fox_derivative(w, j)).collect()).collect()
}

pub fn abelianize_matrix(m: &[Vec<GroupRingElement>]) -> PolyMatrix {
    PolyMatrix::from_rows(m.iter().map(|row| row.iter().map(GroupRingElement::abelianize).collect()).collect())
}

/// The abelianized Jacobian together with the normalized
/// `det(I - ab psi'(beta))`, which is the Alexander polynomial in `z`.
pub fn abelianize_check(b: &BraidWord) -> Result<(PolyMatrix, LaurentPoly)> {
    b.require_knot()?;
    let ab = abelianize_matrix(&psi_matrix(b));
    let reduced = ab.minor_first();
    let d = PolyMatrix::identity(reduced.dim()).sub(&reduced).det();
    Ok((ab, normalize_alexander(&d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::deformed_burau::{classical_specialization, rho};
    use proptest::prelude::*;

    fn w(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn g(terms: &[(i64, &str)]) -> GroupRingElement {
        terms.iter().fold(GroupRingElement::zero(), |acc, &(c, s)| acc.add(&GroupRingElement::term(c, w(s))))
    }

    #[test]
    fn words() {
        assert_eq!(w("z1 z2 z2^-1 z1^-1"), FreeWord::identity());
        assert_eq!(w("z1 z2^-1").inverse(), w("z2 z1^-1"));
        assert_eq!(w("z3 z1^-1").to_string(), "z3 z1^-1");
        assert_eq!(FreeWord::from_ints(&[1, 2, -2, 3]).unwrap(), w("z1 z3"));
        assert!("z0".parse::<FreeWord>().is_err());
        assert!("x1".parse::<FreeWord>().is_err());
    }

    #[test]
    fn artin_examples() {
        let s1 = parse_braid("1", Some(2)).unwrap();
        assert_eq!(artin_action(&s1, 1).unwrap(), w("z1 z2 z1^-1"));
        assert_eq!(artin_action(&s1, 2).unwrap(), w("z1"));
        assert!(artin_action(&s1, 3).is_err());
        let s3 = parse_braid("1 1 1", None).unwrap();
        // three substitutions, freely reduced
        assert_eq!(artin_action(&s3, 2).unwrap(), w("z1 z2 z1 z2^-1 z1^-1"));
        assert_eq!(artin_action(&s3, 1).unwrap(), w("z1 z2 z1 z2 z1^-1 z2^-1 z1^-1"));
        // sigma sigma^-1 acts trivially
        let id = parse_braid("1 -1 2 -2", Some(3)).unwrap();
        assert_eq!(artin_images(&id), (1..=3).map(FreeWord::generator).collect::<Vec<_>>());
        // the product z_1 ... z_m is fixed by every braid
        let b = parse_braid("1 -2 1 -2", None).unwrap();
        let prod = artin_images(&b).iter().fold(FreeWord::identity(), |acc, x| acc.mul(x));
        assert_eq!(prod, w("z1 z2 z3"));
    }

    #[test]
    fn fox_examples() {
        assert_eq!(fox_derivative(&w("z1 z2 z1^-1"), 1), g(&[(1, "1"), (-1, "z1 z2 z1^-1")]));
        assert!(fox_derivative(&w("z1"), 2).is_zero());
        assert_eq!(fox_derivative(&w("z1^-1"), 1), g(&[(-1, "z1^-1")]));
        assert_eq!(fox_derivative(&w("z2 z2"), 2), g(&[(1, "1"), (1, "z2")]));
    }

    #[test]
    fn psi_examples() {
        let s1 = parse_braid("1", Some(2)).unwrap();
        let psi = psi_matrix(&s1);
        assert_eq!(psi[0][0], g(&[(1, "1"), (-1, "z1 z2 z1^-1")]));
        assert_eq!(psi[0][1], g(&[(1, "z1")]));
        assert_eq!(psi[1][0], g(&[(1, "1")]));
        assert!(psi[1][1].is_zero());
        let id = BraidWord::new(3, vec![]).unwrap();
        let psi = psi_matrix(&id);
        for (i, row) in psi.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j { GroupRingElement::one() } else { GroupRingElement::zero() };
                assert_eq!(*x, want);
            }
        }
        let ab = abelianize_matrix(&psi_matrix(&s1));
        assert_eq!(ab, PolyMatrix::from_rows(vec![vec![p("1 - z"), p("z")], vec![p("1"), p("0")]]));
    }

    #[test]
    fn relators_match_jacobian() {
        // d r_i / d z_j = psi_ij - delta_ij beta(z_i) z_i^{-1}
        let b = parse_braid("1 1 -2 1 2", None).unwrap();
        let rel = relators(&b);
        let psi = psi_matrix(&b);
        for (i, r) in rel.iter().enumerate() {
            for j in 1..=3 {
                let mut want = psi[i][j - 1].clone();
                if i + 1 == j {
                    want = want.sub(&GroupRingElement::from_word(r.clone()));
                }
                assert_eq!(fox_derivative(r, j), want);
            }
        }
    }

    #[test]
    fn burau_transpose() {
        for word in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2", "-1 2 2 -3 1 3"] {
            let b = parse_braid(word, None).unwrap();
            let ab = abelianize_matrix(&psi_matrix(&b.reversed()));
            let e = classical_specialization(&rho(&b)).map(|x| x.at_q_one());
            assert_eq!(ab, e.transpose(), "{word}");
        }
    }

    #[test]
    fn alexander_examples() {
        let alex = |s: &str| abelianize_check(&parse_braid(s, None).unwrap()).unwrap().1;
        assert_eq!(alex("1 1 1"), p("z^-1 - 1 + z"));
        assert_eq!(alex("1"), p("1"));
        assert_eq!(alex("1 -2 1 -2"), p("-z^-1 + 3 - z"));
        assert!(abelianize_check(&parse_braid("1 1", None).unwrap()).is_err());
    }

    fn word_strategy(m: usize) -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((1..=m as i64, any::<bool>()), 0..12).prop_map(|v| {
            FreeWord::from_ints(&v.into_iter().map(|(g, s)| if s { g } else { -g }).collect::<Vec<_>>()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn fundamental_identity(x in word_strategy(3)) {
            let mut lhs = GroupRingElement::zero();
            for j in 1..=3 {
                let zj = GroupRingElement::from_word(FreeWord::generator(j)).sub(&GroupRingElement::one());
                lhs = lhs.add(&fox_derivative(&x, j).mul(&zj));
            }
            prop_assert_eq!(lhs, GroupRingElement::from_word(x.clone()).sub(&GroupRingElement::one()));
        }

        #[test]
        fn product_rule(x in word_strategy(3), y in word_strategy(3)) {
            for j in 1..=3 {
                let want = fox_derivative(&x, j).add(&fox_derivative(&y, j).left_mul(&x));
                prop_assert_eq!(fox_derivative(&x.mul(&y), j), want);
            }
        }

        #[test]
        fn psi_chain_rule(x in prop::collection::vec(-2i64..=2, 1..5), y in prop::collection::vec(-2i64..=2, 1..5)) {
            // psi(xy) = y(psi(x)) psi(y) for the action in word order
            let word = |v: &[i64]| BraidWord::from_ints(3, &v.iter().copied().filter(|&g| g != 0).collect::<Vec<_>>()).unwrap();
            let (bx, by) = (word(&x), word(&y));
            let both = BraidWord::new(3, bx.crossings().iter().chain(by.crossings()).copied().collect()).unwrap();
            let (px, py, pxy) = (psi_matrix(&bx), psi_matrix(&by), psi_matrix(&both));
            let images = artin_images(&by);
            for i in 0..3 {
                for j in 0..3 {
                    let mut want = GroupRingElement::zero();
                    for k in 0..3 {
                        want = want.add(&px[i][k].substitute(&images).mul(&py[k][j]));
                    }
                    prop_assert_eq!(&pxy[i][j], &want);
                }
            }
        }

        #[test]
        fn augmentation_is_multiplicative(x in word_strategy(2), y in word_strategy(2)) {
            let a = fox_derivative(&x, 1).add(&GroupRingElement::term(2, y.clone()));
            let b = fox_derivative(&y, 2);
            prop_assert_eq!(a.mul(&b).augmentation(), a.augmentation() * b.augmentation());
        }
    }
}
