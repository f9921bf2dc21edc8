//! Matrices over `A_eps`: the deformed Burau blocks `S_+-`, their product
//! `rho(gamma)` along a braid word and the reduced matrix `rho'(gamma)`.

use std::fmt;

use crate::braid::{BraidWord, Sign};
use crate::error::{Error, Result};
use crate::exactpoly::{LaurentPoly, QExp};
use crate::qweyl::{eval_e, AlgebraElement, StrandSigns};

/// A square matrix with entries in `A_eps`. Indices are 1-based.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumMatrix {
    dim: usize,
    signs: StrandSigns,
    entries: Vec<AlgebraElement>,
}

impl QuantumMatrix {
    pub fn zero(dim: usize, signs: StrandSigns) -> Self {
        QuantumMatrix { dim, signs, entries: vec![AlgebraElement::zero(); dim * dim] }
    }

    pub fn identity(dim: usize, signs: StrandSigns) -> Self {
        let mut m = Self::zero(dim, signs);
        for i in 1..=dim {
            m.set(i, i, AlgebraElement::one());
        }
        m
    }

    pub fn from_rows(signs: StrandSigns, rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidArgument("matrix rows must form a square".into()));
        }
        Ok(QuantumMatrix { dim, signs, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn signs(&self) -> &StrandSigns {
        &self.signs
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, x: AlgebraElement) {
        self.entries[(i - 1) * self.dim + (j - 1)] = x;
    }

    pub fn mul(&self, rhs: &QuantumMatrix) -> QuantumMatrix {
        assert_eq!(self.dim, rhs.dim);
        let mut out = Self::zero(self.dim, self.signs.clone());
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                let mut acc = AlgebraElement::zero();
                for l in 1..=self.dim {
                    let (x, y) = (self.get(i, l), rhs.get(l, j));
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y, &self.signs));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Multiply every entry by the central scalar `c`.
    pub fn scale(&self, c: &LaurentPoly) -> QuantumMatrix {
        QuantumMatrix {
            dim: self.dim,
            signs: self.signs.clone(),
            entries: self.entries.iter().map(|x| x.scale(c)).collect(),
        }
    }

    /// Multiply every entry by `q^n`.
    pub fn scale_q(&self, n: i64) -> QuantumMatrix {
        self.scale(&LaurentPoly::qexp_pow(QExp::q(n)))
    }

    /// Principal submatrix on the given 1-based indices, in the given order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> QuantumMatrix {
        let mut out = Self::zero(idx.len(), self.signs.clone());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a + 1, b + 1, self.get(i, j).clone());
            }
        }
        out
    }
}

impl fmt::Display for QuantumMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dim {
            let row: Vec<String> = (1..=self.dim).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `S_{+,j} = [[a_j, b_j], [c_j, 0]]` or `S_{-,j} = [[0, c_j], [b_j, a_j]]`,
/// as a 2x2 matrix over `A_eps` for the given signs.
pub fn s_matrix(sign: Sign, j: usize, signs: &StrandSigns) -> QuantumMatrix {
    let (a, b, c) = (AlgebraElement::a(j), AlgebraElement::b(j), AlgebraElement::c(j));
    let rows = match sign {
        Sign::Pos => vec![vec![a, b], vec![c, AlgebraElement::zero()]],
        Sign::Neg => vec![vec![AlgebraElement::zero(), c], vec![b, a]],
    };
    QuantumMatrix::from_rows(signs.clone(), rows).expect("square")
}

pub fn strand_signs(b: &BraidWord) -> StrandSigns {
    StrandSigns::new(b.signs())
}

/// `rho(gamma) = A_1 A_2 ... A_k` where `A_j` places `S_{eps_j, j}` on rows
/// and columns `i_j, i_j + 1`.
pub fn rho(b: &BraidWord) -> QuantumMatrix {
    let signs = strand_signs(b);
    let m = b.strands();
    let mut acc = QuantumMatrix::identity(m, signs.clone());
    for (idx, cr) in b.crossings().iter().enumerate() {
        let j = idx + 1;
        let s = s_matrix(cr.sign, j, &signs);
        let g = cr.generator;
        // Right multiplication by A_j only touches columns g and g+1.
        let mut next = acc.clone();
        for i in 1..=m {
            for (col, sc) in [(g, 1), (g + 1, 2)] {
                let mut e = AlgebraElement::zero();
                for (row, sr) in [(g, 1), (g + 1, 2)] {
                    let (x, y) = (acc.get(i, row), s.get(sr, sc));
                    if !x.is_zero() && !y.is_zero() {
                        e = e.add(&x.mul(y, &signs));
                    }
                }
                next.set(i, col, e);
            }
        }
        acc = next;
    }
    acc
}

/// Drop the first row and column.
pub fn rho_prime(m: &QuantumMatrix) -> Result<QuantumMatrix> {
    if m.dim() < 2 {
        return Err(Error::DimensionTooSmall(m.dim()));
    }
    let idx: Vec<usize> = (2..=m.dim()).collect();
    Ok(m.principal_submatrix(&idx))
}

/// A failed right-quantum relation on the 2x2 submatrix with the given rows
/// and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
    pub relation: &'static str,
}

/// Check `ac = q ca`, `bd = q db` and `ad = da + q cb - q^{-1} bc` on every
/// 2x2 submatrix `[[a, b], [c, d]]`.
pub fn check_right_quantum(m: &QuantumMatrix) -> Vec<Violation> {
    let s = m.signs();
    let mut out = Vec::new();
    let n = m.dim();
    for i in 1..=n {
        for i2 in i + 1..=n {
            for j in 1..=n {
                for j2 in j + 1..=n {
                    let (a, b, c, d) = (m.get(i, j), m.get(i, j2), m.get(i2, j), m.get(i2, j2));
                    let mut fail = |relation| out.push(Violation { rows: (i, i2), cols: (j, j2), relation });
                    if a.mul(c, s) != c.mul(a, s).scale_q(1) {
                        fail("ac = q ca");
                    }
                    if b.mul(d, s) != d.mul(b, s).scale_q(1) {
                        fail("bd = q db");
                    }
                    let rhs = d.mul(a, s).add(&c.mul(b, s).scale_q(1)).sub(&b.mul(c, s).scale_q(-1));
                    if a.mul(d, s) != rhs {
                        fail("ad = da + q cb - q^-1 bc");
                    }
                }
            }
        }
    }
    out
}

/// A matrix over the commutative ring `Z[q^{+-1}, z^{+-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        PolyMatrix { dim, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = LaurentPoly::one();
        }
        PolyMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[(i - 1) * self.dim + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.entries.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let n = self.dim;
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 1..=n {
            for j in 1..=n {
                entries[(i - 1) * n + j - 1] = (1..=n).map(|l| self.get(i, l) * rhs.get(l, j)).sum();
            }
        }
        PolyMatrix { dim: n, entries }
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> PolyMatrix {
        PolyMatrix { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for j in 1..=n {
            for i in 1..=n {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { dim: n, entries }
    }

    /// Drop the first row and column.
    pub fn minor_first(&self) -> PolyMatrix {
        let rows = self.rows().into_iter().skip(1).map(|r| r.into_iter().skip(1).collect()).collect();
        PolyMatrix::from_rows(rows)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> PolyMatrix {
        PolyMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(&self) -> LaurentPoly {
        fn rec(m: &PolyMatrix, rows: &[usize], cols: &mut Vec<usize>) -> LaurentPoly {
            let Some((&r, rest)) = rows.split_first() else {
                return LaurentPoly::one();
            };
            let mut acc = LaurentPoly::zero();
            for k in 0..cols.len() {
                let c = cols[k];
                let e = m.get(r, c);
                if e.is_zero() {
                    continue;
                }
                cols.remove(k);
                let sub = e * rec(m, rest, cols);
                cols.insert(k, c);
                if k % 2 == 0 {
                    acc += &sub;
                } else {
                    acc -= &sub;
                }
            }
            acc
        }
        let rows: Vec<usize> = (1..=self.dim).collect();
        rec(self, &rows, &mut rows.clone())
    }
}

/// Entrywise `E`.
pub fn classical_specialization(m: &QuantumMatrix) -> PolyMatrix {
    let n = m.dim();
    let rows = (1..=n).map(|i| (1..=n).map(|j| eval_e(m.get(i, j), m.signs())).collect()).collect();
    PolyMatrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;
    use crate::qweyl::{GenPowers, NormalMonomial};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn s_matrices() {
        let signs = StrandSigns::new(vec![Sign::Pos, Sign::Neg]);
        let sp = s_matrix(Sign::Pos, 1, &signs);
        assert_eq!(sp.get(1, 1), &AlgebraElement::a(1));
        assert_eq!(sp.get(1, 2), &AlgebraElement::b(1));
        assert_eq!(sp.get(2, 1), &AlgebraElement::c(1));
        assert!(sp.get(2, 2).is_zero());
        let sm = s_matrix(Sign::Neg, 2, &signs);
        assert_eq!(sm.get(1, 2), &AlgebraElement::c(2));
        assert_eq!(sm.get(2, 1), &AlgebraElement::b(2));
        assert_eq!(sm.get(2, 2), &AlgebraElement::a(2));
        assert!(check_right_quantum(&sp).is_empty());
        assert!(check_right_quantum(&sm).is_empty());

        let ep = classical_specialization(&sp);
        let em = classical_specialization(&sm);
        assert_eq!(ep, PolyMatrix::from_rows(vec![vec![p("1 - z"), p("1")], vec![p("z"), p("0")]]));
        assert_eq!(em, PolyMatrix::from_rows(vec![vec![p("0"), p("z^-1")], vec![p("1"), p("1 - z^-1")]]));
        assert_eq!(ep.mul(&em), PolyMatrix::identity(2));
    }

    #[test]
    fn trefoil_rho_prime() {
        let b = parse_braid("1 1 1", None).unwrap();
        let r = rho_prime(&rho(&b)).unwrap();
        assert_eq!(r.dim(), 1);
        let m = NormalMonomial::from_factors(vec![
            (1, GenPowers::new(0, 1, 0)),
            (2, GenPowers::new(0, 0, 1)),
            (3, GenPowers::new(1, 0, 0)),
        ]);
        assert_eq!(r.get(1, 1), &AlgebraElement::from_monomial(m, LaurentPoly::one()));
    }

    #[test]
    fn trivial_products() {
        let b = parse_braid("", Some(2)).unwrap();
        assert_eq!(rho(&b), QuantumMatrix::identity(2, StrandSigns::new(vec![])));
        let b = parse_braid("1", None).unwrap();
        assert_eq!(rho(&b), s_matrix(Sign::Pos, 1, &strand_signs(&b)));
        let id = QuantumMatrix::identity(3, StrandSigns::new(vec![]));
        assert_eq!(rho_prime(&id).unwrap(), QuantumMatrix::identity(2, StrandSigns::new(vec![])));
        assert!(rho_prime(&QuantumMatrix::identity(1, StrandSigns::new(vec![]))).is_err());
        assert!(check_right_quantum(&id).is_empty());
    }

    #[test]
    fn right_quantum_products() {
        for w in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2", "-1 -1 -1"] {
            let b = parse_braid(w, None).unwrap();
            let r = rho(&b);
            assert!(check_right_quantum(&r).is_empty(), "{w}");
            assert!(check_right_quantum(&r.scale_q(1)).is_empty(), "{w}");
        }
    }

    #[test]
    fn right_quantum_detects_failure() {
        let signs = StrandSigns::new(vec![Sign::Pos]);
        let (a, c) = (AlgebraElement::a(1), AlgebraElement::c(1));
        let m = QuantumMatrix::from_rows(signs, vec![vec![c, AlgebraElement::zero()], vec![a, AlgebraElement::zero()]])
            .unwrap();
        assert!(!check_right_quantum(&m).is_empty());
    }

    #[test]
    fn specialization_is_multiplicative() {
        for w in ["1 1 1", "1 -2 1 -2", "1 1 1 2 -1 2"] {
            let b = parse_braid(w, None).unwrap();
            let signs = strand_signs(&b);
            let m = b.strands();
            let mut prod = PolyMatrix::identity(m);
            for (idx, cr) in b.crossings().iter().enumerate() {
                let s = classical_specialization(&s_matrix(cr.sign, idx + 1, &signs));
                let mut rows = PolyMatrix::identity(m).rows();
                let g = cr.generator;
                for (a, i) in [g, g + 1].into_iter().enumerate() {
                    for (bb, j) in [g, g + 1].into_iter().enumerate() {
                        rows[i - 1][j - 1] = s.get(a + 1, bb + 1).clone();
                    }
                }
                prod = prod.mul(&PolyMatrix::from_rows(rows));
            }
            assert_eq!(classical_specialization(&rho(&b)), prod, "{w}");
        }
    }

    #[test]
    fn laplace_det() {
        let m = PolyMatrix::from_rows(vec![
            vec![p("1"), p("2"), p("3")],
            vec![p("0"), p("z"), p("1")],
            vec![p("q"), p("0"), p("1")],
        ]);
        assert_eq!(m.det(), p("z + 2*q - 3*q*z"));
    }
}
