use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableaux::Tableau;

use super::matrix::ScalarMatrix;
use super::poly::{monomials_of_degree, Monomial, Polynomial};
use super::scalar::{is_prime, Domain, Scalar};

/// A degree-0 map of graded free modules `A(-col_degree)^cols -> A(-row_degree)^rows`
/// over `A = k[x_1..x_n]`, with tableau labels on both bases.
///
/// Every nonzero entry is homogeneous of degree `col_degree - row_degree`.
/// Bases may be left empty for matrices that are not indexed by tableaux.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    domain: Domain,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
    row_basis: Vec<Tableau>,
    col_basis: Vec<Tableau>,
    row_degree: i64,
    col_degree: i64,
}

impl PolyMatrix {
    pub fn new(
        n: usize,
        domain: Domain,
        row_basis: Vec<Tableau>,
        col_basis: Vec<Tableau>,
        row_degree: i64,
        col_degree: i64,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let rows = entries.len();
        let cols = if rows == 0 { col_basis.len() } else { entries[0].len() };
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged polynomial matrix".into()));
        }
        if (!row_basis.is_empty() && row_basis.len() != rows) || (!col_basis.is_empty() && col_basis.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} entries with {} row and {} column labels",
                row_basis.len(),
                col_basis.len()
            )));
        }
        let expected = col_degree - row_degree;
        for (r, row) in entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                if p.domain() != domain {
                    return Err(Error::DomainMismatch(domain, p.domain()));
                }
                if p.rank() != n {
                    return Err(Error::RankMismatch(n, p.rank()));
                }
                if !p.is_zero() && p.homogeneous_degree().map(i64::from) != Some(expected) {
                    return Err(Error::NotHomogeneous {
                        row: r,
                        col: c,
                        expected,
                    });
                }
            }
        }
        Ok(PolyMatrix {
            n,
            domain,
            rows,
            cols,
            entries: entries.into_iter().flatten().collect(),
            row_basis,
            col_basis,
            row_degree,
            col_degree,
        })
    }

    /// A matrix without tableau labels.
    pub fn unlabeled(
        n: usize,
        domain: Domain,
        row_degree: i64,
        col_degree: i64,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        PolyMatrix::new(n, domain, Vec::new(), Vec::new(), row_degree, col_degree, entries)
    }

    pub fn zero(
        n: usize,
        domain: Domain,
        row_basis: Vec<Tableau>,
        col_basis: Vec<Tableau>,
        row_degree: i64,
        col_degree: i64,
    ) -> Self {
        let entries = vec![vec![Polynomial::zero(n, domain); col_basis.len()]; row_basis.len()];
        PolyMatrix::new(n, domain, row_basis, col_basis, row_degree, col_degree, entries).expect("zero matrix is valid")
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row_basis(&self) -> &[Tableau] {
        &self.row_basis
    }

    pub fn col_basis(&self) -> &[Tableau] {
        &self.col_basis
    }

    pub fn row_degree(&self) -> i64 {
        self.row_degree
    }

    pub fn col_degree(&self) -> i64 {
        self.col_degree
    }

    /// Degree of every nonzero entry.
    pub fn entry_degree(&self) -> i64 {
        self.col_degree - self.row_degree
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Returns a copy with entry `(r, c)` replaced.
    pub fn with_entry(&self, r: usize, c: usize, p: Polynomial) -> Result<PolyMatrix> {
        let mut rows: Vec<Vec<Polynomial>> = self.rows().map(<[Polynomial]>::to_vec).collect();
        rows[r][c] = p;
        PolyMatrix::new(
            self.n,
            self.domain,
            self.row_basis.clone(),
            self.col_basis.clone(),
            self.row_degree,
            self.col_degree,
            rows,
        )
    }

    /// Composition `self ∘ other`: `other` maps into the source of `self`.
    pub fn compose(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        if self.col_degree != other.row_degree {
            return Err(Error::DimensionMismatch(format!(
                "generator degrees {} and {} do not match",
                self.col_degree, other.row_degree
            )));
        }
        let mut out = vec![vec![Polynomial::zero(self.n, self.domain); other.cols]; self.rows];
        for (i, row) in out.iter_mut().enumerate() {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in row.iter_mut().enumerate() {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *slot = slot.checked_add(&a.checked_mul(b)?)?;
                    }
                }
            }
        }
        PolyMatrix::new(
            self.n,
            self.domain,
            self.row_basis.clone(),
            other.col_basis.clone(),
            self.row_degree,
            other.col_degree,
            out,
        )
    }

    pub fn scale(&self, c: &Scalar) -> Result<PolyMatrix> {
        let rows = self
            .rows()
            .map(|r| r.iter().map(|p| p.checked_scale(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        PolyMatrix::new(
            self.n,
            self.domain,
            self.row_basis.clone(),
            self.col_basis.clone(),
            self.row_degree,
            self.col_degree,
            rows,
        )
    }

    /// Coefficient-wise conversion; terms that vanish are dropped.
    pub fn convert(&self, d: Domain) -> Result<PolyMatrix> {
        let rows = self
            .rows()
            .map(|r| r.iter().map(|p| p.convert(d)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        PolyMatrix::new(
            self.n,
            d,
            self.row_basis.clone(),
            self.col_basis.clone(),
            self.row_degree,
            self.col_degree,
            rows,
        )
    }

    /// The map on the degree-`e` graded component, in the bases
    /// `monomial x tableau` (monomial-major, monomials largest first).
    pub fn graded_piece(&self, e: i64) -> ScalarMatrix {
        let src = monomials_of_degree(self.n, e - self.col_degree);
        let tgt = monomials_of_degree(self.n, e - self.row_degree);
        let index: HashMap<&Monomial, usize> = tgt.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = ScalarMatrix::zeros(self.domain, tgt.len() * self.rows, src.len() * self.cols);
        for (si, m) in src.iter().enumerate() {
            for c in 0..self.cols {
                let col = si * self.cols + c;
                for r in 0..self.rows {
                    for (a, coeff) in self.get(r, c).terms() {
                        let row = index[&m.mul(a)] * self.rows + r;
                        let v = out.get(row, col) + coeff;
                        out.set(row, col, v);
                    }
                }
            }
        }
        out
    }

    /// Per-column integral form: each column is multiplied by the lcm of its
    /// coefficient denominators and divided by the gcd of the resulting
    /// numerators. Over `QQ` the column span is unchanged.
    pub fn clear_denominators_column(&self) -> Result<PolyMatrix> {
        if self.domain != Domain::Rational {
            return Err(Error::DomainMismatch(Domain::Rational, self.domain));
        }
        let mut rows: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(self.cols); self.rows];
        for c in 0..self.cols {
            let coeffs: Vec<BigRational> = (0..self.rows)
                .flat_map(|r| {
                    self.get(r, c)
                        .terms()
                        .map(|(_, s)| s.to_rational().expect("rational"))
                        .collect::<Vec<_>>()
                })
                .collect();
            let l = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let g = coeffs.iter().fold(BigInt::zero(), |acc, q| {
                acc.gcd(&(q * BigRational::from_integer(l.clone())).to_integer())
            });
            let factor = if g.is_zero() {
                BigRational::one()
            } else {
                BigRational::new(l, g.abs())
            };
            let factor = Scalar::Rational(factor);
            for (r, row) in rows.iter_mut().enumerate() {
                row.push(self.get(r, c).scale(&factor).convert(Domain::Integer)?);
            }
        }
        PolyMatrix::new(
            self.n,
            Domain::Integer,
            self.row_basis.clone(),
            self.col_basis.clone(),
            self.row_degree,
            self.col_degree,
            rows,
        )
    }

    /// Coefficient-wise reduction modulo the prime `p`.
    pub fn reduce_mod_p(&self, p: u64) -> Result<PolyMatrix> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        self.convert(Domain::Modular(p))
    }

    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("x{i}")).collect()
    }

    /// Plain-text display: entries in the polynomial grammar, columns aligned.
    pub fn to_text(&self) -> String {
        self.layout(|p| p.to_string())
    }

    /// Macaulay2-style bracketed display with variables `a, b, c, ...`.
    pub fn to_m2(&self) -> String {
        let vars: Vec<String> = (0..self.n)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("x{}", i + 1)
                }
            })
            .collect();
        self.layout(|p| p.to_m2_string(&vars))
    }

    fn layout(&self, cell: impl Fn(&Polynomial) -> String) -> String {
        let cells: Vec<Vec<String>> = self.rows().map(|r| r.iter().map(&cell).collect()).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            out.push_str("| ");
            out.push_str(padded.join(" ").trim_end());
            out.push_str(" |\n");
        }
        out
    }

    pub fn to_json(&self) -> PolyMatrixJson {
        PolyMatrixJson {
            ring: RingJson {
                n: self.n,
                char: self.domain.characteristic(),
                coefficients: self.domain.to_string(),
                vars: self.variable_names(),
            },
            row_basis: self.row_basis.iter().map(|t| t.rows().to_vec()).collect(),
            col_basis: self.col_basis.iter().map(|t| t.rows().to_vec()).collect(),
            row_degree: self.row_degree,
            col_degree: self.col_degree,
            entries: self
                .rows()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &PolyMatrixJson) -> Result<PolyMatrix> {
        let domain = match j.ring.coefficients.as_str() {
            "QQ" => Domain::Rational,
            "ZZ" => Domain::Integer,
            s => {
                let p = s
                    .strip_prefix("ZZ/")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown coefficient ring {s:?}")))?;
                Domain::modular(p)?
            }
        };
        let n = j.ring.n;
        let basis = |b: &[Vec<Vec<u8>>]| {
            b.iter()
                .map(|rows| Tableau::new(rows.clone(), n))
                .collect::<Result<Vec<_>>>()
        };
        let entries = j
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| Polynomial::parse(s, n, domain))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(
            n,
            domain,
            basis(&j.row_basis)?,
            basis(&j.col_basis)?,
            j.row_degree,
            j.col_degree,
            entries,
        )
    }
}

/// Serialized form of a [`PolyMatrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrixJson {
    pub ring: RingJson,
    pub row_basis: Vec<Vec<Vec<u8>>>,
    pub col_basis: Vec<Vec<Vec<u8>>>,
    pub row_degree: i64,
    pub col_degree: i64,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub n: usize,
    pub char: u64,
    pub coefficients: String,
    pub vars: Vec<String>,
}

pub fn graded_piece(m: &PolyMatrix, e: i64) -> ScalarMatrix {
    m.graded_piece(e)
}

pub fn clear_denominators_column(m: &PolyMatrix) -> Result<PolyMatrix> {
    m.clear_denominators_column()
}

pub fn reduce_mod_p(m: &PolyMatrix, p: u64) -> Result<PolyMatrix> {
    m.reduce_mod_p(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Domain = Domain::Rational;

    fn poly(s: &str, d: Domain) -> Polynomial {
        Polynomial::parse(s, 3, d).unwrap()
    }

    fn column(entries: &[&str], d: Domain) -> PolyMatrix {
        let rows = entries.iter().map(|s| vec![poly(s, d)]).collect();
        PolyMatrix::unlabeled(3, d, 0, 1, rows).unwrap()
    }

    #[test]
    fn rejects_inhomogeneous_entries() {
        let rows = vec![vec![poly("x1+x2^2", Q)]];
        assert!(matches!(
            PolyMatrix::unlabeled(3, Q, 0, 1, rows),
            Err(Error::NotHomogeneous { .. })
        ));
        let rows = vec![vec![poly("x1^2", Q)]];
        assert!(PolyMatrix::unlabeled(3, Q, 0, 1, rows).is_err());
    }

    #[test]
    fn graded_piece_of_a_variable() {
        let m = column(&["x1"], Q);
        let g = m.graded_piece(1);
        assert_eq!((g.num_rows(), g.num_cols()), (3, 1));
        assert_eq!(g.column(0), vec![Scalar::one(Q), Scalar::zero(Q), Scalar::zero(Q)]);
        let g0 = m.graded_piece(0);
        assert_eq!((g0.num_rows(), g0.num_cols()), (1, 0));
        assert_eq!(m.graded_piece(-1).num_rows(), 0);
    }

    #[test]
    fn zero_matrix_piece_is_zero() {
        let m = PolyMatrix::unlabeled(3, Q, 0, 2, vec![vec![Polynomial::zero(3, Q); 2]; 2]).unwrap();
        assert!(m.graded_piece(3).is_zero());
    }

    #[test]
    fn integral_columns() {
        let z = column(&["-1/2*x1", "x2"], Q).clear_denominators_column().unwrap();
        assert_eq!(z.domain(), Domain::Integer);
        assert_eq!(z.get(0, 0).to_string(), "-1*x1");
        assert_eq!(z.get(1, 0).to_string(), "2*x2");
        let z = column(&["2*x1", "4*x2"], Q).clear_denominators_column().unwrap();
        assert_eq!(
            (z.get(0, 0).to_string(), z.get(1, 0).to_string()),
            ("1*x1".into(), "2*x2".into())
        );
        let prim = column(&["x1", "-3*x2"], Q);
        assert_eq!(prim.clear_denominators_column().unwrap().convert(Q).unwrap(), prim);
        let zero = column(&["0", "0"], Q);
        assert!(zero.clear_denominators_column().unwrap().is_zero());
    }

    #[test]
    fn mod_p_reduction() {
        let z = Domain::Integer;
        let m = column(&["3*x1", "2*x1", "-x1"], z).reduce_mod_p(2).unwrap();
        let got: Vec<String> = (0..3).map(|r| m.get(r, 0).to_string()).collect();
        assert_eq!(got, ["1*x1", "0", "1*x1"]);
        assert_eq!(column(&["x1"], z).reduce_mod_p(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn json_round_trip() {
        let m = column(&["-1/2*x1", "x3"], Q);
        let j = serde_json::to_string(&m.to_json()).unwrap();
        let back: PolyMatrixJson = serde_json::from_str(&j).unwrap();
        assert_eq!(PolyMatrix::from_json(&back).unwrap(), m);
    }

    #[test]
    fn m2_layout() {
        let rows = vec![
            vec![poly("3*x1", Q), poly("0", Q)],
            vec![poly("0", Q), poly("-1/2*x1", Q)],
        ];
        let m = PolyMatrix::unlabeled(3, Q, 0, 1, rows).unwrap();
        assert_eq!(m.to_m2(), "| 3a 0 |\n| 0  -1/2a |\n");
    }
}
