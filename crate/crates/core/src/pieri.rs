//! Pieri inclusions `S_μ → Sym^r ⊗ S_λ` presented as matrices over the
//! polynomial ring, built one removed box at a time with Olver's formula.
//!
//! For a single box removed from row `k` of `μ`, the image of `1 ⊗ T` is
//!
//! ```text
//!     Σ_{J ∈ B_k} (-1)^{#J} τ_J(T) / c_J,   c_J = Π_{i=2}^{p-1} (μ_{j_i} - μ_k + k - j_i)
//! ```
//!
//! where `B_k` runs over index chains `0 = j_1 < ... < j_p = k` and
//! `τ_J = τ_{j_{p-1},j_p} ∘ ... ∘ τ_{j_1,j_2}` moves one box at a time up the
//! chain. Row 0 is the polynomial part: a box moved there multiplies the
//! monomial by the variable of its label. Several boxes are removed by
//! composing single-box maps.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{Domain, Monomial, PolyMatrix, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::schur::{lie_action, straighten, TableauVector};
use crate::tableaux::{enumerate_ssyt, Entry, Filling, Partition, Tableau};

/// A filling together with a "row 0" stored as a monomial. Rows need not
/// have partition shape while boxes are in transit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AugmentedFilling {
    pub monomial: Monomial,
    /// Rows `1, 2, ...`.
    pub rows: Vec<Vec<Entry>>,
}

impl AugmentedFilling {
    pub fn new(t: &Filling) -> Self {
        AugmentedFilling {
            monomial: Monomial::one(t.rank()),
            rows: t.rows().to_vec(),
        }
    }

    fn canonical(mut self) -> Self {
        for r in &mut self.rows {
            r.sort_unstable();
        }
        self
    }
}

/// `τ_{i,j}`: every way of taking one box (with its label) out of row `j`
/// and appending it to row `i`, one term per box. Rows are 1-based; `i = 0`
/// is the monomial.
pub fn tau(i: usize, j: usize, s: &AugmentedFilling) -> Vec<AugmentedFilling> {
    if i >= j || j == 0 || j > s.rows.len() {
        return Vec::new();
    }
    let src = &s.rows[j - 1];
    (0..src.len())
        .map(|pos| {
            let mut out = s.clone();
            let e = out.rows[j - 1].remove(pos);
            if i == 0 {
                out.monomial.mul_var(e as usize);
            } else {
                out.rows[i - 1].push(e);
            }
            out
        })
        .collect()
}

/// A chain `0 = j_1 < j_2 < ... < j_p = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathIndex(Vec<usize>);

impl PathIndex {
    pub fn new(j: Vec<usize>) -> Result<Self> {
        let ok = j.len() >= 2 && j[0] == 0 && j.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(PathIndex(j))
        } else {
            Err(Error::Parse(format!("{j:?} is not a chain starting at 0")))
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// `#J`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn end(&self) -> usize {
        *self.0.last().expect("chains are nonempty")
    }

    /// `(-1)^{#J}`.
    pub fn sign(&self) -> i64 {
        if self.0.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `c_J = Π_{i=2}^{p-1} (μ_{j_i} - μ_k + k - j_i)`; the empty product is 1.
    pub fn denominator(&self, mu: &Partition) -> BigInt {
        let k = self.end();
        let mu_k = mu.part(k - 1) as i64;
        self.0[1..self.0.len() - 1]
            .iter()
            .map(|&j| BigInt::from(mu.part(j - 1) as i64 - mu_k + k as i64 - j as i64))
            .product()
    }

    /// Applies `τ_J` to a single augmented filling.
    pub fn apply(&self, s: &AugmentedFilling) -> Vec<AugmentedFilling> {
        let mut cur = vec![s.clone()];
        for w in self.0.windows(2) {
            cur = cur.iter().flat_map(|x| tau(w[0], w[1], x)).collect();
        }
        cur
    }
}

/// All chains in `B_k`, ordered by their middle indices.
pub fn paths(k: usize) -> Vec<PathIndex> {
    let mut out = Vec::new();
    let middle: Vec<usize> = (1..k).collect();
    for mask in 0u64..(1u64 << middle.len()) {
        let mut j = vec![0];
        j.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &m)| m),
        );
        j.push(k);
        out.push(PathIndex(j));
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// The image of `1 ⊗ T` under the single-box map: a list of
/// `(monomial, filling of λ, coefficient)` before straightening, with
/// identical row-sorted terms merged.
pub fn olver_image(mu: &Partition, k: usize, t: &Filling) -> Vec<(Monomial, Filling, BigRational)> {
    let start = AugmentedFilling::new(t);
    let mut acc: HashMap<AugmentedFilling, BigRational> = HashMap::new();
    for j in paths(k) {
        let coeff = BigRational::new(BigInt::from(j.sign()), j.denominator(mu));
        for s in j.apply(&start) {
            *acc.entry(s.canonical()).or_insert_with(BigRational::zero) += &coeff;
        }
    }
    let n = t.rank();
    let mut out: Vec<_> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| (s.monomial, Filling::from_rows_unchecked(s.rows, n), c))
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    out
}

/// Olver's map `S_μ → A_1 ⊗ S_λ` for `λ = μ` minus a box in row `k`, as an
/// `A`-matrix with rows indexed by SSYT of `λ`, columns by SSYT of `μ`,
/// row degree 0 and column degree 1.
pub fn olver_map(mu: &Partition, k: usize, n: usize) -> Result<PolyMatrix> {
    if !mu.can_remove_from(k) || mu.length() > n {
        return Err(Error::NotRemovable {
            row: k,
            shape: mu.parts().to_vec(),
        });
    }
    let lambda = mu.remove_box(k)?;
    let source = enumerate_ssyt(mu, n);
    let target = enumerate_ssyt(&lambda, n);
    let index: HashMap<&Tableau, usize> = target.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let columns: Vec<Vec<Polynomial>> = source
        .par_iter()
        .map(|t| -> Result<Vec<Polynomial>> {
            let mut col = vec![Polynomial::zero(n, Domain::Rational); target.len()];
            for (m, f, c) in olver_image(mu, k, t.as_filling()) {
                for (u, v) in straighten(&f)?.terms() {
                    col[index[u]].add_term(m.clone(), &Scalar::Rational(&c * v));
                }
            }
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let rows = (0..target.len())
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    PolyMatrix::new(n, Domain::Rational, target, source, 0, 1, rows)
}

/// A sequence of single-box removals starting from `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalPlan {
    source: Partition,
    removals: Vec<usize>,
    n: usize,
    shapes: Vec<Partition>,
}

impl RemovalPlan {
    /// Validates every step, reporting the first one that does not leave a
    /// partition.
    pub fn new(source: Partition, removals: Vec<usize>, n: usize) -> Result<Self> {
        if source.length() > n {
            return Err(Error::InvalidRemovalPlan {
                step: 0,
                row: 0,
                shape: source.parts().to_vec(),
            });
        }
        let mut shapes = vec![source.clone()];
        for (step, &row) in removals.iter().enumerate() {
            let cur = shapes.last().expect("nonempty");
            if !cur.can_remove_from(row) {
                return Err(Error::InvalidRemovalPlan {
                    step: step + 1,
                    row,
                    shape: cur.parts().to_vec(),
                });
            }
            shapes.push(cur.remove_box(row)?);
        }
        Ok(RemovalPlan {
            source,
            removals,
            n,
            shapes,
        })
    }

    pub fn source(&self) -> &Partition {
        &self.source
    }

    pub fn removals(&self) -> &[usize] {
        &self.removals
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> &Partition {
        self.shapes.last().expect("nonempty")
    }

    /// Shapes before and after each step.
    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }
}

/// Composite of the single-box maps of `plan`: a map
/// `A(-r) ⊗ S_μ → A ⊗ S_λ` with `r` the number of removals.
pub fn pieri_map(plan: &RemovalPlan) -> Result<PolyMatrix> {
    let n = plan.rank();
    let r = plan.removals().len() as i64;
    let mut acc: Option<PolyMatrix> = None;
    for (step, &row) in plan.removals().iter().enumerate() {
        let shift = r - 1 - step as i64;
        let phi = shifted(&olver_map(&plan.shapes()[step], row, n)?, shift)?;
        acc = Some(match acc {
            None => phi,
            Some(prev) => phi.compose(&prev)?,
        });
    }
    match acc {
        Some(m) => Ok(m),
        None => {
            // No removals: the identity on S_μ.
            let basis = enumerate_ssyt(plan.source(), n);
            let one = Polynomial::constant(n, Scalar::one(Domain::Rational));
            let rows = (0..basis.len())
                .map(|i| {
                    (0..basis.len())
                        .map(|j| {
                            if i == j {
                                one.clone()
                            } else {
                                Polynomial::zero(n, Domain::Rational)
                            }
                        })
                        .collect()
                })
                .collect();
            PolyMatrix::new(n, Domain::Rational, basis.clone(), basis, 0, 0, rows)
        }
    }
}

/// Shifts both generator degrees by `s`.
pub fn shifted(m: &PolyMatrix, s: i64) -> Result<PolyMatrix> {
    let rows = m.rows().map(<[Polynomial]>::to_vec).collect();
    PolyMatrix::new(
        m.rank_n(),
        m.domain(),
        m.row_basis().to_vec(),
        m.col_basis().to_vec(),
        m.row_degree() + s,
        m.col_degree() + s,
        rows,
    )
}

/// Integral form with primitive columns, optionally reduced mod `p`.
pub fn zform(m: &PolyMatrix, p: Option<u64>) -> Result<PolyMatrix> {
    let z = m.clear_denominators_column()?;
    match p {
        Some(p) => z.reduce_mod_p(p),
        None => Ok(z),
    }
}

/// Removes the `p`-torsion of the cokernel that lives in the generator
/// degree: while the columns of an integral matrix become dependent mod `p`,
/// a dependency `Σ c_i v_i ≡ 0` with `c_j = 1` lets `v_j` be replaced by
/// `(Σ c_i v_i) / p`. The lattice spanned by the columns only grows, and
/// stays inside its rational span.
pub fn saturate_at(m: &PolyMatrix, p: u64) -> Result<PolyMatrix> {
    if m.domain() != Domain::Integer {
        return Err(Error::DomainMismatch(Domain::Integer, m.domain()));
    }
    let n = m.rank_n();
    let mut cols: Vec<Vec<Polynomial>> = (0..m.num_cols())
        .map(|c| (0..m.num_rows()).map(|r| m.get(r, c).clone()).collect())
        .collect();
    let inv_p = Scalar::rational(BigRational::new(BigInt::one(), BigInt::from(p)));
    loop {
        let cur = rebuild(m, &cols)?;
        let Some(v) = cur
            .reduce_mod_p(p)?
            .graded_piece(m.col_degree())
            .kernel()?
            .into_iter()
            .next()
        else {
            return Ok(cur);
        };
        let j = v
            .iter()
            .position(Scalar::is_one)
            .expect("kernel vectors have a unit free coordinate");
        let mut w = vec![Polynomial::zero(n, Domain::Rational); m.num_rows()];
        for (c, coeff) in v.iter().enumerate() {
            let Scalar::Modular { value, .. } = coeff else {
                unreachable!("mod p kernel")
            };
            if *value == 0 {
                continue;
            }
            let k = Scalar::from_int(Domain::Rational, *value as i64);
            for (acc, entry) in w.iter_mut().zip(&cols[c]) {
                *acc = acc.checked_add(&entry.convert(Domain::Rational)?.scale(&k))?;
            }
        }
        cols[j] = w
            .iter()
            .map(|q| q.scale(&inv_p).convert(Domain::Integer))
            .collect::<Result<_>>()?;
    }
}

fn rebuild(m: &PolyMatrix, cols: &[Vec<Polynomial>]) -> Result<PolyMatrix> {
    let rows = (0..m.num_rows())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    PolyMatrix::new(
        m.rank_n(),
        m.domain(),
        m.row_basis().to_vec(),
        m.col_basis().to_vec(),
        m.row_degree(),
        m.col_degree(),
        rows,
    )
}

/// Column-primitive integral form saturated at `p` and reduced mod `p`.
pub fn saturated_zform(m: &PolyMatrix, p: u64) -> Result<PolyMatrix> {
    Domain::modular(p)?;
    saturate_at(&m.clear_denominators_column()?, p)?.reduce_mod_p(p)
}

/// Weight bookkeeping: every monomial `x^a` in entry `(T', T)` satisfies
/// `wt(T) = wt(T') + a`. Matrices without tableau labels pass vacuously.
pub fn is_torus_equivariant(m: &PolyMatrix) -> bool {
    if m.row_basis().is_empty() || m.col_basis().is_empty() {
        return true;
    }
    for (r, row) in m.rows().enumerate() {
        let wr = m.row_basis()[r].weight();
        for (c, p) in row.iter().enumerate() {
            let wc = m.col_basis()[c].weight();
            for (mono, _) in p.terms() {
                let ok = mono
                    .exponents()
                    .iter()
                    .zip(wr.0.iter().zip(&wc.0))
                    .all(|(&a, (&x, &y))| x + a as usize == y);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether the map commutes with every `E_{a,b}` (`a != b`) of the Lie
/// algebra `gl_n`, acting on `A ⊗ S_λ` as a derivation. Over `QQ` this is
/// full `GL_n`-equivariance.
pub fn is_gl_equivariant(m: &PolyMatrix) -> Result<bool> {
    let n = m.rank_n();
    let src_index: HashMap<&Tableau, usize> = m.col_basis().iter().enumerate().map(|(i, t)| (t, i)).collect();
    for a in 1..=n {
        for b in (1..=n).filter(|&b| b != a) {
            for (c, t) in m.col_basis().iter().enumerate() {
                // E_ab applied before the map.
                let mut lhs: HashMap<(Tableau, Monomial), BigRational> = HashMap::new();
                let moved = lie_action(a, b, &TableauVector::basis(t.clone()))?;
                for (u, cu) in moved.terms() {
                    let j = src_index[u];
                    for (r, target) in m.row_basis().iter().enumerate() {
                        for (mono, s) in m.get(r, j).terms() {
                            let v = cu * s.to_rational().expect("rational matrix");
                            *lhs.entry((target.clone(), mono.clone()))
                                .or_insert_with(BigRational::zero) += v;
                        }
                    }
                }
                // E_ab applied after the map, as a derivation on both factors.
                let mut rhs: HashMap<(Tableau, Monomial), BigRational> = HashMap::new();
                for (r, target) in m.row_basis().iter().enumerate() {
                    for (mono, s) in m.get(r, c).terms() {
                        let s = s.to_rational().expect("rational matrix");
                        let eb = mono.exponents()[b - 1];
                        if eb > 0 {
                            let mut e = mono.exponents().to_vec();
                            e[b - 1] -= 1;
                            e[a - 1] += 1;
                            let key = (target.clone(), Monomial::new(e));
                            *rhs.entry(key).or_insert_with(BigRational::zero) +=
                                &s * BigRational::from_integer(eb.into());
                        }
                        for (u, cu) in lie_action(a, b, &TableauVector::basis(target.clone()))?.terms() {
                            *rhs.entry((u.clone(), mono.clone())).or_insert_with(BigRational::zero) += &s * cu;
                        }
                    }
                }
                lhs.retain(|_, v| !v.is_zero());
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// If `a = c * b` for a single nonzero rational `c`, returns `c`.
pub fn scalar_ratio(a: &PolyMatrix, b: &PolyMatrix) -> Option<BigRational> {
    if (a.num_rows(), a.num_cols()) != (b.num_rows(), b.num_cols()) {
        return None;
    }
    let mut ratio: Option<BigRational> = None;
    for (ra, rb) in a.rows().zip(b.rows()) {
        for (pa, pb) in ra.iter().zip(rb) {
            if pa.is_zero() != pb.is_zero() {
                return None;
            }
            for (m, cb) in pb.terms() {
                let ca = pa.coefficient(m).to_rational()?;
                let cb = cb.to_rational()?;
                let q = ca / cb;
                match &ratio {
                    None => ratio = Some(q),
                    Some(r) if *r == q => {}
                    Some(_) => return None,
                }
            }
            if pa.num_terms() != pb.num_terms() {
                return None;
            }
        }
    }
    ratio
        .filter(|r| !r.is_zero())
        .or_else(|| (a.is_zero() && b.is_zero()).then(BigRational::one))
}
