//! Schur (Weyl) modules presented by fillings modulo two relations: rows are
//! symmetric, and for every box `(i, j)` with a box below it the exchange
//! (shuffle) sum over `B = {(i,k) : k >= j} ∪ {(i+1,k) : k <= j}` vanishes.
//!
//! [`straighten`] rewrites any filling in the semistandard basis.
//! Coefficients are rational.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Domain, Scalar, ScalarMatrix};
use crate::error::{Error, Result};
use crate::tableaux::{Entry, Filling, Partition, Tableau};

/// A rational linear combination of semistandard tableaux of one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauVector {
    shape: Partition,
    n: usize,
    terms: BTreeMap<Tableau, BigRational>,
}

impl TableauVector {
    pub fn zero(shape: Partition, n: usize) -> Self {
        TableauVector {
            shape,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(t: Tableau) -> Self {
        let mut v = TableauVector::zero(t.shape(), t.rank());
        v.terms.insert(t, BigRational::one());
        v
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.n
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

    pub fn coefficient(&self, t: &Tableau) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tableau, &BigRational)> {
        self.terms.iter()
    }

    /// Adds `c * t`, pruning a coefficient that cancels to zero.
    pub fn add_term(&mut self, t: &Tableau, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(t.shape(), self.shape);
        match self.terms.get_mut(t) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(t);
                }
            }
            None => {
                self.terms.insert(t.clone(), c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TableauVector, c: &BigRational) {
        for (t, v) in &other.terms {
            self.add_term(t, &(v * c));
        }
    }

    pub fn scaled(&self, c: &BigRational) -> TableauVector {
        let mut out = TableauVector::zero(self.shape.clone(), self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(t, c)| TermJson {
                tableau: t.rows().to_vec(),
                coefficient: Scalar::Rational(c.clone()).to_string(),
            })
            .collect()
    }
}

impl fmt::Display for TableauVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let s = Scalar::Rational(c.clone()).to_string();
            match s.strip_prefix('-') {
                Some(m) => write!(f, "{}{m}*{t}", if k == 0 { "-" } else { " - " })?,
                None => write!(f, "{}{s}*{t}", if k == 0 { "" } else { " + " })?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub tableau: Vec<Vec<Entry>>,
    pub coefficient: String,
}

type Expansion = Arc<Vec<(Tableau, BigRational)>>;

/// Rewrites fillings in the semistandard basis, memoizing on row-sorted
/// fillings.
#[derive(Default)]
pub struct Straightener {
    memo: HashMap<Filling, Expansion>,
}

/// Recursion guard. Each rewrite strictly lowers the row reading word, so
/// this is never reached for valid input.
const MAX_DEPTH: usize = 4096;

impl Straightener {
    pub fn new() -> Self {
        Straightener::default()
    }

    pub fn straighten(&mut self, f: &Filling) -> Result<TableauVector> {
        let mut out = TableauVector::zero(f.shape(), f.rank());
        for (t, c) in self.expand(f.row_sorted(), 0)?.iter() {
            out.add_term(t, c);
        }
        Ok(out)
    }

    /// Expansion of a row-sorted filling, as a list with distinct tableaux.
    pub(crate) fn expand(&mut self, f: Filling, depth: usize) -> Result<Expansion> {
        if let Some(e) = self.memo.get(&f) {
            return Ok(Arc::clone(e));
        }
        if depth > MAX_DEPTH {
            return Err(Error::StraighteningDiverged(MAX_DEPTH));
        }
        let result = match first_violation(&f) {
            None => vec![(Tableau::from_filling_unchecked(f.clone()), BigRational::one())],
            Some((i, j)) => {
                let rewritten = solve_shuffle(&f, i, j);
                let mut acc: BTreeMap<Tableau, BigRational> = BTreeMap::new();
                for (g, c) in rewritten {
                    debug_assert!(g < f, "shuffle rewrite must lower the reading word");
                    for (t, v) in self.expand(g, depth + 1)?.iter() {
                        let e = acc.entry(t.clone()).or_insert_with(BigRational::zero);
                        *e += v * &c;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        let result = Arc::new(result);
        self.memo.insert(f, Arc::clone(&result));
        Ok(result)
    }
}

thread_local! {
    static STRAIGHTENER: RefCell<Straightener> = RefCell::new(Straightener::new());
}

/// Expansion of `f` in the semistandard basis of its shape.
pub fn straighten(f: &Filling) -> Result<TableauVector> {
    STRAIGHTENER.with(|s| s.borrow_mut().straighten(f))
}

/// Topmost, then leftmost, position `(i, j)` (0-based) where a row-sorted
/// filling fails column strictness between rows `i` and `i + 1`.
fn first_violation(f: &Filling) -> Option<(usize, usize)> {
    let rows = f.rows();
    (0..rows.len().saturating_sub(1)).find_map(|i| {
        (0..rows[i + 1].len())
            .find(|&j| rows[i][j] >= rows[i + 1][j])
            .map(|j| (i, j))
    })
}

/// All exchange terms of the shuffle relation at the 0-based box `(i, j)`,
/// row-sorted and merged, with multiplicities. The original filling is
/// among them.
fn exchange_terms(f: &Filling, i: usize, j: usize) -> HashMap<Filling, u64> {
    let rows = f.rows();
    let top = &rows[i][j..];
    let bottom = &rows[i + 1][..=j];
    let pool: Vec<Entry> = top.iter().chain(bottom).copied().collect();
    let mut out: HashMap<Filling, u64> = HashMap::new();
    for_each_subset(pool.len(), bottom.len(), &mut |chosen| {
        let mut new_top: Vec<Entry> = rows[i][..j].to_vec();
        let mut new_bottom: Vec<Entry> = Vec::with_capacity(rows[i + 1].len());
        for (k, &e) in pool.iter().enumerate() {
            if chosen[k] {
                new_bottom.push(e);
            } else {
                new_top.push(e);
            }
        }
        new_bottom.extend_from_slice(&rows[i + 1][j + 1..]);
        new_top.sort_unstable();
        new_bottom.sort_unstable();
        let mut all = rows.to_vec();
        all[i] = new_top;
        all[i + 1] = new_bottom;
        let mut g = Filling::from_rows_unchecked(all, f.rank());
        g = g.row_sorted();
        *out.entry(g).or_insert(0) += 1;
    });
    out
}

fn for_each_subset(n: usize, k: usize, visit: &mut dyn FnMut(&[bool])) {
    fn go(pos: usize, left: usize, mask: &mut Vec<bool>, visit: &mut dyn FnMut(&[bool])) {
        if left == 0 {
            visit(mask);
            return;
        }
        if mask.len() - pos < left {
            return;
        }
        mask[pos] = true;
        go(pos + 1, left - 1, mask, visit);
        mask[pos] = false;
        go(pos + 1, left, mask, visit);
    }
    let mut mask = vec![false; n];
    go(0, k, &mut mask, visit);
}

/// The shuffle relation at `(i, j)` solved for `f`: `f = sum c_g g` over the
/// other exchange terms.
fn solve_shuffle(f: &Filling, i: usize, j: usize) -> Vec<(Filling, BigRational)> {
    let target = f.row_sorted();
    let mut terms = exchange_terms(f, i, j);
    let self_mult = terms.remove(&target).expect("the identity exchange is always present");
    let denom = BigInt::from(self_mult);
    let mut out: Vec<(Filling, BigRational)> = terms
        .into_iter()
        .map(|(g, m)| (g, -BigRational::new(BigInt::from(m), denom.clone())))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The shuffle relation at the 1-based box `(i, j)` (which must have a box
/// below it), solved for `f`. Output fillings are row-sorted; an empty list
/// means the relation forces `f = 0`.
pub fn apply_shuffle(f: &Filling, i: usize, j: usize) -> Result<Vec<(Filling, Scalar)>> {
    let rows = f.rows();
    if i == 0 || j == 0 || i >= rows.len() || rows[i].len() < j {
        return Err(Error::InvalidBox {
            row: i,
            col: j,
            shape: f.shape().parts().to_vec(),
        });
    }
    Ok(solve_shuffle(f, i - 1, j - 1)
        .into_iter()
        .map(|(g, c)| (g, Scalar::Rational(c)))
        .collect())
}

/// An invertible `n x n` rational matrix acting on `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    g: Vec<Vec<BigRational>>,
}

impl GroupElement {
    pub fn new(g: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = g.len();
        if g.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("group element must be square".into()));
        }
        let m = ScalarMatrix::from_rows(
            Domain::Rational,
            g.iter()
                .map(|r| r.iter().cloned().map(Scalar::Rational).collect())
                .collect(),
        )?;
        if m.rank() != n {
            return Err(Error::Singular);
        }
        Ok(GroupElement { g })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        GroupElement::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let g = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        GroupElement { g }
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    /// Entry `g_{i,j}`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.g[i - 1][j - 1]
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        let n = self.rank();
        let g = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &self.g[i][k] * &other.g[k][j]).sum())
                    .collect()
            })
            .collect();
        GroupElement { g }
    }
}

/// `g · T = Σ_I g_{i_1 j_1} ... g_{i_m j_m} T_I`, extended linearly and
/// straightened.
pub fn gl_action(g: &GroupElement, v: &TableauVector) -> Result<TableauVector> {
    let n = v.rank();
    if g.rank() != n {
        return Err(Error::RankMismatch(n, g.rank()));
    }
    let mut out = TableauVector::zero(v.shape().clone(), n);
    for (t, c) in v.terms() {
        // Substitute row by row; sorting a finished row is the symmetric relation.
        let mut partial: HashMap<Vec<Vec<Entry>>, BigRational> = HashMap::new();
        partial.insert(Vec::new(), c.clone());
        for row in t.rows() {
            let mut rows_done: HashMap<Vec<Vec<Entry>>, BigRational> = HashMap::new();
            for (prefix, coeff) in partial {
                let mut cur: Vec<(Vec<Entry>, BigRational)> = vec![(Vec::new(), coeff)];
                for &j in row {
                    let mut next = Vec::with_capacity(cur.len() * n);
                    for (r, c) in &cur {
                        for i in 1..=n {
                            let gij = g.entry(i, j as usize);
                            if gij.is_zero() {
                                continue;
                            }
                            let mut r2 = r.clone();
                            r2.push(i as Entry);
                            next.push((r2, c * gij));
                        }
                    }
                    cur = next;
                }
                for (mut r, c) in cur {
                    r.sort_unstable();
                    let mut rows = prefix.clone();
                    rows.push(r);
                    *rows_done.entry(rows).or_insert_with(BigRational::zero) += c;
                }
            }
            partial = rows_done;
        }
        for (rows, c) in partial {
            if c.is_zero() {
                continue;
            }
            let s = straighten(&Filling::from_rows_unchecked(rows, n))?;
            out.add_scaled(&s, &c);
        }
    }
    Ok(out)
}

/// Action of the Lie algebra element `E_{a,b}` (1-based): the sum over boxes
/// labelled `b` of the filling with that label changed to `a`.
pub fn lie_action(a: usize, b: usize, v: &TableauVector) -> Result<TableauVector> {
    let mut out = TableauVector::zero(v.shape().clone(), v.rank());
    for (t, c) in v.terms() {
        for (r, row) in t.rows().iter().enumerate() {
            for (k, &e) in row.iter().enumerate() {
                if e as usize == b {
                    let mut rows = t.rows().to_vec();
                    rows[r][k] = a as Entry;
                    let s = straighten(&Filling::from_rows_unchecked(rows, v.rank()))?;
                    out.add_scaled(&s, c);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::enumerate_ssyt;

    fn filling(rows: &[&[Entry]], n: usize) -> Filling {
        Filling::new(rows.iter().map(|r| r.to_vec()).collect(), n).unwrap()
    }

    fn tab(rows: &[&[Entry]], n: usize) -> Tableau {
        Tableau::new(rows.iter().map(|r| r.to_vec()).collect(), n).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn half_from_the_shuffle_relation() {
        let v = straighten(&filling(&[&[2, 3], &[2]], 3)).unwrap();
        let mut want = TableauVector::zero(Partition::new(vec![2, 1]).unwrap(), 3);
        want.add_term(&tab(&[&[2, 2], &[3]], 3), &q(-1, 2));
        assert_eq!(v, want);
    }

    #[test]
    fn row_symmetry_sorts() {
        let v = straighten(&filling(&[&[2, 1]], 3)).unwrap();
        assert_eq!(v, TableauVector::basis(tab(&[&[1, 2]], 3)));
    }

    #[test]
    fn repeated_column_entry_vanishes() {
        assert!(straighten(&filling(&[&[1, 1], &[1]], 3)).unwrap().is_zero());
        assert!(straighten(&filling(&[&[1], &[1]], 2)).unwrap().is_zero());
    }

    #[test]
    fn apply_shuffle_examples() {
        let terms = apply_shuffle(&filling(&[&[2, 3], &[2]], 3), 1, 1).unwrap();
        assert_eq!(terms, vec![(filling(&[&[2, 2], &[3]], 3), Scalar::Rational(q(-1, 2)))]);
        assert!(apply_shuffle(&filling(&[&[1], &[1]], 2), 1, 1).unwrap().is_empty());
        assert!(apply_shuffle(&filling(&[&[1, 2], &[2]], 3), 1, 2).is_err());
        assert!(apply_shuffle(&filling(&[&[1, 2]], 3), 1, 1).is_err());
        // Valid on a column that is already strict: [[1],[2]] = [[2],[1]]·(-1).
        let t = apply_shuffle(&filling(&[&[1], &[2]], 2), 1, 1).unwrap();
        assert_eq!(t, vec![(filling(&[&[2], &[1]], 2), Scalar::Rational(q(-1, 1)))]);
    }

    #[test]
    fn antisymmetric_column() {
        let v = straighten(&filling(&[&[2], &[1]], 2)).unwrap();
        let mut want = TableauVector::zero(Partition::new(vec![1, 1]).unwrap(), 2);
        want.add_term(&tab(&[&[1], &[2]], 2), &q(-1, 1));
        assert_eq!(v, want);
    }

    #[test]
    fn basis_is_fixed() {
        for shape in [vec![2, 1], vec![2, 2], vec![3, 1, 1]] {
            for t in enumerate_ssyt(&Partition::new(shape).unwrap(), 3) {
                assert_eq!(straighten(t.as_filling()).unwrap(), TableauVector::basis(t.clone()));
            }
        }
    }

    #[test]
    fn gl_examples() {
        let swap = GroupElement::from_ints(&[&[0, 1], &[1, 0]]).unwrap();
        let v = TableauVector::basis(tab(&[&[1]], 2));
        assert_eq!(gl_action(&swap, &v).unwrap(), TableauVector::basis(tab(&[&[2]], 2)));
        let t = tab(&[&[1, 1], &[3]], 3);
        let diag = GroupElement::from_ints(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]).unwrap();
        let got = gl_action(&diag, &TableauVector::basis(t.clone())).unwrap();
        assert_eq!(got, TableauVector::basis(t.clone()).scaled(&q(20, 1)));
        let id = GroupElement::identity(3);
        assert_eq!(
            gl_action(&id, &TableauVector::basis(t.clone())).unwrap(),
            TableauVector::basis(t)
        );
        assert_eq!(GroupElement::from_ints(&[&[1, 2], &[2, 4]]), Err(Error::Singular));
    }

    #[test]
    fn json_terms() {
        let v = straighten(&filling(&[&[2, 3], &[2]], 3)).unwrap();
        assert_eq!(
            serde_json::to_string(&v.to_json()).unwrap(),
            r#"[{"tableau":[[2,2],[3]],"coefficient":"-1/2"}]"#
        );
    }
}
