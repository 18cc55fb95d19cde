//! Partitions, fillings and semistandard tableaux.
//!
//! Entries are 1-based: a filling with ambient rank `n` uses labels `1..=n`.
//! Partitions are stored without trailing zeros, so `(2,1)` and `(2,1,0)`
//! compare equal.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Box label. Ranks above 255 are far outside anything this crate can
/// compute with, so a byte is enough.
pub type Entry = u8;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The nonzero parts.
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether the Young diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Whether removing the last box of (1-based) `row` leaves a partition.
    pub fn can_remove_from(&self, row: usize) -> bool {
        row >= 1 && self.part(row - 1) > 0 && self.part(row - 1) > self.part(row)
    }

    /// The partition with one box removed from (1-based) `row`.
    pub fn remove_box(&self, row: usize) -> Result<Partition> {
        if !self.can_remove_from(row) {
            return Err(Error::NotRemovable {
                row,
                shape: self.0.clone(),
            });
        }
        let mut parts = self.0.clone();
        parts[row - 1] -= 1;
        Partition::new(parts)
    }

    /// Parts padded with zeros to length `n` (or longer if the partition is).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.0.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        v
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// An assignment of labels `1..=n` to the boxes of a Young diagram.
///
/// Row lengths must be weakly decreasing; the shape is read off from them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filling {
    rows: Vec<Vec<Entry>>,
    n: usize,
}

impl Filling {
    pub fn new(rows: Vec<Vec<Entry>>, n: usize) -> Result<Self> {
        if n > Entry::MAX as usize {
            return Err(Error::InvalidFilling(format!("rank {n} too large")));
        }
        let mut rows = rows;
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidFilling(format!(
                "row lengths of {rows:?} are not a partition"
            )));
        }
        if let Some(&e) = rows.iter().flatten().find(|&&e| e == 0 || e as usize > n) {
            return Err(Error::InvalidFilling(format!("entry {e} outside 1..={n}")));
        }
        Ok(Filling { rows, n })
    }

    /// Builds a filling from rows that are already known to be valid.
    pub(crate) fn from_rows_unchecked(mut rows: Vec<Vec<Entry>>, n: usize) -> Self {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        debug_assert!(Filling::new(rows.clone(), n).is_ok(), "bad filling {rows:?}");
        Filling { rows, n }
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn weight(&self) -> Weight {
        let mut m = vec![0; self.n];
        for &e in self.rows.iter().flatten() {
            m[e as usize - 1] += 1;
        }
        Weight(m)
    }

    /// Sorts each row, giving the canonical representative under row permutations.
    pub fn row_sorted(&self) -> Filling {
        let mut rows = self.rows.clone();
        for r in &mut rows {
            r.sort_unstable();
        }
        Filling { rows, n: self.n }
    }

    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self
            .rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above < below));
        rows_ok && cols_ok
    }

    pub fn into_rows(self) -> Vec<Vec<Entry>> {
        self.rows
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.rows, 0)
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<Entry>], shift: u8) -> fmt::Result {
    write!(f, "[")?;
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for (j, e) in r.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e - shift)?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// A semistandard Young tableau: rows weakly increase, columns strictly increase.
///
/// Tableaux of a common shape are ordered lexicographically by their row
/// reading word, which is the derived order on the rows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau(Filling);

impl Tableau {
    pub fn new(rows: Vec<Vec<Entry>>, n: usize) -> Result<Self> {
        Tableau::try_from(Filling::new(rows, n)?)
    }

    pub(crate) fn from_filling_unchecked(f: Filling) -> Self {
        debug_assert!(f.is_semistandard());
        Tableau(f)
    }

    pub fn as_filling(&self) -> &Filling {
        &self.0
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        self.0.rows()
    }

    pub fn shape(&self) -> Partition {
        self.0.shape()
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }

    pub fn weight(&self) -> Weight {
        self.0.weight()
    }

    /// Display with labels shifted to `0..n`, the convention of Macaulay2's
    /// `standardTableaux`.
    pub fn zero_based(&self) -> ZeroBased<'_> {
        ZeroBased(self)
    }
}

impl TryFrom<Filling> for Tableau {
    type Error = Error;
    fn try_from(f: Filling) -> Result<Self> {
        if f.is_semistandard() {
            Ok(Tableau(f))
        } else {
            Err(Error::InvalidFilling(format!("{f} is not semistandard")))
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub struct ZeroBased<'a>(&'a Tableau);

impl fmt::Display for ZeroBased<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.0.rows(), 1)
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// Torus weight: `multiplicities[i]` counts the boxes labelled `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weight(pub Vec<usize>);

impl Weight {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

pub fn weight(f: &Filling) -> Weight {
    f.weight()
}

/// All semistandard tableaux of `shape` with labels in `1..=n`, sorted by
/// row reading word. Empty when the shape has more than `n` rows.
pub fn enumerate_ssyt(shape: &Partition, n: usize) -> Vec<Tableau> {
    if shape.length() > n || n > Entry::MAX as usize {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Entry>> = shape.parts().iter().map(|&l| Vec::with_capacity(l)).collect();
    let mut out = Vec::new();
    fill_box(shape.parts(), n as Entry, 0, &mut rows, &mut out);
    out
}

fn fill_box(shape: &[usize], n: Entry, flat: usize, rows: &mut Vec<Vec<Entry>>, out: &mut Vec<Tableau>) {
    // Locate the box with flat index `flat` in row-major order.
    let mut r = 0;
    let mut rem = flat;
    while r < shape.len() && rem >= shape[r] {
        rem -= shape[r];
        r += 1;
    }
    if r == shape.len() {
        let n = n as usize;
        out.push(Tableau::from_filling_unchecked(Filling::from_rows_unchecked(
            rows.clone(),
            n,
        )));
        return;
    }
    let c = rem;
    let left = if c > 0 { rows[r][c - 1] } else { 1 };
    let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
    let lo = left.max(above);
    // Boxes below in this column need room for strictly increasing labels.
    let below = shape[r + 1..].iter().take_while(|&&l| l > c).count();
    let hi = n as usize - below;
    for v in lo as usize..=hi {
        rows[r].push(v as Entry);
        fill_box(shape, n, flat + 1, rows, out);
        rows[r].pop();
    }
}

/// Dimension of the Schur module of highest weight `shape` on `Q^n`, by the
/// Weyl product formula `prod_{i<j} (l_i - l_j + j - i) / (j - i)`.
pub fn dimension(shape: &Partition, n: usize) -> usize {
    if shape.length() > n {
        return 0;
    }
    let l = shape.padded(n);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigUint::from(l[i] - l[j] + j - i);
            den *= BigUint::from(j - i);
        }
    }
    (num / den).to_usize().expect("dimension overflows usize")
}

/// Partitions with at most `n` parts obtained from `shape` by adding a
/// horizontal strip of `d` boxes (no two in the same column).
pub fn pieri_expand(d: usize, shape: &Partition, n: usize) -> Vec<Partition> {
    if shape.length() > n {
        return Vec::new();
    }
    let lam = shape.padded(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    strip_rows(&lam, d, &mut cur, &mut out);
    out
}

fn strip_rows(lam: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    let i = cur.len();
    if i == lam.len() {
        if left == 0 {
            out.push(Partition::new(cur.clone()).expect("interlacing sequences are partitions"));
        }
        return;
    }
    // Row i may grow up to the old length of row i-1 (row 0 unbounded).
    let cap = if i == 0 {
        lam[0] + left
    } else {
        lam[i - 1].min(lam[i] + left)
    };
    for m in (lam[i]..=cap).rev() {
        cur.push(m);
        strip_rows(lam, left - (m - lam[i]), cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_normalizes_trailing_zeros() {
        assert_eq!(p(&[2, 1, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[0]).size(), 0);
    }

    #[test]
    fn ssyt_counts() {
        assert_eq!(enumerate_ssyt(&p(&[2, 1]), 3).len(), 8);
        assert_eq!(enumerate_ssyt(&p(&[3, 1]), 3).len(), 15);
        assert_eq!(enumerate_ssyt(&p(&[3, 3]), 3).len(), 10);
        assert_eq!(enumerate_ssyt(&p(&[3, 3, 2]), 3).len(), 3);
        assert!(enumerate_ssyt(&p(&[1, 1, 1, 1]), 3).is_empty());
    }

    #[test]
    fn one_box_basis() {
        let b = enumerate_ssyt(&p(&[1]), 3);
        let rows: Vec<_> = b.iter().map(|t| t.rows().to_vec()).collect();
        assert_eq!(rows, vec![vec![vec![1]], vec![vec![2]], vec![vec![3]]]);
    }

    #[test]
    fn ssyt_sorted_and_distinct() {
        for shape in [p(&[2, 1]), p(&[3, 1]), p(&[2, 2, 1])] {
            let b = enumerate_ssyt(&shape, 4);
            assert!(b.windows(2).all(|w| w[0] < w[1]));
            assert!(b.iter().all(|t| t.as_filling().is_semistandard()));
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&p(&[2, 1]), 3), 8);
        assert_eq!(dimension(&p(&[3, 3, 2]), 3), 3);
        assert_eq!(dimension(&p(&[]), 5), 1);
        assert_eq!(dimension(&p(&[1, 1, 1, 1]), 3), 0);
    }

    #[test]
    fn pieri_expand_examples() {
        let got = pieri_expand(1, &p(&[2, 1]), 3);
        let want = vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])];
        assert_eq!(got, want);
        assert_eq!(pieri_expand(0, &p(&[2, 1]), 3), vec![p(&[2, 1])]);
        assert_eq!(pieri_expand(2, &p(&[]), 2), vec![p(&[2])]);
        // No room for a third row when n = 2.
        assert_eq!(pieri_expand(1, &p(&[1, 1]), 2), vec![p(&[2, 1])]);
    }

    #[test]
    fn weights() {
        let f = Filling::new(vec![vec![1, 2], vec![2]], 3).unwrap();
        assert_eq!(f.weight(), Weight(vec![1, 2, 0]));
        let f = Filling::new(vec![vec![1, 1], vec![3]], 3).unwrap();
        assert_eq!(weight(&f), Weight(vec![2, 0, 1]));
    }

    #[test]
    fn zero_based_display() {
        let t = Tableau::new(vec![vec![1, 1, 1], vec![2]], 3).unwrap();
        assert_eq!(t.zero_based().to_string(), "[[0,0,0],[1]]");
        assert_eq!(t.to_string(), "[[1,1,1],[2]]");
    }

    #[test]
    fn filling_validation() {
        assert!(Filling::new(vec![vec![1], vec![1, 2]], 3).is_err());
        assert!(Filling::new(vec![vec![4]], 3).is_err());
        assert!(Filling::new(vec![vec![0]], 3).is_err());
        assert!(Tableau::new(vec![vec![2, 1]], 3).is_err());
        assert!(Tableau::new(vec![vec![1], vec![1]], 3).is_err());
    }

    #[test]
    fn partition_json() {
        let s = serde_json::to_string(&p(&[3, 1])).unwrap();
        assert_eq!(s, "[3,1]");
        let back: Partition = serde_json::from_str("[3,1,0]").unwrap();
        assert_eq!(back, p(&[3, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
