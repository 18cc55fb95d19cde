//! Dense matrices over exact scalars and the elimination routines behind
//! rank, kernel and cokernel computations.
//!
//! Rank over `QQ`/`ZZ` uses fraction-free (Bareiss) elimination on integer
//! rows. Echelon bases over `QQ` use Gauss-Jordan on rationals, over `ZZ/p`
//! plain modular elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::scalar::{mul_mod, pow_mod, Domain, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarMatrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            domain,
            rows,
            cols,
            data: vec![Scalar::zero(domain); rows * cols],
        }
    }

    pub fn identity(domain: Domain, n: usize) -> Self {
        let mut m = ScalarMatrix::zeros(domain, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(domain));
        }
        m
    }

    pub fn from_rows(domain: Domain, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if let Some(s) = rows.iter().flatten().find(|s| s.domain() != domain) {
            return Err(Error::DomainMismatch(domain, s.domain()));
        }
        Ok(ScalarMatrix {
            domain,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(domain: Domain, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(domain, v)).collect())
            .collect();
        ScalarMatrix::from_rows(domain, rows).expect("rectangular input")
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.domain(), self.domain);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(self.domain, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        let mut out = ScalarMatrix::zeros(self.domain, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exact rank. Fraction-free elimination over `QQ` and `ZZ`, modular
    /// elimination over `ZZ/p`.
    pub fn rank(&self) -> usize {
        match self.domain {
            Domain::Modular(p) => {
                let f = PrimeField(p);
                let rows = to_field_rows(&f, self);
                echelonize(&f, rows, false).pivots.len()
            }
            Domain::Rational | Domain::Integer => bareiss_rank(self.integer_rows()),
        }
    }

    /// Rank of the reduction mod `p` of a rational matrix. This is a lower
    /// bound for the rational rank. `None` when some entry has a denominator
    /// divisible by `p`.
    pub fn rank_mod(&self, p: u64) -> Option<usize> {
        let f = PrimeField(p);
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for s in self.row(r) {
                match s.convert(Domain::Modular(p)) {
                    Ok(Scalar::Modular { value, .. }) => row.push(value),
                    _ => return None,
                }
            }
            rows.push(row);
        }
        Some(echelonize(&f, rows, false).pivots.len())
    }

    /// Rows scaled to primitive integer vectors (same row space over `QQ`).
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row: Vec<BigRational> = self
                    .row(r)
                    .iter()
                    .map(|s| s.to_rational().expect("rational entry"))
                    .collect();
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter()
                    .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    fn require_field(&self) -> Result<()> {
        if self.domain.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.domain))
        }
    }

    /// Basis of the null space `{v : Mv = 0}`, one vector per free column of
    /// the reduced echelon form.
    pub fn kernel(&self) -> Result<Vec<Vec<Scalar>>> {
        self.require_field()?;
        Ok(match self.domain {
            Domain::Modular(p) => kernel_basis(&PrimeField(p), self),
            _ => kernel_basis(&RationalField, self),
        })
    }

    /// Indices of standard basis vectors spanning a complement of the column
    /// space: the non-pivot positions of an echelon form of the image.
    pub fn cokernel_basis(&self) -> Result<Vec<usize>> {
        Ok(Quotient::new(self)?.complement().to_vec())
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "| {} |", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Minimal field interface for the elimination kernels.
pub(crate) trait Field {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn lift(&self, s: &Scalar) -> Self::Elem;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
}

pub(crate) struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        s.to_rational().expect("rational scalar")
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
}

pub(crate) struct PrimeField(pub u64);

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        pow_mod(*a, self.0 - 2, self.0)
    }
    fn lift(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Modular { value, .. } => *value,
            _ => panic!("expected a residue"),
        }
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Modular {
            value: *a,
            modulus: self.0,
        }
    }
}

fn kernel_basis<F: Field>(f: &F, m: &ScalarMatrix) -> Vec<Vec<Scalar>> {
    let cols = m.num_cols();
    let ech = echelonize(f, to_field_rows(f, m), true);
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        // Free variable set to 1; pivot variables solve the reduced rows.
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = f.neg(&row[free]);
        }
        basis.push(v.iter().map(|a| f.to_scalar(a)).collect());
    }
    basis
}

pub(crate) fn to_field_rows<F: Field>(f: &F, m: &ScalarMatrix) -> Vec<Vec<F::Elem>> {
    (0..m.num_rows())
        .map(|r| m.row(r).iter().map(|s| f.lift(s)).collect())
        .collect()
}

pub(crate) struct Echelon<E> {
    /// Nonzero rows, pivot entry normalized to 1.
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
}

/// Row echelon form with unit pivots; fully reduced when `reduce_above`.
pub(crate) fn echelonize<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>, reduce_above: bool) -> Echelon<F::Elem> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for v in rows[r].iter_mut().skip(c) {
            *v = f.mul(v, &inv);
        }
        let pivot_row = rows[r].clone();
        let targets: Box<dyn Iterator<Item = usize>> = if reduce_above {
            Box::new((0..rows.len()).filter(|&i| i != r))
        } else {
            Box::new(r + 1..rows.len())
        };
        for i in targets {
            if f.is_zero(&rows[i][c]) {
                continue;
            }
            let factor = rows[i][c].clone();
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if !f.is_zero(pv) {
                    rows[i][j] = f.sub(&rows[i][j], &f.mul(&factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

/// Fraction-free Gaussian elimination; returns the rank.
pub(crate) fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            for j in c + 1..cols {
                // Exact division by the previous pivot (Sylvester's identity).
                let v = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// The quotient of `k^rows` by the column space of a matrix, with the
/// complement of unit vectors at non-pivot positions as its basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    domain: Domain,
    dim: usize,
    // Reduced echelon basis of the image, as rows.
    image: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn new(m: &ScalarMatrix) -> Result<Quotient> {
        m.require_field()?;
        let t = m.transpose();
        let (image, pivots) = match m.domain() {
            Domain::Modular(p) => reduced_rows(&PrimeField(p), &t),
            _ => reduced_rows(&RationalField, &t),
        };
        let mut is_pivot = vec![false; m.num_rows()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let complement = (0..m.num_rows()).filter(|&i| !is_pivot[i]).collect();
        Ok(Quotient {
            domain: m.domain(),
            dim: m.num_rows(),
            image,
            pivots,
            complement,
        })
    }

    /// Quotient of `k^dim` by the zero subspace.
    pub fn trivial(domain: Domain, dim: usize) -> Quotient {
        Quotient {
            domain,
            dim,
            image: Vec::new(),
            pivots: Vec::new(),
            complement: (0..dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient positions whose unit vectors form the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.image.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[j] = &v[j] - &(&factor * x);
                }
            }
        }
        self.complement.iter().map(|&i| v[i].clone()).collect()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }
}

fn reduced_rows<F: Field>(f: &F, m: &ScalarMatrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let ech = echelonize(f, to_field_rows(f, m), true);
    let rows = ech
        .rows
        .iter()
        .map(|r| r.iter().map(|a| f.to_scalar(a)).collect())
        .collect();
    (rows, ech.pivots)
}

pub fn rank(m: &ScalarMatrix) -> usize {
    m.rank()
}

pub fn kernel(m: &ScalarMatrix) -> Result<Vec<Vec<Scalar>>> {
    m.kernel()
}

pub fn cokernel_basis(m: &ScalarMatrix) -> Result<Vec<usize>> {
    m.cokernel_basis()
}
