//! Equivariant pure resolutions built from Pieri maps, their cokernels and
//! graded Betti tables.

mod betti;
mod exactness;
mod module;

use serde::{Deserialize, Serialize};

use crate::algebra::{Domain, PolyMatrix};
use crate::error::{Error, Result};
use crate::pieri::{pieri_map, saturated_zform, shifted, RemovalPlan};
use crate::tableaux::{dimension, Partition};

pub use betti::{betti_table, herzog_kuhl_check, herzog_kuhl_constant, BettiEntry, BettiJson, BettiTable};
pub use exactness::{default_bound, verify_exactness, ExactnessEntry, ExactnessReport};
pub use module::{coker_module, coker_module_through, residue_field, GradedModule};

/// A strictly increasing sequence `d_0 < d_1 < ... < d_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(d: impl Into<Vec<i64>>) -> Result<Self> {
        let d = d.into();
        if d.len() < 2 {
            return Err(Error::InvalidDegreeSequence(d, "need at least two degrees".into()));
        }
        if d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDegreeSequence(
                d,
                "degrees must be strictly increasing".into(),
            ));
        }
        Ok(DegreeSequence(d))
    }

    /// Number of variables, one less than the length.
    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// `prod_{j != i} |d_j - d_i|`
    pub fn hk_weight(&self, i: usize) -> u128 {
        let di = self.0[i];
        self.0
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &dj)| (dj - di).unsigned_abs() as u128)
            .product()
    }
}

impl TryFrom<Vec<i64>> for DegreeSequence {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DegreeSequence::new(v)
    }
}

impl From<DegreeSequence> for Vec<i64> {
    fn from(d: DegreeSequence) -> Self {
        d.0
    }
}

impl std::fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `alpha(d, j)`: start from `lambda_i = d_n - d_i - n + i` and widen row
/// `i` by `d_i - d_{i-1}` for every `i <= j`.
pub fn alpha(d: &DegreeSequence, j: usize) -> Result<Partition> {
    let n = d.rank();
    if j > n {
        return Err(Error::InvalidDegreeSequence(
            d.0.clone(),
            format!("index {j} exceeds rank {n}"),
        ));
    }
    let dn = d.get(n);
    let parts: Vec<usize> = (1..=n)
        .map(|i| {
            let mut p = dn - d.get(i) - n as i64 + i as i64;
            if i <= j {
                p += d.get(i) - d.get(i - 1);
            }
            p as usize
        })
        .collect();
    Partition::new(parts)
}

/// The differential `∂_i : A(-d_i) ⊗ S_{α(d,i)} → A(-d_{i-1}) ⊗ S_{α(d,i-1)}`
/// over `QQ`.
fn differential(d: &DegreeSequence, i: usize) -> Result<PolyMatrix> {
    let n = d.rank();
    let steps = (d.get(i) - d.get(i - 1)) as usize;
    let plan = RemovalPlan::new(alpha(d, i)?, vec![i; steps], n)?;
    shifted(&pieri_map(&plan)?, d.get(i - 1))
}

/// The presentation `∂_1` of `M(d)`. In characteristic `p > 0` this is the
/// column-primitive integral form with its `p`-torsion removed in the
/// generator degree, reduced mod `p`.
pub fn pure_free(d: &DegreeSequence, n: usize, ch: u64) -> Result<PolyMatrix> {
    if d.rank() != n {
        return Err(Error::InvalidDegreeSequence(
            d.0.clone(),
            format!("expected {} degrees for n = {n}", n + 1),
        ));
    }
    let m = differential(d, 1)?;
    match ch {
        0 => Ok(m),
        p => saturated_zform(&m, p),
    }
}

/// The complex `F(d)`: free modules `A(-d_i) ⊗ S_{α(d,i)}` and the Pieri
/// differentials between them, over `QQ`.
#[derive(Clone, Debug)]
pub struct EquivariantComplex {
    degrees: DegreeSequence,
    shapes: Vec<Partition>,
    maps: Vec<PolyMatrix>,
}

impl EquivariantComplex {
    /// Assembles a complex from explicit maps, `maps[i-1] = ∂_i`, checking
    /// that consecutive bases and degrees line up.
    pub fn from_maps(degrees: DegreeSequence, shapes: Vec<Partition>, maps: Vec<PolyMatrix>) -> Result<Self> {
        let n = degrees.rank();
        if shapes.len() != n + 1 || maps.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} shapes and {} maps for rank {n}",
                shapes.len(),
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.row_degree() != degrees.get(k) || m.col_degree() != degrees.get(k + 1) {
                return Err(Error::DimensionMismatch(format!(
                    "map {} has degrees {} -> {}",
                    k + 1,
                    m.col_degree(),
                    m.row_degree()
                )));
            }
            if k > 0 && maps[k - 1].col_basis() != m.row_basis() {
                return Err(Error::DimensionMismatch(format!(
                    "bases of maps {k} and {} disagree",
                    k + 1
                )));
            }
        }
        Ok(EquivariantComplex { degrees, shapes, maps })
    }

    pub fn degrees(&self) -> &DegreeSequence {
        &self.degrees
    }

    pub fn rank_n(&self) -> usize {
        self.degrees.rank()
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    /// `maps()[i-1]` is `∂_i`.
    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &PolyMatrix {
        &self.maps[i - 1]
    }

    /// Ranks of the free modules `F_0, ..., F_n`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![self.maps[0].num_rows()];
        r.extend(self.maps.iter().map(PolyMatrix::num_cols));
        r
    }

    /// Dimension of `(F_i)_e`.
    pub fn piece_dim(&self, i: usize, e: i64) -> usize {
        let rank = if i == 0 {
            self.maps[0].num_rows()
        } else {
            self.maps[i - 1].num_cols()
        };
        rank * crate::algebra::count_monomials(self.rank_n(), e - self.degrees.get(i))
    }

    /// Whether every composite `∂_i ∘ ∂_{i+1}` vanishes identically.
    pub fn is_complex(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].compose(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every differential has entries of positive degree.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.entry_degree() >= 1)
    }

    /// Replaces `∂_i`, keeping bases and degrees.
    pub fn with_map(&self, i: usize, m: PolyMatrix) -> Result<Self> {
        let mut maps = self.maps.clone();
        maps[i - 1] = m;
        EquivariantComplex::from_maps(self.degrees.clone(), self.shapes.clone(), maps)
    }
}

/// Builds all `n` differentials of `F(d)` over `QQ`.
pub fn build_complex(d: &DegreeSequence) -> Result<EquivariantComplex> {
    use rayon::prelude::*;
    let n = d.rank();
    let shapes = (0..=n).map(|j| alpha(d, j)).collect::<Result<Vec<_>>>()?;
    let maps = (1..=n)
        .into_par_iter()
        .map(|i| differential(d, i))
        .collect::<Result<Vec<_>>>()?;
    EquivariantComplex::from_maps(d.clone(), shapes, maps)
}

/// Ranks `dim S_{α(d,i)}` predicted by the Weyl dimension formula.
pub fn predicted_ranks(d: &DegreeSequence) -> Result<Vec<usize>> {
    let n = d.rank();
    (0..=n).map(|j| Ok(dimension(&alpha(d, j)?, n))).collect()
}

/// All strictly increasing sequences `0 = d_0 < ... < d_n <= top`.
pub fn degree_sequences(n: usize, top: i64) -> Vec<DegreeSequence> {
    fn go(n: usize, top: i64, cur: &mut Vec<i64>, out: &mut Vec<DegreeSequence>) {
        if cur.len() == n + 1 {
            out.push(DegreeSequence(cur.clone()));
            return;
        }
        let last = *cur.last().expect("starts at 0");
        let remaining = (n + 1 - cur.len()) as i64;
        for next in last + 1..=top - remaining + 1 {
            cur.push(next);
            go(n, top, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        go(n, top, &mut vec![0], &mut out);
    }
    out
}

/// One row of a sweep: the Betti table of the cokernel of `pure_free(d)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepEntry {
    pub degrees: DegreeSequence,
    pub characteristic: u64,
    pub betti: BettiJson,
    pub pure: bool,
    /// Herzog-Kühl multiple when the table is pure with degree sequence `d`.
    pub hk_constant: Option<u128>,
}

/// Betti table of `coker pure_free(d, n, ch)`. Characteristic zero modules
/// have finite length; in positive characteristic the cokernel may not, and
/// the table is then exact for internal degrees up to `d_n + 1`.
pub fn pure_free_betti(d: &DegreeSequence, ch: u64) -> Result<BettiTable> {
    let m = pure_free(d, d.rank(), ch)?;
    let top = d.get(d.rank()) + 2;
    let module = coker_module_through(&m, top)?;
    Ok(betti_table(&module))
}

/// Betti tables for every degree sequence with `d_0 = 0` and `d_n <= top`.
pub fn sweep(n: usize, top: i64, ch: u64) -> Result<Vec<SweepEntry>> {
    use rayon::prelude::*;
    if ch != 0 {
        Domain::modular(ch)?;
    }
    degree_sequences(n, top)
        .into_par_iter()
        .map(|d| {
            let table = pure_free_betti(&d, ch)?;
            let pure = table.degree_sequence().as_deref() == Some(d.degrees());
            let hk_constant = if pure { herzog_kuhl_constant(&table, &d)? } else { None };
            Ok(SweepEntry {
                degrees: d,
                characteristic: ch,
                betti: table.to_json(),
                pure,
                hk_constant,
            })
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            cur.push(s);
            go(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
