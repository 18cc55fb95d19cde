use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{coker_module, EquivariantComplex};
use crate::algebra::ScalarMatrix;
use crate::error::Result;

// Large prime for the modular rank certificate.
const CERT_PRIME: u64 = 2_147_483_647;

/// Outcome at one homological position `i` and graded degree `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessEntry {
    pub i: usize,
    pub e: i64,
    /// `dim (F_i)_e`
    pub expected_rank_sum: usize,
    /// `rank ∂_i + rank ∂_{i+1}` on degree `e`
    pub actual: usize,
}

impl ExactnessEntry {
    pub fn passed(&self) -> bool {
        self.expected_rank_sum == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub bound: i64,
    pub is_complex: bool,
    pub minimal: bool,
    pub entries: Vec<ExactnessEntry>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.is_complex && self.minimal && self.entries.iter().all(ExactnessEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ExactnessEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }
}

/// First degree where `coker ∂_1` vanishes, plus `n`.
pub fn default_bound(c: &EquivariantComplex) -> Result<i64> {
    let m = coker_module(c.map(1), None)?;
    Ok(m.top() + 1 + c.rank_n() as i64)
}

fn piece(c: &EquivariantComplex, i: usize, e: i64) -> Option<ScalarMatrix> {
    (i >= 1 && i <= c.rank_n()).then(|| c.map(i).graded_piece(e))
}

fn exact_rank(m: &Option<ScalarMatrix>) -> usize {
    m.as_ref().map_or(0, ScalarMatrix::rank)
}

/// Checks `rank ∂_i + rank ∂_{i+1} = dim (F_i)_e` for `1 <= i <= n` and every
/// degree up to `bound` where `(F_i)_e` is nonzero.
///
/// When the composites vanish, ranks mod a large prime that already add up
/// to `dim (F_i)_e` settle the position: they bound the rational ranks from
/// below, and `∂_i ∘ ∂_{i+1} = 0` bounds their sum from above. Otherwise the
/// ranks are recomputed exactly.
pub fn verify_exactness(c: &EquivariantComplex, bound: i64) -> Result<ExactnessReport> {
    let is_complex = c.is_complex()?;
    let n = c.rank_n();
    let jobs: Vec<(usize, i64)> = (1..=n)
        .flat_map(|i| (c.degrees().get(i)..=bound).map(move |e| (i, e)))
        .collect();
    let entries = jobs
        .into_par_iter()
        .map(|(i, e)| {
            let expected = c.piece_dim(i, e);
            let (out, inc) = (piece(c, i, e), piece(c, i + 1, e));
            let modular = match (&out, &inc) {
                (Some(a), b) if is_complex => {
                    let ra = a.rank_mod(CERT_PRIME);
                    let rb = b.as_ref().map_or(Some(0), |b| b.rank_mod(CERT_PRIME));
                    ra.zip(rb).map(|(x, y)| x + y)
                }
                _ => None,
            };
            let actual = match modular {
                Some(s) if s == expected => s,
                _ => exact_rank(&out) + exact_rank(&inc),
            };
            ExactnessEntry {
                i,
                e,
                expected_rank_sum: expected,
                actual,
            }
        })
        .collect();
    Ok(ExactnessReport {
        bound,
        is_complex,
        minimal: c.is_minimal(),
        entries,
    })
}
