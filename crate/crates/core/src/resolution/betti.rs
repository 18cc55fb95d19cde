use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{subsets, DegreeSequence, GradedModule};
use crate::algebra::ScalarMatrix;
use crate::error::{Error, Result};

/// Graded Betti numbers `β_{i,j}`, stored sparsely.
///
/// `valid_through` is set when the table comes from a truncated module: only
/// internal degrees `j <= valid_through` are then known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
    valid_through: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub value: usize,
}

/// JSON form: nonzero entries ordered by `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub entries: Vec<BettiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid_through: Option<i64>,
}

impl BettiTable {
    pub fn new(entries: impl IntoIterator<Item = ((usize, i64), usize)>) -> Self {
        let entries = entries.into_iter().filter(|&(_, v)| v > 0).collect();
        BettiTable {
            entries,
            valid_through: None,
        }
    }

    /// The pure table with `β_{i,d_i} = values[i]`.
    pub fn pure(d: &DegreeSequence, values: &[usize]) -> Self {
        BettiTable::new(values.iter().enumerate().map(|(i, &v)| ((i, d.get(i)), v)))
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn valid_through(&self) -> Option<i64> {
        self.valid_through
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// At most one nonzero degree per homological index, with no gaps.
    pub fn is_pure(&self) -> bool {
        self.degree_sequence().is_some()
    }

    /// The degrees `(d_0, ..., d_p)` of a pure table.
    pub fn degree_sequence(&self) -> Option<Vec<i64>> {
        let top = self.max_index()?;
        let mut d = Vec::with_capacity(top + 1);
        for i in 0..=top {
            let mut js = self.entries.keys().filter(|k| k.0 == i).map(|k| k.1);
            let j = js.next()?;
            if js.next().is_some() {
                return None;
            }
            d.push(j);
        }
        Some(d)
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            entries: self.entries().map(|(i, j, value)| BettiEntry { i, j, value }).collect(),
            valid_through: self.valid_through,
        }
    }

    pub fn from_json(j: &BettiJson) -> Self {
        let mut t = BettiTable::new(j.entries.iter().map(|e| ((e.i, e.j), e.value)));
        t.valid_through = j.valid_through;
        t
    }

    /// The `betti` display: a `total:` row, then one row per `r = j - i`
    /// with dots for zeros.
    pub fn to_m2(&self) -> String {
        let Some(top) = self.max_index() else {
            return "total:\n".into();
        };
        let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min().expect("nonempty");
        let hi = self.entries.keys().map(|&(i, j)| j - i as i64).max().expect("nonempty");
        let mut grid: Vec<(String, Vec<String>)> = Vec::new();
        grid.push((String::new(), (0..=top).map(|i| i.to_string()).collect()));
        grid.push(("total:".into(), (0..=top).map(|i| self.total(i).to_string()).collect()));
        for r in lo..=hi {
            let cells = (0..=top)
                .map(|i| match self.get(i, r + i as i64) {
                    0 => ".".to_string(),
                    v => v.to_string(),
                })
                .collect();
            grid.push((format!("{r}:"), cells));
        }
        let label_w = grid.iter().map(|g| g.0.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..=top)
            .map(|c| grid.iter().map(|g| g.1[c].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for (label, cells) in &grid {
            let mut line = format!("{label:>label_w$}");
            for (cell, w) in cells.iter().zip(&widths) {
                line.push(' ');
                line.push_str(&format!("{cell:>w$}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        if let Some(v) = self.valid_through {
            out.push_str(&format!("(degrees j <= {v})\n"));
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_m2())
    }
}

/// Koszul differential `Λ^i ⊗ M_e → Λ^{i-1} ⊗ M_{e+1}`,
/// `e_S ⊗ v ↦ Σ_t (-1)^t e_{S∖s_t} ⊗ x_{s_t} v`.
fn koszul_differential(m: &GradedModule, i: usize, e: i64) -> Option<ScalarMatrix> {
    let n = m.rank_n();
    m.mult(e, 1)?;
    let (src, tgt) = (m.dim(e), m.dim(e + 1));
    let cols = subsets(n, i);
    let rows = subsets(n, i - 1);
    let row_index: std::collections::HashMap<&Vec<usize>, usize> =
        rows.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let mut d = ScalarMatrix::zeros(m.domain(), rows.len() * tgt, cols.len() * src);
    for (c, s) in cols.iter().enumerate() {
        for (t, &var) in s.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(t);
            let r0 = row_index[&rest] * tgt;
            let x = m.mult(e, var + 1).expect("checked above");
            for b in 0..src {
                for a in 0..tgt {
                    let v = x.get(a, b);
                    if !v.is_zero() {
                        let v = if t % 2 == 0 { v.clone() } else { -v };
                        d.set(r0 + a, c * src + b, v);
                    }
                }
            }
        }
    }
    Some(d)
}

/// `β_{i,j} = dim H_i(K(x) ⊗ M)_j`, the homology of the Koszul complex on
/// the variables. For a truncated module the table is exact for
/// `j <= top - 1` and entries beyond are omitted.
pub fn betti_table(m: &GradedModule) -> BettiTable {
    let n = m.rank_n();
    let degrees: Vec<i64> = (m.start()..=m.top()).collect();
    let jobs: Vec<(usize, i64)> = (1..=n).flat_map(|i| degrees.iter().map(move |&e| (i, e))).collect();
    let ranks: BTreeMap<(usize, i64), usize> = jobs
        .into_par_iter()
        .map(|(i, e)| {
            let r = if m.dim(e) == 0 || m.dim(e + 1) == 0 {
                0
            } else {
                koszul_differential(m, i, e).map_or(0, |d| d.rank())
            };
            ((i, e), r)
        })
        .collect();
    let rank = |i: usize, e: i64| ranks.get(&(i, e)).copied().unwrap_or(0);
    let limit = (!m.is_complete()).then(|| m.top() - 1);
    let mut entries = BTreeMap::new();
    for i in 0..=n {
        for &e in &degrees {
            let j = e + i as i64;
            if limit.is_some_and(|l| j > l) {
                continue;
            }
            let chain = binomial(n, i) * m.dim(e);
            let b = chain - rank(i, e) - rank(i + 1, e - 1);
            if b > 0 {
                entries.insert((i, j), b);
            }
        }
    }
    BettiTable {
        entries,
        valid_through: limit,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// The common value of `β_{i,d_i} ∏_{j≠i} |d_j - d_i|`, or `None` when the
/// products differ. Errors on tables that are not pure of degree `d`.
pub fn herzog_kuhl_constant(b: &BettiTable, d: &DegreeSequence) -> Result<Option<u128>> {
    let seq = b.degree_sequence().ok_or(Error::NotPure)?;
    if seq != d.degrees() {
        return Err(Error::InvalidDegreeSequence(
            d.degrees().to_vec(),
            format!("table is pure of degrees {seq:?}"),
        ));
    }
    let mut values = (0..seq.len()).map(|i| b.get(i, d.get(i)) as u128 * d.hk_weight(i));
    let first = values.next().expect("nonempty");
    Ok(values.all(|v| v == first).then_some(first))
}

/// Whether a pure table satisfies the Herzog-Kühl proportionality for `d`.
pub fn herzog_kuhl_check(b: &BettiTable, d: &DegreeSequence) -> Result<bool> {
    Ok(herzog_kuhl_constant(b, d)?.is_some())
}
