use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{monomials_of_degree, Domain, Monomial, PolyMatrix, Quotient, Scalar, ScalarMatrix};
use crate::error::{Error, Result};

/// How far past the generator degree `coker_module` looks for vanishing
/// when no bound is given.
pub const DEFAULT_SPAN: i64 = 32;

/// A graded module over `k[x_1..x_n]` generated in its lowest degree, stored
/// as the vector spaces `M_e` and the multiplication maps between them.
///
/// A module is *complete* when it is known to vanish past its last stored
/// piece. Otherwise it is a truncation and nothing is claimed about higher
/// degrees.
#[derive(Clone, Debug)]
pub struct GradedModule {
    n: usize,
    domain: Domain,
    start: i64,
    dims: Vec<usize>,
    // labels[k][b] = (monomial, generator) whose class is basis vector b of piece k
    labels: Vec<Vec<(Monomial, usize)>>,
    // mult[k][s] : M_{start+k} -> M_{start+k+1}, multiplication by x_{s+1}
    mult: Vec<Vec<ScalarMatrix>>,
    complete: bool,
}

impl GradedModule {
    /// Assembles a module from its pieces. `mult` must hold one family of
    /// `n` maps per piece when `complete` (the last family maps to zero) and
    /// one fewer otherwise. Commutativity of the variables is checked.
    pub fn new(
        n: usize,
        domain: Domain,
        start: i64,
        dims: Vec<usize>,
        mult: Vec<Vec<ScalarMatrix>>,
        complete: bool,
    ) -> Result<Self> {
        if !domain.is_field() {
            return Err(Error::NotAField(domain));
        }
        let expected = if complete {
            dims.len()
        } else {
            dims.len().saturating_sub(1)
        };
        if mult.len() != expected {
            return Err(Error::DimensionMismatch(format!(
                "{} multiplication families for {} pieces",
                mult.len(),
                dims.len()
            )));
        }
        for (k, family) in mult.iter().enumerate() {
            let next = dims.get(k + 1).copied().unwrap_or(0);
            if family.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{} maps out of degree {}, expected {n}",
                    family.len(),
                    start + k as i64
                )));
            }
            if let Some(x) = family
                .iter()
                .find(|x| x.num_rows() != next || x.num_cols() != dims[k] || x.domain() != domain)
            {
                return Err(Error::DimensionMismatch(format!(
                    "map of size {}x{} out of degree {}",
                    x.num_rows(),
                    x.num_cols(),
                    start + k as i64
                )));
            }
        }
        let labels = dims.iter().map(|_| Vec::new()).collect();
        let m = GradedModule {
            n,
            domain,
            start,
            dims,
            labels,
            mult,
            complete,
        };
        if !m.variables_commute() {
            return Err(Error::DimensionMismatch("multiplication maps do not commute".into()));
        }
        Ok(m)
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Degree of the generators.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last stored degree, `start - 1` for the zero module.
    pub fn top(&self) -> i64 {
        self.start + self.dims.len() as i64 - 1
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `dim M_e`. Zero outside the stored range, which for a truncation only
    /// means "not computed".
    pub fn dim(&self, e: i64) -> usize {
        self.index(e).map_or(0, |k| self.dims[k])
    }

    /// `(e, dim M_e)` for every stored degree.
    pub fn hilbert_function(&self) -> Vec<(i64, usize)> {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| (self.start + k as i64, d))
            .collect()
    }

    /// Total dimension, known only for complete modules.
    pub fn total_dim(&self) -> Option<usize> {
        self.complete.then(|| self.dims.iter().sum())
    }

    /// Multiplication by `x_s` (1-based) out of degree `e`, when known.
    pub fn mult(&self, e: i64, s: usize) -> Option<&ScalarMatrix> {
        self.index(e).and_then(|k| self.mult.get(k)).map(|f| &f[s - 1])
    }

    /// Coset representatives of `M_e` as `(monomial, generator index)`;
    /// empty for modules assembled by hand.
    pub fn basis(&self, e: i64) -> &[(Monomial, usize)] {
        self.index(e).map_or(&[], |k| &self.labels[k])
    }

    fn index(&self, e: i64) -> Option<usize> {
        let k = e - self.start;
        (k >= 0 && (k as usize) < self.dims.len()).then_some(k as usize)
    }

    /// `x_a x_b = x_b x_a` wherever both composites are known.
    pub fn variables_commute(&self) -> bool {
        (0..self.mult.len().saturating_sub(1)).all(|k| {
            let (here, there) = (&self.mult[k], &self.mult[k + 1]);
            (0..self.n).all(|a| {
                (a + 1..self.n).all(|b| {
                    let ab = there[a].mul(&here[b]).expect("sizes checked");
                    let ba = there[b].mul(&here[a]).expect("sizes checked");
                    ab == ba
                })
            })
        })
    }
}

/// The residue field `k = A/(x_1..x_n)` in degree 0.
pub fn residue_field(n: usize, domain: Domain) -> Result<GradedModule> {
    let zero = (0..n).map(|_| ScalarMatrix::zeros(domain, 0, 1)).collect();
    GradedModule::new(n, domain, 0, vec![1], vec![zero], true)
}

/// `coker M` degree by degree until a piece vanishes. Fails if the piece in
/// degree `bound` (default: generator degree plus [`DEFAULT_SPAN`]) is still
/// nonzero.
pub fn coker_module(m: &PolyMatrix, bound: Option<i64>) -> Result<GradedModule> {
    let bound = bound.unwrap_or(m.row_degree() + DEFAULT_SPAN);
    let module = coker_module_through(m, bound)?;
    if module.complete {
        Ok(module)
    } else {
        Err(Error::NotFiniteLength(bound))
    }
}

/// `coker M` through degree `top`, complete if it vanished on the way and a
/// truncation otherwise.
pub fn coker_module_through(m: &PolyMatrix, top: i64) -> Result<GradedModule> {
    if !m.domain().is_field() {
        return Err(Error::NotAField(m.domain()));
    }
    // Every entry of a PolyMatrix is homogeneous of one degree, so the target
    // is generated in the single degree row_degree and a zero piece stays zero.
    let n = m.rank_n();
    let gens = m.num_rows();
    let start = m.row_degree();
    let mut quotients: Vec<Quotient> = Vec::new();
    let mut complete = false;
    for e in start..=top {
        let q = Quotient::new(&m.graded_piece(e))?;
        if q.dim() == 0 {
            complete = true;
            break;
        }
        quotients.push(q);
    }
    let monos: Vec<Vec<Monomial>> = (0..=quotients.len())
        .map(|k| monomials_of_degree(n, k as i64))
        .collect();
    let labels: Vec<Vec<(Monomial, usize)>> = quotients
        .iter()
        .zip(&monos)
        .map(|(q, ms)| {
            q.complement()
                .iter()
                .map(|&a| (ms[a / gens].clone(), a % gens))
                .collect()
        })
        .collect();
    let families = if complete {
        quotients.len()
    } else {
        quotients.len().saturating_sub(1)
    };
    let domain = m.domain();
    let mult = (0..families)
        .into_par_iter()
        .map(|k| {
            let next = quotients.get(k + 1);
            let index: HashMap<&Monomial, usize> = monos[k + 1].iter().enumerate().map(|(i, x)| (x, i)).collect();
            (1..=n)
                .map(|s| {
                    let rows = next.map_or(0, Quotient::dim);
                    let mut x = ScalarMatrix::zeros(domain, rows, labels[k].len());
                    if let Some(q) = next {
                        for (b, (mono, g)) in labels[k].iter().enumerate() {
                            let mut target = mono.clone();
                            target.mul_var(s);
                            let mut v = vec![Scalar::zero(domain); q.ambient_dim()];
                            v[index[&target] * gens + g] = Scalar::one(domain);
                            for (r, c) in q.reduce(&v).into_iter().enumerate() {
                                x.set(r, b, c);
                            }
                        }
                    }
                    x
                })
                .collect()
        })
        .collect();
    let dims = quotients.iter().map(Quotient::dim).collect();
    Ok(GradedModule {
        n,
        domain,
        start,
        dims,
        labels,
        mult,
        complete,
    })
}
