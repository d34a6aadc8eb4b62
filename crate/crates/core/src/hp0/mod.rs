//! Brute-force graded dimensions of `HP₀(Symⁿ𝒪_X) = Symⁿ𝒪_X / {Symⁿ𝒪_X, Symⁿ𝒪_X}`.
//!
//! The bracket span in weight `w` is spanned by `ξ_f(e)` where `f` runs over
//! the positive-weight standard monomials and `e` over the multiset basis of
//! the matching source weight. Central `f` only contribute zero columns.

pub mod rank;

pub use rank::{rank_exact, rank_exact_report, RankCertificate, RankReport, SparseIntMatrix};

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{graded_basis, Monomial, SparsePolynomial};
use crate::error::{Error, Result};
use crate::jacobi::GradedDims;
use crate::poisson::PoissonStructure;
use crate::series::hp0_product_formula;
use crate::surface::SurfaceSpec;
use crate::sympow::{sym_basis, SymAction, SymBasisElement, SymVector};

/// Default bound on the number of nonzeros of one weight slice.
pub const DEFAULT_CAP: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct Hp0Options {
    /// Maximum nonzeros allowed in a single weight slice.
    pub cap: usize,
    /// Size of the worker pool; `None` uses the ambient rayon pool.
    pub workers: Option<usize>,
    /// Additional homogeneous Hamiltonians appended to the spanning set.
    pub extra_generators: Vec<SparsePolynomial>,
}

impl Default for Hp0Options {
    fn default() -> Self {
        Hp0Options {
            cap: DEFAULT_CAP,
            workers: None,
            extra_generators: Vec::new(),
        }
    }
}

/// Linear-algebra record of one weight slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceStats {
    pub weight: i64,
    pub basis_dim: usize,
    pub columns: usize,
    pub nnz: usize,
    pub rank: usize,
    pub certificate: String,
}

#[derive(Clone, Debug)]
pub struct Hp0Table {
    pub spec: SurfaceSpec,
    pub n: usize,
    pub max_w: i64,
    pub dims: GradedDims,
    pub ranks: Vec<SliceStats>,
}

/// Graded dimensions of `HP₀(Symⁿ𝒪_X)` for weights `0..=max_w`.
pub fn hp0_dims(spec: &SurfaceSpec, n: usize, max_w: i64) -> Result<Hp0Table> {
    hp0_dims_with(spec, n, max_w, &Hp0Options::default())
}

pub fn hp0_dims_with(
    spec: &SurfaceSpec,
    n: usize,
    max_w: i64,
    opts: &Hp0Options,
) -> Result<Hp0Table> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n must be at least 1".into()));
    }
    if max_w < 0 {
        return Err(Error::ParameterOutOfRange(
            "max weight must be nonnegative".into(),
        ));
    }
    match opts.workers {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::ParameterOutOfRange(format!("worker pool: {e}")))?;
            pool.install(|| compute(spec, n, max_w, opts))
        }
        None => compute(spec, n, max_w, opts),
    }
}

fn compute(spec: &SurfaceSpec, n: usize, max_w: i64, opts: &Hp0Options) -> Result<Hp0Table> {
    let ws = spec.weights();
    let kappa = ws.kappa();
    let top_source = max_w - 1 - kappa;
    let bases: Vec<Vec<SymBasisElement>> = (0..=top_source.max(max_w))
        .into_par_iter()
        .map(|w| sym_basis(spec, n, w))
        .collect();
    let hamiltonians: Vec<(Monomial, i64)> = (1..=max_w - kappa)
        .flat_map(|fw| {
            graded_basis(ws, spec.q(), fw)
                .into_iter()
                .map(move |m| (m, fw))
        })
        .collect();
    let extra: Vec<(SparsePolynomial, i64)> = opts
        .extra_generators
        .iter()
        .filter_map(|p| p.homogeneous_weight(ws).map(|w| (p.clone(), w)))
        .collect();
    let poisson = PoissonStructure::new(spec);

    // Large slices first so the tail of the schedule is short.
    let mut order: Vec<i64> = (0..=max_w).collect();
    order.sort_by_key(|w| std::cmp::Reverse(bases[*w as usize].len()));
    let ctx = SliceContext {
        kappa,
        bases: &bases,
        hamiltonians: &hamiltonians,
        extra: &extra,
        poisson: &poisson,
        cap: opts.cap,
    };
    let mut stats: Vec<SliceStats> = order
        .into_par_iter()
        .map(|w| ctx.slice(w))
        .collect::<Result<_>>()?;
    stats.sort_by_key(|s| s.weight);
    let dims = GradedDims::from_pairs(
        max_w,
        stats
            .iter()
            .map(|s| (s.weight, (s.basis_dim - s.rank) as u64)),
    );
    Ok(Hp0Table {
        spec: spec.clone(),
        n,
        max_w,
        dims,
        ranks: stats,
    })
}

struct SliceContext<'a> {
    kappa: i64,
    bases: &'a [Vec<SymBasisElement>],
    hamiltonians: &'a [(Monomial, i64)],
    extra: &'a [(SparsePolynomial, i64)],
    poisson: &'a PoissonStructure,
    cap: usize,
}

impl SliceContext<'_> {
    fn source(&self, w: i64, fw: i64) -> &[SymBasisElement] {
        let sw = w - fw - self.kappa;
        if sw < 0 {
            &[]
        } else {
            &self.bases[sw as usize]
        }
    }

    fn slice(&self, w: i64) -> Result<SliceStats> {
        let rows = &self.bases[w as usize];
        let index: HashMap<&SymBasisElement, usize> =
            rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut matrix = SparseIntMatrix::new(rows.len(), 0);
        let mut action = SymAction::new(self.poisson);
        let mut nnz = 0usize;
        let mut push = |v: SymVector, matrix: &mut SparseIntMatrix| -> Result<()> {
            if v.is_empty() {
                return Ok(());
            }
            let col = rank::integer_column(v.into_iter().map(|(e, c)| (index[&e], c)));
            nnz += col.len();
            if nnz > self.cap {
                return Err(Error::MatrixCapExceeded {
                    weight: w,
                    nnz,
                    cap: self.cap,
                });
            }
            matrix.push_column(col);
            Ok(())
        };
        if !rows.is_empty() {
            for (f, fw) in self.hamiltonians {
                for e in self.source(w, *fw) {
                    push(action.apply(f, e), &mut matrix)?;
                }
            }
            for (f, fw) in self.extra {
                for e in self.source(w, *fw) {
                    push(action.apply_polynomial(f, e), &mut matrix)?;
                }
            }
        }
        let report = rank_exact_report(&matrix, rank::random_prime_62());
        Ok(SliceStats {
            weight: w,
            basis_dim: rows.len(),
            columns: matrix.n_cols(),
            nnz: matrix.nnz(),
            rank: report.rank,
            certificate: format!("{:?}", report.certificate),
        })
    }
}

/// One weight of a brute-force versus closed-form comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub weight: i64,
    pub dim_bruteforce: u64,
    #[serde(serialize_with = "crate::series::serialize_bigint")]
    pub dim_closedform: BigInt,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub surface: String,
    pub n: usize,
    pub max_w: i64,
    pub rows: Vec<ComparisonRow>,
    pub all_equal: bool,
}

/// Brute-force dimensions against the `t^w s^n` coefficients of the product formula.
pub fn hp0_compare(spec: &SurfaceSpec, n: usize, max_w: i64) -> Result<ComparisonReport> {
    hp0_compare_with(spec, n, max_w, &Hp0Options::default())
}

pub fn hp0_compare_with(
    spec: &SurfaceSpec,
    n: usize,
    max_w: i64,
    opts: &Hp0Options,
) -> Result<ComparisonReport> {
    let table = hp0_dims_with(spec, n, max_w, opts)?;
    let closed = hp0_product_formula(spec, max_w, n as u32);
    let rows: Vec<ComparisonRow> = (0..=max_w)
        .map(|w| {
            let brute = table.dims.get(w);
            let formula = closed.coeff(w, n as u32);
            ComparisonRow {
                weight: w,
                dim_bruteforce: brute,
                equal: formula == BigInt::from(brute),
                dim_closedform: formula,
            }
        })
        .collect();
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(ComparisonReport {
        surface: spec.name(),
        n,
        max_w,
        rows,
        all_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::jacobi_dims;

    #[test]
    fn a1_weight_two_is_all_brackets() {
        let a1 = SurfaceSpec::type_a(2).unwrap();
        let t = hp0_dims(&a1, 1, 2).unwrap();
        assert_eq!(t.dims.get(0), 1);
        assert_eq!(t.dims.get(2), 0);
        assert_eq!(t.ranks[2].rank, 3);
    }

    #[test]
    fn e6_matches_jacobi() {
        let e6 = SurfaceSpec::e6();
        assert_eq!(hp0_dims(&e6, 1, 10).unwrap().dims, jacobi_dims(&e6, 10));
    }

    #[test]
    fn a1_square() {
        let a1 = SurfaceSpec::type_a(2).unwrap();
        let t = hp0_dims(&a1, 2, 8).unwrap();
        assert_eq!(t.dims, GradedDims::from_pairs(8, [(0, 1), (4, 1)]));
        let r = hp0_compare(&a1, 2, 8).unwrap();
        assert!(r.all_equal);
    }

    #[test]
    fn cap_is_reported() {
        let a1 = SurfaceSpec::type_a(2).unwrap();
        let opts = Hp0Options {
            cap: 5,
            ..Hp0Options::default()
        };
        assert!(matches!(
            hp0_dims_with(&a1, 2, 6, &opts),
            Err(Error::MatrixCapExceeded { .. })
        ));
    }

    #[test]
    fn redundant_generators_change_nothing() {
        let d4 = SurfaceSpec::type_d(2).unwrap();
        let base = hp0_dims(&d4, 1, 8).unwrap().dims;
        let extra = SparsePolynomial::from_int_terms([(1, [2, 0, 0]), (3, [1, 1, 0])]);
        let opts = Hp0Options {
            extra_generators: vec![extra],
            workers: Some(2),
            ..Hp0Options::default()
        };
        assert_eq!(hp0_dims_with(&d4, 1, 8, &opts).unwrap().dims, base);
    }
}
