//! Graded pieces of the Jacobi ring `J_Q = ℂ[x,y,z]/(Q_x, Q_y, Q_z)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{monomials_of_weight, Var, WeightSystem};
use crate::error::{Error, Result};
use crate::hp0::rank::{integer_column, rank_exact, SparseIntMatrix};
use crate::series::Series;
use crate::surface::{SurfaceKind, SurfaceSpec};

/// Dimensions of a graded vector space on the weights `0..=max_w`.
/// Weights that are not stored have dimension zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    dims: BTreeMap<i64, u64>,
    max_w: i64,
}

impl GradedDims {
    pub fn new(max_w: i64) -> Self {
        GradedDims {
            dims: BTreeMap::new(),
            max_w,
        }
    }

    pub fn from_pairs(max_w: i64, pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut g = Self::new(max_w);
        for (w, d) in pairs {
            g.set(w, d);
        }
        g
    }

    pub fn set(&mut self, w: i64, dim: u64) {
        assert!(
            (0..=self.max_w).contains(&w),
            "weight {w} outside 0..={}",
            self.max_w
        );
        if dim == 0 {
            self.dims.remove(&w);
        } else {
            self.dims.insert(w, dim);
        }
    }

    pub fn get(&self, w: i64) -> u64 {
        self.dims.get(&w).copied().unwrap_or(0)
    }

    pub fn max_w(&self) -> i64 {
        self.max_w
    }

    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// Nonzero `(weight, dim)` pairs in increasing weight.
    pub fn nonzero(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.dims.iter().map(|(w, d)| (*w, *d))
    }

    pub fn to_series(&self) -> Series {
        Series::from_terms(
            0,
            self.max_w,
            self.nonzero().map(|(w, d)| (w, BigInt::from(d))),
        )
    }
}

/// Dimension of `(J_Q)_w`: the weight-`w` monomials of `ℂ[x,y,z]` minus the
/// rank of `(f₁,f₂,f₃) ↦ f₁Q_x + f₂Q_y + f₃Q_z` into weight `w`.
pub fn jacobi_dim_at(spec: &SurfaceSpec, w: i64) -> u64 {
    let ws = spec.weights();
    let targets = monomials_of_weight(ws, w);
    if targets.is_empty() {
        return 0;
    }
    let index: HashMap<_, _> = targets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut matrix = SparseIntMatrix::new(targets.len(), 0);
    for v in Var::ALL {
        let dq = spec.q().partial(v);
        if dq.is_zero() {
            continue;
        }
        for m in monomials_of_weight(ws, w - (ws.d() - ws.var_weight(v))) {
            let col = dq.terms().map(|(t, c)| (index[&t.mul(&m)], c.clone()));
            matrix.push_column(integer_column(col));
        }
    }
    (targets.len() - rank_exact(&matrix)) as u64
}

/// Jacobi dimensions on the inclusive weight range `lo..=hi`, computed in parallel.
pub fn jacobi_dims_range(spec: &SurfaceSpec, lo: i64, hi: i64) -> Vec<(i64, u64)> {
    (lo.max(0)..=hi)
        .into_par_iter()
        .map(|w| (w, jacobi_dim_at(spec, w)))
        .collect()
}

/// `dim (J_Q)_w` for `0 <= w <= max_w`.
pub fn jacobi_dims(spec: &SurfaceSpec, max_w: i64) -> GradedDims {
    GradedDims::from_pairs(max_w, jacobi_dims_range(spec, 0, max_w))
}

/// Jacobi dimensions up to the socle bound `3d - 2(a+b+c)`.
pub fn jacobi_dims_default(spec: &SurfaceSpec) -> GradedDims {
    jacobi_dims(spec, spec.weights().socle_bound().max(0))
}

/// Milnor number: total dimension of `J_Q` up to the socle bound.
pub fn milnor_number(spec: &SurfaceSpec) -> u64 {
    jacobi_dims_default(spec).total()
}

/// `(1-t^{d-a})(1-t^{d-b})(1-t^{d-c}) / ((1-t^a)(1-t^b)(1-t^c))` up to `t^max_w`.
pub fn jacobi_hilbert_closed(ws: &WeightSystem, max_w: i64) -> Series {
    let mut s = Series::one(max_w);
    for w in ws.weights() {
        s = s.mul_one_minus(ws.d() - w);
    }
    for w in ws.weights() {
        s = s.div_one_minus(w);
    }
    s.truncate(max_w)
}

/// Weights `n_i` of a monomial basis of `J_Q`, with multiplicity.
pub fn jacobi_exponents(spec: &SurfaceSpec) -> Vec<i64> {
    jacobi_dims_default(spec)
        .nonzero()
        .flat_map(|(w, d)| std::iter::repeat_n(w, d as usize))
        .collect()
}

/// Coxeter exponents and Coxeter number of a Kleinian surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterData {
    pub jacobi_exponents: Vec<i64>,
    pub exponents: Vec<i64>,
    pub coxeter_number: i64,
}

/// `m_i = n_i + 1` (types D, E) or `n_i / 2 + 1` (type A); `h = d` or `d / 2`.
pub fn coxeter_exponents(spec: &SurfaceSpec) -> Result<CoxeterData> {
    let kind = spec.kind();
    if !kind.is_kleinian() {
        return Err(Error::Unsupported {
            surface: spec.name(),
            reason: "Coxeter exponents exist only for Kleinian surfaces".into(),
        });
    }
    let n = jacobi_exponents(spec);
    let d = spec.weights().d();
    let (exponents, coxeter_number) = match kind {
        SurfaceKind::A { .. } => (n.iter().map(|ni| ni / 2 + 1).collect(), d / 2),
        _ => (n.iter().map(|ni| ni + 1).collect(), d),
    };
    Ok(CoxeterData {
        jacobi_exponents: n,
        exponents,
        coxeter_number,
    })
}
