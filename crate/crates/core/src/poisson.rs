//! The Poisson bracket on `𝒪_X` with `{x,y} = Q_z`, `{y,z} = Q_x`,
//! `{z,x} = Q_y`, and matrices of Hamiltonian vector fields on weight slices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{graded_basis, normal_form, Monomial, SparsePolynomial, Var};
use crate::hp0::rank::SparseIntMatrix;
use crate::surface::SurfaceSpec;

/// Brackets of the coordinate functions. Every other bracket follows from
/// these by the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    pub xy: SparsePolynomial,
    pub yz: SparsePolynomial,
    pub zx: SparsePolynomial,
}

impl BracketTable {
    pub fn new(spec: &SurfaceSpec) -> Self {
        let q = spec.q();
        BracketTable {
            xy: normal_form(&q.partial(Var::Z), q),
            yz: normal_form(&q.partial(Var::X), q),
            zx: normal_form(&q.partial(Var::Y), q),
        }
    }
}

/// Poisson structure of a surface: its bracket table plus the reduction modulo `Q`.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    spec: SurfaceSpec,
    table: BracketTable,
}

impl PoissonStructure {
    pub fn new(spec: &SurfaceSpec) -> Self {
        PoissonStructure {
            spec: spec.clone(),
            table: BracketTable::new(spec),
        }
    }

    /// Uses a caller-supplied table, e.g. a deliberately corrupted one when
    /// exercising the axiom checks.
    pub fn with_table(spec: &SurfaceSpec, table: BracketTable) -> Self {
        PoissonStructure {
            spec: spec.clone(),
            table,
        }
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    /// Bracket computed in `ℂ[x,y,z]` without reduction:
    /// `{f,g} = (f_x g_y - f_y g_x){x,y} + (f_y g_z - f_z g_y){y,z} + (f_z g_x - f_x g_z){z,x}`.
    pub fn bracket_ambient(&self, f: &SparsePolynomial, g: &SparsePolynomial) -> SparsePolynomial {
        let (fx, fy, fz) = (f.partial(Var::X), f.partial(Var::Y), f.partial(Var::Z));
        let (gx, gy, gz) = (g.partial(Var::X), g.partial(Var::Y), g.partial(Var::Z));
        let xy = &(&fx * &gy) - &(&fy * &gx);
        let yz = &(&fy * &gz) - &(&fz * &gy);
        let zx = &(&fz * &gx) - &(&fx * &gz);
        &(&(&xy * &self.table.xy) + &(&yz * &self.table.yz)) + &(&zx * &self.table.zx)
    }

    /// Normal-form representative of `{f, g}` in `𝒪_X`. The ideal `(Q)` is
    /// Poisson, so reducing once at the end is enough.
    pub fn bracket(&self, f: &SparsePolynomial, g: &SparsePolynomial) -> SparsePolynomial {
        normal_form(&self.bracket_ambient(f, g), self.spec.q())
    }

    pub fn bracket_monomials(&self, f: &Monomial, g: &Monomial) -> SparsePolynomial {
        self.bracket(
            &SparsePolynomial::monomial(*f),
            &SparsePolynomial::monomial(*g),
        )
    }

    pub fn reduce(&self, p: &SparsePolynomial) -> SparsePolynomial {
        normal_form(p, self.spec.q())
    }

    /// Matrix of `ξ_f = {f, -}` from `(𝒪_X)_w` to `(𝒪_X)_{w+|f|+κ}` in the
    /// standard monomial bases; columns follow the source basis. Rational
    /// entries are scaled to integers by one common factor.
    pub fn hamiltonian_matrix(&self, f: &Monomial, w: i64) -> HamiltonianMatrix {
        let ws = self.spec.weights();
        let q = self.spec.q();
        let source = graded_basis(ws, q, w);
        let target_weight = w + f.weight(ws) + ws.kappa();
        let target = graded_basis(ws, q, target_weight);
        let index: HashMap<Monomial, usize> =
            target.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let columns: Vec<SparsePolynomial> = source
            .iter()
            .map(|g| self.bracket_monomials(f, g))
            .collect();
        let scale = columns
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let scale_q = BigRational::from_integer(scale.clone());
        let mut matrix = SparseIntMatrix::new(target.len(), 0);
        for col in &columns {
            let entries = col
                .terms()
                .map(|(m, c)| (index[m], (c * &scale_q).to_integer()))
                .collect();
            matrix.push_column(entries);
        }
        HamiltonianMatrix {
            source,
            target,
            target_weight,
            scale,
            matrix,
        }
    }
}

/// `ξ_f` on one weight slice.
#[derive(Clone, Debug)]
pub struct HamiltonianMatrix {
    pub source: Vec<Monomial>,
    pub target: Vec<Monomial>,
    pub target_weight: i64,
    /// The true matrix is `matrix / scale`.
    pub scale: BigInt,
    pub matrix: SparseIntMatrix,
}

/// Normal-form bracket `{f, g}` on the surface.
pub fn bracket(f: &SparsePolynomial, g: &SparsePolynomial, spec: &SurfaceSpec) -> SparsePolynomial {
    PoissonStructure::new(spec).bracket(f, g)
}

/// Matrix of `ξ_f` on `(𝒪_X)_w`.
pub fn hamiltonian_matrix(f: &Monomial, w: i64, spec: &SurfaceSpec) -> HamiltonianMatrix {
    PoissonStructure::new(spec).hamiltonian_matrix(f, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(i: u32, j: u32, k: u32) -> SparsePolynomial {
        SparsePolynomial::monomial(Monomial::new(i, j, k))
    }

    #[test]
    fn generator_brackets() {
        let a = SurfaceSpec::type_a(4).unwrap();
        assert_eq!(
            bracket(&mono(1, 0, 0), &mono(0, 1, 0), &a),
            SparsePolynomial::from_int_terms([(2, [0, 0, 1])])
        );
        let e6 = SurfaceSpec::e6();
        let yz = bracket(&mono(0, 1, 0), &mono(0, 0, 1), &e6);
        assert_eq!(yz, SparsePolynomial::from_int_terms([(4, [3, 0, 0])]));
        assert_eq!(yz.homogeneous_weight(e6.weights()), Some(4 + 6 - 1));
    }

    #[test]
    fn q_is_a_casimir() {
        for spec in SurfaceSpec::standard_catalog() {
            let p = PoissonStructure::new(&spec);
            for v in Var::ALL {
                assert!(
                    p.bracket_ambient(spec.q(), &SparsePolynomial::var(v))
                        .is_zero(),
                    "{}",
                    spec.name()
                );
            }
        }
    }

    #[test]
    fn type_a_degree_zero_hamiltonian_is_square() {
        let a = SurfaceSpec::type_a(3).unwrap();
        let x = Monomial::new(1, 0, 0);
        for w in 0..12 {
            let h = hamiltonian_matrix(&x, w, &a);
            assert_eq!(h.target_weight, w);
            assert_eq!(h.matrix.n_rows(), h.matrix.n_cols());
        }
    }

    #[test]
    fn empty_source_slice() {
        let e6 = SurfaceSpec::e6();
        let h = hamiltonian_matrix(&Monomial::new(0, 0, 1), 1, &e6);
        assert!(h.source.is_empty());
        assert_eq!(h.matrix.n_cols(), 0);
    }

    #[test]
    fn hamiltonian_entries_match_brackets() {
        let e6 = SurfaceSpec::e6();
        let p = PoissonStructure::new(&e6);
        let z = Monomial::new(0, 0, 1);
        let h = p.hamiltonian_matrix(&z, 2);
        assert_eq!(h.target_weight, 7);
        for (c, g) in h.source.iter().enumerate() {
            let b = p.bracket_monomials(&z, g);
            for (r, t) in h.target.iter().enumerate() {
                let expect = b.coeff(t) * BigRational::from_integer(h.scale.clone());
                assert_eq!(BigRational::from_integer(h.matrix.get(r, c)), expect);
            }
        }
    }

    #[test]
    fn rational_parameter_scales_matrix() {
        let s = SurfaceSpec::tilde_e6(BigRational::new(1.into(), 3.into()));
        let h = hamiltonian_matrix(&Monomial::new(1, 0, 0), 2, &s);
        assert_eq!(h.scale, BigInt::from(3));
    }
}
