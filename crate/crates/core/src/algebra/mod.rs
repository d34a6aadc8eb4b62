//! Weight-graded polynomial arithmetic in `ℂ[x,y,z]` over exact rationals and
//! normal forms in the quotient `ℂ[x,y,z]/(Q)`.

mod monomial;
mod poly;

pub use monomial::{monomials_of_weight, weight, Monomial, Var, WeightSystem};
pub use poly::{partial, SparsePolynomial};

use crate::series::Series;
use num_rational::BigRational;

/// Remainder of `p` on division by `q` under lex `z > y > x`.
///
/// The result differs from `p` by a multiple of `q` and none of its monomials
/// is divisible by the leading monomial of `q`. A single generator of a
/// principal ideal is a Gröbner basis, so this is a canonical representative
/// of the class of `p` in `ℂ[x,y,z]/(q)`.
pub fn normal_form(p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
    let (lead, lead_coef) = q
        .leading_term()
        .map(|(m, c)| (*m, c.clone()))
        .expect("normal form modulo the zero polynomial");
    let mut work = p.clone();
    let mut rem = SparsePolynomial::zero();
    // Reducing the largest divisible term only introduces smaller terms, so
    // the loop walks down the term order and terminates.
    while let Some((m, c)) = work.leading_term().map(|(m, c)| (*m, c.clone())) {
        match m.div(&lead) {
            Some(quot) => {
                let factor = -(&c / &lead_coef);
                work = &work + &q.mul_term(&quot, &factor);
            }
            None => {
                work.add_term(m, -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    rem
}

/// Whether `m` survives as a basis monomial of `ℂ[x,y,z]/(q)`.
pub fn is_standard(m: &Monomial, q: &SparsePolynomial) -> bool {
    q.leading_monomial().is_none_or(|lead| !lead.divides(m))
}

/// Monomials of weight `w` not divisible by the leading monomial of `q`, in
/// increasing term order. Their residues form a basis of `(𝒪_X)_w`.
pub fn graded_basis(ws: &WeightSystem, q: &SparsePolynomial, w: i64) -> Vec<Monomial> {
    monomials_of_weight(ws, w)
        .into_iter()
        .filter(|m| is_standard(m, q))
        .collect()
}

/// Hilbert series `(1 - t^d) / ((1 - t^a)(1 - t^b)(1 - t^c))` of `𝒪_X`, up to `t^max_w`.
pub fn hilbert_ox(ws: &WeightSystem, max_w: i64) -> Series {
    Series::one(max_w)
        .mul_one_minus(ws.d())
        .div_one_minus(ws.a())
        .div_one_minus(ws.b())
        .div_one_minus(ws.c())
}

/// Rational constant helper.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Whether `p ≡ 0 mod q`.
pub fn reduces_to_zero(p: &SparsePolynomial, q: &SparsePolynomial) -> bool {
    normal_form(p, q).is_zero()
}
