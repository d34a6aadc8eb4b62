//! Graded monomial bases of `Symⁿ(𝒪_X)` and the slot-wise action of
//! Hamiltonian vector fields on them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{graded_basis, Monomial, SparsePolynomial};
use crate::poisson::PoissonStructure;
use crate::surface::SurfaceSpec;

/// A pure symmetric tensor `f₁ & ⋯ & f_n` of normal-form monomials.
/// Factors are kept sorted, so equal multisets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymBasisElement {
    factors: Vec<Monomial>,
}

impl SymBasisElement {
    pub fn new(mut factors: Vec<Monomial>) -> Self {
        factors.sort();
        SymBasisElement { factors }
    }

    /// `1 & ⋯ & 1` with `n` factors.
    pub fn unit(n: usize) -> Self {
        SymBasisElement {
            factors: vec![Monomial::ONE; n],
        }
    }

    pub fn factors(&self) -> &[Monomial] {
        &self.factors
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn weight(&self, spec: &SurfaceSpec) -> i64 {
        self.factors.iter().map(|m| m.weight(spec.weights())).sum()
    }

    /// The same multiset with the factor at `slot` replaced by `m`.
    pub fn replace(&self, slot: usize, m: Monomial) -> Self {
        let mut factors = self.factors.clone();
        factors[slot] = m;
        Self::new(factors)
    }
}

impl fmt::Display for SymBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("&")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Sparse vector over a multiset basis.
pub type SymVector = BTreeMap<SymBasisElement, BigRational>;

/// Standard monomials of weight `0..=max_w`, in increasing term order.
fn standard_monomials(spec: &SurfaceSpec, max_w: i64) -> Vec<(Monomial, i64)> {
    let mut out: Vec<(Monomial, i64)> = (0..=max_w)
        .flat_map(|w| {
            graded_basis(spec.weights(), spec.q(), w)
                .into_iter()
                .map(move |m| (m, w))
        })
        .collect();
    out.sort();
    out
}

/// All multisets of `n` standard monomials of total weight `w`, sorted.
pub fn sym_basis(spec: &SurfaceSpec, n: usize, w: i64) -> Vec<SymBasisElement> {
    if w < 0 || n == 0 {
        return if w == 0 && n == 0 {
            vec![SymBasisElement::unit(0)]
        } else {
            Vec::new()
        };
    }
    let mons = standard_monomials(spec, w);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    extend_multisets(&mons, 0, n, w, &mut current, &mut out);
    out.sort();
    out
}

fn extend_multisets(
    mons: &[(Monomial, i64)],
    start: usize,
    slots: usize,
    rest: i64,
    current: &mut Vec<Monomial>,
    out: &mut Vec<SymBasisElement>,
) {
    if slots == 0 {
        if rest == 0 {
            out.push(SymBasisElement {
                factors: current.clone(),
            });
        }
        return;
    }
    for (i, (m, mw)) in mons.iter().enumerate().skip(start) {
        if *mw > rest {
            continue;
        }
        current.push(*m);
        extend_multisets(mons, i, slots - 1, rest - mw, current, out);
        current.pop();
    }
}

/// Applies `ξ_f = {f, -}` to multiset basis elements, caching the brackets
/// of monomial pairs.
pub struct SymAction<'a> {
    poisson: &'a PoissonStructure,
    cache: HashMap<(Monomial, Monomial), SparsePolynomial>,
}

impl<'a> SymAction<'a> {
    pub fn new(poisson: &'a PoissonStructure) -> Self {
        SymAction {
            poisson,
            cache: HashMap::new(),
        }
    }

    fn bracket(&mut self, f: Monomial, g: Monomial) -> &SparsePolynomial {
        let poisson = self.poisson;
        self.cache
            .entry((f, g))
            .or_insert_with(|| poisson.bracket_monomials(&f, &g))
    }

    /// `Σ_i f₁ & ⋯ & {f, f_i} & ⋯ & f_n`, expanded over the multiset basis.
    pub fn apply(&mut self, f: &Monomial, e: &SymBasisElement) -> SymVector {
        let mut out = SymVector::new();
        self.accumulate(f, e, &BigRational::from_integer(1.into()), &mut out);
        out
    }

    /// Action of a polynomial `f`, by linearity in `f`.
    pub fn apply_polynomial(&mut self, f: &SparsePolynomial, e: &SymBasisElement) -> SymVector {
        let mut out = SymVector::new();
        for (m, c) in f.terms() {
            self.accumulate(m, e, c, &mut out);
        }
        out
    }

    fn accumulate(
        &mut self,
        f: &Monomial,
        e: &SymBasisElement,
        scale: &BigRational,
        out: &mut SymVector,
    ) {
        let factors = e.factors();
        let mut slot = 0;
        while slot < factors.len() {
            let g = factors[slot];
            let mult = factors[slot..].iter().take_while(|h| **h == g).count();
            if !g.is_one() {
                let factor = scale * BigRational::from_integer(mult.into());
                let b = self.bracket(*f, g).clone();
                for (m, c) in b.terms() {
                    let key = e.replace(slot, *m);
                    let v = out.entry(key).or_insert_with(BigRational::zero);
                    *v += c * &factor;
                }
            }
            slot += mult;
        }
        out.retain(|_, v| !v.is_zero());
    }
}

/// `ξ_f(e)` for a monomial `f`; supported in weight `|e| + |f| + κ`.
pub fn xi_action(f: &Monomial, e: &SymBasisElement, spec: &SurfaceSpec) -> SymVector {
    let p = PoissonStructure::new(spec);
    SymAction::new(&p).apply(f, e)
}
