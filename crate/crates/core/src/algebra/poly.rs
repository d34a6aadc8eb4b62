use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var, WeightSystem};

/// Sparse polynomial in `x, y, z` with exact rational coefficients.
/// Terms are kept in increasing lex order (`z > y > x`); zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct SparsePolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePolynomial {
    pub fn zero() -> Self {
        SparsePolynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, BigRational::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, [u32; 3])>,
    {
        Self::from_terms(terms.into_iter().map(|(c, [i, j, k])| {
            (
                Monomial::new(i, j, k),
                BigRational::from_integer(BigInt::from(c)),
            )
        }))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest term under lex `z > y > x`.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.leading_term().map(|(m, _)| *m)
    }

    /// The common weight of all terms, if the polynomial is weight-homogeneous.
    /// The zero polynomial is homogeneous of every weight and reports `None`.
    pub fn homogeneous_weight(&self, ws: &WeightSystem) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.weight(ws));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn is_homogeneous(&self, ws: &WeightSystem) -> bool {
        self.is_zero() || self.homogeneous_weight(ws).is_some()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePolynomial {
            terms: self.terms.iter().map(|(n, v)| (n.mul(m), v * c)).collect(),
        }
    }

    /// Formal partial derivative in `v`.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(v) {
                out.add_term(dm, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// Formal partial derivative of `p` in `var`.
pub fn partial(p: &SparsePolynomial, var: Var) -> SparsePolynomial {
    p.partial(var)
}

impl Add<&SparsePolynomial> for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Add for SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(mut self, rhs: SparsePolynomial) -> SparsePolynomial {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub<&SparsePolynomial> for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self - &rhs
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        -&self
    }
}

impl Mul<&SparsePolynomial> for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: SparsePolynomial) -> SparsePolynomial {
        &self * &rhs
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut p = SparsePolynomial::monomial(Monomial::new(1, 0, 0));
        p.add_term(Monomial::new(1, 0, 0), rat(-1));
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn partial_of_type_a_polynomial() {
        let m = 5;
        let q = SparsePolynomial::from_int_terms([(1, [m, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])]);
        let qx = q.partial(Var::X);
        assert_eq!(
            qx,
            SparsePolynomial::from_int_terms([(m as i64, [m - 1, 0, 0])])
        );
        assert!(SparsePolynomial::constant(rat(7)).partial(Var::Y).is_zero());
    }

    #[test]
    fn partial_of_hesse_cubic() {
        let lambda = BigRational::new(BigInt::from(2), BigInt::from(3));
        let mut q =
            SparsePolynomial::from_int_terms([(1, [3, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 3])]);
        q.add_term(Monomial::new(1, 1, 1), lambda.clone());
        let mut expect = SparsePolynomial::from_int_terms([(3, [0, 0, 2])]);
        expect.add_term(Monomial::new(1, 1, 0), lambda);
        assert_eq!(partial(&q, Var::Z), expect);
    }

    #[test]
    fn leading_monomial_is_lex_largest() {
        let q = SparsePolynomial::from_int_terms([(1, [5, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 2])]);
        assert_eq!(q.leading_monomial(), Some(Monomial::new(0, 0, 2)));
        assert_eq!(q.to_string(), "x^5 + y^3 + z^2");
    }

    #[test]
    fn homogeneity() {
        let ws = WeightSystem::new(3, 4, 6, 12).unwrap();
        let q = SparsePolynomial::from_int_terms([(1, [4, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 2])]);
        assert_eq!(q.homogeneous_weight(&ws), Some(12));
        let bad = &q + &SparsePolynomial::monomial(Monomial::new(1, 0, 0));
        assert!(!bad.is_homogeneous(&ws));
    }
}
