//! Truncated integer series in one variable `t` and in two variables `(t, s)`.
//!
//! Every series carries an explicit window `[floor, max_t]` of `t`-exponents in
//! which its coefficients are known exactly. Coefficients below the floor are
//! zero; nothing is known above `max_t`. Arithmetic shrinks the window to what
//! the operands actually determine, so two series can always be compared on
//! the window where both are exact.

mod formulas;
mod render;

pub use formulas::*;
pub use render::{render_table, serialize_bigint, SeriesJson, SeriesTerm, Truncation};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Truncated Laurent series in `t` with exact integer coefficients.
///
/// Equality compares the known range `max_t` and the coefficients; the floor
/// is only a storage detail.
#[derive(Clone, Debug)]
pub struct Series {
    floor: i64,
    max_t: i64,
    coeffs: Vec<BigInt>,
}

impl PartialEq for Series {
    fn eq(&self, other: &Series) -> bool {
        self.max_t == other.max_t && self.terms().eq(other.terms())
    }
}

impl Eq for Series {}

impl Series {
    /// The zero series known exactly on `[floor, max_t]`.
    pub fn zero_window(floor: i64, max_t: i64) -> Self {
        let len = if max_t >= floor {
            (max_t - floor + 1) as usize
        } else {
            0
        };
        Series {
            floor,
            max_t,
            coeffs: vec![BigInt::zero(); len],
        }
    }

    pub fn zero(max_t: i64) -> Self {
        Self::zero_window(0, max_t)
    }

    pub fn one(max_t: i64) -> Self {
        Self::monomial(0, BigInt::one(), max_t)
    }

    /// `coef * t^exp`, exact up to `max_t`.
    pub fn monomial(exp: i64, coef: BigInt, max_t: i64) -> Self {
        let mut s = Self::zero_window(exp.min(0), max_t);
        s.add_term(exp, coef);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; pairs outside the
    /// window are dropped.
    pub fn from_terms<I>(floor: i64, max_t: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut s = Self::zero_window(floor, max_t);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn max_t(&self) -> i64 {
        self.max_t
    }

    /// Adds `c * t^e` in place. Exponents above the window are ignored; an
    /// exponent below the floor lowers the floor.
    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if e > self.max_t || c.is_zero() {
            return;
        }
        if e < self.floor {
            self.lower_floor(e);
        }
        self.coeffs[(e - self.floor) as usize] += c;
    }

    fn lower_floor(&mut self, new_floor: i64) {
        if new_floor >= self.floor {
            return;
        }
        let pad = (self.floor - new_floor) as usize;
        let mut v = vec![BigInt::zero(); pad];
        v.append(&mut self.coeffs);
        self.coeffs = v;
        self.floor = new_floor;
    }

    /// Coefficient of `t^e`. Panics when `e` lies above the known window.
    pub fn coeff(&self, e: i64) -> BigInt {
        assert!(
            e <= self.max_t,
            "coefficient t^{e} requested beyond truncation t^{}",
            self.max_t
        );
        if e < self.floor {
            return BigInt::zero();
        }
        self.coeffs[(e - self.floor) as usize].clone()
    }

    /// Coefficient of `t^e`, or `None` beyond the window.
    pub fn get(&self, e: i64) -> Option<BigInt> {
        (e <= self.max_t).then(|| self.coeff(e))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.floor + i as i64, c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().next().map(|(e, _)| e)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Sum of all known coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Restricts the window to exponents `<= max_t`.
    pub fn truncate(&self, max_t: i64) -> Series {
        let max_t = max_t.min(self.max_t);
        Series::from_terms(self.floor, max_t, self.terms().map(|(e, c)| (e, c.clone())))
    }

    /// Multiplies by `t^e`; the window moves with it.
    pub fn shift(&self, e: i64) -> Series {
        Series {
            floor: self.floor + e,
            max_t: self.max_t + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Series {
        Series {
            floor: self.floor,
            max_t: self.max_t,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            floor: self.floor,
            max_t: self.max_t,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let floor = self.floor.min(other.floor);
        let max_t = self.max_t.min(other.max_t);
        let mut out = Series::zero_window(floor, max_t);
        for (e, c) in self.terms().chain(other.terms()) {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Series) -> Series {
        let floor = self.floor + other.floor;
        let max_t = (self.max_t + other.floor).min(other.max_t + self.floor);
        let mut out = Series::zero_window(floor, max_t);
        let rhs: Vec<(i64, &BigInt)> = other.terms().collect();
        for (e1, c1) in self.terms() {
            for &(e2, c2) in &rhs {
                if e1 + e2 > max_t {
                    break;
                }
                out.coeffs[(e1 + e2 - floor) as usize] += c1 * c2;
            }
        }
        out
    }

    /// Multiplies by `(1 - t^e)`.
    pub fn mul_one_minus(&self, e: i64) -> Series {
        self.sub(&self.shift(e))
    }

    /// Divides by `(1 - t^e)` for `e > 0`, i.e. multiplies by `1 + t^e + t^{2e} + ...`.
    pub fn div_one_minus(&self, e: i64) -> Series {
        assert!(e > 0, "1/(1 - t^{e}) is not a power series");
        let mut out = self.clone();
        let e = e as usize;
        for i in e..out.coeffs.len() {
            let prev = out.coeffs[i - e].clone();
            out.coeffs[i] += prev;
        }
        out
    }

    /// Evaluates the known part at `t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coefficient_sum()
    }

    /// Compares on the common window. Returns the window on success and the
    /// first differing exponent otherwise.
    pub fn agrees_with(&self, other: &Series) -> WindowCheck {
        let lo = self.floor.min(other.floor);
        let hi = self.max_t.min(other.max_t);
        for e in lo..=hi {
            if self.coeff(e) != other.coeff(e) {
                return WindowCheck {
                    agrees: false,
                    window: (lo, hi),
                    first_mismatch: Some((e, 0)),
                };
            }
        }
        WindowCheck {
            agrees: true,
            window: (lo, hi),
            first_mismatch: None,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{abs}t^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.max_t + 1)
    }
}

/// Outcome of a truncation-aware equality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCheck {
    pub agrees: bool,
    /// Inclusive range of `t`-exponents that was compared.
    pub window: (i64, i64),
    /// `(t, s)` of the first coefficient that differs.
    pub first_mismatch: Option<(i64, u32)>,
}

/// Truncated series in `t` (Laurent, bounded below) and `s` (power series),
/// exact integer coefficients. Row `n` holds the coefficient of `s^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    rows: Vec<Series>,
}

impl BiSeries {
    pub fn zero_window(floor: i64, max_t: i64, max_n: u32) -> Self {
        BiSeries {
            rows: (0..=max_n)
                .map(|_| Series::zero_window(floor, max_t))
                .collect(),
        }
    }

    pub fn zero(max_t: i64, max_n: u32) -> Self {
        Self::zero_window(0, max_t, max_n)
    }

    pub fn one(max_t: i64, max_n: u32) -> Self {
        let mut s = Self::zero(max_t, max_n);
        s.add_term(0, 0, BigInt::one());
        s
    }

    /// Assembles rows into a bivariate series, aligning all rows on the
    /// common window.
    pub fn from_rows(rows: Vec<Series>) -> Self {
        assert!(
            !rows.is_empty(),
            "a bivariate series needs at least the s^0 row"
        );
        let floor = rows.iter().map(Series::floor).min().unwrap();
        let max_t = rows.iter().map(Series::max_t).min().unwrap();
        let rows = rows
            .into_iter()
            .map(|r| Series::from_terms(floor, max_t, r.terms().map(|(e, c)| (e, c.clone()))))
            .collect();
        BiSeries { rows }
    }

    /// Series in `t` placed in a single `s`-row.
    pub fn from_row(row: &Series, n: u32, max_n: u32) -> Self {
        let mut rows: Vec<Series> = (0..=max_n)
            .map(|_| Series::zero_window(row.floor(), row.max_t()))
            .collect();
        if n <= max_n {
            rows[n as usize] = row.clone();
        }
        BiSeries { rows }
    }

    pub fn floor(&self) -> i64 {
        self.rows[0].floor()
    }

    pub fn max_t(&self) -> i64 {
        self.rows[0].max_t()
    }

    pub fn max_n(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    pub fn row(&self, n: u32) -> &Series {
        &self.rows[n as usize]
    }

    pub fn rows(&self) -> &[Series] {
        &self.rows
    }

    pub fn coeff(&self, t: i64, n: u32) -> BigInt {
        self.rows[n as usize].coeff(t)
    }

    pub fn add_term(&mut self, t: i64, n: u32, c: BigInt) {
        if n > self.max_n() || t > self.max_t() {
            return;
        }
        if t < self.floor() {
            for r in &mut self.rows {
                r.lower_floor(t);
            }
        }
        self.rows[n as usize].add_term(t, c);
    }

    /// Nonzero terms as `(t, s, coef)`, ordered by `s` then `t`.
    pub fn terms(&self) -> Vec<(i64, u32, BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, r)| r.terms().map(move |(e, c)| (e, n as u32, c.clone())))
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().all(Series::is_nonnegative)
    }

    pub fn truncate(&self, max_t: i64, max_n: u32) -> BiSeries {
        let max_n = max_n.min(self.max_n());
        BiSeries::from_rows(
            self.rows[..=max_n as usize]
                .iter()
                .map(|r| r.truncate(max_t))
                .collect(),
        )
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let max_n = self.max_n().min(other.max_n()) as usize;
        BiSeries::from_rows(
            (0..=max_n)
                .map(|n| self.rows[n].add(&other.rows[n]))
                .collect(),
        )
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        let max_n = self.max_n().min(other.max_n()) as usize;
        BiSeries::from_rows(
            (0..=max_n)
                .map(|n| self.rows[n].sub(&other.rows[n]))
                .collect(),
        )
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let max_n = self.max_n().min(other.max_n()) as usize;
        let floor = self.floor() + other.floor();
        let max_t = (self.max_t() + other.floor()).min(other.max_t() + self.floor());
        let rows = (0..=max_n)
            .map(|n| {
                (0..=n).fold(Series::zero_window(floor, max_t), |acc, i| {
                    acc.add(&self.rows[i].mul(&other.rows[n - i]))
                })
            })
            .collect();
        BiSeries::from_rows(rows)
    }

    /// Multiplies by `t^w s^k`.
    pub fn shift(&self, w: i64, k: u32) -> BiSeries {
        let max_n = self.max_n();
        let rows = (0..=max_n)
            .map(|n| {
                if n >= k {
                    self.rows[(n - k) as usize].shift(w)
                } else {
                    Series::zero_window(self.floor() + w, self.max_t() + w)
                }
            })
            .collect();
        BiSeries::from_rows(rows)
    }

    /// Divides by `(1 - t^w s^k)` in place; needs `w >= 0` and `k >= 1`, or `k = 0` with `w > 0`.
    pub fn div_one_minus(&mut self, w: i64, k: u32) {
        if k == 0 {
            for r in &mut self.rows {
                *r = r.div_one_minus(w);
            }
            return;
        }
        assert!(w >= 0, "negative weight shift would shrink the window");
        let max_t = self.max_t();
        for n in k..=self.max_n() {
            let src: Vec<(i64, BigInt)> = self.rows[(n - k) as usize]
                .terms()
                .map(|(e, c)| (e + w, c.clone()))
                .collect();
            for (e, c) in src {
                if e <= max_t {
                    self.rows[n as usize].add_term(e, c);
                }
            }
        }
    }

    /// Plethystic exponential: the character of the free commutative algebra
    /// on generators counted by `self`, i.e. `prod 1/(1 - t^w s^n)^{L[w,n]}`.
    pub fn sym(&self) -> Result<BiSeries> {
        if !self.rows[0].is_zero() {
            return Err(Error::SeriesDomain(
                "generators must have positive s-degree".into(),
            ));
        }
        let mut out = BiSeries::one(self.max_t(), self.max_n());
        for (w, n, c) in self.terms() {
            if c.is_negative() {
                return Err(Error::NegativeCoefficient {
                    t: w,
                    s: n,
                    coef: c.to_string(),
                });
            }
            if w < 0 {
                return Err(Error::SeriesDomain(format!(
                    "generator t^{w} s^{n} has negative weight"
                )));
            }
            let mult: usize = c
                .try_into()
                .map_err(|_| Error::SeriesDomain("multiplicity too large".into()))?;
            for _ in 0..mult {
                out.div_one_minus(w, n);
            }
        }
        Ok(out)
    }

    /// Coefficient-wise comparison on the common window.
    pub fn agrees_with(&self, other: &BiSeries) -> WindowCheck {
        let max_n = self.max_n().min(other.max_n());
        let lo = self.floor().min(other.floor());
        let hi = self.max_t().min(other.max_t());
        for n in 0..=max_n {
            for t in lo..=hi {
                if self.coeff(t, n) != other.coeff(t, n) {
                    return WindowCheck {
                        agrees: false,
                        window: (lo, hi),
                        first_mismatch: Some((t, n)),
                    };
                }
            }
        }
        WindowCheck {
            agrees: true,
            window: (lo, hi),
            first_mismatch: None,
        }
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, row) in self.rows.iter().enumerate() {
            writeln!(f, "s^{n}: {row}")?;
        }
        Ok(())
    }
}
