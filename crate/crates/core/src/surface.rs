//! Catalog of Kleinian and elliptic surface singularities, custom surfaces,
//! and the isolated-singularity check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Monomial, SparsePolynomial, WeightSystem};
use crate::error::{Error, Result};
use crate::jacobi;

/// Which family a surface belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// `A_{m-1}`: `x^m + y^2 + z^2`.
    A {
        m: u32,
    },
    /// `D_{m+2}`: `x^{m+1} + x y^2 + z^2`.
    D {
        m: u32,
    },
    E6,
    E7,
    E8,
    /// Elliptic `Ẽ6`: `x^3 + y^3 + z^3 + λxyz`.
    TildeE6 {
        lambda: BigRational,
    },
    /// Elliptic `Ẽ7`: `x^4 + y^4 + z^2 + λxyz`.
    TildeE7 {
        lambda: BigRational,
    },
    /// Elliptic `Ẽ8`: `x^6 + y^3 + z^2 + λxyz`.
    TildeE8 {
        lambda: BigRational,
    },
    Custom,
}

impl SurfaceKind {
    pub fn is_kleinian(&self) -> bool {
        matches!(
            self,
            SurfaceKind::A { .. }
                | SurfaceKind::D { .. }
                | SurfaceKind::E6
                | SurfaceKind::E7
                | SurfaceKind::E8
        )
    }

    pub fn is_type_a(&self) -> bool {
        matches!(self, SurfaceKind::A { .. })
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(
            self,
            SurfaceKind::TildeE6 { .. } | SurfaceKind::TildeE7 { .. } | SurfaceKind::TildeE8 { .. }
        )
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::A { m } => write!(f, "A{}", m - 1),
            SurfaceKind::D { m } => write!(f, "D{}", m + 2),
            SurfaceKind::E6 => f.write_str("E6"),
            SurfaceKind::E7 => f.write_str("E7"),
            SurfaceKind::E8 => f.write_str("E8"),
            SurfaceKind::TildeE6 { lambda } => write!(f, "tE6(lambda={lambda})"),
            SurfaceKind::TildeE7 { lambda } => write!(f, "tE7(lambda={lambda})"),
            SurfaceKind::TildeE8 { lambda } => write!(f, "tE8(lambda={lambda})"),
            SurfaceKind::Custom => f.write_str("custom"),
        }
    }
}

/// Catalog tags accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogTag {
    A,
    D,
    E6,
    E7,
    E8,
    TildeE6,
    TildeE7,
    TildeE8,
}

impl CatalogTag {
    pub const ALL: [CatalogTag; 8] = [
        CatalogTag::A,
        CatalogTag::D,
        CatalogTag::E6,
        CatalogTag::E7,
        CatalogTag::E8,
        CatalogTag::TildeE6,
        CatalogTag::TildeE7,
        CatalogTag::TildeE8,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogTag::A => "A",
            CatalogTag::D => "D",
            CatalogTag::E6 => "E6",
            CatalogTag::E7 => "E7",
            CatalogTag::E8 => "E8",
            CatalogTag::TildeE6 => "tE6",
            CatalogTag::TildeE7 => "tE7",
            CatalogTag::TildeE8 => "tE8",
        }
    }

    pub fn takes_m(&self) -> bool {
        matches!(self, CatalogTag::A | CatalogTag::D)
    }

    pub fn takes_lambda(&self) -> bool {
        matches!(
            self,
            CatalogTag::TildeE6 | CatalogTag::TildeE7 | CatalogTag::TildeE8
        )
    }
}

impl FromStr for CatalogTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

impl fmt::Display for CatalogTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A weighted-homogeneous surface `{Q = 0} ⊂ ℂ³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    ws: WeightSystem,
    q: SparsePolynomial,
    kind: SurfaceKind,
}

fn ip(terms: &[(i64, [u32; 3])]) -> SparsePolynomial {
    SparsePolynomial::from_int_terms(terms.iter().copied())
}

fn with_lambda(mut q: SparsePolynomial, lambda: &BigRational) -> SparsePolynomial {
    q.add_term(Monomial::new(1, 1, 1), lambda.clone());
    q
}

impl SurfaceSpec {
    /// Assembles a surface without validating it; see [`validate`].
    pub fn from_parts(ws: WeightSystem, q: SparsePolynomial, kind: SurfaceKind) -> Self {
        SurfaceSpec { ws, q, kind }
    }

    /// `A_{m-1}`, `m >= 2`.
    pub fn type_a(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::ParameterOutOfRange(format!(
                "type A needs m >= 2, got {m}"
            )));
        }
        let mi = m as i64;
        let ws = WeightSystem::new(2, mi, mi, 2 * mi)?;
        Ok(Self::from_parts(
            ws,
            ip(&[(1, [m, 0, 0]), (1, [0, 2, 0]), (1, [0, 0, 2])]),
            SurfaceKind::A { m },
        ))
    }

    /// `D_{m+2}`, `m >= 2`.
    pub fn type_d(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::ParameterOutOfRange(format!(
                "type D needs m >= 2, got {m}"
            )));
        }
        let mi = m as i64;
        let ws = WeightSystem::new(2, mi, mi + 1, 2 * mi + 2)?;
        Ok(Self::from_parts(
            ws,
            ip(&[(1, [m + 1, 0, 0]), (1, [1, 2, 0]), (1, [0, 0, 2])]),
            SurfaceKind::D { m },
        ))
    }

    pub fn e6() -> Self {
        let ws = WeightSystem::new(3, 4, 6, 12).expect("E6 weights");
        Self::from_parts(
            ws,
            ip(&[(1, [4, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 2])]),
            SurfaceKind::E6,
        )
    }

    pub fn e7() -> Self {
        let ws = WeightSystem::new(4, 6, 9, 18).expect("E7 weights");
        Self::from_parts(
            ws,
            ip(&[(1, [3, 1, 0]), (1, [0, 3, 0]), (1, [0, 0, 2])]),
            SurfaceKind::E7,
        )
    }

    pub fn e8() -> Self {
        let ws = WeightSystem::new(6, 10, 15, 30).expect("E8 weights");
        Self::from_parts(
            ws,
            ip(&[(1, [5, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 2])]),
            SurfaceKind::E8,
        )
    }

    pub fn tilde_e6(lambda: BigRational) -> Self {
        let ws = WeightSystem::new(1, 1, 1, 3).expect("tE6 weights");
        let q = with_lambda(
            ip(&[(1, [3, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 3])]),
            &lambda,
        );
        Self::from_parts(ws, q, SurfaceKind::TildeE6 { lambda })
    }

    pub fn tilde_e7(lambda: BigRational) -> Self {
        let ws = WeightSystem::new(1, 1, 2, 4).expect("tE7 weights");
        let q = with_lambda(
            ip(&[(1, [4, 0, 0]), (1, [0, 4, 0]), (1, [0, 0, 2])]),
            &lambda,
        );
        Self::from_parts(ws, q, SurfaceKind::TildeE7 { lambda })
    }

    pub fn tilde_e8(lambda: BigRational) -> Self {
        let ws = WeightSystem::new(1, 2, 3, 6).expect("tE8 weights");
        let q = with_lambda(
            ip(&[(1, [6, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 2])]),
            &lambda,
        );
        Self::from_parts(ws, q, SurfaceKind::TildeE8 { lambda })
    }

    /// Catalog lookup. `m` is required for `A`/`D`; `lambda` defaults to 1.
    pub fn catalog(tag: CatalogTag, m: Option<u32>, lambda: Option<BigRational>) -> Result<Self> {
        let need_m =
            || m.ok_or_else(|| Error::ParameterOutOfRange(format!("{tag} needs the parameter m")));
        let lambda = lambda.unwrap_or_else(BigRational::one);
        match tag {
            CatalogTag::A => Self::type_a(need_m()?),
            CatalogTag::D => Self::type_d(need_m()?),
            CatalogTag::E6 => Ok(Self::e6()),
            CatalogTag::E7 => Ok(Self::e7()),
            CatalogTag::E8 => Ok(Self::e8()),
            CatalogTag::TildeE6 => Ok(Self::tilde_e6(lambda)),
            CatalogTag::TildeE7 => Ok(Self::tilde_e7(lambda)),
            CatalogTag::TildeE8 => Ok(Self::tilde_e8(lambda)),
        }
    }

    /// Catalog lookup by tag string.
    pub fn catalog_by_name(tag: &str, m: Option<u32>, lambda: Option<BigRational>) -> Result<Self> {
        Self::catalog(tag.parse()?, m, lambda)
    }

    /// The standard list used by the cross-checks: `A1..A3`, `D4`, `D5`, the
    /// three exceptional types and the elliptic surfaces at `λ = 1`.
    pub fn standard_catalog() -> Vec<SurfaceSpec> {
        let one = BigRational::one();
        vec![
            Self::type_a(2).unwrap(),
            Self::type_a(3).unwrap(),
            Self::type_a(4).unwrap(),
            Self::type_d(2).unwrap(),
            Self::type_d(3).unwrap(),
            Self::e6(),
            Self::e7(),
            Self::e8(),
            Self::tilde_e6(one.clone()),
            Self::tilde_e7(one.clone()),
            Self::tilde_e8(one),
        ]
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.ws
    }

    pub fn q(&self) -> &SparsePolynomial {
        &self.q
    }

    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    /// Bracket degree `kappa = d - (a + b + c)`.
    pub fn bracket_degree(&self) -> i64 {
        self.ws.kappa()
    }

    /// Checks homogeneity and the isolated-singularity criterion.
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Returns `self` when validation passes, the failures otherwise.
    pub fn validated(self) -> Result<Self> {
        let report = validate(&self);
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::InvalidSurface(report.failure_summary()))
        }
    }
}

/// Bracket degree of the surface.
pub fn bracket_degree(spec: &SurfaceSpec) -> i64 {
    spec.bracket_degree()
}

/// Outcome of one validation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    NotHomogeneous,
    WeightOrder,
    SmoothOrigin,
    NonIsolated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub surface: String,
    pub checks: Vec<ValidationCheck>,
    pub failures: Vec<FailureKind>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn is_non_isolated(&self) -> bool {
        self.failures.contains(&FailureKind::NonIsolated)
    }

    pub fn failure_summary(&self) -> String {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "validation of {}: {}",
            self.surface,
            if self.is_valid() { "valid" } else { "INVALID" }
        )?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

/// Validates a surface: `Q` is weight-homogeneous of degree `d`, the weights
/// are ordered, the origin is singular, and the Jacobi ring vanishes on the
/// weights `(S, S + lcm(a,b,c)]` above the socle bound `S = 3d - 2(a+b+c)`.
pub fn validate(spec: &SurfaceSpec) -> ValidationReport {
    let ws = spec.weights();
    let q = spec.q();
    let mut checks = Vec::new();
    let mut failures = Vec::new();

    let homogeneous = !q.is_zero() && q.terms().all(|(m, _)| m.weight(ws) == ws.d());
    checks.push(ValidationCheck {
        name: "homogeneity",
        passed: homogeneous,
        detail: if homogeneous {
            format!("every term has weight {}", ws.d())
        } else {
            let off: Vec<String> = q
                .terms()
                .filter(|(m, _)| m.weight(ws) != ws.d())
                .map(|(m, _)| format!("{m} (weight {})", m.weight(ws)))
                .collect();
            if q.is_zero() {
                "Q is zero".to_string()
            } else {
                format!("terms off degree {}: {}", ws.d(), off.join(", "))
            }
        },
    });
    if !homogeneous {
        failures.push(FailureKind::NotHomogeneous);
    }

    let ordered = ws.a() <= ws.b() && ws.b() <= ws.c();
    checks.push(ValidationCheck {
        name: "weight order",
        passed: ordered,
        detail: format!("a={}, b={}, c={}", ws.a(), ws.b(), ws.c()),
    });
    if !ordered {
        failures.push(FailureKind::WeightOrder);
    }

    let linear = q
        .terms()
        .find(|(m, _)| m.total_degree() <= 1)
        .map(|(m, _)| *m);
    checks.push(ValidationCheck {
        name: "singular origin",
        passed: linear.is_none(),
        detail: match linear {
            None => "Q has no constant or linear terms".to_string(),
            Some(m) => format!("Q contains the term {m}, so the origin is not a singular point"),
        },
    });
    if linear.is_some() {
        failures.push(FailureKind::SmoothOrigin);
    }

    if homogeneous {
        let socle = ws.socle_bound();
        let hi = socle + ws.lcm_abc();
        let lo = (socle + 1).max(0);
        let dims = jacobi::jacobi_dims_range(spec, lo, hi);
        let bad: Vec<(i64, u64)> = dims.into_iter().filter(|&(_, d)| d != 0).collect();
        checks.push(ValidationCheck {
            name: "isolated singularity",
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                format!("Jacobi ring vanishes on weights {}..={}", socle + 1, hi)
            } else {
                let (w, d) = bad[0];
                format!(
                    "non-isolated singularity: Jacobi ring has dimension {d} in weight {w} above the socle bound {socle}"
                )
            },
        });
        if !bad.is_empty() {
            failures.push(FailureKind::NonIsolated);
        }
    }

    ValidationReport {
        surface: spec.name(),
        checks,
        failures,
    }
}

/// One term of a custom surface file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CustomTerm {
    pub coef: String,
    pub exp: [u32; 3],
}

/// On-disk description of a custom surface:
/// `{"a":1,"b":1,"c":1,"terms":[{"coef":"1","exp":[3,0,0]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomSurface {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub terms: Vec<CustomTerm>,
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidCustomSurface(format!("`{s}` is not a rational of the form p/q"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl CustomSurface {
    /// Builds the surface, inferring `d` and enforcing homogeneity.
    pub fn into_spec(self) -> Result<SurfaceSpec> {
        let mut q = SparsePolynomial::zero();
        for t in &self.terms {
            let [i, j, k] = t.exp;
            q.add_term(Monomial::new(i, j, k), parse_rational(&t.coef)?);
        }
        if q.is_zero() {
            return Err(Error::InvalidCustomSurface("Q has no nonzero terms".into()));
        }
        // d is read off before the order check so a bad ordering is reported as such
        let d = q
            .terms()
            .map(|(m, _)| self.a * m.i as i64 + self.b * m.j as i64 + self.c * m.k as i64)
            .max()
            .unwrap_or(0);
        let ws = WeightSystem::new(self.a, self.b, self.c, d)?;
        if !q.is_homogeneous(&ws) {
            return Err(Error::NotHomogeneous(format!(
                "{q} under weights ({}, {}, {})",
                self.a, self.b, self.c
            )));
        }
        Ok(SurfaceSpec::from_parts(ws, q, SurfaceKind::Custom))
    }
}
