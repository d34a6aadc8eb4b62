//! Cross-checks between brute-force computations and closed formulas, and
//! randomized checks of the bracket axioms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{graded_basis, SparsePolynomial};
use crate::error::Result;
use crate::hp0::{hp0_dims_with, Hp0Options};
use crate::jacobi::{jacobi_dims, jacobi_hilbert_closed};
use crate::poisson::{BracketTable, PoissonStructure};
use crate::series::{
    chi_from_twists, chi_ytilde, generator_character, hp0_product_formula, type_a_slice_character,
    vq_table, wreath_hh0_character, wreath_partition_decomposition, Series, WindowCheck,
};
use crate::surface::SurfaceSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub surface: String,
    pub passed: bool,
    /// Inclusive weight window the check covers, when it is windowed.
    pub window: Option<(i64, i64)>,
    pub detail: String,
}

impl CheckResult {
    fn new(
        check: &str,
        surface: &str,
        passed: bool,
        window: Option<(i64, i64)>,
        detail: String,
    ) -> Self {
        CheckResult {
            check: check.into(),
            surface: surface.into(),
            passed,
            window,
            detail,
        }
    }

    fn from_window(check: &str, surface: &str, w: WindowCheck) -> Self {
        let detail = match w.first_mismatch {
            None => "equal".to_string(),
            Some((t, s)) => format!("first mismatch at t^{t} s^{s}"),
        };
        Self::new(check, surface, w.agrees, Some(w.window), detail)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]", self.check, self.surface)?;
        if let Some((lo, hi)) = self.window {
            write!(f, " window {lo}..={hi}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        let all_passed = checks.iter().all(|c| c.passed);
        VerifyReport { checks, all_passed }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub surfaces: Vec<SurfaceSpec>,
    /// Weight bound for the brute-force checks; `None` means the socle bound
    /// for the Alev–Lambre check and 10 for random bracket inputs.
    pub max_weight: Option<i64>,
    pub max_t: i64,
    pub max_n: u32,
    pub samples: usize,
    pub seed: u64,
    /// Replace `{z,x}` by its negative before running the bracket checks.
    pub mutate_bracket: bool,
    pub hp0: Hp0Options,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            surfaces: SurfaceSpec::standard_catalog(),
            max_weight: None,
            max_t: 40,
            max_n: 6,
            samples: 100,
            seed: 0x5eed,
            mutate_bracket: false,
            hp0: Hp0Options::default(),
        }
    }
}

/// Runs every check on every configured surface.
pub fn verify_all(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    // a weight bound also bounds the series windows
    let max_t = config
        .max_weight
        .map_or(config.max_t, |w| w.min(config.max_t));
    for spec in &config.surfaces {
        let poisson = if config.mutate_bracket {
            mutated_poisson(spec)
        } else {
            PoissonStructure::new(spec)
        };
        let bracket_weight = config.max_weight.map_or(10, |w| w.min(10));
        checks.extend(bracket_axioms(
            &poisson,
            config.samples,
            bracket_weight,
            config.seed,
        ));
        let socle = spec.weights().socle_bound();
        let w = config.max_weight.map_or(socle, |w| w.min(socle));
        checks.push(alev_lambre(spec, w, &config.hp0)?);
        checks.push(jacobi_closed_form(spec, w));
        checks.push(sym_identity(spec, max_t, config.max_n)?);
        if !spec.kind().is_type_a() {
            checks.push(chi_twists(spec, max_t, config.max_n)?);
        }
        checks.push(wreath_identity(spec, max_t, config.max_n)?);
        checks.push(wreath_partitions(spec, max_t, config.max_n)?);
    }
    for m in 2..=8 {
        checks.push(slice_identity(m, max_t, config.max_n)?);
    }
    Ok(VerifyReport::new(checks))
}

/// The Poisson structure of `spec` with the sign of `{z,x}` flipped.
pub fn mutated_poisson(spec: &SurfaceSpec) -> PoissonStructure {
    let mut table = BracketTable::new(spec);
    table.zx = -&table.zx;
    PoissonStructure::with_table(spec, table)
}

/// Random weight-homogeneous polynomial of weight in `0..=max_weight` with up
/// to three standard monomials and small integer coefficients.
pub fn random_homogeneous(
    spec: &SurfaceSpec,
    max_weight: i64,
    rng: &mut StdRng,
) -> Option<(SparsePolynomial, i64)> {
    let weights: Vec<i64> = (0..=max_weight)
        .filter(|w| !graded_basis(spec.weights(), spec.q(), *w).is_empty())
        .collect();
    if weights.is_empty() {
        return None;
    }
    let w = weights[rng.gen_range(0..weights.len())];
    let basis = graded_basis(spec.weights(), spec.q(), w);
    let mut p = SparsePolynomial::zero();
    while p.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let m = basis[rng.gen_range(0..basis.len())];
            let c = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            p.add_term(m, BigRational::from_integer(BigInt::from(c)));
        }
    }
    Some((p, w))
}

/// Antisymmetry, Leibniz, Jacobi, Casimir and weight-shift checks on
/// `samples` random inputs each.
pub fn bracket_axioms(
    poisson: &PoissonStructure,
    samples: usize,
    max_weight: i64,
    seed: u64,
) -> Vec<CheckResult> {
    let spec = poisson.spec();
    let name = spec.name();
    let kappa = spec.weights().kappa();
    let mut rng = StdRng::seed_from_u64(seed);
    let mut triples = Vec::with_capacity(samples);
    for _ in 0..samples {
        let draw = |rng: &mut StdRng| random_homogeneous(spec, max_weight, rng);
        match (draw(&mut rng), draw(&mut rng), draw(&mut rng)) {
            (Some(f), Some(g), Some(h)) => triples.push((f, g, h)),
            _ => break,
        }
    }
    let window = Some((0, max_weight));
    let count = triples.len();
    let mut failures = [0usize; 5];
    for ((f, fw), (g, gw), (h, _)) in &triples {
        let fg = poisson.bracket(f, g);
        if !(&fg + &poisson.bracket(g, f)).is_zero() {
            failures[0] += 1;
        }
        let lhs = poisson.bracket(&(f * g), h);
        let rhs = poisson.reduce(&(&(f * &poisson.bracket(g, h)) + &(g * &poisson.bracket(f, h))));
        if lhs != rhs {
            failures[1] += 1;
        }
        let jac = &(&poisson.bracket(f, &poisson.bracket(g, h))
            + &poisson.bracket(g, &poisson.bracket(h, f)))
            + &poisson.bracket(h, &fg);
        if !poisson.reduce(&jac).is_zero() {
            failures[2] += 1;
        }
        if !poisson.bracket_ambient(spec.q(), f).is_zero() {
            failures[3] += 1;
        }
        if !fg.is_zero() && fg.homogeneous_weight(spec.weights()) != Some(fw + gw + kappa) {
            failures[4] += 1;
        }
    }
    [
        "antisymmetry",
        "leibniz",
        "jacobi identity",
        "casimir",
        "weight shift",
    ]
    .iter()
    .zip(failures)
    .map(|(check, bad)| {
        CheckResult::new(
            check,
            &name,
            bad == 0,
            window,
            format!("{} of {count} random inputs failed", bad),
        )
    })
    .collect()
}

/// `HP₀(𝒪_X)` by brute force against the Jacobi ring, weights `0..=max_w`.
pub fn alev_lambre(spec: &SurfaceSpec, max_w: i64, opts: &Hp0Options) -> Result<CheckResult> {
    let max_w = max_w.max(0);
    let hp0 = hp0_dims_with(spec, 1, max_w, opts)?.dims;
    let jac = jacobi_dims(spec, max_w);
    let mismatch = (0..=max_w).find(|w| hp0.get(*w) != jac.get(*w));
    let detail = match mismatch {
        None => format!("total dimension {}", hp0.total()),
        Some(w) => format!("weight {w}: HP0 {} vs Jacobi {}", hp0.get(w), jac.get(w)),
    };
    Ok(CheckResult::new(
        "alev-lambre",
        &spec.name(),
        mismatch.is_none(),
        Some((0, max_w)),
        detail,
    ))
}

/// Brute-force Jacobi dimensions against the closed-form Hilbert series.
pub fn jacobi_closed_form(spec: &SurfaceSpec, max_w: i64) -> CheckResult {
    let max_w = max_w.max(0);
    let brute = jacobi_dims(spec, max_w).to_series();
    let closed = jacobi_hilbert_closed(spec.weights(), max_w);
    let w = brute.agrees_with(&closed);
    let detail = match w.first_mismatch {
        None => "equal".into(),
        Some((t, _)) => format!("first mismatch at t^{t}"),
    };
    CheckResult::new(
        "jacobi closed form",
        &spec.name(),
        w.agrees,
        Some(w.window),
        detail,
    )
}

/// `Sym(generator_character) = hp0_product_formula`.
pub fn sym_identity(spec: &SurfaceSpec, max_t: i64, max_n: u32) -> Result<CheckResult> {
    let lhs = generator_character(spec, max_t, max_n).sym()?;
    let rhs = hp0_product_formula(spec, max_t, max_n);
    Ok(CheckResult::from_window(
        "sym of generators = product formula",
        &spec.name(),
        lhs.agrees_with(&rhs),
    ))
}

/// Character of `Ỹ` recovered from the twists `V_q` against its closed form.
pub fn chi_twists(spec: &SurfaceSpec, max_t: i64, max_n: u32) -> Result<CheckResult> {
    let ws = spec.weights();
    let recovered = chi_from_twists(&vq_table(spec, max_n, max_t), ws, max_t, max_n)?;
    let closed = chi_ytilde(spec, max_t, max_n)?;
    Ok(CheckResult::from_window(
        "chi from twists = chi closed form",
        &spec.name(),
        recovered.agrees_with(&closed),
    ))
}

/// Partition formula with `H = h(J_Q)` against the product formula.
pub fn wreath_identity(spec: &SurfaceSpec, max_t: i64, max_n: u32) -> Result<CheckResult> {
    let h = jacobi_hilbert_closed(spec.weights(), max_t);
    let lhs = wreath_hh0_character(&h, spec.weights().d(), max_t, max_n)?;
    let rhs = hp0_product_formula(spec, max_t, max_n);
    Ok(CheckResult::from_window(
        "wreath character = product formula",
        &spec.name(),
        lhs.agrees_with(&rhs),
    ))
}

/// Each `s^n` row of the wreath character is the sum of its partition pieces.
pub fn wreath_partitions(spec: &SurfaceSpec, max_t: i64, max_n: u32) -> Result<CheckResult> {
    let ws = spec.weights();
    let h = jacobi_hilbert_closed(ws, max_t);
    let full = wreath_hh0_character(&h, ws.d(), max_t, max_n)?;
    for n in 1..=max_n {
        let pieces = wreath_partition_decomposition(&h, ws.d(), n, max_t)?;
        let sum = pieces
            .iter()
            .fold(Series::zero(max_t), |acc, (_, s)| acc.add(s));
        let w = sum.agrees_with(full.row(n));
        if !w.agrees {
            let detail = format!(
                "s^{n} row differs at t^{}",
                w.first_mismatch.map_or(0, |m| m.0)
            );
            return Ok(CheckResult::new(
                "wreath partition decomposition",
                &spec.name(),
                false,
                Some(w.window),
                detail,
            ));
        }
    }
    Ok(CheckResult::new(
        "wreath partition decomposition",
        &spec.name(),
        true,
        Some((0, max_t)),
        format!("rows s^1..s^{max_n} equal"),
    ))
}

/// Type-A slice character against the generator character of `A(m-1)`.
pub fn slice_identity(m: u32, max_t: i64, max_n: u32) -> Result<CheckResult> {
    let spec = SurfaceSpec::type_a(m)?;
    let lhs = type_a_slice_character(m, max_t, max_n)?;
    let rhs = generator_character(&spec, max_t, max_n);
    Ok(CheckResult::from_window(
        "type-A slice = generators",
        &spec.name(),
        lhs.agrees_with(&rhs),
    ))
}
