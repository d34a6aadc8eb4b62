use num_rational::BigRational;
use serde::Serialize;

use hp0_core::hp0::{hp0_compare_with, Hp0Options};
use hp0_core::jacobi::{
    coxeter_exponents, jacobi_dims, jacobi_exponents, jacobi_hilbert_closed, CoxeterData,
};
use hp0_core::series::{
    chi_ytilde, generator_character, hp0_product_formula, type_a_slice_character, vq_series,
    wreath_hh0_character, BiSeries,
};
use hp0_core::surface::{parse_rational, CatalogTag, CustomSurface, SurfaceKind, SurfaceSpec};
use hp0_core::verify::{verify_all, VerifyConfig};

use crate::output::{csv_text, json_text, table_text};
use crate::{Format, RunConfig, SeriesKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    /// A surface failed validation; the report goes to stdout.
    #[error("surface rejected")]
    Rejected(String),
    /// A comparison or check failed; the rendered result goes to stdout.
    #[error("check failed")]
    Failed(String),
    #[error(transparent)]
    Core(#[from] hp0_core::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Core(hp0_core::Error::MatrixCapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

type CmdResult = Result<String, CliError>;

fn lambda(config: &RunConfig) -> Result<Option<BigRational>, CliError> {
    config
        .lambda
        .as_deref()
        .map(parse_rational)
        .transpose()
        .map_err(CliError::from)
}

fn catalog_entry(tag: &str, config: &RunConfig) -> Result<SurfaceSpec, CliError> {
    Ok(SurfaceSpec::catalog_by_name(
        tag,
        config.m,
        lambda(config)?,
    )?)
}

/// The surface selected by `--surface` or `--custom`, if any.
fn selected(config: &RunConfig) -> Result<Option<SurfaceSpec>, CliError> {
    if let Some(path) = &config.custom {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let custom: CustomSurface = serde_json::from_str(&text).map_err(|e| {
            CliError::Invalid(format!("bad custom surface {}: {e}", path.display()))
        })?;
        return Ok(Some(custom.into_spec()?));
    }
    config
        .surface
        .as_deref()
        .map(|tag| catalog_entry(tag, config))
        .transpose()
}

/// The selected surface after validation.
fn surface(config: &RunConfig) -> Result<SurfaceSpec, CliError> {
    let spec = selected(config)?
        .ok_or_else(|| CliError::Invalid("choose a surface with --surface or --custom".into()))?;
    let report = spec.validate();
    if !report.is_valid() {
        return Err(CliError::Rejected(report.to_string()));
    }
    Ok(spec)
}

#[derive(Serialize)]
struct SurfaceRow {
    name: String,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    kappa: i64,
    q: String,
}

impl SurfaceRow {
    fn new(spec: &SurfaceSpec) -> Self {
        let ws = spec.weights();
        SurfaceRow {
            name: spec.name(),
            a: ws.a(),
            b: ws.b(),
            c: ws.c(),
            d: ws.d(),
            kappa: ws.kappa(),
            q: spec.q().to_string(),
        }
    }

    fn cells(&self) -> [String; 7] {
        [
            self.name.clone(),
            self.a.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            self.d.to_string(),
            self.kappa.to_string(),
            self.q.clone(),
        ]
    }
}

const SURFACE_HEADER: [&str; 7] = ["surface", "a", "b", "c", "d", "kappa", "Q"];

pub fn surface_list(config: &RunConfig) -> CmdResult {
    let rows: Vec<SurfaceRow> = SurfaceSpec::standard_catalog()
        .iter()
        .map(SurfaceRow::new)
        .collect();
    let cells: Vec<[String; 7]> = rows.iter().map(SurfaceRow::cells).collect();
    let tags: Vec<&str> = CatalogTag::ALL.iter().map(|t| t.as_str()).collect();
    match config.format {
        Format::Table => Ok(table_text(&SURFACE_HEADER, &cells)
            + &format!(
                "tags: {}; A and D take any --m >= 2, the elliptic tags take --lambda\n",
                tags.join(", ")
            )),
        Format::Json => json_text(&rows),
        Format::Csv => csv_text(&SURFACE_HEADER, &cells),
    }
}

#[derive(Serialize)]
struct ShowJson<'a> {
    surface: SurfaceRow,
    validation: &'a hp0_core::surface::ValidationReport,
}

pub fn surface_show(config: &RunConfig, tag: &str) -> CmdResult {
    let spec = catalog_entry(tag, config)?;
    let report = spec.validate();
    let row = SurfaceRow::new(&spec);
    let text = match config.format {
        Format::Table => {
            let ws = spec.weights();
            format!(
                "{}\n  a={}, b={}, c={}, d={}, kappa={}\n  Q = {}\n{report}",
                spec.name(),
                ws.a(),
                ws.b(),
                ws.c(),
                ws.d(),
                ws.kappa(),
                spec.q()
            )
        }
        Format::Json => json_text(&ShowJson {
            surface: row,
            validation: &report,
        })?,
        Format::Csv => csv_text(&SURFACE_HEADER, &[row.cells()])?,
    };
    if report.is_valid() {
        Ok(text)
    } else {
        Err(CliError::Rejected(text))
    }
}

#[derive(Serialize)]
struct JacobiRow {
    weight: i64,
    dim_bruteforce: u64,
    dim_closedform: String,
    equal: bool,
}

#[derive(Serialize)]
struct JacobiJson {
    surface: String,
    max_weight: i64,
    rows: Vec<JacobiRow>,
    milnor_number: u64,
    jacobi_exponents: Vec<i64>,
    coxeter: Option<CoxeterData>,
}

const COMPARE_HEADER: [&str; 4] = ["weight", "dim_bruteforce", "dim_closedform", "equal"];

pub fn jacobi(config: &RunConfig) -> CmdResult {
    let spec = surface(config)?;
    let socle = spec.weights().socle_bound();
    let max_w = config.max_weight.unwrap_or(socle);
    let dims = jacobi_dims(&spec, max_w);
    let closed = jacobi_hilbert_closed(spec.weights(), max_w);
    let rows: Vec<JacobiRow> = (0..=max_w)
        .map(|w| {
            let c = closed.coeff(w);
            JacobiRow {
                weight: w,
                dim_bruteforce: dims.get(w),
                equal: c == dims.get(w).into(),
                dim_closedform: c.to_string(),
            }
        })
        .collect();
    let all_equal = rows.iter().all(|r| r.equal);
    let full = jacobi_dims(&spec, socle.max(0));
    let exponents = jacobi_exponents(&spec);
    let coxeter = if spec.kind().is_kleinian() {
        Some(coxeter_exponents(&spec)?)
    } else {
        None
    };
    let out = JacobiJson {
        surface: spec.name(),
        max_weight: max_w,
        milnor_number: full.total(),
        jacobi_exponents: exponents,
        coxeter,
        rows,
    };
    let cells: Vec<[String; 4]> = out
        .rows
        .iter()
        .map(|r| {
            [
                r.weight.to_string(),
                r.dim_bruteforce.to_string(),
                r.dim_closedform.clone(),
                r.equal.to_string(),
            ]
        })
        .collect();
    let text = match config.format {
        Format::Table => {
            let mut t =
                format!("Jacobi ring of {}\n", out.surface) + &table_text(&COMPARE_HEADER, &cells);
            t += &format!(
                "milnor number: {}\nexponents n_i: {:?}\n",
                out.milnor_number, out.jacobi_exponents
            );
            if let Some(c) = &out.coxeter {
                t += &format!(
                    "coxeter exponents: {:?}\ncoxeter number: {}\n",
                    c.exponents, c.coxeter_number
                );
            }
            t
        }
        Format::Json => json_text(&out)?,
        Format::Csv => csv_text(&COMPARE_HEADER, &cells)?,
    };
    if all_equal {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}

pub fn hp0(config: &RunConfig) -> CmdResult {
    let spec = surface(config)?;
    let max_w = config.max_weight.unwrap_or(12);
    let opts = Hp0Options {
        cap: config.cap,
        ..Hp0Options::default()
    };
    let report = hp0_compare_with(&spec, config.n as usize, max_w, &opts)?;
    let cells: Vec<[String; 4]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.weight.to_string(),
                r.dim_bruteforce.to_string(),
                r.dim_closedform.to_string(),
                r.equal.to_string(),
            ]
        })
        .collect();
    let text = match config.format {
        Format::Table => {
            format!("HP0(Sym^{} O_X) for {}\n", report.n, report.surface)
                + &table_text(&COMPARE_HEADER, &cells)
                + &format!(
                    "{} up to weight {max_w}; higher weights are not covered\n",
                    if report.all_equal {
                        "all equal"
                    } else {
                        "MISMATCH"
                    }
                )
        }
        Format::Json => json_text(&report)?,
        Format::Csv => csv_text(&COMPARE_HEADER, &cells)?,
    };
    if report.all_equal {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}

pub fn series(config: &RunConfig, kind: SeriesKind) -> CmdResult {
    let spec = surface(config)?;
    let (max_t, max_n) = (config.max_t, config.max_s);
    let ws = spec.weights();
    let (title, s) = match kind {
        SeriesKind::Generator => (
            "generator character",
            generator_character(&spec, max_t, max_n),
        ),
        SeriesKind::Product => ("product formula", hp0_product_formula(&spec, max_t, max_n)),
        SeriesKind::Chi => (
            "character of Y~ (s marks the twist)",
            chi_ytilde(&spec, max_t, max_n)?,
        ),
        SeriesKind::Vq => {
            let rows = (0..=max_n).map(|q| vq_series(&spec, q, max_t)).collect();
            ("characters V_q (row s^q)", BiSeries::from_rows(rows))
        }
        SeriesKind::Wreath => {
            let h = jacobi_hilbert_closed(ws, max_t);
            (
                "partition formula with H = h(J_Q)",
                wreath_hh0_character(&h, ws.d(), max_t, max_n)?,
            )
        }
        SeriesKind::Slice => {
            let SurfaceKind::A { m } = spec.kind() else {
                return Err(CliError::Invalid(format!(
                    "the slice character needs a type A surface, got {}",
                    spec.name()
                )));
            };
            (
                "type-A slice character",
                type_a_slice_character(*m, max_t, max_n)?,
            )
        }
    };
    match config.format {
        Format::Table => Ok(format!("{title} of {}\n{}", spec.name(), s.to_table())),
        Format::Json => Ok(s.to_json() + "\n"),
        Format::Csv => Ok(s.to_csv()),
    }
}

pub fn verify(config: &RunConfig, mutate_bracket: bool, samples: usize) -> CmdResult {
    let surfaces = match selected(config)? {
        Some(spec) => {
            let report = spec.validate();
            if !report.is_valid() {
                return Err(CliError::Rejected(report.to_string()));
            }
            vec![spec]
        }
        None => SurfaceSpec::standard_catalog(),
    };
    let vc = VerifyConfig {
        surfaces,
        max_weight: config.max_weight,
        max_t: config.max_t,
        max_n: config.max_s,
        samples,
        mutate_bracket,
        hp0: Hp0Options {
            cap: config.cap,
            ..Hp0Options::default()
        },
        ..VerifyConfig::default()
    };
    let report = verify_all(&vc)?;
    let header = [
        "check",
        "surface",
        "passed",
        "window_lo",
        "window_hi",
        "detail",
    ];
    let cells: Vec<[String; 6]> = report
        .checks
        .iter()
        .map(|c| {
            let (lo, hi) = c.window.map_or((String::new(), String::new()), |(lo, hi)| {
                (lo.to_string(), hi.to_string())
            });
            [
                c.check.clone(),
                c.surface.clone(),
                c.passed.to_string(),
                lo,
                hi,
                c.detail.clone(),
            ]
        })
        .collect();
    let text = match config.format {
        Format::Table => {
            let mut t: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            t += &format!("{} checks, {failed} failed\n", report.checks.len());
            t
        }
        Format::Json => json_text(&report)?,
        Format::Csv => csv_text(&header, &cells)?,
    };
    if report.all_passed {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Failed(String::new()).code(), 1);
        assert_eq!(CliError::Rejected(String::new()).code(), 2);
        assert_eq!(CliError::Invalid(String::new()).code(), 2);
        assert_eq!(
            CliError::Core(hp0_core::Error::UnknownTag("X".into())).code(),
            2
        );
        assert_eq!(
            CliError::Core(hp0_core::Error::MatrixCapExceeded {
                weight: 1,
                nnz: 2,
                cap: 1
            })
            .code(),
            3
        );
    }
}
