//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use hp0_core::hp0::{hp0_compare, hp0_dims, Hp0Options};
use hp0_core::jacobi::{coxeter_exponents, jacobi_dims, milnor_number};
use hp0_core::poisson::PoissonStructure;
use hp0_core::series::{
    chi_from_twists, chi_ytilde, generator_character, hp0_product_formula, type_a_slice_character,
    vq_table, wreath_hh0_character,
};
use hp0_core::surface::{CustomSurface, CustomTerm, SurfaceSpec};
use hp0_core::verify::bracket_axioms;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alev_lambre_surfaces() -> Vec<SurfaceSpec> {
    vec![
        SurfaceSpec::type_a(3).unwrap(),
        SurfaceSpec::type_a(4).unwrap(),
        SurfaceSpec::type_d(2).unwrap(),
        SurfaceSpec::e6(),
        SurfaceSpec::e7(),
        SurfaceSpec::e8(),
        SurfaceSpec::tilde_e6(rat(1)),
        SurfaceSpec::tilde_e7(rat(1)),
        SurfaceSpec::tilde_e8(rat(1)),
    ]
}

fn criterion_1() -> Outcome {
    let mut seen = Vec::new();
    for spec in alev_lambre_surfaces() {
        let socle = spec.weights().socle_bound();
        let hp0 = hp0_dims(&spec, 1, socle).map_err(|e| e.to_string())?.dims;
        let jac = jacobi_dims(&spec, socle);
        for w in 0..=socle {
            ensure(hp0.get(w) == jac.get(w), || {
                format!(
                    "{} weight {w}: HP0 {} vs Jacobi {}",
                    spec.name(),
                    hp0.get(w),
                    jac.get(w)
                )
            })?;
        }
        seen.push(format!("{}<={socle}", spec.name()));
    }
    Ok(format!("HP0(O_X) = J_Q on {}", seen.join(", ")))
}

fn criterion_2() -> Outcome {
    for m in 2..=6u32 {
        let c = coxeter_exponents(&SurfaceSpec::type_a(m).unwrap()).map_err(|e| e.to_string())?;
        let expect: Vec<i64> = (1..m as i64).collect();
        ensure(
            c.exponents == expect && c.coxeter_number == m as i64,
            || {
                format!(
                    "A{}: exponents {:?}, h = {}",
                    m - 1,
                    c.exponents,
                    c.coxeter_number
                )
            },
        )?;
    }
    let d4 = coxeter_exponents(&SurfaceSpec::type_d(2).unwrap()).map_err(|e| e.to_string())?;
    ensure(
        d4.exponents == vec![1, 3, 3, 5] && d4.coxeter_number == 6,
        || format!("D4: {d4:?}"),
    )?;
    let e6 = coxeter_exponents(&SurfaceSpec::e6()).map_err(|e| e.to_string())?;
    ensure(
        e6.exponents == vec![1, 4, 5, 7, 8, 11] && e6.coxeter_number == 12,
        || format!("E6: {e6:?}"),
    )?;
    for spec in [
        SurfaceSpec::type_d(3).unwrap(),
        SurfaceSpec::e7(),
        SurfaceSpec::e8(),
    ] {
        let c = coxeter_exponents(&spec).map_err(|e| e.to_string())?;
        ensure(c.coxeter_number == spec.weights().d(), || {
            format!("{}: h = {}", spec.name(), c.coxeter_number)
        })?;
    }
    Ok("A1..A5, D4, E6 exponents and Coxeter numbers match".into())
}

fn criterion_3() -> Outcome {
    let a1 = SurfaceSpec::type_a(2).unwrap();
    let a2 = SurfaceSpec::type_a(3).unwrap();
    let d4 = SurfaceSpec::type_d(2).unwrap();
    let cases = [(&a1, 2, 12), (&a1, 3, 12), (&a2, 2, 10), (&d4, 2, 10)];
    let mut summary = Vec::new();
    for (spec, n, max_w) in cases {
        let r = hp0_compare(spec, n, max_w).map_err(|e| e.to_string())?;
        ensure(r.all_equal, || {
            let bad = r.rows.iter().find(|row| !row.equal).unwrap();
            format!(
                "{} n={n}: weight {} brute {} vs closed {}",
                spec.name(),
                bad.weight,
                bad.dim_bruteforce,
                bad.dim_closedform
            )
        })?;
        summary.push(format!("({} n={n} w<={max_w})", spec.name()));
    }
    let a1_sq = hp0_dims(&a1, 2, 12).map_err(|e| e.to_string())?.dims;
    let got: Vec<(i64, u64)> = a1_sq.nonzero().collect();
    ensure(got == vec![(0, 1), (4, 1)], || {
        format!("A1 S^2 dims {got:?}")
    })?;
    let a2_sq = hp0_dims(&a2, 2, 8).map_err(|e| e.to_string())?.dims;
    let row: Vec<u64> = (0..=8).map(|w| a2_sq.get(w)).collect();
    ensure(row == vec![1, 0, 1, 0, 1, 0, 1, 0, 1], || {
        format!("A2 S^2 dims {row:?}")
    })?;
    Ok(format!(
        "brute force = product formula for {}",
        summary.join(" ")
    ))
}

fn criterion_4() -> Outcome {
    let (max_t, max_n) = (40, 6);
    let catalog = SurfaceSpec::standard_catalog();
    for spec in &catalog {
        let name = spec.name();
        let product = hp0_product_formula(spec, max_t, max_n);
        let sym = generator_character(spec, max_t, max_n)
            .sym()
            .map_err(|e| e.to_string())?;
        let w = sym.agrees_with(&product);
        ensure(w.agrees, || {
            format!("(a) {name}: mismatch at {:?}", w.first_mismatch)
        })?;
        let h = hp0_core::jacobi::jacobi_hilbert_closed(spec.weights(), max_t);
        let wreath = wreath_hh0_character(&h, spec.weights().d(), max_t, max_n)
            .map_err(|e| e.to_string())?;
        let w = wreath.agrees_with(&product);
        ensure(w.agrees, || {
            format!("(c) {name}: mismatch at {:?}", w.first_mismatch)
        })?;
        if !spec.kind().is_type_a() {
            let chi = chi_ytilde(spec, max_t, max_n).map_err(|e| e.to_string())?;
            let rec = chi_from_twists(&vq_table(spec, max_n, max_t), spec.weights(), max_t, max_n)
                .map_err(|e| e.to_string())?;
            let w = rec.agrees_with(&chi);
            ensure(w.agrees && w.window == (0, max_t), || {
                format!("(b) {name}: {w:?}")
            })?;
        }
    }
    for m in 2..=8u32 {
        let slice = type_a_slice_character(m, max_t, max_n).map_err(|e| e.to_string())?;
        let gens = generator_character(&SurfaceSpec::type_a(m).unwrap(), max_t, max_n);
        let w = slice.agrees_with(&gens);
        ensure(w.agrees, || {
            format!("(d) m={m}: mismatch at {:?}", w.first_mismatch)
        })?;
    }
    Ok(format!(
        "(a)-(d) exact on t<={max_t}, s<={max_n} for {} catalog surfaces and m=2..8",
        catalog.len()
    ))
}

fn criterion_5() -> Outcome {
    let samples = 100;
    for spec in SurfaceSpec::standard_catalog() {
        let checks = bracket_axioms(&PoissonStructure::new(&spec), samples, 10, 0xacce);
        for c in checks {
            ensure(c.passed, || {
                format!("{}: {} ({})", spec.name(), c.check, c.detail)
            })?;
            ensure(
                c.detail
                    .ends_with(&format!("of {samples} random inputs failed")),
                || format!("{}: only partial sample ({})", spec.name(), c.detail),
            )?;
        }
    }
    Ok(format!(
        "5 axioms x {samples} random inputs of weight <= 10 on every catalog surface"
    ))
}

fn criterion_6() -> Outcome {
    let hesse = SurfaceSpec::tilde_e6(rat(-3)).validate();
    ensure(!hesse.is_valid() && hesse.is_non_isolated(), || {
        format!("tE6(-3) not rejected: {hesse}")
    })?;
    ensure(hesse.failure_summary().contains("non-isolated"), || {
        hesse.failure_summary()
    })?;
    let x2y = CustomSurface {
        a: 1,
        b: 1,
        c: 1,
        terms: vec![CustomTerm {
            coef: "1".into(),
            exp: [2, 1, 0],
        }],
    }
    .into_spec()
    .map_err(|e| e.to_string())?
    .validate();
    ensure(!x2y.is_valid() && x2y.is_non_isolated(), || {
        format!("x^2y not rejected: {x2y}")
    })?;
    ensure(x2y.failure_summary().contains("non-isolated"), || {
        x2y.failure_summary()
    })?;
    for spec in SurfaceSpec::standard_catalog() {
        let r = spec.validate();
        ensure(r.is_valid(), || {
            format!("{} rejected: {}", spec.name(), r.failure_summary())
        })?;
    }
    Ok("tE6(lambda=-3) and x^2y rejected as non-isolated; catalog accepted".into())
}

fn criterion_7() -> Outcome {
    for m in 2..=6u32 {
        let mu = milnor_number(&SurfaceSpec::type_a(m).unwrap());
        ensure(mu == (m - 1) as u64, || format!("mu(A{}) = {mu}", m - 1))?;
    }
    let e6 = milnor_number(&SurfaceSpec::e6());
    ensure(e6 == 6, || format!("mu(E6) = {e6}"))?;
    let te6 = milnor_number(&SurfaceSpec::tilde_e6(rat(1)));
    ensure(te6 == 8, || format!("mu(tE6) = {te6}"))?;
    let total = hp0_core::hp0::hp0_dims_with(
        &SurfaceSpec::type_a(2).unwrap(),
        2,
        12,
        &Hp0Options::default(),
    )
    .map_err(|e| e.to_string())?
    .dims
    .total();
    ensure(total == 2, || {
        format!("dim HP0(S^2 A1) up to weight 12 = {total}")
    })?;
    Ok("mu(A1..A5) = 1..5, mu(E6) = 6, mu(tE6) = 8, dim HP0(S^2 A1) = 2".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 Alev-Lambre equality", criterion_1),
        ("2 Coxeter exponents", criterion_2),
        ("3 brute force vs product formula", criterion_3),
        ("4 series identities", criterion_4),
        ("5 bracket axioms", criterion_5),
        ("6 validation negatives", criterion_6),
        ("7 scalar values", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({secs:.2}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
