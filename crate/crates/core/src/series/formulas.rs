//! Closed-form generating functions: generators and product formula for
//! `HP₀(Sym 𝒪_X)`, characters of `Ỹ` and of the bundles `V_q`, section
//! characters of `𝒪(p)_m` on `ℙ¹`, the partition formula, and the type-A slice.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{BiSeries, Series};
use crate::algebra::WeightSystem;
use crate::error::{Error, Result};
use crate::jacobi::jacobi_hilbert_closed;
use crate::surface::SurfaceSpec;

/// `Σ_{j≥0} H(t) t^{jd} s^{j+1}`.
fn tower(h: &Series, d: i64, max_t: i64, max_n: u32) -> BiSeries {
    let mut out = BiSeries::zero(max_t, max_n);
    for j in 0..max_n {
        for (e, c) in h.terms() {
            out.add_term(e + j as i64 * d, j + 1, c.clone());
        }
    }
    out
}

/// Generators of `HP₀(Sym 𝒪_X)`: `h(J_Q;t) s / (1 - t^d s)`, in the
/// weights of `HP₀` itself (not negated).
pub fn generator_character(spec: &SurfaceSpec, max_t: i64, max_n: u32) -> BiSeries {
    let ws = spec.weights();
    tower(&jacobi_hilbert_closed(ws, max_t), ws.d(), max_t, max_n)
}

/// `∏_i ∏_{j≥0} 1/(1 - t^{n_i + jd} s^{j+1})` over the Jacobi exponents `n_i`.
pub fn hp0_product_formula(spec: &SurfaceSpec, max_t: i64, max_n: u32) -> BiSeries {
    let ws = spec.weights();
    let h = jacobi_hilbert_closed(ws, max_t);
    let mut out = BiSeries::one(max_t, max_n);
    for (n_i, mult) in h.terms() {
        for j in 0..max_n {
            let w = n_i + j as i64 * ws.d();
            if w > max_t {
                break;
            }
            let mut k = mult.clone();
            while k.is_positive() {
                out.div_one_minus(w, j + 1);
                k -= 1;
            }
            while k.is_negative() {
                out = out.sub(&out.shift(w, j + 1));
                k += 1;
            }
        }
    }
    out
}

/// Character of the free commutative algebra on generators counted by `l`.
pub fn sym_of_bigraded(l: &BiSeries) -> Result<BiSeries> {
    l.sym()
}

fn refuse_type_a(spec: &SurfaceSpec, what: &str) -> Result<()> {
    if spec.kind().is_type_a() {
        return Err(Error::Unsupported {
            surface: spec.name(),
            reason: format!("{what} is not defined in type A"),
        });
    }
    Ok(())
}

/// `χ(Ỹ) = (1-t^{d-a})(1-t^{d-b})(1-t^{d-c}) / ((1-t^a)(1-t^b)(1-t^c)(1-t^{d-a}s))`,
/// with `s` marking the twist `p` of `𝒪(p)`.
pub fn chi_ytilde(spec: &SurfaceSpec, max_t: i64, max_n: u32) -> Result<BiSeries> {
    refuse_type_a(spec, "the character of Ỹ")?;
    let ws = spec.weights();
    let mut out = BiSeries::from_row(&jacobi_hilbert_closed(ws, max_t), 0, max_n);
    out.div_one_minus(ws.d() - ws.a(), 1);
    Ok(out)
}

/// `h(V_q;t) = t^{q(d-a)} (1-t^{d-c}) / ((1-t^a)(1-t^b)(1-t^c))`.
pub fn vq_series(spec: &SurfaceSpec, q: u32, max_t: i64) -> Series {
    let ws = spec.weights();
    let mut s = Series::monomial(q as i64 * (ws.d() - ws.a()), BigInt::one(), max_t)
        .mul_one_minus(ws.d() - ws.c());
    for w in ws.weights() {
        s = s.div_one_minus(w);
    }
    s.truncate(max_t)
}

/// Twist and equivariant weight of the line bundle `𝒪(p)_m` on `ℙ¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LineBundleLabel {
    pub p: i64,
    pub m: i64,
}

/// `h(Γ(ℙ¹, 𝒪(p)_m); t) = t^m (1 + t^{a-b} + ⋯ + t^{p(a-b)})`, zero for `p < 0`.
/// The window is `[m + p(a-b), max_t]`.
pub fn sections_character(label: LineBundleLabel, ws: &WeightSystem, max_t: i64) -> Series {
    let step = ws.a() - ws.b();
    let lowest = label.m + label.p.max(0) * step;
    let mut s = Series::zero_window(lowest.min(0), max_t);
    for i in 0..=label.p {
        s.add_term(label.m + i * step, BigInt::one());
    }
    s
}

/// Recovers `χ = Σ_q s^q E_q` from the section characters `V_q` via
/// `E_q = (V_q - V_{q+1}) - t^{a-b}(V_{q+1} - V_{q+2})`.
///
/// Needs `V_0, …, V_{max_q+2}` known up to `t^{max_t + b - a}`.
pub fn chi_from_twists(
    vqs: &[Series],
    ws: &WeightSystem,
    max_t: i64,
    max_q: u32,
) -> Result<BiSeries> {
    let need = max_q as usize + 3;
    if vqs.len() < need {
        return Err(Error::SeriesDomain(format!(
            "need {need} twist characters, got {}",
            vqs.len()
        )));
    }
    let step = ws.a() - ws.b();
    let mut rows = Vec::with_capacity(max_q as usize + 1);
    for q in 0..=max_q as usize {
        let left = vqs[q].sub(&vqs[q + 1]);
        let right = vqs[q + 1].sub(&vqs[q + 2]).shift(step);
        let e = left.sub(&right);
        if e.max_t() < max_t {
            return Err(Error::SeriesDomain(format!(
                "twist characters only determine E_{q} up to t^{}, asked for t^{max_t}",
                e.max_t()
            )));
        }
        for (t, c) in e.terms() {
            if t > max_t {
                break;
            }
            if c.is_negative() {
                return Err(Error::NegativeCoefficient {
                    t,
                    s: q as u32,
                    coef: c.to_string(),
                });
            }
            if t < 0 {
                return Err(Error::SeriesDomain(format!(
                    "E_{q} has a term at negative weight t^{t}"
                )));
            }
        }
        rows.push(Series::from_terms(
            0,
            max_t,
            e.terms().map(|(t, c)| (t, c.clone())),
        ));
    }
    Ok(BiSeries::from_rows(rows))
}

/// `V_0, …, V_{max_q+2}` for `spec`, known far enough to feed [`chi_from_twists`] up to `max_t`.
pub fn vq_table(spec: &SurfaceSpec, max_q: u32, max_t: i64) -> Vec<Series> {
    let ws = spec.weights();
    let reach = max_t + (ws.b() - ws.a());
    (0..=max_q + 2).map(|q| vq_series(spec, q, reach)).collect()
}

/// `Sym(H[τ])` with `τ` of `s`-degree 1 and weight `d`: the plethystic
/// exponential of `Σ_{j≥0} H t^{jd} s^{j+1}`.
pub fn wreath_hh0_character(h: &Series, d: i64, max_t: i64, max_n: u32) -> Result<BiSeries> {
    if h.terms().any(|(e, _)| e < 0) {
        return Err(Error::SeriesDomain(
            "H must be supported in nonnegative weights".into(),
        ));
    }
    tower(&h.truncate(max_t), d, max_t, max_n).sym()
}

/// Partitions of `n` as nonincreasing part lists.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, largest: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=rest.min(largest)).rev() {
            current.push(part);
            go(rest - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Character of `Sym^k V` for a graded space `V` with nonnegative character.
pub fn sym_power_character(v: &Series, k: u32) -> Result<Series> {
    if k == 0 {
        return Ok(Series::one(v.max_t()));
    }
    Ok(BiSeries::from_row(v, 1, k).sym()?.row(k).clone())
}

/// The summand `⊗_i Sym^{m_i}(H t^{(i-1)d})` attached to a partition with
/// `m_i` parts equal to `i`.
pub fn wreath_partition_piece(h: &Series, d: i64, partition: &[u32], max_t: i64) -> Result<Series> {
    let mut out = Series::one(max_t);
    let mut parts = partition.to_vec();
    parts.dedup();
    for i in parts {
        let m_i = partition.iter().filter(|p| **p == i).count() as u32;
        if (i as i64 - 1) * d > max_t {
            return Ok(Series::zero(max_t));
        }
        let shifted = h.truncate(max_t).shift((i as i64 - 1) * d).truncate(max_t);
        out = out
            .mul(&sym_power_character(&shifted, m_i)?)
            .truncate(max_t);
    }
    Ok(out)
}

/// The `s^n` row of the wreath character split over the partitions of `n`.
pub fn wreath_partition_decomposition(
    h: &Series,
    d: i64,
    n: u32,
    max_t: i64,
) -> Result<Vec<(Vec<u32>, Series)>> {
    partitions(n)
        .into_iter()
        .map(|p| wreath_partition_piece(h, d, &p, max_t).map(|s| (p, s)))
        .collect()
}

/// A coordinate of the type-A slice: the monomial `x^r y^s` with its
/// `s`-degree `(r-s)/m + 1` and weight `r + s + m(degree - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SliceCoordinate {
    pub r: i64,
    pub s: i64,
    pub degree: u32,
    pub weight: i64,
}

/// Slice monomials `x^{mk}(xy)^j`, `0 ≤ j ≤ m-2`, with `s`-degree at most `max_n`.
pub fn slice_coordinates(m: u32, max_n: u32) -> Vec<SliceCoordinate> {
    let m = m as i64;
    let mut out = Vec::new();
    for k in 0..max_n as i64 {
        for j in 0..=m - 2 {
            let (r, s) = (m * k + j, j);
            let degree = ((r - s) / m + 1) as u32;
            out.push(SliceCoordinate {
                r,
                s,
                degree,
                weight: r + s + m * (degree as i64 - 1),
            });
        }
    }
    out
}

/// `Σ_{k≥0} Σ_{j=0}^{m-2} s^{k+1} t^{2(mk+j)}`, built from the slice coordinates.
pub fn type_a_slice_character(m: u32, max_t: i64, max_n: u32) -> Result<BiSeries> {
    if m < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "slice needs m >= 2, got {m}"
        )));
    }
    let mut out = BiSeries::zero(max_t, max_n);
    for c in slice_coordinates(m, max_n) {
        out.add_term(c.weight, c.degree, BigInt::one());
    }
    Ok(out)
}

/// `s^n` row of a bivariate series, for convenience.
pub fn s_row(series: &BiSeries, n: u32) -> Series {
    if n > series.max_n() {
        return Series::zero_window(series.floor(), series.max_t());
    }
    series.row(n).clone()
}

/// Sum of the coefficients in a window, e.g. a total dimension.
pub fn total_in_window(s: &Series, lo: i64, hi: i64) -> BigInt {
    s.terms()
        .filter(|(e, _)| (lo..=hi).contains(e))
        .fold(BigInt::zero(), |acc, (_, c)| acc + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn poly(max_t: i64, terms: &[(i64, i64)]) -> Series {
        Series::from_terms(0, max_t, terms.iter().map(|(e, c)| (*e, big(*c))))
    }

    #[test]
    fn a1_generators_and_product() {
        let a1 = SurfaceSpec::type_a(2).unwrap();
        let g = generator_character(&a1, 12, 3);
        assert_eq!(
            g.terms(),
            vec![(0, 1, big(1)), (4, 2, big(1)), (8, 3, big(1))]
        );
        let p = hp0_product_formula(&a1, 12, 3);
        assert_eq!(p.row(2), &poly(12, &[(0, 1), (4, 1)]));
        assert_eq!(p.row(0), &Series::one(12));
    }

    #[test]
    fn a2_square_row() {
        let a2 = SurfaceSpec::type_a(3).unwrap();
        let p = hp0_product_formula(&a2, 8, 2);
        assert_eq!(
            p.row(2),
            &poly(8, &[(0, 1), (2, 1), (4, 1), (6, 1), (8, 1)])
        );
    }

    #[test]
    fn e6_generator_first_row() {
        let e6 = SurfaceSpec::e6();
        let g = generator_character(&e6, 30, 3);
        assert_eq!(g.row(1), &jacobi_hilbert_closed(e6.weights(), 30));
        assert_eq!(g.coeff(12, 2), big(1));
        assert_eq!(g.coeff(22, 2), big(1));
    }

    #[test]
    fn vq_examples() {
        let e6 = SurfaceSpec::e6();
        let v0 = vq_series(&e6, 0, 20);
        let expect = Series::one(20).div_one_minus(3).div_one_minus(4);
        assert_eq!(v0, expect);
        assert_eq!(vq_series(&e6, 1, 20), v0.shift(9).truncate(20));
        let te6 = SurfaceSpec::tilde_e6(rat(1));
        let expect = Series::one(10)
            .mul_one_minus(2)
            .div_one_minus(1)
            .div_one_minus(1)
            .div_one_minus(1);
        assert_eq!(vq_series(&te6, 0, 10), expect);
    }

    #[test]
    fn sections() {
        let ws = WeightSystem::new(3, 4, 6, 12).unwrap();
        let s = sections_character(LineBundleLabel { p: 1, m: 5 }, &ws, 10);
        assert_eq!(
            s.terms().map(|(e, c)| (e, c.clone())).collect::<Vec<_>>(),
            vec![(4, big(1)), (5, big(1))]
        );
        assert!(sections_character(LineBundleLabel { p: -1, m: 3 }, &ws, 10).is_zero());
        let flat = WeightSystem::new(2, 2, 2, 4).unwrap();
        assert_eq!(
            sections_character(LineBundleLabel { p: 2, m: 0 }, &flat, 5).coeff(0),
            big(3)
        );
    }

    #[test]
    fn inversion_of_single_bundles() {
        let ws = WeightSystem::new(3, 4, 6, 12).unwrap();
        let zero = Series::zero(12);
        let o0 = vec![
            sections_character(LineBundleLabel { p: 0, m: 5 }, &ws, 12),
            zero.clone(),
            zero.clone(),
        ];
        let chi = chi_from_twists(&o0, &ws, 10, 0).unwrap();
        assert_eq!(chi.terms(), vec![(5, 0, big(1))]);
        let o1 = vec![
            sections_character(LineBundleLabel { p: 1, m: 5 }, &ws, 12),
            sections_character(LineBundleLabel { p: 0, m: 5 }, &ws, 12),
            zero.clone(),
            zero,
        ];
        let chi = chi_from_twists(&o1, &ws, 10, 1).unwrap();
        assert_eq!(chi.terms(), vec![(5, 1, big(1))]);
    }

    #[test]
    fn inconsistent_twists_are_rejected() {
        let ws = WeightSystem::new(3, 4, 6, 12).unwrap();
        let zero = Series::zero(12);
        let bad = vec![
            zero.clone(),
            Series::monomial(2, big(1), 12),
            zero.clone(),
            zero,
        ];
        assert!(matches!(
            chi_from_twists(&bad, &ws, 8, 0),
            Err(Error::NegativeCoefficient { .. })
        ));
        assert!(chi_from_twists(&[Series::zero(3)], &ws, 3, 0).is_err());
    }

    #[test]
    fn chi_refuses_type_a() {
        let a2 = SurfaceSpec::type_a(3).unwrap();
        assert!(matches!(
            chi_ytilde(&a2, 10, 2),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn chi_tilde_e8_first_row() {
        let te8 = SurfaceSpec::tilde_e8(rat(1));
        let chi = chi_ytilde(&te8, 20, 3).unwrap();
        assert_eq!(chi.row(0), &jacobi_hilbert_closed(te8.weights(), 20));
        assert_eq!(
            chi.row(1),
            &jacobi_hilbert_closed(te8.weights(), 20)
                .shift(5)
                .truncate(20)
        );
    }

    #[test]
    fn partition_pieces_at_two() {
        let h = poly(20, &[(0, 1), (3, 1), (4, 1)]);
        let pieces = wreath_partition_decomposition(&h, 12, 2, 20).unwrap();
        assert_eq!(pieces.len(), 2);
        let (p2, twist) = &pieces[0];
        assert_eq!(p2, &vec![2]);
        assert_eq!(twist, &h.shift(12).truncate(20));
        let (p11, sym2) = &pieces[1];
        assert_eq!(p11, &vec![1, 1]);
        assert_eq!(sym2.eval_at_one(), big(6));
        let w = wreath_hh0_character(&h, 12, 20, 2).unwrap();
        assert_eq!(w.row(2), &twist.add(sym2));
        assert_eq!(w.row(1), &h);
    }

    #[test]
    fn partitions_count() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn slices() {
        let a1 = type_a_slice_character(2, 12, 3).unwrap();
        assert_eq!(
            a1.terms(),
            vec![(0, 1, big(1)), (4, 2, big(1)), (8, 3, big(1))]
        );
        let a2 = type_a_slice_character(3, 12, 2).unwrap();
        assert_eq!(
            a2.terms(),
            vec![
                (0, 1, big(1)),
                (2, 1, big(1)),
                (6, 2, big(1)),
                (8, 2, big(1))
            ]
        );
        assert!(type_a_slice_character(1, 5, 1).is_err());
    }
}
