//! Flowers from radii: exact cosines, validation, layout and SVG output.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flowerpoly::{compute_pn_recursive_with, DEFAULT_MAX_N};
use crate::par::{self, Exec};
use crate::rational::{fraction_string, parse_rational, to_f64, Rational};
use crate::ratpoly::SparsePoly;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A center coin of radius `center` surrounded by a cycle of petals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowerConfig {
    pub center: Rational,
    pub petals: Vec<Rational>,
}

impl FlowerConfig {
    pub fn new(center: Rational, petals: Vec<Rational>) -> Result<Self> {
        if petals.len() < 3 {
            return Err(Error::Precondition(format!(
                "a flower needs at least 3 petals, got {}",
                petals.len()
            )));
        }
        if !center.is_positive() || petals.iter().any(|r| !r.is_positive()) {
            return Err(Error::Precondition("all radii must be positive".into()));
        }
        Ok(FlowerConfig { center, petals })
    }

    /// Center first, then petals; integers or `p/q`.
    pub fn parse(radii: &[impl AsRef<str>]) -> Result<Self> {
        let mut values = radii
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Precondition("no radii given".into()));
        }
        let center = values.remove(0);
        Self::new(center, values)
    }

    pub fn n(&self) -> usize {
        self.petals.len()
    }

    pub fn scaled(&self, k: &Rational) -> Result<Self> {
        Self::new(&self.center * k, self.petals.iter().map(|r| r * k).collect())
    }

    /// Cosines of the angles at the center between consecutive petals.
    pub fn cosines(&self) -> Vec<Rational> {
        let n = self.n();
        (0..n)
            .map(|i| cosine_unchecked(&self.center, &self.petals[i], &self.petals[(i + 1) % n]))
            .collect()
    }
}

fn cosine_unchecked(r: &Rational, ri: &Rational, rj: &Rational) -> Rational {
    let a = r + ri;
    let b = r + rj;
    let num = r * r + r * ri + r * rj - ri * rj;
    num / (a * b)
}

/// Law of cosines in the triangle of centers of three mutually tangent coins.
pub fn cosine_of(r: &Rational, ri: &Rational, rj: &Rational) -> Result<Rational> {
    if !r.is_positive() || !ri.is_positive() || !rj.is_positive() {
        return Err(Error::Precondition("radii must be positive".into()));
    }
    Ok(cosine_unchecked(r, ri, rj))
}

/// `θ = arccos x`, computed as `atan2(√(1 − x²), x)` with `1 − x²` exact.
pub fn angle_of(x: &Rational) -> f64 {
    let s2 = Rational::one() - x * x;
    let s = if s2.is_negative() { 0.0 } else { to_f64(&s2).sqrt() };
    s.atan2(to_f64(x))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub cosines: Vec<Rational>,
    pub variety_residual: Rational,
    pub angles: Vec<f64>,
    pub angle_sum_residual: f64,
    pub angle_range_ok: Vec<bool>,
    pub valid: bool,
    pub reasons: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportJson<'a> {
    cosines: Vec<String>,
    variety_residual: String,
    angles: &'a [f64],
    angle_sum_residual: f64,
    angle_range_ok: &'a [bool],
    verdict: &'static str,
    reasons: &'a [String],
}

impl ValidationReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            cosines: self.cosines.iter().map(fraction_string).collect(),
            variety_residual: fraction_string(&self.variety_residual),
            angles: &self.angles,
            angle_sum_residual: self.angle_sum_residual,
            angle_range_ok: &self.angle_range_ok,
            verdict: if self.valid { "valid" } else { "invalid" },
            reasons: &self.reasons,
        })
        .expect("report JSON")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

pub fn validate_flower(f: &FlowerConfig, tol: f64) -> Result<ValidationReport> {
    let pn = compute_pn_recursive_with(f.n(), DEFAULT_MAX_N, Exec::Sequential)?;
    Ok(validate_flower_with(f, tol, &pn))
}

/// Validation against a precomputed `P_n`. The exact residual `P_n(cos θ)`
/// is necessary; the float angle sum decides; for three petals every angle
/// must lie strictly between `π/2` and `π`.
pub fn validate_flower_with(f: &FlowerConfig, tol: f64, pn: &SparsePoly) -> ValidationReport {
    assert_eq!(pn.nvars(), f.n(), "P_n arity must match the petal count");
    let cosines = f.cosines();
    let variety_residual = pn.eval(&cosines).expect("arity checked");
    let angles: Vec<f64> = cosines.iter().map(angle_of).collect();
    let angle_sum_residual = angles.iter().sum::<f64>() - TAU;
    let minus_one = -Rational::one();
    let angle_range_ok: Vec<bool> = cosines
        .iter()
        .map(|x| f.n() != 3 || (x.is_negative() && *x > minus_one))
        .collect();
    let mut reasons = Vec::new();
    if !variety_residual.is_zero() {
        reasons.push(format!("P_{} residual {} ≠ 0", f.n(), fraction_string(&variety_residual)));
    }
    if angle_sum_residual.is_nan() || angle_sum_residual.abs() > tol {
        reasons.push(format!("angle sum misses 2π by {angle_sum_residual:e}"));
    }
    for (i, ok) in angle_range_ok.iter().enumerate() {
        if !ok {
            reasons.push(format!("angle {} outside (π/2, π)", i + 1));
        }
    }
    ValidationReport {
        cosines,
        variety_residual,
        angles,
        angle_sum_residual,
        angle_range_ok,
        valid: reasons.is_empty(),
        reasons,
    }
}

/// Batch validation; reports come back in input order.
pub fn validate_many(flowers: &[FlowerConfig], tol: f64, exec: Exec) -> Result<Vec<ValidationReport>> {
    let mut cache: Vec<Option<SparsePoly>> = vec![None; DEFAULT_MAX_N + 1];
    for f in flowers {
        let n = f.n();
        if n > DEFAULT_MAX_N {
            return Err(Error::out_of_range("petal count", n, format!("3..={DEFAULT_MAX_N}")));
        }
        if cache[n].is_none() {
            cache[n] = Some(compute_pn_recursive_with(n, DEFAULT_MAX_N, exec)?);
        }
    }
    Ok(par::map(exec, flowers, |f| {
        validate_flower_with(f, tol, cache[f.n()].as_ref().unwrap())
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Placement {
    pub x: f64,
    pub y: f64,
    pub radius: f64,
    pub center: bool,
}

/// Center coin at the origin, petal `k` at angle `θ_1 + … + θ_{k−1}`.
pub fn layout(f: &FlowerConfig) -> Result<Vec<Placement>> {
    let report = validate_flower(f, DEFAULT_TOLERANCE)?;
    if !report.valid {
        return Err(Error::Precondition(format!("not a flower: {}", report.reasons.join("; "))));
    }
    let r = to_f64(&f.center);
    let mut out = vec![Placement {
        x: 0.0,
        y: 0.0,
        radius: r,
        center: true,
    }];
    let mut phi = 0.0f64;
    for (k, rk) in f.petals.iter().enumerate() {
        let rk = to_f64(rk);
        let d = r + rk;
        out.push(Placement {
            x: d * phi.cos(),
            y: d * phi.sin(),
            radius: rk,
            center: false,
        });
        phi += report.angles[k];
    }
    Ok(out)
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Deterministic SVG with the view box fitted to the coins plus a 5% margin.
pub fn render_svg(placements: &[Placement]) -> Result<String> {
    if placements.is_empty() {
        return Err(Error::Precondition("nothing to render".into()));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in placements {
        x0 = x0.min(p.x - p.radius);
        x1 = x1.max(p.x + p.radius);
        y0 = y0.min(-p.y - p.radius);
        y1 = y1.max(-p.y + p.radius);
    }
    let margin = 0.05 * (x1 - x0).max(y1 - y0);
    let (vx, vy) = (x0 - margin, y0 - margin);
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = 0.002 * w.max(h);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(vx),
        num(vy),
        num(w),
        num(h)
    )
    .unwrap();
    for p in placements {
        let fill = if p.center { "#f4c542" } else { "#9cc3e6" };
        writeln!(
            svg,
            r#"  <circle cx="{}" cy="{}" r="{}" fill="{fill}" stroke="black" stroke-width="{}"/>"#,
            num(p.x),
            num(-p.y),
            num(p.radius),
            num(stroke)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
