//! Three-petal flowers with rational radii: the cosine parametrization,
//! exact radius solving, Descartes' circle theorem and the Graham
//! parametrization of integral Soddy circles.

mod discrepancy;
mod graham;
mod scan;
mod solve;
mod surd;

pub use discrepancy::{printed_example_report, DiscrepancyReport, PrintedExample};
pub use graham::{graham_generate, graham_inverse, GrahamParams, GrahamQuad, GrahamRatios};
pub use scan::{scan, scan_with, ScanReport, ScanRow, ScanSummary, DEFAULT_SCAN_LIMIT};
pub use solve::{numeric_sweep, solve_radii, solve_radii_with, RadiiCandidate, RadiiSolution};
pub use surd::QuadSurd;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fraction_string, int, lcm_of_denominators, rational_sqrt_exact, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SoddyParams {
    pub m1: i64,
    pub n1: i64,
    pub m2: i64,
    pub n2: i64,
}

impl SoddyParams {
    pub fn new(m1: i64, n1: i64, m2: i64, n2: i64) -> Result<Self> {
        if m1 <= 0 || n1 <= 0 || m2 <= 0 || n2 <= 0 {
            return Err(Error::Precondition(format!(
                "parameters must be positive, got ({m1}, {n1}, {m2}, {n2})"
            )));
        }
        Ok(SoddyParams { m1, n1, m2, n2 })
    }

    fn rationals(&self) -> [Rational; 4] {
        [int(self.m1), int(self.n1), int(self.m2), int(self.n2)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosTriple {
    pub x1: Rational,
    pub x2: Rational,
    pub x3: Rational,
}

impl CosTriple {
    pub fn new(x1: Rational, x2: Rational, x3: Rational) -> Self {
        CosTriple { x1, x2, x3 }
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        vec![self.x1.clone(), self.x2.clone(), self.x3.clone()]
    }

    pub fn strings(&self) -> [String; 3] {
        [
            fraction_string(&self.x1),
            fraction_string(&self.x2),
            fraction_string(&self.x3),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureQuad(pub [Rational; 4]);

impl CurvatureQuad {
    pub fn from_ints(b: [i64; 4]) -> Self {
        CurvatureQuad(b.map(int))
    }
}

/// `x_i = (m_i² − n_i²)/(m_i² + n_i²)` and `x_3 = x_1 x_2 − s_1 s_2`.
pub fn param_cosines(p: &SoddyParams) -> CosTriple {
    let [m1, n1, m2, n2] = p.rationals();
    let cos = |m: &Rational, n: &Rational| (m * m - n * n) / (m * m + n * n);
    let sin = |m: &Rational, n: &Rational| int(2) * m * n / (m * m + n * n);
    let (x1, x2) = (cos(&m1, &n1), cos(&m2, &n2));
    let x3 = &x1 * &x2 - sin(&m1, &n1) * sin(&m2, &n2);
    CosTriple { x1, x2, x3 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ParamConstraints {
    pub n1_gt_m1: bool,
    pub n2_gt_m2: bool,
    pub cross_gt_product: bool,
    pub first_ratio: bool,
    pub second_ratio: bool,
}

impl ParamConstraints {
    pub fn all(&self) -> bool {
        self.n1_gt_m1 && self.n2_gt_m2 && self.cross_gt_product && self.first_ratio && self.second_ratio
    }

    pub fn as_array(&self) -> [bool; 5] {
        [
            self.n1_gt_m1,
            self.n2_gt_m2,
            self.cross_gt_product,
            self.first_ratio,
            self.second_ratio,
        ]
    }
}

pub fn check_param_constraints(p: &SoddyParams) -> ParamConstraints {
    let (m1, n1, m2, n2) = (p.m1 as i128, p.n1 as i128, p.m2 as i128, p.n2 as i128);
    let cross = m1 * n2 + m2 * n1;
    ParamConstraints {
        n1_gt_m1: n1 > m1,
        n2_gt_m2: n2 > m2,
        cross_gt_product: cross > n1 * n2,
        first_ratio: n1 * cross > n2 * (m1 * m1 + n1 * n1),
        second_ratio: n1 * (m2 * m2 + n2 * n2) > n2 * cross,
    }
}

/// `√(1 − x²)` when it is rational.
pub fn rational_sine_check(x: &Rational) -> Result<Option<Rational>> {
    if x.abs() > Rational::one() {
        return Err(Error::Precondition(format!("|{x}| > 1 is not a cosine")));
    }
    Ok(rational_sqrt_exact(&(Rational::one() - x * x)))
}

/// `Σ b_i² = ½ (Σ b_i)²`.
pub fn descartes_check(q: &CurvatureQuad) -> bool {
    descartes_holds(&q.0.clone().map(QuadSurd::rational))
}

/// Descartes' relation evaluated exactly in `Q(√d)`.
pub fn descartes_holds(b: &[QuadSurd; 4]) -> bool {
    let zero = QuadSurd::rational(Rational::zero());
    let sum = b.iter().fold(zero.clone(), |acc, x| &acc + x);
    let squares = b.iter().fold(zero, |acc, x| &acc + &(x * x));
    let half = QuadSurd::rational(Rational::new(BigInt::one(), BigInt::from(2)));
    squares == &half * &(&sum * &sum)
}

/// The two circles tangent to three mutually tangent circles:
/// `k_1 + k_2 + k_3 ± 2√(k_1k_2 + k_2k_3 + k_3k_1)`, `+` branch first.
pub fn soddy_curvatures(k1: &Rational, k2: &Rational, k3: &Rational) -> Result<[QuadSurd; 2]> {
    let radicand = k1 * k2 + k2 * k3 + k3 * k1;
    if radicand.is_negative() {
        return Err(Error::Precondition(format!("negative radicand {radicand}")));
    }
    let s = k1 + k2 + k3;
    Ok([
        QuadSurd::new(s.clone(), int(2), radicand.clone()),
        QuadSurd::new(s, int(-2), radicand),
    ])
}

/// Multiplies all radii by the lcm of their denominators.
pub fn integer_scale(center: &Rational, petals: &[Rational]) -> Result<(BigInt, BigInt, Vec<BigInt>)> {
    if !center.is_positive() || petals.iter().any(|r| !r.is_positive()) {
        return Err(Error::Precondition("radii must be positive".into()));
    }
    let scale = lcm_of_denominators(std::iter::once(center).chain(petals));
    let k = Rational::from_integer(scale.clone());
    let lift = |r: &Rational| (r * &k).to_integer();
    Ok((scale.clone(), lift(center), petals.iter().map(lift).collect()))
}

/// The printed closed forms for the radii (center radius one), or `None`
/// when a denominator vanishes.
pub fn closed_form_radii(p: &SoddyParams) -> Option<[Rational; 3]> {
    let [m1, n1, m2, n2] = p.rationals();
    let cross = &m1 * &n2 + &m2 * &n1;
    let d1 = &m1 * &n1 * &n2 + &m2 * &n1 * &n1 - &m1 * &m1 * &n2 - &n1 * &n1 * &n2;
    let d2 = &m2 * &n1 + &m1 * &n2 - &n1 * &n2;
    let d3 = &n1 * &n2 * &n2 + &m2 * &m2 * &n1 - &m1 * &n2 * &n2 - &m2 * &n1 * &n2;
    if d1.is_zero() || d2.is_zero() || d3.is_zero() {
        return None;
    }
    Some([&n1 * &cross / d1, &n1 * &n2 / d2, &n2 * &cross / d3])
}
