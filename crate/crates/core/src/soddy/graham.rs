use num_integer::Roots;
use serde::Serialize;
use serde_json::json;

use super::{CurvatureQuad, SoddyParams};
use crate::error::{Error, Result};
use crate::rational::{fraction_string, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GrahamParams {
    pub x: i64,
    pub m: i64,
    pub d1: i64,
    pub d2: i64,
}

impl GrahamParams {
    pub fn new(x: i64, m: i64, d1: i64, d2: i64) -> Result<Self> {
        if (x as i128).pow(2) + (m as i128).pow(2) != d1 as i128 * d2 as i128 {
            return Err(Error::Precondition(format!("{x}² + {m}² ≠ {d1}·{d2}")));
        }
        Ok(GrahamParams { x, m, d1, d2 })
    }

    pub fn curvatures(&self) -> [i64; 4] {
        let GrahamParams { x, m, d1, d2 } = *self;
        [x, d1 - x, d2 - x, -2 * m + d1 + d2 - x]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrahamQuad {
    pub params: GrahamParams,
    pub quad: CurvatureQuad,
    /// Some curvature is zero, i.e. a circle degenerates to a line.
    pub degenerate: bool,
}

impl GrahamQuad {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "params": self.params,
            "curvatures": self.quad.0.iter().map(fraction_string).collect::<Vec<_>>(),
            "degenerate": self.degenerate,
        })
    }
}

/// All `(x, m, d_1, d_2)` with `x² + m² = d_1 d_2`, `0 ≤ 2m ≤ d_1 ≤ d_2 ≤
/// bound`, for both signs of `x`, sorted by `(d_2, d_1, m, x)`.
pub fn graham_generate(d2_bound: i64) -> Result<Vec<GrahamQuad>> {
    if d2_bound < 1 {
        return Err(Error::Precondition("bound must be at least 1".into()));
    }
    let mut out = Vec::new();
    for d2 in 1..=d2_bound {
        for d1 in 1..=d2 {
            for m in 0..=d1 / 2 {
                let x2 = d1 * d2 - m * m;
                let x = x2.sqrt();
                if x * x != x2 {
                    continue;
                }
                let signs: &[i64] = if x == 0 { &[0] } else { &[-x, x] };
                for &x in signs {
                    let params = GrahamParams { x, m, d1, d2 };
                    let b = params.curvatures();
                    out.push(GrahamQuad {
                        params,
                        quad: CurvatureQuad::from_ints(b),
                        degenerate: b.contains(&0),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// `(m/x, d_1/x, d_2/x)` in terms of the cosine parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrahamRatios {
    pub m_over_x: Rational,
    pub d1_over_x: Rational,
    pub d2_over_x: Rational,
}

impl GrahamRatios {
    /// `1 + (m/x)² = (d_1/x)(d_2/x)`.
    pub fn identity_holds(&self) -> bool {
        int(1) + &self.m_over_x * &self.m_over_x == &self.d1_over_x * &self.d2_over_x
    }
}

pub fn graham_inverse(p: &SoddyParams) -> GrahamRatios {
    let (m1, n1, m2, n2) = (int(p.m1), int(p.n1), int(p.m2), int(p.n2));
    let cross = &m1 * &n2 + &m2 * &n1;
    GrahamRatios {
        m_over_x: (&n1 * &n2 - &m1 * &m2) / &cross,
        d1_over_x: &n2 * (&m1 * &m1 + &n1 * &n1) / (&n1 * &cross),
        d2_over_x: &n1 * (&m2 * &m2 + &n2 * &n2) / (&n2 * &cross),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::soddy::descartes_check;

    #[test]
    fn generator_examples() {
        let p = GrahamParams::new(3, 1, 2, 5).unwrap();
        assert_eq!(p.curvatures(), [3, -1, 2, 2]);
        assert!(GrahamParams::new(3, 1, 2, 4).is_err());
        let all = graham_generate(5).unwrap();
        let trivial = all.iter().find(|q| q.params == GrahamParams { x: 1, m: 0, d1: 1, d2: 1 }).unwrap();
        assert_eq!(trivial.quad, CurvatureQuad::from_ints([1, 0, 0, 1]));
        assert!(!descartes_check(&CurvatureQuad::from_ints([1, 0, 0, 2])));
        assert!(trivial.degenerate);
        assert!(all.iter().any(|q| q.params == p));
        assert!(all.iter().all(|q| descartes_check(&q.quad)));
        assert!(graham_generate(0).is_err());
    }

    #[test]
    fn inverse_examples() {
        let r = graham_inverse(&SoddyParams::new(1, 2, 4, 5).unwrap());
        assert_eq!(r.m_over_x, frac(6, 13));
        assert_eq!(r.d1_over_x, frac(25, 26));
        assert_eq!(r.d2_over_x, frac(82, 65));
        assert!(r.identity_holds());
        let r = graham_inverse(&SoddyParams::new(1, 1, 1, 1).unwrap());
        assert_eq!((r.m_over_x, r.d1_over_x.clone(), r.d2_over_x.clone()), (int(0), int(1), int(1)));
    }
}
