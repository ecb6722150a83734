use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::{CosTriple, QuadSurd};
use crate::error::{Error, Result};
use crate::flowerpoly::compute_pn_recursive;
use crate::geometry::{angle_of, validate_flower, FlowerConfig, DEFAULT_TOLERANCE};
use crate::rational::{fraction_string, int, rational_sqrt_exact, to_f64, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct RadiiCandidate {
    pub radii: [QuadSurd; 3],
    pub positive: bool,
    /// The three pairwise cosine equations, checked exactly.
    pub equations: [bool; 3],
    /// Verdict of the flower validator, for rational candidates with positive radii.
    pub validator: Option<bool>,
    pub valid: bool,
    pub note: Option<String>,
}

/// All solutions of the three pairwise equations with center radius one.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiiSolution {
    pub cosines: CosTriple,
    pub on_variety: bool,
    /// `[A, B, C]` of `A r_1² + B r_1 + C = 0`.
    pub quadratic: [Rational; 3],
    pub discriminant: Rational,
    /// `2(1 − x_1)(1 − x_2)(1 − x_3)`, a square iff the discriminant is.
    pub reduced_discriminant: Rational,
    pub discriminant_is_square: bool,
    pub angle_sum_residual: f64,
    pub angle_range_ok: bool,
    pub candidates: Vec<RadiiCandidate>,
}

impl RadiiSolution {
    pub fn valid_candidates(&self) -> impl Iterator<Item = &RadiiCandidate> {
        self.candidates.iter().filter(|c| c.valid)
    }

    /// Valid flowers with rational radii.
    pub fn rational_flowers(&self) -> Vec<[Rational; 3]> {
        self.valid_candidates()
            .filter_map(|c| {
                let [a, b, d] = &c.radii;
                Some([a.as_rational()?.clone(), b.as_rational()?.clone(), d.as_rational()?.clone()])
            })
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let candidates: Vec<_> = self
            .candidates
            .iter()
            .map(|c| {
                json!({
                    "radii": c.radii.iter().map(QuadSurd::to_json_value).collect::<Vec<_>>(),
                    "positive": c.positive,
                    "equations": c.equations,
                    "validator": c.validator,
                    "valid": c.valid,
                    "note": c.note,
                })
            })
            .collect();
        json!({
            "cosines": self.cosines.strings(),
            "onVariety": self.on_variety,
            "quadratic": self.quadratic.iter().map(fraction_string).collect::<Vec<_>>(),
            "discriminant": fraction_string(&self.discriminant),
            "reducedDiscriminant": fraction_string(&self.reduced_discriminant),
            "discriminantIsSquare": self.discriminant_is_square,
            "angleSumResidual": self.angle_sum_residual,
            "angleRangeOk": self.angle_range_ok,
            "candidates": candidates,
        })
    }
}

pub fn solve_radii(c: &CosTriple) -> Result<RadiiSolution> {
    solve_radii_with(c, DEFAULT_TOLERANCE)
}

/// With `u = (1 − x)/(1 + x)` and `k = 2(1 − x)/(1 + x)²` each pairwise
/// equation reads `(r_i − u)(r_j − u) = k`. Eliminating `r_2` and `r_3`
/// through the first and third leaves a quadratic in `r_1`.
pub fn solve_radii_with(c: &CosTriple, tol: f64) -> Result<RadiiSolution> {
    let xs = c.to_vec();
    let one = Rational::one();
    for x in &xs {
        if x.abs() >= one {
            return Err(Error::Precondition(format!("cosine {x} must lie strictly inside (-1, 1)")));
        }
    }
    let u: Vec<Rational> = xs.iter().map(|x| (&one - x) / (&one + x)).collect();
    let k: Vec<Rational> = xs
        .iter()
        .map(|x| int(2) * (&one - x) / ((&one + x) * (&one + x)))
        .collect();

    let p1 = &u[0] - &u[1];
    let q1 = &k[0] - &p1 * &u[0];
    let p3 = &u[2] - &u[1];
    let q3 = &k[2] - &p3 * &u[2];
    let a = &p1 * &p3 - &k[1];
    let b = &p1 * &q3 + &p3 * &q1 + &k[1] * (&u[0] + &u[2]);
    let cc = &q1 * &q3 - &k[1] * &u[0] * &u[2];
    let disc = &b * &b - int(4) * &a * &cc;
    let reduced = int(2) * xs.iter().map(|x| &one - x).fold(one.clone(), |acc, v| acc * v);

    let roots: Vec<QuadSurd> = if a.is_zero() {
        if b.is_zero() {
            return Err(Error::Precondition("the radius equations are underdetermined".into()));
        }
        vec![QuadSurd::rational(-&cc / &b)]
    } else if disc.is_negative() {
        Vec::new()
    } else {
        let two_a = int(2) * &a;
        let base = -&b / &two_a;
        let half = one.clone() / &two_a;
        let mut rs = vec![
            QuadSurd::new(base.clone(), half.clone(), disc.clone()),
            QuadSurd::new(base, -half, disc.clone()),
        ];
        if rs[0] == rs[1] {
            rs.pop();
        }
        rs
    };

    let p3_poly = compute_pn_recursive(3)?;
    let on_variety = p3_poly.eval(&xs)?.is_zero();
    let angle_sum_residual = xs.iter().map(angle_of).sum::<f64>() - std::f64::consts::TAU;
    let angle_range_ok = xs.iter().all(|x| x.is_negative());
    let angles_ok = angle_sum_residual.abs() <= tol && angle_range_ok;

    let candidates = roots
        .into_iter()
        .map(|r1| candidate(r1, &u, &k, angles_ok, tol))
        .collect();
    Ok(RadiiSolution {
        cosines: c.clone(),
        on_variety,
        quadratic: [a, b, cc],
        discriminant_is_square: rational_sqrt_exact(&disc).is_some(),
        discriminant: disc,
        reduced_discriminant: reduced,
        angle_sum_residual,
        angle_range_ok,
        candidates,
    })
}

fn candidate(r1: QuadSurd, u: &[Rational], k: &[Rational], angles_ok: bool, tol: f64) -> RadiiCandidate {
    let uq: Vec<QuadSurd> = u.iter().cloned().map(QuadSurd::rational).collect();
    let kq: Vec<QuadSurd> = k.iter().cloned().map(QuadSurd::rational).collect();
    let companion = |ui: &QuadSurd, ki: &QuadSurd| (&r1 - ui).inverse().map(|inv| ui + &(ki * &inv));
    let (Some(r2), Some(r3)) = (companion(&uq[0], &kq[0]), companion(&uq[2], &kq[2])) else {
        return RadiiCandidate {
            radii: [r1.clone(), r1.clone(), r1],
            positive: false,
            equations: [false; 3],
            validator: None,
            valid: false,
            note: Some("r_1 coincides with a pole of the back-substitution".into()),
        };
    };
    let radii = [r1, r2, r3];
    let equations = [(0, 1, 0), (1, 2, 1), (2, 0, 2)]
        .map(|(i, j, e)| &(&radii[i] - &uq[e]) * &(&radii[j] - &uq[e]) == kq[e]);
    let positive = radii.iter().all(QuadSurd::is_positive);
    let validator = match (positive, radii.iter().all(QuadSurd::is_rational)) {
        (true, true) => {
            let petals = radii.iter().map(|r| r.a.clone()).collect();
            FlowerConfig::new(Rational::one(), petals)
                .and_then(|f| validate_flower(&f, tol))
                .ok()
                .map(|rep| rep.valid)
        }
        _ => None,
    };
    let valid = positive && equations.iter().all(|&e| e) && angles_ok && validator != Some(false);
    RadiiCandidate {
        radii,
        positive,
        equations,
        validator,
        valid,
        note: None,
    }
}

/// Numeric oracle independent of the quadratic: sweep `r_1` over a
/// logarithmic grid, obtain `r_2` and `r_3` from the law of cosines for
/// `x_1` and `x_3`, and bisect sign changes of the `x_2` mismatch where all
/// radii are positive.
pub fn numeric_sweep(c: &CosTriple) -> Vec<[f64; 3]> {
    let (x1, x2, x3) = (to_f64(&c.x1), to_f64(&c.x2), to_f64(&c.x3));
    let partner = |x: f64, a: f64| {
        let den = x * (1.0 + a) + a - 1.0;
        (1.0 + a) * (1.0 - x) / den
    };
    let cosine = |p: f64, q: f64| (1.0 + p + q - p * q) / ((1.0 + p) * (1.0 + q));
    let eval = |a: f64| -> Option<(f64, f64, f64)> {
        let (r2, r3) = (partner(x1, a), partner(x3, a));
        (r2.is_finite() && r3.is_finite() && r2 > 0.0 && r3 > 0.0).then(|| (cosine(r2, r3) - x2, r2, r3))
    };
    const STEPS: usize = 200_000;
    let (lo, hi) = (-6.0f64, 6.0f64);
    let grid = |i: usize| 10f64.powf(lo + (hi - lo) * i as f64 / STEPS as f64);
    let mut roots: Vec<[f64; 3]> = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=STEPS {
        let a = grid(i);
        let Some((f, _, _)) = eval(a) else {
            prev = None;
            continue;
        };
        if let Some((pa, pf)) = prev {
            if f == 0.0 || pf.signum() != f.signum() {
                let (mut l, mut r, mut fl) = (pa, a, pf);
                for _ in 0..200 {
                    let m = 0.5 * (l + r);
                    match eval(m) {
                        Some((fm, _, _)) if fm.signum() == fl.signum() && fm != 0.0 => {
                            l = m;
                            fl = fm;
                        }
                        _ => r = m,
                    }
                }
                let root = 0.5 * (l + r);
                if let Some((fr, r2, r3)) = eval(root) {
                    let dup = roots.last().is_some_and(|q| (q[0] - root).abs() <= 1e-7 * root);
                    if fr.abs() < 1e-9 && !dup {
                        roots.push([root, r2, r3]);
                    }
                }
            }
        }
        prev = Some((a, f));
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::cosine_of;
    use crate::rational::frac;

    fn cosines_of(r: i64, a: i64, b: i64, c: i64) -> CosTriple {
        let (r, a, b, c) = (int(r), int(a), int(b), int(c));
        CosTriple::new(
            cosine_of(&r, &a, &b).unwrap(),
            cosine_of(&r, &b, &c).unwrap(),
            cosine_of(&r, &c, &a).unwrap(),
        )
    }

    #[test]
    fn recovers_the_soddy_flower() {
        let c = cosines_of(6, 69, 46, 23);
        assert_eq!(c, CosTriple::new(frac(-204, 325), frac(-152, 377), frac(-333, 725)));
        let sol = solve_radii(&c).unwrap();
        assert!(sol.on_variety && sol.discriminant_is_square);
        assert_eq!(sol.rational_flowers(), vec![[frac(23, 2), frac(23, 3), frac(23, 6)]]);
        let sweep = numeric_sweep(&c);
        assert_eq!(sweep.len(), 1);
        assert!((sweep[0][0] - 11.5).abs() < 1e-6);
    }

    #[test]
    fn symmetric_flower_is_irrational() {
        let h = frac(-1, 2);
        let sol = solve_radii(&CosTriple::new(h.clone(), h.clone(), h)).unwrap();
        assert!(!sol.discriminant_is_square);
        let valid: Vec<_> = sol.valid_candidates().collect();
        assert_eq!(valid.len(), 1);
        let expected = QuadSurd::new(int(3), int(2), int(3));
        for r in &valid[0].radii {
            assert_eq!(r.to_f64(), expected.to_f64());
            assert!((r - &expected).is_zero());
        }
        assert!(sol.rational_flowers().is_empty());
    }

    #[test]
    fn worked_example_has_no_positive_flower() {
        let c = CosTriple::new(frac(-3, 5), frac(-9, 41), frac(-133, 205));
        let sol = solve_radii(&c).unwrap();
        assert_eq!(sol.reduced_discriminant, frac(104 * 104, 41 * 41));
        assert!(sol.discriminant_is_square);
        let mut r1: Vec<_> = sol.candidates.iter().map(|c| c.radii[0].a.clone()).collect();
        r1.sort();
        assert_eq!(r1, vec![int(-26), frac(-26, 51)]);
        assert!(sol.candidates.iter().all(|c| c.equations == [true; 3] && !c.valid));
        assert!(numeric_sweep(&c).is_empty());
    }

    #[test]
    fn rejects_degenerate_cosines() {
        assert!(solve_radii(&CosTriple::new(int(-1), int(0), int(0))).is_err());
        assert!(solve_radii(&CosTriple::new(frac(3, 2), int(0), int(0))).is_err());
    }
}
