use num_traits::Signed;
use serde::Serialize;
use serde_json::json;

use super::{
    check_param_constraints, closed_form_radii, graham_inverse, param_cosines, solve_radii, ParamConstraints,
    SoddyParams,
};
use crate::error::{Error, Result};
use crate::geometry::{validate_flower, FlowerConfig, DEFAULT_TOLERANCE};
use crate::par::{self, Exec};
use crate::rational::{fraction_string, int, rational_sqrt_exact, Rational};

pub const DEFAULT_SCAN_LIMIT: i64 = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub params: SoddyParams,
    pub constraints: ParamConstraints,
    pub cosines: [String; 3],
    pub discriminant_square: bool,
    pub reduced_discriminant_square: bool,
    pub rational_flowers: Vec<[Rational; 3]>,
    pub irrational_flowers: usize,
    pub solve_error: Option<String>,
    pub d1_le_d2: bool,
    pub two_m_gt_d1: bool,
    pub graham_identity: bool,
    /// Printed closed-form radii form a valid flower (`None`: a denominator vanishes).
    pub closed_form_valid: Option<bool>,
    /// Printed closed-form radii agree with a solver flower up to rotation and reflection.
    pub closed_form_matches_solver: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanSummary {
    pub tuples: usize,
    pub constraints_hold: usize,
    pub constraints_hold_square_discriminant: usize,
    pub constraints_hold_valid_flower: usize,
    pub constraints_hold_no_flower: usize,
    pub constraints_fail_valid_flower: usize,
    pub constraints_hold_d1_le_d2: usize,
    pub constraints_hold_two_m_gt_d1: usize,
    pub constraints_hold_closed_form_valid: usize,
    pub constraints_hold_closed_form_matches: usize,
    pub discriminant_squareness_agrees: usize,
    pub graham_identity_holds: usize,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub bound: i64,
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

pub fn scan(bound: i64) -> Result<ScanReport> {
    scan_with(bound, DEFAULT_SCAN_LIMIT, Exec::default())
}

/// Audits every `1 ≤ m_1, n_1, m_2, n_2 ≤ bound`; rows are in lexicographic
/// parameter order whatever the execution strategy.
pub fn scan_with(bound: i64, limit: i64, exec: Exec) -> Result<ScanReport> {
    if bound < 1 || bound > limit {
        return Err(Error::OutOfRange {
            what: "scan bound",
            value: bound,
            range: format!("1..={limit}"),
        });
    }
    let b = bound as usize;
    let rows = par::map_range(exec, 0..b.pow(4), |i| {
        let digit = |k: u32| (i / b.pow(k) % b) as i64 + 1;
        let p = SoddyParams::new(digit(3), digit(2), digit(1), digit(0)).expect("positive");
        scan_row(p)
    });
    let summary = summarize(&rows);
    Ok(ScanReport { bound, rows, summary })
}

fn dihedral_match(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    (0..3).any(|s| {
        (0..3).all(|i| a[i] == b[(i + s) % 3]) || (0..3).all(|i| a[i] == b[(s + 3 - i) % 3])
    })
}

fn scan_row(p: SoddyParams) -> ScanRow {
    let constraints = check_param_constraints(&p);
    let cos = param_cosines(&p);
    let ratios = graham_inverse(&p);
    let (mut discriminant_square, mut reduced_square) = (false, false);
    let (mut rational_flowers, mut irrational_flowers, mut solve_error) = (Vec::new(), 0, None);
    match solve_radii(&cos) {
        Ok(sol) => {
            discriminant_square = sol.discriminant_is_square;
            reduced_square = rational_sqrt_exact(&sol.reduced_discriminant).is_some();
            rational_flowers = sol.rational_flowers();
            irrational_flowers = sol.valid_candidates().count() - rational_flowers.len();
        }
        Err(e) => solve_error = Some(e.to_string()),
    }
    let closed = closed_form_radii(&p);
    let closed_form_valid = closed.as_ref().map(|r| {
        r.iter().all(Signed::is_positive)
            && FlowerConfig::new(int(1), r.to_vec())
                .and_then(|f| validate_flower(&f, DEFAULT_TOLERANCE))
                .map(|rep| rep.valid)
                .unwrap_or(false)
    });
    let closed_form_matches_solver = closed
        .as_ref()
        .is_some_and(|r| rational_flowers.iter().any(|f| dihedral_match(r, f)));
    ScanRow {
        params: p,
        constraints,
        cosines: cos.strings(),
        discriminant_square,
        reduced_discriminant_square: reduced_square,
        rational_flowers,
        irrational_flowers,
        solve_error,
        d1_le_d2: ratios.d1_over_x <= ratios.d2_over_x,
        two_m_gt_d1: int(2) * &ratios.m_over_x > ratios.d1_over_x,
        graham_identity: ratios.identity_holds(),
        closed_form_valid,
        closed_form_matches_solver,
    }
}

fn summarize(rows: &[ScanRow]) -> ScanSummary {
    let mut s = ScanSummary {
        tuples: rows.len(),
        ..Default::default()
    };
    for r in rows {
        let has_flower = !r.rational_flowers.is_empty() || r.irrational_flowers > 0;
        if r.solve_error.is_none() && r.discriminant_square == r.reduced_discriminant_square {
            s.discriminant_squareness_agrees += 1;
        }
        s.graham_identity_holds += r.graham_identity as usize;
        if !r.constraints.all() {
            s.constraints_fail_valid_flower += has_flower as usize;
            continue;
        }
        s.constraints_hold += 1;
        s.constraints_hold_square_discriminant += r.discriminant_square as usize;
        s.constraints_hold_valid_flower += has_flower as usize;
        s.constraints_hold_no_flower += !has_flower as usize;
        s.constraints_hold_d1_le_d2 += r.d1_le_d2 as usize;
        s.constraints_hold_two_m_gt_d1 += r.two_m_gt_d1 as usize;
        s.constraints_hold_closed_form_valid += (r.closed_form_valid == Some(true)) as usize;
        s.constraints_hold_closed_form_matches += r.closed_form_matches_solver as usize;
    }
    s
}

impl ScanRow {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "params": self.params,
            "constraints": self.constraints,
            "constraintsHold": self.constraints.all(),
            "cosines": self.cosines,
            "discriminantSquare": self.discriminant_square,
            "rationalFlowers": self.rational_flowers.iter()
                .map(|f| f.iter().map(fraction_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "irrationalFlowers": self.irrational_flowers,
            "solveError": self.solve_error,
            "d1LeD2": self.d1_le_d2,
            "twoMGtD1": self.two_m_gt_d1,
            "grahamIdentity": self.graham_identity,
            "closedFormValid": self.closed_form_valid,
            "closedFormMatchesSolver": self.closed_form_matches_solver,
        })
    }
}

impl ScanReport {
    pub const CSV_HEADER: &'static str = "m1,n1,m2,n2,c1,c2,c3,c4,c5,constraints_hold,x1,x2,x3,\
discriminant_square,rational_flowers,irrational_flowers,d1_le_d2,two_m_gt_d1,graham_identity,\
closed_form_valid,closed_form_matches_solver,solve_error";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let p = r.params;
            let c = r.constraints.as_array().map(|b| b as u8);
            let flowers: Vec<String> = r
                .rational_flowers
                .iter()
                .map(|f| f.iter().map(fraction_string).collect::<Vec<_>>().join(" "))
                .collect();
            let closed = match r.closed_form_valid {
                Some(v) => v.to_string(),
                None => "undefined".into(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                p.m1,
                p.n1,
                p.m2,
                p.n2,
                c[0],
                c[1],
                c[2],
                c[3],
                c[4],
                r.constraints.all(),
                r.cosines[0],
                r.cosines[1],
                r.cosines[2],
                r.discriminant_square,
                flowers.join(";"),
                r.irrational_flowers,
                r.d1_le_d2,
                r.two_m_gt_d1,
                r.graham_identity,
                closed,
                r.closed_form_matches_solver,
                r.solve_error.as_deref().unwrap_or("").replace(',', ";"),
            ));
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "bound": self.bound,
            "summary": self.summary,
            "rows": self.rows.iter().map(ScanRow::to_json_value).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan_is_strategy_independent() {
        let a = scan_with(4, DEFAULT_SCAN_LIMIT, Exec::Sequential).unwrap();
        let b = scan_with(4, DEFAULT_SCAN_LIMIT, Exec::Parallel).unwrap();
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.rows.len(), 256);
        assert_eq!(a.rows[0].params, SoddyParams { m1: 1, n1: 1, m2: 1, n2: 1 });
        assert_eq!(a.rows[1].params, SoddyParams { m1: 1, n1: 1, m2: 1, n2: 2 });
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(scan_with(0, DEFAULT_SCAN_LIMIT, Exec::Sequential).is_err());
        assert!(scan_with(41, DEFAULT_SCAN_LIMIT, Exec::Sequential).is_err());
    }
}
