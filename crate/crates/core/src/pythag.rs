//! Primitive solutions of `x² + β y² = z²` for square-free `β`.
//!
//! Solutions come from factorizations `β = b·c` and pairs `(m, n)` with
//! `gcd(b m², c n²) = 1`: the halved branch gives
//! `((b m² − c n²)/2, m n, (b m² + c n²)/2)`, the other branch
//! `(b m² − c n², 2 m n, b m² + c n²)`. A brute-force scan is the oracle.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::{Integer, Roots};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Which condition selects the halved branch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityRule {
    /// `b m²` and `c n²` both odd. Agrees with `Literal` for odd `β` and
    /// also covers even `β`.
    #[default]
    Sum,
    /// `m ≡ n (mod 2)`, as literally stated; non-integral candidates
    /// are skipped, and for even `β` some solutions are never produced.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub b: u64,
    pub c: u64,
    pub m: u64,
    pub n: u64,
    pub halved: bool,
}

impl Witness {
    pub fn same_parity(&self) -> bool {
        self.m % 2 == self.n % 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PythSolution {
    pub beta: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub witnesses: Vec<Witness>,
}

impl PythSolution {
    pub fn triple(&self) -> (u64, u64, u64) {
        (self.x, self.y, self.z)
    }

    pub fn verify(&self) -> bool {
        satisfies(self.beta, self.x, self.y, self.z) && pairwise_coprime(self.x, self.y, self.z)
    }
}

/// Candidates the formulas produced but that were dropped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SkipCounts {
    /// Same parity with `b m² − c n²` odd.
    pub non_integral: u64,
    /// `x = 0`.
    pub degenerate: u64,
    /// Not pairwise coprime or not a solution.
    pub rejected: u64,
}

pub fn is_squarefree(beta: u64) -> bool {
    if beta == 0 {
        return false;
    }
    let mut rest = beta;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn satisfies(beta: u64, x: u64, y: u64, z: u64) -> bool {
    let (x, y, z, beta) = (x as u128, y as u128, z as u128, beta as u128);
    x * x + beta * y * y == z * z
}

fn pairwise_coprime(x: u64, y: u64, z: u64) -> bool {
    x.gcd(&y) == 1 && y.gcd(&z) == 1 && x.gcd(&z) == 1
}

fn check_beta(beta: u64) -> Result<()> {
    if !is_squarefree(beta) {
        return Err(Error::Precondition(format!("{beta} is not a square-free positive integer")));
    }
    Ok(())
}

pub fn generate_triples(beta: u64, z_bound: u64) -> Result<Vec<PythSolution>> {
    generate_triples_with(beta, z_bound, ParityRule::Sum, Exec::default()).map(|(s, _)| s)
}

/// All primitive solutions with `z ≤ z_bound`, sorted by `(x, y, z)`, each
/// with every witness that produced it.
pub fn generate_triples_with(
    beta: u64,
    z_bound: u64,
    rule: ParityRule,
    exec: Exec,
) -> Result<(Vec<PythSolution>, SkipCounts)> {
    check_beta(beta)?;
    let factorizations: Vec<(u64, u64)> = (1..=beta).filter(|b| beta.is_multiple_of(*b)).map(|b| (b, beta / b)).collect();
    let per_factor = par::map(exec, &factorizations, |&(b, c)| witness_scan(b, c, z_bound, rule));
    let mut merged: BTreeMap<(u64, u64, u64), Vec<Witness>> = BTreeMap::new();
    let mut skips = SkipCounts::default();
    for (found, s) in per_factor {
        skips.non_integral += s.non_integral;
        skips.degenerate += s.degenerate;
        skips.rejected += s.rejected;
        for (triple, w) in found {
            merged.entry(triple).or_default().push(w);
        }
    }
    let solutions = merged
        .into_iter()
        .map(|((x, y, z), mut witnesses)| {
            witnesses.sort();
            PythSolution { beta, x, y, z, witnesses }
        })
        .collect();
    Ok((solutions, skips))
}

type Found = Vec<((u64, u64, u64), Witness)>;

fn witness_scan(b: u64, c: u64, z_bound: u64, rule: ParityRule) -> (Found, SkipCounts) {
    let beta = b * c;
    let mut out = Vec::new();
    let mut skips = SkipCounts::default();
    let m_max = (2 * z_bound / b).sqrt();
    let n_max = (2 * z_bound / c).sqrt();
    for m in 1..=m_max {
        for n in 1..=n_max {
            let (bm2, cn2) = (b * m * m, c * n * n);
            if bm2.gcd(&cn2) != 1 {
                continue;
            }
            let diff = bm2.abs_diff(cn2);
            let sum = bm2 + cn2;
            let halved = match rule {
                ParityRule::Sum => sum % 2 == 0,
                ParityRule::Literal => m % 2 == n % 2,
            };
            let (x, y, z) = if halved {
                if diff % 2 != 0 {
                    skips.non_integral += 1;
                    continue;
                }
                (diff / 2, m * n, sum / 2)
            } else {
                (diff, 2 * m * n, sum)
            };
            if z > z_bound {
                continue;
            }
            if x == 0 {
                skips.degenerate += 1;
                continue;
            }
            if !satisfies(beta, x, y, z) || !pairwise_coprime(x, y, z) {
                skips.rejected += 1;
                continue;
            }
            out.push(((x, y, z), Witness { b, c, m, n, halved }));
        }
    }
    (out, skips)
}

/// Exhaustive oracle: every pairwise-coprime positive `(x, y, z)` with `z ≤ z_bound`.
pub fn brute_force_triples(beta: u64, z_bound: u64) -> Result<BTreeSet<(u64, u64, u64)>> {
    check_beta(beta)?;
    let mut out = BTreeSet::new();
    for z in 1..=z_bound {
        for x in 1..z {
            let rest = z * z - x * x;
            if rest % beta != 0 {
                continue;
            }
            let y2 = rest / beta;
            let y = y2.sqrt();
            if y > 0 && y * y == y2 && pairwise_coprime(x, y, z) {
                out.insert((x, y, z));
            }
        }
    }
    Ok(out)
}

/// `(m, n)` with `m² = r`, `n² = s`, given coprime `r, s` whose product is a square.
pub fn coprime_square_split(r: u64, s: u64) -> Result<(u64, u64)> {
    if r == 0 || s == 0 {
        return Err(Error::Precondition("arguments must be positive".into()));
    }
    if r.gcd(&s) != 1 {
        return Err(Error::Precondition(format!("gcd({r}, {s}) = {} ≠ 1", r.gcd(&s))));
    }
    let prod = r as u128 * s as u128;
    if prod.sqrt() * prod.sqrt() != prod {
        return Err(Error::Precondition(format!("{r}·{s} is not a perfect square")));
    }
    let (m, n) = (r.sqrt(), s.sqrt());
    debug_assert!(m * m == r && n * n == s);
    Ok((m, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triples(sols: &[PythSolution]) -> BTreeSet<(u64, u64, u64)> {
        sols.iter().map(PythSolution::triple).collect()
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(6));
        assert!(!is_squarefree(12));
        assert!(is_squarefree(1));
        assert!(!is_squarefree(0));
        assert!(!is_squarefree(49));
    }

    #[test]
    fn generator_examples() {
        let s = generate_triples(1, 5).unwrap();
        let hit = s.iter().find(|s| s.triple() == (3, 4, 5)).unwrap();
        assert!(hit.witnesses.contains(&Witness { b: 1, c: 1, m: 2, n: 1, halved: false }));

        let s = generate_triples(3, 2).unwrap();
        let hit = s.iter().find(|s| s.triple() == (1, 1, 2)).unwrap();
        assert!(hit.witnesses.contains(&Witness { b: 1, c: 3, m: 1, n: 1, halved: true }));

        let s = generate_triples(2, 3).unwrap();
        assert!(triples(&s).contains(&(1, 2, 3)));
        assert!(generate_triples(12, 10).is_err());
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_triples(1, 5).unwrap(), BTreeSet::from([(3, 4, 5), (4, 3, 5)]));
        assert!(brute_force_triples(7, 4).unwrap().contains(&(3, 1, 4)));
        assert!(brute_force_triples(1, 4).unwrap().is_empty());
    }

    #[test]
    fn generator_matches_oracle_small() {
        for beta in [1, 2, 3, 5, 6, 7] {
            let (s, _) = generate_triples_with(beta, 200, ParityRule::Sum, Exec::Sequential).unwrap();
            assert_eq!(triples(&s), brute_force_triples(beta, 200).unwrap(), "beta {beta}");
            assert!(s.iter().all(PythSolution::verify));
        }
    }

    #[test]
    fn parity_branch_is_even_when_halved() {
        for beta in [5, 6] {
            for sol in generate_triples(beta, 300).unwrap() {
                for w in &sol.witnesses {
                    assert_eq!(w.halved, (w.b * w.m * w.m + w.c * w.n * w.n) % 2 == 0);
                    if beta % 2 == 1 {
                        assert_eq!(w.halved, w.same_parity());
                    }
                }
            }
        }
    }

    #[test]
    fn literal_rule_loses_solutions_for_even_beta() {
        let (s, skips) = generate_triples_with(2, 3, ParityRule::Literal, Exec::Sequential).unwrap();
        assert!(skips.non_integral > 0);
        assert!(!triples(&s).contains(&(1, 2, 3)));
        for beta in [1, 3, 5, 7] {
            let (lit, _) = generate_triples_with(beta, 300, ParityRule::Literal, Exec::Sequential).unwrap();
            assert_eq!(triples(&lit), brute_force_triples(beta, 300).unwrap());
        }
    }

    #[test]
    fn square_split() {
        assert_eq!(coprime_square_split(4, 9).unwrap(), (2, 3));
        assert_eq!(coprime_square_split(1, 25).unwrap(), (1, 5));
        assert!(coprime_square_split(8, 2).is_err());
        assert!(coprime_square_split(2, 3).is_err());
    }
}
