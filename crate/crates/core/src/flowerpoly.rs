//! The flower polynomials `C_n` and `P_n`.
//!
//! `C_n = ∏_{σ∈G_n} (σ(EC_n) − 1)` is a perfect square and `P_n` is its
//! square root with the sign fixed by `P_n = ∏_{σ∈G_{n−1}} (x_n − σ(EC_{n−1}))`.
//! The cheap route is the two-factor recursion
//! `P_n = P_{n−1}(…, EC_2(x_{n−1}, x_n)) · P_{n−1}(…, conj EC_2(x_{n−1}, x_n))`;
//! the definitional and product routes are kept as oracles up to `n = 5`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixedring::{build_ec_es, ec_es_over, MixedElement, SignVector};
use crate::par::{self, Exec};
use crate::rational::Rational;
use crate::ratpoly::{PolyJson, SparsePoly};

/// Default ceiling for the recursive construction.
pub const DEFAULT_MAX_N: usize = 7;
/// The `2^{n−1}`-factor products are only offered up to this size.
pub const PRODUCT_MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Recursive,
    Product,
    Definitional,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowerPolySet {
    pub n: usize,
    pub pn: SparsePoly,
    pub pn_provenance: Provenance,
    pub cn: Option<(SparsePoly, Provenance)>,
}

#[derive(Serialize)]
struct ProvenancedJson {
    provenance: Provenance,
    poly: PolyJson,
}

#[derive(Serialize)]
struct SetJson {
    n: usize,
    pn: ProvenancedJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    cn: Option<ProvenancedJson>,
}

impl FlowerPolySet {
    /// Builds `P_n` recursively and, for `n ≤ 5`, optionally `C_n` from its
    /// definition. Fails if `C_n ≠ P_n²`.
    pub fn build(n: usize, with_cn: bool, max_n: usize, exec: Exec) -> Result<Self> {
        let pn = compute_pn_recursive_with(n, max_n, exec)?;
        let cn = if with_cn {
            let cn = compute_cn_with(n, exec)?;
            if n >= 2 && cn != pn.mul_with(&pn, exec)? {
                return Err(Error::Precondition(format!("C_{n} is not P_{n}^2")));
            }
            Some((cn, Provenance::Definitional))
        } else {
            None
        };
        Ok(FlowerPolySet {
            n,
            pn,
            pn_provenance: Provenance::Recursive,
            cn,
        })
    }

    pub fn to_json(&self) -> String {
        let doc = SetJson {
            n: self.n,
            pn: ProvenancedJson {
                provenance: self.pn_provenance,
                poly: self.pn.to_json_model(),
            },
            cn: self.cn.as_ref().map(|(p, prov)| ProvenancedJson {
                provenance: *prov,
                poly: p.to_json_model(),
            }),
        };
        serde_json::to_string(&doc).expect("flower polynomial JSON")
    }
}

fn check_range(what: &'static str, n: usize, lo: usize, hi: usize) -> Result<()> {
    if n < lo || n > hi {
        return Err(Error::out_of_range(what, n, format!("{lo}..={hi}")));
    }
    Ok(())
}

pub fn compute_pn_recursive(n: usize) -> Result<SparsePoly> {
    compute_pn_recursive_with(n, DEFAULT_MAX_N, Exec::default())
}

pub fn compute_pn_recursive_with(n: usize, max_n: usize, exec: Exec) -> Result<SparsePoly> {
    check_range("n", n, 1, max_n)?;
    Ok(pn_sequence(n, exec).pop().unwrap())
}

/// `[P_1, …, P_n]` by the two-factor recursion.
pub fn pn_sequence(n: usize, exec: Exec) -> Vec<SparsePoly> {
    let mut seq = vec![SparsePoly::parse("x1-1", Some(1)).unwrap()];
    if n >= 2 {
        seq.push(SparsePoly::parse("x2-x1", Some(2)).unwrap());
    }
    while seq.len() < n {
        let next = recursion_step(seq.last().unwrap(), exec);
        seq.push(next);
    }
    seq.truncate(n.max(1));
    seq
}

/// `P_{m+1}` from `P_m` (`m ≥ 2`).
///
/// The two factors `F(E)` and `F(Ē)`, with `E, Ē = x_m x_{m+1} ∓ y_m y_{m+1}`,
/// are conjugate roots of `T² − 2x_m x_{m+1} T + (x_m² + x_{m+1}² − 1)`.
/// Reducing `F(T) ≡ α + βT` modulo that quadratic gives
/// `F(E)F(Ē) = (α + x_m x_{m+1} β)² − (1 − x_m²)(1 − x_{m+1}²) β²`,
/// which stays in the polynomial ring throughout.
pub fn recursion_step(prev: &SparsePoly, exec: Exec) -> SparsePoly {
    let m = prev.nvars();
    assert!(m >= 2, "the recursion starts from P_2");
    let n = m + 1;
    let (t, u) = (m - 1, m);
    let lift: Vec<usize> = (0..m).collect();
    let f = prev.embed(n, &lift).expect("embedding");
    let x = |i| SparsePoly::var(n, i);
    let one = SparsePoly::one(n);
    let s = &(&x(t) * &x(u)).scale(&Rational::from_integer(2.into()));
    let p = &(&(&x(t) * &x(t)) + &(&x(u) * &x(u))) - &one;
    let (mut a_k, mut b_k) = (one.clone(), SparsePoly::zero(n));
    let (mut alpha, mut beta) = (SparsePoly::zero(n), SparsePoly::zero(n));
    for k in 0..=f.degree_in(t) {
        let fk = f.coeff_in(t, k as u16).expect("index");
        if !fk.is_zero() {
            alpha = &alpha + &fk.mul_with(&a_k, exec).expect("arity");
            beta = &beta + &fk.mul_with(&b_k, exec).expect("arity");
        }
        let next_a = -&(&p * &b_k);
        let next_b = &a_k + &(s * &b_k);
        a_k = next_a;
        b_k = next_b;
    }
    let gamma = &alpha + &(&(&x(t) * &x(u)) * &beta);
    let q = &(&one - &(&x(t) * &x(t))) * &(&one - &(&x(u) * &x(u)));
    let g2 = gamma.mul_with(&gamma, exec).expect("arity");
    let b2 = beta.mul_with(&beta, exec).expect("arity");
    &g2 - &q.mul_with(&b2, exec).expect("arity")
}

/// The same step computed literally in the mixed ring: substitute
/// `EC_2(x_m, x_{m+1})` and its conjugate for the last variable and multiply.
pub fn recursion_step_mixed(prev: &SparsePoly, exec: Exec) -> SparsePoly {
    let m = prev.nvars();
    assert!(m >= 2, "the recursion starts from P_2");
    let n = m + 1;
    let (ec2, _) = ec_es_over(n, &[m - 1, m]);
    let conj = ec2
        .apply_sign(&SignVector::generator(n, m - 1))
        .expect("sign vector of matching size");
    let mut images: Vec<MixedElement> = (0..m - 1).map(|j| MixedElement::x(n, j)).collect();
    images.push(ec2);
    let a = MixedElement::substitute_into(prev, &images).expect("arity");
    *images.last_mut().unwrap() = conj;
    let b = MixedElement::substitute_into(prev, &images).expect("arity");
    a.mul_with(&b, exec)
        .and_then(|p| p.to_pure())
        .expect("conjugate product is pure")
}

fn mixed_product(factors: Vec<MixedElement>, n: usize, exec: Exec) -> MixedElement {
    par::reduce(
        exec,
        factors,
        || MixedElement::one(n),
        |a, b| a.mul_with(&b, Exec::Sequential).expect("arity"),
    )
}

pub fn compute_cn(n: usize) -> Result<SparsePoly> {
    compute_cn_with(n, Exec::default())
}

/// `C_n = ∏_{σ∈G_n} (σ(EC_n) − 1)`.
pub fn compute_cn_with(n: usize, exec: Exec) -> Result<SparsePoly> {
    check_range("n", n, 1, PRODUCT_MAX_N)?;
    let (ec, _) = build_ec_es(n)?;
    let one = MixedElement::one(n);
    let signs = SignVector::all(n);
    let factors = par::map(exec, &signs, |s| &ec.apply_sign(s).expect("arity") - &one);
    mixed_product(factors, n, exec).to_pure()
}

pub fn compute_pn_product(n: usize) -> Result<SparsePoly> {
    compute_pn_product_with(n, Exec::default())
}

/// `P_n = ∏_{σ∈G_{n−1}} (x_n − σ(EC_{n−1}))`.
pub fn compute_pn_product_with(n: usize, exec: Exec) -> Result<SparsePoly> {
    check_range("n", n, 2, PRODUCT_MAX_N)?;
    let vars: Vec<usize> = (0..n - 1).collect();
    let (ec, _) = ec_es_over(n, &vars);
    let xn = MixedElement::x(n, n - 1);
    let signs: Vec<SignVector> = SignVector::all(n - 1)
        .into_iter()
        .map(|s| {
            let mut bits = s.bits().to_vec();
            bits.push(false);
            SignVector::new(bits)
        })
        .collect();
    let factors = par::map(exec, &signs, |s| &xn - &ec.apply_sign(s).expect("arity"));
    mixed_product(factors, n, exec).to_pure()
}

/// Outcome of a structural check; a failure names the first differing term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn compare(check: String, left: &SparsePoly, right: &SparsePoly) -> Self {
        let detail = left.first_difference(right);
        CheckReport {
            check,
            holds: detail.is_none(),
            detail,
        }
    }
}

/// `C_n = P_n²`, with `C_n` from its definition and `P_n` from the recursion.
pub fn verify_square(n: usize) -> Result<CheckReport> {
    check_range("n", n, 2, PRODUCT_MAX_N)?;
    let pn = compute_pn_recursive(n)?;
    let cn = compute_cn(n)?;
    Ok(CheckReport::compare(format!("C_{n} = P_{n}^2"), &cn, &(&pn * &pn)))
}

/// `P_n |_{x_i = 1} = P_{n−1}(x̂_i)²` (zero-based `i`).
pub fn verify_specialization(n: usize, i: usize) -> Result<CheckReport> {
    check_range("n", n, 3, 6)?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, nvars: n });
    }
    let seq = pn_sequence(n, Exec::default());
    Ok(specialization_report(&seq[n - 1], &seq[n - 2], i))
}

pub fn specialization_report(pn: &SparsePoly, prev: &SparsePoly, i: usize) -> CheckReport {
    let n = pn.nvars();
    let lhs = pn
        .specialize(i, &Rational::one())
        .and_then(|p| p.remove_var(i))
        .expect("specialisation");
    CheckReport::compare(
        format!("P_{n}(x{}=1) = P_{}^2", i + 1, n - 1),
        &lhs,
        &(prev * prev),
    )
}

/// `P_n ∘ π = P_n` for each given permutation.
pub fn symmetry_report(pn: &SparsePoly, perms: &[Vec<usize>]) -> CheckReport {
    let n = pn.nvars();
    for perm in perms {
        let image = match pn.permute_vars(perm) {
            Ok(p) => p,
            Err(e) => {
                return CheckReport {
                    check: format!("P_{n} symmetric"),
                    holds: false,
                    detail: Some(e.to_string()),
                }
            }
        };
        if let Some(d) = image.first_difference(pn) {
            return CheckReport {
                check: format!("P_{n} symmetric"),
                holds: false,
                detail: Some(format!("permutation {perm:?}: {d}")),
            };
        }
    }
    CheckReport {
        check: format!("P_{n} symmetric under {} permutations", perms.len()),
        holds: true,
        detail: None,
    }
}

/// Monic of degree `2^{n−2}` in every variable, up to the overall sign
/// (`P_2 = x_2 − x_1` leads with `−1` in `x_1`).
pub fn monic_report(pn: &SparsePoly) -> CheckReport {
    let n = pn.nvars();
    let check = format!("P_{n} monic of degree 2^{} in each variable", n.saturating_sub(2));
    let expected = 1u32 << n.saturating_sub(2);
    for i in 0..n {
        let d = pn.degree_in(i);
        if d != expected {
            return CheckReport {
                check,
                holds: false,
                detail: Some(format!("degree in x{} is {d}, expected {expected}", i + 1)),
            };
        }
        let lead = pn.coeff_in(i, d as u16).expect("index");
        let one = SparsePoly::one(n);
        if lead != one && lead != -&one {
            return CheckReport {
                check,
                holds: false,
                detail: Some(format!("leading coefficient in x{} is {lead}", i + 1)),
            };
        }
    }
    CheckReport {
        check,
        holds: true,
        detail: None,
    }
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn sample_permutations(n: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}

/// Block recursion: for a composition `n = n_1 + … + n_k`, `P_n` is the
/// product over all tuples `(σ_1, …, σ_k) ∈ G_{n_1} × … × G_{n_k}` of
/// `P_k(σ_1(EC_{n_1}(block 1)), …, σ_k(EC_{n_k}(block k)))`.
pub fn verify_general_recursion(n: usize, composition: &[usize]) -> Result<CheckReport> {
    check_range("n", n, 2, 6)?;
    let k = composition.len();
    if k < 2 || composition.contains(&0) || composition.iter().sum::<usize>() != n {
        return Err(Error::Precondition(format!(
            "{composition:?} is not a composition of {n} into at least two parts"
        )));
    }
    let block_product = general_recursion_product(n, composition, Exec::default())?;
    let pn = compute_pn_recursive(n)?;
    Ok(CheckReport::compare(
        format!("P_{n} from composition {composition:?}"),
        &block_product,
        &pn,
    ))
}

pub fn general_recursion_product(n: usize, composition: &[usize], exec: Exec) -> Result<SparsePoly> {
    let k = composition.len();
    let pk = compute_pn_recursive(k)?;
    let mut start = 0;
    let mut variants: Vec<Vec<MixedElement>> = Vec::with_capacity(k);
    for &size in composition {
        let (ec, _) = build_ec_es(size)?;
        let map: Vec<usize> = (start..start + size).collect();
        let mut block = Vec::new();
        for s in SignVector::all(size) {
            block.push(ec.apply_sign(&s)?.embed(n, &map)?);
        }
        variants.push(block);
        start += size;
    }
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for block in &variants {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..block.len()).map(move |j| {
                    let mut t = t.clone();
                    t.push(j);
                    t
                })
            })
            .collect();
    }
    let factors = par::map(exec, &tuples, |t| {
        let images: Vec<MixedElement> = t.iter().zip(&variants).map(|(&j, b)| b[j].clone()).collect();
        MixedElement::substitute_into(&pk, &images).expect("arity")
    });
    mixed_product(factors, n, exec).to_pure()
}

/// `|P_n(cos θ_1, …, cos θ_n)|` in floating point.
pub fn variety_residual(pn: &SparsePoly, angles: &[f64]) -> Result<f64> {
    let n = pn.nvars();
    if n < 3 {
        return Err(Error::out_of_range("n", n, "3.."));
    }
    if angles.len() != n {
        return Err(Error::ArityMismatch {
            left: n,
            right: angles.len(),
        });
    }
    if angles.iter().any(|&a| a.is_nan() || a <= 0.0) {
        return Err(Error::Precondition("angles must be positive".into()));
    }
    let sum: f64 = angles.iter().sum();
    if (sum - TAU).abs() > 1e-12 {
        return Err(Error::Precondition(format!("angles sum to {sum}, not 2π")));
    }
    let cosines: Vec<f64> = angles.iter().map(|a| a.cos()).collect();
    Ok(pn.eval_f64(&cosines)?.abs())
}

/// Draws `n − 1` angles uniformly from `(0, 2π)` and closes the cycle with
/// the remainder, rejecting tuples whose last angle is not positive.
pub fn sample_angles<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let mut angles: Vec<f64> = (0..n - 1).map(|_| rng.random::<f64>() * TAU).collect();
        let last = TAU - angles.iter().sum::<f64>();
        if last > 0.0 && angles.iter().all(|&a| a > 0.0) {
            angles.push(last);
            return angles;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SamplingSummary {
    pub n: usize,
    pub samples: usize,
    pub max_residual: f64,
    pub worst_angles: Vec<f64>,
}

/// Variety membership over random angle tuples; sample `k` uses its own
/// stream derived from `seed`, so the result is independent of scheduling.
pub fn variety_sampling(pn: &SparsePoly, samples: usize, seed: u64, exec: Exec) -> Result<SamplingSummary> {
    let n = pn.nvars();
    if n < 3 {
        return Err(Error::out_of_range("n", n, "3.."));
    }
    let results = par::map_range(exec, 0..samples, |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let angles = sample_angles(n, &mut rng);
        let r = variety_residual(pn, &angles).unwrap_or(f64::INFINITY);
        (r, angles)
    });
    let (max_residual, worst_angles) = results
        .into_iter()
        .fold((0.0f64, Vec::new()), |acc, (r, a)| if r > acc.0 || acc.1.is_empty() { (r, a) } else { acc });
    Ok(SamplingSummary {
        n,
        samples,
        max_residual,
        worst_angles,
    })
}

/// The three-petal condition written in the radii.
///
/// Variables are `(r, r1, r2, r3)`; `g = C_3 · ∏(r + r_i)^4` after the
/// law-of-cosines substitution, and `coefficients[k]` is the coefficient of
/// `r^k` as a polynomial in `(r1, r2, r3)`.
#[derive(Clone, Debug)]
pub struct RadiusPolynomial {
    pub g: SparsePoly,
    pub coefficients: BTreeMap<u32, SparsePoly>,
}

pub const RADIUS_VARS: [&str; 4] = ["r", "r1", "r2", "r3"];
pub const PETAL_VARS: [&str; 3] = ["r1", "r2", "r3"];

pub fn radius_polynomial_3() -> RadiusPolynomial {
    let p3 = compute_pn_recursive(3).expect("P_3");
    let parse = |s: &str| SparsePoly::parse_with(s, &RADIUS_VARS).expect("literal");
    // cos θ_i = N_i / (L_i L_{i+1}) with L_j = r + r_j.
    let numerators = [
        parse("r^2 + r*r1 + r*r2 - r1*r2"),
        parse("r^2 + r*r2 + r*r3 - r2*r3"),
        parse("r^2 + r*r3 + r*r1 - r3*r1"),
    ];
    let linear = [parse("r + r1"), parse("r + r2"), parse("r + r3")];
    // Cosine i involves the linear factors i and i+1 (cyclically).
    let uses = |term: &[u16], j: usize| -> u32 {
        let prev = (j + 2) % 3;
        term[j] as u32 + term[prev] as u32
    };
    let needed: Vec<u32> = (0..3)
        .map(|j| p3.terms().map(|(m, _)| uses(m.exponents(), j)).max().unwrap_or(0))
        .collect();
    let mut cleared = SparsePoly::zero(4);
    for (m, c) in p3.terms() {
        let e = m.exponents();
        let mut t = SparsePoly::constant(4, c.clone());
        for i in 0..3 {
            t = &t * &numerators[i].pow(e[i] as u32);
        }
        for j in 0..3 {
            t = &t * &linear[j].pow(needed[j] - uses(e, j));
        }
        cleared = &cleared + &t;
    }
    let g = &cleared * &cleared;
    let mut coefficients = BTreeMap::new();
    for k in 0..=g.degree_in(0) {
        let ck = g.coeff_in(0, k as u16).and_then(|p| p.remove_var(0)).expect("coefficient");
        if !ck.is_zero() {
            coefficients.insert(k, ck);
        }
    }
    RadiusPolynomial { g, coefficients }
}

impl RadiusPolynomial {
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut degrees = self.g.terms().map(|(m, _)| m.total_degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Every coefficient is invariant under all permutations of the petals
    /// (for three petals the dihedral group is the full symmetric group).
    pub fn dihedral_symmetric(&self) -> bool {
        let perms = all_permutations(3);
        self.coefficients
            .values()
            .all(|c| perms.iter().all(|p| c.permute_vars(p).map(|q| &q == c).unwrap_or(false)))
    }

    pub fn coefficient(&self, power: u32) -> SparsePoly {
        self.coefficients
            .get(&power)
            .cloned()
            .unwrap_or_else(|| SparsePoly::zero(3))
    }

    /// Compares printed coefficient lists against the computed ones. Each
    /// printed entry is `(label index, display sign, polynomial)`, where the
    /// display sign is the sign in front of `r^k g_k` in the printed sum.
    pub fn compare_printed(&self, printed: &[(u32, i32, SparsePoly)]) -> Vec<CoefficientComparison> {
        printed
            .iter()
            .map(|(label, sign, poly)| {
                let signed = if *sign < 0 { -poly } else { poly.clone() };
                let literal = self.coefficient(*label);
                let halved = if label % 2 == 0 {
                    Some(self.coefficient(label / 2))
                } else {
                    None
                };
                let matches_halved = halved.as_ref().map(|h| h == &signed).unwrap_or(false);
                let reference = halved.unwrap_or_else(|| literal.clone());
                CoefficientComparison {
                    label: format!("g_{label}"),
                    printed: poly.to_pretty_with(&PETAL_VARS),
                    display_sign: *sign,
                    matches_literal_power: literal == signed,
                    matches_half_power: matches_halved,
                    computed_half_power: reference.to_pretty_with(&PETAL_VARS),
                    difference: (&signed - &reference).to_pretty_with(&PETAL_VARS),
                }
            })
            .collect()
    }
}

const PRINTED_RADIUS: &str = include_str!("../fixtures/radius_printed.txt");

/// The printed coefficient lists of the radius polynomial.
pub fn printed_radius_coefficients() -> Vec<(u32, i32, SparsePoly)> {
    PRINTED_RADIUS
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.splitn(3, ' ');
            let label = parts.next().unwrap().parse().expect("label");
            let sign = if parts.next() == Some("-") { -1 } else { 1 };
            let poly = SparsePoly::parse_with(parts.next().unwrap(), &PETAL_VARS).expect("printed polynomial");
            (label, sign, poly)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoefficientComparison {
    pub label: String,
    pub printed: String,
    pub display_sign: i32,
    /// Printed `g_k` equals the computed coefficient of `r^k`.
    pub matches_literal_power: bool,
    /// Printed `g_{2k}` equals the computed coefficient of `r^k`.
    pub matches_half_power: bool,
    pub computed_half_power: String,
    /// Signed printed polynomial minus the computed coefficient.
    pub difference: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, n: usize) -> SparsePoly {
        SparsePoly::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn cn_small() {
        assert_eq!(compute_cn(1).unwrap(), parse("x1-1", 1));
        assert_eq!(compute_cn(2).unwrap(), parse("(x1-x2)^2", 2));
        assert_eq!(compute_cn(3).unwrap(), parse("(x1^2+x2^2+x3^2-2*x1*x2*x3-1)^2", 3));
        assert!(compute_cn(0).is_err());
        assert!(compute_cn(6).is_err());
    }

    #[test]
    fn pn_small() {
        assert_eq!(compute_pn_recursive(3).unwrap(), parse("x1^2+x2^2+x3^2-2*x1*x2*x3-1", 3));
        assert_eq!(compute_pn_product(2).unwrap(), parse("x2-x1", 2));
        assert_eq!(compute_pn_product(3).unwrap(), compute_pn_recursive(3).unwrap());
        assert!(compute_pn_product(1).is_err());
        assert!(compute_pn_product(6).is_err());
        assert!(compute_pn_recursive(0).is_err());
        assert!(matches!(
            compute_pn_recursive_with(8, DEFAULT_MAX_N, Exec::default()),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn square_and_specialisation() {
        assert!(verify_square(2).unwrap().holds);
        assert!(verify_square(3).unwrap().holds);
        let r = verify_specialization(3, 1).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(verify_specialization(4, 0).unwrap().holds);
        assert!(verify_specialization(2, 0).is_err());
        assert!(verify_specialization(3, 3).is_err());
    }

    #[test]
    fn norm_step_matches_mixed_ring_step() {
        let mut p = compute_pn_recursive(2).unwrap();
        for _ in 0..3 {
            let fast = recursion_step(&p, Exec::Sequential);
            assert_eq!(fast, recursion_step_mixed(&p, Exec::Sequential));
            p = fast;
        }
    }

    #[test]
    fn block_recursion_small() {
        assert!(verify_general_recursion(3, &[2, 1]).unwrap().holds);
        assert!(verify_general_recursion(4, &[2, 2]).unwrap().holds);
        assert!(verify_general_recursion(4, &[2, 3]).is_err());
        assert!(verify_general_recursion(4, &[4]).is_err());
    }

    #[test]
    fn residual_examples() {
        let p3 = compute_pn_recursive(3).unwrap();
        let third = TAU / 3.0;
        assert!(variety_residual(&p3, &[third, third, TAU - 2.0 * third]).unwrap() < 1e-15);
        let pi = std::f64::consts::PI;
        assert!(variety_residual(&p3, &[pi, pi / 2.0, pi / 2.0]).unwrap() < 1e-15);
        assert!(variety_residual(&p3, &[1.0, 1.0, 1.0]).is_err());
        assert!(variety_residual(&p3, &[-1.0, pi, pi + 1.0]).is_err());
        let p2 = compute_pn_recursive(2).unwrap();
        assert!(variety_residual(&p2, &[pi, pi]).is_err());
    }

    #[test]
    fn sampling_is_deterministic_across_strategies() {
        let p4 = compute_pn_recursive(4).unwrap();
        let a = variety_sampling(&p4, 50, 7, Exec::Sequential).unwrap();
        let b = variety_sampling(&p4, 50, 7, Exec::Parallel).unwrap();
        assert_eq!(a.max_residual, b.max_residual);
        assert!(a.max_residual <= 1e-9);
    }

    #[test]
    fn radius_polynomial_basics() {
        let rp = radius_polynomial_3();
        assert_eq!(rp.is_homogeneous(), Some(12));
        assert_eq!(
            rp.coefficient(0),
            SparsePoly::parse_with("16*r1^4*r2^4*r3^4", &PETAL_VARS).unwrap()
        );
        assert!(rp.dihedral_symmetric());
    }

    #[test]
    fn printed_radius_lists() {
        let rp = radius_polynomial_3();
        let cmp = rp.compare_printed(&printed_radius_coefficients());
        let halved: Vec<bool> = cmp.iter().map(|c| c.matches_half_power).collect();
        assert_eq!(halved, [true, true, true, false, true]);
        assert!(cmp.iter().skip(1).all(|c| !c.matches_literal_power || c.label == "g_0"));
    }

    #[test]
    fn flower_poly_set_json() {
        let set = FlowerPolySet::build(2, true, DEFAULT_MAX_N, Exec::Sequential).unwrap();
        let json = set.to_json();
        assert!(json.starts_with(r#"{"n":2,"pn":{"provenance":"recursive","poly":{"vars":["x1","x2"]"#));
        assert!(json.contains(r#""cn":{"provenance":"definitional""#));
    }
}
