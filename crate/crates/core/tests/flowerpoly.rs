use flowerlab::flowerpoly::{
    compute_cn, compute_pn_product, compute_pn_recursive, compute_pn_recursive_with, monic_report, pn_sequence,
    recursion_step, recursion_step_mixed, symmetry_report, sample_permutations, variety_residual,
    verify_general_recursion, verify_specialization, verify_square, FlowerPolySet, DEFAULT_MAX_N,
};
use flowerlab::rational::int;
use flowerlab::{Error, Exec, SparsePoly};
use std::f64::consts::PI;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn small_polynomials_match_fixtures() {
    for n in 1..=5 {
        let p = compute_pn_recursive(n).unwrap();
        assert_eq!(p.to_json(), fixture(&format!("p{n}.json")).trim_end(), "P_{n}");
        assert_eq!(SparsePoly::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn p3_text_form() {
    let p = compute_pn_recursive(3).unwrap();
    assert_eq!(p.to_pretty(), "-2*x1*x2*x3+x1^2+x2^2+x3^2-1");
}

#[test]
fn execution_modes_agree_through_p6() {
    let seq = pn_sequence(6, Exec::Sequential);
    let par = pn_sequence(6, Exec::Parallel);
    assert_eq!(seq, par);
    assert_eq!(seq[5].len(), 19449);
}

#[test]
fn norm_form_step_matches_mixed_ring_step() {
    let mut p = compute_pn_recursive(2).unwrap();
    for _ in 3..=5 {
        let fast = recursion_step(&p, Exec::default());
        assert_eq!(fast, recursion_step_mixed(&p, Exec::default()));
        p = fast;
    }
}

#[test]
fn product_route_and_squares() {
    for n in 2..=5 {
        assert!(verify_square(n).unwrap().holds, "n = {n}");
        assert_eq!(compute_pn_product(n).unwrap(), compute_pn_recursive(n).unwrap());
    }
    assert_eq!(compute_cn(1).unwrap(), SparsePoly::parse("x1-1", Some(1)).unwrap());
}

#[test]
fn p6_structure() {
    let p6 = compute_pn_recursive(6).unwrap();
    assert!(monic_report(&p6).holds);
    assert!(symmetry_report(&p6, &sample_permutations(6, 12, 3)).holds);
    for i in 0..6 {
        assert!(verify_specialization(6, i).unwrap().holds, "x{} = 1", i + 1);
    }
}

#[test]
fn other_compositions() {
    for comp in [[1, 2, 2], [2, 2, 1], [1, 3, 1]] {
        assert!(verify_general_recursion(5, &comp).unwrap().holds, "{comp:?}");
    }
    assert!(verify_general_recursion(6, &[2, 2, 2]).unwrap().holds);
    assert!(verify_general_recursion(4, &[4]).is_err());
    assert!(verify_general_recursion(4, &[1, 2]).is_err());
}

#[test]
fn regular_flower_lies_on_the_variety() {
    for n in 3..=6 {
        let p = compute_pn_recursive(n).unwrap();
        let angles = vec![2.0 * PI / n as f64; n];
        assert!(variety_residual(&p, &angles).unwrap() < 1e-12, "n = {n}");
        let mut off = angles.clone();
        off[0] += 0.1;
        off[1] -= 0.1;
        assert!(variety_residual(&p, &off).unwrap() < 1e-12);
    }
    let p4 = compute_pn_recursive(4).unwrap();
    assert!(variety_residual(&p4, &[1.0, 1.0, 1.0, 1.0]).is_err());
}

#[test]
fn exact_square_configuration() {
    // Four right angles: every cosine is zero.
    let p4 = compute_pn_recursive(4).unwrap();
    assert_eq!(p4.eval(&vec![int(0); 4]).unwrap(), int(0));
    // Equilateral three-petal flower: cos 120° = −1/2.
    let p3 = compute_pn_recursive(3).unwrap();
    let half = flowerlab::rational::frac(-1, 2);
    assert_eq!(p3.eval(&vec![half; 3]).unwrap(), int(0));
}

#[test]
fn ceiling_is_enforced() {
    assert!(matches!(compute_pn_recursive(DEFAULT_MAX_N + 1), Err(Error::OutOfRange { .. })));
    assert!(matches!(compute_pn_recursive(0), Err(Error::OutOfRange { .. })));
    assert!(compute_pn_recursive_with(3, 2, Exec::Sequential).is_err());
    assert!(compute_cn(6).is_err());
}

#[test]
fn flower_set_json() {
    let set = FlowerPolySet::build(3, true, DEFAULT_MAX_N, Exec::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&set.to_json()).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["pn"]["provenance"], "recursive");
    assert_eq!(v["cn"]["provenance"], "definitional");
    let pn = serde_json::to_string(&v["pn"]["poly"]).unwrap();
    assert_eq!(SparsePoly::from_json(&pn).unwrap(), set.pn);
}
