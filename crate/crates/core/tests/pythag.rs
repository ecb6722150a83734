use flowerlab::pythag::{
    brute_force_triples, coprime_square_split, generate_triples, generate_triples_with, is_squarefree, ParityRule,
};
use flowerlab::Exec;
use std::collections::BTreeSet;

#[test]
fn classic_triples() {
    let sols = generate_triples(1, 30).unwrap();
    let triples: Vec<_> = sols.iter().map(|s| s.triple()).collect();
    for t in [(3, 4, 5), (4, 3, 5), (5, 12, 13), (15, 8, 17), (7, 24, 25), (21, 20, 29)] {
        assert!(triples.contains(&t), "{t:?}");
    }
    let five = sols.iter().find(|s| s.triple() == (3, 4, 5)).unwrap();
    assert!(five.witnesses.iter().any(|w| (w.b, w.c, w.m, w.n) == (1, 1, 2, 1)));
}

#[test]
fn generator_matches_brute_force_beyond_the_acceptance_set() {
    for beta in (1..=30).filter(|&b| is_squarefree(b)) {
        let gen: BTreeSet<_> = generate_triples(beta, 400).unwrap().iter().map(|s| s.triple()).collect();
        assert_eq!(gen, brute_force_triples(beta, 400).unwrap(), "β = {beta}");
    }
}

#[test]
fn literal_rule_agrees_for_odd_beta_only() {
    for beta in [1, 3, 5, 7, 11, 13, 15] {
        let (lit, _) = generate_triples_with(beta, 300, ParityRule::Literal, Exec::default()).unwrap();
        let (sum, _) = generate_triples_with(beta, 300, ParityRule::Sum, Exec::default()).unwrap();
        let a: BTreeSet<_> = lit.iter().map(|s| s.triple()).collect();
        let b: BTreeSet<_> = sum.iter().map(|s| s.triple()).collect();
        assert_eq!(a, b, "β = {beta}");
    }
    let (lit, skips) = generate_triples_with(2, 300, ParityRule::Literal, Exec::default()).unwrap();
    let lit: BTreeSet<_> = lit.iter().map(|s| s.triple()).collect();
    let brute = brute_force_triples(2, 300).unwrap();
    assert!(lit.is_subset(&brute));
    assert!(brute.contains(&(1, 2, 3)) && !lit.contains(&(1, 2, 3)));
    assert!(skips.non_integral > 0);
}

#[test]
fn execution_modes_agree() {
    let a = generate_triples_with(30, 500, ParityRule::Sum, Exec::Sequential).unwrap();
    let b = generate_triples_with(30, 500, ParityRule::Sum, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn inputs_are_validated() {
    assert!(generate_triples(4, 100).is_err());
    assert!(generate_triples(0, 100).is_err());
    assert!(brute_force_triples(12, 100).is_err());
    assert!(is_squarefree(30) && !is_squarefree(18));
}

#[test]
fn coprime_split() {
    assert_eq!(coprime_square_split(9, 4).unwrap(), (3, 2));
    assert!(coprime_square_split(2, 3).is_err());
    assert!(coprime_square_split(18, 2).is_err());
}
