use flowerlab::rational::{frac, int};
use flowerlab::{Exec, MixedElement, Monomial, Rational, SignVector, SparsePoly};
use proptest::prelude::*;

const N: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0u16..4, nvars), rational()), 0..max_terms).prop_map(
        move |terms| SparsePoly::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c))),
    )
}

fn big_poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 2), any::<i64>()), 1..6).prop_map(|terms| {
        SparsePoly::from_terms(2, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), int(c))))
    })
}

fn mixed(n: usize) -> impl Strategy<Value = MixedElement> {
    prop::collection::vec((0..n, prop::bool::ANY, rational()), 1..5).prop_map(move |parts| {
        parts.into_iter().fold(MixedElement::zero(n), |acc, (i, use_y, c)| {
            let g = if use_y { MixedElement::y(n, i) } else { MixedElement::x(n, i) };
            let term = &g.scale(&c) + &MixedElement::constant(n, c.clone() / int(2));
            &(&acc * &term) + &MixedElement::x(n, (i + 1) % n)
        })
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), n)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn sign(n: usize) -> impl Strategy<Value = SignVector> {
    prop::collection::vec(prop::bool::ANY, n - 1).prop_map(SignVector::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(N, 6), b in poly(N, 6), c in poly(N, 6)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &SparsePoly::one(N), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(N, 6), b in poly(N, 6), x in point(N)) {
        let ea = a.eval(&x).unwrap();
        let eb = b.eval(&x).unwrap();
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), &ea * &eb);
    }

    #[test]
    fn serialization_is_idempotent(a in poly(N, 8)) {
        let json = a.to_json();
        let back = SparsePoly::from_json(&json).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_json(), json);
        let text = a.to_pretty();
        prop_assert_eq!(SparsePoly::parse(&text, Some(N)).unwrap(), a);
    }

    #[test]
    fn permutation_is_an_automorphism(a in poly(4, 6), b in poly(4, 6), p in permutation(4)) {
        let pa = a.permute_vars(&p).unwrap();
        prop_assert_eq!((&a * &b).permute_vars(&p).unwrap(), &pa * &b.permute_vars(&p).unwrap());
        prop_assert_eq!((&a + &b).permute_vars(&p).unwrap(), &pa + &b.permute_vars(&p).unwrap());
        let inverse: Vec<usize> = (0..4).map(|i| p.iter().position(|&j| j == i).unwrap()).collect();
        prop_assert_eq!(pa.permute_vars(&inverse).unwrap(), a.clone());
    }

    #[test]
    fn sign_action_is_an_automorphism(a in mixed(4), b in mixed(4), s in sign(4), t in sign(4)) {
        let sa = a.apply_sign(&s).unwrap();
        let sb = b.apply_sign(&s).unwrap();
        prop_assert_eq!((&a * &b).apply_sign(&s).unwrap(), &sa * &sb);
        prop_assert_eq!((&a + &b).apply_sign(&s).unwrap(), &sa + &sb);
        prop_assert_eq!(sa.apply_sign(&s).unwrap(), a.clone());
        prop_assert_eq!(sa.apply_sign(&t).unwrap(), a.apply_sign(&s.compose(&t)).unwrap());
    }

    #[test]
    fn mixed_ring_axioms(a in mixed(3), b in mixed(3), c in mixed(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        let back = MixedElement::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn multiplication_agrees_across_execution_modes(a in poly(4, 12), b in poly(4, 12)) {
        let seq = a.mul_with(&b, Exec::Sequential).unwrap();
        prop_assert_eq!(a.mul_with(&b, Exec::default()).unwrap(), seq);
    }

    #[test]
    fn wide_integer_products_are_exact(a in big_poly(), b in big_poly(), x in point(2)) {
        let p = &a * &b;
        prop_assert_eq!(p.eval(&x).unwrap(), a.eval(&x).unwrap() * b.eval(&x).unwrap());
        prop_assert_eq!(&(&a * &a) * &b, &a * &p);
    }
}
