use num_traits::{One, Zero};
use ordalg_core::decomp::{CyclicSearch, CyclicSystem};
use ordalg_core::parse::{parse_descriptor, parse_element, parse_pea_table, parse_scalar};
use ordalg_core::pea::{infinitesimals_finite, is_normal, states_finite, FinitePea, IntervalPea, Pea};
use ordalg_core::represent::build_lex_pea;
use ordalg_core::riesz::{rdp_decompose, rdp_table_verify, rip_interpolate, RdpInstance, RdpLevel};
use ordalg_core::sample::{random_element, random_in_interval, random_positive, rng_for};
use ordalg_core::scalar::{rat, QuadraticNumber};
use ordalg_core::{GroupDescriptor, GroupElement, Rational, Scalar, ScalarSubgroup};
use proptest::prelude::*;

fn descriptors() -> Vec<GroupDescriptor> {
    let d = |s: &str| parse_descriptor(s).unwrap();
    vec![
        d("Z"),
        d("Z/3"),
        d("Q[sqrt 2]"),
        d("Z^3"),
        d("Aff"),
        d("lex(Q, Z^2)"),
        d("lex(Z, Aff)"),
        d("lex(Q[sqrt 3], Z)"),
        d("prod(Z/2, lex(Z, Z))"),
    ]
}

fn descriptor() -> impl Strategy<Value = GroupDescriptor> {
    (0..descriptors().len()).prop_map(|i| descriptors()[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn group_laws_and_translation_invariance(g in descriptor(), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let x = random_element(&g, &mut rng, 6);
        let y = random_element(&g, &mut rng, 6);
        let z = random_element(&g, &mut rng, 6);
        let xy_z = g.add(&g.add(&x, &y).unwrap(), &z).unwrap();
        let x_yz = g.add(&x, &g.add(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(g.add(&x, &g.neg(&x).unwrap()).unwrap(), g.zero());
        prop_assert_eq!(g.add(&g.zero(), &x).unwrap(), x.clone());
        if g.leq(&x, &y).unwrap() {
            prop_assert!(g.leq(&g.add(&z, &x).unwrap(), &g.add(&z, &y).unwrap()).unwrap());
            prop_assert!(g.leq(&g.add(&x, &z).unwrap(), &g.add(&y, &z).unwrap()).unwrap());
        }
        prop_assert!(g.leq(&x, &x).unwrap());
        if g.leq(&x, &y).unwrap() && g.leq(&y, &x).unwrap() {
            prop_assert_eq!(&x, &y);
        }
    }

    #[test]
    fn display_round_trips(g in descriptor(), seed in any::<u64>()) {
        prop_assert_eq!(parse_descriptor(&g.to_string()).unwrap(), g.clone());
        let x = random_element(&g, &mut rng_for(seed, 1), 9);
        prop_assert_eq!(parse_element(&g, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn quadratic_order_matches_floats(a in -40i64..40, b in -40i64..40, c in -40i64..40, e in -40i64..40) {
        let h = ScalarSubgroup::Quadratic(2);
        let x = Scalar::Quadratic(QuadraticNumber::new(rat(a, 1), rat(b, 1), 2));
        let y = Scalar::Quadratic(QuadraticNumber::new(rat(c, 1), rat(e, 1), 2));
        let fx = a as f64 + b as f64 * 2f64.sqrt();
        let fy = c as f64 + e as f64 * 2f64.sqrt();
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(x.compare(&y).unwrap(), fx.partial_cmp(&fy).unwrap());
        }
        prop_assert_eq!(parse_scalar(&h, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn strict_interpolation_in_dense_groups(p in -50i64..50, q in 1i64..9, r in 1i64..50, s in 1i64..9) {
        let h = ScalarSubgroup::FullQ;
        let lo = Scalar::Rational(rat(p, q));
        let hi = Scalar::Rational(rat(p, q) + rat(r, s * 7));
        let m = h.pick_strictly_between(&lo, &hi).unwrap();
        prop_assert!(lo.compare(&m).unwrap().is_lt() && m.compare(&hi).unwrap().is_lt());
    }

    #[test]
    fn decomposition_tables_verify(seed in any::<u64>(), which in 0usize..4) {
        let g = parse_descriptor(["lex(Z, Z^2)", "lex(Q, Z)", "prod(Z, Aff)", "lex(Q[sqrt 2], Z)"][which]).unwrap();
        let mut rng = rng_for(seed, 2);
        let a1 = random_positive(&g, &mut rng, 8);
        let a2 = random_positive(&g, &mut rng, 8);
        let s = g.add(&a1, &a2).unwrap();
        let b1 = random_in_interval(&g, &s, &mut rng, 8).unwrap();
        let b2 = g.sub_left(&b1, &s).unwrap();
        let inst = RdpInstance::new(a1.clone(), a2.clone(), b1.clone(), b2.clone());
        let t = rdp_decompose(&g, &inst, RdpLevel::Rdp).unwrap();
        prop_assert!(rdp_table_verify(&g, &inst, &t, RdpLevel::Rdp).unwrap().is_valid());
        let c = rip_interpolate(&g, &g.zero(), &t.c11, &a1, &b1).unwrap();
        for low in [g.zero(), t.c11.clone()] {
            prop_assert!(g.leq(&low, &c).unwrap());
        }
        prop_assert!(g.leq(&c, &a1).unwrap() && g.leq(&c, &b1).unwrap());
    }

    #[test]
    fn interval_algebras_satisfy_pe1_and_complements(seed in any::<u64>(), which in 0usize..3) {
        let (g, u) = [
            ("lex(Q, Z^2)", "(1, (0, 0))"),
            ("lex(Z, Aff)", "(1, (2, 0))"),
            ("prod(Z, Z)", "(3, 2)"),
        ][which];
        let g = parse_descriptor(g).unwrap();
        let u = parse_element(&g, u).unwrap();
        let e = IntervalPea::from_parts(g.clone(), u.clone()).unwrap();
        let mut rng = rng_for(seed, 3);
        let a = random_in_interval(&g, &u, &mut rng, 6).unwrap();
        let b = random_in_interval(&g, &e.rneg(&a).unwrap(), &mut rng, 6).unwrap();
        let c = random_in_interval(&g, &u, &mut rng, 6).unwrap();
        let left = e.sum(&a, &b).unwrap().map(|ab| e.sum(&ab, &c).unwrap());
        let right = e.sum(&b, &c).unwrap().map(|bc| e.sum(&a, &bc).unwrap());
        if let (Some(Some(l)), Some(Some(r))) = (&left, &right) {
            prop_assert_eq!(l, r);
        }
        prop_assert_eq!(left.flatten().is_some(), right.flatten().is_some());
        prop_assert_eq!(e.sum(&e.lneg(&a).unwrap(), &a).unwrap(), Some(e.one()));
        prop_assert_eq!(e.sum(&a, &e.rneg(&a).unwrap()).unwrap(), Some(e.one()));
        if let Some(s) = e.sum(&e.one(), &a).unwrap() {
            prop_assert_eq!(a.clone(), e.zero());
            prop_assert_eq!(s, e.one());
        }
    }

    #[test]
    fn cyclic_systems_are_additive(n in 1u64..7, seed in any::<u64>()) {
        let h = ScalarSubgroup::Cyclic(n);
        let e = build_lex_pea(h, GroupDescriptor::IntVector(2), GroupElement::vector(&[0, 0])).unwrap();
        let CyclicSearch::Found(sys) = CyclicSystem::build(&e, n).unwrap() else { panic!("no system") };
        prop_assert!(sys.strong);
        let mut rng = rng_for(seed, 4);
        let i = rand::Rng::gen_range(&mut rng, 0..=n as i64);
        let j = rand::Rng::gen_range(&mut rng, 0..=(n as i64 - i));
        let s = Scalar::Rational(rat(i, n as i64));
        let t = Scalar::Rational(rat(j, n as i64));
        let st = s.add(&t).unwrap();
        prop_assert_eq!(
            e.sum(&sys.element(&s).unwrap(), &sys.element(&t).unwrap()).unwrap(),
            Some(sys.element(&st).unwrap())
        );
    }
}

fn finite_examples() -> Vec<FinitePea> {
    let mut v: Vec<FinitePea> = (1..=7).map(FinitePea::chain).collect();
    v.extend((1..=3).map(FinitePea::boolean));
    v.push(FinitePea::mo2());
    v
}

#[test]
fn states_respect_negation_and_kernels_are_normal() {
    for e in finite_examples() {
        for s in states_finite(&e).unwrap() {
            for a in e.elements() {
                assert_eq!(s.value_finite(e.lneg_id(a)).unwrap(), Rational::one() - s.value_finite(a).unwrap());
            }
            assert!(is_normal(&e, s.kernel(&e).unwrap()));
        }
        assert_eq!(infinitesimals_finite(&e), 1u64 << e.zero_id());
    }
}

#[test]
fn tables_round_trip_through_text() {
    for e in finite_examples() {
        let t = e.to_table();
        let back = parse_pea_table(&t.render()).unwrap();
        assert_eq!(back, t);
        let again = FinitePea::check_axioms(&back).unwrap().into_pea().unwrap();
        assert_eq!(again.size(), e.size());
        assert!(again.defined_sums().eq(e.defined_sums()));
    }
}

#[test]
fn boolean_states_are_atom_indicators() {
    let e = FinitePea::boolean(3);
    let states = states_finite(&e).unwrap();
    assert_eq!(states.len(), 3);
    for s in &states {
        let atoms: Vec<Rational> = [1usize, 2, 4].iter().map(|&a| s.value_finite(a).unwrap()).collect();
        assert_eq!(atoms.iter().filter(|v| v.is_one()).count(), 1);
        assert_eq!(atoms.iter().filter(|v| v.is_zero()).count(), 2);
    }
}
