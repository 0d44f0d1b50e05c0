use std::sync::Arc;

use fhopf::action::ActionSpec;
use fhopf::galois::graded_components;
use fhopf::hdet::{cohdet_dim2, hdet_dim2};
use fhopf::pbw::{filtered_dim2, quantum_plane, weyl, PbwElement, PbwPresentation};
use fhopf::replay::{quantum_weyl_coaction, replay_specs};
use fhopf::scenario::{AlgebraSpec, Analysis, HopfSpec, Scenario};
use fhopf::CycScalar;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = CycScalar> {
    (-6i64..=6, 1i64..=4, 0i64..4, prop::sample::select(vec![1u64, 3, 4, 5, 8])).prop_map(|(n, d, k, order)| {
        let z = CycScalar::root_of_unity(order, k);
        &CycScalar::frac(n, d) * &z
    })
}

fn element(p: Arc<PbwPresentation>) -> impl Strategy<Value = PbwElement> {
    let monos = p.monomials_up_to(2);
    prop::collection::vec((0..monos.len(), -3i64..=3), 1..4).prop_map(move |terms| {
        let mut x = PbwElement::zero(&p);
        for (i, c) in terms {
            x = &x + &PbwElement::monomial(&p, monos[i].clone(), CycScalar::from_int(c));
        }
        x
    })
}

fn algebras() -> Vec<Arc<PbwPresentation>> {
    let s = CycScalar::from_int;
    vec![
        weyl(1).unwrap(),
        quantum_plane(CycScalar::root_of_unity(5, 2)).unwrap(),
        filtered_dim2(s(1), 0, s(0), s(-1), s(0)).unwrap(),
        filtered_dim2(s(1), 1, s(0), s(0), s(-1)).unwrap(),
        filtered_dim2(s(3), 0, s(2), s(-1), s(1)).unwrap(),
    ]
}

fn act_distributes(spec: &ActionSpec, k: usize, a: &PbwElement, b: &PbwElement) -> bool {
    let h = spec.hopf();
    let x = h.basis(k);
    let lhs = spec.act(&x, &(a * b)).unwrap();
    let mut rhs = PbwElement::zero(spec.algebra());
    for ((i, j), c) in h.comult(&x) {
        let t = &spec.act(&h.basis(i), a).unwrap() * &spec.act(&h.basis(j), b).unwrap();
        rhs = &rhs + &t.scale(&c);
    }
    lhs == rhs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn multiplication_is_associative(
        (x, y, z) in (0usize..5).prop_flat_map(|i| {
            let p = algebras()[i].clone();
            (element(p.clone()), element(p.clone()), element(p))
        })
    ) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn actions_distribute_over_products(
        (which, k, a, b) in (0usize..11).prop_flat_map(|w| {
            let specs = replay_specs().unwrap();
            let (_, spec) = specs[w % specs.len()].clone();
            let p = spec.algebra().clone();
            (Just(w), 0..spec.hopf().dim(), element(p.clone()), element(p))
        })
    ) {
        let specs = replay_specs().unwrap();
        let (_, spec) = &specs[which % specs.len()];
        prop_assert!(act_distributes(spec, k, &a, &b));
    }

    #[test]
    fn components_partition_filtration(m in 1usize..6, order in 5u64..9, n in 0usize..5) {
        let q = CycScalar::root_of_unity(order, 1);
        let c = quantum_weyl_coaction(q, m).unwrap();
        let g = graded_components(&c).unwrap();
        let dims = g.component_dims(n);
        for d in 0..=n {
            let total: usize = dims.iter().map(|x| x[d]).sum();
            prop_assert_eq!(total, c.algebra().monomials_up_to(d).len());
        }
    }

    #[test]
    fn scenario_round_trip(
        q in (-5i64..5).prop_filter("nonzero", |q| *q != 0),
        order in 1usize..7,
        deg in prop::option::of(1usize..10),
        verify in any::<bool>(),
        basis in any::<bool>(),
    ) {
        let mut analyses = vec![Analysis::Invariants(deg), Analysis::Hdet];
        if verify {
            analyses.insert(0, Analysis::Verify);
        }
        let mut sc = Scenario {
            name: format!("q{q}"),
            analyses,
            basis: vec![],
            expect: Default::default(),
            algebra: AlgebraSpec::FilteredDim2 { q: q.to_string(), lambda: 0, a: "0".into(), b: "0".into(), c: "-1".into() },
            hopf: HopfSpec::Cyclic { order },
            action: Default::default(),
            coaction: Default::default(),
            fixed_ring: None,
        };
        if order > 1 {
            let g = sc.action.entry("g".into()).or_default();
            g.insert("u".into(), format!("zeta{order}*u"));
            g.insert("v".into(), format!("zeta{order}^{}*v", order - 1));
        }
        if basis {
            sc.basis = vec![["x".into(), "u".into()], ["y".into(), "v - 2*u".into()]];
        }
        sc.expect.insert("hdet.trivial".into(), "true".into());
        let printed = sc.to_toml();
        let back = Scenario::parse(&printed).unwrap();
        prop_assert_eq!(&back, &sc);
        prop_assert_eq!(back.to_toml(), printed);
    }
}

#[test]
fn determinant_and_codeterminant_agree() {
    for (name, spec) in replay_specs().unwrap() {
        if spec.algebra().ngens() != 2 || spec.algebra().relations().len() != 1 {
            continue;
        }
        let a = hdet_dim2(&spec).unwrap();
        let b = cohdet_dim2(&spec.dualize()).unwrap();
        assert_eq!(a.trivial, b.trivial, "{name}");
    }
}

#[test]
fn replay_specs_are_module_algebras() {
    for (name, spec) in replay_specs().unwrap() {
        let v = spec.verify_module_algebra();
        assert!(v.pass, "{name}: {v}");
        assert_eq!(spec.dualize().dualize().matrices(), spec.matrices(), "{name}");
    }
}
