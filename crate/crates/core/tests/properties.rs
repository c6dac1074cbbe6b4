use proptest::prelude::*;
use spslab::decomposition::decompose;
use spslab::equivalence::{functor_f, functor_g, sps_isomorphic, unit_iso};
use spslab::format::{parse_instance, serialize_space, serialize_sps};
use spslab::oracle::{brute_components, quasi_components, random_closure_space};
use spslab::order::intersection_closure;
use spslab::{FiniteClosureSpace, Instance, PointUniverse, SetFamily, Subset};

fn space(max_n: usize) -> impl Strategy<Value = FiniteClosureSpace> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>())
        .prop_map(|(n, d, seed)| random_closure_space(n, d * d, seed).unwrap())
}

fn family(n: usize) -> impl Strategy<Value = SetFamily> {
    prop::collection::vec(0..(1u64 << n), 0..8)
        .prop_map(move |m| SetFamily::new(n, m.into_iter().map(Subset::from_bits)).unwrap())
}

/// Same space with the points renamed by `perm`.
fn permuted(space: &FiniteClosureSpace, perm: &[usize]) -> FiniteClosureSpace {
    let n = space.len();
    let universe = PointUniverse::numbered(n).unwrap();
    let sets = space.closed().iter().map(|s| s.image(perm));
    FiniteClosureSpace::new(universe, SetFamily::new(n, sets).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_closure_is_a_closure_operator(a in family(4), b in family(4)) {
        let ca = intersection_closure(&a);
        prop_assert!(a.iter().all(|s| ca.contains(s)));
        prop_assert_eq!(intersection_closure(&ca), ca.clone());
        let union = SetFamily::new(4, a.iter().chain(b.iter())).unwrap();
        let cu = intersection_closure(&union);
        prop_assert!(ca.iter().all(|s| cu.contains(s)));
    }

    #[test]
    fn property_lattices_obey_lattice_laws(sp in space(5)) {
        let s = functor_g(&sp);
        let l = s.lattice();
        let n = l.len();
        for a in 0..n {
            prop_assert_eq!(l.meet2(a, l.top()), a);
            prop_assert_eq!(l.join2(a, l.bottom()), a);
            for b in 0..n {
                prop_assert_eq!(l.meet2(a, b), l.meet2(b, a));
                prop_assert_eq!(l.join2(a, b), l.join2(b, a));
                prop_assert_eq!(l.join2(a, l.meet2(a, b)), a);
                prop_assert_eq!(l.meet2(a, l.join2(a, b)), a);
            }
        }
        prop_assert_eq!(&l.interval(l.bottom(), l.top()).unwrap(), l);
    }

    #[test]
    fn closure_of_is_a_closure_operator(sp in space(6), a in any::<u64>(), b in any::<u64>()) {
        let full = sp.full().bits();
        let (a, b) = (Subset::from_bits(a & full), Subset::from_bits(b & full));
        let ca = sp.closure_of(a);
        prop_assert!(a.is_subset(ca));
        prop_assert_eq!(sp.closure_of(ca), ca);
        prop_assert!(sp.is_closed(ca));
        prop_assert!(ca.is_subset(sp.closure_of(a.union(b))));
    }

    #[test]
    fn components_agree_with_brute_force(sp in space(8)) {
        let comps = sp.components();
        prop_assert_eq!(&brute_components(&sp).unwrap(), &comps);
        prop_assert!(comps.refines(&quasi_components(&sp)));
        prop_assert!(comps.blocks().iter().all(|&b| sp.is_closed(b)));
        prop_assert!(sp.quotient_space(&comps).unwrap().is_totally_disconnected());
    }

    #[test]
    fn clopens_and_core(sp in space(6)) {
        let c = sp.clopen_sets();
        prop_assert!(c.iter().all(|s| c.contains(s.complement(sp.len()))));
        let core = sp.zero_dimensional_core();
        prop_assert_eq!(core.zero_dimensional_core(), core.clone());
        prop_assert!(c.iter().all(|s| core.is_clopen(s)));
    }

    #[test]
    fn canonical_text_roundtrips(sp in space(6)) {
        let text = serialize_space(&sp);
        match parse_instance(&text).unwrap() {
            Instance::Space(back) => prop_assert_eq!(back, sp.clone()),
            Instance::Sps(_) => prop_assert!(false),
        }
        let s = functor_g(&sp);
        let text = serialize_sps(&s);
        match parse_instance(&text).unwrap() {
            Instance::Sps(back) => prop_assert_eq!(back, s),
            Instance::Space(_) => prop_assert!(false),
        }
    }

    #[test]
    fn functors_round_trip(sp in space(6)) {
        prop_assert_eq!(functor_f(&functor_g(&sp)), sp.clone());
        prop_assert!(unit_iso(&functor_g(&sp)).unwrap().composites_are_identities());
    }

    #[test]
    fn relabeled_spaces_are_isomorphic(sp in space(5), seed in any::<u64>()) {
        let n = sp.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x ^= x << 13; x ^= x >> 7; x ^= x << 17;
            perm.swap(i, (x % (i as u64 + 1)) as usize);
        }
        let other = permuted(&sp, &perm);
        let w = sps_isomorphic(&functor_g(&sp), &functor_g(&other));
        prop_assert!(w.is_some());
        prop_assert!(w.unwrap().composites_are_identities());
    }

    #[test]
    fn decomposition_evidence_never_fails(sp in space(6)) {
        let d = decompose(&functor_g(&sp)).unwrap();
        let failures: Vec<_> = d.evidence.failures().collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn random_spaces_are_reproducible(n in 1usize..=8, d in 0.0..=1.0f64, seed in any::<u64>()) {
        prop_assert_eq!(
            random_closure_space(n, d, seed).unwrap(),
            random_closure_space(n, d, seed).unwrap()
        );
    }
}
