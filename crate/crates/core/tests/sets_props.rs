mod common;

use proptest::prelude::*;

use common::{cyclic, cyclic_dset_params, cyclic_is_bh, gcd};
use sidon_lattice::limits::Limits;
use sidon_lattice::sets::{
    bose_chowla, normalize_equivalence, search_planar, singer, verify_bh, verify_difference_set,
    Budget, DifferenceSet,
};

fn residues(set: &[sidon_lattice::algebra::GroupElement]) -> Vec<u64> {
    set.iter().map(|e| e.0[0]).collect()
}

#[test]
fn singer_parameters() {
    let l = Limits::default();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let ds = singer(q, &l).unwrap();
        let v = q * q + q + 1;
        let p = ds.params();
        assert_eq!((p.v, p.k, p.lambda), (v, q + 1, 1));
        let xs = ds.cyclic_values().unwrap();
        assert_eq!(cyclic_dset_params(v, &xs), Some((v, q + 1, 1)), "q = {q}");
    }
}

#[test]
fn bose_chowla_sets_are_bh() {
    let l = Limits::default();
    for q in 2u64..=5 {
        for h in 1u32..=4 {
            if q.pow(h) > 1 << 16 {
                continue;
            }
            let b = bose_chowla(q, h, &l).unwrap();
            assert!(verify_bh(b.group(), b.elements(), h).unwrap());
            let v = b.group().order();
            let xs = b.cyclic_values().unwrap();
            assert_eq!(xs.len() as u64, q);
            assert!(cyclic_is_bh(v, &xs, h), "q = {q}, h = {h}");
            // downward closure
            for h2 in 1..h {
                assert!(verify_bh(b.group(), b.elements(), h2).unwrap());
            }
        }
    }
}

#[test]
fn planar_search_outputs_are_b2_sets_of_the_right_order() {
    for n in 1..=5u64 {
        let r = search_planar(n, &Budget::unlimited()).unwrap();
        let f = r.found.expect("prime powers up to 5 have planar sets");
        let k = f.elements.len() as u64;
        assert_eq!(k, n + 1);
        assert_eq!(f.group.order(), k * (k - 1) + 1);
        let p = verify_difference_set(&f.group, &f.elements).unwrap().unwrap();
        assert_eq!(p.lambda, 1);
        assert!(verify_bh(&f.group, &f.elements, 2).unwrap());
    }
}

fn random_set() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (3u64..=40).prop_flat_map(|v| {
        (Just(v), prop::collection::btree_set(0..v, 2..=(v.min(7) as usize)))
            .prop_map(|(v, s)| (v, s.into_iter().collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verify_bh_matches_oracle((v, xs) in random_set(), h in 1u32..=4) {
        let (g, e) = cyclic(v, &xs);
        let got = verify_bh(&g, &e, h).unwrap();
        prop_assert_eq!(got, cyclic_is_bh(v, &xs, h));
        if got {
            for h2 in 1..h {
                prop_assert!(verify_bh(&g, &e, h2).unwrap());
            }
        }
    }

    #[test]
    fn verify_difference_set_matches_oracle((v, xs) in random_set()) {
        let (g, e) = cyclic(v, &xs);
        let got = verify_difference_set(&g, &e).unwrap().map(|p| (p.v, p.k, p.lambda));
        prop_assert_eq!(got, cyclic_dset_params(v, &xs));
    }

    #[test]
    fn normalization_is_constant_on_orbits(q_idx in 0usize..5, z in 1u64..1000, shift in 0u64..1000) {
        let q = [2u64, 3, 4, 5, 7][q_idx];
        let ds = singer(q, &Limits::default()).unwrap();
        let v = ds.group().order();
        prop_assume!(gcd(z % v, v) == 1);
        let xs = ds.cyclic_values().unwrap();
        let moved: Vec<u64> = xs.iter().map(|&d| (z % v * d + shift) % v).collect();
        let other = DifferenceSet::cyclic(v, &moved).unwrap();
        let a = normalize_equivalence(&ds).unwrap();
        let b = normalize_equivalence(&other).unwrap();
        prop_assert_eq!(residues(a.elements()), residues(b.elements()));
        let again = normalize_equivalence(&a).unwrap();
        prop_assert_eq!(again.elements(), a.elements());
    }
}
