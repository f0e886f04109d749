mod common;

use proptest::prelude::*;

use common::{cyclic, gcd, shape_points_by_box};
use sidon_lattice::algebra::AbelianGroup;
use sidon_lattice::codes::{
    decode_radius_r, generator_matrix_cyclic, lattice_from_ordered, lattice_from_set, Code,
    Decoded, FiniteCode, SyndromeTable,
};
use sidon_lattice::error::Error;
use sidon_lattice::geometry::Shape;
use sidon_lattice::limits::Limits;
use sidon_lattice::sets::{bose_chowla, normalize_equivalence, singer, DifferenceSet};
use sidon_lattice::verify::extract_difference_set;

/// Known cyclic difference sets, planar and not.
fn known_difference_sets() -> Vec<(u64, Vec<u64>)> {
    let l = Limits::default();
    let mut out: Vec<(u64, Vec<u64>)> = vec![
        (4, vec![0, 1, 2]),
        (7, vec![2, 4, 5, 6]),
        (11, vec![1, 3, 4, 5, 9]),
        (15, vec![0, 1, 2, 4, 5, 8, 10]),
        (19, vec![1, 4, 5, 6, 7, 9, 11, 16, 17]),
    ];
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let ds = singer(q, &l).unwrap();
        out.push((ds.group().order(), ds.cyclic_values().unwrap()));
    }
    out
}

#[test]
fn extraction_round_trip_preserves_parameters() {
    for (v, xs) in known_difference_sets() {
        let ds = DifferenceSet::cyclic(v, &xs).unwrap();
        let code = lattice_from_set(ds.group(), ds.elements()).unwrap();
        assert_eq!(code.det_abs(), v);
        let p = extract_difference_set(&code).unwrap().unwrap();
        assert_eq!(p, ds.params(), "v = {v}");
    }
}

#[test]
fn generator_matrix_agrees_with_kernel() {
    for (v, xs) in known_difference_sets() {
        let ds = normalize_equivalence(&DifferenceSet::cyclic(v, &xs).unwrap()).unwrap();
        let g = generator_matrix_cyclic(&ds).unwrap();
        let code = lattice_from_set(ds.group(), ds.elements()).unwrap();
        assert_eq!(g.hermite_lower(), code.hermite(), "v = {v}");
    }
}

#[test]
fn split_independence_for_bose_chowla() {
    let l = Limits::default();
    for q in 2u64..=4 {
        for h in 1u32..=4 {
            let b = bose_chowla(q, h, &l).unwrap();
            for a in 0..=h {
                let t = SyndromeTable::for_set(b.group(), b.elements(), a, h - a, &l);
                assert!(t.is_ok(), "q = {q}, h = {h}, split ({a}, {})", h - a);
            }
        }
    }
}

/// All codewords of the finite code, by brute force over `Z_v^n`.
fn codewords(code: &FiniteCode) -> Vec<Vec<i64>> {
    let (v, n) = (code.v() as i64, code.n());
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        if code.syndrome(&x).unwrap() == 0 {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            x[i] += 1;
            if x[i] < v {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn assert_decodes_exhaustively(code: &FiniteCode, r_plus: u32, r_minus: u32) {
    let l = Limits::default();
    let table = SyndromeTable::build(code.syndrome_map(), Shape::new(code.n(), r_plus, r_minus), &l).unwrap();
    let words = codewords(code);
    let expected = code.codeword_count();
    assert_eq!(num_bigint::BigUint::from(words.len()), expected);
    for c in &words {
        for e in shape_points_by_box(code.n(), r_plus, r_minus) {
            let y: Vec<i64> = c.iter().zip(&e).map(|(a, b)| a + b).collect();
            let y = Code::reduce(code, y);
            match decode_radius_r(&table, code, &y).unwrap() {
                Decoded::Corrected { codeword, error } => {
                    assert_eq!(&codeword, c);
                    assert_eq!(error, e);
                }
                Decoded::Detected => panic!("pattern {e:?} detected inside the shape"),
            }
        }
    }
}

#[test]
fn decoding_inverts_every_correctable_error() {
    let l = Limits::default();
    for q in [2u64, 3, 4] {
        let ds = normalize_equivalence(&singer(q, &l).unwrap()).unwrap();
        assert_decodes_exhaustively(&FiniteCode::from_difference_set(&ds).unwrap(), 1, 1);
    }
    for (q, h) in [(3u64, 2u32), (2, 3), (3, 3), (4, 2)] {
        let b = bose_chowla(q, h, &l).unwrap();
        let xs = b.cyclic_values().unwrap();
        let code = FiniteCode::new(b.group().order(), &xs[1..]).unwrap();
        for a in 0..=h {
            assert_decodes_exhaustively(&code, a, h - a);
        }
    }
}

fn random_set() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (2u64..=60).prop_flat_map(|v| {
        (Just(v), prop::collection::btree_set(0..v, 2..=(v.min(5) as usize)))
            .prop_map(|(v, s)| (v, s.into_iter().collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equivalent_sets_give_identical_lattices((v, xs) in random_set(), z in 1u64..500, shift in 0u64..500) {
        let z = z % v;
        prop_assume!(z != 0 && gcd(z, v) == 1);
        let (g, e) = cyclic(v, &xs);
        let moved: Vec<u64> = xs.iter().map(|&d| (z * d + shift) % v).collect();
        let (_, e2) = cyclic(v, &moved);
        match (lattice_from_ordered(&g, &e), lattice_from_ordered(&g, &e2)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.hermite(), b.hermite()),
            (Err(Error::NotGenerating { .. }), Err(Error::NotGenerating { .. })) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.map(|c| c.det_abs()), b.map(|c| c.det_abs())),
        }
    }

    #[test]
    fn determinant_is_group_order_iff_generating((v, xs) in random_set()) {
        let (g, e) = cyclic(v, &xs);
        let generated = xs.iter().fold(v, |acc, &d| gcd(acc, (d + v - xs[0]) % v));
        match lattice_from_set(&g, &e) {
            Ok(code) => {
                prop_assert_eq!(generated, 1);
                prop_assert_eq!(code.det_abs(), v);
                prop_assert_eq!(code.basis().determinant().unwrap().magnitude().clone(), v.into());
            }
            Err(Error::NotGenerating { .. }) => prop_assert!(generated > 1),
            Err(other) => prop_assert!(false, "{other}"),
        }
    }

    #[test]
    fn encoding_is_systematic(q_idx in 0usize..4, info in prop::collection::vec(0u64..1000, 5)) {
        let q = [2u64, 3, 4, 5][q_idx];
        let ds = normalize_equivalence(&singer(q, &Limits::default()).unwrap()).unwrap();
        let code = FiniteCode::from_difference_set(&ds).unwrap();
        let info: Vec<u64> = info[..code.n() - 1].iter().map(|x| x % code.v()).collect();
        let c = code.encode(&info).unwrap();
        prop_assert_eq!(&c[1..], &info[..]);
        let ci: Vec<i64> = c.iter().map(|&x| x as i64).collect();
        prop_assert_eq!(code.syndrome(&ci).unwrap(), 0);
    }
}

#[test]
fn non_cyclic_groups() {
    // {(0,0), (0,1), (1,0)} in Z_2 x Z_6 generates, so det = 12
    let g = AbelianGroup::new(&[2, 6]).unwrap();
    let e: Vec<_> = [[0, 0], [0, 1], [1, 0]].iter().map(|c| g.element(c).unwrap()).collect();
    let code = lattice_from_set(&g, &e).unwrap();
    assert_eq!(code.det_abs(), 12);
    assert!(!code.quotient().is_cyclic());
    let e: Vec<_> = [[0, 0], [0, 2]].iter().map(|c| g.element(c).unwrap()).collect();
    assert!(matches!(lattice_from_set(&g, &e), Err(Error::NotGenerating { .. })));
}
