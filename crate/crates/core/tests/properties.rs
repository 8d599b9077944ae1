use foldcube::isomorphism::{
    brute_force_isomorphic, find_noniso_witness, phi_map, recognize_hypercube, remove_matching, IsoResult,
};
use foldcube::matching::{
    classify_matching, parse_matching, sample_perfect_matching, MatchingClass, SwitchChain,
};
use foldcube::topology::{
    build_folded_hypercube, build_hypercube, distance, parse_edge_list, write_edge_list, Graph, VertexLabel,
};
use foldcube::verify::revalidate_witness;
use proptest::prelude::*;

fn label(bits: u32, n: usize) -> VertexLabel {
    VertexLabel::new(bits & ((1 << n) - 1), n).unwrap()
}

proptest! {
    #[test]
    fn hypercube_distance_is_hamming(n in 1usize..=7, a: u32, b: u32) {
        let g = build_hypercube(n).unwrap();
        let (u, v) = (label(a, n), label(b, n));
        prop_assert_eq!(distance(&g, u, v).unwrap(), (u.bits() ^ v.bits()).count_ones() as usize);
    }

    #[test]
    fn folded_distance_closed_form(n in 2usize..=7, a: u32, b: u32) {
        let g = build_folded_hypercube(n).unwrap();
        let (u, v) = (label(a, n), label(b, n));
        let h = (u.bits() ^ v.bits()).count_ones() as usize;
        prop_assert_eq!(distance(&g, u, v).unwrap(), h.min(n + 1 - h));
    }

    #[test]
    fn distance_is_a_metric(n in 2usize..=6, a: u32, b: u32, c: u32, folded: bool) {
        let g = if folded { build_folded_hypercube(n) } else { build_hypercube(n) }.unwrap();
        let (x, y, z) = (label(a, n), label(b, n), label(c, n));
        let d = |p, q| distance(&g, p, q).unwrap();
        prop_assert_eq!(d(x, y), d(y, x));
        prop_assert!(d(x, z) <= d(x, y) + d(y, z));
    }

    #[test]
    fn sampled_matchings_round_trip_and_classify(n in 2usize..=5, seed: u64) {
        let fq = build_folded_hypercube(n).unwrap();
        let m = sample_perfect_matching(&fq, seed).unwrap();
        let text = m.to_file_string();
        let back = parse_matching(&text).unwrap();
        prop_assert_eq!(back.to_file_string(), text);
        if let MatchingClass::Mixed { complementary_count, dimension_histogram } = classify_matching(n, &m).unwrap() {
            prop_assert_eq!(complementary_count + dimension_histogram.values().sum::<usize>(), m.len());
        }
    }

    #[test]
    fn witnesses_are_valid(n in 4usize..=7, seed: u64) {
        use rand::SeedableRng;
        let fq = build_folded_hypercube(n).unwrap();
        let m = if n <= 5 {
            sample_perfect_matching(&fq, seed).unwrap()
        } else {
            let start = foldcube::matching::dimension_matching(n, 1).unwrap();
            SwitchChain::new(&fq, &start).unwrap().sample(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
        };
        prop_assume!(classify_matching(n, &m).unwrap().is_mixed());
        let w = find_noniso_witness(n, &m).unwrap();
        prop_assert_eq!(revalidate_witness(n, &m, &w), Ok(()));
        let g = remove_matching(&fq, &m).unwrap();
        prop_assert!(!recognize_hypercube(&g, n).unwrap().is_isomorphic());
    }

    #[test]
    fn recognition_is_relabeling_invariant(n in 1usize..=7, perm_seed: u64) {
        use rand::{seq::SliceRandom, SeedableRng};
        let q = build_hypercube(n).unwrap();
        let mut perm: Vec<u32> = (0..1u32 << n).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        let g = Graph::from_edges(n, q.edge_pairs().map(|(a, b)| (perm[a as usize], perm[b as usize])).collect::<Vec<_>>()).unwrap();
        match recognize_hypercube(&g, n).unwrap() {
            IsoResult::Isomorphic(lab) => prop_assert!(g.edge_pairs().all(|(a, b)| (lab.apply(a) ^ lab.apply(b)).count_ones() == 1)),
            IsoResult::NotIsomorphic(w) => prop_assert!(false, "rejected: {}", w),
        }
    }

    #[test]
    fn recognizer_matches_oracle_on_fq4(seed: u64) {
        let fq = build_folded_hypercube(4).unwrap();
        let m = sample_perfect_matching(&fq, seed).unwrap();
        let g = remove_matching(&fq, &m).unwrap();
        prop_assert_eq!(
            recognize_hypercube(&g, 4).unwrap().is_isomorphic(),
            brute_force_isomorphic(&g, &build_hypercube(4).unwrap()).unwrap()
        );
    }
}

#[test]
fn phi_is_an_involution() {
    for n in 2..=10 {
        for i in 1..=n {
            let phi = phi_map(n, i).unwrap();
            assert!((0..1u32 << n).all(|u| phi.apply(phi.apply(u)) == u), "n={n} i={i}");
        }
    }
}

#[test]
fn edge_lists_round_trip() {
    for n in 1..=6 {
        for g in [build_hypercube(n).ok(), build_folded_hypercube(n).ok()].into_iter().flatten() {
            let text = write_edge_list(&g);
            assert_eq!(parse_edge_list(&text).unwrap(), g);
        }
    }
}
