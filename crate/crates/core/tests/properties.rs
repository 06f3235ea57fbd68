//! Property tests over random embeddings and frames.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use spatialcg::combinatorics::{enumerate_cycles, enumerate_disjoint_pairs, Cycle};
use spatialcg::geometry::diagram::{gauss_diagram, LinkDiagram};
use spatialcg::geometry::embedding::{cycle_curve, validate_embedding, SpatialEmbedding};
use spatialcg::geometry::frame::FrameSequence;
use spatialcg::geometry::io::{embedding_from_json, embedding_to_json};
use spatialcg::geometry::projection::project;
use spatialcg::geometry::rational::RationalPoint3;
use spatialcg::geometry::sampling::{random_k331_embedding, random_polyline_embedding, random_rectilinear_embedding};
use spatialcg::invariants::braid::braid_closure;
use spatialcg::invariants::{
    a2_gauss_formula, classify_triangle_triangle, conway_polynomial, linking_number, stick_bound_a2, TriangleLinkClass,
    DEFAULT_ORACLE_LIMIT,
};
use spatialcg::theorems::{binomial, verify, AnalysisOptions, Analyzer, CheckId};

type Curve = Vec<RationalPoint3>;

fn a2(d: &LinkDiagram) -> i64 {
    a2_gauss_formula(&gauss_diagram(d).unwrap())
}

/// Diagrams of `curves` in the first `count` generic frames of `seed`.
fn diagrams(curves: &[Curve], seed: u64, count: usize) -> Vec<LinkDiagram> {
    let mut seq = FrameSequence::new(seed);
    let mut out = Vec::new();
    for _ in 0..200 {
        if out.len() == count {
            break;
        }
        if let Ok(d) = project(curves, &seq.next_frame().1) {
            out.push(d);
        }
    }
    assert_eq!(out.len(), count, "generic frames are dense");
    out
}

fn invariant(curves: &[Curve], d: &LinkDiagram) -> i64 {
    if curves.len() == 1 {
        a2(d)
    } else {
        linking_number(d).unwrap()
    }
}

fn map_curves(curves: &[Curve], f: impl Fn(&RationalPoint3) -> RationalPoint3) -> Vec<Curve> {
    curves.iter().map(|c| c.iter().map(&f).collect()).collect()
}

/// One random subject of a random rectilinear or polyline `K_7`.
fn subject_curves(seed: u64, polyline: bool, pick: usize, pair: bool) -> Vec<Curve> {
    let e = if polyline {
        random_polyline_embedding(7, seed, 500, 2).unwrap()
    } else {
        random_rectilinear_embedding(7, seed, 500).unwrap()
    };
    if pair {
        let pairs = enumerate_disjoint_pairs(e.graph(), 3, 4);
        let p = &pairs[pick % pairs.len()];
        vec![cycle_curve(&e, p.first()), cycle_curve(&e, p.second())]
    } else {
        let cycles = enumerate_cycles(e.graph(), 7);
        vec![cycle_curve(&e, &cycles[pick % cycles.len()])]
    }
}

fn triangle() -> impl Strategy<Value = Curve> {
    prop::collection::vec((-20i64..=20, -20i64..=20, -20i64..=20), 3).prop_map(|v| {
        v.into_iter()
            .map(|(x, y, z)| RationalPoint3::from_ints(x, y, z))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inter_component_crossings_are_even(a in triangle(), b in triangle(), seed in 0u64..1000) {
        let mut seq = FrameSequence::new(seed);
        let Ok(d) = project(&[a, b], &seq.next_frame().1) else { return Ok(()) };
        let inter = (0..d.crossing_count()).filter(|&i| d.is_inter_component(i)).count();
        prop_assert_eq!(inter % 2, 0);
    }

    #[test]
    fn integer_scaling_keeps_combinatorics(a in triangle(), b in triangle(), k in 2i64..50, seed in 0u64..1000) {
        let mut seq = FrameSequence::new(seed);
        let frame = seq.next_frame().1;
        let curves = vec![a, b];
        let Ok(d) = project(&curves, &frame) else { return Ok(()) };
        let factor = BigRational::from_integer(BigInt::from(k));
        let scaled = map_curves(&curves, |p| p.scale(&factor));
        let ds = project(&scaled, &frame).unwrap();
        prop_assert_eq!(d.gauss_code(), ds.gauss_code());
    }

    #[test]
    fn invariants_agree_across_frames(seed in 0u64..10_000, polyline: bool, pick in 0usize..10_000, pair: bool) {
        let curves = subject_curves(seed, polyline, pick, pair);
        let values: Vec<i64> = diagrams(&curves, seed, 5).iter().map(|d| invariant(&curves, d)).collect();
        prop_assert!(values.windows(2).all(|w| w[0] == w[1]), "{:?}", values);
    }

    #[test]
    fn mirror_negates_lk_and_keeps_a2(seed in 0u64..10_000, pick in 0usize..10_000, pair: bool) {
        let curves = subject_curves(seed, false, pick, pair);
        let mirrored = map_curves(&curves, |p| {
            let [x, y, z] = p.coords();
            RationalPoint3::new(x.clone(), y.clone(), -z.clone())
        });
        let v = invariant(&curves, &diagrams(&curves, seed, 1)[0]);
        let m = invariant(&mirrored, &diagrams(&mirrored, seed, 1)[0]);
        prop_assert_eq!(m, if pair { -v } else { v });
    }

    #[test]
    fn reversal_negates_lk_and_keeps_a2(seed in 0u64..10_000, pick in 0usize..10_000) {
        let pair = subject_curves(seed, true, pick, true);
        let d = &diagrams(&pair, seed, 1)[0];
        let lk = linking_number(d).unwrap();
        prop_assert_eq!(linking_number(&d.with_reversed_component(0)).unwrap(), -lk);
        prop_assert_eq!(linking_number(&d.with_reversed_component(1)).unwrap(), -lk);
        let knot = subject_curves(seed, true, pick, false);
        let d = &diagrams(&knot, seed, 1)[0];
        prop_assert_eq!(a2(&d.with_reversed_component(0)), a2(d));
    }

    #[test]
    fn gauss_formula_matches_skein_oracle(word in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2), Just(3), Just(-3)], 1..12)) {
        let code = braid_closure(4, &word);
        prop_assume!(code.components.len() == 1);
        let poly = conway_polynomial(&code, DEFAULT_ORACLE_LIMIT).unwrap();
        let g = spatialcg::geometry::diagram::GaussDiagram::from_code(&code).unwrap();
        prop_assert_eq!(a2_gauss_formula(&g), poly.a2());
    }

    #[test]
    fn json_round_trip(seed in 0u64..10_000, n in 3usize..8, bends in 0usize..3) {
        let e = random_polyline_embedding(n, seed, 1000, bends).unwrap();
        let text = embedding_to_json(&e);
        let back = embedding_from_json(&text).unwrap();
        prop_assert_eq!(embedding_to_json(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn random_embeddings_are_valid(seed in 0u64..10_000, n in 3usize..10) {
        let e = random_rectilinear_embedding(n, seed, 1000).unwrap();
        prop_assert!(validate_embedding(&e).is_ok());
        prop_assert_eq!(embedding_to_json(&e), embedding_to_json(&random_rectilinear_embedding(n, seed, 1000).unwrap()));
    }

    /// Triangle pairs link at most once and Hamiltonian knots respect the
    /// stick bound in rectilinear embeddings.
    #[test]
    fn rectilinear_contracts(seed in 0u64..10_000, n in 6usize..9) {
        let an = Analyzer::new(random_rectilinear_embedding(n, seed, 1000).unwrap(), AnalysisOptions::default()).unwrap();
        for r in an.pair_records(3, 3).unwrap().iter() {
            prop_assert_ne!(classify_triangle_triangle(r.value, true), TriangleLinkClass::Other);
        }
        let bound = stick_bound_a2(n as u64) as i64;
        prop_assert!(an.cycle_records(n).unwrap().iter().all(|r| r.value <= bound));
        prop_assert_eq!(an.sum_a2(5).unwrap(), BigInt::from(0));
    }

    #[test]
    fn lk_square_parity(seed in 0u64..10_000, n in 6usize..9, polyline: bool) {
        let e: SpatialEmbedding = if polyline {
            random_polyline_embedding(n, seed, 1000, 1).unwrap()
        } else {
            random_rectilinear_embedding(n, seed, 1000).unwrap()
        };
        let an = Analyzer::new(e, AnalysisOptions::default()).unwrap();
        let s = an.sum_lk_sq(3, 3).unwrap();
        prop_assert_eq!((s - binomial(n as u64, 6)) % 2, BigInt::from(0));
    }

    #[test]
    fn universal_identities_on_polyline_embeddings(seed in 0u64..10_000, n in 6usize..8) {
        let an = Analyzer::new(random_polyline_embedding(n, seed, 1000, 2).unwrap(), AnalysisOptions { seed, frame_retries: 64 }).unwrap();
        let r = verify(&an, None, false).unwrap();
        prop_assert!(r.pass, "{:?}", r.failures());
        prop_assert!(r.identity(CheckId::Main).is_some());
    }

    #[test]
    fn k331_identity_and_nonzero_linking(seed in 0u64..10_000) {
        let an = Analyzer::new(random_k331_embedding(seed, 1000).unwrap(), AnalysisOptions::default()).unwrap();
        let r = verify(&an, None, false).unwrap();
        prop_assert!(r.pass, "{:?}", r.failures());
        prop_assert!(an.sum_lk_sq(3, 4).unwrap() >= BigInt::from(1));
    }

    #[test]
    fn analysis_seed_does_not_change_values(seed in 0u64..10_000, frame_seed in 1u64..10_000) {
        let e = random_rectilinear_embedding(7, seed, 1000).unwrap();
        let a = Analyzer::new(e.clone(), AnalysisOptions::default()).unwrap();
        let b = Analyzer::new(e, AnalysisOptions { seed: frame_seed, frame_retries: 64 }).unwrap();
        let values = |an: &Analyzer| an.cycle_records(7).unwrap().iter().map(|r| r.value).collect::<Vec<_>>();
        prop_assert_eq!(values(&a), values(&b));
        prop_assert_eq!(a.sum_lk(3, 4).unwrap(), b.sum_lk(3, 4).unwrap());
    }
}

#[test]
fn cycle_keys_survive_rotation_in_curves() {
    let e = random_rectilinear_embedding(6, 4, 1000).unwrap();
    let c = Cycle::in_graph(&[0, 2, 4, 1, 3, 5], e.graph()).unwrap();
    let rotated = Cycle::in_graph(&[4, 1, 3, 5, 0, 2], e.graph()).unwrap();
    assert_eq!(c, rotated);
    let curves = vec![cycle_curve(&e, &c)];
    let d = &diagrams(&curves, 3, 1)[0];
    let d2 = &diagrams(&[cycle_curve(&e, &rotated)], 3, 1)[0];
    assert_eq!(a2(d), a2(d2));
}
