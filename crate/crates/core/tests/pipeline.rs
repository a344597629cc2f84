//! End-to-end flows across the algebra, natext and gpa layers.

use proptest::prelude::*;

use quiverforge::algebra::{
    blow_up, matrix_algebra, realize_bound_quiver, regular_trace, BoundQuiverPresentation, Provenance,
    RealizedAlgebra, SplitSemisimple,
};
use quiverforge::exactla::{int, unit_vec};
use quiverforge::gpa::{
    gpa_build, gpa_from_premodulation, gpa_iso_check, induced_valued_quiver, loop_eliminate, premodulation_of,
    GpaError, GpaVertexAlgebra,
};
use quiverforge::natext::{
    ext_dims_lemma, ext_dims_resolution, natural_quiver, natural_valued_quiver, valued_ext_quiver,
};
use quiverforge::quiver::named::{kronecker, linear, loops};
use quiverforge::quiver::{Quiver, ValuedEdge};

fn free(q: Quiver, s: usize) -> RealizedAlgebra {
    realize_bound_quiver(&BoundQuiverPresentation::free(q, s).unwrap()).unwrap()
}

fn a3_zero() -> RealizedAlgebra {
    let q = linear(3);
    let rel = BoundQuiverPresentation::relation(&q, &[(1, &["a1", "a2"])]).unwrap();
    realize_bound_quiver(&BoundQuiverPresentation::new(q, vec![rel], 2).unwrap()).unwrap()
}

fn bases() -> Vec<RealizedAlgebra> {
    vec![free(linear(2), 2), free(kronecker(2), 2), a3_zero(), free(linear(3), 3)]
}

fn edge(from: usize, to: usize, d_ij: u64, d_ji: u64) -> ValuedEdge {
    ValuedEdge { from, to, d_ij, d_ji }
}

/// Σ over base basis paths `p: i -> j` of `n_i·n_j`.
fn blown_up_dim(base: &RealizedAlgebra, n: &[usize]) -> usize {
    let Provenance::BoundQuiver { basis_paths, .. } = &base.provenance else {
        panic!("bound quiver base");
    };
    basis_paths.iter().map(|p| n[p.source] * n[p.target]).sum()
}

#[test]
fn matrix_unit_trace_is_block_size() {
    let m2 = matrix_algebra(2);
    assert_eq!(regular_trace(&m2, &unit_vec(4, 0)), int(2));
    assert_eq!(regular_trace(&m2, &unit_vec(4, 1)), int(0));
}

#[test]
fn blow_up_a2_2_3() {
    let up = blow_up(&free(linear(2), 2), &[2, 3]).unwrap();
    assert_eq!(up.dim(), 4 + 9 + 6);
    let nq = natural_quiver(&up).unwrap();
    assert_eq!(nq.t, vec![vec![0, 1], vec![0, 0]]);
    assert_eq!(nq.bimodule_dims[0][1], 6);
    assert_eq!(natural_valued_quiver(&up).unwrap().quiver.edges(), &[edge(0, 1, 4, 9)]);
    assert_eq!(valued_ext_quiver(&up).unwrap().quiver.edges(), &[edge(0, 1, 1, 1)]);
}

#[test]
fn blow_up_kronecker_1_2() {
    let up = blow_up(&free(kronecker(2), 2), &[1, 2]).unwrap();
    assert_eq!(up.dim(), 1 + 4 + 2 * 2);
    assert_eq!(natural_quiver(&up).unwrap().t[0][1], 1);
    assert_eq!(ext_dims_lemma(&up).unwrap()[0][1], 2);
    assert_eq!(natural_valued_quiver(&up).unwrap().quiver.edges(), &[edge(0, 1, 1, 4)]);
    assert_eq!(valued_ext_quiver(&up).unwrap().quiver.edges(), &[edge(0, 1, 2, 2)]);
}

#[test]
fn ext_matrices_on_small_algebras() {
    let one_loop = {
        let q = loops(1);
        let rel = BoundQuiverPresentation::relation(&q, &[(1, &["x", "x"])]).unwrap();
        realize_bound_quiver(&BoundQuiverPresentation::new(q, vec![rel], 2).unwrap()).unwrap()
    };
    assert_eq!(ext_dims_resolution(&one_loop).unwrap(), vec![vec![1]]);
    assert_eq!(
        ext_dims_resolution(&a3_zero()).unwrap(),
        vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]
    );
    assert_eq!(ext_dims_resolution(&free(linear(2), 2)).unwrap(), vec![vec![0, 1], vec![0, 0]]);
}

#[test]
fn premodulation_round_trip_keeps_valuation() {
    let g = gpa_build(
        &linear(2),
        vec![GpaVertexAlgebra::split(SplitSemisimple::matrix(2)), GpaVertexAlgebra::field()],
        None,
    )
    .unwrap();
    assert_eq!(g.degree_dims(), vec![5, 4]);
    let v = induced_valued_quiver(&g);
    assert_eq!(v.quiver.edges(), &[edge(0, 1, 4, 1)]);
    let back = gpa_from_premodulation(&premodulation_of(&g).unwrap(), None).unwrap();
    assert_eq!(back.dim(), g.dim());
    assert_eq!(induced_valued_quiver(&back).quiver, v.quiver);
    assert_eq!(gpa_iso_check(&g, &back, 8).unwrap(), Some(vec![0, 1]));
}

#[test]
fn semi_normal_pair_is_refused() {
    let split = SplitSemisimple::new(vec![1, 1]).unwrap();
    let g1 = gpa_build(&Quiver::discrete(1), vec![GpaVertexAlgebra::split(split)], None).unwrap();
    let g2 = gpa_build(&Quiver::discrete(2), vec![GpaVertexAlgebra::field(); 2], None).unwrap();
    assert_eq!((g1.dim(), g2.dim()), (2, 2));
    let err = gpa_iso_check(&g1, &g2, 8).unwrap_err();
    assert!(matches!(err, GpaError::HypothesesNotMet(_)), "{err}");
}

#[test]
fn loop_arrow_valuation_is_flagged() {
    let q = Quiver::new(
        &["1".to_string(), "2".to_string()],
        &[
            ("x".to_string(), "1".to_string(), "1".to_string()),
            ("a".to_string(), "1".to_string(), "2".to_string()),
        ],
    )
    .unwrap();
    let elim = loop_eliminate(&q, 3).unwrap();
    assert_eq!(elim.reduced.arrow_count_matrix(), vec![vec![0, 1], vec![0, 0]]);
    let v = &elim.loop_count_valuation[0];
    assert_eq!((v.d_ij, v.d_ji, v.anomalous), (1, 0, true));
    assert_eq!(elim.rank_valuation.edges(), &[edge(0, 1, 4, 1)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn blow_up_dimension_counts_triples(which in 0usize..4, n in prop::collection::vec(1usize..=3, 3)) {
        let base = bases().swap_remove(which);
        let n = &n[..base.block_names.len()];
        let up = blow_up(&base, n).unwrap();
        prop_assert_eq!(up.dim(), blown_up_dim(&base, n));
    }

    #[test]
    fn ext_is_morita_invariant(which in 0usize..4, n in prop::collection::vec(1usize..=2, 3)) {
        let base = bases().swap_remove(which);
        let n = &n[..base.block_names.len()];
        let up = blow_up(&base, n).unwrap();
        let ext = ext_dims_lemma(&base).unwrap();
        prop_assert_eq!(&ext_dims_lemma(&up).unwrap(), &ext);
        prop_assert_eq!(&ext_dims_resolution(&up).unwrap(), &ext);
        let nq = natural_quiver(&up).unwrap();
        for e in natural_valued_quiver(&up).unwrap().quiver.edges() {
            let t = nq.t[e.from][e.to];
            prop_assert_eq!(e.d_ij, t * (n[e.from] * n[e.from]) as u64);
            prop_assert_eq!(e.d_ji, t * (n[e.to] * n[e.to]) as u64);
        }
    }
}
