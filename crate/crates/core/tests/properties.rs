use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quiverforge::algebra::{matrix_algebra, regular_trace, truncated_polynomial, SplitSemisimple, StructureConstAlgebra};
use quiverforge::exactla::{format_scalar, int, parse_scalar, ratio, Matrix, Scalar};
use quiverforge::gpa::{gpa_build, GPAlgebra, GpaVertexAlgebra};
use quiverforge::modulation::{bimodule_ranks, BimoduleData, ConcreteBimodule, PseudoModulation, VertexAlgebra};
use quiverforge::quiver::{labeled_iso, Quiver};
use quiverforge::reps::{random_rep, roundtrip_check};

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            Matrix::from_vec(r, c, v.into_iter().map(int).collect()).unwrap()
        })
    })
}

/// Arrow list on `k` vertices; loops allowed when `loops` is set.
fn arrow_list(loops: bool) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=4).prop_flat_map(move |k| {
        let arrow = (0..k, 0..k).prop_map(move |(s, t)| match (loops, s == t) {
            (false, true) => (s, (t + 1) % k),
            _ => (s, t),
        });
        let max = if loops || k > 1 { 5 } else { 0 };
        (Just(k), prop::collection::vec(arrow, 0..=max))
    })
}

fn build_quiver(k: usize, arrows: &[(usize, usize)]) -> Quiver {
    let names: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = arrows
        .iter()
        .enumerate()
        .map(|(n, &(s, t))| (format!("a{n}"), names[s].clone(), names[t].clone()))
        .collect();
    Quiver::new(&names, &arrows).unwrap()
}

fn int_power_sum(c: &[Vec<usize>], len: usize) -> usize {
    let k = c.len();
    let mut p: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| usize::from(i == j)).collect()).collect();
    for _ in 0..len {
        p = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|m| p[i][m] * c[m][j]).sum()).collect())
            .collect();
    }
    p.iter().flatten().sum()
}

fn random_element(a: &StructureConstAlgebra, coefs: &[i64]) -> Vec<Scalar> {
    (0..a.dim()).map(|i| int(coefs[i % coefs.len()])).collect()
}

/// Acyclic quiver with a truncated loop algebra or `M_n` at each vertex.
fn small_gpa(k: usize, arrows: &[(usize, usize)], kinds: &[u8]) -> GPAlgebra {
    let forward: Vec<(usize, usize)> = arrows
        .iter()
        .filter(|(s, t)| s != t)
        .map(|&(s, t)| (s.min(t), s.max(t)))
        .collect();
    let q = build_quiver(k, &forward);
    let algebras = (0..k)
        .map(|v| match kinds[v % kinds.len()] % 3 {
            0 => GpaVertexAlgebra::field(),
            1 => GpaVertexAlgebra::split(SplitSemisimple::matrix(2)),
            _ => GpaVertexAlgebra::loops(vec!["x".into()], 2),
        })
        .collect();
    gpa_build(&q, algebras, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in small_matrix()) {
        prop_assert_eq!(m.rank() + m.nullspace().len(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.nullspace() {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_when_full_rank(m in small_matrix()) {
        let inv = m.inverse();
        prop_assert_eq!(inv.is_some(), m.is_square() && m.rank() == m.rows());
        if let Some(inv) = inv {
            prop_assert_eq!(m.mul(&inv), Matrix::identity(m.rows()));
            prop_assert_eq!(inv.mul(&m), Matrix::identity(m.rows()));
        }
    }

    #[test]
    fn scalar_text_round_trip(p in -1000i64..=1000, q in 1i64..=50) {
        let x = ratio(p, q);
        prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
    }

    #[test]
    fn path_counts_are_adjacency_powers((k, arrows) in arrow_list(true), len in 0usize..=4) {
        let q = build_quiver(k, &arrows);
        let c = q.arrow_count_matrix();
        prop_assert_eq!(q.paths_of_length(len).len(), int_power_sum(&c, len));
    }

    #[test]
    fn relabeling_is_found_both_ways(
        (k, arrows) in arrow_list(true),
        shuffle in prop::collection::vec(any::<prop::sample::Index>(), 4),
    ) {
        let q = build_quiver(k, &arrows);
        let mut theta: Vec<usize> = (0..k).collect();
        for (i, ix) in shuffle.iter().enumerate().take(k) {
            theta.swap(i, ix.index(k));
        }
        let names: Vec<String> = (0..k).map(|i| format!("w{i}")).collect();
        let r = q.relabeled(&theta, &names);
        prop_assert!(labeled_iso::<_, ()>(&q, &r, None, 8).unwrap().is_some());
        prop_assert!(labeled_iso::<_, ()>(&r, &q, None, 8).unwrap().is_some());
    }

    #[test]
    fn iso_is_symmetric((k1, a1) in arrow_list(false), (k2, a2) in arrow_list(false)) {
        let (x, y) = (build_quiver(k1, &a1), build_quiver(k2, &a2));
        let xy = labeled_iso::<_, ()>(&x, &y, None, 8).unwrap();
        let yx = labeled_iso::<_, ()>(&y, &x, None, 8).unwrap();
        prop_assert_eq!(xy.is_some(), yx.is_some());
        if let Some(theta) = xy {
            let (cx, cy) = (x.arrow_count_matrix(), y.arrow_count_matrix());
            for i in 0..k1 {
                for j in 0..k1 {
                    prop_assert_eq!(cx[i][j], cy[theta[i]][theta[j]]);
                }
            }
        }
    }

    #[test]
    fn gpa_multiplication_is_associative(
        (k, arrows) in arrow_list(false),
        kinds in prop::collection::vec(0u8..3, 4),
        coefs in prop::collection::vec(-2i64..=2, 3..7),
    ) {
        let g = small_gpa(k, &arrows, &kinds);
        prop_assume!(g.dim() <= 40);
        let n = g.dim();
        let elem = |shift: usize| {
            let v: Vec<Scalar> = (0..n).map(|i| int(coefs[(i + shift) % coefs.len()])).collect();
            g.from_coords(&v)
        };
        let (x, y, z) = (elem(0), elem(1), elem(2));
        let left = g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap();
        let right = g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(g.coords(&left), g.coords(&right));
        let one = g.unit();
        prop_assert_eq!(g.coords(&g.mul(&one, &x).unwrap()), g.coords(&x));
        prop_assert_eq!(g.coords(&g.mul(&x, &one).unwrap()), g.coords(&x));
    }

    #[test]
    fn trace_is_symmetric(n in 1usize..=3, m in 1usize..=4, coefs in prop::collection::vec(-3i64..=3, 1..10)) {
        for a in [matrix_algebra(n), truncated_polynomial(m)] {
            let x = random_element(&a, &coefs);
            let y: Vec<Scalar> = random_element(&a, &coefs).into_iter().rev().collect();
            prop_assert_eq!(regular_trace(&a, &a.mul(&x, &y)), regular_trace(&a, &a.mul(&y, &x)));
        }
    }

    #[test]
    fn bimodule_ranks_match_multiplicities(
        p in prop::collection::vec(1usize..=2, 1..=2),
        q in prop::collection::vec(1usize..=2, 1..=2),
        raw in prop::collection::vec(0usize..=3, 4),
    ) {
        let mult: Vec<Vec<usize>> = (0..p.len())
            .map(|a| (0..q.len()).map(|b| raw[a * 2 + b]).collect())
            .collect();
        let m = ConcreteBimodule::from_multiplicities(
            SplitSemisimple::new(p.clone()).unwrap(),
            SplitSemisimple::new(q.clone()).unwrap(),
            &mult,
        )
        .unwrap();
        let dim: usize = (0..p.len()).flat_map(|a| (0..q.len()).map(move |b| (a, b)))
            .map(|(a, b)| mult[a][b] * p[a] * q[b])
            .sum();
        prop_assert_eq!(m.dim(), dim);
        prop_assert_eq!(&m.multiplicities(), &mult);
        let ceil = |x: usize, y: usize| x.div_ceil(y) as u64;
        let d_ij = (0..q.len()).map(|b| ceil((0..p.len()).map(|a| mult[a][b] * p[a]).sum(), q[b])).max().unwrap();
        let d_ji = (0..p.len()).map(|a| ceil((0..q.len()).map(|b| mult[a][b] * q[b]).sum(), p[a])).max().unwrap();
        let t = (0..p.len()).flat_map(|a| (0..q.len()).map(move |b| (a, b)))
            .map(|(a, b)| ceil(mult[a][b], p[a] * q[b]))
            .max()
            .unwrap();
        let r = bimodule_ranks(&m);
        prop_assert_eq!((r.d_ij, r.d_ji, r.t), (d_ij, d_ji, t));
        let q_dim: usize = q.iter().map(|n| n * n).sum();
        prop_assert!(m.dim() as u64 <= r.d_ij * q_dim as u64);
    }

    #[test]
    fn representations_round_trip(seed in any::<u64>(), c1 in 0usize..=2, c2 in 0usize..=2, n in 1usize..=2, t in 0usize..=2) {
        let (a1, a2) = (SplitSemisimple::matrix(n), SplitSemisimple::field());
        let m = PseudoModulation::new(
            vec!["1".into(), "2".into()],
            vec![VertexAlgebra::Split(a1.clone()), VertexAlgebra::Split(a2.clone())],
            vec![(0, 1, BimoduleData::Concrete(ConcreteBimodule::from_multiplicities(a1, a2, &[vec![t]]).unwrap()))],
            false,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = random_rep(&m, &[c1, c2], &mut rng).unwrap();
        prop_assert_eq!(rep.dims(), vec![c1 * n, c2]);
        prop_assert!(roundtrip_check(&rep));
    }
}
