mod common;

use proptest::prelude::*;

use distinguon::distributions::{
    build_dist_matrix, distinguishable_distribution, ideal_distribution, lossy_distribution, partial_distribution,
    DistMatrix,
};
use distinguon::fock::enumerate_occupations;
use distinguon::interferometer::{haar_random_unitary, recompose, reck_decompose};
use distinguon::permanent::{permanent, submatrix};
use distinguon::sampler::sample_exact;
use distinguon::verify::{random_labels, random_occupation};
use distinguon::{ComplexMatrix, Occupation, RandomSeed, C64};

use common::{brute_permanent, routing_distribution, test_matrix, double_sum_literal};

fn permute_rows(a: &ComplexMatrix, p: &[usize]) -> ComplexMatrix {
    let n = a.rows();
    let e = (0..n).flat_map(|i| (0..n).map(move |j| (p[i], j))).map(|(i, j)| a.get(i, j)).collect();
    ComplexMatrix::from_row_major(n, n, e).unwrap()
}

fn occupation(m: usize, n: usize, seed: u64, distinct: bool) -> Occupation {
    random_occupation(m, n, distinct, &mut RandomSeed(seed).stream(99)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permanent_matches_permutation_sum(n in 1usize..=6, seed in any::<u64>()) {
        let a = test_matrix(n, seed);
        let (fast, slow) = (permanent(&a).unwrap(), brute_permanent(&a));
        prop_assert!((fast - slow).norm() <= 1e-12 * slow.norm().max(1.0));
    }

    #[test]
    fn permanent_ignores_row_and_column_order(seed in any::<u64>(), p in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let a = test_matrix(5, seed);
        let base = permanent(&a).unwrap();
        let rows = permanent(&permute_rows(&a, &p)).unwrap();
        let cols = permanent(&permute_rows(&a.transpose(), &p).transpose()).unwrap();
        prop_assert!((rows - base).norm() <= 1e-12 * base.norm().max(1.0));
        prop_assert!((cols - base).norm() <= 1e-12 * base.norm().max(1.0));
    }

    #[test]
    fn zero_row_kills_permanent(n in 1usize..=7, row in 0usize..7, seed in any::<u64>()) {
        let a = test_matrix(n, seed);
        let row = row % n;
        let e = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| if i == row { C64::new(0.0, 0.0) } else { a.get(i, j) })
            .collect();
        prop_assert_eq!(permanent(&ComplexMatrix::from_row_major(n, n, e).unwrap()).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn submatrix_transposes(m in 1usize..=4, n in 0usize..=4, seed in any::<u64>()) {
        let u = test_matrix(m, seed);
        let s = occupation(m, n, seed, false);
        let t = occupation(m, n, seed ^ 1, false);
        let lhs = submatrix(&u, &t, &s).unwrap().transpose();
        let rhs = submatrix(&u.transpose(), &s, &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn every_model_is_normalized(m in 1usize..=4, n in 1usize..=3, seed in any::<u64>()) {
        let u = haar_random_unitary(m, RandomSeed(seed)).unwrap();
        let s = occupation(m, n, seed, false);
        let labels = random_labels(m, n, &mut RandomSeed(seed).stream(5)).unwrap();
        let dist = build_dist_matrix(&s, &labels).unwrap();
        for d in [
            ideal_distribution(&u, &s).unwrap(),
            distinguishable_distribution(&u, &s).unwrap(),
            partial_distribution(&u, &s, &dist).unwrap(),
            lossy_distribution(&u, &s, n - 1).unwrap(),
        ] {
            prop_assert!((d.total() - 1.0).abs() <= 1e-9);
            prop_assert!(d.entries().iter().all(|(_, p)| *p >= 0.0));
        }
    }

    #[test]
    fn relabelling_modes_is_covariant(m in 2usize..=4, n in 1usize..=3, seed in any::<u64>(), p in Just((0..4).collect::<Vec<usize>>()).prop_shuffle()) {
        // permute the modes by pi on both sides: U -> P U P^T, S -> pi(S)
        let pi: Vec<usize> = p.into_iter().filter(|&x| x < m).collect();
        let u = haar_random_unitary(m, RandomSeed(seed)).unwrap();
        let e = (0..m).flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| u.get(pi[i], pi[j]))
            .collect();
        let v = ComplexMatrix::from_row_major(m, m, e).unwrap();
        let s = occupation(m, n, seed, false);
        let relabel = |o: &Occupation| Occupation::new((0..m).map(|i| o.get(pi[i])).collect()).unwrap();
        let a = ideal_distribution(&u, &s).unwrap();
        let b = ideal_distribution(&v, &relabel(&s)).unwrap();
        for (o, p) in a.entries() {
            prop_assert!((b.probability(&relabel(o)) - p).abs() <= 1e-12);
        }
    }

    #[test]
    fn partial_matches_literal_double_sum(m in 1usize..=4, n in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(n <= m);
        let u = haar_random_unitary(m, RandomSeed(seed)).unwrap();
        let s = occupation(m, n, seed, true);
        let labels = random_labels(m, 2, &mut RandomSeed(seed).stream(6)).unwrap();
        let dist = build_dist_matrix(&s, &labels).unwrap();
        let smat: Vec<Vec<C64>> = (0..n).map(|k| (0..n).map(|l| dist.get(k, l)).collect()).collect();
        let d = partial_distribution(&u, &s, &dist).unwrap();
        for (o, p) in d.entries() {
            let lit = double_sum_literal(&u, o.counts(), s.counts(), &smat);
            prop_assert!(lit.im.abs() <= 1e-12);
            prop_assert!((lit.re - p).abs() <= 1e-12);
        }
    }

    #[test]
    fn distinguishable_matches_routing(m in 1usize..=4, n in 1usize..=4, seed in any::<u64>()) {
        let u = haar_random_unitary(m, RandomSeed(seed)).unwrap();
        let s = occupation(m, n, seed, false);
        let d = distinguishable_distribution(&u, &s).unwrap();
        let r = routing_distribution(&u, s.counts());
        for (o, p) in d.entries() {
            prop_assert!((r.get(o.counts()).copied().unwrap_or(0.0) - p).abs() <= 1e-12);
        }
        // identity overlaps give the same table, collisions included
        let id = partial_distribution(&u, &s, &DistMatrix::distinguishable(n)).unwrap();
        prop_assert!(id.max_abs_diff(&d) <= 1e-12);
    }

    #[test]
    fn mesh_has_at_most_triangular_count(m in 1usize..=8, seed in any::<u64>()) {
        let u = haar_random_unitary(m, RandomSeed(seed)).unwrap();
        let seq = reck_decompose(&u).unwrap();
        prop_assert!(seq.mixing_count() <= m * (m - 1) / 2);
        prop_assert!(recompose(&seq).unwrap().max_abs_diff(&u) <= 1e-10);
    }

    #[test]
    fn basis_enumeration_is_sorted_and_complete(m in 1usize..=5, n in 0usize..=5) {
        let b = enumerate_occupations(m, n).unwrap();
        prop_assert!(b.windows(2).all(|w| w[0].counts() > w[1].counts()));
        prop_assert!(b.iter().all(|o| o.bosons() == n && o.modes() == m));
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let a = test_matrix(18, 3);
    let u = haar_random_unitary(4, RandomSeed(8)).unwrap();
    let d = ideal_distribution(&u, &Occupation::new(vec![1, 1, 1, 0]).unwrap()).unwrap();
    let on = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| (permanent(&a).unwrap(), sample_exact(&d, 5000, RandomSeed(1)).unwrap()))
    };
    let (p1, s1) = on(1);
    let (p4, s4) = on(4);
    assert_eq!(p1, p4);
    assert_eq!(s1, s4);
}
