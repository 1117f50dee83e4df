//! Slow, literal reference computations shared by the integration tests.
//! None of these go through the library's permanent or enumeration code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use distinguon::{ComplexMatrix, C64};

/// All permutations of `0..n` (Heap's algorithm).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// `sum_sigma prod_i A[i, sigma(i)]`.
pub fn brute_permanent(a: &ComplexMatrix) -> C64 {
    let n = a.rows();
    all_permutations(n)
        .iter()
        .map(|p| (0..n).map(|i| a.get(i, p[i])).product::<C64>())
        .sum()
}

/// Mode of each boson, ascending.
pub fn word(counts: &[usize]) -> Vec<usize> {
    counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i, c)).collect()
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// The double sum over `tau, tau'` with prefactor `1/prod S_i! S'_i!`,
/// evaluated term by term. `smat[k][l] = <Phi_k|Phi_l>`.
pub fn double_sum_literal(u: &ComplexMatrix, out: &[usize], input: &[usize], smat: &[Vec<C64>]) -> C64 {
    let s = word(input);
    let t = word(out);
    let n = s.len();
    let perms = all_permutations(n);
    let mut total = C64::new(0.0, 0.0);
    for tau in &perms {
        for tau2 in &perms {
            let mut term = C64::new(1.0, 0.0);
            for k in 0..n {
                term *= u.get(t[k], s[tau[k]]) * u.get(t[k], s[tau2[k]]).conj() * smat[tau2[k]][tau[k]];
            }
            total += term;
        }
    }
    let norm: f64 = out.iter().chain(input).map(|&c| fact(c)).product();
    total / norm
}

/// Output statistics of bosons routed one at a time: every assignment of
/// output modes to bosons, weight `prod_k |U[j_k, i_k]|^2`, grouped by
/// occupation.
pub fn routing_distribution(u: &ComplexMatrix, input: &[usize]) -> BTreeMap<Vec<usize>, f64> {
    let m = u.rows();
    let s = word(input);
    let n = s.len();
    let mut out = BTreeMap::new();
    let total = m.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut counts = vec![0; m];
        let mut w = 1.0;
        for &i in &s {
            let j = c % m;
            c /= m;
            counts[j] += 1;
            w *= u.get(j, i).norm_sqr();
        }
        *out.entry(counts).or_insert(0.0) += w;
    }
    out
}

/// Deterministic pseudo-random complex matrix with entries of modulus <= 1.
pub fn test_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let entries = (0..n * n)
        .map(|_| C64::from_polar(next(), std::f64::consts::TAU * next()))
        .collect();
    ComplexMatrix::from_row_major(n, n, entries).unwrap()
}
