//! Partitions, irrep dimensions and the symmetric irrep matrix.
//!
//! Irreps of `U(m)` and `S_n` appearing in `(C^m)^{(x)n}` are indexed by
//! partitions of `n` with at most `m` parts. The dimension checks here are
//! exact-integer identities; [`symmetric_irrep_matrix`] builds the action of
//! `U` on the totally symmetric irrep, whose basis is identified with the
//! canonical occupation basis.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{basis_size, binomial, enumerate_occupations, factorial};
use crate::matrix::{ComplexMatrix, C64, UNITARY_TOLERANCE};
use crate::permanent::{ryser, submatrix_columns, HARD_MAX_PERMANENT_SIZE};

/// Non-increasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::input(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// Part `i`, zero past the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `n` with at most `max_length` parts, reverse-lexicographic.
pub fn partitions_of(n: usize, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            cur.push(p);
            rec(remaining - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    rec(n, n, max_length, &mut cur, &mut out);
    out
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Dimension of the `U(m)` irrep `lambda` (Weyl):
/// `prod_{i<j} (l_i - l_j + j - i) / (j - i)`.
pub fn unitary_dim(lambda: &Partition, m: usize) -> Result<u128> {
    if lambda.length() > m {
        return Err(Error::input(format!(
            "partition {lambda} has more than {m} parts"
        )));
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..m {
        for j in i + 1..m {
            let a = (lambda.part(i) + j - i - lambda.part(j)) as u128;
            let b = (j - i) as u128;
            num = num
                .checked_mul(a)
                .ok_or_else(|| Error::size("Weyl dimension numerator", u128::MAX, u128::MAX))?;
            den *= b;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

/// Dimension of the `S_n` irrep `lambda`: `n! / prod hook lengths`.
pub fn symmetric_group_dim(lambda: &Partition) -> Result<u128> {
    let n = lambda.weight();
    let mut hooks: u128 = 1;
    let conj: Vec<usize> = (0..lambda.part(0)).map(|c| lambda.parts().iter().filter(|&&p| p > c).count()).collect();
    for (r, &row) in lambda.parts().iter().enumerate() {
        for (c, &col) in conj.iter().enumerate().take(row) {
            hooks *= (row - c + col - r - 1) as u128;
        }
    }
    Ok(factorial(n)? / hooks)
}

/// One line of a dimension identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTerm {
    pub partition: Partition,
    pub left: u128,
    pub right: u128,
}

/// Outcome of a dimension identity `sum_lambda left * right = expected`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: String,
    pub terms: Vec<IdentityTerm>,
    pub total: u128,
    pub expected: u128,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.total == self.expected
    }
}

impl std::fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|t| format!("{}*{}", t.left, t.right)).collect();
        write!(
            f,
            "{}: {} = {} (expected {}) [{}]",
            self.name,
            terms.join(" + "),
            self.total,
            self.expected,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

fn report(name: String, terms: Vec<IdentityTerm>, expected: u128) -> IdentityReport {
    let total = terms.iter().map(|t| t.left * t.right).sum();
    IdentityReport { name, terms, total, expected }
}

/// `sum_{lambda |- n, l <= m} dim U(m)^lambda * dim S_n^lambda = m^n`.
pub fn schur_weyl_check(m: usize, n: usize) -> Result<IdentityReport> {
    if m == 0 {
        return Err(Error::input("number of modes must be positive"));
    }
    let terms = partitions_of(n, m)
        .into_iter()
        .map(|p| {
            Ok(IdentityTerm {
                left: unitary_dim(&p, m)?,
                right: symmetric_group_dim(&p)?,
                partition: p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let expected = (m as u128).checked_pow(n as u32).ok_or_else(|| Error::size("m^n", u128::MAX, u128::MAX))?;
    Ok(report(format!("schur-weyl m={m} n={n}"), terms, expected))
}

/// `sum_{lambda |- n, l <= min(m,d)} dim U(m)^lambda * dim U(d)^lambda
/// = C(md + n - 1, n)`.
pub fn unitary_unitary_check(m: usize, d: usize, n: usize) -> Result<IdentityReport> {
    if m == 0 || d == 0 {
        return Err(Error::input("dimensions must be positive"));
    }
    let terms = partitions_of(n, m.min(d))
        .into_iter()
        .map(|p| {
            Ok(IdentityTerm {
                left: unitary_dim(&p, m)?,
                right: unitary_dim(&p, d)?,
                partition: p,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let expected = binomial((m * d + n - 1) as u128, n as u128).ok_or_else(|| Error::size("binomial", u128::MAX, u128::MAX))?;
    Ok(report(format!("unitary-unitary m={m} d={d} n={n}"), terms, expected))
}

/// `sum_{lambda |- n} (dim S_n^lambda)^2 = n!`, the dimension of the
/// coincident subspace.
pub fn coincident_dimension_check(n: usize) -> Result<IdentityReport> {
    let terms = partitions_of(n, n.max(1))
        .into_iter()
        .map(|p| {
            let d = symmetric_group_dim(&p)?;
            Ok(IdentityTerm { left: d, right: d, partition: p })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(format!("coincident n={n}"), terms, factorial(n)?))
}

/// Action of `U` on the totally symmetric irrep of `U(m)` on `n` bosons:
/// entry `[S', S] = per(U_{S',S}) / sqrt(prod S'_i! S_i!)`, rows and columns
/// in canonical occupation order.
pub fn symmetric_irrep_matrix(u: &ComplexMatrix, n: usize) -> Result<ComplexMatrix> {
    symmetric_irrep_matrix_with(u, n, &crate::distributions::Limits::default())
}

pub fn symmetric_irrep_matrix_with(
    u: &ComplexMatrix,
    n: usize,
    limits: &crate::distributions::Limits,
) -> Result<ComplexMatrix> {
    u.ensure_unitary(UNITARY_TOLERANCE)?;
    let m = u.rows();
    let cap = limits.max_permanent_size.min(HARD_MAX_PERMANENT_SIZE);
    if n > cap {
        return Err(Error::size("boson number", n as u128, cap as u128));
    }
    let size = basis_size(m, n)?;
    // the matrix is size^2 entries
    let cap = (limits.max_basis_size as f64).sqrt() as u128;
    if size > cap {
        return Err(Error::size("symmetric irrep dimension", size, cap));
    }
    let basis = enumerate_occupations(m, n)?;
    let words: Vec<(Vec<usize>, f64)> = basis
        .iter()
        .map(|o| (o.canonical_word().letters().to_vec(), o.factorial_product()))
        .collect();
    let d = basis.len();
    let entries: Vec<C64> = (0..d * d)
        .into_par_iter()
        .map(|idx| {
            let (r, c) = (idx / d, idx % d);
            let (out_w, out_f) = &words[r];
            let (in_w, in_f) = &words[c];
            ryser(&submatrix_columns(u, out_w, in_w)) / (out_f * in_f).sqrt()
        })
        .collect();
    ComplexMatrix::from_row_major(d, d, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ideal_distribution;
    use crate::interferometer::{balanced_beamsplitter, haar_random_unitary};
    use crate::rng::RandomSeed;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions_of(2, 2), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(partitions_of(3, 2), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(partitions_of(4, 4).len(), 5);
        assert_eq!(partitions_of(0, 3), vec![p(&[])]);
        // p(n) for n = 0..=10
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n, n.max(1)).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn unitary_dims() {
        for m in 1..=6 {
            for n in 0..=6 {
                assert_eq!(unitary_dim(&p(&[n]), m).unwrap(), basis_size(m, n).unwrap());
            }
        }
        assert_eq!(unitary_dim(&p(&[1, 1]), 2).unwrap(), 1);
        assert_eq!(unitary_dim(&p(&[2, 1]), 3).unwrap(), 8);
        assert!(unitary_dim(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn symmetric_group_dims() {
        for n in 1..=8 {
            assert_eq!(symmetric_group_dim(&p(&[n])).unwrap(), 1);
            assert_eq!(symmetric_group_dim(&p(&vec![1; n])).unwrap(), 1);
        }
        assert_eq!(symmetric_group_dim(&p(&[2, 1])).unwrap(), 2);
        assert_eq!(symmetric_group_dim(&p(&[3, 2])).unwrap(), 5);
        assert_eq!(symmetric_group_dim(&p(&[2, 2])).unwrap(), 2);
    }

    #[test]
    fn identity_examples() {
        let r = schur_weyl_check(2, 2).unwrap();
        assert_eq!((r.total, r.expected), (4, 4));
        assert_eq!(r.terms.iter().map(|t| (t.left, t.right)).collect::<Vec<_>>(), vec![(3, 1), (1, 1)]);
        let r = schur_weyl_check(2, 3).unwrap();
        assert_eq!(r.terms.iter().map(|t| (t.left, t.right)).collect::<Vec<_>>(), vec![(4, 1), (2, 2)]);
        let r = schur_weyl_check(1, 5).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert!(r.passed());

        let r = unitary_unitary_check(2, 2, 2).unwrap();
        assert_eq!(r.terms.iter().map(|t| (t.left, t.right)).collect::<Vec<_>>(), vec![(3, 3), (1, 1)]);
        assert_eq!(r.expected, 10);
        let r = unitary_unitary_check(2, 3, 2).unwrap();
        assert_eq!(r.terms.iter().map(|t| (t.left, t.right)).collect::<Vec<_>>(), vec![(3, 6), (1, 3)]);
        assert_eq!(r.expected, 21);
        let r = unitary_unitary_check(4, 1, 3).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert!(r.passed());

        assert_eq!(coincident_dimension_check(2).unwrap().total, 2);
        assert_eq!(coincident_dimension_check(3).unwrap().total, 6);
        assert_eq!(coincident_dimension_check(4).unwrap().total, 24);
    }

    #[test]
    fn identity_sweeps() {
        for m in 1..=5 {
            for n in 0..=6 {
                assert!(schur_weyl_check(m, n).unwrap().passed());
            }
        }
        for m in 1..=4 {
            for d in 1..=4 {
                for n in 0..=4 {
                    assert!(unitary_unitary_check(m, d, n).unwrap().passed());
                }
            }
        }
        for n in 0..=7 {
            assert!(coincident_dimension_check(n).unwrap().passed());
        }
    }

    #[test]
    fn irrep_matrix_examples() {
        let id = symmetric_irrep_matrix(&ComplexMatrix::identity(3), 2).unwrap();
        assert_eq!(id.max_abs_diff(&ComplexMatrix::identity(6)), 0.0);

        let u = haar_random_unitary(3, RandomSeed(1)).unwrap();
        assert!(symmetric_irrep_matrix(&u, 1).unwrap().max_abs_diff(&u) < 1e-15);

        let m = symmetric_irrep_matrix(&balanced_beamsplitter(), 2).unwrap();
        // column of input (1,1)
        let col: Vec<f64> = (0..3).map(|r| m.get(r, 1).norm_sqr()).collect();
        assert!((col[0] - 0.5).abs() < 1e-14 && col[1].abs() < 1e-14 && (col[2] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn irrep_matrix_reproduces_ideal_distribution() {
        let u = haar_random_unitary(3, RandomSeed(8)).unwrap();
        let n = 3;
        let m = symmetric_irrep_matrix(&u, n).unwrap();
        let basis = enumerate_occupations(3, n).unwrap();
        for (c, s) in basis.iter().enumerate() {
            let d = ideal_distribution(&u, s).unwrap();
            for (r, (_, p)) in d.entries().iter().enumerate() {
                assert!((m.get(r, c).norm_sqr() - p).abs() <= 1e-10);
            }
        }
    }
}
