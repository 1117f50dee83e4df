//! Drawing occupation samples and checking them against exact tables.
//!
//! Shot `k` under seed `s` always uses ChaCha stream `k` of key `s`, so a
//! batch is the same whatever the thread count.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::distributions::{total_variation, OccupationDistribution};
use crate::error::{Error, Result};
use crate::fock::{enumerate_occupations, Occupation};
use crate::matrix::{ComplexMatrix, UNITARY_TOLERANCE};
use crate::rng::RandomSeed;

/// Largest deviation from unit total accepted by [`sample_exact`].
pub const SAMPLING_NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Samples in shot order, with what produced them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub m: usize,
    pub n: usize,
    pub samples: Vec<Occupation>,
    pub seed: RandomSeed,
    pub model: String,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::input("shot count must be positive"));
    }
    Ok(())
}

/// I.i.d. draws from `dist` by inverse CDF over the canonical order.
pub fn sample_exact(dist: &OccupationDistribution, count: usize, seed: RandomSeed) -> Result<SampleBatch> {
    sample_exact_labelled(dist, count, seed, "exact")
}

/// As [`sample_exact`], recording `model` in the batch.
pub fn sample_exact_labelled(
    dist: &OccupationDistribution,
    count: usize,
    seed: RandomSeed,
    model: &str,
) -> Result<SampleBatch> {
    check_count(count)?;
    let total = dist.total();
    if (total - 1.0).abs() > SAMPLING_NORMALIZATION_TOLERANCE {
        return Err(Error::input(format!("distribution sums to {total}, expected 1")));
    }
    let mut cdf = Vec::with_capacity(dist.len());
    let mut acc = 0.0;
    for (_, p) in dist.entries() {
        acc += p;
        cdf.push(acc);
    }
    let last = cdf.len() - 1;
    let samples = (0..count as u64)
        .into_par_iter()
        .map(|shot| {
            let x: f64 = seed.stream(shot).random::<f64>() * acc;
            // first index with cdf > x; zero-probability bins are never chosen
            let i = cdf.partition_point(|&c| c <= x).min(last);
            dist.entries()[i].0.clone()
        })
        .collect();
    Ok(SampleBatch {
        m: dist.modes(),
        n: dist.bosons(),
        samples,
        seed,
        model: model.to_string(),
    })
}

/// Route every boson through `u` on its own: a boson entering mode `i`
/// leaves in mode `j` with probability `|U[j, i]|^2`.
pub fn sample_distinguishable_direct(
    u: &ComplexMatrix,
    s: &Occupation,
    count: usize,
    seed: RandomSeed,
) -> Result<SampleBatch> {
    check_count(count)?;
    u.ensure_unitary(UNITARY_TOLERANCE)?;
    let m = u.rows();
    if s.modes() != m {
        return Err(Error::input(format!("{}-mode occupation for a {m}-mode interferometer", s.modes())));
    }
    // cumulative column weights, normalized against rounding
    let columns: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut acc = 0.0;
            let mut c: Vec<f64> = (0..m)
                .map(|j| {
                    acc += u.get(j, i).norm_sqr();
                    acc
                })
                .collect();
            c.iter_mut().for_each(|x| *x /= acc);
            c
        })
        .collect();
    let word = s.canonical_word();
    let samples = (0..count as u64)
        .into_par_iter()
        .map(|shot| {
            let mut rng = seed.stream(shot);
            let mut counts = vec![0; m];
            for &i in word.letters() {
                let x: f64 = rng.random();
                let j = columns[i].partition_point(|&c| c <= x).min(m - 1);
                counts[j] += 1;
            }
            Occupation::new(counts).expect("non-empty mode list")
        })
        .collect();
    Ok(SampleBatch {
        m,
        n: s.bosons(),
        samples,
        seed,
        model: "distinguishable-direct".into(),
    })
}

/// Relative frequencies over the full canonical basis.
pub fn empirical_distribution(batch: &SampleBatch) -> Result<OccupationDistribution> {
    if batch.is_empty() {
        return Err(Error::input("empty sample batch"));
    }
    let basis = enumerate_occupations(batch.m, batch.n)?;
    let mut counts = vec![0usize; basis.len()];
    for s in &batch.samples {
        if s.modes() != batch.m || s.bosons() != batch.n {
            return Err(Error::input(format!(
                "sample {s} is not a {}-mode {}-boson occupation",
                batch.m, batch.n
            )));
        }
        // canonical order is descending lexicographic
        let i = basis
            .binary_search_by(|b| s.counts().cmp(b.counts()))
            .expect("sample lies in the basis");
        counts[i] += 1;
    }
    let total = batch.len() as f64;
    OccupationDistribution::from_probabilities(batch.m, batch.n, counts.iter().map(|&c| c as f64 / total).collect())
}

/// Pearson chi-square goodness of fit.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Expected counts below this are pooled into one bin.
pub const MIN_EXPECTED_COUNT: f64 = 5.0;

/// Test observed counts of `batch` against `exact`. Bins with expected count
/// below [`MIN_EXPECTED_COUNT`] are pooled; if only one bin remains the
/// statistic is zero and `p = 1`.
pub fn chi_square(batch: &SampleBatch, exact: &OccupationDistribution) -> Result<ChiSquareResult> {
    let emp = empirical_distribution(batch)?;
    if emp.modes() != exact.modes() || emp.bosons() != exact.bosons() {
        return Err(Error::BasisMismatch("sample basis differs from the reference".into()));
    }
    let n = batch.len() as f64;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut pool_obs, mut pool_exp) = (0.0, 0.0);
    for ((_, q), (_, p)) in emp.entries().iter().zip(exact.entries()) {
        let (obs, exp) = (q * n, p * n);
        if exp < MIN_EXPECTED_COUNT {
            pool_obs += obs;
            pool_exp += exp;
        } else {
            bins.push((obs, exp));
        }
    }
    if pool_exp > 0.0 || pool_obs > 0.0 {
        bins.push((pool_obs, pool_exp));
    }
    // observations where nothing was expected reject outright
    if bins.iter().any(|&(o, e)| e == 0.0 && o > 0.0) {
        return Ok(ChiSquareResult {
            statistic: f64::INFINITY,
            degrees_of_freedom: bins.len().saturating_sub(1),
            p_value: 0.0,
        });
    }
    let bins: Vec<_> = bins.into_iter().filter(|&(_, e)| e > 0.0).collect();
    let dof = bins.len().saturating_sub(1);
    let statistic: f64 = bins.iter().map(|&(o, e)| (o - e).powi(2) / e).sum();
    if dof == 0 {
        return Ok(ChiSquareResult { statistic: 0.0, degrees_of_freedom: 0, p_value: 1.0 });
    }
    let chi = ChiSquared::new(dof as f64).map_err(|e| Error::Numerical(e.to_string()))?;
    Ok(ChiSquareResult {
        statistic,
        degrees_of_freedom: dof,
        p_value: chi.sf(statistic),
    })
}

/// TVD and chi-square of a batch against an exact table.
pub fn compare(batch: &SampleBatch, exact: &OccupationDistribution) -> Result<(f64, ChiSquareResult)> {
    let emp = empirical_distribution(batch)?;
    Ok((total_variation(&emp, exact)?, chi_square(batch, exact)?))
}
