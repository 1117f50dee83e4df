//! Self-check suites: representation-theory identities, the dense-state
//! oracle, the limiting cases of the partial model, and sampling statistics.
//!
//! [`run_suite`] returns one [`Check`] per named check, so a front end can
//! print a table and decide an exit status.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::{hermitian_part_eigenvalues, labelled_input, symmetrize_word, trace_norm, werner_mixture};
use crate::distributions::{
    distinguishable_distribution, ideal_distribution, lossy_distribution, partial_distribution, DistMatrix,
    LabelConfiguration, Limits, Model, ModeLabels, OccupationDistribution,
};
use crate::error::{Error, Result};
use crate::fock::{enumerate_occupations, ModeWord, Occupation};
use crate::interferometer::{haar_random_unitary, haar_random_unitary_with};
use crate::matrix::{ComplexMatrix, C64};
use crate::rng::{RandomSeed, SimRng};
use crate::sampler::{compare, sample_distinguishable_direct, sample_exact, empirical_distribution};
use crate::schur::{
    coincident_dimension_check, schur_weyl_check, symmetric_irrep_matrix, unitary_unitary_check,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    RepTheory,
    Oracle,
    Limits,
    Sampling,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::RepTheory, Suite::Oracle, Suite::Limits, Suite::Sampling];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RepTheory => "rep-theory",
            Suite::Oracle => "oracle",
            Suite::Limits => "limits",
            Suite::Sampling => "sampling",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::input(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }

    // A bound on a measured error.
    fn within(name: impl Into<String>, error: f64, tol: f64) -> Self {
        Check::new(name, error <= tol, format!("max error {error:.3e} (tolerance {tol:.0e})"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run_suite(suite: Suite, seed: RandomSeed) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::RepTheory => rep_theory()?,
        Suite::Oracle => oracle(seed)?,
        Suite::Limits => limits(seed)?,
        Suite::Sampling => sampling(seed)?,
    };
    Ok(SuiteReport { suite, checks })
}

/// Measurement statistics of `sym(S)` after `U^{(x)n}`.
pub fn ideal_oracle(u: &ComplexMatrix, s: &Occupation) -> Result<OccupationDistribution> {
    symmetrize_word(&s.canonical_word())?.apply_transversal(u)?.measurement_distribution()
}

/// Labelled bosons, `U^{(x)n} (x) 1` on the pair qudits, Label traced out,
/// then measured.
pub fn partial_oracle(u: &ComplexMatrix, s: &Occupation, labels: &ModeLabels) -> Result<OccupationDistribution> {
    labelled_input(s, labels)?
        .apply_transversal(u)?
        .trace_out_label()?
        .measurement_distribution()
}

/// `sym(S0)` with its last `k` qudits traced out, then `U^{(x)n}`, then
/// measured.
pub fn lossy_oracle(u: &ComplexMatrix, s0: &Occupation, k: usize) -> Result<OccupationDistribution> {
    symmetrize_word(&s0.canonical_word())?
        .to_density()?
        .trace_out_last_qudits(k)?
        .apply_transversal(u)?
        .measurement_distribution()
}

/// One Label vector in `C^d` per mode, Gaussian then normalized.
pub fn random_labels(m: usize, d: usize, rng: &mut SimRng) -> Result<ModeLabels> {
    let vectors = (0..m)
        .map(|_| {
            let v: Vec<C64> = (0..d)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            Some(v.into_iter().map(|z| z / norm).collect())
        })
        .collect();
    ModeLabels::new(vectors)
}

/// Random occupation of `n` bosons over `m` modes; collision-free when
/// `distinct` (needs `n <= m`).
pub fn random_occupation(m: usize, n: usize, distinct: bool, rng: &mut SimRng) -> Result<Occupation> {
    let mut counts = vec![0; m];
    if distinct {
        if n > m {
            return Err(Error::input(format!("{n} distinct modes out of {m}")));
        }
        let modes = rand::seq::index::sample(rng, m, n);
        modes.into_iter().for_each(|i| counts[i] = 1);
    } else {
        (0..n).for_each(|_| counts[rng.random_range(0..m)] += 1);
    }
    Occupation::new(counts)
}

fn rep_theory() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut fails = Vec::new();
    for m in 1..=5 {
        for n in 0..=6 {
            let r = schur_weyl_check(m, n)?;
            if !r.passed() {
                fails.push(r.to_string());
            }
        }
    }
    checks.push(Check::new("schur-weyl m<=5 n<=6", fails.is_empty(), detail(&fails, "35 identities")));

    let mut fails = Vec::new();
    for m in 1..=4 {
        for d in 1..=4 {
            for n in 0..=4 {
                let r = unitary_unitary_check(m, d, n)?;
                if !r.passed() {
                    fails.push(r.to_string());
                }
            }
        }
    }
    checks.push(Check::new("unitary-unitary m,d<=4 n<=4", fails.is_empty(), detail(&fails, "80 identities")));

    let mut fails = Vec::new();
    for n in 0..=7 {
        let r = coincident_dimension_check(n)?;
        if !r.passed() {
            fails.push(r.to_string());
        }
    }
    checks.push(Check::new("coincident n<=7", fails.is_empty(), detail(&fails, "8 identities")));

    let (mut unit, mut hom, mut born) = (0.0f64, 0.0f64, 0.0f64);
    for m in 1..=3 {
        for n in 1..=3 {
            let seed = (100 * m + n) as u64;
            let u = haar_random_unitary(m, RandomSeed(seed))?;
            let v = haar_random_unitary(m, RandomSeed(seed + 50))?;
            let mu = symmetric_irrep_matrix(&u, n)?;
            let mv = symmetric_irrep_matrix(&v, n)?;
            let muv = symmetric_irrep_matrix(&u.mul(&v)?, n)?;
            unit = unit.max(mu.unitarity_residual());
            hom = hom.max(muv.max_abs_diff(&mu.mul(&mv)?));
            for (c, s) in enumerate_occupations(m, n)?.iter().enumerate() {
                let d = ideal_distribution(&u, s)?;
                for (r, (_, p)) in d.entries().iter().enumerate() {
                    born = born.max((mu.get(r, c).norm_sqr() - p).abs());
                }
            }
        }
    }
    checks.push(Check::within("symmetric irrep unitary m,n<=3", unit, 1e-9));
    checks.push(Check::within("symmetric irrep homomorphism m,n<=3", hom, 1e-9));
    checks.push(Check::within("symmetric irrep |entries|^2 = ideal", born, 1e-10));
    Ok(checks)
}

fn detail(fails: &[String], ok: &str) -> String {
    if fails.is_empty() {
        format!("{ok} hold")
    } else {
        fails.join("; ")
    }
}

fn oracle(seed: RandomSeed) -> Result<Vec<Check>> {
    let mut rng = seed.stream(1);
    let (mut ideal, mut partial, mut lossy) = (0.0f64, 0.0f64, 0.0f64);
    let mut count = 0;
    for m in 1..=3 {
        for total in 1..=3 {
            for s0 in enumerate_occupations(m, total)? {
                let u = haar_random_unitary_with(m, &mut rng)?;
                ideal = ideal.max(ideal_oracle(&u, &s0)?.max_abs_diff(&ideal_distribution(&u, &s0)?));
                let labels = random_labels(m, total, &mut rng)?;
                let dist = crate::distributions::build_dist_matrix(&s0, &labels)?;
                partial = partial
                    .max(partial_oracle(&u, &s0, &labels)?.max_abs_diff(&partial_distribution(&u, &s0, &dist)?));
                for k in 1..total {
                    lossy = lossy.max(lossy_oracle(&u, &s0, k)?.max_abs_diff(&lossy_distribution(&u, &s0, k)?));
                }
                count += 1;
            }
        }
    }
    let mut checks = vec![
        Check::within(format!("ideal vs oracle ({count} inputs)"), ideal, 1e-9),
        Check::within(format!("partial vs oracle ({count} inputs)"), partial, 1e-9),
        Check::within("lossy vs trace-out oracle", lossy, 1e-9),
    ];

    let mut post = 0.0f64;
    for n in 1..=3 {
        for m in n..=3 {
            let letters: Vec<usize> = (0..n).collect();
            let word = ModeWord::new(letters, m)?;
            let s = crate::fock::type_of_word(&word);
            let u = haar_random_unitary_with(m, &mut rng)?;
            let (_, rho) = werner_mixture(&word, 0.0)?.postselect_symmetric()?;
            let d = rho.apply_transversal(&u)?.measurement_distribution()?;
            post = post.max(d.max_abs_diff(&ideal_distribution(&u, &s)?));
        }
    }
    checks.push(Check::within("postselected distinguishable = ideal", post, 1e-9));

    let mut tn = 0.0f64;
    let mut witness = true;
    for n in 2..=3 {
        for eps in [0.0, 0.1, 0.5, 1.0] {
            let word = ModeWord::new((0..n).collect(), n)?;
            let pt = werner_mixture(&word, eps)?.partial_transpose_first();
            tn = tn.max((trace_norm(&pt)? - (1.0 + eps * (n as f64 - 1.0))).abs());
            let min = hermitian_part_eigenvalues(&pt)[0];
            witness &= (min < -1e-12) == (eps > 0.0);
        }
    }
    checks.push(Check::within("trace norm of partial transpose = 1+eps(n-1)", tn, 1e-8));
    checks.push(Check::new(
        "partial transpose has a negative eigenvalue for eps>0",
        witness,
        "n in {2,3}; none at eps=0, one for each eps in {0.1,0.5,1}",
    ));
    Ok(checks)
}

fn limits(seed: RandomSeed) -> Result<Vec<Check>> {
    let mut rng = seed.stream(2);
    let (mut ones, mut id) = (0.0f64, 0.0f64);
    for i in 0..50 {
        let m = 1 + i % 4;
        let n = 1 + (i / 4) % m;
        let u = haar_random_unitary_with(m, &mut rng)?;
        let s = random_occupation(m, n, true, &mut rng)?;
        let p1 = partial_distribution(&u, &s, &DistMatrix::indistinguishable(n))?;
        let p0 = partial_distribution(&u, &s, &DistMatrix::distinguishable(n))?;
        ones = ones.max(p1.max_abs_diff(&ideal_distribution(&u, &s)?));
        id = id.max(p0.max_abs_diff(&distinguishable_distribution(&u, &s)?));
    }
    let mut checks = vec![
        Check::within("all-ones overlaps = ideal (50 instances)", ones, 1e-10),
        Check::within("identity overlaps = distinguishable (50 instances)", id, 1e-10),
    ];

    let lossy = lossy_distribution(&ComplexMatrix::identity(2), &Occupation::new(vec![1, 1])?, 1)?;
    let err = lossy.probabilities().iter().map(|p| (p - 0.5).abs()).fold(0.0, f64::max);
    checks.push(Check::within("lossy U=I, (1,1), k=1 is uniform", err, 1e-12));

    let mut worst = 0.0f64;
    let limits = Limits::default();
    for i in 0..200 {
        let m = 1 + i % 5;
        let u = haar_random_unitary_with(m, &mut rng)?;
        let model = i % 4;
        let total = match model {
            3 => 2 + i / 4 % 4,
            _ => 1 + i / 4 % 4,
        };
        let s = random_occupation(m, total, false, &mut rng)?;
        let d = match model {
            0 => crate::distributions::compute(&Model::Ideal, &u, &s, &limits)?,
            1 => crate::distributions::compute(&Model::Distinguishable, &u, &s, &limits)?,
            2 => {
                let labels = random_labels(m, total, &mut rng)?;
                let cfg = LabelConfiguration::Labels(labels);
                crate::distributions::compute(&Model::Partial(cfg), &u, &s, &limits)?
            }
            _ => crate::distributions::compute(&Model::Lossy { lost: 1 + i % (total - 1) }, &u, &s, &limits)?,
        };
        worst = worst.max((d.total() - 1.0).abs());
    }
    checks.push(Check::within("normalization (200 instances, all models)", worst, 1e-9));
    Ok(checks)
}

fn sampling(seed: RandomSeed) -> Result<Vec<Check>> {
    const SHOTS: usize = 100_000;
    let mut rng = seed.stream(3);
    let u = haar_random_unitary_with(4, &mut rng)?;
    let s = Occupation::new(vec![1, 1, 1, 0])?;
    let labels = random_labels(4, 3, &mut rng)?;
    let limits = Limits::default();
    let models = [
        Model::Ideal,
        Model::Distinguishable,
        Model::Partial(LabelConfiguration::Labels(labels)),
        Model::Lossy { lost: 1 },
    ];
    let mut checks = Vec::new();
    for (i, model) in models.iter().enumerate() {
        let exact = crate::distributions::compute(model, &u, &s, &limits)?;
        let batch = sample_exact(&exact, SHOTS, RandomSeed(seed.0.wrapping_add(i as u64 + 1)))?;
        let (tvd, chi) = compare(&batch, &exact)?;
        checks.push(Check::new(
            format!("{} sampling", model.name()),
            tvd <= 0.02 && chi.p_value > 1e-3,
            format!("TVD {tvd:.4}, chi-square p {:.3}", chi.p_value),
        ));
    }
    let exact = distinguishable_distribution(&u, &s)?;
    let direct = sample_distinguishable_direct(&u, &s, SHOTS, RandomSeed(seed.0.wrapping_add(10)))?;
    let via = sample_exact(&exact, SHOTS, RandomSeed(seed.0.wrapping_add(11)))?;
    let (tvd_exact, chi) = compare(&direct, &exact)?;
    let tvd = crate::distributions::total_variation(&empirical_distribution(&direct)?, &empirical_distribution(&via)?)?;
    checks.push(Check::new(
        "direct routing = exact distinguishable sampling",
        tvd <= 0.02 && tvd_exact <= 0.02 && chi.p_value > 1e-3,
        format!("TVD between routes {tvd:.4}, to exact {tvd_exact:.4}, chi-square p {:.3}", chi.p_value),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn rep_theory_passes() {
        let r = run_suite(Suite::RepTheory, RandomSeed(0)).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }

    #[test]
    fn limits_pass() {
        let r = run_suite(Suite::Limits, RandomSeed(0)).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
    }
}
