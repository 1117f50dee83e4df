//! Exact output occupation distributions.
//!
//! All four models share one evaluation loop: enumerate the canonical output
//! basis, evaluate one kernel per output occupation (in parallel), then
//! assemble the table in canonical order. Per output occupation `S'`:
//!
//! * ideal: `|per U_{S',S}|^2 / prod S'_i! S_i!`
//! * distinguishable: `per |U_{S',S}|^2 / prod S'_i!`
//! * partial: the double permutation sum over the distinguishability matrix,
//!   evaluated as `n!` permanents (one per fixed conjugate permutation)
//! * lossy: an average of ideal kernels over the `n`-boson suboccupations
//!   of the source occupation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{basis_size, binomial, consistent_suboccupations, enumerate_occupations, Occupation};
use crate::matrix::{ComplexMatrix, C64, UNITARY_TOLERANCE};
use crate::perm::permutations;
use crate::permanent::{ryser, submatrix_columns, DEFAULT_MAX_PERMANENT_SIZE, HARD_MAX_PERMANENT_SIZE};

/// Sum-to-one tolerance for every distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;
/// Negative values down to this are floating-point noise and clamp to 0.
pub const NEGATIVE_CLAMP: f64 = 1e-12;
/// Largest imaginary part tolerated in a partial-distinguishability
/// probability.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Size caps for the exact engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_permanent_size: usize,
    pub max_basis_size: u128,
    pub max_partial_bosons: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_permanent_size: DEFAULT_MAX_PERMANENT_SIZE,
            max_basis_size: 1_000_000,
            max_partial_bosons: 7,
        }
    }
}

/// Probability table over the canonical `n`-boson, `m`-mode basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OccupationDistribution {
    modes: usize,
    bosons: usize,
    entries: Vec<(Occupation, f64)>,
    clamped: usize,
    max_imag_residue: f64,
}

impl OccupationDistribution {
    /// Build from probabilities listed in canonical order over the full basis.
    pub fn from_probabilities(m: usize, n: usize, probabilities: Vec<f64>) -> Result<Self> {
        let basis = enumerate_occupations(m, n)?;
        if basis.len() != probabilities.len() {
            return Err(Error::BasisMismatch(format!(
                "{} probabilities for a basis of {}",
                probabilities.len(),
                basis.len()
            )));
        }
        Self::assemble(m, n, basis.into_iter().zip(probabilities).collect(), 0.0)
    }

    /// Build from `(occupation, p)` entries; they must cover the canonical
    /// basis exactly, in canonical order.
    pub fn from_entries(m: usize, n: usize, entries: Vec<(Occupation, f64)>) -> Result<Self> {
        let basis = enumerate_occupations(m, n)?;
        if basis.len() != entries.len() || basis.iter().zip(&entries).any(|(b, (o, _))| b != o) {
            return Err(Error::BasisMismatch(
                "entries must list the canonical basis in canonical order".into(),
            ));
        }
        Self::assemble(m, n, entries, 0.0)
    }

    /// Point mass on `at`.
    pub fn point_mass(at: &Occupation) -> Result<Self> {
        let m = at.modes();
        let n = at.bosons();
        let probs = enumerate_occupations(m, n)?
            .iter()
            .map(|o| if o == at { 1.0 } else { 0.0 })
            .collect();
        Self::from_probabilities(m, n, probs)
    }

    fn assemble(m: usize, n: usize, mut entries: Vec<(Occupation, f64)>, max_imag_residue: f64) -> Result<Self> {
        let mut clamped = 0;
        for (occ, p) in entries.iter_mut() {
            if !p.is_finite() {
                return Err(Error::Numerical(format!("non-finite probability for {occ}")));
            }
            if *p < 0.0 {
                if *p < -NEGATIVE_CLAMP {
                    return Err(Error::NegativeProbability {
                        occupation: occ.counts().to_vec(),
                        value: *p,
                    });
                }
                *p = 0.0;
                clamped += 1;
            }
        }
        let total: f64 = entries.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::Unnormalized { total });
        }
        Ok(OccupationDistribution {
            modes: m,
            bosons: n,
            entries,
            clamped,
            max_imag_residue,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn bosons(&self) -> usize {
        self.bosons
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Occupation, f64)] {
        &self.entries
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.entries.iter().map(|(_, p)| *p).collect()
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    /// Canonical index of `occ`, if it belongs to this basis.
    pub fn index_of(&self, occ: &Occupation) -> Option<usize> {
        if occ.modes() != self.modes || occ.bosons() != self.bosons {
            return None;
        }
        // canonical order is descending
        self.entries.binary_search_by(|(o, _)| occ.cmp(o)).ok()
    }

    /// Probability of `occ`; zero outside the basis.
    pub fn probability(&self, occ: &Occupation) -> f64 {
        self.index_of(occ).map_or(0.0, |i| self.entries[i].1)
    }

    /// Number of entries clamped from tiny negative values to zero.
    pub fn clamped_count(&self) -> usize {
        self.clamped
    }

    /// Largest imaginary part discarded while evaluating the table.
    pub fn max_imag_residue(&self) -> f64 {
        self.max_imag_residue
    }

    /// Largest entrywise difference; infinite on basis mismatch.
    pub fn max_abs_diff(&self, other: &OccupationDistribution) -> f64 {
        if self.modes != other.modes || self.bosons != other.bosons {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|((_, a), (_, b))| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Total variation distance `(1/2) sum |D1 - D2|`.
pub fn total_variation(d1: &OccupationDistribution, d2: &OccupationDistribution) -> Result<f64> {
    if d1.modes != d2.modes || d1.bosons != d2.bosons {
        return Err(Error::BasisMismatch(format!(
            "({} modes, {} bosons) vs ({} modes, {} bosons)",
            d1.modes, d1.bosons, d2.modes, d2.bosons
        )));
    }
    Ok(0.5
        * d1.entries
            .iter()
            .zip(&d2.entries)
            .map(|((_, a), (_, b))| (a - b).abs())
            .sum::<f64>())
}

/// Validated distinguishability matrix: Hermitian, unit diagonal, positive
/// semidefinite. Entry `(k, l)` is the overlap `<Phi_k | Phi_l>` of the
/// internal states of particles `k` and `l`, particles ordered by the
/// canonical word of the input occupation.
#[derive(Clone, Debug, PartialEq)]
pub struct DistMatrix(ComplexMatrix);

pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const PSD_TOLERANCE: f64 = 1e-10;

impl DistMatrix {
    pub fn new(s: ComplexMatrix) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::InvalidDistMatrix {
                property: "square",
                detail: format!("{}x{}", s.rows(), s.cols()),
            });
        }
        let n = s.rows();
        let herm = s.max_abs_diff(&s.adjoint());
        if herm > HERMITIAN_TOLERANCE {
            return Err(Error::InvalidDistMatrix {
                property: "Hermitian",
                detail: format!("max |S - S^dag| = {herm:.3e}"),
            });
        }
        if let Some(k) = (0..n).find(|&k| (s.get(k, k) - C64::new(1.0, 0.0)).norm() > HERMITIAN_TOLERANCE) {
            return Err(Error::InvalidDistMatrix {
                property: "unit-diagonal",
                detail: format!("S[{k},{k}] = {}", s.get(k, k)),
            });
        }
        let sym = (s.as_dmatrix() + s.as_dmatrix().adjoint()) * C64::new(0.5, 0.0);
        let min_eig = sym.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOLERANCE {
            return Err(Error::InvalidDistMatrix {
                property: "positive semidefinite",
                detail: format!("min eigenvalue {min_eig:.3e}"),
            });
        }
        Ok(DistMatrix(s))
    }

    /// All-ones: fully indistinguishable bosons.
    pub fn indistinguishable(n: usize) -> Self {
        let ones = nalgebra::DMatrix::from_element(n, n, C64::new(1.0, 0.0));
        DistMatrix(ComplexMatrix::from_dmatrix_unchecked(ones))
    }

    /// Identity: fully distinguishable bosons.
    pub fn distinguishable(n: usize) -> Self {
        DistMatrix(ComplexMatrix::identity(n))
    }

    /// Two-boson matrix `[[1, overlap], [conj(overlap), 1]]`.
    pub fn pair(overlap: C64) -> Result<Self> {
        let one = C64::new(1.0, 0.0);
        Self::new(ComplexMatrix::from_row_major(2, 2, vec![one, overlap, overlap.conj(), one])?)
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, k: usize, l: usize) -> C64 {
        self.0.get(k, l)
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// One internal (Label) state per occupied System mode; all bosons in a
/// System mode share its vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeLabels {
    vectors: Vec<Option<Vec<C64>>>,
}

pub const LABEL_NORM_TOLERANCE: f64 = 1e-12;

impl ModeLabels {
    /// `vectors[i]` is the Label state of System mode `i` (if any).
    pub fn new(vectors: Vec<Option<Vec<C64>>>) -> Result<Self> {
        let mut dim = None;
        for (mode, v) in vectors.iter().enumerate() {
            let Some(v) = v else { continue };
            if v.is_empty() {
                return Err(Error::input(format!("empty Label vector for mode {mode}")));
            }
            if *dim.get_or_insert(v.len()) != v.len() {
                return Err(Error::input("Label vectors must share one dimension"));
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > LABEL_NORM_TOLERANCE {
                return Err(Error::input(format!(
                    "Label vector for mode {mode} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(ModeLabels { vectors })
    }

    pub fn modes(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector(&self, mode: usize) -> Option<&[C64]> {
        self.vectors.get(mode).and_then(|v| v.as_deref())
    }

    /// Label dimension (0 when no vector is given).
    pub fn dimension(&self) -> usize {
        self.vectors.iter().flatten().map(Vec::len).next().unwrap_or(0)
    }
}

/// Either per-mode Label vectors or a distinguishability matrix directly.
#[derive(Clone, Debug, PartialEq)]
pub enum LabelConfiguration {
    Labels(ModeLabels),
    Matrix(DistMatrix),
}

impl LabelConfiguration {
    /// Distinguishability matrix for input occupation `s`.
    pub fn resolve(&self, s: &Occupation) -> Result<DistMatrix> {
        match self {
            LabelConfiguration::Labels(l) => build_dist_matrix(s, l),
            LabelConfiguration::Matrix(d) => {
                if d.size() != s.bosons() {
                    return Err(Error::input(format!(
                        "{}x{} distinguishability matrix for {} bosons",
                        d.size(),
                        d.size(),
                        s.bosons()
                    )));
                }
                Ok(d.clone())
            }
        }
    }
}

/// `S[k, l] = <Phi_{s_k} | Phi_{s_l}>` over the canonical word `s` of the
/// input occupation.
pub fn build_dist_matrix(s: &Occupation, labels: &ModeLabels) -> Result<DistMatrix> {
    if labels.modes() != s.modes() {
        return Err(Error::input(format!(
            "Label vectors for {} modes, occupation has {}",
            labels.modes(),
            s.modes()
        )));
    }
    let word = s.canonical_word();
    let phis = word
        .letters()
        .iter()
        .map(|&mode| {
            labels
                .vector(mode)
                .ok_or_else(|| Error::input(format!("no Label vector for occupied mode {mode}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = phis.len();
    let mut entries = Vec::with_capacity(n * n);
    for a in &phis {
        for b in &phis {
            entries.push(inner(a, b));
        }
    }
    if n == 0 {
        return Ok(DistMatrix(ComplexMatrix::from_dmatrix_unchecked(nalgebra::DMatrix::zeros(0, 0))));
    }
    DistMatrix::new(ComplexMatrix::from_row_major(n, n, entries)?)
}

/// `<a|b>`, antilinear in `a`.
pub(crate) fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn check_inputs(u: &ComplexMatrix, s: &Occupation, limits: &Limits) -> Result<Vec<Occupation>> {
    u.ensure_unitary(UNITARY_TOLERANCE)?;
    if s.modes() != u.rows() {
        return Err(Error::input(format!(
            "{}-mode occupation for a {}-mode interferometer",
            s.modes(),
            u.rows()
        )));
    }
    let n = s.bosons();
    let cap = limits.max_permanent_size.min(HARD_MAX_PERMANENT_SIZE);
    if n > cap {
        return Err(Error::size("boson number", n as u128, cap as u128));
    }
    let size = basis_size(u.rows(), n)?;
    if size > limits.max_basis_size {
        return Err(Error::size("output basis size", size, limits.max_basis_size));
    }
    enumerate_occupations(u.rows(), n)
}

/// Indistinguishable bosons.
pub fn ideal_distribution(u: &ComplexMatrix, s: &Occupation) -> Result<OccupationDistribution> {
    ideal_distribution_with(u, s, &Limits::default())
}

pub fn ideal_distribution_with(u: &ComplexMatrix, s: &Occupation, limits: &Limits) -> Result<OccupationDistribution> {
    let basis = check_inputs(u, s, limits)?;
    let in_word = s.canonical_word();
    let in_fact = s.factorial_product();
    let probs: Vec<f64> = basis
        .par_iter()
        .map(|out| {
            let cols = submatrix_columns(u, out.canonical_word().letters(), in_word.letters());
            ryser(&cols).norm_sqr() / (out.factorial_product() * in_fact)
        })
        .collect();
    OccupationDistribution::assemble(u.rows(), s.bosons(), basis.into_iter().zip(probs).collect(), 0.0)
}

/// Fully distinguishable bosons, `per(|U_{S',S}|^2) / prod S'_i!`.
///
/// Valid for any input occupation, including multiply occupied modes where
/// every boson still carries its own Label.
pub fn distinguishable_distribution(u: &ComplexMatrix, s: &Occupation) -> Result<OccupationDistribution> {
    distinguishable_distribution_with(u, s, &Limits::default())
}

pub fn distinguishable_distribution_with(
    u: &ComplexMatrix,
    s: &Occupation,
    limits: &Limits,
) -> Result<OccupationDistribution> {
    let basis = check_inputs(u, s, limits)?;
    let in_word = s.canonical_word();
    let probs: Vec<f64> = basis
        .par_iter()
        .map(|out| {
            let mut cols = submatrix_columns(u, out.canonical_word().letters(), in_word.letters());
            for z in cols.iter_mut().flatten() {
                *z = C64::new(z.norm_sqr(), 0.0);
            }
            ryser(&cols).re / out.factorial_product()
        })
        .collect();
    OccupationDistribution::assemble(u.rows(), s.bosons(), basis.into_iter().zip(probs).collect(), 0.0)
}

/// Partially distinguishable bosons with distinguishability matrix `dist`.
///
/// ```text
/// Pr[S'] = 1 / (Z prod S'_i!)  sum_{tau, tau'} prod_k
///          U[s'_k, s_tau(k)] conj(U[s'_k, s_tau'(k)]) S[tau'(k), tau(k)]
/// ```
///
/// where `Z = prod_i per(S restricted to the bosons of input mode i)`. When
/// bosons sharing an input mode share a Label (the blocks are all-ones),
/// `Z = prod S_i!`.
pub fn partial_distribution(u: &ComplexMatrix, s: &Occupation, dist: &DistMatrix) -> Result<OccupationDistribution> {
    partial_distribution_with(u, s, dist, &Limits::default())
}

pub fn partial_distribution_with(
    u: &ComplexMatrix,
    s: &Occupation,
    dist: &DistMatrix,
    limits: &Limits,
) -> Result<OccupationDistribution> {
    let n = s.bosons();
    if n > limits.max_partial_bosons {
        return Err(Error::size(
            "boson number for partial distinguishability",
            n as u128,
            limits.max_partial_bosons as u128,
        ));
    }
    if dist.size() != n {
        return Err(Error::input(format!(
            "{}x{} distinguishability matrix for {n} bosons",
            dist.size(),
            dist.size()
        )));
    }
    let basis = check_inputs(u, s, limits)?;
    let in_word = s.canonical_word();
    let z = input_normalization(s, dist);
    let perms = permutations(n);
    let values: Vec<C64> = basis
        .par_iter()
        .map(|out| {
            let out_word = out.canonical_word();
            let total = partial_kernel(u, out_word.letters(), in_word.letters(), dist, &perms);
            total / (z * out.factorial_product())
        })
        .collect();
    let mut max_residue: f64 = 0.0;
    for (occ, v) in basis.iter().zip(&values) {
        let residue = v.im.abs();
        if residue > IMAGINARY_TOLERANCE {
            return Err(Error::ImaginaryResidue {
                occupation: occ.counts().to_vec(),
                residue,
            });
        }
        max_residue = max_residue.max(residue);
    }
    OccupationDistribution::assemble(
        u.rows(),
        n,
        basis.into_iter().zip(values.into_iter().map(|v| v.re)).collect(),
        max_residue,
    )
}

// sum over tau' of per(M) with M[k][l] = U[s'_k, s_l] conj(U[s'_k, s_tau'(k)]) S[tau'(k), l]
fn partial_kernel(u: &ComplexMatrix, out_word: &[usize], in_word: &[usize], dist: &DistMatrix, perms: &[Vec<usize>]) -> C64 {
    let n = in_word.len();
    let mut total = C64::new(0.0, 0.0);
    let mut cols = vec![vec![C64::new(0.0, 0.0); n]; n];
    for tau_c in perms {
        for (l, col) in cols.iter_mut().enumerate() {
            for (k, entry) in col.iter_mut().enumerate() {
                let j = tau_c[k];
                *entry = u.get(out_word[k], in_word[l]) * u.get(out_word[k], in_word[j]).conj() * dist.get(j, l);
            }
        }
        total += ryser(&cols);
    }
    total
}

// prod over input modes of the permanent of the matching diagonal block
fn input_normalization(s: &Occupation, dist: &DistMatrix) -> f64 {
    let mut start = 0;
    let mut z = 1.0;
    for &c in s.counts() {
        if c > 1 {
            let cols: Vec<Vec<C64>> = (start..start + c)
                .map(|l| (start..start + c).map(|k| dist.get(k, l)).collect())
                .collect();
            z *= ryser(&cols).re;
        }
        start += c;
    }
    z
}

/// `k` of the bosons in `s0` lost before the interferometer, averaged over
/// every consistent `n`-boson suboccupation.
pub fn lossy_distribution(u: &ComplexMatrix, s0: &Occupation, lost: usize) -> Result<OccupationDistribution> {
    lossy_distribution_with(u, s0, lost, &Limits::default())
}

pub fn lossy_distribution_with(
    u: &ComplexMatrix,
    s0: &Occupation,
    lost: usize,
    limits: &Limits,
) -> Result<OccupationDistribution> {
    let total = s0.bosons();
    if lost > total {
        return Err(Error::input(format!("cannot lose {lost} of {total} bosons")));
    }
    let n = total - lost;
    let kept = consistent_suboccupations(s0, n)?;
    // any kept occupation fixes m and n for validation
    let basis = check_inputs(u, &kept[0], limits)?;
    let norm = binomial(total as u128, lost as u128).expect("small binomial") as f64;
    let inputs: Vec<(Vec<usize>, f64)> = kept
        .iter()
        .map(|s| {
            let weight: f64 = s0
                .counts()
                .iter()
                .zip(s.counts())
                .map(|(&a, &b)| binomial(a as u128, b as u128).expect("small binomial") as f64)
                .product();
            (s.canonical_word().letters().to_vec(), weight / s.factorial_product())
        })
        .collect();
    let probs: Vec<f64> = basis
        .par_iter()
        .map(|out| {
            let out_word = out.canonical_word();
            let acc: f64 = inputs
                .iter()
                .map(|(in_word, w)| ryser(&submatrix_columns(u, out_word.letters(), in_word)).norm_sqr() * w)
                .sum();
            acc / (norm * out.factorial_product())
        })
        .collect();
    OccupationDistribution::assemble(u.rows(), n, basis.into_iter().zip(probs).collect(), 0.0)
}

/// Output model selector used by front ends.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Ideal,
    Distinguishable,
    Partial(LabelConfiguration),
    Lossy { lost: usize },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Ideal => "ideal",
            Model::Distinguishable => "distinguishable",
            Model::Partial(_) => "partial",
            Model::Lossy { .. } => "lossy",
        }
    }
}

/// Evaluate `model` for interferometer `u` and input `s`.
pub fn compute(model: &Model, u: &ComplexMatrix, s: &Occupation, limits: &Limits) -> Result<OccupationDistribution> {
    match model {
        Model::Ideal => ideal_distribution_with(u, s, limits),
        Model::Distinguishable => distinguishable_distribution_with(u, s, limits),
        Model::Partial(cfg) => partial_distribution_with(u, s, &cfg.resolve(s)?, limits),
        Model::Lossy { lost } => lossy_distribution_with(u, s, *lost, limits),
    }
}

/// One row of a distribution file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub occupation: Occupation,
    pub p: f64,
}

/// On-disk distribution `{ "m", "n", "entries": [{"occupation": [..], "p": x}] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<DistributionEntry>,
}

impl From<&OccupationDistribution> for DistributionFile {
    fn from(d: &OccupationDistribution) -> Self {
        DistributionFile {
            m: d.modes,
            n: d.bosons,
            entries: d
                .entries
                .iter()
                .map(|(o, p)| DistributionEntry { occupation: o.clone(), p: *p })
                .collect(),
        }
    }
}

impl TryFrom<DistributionFile> for OccupationDistribution {
    type Error = Error;

    fn try_from(f: DistributionFile) -> Result<Self> {
        OccupationDistribution::from_entries(f.m, f.n, f.entries.into_iter().map(|e| (e.occupation, e.p)).collect())
    }
}

impl DistributionFile {
    /// CSV mirror: header `occupation,p`, occupations as `a;b;c`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("occupation,p\n");
        for e in &self.entries {
            let occ: Vec<String> = e.occupation.counts().iter().map(usize::to_string).collect();
            out.push_str(&format!("{},{}\n", occ.join(";"), e.p));
        }
        out
    }
}

/// On-disk Label vectors `{ "labels": [{"mode": 0, "re": [..], "im": [..]}] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelsFile {
    pub labels: Vec<LabelEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub mode: usize,
    pub re: Vec<f64>,
    #[serde(default)]
    pub im: Vec<f64>,
}

impl LabelsFile {
    pub fn to_labels(&self, modes: usize) -> Result<ModeLabels> {
        let mut vectors = vec![None; modes];
        for e in &self.labels {
            if e.mode >= modes {
                return Err(Error::input(format!("Label entry for mode {} of {modes}", e.mode)));
            }
            if !e.im.is_empty() && e.im.len() != e.re.len() {
                return Err(Error::input("Label re/im lengths differ"));
            }
            let v = (0..e.re.len())
                .map(|i| C64::new(e.re[i], e.im.get(i).copied().unwrap_or(0.0)))
                .collect();
            if vectors[e.mode].replace(v).is_some() {
                return Err(Error::input(format!("duplicate Label entry for mode {}", e.mode)));
            }
        }
        ModeLabels::new(vectors)
    }
}

/// On-disk distinguishability matrix `{ "n": int, "re": [[..]], "im": [[..]] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistMatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DistMatrixFile {
    pub fn to_dist_matrix(&self) -> Result<DistMatrix> {
        let s = ComplexMatrix::from_parts(&self.re, &self.im)?;
        if s.rows() != self.n {
            return Err(Error::Shape(format!("declared n = {} but arrays have {} rows", self.n, s.rows())));
        }
        DistMatrix::new(s)
    }
}
