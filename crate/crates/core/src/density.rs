//! Brute-force first-quantized states.
//!
//! Dense vectors and density matrices on `(C^m)^{(x)n}` or, with a Label
//! register, on `(C^m (x) C^d)^{(x)n}`. Each tensor factor ("qudit") is
//! either a System mode or a (System, Label) pair with flat local index
//! `system * d + label`, the same map as [`crate::fock::pair_index`].
//! Qudit 0 is the most significant digit of the global index.
//!
//! Everything here is exponential in `n` and exists to check the
//! permanent-based engines against an independent computation.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::distributions::{ModeLabels, OccupationDistribution};
use crate::error::{Error, Result};
use crate::fock::{enumerate_occupations, ModeWord, Occupation, SystemLabelOccupation};
use crate::matrix::{max_abs_diff, ComplexMatrix, C64, UNITARY_TOLERANCE};
use crate::perm::next_permutation;

/// Largest state vector, in amplitudes.
pub const MAX_AMPLITUDES: usize = 1 << 20;
/// Largest density-matrix side (so at most `2^24` entries).
pub const MAX_DENSITY_DIM: usize = 1 << 12;

pub const STATE_NORM_TOLERANCE: f64 = 1e-12;
pub const DENSITY_HERMITIAN_TOLERANCE: f64 = 1e-12;
pub const DENSITY_TRACE_TOLERANCE: f64 = 1e-10;
pub const DENSITY_EIGEN_TOLERANCE: f64 = 1e-10;
/// Eigenvalues of `A^dagger A` in `[-CLAMP, 0)` count as zero.
pub const TRACE_NORM_CLAMP: f64 = 1e-12;
pub const MIN_POSTSELECTION_PROBABILITY: f64 = 1e-12;

/// Shape of the tensor space: `qudits` factors of dimension
/// `system_dim * label_dim` (`label_dim = 1` means no Label register).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuditLayout {
    pub system_dim: usize,
    pub label_dim: usize,
    pub qudits: usize,
}

impl QuditLayout {
    pub fn system(m: usize, n: usize) -> Self {
        QuditLayout { system_dim: m, label_dim: 1, qudits: n }
    }

    pub fn pairs(m: usize, d: usize, n: usize) -> Self {
        QuditLayout { system_dim: m, label_dim: d, qudits: n }
    }

    pub fn local_dim(&self) -> usize {
        self.system_dim * self.label_dim
    }

    pub fn has_labels(&self) -> bool {
        self.label_dim > 1
    }

    /// `local_dim^qudits`, rejected beyond [`MAX_AMPLITUDES`].
    pub fn dim(&self) -> Result<usize> {
        if self.system_dim == 0 || self.label_dim == 0 {
            return Err(Error::input("local dimensions must be positive"));
        }
        let local = self.local_dim() as u128;
        let mut d: u128 = 1;
        for _ in 0..self.qudits {
            d = d.saturating_mul(local);
            if d > MAX_AMPLITUDES as u128 {
                return Err(Error::size("state dimension", d, MAX_AMPLITUDES as u128));
            }
        }
        Ok(d as usize)
    }

    fn density_dim(&self) -> Result<usize> {
        let d = self.dim()?;
        if d > MAX_DENSITY_DIM {
            return Err(Error::size("density matrix dimension", d as u128, MAX_DENSITY_DIM as u128));
        }
        Ok(d)
    }

    fn without_labels(&self) -> Self {
        QuditLayout::system(self.system_dim, self.qudits)
    }

    fn with_qudits(&self, qudits: usize) -> Self {
        QuditLayout { qudits, ..*self }
    }

    fn digits(&self, mut index: usize, out: &mut [usize]) {
        let local = self.local_dim();
        for slot in out.iter_mut().rev() {
            *slot = index % local;
            index /= local;
        }
    }

    fn index(&self, digits: &[usize]) -> usize {
        let local = self.local_dim();
        digits.iter().fold(0, |acc, &d| acc * local + d)
    }

    // Split a global index into (System index, Label index).
    fn split(&self, index: usize, buf: &mut [usize]) -> (usize, usize) {
        self.digits(index, buf);
        let (m, d) = (self.system_dim, self.label_dim);
        buf.iter().fold((0, 0), |(s, l), &p| (s * m + p / d, l * d + p % d))
    }
}

/// Unit vector on a [`QuditLayout`].
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    layout: QuditLayout,
    amplitudes: Vec<C64>,
}

impl DenseState {
    pub fn new(layout: QuditLayout, amplitudes: Vec<C64>) -> Result<Self> {
        let dim = layout.dim()?;
        if amplitudes.len() != dim {
            return Err(Error::Shape(format!("{} amplitudes for dimension {dim}", amplitudes.len())));
        }
        let state = DenseState { layout, amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > STATE_NORM_TOLERANCE {
            return Err(Error::input(format!("state has norm {norm}, expected 1")));
        }
        Ok(state)
    }

    pub fn layout(&self) -> QuditLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> C64 {
        self.amplitudes[self.layout.index(digits)]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        let d = self.layout.density_dim()?;
        let v = DVector::from_column_slice(&self.amplitudes);
        Ok(DensityMatrix {
            layout: self.layout,
            entries: DMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj()),
        })
    }

    /// `U^{(x)n}` on the System factor of every qudit.
    pub fn apply_transversal(&self, u: &ComplexMatrix) -> Result<DenseState> {
        let op = local_operator(&self.layout, u)?;
        let mut amps = self.amplitudes.clone();
        apply_local_all(&mut amps, &self.layout, &op);
        Ok(DenseState { layout: self.layout, amplitudes: amps })
    }

    /// Amplitudes as a (System index) x (Label index) matrix.
    fn system_label_matrix(&self) -> DMatrix<C64> {
        let l = self.layout;
        let rows = l.system_dim.pow(l.qudits as u32);
        let cols = l.label_dim.pow(l.qudits as u32);
        let mut out = DMatrix::zeros(rows, cols);
        let mut buf = vec![0; l.qudits];
        for (idx, &a) in self.amplitudes.iter().enumerate() {
            let (s, lab) = l.split(idx, &mut buf);
            out[(s, lab)] = a;
        }
        out
    }

    /// Reduced System state after tracing out every Label factor.
    pub fn trace_out_label(&self) -> Result<DensityMatrix> {
        let layout = self.layout.without_labels();
        layout.density_dim()?;
        let psi = self.system_label_matrix();
        Ok(DensityMatrix { layout, entries: &psi * psi.adjoint() })
    }

    /// Schmidt coefficients across the System | Label cut, descending.
    pub fn schmidt_coefficients(&self) -> Vec<f64> {
        let psi = self.system_label_matrix();
        let mut sv: Vec<f64> = psi.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Number of Schmidt coefficients above `tol`.
    pub fn schmidt_rank(&self, tol: f64) -> usize {
        self.schmidt_coefficients().iter().filter(|&&s| s > tol).count()
    }

    /// Computational-basis statistics of the System occupations.
    pub fn measurement_distribution(&self) -> Result<OccupationDistribution> {
        measure(&self.layout, self.amplitudes.iter().map(|a| a.norm_sqr()))
    }
}

/// Density matrix on a [`QuditLayout`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    layout: QuditLayout,
    entries: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validated: Hermitian, unit trace, positive semidefinite.
    pub fn new(layout: QuditLayout, entries: ComplexMatrix) -> Result<Self> {
        let d = layout.density_dim()?;
        if entries.rows() != d || entries.cols() != d {
            return Err(Error::Shape(format!(
                "{}x{} matrix for dimension {d}",
                entries.rows(),
                entries.cols()
            )));
        }
        let rho = DensityMatrix { layout, entries: entries.into_dmatrix() };
        rho.validate()?;
        Ok(rho)
    }

    pub fn validate(&self) -> Result<()> {
        let herm = max_abs_diff(&self.entries, &self.entries.adjoint());
        if herm > DENSITY_HERMITIAN_TOLERANCE {
            return Err(Error::input(format!("density matrix is not Hermitian (residual {herm:e})")));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > DENSITY_TRACE_TOLERANCE {
            return Err(Error::input(format!("density matrix has trace {}", tr.re)));
        }
        let min = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -DENSITY_EIGEN_TOLERANCE {
            return Err(Error::input(format!("density matrix has eigenvalue {min:e}")));
        }
        Ok(())
    }

    pub fn layout(&self) -> QuditLayout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_dmatrix_unchecked(self.entries.clone())
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        if self.layout != other.layout {
            return f64::INFINITY;
        }
        max_abs_diff(&self.entries, &other.entries)
    }

    /// `V rho V^dagger` with `V = U^{(x)n}` on the System factors.
    pub fn apply_transversal(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        let op = local_operator(&self.layout, u)?;
        let apply = |m: &mut DMatrix<C64>| {
            let rows = m.nrows();
            for col in m.as_mut_slice().chunks_mut(rows) {
                apply_local_all(col, &self.layout, &op);
            }
        };
        let mut x = self.entries.clone();
        apply(&mut x);
        let mut y = x.adjoint();
        apply(&mut y);
        Ok(DensityMatrix { layout: self.layout, entries: y.adjoint() })
    }

    /// Partial trace over every Label factor.
    pub fn trace_out_label(&self) -> Result<DensityMatrix> {
        let l = self.layout;
        let layout = l.without_labels();
        let sys = layout.density_dim()?;
        let labs = l.label_dim.pow(l.qudits as u32);
        // global index of (system, label)
        let mut full = vec![0usize; sys * labs];
        let mut buf = vec![0; l.qudits];
        for idx in 0..self.dim() {
            let (s, lab) = l.split(idx, &mut buf);
            full[s * labs + lab] = idx;
        }
        let entries = DMatrix::from_fn(sys, sys, |a, b| {
            (0..labs).map(|c| self.entries[(full[a * labs + c], full[b * labs + c])]).sum()
        });
        Ok(DensityMatrix { layout, entries })
    }

    /// Partial trace over the last `k` qudits.
    pub fn trace_out_last_qudits(&self, k: usize) -> Result<DensityMatrix> {
        let layout = self.reduced_layout(k)?;
        let keep = layout.dim()?;
        let r = self.dim() / keep;
        let entries = DMatrix::from_fn(keep, keep, |a, b| {
            (0..r).map(|c| self.entries[(a * r + c, b * r + c)]).sum()
        });
        Ok(DensityMatrix { layout, entries })
    }

    /// Partial trace over the first `k` qudits.
    pub fn trace_out_first_qudits(&self, k: usize) -> Result<DensityMatrix> {
        let layout = self.reduced_layout(k)?;
        let keep = layout.dim()?;
        let r = self.dim() / keep;
        let entries = DMatrix::from_fn(keep, keep, |a, b| {
            (0..r).map(|c| self.entries[(c * keep + a, c * keep + b)]).sum()
        });
        Ok(DensityMatrix { layout, entries })
    }

    fn reduced_layout(&self, k: usize) -> Result<QuditLayout> {
        if k > self.layout.qudits {
            return Err(Error::input(format!(
                "cannot trace out {k} of {} qudits",
                self.layout.qudits
            )));
        }
        Ok(self.layout.with_qudits(self.layout.qudits - k))
    }

    /// Computational-basis statistics of the System occupations.
    pub fn measurement_distribution(&self) -> Result<OccupationDistribution> {
        measure(&self.layout, self.entries.diagonal().iter().map(|z| z.re))
    }

    /// Project onto the symmetric subspace: returns `Tr[P rho P]` and the
    /// renormalized `P rho P`.
    pub fn postselect_symmetric(&self) -> Result<(f64, DensityMatrix)> {
        let orbits = Orbits::new(&self.layout);
        let apply = |m: &mut DMatrix<C64>| {
            let rows = m.nrows();
            for col in m.as_mut_slice().chunks_mut(rows) {
                orbits.project(col);
            }
        };
        let mut x = self.entries.clone();
        apply(&mut x);
        let mut y = x.adjoint();
        apply(&mut y);
        let projected = y.adjoint();
        let probability = projected.trace().re;
        if probability < MIN_POSTSELECTION_PROBABILITY {
            return Err(Error::DegeneratePostselection { probability });
        }
        Ok((
            probability,
            DensityMatrix { layout: self.layout, entries: projected / C64::new(probability, 0.0) },
        ))
    }

    /// Transpose on the first qudit's indices.
    pub fn partial_transpose_first(&self) -> ComplexMatrix {
        let d = self.dim();
        let r = d / self.layout.local_dim();
        let entries = DMatrix::from_fn(d, d, |i, j| {
            let (i1, ri) = (i / r, i % r);
            let (j1, rj) = (j / r, j % r);
            self.entries[(j1 * r + ri, i1 * r + rj)]
        });
        ComplexMatrix::from_dmatrix_unchecked(entries)
    }
}

/// Eigenvalues of the Hermitian part `(A + A^dagger)/2`, ascending.
pub fn hermitian_part_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    hermitian_eigenvalues(a.as_dmatrix())
}

// The Hermitian part is split into the blocks of its sparsity graph and each
// block is diagonalized on its own. Large, mostly-zero matrices (partial
// transposes of symmetric states) otherwise make the dense QR iteration
// return NaN.
fn hermitian_eigenvalues(a: &DMatrix<C64>) -> Vec<f64> {
    let h = (a + a.adjoint()).map(|z| z * 0.5);
    let n = h.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for j in 0..n {
        for i in 0..j {
            if h[(i, j)] != C64::new(0.0, 0.0) {
                let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut blocks: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }
    let mut ev = Vec::with_capacity(n);
    for idx in blocks.values() {
        let k = idx.len();
        if k == 1 {
            ev.push(h[(idx[0], idx[0])].re);
            continue;
        }
        let b = DMatrix::from_fn(k, k, |r, c| h[(idx[r], idx[c])]);
        ev.extend(b.symmetric_eigenvalues().iter().copied());
    }
    ev.sort_by(f64::total_cmp);
    ev
}

/// Sum of singular values.
///
/// Hermitian input uses `sum |lambda_i|` over its eigenvalues; other input
/// uses the square roots of the eigenvalues of `A^dagger A`, clamping values
/// in `[-1e-12, 0)` to zero.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::Shape(format!("trace norm of a {}x{} matrix", a.rows(), a.cols())));
    }
    let m = a.as_dmatrix();
    if max_abs_diff(m, &m.adjoint()) <= DENSITY_HERMITIAN_TOLERANCE {
        let ev = hermitian_eigenvalues(m);
        if ev.iter().any(|l| !l.is_finite()) {
            return Err(Error::Numerical("eigensolver returned a non-finite value".into()));
        }
        return Ok(ev.iter().map(|l| l.abs()).sum());
    }
    let gram = m.adjoint() * m;
    hermitian_eigenvalues(&gram)
        .into_iter()
        .map(|l| {
            if !l.is_finite() {
                Err(Error::Numerical("eigensolver returned a non-finite value".into()))
            } else if l >= 0.0 {
                Ok(l.sqrt())
            } else if l >= -TRACE_NORM_CLAMP {
                Ok(0.0)
            } else {
                Err(Error::Numerical(format!("A^dagger A has eigenvalue {l:e}")))
            }
        })
        .sum()
}

fn local_operator(layout: &QuditLayout, u: &ComplexMatrix) -> Result<DMatrix<C64>> {
    if u.rows() != layout.system_dim {
        return Err(Error::input(format!(
            "{}-mode unitary for System dimension {}",
            u.rows(),
            layout.system_dim
        )));
    }
    u.ensure_unitary(UNITARY_TOLERANCE)?;
    let d = layout.label_dim;
    let local = layout.local_dim();
    Ok(DMatrix::from_fn(local, local, |a, b| {
        if a % d == b % d {
            u.get(a / d, b / d)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

// `op` on every qudit of the vector `v`.
fn apply_local_all(v: &mut [C64], layout: &QuditLayout, op: &DMatrix<C64>) {
    let local = layout.local_dim();
    let n = layout.qudits;
    let mut buf = vec![C64::new(0.0, 0.0); local];
    for q in 0..n {
        let stride = local.pow((n - 1 - q) as u32);
        let block = stride * local;
        for start in (0..v.len()).step_by(block) {
            for off in 0..stride {
                let base = start + off;
                for (a, slot) in buf.iter_mut().enumerate() {
                    *slot = (0..local).map(|b| op[(a, b)] * v[base + b * stride]).sum();
                }
                for (a, &x) in buf.iter().enumerate() {
                    v[base + a * stride] = x;
                }
            }
        }
    }
}

// Orbits of the qudit-permutation action, keyed by sorted digits. The
// symmetric projector `(1/n!) sum_sigma sigma` sends a vector to its
// average over each orbit.
struct Orbits {
    key: Vec<usize>,
    size: Vec<usize>,
}

impl Orbits {
    fn new(layout: &QuditLayout) -> Self {
        let dim = layout.local_dim().pow(layout.qudits as u32);
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut key = Vec::with_capacity(dim);
        let mut size = Vec::new();
        let mut buf = vec![0; layout.qudits];
        for idx in 0..dim {
            layout.digits(idx, &mut buf);
            buf.sort_unstable();
            let sorted = layout.index(&buf);
            let next = ids.len();
            let id = *ids.entry(sorted).or_insert(next);
            if id == size.len() {
                size.push(0);
            }
            size[id] += 1;
            key.push(id);
        }
        Orbits { key, size }
    }

    fn project(&self, v: &mut [C64]) {
        let mut sums = vec![C64::new(0.0, 0.0); self.size.len()];
        for (&k, &x) in self.key.iter().zip(v.iter()) {
            sums[k] += x;
        }
        for (&k, x) in self.key.iter().zip(v.iter_mut()) {
            *x = sums[k] / self.size[k] as f64;
        }
    }
}

fn measure(layout: &QuditLayout, weights: impl Iterator<Item = f64>) -> Result<OccupationDistribution> {
    let (m, n) = (layout.system_dim, layout.qudits);
    let basis = enumerate_occupations(m, n)?;
    let index: HashMap<&[usize], usize> = basis.iter().enumerate().map(|(i, o)| (o.counts(), i)).collect();
    let mut probs = vec![0.0; basis.len()];
    let mut digits = vec![0; n];
    let mut counts = vec![0; m];
    for (idx, w) in weights.enumerate() {
        layout.digits(idx, &mut digits);
        counts.iter_mut().for_each(|c| *c = 0);
        for &p in &digits {
            counts[p / layout.label_dim] += 1;
        }
        probs[index[counts.as_slice()]] += w;
    }
    OccupationDistribution::from_probabilities(m, n, probs)
}

// Distinct rearrangements of `letters`.
fn distinct_words(letters: &[usize]) -> Vec<Vec<usize>> {
    let mut w = letters.to_vec();
    w.sort_unstable();
    let mut out = vec![w.clone()];
    while next_permutation(&mut w) {
        out.push(w.clone());
    }
    out
}

fn add_symmetrized(amps: &mut [C64], layout: &QuditLayout, letters: &[usize], weight: C64) {
    let words = distinct_words(letters);
    let a = weight / (words.len() as f64).sqrt();
    for w in &words {
        amps[layout.index(w)] += a;
    }
}

/// `(1/sqrt(n! prod S_i!)) sum_sigma sigma|s>` for the word `s` over its
/// own mode count: equal weight on every distinct rearrangement.
pub fn symmetrize_word(word: &ModeWord) -> Result<DenseState> {
    let layout = QuditLayout::system(word.modes(), word.len());
    let mut amps = vec![C64::new(0.0, 0.0); layout.dim()?];
    add_symmetrized(&mut amps, &layout, word.letters(), C64::new(1.0, 0.0));
    Ok(DenseState { layout, amplitudes: amps })
}

/// `sum_T alpha_T sym(T)` on (System, Label) pair qudits.
pub fn system_label_state(terms: &[(C64, SystemLabelOccupation)]) -> Result<DenseState> {
    let Some((_, first)) = terms.first() else {
        return Err(Error::input("empty System-Label superposition"));
    };
    let (m, d, n) = (first.system_modes(), first.label_modes(), first.bosons());
    for (_, t) in terms {
        if t.bosons() != n {
            return Err(Error::input(format!(
                "System-Label terms hold {} and {} bosons",
                n,
                t.bosons()
            )));
        }
        if t.system_modes() != m || t.label_modes() != d {
            return Err(Error::input("System-Label terms have different shapes"));
        }
    }
    if d > n.max(1) {
        return Err(Error::input(format!("{d} Label modes for {n} bosons")));
    }
    let layout = QuditLayout::pairs(m, d, n);
    let mut amps = vec![C64::new(0.0, 0.0); layout.dim()?];
    for (alpha, t) in terms {
        let flat = crate::fock::flatten_system_label(t);
        add_symmetrized(&mut amps, &layout, flat.canonical_word().letters(), *alpha);
    }
    DenseState::new(layout, amps).map_err(|_| Error::input("System-Label amplitudes are not normalized"))
}

/// Normalized symmetrization of `(x)_k |s_k> (x) |Phi_k>`: boson `k` sits in
/// System mode `particles[k].0` with Label state `particles[k].1`.
pub fn labelled_particles(m: usize, particles: &[(usize, Vec<C64>)]) -> Result<DenseState> {
    let n = particles.len();
    let d = particles.first().map_or(1, |p| p.1.len());
    if particles.iter().any(|(s, phi)| *s >= m || phi.len() != d) {
        return Err(Error::input("particle modes out of range or Label dimensions differ"));
    }
    let layout = QuditLayout::pairs(m, d, n);
    let dim = layout.dim()?;
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    let mut digits = vec![0; n];
    for (idx, a) in amps.iter_mut().enumerate() {
        layout.digits(idx, &mut digits);
        let mut z = C64::new(1.0, 0.0);
        for (p, (s, phi)) in digits.iter().zip(particles) {
            if p / d != *s {
                z = C64::new(0.0, 0.0);
                break;
            }
            z *= phi[p % d];
        }
        *a = z;
    }
    Orbits::new(&layout).project(&mut amps);
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::Numerical("symmetrized product state vanishes".into()));
    }
    amps.iter_mut().for_each(|z| *z /= norm);
    Ok(DenseState { layout, amplitudes: amps })
}

/// Bosons of input `s` carrying the per-mode Label vectors of `labels`.
pub fn labelled_input(s: &Occupation, labels: &ModeLabels) -> Result<DenseState> {
    let particles = s
        .canonical_word()
        .letters()
        .iter()
        .map(|&mode| {
            labels
                .vector(mode)
                .map(|v| (mode, v.to_vec()))
                .ok_or_else(|| Error::input(format!("no Label vector for occupied mode {mode}")))
        })
        .collect::<Result<Vec<_>>>()?;
    labelled_particles(s.modes(), &particles)
}

/// `eps |sym(s)><sym(s)| + (1 - eps) (1/n!) sum_sigma sigma|s><s|sigma^dagger`.
pub fn werner_mixture(word: &ModeWord, eps: f64) -> Result<DensityMatrix> {
    if !word.is_collision_free() {
        return Err(Error::input("Werner mixture needs a word with distinct letters"));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::input(format!("mixing weight {eps} outside [0, 1]")));
    }
    let sym = symmetrize_word(word)?.to_density()?;
    let layout = sym.layout;
    let words = distinct_words(word.letters());
    let w = (1.0 - eps) / words.len() as f64;
    let mut entries = sym.entries * C64::new(eps, 0.0);
    for s in &words {
        let i = layout.index(s);
        entries[(i, i)] += w;
    }
    Ok(DensityMatrix { layout, entries })
}
