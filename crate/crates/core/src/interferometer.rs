//! Interferometer unitaries: Haar sampling, triangular (Reck) decomposition
//! into two-mode mixing elements, and file formats.
//!
//! Convention: the single-boson amplitude from input mode `i` to output mode
//! `j` is `U[j, i]`, i.e. `U` acts on a qudit by matrix-vector product. Every
//! distribution formula in the crate indexes `U` this way.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, UNITARY_TOLERANCE};
use crate::rng::RandomSeed;

/// Haar-random `m x m` unitary for a seed.
pub fn haar_random_unitary(m: usize, seed: RandomSeed) -> Result<ComplexMatrix> {
    haar_random_unitary_with(m, &mut seed.rng())
}

/// Haar-random unitary drawn from a caller-owned generator: QR of a complex
/// Ginibre matrix with the phases of `R`'s diagonal moved into `Q`.
pub fn haar_random_unitary_with<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if m == 0 {
        return Err(Error::input("number of modes must be positive"));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = DMatrix::from_fn(m, m, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..m {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_dmatrix(q)
}

/// The balanced beamsplitter `(1/sqrt 2) [[1, 1], [1, -1]]`.
pub fn balanced_beamsplitter() -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]).expect("finite 2x2")
}

/// One optical element of a mesh.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Element {
    /// `exp(i angle)` on a single mode.
    Phase { mode: usize, angle: f64 },
    /// Mixing element on modes `(mode, mode + 1)` with block
    /// `[[e^{i phi} cos theta, -sin theta], [e^{i phi} sin theta, cos theta]]`.
    Mix { mode: usize, theta: f64, phi: f64 },
}

impl Element {
    fn apply_left(&self, m: &mut DMatrix<C64>) -> Result<()> {
        let modes = m.nrows();
        match *self {
            Element::Phase { mode, angle } => {
                if mode >= modes {
                    return Err(Error::input(format!("phase on mode {mode} of {modes}")));
                }
                let p = C64::from_polar(1.0, angle);
                for j in 0..m.ncols() {
                    m[(mode, j)] *= p;
                }
            }
            Element::Mix { mode, theta, phi } => {
                if mode + 1 >= modes {
                    return Err(Error::input(format!(
                        "mixing element on modes ({mode}, {}) of {modes}",
                        mode + 1
                    )));
                }
                let [[a, b], [c, d]] = mix_block(theta, phi);
                for j in 0..m.ncols() {
                    let x = m[(mode, j)];
                    let y = m[(mode + 1, j)];
                    m[(mode, j)] = a * x + b * y;
                    m[(mode + 1, j)] = c * x + d * y;
                }
            }
        }
        Ok(())
    }
}

fn mix_block(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let e = C64::from_polar(1.0, phi);
    let (s, c) = theta.sin_cos();
    [[e * c, C64::new(-s, 0.0)], [e * s, C64::new(c, 0.0)]]
}

/// A mesh: `elements` in the order light meets them, then one output phase
/// per mode. Represents `U = diag(e^{i phases}) * E_K * ... * E_1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementSequence {
    pub modes: usize,
    pub elements: Vec<Element>,
    pub output_phases: Vec<f64>,
}

impl ElementSequence {
    pub fn mixing_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, Element::Mix { .. }))
            .count()
    }
}

// Entries below this modulus are treated as already nulled.
const NULL_TOL: f64 = 1e-15;

/// Decompose a unitary into at most `m(m-1)/2` adjacent mixing elements and
/// output phases.
///
/// Sub-diagonal entries are nulled row by row from the bottom, each by a
/// column rotation on an adjacent pair: `U T_1^dag ... T_K^dag = D`.
pub fn reck_decompose(u: &ComplexMatrix) -> Result<ElementSequence> {
    u.ensure_unitary(UNITARY_TOLERANCE)?;
    let m = u.rows();
    let mut w = u.as_dmatrix().clone();
    let mut elements = Vec::new();
    for r in (1..m).rev() {
        for j in 0..r {
            let a = w[(r, j)];
            let b = w[(r, j + 1)];
            if a.norm() <= NULL_TOL {
                continue;
            }
            let phi = a.arg() - if b.norm() > 0.0 { b.arg() } else { 0.0 };
            let theta = a.norm().atan2(b.norm());
            // w <- w * T^dag on columns (j, j+1)
            let [[t00, t01], [t10, t11]] = mix_block(theta, phi);
            for i in 0..m {
                let x = w[(i, j)];
                let y = w[(i, j + 1)];
                w[(i, j)] = x * t00.conj() + y * t01.conj();
                w[(i, j + 1)] = x * t10.conj() + y * t11.conj();
            }
            w[(r, j)] = C64::new(0.0, 0.0);
            elements.push(Element::Mix { mode: j, theta, phi });
        }
    }
    let output_phases = (0..m).map(|k| w[(k, k)].arg()).collect();
    Ok(ElementSequence {
        modes: m,
        elements,
        output_phases,
    })
}

/// Multiply out a mesh.
pub fn recompose(seq: &ElementSequence) -> Result<ComplexMatrix> {
    let m = seq.modes;
    if m == 0 {
        return Err(Error::input("number of modes must be positive"));
    }
    if seq.output_phases.len() != m {
        return Err(Error::input(format!(
            "{} output phases for {m} modes",
            seq.output_phases.len()
        )));
    }
    let mut acc = DMatrix::<C64>::identity(m, m);
    for e in &seq.elements {
        e.apply_left(&mut acc)?;
    }
    for (k, &angle) in seq.output_phases.iter().enumerate() {
        Element::Phase { mode: k, angle }.apply_left(&mut acc)?;
    }
    ComplexMatrix::from_dmatrix(acc)
}

/// On-disk matrix format `{ "m": int, "re": [[..]], "im": [[..]] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub m: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(u: &ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::Shape("matrix files hold square matrices".into()));
        }
        Ok(MatrixFile {
            m: u.rows(),
            re: u.re_rows(),
            im: u.im_rows(),
        })
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let u = ComplexMatrix::from_parts(&self.re, &self.im)?;
        if u.rows() != self.m || u.cols() != self.m {
            return Err(Error::Shape(format!(
                "declared m = {} but arrays are {}x{}",
                self.m,
                u.rows(),
                u.cols()
            )));
        }
        Ok(u)
    }
}
