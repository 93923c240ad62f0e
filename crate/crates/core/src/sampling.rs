//! Seeded random-matrix ensembles.
//!
//! Every sample is a pure function of (class, n, seed, index): the generator
//! seeds a ChaCha substream per index, so batch generation is
//! order-independent and parallelizable.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{vec_norm, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleClass {
    Ginibre,
    Hermitian,
    Psd,
    PositiveDefinite,
    Normal,
    Unitary,
    Nilpotent,
    SkewHermitian,
    DiagonalReal,
}

impl EnsembleClass {
    pub const ALL: [EnsembleClass; 9] = [
        EnsembleClass::Ginibre,
        EnsembleClass::Hermitian,
        EnsembleClass::Psd,
        EnsembleClass::PositiveDefinite,
        EnsembleClass::Normal,
        EnsembleClass::Unitary,
        EnsembleClass::Nilpotent,
        EnsembleClass::SkewHermitian,
        EnsembleClass::DiagonalReal,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EnsembleClass::Ginibre => "ginibre",
            EnsembleClass::Hermitian => "hermitian",
            EnsembleClass::Psd => "psd",
            EnsembleClass::PositiveDefinite => "positive_definite",
            EnsembleClass::Normal => "normal",
            EnsembleClass::Unitary => "unitary",
            EnsembleClass::Nilpotent => "nilpotent",
            EnsembleClass::SkewHermitian => "skew_hermitian",
            EnsembleClass::DiagonalReal => "diagonal_real",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub class: EnsembleClass,
    pub n: usize,
    pub seed: u64,
    pub count: usize,
}

#[derive(Debug, Error)]
pub enum SamplingError {
    #[error("sample index {index} out of range (count {count})")]
    IndexOutOfRange { index: usize, count: usize },
}

/// Generates sample `index` of the configured ensemble.
pub fn generate(cfg: &GeneratorConfig, index: usize) -> Result<ComplexMatrix, SamplingError> {
    if index >= cfg.count {
        return Err(SamplingError::IndexOutOfRange {
            index,
            count: cfg.count,
        });
    }
    Ok(sample_class(cfg.class, cfg.n, cfg.seed, index))
}

/// Unchecked variant used where the caller controls the index range.
pub fn sample_class(class: EnsembleClass, n: usize, seed: u64, index: usize) -> ComplexMatrix {
    let mut rng = substream(seed, index);
    match class {
        EnsembleClass::Ginibre => ginibre(n, &mut rng),
        EnsembleClass::Hermitian => ginibre(n, &mut rng).hermitian_part(),
        EnsembleClass::Psd => {
            let g = ginibre(n, &mut rng);
            g.adjoint().mul(&g)
        }
        EnsembleClass::PositiveDefinite => {
            let g = ginibre(n, &mut rng);
            let gram = g.adjoint().mul(&g);
            let eps = 1e-3 * gram.frobenius_norm().max(1e-12);
            gram.add(&ComplexMatrix::identity(n).scale_re(eps))
        }
        EnsembleClass::Normal => {
            let u = haar_unitary(n, &mut rng);
            let diag: Vec<Complex64> = (0..n).map(|_| complex_gaussian(&mut rng)).collect();
            let mut d = ComplexMatrix::zeros(n);
            let mut entries = d.entries().to_vec();
            for (i, z) in diag.iter().enumerate() {
                entries[i * n + i] = *z;
            }
            d = ComplexMatrix::new(n, entries).unwrap();
            u.mul(&d).mul(&u.adjoint())
        }
        EnsembleClass::Unitary => haar_unitary(n, &mut rng),
        EnsembleClass::Nilpotent => {
            let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
            for i in 0..n {
                for j in (i + 1)..n {
                    entries[i * n + j] = complex_gaussian(&mut rng);
                }
            }
            ComplexMatrix::new(n, entries).unwrap()
        }
        EnsembleClass::SkewHermitian => {
            let g = ginibre(n, &mut rng);
            g.sub(&g.adjoint()).scale_re(0.5)
        }
        EnsembleClass::DiagonalReal => {
            let diag: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            ComplexMatrix::diagonal(&diag)
        }
    }
}

pub(crate) fn substream(seed: u64, index: usize) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn complex_gaussian(rng: &mut impl rand::Rng) -> Complex64 {
    Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

fn ginibre(n: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
    let entries = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(n, entries).unwrap()
}

/// Approximate Haar unitary: modified Gram-Schmidt on a Ginibre sample.
///
/// MGS produces R with positive real diagonal, which is exactly the sign
/// correction needed for distributional correctness.
fn haar_unitary(n: usize, rng: &mut impl rand::Rng) -> ComplexMatrix {
    loop {
        let g = ginibre(n, rng);
        if let Some(q) = gram_schmidt(&g) {
            return q;
        }
        // rank-deficient draw (probability zero up to roundoff); redraw
    }
}

fn gram_schmidt(a: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = a.dim();
    // work on columns
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j)).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 = (0..n).map(|i| cols[j][i] * cols[k][i].conj()).sum();
            for i in 0..n {
                let correction = proj * cols[k][i];
                cols[j][i] -= correction;
            }
        }
        let norm = vec_norm(&cols[j]);
        if norm < 1e-10 {
            return None;
        }
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            entries[i * n + j] = col[i];
        }
    }
    Some(ComplexMatrix::new(n, entries).unwrap())
}
