//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation combines a phase factor (making the targeted off-diagonal
//! entry real) with a real Jacobi rotation that annihilates it. Accurate and
//! dependency-free at desk scale (n ≤ 64).

use num_complex::Complex64;

use crate::error::LinalgError;
use crate::matrix::ComplexMatrix;

/// Default relative Hermitian-residual tolerance for eigensolver inputs.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius threshold, relative to ‖H‖_F.
const OFF_DIAG_THRESHOLD: f64 = 1e-13;
const MAX_SWEEPS: usize = 30;

/// Eigendecomposition H = V·diag(λ)·V* of a Hermitian matrix.
///
/// Eigenvalues are sorted ascending; `vectors` has orthonormal columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Rebuilds V·diag(g(λ))·V* for a scalar map g.
    pub fn assemble(&self, g: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.vectors;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for k in 0..n {
            let gk = g(self.eigenvalues[k]);
            if gk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v.get(i, k) * gk;
                for j in 0..n {
                    out[i * n + j] += vik * v.get(j, k).conj();
                }
            }
        }
        ComplexMatrix::new(n, out).expect("assembled matrix entries are finite")
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with complex
/// rotations.
///
/// The input is checked against `HERMITIAN_TOL` and symmetrized as (H+H*)/2
/// before iterating, so roundoff-level asymmetry is absorbed. `tol` bounds the
/// reconstruction and unitarity residuals of the result (relative Frobenius).
pub fn hermitian_eigen(h: &ComplexMatrix, tol: f64) -> Result<HermitianEigen, LinalgError> {
    let residual = h.hermitian_residual();
    if residual > HERMITIAN_TOL {
        return Err(LinalgError::NotHermitian {
            residual,
            tol: HERMITIAN_TOL,
        });
    }
    let n = h.dim();
    let sym = h.hermitian_part();
    let mut a: Vec<Complex64> = sym.entries().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let norm_f = sym.frobenius_norm();
    let threshold = OFF_DIAG_THRESHOLD * norm_f;
    // min guards the all-zero matrix, which is already diagonal
    let threshold = threshold.max(f64::MIN_POSITIVE);

    let mut sweeps = 0;
    loop {
        let off = off_diag_norm(&a, n);
        if off <= threshold {
            break;
        }
        if sweeps >= MAX_SWEEPS {
            // the bound is relative to tol only through the reconstruction
            // check below; report the raw off-diagonal mass
            return Err(LinalgError::NoConvergence {
                sweeps: MAX_SWEEPS,
                off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap());

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vec_entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vec_entries[row * n + col] = v[row * n + src];
        }
    }
    let vectors = ComplexMatrix::new(n, vec_entries)?;
    let result = HermitianEigen {
        eigenvalues,
        vectors,
    };

    let recon = result.assemble(|x| x);
    let scale = sym.frobenius_norm().max(1.0);
    let recon_res = recon.sub(&sym).frobenius_norm() / scale;
    if recon_res > tol {
        return Err(LinalgError::NoConvergence {
            sweeps,
            off: recon_res,
        });
    }
    Ok(result)
}

fn off_diag_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating a[p][q].
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let abs_apq = apq.norm();
    if abs_apq == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // phase taking a[p][q] to |a[p][q]|
    let phase = apq / abs_apq;

    let tau = (aqq - app) / (2.0 * abs_apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G[p][p] = c, G[p][q] = s, G[q][p] = -s·conj(phase), G[q][q] = c·conj(phase)
    let gqp = -s * phase.conj();
    let gqq = c * phase.conj();

    // columns: M ← M·G
    for i in 0..n {
        let mip = a[i * n + p];
        let miq = a[i * n + q];
        a[i * n + p] = mip * c + miq * gqp;
        a[i * n + q] = mip * s + miq * gqq;
    }
    // rows: M ← G*·M
    for j in 0..n {
        let mpj = a[p * n + j];
        let mqj = a[q * n + j];
        a[p * n + j] = mpj * c + mqj * gqp.conj();
        a[q * n + j] = mpj * s + mqj * gqq.conj();
    }
    // exact zeros on the annihilated pair keep the off-diagonal mass honest
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);

    for i in 0..n {
        let vip = v[i * n + p];
        let viq = v[i * n + q];
        v[i * n + p] = vip * c + viq * gqp;
        v[i * n + q] = vip * s + viq * gqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn diagonal_input() {
        let h = ComplexMatrix::diagonal(&[3.0, 1.0]);
        let e = hermitian_eigen(&h, 1e-10).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 3.0]);
    }

    #[test]
    fn symmetric_2x2() {
        let h = ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let e = hermitian_eigen(&h, 1e-10).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_2x2() {
        // [[0, -i], [i, 0]] has eigenvalues ±1
        let h = ComplexMatrix::new(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&h, 1e-10).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(2, &[0.0, 2.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hermitian_eigen(&a, 1e-10),
            Err(LinalgError::NotHermitian { .. })
        ));
    }

    #[test]
    fn zero_matrix() {
        let e = hermitian_eigen(&ComplexMatrix::zeros(3), 1e-10).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn reconstruction_and_unitarity_on_random_sample() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        let n = 8;
        let entries: Vec<Complex64> = (0..n * n)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let g = ComplexMatrix::new(n, entries).unwrap();
        let h = g.hermitian_part();
        let e = hermitian_eigen(&h, 1e-10).unwrap();

        let scale = h.frobenius_norm().max(1.0);
        let recon = e.assemble(|x| x);
        assert!(recon.sub(&h).frobenius_norm() / scale <= 1e-10);

        let vtv = e.vectors.adjoint().mul(&e.vectors);
        assert!(vtv.sub(&ComplexMatrix::identity(n)).frobenius_norm() <= 1e-10);

        for w in e.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }
}
