//! Norms, absolute value, Cartesian decomposition and PSD tests built on the
//! Hermitian eigensolver.

use num_complex::Complex64;

use crate::eigen::hermitian_eigen;
use crate::error::LinalgError;
use crate::matrix::ComplexMatrix;

/// Default reconstruction tolerance handed to the eigensolver.
pub const RECON_TOL: f64 = 1e-10;

/// Operator norm ‖A‖ = sqrt(λ_max(A*A)).
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    let gram = a.adjoint().mul(a);
    let eig = hermitian_eigen(&gram, RECON_TOL)?;
    Ok(eig.lambda_max().max(0.0).sqrt())
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn lambda_max(h: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(hermitian_eigen(h, RECON_TOL)?.lambda_max())
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn lambda_min(h: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(hermitian_eigen(h, RECON_TOL)?.lambda_min())
}

/// |A| = (A*A)^{1/2}, the PSD absolute value.
///
/// Eigenvalues of A*A in [−tol·scale, 0) are clamped to 0; anything below that
/// is treated as an eigensolver defect, not a domain case, and errors.
pub fn matrix_abs(a: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let gram = a.adjoint().mul(a);
    let eig = hermitian_eigen(&gram, RECON_TOL)?;
    let scale = gram.frobenius_norm().max(1.0);
    let floor = -RECON_TOL * scale;
    for &lam in &eig.eigenvalues {
        if lam < floor {
            return Err(LinalgError::DomainViolation {
                value: lam,
                domain: "[0, ∞) (A*A must be PSD up to roundoff)".into(),
            });
        }
    }
    Ok(eig.assemble(|x| x.max(0.0).sqrt()))
}

/// Cartesian decomposition A = B + iC with B = (A+A*)/2 and C = (A−A*)/(2i),
/// both Hermitian.
pub fn cartesian_decomposition(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let adj = a.adjoint();
    let b = a.add(&adj).scale_re(0.5);
    // (A−A*)/(2i) = −i/2 · (A−A*)
    let c = a.sub(&adj).scale(Complex64::new(0.0, -0.5));
    (b, c)
}

/// Loewner-order primitive: true iff λ_min(H) ≥ −tol·max(1, ‖H‖).
pub fn is_psd(h: &ComplexMatrix, tol: f64) -> Result<bool, LinalgError> {
    let eig = hermitian_eigen(h, RECON_TOL)?;
    let scale = eig
        .lambda_max()
        .abs()
        .max(eig.lambda_min().abs())
        .max(1.0);
    Ok(eig.lambda_min() >= -tol * scale)
}
