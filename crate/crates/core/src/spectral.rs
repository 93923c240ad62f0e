//! Spectral function calculus, Loewner-order comparison, operator-convexity
//! falsification, and the Hermite-Hadamard integral mean
//! ∫₀¹ f((1−t)X + tY) dt.

use serde::{Deserialize, Serialize};

use crate::eigen::hermitian_eigen;
use crate::error::LinalgError;
use crate::linalg::RECON_TOL;
use crate::matrix::ComplexMatrix;
use crate::sampling::{sample_class, EnsembleClass};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Power { exponent: f64 },
    Polynomial { coeffs: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    AllReals,
    NonNegative,
    Positive,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::AllReals => write!(f, "(-inf, inf)"),
            Domain::NonNegative => write!(f, "[0, inf)"),
            Domain::Positive => write!(f, "(0, inf)"),
        }
    }
}

/// Symbolic description of a scalar function, with a domain constraint and
/// declared monotonicity / operator-convexity flags.
///
/// The flags are declarative inputs: `check_operator_convexity` can falsify a
/// wrong `operator_convex` flag by random search but never certifies one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarFunction {
    pub kind: FunctionKind,
    pub domain: Domain,
    pub nonnegative: bool,
    pub increasing: bool,
    pub operator_convex: bool,
}

impl ScalarFunction {
    /// t^r with flags assigned from the known operator-convexity ranges:
    /// r ∈ [1,2] is operator convex, nonnegative and increasing on [0,∞);
    /// r ∈ [−1,0) is operator convex and decreasing on (0,∞).
    pub fn power(r: f64) -> Self {
        if (-1.0..0.0).contains(&r) {
            Self {
                kind: FunctionKind::Power { exponent: r },
                domain: Domain::Positive,
                nonnegative: true,
                increasing: false,
                operator_convex: true,
            }
        } else {
            Self {
                kind: FunctionKind::Power { exponent: r },
                domain: Domain::NonNegative,
                nonnegative: true,
                increasing: r >= 0.0,
                operator_convex: (1.0..=2.0).contains(&r),
            }
        }
    }

    pub fn polynomial(
        coeffs: Vec<f64>,
        domain: Domain,
        nonnegative: bool,
        increasing: bool,
        operator_convex: bool,
    ) -> Self {
        Self {
            kind: FunctionKind::Polynomial { coeffs },
            domain,
            nonnegative,
            increasing,
            operator_convex,
        }
    }

    pub fn identity() -> Self {
        Self::power(1.0)
    }

    pub fn square() -> Self {
        Self::power(2.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            FunctionKind::Power { exponent } => x.powf(*exponent),
            FunctionKind::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
            }
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            FunctionKind::Power { exponent } => format!("t^{}", exponent),
            FunctionKind::Polynomial { coeffs } => format!("poly{:?}", coeffs),
        }
    }

    /// Parses the CLI spellings `t`, `t^1.5`, `t^2`, and general `t^<r>`.
    pub fn parse(s: &str) -> Option<Self> {
        if s == "t" {
            return Some(Self::identity());
        }
        let r = s.strip_prefix("t^")?.parse::<f64>().ok()?;
        Some(Self::power(r))
    }
}

/// Gauss-Legendre quadrature order on [0, 1].
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { nodes: 32 }
    }
}

/// Gauss-Legendre nodes and weights on [0, 1].
///
/// Newton iteration on the Legendre recurrence; exact for polynomials of
/// degree < 2·nodes.
pub fn gauss_legendre_01(nodes: usize) -> Vec<(f64, f64)> {
    let n = nodes.max(2);
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1]
        rule.push(((x + 1.0) / 2.0, w / 2.0));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// f(H) = V·diag(f(λ))·V* by spectral calculus.
///
/// Eigenvalues just below 0 (within −tol·scale) are clamped to 0 for
/// nonnegative-domain f; genuine domain violations error.
pub fn apply_scalar_function(
    f: &ScalarFunction,
    h: &ComplexMatrix,
) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eigen(h, RECON_TOL)?;
    let scale = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &l| m.max(l.abs()))
        .max(1.0);
    for &lam in &eig.eigenvalues {
        match f.domain {
            Domain::AllReals => {}
            Domain::NonNegative => {
                if lam < -RECON_TOL * scale {
                    return Err(LinalgError::DomainViolation {
                        value: lam,
                        domain: f.domain.to_string(),
                    });
                }
            }
            Domain::Positive => {
                if lam < 1e-12 * scale {
                    return Err(LinalgError::DomainViolation {
                        value: lam,
                        domain: f.domain.to_string(),
                    });
                }
            }
        }
    }
    let clamp = matches!(f.domain, Domain::NonNegative);
    Ok(eig.assemble(|lam| {
        let x = if clamp && lam < 0.0 { 0.0 } else { lam };
        f.eval(x)
    }))
}

/// Loewner order X ≼ Y: true iff λ_min(Y − X) ≥ −tol·max(1, ‖X‖, ‖Y‖).
pub fn loewner_leq(x: &ComplexMatrix, y: &ComplexMatrix, tol: f64) -> Result<bool, LinalgError> {
    Ok(loewner_slack(x, y)? >= -tol)
}

/// Normalized λ_min(Y − X); nonnegative iff X ≼ Y at that slack.
pub fn loewner_slack(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<f64, LinalgError> {
    let ex = hermitian_eigen(x, RECON_TOL)?;
    let ey = hermitian_eigen(y, RECON_TOL)?;
    let norm_x = ex.lambda_max().abs().max(ex.lambda_min().abs());
    let norm_y = ey.lambda_max().abs().max(ey.lambda_min().abs());
    let scale = norm_x.max(norm_y).max(1.0);
    let diff = y.sub(x);
    let ed = hermitian_eigen(&diff, RECON_TOL)?;
    Ok(ed.lambda_min() / scale)
}

/// Gauss-Legendre approximation of ∫₀¹ f((1−t)X + tY) dt.
///
/// Nodes are summed in fixed ascending order so results are bit-stable.
pub fn hh_integral_mean(
    f: &ScalarFunction,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    q: &QuadratureConfig,
) -> Result<ComplexMatrix, LinalgError> {
    let n = x.dim();
    assert_eq!(n, y.dim(), "dimension mismatch");
    let rule = gauss_legendre_01(q.nodes);
    let mut acc = ComplexMatrix::zeros(n);
    for &(t, w) in &rule {
        let combo = x.scale_re(1.0 - t).add(&y.scale_re(t));
        let val = apply_scalar_function(f, &combo)?;
        acc = acc.add(&val.scale_re(w));
    }
    Ok(acc)
}

/// Exact value of ∫₀¹ ((1−t)X + tY)² dt = (X² + Y²)/3 + (XY + YX)/6.
pub fn squared_integral_mean_closed_form(
    x: &ComplexMatrix,
    y: &ComplexMatrix,
) -> Result<ComplexMatrix, LinalgError> {
    for m in [x, y] {
        let residual = m.hermitian_residual();
        if residual > crate::eigen::HERMITIAN_TOL {
            return Err(LinalgError::NotHermitian {
                residual,
                tol: crate::eigen::HERMITIAN_TOL,
            });
        }
    }
    let sq = x.mul(x).add(&y.mul(y)).scale_re(1.0 / 3.0);
    let cross = x.mul(y).add(&y.mul(x)).scale_re(1.0 / 6.0);
    Ok(sq.add(&cross))
}

/// Result of a random search for operator-convexity violations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub violations: usize,
    pub worst_slack: f64,
}

/// Samples Hermitian pairs with spectra in f.domain and t ∈ {0.1, …, 0.9},
/// counting Loewner-order violations of
/// f((1−t)X + tY) ≼ (1−t)f(X) + tf(Y) beyond tol.
///
/// A falsification tool only: finding zero violations proves nothing.
pub fn check_operator_convexity(
    f: &ScalarFunction,
    n: usize,
    trials: usize,
    seed: u64,
    tol: f64,
) -> Result<ConvexityReport, LinalgError> {
    assert!(trials >= 1);
    let class = match f.domain {
        Domain::AllReals => EnsembleClass::Hermitian,
        Domain::NonNegative => EnsembleClass::Psd,
        Domain::Positive => EnsembleClass::PositiveDefinite,
    };
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for trial in 0..trials {
        let x = sample_class(class, n, seed, 2 * trial);
        let y = sample_class(class, n, seed, 2 * trial + 1);
        for k in 1..=9 {
            let t = k as f64 / 10.0;
            let slack = convexity_slack(f, &x, &y, t)?;
            worst = worst.min(slack);
            if slack < -tol {
                violations += 1;
            }
        }
    }
    Ok(ConvexityReport {
        violations,
        worst_slack: worst,
    })
}

/// Normalized λ_min((1−t)f(X) + tf(Y) − f((1−t)X + tY)).
pub fn convexity_slack(
    f: &ScalarFunction,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    t: f64,
) -> Result<f64, LinalgError> {
    let lhs = apply_scalar_function(f, &x.scale_re(1.0 - t).add(&y.scale_re(t)))?;
    let rhs = apply_scalar_function(f, x)?
        .scale_re(1.0 - t)
        .add(&apply_scalar_function(f, y)?.scale_re(t));
    loewner_slack(&lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_integrates_polynomials_exactly() {
        for nodes in [2, 8, 32] {
            let rule = gauss_legendre_01(nodes);
            let total: f64 = rule.iter().map(|&(_, w)| w).sum();
            assert!((total - 1.0).abs() < 1e-14, "weights sum to 1 at {nodes}");
            // ∫₀¹ t² dt = 1/3, ∫₀¹ t³ dt = 1/4
            let sq: f64 = rule.iter().map(|&(t, w)| w * t * t).sum();
            assert!((sq - 1.0 / 3.0).abs() < 1e-14);
            let cube: f64 = rule.iter().map(|&(t, w)| w * t * t * t).sum();
            assert!((cube - 0.25).abs() < 1e-14);
        }
    }

    #[test]
    fn apply_square_to_diagonal() {
        let h = ComplexMatrix::diagonal(&[1.0, 2.0]);
        let out = apply_scalar_function(&ScalarFunction::square(), &h).unwrap();
        assert!(out.sub(&ComplexMatrix::diagonal(&[1.0, 4.0])).frobenius_norm() < 1e-12);
    }

    #[test]
    fn apply_sqrt_squares_back() {
        let h = ComplexMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let root = apply_scalar_function(&ScalarFunction::power(0.5), &h).unwrap();
        assert!(root.mul(&root).sub(&h).frobenius_norm() < 1e-10);
    }

    #[test]
    fn apply_inverse_to_diagonal() {
        let h = ComplexMatrix::diagonal(&[2.0, 4.0]);
        let out = apply_scalar_function(&ScalarFunction::power(-1.0), &h).unwrap();
        assert!(out.sub(&ComplexMatrix::diagonal(&[0.5, 0.25])).frobenius_norm() < 1e-12);
    }

    #[test]
    fn domain_violation_for_negative_spectrum() {
        let h = ComplexMatrix::diagonal(&[-1.0, 2.0]);
        assert!(matches!(
            apply_scalar_function(&ScalarFunction::square(), &h),
            Err(LinalgError::DomainViolation { .. })
        ));
    }

    #[test]
    fn loewner_basic_cases() {
        let zero = ComplexMatrix::zeros(2);
        let id = ComplexMatrix::identity(2);
        assert!(loewner_leq(&zero, &id, 1e-10).unwrap());
        assert!(!loewner_leq(&id, &zero, 1e-10).unwrap());
        assert!(loewner_leq(&id, &id, 1e-10).unwrap());
    }

    #[test]
    fn hh_mean_of_square_from_zero_to_identity() {
        let mean = hh_integral_mean(
            &ScalarFunction::square(),
            &ComplexMatrix::zeros(2),
            &ComplexMatrix::identity(2),
            &QuadratureConfig::default(),
        )
        .unwrap();
        let expected = ComplexMatrix::identity(2).scale_re(1.0 / 3.0);
        assert!(mean.sub(&expected).frobenius_norm() < 1e-13);
    }

    #[test]
    fn hh_mean_constant_integrand() {
        let h = ComplexMatrix::from_real(2, &[2.0, 1.0, 1.0, 3.0]).unwrap();
        let f = ScalarFunction::power(1.5);
        let mean = hh_integral_mean(&f, &h, &h, &QuadratureConfig::default()).unwrap();
        let fh = apply_scalar_function(&f, &h).unwrap();
        assert!(mean.sub(&fh).frobenius_norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_paper_2x2_example() {
        let x = ComplexMatrix::diagonal(&[0.5, 2.5]);
        let y = ComplexMatrix::identity(2).scale_re(2.0);
        let m = squared_integral_mean_closed_form(&x, &y).unwrap();
        let expected = ComplexMatrix::diagonal(&[21.0 / 12.0, 61.0 / 12.0]);
        assert!(m.sub(&expected).frobenius_norm() < 1e-13);
        // quadrature route agrees
        let quad = hh_integral_mean(
            &ScalarFunction::square(),
            &x,
            &y,
            &QuadratureConfig { nodes: 2 },
        )
        .unwrap();
        assert!(quad.sub(&expected).frobenius_norm() < 1e-12);
    }

    #[test]
    fn closed_form_with_equal_arguments() {
        let h = ComplexMatrix::from_real(2, &[1.0, 2.0, 2.0, -1.0]).unwrap();
        let m = squared_integral_mean_closed_form(&h, &h).unwrap();
        assert!(m.sub(&h.mul(&h)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn square_is_operator_convex_in_search() {
        let report =
            check_operator_convexity(&ScalarFunction::square(), 3, 50, 17, 1e-9).unwrap();
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn identity_is_affine() {
        let report =
            check_operator_convexity(&ScalarFunction::identity(), 3, 20, 17, 1e-9).unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.worst_slack.abs() < 1e-9);
    }

    #[test]
    fn cube_fails_operator_convexity() {
        let report =
            check_operator_convexity(&ScalarFunction::power(3.0), 2, 1000, 17, 1e-8).unwrap();
        assert!(report.violations >= 1, "t^3 should be falsified");
    }
}
