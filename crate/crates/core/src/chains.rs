//! Registry of named inequality chains: every inequality string is encoded as
//! an ordered list of labeled scalar terms asserted nondecreasing, evaluated
//! on concrete inputs with per-term values and a normalized minimum slack.

use std::cell::OnceCell;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ChainError, LinalgError};
use crate::linalg::{cartesian_decomposition, is_psd, matrix_abs, operator_norm};
use crate::matrix::{inner, vec_norm, ComplexMatrix};
use crate::nr::{crawford_number, numerical_radius, AngleSweepConfig};
use crate::spectral::{
    apply_scalar_function, hh_integral_mean, loewner_slack, squared_integral_mean_closed_form,
    FunctionKind, QuadratureConfig, ScalarFunction,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signature {
    Single,
    Pair,
    PositivePair,
    HermitianPair,
    VectorTriple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainKind {
    InequalityChain,
    Equality,
    OperatorOrderTriple,
}

/// Which optional parameters a chain consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamSpec {
    None,
    Alpha,
    Function,
    FunctionAlpha,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainDef {
    pub id: &'static str,
    pub paper_anchor: &'static str,
    pub signature: Signature,
    pub kind: ChainKind,
    pub params: ParamSpec,
}

/// Optional chain parameters; defaults are α = 1/2 and f = t².
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ChainParams {
    pub f: Option<ScalarFunction>,
    pub alpha: Option<f64>,
}

impl ChainParams {
    fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(0.5)
    }

    fn f(&self) -> ScalarFunction {
        self.f.clone().unwrap_or_else(ScalarFunction::square)
    }
}

/// Inputs for one chain evaluation, matching the chain's signature.
#[derive(Debug, Clone)]
pub enum ChainInputs {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
    Vectors {
        x: Vec<Complex64>,
        e: Vec<Complex64>,
        y: Vec<Complex64>,
    },
}

/// Result of one chain evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub chain_id: String,
    /// Labeled chain terms in order (for triples: the two Loewner slacks).
    pub term_values: Vec<(String, f64)>,
    /// Extra reported values (e.g. both alternatives behind a min).
    #[serde(default)]
    pub metadata: Vec<(String, f64)>,
    /// Minimum over consecutive pairs of (next − prev)/max(1, |prev|, |next|);
    /// for equalities, −|difference|/scale; for operator-order triples, the
    /// smaller normalized λ_min slack.
    pub min_slack: f64,
    pub pass: bool,
    pub tol: f64,
    pub inputs_digest: String,
}

/// Shared evaluation configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalConfig {
    pub sweep: AngleSweepConfig,
    pub quad: QuadratureConfig,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            sweep: AngleSweepConfig::default(),
            quad: QuadratureConfig::default(),
        }
    }
}

const CHAINS: &[ChainDef] = &[
    chain("CH-EQV", r"\frac{\|A\|}{2}\leq w(A)\leq \|A\|", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-KIT05", r"w^2(A) \leq \frac{1}{2}\|A^*A+AA^*\|", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-KIT03", r"\frac{1}{2}\||A|+|A^*|\|", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-BP-ALPHA", r"\min_{0\leq \alpha \leq 1} \left \| \alpha A^*A +(1-\alpha)AA^* \right \|", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-BP-GAMMA", r"\min \{ \gamma_1, \gamma_2\}", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-OM", r"\frac{1}{4} \|A+A^*\|\|A-A^*\|", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-IDENT", r"\frac{1}{2}\|B^2+C^2\|", Signature::Single, ChainKind::Equality, ParamSpec::None),
    chain("CH-T2.1", r"\frac{1}{8}c^2\big(A+A^*\big)", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-C2.3", r"\frac{1}{8}c^2\big(A-A^*\big)\leq w^2(A)", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.4", r"\|A\|^2+\|D\|^2+ \|A^*D+D^*A\|", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.6", r"\min \big \{ w(A^*D), w(AD^*) \big \}", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-L2.DP", r"\max \{ \|A\|,\|D\|\}+ \|AD\|^\frac{1}{2}", Signature::PositivePair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.8", r"\max \big\{ \|A+A^*\|^2,\|A-A^*\|^2 \big\}", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-L2.BBP1", r"2 \max\big\{ \|A^*A+D^*D\|", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.10", r"\frac{1}{4\sqrt{2}}", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-L2.BBP2", r"4w^2(D^*A)", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.12", r"8 \|A+A^*\|^4 \|A-A^*\|^4", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.13a", r"\frac{1}{2}\|A^*A+D^*D\|+w(A^*D)", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.13b", r"\frac{1}{2}\|AA^*+DD^*\|+w(AD^*)", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.14", r"\frac{1}{2}\big(\|A+A^*\|^2-\|A-A^*\|^2\big)^2", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-BK2", r"\frac{1}{4} \|A+D\|^2", Signature::PositivePair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-BK", r"\frac{1}{2}\left\| A^*A+D^*D \right\|", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T2.16", r"\frac{1}{8}\bigg\|(A+A^*)^2 (A-A^*)^2 \bigg\|^{1/2}", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-C2.17", r"\frac{1}{4}\bigg\|(A+A^*)^2 (A-A^*)^2", Signature::Single, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-BUZANO", r"|\langle x,e\rangle~~\langle e,y\rangle|", Signature::VectorTriple, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-L3.1", r"f(\alpha |A|^2+(1-\alpha)|A^*|^2)", Signature::Single, ChainKind::InequalityChain, ParamSpec::FunctionAlpha),
    chain("CH-HH", r"\int_0^1 f \bigg( (1-t)A+tD\bigg)dt", Signature::HermitianPair, ChainKind::OperatorOrderTriple, ParamSpec::Function),
    chain("CH-HH-NORM", r"\frac{1}{2}\big\|f(A)+f(D)\big\|", Signature::HermitianPair, ChainKind::InequalityChain, ParamSpec::Function),
    chain("CH-T3.5", r"tw^2(A)I \bigg)dt", Signature::Single, ChainKind::InequalityChain, ParamSpec::FunctionAlpha),
    chain("CH-C3.6", r"w^4(A)I + w^2(A)", Signature::Single, ChainKind::InequalityChain, ParamSpec::Alpha),
    chain("CH-T3.7", r"\left(\frac{|A|+|A^*|}{2}\right)^2+(1-\alpha) |A|^2", Signature::Single, ChainKind::InequalityChain, ParamSpec::FunctionAlpha),
    chain("CH-C3.8", r"\left(\frac{|A|+|A^*|}{2}\right)^2+(1-\alpha) |A|^2", Signature::Single, ChainKind::InequalityChain, ParamSpec::Alpha),
    chain("CH-T3.9", r"\left(\frac{|A|+|A^*|}{2}\right)^4", Signature::Single, ChainKind::InequalityChain, ParamSpec::FunctionAlpha),
    chain("CH-C3.10", r"\left(\frac{|A|+|A^*|}{2}\right)^4", Signature::Single, ChainKind::InequalityChain, ParamSpec::Alpha),
    chain("CH-T3.11", r"f(\|AD\|) \leq", Signature::PositivePair, ChainKind::InequalityChain, ParamSpec::Function),
    chain("CH-C3.12", r"t\|AD\|I", Signature::PositivePair, ChainKind::InequalityChain, ParamSpec::None),
    chain("CH-T3.13", r"f(\|AD^*\|)", Signature::Pair, ChainKind::InequalityChain, ParamSpec::Function),
    chain("CH-C3.14", r"t\|AD^*\|I", Signature::Pair, ChainKind::InequalityChain, ParamSpec::None),
];

const fn chain(
    id: &'static str,
    paper_anchor: &'static str,
    signature: Signature,
    kind: ChainKind,
    params: ParamSpec,
) -> ChainDef {
    ChainDef {
        id,
        paper_anchor,
        signature,
        kind,
        params,
    }
}

/// Complete, stable catalog ordered by id.
pub fn list_chains() -> Vec<ChainDef> {
    let mut v: Vec<ChainDef> = CHAINS.to_vec();
    v.sort_by_key(|c| c.id);
    v
}

pub fn find_chain(id: &str) -> Option<&'static ChainDef> {
    CHAINS.iter().find(|c| c.id == id)
}

/// Per-input cache: quantities that several terms or chains share (w, norms,
/// Cartesian parts, |A|, |A*|) are computed once and reused, so every term in
/// a verdict sees the same w(A).
pub struct SingleCtx<'a> {
    pub a: &'a ComplexMatrix,
    cfg: &'a EvalConfig,
    w: OnceCell<f64>,
    norm: OnceCell<f64>,
    gram_sum_norm: OnceCell<f64>,
    p: OnceCell<f64>,
    q: OnceCell<f64>,
    c_plus: OnceCell<f64>,
    c_minus: OnceCell<f64>,
    abs_a: OnceCell<ComplexMatrix>,
    abs_astar: OnceCell<ComplexMatrix>,
}

impl<'a> SingleCtx<'a> {
    pub fn new(a: &'a ComplexMatrix, cfg: &'a EvalConfig) -> Self {
        Self {
            a,
            cfg,
            w: OnceCell::new(),
            norm: OnceCell::new(),
            gram_sum_norm: OnceCell::new(),
            p: OnceCell::new(),
            q: OnceCell::new(),
            c_plus: OnceCell::new(),
            c_minus: OnceCell::new(),
            abs_a: OnceCell::new(),
            abs_astar: OnceCell::new(),
        }
    }

    fn cached<T: Clone>(
        cell: &OnceCell<T>,
        compute: impl FnOnce() -> Result<T, LinalgError>,
    ) -> Result<T, LinalgError> {
        if let Some(v) = cell.get() {
            return Ok(v.clone());
        }
        let v = compute()?;
        let _ = cell.set(v.clone());
        Ok(v)
    }

    pub fn w(&self) -> Result<f64, LinalgError> {
        Self::cached(&self.w, || numerical_radius(self.a, &self.cfg.sweep))
    }

    pub fn norm(&self) -> Result<f64, LinalgError> {
        Self::cached(&self.norm, || operator_norm(self.a))
    }

    /// ‖A*A + AA*‖.
    pub fn gram_sum_norm(&self) -> Result<f64, LinalgError> {
        Self::cached(&self.gram_sum_norm, || {
            let adj = self.a.adjoint();
            operator_norm(&adj.mul(self.a).add(&self.a.mul(&adj)))
        })
    }

    /// p = ‖A + A*‖.
    pub fn p(&self) -> Result<f64, LinalgError> {
        Self::cached(&self.p, || operator_norm(&self.a.add(&self.a.adjoint())))
    }

    /// q = ‖A − A*‖.
    pub fn q(&self) -> Result<f64, LinalgError> {
        Self::cached(&self.q, || operator_norm(&self.a.sub(&self.a.adjoint())))
    }

    /// c(A + A*), Hermitian fast path inside.
    pub fn c_plus(&self) -> Result<f64, LinalgError> {
        Self::cached(&self.c_plus, || {
            crawford_number(&self.a.add(&self.a.adjoint()), &self.cfg.sweep)
        })
    }

    /// c(A − A*), skew-Hermitian fast path inside.
    pub fn c_minus(&self) -> Result<f64, LinalgError> {
        Self::cached(&self.c_minus, || {
            crawford_number(&self.a.sub(&self.a.adjoint()), &self.cfg.sweep)
        })
    }

    pub fn abs_a(&self) -> Result<ComplexMatrix, LinalgError> {
        Self::cached(&self.abs_a, || matrix_abs(self.a))
    }

    pub fn abs_astar(&self) -> Result<ComplexMatrix, LinalgError> {
        Self::cached(&self.abs_astar, || matrix_abs(&self.a.adjoint()))
    }

    /// S_α = α|A|² + (1−α)|A*|² = α·A*A + (1−α)·AA*.
    pub fn s_alpha(&self, alpha: f64) -> ComplexMatrix {
        let adj = self.a.adjoint();
        adj.mul(self.a)
            .scale_re(alpha)
            .add(&self.a.mul(&adj).scale_re(1.0 - alpha))
    }

    /// ((|A| + |A*|)/2)².
    pub fn avg_abs_sq(&self) -> Result<ComplexMatrix, LinalgError> {
        let avg = self.abs_a()?.add(&self.abs_astar()?).scale_re(0.5);
        Ok(avg.mul(&avg))
    }

    /// T_α = α((|A|+|A*|)/2)² + (1−α)|A|².
    pub fn t_alpha(&self, alpha: f64) -> Result<ComplexMatrix, LinalgError> {
        let base = self.avg_abs_sq()?.scale_re(alpha);
        Ok(base.add(&self.a.adjoint().mul(self.a).scale_re(1.0 - alpha)))
    }

    /// U_α = α((|A|+|A*|)/2)² + (1−α)|A*|².
    pub fn u_alpha(&self, alpha: f64) -> Result<ComplexMatrix, LinalgError> {
        let base = self.avg_abs_sq()?.scale_re(alpha);
        let adj = self.a.adjoint();
        Ok(base.add(&self.a.mul(&adj).scale_re(1.0 - alpha)))
    }
}

/// Modes for α-minimization bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphaMode {
    /// min_α ‖α A*A + (1−α) AA*‖
    Imp3,
    /// min_α ‖α ((|A|+|A*|)/2)² + (1−α) |A*|²‖
    Gamma1,
    /// min_α ‖α ((|A|+|A*|)/2)² + (1−α) |A|²‖
    Gamma2,
    /// min_α of the f = t² integral middle term over S_α
    Cor1,
    /// min_α of the f = t² integral middle term over U_α
    Cor2,
    /// min_α of the f = t² integral middle term over T_α
    Cor2b,
}

impl AlphaMode {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "imp3" => AlphaMode::Imp3,
            "gamma1" => AlphaMode::Gamma1,
            "gamma2" => AlphaMode::Gamma2,
            "cor1" => AlphaMode::Cor1,
            "cor2" => AlphaMode::Cor2,
            "cor2b" => AlphaMode::Cor2b,
            _ => return None,
        })
    }
}

/// Minimizes the mode's α-parameterized norm bound over α ∈ [0,1] by
/// golden-section search; g is convex in α (norm of an affine matrix
/// function, or a monotone image of one), hence unimodal.
///
/// Returns (α*, g(α*)).
pub fn alpha_minimized_norm(
    a: &ComplexMatrix,
    mode: AlphaMode,
    search_tol: f64,
) -> Result<(f64, f64), LinalgError> {
    let cfg = EvalConfig::default();
    let ctx = SingleCtx::new(a, &cfg);
    let w2 = match mode {
        AlphaMode::Cor1 | AlphaMode::Cor2 | AlphaMode::Cor2b => {
            let w = ctx.w()?;
            w * w
        }
        _ => 0.0,
    };
    let g = |alpha: f64| -> Result<f64, LinalgError> {
        match mode {
            AlphaMode::Imp3 => operator_norm(&ctx.s_alpha(alpha)),
            AlphaMode::Gamma1 => operator_norm(&ctx.u_alpha(alpha)?),
            AlphaMode::Gamma2 => operator_norm(&ctx.t_alpha(alpha)?),
            AlphaMode::Cor1 => closed_form_mid(&ctx.s_alpha(alpha), w2),
            AlphaMode::Cor2 => closed_form_mid(&ctx.u_alpha(alpha)?, w2),
            AlphaMode::Cor2b => closed_form_mid(&ctx.t_alpha(alpha)?, w2),
        }
    };
    golden_section_min(0.0, 1.0, search_tol.max(f64::MIN_POSITIVE), &g)
}

/// (1/√3)‖X² + c²I + cX‖^{1/2}, the f = t² integral middle term.
fn closed_form_mid(x: &ComplexMatrix, c: f64) -> Result<f64, LinalgError> {
    let n = x.dim();
    let inner = x
        .mul(x)
        .add(&ComplexMatrix::identity(n).scale_re(c * c))
        .add(&x.scale_re(c));
    Ok((operator_norm(&inner)? / 3.0).sqrt())
}

fn golden_section_min(
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    g: &impl Fn(f64) -> Result<f64, LinalgError>,
) -> Result<(f64, f64), LinalgError> {
    const INV: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV * (hi - lo);
    let mut x2 = lo + INV * (hi - lo);
    let mut f1 = g(x1)?;
    let mut f2 = g(x2)?;
    while hi - lo > tol {
        if f1 > f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV * (hi - lo);
            f2 = g(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV * (hi - lo);
            f1 = g(x1)?;
        }
    }
    if f1 <= f2 {
        Ok((x1, f1))
    } else {
        Ok((x2, f2))
    }
}

/// Buzano's inequality |⟨x,e⟩⟨e,y⟩| ≤ ½(‖x‖‖y‖ + |⟨x,y⟩|) for unit e.
pub fn check_buzano(
    x: &[Complex64],
    e: &[Complex64],
    y: &[Complex64],
    tol: f64,
) -> Result<ChainVerdict, ChainError> {
    let e_norm = vec_norm(e);
    if (e_norm - 1.0).abs() > 1e-12 {
        return Err(ChainError::Numeric(LinalgError::NotUnitVector {
            norm: e_norm,
        }));
    }
    let lhs = (inner(x, e) * inner(e, y)).norm();
    let rhs = 0.5 * (vec_norm(x) * vec_norm(y) + inner(x, y).norm());
    let terms = vec![
        ("|<x,e><e,y>|".to_string(), lhs),
        ("(|x||y|+|<x,y>|)/2".to_string(), rhs),
    ];
    Ok(build_chain_verdict(
        "CH-BUZANO",
        terms,
        Vec::new(),
        tol,
        format!("vectors dim={}", x.len()),
    ))
}

fn slack_scale(u: f64, v: f64) -> f64 {
    u.abs().max(v.abs()).max(1.0)
}

fn build_chain_verdict(
    id: &str,
    terms: Vec<(String, f64)>,
    metadata: Vec<(String, f64)>,
    tol: f64,
    digest: String,
) -> ChainVerdict {
    let mut min_slack = f64::INFINITY;
    for pair in terms.windows(2) {
        let (u, v) = (pair[0].1, pair[1].1);
        min_slack = min_slack.min((v - u) / slack_scale(u, v));
    }
    ChainVerdict {
        chain_id: id.to_string(),
        pass: min_slack >= -tol,
        term_values: terms,
        metadata,
        min_slack,
        tol,
        inputs_digest: digest,
    }
}

fn digest_matrix(m: &ComplexMatrix) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for z in m.entries() {
        for bits in [z.re.to_bits(), z.im.to_bits()] {
            h ^= bits;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

pub(crate) fn digest_inputs(inputs: &ChainInputs) -> String {
    match inputs {
        ChainInputs::Single(a) => format!("single n={} h={:016x}", a.dim(), digest_matrix(a)),
        ChainInputs::Pair(a, d) => format!(
            "pair n={} h={:016x}/{:016x}",
            a.dim(),
            digest_matrix(a),
            digest_matrix(d)
        ),
        ChainInputs::Vectors { x, .. } => format!("vectors dim={}", x.len()),
    }
}

/// Evaluates a registered chain on concrete inputs.
pub fn evaluate_chain(
    id: &str,
    inputs: &ChainInputs,
    params: &ChainParams,
    tol: f64,
    cfg: &EvalConfig,
) -> Result<ChainVerdict, ChainError> {
    let def = find_chain(id).ok_or_else(|| ChainError::UnknownChain(id.to_string()))?;
    if let Some(alpha) = params.alpha {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(ChainError::SignatureMismatch(format!(
                "alpha {alpha} outside [0,1]"
            )));
        }
    }
    let digest = digest_inputs(inputs);
    match (def.signature, inputs) {
        (Signature::Single, ChainInputs::Single(a)) => {
            let ctx = SingleCtx::new(a, cfg);
            evaluate_single_with_ctx(def, &ctx, params, tol, cfg, digest)
        }
        (Signature::Pair, ChainInputs::Pair(a, d)) => {
            let (terms, metadata) = pair_chain_terms(def, a, d, params, cfg, &PairWCache::default())?;
            Ok(build_chain_verdict(def.id, terms, metadata, tol, digest))
        }
        (Signature::PositivePair, ChainInputs::Pair(a, d)) => {
            for (name, m) in [("first", a), ("second", d)] {
                if !m.is_hermitian_within(crate::eigen::HERMITIAN_TOL)
                    || !is_psd(&m.hermitian_part(), tol.max(1e-10)).map_err(ChainError::Numeric)?
                {
                    return Err(ChainError::PositivityViolation(format!(
                        "{name} input is not PSD"
                    )));
                }
            }
            let (terms, metadata) = pair_chain_terms(def, a, d, params, cfg, &PairWCache::default())?;
            Ok(build_chain_verdict(def.id, terms, metadata, tol, digest))
        }
        (Signature::HermitianPair, ChainInputs::Pair(a, d)) => {
            for (name, m) in [("first", a), ("second", d)] {
                if !m.is_hermitian_within(crate::eigen::HERMITIAN_TOL) {
                    return Err(ChainError::SignatureMismatch(format!(
                        "{name} input must be Hermitian"
                    )));
                }
            }
            hermitian_pair_chain(def, a, d, params, tol, cfg, digest)
        }
        (Signature::VectorTriple, ChainInputs::Vectors { x, e, y }) => check_buzano(x, e, y, tol),
        _ => Err(ChainError::SignatureMismatch(format!(
            "chain {} expects {:?} inputs",
            def.id, def.signature
        ))),
    }
}

/// Single-matrix evaluation against an existing context, so batch runs can
/// share the cached quantities across every chain applied to one input.
pub(crate) fn evaluate_single_with_ctx(
    def: &ChainDef,
    ctx: &SingleCtx<'_>,
    params: &ChainParams,
    tol: f64,
    cfg: &EvalConfig,
    digest: String,
) -> Result<ChainVerdict, ChainError> {
    let (terms, metadata) = single_chain_terms(def, ctx, params, cfg)?;
    if def.kind == ChainKind::Equality {
        Ok(build_equality_verdict(def.id, terms, tol, digest))
    } else {
        Ok(build_chain_verdict(def.id, terms, metadata, tol, digest))
    }
}

fn build_equality_verdict(
    id: &str,
    terms: Vec<(String, f64)>,
    tol: f64,
    digest: String,
) -> ChainVerdict {
    assert_eq!(terms.len(), 2);
    let (u, v) = (terms[0].1, terms[1].1);
    let min_slack = -(v - u).abs() / slack_scale(u, v);
    ChainVerdict {
        chain_id: id.to_string(),
        pass: min_slack >= -tol,
        term_values: terms,
        metadata: Vec::new(),
        min_slack,
        tol,
        inputs_digest: digest,
    }
}

type Terms = (Vec<(String, f64)>, Vec<(String, f64)>);

fn t(label: &str, v: f64) -> (String, f64) {
    (label.to_string(), v)
}

/// ‖∫₀¹ f((1−t)X + t·cI) dt‖ with the closed form for f = t² (cross-checked
/// against quadrature) and Gauss-Legendre otherwise.
fn integral_mid_norm(
    f: &ScalarFunction,
    x: &ComplexMatrix,
    c: f64,
    quad: &QuadratureConfig,
) -> Result<f64, LinalgError> {
    let n = x.dim();
    let y = ComplexMatrix::identity(n).scale_re(c);
    if matches!(f.kind, FunctionKind::Power { exponent } if exponent == 1.0) {
        // affine integrand: the mean is (X + cI)/2 exactly
        return operator_norm(&x.add(&y).scale_re(0.5));
    }
    if matches!(f.kind, FunctionKind::Power { exponent } if exponent == 2.0) {
        let closed = squared_integral_mean_closed_form(x, &y)?;
        if cfg!(debug_assertions) {
            let quadr = hh_integral_mean(f, x, &y, quad)?;
            let scale = closed.frobenius_norm().max(1.0);
            assert!(
                closed.sub(&quadr).frobenius_norm() / scale < 1e-9,
                "closed form and quadrature disagree"
            );
        }
        operator_norm(&closed)
    } else {
        operator_norm(&hh_integral_mean(f, x, &y, quad)?)
    }
}

/// ∫₀¹ f((1−t)A + tD) dt with closed forms for f = t (affine) and f = t².
fn pair_integral_mean(
    f: &ScalarFunction,
    a: &ComplexMatrix,
    d: &ComplexMatrix,
    quad: &QuadratureConfig,
) -> Result<ComplexMatrix, LinalgError> {
    match f.kind {
        FunctionKind::Power { exponent } if exponent == 1.0 => Ok(a.add(d).scale_re(0.5)),
        FunctionKind::Power { exponent } if exponent == 2.0 => {
            squared_integral_mean_closed_form(a, d)
        }
        _ => hh_integral_mean(f, a, d, quad),
    }
}

fn single_chain_terms(
    def: &ChainDef,
    ctx: &SingleCtx<'_>,
    params: &ChainParams,
    cfg: &EvalConfig,
) -> Result<Terms, ChainError> {
    let id = def.id;
    let terms: Terms = match id {
        "CH-EQV" => {
            let norm = ctx.norm()?;
            let w = ctx.w()?;
            (
                vec![t("|A|/2", norm / 2.0), t("w(A)", w), t("|A|", norm)],
                vec![],
            )
        }
        "CH-KIT05" => {
            let g = ctx.gram_sum_norm()?;
            let w = ctx.w()?;
            (
                vec![
                    t("|A*A+AA*|/4", g / 4.0),
                    t("w^2(A)", w * w),
                    t("|A*A+AA*|/2", g / 2.0),
                ],
                vec![],
            )
        }
        "CH-KIT03" => {
            let w = ctx.w()?;
            let mid = operator_norm(&ctx.abs_a()?.add(&ctx.abs_astar()?))? / 2.0;
            let norm = ctx.norm()?;
            let sq_norm = operator_norm(&ctx.a.mul(ctx.a))?;
            (
                vec![
                    t("w(A)", w),
                    t("(|A|+|A*|)/2 norm", mid),
                    t("|A|/2+|A^2|^(1/2)/2", norm / 2.0 + sq_norm.sqrt() / 2.0),
                ],
                vec![],
            )
        }
        "CH-BP-ALPHA" => {
            let w = ctx.w()?;
            let (alpha_star, value) = alpha_minimized_norm(ctx.a, AlphaMode::Imp3, 1e-8)?;
            (
                vec![t("w^2(A)", w * w), t("min_a |aA*A+(1-a)AA*|", value)],
                vec![t("alpha_star", alpha_star)],
            )
        }
        "CH-BP-GAMMA" => {
            let w = ctx.w()?;
            let (a1, g1) = alpha_minimized_norm(ctx.a, AlphaMode::Gamma1, 1e-8)?;
            let (a2, g2) = alpha_minimized_norm(ctx.a, AlphaMode::Gamma2, 1e-8)?;
            (
                vec![t("w^2(A)", w * w), t("min{gamma1,gamma2}", g1.min(g2))],
                vec![
                    t("gamma1", g1),
                    t("gamma1_alpha", a1),
                    t("gamma2", g2),
                    t("gamma2_alpha", a2),
                ],
            )
        }
        "CH-OM" => {
            let w = ctx.w()?;
            (
                vec![
                    t("|A+A*||A-A*|/4", ctx.p()? * ctx.q()? / 4.0),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-IDENT" => {
            let lhs = ctx.gram_sum_norm()? / 4.0;
            let (b, c) = cartesian_decomposition(ctx.a);
            let rhs = operator_norm(&b.mul(&b).add(&c.mul(&c)))? / 2.0;
            (
                vec![t("|A*A+AA*|/4", lhs), t("|B^2+C^2|/2", rhs)],
                vec![],
            )
        }
        "CH-T2.1" => {
            let (p, q) = (ctx.p()?, ctx.q()?);
            let base = (p * p + q * q) / 8.0;
            let cp = ctx.c_plus()?;
            let cm = ctx.c_minus()?;
            let w = ctx.w()?;
            (
                vec![
                    t("|A*A+AA*|/4", ctx.gram_sum_norm()? / 4.0),
                    t("(p^2+q^2)/8", base),
                    t(
                        "(p^2+q^2)/8+c^2(A+A*)/8+c^2(A-A*)/8",
                        base + cp * cp / 8.0 + cm * cm / 8.0,
                    ),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-C2.3" => {
            let cp = ctx.c_plus()?;
            let cm = ctx.c_minus()?;
            let w = ctx.w()?;
            (
                vec![
                    t(
                        "|A*A+AA*|/4+c^2(A+A*)/8+c^2(A-A*)/8",
                        ctx.gram_sum_norm()? / 4.0 + cp * cp / 8.0 + cm * cm / 8.0,
                    ),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-T2.8" => {
            let (p, q) = (ctx.p()?, ctx.q()?);
            let w = ctx.w()?;
            (
                vec![
                    t("|A*A+AA*|/4", ctx.gram_sum_norm()? / 4.0),
                    t(
                        "(max{p^2,q^2}+pq)/8",
                        ((p * p).max(q * q) + p * q) / 8.0,
                    ),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-T2.10" => {
            let (p, q) = (ctx.p()?, ctx.q()?);
            let w = ctx.w()?;
            (
                vec![
                    t("|A*A+AA*|/4", ctx.gram_sum_norm()? / 4.0),
                    t(
                        "(p^4+q^4)^(1/2)/(4*sqrt2)",
                        (p.powi(4) + q.powi(4)).sqrt() / (4.0 * 2.0f64.sqrt()),
                    ),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-T2.12" => {
            let (p, q) = (ctx.p()?, ctx.q()?);
            let w = ctx.w()?;
            let p4 = p.powi(4);
            let q4 = q.powi(4);
            (
                vec![
                    t("|A*A+AA*|/4", ctx.gram_sum_norm()? / 4.0),
                    t(
                        "(2(p^4+q^4)^2+8p^4q^4)^(1/4)/8",
                        (2.0 * (p4 + q4).powi(2) + 8.0 * p4 * q4).powf(0.25) / 8.0,
                    ),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-T2.14" => {
            let (p, q) = (ctx.p()?, ctx.q()?);
            let w = ctx.w()?;
            let s = p * p + q * q;
            let d = p * p - q * q;
            (
                vec![
                    t("|A*A+AA*|/4", ctx.gram_sum_norm()? / 4.0),
                    t(
                        "((p^2+q^2)^2+(p^2-q^2)^2/2)^(1/2)/8",
                        (s * s + 0.5 * d * d).sqrt() / 8.0,
                    ),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-T2.16" => {
            let w = ctx.w()?;
            let prod = squared_commutant_norm(ctx.a)?;
            (
                vec![
                    t("|A*A+AA*|/4", ctx.gram_sum_norm()? / 4.0),
                    t(
                        "w^2/2+|(A+A*)^2(A-A*)^2|^(1/2)/8",
                        w * w / 2.0 + prod.sqrt() / 8.0,
                    ),
                    t("w^2(A)", w * w),
                ],
                vec![],
            )
        }
        "CH-C2.17" => {
            let w = ctx.w()?;
            let g = ctx.gram_sum_norm()?;
            let prod = squared_commutant_norm(ctx.a)?;
            (
                vec![
                    t(
                        "|A*A+AA*|/2-|(A+A*)^2(A-A*)^2|^(1/2)/4",
                        g / 2.0 - prod.sqrt() / 4.0,
                    ),
                    t("w^2(A)", w * w),
                    t("|A*A+AA*|/2", g / 2.0),
                ],
                vec![],
            )
        }
        "CH-L3.1" => {
            let f = params.f();
            let alpha = params.alpha();
            let w = ctx.w()?;
            let s = ctx.s_alpha(alpha);
            (
                vec![
                    t("f(w^2)", f.eval(w * w)),
                    t("|f(S_alpha)|", operator_norm(&apply_scalar_function(&f, &s)?)?),
                ],
                vec![],
            )
        }
        "CH-T3.5" => {
            let f = params.f();
            let alpha = params.alpha();
            let w = ctx.w()?;
            let s = ctx.s_alpha(alpha);
            let mid = integral_mid_norm(&f, &s, w * w, &cfg.quad)?;
            (
                vec![
                    t("f(w^2)", f.eval(w * w)),
                    t("|int f((1-t)S+t w^2 I)dt|", mid),
                    t("|f(S_alpha)|", operator_norm(&apply_scalar_function(&f, &s)?)?),
                ],
                vec![],
            )
        }
        "CH-C3.6" => {
            let alpha = params.alpha();
            let w = ctx.w()?;
            let s = ctx.s_alpha(alpha);
            (
                vec![
                    t("w^2(A)", w * w),
                    t("(1/sqrt3)|S^2+w^4 I+w^2 S|^(1/2)", closed_form_mid(&s, w * w)?),
                    t("|S_alpha|", operator_norm(&s)?),
                ],
                vec![],
            )
        }
        "CH-T3.7" | "CH-T3.9" => {
            let f = params.f();
            let alpha = params.alpha();
            let w = ctx.w()?;
            let base = if id == "CH-T3.7" {
                ctx.t_alpha(alpha)?
            } else {
                ctx.u_alpha(alpha)?
            };
            let mid = integral_mid_norm(&f, &base, w * w, &cfg.quad)?;
            (
                vec![
                    t("f(w^2)", f.eval(w * w)),
                    t("|int f((1-t)X+t w^2 I)dt|", mid),
                    t("|f(X_alpha)|", operator_norm(&apply_scalar_function(&f, &base)?)?),
                ],
                vec![],
            )
        }
        "CH-C3.8" | "CH-C3.10" => {
            let alpha = params.alpha();
            let w = ctx.w()?;
            let base = if id == "CH-C3.8" {
                ctx.t_alpha(alpha)?
            } else {
                ctx.u_alpha(alpha)?
            };
            (
                vec![
                    t("w^2(A)", w * w),
                    t(
                        "(1/sqrt3)|X^2+w^4 I+w^2 X|^(1/2)",
                        closed_form_mid(&base, w * w)?,
                    ),
                    t("|X_alpha|", operator_norm(&base)?),
                ],
                vec![],
            )
        }
        other => {
            return Err(ChainError::SignatureMismatch(format!(
                "chain {other} is not a single-matrix chain"
            )))
        }
    };
    Ok(terms)
}

/// ‖(A+A*)²(A−A*)²‖.
fn squared_commutant_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    let plus = a.add(&a.adjoint());
    let minus = a.sub(&a.adjoint());
    operator_norm(&plus.mul(&plus).mul(&minus.mul(&minus)))
}

/// Cache for the numerical radii shared between several pair chains.
#[derive(Default)]
pub(crate) struct PairWCache {
    w_astar_d: OnceCell<f64>,
    w_a_dstar: OnceCell<f64>,
    w_dstar_a: OnceCell<f64>,
}

fn cached<T: Clone>(
    cell: &OnceCell<T>,
    compute: impl FnOnce() -> Result<T, LinalgError>,
) -> Result<T, LinalgError> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = compute()?;
    let _ = cell.set(v.clone());
    Ok(v)
}

impl PairWCache {
    /// w(A*D)
    fn w_astar_d(
        &self,
        a: &ComplexMatrix,
        d: &ComplexMatrix,
        cfg: &EvalConfig,
    ) -> Result<f64, LinalgError> {
        cached(&self.w_astar_d, || {
            numerical_radius(&a.adjoint().mul(d), &cfg.sweep)
        })
    }

    /// w(AD*)
    fn w_a_dstar(
        &self,
        a: &ComplexMatrix,
        d: &ComplexMatrix,
        cfg: &EvalConfig,
    ) -> Result<f64, LinalgError> {
        cached(&self.w_a_dstar, || {
            numerical_radius(&a.mul(&d.adjoint()), &cfg.sweep)
        })
    }

    /// w(D*A)
    fn w_dstar_a(
        &self,
        a: &ComplexMatrix,
        d: &ComplexMatrix,
        cfg: &EvalConfig,
    ) -> Result<f64, LinalgError> {
        cached(&self.w_dstar_a, || {
            numerical_radius(&d.adjoint().mul(a), &cfg.sweep)
        })
    }
}

/// Pair evaluation with a shared radius cache and no input re-validation;
/// batch runs validate PSD / Hermitian preconditions once per sample.
pub(crate) fn evaluate_pair_with_cache(
    def: &ChainDef,
    a: &ComplexMatrix,
    d: &ComplexMatrix,
    params: &ChainParams,
    tol: f64,
    cfg: &EvalConfig,
    digest: String,
    wc: &PairWCache,
) -> Result<ChainVerdict, ChainError> {
    match def.signature {
        Signature::Pair | Signature::PositivePair => {
            let (terms, metadata) = pair_chain_terms(def, a, d, params, cfg, wc)?;
            Ok(build_chain_verdict(def.id, terms, metadata, tol, digest))
        }
        Signature::HermitianPair => hermitian_pair_chain(def, a, d, params, tol, cfg, digest),
        _ => Err(ChainError::SignatureMismatch(format!(
            "chain {} is not a pair chain",
            def.id
        ))),
    }
}

fn pair_chain_terms(
    def: &ChainDef,
    a: &ComplexMatrix,
    d: &ComplexMatrix,
    params: &ChainParams,
    cfg: &EvalConfig,
    wc: &PairWCache,
) -> Result<Terms, ChainError> {
    let sum = a.add(d);
    let terms: Terms = match def.id {
        "CH-T2.4" => {
            let na = operator_norm(a)?;
            let nd = operator_norm(d)?;
            let cross = operator_norm(&a.adjoint().mul(d).add(&d.adjoint().mul(a)))?;
            let ns = operator_norm(&sum)?;
            (
                vec![
                    t("|A+D|^2", ns * ns),
                    t("|A|^2+|D|^2+|A*D+D*A|", na * na + nd * nd + cross),
                    t("(|A|+|D|)^2", (na + nd).powi(2)),
                ],
                vec![],
            )
        }
        "CH-T2.6" => {
            let na = operator_norm(a)?;
            let nd = operator_norm(d)?;
            let w_ad = wc.w_astar_d(a, d, cfg)?;
            let w_da = wc.w_a_dstar(a, d, cfg)?;
            let ns = operator_norm(&sum)?;
            (
                vec![
                    t("|A+D|^2", ns * ns),
                    t(
                        "|A|^2+|D|^2+|A||D|+min{w(A*D),w(AD*)}",
                        na * na + nd * nd + na * nd + w_ad.min(w_da),
                    ),
                    t("(|A|+|D|)^2", (na + nd).powi(2)),
                ],
                vec![t("w(A*D)", w_ad), t("w(AD*)", w_da)],
            )
        }
        "CH-L2.DP" => {
            let na = operator_norm(a)?;
            let nd = operator_norm(d)?;
            let prod = operator_norm(&a.mul(d))?;
            (
                vec![
                    t("|A+D|", operator_norm(&sum)?),
                    t("max{|A|,|D|}+|AD|^(1/2)", na.max(nd) + prod.sqrt()),
                ],
                vec![],
            )
        }
        "CH-L2.BBP1" => {
            let ns = operator_norm(&sum)?;
            let g1 = operator_norm(&a.adjoint().mul(a).add(&d.adjoint().mul(d)))?;
            let g2 = operator_norm(&a.mul(&a.adjoint()).add(&d.mul(&d.adjoint())))?;
            (
                vec![
                    t("|A+D|^2", ns * ns),
                    t("2max{|A*A+D*D|,|AA*+DD*|}", 2.0 * g1.max(g2)),
                ],
                vec![],
            )
        }
        "CH-L2.BBP2" => {
            let ns = operator_norm(&sum)?;
            let g1 = operator_norm(&a.adjoint().mul(a).add(&d.adjoint().mul(d)))?;
            let g2 = operator_norm(&a.mul(&a.adjoint()).add(&d.mul(&d.adjoint())))?;
            let w_da = wc.w_dstar_a(a, d, cfg)?;
            let w_ad = wc.w_a_dstar(a, d, cfg)?;
            let alt1 = g1 * g1 + 4.0 * w_da * w_da;
            let alt2 = g2 * g2 + 4.0 * w_ad * w_ad;
            (
                vec![
                    t("|A+D|^4", ns.powi(4)),
                    t("2max{...}", 2.0 * alt1.max(alt2)),
                ],
                vec![t("alt_star", alt1), t("alt_adj", alt2)],
            )
        }
        "CH-T2.13a" => {
            let na = operator_norm(a)?;
            let nd = operator_norm(d)?;
            let g = operator_norm(&a.adjoint().mul(a).add(&d.adjoint().mul(d)))?;
            let w_ad = wc.w_astar_d(a, d, cfg)?;
            let ns = operator_norm(&sum)?;
            (
                vec![
                    t("|A+D|^2", ns * ns),
                    t(
                        "|A|^2+|D|^2+|A*A+D*D|/2+w(A*D)",
                        na * na + nd * nd + g / 2.0 + w_ad,
                    ),
                ],
                vec![],
            )
        }
        "CH-T2.13b" => {
            let na = operator_norm(a)?;
            let nd = operator_norm(d)?;
            let g = operator_norm(&a.mul(&a.adjoint()).add(&d.mul(&d.adjoint())))?;
            let w_da = wc.w_a_dstar(a, d, cfg)?;
            let ns = operator_norm(&sum)?;
            (
                vec![
                    t("|A+D|^2", ns * ns),
                    t(
                        "|A|^2+|D|^2+|AA*+DD*|/2+w(AD*)",
                        na * na + nd * nd + g / 2.0 + w_da,
                    ),
                ],
                vec![],
            )
        }
        "CH-BK2" => {
            let prod = operator_norm(&a.mul(d))?;
            let ns = operator_norm(&sum)?;
            (
                vec![t("|AD|", prod), t("|A+D|^2/4", ns * ns / 4.0)],
                vec![],
            )
        }
        "CH-BK" => {
            let prod = operator_norm(&a.mul(&d.adjoint()))?;
            let g = operator_norm(&a.adjoint().mul(a).add(&d.adjoint().mul(d)))?;
            (
                vec![t("|AD*|", prod), t("|A*A+D*D|/2", g / 2.0)],
                vec![],
            )
        }
        "CH-HH-NORM" => {
            let f = params.f();
            let mid_matrix = a.add(d).scale_re(0.5);
            let mean = pair_integral_mean(&f, a, d, &cfg.quad)?;
            let f_mid = apply_scalar_function(&f, &mid_matrix)?;
            let f_ends = apply_scalar_function(&f, a)?.add(&apply_scalar_function(&f, d)?);
            (
                vec![
                    t("|f((A+D)/2)|", operator_norm(&f_mid)?),
                    t("|int f((1-t)A+tD)dt|", operator_norm(&mean)?),
                    t("|f(A)+f(D)|/2", operator_norm(&f_ends)? / 2.0),
                ],
                vec![],
            )
        }
        "CH-T3.11" => {
            let f = params.f();
            let half_sum = sum.scale_re(0.5);
            let m = half_sum.mul(&half_sum);
            let c = operator_norm(&a.mul(d))?;
            let mid = integral_mid_norm(&f, &m, c, &cfg.quad)?;
            (
                vec![
                    t("f(|AD|)", f.eval(c)),
                    t("|int f((1-t)((A+D)/2)^2+t|AD|I)dt|", mid),
                    t("|f(((A+D)/2)^2)|", operator_norm(&apply_scalar_function(&f, &m)?)?),
                ],
                vec![],
            )
        }
        "CH-C3.12" => {
            let half_sum = sum.scale_re(0.5);
            let m = half_sum.mul(&half_sum);
            let c = operator_norm(&a.mul(d))?;
            let ns = operator_norm(&sum)?;
            (
                vec![
                    t("|AD|", c),
                    t("(1/sqrt3)|M^2+|AD|^2 I+|AD|M|^(1/2)", closed_form_mid(&m, c)?),
                    t("|A+D|^2/4", ns * ns / 4.0),
                ],
                vec![],
            )
        }
        "CH-T3.13" => {
            let f = params.f();
            let m = a
                .adjoint()
                .mul(a)
                .add(&d.adjoint().mul(d))
                .scale_re(0.5);
            let c = operator_norm(&a.mul(&d.adjoint()))?;
            let mid = integral_mid_norm(&f, &m, c, &cfg.quad)?;
            (
                vec![
                    t("f(|AD*|)", f.eval(c)),
                    t("|int f((1-t)M+t|AD*|I)dt|", mid),
                    t("|f(M)|", operator_norm(&apply_scalar_function(&f, &m)?)?),
                ],
                vec![],
            )
        }
        "CH-C3.14" => {
            let m = a
                .adjoint()
                .mul(a)
                .add(&d.adjoint().mul(d))
                .scale_re(0.5);
            let c = operator_norm(&a.mul(&d.adjoint()))?;
            let g = operator_norm(&a.adjoint().mul(a).add(&d.adjoint().mul(d)))?;
            (
                vec![
                    t("|AD*|", c),
                    t("(1/sqrt3)|M^2+|AD*|^2 I+|AD*|M|^(1/2)", closed_form_mid(&m, c)?),
                    t("|A*A+D*D|/2", g / 2.0),
                ],
                vec![],
            )
        }
        other => {
            return Err(ChainError::SignatureMismatch(format!(
                "chain {other} is not a matrix-pair chain"
            )))
        }
    };
    Ok(terms)
}

fn hermitian_pair_chain(
    def: &ChainDef,
    a: &ComplexMatrix,
    d: &ComplexMatrix,
    params: &ChainParams,
    tol: f64,
    cfg: &EvalConfig,
    digest: String,
) -> Result<ChainVerdict, ChainError> {
    match def.id {
        "CH-HH" => {
            let f = params.f();
            let mid_matrix = a.add(d).scale_re(0.5);
            let mean = pair_integral_mean(&f, a, d, &cfg.quad)?;
            let f_mid = apply_scalar_function(&f, &mid_matrix)?;
            let f_avg = apply_scalar_function(&f, a)?
                .add(&apply_scalar_function(&f, d)?)
                .scale_re(0.5);
            let lower = loewner_slack(&f_mid, &mean)?;
            let upper = loewner_slack(&mean, &f_avg)?;
            let min_slack = lower.min(upper);
            Ok(ChainVerdict {
                chain_id: def.id.to_string(),
                term_values: vec![
                    t("loewner_slack f((A+D)/2) <= mean", lower),
                    t("loewner_slack mean <= (f(A)+f(D))/2", upper),
                ],
                metadata: Vec::new(),
                pass: min_slack >= -tol,
                min_slack,
                tol,
                inputs_digest: digest,
            })
        }
        "CH-HH-NORM" => {
            let (terms, metadata) = pair_chain_terms(def, a, d, params, cfg, &PairWCache::default())?;
            Ok(build_chain_verdict(def.id, terms, metadata, tol, digest))
        }
        other => Err(ChainError::SignatureMismatch(format!(
            "chain {other} is not a Hermitian-pair chain"
        ))),
    }
}

/// One pinned equality/counterexample case from the remarks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EqualityCase {
    pub name: String,
    pub detail: String,
    pub residual: f64,
    pub pass: bool,
}

/// Pinned regressions for the equality remarks: the I/−I counterexamples, the
/// Hermitian collapse of the product term, and the positive-pair norm
/// equality equivalence.
pub fn equality_case_suite() -> Result<Vec<EqualityCase>, LinalgError> {
    let tol = 1e-10;
    let mut cases = Vec::new();
    let id2 = ComplexMatrix::identity(2);
    let neg = id2.scale_re(-1.0);

    // (i) A = I, D = −I: |A*D+D*A| = 2 = 2|A||D| while |A+D| = 0
    {
        let cross = operator_norm(&id2.adjoint().mul(&neg).add(&neg.adjoint().mul(&id2)))?;
        let sum = operator_norm(&id2.add(&neg))?;
        let residual = (cross - 2.0).abs().max(sum);
        cases.push(EqualityCase {
            name: "triangle-converse".into(),
            detail: "A=I, D=-I: |A*D+D*A|=2|A||D| but |A+D|=0".into(),
            residual,
            pass: residual <= tol,
        });
    }
    // (ii) same pair: w(A*D) = w(AD*) = 1 = |A||D|
    {
        let cfg = AngleSweepConfig::default();
        let w1 = numerical_radius(&id2.adjoint().mul(&neg), &cfg)?;
        let w2 = numerical_radius(&id2.mul(&neg.adjoint()), &cfg)?;
        let residual = (w1 - 1.0).abs().max((w2 - 1.0).abs());
        cases.push(EqualityCase {
            name: "radius-converse".into(),
            detail: "A=I, D=-I: w(A*D)=w(AD*)=|A||D| but |A+D| != |A|+|D|".into(),
            residual,
            pass: residual <= tol,
        });
    }
    // (iii) Hermitian A: (A−A*) = 0 so w^2(A) = |A*A+AA*|/2
    {
        let a = ComplexMatrix::diagonal(&[1.0, -3.0]);
        let cfg = EvalConfig::default();
        let ctx = SingleCtx::new(&a, &cfg);
        let w = ctx.w()?;
        let half_gram = ctx.gram_sum_norm()? / 2.0;
        let product = squared_commutant_norm(&a)?;
        let residual = (w * w - half_gram).abs().max(product);
        cases.push(EqualityCase {
            name: "hermitian-collapse".into(),
            detail: "A=diag(1,-3): (A+A*)^2(A-A*)^2=0 and w^2=|A*A+AA*|/2=9".into(),
            residual,
            pass: residual <= tol,
        });
    }
    // (iv) A = D = I: |A+D| = |A|+|D| and |AD| = |A||D| co-occur
    {
        let sum = operator_norm(&id2.add(&id2))?;
        let prod = operator_norm(&id2.mul(&id2))?;
        let residual = (sum - 2.0).abs().max((prod - 1.0).abs());
        cases.push(EqualityCase {
            name: "norm-equality-iff".into(),
            detail: "A=D=I: |A+D|=|A|+|D|=2 and |AD|=|A||D|=1".into(),
            residual,
            pass: residual <= tol,
        });
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nilpotent2() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 2.0, 0.0, 0.0]).unwrap()
    }

    fn eval_single(id: &str, a: &ComplexMatrix) -> ChainVerdict {
        evaluate_chain(
            id,
            &ChainInputs::Single(a.clone()),
            &ChainParams::default(),
            1e-8,
            &EvalConfig::default(),
        )
        .unwrap()
    }

    #[test]
    fn catalog_is_complete_and_stable() {
        let catalog = list_chains();
        assert!(catalog.len() >= 30, "catalog has {} chains", catalog.len());
        let mut ids: Vec<_> = catalog.iter().map(|c| c.id).collect();
        assert!(ids.contains(&"CH-EQV"));
        assert!(ids.contains(&"CH-T3.13"));
        ids.dedup();
        assert_eq!(ids.len(), catalog.len(), "ids are unique");
        assert!(catalog.iter().all(|c| !c.paper_anchor.is_empty()));
    }

    #[test]
    fn unknown_chain_errors() {
        let err = evaluate_chain(
            "CH-NOPE",
            &ChainInputs::Single(ComplexMatrix::identity(2)),
            &ChainParams::default(),
            1e-8,
            &EvalConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, ChainError::UnknownChain(_)));
    }

    #[test]
    fn signature_mismatch_errors() {
        let err = evaluate_chain(
            "CH-T2.4",
            &ChainInputs::Single(ComplexMatrix::identity(2)),
            &ChainParams::default(),
            1e-8,
            &EvalConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, ChainError::SignatureMismatch(_)));
    }

    #[test]
    fn positivity_violation_on_non_psd_pair() {
        let err = evaluate_chain(
            "CH-BK2",
            &ChainInputs::Pair(ComplexMatrix::diagonal(&[1.0, -1.0]), ComplexMatrix::identity(2)),
            &ChainParams::default(),
            1e-8,
            &EvalConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, ChainError::PositivityViolation(_)));
    }

    #[test]
    fn eqv_on_identity() {
        let v = eval_single("CH-EQV", &ComplexMatrix::identity(2));
        assert!(v.pass);
        let vals: Vec<f64> = v.term_values.iter().map(|t| t.1).collect();
        assert!((vals[0] - 0.5).abs() < 1e-10);
        assert!((vals[1] - 1.0).abs() < 1e-10);
        assert!((vals[2] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn t2_1_on_square_zero_matrix_has_four_equal_terms() {
        let v = eval_single("CH-T2.1", &nilpotent2());
        assert!(v.pass);
        for (_, val) in &v.term_values {
            assert!((val - 1.0).abs() < 1e-9, "term {val}");
        }
    }

    #[test]
    fn t2_1_on_hermitian_diagonal() {
        // A = diag(1,−3): c(A+A*) = c(diag(2,−6)) = 0 since 0 ∈ [−6,2], so
        // the Crawford refinement adds nothing and all lower terms equal 4.5.
        let v = eval_single("CH-T2.1", &ComplexMatrix::diagonal(&[1.0, -3.0]));
        assert!(v.pass);
        let vals: Vec<f64> = v.term_values.iter().map(|t| t.1).collect();
        assert!((vals[0] - 4.5).abs() < 1e-9);
        assert!((vals[1] - 4.5).abs() < 1e-9);
        assert!((vals[2] - 4.5).abs() < 1e-9);
        assert!((vals[3] - 9.0).abs() < 1e-9);
    }

    #[test]
    fn ident_equality_on_arbitrary_matrix() {
        let a = ComplexMatrix::from_real(2, &[1.0, 2.0, 0.5, -1.0]).unwrap();
        let v = eval_single("CH-IDENT", &a);
        assert!(v.pass);
        assert!(v.min_slack.abs() < 1e-10);
    }

    #[test]
    fn c3_14_reproduces_paper_example() {
        let a = nilpotent2();
        let d = ComplexMatrix::identity(2);
        let v = evaluate_chain(
            "CH-C3.14",
            &ChainInputs::Pair(a, d),
            &ChainParams::default(),
            1e-8,
            &EvalConfig::default(),
        )
        .unwrap();
        assert!(v.pass);
        let vals: Vec<f64> = v.term_values.iter().map(|t| t.1).collect();
        assert!((vals[0] - 2.0).abs() < 1e-10);
        assert!((vals[1] - (61.0f64 / 12.0).sqrt()).abs() < 1e-9);
        assert!((vals[2] - 2.5).abs() < 1e-12);
    }

    #[test]
    fn alpha_minimization_on_square_zero_matrix() {
        // g(α) = max(4α, 4(1−α)) is minimized at α = 1/2 with value 2
        let (alpha, value) = alpha_minimized_norm(&nilpotent2(), AlphaMode::Imp3, 1e-8).unwrap();
        assert!((alpha - 0.5).abs() < 1e-6);
        assert!((value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn alpha_minimization_hermitian_is_flat() {
        let a = ComplexMatrix::diagonal(&[1.0, -2.0]);
        let (_, value) = alpha_minimized_norm(&a, AlphaMode::Imp3, 1e-8).unwrap();
        assert!((value - 4.0).abs() < 1e-8);
    }

    #[test]
    fn buzano_equality_when_all_equal() {
        let e = vec![Complex64::new(1.0, 0.0)];
        let v = check_buzano(&e, &e, &e, 1e-10).unwrap();
        assert!(v.pass);
        assert!(v.min_slack.abs() < 1e-12);
    }

    #[test]
    fn buzano_orthogonal_case() {
        let x = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let e = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let v = check_buzano(&x, &e, &x, 1e-10).unwrap();
        assert!(v.pass);
        assert_eq!(v.term_values[0].1, 0.0);
    }

    #[test]
    fn buzano_rejects_non_unit_e() {
        let x = vec![Complex64::new(2.0, 0.0)];
        assert!(check_buzano(&x, &x, &x, 1e-10).is_err());
    }

    #[test]
    fn equality_suite_passes() {
        let cases = equality_case_suite().unwrap();
        assert_eq!(cases.len(), 4);
        for case in &cases {
            assert!(case.pass, "{} residual {}", case.name, case.residual);
        }
    }

    #[test]
    fn hh_chain_on_psd_pair() {
        let x = ComplexMatrix::diagonal(&[1.0, 2.0]);
        let y = ComplexMatrix::from_real(2, &[2.0, 1.0, 1.0, 3.0]).unwrap();
        let v = evaluate_chain(
            "CH-HH",
            &ChainInputs::Pair(x, y),
            &ChainParams {
                f: Some(ScalarFunction::power(1.5)),
                alpha: None,
            },
            1e-9,
            &EvalConfig::default(),
        )
        .unwrap();
        assert!(v.pass, "slacks {:?}", v.term_values);
    }

    #[test]
    fn zero_matrix_degenerate_input() {
        let z = ComplexMatrix::zeros(3);
        for id in ["CH-EQV", "CH-KIT05", "CH-T2.1", "CH-IDENT", "CH-C3.6"] {
            let v = eval_single(id, &z);
            assert!(v.pass, "{id} fails on zero matrix");
        }
    }

    #[test]
    fn alpha_out_of_range_rejected() {
        let err = evaluate_chain(
            "CH-C3.6",
            &ChainInputs::Single(ComplexMatrix::identity(2)),
            &ChainParams {
                f: None,
                alpha: Some(1.5),
            },
            1e-8,
            &EvalConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, ChainError::SignatureMismatch(_)));
    }
}
