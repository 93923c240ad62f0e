//! Batch verification: evaluate many chains over seeded ensemble samples,
//! aggregating pass counts, worst slacks and per-chain tightness statistics.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::chains::{
    self, digest_inputs, evaluate_chain, evaluate_pair_with_cache, evaluate_single_with_ctx,
    ChainDef, ChainInputs, ChainParams, EvalConfig, PairWCache, ParamSpec, Signature, SingleCtx,
};
use crate::error::ChainError;
use crate::nr::random_unit_vector;
use crate::par;
use crate::report::{ChainTightness, GapStat, Summary, VerdictRecord};
use crate::sampling::{sample_class, substream, EnsembleClass};
use crate::spectral::ScalarFunction;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatchConfig {
    /// Chain ids to evaluate; empty means the full catalog.
    pub chains: Vec<String>,
    pub classes: Vec<EnsembleClass>,
    /// Dimensions to sweep.
    pub ns: Vec<usize>,
    /// Samples per (class, n).
    pub count: usize,
    pub seed: u64,
    pub tol: f64,
    /// α values swept by chains that take an α parameter.
    pub alphas: Vec<f64>,
    /// Functions swept by chains that take an f parameter.
    pub fs: Vec<ScalarFunction>,
    pub eval: EvalConfig,
    /// Retain all verdicts in the result (failures are always retained).
    pub keep_verdicts: bool,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            chains: Vec::new(),
            classes: vec![EnsembleClass::Ginibre],
            ns: vec![4],
            count: 200,
            seed: 1,
            tol: 1e-8,
            alphas: vec![0.5],
            fs: vec![ScalarFunction::square()],
            eval: EvalConfig::default(),
            keep_verdicts: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BatchResult {
    /// All verdicts when `keep_verdicts`, otherwise only failing ones.
    pub verdicts: Vec<VerdictRecord>,
    pub summary: Summary,
}

#[derive(Default)]
struct GapAgg {
    from: String,
    to: String,
    sum: f64,
    min: f64,
}

#[derive(Default)]
struct ChainAgg {
    samples: usize,
    gaps: Vec<GapAgg>,
}

struct TaskOutput {
    kept: Vec<VerdictRecord>,
    total: usize,
    passed: usize,
    worst_slack: f64,
    chains: BTreeMap<String, ChainAgg>,
}

impl TaskOutput {
    fn new() -> Self {
        Self {
            kept: Vec::new(),
            total: 0,
            passed: 0,
            worst_slack: f64::INFINITY,
            chains: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, record: VerdictRecord, keep_all: bool) {
        let v = &record.verdict;
        self.total += 1;
        if v.pass {
            self.passed += 1;
        }
        self.worst_slack = self.worst_slack.min(v.min_slack);
        let agg = self.chains.entry(v.chain_id.clone()).or_default();
        agg.samples += 1;
        for (i, pair) in v.term_values.windows(2).enumerate() {
            let (u, w) = (pair[0].1, pair[1].1);
            let gap = (w - u) / u.abs().max(w.abs()).max(1.0);
            if agg.gaps.len() <= i {
                agg.gaps.push(GapAgg {
                    from: pair[0].0.clone(),
                    to: pair[1].0.clone(),
                    sum: 0.0,
                    min: f64::INFINITY,
                });
            }
            agg.gaps[i].sum += gap;
            agg.gaps[i].min = agg.gaps[i].min.min(gap);
        }
        if keep_all || !v.pass {
            self.kept.push(record);
        }
    }

    fn merge(mut self, other: TaskOutput) -> Self {
        self.kept.extend(other.kept);
        self.total += other.total;
        self.passed += other.passed;
        self.worst_slack = self.worst_slack.min(other.worst_slack);
        for (id, agg) in other.chains {
            let mine = self.chains.entry(id).or_default();
            mine.samples += agg.samples;
            for (i, gap) in agg.gaps.into_iter().enumerate() {
                if mine.gaps.len() <= i {
                    mine.gaps.push(gap);
                } else {
                    mine.gaps[i].sum += gap.sum;
                    mine.gaps[i].min = mine.gaps[i].min.min(gap.min);
                }
            }
        }
        self
    }
}

fn requested_chains(cfg: &BatchConfig) -> Result<Vec<&'static ChainDef>, ChainError> {
    if cfg.chains.is_empty() {
        return Ok(chains::list_chains()
            .iter()
            .map(|c| chains::find_chain(c.id).expect("catalog entry resolves"))
            .collect());
    }
    cfg.chains
        .iter()
        .map(|id| chains::find_chain(id).ok_or_else(|| ChainError::UnknownChain(id.clone())))
        .collect()
}

fn params_label(def: &ChainDef, params: &ChainParams) -> String {
    let alpha = params.alpha.unwrap_or(0.5);
    let f = params.f.clone().unwrap_or_else(ScalarFunction::square);
    match def.params {
        ParamSpec::None => String::new(),
        ParamSpec::Alpha => format!("alpha={alpha}"),
        ParamSpec::Function => format!("f={}", f.describe()),
        ParamSpec::FunctionAlpha => format!("f={} alpha={alpha}", f.describe()),
    }
}

/// Parameter combinations a chain must be evaluated with.
fn param_combos(def: &ChainDef, cfg: &BatchConfig) -> Vec<ChainParams> {
    let alphas: &[f64] = if cfg.alphas.is_empty() {
        &[0.5]
    } else {
        &cfg.alphas
    };
    let default_f = [ScalarFunction::square()];
    let fs: &[ScalarFunction] = if cfg.fs.is_empty() { &default_f } else { &cfg.fs };
    match def.params {
        ParamSpec::None => vec![ChainParams::default()],
        ParamSpec::Alpha => alphas
            .iter()
            .map(|&a| ChainParams {
                f: None,
                alpha: Some(a),
            })
            .collect(),
        ParamSpec::Function => fs
            .iter()
            .map(|f| ChainParams {
                f: Some(f.clone()),
                alpha: None,
            })
            .collect(),
        ParamSpec::FunctionAlpha => {
            let mut out = Vec::with_capacity(alphas.len() * fs.len());
            for f in fs {
                for &a in alphas {
                    out.push(ChainParams {
                        f: Some(f.clone()),
                        alpha: Some(a),
                    });
                }
            }
            out
        }
    }
}

fn gaussian_vector(n: usize, rng: &mut impl rand::Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect()
}

/// Evaluates every requested chain on sample `index` of `(class, n)`.
///
/// Single-signature chains share one sample and one cached context. Pair
/// chains draw the two independent samples `2·index` and `2·index + 1`;
/// positive and Hermitian pair chains see their Gram transforms `A*A`, so any
/// ensemble class yields admissible inputs. Vector-triple chains draw vectors
/// from the same substream family.
fn run_task(
    defs: &[&'static ChainDef],
    class: EnsembleClass,
    n: usize,
    index: usize,
    cfg: &BatchConfig,
) -> Result<TaskOutput, ChainError> {
    let mut out = TaskOutput::new();
    let single = sample_class(class, n, cfg.seed, index);
    let ctx = SingleCtx::new(&single, &cfg.eval);
    let single_digest = digest_inputs(&ChainInputs::Single(single.clone()));

    let needs_pair = defs.iter().any(|d| {
        matches!(
            d.signature,
            Signature::Pair | Signature::PositivePair | Signature::HermitianPair
        )
    });
    // Pair chains draw two independent samples; positive / Hermitian pair
    // chains see their Gram transforms A*A, admissible for every class.
    let pair = needs_pair.then(|| {
        let a = sample_class(class, n, cfg.seed, 2 * index);
        let d = sample_class(class, n, cfg.seed, 2 * index + 1);
        let ga = a.adjoint().mul(&a);
        let gd = d.adjoint().mul(&d);
        (a, d, ga, gd)
    });
    let plain_cache = PairWCache::default();
    let gram_cache = PairWCache::default();
    let (plain_digest, gram_digest) = match &pair {
        Some((a, d, ga, gd)) => (
            digest_inputs(&ChainInputs::Pair(a.clone(), d.clone())),
            digest_inputs(&ChainInputs::Pair(ga.clone(), gd.clone())),
        ),
        None => (String::new(), String::new()),
    };

    for def in defs {
        for params in param_combos(def, cfg) {
            let verdict = match def.signature {
                Signature::Single => evaluate_single_with_ctx(
                    def,
                    &ctx,
                    &params,
                    cfg.tol,
                    &cfg.eval,
                    single_digest.clone(),
                )?,
                Signature::Pair => {
                    let (a, d, _, _) = pair.as_ref().unwrap();
                    evaluate_pair_with_cache(
                        def,
                        a,
                        d,
                        &params,
                        cfg.tol,
                        &cfg.eval,
                        plain_digest.clone(),
                        &plain_cache,
                    )?
                }
                Signature::PositivePair | Signature::HermitianPair => {
                    let (_, _, ga, gd) = pair.as_ref().unwrap();
                    evaluate_pair_with_cache(
                        def,
                        ga,
                        gd,
                        &params,
                        cfg.tol,
                        &cfg.eval,
                        gram_digest.clone(),
                        &gram_cache,
                    )?
                }
                Signature::VectorTriple => {
                    let mut rng = substream(cfg.seed, index);
                    let inputs = ChainInputs::Vectors {
                        x: gaussian_vector(n, &mut rng),
                        e: random_unit_vector(n, &mut rng),
                        y: gaussian_vector(n, &mut rng),
                    };
                    evaluate_chain(def.id, &inputs, &params, cfg.tol, &cfg.eval)?
                }
            };
            out.absorb(
                VerdictRecord {
                    class: class.name().to_string(),
                    n,
                    sample_index: index,
                    params: params_label(def, &params),
                    verdict,
                },
                cfg.keep_verdicts,
            );
        }
    }
    Ok(out)
}

/// Runs the batch; `parallel` selects the rayon path (when the feature is
/// enabled) or the sequential reference path. Results are identical.
pub fn run_batch(cfg: &BatchConfig, parallel: bool) -> Result<BatchResult, ChainError> {
    let defs = requested_chains(cfg)?;
    let mut tasks: Vec<(EnsembleClass, usize, usize)> = Vec::new();
    for &class in &cfg.classes {
        for &n in &cfg.ns {
            for index in 0..cfg.count {
                tasks.push((class, n, index));
            }
        }
    }
    let work = |i: usize| -> Result<TaskOutput, ChainError> {
        let (class, n, index) = tasks[i];
        run_task(&defs, class, n, index, cfg)
    };
    let outputs = if parallel {
        par::map_indexed(tasks.len(), work)
    } else {
        par::map_indexed_seq(tasks.len(), work)
    };
    let mut merged = TaskOutput::new();
    for out in outputs {
        merged = merged.merge(out?);
    }
    // deterministic order independent of scheduling
    merged.kept.sort_by(|a, b| {
        (&a.verdict.chain_id, &a.class, a.n, a.sample_index, &a.params).cmp(&(
            &b.verdict.chain_id,
            &b.class,
            b.n,
            b.sample_index,
            &b.params,
        ))
    });
    let tightness = merged
        .chains
        .iter()
        .map(|(id, agg)| ChainTightness {
            chain_id: id.clone(),
            samples: agg.samples,
            gaps: agg
                .gaps
                .iter()
                .map(|g| GapStat {
                    from: g.from.clone(),
                    to: g.to.clone(),
                    mean: g.sum / agg.samples.max(1) as f64,
                    min: g.min,
                })
                .collect(),
        })
        .collect();
    let summary = Summary {
        total: merged.total,
        passed: merged.passed,
        failed: merged.total - merged.passed,
        worst_slack: if merged.worst_slack.is_finite() {
            merged.worst_slack
        } else {
            0.0
        },
        tightness,
    };
    Ok(BatchResult {
        verdicts: merged.kept,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> BatchConfig {
        BatchConfig {
            chains: vec!["CH-EQV".into(), "CH-KIT05".into(), "CH-BK".into()],
            classes: vec![EnsembleClass::Ginibre],
            ns: vec![2, 3],
            count: 5,
            keep_verdicts: true,
            ..BatchConfig::default()
        }
    }

    #[test]
    fn batch_all_pass_on_small_run() {
        let result = run_batch(&small_cfg(), true).unwrap();
        assert_eq!(result.summary.total, 3 * 2 * 5);
        assert_eq!(result.summary.failed, 0, "{:?}", result.verdicts);
        assert_eq!(result.verdicts.len(), result.summary.total);
    }

    #[test]
    fn parallel_matches_sequential() {
        let cfg = small_cfg();
        let a = run_batch(&cfg, true).unwrap();
        let b = run_batch(&cfg, false).unwrap();
        assert_eq!(a.summary.total, b.summary.total);
        assert_eq!(a.summary.worst_slack, b.summary.worst_slack);
        let slacks_a: Vec<f64> = a.verdicts.iter().map(|r| r.verdict.min_slack).collect();
        let slacks_b: Vec<f64> = b.verdicts.iter().map(|r| r.verdict.min_slack).collect();
        assert_eq!(slacks_a, slacks_b);
    }

    #[test]
    fn full_catalog_applies_to_any_class() {
        let cfg = BatchConfig {
            chains: Vec::new(),
            classes: vec![EnsembleClass::Nilpotent],
            ns: vec![2],
            count: 2,
            ..BatchConfig::default()
        };
        let result = run_batch(&cfg, true).unwrap();
        assert_eq!(result.summary.failed, 0);
        assert!(result.summary.total >= 2 * 38);
    }

    #[test]
    fn unknown_chain_is_an_error() {
        let cfg = BatchConfig {
            chains: vec!["CH-NOPE".into()],
            ..BatchConfig::default()
        };
        assert!(matches!(
            run_batch(&cfg, true),
            Err(ChainError::UnknownChain(_))
        ));
    }

    #[test]
    fn tightness_has_stats_per_gap() {
        let result = run_batch(&small_cfg(), true).unwrap();
        let eqv = result
            .summary
            .tightness
            .iter()
            .find(|t| t.chain_id == "CH-EQV")
            .unwrap();
        assert_eq!(eqv.samples, 10);
        assert!(!eqv.gaps.is_empty());
        for gap in &eqv.gaps {
            assert!(gap.min >= -1e-8);
            assert!(gap.mean >= gap.min);
        }
    }
}
