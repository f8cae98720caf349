use std::collections::BTreeSet;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::compact::{build_eps_net, CompactBox, DEFAULT_NET_CAP};
use super::dense::dense_enumerate_in;
use super::family::{ExtractionReport, Holomorphic, LimitCandidate, Probe, StageCertificate};
use crate::bounds::{BoundContext, BoundReport};
use crate::error::{Error, Result};
use crate::polytorus::{hp_norm, PointInPolydisc, QuadratureConfig};
use crate::scalar::Real;
use crate::series::{HpIndex, MonomialExpansion};

/// Cluster tolerances for the successive refinement stages (0-based).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
#[derive(Default)]
pub enum ToleranceSchedule {
    /// `1/k` at stage `k = 1, 2, ...`.
    #[default]
    Harmonic,
    /// `start * ratio^k`.
    Geometric { start: f64, ratio: f64 },
    /// Explicit list; the last entry repeats.
    Explicit { values: Vec<f64> },
}


impl ToleranceSchedule {
    pub fn tolerance(&self, stage: usize) -> f64 {
        match self {
            ToleranceSchedule::Harmonic => 1.0 / (stage as f64 + 1.0),
            ToleranceSchedule::Geometric { start, ratio } => start * ratio.powi(stage as i32),
            ToleranceSchedule::Explicit { values } => values
                .get(stage)
                .or(values.last())
                .copied()
                .unwrap_or(1.0),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            ToleranceSchedule::Harmonic => true,
            ToleranceSchedule::Geometric { start, ratio } => {
                *start > 0.0 && *ratio > 0.0 && *ratio <= 1.0
            }
            ToleranceSchedule::Explicit { values } => {
                !values.is_empty() && values.iter().all(|v| *v > 0.0)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid tolerance schedule {self:?}")))
        }
    }
}

/// Largest set of values within `radius` of one of them (strictly within
/// when `strict`); ties go to the lowest centre. Returns the centre and the
/// member positions in increasing order.
pub(crate) fn largest_cluster<T: Real>(
    values: &[Complex<T>],
    radius: T,
    strict: bool,
) -> (usize, Vec<usize>) {
    let mut best: (usize, Vec<usize>) = (0, Vec::new());
    for (i, &center) in values.iter().enumerate() {
        let members: Vec<usize> = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| {
                let d = (v - center).norm();
                if strict {
                    d < radius
                } else {
                    d <= radius
                }
            })
            .map(|(k, _)| k)
            .collect();
        if members.len() > best.1.len() {
            best = (i, members);
        }
    }
    best
}

pub(crate) fn diameter<T: Real>(values: &[Complex<T>]) -> T {
    let mut d = T::zero();
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            d = d.max((*a - *b).norm());
        }
    }
    d
}

/// Refines the family point by point: at stage `j` the survivors are cut
/// down to the largest cluster of `{f_i(x_j)}` of radius `schedule(j)`, so
/// the kept values have diameter at most `2 schedule(j)`. Stops early,
/// reporting the chain so far, when no cluster of two members remains.
pub fn diagonal_extract<T, H>(
    family: &[H],
    dense_points: &[PointInPolydisc<T>],
    schedule: &ToleranceSchedule,
) -> Result<ExtractionReport<T>>
where
    T: Real,
    H: Holomorphic<T>,
{
    if family.is_empty() {
        return Err(Error::domain("diagonal extraction needs a nonempty family"));
    }
    if dense_points.is_empty() {
        return Err(Error::domain("diagonal extraction needs at least one dense point"));
    }
    schedule.validate()?;
    let mut survivors: Vec<usize> = (0..family.len()).collect();
    let mut stages = Vec::new();
    let mut exhausted_at = None;
    for (j, x) in dense_points.iter().enumerate() {
        let tolerance = T::lit(schedule.tolerance(j));
        let values: Vec<Complex<T>> = survivors.iter().map(|&i| family[i].eval(x.coords())).collect();
        let (center, members) = largest_cluster(&values, tolerance, false);
        if members.len() < 2 {
            exhausted_at = Some(j);
            break;
        }
        let kept: Vec<Complex<T>> = members.iter().map(|&k| values[k]).collect();
        survivors = members.iter().map(|&k| survivors[k]).collect();
        stages.push(StageCertificate {
            stage: j,
            probe: Probe::DensePoint(j),
            tolerance,
            diameter: diameter(&kept),
            representative: values[center],
            survivors: survivors.len(),
        });
    }
    Ok(ExtractionReport::from_stages(survivors, stages, exhausted_at))
}

/// The later half of an index list, keeping at least two entries when there
/// are two.
pub fn tail_half(indices: &[usize]) -> &[usize] {
    &indices[indices.len().saturating_sub(1) / 2..]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AuditConfig {
    /// Random points of the box checked in addition to the net.
    pub samples: usize,
    #[serde(skip)]
    pub seed: u64,
    pub net_cap: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            net_cap: DEFAULT_NET_CAP,
        }
    }
}

/// Largest `sup_K |f_i - f_j|` over pairs from the tail half of `indices`,
/// taken over an `eps/4`-net of `k` and a random audit sample. Returns
/// whether it is at most `eps`, and the achieved value.
pub fn certify_uniform_cauchy<T, H>(
    family: &[H],
    indices: &[usize],
    k: &CompactBox<T>,
    eps: T,
    audit: &AuditConfig,
) -> Result<(bool, T)>
where
    T: Real,
    H: Holomorphic<T>,
{
    if !(eps > T::zero()) {
        return Err(Error::domain(format!("Cauchy target must be positive, got {eps}")));
    }
    if let Some(&bad) = indices.iter().find(|&&i| i >= family.len()) {
        return Err(Error::domain(format!("index {bad} is outside the family")));
    }
    let tail = tail_half(indices);
    if tail.len() < 2 {
        return Ok((true, T::zero()));
    }
    let members: Vec<&H> = tail.iter().map(|&i| &family[i]).collect();
    let spread = |z: &[Complex<T>]| -> T {
        let values: Vec<Complex<T>> = members.iter().map(|f| f.eval(z)).collect();
        diameter(&values)
    };
    let net = build_eps_net(k, eps / T::lit(4.0), audit.net_cap)?;
    let mut achieved = net.max_over_centers(spread);
    let mut rng = ChaCha8Rng::seed_from_u64(audit.seed);
    for _ in 0..audit.samples {
        let z = k.sample(&mut rng);
        achieved = achieved.max(spread(z.coords()));
    }
    Ok((achieved <= eps, achieved))
}

/// Membership certificate for a limit candidate: `||f||_p <= M + 1/2`.
pub fn limit_norm_check<T: Real>(
    limit: &MonomialExpansion<T>,
    p: HpIndex<T>,
    sup_norm: T,
    cfg: &QuadratureConfig,
) -> Result<BoundReport<T>> {
    if !(sup_norm >= T::zero()) {
        return Err(Error::domain("family norm bound M must be non-negative"));
    }
    let est = hp_norm(limit, p, cfg)?;
    let ctx = BoundContext {
        p: Some(p.value()),
        norm: Some(sup_norm),
        ..Default::default()
    };
    Ok(BoundReport::new(est.value, sup_norm + T::lit(0.5), ctx))
}

pub(crate) fn median<T: Real>(values: &mut [T]) -> T {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = values.len();
    if n == 0 {
        T::zero()
    } else if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / T::lit(2.0)
    }
}

/// Coefficient-wise median (real and imaginary parts separately) of the
/// given expansions, the limit candidate of an extracted tail.
pub fn coefficientwise_median<T: Real>(members: &[&MonomialExpansion<T>]) -> MonomialExpansion<T> {
    let support: BTreeSet<_> = members.iter().flat_map(|f| f.terms().keys().cloned()).collect();
    let terms = support.into_iter().map(|alpha| {
        let mut re: Vec<T> = members.iter().map(|f| f.coefficient(&alpha).re).collect();
        let mut im: Vec<T> = members.iter().map(|f| f.coefficient(&alpha).im).collect();
        (alpha, Complex::new(median(&mut re), median(&mut im)))
    });
    MonomialExpansion::from_terms(terms).expect("medians of finite values are finite")
}

/// Settings for the end-to-end extraction on a monomial family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MontelConfig {
    /// Radii of the compact box the convergence is certified on.
    pub radii: Vec<f64>,
    /// Uniform Cauchy target on the box.
    pub eps: f64,
    pub dense_points: usize,
    pub schedule: ToleranceSchedule,
    /// Smallest family index admitted to the certified tail.
    pub tail_from: usize,
    #[serde(skip)]
    pub p: f64,
    pub audit: AuditConfig,
}

impl Default for MontelConfig {
    fn default() -> Self {
        Self {
            radii: vec![0.5],
            eps: 1e-3,
            dense_points: 32,
            schedule: ToleranceSchedule::Harmonic,
            tail_from: 0,
            p: 2.0,
            audit: AuditConfig::default(),
        }
    }
}

/// Diagonal extraction on the dense points of the configured box, uniform
/// Cauchy certification of the selected tail, and the limit-norm check for
/// its coefficient-wise median.
pub fn montel_extract<T: Real>(
    family: &[MonomialExpansion<T>],
    cfg: &MontelConfig,
    quadrature: &QuadratureConfig,
) -> Result<ExtractionReport<T>> {
    let k = CompactBox::new(cfg.radii.iter().map(|&r| T::lit(r)).collect())?;
    let p = HpIndex::new(T::lit(cfg.p))?;
    let dense = dense_enumerate_in(cfg.dense_points, &k);
    let mut report = diagonal_extract(family, &dense, &cfg.schedule)?;

    let certified_tail: Vec<usize> = report
        .selected_indices
        .iter()
        .copied()
        .filter(|&i| i >= cfg.tail_from)
        .collect();
    let (ok, achieved) = certify_uniform_cauchy(family, &certified_tail, &k, T::lit(cfg.eps), &cfg.audit)?;
    report.cauchy_modulus = achieved;
    report.certified = Some(ok && certified_tail.len() >= 2);

    let tail = tail_half(&certified_tail);
    let members: Vec<&MonomialExpansion<T>> = tail.iter().map(|&i| &family[i]).collect();
    let limit = coefficientwise_median(&members);
    let mut sup_norm = T::zero();
    for f in family {
        sup_norm = sup_norm.max(hp_norm(f, p, quadrature)?.value);
    }
    report.limit_check = Some(limit_norm_check(&limit, p, sup_norm, quadrature)?);
    report.limit_norm_bound = Some(sup_norm + T::lit(0.5));
    report.limit = Some(LimitCandidate::Monomial(limit));
    Ok(report)
}
