use std::collections::BTreeSet;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::diagonal::{diameter, largest_cluster, median, tail_half};
use super::family::{DirichletCertificate, ExtractionReport, LimitCandidate, Probe, StageCertificate};
use crate::bounds::{log_tail_sum_bracket, BoundContext, BoundReport, DEFAULT_TRUNCATION_CONSTANT};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::series::DirichletPolynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DirichletMontelConfig {
    /// Translation `a_n -> a_n n^{-eps}`; must be positive.
    pub eps: f64,
    pub eta: f64,
    /// Constant of the partial-sum estimate `||sum_{n<=x} a_n n^{-s}|| <= C ln x ||D||`.
    pub constant: f64,
    /// Largest tail cut searched for.
    pub max_tail_cut: u64,
}

impl Default for DirichletMontelConfig {
    fn default() -> Self {
        Self {
            eps: 0.5,
            eta: 0.2,
            constant: DEFAULT_TRUNCATION_CONSTANT,
            max_tail_cut: 1 << 40,
        }
    }
}

/// Smallest `l >= 1` with `eps C M sum_{n > l} ln n / n^{1+eps} < eta`,
/// using the upper bracket of the sum.
pub fn minimal_tail_cut<T: Real>(eps: T, eta: T, norm: T, constant: T, max_cut: u64) -> Result<u64> {
    if !(eps > T::zero()) {
        return Err(Error::domain(format!("translation must be positive, got eps = {eps}")));
    }
    if !(eta > T::zero()) {
        return Err(Error::domain(format!("eta must be positive, got {eta}")));
    }
    if !(constant > T::zero()) {
        return Err(Error::domain(format!("constant C must be positive, got {constant}")));
    }
    let below = |l: u64| -> Result<bool> {
        let (_, upper) = log_tail_sum_bracket(eps, l)?;
        Ok(eps * constant * norm * upper < eta)
    };
    if below(1)? {
        return Ok(1);
    }
    let mut hi = 2u64;
    while !below(hi)? {
        if hi >= max_cut {
            return Err(Error::Resource(format!(
                "tail cut for eps = {eps}, eta = {eta}, M = {norm} exceeds {max_cut}"
            )));
        }
        hi = hi.saturating_mul(2).min(max_cut);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn coefficientwise_median<T: Real>(members: &[&DirichletPolynomial<T>]) -> DirichletPolynomial<T> {
    let support: BTreeSet<u64> = members.iter().flat_map(|d| d.terms().keys().copied()).collect();
    let terms = support.into_iter().map(|n| {
        let mut re: Vec<T> = members.iter().map(|d| d.coefficient(n).re).collect();
        let mut im: Vec<T> = members.iter().map(|d| d.coefficient(n).im).collect();
        (n, Complex::new(median(&mut re), median(&mut im)))
    });
    DirichletPolynomial::from_terms(terms).expect("medians of finite values are finite")
}

fn max_pairwise<T: Real>(members: &[DirichletPolynomial<T>]) -> T {
    let mut best = T::zero();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            best = best.max(a.h2_distance(b));
        }
    }
    best
}

/// Translated-norm extraction on a finite Dirichlet family.
///
/// Picks the tail cut `l0` so every translated tail beyond it is below
/// `eta`, clusters the coefficients `a_n`, `n <= l0`, one index at a time
/// with pairwise gaps below `eta / l0` (indices where the whole family
/// vanishes are skipped), and certifies that the translated members of
/// the selected tail are pairwise within `3 eta` in the H2 norm. A family
/// without a tight enough pair is reported with the chain achieved so far.
pub fn dirichlet_montel<T: Real>(
    family: &[DirichletPolynomial<T>],
    cfg: &DirichletMontelConfig,
) -> Result<ExtractionReport<T>> {
    if family.is_empty() {
        return Err(Error::domain("Dirichlet extraction needs a nonempty family"));
    }
    let eps = T::lit(cfg.eps);
    let eta = T::lit(cfg.eta);
    if !(eps > T::zero()) {
        return Err(Error::domain(format!(
            "translation must be positive, got eps = {eps}; without it the family need not converge"
        )));
    }
    let norm_bound = family.iter().map(|d| d.h2_norm_exact()).fold(T::zero(), T::max);
    let l0 = minimal_tail_cut(eps, eta, norm_bound, T::lit(cfg.constant), cfg.max_tail_cut)?;
    let mut tail_max = T::zero();
    for d in family {
        tail_max = tail_max.max(d.tail_h2_norm(l0, eps)?);
    }
    let gap = eta / T::from_u64_lossy(l0);
    let half_gap = gap / T::lit(2.0);

    let support: BTreeSet<u64> = family
        .iter()
        .flat_map(|d| d.terms().keys().copied())
        .filter(|&n| n <= l0)
        .collect();
    let mut survivors: Vec<usize> = (0..family.len()).collect();
    let mut stages = Vec::new();
    let mut exhausted_at = None;
    for (j, &n) in support.iter().enumerate() {
        let values: Vec<Complex<T>> = survivors.iter().map(|&i| family[i].coefficient(n)).collect();
        let (center, members) = largest_cluster(&values, half_gap, true);
        if members.len() < 2 {
            exhausted_at = Some(j);
            break;
        }
        let kept: Vec<Complex<T>> = members.iter().map(|&k| values[k]).collect();
        survivors = members.iter().map(|&k| survivors[k]).collect();
        stages.push(StageCertificate {
            stage: j,
            probe: Probe::Coefficient(n),
            tolerance: gap,
            diameter: diameter(&kept),
            representative: values[center],
            survivors: survivors.len(),
        });
    }
    let mut report = ExtractionReport::from_stages(survivors, stages, exhausted_at);

    let tail = tail_half(&report.selected_indices).to_vec();
    let translated: Vec<DirichletPolynomial<T>> = tail
        .iter()
        .map(|&i| family[i].translate(eps))
        .collect::<Result<_>>()?;
    let untranslated: Vec<DirichletPolynomial<T>> = tail.iter().map(|&i| family[i].clone()).collect();
    let translated_max = max_pairwise(&translated);
    let untranslated_max = max_pairwise(&untranslated);
    let three_eta = T::lit(3.0) * eta;
    report.cauchy_modulus = translated_max;
    report.certified = Some(translated_max <= three_eta);

    let members: Vec<&DirichletPolynomial<T>> = tail.iter().map(|&i| &family[i]).collect();
    let limit = coefficientwise_median(&members);
    let ctx = BoundContext {
        p: Some(T::lit(2.0)),
        norm: Some(norm_bound),
        eps: Some(eps),
        l: Some(l0),
        ..Default::default()
    };
    report.limit_check = Some(BoundReport::new(limit.h2_norm_exact(), norm_bound + T::lit(0.5), ctx));
    report.limit_norm_bound = Some(norm_bound + T::lit(0.5));
    report.limit = Some(LimitCandidate::Dirichlet(limit));
    report.dirichlet = Some(DirichletCertificate {
        eps,
        eta,
        norm_bound,
        tail_cut: l0,
        tail_max,
        gap_threshold: gap,
        translated_max,
        untranslated_max,
    });
    Ok(report)
}
