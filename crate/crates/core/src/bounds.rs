//! Certifiers for the growth, Cauchy, Lipschitz, truncation and
//! Abel-summation inequalities. Each returns a [`BoundReport`] comparing a
//! computed left-hand side with the bound's right-hand side.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::montel::CompactBox;
use crate::polytorus::{evaluate, hp_norm, NormEstimate, PointInPolydisc, QuadratureConfig};
use crate::scalar::Real;
use crate::series::{DirichletPolynomial, HpIndex, MonomialExpansion};

/// Relative tolerance absorbing rounding in every `lhs <= rhs` comparison.
pub const BOUND_REL_TOL: f64 = 1e-12;

/// `1 / ln 2`: with this constant the partial-sum bound `C log x` is at
/// least 1 for every `x >= 2`, which covers `p = 2` where truncation is a
/// contraction.
pub const DEFAULT_TRUNCATION_CONSTANT: f64 = std::f64::consts::LOG2_E;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// `|slack|` within the rounding tolerance of the bound.
    Marginal,
    /// Data only: the constant in the bound is not known for this case.
    Informational,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Marginal => "marginal",
            Verdict::Informational => "info",
        }
    }
}

/// Inputs that produced a report, for the record.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundContext<T> {
    pub p: Option<T>,
    pub norm: Option<T>,
    pub constant: Option<T>,
    pub eps: Option<T>,
    pub l: Option<u64>,
    pub x: Option<T>,
    pub distance: Option<T>,
    pub s: Option<T>,
    pub lambda_b: Option<T>,
    pub observed_constant: Option<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
    pub slack: T,
    pub verdict: Verdict,
    pub context: BoundContext<T>,
}

impl<T: Real> BoundReport<T> {
    pub fn new(lhs: T, rhs: T, context: BoundContext<T>) -> Self {
        let tol = T::lit(BOUND_REL_TOL) * rhs.abs();
        let slack = rhs - lhs;
        let holds = lhs <= rhs + tol;
        let verdict = if slack.abs() < tol {
            Verdict::Marginal
        } else if holds {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            lhs,
            rhs,
            holds,
            slack,
            verdict,
            context,
        }
    }

    fn informational(mut self) -> Self {
        self.verdict = Verdict::Informational;
        self
    }
}

/// Growth factor `exp(||z||_2^2 / (1 - ||z||_inf^2))` of the pointwise bound.
pub fn growth_factor<T: Real>(norm2: T, norm_inf: T) -> Result<T> {
    if !(norm_inf < T::one()) {
        return Err(Error::domain(format!("||z||_inf = {norm_inf} is not < 1")));
    }
    Ok((norm2 * norm2 / (T::one() - norm_inf * norm_inf)).exp())
}

/// `|f(z)| <= exp(||z||_2^2 / (1 - ||z||_inf^2)) ||f||_{H_p}`.
pub fn pointwise_bound<T: Real>(
    f: &MonomialExpansion<T>,
    p: HpIndex<T>,
    z: &PointInPolydisc<T>,
    norm: &NormEstimate<T>,
) -> Result<BoundReport<T>> {
    let factor = growth_factor(z.norm2(), z.norm_inf())?;
    let ctx = BoundContext {
        p: Some(p.value()),
        norm: Some(norm.value),
        ..Default::default()
    };
    Ok(BoundReport::new(evaluate(f, z).norm(), factor * norm.value, ctx))
}

/// One-variable Cauchy estimate `|f(z)| <= ||f||_{H_1} / (1 - |z|)`.
pub fn disc_pointwise_bound<T, F>(f: F, h1_norm: T, z: Complex<T>) -> Result<BoundReport<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    if !(z.norm() < T::one()) {
        return Err(Error::domain(format!("|z| = {} is not < 1", z.norm())));
    }
    if !(h1_norm >= T::zero()) {
        return Err(Error::domain("H_1 norm must be non-negative"));
    }
    let ctx = BoundContext {
        p: Some(T::one()),
        norm: Some(h1_norm),
        ..Default::default()
    };
    Ok(BoundReport::new(f(z).norm(), h1_norm / (T::one() - z.norm()), ctx))
}

/// Two-point estimate inside the circle of radius `s`:
/// `|f(z1) - f(z2)| <= |z1 - z2| s sup_{|w|=s}|f| / ((s - |z1|)(s - |z2|))`.
pub fn disc_two_point_bound<T, F>(
    f: F,
    s: T,
    z1: Complex<T>,
    z2: Complex<T>,
    sup_on_circle: T,
) -> Result<BoundReport<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    if !(s < T::one() && s > T::zero()) {
        return Err(Error::domain(format!("radius s = {s} must lie in (0, 1)")));
    }
    if !(z1.norm() < s && z2.norm() < s) {
        return Err(Error::domain("both points must lie strictly inside the circle of radius s"));
    }
    if !(sup_on_circle >= T::zero()) {
        return Err(Error::domain("sup on the circle must be non-negative"));
    }
    let rhs = (z1 - z2).norm() * s * sup_on_circle / ((s - z1.norm()) * (s - z2.norm()));
    let ctx = BoundContext {
        s: Some(s),
        norm: Some(sup_on_circle),
        ..Default::default()
    };
    Ok(BoundReport::new((f(z1) - f(z2)).norm(), rhs, ctx))
}

/// Bound for `sup |f|` on the `s`-enlargement `B` of a box, from the
/// pointwise bound: every `y in B` has `||y||_inf <= 1 - r + s` and
/// `||y||_2 <= lambda_B = (sum_j (rho_j + s)^2)^{1/2}` (or `s` for the box `{0}`).
/// Returns `(sup bound, lambda_B)`.
pub fn enlarged_sup_bound<T: Real>(k: &CompactBox<T>, s: T, norm: T) -> Result<(T, T)> {
    let r = k.box_distance();
    if !(s > T::zero() && s < r) {
        return Err(Error::domain(format!("enlargement s = {s} must satisfy 0 < s < r = {r}")));
    }
    let lambda_b = if k.dims() == 0 {
        s
    } else {
        k.radii()
            .iter()
            .map(|&rho| (rho + s) * (rho + s))
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    };
    let factor = growth_factor(lambda_b, T::one() - r + s)?;
    Ok((factor * norm, lambda_b))
}

/// Lipschitz estimate on a compact box: for `x in K`, `||y - x||_2 <= s < r`,
/// `|f(x) - f(y)| <= ||x - y||_2 sup_B |f| / (r - s)`.
pub fn lipschitz_bound<T: Real>(
    f: &MonomialExpansion<T>,
    k: &CompactBox<T>,
    s: T,
    x: &PointInPolydisc<T>,
    y: &PointInPolydisc<T>,
    sup_on_b: T,
) -> Result<BoundReport<T>> {
    let r = k.box_distance();
    if !(s > T::zero() && s < r) {
        return Err(Error::domain(format!("need 0 < s < r, got s = {s}, r = {r}")));
    }
    if !k.contains(x) {
        return Err(Error::domain("x is not in the compact box"));
    }
    let dist = x.distance(y);
    if dist > s {
        return Err(Error::domain(format!("||y - x||_2 = {dist} exceeds s = {s}")));
    }
    let ctx = BoundContext {
        distance: Some(r),
        s: Some(s),
        norm: Some(sup_on_b),
        ..Default::default()
    };
    let lhs = (evaluate(f, x) - evaluate(f, y)).norm();
    Ok(BoundReport::new(lhs, dist * sup_on_b / (r - s), ctx))
}

/// `||sum_{n <= x} a_n n^{-s}||_p / ||D||_p` against `C log x`.
///
/// At `p = 2` both norms are exact. For other `p` they are quadrature
/// estimates and the report is informational: it records the observed
/// constant `lhs / log x` only.
pub fn truncation_ratio<T: Real>(
    d: &DirichletPolynomial<T>,
    x: T,
    p: HpIndex<T>,
    constant: T,
    cfg: &QuadratureConfig,
) -> Result<BoundReport<T>> {
    if !(x >= T::lit(2.0)) {
        return Err(Error::domain(format!("truncation bound needs x >= 2, got {x}")));
    }
    let truncated = d.truncate(x)?;
    let (num, den) = if p.is_two() {
        (truncated.h2_norm_exact(), d.h2_norm_exact())
    } else {
        let auto = QuadratureConfig {
            method: crate::polytorus::GridMethod::Auto,
            ..cfg.clone()
        };
        (
            hp_norm(&truncated.lift()?, p, &auto)?.value,
            hp_norm(&d.lift()?, p, &auto)?.value,
        )
    };
    if !(den > T::zero()) {
        return Err(Error::domain("truncation ratio of a zero-norm series"));
    }
    let lhs = num / den;
    let log_x = x.ln();
    let ctx = BoundContext {
        p: Some(p.value()),
        constant: Some(constant),
        x: Some(x),
        norm: Some(den),
        observed_constant: Some(lhs / log_x),
        ..Default::default()
    };
    let report = BoundReport::new(lhs, constant * log_x, ctx);
    Ok(if p.is_two() { report } else { report.informational() })
}

fn log_weight<T: Real>(n: u64, eps: T) -> T {
    let x = T::from_u64_lossy(n);
    x.ln() / x.powf(T::one() + eps)
}

/// `∫_a^inf ln t  t^{-1-eps} dt = a^{-eps} (ln a / eps + 1 / eps^2)`.
fn log_tail_integral<T: Real>(a: u64, eps: T) -> T {
    let a = T::from_u64_lossy(a);
    a.powf(-eps) * (a.ln() / eps + T::one() / (eps * eps))
}

/// Lower and upper bounds for `sum_{n > l} ln n / n^{1+eps}` by integral
/// comparison. The summand decreases for `n >= 3`, so terms below 3 are
/// added explicitly.
pub fn log_tail_sum_bracket<T: Real>(eps: T, l: u64) -> Result<(T, T)> {
    if !(eps > T::zero()) {
        return Err(Error::domain(format!("tail sum diverges for eps = {eps}")));
    }
    let start = l.saturating_add(1).max(3);
    let explicit = (l.saturating_add(1)..start)
        .map(|n| log_weight(n, eps))
        .fold(T::zero(), |a, b| a + b);
    let integral = log_tail_integral(start, eps);
    Ok((explicit + integral, explicit + integral + log_weight(start, eps)))
}

/// Translated tail against the Abel-summation bound:
/// `||sum_{n > l} a_n n^{-eps} n^{-s}||_2 <= eps C M sum_{n > l} ln n / n^{1+eps}`
/// with `M = ||D||_2`. The infinite sum enters through its lower bracket.
pub fn abel_tail_bound<T: Real>(
    d: &DirichletPolynomial<T>,
    eps: T,
    l: u64,
    constant: T,
) -> Result<BoundReport<T>> {
    if !(eps > T::zero()) {
        return Err(Error::domain(format!("Abel tail bound needs eps > 0, got {eps}")));
    }
    if !(constant > T::zero()) {
        return Err(Error::domain(format!("constant C must be positive, got {constant}")));
    }
    let lhs = d.tail_h2_norm(l, eps)?;
    let m = d.h2_norm_exact();
    let (lower, _) = log_tail_sum_bracket(eps, l)?;
    let ctx = BoundContext {
        p: Some(T::lit(2.0)),
        norm: Some(m),
        constant: Some(constant),
        eps: Some(eps),
        l: Some(l),
        ..Default::default()
    };
    Ok(BoundReport::new(lhs, eps * constant * m * lower, ctx))
}
