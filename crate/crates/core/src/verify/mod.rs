//! Randomized and targeted verification of the metric identities and the
//! inequality chain R >= sqrt(2n/(n-1)) * rho >= n * r.
//!
//! Per-instance checks are pure functions; campaigns distribute instances
//! over workers with per-instance seeds derived from (campaign seed,
//! dimension, index), so summaries are bit-identical regardless of worker
//! count or scheduling.

mod campaign;
mod embed;
mod gen;
mod rng;

pub use campaign::{run_campaign, CampaignConfig, CampaignSummary, DimSummary};
pub use embed::{embed, CircumData, PointConfiguration};
pub use gen::{random_radii, GeneratedRadii, Profile};
pub use rng::{instance_seed, SplitMix64};

use thiserror::Error;

use crate::metrics::{
    circumradius_sq_closed, edge_inradius_sq_closed, inradius, og_distance_sq,
    volume_sq_from_radii, MetricsError, SimplexMetrics,
};
use crate::scalar::{NumericError, Rational, Scalar, FLOAT_ABS_TOL, FLOAT_REL_TOL};
use crate::simplex::{BalloonRadii, SimplexError, SymmetricSums};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("gram matrix is not positive semidefinite: residual {residual} at pivot {pivot}")]
    NotEmbeddable { residual: f64, pivot: usize },
    #[error("embedded distance ({i},{j}) = {actual} does not reproduce {expected}")]
    DistanceMismatch {
        i: usize,
        j: usize,
        expected: f64,
        actual: f64,
    },
    #[error("circumcenter system is singular")]
    SingularSystem,
    #[error("sampling budget of {budget} draws exhausted (dim {dim}, profile {profile})")]
    SamplingBudget {
        dim: usize,
        profile: &'static str,
        budget: u64,
    },
    #[error("profile {profile} is not defined for dimension {dim}")]
    UnsupportedProfile { dim: usize, profile: &'static str },
    #[error("bad configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Everything checked on a single instance. Slacks are nonnegative exactly
/// when the corresponding inequality holds.
#[derive(Debug, Clone)]
pub struct InstanceReport<S> {
    pub radii: BalloonRadii<S>,
    pub sums: SymmetricSums<S>,
    pub edge_inradius_sq: S,
    pub circumradius_sq: S,
    pub volume_sq: S,
    pub og_sq: S,
    /// R^2 - (2n/(n-1)) rho^2; lower half of the chain.
    pub chain_lower_slack: S,
    /// (n+1)^2 |OG|^2 - chain_lower_slack; upper half of the chain.
    pub chain_upper_slack: S,
    /// discriminant - 32n(n-1); the sharp lower bound attained by equal radii.
    pub discriminant_slack: S,
    /// R - n*r; float backend only.
    pub euler_slack: Option<S>,
    /// sqrt(2n/(n-1)) rho - n*r; float backend only.
    pub edge_euler_slack: Option<S>,
    /// Largest relative disagreement across computation routes, when the
    /// cross-check ran.
    pub oracle_delta: Option<f64>,
    /// Human-readable violation descriptions with full exact values; empty
    /// when every inequality holds.
    pub violations: Vec<String>,
}

impl<S: Scalar> InstanceReport<S> {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// True when `slack` is negative beyond what the backend tolerates at the
/// given magnitude scale.
fn slack_violates<S: Scalar>(slack: &S, scale: f64) -> bool {
    if !slack.is_negative() {
        return false;
    }
    if S::EXACT {
        return true;
    }
    slack.to_f64() < -(FLOAT_ABS_TOL + FLOAT_REL_TOL * scale.abs().max(1.0))
}

/// Check the full inequality chain on one realizable instance.
pub fn check_chain<S: Scalar>(radii: &BalloonRadii<S>) -> Result<InstanceReport<S>, VerifyError> {
    let n = radii.dim();
    let sums = radii.symmetric_sums();
    let edge_inradius_sq = edge_inradius_sq_closed(&sums)?;
    let circumradius_sq = circumradius_sq_closed(&sums)?;
    let edges = radii.edge_lengths();
    let og_sq = og_distance_sq(&circumradius_sq, &edges)?;
    let volume_sq = volume_sq_from_radii(radii, &edge_inradius_sq)?;

    let ratio_coeff = S::from_ratio(2 * n as i64, n as i64 - 1);
    let chain_lower_slack =
        circumradius_sq.clone() - ratio_coeff.clone() * edge_inradius_sq.clone();
    let np1_sq = S::from_int(((n + 1) * (n + 1)) as i64);
    let chain_upper_slack = np1_sq * og_sq.clone() - chain_lower_slack.clone();
    let discriminant_slack =
        sums.discriminant() - S::from_int((32 * n * (n - 1)) as i64);

    let (euler_slack, edge_euler_slack) = match inradius(&edges) {
        Ok(r) => {
            let circ = circumradius_sq.try_sqrt()?;
            let scaled_rho = (ratio_coeff * edge_inradius_sq.clone()).try_sqrt()?;
            let nr = S::from_int(n as i64) * r;
            (
                Some(circ - nr.clone()),
                Some(scaled_rho - nr),
            )
        }
        Err(MetricsError::Numeric(NumericError::ExactSqrt)) => (None, None),
        Err(e) => return Err(e.into()),
    };

    let scale = circumradius_sq.to_f64();
    let mut violations = Vec::new();
    if slack_violates(&chain_lower_slack, scale) {
        violations.push(format!(
            "chain lower bound violated: R^2 - (2n/(n-1)) rho^2 = {chain_lower_slack} < 0 \
             for radii {:?}",
            radii.radii()
        ));
    }
    if slack_violates(&chain_upper_slack, scale) {
        violations.push(format!(
            "chain upper bound violated: (n+1)^2 |OG|^2 - lower slack = {chain_upper_slack} < 0 \
             for radii {:?}",
            radii.radii()
        ));
    }
    if slack_violates(&discriminant_slack, sums.discriminant().to_f64()) {
        violations.push(format!(
            "discriminant floor violated: discriminant - 32n(n-1) = {discriminant_slack} < 0 \
             for radii {:?}",
            radii.radii()
        ));
    }
    let linear_scale = scale.abs().sqrt();
    if let Some(s) = &euler_slack {
        if slack_violates(s, linear_scale) {
            violations.push(format!(
                "Euler bound violated: R - n r = {s} < 0 for radii {:?}",
                radii.radii()
            ));
        }
    }
    if let Some(s) = &edge_euler_slack {
        if slack_violates(s, linear_scale) {
            violations.push(format!(
                "edge-inradius Euler bound violated: sqrt(2n/(n-1)) rho - n r = {s} < 0 \
                 for radii {:?}",
                radii.radii()
            ));
        }
    }

    Ok(InstanceReport {
        radii: radii.clone(),
        sums,
        edge_inradius_sq,
        circumradius_sq,
        volume_sq,
        og_sq,
        chain_lower_slack,
        chain_upper_slack,
        discriminant_slack,
        euler_slack,
        edge_euler_slack,
        oracle_delta: None,
        violations,
    })
}

/// The bounds used inside the chain's proof, each as a signed slack.
#[derive(Debug, Clone)]
pub struct ProofBoundReport<S> {
    pub dim: usize,
    /// 4 M^2 P^2/(n+1)^2 - recip_margin * radius_margin >= 0
    /// (power-mean/Cauchy product bound).
    pub product_bound_slack: S,
    /// discriminant - 32n(n-1) >= 0.
    pub discriminant_slack: S,
    /// Denominator-cleared form of the chain's right half.
    pub cleared_rhs_slack: S,
    /// Quadratic lower-bound function at M*P; defined for n >= 4.
    pub quadratic_bound_slack: Option<S>,
    pub violations: Vec<String>,
}

impl<S: Scalar> ProofBoundReport<S> {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify the proof-internal bounds on one instance's symmetric sums.
pub fn check_proof_bounds<S: Scalar>(sums: &SymmetricSums<S>) -> ProofBoundReport<S> {
    let n = sums.dim as i64;
    let mp = sums.radius_sum.clone() * sums.recip_sum.clone();
    let mp_sq = mp.clone() * mp.clone();

    let product_bound_slack = S::from_int(4) * mp_sq.clone()
        / S::from_int((n + 1) * (n + 1))
        - sums.recip_margin.clone() * sums.radius_margin.clone();

    let discriminant_slack =
        sums.discriminant() - S::from_int(32 * n * (n - 1));

    // n(n+2) cross^2 + 32n(n-1)
    //   >= [(n^2+10n-8) M^2 - (n-1)(n-2)(n-4) N] * recip_margin.
    let cleared_rhs_slack = S::from_int(n * (n + 2)) * sums.cross.clone() * sums.cross.clone()
        + S::from_int(32 * n * (n - 1))
        - (S::from_int(n * n + 10 * n - 8)
            * sums.radius_sum.clone()
            * sums.radius_sum.clone()
            - S::from_int((n - 1) * (n - 2) * (n - 4)) * sums.radius_sq_sum.clone())
            * sums.recip_margin.clone();

    // For n >= 4, with c = n^2+5n-26 > 0:
    // [(c MP - (n+2)(n-3)(n+1)^2)^2 - 4 (3n-10)^2 (n+1)^4] / c >= 0,
    // tight at MP = (n+1)^2.
    let quadratic_bound_slack = (n >= 4).then(|| {
        let c = n * n + 5 * n - 26;
        let np1_sq = (n + 1) * (n + 1);
        let shift = S::from_int(c) * mp - S::from_int((n + 2) * (n - 3) * np1_sq);
        let drop = S::from_int(4 * (3 * n - 10) * (3 * n - 10) * np1_sq * np1_sq);
        (shift.clone() * shift - drop) / S::from_int(c)
    });

    let mut violations = Vec::new();
    let scale = mp_sq.to_f64();
    if slack_violates(&product_bound_slack, scale) {
        violations.push(format!(
            "product bound violated: slack {product_bound_slack}"
        ));
    }
    if slack_violates(&discriminant_slack, scale) {
        violations.push(format!(
            "discriminant floor violated: slack {discriminant_slack}"
        ));
    }
    if slack_violates(&cleared_rhs_slack, scale * scale.max(1.0)) {
        violations.push(format!(
            "cleared right-hand bound violated: slack {cleared_rhs_slack}"
        ));
    }
    if let Some(s) = &quadratic_bound_slack {
        if slack_violates(s, scale * scale.max(1.0)) {
            violations.push(format!("quadratic bound violated: slack {s}"));
        }
    }

    ProofBoundReport {
        dim: sums.dim,
        product_bound_slack,
        discriminant_slack,
        cleared_rhs_slack,
        quadratic_bound_slack,
        violations,
    }
}

/// Largest relative disagreement across all computation routes for one
/// instance, including the coordinate-embedding oracle on the float backend.
pub fn route_cross_check<S: Scalar>(radii: &BalloonRadii<S>) -> Result<f64, VerifyError> {
    let metrics = SimplexMetrics::compute(radii)?;
    let mut delta = metrics.route_delta;
    if !S::EXACT {
        let float_radii = BalloonRadii::new(
            radii.radii().iter().map(|x| x.to_f64()).collect::<Vec<_>>(),
        )?;
        let points = embed(&float_radii.edge_lengths())?;
        let data = points.circumdata()?;
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
        delta = delta
            .max(rel(data.circumradius_sq, metrics.circumradius_sq.to_f64()))
            .max(rel(data.og_sq, metrics.og_sq.to_f64()));
    }
    Ok(delta)
}

/// Relative deviation of every float-backend metric from its exact value.
#[derive(Debug, Clone)]
pub struct BackendDelta {
    pub max_rel_delta: f64,
    /// True when the instance sits close enough to the degeneracy boundary
    /// that float error is expected to be amplified; deviations on such
    /// instances are reported, not failed.
    pub ill_conditioned: bool,
    pub per_metric: Vec<(&'static str, f64)>,
}

/// Compute all metrics on both backends and report the deviations. The exact
/// radii must be float-representable (the generator profiles guarantee this).
pub fn compare_backends(radii: &BalloonRadii<Rational>) -> Result<BackendDelta, VerifyError> {
    let float_radii = BalloonRadii::new(
        radii.radii().iter().map(|x| x.to_f64()).collect::<Vec<_>>(),
    )?;
    let exact = SimplexMetrics::compute(radii)?;
    let float = SimplexMetrics::compute(&float_radii)?;

    let rel = |e: &Rational, f: f64| {
        let ef = e.to_f64();
        (ef - f).abs() / ef.abs().max(f.abs()).max(1.0)
    };
    let per_metric = vec![
        ("rho_sq", rel(&exact.edge_inradius_sq, float.edge_inradius_sq)),
        ("R_sq", rel(&exact.circumradius_sq, float.circumradius_sq)),
        ("V_sq", rel(&exact.volume_sq, float.volume_sq)),
        ("og_sq", rel(&exact.og_sq, float.og_sq)),
        ("ratio_R_rho_sq", rel(&exact.ratio_sq, float.ratio_sq)),
    ];
    let max_rel_delta = per_metric
        .iter()
        .map(|(_, d)| *d)
        .fold(0.0f64, f64::max);
    let margin = radii.realizability().margin;
    let ill_conditioned =
        margin.to_f64() < 0.02 * radii.symmetric_sums().recip_sq_sum.to_f64().max(1.0);
    Ok(BackendDelta {
        max_rel_delta,
        ill_conditioned,
        per_metric,
    })
}
