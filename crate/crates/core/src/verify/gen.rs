//! Deterministic random-instance generation.
//!
//! All profiles emit dyadic rationals, so an instance is representable with
//! the same value on both backends and backend-comparison deltas measure
//! computation error only, never input representation error.

use std::fmt;
use std::str::FromStr;

use crate::scalar::Scalar;
use crate::simplex::BalloonRadii;

use super::rng::SplitMix64;
use super::VerifyError;

/// Sampling profile for balloon radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Radii on the grid k/1024 in [1/2, 2].
    Uniform,
    /// Log-uniform radii snapped to the grid k/1024 in [1/10, 10].
    LogUniform,
    /// Instances with realizability margin in (0, 1/100): one radius is
    /// solved from the margin quadratic, then snapped to a fine dyadic grid.
    NearBoundary,
}

impl Profile {
    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Uniform => "uniform",
            Profile::LogUniform => "log-uniform",
            Profile::NearBoundary => "near-boundary",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Profile::Uniform),
            "log-uniform" => Ok(Profile::LogUniform),
            "near-boundary" => Ok(Profile::NearBoundary),
            other => Err(format!(
                "unknown profile {other:?}; expected uniform, log-uniform or near-boundary"
            )),
        }
    }
}

/// A generated instance with the number of rejected draws it took.
#[derive(Debug, Clone)]
pub struct GeneratedRadii<S> {
    pub radii: BalloonRadii<S>,
    pub rejections: u64,
}

const DRAW_BUDGET: u64 = 1_000_000;
const NEAR_BOUNDARY_GRID: i64 = 1 << 22;

/// Deterministically sample realizable balloon radii for an n-simplex.
///
/// Uniform and log-uniform rejection-sample until the realizability margin is
/// positive; near-boundary targets a margin in (0, 1/100). The draw budget
/// bounds total work.
pub fn random_radii<S: Scalar>(
    dim: usize,
    seed: u64,
    profile: Profile,
) -> Result<GeneratedRadii<S>, VerifyError> {
    if dim < 2 {
        return Err(VerifyError::BadConfig(format!(
            "dimension {dim} is below 2"
        )));
    }
    if profile == Profile::NearBoundary && dim == 2 {
        // Every positive triple is realizable at n=2; the margin has no root.
        return Err(VerifyError::UnsupportedProfile {
            dim,
            profile: profile.as_str(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut rejections = 0u64;
    let mut draws = 0u64;
    loop {
        draws += 1;
        if draws > DRAW_BUDGET {
            return Err(VerifyError::SamplingBudget {
                dim,
                profile: profile.as_str(),
                budget: DRAW_BUDGET,
            });
        }
        let candidate = match profile {
            Profile::Uniform => draw_grid::<S>(&mut rng, dim + 1, 512, 2048),
            Profile::LogUniform => draw_log::<S>(&mut rng, dim + 1),
            Profile::NearBoundary => match draw_near_boundary::<S>(&mut rng, dim) {
                Some(r) => r,
                None => {
                    rejections += 1;
                    continue;
                }
            },
        };
        let radii = BalloonRadii::new(candidate).expect("generated radii are positive");
        let margin = radii.realizability().margin;
        let accept = match profile {
            Profile::Uniform | Profile::LogUniform => margin.is_positive(),
            Profile::NearBoundary => {
                margin.is_positive() && margin < S::from_ratio(1, 100)
            }
        };
        if accept {
            return Ok(GeneratedRadii { radii, rejections });
        }
        rejections += 1;
    }
}

fn draw_grid<S: Scalar>(rng: &mut SplitMix64, count: usize, lo: i64, hi: i64) -> Vec<S> {
    (0..count)
        .map(|_| S::from_ratio(rng.next_in(lo, hi), 1024))
        .collect()
}

fn draw_log<S: Scalar>(rng: &mut SplitMix64, count: usize) -> Vec<S> {
    (0..count)
        .map(|_| {
            let u = rng.next_unit();
            let v = 10f64.powf(2.0 * u - 1.0);
            let k = ((v * 1024.0).round() as i64).clamp(103, 10240);
            S::from_ratio(k, 1024)
        })
        .collect()
}

/// Solve the margin quadratic for the first radius given the others, back the
/// reciprocal off to hit a target margin in (0, 1/100), and snap to the fine
/// dyadic grid. Returns None when the draw must be rejected (no real root, or
/// the snapped value lands outside the window).
fn draw_near_boundary<S: Scalar>(rng: &mut SplitMix64, dim: usize) -> Option<Vec<S>> {
    let n = dim as f64;
    let others_k: Vec<i64> = (0..dim).map(|_| rng.next_in(512, 2048)).collect();
    let target_margin = 0.0005 + rng.next_unit() * 0.009;

    let (mut recip_sum, mut recip_sq_sum) = (0.0f64, 0.0f64);
    for &k in &others_k {
        let x = k as f64 / 1024.0;
        recip_sum += 1.0 / x;
        recip_sq_sum += 1.0 / (x * x);
    }
    // margin(t) = -(n-2) t^2 + 2 recip_sum t + (recip_sum^2 - (n-1) recip_sq_sum)
    // with t the reciprocal of the solved radius; take the larger root of
    // margin(t) = target.
    let inner = (n - 1.0) * recip_sum * recip_sum
        - (n - 2.0) * (n - 1.0) * recip_sq_sum
        - (n - 2.0) * target_margin;
    if inner <= 0.0 {
        return None;
    }
    let t = (recip_sum + inner.sqrt()) / (n - 2.0);
    if t <= 0.0 {
        return None;
    }
    let k0 = ((1.0 / t) * NEAR_BOUNDARY_GRID as f64).ceil() as i64;
    if k0 <= 0 {
        return None;
    }
    let mut radii = Vec::with_capacity(dim + 1);
    radii.push(S::from_ratio(k0, NEAR_BOUNDARY_GRID));
    radii.extend(others_k.iter().map(|&k| S::from_ratio(k, 1024)));
    Some(radii)
}
