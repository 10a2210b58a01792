//! SINR criterion, interference bounds, and feasibility regions.
//!
//! With uniform transmit power P, path-loss gain d^-gamma, and noise eta,
//! a transmission from s to r succeeds when
//!
//! ```text
//! SINR = P d(s,r)^-gamma / (sum_i P d(i,r)^-gamma + eta) >= beta
//! ```
//!
//! For the address-based schedules the concurrent transmitters form
//! concentric rings around any receiver, which yields closed-form
//! interference bounds and, from them, transmit-power thresholds and
//! feasibility boundaries on D/d and beta. All bounds assume gamma > 2 so
//! the ring series converges.

use std::f64::consts::FRAC_1_SQRT_2;

use thiserror::Error;

use crate::lattice::{LatticeKind, Point};
use crate::scheduler::InterferenceK;

/// Default truncation depth for the worst-case ring sums. Ring n
/// contributes Theta(n^(1-gamma)) terms, so the tail beyond R rings is
/// below the integral bound R^(2-gamma)/(gamma-2); at 200 rings and
/// gamma > 2.5 the relative truncation error is far below 1e-6.
pub const DEFAULT_INTERFERENCE_RINGS: u32 = 200;

/// Relative margin applied above the open power threshold when simulating:
/// P = threshold * (1 + POWER_MARGIN).
pub const POWER_MARGIN: f64 = 1e-3;

#[derive(Debug, Error, PartialEq)]
pub enum SinrError {
    #[error("SINR threshold beta must be positive, got {0}")]
    InvalidBeta(f64),
    #[error("path-loss exponent gamma must exceed 2, got {0}")]
    InvalidGamma(f64),
    #[error("noise power eta must be nonnegative, got {0}")]
    InvalidEta(f64),
    #[error("neighbor distances must satisfy 0 < d_min <= d_max, got d_min={0} d_max={1}")]
    InvalidDistances(f64, f64),
    #[error("transmit power must be positive, got {0}")]
    InvalidPower(f64),
    #[error("transmitter and receiver positions coincide; channel gain is undefined")]
    CoincidentNodes,
    #[error("ring count must be at least 1")]
    InvalidRings,
    #[error("regular-placement geometry produced a nonpositive receiver distance")]
    DegenerateGeometry,
}

/// Parameters of the SINR analysis: threshold beta, path-loss exponent
/// gamma > 2, noise eta, hop separation k, minimum and maximum neighbor
/// distances d_min <= d_max, and uniform transmit power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrParams {
    beta: f64,
    gamma: f64,
    eta: f64,
    k: InterferenceK,
    d_min: f64,
    d_max: f64,
    power: f64,
}

impl SinrParams {
    pub fn new(
        beta: f64,
        gamma: f64,
        eta: f64,
        k: InterferenceK,
        d_min: f64,
        d_max: f64,
        power: f64,
    ) -> Result<Self, SinrError> {
        if !(beta > 0.0) {
            return Err(SinrError::InvalidBeta(beta));
        }
        if !(gamma > 2.0) {
            return Err(SinrError::InvalidGamma(gamma));
        }
        if !(eta >= 0.0) {
            return Err(SinrError::InvalidEta(eta));
        }
        if !(d_min > 0.0 && d_min <= d_max) {
            return Err(SinrError::InvalidDistances(d_min, d_max));
        }
        if !(power > 0.0) {
            return Err(SinrError::InvalidPower(power));
        }
        Ok(SinrParams { beta, gamma, eta, k, d_min, d_max, power })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn k(&self) -> InterferenceK {
        self.k
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn d_max(&self) -> f64 {
        self.d_max
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    /// Same parameters with a different transmit power (e.g. one obtained
    /// from [`power_threshold`]).
    pub fn with_power(self, power: f64) -> Result<Self, SinrError> {
        SinrParams::new(self.beta, self.gamma, self.eta, self.k, self.d_min, self.d_max, power)
    }

    /// SINR at `receiver` for a transmission from `sender`, with the given
    /// concurrent interferer positions.
    pub fn sinr_at(
        &self,
        receiver: Point,
        sender: Point,
        interferers: &[Point],
    ) -> Result<f64, SinrError> {
        sinr(receiver, sender, interferers, self.power, self.gamma, self.eta)
    }
}

/// SINR of a single reception: `P d(s,r)^-gamma / (sum P d(i,r)^-gamma + eta)`.
///
/// Standalone form of the criterion; the path-loss model itself poses no
/// restriction on gamma beyond positivity.
pub fn sinr(
    receiver: Point,
    sender: Point,
    interferers: &[Point],
    power: f64,
    gamma: f64,
    eta: f64,
) -> Result<f64, SinrError> {
    let signal = power * gain(sender, receiver, gamma)?;
    let mut interference = 0.0;
    for i in interferers {
        interference += power * gain(*i, receiver, gamma)?;
    }
    Ok(signal / (interference + eta))
}

fn gain(from: Point, to: Point, gamma: f64) -> Result<f64, SinrError> {
    let d2 = from.distance_squared(to);
    if d2 == 0.0 {
        return Err(SinrError::CoincidentNodes);
    }
    Ok(d2.powf(-gamma / 2.0))
}

/// Lower bound on received signal strength: `P / d_max^gamma`.
pub fn min_signal(params: &SinrParams) -> f64 {
    params.power / params.d_max.powf(params.gamma)
}

/// Closed-form upper bound on hexagonal interference at a receiver,
/// `(6P / ((k+1)d)^gamma) (2/sqrt(3))^gamma (gamma-1)/(gamma-2)`.
pub fn hex_interference_bound(params: &SinrParams) -> f64 {
    let l = (params.k.get() as f64 + 1.0) * params.d_min;
    let series = (params.gamma - 1.0) / (params.gamma - 2.0);
    6.0 * params.power / l.powf(params.gamma)
        * (2.0 / 3f64.sqrt()).powf(params.gamma)
        * series
}

/// The square-grid geometry factor nu: `1/nu = 1/sqrt(2) (1 - 1/(k+1))`.
pub fn square_nu(k: InterferenceK) -> f64 {
    let k1 = k.get() as f64 + 1.0;
    1.0 / (FRAC_1_SQRT_2 - FRAC_1_SQRT_2 / k1)
}

/// The square-grid geometry factor phi:
/// `1/phi = sqrt(5)/sqrt(8) - (3/sqrt(40)) / (k+1)`.
pub fn square_phi(k: InterferenceK) -> f64 {
    let k1 = k.get() as f64 + 1.0;
    1.0 / ((5f64 / 8.0).sqrt() - 3.0 / 40f64.sqrt() / k1)
}

/// `alpha = nu^gamma + phi^gamma` for the square-grid bound.
pub fn square_alpha(k: InterferenceK, gamma: f64) -> f64 {
    square_nu(k).powf(gamma) + square_phi(k).powf(gamma)
}

/// Closed-form upper bound on square-grid interference at a receiver,
/// `(4P / ((k+1)d)^gamma) alpha (gamma-1)/(gamma-2)`.
pub fn square_interference_bound(params: &SinrParams) -> f64 {
    let l = (params.k.get() as f64 + 1.0) * params.d_min;
    let series = (params.gamma - 1.0) / (params.gamma - 2.0);
    4.0 * params.power / l.powf(params.gamma) * square_alpha(params.k, params.gamma) * series
}

/// Closed-form interference bound for either topology.
pub fn interference_bound(kind: LatticeKind, params: &SinrParams) -> f64 {
    match kind {
        LatticeKind::Hexagonal => hex_interference_bound(params),
        LatticeKind::SquareGrid => square_interference_bound(params),
    }
}

/// Worst-case ring sum of regular-placement interference, truncated at
/// `rings` concentric rings.
///
/// Concurrent transmitters sit on concentric rings of the coset lattice
/// with spacing `l = (k+1) d_min`; the receiver sits up to `d_min` from
/// the ring center, so each term uses the pessimistic distance
/// `s_{i,n} - d`. Hexagonal rings carry n transmitters per hextant with
/// `s_{i,n} = l sqrt(n^2 + (i-1)^2 - (i-1)n)`; square rings carry 2n per
/// quadrant with `s_{i,n} = l sqrt(n^2 + (i-1)^2/2 - (i-1)n)`.
pub fn exact_regular_interference(
    kind: LatticeKind,
    params: &SinrParams,
    rings: u32,
) -> Result<f64, SinrError> {
    if rings == 0 {
        return Err(SinrError::InvalidRings);
    }
    let d = params.d_min;
    let l = (params.k.get() as f64 + 1.0) * d;
    let gamma = params.gamma;
    let mut total = 0.0;
    match kind {
        LatticeKind::Hexagonal => {
            for n in 1..=rings as u64 {
                let nf = n as f64;
                for i in 1..=n {
                    let m = (i - 1) as f64;
                    let s = l * (nf * nf + m * m - m * nf).sqrt();
                    total += term(s, d, gamma, params.power)?;
                }
            }
            Ok(6.0 * total)
        }
        LatticeKind::SquareGrid => {
            for n in 1..=rings as u64 {
                let nf = n as f64;
                for i in 1..=2 * n {
                    let m = (i - 1) as f64;
                    let s = l * (nf * nf + m * m / 2.0 - m * nf).sqrt();
                    total += term(s, d, gamma, params.power)?;
                }
            }
            Ok(4.0 * total)
        }
    }
}

fn term(s: f64, d: f64, gamma: f64, power: f64) -> Result<f64, SinrError> {
    let dist = s - d;
    if dist <= 0.0 {
        return Err(SinrError::DegenerateGeometry);
    }
    Ok(power / dist.powf(gamma))
}

/// Feasibility boundaries of the SINR parameter space for a fixed
/// `(kind, beta, gamma, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityRegion {
    /// Supremum of D/d for which a satisfying power exists. The
    /// configuration is feasible iff this exceeds 1.
    pub dd_max: f64,
    /// Largest admissible SINR threshold at D = d.
    pub beta_max: f64,
    /// Power threshold at a concrete (d, D, eta), when known and feasible.
    pub p_min: Option<f64>,
}

impl FeasibilityRegion {
    /// Nonempty region: some D/d >= 1 admits a finite power.
    pub fn is_feasible(&self) -> bool {
        self.dd_max > 1.0
    }
}

/// Largest D/d ratio admitting a satisfying power at the given threshold.
///
/// Hexagonal: `(sqrt(3)(k+1)/2) ((gamma-2)/(6 beta (gamma-1)))^(1/gamma)`;
/// square grid: `(k+1) ((gamma-2)/(4 alpha beta (gamma-1)))^(1/gamma)`.
pub fn dd_max(kind: LatticeKind, beta: f64, gamma: f64, k: InterferenceK) -> f64 {
    let k1 = k.get() as f64 + 1.0;
    match kind {
        LatticeKind::Hexagonal => {
            3f64.sqrt() * k1 / 2.0 * ((gamma - 2.0) / (6.0 * beta * (gamma - 1.0))).powf(1.0 / gamma)
        }
        LatticeKind::SquareGrid => {
            let alpha = square_alpha(k, gamma);
            k1 * ((gamma - 2.0) / (4.0 * alpha * beta * (gamma - 1.0))).powf(1.0 / gamma)
        }
    }
}

/// Largest admissible SINR threshold (attained at D = d).
///
/// Hexagonal: `(sqrt(3)(k+1)/2)^gamma (gamma-2)/(6(gamma-1))`;
/// square grid: `(k+1)^gamma (gamma-2)/(4 alpha (gamma-1))`.
pub fn beta_max(kind: LatticeKind, gamma: f64, k: InterferenceK) -> f64 {
    let k1 = k.get() as f64 + 1.0;
    match kind {
        LatticeKind::Hexagonal => {
            (3f64.sqrt() * k1 / 2.0).powf(gamma) * (gamma - 2.0) / (6.0 * (gamma - 1.0))
        }
        LatticeKind::SquareGrid => {
            k1.powf(gamma) * (gamma - 2.0) / (4.0 * square_alpha(k, gamma) * (gamma - 1.0))
        }
    }
}

/// Feasibility region for `(kind, beta, gamma, k)`. Infeasible
/// configurations come back with `dd_max <= 1` rather than as errors;
/// `p_min` is left unset because it additionally depends on (d, D, eta).
pub fn feasibility(
    kind: LatticeKind,
    beta: f64,
    gamma: f64,
    k: InterferenceK,
) -> Result<FeasibilityRegion, SinrError> {
    if !(beta > 0.0) {
        return Err(SinrError::InvalidBeta(beta));
    }
    if !(gamma > 2.0) {
        return Err(SinrError::InvalidGamma(gamma));
    }
    Ok(FeasibilityRegion {
        dd_max: dd_max(kind, beta, gamma, k),
        beta_max: beta_max(kind, gamma, k),
        p_min: None,
    })
}

/// Minimum transmit power satisfying the SINR criterion at every receiver
/// under worst-case geometry, or `None` when no finite power suffices.
///
/// Hexagonal: `beta eta D^gamma / (1 - 6 beta (2D/(sqrt(3)(k+1)d))^gamma
/// (gamma-1)/(gamma-2))`, and the square-grid analogue with `4 alpha
/// (D/((k+1)d))^gamma`. The threshold is an open bound: simulations apply
/// [`POWER_MARGIN`] on top.
pub fn power_threshold(kind: LatticeKind, params: &SinrParams) -> Option<f64> {
    let gamma = params.gamma;
    let k1 = params.k.get() as f64 + 1.0;
    let series = (gamma - 1.0) / (gamma - 2.0);
    let ratio = params.d_max / (k1 * params.d_min);
    let loss = match kind {
        LatticeKind::Hexagonal => {
            6.0 * params.beta * (2.0 * ratio / 3f64.sqrt()).powf(gamma) * series
        }
        LatticeKind::SquareGrid => {
            4.0 * square_alpha(params.k, gamma) * params.beta * ratio.powf(gamma) * series
        }
    };
    let denominator = 1.0 - loss;
    if denominator <= 0.0 {
        return None;
    }
    Some(params.beta * params.eta * params.d_max.powf(gamma) / denominator)
}
