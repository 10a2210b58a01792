//! Randomly perturbed physical deployments and full-frame SINR evaluation.
//!
//! Deployments normalize the maximum neighbor distance D to 1 and control
//! placement irregularity through the target ratio D/d. Each node draws
//! `u ~ Uniform[0, D/d - 1]` and lands on a random point of the circle of
//! diameter `u/(2+u)` around its embedded lattice position. The lattice
//! spacing is `1 - 2 r_max` with `r_max = (D/d - 1)/(2 (D/d + 1))` — the
//! largest possible displacement radius — so two adjacent nodes displaced
//! toward the worst case meet the D = 1 budget exactly.
//!
//! Evaluation walks every slot of a schedule, treats every in-extent
//! lattice neighbor of each transmitter as a receiver, and reports
//! `rho = SINR / beta` per reception together with Min and Avg aggregates.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::lattice::{embed, neighbors_in, LatticeCoord, LatticeKind, NetworkExtent, Point};
use crate::scheduler::{concurrent_set, InterferenceK, Schedule};
use crate::sinr::{beta_max, dd_max, SinrParams};

/// Identity of the deployment RNG, recorded in output metadata so results
/// can be reproduced across implementations.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Error, PartialEq)]
pub enum DeploymentError {
    #[error("D/d target must be at least 1, got {0}")]
    InvalidDdTarget(f64),
    #[error("operating-point fraction f must lie in [0, 1], got {0}")]
    InvalidFraction(f64),
    #[error("path-loss exponent gamma must exceed 2, got {0}")]
    InvalidGamma(f64),
    #[error("operating point is degenerate: no feasible D/d at this configuration")]
    InfeasibleOperatingPoint,
    #[error("schedule kind {schedule} does not match deployment kind {deployment}")]
    KindMismatch { schedule: LatticeKind, deployment: LatticeKind },
    #[error("schedule is missing node {0} of the deployment extent")]
    UnscheduledNode(LatticeCoord),
}

/// Largest displacement radius of the placement law at a given D/d target,
/// in units of D: `(dd - 1) / (2 (dd + 1))`.
pub fn max_displacement_radius(dd_target: f64) -> f64 {
    (dd_target - 1.0) / (2.0 * (dd_target + 1.0))
}

/// Lattice nodes with perturbed physical positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    kind: LatticeKind,
    extent: NetworkExtent,
    dd_target: f64,
    seed: u64,
    nominal_spacing: f64,
    positions: BTreeMap<LatticeCoord, Point>,
}

impl Deployment {
    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn extent(&self) -> NetworkExtent {
        self.extent
    }

    pub fn dd_target(&self) -> f64 {
        self.dd_target
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn nominal_spacing(&self) -> f64 {
        self.nominal_spacing
    }

    pub fn position(&self, p: LatticeCoord) -> Option<Point> {
        self.positions.get(&p).copied()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Positions in coordinate order.
    pub fn iter(&self) -> impl Iterator<Item = (LatticeCoord, Point)> + '_ {
        self.positions.iter().map(|(c, p)| (*c, *p))
    }

    /// Realized (min, max) Euclidean distance over all lattice-neighbor
    /// pairs of the extent. The maximum is guaranteed <= 1; the minimum is
    /// reported as the realized spacing floor.
    pub fn neighbor_distance_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for (c, pos) in self.iter() {
            for n in neighbors_in(self.kind, c, &self.extent) {
                // Count each edge once.
                if n <= c {
                    continue;
                }
                let d = pos.distance(self.positions[&n]);
                range = Some(match range {
                    None => (d, d),
                    Some((lo, hi)) => (lo.min(d), hi.max(d)),
                });
            }
        }
        range
    }
}

/// Generate a perturbed deployment. Deterministic given the seed: nodes
/// are visited in row-major order and each draws its radius variable u
/// followed by its angle from a ChaCha8 stream.
pub fn generate(
    kind: LatticeKind,
    extent: &NetworkExtent,
    dd_target: f64,
    seed: u64,
) -> Result<Deployment, DeploymentError> {
    if !(dd_target >= 1.0) {
        return Err(DeploymentError::InvalidDdTarget(dd_target));
    }
    let spacing = 1.0 - 2.0 * max_displacement_radius(dd_target);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = BTreeMap::new();
    for p in extent.iter() {
        let u: f64 = rng.random::<f64>() * (dd_target - 1.0);
        let angle = rng.random::<f64>() * std::f64::consts::TAU;
        let radius = u / (2.0 * (2.0 + u));
        let base = embed(kind, p, spacing).expect("spacing is positive for dd_target >= 1");
        positions.insert(
            p,
            Point::new(base.x + radius * angle.cos(), base.y + radius * angle.sin()),
        );
    }
    Ok(Deployment { kind, extent: *extent, dd_target, seed, nominal_spacing: spacing, positions })
}

/// One receiver's outcome within a slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoRecord {
    pub slot: u32,
    pub tx: LatticeCoord,
    pub rx: LatticeCoord,
    pub sinr: f64,
    pub rho: f64,
}

/// Per-receiver rho = SINR/beta values over a whole frame, with Min and
/// Avg aggregates. An empty record set (no transmitter has any in-extent
/// receiver) is flagged by `min_rho`/`avg_rho` being `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoReport {
    pub records: Vec<RhoRecord>,
    pub min_rho: Option<f64>,
    pub avg_rho: Option<f64>,
    /// Number of records with rho < 1, i.e. receptions below threshold.
    pub violations: usize,
}

impl RhoReport {
    fn from_records(records: Vec<RhoRecord>) -> Self {
        let min_rho = records.iter().map(|r| r.rho).fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |m| m.min(v)))
        });
        let avg_rho = if records.is_empty() {
            None
        } else {
            Some(neumaier_sum(records.iter().map(|r| r.rho)) / records.len() as f64)
        };
        let violations = records.iter().filter(|r| r.rho < 1.0).count();
        RhoReport { records, min_rho, avg_rho, violations }
    }

    pub fn is_flagged_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Avg(rho) / Min(rho), the uniformity of the operating point.
    pub fn avg_over_min(&self) -> Option<f64> {
        Some(self.avg_rho? / self.min_rho?)
    }
}

/// Compensated summation keeps the average independent of record count
/// rounding drift; order is fixed by the record list.
fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

/// Evaluate SINR over a full frame of the schedule on the deployment.
///
/// For each slot, every scheduled transmitter of the slot transmits from
/// its perturbed position; every in-extent lattice neighbor of a
/// transmitter is evaluated as its receiver against interference from all
/// other transmitters of the slot.
pub fn evaluate(
    deployment: &Deployment,
    schedule: &Schedule,
    params: &SinrParams,
) -> Result<RhoReport, DeploymentError> {
    if schedule.kind() != deployment.kind() {
        return Err(DeploymentError::KindMismatch {
            schedule: schedule.kind(),
            deployment: deployment.kind(),
        });
    }
    let extent = deployment.extent();
    for p in extent.iter() {
        if schedule.slot_of(p).is_none() {
            return Err(DeploymentError::UnscheduledNode(p));
        }
    }

    let gamma = params.gamma();
    let power = params.power();
    let mut records = Vec::new();
    for slot in 0..schedule.frame_length() {
        let transmitters =
            concurrent_set(schedule, slot, &extent).expect("slot index is within the frame");
        let tx_positions: Vec<Point> = transmitters
            .iter()
            .map(|t| deployment.position(*t).expect("extent nodes are all placed"))
            .collect();
        for (ti, &tx) in transmitters.iter().enumerate() {
            for rx in neighbors_in(deployment.kind(), tx, &extent) {
                let rx_pos = deployment.position(rx).expect("extent nodes are all placed");
                let signal =
                    power * rx_pos.distance_squared(tx_positions[ti]).powf(-gamma / 2.0);
                let mut interference = 0.0;
                for (oi, other) in tx_positions.iter().enumerate() {
                    if oi != ti {
                        interference +=
                            power * rx_pos.distance_squared(*other).powf(-gamma / 2.0);
                    }
                }
                let sinr = signal / (interference + params.eta());
                records.push(RhoRecord { slot, tx, rx, sinr, rho: sinr / params.beta() });
            }
        }
    }
    Ok(RhoReport::from_records(records))
}

/// An f-parameterized operating point inside the feasibility region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Target D/d ratio: `1 + f ((D/d)_max - 1)` at the scaled threshold.
    pub dd: f64,
    /// SINR threshold `f * beta_max`.
    pub beta: f64,
}

/// Select the operating point at fraction `f` of the feasibility region:
/// `beta = f beta_max` and `dd = 1 + f ((D/d)_max(beta) - 1)`.
///
/// `f = 0` degenerates to the regular, zero-threshold point; `f = 1` sits
/// on the region boundary (where the required power diverges).
pub fn operating_point(
    kind: LatticeKind,
    gamma: f64,
    k: InterferenceK,
    f: f64,
) -> Result<OperatingPoint, DeploymentError> {
    if !(gamma > 2.0) {
        return Err(DeploymentError::InvalidGamma(gamma));
    }
    if !(0.0..=1.0).contains(&f) {
        return Err(DeploymentError::InvalidFraction(f));
    }
    if f == 0.0 {
        return Ok(OperatingPoint { dd: 1.0, beta: 0.0 });
    }
    let beta = f * beta_max(kind, gamma, k);
    let boundary = dd_max(kind, beta, gamma, k);
    // At f = 1 the boundary is exactly 1; tolerate roundoff there.
    if !boundary.is_finite() || boundary < 1.0 - 1e-9 {
        return Err(DeploymentError::InfeasibleOperatingPoint);
    }
    Ok(OperatingPoint { dd: (1.0 + f * (boundary - 1.0)).max(1.0), beta })
}

/// Nearly square extent holding (close to) the requested node count:
/// exactly n nodes when n factors into a pair with aspect ratio at most 2,
/// otherwise the closest rounded square.
pub fn extent_for_node_count(n: usize) -> NetworkExtent {
    if n == 0 {
        return NetworkExtent::from_size(0, 0);
    }
    let mut w = (n as f64).sqrt().floor() as usize;
    while w > 1 && n % w != 0 {
        w -= 1;
    }
    let h = n / w;
    if h <= 2 * w {
        NetworkExtent::from_size(w as i64, h as i64)
    } else {
        let w = (n as f64).sqrt().round().max(1.0) as i64;
        let h = ((n as f64) / w as f64).round().max(1.0) as i64;
        NetworkExtent::from_size(w, h)
    }
}
