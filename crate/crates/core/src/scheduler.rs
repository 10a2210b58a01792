//! Message-free slot assignment under the k-hop interference model.
//!
//! Every node derives its transmit slot from its own lattice address and the
//! interference parameter k alone, so no coordination messages are needed.
//! Frame lengths are `(k+1)^2` for hexagonal networks and
//! `(k+1) * ceil((k+1)/2)` for square grids, independent of network size.
//! [`verify_schedule`] checks any assignment exhaustively against the k-hop
//! rule (plus primary constraints for k = 1) and the one-slot-per-node
//! coverage condition.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::interference::nodes_conflict;
use crate::lattice::{neighbors_in, LatticeCoord, LatticeKind, NetworkExtent};

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("interference parameter k must be at least 1")]
    InvalidK,
    #[error("slot {slot} is outside the frame of length {frame_length}")]
    SlotOutOfRange { slot: u32, frame_length: u32 },
}

/// Minimum hop separation k >= 1 required between a receiver and every
/// concurrent transmitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InterferenceK(u32);

impl InterferenceK {
    pub fn new(k: u32) -> Result<Self, ScheduleError> {
        if k == 0 {
            Err(ScheduleError::InvalidK)
        } else {
            Ok(InterferenceK(k))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for InterferenceK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Frame length of the periodic schedule: `(k+1)^2` slots for hexagonal
/// networks, `(k+1) * ceil((k+1)/2)` for square grids.
pub fn frame_length(kind: LatticeKind, k: InterferenceK) -> u32 {
    let k1 = k.get() + 1;
    match kind {
        LatticeKind::Hexagonal => k1 * k1,
        LatticeKind::SquareGrid => k1 * k1.div_ceil(2),
    }
}

/// Slot of a hexagonal-lattice node: `t = (x mod k+1) + (k+1)(y mod k+1)`.
///
/// `mod` is the nonnegative remainder, so the assignment extends to
/// negative addresses and is invariant under translation by `k+1` along
/// either axis.
pub fn hex_slot(p: LatticeCoord, k: InterferenceK) -> u32 {
    let k1 = k.get() as i64 + 1;
    let u = p.x.rem_euclid(k1);
    let v = p.y.rem_euclid(k1);
    (u + k1 * v) as u32
}

/// Slot of a square-grid node.
///
/// With `h = ceil((k+1)/2)`, row bands of height h alternate an x-shift of
/// h: `b = floor(y/h) mod 2`, `u = (x + b*h) mod (k+1)`, `v = y mod h`,
/// `t = u + (k+1)*v`. Floor division and nonnegative remainders keep the
/// assignment consistent on negative addresses.
pub fn square_slot(p: LatticeCoord, k: InterferenceK) -> u32 {
    let k1 = k.get() as i64 + 1;
    let h = (k1 + 1) / 2;
    let b = p.y.div_euclid(h).rem_euclid(2);
    let u = (p.x + b * h).rem_euclid(k1);
    let v = p.y.rem_euclid(h);
    (u + k1 * v) as u32
}

/// Slot of a node under either topology.
pub fn slot(kind: LatticeKind, p: LatticeCoord, k: InterferenceK) -> u32 {
    match kind {
        LatticeKind::Hexagonal => hex_slot(p, k),
        LatticeKind::SquareGrid => square_slot(p, k),
    }
}

/// A periodic slot assignment over a finite extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    kind: LatticeKind,
    k: InterferenceK,
    frame_length: u32,
    slots: BTreeMap<LatticeCoord, u32>,
}

impl Schedule {
    /// Wrap an explicit assignment (for example one read back from a file).
    /// The frame length is always the closed-form value for `(kind, k)`.
    pub fn from_assignments(
        kind: LatticeKind,
        k: InterferenceK,
        slots: BTreeMap<LatticeCoord, u32>,
    ) -> Self {
        Schedule { kind, k, frame_length: frame_length(kind, k), slots }
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn k(&self) -> InterferenceK {
        self.k
    }

    pub fn frame_length(&self) -> u32 {
        self.frame_length
    }

    pub fn slot_of(&self, p: LatticeCoord) -> Option<u32> {
        self.slots.get(&p).copied()
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Assignment entries in coordinate order.
    pub fn iter(&self) -> impl Iterator<Item = (LatticeCoord, u32)> + '_ {
        self.slots.iter().map(|(p, s)| (*p, *s))
    }
}

/// Apply the address-based slot rule to every node of the extent.
pub fn build_schedule(kind: LatticeKind, k: InterferenceK, extent: &NetworkExtent) -> Schedule {
    let slots = extent.iter().map(|p| (p, slot(kind, p, k))).collect();
    Schedule::from_assignments(kind, k, slots)
}

/// All extent nodes assigned the given slot.
pub fn concurrent_set(
    schedule: &Schedule,
    slot: u32,
    extent: &NetworkExtent,
) -> Result<Vec<LatticeCoord>, ScheduleError> {
    if slot >= schedule.frame_length() {
        return Err(ScheduleError::SlotOutOfRange { slot, frame_length: schedule.frame_length() });
    }
    Ok(extent.iter().filter(|p| schedule.slot_of(*p) == Some(slot)).collect())
}

/// A single defect found by [`verify_schedule`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A node of the extent has no slot.
    MissingNode { node: LatticeCoord },
    /// A node's slot falls outside `[0, frame_length)`.
    SlotOutOfRange { node: LatticeCoord, slot: u32 },
    /// Two concurrent transmitters leave some receiver of one of them
    /// closer than k hops to the other.
    KHopConflict {
        slot: u32,
        a: LatticeCoord,
        b: LatticeCoord,
        receiver: LatticeCoord,
        distance: u64,
    },
    /// k = 1 only: two adjacent nodes share a slot, so any link choice
    /// shares an endpoint.
    PrimaryConflict { slot: u32, a: LatticeCoord, b: LatticeCoord },
}

impl Violation {
    /// Short machine-readable reason tag.
    pub fn reason(&self) -> String {
        match self {
            Violation::MissingNode { .. } => "missing-node".into(),
            Violation::SlotOutOfRange { slot, .. } => format!("slot-out-of-range({slot})"),
            Violation::KHopConflict { receiver, distance, .. } => {
                format!("k-hop(receiver {receiver} at {distance} hops)")
            }
            Violation::PrimaryConflict { .. } => "primary(adjacent)".into(),
        }
    }

    pub fn nodes(&self) -> (Option<LatticeCoord>, Option<LatticeCoord>) {
        match self {
            Violation::MissingNode { node } | Violation::SlotOutOfRange { node, .. } => {
                (Some(*node), None)
            }
            Violation::KHopConflict { a, b, .. } | Violation::PrimaryConflict { a, b, .. } => {
                (Some(*a), Some(*b))
            }
        }
    }

    pub fn slot(&self) -> Option<u32> {
        match self {
            Violation::MissingNode { .. } => None,
            Violation::SlotOutOfRange { slot, .. }
            | Violation::KHopConflict { slot, .. }
            | Violation::PrimaryConflict { slot, .. } => Some(*slot),
        }
    }
}

/// Result of an exhaustive schedule check. Empty violation list means the
/// schedule is collision-free and covers the extent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check a schedule against the k-hop interference model and coverage.
///
/// For every pair of distinct same-slot transmitters, every extent neighbor
/// of either one is a potential receiver and must be at least k hops from
/// the other transmitter. For k = 1 the primary constraint (no shared link
/// endpoint, i.e. the transmitters are not adjacent) is checked explicitly.
/// Coverage requires every extent node to hold exactly one in-range slot.
pub fn verify_schedule(schedule: &Schedule, extent: &NetworkExtent) -> VerificationReport {
    let mut violations = Vec::new();
    let kind = schedule.kind();
    let k = schedule.k();
    let frame = schedule.frame_length();

    let mut by_slot: BTreeMap<u32, Vec<LatticeCoord>> = BTreeMap::new();
    for p in extent.iter() {
        match schedule.slot_of(p) {
            None => violations.push(Violation::MissingNode { node: p }),
            Some(s) if s >= frame => {
                violations.push(Violation::SlotOutOfRange { node: p, slot: s })
            }
            Some(s) => by_slot.entry(s).or_default().push(p),
        }
    }

    for (&slot, concurrent) in &by_slot {
        for (i, &a) in concurrent.iter().enumerate() {
            for &b in &concurrent[i + 1..] {
                if k.get() == 1 {
                    if crate::lattice::graph_distance(kind, a, b) == 1 {
                        violations.push(Violation::PrimaryConflict { slot, a, b });
                    }
                } else if nodes_conflict(kind, k, extent, a, b) {
                    let (receiver, distance) = worst_receiver(kind, extent, a, b);
                    violations.push(Violation::KHopConflict { slot, a, b, receiver, distance });
                }
            }
        }
    }

    VerificationReport { violations }
}

/// Receiver of either transmitter closest to the other one, for reporting.
fn worst_receiver(
    kind: LatticeKind,
    extent: &NetworkExtent,
    a: LatticeCoord,
    b: LatticeCoord,
) -> (LatticeCoord, u64) {
    let mut worst: Option<(LatticeCoord, u64)> = None;
    for (tx, other) in [(a, b), (b, a)] {
        for r in neighbors_in(kind, tx, extent) {
            let d = crate::lattice::graph_distance(kind, r, other);
            if worst.map_or(true, |(_, best)| d < best) {
                worst = Some((r, d));
            }
        }
    }
    worst.expect("conflicting pair always has at least one receiver")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::graph_distance;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn c(x: i64, y: i64) -> LatticeCoord {
        LatticeCoord::new(x, y)
    }

    fn k(v: u32) -> InterferenceK {
        InterferenceK::new(v).unwrap()
    }

    #[test]
    fn k_must_be_positive() {
        assert_eq!(InterferenceK::new(0), Err(ScheduleError::InvalidK));
        assert_eq!(k(3).get(), 3);
    }

    #[test]
    fn hex_slot_examples() {
        assert_eq!(hex_slot(c(0, 0), k(3)), 0);
        assert_eq!(hex_slot(c(2, 1), k(3)), 6);
        assert_eq!(hex_slot(c(-1, 0), k(2)), 2);
    }

    #[test]
    fn square_slot_examples() {
        assert_eq!(square_slot(c(0, 0), k(3)), 0);
        assert_eq!(square_slot(c(1, 2), k(3)), 3);
        assert_eq!(square_slot(c(0, 1), k(3)), 4);
    }

    #[test]
    fn square_k1_is_a_checkerboard() {
        for p in NetworkExtent::square(-4, 4).iter() {
            assert_eq!(square_slot(p, k(1)) as i64, (p.x + p.y).rem_euclid(2));
        }
    }

    #[test]
    fn frame_length_formulas() {
        assert_eq!(frame_length(LatticeKind::Hexagonal, k(2)), 9);
        assert_eq!(frame_length(LatticeKind::SquareGrid, k(3)), 8);
        assert_eq!(frame_length(LatticeKind::SquareGrid, k(2)), 6);
    }

    #[test]
    fn build_schedule_slots_in_range() {
        let extent = NetworkExtent::square(0, 7);
        for kind in [LatticeKind::Hexagonal, LatticeKind::SquareGrid] {
            for kk in 1..=4 {
                let s = build_schedule(kind, k(kk), &extent);
                assert_eq!(s.len(), extent.len());
                assert!(s.iter().all(|(_, slot)| slot < s.frame_length()));
            }
        }
    }

    #[test]
    fn every_slot_used_when_extent_spans_a_section() {
        // Hexagonal: one full rhombus of side k; square: one full shifted
        // rectangle. Both must exercise the whole frame.
        for kk in 1..=5 {
            let hex = build_schedule(
                LatticeKind::Hexagonal,
                k(kk),
                &NetworkExtent::square(0, kk as i64),
            );
            let used: BTreeSet<_> = hex.iter().map(|(_, s)| s).collect();
            assert_eq!(used.len() as u32, hex.frame_length());

            let h = (kk as i64 + 2) / 2;
            let sq = build_schedule(
                LatticeKind::SquareGrid,
                k(kk),
                &NetworkExtent::new(0, kk as i64, 0, h - 1),
            );
            let used: BTreeSet<_> = sq.iter().map(|(_, s)| s).collect();
            assert_eq!(used.len() as u32, sq.frame_length());
        }
    }

    #[test]
    fn built_schedules_verify_clean() {
        let extent = NetworkExtent::square(0, 11);
        for kind in [LatticeKind::Hexagonal, LatticeKind::SquareGrid] {
            for kk in [2, 3] {
                let s = build_schedule(kind, k(kk), &extent);
                let report = verify_schedule(&s, &extent);
                assert!(report.is_valid(), "{kind} k={kk}: {:?}", report.violations);
            }
        }
    }

    #[test]
    fn adversarial_same_slot_neighbors_flagged() {
        let extent = NetworkExtent::square(0, 3);
        let mut slots: BTreeMap<LatticeCoord, u32> = extent
            .iter()
            .map(|p| (p, hex_slot(p, k(2))))
            .collect();
        slots.insert(c(1, 0), slots[&c(0, 0)]);
        let s = Schedule::from_assignments(LatticeKind::Hexagonal, k(2), slots);
        let report = verify_schedule(&s, &extent);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::KHopConflict { .. })));
    }

    #[test]
    fn adjacent_pair_is_primary_violation_for_k1() {
        let extent = NetworkExtent::square(0, 2);
        let mut slots: BTreeMap<LatticeCoord, u32> =
            extent.iter().map(|p| (p, square_slot(p, k(1)))).collect();
        slots.insert(c(1, 0), slots[&c(0, 0)]);
        let s = Schedule::from_assignments(LatticeKind::SquareGrid, k(1), slots);
        let report = verify_schedule(&s, &extent);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PrimaryConflict { .. })));
    }

    #[test]
    fn missing_node_is_a_coverage_violation() {
        let extent = NetworkExtent::square(0, 2);
        let mut slots: BTreeMap<LatticeCoord, u32> =
            extent.iter().map(|p| (p, hex_slot(p, k(2)))).collect();
        slots.remove(&c(1, 1));
        let s = Schedule::from_assignments(LatticeKind::Hexagonal, k(2), slots);
        let report = verify_schedule(&s, &extent);
        assert_eq!(report.violations, vec![Violation::MissingNode { node: c(1, 1) }]);
    }

    #[test]
    fn out_of_range_slot_is_flagged() {
        let extent = NetworkExtent::square(0, 1);
        let mut slots: BTreeMap<LatticeCoord, u32> =
            extent.iter().map(|p| (p, hex_slot(p, k(1)))).collect();
        slots.insert(c(0, 0), 99);
        let s = Schedule::from_assignments(LatticeKind::Hexagonal, k(1), slots);
        let report = verify_schedule(&s, &extent);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::SlotOutOfRange { slot: 99, .. })));
    }

    #[test]
    fn concurrent_set_examples() {
        let extent = NetworkExtent::square(0, 5);
        let s = build_schedule(LatticeKind::Hexagonal, k(2), &extent);
        let set: BTreeSet<_> = concurrent_set(&s, 0, &extent).unwrap().into_iter().collect();
        let want: BTreeSet<_> =
            [(0, 0), (3, 0), (0, 3), (3, 3)].iter().map(|&(x, y)| c(x, y)).collect();
        assert_eq!(set, want);

        let err = concurrent_set(&s, 9, &extent);
        assert_eq!(err, Err(ScheduleError::SlotOutOfRange { slot: 9, frame_length: 9 }));
    }

    #[test]
    fn square_k3_slot0_contains_the_expected_nearest_transmitters() {
        let extent = NetworkExtent::square(-8, 8);
        let s = build_schedule(LatticeKind::SquareGrid, k(3), &extent);
        let set: BTreeSet<_> = concurrent_set(&s, 0, &extent).unwrap().into_iter().collect();
        assert!(set.contains(&c(0, 0)));
        assert!(set.contains(&c(4, 0)));
        assert!(set.contains(&c(2, 2)));
        assert!(set.contains(&c(-2, 2)));
    }

    #[test]
    fn empty_concurrent_set_in_tiny_extent() {
        let extent = NetworkExtent::square(0, 0);
        let s = build_schedule(LatticeKind::Hexagonal, k(2), &extent);
        // Only slot 0 is populated; every other slot is empty.
        assert!(concurrent_set(&s, 5, &extent).unwrap().is_empty());
    }

    #[test]
    fn min_spacing_within_concurrent_sets() {
        // Hexagonal: min pairwise graph distance within a slot is exactly
        // k+1; square grid: min(k+1, 2*ceil((k+1)/2)).
        let extent = NetworkExtent::square(0, 17);
        for kk in 1..=4 {
            let hex = build_schedule(LatticeKind::Hexagonal, k(kk), &extent);
            let sq = build_schedule(LatticeKind::SquareGrid, k(kk), &extent);
            for (kind, s) in [(LatticeKind::Hexagonal, hex), (LatticeKind::SquareGrid, sq)] {
                let mut min_seen = u64::MAX;
                for slot_idx in 0..s.frame_length() {
                    let set = concurrent_set(&s, slot_idx, &extent).unwrap();
                    for (i, &a) in set.iter().enumerate() {
                        for &b in &set[i + 1..] {
                            min_seen = min_seen.min(graph_distance(kind, a, b));
                        }
                    }
                }
                let expected = match kind {
                    LatticeKind::Hexagonal => kk as u64 + 1,
                    LatticeKind::SquareGrid => {
                        (kk as u64 + 1).min(2 * ((kk as u64 + 1).div_ceil(2)))
                    }
                };
                assert_eq!(min_seen, expected, "{kind} k={kk}");
            }
        }
    }

    #[test]
    fn coset_matches_slot_classes() {
        let extent = NetworkExtent::new(-6, 9, -5, 8);
        for kind in [LatticeKind::Hexagonal, LatticeKind::SquareGrid] {
            for kk in 1..=4 {
                let sched = build_schedule(kind, k(kk), &extent);
                for p in [c(0, 0), c(-3, 4), c(7, -2)] {
                    let coset = crate::lattice::coset(kind, kk, p, &extent);
                    let want: BTreeSet<_> = extent
                        .iter()
                        .filter(|q| sched.slot_of(*q) == sched.slot_of(p))
                        .collect();
                    assert_eq!(coset, want, "{kind} k={kk} p={p}");
                }
            }
        }
    }

    proptest! {
        /// Slots depend only on the address and k, and the hexagonal
        /// assignment is invariant under translation by m(k+1) on both axes.
        #[test]
        fn hex_translation_invariance(x in -40i64..=40, y in -40i64..=40,
                                      kk in 1u32..=5, m in -3i64..=3) {
            let p = c(x, y);
            let step = m * (kk as i64 + 1);
            prop_assert_eq!(hex_slot(p, k(kk)), hex_slot(p.offset(step, step), k(kk)));
            prop_assert_eq!(hex_slot(p, k(kk)), hex_slot(p, k(kk)));
        }

        /// The square assignment repeats with period k+1 in x and
        /// 2*ceil((k+1)/2) in y.
        #[test]
        fn square_periodicity(x in -40i64..=40, y in -40i64..=40,
                              kk in 1u32..=5, m in -3i64..=3) {
            let p = c(x, y);
            let h = (kk as i64 + 2) / 2;
            prop_assert_eq!(square_slot(p, k(kk)), square_slot(p.offset(m * (kk as i64 + 1), 0), k(kk)));
            prop_assert_eq!(square_slot(p, k(kk)), square_slot(p.offset(0, 2 * m * h), k(kk)));
        }
    }
}
