//! Lattice geometry for hexagonal and square-grid networks.
//!
//! Nodes are addressed by integer lattice coordinates. The hexagonal lattice
//! uses two axes at an angle of 2π/3, so every node has six unit-distance
//! neighbors; the square grid uses the usual orthogonal axes and four
//! neighbors. This module provides graph distances (closed form and a BFS
//! oracle), neighborhoods, planar embeddings, and the basis-section
//! combinatorics that underpin the periodic slot assignment.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Unit-distance neighbor offsets of a hexagonal lattice point.
pub const HEX_NEIGHBOR_OFFSETS: [(i64, i64); 6] =
    [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];

/// Unit-distance neighbor offsets of a square-grid lattice point.
pub const SQUARE_NEIGHBOR_OFFSETS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("embedding spacing must be positive, got {0}")]
    InvalidSpacing(f64),
    #[error("BFS search radius {radius} exhausted before reaching the target")]
    SearchExhausted { radius: u64 },
}

/// Connectivity rule of a regular network: six neighbors per node on the
/// hexagonal lattice, four on the square grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    Hexagonal,
    SquareGrid,
}

impl LatticeKind {
    /// Unit-distance neighbor offsets for this lattice.
    pub fn neighbor_offsets(self) -> &'static [(i64, i64)] {
        match self {
            LatticeKind::Hexagonal => &HEX_NEIGHBOR_OFFSETS,
            LatticeKind::SquareGrid => &SQUARE_NEIGHBOR_OFFSETS,
        }
    }

    /// Number of neighbors of an interior node (6 or 4).
    pub fn degree(self) -> usize {
        self.neighbor_offsets().len()
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeKind::Hexagonal => write!(f, "hex"),
            LatticeKind::SquareGrid => write!(f, "square"),
        }
    }
}

impl std::str::FromStr for LatticeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hex" | "hexagonal" => Ok(LatticeKind::Hexagonal),
            "square" | "square-grid" | "grid" => Ok(LatticeKind::SquareGrid),
            other => Err(format!("unknown lattice kind `{other}` (expected hex or square)")),
        }
    }
}

/// Integer lattice address of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeCoord {
    pub x: i64,
    pub y: i64,
}

impl LatticeCoord {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticeCoord { x, y }
    }

    pub const fn offset(self, dx: i64, dy: i64) -> Self {
        LatticeCoord::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for LatticeCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for LatticeCoord {
    fn from((x, y): (i64, i64)) -> Self {
        LatticeCoord::new(x, y)
    }
}

/// A point in the plane, produced by [`embed`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Euclidean distance to another point.
    pub fn distance(self, other: Point) -> f64 {
        self.distance_squared(other).sqrt()
    }

    pub fn distance_squared(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// An axis-aligned coordinate box defining a finite node set on the lattice.
///
/// Bounds are inclusive. For the hexagonal lattice the box is rhombic in
/// physical space because the axes meet at 2π/3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetworkExtent {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl NetworkExtent {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Self {
        NetworkExtent { x_min, x_max, y_min, y_max }
    }

    /// `[0, w-1] x [0, h-1]`. Zero width or height gives an empty extent.
    pub fn from_size(width: i64, height: i64) -> Self {
        NetworkExtent::new(0, width - 1, 0, height - 1)
    }

    /// `[lo, hi]` in both coordinates.
    pub fn square(lo: i64, hi: i64) -> Self {
        NetworkExtent::new(lo, hi, lo, hi)
    }

    pub fn is_empty(&self) -> bool {
        self.x_min > self.x_max || self.y_min > self.y_max
    }

    /// Number of lattice points in the extent.
    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            ((self.x_max - self.x_min + 1) * (self.y_max - self.y_min + 1)) as usize
        }
    }

    pub fn contains(&self, p: LatticeCoord) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// Row-major iteration: y ascending, x ascending within each row.
    pub fn iter(&self) -> impl Iterator<Item = LatticeCoord> + '_ {
        let (x_min, x_max, y_min, y_max) = (self.x_min, self.x_max, self.y_min, self.y_max);
        (y_min..=y_max).flat_map(move |y| (x_min..=x_max).map(move |x| LatticeCoord::new(x, y)))
    }

    /// Translate the whole extent by `(dx, dy)`.
    pub fn translated(&self, dx: i64, dy: i64) -> Self {
        NetworkExtent::new(self.x_min + dx, self.x_max + dx, self.y_min + dy, self.y_max + dy)
    }
}

/// Graph distance (minimum number of edges) between two lattice points.
///
/// Hexagonal: `max(|dx|, |dy|, |dx - dy|)`. Square grid: `|dx| + |dy|`.
pub fn graph_distance(kind: LatticeKind, a: LatticeCoord, b: LatticeCoord) -> u64 {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    match kind {
        LatticeKind::Hexagonal => dx
            .abs()
            .max(dy.abs())
            .max((dx - dy).abs()) as u64,
        LatticeKind::SquareGrid => (dx.abs() + dy.abs()) as u64,
    }
}

/// Breadth-first shortest path length over the unit-neighbor graph,
/// restricted to the box of the given radius around `a`.
///
/// Independent oracle for [`graph_distance`]; returns
/// [`LatticeError::SearchExhausted`] if `b` is not reached within the box.
pub fn bfs_distance_within(
    kind: LatticeKind,
    a: LatticeCoord,
    b: LatticeCoord,
    radius: u64,
) -> Result<u64, LatticeError> {
    if a == b {
        return Ok(0);
    }
    let r = radius as i64;
    let mut seen: HashMap<LatticeCoord, u64> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(a, 0);
    queue.push_back(a);
    while let Some(p) = queue.pop_front() {
        let hops = seen[&p] + 1;
        for &(dx, dy) in kind.neighbor_offsets() {
            let q = p.offset(dx, dy);
            if q == b {
                return Ok(hops);
            }
            if (q.x - a.x).abs() <= r && (q.y - a.y).abs() <= r && !seen.contains_key(&q) {
                seen.insert(q, hops);
                queue.push_back(q);
            }
        }
    }
    Err(LatticeError::SearchExhausted { radius })
}

/// BFS distance with an automatically sufficient search radius.
///
/// `|dx| + |dy|` hops always reach the target on either lattice, so the
/// search cannot be exhausted.
pub fn bfs_distance(kind: LatticeKind, a: LatticeCoord, b: LatticeCoord) -> u64 {
    let radius = ((b.x - a.x).abs() + (b.y - a.y).abs()) as u64 + 1;
    bfs_distance_within(kind, a, b, radius)
        .expect("radius |dx|+|dy|+1 always suffices")
}

/// The 6 (hex) or 4 (square) unit-distance neighbors of `p`.
pub fn neighbors(kind: LatticeKind, p: LatticeCoord) -> Vec<LatticeCoord> {
    kind.neighbor_offsets().iter().map(|&(dx, dy)| p.offset(dx, dy)).collect()
}

/// Neighbors of `p` that lie within the extent. Boundary nodes of a finite
/// network have fewer than 6 (resp. 4) of them.
pub fn neighbors_in(kind: LatticeKind, p: LatticeCoord, extent: &NetworkExtent) -> Vec<LatticeCoord> {
    kind.neighbor_offsets()
        .iter()
        .map(|&(dx, dy)| p.offset(dx, dy))
        .filter(|q| extent.contains(*q))
        .collect()
}

/// Map a lattice coordinate to the plane.
///
/// Hexagonal axes are `e1 = (1, 0)` and `e2` at 2π/3 from `e1`, scaled by
/// `spacing`; with this basis all six unit neighbors land at Euclidean
/// distance exactly `spacing`. The square grid is the orthonormal embedding
/// scaled by `spacing`.
pub fn embed(kind: LatticeKind, p: LatticeCoord, spacing: f64) -> Result<Point, LatticeError> {
    if !(spacing > 0.0) {
        return Err(LatticeError::InvalidSpacing(spacing));
    }
    let (x, y) = (p.x as f64, p.y as f64);
    Ok(match kind {
        LatticeKind::Hexagonal => {
            // e2 = (cos 2π/3, sin 2π/3) = (-1/2, √3/2)
            let e2x = -0.5;
            let e2y = 3f64.sqrt() / 2.0;
            Point::new(spacing * (x + y * e2x), spacing * (y * e2y))
        }
        LatticeKind::SquareGrid => Point::new(spacing * x, spacing * y),
    })
}

/// Shape of a basis lattice section: a region whose translated replicas
/// tile the lattice with exact coverage and no overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionShape {
    /// Hexagonal-lattice rhombus with corners `(0,0), (i,0), (i,i), (0,i)`;
    /// contains the `(i+1)^2` points `0 <= x,y <= i`, replicas repeat with
    /// period `i+1` along both axes.
    Rhombus { side: u32 },
    /// Square-lattice rhomboid of size `(i, ceil(i/2))`: rows `0 <= y <
    /// ceil(i/2)`, each row holding the `i+1` points with `0 <= x + y <= i`.
    /// Replicas repeat with periods `(i+1, 0)` and `(-ceil(i/2), ceil(i/2))`.
    Rhomboid { span: u32 },
    /// Square-lattice rectangle of size `i x ceil(i/2)`, rows of which are
    /// shifted left by `ceil(i/2)` on alternate bands, matching the slot
    /// assignment of the square-grid scheduler.
    Rectangle { width: u32 },
}

impl SectionShape {
    /// Metric used for graph distances within the section.
    pub fn lattice_kind(self) -> LatticeKind {
        match self {
            SectionShape::Rhombus { .. } => LatticeKind::Hexagonal,
            SectionShape::Rhomboid { .. } | SectionShape::Rectangle { .. } => {
                LatticeKind::SquareGrid
            }
        }
    }

    /// Row count `ceil(i/2)` for the square-lattice shapes, `side + 1` rows
    /// for the rhombus.
    pub fn rows(self) -> u32 {
        match self {
            SectionShape::Rhombus { side } => side + 1,
            SectionShape::Rhomboid { span } => span.div_ceil(2),
            SectionShape::Rectangle { width } => width.div_ceil(2),
        }
    }
}

/// A basis lattice section anchored at an origin point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisSection {
    pub shape: SectionShape,
    pub origin: LatticeCoord,
}

impl BasisSection {
    pub fn rhombus(side: u32, origin: LatticeCoord) -> Self {
        BasisSection { shape: SectionShape::Rhombus { side }, origin }
    }

    pub fn rhomboid(span: u32, origin: LatticeCoord) -> Self {
        BasisSection { shape: SectionShape::Rhomboid { span }, origin }
    }

    pub fn rectangle(width: u32, origin: LatticeCoord) -> Self {
        BasisSection { shape: SectionShape::Rectangle { width }, origin }
    }

    pub fn contains(&self, p: LatticeCoord) -> bool {
        let dx = p.x - self.origin.x;
        let dy = p.y - self.origin.y;
        match self.shape {
            SectionShape::Rhombus { side } => {
                let side = side as i64;
                (0..=side).contains(&dx) && (0..=side).contains(&dy)
            }
            SectionShape::Rhomboid { span } => {
                let span = span as i64;
                let rows = self.shape.rows() as i64;
                (0..rows).contains(&dy) && (0..=span).contains(&(dx + dy))
            }
            SectionShape::Rectangle { width } => {
                let width = width as i64;
                let rows = self.shape.rows() as i64;
                (0..rows).contains(&dy) && (0..width).contains(&dx)
            }
        }
    }

    /// All lattice points of the section, in row-major order.
    pub fn points(&self) -> Vec<LatticeCoord> {
        let o = self.origin;
        match self.shape {
            SectionShape::Rhombus { side } => {
                let side = side as i64;
                (0..=side)
                    .flat_map(|y| (0..=side).map(move |x| (x, y)))
                    .map(|(x, y)| o.offset(x, y))
                    .collect()
            }
            SectionShape::Rhomboid { span } => {
                let span = span as i64;
                let rows = self.shape.rows() as i64;
                (0..rows)
                    .flat_map(|y| (-y..=span - y).map(move |x| (x, y)))
                    .map(|(x, y)| o.offset(x, y))
                    .collect()
            }
            SectionShape::Rectangle { width } => {
                let width = width as i64;
                let rows = self.shape.rows() as i64;
                (0..rows)
                    .flat_map(|y| (0..width).map(move |x| (x, y)))
                    .map(|(x, y)| o.offset(x, y))
                    .collect()
            }
        }
    }

    /// Origins of all replicas of this section that intersect the extent.
    pub fn replica_origins(&self, extent: &NetworkExtent) -> Vec<LatticeCoord> {
        if extent.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        match self.shape {
            SectionShape::Rhombus { side } => {
                let period = side as i64 + 1;
                let m_lo = (extent.x_min - self.origin.x - side as i64).div_euclid(period);
                let m_hi = (extent.x_max - self.origin.x).div_euclid(period);
                let n_lo = (extent.y_min - self.origin.y - side as i64).div_euclid(period);
                let n_hi = (extent.y_max - self.origin.y).div_euclid(period);
                for n in n_lo..=n_hi {
                    for m in m_lo..=m_hi {
                        out.push(self.origin.offset(m * period, n * period));
                    }
                }
            }
            SectionShape::Rhomboid { span } => {
                let px = span as i64 + 1;
                let rows = self.shape.rows() as i64;
                let n_lo = (extent.y_min - self.origin.y - rows + 1).div_euclid(rows);
                let n_hi = (extent.y_max - self.origin.y).div_euclid(rows);
                for n in n_lo..=n_hi {
                    // Row bands shift left by `rows` per vertical step; rows
                    // within a replica extend from x = -y to span - y.
                    let oy = self.origin.y + n * rows;
                    let m_lo = (extent.x_min - self.origin.x + n * rows - span as i64).div_euclid(px) - 1;
                    let m_hi = (extent.x_max - self.origin.x + n * rows + rows).div_euclid(px) + 1;
                    for m in m_lo..=m_hi {
                        out.push(LatticeCoord::new(self.origin.x + m * px - n * rows, oy));
                    }
                }
            }
            SectionShape::Rectangle { width } => {
                let w = width as i64;
                let rows = self.shape.rows() as i64;
                let n_lo = (extent.y_min - self.origin.y - rows + 1).div_euclid(rows);
                let n_hi = (extent.y_max - self.origin.y).div_euclid(rows);
                for n in n_lo..=n_hi {
                    // Alternate bands shift left by `rows` in x.
                    let shift = -n.rem_euclid(2) * rows;
                    let oy = self.origin.y + n * rows;
                    let m_lo = (extent.x_min - self.origin.x - shift - w + 1).div_euclid(w);
                    let m_hi = (extent.x_max - self.origin.x - shift).div_euclid(w);
                    for m in m_lo..=m_hi {
                        out.push(LatticeCoord::new(self.origin.x + shift + m * w, oy));
                    }
                }
            }
        }
        out
    }

    /// Points of the section at graph distance `l` from its origin, under
    /// the section's own lattice metric.
    pub fn ring_points(&self, l: u64) -> BTreeSet<LatticeCoord> {
        let kind = self.shape.lattice_kind();
        self.points()
            .into_iter()
            .filter(|p| graph_distance(kind, self.origin, *p) == l)
            .collect()
    }
}

/// All extent nodes sharing `p`'s relative coordinate under the k-dependent
/// tiling: rhombi of side `k` for the hexagonal lattice, shifted rectangles
/// of size `(k+1) x ceil((k+1)/2)` for the square grid. These are exactly
/// the nodes the scheduler assigns to the same slot as `p`.
pub fn coset(
    kind: LatticeKind,
    k: u32,
    p: LatticeCoord,
    extent: &NetworkExtent,
) -> BTreeSet<LatticeCoord> {
    let rel = relative_coordinate(kind, k, p);
    extent
        .iter()
        .filter(|q| relative_coordinate(kind, k, *q) == rel)
        .collect()
}

/// Relative coordinate of `p` within its basis-section replica.
fn relative_coordinate(kind: LatticeKind, k: u32, p: LatticeCoord) -> (i64, i64) {
    let period = k as i64 + 1;
    match kind {
        LatticeKind::Hexagonal => (p.x.rem_euclid(period), p.y.rem_euclid(period)),
        LatticeKind::SquareGrid => {
            let rows = (period + 1) / 2;
            let band_parity = p.y.div_euclid(rows).rem_euclid(2);
            ((p.x + band_parity * rows).rem_euclid(period), p.y.rem_euclid(rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: i64, y: i64) -> LatticeCoord {
        LatticeCoord::new(x, y)
    }

    #[test]
    fn hex_distance_examples() {
        assert_eq!(graph_distance(LatticeKind::Hexagonal, c(0, 0), c(1, 1)), 1);
        assert_eq!(graph_distance(LatticeKind::Hexagonal, c(3, 5), c(3, 5)), 0);
        assert_eq!(graph_distance(LatticeKind::Hexagonal, c(0, 0), c(2, -1)), 3);
    }

    #[test]
    fn square_distance_examples() {
        assert_eq!(graph_distance(LatticeKind::SquareGrid, c(0, 0), c(2, 3)), 5);
        assert_eq!(graph_distance(LatticeKind::SquareGrid, c(1, 1), c(1, 1)), 0);
    }

    #[test]
    fn bfs_oracle_examples() {
        assert_eq!(bfs_distance(LatticeKind::Hexagonal, c(0, 0), c(1, 1)), 1);
        assert_eq!(bfs_distance(LatticeKind::Hexagonal, c(0, 0), c(-2, 1)), 3);
        assert_eq!(graph_distance(LatticeKind::Hexagonal, c(0, 0), c(-2, 1)), 3);
        assert_eq!(bfs_distance(LatticeKind::SquareGrid, c(1, 1), c(1, 1)), 0);
        assert_eq!(bfs_distance(LatticeKind::SquareGrid, c(0, 0), c(2, 3)), 5);
    }

    #[test]
    fn bfs_reports_exhausted_radius() {
        let err = bfs_distance_within(LatticeKind::SquareGrid, c(0, 0), c(9, 0), 3);
        assert_eq!(err, Err(LatticeError::SearchExhausted { radius: 3 }));
    }

    #[test]
    fn hex_neighbors_are_the_six_offsets() {
        let got: BTreeSet<_> = neighbors(LatticeKind::Hexagonal, c(0, 0)).into_iter().collect();
        let want: BTreeSet<_> =
            [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)].iter().map(|&(x, y)| c(x, y)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn square_neighbors_example() {
        let got: BTreeSet<_> = neighbors(LatticeKind::SquareGrid, c(2, 2)).into_iter().collect();
        let want: BTreeSet<_> = [(3, 2), (1, 2), (2, 3), (2, 1)].iter().map(|&(x, y)| c(x, y)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn neighbors_intersected_with_extent() {
        let extent = NetworkExtent::square(0, 5);
        let got: BTreeSet<_> =
            neighbors_in(LatticeKind::Hexagonal, c(5, 5), &extent).into_iter().collect();
        let want: BTreeSet<_> = [(4, 5), (5, 4), (4, 4)].iter().map(|&(x, y)| c(x, y)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn embedding_examples() {
        let p = embed(LatticeKind::Hexagonal, c(1, 1), 1.0).unwrap();
        approx::assert_relative_eq!(p.distance(Point::new(0.0, 0.0)), 1.0, max_relative = 1e-12);

        let q = embed(LatticeKind::Hexagonal, c(7, 0), 2.5).unwrap();
        approx::assert_relative_eq!(q.distance(Point::new(0.0, 0.0)), 17.5, max_relative = 1e-12);

        let r = embed(LatticeKind::SquareGrid, c(3, 4), 1.0).unwrap();
        approx::assert_relative_eq!(r.distance(Point::new(0.0, 0.0)), 5.0, max_relative = 1e-12);
    }

    #[test]
    fn embedding_rejects_nonpositive_spacing() {
        assert!(embed(LatticeKind::Hexagonal, c(0, 0), 0.0).is_err());
        assert!(embed(LatticeKind::SquareGrid, c(0, 0), -1.0).is_err());
    }

    #[test]
    fn embedded_hex_neighbors_at_spacing_in_all_six_directions() {
        let spacing = 0.75;
        let origin = embed(LatticeKind::Hexagonal, c(0, 0), spacing).unwrap();
        for q in neighbors(LatticeKind::Hexagonal, c(0, 0)) {
            let e = embed(LatticeKind::Hexagonal, q, spacing).unwrap();
            approx::assert_relative_eq!(origin.distance(e), spacing, max_relative = 1e-12);
        }
    }

    #[test]
    fn rhombus_ring_examples() {
        let s = BasisSection::rhombus(3, c(0, 0));
        let want: BTreeSet<_> = [(0, 1), (1, 1), (1, 0)].iter().map(|&(x, y)| c(x, y)).collect();
        assert_eq!(s.ring_points(1), want);
        assert_eq!(s.ring_points(0), [c(0, 0)].into_iter().collect());
    }

    #[test]
    fn rhomboid_ring_example() {
        let s = BasisSection::rhomboid(3, c(0, 0));
        let want: BTreeSet<_> = [(0, 1), (1, 0)].iter().map(|&(x, y)| c(x, y)).collect();
        assert_eq!(s.ring_points(1), want);
        assert_eq!(
            BasisSection::rectangle(4, c(0, 0)).ring_points(0),
            [c(0, 0)].into_iter().collect()
        );
    }

    #[test]
    fn rhombus_ring_is_the_l_shape() {
        // Points of the rhombus at distance l from the origin form an L:
        // {(l-i, l)} ∪ {(l, l-i)}.
        let s = BasisSection::rhombus(3, c(0, 0));
        for l in 0..=3u64 {
            let mut want = BTreeSet::new();
            for i in 0..=l as i64 {
                want.insert(c(l as i64 - i, l as i64));
                want.insert(c(l as i64, l as i64 - i));
            }
            assert_eq!(s.ring_points(l), want, "ring {l}");
        }
    }

    fn assert_tiles(section: BasisSection, extent: NetworkExtent) {
        let origins = section.replica_origins(&extent);
        for p in extent.iter() {
            let covering: Vec<_> = origins
                .iter()
                .filter(|o| BasisSection { shape: section.shape, origin: **o }.contains(p))
                .collect();
            assert_eq!(covering.len(), 1, "{p} covered {} times by {:?}", covering.len(), section.shape);
        }
    }

    #[test]
    fn sections_tile_the_lattice() {
        let extent = NetworkExtent::new(-9, 9, -9, 9);
        for side in 1..=5 {
            assert_tiles(BasisSection::rhombus(side, c(0, 0)), extent);
        }
        for span in 2..=6 {
            assert_tiles(BasisSection::rhomboid(span, c(0, 0)), extent);
        }
        for width in 2..=6 {
            assert_tiles(BasisSection::rectangle(width, c(0, 0)), extent);
        }
    }

    /// Max over section points q of min over r in N1(origin) of d(r, q)
    /// equals i - 1, for both the rhombus and the rhomboid families.
    fn max_min_distance_from_first_ring(section: &BasisSection) -> u64 {
        let kind = section.shape.lattice_kind();
        let first_ring = section.ring_points(1);
        section
            .points()
            .iter()
            .map(|q| first_ring.iter().map(|r| graph_distance(kind, *r, *q)).min().unwrap())
            .max()
            .unwrap()
    }

    #[test]
    fn rhombus_max_min_distance_is_side_minus_one() {
        for side in 2..=8 {
            let s = BasisSection::rhombus(side, c(2, -3));
            assert_eq!(max_min_distance_from_first_ring(&s), side as u64 - 1, "side {side}");
        }
    }

    #[test]
    fn rhomboid_max_min_distance_is_span_minus_one() {
        for span in 2..=8 {
            let s = BasisSection::rhomboid(span, c(-1, 4));
            assert_eq!(max_min_distance_from_first_ring(&s), span as u64 - 1, "span {span}");
        }
    }

    #[test]
    fn coset_examples() {
        let extent = NetworkExtent::square(0, 5);
        let got = coset(LatticeKind::Hexagonal, 2, c(0, 0), &extent);
        let want: BTreeSet<_> = [(0, 0), (3, 0), (0, 3), (3, 3)].iter().map(|&(x, y)| c(x, y)).collect();
        assert_eq!(got, want);

        let lone = NetworkExtent::square(7, 7);
        assert_eq!(coset(LatticeKind::SquareGrid, 3, c(7, 7), &lone), [c(7, 7)].into_iter().collect());
    }

    #[test]
    fn extent_iteration_and_len() {
        let extent = NetworkExtent::from_size(3, 2);
        let pts: Vec<_> = extent.iter().collect();
        assert_eq!(pts.len(), extent.len());
        assert_eq!(pts[0], c(0, 0));
        assert_eq!(pts[5], c(2, 1));
        assert!(NetworkExtent::from_size(0, 4).is_empty());
        assert_eq!(NetworkExtent::from_size(0, 4).iter().count(), 0);
    }

    proptest! {
        /// Closed-form graph distance agrees with the BFS oracle within
        /// radius 20, for both lattice kinds.
        #[test]
        fn distance_matches_bfs(ax in -20i64..=20, ay in -20i64..=20,
                                bx in -20i64..=20, by in -20i64..=20) {
            for kind in [LatticeKind::Hexagonal, LatticeKind::SquareGrid] {
                let (a, b) = (c(ax, ay), c(bx, by));
                prop_assert_eq!(graph_distance(kind, a, b), bfs_distance(kind, a, b));
            }
        }

        /// Distance is symmetric and zero only on the diagonal.
        #[test]
        fn distance_symmetric(ax in -50i64..=50, ay in -50i64..=50,
                              bx in -50i64..=50, by in -50i64..=50) {
            for kind in [LatticeKind::Hexagonal, LatticeKind::SquareGrid] {
                let (a, b) = (c(ax, ay), c(bx, by));
                prop_assert_eq!(graph_distance(kind, a, b), graph_distance(kind, b, a));
                prop_assert_eq!(graph_distance(kind, a, b) == 0, a == b);
            }
        }
    }
}
