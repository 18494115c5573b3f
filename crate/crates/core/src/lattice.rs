//! Geometry of the periodic `L x L x L` cubic lattice.
//!
//! Qubits live on faces, vertex stabilizers on vertices and the colored cell
//! stabilizers on unit cubes. A face is addressed by its orientation (its
//! [`Color`]) and its minimal-coordinate corner; the cell at `p` is the cube
//! spanning `p .. p + (1, 1, 1)`, so its eight corner vertices are
//! `p + {0, 1}^3`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("anisotropic lattice {0}x{1}x{2} is not supported")]
    Anisotropic(usize, usize, usize),
}

/// One of the three coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i]
    }

    /// The two axes orthogonal to `self`, in cyclic order.
    #[inline]
    pub fn others(self) -> (Axis, Axis) {
        match self {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::Z, Axis::X),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Face three-coloring: red faces lie in a `zx`-plane, green in an
/// `xy`-plane and blue in a `yz`-plane.
///
/// The same coloring names the dual planes, and a lineon of color `c` moves
/// along the normal of `c`-colored faces: red along `y`, green along `z`,
/// blue along `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    R = 0,
    G = 1,
    B = 2,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::R, Color::G, Color::B];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Color {
        Color::ALL[i]
    }

    /// Normal axis of faces (and dual planes) of this color. This is also the
    /// direction a lineon of this color can move in.
    #[inline]
    pub fn normal(self) -> Axis {
        match self {
            Color::R => Axis::Y,
            Color::G => Axis::Z,
            Color::B => Axis::X,
        }
    }

    #[inline]
    pub fn with_normal(axis: Axis) -> Color {
        match axis {
            Axis::X => Color::B,
            Axis::Y => Color::R,
            Axis::Z => Color::G,
        }
    }

    /// The two colors other than `self`.
    #[inline]
    pub fn others(self) -> (Color, Color) {
        match self {
            Color::R => (Color::G, Color::B),
            Color::G => (Color::R, Color::B),
            Color::B => (Color::R, Color::G),
        }
    }

    /// The color obtained by fusing two distinct colors.
    #[inline]
    pub fn fuse(self, other: Color) -> Option<Color> {
        if self == other {
            None
        } else {
            Some(Color::from_index(3 - self.index() - other.index()))
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::R => "R",
            Color::G => "G",
            Color::B => "B",
        })
    }
}

/// A lattice point with every coordinate already reduced modulo `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coord3 {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Coord3 {
    #[inline]
    pub fn get(self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.x,
            Axis::Y => self.y,
            Axis::Z => self.z,
        }
    }

    #[inline]
    pub fn with(mut self, axis: Axis, value: u32) -> Coord3 {
        match axis {
            Axis::X => self.x = value,
            Axis::Y => self.y = value,
            Axis::Z => self.z = value,
        }
        self
    }
}

impl fmt::Display for Coord3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub Coord3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub Coord3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId {
    pub orientation: Color,
    pub base: Coord3,
}

/// A lattice plane normal to `axis` at `offset`. Dual planes collect cells,
/// primal planes collect vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaneId {
    pub axis: Axis,
    pub offset: u32,
    pub dual: bool,
}

impl PlaneId {
    /// Color of a dual plane, named like the faces parallel to it.
    pub fn color(self) -> Color {
        Color::with_normal(self.axis)
    }
}

/// Periodic cubic lattice of linear size `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lattice {
    size: u32,
}

impl Lattice {
    pub fn new(size: usize) -> Result<Self, LatticeError> {
        if size < 2 {
            return Err(LatticeError::TooSmall(size));
        }
        Ok(Lattice { size: size as u32 })
    }

    /// Only cubic lattices are supported; this exists so callers holding three
    /// extents get a proper error instead of a silent choice.
    pub fn with_extents(lx: usize, ly: usize, lz: usize) -> Result<Self, LatticeError> {
        if lx != ly || ly != lz {
            return Err(LatticeError::Anisotropic(lx, ly, lz));
        }
        Lattice::new(lx)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size as usize
    }

    #[inline]
    pub fn volume(&self) -> usize {
        let l = self.size();
        l * l * l
    }

    #[inline]
    pub fn num_faces(&self) -> usize {
        3 * self.volume()
    }

    #[inline]
    pub fn wrap(&self, v: i64) -> u32 {
        v.rem_euclid(self.size as i64) as u32
    }

    pub fn coord(&self, x: i64, y: i64, z: i64) -> Coord3 {
        Coord3 {
            x: self.wrap(x),
            y: self.wrap(y),
            z: self.wrap(z),
        }
    }

    /// `c` displaced by `delta` along `axis`.
    #[inline]
    pub fn shift(&self, c: Coord3, axis: Axis, delta: i64) -> Coord3 {
        c.with(axis, self.wrap(c.get(axis) as i64 + delta))
    }

    /// Row-major index, so index order is lexicographic `(x, y, z)` order.
    #[inline]
    pub fn site_index(&self, c: Coord3) -> usize {
        let l = self.size as usize;
        (c.x as usize * l + c.y as usize) * l + c.z as usize
    }

    #[inline]
    pub fn site_at(&self, index: usize) -> Coord3 {
        let l = self.size as usize;
        Coord3 {
            x: (index / (l * l)) as u32,
            y: ((index / l) % l) as u32,
            z: (index % l) as u32,
        }
    }

    #[inline]
    pub fn face_index(&self, f: FaceId) -> usize {
        f.orientation.index() * self.volume() + self.site_index(f.base)
    }

    #[inline]
    pub fn face_at(&self, index: usize) -> FaceId {
        let v = self.volume();
        FaceId {
            orientation: Color::from_index(index / v),
            base: self.site_at(index % v),
        }
    }

    pub fn sites(&self) -> impl Iterator<Item = Coord3> + '_ {
        (0..self.volume()).map(move |i| self.site_at(i))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.sites().map(VertexId)
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.sites().map(CellId)
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.num_faces()).map(move |i| self.face_at(i))
    }

    pub fn planes(&self, dual: bool) -> impl Iterator<Item = PlaneId> + '_ {
        Axis::ALL
            .into_iter()
            .flat_map(move |axis| (0..self.size).map(move |offset| PlaneId { axis, offset, dual }))
    }

    /// The four corner vertices of a face.
    pub fn face_corners(&self, f: FaceId) -> [VertexId; 4] {
        let (a, b) = f.orientation.normal().others();
        let p = f.base;
        let pa = self.shift(p, a, 1);
        [
            VertexId(p),
            VertexId(pa),
            VertexId(self.shift(p, b, 1)),
            VertexId(self.shift(pa, b, 1)),
        ]
    }

    /// The two cells a face separates: the one at its base and the one below
    /// it along the face normal.
    pub fn face_cells(&self, f: FaceId) -> [CellId; 2] {
        let n = f.orientation.normal();
        [CellId(f.base), CellId(self.shift(f.base, n, -1))]
    }

    /// The 12 faces having `v` as a corner.
    pub fn faces_of_vertex(&self, v: VertexId) -> [FaceId; 12] {
        let mut out = [FaceId {
            orientation: Color::R,
            base: v.0,
        }; 12];
        let mut k = 0;
        for color in Color::ALL {
            let (a, b) = color.normal().others();
            for (da, db) in [(0, 0), (-1, 0), (0, -1), (-1, -1)] {
                let base = self.shift(self.shift(v.0, a, da), b, db);
                out[k] = FaceId {
                    orientation: color,
                    base,
                };
                k += 1;
            }
        }
        out
    }

    /// The two faces of color `color` on the boundary of cell `c`.
    pub fn cell_faces_of_color(&self, c: CellId, color: Color) -> [FaceId; 2] {
        let n = color.normal();
        [
            FaceId {
                orientation: color,
                base: c.0,
            },
            FaceId {
                orientation: color,
                base: self.shift(c.0, n, 1),
            },
        ]
    }

    /// The 6 boundary faces of `c` minus the two of color `excluded`.
    pub fn faces_of_cell_excluding(&self, c: CellId, excluded: Color) -> [FaceId; 4] {
        let (u, v) = excluded.others();
        let [a, b] = self.cell_faces_of_color(c, u);
        let [d, e] = self.cell_faces_of_color(c, v);
        [a, b, d, e]
    }

    /// Shortest periodic distance between two coordinates on one axis.
    #[inline]
    pub fn axis_sep(&self, a: u32, b: u32) -> u32 {
        let d = a.abs_diff(b);
        d.min(self.size - d)
    }

    /// Sum over `axes` of the periodic separation along each.
    pub fn periodic_sep(&self, a: Coord3, b: Coord3, axes: &[Axis]) -> u32 {
        axes.iter()
            .map(|&ax| self.axis_sep(a.get(ax), b.get(ax)))
            .sum()
    }

    /// Full three-axis periodic Manhattan distance.
    #[inline]
    pub fn manhattan(&self, a: Coord3, b: Coord3) -> u32 {
        self.axis_sep(a.x, b.x) + self.axis_sep(a.y, b.y) + self.axis_sep(a.z, b.z)
    }
}

/// Colour of a face.
#[inline]
pub fn face_color(face: FaceId) -> Color {
    face.orientation
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, HashMap};

    use proptest::prelude::*;

    use super::*;

    /// Brute-force incidence: a face's corner set built from unit offsets,
    /// independent of the `faces_of_vertex` formula.
    fn corner_oracle(lat: &Lattice, f: FaceId) -> BTreeSet<Coord3> {
        let mut offs = Vec::new();
        for dx in 0..2i64 {
            for dy in 0..2i64 {
                for dz in 0..2i64 {
                    let d = [dx, dy, dz];
                    // Faces are flat along their normal axis.
                    if d[f.orientation.normal().index()] == 0 {
                        offs.push(d);
                    }
                }
            }
        }
        offs.into_iter()
            .map(|d| {
                lat.coord(
                    f.base.x as i64 + d[0],
                    f.base.y as i64 + d[1],
                    f.base.z as i64 + d[2],
                )
            })
            .collect()
    }

    /// Boundary faces of a cube by checking that all four corners of a face are
    /// among the cube's eight corners.
    fn cell_boundary_oracle(lat: &Lattice, c: CellId) -> BTreeSet<FaceId> {
        let mut corners = BTreeSet::new();
        for dx in 0..2 {
            for dy in 0..2 {
                for dz in 0..2 {
                    corners.insert(lat.coord(
                        c.0.x as i64 + dx,
                        c.0.y as i64 + dy,
                        c.0.z as i64 + dz,
                    ));
                }
            }
        }
        lat.faces()
            .filter(|f| corner_oracle(lat, *f).is_subset(&corners))
            .collect()
    }

    #[test]
    fn face_color_mapping() {
        let lat = Lattice::new(4).unwrap();
        let zx = FaceId {
            orientation: Color::R,
            base: lat.coord(0, 0, 0),
        };
        assert_eq!(face_color(zx), Color::R);
        assert_eq!(Color::R.normal(), Axis::Y);
        let xy = FaceId {
            orientation: Color::G,
            base: lat.coord(1, 2, 3),
        };
        assert_eq!(face_color(xy), Color::G);
        assert_eq!(Color::G.normal(), Axis::Z);
        for base in lat.sites() {
            let yz = FaceId {
                orientation: Color::B,
                base,
            };
            assert_eq!(face_color(yz), Color::B);
        }
        assert_eq!(Color::B.normal(), Axis::X);
    }

    #[test]
    fn element_counts() {
        for l in 2..=4 {
            let lat = Lattice::new(l).unwrap();
            assert_eq!(lat.faces().count(), 3 * l * l * l);
            assert_eq!(lat.vertices().count(), l * l * l);
            assert_eq!(lat.cells().count(), l * l * l);
            let faces: BTreeSet<_> = lat.faces().collect();
            assert_eq!(faces.len(), 3 * l * l * l);
            assert_eq!(lat.planes(true).count(), 3 * l);
            assert_eq!(lat.planes(false).count(), 3 * l);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(Lattice::new(1), Err(LatticeError::TooSmall(1)));
        assert_eq!(
            Lattice::with_extents(4, 4, 5),
            Err(LatticeError::Anisotropic(4, 4, 5))
        );
        assert!(Lattice::with_extents(3, 3, 3).is_ok());
    }

    #[test]
    fn faces_of_vertex_matches_oracle() {
        for l in 2..=4 {
            let lat = Lattice::new(l).unwrap();
            let mut cover: HashMap<FaceId, usize> = HashMap::new();
            for v in lat.vertices() {
                let got: BTreeSet<_> = lat.faces_of_vertex(v).into_iter().collect();
                assert_eq!(got.len(), 12, "L={l} v={}", v.0);
                let want: BTreeSet<_> = lat
                    .faces()
                    .filter(|f| corner_oracle(&lat, *f).contains(&v.0))
                    .collect();
                assert_eq!(got, want);
                for f in got {
                    *cover.entry(f).or_default() += 1;
                }
            }
            assert_eq!(cover.len(), lat.num_faces());
            assert!(cover.values().all(|&n| n == 4));
        }
    }

    #[test]
    fn face_corners_match_oracle() {
        let lat = Lattice::new(3).unwrap();
        for f in lat.faces() {
            let got: BTreeSet<_> = lat.face_corners(f).iter().map(|v| v.0).collect();
            assert_eq!(got, corner_oracle(&lat, f));
        }
    }

    #[test]
    fn cell_faces_match_oracle() {
        // L = 2 is excluded: opposite faces of a cube coincide there after
        // wrapping, so "faces whose corners are all cube corners" overcounts.
        for l in 3..=4 {
            let lat = Lattice::new(l).unwrap();
            for c in lat.cells() {
                let boundary = cell_boundary_oracle(&lat, c);
                assert_eq!(boundary.len(), 6);
                let mut cover: HashMap<FaceId, usize> = HashMap::new();
                for excluded in Color::ALL {
                    let got: BTreeSet<_> = lat
                        .faces_of_cell_excluding(c, excluded)
                        .into_iter()
                        .collect();
                    assert_eq!(got.len(), 4);
                    let want: BTreeSet<_> = boundary
                        .iter()
                        .copied()
                        .filter(|f| f.orientation != excluded)
                        .collect();
                    assert_eq!(got, want);
                    for f in got {
                        *cover.entry(f).or_default() += 1;
                    }
                }
                assert_eq!(cover.len(), 6);
                assert!(cover.values().all(|&n| n == 2));
            }
        }
        // At L = 2 the formula still yields 4 distinct faces.
        let lat = Lattice::new(2).unwrap();
        for c in lat.cells() {
            for excluded in Color::ALL {
                let got: BTreeSet<_> = lat
                    .faces_of_cell_excluding(c, excluded)
                    .into_iter()
                    .collect();
                assert_eq!(got.len(), 4);
            }
        }
    }

    #[test]
    fn excluded_red_is_green_and_blue() {
        let lat = Lattice::new(4).unwrap();
        let c = CellId(lat.coord(0, 0, 0));
        let faces = lat.faces_of_cell_excluding(c, Color::R);
        let colors: Vec<_> = faces.iter().map(|f| f.orientation).collect();
        assert_eq!(colors, vec![Color::G, Color::G, Color::B, Color::B]);
        assert!(faces.contains(&FaceId {
            orientation: Color::G,
            base: lat.coord(0, 0, 1)
        }));
        assert!(faces.contains(&FaceId {
            orientation: Color::B,
            base: lat.coord(1, 0, 0)
        }));
    }

    #[test]
    fn periodic_sep_examples() {
        let lat = Lattice::new(8).unwrap();
        let a = lat.coord(3, 1, 4);
        assert_eq!(lat.periodic_sep(a, a, &Axis::ALL), 0);
        assert_eq!(
            lat.periodic_sep(lat.coord(0, 0, 0), lat.coord(7, 0, 0), &[Axis::X]),
            1
        );
        let lat6 = Lattice::new(6).unwrap();
        assert_eq!(
            lat6.periodic_sep(
                lat6.coord(1, 2, 0),
                lat6.coord(4, 5, 0),
                &[Axis::X, Axis::Y]
            ),
            6
        );
    }

    #[test]
    fn fusion_rule() {
        assert_eq!(Color::R.fuse(Color::G), Some(Color::B));
        assert_eq!(Color::G.fuse(Color::B), Some(Color::R));
        assert_eq!(Color::B.fuse(Color::B), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn axis_sep_is_a_metric(l in 2u32..40, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let lat = Lattice::new(l as usize).unwrap();
            let (a, b, c) = (a % l, b % l, c % l);
            prop_assert_eq!(lat.axis_sep(a, b), lat.axis_sep(b, a));
            prop_assert_eq!(lat.axis_sep(a, b) == 0, a == b);
            prop_assert!(lat.axis_sep(a, c) <= lat.axis_sep(a, b) + lat.axis_sep(b, c));
            prop_assert!(lat.axis_sep(a, b) <= l / 2);
        }
    }
}
