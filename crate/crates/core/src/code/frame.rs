use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::lattice::{CellId, Color, FaceId, Lattice, VertexId};

/// Which Pauli type an error or correction is made of. X errors create cell
/// defects (lineons), Z errors vertex defects (fractons).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    X,
    Z,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::X => "x",
            Sector::Z => "z",
        })
    }
}

/// A Pauli operator up to phase, stored as X- and Z-support bitsets over the
/// faces of a lattice. Composition is symmetric difference.
#[derive(Clone, PartialEq, Eq)]
pub struct PauliFrame {
    lattice: Lattice,
    x: FixedBitSet,
    z: FixedBitSet,
}

impl fmt::Debug for PauliFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PauliFrame")
            .field("L", &self.lattice.size())
            .field("x", &self.x_faces().collect::<Vec<_>>())
            .field("z", &self.z_faces().collect::<Vec<_>>())
            .finish()
    }
}

impl PauliFrame {
    pub fn identity(lattice: Lattice) -> Self {
        let n = lattice.num_faces();
        PauliFrame {
            lattice,
            x: FixedBitSet::with_capacity(n),
            z: FixedBitSet::with_capacity(n),
        }
    }

    pub fn from_faces(
        lattice: Lattice,
        x: impl IntoIterator<Item = FaceId>,
        z: impl IntoIterator<Item = FaceId>,
    ) -> Self {
        let mut frame = PauliFrame::identity(lattice);
        for f in x {
            frame.toggle(Sector::X, f);
        }
        for f in z {
            frame.toggle(Sector::Z, f);
        }
        frame
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    fn support(&self, sector: Sector) -> &FixedBitSet {
        match sector {
            Sector::X => &self.x,
            Sector::Z => &self.z,
        }
    }

    pub fn support_bits(&self, sector: Sector) -> &FixedBitSet {
        self.support(sector)
    }

    #[inline]
    pub fn toggle(&mut self, sector: Sector, face: FaceId) {
        let i = self.lattice.face_index(face);
        let bits = match sector {
            Sector::X => &mut self.x,
            Sector::Z => &mut self.z,
        };
        bits.toggle(i);
    }

    pub fn toggle_all(&mut self, sector: Sector, faces: impl IntoIterator<Item = FaceId>) {
        for f in faces {
            self.toggle(sector, f);
        }
    }

    #[inline]
    pub fn contains(&self, sector: Sector, face: FaceId) -> bool {
        self.support(sector).contains(self.lattice.face_index(face))
    }

    pub fn x_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.x.ones().map(|i| self.lattice.face_at(i))
    }

    pub fn z_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.z.ones().map(|i| self.lattice.face_at(i))
    }

    pub fn faces(&self, sector: Sector) -> impl Iterator<Item = FaceId> + '_ {
        self.support(sector).ones().map(|i| self.lattice.face_at(i))
    }

    pub fn weight(&self, sector: Sector) -> usize {
        self.support(sector).count_ones(..)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_clear() && self.z.is_clear()
    }

    /// In-place product `self <- self * other`.
    pub fn compose(&mut self, other: &PauliFrame) {
        assert_eq!(self.lattice, other.lattice, "frames on different lattices");
        self.x.symmetric_difference_with(&other.x);
        self.z.symmetric_difference_with(&other.z);
    }

    pub fn composed(&self, other: &PauliFrame) -> PauliFrame {
        let mut out = self.clone();
        out.compose(other);
        out
    }

    /// Whether the two operators anticommute: odd symplectic overlap.
    pub fn anticommutes(&self, other: &PauliFrame) -> bool {
        let xz = self.x.intersection_count(&other.z);
        let zx = self.z.intersection_count(&other.x);
        (xz + zx) % 2 == 1
    }
}

/// `A_v`: X on the 12 faces touching `v`.
pub fn stabilizer_vertex(lattice: &Lattice, v: VertexId) -> PauliFrame {
    PauliFrame::from_faces(*lattice, lattice.faces_of_vertex(v), [])
}

/// `B_c^color`: Z on the boundary of `c` minus its faces of `color`.
pub fn stabilizer_cell(lattice: &Lattice, c: CellId, color: Color) -> PauliFrame {
    PauliFrame::from_faces(*lattice, [], lattice.faces_of_cell_excluding(c, color))
}
