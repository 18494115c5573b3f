//! Fast invariant checks run by the `selftest` command.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{run_trial, Variant};
use crate::code::{extract_syndrome, stabilizer_cell, stabilizer_vertex, PauliFrame, Sector};
use crate::lattice::{CellId, Color, Lattice, VertexId};
use crate::matching::{brute_force_mwpm, mwpm, WeightedGraph};
use crate::noise::{derive_seed, sample, NoiseSpec};

/// Supplier of stabilizer generators, replaceable to test the checks
/// themselves.
pub trait StabilizerSource: Sync {
    fn vertex(&self, lattice: &Lattice, v: VertexId) -> PauliFrame;
    fn cell(&self, lattice: &Lattice, c: CellId, color: Color) -> PauliFrame;
}

/// The generators of [`crate::code`].
#[derive(Debug, Clone, Copy, Default)]
pub struct CodeStabilizers;

impl StabilizerSource for CodeStabilizers {
    fn vertex(&self, lattice: &Lattice, v: VertexId) -> PauliFrame {
        stabilizer_vertex(lattice, v)
    }

    fn cell(&self, lattice: &Lattice, c: CellId, color: Color) -> PauliFrame {
        stabilizer_cell(lattice, c, color)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

fn section(name: &'static str, check: impl FnOnce() -> Result<String, String>) -> SectionReport {
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    SectionReport {
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn commutation(source: &dyn StabilizerSource) -> Result<String, String> {
    let mut checked = 0usize;
    for l in [2, 3] {
        let lattice = Lattice::new(l).map_err(|e| e.to_string())?;
        let vertices: Vec<PauliFrame> = lattice
            .vertices()
            .map(|v| source.vertex(&lattice, v))
            .collect();
        for (v, a) in lattice.vertices().zip(&vertices) {
            if a.weight(Sector::X) != 12 || a.weight(Sector::Z) != 0 {
                return Err(format!(
                    "A_v at {} has X weight {}",
                    v.0,
                    a.weight(Sector::X)
                ));
            }
        }
        for c in lattice.cells() {
            for color in Color::ALL {
                let b = source.cell(&lattice, c, color);
                if b.weight(Sector::Z) != 4 || b.weight(Sector::X) != 0 {
                    return Err(format!(
                        "B_c^{color} at {} has Z weight {}",
                        c.0,
                        b.weight(Sector::Z)
                    ));
                }
                for (v, a) in lattice.vertices().zip(&vertices) {
                    if a.anticommutes(&b) {
                        return Err(format!(
                            "A_v at {} anticommutes with B_c^{color} at {}",
                            v.0, c.0
                        ));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} generator pairs commute"))
}

fn plane_parities() -> Result<String, String> {
    let mut errors = 0;
    for l in [4, 8] {
        let lattice = Lattice::new(l).map_err(|e| e.to_string())?;
        for sector in [Sector::X, Sector::Z] {
            for t in 0..200 {
                let spec =
                    NoiseSpec::new(0.1, sector, derive_seed(101, t)).map_err(|e| e.to_string())?;
                let s = extract_syndrome(&sample(&spec, lattice)).map_err(|e| e.to_string())?;
                if let Some(plane) = s.plane_parity_violations(&lattice).first() {
                    return Err(format!("odd defect count on {plane:?} (L={l}, trial {t})"));
                }
                errors += 1;
            }
        }
    }
    Ok(format!("{errors} random errors respect every plane parity"))
}

fn matching_oracle() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let graphs = 300;
    for k in 0..graphs {
        let n = 2 * rng.gen_range(1..=5);
        let g = WeightedGraph::from_fn(n, |_, _| rng.gen_range(0..=20));
        let fast = mwpm(&g).map_err(|e| e.to_string())?;
        let slow = brute_force_mwpm(&g).map_err(|e| e.to_string())?;
        if fast.total_weight != slow.total_weight || !fast.is_perfect(n) {
            return Err(format!(
                "graph {k}: blossom {} vs exhaustive {}",
                fast.total_weight, slow.total_weight
            ));
        }
    }
    Ok(format!(
        "{graphs} random graphs agree with exhaustive search"
    ))
}

fn neutralizers() -> Result<String, String> {
    let mut decodes = 0;
    for l in [4, 8] {
        for (sector, variant, p) in [
            (Sector::X, Variant::Corner, 0.09),
            (Sector::Z, Variant::Iterative(0), 0.04),
            (Sector::Z, Variant::Iterative(2), 0.04),
        ] {
            for t in 0..60 {
                run_trial(l, p, sector, variant, derive_seed(303, t))
                    .map_err(|e| format!("L={l} {sector} {variant} trial {t}: {e}"))?;
                decodes += 1;
            }
        }
    }
    Ok(format!("{decodes} decodes cleared their syndrome"))
}

/// Run every section against `source`.
pub fn run_selftest(source: &dyn StabilizerSource) -> Vec<SectionReport> {
    vec![
        section("stabilizer commutation", || commutation(source)),
        section("plane parities", plane_parities),
        section("matching oracle", matching_oracle),
        section("neutralizer syndrome clearing", neutralizers),
    ]
}
