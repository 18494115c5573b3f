//! Turn-aware path costs inside a dual plane.
//!
//! A lineon pair is joined by a lattice path in the plane; every unit step
//! costs one and every turn costs one more unless it happens in a cell holding
//! a defect of the plane's own color (a waypoint). Any path with a detour
//! costs at least two extra steps, so the optimum is the torus Manhattan
//! distance `d` when some monotone staircase turns only at waypoints, and
//! `d + 1` otherwise. [`WaypointGrid::weight`] decides this with a bit-parallel
//! sweep over the bounding rectangle; [`turn_penalty_search`] is the direct
//! shortest-path definition, kept as a reference.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Largest plane side handled by the bit-parallel sweep.
const MAX_FAST_SIDE: usize = 128;

/// Waypoint occupancy of an `l x l` periodic plane, addressed by in-plane
/// coordinates `(p, q)`.
#[derive(Debug, Clone)]
pub struct WaypointGrid {
    l: usize,
    /// `rows[q]` bit `p` set when `(p, q)` holds a waypoint.
    rows: Vec<u128>,
    /// Same rows with bit `l - 1 - p` for `(p, q)`.
    reversed: Vec<u128>,
    cells: Vec<bool>,
}

impl WaypointGrid {
    pub fn new(l: usize, waypoints: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut grid = WaypointGrid {
            l,
            rows: vec![0; l],
            reversed: vec![0; l],
            cells: vec![false; l * l],
        };
        for (p, q) in waypoints {
            let (p, q) = (p as usize, q as usize);
            grid.cells[q * l + p] = true;
            if l <= MAX_FAST_SIDE {
                grid.rows[q] |= 1 << p;
                grid.reversed[q] |= 1 << (l - 1 - p);
            }
        }
        grid
    }

    #[inline]
    pub fn side(&self) -> usize {
        self.l
    }

    #[inline]
    pub fn is_waypoint(&self, p: u32, q: u32) -> bool {
        self.cells[q as usize * self.l + p as usize]
    }

    /// Cheapest turn-penalized path cost between two cells.
    pub fn weight(&self, a: (u32, u32), b: (u32, u32)) -> u32 {
        if self.l > MAX_FAST_SIDE {
            return turn_penalty_search(self, a, b);
        }
        let l = self.l as u32;
        let (fp, fq) = ((b.0 + l - a.0) % l, (b.1 + l - a.1) % l);
        let (dp, dq) = (fp.min(l - fp), fq.min(l - fq));
        if dp == 0 || dq == 0 {
            return dp + dq;
        }
        let dirs = |f: u32| -> &'static [bool] {
            // `true` means increasing coordinate.
            if 2 * f < l {
                &[true]
            } else if 2 * f > l {
                &[false]
            } else {
                &[true, false]
            }
        };
        for &sp in dirs(fp) {
            for &sq in dirs(fq) {
                if self.staircase_exists(a, dp, dq, sp, sq) {
                    return dp + dq;
                }
            }
        }
        dp + dq + 1
    }

    /// Waypoints of row `q` as seen walking from column `p0` in direction
    /// `forward`: bit `i` is the cell `i` steps away.
    #[inline]
    fn row_from(&self, q: u32, p0: u32, forward: bool, width_mask: u128) -> u128 {
        let l = self.l as u32;
        let (row, shift) = if forward {
            (self.rows[q as usize], p0)
        } else {
            (self.reversed[q as usize], l - 1 - p0)
        };
        let full = if l == 128 {
            u128::MAX
        } else {
            (1u128 << l) - 1
        };
        let rotated = if shift == 0 {
            row
        } else {
            ((row >> shift) | (row << (l - shift))) & full
        };
        rotated & width_mask
    }

    /// Whether a monotone path of `dp` steps along `p` and `dq` along `q`,
    /// leaving `a` in the given directions, can reach the far corner turning
    /// only at waypoints.
    ///
    /// Row by row, `vert` holds the columns reachable while heading along `q`
    /// and `horiz` those reachable while heading along `p`. Heading along `p`
    /// sweeps to the end of the row; a waypoint converts either heading into
    /// the other.
    fn staircase_exists(&self, a: (u32, u32), dp: u32, dq: u32, sp: bool, sq: bool) -> bool {
        let l = self.l as u32;
        let width = if dp + 1 >= 128 {
            u128::MAX
        } else {
            (1u128 << (dp + 1)) - 1
        };
        let sweep = |seeds: u128| -> u128 {
            if seeds == 0 {
                0
            } else {
                width & !((seeds & seeds.wrapping_neg()) - 1)
            }
        };
        let target = 1u128 << dp;
        let mut vert: u128 = 1;
        for j in 0..=dq {
            let q = if sq {
                (a.1 + j) % l
            } else {
                (a.1 + l - j % l) % l
            };
            let w = self.row_from(q, a.0, sp, width);
            let seeds = (vert & w) | if j == 0 { 1 } else { 0 };
            let horiz = sweep(seeds);
            if j == dq {
                return (vert | horiz) & target != 0;
            }
            vert |= horiz & w;
        }
        unreachable!()
    }
}

/// Reference definition: Dijkstra over (cell, heading) states on the torus.
/// A step costs one; a quarter turn costs one outside waypoint cells.
pub fn turn_penalty_search(grid: &WaypointGrid, a: (u32, u32), b: (u32, u32)) -> u32 {
    let l = grid.side() as u32;
    if a == b {
        return 0;
    }
    // Headings: 0 = +p, 1 = -p, 2 = +q, 3 = -q.
    let idx = |p: u32, q: u32, h: usize| ((q * l + p) as usize) * 4 + h;
    let mut dist = vec![u32::MAX; (l * l) as usize * 4];
    let mut heap = BinaryHeap::new();
    for h in 0..4 {
        dist[idx(a.0, a.1, h)] = 0;
        heap.push(Reverse((0u32, a.0, a.1, h)));
    }
    while let Some(Reverse((d, p, q, h))) = heap.pop() {
        if d > dist[idx(p, q, h)] {
            continue;
        }
        if (p, q) == b {
            return d;
        }
        let (np, nq) = match h {
            0 => ((p + 1) % l, q),
            1 => ((p + l - 1) % l, q),
            2 => (p, (q + 1) % l),
            _ => (p, (q + l - 1) % l),
        };
        let mut relax = |nd: u32, np: u32, nq: u32, nh: usize, heap: &mut BinaryHeap<_>| {
            let i = idx(np, nq, nh);
            if nd < dist[i] {
                dist[i] = nd;
                heap.push(Reverse((nd, np, nq, nh)));
            }
        };
        relax(d + 1, np, nq, h, &mut heap);
        let turn = if grid.is_waypoint(p, q) { 0 } else { 1 };
        let perpendicular: [usize; 2] = if h < 2 { [2, 3] } else { [0, 1] };
        for nh in perpendicular {
            relax(d + turn, p, q, nh, &mut heap);
        }
    }
    unreachable!("the torus is connected")
}
