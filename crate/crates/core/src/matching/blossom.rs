//! Maximum-weight matching on general graphs by Edmonds' blossom method with
//! primal-dual weight updates, O(n^3).
//!
//! Vertices are `0..n`, non-trivial blossoms `n..2n`. Edge `k` has endpoints
//! `2k` and `2k + 1`; `p ^ 1` is the opposite endpoint of `p`. Vertex duals are
//! stored doubled so every quantity stays integral.

const NONE: usize = usize::MAX;

const FREE: u8 = 0;
const S: u8 = 1;
const T: u8 = 2;
const CRUMB: u8 = 5;

struct Solver<'a> {
    n: usize,
    edges: &'a [(usize, usize, i64)],
    maxcardinality: bool,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Vec<usize>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
    // Scratch buffers reused across calls.
    bestedgeto: Vec<usize>,
    leaves: Vec<usize>,
}

/// Python-style index: negative values count from the end.
#[inline]
fn at(v: &[usize], i: isize) -> usize {
    if i < 0 {
        v[(v.len() as isize + i) as usize]
    } else {
        v[i as usize]
    }
}

impl<'a> Solver<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i64)], maxcardinality: bool) -> Self {
        let m = edges.len();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * m);
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            assert!(i != j && i < n && j < n, "bad edge ({i}, {j})");
            endpoint.push(i);
            endpoint.push(j);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..n).collect();
        blossombase.resize(2 * n, NONE);
        let mut dualvar = vec![maxweight; n];
        dualvar.resize(2 * n, 0);
        Solver {
            n,
            edges,
            maxcardinality,
            endpoint,
            neighbend,
            mate: vec![NONE; n],
            label: vec![FREE; 2 * n],
            labelend: vec![NONE; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NONE; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NONE; 2 * n],
            blossombestedges: vec![Vec::new(); 2 * n],
            unusedblossoms: (n..2 * n).collect(),
            dualvar,
            allowedge: vec![false; m],
            queue: Vec::with_capacity(n),
            bestedgeto: vec![NONE; 2 * n],
            leaves: Vec::with_capacity(n),
        }
    }

    /// Twice the slack of edge `k` (not meaningful inside blossoms).
    #[inline]
    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn collect_leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.n {
            out.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                self.collect_leaves(t, out);
            }
        }
    }

    fn leaves_of(&mut self, b: usize) -> Vec<usize> {
        let mut out = std::mem::take(&mut self.leaves);
        out.clear();
        self.collect_leaves(b, &mut out);
        out
    }

    fn return_leaves(&mut self, v: Vec<usize>) {
        self.leaves = v;
    }

    fn assign_label(&mut self, mut w: usize, mut t: u8, mut p: usize) {
        loop {
            let b = self.inblossom[w];
            debug_assert!(self.label[w] == FREE && self.label[b] == FREE);
            self.label[w] = t;
            self.label[b] = t;
            self.labelend[w] = p;
            self.labelend[b] = p;
            self.bestedge[w] = NONE;
            self.bestedge[b] = NONE;
            if t == S {
                let leaves = self.leaves_of(b);
                self.queue.extend_from_slice(&leaves);
                self.return_leaves(leaves);
                return;
            }
            // T: label the mate of the base S.
            let base = self.blossombase[b];
            debug_assert!(self.mate[base] != NONE);
            let mb = self.mate[base];
            w = self.endpoint[mb];
            t = S;
            p = mb ^ 1;
        }
    }

    /// Trace back from `v` and `w`; return the base of a new blossom, or NONE
    /// for an augmenting path.
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], S);
            path.push(b);
            self.label[b] = CRUMB;
            debug_assert_eq!(self.labelend[b], self.mate[self.blossombase[b]]);
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], T);
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = S;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom pool exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;

        let mut childs = std::mem::take(&mut self.blossomchilds[b]);
        let mut endps = std::mem::take(&mut self.blossomendps[b]);
        childs.clear();
        endps.clear();
        while bv != bb {
            self.blossomparent[bv] = b;
            childs.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        childs.push(bb);
        childs.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            childs.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.blossomchilds[b] = childs;
        self.blossomendps[b] = endps;

        debug_assert_eq!(self.label[bb], S);
        self.label[b] = S;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;

        let leaves = self.leaves_of(b);
        for &v in &leaves {
            if self.label[self.inblossom[v]] == T {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }
        self.return_leaves(leaves);

        // Least-slack edges from the new blossom to other S-blossoms.
        let mut bestedgeto = std::mem::take(&mut self.bestedgeto);
        let mut touched: Vec<usize> = Vec::new();
        let childs = self.blossomchilds[b].clone();
        for &sub in &childs {
            let own = std::mem::take(&mut self.blossombestedges[sub]);
            let candidates: Vec<usize> = if own.is_empty() {
                let leaves = self.leaves_of(sub);
                let ks = leaves
                    .iter()
                    .flat_map(|&v| self.neighbend[v].iter().map(|p| p / 2))
                    .collect();
                self.return_leaves(leaves);
                ks
            } else {
                own
            };
            for k in candidates {
                let (mut i, mut j, _) = self.edges[k];
                if self.inblossom[j] == b {
                    std::mem::swap(&mut i, &mut j);
                }
                let _ = i;
                let bj = self.inblossom[j];
                if bj != b
                    && self.label[bj] == S
                    && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                {
                    if bestedgeto[bj] == NONE {
                        touched.push(bj);
                    }
                    bestedgeto[bj] = k;
                }
            }
            self.bestedge[sub] = NONE;
        }
        // Keep the list ordered by blossom index, as a full scan would.
        touched.sort_unstable();
        let list: Vec<usize> = touched.iter().map(|&bj| bestedgeto[bj]).collect();
        for &bj in &touched {
            bestedgeto[bj] = NONE;
        }
        self.bestedgeto = bestedgeto;

        let mut best = NONE;
        for &k in &list {
            if best == NONE || self.slack(k) < self.slack(best) {
                best = k;
            }
        }
        self.blossombestedges[b] = list;
        self.bestedge[b] = best;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                let leaves = self.leaves_of(s);
                for &v in &leaves {
                    self.inblossom[v] = s;
                }
                self.return_leaves(leaves);
            }
        }

        if !endstage && self.label[b] == T {
            let endps = self.blossomendps[b].clone();
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).unwrap() as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 != 0 {
                j -= childs.len() as isize;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                self.label[self.endpoint[p ^ 1]] = FREE;
                let q = at(&endps, j - endptrick as isize) ^ endptrick ^ 1;
                self.label[self.endpoint[q]] = FREE;
                self.assign_label(self.endpoint[p ^ 1], T, p);
                self.allowedge[at(&endps, j - endptrick as isize) / 2] = true;
                j += jstep;
                p = at(&endps, j - endptrick as isize) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = at(&childs, j);
            self.label[self.endpoint[p ^ 1]] = T;
            self.label[bv] = T;
            self.labelend[self.endpoint[p ^ 1]] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while at(&childs, j) != entrychild {
                let bv = at(&childs, j);
                if self.label[bv] == S {
                    j += jstep;
                    continue;
                }
                let leaves = self.leaves_of(bv);
                let mut v = NONE;
                for &x in &leaves {
                    v = x;
                    if self.label[x] != FREE {
                        break;
                    }
                }
                self.return_leaves(leaves);
                if self.label[v] != FREE {
                    debug_assert_eq!(self.label[v], T);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = FREE;
                    let mb = self.mate[self.blossombase[bv]];
                    self.label[self.endpoint[mb]] = FREE;
                    self.assign_label(v, T, self.labelend[v]);
                }
                j += jstep;
            }
        }
        self.label[b] = FREE;
        self.labelend[b] = NONE;
        self.blossombase[b] = NONE;
        self.bestedge[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombestedges[b].clear();
        self.unusedblossoms.push(b);
    }

    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let i = self.blossomchilds[b].iter().position(|&c| c == t).unwrap();
        let mut j = i as isize;
        let (jstep, endptrick): (isize, usize) = if i & 1 != 0 {
            j -= self.blossomchilds[b].len() as isize;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = at(&self.blossomchilds[b], j);
            let p = at(&self.blossomendps[b], j - endptrick as isize) ^ endptrick;
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = at(&self.blossomchilds[b], j);
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], S);
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], T);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(mut self) -> Solution {
        let n = self.n;
        for _stage in 0..n {
            self.label.fill(FREE);
            self.bestedge.fill(NONE);
            for b in n..2 * n {
                self.blossombestedges[b].clear();
            }
            self.allowedge.fill(false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == FREE {
                    self.assign_label(v, S, NONE);
                }
            }

            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    debug_assert_eq!(self.label[self.inblossom[v]], S);
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        // Blossoms may grow while v is scanned.
                        let bw = self.inblossom[w];
                        if self.inblossom[v] == bw {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[bw] == FREE {
                                self.assign_label(w, T, p ^ 1);
                            } else if self.label[bw] == S {
                                let base = self.scan_blossom(v, w);
                                if base != NONE {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == FREE {
                                debug_assert_eq!(self.label[bw], T);
                                self.label[w] = T;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[bw] == S {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == FREE
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                    if augmented {
                        break;
                    }
                }
                if augmented {
                    break;
                }

                // No augmenting path under current duals: find the largest
                // dual step that keeps every slack non-negative.
                let mut deltatype = 0u8;
                let mut delta = 0i64;
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                if !self.maxcardinality {
                    deltatype = 1;
                    delta = *self.dualvar[..n].iter().min().unwrap();
                }
                for v in 0..n {
                    if self.label[self.inblossom[v]] == FREE && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NONE
                        && self.label[b] == S
                        && self.bestedge[b] != NONE
                    {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert!(kslack % 2 == 0, "odd slack between S-blossoms");
                        let d = kslack / 2;
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == T
                        && (deltatype == 0 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == 0 {
                    debug_assert!(self.maxcardinality);
                    deltatype = 1;
                    delta = (*self.dualvar[..n].iter().min().unwrap()).max(0);
                }

                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        S => self.dualvar[v] -= delta,
                        T => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            S => self.dualvar[b] += delta,
                            T => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == FREE {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], S);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert_eq!(self.label[self.inblossom[i]], S);
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }

            if !augmented {
                break;
            }
            for b in n..2 * n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == S
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }

        #[cfg(debug_assertions)]
        self.verify_optimum();

        let mut mate = vec![NONE; n];
        for v in 0..n {
            if self.mate[v] != NONE {
                mate[v] = self.endpoint[self.mate[v]];
            }
        }
        Solution {
            mate,
            dualvar: self.dualvar,
            blossomparent: self.blossomparent,
        }
    }

    /// Complementary slackness check of the final primal/dual pair.
    #[cfg(debug_assertions)]
    fn verify_optimum(&self) {
        let n = self.n;
        let vdualoffset = if self.maxcardinality {
            (-*self.dualvar[..n].iter().min().unwrap_or(&0)).max(0)
        } else {
            0
        };
        debug_assert!(self.dualvar[..n].iter().all(|&d| d + vdualoffset >= 0));
        debug_assert!(self.dualvar[n..].iter().all(|&d| d >= 0));
        for (k, &(i, j, w)) in self.edges.iter().enumerate() {
            let mut s = self.dualvar[i] + self.dualvar[j] - 2 * w;
            let chain = |mut x: usize| {
                let mut c = vec![x];
                while self.blossomparent[x] != NONE {
                    x = self.blossomparent[x];
                    c.push(x);
                }
                c.reverse();
                c
            };
            for (bi, bj) in chain(i).into_iter().zip(chain(j)) {
                if bi != bj {
                    break;
                }
                s += 2 * self.dualvar[bi];
            }
            debug_assert!(s >= 0, "negative slack on edge {k}");
            if self.mate[i] != NONE && self.mate[i] / 2 == k {
                debug_assert!(self.mate[j] / 2 == k && s == 0);
            }
        }
        for v in 0..n {
            debug_assert!(self.mate[v] != NONE || self.dualvar[v] + vdualoffset == 0);
        }
    }
}

/// Primal and dual result of a run.
pub(crate) struct Solution {
    /// Partner of each vertex, or [`UNMATCHED`].
    pub mate: Vec<usize>,
    /// Doubled vertex duals in `0..n`, blossom duals in `n..2n`.
    pub dualvar: Vec<i64>,
    /// Enclosing blossom of each vertex or blossom, or [`UNMATCHED`] at top
    /// level.
    pub blossomparent: Vec<usize>,
}

impl Solution {
    /// Twice the reduced cost of an edge `(i, j)` of weight `w`: the vertex
    /// duals plus both-sided blossom duals minus `2w`. The dual solution is
    /// feasible for an edge iff this is non-negative.
    pub fn slack(&self, i: usize, j: usize, w: i64) -> i64 {
        let mut s = self.dualvar[i] + self.dualvar[j] - 2 * w;
        let chain = |mut x: usize| {
            let mut c = Vec::new();
            while self.blossomparent[x] != NONE {
                x = self.blossomparent[x];
                c.push(x);
            }
            c
        };
        if self.blossomparent[i] == NONE || self.blossomparent[j] == NONE {
            return s;
        }
        let (ci, cj) = (chain(i), chain(j));
        for (bi, bj) in ci.iter().rev().zip(cj.iter().rev()) {
            if bi != bj {
                break;
            }
            s += 2 * self.dualvar[*bi];
        }
        s
    }
}

/// Maximum-weight matching of the given edge list. With `maxcardinality`
/// only maximum-cardinality matchings are considered.
pub(crate) fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
    maxcardinality: bool,
) -> Solution {
    if edges.is_empty() {
        return Solution {
            mate: vec![NONE; n],
            dualvar: vec![0; 2 * n],
            blossomparent: vec![NONE; 2 * n],
        };
    }
    Solver::new(n, edges, maxcardinality).solve()
}

pub(crate) const UNMATCHED: usize = NONE;
