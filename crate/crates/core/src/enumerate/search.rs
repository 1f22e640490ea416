//! Backtracking completion of vertex fans.
//!
//! The search starts from the closed star of vertex 0 and repeatedly picks
//! the least vertex whose fan is still open. It closes one gap in that fan
//! by adding a face along the open edge to the least neighbour, trying every
//! face size and every choice of the face's remaining vertices (existing
//! labels ascending, then the next fresh label). Partial fans are kept as
//! unions of paths whose size words must be cyclic subwords of the target
//! type; a closed fan must read the type exactly.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::gate::closed_star;
use crate::face_type::FaceSeqType;

/// Run of consecutive faces around a vertex: `sizes[i]` is the face between
/// neighbours `nbrs[i]` and `nbrs[i + 1]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Path {
    nbrs: Vec<usize>,
    sizes: Vec<usize>,
}

impl Path {
    fn reverse(&mut self) {
        self.nbrs.reverse();
        self.sizes.reverse();
    }
}

/// Partial fan of one vertex.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Fan {
    paths: Vec<Path>,
    closed: bool,
}

impl Fan {
    fn corners(&self) -> usize {
        self.paths.iter().map(|p| p.sizes.len()).sum()
    }

    /// Path index and whether `a` sits at its end (vs. its start).
    fn endpoint(&self, a: usize) -> Option<(usize, bool)> {
        self.paths.iter().enumerate().find_map(|(i, p)| {
            if p.nbrs.last() == Some(&a) {
                Some((i, true))
            } else if p.nbrs.first() == Some(&a) {
                Some((i, false))
            } else {
                None
            }
        })
    }

    fn contains(&self, a: usize) -> bool {
        self.paths.iter().any(|p| p.nbrs.contains(&a))
    }

    fn least_endpoint(&self) -> Option<usize> {
        self.paths.iter().flat_map(|p| [p.nbrs[0], *p.nbrs.last().unwrap()]).min()
    }
}

/// Fan rules derived from the target type.
pub struct Rules {
    t: FaceSeqType,
    sizes: Vec<usize>,
    open_words: HashSet<Vec<usize>>,
}

impl Rules {
    pub fn new(t: &FaceSeqType) -> Self {
        let s = t.sizes();
        let len = s.len();
        let mut open_words = HashSet::new();
        for start in 0..len {
            for k in 1..len {
                let w: Vec<usize> = (0..k).map(|i| s[(start + i) % len]).collect();
                let r: Vec<usize> = w.iter().rev().copied().collect();
                open_words.insert(w);
                open_words.insert(r);
            }
        }
        Rules { t: t.clone(), sizes: t.distinct_sizes(), open_words }
    }

    fn len(&self) -> usize {
        self.t.len()
    }

    /// The fan after adding a face of size `p` whose corner at this vertex
    /// joins neighbours `a` and `b`, or `None` if that breaks the type.
    fn add_corner(&self, fan: &Fan, a: usize, b: usize, p: usize) -> Option<Fan> {
        if fan.closed {
            return None;
        }
        let (ea, eb) = (fan.endpoint(a), fan.endpoint(b));
        if (ea.is_none() && fan.contains(a)) || (eb.is_none() && fan.contains(b)) {
            return None;
        }
        let mut paths = fan.paths.clone();
        let changed = match (ea, eb) {
            (None, None) => {
                paths.push(Path { nbrs: vec![a, b], sizes: vec![p] });
                paths.len() - 1
            }
            (Some((i, at_end)), None) | (None, Some((i, at_end))) => {
                let other = if ea.is_some() { b } else { a };
                let path = &mut paths[i];
                if !at_end {
                    path.reverse();
                }
                path.nbrs.push(other);
                path.sizes.push(p);
                i
            }
            (Some((i, _)), Some((j, _))) if i == j => {
                let mut word = paths[i].sizes.clone();
                word.push(p);
                return (paths.len() == 1 && self.t.matches(&word)).then(|| {
                    paths[i].sizes = word;
                    Fan { paths, closed: true }
                });
            }
            (Some((i, ai)), Some((j, bj))) => {
                let mut pa = paths[i].clone();
                let mut pb = paths[j].clone();
                if !ai {
                    pa.reverse();
                }
                if bj {
                    pb.reverse();
                }
                pa.nbrs.extend(pb.nbrs);
                pa.sizes.push(p);
                pa.sizes.extend(pb.sizes);
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                paths.remove(hi);
                paths[lo] = pa;
                lo
            }
        };
        let fan = Fan { paths, closed: false };
        let ok = self.open_words.contains(&fan.paths[changed].sizes) && fan.corners() + fan.paths.len() <= self.len();
        ok.then_some(fan)
    }
}

/// One candidate face with the fans it produces.
#[derive(Debug, Clone)]
pub struct Step {
    face: Vec<usize>,
    staged: Vec<(usize, Fan)>,
    fresh_after: usize,
}

struct Undo {
    saved: Vec<(usize, Fan)>,
    fresh_before: usize,
    size: usize,
}

enum Expansion {
    Leaf,
    Dead,
    Children(Vec<Step>),
}

/// Partial map during the search.
#[derive(Debug, Clone)]
pub struct SearchState {
    n: usize,
    faces: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
    edge_count: Vec<u8>,
    fans: Vec<Fan>,
    next_fresh: usize,
    budget: Vec<usize>,
}

impl SearchState {
    /// Fixes the fan of vertex 0 as the type read in normalized order.
    pub fn start(rules: &Rules, n: usize, budget: &[(usize, usize)]) -> Option<Self> {
        let star = closed_star(&rules.t);
        let max = rules.sizes.iter().copied().max().unwrap_or(0);
        let mut b = vec![0; max + 1];
        for &(p, c) in budget {
            b[p] = c;
        }
        let mut st = SearchState {
            n,
            faces: Vec::new(),
            vertex_faces: vec![Vec::new(); n],
            edge_count: vec![0; n * n],
            fans: vec![Fan::default(); n],
            next_fresh: 0,
            budget: b,
        };
        let used = star.iter().flatten().copied().max()? + 1;
        if used > n {
            return None;
        }
        for face in star {
            let p = face.len();
            if st.budget[p] == 0 {
                return None;
            }
            let mut staged = Vec::with_capacity(p);
            for (i, &x) in face.iter().enumerate() {
                let a = face[(i + p - 1) % p];
                let b = face[(i + 1) % p];
                staged.push((x, rules.add_corner(&st.fans[x], a, b, p)?));
            }
            st.commit(&Step { face, staged, fresh_after: used });
        }
        Some(st)
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    fn edges(&self, a: usize, b: usize) -> u8 {
        self.edge_count[a * self.n + b]
    }

    fn bump(&mut self, a: usize, b: usize, up: bool) {
        for idx in [a * self.n + b, b * self.n + a] {
            if up {
                self.edge_count[idx] += 1;
            } else {
                self.edge_count[idx] -= 1;
            }
        }
    }

    fn commit(&mut self, step: &Step) -> Undo {
        let id = self.faces.len();
        let p = step.face.len();
        for i in 0..p {
            self.bump(step.face[i], step.face[(i + 1) % p], true);
            self.vertex_faces[step.face[i]].push(id);
        }
        self.faces.push(step.face.clone());
        let saved = step.staged.iter().map(|(x, f)| (*x, std::mem::replace(&mut self.fans[*x], f.clone()))).collect();
        self.budget[p] -= 1;
        let fresh_before = self.next_fresh;
        self.next_fresh = step.fresh_after;
        Undo { saved, fresh_before, size: p }
    }

    fn undo(&mut self, u: Undo) {
        let face = self.faces.pop().expect("face to undo");
        let p = face.len();
        for i in 0..p {
            self.bump(face[i], face[(i + 1) % p], false);
            self.vertex_faces[face[i]].pop();
        }
        for (x, f) in u.saved.into_iter().rev() {
            self.fans[x] = f;
        }
        self.budget[u.size] += 1;
        self.next_fresh = u.fresh_before;
    }

    fn expand(&self, rules: &Rules) -> Expansion {
        let Some(v) = (0..self.next_fresh).find(|&x| !self.fans[x].closed) else {
            return if self.next_fresh == self.n { Expansion::Leaf } else { Expansion::Dead };
        };
        let Some(u) = self.fans[v].least_endpoint() else {
            return Expansion::Dead;
        };
        let mut out = Vec::new();
        let mut in_face = vec![false; self.n];
        in_face[u] = true;
        in_face[v] = true;
        for &p in &rules.sizes {
            if self.budget[p] == 0 {
                continue;
            }
            let mut face = vec![v];
            let mut staged = Vec::with_capacity(p);
            self.extend(rules, p, u, &mut face, &mut staged, self.next_fresh, &mut in_face, &mut out);
        }
        Expansion::Children(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        rules: &Rules,
        p: usize,
        u: usize,
        face: &mut Vec<usize>,
        staged: &mut Vec<(usize, Fan)>,
        fresh: usize,
        in_face: &mut [bool],
        out: &mut Vec<Step>,
    ) {
        let k = face.len();
        let prev = face[k - 1];
        if k == p - 1 {
            // Close the face through u.
            if self.edges(prev, u) >= 2 {
                return;
            }
            let Some(fp) = rules.add_corner(&self.fans[prev], face[k - 2], u, p) else { return };
            let Some(fu) = rules.add_corner(&self.fans[u], prev, face[0], p) else { return };
            let mut staged = staged.clone();
            staged.push((prev, fp));
            staged.push((u, fu));
            let mut f = face.clone();
            f.push(u);
            out.push(Step { face: f, staged, fresh_after: fresh });
            return;
        }
        let before_prev = if k == 1 { u } else { face[k - 2] };
        let is_last = k + 1 == p - 1;
        let top = fresh.min(self.n - 1);
        for w in 0..=top {
            if in_face[w] {
                continue;
            }
            let is_fresh = w == fresh;
            if !is_fresh && !self.admissible(rules, w, prev, u, is_last, in_face) {
                continue;
            }
            let Some(fp) = rules.add_corner(&self.fans[prev], before_prev, w, p) else { continue };
            face.push(w);
            staged.push((prev, fp));
            in_face[w] = true;
            self.extend(rules, p, u, face, staged, fresh + usize::from(is_fresh), in_face, out);
            in_face[w] = false;
            staged.pop();
            face.pop();
        }
    }

    /// Checks an existing vertex `w` following `prev` in the face being built.
    fn admissible(&self, rules: &Rules, w: usize, prev: usize, u: usize, is_last: bool, in_face: &[bool]) -> bool {
        let fan = &self.fans[w];
        if fan.closed {
            return false;
        }
        let e = self.edges(prev, w);
        if e >= 2 {
            return false;
        }
        if e == 0 && fan.corners() + fan.paths.len() + 1 > rules.len() {
            return false;
        }
        // Intersection with every face already at w.
        for &g in &self.vertex_faces[w] {
            let gf = &self.faces[g];
            let mut shared = gf.iter().filter(|&&x| in_face[x]);
            let Some(&s) = shared.next() else { continue };
            if shared.next().is_some() {
                return false;
            }
            let len = gf.len();
            let i = gf.iter().position(|&x| x == w).unwrap();
            let adjacent = gf[(i + 1) % len] == s || gf[(i + len - 1) % len] == s;
            if !adjacent || !(s == prev || (s == u && is_last)) {
                return false;
            }
        }
        true
    }
}

/// Shared node counter with an optional cap.
pub struct Control {
    nodes: AtomicU64,
    cap: Option<u64>,
    exhausted: AtomicBool,
}

impl Control {
    pub fn new(cap: Option<u64>) -> Self {
        Control { nodes: AtomicU64::new(0), cap, exhausted: AtomicBool::new(false) }
    }

    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.cap.is_some_and(|c| k > c) {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

impl SearchState {
    fn dfs(&mut self, rules: &Rules, ctl: &Control, out: &mut Vec<Vec<Vec<usize>>>) {
        if !ctl.tick() {
            return;
        }
        match self.expand(rules) {
            Expansion::Leaf => out.push(self.faces.clone()),
            Expansion::Dead => {}
            Expansion::Children(steps) => {
                for s in &steps {
                    let u = self.commit(s);
                    self.dfs(rules, ctl, out);
                    self.undo(u);
                }
            }
        }
    }
}

/// Face lists of every completed search leaf, in search order.
///
/// With `jobs > 1` the subtrees below the first branching are explored on a
/// thread pool and concatenated in branch order, so the result is the same
/// as a single-threaded run.
pub fn complete_all(
    rules: &Rules,
    n: usize,
    budget: &[(usize, usize)],
    jobs: usize,
    ctl: &Control,
) -> Vec<Vec<Vec<usize>>> {
    let Some(root) = SearchState::start(rules, n, budget) else { return Vec::new() };
    if !ctl.tick() {
        return Vec::new();
    }
    let steps = match root.expand(rules) {
        Expansion::Leaf => return vec![root.faces.clone()],
        Expansion::Dead => return Vec::new(),
        Expansion::Children(steps) => steps,
    };
    let run = |step: &Step| {
        let mut st = root.clone();
        st.commit(step);
        let mut out = Vec::new();
        st.dfs(rules, ctl, &mut out);
        out
    };
    let parts: Vec<Vec<Vec<Vec<usize>>>> = if jobs > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| steps.par_iter().map(run).collect()),
            Err(_) => steps.iter().map(run).collect(),
        }
    } else {
        steps.iter().map(run).collect()
    };
    parts.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules(s: &str) -> Rules {
        Rules::new(&s.parse().unwrap())
    }

    #[test]
    fn corners_grow_merge_and_close() {
        let r = rules("3,3,3,4,4");
        let f = Fan::default();
        let f = r.add_corner(&f, 1, 2, 3).unwrap();
        let f = r.add_corner(&f, 3, 4, 4).unwrap();
        assert_eq!(f.paths.len(), 2);
        // Joining the two runs gives the word 3,3,4 which is a cyclic subword.
        let f = r.add_corner(&f, 2, 3, 3).unwrap();
        assert_eq!(f.paths.len(), 1);
        assert_eq!(f.paths[0].sizes, vec![3, 3, 4]);
        // 3,3,4,3 is not a subword of (3,3,3,4,4).
        assert!(r.add_corner(&f, 4, 5, 3).is_none());
        let f = r.add_corner(&f, 4, 5, 4).unwrap();
        assert!(r.add_corner(&f, 5, 1, 4).is_none());
        let f = r.add_corner(&f, 5, 1, 3).unwrap();
        assert!(f.closed);
    }

    #[test]
    fn too_many_runs_are_rejected() {
        let r = rules("4,8,8");
        let f = r.add_corner(&Fan::default(), 1, 2, 4).unwrap();
        // A second separate run leaves no room to join both runs in a fan of three.
        assert!(r.add_corner(&f, 3, 4, 8).is_none());
    }
}
