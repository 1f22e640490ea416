//! Homological systole over GF(2).

use std::collections::VecDeque;

use thiserror::Error;

use crate::map::PolyhedralMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystoleError {
    #[error("NotFlat: Euler characteristic is {0}, expected 0")]
    NotFlat(i64),
}

/// Packed GF(2) vector over the edge set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeVec(Vec<u64>);

impl EdgeVec {
    pub fn zero(len: usize) -> Self {
        EdgeVec(vec![0; len.div_ceil(64)])
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor(&mut self, other: &EdgeVec) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn lowest(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Row-reduced GF(2) basis, indexed by pivot position.
#[derive(Debug, Clone, Default)]
pub struct Gf2Span {
    rows: Vec<(usize, EdgeVec)>,
}

impl Gf2Span {
    pub fn reduce(&self, v: &EdgeVec) -> EdgeVec {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor(row);
            }
        }
        v
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &EdgeVec) -> bool {
        let r = self.reduce(v);
        match r.lowest() {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor(&r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }

    pub fn contains(&self, v: &EdgeVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Span of the face boundaries.
pub fn face_span(m: &PolyhedralMap) -> Gf2Span {
    let mut span = Gf2Span::default();
    for f in m.faces() {
        span.insert(&boundary(m, f));
    }
    span
}

/// Edge vector of a closed vertex walk.
pub fn boundary(m: &PolyhedralMap, cycle: &[usize]) -> EdgeVec {
    let mut v = EdgeVec::zero(m.n_edges());
    for i in 0..cycle.len() {
        let e = m.edge_id(cycle[i], cycle[(i + 1) % cycle.len()]).expect("cycle uses map edges");
        v.flip(e);
    }
    v
}

/// Length of the shortest 1-skeleton cycle not homologous to zero mod 2.
///
/// Candidates are the fundamental cycles of a BFS tree from every root.
/// For a shortest non-trivial cycle C through root r, each edge of C closes
/// a fundamental cycle no longer than C, and C is their sum, so one of them
/// is non-trivial and no longer than C.
pub fn homological_systole(m: &PolyhedralMap) -> Result<usize, SystoleError> {
    let chi = m.euler_characteristic();
    if chi != 0 {
        return Err(SystoleError::NotFlat(chi));
    }
    let span = face_span(m);
    let mut cands: Vec<(usize, EdgeVec)> = Vec::new();
    for root in 0..m.n_vertices() {
        let parent = bfs_tree(m, root);
        for (e, &(u, v)) in m.edges().iter().enumerate() {
            if parent[u] == Some(e) || parent[v] == Some(e) {
                continue;
            }
            let mut c = path_to_root(m, &parent, u);
            c.xor(&path_to_root(m, &parent, v));
            c.flip(e);
            cands.push((c.weight(), c));
        }
    }
    cands.sort();
    cands.dedup();
    cands.into_iter().find(|(_, c)| !span.contains(c)).map(|(w, _)| w).ok_or(SystoleError::NotFlat(chi))
}

/// `parent[v]` is the tree edge from `v` toward the root.
fn bfs_tree(m: &PolyhedralMap, root: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; m.n_vertices()];
    let mut seen = vec![false; m.n_vertices()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let mut nbrs: Vec<usize> = m.neighbors(x).collect();
        nbrs.sort_unstable();
        for y in nbrs {
            if !seen[y] {
                seen[y] = true;
                parent[y] = m.edge_id(x, y);
                queue.push_back(y);
            }
        }
    }
    parent
}

fn path_to_root(m: &PolyhedralMap, parent: &[Option<usize>], mut v: usize) -> EdgeVec {
    let mut out = EdgeVec::zero(m.n_edges());
    while let Some(e) = parent[v] {
        out.flip(e);
        let (a, b) = m.edges()[e];
        v = if a == v { b } else { a };
    }
    out
}
