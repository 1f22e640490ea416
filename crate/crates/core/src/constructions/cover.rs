//! Orientation double cover and covering-map checks.

use std::collections::{HashMap, HashSet};

use super::ConstructionError;
use crate::map::{face_key, validate, PolyhedralMap};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The orientation double cover of a non-orientable map and its projection.
///
/// Every face appears twice, once per orientation. Two oriented faces are
/// glued along an edge when they run through it in opposite directions, and
/// the corners glued this way around each vertex form the two lifts of that
/// vertex. Lift `v` is the one containing the first face of `v`'s fan in
/// stored orientation; lift `v + n` is the other.
pub fn double_cover(m: &PolyhedralMap) -> Result<(PolyhedralMap, Vec<usize>), ConstructionError> {
    if m.is_orientable() {
        return Err(ConstructionError::AlreadyOrientable);
    }
    let n = m.n_vertices();
    let mut offset = Vec::with_capacity(m.n_faces());
    let mut total = 0;
    for f in m.faces() {
        offset.push(total);
        total += f.len();
    }
    // Corner id of vertex position i of face f in sheet s.
    let corner = |f: usize, i: usize, s: usize| 2 * (offset[f] + i) + s;
    let pos = |f: usize, v: usize| m.faces()[f].iter().position(|&x| x == v).expect("vertex of face");
    let mut uf = UnionFind((0..2 * total).collect());
    for (e, &(a, b)) in m.edges().iter().enumerate() {
        let [f, g] = m.edge_faces(e);
        let same = m.traverses(f, a, b) == m.traverses(g, a, b);
        for s in 0..2 {
            // Sheets agreeing in direction along ab must be the opposite ones.
            let t = if same { 1 - s } else { s };
            uf.union(corner(f, pos(f, a), s), corner(g, pos(g, a), t));
            uf.union(corner(f, pos(f, b), s), corner(g, pos(g, b), t));
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let f0 = m.fan(v)[0].face;
        let home = uf.find(corner(f0, pos(f0, v), 0));
        label.insert(home, v);
        for s in m.fan(v) {
            for sheet in 0..2 {
                let r = uf.find(corner(s.face, pos(s.face, v), sheet));
                if r != home {
                    label.insert(r, v + n);
                }
            }
        }
    }
    let mut faces = Vec::with_capacity(2 * m.n_faces());
    for (f, face) in m.faces().iter().enumerate() {
        for sheet in 0..2 {
            let mut lifted: Vec<usize> =
                face.iter().enumerate().map(|(i, _)| label[&uf.find(corner(f, i, sheet))]).collect();
            if sheet == 1 {
                lifted.reverse();
            }
            faces.push(lifted);
        }
    }
    let cover = validate(&faces, 2 * n).map_err(ConstructionError::Invalid)?;
    let proj = (0..2 * n).map(|w| w % n).collect();
    Ok((cover, proj))
}

/// True iff `proj` is a two-sheeted covering map from `cover` onto `base`.
///
/// Checks that every base vertex has two preimages, that faces project onto
/// faces with every base face covered exactly twice, and that `proj` is
/// injective on every closed vertex star and carries the faces at each
/// vertex onto the faces at its image.
pub fn verify_covering(cover: &PolyhedralMap, base: &PolyhedralMap, proj: &[usize]) -> bool {
    let (nc, nb) = (cover.n_vertices(), base.n_vertices());
    if proj.len() != nc || nc != 2 * nb || proj.iter().any(|&v| v >= nb) {
        return false;
    }
    let mut fibre = vec![0; nb];
    for &v in proj {
        fibre[v] += 1;
    }
    if fibre.iter().any(|&k| k != 2) {
        return false;
    }
    let base_faces: HashMap<Vec<usize>, usize> =
        base.faces().iter().enumerate().map(|(i, f)| (face_key(f), i)).collect();
    let mut image = vec![usize::MAX; cover.n_faces()];
    let mut hits = vec![0; base.n_faces()];
    for (i, f) in cover.faces().iter().enumerate() {
        let img: Vec<usize> = f.iter().map(|&v| proj[v]).collect();
        match base_faces.get(&face_key(&img)) {
            Some(&j) => {
                image[i] = j;
                hits[j] += 1;
            }
            None => return false,
        }
    }
    if hits.iter().any(|&k| k != 2) {
        return false;
    }
    for w in 0..nc {
        let v = proj[w];
        if cover.degree(w) != base.degree(v) {
            return false;
        }
        let mut star = HashSet::new();
        for s in cover.fan(w) {
            for &x in &cover.faces()[s.face] {
                star.insert(x);
            }
        }
        let projected: HashSet<usize> = star.iter().map(|&x| proj[x]).collect();
        if projected.len() != star.len() {
            return false;
        }
        let up: HashSet<usize> = cover.fan(w).iter().map(|s| image[s.face]).collect();
        let down: HashSet<usize> = base.fan(v).iter().map(|s| s.face).collect();
        if up != down {
            return false;
        }
    }
    true
}
