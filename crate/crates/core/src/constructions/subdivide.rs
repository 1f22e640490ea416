//! Operators that turn one semi-equivelar type into another.

use std::collections::HashMap;

use super::grid::{quad_grid_of, triangulate, Grid};
use super::{medial, ConstructionError};
use crate::face_type::FaceSeqType;
use crate::map::{face_key, validate, PolyhedralMap};

fn checked(faces: &[Vec<usize>], n: usize) -> Result<PolyhedralMap, ConstructionError> {
    validate(faces, n).map_err(ConstructionError::Invalid)
}

fn split(g: &Grid, r: usize, c: usize, slash: bool) -> [Vec<usize>; 2] {
    let [a, b, cc, d] = g.cell(r, c);
    if slash {
        [vec![a, b, cc], vec![a, cc, d]]
    } else {
        [vec![a, b, d], vec![b, cc, d]]
    }
}

/// Splits every other layer of cells by a diagonal, giving type (3^3,4^2).
///
/// Rows are used when their count is even, otherwise columns; with both odd
/// the layers cannot alternate around the surface.
pub fn subdivide_layer_diagonals(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let g = quad_grid_of(m)?;
    let by_row = g.rows % 2 == 0;
    if !by_row && g.cols % 2 != 0 {
        return Err(ConstructionError::ParityError(format!(
            "layers need an even row or column count, grid is {}x{}",
            g.rows, g.cols
        )));
    }
    let mut faces = Vec::new();
    for (r, c) in g.cells() {
        let layer = if by_row { r } else { c };
        if layer % 2 == 0 {
            faces.extend(split(&g, r, c, true));
        } else {
            faces.push(g.cell(r, c).to_vec());
        }
    }
    let tags = g.tags("3^3,4^2");
    Ok(checked(&faces, m.n_vertices())?.with_tags(tags))
}

/// Splits the cells of one checkerboard colour, alternating the diagonal
/// direction from row to row, giving type (3^2,4,3,4).
pub fn subdivide_alternate_diagonals(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let g = quad_grid_of(m)?;
    if g.rows % 2 != 0 || g.cols % 2 != 0 {
        return Err(ConstructionError::ParityError(format!(
            "checkerboard needs even rows and columns, grid is {}x{}",
            g.rows, g.cols
        )));
    }
    if g.twist % 2 != 0 {
        return Err(ConstructionError::ParityError(format!(
            "checkerboard does not close up under odd twist {}",
            g.twist
        )));
    }
    let mut faces = Vec::new();
    for (r, c) in g.cells() {
        if (r + c) % 2 == 0 {
            faces.extend(split(&g, r, c, r % 2 == 0));
        } else {
            faces.push(g.cell(r, c).to_vec());
        }
    }
    let tags = g.tags("3^2,4,3,4");
    Ok(checked(&faces, m.n_vertices())?.with_tags(tags))
}

/// Type (3,6,3,6): the medial of the grid triangulated along one diagonal.
///
/// Each edge of the triangulation gives a vertex, each triangle a triangle
/// and each degree-6 vertex a hexagon.
pub fn subdivide_to_3636(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let g = quad_grid_of(m)?;
    let tri = checked(&triangulate(&g), m.n_vertices())?;
    medial(&tri)
}

/// Truncation structure of a map: every vertex in exactly one triangle,
/// every other face alternating triangle edges and long edges.
struct Truncation {
    /// Non-triangle faces rotated so that `(f[0], f[1])` is a triangle edge.
    big: Vec<Vec<usize>>,
    /// Triangle containing each vertex.
    tri_of: Vec<usize>,
}

fn truncation_structure(m: &PolyhedralMap) -> Result<Truncation, ConstructionError> {
    let bad = |why: &str| ConstructionError::NotTaggedTruncation(why.to_string());
    let mut tri_of = vec![usize::MAX; m.n_vertices()];
    for (i, f) in m.faces().iter().enumerate() {
        if f.len() == 3 {
            for &v in f {
                if tri_of[v] != usize::MAX {
                    return Err(bad("a vertex lies in two triangles"));
                }
                tri_of[v] = i;
            }
        }
    }
    if tri_of.contains(&usize::MAX) || (0..m.n_vertices()).any(|v| m.degree(v) != 3) {
        return Err(bad("not the truncation of a cubic map"));
    }
    let mut big = Vec::new();
    for f in m.faces().iter().filter(|f| f.len() != 3) {
        let p = f.len();
        if p % 2 != 0 {
            return Err(bad("odd face in a truncation"));
        }
        let short = |i: usize| tri_of[f[i % p]] == tri_of[f[(i + 1) % p]];
        let s = if short(0) { 0 } else { 1 };
        if (0..p).any(|i| short(i + s) != (i % 2 == 0)) {
            return Err(bad("face does not alternate triangle edges"));
        }
        big.push((0..p).map(|i| f[(i + s) % p]).collect());
    }
    Ok(Truncation { big, tri_of })
}

/// Type (3,4,6,4) from a truncated cubic map.
///
/// Inside each 2p-gon `[x1, y1, ..., xp, yp]` (triangle edges `xi yi`) new
/// vertices `x'i, y'i, zi` carry quads `[xi, yi, y'i, x'i]`, triangles
/// `[x'i, y'i, zi]`, quads `[y'i, x'(i+1), z(i+1), zi]` and the inner p-gon
/// of the `z`s. Each long edge `ab` between faces F and G becomes the
/// hexagon `[a, a'F, b'F, b, b'G, a'G]`. Old triangles stay.
pub fn build_3464_from_312sq(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let tr = truncation_structure(m)?;
    let mut next = m.n_vertices();
    let mut faces: Vec<Vec<usize>> = m.faces().iter().filter(|f| f.len() == 3).cloned().collect();
    // prime[(face index in big, old vertex)] = new vertex beside it.
    let mut prime: HashMap<(usize, usize), usize> = HashMap::new();
    let mut owner: HashMap<Vec<usize>, usize> = HashMap::new();
    for (fi, f) in tr.big.iter().enumerate() {
        owner.insert(face_key(f), fi);
        let p = f.len() / 2;
        let base = next;
        next += 3 * p;
        let xp = |i: usize| base + 3 * (i % p);
        let yp = |i: usize| base + 3 * (i % p) + 1;
        let z = |i: usize| base + 3 * (i % p) + 2;
        for i in 0..p {
            let (x, y) = (f[2 * i], f[2 * i + 1]);
            prime.insert((fi, x), xp(i));
            prime.insert((fi, y), yp(i));
            faces.push(vec![x, y, yp(i), xp(i)]);
            faces.push(vec![xp(i), yp(i), z(i)]);
            faces.push(vec![yp(i), xp(i + 1), z(i + 1), z(i)]);
        }
        faces.push((0..p).map(z).collect());
    }
    for (e, &(a, b)) in m.edges().iter().enumerate() {
        if tr.tri_of[a] == tr.tri_of[b] {
            continue;
        }
        let [f, g] = m.edge_faces(e).map(|k| owner[&face_key(&m.faces()[k])]);
        faces.push(vec![a, prime[&(f, a)], prime[&(f, b)], b, prime[&(g, b)], prime[&(g, a)]]);
    }
    checked(&faces, next)
}

/// Type (3^4,6) from type (3,4,6,4) by cutting every quad with a diagonal.
///
/// Each vertex meets two quads and needs exactly one of their diagonals, so
/// the choices satisfy one XOR equation per vertex. These are solved with a
/// parity union-find; in each component the quad with the least face key
/// takes the diagonal through its first vertex.
pub fn subdivide_3464_to_346(m: &PolyhedralMap) -> Result<PolyhedralMap, ConstructionError> {
    let want: FaceSeqType = "3,4,6,4".parse().expect("static type");
    if m.is_semi_equivelar().as_ref() != Some(&want) {
        return Err(ConstructionError::WrongType { expected: want.to_string() });
    }
    let mut quads: Vec<Vec<usize>> = m.faces().iter().filter(|f| f.len() == 4).map(|f| face_key(f)).collect();
    quads.sort();
    let mut at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m.n_vertices()];
    for (q, f) in quads.iter().enumerate() {
        for (i, &v) in f.iter().enumerate() {
            at[v].push((q, i % 2));
        }
    }
    let mut uf = ParityUnionFind::new(quads.len());
    for list in &at {
        let [(q1, i1), (q2, i2)] = list[..] else {
            return Err(ConstructionError::WrongType { expected: want.to_string() });
        };
        // Diagonal of q passes through v iff x_q == i; exactly one must.
        if !uf.union(q1, q2, 1 ^ i1 ^ i2) {
            return Err(ConstructionError::NoConsistentDiagonalization);
        }
    }
    let mut faces: Vec<Vec<usize>> = m.faces().iter().filter(|f| f.len() != 4).cloned().collect();
    for (q, f) in quads.iter().enumerate() {
        let (_, x) = uf.find(q);
        let [a, b, c, d] = [f[0], f[1], f[2], f[3]];
        if x == 0 {
            faces.push(vec![a, b, c]);
            faces.push(vec![a, c, d]);
        } else {
            faces.push(vec![a, b, d]);
            faces.push(vec![b, c, d]);
        }
    }
    checked(&faces, m.n_vertices())
}

/// Union-find carrying the parity of each element relative to its root.
/// Roots are always the least index of their class.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<usize>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> (usize, usize) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Records `x_a ^ x_b == d`; false on contradiction.
    fn union(&mut self, a: usize, b: usize, d: usize) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == d;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ d;
        true
    }
}
