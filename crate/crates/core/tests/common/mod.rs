//! Small maps and independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's own algorithms for the quantity being
//! checked: determinants, interpolation, GF(2) ranks, cycle enumeration and
//! automorphism search are all redone from scratch.
#![allow(dead_code, clippy::needless_range_loop, clippy::too_many_arguments)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use sem_atlas::constructions::{
    equivelar_series, subdivide_alternate_diagonals, subdivide_layer_diagonals, Family, GridSurface, SeriesParams,
};
use sem_atlas::enumerate::enumerate_sems;
use sem_atlas::fixtures::fixture_catalog;
use sem_atlas::map::face_key;
use sem_atlas::{validate, MapError, PolyhedralMap};

pub fn tetrahedron() -> PolyhedralMap {
    validate(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]], 4).unwrap()
}

pub fn cube() -> PolyhedralMap {
    let f = vec![
        vec![0, 1, 2, 3],
        vec![4, 5, 6, 7],
        vec![0, 1, 5, 4],
        vec![1, 2, 6, 5],
        vec![2, 3, 7, 6],
        vec![3, 0, 4, 7],
    ];
    validate(&f, 8).unwrap()
}

pub fn octahedron() -> PolyhedralMap {
    // Poles 0 and 5 over the square 1 2 3 4.
    let mut f = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        f.push(vec![0, a, b]);
        f.push(vec![5, a, b]);
    }
    validate(&f, 6).unwrap()
}

/// The 7-vertex torus triangulation: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
pub fn moebius_torus() -> PolyhedralMap {
    let mut f = Vec::new();
    for i in 0..7 {
        f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    validate(&f, 7).unwrap()
}

/// The 6-vertex real projective plane (hemi-icosahedron).
pub fn rp2_6() -> PolyhedralMap {
    let f =
        [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1], [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3]];
    validate(&f.iter().map(|x| x.to_vec()).collect::<Vec<_>>(), 6).unwrap()
}

/// Tetrahedron with face 123 replaced by a cone over a new apex 4.
pub fn stellated_tetrahedron() -> PolyhedralMap {
    let f = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 4], vec![2, 3, 4], vec![1, 3, 4]];
    validate(&f, 5).unwrap()
}

pub fn random_perm(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Relabels and also rotates/reverses every face and shuffles the face order.
pub fn scramble(m: &PolyhedralMap, rng: &mut impl Rng) -> (PolyhedralMap, Vec<usize>) {
    let p = random_perm(m.n_vertices(), rng);
    let mut faces: Vec<Vec<usize>> = m
        .faces()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| p[v]).collect();
            let k = rng.gen_range(0..g.len());
            g.rotate_left(k);
            if rng.gen_bool(0.5) {
                g.reverse();
            }
            g
        })
        .collect();
    faces.shuffle(rng);
    (validate(&faces, m.n_vertices()).unwrap(), p)
}

pub fn face_set(m: &PolyhedralMap) -> BTreeSet<Vec<usize>> {
    m.faces().iter().map(|f| face_key(f)).collect()
}

/// True iff `sigma` carries the faces of `a` exactly onto the faces of `b`.
pub fn is_isomorphism(a: &PolyhedralMap, b: &PolyhedralMap, sigma: &[usize]) -> bool {
    if a.n_vertices() != b.n_vertices() || a.n_faces() != b.n_faces() {
        return false;
    }
    let image: BTreeSet<Vec<usize>> =
        a.faces().iter().map(|f| face_key(&f.iter().map(|&v| sigma[v]).collect::<Vec<_>>())).collect();
    image == face_set(b)
}

// ---------------------------------------------------------------- polynomials

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det_rational(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= p.clone();
        for r in col + 1..n {
            let factor = a[r][col].clone() / p.clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let d = factor.clone() * a[col][c].clone();
                a[r][c] -= d;
            }
        }
    }
    det
}

/// Coefficients (constant first) of det(xI - A), by evaluating at x = 0..n
/// and Lagrange interpolation.
pub fn char_poly_by_interpolation(adj: &[Vec<u8>]) -> Vec<BigInt> {
    let n = adj.len();
    let xs: Vec<i64> = (0..=n as i64).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|&x| {
            let m: Vec<Vec<BigRational>> = (0..n)
                .map(|i| (0..n).map(|j| rat(if i == j { x } else { 0 }) - rat(adj[i][j] as i64)).collect())
                .collect();
            det_rational(m)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, &xi) in xs.iter().enumerate() {
        // Basis polynomial prod_{j != i} (x - xj) / (xi - xj).
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b.clone();
                next[k] -= b.clone() * rat(xj);
            }
            basis = next;
            denom *= rat(xi - xj);
        }
        for (k, b) in basis.into_iter().enumerate() {
            coeffs[k] += b * ys[i].clone() / denom.clone();
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated coefficient {c} is not integral");
            c.to_integer()
        })
        .collect()
}

/// Parses "x^12 - 30x^10 + ... - 240x^2" into coefficients, constant first.
pub fn parse_poly(s: &str) -> Vec<BigInt> {
    let cleaned = s.replace("- ", "-").replace("+ ", "+");
    let mut terms: Vec<(i64, usize)> = Vec::new();
    for tok in cleaned.split_whitespace() {
        let (coef, pow) = match tok.find('x') {
            Some(i) => {
                let c = match &tok[..i] {
                    "" | "+" => 1,
                    "-" => -1,
                    c => c.parse().unwrap(),
                };
                let p = match tok[i + 1..].strip_prefix('^') {
                    Some(p) => p.parse().unwrap(),
                    None => 1,
                };
                (c, p)
            }
            None => (tok.parse().unwrap(), 0),
        };
        terms.push((coef, pow));
    }
    let deg = terms.iter().map(|t| t.1).max().unwrap();
    let mut out = vec![BigInt::zero(); deg + 1];
    for (c, p) in terms {
        out[p] += BigInt::from(c);
    }
    out
}

// -------------------------------------------------------------------- GF(2)

/// Edge-incidence vectors as u128 bitmasks (maps here have < 128 edges).
pub fn edge_mask(m: &PolyhedralMap, cycle: &[usize]) -> u128 {
    let mut x = 0u128;
    for i in 0..cycle.len() {
        let e = m.edge_id(cycle[i], cycle[(i + 1) % cycle.len()]).expect("cycle edge");
        x ^= 1 << e;
    }
    x
}

/// GF(2) span with one stored vector per leading bit.
pub struct Basis([u128; 128]);

impl Basis {
    pub fn of(vectors: impl IntoIterator<Item = u128>) -> Self {
        let mut b = Basis([0; 128]);
        for v in vectors {
            b.insert(v);
        }
        b
    }

    fn reduce(&self, mut v: u128) -> u128 {
        for bit in (0..128).rev() {
            if v >> bit & 1 == 1 && self.0[bit] != 0 {
                v ^= self.0[bit];
            }
        }
        v
    }

    pub fn insert(&mut self, v: u128) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.0[127 - r.leading_zeros() as usize] = r;
        true
    }

    pub fn contains(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }

    pub fn rank(&self) -> usize {
        self.0.iter().filter(|&&b| b != 0).count()
    }
}

/// Every simple cycle of length `len`, each listed once.
pub fn simple_cycles(m: &PolyhedralMap, len: usize) -> Vec<Vec<usize>> {
    let n = m.n_vertices();
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| m.neighbors(v).collect()).collect();
    let mut out = Vec::new();
    fn go(
        nbrs: &[Vec<usize>],
        start: usize,
        len: usize,
        path: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        if path.len() == len {
            // Close up; skip the mirror image by requiring path[1] < last.
            if nbrs[v].contains(&start) && path[1] < path[len - 1] {
                out.push(path.clone());
            }
            return;
        }
        for &w in &nbrs[v] {
            if w > start && !used[w] {
                used[w] = true;
                path.push(w);
                go(nbrs, start, len, path, used, out);
                path.pop();
                used[w] = false;
            }
        }
    }
    for s in 0..n {
        let mut used = vec![false; n];
        used[s] = true;
        go(&nbrs, s, len, &mut vec![s], &mut used, &mut out);
    }
    out
}

/// Shortest simple cycle outside the face-boundary span, by trying every
/// simple cycle in order of length.
pub fn brute_force_systole(m: &PolyhedralMap) -> usize {
    let faces = Basis::of(m.faces().iter().map(|f| edge_mask(m, f)));
    for len in 3..=m.n_vertices() {
        if simple_cycles(m, len).iter().any(|c| !faces.contains(edge_mask(m, c))) {
            return len;
        }
    }
    panic!("no non-separating cycle found");
}

// ------------------------------------------------------------ automorphisms

/// All automorphisms of the map, by backtracking over vertex images with
/// adjacency pruning and a final face check.
pub fn brute_force_automorphisms(m: &PolyhedralMap) -> Vec<Vec<usize>> {
    let n = m.n_vertices();
    let adj: Vec<HashSet<usize>> = (0..n).map(|v| m.neighbors(v).collect()).collect();
    // Assign vertices in BFS order so every new vertex has an assigned neighbour.
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let mut ns: Vec<usize> = adj[v].iter().copied().collect();
        ns.sort();
        for w in ns {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    let faces = face_set(m);
    let mut out = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        order: &[usize],
        adj: &[HashSet<usize>],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
        m: &PolyhedralMap,
        faces: &BTreeSet<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            let ok =
                m.faces().iter().all(|f| faces.contains(&face_key(&f.iter().map(|&v| sigma[v]).collect::<Vec<_>>())));
            if ok {
                out.push(sigma.clone());
            }
            return;
        }
        let v = order[k];
        for img in 0..order.len() {
            if used[img] || adj[img].len() != adj[v].len() {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| adj[v].contains(&u) == adj[img].contains(&sigma[u]));
            if !consistent {
                continue;
            }
            sigma[v] = img;
            used[img] = true;
            go(k + 1, order, adj, sigma, used, m, faces, out);
            used[img] = false;
            sigma[v] = usize::MAX;
        }
    }
    go(0, &order, &adj, &mut sigma, &mut used, m, &faces, &mut out);
    out
}

pub fn brute_force_vertex_transitive(m: &PolyhedralMap) -> bool {
    let orbit: HashSet<usize> = brute_force_automorphisms(m).iter().map(|s| s[0]).collect();
    orbit.len() == m.n_vertices()
}

// ---------------------------------------------------------- malformed input

pub fn faces(list: &[&[usize]]) -> Vec<Vec<usize>> {
    list.iter().map(|f| f.to_vec()).collect()
}

/// Twenty hand-built inputs, each breaking exactly the condition named.
pub fn malformed() -> Vec<(&'static str, Vec<Vec<usize>>, usize, MapError)> {
    use MapError::*;
    let tet = faces(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
    let two_tets = {
        let mut f = tet.clone();
        f.extend(faces(&[&[4, 5, 6], &[4, 5, 7], &[4, 6, 7], &[5, 6, 7]]));
        f
    };
    // Two tetrahedra glued at vertex 0: the link of 0 is two triangles.
    let pinched =
        faces(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[0, 4, 5], &[0, 4, 6], &[0, 5, 6], &[4, 5, 6]]);
    vec![
        ("no vertices", vec![], 0, Disconnected { vertex: None }),
        ("no faces", vec![], 4, Disconnected { vertex: None }),
        (
            "label equals n",
            faces(&[&[0, 1, 2], &[0, 1, 4], &[0, 2, 3], &[1, 2, 3]]),
            4,
            BadLabel { face: 1, vertex: 4, n: 4 },
        ),
        ("label far out of range", faces(&[&[0, 1, 99]]), 3, BadLabel { face: 0, vertex: 99, n: 3 }),
        ("digon", faces(&[&[0, 1], &[0, 1, 2]]), 3, FaceTooSmall { face: 0, len: 2 }),
        ("empty face", faces(&[&[0, 1, 2], &[]]), 3, FaceTooSmall { face: 1, len: 0 }),
        ("doubled edge inside one face", faces(&[&[0, 1, 0, 2]]), 3, RepeatedVertexInFace { face: 0, vertex: 0 }),
        (
            "repeated vertex late in face",
            faces(&[&[0, 1, 2], &[3, 4, 5, 4]]),
            6,
            RepeatedVertexInFace { face: 1, vertex: 4 },
        ),
        ("isolated vertex", tet.clone(), 5, Disconnected { vertex: Some(4) }),
        ("pillow", faces(&[&[0, 1, 2], &[0, 2, 1]]), 3, FaceIntersectionViolation { faces: (0, 1) }),
        (
            "duplicate face",
            faces(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3], &[3, 2, 1]]),
            4,
            FaceIntersectionViolation { faces: (3, 4) },
        ),
        (
            "faces meeting in two opposite vertices",
            faces(&[&[0, 1, 2, 3], &[0, 4, 2, 5]]),
            6,
            FaceIntersectionViolation { faces: (0, 1) },
        ),
        (
            "faces meeting in two non-adjacent vertices of a triangle and quad",
            faces(&[&[0, 1, 2], &[0, 3, 1, 4]]),
            5,
            FaceIntersectionViolation { faces: (0, 1) },
        ),
        ("single triangle", faces(&[&[0, 1, 2]]), 3, EdgeDegreeViolation { edge: (0, 1), count: 1 }),
        (
            "tetrahedron missing a face",
            faces(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]),
            4,
            EdgeDegreeViolation { edge: (1, 2), count: 1 },
        ),
        (
            "three triangles on one edge",
            faces(&[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4], &[0, 2, 3], &[1, 2, 3], &[0, 2, 4], &[1, 2, 4]]),
            5,
            EdgeDegreeViolation { edge: (0, 1), count: 3 },
        ),
        (
            "open disc of two triangles",
            faces(&[&[0, 1, 2], &[1, 2, 3]]),
            4,
            EdgeDegreeViolation { edge: (0, 1), count: 1 },
        ),
        ("two spheres pinched at a vertex", pinched, 7, LinkNotSingleCycle { vertex: 0 }),
        ("two disjoint tetrahedra", two_tets, 8, Disconnected { vertex: Some(4) }),
        (
            "cube and tetrahedron sharing a corner",
            faces(&[
                &[0, 1, 2, 3],
                &[4, 5, 6, 7],
                &[0, 1, 5, 4],
                &[1, 2, 6, 5],
                &[2, 3, 7, 6],
                &[3, 0, 4, 7],
                &[0, 8, 9],
                &[0, 8, 10],
                &[0, 9, 10],
                &[8, 9, 10],
            ]),
            11,
            LinkNotSingleCycle { vertex: 0 },
        ),
    ]
}

// ------------------------------------------------------------- map sources

/// Maps with at most 16 vertices from every source the library has.
pub fn maps_up_to_16() -> Vec<(String, PolyhedralMap)> {
    let mut out: Vec<(String, PolyhedralMap)> =
        fixture_catalog().iter().filter(|e| e.n <= 16).map(|e| (e.id.to_string(), e.load())).collect();
    for (t, n) in [("3,3,3,4,4", 10), ("3,3,3,4,4", 12), ("3,3,4,3,4", 16)] {
        for (i, m) in enumerate_sems(&t.parse().unwrap(), n).into_iter().enumerate() {
            out.push((format!("enum {t} n{n} #{i}"), m));
        }
    }
    for family in [Family::Tri, Family::Quad] {
        for n in 7..=8 {
            let p = SeriesParams::new(family, GridSurface::Torus, n);
            out.push((format!("{family} torus n{n}"), equivelar_series(&p).unwrap()));
        }
        for n in 3..=5 {
            let p = SeriesParams::new(family, GridSurface::Klein, n);
            out.push((format!("{family} klein n{n}"), equivelar_series(&p).unwrap()));
        }
    }
    let quad7 = equivelar_series(&SeriesParams::new(Family::Quad, GridSurface::Torus, 7)).unwrap();
    out.push(("layered n7".into(), subdivide_layer_diagonals(&quad7).unwrap()));
    let quad8 = equivelar_series(&SeriesParams::new(Family::Quad, GridSurface::Torus, 8).with_twist(4)).unwrap();
    out.push(("alternate n8".into(), subdivide_alternate_diagonals(&quad8).unwrap()));
    out.push(("moebius torus".into(), moebius_torus()));
    out
}
