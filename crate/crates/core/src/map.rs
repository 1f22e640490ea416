//! Polyhedral maps: validation and the basic invariants.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::face_type::{least_rotation_or_reflection, FaceSeqType};

/// Why a face list is not a polyhedral 2-manifold.
///
/// Variants are listed in the order `validate` checks them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("BadLabel face {face} vertex {vertex} (n = {n})")]
    BadLabel { face: usize, vertex: usize, n: usize },
    #[error("FaceTooSmall face {face} has {len} vertices")]
    FaceTooSmall { face: usize, len: usize },
    #[error("RepeatedVertexInFace face {face} vertex {vertex}")]
    RepeatedVertexInFace { face: usize, vertex: usize },
    #[error("FaceIntersectionViolation faces {},{}", .faces.0, .faces.1)]
    FaceIntersectionViolation { faces: (usize, usize) },
    #[error("EdgeDegreeViolation edge {}-{} lies in {} faces", .edge.0, .edge.1, .count)]
    EdgeDegreeViolation { edge: (usize, usize), count: usize },
    #[error("LinkNotSingleCycle vertex {vertex}")]
    LinkNotSingleCycle { vertex: usize },
    #[error("Disconnected {}", disconnected_witness(.vertex))]
    Disconnected { vertex: Option<usize> },
}

fn disconnected_witness(v: &Option<usize>) -> String {
    match v {
        Some(v) => format!("vertex {v} unreachable"),
        None => "empty map".to_string(),
    }
}

impl MapError {
    /// Variant name, as printed first in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            MapError::BadLabel { .. } => "BadLabel",
            MapError::FaceTooSmall { .. } => "FaceTooSmall",
            MapError::RepeatedVertexInFace { .. } => "RepeatedVertexInFace",
            MapError::FaceIntersectionViolation { .. } => "FaceIntersectionViolation",
            MapError::EdgeDegreeViolation { .. } => "EdgeDegreeViolation",
            MapError::LinkNotSingleCycle { .. } => "LinkNotSingleCycle",
            MapError::Disconnected { .. } => "Disconnected",
        }
    }
}

/// One step of a vertex fan: neighbour `nbr` and the face between this
/// neighbour and the next one in fan order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FanStep {
    pub nbr: usize,
    pub face: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceName {
    Sphere,
    Torus,
    KleinBottle,
    Other,
}

impl fmt::Display for SurfaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceName::Sphere => "sphere",
            SurfaceName::Torus => "torus",
            SurfaceName::KleinBottle => "klein_bottle",
            SurfaceName::Other => "other",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceId {
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub name: SurfaceName,
}

impl SurfaceId {
    pub fn from_invariants(chi: i64, orientable: bool) -> Self {
        let name = match (chi, orientable) {
            (2, true) => SurfaceName::Sphere,
            (0, true) => SurfaceName::Torus,
            (0, false) => SurfaceName::KleinBottle,
            _ => SurfaceName::Other,
        };
        SurfaceId { euler_characteristic: chi, orientable, name }
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            SurfaceName::Other => write!(
                f,
                "other(chi={}, {})",
                self.euler_characteristic,
                if self.orientable { "orientable" } else { "non-orientable" }
            ),
            name => name.fmt(f),
        }
    }
}

/// A validated polyhedral map. Immutable once built.
#[derive(Debug, Clone)]
pub struct PolyhedralMap {
    n: usize,
    faces: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    edge_faces: Vec<[usize; 2]>,
    fans: Vec<Vec<FanStep>>,
    tags: Vec<String>,
}

/// Canonical key of one face: least rotation or reflection of its cycle.
pub fn face_key(face: &[usize]) -> Vec<usize> {
    least_rotation_or_reflection(face)
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn adjacent_in(face: &[usize], a: usize, b: usize) -> bool {
    let k = face.len();
    (0..k).any(|i| {
        let (x, y) = (face[i], face[(i + 1) % k]);
        (x == a && y == b) || (x == b && y == a)
    })
}

/// Checks every polyhedral 2-manifold condition and builds the map.
pub fn validate(faces: &[Vec<usize>], n: usize) -> Result<PolyhedralMap, MapError> {
    if n == 0 || faces.is_empty() {
        return Err(MapError::Disconnected { vertex: None });
    }
    for (i, f) in faces.iter().enumerate() {
        if let Some(&v) = f.iter().find(|&&v| v >= n) {
            return Err(MapError::BadLabel { face: i, vertex: v, n });
        }
    }
    for (i, f) in faces.iter().enumerate() {
        if f.len() < 3 {
            return Err(MapError::FaceTooSmall { face: i, len: f.len() });
        }
    }
    for (i, f) in faces.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in f {
            if seen[v] {
                return Err(MapError::RepeatedVertexInFace { face: i, vertex: v });
            }
            seen[v] = true;
        }
    }
    let mut vertex_faces = vec![Vec::new(); n];
    for (i, f) in faces.iter().enumerate() {
        for &v in f {
            vertex_faces[v].push(i);
        }
    }
    if let Some(v) = vertex_faces.iter().position(|fs| fs.is_empty()) {
        return Err(MapError::Disconnected { vertex: Some(v) });
    }

    // Pairs of faces meeting in two or more vertices.
    let mut shared: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (v, fs) in vertex_faces.iter().enumerate() {
        for (a, &f) in fs.iter().enumerate() {
            for &g in &fs[a + 1..] {
                shared.entry((f, g)).or_default().push(v);
            }
        }
    }
    for (&(f, g), common) in &shared {
        if common.len() < 2 {
            continue;
        }
        let ok = common.len() == 2
            && adjacent_in(&faces[f], common[0], common[1])
            && adjacent_in(&faces[g], common[0], common[1]);
        if !ok {
            return Err(MapError::FaceIntersectionViolation { faces: (f, g) });
        }
    }

    let mut edge_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut incidence: Vec<Vec<usize>> = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..f.len() {
            let e = ordered(f[k], f[(k + 1) % f.len()]);
            let idx = *edge_index.entry(e).or_insert_with(|| {
                edges.push(e);
                incidence.push(Vec::new());
                edges.len() - 1
            });
            incidence[idx].push(i);
        }
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&i| edges[i]);
    for &i in &order {
        if incidence[i].len() != 2 {
            return Err(MapError::EdgeDegreeViolation { edge: edges[i], count: incidence[i].len() });
        }
    }
    // Renumber edges in sorted order so edge ids do not depend on face order.
    let edges: Vec<(usize, usize)> = order.iter().map(|&i| edges[i]).collect();
    let edge_faces: Vec<[usize; 2]> = order.iter().map(|&i| [incidence[i][0], incidence[i][1]]).collect();
    let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut fans = Vec::with_capacity(n);
    for (v, around) in vertex_faces.iter().enumerate() {
        match walk_fan(v, faces, around, &edge_index, &edge_faces) {
            Some(fan) => fans.push(fan),
            None => return Err(MapError::LinkNotSingleCycle { vertex: v }),
        }
    }

    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for s in &fans[v] {
            if !seen[s.nbr] {
                seen[s.nbr] = true;
                queue.push_back(s.nbr);
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(MapError::Disconnected { vertex: Some(v) });
    }

    Ok(PolyhedralMap { n, faces: faces.to_vec(), edges, edge_index, edge_faces, fans, tags: Vec::new() })
}

/// Neighbours of `v` in face `f`: (previous, next) in the stored cycle.
fn corner(face: &[usize], v: usize) -> (usize, usize) {
    let k = face.len();
    let i = face.iter().position(|&x| x == v).expect("vertex in face");
    (face[(i + k - 1) % k], face[(i + 1) % k])
}

fn walk_fan(
    v: usize,
    faces: &[Vec<usize>],
    incident: &[usize],
    edge_index: &HashMap<(usize, usize), usize>,
    edge_faces: &[[usize; 2]],
) -> Option<Vec<FanStep>> {
    let first = incident[0];
    let (start, mut next) = corner(&faces[first], v);
    let mut fan = vec![FanStep { nbr: start, face: first }];
    let mut face = first;
    while next != start {
        let e = edge_index[&ordered(v, next)];
        let [a, b] = edge_faces[e];
        let g = if a == face { b } else { a };
        let (p, q) = corner(&faces[g], v);
        let after = if p == next { q } else { p };
        fan.push(FanStep { nbr: next, face: g });
        face = g;
        next = after;
        if fan.len() > incident.len() {
            return None;
        }
    }
    (fan.len() == incident.len()).then_some(fan)
}

impl PolyhedralMap {
    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&ordered(u, v)).copied()
    }

    /// The two faces on either side of an edge.
    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        self.edge_faces[e]
    }

    /// Cyclic fan of `v`: neighbours in rotation order with the face following each.
    pub fn fan(&self, v: usize) -> &[FanStep] {
        &self.fans[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.fans[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.fans[v].iter().map(|s| s.nbr)
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    /// Same map with its construction tags replaced.
    pub fn with_tags(mut self, tags: Vec<String>) -> Self {
        self.tags = tags;
        self
    }

    /// Faces in canonical key form, sorted.
    pub fn canonical_faces(&self) -> Vec<Vec<usize>> {
        let mut fs: Vec<Vec<usize>> = self.faces.iter().map(|f| face_key(f)).collect();
        fs.sort();
        fs
    }

    /// Face sizes around `v` in fan order.
    pub fn face_sequence(&self, v: usize) -> Vec<usize> {
        self.fans[v].iter().map(|s| self.faces[s.face].len()).collect()
    }

    /// The common face-sequence type, if every vertex has the same one.
    pub fn is_semi_equivelar(&self) -> Option<FaceSeqType> {
        let t = FaceSeqType::new(&self.face_sequence(0)).ok()?;
        (1..self.n).all(|v| t.matches(&self.face_sequence(v))).then_some(t)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Propagates face orientations across edges; fails on the first
    /// edge traversed twice in the same direction.
    pub fn is_orientable(&self) -> bool {
        self.face_orientation().is_some()
    }

    /// A coherent orientation (`true` = stored direction) if one exists.
    pub fn face_orientation(&self) -> Option<Vec<bool>> {
        let mut sign: Vec<Option<bool>> = vec![None; self.faces.len()];
        for root in 0..self.faces.len() {
            if sign[root].is_some() {
                continue;
            }
            sign[root] = Some(true);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let sf = sign[f].unwrap();
                let face = &self.faces[f];
                for k in 0..face.len() {
                    let (a, b) = (face[k], face[(k + 1) % face.len()]);
                    let e = self.edge_index[&ordered(a, b)];
                    let [x, y] = self.edge_faces[e];
                    let g = if x == f { y } else { x };
                    // f traverses a->b (when sf); g must traverse b->a.
                    let g_has_ab = self.traverses(g, a, b);
                    let want = if sf { !g_has_ab } else { g_has_ab };
                    match sign[g] {
                        None => {
                            sign[g] = Some(want);
                            queue.push_back(g);
                        }
                        Some(s) if s != want => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(sign.into_iter().map(|s| s.unwrap()).collect())
    }

    /// Whether face `f` in stored order steps from `a` directly to `b`.
    pub fn traverses(&self, f: usize, a: usize, b: usize) -> bool {
        let face = &self.faces[f];
        let k = face.len();
        (0..k).any(|i| face[i] == a && face[(i + 1) % k] == b)
    }

    pub fn surface_id(&self) -> SurfaceId {
        SurfaceId::from_invariants(self.euler_characteristic(), self.is_orientable())
    }

    /// True if the automorphism group acts transitively on vertices.
    pub fn is_vertex_transitive(&self) -> bool {
        crate::classify::is_vertex_transitive(self)
    }

    /// Number of faces of each size.
    pub fn face_size_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.len()).or_insert(0) += 1;
        }
        m
    }

    /// The map with vertex `v` renamed to `perm[v]`. Tags are dropped.
    pub fn relabel(&self, perm: &[usize]) -> PolyhedralMap {
        let faces: Vec<Vec<usize>> = self.faces.iter().map(|f| f.iter().map(|&v| perm[v]).collect()).collect();
        validate(&faces, self.n).expect("relabeling preserves validity")
    }

    /// Adjacency matrix of the 1-skeleton as 0/1 entries.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let mut a = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }
}

/// Two maps are equal when they have the same labelled faces, up to the
/// rotation/reflection and order of the face lists.
impl PartialEq for PolyhedralMap {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical_faces() == other.canonical_faces()
    }
}

impl Eq for PolyhedralMap {}
