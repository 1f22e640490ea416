//! Equivelar grid maps on the torus and the Klein bottle.

use std::fmt;
use std::str::FromStr;

use super::{dual, ConstructionError};
use crate::map::{validate, PolyhedralMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Triangulations, type (3^6).
    Tri,
    /// Quadrangulations, type (4^4).
    Quad,
    /// Hexagonal maps, type (6^3).
    Hex,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Tri => "3^6",
            Family::Quad => "4^4",
            Family::Hex => "6^3",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3^6" | "3x6" | "36" | "3,3,3,3,3,3" => Ok(Family::Tri),
            "4^4" | "4x4" | "44" | "4,4,4,4" => Ok(Family::Quad),
            "6^3" | "6x3" | "63" | "6,6,6" => Ok(Family::Hex),
            _ => Err(format!("unknown family {s:?} (expected 3x6, 4x4 or 6x3)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSurface {
    Torus,
    Klein,
}

impl fmt::Display for GridSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridSurface::Torus => "torus",
            GridSurface::Klein => "klein_bottle",
        })
    }
}

impl FromStr for GridSurface {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "torus" | "T" => Ok(GridSurface::Torus),
            "klein" | "klein_bottle" | "K" => Ok(GridSurface::Klein),
            _ => Err(format!("unknown surface {s:?} (expected torus or klein)")),
        }
    }
}

/// Top-row shift of the torus series, as drawn.
pub const DEFAULT_TWIST: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesParams {
    pub family: Family,
    pub surface: GridSurface,
    pub n: usize,
    /// Torus only: column shift applied when the top row wraps to the bottom.
    pub twist: usize,
}

impl SeriesParams {
    pub fn new(family: Family, surface: GridSurface, n: usize) -> Self {
        SeriesParams { family, surface, n, twist: DEFAULT_TWIST }
    }

    pub fn with_twist(mut self, twist: usize) -> Self {
        self.twist = twist;
        self
    }

    pub fn min_n(&self) -> usize {
        match self.surface {
            GridSurface::Torus => 7,
            GridSurface::Klein => 3,
        }
    }
}

/// Quadrilateral grid with boundary identifications.
///
/// Vertex `(r, c)` has rows `0..rows` and columns `0..cols`. Moving right
/// off the last column returns to column 0 (on the Klein bottle with the row
/// reflected); moving up off the last row returns to row 0 (on the torus
/// shifted left by `twist`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub surface: GridSurface,
    pub rows: usize,
    pub cols: usize,
    pub twist: usize,
    /// `coords[v]` is the grid position of vertex `v`.
    pub coords: Vec<(usize, usize)>,
    /// `label[r * cols + c]` is the vertex at `(r, c)`.
    label: Vec<usize>,
}

impl Grid {
    pub fn new(
        surface: GridSurface,
        rows: usize,
        cols: usize,
        twist: usize,
        coords: Vec<(usize, usize)>,
    ) -> Option<Self> {
        if coords.len() != rows * cols || rows == 0 || cols == 0 {
            return None;
        }
        let mut label = vec![usize::MAX; rows * cols];
        for (v, &(r, c)) in coords.iter().enumerate() {
            if r >= rows || c >= cols || label[r * cols + c] != usize::MAX {
                return None;
            }
            label[r * cols + c] = v;
        }
        Some(Grid { surface, rows, cols, twist: twist % cols, coords, label })
    }

    pub fn at(&self, r: usize, c: usize) -> usize {
        self.label[r * self.cols + c]
    }

    pub fn right(&self, (r, c): (usize, usize)) -> (usize, usize) {
        if c + 1 < self.cols {
            return (r, c + 1);
        }
        match self.surface {
            GridSurface::Torus => (r, 0),
            GridSurface::Klein => ((self.rows - r) % self.rows, 0),
        }
    }

    pub fn up(&self, (r, c): (usize, usize)) -> (usize, usize) {
        if r + 1 < self.rows {
            return (r + 1, c);
        }
        match self.surface {
            GridSurface::Torus => (0, (c + self.cols - self.twist) % self.cols),
            GridSurface::Klein => (0, c),
        }
    }

    /// Corners of cell `(r, c)`: lower-left, lower-right, upper-right, upper-left.
    pub fn cell(&self, r: usize, c: usize) -> [usize; 4] {
        let a = (r, c);
        let d = self.up(a);
        let [a, b, cc, d] = [a, self.right(a), self.right(d), d];
        [self.at(a.0, a.1), self.at(b.0, b.1), self.at(cc.0, cc.1), self.at(d.0, d.1)]
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| (0..self.cols).map(move |c| (r, c)))
    }

    pub fn quads(&self) -> Vec<Vec<usize>> {
        self.cells().map(|(r, c)| self.cell(r, c).to_vec()).collect()
    }

    /// Tag lines recording this grid on a map.
    pub fn tags(&self, family: &str) -> Vec<String> {
        let coords: Vec<String> = self.coords.iter().map(|(r, c)| format!("{r},{c}")).collect();
        vec![
            format!("family {family}"),
            format!("grid {} rows={} cols={} twist={}", self.surface, self.rows, self.cols, self.twist),
            format!("coords {}", coords.join(" ")),
        ]
    }

    /// Reads the grid back from tag lines.
    pub fn from_tags(tags: &[String]) -> Option<Grid> {
        let grid = tags.iter().find_map(|t| t.strip_prefix("grid "))?;
        let mut words = grid.split_whitespace();
        let surface: GridSurface = words.next()?.parse().ok()?;
        let mut field = |key: &str| -> Option<usize> { words.next()?.strip_prefix(key)?.parse().ok() };
        let rows = field("rows=")?;
        let cols = field("cols=")?;
        let twist = field("twist=")?;
        let coords = tags
            .iter()
            .find_map(|t| t.strip_prefix("coords "))?
            .split_whitespace()
            .map(|p| {
                let (r, c) = p.split_once(',')?;
                Some((r.parse().ok()?, c.parse().ok()?))
            })
            .collect::<Option<Vec<_>>>()?;
        Grid::new(surface, rows, cols, twist, coords)
    }

    /// Family recorded in the tags, if any.
    pub fn family_tag(tags: &[String]) -> Option<&str> {
        tags.iter().find_map(|t| t.strip_prefix("family "))
    }
}

/// Grid of the torus series: two rows of `n`; row 0 holds the odd labels.
fn torus_grid(n: usize, twist: usize) -> Grid {
    let coords = (0..2 * n).map(|v| (1 - v % 2, v / 2)).collect();
    Grid::new(GridSurface::Torus, 2, n, twist, coords).expect("torus grid")
}

/// Grid of the Klein series: `n` columns of three.
fn klein_grid(n: usize) -> Grid {
    // Column j holds 3j (row 0), 3j + 2 (row 1), 3j + 1 (row 2).
    let coords = (0..3 * n).map(|v| ([0, 2, 1][v % 3], v / 3)).collect();
    Grid::new(GridSurface::Klein, 3, n, 0, coords).expect("klein grid")
}

/// Splits every cell along its lower-left to upper-right diagonal.
pub fn triangulate(g: &Grid) -> Vec<Vec<usize>> {
    g.cells()
        .flat_map(|(r, c)| {
            let [a, b, cc, d] = g.cell(r, c);
            [vec![a, b, cc], vec![a, cc, d]]
        })
        .collect()
}

/// Hexagons of the torus (6^3) series on `2n` vertices.
fn hex_torus_faces(n: usize) -> Vec<Vec<usize>> {
    let m = 2 * n as i64;
    (0..n as i64)
        .map(|j| {
            [2 * j, 2 * j + 1, 2 * j + 2, 2 * j - 3, 2 * j - 4, 2 * j - 5]
                .iter()
                .map(|&x| x.rem_euclid(m) as usize)
                .collect()
        })
        .collect()
}

fn checked(faces: &[Vec<usize>], n: usize) -> Result<PolyhedralMap, ConstructionError> {
    validate(faces, n).map_err(ConstructionError::Invalid)
}

/// A quadrangulated grid map carrying its grid tags.
pub fn grid_map(g: &Grid) -> Result<PolyhedralMap, ConstructionError> {
    Ok(checked(&g.quads(), g.coords.len())?.with_tags(g.tags("4^4")))
}

/// The equivelar series maps.
pub fn equivelar_series(p: &SeriesParams) -> Result<PolyhedralMap, ConstructionError> {
    if p.n < p.min_n() {
        return Err(ConstructionError::ParamOutOfRange(format!(
            "{} series on the {} needs n >= {}, got {}",
            p.family,
            p.surface,
            p.min_n(),
            p.n
        )));
    }
    let grid = match p.surface {
        GridSurface::Torus => {
            if p.twist.is_multiple_of(p.n) {
                return Err(ConstructionError::ParamOutOfRange(format!("twist {} is 0 mod n", p.twist)));
            }
            torus_grid(p.n, p.twist)
        }
        GridSurface::Klein => klein_grid(p.n),
    };
    let tag = |fam: Family| vec![format!("series {fam} {} n={}", p.surface, p.n)];
    match (p.family, p.surface) {
        (Family::Quad, _) => {
            let m = checked(&grid.quads(), grid.coords.len())?;
            Ok(m.with_tags([tag(Family::Quad), grid.tags("4^4")].concat()))
        }
        (Family::Tri, _) => {
            let m = checked(&triangulate(&grid), grid.coords.len())?;
            Ok(m.with_tags([tag(Family::Tri), grid.tags("3^6")].concat()))
        }
        (Family::Hex, GridSurface::Torus) => Ok(checked(&hex_torus_faces(p.n), 2 * p.n)?.with_tags(tag(Family::Hex))),
        (Family::Hex, GridSurface::Klein) => {
            let tri = checked(&triangulate(&grid), grid.coords.len())?;
            Ok(dual(&tri)?.with_tags(tag(Family::Hex)))
        }
    }
}

/// The grid of a tagged (4^4) map, checked against its faces.
pub fn quad_grid_of(m: &PolyhedralMap) -> Result<Grid, ConstructionError> {
    let g = Grid::from_tags(m.tags()).ok_or_else(|| ConstructionError::NotGridMap("no grid tags".into()))?;
    if g.coords.len() != m.n_vertices() {
        return Err(ConstructionError::NotGridMap("grid size differs from vertex count".into()));
    }
    let expected = checked(&g.quads(), g.coords.len())
        .map_err(|_| ConstructionError::NotGridMap("grid cells do not form a map".into()))?;
    if expected != *m {
        return Err(ConstructionError::NotGridMap("faces are not the tagged grid cells".into()));
    }
    Ok(g)
}
