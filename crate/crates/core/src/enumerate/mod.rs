//! Exhaustive classification of semi-equivelar maps by type and vertex count.

mod gate;
mod search;

pub use gate::{closed_star, closed_star_size, face_counts, gate, min_vertices_gate, FaceCountProfile, Infeasible};
pub use search::{Rules, SearchState};

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{canonical_form, find_isomorphism};
use crate::face_type::FaceSeqType;
use crate::fixtures::fixture_catalog;
use crate::format::serialize;
use crate::map::{validate, PolyhedralMap, SurfaceName};
use search::Control;

/// Environment variable read by the CLI for the node cap.
pub const BUDGET_ENV: &str = "SEM_ATLAS_BUDGET";

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Maximum number of search nodes per (type, n) cell; `None` is unlimited.
    pub node_budget: Option<u64>,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// Pairwise non-isomorphic maps in order of first discovery.
    pub maps: Vec<PolyhedralMap>,
    /// False if the node budget cut the search short.
    pub complete: bool,
    pub nodes: u64,
    /// Completed leaves before isomorph rejection.
    pub leaves: usize,
}

/// All maps of type `t` on `n` vertices, one per isomorphism class.
pub fn enumerate_sems(t: &FaceSeqType, n: usize) -> Vec<PolyhedralMap> {
    enumerate_with(t, n, &SearchOptions::default()).maps
}

pub fn enumerate_with(t: &FaceSeqType, n: usize, opts: &SearchOptions) -> Enumeration {
    let Ok(profile) = face_counts(t, n) else {
        return Enumeration { maps: Vec::new(), complete: true, nodes: 0, leaves: 0 };
    };
    let budget: Vec<(usize, usize)> = profile.counts.iter().map(|(&p, &c)| (p, c)).collect();
    let rules = Rules::new(t);
    let ctl = Control::new(opts.node_budget);
    let leaves = search::complete_all(&rules, n, &budget, opts.jobs.max(1), &ctl);
    let mut seen = HashSet::new();
    let mut maps = Vec::new();
    for faces in &leaves {
        let m = validate(faces, n).expect("search leaves are polyhedral maps");
        if seen.insert(canonical_form(&m).bytes) {
            maps.push(m);
        }
    }
    Enumeration { maps, complete: !ctl.exhausted(), nodes: ctl.nodes(), leaves: leaves.len() }
}

/// One line of the classification table.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    #[serde(rename = "type")]
    pub face_type: String,
    pub n: usize,
    pub count: usize,
    pub orientable: usize,
    pub non_orientable: usize,
    pub files: Vec<String>,
    /// Fixture each map is isomorphic to, if any.
    pub known_as: Vec<Option<String>>,
    pub complete: bool,
}

/// A type for which no vertex count in range passes the gates.
#[derive(Debug, Clone, Serialize)]
pub struct InfeasibleType {
    #[serde(rename = "type")]
    pub face_type: String,
    pub n_max: usize,
    pub reasons: Vec<(usize, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub schema: u32,
    pub n_max: usize,
    pub rows: Vec<ReportRow>,
    pub infeasible: Vec<InfeasibleType>,
    #[serde(skip)]
    pub maps: Vec<(String, PolyhedralMap)>,
}

impl Classification {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.count).sum()
    }

    pub fn orientable(&self) -> usize {
        self.rows.iter().map(|r| r.orientable).sum()
    }

    pub fn non_orientable(&self) -> usize {
        self.rows.iter().map(|r| r.non_orientable).sum()
    }

    pub fn complete(&self) -> bool {
        self.rows.iter().all(|r| r.complete)
    }

    /// Plain-text table in the layout of the published tabulation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ =
            writeln!(s, "{:<16} {:>3} {:>5} {:>10} {:>14}  maps", "type", "n", "count", "orientable", "non_orientable");
        for r in &self.rows {
            let names: Vec<String> = r
                .files
                .iter()
                .zip(&r.known_as)
                .map(|(f, k)| match k {
                    Some(k) => format!("{f} (= {k})"),
                    None => f.clone(),
                })
                .collect();
            let flag = if r.complete { "" } else { " [incomplete: node budget reached]" };
            let _ = writeln!(
                s,
                "{:<16} {:>3} {:>5} {:>10} {:>14}  {}{}",
                r.face_type,
                r.n,
                r.count,
                r.orientable,
                r.non_orientable,
                names.join(", "),
                flag
            );
        }
        for i in &self.infeasible {
            let _ = writeln!(s, "{:<16} infeasible <= {}", i.face_type, i.n_max);
        }
        let _ = writeln!(
            s,
            "total {} ({} orientable, {} non-orientable)",
            self.total(),
            self.orientable(),
            self.non_orientable()
        );
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// File name `<T|K>_<index>_<n>__<type>.map`.
pub fn map_file_name(surface: SurfaceName, index: usize, n: usize, t: &FaceSeqType) -> String {
    let prefix = match surface {
        SurfaceName::Torus => "T",
        SurfaceName::KleinBottle => "K",
        SurfaceName::Sphere => "S",
        SurfaceName::Other => "X",
    };
    format!("{prefix}_{index}_{n}__{}.map", t.dashed())
}

fn known_as(m: &PolyhedralMap, t: &FaceSeqType) -> Option<String> {
    fixture_catalog()
        .iter()
        .filter(|e| e.n == m.n_vertices() && &e.face_sequence == t)
        .find(|e| find_isomorphism(m, &e.load(), None).is_some())
        .map(|e| e.id.to_string())
}

/// Runs the gates and the search for every type and every `n <= n_max`.
pub fn classify_all(n_max: usize, types: &[FaceSeqType], opts: &SearchOptions) -> Classification {
    let mut rows = Vec::new();
    let mut infeasible = Vec::new();
    let mut maps = Vec::new();
    for t in types {
        let feasible = min_vertices_gate(t, n_max);
        if feasible.is_empty() {
            let mut reasons = Vec::new();
            for n in 1..=n_max {
                if let Some(why) = gate(t, n) {
                    if face_counts(t, n).is_ok() {
                        reasons.push((n, why.to_string()));
                    }
                }
            }
            if reasons.is_empty() {
                reasons.push((0, "no vertex count passes the divisibility gate".to_string()));
            }
            infeasible.push(InfeasibleType { face_type: t.comma(), n_max, reasons });
            continue;
        }
        for n in feasible {
            let e = enumerate_with(t, n, opts);
            let mut row = ReportRow {
                face_type: t.comma(),
                n,
                count: e.maps.len(),
                orientable: 0,
                non_orientable: 0,
                files: Vec::new(),
                known_as: Vec::new(),
                complete: e.complete,
            };
            let (mut nt, mut nk) = (0, 0);
            for m in e.maps {
                let s = m.surface_id();
                let index = if s.orientable {
                    row.orientable += 1;
                    nt += 1;
                    nt
                } else {
                    row.non_orientable += 1;
                    nk += 1;
                    nk
                };
                let name = map_file_name(s.name, index, n, t);
                row.files.push(name.clone());
                row.known_as.push(known_as(&m, t));
                maps.push((name, m));
            }
            rows.push(row);
        }
    }
    Classification { schema: 1, n_max, rows, infeasible, maps }
}

/// Canonical serializations of a classification, in output order.
pub fn artifacts(c: &Classification) -> Vec<(String, String)> {
    c.maps.iter().map(|(name, m)| (name.clone(), serialize(m))).collect()
}
