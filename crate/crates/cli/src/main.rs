//! `sem-atlas`: validate, inspect, enumerate and construct polyhedral maps.
//!
//! Exit codes: 0 success, 1 domain failure (invalid map, no isomorphism,
//! failed verification), 2 usage or IO error.

mod export;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use sem_atlas::classify::{homological_systole, is_vertex_transitive};
use sem_atlas::constructions::{
    double_cover, equivelar_series, verify_covering, Family, GridSurface, Operator, SeriesParams, DEFAULT_TWIST,
};
use sem_atlas::enumerate::{classify_all, enumerate_with, map_file_name, Classification, SearchOptions, BUDGET_ENV};
use sem_atlas::fixtures::load_fixture;
use sem_atlas::format::{parse_map, ParseError};
use sem_atlas::{edge_graph_char_poly, find_isomorphism, serialize, FaceSeqType, PolyhedralMap};
use serde_json::json;

/// Failure classes, mapped onto exit codes.
enum Failure {
    Domain(anyhow::Error),
    Usage(anyhow::Error),
}

type CmdResult = Result<(), Failure>;

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

fn domain<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Domain(e.into())
}

#[derive(Parser)]
#[command(name = "sem-atlas", version, about = "Validate, classify, enumerate and construct polyhedral maps on flat surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawFormat {
    Dot,
    Svg,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Worker threads for the search; 1 gives reproducible scheduling.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Node cap per (type, n) cell.
    #[arg(long, env = BUDGET_ENV)]
    budget: Option<u64>,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions { node_budget: self.budget, jobs: self.jobs.max(1) }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the polyhedral map conditions.
    Validate {
        /// Map file, or `fixture:<id>`.
        path: String,
    },
    /// Print combinatorial invariants.
    Invariants {
        path: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Test two maps for isomorphism; exit 1 if none exists.
    Iso {
        a: String,
        b: String,
        /// Force vertex `A` of the first map onto vertex `B` of the second, as `A:B`.
        #[arg(long)]
        pin: Option<String>,
    },
    /// All maps of one type on n vertices, up to isomorphism.
    Enumerate {
        /// Face-sequence, e.g. `3,3,3,4,4`.
        #[arg(long = "type")]
        face_type: String,
        #[arg(long)]
        n: usize,
        /// Directory for one semmap file per map.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Classification table over several types and vertex counts.
    Classify {
        #[arg(long)]
        max_vertices: usize,
        /// `all`, or face-sequences separated by `;`.
        #[arg(long, default_value = "all")]
        types: String,
        /// Directory for the map files and the table.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// A member of an equivelar series.
    Construct {
        /// `3x6`, `4x4` or `6x3`.
        #[arg(long)]
        family: String,
        /// `torus` or `klein`.
        #[arg(long)]
        surface: String,
        #[arg(long)]
        n: usize,
        /// Torus only: shift applied when the top row wraps.
        #[arg(long, default_value_t = DEFAULT_TWIST)]
        twist: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check type and surface of the result.
        #[arg(long)]
        verify: bool,
    },
    /// Apply a comma-separated operator chain to a map.
    Derive {
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
        path: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Orientation double cover of a non-orientable map.
    Cover {
        path: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the projection, one `cover_vertex base_vertex` pair per line.
        #[arg(long)]
        projection: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Edge graph as DOT, or the grid drawing as SVG for grid-tagged maps.
    Export {
        path: String,
        #[arg(long, value_enum, default_value_t = DrawFormat::Dot)]
        format: DrawFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Validate { path } => cmd_validate(&path),
        Cmd::Invariants { path, format } => cmd_invariants(&path, format),
        Cmd::Iso { a, b, pin } => cmd_iso(&a, &b, pin.as_deref()),
        Cmd::Enumerate { face_type, n, out, search } => cmd_enumerate(&face_type, n, out.as_deref(), &search),
        Cmd::Classify { max_vertices, types, out, format, search } => {
            cmd_classify(max_vertices, &types, out.as_deref(), format, &search)
        }
        Cmd::Construct { family, surface, n, twist, out, verify } => {
            cmd_construct(&family, &surface, n, twist, out.as_deref(), verify)
        }
        Cmd::Derive { ops, path, out, verify } => cmd_derive(&ops, &path, out.as_deref(), verify),
        Cmd::Cover { path, out, projection, verify } => cmd_cover(&path, out.as_deref(), projection.as_deref(), verify),
        Cmd::Export { path, format, out } => cmd_export(&path, format, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("{e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Reads a map from a file, or from the fixture catalog for `fixture:<id>`.
fn load(path: &str) -> Result<PolyhedralMap, Failure> {
    if let Some(id) = path.strip_prefix("fixture:") {
        return load_fixture(id).map_err(domain);
    }
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}")).map_err(usage)?;
    parse_map(&text).map_err(|e| match e {
        ParseError::Invalid(e) => domain(anyhow!("{e}")),
        e => domain(anyhow!("{path}: {e}")),
    })
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())).map_err(usage),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            // A closed pipe (e.g. `| head`) is not an error.
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(anyhow!("cannot write to stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn write_file(dir: &Path, name: &str, text: &str) -> CmdResult {
    fs::write(dir.join(name), text).with_context(|| format!("cannot write {}", dir.join(name).display())).map_err(usage)
}

fn parse_type(s: &str) -> Result<FaceSeqType, Failure> {
    s.parse::<FaceSeqType>().map_err(|e| usage(anyhow!("bad face-sequence {s:?}: {e}")))
}

fn cmd_validate(path: &str) -> CmdResult {
    let m = load(path)?;
    emit(None, &format!("valid: {} vertices, {} edges, {} faces\n", m.n_vertices(), m.n_edges(), m.n_faces()))
}

fn cmd_invariants(path: &str, format: ReportFormat) -> CmdResult {
    let m = load(path)?;
    let surface = m.surface_id();
    let faces_by_size: Vec<String> = m.face_size_counts().iter().map(|(p, c)| format!("{p}:{c}")).collect();
    let ty = m.is_semi_equivelar();
    let poly = edge_graph_char_poly(&m);
    let descending: Vec<String> = poly.coeffs().iter().rev().map(|c| c.to_string()).collect();
    let systole = homological_systole(&m).ok();
    let vt = is_vertex_transitive(&m);
    let text = match format {
        ReportFormat::Json => {
            let v = json!({
                "vertices": m.n_vertices(),
                "edges": m.n_edges(),
                "faces": m.face_size_counts(),
                "euler_characteristic": m.euler_characteristic(),
                "orientable": surface.orientable,
                "surface": surface.to_string(),
                "type": ty.as_ref().map(|t| t.comma()),
                "char_poly": poly.to_string(),
                "char_poly_descending": descending,
                "homological_systole": systole,
                "vertex_transitive": vt,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        ReportFormat::Text | ReportFormat::Csv => {
            let mut s = String::new();
            s += &format!("vertices {}\n", m.n_vertices());
            s += &format!("edges {}\n", m.n_edges());
            s += &format!("faces {}\n", faces_by_size.join(" "));
            s += &format!("euler_characteristic {}\n", m.euler_characteristic());
            s += &format!("orientable {}\n", surface.orientable);
            s += &format!("surface {surface}\n");
            match &ty {
                Some(t) => s += &format!("type {t} {}\n", t.power_notation()),
                None => s += "type not semi-equivelar\n",
            }
            s += &format!("char_poly {poly}\n");
            s += &format!("coefficients {}\n", descending.join(" "));
            match systole {
                Some(k) => s += &format!("homological_systole {k}\n"),
                None => s += "homological_systole n/a (surface is not flat)\n",
            }
            s += &format!("vertex_transitive {vt}\n");
            s
        }
    };
    emit(None, &text)
}

fn cmd_iso(a: &str, b: &str, pin: Option<&str>) -> CmdResult {
    let (ma, mb) = (load(a)?, load(b)?);
    let pin = match pin {
        None => None,
        Some(p) => {
            let (x, y) = p.split_once(':').ok_or_else(|| usage(anyhow!("--pin expects A:B, got {p:?}")))?;
            let x: usize = x.trim().parse().map_err(|_| usage(anyhow!("bad pin vertex {x:?}")))?;
            let y: usize = y.trim().parse().map_err(|_| usage(anyhow!("bad pin vertex {y:?}")))?;
            Some((x, y))
        }
    };
    match find_isomorphism(&ma, &mb, pin) {
        Some(iso) => {
            let pairs: Vec<String> = iso.mapping.iter().enumerate().map(|(i, j)| format!("{i}->{j}")).collect();
            emit(None, &format!("isomorphic\nmapping {}\n", pairs.join(" ")))
        }
        None => Err(domain(anyhow!("not isomorphic"))),
    }
}

fn cmd_enumerate(face_type: &str, n: usize, out: Option<&Path>, search: &SearchArgs) -> CmdResult {
    let t = parse_type(face_type)?;
    let e = enumerate_with(&t, n, &search.options());
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display())).map_err(usage)?;
    }
    let mut listing = String::new();
    let (mut nt, mut nk) = (0, 0);
    for m in &e.maps {
        let s = m.surface_id();
        let index = if s.orientable {
            nt += 1;
            nt
        } else {
            nk += 1;
            nk
        };
        let name = map_file_name(s.name, index, n, &t);
        listing += &format!("{name} {s}\n");
        if let Some(dir) = out {
            write_file(dir, &name, &serialize(m))?;
        }
    }
    listing += &format!("{} maps of type {t} on {n} vertices ({nt} orientable, {nk} non-orientable)\n", e.maps.len());
    if !e.complete {
        eprintln!("warning: node budget reached after {} nodes; the list may be incomplete", e.nodes);
    }
    emit(None, &listing)
}

fn parse_types(s: &str) -> Result<Vec<FaceSeqType>, Failure> {
    if s.trim() == "all" {
        return Ok(FaceSeqType::flat_semi_equivelar_types());
    }
    s.split(';').filter(|p| !p.trim().is_empty()).map(|p| parse_type(p.trim())).collect()
}

fn to_csv(c: &Classification) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["type", "n", "count", "orientable", "non_orientable", "status", "files"])?;
    for r in &c.rows {
        let status = if r.complete { "searched" } else { "incomplete" };
        w.write_record([
            r.face_type.clone(),
            r.n.to_string(),
            r.count.to_string(),
            r.orientable.to_string(),
            r.non_orientable.to_string(),
            status.to_string(),
            r.files.join(";"),
        ])?;
    }
    for i in &c.infeasible {
        w.write_record([&i.face_type, &i.n_max.to_string(), "", "", "", "infeasible", ""])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn cmd_classify(
    max_vertices: usize,
    types: &str,
    out: Option<&Path>,
    format: ReportFormat,
    search: &SearchArgs,
) -> CmdResult {
    if max_vertices < 3 {
        return Err(usage(anyhow!("--max-vertices must be at least 3")));
    }
    let types = parse_types(types)?;
    let c = classify_all(max_vertices, &types, &search.options());
    let (table, ext) = match format {
        ReportFormat::Text => (c.to_text(), "txt"),
        ReportFormat::Csv => (to_csv(&c).map_err(usage)?, "csv"),
        ReportFormat::Json => (format!("{}\n", c.to_json()), "json"),
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display())).map_err(usage)?;
        for (name, m) in &c.maps {
            write_file(dir, name, &serialize(m))?;
        }
        write_file(dir, &format!("table.{ext}"), &table)?;
    }
    if !c.complete() {
        eprintln!("warning: node budget reached; rows marked incomplete may undercount");
    }
    emit(None, &table)
}

/// Type and surface report for `--verify`; fails unless the map is a flat SEM.
fn verify_report(m: &PolyhedralMap, expected: Option<&FaceSeqType>) -> CmdResult {
    let s = m.surface_id();
    let ty = m.is_semi_equivelar();
    match (&ty, expected) {
        (None, _) => return Err(domain(anyhow!("verify: result is not semi-equivelar"))),
        (Some(t), Some(want)) if t != want => return Err(domain(anyhow!("verify: type {t}, expected {want}"))),
        _ => {}
    }
    if s.euler_characteristic != 0 {
        return Err(domain(anyhow!("verify: Euler characteristic {}", s.euler_characteristic)));
    }
    eprintln!("verified: type {} on the {s}, {} vertices", ty.expect("checked above"), m.n_vertices());
    Ok(())
}

fn cmd_construct(family: &str, surface: &str, n: usize, twist: usize, out: Option<&Path>, verify: bool) -> CmdResult {
    let family: Family = family.parse().map_err(|e: String| usage(anyhow!(e)))?;
    let surface: GridSurface = surface.parse().map_err(|e: String| usage(anyhow!(e)))?;
    let m = equivelar_series(&SeriesParams::new(family, surface, n).with_twist(twist)).map_err(domain)?;
    if verify {
        let want = match family {
            Family::Tri => "3,3,3,3,3,3",
            Family::Quad => "4,4,4,4",
            Family::Hex => "6,6,6",
        };
        verify_report(&m, Some(&parse_type(want)?))?;
    }
    emit(out, &serialize(&m))
}

fn cmd_derive(ops: &[String], path: &str, out: Option<&Path>, verify: bool) -> CmdResult {
    let ops: Vec<Operator> =
        ops.iter().map(|o| o.parse::<Operator>().map_err(|e| usage(anyhow!(e)))).collect::<Result<_, _>>()?;
    if ops.is_empty() {
        return Err(usage(anyhow!("--ops needs at least one operator")));
    }
    let mut m = load(path)?;
    for op in &ops {
        m = op.apply(&m).map_err(|e| domain(anyhow!("{}: {e}", op.name())))?;
    }
    if verify {
        verify_report(&m, None)?;
    }
    emit(out, &serialize(&m))
}

fn cmd_cover(path: &str, out: Option<&Path>, projection: Option<&Path>, verify: bool) -> CmdResult {
    let base = load(path)?;
    let (cover, proj) = double_cover(&base).map_err(domain)?;
    if verify {
        if !verify_covering(&cover, &base, &proj) || !cover.is_orientable() {
            return Err(domain(anyhow!("verify: projection is not an orientable double covering")));
        }
        verify_report(&cover, base.is_semi_equivelar().as_ref())?;
    }
    if let Some(p) = projection {
        let lines: String = proj.iter().enumerate().map(|(w, v)| format!("{w} {v}\n")).collect();
        fs::write(p, lines).with_context(|| format!("cannot write {}", p.display())).map_err(usage)?;
    }
    emit(out, &serialize(&cover))
}

fn cmd_export(path: &str, format: DrawFormat, out: Option<&Path>) -> CmdResult {
    let m = load(path)?;
    let text = match format {
        DrawFormat::Dot => export::dot(&m),
        DrawFormat::Svg => match export::svg(&m) {
            Some(svg) => svg,
            None => {
                eprintln!("warning: map carries no grid tags, SVG layout unavailable; writing DOT instead");
                export::dot(&m)
            }
        },
    };
    emit(out, &text)
}
