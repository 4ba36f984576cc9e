//! The `rotamap` command line.
//!
//! Exit codes: 0 success, 1 failed identities/invariants or I/O trouble,
//! 2 unreadable map file or arguments, 3 a graphical map was required,
//! 4 bad orientation bits, 5 bad geometry argument.

pub mod check;
pub mod document;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::draw::{self, LayoutConfig, Point};
use crate::error::Error;
use crate::knot::{self, Knot};
use crate::map::{CombMap, MapCensus};
use document::MapDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_GRAPHICAL: i32 = 3;
pub const EXIT_ORIENT: i32 = 4;
pub const EXIT_GEOMETRY: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "rotamap",
    version,
    about = "Combinatorial maps as pairs of corner rotations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counts, genus and passports of a map.
    Info {
        /// Map file, or '-' for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        out_format: OutFormat,
    },
    /// One line per edge quartet.
    Edges { file: PathBuf },
    /// Zig-zag knot, its decompositions and identity checks.
    Knot {
        file: PathBuf,
        /// One bit per knot orbit; 1 reverses that orbit.
        #[arg(long)]
        orient: Option<String>,
    },
    /// Emits a random normalized map with K edges.
    Random {
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Renders a map to SVG.
    Draw(DrawArgs),
    /// Runs every invariant over random maps.
    Check {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 100)]
        max_k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct DrawArgs {
    file: PathBuf,
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Color corner labels by the knot's C1/C2 split.
    #[arg(long)]
    knot: bool,
    #[arg(long)]
    orient: Option<String>,
    /// Move vertex V (0-based) to X,Y before rendering; repeatable.
    #[arg(long = "move", value_name = "V:X,Y", allow_hyphen_values = true)]
    moves: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    width: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    height: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    vertex_radius: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    stub_length: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    circle_fraction: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    start_angle: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    label_offset: Option<f64>,
    #[arg(long)]
    precision: Option<usize>,
}

/// A command failure: message plus exit code.
#[derive(Debug)]
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Parse(_)
            | Error::NotBijection(_)
            | Error::LabelRange { .. }
            | Error::DegreeMismatch { .. }
            | Error::OddDegree(_) => EXIT_PARSE,
            Error::NotGraphical { .. } => EXIT_NOT_GRAPHICAL,
            Error::OrientLen { .. } => EXIT_ORIENT,
            Error::NoSuchVertex { .. } | Error::InvalidLayout(_) => EXIT_GEOMETRY,
            Error::NotNormalized | Error::KnotMismatch(_) | Error::Factorization(_) => EXIT_FAILED,
        };
        Fail(code, e.to_string())
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, stdin) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(Fail(code, message)) => {
            let _ = writeln!(stderr, "rotamap: {message}");
            code
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<(String, i32), Fail> {
    match command {
        Command::Info { file, out_format } => {
            let doc = load(&file, stdin)?;
            Ok((cmd_info(&doc, out_format == OutFormat::Json), EXIT_OK))
        }
        Command::Edges { file } => Ok((cmd_edges(&load(&file, stdin)?)?, EXIT_OK)),
        Command::Knot { file, orient } => cmd_knot(&load(&file, stdin)?, orient.as_deref()),
        Command::Random { k, seed } => Ok((cmd_random(k, seed), EXIT_OK)),
        Command::Draw(args) => {
            let doc = load(&args.file, stdin)?;
            let svg = cmd_draw(&doc, &args)?;
            match &args.output {
                Some(path) => {
                    std::fs::write(path, svg)
                        .map_err(|e| Fail(EXIT_FAILED, format!("{}: {e}", path.display())))?;
                    Ok((String::new(), EXIT_OK))
                }
                None => Ok((svg, EXIT_OK)),
            }
        }
        Command::Check { trials, max_k, seed } => {
            if trials == 0 || max_k == 0 {
                return Err(Fail(EXIT_PARSE, "trials and max-k must be at least 1".into()));
            }
            let report = check::run_check(trials, max_k, seed);
            let code = if report.failures == 0 {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            Ok((report.render(), code))
        }
    }
}

fn load(path: &PathBuf, stdin: &mut dyn Read) -> Result<MapDocument, Fail> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Fail(EXIT_FAILED, format!("{}: {e}", path.display())))?;
    Ok(MapDocument::parse(&text)?)
}

fn list(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn set(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn orbit_text(orbit: &[usize]) -> String {
    let parts: Vec<String> = orbit.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(" "))
}

#[derive(Serialize)]
struct InfoJson<'a> {
    name: Option<&'a str>,
    degree: usize,
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "Q")]
    q: String,
    graphical: bool,
    normalized: bool,
    hyperedge_sizes: Vec<usize>,
    passports: Passports,
    census: MapCensus,
}

#[derive(Serialize)]
struct Passports {
    #[serde(rename = "P")]
    p: Vec<usize>,
    #[serde(rename = "Q")]
    q: Vec<usize>,
    pi: Vec<usize>,
    rho: Vec<usize>,
}

fn cmd_info(doc: &MapDocument, json: bool) -> String {
    let map = &doc.map;
    let census = map.census();
    let hyperedge_sizes: Vec<usize> = map.hyperedges().iter().map(Vec::len).collect();
    if json {
        let info = InfoJson {
            name: doc.name.as_deref(),
            degree: map.degree(),
            p: doc.p.to_string(),
            q: doc.q_text(),
            graphical: map.is_graphical(),
            normalized: map.is_normalized(),
            hyperedge_sizes,
            passports: Passports {
                p: map.p().passport(),
                q: map.q().passport(),
                pi: map.pi().passport(),
                rho: map.rho().passport(),
            },
            census,
        };
        let mut text = serde_json::to_string_pretty(&info).expect("plain data serializes");
        text.push('\n');
        return text;
    }

    let mut out = String::new();
    if let Some(name) = &doc.name {
        let _ = writeln!(out, "name: {name}");
    }
    let kind = if map.is_graphical() {
        "graphical map".to_string()
    } else {
        format!("partial map; hyperedges {}", list(&map.rho().passport()))
    };
    let _ = writeln!(
        out,
        "{kind}; genus {}; V={} E={} F={}",
        census.genus, census.vertices, census.edges, census.faces
    );
    let _ = writeln!(out, "corners m={}", census.corners);
    let _ = writeln!(
        out,
        "components={} chi={} genus={}",
        census.components, census.chi, census.genus
    );
    for (i, part) in census.per_component.iter().enumerate() {
        let _ = writeln!(
            out,
            "  component {}: corners={} chi={} genus={}",
            i + 1,
            part.corners.len(),
            part.chi,
            part.genus
        );
    }
    let _ = writeln!(out, "graphical: {}", yes_no(map.is_graphical()));
    let _ = writeln!(out, "normalized: {}", yes_no(map.is_normalized()));
    for (name, r) in [("P", map.p()), ("Q", map.q()), ("π", map.pi()), ("ρ", map.rho())] {
        let _ = writeln!(out, "passport {name}: {}", list(&r.passport()));
    }
    if !map.is_graphical() {
        for orbit in map.hyperedges().iter().filter(|o| o.len() != 2) {
            let _ = writeln!(out, "hyperedge {} size {}", orbit_text(orbit), orbit.len());
        }
    }
    out
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}

fn cmd_edges(doc: &MapDocument) -> Result<String, Fail> {
    let map = &doc.map;
    let vertices = map.vertices();
    let mut out = String::new();
    for e in map.edges()? {
        let kind = serde_name(&e.kind);
        let degeneracy = serde_name(&e.degeneracy);
        let _ = writeln!(
            out,
            "⟨{},{},{},{}⟩ {degeneracy} {kind} vertices {} {}",
            e.a,
            e.b,
            e.c,
            e.d,
            orbit_text(&vertices[e.vertex1]),
            orbit_text(&vertices[e.vertex2]),
        );
    }
    Ok(out)
}

fn serde_name<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn parse_orient(bits: &str, expected: usize) -> Result<Vec<bool>, Fail> {
    let flips: Option<Vec<bool>> = bits
        .chars()
        .map(|ch| match ch {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect();
    let flips = flips.ok_or_else(|| Fail(EXIT_ORIENT, format!("orientation '{bits}' must be 0s and 1s")))?;
    if flips.len() != expected {
        return Err(Error::OrientLen {
            expected,
            got: flips.len(),
        }
        .into());
    }
    Ok(flips)
}

fn oriented_knot(map: &CombMap, orient: Option<&str>) -> Result<Knot, Fail> {
    let knot = Knot::zigzag(map)?;
    match orient {
        Some(bits) => {
            let flips = parse_orient(bits, knot.orbit_count())?;
            Ok(knot.reorient(&flips)?)
        }
        None => Ok(knot),
    }
}

fn cmd_knot(doc: &MapDocument, orient: Option<&str>) -> Result<(String, i32), Fail> {
    let map = &doc.map;
    let knot = oriented_knot(map, orient)?;
    let analysis = knot::analyze(map, &knot)?;
    let faces = knot::faces_partial_map(map, &knot)?;
    let s = &analysis.structure;

    let mut out = String::new();
    let _ = writeln!(out, "μ = {}", knot.mu());
    let _ = writeln!(out, "orbit starts = {}", list(knot.orbit_starts()));
    let _ = writeln!(out, "C1 = {}", set(&knot.c1()));
    let _ = writeln!(out, "C2 = {}", set(&knot.c2()));
    let _ = writeln!(out, "π₁ (cut edges) = {}", analysis.pi1);
    let _ = writeln!(out, "π₂ (cycle edges) = {}", analysis.pi2);
    let _ = writeln!(out, "γ₁ = {}", analysis.gamma1);
    let _ = writeln!(out, "γ₂ = {}", analysis.gamma2);
    let _ = writeln!(out, "α = {}", analysis.alpha);
    let _ = writeln!(out, "δ = {}", s.delta);
    let _ = writeln!(out, "ε = {}", s.epsilon);
    let _ = writeln!(out, "ε² = {}", s.epsilon_squared);
    let _ = writeln!(out, "A = α·π₁ = {}", s.symmetric_form);
    let _ = writeln!(
        out,
        "ε² vs A: passports {}, exact {}",
        if s.passport_match { "equal" } else { "differ" },
        if s.exact_match { "equal" } else { "differ" }
    );
    let flag = match analysis.partially_normalized {
        Some(flag) => yes_no(flag),
        None => "n/a (map not normalized)",
    };
    let _ = writeln!(out, "partially normalized: {flag}");
    let _ = writeln!(
        out,
        "(P, μ): edge rotation {}; equals Q: {}; passport matches Q: {}",
        faces.partial.rho(),
        yes_no(faces.edge_rotation_is_q),
        yes_no(faces.passport_matches_q)
    );
    for check in &analysis.report.checks {
        let tag = match (check.passed, check.exploratory) {
            (true, _) => "pass",
            (false, true) => "info",
            (false, false) => "FAIL",
        };
        match check.witness {
            Some(w) if w > 0 => {
                let _ = writeln!(out, "[{tag}] {} (corner {w})", check.name);
            }
            _ => {
                let _ = writeln!(out, "[{tag}] {}", check.name);
            }
        }
    }
    let passed = analysis.report.all_pass();
    let _ = writeln!(out, "identities: {}", if passed { "all pass" } else { "FAILED" });
    Ok((out, if passed { EXIT_OK } else { EXIT_FAILED }))
}

/// Map file text for a seeded random normalized map with `k` edges.
pub fn cmd_random(k: usize, seed: u64) -> String {
    let map = CombMap::random(k, seed);
    MapDocument::from_map(Some(format!("random-k{k}-s{seed}")), map, true).to_text()
}

fn parse_move(spec: &str) -> Result<(usize, Point), Fail> {
    let bad = || Fail(EXIT_GEOMETRY, format!("bad move '{spec}', expected V:X,Y"));
    let (vertex, coords) = spec.split_once(':').ok_or_else(bad)?;
    let (x, y) = coords.split_once(',').ok_or_else(bad)?;
    let vertex = vertex.trim().parse::<usize>().map_err(|_| bad())?;
    let x = x.trim().parse::<f64>().map_err(|_| bad())?;
    let y = y.trim().parse::<f64>().map_err(|_| bad())?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(bad());
    }
    Ok((vertex, Point::new(x, y)))
}

fn layout_config(args: &DrawArgs) -> LayoutConfig {
    let mut config = LayoutConfig::default();
    let overrides = [
        (&mut config.canvas_width, args.width),
        (&mut config.canvas_height, args.height),
        (&mut config.vertex_radius, args.vertex_radius),
        (&mut config.stub_length, args.stub_length),
        (&mut config.circle_fraction, args.circle_fraction),
        (&mut config.start_angle_degrees, args.start_angle),
        (&mut config.label_offset, args.label_offset),
    ];
    for (field, value) in overrides {
        if let Some(v) = value {
            *field = v;
        }
    }
    if let Some(p) = args.precision {
        config.precision = p;
    }
    config
}

fn cmd_draw(doc: &MapDocument, args: &DrawArgs) -> Result<String, Fail> {
    let map = &doc.map;
    map.require_graphical()?;
    let config = layout_config(args);
    let moves = args
        .moves
        .iter()
        .map(|m| parse_move(m))
        .collect::<Result<Vec<_>, _>>()?;
    let knot = if args.knot || args.orient.is_some() {
        Some(oriented_knot(map, args.orient.as_deref())?)
    } else {
        None
    };
    let mut drawing = draw::layout_map(map, &config)?;
    for (vertex, position) in moves {
        drawing = draw::move_vertex(&drawing, vertex, position)?;
    }
    Ok(draw::render_svg(&drawing, knot.as_ref(), &config)?)
}
