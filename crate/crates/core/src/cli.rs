//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on any error, 2 when a check returns a negative
//! verdict (not isothermic, not factorized).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::deform::{conformal_dimension, harmonic_normal_deformation};
use crate::expr::{BoundaryExpr, Sample};
use crate::generators::{self, CylinderParams, Platonic};
use crate::harmonic::{self, solve_dirichlet, DEFAULT_TOLERANCE};
use crate::isothermic::{isothermic_basis, IsothermicReport};
use crate::linalg::DEFAULT_RANK_TOL;
use crate::mesh::{read_obj, write_obj_string, MeshReport, Realization};
use crate::minimal::{screw_symmetry, weierstrass, Domain, DomainMesh, WeierstrassConfig};
use crate::moebius::{angle_rate, angles, AngleKind, MoebiusMap, MoebiusVelocity};
use crate::quadnet::{
    fit_factorization, quad_dual, subdivide_and_rotate, DiagonalPattern, QuadNet,
};

/// Version of every JSON document written by the CLI.
pub const SCHEMA: u32 = 1;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "ISOFORM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "isoform",
    version,
    about = "Isothermic triangulated surfaces and discrete minimal surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Self-stress nullspace of a mesh; exits 2 when no stress exists.
    CheckIsothermic(CheckArgs),
    /// Discrete minimal surface from a harmonic function on a planar domain.
    Minimal(MinimalArgs),
    /// Infinitesimal deformations.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Möbius transformations of a mesh.
    #[command(subcommand)]
    Moebius(MoebiusCommand),
    /// Quad nets from a grid JSON `{M, N, points}`.
    #[command(subcommand)]
    Quadnet(QuadnetCommand),
    /// Test meshes.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Circumcircle or circumsphere intersection angles, optionally with rates.
    Angles(AnglesArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// OBJ file, or `-` for stdin.
    pub mesh: PathBuf,
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    pub tol: f64,
    /// Where to write the JSON report (stdout when omitted).
    #[arg(long, alias = "report")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainKind {
    Square,
    Annulus,
}

#[derive(Debug, Args)]
pub struct MinimalArgs {
    #[arg(long, value_enum, default_value = "square")]
    pub domain: DomainKind,
    /// Vertices per side for the square, segments around for the annulus.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub r_inner: f64,
    #[arg(long, default_value_t = 2.0)]
    pub r_outer: f64,
    /// Rings of the annulus; chosen for square cells when omitted.
    #[arg(long)]
    pub n_r: Option<usize>,
    /// Boundary values in `x`, `y`, `r`, `theta`.
    #[arg(long)]
    pub boundary: String,
    /// Circle sent to the equator by the stereographic projection.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub harmonic_tol: f64,
    #[arg(long, default_value_t = crate::minimal::DEFAULT_GATE)]
    pub gate: f64,
    /// Dual mesh OBJ.
    #[arg(long)]
    pub out: PathBuf,
    /// Gauss map OBJ.
    #[arg(long)]
    pub gauss: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DeformCommand {
    /// Normal deformation `ḟ = u N` of a planar mesh and its face rotations.
    HarmonicNormal(HarmonicNormalArgs),
    /// Dimension of infinitesimal conformal deformations of a closed mesh.
    ConformalDimension(DimensionArgs),
}

/// Harmonic solve configuration as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicConfig {
    pub boundary_expr: String,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

#[derive(Debug, Args)]
pub struct HarmonicNormalArgs {
    /// Planar OBJ file, or `-` for stdin.
    pub mesh: PathBuf,
    /// `u` at every vertex.
    #[arg(long, conflicts_with_all = ["boundary", "config"])]
    pub u_expr: Option<String>,
    /// Boundary values; `u` is their harmonic extension.
    #[arg(long, conflicts_with = "config")]
    pub boundary: Option<String>,
    /// JSON `{boundary_expr, tolerance}` for the harmonic extension.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Field JSON (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV `vertex_id,u`.
    #[arg(long)]
    pub u_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DimensionArgs {
    pub mesh: PathBuf,
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum MoebiusCommand {
    /// Applies a chain such as `translate 0 0 2; invert; scale 0.5`.
    Apply {
        mesh: PathBuf,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum QuadnetCommand {
    /// Cross-ratio factorization; exits 2 when it fails.
    Check {
        grid: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Christoffel dual as a grid JSON.
    Dual {
        grid: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Triangulates the net and assigns face rotations from the dual.
    Subdivide {
        grid: PathBuf,
        /// all-ne, all-nw, alternating or random:<seed>.
        #[arg(long, default_value = "all-ne")]
        diag: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Triangulated OBJ.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Unit square grid with `n x n` vertices.
    Grid {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Annulus cut along the positive x-axis.
    Annulus {
        #[arg(long, default_value_t = 0.5)]
        rin: f64,
        #[arg(long, default_value_t = 1.0)]
        rout: f64,
        #[arg(long, default_value_t = 6)]
        nr: usize,
        #[arg(long, default_value_t = 24)]
        ntheta: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Jessen's orthogonal icosahedron.
    Jessen {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inscribed Platonic solid.
    Platonic {
        #[arg(value_enum)]
        which: PlatonicKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Window of a homogeneous screw-motion cylinder.
    Cylinder(CylinderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlatonicKind {
    Tetra,
    Octa,
    Icosa,
}

#[derive(Debug, Args)]
pub struct CylinderArgs {
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub theta1: Option<f64>,
    #[arg(long)]
    pub h1: Option<f64>,
    #[arg(long)]
    pub theta2: Option<f64>,
    #[arg(long)]
    pub h2: Option<f64>,
    #[arg(long)]
    pub ns: Option<usize>,
    #[arg(long)]
    pub nt: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Edge classes and mean curvature as JSON.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnglesArgs {
    pub mesh: PathBuf,
    #[arg(long, value_enum, default_value = "circles")]
    pub kind: AngleKindArg,
    /// Also report rates under a random Möbius flow with this seed.
    #[arg(long)]
    pub moebius_flow: Option<u64>,
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AngleKindArg {
    Circles,
    Spheres,
}

impl From<AngleKindArg> for AngleKind {
    fn from(k: AngleKindArg) -> Self {
        match k {
            AngleKindArg::Circles => AngleKind::Circles,
            AngleKindArg::Spheres => AngleKind::Spheres,
        }
    }
}

type CliResult = Result<i32, String>;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("isoform: {msg}");
            1
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn dispatch(cmd: Command) -> CliResult {
    match cmd {
        Command::CheckIsothermic(a) => check_isothermic(a),
        Command::Minimal(a) => minimal(a),
        Command::Deform(DeformCommand::HarmonicNormal(a)) => harmonic_normal(a),
        Command::Deform(DeformCommand::ConformalDimension(a)) => dimension(a),
        Command::Moebius(MoebiusCommand::Apply { mesh, chain, out }) => {
            let map: MoebiusMap = chain.parse().map_err(|e| format!("moebius: {e}"))?;
            let r = load_mesh(&mesh)?;
            let image = map.apply(&r).map_err(|e| format!("moebius: {e}"))?;
            emit(out.as_deref(), &write_obj_string(&image))?;
            Ok(0)
        }
        Command::Quadnet(q) => quadnet(q),
        Command::Gen(g) => generate(g),
        Command::Angles(a) => angle_report(a),
    }
}

/// Writes to `path`, or stdout for `None` and `-`.
fn emit(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| format!("io: {}: {e}", p.display()))
        }
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| format!("io: stdout: {e}"))
        }
    }
}

/// Pretty JSON with a `schema` key; keys come out sorted.
pub fn to_json(body: &impl Serialize) -> String {
    let mut v = serde_json::to_value(body).expect("reports serialize");
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn read_text(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("io: stdin: {e}"))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("io: {}: {e}", path.display()))
    }
}

fn load_mesh(path: &Path) -> Result<Realization, String> {
    read_obj(path).map_err(|e| format!("mesh: {e}"))
}

fn load_net(path: &Path) -> Result<QuadNet, String> {
    let net: QuadNet = serde_json::from_str(&read_text(path)?)
        .map_err(|e| format!("quadnet: {}: {e}", path.display()))?;
    net.validate().map_err(|e| format!("quadnet: {e}"))?;
    Ok(net)
}

fn check_isothermic(a: CheckArgs) -> CliResult {
    let r = load_mesh(&a.mesh)?;
    let basis = isothermic_basis(&r, a.tol);
    let report = IsothermicReport::new(&r, &basis);
    emit(a.json.as_deref(), &to_json(&report))?;
    // a marginal spectrum with stresses above the threshold still counts
    Ok(if basis.nullity() > 0 { 0 } else { 2 })
}

fn minimal(a: MinimalArgs) -> CliResult {
    let boundary = BoundaryExpr::parse(&a.boundary).map_err(|e| format!("minimal: {e}"))?;
    let domain = match a.domain {
        DomainKind::Square => Domain::Square { n: a.n },
        DomainKind::Annulus => match (Domain::annulus(a.r_inner, a.r_outer, a.n), a.n_r) {
            (
                Domain::Annulus {
                    r_inner,
                    r_outer,
                    n_theta,
                    ..
                },
                Some(n_r),
            ) => Domain::Annulus {
                r_inner,
                r_outer,
                n_r,
                n_theta,
            },
            (d, _) => d,
        },
    };
    let config = WeierstrassConfig {
        radius: a.radius,
        harmonic_tol: a.harmonic_tol,
        gate: a.gate,
    };
    let mesh = DomainMesh::new(domain).map_err(|e| format!("minimal: {e}"))?;
    let surface = weierstrass(&mesh, &boundary, &config).map_err(|e| format!("minimal: {e}"))?;
    emit(Some(&a.out), &surface.dual.to_obj())?;
    if let Some(g) = &a.gauss {
        emit(Some(g), &write_obj_string(&surface.gauss))?;
    }
    let report = json!({
        "provenance": surface.provenance,
        "report": surface.report,
        "max_residual": surface.report.max_residual(),
        "symmetry": screw_symmetry(&surface),
        "dual_vertices": surface.dual.points.len(),
    });
    if let Some(p) = &a.report {
        emit(Some(p), &to_json(&report))?;
    }
    Ok(0)
}

fn harmonic_normal(a: HarmonicNormalArgs) -> CliResult {
    let r = load_mesh(&a.mesh)?;
    let samples = r.positions().iter().map(|p| Sample::planar(p.x, p.y));
    let tag = |e: &dyn std::fmt::Display| format!("deform: {e}");
    let u = if let Some(src) = &a.u_expr {
        BoundaryExpr::parse(src)
            .and_then(|e| e.eval_all(samples))
            .map_err(|e| tag(&e))?
    } else {
        let config = match (&a.boundary, &a.config) {
            (Some(b), _) => HarmonicConfig {
                boundary_expr: b.clone(),
                tolerance: DEFAULT_TOLERANCE,
            },
            (None, Some(path)) => serde_json::from_str(&read_text(path)?)
                .map_err(|e| format!("harmonic: {}: {e}", path.display()))?,
            (None, None) => {
                return Err("deform: one of --u-expr, --boundary, --config is required".into())
            }
        };
        let g = BoundaryExpr::parse(&config.boundary_expr)
            .and_then(|e| e.eval_all(samples))
            .map_err(|e| format!("harmonic: {e}"))?;
        solve_dirichlet(&r, |i| g[i], config.tolerance)
            .map_err(|e| format!("harmonic: {e}"))?
            .u
    };
    if let Some(p) = &a.u_csv {
        emit(Some(p), &harmonic::to_csv(&u))?;
    }
    let hn = harmonic_normal_deformation(&r, &u).map_err(|e| tag(&e))?;
    let field = json!({
        "f_dot": hn.field.f_dot,
        "Z": hn.field.z,
        "sigma": hn.field.sigma,
        "Hdot": hn.hdot,
        "interior_vertices": r.mesh().interior_vertices(),
        "normal": hn.normal,
    });
    emit(a.out.as_deref(), &to_json(&field))?;
    Ok(0)
}

fn dimension(a: DimensionArgs) -> CliResult {
    let r = load_mesh(&a.mesh)?;
    let d = conformal_dimension(&r, a.tol).map_err(|e| format!("deform: {e}"))?;
    emit(a.report.as_deref(), &to_json(&d))?;
    Ok(0)
}

fn quadnet(cmd: QuadnetCommand) -> CliResult {
    let tag = |e: &dyn std::fmt::Display| format!("quadnet: {e}");
    match cmd {
        QuadnetCommand::Check { grid, tol, report } => {
            let net = load_net(&grid)?;
            let f = fit_factorization(&net, tol).map_err(|e| tag(&e))?;
            let verdict = if f.factorized {
                "factorized"
            } else {
                "not_factorized"
            };
            emit(
                report.as_deref(),
                &to_json(&json!({ "verdict": verdict, "factorization": f })),
            )?;
            Ok(if f.factorized { 0 } else { 2 })
        }
        QuadnetCommand::Dual {
            grid,
            tol,
            out,
            report,
        } => {
            let net = load_net(&grid)?;
            let f = fit_factorization(&net, tol).map_err(|e| tag(&e))?;
            let dual = quad_dual(&net, &f);
            emit(out.as_deref(), &to_json(&dual.net))?;
            if let Some(p) = &report {
                let body = json!({
                    "factorization": f,
                    "closure": dual.closure,
                    "max_closure": dual.max_closure,
                    "diagonal": dual.diagonal,
                });
                emit(Some(p), &to_json(&body))?;
            }
            Ok(0)
        }
        QuadnetCommand::Subdivide {
            grid,
            diag,
            tol,
            out,
            report,
        } => {
            let pattern: DiagonalPattern = diag.parse().map_err(|e| tag(&e))?;
            let net = load_net(&grid)?;
            let f = fit_factorization(&net, tol).map_err(|e| tag(&e))?;
            let dual = quad_dual(&net, &f);
            let sub = subdivide_and_rotate(&net, &dual, &pattern.choices(&net), tol)
                .map_err(|e| tag(&e))?;
            emit(out.as_deref(), &write_obj_string(&sub.realization))?;
            if let Some(p) = &report {
                let body = json!({
                    "diagonals": sub.diagonals,
                    "Z": sub.z,
                    "compatibility": sub.compatibility,
                    "incompatible_edges": sub.incompatible_edges,
                    "Hdot": sub.hdot,
                    "max_hdot": sub.max_hdot(),
                    "dual_closure": dual.max_closure,
                });
                emit(Some(p), &to_json(&body))?;
            }
            Ok(0)
        }
    }
}

fn generate(cmd: GenCommand) -> CliResult {
    let tag = |e: &dyn std::fmt::Display| format!("gen: {e}");
    let (r, out) = match cmd {
        GenCommand::Grid { n, out } => (generators::grid_disk(n).map_err(|e| tag(&e))?, out),
        GenCommand::Annulus {
            rin,
            rout,
            nr,
            ntheta,
            out,
        } => (
            generators::cut_annulus(rin, rout, nr, ntheta)
                .map_err(|e| tag(&e))?
                .realization,
            out,
        ),
        GenCommand::Jessen { out } => (generators::jessen(), out),
        GenCommand::Platonic { which, out } => {
            let which = match which {
                PlatonicKind::Tetra => Platonic::Tetrahedron,
                PlatonicKind::Octa => Platonic::Octahedron,
                PlatonicKind::Icosa => Platonic::Icosahedron,
            };
            (generators::platonic(which), out)
        }
        GenCommand::Cylinder(a) => {
            let d = CylinderParams::default();
            let p = CylinderParams {
                r: a.r.unwrap_or(d.r),
                theta1: a.theta1.unwrap_or(d.theta1),
                h1: a.h1.unwrap_or(d.h1),
                theta2: a.theta2.unwrap_or(d.theta2),
                h2: a.h2.unwrap_or(d.h2),
                ns: a.ns.unwrap_or(d.ns),
                nt: a.nt.unwrap_or(d.nt),
            };
            let c = generators::homogeneous_cylinder(&p).map_err(|e| tag(&e))?;
            if let Some(path) = &a.report {
                let body = json!({
                    "params": p.to_vec(),
                    "window": [p.ns, p.nt],
                    "lengths": c.lengths,
                    "class_spread": c.class_spread,
                    "center_h": c.center_h(),
                    "h_spread": c.h_spread(),
                    "mesh": MeshReport::new(&c.realization),
                });
                emit(Some(path), &to_json(&body))?;
            }
            (c.realization, a.out)
        }
    };
    emit(out.as_deref(), &write_obj_string(&r))?;
    Ok(0)
}

fn angle_report(a: AnglesArgs) -> CliResult {
    let r = load_mesh(&a.mesh)?;
    let kind: AngleKind = a.kind.into();
    let tag = |e: &dyn std::fmt::Display| format!("angles: {e}");
    let values = angles(&r, kind).map_err(|e| tag(&e))?;
    let mut body = json!({ "kind": kind, "angles": values });
    if let Some(seed) = a.moebius_flow {
        let v = MoebiusVelocity::random(&mut ChaCha8Rng::seed_from_u64(seed));
        let f_dot: Vec<Vector3<f64>> = v.field(&r);
        let rates = angle_rate(&r, &f_dot, kind, a.eps).map_err(|e| tag(&e))?;
        let max = rates.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
        body["rates"] = json!(rates);
        body["max_rate"] = json!(max);
        body["eps"] = json!(a.eps);
    }
    emit(a.report.as_deref(), &to_json(&body))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_subcommand() {
        for line in [
            "isoform check-isothermic m.obj --tol 1e-8 --json r.json",
            "isoform minimal --domain annulus --n 24 --r-inner 0.5 --r-outer 2 --boundary theta --out s.obj",
            "isoform deform harmonic-normal m.obj --u-expr x*y --out f.json",
            "isoform deform conformal-dimension m.obj",
            "isoform moebius apply m.obj --chain invert",
            "isoform quadnet check g.json",
            "isoform quadnet dual g.json",
            "isoform quadnet subdivide g.json --diag random:3",
            "isoform gen grid --n 5",
            "isoform gen annulus --rin 0.5 --rout 1 --nr 6 --ntheta 24",
            "isoform gen jessen",
            "isoform gen platonic tetra",
            "isoform gen cylinder --r 1 --theta1 0.9 --out c.obj",
            "isoform angles m.obj --kind spheres --moebius-flow 4",
        ] {
            assert!(Cli::try_parse_from(line.split(' ')).is_ok(), "{line}");
        }
    }

    #[test]
    fn conflicting_sources_rejected() {
        let line = "isoform deform harmonic-normal m.obj --u-expr x --boundary y";
        assert!(Cli::try_parse_from(line.split(' ')).is_err());
    }

    #[test]
    fn reports_carry_schema() {
        let s = to_json(&json!({ "b": 0.1, "a": [1.0] }));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["b"].as_f64(), Some(0.1));
    }

    #[test]
    fn harmonic_config_default_tolerance() {
        let c: HarmonicConfig = serde_json::from_str(r#"{"boundary_expr": "x*y"}"#).unwrap();
        assert_eq!(c.tolerance, DEFAULT_TOLERANCE);
    }
}
