//! The `tri` command line. [`run`] is the whole program; `main` only wires it
//! to the process streams.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use tri_core::ground::DEFAULT_VERTEX_CEILING;
use tri_core::oracle::{brute_force, ORACLE_MAX_VERTICES};
use tri_core::report::{ising_report, support_report, to_pretty};
use tri_core::solve::DEFAULT_REPRESENTATIVE_CAP;
use tri_core::*;

#[derive(Parser)]
#[command(
    name = "tri",
    version,
    about = "Antiferromagnetic Ising groundstates on surface triangulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tri/1 file and print its shape.
    Validate {
        file: PathBuf,
        /// Also require every edge to lie in a non-facial 3-cycle.
        #[arg(long)]
        minimality: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Count satisfying states exactly.
    Solve {
        file: PathBuf,
        /// Pin a vertex, `v:+` or `v:-`. Repeatable.
        #[arg(long = "pin", value_name = "V:SIGN")]
        pins: Vec<String>,
        /// Require an edge to be monochromatic. Repeatable.
        #[arg(long = "mono", value_name = "U,V")]
        mono: Vec<String>,
        /// Require an edge not to be monochromatic. Repeatable.
        #[arg(long = "nonmono", value_name = "U,V")]
        nonmono: Vec<String>,
        /// Print the representative states.
        #[arg(long)]
        list: bool,
        /// Cross-check against plain enumeration of all states.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_REPRESENTATIVE_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Minimum energy and its exact degeneracy.
    Groundstate {
        file: PathBuf,
        #[arg(long, default_value = "auto")]
        method: Method,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = DEFAULT_REPRESENTATIVE_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Edges monochromatic in every satisfying state.
    SeriousEdges {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Write the stack triangulation with n apexes.
    Delta {
        n: usize,
        /// Write the disk with its outer boundary as a hole instead of the
        /// plane triangulation.
        #[arg(long)]
        open: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Remove faces, turning them into holes.
    Puncture {
        file: PathBuf,
        /// Face indices into the sorted face list.
        #[arg(long, value_delimiter = ',', required = true)]
        faces: Vec<usize>,
        /// Require the punctured complex to keep a unique satisfying pair.
        #[arg(long)]
        certify: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Glue B onto A along a hole of each.
    Glue {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "A,B,C")]
        cycle_a: String,
        #[arg(long, value_name = "A,B,C")]
        cycle_b: String,
        #[arg(long, value_name = "U,V")]
        edge_a: String,
        #[arg(long, value_name = "U,V")]
        edge_b: String,
        #[command(flatten)]
        out: Output,
    },
    /// Closed torus triangulation with a unique satisfying pair.
    BuildTorus {
        #[arg(long, default_value_t = 1)]
        min_vertices: usize,
        /// Supporting punctured torus to start from (default: bundled connector).
        #[arg(long)]
        base: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Closed genus-G triangulation with a unique satisfying pair.
    BuildGenus {
        genus: usize,
        #[arg(long, default_value_t = 1)]
        min_vertices: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Search a directory of closed tori for removable face sets.
    ScanCatalog {
        dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_REMOVAL)]
        max_remove: usize,
        #[arg(long)]
        minimality: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Export the dual (or primal) graph.
    Dual {
        file: PathBuf,
        #[arg(long, required = true)]
        dot: bool,
        /// Export the primal graph instead.
        #[arg(long)]
        primal: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Output file (default: standard output).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl Output {
    fn jobs(&self) -> usize {
        self.jobs.max(1)
    }

    /// Write `text` to the output file, or hand it back for standard output.
    fn emit(&self, text: String) -> Result<String> {
        match &self.output {
            Some(p) => {
                fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
                Ok(String::new())
            }
            None => Ok(text),
        }
    }

    fn sidecar(&self, report: &Value) -> Result<()> {
        if let Some(p) = &self.output {
            let mut name = p.clone().into_os_string();
            name.push(".report.json");
            let path = PathBuf::from(name);
            fs::write(&path, to_pretty(report))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn vertex_ceiling() -> Result<usize> {
    match std::env::var("TRI_VERTEX_CEILING") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| anyhow!("TRI_VERTEX_CEILING must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_VERTEX_CEILING),
    }
}

fn load(path: &Path) -> Result<SurfaceComplex> {
    Ok(read_tri(path)?)
}

fn vertex(c: &SurfaceComplex, name: &str) -> Result<Vertex> {
    c.resolve_vertex(name.trim())
        .ok_or_else(|| anyhow!("unknown vertex `{name}`"))
}

fn vertices<const N: usize>(c: &SurfaceComplex, text: &str) -> Result<[Vertex; N]> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != N {
        bail!("expected {N} comma-separated vertices, got `{text}`");
    }
    let mut out = [0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = vertex(c, p)?;
    }
    Ok(out)
}

fn edge(c: &SurfaceComplex, text: &str) -> Result<Edge> {
    let [a, b] = vertices::<2>(c, text)?;
    Ok(Edge::new(a, b))
}

fn cycle(c: &SurfaceComplex, text: &str) -> Result<Triple> {
    let [a, b, x] = vertices::<3>(c, text)?;
    Ok(Triple::new(a, b, x))
}

fn pin(c: &SurfaceComplex, text: &str) -> Result<(Vertex, Spin)> {
    let (v, s) = text
        .rsplit_once(':')
        .ok_or_else(|| anyhow!("expected `vertex:+` or `vertex:-`, got `{text}`"))?;
    let spin: Spin = s
        .parse()
        .map_err(|_| anyhow!("bad spin `{s}` in `{text}`"))?;
    Ok((vertex(c, v)?, spin))
}

fn edge_list(es: &[Edge]) -> String {
    es.iter().map(|e| format!(" {e}")).collect()
}

fn validate(file: &Path, minimality: bool, out: &Output) -> Result<String> {
    let c = load(file)?;
    let genus = euler_genus(&c)?;
    let mut text = format!(
        "vertices: {}\nedges: {}\nfaces: {}\nholes: {}\ngenus: {genus}\nclosed: {}\n",
        c.vertex_count(),
        c.edges().len(),
        c.faces().len(),
        c.holes().len(),
        c.is_closed()
    );
    if minimality {
        if !c.every_edge_in_nonfacial_triangle() {
            bail!("some edge lies in no non-facial 3-cycle");
        }
        text += "minimality check: passed\n";
    }
    out.emit(text)
}

#[allow(clippy::too_many_arguments)]
fn solve(
    file: &Path,
    pins: &[String],
    mono: &[String],
    nonmono: &[String],
    list: bool,
    oracle: bool,
    cap: usize,
    out: &Output,
) -> Result<String> {
    let c = load(file)?;
    let mut k = Constraint::none();
    for p in pins {
        let (v, s) = pin(&c, p)?;
        k = k.pin(v, s);
    }
    for e in mono {
        k = k.mono(edge(&c, e)?);
    }
    for e in nonmono {
        k = k.non_mono(edge(&c, e)?);
    }
    let r = enumerate_satisfying(
        &c,
        &k,
        &SolveOptions {
            representative_cap: cap,
            jobs: out.jobs(),
        },
    )?;
    let mut text = format!("satisfying_count: {}\n", r.satisfying_count);
    if let Some(p) = r.pair_count {
        text += &format!("pair_count: {p}\n");
    }
    match &r.serious_edges {
        Some(es) => text += &format!("serious_edges:{}\n", edge_list(es)),
        None => text += "serious_edges: undefined\n",
    }
    let mut extra = Map::new();
    if oracle {
        let o = brute_force(&c, &k).ok_or_else(|| {
            anyhow!(
                "--oracle needs at most {ORACLE_MAX_VERTICES} vertices, got {}",
                c.vertex_count()
            )
        })?;
        text += &format!("oracle_satisfying_count: {}\n", o.satisfying_count);
        extra.insert("oracle_satisfying_count".into(), json!(o.satisfying_count));
        if o.satisfying_count != r.satisfying_count {
            bail!(
                "solver count {} disagrees with oracle count {}",
                r.satisfying_count,
                o.satisfying_count
            );
        }
    }
    if list {
        for s in &r.representatives {
            text += &format!("{s}\n");
        }
        if r.truncated {
            text += "...\n";
        }
    }
    out.sidecar(&ising_report(&c, Some(&r), None, extra))?;
    out.emit(text)
}

fn groundstate(
    file: &Path,
    method: Method,
    oracle: bool,
    list: bool,
    cap: usize,
    out: &Output,
) -> Result<String> {
    let c = load(file)?;
    let g = groundstates(
        &c,
        method,
        &GroundOptions {
            vertex_ceiling: vertex_ceiling()?,
            representative_cap: cap,
            jobs: out.jobs(),
        },
    )?;
    let mut text = format!(
        "min_energy: {}\ndegeneracy: {}\nmethod: {}\n",
        g.min_energy,
        g.degeneracy,
        tri_core::report::method_name(g.method)
    );
    let mut extra = Map::new();
    if oracle {
        let o = brute_force(&c, &Constraint::none()).ok_or_else(|| {
            anyhow!(
                "--oracle needs at most {ORACLE_MAX_VERTICES} vertices, got {}",
                c.vertex_count()
            )
        })?;
        text += &format!(
            "oracle_min_energy: {}\noracle_degeneracy: {}\n",
            o.min_energy, o.degeneracy
        );
        extra.insert("oracle_min_energy".into(), json!(o.min_energy));
        extra.insert("oracle_degeneracy".into(), json!(o.degeneracy));
        if (o.min_energy, o.degeneracy) != (g.min_energy, g.degeneracy) {
            bail!("groundstate search disagrees with the oracle");
        }
    }
    if list {
        for s in &g.representatives {
            text += &format!("{s}\n");
        }
        if g.truncated {
            text += "...\n";
        }
    }
    out.sidecar(&ising_report(&c, None, Some(&g), extra))?;
    out.emit(text)
}

/// The isingreport for a pipeline product: exact count, plus the exhaustive
/// groundstate when the complex is small enough.
fn pipeline_report(c: &SurfaceComplex, extra: Map<String, Value>, jobs: usize) -> Result<Value> {
    let r = enumerate_satisfying(
        c,
        &Constraint::none(),
        &SolveOptions {
            representative_cap: DEFAULT_REPRESENTATIVE_CAP,
            jobs,
        },
    )?;
    let ceiling = vertex_ceiling()?;
    let g = if c.vertex_count() <= ceiling {
        Some(groundstates(
            c,
            Method::Exhaustive,
            &GroundOptions {
                vertex_ceiling: ceiling,
                representative_cap: DEFAULT_REPRESENTATIVE_CAP,
                jobs,
            },
        )?)
    } else {
        None
    };
    Ok(ising_report(c, Some(&r), g.as_ref(), extra))
}

fn emit_complex(
    c: &SurfaceComplex,
    out: &Output,
    extra: Map<String, Value>,
    report: bool,
) -> Result<String> {
    if report && out.output.is_some() {
        out.sidecar(&pipeline_report(c, extra, out.jobs())?)?;
    }
    out.emit(to_tri_string(c))
}

fn dot(c: &SurfaceComplex, primal: bool) -> Result<String> {
    let mut s = String::new();
    if primal {
        s += "graph primal {\n";
        let mut names = vec![String::new(); c.vertex_count()];
        for (label, &v) in c.labels() {
            names[v] = label.clone();
        }
        for (v, name) in names.iter().enumerate() {
            if name.is_empty() {
                s += &format!("  {v};\n");
            } else {
                s += &format!("  {v} [label=\"{name}\"];\n");
            }
        }
        for e in c.edges() {
            let (a, b) = e.ends();
            s += &format!("  {a} -- {b};\n");
        }
    } else {
        let d = dual_graph(c)?;
        s += "graph dual {\n";
        for (i, f) in c.faces().iter().enumerate() {
            s += &format!("  f{i} [label=\"{f}\"];\n");
        }
        for (id, &(x, y)) in d.edges.iter().enumerate() {
            s += &format!("  f{x} -- f{y} [label=\"{}\"];\n", c.edges()[id]);
        }
    }
    s += "}\n";
    Ok(s)
}

fn scan(dir: &Path, max_remove: usize, minimality: bool, out: &Output) -> Result<String> {
    if max_remove < 1 {
        bail!("--max-remove must be at least 1");
    }
    let entries = load_catalog(
        dir,
        &LoadOptions {
            check_minimality: minimality,
        },
    )?;
    let reports = rayon::ThreadPoolBuilder::new()
        .num_threads(out.jobs())
        .build()?
        .install(|| scan_catalog(&entries, max_remove));
    let mut table = format!(
        "{:<24} {:>10} {:>10} {:>10}\n",
        "name", "base", "removable", "connector"
    );
    for r in &reports {
        table += &format!(
            "{:<24} {:>10} {:>10} {:>10}\n",
            r.name,
            r.base_satisfying_count,
            r.removable_sets.len(),
            if r.is_connector() { "yes" } else { "no" }
        );
    }
    let supporting: Vec<&str> = reports
        .iter()
        .filter(|r| r.supporting)
        .map(|r| r.name.as_str())
        .collect();
    table += &format!("supporting: {} of {}", supporting.len(), reports.len());
    if !supporting.is_empty() {
        table += &format!(" ({})", supporting.join(", "));
    }
    table += "\n";
    let doc = to_pretty(&support_report(&reports));
    if let Some(p) = &out.output {
        fs::write(p, doc).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(table)
}

fn dispatch(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Validate {
            file,
            minimality,
            out,
        } => validate(&file, minimality, &out),
        Command::Solve {
            file,
            pins,
            mono,
            nonmono,
            list,
            oracle,
            cap,
            out,
        } => solve(&file, &pins, &mono, &nonmono, list, oracle, cap, &out),
        Command::Groundstate {
            file,
            method,
            oracle,
            list,
            cap,
            out,
        } => groundstate(&file, method, oracle, list, cap, &out),
        Command::SeriousEdges { file, out } => {
            let c = load(&file)?;
            let r = enumerate_satisfying(
                &c,
                &Constraint::none(),
                &SolveOptions {
                    representative_cap: 0,
                    jobs: out.jobs(),
                },
            )?;
            let es = r.serious_edges.ok_or(IsingError::NoSatisfyingState)?;
            let text: String = es.iter().map(|e| format!("{e}\n")).collect();
            out.emit(text)
        }
        Command::Delta { n, open, out } => {
            let d = delta(n)?;
            let c = if open { d.complex().clone() } else { d.plane() };
            out.emit(to_tri_string(&c))
        }
        Command::Puncture {
            file,
            faces,
            certify,
            out,
        } => {
            let c = load(&file)?;
            let p = if certify {
                certify_supporting(&c, &faces)?.complex
            } else {
                remove_faces(&c, &faces)?
            };
            out.emit(to_tri_string(&p))
        }
        Command::Glue {
            a,
            b,
            cycle_a,
            cycle_b,
            edge_a,
            edge_b,
            out,
        } => {
            let (ca, cb) = (load(&a)?, load(&b)?);
            let spec = GluingSpec {
                cycle_a: cycle(&ca, &cycle_a)?,
                cycle_b: cycle(&cb, &cycle_b)?,
                edge_a: edge(&ca, &edge_a)?,
                edge_b: edge(&cb, &edge_b)?,
            };
            let g = glue(&ca, &cb, &spec)?;
            let mut extra = Map::new();
            extra.insert("glue_crossed".into(), json!(g.crossed));
            extra.insert("glue_alternative_valid".into(), json!(g.alternative_valid));
            emit_complex(&g.complex, &out, extra, true)
        }
        Command::BuildTorus {
            min_vertices,
            base,
            out,
        } => {
            let c = match base {
                Some(p) => build_torus_from(&certify_punctured(load(&p)?)?, min_vertices)?,
                None => build_torus(min_vertices)?,
            };
            let mut extra = Map::new();
            extra.insert("min_vertices".into(), json!(min_vertices));
            emit_complex(&c, &out, extra, true)
        }
        Command::BuildGenus {
            genus,
            min_vertices,
            out,
        } => {
            let c = build_genus(genus, min_vertices)?;
            let mut extra = Map::new();
            extra.insert("min_vertices".into(), json!(min_vertices));
            extra.insert("requested_genus".into(), json!(genus));
            emit_complex(&c, &out, extra, true)
        }
        Command::ScanCatalog {
            dir,
            max_remove,
            minimality,
            out,
        } => scan(&dir, max_remove, minimality, &out),
        Command::Dual {
            file,
            dot: _,
            primal,
            out,
        } => out.emit(dot(&load(&file)?, primal)?),
    }
}

/// Run the command line `args` (program name first). Standard output goes to
/// `stdout`, diagnostics to `stderr`; the return value is the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code() as u8;
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli) {
        Ok(text) => match stdout.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                1
            }
        },
        Err(e) => {
            // Library errors already embed their source in the message.
            let mut msg = e.to_string();
            for cause in e.chain().skip(1) {
                let text = cause.to_string();
                if !msg.contains(&text) {
                    msg = format!("{msg}: {text}");
                }
            }
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}
