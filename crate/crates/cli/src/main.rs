//! Command-line front end: analyze, catalog, classify, and the three plot
//! modes. Exit codes: 0 success, 2 usage error, 3 engine error.

use branchcuts_core::catalog::{ArccotConvention, Catalog, CutFunction};
use branchcuts_core::engine::json::cutset_to_json_string;
use branchcuts_core::engine::{branch_cuts, Approach, CutSet, CutStatus, EngineConfig};
use branchcuts_core::error::ParseError;
use branchcuts_core::eval::EvalCtx;
use branchcuts_core::expr::{parse, Expr};
use branchcuts_core::filter::{classify, classify_to_json_string, ClassifyConfig, ClassifyOutcome};
use branchcuts_core::viz::{
    mesh_csv, plot2d, plot32d, plot3d, PlotPart, Window, DEFAULT_EDGE_THRESHOLD,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

const GRAMMAR_HELP: &str = "\
expression grammar:
  expr   := '-'? term (('+'|'-') term)*
  term   := factor ('*' factor)*
  factor := base ('^' rational)?
  base   := 'z' | number | 'I' | '(' expr ')' | funcname '(' expr ')'
  number := integer ('/' integer)?
functions: ln exp sqrt arcsin arccos arctan arccot arcsinh arccosh arctanh arccoth
whitespace is ignored; names are case-sensitive; exponents may be rational,
e.g. z^2, z^(1/2), z^(-3/2)";

#[derive(Parser)]
#[command(
    name = "branchcuts",
    version,
    about = "Compute, classify and visualize branch cuts of complex functions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum FormatOpt {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum ApproachOpt {
    #[default]
    Auto,
    Semialg,
    Parametric,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum ArccotOpt {
    #[default]
    Recip,
    As64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum PartOpt {
    Re,
    #[default]
    Im,
}

#[derive(Args, Clone)]
struct EngineOpts {
    /// Calculation approach per multi-valued node
    #[arg(long, value_enum, default_value_t)]
    approach: ApproachOpt,
    /// arccot convention in force
    #[arg(long, value_enum, default_value_t)]
    arccot_convention: ArccotOpt,
}

#[derive(Args, Clone)]
struct WindowOpts {
    /// Plot/probe window as x0,x1,y0,y1
    #[arg(long, default_value = "-2,2,-2,2")]
    window: String,
    /// Grid resolution N or NxM
    #[arg(long, default_value = "200")]
    grid: String,
}

#[derive(Args, Clone)]
struct ProbeOpts {
    /// Probe offset
    #[arg(long, default_value_t = 1e-6)]
    eps: f64,
    /// Jump threshold separating genuine cuts from continuity noise
    #[arg(long, default_value_t = 1e-3)]
    threshold: f64,
    /// Probe points per cut
    #[arg(long, default_value_t = 9)]
    samples: usize,
    /// Seed for the probe-resampling jitter
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Compute branch cuts and print them as text or JSON
    Analyze {
        expr: String,
        #[command(flatten)]
        engine: EngineOpts,
        #[arg(long, value_enum, default_value_t)]
        format: FormatOpt,
        /// Write output to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print defining branch cuts of the supported function symbols
    Catalog {
        symbol: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        arccot_convention: ArccotOpt,
        #[arg(long, value_enum, default_value_t)]
        format: FormatOpt,
    },
    /// Probe cuts numerically and mark each confirmed / possibly-spurious / spurious
    Classify {
        expr: String,
        #[command(flatten)]
        engine: EngineOpts,
        #[command(flatten)]
        window: WindowOpts,
        #[command(flatten)]
        probe: ProbeOpts,
        #[arg(long, value_enum, default_value_t)]
        format: FormatOpt,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the 2d cut diagram as SVG
    Plot2d {
        expr: String,
        #[command(flatten)]
        engine: EngineOpts,
        #[command(flatten)]
        window: WindowOpts,
        #[command(flatten)]
        probe: ProbeOpts,
        #[arg(long, default_value = "plot2d.svg")]
        out: PathBuf,
    },
    /// Evaluate on the window grid and write the surface mesh as CSV
    Plot3d {
        expr: String,
        #[command(flatten)]
        engine: EngineOpts,
        #[command(flatten)]
        window: WindowOpts,
        #[arg(long, value_enum, default_value_t)]
        part: PartOpt,
        #[arg(long, default_value = "plot3d.csv")]
        out: PathBuf,
    },
    /// Render the top-down discontinuity raster as binary PPM
    Plot32d {
        expr: String,
        #[command(flatten)]
        engine: EngineOpts,
        #[command(flatten)]
        window: WindowOpts,
        #[arg(long, value_enum, default_value_t)]
        part: PartOpt,
        /// Edge-overlay threshold (defaults to 0.5)
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long, default_value = "plot32d.ppm")]
        out: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Engine(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                eprintln!("{GRAMMAR_HELP}");
                ExitCode::from(2)
            }
            CliError::Engine(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}

fn parse_expr(src: &str) -> Result<Expr, CliError> {
    parse(src).map_err(|e: ParseError| CliError::Usage(e.to_string()))
}

fn engine_config(opts: &EngineOpts) -> EngineConfig {
    let mut cfg = EngineConfig {
        approach: match opts.approach {
            ApproachOpt::Auto => Approach::Auto,
            ApproachOpt::Semialg => Approach::SemiAlgebraic,
            ApproachOpt::Parametric => Approach::Parametric,
        },
        arccot: arccot(opts.arccot_convention),
        ..EngineConfig::default()
    };
    if let Ok(v) = std::env::var("BRANCHCUTS_MAX_DEGREE") {
        match v.parse::<u32>() {
            Ok(d) if d >= 1 => cfg.max_degree = d,
            _ => {}
        }
    }
    cfg
}

fn arccot(o: ArccotOpt) -> ArccotConvention {
    match o {
        ArccotOpt::Recip => ArccotConvention::Recip,
        ArccotOpt::As64 => ArccotConvention::As64,
    }
}

fn parse_window(opts: &WindowOpts) -> Result<Window, CliError> {
    let parts: Vec<f64> = opts
        .window
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad --window '{}'", opts.window)))?;
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--window needs x0,x1,y0,y1, got '{}'",
            opts.window
        )));
    }
    let (nx, ny) = parse_grid(&opts.grid)?;
    Window::new(parts[0], parts[1], parts[2], parts[3], nx, ny).ok_or_else(|| {
        CliError::Usage(format!(
            "invalid window/grid: need x0<x1, y0<y1 and grid >= 2, got '{}' '{}'",
            opts.window, opts.grid
        ))
    })
}

fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("bad --grid '{s}'; expected N or NxM"));
    if let Some((a, b)) = s.split_once('x') {
        let nx = a.trim().parse::<usize>().map_err(|_| bad())?;
        let ny = b.trim().parse::<usize>().map_err(|_| bad())?;
        Ok((nx, ny))
    } else {
        let n = s.trim().parse::<usize>().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn compute_cuts(e: &Expr, cfg: &EngineConfig) -> Result<CutSet, CliError> {
    branch_cuts(e, cfg).map_err(|err| CliError::Engine(err.to_string()))
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::Engine(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn analyze_text(cs: &CutSet) -> String {
    let mut out = format!("{}\n", cs.source);
    if cs.is_empty() {
        out.push_str("no branch cuts");
    } else {
        let descs: Vec<String> = cs
            .cuts
            .iter()
            .map(|c| match c.status {
                CutStatus::Confirmed => c.description(),
                other => format!("{} [{}]", c.description(), other.label()),
            })
            .collect();
        out.push_str(&descs.join("; "));
    }
    out
}

fn classify_text(outcome: &ClassifyOutcome) -> String {
    let mut out = format!("{}\n", outcome.cuts.source);
    if outcome.cuts.is_empty() {
        out.push_str("no branch cuts\n");
        return out;
    }
    for (cut, v) in outcome.cuts.cuts.iter().zip(&outcome.verdicts) {
        out.push_str(&format!(
            "cut {}: {} [{}]\n",
            v.cut_index + 1,
            cut.description(),
            cut.status.label()
        ));
        if let Some(reason) = &v.reason {
            out.push_str(&format!("  note: {reason}\n"));
        }
        if v.evidence.is_empty() {
            out.push_str("  probes: none\n");
            continue;
        }
        let above = v
            .evidence
            .iter()
            .filter(|r| r.magnitude > v.threshold)
            .count();
        let max = v.evidence.iter().map(|r| r.magnitude).fold(0.0, f64::max);
        let min = v
            .evidence
            .iter()
            .map(|r| r.magnitude)
            .fold(f64::INFINITY, f64::min);
        out.push_str(&format!(
            "  probes: {}, above threshold {:.1e}: {}, jump max {:.6e}, min {:.6e}\n",
            v.evidence.len(),
            v.threshold,
            above,
            max,
            min
        ));
        for r in &v.evidence {
            out.push_str(&format!(
                "    at ({:.6},{:.6}) eps {:.1e}: |jump| {:.6e} ({})\n",
                r.point.re,
                r.point.im,
                r.eps,
                r.magnitude,
                r.component.label()
            ));
        }
    }
    out
}

fn catalog_text(cat: &Catalog, entries: &[CutFunction]) -> String {
    let mut out = String::new();
    for &f in entries {
        let d = cat.defining_cut(f);
        if d.is_empty() {
            out.push_str(&format!("{}: no branch cuts\n", f.name()));
            continue;
        }
        let region: Vec<String> = d
            .region
            .iter()
            .map(|r| {
                let axis = match r.axis {
                    branchcuts_core::catalog::CutAxis::Real => "real axis",
                    branchcuts_core::catalog::CutAxis::Imag => "imaginary axis",
                };
                format!("{}, w in {}", axis, r.interval)
            })
            .collect();
        let param: Vec<String> = d
            .parametric
            .iter()
            .map(|p| format!("w = {}, a in {}", p.map.to_string_with_var("a"), p.range))
            .collect();
        out.push_str(&format!(
            "{}: {}; parametric: {}\n",
            f.name(),
            region.join(" and "),
            param.join(" and ")
        ));
    }
    out
}

fn catalog_json(cat: &Catalog, entries: &[CutFunction]) -> String {
    use serde_json::json;
    let items: Vec<serde_json::Value> = entries
        .iter()
        .map(|&f| {
            let d = cat.defining_cut(f);
            json!({
                "symbol": f.name(),
                "region": d.region.iter().map(|r| json!({
                    "axis": match r.axis {
                        branchcuts_core::catalog::CutAxis::Real => "real",
                        branchcuts_core::catalog::CutAxis::Imag => "imag",
                    },
                    "interval": [r.interval.lo.to_string(), r.interval.hi.to_string()],
                })).collect::<Vec<_>>(),
                "parametric": d.parametric.iter().map(|p| json!({
                    "map": p.map.to_string_with_var("a"),
                    "range": [p.range.lo.to_string(), p.range.hi.to_string()],
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::to_string_pretty(&items).unwrap()
}

fn classify_config(probe: &ProbeOpts, window: Window, engine: &EngineOpts) -> ClassifyConfig {
    ClassifyConfig {
        eps: probe.eps,
        threshold: probe.threshold,
        samples: probe.samples,
        window,
        seed: probe.seed,
        arccot: arccot(engine.arccot_convention),
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Analyze {
            expr,
            engine,
            format,
            out,
        } => {
            let e = parse_expr(&expr)?;
            let cs = compute_cuts(&e, &engine_config(&engine))?;
            let text = match format {
                FormatOpt::Text => analyze_text(&cs),
                FormatOpt::Json => cutset_to_json_string(&cs),
            };
            emit(text, &out)
        }
        Command::Catalog {
            symbol,
            arccot_convention,
            format,
        } => {
            let cat = Catalog::new(arccot(arccot_convention));
            let entries: Vec<CutFunction> = match symbol {
                Some(name) => {
                    let f = CutFunction::from_name(&name).ok_or_else(|| {
                        CliError::Usage(format!(
                            "unknown function '{name}'; known: {}",
                            CutFunction::ALL
                                .iter()
                                .map(|f| f.name())
                                .collect::<Vec<_>>()
                                .join(" ")
                        ))
                    })?;
                    vec![f]
                }
                None => CutFunction::ALL.to_vec(),
            };
            let text = match format {
                FormatOpt::Text => catalog_text(&cat, &entries),
                FormatOpt::Json => catalog_json(&cat, &entries),
            };
            print!("{text}");
            if matches!(format, FormatOpt::Json) {
                println!();
            }
            Ok(())
        }
        Command::Classify {
            expr,
            engine,
            window,
            probe,
            format,
            out,
        } => {
            let e = parse_expr(&expr)?;
            let cs = compute_cuts(&e, &engine_config(&engine))?;
            let w = parse_window(&window)?;
            let outcome = classify(&e, &cs, &classify_config(&probe, w, &engine));
            let text = match format {
                FormatOpt::Text => classify_text(&outcome),
                FormatOpt::Json => classify_to_json_string(&outcome),
            };
            emit(text, &out)
        }
        Command::Plot2d {
            expr,
            engine,
            window,
            probe,
            out,
        } => {
            let e = parse_expr(&expr)?;
            let cs = compute_cuts(&e, &engine_config(&engine))?;
            let w = parse_window(&window)?;
            let outcome = classify(&e, &cs, &classify_config(&probe, w.clone(), &engine));
            let svg = plot2d(&outcome.cuts, &w);
            std::fs::write(&out, svg).map_err(|err| {
                CliError::Engine(format!("cannot write {}: {err}", out.display()))
            })?;
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Plot3d {
            expr,
            engine,
            window,
            part,
            out,
        } => {
            let e = parse_expr(&expr)?;
            let w = parse_window(&window)?;
            let ctx = EvalCtx::new(arccot(engine.arccot_convention));
            let grid = plot3d(&e, &w, &ctx);
            let _ = part; // the mesh carries both parts
            std::fs::write(&out, mesh_csv(&grid)).map_err(|err| {
                CliError::Engine(format!("cannot write {}: {err}", out.display()))
            })?;
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::Plot32d {
            expr,
            engine,
            window,
            part,
            threshold,
            out,
        } => {
            let e = parse_expr(&expr)?;
            let w = parse_window(&window)?;
            let ctx = EvalCtx::new(arccot(engine.arccot_convention));
            let p = match part {
                PartOpt::Re => PlotPart::Re,
                PartOpt::Im => PlotPart::Im,
            };
            let bytes = plot32d(&e, &w, p, threshold.unwrap_or(DEFAULT_EDGE_THRESHOLD), &ctx);
            std::fs::write(&out, bytes).map_err(|err| {
                CliError::Engine(format!("cannot write {}: {err}", out.display()))
            })?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}
