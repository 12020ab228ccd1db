//! Subcommand definitions and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{self, BenchConfig};
use crate::certjson::certificate;
use crate::clock::WallClock;
use crate::error::{CliError, Result};
use crate::netfile::{self, NetFile};
use crate::oracle_check;
use crate::plot;
use invertcert_core::dynamics::{
    bilipschitz_estimate, generate_dataset, history_complete, j0_grid, vdp_flow, BrusselatorEuler, Completion,
    HistoryQuery, NetMap, PlanarMap, Rect, Region, ScalarQuadraticEuler,
};
use invertcert_core::encoder::{encode_problem1, encode_problem2, encode_problem3};
use invertcert_core::network::{
    contractive_residual, embed_parameter, prune_magnitude, random_network, ReluMlp,
};
use invertcert_core::{CertifyOptions, Certifier, EncodeOptions, InputBox, Norm, SolveOptions};

#[derive(Debug, Parser)]
#[command(name = "invertcert", version, about = "Certified local invertibility of ReLU networks")]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Accepted for compatibility; the solver is single-threaded.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormArg {
    Linf,
    L1,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Linf => Norm::LInf,
            NormArg::L1 => Norm::L1,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum System {
    Brusselator,
    Scalar,
    Vdp,
    Net,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlotMode {
    Scatter,
    Line,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Branch-and-bound node limit per MILP.
    #[arg(long, default_value_t = 200_000)]
    pub node_limit: usize,
    /// Wall-clock limit per MILP in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
}

impl SolveArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions { node_limit: self.node_limit, time_limit: self.time_limit, ..SolveOptions::default() }
    }
}

#[derive(Debug, Args)]
pub struct CertArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub center: Vec<f64>,
    #[arg(long, default_value_t = 10.0)]
    pub rmax: f64,
    /// Bisection tolerance on the radius.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// Optima at or below this count as "no collision".
    #[arg(long, default_value_t = 1e-4)]
    pub eps_inv: f64,
    #[arg(long, value_enum, default_value_t = NormArg::Linf)]
    pub norm: NormArg,
    /// Share activation binaries between the two input copies.
    #[arg(long)]
    pub shared_binaries: bool,
    /// Stop each probe at the first collision instead of solving to
    /// optimality; logged p* of colliding probes become lower bounds.
    #[arg(long)]
    pub early_stop: bool,
    #[command(flatten)]
    pub solve: SolveArgs,
}

impl CertArgs {
    fn options(&self) -> CertifyOptions {
        CertifyOptions {
            r_max: self.rmax,
            eps_r: self.eps,
            eps_inv: self.eps_inv,
            norm: self.norm.into(),
            solve: self.solve.options(),
            encode: EncodeOptions { shared_binaries: self.shared_binaries },
            early_stop: self.early_stop,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Random MLP, or a contractive residual net with --residual.
    GenNet {
        /// Layer widths, input first (MLP only).
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        /// Weight scale; defaults to 1/sqrt(fan-in).
        #[arg(long)]
        scale: Option<f64>,
        #[arg(long)]
        residual: bool,
        /// State dimension of a residual net.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Hidden widths of each residual block.
        #[arg(long, value_delimiter = ',', default_value = "8")]
        hidden: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        blocks: usize,
        /// Lipschitz bound of each residual branch.
        #[arg(long, default_value_t = 0.5)]
        contraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Magnitude pruning of hidden-layer weights.
    Prune {
        #[arg(long)]
        net: PathBuf,
        #[arg(long)]
        sparsity: f64,
        /// Breaks ties between equal magnitudes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Residual net to an equivalent plain MLP.
    Flatten {
        #[arg(long)]
        net: PathBuf,
    },
    /// Fold a fixed parameter input into the biases.
    EmbedParam {
        #[arg(long)]
        net: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
    },
    /// Largest radius of local invertibility.
    Certify {
        #[arg(long)]
        net: PathBuf,
        #[command(flatten)]
        cert: CertArgs,
    },
    /// Largest radius of pseudo local invertibility.
    PseudoCertify {
        #[arg(long)]
        net: PathBuf,
        #[command(flatten)]
        cert: CertArgs,
    },
    /// Mappability radii r_AB and r_BA.
    MapCert {
        #[arg(long)]
        net_a: PathBuf,
        #[arg(long)]
        net_b: PathBuf,
        #[command(flatten)]
        cert: CertArgs,
    },
    /// One forward-Euler step.
    DynStep {
        #[command(flatten)]
        sys: DynArgs,
    },
    /// All real preimages of a point under one step.
    DynPreimage {
        #[command(flatten)]
        sys: DynArgs,
    },
    /// Sampled (input, image) pairs as CSV.
    DynData {
        #[arg(long, value_enum, default_value_t = System::Brusselator)]
        system: System,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, default_value_t = 0.15)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Flow duration.
        #[arg(long, default_value_t = 0.2)]
        t: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// x0,x1,y0,y1
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,2,-2,2")]
        region: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Jacobian determinant grid and sign-change cells.
    J0Grid {
        #[arg(long, value_enum, default_value_t = System::Brusselator)]
        system: System,
        /// Network for --system net.
        #[arg(long)]
        net: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, default_value_t = 0.15)]
        tau: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,3,0,4")]
        region: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        nx: usize,
        #[arg(long, default_value_t = 100)]
        ny: usize,
        /// Flagged-cell JSON; defaults to <out>.flagged.json when --out is set.
        #[arg(long)]
        flagged: Option<PathBuf>,
    },
    /// Complete a partially observed Brusselator step.
    History {
        #[arg(long)]
        case: u8,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1..)]
        given: Vec<f64>,
    },
    /// Sampled bi-Lipschitz estimate.
    Bilip {
        #[arg(long, value_enum, default_value_t = System::Brusselator)]
        system: System,
        #[arg(long)]
        net: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[arg(long, default_value_t = 0.15)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long, default_value_t = 0.2)]
        t: f64,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-2,2,-2,2")]
        region: Vec<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// MILP optimum against the brute-force oracles.
    OracleCheck {
        /// single-relu, relu-141, pseudo-141, map-262, identity or all.
        #[arg(long, default_value = "all")]
        instance: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Runtime sweep over input width, hidden width and radius.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        n0: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        n1: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1")]
        r: Vec<f64>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Seconds per MILP solve.
        #[arg(long, default_value_t = 10.0)]
        time_limit: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write one encoded problem in CPLEX LP format.
    DumpLp {
        #[arg(long)]
        net: PathBuf,
        /// Second network (problem 3).
        #[arg(long)]
        net_b: Option<PathBuf>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        problem: u8,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        center: Vec<f64>,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value_t = NormArg::Linf)]
        norm: NormArg,
    },
    /// CSV columns to an SVG scatter or line plot.
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value_t = PlotMode::Scatter)]
        mode: PlotMode,
    },
}

#[derive(Debug, Args)]
pub struct DynArgs {
    /// brusselator or scalar.
    #[arg(long, value_enum, default_value_t = System::Brusselator)]
    pub system: System,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    pub b: f64,
    /// Constant term of the scalar quadratic.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.15)]
    pub tau: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub point: Vec<f64>,
}

type VecMap<'a> = Box<dyn Fn(&[f64]) -> Vec<f64> + 'a>;

/// What a command produced, plus a domain failure to report after writing it.
pub struct Outcome {
    pub text: String,
    pub failure: Option<CliError>,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Self { text, failure: None }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

fn read_mlp(path: &Path) -> Result<ReluMlp> {
    Ok(netfile::read(path)?.into_mlp())
}

fn rect(v: &[f64]) -> Result<Rect> {
    match v {
        [x0, x1, y0, y1] if x0 < x1 && y0 < y1 => Ok(Rect::new(*x0, *x1, *y0, *y1)),
        _ => Err(CliError::Usage(format!("--region needs x0,x1,y0,y1 with x0 < x1 and y0 < y1, got {v:?}"))),
    }
}

fn region(v: &[f64]) -> Result<Region> {
    let r = rect(v)?;
    Ok(Region::new(vec![r.x0, r.y0], vec![r.x1, r.y1])?)
}

fn pair(v: &[f64], what: &str) -> Result<[f64; 2]> {
    match v {
        [x, y] => Ok([*x, *y]),
        _ => Err(CliError::Usage(format!("{what} needs two values, got {}", v.len()))),
    }
}

/// Runs the parsed command and returns its output text.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let clock = WallClock::new();
    match &cli.command {
        Command::GenNet { dims, scale, residual, dim, hidden, blocks, contraction, seed } => {
            let file = if *residual {
                NetFile::Residual(contractive_residual(*dim, hidden, *blocks, *contraction, *seed)?)
            } else {
                if dims.len() < 2 {
                    return Err(CliError::Usage("--dims needs at least two widths".into()));
                }
                NetFile::Mlp(random_network(dims, *scale, *seed)?)
            };
            Ok(netfile::save(&file).into())
        }
        Command::Prune { net, sparsity, seed } => {
            let pruned = prune_magnitude(&read_mlp(net)?, *sparsity, *seed)?;
            Ok(netfile::save(&NetFile::Mlp(pruned)).into())
        }
        Command::Flatten { net } => Ok(netfile::save(&NetFile::Mlp(read_mlp(net)?)).into()),
        Command::EmbedParam { net, p } => {
            let embedded = embed_parameter(&read_mlp(net)?, *p)?;
            Ok(netfile::save(&NetFile::Mlp(embedded)).into())
        }
        Command::Certify { net, cert } => {
            let net = read_mlp(net)?;
            let c = Certifier::with_clock(cert.options(), &clock).largest_invertible_radius(&net, &cert.center)?;
            Ok(pretty(&certificate(&c)).into())
        }
        Command::PseudoCertify { net, cert } => {
            let net = read_mlp(net)?;
            let c = Certifier::with_clock(cert.options(), &clock).largest_pseudo_radius(&net, &cert.center)?;
            Ok(pretty(&certificate(&c)).into())
        }
        Command::MapCert { net_a, net_b, cert } => {
            let (a, b) = (read_mlp(net_a)?, read_mlp(net_b)?);
            let (ab, ba) = Certifier::with_clock(cert.options(), &clock).mappability_radii(&a, &b, &cert.center)?;
            Ok(pretty(&json!([certificate(&ab), certificate(&ba)])).into())
        }
        Command::DynStep { sys } => dyn_step(sys),
        Command::DynPreimage { sys } => dyn_preimage(sys),
        Command::DynData { system, a, b, tau, mu, t, steps, region: reg, count, seed } => {
            let region = region(reg)?;
            let map: VecMap<'static> = match system {
                System::Brusselator => {
                    let m = BrusselatorEuler::new(*a, *b, *tau);
                    Box::new(move |p| {
                        let (u, v) = m.step(p[0], p[1]);
                        vec![u, v]
                    })
                }
                System::Vdp => {
                    // validate once so the sampling closure cannot fail
                    vdp_flow([0.0, 0.0], *mu, *t, *steps)?;
                    let (mu, t, steps) = (*mu, *t, *steps);
                    Box::new(move |p| vdp_flow([p[0], p[1]], mu, t, steps).expect("validated").to_vec())
                }
                _ => return Err(CliError::Usage("dyn-data supports brusselator and vdp".into())),
            };
            let data = generate_dataset(&*map, &region, *count, *seed);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x1", "y1", "x2", "y2"])?;
            for (x, y) in &data {
                w.write_record([x[0], x[1], y[0], y[1]].map(|v| format!("{v:?}")))?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8").into())
        }
        Command::J0Grid { system, net, a, b, tau, region: reg, nx, ny, flagged } => {
            let rect = rect(reg)?;
            let loaded;
            let brus = BrusselatorEuler::new(*a, *b, *tau);
            let netmap;
            let map: &dyn PlanarMap = match system {
                System::Brusselator => &brus,
                System::Net => {
                    let path = net.as_ref().ok_or_else(|| CliError::Usage("--system net needs --net".into()))?;
                    loaded = read_mlp(path)?;
                    netmap = NetMap::new(&loaded)?;
                    &netmap
                }
                _ => return Err(CliError::Usage("j0-grid supports brusselator and net".into())),
            };
            let grid = j0_grid(map, rect, *nx, *ny)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x", "y", "det"])?;
            for (j, y) in grid.ys.iter().enumerate() {
                for (i, x) in grid.xs.iter().enumerate() {
                    w.write_record([*x, *y, grid.det_at(i, j)].map(|v| format!("{v:?}")))?;
                }
            }
            let cells: Vec<Value> = grid
                .flagged
                .iter()
                .map(|&(i, j)| {
                    json!({"i": i, "j": j, "x0": grid.xs[i], "x1": grid.xs[i + 1], "y0": grid.ys[j], "y1": grid.ys[j + 1]})
                })
                .collect();
            let target = flagged.clone().or_else(|| {
                cli.out.as_ref().map(|o| {
                    let mut s = o.clone().into_os_string();
                    s.push(".flagged.json");
                    PathBuf::from(s)
                })
            });
            if let Some(path) = target {
                std::fs::write(path, pretty(&json!({"count": cells.len(), "cells": cells})))?;
            }
            Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8").into())
        }
        Command::History { case, a, b, given } => {
            let given: [f64; 3] = given
                .as_slice()
                .try_into()
                .map_err(|_| CliError::Usage(format!("--given needs three values, got {}", given.len())))?;
            let out = history_complete(&HistoryQuery { case: *case, given, a: *a, b: *b })?;
            let rows: Vec<Value> = out
                .iter()
                .map(|c| match c {
                    Completion::Real(s) => json!({
                        "kind": "real",
                        "x_n": s.xn, "y_n": s.yn, "x_n1": s.xn1, "y_n1": s.yn1, "tau": s.tau,
                        "residual": num(s.residual(*a, *b)),
                    }),
                    Completion::Complex { unknowns, values } => {
                        let mut m = serde_json::Map::new();
                        m.insert("kind".into(), json!("complex"));
                        for (v, z) in unknowns.iter().zip(values) {
                            m.insert(v.as_str().into(), json!([z.re, z.im]));
                        }
                        Value::Object(m)
                    }
                })
                .collect();
            Ok(pretty(&json!(rows)).into())
        }
        Command::Bilip { system, net, a, b, tau, mu, t, steps, region: reg, samples, seed } => {
            let region = region(reg)?;
            let loaded;
            let map: VecMap<'_> = match system {
                System::Brusselator => {
                    let m = BrusselatorEuler::new(*a, *b, *tau);
                    Box::new(move |p| {
                        let (u, v) = m.step(p[0], p[1]);
                        vec![u, v]
                    })
                }
                System::Vdp => {
                    vdp_flow([0.0, 0.0], *mu, *t, *steps)?;
                    let (mu, t, steps) = (*mu, *t, *steps);
                    Box::new(move |p| vdp_flow([p[0], p[1]], mu, t, steps).expect("validated").to_vec())
                }
                System::Net => {
                    let path = net.as_ref().ok_or_else(|| CliError::Usage("--system net needs --net".into()))?;
                    loaded = read_mlp(path)?;
                    if loaded.input_dim() != 2 {
                        return Err(CliError::Usage("bilip needs a network with two inputs".into()));
                    }
                    Box::new(|p| loaded.forward(p).expect("checked dimensions"))
                }
                System::Scalar => return Err(CliError::Usage("bilip supports brusselator, vdp and net".into())),
            };
            let (hi, lo) = bilipschitz_estimate(&*map, &region, *samples, *seed)?;
            let constant = if lo > 0.0 { hi.max(1.0 / lo) } else { f64::INFINITY };
            Ok(pretty(&json!({"L_hat": num(hi), "Lprime_hat": num(lo), "bilipschitz": num(constant)})).into())
        }
        Command::OracleCheck { instance, seed, solve } => {
            let names: Vec<&str> =
                if instance == "all" { oracle_check::INSTANCES.to_vec() } else { vec![instance.as_str()] };
            let opts = solve.options();
            let mut reports = Vec::new();
            for name in names {
                reports.push(oracle_check::check(name, *seed, &opts, &clock)?);
            }
            let bad: Vec<&str> = reports.iter().filter(|r| !r.agree).map(|r| r.instance.as_str()).collect();
            let failure = (!bad.is_empty()).then(|| CliError::Check(format!("MILP and oracle disagree on {}", bad.join(", "))));
            Ok(Outcome { text: pretty(&serde_json::to_value(&reports)?), failure })
        }
        Command::Bench { n0, n1, r, repeats, time_limit, seed } => {
            if n0.is_empty() || n1.is_empty() || r.is_empty() || *repeats == 0 {
                return Err(CliError::Usage("bench needs non-empty --n0, --n1, --r and --repeats ≥ 1".into()));
            }
            let cfg = BenchConfig {
                n0: n0.clone(),
                n1: n1.clone(),
                radii: r.clone(),
                repeats: *repeats,
                time_limit: *time_limit,
                seed: *seed,
                ..BenchConfig::default()
            };
            let rows = bench::run(&cfg)?;
            let regressions = bench::size_regressions(&rows);
            let failure = (!regressions.is_empty())
                .then(|| CliError::Check(format!("model size shrank: {}", regressions.join("; "))));
            let doc = json!({"rows": rows, "size_monotone": regressions.is_empty()});
            Ok(Outcome { text: pretty(&doc), failure })
        }
        Command::DumpLp { net, net_b, problem, center, r, norm } => {
            let a = read_mlp(net)?;
            let b = InputBox::new(center.clone(), *r, (*norm).into())?;
            let p = match problem {
                1 => encode_problem1(&a, &b, &EncodeOptions::default())?,
                2 => encode_problem2(&a, &b)?,
                _ => {
                    let path = net_b.as_ref().ok_or_else(|| CliError::Usage("--problem 3 needs --net-b".into()))?;
                    encode_problem3(&a, &read_mlp(path)?, &b)?
                }
            };
            let comment = format!("problem {problem}, center {center:?}, r = {r}");
            Ok(crate::lpdump::dump(&p.model, &comment).into())
        }
        Command::Plot { csv: path, x, y, mode } => {
            let mut rd = csv::Reader::from_path(path)?;
            let headers = rd.headers()?.clone();
            let col = |name: &str| {
                headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| CliError::Usage(format!("no column {name:?} in {}", path.display())))
            };
            let (ix, iy) = (col(x)?, col(y)?);
            let mut pts = Vec::new();
            for rec in rd.records() {
                let rec = rec?;
                let parse = |i: usize| {
                    rec[i].trim().parse::<f64>().map_err(|e| CliError::Format(format!("{:?}: {e}", &rec[i])))
                };
                pts.push((parse(ix)?, parse(iy)?));
            }
            let mode = match mode {
                PlotMode::Scatter => plot::Mode::Scatter,
                PlotMode::Line => plot::Mode::Line,
            };
            Ok(plot::svg(&pts, mode, x, y).into())
        }
    }
}

fn dyn_step(sys: &DynArgs) -> Result<Outcome> {
    let image = match sys.system {
        System::Brusselator => {
            let [x, y] = pair(&sys.point, "--point")?;
            let (u, v) = BrusselatorEuler::new(sys.a, sys.b, sys.tau).step(x, y);
            vec![u, v]
        }
        System::Scalar => {
            let [x] = sys.point[..] else {
                return Err(CliError::Usage("--point needs one value for the scalar map".into()));
            };
            vec![ScalarQuadraticEuler::new(sys.b, sys.c, sys.tau).step(x)]
        }
        _ => return Err(CliError::Usage("dyn-step supports brusselator and scalar".into())),
    };
    Ok(pretty(&json!({"point": sys.point, "image": image})).into())
}

fn dyn_preimage(sys: &DynArgs) -> Result<Outcome> {
    let pre: Vec<Vec<f64>> = match sys.system {
        System::Brusselator => {
            let [x, y] = pair(&sys.point, "--point")?;
            BrusselatorEuler::new(sys.a, sys.b, sys.tau).preimages(x, y)?.into_iter().map(|(u, v)| vec![u, v]).collect()
        }
        System::Scalar => {
            let [x] = sys.point[..] else {
                return Err(CliError::Usage("--point needs one value for the scalar map".into()));
            };
            ScalarQuadraticEuler::new(sys.b, sys.c, sys.tau).preimages(x).into_iter().map(|u| vec![u]).collect()
        }
        _ => return Err(CliError::Usage("dyn-preimage supports brusselator and scalar".into())),
    };
    Ok(pretty(&json!({"point": sys.point, "count": pre.len(), "preimages": pre})).into())
}
