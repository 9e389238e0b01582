//! `endband` — constructors, invariants, and verification suites with
//! machine-readable reports.
//!
//! Exit codes: 0 ok, 1 usage, 2 domain error, 3 tolerance failure, 4 IO
//! error. Every run prints one JSON report to stdout; identical invocations
//! (including seeds) produce byte-identical output.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use endband::band::EPBandOp;
use endband::bundle::{
    circle_transition_entries, completed_sum_sphere, pullback_circle, pushforward_universal_cover,
    transfer_structure, EndCocycle,
};
use endband::fourier::{self, OverlapComponent};
use endband::osc::{self, FrameOrdering, GridSpec, Hemisphere};
use endband::seq::Functional;
use endband::{tol, Complex64};
use endband_cli::formats::{
    parse_exponent_spec, parse_functional, parse_op, parse_seq, render_rational, CocycleSpec,
    SeqSpec,
};
use endband_cli::report::{CmdError, CsvTable, ErrorKind, Report};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "endband",
    version,
    about = "Finite-propagation operators on the integer lattice and end invariants of Hilbert bundles"
)]
struct Cli {
    /// Also write the JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write the run's sample or residual table to this CSV path.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coinvariant classes of eventually periodic integer sequences.
    Seq {
        #[command(subcommand)]
        cmd: SeqCmd,
    },
    /// Band operators: index, propagation, periodicity.
    Op {
        #[command(subcommand)]
        cmd: OpCmd,
    },
    /// Bundles with ends over the fixed base complexes.
    Bundle {
        #[command(subcommand)]
        cmd: BundleCmd,
    },
    /// The Fourier-transform bundle and its quadrature verification.
    Fourier {
        #[command(subcommand)]
        cmd: FourierCmd,
    },
    /// Harmonic-oscillator verification suites and the spectral bundle.
    Osc {
        #[command(subcommand)]
        cmd: OscCmd,
    },
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Tail means and triviality of a sequence class.
    Class {
        #[arg(long)]
        seq: String,
    },
    /// Pair a functional with a sequence class.
    Pair {
        /// "c-,c+" with rational components, e.g. "1/2,-1/2".
        #[arg(long)]
        functional: String,
        #[arg(long)]
        seq: String,
    },
    /// Bounded witness b with (1-S)b = a, for trivial classes.
    Witness {
        #[arg(long)]
        seq: String,
    },
}

#[derive(Args)]
struct OpInput {
    /// Shorthand: identity | shift:k | diag:<seq> | inline JSON.
    #[arg(long, conflicts_with = "file")]
    spec: Option<String>,
    /// Operator spec JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl OpInput {
    fn load(&self, inputs: &mut BTreeMap<String, String>) -> Result<EPBandOp, CmdError> {
        match (&self.spec, &self.file) {
            (Some(s), None) => {
                inputs.insert("spec".into(), s.clone());
                Ok(parse_op(s)?)
            }
            (None, Some(path)) => {
                inputs.insert("file".into(), path.display().to_string());
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CmdError::io(format!("read {}: {e}", path.display())))?;
                Ok(parse_op(&text)?)
            }
            _ => Err(CmdError::usage("provide exactly one of --spec or --file")),
        }
    }
}

#[derive(Subcommand)]
enum OpCmd {
    /// Fredholm index of a band unitary.
    Index {
        #[command(flatten)]
        input: OpInput,
    },
    /// Propagation (band width actually attained).
    Prop {
        #[command(flatten)]
        input: OpInput,
    },
    /// Whether conjugation by S^n fixes the operator.
    Periodic {
        #[command(flatten)]
        input: OpInput,
        #[arg(long)]
        n: i64,
    },
}

#[derive(Subcommand)]
enum BundleCmd {
    /// Completed sum over the sphere from an exponent family.
    Esum {
        /// linear:slope[,intercept] | any sequence shorthand/JSON.
        #[arg(long)]
        exp: String,
        #[arg(long)]
        functional: Option<String>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Pushforward of the trivial line bundle along the universal cover.
    Pushforward,
    /// Pull a circle cocycle back along a degree-d map.
    Pullback {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        /// Circle cocycle JSON; defaults to the universal-cover pushforward.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Degree-2 class of a completed sum against a functional.
    Alpha1 {
        #[arg(long)]
        exp: String,
        #[arg(long)]
        functional: String,
    },
    /// Degree-1 class of a circle cocycle.
    Beta1 {
        /// Cocycle JSON; defaults to the universal-cover pushforward.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Hat invariants, defined on periodic ends only.
    Hat {
        #[arg(long, conflicts_with = "file")]
        exp: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FourierCmd {
    /// The Fourier-transform bundle over the circle.
    L1,
    /// The torus cocycle (stored data; invariants refused).
    Torus {
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Branch integrality and exact-vs-quadrature transition agreement.
    Verify {
        /// Overlap samples for the branch table.
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        /// Mode cutoff N for the dense comparison.
        #[arg(long, default_value_t = 64)]
        modes: usize,
        /// Quadrature points (keep >= 8 (modes + 2)).
        #[arg(long, default_value_t = 1024)]
        quad: usize,
        /// Overlap points for the dense comparison.
        #[arg(long, default_value_t = 16)]
        points: usize,
    },
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    #[arg(long, default_value_t = 12.0)]
    xmax: f64,
    #[arg(long, default_value_t = 6144)]
    npoints: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<GridSpec, CmdError> {
        if self.npoints < 8 || !self.xmax.is_finite() || self.xmax <= 0.0 {
            return Err(CmdError::usage("grid needs xmax > 0 and npoints >= 8"));
        }
        Ok(GridSpec::new(self.xmax, self.npoints))
    }

    fn echo(&self, inputs: &mut BTreeMap<String, String>) {
        inputs.insert("xmax".into(), self.xmax.to_string());
        inputs.insert("npoints".into(), self.npoints.to_string());
    }
}

#[derive(Subcommand)]
enum OscCmd {
    /// The five 1-D ladder identities on random damped fields.
    Verify1d {
        /// Comma-separated stiffness values.
        #[arg(long, default_value = "0.5,1,2", value_delimiter = ',')]
        a: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = tol::IDENTITY_REL)]
        tol: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// The five 2-D ladder identities at random sphere parameters.
    Verify2d {
        /// Number of random sphere points.
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = tol::IDENTITY_REL)]
        tol: f64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Conjugated eigenframe diagnostics at a hemisphere point.
    Frame {
        #[arg(long = "K", default_value_t = 6)]
        k: usize,
        /// Disc coordinate "re,im" of the parameter point.
        #[arg(long, default_value = "0,0")]
        z: String,
        #[arg(long, value_parser = ["plus", "minus"], default_value = "plus")]
        hemisphere: String,
        #[arg(long, value_parser = ["split", "interleaved"], default_value = "split")]
        ordering: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// The spectral bundle: measured windings and its degree-2 class.
    Bundle {
        #[arg(long = "K", default_value_t = 6)]
        k: usize,
        /// Functional paired with the exponent class (default the half-half
        /// dual "1/2,-1/2").
        #[arg(long)]
        functional: Option<String>,
        #[arg(long, value_parser = ["split", "interleaved"], default_value = "split")]
        ordering: String,
        #[command(flatten)]
        grid: GridArgs,
    },
}

type Outputs = BTreeMap<String, Value>;
type CmdResult = Result<(Outputs, Option<CsvTable>), CmdError>;

fn rational_value(r: &endband::Rational) -> Value {
    Value::String(render_rational(r))
}

fn class_value(c: &endband::seq::CoinvClass) -> Value {
    json!({
        "mu_minus": render_rational(&c.mu_minus),
        "mu_plus": render_rational(&c.mu_plus),
    })
}

fn load_cocycle(path: &PathBuf) -> Result<EndCocycle, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::io(format!("read {}: {e}", path.display())))?;
    let spec: CocycleSpec =
        serde_json::from_str(&text).map_err(|e| CmdError::usage(format!("cocycle JSON: {e}")))?;
    Ok(spec.into_cocycle()?)
}

fn run_seq(cmd: &SeqCmd, inputs: &mut BTreeMap<String, String>) -> CmdResult {
    match cmd {
        SeqCmd::Class { seq } => {
            inputs.insert("seq".into(), seq.clone());
            let a = parse_seq(seq)?;
            let class = a.coinv_class();
            let mut out = Outputs::new();
            out.insert("mu_minus".into(), rational_value(&class.mu_minus));
            out.insert("mu_plus".into(), rational_value(&class.mu_plus));
            out.insert("trivial".into(), Value::Bool(a.is_trivial()));
            Ok((out, None))
        }
        SeqCmd::Pair { functional, seq } => {
            inputs.insert("functional".into(), functional.clone());
            inputs.insert("seq".into(), seq.clone());
            let f = parse_functional(functional)?;
            let a = parse_seq(seq)?;
            let mut out = Outputs::new();
            out.insert("pair".into(), rational_value(&f.pair(&a.coinv_class())));
            Ok((out, None))
        }
        SeqCmd::Witness { seq } => {
            inputs.insert("seq".into(), seq.clone());
            let a = parse_seq(seq)?;
            let w = a.certificate_trivial()?;
            let window = 30 * a.cycle_lcm() as i64;
            let verified = (-window..=window).all(|i| w.delta_op().eval(i) == a.eval(i));
            let mut out = Outputs::new();
            out.insert(
                "witness".into(),
                serde_json::to_value(SeqSpec::from_seq(&w)).unwrap(),
            );
            out.insert("verified".into(), Value::Bool(verified));
            Ok((out, None))
        }
    }
}

fn run_op(cmd: &OpCmd, inputs: &mut BTreeMap<String, String>) -> CmdResult {
    match cmd {
        OpCmd::Index { input } => {
            let op = input.load(inputs)?;
            let index = op.fredholm_index()?;
            let mut out = Outputs::new();
            out.insert("index".into(), json!(index));
            out.insert("propagation".into(), json!(op.propagation()));
            Ok((out, None))
        }
        OpCmd::Prop { input } => {
            let op = input.load(inputs)?;
            let mut out = Outputs::new();
            out.insert("propagation".into(), json!(op.propagation()));
            Ok((out, None))
        }
        OpCmd::Periodic { input, n } => {
            let op = input.load(inputs)?;
            inputs.insert("n".into(), n.to_string());
            if *n < 1 {
                return Err(CmdError::usage("period n must be >= 1"));
            }
            let mut out = Outputs::new();
            out.insert("periodic".into(), Value::Bool(op.is_periodic(*n)));
            out.insert("n".into(), json!(n));
            Ok((out, None))
        }
    }
}

fn cocycle_invariants(c: &EndCocycle, samples: usize, out: &mut Outputs) {
    out.insert("cocycle_check".into(), Value::Bool(c.cocycle_check(samples)));
    let periodic = c.periodic_end_check();
    out.insert("periodic_end".into(), Value::Bool(periodic));
    if let Some(s) = c.equator_component() {
        out.insert("equator_component".into(), json!(s));
    }
    if periodic {
        if let Ok(v) = c.hat_alpha1() {
            out.insert("hat_alpha1".into(), rational_value(&v));
        }
        if let Ok(v) = c.hat_beta1() {
            out.insert("hat_beta1".into(), json!(v));
        }
    }
}

fn run_bundle(cmd: &BundleCmd, inputs: &mut BTreeMap<String, String>) -> CmdResult {
    match cmd {
        BundleCmd::Esum {
            exp,
            functional,
            samples,
        } => {
            inputs.insert("exp".into(), exp.clone());
            inputs.insert("samples".into(), samples.to_string());
            let spec = parse_exponent_spec(exp)?;
            let c = completed_sum_sphere(&spec)?;
            let mut out = Outputs::new();
            cocycle_invariants(&c, *samples, &mut out);
            match functional {
                Some(f) => {
                    inputs.insert("functional".into(), f.clone());
                    let f = parse_functional(f)?;
                    out.insert("alpha1".into(), rational_value(&c.alpha1(&f)?));
                }
                None => {
                    out.insert(
                        "alpha1_tail_mean".into(),
                        rational_value(&c.alpha1(&Functional::tail_mean())?),
                    );
                    out.insert(
                        "alpha1_tail_split".into(),
                        rational_value(&c.alpha1(&Functional::tail_split())?),
                    );
                }
            }
            Ok((out, None))
        }
        BundleCmd::Pushforward => {
            let c = pushforward_universal_cover();
            let mut out = Outputs::new();
            out.insert("beta1".into(), json!(c.beta1()?));
            let permutation_only = circle_transition_entries(&c)?
                .iter()
                .all(|v| v.norm() < 1e-12 || (v - Complex64::ONE).norm() < 1e-12);
            out.insert("permutation_only".into(), Value::Bool(permutation_only));
            cocycle_invariants(&c, 64, &mut out);
            // the transfer instance coincides with this pushforward
            let t = transfer_structure();
            out.insert("transfer_beta1".into(), json!(t.beta1()?));
            Ok((out, None))
        }
        BundleCmd::Pullback { d, file } => {
            inputs.insert("d".into(), d.to_string());
            let base = match file {
                Some(path) => {
                    inputs.insert("file".into(), path.display().to_string());
                    load_cocycle(path)?
                }
                None => pushforward_universal_cover(),
            };
            let pulled = pullback_circle(&base, *d)?;
            let mut out = Outputs::new();
            out.insert("beta1".into(), json!(pulled.beta1()?));
            out.insert("base_beta1".into(), json!(base.beta1()?));
            Ok((out, None))
        }
        BundleCmd::Alpha1 { exp, functional } => {
            inputs.insert("exp".into(), exp.clone());
            inputs.insert("functional".into(), functional.clone());
            let c = completed_sum_sphere(&parse_exponent_spec(exp)?)?;
            let f = parse_functional(functional)?;
            let mut out = Outputs::new();
            out.insert("alpha1".into(), rational_value(&c.alpha1(&f)?));
            if let Some(s) = c.equator_component() {
                out.insert("equator_component".into(), json!(s));
            }
            Ok((out, None))
        }
        BundleCmd::Beta1 { file } => {
            let c = match file {
                Some(path) => {
                    inputs.insert("file".into(), path.display().to_string());
                    load_cocycle(path)?
                }
                None => pushforward_universal_cover(),
            };
            let mut out = Outputs::new();
            out.insert("beta1".into(), json!(c.beta1()?));
            Ok((out, None))
        }
        BundleCmd::Hat { exp, file } => {
            let c = match (exp, file) {
                (Some(e), None) => {
                    inputs.insert("exp".into(), e.clone());
                    completed_sum_sphere(&parse_exponent_spec(e)?)?
                }
                (None, Some(path)) => {
                    inputs.insert("file".into(), path.display().to_string());
                    load_cocycle(path)?
                }
                _ => return Err(CmdError::usage("provide exactly one of --exp or --file")),
            };
            let mut out = Outputs::new();
            match c {
                EndCocycle::Sphere { .. } => {
                    out.insert("hat_alpha1".into(), rational_value(&c.hat_alpha1()?));
                }
                EndCocycle::Circle { .. } => {
                    out.insert("hat_beta1".into(), json!(c.hat_beta1()?));
                }
                EndCocycle::Torus { .. } => {
                    c.hat_alpha1()?;
                }
            }
            Ok((out, None))
        }
    }
}

fn run_fourier(cmd: &FourierCmd, inputs: &mut BTreeMap<String, String>) -> CmdResult {
    match cmd {
        FourierCmd::L1 => {
            let c = fourier::l1_bundle();
            let mut out = Outputs::new();
            out.insert("beta1".into(), json!(c.beta1()?));
            cocycle_invariants(&c, 64, &mut out);
            out.insert(
                "transitions".into(),
                json!({"agreeing": "identity", "shifted": "shift:1"}),
            );
            Ok((out, None))
        }
        FourierCmd::Torus { samples } => {
            inputs.insert("samples".into(), samples.to_string());
            let c = fourier::l2_torus_bundle();
            let mut out = Outputs::new();
            out.insert("cocycle_check".into(), Value::Bool(c.cocycle_check(*samples)));
            out.insert(
                "invariants".into(),
                Value::String("refused: classes are not determined over the torus".into()),
            );
            Ok((out, None))
        }
        FourierCmd::Verify {
            samples,
            modes,
            quad,
            points,
        } => {
            inputs.insert("samples".into(), samples.to_string());
            inputs.insert("modes".into(), modes.to_string());
            inputs.insert("quad".into(), quad.to_string());
            inputs.insert("points".into(), points.to_string());
            if *quad < 8 * (modes + 2) {
                return Err(CmdError::usage("quad must be at least 8 (modes + 2)"));
            }
            let mut table = CsvTable::new(&["t", "branch_1", "branch_2", "jump"]);
            let per_component = samples / 2;
            let mut counts = [0usize; 2];
            for (ci, comp) in [OverlapComponent::Agreeing, OverlapComponent::Shifted]
                .into_iter()
                .enumerate()
            {
                let (lo, hi) = comp.interval();
                for j in 0..per_component {
                    let t = lo + (hi - lo) * (j as f64 + 0.5) / per_component as f64;
                    let w = fourier::circle_point(t);
                    let b1 = fourier::branch(fourier::Chart::One, w)?;
                    let b2 = fourier::branch(fourier::Chart::Two, w)?;
                    let k = fourier::branch_jump(w)?;
                    table.push(vec![
                        format!("{t:.12}"),
                        format!("{b1:.12}"),
                        format!("{b2:.12}"),
                        k.to_string(),
                    ]);
                    counts[ci] += 1;
                }
            }
            let mut worst = 0.0f64;
            for j in 0..*points {
                let comp = if j % 2 == 0 {
                    OverlapComponent::Agreeing
                } else {
                    OverlapComponent::Shifted
                };
                let (lo, hi) = comp.interval();
                let t = lo + (hi - lo) * ((j / 2) as f64 + 0.5) / points.div_ceil(2) as f64;
                let w = fourier::circle_point(t);
                let num = fourier::transition_numeric(w, *modes, *quad)?;
                let exact = fourier::transition_exact(w)?;
                let n = *modes as i64;
                for mm in -n..=n {
                    for nn in -n..=n {
                        let got = num.get((mm + n) as usize, (nn + n) as usize);
                        worst = worst.max((got - exact.matrix_entry(mm, nn)).norm());
                    }
                }
            }
            let mut out = Outputs::new();
            out.insert("branch_samples".into(), json!(counts[0] + counts[1]));
            out.insert("component_agreeing_samples".into(), json!(counts[0]));
            out.insert("component_shifted_samples".into(), json!(counts[1]));
            out.insert("max_numeric_deviation".into(), json!(worst));
            out.insert("tolerance".into(), json!(tol::FOURIER_NUMERIC));
            out.insert(
                "interval_note".into(),
                Value::String(
                    "overlap components read from the printed charts are t in (1/2,3/4) and t in (1,5/4); \
                     the (-1/4,0) labelling is the second component one turn down"
                        .into(),
                ),
            );
            if worst > tol::FOURIER_NUMERIC {
                return Err(CmdError {
                    kind: ErrorKind::Tolerance,
                    message: format!(
                        "numeric deviation {worst:e} exceeds {:e}",
                        tol::FOURIER_NUMERIC
                    ),
                });
            }
            Ok((out, Some(table)))
        }
    }
}

fn parse_complex(s: &str) -> Result<Complex64, CmdError> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| CmdError::usage("complex values are written \"re,im\""))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| CmdError::usage(format!("{re:?} is not a float")))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| CmdError::usage(format!("{im:?} is not a float")))?;
    Ok(Complex64::new(re, im))
}

fn run_osc(cmd: &OscCmd, inputs: &mut BTreeMap<String, String>) -> CmdResult {
    match cmd {
        OscCmd::Verify1d {
            a,
            trials,
            tol: limit,
            seed,
            grid,
        } => {
            inputs.insert(
                "a".into(),
                a.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
            );
            inputs.insert("trials".into(), trials.to_string());
            inputs.insert("tol".into(), limit.to_string());
            inputs.insert("seed".into(), seed.to_string());
            grid.echo(inputs);
            let g = grid.grid()?;
            let mut table = CsvTable::new(&["a", "identity", "max_relative_residual"]);
            let mut worst = 0.0f64;
            let mut rows = serde_json::Map::new();
            for (i, &stiffness) in a.iter().enumerate() {
                let report = osc::identity_residuals_1d(stiffness, *trials, seed + i as u64, g)?;
                for (name, value) in &report.rows {
                    table.push(vec![
                        stiffness.to_string(),
                        name.to_string(),
                        format!("{value:e}"),
                    ]);
                    rows.insert(format!("{name} (a={stiffness})"), json!(value));
                    worst = worst.max(*value);
                }
            }
            let mut out = Outputs::new();
            out.insert("identities".into(), Value::Object(rows));
            out.insert("worst_relative_residual".into(), json!(worst));
            out.insert("tolerance".into(), json!(limit));
            out.insert("pass".into(), Value::Bool(worst <= *limit));
            if worst > *limit {
                return Err(CmdError {
                    kind: ErrorKind::Tolerance,
                    message: format!("worst relative residual {worst:e} exceeds {limit:e}"),
                });
            }
            Ok((out, Some(table)))
        }
        OscCmd::Verify2d {
            points,
            trials,
            tol: limit,
            seed,
            grid,
        } => {
            inputs.insert("points".into(), points.to_string());
            inputs.insert("trials".into(), trials.to_string());
            inputs.insert("tol".into(), limit.to_string());
            inputs.insert("seed".into(), seed.to_string());
            grid.echo(inputs);
            let g = grid.grid()?;
            let mut rng = endband::rng::SplitMix64::new(*seed);
            let mut table = CsvTable::new(&["point", "identity", "max_relative_residual"]);
            let mut worst = 0.0f64;
            for p in 0..*points {
                let u = osc::random_sphere_point(&mut rng);
                let report = osc::identity_residuals_2d(&u, *trials, seed + 1000 + p as u64, g)?;
                for (name, value) in &report.rows {
                    table.push(vec![p.to_string(), name.to_string(), format!("{value:e}")]);
                    worst = worst.max(*value);
                }
            }
            let mut out = Outputs::new();
            out.insert("sphere_points".into(), json!(points));
            out.insert("worst_relative_residual".into(), json!(worst));
            out.insert("tolerance".into(), json!(limit));
            out.insert("pass".into(), Value::Bool(worst <= *limit));
            if worst > *limit {
                return Err(CmdError {
                    kind: ErrorKind::Tolerance,
                    message: format!("worst relative residual {worst:e} exceeds {limit:e}"),
                });
            }
            Ok((out, Some(table)))
        }
        OscCmd::Frame {
            k,
            z,
            hemisphere,
            ordering,
            grid,
        } => {
            inputs.insert("K".into(), k.to_string());
            inputs.insert("z".into(), z.clone());
            inputs.insert("hemisphere".into(), hemisphere.clone());
            inputs.insert("ordering".into(), ordering.clone());
            grid.echo(inputs);
            let g = grid.grid()?;
            let hemi = if hemisphere == "plus" {
                Hemisphere::Plus
            } else {
                Hemisphere::Minus
            };
            let ord = if ordering == "split" {
                FrameOrdering::Split
            } else {
                FrameOrdering::Interleaved
            };
            let u = osc::u_point(parse_complex(z)?, hemi)?;
            let f = osc::frame(&u, hemi, *k, ord, g)?;
            let mut out = Outputs::new();
            out.insert("members".into(), json!(f.indices().len()));
            out.insert("gram_defect".into(), json!(f.gram_defect()));
            out.insert("eigen_defect".into(), json!(f.eigen_defect()));
            Ok((out, None))
        }
        OscCmd::Bundle {
            k,
            functional,
            ordering,
            grid,
        } => {
            inputs.insert("K".into(), k.to_string());
            inputs.insert("ordering".into(), ordering.clone());
            grid.echo(inputs);
            let g = grid.grid()?;
            let mut table = CsvTable::new(&["index", "winding"]);
            let mut out = Outputs::new();
            if ordering == "interleaved" {
                let r = osc::interleaved_class(*k, g)?;
                for &(idx, w) in &r.windings {
                    table.push(vec![idx.to_string(), w.to_string()]);
                }
                out.insert("class".into(), class_value(&r.class));
                out.insert(
                    "windings".into(),
                    json!(r
                        .windings
                        .iter()
                        .map(|&(i, w)| json!([i, w]))
                        .collect::<Vec<_>>()),
                );
                if let Some(wit) = r.witness {
                    out.insert(
                        "witness".into(),
                        serde_json::to_value(SeqSpec::from_seq(&wit)).unwrap(),
                    );
                }
                return Ok((out, Some(table)));
            }
            let b = osc::oscillator_bundle(*k, g)?;
            for &(idx, w) in &b.windings {
                table.push(vec![idx.to_string(), w.to_string()]);
            }
            let f = match functional {
                Some(s) => {
                    inputs.insert("functional".into(), s.clone());
                    parse_functional(s)?
                }
                None => {
                    inputs.insert("functional".into(), "1/2,-1/2".into());
                    Functional::tail_split()
                }
            };
            out.insert("alpha1".into(), rational_value(&f.pair(&b.exponent_class)));
            out.insert("class".into(), class_value(&b.exponent_class));
            out.insert(
                "windings".into(),
                json!(b
                    .windings
                    .iter()
                    .map(|&(i, w)| json!([i, w]))
                    .collect::<Vec<_>>()),
            );
            out.insert(
                "periodic_end".into(),
                Value::Bool(b.cocycle.periodic_end_check()),
            );
            out.insert(
                "cocycle_check".into(),
                Value::Bool(b.cocycle.cocycle_check(32)),
            );
            Ok((out, Some(table)))
        }
    }
}

fn run(cli: &Cli, inputs: &mut BTreeMap<String, String>) -> CmdResult {
    match &cli.cmd {
        Cmd::Seq { cmd } => run_seq(cmd, inputs),
        Cmd::Op { cmd } => run_op(cmd, inputs),
        Cmd::Bundle { cmd } => run_bundle(cmd, inputs),
        Cmd::Fourier { cmd } => run_fourier(cmd, inputs),
        Cmd::Osc { cmd } => run_osc(cmd, inputs),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as ClapKind;
            let code = match e.kind() {
                ClapKind::DisplayHelp | ClapKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command = {
        let args: Vec<String> = std::env::args().skip(1).collect();
        format!("endband {}", args.join(" "))
    };
    let mut inputs = BTreeMap::new();
    let (report, code, csv) = match run(&cli, &mut inputs) {
        Ok((outputs, csv)) => (Report::ok(command, inputs, outputs), 0, csv),
        Err(e) => {
            let code = e.kind.exit_code();
            (Report::error(command, inputs, &e), code, None)
        }
    };
    println!("{}", report.to_json());
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("write {}: {e}", path.display());
            return ExitCode::from(ErrorKind::Io.exit_code() as u8);
        }
    }
    if let (Some(path), Some(table)) = (&cli.csv, &csv) {
        if let Err(e) = table.write(path) {
            eprintln!("{}", e.message);
            return ExitCode::from(ErrorKind::Io.exit_code() as u8);
        }
    }
    ExitCode::from(code as u8)
}
