mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use softprob::information::{soft_cross_entropy, soft_entropy, soft_kld, soft_mutual_information};
use softprob::moments::soft_variance;
use softprob::probability::{self as prob, IntervalEvent, PointSetEvent, Relation};
use softprob::soft::Coef;
use softprob::tree::{self, TreeModel};
use softprob::{
    DistributionSpec, InfoConfig, JointSpec, MiForm, MixedSet, QuadratureConfig, TreeConfig,
    ZlogzMode,
};

use render::{Format, Report};

/// Soft probability, soft information measures and soft-MI decision trees.
///
/// Structured inputs (distributions, joint models, events and sets) are JSON,
/// given inline or as `@path` to read from a file.
#[derive(Parser, Debug)]
#[command(name = "softprob", version)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Logarithm base for information measures.
    #[arg(long, global = true, value_enum, default_value_t = LogBase::E)]
    log_base: LogBase,

    /// Keep the 0log0 coefficient on its own axis or collapse it to zero.
    #[arg(long, global = true, value_enum, default_value_t = Zlogz::Axis)]
    zlogz: Zlogz,

    /// Relative tolerance for adaptive quadrature (1-D and 2-D).
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LogBase {
    E,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl LogBase {
    fn value(self) -> f64 {
        match self {
            LogBase::E => std::f64::consts::E,
            LogBase::Two => 2.0,
            LogBase::Ten => 10.0,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Zlogz {
    Axis,
    Collapse,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Form {
    Symmetric,
    Conditional,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reproduce the additive-Gaussian soft mutual information table.
    Table1,
    /// Soft probability of an event.
    Ps {
        /// Univariate distribution, e.g. {"kind":"gaussian","mean":0,"variance":1}.
        #[arg(long, conflicts_with = "joint", required_unless_present = "joint")]
        dist: Option<String>,
        /// Joint model for two-variable events.
        #[arg(long)]
        joint: Option<String>,
        /// Event, e.g. {"kind":"leq","at":0.5}.
        #[arg(long)]
        event: String,
    },
    /// Soft entropy over a mixed set.
    Entropy {
        #[arg(long)]
        dist: String,
        /// Mixed set, e.g. {"points":[0.5],"intervals":[[0,0.5],[0.5,1]]}.
        #[arg(long)]
        set: String,
    },
    /// Soft cross entropy and soft KL divergence of an approximation.
    Kld {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        approx: String,
        #[arg(long)]
        set: String,
    },
    /// Soft mutual information of a joint model over two mixed sets.
    Mi {
        #[arg(long)]
        joint: String,
        #[arg(long)]
        sx: String,
        #[arg(long)]
        sy: String,
        #[arg(long, value_enum, default_value_t = Form::Symmetric)]
        form: Form,
    },
    /// Soft expectation and variance over a mixed set.
    Moments {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        set: String,
    },
    /// Train a decision tree on a delimited dataset.
    TreeTrain {
        /// Header row required; last column is the label; cells are numbers or lo..hi.
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = ',')]
        delimiter: char,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        #[arg(long, default_value_t = 10)]
        min_rows: usize,
        /// Recorded with the model; induction itself is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Where to write the model; printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predict with a trained tree.
    TreePredict {
        #[arg(long)]
        model: PathBuf,
        /// Same layout as training data; a trailing label column is ignored.
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = ',')]
        delimiter: char,
        /// Recorded for symmetry with tree-train; prediction is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum EventSpec {
    Eq { at: f64 },
    Lt { at: f64 },
    Leq { at: f64 },
    Neq { at: f64 },
    Interval {
        lo: f64,
        hi: f64,
        #[serde(default)]
        closed: bool,
    },
    AnyOf { points: Vec<f64> },
    AllOf { points: Vec<f64> },
    PointOrInterval {
        point: f64,
        lo: f64,
        hi: f64,
        #[serde(default)]
        closed: bool,
    },
    PointAndInterval {
        point: f64,
        lo: f64,
        hi: f64,
        #[serde(default)]
        closed: bool,
    },
    PointGivenInterval {
        point: f64,
        lo: f64,
        hi: f64,
        #[serde(default)]
        closed: bool,
    },
    PointGivenPoint { point: f64, given: f64 },
    Joint { x: f64, y: f64, rx: Relation, ry: Relation },
}

fn load<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T> {
    let (text, origin) = match arg.strip_prefix('@') {
        Some(path) => (
            fs::read_to_string(path).with_context(|| format!("reading {what} from {path}"))?,
            path.to_owned(),
        ),
        None => (arg.to_owned(), "argument".to_owned()),
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {what} ({origin})"))
}

fn quadrature(g: &Global) -> Result<(QuadratureConfig, QuadratureConfig)> {
    let (mut q1, mut q2) = (QuadratureConfig::default_1d(), QuadratureConfig::default_2d());
    if let Some(t) = g.rel_tol {
        q1 = q1.with_rel_tol(t);
        q2 = q2.with_rel_tol(t);
    }
    q1.validate()?;
    q2.validate()?;
    Ok((q1, q2))
}

fn info_config(g: &Global) -> Result<InfoConfig> {
    let (quadrature, quadrature_2d) = quadrature(g)?;
    let cfg = InfoConfig {
        log_base: g.log_base.value(),
        zlogz_mode: match g.zlogz {
            Zlogz::Axis => ZlogzMode::Axis,
            Zlogz::Collapse => ZlogzMode::Collapse,
        },
        quadrature,
        quadrature_2d,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn interval(lo: f64, hi: f64, closed: bool) -> Result<IntervalEvent> {
    Ok(IntervalEvent::new(lo, hi, !closed)?)
}

fn run_ps(g: &Global, dist: Option<&str>, joint: Option<&str>, event: &str) -> Result<Report> {
    let event: EventSpec = load("event", event)?;
    if let EventSpec::Joint { x, y, rx, ry } = event {
        let Some(joint) = joint else {
            bail!("a joint event needs --joint");
        };
        let j = load::<JointSpec>("joint model", joint)?.build()?;
        let (q1, _) = quadrature(g)?;
        let v = prob::ps2(&j, x, y, rx, ry, &q1)?;
        return Ok(Report::new().with("ps", v));
    }
    let Some(dist) = dist else {
        bail!("a univariate event needs --dist");
    };
    let d = load::<DistributionSpec>("distribution", dist)?.build()?;
    let d = d.as_ref();
    let report = match event {
        EventSpec::Eq { at } => Report::new().with("ps", prob::ps_eq(d, at)?),
        EventSpec::Lt { at } => Report::new().with("ps", prob::ps_lt(d, at)?),
        EventSpec::Leq { at } => Report::new().with("ps", prob::ps_leq(d, at)?),
        EventSpec::Neq { at } => Report::new().with("ps", prob::ps_neq(d, at)?),
        EventSpec::Interval { lo, hi, closed } => {
            Report::new().with("ps", prob::ps_interval(d, &interval(lo, hi, closed)?)?)
        }
        EventSpec::AnyOf { points } => {
            Report::new().with("ps", prob::ps_points_union(d, &PointSetEvent::new(points)?)?)
        }
        EventSpec::AllOf { points } => Report::new().with(
            "ps",
            prob::ps_points_intersection(d, &PointSetEvent::new(points)?)?,
        ),
        EventSpec::PointOrInterval { point, lo, hi, closed } => Report::new().with(
            "ps",
            prob::ps_union_point_interval(d, point, &interval(lo, hi, closed)?)?,
        ),
        EventSpec::PointAndInterval { point, lo, hi, closed } => Report::new().with(
            "ps",
            prob::ps_intersect_point_interval(d, point, &interval(lo, hi, closed)?)?,
        ),
        EventSpec::PointGivenInterval { point, lo, hi, closed } => {
            let iv = interval(lo, hi, closed)?;
            Report::new()
                .with("ps", prob::ps_cond_point_given_interval(d, point, &iv)?)
                .with("ps_bayes", prob::ps_cond_point_given_interval_bayes(d, point, &iv)?)
        }
        EventSpec::PointGivenPoint { point, given } => Report::new()
            .with("ps", prob::ps_cond_point_given_point(d, point, given)?)
            .with("ps_bayes", prob::ps_cond_point_given_point_bayes(d, point, given)?),
        EventSpec::Joint { .. } => unreachable!("handled above"),
    };
    Ok(report)
}

fn run_table1(g: &Global) -> Result<(Report, bool)> {
    let cfg = info_config(g)?;
    let results = softprob::table1::evaluate_all(&cfg)?;
    let mut report = Report::new();
    report.preamble(format!(
        "{:>4} {:>4} {:>8} {:>8}  {:<50} {:<32} {:>11} {:>11}  status",
        "x0", "y0", "(a,b)", "(A,B)", "computed", "paper", "d_soft", "d_real_rel"
    ));
    let mut all_ok = true;
    let mut rows = Vec::new();
    for r in &results {
        all_ok &= r.passed();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        report.preamble(format!(
            "{:>4} {:>4} {:>8} {:>8}  {:<50} {:<32} {:>11.3e} {:>11.3e}  {status}",
            r.row.x0,
            r.row.y0,
            format!("({},{})", r.row.x_interval.0, r.row.x_interval.1),
            format!("({},{})", r.row.y_interval.0, r.row.y_interval.1),
            r.computed.to_string(),
            r.row.reference.to_string(),
            r.soft_delta(),
            r.real_relative_delta(),
        ));
        rows.push(json!({
            "x0": r.row.x0,
            "y0": r.row.y0,
            "x_interval": [r.row.x_interval.0, r.row.x_interval.1],
            "y_interval": [r.row.y_interval.0, r.row.y_interval.1],
            "computed": { "soft": r.computed.soft(), "real": r.computed.real() },
            "paper": { "soft": r.row.reference.soft(), "real": r.row.reference.real() },
            "soft_delta": r.soft_delta(),
            "real_delta": r.real_delta(),
            "real_relative_delta": r.real_relative_delta(),
            "soft_tolerance": r.row.soft_tolerance,
            "real_tolerance": r.row.real_tolerance,
            "pass": r.passed(),
        }));
    }
    report.structured("rows", serde_json::Value::Array(rows));
    let passed = results.iter().filter(|r| r.passed()).count();
    report.push("passed", format!("{passed}/{}", results.len()));
    Ok((report, all_ok))
}

fn read_dataset(path: &Path, delimiter: char) -> Result<softprob::Dataset> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    softprob::Dataset::from_delimited(file, delimiter_byte(delimiter)?)
        .with_context(|| format!("reading dataset {}", path.display()))
}

fn delimiter_byte(delimiter: char) -> Result<u8> {
    if !delimiter.is_ascii() {
        bail!("delimiter must be a single ASCII character");
    }
    Ok(delimiter as u8)
}

fn run_tree_predict(model: &Path, data: &Path, delimiter: char) -> Result<Report> {
    let text = fs::read_to_string(model).with_context(|| format!("reading {}", model.display()))?;
    let model = TreeModel::from_json(&text).with_context(|| format!("parsing {}", model.display()))?;
    let file = fs::File::open(data).with_context(|| format!("opening {}", data.display()))?;
    let rows = softprob::Dataset::read_features(file, delimiter_byte(delimiter)?, &model.feature_names)
        .with_context(|| format!("reading {}", data.display()))?;
    let predictions = rows
        .iter()
        .map(|r| model.predict(r))
        .collect::<softprob::Result<Vec<_>>>()?;
    let mut report = Report::new();
    for p in &predictions {
        report.preamble(Coef(*p).to_string());
    }
    report.structured("predictions", json!(predictions));
    Ok(report)
}

fn run(cli: &Cli) -> Result<(String, bool)> {
    let g = &cli.global;
    let (report, ok) = match &cli.command {
        Command::Table1 => run_table1(g)?,
        Command::Ps { dist, joint, event } => {
            (run_ps(g, dist.as_deref(), joint.as_deref(), event)?, true)
        }
        Command::Entropy { dist, set } => {
            let d = load::<DistributionSpec>("distribution", dist)?.build()?;
            let ms: MixedSet = load("set", set)?;
            let h = soft_entropy(d.as_ref(), &ms, &info_config(g)?)?;
            (Report::new().with("entropy", h), true)
        }
        Command::Kld { dist, approx, set } => {
            let d = load::<DistributionSpec>("distribution", dist)?.build()?;
            let a = load::<DistributionSpec>("approximation", approx)?.build()?;
            let ms: MixedSet = load("set", set)?;
            let cfg = info_config(g)?;
            let report = Report::new()
                .with("cross_entropy", soft_cross_entropy(d.as_ref(), a.as_ref(), &ms, &cfg)?)
                .with("kld", soft_kld(d.as_ref(), a.as_ref(), &ms, &cfg)?);
            (report, true)
        }
        Command::Mi { joint, sx, sy, form } => {
            let j = load::<JointSpec>("joint model", joint)?.build()?;
            let sx: MixedSet = load("x set", sx)?;
            let sy: MixedSet = load("y set", sy)?;
            let form = match form {
                Form::Symmetric => MiForm::Symmetric,
                Form::Conditional => MiForm::Conditional,
            };
            let v = soft_mutual_information(&j, &sx, &sy, &info_config(g)?, form)?;
            (Report::new().with("mi", v), true)
        }
        Command::Moments { dist, set } => {
            let d = load::<DistributionSpec>("distribution", dist)?.build()?;
            let ms: MixedSet = load("set", set)?;
            let (q1, _) = quadrature(g)?;
            let (v, m) = soft_variance(d.as_ref(), &ms, &q1)?;
            let report = Report::new()
                .with("expectation", softprob::SoftNumber::try_new(m.nu, m.kappa)?)
                .with("variance", v)
                .with("nu", m.nu)
                .with("kappa", m.kappa)
                .with("gamma1_sq", m.gamma1_sq)
                .with("gamma2", m.gamma2)
                .with("lambda_sq", m.lambda_sq)
                .with("gamma", m.gamma)
                .with("coverage", m.coverage);
            (report, true)
        }
        Command::TreeTrain {
            data,
            delimiter,
            max_depth,
            min_rows,
            seed,
            out,
        } => {
            let ds = read_dataset(data, *delimiter)?;
            let cfg = TreeConfig {
                max_depth: *max_depth,
                min_rows: *min_rows,
                info: info_config(g)?,
                ..TreeConfig::default()
            };
            let model = tree::train(&ds, &cfg, *seed)?;
            let text = model.to_json();
            match out {
                Some(path) => {
                    fs::write(path, format!("{text}\n"))
                        .with_context(|| format!("writing {}", path.display()))?;
                    let report = Report::new()
                        .with("model", path.display().to_string())
                        .with("depth", model.root.depth())
                        .with("leaves", model.root.leaf_count());
                    (report, true)
                }
                None => return Ok((format!("{text}\n"), true)),
            }
        }
        Command::TreePredict {
            model,
            data,
            delimiter,
            seed: _,
        } => (run_tree_predict(model, data, *delimiter)?, true),
    };
    Ok((report.render(g.format), ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
