//! Command-line front end for the biratlab engines.
//!
//! Every JSON document carries `"format": 1`; rationals are `"p/q"`
//! strings. Exit status is 0 on success, 1 on a domain error and 2 on
//! malformed input, with a JSON error document on the error stream.

pub mod input;
pub mod render;
mod scan;

use biratlab::bounds::{self, DeltaZeroSurface, PolarizedNumerics};
use biratlab::cremona;
use biratlab::lattice::{self, canonical_class, genus_of_class, intersect};
use biratlab::mmp::{self, Strategy};
use biratlab::sing::{self, DEFAULT_DEPTH};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::ffi::OsString;
use std::io::Write;

pub use render::{render_trace, Trace};

/// Version of the JSON documents written by this tool.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit status 2.
    Input(String),
    /// A well-formed request the engines reject; exit status 1.
    Domain(biratlab::Error),
}

impl From<biratlab::Error> for CliError {
    fn from(e: biratlab::Error) -> Self {
        match e {
            biratlab::Error::InvalidInput(m) => CliError::Input(m),
            other => CliError::Domain(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn document(&self) -> Value {
        let (kind, message) = match self {
            CliError::Domain(e) => (e.kind().to_string(), e.to_string()),
            CliError::Input(m) => ("InvalidInput".to_string(), m.clone()),
        };
        json!({ "format": FORMAT_VERSION, "error": { "kind": kind, "message": message } })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    FirstRay,
    PreferBirational,
    PreferFiber,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::FirstRay => Strategy::FirstRay,
            StrategyArg::PreferBirational => Strategy::PreferBirational,
            StrategyArg::PreferFiber => Strategy::PreferFiber,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "biratlab",
    version,
    about = "Exact birational geometry of rational surfaces"
)]
struct Cli {
    /// Output format; `scan` defaults to csv, everything else to json.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection numbers, ampleness and threshold on a surface model.
    Surface(SurfaceArgs),
    /// Extremal rays and the minimal model program.
    Mmp(MmpArgs),
    /// Factor a homaloidal type or an explicit plane map into quadratic maps.
    CremonaFactor(FactorArgs),
    /// Seeded pointwise check that two plane maps agree.
    CremonaVerify(VerifyArgs),
    /// Log canonical threshold of a plane curve germ or a cluster.
    Lct(LctArgs),
    /// Minimal embedded resolution of a plane curve germ at the origin.
    Resolve(ResolveArgs),
    /// Closed-form numeric bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Tabulate a quantity over a parameter range.
    Scan(scan::ScanArgs),
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Model JSON, `@file`, or P2, Bl<r>, Bl<r>special, F<k>.
    #[arg(long)]
    model: String,
    /// Class JSON, coordinate array, or expression such as `3H - E1 - E2`.
    #[arg(long)]
    class: Option<String>,
    /// Second class to pair with `--class`.
    #[arg(long)]
    with: Option<String>,
    /// Nef and ample test against the generators of the effective cone
    #[arg(long)]
    ample: bool,
    /// Largest `m` with `D + mK` effective, for nef `D`
    #[arg(long)]
    threshold: bool,
}

#[derive(Args, Debug)]
struct MmpArgs {
    #[arg(long)]
    model: String,
    #[arg(long, value_enum, default_value = "first-ray")]
    strategy: StrategyArg,
    /// List the extremal rays instead of running the program.
    #[arg(long)]
    rays: bool,
}

#[derive(Args, Debug)]
struct FactorArgs {
    /// `[n, [m1, ...]]`.
    #[arg(long = "type", conflicts_with_all = ["map", "points"], required_unless_present = "map")]
    ty: Option<String>,
    /// Three forms in x0, x1, x2 as a JSON array, or the coefficient-map JSON.
    #[arg(long, requires = "points")]
    map: Option<String>,
    /// Proper base points with multiplicities.
    #[arg(long)]
    points: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    f: String,
    #[arg(long, conflicts_with = "chain", required_unless_present = "chain")]
    g: Option<String>,
    /// Maps in application order; their composite is compared with `--f`.
    #[arg(long)]
    chain: Option<String>,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Also print the 2x2 minors of the component matrix.
    #[arg(long)]
    symbolic: bool,
}

#[derive(Args, Debug)]
struct LctArgs {
    /// Polynomial in x, y, or a sparse map `"i,j" -> "p/q"`.
    #[arg(long, conflicts_with = "cluster", required_unless_present = "cluster")]
    poly: Option<String>,
    /// Cluster JSON `{"points": [{"proximity": [..], "mult": k}, ..]}`.
    #[arg(long)]
    cluster: Option<String>,
    /// Also report whether the pair is log canonical at this coefficient.
    #[arg(long)]
    at: Option<String>,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Args, Debug)]
struct ResolveArgs {
    #[arg(long)]
    poly: String,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Δ-genus `dim + degree - h0`.
    Delta {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        h0: u64,
    },
    /// Match a Δ = 0 surface against the three families.
    Classify {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        h0: u64,
        /// `{"case": "Hirzebruch", "r": 1, "k": 2}` and the like.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Hilbert polynomial of a log Fano and `h^0 = p(1)`.
    Logfano {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        index: String,
    },
    /// Genus `g` and `h^0` of a Mukai variety from `H^n = 2g - 2`
    Mukai {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        dim: Option<u32>,
    },
    /// Classification tag for Fano index `i` in dimension `n`
    FanoIndex {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        index: u32,
    },
    /// Castelnuovo bound on the genus of a degree `d` curve in `P^n`
    Castelnuovo {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
    },
    /// Uniruledness test for `d < 2n - 4`
    Uniruled {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
    },
    /// Denominator bound for the nef value
    Nefvalue {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        v: u64,
    },
}

/// What a command produced: a JSON document, plus text and CSV forms when
/// they differ from the generic ones.
pub(crate) struct Output {
    doc: Value,
    text: Option<String>,
    csv: Option<String>,
}

impl Output {
    fn new(command: &str, body: Value) -> Output {
        let mut map = Map::new();
        map.insert("format".into(), json!(FORMAT_VERSION));
        map.insert("command".into(), json!(command));
        if let Value::Object(fields) = body {
            map.extend(fields);
        }
        Output {
            doc: Value::Object(map),
            text: None,
            csv: None,
        }
    }

    fn with_text(mut self, text: String) -> Output {
        self.text = Some(text);
        self
    }

    pub(crate) fn with_csv(mut self, csv: String) -> Output {
        self.csv = Some(csv);
        self
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Merges the fields of several serialized values into one object.
fn merged(parts: &[Value]) -> Value {
    let mut map = Map::new();
    for p in parts {
        if let Value::Object(m) = p {
            map.extend(m.clone());
        }
    }
    Value::Object(map)
}

fn surface(a: &SurfaceArgs) -> Result<Output, CliError> {
    let model = input::model(&a.model)?;
    let k = canonical_class(&model);
    let mut body = json!({
        "model": to_value(&model),
        "label": model.label(),
        "rank": model.rank(),
        "basis": to_value(&model.basis()),
        "gram": model.gram(),
        "canonical_class": to_value(&k),
        "canonical_square": to_value(&biratlab::exact::Z(intersect(&model, &k, &k)?)),
    });
    let fields = body.as_object_mut().unwrap();
    let class = a
        .class
        .as_deref()
        .map(|c| input::class(&model, c))
        .transpose()?;
    if class.is_none() && (a.with.is_some() || a.ample || a.threshold) {
        return Err(CliError::Input(
            "--with, --ample and --threshold need --class".into(),
        ));
    }
    if let Some(c) = &class {
        fields.insert("class".into(), to_value(c));
        fields.insert("class_text".into(), json!(c.to_string()));
        fields.insert(
            "self_intersection".into(),
            to_value(&biratlab::exact::Z(intersect(&model, c, c)?)),
        );
        fields.insert(
            "canonical_degree".into(),
            to_value(&biratlab::exact::Z(intersect(&model, &k, c)?)),
        );
        fields.insert(
            "genus".into(),
            to_value(&biratlab::exact::Q(genus_of_class(&model, c)?)),
        );
        if let Some(w) = &a.with {
            let d = input::class(&model, w)?;
            fields.insert("with".into(), to_value(&d));
            fields.insert(
                "pairing".into(),
                to_value(&biratlab::exact::Z(intersect(&model, c, &d)?)),
            );
        }
        if a.ample {
            fields.insert("ample".into(), to_value(&lattice::is_ample(&model, c)?));
        }
        if a.threshold {
            fields.insert(
                "threshold".into(),
                to_value(&bounds::sharp_threshold(&model, c)?),
            );
        }
    }
    Ok(Output::new("surface", body))
}

fn mmp_cmd(a: &MmpArgs) -> Result<Output, CliError> {
    let model = input::model(&a.model)?;
    if a.rays {
        let rays = mmp::enumerate_extremal_rays(&model)?;
        let text: String = rays
            .iter()
            .map(|r| format!("{:?} {}\n", r.contraction_kind, r.generator))
            .collect();
        return Ok(Output::new(
            "mmp",
            json!({ "model": to_value(&model), "rays": to_value(&rays) }),
        )
        .with_text(text));
    }
    let trace = mmp::run_mmp(&model, a.strategy.into())?;
    let text = render_trace(&Trace::Mmp(trace.clone()));
    let body = json!({ "final_model": to_value(&trace.final_model()), "trace": to_value(&trace) });
    Ok(Output::new("mmp", body).with_text(text))
}

fn factor(a: &FactorArgs) -> Result<Output, CliError> {
    if let Some(t) = &a.ty {
        let t = input::homaloidal_type(t)?;
        let trace = cremona::factor_type(&t)?;
        let text = render_trace(&Trace::Factorization(trace.clone()));
        return Ok(Output::new(
            "cremona-factor",
            json!({ "type": to_value(&t), "trace": to_value(&trace) }),
        )
        .with_text(text));
    }
    let f = input::plane_map(a.map.as_deref().unwrap())?;
    let points = input::base_points(a.points.as_deref().unwrap())?;
    let (trace, maps) = cremona::factor_map(&f, &points)?;
    let mut text = render_trace(&Trace::Factorization(trace.clone()));
    for (i, m) in maps.iter().enumerate() {
        text.push_str(&format!("factor {}: {m}\n", i + 1));
    }
    let body = json!({
        "map": to_value(&f),
        "trace": to_value(&trace),
        "factors": to_value(&maps),
        "factor_forms": maps.iter().map(|m| m.to_strings().to_vec()).collect::<Vec<_>>(),
    });
    Ok(Output::new("cremona-factor", body).with_text(text))
}

fn verify(a: &VerifyArgs) -> Result<Output, CliError> {
    let f = input::plane_map(&a.f)?;
    let g = match (&a.g, &a.chain) {
        (Some(g), _) => input::plane_map(g)?,
        (None, Some(c)) => {
            let maps = input::plane_maps(c)?;
            let mut total = maps[0].clone();
            for m in &maps[1..] {
                total = cremona::compose(m, &total)?;
            }
            total
        }
        (None, None) => unreachable!("clap requires --g or --chain"),
    };
    let report = cremona::verify_equal(&f, &g, a.trials, a.seed, a.symbolic)?;
    let body = merged(&[
        json!({ "f": to_value(&f), "g": to_value(&g) }),
        to_value(&report),
    ]);
    Ok(Output::new("cremona-verify", body))
}

fn lct_cmd(a: &LctArgs) -> Result<Output, CliError> {
    let cluster = match (&a.poly, &a.cluster) {
        (Some(p), _) => sing::resolve_plane_curve(&input::curve(p)?, a.depth)?,
        (None, Some(c)) => input::cluster(c)?,
        (None, None) => unreachable!("clap requires --poly or --cluster"),
    };
    let report = sing::lct(&cluster)?;
    let mut parts = vec![json!({ "cluster": to_value(&cluster) }), to_value(&report)];
    if let Some(t) = &a.at {
        let t = input::rational(t)?;
        parts.push(json!({ "at": biratlab::exact::format_rational(&t), "lc_at": sing::is_lc_at(&cluster, &t)? }));
    }
    Ok(Output::new("lct", merged(&parts)))
}

fn resolve_cmd(a: &ResolveArgs) -> Result<Output, CliError> {
    let f = input::curve(&a.poly)?;
    let cluster = sing::resolve_plane_curve(&f, a.depth)?;
    let body = json!({
        "poly": f.to_string_with(&["x", "y"]),
        "cluster": to_value(&cluster),
        "blowups": cluster.len(),
        "branches": cluster.branches(),
        "discrepancies": cluster.discrepancies()?,
        "total_multiplicities": cluster.total_multiplicities()?,
    });
    Ok(Output::new("resolve", body))
}

fn bounds_cmd(b: &BoundsCmd) -> Result<Output, CliError> {
    let body = match b {
        BoundsCmd::Delta { dim, degree, h0 } => {
            let p = PolarizedNumerics {
                dim: *dim,
                degree: *degree,
                h0: *h0,
            };
            json!({ "numerics": to_value(&p), "delta": bounds::delta_genus(&p)? })
        }
        BoundsCmd::Classify {
            degree,
            h0,
            witness,
        } => {
            let p = PolarizedNumerics {
                dim: 2,
                degree: *degree,
                h0: *h0,
            };
            let w: Option<DeltaZeroSurface> = witness
                .as_deref()
                .map(|w| {
                    let s = input::read_arg(w)?;
                    serde_json::from_str(&s)
                        .map_err(|e| CliError::Input(format!("bad witness: {e}")))
                })
                .transpose()?;
            let case = bounds::classify_delta_zero_surface(&p, w.as_ref())?;
            json!({ "numerics": to_value(&p), "surface": to_value(&case), "degree": case.degree()? })
        }
        BoundsCmd::Logfano { n, d, index } => to_value(&bounds::logfano_h0(
            *n,
            *d,
            &input::positive_rational(index)?,
        )?),
        BoundsCmd::Mukai { degree, dim } => to_value(&bounds::mukai_numerics(*degree, *dim)?),
        BoundsCmd::FanoIndex { n, index } => {
            json!({ "n": n, "index": index, "tag": to_value(&bounds::fano_index_classify(*n, *index)?) })
        }
        BoundsCmd::Castelnuovo { d, n } => {
            json!({ "d": d, "n": n, "max_genus": bounds::castelnuovo_max_genus(*d, *n)? })
        }
        BoundsCmd::Uniruled { d, n } => to_value(&bounds::uniruled_criterion(*d, *n)?),
        BoundsCmd::Nefvalue { a, n, v } => {
            to_value(&bounds::nefvalue_denominator_bound(*a, *n, *v)?)
        }
    };
    Ok(Output::new("bounds", body))
}

fn dispatch(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Surface(a) => surface(a),
        Command::Mmp(a) => mmp_cmd(a),
        Command::CremonaFactor(a) => factor(a),
        Command::CremonaVerify(a) => verify(a),
        Command::Lct(a) => lct_cmd(a),
        Command::Resolve(a) => resolve_cmd(a),
        Command::Bounds(b) => bounds_cmd(b),
        Command::Scan(a) => scan::run(a),
    }
}

fn write_error(err: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(err, "{}", serde_json::to_string(&e.document()).unwrap());
    e.exit_code()
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            return write_error(err, &CliError::Input(e.to_string().trim_end().to_string()));
        }
    };
    let is_scan = matches!(cli.command, Command::Scan(_));
    let format = cli
        .format
        .unwrap_or(if is_scan { Format::Csv } else { Format::Json });
    let output = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => return write_error(err, &e),
    };
    let rendered = match format {
        Format::Json => serde_json::to_string_pretty(&output.doc).unwrap() + "\n",
        Format::Text => output
            .text
            .clone()
            .unwrap_or_else(|| render::render_document(&output.doc)),
        Format::Csv => match output.csv {
            Some(c) => c,
            None => {
                return write_error(
                    err,
                    &CliError::Input("csv output is only available for scan".into()),
                );
            }
        },
    };
    if out.write_all(rendered.as_bytes()).is_err() {
        return 1;
    }
    0
}
