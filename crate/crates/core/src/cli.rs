//! The `cstar` command line: parse pairs and zigzags, run a pipeline, print the
//! result as bracket text, JSON, DOT or ASCII.

use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::classify::{
    dg_actions, extended_graph, is_gizatullin, is_toric_pair, picard_rank_of_pair,
    smooth_hyperbolic_zigzag_test, smooth_zigzag_contractibility_test, ClassifyError,
    RulingReading,
};
use crate::corpus::{corpus, CorpusConfig};
use crate::dpd::{
    elliptic_boundary, parabolic_boundary, resolve_fiber, resolved_boundary,
    resolved_boundary_zigzag, singularity_types, BaseCurve, DpdError, DpdPair, QDivisor,
};
use crate::graph::{GraphError, WeightedGraph};
use crate::render;
use crate::standard::{standardize, standardize_with, StandardizeOptions};
use crate::zigzag::Zigzag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    /// Bracket notation or a short report.
    #[default]
    Text,
    Json,
    Dot,
    Ascii,
}

#[derive(Debug, Parser)]
#[command(name = "cstar", version, about = "Boundary zigzags and extended graphs of C*-surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Inline JSON or bracket string, a file path, or `-` for stdin.
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct Sampling {
    /// Seed for random sweeps.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random samples.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resolved boundary of the natural completion of a DPD pair.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Standard form of a zigzag, with the transformation log in JSON.
    Standardize {
        #[command(flatten)]
        input: Input,
        /// Stop at a semistandard form.
        #[arg(long)]
        semistandard: bool,
    },
    /// Gizatullin/toric/smooth-boundary verdicts for a pair or a standard zigzag.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Compare the two smoothness criteria on every standard zigzag in range.
        #[arg(long)]
        sweep: bool,
        /// Largest index `n` in `[[0,0,w2,...,wn]]` for the sweep.
        #[arg(long, default_value_t = 7)]
        max_length: usize,
        /// Largest `|w|` for the sweep.
        #[arg(long, default_value_t = 6)]
        max_weight: i64,
    },
    /// Extended graph (standard zigzag plus feathers) of a Gizatullin pair.
    Extended {
        #[command(flatten)]
        input: Input,
    },
    /// The C*-actions on the Danilov-Gizatullin surface `V_{k+1}`.
    Dg {
        #[arg(long)]
        k: u64,
        /// Use `k+1-r` instead of `k+r-1` in `div(v-)`.
        #[arg(long)]
        symmetric_ruling: bool,
    },
    /// Resolved fiber over one point.
    Fiber {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        point: String,
    },
    /// Boundary for a parabolic action: `{"base": ..., "d": {...}}`.
    Parabolic {
        #[command(flatten)]
        input: Input,
    },
    /// Boundary for an elliptic action: `{"genus": g, "d": {...}}`.
    Elliptic {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> CliError {
        match e {
            GraphError::Parse(m) => CliError::Parse(m),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<DpdError> for CliError {
    fn from(e: DpdError) -> CliError {
        match e {
            DpdError::Parse(m) => CliError::Parse(m),
            DpdError::Graph(g) => g.into(),
            e => CliError::Domain(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> CliError {
        match e {
            ClassifyError::Dpd(d) => d.into(),
            ClassifyError::Graph(g) => g.into(),
            e => CliError::Domain(e.to_string()),
        }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, CliError> {
    let raw = input
        .input
        .as_deref()
        .ok_or_else(|| CliError::Parse("missing input".into()))?;
    if raw == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| CliError::Parse(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    let looks_inline = raw.trim_start().starts_with(['{', '[', '(']);
    if !looks_inline && Path::new(raw).is_file() {
        return std::fs::read_to_string(raw).map_err(|e| CliError::Parse(format!("{raw}: {e}")));
    }
    Ok(raw.to_string())
}

fn parse_pair(s: &str) -> Result<DpdPair, CliError> {
    Ok(DpdPair::from_json(s)?)
}

fn parse_zigzag(s: &str) -> Result<Zigzag, CliError> {
    s.trim().parse::<Zigzag>().map_err(|e| CliError::Parse(e.to_string()))
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn unsupported(format: Format, verb: &str) -> CliError {
    CliError::Parse(format!("--format {format:?} is not available for {verb}").to_lowercase())
}

fn emit_graph(g: &WeightedGraph, zigzag: Option<&Zigzag>, format: Format, name: &str) -> String {
    match format {
        Format::Text => match zigzag {
            Some(z) => format!("{z}\n"),
            None => render::graph_ascii(g),
        },
        Format::Json => json_text(&json!({ "graph": g, "zigzag": zigzag })),
        Format::Dot => render::to_dot(g, name),
        Format::Ascii => render::graph_ascii(g),
    }
}

fn emit_zigzag(z: &Zigzag, format: Format, name: &str) -> String {
    match format {
        Format::Text => format!("{z}\n"),
        Format::Json => json_text(z),
        Format::Dot => render::zigzag_dot(z, name),
        Format::Ascii => render::zigzag_ascii(z),
    }
}

fn resolve_json(p: &DpdPair) -> Result<Value, CliError> {
    let z = resolved_boundary_zigzag(p)?;
    let standard = match &z {
        Some(z) => standardize(z).ok().map(|(s, _)| s),
        None => None,
    };
    Ok(json!({
        "pair": p,
        "graph": resolved_boundary(p)?,
        "zigzag": z,
        "standard": standard,
    }))
}

fn resolve(p: &DpdPair, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return Ok(json_text(&resolve_json(p)?));
    }
    let g = resolved_boundary(p)?;
    let z = resolved_boundary_zigzag(p)?;
    Ok(emit_graph(&g, z.as_ref(), format, "boundary"))
}

fn classify_pair(p: &DpdPair) -> Result<Value, CliError> {
    let giz = is_gizatullin(p);
    let toric = if p.base.is_affine_line() { Some(is_toric_pair(p)?) } else { None };
    let singularities: serde_json::Map<String, Value> = singularity_types(p)?
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    let mut out = json!({
        "gizatullin": giz,
        "toric": toric,
        "singularities": singularities,
    });
    if giz {
        let boundary = resolved_boundary_zigzag(p)?.expect("Gizatullin boundary is a zigzag");
        let (std, _) = standardize(&boundary)?;
        out["standard_zigzag"] = json!(std.to_string());
        out["smooth_zigzag"] = smooth_report(&std)?;
        out["picard_rank"] = match picard_rank_of_pair(p) {
            Ok(r) => json!(r),
            Err(ClassifyError::NegativeRank(r)) => json!({ "degenerate": r }),
            Err(e) => return Err(e.into()),
        };
    }
    Ok(out)
}

fn smooth_report(z: &Zigzag) -> Result<Value, CliError> {
    let a = smooth_hyperbolic_zigzag_test(z)?;
    let c = smooth_zigzag_contractibility_test(z)?;
    Ok(json!({
        "verdict": a.verdict,
        "form": a.form,
        "witness": { "matches": a.matches, "reason": a.reason },
        "contractibility": c,
    }))
}

fn sweep(max_length: usize, max_weight: i64) -> Result<Value, CliError> {
    let mut total = 0u64;
    let mut smooth = 0u64;
    let mut disagreements = Vec::new();
    for len in 1..max_length {
        let mut tail = vec![-2i64; len];
        loop {
            let mut w = vec![0, 0];
            w.extend(&tail);
            let z = Zigzag::linear(w);
            let a = smooth_hyperbolic_zigzag_test(&z)?.verdict;
            let c = smooth_zigzag_contractibility_test(&z)?.verdict;
            total += 1;
            smooth += u64::from(a);
            if a != c {
                disagreements.push(z.to_string());
            }
            // odometer over [-max_weight, -2]
            let mut i = 0;
            while i < len && tail[i] == -max_weight {
                tail[i] = -2;
                i += 1;
            }
            if i == len {
                break;
            }
            tail[i] -= 1;
        }
    }
    Ok(json!({
        "zigzags": total,
        "smooth": smooth,
        "criteria_agree": disagreements.is_empty(),
        "disagreements": disagreements,
    }))
}

#[derive(Deserialize)]
struct ParabolicInput {
    #[serde(default)]
    base: BaseCurve,
    #[serde(default)]
    d: QDivisor,
}

#[derive(Deserialize)]
struct EllipticInput {
    #[serde(default)]
    genus: u32,
    #[serde(default)]
    d: QDivisor,
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Resolve { input, sampling } => {
            if input.input.is_none() {
                let n = sampling.samples.unwrap_or(10);
                let pairs = corpus(sampling.seed, n, &CorpusConfig::default());
                if format == Format::Json {
                    let rows = pairs.iter().map(resolve_json).collect::<Result<Vec<_>, _>>()?;
                    return Ok(json_text(&rows));
                }
                let mut out = String::new();
                for p in &pairs {
                    if format == Format::Text {
                        out.push_str(&serde_json::to_string(p).expect("serializable"));
                        out.push('\n');
                    }
                    out.push_str(&resolve(p, format)?);
                }
                return Ok(out);
            }
            resolve(&parse_pair(&read_input(input, stdin)?)?, format)
        }
        Command::Standardize { input, semistandard } => {
            let z = parse_zigzag(&read_input(input, stdin)?)?;
            let (s, log) = standardize_with(&z, StandardizeOptions { semistandard: *semistandard })?;
            if format == Format::Json {
                return Ok(json_text(&json!({ "input": z, "standard": s, "log": log })));
            }
            Ok(emit_zigzag(&s, format, "standard"))
        }
        Command::Classify { input, sweep: do_sweep, max_length, max_weight } => {
            if matches!(format, Format::Dot | Format::Ascii) {
                return Err(unsupported(format, "classify"));
            }
            let v = if *do_sweep {
                sweep(*max_length, (*max_weight).max(2))?
            } else {
                let s = read_input(input, stdin)?;
                if s.trim_start().starts_with('{') {
                    classify_pair(&parse_pair(&s)?)?
                } else {
                    let z = parse_zigzag(&s)?;
                    json!({ "smooth_zigzag": smooth_report(&z)? })
                }
            };
            Ok(json_text(&v))
        }
        Command::Extended { input } => {
            let p = parse_pair(&read_input(input, stdin)?)?;
            let e = extended_graph(&p)?;
            Ok(match format {
                Format::Json => json_text(&e),
                Format::Dot => render::to_dot(&e.to_graph()?, "extended"),
                Format::Text | Format::Ascii => render::extended_ascii(&e),
            })
        }
        Command::Dg { k, symmetric_ruling } => {
            if *k == 0 {
                return Err(CliError::Domain("k must be at least 1".into()));
            }
            let reading = if *symmetric_ruling { RulingReading::Symmetric } else { RulingReading::Verbatim };
            let mut rows = Vec::new();
            let mut text = String::new();
            for a in dg_actions(*k, reading) {
                let boundary = resolved_boundary_zigzag(&a.pair)?.expect("DG boundary is a zigzag");
                let (std, _) = standardize(&boundary)?;
                let rank = picard_rank_of_pair(&a.pair)?;
                text.push_str(&format!(
                    "r={}: D+ = {}, D- = {}, boundary {boundary}, standard {std}, rank {rank}\n",
                    a.r, a.pair.d_plus, a.pair.d_minus
                ));
                rows.push(json!({
                    "k": a.k, "r": a.r, "pair": a.pair, "boundary": boundary,
                    "standard": std, "picard_rank": rank, "rulings": a.rulings,
                }));
            }
            match format {
                Format::Json => Ok(json_text(&rows)),
                Format::Text => Ok(text),
                f => Err(unsupported(f, "dg")),
            }
        }
        Command::Fiber { input, point } => {
            let p = parse_pair(&read_input(input, stdin)?)?;
            let f = resolve_fiber(&p, point)?;
            if format == Format::Json {
                return Ok(json_text(&f));
            }
            Ok(emit_zigzag(&f.zigzag(), format, "fiber"))
        }
        Command::Parabolic { input } => {
            let inp: ParabolicInput = parse_json(&read_input(input, stdin)?)?;
            let g = parabolic_boundary(&inp.d, &inp.base)?;
            let z = Zigzag::from_graph(&g).filter(|_| inp.base.genus == 0);
            Ok(emit_graph(&g, z.as_ref(), format, "parabolic"))
        }
        Command::Elliptic { input } => {
            let inp: EllipticInput = parse_json(&read_input(input, stdin)?)?;
            let g = elliptic_boundary(&inp.d, inp.genus)?;
            let z = Zigzag::from_graph(&g).filter(|_| inp.genus == 0);
            Ok(emit_graph(&g, z.as_ref(), format, "elliptic"))
        }
    }
}

/// Parse `args` (including the program name), run, write to `out`/`err`, and
/// return the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
