//! Command-line front end. [`run`] parses the arguments, executes one
//! subcommand and returns the process exit code: 0 on success, 1 when an
//! internal invariant fails, 2 for user or configuration errors.

use crate::age::{
    antichain_search, bounds_enumerate, default_prefix_len, graph_age, jonsson_desk_check,
    word_age, AgeApprox, AntichainReport, BoundCertificate, JonssonReport, DEFAULT_K_MAX,
};
use crate::catalogue::{detect_unavoidable, member, Detection, FamilyId, FamilyKind};
use crate::error::Error;
use crate::graph::{embeds, from_graph6, to_dot, to_graph6, Graph};
use crate::prime::{
    find_nontrivial_module, is_critically_prime, is_prime, prime_level_census,
    schmerl_trotter_pair, HeightTable, HEIGHT_CAP,
};
use crate::realizer::{bichain_to_permutation, build_realizer, validate_realizer};
use crate::verify::{self, render_report, CriterionOutcome, DEFAULT_SEED};
use crate::word_graph::{graph_of_letters, graph_of_word, graph_of_word_forward};
use crate::words::{
    factor_complexity, factors_of, from_ascii, recurrence_bound_of, to_ascii, Ratio, Slope, Word,
    WordSpec, DEFAULT_CF_DEPTH,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable naming the directory for relative output paths.
pub const OUT_DIR_ENV: &str = "PRIMEAGE_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
enum Failure {
    Invariant(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(m) => Failure::Invariant(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn invariant<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Invariant(msg.into()))
}

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
    Graph6,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "primeage",
    version,
    about = "Prime graphs, graphs of 0-1 words, ages and bounds"
)]
pub struct Cli {
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON file of default values keyed by flag name; flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Directory that relative --output paths are resolved against.
    #[arg(long, global = true, env = OUT_DIR_ENV, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Contents of a `--config` file. Keys mirror the long flag names.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub threads: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub length: Option<usize>,
    pub k_max: Option<usize>,
    pub n_max: Option<usize>,
    pub word: Option<WordSpec>,
}

#[derive(Debug, Clone, Default, Args)]
#[group(id = "generator", multiple = false)]
struct Generator {
    /// Fibonacci word, fixed point of 0 -> 01, 1 -> 0.
    #[arg(long)]
    fib: bool,
    /// Thue-Morse word.
    #[arg(long)]
    thue_morse: bool,
    /// Mechanical word with a rational slope such as 2/5.
    #[arg(long, value_name = "A/B")]
    sturmian: Option<Ratio>,
    /// Mechanical word with a continued-fraction slope; "0;2,(1)" is
    /// [0; 2, 1, 1, ...].
    #[arg(long, value_name = "CF")]
    cf: Option<String>,
    /// The given block repeated forever (after --head).
    #[arg(long, value_name = "BITS")]
    periodic: Option<String>,
    /// A finite word.
    #[arg(long, value_name = "BITS")]
    bits: Option<String>,
    /// Fixed point of the substitution 0 -> ZERO, 1 -> ONE.
    #[arg(long, value_name = "ZERO,ONE")]
    substitution: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
struct WordArgs {
    #[command(flatten)]
    generator: Generator,
    /// Intercept of a mechanical word.
    #[arg(long, value_name = "A/B")]
    intercept: Option<Ratio>,
    /// Partial quotients kept from a --cf slope.
    #[arg(long, default_value_t = DEFAULT_CF_DEPTH)]
    cf_depth: usize,
    /// Non-repeating head of a --periodic word.
    #[arg(long, value_name = "BITS", default_value = "")]
    head: String,
    /// Seed of a --substitution word.
    #[arg(long, value_name = "BITS", default_value = "0")]
    start: String,
    /// Complement every letter.
    #[arg(long)]
    complement: bool,
}

#[derive(Debug, Clone, Default, Args)]
#[group(id = "graph_input", multiple = false)]
struct GraphInput {
    /// Graph given inline in graph6.
    #[arg(long, value_name = "STRING")]
    graph6: Option<String>,
    /// File holding one graph in graph6.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prefix, factor complexity and recurrence bounds of a word.
    Word {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        length: Option<usize>,
        /// Largest factor length tabulated.
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Graph of a word prefix.
    Graph {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        length: Option<usize>,
        /// Use the forward construction on labels 0..=length.
        #[arg(long)]
        forward: bool,
    },
    /// Primality, a module witness, criticality and a two-vertex deletion.
    Prime {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Isomorphism classes of small induced subgraphs.
    Age {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        /// Also report the largest antichain in windows of this many levels.
        #[arg(long)]
        antichain_width: Option<usize>,
    },
    /// Minimal excluded graphs of a word graph prefix.
    Bounds {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// Level counts and the cofinality table of the prime members of an age.
    Jonsson {
        #[command(flatten)]
        word: WordArgs,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Consider every member rather than the prime ones.
        #[arg(long)]
        all_members: bool,
    },
    /// Two linear orders realizing the graph of a finite word.
    Realizer {
        /// The word, as 0/1 characters.
        letters: String,
    },
    /// A member of one of the unavoidable prime families.
    Catalogue {
        family: FamilyKind,
        n: usize,
        #[arg(long)]
        complement: bool,
    },
    /// Which unavoidable families occur in a graph.
    Detect {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        n: usize,
        /// Word for the chain-word family (default: Fibonacci).
        #[command(flatten)]
        word: WordArgs,
    },
    /// Number of prime graphs of each order.
    Census {
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Run the acceptance checks and print a pass/fail matrix.
    Verify {
        #[arg(long)]
        seed: Option<u64>,
        /// Run only these criteria, e.g. 1,2,3. Determinism is then skipped.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

impl Generator {
    fn is_empty(&self) -> bool {
        !self.fib
            && !self.thue_morse
            && self.sturmian.is_none()
            && self.cf.is_none()
            && self.periodic.is_none()
            && self.bits.is_none()
            && self.substitution.is_none()
    }
}

/// Parses `"a0;a1,a2,(r1,r2)"`: a head of partial quotients and an optional
/// parenthesized block repeated forever. Surrounding brackets are allowed.
pub fn parse_continued_fraction(text: &str, depth: usize) -> crate::Result<Slope> {
    let bad = || Error::Parameter(format!("malformed continued fraction {text:?}"));
    let s = text.trim().trim_start_matches('[').trim_end_matches(']');
    let (first, rest) = s.split_once(';').unwrap_or((s, ""));
    let (body, repeat) = match rest.find('(') {
        Some(i) => {
            let tail = rest[i + 1..].strip_suffix(')').ok_or_else(bad)?;
            (&rest[..i], tail)
        }
        None => (rest, ""),
    };
    let nums = |part: &str| -> crate::Result<Vec<u64>> {
        part.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect()
    };
    let mut head = vec![first.trim().parse().map_err(|_| bad())?];
    head.extend(nums(body)?);
    let slope = Slope::ContinuedFraction {
        head,
        repeat: nums(repeat)?,
        depth,
    };
    slope.as_fraction()?;
    Ok(slope)
}

impl WordArgs {
    fn spec(&self, fallback: Option<&WordSpec>) -> Outcome<Option<WordSpec>> {
        let g = &self.generator;
        let base = if g.fib {
            Some(Word::fibonacci().spec().clone())
        } else if g.thue_morse {
            Some(Word::thue_morse().spec().clone())
        } else if let Some(r) = g.sturmian {
            Some(WordSpec::Mechanical {
                slope: Slope::Rational(r),
                intercept: self.intercept.unwrap_or(Ratio::ZERO),
            })
        } else if let Some(cf) = &g.cf {
            Some(WordSpec::Mechanical {
                slope: parse_continued_fraction(cf, self.cf_depth)?,
                intercept: self.intercept.unwrap_or(Ratio::ZERO),
            })
        } else if let Some(p) = &g.periodic {
            Some(WordSpec::Periodic {
                head: self.head.clone(),
                period: p.clone(),
            })
        } else if let Some(b) = &g.bits {
            Some(WordSpec::Explicit { bits: b.clone() })
        } else if let Some(s) = &g.substitution {
            let Some((zero, one)) = s.split_once(',') else {
                return usage("--substitution expects ZERO,ONE");
            };
            Some(WordSpec::Substitution {
                zero: zero.into(),
                one: one.into(),
                seed: self.start.clone(),
            })
        } else {
            fallback.cloned()
        };
        Ok(base.map(|spec| {
            if self.complement {
                WordSpec::Complement { of: Box::new(spec) }
            } else {
                spec
            }
        }))
    }

    fn word(&self, cfg: &ConfigFile) -> Outcome<Word> {
        match self.spec(cfg.word.as_ref())? {
            Some(spec) => Ok(Word::new(spec)?),
            None => usage("no word given; use one of --fib, --thue-morse, --sturmian, --cf, --periodic, --bits, --substitution"),
        }
    }
}

impl GraphInput {
    fn is_empty(&self) -> bool {
        self.graph6.is_none() && self.input.is_none()
    }

    fn graph(&self) -> Outcome<Graph> {
        match (&self.graph6, &self.input) {
            (Some(s), _) => Ok(from_graph6(s)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                Ok(from_graph6(&text)?)
            }
            (None, None) => usage("no graph given; use --graph6 or --input"),
        }
    }
}

/// A rendered artifact plus an optional label sidecar.
struct Rendered {
    text: String,
    sidecar: Option<String>,
    exit: i32,
}

impl Rendered {
    fn ok(text: String) -> Self {
        Rendered {
            text,
            sidecar: None,
            exit: EXIT_OK,
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn json<T: Serialize>(value: &T) -> Outcome<String> {
    Ok(with_newline(serde_json::to_string_pretty(value)?))
}

/// Serializes and checks that the text parses back to the same value.
fn json_round_trip<T>(value: &T) -> Outcome<String>
where
    T: Serialize + for<'de> Deserialize<'de> + PartialEq,
{
    let text = json(value)?;
    let back: T = serde_json::from_str(&text)?;
    if back != *value {
        return invariant("JSON output does not parse back to the same value");
    }
    Ok(text)
}

fn unsupported<T>(format: Format, command: &str) -> Outcome<T> {
    usage(format!("format {format:?} is not available for {command}").to_lowercase())
}

#[derive(Serialize, Deserialize, PartialEq)]
struct LabelSidecar {
    graph6: String,
    labels: Vec<i64>,
}

/// Graph output; labeled graphs get a JSON sidecar when written to a file.
fn render_graph(g: &Graph, name: &str, format: Format) -> Outcome<Rendered> {
    let plain = g.clone().without_labels();
    let g6 = to_graph6(&plain);
    if from_graph6(&g6)? != plain {
        return invariant("graph6 output does not decode to the same graph");
    }
    let sidecar = match g.labels() {
        Some(labels) => Some(json_round_trip(&LabelSidecar {
            graph6: g6.clone(),
            labels: labels.to_vec(),
        })?),
        None => None,
    };
    let text = match format {
        Format::Graph6 | Format::Text => with_newline(g6),
        Format::Dot => to_dot(g, name),
        Format::Json => {
            #[derive(Serialize, Deserialize, PartialEq)]
            struct GraphJson {
                graph6: String,
                order: usize,
                labels: Vec<i64>,
                edges: Vec<(i64, i64)>,
            }
            json_round_trip(&GraphJson {
                graph6: g6,
                order: g.order(),
                labels: (0..g.order()).map(|v| g.label(v)).collect(),
                edges: g
                    .edges()
                    .into_iter()
                    .map(|(u, v)| (g.label(u), g.label(v)))
                    .collect(),
            })?
        }
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for (u, v) in g.edges() {
                let _ = writeln!(s, "{},{}", g.label(u), g.label(v));
            }
            s
        }
    };
    Ok(Rendered {
        text,
        sidecar,
        exit: EXIT_OK,
    })
}

#[derive(Serialize, Deserialize, PartialEq)]
struct WordReport {
    word: WordSpec,
    length: usize,
    prefix: String,
    complexity: Vec<usize>,
    recurrence: Vec<Option<usize>>,
}

fn cmd_word(word: &Word, length: usize, n_max: usize, format: Format) -> Outcome<Rendered> {
    let prefix = word.prefix(length)?;
    let complexity = factor_complexity(word, length, n_max)?;
    let recurrence = (1..=n_max)
        .map(|n| recurrence_bound_of(&prefix, n))
        .collect::<crate::Result<Vec<_>>>()?;
    for (n, &p) in (1..=n_max).zip(&complexity) {
        if factors_of(&prefix, n)?.len() != p {
            return invariant("factor complexity disagrees with the factor sets");
        }
    }
    let report = WordReport {
        word: word.spec().clone(),
        length,
        prefix: to_ascii(&prefix),
        complexity,
        recurrence,
    };
    let text = match format {
        Format::Text => {
            let mut s = with_newline(report.prefix.clone());
            let _ = writeln!(s, "n\tp(n)\trecurrence");
            for n in 1..=n_max {
                let m = report.recurrence[n - 1].map_or("-".to_string(), |m| m.to_string());
                let _ = writeln!(s, "{n}\t{}\t{m}", report.complexity[n - 1]);
            }
            s
        }
        Format::Json => json_round_trip(&report)?,
        Format::Csv => {
            let mut s = String::from("n,complexity,recurrence\n");
            for n in 1..=n_max {
                let m = report.recurrence[n - 1].map_or(String::new(), |m| m.to_string());
                let _ = writeln!(s, "{n},{},{m}", report.complexity[n - 1]);
            }
            s
        }
        f => return unsupported(f, "word"),
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize, Deserialize, PartialEq)]
struct PrimeReport {
    graph6: String,
    order: usize,
    prime: bool,
    module: Option<Vec<usize>>,
    critical: Option<bool>,
    /// Two vertices whose deletion leaves a prime graph.
    deletion_pair: Option<(usize, usize)>,
    height: Option<usize>,
}

fn cmd_prime(g: &Graph, format: Format) -> Outcome<Rendered> {
    let g = g.clone().without_labels();
    let witness = find_nontrivial_module(&g)?;
    if let Some(w) = &witness {
        if !w.validates(&g) {
            return invariant("module witness failed validation");
        }
    }
    let prime = witness.is_none();
    if prime != is_prime(&g)? {
        return invariant("primality and module search disagree");
    }
    let (critical, deletion_pair, height) = if prime {
        let pair = schmerl_trotter_pair(&g)?;
        if let Some((c, d)) = pair {
            let rest: Vec<usize> = (0..g.order()).filter(|&v| v != c && v != d).collect();
            if !is_prime(&g.induced_subgraph(&rest)?)? {
                return invariant("deletion pair does not leave a prime graph");
            }
        }
        let height = if g.order() <= HEIGHT_CAP {
            Some(HeightTable::new().prime_height(&g)?.height)
        } else {
            None
        };
        (Some(is_critically_prime(&g)?), pair, height)
    } else {
        (None, None, None)
    };
    let report = PrimeReport {
        graph6: to_graph6(&g),
        order: g.order(),
        prime,
        module: witness.map(|w| w.subset),
        critical,
        deletion_pair,
        height,
    };
    let text = match format {
        Format::Json => json_round_trip(&report)?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "graph6\t{}", report.graph6);
            let _ = writeln!(s, "order\t{}", report.order);
            let _ = writeln!(s, "prime\t{}", report.prime);
            if let Some(m) = &report.module {
                let _ = writeln!(s, "module\t{m:?}");
            }
            if let Some(c) = report.critical {
                let _ = writeln!(s, "critical\t{c}");
            }
            if let Some((c, d)) = report.deletion_pair {
                let _ = writeln!(s, "deletion_pair\t{c},{d}");
            }
            if let Some(h) = report.height {
                let _ = writeln!(s, "height\t{h}");
            }
            s
        }
        f => return unsupported(f, "prime"),
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize, Deserialize, PartialEq)]
struct AgeReport {
    age: AgeApprox,
    antichains: Option<Vec<AntichainReport>>,
}

fn cmd_age(age: AgeApprox, width: Option<usize>, format: Format) -> Outcome<Rendered> {
    if !age.is_hereditary() {
        return invariant("age approximation is not closed under vertex deletion");
    }
    let antichains = width.map(|w| antichain_search(&age, w.max(1)));
    let text = match format {
        Format::Json => json_round_trip(&AgeReport { age, antichains })?,
        Format::Graph6 => age.members().map(|k| format!("{k}\n")).collect(),
        Format::Csv => {
            let mut s = String::from("order,members\n");
            for (k, c) in age.level_sizes().iter().enumerate() {
                let _ = writeln!(s, "{k},{c}");
            }
            s
        }
        Format::Text => {
            let mut s = String::from("order\tmembers\n");
            for (k, c) in age.level_sizes().iter().enumerate() {
                let _ = writeln!(s, "{k}\t{c}");
            }
            for a in antichains.iter().flatten() {
                let _ = writeln!(
                    s,
                    "antichain orders {}..={}: {}",
                    a.lo,
                    a.hi,
                    a.members.len()
                );
            }
            s
        }
        f => return unsupported(f, "age"),
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize, Deserialize, PartialEq)]
struct BoundsReport {
    word: WordSpec,
    length: usize,
    k_max: usize,
    bounds: Vec<BoundCertificate>,
}

fn cmd_bounds(word: &Word, length: usize, k_max: usize, format: Format) -> Outcome<Rendered> {
    let bounds = bounds_enumerate(word, length, k_max)?;
    for b in &bounds {
        if !b.validate(word, length)? {
            return invariant(format!("bound {} failed re-validation", b.key));
        }
    }
    let text = match format {
        Format::Json => json_round_trip(&BoundsReport {
            word: word.spec().clone(),
            length,
            k_max,
            bounds,
        })?,
        Format::Graph6 => bounds.iter().map(|b| format!("{}\n", b.key)).collect(),
        Format::Csv => {
            let mut s = String::from("graph6,order,edges,stable\n");
            for b in &bounds {
                let _ = writeln!(s, "{},{},{},{}", b.key, b.order, b.edges.len(), b.stable);
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{} bounds with at most {k_max} vertices at length {length}\n",
                bounds.len()
            );
            for b in &bounds {
                let stable = if b.stable { "stable" } else { "unstable" };
                let _ = writeln!(s, "{}\t{} vertices\t{stable}", b.key, b.order);
            }
            s
        }
        f => return unsupported(f, "bounds"),
    };
    Ok(Rendered::ok(text))
}

fn cmd_jonsson(report: JonssonReport, format: Format) -> Outcome<Rendered> {
    for row in &report.cofinality {
        if let (None, Some((s, l))) = (row.m, &row.witness) {
            if embeds(&s.to_graph(), &l.to_graph()) {
                return invariant("cofinality witness does in fact embed");
            }
        }
    }
    let text = match format {
        Format::Json => json_round_trip(&report)?,
        Format::Text => {
            let mut s = String::new();
            let kind = if report.prime_only {
                "prime members"
            } else {
                "members"
            };
            let _ = writeln!(s, "{kind} by order: {:?}", report.counts_by_order);
            if report.prime_only {
                let _ = writeln!(s, "{kind} by height: {:?}", report.counts_by_height);
            }
            if report.degenerate {
                let _ = writeln!(s, "degenerate: no prime members beyond order 2");
            }
            for row in &report.cofinality {
                match (&row.m, &row.witness) {
                    (Some(m), _) => {
                        let _ = writeln!(s, "m({}) = {m}", row.n);
                    }
                    (None, Some((a, b))) => {
                        let _ = writeln!(
                            s,
                            "m({}) not found up to {}; {a} does not embed in {b}",
                            row.n, report.k_max
                        );
                    }
                    (None, None) => {
                        let _ = writeln!(s, "m({}) not found up to {}", row.n, report.k_max);
                    }
                }
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("n,m\n");
            for row in &report.cofinality {
                let _ = writeln!(
                    s,
                    "{},{}",
                    row.n,
                    row.m.map_or(String::new(), |m| m.to_string())
                );
            }
            s
        }
        f => return unsupported(f, "jonsson"),
    };
    Ok(Rendered::ok(text))
}

#[derive(Serialize, Deserialize, PartialEq)]
struct RealizerReport {
    word: String,
    first: Vec<i64>,
    second: Vec<i64>,
    permutation: Vec<usize>,
    validated: bool,
}

fn cmd_realizer(letters: &str, format: Format) -> Outcome<Rendered> {
    let bits = from_ascii(letters)?;
    let r = build_realizer(&bits)?;
    let validated = validate_realizer(&r, &graph_of_letters(&bits))?;
    let report = RealizerReport {
        word: letters.to_string(),
        first: r.first.as_slice().to_vec(),
        second: r.second.as_slice().to_vec(),
        permutation: bichain_to_permutation(&r),
        validated,
    };
    let text = match format {
        Format::Json => json_round_trip(&report)?,
        Format::Text => {
            let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            format!(
                "first\t{}\nsecond\t{}\nvalidated\t{validated}\n",
                join(&report.first),
                join(&report.second)
            )
        }
        f => return unsupported(f, "realizer"),
    };
    let exit = if validated { EXIT_OK } else { EXIT_INVARIANT };
    Ok(Rendered {
        text,
        sidecar: None,
        exit,
    })
}

fn cmd_detect(g: &Graph, n: usize, seed: &Word, format: Format) -> Outcome<Rendered> {
    let hits = detect_unavoidable(g, n, seed)?;
    let text = match format {
        Format::Json => json_round_trip(&hits)?,
        Format::Text => {
            let mut s = format!("{} families found at n = {n}\n", hits.len());
            for Detection { family, embedding } in &hits {
                let _ = writeln!(s, "{family}\t{embedding:?}");
            }
            s
        }
        f => return unsupported(f, "detect"),
    };
    Ok(Rendered::ok(text))
}

fn cmd_census(n_max: usize, format: Format) -> Outcome<Rendered> {
    let counts = prime_level_census(n_max)?;
    let text = match format {
        Format::Json => json_round_trip(&counts)?,
        Format::Csv | Format::Text => {
            let sep = if format == Format::Csv { ',' } else { '\t' };
            let mut s = format!("order{sep}primes\n");
            for (n, c) in counts.iter().enumerate() {
                let _ = writeln!(s, "{n}{sep}{c}");
            }
            s
        }
        f => return unsupported(f, "census"),
    };
    Ok(Rendered::ok(text))
}

fn cmd_verify(seed: u64, only: &[u8], format: Format) -> Outcome<Rendered> {
    let outcomes: Vec<CriterionOutcome> = if only.is_empty() {
        verify::run_all(seed)
    } else {
        let mut v = Vec::new();
        for &id in only {
            v.push(match id {
                1 => verify::complement_identity(seed),
                2 => verify::reversal_identity(seed),
                3 => verify::module_oracle(),
                4 => verify::schmerl_trotter(),
                5 => verify::height_inequality(),
                6 => verify::permutation_construction(seed),
                7 => verify::sturmian_diagnostics(),
                8 => verify::factor_age_consistency(),
                9 => verify::bound_certificates(),
                10 => verify::jonsson_check(),
                other => return usage(format!("no criterion {other}; choose from 1 to 10")),
            });
        }
        v
    };
    let text = match format {
        Format::Text => render_report(&outcomes),
        Format::Json => json(&outcomes)?,
        f => return unsupported(f, "verify"),
    };
    let exit = if outcomes.iter().all(|o| o.passed) {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    };
    Ok(Rendered {
        text,
        sidecar: None,
        exit,
    })
}

fn age_source(
    word: &WordArgs,
    input: &GraphInput,
    cfg: &ConfigFile,
    length: usize,
    k_max: usize,
) -> Outcome<AgeApprox> {
    if !input.is_empty() {
        if !word.generator.is_empty() {
            return usage("give either a word or a graph, not both");
        }
        Ok(graph_age(&input.graph()?, k_max)?)
    } else {
        Ok(word_age(&word.word(cfg)?, length, k_max)?)
    }
}

/// Finite words default to their whole length, infinite ones to 20 letters.
fn default_length(w: &Word) -> usize {
    w.spec().finite_len().unwrap_or(20)
}

fn positive(name: &str, v: usize) -> Outcome<usize> {
    if v == 0 {
        usage(format!("{name} must be positive"))
    } else {
        Ok(v)
    }
}

fn execute(command: &Command, cfg: &ConfigFile, format: Option<Format>) -> Outcome<Rendered> {
    let fmt = |default: Format| format.or(cfg.format).unwrap_or(default);
    let k_of = |k: &Option<usize>| positive("k-max", k.or(cfg.k_max).unwrap_or(DEFAULT_K_MAX));
    match command {
        Command::Word {
            word,
            length,
            n_max,
        } => {
            let w = word.word(cfg)?;
            let length = length.or(cfg.length).unwrap_or_else(|| default_length(&w));
            let n_max = n_max.or(cfg.n_max).unwrap_or((length / 2).min(12));
            if 2 * n_max > length {
                return usage("n-max must be at most half the length");
            }
            cmd_word(&w, length, n_max, fmt(Format::Text))
        }
        Command::Graph {
            word,
            length,
            forward,
        } => {
            let w = word.word(cfg)?;
            let length = length.or(cfg.length).unwrap_or_else(|| default_length(&w));
            let g = if *forward {
                graph_of_word_forward(&w, length)?
            } else {
                graph_of_word(&w, length)?
            };
            render_graph(&g, "word_graph", fmt(Format::Graph6))
        }
        Command::Prime { input } => cmd_prime(&input.graph()?, fmt(Format::Json)),
        Command::Age {
            word,
            input,
            length,
            k_max,
            antichain_width,
        } => {
            let k = k_of(k_max)?;
            let length = length.or(cfg.length).unwrap_or(default_prefix_len(k));
            let age = age_source(word, input, cfg, length, k)?;
            cmd_age(age, *antichain_width, fmt(Format::Text))
        }
        Command::Bounds {
            word,
            length,
            k_max,
        } => {
            let k = k_of(k_max)?;
            let length = length.or(cfg.length).unwrap_or(default_prefix_len(k));
            cmd_bounds(&word.word(cfg)?, length, k, fmt(Format::Text))
        }
        Command::Jonsson {
            word,
            input,
            length,
            k_max,
            n_max,
            all_members,
        } => {
            let k = k_of(k_max)?;
            let length = length.or(cfg.length).unwrap_or(default_prefix_len(k));
            let n_max = n_max.or(cfg.n_max).unwrap_or(k);
            let age = age_source(word, input, cfg, length, k)?;
            cmd_jonsson(
                jonsson_desk_check(&age, !all_members, n_max)?,
                fmt(Format::Text),
            )
        }
        Command::Realizer { letters } => cmd_realizer(letters, fmt(Format::Json)),
        Command::Catalogue {
            family,
            n,
            complement,
        } => {
            let id = FamilyId {
                kind: *family,
                complemented: *complement,
            };
            render_graph(
                &member(id, *n)?,
                &id.to_string().replace('-', "_"),
                fmt(Format::Graph6),
            )
        }
        Command::Detect { input, n, word } => {
            let seed = match word.spec(None)? {
                Some(spec) => Word::new(spec)?,
                None => Word::fibonacci(),
            };
            cmd_detect(&input.graph()?, *n, &seed, fmt(Format::Text))
        }
        Command::Census { n_max } => {
            cmd_census(n_max.or(cfg.n_max).unwrap_or(6), fmt(Format::Text))
        }
        Command::Verify { seed, only } => {
            let seed = seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
            cmd_verify(seed, only, fmt(Format::Text))
        }
    }
}

fn write_checked(path: &Path, text: &str) -> Outcome<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    if std::fs::read_to_string(path)? != text {
        return invariant(format!("{} does not read back as written", path.display()));
    }
    Ok(())
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".labels.json");
    PathBuf::from(s)
}

fn load_config(path: Option<&Path>) -> Outcome<ConfigFile> {
    match path {
        None => Ok(ConfigFile::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn run_parsed(cli: &Cli, out: &mut dyn Write) -> Outcome<i32> {
    let cfg = load_config(cli.config.as_deref())?;
    let threads = cli.threads.or(cfg.threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let rendered = pool.install(|| execute(&cli.command, &cfg, cli.format))?;
    let target = cli.output.clone().or_else(|| cfg.output.clone());
    match target {
        None => out.write_all(rendered.text.as_bytes())?,
        Some(path) => {
            let path = match cli.out_dir.clone().or_else(|| cfg.out_dir.clone()) {
                Some(dir) if path.is_relative() => dir.join(path),
                _ => path,
            };
            write_checked(&path, &rendered.text)?;
            if let Some(side) = &rendered.sidecar {
                write_checked(&sidecar_path(&path), side)?;
            }
        }
    }
    Ok(rendered.exit)
}

/// Runs the CLI on `args` (program name first), writing results to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_parsed(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Invariant(m)) => {
            let _ = writeln!(err, "internal invariant violated: {m}");
            EXIT_INVARIANT
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["primeage"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn word_examples() {
        let (code, out, _) = call(&["word", "--sturmian", "1/2", "--length", "12"]);
        assert_eq!((code, out.lines().next()), (0, Some("010101010101")));
        let (_, out, _) = call(&["word", "--fib", "--length", "13"]);
        assert_eq!(out.lines().next(), Some("0100101001001"));
        let (_, out, _) = call(&["word", "--periodic", "10", "--length", "6"]);
        assert_eq!(out.lines().next(), Some("101010"));
    }

    #[test]
    fn continued_fraction_syntax() {
        let s = parse_continued_fraction("[0;2,(1)]", 10).unwrap();
        assert_eq!(
            s,
            Slope::ContinuedFraction {
                head: vec![0, 2],
                repeat: vec![1],
                depth: 10
            }
        );
        assert!(parse_continued_fraction("0;2,(1", 10).is_err());
        assert!(parse_continued_fraction("x", 10).is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["prime", "--graph6", "C~~"]).0, 2);
        assert_eq!(call(&["word", "--length", "5"]).0, 2);
        assert_eq!(call(&["word", "--fib", "--bits", "01"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["census", "--format", "dot"]).0, 2);
    }

    #[test]
    fn prime_of_p4() {
        let (code, out, _) = call(&["prime", "--graph6", "Ch"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["prime"], true);
        assert_eq!(v["critical"], true);
    }
}
