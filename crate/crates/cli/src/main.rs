mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frobenius_core::{ArithProgression, Embedding, Error, Generators, LambdaSpec, MethodChoice, Problem};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use render::{fmt_numeric, record, Quantity};

#[derive(Parser)]
#[command(name = "frobenius", version, about = "Frobenius numbers and gap power sums of numerical semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Least element of the semigroup in each residue class mod the smallest generator
    Apery(Common),
    /// Largest gap
    Frobenius(Common),
    /// Number of gaps
    Genus(Common),
    /// Sum of mu-th powers of the gaps
    PowerSum(Common),
    /// Sum of lambda^n n^mu over the gaps n
    WeightedSum(Common),
    /// List the gaps
    Gaps(Common),
    /// Evaluate every quantity by every applicable method and compare
    Verify(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Comma-separated generators, e.g. 13,16,19,22,25
    #[arg(long, conflicts_with = "ap", required_unless_present = "ap")]
    gens: Option<String>,
    /// Arithmetic progression, e.g. a=13,d=3,k=5
    #[arg(long)]
    ap: Option<String>,
    /// Power exponent (repeatable)
    #[arg(long = "mu")]
    mus: Vec<u32>,
    /// Weight: p/q, root(n,p/q), zeta(n) or elem(minpoly=[...]; coeffs=[...]) (repeatable)
    #[arg(long = "lambda", allow_hyphen_values = true)]
    lambdas: Vec<String>,
    /// auto, apery, closed-form or oracle
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Append a floating-point preview of each value
    #[arg(long)]
    numeric: bool,
    /// Root used for the preview: principal, zeta:N, index:N or near:RE,IM
    #[arg(long)]
    embedding: Option<String>,
}

#[derive(clap::ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::NoConvergence | Error::WrongBranch(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn parse_gens(s: &str) -> Result<Generators, Failure> {
    let values = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| invalid(format!("bad generator {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Generators::new(values)?)
}

fn parse_ap(s: &str) -> Result<ArithProgression, Failure> {
    let (mut a, mut d, mut k) = (None, None, None);
    for part in s.split(',') {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| invalid(format!("expected key=value in {part:?}")))?;
        let val: u64 = val.trim().parse().map_err(|_| invalid(format!("bad number in {part:?}")))?;
        match key.trim() {
            "a" => a = Some(val),
            "d" => d = Some(val),
            "k" => k = Some(val),
            other => return Err(invalid(format!("unknown progression field {other:?}"))),
        }
    }
    match (a, d, k) {
        (Some(a), Some(d), Some(k)) => Ok(ArithProgression::new(a, d, k)?),
        _ => Err(invalid("--ap needs a=, d= and k=")),
    }
}

fn parse_embedding(s: &str) -> Result<Embedding, Failure> {
    let bad = || invalid(format!("bad embedding {s:?}"));
    if s == "principal" {
        return Ok(Embedding::PrincipalReal);
    }
    let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "zeta" => Ok(Embedding::RootOfUnity(arg.parse().map_err(|_| bad())?)),
        "index" => Ok(Embedding::Index(arg.parse().map_err(|_| bad())?)),
        "near" => {
            let (re, im) = arg.split_once(',').ok_or_else(bad)?;
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            Ok(Embedding::Near(Complex64::new(re, im)))
        }
        _ => Err(bad()),
    }
}

/// A single line of output.
struct Line {
    query: Map<String, Value>,
    label: String,
    method: String,
    value: Quantity,
    embedding: Embedding,
}

struct Ctx {
    problem: Problem,
    choice: MethodChoice,
    common: Common,
}

impl Ctx {
    fn new(common: Common) -> Result<Self, Failure> {
        let choice: MethodChoice = common.method.parse()?;
        let problem = match (&common.gens, &common.ap) {
            (Some(g), _) => Problem::from_generators(parse_gens(g)?),
            (None, Some(ap)) => Problem::from_progression(parse_ap(ap)?),
            (None, None) => return Err(invalid("one of --gens or --ap is required")),
        };
        Ok(Ctx { problem, choice, common })
    }

    fn mus(&self, default: &[u32]) -> Vec<u32> {
        let mut mus = if self.common.mus.is_empty() { default.to_vec() } else { self.common.mus.clone() };
        mus.sort_unstable();
        mus.dedup();
        mus
    }

    fn embedding_or(&self, fallback: Embedding) -> Result<Embedding, Failure> {
        self.common.embedding.as_deref().map(parse_embedding).unwrap_or(Ok(fallback))
    }

    fn query(&self, command: &str) -> Map<String, Value> {
        let mut q = Map::new();
        q.insert("command".into(), json!(command));
        if let Some(ap) = self.problem.progression() {
            q.insert("ap".into(), json!({ "a": ap.a(), "d": ap.d(), "k": ap.k() }));
        }
        q.insert("method".into(), json!(self.common.method));
        q
    }

    fn power_sums(&self) -> Result<Vec<Line>, Failure> {
        let mus = self.mus(&[1]);
        let embedding = self.embedding_or(Embedding::Index(0))?;
        mus.par_iter()
            .map(|&mu| {
                let (v, method) = self.problem.power_sum(mu, self.choice)?;
                let mut query = self.query("power-sum");
                query.insert("mu".into(), json!(mu));
                Ok(Line { query, label: format!("s_{mu}"), method: method.to_string(), value: Quantity::Int(v), embedding })
            })
            .collect()
    }

    fn weighted_sums(&self) -> Result<Vec<Line>, Failure> {
        if self.common.lambdas.is_empty() {
            return Err(invalid("weighted-sum needs --lambda"));
        }
        let mus = self.mus(&[1]);
        let mut out = Vec::new();
        for text in &self.common.lambdas {
            let spec = LambdaSpec::parse(text)?;
            let lambda = match spec.to_element() {
                Err(Error::LambdaIsOne) => {
                    eprintln!("warning: lambda = 1 gives the unweighted sum; running power-sum instead");
                    out.extend(self.power_sums()?);
                    continue;
                }
                other => other?,
            };
            let embedding = self.embedding_or(spec.default_embedding())?;
            let lines: Vec<Line> = mus
                .par_iter()
                .map(|&mu| {
                    let (v, method) = self.problem.weighted_sum(mu, &lambda, self.choice)?;
                    let mut query = self.query("weighted-sum");
                    query.insert("mu".into(), json!(mu));
                    query.insert("lambda".into(), json!(spec.to_string()));
                    Ok(Line {
                        query,
                        label: format!("s_{mu}^({spec})"),
                        method: method.to_string(),
                        value: Quantity::Elem(v),
                        embedding,
                    })
                })
                .collect::<Result<_, Failure>>()?;
            out.extend(lines);
        }
        Ok(out)
    }

    fn scalar(&self, command: &str, label: &str, value: Quantity, method: String) -> Result<Vec<Line>, Failure> {
        let embedding = self.embedding_or(Embedding::Index(0))?;
        Ok(vec![Line { query: self.query(command), label: label.into(), method, value, embedding }])
    }

    fn emit(&self, lines: &[Line]) {
        let gens = self.problem.generators().values();
        for line in lines {
            let numeric = if self.common.numeric { line.value.numeric(&line.embedding) } else { None };
            match self.common.format {
                Format::Json => {
                    let rec = record(gens, line.query.clone(), &line.method, line.value.json(), numeric);
                    println!("{rec}");
                }
                Format::Text => {
                    let mut s = format!("{} = {}  [{}]", line.label, line.value.text(), line.method);
                    if let Some(z) = numeric {
                        s.push_str(&format!("  ~ {}", fmt_numeric(z)));
                    }
                    println!("{s}");
                }
            }
        }
    }

    fn verify(&self) -> Result<bool, Failure> {
        let mus = self.mus(&[1, 2, 3, 4, 5]);
        let lambdas = self
            .common
            .lambdas
            .iter()
            .map(|t| LambdaSpec::parse(t))
            .collect::<Result<Vec<_>, _>>()?;
        for spec in &lambdas {
            spec.to_element()?;
        }
        let checks = self.problem.verify(&mus, &lambdas)?;
        let gens = self.problem.generators().values();
        let mut all = true;
        for check in &checks {
            let ok = check.agrees();
            all &= ok;
            match self.common.format {
                Format::Json => {
                    let values: Map<String, Value> =
                        check.values.iter().map(|(m, v)| (m.to_string(), json!(v))).collect();
                    let rec = json!({
                        "generators": gens,
                        "query": { "command": "verify", "quantity": check.quantity },
                        "agree": ok,
                        "values": values,
                    });
                    println!("{rec}");
                }
                Format::Text if ok => {
                    let methods: Vec<String> = check.values.iter().map(|(m, _)| m.to_string()).collect();
                    println!("ok {}: {}  [{}]", check.quantity, check.values[0].1, methods.join(", "));
                }
                Format::Text => {
                    println!("MISMATCH {}:", check.quantity);
                    for (m, v) in &check.values {
                        println!("  {m}: {v}");
                    }
                }
            }
        }
        Ok(all)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let (name, common) = match cli.command {
        Command::Apery(c) => ("apery", c),
        Command::Frobenius(c) => ("frobenius", c),
        Command::Genus(c) => ("genus", c),
        Command::PowerSum(c) => ("power-sum", c),
        Command::WeightedSum(c) => ("weighted-sum", c),
        Command::Gaps(c) => ("gaps", c),
        Command::Verify(c) => ("verify", c),
    };
    let ctx = Ctx::new(common)?;
    let lines = match name {
        "apery" => {
            let (table, method) = ctx.problem.apery_with(ctx.choice)?;
            ctx.scalar(name, "m", Quantity::Ints(table.residues().to_vec()), method.to_string())?
        }
        "frobenius" => {
            let (g, method) = ctx.problem.frobenius(ctx.choice)?;
            ctx.scalar(name, "g", Quantity::Int(g.into()), method.to_string())?
        }
        "genus" => {
            let (n, method) = ctx.problem.genus(ctx.choice)?;
            ctx.scalar(name, "n", Quantity::Int(n), method.to_string())?
        }
        "power-sum" => ctx.power_sums()?,
        "weighted-sum" => ctx.weighted_sums()?,
        "gaps" => {
            let gaps = ctx.problem.gaps().gaps().to_vec();
            ctx.scalar(name, "gaps", Quantity::Ints(gaps), "oracle".into())?
        }
        _ => {
            let ok = ctx.verify()?;
            return Ok(if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: methods disagree");
                ExitCode::from(3)
            });
        }
    };
    ctx.emit(&lines);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
