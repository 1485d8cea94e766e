//! The `shapestar` command line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::calculi::{encode_ma, encode_pi, ma_safety, parse_env, parse_ex_type, parse_ma, parse_pi, pi_safety, MaProcess, PiProcess};
use crate::infer::infer_principal;
use crate::rules::{parse_rules, rewrite_trace, rsa, rsp, RuleSet, Strategy};
use crate::shape::{from_json, to_dot, to_json, to_json_value, ShapePredicate};
use crate::term::{ibn, parse_process, Process};
use crate::typecheck::{parse_pi_context, tma_check, tma_decide, tpi_check, tpi_decide};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "shapestar", version, about = "Process calculi, rewriting rules and shape types")]
pub struct Cli {
    /// Input language; guessed from the file extension (.pi, .ma) when absent.
    #[arg(long, global = true, value_enum)]
    pub calculus: Option<Calculus>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest communication arity in the rule set (default: the input's).
    #[arg(long = "k-max", global = true)]
    pub k_max: Option<usize>,
    /// Rules for the meta calculus: `rsp`, `rsa` or a rule file.
    #[arg(long, global = true)]
    pub rules: Option<String>,
    #[arg(long, global = true, env = "SHAPESTAR_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Calculus {
    Meta,
    Pi,
    Ma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    All,
    First,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Via {
    Direct,
    Shapes,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and print the process and its encoding.
    Parse { input: String },
    /// Run reductions.
    Reduce {
        input: String,
        #[arg(long, value_enum, default_value = "first")]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Print the principal shape type.
    Infer { input: String },
    /// Communication safety from the principal shape type.
    CheckSafety { input: String },
    /// Typability in the simple pi-calculus type system.
    Tpi {
        input: String,
        /// Context such as `a: ch[i], o: i`.
        #[arg(long, default_value = "")]
        ctx: String,
        #[arg(long, value_enum, default_value = "both")]
        via: Via,
    },
    /// Typability in typed mobile ambients.
    Tma {
        input: String,
        /// Environment such as `d: Amb[1]`.
        #[arg(long, default_value = "")]
        env: String,
        /// Exchange type of the whole process.
        #[arg(long = "type", default_value = "Shh")]
        ty: String,
        #[arg(long, value_enum, default_value = "both")]
        via: Via,
    },
    /// Convert a shape graph in JSON to another format.
    Export { input: String },
}

enum Source {
    Meta(Arc<Process>),
    Pi(Arc<PiProcess>),
    Ma(Arc<MaProcess>),
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    stdin: &'a mut dyn Read,
}

type Failure = (i32, String);

fn fail<E: std::fmt::Display>(e: E) -> Failure {
    (EXIT_ERROR, e.to_string())
}

impl Ctx<'_> {
    fn read(&mut self, input: &str) -> Result<String, Failure> {
        if input == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(fail)?;
            Ok(s)
        } else {
            std::fs::read_to_string(input).map_err(|e| fail(format!("{}: {}", input, e)))
        }
    }

    fn calculus(&self, input: &str) -> Calculus {
        self.cli.calculus.unwrap_or_else(|| match Path::new(input).extension().and_then(|e| e.to_str()) {
            Some("pi") => Calculus::Pi,
            Some("ma") => Calculus::Ma,
            _ => Calculus::Meta,
        })
    }

    fn load(&mut self, input: &str) -> Result<Source, Failure> {
        let text = self.read(input)?;
        let src = match self.calculus(input) {
            Calculus::Meta => Source::Meta(parse_process(&text).map_err(fail)?),
            Calculus::Pi => Source::Pi(parse_pi(&text).map_err(fail)?),
            Calculus::Ma => Source::Ma(parse_ma(&text).map_err(fail)?),
        };
        log::debug!("loaded {}", input);
        Ok(src)
    }

    fn rules_for(&mut self, src: &Source, arity: usize) -> Result<RuleSet, Failure> {
        let k = self.cli.k_max.unwrap_or(arity);
        match (&self.cli.rules, src) {
            (Some(r), _) if r == "rsp" => Ok(rsp(k)),
            (Some(r), _) if r == "rsa" => Ok(rsa(k)),
            (Some(path), _) => {
                let text = self.read(path)?;
                parse_rules(&text).map_err(fail)
            }
            (None, Source::Pi(_)) => Ok(rsp(k)),
            (None, _) => Ok(rsa(k)),
        }
    }

    fn meta(&mut self, src: &Source) -> Result<(Arc<Process>, RuleSet), Failure> {
        let (p, arity) = match src {
            Source::Meta(p) => (p.clone(), meta_arity(p)),
            Source::Pi(p) => (encode_pi(p), p.max_arity()),
            Source::Ma(p) => (encode_ma(p).process, p.max_arity()),
        };
        let rules = self.rules_for(src, arity)?;
        Ok((p, rules))
    }

    fn emit(&mut self, text: &str) -> Result<(), Failure> {
        self.out.write_all(text.as_bytes()).map_err(fail)
    }

    fn emit_json(&mut self, v: serde_json::Value) -> Result<(), Failure> {
        let s = serde_json::to_string_pretty(&v).map_err(fail)?;
        self.emit(&format!("{}\n", s))
    }

    fn emit_graph(&mut self, s: &ShapePredicate) -> Result<(), Failure> {
        match self.cli.format {
            Format::Text => self.emit(&s.to_string()),
            Format::Json => self.emit(&format!("{}\n", to_json(s))),
            Format::Dot => self.emit(&to_dot(s)),
        }
    }
}

fn meta_arity(p: &Process) -> usize {
    use crate::term::Element;
    match p {
        Process::Nil => 0,
        Process::Prefix(a, q) => a
            .0
            .iter()
            .map(|e| match e {
                Element::In(xs) => xs.len(),
                Element::Out(ms) => ms.len(),
                Element::Name(_) => 0,
            })
            .max()
            .unwrap_or(0)
            .max(meta_arity(q)),
        Process::Par(a, b) => meta_arity(a).max(meta_arity(b)),
        Process::Nu(_, q) | Process::Bang(q) => meta_arity(q),
    }
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "typable"
    } else {
        "untypable"
    }
}

fn run_command(ctx: &mut Ctx) -> Result<i32, Failure> {
    match &ctx.cli.command {
        Command::Parse { input } => {
            let src = ctx.load(input)?;
            let (p, _) = ctx.meta(&src)?;
            let surface = match &src {
                Source::Meta(q) => q.to_string(),
                Source::Pi(q) => q.to_string(),
                Source::Ma(q) => q.to_string(),
            };
            match ctx.cli.format {
                Format::Json => ctx.emit_json(json!({"process": surface, "encoding": p.to_string()}))?,
                _ => ctx.emit(&format!("{}\n{}\n", surface, p))?,
            }
            Ok(EXIT_OK)
        }
        Command::Reduce { input, strategy, depth } => {
            let src = ctx.load(input)?;
            let (p, rules) = ctx.meta(&src)?;
            let strategy = match strategy {
                StrategyArg::All => Strategy::All,
                StrategyArg::First => Strategy::First,
                StrategyArg::Random => Strategy::Random(ctx.cli.seed),
            };
            let trace = rewrite_trace(&rules, &p, strategy, *depth);
            match ctx.cli.format {
                Format::Json => {
                    let layers: Vec<Vec<String>> = trace.layers.iter().map(|l| l.iter().map(|q| q.to_string()).collect()).collect();
                    ctx.emit_json(json!({"layers": layers, "truncated": trace.truncated}))?;
                }
                _ => {
                    let mut text = String::new();
                    for (i, layer) in trace.layers.iter().enumerate() {
                        for q in layer {
                            text.push_str(&format!("{}: {}\n", i, q));
                        }
                    }
                    if trace.truncated {
                        text.push_str("(truncated)\n");
                    }
                    ctx.emit(&text)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Infer { input } => {
            let src = ctx.load(input)?;
            let (p, rules) = ctx.meta(&src)?;
            let s = infer_principal(&rules, &p).map_err(fail)?;
            ctx.emit_graph(&s)?;
            Ok(EXIT_OK)
        }
        Command::CheckSafety { input } => {
            let src = ctx.load(input)?;
            let (p, rules) = ctx.meta(&src)?;
            let s = infer_principal(&rules, &p).map_err(fail)?;
            let v = match &src {
                Source::Pi(_) => pi_safety(&s, &rules),
                _ => ma_safety(&s, &rules, &ibn(&p)),
            }
            .map_err(fail)?;
            match ctx.cli.format {
                Format::Json => ctx.emit_json(serde_json::to_value(&v).map_err(fail)?)?,
                _ => ctx.emit(&v.to_string())?,
            }
            Ok(if v.safe { EXIT_OK } else { EXIT_FINDINGS })
        }
        Command::Tpi { input, ctx: c, via } => {
            let Source::Pi(p) = ctx.load(input)? else {
                return Err(fail("tpi needs a pi-calculus input"));
            };
            let env = parse_pi_context(c).map_err(fail)?;
            let direct = matches!(via, Via::Direct | Via::Both).then(|| tpi_check(&env, &p));
            let shapes = match via {
                Via::Shapes | Via::Both => Some(tpi_decide(&env, &p).map_err(fail)?),
                Via::Direct => None,
            };
            typing_report(ctx, direct, shapes)
        }
        Command::Tma { input, env, ty, via } => {
            let Source::Ma(p) = ctx.load(input)? else {
                return Err(fail("tma needs an ambient input"));
            };
            let env = parse_env(env).map_err(fail)?;
            let t = parse_ex_type(ty).map_err(fail)?;
            let direct = matches!(via, Via::Direct | Via::Both).then(|| tma_check(&env, &p, &t));
            let shapes = match via {
                Via::Shapes | Via::Both => Some(tma_decide(&env, &p, &t).map_err(fail)?),
                Via::Direct => None,
            };
            typing_report(ctx, direct, shapes)
        }
        Command::Export { input } => {
            let text = ctx.read(input)?;
            let s = from_json(&text).map_err(fail)?;
            match ctx.cli.format {
                Format::Json => ctx.emit_json(to_json_value(&s.renumber()))?,
                _ => ctx.emit_graph(&s)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn typing_report(ctx: &mut Ctx, direct: Option<bool>, shapes: Option<bool>) -> Result<i32, Failure> {
    match ctx.cli.format {
        Format::Json => ctx.emit_json(json!({"direct": direct, "shapes": shapes}))?,
        _ => {
            let mut text = String::new();
            if let Some(d) = direct {
                text.push_str(&format!("direct: {}\n", verdict_word(d)));
            }
            if let Some(s) = shapes {
                text.push_str(&format!("shapes: {}\n", verdict_word(s)));
            }
            ctx.emit(&text)?;
        }
    }
    Ok(match (direct, shapes) {
        (Some(d), Some(s)) if d != s => EXIT_DISAGREE,
        (Some(true), _) | (None, Some(true)) => EXIT_OK,
        _ => EXIT_FINDINGS,
    })
}

/// Runs the command line and returns the exit status. Errors go to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e);
                return EXIT_ERROR;
            }
            let _ = write!(out, "{}", e);
            return EXIT_OK;
        }
    };
    let mut ctx = Ctx { cli: &cli, out, stdin };
    match run_command(&mut ctx) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {}", msg);
            code
        }
    }
}
