//! The `cag` command line. [`run`] never panics and returns the exit code
//! together with everything that would be written to stdout and stderr.

use std::fmt::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use cag_core::{
    check_mutual_inverse, classify_rigidity, decompose, is_variety_iso, retract, transfer_iso, GroupPresentation,
    VarietyMorphism,
};

use crate::diag::{DiagKind, Diagnostic, Span};
use crate::elab::{check, point_text, resolve_group, resolve_point, NamedMorphism, Program};
use crate::json;
use crate::parser::{parse_group_expr, parse_point};
use crate::print::{compact_tuple, morphisms_source, to_text};
use crate::selftest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cag", version, about = "Exact computations with morphisms of split commutative algebraic groups")]
struct Cli {
    /// Source file (`.cag` or JSON); `-` reads standard input.
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the input and report diagnostics.
    Validate,
    /// `A ∘ B`.
    Compose { a: String, b: String },
    /// `A + B` in the group of morphisms.
    Add { a: String, b: String },
    /// Homomorphism retraction of a pointed morphism.
    Retract { f: Option<String> },
    /// Translation, homomorphism and torus residue parts.
    Decompose { f: Option<String> },
    /// Variety isomorphism test, or a mutual-inverse check when G is given.
    CheckIso { f: Option<String>, g: Option<String> },
    /// Rigidity verdict for a group expression.
    Classify { group: String },
    /// Pointed automorphism that is not a homomorphism, with its inverse.
    Counterexample { group: String },
    /// Value of a morphism at a point such as `x1 = 2, y1 = 3, E = [P, 0]`.
    Eval {
        f: Option<String>,
        #[arg(long)]
        at: String,
    },
    /// Randomized self-checks of the engine's laws.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: 0, stdout, stderr: String::new() }
    }

    fn diagnostics(diags: &[Diagnostic], origin: &str) -> Self {
        let mut stderr = String::new();
        for d in diags {
            let _ = writeln!(stderr, "{origin}:{}: error[{}]: {}", d.span, d.kind.as_str(), d.message);
        }
        Output { code: 1, stdout: String::new(), stderr }
    }
}

/// Runs the CLI on `args` (including the program name). Standard input is
/// only read for `--input -`.
pub fn run<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Output::ok(text),
                _ => Output { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match catch_unwind(AssertUnwindSafe(|| execute(&cli))) {
        Ok(out) => out,
        Err(_) => Output { code: 1, stdout: String::new(), stderr: "internal error: the engine panicked\n".into() },
    }
}

struct Session {
    program: Program,
    origin: String,
}

type Step<T> = Result<T, Output>;

fn usage(msg: impl Into<String>) -> Output {
    Output { code: 2, stdout: String::new(), stderr: format!("usage error: {}\n", msg.into()) }
}

fn load(cli: &Cli) -> Step<Session> {
    let Some(path) = &cli.input else {
        return Err(usage("this command needs --input FILE"));
    };
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| usage(format!("cannot read standard input: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?
    };
    let origin = if path == "-" { "<stdin>".to_string() } else { path.clone() };
    let program = if text.trim_start().starts_with('{') { json::ingest(&text) } else { check(&text) };
    program.map(|program| Session { program, origin: origin.clone() }).map_err(|d| Output::diagnostics(&d, &origin))
}

impl Session {
    fn empty() -> Self {
        Session { program: Program::default(), origin: "<args>".into() }
    }

    fn morphism(&self, name: Option<&str>) -> Step<&NamedMorphism> {
        match name {
            Some(n) => self.program.morphism(n).ok_or_else(|| usage(format!("no morphism named `{n}` in {}", self.origin))),
            None => match self.program.morphisms.as_slice() {
                [only] => Ok(only),
                [] => Err(usage(format!("{} declares no morphism", self.origin))),
                _ => Err(usage(format!("{} declares several morphisms; name one", self.origin))),
            },
        }
    }

    fn engine(&self, at: Span, e: cag_core::Error) -> Output {
        Output::diagnostics(&[Diagnostic::new(DiagKind::Engine, at, e.to_string())], &self.origin)
    }

    fn group(&self, src: &str) -> Step<GroupPresentation> {
        let origin = "<group>";
        let expr = parse_group_expr(src).map_err(|d| Output::diagnostics(&d, origin))?;
        resolve_group(&expr.node, &self.program.groups).map(|(g, _)| g).map_err(|d| Output::diagnostics(&d, origin))
    }
}

fn morphism_out(format: Format, items: &[(&str, &VarietyMorphism)]) -> String {
    match format {
        Format::Text => to_text(&morphisms_source(items)),
        Format::Json if items.len() == 1 => json::pretty(&json::morphism_json(items[0].1)),
        Format::Json => json::pretty(&serde_json::Value::Object(
            items.iter().map(|(n, f)| (n.to_string(), json::morphism_json(f))).collect(),
        )),
    }
}

fn execute(cli: &Cli) -> Output {
    match body(cli) {
        Ok(out) | Err(out) => out,
    }
}

fn body(cli: &Cli) -> Step<Output> {
    let fmt = cli.format;
    let session = || if cli.input.is_some() { load(cli) } else { Ok(Session::empty()) };
    Ok(match &cli.command {
        Command::Validate => {
            let s = load(cli)?;
            let p = &s.program;
            Output::ok(match fmt {
                Format::Json => json::pretty(&json::program_json(p)),
                Format::Text => format!(
                    "ok: {} group(s), {} point(s), {} morphism(s)\n",
                    p.groups.len(),
                    p.points.len(),
                    p.morphisms.len()
                ),
            })
        }
        Command::Compose { a, b } | Command::Add { a, b } => {
            let s = load(cli)?;
            let (fa, fb) = (s.morphism(Some(a))?, s.morphism(Some(b))?);
            let composing = matches!(cli.command, Command::Compose { .. });
            let result = if composing { fa.morphism.compose(&fb.morphism) } else { fa.morphism.add(&fb.morphism) };
            let result = result.map_err(|e| s.engine(fa.span, e))?;
            let name = format!("{}_{a}_{b}", if composing { "compose" } else { "add" });
            Output::ok(morphism_out(fmt, &[(&name, &result)]))
        }
        Command::Retract { f } => {
            let s = load(cli)?;
            let nm = s.morphism(f.as_deref())?;
            let psi = retract(&nm.morphism).map_err(|e| s.engine(nm.span, e))?;
            Output::ok(morphism_out(fmt, &[(&format!("retract_{}", nm.name), psi.as_morphism())]))
        }
        Command::Decompose { f } => {
            let s = load(cli)?;
            let nm = s.morphism(f.as_deref())?;
            let d = decompose(&nm.morphism).map_err(|e| s.engine(nm.span, e))?;
            Output::ok(match fmt {
                Format::Json => json::pretty(&json::decomposition_json(&d)),
                Format::Text => morphism_out(fmt, &[("tau", &d.tau), ("psi", d.psi.as_morphism()), ("chi", &d.chi)]),
            })
        }
        Command::CheckIso { f, g: Some(g) } => {
            let s = load(cli)?;
            let (nf, ng) = (s.morphism(f.as_deref())?, s.morphism(Some(g))?);
            let inverse = check_mutual_inverse(&nf.morphism, &ng.morphism).map_err(|e| s.engine(nf.span, e))?;
            let transferred = if inverse {
                Some(transfer_iso(&nf.morphism, &ng.morphism).map_err(|e| s.engine(nf.span, e))?)
            } else {
                None
            };
            Output::ok(match (fmt, transferred) {
                (Format::Json, t) => json::pretty(&json!({
                    "mutually_inverse": inverse,
                    "iso": t.as_ref().map(|t| json::morphism_json(t.iso.as_morphism())),
                    "inverse": t.as_ref().map(|t| json::morphism_json(t.inverse.as_morphism())),
                })),
                (Format::Text, Some(t)) => format!(
                    "mutually inverse; induced group isomorphism:\n{}",
                    to_text(&morphisms_source(&[("iso", t.iso.as_morphism()), ("iso_inverse", t.inverse.as_morphism())]))
                ),
                (Format::Text, None) => "not mutually inverse\n".into(),
            })
        }
        Command::CheckIso { f, g: None } => {
            let s = load(cli)?;
            let nf = s.morphism(f.as_deref())?;
            let v = is_variety_iso(&nf.morphism).map_err(|e| s.engine(nf.span, e))?;
            Output::ok(match (fmt, &v.inverse) {
                (Format::Json, inv) => json::pretty(&json!({
                    "is_iso": v.is_iso,
                    "psi": v.decomposition.as_ref().map(|d| json::morphism_json(d.psi.as_morphism())),
                    "inverse": inv.as_ref().map(json::morphism_json),
                })),
                (Format::Text, Some(inv)) => format!("iso; inverse:\n{}", morphism_out(fmt, &[("inverse", inv)])),
                (Format::Text, None) => "not iso\n".into(),
            })
        }
        Command::Classify { group } => {
            let g = session()?.group(group)?;
            let v = classify_rigidity(&g);
            Output::ok(match fmt {
                Format::Json => json::pretty(&json!({
                    "group": json::group_json(&g),
                    "rigid": v.rigid,
                    "reason": v.reason.as_str(),
                    "counterexample": v.counterexample.as_ref().map(json::morphism_json),
                    "counterexample_inverse": v.counterexample_inverse.as_ref().map(json::morphism_json),
                })),
                Format::Text => match &v.counterexample {
                    Some(c) => format!("not rigid; counterexample: {}\n", compact_tuple(c)),
                    None => format!("rigid; reason: {}\n", v.reason.as_str()),
                },
            })
        }
        Command::Counterexample { group } => {
            let s = session()?;
            let g = s.group(group)?;
            let v = classify_rigidity(&g);
            let (Some(c), Some(inv)) = (&v.counterexample, &v.counterexample_inverse) else {
                let d = Diagnostic::new(DiagKind::Engine, Span::default(), format!("{g} is rigid ({})", v.reason.as_str()));
                return Err(Output::diagnostics(&[d], "<group>"));
            };
            Output::ok(morphism_out(fmt, &[("counterexample", c), ("inverse", inv)]))
        }
        Command::Eval { f, at } => {
            let s = load(cli)?;
            let nm = s.morphism(f.as_deref())?;
            let assignments = parse_point(at).map_err(|d| Output::diagnostics(&d, "<point>"))?;
            let p = resolve_point(&assignments, nm.morphism.domain(), &s.program.registry)
                .map_err(|d| Output::diagnostics(&d, "<point>"))?;
            let value = nm.morphism.evaluate(&p).map_err(|e| s.engine(nm.span, e))?;
            Output::ok(match fmt {
                Format::Json => json::pretty(&json::point_json(&value)),
                Format::Text => format!("{}\n", point_text(&value)),
            })
        }
        Command::Selftest { seed, count } => {
            let mut rng = StdRng::seed_from_u64(*seed);
            let report = selftest::run(&mut rng, *count);
            let mut out = Output::ok(report.text());
            if !report.all_passed() {
                out.code = 1;
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cag(args: &[&str]) -> Output {
        run(std::iter::once("cag").chain(args.iter().copied()))
    }

    #[test]
    fn classify_without_input() {
        assert_eq!(cag(&["classify", "Ga^2"]).stdout, "not rigid; counterexample: (x1+x2^2, x2)\n");
        assert_eq!(cag(&["classify", "Ga * Gm^2 * E"]).stdout, "not rigid; counterexample: (x1+y1-1, y1, y2, id_E)\n");
        assert_eq!(cag(&["classify", "Gm^3 * E"]).stdout, "rigid; reason: semiabelian\n");
        let out = cag(&["counterexample", "Ga"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("rigid"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(cag(&[]).code, 2);
        assert_eq!(cag(&["retract"]).code, 2);
        assert_eq!(cag(&["frobnicate"]).code, 2);
        assert_eq!(cag(&["retract", "--input", "/nonexistent/file.cag"]).code, 2);
        assert_eq!(cag(&["--help"]).code, 0);
        let out = cag(&["classify", "Ga^"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.starts_with("<group>:1:4: error[SyntaxError]"), "{}", out.stderr);
    }
}
