//! Argument handling and dispatch for the `taut` binary.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, ValueEnum};
use serde_json::json;

use taut_core::combinatorics::{partitions_of, ChernData, Partition};
use taut_core::genfun::{
    curve_series, gamma_integral_series, verify_identity, vertical_series, IdentityParams, IdentityReport,
    IDENTITY_NAMES,
};
use taut_core::hopf::{run_suite, Context, HopfElement, Variant};
use taut_core::rational::{format_rational, parse_rational};
use taut_core::series::MultiSeries;
use taut_core::theory::{Theory, TheoryCaps};
use taut_core::wire::{
    element_from_json, element_to_json, parse_element, parse_variant, report_to_json, series_to_json,
    tensor_to_json, theory_from_json, variant_name, ChernKeys, TheorySpec, TheoryTable,
};
use taut_core::{Error, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Table,
    Eval,
    ToP,
    ToQ,
    Coproduct,
    Antipode,
    Vertical,
    Curve,
    GammaIntegral,
    Verify,
    Axioms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "taut", about = "Exact computations in the tautological Hopf algebras of 0-cycles")]
pub struct Args {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Dimension of the ambient variety.
    #[arg(long)]
    pub d: Option<usize>,
    /// `sep` or `nonsep`.
    #[arg(long)]
    pub variant: Option<String>,
    /// Theory: `builtin:ck,k=2`, `mult-class:1,1`, `inertial:1,1`, `log:<spec>` or `table:<file>`.
    #[arg(long)]
    pub theory: Option<String>,
    /// Chern numbers inline (`c3=4,c1c2=24,c1^3=64` or `m111=4,m21=12,m3=4`) or `@file.json`.
    #[arg(long)]
    pub chern: Option<String>,
    /// Euler characteristic of a curve.
    #[arg(long)]
    pub chi: Option<String>,
    /// Truncation order in `T`.
    #[arg(long)]
    pub order: Option<u32>,
    /// Largest cycle degree `n` in a table.
    #[arg(long)]
    pub max_n: Option<u32>,
    /// Largest entry of `m` in a table.
    #[arg(long)]
    pub max_m: Option<u32>,
    /// Identity to verify.
    #[arg(long)]
    pub name: Option<String>,
    /// Exponent for the bivariate `c^k` identity.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    /// Coefficients of a polynomial `P(U)`, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    /// An element in text form, or `@file` holding text or JSON.
    #[arg(long, allow_hyphen_values = true)]
    pub input: Option<String>,
    /// Largest cycle degree of random elements for `axioms`.
    #[arg(long)]
    pub max_cycle_degree: Option<u32>,
    /// Number of random elements for `axioms`.
    #[arg(long)]
    pub count: Option<usize>,
    /// Seed for the random corpus.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the result to this file instead of standard output.
    #[arg(long)]
    pub output: Option<String>,
}

/// Where the Chern numbers come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChernInput {
    Keys(ChernKeys),
    File(String),
}

/// Where a theory comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryInput {
    Spec(TheorySpec),
    File(String),
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub d: usize,
    pub variant: Variant,
    pub theory: Option<TheoryInput>,
    pub chern: Option<ChernInput>,
    pub chi: Option<Rational>,
    pub order: u32,
    pub max_n: Option<u32>,
    pub max_m: Option<u32>,
    pub name: Option<String>,
    pub k: Option<i64>,
    pub p: Option<MultiSeries>,
    pub input: Option<String>,
    pub max_cycle_degree: u32,
    pub count: usize,
    pub seed: u64,
    pub format: Format,
    pub output: Option<String>,
}

/// What a run produced: text for standard output or the output file,
/// diagnostics for standard error, and the exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// clap's own rendering, including `--help`.
    #[error("{0}")]
    Clap(String, bool),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(Error::ResidualPole(_) | Error::PathDisagreement(_)) => EXIT_FAILED,
            _ => EXIT_INPUT,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn flags_in_use(a: &Args) -> Vec<&'static str> {
    let mut used = Vec::new();
    let mut mark = |present: bool, name: &'static str| {
        if present {
            used.push(name)
        }
    };
    mark(a.d.is_some(), "d");
    mark(a.variant.is_some(), "variant");
    mark(a.theory.is_some(), "theory");
    mark(a.chern.is_some(), "chern");
    mark(a.chi.is_some(), "chi");
    mark(a.order.is_some(), "order");
    mark(a.max_n.is_some(), "max-n");
    mark(a.max_m.is_some(), "max-m");
    mark(a.name.is_some(), "name");
    mark(a.k.is_some(), "k");
    mark(a.p.is_some(), "p");
    mark(a.input.is_some(), "input");
    mark(a.max_cycle_degree.is_some(), "max-cycle-degree");
    mark(a.count.is_some(), "count");
    mark(a.seed.is_some(), "seed");
    used
}

fn allowed_flags(verb: Verb) -> &'static [&'static str] {
    match verb {
        Verb::Table => &["d", "variant", "theory", "max-n", "max-m"],
        Verb::Eval => &["d", "variant", "theory", "input", "max-n", "max-m"],
        Verb::ToP | Verb::ToQ | Verb::Coproduct | Verb::Antipode => &["d", "variant", "input"],
        Verb::Vertical | Verb::GammaIntegral => &["d", "variant", "theory", "chern", "order"],
        Verb::Curve => &["d", "theory", "chi", "order"],
        Verb::Verify => &["d", "variant", "theory", "chern", "chi", "order", "name", "k", "p"],
        Verb::Axioms => &["d", "variant", "max-cycle-degree", "count", "seed"],
    }
}

fn verb_name(verb: Verb) -> String {
    verb.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

/// Parses and validates the command line (without the program name).
pub fn parse_input<I, S>(argv: I) -> CliResult<Command>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(std::iter::once("taut".into()).chain(argv.into_iter().map(Into::into)))
        .map_err(|e| CliError::Clap(e.render().to_string(), e.use_stderr()))?;
    validate(args)
}

fn validate(a: Args) -> CliResult<Command> {
    let allowed = allowed_flags(a.verb);
    if let Some(flag) = flags_in_use(&a).into_iter().find(|f| !allowed.contains(f)) {
        return Err(CliError::Usage(format!("--{flag} is not accepted by {}", verb_name(a.verb))));
    }
    let flag_error = |flag: &str, e: Error| CliError::Usage(format!("--{flag}: {e}"));
    let variant = match &a.variant {
        Some(v) => parse_variant(v).map_err(|e| flag_error("variant", e))?,
        None => Variant::Separated,
    };
    let theory = match &a.theory {
        Some(t) => Some(match t.strip_prefix("table:") {
            Some(path) => TheoryInput::File(path.to_string()),
            None => TheoryInput::Spec(TheorySpec::parse(t).map_err(|e| flag_error("theory", e))?),
        }),
        None => None,
    };
    let chern = match &a.chern {
        Some(c) => Some(match c.strip_prefix('@') {
            Some(path) => ChernInput::File(path.to_string()),
            None => ChernInput::Keys(ChernKeys::parse(c).map_err(|e| flag_error("chern", e))?),
        }),
        None => None,
    };
    let chi = match &a.chi {
        Some(c) => Some(parse_rational(c).map_err(|e| flag_error("chi", e))?),
        None => None,
    };
    let p = match &a.p {
        Some(text) => {
            let coeffs = text
                .split(',')
                .map(|c| parse_rational(c.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| flag_error("p", e))?;
            let cap = coeffs.len().saturating_sub(1).max(a.d.unwrap_or(1)) as u32;
            Some(MultiSeries::univariate("U", cap, &coeffs))
        }
        None => None,
    };
    if let Some(name) = &a.name {
        if !IDENTITY_NAMES.contains(&name.as_str()) {
            return Err(CliError::Usage(format!(
                "--name: unknown identity {name:?}; expected one of {}",
                IDENTITY_NAMES.join(", ")
            )));
        }
    }
    let needs = |present: bool, flag: &str| {
        if present {
            Ok(())
        } else {
            Err(CliError::Usage(format!("{} needs --{flag}", verb_name(a.verb))))
        }
    };
    match a.verb {
        Verb::Table => needs(theory.is_some(), "theory")?,
        Verb::Eval => {
            needs(theory.is_some(), "theory")?;
            needs(a.input.is_some(), "input")?;
        }
        Verb::ToP | Verb::ToQ | Verb::Coproduct | Verb::Antipode => needs(a.input.is_some(), "input")?,
        Verb::Vertical | Verb::GammaIntegral => {
            needs(theory.is_some(), "theory")?;
            needs(chern.is_some(), "chern")?;
        }
        Verb::Curve => {
            needs(theory.is_some(), "theory")?;
            needs(chi.is_some(), "chi")?;
        }
        Verb::Verify => needs(a.name.is_some(), "name")?,
        Verb::Axioms => {}
    }
    Ok(Command {
        verb: a.verb,
        d: a.d.unwrap_or(1),
        variant,
        theory,
        chern,
        chi,
        order: a.order.unwrap_or(5),
        max_n: a.max_n,
        max_m: a.max_m,
        name: a.name,
        k: a.k,
        p,
        input: a.input,
        max_cycle_degree: a.max_cycle_degree.unwrap_or(3),
        count: a.count.unwrap_or(20),
        seed: a.seed.unwrap_or(0),
        format: a.format.unwrap_or(Format::Text),
        output: a.output,
    })
}

fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))
}

impl Command {
    fn theory(&self, caps: TheoryCaps) -> CliResult<Theory> {
        match &self.theory {
            Some(TheoryInput::Spec(spec)) => Ok(spec.build(self.d, self.variant, caps)?),
            Some(TheoryInput::File(path)) => {
                let theory = theory_from_json(&read_file(path)?)?;
                if theory.dim() != self.d || theory.variant() != self.variant {
                    return Err(CliError::Usage(format!(
                        "theory file {path} is for d={} {}, not d={} {}",
                        theory.dim(),
                        variant_name(theory.variant()),
                        self.d,
                        variant_name(self.variant)
                    )));
                }
                Ok(theory)
            }
            None => Err(CliError::Usage("--theory is required".into())),
        }
    }

    fn element(&self) -> CliResult<HopfElement> {
        let raw = self.input.as_deref().ok_or_else(|| CliError::Usage("--input is required".into()))?;
        let text = match raw.strip_prefix('@') {
            Some(path) => read_file(path)?,
            None => raw.to_string(),
        };
        let x = if text.trim_start().starts_with('{') {
            element_from_json(&text)?
        } else {
            parse_element(self.d, self.variant, &text)?
        };
        if x.context().d != self.d || x.context().variant != self.variant {
            return Err(CliError::Usage(format!("--input is in context {}, expected d={} {}", x.context(), self.d, variant_name(self.variant))));
        }
        Ok(x)
    }

    /// Runs `f` on the Chern data. Class numbers left out of the input are
    /// accepted when the result provably does not depend on them: every
    /// quantity computed here is the exponential of a function linear in the
    /// Chern numbers, so agreement with each missing number set to 0 and to 1
    /// settles it.
    fn with_chern<T: PartialEq>(&self, f: impl Fn(&ChernData) -> CliResult<T>) -> CliResult<(T, Vec<String>)> {
        let keys = match &self.chern {
            Some(ChernInput::File(path)) => {
                let chern = taut_core::wire::chern_from_json(&read_file(path)?)?;
                if chern.dim() != self.d {
                    return Err(CliError::Usage(format!("Chern data in {path} has d={}, expected {}", chern.dim(), self.d)));
                }
                return Ok((f(&chern)?, Vec::new()));
            }
            Some(ChernInput::Keys(keys)) => keys,
            None => return Err(CliError::Usage("--chern is required".into())),
        };
        let classes = match keys {
            ChernKeys::Classes(classes) => classes,
            ChernKeys::Monomials(_) => return Ok((f(&keys.resolve(self.d)?)?, Vec::new())),
        };
        let missing: Vec<Partition> = partitions_of(self.d as u32, usize::MAX)
            .into_iter()
            .filter(|mu| !classes.contains_key(mu))
            .collect();
        let with = |fill: Option<&Partition>| -> CliResult<ChernData> {
            let mut full = classes.clone();
            for mu in &missing {
                let v = if Some(mu) == fill { 1 } else { 0 };
                full.insert(mu.clone(), Rational::from_integer(v.into()));
            }
            Ok(ChernData::from_classes(self.d, &full)?)
        };
        let base = f(&with(None)?)?;
        let mut names = Vec::new();
        for mu in &missing {
            let name = taut_core::combinatorics::chern_monomial_name(mu);
            if f(&with(Some(mu))?)? != base {
                return Err(Error::MissingChernNumber(name).into());
            }
            names.push(name);
        }
        Ok((base, names))
    }

    fn curve_chi(&self) -> Option<Rational> {
        self.chi.clone()
    }
}

fn notes_for(unused: &[String]) -> String {
    if unused.is_empty() {
        String::new()
    } else {
        format!("note: the result does not depend on {}\n", unused.join(", "))
    }
}

fn series_text(label: &str, s: &MultiSeries) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{label}: {s}");
    if let Ok(coeffs) = s.univariate_coeffs() {
        let list: Vec<String> = coeffs.iter().map(format_rational).collect();
        let _ = writeln!(out, "coefficients: [{}]", list.join(", "));
    }
    out
}

fn table_text(table: &TheoryTable) -> String {
    let mut out = format!(
        "theory: {}\nd: {}\nvariant: {}\ncaps: n<={}, m<={}\n",
        table.label, table.d, table.variant, table.max_n, table.max_m
    );
    let letter = if table.primitive { "p" } else { "q" };
    for entry in &table.values {
        let m: Vec<String> = entry.m.iter().map(u32::to_string).collect();
        let index = if table.variant == "sep" { format!("{};{}", entry.n, m.join(",")) } else { m.join(",") };
        let _ = writeln!(out, "{letter}({index}) = {}", entry.value);
    }
    out
}

fn report_text(report: &IdentityReport) -> String {
    format!("{report}\n")
}

/// Caps large enough to pair a theory with `x`.
fn caps_for(x: &HopfElement) -> TheoryCaps {
    let mut caps = TheoryCaps::new(1, 0);
    for (mono, _) in x.terms() {
        for g in mono.factors() {
            caps.n = caps.n.max(g.n());
            caps.m = caps.m.max(g.m().iter().copied().max().unwrap_or(0));
        }
    }
    caps
}

fn execute(cmd: &Command) -> CliResult<(String, i32)> {
    let json = cmd.format == Format::Json;
    let n = cmd.order;
    match cmd.verb {
        Verb::Table => {
            let default = TheoryCaps::for_vertical(cmd.d, 3);
            let caps = TheoryCaps::new(cmd.max_n.unwrap_or(default.n), cmd.max_m.unwrap_or(default.m));
            let table = TheoryTable::from_theory(&cmd.theory(caps)?)?;
            let text = if json { serde_json::to_string_pretty(&table).expect("serializable") + "\n" } else { table_text(&table) };
            Ok((text, EXIT_OK))
        }
        Verb::Eval => {
            let x = cmd.element()?;
            let needed = caps_for(&x);
            let caps = TheoryCaps::new(cmd.max_n.unwrap_or(needed.n), cmd.max_m.unwrap_or(needed.m));
            let theory = cmd.theory(caps)?;
            let value = format_rational(&theory.eval(&x)?);
            let text = if json {
                serde_json::to_string_pretty(&json!({ "theory": theory.label(), "value": value })).expect("serializable") + "\n"
            } else {
                format!("theory: {}\nvalue: {value}\n", theory.label())
            };
            Ok((text, EXIT_OK))
        }
        Verb::ToP | Verb::ToQ | Verb::Antipode => {
            let x = cmd.element()?;
            let y = match cmd.verb {
                Verb::ToP => x.q_to_p()?,
                Verb::ToQ => x.p_to_q()?,
                _ => x.antipode(),
            };
            let text = if json { element_to_json(&y) + "\n" } else { format!("{y}\n") };
            Ok((text, EXIT_OK))
        }
        Verb::Coproduct => {
            let dx = cmd.element()?.coproduct()?;
            let text = if json { tensor_to_json(&dx) + "\n" } else { format!("{dx}\n") };
            Ok((text, EXIT_OK))
        }
        Verb::Vertical | Verb::GammaIntegral => {
            let theory = cmd.theory(TheoryCaps::for_vertical(cmd.d, n))?;
            let (s, unused) = cmd.with_chern(|chern| {
                Ok(if cmd.verb == Verb::Vertical {
                    vertical_series(&theory, chern, n)?
                } else {
                    gamma_integral_series(&theory, chern, n)?
                })
            })?;
            let text = if json {
                series_to_json(&s) + "\n"
            } else {
                let label = if cmd.verb == Verb::Vertical { "series" } else { "log-series" };
                format!("theory: {}\norder: {n}\n{}{}", theory.label(), notes_for(&unused), series_text(label, &s))
            };
            Ok((text, EXIT_OK))
        }
        Verb::Curve => {
            if cmd.d != 1 {
                return Err(CliError::Usage("curve needs --d 1".into()));
            }
            let theory = cmd.theory(TheoryCaps::new(n, n))?;
            let chi = cmd.curve_chi().ok_or_else(|| CliError::Usage("curve needs --chi".into()))?;
            let s = curve_series(&theory, &chi, n)?;
            let text = if json {
                series_to_json(&s) + "\n"
            } else {
                format!("theory: {}\nchi: {}\norder: {n}\n{}", theory.label(), format_rational(&chi), series_text("series", &s))
            };
            Ok((text, EXIT_OK))
        }
        Verb::Verify => {
            let name = cmd.name.as_deref().unwrap_or_default();
            let theory = match cmd.theory {
                Some(_) => Some(cmd.theory(TheoryCaps::for_vertical(cmd.d, n))?),
                None => None,
            };
            let params = |chern: Option<ChernData>| IdentityParams {
                theory: theory.clone(),
                chern,
                chi: cmd.chi.clone(),
                k: cmd.k,
                p: cmd.p.clone(),
                n_max: n,
            };
            let (report, unused) = if cmd.chern.is_some() {
                cmd.with_chern(|chern| Ok(verify_identity(name, &params(Some(chern.clone())))?))?
            } else {
                (verify_identity(name, &params(None))?, Vec::new())
            };
            let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
            let text = if json { report_to_json(&report) + "\n" } else { notes_for(&unused) + &report_text(&report) };
            Ok((text, code))
        }
        Verb::Axioms => {
            let ctx = match cmd.variant {
                Variant::Separated => Context::separated(cmd.d),
                Variant::NonSeparated => Context::non_separated(cmd.d),
            };
            let reports = run_suite(&[ctx], cmd.count, cmd.max_cycle_degree, cmd.seed)?;
            let all_passed = reports.iter().all(|r| r.passed());
            let text = if json {
                let list: Vec<_> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "axiom": r.axiom,
                            "context": r.context.to_string(),
                            "checked": r.checked,
                            "passed": r.passed(),
                            "failures": r.failures,
                        })
                    })
                    .collect();
                serde_json::to_string_pretty(&list).expect("serializable") + "\n"
            } else {
                let mut out = String::new();
                for r in &reports {
                    let _ = writeln!(out, "{} [{}]: passed: {} ({} checked)", r.axiom, r.context, r.passed(), r.checked);
                    for failure in &r.failures {
                        let _ = writeln!(out, "  counterexample: {failure}");
                    }
                }
                let _ = writeln!(out, "passed: {all_passed}");
                out
            };
            Ok((text, if all_passed { EXIT_OK } else { EXIT_FAILED }))
        }
    }
}

/// Runs a validated command, writing to `--output` when given.
pub fn run_command(cmd: &Command) -> Outcome {
    match execute(cmd) {
        Ok((text, code)) => match &cmd.output {
            Some(path) => match fs::write(path, &text) {
                Ok(()) => Outcome { stdout: String::new(), stderr: String::new(), code },
                Err(e) => Outcome { stdout: String::new(), stderr: format!("error: cannot write {path}: {e}\n"), code: EXIT_INPUT },
            },
            None => Outcome { stdout: text, stderr: String::new(), code },
        },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.code() },
    }
}

/// Parses and runs; the entry point of the binary.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match parse_input(argv) {
        Ok(cmd) => run_command(&cmd),
        Err(CliError::Clap(msg, false)) => Outcome { stdout: msg, stderr: String::new(), code: EXIT_OK },
        Err(CliError::Clap(msg, true)) => Outcome { stdout: String::new(), stderr: msg, code: EXIT_INPUT },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.code() },
    }
}
