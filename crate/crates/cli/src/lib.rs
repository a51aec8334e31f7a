//! Command-line front end: job parsing, dispatch and report emission.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Read;
use twistq::elementary::{screen, string_expand, LocalString};
use twistq::emit::{self, Format};
use twistq::engine::{budget_from_env, Engine, EngineKind, EngineReport};
use twistq::fermionic::{self, Convention, RootReading};
use twistq::finitechar::{check_qsystem, q_char};
use twistq::symalg::{dominant_monomials, q, Q};
use twistq::tableaux;
use twistq::{CharPoly, Error, FiniteChar, Lattice, SpectralParam, TypeSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twistq", about = "Twisted q-characters of Kirillov-Reshetikhin modules", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a KR q-character and its report.
    Qchar(Job),
    /// Tableau list or tableau-sum character.
    Tableaux {
        #[command(flatten)]
        job: Job,
        /// Emit the tableaux instead of their summed character.
        #[arg(long)]
        list: bool,
    },
    /// Verify the T-system relation.
    Tsystem {
        #[command(flatten)]
        job: Job,
        /// Check every node for k = 1..=K instead of a single relation.
        #[arg(long)]
        sweep: bool,
    },
    /// Verify the Q-system relation on one side.
    Qsystem(Job),
    /// Decompose the restriction into irreducibles on one side.
    Branch(Job),
    /// Verify the fermionic identity for a multiplicity vector.
    Fermionic {
        #[command(flatten)]
        job: Job,
        /// `node:k:count` triples separated by commas.
        #[arg(long)]
        nu: String,
        #[arg(long, value_enum, default_value_t = ConventionArg::Gamma)]
        convention: ConventionArg,
        #[arg(long, value_enum, default_value_t = RootsArg::Parent)]
        roots: RootsArg,
    },
    /// Check a JSON character against the screening operators.
    Screen {
        #[command(flatten)]
        job: Job,
        /// JSON file with the character; standard input when absent.
        #[arg(long)]
        input: Option<String>,
    },
    /// Expand the node-local string `L_{k,s}` at a node.
    String(Job),
    /// Dominant monomials of a KR q-character.
    Dominants(Job),
    /// Dimensions of `W^{(i)}_k` for every node and k = 1..=K.
    Dims(Job),
}

#[derive(Args, Debug, Clone)]
pub struct Job {
    /// Type selector such as `A4-2`, `D4-3`, `E6-2`, `untwisted:D4`.
    #[arg(long = "type")]
    pub ty: String,
    #[arg(long, default_value_t = 1)]
    pub node: u8,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Spectral shift `q^<p/q>` applied to the base parameter `a`.
    #[arg(long, default_value = "q^0")]
    pub shift: String,
    /// Phase `p/q` (a root of unity `e^{2 pi i p/q}`) applied to `a`.
    #[arg(long, default_value = "0")]
    pub phase: String,
    #[arg(long, value_enum, default_value_t = EngineArg::Fold)]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Monomial cap; defaults to `QCHAR_BUDGET` or the built-in limit.
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = SideArg::Tilde)]
    pub side: SideArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineArg {
    Fold,
    Tsys,
    Fm,
    Tableaux,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatArg {
    Text,
    Json,
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Tilde,
    Bar,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionArg {
    Gamma,
    Kr,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootsArg {
    Parent,
    Folded,
}

/// Exit code and emitted document of a job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub out: String,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Outcome { code: EXIT_OK, out }
    }

    fn verdict(holds: bool, out: String) -> Self {
        Outcome { code: if holds { EXIT_OK } else { EXIT_FAILED }, out }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::IllegalRank { .. } | Error::UnknownNode(_) | Error::UnknownLetter(_) | Error::NegativeK(_) => EXIT_USAGE,
        _ => EXIT_ENGINE,
    }
}

impl Job {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Latex => Format::Latex,
        }
    }

    fn lattice(&self) -> Lattice {
        match self.side {
            SideArg::Tilde => Lattice::Tilde,
            SideArg::Bar => Lattice::Bar,
        }
    }

    fn engine(&self) -> twistq::Result<Engine> {
        let t = TypeSpec::parse(&self.ty)?;
        Ok(Engine::with_budget(t, self.budget.unwrap_or_else(budget_from_env)))
    }

    fn kinds(&self) -> Vec<EngineKind> {
        match self.engine {
            EngineArg::Fold => vec![EngineKind::Fold],
            EngineArg::Tsys => vec![EngineKind::Tsys],
            EngineArg::Fm => vec![EngineKind::Fm],
            EngineArg::Tableaux => vec![EngineKind::Tableaux],
            EngineArg::All => vec![EngineKind::Fold, EngineKind::Tsys, EngineKind::Fm, EngineKind::Tableaux],
        }
    }

    fn kind(&self) -> EngineKind {
        self.kinds()[0]
    }

    /// `a` times the requested q-power and phase.
    fn param(&self) -> twistq::Result<SpectralParam> {
        let bad = || Error::Parse(format!("shift `{}` / phase `{}`", self.shift, self.phase));
        let sh = self.shift.trim();
        let sh = sh.strip_prefix("q^").unwrap_or(sh);
        let sh = parse_q(sh).ok_or_else(bad)?;
        let ph = parse_q(&self.phase).ok_or_else(bad)?;
        Ok(SpectralParam::base().shift_q(sh).shift_phase(ph))
    }
}

fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim().trim_matches(|c| c == '{' || c == '}');
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok().filter(|&d| d != 0)?;
            Some(Q::new(n.trim().parse().ok()?, d))
        }
        None => s.parse::<i64>().ok().map(q),
    }
}

fn emit_char(p: &CharPoly, f: Format, letter: char) -> String {
    match f {
        Format::Text => emit::char_text(p),
        Format::Json => emit::to_string(&emit::char_json(p)),
        Format::Latex => emit::char_latex(p, letter) + "\n",
    }
}

fn emit_finite(c: &FiniteChar, f: Format) -> String {
    match f {
        Format::Text => emit::finite_text(c),
        Format::Json => emit::to_string(&emit::finite_json(c)),
        Format::Latex => emit::finite_latex(c) + "\n",
    }
}

fn emit_report(r: &EngineReport, f: Format, letter: char) -> String {
    match f {
        Format::Json => emit::to_string(&emit::report_json(r)),
        Format::Latex => emit::char_latex(&r.character, letter) + "\n",
        Format::Text => {
            let mut s = format!(
                "engine: {}\ndimension: {}\ndistinct monomials: {}\nspecial: {}\n",
                r.engine.name(),
                r.dimension,
                r.distinct_monomials,
                r.special
            );
            s.push_str(&emit::char_text(&r.character));
            s
        }
    }
}

fn verdict_doc(f: Format, what: &str, holds: bool, residual: Value, residual_text: String) -> String {
    match f {
        Format::Json => emit::to_string(&json!({"check": what, "holds": holds, "residual": residual})),
        _ if holds => format!("{what}: holds\n"),
        _ => format!("{what}: FAILS\nresidual:\n{residual_text}"),
    }
}

fn qchar(job: &Job) -> twistq::Result<Outcome> {
    let e = job.engine()?;
    let s = job.param()?;
    let letter = e.t.letter();
    let mut reports = Vec::new();
    for kind in job.kinds() {
        match e.report(kind, job.node, job.k, s, false) {
            Ok(r) => reports.push(r),
            Err(Error::UnsupportedNode(_)) if job.engine == EngineArg::All => {}
            Err(err) => return Err(err),
        }
    }
    let agree = reports.windows(2).all(|w| w[0].character == w[1].character);
    let out = emit_report(&reports[0], job.format(), letter);
    if !agree {
        let names: Vec<&str> = reports.iter().map(|r| r.engine.name()).collect();
        return Ok(Outcome { code: EXIT_FAILED, out: format!("engines disagree: {}\n{out}", names.join(", ")) });
    }
    Ok(Outcome::ok(out))
}

fn tableaux_cmd(job: &Job, list: bool) -> twistq::Result<Outcome> {
    let t = TypeSpec::parse(&job.ty)?;
    if !list {
        let p = tableaux::tableaux_char(&t, job.node, job.k, job.param()?)?;
        return Ok(Outcome::ok(emit_char(&p, job.format(), t.letter())));
    }
    let tabs = tableaux::enumerate(&t, job.node, job.k)?;
    let out = match job.format() {
        Format::Json => emit::to_string(&Value::Array(tabs.iter().map(emit::tableau_json).collect())),
        _ => tabs.iter().map(|x| emit::tableau_text(x) + "\n").collect(),
    };
    Ok(Outcome::ok(out))
}

fn tsystem_one(job: &Job, e: &Engine, i: u8, k: u32) -> twistq::Result<(bool, CharPoly)> {
    e.check_tsystem(job.kind(), i, k, job.param()?)
}

fn tsystem(job: &Job, sweep: bool) -> twistq::Result<Outcome> {
    if !sweep {
        let e = job.engine()?;
        let (holds, res) = tsystem_one(job, &e, job.node, job.k)?;
        let letter = e.t.letter();
        let doc = verdict_doc(job.format(), "T-system", holds, emit::char_json(&res), emit_char(&res, Format::Text, letter));
        return Ok(Outcome::verdict(holds, doc));
    }
    let labels = TypeSpec::parse(&job.ty)?.labels;
    // each node is an independent job with its own engine
    let results: Vec<twistq::Result<Vec<(u32, bool)>>> = std::thread::scope(|sc| {
        let handles: Vec<_> = labels
            .iter()
            .map(|&i| {
                sc.spawn(move || {
                    let e = job.engine()?;
                    (1..=job.k).map(|k| tsystem_one(job, &e, i, k).map(|r| (k, r.0))).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut rows = Vec::new();
    let mut all = true;
    for (&i, r) in labels.iter().zip(results) {
        for (k, holds) in r? {
            all &= holds;
            rows.push((i, k, holds));
        }
    }
    let out = match job.format() {
        Format::Json => emit::to_string(&json!({
            "check": "T-system",
            "holds": all,
            "cases": rows.iter().map(|(i, k, h)| json!({"node": i, "k": k, "holds": h})).collect::<Vec<_>>(),
        })),
        _ => rows.iter().map(|(i, k, h)| format!("node {i} k {k}: {}\n", if *h { "holds" } else { "FAILS" })).collect(),
    };
    Ok(Outcome::verdict(all, out))
}

fn qsystem(job: &Job) -> twistq::Result<Outcome> {
    let e = job.engine()?;
    let r = check_qsystem(&e, job.kind(), job.node, job.k, job.lattice())?;
    let doc = verdict_doc(job.format(), "Q-system", r.holds, emit::finite_json(&r.residual), emit::finite_text(&r.residual));
    Ok(Outcome::verdict(r.holds, doc))
}

fn branch(job: &Job) -> twistq::Result<Outcome> {
    let e = job.engine()?;
    let lat = job.lattice();
    let chi = q_char(&e, job.kind(), job.node, job.k, lat)?;
    let rd = match lat {
        Lattice::Tilde => e.t.tilde_type(),
        Lattice::Bar => e.t.finite_type(),
    };
    let parts = rd.branch(&chi)?;
    let out = match job.format() {
        Format::Json => emit::to_string(&Value::Array(
            parts.iter().map(|(w, c)| json!({"weight": w, "multiplicity": c.to_string()})).collect(),
        )),
        _ => parts.iter().map(|(w, c)| format!("{c} x V{w:?}\n")).collect(),
    };
    Ok(Outcome::ok(out))
}

fn fermionic_cmd(job: &Job, nu: &str, conv: ConventionArg, roots: RootsArg) -> twistq::Result<Outcome> {
    let e = job.engine()?;
    let nu = fermionic::parse_nu(nu)?;
    let conv = match conv {
        ConventionArg::Gamma => Convention::Gamma,
        ConventionArg::Kr => Convention::Kr,
    };
    let reading = match roots {
        RootsArg::Parent => RootReading::Parent,
        RootsArg::Folded => RootReading::Folded,
    };
    let r = fermionic::check_kr(&e, &nu, job.lattice(), reading, conv)?;
    let doc = match job.format() {
        Format::Json => emit::to_string(&json!({
            "check": "fermionic",
            "holds": r.holds,
            "window": {"caps": r.window.caps, "height": r.window.height},
            "lhs": emit::finite_json(&r.lhs),
            "rhs": emit::finite_json(&r.rhs),
            "residual": emit::finite_json(&r.residual),
        })),
        f if r.holds => format!("fermionic: holds\n{}", emit_finite(&r.lhs, f)),
        f => format!("fermionic: FAILS\nresidual:\n{}", emit_finite(&r.residual, f)),
    };
    Ok(Outcome::verdict(r.holds, doc))
}

fn screen_cmd(job: &Job, input: &Option<String>) -> twistq::Result<Outcome> {
    let t = TypeSpec::parse(&job.ty)?;
    let text = match input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(e.to_string()))?;
            s
        }
    };
    let p = emit::char_from_json(&emit::parse(&text)?)?;
    let ok = screen(&t, &p);
    let out = match job.format() {
        Format::Json => emit::to_string(&json!({"check": "screen", "holds": ok})),
        _ => format!("screen: {}\n", if ok { "passes" } else { "FAILS" }),
    };
    Ok(Outcome::verdict(ok, out))
}

fn string_cmd(job: &Job) -> twistq::Result<Outcome> {
    let t = TypeSpec::parse(&job.ty)?;
    let p = string_expand(&t, &LocalString::new(job.node, job.k, job.param()?))?;
    Ok(Outcome::ok(emit_char(&p, job.format(), t.letter())))
}

fn dominants(job: &Job) -> twistq::Result<Outcome> {
    let e = job.engine()?;
    let p = e.kr_char(job.kind(), job.node, job.k, job.param()?)?;
    let dom = dominant_monomials(&p);
    let out = match job.format() {
        Format::Json => emit::to_string(&Value::Array(
            dom.iter().map(|(m, c)| json!({"coeff": c.to_string(), "monomial": emit::monomial_json(m)})).collect(),
        )),
        Format::Latex => dom.iter().map(|(m, c)| format!("{c}\\,{}\n", emit::monomial_latex(m, e.t.letter()))).collect(),
        Format::Text => dom.iter().map(|(m, c)| format!("{c} * {}\n", m.to_text(e.t.letter()))).collect(),
    };
    Ok(Outcome::ok(out))
}

fn dims(job: &Job) -> twistq::Result<Outcome> {
    let e = job.engine()?;
    let mut rows = Vec::new();
    for &i in &e.t.labels {
        for k in 1..=job.k {
            let d = e.kr_char(job.kind(), i, k, SpectralParam::base())?.dimension();
            rows.push((i, k, d));
        }
    }
    let out = match job.format() {
        Format::Json => emit::to_string(&Value::Array(
            rows.iter().map(|(i, k, d)| json!({"node": i, "k": k, "dimension": d.to_string()})).collect(),
        )),
        _ => rows.iter().map(|(i, k, d)| format!("node {i} k {k}: {d}\n")).collect(),
    };
    Ok(Outcome::ok(out))
}

/// Runs one job; errors become exit codes with a message on the document.
pub fn run(cmd: &Command) -> Outcome {
    let r = match cmd {
        Command::Qchar(j) => qchar(j),
        Command::Tableaux { job, list } => tableaux_cmd(job, *list),
        Command::Tsystem { job, sweep } => tsystem(job, *sweep),
        Command::Qsystem(j) => qsystem(j),
        Command::Branch(j) => branch(j),
        Command::Fermionic { job, nu, convention, roots } => fermionic_cmd(job, nu, *convention, *roots),
        Command::Screen { job, input } => screen_cmd(job, input),
        Command::String(j) => string_cmd(j),
        Command::Dominants(j) => dominants(j),
        Command::Dims(j) => dims(j),
    };
    r.unwrap_or_else(|e| Outcome { code: error_code(&e), out: format!("error: {e}\n") })
}
