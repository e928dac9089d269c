//! Command-line front end. `main.rs` only forwards to [`run_from_args`].

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{fmt_rat, rat_to_f64};
use crate::corpus;
use crate::cover::{datum_json, random_weak_datum, read_cover, subcover_data, CoverDatum};
use crate::cyclotomic::{gauss_sum, MultChar};
use crate::epsilon::{e_element_with, epsilon_ledger, Convention, GaussOracle, LocalKind};
use crate::error::Error;
use crate::euler::{
    euler_char_prime_to_p, euler_char_structure_sheaf, multiplicity_closed, multiplicity_direct,
    multiplicity_pairing, psi_structure, DivisorSpec,
};
use crate::finite_field::{field, PrimePower};
use crate::padic::padic_gauss_valuation;
use crate::rep::{label_string, Subgroup};
use crate::stickelberger::digit_sum_valuation;
use crate::verify::{check_invariance, check_restriction, check_strong_with, check_weak_with, VerificationReport};

#[derive(Parser, Debug)]
#[command(
    name = "galcover",
    version,
    about = "p-adic valuations of epsilon constants and equivariant Euler characteristics of abelian covers of P^1 over F_p",
    after_help = "Exit status: 0 all checks pass, 1 a check failed, 2 the input could not be parsed, 3 the datum is outside what the formulas cover."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON cover description (file path, or - for stdin).
    #[arg(long, global = true)]
    pub input: Option<String>,

    /// Builtin cover such as kummer:p=5,n=2,f=x(x-1) or as:p=3,f=1/x+1/(x-1).
    #[arg(long, global = true)]
    pub builtin: Option<String>,

    /// How Gauss-sum valuations are obtained.
    #[arg(long, global = true, value_enum, default_value_t = OracleChoice::Padic)]
    pub oracle: OracleChoice,

    /// Lambda-adic precision for the p-adic oracle (default: enough for the field).
    #[arg(long, global = true)]
    pub precision: Option<u32>,

    /// Pair E with epsilon(chi) (standard) or epsilon(chi^-1) (inverted).
    #[arg(long, global = true, value_enum, default_value_t = ConventionChoice::Standard)]
    pub convention: ConventionChoice,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Seed for synthetic data in `corpus`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Valuation of a Gauss sum over F_{p^r} by every oracle.
    Gauss {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: u32,
        /// Character index c (chi(g) = zeta_{q-1}^c); all indices when omitted.
        #[arg(long = "char")]
        character: Option<u64>,
    },
    /// Local and global epsilon valuations for every character.
    Epsilon,
    /// Multiplicities in the structure element and chi(G, X, O).
    Euler,
    VerifyStrong,
    VerifyWeak,
    /// Strong, weak, invariance and restriction to every subgroup.
    VerifyAll,
    /// verify-all over the fixed corpus plus synthetic data.
    Corpus {
        /// Number of synthetic weakly ramified data drawn from --seed.
        #[arg(long, default_value_t = 20)]
        synthetic: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleChoice {
    Stickelberger,
    Padic,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionChoice {
    Standard,
    Inverted,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) | Error::InvalidDivisor(_) | Error::Validation { .. } | Error::Domain(_) => {
            EXIT_PARSE
        }
        Error::Unsupported(_)
        | Error::NotWeaklyRamified(_)
        | Error::ReducibleCover(_)
        | Error::ConstantExtension(_)
        | Error::Tameness(_)
        | Error::Capacity(_)
        | Error::IncompleteDatum(_) => EXIT_UNSUPPORTED,
        Error::Integrality(_) | Error::Precision { .. } | Error::Level { .. } | Error::GroupMismatch(_) | Error::NotSubgroup(_) => {
            EXIT_FAIL
        }
    }
}

struct Settings {
    oracles: Vec<GaussOracle>,
    convention: Convention,
    format: Format,
}

impl Cli {
    fn settings(&self) -> Settings {
        let pad = GaussOracle::Padic(self.precision);
        Settings {
            oracles: match self.oracle {
                OracleChoice::Stickelberger => vec![GaussOracle::Stickelberger],
                OracleChoice::Padic => vec![pad],
                OracleChoice::Both => vec![pad, GaussOracle::Stickelberger],
            },
            convention: match self.convention {
                ConventionChoice::Standard => Convention::Standard,
                ConventionChoice::Inverted => Convention::Inverted,
            },
            format: self.format,
        }
    }

    fn cover(&self) -> Result<CoverDatum, Error> {
        match (&self.input, &self.builtin) {
            (Some(_), Some(_)) => Err(Error::Parse("give either --input or --builtin, not both".into())),
            (None, None) => Err(Error::Parse("this command needs --input or --builtin".into())),
            (None, Some(b)) => read_cover(b),
            (Some(path), None) => {
                let text = if path == "-" {
                    let mut s = String::new();
                    std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                        .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
                    s
                } else {
                    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
                };
                read_cover(&text)
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the report to `out` and diagnostics to `err`.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_PARSE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    run(&cli, out, err)
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let s = cli.settings();
    let result = match &cli.command {
        Command::Gauss { p, r, character } => gauss(*p, *r, *character, cli.precision, &s),
        Command::Epsilon => cli.cover().and_then(|c| epsilon(&c, &s)),
        Command::Euler => cli.cover().and_then(|c| euler(&c, &s)),
        Command::VerifyStrong => cli.cover().and_then(|c| verify(&c, &s, &[Check::Strong])),
        Command::VerifyWeak => cli.cover().and_then(|c| verify(&c, &s, &[Check::Weak])),
        Command::VerifyAll => cli.cover().and_then(|c| verify(&c, &s, &Check::ALL)),
        Command::Corpus { synthetic } => run_corpus(cli.seed, *synthetic, &s),
    };
    match result {
        Ok(Output { text, ok }) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Output {
    text: String,
    ok: bool,
}

fn render<T: Serialize>(s: &Settings, doc: &T, table: String, ok: bool) -> Result<Output, Error> {
    let text = match s.format {
        Format::Json => {
            let mut t = serde_json::to_string_pretty(doc).expect("reports serialize");
            t.push('\n');
            t
        }
        Format::Table => table,
    };
    Ok(Output { text, ok })
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c}{}  ", " ".repeat(w - c.chars().count()));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

#[derive(Serialize)]
struct GaussRow {
    c: u64,
    digit_sum: String,
    padic: String,
    product_identity: bool,
    abs2_over_q: f64,
    agree: bool,
}

#[derive(Serialize)]
struct GaussDoc {
    p: u64,
    r: u32,
    q: u64,
    rows: Vec<GaussRow>,
}

fn gauss(p: u64, r: u32, character: Option<u64>, precision: Option<u32>, s: &Settings) -> Result<Output, Error> {
    let pp = PrimePower::new(p, r)?;
    let ctx = field(p, r)?;
    let n = pp.q - 1;
    let indices: Vec<u64> = match character {
        Some(c) if c >= n.max(1) => {
            return Err(Error::InvalidInput(format!("character index {c} is not below q - 1 = {n}")))
        }
        Some(c) => vec![c],
        None => (0..n).collect(),
    };
    let mut rows = Vec::new();
    for c in indices {
        let chi = MultChar::new(&ctx, c as i64);
        let ds = digit_sum_valuation(pp, c)?;
        let pv = padic_gauss_valuation(&ctx, &chi, precision)?;
        let tau = gauss_sum(&ctx, &chi);
        let product = tau.mul(&gauss_sum(&ctx, &chi.inverse()));
        let expected = if c == 0 { 1 } else { chi.at_minus_one() * pp.q as i64 };
        rows.push(GaussRow {
            c,
            agree: ds == pv,
            digit_sum: fmt_rat(&ds),
            padic: fmt_rat(&pv),
            product_identity: product.as_integer() == Some(expected.into()),
            abs2_over_q: tau.complex_abs2() / pp.q as f64,
        });
    }
    let ok = rows.iter().all(|r| r.agree && r.product_identity);
    let mut text = format!("Gauss sums over F_{} (p = {p}, r = {r})\n", pp.q);
    text.push_str(&table(
        &["c", "v_p digit-sum", "v_p padic", "tau(chi)tau(chi^-1)", "|tau|^2/q"],
        &rows
            .iter()
            .map(|r| {
                vec![
                    r.c.to_string(),
                    r.digit_sum.clone(),
                    r.padic.clone(),
                    if r.product_identity { "chi(-1)q".into() } else { "MISMATCH".into() },
                    format!("{:.9}", r.abs2_over_q),
                ]
            })
            .collect::<Vec<_>>(),
    ));
    let doc = GaussDoc { p, r, q: pp.q, rows };
    render(s, &doc, text, ok)
}

#[derive(Serialize)]
struct LocalView {
    place: String,
    kind: LocalKind,
    valuation: String,
    gauss_index: Option<u64>,
}

#[derive(Serialize)]
struct EpsilonView {
    character: String,
    oracle: String,
    base: String,
    locals: Vec<LocalView>,
    valuation: String,
    e_coefficient: String,
}

#[derive(Serialize)]
struct EpsilonDoc {
    cover: String,
    convention: Convention,
    characters: Vec<EpsilonView>,
    oracles_agree: bool,
}

fn epsilon(c: &CoverDatum, s: &Settings) -> Result<Output, Error> {
    let mut views = Vec::new();
    let mut per_oracle = Vec::new();
    for &o in &s.oracles {
        let e = e_element_with(c, o, s.convention)?;
        per_oracle.push(e.clone());
        for chi in c.group.characters() {
            let arg = match s.convention {
                Convention::Standard => chi.clone(),
                Convention::Inverted => c.group.neg(&chi),
            };
            let l = epsilon_ledger(c, &arg, o)?;
            views.push(EpsilonView {
                character: label_string(&chi),
                oracle: o.name().into(),
                base: fmt_rat(&l.base),
                locals: l
                    .locals
                    .iter()
                    .map(|v| LocalView {
                        place: v.place.clone(),
                        kind: v.kind,
                        valuation: fmt_rat(&v.valuation),
                        gauss_index: v.gauss_index,
                    })
                    .collect(),
                valuation: fmt_rat(&l.global_valuation),
                e_coefficient: fmt_rat(&e.coefficient(&chi)),
            });
        }
    }
    let agree = per_oracle.windows(2).all(|w| w[0] == w[1]);
    let mut text = format!("{}\nconvention: {}\n", c.summary(), s.convention);
    let mut header = vec!["chi".to_string(), "oracle".into(), "r(g-1)".into()];
    header.extend(c.places.iter().map(|q| format!("v@{}", q.label)));
    header.extend(["v_p(eps)".into(), "<E,chi>".into()]);
    let rows: Vec<Vec<String>> = views
        .iter()
        .map(|v| {
            let mut r = vec![v.character.clone(), v.oracle.clone(), v.base.clone()];
            r.extend(v.locals.iter().map(|l| match l.kind {
                LocalKind::Unramified => "-".to_string(),
                LocalKind::Tame => format!("{} (tame)", l.valuation),
                LocalKind::Wild => format!("{} (wild)", l.valuation),
            }));
            r.extend([v.valuation.clone(), v.e_coefficient.clone()]);
            r
        })
        .collect();
    text.push_str(&table(&header.iter().map(|h| h.as_str()).collect::<Vec<_>>(), &rows));
    if s.oracles.len() > 1 {
        let _ = writeln!(text, "oracles agree: {agree}");
    }
    let doc = EpsilonDoc {
        cover: c.summary(),
        convention: s.convention,
        characters: views,
        oracles_agree: agree,
    };
    render(s, &doc, text, agree)
}

#[derive(Serialize)]
struct EulerRow {
    character: String,
    closed: String,
    direct: String,
    pairing: String,
}

#[derive(Serialize)]
struct ModularRow {
    label: String,
    psi: String,
    structure_sheaf: String,
    tame_quotient: String,
}

#[derive(Serialize)]
struct EulerDoc {
    cover: String,
    divisor: String,
    genus: String,
    characters: Vec<EulerRow>,
    modular: Vec<ModularRow>,
    consistent: bool,
}

fn euler(c: &CoverDatum, s: &Settings) -> Result<Output, Error> {
    let dw = DivisorSpec::wild(c);
    let psi = psi_structure(c, &dw)?;
    let sheaf = euler_char_structure_sheaf(c)?;
    let quotient = euler_char_prime_to_p(c)?;
    let mut characters = Vec::new();
    let mut ok = true;
    for chi in c.group.characters() {
        let (a, b, d) = (
            multiplicity_closed(c, &dw, &chi)?,
            multiplicity_direct(c, &dw, &chi)?,
            multiplicity_pairing(c, &dw, &chi)?,
        );
        ok &= a == b && b == d;
        characters.push(EulerRow {
            character: label_string(&chi),
            closed: fmt_rat(&a),
            direct: fmt_rat(&b),
            pairing: fmt_rat(&d),
        });
    }
    let mut modular = Vec::new();
    for theta in c.group.modular_labels(c.p) {
        ok &= sheaf.coefficient(&theta) == quotient.coefficient(&theta);
        modular.push(ModularRow {
            label: label_string(&theta),
            psi: fmt_rat(&psi.coefficient(&theta)),
            structure_sheaf: fmt_rat(&sheaf.coefficient(&theta)),
            tame_quotient: fmt_rat(&quotient.coefficient(&theta)),
        });
    }
    let genus = fmt_rat(&c.genus()?);
    let mut text = format!("{}\ng_X = {genus}, D = D^w = {}\n", c.summary(), dw.describe());
    text.push_str(&table(
        &["chi", "closed", "direct", "<e(psi),chi>"],
        &characters
            .iter()
            .map(|r| vec![r.character.clone(), r.closed.clone(), r.direct.clone(), r.pairing.clone()])
            .collect::<Vec<_>>(),
    ));
    text.push('\n');
    text.push_str(&table(
        &["simple", "psi", "chi(G,X,O)", "via X/G'"],
        &modular
            .iter()
            .map(|r| vec![r.label.clone(), r.psi.clone(), r.structure_sheaf.clone(), r.tame_quotient.clone()])
            .collect::<Vec<_>>(),
    ));
    let doc = EulerDoc {
        cover: c.summary(),
        divisor: dw.describe(),
        genus,
        characters,
        modular,
        consistent: ok,
    };
    render(s, &doc, text, ok)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Check {
    Strong,
    Weak,
    Invariance,
    Restriction,
}

impl Check {
    const ALL: [Check; 4] = [Check::Strong, Check::Weak, Check::Invariance, Check::Restriction];
}

fn reports_for(c: &CoverDatum, s: &Settings, checks: &[Check]) -> Result<(Vec<VerificationReport>, Vec<String>), Error> {
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    let all = checks.len() > 1;
    for &o in &s.oracles {
        for &check in checks {
            match check {
                Check::Strong if all && !c.weakly_ramified => {
                    notes.push("strong formula not evaluated: datum is not weakly ramified".into())
                }
                Check::Strong => reports.push(check_strong_with(c, o, s.convention)?),
                Check::Weak => reports.push(check_weak_with(c, o, s.convention)?),
                Check::Invariance => reports.push(check_invariance(c, o)?),
                Check::Restriction => {
                    if c.is_synthetic() || !c.weakly_ramified {
                        notes.push("restriction not evaluated: quotient data need a constructed cover".into());
                        continue;
                    }
                    for h in Subgroup::all(&c.group) {
                        // the subcover must exist before the comparison is meaningful
                        subcover_data(c, &h)?;
                        reports.push(check_restriction(c, &h, o)?);
                    }
                }
            }
        }
    }
    notes.dedup();
    Ok((reports, notes))
}

#[derive(Serialize)]
struct VerifyDoc {
    cover: String,
    reports: Vec<VerificationReport>,
    notes: Vec<String>,
    pass: bool,
}

fn render_report(r: &VerificationReport) -> String {
    let mut text = format!("[{}] {}\noracle: {}, convention: {}\n", r.check, r.cover, r.oracle, r.convention);
    let mut header = vec!["label".to_string(), "lhs".into(), "rhs".into()];
    if let Some(first) = r.rows.first() {
        header.extend(first.components.iter().map(|(k, _)| k.clone()));
    }
    header.push("pass".into());
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            let mut v = vec![row.label.clone(), fmt_rat(&row.lhs), fmt_rat(&row.rhs)];
            v.extend(row.components.iter().map(|(_, x)| fmt_rat(x)));
            v.push(if row.pass { "ok".into() } else { "FAIL".into() });
            v
        })
        .collect();
    text.push_str(&table(&header.iter().map(|h| h.as_str()).collect::<Vec<_>>(), &rows));
    let flags: Vec<String> = [
        ("strong_ok", r.strong_ok),
        ("weak_ok", r.weak_ok),
        ("integral_ok", r.integral_ok),
        ("invariance_ok", r.invariance_ok),
        ("restriction_ok", r.restriction_ok),
    ]
    .iter()
    .filter_map(|(k, v)| v.map(|b| format!("{k}={b}")))
    .collect();
    let _ = writeln!(text, "{}", flags.join(" "));
    for n in &r.notes {
        let _ = writeln!(text, "note: {n}");
    }
    text
}

fn verify(c: &CoverDatum, s: &Settings, checks: &[Check]) -> Result<Output, Error> {
    let (reports, notes) = reports_for(c, s, checks)?;
    let pass = reports.iter().all(|r| r.passed());
    let mut text = String::new();
    for r in &reports {
        text.push_str(&render_report(r));
        text.push('\n');
    }
    for n in &notes {
        let _ = writeln!(text, "note: {n}");
    }
    let _ = writeln!(text, "{}", if pass { "PASS" } else { "FAIL" });
    let doc = VerifyDoc {
        cover: c.summary(),
        reports,
        notes,
        pass,
    };
    render(s, &doc, text, pass)
}

#[derive(Serialize)]
struct CorpusRow {
    cover: String,
    strong: Option<bool>,
    weak: Option<bool>,
    invariance: Option<bool>,
    restriction: Option<bool>,
    pass: bool,
}

#[derive(Serialize)]
struct CorpusDoc {
    seed: u64,
    rows: Vec<CorpusRow>,
    synthetic: Vec<serde_json::Value>,
    pass: bool,
}

fn run_corpus(seed: u64, synthetic: usize, s: &Settings) -> Result<Output, Error> {
    let mut covers: Vec<CoverDatum> = corpus::full()?.into_iter().map(|(_, c)| c).collect();
    for c in corpus::chains()? {
        if !covers.iter().any(|d| d.name == c.name) {
            covers.push(c);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dumps = Vec::new();
    for k in 0..synthetic {
        let mut c = random_weak_datum(&mut rng);
        c.name = format!("synthetic#{k}");
        dumps.push(serde_json::to_value(datum_json(&c)).expect("datum serializes"));
        covers.push(c);
    }
    let mut rows = Vec::new();
    for c in &covers {
        let (reports, _) = reports_for(c, s, &Check::ALL)?;
        let flag = |name: &str| -> Option<bool> {
            let rs: Vec<&VerificationReport> = reports.iter().filter(|r| r.check == name).collect();
            if rs.is_empty() {
                None
            } else {
                Some(rs.iter().all(|r| r.passed()))
            }
        };
        let row = CorpusRow {
            cover: c.name.clone(),
            strong: flag("strong"),
            weak: flag("weak"),
            invariance: flag("invariance"),
            restriction: flag("restriction"),
            pass: reports.iter().all(|r| r.passed()),
        };
        rows.push(row);
    }
    let pass = rows.iter().all(|r| r.pass);
    let show = |b: Option<bool>| match b {
        None => "n/a".to_string(),
        Some(true) => "ok".into(),
        Some(false) => "FAIL".into(),
    };
    let mut text = table(
        &["cover", "strong", "weak", "invariance", "restriction"],
        &rows
            .iter()
            .map(|r| {
                vec![
                    r.cover.clone(),
                    show(r.strong),
                    show(r.weak),
                    show(r.invariance),
                    show(r.restriction),
                ]
            })
            .collect::<Vec<_>>(),
    );
    let _ = writeln!(
        text,
        "{} covers ({} synthetic, seed {seed}): {}",
        rows.len(),
        synthetic,
        if pass { "PASS" } else { "FAIL" }
    );
    let doc = CorpusDoc {
        seed,
        rows,
        synthetic: dumps,
        pass,
    };
    render(s, &doc, text, pass)
}

/// |τ|²/q as a float, outside every pass/fail decision.
pub fn gauss_abs2_ratio(p: u64, r: u32, c: u64) -> Result<f64, Error> {
    let ctx = field(p, r)?;
    let tau = gauss_sum(&ctx, &MultChar::new(&ctx, c as i64));
    Ok(tau.complex_abs2() / rat_to_f64(&crate::arith::int(ctx.q() as i64)))
}
