//! The `greenidx` command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::automatic::{structure_for_finite, transfer, verify_structure};
use crate::blackbox::Naturals;
use crate::error::{Error, Result};
use crate::green::{connectors, relative_green, ClassId, ConnectorTables, GreenData};
use crate::growth::{default_transversal, domination_check, growth_function, DEFAULT_BUDGET};
use crate::io::{
    load_semigroup, load_sub, read_json, tokenize, PresentationFile, StructureFile,
};
use crate::present::{
    enumerate_presentation, synthesize_with_table_presentations, verify_presentation,
    EnumerationOutcome, Synthesis,
};
use crate::rewrite::{decide_word_equality, push_left, push_right, schreier_generators, RewriteTrace};
use crate::schutz::{lambda_data, schutz_generators, schutz_group};
use crate::semigroup::{Elem, FiniteSemigroup, SubSemigroup};

#[derive(Debug, Parser)]
#[command(name = "greenidx", version, about = "Green index of subsemigroups of finite semigroups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// semigroup file
    #[arg(long)]
    pub semigroup: PathBuf,
    /// subsemigroup file
    #[arg(long)]
    pub sub: PathBuf,
}

#[derive(Debug, Args)]
pub struct Bounds {
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_classes: u64,
    #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_len: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a multiplication table (and optionally a subsemigroup)
    Validate {
        #[arg(long)]
        semigroup: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
    },
    /// Green index, Rees index and the complement classes
    GreenIndex(PairArgs),
    /// Egg-box diagram in DOT
    Eggbox {
        #[arg(long)]
        semigroup: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
        /// classes relative to the subsemigroup instead of to S itself
        #[arg(long)]
        relative: bool,
    },
    /// Connector tables and their soundness check
    Connectors(PairArgs),
    /// Push a class representative through a word over S¹
    Rewrite {
        #[command(flatten)]
        pair: PairArgs,
        /// class label: 1, i1, i2, ...
        #[arg(long, default_value = "1")]
        class: String,
        /// comma-separated elements; `one` is the adjoined identity
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        direction: Side,
    },
    /// Generators of T obtained from generators of S
    Schreier {
        #[command(flatten)]
        pair: PairArgs,
        /// generators of S (default: a greedy generating set)
        #[arg(long)]
        gens: Option<String>,
    },
    /// Schützenberger group of the class of an element
    Schutz {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        class_of: String,
        /// generators of T (default: a greedy generating set)
        #[arg(long)]
        gens: Option<String>,
    },
    /// Presentation synthesis and checking
    #[command(subcommand)]
    Present(PresentCommand),
    /// Decide equality of two words over the synthesized alphabet
    Wp {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        word1: String,
        #[arg(long)]
        word2: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Growth series and the domination check
    #[command(subcommand)]
    Growth(GrowthCommand),
    /// Automatic structures and their transfer to T
    #[command(subcommand)]
    Auto(AutoCommand),
}

#[derive(Debug, Subcommand)]
pub enum PresentCommand {
    /// Presentation of S from table presentations of T and its groups
    Synth {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        bounds: Bounds,
        /// write the presentation file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the semigroup defined by a presentation
    Enumerate {
        #[arg(long)]
        presentation: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check that a presentation with an assignment defines a semigroup
    Verify {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        semigroup: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
}

#[derive(Debug, Subcommand)]
pub enum GrowthCommand {
    /// Ball sizes around the adjoined identity
    Series {
        #[arg(long, required_unless_present = "naturals")]
        semigroup: Option<PathBuf>,
        /// use (ℕ, +) generated by 1
        #[arg(long, conflicts_with = "semigroup")]
        naturals: bool,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
    /// Check g_S(n) ≤ k₁·g_T(k₂·n)
    Dominate {
        #[command(flatten)]
        pair: PairArgs,
        /// generators of T (default: a greedy generating set)
        #[arg(long)]
        gens: Option<String>,
        /// members of R other than the adjoined identity
        #[arg(long)]
        transversal: Option<String>,
        #[arg(long, default_value_t = 12)]
        max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AutoCommand {
    /// Shortlex structure of a finite semigroup
    Build {
        #[arg(long)]
        semigroup: PathBuf,
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a structure against its semigroup on short words
    Verify {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Structure for a subsemigroup from one for the whole semigroup
    Transfer {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        /// default: |S| + 1
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        delay_bound: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a command produced: exit status and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    json: Value,
    human: String,
    dot: Option<String>,
    ok: bool,
}

impl Report {
    fn new(json: Value, human: String) -> Self {
        Report {
            json,
            human,
            dot: None,
            ok: true,
        }
    }

    fn failing(mut self, failed: bool) -> Self {
        self.ok = !failed;
        self
    }
}

/// Exit status for an error: 1 when a computation could not be certified,
/// 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InternalInconsistency(_)
        | Error::BoundExceeded(_)
        | Error::BudgetExceeded(_)
        | Error::DelayExceeded { .. } => 1,
        _ => 2,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(&cli.command) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).unwrap();
                    s.push('\n');
                    s
                }
                Format::Human => report.human,
                Format::Dot => match report.dot {
                    Some(d) => d,
                    None => {
                        return Outcome {
                            code: 2,
                            stdout: String::new(),
                            stderr: "error: this command has no DOT output\n".into(),
                        }
                    }
                },
            };
            Outcome {
                code: if report.ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load_pair(p: &PairArgs) -> Result<(FiniteSemigroup, SubSemigroup)> {
    let s = load_semigroup(&p.semigroup)?;
    let t = load_sub(&p.sub, &s)?;
    Ok((s, t))
}

fn load_conn(p: &PairArgs) -> Result<ConnectorTables> {
    let (s, t) = load_pair(p)?;
    connectors(&relative_green(&s, &t))
}

fn parse_element(s: &FiniteSemigroup, tok: &str, allow_one: bool) -> Result<Elem> {
    if allow_one && tok == "one" {
        return Ok(s.one());
    }
    if let Some(names) = s.names() {
        if let Some(x) = names.iter().position(|n| n == tok) {
            return Ok(x);
        }
    }
    let x: Elem = tok
        .parse()
        .map_err(|_| Error::Input(format!("{tok:?} is not an element")))?;
    s.check_element(x)?;
    Ok(x)
}

fn parse_elements(s: &FiniteSemigroup, text: &str, allow_one: bool) -> Result<Vec<Elem>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_element(s, t, allow_one))
        .collect()
}

fn parse_class(g: &GreenData, text: &str) -> Result<ClassId> {
    let k = if text == "1" {
        0
    } else {
        text.strip_prefix('i')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Input(format!("{text:?} is not a class label")))?
    };
    if k >= g.width() {
        return Err(Error::Input(format!("there is no class {text}")));
    }
    Ok(ClassId(k))
}

// The adjoined identity prints as `one`, as it is written on input.
fn ename(s: &FiniteSemigroup, x: Elem) -> String {
    if x == s.one() {
        "one".into()
    } else {
        s.name(x)
    }
}

fn names(s: &FiniteSemigroup, xs: &[Elem]) -> String {
    xs.iter().map(|&x| ename(s, x)).collect::<Vec<_>>().join(" ")
}

fn class_json(g: &GreenData) -> Value {
    Value::Array(
        g.complement_ids()
            .map(|i| {
                json!({
                    "class": i.to_string(),
                    "representative": g.rep(i),
                    "members": g.class_members(i),
                })
            })
            .collect(),
    )
}

fn write_out(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).unwrap();
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Validate { semigroup, sub } => validate(semigroup, sub.as_deref()),
        Command::GreenIndex(p) => green_index(p),
        Command::Eggbox {
            semigroup,
            sub,
            relative,
        } => eggbox(semigroup, sub.as_deref(), *relative),
        Command::Connectors(p) => connector_tables(p),
        Command::Rewrite {
            pair,
            class,
            word,
            direction,
        } => rewrite(pair, class, word, *direction),
        Command::Schreier { pair, gens } => schreier(pair, gens.as_deref()),
        Command::Schutz {
            pair,
            class_of,
            gens,
        } => schutz(pair, class_of, gens.as_deref()),
        Command::Present(PresentCommand::Synth { pair, bounds, out }) => {
            present_synth(pair, bounds, out.as_deref())
        }
        Command::Present(PresentCommand::Enumerate {
            presentation,
            bounds,
        }) => present_enumerate(presentation, bounds),
        Command::Present(PresentCommand::Verify {
            presentation,
            semigroup,
            bounds,
        }) => present_verify(presentation, semigroup, bounds),
        Command::Wp {
            pair,
            word1,
            word2,
            bounds,
        } => wp(pair, word1, word2, bounds),
        Command::Growth(GrowthCommand::Series {
            semigroup,
            naturals,
            gens,
            max,
        }) => growth_series(semigroup.as_deref(), *naturals, gens.as_deref(), *max),
        Command::Growth(GrowthCommand::Dominate {
            pair,
            gens,
            transversal,
            max,
        }) => dominate(pair, gens.as_deref(), transversal.as_deref(), *max),
        Command::Auto(AutoCommand::Build {
            semigroup,
            gens,
            out,
        }) => auto_build(semigroup, gens.as_deref(), out.as_deref()),
        Command::Auto(AutoCommand::Verify { structure, max_len }) => auto_verify(structure, *max_len),
        Command::Auto(AutoCommand::Transfer {
            structure,
            sub,
            delay_bound,
            out,
        }) => auto_transfer(structure, sub, *delay_bound, out.as_deref()),
    }
}

fn validate(path: &Path, sub: Option<&Path>) -> Result<Report> {
    let s = load_semigroup(path)?;
    let mut json = json!({
        "order": s.order(),
        "identity": s.identity(),
        "group": s.is_group(),
        "cancellative": s.is_cancellative(),
    });
    let mut human = format!("order {}, associative\n", s.order());
    match s.identity() {
        Some(e) => writeln!(human, "identity {}", s.name(e)).unwrap(),
        None => human.push_str("no identity\n"),
    }
    if let Some(p) = sub {
        let t = load_sub(p, &s)?;
        json["sub_order"] = json!(t.len());
        writeln!(human, "subsemigroup of order {}", t.len()).unwrap();
    }
    Ok(Report::new(json, human))
}

fn green_index(p: &PairArgs) -> Result<Report> {
    let (s, t) = load_pair(p)?;
    let g = relative_green(&s, &t);
    let json = json!({
        "green_index": g.green_index(),
        "rees_index": s.order() - t.len(),
        "classes": class_json(&g),
    });
    let mut human = format!(
        "Green index {}\nRees index {}\n",
        g.green_index(),
        s.order() - t.len()
    );
    for i in g.complement_ids() {
        writeln!(
            human,
            "{i}: representative {}, members {}",
            s.name(g.rep(i)),
            names(&s, &g.class_members(i))
        )
        .unwrap();
    }
    Ok(Report {
        dot: Some(g.eggbox_dot()),
        ..Report::new(json, human)
    })
}

fn eggbox(path: &Path, sub: Option<&Path>, relative: bool) -> Result<Report> {
    let s = load_semigroup(path)?;
    let t = match (relative, sub) {
        (true, Some(p)) => load_sub(p, &s)?,
        (true, None) => return Err(Error::Input("--relative needs --sub".into())),
        (false, _) => s.closure(&s.elements().collect::<Vec<_>>())?,
    };
    let g = relative_green(&s, &t);
    let dot = g.eggbox_dot();
    let json = json!({
        "r_classes": g.r_classes(),
        "l_classes": g.l_classes(),
        "h_classes": g.h_classes(),
        "dot": dot,
    });
    Ok(Report {
        dot: Some(dot.clone()),
        ..Report::new(json, dot)
    })
}

fn connector_tables(p: &PairArgs) -> Result<Report> {
    let conn = load_conn(p)?;
    let g = conn.green();
    let s = g.semigroup();
    let check = conn.check();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut human = String::from("s i : rho sigma | lambda tau\n");
    for x in 0..=s.one() {
        for i in g.class_ids() {
            left.push(json!({
                "s": x, "i": i.to_string(),
                "rho": conn.rho(x, i).to_string(), "sigma": conn.sigma(x, i),
            }));
            right.push(json!({
                "i": i.to_string(), "s": x,
                "lambda": conn.lambda(i, x).to_string(), "tau": conn.tau(i, x),
            }));
            writeln!(
                human,
                "{} {i} : {} {} | {} {}",
                ename(s, x),
                conn.rho(x, i),
                ename(s, conn.sigma(x, i)),
                conn.lambda(i, x),
                ename(s, conn.tau(i, x))
            )
            .unwrap();
        }
    }
    let violation = check.as_ref().err().map(|v| {
        json!({"s": v.s, "i": v.i.to_string(), "identity": v.identity})
    });
    match &check {
        Ok(()) => human.push_str("all connector identities hold\n"),
        Err(v) => writeln!(human, "violated: {} at s = {}, i = {}", v.identity, ename(s, v.s), v.i).unwrap(),
    }
    let json = json!({
        "representatives": g.class_ids().map(|i| g.rep(i)).collect::<Vec<_>>(),
        "left": left,
        "right": right,
        "sound": check.is_ok(),
        "violation": violation,
    });
    Ok(Report::new(json, human).failing(check.is_err()))
}

fn trace_json(tr: &RewriteTrace) -> Value {
    json!({
        "direction": match tr.direction {
            crate::rewrite::Direction::Right => "right",
            crate::rewrite::Direction::Left => "left",
        },
        "input_class": tr.input_class.to_string(),
        "word": tr.word,
        "output": tr.output,
        "output_class": tr.output_class.to_string(),
        "indices": tr.indices.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
    })
}

fn rewrite(p: &PairArgs, class: &str, word: &str, side: Side) -> Result<Report> {
    let conn = load_conn(p)?;
    let g = conn.green();
    let s = g.semigroup();
    let i = parse_class(g, class)?;
    let w = parse_elements(s, word, true)?;
    let tr = match side {
        Side::Right => push_right(&conn, i, &w),
        Side::Left => push_left(&conn, i, &w),
    };
    let chk = tr.check(&conn);
    let human = match side {
        Side::Right => format!(
            "h_{i} · {} = {} · h_{}\n",
            names(s, &tr.word),
            names(s, &tr.output),
            tr.output_class
        ),
        Side::Left => format!(
            "{} · h_{i} = h_{} · {}\n",
            names(s, &tr.word),
            tr.output_class,
            names(s, &tr.output)
        ),
    } + if chk.holds() { "checks pass\n" } else { "check failed\n" };
    let json = json!({
        "trace": trace_json(&tr),
        "check": {
            "equation": chk.equation,
            "recursion": chk.recursion,
            "part_i": chk.part_i,
            "part_ii": chk.part_ii,
            "part_iii": chk.part_iii,
        },
    });
    Ok(Report::new(json, human).failing(!chk.holds()))
}

fn default_gens(s: &FiniteSemigroup, within: &[Elem], given: Option<&str>) -> Result<Vec<Elem>> {
    match given {
        Some(text) => parse_elements(s, text, false),
        None => Ok(s.greedy_generators(within)),
    }
}

fn schreier(p: &PairArgs, gens: Option<&str>) -> Result<Report> {
    let conn = load_conn(p)?;
    let g = conn.green();
    let s = g.semigroup();
    let all: Vec<Elem> = s.elements().collect();
    let a = default_gens(s, &all, gens)?;
    let sg = schreier_generators(&conn, &a)?;
    let b = sg.generators();
    let closure_ok = s.closure(b)?.members() == g.sub().members();
    let mut facts = Vec::new();
    let mut human = format!("A = {}\nB = {}\n", names(s, &a), names(s, b));
    for &t in g.sub().members() {
        let f = sg.factorize(t)?;
        let ok = s.product(&f.b_word) == Some(t);
        writeln!(
            human,
            "{} = {} (from {})",
            s.name(t),
            names(s, &f.b_word),
            names(s, &f.source_word)
        )
        .unwrap();
        facts.push(json!({
            "target": t, "source_word": f.source_word, "factors": f.factors,
            "b_word": f.b_word, "evaluates": ok,
        }));
    }
    let all_ok = closure_ok && facts.iter().all(|f| f["evaluates"] == json!(true));
    writeln!(human, "B generates T: {closure_ok}").unwrap();
    let json = json!({
        "a": a,
        "b": b,
        "generates_t": closure_ok,
        "factorizations": facts,
    });
    Ok(Report::new(json, human).failing(!all_ok))
}

fn schutz(p: &PairArgs, class_of: &str, gens: Option<&str>) -> Result<Report> {
    let (s, t) = load_pair(p)?;
    let g = relative_green(&s, &t);
    let x = parse_element(&s, class_of, false)?;
    let h = g.h_class_of(x).to_vec();
    let group = schutz_group(&g, &h, x)?;
    let lambda = lambda_data(&g, &h, x)?;
    let b = default_gens(&s, t.members(), gens)?;
    let xs = schutz_generators(&g, &b, &lambda, &group)?;
    let generated = group.generated_subgroup(&xs).len() == group.order();
    let simply_transitive = group.order() == h.len();
    let mut human = format!(
        "H = {}\nStab = {}\n",
        names(&s, &h),
        names(&s, group.stabilizer())
    );
    for (k, c) in group.gamma_classes().iter().enumerate() {
        writeln!(human, "gamma class {k}: {}", names(&s, c)).unwrap();
    }
    human.push_str("table:\n");
    for row in group.table() {
        writeln!(
            human,
            "  {}",
            row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
    }
    writeln!(human, "generators: {:?}", xs).unwrap();
    writeln!(human, "generators generate the group: {generated}").unwrap();
    let json = json!({
        "h_class": h,
        "basepoint": x,
        "stabilizer": group.stabilizer(),
        "gamma_classes": group.gamma_classes(),
        "identity": group.identity(),
        "table": group.table(),
        "b": b,
        "generators": xs,
        "generates": generated,
        "order_equals_class_size": simply_transitive,
    });
    Ok(Report::new(json, human).failing(!(generated && simply_transitive)))
}

fn synth(p: &PairArgs, bounds: &Bounds) -> Result<Synthesis> {
    let conn = load_conn(p)?;
    synthesize_with_table_presentations(&conn, bounds.max_classes as usize, bounds.max_len as usize)
}

fn present_synth(p: &PairArgs, bounds: &Bounds, out: Option<&Path>) -> Result<Report> {
    let syn = synth(p, bounds)?;
    let pres = syn.presentation();
    let file = PresentationFile::from_presentation(pres, Some(syn.assignment()));
    if let Some(path) = out {
        write_out(path, &file)?;
    }
    let mut human = format!(
        "{} letters, {} relations\nalphabet: {}\n",
        pres.alphabet.len(),
        pres.relations.len(),
        pres.alphabet.join(" ")
    );
    for ((u, v), fam) in pres.relations.iter().zip(syn.families()) {
        writeln!(human, "{} = {}  [{:?}]", pres.spell(u), pres.spell(v), fam).unwrap();
    }
    let json = json!({
        "presentation": file,
        "families": syn.families(),
    });
    Ok(Report::new(json, human))
}

fn present_enumerate(path: &Path, bounds: &Bounds) -> Result<Report> {
    let (p, _) = read_json::<PresentationFile>(path)?.build()?;
    match enumerate_presentation(&p, bounds.max_classes as usize, bounds.max_len as usize) {
        EnumerationOutcome::Complete(e) => {
            let reps: Vec<String> = e.representatives().iter().map(|w| p.spell(w)).collect();
            let mut human = format!("{} elements\n", e.order());
            for (k, r) in reps.iter().enumerate() {
                writeln!(human, "{k}: {r}").unwrap();
            }
            let json = json!({
                "complete": true,
                "order": e.order(),
                "representatives": e.representatives(),
                "table": e.table(),
            });
            Ok(Report::new(json, human))
        }
        EnumerationOutcome::BoundExceeded(reason) => {
            let json = json!({"complete": false, "reason": reason});
            Ok(Report::new(json, format!("incomplete: {reason}\n")).failing(true))
        }
    }
}

fn present_verify(path: &Path, semigroup: &Path, bounds: &Bounds) -> Result<Report> {
    let s = load_semigroup(semigroup)?;
    let (p, alpha) = read_json::<PresentationFile>(path)?.build()?;
    let alpha = alpha.ok_or_else(|| Error::Input("the presentation file has no assignment".into()))?;
    let rep = verify_presentation(&p, &s, &alpha, bounds.max_classes as usize, bounds.max_len as usize)?;
    let witness = rep.violated_relation.map(|k| {
        let (u, v) = &p.relations[k];
        json!({
            "relation": k,
            "left": p.spell(u),
            "right": p.spell(v),
            "left_value": alpha.eval(&s, u),
            "right_value": alpha.eval(&s, v),
        })
    });
    let human = match (&witness, rep.valid) {
        (_, true) => format!("valid: {} classes, bijective\n", rep.classes.unwrap_or(0)),
        (Some(w), _) => format!(
            "relation {} fails: {} = {} but {} ≠ {}\n",
            w["relation"], w["left"].as_str().unwrap(), w["right"].as_str().unwrap(),
            w["left_value"], w["right_value"]
        ),
        (None, _) if !rep.onto => "letters do not generate the semigroup\n".into(),
        (None, _) => format!(
            "quotient has {} classes; the induced map is not bijective\n",
            rep.classes.unwrap_or(0)
        ),
    };
    let json = json!({"report": rep, "witness": witness});
    Ok(Report::new(json, human).failing(!rep.valid))
}

fn wp(p: &PairArgs, w1: &str, w2: &str, bounds: &Bounds) -> Result<Report> {
    let syn = synth(p, bounds)?;
    let alphabet = &syn.presentation().alphabet;
    let u = tokenize(w1, alphabet)?;
    let v = tokenize(w2, alphabet)?;
    let verdict = decide_word_equality(&syn, &u, &v)?;
    let human = format!(
        "branch: {}\n{}\n",
        serde_json::to_value(verdict.branch).unwrap().as_str().unwrap(),
        if verdict.equal { "equal" } else { "not equal" }
    );
    let json = json!({
        "word1": u,
        "word2": v,
        "equal": verdict.equal,
        "branch": verdict.branch,
        "classes": [verdict.classes.0.to_string(), verdict.classes.1.to_string()],
        "values": [syn.eval(&u), syn.eval(&v)],
    });
    Ok(Report::new(json, human))
}

fn growth_series(path: Option<&Path>, naturals: bool, gens: Option<&str>, max: usize) -> Result<Report> {
    if naturals {
        if gens.is_some() {
            return Err(Error::Input("--naturals takes no --gens".into()));
        }
        let series = growth_function(&Naturals, &[1], max, DEFAULT_BUDGET)?;
        let note = "black-box semigroup: associativity is assumed, not checked";
        let human = format!("{note}\n{}\n", join(&series.sizes));
        let json = json!({"sizes": series.sizes, "disclaimer": note});
        return Ok(Report::new(json, human));
    }
    let s = load_semigroup(path.expect("clap requires one of the two"))?;
    let all: Vec<Elem> = s.elements().collect();
    let a = default_gens(&s, &all, gens)?;
    let series = growth_function(&s, &a, max, DEFAULT_BUDGET)?;
    let human = format!("{}\n", join(&series.sizes));
    Ok(Report::new(json!({"generators": a, "sizes": series.sizes}), human))
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn dominate(p: &PairArgs, gens: Option<&str>, transversal: Option<&str>, max: usize) -> Result<Report> {
    let (s, t) = load_pair(p)?;
    let g = relative_green(&s, &t);
    let b = default_gens(&s, t.members(), gens)?;
    let r = match transversal {
        Some(text) => {
            let mut r = vec![s.one()];
            r.extend(parse_elements(&s, text, true)?);
            r
        }
        None => default_transversal(&g),
    };
    let rep = domination_check(&s, &t, &r, &b, max)?;
    let mut human = format!("k1 = {}, k2 = {}\nn g_S k1*g_T(k2*n)\n", rep.k1, rep.k2);
    for row in &rep.rows {
        writeln!(
            human,
            "{} {} {} {}",
            row.n,
            row.g_s,
            row.bound,
            if row.holds { "ok" } else { "FAILS" }
        )
        .unwrap();
    }
    let holds = rep.holds;
    Ok(Report::new(serde_json::to_value(&rep).unwrap(), human).failing(!holds))
}

fn auto_build(path: &Path, gens: Option<&str>, out: Option<&Path>) -> Result<Report> {
    let s = load_semigroup(path)?;
    let all: Vec<Elem> = s.elements().collect();
    let a = default_gens(&s, &all, gens)?;
    let st = structure_for_finite(&s, &a)?;
    let file = StructureFile::from_structure(&st, &s);
    if let Some(p) = out {
        write_out(p, &file)?;
    }
    let human = format!(
        "letters: {}\nlanguage automaton: {} states\n",
        st.letter_names.join(" "),
        st.language.state_count()
    );
    Ok(Report::new(serde_json::to_value(&file).unwrap(), human))
}

fn auto_verify(path: &Path, max_len: usize) -> Result<Report> {
    let (st, s) = read_json::<StructureFile>(path)?.build()?;
    let rep = verify_structure(&st, &s, max_len);
    let human = if rep.valid {
        format!(
            "valid up to length {max_len}: {} words, {} pairs checked\n",
            rep.language_size, rep.pairs_checked
        )
    } else {
        format!("invalid: {:?}\n", rep.defect)
    };
    let valid = rep.valid;
    Ok(Report::new(serde_json::to_value(&rep).unwrap(), human).failing(!valid))
}

fn auto_transfer(path: &Path, sub: &Path, delay_bound: Option<u64>, out: Option<&Path>) -> Result<Report> {
    let (st, s) = read_json::<StructureFile>(path)?.build()?;
    let t = load_sub(sub, &s)?;
    let conn = connectors(&relative_green(&s, &t))?;
    let bound = delay_bound.map_or(s.order() + 1, |d| d as usize);
    let tr = transfer(&st, &conn, bound)?;
    let file = StructureFile::from_structure(&tr.structure, &tr.t_semigroup);
    if let Some(p) = out {
        write_out(p, &file)?;
    }
    let human = format!(
        "{} letters over T (order {})\nlanguage automaton: {} states\n",
        tr.letters.len(),
        tr.t_semigroup.order(),
        tr.structure.language.state_count()
    );
    Ok(Report::new(serde_json::to_value(&file).unwrap(), human))
}
