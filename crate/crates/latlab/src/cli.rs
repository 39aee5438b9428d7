//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so tests can drive it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use latlab_core::laws::{self, LawReport};
use latlab_core::poset::MAX_DENSE;
use latlab_core::{
    build_tower, context_from_model, interval, BooleanRingView, CyclicOrder, Elem, Error,
    FormalContext, Lattice, Poset,
};

use crate::descriptor::{split_top_level, Descriptor, Structure};
use crate::error::{FormatError, LabError};
use crate::format::{self, ConceptSource};
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "latlab",
    version,
    about = "Build finite lattices and related structures and check their laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the structure named by a generator descriptor.
    Gen {
        /// e.g. powerset:3, divisors:12, m3, n5, chain:4, product(chain:2,m3), dual(n5), cycle:5
        descriptor: String,
        /// Output path; `-` or absent for standard output.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Report the modular, distributive, complemented, Boolean and Heyting laws.
    Check {
        /// Lattice file, `-` for standard input, or a generator descriptor.
        input: String,
        /// Exit with status 1 unless this law holds; repeatable.
        #[arg(long, value_enum)]
        expect: Vec<LawName>,
    },
    /// Show the interval [a,b] with its local complements.
    Interval {
        input: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Build the Heyting tower for a descending list of zeros.
    Tower {
        input: String,
        /// Comma-separated labels, highest first, e.g. `{3},{}`.
        #[arg(long)]
        zeros: String,
    },
    /// Show the atom basis, GF(2) coordinates and ring axioms of a Boolean algebra.
    Gf2 { input: String },
    /// Check the cyclic order axioms, or print a localization.
    Cyclic {
        /// Cyclic order file, `-`, or `cycle:N`.
        input: String,
        /// Print the chain seen from this base point as a lattice file.
        #[arg(long, conflicts_with = "vector")]
        localize: Option<String>,
        /// Print the chain seen from every base point.
        #[arg(long)]
        vector: bool,
    },
    /// Enumerate the concepts of a context or model file.
    Concepts {
        input: String,
        /// Tuple length for model files; defaults to the first predicate's arity.
        #[arg(long)]
        arity: Option<usize>,
        /// Also write the concept lattice to this path (`-` prints only the lattice).
        #[arg(long)]
        emit_lattice: Option<String>,
    },
    /// Print the cover relation.
    Hasse {
        input: String,
        /// Emit a DOT digraph with edges from lower to upper.
        #[arg(long)]
        dot: bool,
    },
    /// Run verification campaigns (all when none is named).
    Verify {
        campaign: Option<String>,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LawName {
    Modular,
    Distributive,
    Complemented,
    Boolean,
    Heyting,
}

/// What a command printed and how it ended.
#[derive(Debug, Default)]
struct Outcome {
    stdout: String,
    stderr: String,
    code: i32,
}

/// Runs one invocation; returns the exit status (0 success, 1 a checked
/// property failed, 2 bad input or usage).
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin) {
        Ok(o) => {
            let written = stdout
                .write_all(o.stdout.as_bytes())
                .and_then(|_| stdout.flush());
            let _ = stderr.write_all(o.stderr.as_bytes());
            if written.is_err() {
                return 2;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<Outcome, LabError> {
    match command {
        Command::Gen { descriptor, output } => gen(&descriptor, output.as_deref()),
        Command::Check { input, expect } => check(&load_lattice(&input, stdin)?, &expect),
        Command::Interval { input, a, b } => show_interval(&load_lattice(&input, stdin)?, &a, &b),
        Command::Tower { input, zeros } => tower(&load_lattice(&input, stdin)?, &zeros),
        Command::Gf2 { input } => gf2(&load_lattice(&input, stdin)?),
        Command::Cyclic {
            input,
            localize,
            vector,
        } => cyclic(&load_cyclic(&input, stdin)?, localize.as_deref(), vector),
        Command::Concepts {
            input,
            arity,
            emit_lattice,
        } => concepts(
            &load_concepts(&input, stdin, arity)?,
            emit_lattice.as_deref(),
        ),
        Command::Hasse { input, dot } => hasse(&load_poset(&input, stdin)?, dot),
        Command::Verify { campaign, threads } => run_verify(campaign.as_deref(), threads),
    }
}

enum Input {
    Text { name: String, text: String },
    Generated(Descriptor),
}

/// `-` reads standard input; an existing path is read as a file; anything
/// else must be a generator descriptor.
fn read_input(arg: &str, stdin: &mut dyn Read) -> Result<Input, LabError> {
    if arg == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| LabError::io("<stdin>", e))?;
        return Ok(Input::Text {
            name: "<stdin>".into(),
            text,
        });
    }
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
        return Ok(Input::Text {
            name: arg.into(),
            text,
        });
    }
    arg.parse::<Descriptor>()
        .map(Input::Generated)
        .map_err(|_| LabError::NoInput(arg.into()))
}

fn parsed<T>(name: &str, r: Result<T, FormatError>) -> Result<T, LabError> {
    r.map_err(|error| LabError::Parse {
        source_name: name.to_string(),
        error,
    })
}

fn load_poset(arg: &str, stdin: &mut dyn Read) -> Result<Poset, LabError> {
    match read_input(arg, stdin)? {
        Input::Text { name, text } => parsed(&name, format::parse_poset(&text)),
        Input::Generated(d) => Ok(lattice_of(&d)?.into_poset()),
    }
}

fn load_lattice(arg: &str, stdin: &mut dyn Read) -> Result<Lattice, LabError> {
    match read_input(arg, stdin)? {
        Input::Text { name, text } => parsed(&name, format::parse_lattice(&text)),
        Input::Generated(d) => lattice_of(&d),
    }
}

fn lattice_of(d: &Descriptor) -> Result<Lattice, LabError> {
    match d.build()? {
        Structure::Lattice(l) => Ok(l),
        Structure::Cyclic(_) => Err(LabError::Usage(format!(
            "`{d}` is a cyclic order, not a lattice"
        ))),
    }
}

fn load_cyclic(arg: &str, stdin: &mut dyn Read) -> Result<CyclicOrder, LabError> {
    match read_input(arg, stdin)? {
        Input::Text { name, text } => parsed(&name, format::parse_cyclic(&text)),
        Input::Generated(d) => match d.build()? {
            Structure::Cyclic(c) => Ok(c),
            Structure::Lattice(_) => Err(LabError::Usage(format!(
                "`{d}` is a lattice, not a cyclic order"
            ))),
        },
    }
}

fn load_concepts(
    arg: &str,
    stdin: &mut dyn Read,
    arity: Option<usize>,
) -> Result<FormalContext, LabError> {
    let (name, text) = match read_input(arg, stdin)? {
        Input::Text { name, text } => (name, text),
        Input::Generated(d) => {
            return Err(LabError::Usage(format!(
                "`{d}` is not a context; pass a context or model file"
            )))
        }
    };
    match parsed(&name, format::parse_concept_source(&text))? {
        ConceptSource::Context(c) => Ok(c),
        ConceptSource::Model(m) => {
            let arity = arity
                .or_else(|| m.relations().first().map(|r| r.arity))
                .unwrap_or(1);
            Ok(context_from_model(&m, arity)?)
        }
    }
}

fn tuple(l: &Lattice, xs: &[Elem]) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| l.label(x)).collect();
    format!("({})", names.join(","))
}

fn report_line(name: &str, l: &Lattice, r: &LawReport) -> String {
    if r.holds {
        return format!("{name}: holds");
    }
    let mut line = format!("{name}: FAIL witness={}", tuple(l, &r.witness));
    if let Some(d) = r.detail {
        let _ = write!(line, " reason={}", d.replace(' ', "-"));
    }
    line
}

fn gen(descriptor: &str, output: Option<&str>) -> Result<Outcome, LabError> {
    let d: Descriptor = descriptor.parse()?;
    let text = match d.build()? {
        Structure::Lattice(l) => {
            // a file the parser would refuse is not worth writing
            if l.len() > MAX_DENSE {
                return Err(Error::SizeLimitExceeded {
                    what: "emitted lattice",
                    limit: MAX_DENSE,
                }
                .into());
            }
            format::emit_lattice(&l)
        }
        Structure::Cyclic(c) => format::emit_cyclic(&c),
    };
    match output {
        None | Some("-") => Ok(Outcome {
            stdout: text,
            ..Outcome::default()
        }),
        Some(path) => {
            std::fs::write(path, text).map_err(|e| LabError::io(path, e))?;
            Ok(Outcome::default())
        }
    }
}

fn check(l: &Lattice, expect: &[LawName]) -> Result<Outcome, LabError> {
    let reports = [
        (LawName::Modular, "modular", laws::is_modular(l)),
        (
            LawName::Distributive,
            "distributive",
            laws::is_distributive(l),
        ),
        (
            LawName::Complemented,
            "complemented",
            laws::is_complemented(l),
        ),
        (LawName::Boolean, "boolean", laws::is_boolean(l)),
        (LawName::Heyting, "heyting", laws::is_heyting(l)),
    ];
    let mut o = Outcome::default();
    let _ = writeln!(o.stdout, "size: {}", l.len());
    for (_, name, r) in &reports {
        let _ = writeln!(o.stdout, "{}", report_line(name, l, r));
    }
    for (law, name, r) in &reports {
        if expect.contains(law) && !r.holds {
            let _ = writeln!(o.stderr, "expected `{name}` to hold");
            o.code = 1;
        }
    }
    Ok(o)
}

fn show_interval(l: &Lattice, a: &str, b: &str) -> Result<Outcome, LabError> {
    let q = interval(l, l.lookup(a)?, l.lookup(b)?)?;
    let mut o = Outcome::default();
    let out = &mut o.stdout;
    let _ = writeln!(out, "interval: [{a},{b}] size={}", q.len());
    let members: Vec<&str> = q.members().iter().map(|&x| l.label(x)).collect();
    let _ = writeln!(out, "members: {}", members.join(" "));
    for &x in q.members() {
        let lc = q.local_complement(x)?;
        let verdict = if lc.is_complement {
            "complement"
        } else {
            "NOT-complement"
        };
        let _ = writeln!(
            out,
            "local-complement {} -> {} {verdict}",
            l.label(x),
            l.label(lc.candidate)
        );
    }
    let _ = writeln!(
        out,
        "{}",
        report_line("local-complements", l, &q.has_local_complements())
    );
    let _ = writeln!(
        out,
        "{}",
        report_line("local-complementation", l, &q.local_complementation())
    );
    let sub = q.to_lattice();
    let _ = writeln!(
        out,
        "{}",
        report_line("boolean", &sub, &laws::is_boolean(&sub))
    );
    let _ = writeln!(
        out,
        "{}",
        report_line("heyting", &sub, &laws::is_heyting(&sub))
    );
    Ok(o)
}

fn tower(l: &Lattice, zeros: &str) -> Result<Outcome, LabError> {
    let zeros: Vec<Elem> = split_top_level(zeros)
        .into_iter()
        .filter(|z| !z.is_empty())
        .map(|z| l.lookup(z))
        .collect::<Result<_, _>>()?;
    let mut o = Outcome::default();
    let t = match build_tower(l, &zeros) {
        Ok(t) => t,
        Err(Error::NotDistributive) => {
            let _ = writeln!(
                o.stdout,
                "{}",
                report_line("distributive", l, &laws::is_distributive(l))
            );
            let _ = writeln!(o.stderr, "a tower needs a distributive lattice");
            o.code = 1;
            return Ok(o);
        }
        Err(e) => return Err(e.into()),
    };
    let out = &mut o.stdout;
    let _ = writeln!(out, "levels: {}", t.levels().len());
    for (i, lv) in t.levels().iter().enumerate() {
        let _ = writeln!(
            out,
            "level {} zero={} size={}",
            i + 1,
            l.label(lv.zero()),
            lv.members().len()
        );
        let members: Vec<&str> = lv.members().iter().map(|&x| l.label(x)).collect();
        let _ = writeln!(out, "  members: {}", members.join(" "));
        let negs: Vec<String> = lv
            .members()
            .iter()
            .map(|&x| format!("{}->{}", l.label(x), l.label(lv.negate(x).expect("member"))))
            .collect();
        let _ = writeln!(out, "  negation: {}", negs.join(" "));
    }
    Ok(o)
}

fn gf2(l: &Lattice) -> Result<Outcome, LabError> {
    let mut o = Outcome::default();
    let v = match BooleanRingView::new(l) {
        Ok(v) => v,
        Err(Error::NotBoolean) => {
            let _ = writeln!(
                o.stdout,
                "{}",
                report_line("boolean", l, &laws::is_boolean(l))
            );
            o.code = 1;
            return Ok(o);
        }
        Err(e) => return Err(e.into()),
    };
    let out = &mut o.stdout;
    let atoms: Vec<&str> = v.atoms().iter().map(|&a| l.label(a)).collect();
    let _ = writeln!(out, "atoms: {}", atoms.join(" "));
    let _ = writeln!(out, "coordinates:");
    for x in l.elements() {
        let _ = writeln!(out, "  {} {}", l.label(x), v.coordinates(x));
    }
    let r = v.verify_ring_axioms();
    let _ = writeln!(out, "{}", report_line("ring-axioms", l, &r));
    if !r.holds {
        o.code = 1;
    }
    Ok(o)
}

fn cyclic(c: &CyclicOrder, localize: Option<&str>, vector: bool) -> Result<Outcome, LabError> {
    let mut o = Outcome::default();
    let names = |w: &[Elem]| {
        let parts: Vec<&str> = w.iter().map(|&x| c.label(x)).collect();
        format!("({})", parts.join(","))
    };
    let line = |r: &LawReport| {
        if r.holds {
            format!("{}: holds", r.law.name())
        } else {
            format!("{}: FAIL witness={}", r.law.name(), names(&r.witness))
        }
    };
    let axioms = c.check_axioms();
    if let Some(failed) = axioms.operative().into_iter().find(|r| !r.holds) {
        if localize.is_some() || vector {
            let _ = writeln!(o.stdout, "{}", line(failed));
            let _ = writeln!(o.stderr, "cannot localize: `{}` fails", failed.law.name());
            o.code = 1;
            return Ok(o);
        }
    }
    if let Some(base) = localize {
        let chain = c.localize(c.lookup(base)?)?;
        o.stdout = format::emit_lattice(chain.chain_logic()?.lattice());
        return Ok(o);
    }
    if vector {
        for base in c.elements() {
            let chain = c.localize(base)?;
            let _ = writeln!(
                o.stdout,
                "base {}: {}",
                c.label(base),
                chain.labels().join("<")
            );
        }
        return Ok(o);
    }
    let _ = writeln!(o.stdout, "size: {}", c.len());
    for r in axioms.reports() {
        let _ = writeln!(o.stdout, "{}", line(r));
    }
    if axioms.operative().iter().any(|r| !r.holds) {
        o.code = 1;
    }
    Ok(o)
}

fn concepts(c: &FormalContext, emit: Option<&str>) -> Result<Outcome, LabError> {
    let found = c.concepts()?;
    let mut o = Outcome::default();
    if let Some(path) = emit {
        let text = format::emit_lattice(&c.concept_lattice(&found)?);
        if path == "-" {
            o.stdout = text;
            return Ok(o);
        }
        std::fs::write(path, text).map_err(|e| LabError::io(path, e))?;
    }
    let _ = writeln!(o.stdout, "concepts: {}", found.len());
    for (i, k) in found.iter().enumerate() {
        let _ = writeln!(
            o.stdout,
            "{} extent={{{}}} intent={{{}}}",
            i + 1,
            c.object_names(&k.extent).join(","),
            c.predicate_names(&k.intent).join(",")
        );
    }
    Ok(o)
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

fn hasse(p: &Poset, dot: bool) -> Result<Outcome, LabError> {
    let mut o = Outcome::default();
    let out = &mut o.stdout;
    if dot {
        out.push_str("digraph hasse {\n    rankdir=BT;\n");
        for label in p.labels() {
            let _ = writeln!(out, "    {};", dot_id(label));
        }
        for (lo, hi) in p.covers() {
            let _ = writeln!(
                out,
                "    {} -> {};",
                dot_id(p.label(lo)),
                dot_id(p.label(hi))
            );
        }
        out.push_str("}\n");
    } else {
        for (lo, hi) in p.covers() {
            let _ = writeln!(out, "{}<{}", p.label(lo), p.label(hi));
        }
    }
    Ok(o)
}

fn run_verify(campaign: Option<&str>, threads: Option<usize>) -> Result<Outcome, LabError> {
    let names: Vec<&str> = campaign.into_iter().collect();
    let reports = verify::run_campaigns(&names, threads)?;
    let mut o = Outcome {
        stdout: verify::render(&reports),
        ..Outcome::default()
    };
    let unexpected: Vec<String> = reports
        .iter()
        .flat_map(|r| r.unexpected())
        .map(|l| l.to_string())
        .collect();
    if !unexpected.is_empty() {
        let _ = writeln!(o.stderr, "{} unexpected outcome(s):", unexpected.len());
        for line in unexpected {
            let _ = writeln!(o.stderr, "  {line}");
        }
        o.code = 1;
    }
    Ok(o)
}
