//! Line-oriented text formats for lattices, cyclic orders, formal contexts
//! and finite models.
//!
//! Every line is `key: token token ...`; `#` starts a comment. Emission is
//! normalized, so `emit(parse(emit(x))) == emit(x)` byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use latlab_core::{CyclicOrder, FiniteModel, FormalContext, Lattice, Poset};

use crate::error::{FormatError, ParseError};

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug)]
struct Directive<'a> {
    line: usize,
    key: Token<'a>,
    args: Vec<Token<'a>>,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (column, (i, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (true, Some((s, col))) => {
                tokens.push(Token {
                    text: &line[s..i],
                    column: col + 1,
                });
                start = None;
            }
            (false, None) => start = Some((i, column)),
            _ => {}
        }
    }
    if let Some((s, col)) = start {
        tokens.push(Token {
            text: &line[s..],
            column: col + 1,
        });
    }
    tokens
}

fn directives<'a>(text: &'a str, allowed: &[&str]) -> Result<Vec<Directive<'a>>, ParseError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(body);
        let Some(first) = tokens.first().copied() else {
            continue;
        };
        let Some(colon) = first.text.find(':') else {
            return Err(ParseError::new(
                line,
                first.column,
                "expected `key:` at start of line",
            ));
        };
        let key = Token {
            text: &first.text[..colon],
            column: first.column,
        };
        if !allowed.contains(&key.text) {
            return Err(ParseError::new(
                line,
                key.column,
                format!(
                    "unknown key `{}`, expected one of: {}",
                    key.text,
                    allowed.join(", ")
                ),
            ));
        }
        let mut args = Vec::with_capacity(tokens.len());
        let rest = &first.text[colon + 1..];
        if !rest.is_empty() {
            args.push(Token {
                text: rest,
                column: first.column + key.text.chars().count() + 1,
            });
        }
        args.extend_from_slice(&tokens[1..]);
        out.push(Directive { line, key, args });
    }
    Ok(out)
}

/// Declared names with their positions, in declaration order.
struct Names<'a> {
    order: Vec<&'a str>,
    index: BTreeMap<&'a str, usize>,
}

impl<'a> Names<'a> {
    fn collect(
        dirs: &[Directive<'a>],
        key: &str,
        reserved: &[char],
    ) -> Result<Names<'a>, ParseError> {
        let mut names = Names {
            order: Vec::new(),
            index: BTreeMap::new(),
        };
        for d in dirs.iter().filter(|d| d.key.text == key) {
            for t in &d.args {
                if let Some(c) = t.text.chars().find(|c| reserved.contains(c)) {
                    return Err(ParseError::new(
                        d.line,
                        t.column,
                        format!("name `{}` contains reserved character `{c}`", t.text),
                    ));
                }
                if names.index.insert(t.text, names.order.len()).is_some() {
                    return Err(ParseError::new(
                        d.line,
                        t.column,
                        format!("duplicate name `{}`", t.text),
                    ));
                }
                names.order.push(t.text);
            }
        }
        Ok(names)
    }

    fn resolve(&self, line: usize, column: usize, name: &str) -> Result<usize, ParseError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ParseError::new(line, column, format!("unknown name `{name}`")))
    }
}

fn require<'a>(dirs: &[Directive<'a>], key: &str) -> Result<(), ParseError> {
    if dirs.iter().any(|d| d.key.text == key) {
        Ok(())
    } else {
        Err(ParseError::new(1, 1, format!("missing `{key}:` line")))
    }
}

/// Column of byte offset `offset` within token `t`.
fn column_at(t: Token<'_>, offset: usize) -> usize {
    t.column + t.text[..offset].chars().count()
}

/// Splits `(a,b,c)` into its parts with their columns.
fn tuple_parts(line: usize, t: Token<'_>) -> Result<Vec<(&str, usize)>, ParseError> {
    let inner = t
        .text
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| {
            ParseError::new(
                line,
                t.column,
                format!("expected `(...)`, found `{}`", t.text),
            )
        })?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut parts = Vec::new();
    let mut offset = 1;
    for part in inner.split(',') {
        parts.push((part, column_at(t, offset)));
        offset += part.len() + 1;
    }
    Ok(parts)
}

/// Parses `elements:` and `leq: lower<upper ...` lines into a poset.
pub fn parse_poset(text: &str) -> Result<Poset, FormatError> {
    let dirs = directives(text, &["elements", "leq"])?;
    require(&dirs, "elements")?;
    let names = Names::collect(&dirs, "elements", &['<'])?;
    let mut pairs = Vec::new();
    for d in dirs.iter().filter(|d| d.key.text == "leq") {
        for &t in &d.args {
            let (lo, hi) = t.text.split_once('<').ok_or_else(|| {
                ParseError::new(
                    d.line,
                    t.column,
                    format!("expected `lower<upper`, found `{}`", t.text),
                )
            })?;
            names.resolve(d.line, t.column, lo)?;
            names.resolve(d.line, column_at(t, lo.len() + 1), hi)?;
            pairs.push((lo, hi));
        }
    }
    Ok(Poset::build(&names.order, &pairs)?)
}

pub fn parse_lattice(text: &str) -> Result<Lattice, FormatError> {
    Ok(Lattice::from_poset(parse_poset(text)?)?)
}

/// Elements in index order, then one `leq:` line per element with its
/// upper covers.
pub fn emit_poset(p: &Poset) -> String {
    let mut out = format!("elements: {}\n", p.labels().join(" "));
    let mut by_lower: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    for (lo, hi) in p.covers() {
        by_lower.entry(lo.index()).or_default().push(p.label(hi));
    }
    for (lo, his) in by_lower {
        let lo = &p.labels()[lo];
        let pairs: Vec<String> = his.iter().map(|hi| format!("{lo}<{hi}")).collect();
        let _ = writeln!(out, "leq: {}", pairs.join(" "));
    }
    out
}

pub fn emit_lattice(l: &Lattice) -> String {
    emit_poset(l.poset())
}

/// Parses `elements:` and `triples: (a,b,c) ...` lines.
pub fn parse_cyclic(text: &str) -> Result<CyclicOrder, FormatError> {
    let dirs = directives(text, &["elements", "triples"])?;
    require(&dirs, "elements")?;
    let names = Names::collect(&dirs, "elements", &['<', ',', '(', ')'])?;
    let mut triples = Vec::new();
    for d in dirs.iter().filter(|d| d.key.text == "triples") {
        for &t in &d.args {
            let parts = tuple_parts(d.line, t)?;
            let [(a, ca), (b, cb), (c, cc)] = parts[..] else {
                return Err(ParseError::new(
                    d.line,
                    t.column,
                    format!("expected a triple `(a,b,c)`, found `{}`", t.text),
                )
                .into());
            };
            names.resolve(d.line, ca, a)?;
            names.resolve(d.line, cb, b)?;
            names.resolve(d.line, cc, c)?;
            if a == b || b == c || a == c {
                return Err(ParseError::new(
                    d.line,
                    t.column,
                    format!("triple `{}` repeats an element", t.text),
                )
                .into());
            }
            triples.push((a, b, c));
        }
    }
    Ok(CyclicOrder::new(&names.order, &triples)?)
}

/// Elements, then one `triples:` line per first component.
pub fn emit_cyclic(c: &CyclicOrder) -> String {
    let mut out = format!("elements: {}\n", c.labels().join(" "));
    let mut by_first: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (a, b, d) in c.triples() {
        let text = format!("({},{},{})", c.label(a), c.label(b), c.label(d));
        by_first.entry(a.index()).or_default().push(text);
    }
    for triples in by_first.values() {
        let _ = writeln!(out, "triples: {}", triples.join(" "));
    }
    out
}

const OBJECT_RESERVED: &[char] = &[':', '<'];
const PREDICATE_RESERVED: &[char] = &[':', ',', '<', '/', '='];

/// Parses `objects:`, `predicates:` and `incidence: obj:P,Q ...` lines.
pub fn parse_context(text: &str) -> Result<FormalContext, FormatError> {
    let dirs = directives(text, &["objects", "predicates", "incidence"])?;
    context_from_directives(&dirs)
}

fn context_from_directives(dirs: &[Directive<'_>]) -> Result<FormalContext, FormatError> {
    require(dirs, "objects")?;
    require(dirs, "predicates")?;
    let objects = Names::collect(dirs, "objects", OBJECT_RESERVED)?;
    let predicates = Names::collect(dirs, "predicates", PREDICATE_RESERVED)?;
    let mut incidence = Vec::new();
    for d in dirs.iter().filter(|d| d.key.text == "incidence") {
        for &t in &d.args {
            let (o, ps) = t.text.split_once(':').ok_or_else(|| {
                ParseError::new(
                    d.line,
                    t.column,
                    format!("expected `object:P,Q`, found `{}`", t.text),
                )
            })?;
            objects.resolve(d.line, t.column, o)?;
            let mut offset = o.len() + 1;
            for p in ps.split(',').filter(|p| !p.is_empty()) {
                predicates.resolve(d.line, column_at(t, offset), p)?;
                incidence.push((o, p));
                offset += p.len() + 1;
            }
        }
    }
    Ok(FormalContext::new(
        &objects.order,
        &predicates.order,
        &incidence,
    )?)
}

/// Objects, predicates, and one incidence token per object that has any
/// predicate.
pub fn emit_context(c: &FormalContext) -> String {
    let mut out = format!(
        "objects: {}\npredicates: {}\n",
        c.objects().join(" "),
        c.predicates().join(" ")
    );
    let tokens: Vec<String> = (0..c.objects().len())
        .filter_map(|o| {
            let ps: Vec<&str> = (0..c.predicates().len())
                .filter(|&p| c.incident(o, p))
                .map(|p| c.predicates()[p].as_str())
                .collect();
            (!ps.is_empty()).then(|| format!("{}:{}", c.objects()[o], ps.join(",")))
        })
        .collect();
    if tokens.is_empty() {
        out.push_str("incidence:\n");
    } else {
        let _ = writeln!(out, "incidence: {}", tokens.join(" "));
    }
    out
}

/// Parses `domain:` and `pred: NAME/ARITY = (x,y) ...` lines.
pub fn parse_model(text: &str) -> Result<FiniteModel, FormatError> {
    let dirs = directives(text, &["domain", "pred"])?;
    model_from_directives(&dirs)
}

fn model_from_directives(dirs: &[Directive<'_>]) -> Result<FiniteModel, FormatError> {
    require(dirs, "domain")?;
    let domain = Names::collect(dirs, "domain", &[',', '(', ')', ':', '<'])?;
    let mut model = FiniteModel::new(&domain.order)?;
    for d in dirs.iter().filter(|d| d.key.text == "pred") {
        let head = d.args.first().copied().ok_or_else(|| {
            ParseError::new(d.line, d.key.column, "expected `NAME/ARITY = tuples`")
        })?;
        let (name, arity) = head
            .text
            .rsplit_once('/')
            .and_then(|(n, a)| Some((n, a.parse::<usize>().ok()?)))
            .ok_or_else(|| {
                ParseError::new(
                    d.line,
                    head.column,
                    format!("expected `NAME/ARITY`, found `{}`", head.text),
                )
            })?;
        if let Some(c) = name.chars().find(|c| PREDICATE_RESERVED.contains(c)) {
            return Err(ParseError::new(
                d.line,
                head.column,
                format!("name `{name}` contains reserved character `{c}`"),
            )
            .into());
        }
        match d.args.get(1) {
            Some(t) if t.text == "=" => {}
            Some(t) => {
                return Err(ParseError::new(d.line, t.column, "expected `=`").into());
            }
            None => {
                let column = head.column + head.text.chars().count();
                return Err(ParseError::new(d.line, column, "expected `=`").into());
            }
        }
        let mut tuples = Vec::new();
        for &t in &d.args[2..] {
            let parts = tuple_parts(d.line, t)?;
            if parts.len() != arity {
                return Err(ParseError::new(
                    d.line,
                    t.column,
                    format!(
                        "tuple `{}` has length {}, expected {arity}",
                        t.text,
                        parts.len()
                    ),
                )
                .into());
            }
            for &(x, col) in &parts {
                domain.resolve(d.line, col, x)?;
            }
            tuples.push(parts.into_iter().map(|(x, _)| x).collect::<Vec<_>>());
        }
        model.add_relation(name, arity, &tuples)?;
    }
    Ok(model)
}

/// Domain, then one `pred:` line per relation with tuples in order.
pub fn emit_model(m: &FiniteModel) -> String {
    let mut out = format!("domain: {}\n", m.domain().join(" "));
    for r in m.relations() {
        let _ = write!(out, "pred: {}/{} =", r.name, r.arity);
        for t in &r.tuples {
            let _ = write!(out, " {}", m.tuple_label(t));
        }
        out.push('\n');
    }
    out
}

/// Input accepted by the concept commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConceptSource {
    Context(FormalContext),
    Model(FiniteModel),
}

/// Parses a context file, or a model file when its first key is `domain`
/// or `pred`.
pub fn parse_concept_source(text: &str) -> Result<ConceptSource, FormatError> {
    let dirs = directives(
        text,
        &["objects", "predicates", "incidence", "domain", "pred"],
    )?;
    let is_model = matches!(dirs.first(), Some(d) if matches!(d.key.text, "domain" | "pred"));
    let family: &[&str] = if is_model {
        &["domain", "pred"]
    } else {
        &["objects", "predicates", "incidence"]
    };
    if let Some(d) = dirs.iter().find(|d| !family.contains(&d.key.text)) {
        return Err(ParseError::new(
            d.line,
            d.key.column,
            format!("key `{}` does not belong in this kind of file", d.key.text),
        )
        .into());
    }
    if is_model {
        model_from_directives(&dirs).map(ConceptSource::Model)
    } else {
        context_from_directives(&dirs).map(ConceptSource::Context)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax(e: FormatError) -> (usize, usize) {
        match e {
            FormatError::Syntax(p) => (p.line, p.column),
            other => panic!("expected a syntax error, got {other}"),
        }
    }

    #[test]
    fn diamond_round_trip() {
        let text = "# a diamond\nelements: a b c d\nleq: a<b b<d\nleq: a<c c<d # right side\n";
        let l = parse_lattice(text).unwrap();
        let emitted = emit_lattice(&l);
        assert_eq!(
            emitted,
            "elements: a b c d\nleq: a<b a<c\nleq: b<d\nleq: c<d\n"
        );
        assert_eq!(emit_lattice(&parse_lattice(&emitted).unwrap()), emitted);
    }

    #[test]
    fn lattice_errors_carry_positions() {
        assert_eq!(
            syntax(parse_poset("elements: a b\nleq: a<z\n").unwrap_err()),
            (2, 8)
        );
        assert_eq!(
            syntax(parse_poset("elements: a b\nleq: a-b\n").unwrap_err()),
            (2, 6)
        );
        assert_eq!(
            syntax(parse_poset("elements: a b\n  order: a<b\n").unwrap_err()),
            (2, 3)
        );
        assert_eq!(syntax(parse_poset("elements: a a\n").unwrap_err()), (1, 13));
        assert_eq!(syntax(parse_poset("leq: a<b\n").unwrap_err()), (1, 1));
        assert_eq!(
            syntax(parse_poset("elements: a\nfoo\n").unwrap_err()),
            (2, 1)
        );
        assert!(matches!(
            parse_poset("elements: a b\nleq: a<b b<a\n").unwrap_err(),
            FormatError::Invalid(latlab_core::Error::CycleDetected(_))
        ));
        assert!(matches!(
            parse_lattice("elements: a b\n").unwrap_err(),
            FormatError::Invalid(latlab_core::Error::NotALattice { .. })
        ));
    }

    #[test]
    fn keys_may_touch_their_first_token() {
        let p = parse_poset("elements:a b\nleq:a<b\n").unwrap();
        assert_eq!(p.labels(), ["a", "b"]);
        assert_eq!(
            syntax(parse_poset("elements:a b\nleq:a<c\n").unwrap_err()),
            (2, 7)
        );
    }

    #[test]
    fn cyclic_round_trip() {
        let c = CyclicOrder::standard(4).unwrap();
        let text = emit_cyclic(&c);
        assert!(text.starts_with("elements: 0 1 2 3\ntriples: (0,1,2) (0,1,3) (0,2,3)\n"));
        let back = parse_cyclic(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(emit_cyclic(&back), text);
        assert_eq!(
            syntax(parse_cyclic("elements: a b c\ntriples: (a,b)\n").unwrap_err()),
            (2, 10)
        );
        assert_eq!(
            syntax(parse_cyclic("elements: a b c\ntriples: (a,b,a)\n").unwrap_err()),
            (2, 10)
        );
        assert_eq!(
            syntax(parse_cyclic("elements: a b c\ntriples: (a,b,x)\n").unwrap_err()),
            (2, 15)
        );
    }

    #[test]
    fn context_round_trip() {
        let text = "objects: o1 o2 o3\npredicates: P Q\nincidence: o1:P o2:P,Q o3:Q\n";
        let c = parse_context(text).unwrap();
        assert_eq!(emit_context(&c), text);
        assert_eq!(
            syntax(parse_context("objects: o1\npredicates: P\nincidence: o1:R\n").unwrap_err()),
            (3, 15)
        );
        let empty = parse_context("objects: o1\npredicates: P\n").unwrap();
        assert_eq!(
            emit_context(&empty),
            "objects: o1\npredicates: P\nincidence:\n"
        );
    }

    #[test]
    fn model_round_trip() {
        let text = "domain: 1 2 3\npred: E/2 = (1,2) (2,1)\n";
        let m = parse_model(text).unwrap();
        assert_eq!(emit_model(&m), text);
        assert_eq!(
            syntax(parse_model("domain: 1 2\npred: E/2 = (1)\n").unwrap_err()),
            (2, 13)
        );
        assert_eq!(
            syntax(parse_model("domain: 1 2\npred: E/2 (1,2)\n").unwrap_err()),
            (2, 11)
        );
        assert_eq!(
            syntax(parse_model("domain: 1 2\npred: E/2 = (1,5)\n").unwrap_err()),
            (2, 16)
        );
        assert_eq!(
            syntax(parse_model("domain: 1 2\npred: E = (1,2)\n").unwrap_err()),
            (2, 7)
        );
    }

    #[test]
    fn concept_source_dispatch() {
        assert!(matches!(
            parse_concept_source("domain: 1\npred: P/1 = (1)\n").unwrap(),
            ConceptSource::Model(_)
        ));
        assert!(matches!(
            parse_concept_source("objects: a\npredicates: P\n").unwrap(),
            ConceptSource::Context(_)
        ));
        assert_eq!(
            syntax(parse_concept_source("objects: a\ndomain: 1\n").unwrap_err()),
            (2, 1)
        );
    }
}
