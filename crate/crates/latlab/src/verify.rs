//! Named, exhaustive verification campaigns over fixed structure families.
//!
//! Each campaign runs a list of checks on each of its structures and emits
//! one `CHECK` line per pair. Failures the theory predicts (for instance
//! distributivity on the diamond) are marked `reason=expected-failure`;
//! anything else that disagrees with the prediction is flagged as
//! unexpected and makes the run unsuccessful.

use std::fmt;
use std::ops::AddAssign;

use latlab_core::laws::{self, LawReport};
use latlab_core::{
    build_tower, check_subinterval_theorem, context_from_model, interval, project,
    relative_negation, BooleanRingView, CyclicOrder, Elem, Error, FiniteModel, FormalContext,
    Lattice,
};
use rayon::prelude::*;

use crate::descriptor::{split_top_level, Descriptor, Structure};
use crate::error::LabError;

pub const CAMPAIGNS: [&str; 7] = [
    "boolean-intervals",
    "modular-subintervals",
    "heyting-corollary",
    "tower",
    "gf2",
    "cyclic",
    "galois",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

/// Outcome of one check on one structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub campaign: &'static str,
    pub structure: String,
    pub check: &'static str,
    pub status: Status,
    pub witness: Option<String>,
    pub reason: Option<String>,
    /// The outcome contradicts what the campaign predicts.
    pub unexpected: bool,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CHECK {}/{}/{}: {}",
            self.campaign, self.structure, self.check, self.status
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        if let Some(r) = &self.reason {
            write!(f, " reason={r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.skip += o.skip;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignReport {
    pub name: &'static str,
    pub structures: Vec<String>,
    pub lines: Vec<CheckLine>,
}

impl CampaignReport {
    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for line in &self.lines {
            match line.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::Skip => c.skip += 1,
            }
        }
        c
    }

    pub fn unexpected(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.unexpected)
    }

    pub fn is_success(&self) -> bool {
        self.unexpected().next().is_none()
    }
}

/// The report text: a header per campaign listing its structures, its
/// `CHECK` lines, then one `SUMMARY` line for the whole run.
pub fn render(reports: &[CampaignReport]) -> String {
    let mut out = String::new();
    let mut total = Counts::default();
    for r in reports {
        out.push_str(&format!(
            "# campaign {} structures: {}\n",
            r.name,
            r.structures.join(" ")
        ));
        for line in &r.lines {
            out.push_str(&format!("{line}\n"));
        }
        total += r.counts();
    }
    out.push_str(&format!(
        "SUMMARY pass={} fail={} skip={}\n",
        total.pass, total.fail, total.skip
    ));
    out
}

/// Runs one campaign on the current rayon pool.
pub fn run_campaign(name: &str) -> Result<CampaignReport, LabError> {
    let (name, structures, run) = registry(name)?;
    let lines = structures
        .par_iter()
        .map(|s| {
            let mut sheet = Sheet::new(name, s);
            if let Err(e) = run(&mut sheet, s) {
                sheet.error(e);
            }
            sheet.lines
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(CampaignReport {
        name,
        structures: structures.iter().map(|s| s.to_string()).collect(),
        lines,
    })
}

/// Runs the named campaigns (all of them when `names` is empty) on a pool
/// of `threads` workers, or rayon's default when `None`.
pub fn run_campaigns(
    names: &[&str],
    threads: Option<usize>,
) -> Result<Vec<CampaignReport>, LabError> {
    let names: Vec<&str> = if names.is_empty() {
        CAMPAIGNS.to_vec()
    } else {
        names.to_vec()
    };
    for name in &names {
        registry(name)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| LabError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| names.iter().map(|n| run_campaign(n)).collect())
}

type Runner = fn(&mut Sheet, &str) -> Result<(), Error>;

fn registry(name: &str) -> Result<(&'static str, &'static [&'static str], Runner), LabError> {
    let entry: (&'static str, &'static [&'static str], Runner) = match name {
        "boolean-intervals" => (
            "boolean-intervals",
            &[
                "powerset:2",
                "powerset:3",
                "powerset:4",
                "chain:2",
                "divisors:30",
            ],
            boolean_intervals,
        ),
        "modular-subintervals" => (
            "modular-subintervals",
            &[
                "m3",
                "n5",
                "powerset:3",
                "divisors:36",
                "product(chain:2,m3)",
                "chain:4",
            ],
            modular_subintervals,
        ),
        "heyting-corollary" => (
            "heyting-corollary",
            &[
                "divisors:60",
                "dual(powerset:3)",
                "chain:3",
                "powerset:3",
                "divisors:36",
                "m3",
                "n5",
            ],
            heyting_corollary,
        ),
        "tower" => (
            "tower",
            &[
                "powerset:3@{3},{}",
                "divisors:60@12,2,1",
                "chain:4@2,1,0",
                "m3@p,0",
            ],
            tower,
        ),
        "gf2" => (
            "gf2",
            &[
                "powerset:1",
                "powerset:2",
                "powerset:3",
                "powerset:4",
                "chain:2",
                "divisors:30",
                "product(powerset:2,chain:2)",
                "divisors:12",
            ],
            gf2,
        ),
        "cyclic" => (
            "cyclic",
            &[
                "cycle:3", "cycle:4", "cycle:5", "cycle:6", "cycle:7", "cycle:8",
            ],
            cyclic,
        ),
        "galois" => (
            "galois",
            &["sample", "all-3x3", "model-pairs", "model-numbers"],
            galois,
        ),
        _ => return Err(LabError::UnknownCampaign(name.to_string())),
    };
    Ok(entry)
}

/// Collects the lines for one structure.
struct Sheet {
    campaign: &'static str,
    structure: String,
    lines: Vec<CheckLine>,
}

impl Sheet {
    fn new(campaign: &'static str, structure: &str) -> Self {
        Sheet {
            campaign,
            structure: structure.to_string(),
            lines: Vec::new(),
        }
    }

    fn push(
        &mut self,
        check: &'static str,
        status: Status,
        witness: Option<String>,
        reason: Option<String>,
        unexpected: bool,
    ) {
        self.lines.push(CheckLine {
            campaign: self.campaign,
            structure: self.structure.clone(),
            check,
            status,
            witness,
            reason,
            unexpected,
        });
    }

    /// Records a check whose failure, if any, is described by `witness`.
    /// `predicted_fail` states what the theory says about this structure.
    fn record(&mut self, check: &'static str, witness: Option<String>, predicted_fail: bool) {
        self.record_noted(check, witness, predicted_fail, None);
    }

    fn record_noted(
        &mut self,
        check: &'static str,
        witness: Option<String>,
        predicted_fail: bool,
        note: Option<&str>,
    ) {
        let (status, tag, unexpected) = match (witness.is_some(), predicted_fail) {
            (false, false) => (Status::Pass, None, false),
            (true, true) => (Status::Fail, Some("expected-failure"), false),
            (true, false) => (Status::Fail, Some("unexpected-failure"), true),
            (false, true) => (Status::Pass, Some("unexpected-pass"), true),
        };
        let reason = match (tag, note) {
            (Some(t), Some(n)) => Some(format!("{t}:{n}")),
            (Some(t), None) => Some(t.to_string()),
            (None, n) => n.map(str::to_string),
        };
        let witness = witness.filter(|w| !w.is_empty());
        self.push(check, status, witness, reason, unexpected);
    }

    fn law(&mut self, check: &'static str, l: &Lattice, r: &LawReport, predicted_fail: bool) {
        let witness = (!r.holds).then(|| tuple(l, &r.witness));
        self.record_noted(check, witness, predicted_fail, r.detail);
    }

    fn skip(&mut self, checks: &[&'static str], reason: &str) {
        for &check in checks {
            self.push(check, Status::Skip, None, Some(reason.to_string()), false);
        }
    }

    fn error(&mut self, e: Error) {
        let reason = format!("error:{}", e.to_string().replace(' ', "-"));
        self.push("construct", Status::Fail, None, Some(reason), true);
    }
}

fn tuple(l: &Lattice, xs: &[Elem]) -> String {
    let names: Vec<&str> = xs.iter().map(|&x| l.label(x)).collect();
    format!("({})", names.join(","))
}

fn lattice(desc: &str) -> Result<Lattice, Error> {
    match desc.parse::<Descriptor>()?.build()? {
        Structure::Lattice(l) => Ok(l),
        Structure::Cyclic(_) => Err(Error::InvalidDescriptor(desc.to_string())),
    }
}

/// All `(a, b)` with `a <= b`, in index order.
fn ordered_pairs(l: &Lattice) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    l.elements().flat_map(move |a| {
        l.elements()
            .filter(move |&b| l.leq(a, b))
            .map(move |b| (a, b))
    })
}

/// First `(a, b, x, y)` where `x -> a v (x ^ b)` breaks meet or join.
fn projection_violation(l: &Lattice) -> Option<Vec<Elem>> {
    for (a, b) in ordered_pairs(l) {
        let p = |x| project(l, a, b, x).expect("ordered pair");
        for x in l.elements() {
            for y in l.elements() {
                if p(l.meet(x, y)) != l.meet(p(x), p(y)) || p(l.join(x, y)) != l.join(p(x), p(y)) {
                    return Some(vec![a, b, x, y]);
                }
            }
        }
    }
    None
}

fn boolean_intervals(sheet: &mut Sheet, desc: &str) -> Result<(), Error> {
    const REST: [&str; 5] = [
        "interval-boolean",
        "local-complement-formula",
        "complement-laws",
        "not-subalgebra",
        "projection-homomorphism",
    ];
    let l = lattice(desc)?;
    sheet.law("boolean", &l, &laws::is_boolean(&l), false);
    let Some(neg) = laws::boolean_negation(&l) else {
        sheet.skip(&REST, "not-boolean");
        return Ok(());
    };

    let found = ordered_pairs(&l)
        .find(|&(a, b)| !laws::is_boolean(&interval(&l, a, b).unwrap().to_lattice()).holds);
    sheet.record(
        "interval-boolean",
        found.map(|(a, b)| tuple(&l, &[a, b])),
        false,
    );

    let mut formula = None;
    let mut equations = None;
    for (a, b) in ordered_pairs(&l) {
        let q = interval(&l, a, b)?;
        for &x in q.members() {
            let lc = q.local_complement(x)?;
            let expected = l.join(a, l.meet(neg[x.index()], b));
            if formula.is_none() && (!lc.is_complement || lc.candidate != expected) {
                formula = Some(tuple(&l, &[a, b, x]));
            }
            let c = lc.candidate;
            if equations.is_none() && (l.meet(x, c) != a || l.join(x, c) != b) {
                equations = Some(tuple(&l, &[a, b, x]));
            }
        }
    }
    sheet.record("local-complement-formula", formula, false);
    sheet.record("complement-laws", equations, false);

    // a proper interval whose local negation agrees with the parent's everywhere
    let found = ordered_pairs(&l)
        .filter(|&(a, b)| a != l.bottom() || b != l.top())
        .find(|&(a, b)| {
            let q = interval(&l, a, b).unwrap();
            q.members()
                .iter()
                .all(|&x| q.local_complement(x).unwrap().candidate == neg[x.index()])
        });
    sheet.record(
        "not-subalgebra",
        found.map(|(a, b)| tuple(&l, &[a, b])),
        false,
    );

    sheet.record(
        "projection-homomorphism",
        projection_violation(&l).map(|w| tuple(&l, &w)),
        false,
    );
    Ok(())
}

fn modular_subintervals(sheet: &mut Sheet, desc: &str) -> Result<(), Error> {
    // what the theory predicts, worked out by hand for each structure
    const PREDICTED: &[(&str, &str)] = &[
        ("m3", "local-complements"),
        ("m3", "projection-homomorphism"),
        ("n5", "modular"),
        ("n5", "modular-identity"),
        ("n5", "projection-homomorphism"),
        ("divisors:36", "local-complements"),
        ("divisors:36", "local-complementation"),
        ("product(chain:2,m3)", "local-complements"),
        ("product(chain:2,m3)", "projection-homomorphism"),
        ("chain:4", "local-complements"),
        ("chain:4", "local-complementation"),
    ];
    let predicted = |check: &str| PREDICTED.contains(&(desc, check));
    let l = lattice(desc)?;
    let modular = laws::is_modular(&l);
    sheet.law("modular", &l, &modular, predicted("modular"));

    let mut identity = None;
    'search: for (a, b) in ordered_pairs(&l) {
        for z in l.elements() {
            if l.join(a, l.meet(z, b)) != l.meet(l.join(a, z), b) {
                identity = Some(tuple(&l, &[a, z, b]));
                break 'search;
            }
        }
    }
    sheet.record("modular-identity", identity, predicted("modular-identity"));

    let full = interval(&l, l.bottom(), l.top())?;
    sheet.law(
        "local-complements",
        &l,
        &full.has_local_complements(),
        predicted("local-complements"),
    );
    sheet.law(
        "local-complementation",
        &l,
        &full.local_complementation(),
        predicted("local-complementation"),
    );

    match check_subinterval_theorem(&l, l.bottom(), l.top()) {
        Ok(r) => sheet.law("subinterval-theorem", &l, &r, false),
        Err(Error::PreconditionFailed(p)) => sheet.skip(
            &["subinterval-theorem"],
            &format!("precondition:{}", p.to_string().replace(' ', "-")),
        ),
        Err(e) => return Err(e),
    }

    if modular.holds {
        let (mut applicable, mut total, mut found) = (0, 0, None);
        for (d, c) in ordered_pairs(&l) {
            total += 1;
            match check_subinterval_theorem(&l, d, c) {
                Ok(r) => {
                    applicable += 1;
                    if !r.holds && found.is_none() {
                        let mut w = vec![d, c];
                        w.extend(r.witness);
                        found = Some(tuple(&l, &w));
                    }
                }
                Err(Error::PreconditionFailed(_)) => {}
                Err(e) => return Err(e),
            }
        }
        let note = format!("applicable={applicable}/{total}");
        sheet.record_noted("subinterval-theorem-everywhere", found, false, Some(&note));
    } else {
        sheet.skip(&["subinterval-theorem-everywhere"], "not-modular");
    }

    sheet.record(
        "projection-homomorphism",
        projection_violation(&l).map(|w| tuple(&l, &w)),
        predicted("projection-homomorphism"),
    );
    Ok(())
}

fn heyting_corollary(sheet: &mut Sheet, desc: &str) -> Result<(), Error> {
    const PREDICTED: &[(&str, &str)] = &[
        ("m3", "distributive"),
        ("m3", "heyting"),
        ("m3", "interval-heyting"),
        ("n5", "distributive"),
        ("n5", "heyting"),
        ("n5", "interval-heyting"),
        ("divisors:60", "double-negation"),
        ("divisors:60", "excluded-middle"),
        ("chain:3", "double-negation"),
        ("chain:3", "excluded-middle"),
        ("divisors:36", "double-negation"),
        ("divisors:36", "excluded-middle"),
    ];
    let predicted = |check: &str| PREDICTED.contains(&(desc, check));
    let l = lattice(desc)?;
    sheet.law(
        "distributive",
        &l,
        &laws::is_distributive(&l),
        predicted("distributive"),
    );
    let heyting = laws::is_heyting(&l);
    sheet.law("heyting", &l, &heyting, predicted("heyting"));

    let found = ordered_pairs(&l)
        .find(|&(a, b)| !laws::is_heyting(&interval(&l, a, b).unwrap().to_lattice()).holds);
    sheet.record(
        "interval-heyting",
        found.map(|(a, b)| tuple(&l, &[a, b])),
        predicted("interval-heyting"),
    );

    let mut adjunction = None;
    'search: for x in l.elements() {
        for y in l.elements() {
            if let Some(imp) = laws::heyting_implication(&l, x, y) {
                if let Some(z) = l
                    .elements()
                    .find(|&z| l.leq(l.meet(x, z), y) != l.leq(z, imp))
                {
                    adjunction = Some(tuple(&l, &[x, y, z]));
                    break 'search;
                }
            }
        }
    }
    sheet.record("adjunction", adjunction, false);

    const NEGATION: [&str; 3] = [
        "double-negation-increasing",
        "double-negation",
        "excluded-middle",
    ];
    if !heyting.holds {
        sheet.skip(&NEGATION, "not-heyting");
        return Ok(());
    }
    let neg = |x| laws::heyting_implication(&l, x, l.bottom()).expect("Heyting");
    let first =
        |bad: &dyn Fn(Elem) -> bool| l.elements().find(|&x| bad(x)).map(|x| tuple(&l, &[x]));
    sheet.record(
        "double-negation-increasing",
        first(&|x| !l.leq(x, neg(neg(x)))),
        false,
    );
    sheet.record(
        "double-negation",
        first(&|x| neg(neg(x)) != x),
        predicted("double-negation"),
    );
    sheet.record(
        "excluded-middle",
        first(&|x| l.join(x, neg(x)) != l.top()),
        predicted("excluded-middle"),
    );
    Ok(())
}

fn tower(sheet: &mut Sheet, desc: &str) -> Result<(), Error> {
    const REST: [&str; 5] = [
        "nested",
        "heyting-levels",
        "relative-negation",
        "distinct-negations",
        "descending-rejected",
    ];
    let (base, zeros) = desc
        .split_once('@')
        .ok_or_else(|| Error::InvalidDescriptor(desc.into()))?;
    let l = lattice(base)?;
    let zeros: Vec<Elem> = split_top_level(zeros)
        .into_iter()
        .map(|z| l.lookup(z))
        .collect::<Result<_, _>>()?;
    let predicted_fail = base == "m3";
    let t = match build_tower(&l, &zeros) {
        Ok(t) => {
            sheet.record("build", None, predicted_fail);
            t
        }
        Err(Error::NotDistributive) => {
            let w = laws::is_distributive(&l).witness;
            sheet.record_noted(
                "build",
                Some(tuple(&l, &w)),
                predicted_fail,
                Some("not-distributive"),
            );
            sheet.skip(&REST, "no-tower");
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let levels = t.levels();

    let nested = levels
        .windows(2)
        .find(|w| !w[0].members().iter().all(|x| w[1].members().contains(x)));
    sheet.record(
        "nested",
        nested.map(|w| tuple(&l, &[w[0].zero(), w[1].zero()])),
        false,
    );

    let not_heyting = levels
        .iter()
        .find(|lv| !laws::is_heyting(lv.lattice()).holds);
    sheet.record(
        "heyting-levels",
        not_heyting.map(|lv| tuple(&l, &[lv.zero()])),
        false,
    );

    let mut relative = None;
    'search: for lv in levels {
        for &x in lv.members() {
            if lv.negate(x) != relative_negation(&l, lv.zero(), x) {
                relative = Some(tuple(&l, &[lv.zero(), x]));
                break 'search;
            }
        }
    }
    sheet.record("relative-negation", relative, false);

    // adjacent levels must disagree somewhere on their common carrier
    let same = levels.windows(2).find(|w| {
        w[0].members()
            .iter()
            .all(|&x| w[0].negate(x) == w[1].negate(x))
    });
    sheet.record(
        "distinct-negations",
        same.map(|w| tuple(&l, &[w[0].zero(), w[1].zero()])),
        false,
    );

    if zeros.len() >= 2 {
        let reversed: Vec<Elem> = zeros.iter().rev().copied().collect();
        let accepted = !matches!(build_tower(&l, &reversed), Err(Error::NotDescending { .. }));
        sheet.record(
            "descending-rejected",
            accepted.then(|| tuple(&l, &reversed)),
            false,
        );
    } else {
        sheet.skip(&["descending-rejected"], "single-zero");
    }
    Ok(())
}

fn gf2(sheet: &mut Sheet, desc: &str) -> Result<(), Error> {
    const REST: [&str; 8] = [
        "atoms-cover-bottom",
        "size",
        "coordinates-bijective",
        "round-trip",
        "sum-is-xor",
        "product-is-and",
        "join-identity",
        "ring-axioms",
    ];
    let l = lattice(desc)?;
    let predicted_fail = desc == "divisors:12";
    sheet.law("boolean", &l, &laws::is_boolean(&l), predicted_fail);
    let v = match BooleanRingView::new(&l) {
        Ok(v) => v,
        Err(Error::NotBoolean) => {
            sheet.skip(&REST, "not-boolean");
            return Ok(());
        }
        Err(e) => return Err(e),
    };

    let covers_bottom: Vec<Elem> = l
        .covers()
        .into_iter()
        .filter(|&(lo, _)| lo == l.bottom())
        .map(|(_, hi)| hi)
        .collect();
    let atoms_ok = covers_bottom == v.atoms();
    sheet.record(
        "atoms-cover-bottom",
        (!atoms_ok).then(|| tuple(&l, v.atoms())),
        false,
    );

    let size_ok = l.len() == 1 << v.atoms().len();
    sheet.record("size", (!size_ok).then(|| tuple(&l, v.atoms())), false);

    let mut seen = vec![None; l.len()];
    let mut clash = None;
    for x in l.elements() {
        let code: usize = v
            .coordinates(x)
            .to_bits()
            .iter()
            .rev()
            .fold(0, |c, &b| c << 1 | b as usize);
        if code >= seen.len() {
            clash.get_or_insert_with(|| tuple(&l, &[x]));
        } else if let Some(prev) = seen[code].replace(x) {
            clash.get_or_insert_with(|| tuple(&l, &[prev, x]));
        }
    }
    sheet.record("coordinates-bijective", clash, false);

    let trip = l
        .elements()
        .find(|&x| v.from_coordinates(v.coordinates(x)) != Ok(x));
    sheet.record("round-trip", trip.map(|x| tuple(&l, &[x])), false);

    let pairs = || l.elements().flat_map(|x| l.elements().map(move |y| (x, y)));
    let xor = pairs()
        .find(|&(x, y)| v.coordinates(v.sym_diff(x, y)) != (v.coordinates(x) ^ v.coordinates(y)));
    sheet.record("sum-is-xor", xor.map(|(x, y)| tuple(&l, &[x, y])), false);
    let and = pairs()
        .find(|&(x, y)| v.coordinates(v.product(x, y)) != (v.coordinates(x) & v.coordinates(y)));
    sheet.record(
        "product-is-and",
        and.map(|(x, y)| tuple(&l, &[x, y])),
        false,
    );
    let join = pairs().find(|&(x, y)| v.sym_diff(v.sym_diff(x, y), l.meet(x, y)) != l.join(x, y));
    sheet.record(
        "join-identity",
        join.map(|(x, y)| tuple(&l, &[x, y])),
        false,
    );

    sheet.law("ring-axioms", &l, &v.verify_ring_axioms(), false);
    Ok(())
}

fn cyclic(sheet: &mut Sheet, desc: &str) -> Result<(), Error> {
    let c = match desc.parse::<Descriptor>()?.build()? {
        Structure::Cyclic(c) => c,
        Structure::Lattice(_) => return Err(Error::InvalidDescriptor(desc.into())),
    };
    let n = c.len();
    let names = |w: &[Elem]| {
        let parts: Vec<&str> = w.iter().map(|&x| c.label(x)).collect();
        format!("({})", parts.join(","))
    };
    let ax = c.check_axioms();
    let show = |r: &LawReport| (!r.holds).then(|| names(&r.witness));
    sheet.record("cyclicity", show(&ax.cyclicity), false);
    sheet.record("antisymmetry", show(&ax.antisymmetry), false);
    sheet.record("completeness", show(&ax.completeness), false);
    sheet.record(
        "transitivity-standard",
        show(&ax.transitivity_standard),
        false,
    );
    // with fewer than four points the printed form has no instance to refute it
    let vacuous = (n < 4).then_some("vacuous");
    sheet.record_noted(
        "transitivity-printed",
        show(&ax.transitivity_printed),
        n >= 4,
        vacuous,
    );

    let labels = c.labels();
    let mut rotation = None;
    for k in 1..n {
        let rotated: Vec<&String> = labels[k..].iter().chain(&labels[..k]).collect();
        let r = CyclicOrder::from_cycle(&rotated)?;
        let same = c.elements().all(|a| {
            c.elements().all(|b| {
                c.elements().all(|d| {
                    let find = |x: Elem| r.elem(c.label(x)).unwrap();
                    c.between(a, b, d) == r.between(find(a), find(b), find(d))
                })
            })
        });
        if !same && rotation.is_none() {
            rotation = Some(names(&[c.elements().nth(k).unwrap()]));
        }
    }
    sheet.record("rotation-invariance", rotation, false);

    let mut chains = Vec::with_capacity(n);
    let mut localize = None;
    for base in c.elements() {
        let chain = c.localize(base)?;
        let expected: Vec<Elem> = (0..n).map(|i| Elem::new((base.index() + i) % n)).collect();
        if chain.order() != expected && localize.is_none() {
            localize = Some(names(&[base]));
        }
        chains.push(chain);
    }
    sheet.record("localize", localize, false);
    let recovered = chains[0].labels() == labels;
    sheet.record(
        "round-trip",
        (!recovered).then(|| names(&[Elem::new(0)])),
        false,
    );

    let mut adjunction = None;
    let mut boolean = None;
    for (base, chain) in c.elements().zip(&chains) {
        let logic = chain.chain_logic()?;
        let cl = logic.lattice();
        for x in cl.elements() {
            for y in cl.elements() {
                let imp = logic.implies(x, y);
                for z in cl.elements() {
                    if cl.leq(cl.meet(x, z), y) != cl.leq(z, imp) && adjunction.is_none() {
                        adjunction = Some(format!("{}:{}", c.label(base), tuple(cl, &[x, y, z])));
                    }
                }
            }
        }
        let r = laws::is_boolean(cl);
        if !r.holds && boolean.is_none() {
            boolean = Some(format!("{}:{}", c.label(base), tuple(cl, &r.witness)));
        }
    }
    sheet.record("chain-adjunction", adjunction, false);
    sheet.record("chain-boolean", boolean, n > 2);
    Ok(())
}

/// Incidence as bit rows, read cell by cell from the context.
fn rows_of(c: &FormalContext) -> Vec<u64> {
    (0..c.objects().len())
        .map(|o| {
            (0..c.predicates().len())
                .filter(|&p| c.incident(o, p))
                .fold(0, |m, p| m | 1 << p)
        })
        .collect()
}

/// All closed `(extent, intent)` pairs by trying every object subset,
/// ordered by extent with the first object most significant, largest first.
fn brute_force_concepts(c: &FormalContext) -> Vec<(u64, u64)> {
    let rows = rows_of(c);
    let (n, m) = (rows.len(), c.predicates().len());
    let all_preds = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let intent = |os: u64| {
        (0..n)
            .filter(|&o| os >> o & 1 == 1)
            .fold(all_preds, |acc, o| acc & rows[o])
    };
    let extent = |ps: u64| {
        (0..n)
            .filter(|&o| rows[o] & ps == ps)
            .fold(0u64, |acc, o| acc | 1 << o)
    };
    let mut out: Vec<(u64, u64)> = (0..1u64 << n)
        .filter(|&os| extent(intent(os)) == os)
        .map(|os| (os, intent(os)))
        .collect();
    let key = |os: u64| (0..n).fold(0u64, |k, o| k << 1 | (os >> o & 1));
    out.sort_by_key(|&(os, _)| std::cmp::Reverse(key(os)));
    out
}

fn subset_mask<K>(s: &latlab_core::Subset<K>) -> u64 {
    s.iter().fold(0, |m, i| m | 1 << i)
}

/// First failure of each closure law on one context, keyed by check name.
fn galois_failures(c: &FormalContext) -> Result<[(&'static str, Option<String>); 7], Error> {
    use latlab_core::{ObjectSet, PredicateSet};
    let (n, m) = (c.objects().len(), c.predicates().len());
    let os = |mask: u64| ObjectSet::from_mask(n, mask);
    let ps = |mask: u64| PredicateSet::from_mask(m, mask);
    let show_o = |x: &ObjectSet| format!("{{{}}}", c.object_names(x).join(","));
    let show_p = |x: &PredicateSet| format!("{{{}}}", c.predicate_names(x).join(","));
    let (mut extensive, mut idempotent, mut antitone, mut triple, mut adjunction) =
        (None, None, None, None, None);
    for xm in 0..1u64 << n {
        let x = os(xm);
        let star = c.intent(&x);
        let closed = c.closure_objects(&x);
        if extensive.is_none() && !x.is_subset(&closed) {
            extensive = Some(show_o(&x));
        }
        if idempotent.is_none() && c.closure_objects(&closed) != closed {
            idempotent = Some(show_o(&x));
        }
        if triple.is_none() && c.intent(&closed) != star {
            triple = Some(show_o(&x));
        }
        // supersets of x, enumerated as x plus any subset of its complement
        let free = !xm & ((1u64 << n) - 1);
        let mut extra = free;
        loop {
            if antitone.is_none() && !c.intent(&os(xm | extra)).is_subset(&star) {
                antitone = Some(format!("{}<{}", show_o(&x), show_o(&os(xm | extra))));
            }
            if extra == 0 {
                break;
            }
            extra = (extra - 1) & free;
        }
        for pm in 0..1u64 << m {
            let b = ps(pm);
            if adjunction.is_none() && x.is_subset(&c.extent(&b)) != b.is_subset(&star) {
                adjunction = Some(format!("{}|{}", show_o(&x), show_p(&b)));
            }
        }
    }
    for pm in 0..1u64 << m {
        let p = ps(pm);
        let closed = c.closure_predicates(&p);
        if extensive.is_none() && !p.is_subset(&closed) {
            extensive = Some(show_p(&p));
        }
        if idempotent.is_none() && c.closure_predicates(&closed) != closed {
            idempotent = Some(show_p(&p));
        }
        if triple.is_none() && c.extent(&closed) != c.extent(&p) {
            triple = Some(show_p(&p));
        }
    }
    let concepts = c.concepts()?;
    let got: Vec<(u64, u64)> = concepts
        .iter()
        .map(|k| (subset_mask(&k.extent), subset_mask(&k.intent)))
        .collect();
    let oracle = (got != brute_force_concepts(c)).then(|| format!("count={}", got.len()));
    let lattice = match c.concept_lattice(&concepts) {
        Ok(l) if l.len() == concepts.len() => None,
        Ok(l) => Some(format!("size={}", l.len())),
        Err(e) => Some(e.to_string().replace(' ', "-")),
    };
    Ok([
        ("extensive", extensive),
        ("idempotent", idempotent),
        ("antitone", antitone),
        ("triple-star", triple),
        ("adjunction", adjunction),
        ("concepts-oracle", oracle),
        ("concept-lattice", lattice),
    ])
}

fn galois_contexts(desc: &str) -> Result<Vec<FormalContext>, Error> {
    let named = |objects: &[&str], predicates: &[&str]| -> (Vec<String>, Vec<String>) {
        (
            objects.iter().map(|s| s.to_string()).collect(),
            predicates.iter().map(|s| s.to_string()).collect(),
        )
    };
    match desc {
        "sample" => Ok(vec![FormalContext::new(
            &["o1", "o2", "o3"],
            &["P", "Q"],
            &[("o1", "P"), ("o2", "P"), ("o2", "Q"), ("o3", "Q")],
        )?]),
        "all-3x3" => (0..512u32)
            .map(|bits| {
                let (os, ps) = named(&["o1", "o2", "o3"], &["p1", "p2", "p3"]);
                FormalContext::from_fn(os, ps, |o, p| bits >> (o * 3 + p) & 1 == 1)
            })
            .collect(),
        "model-pairs" => {
            let mut m = FiniteModel::new(&["1", "2", "3"])?;
            m.add_relation("Succ", 2, &[vec!["1", "2"], vec!["2", "3"], vec!["3", "1"]])?;
            m.add_relation("Less", 2, &[vec!["1", "2"], vec!["1", "3"], vec!["2", "3"]])?;
            m.add_relation("Same", 2, &[vec!["1", "1"], vec!["2", "2"], vec!["3", "3"]])?;
            Ok(vec![context_from_model(&m, 2)?])
        }
        "model-numbers" => {
            let mut m = FiniteModel::new(&["1", "2", "3", "4", "5", "6"])?;
            let unary = |xs: &[&'static str]| xs.iter().map(|&x| vec![x]).collect::<Vec<_>>();
            m.add_relation("Even", 1, &unary(&["2", "4", "6"]))?;
            m.add_relation("Odd", 1, &unary(&["1", "3", "5"]))?;
            m.add_relation("Prime", 1, &unary(&["2", "3", "5"]))?;
            m.add_relation("Small", 1, &unary(&["1", "2", "3"]))?;
            Ok(vec![context_from_model(&m, 1)?])
        }
        _ => Err(Error::InvalidDescriptor(desc.into())),
    }
}

fn galois(sheet: &mut Sheet, desc: &str) -> Result<(), Error> {
    let contexts = galois_contexts(desc)?;
    let mut first: Vec<(&'static str, Option<String>)> = Vec::new();
    for (i, c) in contexts.iter().enumerate() {
        let failures = galois_failures(c)?;
        if first.is_empty() {
            first = failures.iter().map(|(k, _)| (*k, None)).collect();
        }
        for ((_, slot), (_, found)) in first.iter_mut().zip(failures) {
            if slot.is_none() {
                *slot = found.map(|w| {
                    if contexts.len() > 1 {
                        format!("#{i}:{w}")
                    } else {
                        w
                    }
                });
            }
        }
    }
    for (check, found) in first {
        sheet.record(check, found, false);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_campaign() {
        assert!(matches!(run_campaign("nope"), Err(LabError::UnknownCampaign(n)) if n == "nope"));
        assert!(matches!(
            run_campaigns(&["gf2", "nope"], Some(1)),
            Err(LabError::UnknownCampaign(_))
        ));
    }

    #[test]
    fn check_line_format() {
        let line = CheckLine {
            campaign: "gf2",
            structure: "divisors:12".into(),
            check: "boolean",
            status: Status::Fail,
            witness: Some("(2)".into()),
            reason: Some("expected-failure:complemented".into()),
            unexpected: false,
        };
        assert_eq!(
            line.to_string(),
            "CHECK gf2/divisors:12/boolean: FAIL witness=(2) reason=expected-failure:complemented"
        );
    }

    #[test]
    fn sheet_classification() {
        let mut s = Sheet::new("c", "s");
        s.record("a", None, false);
        s.record("b", Some("(x)".into()), true);
        s.record("c", Some("(x)".into()), false);
        s.record("d", None, true);
        let got: Vec<(Status, bool)> = s.lines.iter().map(|l| (l.status, l.unexpected)).collect();
        assert_eq!(
            got,
            [
                (Status::Pass, false),
                (Status::Fail, false),
                (Status::Fail, true),
                (Status::Pass, true)
            ]
        );
    }
}
