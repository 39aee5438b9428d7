//! Complete cyclic orders and their localizations.
//!
//! Fixing a base point `a` turns a cyclic order into a linear one,
//! `b <= c` iff `b = c`, `b = a`, or `[a, b, c]`. Every base point thus
//! yields its own chain, and with it its own many-valued chain logic.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::Error;
use crate::lattice::Lattice;
use crate::laws::{Law, LawReport};
use crate::poset::{index_labels, Elem, Poset};

/// Largest supported carrier; the relation is stored as an `n^3` bitset.
pub const MAX_CYCLIC: usize = 256;

/// A ternary relation `[a, b, c]` on pairwise distinct elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicOrder {
    labels: Vec<String>,
    index: BTreeMap<String, Elem>,
    triples: FixedBitSet,
}

/// One report per axiom, with both readings of transitivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAxioms {
    pub cyclicity: LawReport,
    pub antisymmetry: LawReport,
    pub transitivity_printed: LawReport,
    pub transitivity_standard: LawReport,
    pub completeness: LawReport,
}

impl CyclicAxioms {
    pub fn reports(&self) -> [&LawReport; 5] {
        [
            &self.cyclicity,
            &self.antisymmetry,
            &self.transitivity_printed,
            &self.transitivity_standard,
            &self.completeness,
        ]
    }

    /// The axioms localization relies on; the printed transitivity is not
    /// among them.
    pub fn operative(&self) -> [&LawReport; 4] {
        [
            &self.cyclicity,
            &self.antisymmetry,
            &self.completeness,
            &self.transitivity_standard,
        ]
    }
}

impl CyclicOrder {
    pub fn new<S: AsRef<str>>(labels: &[S], triples: &[(S, S, S)]) -> Result<Self, Error> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        if labels.len() > MAX_CYCLIC {
            return Err(Error::SizeLimitExceeded {
                what: "cyclic order",
                limit: MAX_CYCLIC,
            });
        }
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut order = CyclicOrder {
            labels,
            index,
            triples: FixedBitSet::with_capacity(n * n * n),
        };
        for (a, b, c) in triples {
            let (x, y, z) = (
                order.lookup(a.as_ref())?,
                order.lookup(b.as_ref())?,
                order.lookup(c.as_ref())?,
            );
            if x == y || y == z || x == z {
                return Err(Error::NonDistinctTriple(
                    a.as_ref().into(),
                    b.as_ref().into(),
                    c.as_ref().into(),
                ));
            }
            let slot = order.slot(x, y, z);
            order.triples.insert(slot);
        }
        Ok(order)
    }

    /// Wraps a listed linear order into a cycle: `[a, b, c]` iff walking
    /// forward from `a` one meets `b` strictly before `c`.
    pub fn from_cycle<S: AsRef<str>>(labels: &[S]) -> Result<Self, Error> {
        if labels.len() < 3 {
            return Err(Error::TooFew(labels.len()));
        }
        let n = labels.len();
        let mut order = CyclicOrder::new::<S>(labels, &[])?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (db, dc) = ((b + n - a) % n, (c + n - a) % n);
                    if db != 0 && dc != 0 && db < dc {
                        let slot = order.slot(Elem::new(a), Elem::new(b), Elem::new(c));
                        order.triples.insert(slot);
                    }
                }
            }
        }
        Ok(order)
    }

    /// `fromCycle(0, 1, ..., n-1)`.
    pub fn standard(n: usize) -> Result<Self, Error> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        CyclicOrder::from_cycle(&labels)
    }

    fn slot(&self, a: Elem, b: Elem, c: Elem) -> usize {
        let n = self.len();
        (a.index() * n + b.index()) * n + c.index()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x.index()]
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.index.get(label).copied()
    }

    pub fn lookup(&self, label: &str) -> Result<Elem, Error> {
        self.elem(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.len()).map(Elem::new)
    }

    /// Whether `[a, b, c]` holds.
    pub fn between(&self, a: Elem, b: Elem, c: Elem) -> bool {
        self.triples.contains(self.slot(a, b, c))
    }

    /// All related triples in index order.
    pub fn triples(&self) -> impl Iterator<Item = (Elem, Elem, Elem)> + '_ {
        let n = self.len();
        self.triples.ones().map(move |s| {
            (
                Elem::new(s / (n * n)),
                Elem::new(s / n % n),
                Elem::new(s % n),
            )
        })
    }

    fn first_tuple<const K: usize>(&self, ok: impl Fn([Elem; K]) -> bool) -> Option<Vec<Elem>> {
        let n = self.len();
        let total = n.pow(K as u32);
        (0..total)
            .map(|mut code| {
                let mut t = [Elem::new(0); K];
                for slot in t.iter_mut().rev() {
                    *slot = Elem::new(code % n);
                    code /= n;
                }
                t
            })
            .find(|&t| !ok(t))
            .map(|t| t.to_vec())
    }

    /// Exhaustive check of each axiom; the witness is the first violating
    /// tuple in lexicographic index order.
    pub fn check_axioms(&self) -> CyclicAxioms {
        let r = |a, b, c| self.between(a, b, c);
        let distinct = |a: Elem, b: Elem, c: Elem| a != b && b != c && a != c;
        CyclicAxioms {
            cyclicity: LawReport::from_search(
                Law::Cyclicity,
                self.first_tuple(|[a, b, c]| !r(a, b, c) || r(b, c, a)),
            ),
            antisymmetry: LawReport::from_search(
                Law::CyclicAntisymmetry,
                self.first_tuple(|[a, b, c]| !r(a, b, c) || !r(c, b, a)),
            ),
            transitivity_printed: LawReport::from_search(
                Law::TransitivityPrinted,
                self.first_tuple(|[a, b, c, d]| !(r(a, b, c) && r(a, c, d)) || !r(a, b, d)),
            ),
            transitivity_standard: LawReport::from_search(
                Law::TransitivityStandard,
                self.first_tuple(|[a, b, c, d]| !(r(a, b, c) && r(a, c, d)) || r(a, b, d)),
            ),
            completeness: LawReport::from_search(
                Law::Completeness,
                self.first_tuple(|[a, b, c]| !distinct(a, b, c) || r(a, b, c) || r(c, b, a)),
            ),
        }
    }

    /// The linear order seen from `base`.
    pub fn localize(&self, base: Elem) -> Result<LocalizedChain, Error> {
        let axioms = self.check_axioms();
        if let Some(failed) = axioms.operative().into_iter().find(|r| !r.holds) {
            return Err(Error::AxiomsFail(failed.law));
        }
        let leq = |b: usize, c: usize| {
            b == c || b == base.index() || self.between(base, Elem::new(b), Elem::new(c))
        };
        let poset = Poset::from_order_fn(self.labels.clone(), leq)?;
        if !poset.is_partial_order() || !poset.is_total() {
            return Err(Error::InvariantViolated("localized order is not a chain"));
        }
        let mut order: Vec<Elem> = self.elements().collect();
        order.sort_by_key(|&x| poset.elements().filter(|&y| poset.leq(y, x)).count());
        debug_assert_eq!(order[0], base);
        let labels = order.iter().map(|&x| self.label(x).to_string()).collect();
        Ok(LocalizedChain {
            base,
            order,
            labels,
        })
    }

    /// One chain logic per base point, in element order.
    pub fn vector_logic(&self) -> Result<Vec<ChainLogic>, Error> {
        self.elements()
            .map(|a| self.localize(a)?.chain_logic())
            .collect()
    }
}

/// A cyclic order read linearly from a base point, which is least.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedChain {
    base: Elem,
    order: Vec<Elem>,
    labels: Vec<String>,
}

impl LocalizedChain {
    pub fn base(&self) -> Elem {
        self.base
    }

    /// Elements of the cyclic order, ascending.
    pub fn order(&self) -> &[Elem] {
        &self.order
    }

    /// Labels, ascending.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn chain_logic(&self) -> Result<ChainLogic, Error> {
        ChainLogic::new(Lattice::chain_of(self.labels.clone())?)
    }
}

/// Goedel-style logic on a finite chain: meet is min, join is max,
/// `x -> y` is top when `x <= y` and `y` otherwise, negation is `x -> bottom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLogic {
    lattice: Lattice,
}

impl ChainLogic {
    pub fn new(lattice: Lattice) -> Result<Self, Error> {
        if !lattice.poset().is_total() {
            return Err(Error::NotAChain);
        }
        Ok(ChainLogic { lattice })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The designated "false" value: the base point of the localization.
    pub fn falsum(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn implies(&self, x: Elem, y: Elem) -> Elem {
        if self.lattice.leq(x, y) {
            self.lattice.top()
        } else {
            y
        }
    }

    pub fn negate(&self, x: Elem) -> Elem {
        self.implies(x, self.falsum())
    }
}
