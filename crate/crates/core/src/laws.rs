//! Exhaustive decision procedures for lattice classes.
//!
//! Every check scans its quantifiers in element-index order and reports the
//! first violation, so witnesses are reproducible.

use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::Lattice;
use crate::poset::Elem;

/// Names of the laws and axioms reported by the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Modular,
    Distributive,
    Complemented,
    Boolean,
    Heyting,
    /// Every member's canonical (join-of-candidates) local complement is a complement.
    LocalComplements,
    /// Every member has some complement inside the interval.
    LocalComplementation,
    SubintervalTheorem,
    RingAxioms,
    Cyclicity,
    CyclicAntisymmetry,
    /// `[a,b,c] & [a,c,d] => not [a,b,d]`, as sometimes printed.
    TransitivityPrinted,
    /// `[a,b,c] & [a,c,d] => [a,b,d]`.
    TransitivityStandard,
    Completeness,
}

impl Law {
    pub fn name(&self) -> &'static str {
        match self {
            Law::Modular => "modular",
            Law::Distributive => "distributive",
            Law::Complemented => "complemented",
            Law::Boolean => "boolean",
            Law::Heyting => "heyting",
            Law::LocalComplements => "local-complements",
            Law::LocalComplementation => "local-complementation",
            Law::SubintervalTheorem => "subinterval-theorem",
            Law::RingAxioms => "ring-axioms",
            Law::Cyclicity => "cyclicity",
            Law::CyclicAntisymmetry => "antisymmetry",
            Law::TransitivityPrinted => "transitivity-printed",
            Law::TransitivityStandard => "transitivity-standard",
            Law::Completeness => "completeness",
        }
    }
}

/// Outcome of a law check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: Law,
    pub holds: bool,
    pub witness: Vec<Elem>,
    /// Which sub-condition failed, for checks bundling several.
    pub detail: Option<&'static str>,
}

impl LawReport {
    pub fn pass(law: Law) -> Self {
        LawReport {
            law,
            holds: true,
            witness: Vec::new(),
            detail: None,
        }
    }

    pub fn fail(law: Law, witness: Vec<Elem>) -> Self {
        LawReport {
            law,
            holds: false,
            witness,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: &'static str) -> Self {
        self.detail = Some(detail);
        self
    }

    /// Builds a report from the first witness produced by `search`.
    pub(crate) fn from_search(law: Law, found: Option<Vec<Elem>>) -> Self {
        match found {
            Some(w) => LawReport::fail(law, w),
            None => LawReport::pass(law),
        }
    }
}

fn modular_at(l: &Lattice, x: Elem, y: Elem, b: Elem) -> bool {
    !l.leq(x, b) || l.join(x, l.meet(y, b)) == l.meet(l.join(x, y), b)
}

fn distributive_at(l: &Lattice, x: Elem, y: Elem, z: Elem) -> bool {
    l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z))
}

fn first_triple(l: &Lattice, ok: impl Fn(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                if !ok(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

/// Modular law `x <= b => x v (y ^ b) = (x v y) ^ b`; witness `[x, y, b]`.
pub fn is_modular(l: &Lattice) -> LawReport {
    let mut found = None;
    'outer: for x in l.elements() {
        for b in l.elements().filter(|&b| l.leq(x, b)) {
            for y in l.elements() {
                if !modular_at(l, x, y, b) {
                    found = Some(vec![x, y, b]);
                    break 'outer;
                }
            }
        }
    }
    LawReport::from_search(Law::Modular, found)
}

/// `x ^ (y v z) = (x ^ y) v (x ^ z)`; witness `[x, y, z]`.
pub fn is_distributive(l: &Lattice) -> LawReport {
    LawReport::from_search(
        Law::Distributive,
        first_triple(l, |x, y, z| distributive_at(l, x, y, z)),
    )
}

/// All complements of `x`: `y` with `x ^ y = bottom` and `x v y = top`.
pub fn complements_of(l: &Lattice, x: Elem) -> Vec<Elem> {
    let (bottom, top) = l.bounds();
    l.elements()
        .filter(|&y| l.meet(x, y) == bottom && l.join(x, y) == top)
        .collect()
}

/// Every element has a complement; witness `[x]`.
pub fn is_complemented(l: &Lattice) -> LawReport {
    let found = l.elements().find(|&x| complements_of(l, x).is_empty());
    LawReport::from_search(Law::Complemented, found.map(|x| vec![x]))
}

/// Distributive and complemented. The witness is the distributivity triple
/// when that fails, otherwise the element without a complement.
pub fn is_boolean(l: &Lattice) -> LawReport {
    let dist = is_distributive(l);
    if !dist.holds {
        return LawReport::fail(Law::Boolean, dist.witness).with_detail("distributive");
    }
    let comp = is_complemented(l);
    if !comp.holds {
        return LawReport::fail(Law::Boolean, comp.witness).with_detail("complemented");
    }
    LawReport::pass(Law::Boolean)
}

/// The total complement table of a Boolean algebra, `None` otherwise.
pub fn boolean_negation(l: &Lattice) -> Option<Vec<Elem>> {
    if !is_boolean(l).holds {
        return None;
    }
    Some(l.elements().map(|x| complements_of(l, x)[0]).collect())
}

/// Relative pseudocomplement: the greatest `z` with `x ^ z <= y`, if the set
/// of such `z` has a greatest member.
pub fn heyting_implication(l: &Lattice, x: Elem, y: Elem) -> Option<Elem> {
    let candidates = l.elements().filter(|&z| l.leq(l.meet(x, z), y));
    let sup = l.join_all(candidates);
    // the set has a greatest member exactly when its join belongs to it
    l.leq(l.meet(x, sup), y).then_some(sup)
}

/// Implication exists for every pair; witness `[x, y]`.
pub fn is_heyting(l: &Lattice) -> LawReport {
    let mut found = None;
    'outer: for x in l.elements() {
        for y in l.elements() {
            if heyting_implication(l, x, y).is_none() {
                found = Some(vec![x, y]);
                break 'outer;
            }
        }
    }
    LawReport::from_search(Law::Heyting, found)
}

/// Re-evaluates `law` at `witness`; true when the violation reproduces.
/// Only meaningful for the lattice laws of this module.
pub fn violated_at(l: &Lattice, law: Law, witness: &[Elem]) -> bool {
    match (law, witness) {
        (Law::Modular, &[x, y, b]) => !modular_at(l, x, y, b),
        (Law::Distributive, &[x, y, z]) => !distributive_at(l, x, y, z),
        (Law::Complemented, &[x]) => complements_of(l, x).is_empty(),
        (Law::Boolean, &[x, y, z]) => !distributive_at(l, x, y, z),
        (Law::Boolean, &[x]) => complements_of(l, x).is_empty(),
        (Law::Heyting, &[x, y]) => heyting_implication(l, x, y).is_none(),
        _ => false,
    }
}

/// Searches for a pentagon sublattice `[0', a, b, c, 1']` with `a < b`,
/// `a ^ c = b ^ c = 0'` and `a v c = b v c = 1'`.
pub fn find_pentagon(l: &Lattice) -> Option<[Elem; 5]> {
    for a in l.elements() {
        for b in l.elements().filter(|&b| b != a && l.leq(a, b)) {
            for c in l.elements() {
                let bottom = l.meet(a, c);
                let top = l.join(a, c);
                if bottom == l.meet(b, c) && top == l.join(b, c) && !l.comparable(a, c) {
                    return Some([bottom, a, b, c, top]);
                }
            }
        }
    }
    None
}

/// Searches for a diamond sublattice `[0', x, y, z, 1']`: three distinct
/// elements with equal pairwise meets and equal pairwise joins.
pub fn find_diamond(l: &Lattice) -> Option<[Elem; 5]> {
    for x in l.elements() {
        for y in l.elements().filter(|&y| y > x) {
            let bottom = l.meet(x, y);
            let top = l.join(x, y);
            if bottom == x || bottom == y {
                continue;
            }
            for z in l.elements().filter(|&z| z > y) {
                if l.meet(x, z) == bottom
                    && l.meet(y, z) == bottom
                    && l.join(x, z) == top
                    && l.join(y, z) == top
                {
                    return Some([bottom, x, y, z, top]);
                }
            }
        }
    }
    None
}
