//! Intervals `[a, b]` of a lattice, their local complements, and towers of
//! Heyting algebras obtained by declaring successively smaller elements
//! "false".

use alloc::vec::Vec;

use crate::error::{Error, Precondition};
use crate::lattice::Lattice;
use crate::laws::{self, Law, LawReport};
use crate::poset::Elem;

/// The sublattice `{x : a <= x <= b}` of a parent lattice.
#[derive(Clone, Debug)]
pub struct IntervalAlgebra<'l> {
    parent: &'l Lattice,
    bottom: Elem,
    top: Elem,
    members: Vec<Elem>,
}

/// Canonical local complement of a member: the parent join of every member
/// meeting `x` at the interval bottom, and whether it is a true complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalComplement {
    pub candidate: Elem,
    pub is_complement: bool,
}

fn not_comparable(l: &Lattice, a: Elem, b: Elem) -> Error {
    Error::NotComparable {
        a: l.label(a).into(),
        b: l.label(b).into(),
    }
}

/// The interval `[a, b]`; fails unless `a <= b`.
pub fn interval(l: &Lattice, a: Elem, b: Elem) -> Result<IntervalAlgebra<'_>, Error> {
    if !l.leq(a, b) {
        return Err(not_comparable(l, a, b));
    }
    let members = l
        .elements()
        .filter(|&x| l.leq(a, x) && l.leq(x, b))
        .collect();
    Ok(IntervalAlgebra {
        parent: l,
        bottom: a,
        top: b,
        members,
    })
}

/// Double projection `x -> a v (x ^ b)` into `[a, b]`.
pub fn project(l: &Lattice, a: Elem, b: Elem, x: Elem) -> Result<Elem, Error> {
    if !l.leq(a, b) {
        return Err(not_comparable(l, a, b));
    }
    Ok(l.join(a, l.meet(x, b)))
}

/// Negation relative to the designated "false" element `d`: the greatest
/// `z` with `z ^ x <= d`, when it exists.
pub fn relative_negation(l: &Lattice, d: Elem, x: Elem) -> Option<Elem> {
    laws::heyting_implication(l, x, d)
}

impl<'l> IntervalAlgebra<'l> {
    pub fn parent(&self) -> &'l Lattice {
        self.parent
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    /// Members in parent index order.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: an interval contains at least its endpoints.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.parent.leq(self.bottom, x) && self.parent.leq(x, self.top)
    }

    /// Position of `x` among the members.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The interval as a standalone lattice with the parent's labels.
    /// Element `i` of the result is `members()[i]`.
    pub fn to_lattice(&self) -> Lattice {
        self.parent
            .restrict(&self.members)
            .expect("intervals are closed under meet and join")
    }

    fn check_member(&self, x: Elem) -> Result<(), Error> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotMember(self.parent.label(x).into()))
        }
    }

    /// Join of `{y in [a,b] : y ^ x = a}`, computed in the parent. Membership
    /// of the result and both complement equations are checked, not assumed.
    pub fn local_complement(&self, x: Elem) -> Result<LocalComplement, Error> {
        self.check_member(x)?;
        let l = self.parent;
        let candidate = l.join_all(
            self.members
                .iter()
                .copied()
                .filter(|&y| l.meet(y, x) == self.bottom),
        );
        let is_complement = self.contains(candidate)
            && l.meet(x, candidate) == self.bottom
            && l.join(x, candidate) == self.top;
        Ok(LocalComplement {
            candidate,
            is_complement,
        })
    }

    /// Every member's canonical local complement is a complement; witness `[x]`.
    pub fn has_local_complements(&self) -> LawReport {
        let found = self
            .members
            .iter()
            .copied()
            .find(|&x| !self.local_complement(x).expect("member").is_complement);
        LawReport::from_search(Law::LocalComplements, found.map(|x| alloc::vec![x]))
    }

    /// Existential form: every member has some `y` in the interval with
    /// `x ^ y = a` and `x v y = b`; witness `[x]`.
    pub fn local_complementation(&self) -> LawReport {
        let l = self.parent;
        let found = self.members.iter().copied().find(|&x| {
            !self
                .members
                .iter()
                .any(|&y| l.meet(x, y) == self.bottom && l.join(x, y) == self.top)
        });
        LawReport::from_search(Law::LocalComplementation, found.map(|x| alloc::vec![x]))
    }
}

/// Checks that every subinterval `[a, b]` of `[d, c]` has local complements
/// given by `x -> a v (x' ^ b)`, where `x'` is the local complement of `x`
/// in `[d, c]`. Witness `[a, b, x]`.
///
/// Requires `d <= c`, a modular lattice, and local complements on `[d, c]`.
pub fn check_subinterval_theorem(l: &Lattice, d: Elem, c: Elem) -> Result<LawReport, Error> {
    let fail = |p| Error::PreconditionFailed(p);
    if !l.leq(d, c) {
        return Err(fail(Precondition::NotComparable));
    }
    if !laws::is_modular(l).holds {
        return Err(fail(Precondition::NotModular));
    }
    let outer = interval(l, d, c)?;
    if !outer.has_local_complements().holds {
        return Err(fail(Precondition::LacksLocalComplements));
    }
    let members = outer.members();
    for &a in members {
        for &b in members.iter().filter(|&&b| l.leq(a, b)) {
            let inner = interval(l, a, b)?;
            for &x in inner.members() {
                let local = inner.local_complement(x)?;
                let outer_comp = outer.local_complement(x)?.candidate;
                let projected = l.join(a, l.meet(outer_comp, b));
                if !local.is_complement || local.candidate != projected {
                    return Ok(LawReport::fail(
                        Law::SubintervalTheorem,
                        alloc::vec![a, b, x],
                    ));
                }
            }
        }
    }
    Ok(LawReport::pass(Law::SubintervalTheorem))
}

/// One level of a [`HeytingTower`]: the interval `[zero, top]` with its own
/// implication and negation.
#[derive(Clone, Debug)]
pub struct TowerLevel<'l> {
    interval: IntervalAlgebra<'l>,
    lattice: Lattice,
    /// Negation of `members()[i]`, as a parent element.
    negation: Vec<Elem>,
}

impl<'l> TowerLevel<'l> {
    pub fn zero(&self) -> Elem {
        self.interval.bottom()
    }

    pub fn interval(&self) -> &IntervalAlgebra<'l> {
        &self.interval
    }

    /// The level as a standalone lattice (element `i` is `members()[i]`).
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn members(&self) -> &[Elem] {
        self.interval.members()
    }

    /// Negation with the level's zero as "false"; `None` outside the level.
    pub fn negate(&self, x: Elem) -> Option<Elem> {
        self.interval.position(x).map(|i| self.negation[i])
    }

    /// Implication computed inside the level.
    pub fn implies(&self, x: Elem, y: Elem) -> Option<Elem> {
        let (i, j) = (self.interval.position(x)?, self.interval.position(y)?);
        laws::heyting_implication(&self.lattice, Elem::new(i), Elem::new(j))
            .map(|z| self.members()[z.index()])
    }
}

/// Heyting algebras on `[d_i, top]` for a strictly descending chain of
/// relative zeros `d_1 > d_2 > ...`, nested as sets.
#[derive(Clone, Debug)]
pub struct HeytingTower<'l> {
    parent: &'l Lattice,
    levels: Vec<TowerLevel<'l>>,
}

impl<'l> HeytingTower<'l> {
    pub fn parent(&self) -> &'l Lattice {
        self.parent
    }

    pub fn levels(&self) -> &[TowerLevel<'l>] {
        &self.levels
    }

    pub fn zeros(&self) -> Vec<Elem> {
        self.levels.iter().map(TowerLevel::zero).collect()
    }
}

/// Builds the tower for `zeros` over a distributive lattice, verifying
/// that levels nest and each is a Heyting algebra.
pub fn build_tower<'l>(l: &'l Lattice, zeros: &[Elem]) -> Result<HeytingTower<'l>, Error> {
    if !laws::is_distributive(l).holds {
        return Err(Error::NotDistributive);
    }
    for pair in zeros.windows(2) {
        if !l.lt(pair[1], pair[0]) {
            return Err(Error::NotDescending {
                upper: l.label(pair[0]).into(),
                lower: l.label(pair[1]).into(),
            });
        }
    }
    let top = l.top();
    let mut levels: Vec<TowerLevel<'l>> = Vec::with_capacity(zeros.len());
    for &zero in zeros {
        let interval = interval(l, zero, top)?;
        let lattice = interval.to_lattice();
        if !laws::is_heyting(&lattice).holds {
            return Err(Error::InvariantViolated(
                "tower level is not a Heyting algebra",
            ));
        }
        let local_zero = lattice.bottom();
        let negation = lattice
            .elements()
            .map(|x| {
                laws::heyting_implication(&lattice, x, local_zero)
                    .map(|z| interval.members()[z.index()])
                    .expect("level is Heyting")
            })
            .collect();
        if let Some(prev) = levels.last() {
            if !prev.members().iter().all(|&x| interval.contains(x)) {
                return Err(Error::InvariantViolated("tower levels are not nested"));
            }
        }
        levels.push(TowerLevel {
            interval,
            lattice,
            negation,
        });
    }
    Ok(HeytingTower { parent: l, levels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Lattice {
        Lattice::powerset(3).unwrap()
    }

    fn names<'a>(l: &'a Lattice, xs: &[Elem]) -> Vec<&'a str> {
        xs.iter().map(|&x| l.label(x)).collect()
    }

    #[test]
    fn interval_membership() {
        let l = p3();
        let e = |s| l.elem(s).unwrap();
        let q = interval(&l, e("{1}"), e("{1,2,3}")).unwrap();
        assert_eq!(names(&l, q.members()), ["{1}", "{1,2}", "{1,3}", "{1,2,3}"]);
        assert_eq!(interval(&l, e("{2}"), e("{2}")).unwrap().len(), 1);
        assert_eq!(
            interval(&l, e("{1}"), e("{2}")).unwrap_err(),
            Error::NotComparable {
                a: "{1}".into(),
                b: "{2}".into()
            }
        );
    }

    #[test]
    fn projection_examples() {
        let l = p3();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(
            project(&l, e("{1}"), e("{1,2}"), e("{2,3}")).unwrap(),
            e("{1,2}")
        );
        assert_eq!(
            project(&l, e("{1}"), e("{1,2}"), e("{1,2}")).unwrap(),
            e("{1,2}")
        );
        assert_eq!(
            project(&l, e("{1}"), e("{1,2}"), l.bottom()).unwrap(),
            e("{1}")
        );
    }

    #[test]
    fn local_complement_examples() {
        let l = p3();
        let e = |s| l.elem(s).unwrap();
        let q = interval(&l, e("{1}"), l.top()).unwrap();
        assert_eq!(
            q.local_complement(e("{1,2}")).unwrap(),
            LocalComplement {
                candidate: e("{1,3}"),
                is_complement: true
            }
        );
        assert_eq!(q.local_complement(q.bottom()).unwrap().candidate, q.top());
        assert_eq!(q.local_complement(q.top()).unwrap().candidate, q.bottom());
        assert_eq!(
            q.local_complement(e("{2}")).unwrap_err(),
            Error::NotMember("{2}".into())
        );

        let m3 = Lattice::m3();
        let full = interval(&m3, m3.bottom(), m3.top()).unwrap();
        let p = m3.elem("p").unwrap();
        assert_eq!(
            full.local_complement(p).unwrap(),
            LocalComplement {
                candidate: m3.top(),
                is_complement: false
            }
        );
        let r = full.has_local_complements();
        assert!(!r.holds);
        assert_eq!(r.witness, [p]);
        // complements exist, the canonical candidate just is not one of them
        assert!(full.local_complementation().holds);
    }

    #[test]
    fn subinterval_theorem_preconditions() {
        let chain = Lattice::chain(4).unwrap();
        assert_eq!(
            check_subinterval_theorem(&chain, chain.bottom(), chain.top()).unwrap_err(),
            Error::PreconditionFailed(Precondition::LacksLocalComplements)
        );
        let n5 = Lattice::n5();
        assert_eq!(
            check_subinterval_theorem(&n5, n5.bottom(), n5.top()).unwrap_err(),
            Error::PreconditionFailed(Precondition::NotModular)
        );
        let l = p3();
        assert!(
            check_subinterval_theorem(&l, l.bottom(), l.top())
                .unwrap()
                .holds
        );
        let x = l.elem("{1}").unwrap();
        assert!(check_subinterval_theorem(&l, x, x).unwrap().holds);
        assert_eq!(
            check_subinterval_theorem(&l, l.top(), l.bottom()).unwrap_err(),
            Error::PreconditionFailed(Precondition::NotComparable)
        );
    }

    #[test]
    fn relative_negation_examples() {
        let l = p3();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(
            relative_negation(&l, l.bottom(), e("{1,2}")),
            Some(e("{3}"))
        );
        assert_eq!(relative_negation(&l, e("{3}"), e("{1,2}")), Some(e("{3}")));
        assert_eq!(relative_negation(&l, e("{1,2}"), e("{1}")), Some(l.top()));
    }

    #[test]
    fn tower_of_powerset() {
        let l = p3();
        let e = |s| l.elem(s).unwrap();
        let tower = build_tower(&l, &[e("{3}"), l.bottom()]).unwrap();
        let [upper, lower] = tower.levels() else {
            panic!("two levels")
        };
        assert_eq!(upper.members().len(), 4);
        assert_eq!(lower.members().len(), 8);
        assert_eq!(upper.negate(e("{1,3}")), Some(e("{2,3}")));
        assert_eq!(lower.negate(e("{1,3}")), Some(e("{2}")));
        assert_eq!(upper.negate(e("{1}")), None);
        assert_eq!(upper.implies(e("{1,3}"), e("{3}")), Some(e("{2,3}")));
    }

    #[test]
    fn tower_errors() {
        let l = p3();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(
            build_tower(&l, &[l.bottom(), e("{3}")]).unwrap_err(),
            Error::NotDescending {
                upper: "{}".into(),
                lower: "{3}".into()
            }
        );
        assert_eq!(
            build_tower(&Lattice::m3(), &[]).unwrap_err(),
            Error::NotDistributive
        );
        let single = build_tower(&l, &[l.bottom()]).unwrap();
        let level = &single.levels()[0];
        for x in l.elements() {
            assert_eq!(level.negate(x), Some(Elem::new(7 - x.index())));
        }
    }
}
