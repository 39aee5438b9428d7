//! Finite partially ordered sets.
//!
//! The order is kept as a pair of dense bit matrices (up-sets and down-sets
//! per element), except for powersets, which are represented implicitly by
//! bitmask inclusion so that they can grow to `2^16` elements.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::Error;

/// Maximum number of elements of a densely stored structure.
pub const MAX_DENSE: usize = 4096;

/// Maximum base-set size of a bitmask-backed powerset.
pub const MAX_POWERSET_BITS: u32 = 16;

/// Index of an element inside its structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Order {
    Dense {
        /// `up[x]` holds every `y` with `x <= y`.
        up: Vec<FixedBitSet>,
        /// `down[x]` holds every `y` with `y <= x`.
        down: Vec<FixedBitSet>,
    },
    /// Subsets of `{1, ..., bits}` keyed by bitmask; `flipped` reverses inclusion.
    Subset { bits: u32, flipped: bool },
}

/// A finite poset with uniquely labelled elements. Immutable once built.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    index: BTreeMap<String, Elem>,
    pub(crate) order: Order,
}

pub(crate) fn check_label(label: &str) -> Result<(), Error> {
    if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

pub(crate) fn index_labels(labels: &[String]) -> Result<BTreeMap<String, Elem>, Error> {
    let mut index = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        check_label(label)?;
        if index.insert(label.clone(), Elem::new(i)).is_some() {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(index)
}

fn transpose(rows: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = rows.len();
    let mut cols = vec![FixedBitSet::with_capacity(n); n];
    for (i, row) in rows.iter().enumerate() {
        for j in row.ones() {
            cols[j].insert(i);
        }
    }
    cols
}

pub(crate) fn subset_label(mask: usize, bits: u32) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for k in 0..bits {
        if mask & (1 << k) != 0 {
            if !first {
                out.push(',');
            }
            out.push_str(&format!("{}", k + 1));
            first = false;
        }
    }
    out.push('}');
    out
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of
    /// `pairs`, each pair read as `lower <= upper`.
    pub fn build<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Poset, Error> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        if labels.len() > MAX_DENSE {
            return Err(Error::SizeLimitExceeded {
                what: "poset",
                limit: MAX_DENSE,
            });
        }
        let index = index_labels(&labels)?;
        let n = labels.len();
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let mut edges = Vec::with_capacity(pairs.len());
        for (lo, hi) in pairs {
            edges.push((lookup(lo.as_ref())?.index(), lookup(hi.as_ref())?.index()));
        }

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for &(lo, hi) in &edges {
            up[lo].insert(hi);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for (i, row) in up.iter_mut().enumerate() {
                if i != k && row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if j > i && up[j].contains(i) {
                    let mut cycle = shortest_path(n, &edges, i, j);
                    let back = shortest_path(n, &edges, j, i);
                    cycle.extend(back.into_iter().skip(1));
                    let names = cycle.into_iter().map(|e| labels[e].clone()).collect();
                    return Err(Error::CycleDetected(names));
                }
            }
        }
        let down = transpose(&up);
        Ok(Poset {
            labels,
            index,
            order: Order::Dense { up, down },
        })
    }

    /// Builds a poset from a relation that the caller asserts is already a
    /// partial order. Checked in debug builds only.
    pub(crate) fn from_order_fn(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Poset, Error> {
        let n = labels.len();
        if n > MAX_DENSE {
            return Err(Error::SizeLimitExceeded {
                what: "poset",
                limit: MAX_DENSE,
            });
        }
        let index = index_labels(&labels)?;
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.insert(j);
                }
            }
        }
        let down = transpose(&up);
        let poset = Poset {
            labels,
            index,
            order: Order::Dense { up, down },
        };
        debug_assert!(poset.is_partial_order());
        Ok(poset)
    }

    pub(crate) fn powerset(bits: u32) -> Poset {
        let n = 1usize << bits;
        let labels: Vec<String> = (0..n).map(|m| subset_label(m, bits)).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), Elem::new(i)))
            .collect();
        Poset {
            labels,
            index,
            order: Order::Subset {
                bits,
                flipped: false,
            },
        }
    }

    /// Same elements, reversed order.
    pub fn dual(&self) -> Poset {
        let order = match &self.order {
            Order::Dense { up, down } => Order::Dense {
                up: down.clone(),
                down: up.clone(),
            },
            Order::Subset { bits, flipped } => Order::Subset {
                bits: *bits,
                flipped: !flipped,
            },
        };
        Poset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            order,
        }
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

    /// Like [`Poset::elem`], but reports unknown labels as an error.
    pub fn lookup(&self, label: &str) -> Result<Elem, Error> {
        self.elem(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.len()).map(Elem::new)
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        match &self.order {
            Order::Dense { up, .. } => up[x.index()].contains(y.index()),
            Order::Subset { flipped: false, .. } => x.0 & !y.0 == 0,
            Order::Subset { flipped: true, .. } => y.0 & !x.0 == 0,
        }
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Cover pairs `(lower, upper)` of the Hasse diagram, sorted by lower
    /// then upper index.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        match &self.order {
            Order::Dense { up, .. } => {
                let n = self.len();
                for x in 0..n {
                    let mut strict = up[x].clone();
                    strict.set(x, false);
                    // y covers x unless y sits strictly above another z > x
                    let mut shadowed = FixedBitSet::with_capacity(n);
                    for z in strict.ones() {
                        let mut above = up[z].clone();
                        above.set(z, false);
                        shadowed.union_with(&above);
                    }
                    for y in strict.difference(&shadowed) {
                        out.push((Elem::new(x), Elem::new(y)));
                    }
                }
            }
            Order::Subset { bits, flipped } => {
                for x in 0..self.len() {
                    if *flipped {
                        for k in (0..*bits).rev() {
                            if x & (1 << k) != 0 {
                                out.push((Elem::new(x), Elem::new(x & !(1 << k))));
                            }
                        }
                    } else {
                        for k in 0..*bits {
                            if x & (1 << k) == 0 {
                                out.push((Elem::new(x), Elem::new(x | (1 << k))));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Greatest element, if any.
    pub fn top(&self) -> Option<Elem> {
        match &self.order {
            Order::Dense { down, .. } => {
                let n = self.len();
                down.iter()
                    .position(|d| d.count_ones(..) == n)
                    .map(Elem::new)
            }
            Order::Subset { bits, flipped } => {
                Some(Elem::new(if *flipped { 0 } else { (1 << bits) - 1 }))
            }
        }
    }

    /// Least element, if any.
    pub fn bottom(&self) -> Option<Elem> {
        match &self.order {
            Order::Dense { up, .. } => {
                let n = self.len();
                up.iter().position(|u| u.count_ones(..) == n).map(Elem::new)
            }
            Order::Subset { bits, flipped } => {
                Some(Elem::new(if *flipped { (1 << bits) - 1 } else { 0 }))
            }
        }
    }

    /// `(bottom, top)`; either may be absent for a general poset.
    pub fn bounds(&self) -> (Option<Elem>, Option<Elem>) {
        (self.bottom(), self.top())
    }

    /// Exhaustive reflexivity, antisymmetry and transitivity check.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for x in self.elements() {
            if !self.leq(x, x) {
                return false;
            }
        }
        match &self.order {
            Order::Dense { up, .. } => {
                for x in 0..n {
                    for y in up[x].ones() {
                        if y != x && up[y].contains(x) {
                            return false;
                        }
                        if !up[y].is_subset(&up[x]) {
                            return false;
                        }
                    }
                }
                true
            }
            Order::Subset { .. } => true,
        }
    }

    /// True when every pair of elements is comparable.
    pub fn is_total(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.comparable(x, y)))
    }

    /// Bitset of elements below `x` (inclusive). Dense representation only.
    pub(crate) fn down_set(&self, x: usize) -> Option<&FixedBitSet> {
        match &self.order {
            Order::Dense { down, .. } => Some(&down[x]),
            Order::Subset { .. } => None,
        }
    }

    pub(crate) fn up_set(&self, x: usize) -> Option<&FixedBitSet> {
        match &self.order {
            Order::Dense { up, .. } => Some(&up[x]),
            Order::Subset { .. } => None,
        }
    }
}

fn shortest_path(n: usize, edges: &[(usize, usize)], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; n];
    let mut seen = FixedBitSet::with_capacity(n);
    let mut queue = VecDeque::new();
    seen.insert(from);
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(lo, hi) in edges {
            if lo == v && hi != v && !seen.contains(hi) {
                seen.insert(hi);
                prev[hi] = v;
                queue.push_back(hi);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Structural equality: same labels in the same order, same relation.
impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        if self.labels != other.labels {
            return false;
        }
        if let (
            Order::Subset {
                bits: b1,
                flipped: f1,
            },
            Order::Subset {
                bits: b2,
                flipped: f2,
            },
        ) = (&self.order, &other.order)
        {
            return b1 == b2 && f1 == f2;
        }
        self.elements()
            .all(|x| self.elements().all(|y| self.leq(x, y) == other.leq(x, y)))
    }
}

impl Eq for Poset {}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::build(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")],
        )
        .unwrap()
    }

    fn e(p: &Poset, l: &str) -> Elem {
        p.elem(l).unwrap()
    }

    #[test]
    fn singleton_is_reflexive_only() {
        let p = Poset::build::<&str>(&["a"], &[]).unwrap();
        assert!(p.leq(Elem::new(0), Elem::new(0)));
        assert!(p.covers().is_empty());
    }

    #[test]
    fn diamond_closure() {
        let p = diamond();
        // full relation by hand: a below everything, d above everything,
        // b and c incomparable
        let expected = [
            ("a", "a"),
            ("a", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "b"),
            ("b", "d"),
            ("c", "c"),
            ("c", "d"),
            ("d", "d"),
        ];
        for x in p.elements() {
            for y in p.elements() {
                let want = expected.contains(&(p.label(x), p.label(y)));
                assert_eq!(p.leq(x, y), want, "{} <= {}", p.label(x), p.label(y));
            }
        }
        assert!(!p.comparable(e(&p, "b"), e(&p, "c")));
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(
            err,
            Error::CycleDetected(vec!["a".into(), "b".into(), "a".into()])
        );
    }

    #[test]
    fn longer_cycle_is_named() {
        let err =
            Poset::build(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("z", "x")]).unwrap_err();
        assert_eq!(
            err,
            Error::CycleDetected(vec!["x".into(), "y".into(), "z".into(), "x".into()])
        );
    }

    #[test]
    fn label_errors() {
        assert_eq!(
            Poset::build::<&str>(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            Poset::build(&["a"], &[("a", "q")]).unwrap_err(),
            Error::UnknownLabel("q".into())
        );
        assert_eq!(
            Poset::build::<&str>(&[""], &[]).unwrap_err(),
            Error::InvalidLabel("".into())
        );
    }

    #[test]
    fn covers_of_chain_and_diamond() {
        let chain = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let names = |p: &Poset| {
            p.covers()
                .into_iter()
                .map(|(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            names(&chain),
            vec![("a".into(), "b".into()), ("b".into(), "c".into())]
        );
        let d = diamond();
        assert_eq!(
            names(&d),
            vec![
                ("a".into(), "b".into()),
                ("a".into(), "c".into()),
                ("b".into(), "d".into()),
                ("c".into(), "d".into())
            ]
        );
    }

    #[test]
    fn bounds_of_antichain_are_absent() {
        let p = Poset::build::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(p.bounds(), (None, None));
        let d = diamond();
        assert_eq!(d.bounds(), (Some(e(&d, "a")), Some(e(&d, "d"))));
    }

    #[test]
    fn powerset_covers_and_dual() {
        let p = Poset::powerset(2);
        assert_eq!(p.labels(), &["{}", "{1}", "{2}", "{1,2}"]);
        assert_eq!(p.covers().len(), 4);
        let d = p.dual();
        assert!(d.leq(Elem::new(3), Elem::new(0)));
        assert_eq!(d.bottom(), Some(Elem::new(3)));
        assert_eq!(d.dual(), p);
    }
}
