//! The Galois correspondence between sets of objects (tuples) and sets of
//! predicates true on them, its two closure operators, and enumeration of
//! the closed pairs (formal concepts).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;

use fixedbitset::FixedBitSet;

use crate::error::Error;
use crate::lattice::Lattice;
use crate::poset::{check_label, Poset};

/// Most incidence cells a context may have.
pub const MAX_CELLS: usize = 1 << 20;

/// Default bound on the number of enumerated concepts.
pub const DEFAULT_CONCEPT_CAP: usize = 1 << 16;

/// Marker for sets of objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objects {}

/// Marker for sets of predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicates {}

/// A subset of one side of a context, by index.
pub struct Subset<K> {
    bits: FixedBitSet,
    _side: PhantomData<K>,
}

pub type ObjectSet = Subset<Objects>;
pub type PredicateSet = Subset<Predicates>;

impl<K> Clone for Subset<K> {
    fn clone(&self) -> Self {
        Subset {
            bits: self.bits.clone(),
            _side: PhantomData,
        }
    }
}

impl<K> PartialEq for Subset<K> {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl<K> Eq for Subset<K> {}

impl<K> fmt::Debug for Subset<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl<K> Subset<K> {
    pub fn empty(universe: usize) -> Self {
        Subset {
            bits: FixedBitSet::with_capacity(universe),
            _side: PhantomData,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.bits.insert_range(..);
        s
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.bits.insert(i);
        }
        s
    }

    /// The subset whose members are the set bits of `mask` (bit `i` is index `i`).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_indices(universe, (0..universe).filter(|&i| mask & (1 << i) != 0))
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.bits.set(i, false);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Smallest index in `self` but not in `other`.
    fn first_outside(&self, other: &Self) -> Option<usize> {
        self.bits.difference(&other.bits).next()
    }
}

/// A closed pair: `extent` is exactly the objects having every predicate
/// of `intent`, and vice versa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: PredicateSet,
}

/// Objects, predicates, and which predicates hold on which objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    predicates: Vec<String>,
    object_index: BTreeMap<String, usize>,
    predicate_index: BTreeMap<String, usize>,
    /// Per object, the predicates true on it.
    rows: Vec<FixedBitSet>,
    /// Per predicate, the objects it is true on.
    cols: Vec<FixedBitSet>,
}

fn index_of(names: &[String], dup: fn(String) -> Error) -> Result<BTreeMap<String, usize>, Error> {
    let mut index = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        check_label(name)?;
        if index.insert(name.clone(), i).is_some() {
            return Err(dup(name.clone()));
        }
    }
    Ok(index)
}

impl FormalContext {
    /// Builds a context from `(object, predicate)` incidence pairs.
    pub fn new<S: AsRef<str>>(
        objects: &[S],
        predicates: &[S],
        incidence: &[(S, S)],
    ) -> Result<Self, Error> {
        let objects: Vec<String> = objects.iter().map(|s| s.as_ref().to_string()).collect();
        let predicates: Vec<String> = predicates.iter().map(|s| s.as_ref().to_string()).collect();
        let object_index = index_of(&objects, Error::DuplicateLabel)?;
        let predicate_index = index_of(&predicates, Error::DuplicateLabel)?;
        let mut pairs = BTreeSet::new();
        for (o, p) in incidence {
            let oi = *object_index
                .get(o.as_ref())
                .ok_or_else(|| Error::UnknownObject(o.as_ref().into()))?;
            let pi = *predicate_index
                .get(p.as_ref())
                .ok_or_else(|| Error::UnknownPredicate(p.as_ref().into()))?;
            pairs.insert((oi, pi));
        }
        FormalContext::assemble(objects, predicates, |o, p| pairs.contains(&(o, p)))
    }

    /// Builds a context from an incidence predicate over indices.
    pub fn from_fn(
        objects: Vec<String>,
        predicates: Vec<String>,
        incident: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, Error> {
        index_of(&objects, Error::DuplicateLabel)?;
        index_of(&predicates, Error::DuplicateLabel)?;
        FormalContext::assemble(objects, predicates, incident)
    }

    fn assemble(
        objects: Vec<String>,
        predicates: Vec<String>,
        incident: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, Error> {
        let (n, m) = (objects.len(), predicates.len());
        if n.saturating_mul(m) > MAX_CELLS {
            return Err(Error::SizeLimitExceeded {
                what: "context",
                limit: MAX_CELLS,
            });
        }
        let mut rows = alloc::vec![FixedBitSet::with_capacity(m); n];
        let mut cols = alloc::vec![FixedBitSet::with_capacity(n); m];
        for (o, row) in rows.iter_mut().enumerate() {
            for (p, col) in cols.iter_mut().enumerate() {
                if incident(o, p) {
                    row.insert(p);
                    col.insert(o);
                }
            }
        }
        let object_index = objects.iter().cloned().zip(0..).collect();
        let predicate_index = predicates.iter().cloned().zip(0..).collect();
        Ok(FormalContext {
            objects,
            predicates,
            object_index,
            predicate_index,
            rows,
            cols,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn predicates(&self) -> &[String] {
        &self.predicates
    }

    pub fn incident(&self, object: usize, predicate: usize) -> bool {
        self.rows[object].contains(predicate)
    }

    /// Incidence pairs in object-major order.
    pub fn incidence(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(o, row)| row.ones().map(move |p| (o, p)))
    }

    pub fn objects_named<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet, Error> {
        let mut set = ObjectSet::empty(self.objects.len());
        for name in names {
            let i = self
                .object_index
                .get(name.as_ref())
                .ok_or_else(|| Error::UnknownObject(name.as_ref().into()))?;
            set.insert(*i);
        }
        Ok(set)
    }

    pub fn predicates_named<S: AsRef<str>>(&self, names: &[S]) -> Result<PredicateSet, Error> {
        let mut set = PredicateSet::empty(self.predicates.len());
        for name in names {
            let i = self
                .predicate_index
                .get(name.as_ref())
                .ok_or_else(|| Error::UnknownPredicate(name.as_ref().into()))?;
            set.insert(*i);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<&str> {
        set.iter().map(|i| self.objects[i].as_str()).collect()
    }

    pub fn predicate_names(&self, set: &PredicateSet) -> Vec<&str> {
        set.iter().map(|i| self.predicates[i].as_str()).collect()
    }

    /// Objects on which every predicate of `ps` is true.
    pub fn extent(&self, ps: &PredicateSet) -> ObjectSet {
        let mut out = ObjectSet::full(self.objects.len());
        for p in ps.iter() {
            out.bits.intersect_with(&self.cols[p]);
        }
        out
    }

    /// Predicates true on every object of `os`.
    pub fn intent(&self, os: &ObjectSet) -> PredicateSet {
        let mut out = PredicateSet::full(self.predicates.len());
        for o in os.iter() {
            out.bits.intersect_with(&self.rows[o]);
        }
        out
    }

    pub fn closure_objects(&self, os: &ObjectSet) -> ObjectSet {
        self.extent(&self.intent(os))
    }

    pub fn closure_predicates(&self, ps: &PredicateSet) -> PredicateSet {
        self.intent(&self.extent(ps))
    }

    pub fn concepts(&self) -> Result<Vec<Concept>, Error> {
        self.concepts_capped(DEFAULT_CONCEPT_CAP)
    }

    /// All concepts, ordered by extent with the first object most
    /// significant, largest extent first.
    pub fn concepts_capped(&self, cap: usize) -> Result<Vec<Concept>, Error> {
        let n = self.objects.len();
        let mut extents = Vec::new();
        let mut current = Some(self.closure_objects(&ObjectSet::empty(n)));
        while let Some(extent) = current {
            if extents.len() == cap {
                return Err(Error::ConceptCapExceeded(cap));
            }
            current = self.next_closure(&extent);
            extents.push(extent);
        }
        // next-closure walks upwards from the smallest extent
        extents.reverse();
        Ok(extents
            .into_iter()
            .map(|extent| Concept {
                intent: self.intent(&extent),
                extent,
            })
            .collect())
    }

    /// Successor of a closed extent in lectic order, index 0 most significant.
    fn next_closure(&self, closed: &ObjectSet) -> Option<ObjectSet> {
        let mut prefix = closed.clone();
        for i in (0..self.objects.len()).rev() {
            if prefix.contains(i) {
                prefix.remove(i);
            } else {
                let mut grown = prefix.clone();
                grown.insert(i);
                let next = self.closure_objects(&grown);
                if next.first_outside(&prefix).is_none_or(|j| j >= i) {
                    return Some(next);
                }
            }
        }
        None
    }

    /// The concepts ordered by extent inclusion. Labels list each extent,
    /// e.g. `{o1,o2}`.
    pub fn concept_lattice(&self, concepts: &[Concept]) -> Result<Lattice, Error> {
        let labels = concepts
            .iter()
            .map(|c| format!("{{{}}}", self.object_names(&c.extent).join(",")))
            .collect();
        let poset = Poset::from_order_fn(labels, |i, j| {
            concepts[i].extent.is_subset(&concepts[j].extent)
        })?;
        Lattice::from_poset(poset)
    }

    /// Whether index maps `objects` and `predicates` carry this context's
    /// incidence exactly onto `target`'s: `I(o, p)` iff `I'(f o, g p)`.
    pub fn preserves_incidence(
        &self,
        target: &FormalContext,
        objects: &[usize],
        predicates: &[usize],
    ) -> bool {
        if objects.len() != self.objects.len() || predicates.len() != self.predicates.len() {
            return false;
        }
        if objects.iter().any(|&o| o >= target.objects.len())
            || predicates.iter().any(|&p| p >= target.predicates.len())
        {
            return false;
        }
        (0..self.objects.len()).all(|o| {
            (0..self.predicates.len())
                .all(|p| self.incident(o, p) == target.incident(objects[o], predicates[p]))
        })
    }
}

/// A predicate of a [`FiniteModel`] with its extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
    /// Tuples of domain indices.
    pub tuples: BTreeSet<Vec<usize>>,
}

/// A domain with named relations over it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiniteModel {
    domain: Vec<String>,
    relations: Vec<Relation>,
}

impl FiniteModel {
    pub fn new<S: AsRef<str>>(domain: &[S]) -> Result<Self, Error> {
        let domain: Vec<String> = domain.iter().map(|s| s.as_ref().to_string()).collect();
        index_of(&domain, Error::DuplicateLabel)?;
        Ok(FiniteModel {
            domain,
            relations: Vec::new(),
        })
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Adds a relation; every tuple must have length `arity` and draw from
    /// the domain.
    pub fn add_relation<S: AsRef<str>>(
        &mut self,
        name: &str,
        arity: usize,
        tuples: &[Vec<S>],
    ) -> Result<(), Error> {
        check_label(name)?;
        if self.relations.iter().any(|r| r.name == name) {
            return Err(Error::DuplicateLabel(name.into()));
        }
        let mut set = BTreeSet::new();
        for tuple in tuples {
            if tuple.len() != arity {
                return Err(Error::ArityMismatch {
                    predicate: name.into(),
                    expected: arity,
                    found: tuple.len(),
                });
            }
            let mut ids = Vec::with_capacity(arity);
            for x in tuple {
                let i = self
                    .domain
                    .iter()
                    .position(|d| d == x.as_ref())
                    .ok_or_else(|| Error::OutOfDomain(x.as_ref().into()))?;
                ids.push(i);
            }
            set.insert(ids);
        }
        self.relations.push(Relation {
            name: name.into(),
            arity,
            tuples: set,
        });
        Ok(())
    }

    pub fn tuple_label(&self, tuple: &[usize]) -> String {
        let parts: Vec<&str> = tuple.iter().map(|&i| self.domain[i].as_str()).collect();
        format!("({})", parts.join(","))
    }
}

/// Context whose objects are all `arity`-tuples over the domain (in
/// lexicographic index order) and whose predicates are the model's
/// relations.
pub fn context_from_model(model: &FiniteModel, arity: usize) -> Result<FormalContext, Error> {
    if let Some(r) = model.relations.iter().find(|r| r.arity != arity) {
        return Err(Error::ArityMismatch {
            predicate: r.name.clone(),
            expected: arity,
            found: r.arity,
        });
    }
    let d = model.domain.len();
    let count = u32::try_from(arity)
        .ok()
        .and_then(|k| d.checked_pow(k))
        .filter(|&c| c.saturating_mul(model.relations.len().max(1)) <= MAX_CELLS)
        .ok_or(Error::SizeLimitExceeded {
            what: "tuple space",
            limit: MAX_CELLS,
        })?;
    let tuples: Vec<Vec<usize>> = (0..count)
        .map(|mut code| {
            let mut t = alloc::vec![0; arity];
            for slot in t.iter_mut().rev() {
                *slot = code % d;
                code /= d;
            }
            t
        })
        .collect();
    let objects = tuples.iter().map(|t| model.tuple_label(t)).collect();
    let predicates = model.relations.iter().map(|r| r.name.clone()).collect();
    FormalContext::from_fn(objects, predicates, |o, p| {
        model.relations[p].tuples.contains(&tuples[o])
    })
}
