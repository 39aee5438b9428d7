//! Finite lattices with materialized meet and join tables, plus the standard
//! generator family used throughout the checks.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, MissingBound};
use crate::poset::{Elem, Order, Poset, MAX_DENSE, MAX_POWERSET_BITS};

#[derive(Clone, Debug)]
enum Ops {
    Table {
        meet: Vec<u16>,
        join: Vec<u16>,
    },
    /// Meet and join are bitwise on the element index (see [`Order::Subset`]).
    Subset,
}

/// A finite, nonempty lattice. Immutable once built.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    ops: Ops,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl Eq for Lattice {}

impl Lattice {
    /// Materializes meet and join tables, failing with the first pair (in
    /// index order) that lacks a greatest lower or least upper bound.
    pub fn from_poset(poset: Poset) -> Result<Lattice, Error> {
        if poset.is_empty() {
            return Err(Error::EmptyLattice);
        }
        if let Order::Subset { .. } = poset.order {
            return Ok(Lattice {
                poset,
                ops: Ops::Subset,
            });
        }
        let n = poset.len();
        let counts_down: Vec<usize> = (0..n)
            .map(|x| poset.down_set(x).unwrap().count_ones(..))
            .collect();
        let counts_up: Vec<usize> = (0..n)
            .map(|x| poset.up_set(x).unwrap().count_ones(..))
            .collect();
        let mut meet = alloc::vec![0u16; n * n];
        let mut join = alloc::vec![0u16; n * n];
        for x in 0..n {
            for y in x..n {
                let witness = |missing| Error::NotALattice {
                    x: poset.labels()[x].clone(),
                    y: poset.labels()[y].clone(),
                    missing,
                };
                let mut lower = poset.down_set(x).unwrap().clone();
                lower.intersect_with(poset.down_set(y).unwrap());
                // the glb, if any, is the lower bound with the largest down-set
                let m = lower
                    .ones()
                    .max_by_key(|&z| counts_down[z])
                    .filter(|&z| lower.is_subset(poset.down_set(z).unwrap()))
                    .ok_or_else(|| witness(MissingBound::Meet))?;
                let mut upper = poset.up_set(x).unwrap().clone();
                upper.intersect_with(poset.up_set(y).unwrap());
                let j = upper
                    .ones()
                    .max_by_key(|&z| counts_up[z])
                    .filter(|&z| upper.is_subset(poset.up_set(z).unwrap()))
                    .ok_or_else(|| witness(MissingBound::Join))?;
                meet[x * n + y] = m as u16;
                meet[y * n + x] = m as u16;
                join[x * n + y] = j as u16;
                join[y * n + x] = j as u16;
            }
        }
        Ok(Lattice {
            poset,
            ops: Ops::Table { meet, join },
        })
    }

    /// Builds a lattice from caller-supplied operations that are known to be
    /// the meet and join of `leq`.
    fn from_ops(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        meet: impl Fn(usize, usize) -> usize,
        join: impl Fn(usize, usize) -> usize,
    ) -> Result<Lattice, Error> {
        if labels.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let n = labels.len();
        let poset = Poset::from_order_fn(labels, leq)?;
        let mut mt = alloc::vec![0u16; n * n];
        let mut jt = alloc::vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                mt[x * n + y] = meet(x, y) as u16;
                jt[x * n + y] = join(x, y) as u16;
            }
        }
        Ok(Lattice {
            poset,
            ops: Ops::Table { meet: mt, join: jt },
        })
    }

    /// Boolean algebra of subsets of `{1, ..., n}`.
    pub fn powerset(n: u32) -> Result<Lattice, Error> {
        if n > MAX_POWERSET_BITS {
            return Err(Error::SizeLimitExceeded {
                what: "powerset base",
                limit: MAX_POWERSET_BITS as usize,
            });
        }
        Ok(Lattice {
            poset: Poset::powerset(n),
            ops: Ops::Subset,
        })
    }

    /// Chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Lattice, Error> {
        if n > MAX_DENSE {
            return Err(Error::SizeLimitExceeded {
                what: "chain",
                limit: MAX_DENSE,
            });
        }
        Lattice::chain_of((0..n).map(|i| i.to_string()).collect())
    }

    /// Chain whose elements ascend in the order given.
    pub fn chain_of(labels: Vec<String>) -> Result<Lattice, Error> {
        Lattice::from_ops(labels, |x, y| x <= y, usize::min, usize::max)
    }

    /// Divisors of `n` ordered by divisibility.
    pub fn divisors(n: u64) -> Result<Lattice, Error> {
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let mut divs = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                divs.push(d);
                if d != n / d {
                    divs.push(n / d);
                }
            }
            d += 1;
        }
        divs.sort_unstable();
        if divs.len() > MAX_DENSE {
            return Err(Error::SizeLimitExceeded {
                what: "divisor lattice",
                limit: MAX_DENSE,
            });
        }
        let pos: BTreeMap<u64, usize> = divs.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let labels = divs.iter().map(|d| d.to_string()).collect();
        let gcd = |a: u64, b: u64| {
            let (mut a, mut b) = (a, b);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        Lattice::from_ops(
            labels,
            |x, y| divs[y] % divs[x] == 0,
            |x, y| pos[&gcd(divs[x], divs[y])],
            |x, y| pos[&(divs[x] / gcd(divs[x], divs[y]) * divs[y])],
        )
    }

    /// The diamond: bottom `0`, three pairwise incomparable atoms `p q r`, top `1`.
    pub fn m3() -> Lattice {
        let poset = Poset::build(
            &["0", "p", "q", "r", "1"],
            &[
                ("0", "p"),
                ("0", "q"),
                ("0", "r"),
                ("p", "1"),
                ("q", "1"),
                ("r", "1"),
            ],
        )
        .expect("m3 is a poset");
        Lattice::from_poset(poset).expect("m3 is a lattice")
    }

    /// The pentagon: `0 < a < b < 1` and `0 < c < 1`.
    pub fn n5() -> Lattice {
        let poset = Poset::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .expect("n5 is a poset");
        Lattice::from_poset(poset).expect("n5 is a lattice")
    }

    /// Componentwise order on pairs, labelled `(x,y)`.
    pub fn product(left: &Lattice, right: &Lattice) -> Result<Lattice, Error> {
        let (n1, n2) = (left.len(), right.len());
        if n1.saturating_mul(n2) > MAX_DENSE {
            return Err(Error::SizeLimitExceeded {
                what: "product lattice",
                limit: MAX_DENSE,
            });
        }
        let split = |i: usize| (Elem::new(i / n2), Elem::new(i % n2));
        let mut labels = Vec::with_capacity(n1 * n2);
        for x in left.elements() {
            for y in right.elements() {
                labels.push(format!("({},{})", left.label(x), right.label(y)));
            }
        }
        let pair = |(x, y): (Elem, Elem)| x.index() * n2 + y.index();
        Lattice::from_ops(
            labels,
            |i, j| {
                let ((a, b), (c, d)) = (split(i), split(j));
                left.leq(a, c) && right.leq(b, d)
            },
            |i, j| {
                let ((a, b), (c, d)) = (split(i), split(j));
                pair((left.meet(a, c), right.meet(b, d)))
            },
            |i, j| {
                let ((a, b), (c, d)) = (split(i), split(j));
                pair((left.join(a, c), right.join(b, d)))
            },
        )
    }

    /// Same labels with the order reversed; meet and join trade places.
    pub fn dual(&self) -> Lattice {
        let ops = match &self.ops {
            Ops::Table { meet, join } => Ops::Table {
                meet: join.clone(),
                join: meet.clone(),
            },
            Ops::Subset => Ops::Subset,
        };
        Lattice {
            poset: self.poset.dual(),
            ops,
        }
    }

    /// Restriction to `members`, which must be closed under meet and join.
    /// Element `i` of the result corresponds to `members[i]`.
    pub(crate) fn restrict(&self, members: &[Elem]) -> Result<Lattice, Error> {
        let local: BTreeMap<Elem, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let labels = members.iter().map(|&x| self.label(x).to_string()).collect();
        let closed = |z: Elem| local.get(&z).copied();
        for &x in members {
            for &y in members {
                if closed(self.meet(x, y)).is_none() || closed(self.join(x, y)).is_none() {
                    return Err(Error::InvariantViolated("subset is not a sublattice"));
                }
            }
        }
        Lattice::from_ops(
            labels,
            |i, j| self.leq(members[i], members[j]),
            |i, j| local[&self.meet(members[i], members[j])],
            |i, j| local[&self.join(members[i], members[j])],
        )
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    /// Always false: lattices are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn label(&self, x: Elem) -> &str {
        self.poset.label(x)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn elem(&self, label: &str) -> Option<Elem> {
        self.poset.elem(label)
    }

    pub fn lookup(&self, label: &str) -> Result<Elem, Error> {
        self.poset.lookup(label)
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        self.poset.elements()
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        self.poset.lt(x, y)
    }

    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.poset.comparable(x, y)
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        match &self.ops {
            Ops::Table { meet, .. } => Elem::new(meet[x.index() * self.len() + y.index()] as usize),
            Ops::Subset => self.bitwise(x, y, false),
        }
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        match &self.ops {
            Ops::Table { join, .. } => Elem::new(join[x.index() * self.len() + y.index()] as usize),
            Ops::Subset => self.bitwise(x, y, true),
        }
    }

    fn bitwise(&self, x: Elem, y: Elem, join: bool) -> Elem {
        let flipped = matches!(self.poset.order, Order::Subset { flipped: true, .. });
        let (a, b) = (x.index(), y.index());
        Elem::new(if join != flipped { a | b } else { a & b })
    }

    /// Join of all elements of `items`; `bottom` for an empty iterator.
    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn top(&self) -> Elem {
        self.poset.top().expect("finite lattices have a top")
    }

    pub fn bottom(&self) -> Elem {
        self.poset.bottom().expect("finite lattices have a bottom")
    }

    pub fn bounds(&self) -> (Elem, Elem) {
        (self.bottom(), self.top())
    }

    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        self.poset.covers()
    }

    /// Atoms (covers of the bottom) in index order.
    pub fn atoms(&self) -> Vec<Elem> {
        let bottom = self.bottom();
        self.elements()
            .filter(|&x| {
                x != bottom
                    && self.leq(bottom, x)
                    && self
                        .elements()
                        .all(|z| z == bottom || z == x || !(self.leq(z, x)))
            })
            .collect()
    }
}

/// Descriptor of a member of the standard lattice family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Powerset(u32),
    Chain(usize),
    Divisors(u64),
    M3,
    N5,
    Product(Box<Generator>, Box<Generator>),
    Dual(Box<Generator>),
}

impl Generator {
    pub fn build(&self) -> Result<Lattice, Error> {
        match self {
            Generator::Powerset(n) => Lattice::powerset(*n),
            Generator::Chain(n) => Lattice::chain(*n),
            Generator::Divisors(n) => Lattice::divisors(*n),
            Generator::M3 => Ok(Lattice::m3()),
            Generator::N5 => Ok(Lattice::n5()),
            Generator::Product(a, b) => Lattice::product(&a.build()?, &b.build()?),
            Generator::Dual(g) => Ok(g.build()?.dual()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Powerset(n) => write!(f, "powerset:{n}"),
            Generator::Chain(n) => write!(f, "chain:{n}"),
            Generator::Divisors(n) => write!(f, "divisors:{n}"),
            Generator::M3 => f.write_str("m3"),
            Generator::N5 => f.write_str("n5"),
            Generator::Product(a, b) => write!(f, "product({a},{b})"),
            Generator::Dual(g) => write!(f, "dual({g})"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    /// Parses `powerset:N`, `chain:N`, `divisors:N`, `m3`, `n5`,
    /// `product(G,G)` and `dual(G)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidDescriptor(s.to_string());
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Generator::Dual(Box::new(inner.parse().map_err(|_| bad())?)));
        }
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0usize;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                    ',' if depth == 0 => {
                        let a = inner[..i].parse().map_err(|_| bad())?;
                        let b = inner[i + 1..].parse().map_err(|_| bad())?;
                        return Ok(Generator::Product(Box::new(a), Box::new(b)));
                    }
                    _ => {}
                }
            }
            return Err(bad());
        }
        match s {
            "m3" => return Ok(Generator::M3),
            "n5" => return Ok(Generator::N5),
            _ => {}
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "powerset" => Ok(Generator::Powerset(arg.parse().map_err(|_| bad())?)),
            "chain" => Ok(Generator::Chain(arg.parse().map_err(|_| bad())?)),
            "divisors" => Ok(Generator::Divisors(arg.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn diamond_poset() -> Poset {
        Poset::build(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")],
        )
        .unwrap()
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = Poset::build::<&str>(&["a", "b"], &[]).unwrap();
        assert_eq!(
            Lattice::from_poset(p).unwrap_err(),
            Error::NotALattice {
                x: "a".into(),
                y: "b".into(),
                missing: MissingBound::Meet
            }
        );
    }

    #[test]
    fn missing_join_is_reported() {
        // bottom with two maximal elements
        let p = Poset::build(&["0", "x", "y"], &[("0", "x"), ("0", "y")]).unwrap();
        assert_eq!(
            Lattice::from_poset(p).unwrap_err(),
            Error::NotALattice {
                x: "x".into(),
                y: "y".into(),
                missing: MissingBound::Join
            }
        );
    }

    #[test]
    fn diamond_meet_and_join() {
        let l = Lattice::from_poset(diamond_poset()).unwrap();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(l.meet(e("b"), e("c")), e("a"));
        assert_eq!(l.join(e("b"), e("c")), e("d"));
        assert_eq!(l.bounds(), (e("a"), e("d")));
    }

    /// Brute-force glb: the lower bound above every other lower bound.
    fn glb_oracle(l: &Lattice, x: Elem, y: Elem) -> Elem {
        let lower: Vec<Elem> = l
            .elements()
            .filter(|&z| l.leq(z, x) && l.leq(z, y))
            .collect();
        let best: Vec<Elem> = lower
            .iter()
            .copied()
            .filter(|&z| lower.iter().all(|&w| l.leq(w, z)))
            .collect();
        assert_eq!(best.len(), 1);
        best[0]
    }

    #[test]
    fn tables_agree_with_brute_force() {
        for l in [
            Lattice::divisors(60).unwrap(),
            Lattice::m3(),
            Lattice::n5(),
            Lattice::product(&Lattice::chain(3).unwrap(), &Lattice::m3()).unwrap(),
            Lattice::powerset(3).unwrap().dual(),
        ] {
            for x in l.elements() {
                for y in l.elements() {
                    assert_eq!(l.meet(x, y), glb_oracle(&l, x, y));
                    assert_eq!(l.join(x, y), glb_oracle(&l.dual(), x, y));
                }
            }
        }
    }

    #[test]
    fn divisors_of_twelve() {
        let l = Lattice::divisors(12).unwrap();
        assert_eq!(l.labels(), &["1", "2", "3", "4", "6", "12"]);
        let e = |s| l.elem(s).unwrap();
        assert_eq!(l.meet(e("4"), e("6")), e("2"));
        assert_eq!(l.join(e("4"), e("6")), e("12"));
    }

    #[test]
    fn dual_of_chain_reverses() {
        let c = Lattice::chain(3).unwrap();
        let d = c.dual();
        assert_eq!(d.bottom(), c.top());
        assert!(d.leq(Elem::new(2), Elem::new(1)));
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn product_bounds_are_pairs_of_bounds() {
        let l =
            Lattice::product(&Lattice::chain(2).unwrap(), &Lattice::divisors(6).unwrap()).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(l.label(l.bottom()), "(0,1)");
        assert_eq!(l.label(l.top()), "(1,6)");
    }

    #[test]
    fn atoms_of_powerset() {
        let l = Lattice::powerset(3).unwrap();
        let names: Vec<&str> = l.atoms().into_iter().map(|x| l.label(x)).collect();
        assert_eq!(names, vec!["{1}", "{2}", "{3}"]);
    }

    #[test]
    fn size_limits() {
        assert!(matches!(
            Lattice::powerset(17),
            Err(Error::SizeLimitExceeded { .. })
        ));
        assert!(matches!(
            Lattice::chain(5000),
            Err(Error::SizeLimitExceeded { .. })
        ));
        let big = Lattice::chain(100).unwrap();
        assert!(matches!(
            Lattice::product(&big, &big),
            Err(Error::SizeLimitExceeded { .. })
        ));
        assert_eq!(Lattice::chain(0).unwrap_err(), Error::EmptyLattice);
    }

    #[test]
    fn descriptor_round_trip() {
        for s in [
            "powerset:3",
            "chain:4",
            "divisors:36",
            "m3",
            "n5",
            "dual(product(chain:2,dual(m3)))",
        ] {
            let g: Generator = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        for bad in ["powerset", "cube:3", "product(m3)", "dual(m3", "chain:x"] {
            assert!(bad.parse::<Generator>().is_err(), "{bad}");
        }
    }
}
