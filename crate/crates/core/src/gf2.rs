//! A finite Boolean algebra read as a Boolean ring (symmetric difference and
//! meet) and as coordinate vectors over the two-element field, with the
//! atoms as the fixed basis.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitAnd, BitXor};

use crate::error::Error;
use crate::lattice::Lattice;
use crate::laws::{self, Law, LawReport};
use crate::poset::Elem;

/// Most atoms a ring view supports (the largest powerset has 16).
pub const MAX_ATOMS: usize = 16;

/// A vector over GF(2) with at most [`MAX_ATOMS`] components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    bits: u32,
    len: u8,
}

impl Gf2Vector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_ATOMS);
        Gf2Vector {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Gf2Vector::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len());
        self.bits & (1 << i) != 0
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len());
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }
}

impl BitXor for Gf2Vector {
    type Output = Gf2Vector;

    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.len, rhs.len);
        Gf2Vector {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl BitAnd for Gf2Vector {
    type Output = Gf2Vector;

    fn bitand(self, rhs: Self) -> Self {
        assert_eq!(self.len, rhs.len);
        Gf2Vector {
            bits: self.bits & rhs.bits,
            len: self.len,
        }
    }
}

/// Prints components in basis order, e.g. `101`.
impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Ring and vector-space view of a Boolean algebra.
#[derive(Clone, Debug)]
pub struct BooleanRingView<'l> {
    algebra: &'l Lattice,
    atoms: Vec<Elem>,
    negation: Vec<Elem>,
    coords: Vec<Gf2Vector>,
}

impl<'l> BooleanRingView<'l> {
    /// Fails with [`Error::NotBoolean`] unless the lattice passes the
    /// exhaustive Boolean check.
    pub fn new(algebra: &'l Lattice) -> Result<Self, Error> {
        let negation = laws::boolean_negation(algebra).ok_or(Error::NotBoolean)?;
        let atoms = algebra.atoms();
        if atoms.len() > MAX_ATOMS {
            return Err(Error::SizeLimitExceeded {
                what: "atom basis",
                limit: MAX_ATOMS,
            });
        }
        let coords = algebra
            .elements()
            .map(|x| {
                let mut v = Gf2Vector::zero(atoms.len());
                for (i, &a) in atoms.iter().enumerate() {
                    v.set(i, algebra.leq(a, x));
                }
                v
            })
            .collect();
        Ok(BooleanRingView {
            algebra,
            atoms,
            negation,
            coords,
        })
    }

    pub fn algebra(&self) -> &'l Lattice {
        self.algebra
    }

    /// The fixed basis, in element-index order.
    pub fn atoms(&self) -> &[Elem] {
        &self.atoms
    }

    pub fn negate(&self, x: Elem) -> Elem {
        self.negation[x.index()]
    }

    /// Ring sum `(x ^ ~y) v (~x ^ y)`.
    pub fn sym_diff(&self, x: Elem, y: Elem) -> Elem {
        let l = self.algebra;
        l.join(l.meet(x, self.negate(y)), l.meet(self.negate(x), y))
    }

    /// Ring product.
    pub fn product(&self, x: Elem, y: Elem) -> Elem {
        self.algebra.meet(x, y)
    }

    /// Bit `i` is set iff `atoms()[i] <= x`.
    pub fn coordinates(&self, x: Elem) -> Gf2Vector {
        self.coords[x.index()]
    }

    /// Join of the atoms selected by `bits`.
    pub fn from_coordinates(&self, bits: Gf2Vector) -> Result<Elem, Error> {
        if bits.len() != self.atoms.len() {
            return Err(Error::LengthMismatch {
                expected: self.atoms.len(),
                found: bits.len(),
            });
        }
        Ok(self.algebra.join_all(
            self.atoms
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits.get(i))
                .map(|(_, &a)| a),
        ))
    }

    /// Exhaustive Boolean-ring axioms plus the coordinate isomorphism onto
    /// componentwise XOR/AND. `detail` names the first failing axiom.
    pub fn verify_ring_axioms(&self) -> LawReport {
        let l = self.algebra;
        let zero = l.bottom();
        let fail = |detail, w: Vec<Elem>| LawReport::fail(Law::RingAxioms, w).with_detail(detail);
        let add = |x, y| self.sym_diff(x, y);
        let mul = |x, y| self.product(x, y);

        let mut seen = vec![false; 1usize << self.atoms.len()];
        for x in l.elements() {
            if add(x, zero) != x {
                return fail("additive identity", vec![x]);
            }
            if add(x, x) != zero {
                return fail("additive self-inverse", vec![x]);
            }
            if mul(x, x) != x {
                return fail("multiplicative idempotence", vec![x]);
            }
            let v = self.coordinates(x);
            if core::mem::replace(&mut seen[v.bits as usize], true) {
                return fail("coordinates injective", vec![x]);
            }
            if self.from_coordinates(v) != Ok(x) {
                return fail("coordinates invertible", vec![x]);
            }
            for y in l.elements() {
                if add(x, y) != add(y, x) {
                    return fail("additive commutativity", vec![x, y]);
                }
                if mul(x, y) != mul(y, x) {
                    return fail("multiplicative commutativity", vec![x, y]);
                }
                let w = self.coordinates(y);
                if self.coordinates(add(x, y)) != v ^ w {
                    return fail("sum is coordinate XOR", vec![x, y]);
                }
                if self.coordinates(mul(x, y)) != v & w {
                    return fail("product is coordinate AND", vec![x, y]);
                }
                for z in l.elements() {
                    if add(add(x, y), z) != add(x, add(y, z)) {
                        return fail("additive associativity", vec![x, y, z]);
                    }
                    if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                        return fail("multiplicative associativity", vec![x, y, z]);
                    }
                    if mul(x, add(y, z)) != add(mul(x, y), mul(x, z)) {
                        return fail("distributivity", vec![x, y, z]);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return fail("coordinates surjective", vec![l.top()]);
        }
        LawReport::pass(Law::RingAxioms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn symmetric_difference() {
        let l = Lattice::powerset(3).unwrap();
        let v = BooleanRingView::new(&l).unwrap();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(v.sym_diff(e("{1,2}"), e("{2,3}")), e("{1,3}"));
        for x in l.elements() {
            assert_eq!(v.sym_diff(x, x), l.bottom());
            assert_eq!(v.sym_diff(x, l.bottom()), x);
        }
    }

    #[test]
    fn coordinates_in_atom_basis() {
        let l = Lattice::powerset(3).unwrap();
        let v = BooleanRingView::new(&l).unwrap();
        let e = |s| l.elem(s).unwrap();
        assert_eq!(v.coordinates(e("{1,3}")).to_string(), "101");
        assert_eq!(v.coordinates(l.bottom()).to_string(), "000");
        assert_eq!(v.coordinates(l.top()).to_string(), "111");
        let bits = Gf2Vector::from_bits(&[true, true, false]);
        assert_eq!(v.from_coordinates(bits).unwrap(), e("{1,2}"));
        assert_eq!(
            v.from_coordinates(Gf2Vector::zero(2)).unwrap_err(),
            Error::LengthMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn ring_axioms() {
        for l in [Lattice::powerset(3).unwrap(), Lattice::chain(2).unwrap()] {
            assert!(BooleanRingView::new(&l).unwrap().verify_ring_axioms().holds);
        }
        assert_eq!(
            BooleanRingView::new(&Lattice::divisors(12).unwrap()).unwrap_err(),
            Error::NotBoolean
        );
    }

    #[test]
    fn divisors_of_squarefree_number_are_boolean() {
        // 30 = 2*3*5: atoms 2, 3, 5
        let l = Lattice::divisors(30).unwrap();
        let v = BooleanRingView::new(&l).unwrap();
        let names: Vec<&str> = v.atoms().iter().map(|&a| l.label(a)).collect();
        assert_eq!(names, ["2", "3", "5"]);
        assert_eq!(
            l.label(v.sym_diff(l.elem("6").unwrap(), l.elem("10").unwrap())),
            "15"
        );
        assert!(v.verify_ring_axioms().holds);
    }
}
