mod common;

use latlab_core::{Elem, Error, Lattice, Poset};
use proptest::prelude::*;

/// Reflexive-transitive closure of `pairs` over `n` points.
fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

/// Greatest lower bound by definition, if unique.
fn glb(r: &[Vec<bool>], x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..r.len()).filter(|&z| r[z][x] && r[z][y]).collect();
    lower
        .iter()
        .copied()
        .find(|&g| lower.iter().all(|&z| r[z][g]))
}

fn lub(r: &[Vec<bool>], x: usize, y: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..r.len()).filter(|&z| r[x][z] && r[y][z]).collect();
    upper
        .iter()
        .copied()
        .find(|&g| upper.iter().all(|&z| r[g][z]))
}

/// Pairs `i < j` only, so the relation is always acyclic.
fn dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=7).prop_flat_map(|n| {
        let pairs = prop::collection::vec((0..n, 0..n), 0..12)
            .prop_map(|v| v.into_iter().filter(|(a, b)| a < b).collect::<Vec<_>>());
        (Just(n), pairs)
    })
}

fn build(n: usize, pairs: &[(usize, usize)]) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let pairs: Vec<(String, String)> = pairs
        .iter()
        .map(|&(a, b)| (labels[a].clone(), labels[b].clone()))
        .collect();
    Poset::build(&labels, &pairs).unwrap()
}

proptest! {
    #[test]
    fn build_matches_closure_oracle((n, pairs) in dag()) {
        let p = build(n, &pairs);
        let r = closure(n, &pairs);
        for (i, row) in r.iter().enumerate() {
            for (j, &reach) in row.iter().enumerate() {
                prop_assert_eq!(p.leq(Elem::new(i), Elem::new(j)), reach);
            }
        }
    }

    #[test]
    fn to_lattice_matches_bound_oracle((n, pairs) in dag()) {
        let r = closure(n, &pairs);
        let is_lattice = (0..n).all(|x| (0..n).all(|y| glb(&r, x, y).is_some() && lub(&r, x, y).is_some()));
        match Lattice::from_poset(build(n, &pairs)) {
            Ok(l) => {
                prop_assert!(is_lattice);
                for x in 0..n {
                    for y in 0..n {
                        let (ex, ey) = (Elem::new(x), Elem::new(y));
                        prop_assert_eq!(l.meet(ex, ey).index(), glb(&r, x, y).unwrap());
                        prop_assert_eq!(l.join(ex, ey).index(), lub(&r, x, y).unwrap());
                    }
                }
            }
            Err(Error::NotALattice { x, y, .. }) => {
                prop_assert!(!is_lattice);
                let (x, y): (usize, usize) = (x[1..].parse().unwrap(), y[1..].parse().unwrap());
                prop_assert!(glb(&r, x, y).is_none() || lub(&r, x, y).is_none());
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn covers_regenerate_order((n, pairs) in dag()) {
        let p = build(n, &pairs);
        let covers: Vec<(usize, usize)> =
            p.covers().iter().map(|&(a, b)| (a.index(), b.index())).collect();
        let r = closure(n, &covers);
        for x in p.elements() {
            for y in p.elements() {
                prop_assert_eq!(p.leq(x, y), r[x.index()][y.index()]);
            }
        }
        for &(a, b) in &covers {
            prop_assert!(a != b);
            prop_assert!(!(0..n).any(|z| z != a && z != b && r[a][z] && r[z][b]));
        }
    }

    #[test]
    fn lattice_identities(g in common::generator(64)) {
        let l = g.build().unwrap();
        for x in l.elements() {
            prop_assert_eq!(l.meet(x, x), x);
            prop_assert_eq!(l.join(x, x), x);
            for y in l.elements() {
                prop_assert_eq!(l.meet(x, y), l.meet(y, x));
                prop_assert_eq!(l.join(x, y), l.join(y, x));
                prop_assert_eq!(l.meet(x, l.join(x, y)), x);
                prop_assert_eq!(l.join(x, l.meet(x, y)), x);
                prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
                for z in l.elements() {
                    prop_assert_eq!(l.meet(l.meet(x, y), z), l.meet(x, l.meet(y, z)));
                    prop_assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
                }
            }
        }
    }

    #[test]
    fn dual_of_dual_is_identity(g in common::generator(128)) {
        let l = g.build().unwrap();
        prop_assert_eq!(&l.dual().dual(), &l);
        let d = l.dual();
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(d.leq(x, y), l.leq(y, x));
                prop_assert_eq!(d.meet(x, y), l.join(x, y));
            }
        }
    }

    #[test]
    fn product_size_and_bounds(a in common::generator(16), b in common::generator(16)) {
        let (la, lb) = (a.build().unwrap(), b.build().unwrap());
        let p = Lattice::product(&la, &lb).unwrap();
        prop_assert_eq!(p.len(), la.len() * lb.len());
        let pair = |x: Elem, y: Elem| format!("({},{})", la.label(x), lb.label(y));
        prop_assert_eq!(p.label(p.bottom()), pair(la.bottom(), lb.bottom()));
        prop_assert_eq!(p.label(p.top()), pair(la.top(), lb.top()));
    }

    #[test]
    fn generator_descriptor_round_trip(g in common::generator(256)) {
        let text = g.to_string();
        prop_assert_eq!(text.parse::<latlab_core::Generator>().unwrap(), g);
    }
}

#[test]
fn spec_shaped_examples() {
    let diamond = Poset::build(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")],
    )
    .unwrap();
    let l = Lattice::from_poset(diamond.clone()).unwrap();
    let e = |s| l.elem(s).unwrap();
    assert_eq!(l.meet(e("b"), e("c")), e("a"));
    assert_eq!(l.join(e("b"), e("c")), e("d"));
    let names: Vec<(&str, &str)> = diamond
        .covers()
        .into_iter()
        .map(|(x, y)| (diamond.label(x), diamond.label(y)))
        .collect();
    assert_eq!(names, [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]);

    let antichain = Poset::build::<&str>(&["a", "b"], &[]).unwrap();
    assert_eq!(antichain.bounds(), (None, None));
    assert!(matches!(
        Lattice::from_poset(antichain),
        Err(Error::NotALattice { .. })
    ));

    let d12 = Lattice::divisors(12).unwrap();
    assert_eq!(d12.labels(), ["1", "2", "3", "4", "6", "12"]);
}
