use latlab_core::{laws, CyclicOrder, Elem, Error, Law};

/// `[a, b, c]` on `0..n` arranged clockwise.
fn clockwise(n: usize, a: usize, b: usize, c: usize) -> bool {
    let (db, dc) = ((b + n - a) % n, (c + n - a) % n);
    db != 0 && dc != 0 && db < dc
}

#[test]
fn standard_cycles_satisfy_operative_axioms() {
    for n in 3..=8 {
        let c = CyclicOrder::standard(n).unwrap();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    assert_eq!(
                        c.between(Elem::new(a), Elem::new(b), Elem::new(d)),
                        clockwise(n, a, b, d)
                    );
                }
            }
        }
        let ax = c.check_axioms();
        assert!(ax.operative().iter().all(|r| r.holds), "n={n}");
        assert_eq!(ax.transitivity_printed.holds, n < 4, "n={n}");
    }
}

#[test]
fn localizations_are_rotations() {
    for n in 3..=8 {
        let c = CyclicOrder::standard(n).unwrap();
        for base in 0..n {
            let chain = c.localize(Elem::new(base)).unwrap();
            let expected: Vec<usize> = (0..n).map(|i| (base + i) % n).collect();
            let got: Vec<usize> = chain.order().iter().map(|e| e.index()).collect();
            assert_eq!(got, expected);
            let logic = chain.chain_logic().unwrap();
            let l = logic.lattice();
            assert!(laws::is_distributive(l).holds);
            assert!(laws::is_heyting(l).holds);
            assert_eq!(laws::is_boolean(l).holds, n == 2);
            for x in l.elements() {
                for y in l.elements() {
                    let imp = logic.implies(x, y);
                    assert_eq!(Some(imp), laws::heyting_implication(l, x, y));
                    for z in l.elements() {
                        assert_eq!(l.leq(l.meet(x, z), y), l.leq(z, imp));
                    }
                }
            }
        }
    }
}

#[test]
fn broken_orders_are_rejected() {
    let empty = CyclicOrder::new::<&str>(&["a", "b", "c"], &[]).unwrap();
    let ax = empty.check_axioms();
    assert!(!ax.completeness.holds);
    assert_eq!(
        empty.localize(Elem::new(0)).unwrap_err(),
        Error::AxiomsFail(Law::Completeness)
    );

    let both = CyclicOrder::new(&["a", "b", "c"], &[("a", "b", "c"), ("c", "b", "a")]).unwrap();
    assert!(!both.check_axioms().antisymmetry.holds);
    assert_eq!(
        CyclicOrder::from_cycle(&["a", "b"]).unwrap_err(),
        Error::TooFew(2)
    );
}
