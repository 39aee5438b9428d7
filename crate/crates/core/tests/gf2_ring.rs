use latlab_core::{BooleanRingView, Elem, Gf2Vector, Lattice};

fn mask(label: &str) -> u32 {
    label
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| 1u32 << (s.parse::<u32>().unwrap() - 1))
        .fold(0, |m, b| m | b)
}

fn bits(v: Gf2Vector) -> u32 {
    v.to_bits()
        .iter()
        .enumerate()
        .map(|(i, &b)| (b as u32) << i)
        .sum()
}

#[test]
fn ring_operations_agree_with_set_arithmetic() {
    for n in 1..=4u32 {
        let l = Lattice::powerset(n).unwrap();
        let v = BooleanRingView::new(&l).unwrap();
        let m = |x: Elem| mask(l.label(x));
        assert_eq!(v.atoms().len(), n as usize);
        assert_eq!(l.len(), 1 << n);
        let mut image: Vec<u32> = l.elements().map(|x| bits(v.coordinates(x))).collect();
        image.sort();
        image.dedup();
        assert_eq!(image.len(), 1 << n);
        for x in l.elements() {
            assert_eq!(bits(v.coordinates(x)), m(x));
            assert_eq!(v.from_coordinates(v.coordinates(x)).unwrap(), x);
            for y in l.elements() {
                assert_eq!(m(v.sym_diff(x, y)), m(x) ^ m(y));
                assert_eq!(m(v.product(x, y)), m(x) & m(y));
                let sum = v.sym_diff(v.sym_diff(x, y), v.product(x, y));
                assert_eq!(sum, l.join(x, y));
            }
        }
        assert!(v.verify_ring_axioms().holds);
    }
}
