#![allow(dead_code)]

use latlab_core::{Generator, Lattice};
use proptest::prelude::*;

/// Small named lattices used by the exhaustive sweeps.
pub fn family() -> Vec<Lattice> {
    [
        "chain:1",
        "chain:2",
        "chain:3",
        "chain:5",
        "powerset:1",
        "powerset:2",
        "powerset:3",
        "powerset:4",
        "divisors:12",
        "divisors:30",
        "divisors:36",
        "divisors:60",
        "m3",
        "n5",
        "dual(n5)",
        "product(chain:2,m3)",
        "product(n5,chain:2)",
        "product(chain:3,chain:3)",
        "dual(product(chain:2,divisors:12))",
    ]
    .iter()
    .map(|d| d.parse::<Generator>().unwrap().build().unwrap())
    .collect()
}

fn leaf() -> impl Strategy<Value = Generator> {
    prop_oneof![
        (1u32..=3).prop_map(Generator::Powerset),
        (1usize..=5).prop_map(Generator::Chain),
        prop::sample::select(vec![1u64, 6, 8, 12, 18, 30]).prop_map(Generator::Divisors),
        Just(Generator::M3),
        Just(Generator::N5),
    ]
}

/// Generator descriptors combining leaves by product and dual, capped at
/// `max` elements.
pub fn generator(max: usize) -> impl Strategy<Value = Generator> {
    leaf()
        .prop_recursive(2, 8, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Generator::Product(Box::new(a), Box::new(b))),
                inner.prop_map(|a| Generator::Dual(Box::new(a))),
            ]
        })
        .prop_filter("too large", move |g| {
            g.build().is_ok_and(|l| l.len() <= max)
        })
}
