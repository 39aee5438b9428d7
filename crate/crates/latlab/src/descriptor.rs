//! Generator descriptors for every structure the tool can produce.

use std::fmt;
use std::str::FromStr;

use latlab_core::{CyclicOrder, Error, Generator, Lattice};

/// A lattice generator, or `cycle:N` for the cyclic order on `0..N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descriptor {
    Lattice(Generator),
    Cycle(usize),
}

/// A generated structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Lattice(Lattice),
    Cyclic(CyclicOrder),
}

impl Descriptor {
    pub fn build(&self) -> Result<Structure, Error> {
        match self {
            Descriptor::Lattice(g) => g.build().map(Structure::Lattice),
            Descriptor::Cycle(n) => CyclicOrder::standard(*n).map(Structure::Cyclic),
        }
    }
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().strip_prefix("cycle:") {
            Some(n) => n
                .parse()
                .map(Descriptor::Cycle)
                .map_err(|_| Error::InvalidDescriptor(s.into())),
            None => s.parse().map(Descriptor::Lattice),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Lattice(g) => g.fmt(f),
            Descriptor::Cycle(n) => write!(f, "cycle:{n}"),
        }
    }
}

/// Splits `s` at commas outside any bracket pair, so `{1,2},{3}` yields
/// `{1,2}` and `{3}`.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for text in ["cycle:5", "powerset:3", "dual(product(chain:2,m3))"] {
            assert_eq!(text.parse::<Descriptor>().unwrap().to_string(), text);
        }
        assert!("cycle:x".parse::<Descriptor>().is_err());
        assert!("nosuchfile".parse::<Descriptor>().is_err());
    }

    #[test]
    fn top_level_commas() {
        assert_eq!(split_top_level("{3},{}"), ["{3}", "{}"]);
        assert_eq!(split_top_level("{1,3},(a,b),c"), ["{1,3}", "(a,b)", "c"]);
        assert_eq!(split_top_level("12"), ["12"]);
    }
}
