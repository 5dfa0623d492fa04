//! Binary strings, wildcard strings over `{X, Y, J}`, and the elementary
//! transforms the deck engine is built on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite string over `{0, 1}`, stored one bit per byte.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryString {
    bits: Vec<u8>,
}

impl BinaryString {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a string from bits; anything nonzero counts as 1.
    pub fn from_bits<I: IntoIterator<Item = u8>>(bits: I) -> Self {
        Self {
            bits: bits.into_iter().map(|b| u8::from(b != 0)).collect(),
        }
    }

    /// `n`-bit string whose first bit is the most significant bit of `code`,
    /// so numeric order of codes is lexicographic order of strings.
    pub fn from_code(code: u64, n: usize) -> Self {
        assert!(n <= 64, "code width {n} exceeds 64 bits");
        Self {
            bits: (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8).collect(),
        }
    }

    /// Inverse of [`BinaryString::from_code`]; `None` above 64 bits.
    pub fn to_code(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b)))
    }

    pub fn zeros(n: usize) -> Self {
        Self { bits: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
        }
    }

    pub fn reverse(&self) -> Self {
        Self {
            bits: self.bits.iter().rev().copied().collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        Self { bits }
    }

    /// Removes the ends selected by `spec` (one bit per punctured side).
    pub fn puncture(&self, spec: Puncture) -> Result<Self> {
        self.puncture_by(spec, 1)
    }

    /// Removes `depth` bits from each punctured side.
    pub fn puncture_by(&self, spec: Puncture, depth: usize) -> Result<Self> {
        let (left, right) = match spec {
            Puncture::None => (0, 0),
            Puncture::L => (depth, 0),
            Puncture::R => (0, depth),
            Puncture::LR => (depth, depth),
        };
        let needed = left + right;
        if self.len() < needed {
            return Err(Error::TooShort {
                what: "puncture",
                len: self.len(),
                needed,
            });
        }
        Ok(Self {
            bits: self.bits[left..self.len() - right].to_vec(),
        })
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryString({self})")
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_binary(text)
    }
}

impl Serialize for BinaryString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BinaryString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_binary(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses a bare run of `0`/`1` characters. Errors carry the 1-based
/// position of the first offending character.
pub fn parse_binary(text: &str) -> Result<BinaryString> {
    let bits = text
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            found => Err(Error::Parse {
                position: i + 1,
                found,
            }),
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(BinaryString { bits })
}

/// Which ends of a string are removed before taking a deck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Puncture {
    None,
    L,
    R,
    LR,
}

impl Puncture {
    pub const ALL: [Puncture; 4] = [Puncture::None, Puncture::LR, Puncture::L, Puncture::R];

    pub fn min_len(self) -> usize {
        match self {
            Puncture::None => 0,
            Puncture::L | Puncture::R => 1,
            Puncture::LR => 2,
        }
    }
}

impl FromStr for Puncture {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text.to_ascii_uppercase().as_str() {
            "NONE" | "" => Ok(Puncture::None),
            "L" => Ok(Puncture::L),
            "R" => Ok(Puncture::R),
            "LR" => Ok(Puncture::LR),
            _ => Err(Error::InvalidParams(format!("unknown puncture {text:?}"))),
        }
    }
}

/// A symbol of a wildcard pattern. `X` and `Y` form the letter alphabet; `J`
/// matches either letter. Deliberately disjoint from the bits `0`/`1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    X,
    Y,
    J,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::X => 'X',
            Symbol::Y => 'Y',
            Symbol::J => 'J',
        }
    }
}

/// A finite string over `{X, Y, J}`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WildcardString {
    symbols: Vec<Symbol>,
}

impl WildcardString {
    pub fn from_symbols<I: IntoIterator<Item = Symbol>>(symbols: I) -> Self {
        Self {
            symbols: symbols.into_iter().collect(),
        }
    }

    /// `m`-letter string over `{X, Y}` with `X` for a 0 bit of `code`, first
    /// symbol in the most significant position.
    pub fn letters_from_code(code: u64, m: usize) -> Self {
        assert!(m <= 64, "code width {m} exceeds 64 bits");
        Self {
            symbols: (0..m)
                .map(|i| {
                    if (code >> (m - 1 - i)) & 1 == 0 {
                        Symbol::X
                    } else {
                        Symbol::Y
                    }
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Number of non-`J` symbols.
    pub fn letter_count(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != Symbol::J).count()
    }

    /// Fails with the first `J` position when the string is not over `{X, Y}`.
    pub fn ensure_letters(&self) -> Result<()> {
        match self.symbols.iter().position(|&s| s == Symbol::J) {
            Some(i) => Err(Error::WildcardInText { position: i + 1 }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for WildcardString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols
            .iter()
            .try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

impl fmt::Debug for WildcardString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WildcardString({self})")
    }
}

impl FromStr for WildcardString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_wildcard(text)
    }
}

impl Serialize for WildcardString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn parse_wildcard(text: &str) -> Result<WildcardString> {
    let symbols = text
        .chars()
        .enumerate()
        .map(|(i, c)| match c {
            'X' => Ok(Symbol::X),
            'Y' => Ok(Symbol::Y),
            'J' => Ok(Symbol::J),
            found => Err(Error::Parse {
                position: i + 1,
                found,
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WildcardString { symbols })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(text: &str) -> BinaryString {
        text.parse().unwrap()
    }

    #[test]
    fn parse_binary_examples() {
        assert_eq!(b("010011").bits(), &[0, 1, 0, 0, 1, 1]);
        assert!(b("").is_empty());
        assert_eq!(
            parse_binary("012"),
            Err(Error::Parse {
                position: 3,
                found: '2'
            })
        );
    }

    #[test]
    fn complement_and_reverse() {
        assert_eq!(b("0110").complement(), b("1001"));
        assert_eq!(b("0010").complement(), b("1101"));
        assert_eq!(b("").complement(), b(""));
        assert_eq!(b("0010").reverse(), b("0100"));
        assert_eq!(b("11").reverse(), b("11"));
        assert_eq!(b("").reverse(), b(""));
    }

    #[test]
    fn puncture_examples() {
        assert_eq!(b("0010").puncture(Puncture::L).unwrap(), b("010"));
        assert_eq!(b("0010").puncture(Puncture::R).unwrap(), b("001"));
        assert_eq!(b("0010").puncture(Puncture::LR).unwrap(), b("01"));
        assert_eq!(b("0010").puncture(Puncture::None).unwrap(), b("0010"));
        assert!(matches!(
            b("0").puncture(Puncture::LR),
            Err(Error::TooShort { needed: 2, .. })
        ));
        assert!(b("").puncture(Puncture::L).is_err());
        assert_eq!(b("01").puncture(Puncture::LR).unwrap(), b(""));
    }

    #[test]
    fn parse_wildcard_examples() {
        let w = parse_wildcard("JX").unwrap();
        assert_eq!(w.symbols(), &[Symbol::J, Symbol::X]);
        let p = parse_wildcard("YXYX").unwrap();
        assert_eq!(p.symbols(), &[Symbol::Y, Symbol::X, Symbol::Y, Symbol::X]);
        assert_eq!(
            parse_wildcard("JZ"),
            Err(Error::Parse {
                position: 2,
                found: 'Z'
            })
        );
        assert_eq!(
            w.ensure_letters(),
            Err(Error::WildcardInText { position: 1 })
        );
    }

    #[test]
    fn codes_are_lexicographic() {
        assert_eq!(BinaryString::from_code(0b0100, 4), b("0100"));
        assert_eq!(b("0100").to_code(), Some(4));
        assert!(b("0011") < b("0100"));
        assert_eq!(
            WildcardString::letters_from_code(0b01, 2),
            parse_wildcard("XY").unwrap()
        );
    }

    proptest! {
        #[test]
        fn involutions(bits in proptest::collection::vec(0u8..2, 0..64)) {
            let x = BinaryString::from_bits(bits);
            prop_assert_eq!(x.complement().complement(), x.clone());
            prop_assert_eq!(x.reverse().reverse(), x.clone());
            prop_assert_eq!(x.to_string().parse::<BinaryString>().unwrap(), x);
        }

        #[test]
        fn lr_is_l_then_r(bits in proptest::collection::vec(0u8..2, 2..64)) {
            let x = BinaryString::from_bits(bits);
            let both = x.puncture(Puncture::LR).unwrap();
            let stepwise = x.puncture(Puncture::L).unwrap().puncture(Puncture::R).unwrap();
            prop_assert_eq!(both, stepwise);
        }

        #[test]
        fn binary_text_round_trip(text in "[01]{0,80}") {
            prop_assert_eq!(parse_binary(&text).unwrap().to_string(), text);
        }
    }
}
