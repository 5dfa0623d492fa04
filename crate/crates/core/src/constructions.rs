//! Explicit confusable pairs: the classical Morse-Thue chain, its zero-padded
//! gapped variant, the `s`-gapped generalization and the shortest strings
//! sharing an exact gapped deck.

use serde::Serialize;

use crate::deck::GapParams;
use crate::error::{Error, Result};
use crate::strings::BinaryString;

/// Recursions are capped so outputs stay below ~2^24 bits.
pub const MAX_DEPTH: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimedProperty {
    /// Same classical `k`-deck.
    ClassicalKDeck,
    /// Plain, left-, right- and both-punctured gapped decks all agree.
    Eq7Full,
    /// Same gapped deck `B^(k)`, no claim about punctures.
    DeckOnly,
    /// Same length-`k` slice only.
    ExactDeckOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionPair {
    pub x: BinaryString,
    pub y: BinaryString,
    pub params: GapParams,
    pub claimed_property: ClaimedProperty,
    pub trimmed: bool,
}

impl ConstructionPair {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

fn check_depth(k: usize) -> Result<()> {
    if k == 0 || k > MAX_DEPTH {
        return Err(Error::InvalidParams(format!(
            "construction depth must be in 1..={MAX_DEPTH}, got {k}"
        )));
    }
    Ok(())
}

/// `(xy, yx)`.
pub fn concat_swap(x: &BinaryString, y: &BinaryString) -> Result<(BinaryString, BinaryString)> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok((x.concat(y), y.concat(x)))
}

/// Morse-Thue pair of length `2^k` sharing the classical `k`-deck.
pub fn classical_mt(k: usize) -> Result<ConstructionPair> {
    check_depth(k)?;
    let mut x = BinaryString::from_bits([0, 1]);
    let mut y = BinaryString::from_bits([1, 0]);
    for _ in 1..k {
        (x, y) = concat_swap(&x, &y)?;
    }
    Ok(ConstructionPair {
        x,
        y,
        params: GapParams::new(1, k)?,
        claimed_property: ClaimedProperty::ClassicalKDeck,
        trimmed: false,
    })
}

/// Zero-padded Morse-Thue pair of length `4(2^k - 1)`:
/// `x = 0010`, `y = 0100`, then `x <- 0 x 00 y 0`, `y <- 0 y 00 x 0`.
pub fn padded_mt(k: usize) -> Result<ConstructionPair> {
    check_depth(k)?;
    let mut x = BinaryString::from_bits([0, 0, 1, 0]);
    let mut y = BinaryString::from_bits([0, 1, 0, 0]);
    let zero = BinaryString::zeros(1);
    let pad = BinaryString::zeros(2);
    for _ in 1..k {
        let next_x = zero.concat(&x).concat(&pad).concat(&y).concat(&zero);
        let next_y = zero.concat(&y).concat(&pad).concat(&x).concat(&zero);
        (x, y) = (next_x, next_y);
    }
    Ok(ConstructionPair {
        x,
        y,
        params: GapParams::new(2, k)?,
        claimed_property: ClaimedProperty::Eq7Full,
        trimmed: false,
    })
}

/// [`padded_mt`] with the outer zero removed from both ends.
pub fn padded_mt_trimmed(k: usize) -> Result<ConstructionPair> {
    trim(padded_mt(k)?, 1)
}

fn trim(pair: ConstructionPair, depth: usize) -> Result<ConstructionPair> {
    use crate::strings::Puncture;
    Ok(ConstructionPair {
        x: pair.x.puncture_by(Puncture::LR, depth)?,
        y: pair.y.puncture_by(Puncture::LR, depth)?,
        params: pair.params,
        claimed_property: ClaimedProperty::DeckOnly,
        trimmed: true,
    })
}

/// `s`-gapped padded pair: base `x = 0^s 1 0^(s-1)`, `y = 0^(s-1) 1 0^s`, then
/// `x <- 0^(s-1) x 0^s y 0^(s-1)` and symmetrically for `y`. Untrimmed length
/// is `(5s - 2) 2^(k-1) - 3s + 2`.
pub fn s_padded_mt(s: usize, k: usize) -> Result<ConstructionPair> {
    if s < 2 {
        return Err(Error::InvalidParams(format!(
            "s-gapped padding needs s >= 2, got {s}"
        )));
    }
    check_depth(k)?;
    let one = BinaryString::from_bits([1]);
    let mut x = BinaryString::zeros(s).concat(&one).concat(&BinaryString::zeros(s - 1));
    let mut y = BinaryString::zeros(s - 1).concat(&one).concat(&BinaryString::zeros(s));
    let outer = BinaryString::zeros(s - 1);
    let inner = BinaryString::zeros(s);
    for _ in 1..k {
        let next_x = outer.concat(&x).concat(&inner).concat(&y).concat(&outer);
        let next_y = outer.concat(&y).concat(&inner).concat(&x).concat(&outer);
        (x, y) = (next_x, next_y);
    }
    Ok(ConstructionPair {
        x,
        y,
        params: GapParams::new(s, k)?,
        claimed_property: ClaimedProperty::Eq7Full,
        trimmed: false,
    })
}

/// [`s_padded_mt`] with `s - 1` zeros removed from each end; length
/// `(5s - 2) 2^(k-1) - 5s + 4`.
pub fn s_padded_mt_trimmed(s: usize, k: usize) -> Result<ConstructionPair> {
    trim(s_padded_mt(s, k)?, s - 1)
}

/// Interleaves `z = (z_1..z_k)` with fill bits: `z_1 f_1 z_2 f_2 .. z_k`.
pub fn exact_deck_family(z: &BinaryString, fills: &BinaryString) -> Result<BinaryString> {
    exact_deck_family_gapped(z, fills, 2)
}

/// As [`exact_deck_family`] with `s - 1` fill bits between consecutive
/// symbols of `z`, giving length `(k - 1) s + 1`: the shortest length at
/// which the length-`k` slice of the `s`-gapped deck is nonempty. Its only
/// member is `z`.
pub fn exact_deck_family_gapped(
    z: &BinaryString,
    fills: &BinaryString,
    s: usize,
) -> Result<BinaryString> {
    if z.is_empty() || s == 0 {
        return Err(Error::InvalidParams(
            "need a nonempty core string and s >= 1".into(),
        ));
    }
    let per_slot = s - 1;
    let expected = (z.len() - 1) * per_slot;
    if fills.len() != expected {
        return Err(Error::LengthMismatch {
            left: fills.len(),
            right: expected,
        });
    }
    let mut bits = Vec::with_capacity(z.len() + expected);
    for (j, &c) in z.bits().iter().enumerate() {
        bits.push(c);
        if j + 1 < z.len() {
            bits.extend_from_slice(&fills.bits()[j * per_slot..(j + 1) * per_slot]);
        }
    }
    Ok(BinaryString::from_bits(bits))
}
