//! Brute-force reference implementations.
//!
//! Everything here enumerates index tuples directly and shares no code with
//! the dynamic programs in [`crate::deck`] and [`crate::wildcard`]; it exists
//! to cross-check them. Exponential in the depth, so keep inputs small.

use std::collections::BTreeMap;

use crate::strings::{BinaryString, Symbol, WildcardString};

/// Calls `visit` with every strictly increasing tuple of `len` indices below
/// `n` whose consecutive entries differ by at least `gap`.
pub fn for_each_tuple(n: usize, len: usize, gap: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(
        n: usize,
        len: usize,
        gap: usize,
        start: usize,
        tuple: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if tuple.len() == len {
            visit(tuple);
            return;
        }
        for i in start..n {
            tuple.push(i);
            rec(n, len, gap, i + gap, tuple, visit);
            tuple.pop();
        }
    }
    rec(n, len, gap, 0, &mut Vec::with_capacity(len), &mut visit);
}

pub fn count_gapped(w: &BinaryString, x: &BinaryString, s: usize) -> u64 {
    let mut count = 0;
    for_each_tuple(x.len(), w.len(), s, |t| {
        if t.iter().zip(w.bits()).all(|(&i, &c)| x.bits()[i] == c) {
            count += 1;
        }
    });
    count
}

/// Gapped deck as a count vector in signature order (length, then
/// lexicographic), built by enumerating every admissible index tuple.
pub fn deck(x: &BinaryString, s: usize, k: usize) -> Vec<u64> {
    let mut counts = vec![0u64; (1 << (k + 1)) - 2];
    for len in 1..=k {
        let base = (1usize << len) - 2;
        for_each_tuple(x.len(), len, s, |t| {
            let v = t.iter().fold(0usize, |acc, &i| (acc << 1) | x.bits()[i] as usize);
            counts[base + v] += 1;
        });
    }
    counts
}

/// Classical (ungapped) `k`-deck: the multiset of length-exactly-`k`
/// subsequences.
pub fn classical_deck(x: &BinaryString, k: usize) -> BTreeMap<Vec<u8>, u64> {
    let mut deck = BTreeMap::new();
    for_each_tuple(x.len(), k, 1, |t| {
        let sub: Vec<u8> = t.iter().map(|&i| x.bits()[i]).collect();
        *deck.entry(sub).or_insert(0) += 1;
    });
    deck
}

/// `N(w, p)` by enumerating index tuples of `p`.
pub fn count_wildcard(w: &WildcardString, p: &WildcardString) -> u64 {
    let mut count = 0;
    for_each_tuple(p.len(), w.len(), 1, |t| {
        if t
            .iter()
            .zip(w.symbols())
            .all(|(&i, &c)| c == Symbol::J || p.symbols()[i] == c)
        {
            count += 1;
        }
    });
    count
}

/// Smallest colliding pair among all `2^n` strings by direct pairwise
/// comparison of `key`s. Quadratic in `2^n`.
pub fn pairwise_collision<K: PartialEq>(
    n: usize,
    key: impl Fn(&BinaryString) -> K,
) -> Option<(BinaryString, BinaryString)> {
    let strings: Vec<BinaryString> = (0..1u64 << n)
        .map(|c| BinaryString::from_code(c, n))
        .collect();
    let keys: Vec<K> = strings.iter().map(&key).collect();
    for i in 0..strings.len() {
        for j in (i + 1)..strings.len() {
            if keys[i] == keys[j] {
                return Some((strings[i].clone(), strings[j].clone()));
            }
        }
    }
    None
}
