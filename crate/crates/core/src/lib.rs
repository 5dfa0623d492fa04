//! Gapped `k`-decks of binary strings.
//!
//! The `s`-gapped `k`-deck of a binary string is the multiset of its
//! subsequences of length at most `k` whose chosen positions are pairwise at
//! least `s` apart. This crate computes decks as count vectors, builds the
//! padded Morse-Thue families of strings that share them, searches
//! exhaustively for the shortest strings that cannot be told apart, and
//! evaluates the known upper bounds on that length.
//!
//! ```
//! use gapdeck::{deck_equal, BinaryString, GapParams};
//!
//! let x: BinaryString = "010011".parse().unwrap();
//! let y: BinaryString = "001101".parse().unwrap();
//! assert!(deck_equal(&x, &y, GapParams::new(2, 2).unwrap()).unwrap());
//! ```

pub mod bounds;
pub mod checkpoint;
pub mod constructions;
pub mod deck;
pub mod error;
pub mod naive;
pub mod search;
pub mod strings;
pub mod wildcard;

pub use constructions::{
    classical_mt, concat_swap, exact_deck_family, padded_mt, padded_mt_trimmed, s_padded_mt,
    s_padded_mt_trimmed, ClaimedProperty, ConstructionPair,
};
pub use deck::{
    count_gapped, deck_equal, enumerate_deck, exact_deck_equal, punctured_signature, signature,
    verify_eq7, DeckSignature, Eq7Report, GapParams, Mode,
};
pub use error::{Error, Result};
pub use search::{
    find_collision, search_exact_d, search_g, search_g_star, search_su, CollisionReport, DeckKind,
    SearchOptions,
};
pub use strings::{parse_binary, parse_wildcard, BinaryString, Puncture, Symbol, WildcardString};
pub use wildcard::{
    count_wildcard, lemma3_check, pad_zero, substitute, u_equiv, Lemma3Instance, Lemma3Report,
    USetSpec,
};

/// The guide in `book/src`, compiled as doctests so its snippets stay in
/// sync with the library.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/decks.md")]
    pub struct Decks;
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub struct Constructions;
    #[doc = include_str!("../../../book/src/search.md")]
    pub struct Search;
    #[doc = include_str!("../../../book/src/wildcards.md")]
    pub struct Wildcards;
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub struct Bounds;
    #[doc = include_str!("../../../README.md")]
    pub struct Readme;
}
