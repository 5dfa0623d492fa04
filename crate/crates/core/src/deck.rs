//! Gapped subsequence counting and deck signatures.
//!
//! The `s`-gapped `k`-deck of `x` is the multiset of subsequences
//! `(x[i_1], ..., x[i_l])` with `1 <= l <= k` and `i_{j+1} >= i_j + s`. It is
//! represented by a [`DeckSignature`]: the multiplicity of every nonempty
//! pattern of length at most `k`, so two decks are equal exactly when their
//! signatures are.
//!
//! Patterns are indexed by length, then lexicographically. A pattern `w` of
//! length `l` read as a big-endian integer `v` sits at index `2^l - 2 + v`.
//! Internally the engine uses the heap id `2^l + v`, under which dropping the
//! last symbol of a pattern is a right shift.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strings::{BinaryString, Puncture};

/// Three primes just below `2^62`, fixed for reproducible fingerprints.
pub const DEFAULT_PRIMES: [u64; 3] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
];

/// Listing more patterns than this is refused by [`enumerate_deck`].
pub const ENUMERATE_LIMIT: u128 = 1_000_000;

/// Minimum index gap `s` and deck depth `k`. `s = 1` is the classical deck.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GapParams {
    pub s: usize,
    pub k: usize,
}

impl GapParams {
    pub fn new(s: usize, k: usize) -> Result<Self> {
        if s == 0 || k == 0 {
            return Err(Error::InvalidParams(format!(
                "gap and depth must be at least 1 (got s={s}, k={k})"
            )));
        }
        if k > 20 {
            return Err(Error::InvalidParams(format!(
                "depth {k} would need 2^{} patterns",
                k + 1
            )));
        }
        Ok(Self { s, k })
    }

    /// Same gap, different depth.
    pub fn with_depth(self, k: usize) -> Result<Self> {
        Self::new(self.s, k)
    }

    /// Number of keyed patterns, `2^(k+1) - 2`.
    pub fn pattern_count(&self) -> usize {
        (1usize << (self.k + 1)) - 2
    }

    /// Shortest string with a nonempty length-`l` slice: `(l - 1) s + 1`.
    pub fn min_len_for(&self, l: usize) -> usize {
        (l - 1) * self.s + 1
    }
}

/// Index of `pattern` in signature order (length, then lexicographic).
pub fn pattern_index(pattern: &BinaryString) -> usize {
    let len = pattern.len();
    let value = pattern.to_code().expect("pattern longer than 64 bits") as usize;
    (1usize << len) - 2 + value
}

/// Pattern stored at `index` in signature order.
pub fn pattern_at(index: usize) -> BinaryString {
    let id = index + 2;
    let len = usize::BITS as usize - 1 - id.leading_zeros() as usize;
    BinaryString::from_code((id - (1 << len)) as u64, len)
}

/// Index range holding the length-`l` slice.
pub fn slice_range(l: usize) -> std::ops::Range<usize> {
    ((1 << l) - 2)..((1 << (l + 1)) - 2)
}

/// Exact binomial coefficient, `None` if it does not fit in 128 bits.
pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step
        let num = u128::from(n - i);
        let den = u128::from(i + 1);
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        acc = a.checked_mul(num / d)?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Total multiplicity of the length-`l` slice of any length-`n` string:
/// `C(n - (l-1)(s-1), l)`, zero when the top index falls below `l`.
pub fn slice_total(n: usize, s: usize, l: usize) -> Option<u128> {
    let shrink = (l - 1) * (s - 1);
    if n < shrink {
        return Some(0);
    }
    binomial((n - shrink) as u64, l as u64)
}

/// Fails when some exact count of a length-`n` string could exceed `u64`.
pub fn check_exact_fits(n: usize, params: GapParams) -> Result<()> {
    for l in 1..=params.k {
        match slice_total(n, params.s, l) {
            Some(total) if total <= u128::from(u64::MAX) => {}
            other => {
                return Err(Error::Overflow {
                    level: l,
                    bound: other.map_or_else(|| ">2^128".to_string(), |t| t.to_string()),
                })
            }
        }
    }
    Ok(())
}

/// How counts are represented.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    /// Residues modulo each listed prime.
    Fingerprint(Vec<u64>),
}

impl Mode {
    pub fn fingerprint_default() -> Self {
        Mode::Fingerprint(DEFAULT_PRIMES.to_vec())
    }

    /// Exact mode when it is guaranteed not to overflow for length `n`,
    /// fingerprint mode with the default primes otherwise.
    pub fn auto(n: usize, params: GapParams) -> Self {
        if check_exact_fits(n, params).is_ok() {
            Mode::Exact
        } else {
            Mode::fingerprint_default()
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Fingerprint(_) => "fingerprint",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Counts {
    Exact(Vec<u64>),
    Fingerprint {
        primes: Vec<u64>,
        /// `residues[j][i]` is pattern `i` modulo `primes[j]`.
        residues: Vec<Vec<u64>>,
    },
}

/// The multiset `B^(k)(x)` as a count vector in signature order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeckSignature {
    params: GapParams,
    source_length: usize,
    counts: Counts,
}

impl DeckSignature {
    pub fn params(&self) -> GapParams {
        self.params
    }

    pub fn source_length(&self) -> usize {
        self.source_length
    }

    pub fn counts(&self) -> &Counts {
        &self.counts
    }

    pub fn mode(&self) -> Mode {
        match &self.counts {
            Counts::Exact(_) => Mode::Exact,
            Counts::Fingerprint { primes, .. } => Mode::Fingerprint(primes.clone()),
        }
    }

    /// Exact count vector, `None` in fingerprint mode.
    pub fn exact(&self) -> Option<&[u64]> {
        match &self.counts {
            Counts::Exact(c) => Some(c),
            Counts::Fingerprint { .. } => None,
        }
    }

    /// Exact multiplicity of one pattern.
    pub fn count(&self, pattern: &BinaryString) -> Option<u64> {
        if pattern.is_empty() || pattern.len() > self.params.k {
            return None;
        }
        self.exact().map(|c| c[pattern_index(pattern)])
    }

    /// Signature restricted to the length-`l` slice (the exact deck `D^(l)`).
    pub fn slice(&self, l: usize) -> Result<Counts> {
        if l == 0 || l > self.params.k {
            return Err(Error::InvalidParams(format!(
                "slice {l} outside 1..={}",
                self.params.k
            )));
        }
        let range = slice_range(l);
        Ok(match &self.counts {
            Counts::Exact(c) => Counts::Exact(c[range].to_vec()),
            Counts::Fingerprint { primes, residues } => Counts::Fingerprint {
                primes: primes.clone(),
                residues: residues.iter().map(|r| r[range.clone()].to_vec()).collect(),
            },
        })
    }

    /// Drops every slice longer than `k`.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        let params = self.params.with_depth(k)?;
        if k > self.params.k {
            return Err(Error::InvalidParams(format!(
                "cannot extend depth {} to {k}",
                self.params.k
            )));
        }
        let len = params.pattern_count();
        let counts = match &self.counts {
            Counts::Exact(c) => Counts::Exact(c[..len].to_vec()),
            Counts::Fingerprint { primes, residues } => Counts::Fingerprint {
                primes: primes.clone(),
                residues: residues.iter().map(|r| r[..len].to_vec()).collect(),
            },
        };
        Ok(Self {
            params,
            source_length: self.source_length,
            counts,
        })
    }

    /// Reduces an exact signature modulo each prime.
    pub fn fingerprint(&self, primes: &[u64]) -> Result<Self> {
        let exact = self.exact().ok_or(Error::Incomparable(
            "fingerprint() needs an exact signature",
        ))?;
        validate_primes(primes)?;
        let residues = primes
            .iter()
            .map(|&p| exact.iter().map(|&c| c % p).collect())
            .collect();
        Ok(Self {
            params: self.params,
            source_length: self.source_length,
            counts: Counts::Fingerprint {
                primes: primes.to_vec(),
                residues,
            },
        })
    }

    /// Deck equality: counts compared, lengths not short-circuited.
    pub fn same_deck(&self, other: &Self) -> Result<bool> {
        if self.params != other.params {
            return Err(Error::Incomparable("different gap parameters"));
        }
        match (&self.counts, &other.counts) {
            (Counts::Exact(a), Counts::Exact(b)) => Ok(a == b),
            (
                Counts::Fingerprint {
                    primes: pa,
                    residues: ra,
                },
                Counts::Fingerprint {
                    primes: pb,
                    residues: rb,
                },
            ) if pa == pb => Ok(ra == rb),
            _ => Err(Error::Incomparable("different count modes")),
        }
    }
}

impl Serialize for DeckSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DeckSignature", 5)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("mode", self.mode().name())?;
        st.serialize_field("source_length", &self.source_length)?;
        match &self.counts {
            Counts::Exact(c) => {
                st.skip_field("primes")?;
                st.serialize_field("counts", c)?;
            }
            Counts::Fingerprint { primes, residues } => {
                st.serialize_field("primes", primes)?;
                st.serialize_field("counts", residues)?;
            }
        }
        st.end()
    }
}

fn validate_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::NoPrimes);
    }
    if let Some(&p) = primes.iter().find(|&&p| !(2..1 << 62).contains(&p)) {
        return Err(Error::InvalidParams(format!(
            "fingerprint modulus {p} outside [2, 2^62)"
        )));
    }
    Ok(())
}

/// Scratch space for repeated signature computations at a fixed depth and gap.
///
/// Occurrence counts are accumulated left to right. `ring` holds the last `s`
/// prefix states; when bit `x_i` is appended, an occurrence of `w` may only
/// be extended by `x_i` if it ended at or before `i - s`, which is exactly
/// the state stored in the slot about to be overwritten.
#[derive(Debug, Clone)]
pub struct DeckAccumulator {
    params: GapParams,
    width: usize,
    ring: Vec<u64>,
}

impl DeckAccumulator {
    pub fn new(params: GapParams) -> Self {
        let width = 1usize << (params.k + 1);
        Self {
            params,
            width,
            ring: vec![0; width * params.s],
        }
    }

    pub fn params(&self) -> GapParams {
        self.params
    }

    /// Runs the recurrence over `bits` with the given addition, returning the
    /// final state indexed by heap id (slot 0 unused, slot 1 the empty pattern).
    fn run(&mut self, bits: &[u8], add: impl Fn(u64, u64) -> u64) -> &[u64] {
        let (s, w) = (self.params.s, self.width);
        let parents = 1usize << self.params.k;
        for slot in self.ring.chunks_exact_mut(w) {
            slot.fill(0);
            slot[1] = 1;
        }
        for (i, &b) in bits.iter().enumerate() {
            let i = i + 1;
            let cur = (i % s) * w;
            let prev = ((i - 1) % s) * w;
            if s > 1 {
                // slot `cur` holds the state at i - s: extend from it, then
                // overlay the copy of state i - 1
                for p in (1..parents).rev() {
                    let child = (p << 1) | b as usize;
                    let ext = self.ring[cur + p];
                    let base = self.ring[prev + child];
                    self.ring[cur + child] = add(base, ext);
                }
                for id in 2..w {
                    if id & 1 != b as usize {
                        self.ring[cur + id] = self.ring[prev + id];
                    }
                }
            } else {
                // s = 1: longest patterns first so parents are still old
                for p in (1..parents).rev() {
                    let child = (p << 1) | b as usize;
                    self.ring[child] = add(self.ring[child], self.ring[p]);
                }
            }
        }
        let last = (bits.len() % s) * w;
        &self.ring[last..last + w]
    }

    /// Exact counts in signature order, written into `out`. The caller is
    /// responsible for the overflow precondition (see [`check_exact_fits`]).
    pub fn exact_into(&mut self, bits: &[u8], out: &mut Vec<u64>) {
        let state = self.run(bits, |a, b| a.wrapping_add(b));
        out.clear();
        out.extend_from_slice(&state[2..]);
    }

    fn residues(&mut self, bits: &[u8], p: u64) -> Vec<u64> {
        self.run(bits, |a, b| {
            let t = a + b;
            if t >= p {
                t - p
            } else {
                t
            }
        })[2..]
            .to_vec()
    }

    pub fn signature(&mut self, x: &BinaryString, mode: &Mode) -> Result<DeckSignature> {
        let counts = match mode {
            Mode::Exact => {
                check_exact_fits(x.len(), self.params)?;
                let mut out = Vec::new();
                self.exact_into(x.bits(), &mut out);
                Counts::Exact(out)
            }
            Mode::Fingerprint(primes) => {
                validate_primes(primes)?;
                Counts::Fingerprint {
                    primes: primes.clone(),
                    residues: primes.iter().map(|&p| self.residues(x.bits(), p)).collect(),
                }
            }
        };
        Ok(DeckSignature {
            params: self.params,
            source_length: x.len(),
            counts,
        })
    }
}

/// `N_g(w, x)`: occurrences of `w` in `x` as a subsequence whose consecutive
/// indices are at least `s` apart. Runs in `O(|x| |w|)`.
pub fn count_gapped(w: &BinaryString, x: &BinaryString, s: usize) -> Result<u128> {
    if w.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if s == 0 {
        return Err(Error::InvalidParams("gap must be at least 1".into()));
    }
    let (n, m) = (x.len(), w.len());
    // prefix[i][j]: matches of w[..j] whose last index is <= i (1-based)
    let mut prefix = vec![vec![0u128; m + 1]; n + 1];
    for row in prefix.iter_mut() {
        row[0] = 1;
    }
    for i in 1..=n {
        for j in 1..=m {
            let ending_here = if x.bits()[i - 1] == w.bits()[j - 1] {
                prefix[i.saturating_sub(s)][j - 1]
            } else {
                0
            };
            prefix[i][j] = prefix[i - 1][j]
                .checked_add(ending_here)
                .ok_or(Error::Overflow {
                    level: j,
                    bound: ">2^128".into(),
                })?;
        }
    }
    Ok(prefix[n][m])
}

pub fn signature(x: &BinaryString, params: GapParams, mode: &Mode) -> Result<DeckSignature> {
    DeckAccumulator::new(params).signature(x, mode)
}

pub fn punctured_signature(
    x: &BinaryString,
    params: GapParams,
    spec: Puncture,
    mode: &Mode,
) -> Result<DeckSignature> {
    signature(&x.puncture(spec)?, params, mode)
}

/// `B^(k)(x) = B^(k)(y)`, compared in exact mode.
pub fn deck_equal(x: &BinaryString, y: &BinaryString, params: GapParams) -> Result<bool> {
    deck_equal_in(x, y, params, &Mode::Exact)
}

pub fn deck_equal_in(
    x: &BinaryString,
    y: &BinaryString,
    params: GapParams,
    mode: &Mode,
) -> Result<bool> {
    let mut acc = DeckAccumulator::new(params);
    let a = acc.signature(x, mode)?;
    let b = acc.signature(y, mode)?;
    a.same_deck(&b)
}

/// `D^(k)(x) = D^(k)(y)`: only the length-`k` slices are compared.
pub fn exact_deck_equal(x: &BinaryString, y: &BinaryString, params: GapParams) -> Result<bool> {
    let mut acc = DeckAccumulator::new(params);
    let a = acc.signature(x, &Mode::Exact)?;
    let b = acc.signature(y, &Mode::Exact)?;
    Ok(a.slice(params.k)? == b.slice(params.k)?)
}

/// The four deck equalities: plain, both ends punctured, left, right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Eq7Report {
    pub params: GapParams,
    pub plain_equal: bool,
    pub lr_equal: bool,
    pub l_equal: bool,
    pub r_equal: bool,
}

impl Eq7Report {
    pub fn all(&self) -> bool {
        self.plain_equal && self.lr_equal && self.l_equal && self.r_equal
    }
}

pub fn verify_eq7(x: &BinaryString, y: &BinaryString, params: GapParams) -> Result<Eq7Report> {
    verify_eq7_in(x, y, params, &Mode::Exact, 1)
}

/// [`verify_eq7`] with an explicit count mode and puncture depth (bits
/// removed from each punctured side).
pub fn verify_eq7_in(
    x: &BinaryString,
    y: &BinaryString,
    params: GapParams,
    mode: &Mode,
    depth: usize,
) -> Result<Eq7Report> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 * depth.max(1) {
        return Err(Error::TooShort {
            what: "four-way deck check",
            len: x.len(),
            needed: 2 * depth.max(1),
        });
    }
    let mut acc = DeckAccumulator::new(params);
    let mut eq = |spec: Puncture| -> Result<bool> {
        let a = acc.signature(&x.puncture_by(spec, depth)?, mode)?;
        let b = acc.signature(&y.puncture_by(spec, depth)?, mode)?;
        a.same_deck(&b)
    };
    Ok(Eq7Report {
        params,
        plain_equal: eq(Puncture::None)?,
        lr_equal: eq(Puncture::LR)?,
        l_equal: eq(Puncture::L)?,
        r_equal: eq(Puncture::R)?,
    })
}

/// Nonzero entries of the exact deck, in signature order.
pub fn enumerate_deck(x: &BinaryString, params: GapParams) -> Result<Vec<(BinaryString, u64)>> {
    let patterns = (1u128 << (params.k + 1)) - 2;
    if patterns > ENUMERATE_LIMIT {
        return Err(Error::TooLarge {
            patterns,
            limit: ENUMERATE_LIMIT,
        });
    }
    let sig = signature(x, params, &Mode::Exact)?;
    Ok(sig
        .exact()
        .expect("exact mode")
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| (pattern_at(i), c))
        .collect())
}

/// Free-function form of [`DeckSignature::fingerprint`].
pub fn fingerprint(sig: &DeckSignature, primes: &[u64]) -> Result<DeckSignature> {
    sig.fingerprint(primes)
}
