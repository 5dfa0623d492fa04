//! Exhaustive search for the shortest confusable length.
//!
//! For a length `n` every one of the `2^n` candidate strings gets a count
//! vector (its key) that determines the relation being searched for: the
//! full gapped deck, its top slice, the four punctured decks, or wildcard
//! counts. Strings are bucketed by a 128-bit hash of the key; buckets with
//! more than one member are confirmed by recomputing and comparing the exact
//! keys, so hash collisions can never produce a false witness.
//!
//! When the key fixes the composition (it does for every relation except the
//! top slice alone), strings of different weight can never collide and each
//! weight class is searched as an independent shard. Within a shard the
//! strings, enumerated in increasing numeric (that is, lexicographic) order,
//! are split into contiguous rank ranges, one per task. Results are merged
//! and sorted before the lexicographic tie-break, so the report does not
//! depend on the number of workers.

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::checkpoint::{CheckpointLog, RangeRecord, ShardStatus};
use crate::deck::{binomial, check_exact_fits, slice_range, DeckAccumulator, GapParams};
use crate::error::{Error, Result};
use crate::strings::{BinaryString, WildcardString};
use crate::wildcard::{count_wildcard, enumerate_u, USetSpec};

/// Lengths above this are rejected; codes are stored in 32 bits.
pub const MAX_SEARCH_LEN: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DeckKind {
    /// Whole gapped deck `B^(k)`.
    FullB,
    /// Length-`k` slice `D^(k)` only.
    ExactD,
    /// Plain, both-, left- and right-punctured decks together.
    Eq7Star,
    /// Wildcard counts over a U-family.
    WildcardU,
}

impl DeckKind {
    pub fn label(self) -> &'static str {
        match self {
            DeckKind::FullB => "FULL_B",
            DeckKind::ExactD => "EXACT_D",
            DeckKind::Eq7Star => "EQ7_STAR",
            DeckKind::WildcardU => "WILDCARD_U",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SearchParams {
    Gap(GapParams),
    Wildcard(USetSpec),
}

/// Produces the collision key of a candidate string given by its code.
pub trait KeySource: Sync {
    type Scratch: Send;

    fn scratch(&self) -> Self::Scratch;

    /// Writes the exact key of `code` (an `n`-symbol string) into `out`.
    fn key(&self, code: u64, n: usize, scratch: &mut Self::Scratch, out: &mut Vec<u64>);

    /// True when equal keys imply equal weight.
    fn fixes_weight(&self) -> bool;

    fn render(&self, code: u64, n: usize) -> String;

    /// Bucketing hash of a key.
    fn hash(&self, key: &[u64]) -> u128 {
        hash_key(key)
    }
}

/// Keys built from gapped deck signatures.
#[derive(Debug, Clone, Copy)]
pub struct DeckKey {
    pub params: GapParams,
    pub kind: DeckKind,
}

pub struct DeckScratch {
    acc: DeckAccumulator,
    bits: Vec<u8>,
    tmp: Vec<u64>,
}

impl KeySource for DeckKey {
    type Scratch = DeckScratch;

    fn scratch(&self) -> DeckScratch {
        DeckScratch {
            acc: DeckAccumulator::new(self.params),
            bits: Vec::new(),
            tmp: Vec::new(),
        }
    }

    fn key(&self, code: u64, n: usize, sc: &mut DeckScratch, out: &mut Vec<u64>) {
        sc.bits.clear();
        sc.bits
            .extend((0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8));
        match self.kind {
            DeckKind::FullB => sc.acc.exact_into(&sc.bits, out),
            DeckKind::ExactD => {
                sc.acc.exact_into(&sc.bits, &mut sc.tmp);
                out.clear();
                out.extend_from_slice(&sc.tmp[slice_range(self.params.k)]);
            }
            DeckKind::Eq7Star => {
                out.clear();
                let views: [&[u8]; 4] = [
                    &sc.bits,
                    &sc.bits[1..n - 1],
                    &sc.bits[1..],
                    &sc.bits[..n - 1],
                ];
                for view in views {
                    sc.acc.exact_into(view, &mut sc.tmp);
                    out.extend_from_slice(&sc.tmp);
                }
            }
            DeckKind::WildcardU => unreachable!("deck keys never use wildcard counts"),
        }
    }

    fn fixes_weight(&self) -> bool {
        !matches!(self.kind, DeckKind::ExactD) || self.params.k == 1
    }

    fn render(&self, code: u64, n: usize) -> String {
        BinaryString::from_code(code, n).to_string()
    }
}

/// Keys built from wildcard counts over a U-family.
#[derive(Debug, Clone)]
pub struct WildcardKey {
    pub spec: USetSpec,
    family: Vec<WildcardString>,
}

impl WildcardKey {
    pub fn new(spec: USetSpec) -> Result<Self> {
        Ok(Self {
            spec,
            family: enumerate_u(spec)?,
        })
    }
}

impl KeySource for WildcardKey {
    type Scratch = ();

    fn scratch(&self) {}

    fn key(&self, code: u64, n: usize, _: &mut (), out: &mut Vec<u64>) {
        let p = WildcardString::letters_from_code(code, n);
        out.clear();
        out.extend(
            self.family
                .iter()
                .map(|w| count_wildcard(w, &p).expect("letters only, bounded length")),
        );
    }

    fn fixes_weight(&self) -> bool {
        // X itself belongs to every family with a one-letter part
        match self.spec {
            USetSpec::Single { r, k } => r == 1 && k >= 1,
            USetSpec::Pair { .. } => true,
        }
    }

    fn render(&self, code: u64, n: usize) -> String {
        WildcardString::letters_from_code(code, n).to_string()
    }
}

/// A set of candidate strings searched as one unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shard {
    All,
    Weight(usize),
}

impl Shard {
    fn size(self, n: usize) -> u64 {
        match self {
            Shard::All => 1u64 << n,
            Shard::Weight(w) => binomial(n as u64, w as u64).expect("n <= 32") as u64,
        }
    }

    /// Code of the `rank`-th member in increasing order.
    fn unrank(self, rank: u64, n: usize) -> u64 {
        match self {
            Shard::All => rank,
            Shard::Weight(w) => {
                // combinatorial number system, highest position first
                let mut code = 0u64;
                let mut rest = rank;
                let mut top = n as u64;
                for i in (1..=w as u64).rev() {
                    let mut c = top;
                    loop {
                        c -= 1;
                        let v = binomial(c, i).expect("small") as u64;
                        if v <= rest {
                            rest -= v;
                            break;
                        }
                    }
                    code |= 1 << c;
                    top = c;
                }
                code
            }
        }
    }

    fn next(self, code: u64) -> u64 {
        match self {
            Shard::All => code + 1,
            Shard::Weight(0) => code,
            Shard::Weight(_) => {
                // next larger integer with the same popcount
                let low = code & code.wrapping_neg();
                let ripple = code + low;
                (((ripple ^ code) >> 2) / low) | ripple
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            Shard::All => "all".into(),
            Shard::Weight(w) => format!("w{w}"),
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        if text == "all" {
            return Some(Shard::All);
        }
        text.strip_prefix('w')?.parse().ok().map(Shard::Weight)
    }
}

/// Called once per finished shard.
pub type ProgressFn = Arc<dyn Fn(&RangeRecord) + Send + Sync>;

/// Options shared by every search entry point.
#[derive(Clone)]
pub struct SearchOptions {
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
    /// Witness pairs kept in a report, smallest first.
    pub max_witnesses: usize,
    pub checkpoint: Option<PathBuf>,
    /// Receives one record per finished shard.
    pub progress: Option<ProgressFn>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            workers: 0,
            max_witnesses: 8,
            checkpoint: None,
            progress: None,
        }
    }
}

impl std::fmt::Debug for SearchOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchOptions")
            .field("workers", &self.workers)
            .field("max_witnesses", &self.max_witnesses)
            .field("checkpoint", &self.checkpoint)
            .finish_non_exhaustive()
    }
}

/// Collisions found at one length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LengthOutcome {
    /// Smallest confirmed pairs as codes, `a < b`, sorted.
    pub pairs: Vec<(u64, u64)>,
    /// Total number of confirmed unordered pairs.
    pub total_pairs: u64,
}

fn hash_key(key: &[u64]) -> u128 {
    const A: u64 = 0x9e37_79b9_7f4a_7c15;
    const B: u64 = 0xc2b2_ae3d_27d4_eb4f;
    let (mut h1, mut h2) = (0x243f_6a88_85a3_08d3u64, 0x1319_8a2e_0370_7344u64);
    for &v in key {
        h1 = (h1 ^ v).wrapping_mul(A).rotate_left(31);
        h2 = (h2.rotate_left(17) ^ v.wrapping_mul(B)).wrapping_mul(A ^ B);
    }
    let fin = |mut z: u64| {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let len = key.len() as u64;
    (u128::from(fin(h1 ^ len)) << 64) | u128::from(fin(h2.wrapping_add(len)))
}

fn run_shard<K: KeySource>(
    source: &K,
    n: usize,
    shard: Shard,
    chunks: usize,
    max_witnesses: usize,
) -> LengthOutcome {
    let size = shard.size(n);
    let chunks = (chunks as u64).clamp(1, size.max(1));
    let step = size.div_ceil(chunks);
    let ranges: Vec<(u64, u64)> = (0..chunks)
        .map(|c| (c * step, ((c + 1) * step).min(size)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let mut records: Vec<(u128, u32)> = ranges
        .par_iter()
        .flat_map_iter(|&(lo, hi)| {
            let mut scratch = source.scratch();
            let mut key = Vec::new();
            let mut code = shard.unrank(lo, n);
            let mut out = Vec::with_capacity((hi - lo) as usize);
            for _ in lo..hi {
                source.key(code, n, &mut scratch, &mut key);
                out.push((source.hash(&key), code as u32));
                code = shard.next(code);
            }
            out
        })
        .collect();
    records.par_sort_unstable();

    let buckets: Vec<&[(u128, u32)]> = records
        .chunk_by(|a, b| a.0 == b.0)
        .filter(|run| run.len() > 1)
        .collect();

    let per_bucket: Vec<LengthOutcome> = buckets
        .par_iter()
        .map(|run| {
            let mut scratch = source.scratch();
            let mut members: Vec<(Vec<u64>, u64)> = run
                .iter()
                .map(|&(_, code)| {
                    let mut key = Vec::new();
                    source.key(u64::from(code), n, &mut scratch, &mut key);
                    (key, u64::from(code))
                })
                .collect();
            members.sort_unstable();
            let mut outcome = LengthOutcome::default();
            for class in members.chunk_by(|a, b| a.0 == b.0) {
                let c = class.len() as u64;
                outcome.total_pairs += c * (c - 1) / 2;
                'outer: for (i, a) in class.iter().enumerate() {
                    for b in &class[i + 1..] {
                        if outcome.pairs.len() >= max_witnesses {
                            break 'outer;
                        }
                        outcome.pairs.push((a.1, b.1));
                    }
                }
            }
            outcome
        })
        .collect();

    merge(per_bucket, max_witnesses)
}

fn merge(parts: impl IntoIterator<Item = LengthOutcome>, max_witnesses: usize) -> LengthOutcome {
    let mut all = LengthOutcome::default();
    for part in parts {
        all.total_pairs += part.total_pairs;
        all.pairs.extend(part.pairs);
    }
    all.pairs.sort_unstable();
    all.pairs.truncate(max_witnesses);
    all
}

fn shards_for<K: KeySource>(source: &K, n: usize) -> Vec<Shard> {
    if source.fixes_weight() {
        (0..=n).map(Shard::Weight).collect()
    } else {
        vec![Shard::All]
    }
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Searches every string of length `n`, shard by shard, consulting and
/// extending the checkpoint log when one is configured.
fn search_length<K: KeySource>(
    source: &K,
    n: usize,
    opts: &SearchOptions,
    log: Option<&mut CheckpointLog>,
) -> Result<LengthOutcome> {
    if n > MAX_SEARCH_LEN {
        return Err(Error::InvalidParams(format!(
            "length {n} exceeds the search limit {MAX_SEARCH_LEN}"
        )));
    }
    let shards = shards_for(source, n);
    let workers = if opts.workers == 0 {
        rayon::current_num_threads()
    } else {
        opts.workers
    };
    let chunks = workers * 4;
    let mut log = log;
    let mut parts = Vec::with_capacity(shards.len());
    for shard in shards {
        if let Some(done) = log.as_deref().and_then(|l| l.lookup(n, shard)) {
            parts.push(done.to_outcome(n, parse_code)?);
            continue;
        }
        let outcome = with_pool(opts.workers, || {
            run_shard(source, n, shard, chunks, opts.max_witnesses)
        })?;
        let record = RangeRecord {
            n,
            shard,
            range: (0, shard.size(n)),
            status: ShardStatus::from_outcome(&outcome, n, |c| source.render(c, n)),
        };
        if let Some(l) = log.as_deref_mut() {
            l.append(&record)?;
        }
        if let Some(progress) = &opts.progress {
            progress(&record);
        }
        parts.push(outcome);
    }
    Ok(merge(parts, opts.max_witnesses))
}

fn parse_code(text: &str) -> Result<u64> {
    let mut code = 0u64;
    for (i, c) in text.chars().enumerate() {
        let bit = match c {
            '0' | 'X' => 0,
            '1' | 'Y' => 1,
            found => return Err(Error::Parse { position: i + 1, found }),
        };
        code = (code << 1) | bit;
    }
    Ok(code)
}

fn deck_source(params: GapParams, kind: DeckKind, n: usize) -> Result<DeckKey> {
    if kind == DeckKind::WildcardU {
        return Err(Error::InvalidParams(
            "use search_su for wildcard families".into(),
        ));
    }
    check_exact_fits(n, params)?;
    Ok(DeckKey { params, kind })
}

/// Smallest confirmed colliding pair among strings of length `n`.
pub fn find_collision(
    n: usize,
    params: GapParams,
    kind: DeckKind,
) -> Result<Option<(BinaryString, BinaryString)>> {
    find_collision_with(n, params, kind, &SearchOptions::default())
}

pub fn find_collision_with(
    n: usize,
    params: GapParams,
    kind: DeckKind,
    opts: &SearchOptions,
) -> Result<Option<(BinaryString, BinaryString)>> {
    if n == 0 || n > MAX_SEARCH_LEN || (kind == DeckKind::Eq7Star && n < 2) {
        return Err(Error::InvalidParams(format!(
            "length {n} too short for {}",
            kind.label()
        )));
    }
    let source = deck_source(params, kind, n)?;
    let outcome = search_length(&source, n, opts, None)?;
    Ok(outcome.pairs.first().map(|&(a, b)| {
        (
            BinaryString::from_code(a, n),
            BinaryString::from_code(b, n),
        )
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: String,
    pub y: String,
}

/// Outcome of a minimal-length search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollisionReport {
    pub deck_kind: DeckKind,
    pub params: SearchParams,
    /// Smallest length with a confirmed collision, if any was found.
    pub n: Option<usize>,
    /// Smallest colliding pairs at `n`, lexicographically ordered.
    pub witnesses: Vec<Witness>,
    /// All confirmed colliding pairs at `n`.
    pub witness_pairs_total: u64,
    /// First and last length examined.
    pub scanned_lengths: (usize, usize),
    /// Lengths fully enumerated without a collision.
    pub certified_clear: Vec<usize>,
    /// Lengths skipped because the relation is vacuous there.
    pub skipped_lengths: Vec<usize>,
}

fn minimal_search<K: KeySource>(
    source: &K,
    kind: DeckKind,
    params: SearchParams,
    first: usize,
    n_max: usize,
    skip: impl Fn(usize) -> bool,
    opts: &SearchOptions,
) -> Result<CollisionReport> {
    if n_max < 1 {
        return Err(Error::InvalidParams("length cap must be at least 1".into()));
    }
    let mut log = match &opts.checkpoint {
        Some(path) => Some(CheckpointLog::open(path, &header(kind, &params))?),
        None => None,
    };
    let mut report = CollisionReport {
        deck_kind: kind,
        params,
        n: None,
        witnesses: Vec::new(),
        witness_pairs_total: 0,
        scanned_lengths: (first, n_max.max(first)),
        certified_clear: Vec::new(),
        skipped_lengths: Vec::new(),
    };
    for n in first..=n_max {
        if skip(n) {
            report.skipped_lengths.push(n);
            continue;
        }
        let outcome = search_length(source, n, opts, log.as_mut())?;
        if outcome.pairs.is_empty() {
            report.certified_clear.push(n);
            continue;
        }
        report.n = Some(n);
        report.scanned_lengths.1 = n;
        report.witness_pairs_total = outcome.total_pairs;
        report.witnesses = outcome
            .pairs
            .iter()
            .map(|&(a, b)| Witness {
                x: source.render(a, n),
                y: source.render(b, n),
            })
            .collect();
        return Ok(report);
    }
    Ok(report)
}

fn header(kind: DeckKind, params: &SearchParams) -> String {
    match params {
        SearchParams::Gap(p) => format!("kind={} s={} k={}", kind.label(), p.s, p.k),
        SearchParams::Wildcard(USetSpec::Single { r, k }) => {
            format!("kind={} r={r} k={k}", kind.label())
        }
        SearchParams::Wildcard(USetSpec::Pair { k1, k2 }) => {
            format!("kind={} k1={k1} k2={k2}", kind.label())
        }
    }
}

fn deck_search(
    params: GapParams,
    kind: DeckKind,
    first: usize,
    n_max: usize,
    skip: impl Fn(usize) -> bool,
    opts: &SearchOptions,
) -> Result<CollisionReport> {
    let source = deck_source(params, kind, n_max.max(first))?;
    minimal_search(
        &source,
        kind,
        SearchParams::Gap(params),
        first,
        n_max,
        skip,
        opts,
    )
}

/// Shortest length admitting two distinct strings with equal gapped decks.
/// Lengths too short to contain any gapped `k`-subsequence are skipped:
/// there the deck is just the shallower deck, and e.g. `01` and `10` agree
/// trivially.
pub fn search_g(params: GapParams, n_max: usize, opts: &SearchOptions) -> Result<CollisionReport> {
    let min = params.min_len_for(params.k);
    deck_search(params, DeckKind::FullB, 1, n_max, |n| n < min, opts)
}

/// As [`search_g`], additionally requiring the punctured decks to agree.
pub fn search_g_star(
    params: GapParams,
    n_max: usize,
    opts: &SearchOptions,
) -> Result<CollisionReport> {
    let min = params.min_len_for(params.k);
    deck_search(params, DeckKind::Eq7Star, 2, n_max, |n| n < min, opts)
}

/// Shortest length admitting distinct strings with equal length-`k` slices.
/// Lengths where the slice is empty for every string are skipped.
pub fn search_exact_d(
    params: GapParams,
    n_max: usize,
    opts: &SearchOptions,
) -> Result<CollisionReport> {
    let min = params.min_len_for(params.k);
    deck_search(params, DeckKind::ExactD, 1, n_max, |n| n < min, opts)
}

/// Shortest length admitting distinct letter strings equivalent under a
/// U-family.
pub fn search_su(spec: USetSpec, m_max: usize, opts: &SearchOptions) -> Result<CollisionReport> {
    let source = WildcardKey::new(spec)?;
    minimal_search(
        &source,
        DeckKind::WildcardU,
        SearchParams::Wildcard(spec),
        1,
        m_max,
        |_| false,
        opts,
    )
}
