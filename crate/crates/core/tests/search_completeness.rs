//! The hashed, sharded search must find exactly the pair that a quadratic
//! all-pairs comparison of naive decks finds.

use gapdeck::deck::slice_range;
use gapdeck::naive;
use gapdeck::search::{find_collision_with, SearchOptions};
use gapdeck::*;

fn p(s: usize, k: usize) -> GapParams {
    GapParams::new(s, k).unwrap()
}

fn naive_key(x: &BinaryString, params: GapParams, kind: DeckKind) -> Vec<u64> {
    let deck = |y: &BinaryString| naive::deck(y, params.s, params.k);
    match kind {
        DeckKind::FullB => deck(x),
        DeckKind::ExactD => deck(x)[slice_range(params.k)].to_vec(),
        DeckKind::Eq7Star => Puncture::ALL
            .iter()
            .flat_map(|&spec| deck(&x.puncture(spec).unwrap()))
            .collect(),
        DeckKind::WildcardU => unreachable!(),
    }
}

fn agree(n: usize, params: GapParams, kind: DeckKind, workers: usize) {
    let opts = SearchOptions {
        workers,
        ..Default::default()
    };
    let fast = find_collision_with(n, params, kind, &opts).unwrap();
    let slow = naive::pairwise_collision(n, |x| naive_key(x, params, kind));
    assert_eq!(fast, slow, "n={n} {params:?} {kind:?}");
}

#[test]
fn smallest_pair_matches_all_pairs_comparison() {
    for (s, k) in [(1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2)] {
        for kind in [DeckKind::FullB, DeckKind::ExactD, DeckKind::Eq7Star] {
            for n in 2..=11 {
                agree(n, p(s, k), kind, 0);
            }
        }
    }
}

#[test]
fn longer_lengths_match_all_pairs_comparison() {
    for n in 12..=14 {
        agree(n, p(2, 3), DeckKind::FullB, 4);
    }
    agree(13, p(2, 3), DeckKind::Eq7Star, 2);
}

#[test]
fn interrupted_search_resumes_to_the_same_report() {
    let dir = std::env::temp_dir().join(format!("gapdeck-resume-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let log = dir.join("g3.log");
    let _ = std::fs::remove_file(&log);
    let opts = SearchOptions {
        checkpoint: Some(log.clone()),
        ..Default::default()
    };
    let fresh = search_g(p(2, 3), 13, &SearchOptions::default()).unwrap();

    // a partial run that stops at 11, then a torn line as if killed mid-write
    search_g(p(2, 3), 11, &opts).unwrap();
    let mut text = std::fs::read_to_string(&log).unwrap();
    text.push_str("n=12 shard=w5 ran");
    std::fs::write(&log, text).unwrap();

    let resumed = search_g(p(2, 3), 13, &opts).unwrap();
    assert_eq!(resumed, fresh);
    let again = search_g(p(2, 3), 13, &opts).unwrap();
    assert_eq!(again, fresh);

    let other = search_g(p(2, 2), 13, &opts);
    assert!(other.is_err(), "a log from another search must be refused");
    std::fs::remove_dir_all(&dir).unwrap();
}
