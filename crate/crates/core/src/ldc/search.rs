//! Exhaustive search over placements and raw one-round cooperation.

use rayon::prelude::*;
use serde::Serialize;

use super::{check_scheme, rank, Basis, Functional, LdcChannel, LdcError, LdcOrder, LdcOutcome, LdcScheme};
use crate::channel::User;

/// Largest `q` accepted by [`search_raw`].
pub const MAX_SEARCH_LEVELS: usize = 6;
/// Largest per-link budget accepted by [`search_raw`].
pub const MAX_SEARCH_LINK_BITS: usize = 2;

/// Best one-round raw scheme found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub sum: usize,
    pub rates: [usize; 2],
    pub scheme: LdcScheme,
}

/// `min(n11 + n22 + k12 + k21, rank of the stacked channel matrix)`.
pub fn cut_set_bound(ch: &LdcChannel) -> usize {
    let rows = User::BOTH
        .into_iter()
        .flat_map(|rx| (1..=ch.q).map(move |r| ch.row_form(rx, r)));
    (ch.n11 + ch.n22 + ch.k12 + ch.k21).min(rank(rows))
}

/// All subsets of `1..n` of size at most `k`, as increasing index lists,
/// shortest first.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(1, |&l: &usize| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn rows_of(combo: usize, q: usize) -> Vec<usize> {
    (0..q).filter(|r| combo >> r & 1 == 1).map(|r| r + 1).collect()
}

/// Smallest set of raw functionals from `from` that lets the other
/// receiver decode its bits under `placed`, if any fits the budget.
fn find_help(ch: &LdcChannel, from: User, placed: u64, candidates: &[Vec<usize>]) -> Option<Vec<Functional>> {
    let rx = from.other();
    let own = ch.user_mask(rx) & placed;
    let base = Basis::from_vectors((1..=ch.q).map(|r| ch.row_form(rx, r) & placed));
    let combo_form = |combo: usize| {
        (0..ch.q)
            .filter(|r| combo >> r & 1 == 1)
            .fold(0u64, |acc, r| acc ^ (ch.row_form(from, r + 1) & placed))
    };
    let decodes = |b: &Basis| (0..64).filter(|i| own >> i & 1 == 1).all(|i| b.contains(1u64 << i));
    candidates.iter().find_map(|set| {
        let mut b = base.clone();
        for &c in set {
            b.insert(combo_form(c));
        }
        decodes(&b).then(|| set.iter().map(|&c| Functional::Raw(rows_of(c, ch.q))).collect())
    })
}

/// Maximum sum rate over all placements with at most `max_bits_per_user`
/// bits per user and all raw one-round cooperation functionals within
/// the link budgets. Ties are broken towards the placement with the
/// smallest level masks, so the witness is deterministic.
pub fn search_raw(ch: &LdcChannel, max_bits_per_user: usize) -> Result<SearchResult, LdcError> {
    if ch.q > MAX_SEARCH_LEVELS || ch.k12 > MAX_SEARCH_LINK_BITS || ch.k21 > MAX_SEARCH_LINK_BITS {
        return Err(LdcError::TooLarge {
            max_q: MAX_SEARCH_LEVELS,
            max_k: MAX_SEARCH_LINK_BITS,
        });
    }
    let q = ch.q;
    let n_combos = 1usize << q;
    let cand12 = subsets(n_combos, ch.k12);
    let cand21 = subsets(n_combos, ch.k21);

    let masks: Vec<u64> = (0..1u64 << q)
        .filter(|m| m.count_ones() as usize <= max_bits_per_user)
        .collect();
    let mut placements: Vec<[u64; 2]> = masks
        .iter()
        .flat_map(|&m1| masks.iter().map(move |&m2| [m1, m2]))
        .collect();
    placements.sort_by_key(|p| (std::cmp::Reverse(p[0].count_ones() + p[1].count_ones()), p[0], p[1]));

    let found = placements
        .par_iter()
        .map(|&placement| {
            let placed = placement[0] | (placement[1] << q);
            let coop2 = find_help(ch, User::Two, placed, &cand21)?;
            let coop1 = find_help(ch, User::One, placed, &cand12)?;
            Some(LdcScheme {
                placement,
                coop1,
                coop2,
                order: LdcOrder::OneRound,
            })
        })
        .find_first(Option::is_some)
        .flatten()
        .expect("the empty placement always decodes");

    match check_scheme(ch, &found)? {
        LdcOutcome::Success { rates } => Ok(SearchResult {
            sum: rates[0] + rates[1],
            rates,
            scheme: found,
        }),
        LdcOutcome::Failure { receiver } => unreachable!("search witness fails at receiver {receiver}"),
    }
}
