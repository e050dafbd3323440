//! Rank arithmetic, the three prediction-error measures, and the synthetic
//! prediction generators used by the experiment drivers.
//!
//! The rank of `u` in a multiset `V` is `#{v ∈ V : v ≤ u}`, counted with
//! multiplicity. Predicted ranks are positive integers; an element with true
//! rank `r` and prediction `r̂` carries error `|r - r̂|`.

use std::collections::HashMap;
use std::hash::Hash;

use crate::instrument::{DirtyOracle, Rng};

/// Number of elements of `v` that are `<= u`, multiplicity counted.
pub fn rank_of<K: Ord>(u: &K, v: &[K]) -> usize {
    v.iter().filter(|x| *x <= u).count()
}

/// Rank of `u` in a sorted slice, via binary search.
pub fn rank_in_sorted<K: PartialOrd>(u: &K, sorted: &[K]) -> usize {
    sorted.partition_point(|x| x <= u)
}

/// Number of elements of `v` whose dirty comparison with `u` disagrees with
/// the true order. Panics if `u` or any element of `v` is missing from the
/// oracle.
pub fn err_dirty<K: Ord + Eq + Hash>(u: &K, v: &[K], oracle: &DirtyOracle<K>) -> usize {
    v.iter()
        .filter(|x| (oracle.less(u, x)) != (u < x))
        .count()
}

/// Pointer-prediction error `|rank(u, q) - rank(pred, q)|`.
/// Panics if `predicted_pred` is not a member of `q`.
pub fn err_pointer<K: Ord>(u: &K, predicted_pred: &K, q: &[K]) -> usize {
    assert!(
        q.iter().any(|x| x == predicted_pred),
        "predicted predecessor is not a member of the queue"
    );
    rank_of(u, q).abs_diff(rank_of(predicted_pred, q))
}

/// Rank-prediction error `|r - r̂|`. Both ranks must be positive.
pub fn err_rank(true_rank: u64, predicted_rank: u64) -> u64 {
    debug_assert!(true_rank >= 1 && predicted_rank >= 1);
    true_rank.abs_diff(predicted_rank)
}

/// Predicted ranks indexed by true rank: entry `i` holds `R̂` of the element
/// whose true rank is `i + 1`. All entries are `>= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankPrediction {
    ranks: Vec<u64>,
}

impl RankPrediction {
    pub fn new(ranks: Vec<u64>) -> Self {
        assert!(ranks.iter().all(|&r| r >= 1), "predicted ranks must be positive");
        RankPrediction { ranks }
    }

    /// `R̂` of the element with true rank `i + 1`.
    pub fn get(&self, i: usize) -> u64 {
        self.ranks[i]
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.ranks
    }

    /// Per-element errors against the identity (true) ranking.
    pub fn error_report(&self) -> ErrorReport {
        ErrorReport::new(
            self.ranks
                .iter()
                .enumerate()
                .map(|(i, &r)| err_rank(i as u64 + 1, r))
                .collect(),
        )
    }
}

/// Summary of per-element prediction errors: the maximum and
/// `Σ log₂(err + 2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub per_element: Vec<u64>,
    pub max_error: u64,
    pub sum_log_error: f64,
}

impl ErrorReport {
    pub fn new(per_element: Vec<u64>) -> Self {
        let max_error = per_element.iter().copied().max().unwrap_or(0);
        let sum_log_error = per_element.iter().map(|&e| ((e + 2) as f64).log2()).sum();
        ErrorReport { per_element, max_error, sum_log_error }
    }

    pub fn empty() -> Self {
        ErrorReport { per_element: Vec::new(), max_error: 0, sum_log_error: 0.0 }
    }
}

/// Class-setting prediction generator.
///
/// Draws `c - 1` distinct cut points uniformly from `{1, .., n-1}` (partial
/// Fisher-Yates, then sorted), forming thresholds
/// `0 = t_0 < t_1 < … < t_c = n`. The element of true rank `i` with
/// `t_k < i ≤ t_{k+1}` receives `R̂` drawn uniformly from `(t_k, t_{k+1}]`.
/// Draws happen in increasing true-rank order, so fixed seeds reproduce
/// streams exactly.
///
/// With `c = n` every class is a singleton and all errors vanish; with
/// `c = 1` each `R̂` is i.i.d. uniform on `[1, n]`.
pub fn gen_class(n: usize, c: usize, rng: &mut Rng) -> RankPrediction {
    assert!(c >= 1 && c <= n, "class count must satisfy 1 <= c <= n");
    let mut thresholds = Vec::with_capacity(c + 1);
    thresholds.push(0u64);
    if c > 1 {
        // uniform (c-1)-subset of {1..n-1} via partial Fisher-Yates
        let mut pool: Vec<u64> = (1..n as u64).collect();
        for j in 0..c - 1 {
            let pick = j + rng.below((pool.len() - j) as u64) as usize;
            pool.swap(j, pick);
        }
        let mut cuts = pool[..c - 1].to_vec();
        cuts.sort_unstable();
        thresholds.extend(cuts);
    }
    thresholds.push(n as u64);

    let mut ranks = Vec::with_capacity(n);
    for w in thresholds.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        for _ in lo..hi {
            ranks.push(lo + 1 + rng.below(hi - lo));
        }
    }
    RankPrediction::new(ranks)
}

/// Decay-setting prediction generator.
///
/// Starts from the identity ranking and applies `steps` perturbations: pick
/// a uniform element, then a uniform direction, and swap the element with
/// its left or right neighbour in the *predicted* ordering (no-op at the
/// boundaries). Both draws are consumed even when the move is a no-op.
pub fn gen_decay(n: usize, steps: u64, rng: &mut Rng) -> RankPrediction {
    assert!(n >= 1);
    // order[p] = element at predicted position p; pos = inverse
    let mut order: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    for _ in 0..steps {
        let e = rng.below(n as u64) as usize;
        let go_right = rng.below(2) == 1;
        let p = pos[e];
        let q = if go_right { p + 1 } else { p.wrapping_sub(1) };
        if q < n {
            let other = order[q];
            order.swap(p, q);
            pos[e] = q;
            pos[other] = p;
        }
    }
    RankPrediction::new(pos.iter().map(|&p| p as u64 + 1).collect())
}

/// Builds a dirty oracle for `keys` from predicted ranks aligned with them.
pub fn oracle_from_ranks<K: Eq + Hash + Clone>(keys: &[K], rhat: &[u64]) -> DirtyOracle<K> {
    assert_eq!(keys.len(), rhat.len());
    DirtyOracle::from_pairs(keys.iter().cloned().zip(rhat.iter().copied()))
}

/// Maps a prediction indexed by true rank onto concrete elements: returns
/// `R̂` aligned with `items`, where an item's true rank is its position in
/// the sorted order (ties broken by input position).
pub fn align_to_items<K: Ord>(items: &[K], prediction: &RankPrediction) -> Vec<u64> {
    assert_eq!(items.len(), prediction.len());
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&a, &b| items[a].cmp(&items[b]).then(a.cmp(&b)));
    let mut out = vec![0u64; items.len()];
    for (true_rank0, &item_pos) in idx.iter().enumerate() {
        out[item_pos] = prediction.get(true_rank0);
    }
    out
}

/// Per-element error report for `rhat` against the true ranks of `items`
/// (ties broken by input position, matching [`align_to_items`]).
pub fn report_for_items<K: Ord>(items: &[K], rhat: &[u64]) -> ErrorReport {
    assert_eq!(items.len(), rhat.len());
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&a, &b| items[a].cmp(&items[b]).then(a.cmp(&b)));
    let mut errors = vec![0u64; items.len()];
    for (true_rank0, &item_pos) in idx.iter().enumerate() {
        errors[item_pos] = err_rank(true_rank0 as u64 + 1, rhat[item_pos]);
    }
    ErrorReport::new(errors)
}

/// Rank map of a `HashMap` flavor used by oracles over generic ids.
pub type RankMap<K> = HashMap<K, u64>;
