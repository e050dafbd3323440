//! Rank searches in sorted random-access sequences.
//!
//! Both functions report the rank of the target, `#{v ∈ L : v ≤ u}`, under
//! whatever comparator they are given. The comparator answers `less(a, b)`
//! (is `a < b`) and is responsible for charging the caller's ledger, so the
//! same routines serve dirty and clean phases.

use crate::instrument::Rng;

/// Binary search whose pivot is drawn uniformly from the middle half of the
/// remaining window: for a window `{v_i, …, v_j}` the pivot index is uniform
/// in `{i + ⌈(j-i)/4⌉, …, j - ⌈(j-i)/4⌉}` (midpoint when that range is
/// empty). The window shrinks by a factor of at least 3/4 per comparison, so
/// at most `⌈log_{4/3} k⌉` comparisons resolve a list of size `k ≥ 2`; a
/// single-element list needs exactly one.
pub fn randomized_binary_search<K, F>(list: &[K], target: &K, rng: &mut Rng, mut less: F) -> usize
where
    F: FnMut(&K, &K) -> bool,
{
    let mut lo = 0isize;
    let mut hi = list.len() as isize - 1;
    while lo <= hi {
        let span = hi - lo;
        let margin = (span + 3) / 4; // ceil(span / 4)
        let (a, b) = (lo + margin, hi - margin);
        let pivot = if a >= b { lo + span / 2 } else { a + rng.below((b - a + 1) as u64) as isize };
        if less(target, &list[pivot as usize]) {
            hi = pivot - 1;
        } else {
            lo = pivot + 1;
        }
    }
    lo as usize
}

/// Exponential (galloping) search from a hinted position: probes with
/// doubling stride away from `start`, then binary-searches the bracketing
/// window. Costs `O(log(|rank - start| + 2))` comparisons; in particular at
/// most two when `start` is already the rank.
pub fn exponential_search<K, F>(list: &[K], start: usize, target: &K, mut less: F) -> usize
where
    F: FnMut(&K, &K) -> bool,
{
    let n = list.len();
    let s = start.min(n);

    // list[s-1] <= target ?
    if s == 0 || !less(target, &list[s - 1]) {
        if s == n || less(target, &list[s]) {
            return s;
        }
        // rank > s: gallop right while list[s + ofs] <= target
        let mut known_le = s;
        let mut ofs = 1usize;
        let mut bound = n;
        loop {
            let idx = s + ofs;
            if idx >= n {
                break;
            }
            if less(target, &list[idx]) {
                bound = idx;
                break;
            }
            known_le = idx;
            ofs *= 2;
        }
        binary_rank(list, known_le + 1, bound, target, &mut less)
    } else {
        // rank < s: gallop left while list[s-1-ofs] > target
        let mut known_gt = s - 1;
        let mut floor = 0usize;
        let mut ofs = 1usize;
        loop {
            let Some(idx) = (s - 1).checked_sub(ofs) else {
                break;
            };
            if !less(target, &list[idx]) {
                floor = idx + 1;
                break;
            }
            known_gt = idx;
            ofs *= 2;
        }
        binary_rank(list, floor, known_gt, target, &mut less)
    }
}

/// Plain midpoint binary search for the rank within `[lo, hi]`.
fn binary_rank<K, F>(list: &[K], mut lo: usize, mut hi: usize, target: &K, less: &mut F) -> usize
where
    F: FnMut(&K, &K) -> bool,
{
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if less(target, &list[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}
