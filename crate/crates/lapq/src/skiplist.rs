//! Doubly linked, leveled skip list with geometric heights, `-inf`/`+inf`
//! sentinels, per-key FIFO buckets for duplicate keys, and the exponential
//! search insertion primitive.
//!
//! Every key comparison made while searching is charged to the list's
//! [`ComparisonLedger`]; sentinel checks are structural and free. Splicing a
//! node whose position is already known costs no comparisons at all, which
//! is what makes prediction-guided insertion cheap.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::instrument::{dirty_less, ComparisonLedger, DirtyOracle, Rng, SentinelKey};
use crate::QueueError;

/// Heights above this are unreachable in practice (probability 2^-64 per
/// draw at p = 1/2).
const MAX_HEIGHT: usize = 64;

/// Handle to a skip-list node. Stable until the node is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeRef(u32);

const HEAD: NodeRef = NodeRef(0);
const NIL: NodeRef = NodeRef(1);

#[derive(Debug)]
struct SkipNode<K, V> {
    key: SentinelKey<K>,
    bucket: VecDeque<V>,
    /// `(prev, next)` per level; level `l` lives at index `l - 1`.
    links: Vec<(NodeRef, NodeRef)>,
}

/// Geometric height sample: `Pr[h = k] = (1 - p)^(k-1) · p`, so the expected
/// height is `1/p` and, at the default `p = 1/2`, `Pr[h = k] = 2^-k`.
pub fn sample_height(p: f64, rng: &mut Rng) -> usize {
    let mut h = 1;
    while h < MAX_HEIGHT && rng.f64() >= p {
        h += 1;
    }
    h
}

/// Sorted leveled list over keys `K` with payload buckets `V`.
#[derive(Debug)]
pub struct SkipList<K, V> {
    nodes: Vec<SkipNode<K, V>>,
    free: Vec<u32>,
    index: HashMap<K, NodeRef>,
    p: f64,
    len: usize,
    ledger: ComparisonLedger,
    rng: Rng,
}

impl<K: Ord + Eq + Hash + Clone, V> SkipList<K, V> {
    pub fn new(seed: u64) -> Self {
        Self::with_promotion(0.5, seed)
    }

    /// `p` is the per-level stopping probability of the height distribution.
    pub fn with_promotion(p: f64, seed: u64) -> Self {
        assert!(p > 0.0 && p < 1.0);
        let head = SkipNode {
            key: SentinelKey::NegInf,
            bucket: VecDeque::new(),
            links: vec![(HEAD, NIL)],
        };
        let nil = SkipNode {
            key: SentinelKey::PosInf,
            bucket: VecDeque::new(),
            links: vec![(HEAD, NIL)],
        };
        SkipList {
            nodes: vec![head, nil],
            free: Vec::new(),
            index: HashMap::new(),
            p,
            len: 0,
            ledger: ComparisonLedger::new(),
            rng: Rng::new(seed),
        }
    }

    pub fn head(&self) -> NodeRef {
        HEAD
    }

    /// Number of stored elements, duplicates included.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of distinct keys.
    pub fn distinct_keys(&self) -> usize {
        self.index.len()
    }

    pub fn ledger(&self) -> &ComparisonLedger {
        self.ledger_ref()
    }

    fn ledger_ref(&self) -> &ComparisonLedger {
        &self.ledger
    }

    /// Sentinel height, equal to the tallest height ever sampled.
    pub fn max_height(&self) -> usize {
        self.nodes[HEAD.0 as usize].links.len()
    }

    pub fn key(&self, node: NodeRef) -> Option<&K> {
        self.nodes[node.0 as usize].key.as_key()
    }

    pub fn node_of(&self, key: &K) -> Option<NodeRef> {
        self.index.get(key).copied()
    }

    /// Level-1 predecessor of a node (possibly the head sentinel).
    pub fn prev_node(&self, node: NodeRef) -> NodeRef {
        self.prev(node, 1)
    }

    fn height(&self, node: NodeRef) -> usize {
        self.nodes[node.0 as usize].links.len()
    }

    fn next(&self, node: NodeRef, level: usize) -> NodeRef {
        self.nodes[node.0 as usize].links[level - 1].1
    }

    fn prev(&self, node: NodeRef, level: usize) -> NodeRef {
        self.nodes[node.0 as usize].links[level - 1].0
    }

    /// Charged test `key(node) <= u`; free when `node` is a sentinel.
    fn le_key(&mut self, node: NodeRef, u: &SentinelKey<K>) -> bool {
        let key = &self.nodes[node.0 as usize].key;
        if !key.is_sentinel() && !u.is_sentinel() {
            self.ledger.record_clean();
        }
        !(u < key)
    }

    /// Charged test `key(node) >= u`; free when `node` is a sentinel.
    fn ge_key(&mut self, node: NodeRef, u: &SentinelKey<K>) -> bool {
        let key = &self.nodes[node.0 as usize].key;
        if !key.is_sentinel() && !u.is_sentinel() {
            self.ledger.record_clean();
        }
        !(key < u)
    }

    fn alloc(&mut self, key: K, payload: V, height: usize) -> NodeRef {
        let node = SkipNode {
            key: SentinelKey::Key(key),
            bucket: VecDeque::from([payload]),
            links: vec![(HEAD, NIL); height],
        };
        match self.free.pop() {
            Some(slot) => {
                self.nodes[slot as usize] = node;
                NodeRef(slot)
            }
            None => {
                self.nodes.push(node);
                NodeRef(self.nodes.len() as u32 - 1)
            }
        }
    }

    fn raise_sentinels(&mut self, height: usize) {
        while self.max_height() < height {
            self.nodes[HEAD.0 as usize].links.push((HEAD, NIL));
            self.nodes[NIL.0 as usize].links.push((HEAD, NIL));
        }
    }

    /// Splices `key` immediately after `w`, which must be its predecessor
    /// (`key(w) <= key < key(next(w, 1))`). Equal keys append to `w`'s
    /// bucket. Costs zero charged comparisons: the position is known.
    pub fn insert_after(&mut self, w: NodeRef, key: K, payload: V) -> NodeRef {
        debug_assert!(self.nodes[w.0 as usize].key <= SentinelKey::Key(key.clone()));
        debug_assert!({
            let nxt = self.next(w, 1);
            SentinelKey::Key(key.clone()) < self.nodes[nxt.0 as usize].key
                || self.nodes[w.0 as usize].key == SentinelKey::Key(key.clone())
        });
        if self.nodes[w.0 as usize].key.as_key() == Some(&key) {
            self.nodes[w.0 as usize].bucket.push_back(payload);
            self.len += 1;
            return w;
        }

        let height = sample_height(self.p, &mut self.rng);
        self.raise_sentinels(height);
        let node = self.alloc(key.clone(), payload, height);

        let mut pred = w;
        for level in 1..=height {
            // nearest node to the left tall enough for this level
            while self.height(pred) < level {
                let top = self.height(pred);
                pred = self.prev(pred, top);
            }
            let succ = self.next(pred, level);
            self.nodes[node.0 as usize].links[level - 1] = (pred, succ);
            self.nodes[pred.0 as usize].links[level - 1].1 = node;
            self.nodes[succ.0 as usize].links[level - 1].0 = node;
        }

        self.index.insert(key, node);
        self.len += 1;
        node
    }

    /// Exponential search from `source` followed by insertion.
    ///
    /// When `key(source) <= u` the search walks right: a bottom-up phase
    /// climbs while `next(w, h(w)) <= u`, then a top-down phase refines from
    /// level `h(w)` to 1. When `key(source) > u` the directions and
    /// comparisons are mirrored. Every test against a stored key charges one
    /// clean comparison.
    pub fn exp_search_insert(&mut self, source: NodeRef, key: K, payload: V) -> NodeRef {
        let u = SentinelKey::Key(key);
        // direction probe (free if source is a sentinel)
        let source_gt = {
            let skey = &self.nodes[source.0 as usize].key;
            if !skey.is_sentinel() {
                self.ledger.record_clean();
            }
            u < *skey
        };

        let SentinelKey::Key(key) = u else { unreachable!() };
        if !source_gt {
            let u = SentinelKey::Key(key.clone());
            let mut w = source;
            loop {
                let top = self.height(w);
                let nxt = self.next(w, top);
                if self.le_key(nxt, &u) {
                    w = nxt;
                } else {
                    break;
                }
            }
            for level in (1..=self.height(w)).rev() {
                loop {
                    let nxt = self.next(w, level);
                    if self.le_key(nxt, &u) {
                        w = nxt;
                    } else {
                        break;
                    }
                }
            }
            self.insert_after(w, key, payload)
        } else {
            let u = SentinelKey::Key(key.clone());
            let mut w = source;
            loop {
                let top = self.height(w);
                let prv = self.prev(w, top);
                if self.ge_key(prv, &u) {
                    w = prv;
                } else {
                    break;
                }
            }
            for level in (1..=self.height(w)).rev() {
                loop {
                    let prv = self.prev(w, level);
                    if self.ge_key(prv, &u) {
                        w = prv;
                    } else {
                        break;
                    }
                }
            }
            // w is the leftmost node with key >= u
            if self.nodes[w.0 as usize].key.as_key() == Some(&key) {
                self.nodes[w.0 as usize].bucket.push_back(payload);
                self.len += 1;
                w
            } else {
                let pred = self.prev(w, 1);
                self.insert_after(pred, key, payload)
            }
        }
    }

    /// Classical top-down descent from the head; returns the predecessor
    /// node of `u` under the clean order, or under the dirty order when an
    /// oracle is supplied. Comparisons are charged to the matching counter.
    pub fn search_top_down(&mut self, u: &K, oracle: Option<&DirtyOracle<K>>) -> NodeRef {
        let u = SentinelKey::Key(u.clone());
        let mut w = HEAD;
        for level in (1..=self.max_height()).rev() {
            loop {
                let nxt = self.next(w, level);
                let step = match oracle {
                    None => {
                        // key(nxt) <= u
                        let key = &self.nodes[nxt.0 as usize].key;
                        if !key.is_sentinel() {
                            self.ledger.record_clean();
                        }
                        !(u < *key)
                    }
                    Some(or) => !dirty_less(&u, &self.nodes[nxt.0 as usize].key, or, &mut self.ledger),
                };
                if step {
                    w = nxt;
                } else {
                    break;
                }
            }
        }
        w
    }

    /// First element without removing it.
    pub fn find_min(&self) -> Option<(&K, &V)> {
        let first = self.next(HEAD, 1);
        if first == NIL {
            return None;
        }
        let node = &self.nodes[first.0 as usize];
        Some((node.key.as_key().unwrap(), node.bucket.front().unwrap()))
    }

    /// Removes and returns the minimum element (FIFO within equal keys).
    /// Costs zero charged comparisons.
    pub fn extract_min(&mut self) -> Option<(K, V)> {
        let first = self.next(HEAD, 1);
        if first == NIL {
            return None;
        }
        let payload = self.nodes[first.0 as usize].bucket.pop_front().unwrap();
        let key = self.nodes[first.0 as usize].key.as_key().unwrap().clone();
        self.len -= 1;
        if self.nodes[first.0 as usize].bucket.is_empty() {
            self.unlink(first);
        }
        Some((key, payload))
    }

    /// Removes the first-inserted element stored under `key`.
    pub fn delete(&mut self, key: &K) -> Option<V> {
        let node = self.node_of(key)?;
        let payload = self.nodes[node.0 as usize].bucket.pop_front().unwrap();
        self.len -= 1;
        if self.nodes[node.0 as usize].bucket.is_empty() {
            self.unlink(node);
        }
        Some(payload)
    }

    /// Removes one element equal to `elem` from `key`'s bucket.
    pub fn remove_element(&mut self, key: &K, elem: &V) -> Option<V>
    where
        V: PartialEq,
    {
        let node = self.node_of(key)?;
        let pos = self.nodes[node.0 as usize].bucket.iter().position(|v| v == elem)?;
        let payload = self.nodes[node.0 as usize].bucket.remove(pos).unwrap();
        self.len -= 1;
        if self.nodes[node.0 as usize].bucket.is_empty() {
            self.unlink(node);
        }
        Some(payload)
    }

    /// Deletes one element of `old` and reinserts it with key `new`,
    /// starting the exponential search from `old`'s former predecessor.
    pub fn decrease_key(&mut self, old: &K, new: K) -> Result<(), QueueError> {
        if !(new < *old) {
            return Err(QueueError::InvalidDecrease);
        }
        let node = self.node_of(old).ok_or(QueueError::KeyNotFound)?;
        let start = self.prev(node, 1);
        let payload = self.delete(old).unwrap();
        // the former predecessor is never unlinked by the deletion above
        self.exp_search_insert(start, new, payload);
        Ok(())
    }

    /// Level-1 traversal: `(key, payload)` in sorted order, FIFO inside each
    /// bucket.
    pub fn iter_sorted(&self) -> impl Iterator<Item = (&K, &V)> {
        let mut out = Vec::with_capacity(self.len);
        let mut cur = self.next(HEAD, 1);
        while cur != NIL {
            let node = &self.nodes[cur.0 as usize];
            let key = node.key.as_key().unwrap();
            out.extend(node.bucket.iter().map(move |v| (key, v)));
            cur = self.next(cur, 1);
        }
        out.into_iter()
    }

    /// Sorted distinct keys, cloned.
    pub fn keys_sorted(&self) -> Vec<K> {
        let mut out = Vec::with_capacity(self.index.len());
        let mut cur = self.next(HEAD, 1);
        while cur != NIL {
            out.push(self.nodes[cur.0 as usize].key.as_key().unwrap().clone());
            cur = self.next(cur, 1);
        }
        out
    }

    fn unlink(&mut self, node: NodeRef) {
        debug_assert!(node != HEAD && node != NIL);
        for level in 1..=self.height(node) {
            let (prev, next) = self.nodes[node.0 as usize].links[level - 1];
            self.nodes[prev.0 as usize].links[level - 1].1 = next;
            self.nodes[next.0 as usize].links[level - 1].0 = prev;
        }
        let key = self.nodes[node.0 as usize].key.as_key().unwrap().clone();
        self.index.remove(&key);
        self.nodes[node.0 as usize].bucket = VecDeque::new();
        self.nodes[node.0 as usize].links = Vec::new();
        self.nodes[node.0 as usize].key = SentinelKey::PosInf;
        self.free.push(node.0);
    }

    /// Structural self-check used by tests: per-level link symmetry, sorted
    /// level-1 order, the level subset property, and index consistency.
    #[doc(hidden)]
    pub fn check_invariants(&self) {
        let max_h = self.max_height();
        assert_eq!(self.nodes[NIL.0 as usize].links.len(), max_h);
        let mut level1_keys = Vec::new();
        for level in 1..=max_h {
            let mut cur = HEAD;
            let mut walked = Vec::new();
            loop {
                let nxt = self.next(cur, level);
                assert_eq!(self.prev(nxt, level), cur, "asymmetric link at level {level}");
                if nxt == NIL {
                    break;
                }
                assert!(self.height(nxt) >= level);
                if let (Some(a), Some(b)) = (
                    self.nodes[cur.0 as usize].key.as_key(),
                    self.nodes[nxt.0 as usize].key.as_key(),
                ) {
                    assert!(a < b, "keys out of order at level {level}");
                }
                walked.push(nxt);
                cur = nxt;
            }
            if level == 1 {
                level1_keys = walked;
            } else {
                // subset property: every node at this level is at level 1
                for n in &walked {
                    assert!(level1_keys.contains(n));
                }
            }
        }
        assert_eq!(level1_keys.len(), self.index.len());
        for n in &level1_keys {
            let key = self.nodes[n.0 as usize].key.as_key().unwrap();
            assert_eq!(self.index.get(key), Some(n));
            assert!(!self.nodes[n.0 as usize].bucket.is_empty());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn drain<K: Ord + Eq + Hash + Clone, V>(list: &mut SkipList<K, V>) -> Vec<K> {
        let mut out = Vec::new();
        while let Some((k, _)) = list.extract_min() {
            out.push(k);
        }
        out
    }

    #[test]
    fn height_distribution_half() {
        let mut rng = Rng::new(1);
        let n = 100_000;
        let mut counts = [0u32; 8];
        let mut sum = 0u64;
        for _ in 0..n {
            let h = sample_height(0.5, &mut rng);
            sum += h as u64;
            if h <= 8 {
                counts[h - 1] += 1;
            }
        }
        let p1 = counts[0] as f64 / n as f64;
        let p2 = counts[1] as f64 / n as f64;
        assert!((p1 - 0.5).abs() < 0.01, "Pr[h=1] = {p1}");
        assert!((p2 - 0.25).abs() < 0.01, "Pr[h=2] = {p2}");
        let mean = sum as f64 / n as f64;
        assert!((mean - 2.0).abs() < 0.05, "mean height {mean}");
    }

    #[test]
    fn insert_after_basics() {
        let mut list: SkipList<i64, ()> = SkipList::new(7);
        let head = list.head();
        list.insert_after(head, 5, ());
        assert_eq!(list.keys_sorted(), vec![5]);

        // duplicate: bucket grows, distinct keys unchanged
        let node = list.node_of(&5).unwrap();
        list.insert_after(node, 5, ());
        assert_eq!(list.len(), 2);
        assert_eq!(list.distinct_keys(), 1);

        list.check_invariants();
    }

    #[test]
    fn insert_after_known_predecessor() {
        let mut list: SkipList<i64, ()> = SkipList::new(3);
        let head = list.head();
        let mut last = list.insert_after(head, 1, ());
        last = list.insert_after(last, 2, ());
        list.insert_after(last, 4, ());
        let two = list.node_of(&2).unwrap();
        list.insert_after(two, 3, ());
        assert_eq!(list.keys_sorted(), vec![1, 2, 3, 4]);
        list.check_invariants();
        // position was known: nothing charged
        assert_eq!(list.ledger().clean(), 0);
    }

    #[test]
    fn exp_search_forward_and_reversed() {
        let mut list: SkipList<i64, ()> = SkipList::new(11);
        let head = list.head();
        let mut w = head;
        for k in 1..=100 {
            w = list.insert_after(w, k * 10, ());
        }
        let mid = list.node_of(&500).unwrap();
        list.exp_search_insert(mid, 505, ());
        let last = list.node_of(&1000).unwrap();
        list.exp_search_insert(last, 5, ()); // reversed direction, lands after head
        assert_eq!(list.keys_sorted().first(), Some(&5));
        let keys = list.keys_sorted();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        list.check_invariants();
    }

    #[test]
    fn exp_search_matches_linear_scan_oracle() {
        let mut rng = Rng::new(13);
        for trial in 0..60 {
            let mut list: SkipList<u64, usize> = SkipList::new(trial);
            let mut reference: Vec<u64> = Vec::new();
            let head = list.head();
            for i in 0..300usize {
                let u = rng.below(120);
                let source = if reference.is_empty() || rng.below(4) == 0 {
                    head
                } else {
                    // arbitrary live node as the search source
                    let pick = reference[rng.below(reference.len() as u64) as usize];
                    list.node_of(&pick).unwrap()
                };
                list.exp_search_insert(source, u, i);
                reference.push(u);
                reference.sort_unstable();
            }
            assert_eq!(
                list.iter_sorted().map(|(k, _)| *k).collect::<Vec<_>>(),
                reference
            );
            list.check_invariants();
        }
    }

    #[test]
    fn search_top_down_examples() {
        let mut list: SkipList<i64, ()> = SkipList::new(5);
        assert_eq!(list.search_top_down(&10, None), list.head());

        let head = list.head();
        let mut w = head;
        for k in [1, 3, 5] {
            w = list.insert_after(w, k, ());
        }
        let pred = list.search_top_down(&4, None);
        assert_eq!(list.key(pred), Some(&3));
    }

    #[test]
    fn dirty_search_with_perfect_oracle_matches_clean() {
        let mut rng = Rng::new(23);
        for _ in 0..50 {
            let mut list: SkipList<u64, ()> = SkipList::new(rng.below(1 << 40));
            let head = list.head();
            let mut keys: Vec<u64> = (0..200u64).map(|_| rng.below(10_000)).collect();
            keys.sort_unstable();
            keys.dedup();
            let mut w = head;
            for &k in &keys {
                w = list.insert_after(w, k, ());
            }
            // perfect oracle: predicted ranks follow the key order
            let oracle = DirtyOracle::from_pairs(keys.iter().map(|&k| (k, k + 1)));
            for &probe in keys.iter().step_by(7) {
                let clean = list.search_top_down(&probe, None);
                let dirty = list.search_top_down(&probe, Some(&oracle));
                assert_eq!(list.key(clean), list.key(dirty));
            }
        }
    }

    #[test]
    fn extract_min_and_duplicates_fifo() {
        let mut list: SkipList<i64, u32> = SkipList::new(2);
        let head = list.head();
        list.exp_search_insert(head, 3, 0);
        list.exp_search_insert(head, 1, 1);
        list.exp_search_insert(head, 2, 2);
        assert_eq!(drain(&mut list), vec![1, 2, 3]);

        // duplicates leave FIFO within the bucket
        let head = list.head();
        list.exp_search_insert(head, 5, 10);
        list.exp_search_insert(head, 5, 11);
        assert_eq!(list.extract_min(), Some((5, 10)));
        assert_eq!(list.extract_min(), Some((5, 11)));
        assert_eq!(list.extract_min(), None);
    }

    #[test]
    fn extract_min_charges_nothing() {
        let mut list: SkipList<i64, ()> = SkipList::new(21);
        let head = list.head();
        let mut w = head;
        for k in 0..100 {
            w = list.insert_after(w, k, ());
        }
        let before = *list.ledger();
        while list.extract_min().is_some() {}
        assert_eq!(list.ledger().clean(), before.clean());
        assert_eq!(list.ledger().dirty(), before.dirty());
    }

    #[test]
    fn decrease_key_moves_element() {
        let mut list: SkipList<i64, ()> = SkipList::new(6);
        let head = list.head();
        let mut w = head;
        for k in [1, 5, 9] {
            w = list.insert_after(w, k, ());
        }
        list.decrease_key(&9, 0).unwrap();
        assert_eq!(list.keys_sorted(), vec![0, 1, 5]);
        assert_eq!(list.decrease_key(&42, 1), Err(QueueError::KeyNotFound));
        assert_eq!(list.decrease_key(&5, 7), Err(QueueError::InvalidDecrease));
        list.check_invariants();
    }

    #[test]
    fn pointer_start_comparison_cost_grows_slowly() {
        // source at rank distance d from the target: mean comparisons over
        // 30 seeds should grow like log d, not linearly
        let seeds = 30u64;
        let n = 8192u64;
        let mut mean = std::collections::BTreeMap::new();
        for &d in &[1u64, 16, 256, 4096] {
            let mut total = 0u64;
            for seed in 0..seeds {
                let mut list: SkipList<u64, ()> = SkipList::new(seed * 77 + 1);
                let mut w = list.head();
                for k in 0..n {
                    w = list.insert_after(w, 2 * k, ());
                }
                // new key n+1 (odd, unique) has true predecessor key n;
                // start the search d ranks to the left of it
                let source_key = 2 * (n / 2 - d);
                let source = list.node_of(&source_key).unwrap();
                let before = list.ledger().clean();
                list.exp_search_insert(source, n + 1, ());
                total += list.ledger().clean() - before;
            }
            mean.insert(d, total as f64 / seeds as f64);
        }
        let m1 = mean[&1];
        let m4096 = mean[&4096];
        assert!(m4096 <= m1 + 4.0 * (4096f64).log2(), "{mean:?}");
        assert!(mean[&16] <= mean[&4096] + 2.0, "{mean:?}");
    }

    #[test]
    fn sentinel_height_tracks_maximum() {
        let mut list: SkipList<u64, ()> = SkipList::new(14);
        let head = list.head();
        let mut w = head;
        let mut tallest = 1;
        for k in 0..2000 {
            w = list.insert_after(w, k, ());
            tallest = tallest.max(list.height(w));
            assert_eq!(list.max_height(), tallest);
        }
    }
}
