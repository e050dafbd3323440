//! van Emde Boas tree over integer keys `1..=m` with `O(log log m)`
//! operations, plus a capacity-doubling variant for unknown maximum key.
//!
//! The universe is rounded up to a power of two and split on bit halves at
//! each recursion level; universes of size two bottom out as explicit bit
//! pairs. Duplicate keys are allowed: each present key owns a bucket of
//! element payloads, and predecessor/successor queries return the
//! most-recently-inserted bucket member.

use std::collections::HashMap;

/// Recursive key-set structure over `0..2^bits`.
#[derive(Debug)]
enum VebSet {
    /// Universe of size 2: bit `i` of the mask marks key `i` present.
    Leaf(u8),
    Node(Box<VebNode>),
}

#[derive(Debug)]
struct VebNode {
    lo_bits: u32,
    min: Option<u64>,
    max: Option<u64>,
    summary: VebSet,
    clusters: Vec<Option<VebSet>>,
}

impl VebSet {
    fn empty(bits: u32) -> Self {
        debug_assert!(bits >= 1);
        if bits == 1 {
            VebSet::Leaf(0)
        } else {
            let lo_bits = bits / 2;
            let hi_bits = bits - lo_bits;
            VebSet::Node(Box::new(VebNode {
                lo_bits,
                min: None,
                max: None,
                summary: VebSet::empty(hi_bits),
                clusters: (0..(1u64 << hi_bits)).map(|_| None).collect(),
            }))
        }
    }

    fn min(&self) -> Option<u64> {
        match self {
            VebSet::Leaf(mask) => match mask {
                0 => None,
                _ if mask & 1 != 0 => Some(0),
                _ => Some(1),
            },
            VebSet::Node(n) => n.min,
        }
    }

    fn max(&self) -> Option<u64> {
        match self {
            VebSet::Leaf(mask) => match mask {
                0 => None,
                _ if mask & 2 != 0 => Some(1),
                _ => Some(0),
            },
            VebSet::Node(n) => n.max,
        }
    }

    /// Inserts `x`, which must not already be present.
    fn insert(&mut self, x: u64) {
        match self {
            VebSet::Leaf(mask) => {
                debug_assert!(x < 2 && *mask & (1 << x) == 0);
                *mask |= 1 << x;
            }
            VebSet::Node(node) => node.insert(x),
        }
    }

    /// Removes `x`, which must be present.
    fn remove(&mut self, x: u64) {
        match self {
            VebSet::Leaf(mask) => {
                debug_assert!(x < 2 && *mask & (1 << x) != 0);
                *mask &= !(1 << x);
            }
            VebSet::Node(node) => node.remove(x),
        }
    }

    /// Largest member strictly below `x`.
    fn pred_strict(&self, x: u64) -> Option<u64> {
        match self {
            VebSet::Leaf(mask) => {
                if x >= 1 && mask & 1 != 0 {
                    Some(0)
                } else {
                    None
                }
            }
            VebSet::Node(node) => node.pred_strict(x),
        }
    }

    /// Smallest member strictly above `x`.
    fn succ_strict(&self, x: u64) -> Option<u64> {
        match self {
            VebSet::Leaf(mask) => {
                if x == 0 && mask & 2 != 0 {
                    Some(1)
                } else {
                    None
                }
            }
            VebSet::Node(node) => node.succ_strict(x),
        }
    }

    fn depth(&self) -> usize {
        match self {
            VebSet::Leaf(_) => 1,
            VebSet::Node(node) => {
                1 + node
                    .clusters
                    .iter()
                    .flatten()
                    .map(VebSet::depth)
                    .max()
                    .unwrap_or(0)
                    .max(node.summary.depth())
            }
        }
    }
}

impl VebNode {
    fn hi(&self, x: u64) -> u64 {
        x >> self.lo_bits
    }

    fn lo(&self, x: u64) -> u64 {
        x & ((1 << self.lo_bits) - 1)
    }

    fn idx(&self, hi: u64, lo: u64) -> u64 {
        (hi << self.lo_bits) | lo
    }

    // min is never stored in a cluster; max is duplicated into one.
    fn insert(&mut self, mut x: u64) {
        let Some(cur_min) = self.min else {
            self.min = Some(x);
            self.max = Some(x);
            return;
        };
        if x < cur_min {
            self.min = Some(x);
            x = cur_min;
        }
        let (hi, lo) = (self.hi(x), self.lo(x));
        let lo_bits = self.lo_bits;
        let cluster = self.clusters[hi as usize].get_or_insert_with(|| VebSet::empty(lo_bits));
        if cluster.min().is_none() {
            self.summary.insert(hi);
        }
        cluster.insert(lo);
        if x > self.max.unwrap() {
            self.max = Some(x);
        }
    }

    fn remove(&mut self, mut x: u64) {
        if self.min == self.max {
            debug_assert_eq!(self.min, Some(x));
            self.min = None;
            self.max = None;
            return;
        }
        if Some(x) == self.min {
            // promote the true second-smallest into the min slot
            let c = self.summary.min().unwrap();
            let new_min = self.idx(c, self.clusters[c as usize].as_ref().unwrap().min().unwrap());
            self.min = Some(new_min);
            x = new_min;
        }
        let (hi, lo) = (self.hi(x), self.lo(x));
        let cluster = self.clusters[hi as usize].as_mut().unwrap();
        cluster.remove(lo);
        if cluster.min().is_none() {
            self.summary.remove(hi);
            if Some(x) == self.max {
                self.max = match self.summary.max() {
                    None => self.min,
                    Some(c) => {
                        Some(self.idx(c, self.clusters[c as usize].as_ref().unwrap().max().unwrap()))
                    }
                };
            }
        } else if Some(x) == self.max {
            let cmax = cluster.max().unwrap();
            self.max = Some(self.idx(hi, cmax));
        }
    }

    fn pred_strict(&self, x: u64) -> Option<u64> {
        let max = self.max?;
        if x > max {
            return Some(max);
        }
        let min = self.min.unwrap();
        if x <= min {
            return None;
        }
        let (hi, lo) = (self.hi(x), self.lo(x));
        if let Some(cluster) = self.clusters[hi as usize].as_ref() {
            if let Some(cmin) = cluster.min() {
                if lo > cmin {
                    return Some(self.idx(hi, cluster.pred_strict(lo).unwrap()));
                }
            }
        }
        match self.summary.pred_strict(hi) {
            Some(c) => Some(self.idx(c, self.clusters[c as usize].as_ref().unwrap().max().unwrap())),
            // min is not stored in any cluster
            None => Some(min),
        }
    }

    fn succ_strict(&self, x: u64) -> Option<u64> {
        let min = self.min?;
        if x < min {
            return Some(min);
        }
        if x >= self.max.unwrap() {
            return None;
        }
        let (hi, lo) = (self.hi(x), self.lo(x));
        if let Some(cluster) = self.clusters[hi as usize].as_ref() {
            if let Some(cmax) = cluster.max() {
                if lo < cmax {
                    return Some(self.idx(hi, cluster.succ_strict(lo).unwrap()));
                }
            }
        }
        let c = self.summary.succ_strict(hi)?;
        Some(self.idx(c, self.clusters[c as usize].as_ref().unwrap().min().unwrap()))
    }
}

/// vEB tree over keys `1..=capacity` with per-key payload buckets.
#[derive(Debug)]
pub struct VebTree<E> {
    capacity: u64,
    set: VebSet,
    buckets: HashMap<u64, Vec<E>>,
    len: usize,
}

impl<E> VebTree<E> {
    /// Universe `1..=m`, rounded up to a power of two (minimum 2).
    pub fn new(m: u64) -> Self {
        assert!(m >= 1);
        let capacity = m.next_power_of_two().max(2);
        let bits = capacity.trailing_zeros();
        VebTree {
            capacity,
            set: VebSet::empty(bits),
            buckets: HashMap::new(),
            len: 0,
        }
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    /// Stored elements, duplicates included.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check_key(&self, k: u64) {
        assert!(
            k >= 1 && k <= self.capacity,
            "key {k} outside universe 1..={}",
            self.capacity
        );
    }

    pub fn insert(&mut self, elem: E, k: u64) {
        self.check_key(k);
        let bucket = self.buckets.entry(k).or_default();
        if bucket.is_empty() {
            self.set.insert(k - 1);
        }
        bucket.push(elem);
        self.len += 1;
    }

    /// Removes one stored `(elem, k)` pair; `false` when absent.
    pub fn delete(&mut self, elem: &E, k: u64) -> bool
    where
        E: PartialEq,
    {
        self.check_key(k);
        let Some(bucket) = self.buckets.get_mut(&k) else {
            return false;
        };
        let Some(pos) = bucket.iter().position(|e| e == elem) else {
            return false;
        };
        bucket.remove(pos);
        if bucket.is_empty() {
            self.buckets.remove(&k);
            self.set.remove(k - 1);
        }
        self.len -= 1;
        true
    }

    /// Elements stored under `k`, insertion order.
    pub fn lookup(&self, k: u64) -> &[E] {
        self.check_key(k);
        self.buckets.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// An element with the largest key `<= k` (most recently inserted one).
    pub fn predecessor(&self, k: u64) -> Option<(u64, &E)> {
        self.check_key(k);
        let key = if self.buckets.contains_key(&k) {
            k
        } else {
            self.set.pred_strict(k - 1)? + 1
        };
        Some((key, self.buckets[&key].last().unwrap()))
    }

    /// An element with the smallest key `>= k` (most recently inserted one).
    pub fn successor(&self, k: u64) -> Option<(u64, &E)> {
        self.check_key(k);
        let key = if self.buckets.contains_key(&k) {
            k
        } else {
            self.set.succ_strict(k - 1)? + 1
        };
        Some((key, self.buckets[&key].last().unwrap()))
    }

    pub fn find_min(&self) -> Option<(u64, &E)> {
        let key = self.set.min()? + 1;
        Some((key, self.buckets[&key].last().unwrap()))
    }

    pub fn find_max(&self) -> Option<(u64, &E)> {
        let key = self.set.max()? + 1;
        Some((key, self.buckets[&key].last().unwrap()))
    }

    /// Removes and returns an element with the smallest key.
    pub fn extract_min(&mut self) -> Option<(u64, E)> {
        let key = self.set.min()? + 1;
        let bucket = self.buckets.get_mut(&key).unwrap();
        let elem = bucket.pop().unwrap();
        if bucket.is_empty() {
            self.buckets.remove(&key);
            self.set.remove(key - 1);
        }
        self.len -= 1;
        Some((key, elem))
    }

    /// Recursion depth of the key-set structure.
    pub fn depth(&self) -> usize {
        self.set.depth()
    }
}

/// Growable vEB tree: the universe doubles whenever a key beyond the current
/// capacity arrives, migrating all stored elements into the fresh tree.
#[derive(Debug)]
pub struct DynamicVeb<E> {
    inner: VebTree<E>,
    resize_work: u64,
}

/// Initial capacity of a [`DynamicVeb`].
pub const INITIAL_CAPACITY: u64 = 64;

impl<E> DynamicVeb<E> {
    pub fn new() -> Self {
        Self::with_initial_capacity(INITIAL_CAPACITY)
    }

    pub fn with_initial_capacity(r0: u64) -> Self {
        DynamicVeb { inner: VebTree::new(r0), resize_work: 0 }
    }

    pub fn capacity(&self) -> u64 {
        self.inner.capacity()
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    /// Total elements migrated across all capacity doublings so far.
    pub fn resize_work(&self) -> u64 {
        self.resize_work
    }

    /// Inserts with any positive key, doubling the universe as needed.
    pub fn insert(&mut self, elem: E, k: u64) {
        assert!(k >= 1, "keys must be positive");
        while k > self.inner.capacity() {
            let mut bigger = VebTree::new(self.inner.capacity() * 2);
            while let Some((key, e)) = self.inner.extract_min() {
                bigger.insert(e, key);
                self.resize_work += 1;
            }
            self.inner = bigger;
        }
        self.inner.insert(elem, k);
    }

    pub fn delete(&mut self, elem: &E, k: u64) -> bool
    where
        E: PartialEq,
    {
        if k > self.inner.capacity() {
            return false;
        }
        self.inner.delete(elem, k)
    }

    pub fn lookup(&self, k: u64) -> &[E] {
        if k > self.inner.capacity() {
            return &[];
        }
        self.inner.lookup(k)
    }

    pub fn predecessor(&self, k: u64) -> Option<(u64, &E)> {
        self.inner.predecessor(k.min(self.inner.capacity()))
    }

    /// Predecessor query that skips exactly one occurrence of `excluded`
    /// stored at key `k` itself: used right after inserting an element whose
    /// own entry must not answer its own predecessor query. Falls back to the
    /// next-most-recent member of `k`'s bucket, then to the next lower key.
    pub fn predecessor_excluding(&self, k: u64, excluded: &E) -> Option<(u64, &E)>
    where
        E: PartialEq,
    {
        let k = k.min(self.inner.capacity());
        if let Some(bucket) = self.inner.buckets.get(&k) {
            let mut skipped = false;
            for e in bucket.iter().rev() {
                if !skipped && e == excluded {
                    skipped = true;
                    continue;
                }
                return Some((k, e));
            }
        }
        if k == 1 {
            return None;
        }
        let key = self.inner.set.pred_strict(k - 1)? + 1;
        Some((key, self.inner.buckets[&key].last().unwrap()))
    }

    pub fn successor(&self, k: u64) -> Option<(u64, &E)> {
        if k > self.inner.capacity() {
            return None;
        }
        self.inner.successor(k)
    }

    pub fn find_min(&self) -> Option<(u64, &E)> {
        self.inner.find_min()
    }

    pub fn extract_min(&mut self) -> Option<(u64, E)> {
        self.inner.extract_min()
    }
}

impl<E> Default for DynamicVeb<E> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::Rng;
    use std::collections::BTreeMap;

    #[test]
    fn small_example() {
        let mut t: VebTree<&str> = VebTree::new(16);
        t.insert("a", 2);
        t.insert("b", 9);
        t.insert("c", 12);
        assert_eq!(t.predecessor(10).map(|(k, _)| k), Some(9));
        assert_eq!(t.predecessor(1), None);
        assert_eq!(t.successor(10).map(|(k, _)| k), Some(12));
        assert_eq!(t.find_min().map(|(k, _)| k), Some(2));
        assert_eq!(t.extract_min().map(|(k, _)| k), Some(2));
        assert_eq!(t.find_min().map(|(k, _)| k), Some(9));
    }

    #[test]
    #[should_panic(expected = "outside universe")]
    fn out_of_universe_key_is_a_hard_error() {
        let mut t: VebTree<u32> = VebTree::new(16);
        t.insert(1, 17);
    }

    #[test]
    fn delete_absent_signals_not_found() {
        let mut t: VebTree<u32> = VebTree::new(8);
        t.insert(5, 3);
        assert!(!t.delete(&9, 3));
        assert!(!t.delete(&5, 4));
        assert!(t.delete(&5, 3));
        assert!(t.is_empty());
    }

    #[test]
    fn duplicate_keys_bucket_and_predecessor_is_most_recent() {
        let mut t: VebTree<u32> = VebTree::new(32);
        t.insert(1, 7);
        t.insert(2, 7);
        assert_eq!(t.lookup(7), &[1, 2]);
        assert_eq!(t.predecessor(7), Some((7, &2)));
        assert!(t.delete(&2, 7));
        assert_eq!(t.predecessor(7), Some((7, &1)));
    }

    #[test]
    fn depth_is_doubly_logarithmic() {
        for m in [2u64, 4, 16, 64, 256, 1 << 10, 1 << 16, 1 << 20] {
            let t: VebTree<()> = VebTree::new(m);
            let mut full = t;
            for k in 1..=m.min(1 << 12) {
                full.insert((), k);
            }
            let bound = (m as f64).log2().log2().ceil() as usize + 2;
            assert!(full.depth() <= bound, "m={m}: depth {} > {bound}", full.depth());
        }
    }

    #[test]
    fn oracle_equivalence_static() {
        let mut rng = Rng::new(77);
        let m = 1 << 12;
        let mut t: VebTree<u64> = VebTree::new(m);
        let mut oracle: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        let mut live = 0usize;
        for step in 0..30_000u64 {
            let op = rng.below(6);
            match op {
                0 | 1 => {
                    let k = 1 + rng.below(m);
                    t.insert(step, k);
                    oracle.entry(k).or_default().push(step);
                    live += 1;
                }
                2 => {
                    // delete a known pair when one exists
                    if let Some((&k, bucket)) = oracle.iter_mut().next() {
                        let e = *bucket.last().unwrap();
                        assert!(t.delete(&e, k));
                        bucket.pop();
                        if bucket.is_empty() {
                            oracle.remove(&k);
                        }
                        live -= 1;
                    }
                }
                3 => {
                    let k = 1 + rng.below(m);
                    let expect = oracle.range(..=k).next_back().map(|(k, _)| *k);
                    assert_eq!(t.predecessor(k).map(|(k, _)| k), expect);
                }
                4 => {
                    let k = 1 + rng.below(m);
                    let expect = oracle.range(k..).next().map(|(k, _)| *k);
                    assert_eq!(t.successor(k).map(|(k, _)| k), expect);
                }
                _ => {
                    let expect = oracle.keys().next().copied();
                    assert_eq!(t.find_min().map(|(k, _)| k), expect);
                }
            }
            assert_eq!(t.len(), live);
        }
    }

    #[test]
    fn dynamic_doubling_examples() {
        let mut t: DynamicVeb<u32> = DynamicVeb::new();
        assert_eq!(t.capacity(), 64);
        t.insert(0, 100);
        assert_eq!(t.capacity(), 128);
        let mut t: DynamicVeb<u32> = DynamicVeb::new();
        t.insert(0, 1000);
        assert_eq!(t.capacity(), 1024);
    }

    #[test]
    fn dynamic_resize_work_bound() {
        // inserting keys 1..=N in random order: migrated elements <= 2 * max key
        let mut rng = Rng::new(5);
        for &n in &[10u64, 100, 1000, 5000] {
            let mut keys: Vec<u64> = (1..=n).collect();
            rng.shuffle(&mut keys);
            let mut t: DynamicVeb<u64> = DynamicVeb::new();
            for &k in &keys {
                t.insert(k, k);
            }
            assert!(t.resize_work() <= 2 * n, "n={n}: work {}", t.resize_work());
        }
    }

    #[test]
    fn dynamic_predecessor_excluding_self() {
        let mut t: DynamicVeb<u64> = DynamicVeb::new();
        t.insert(10, 5);
        // alone at its key and nothing below
        assert_eq!(t.predecessor_excluding(5, &10), None);
        t.insert(20, 3);
        assert_eq!(t.predecessor_excluding(5, &10), Some((3, &20)));
        // another element at the same key wins over the lower key
        t.insert(30, 5);
        assert_eq!(t.predecessor_excluding(5, &30), Some((5, &10)));
        // excluded only skips one occurrence
        t.insert(30, 5);
        assert_eq!(t.predecessor_excluding(5, &30), Some((5, &30)));
    }
}
