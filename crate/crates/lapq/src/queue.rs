//! The learning-augmented priority queue: a skip list backbone with three
//! prediction-driven insertion paths and, in rank mode, an auxiliary
//! dynamic vEB tree over predicted ranks.
//!
//! Whatever the prediction quality, the skip list's level-1 order is the
//! true sorted order, so `extract_min` and draining are always correct;
//! predictions only change how many comparisons insertion costs.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::instrument::DirtyOracle;
use crate::skiplist::SkipList;
use crate::veb::DynamicVeb;
use crate::QueueError;

/// Which prediction model drives insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Pointer,
    Dirty,
    Rank,
}

/// Counter snapshot exported to the experiment drivers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueueStats {
    pub clean: u64,
    pub dirty: u64,
    pub inserts: u64,
    pub extracts: u64,
    /// Pointer predictions that named a dead key and fell back to the head.
    pub fallbacks: u64,
}

/// Learning-augmented priority queue over keys `K` with element payloads `V`.
#[derive(Debug)]
pub struct Lapq<K, V = ()> {
    list: SkipList<K, V>,
    mode: Mode,
    aux: Option<DynamicVeb<K>>,
    rank_of_key: HashMap<K, VecDeque<u64>>,
    inserts: u64,
    extracts: u64,
    fallbacks: u64,
}

impl<K: Ord + Eq + Hash + Clone, V: PartialEq> Lapq<K, V> {
    pub fn new(mode: Mode, seed: u64) -> Self {
        Lapq {
            list: SkipList::new(seed),
            mode,
            aux: matches!(mode, Mode::Rank).then(DynamicVeb::new),
            rank_of_key: HashMap::new(),
            inserts: 0,
            extracts: 0,
            fallbacks: 0,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn stats(&self) -> QueueStats {
        QueueStats {
            clean: self.list.ledger().clean(),
            dirty: self.list.ledger().dirty(),
            inserts: self.inserts,
            extracts: self.extracts,
            fallbacks: self.fallbacks,
        }
    }

    /// Maximum skip-list level in use.
    pub fn height(&self) -> usize {
        self.list.max_height()
    }

    /// Sorted traversal of the live elements.
    pub fn iter_sorted(&self) -> impl Iterator<Item = (&K, &V)> {
        self.list.iter_sorted()
    }

    /// Pointer-model insertion: exponential search from the predicted
    /// predecessor's node. A dead prediction falls back to the head sentinel
    /// and is counted in [`QueueStats::fallbacks`]; `None` starts at the
    /// head.
    pub fn insert_pointer(&mut self, key: K, predicted_pred: Option<&K>, payload: V) {
        debug_assert!(self.mode == Mode::Pointer);
        let source = match predicted_pred {
            None => self.list.head(),
            Some(p) => match self.list.node_of(p) {
                Some(node) => node,
                None => {
                    self.fallbacks += 1;
                    self.list.head()
                }
            },
        };
        self.list.exp_search_insert(source, key, payload);
        self.inserts += 1;
    }

    /// Dirty-model insertion: top-down dirty search from the head, then a
    /// clean exponential search from the dirty predecessor.
    pub fn insert_dirty(&mut self, key: K, oracle: &DirtyOracle<K>, payload: V) {
        debug_assert!(self.mode == Mode::Dirty);
        let hint = self.list.search_top_down(&key, Some(oracle));
        self.list.exp_search_insert(hint, key, payload);
        self.inserts += 1;
    }

    /// Rank-model insertion: the key enters the auxiliary vEB tree under its
    /// predicted rank first; the vEB predecessor (the entry itself excluded)
    /// seeds the exponential search.
    pub fn insert_rank(&mut self, key: K, predicted_rank: u64, payload: V) {
        debug_assert!(self.mode == Mode::Rank);
        assert!(predicted_rank >= 1, "predicted ranks are positive");
        let aux = self.aux.as_mut().expect("rank-mode queue has an aux tree");
        aux.insert(key.clone(), predicted_rank);
        let hint_key = aux
            .predecessor_excluding(predicted_rank, &key)
            .map(|(_, k)| k.clone());
        let source = match hint_key {
            None => self.list.head(),
            Some(k) => self.list.node_of(&k).expect("aux keys are live"),
        };
        self.list.exp_search_insert(source, key.clone(), payload);
        self.rank_of_key.entry(key).or_default().push_back(predicted_rank);
        self.inserts += 1;
    }

    pub fn find_min(&self) -> Option<(&K, &V)> {
        self.list.find_min()
    }

    /// Removes the minimum element (FIFO within equal keys); in rank mode
    /// its predicted-rank entry leaves the auxiliary tree as well.
    pub fn extract_min(&mut self) -> Option<(K, V)> {
        let (key, payload) = self.list.extract_min()?;
        self.forget_rank(&key);
        self.extracts += 1;
        Some((key, payload))
    }

    /// Removes the first-inserted element stored under `key`.
    pub fn delete(&mut self, key: &K) -> Option<V> {
        let payload = self.list.delete(key)?;
        self.forget_rank(key);
        Some(payload)
    }

    /// Removes one element equal to `elem` from `key`'s bucket.
    pub fn remove_element(&mut self, key: &K, elem: &V) -> Option<V> {
        let payload = self.list.remove_element(key, elem)?;
        self.forget_rank(key);
        Some(payload)
    }

    /// Deletes one element of `old` (the bucket front, or `elem` when given)
    /// and reinserts it under `new`.
    ///
    /// Rank mode inserts through the auxiliary tree using `new_prediction`,
    /// or the element's previous predicted rank when none is given. The
    /// other modes restart the exponential search from `old`'s former
    /// predecessor.
    pub fn decrease_key(
        &mut self,
        old: &K,
        elem: Option<&V>,
        new: K,
        new_prediction: Option<u64>,
    ) -> Result<(), QueueError> {
        if !(new < *old) {
            return Err(QueueError::InvalidDecrease);
        }
        let node = self.list.node_of(old).ok_or(QueueError::KeyNotFound)?;
        match self.mode {
            Mode::Rank => {
                let payload = self
                    .take_element(old, elem)
                    .ok_or(QueueError::KeyNotFound)?;
                let old_rank = self.pop_rank(old);
                let rank = new_prediction.or(old_rank).unwrap_or(1);
                self.insert_rank(new, rank, payload);
                self.inserts -= 1; // a decrease is not a fresh insert
                Ok(())
            }
            Mode::Pointer | Mode::Dirty => {
                let start = self.list.prev_node(node);
                let payload = self
                    .take_element(old, elem)
                    .ok_or(QueueError::KeyNotFound)?;
                self.list.exp_search_insert(start, new, payload);
                Ok(())
            }
        }
    }

    /// Dirty-mode decrease-key: the reinsertion runs the full dirty
    /// insertion path, so the oracle must already know `new`.
    pub fn decrease_key_dirty(
        &mut self,
        old: &K,
        elem: Option<&V>,
        new: K,
        oracle: &DirtyOracle<K>,
    ) -> Result<(), QueueError> {
        debug_assert!(self.mode == Mode::Dirty);
        if !(new < *old) {
            return Err(QueueError::InvalidDecrease);
        }
        let payload = self
            .take_element(old, elem)
            .ok_or(QueueError::KeyNotFound)?;
        let hint = self.list.search_top_down(&new, Some(oracle));
        self.list.exp_search_insert(hint, new, payload);
        Ok(())
    }

    fn take_element(&mut self, key: &K, elem: Option<&V>) -> Option<V> {
        let payload = match elem {
            None => self.list.delete(key)?,
            Some(e) => self.list.remove_element(key, e)?,
        };
        Some(payload)
    }

    fn pop_rank(&mut self, key: &K) -> Option<u64> {
        let queue = self.rank_of_key.get_mut(key)?;
        let rank = queue.pop_front();
        if queue.is_empty() {
            self.rank_of_key.remove(key);
        }
        if let (Some(rank), Some(aux)) = (rank, self.aux.as_mut()) {
            let removed = aux.delete(key, rank);
            debug_assert!(removed, "aux entry missing for a live key");
        }
        rank
    }

    fn forget_rank(&mut self, key: &K) {
        if self.mode == Mode::Rank {
            self.pop_rank(key);
        }
    }

    /// Live elements in the auxiliary tree (rank mode).
    pub fn aux_len(&self) -> usize {
        self.aux.as_ref().map_or(0, DynamicVeb::len)
    }
}
