//! Textbook array binary heap with a position index for decrease-key; every
//! key comparison is charged to the ledger.

use std::collections::HashMap;
use std::hash::Hash;

use crate::instrument::ComparisonLedger;
use crate::QueueError;

#[derive(Debug)]
pub struct BinaryHeapBaseline<K, E> {
    entries: Vec<(K, E)>,
    pos: HashMap<E, usize>,
    ledger: ComparisonLedger,
}

impl<K: Ord + Clone, E: Eq + Hash + Clone> BinaryHeapBaseline<K, E> {
    pub fn new() -> Self {
        BinaryHeapBaseline {
            entries: Vec::new(),
            pos: HashMap::new(),
            ledger: ComparisonLedger::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn ledger(&self) -> &ComparisonLedger {
        &self.ledger
    }

    pub fn find_min(&self) -> Option<(&K, &E)> {
        self.entries.first().map(|(k, e)| (k, e))
    }

    pub fn insert(&mut self, key: K, elem: E) {
        let at = self.entries.len();
        self.pos.insert(elem.clone(), at);
        self.entries.push((key, elem));
        self.sift_up(at);
    }

    pub fn extract_min(&mut self) -> Option<(K, E)> {
        if self.entries.is_empty() {
            return None;
        }
        let last = self.entries.len() - 1;
        self.entries.swap(0, last);
        let (key, elem) = self.entries.pop().unwrap();
        self.pos.remove(&elem);
        if !self.entries.is_empty() {
            self.pos.insert(self.entries[0].1.clone(), 0);
            self.sift_down(0);
        }
        Some((key, elem))
    }

    /// Lowers `elem`'s key to `new_key` and restores the heap property.
    pub fn decrease_key(&mut self, elem: &E, new_key: K) -> Result<(), QueueError> {
        let &at = self.pos.get(elem).ok_or(QueueError::KeyNotFound)?;
        if !(new_key < self.entries[at].0) {
            return Err(QueueError::InvalidDecrease);
        }
        self.entries[at].0 = new_key;
        self.sift_up(at);
        Ok(())
    }

    fn less(&mut self, a: usize, b: usize) -> bool {
        self.ledger.record_clean();
        self.entries[a].0 < self.entries[b].0
    }

    fn sift_up(&mut self, mut at: usize) {
        while at > 0 {
            let parent = (at - 1) / 2;
            if self.less(at, parent) {
                self.swap(at, parent);
                at = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut at: usize) {
        loop {
            let (l, r) = (2 * at + 1, 2 * at + 2);
            if l >= self.entries.len() {
                break;
            }
            let child = if r < self.entries.len() && self.less(r, l) { r } else { l };
            if self.less(child, at) {
                self.swap(child, at);
                at = child;
            } else {
                break;
            }
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
        self.pos.insert(self.entries[a].1.clone(), a);
        self.pos.insert(self.entries[b].1.clone(), b);
    }

    #[doc(hidden)]
    pub fn check_heap(&self) {
        for at in 1..self.entries.len() {
            assert!(self.entries[(at - 1) / 2].0 <= self.entries[at].0);
        }
        for (at, (_, e)) in self.entries.iter().enumerate() {
            assert_eq!(self.pos.get(e), Some(&at));
        }
    }
}

impl<K: Ord + Clone, E: Eq + Hash + Clone> Default for BinaryHeapBaseline<K, E> {
    fn default() -> Self {
        Self::new()
    }
}
