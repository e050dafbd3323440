//! Textbook Fibonacci heap (root list, degree consolidation, cascading
//! cuts) with every key comparison charged to the ledger.

use std::collections::HashMap;
use std::hash::Hash;

use crate::instrument::ComparisonLedger;
use crate::QueueError;

const NONE: u32 = u32::MAX;

#[derive(Debug)]
struct FibNode<K, E> {
    key: K,
    elem: E,
    parent: u32,
    child: u32,
    left: u32,
    right: u32,
    degree: u32,
    mark: bool,
}

#[derive(Debug)]
pub struct FibonacciHeapBaseline<K, E> {
    nodes: Vec<FibNode<K, E>>,
    free: Vec<u32>,
    handle: HashMap<E, u32>,
    min: u32,
    len: usize,
    ledger: ComparisonLedger,
}

impl<K: Ord + Clone, E: Eq + Hash + Clone> FibonacciHeapBaseline<K, E> {
    pub fn new() -> Self {
        FibonacciHeapBaseline {
            nodes: Vec::new(),
            free: Vec::new(),
            handle: HashMap::new(),
            min: NONE,
            len: 0,
            ledger: ComparisonLedger::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ledger(&self) -> &ComparisonLedger {
        &self.ledger
    }

    pub fn find_min(&self) -> Option<(&K, &E)> {
        if self.min == NONE {
            return None;
        }
        let node = &self.nodes[self.min as usize];
        Some((&node.key, &node.elem))
    }

    fn less(&mut self, a: u32, b: u32) -> bool {
        self.ledger.record_clean();
        self.nodes[a as usize].key < self.nodes[b as usize].key
    }

    fn alloc(&mut self, key: K, elem: E) -> u32 {
        let node = FibNode {
            key,
            elem,
            parent: NONE,
            child: NONE,
            left: NONE,
            right: NONE,
            degree: 0,
            mark: false,
        };
        match self.free.pop() {
            Some(slot) => {
                self.nodes[slot as usize] = node;
                slot
            }
            None => {
                self.nodes.push(node);
                self.nodes.len() as u32 - 1
            }
        }
    }

    /// Splices `n` into the circular list that contains `at` (or makes it a
    /// singleton ring when `at` is NONE).
    fn ring_insert(&mut self, at: u32, n: u32) {
        if at == NONE {
            self.nodes[n as usize].left = n;
            self.nodes[n as usize].right = n;
        } else {
            let right = self.nodes[at as usize].right;
            self.nodes[n as usize].left = at;
            self.nodes[n as usize].right = right;
            self.nodes[at as usize].right = n;
            self.nodes[right as usize].left = n;
        }
    }

    fn ring_remove(&mut self, n: u32) {
        let (l, r) = (self.nodes[n as usize].left, self.nodes[n as usize].right);
        self.nodes[l as usize].right = r;
        self.nodes[r as usize].left = l;
        self.nodes[n as usize].left = n;
        self.nodes[n as usize].right = n;
    }

    pub fn insert(&mut self, key: K, elem: E) {
        let n = self.alloc(key, elem.clone());
        self.handle.insert(elem, n);
        self.ring_insert(self.min, n);
        if self.min == NONE || self.less(n, self.min) {
            self.min = n;
        }
        self.len += 1;
    }

    pub fn extract_min(&mut self) -> Option<(K, E)> {
        if self.min == NONE {
            return None;
        }
        let z = self.min;
        // promote children to the root list
        let mut child = self.nodes[z as usize].child;
        if child != NONE {
            let mut kids = Vec::with_capacity(self.nodes[z as usize].degree as usize);
            let start = child;
            loop {
                kids.push(child);
                child = self.nodes[child as usize].right;
                if child == start {
                    break;
                }
            }
            for kid in kids {
                self.ring_remove(kid);
                self.nodes[kid as usize].parent = NONE;
                self.nodes[kid as usize].mark = false;
                self.ring_insert(z, kid);
            }
            self.nodes[z as usize].child = NONE;
        }

        let right = self.nodes[z as usize].right;
        self.ring_remove(z);
        self.len -= 1;
        if z == right {
            self.min = NONE;
        } else {
            self.min = right;
            self.consolidate();
        }

        let node = &mut self.nodes[z as usize];
        let key = node.key.clone();
        let elem = node.elem.clone();
        self.handle.remove(&elem);
        self.free.push(z);
        Some((key, elem))
    }

    fn consolidate(&mut self) {
        let mut roots = Vec::new();
        let start = self.min;
        let mut cur = start;
        loop {
            roots.push(cur);
            cur = self.nodes[cur as usize].right;
            if cur == start {
                break;
            }
        }

        let cap = 2 + (self.len.max(1) as f64).log2() as usize * 2;
        let mut by_degree: Vec<u32> = vec![NONE; cap.max(8)];
        for mut x in roots {
            let mut d = self.nodes[x as usize].degree as usize;
            while d >= by_degree.len() {
                by_degree.push(NONE);
            }
            while by_degree[d] != NONE {
                let mut y = by_degree[d];
                // the smaller key becomes the parent
                if self.less(y, x) {
                    std::mem::swap(&mut x, &mut y);
                }
                self.link(y, x);
                by_degree[d] = NONE;
                d += 1;
                while d >= by_degree.len() {
                    by_degree.push(NONE);
                }
            }
            by_degree[d] = x;
        }

        // rebuild the root ring and locate the minimum
        self.min = NONE;
        for &r in by_degree.iter().filter(|&&r| r != NONE) {
            self.nodes[r as usize].left = r;
            self.nodes[r as usize].right = r;
            if self.min == NONE {
                self.min = r;
            } else {
                self.ring_insert(self.min, r);
                if self.less(r, self.min) {
                    self.min = r;
                }
            }
        }
    }

    /// Makes `y` a child of `x`.
    fn link(&mut self, y: u32, x: u32) {
        self.ring_remove(y);
        self.nodes[y as usize].parent = x;
        self.nodes[y as usize].mark = false;
        let child = self.nodes[x as usize].child;
        self.ring_insert(child, y);
        if child == NONE {
            self.nodes[x as usize].child = y;
        }
        self.nodes[x as usize].degree += 1;
    }

    pub fn decrease_key(&mut self, elem: &E, new_key: K) -> Result<(), QueueError> {
        let &n = self.handle.get(elem).ok_or(QueueError::KeyNotFound)?;
        if !(new_key < self.nodes[n as usize].key) {
            return Err(QueueError::InvalidDecrease);
        }
        self.nodes[n as usize].key = new_key;
        let parent = self.nodes[n as usize].parent;
        if parent != NONE && self.less(n, parent) {
            self.cut(n, parent);
            self.cascading_cut(parent);
        }
        if self.less(n, self.min) {
            self.min = n;
        }
        Ok(())
    }

    fn cut(&mut self, n: u32, parent: u32) {
        if self.nodes[parent as usize].child == n {
            let right = self.nodes[n as usize].right;
            self.nodes[parent as usize].child = if right == n { NONE } else { right };
        }
        self.ring_remove(n);
        self.nodes[parent as usize].degree -= 1;
        self.nodes[n as usize].parent = NONE;
        self.nodes[n as usize].mark = false;
        self.ring_insert(self.min, n);
    }

    fn cascading_cut(&mut self, n: u32) {
        let parent = self.nodes[n as usize].parent;
        if parent == NONE {
            return;
        }
        if !self.nodes[n as usize].mark {
            self.nodes[n as usize].mark = true;
        } else {
            self.cut(n, parent);
            self.cascading_cut(parent);
        }
    }
}

impl<K: Ord + Clone, E: Eq + Hash + Clone> Default for FibonacciHeapBaseline<K, E> {
    fn default() -> Self {
        Self::new()
    }
}
