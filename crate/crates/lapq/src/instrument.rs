//! Deterministic randomness, comparison accounting, and dirty-comparison
//! oracles shared by every data structure in the crate.
//!
//! All experiments distinguish *clean* comparisons (true outcomes of `a < b`
//! over the key universe) from *dirty* comparisons (cheap, possibly wrong
//! answers induced by a predicted order). Both kinds are tallied in a
//! [`ComparisonLedger`]. Comparisons against the `-inf`/`+inf` sentinels that
//! structures use internally are structural and never hit the ledger.

use std::collections::HashMap;
use std::hash::Hash;

/// A key extended with `-inf` / `+inf` sentinels.
///
/// The derived ordering places `NegInf < Key(_) < PosInf`, with real keys
/// ordered by `K`'s own order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SentinelKey<K> {
    NegInf,
    Key(K),
    PosInf,
}

impl<K> SentinelKey<K> {
    pub fn is_sentinel(&self) -> bool {
        !matches!(self, SentinelKey::Key(_))
    }

    pub fn as_key(&self) -> Option<&K> {
        match self {
            SentinelKey::Key(k) => Some(k),
            _ => None,
        }
    }
}

/// Monotone counters for clean and dirty comparisons within one run.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonLedger {
    clean: u64,
    dirty: u64,
}

impl ComparisonLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clean(&self) -> u64 {
        self.clean
    }

    pub fn dirty(&self) -> u64 {
        self.dirty
    }

    pub fn record_clean(&mut self) {
        self.clean += 1;
    }

    pub fn record_dirty(&mut self) {
        self.dirty += 1;
    }
}

/// Predicted rank per key; induces the dirty order `(u <̂ v) ⇔ R̂(u) < R̂(v)`.
#[derive(Debug, Clone, Default)]
pub struct DirtyOracle<K> {
    ranks: HashMap<K, u64>,
}

impl<K: Eq + Hash> DirtyOracle<K> {
    pub fn new() -> Self {
        DirtyOracle { ranks: HashMap::new() }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, u64)>) -> Self {
        DirtyOracle { ranks: pairs.into_iter().collect() }
    }

    /// Registers (or overwrites) the predicted rank of a key.
    pub fn set(&mut self, key: K, rank: u64) {
        self.ranks.insert(key, rank);
    }

    /// Predicted rank of `key`. A missing entry is a configuration bug.
    pub fn rank(&self, key: &K) -> u64 {
        match self.ranks.get(key) {
            Some(r) => *r,
            None => panic!("dirty oracle queried for a key it has no entry for"),
        }
    }

    /// Raw dirty order, uncounted.
    pub fn less(&self, a: &K, b: &K) -> bool {
        self.rank(a) < self.rank(b)
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// True outcome of `a < b`, charged to the ledger unless a sentinel is
/// involved.
pub fn clean_less<K: Ord>(
    a: &SentinelKey<K>,
    b: &SentinelKey<K>,
    ledger: &mut ComparisonLedger,
) -> bool {
    if !a.is_sentinel() && !b.is_sentinel() {
        ledger.record_clean();
    }
    a < b
}

/// Dirty outcome of `a <̂ b` under `oracle`, charged as a dirty comparison
/// unless a sentinel is involved. Sentinels are resolved structurally.
pub fn dirty_less<K: Eq + Hash>(
    a: &SentinelKey<K>,
    b: &SentinelKey<K>,
    oracle: &DirtyOracle<K>,
    ledger: &mut ComparisonLedger,
) -> bool {
    match (a, b) {
        (SentinelKey::Key(x), SentinelKey::Key(y)) => {
            ledger.record_dirty();
            oracle.less(x, y)
        }
        (SentinelKey::NegInf, SentinelKey::NegInf) => false,
        (SentinelKey::NegInf, _) => true,
        (_, SentinelKey::PosInf) => !matches!(a, SentinelKey::PosInf),
        _ => false,
    }
}

/// SplitMix64 generator.
///
/// State update: `state += 0x9E3779B97F4A7C15`, output finalizer
/// `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
/// z *= 0x94D049BB133111EB; z ^= z >> 31` (all arithmetic mod 2^64).
/// Every port of the experiments must reproduce this stream bit-exactly;
/// the reference vector for seed 1234567 is
/// `[6457827717110365317, 3203168211198807973, 9817491932198370423,
/// 4593380528125082431, 16408922859458223821]`.
///
/// Derived draws are part of the contract too: [`Rng::f64`] uses the top 53
/// bits, [`Rng::below`] reduces one output modulo `n`, and [`Rng::split`]
/// seeds a child generator with one output.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Independent child generator seeded from this stream.
    pub fn split(&mut self) -> Rng {
        Rng::new(self.next_u64())
    }

    /// Uniform draw in `[0, 1)` with 53-bit resolution.
    pub fn f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in `[0, n)`. `n` must be positive; the modulo bias is
    /// below 2^-40 for every `n` used by the experiments.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0) is undefined");
        self.next_u64() % n
    }

    /// Fisher-Yates shuffle driven by this generator.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}
