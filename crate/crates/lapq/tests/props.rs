//! Property tests: the structures against sorted-multiset reference models,
//! under arbitrary (including adversarial) predictions.

use proptest::prelude::*;

use lapq::instrument::{DirtyOracle, Rng};
use lapq::predict::{err_pointer, rank_of};
use lapq::queue::{Lapq, Mode};
use lapq::skiplist::SkipList;
use lapq::veb::DynamicVeb;

#[derive(Debug, Clone)]
enum Op {
    Insert(u16),
    ExtractMin,
    Delete(u16),
    DecreaseBy(u16, u16),
}

fn op_strategy() -> impl Strategy<Value = Op> {
    prop_oneof![
        3 => any::<u16>().prop_map(|k| Op::Insert(k % 512)),
        2 => Just(Op::ExtractMin),
        1 => any::<u16>().prop_map(|k| Op::Delete(k % 512)),
        1 => (any::<u16>(), any::<u16>()).prop_map(|(k, d)| Op::DecreaseBy(k % 512, d % 64)),
    ]
}

proptest! {
    /// Level-1 traversal equals a sorted multiset maintained in lockstep,
    /// after any operation sequence.
    #[test]
    fn skiplist_matches_multiset_reference(ops in prop::collection::vec(op_strategy(), 1..400), seed in any::<u64>()) {
        let mut list: SkipList<u16, u32> = SkipList::new(seed);
        let mut reference: Vec<u16> = Vec::new();
        let mut stamp = 0u32;
        for op in ops {
            match op {
                Op::Insert(k) => {
                    let head = list.head();
                    list.exp_search_insert(head, k, stamp);
                    stamp += 1;
                    reference.push(k);
                    reference.sort_unstable();
                }
                Op::ExtractMin => {
                    let got = list.extract_min().map(|(k, _)| k);
                    let expect = if reference.is_empty() { None } else { Some(reference.remove(0)) };
                    prop_assert_eq!(got, expect);
                }
                Op::Delete(k) => {
                    let got = list.delete(&k).is_some();
                    let expect = reference.iter().position(|&v| v == k).map(|i| reference.remove(i)).is_some();
                    prop_assert_eq!(got, expect);
                }
                Op::DecreaseBy(k, d) => {
                    let new = k.saturating_sub(d);
                    if new < k {
                        let ok = list.decrease_key(&k, new).is_ok();
                        let expect = reference.iter().position(|&v| v == k);
                        prop_assert_eq!(ok, expect.is_some());
                        if let Some(at) = expect {
                            reference.remove(at);
                            reference.push(new);
                            reference.sort_unstable();
                        }
                    }
                }
            }
        }
        let drained: Vec<u16> = list.iter_sorted().map(|(k, _)| *k).collect();
        prop_assert_eq!(drained, reference);
        list.check_invariants();
    }

    /// The exponential search finds the same predecessor a linear scan
    /// would, from any live source node.
    #[test]
    fn exp_search_agrees_with_linear_scan(
        keys in prop::collection::vec(0u32..500, 1..120),
        probe in 0u32..500,
        source_pick in any::<prop::sample::Index>(),
        seed in any::<u64>(),
    ) {
        let mut list: SkipList<u32, ()> = SkipList::new(seed);
        for &k in &keys {
            let head = list.head();
            list.exp_search_insert(head, k, ());
        }
        let live = list.keys_sorted();
        let source_key = live[source_pick.index(live.len())];
        let source = list.node_of(&source_key).unwrap();
        let node = list.exp_search_insert(source, probe, ());
        // the probe's predecessor among the previous keys, by linear scan
        let expect = live.iter().copied().filter(|&k| k <= probe).max();
        let mut sorted_after = live;
        sorted_after.push(probe);
        sorted_after.sort_unstable();
        sorted_after.dedup();
        prop_assert_eq!(list.keys_sorted(), sorted_after);
        // the returned node holds the probe key, whose level-1 predecessor
        // must be `expect` (or the head when None)
        prop_assert_eq!(list.key(node), Some(&probe));
        let pred = list.prev_node(node);
        match expect {
            Some(k) if k != probe => prop_assert_eq!(list.key(pred), Some(&k)),
            Some(_) => {} // probe equals a live key: appended to its bucket
            None => prop_assert_eq!(list.key(pred), None),
        }
    }

    /// Draining is the sorted multiset in every mode, whatever the
    /// predictions say.
    #[test]
    fn lapq_drains_sorted_in_all_modes(
        keys in prop::collection::vec(0u32..300, 1..150),
        wrong in prop::collection::vec(1u64..400, 150),
        seed in any::<u64>(),
    ) {
        let mut expect = keys.clone();
        expect.sort_unstable();

        // pointer mode with arbitrary (often wrong, sometimes dead) hints
        let mut q: Lapq<u32> = Lapq::new(Mode::Pointer, seed);
        for (i, &k) in keys.iter().enumerate() {
            let hint = (wrong[i] % 300) as u32;
            q.insert_pointer(k, Some(&hint), ());
        }
        let drained: Vec<u32> = std::iter::from_fn(|| q.extract_min()).map(|(k, _)| k).collect();
        prop_assert_eq!(&drained, &expect);

        // dirty mode under an arbitrary oracle
        let oracle = DirtyOracle::from_pairs((0u32..300).map(|k| (k, wrong[(k as usize) % wrong.len()])));
        let mut q: Lapq<u32> = Lapq::new(Mode::Dirty, seed ^ 1);
        for &k in &keys {
            q.insert_dirty(k, &oracle, ());
        }
        let drained: Vec<u32> = std::iter::from_fn(|| q.extract_min()).map(|(k, _)| k).collect();
        prop_assert_eq!(&drained, &expect);

        // rank mode under arbitrary positive predictions
        let mut q: Lapq<u32> = Lapq::new(Mode::Rank, seed ^ 2);
        for (i, &k) in keys.iter().enumerate() {
            q.insert_rank(k, wrong[i], ());
        }
        let drained: Vec<u32> = std::iter::from_fn(|| q.extract_min()).map(|(k, _)| k).collect();
        prop_assert_eq!(&drained, &expect);
    }

    /// DynamicVeb predecessor/successor/min agree with a reference model.
    #[test]
    fn dynamic_veb_matches_reference(
        ops in prop::collection::vec((any::<u16>(), 1u64..5000), 1..300),
    ) {
        let mut veb: DynamicVeb<u16> = DynamicVeb::new();
        let mut reference: std::collections::BTreeMap<u64, Vec<u16>> = Default::default();
        for (i, (e, k)) in ops.into_iter().enumerate() {
            match i % 4 {
                0 | 1 => {
                    veb.insert(e, k);
                    reference.entry(k).or_default().push(e);
                }
                2 => {
                    let got = veb.predecessor(k).map(|(k, _)| k);
                    let expect = reference.range(..=k).next_back().map(|(k, _)| *k);
                    prop_assert_eq!(got, expect);
                }
                _ => {
                    let got = veb.extract_min().map(|(k, _)| k);
                    let expect = reference.keys().next().copied();
                    prop_assert_eq!(got, expect);
                    if let Some(k) = expect {
                        let bucket = reference.get_mut(&k).unwrap();
                        bucket.pop();
                        if bucket.is_empty() {
                            reference.remove(&k);
                        }
                    }
                }
            }
        }
    }

    /// The true predecessor always has pointer error zero.
    #[test]
    fn true_predecessor_has_zero_pointer_error(
        q in prop::collection::vec(0i64..1000, 1..80),
        u in 0i64..1000,
    ) {
        if let Some(pred) = q.iter().copied().filter(|&v| v <= u).max() {
            prop_assert_eq!(err_pointer(&u, &pred, &q), 0);
        }
    }

    /// `rank_of` is monotone and bounded by the multiset size.
    #[test]
    fn rank_of_basic_laws(v in prop::collection::vec(0u32..100, 0..60), u in 0u32..120) {
        let r = rank_of(&u, &v);
        prop_assert!(r <= v.len());
        if u > 0 {
            prop_assert!(rank_of(&(u - 1), &v) <= r);
        }
    }
}

/// Deterministic replay: ledgers, structures, and outputs are identical for
/// identical seeds.
#[test]
fn determinism_end_to_end() {
    let run = |seed: u64| {
        let mut rng = Rng::new(seed);
        let mut q: Lapq<u64> = Lapq::new(Mode::Rank, rng.next_u64());
        let mut keys: Vec<u64> = (1..=2000).collect();
        rng.shuffle(&mut keys);
        for &k in &keys {
            q.insert_rank(k, 1 + (k + rng.below(20)) % 2100, ());
        }
        let stats = q.stats();
        let drained: Vec<u64> = std::iter::from_fn(|| q.extract_min()).map(|(k, _)| k).collect();
        (stats, drained)
    };
    let (s1, d1) = run(12345);
    let (s2, d2) = run(12345);
    assert_eq!(s1, s2);
    assert_eq!(d1, d2);
    let (s3, _) = run(54321);
    assert_ne!(s1.clean, s3.clean);
}
