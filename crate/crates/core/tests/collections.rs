use std::cmp::Ordering;

use num_bigint::BigUint;
use proptest::prelude::*;

use zeckgen::collections::{
    decompose_asc, decompose_desc, enumerate_asc, enumerate_desc, is_member_asc, is_member_desc, predecessor_asc,
    successor_asc, successor_desc, BlockKind,
};
use zeckgen::integer::{decode_int, encode_int, FundamentalSeq};
use zeckgen::recurrences::{
    family_from_l, family_from_neg_recurrence, k_bounded_family, maximal_from_l, odd_index_maximal, NegRecurrence,
};
use zeckgen::{CoeffFn, IndexInterval, MultiplicityList};

fn list(e: &[u64]) -> MultiplicityList {
    MultiplicityList::new(e.to_vec()).unwrap()
}

fn fib() -> zeckgen::collections::PredecessorFamily {
    family_from_l(&list(&[1, 1]))
}

#[test]
fn fibonacci_member_splits_into_two_blocks() {
    let mu = CoeffFn::from_digits(&[0, 1, 0, 1, 0, 0, 1]);
    let dec = decompose_asc(&mu, &fib()).unwrap();
    let shape: Vec<(BlockKind, u64, u64)> = dec.blocks.iter().map(|b| (b.kind, b.start(), b.end())).collect();
    assert_eq!(shape, [(BlockKind::Maximal, 1, 4), (BlockKind::Proper, 5, 7)]);
    assert_eq!(dec.concat(), mu);
    assert!(decompose_asc(&CoeffFn::zero(), &fib()).unwrap().blocks.is_empty());
}

#[test]
fn k_bounded_proper_block() {
    let mu = CoeffFn::from_digits(&[0, 0, 0, 0, 5]);
    let dec = decompose_asc(&mu, &k_bounded_family()).unwrap();
    let nonzero: Vec<_> = dec.nonzero().collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0].kind, BlockKind::Proper);
    assert_eq!(nonzero[0].support, IndexInterval::closed(3, 5).unwrap());
}

#[test]
fn membership_examples() {
    assert!(!is_member_asc(&CoeffFn::from_digits(&[1, 1]), &fib()));
    assert!(is_member_asc(&CoeffFn::from_digits(&[1, 0, 1]), &fib()));
    assert!(is_member_asc(&CoeffFn::from_digits(&[0, 2, 0, 4, 0, 6]), &k_bounded_family()));
}

#[test]
fn successor_examples() {
    let fam = k_bounded_family();
    let hat7 = CoeffFn::from_digits(&[0, 2, 0, 4, 0, 6]);
    let mu = hat7.union(&"7:3,8:2".parse().unwrap()).unwrap();
    assert_eq!(successor_asc(&mu, &fam).unwrap(), "7:4,8:2".parse().unwrap());
    assert_eq!(successor_asc(&CoeffFn::zero(), &fam).unwrap(), CoeffFn::basis(1).unwrap());
    let mu = CoeffFn::from_digits(&[0, 1, 0, 1, 0, 0, 1]);
    assert_eq!(successor_asc(&mu, &fib()).unwrap(), "5:1,7:1".parse().unwrap());
}

#[test]
fn predecessor_examples() {
    let fam = k_bounded_family();
    assert_eq!(predecessor_asc(&CoeffFn::basis(1).unwrap(), &fam).unwrap(), Some(CoeffFn::zero()));
    assert_eq!(predecessor_asc(&CoeffFn::zero(), &fam).unwrap(), None);
    let hat7 = CoeffFn::from_digits(&[0, 2, 0, 4, 0, 6]);
    assert_eq!(predecessor_asc(&CoeffFn::basis(7).unwrap(), &fam).unwrap(), Some(hat7));
}

#[test]
fn negative_coefficient_chain() {
    let fam = family_from_neg_recurrence(&NegRecurrence::new(vec![3, -1]).unwrap()).unwrap().family;
    let expected: Vec<CoeffFn> =
        [&[1][..], &[2], &[0, 1], &[1, 1], &[2, 1], &[0, 2], &[1, 2]].iter().map(|d| CoeffFn::from_digits(d)).collect();
    let members = enumerate_asc(&fam, 7).unwrap();
    assert_eq!(members, expected);
    assert!(members.iter().all(|m| is_member_asc(m, &fam)));
}

#[test]
fn odd_index_examples() {
    let fam = odd_index_maximal();
    let eps = CoeffFn::from_digits(&[0, 0, 3, 0, 5, 0, 0]);
    let dec = decompose_desc(&eps, 7, &fam).unwrap();
    let shape: Vec<(BlockKind, u64, u64)> = dec.blocks.iter().map(|b| (b.kind, b.start(), b.end())).collect();
    assert_eq!(shape, [(BlockKind::Zero, 1, 1), (BlockKind::Zero, 2, 2), (BlockKind::Proper, 3, 7)]);

    let eps = CoeffFn::from_digits(&[0, 1, 3, 0, 5, 0]);
    assert!(is_member_desc(&eps, 6, &fam));
    assert_eq!(successor_desc(&eps, 6, &fam).unwrap(), "2:2".parse().unwrap());

    let zero = decompose_desc(&CoeffFn::zero(), 5, &fam).unwrap();
    assert_eq!(zero.blocks.len(), 5);
    assert!(zero.blocks.iter().all(|b| b.kind == BlockKind::Zero));
    assert_eq!(successor_desc(&CoeffFn::zero(), 5, &fam).unwrap(), CoeffFn::basis(5).unwrap());
}

fn pattern(l: &[u64], len: usize) -> Vec<u64> {
    let n = l.len();
    (0..len).map(|k| if k % n == n - 1 { l[n - 1] - 1 } else { l[k % n] }).collect()
}

/// All digit strings of length `m` with every suffix, read from its first
/// index, lexicographically at most the periodic pattern
/// `e_1, …, e_{N−1}, e_N − 1, e_1, …`. This characterizes the collection
/// only when the pattern is at least each of its shifts.
fn lexicographic_strings(l: &[u64], m: usize) -> Vec<CoeffFn> {
    let pattern = pattern(l, m);
    let top = *l.iter().max().unwrap();
    let mut out = Vec::new();
    let mut digits = vec![0u64; m];
    loop {
        let ok = (0..m).all(|s| {
            digits[s..].iter().zip(&pattern).map(|(d, p)| d.cmp(p)).find(|o| o.is_ne()) != Some(Ordering::Greater)
        });
        if ok {
            out.push(CoeffFn::from_digits(&digits));
        }
        let Some(i) = (0..m).rev().find(|&i| digits[i] < top) else { break };
        digits[i] += 1;
        digits[i + 1..].iter_mut().for_each(|d| *d = 0);
    }
    out.sort_by(|a, b| a.cmp_desc(b));
    out
}

#[test]
fn descending_enumeration_matches_lexicographic_oracle() {
    for l in [&[1, 1][..], &[1, 2], &[2, 3], &[1, 1, 1], &[2, 1], &[2, 0, 1], &[3, 2, 1], &[3, 1]] {
        let p = pattern(l, 4 * l.len());
        for s in 1..l.len() {
            assert!(p[s..] <= p[..p.len() - s], "L={l:?}: the pattern is below its shift by {s}");
        }
        let fam = maximal_from_l(&list(l));
        for m in 1..=7 {
            let oracle = lexicographic_strings(l, m);
            let members = enumerate_desc(&fam, m as u64, usize::MAX).unwrap();
            assert_eq!(members, oracle, "L={l:?} M={m}");
        }
    }
}

fn multiplicity_list() -> impl Strategy<Value = Vec<u64>> {
    (1u64..4, prop::collection::vec(0u64..4, 0..2), 1u64..4).prop_map(|(first, mid, last)| {
        let mut e = vec![first];
        e.extend(mid);
        e.push(last);
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbours_of_an_encoded_integer(e in multiplicity_list(), x in 1u64..1_000_000) {
        let fam = family_from_l(&list(&e));
        let q = FundamentalSeq::from_family(&fam);
        let mu = encode_int(&BigUint::from(x), &q, &fam).unwrap();
        let dec = decompose_asc(&mu, &fam).unwrap();
        prop_assert_eq!(dec.concat(), mu.clone());
        let mut next_index = 1;
        for b in &dec.blocks {
            prop_assert_eq!(b.start(), next_index);
            next_index = b.end() + 1;
        }
        let up = successor_asc(&mu, &fam).unwrap();
        prop_assert_eq!(decode_int(&up, &q).unwrap(), BigUint::from(x + 1));
        let down = predecessor_asc(&mu, &fam).unwrap().unwrap();
        prop_assert_eq!(decode_int(&down, &q).unwrap(), BigUint::from(x - 1));
        prop_assert_eq!(successor_asc(&down, &fam).unwrap(), mu);
    }

    #[test]
    fn descending_successor_increases(e in multiplicity_list(), m in 1u64..9, steps in 1usize..40) {
        let fam = maximal_from_l(&list(&e));
        let members = enumerate_desc(&fam, m, steps).unwrap();
        for w in members.windows(2) {
            prop_assert_eq!(w[0].cmp_desc(&w[1]), Ordering::Less);
            prop_assert!(is_member_desc(&w[1], m, &fam));
        }
    }
}
