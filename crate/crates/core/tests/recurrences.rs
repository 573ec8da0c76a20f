use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use zeckgen::integer::{fundamental_from_family, FundamentalSeq};
use zeckgen::recurrences::{
    factorial_family, family_from_l, family_from_neg_recurrence, family_from_tail_rule, fixed_blocks_family,
    k_bounded_family, seven_blocks, verify_recurrence, NegRecurrence, RecurrenceVerdict,
};
use zeckgen::{CoeffFn, MultiplicityList};

fn ints(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

fn list(e: &[u64]) -> MultiplicityList {
    MultiplicityList::new(e.to_vec()).unwrap()
}

#[test]
fn list_validation() {
    assert!(MultiplicityList::new(vec![]).is_err());
    assert!(MultiplicityList::new(vec![0, 1]).is_err());
    assert!(MultiplicityList::new(vec![1, 0]).is_err());
    assert!(MultiplicityList::new(vec![1, 0, 1]).is_ok());
    let l = list(&[2, 0, 3]);
    let digits: Vec<u64> = (1..=7).map(|k| l.pattern_digit(k)).collect();
    assert_eq!(digits, [2, 0, 2, 2, 0, 2, 2]);
}

#[test]
fn powers_of_three() {
    let fam = family_from_l(&list(&[2, 3]));
    let q = fundamental_from_family(&fam, 20).unwrap();
    for k in 1..=20u32 {
        assert_eq!(q.term(k as u64).unwrap(), BigUint::from(3u32).pow(k - 1));
    }
    for n in 2..=20 {
        assert_eq!(*fam.delta(n).unwrap(), CoeffFn::from_digits(&vec![2; n as usize - 1]));
    }
}

#[test]
fn list_recurrences_hold() {
    for e in [&[1, 1][..], &[2, 3], &[1, 0, 4], &[3, 1, 2], &[1, 1, 1, 1]] {
        let l = list(e);
        let q = FundamentalSeq::from_family(&family_from_l(&l));
        let from = e.len() as u64 + 1;
        let verdict = verify_recurrence(&q, |_| l.recurrence(), from..=80).unwrap();
        assert_eq!(verdict, RecurrenceVerdict::Holds, "{e:?}");
    }
}

#[test]
fn wrong_coefficients_fail_at_the_first_index() {
    let q = FundamentalSeq::from_family(&family_from_l(&list(&[1, 1])));
    let verdict = verify_recurrence(&q, |_| ints(&[1, 2]), 3..=10).unwrap();
    assert_eq!(verdict, RecurrenceVerdict::FailsAt { n: 3, term: BigInt::from(3), combination: BigInt::from(4) });
}

#[test]
fn index_dependent_recurrences() {
    let q = FundamentalSeq::from_family(&factorial_family());
    assert_eq!(verify_recurrence(&q, |n| ints(&[n as i64]), 2..=40).unwrap(), RecurrenceVerdict::Holds);

    let q = FundamentalSeq::from_family(&k_bounded_family());
    let verdict = verify_recurrence(&q, |m| ints(&[m as i64 - 1, 1]), 3..=52).unwrap();
    assert_eq!(verdict, RecurrenceVerdict::Holds);
}

#[test]
fn tail_rule_with_one_head_digit() {
    let fam = family_from_tail_rule("tau-n", vec![Arc::new(|n| n)], Arc::new(|k| k));
    let q = FundamentalSeq::from_family(&fam);
    let verdict = verify_recurrence(&q, |n| ints(&[n as i64 + 1, -1]), 3..=30).unwrap();
    assert_eq!(verdict, RecurrenceVerdict::Holds);
}

#[test]
fn tail_rule_with_two_head_digits() {
    let fam = family_from_tail_rule("3n-2n", vec![Arc::new(|n| 3 * n), Arc::new(|n| 2 * n)], Arc::new(|k| k));
    assert_eq!(*fam.delta(5).unwrap(), CoeffFn::from_digits(&[1, 2, 10, 15]));
    let q = FundamentalSeq::from_family(&fam);
    let verdict = verify_recurrence(
        &q,
        |n| {
            let n = n as i64;
            ints(&[3 * n + 1, -(n - 3), -(n + 1)])
        },
        4..=30,
    )
    .unwrap();
    assert_eq!(verdict, RecurrenceVerdict::Holds);
}

#[test]
fn negative_coefficients_give_even_fibonacci_numbers() {
    let sys = family_from_neg_recurrence(&NegRecurrence::new(vec![3, -1]).unwrap()).unwrap();
    assert_eq!((sys.e.clone(), sys.b), (vec![2], 1));
    assert_eq!(sys.coefficients(), [3, -1]);
    let q = fundamental_from_family(&sys.family, 40).unwrap();
    // F_2, F_4, F_6, … with F_1 = F_2 = 1.
    let (mut a, mut b) = (BigUint::from(0u32), BigUint::from(1u32));
    for k in 1..=40 {
        let next = &a + &b;
        a = b;
        b = next;
        assert_eq!(q.term(k).unwrap(), b, "k={k}");
        let next = &a + &b;
        a = b;
        b = next;
    }
}

#[test]
fn invalid_negative_recurrences() {
    assert!(NegRecurrence::new(vec![]).is_err());
    assert!(NegRecurrence::new(vec![1, 1]).is_err());
    assert!(NegRecurrence::new(vec![2, -2]).is_err());
    assert!(NegRecurrence::new(vec![8, -2, -3]).is_ok());
}

#[test]
fn block_lists_are_checked() {
    assert_eq!(fixed_blocks_family(3, &seven_blocks()).unwrap().base, 7);
    assert!(fixed_blocks_family(0, &[]).is_err());
    assert!(fixed_blocks_family(2, &[vec![0, 0], vec![1, 0], vec![1]]).is_err());
    assert!(fixed_blocks_family(2, &[vec![1, 0], vec![0, 1]]).is_err());
    // (1,0) and (1,1) without (0,1) is not closed under predecessors.
    assert!(fixed_blocks_family(2, &[vec![0, 0], vec![1, 0], vec![1, 1]]).is_err());
}

fn neg_recurrence() -> impl Strategy<Value = Vec<i64>> {
    (2i64..6, prop::collection::vec(-3i64..4, 1..4)).prop_map(|(c1, rest)| {
        let mut c = vec![c1];
        let mut sum = c1;
        for x in rest {
            let x = x.max(1 - sum);
            sum += x;
            c.push(x);
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn negative_recurrence_families_realize_their_recurrence(c in neg_recurrence()) {
        let r = NegRecurrence::new(c.clone()).unwrap();
        let sys = family_from_neg_recurrence(&r).unwrap();
        prop_assert_eq!(sys.coefficients(), c.clone());
        let q = FundamentalSeq::from_family(&sys.family);
        prop_assert_eq!(q.terms_upto(c.len() as u64).unwrap(), sys.initial[..c.len()].to_vec());
        let from = c.len() as u64 + 1;
        let verdict = verify_recurrence(&q, |_| ints(&c), from..=40).unwrap();
        prop_assert_eq!(verdict, RecurrenceVerdict::Holds);
    }

    #[test]
    fn list_families_realize_their_recurrence(
        e in (1u64..6, prop::collection::vec(0u64..6, 0..4), 1u64..6)
            .prop_map(|(a, mid, b)| [vec![a], mid, vec![b]].concat())
    ) {
        let l = list(&e);
        let q = FundamentalSeq::from_family(&family_from_l(&l));
        let from = e.len() as u64 + 1;
        prop_assert_eq!(verify_recurrence(&q, |_| l.recurrence(), from..=60).unwrap(), RecurrenceVerdict::Holds);
    }
}
