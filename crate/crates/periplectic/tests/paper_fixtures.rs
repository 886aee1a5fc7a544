//! End-to-end fixtures for the worked rank-6, rank-9, rank-10 and rank-11
//! examples, exercising every module against the hand-computed structures.

use num_bigint::{BigInt, BigUint};
use periplectic::cap::{arrows, caps, clusters, initial_segment_ok, Arrow, Cap, CapRef};
use periplectic::ds::{ds, SimpleModule};
use periplectic::forest::{block_index, forest, is_worthy, sdim, worthiness_witness};
use periplectic::oracle::{heap_ordering_count, sdim_recursive};
use periplectic::weight::{DominantWeight, WeightDiagram};

fn weight(coeffs: &[i64]) -> DominantWeight {
    DominantWeight::new(coeffs.to_vec()).unwrap()
}

fn cap(left: i64, right: i64) -> Cap {
    Cap { left, right }
}

#[test]
fn rank6_arrow_example() {
    // λ = (0,0,1,1,1,3): balls 0,1,3,4,5,8; arrows 1->-1, 4->2, 4->-2,
    // 5->-3; clusters [0,1], [3,5], [8,8].
    let d = weight(&[0, 0, 1, 1, 1, 3]).diagram();
    assert_eq!(d.positions(), &[0, 1, 3, 4, 5, 8]);
    assert_eq!(
        arrows(&d),
        vec![
            Arrow { src: 1, dst: -1 },
            Arrow { src: 4, dst: -2 },
            Arrow { src: 4, dst: 2 },
            Arrow { src: 5, dst: -3 },
        ]
    );
    let got: Vec<(i64, i64)> = clusters(&d).iter().map(|c| (c.start, c.end)).collect();
    assert_eq!(got, [(0, 1), (3, 5), (8, 8)]);
}

#[test]
fn rank6_cap_poset_example() {
    // λ = (1,1,3,5,5,5): the nesting is (0,1) < (-1,2), (4,5) < (3,10),
    // (7,8) < (6,9) < (3,10); maximal caps (-1,2) and (3,10).
    let d = weight(&[1, 1, 3, 5, 5, 5]).diagram();
    assert_eq!(d.positions(), &[1, 2, 5, 8, 9, 10]);
    let cd = caps(&d);
    assert_eq!(
        cd.caps(),
        &[
            cap(0, 1),
            cap(-1, 2),
            cap(4, 5),
            cap(7, 8),
            cap(6, 9),
            cap(3, 10),
        ]
    );
    assert!(cap(0, 1).internal_to(&cap(-1, 2)));
    assert!(cap(4, 5).internal_to(&cap(3, 10)));
    assert!(cap(7, 8).internal_to(&cap(6, 9)));
    assert!(cap(6, 9).internal_to(&cap(3, 10)));
    assert_eq!(cd.maximal_caps(), vec![cap(-1, 2), cap(3, 10)]);
    assert_eq!(
        cd.successors(&CapRef::Cap(cap(3, 10))).unwrap(),
        vec![cap(4, 5), cap(6, 9)]
    );
    assert_eq!(
        cd.successors(&CapRef::Virtual).unwrap(),
        vec![cap(-1, 2), cap(3, 10)]
    );

    // int values; the virtual cap counts n + 1 = 7.
    for (c, expected) in [
        (cap(0, 1), 1),
        (cap(4, 5), 1),
        (cap(7, 8), 1),
        (cap(-1, 2), 2),
        (cap(6, 9), 2),
        (cap(3, 10), 4),
    ] {
        assert_eq!(cd.int_count(&CapRef::Cap(c)).unwrap(), expected, "{c}");
    }
    assert_eq!(cd.int_count(&CapRef::Virtual).unwrap(), 7);

    assert!(is_worthy(&cd));
    let f = forest(&cd).unwrap();
    assert_eq!(f.size(), 3);
    assert_eq!(f.factorial(), BigUint::from(2u32));
    assert_eq!(heap_ordering_count(&f).unwrap(), BigUint::from(3u32));
    assert_eq!(sdim(&SimpleModule::even(d.weight())), BigInt::from(3));
    assert_eq!(block_index(&d), 0);
}

#[test]
fn rank9_ds_example() {
    // λ = (0,0,1,3,3,6,8,8,8) over p(9): four factors, the first with a
    // parity shift, in removed-ball order.
    let s = SimpleModule::even(weight(&[0, 0, 1, 3, 3, 6, 8, 8, 8]));
    let d = s.weight.diagram();
    let cd = caps(&d);
    assert_eq!(
        cd.maximal_caps(),
        vec![cap(-2, 1), cap(2, 3), cap(4, 7), cap(9, 16)]
    );

    let result = ds(&s);
    let mu: Vec<&[i64]> = vec![
        &[0, 2, 4, 4, 7, 9, 9, 9],
        &[0, 0, 4, 4, 7, 9, 9, 9],
        &[0, 0, 1, 3, 7, 9, 9, 9],
        &[0, 0, 1, 3, 3, 6, 8, 8],
    ];
    let z = [1u8, 0, 0, 0];
    let removed = [1i64, 3, 7, 16];
    assert_eq!(result.factors.len(), 4);
    for i in 0..4 {
        assert_eq!(result.factors[i].weight.coeffs(), mu[i]);
        assert_eq!(result.factors[i].parity.as_u8(), z[i]);
        assert_eq!(result.factors[i].removed_ball, removed[i]);
    }

    // The factor cap diagrams are the input's with one maximal cap removed.
    let expected_caps: Vec<Vec<Cap>> = vec![
        vec![
            cap(-1, 0),
            cap(2, 3),
            cap(5, 6),
            cap(4, 7),
            cap(10, 11),
            cap(13, 14),
            cap(12, 15),
            cap(9, 16),
        ],
        vec![
            cap(-1, 0),
            cap(-2, 1),
            cap(5, 6),
            cap(4, 7),
            cap(10, 11),
            cap(13, 14),
            cap(12, 15),
            cap(9, 16),
        ],
        vec![
            cap(-1, 0),
            cap(-2, 1),
            cap(2, 3),
            cap(5, 6),
            cap(10, 11),
            cap(13, 14),
            cap(12, 15),
            cap(9, 16),
        ],
        vec![
            cap(-1, 0),
            cap(-2, 1),
            cap(2, 3),
            cap(5, 6),
            cap(4, 7),
            cap(10, 11),
            cap(13, 14),
            cap(12, 15),
        ],
    ];
    for (factor, expected) in result.factors.iter().zip(expected_caps) {
        assert_eq!(caps(&factor.weight.diagram()).caps(), expected.as_slice());
    }

    // Removability matches the maximal-cap ends.
    for &p in d.positions() {
        assert_eq!(
            initial_segment_ok(&d, p).unwrap(),
            [1, 3, 7, 16].contains(&p)
        );
    }
}

#[test]
fn rank4_unworthy_example() {
    // λ = (1,4,6,6): the virtual cap has two odd successors.
    let d = weight(&[1, 4, 6, 6]).diagram();
    assert_eq!(d.positions(), &[1, 5, 8, 9]);
    let cd = caps(&d);
    assert_eq!(cd.caps(), &[cap(0, 1), cap(4, 5), cap(7, 8), cap(6, 9)]);
    for (c, expected) in [
        (cap(0, 1), 1),
        (cap(4, 5), 1),
        (cap(7, 8), 1),
        (cap(6, 9), 2),
    ] {
        assert_eq!(cd.int_count(&CapRef::Cap(c)).unwrap(), expected);
    }
    assert_eq!(cd.maximal_caps(), vec![cap(0, 1), cap(4, 5), cap(6, 9)]);
    let (witness, odd) = worthiness_witness(&cd).unwrap();
    assert_eq!(witness, CapRef::Virtual);
    assert_eq!(odd, vec![cap(0, 1), cap(4, 5)]);
    assert_eq!(sdim(&SimpleModule::even(d.weight())), BigInt::from(0));
    assert_eq!(sdim_recursive(&d), BigInt::from(0));
}

#[test]
fn rank10_intro_example() {
    let s = SimpleModule::even(weight(&[0, 0, 1, 3, 3, 3, 5, 7, 7, 7]));
    let cd = caps(&s.weight.diagram());
    // Odd caps are exactly (-1,0), (2,3), (5,6), (10,11), (13,14).
    let odd: Vec<Cap> = cd
        .caps()
        .iter()
        .filter(|c| cd.is_odd(&CapRef::Cap(**c)).unwrap())
        .copied()
        .collect();
    assert_eq!(
        odd,
        vec![cap(-1, 0), cap(2, 3), cap(5, 6), cap(10, 11), cap(13, 14)]
    );
    assert_eq!(sdim(&s), BigInt::from(20));
    assert_eq!(sdim_recursive(&s.weight.diagram()), BigInt::from(20));
}

#[test]
fn rank11_worthy_example() {
    let s = SimpleModule::even(weight(&[-7, -7, -7, -5, -3, -3, -1, 1, 1, 1, 1]));
    assert!(is_worthy(&caps(&s.weight.diagram())));
    assert_eq!(sdim(&s), BigInt::from(15));
    assert_eq!(sdim_recursive(&s.weight.diagram()), BigInt::from(15));
    assert_eq!(block_index(&s.weight.diagram()).abs(), 1);
}

#[test]
fn zero_and_natural_weights() {
    for n in 1..=12 {
        let s = SimpleModule::even(DominantWeight::zero(n));
        assert_eq!(sdim(&s), BigInt::from(1), "rank {n}");
        // The zero weight gives a fully nested chain: a linear tree.
        let f = forest(&caps(&s.weight.diagram())).unwrap();
        assert_eq!(f.size(), n.div_ceil(2));
        assert_eq!(heap_ordering_count(&f).unwrap(), BigUint::from(1u32));
    }
    for n in 2..=8 {
        let mut coeffs = vec![0i64; n];
        coeffs[0] = -1;
        let s = SimpleModule::even(weight(&coeffs));
        assert_eq!(sdim(&s), BigInt::from(0), "rank {n}");
    }
}

#[test]
fn virtual_cap_parity_follows_rank() {
    // The virtual cap is even exactly when the rank is odd.
    for n in 1..=7 {
        let d = WeightDiagram::new((0..n).collect()).unwrap();
        let cd = caps(&d);
        assert_eq!(cd.is_odd(&CapRef::Virtual).unwrap(), n % 2 == 0, "rank {n}");
    }
}
