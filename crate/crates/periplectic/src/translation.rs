//! Diagram-level consequences of the translation functors on simple
//! modules, and their block arithmetic.

use crate::ds::SimpleModule;
use crate::weight::Parity;

/// The distinguished composition factor of the i-th translation of a simple
/// module: the ball at `i` moves to `i - 1` with a parity shift of `i + 1`.
/// Returns `None` when the functor annihilates the module (no ball at `i`,
/// or `i - 1` occupied).
pub fn theta_candidate(s: &SimpleModule, i: i64) -> Option<SimpleModule> {
    let d = s.weight.diagram();
    if !d.ball(i) || d.ball(i - 1) {
        return None;
    }
    let moved = d.with_ball_moved(i, i - 1).expect("checked ball and gap");
    Some(SimpleModule {
        weight: moved.weight(),
        parity: s.parity + Parity::of(i + 1),
    })
}

/// How the i-th translation functor moves block indices: `k + 2` for odd
/// `i`, `k - 2` for even `i`.
pub fn theta_block_shift(k: i64, i: i64) -> i64 {
    if i.rem_euclid(2) == 1 {
        k + 2
    } else {
        k - 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::caps;
    use crate::ds::ds;
    use crate::forest::block_index;
    use crate::weight::{enumerate_diagrams, DominantWeight, WeightDiagram};

    fn module(positions: &[i64]) -> SimpleModule {
        SimpleModule::even(WeightDiagram::new(positions.to_vec()).unwrap().weight())
    }

    #[test]
    fn blocked_and_missing_moves() {
        assert!(theta_candidate(&module(&[0, 1]), 1).is_none());
        assert!(theta_candidate(&module(&[0]), 5).is_none());
    }

    #[test]
    fn basic_move() {
        let out = theta_candidate(&module(&[0, 2]), 2).unwrap();
        assert_eq!(out.weight.diagram().positions(), &[0, 1]);
        assert_eq!(out.parity, Parity::Odd);
    }

    #[test]
    fn block_shift_table() {
        assert_eq!(theta_block_shift(0, 3), 2);
        assert_eq!(theta_block_shift(0, 2), -2);
        assert_eq!(theta_block_shift(1, 1), 3);
        assert_eq!(theta_block_shift(1, -2), -1);
        assert_eq!(theta_block_shift(-3, -1), -1);
    }

    #[test]
    fn candidate_and_shift_agree_on_corpus() {
        for n in 1..=5 {
            for d in enumerate_diagrams(n, 9).unwrap() {
                let s = SimpleModule::even(d.weight());
                let lo = d.min_position().unwrap() - 2;
                let hi = d.max_position().unwrap() + 2;
                for i in lo..=hi {
                    if let Some(out) = theta_candidate(&s, i) {
                        assert_eq!(
                            block_index(&out.weight.diagram()),
                            theta_block_shift(block_index(&d), i),
                            "diagram {d}, i = {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn translation_commutes_with_cap_removal_on_corpus() {
        // Where the ball at i is removable both before and after the move,
        // the two factor diagrams coincide and carry the same parity shift.
        for n in 2..=5 {
            for d in enumerate_diagrams(n, 8).unwrap() {
                let s = SimpleModule::even(d.weight());
                let before = ds(&s);
                let lo = d.min_position().unwrap() - 1;
                let hi = d.max_position().unwrap() + 1;
                for i in lo..=hi {
                    let Some(moved) = theta_candidate(&SimpleModule::even(d.weight()), i) else {
                        continue;
                    };
                    let d2 = moved.weight.diagram();
                    let max_before = caps(&d).maximal_caps().iter().any(|c| c.right == i);
                    let max_after = caps(&d2).maximal_caps().iter().any(|c| c.right == i - 1);
                    if !(max_before && max_after) {
                        continue;
                    }
                    let after = ds(&SimpleModule::even(moved.weight.clone()));
                    let fa = before
                        .factors
                        .iter()
                        .find(|f| f.removed_ball == i)
                        .expect("maximal cap end is removable");
                    let fb = after
                        .factors
                        .iter()
                        .find(|f| f.removed_ball == i - 1)
                        .expect("maximal cap end is removable");
                    assert_eq!(fa.weight, fb.weight, "diagram {d}, i = {i}");
                    assert_eq!(fa.parity, fb.parity, "diagram {d}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn candidate_requires_monotone_result() {
        // Moving a ball one slot left always yields a valid dominant weight.
        let w = DominantWeight::new(vec![0, 0, 2]).unwrap();
        let s = SimpleModule::even(w);
        let out = theta_candidate(&s, 4).unwrap();
        assert_eq!(out.weight.coeffs(), &[0, 0, 1]);
    }
}
