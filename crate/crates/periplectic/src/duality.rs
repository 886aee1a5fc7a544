//! Diagram-level duality maps: the club move through longest arrows, the
//! dual weight (reflection at 0), and the dagger shift computed two
//! independent ways.

use crate::cap::{arrows, CapDiagram};
use crate::weight::WeightDiagram;
use serde::{Deserialize, Serialize};

/// Moves every ball with an outgoing solid arrow to the destination of its
/// longest arrow; balls without arrows stay put.
pub fn club(d: &WeightDiagram) -> WeightDiagram {
    let all = arrows(d);
    let mut moved: Vec<i64> = d
        .positions()
        .iter()
        .map(|&p| {
            all.iter()
                .filter(|a| a.src == p)
                .map(|a| a.dst)
                .min()
                .unwrap_or(p)
        })
        .collect();
    moved.sort_unstable();
    // Destinations of longest arrows are the left-end successors of distinct
    // caps, so collisions cannot occur.
    assert!(
        moved.windows(2).all(|w| w[0] < w[1]),
        "club produced colliding positions"
    );
    WeightDiagram::new(moved).expect("sorted distinct positions")
}

/// The highest weight diagram of the dual module: the club diagram
/// reflected at position 0.
pub fn star(d: &WeightDiagram) -> WeightDiagram {
    let mut reflected: Vec<i64> = club(d).positions().iter().map(|&p| -p).collect();
    reflected.sort_unstable();
    WeightDiagram::new(reflected).expect("reflection preserves distinctness")
}

/// The dagger diagram: the club diagram shifted right by `n - 1`.
pub fn dagger(d: &WeightDiagram) -> WeightDiagram {
    let shift = d.rank() as i64 - 1;
    club(d).translated(shift.max(0))
}

/// Computes the dagger diagram by the ball-pushing rewriting system instead
/// of through arrows; the two must agree on every diagram.
///
/// The operator `D_{a,b}` moves the a-th and b-th balls (1-based, left to
/// right, re-ranked before every operator) one position right when the
/// positions immediately right of both are free, and does nothing otherwise.
/// Operators apply in the order `D_{n-1,n}, D_{n-2,n}, D_{n-2,n-1}, ...,
/// D_{1,n}, ..., D_{1,2}`.
pub fn dagger_via_dab(d: &WeightDiagram) -> WeightDiagram {
    let n = d.rank();
    let mut positions: Vec<i64> = d.positions().to_vec();
    for a in (1..n).rev() {
        for b in (a + 1..=n).rev() {
            apply_dab(&mut positions, a - 1, b - 1);
        }
    }
    WeightDiagram::new(positions).expect("ball moves preserve strict order")
}

fn apply_dab(positions: &mut [i64], a: usize, b: usize) {
    // Both freeness tests read the untouched diagram; the two balls then
    // move atomically.
    let a_free = positions.binary_search(&(positions[a] + 1)).is_err();
    let b_free = positions.binary_search(&(positions[b] + 1)).is_err();
    if a_free && b_free {
        positions[a] += 1;
        positions[b] += 1;
    }
}

/// Per-ball cover counts: how many caps strictly contain each ball,
/// left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCount {
    pub counts: Vec<usize>,
}

pub fn cover_counts(cd: &CapDiagram) -> CoverCount {
    let counts = cd
        .base()
        .positions()
        .iter()
        .map(|&p| cd.caps().iter().filter(|c| c.covers(p)).count())
        .collect();
    CoverCount { counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cap::caps;
    use crate::weight::enumerate_diagrams;

    fn diagram(positions: &[i64]) -> WeightDiagram {
        WeightDiagram::new(positions.to_vec()).unwrap()
    }

    #[test]
    fn club_examples() {
        assert_eq!(club(&diagram(&[0, 1, 2])).positions(), &[-2, -1, 0]);
        assert_eq!(club(&diagram(&[0])).positions(), &[0]);
        assert_eq!(club(&diagram(&[0, 1])).positions(), &[-1, 0]);
    }

    #[test]
    fn club_moves_each_ball_to_its_cap_successor_slot() {
        // Equivalent description: the ball of a cap (i, j) lands on i+1.
        for n in 1..=5 {
            for d in enumerate_diagrams(n, 9).unwrap() {
                let cd = caps(&d);
                let mut expected: Vec<i64> = cd.caps().iter().map(|c| c.left + 1).collect();
                expected.sort_unstable();
                assert_eq!(club(&d).positions(), expected, "diagram {d}");
            }
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&diagram(&[0, 1, 2])).positions(), &[0, 1, 2]);
        assert_eq!(star(&diagram(&[0])).positions(), &[0]);
        let d = diagram(&[-1, 0]);
        let mut reflected: Vec<i64> = club(&d).positions().iter().map(|&p| -p).collect();
        reflected.sort_unstable();
        assert_eq!(star(&d).positions(), reflected);
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(dagger(&diagram(&[0, 1, 2])).positions(), &[0, 1, 2]);
        assert_eq!(dagger(&diagram(&[0])).positions(), &[0]);
        let d = diagram(&[1, 2, 5, 8, 9, 10]);
        assert_eq!(dagger(&d).positions(), club(&d).translated(5).positions());
    }

    #[test]
    fn dab_examples() {
        assert_eq!(dagger_via_dab(&diagram(&[0, 1, 2])).positions(), &[0, 1, 2]);
        assert_eq!(dagger_via_dab(&diagram(&[0])).positions(), &[0]);
    }

    #[test]
    fn dab_agrees_with_dagger_on_corpus() {
        for n in 1..=5 {
            for d in enumerate_diagrams(n, 9).unwrap() {
                assert_eq!(dagger_via_dab(&d), dagger(&d), "diagram {d}");
            }
        }
    }

    #[test]
    fn star_is_an_involution_on_corpus() {
        for n in 1..=5 {
            for d in enumerate_diagrams(n, 9).unwrap() {
                assert_eq!(star(&star(&d)), d, "diagram {d}");
                assert_eq!(star(&d).rank(), n);
            }
        }
    }

    #[test]
    fn club_never_moves_right_on_corpus() {
        for n in 1..=5 {
            for d in enumerate_diagrams(n, 9).unwrap() {
                let all = arrows(&d);
                for &p in d.positions() {
                    let dest = all
                        .iter()
                        .filter(|a| a.src == p)
                        .map(|a| a.dst)
                        .min()
                        .unwrap_or(p);
                    assert!(dest <= p);
                }
            }
        }
    }

    #[test]
    fn cover_count_examples() {
        let cd = caps(&diagram(&[0, 1, 2]));
        assert_eq!(cover_counts(&cd).counts, vec![2, 1, 0]);
        let cd = caps(&diagram(&[0]));
        assert_eq!(cover_counts(&cd).counts, vec![0]);
        let cd = caps(&diagram(&[1, 2, 5, 8, 9, 10]));
        assert_eq!(cover_counts(&cd).counts[0], 1);
    }

    #[test]
    fn first_ball_displacement_on_corpus() {
        // The leftmost ball of the dagger diagram sits n - m_1 - 1 positions
        // right of the original leftmost ball.
        for n in 1..=5 {
            for d in enumerate_diagrams(n, 9).unwrap() {
                let cd = caps(&d);
                let m1 = cover_counts(&cd).counts[0] as i64;
                let displaced = dagger(&d).min_position().unwrap() - d.min_position().unwrap();
                assert_eq!(displaced, n as i64 - m1 - 1, "diagram {d}");
                let first_cap_maximal = cd
                    .maximal_caps()
                    .iter()
                    .any(|c| c.right == d.min_position().unwrap());
                if first_cap_maximal {
                    assert_eq!(displaced, n as i64 - 1, "diagram {d}");
                }
            }
        }
    }
}
