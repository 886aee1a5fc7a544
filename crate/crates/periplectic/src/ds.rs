//! The combinatorial action of the Duflo-Serganova functor on simple
//! modules.
//!
//! On a simple module the functor acts by diagram surgery: each composition
//! factor removes the ball of one maximal cap, and the factor's parity shift
//! is the number of balls strictly to the right of the removed one. The
//! output is a composition-factor list, not a direct sum; it need not be
//! semisimple, but it is multiplicity free.

use crate::cap::{caps, initial_segment_ok};
use crate::weight::{DominantWeight, Parity, WeightDiagram};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A simple module, determined by its highest weight and the parity of the
/// highest weight vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleModule {
    pub weight: DominantWeight,
    pub parity: Parity,
}

impl SimpleModule {
    /// The module with even highest weight vector.
    pub fn even(weight: DominantWeight) -> Self {
        SimpleModule {
            weight,
            parity: Parity::Even,
        }
    }

    pub fn rank(&self) -> usize {
        self.weight.rank()
    }
}

/// One composition factor of the image of a simple module: a weight one rank
/// down, its parity shift, and the ball whose removal produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsFactor {
    pub weight: DominantWeight,
    pub parity: Parity,
    pub removed_ball: i64,
}

/// The full composition-factor list, ordered by removed ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsResult {
    pub factors: Vec<DsFactor>,
}

/// Applies the functor to a simple module: one factor per maximal cap.
pub fn ds(s: &SimpleModule) -> DsResult {
    let d = s.weight.diagram();
    let cd = caps(&d);
    let factors = cd
        .maximal_caps()
        .iter()
        .map(|c| {
            let removed = c.right;
            let z = parity_of_removal(&d, removed);
            let diagram = d.without_ball(removed).expect("maximal cap right end");
            DsFactor {
                weight: diagram.weight(),
                parity: s.parity + z,
                removed_ball: removed,
            }
        })
        .collect();
    let result = DsResult { factors };
    debug_assert!(distinct_weights(&result));
    result
}

fn distinct_weights(r: &DsResult) -> bool {
    let mut seen: Vec<&DominantWeight> = r.factors.iter().map(|f| &f.weight).collect();
    seen.sort();
    seen.windows(2).all(|w| w[0] != w[1])
}

fn parity_of_removal(d: &WeightDiagram, removed: i64) -> Parity {
    Parity::of(d.balls_right_of(removed) as i64)
}

/// The parity shift attached to removing the `ball_index`-th ball (1-based):
/// `z = n - ball_index mod 2`, which must equal the parity of the number of
/// balls strictly to its right.
pub fn ds_z(d: &WeightDiagram, ball_index: usize) -> Result<Parity> {
    let n = d.rank();
    if ball_index == 0 || ball_index > n {
        return Err(Error::NotABall(ball_index as i64));
    }
    let pos = d.positions()[ball_index - 1];
    if !initial_segment_ok(d, pos)? {
        return Err(Error::NotRemovable(pos));
    }
    let z = Parity::of((n - ball_index) as i64);
    assert_eq!(z, parity_of_removal(d, pos));
    Ok(z)
}

/// An entry of the iterated-image multiset: a weight, a total parity, and
/// how many removal sequences reached it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IteratedFactor {
    pub weight: DominantWeight,
    pub parity: Parity,
    pub count: u64,
}

/// Applies [`ds`] `k` times, multiplying composition factors through, and
/// returns the resulting multiset keyed by `(weight, parity)`.
///
/// The signed content is recovered by [`signed_multiset`]; pairs of removal
/// orders that differ by swapping two maximal caps carry opposite parities
/// and cancel there.
pub fn ds_iterate(s: &SimpleModule, k: usize) -> Result<Vec<IteratedFactor>> {
    let n = s.rank();
    if k > n {
        return Err(Error::BadDepth { depth: k, rank: n });
    }
    let mut current: BTreeMap<(DominantWeight, Parity), u64> = BTreeMap::new();
    current.insert((s.weight.clone(), s.parity), 1);
    for _ in 0..k {
        let mut next: BTreeMap<(DominantWeight, Parity), u64> = BTreeMap::new();
        for ((weight, parity), count) in current {
            let step = ds(&SimpleModule { weight, parity });
            for factor in step.factors {
                *next.entry((factor.weight, factor.parity)).or_insert(0) += count;
            }
        }
        current = next;
    }
    Ok(current
        .into_iter()
        .map(|((weight, parity), count)| IteratedFactor {
            weight,
            parity,
            count,
        })
        .collect())
}

/// Collapses an iterated multiset to signed coefficients
/// `Σ (-1)^parity · count` per weight, dropping the weights that cancel.
pub fn signed_multiset(factors: &[IteratedFactor]) -> BTreeMap<DominantWeight, i64> {
    let mut out: BTreeMap<DominantWeight, i64> = BTreeMap::new();
    for f in factors {
        *out.entry(f.weight.clone()).or_insert(0) += f.parity.sign() * f.count as i64;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Whether the image of the simple module is itself simple: exactly one
/// maximal cap.
pub fn ds_is_simple(s: &SimpleModule) -> bool {
    caps(&s.weight.diagram()).maximal_caps().len() == 1
}
