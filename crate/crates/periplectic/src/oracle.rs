//! Independent brute-force references used to validate every closed
//! formula, and the exhaustive corpus sweep that runs them side by side.

use crate::cap::{arrows, caps, initial_segment_ok, maximal_arrows, Arrow, CapRef};
use crate::ds::{ds, SimpleModule};
use crate::duality::{cover_counts, dagger, dagger_via_dab, star};
use crate::forest::{block_index, forest, is_worthy, sdim, RootedForest};
use crate::weight::{enumerate_diagrams, Parity, WeightDiagram};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Display;

/// Default node cap for exhaustive heap-ordering counts.
pub const HEAP_COUNT_CAP: usize = 20;

/// Counts heap-orderings of a rooted forest by exhaustive backtracking over
/// the available minimal nodes, with memoization on the set of placed nodes.
pub fn heap_ordering_count(f: &RootedForest) -> Result<BigUint> {
    heap_ordering_count_capped(f, HEAP_COUNT_CAP)
}

pub fn heap_ordering_count_capped(f: &RootedForest, cap: usize) -> Result<BigUint> {
    let size = f.size();
    if size > cap.min(33) {
        return Err(Error::CorpusTooLarge {
            size,
            cap: cap.min(33),
        });
    }
    let mut memo: HashMap<u64, u128> = HashMap::new();
    let full: u64 = (1u64 << size) - 1;
    let count = count_orders(f, full, &mut memo);
    Ok(BigUint::from(count))
}

fn count_orders(f: &RootedForest, remaining: u64, memo: &mut HashMap<u64, u128>) -> u128 {
    if remaining == 0 {
        return 1;
    }
    if let Some(&hit) = memo.get(&remaining) {
        return hit;
    }
    let mut total = 0u128;
    for v in 0..f.size() {
        let bit = 1u64 << v;
        if remaining & bit == 0 {
            continue;
        }
        // v is available when its parent has already been placed.
        let available = match f.parent[v] {
            Some(p) => remaining & (1u64 << p) == 0,
            None => true,
        };
        if available {
            total += count_orders(f, remaining & !bit, memo);
        }
    }
    memo.insert(remaining, total);
    total
}

/// Superdimension by the rank recursion: the signed sum over maximal-cap
/// removals, memoized on translation-normalized diagrams, with the rank-0
/// diagram contributing 1.
pub fn sdim_recursive(d: &WeightDiagram) -> BigInt {
    let mut memo: HashMap<Vec<i64>, BigInt> = HashMap::new();
    sdim_recursive_memo(d, &mut memo)
}

fn sdim_recursive_memo(d: &WeightDiagram, memo: &mut HashMap<Vec<i64>, BigInt>) -> BigInt {
    if d.rank() == 0 {
        return BigInt::one();
    }
    let key = d.normalized().positions().to_vec();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut total = BigInt::zero();
    for c in caps(d).maximal_caps() {
        let removed = c.right;
        let z = Parity::of(d.balls_right_of(removed) as i64);
        let sub = d.without_ball(removed).expect("cap right end is a ball");
        total += z.sign() * sdim_recursive_memo(&sub, memo);
    }
    memo.insert(key, total.clone());
    total
}

/// One violated property, reported with the diagram and both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyFailure {
    pub diagram: WeightDiagram,
    pub property: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of a corpus sweep: how many diagrams were checked and every
/// failure found, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checked: u64,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every cross-check over all normalized diagrams of rank `1..=n_max`
/// within `span`. Failures are collected, never raised; the report is
/// identical for any worker count.
pub fn verify_corpus(n_max: usize, span: i64, jobs: usize) -> Result<VerifyReport> {
    let mut diagrams = Vec::new();
    for n in 1..=n_max {
        if span < n as i64 {
            return Err(Error::EmptyCorpus { n, span });
        }
        diagrams.extend(enumerate_diagrams(n, span)?);
    }
    let checked = diagrams.len() as u64;
    let jobs = jobs.max(1).min(diagrams.len().max(1));

    let mut failures = if jobs == 1 {
        let mut memo = HashMap::new();
        diagrams
            .iter()
            .flat_map(|d| check_diagram(d, &mut memo))
            .collect::<Vec<_>>()
    } else {
        // Workers own disjoint chunks and private memo tables; the memo is
        // only a cache, so the merged result is independent of the split.
        let chunk = diagrams.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = diagrams
                .chunks(chunk)
                .map(|slice| {
                    scope.spawn(move || {
                        let mut memo = HashMap::new();
                        slice
                            .iter()
                            .flat_map(|d| check_diagram(d, &mut memo))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("verify worker panicked"))
                .collect::<Vec<_>>()
        })
    };

    failures.sort_by(|a, b| {
        (a.diagram.rank(), a.diagram.positions(), &a.property).cmp(&(
            b.diagram.rank(),
            b.diagram.positions(),
            &b.property,
        ))
    });
    Ok(VerifyReport { checked, failures })
}

fn fail<E: Display, G: Display>(
    out: &mut Vec<VerifyFailure>,
    d: &WeightDiagram,
    property: &str,
    expected: E,
    got: G,
) {
    out.push(VerifyFailure {
        diagram: d.clone(),
        property: property.to_string(),
        expected: expected.to_string(),
        got: got.to_string(),
    });
}

/// All per-diagram properties. The memo is shared across diagrams of one
/// worker to keep the recursive superdimension cheap.
fn check_diagram(d: &WeightDiagram, memo: &mut HashMap<Vec<i64>, BigInt>) -> Vec<VerifyFailure> {
    let mut out = Vec::new();
    let cd = caps(d);
    let all_arrows = arrows(d);
    let max_arrows = maximal_arrows(&all_arrows);
    let maximal = cd.maximal_caps();
    let module = SimpleModule::even(d.weight());
    let ds_result = ds(&module);
    let closed_sdim = sdim(&module);
    let recursive_sdim = sdim_recursive_memo(d, memo);
    let worthy = is_worthy(&cd);

    // Closed formula against the rank recursion.
    if closed_sdim != recursive_sdim {
        fail(
            &mut out,
            d,
            "sdim-forest-vs-recursive",
            &recursive_sdim,
            &closed_sdim,
        );
    }

    // Worthiness captures exactly the nonzero superdimensions.
    if worthy != (!recursive_sdim.is_zero()) {
        fail(
            &mut out,
            d,
            "worthy-iff-sdim-nonzero",
            !recursive_sdim.is_zero(),
            worthy,
        );
    }

    // Factor count is the maximal-cap count, and weights are distinct.
    if ds_result.factors.len() != maximal.len() {
        fail(
            &mut out,
            d,
            "factor-count",
            maximal.len(),
            ds_result.factors.len(),
        );
    }
    let mut weights: Vec<_> = ds_result.factors.iter().map(|f| &f.weight).collect();
    weights.sort();
    if weights.windows(2).any(|w| w[0] == w[1]) {
        fail(
            &mut out,
            d,
            "factors-distinct",
            "pairwise distinct weights",
            "duplicate",
        );
    }

    // A ball is removable exactly when it ends a maximal cap.
    for &p in d.positions() {
        let isc = initial_segment_ok(d, p).expect("p is a ball");
        let ends_maximal = maximal.iter().any(|c| c.right == p);
        if isc != ends_maximal {
            fail(&mut out, d, "isc-iff-maximal-cap-end", ends_maximal, isc);
        }
    }

    // Every maximal cap wider than one slot carries a maximal arrow into the
    // slot right of its left end.
    for c in &maximal {
        if c.left + 1 == c.right {
            continue;
        }
        let expected = Arrow {
            src: c.right,
            dst: c.left + 1,
        };
        if !all_arrows.contains(&expected) {
            fail(
                &mut out,
                d,
                "max-cap-arrow",
                format!("arrow {}->{}", c.right, c.left + 1),
                "absent",
            );
        } else if !max_arrows.contains(&expected) {
            fail(
                &mut out,
                d,
                "max-cap-arrow",
                format!("{}->{} maximal", c.right, c.left + 1),
                "not maximal",
            );
        }
    }

    // Parity bookkeeping of the augmented poset.
    for cap in cd.augmented() {
        let odd_succ = cd
            .successors(&cap)
            .expect("cap of this diagram")
            .into_iter()
            .filter(|c| cd.is_odd(&CapRef::Cap(*c)).unwrap())
            .count();
        let cap_odd = cd.is_odd(&cap).unwrap();
        if cap_odd != (odd_succ % 2 == 0) {
            fail(
                &mut out,
                d,
                "odd-even-caps",
                format!("cap {cap} successor parity"),
                odd_succ,
            );
        }
    }

    // Kac-Wakimoto: worthy weights live in the expected blocks.
    if !crate::forest::kw_check(d) {
        fail(
            &mut out,
            d,
            "kw-block",
            "k in {0} or {-1,+1} by rank parity",
            block_index(d),
        );
    }

    // The two dagger computations agree.
    let via_arrows = dagger(d);
    let via_dab = dagger_via_dab(d);
    if via_arrows != via_dab {
        fail(&mut out, d, "dagger-via-dab", &via_arrows, &via_dab);
    }

    // Duality is an involution.
    let twice = star(&star(d));
    if &twice != d {
        fail(&mut out, d, "star-involution", d, &twice);
    }

    // Leftmost-ball displacement under dagger.
    let m1 = cover_counts(&cd).counts[0] as i64;
    let displaced = via_arrows.min_position().unwrap() - d.min_position().unwrap();
    if displaced != d.rank() as i64 - m1 - 1 {
        fail(
            &mut out,
            d,
            "first-ball-displacement",
            d.rank() as i64 - m1 - 1,
            displaced,
        );
    }

    // Superdimension is conserved by the factor decomposition (both sides by
    // the closed formula, so this is independent of the recursion above).
    let mut conserved = BigInt::zero();
    for f in &ds_result.factors {
        conserved += f.parity.sign() * sdim(&SimpleModule::even(f.weight.clone()));
    }
    if conserved != closed_sdim {
        fail(&mut out, d, "sdim-conservation", &closed_sdim, &conserved);
    }

    if worthy {
        let f = forest(&cd).expect("worthy weight");
        let formula = f.heap_count_formula();

        // Exhaustive heap-ordering count against the quotient formula.
        match heap_ordering_count(&f) {
            Ok(count) => {
                if count != formula {
                    fail(&mut out, d, "heap-count", &formula, &count);
                }
            }
            Err(e) => fail(&mut out, d, "heap-count", &formula, e),
        }

        // Deletion identity over the roots.
        let mut sum = BigUint::zero();
        for v in f.roots() {
            sum += f.remove_root(v).expect("root").heap_count_formula();
        }
        if f.size() > 0 && sum != formula {
            fail(&mut out, d, "forest-deletion-identity", &formula, &sum);
        }

        // Rank-parity structure of the recursion steps.
        let odd_maximal: Vec<_> = maximal
            .iter()
            .filter(|c| cd.is_odd(&CapRef::Cap(**c)).unwrap())
            .collect();
        if d.rank() % 2 == 1 {
            // Odd rank: a unique odd maximal cap, removed with sign +1 and
            // no change to the superdimension.
            if odd_maximal.len() != 1 {
                fail(
                    &mut out,
                    d,
                    "odd-step-sign",
                    "one odd maximal cap",
                    odd_maximal.len(),
                );
            } else {
                let c = odd_maximal[0];
                let z = Parity::of(d.balls_right_of(c.right) as i64);
                let sub = d.without_ball(c.right).expect("ball");
                if z != Parity::Even {
                    fail(&mut out, d, "odd-step-sign", "z = 0", z);
                } else if sdim_recursive_memo(&sub, memo) != recursive_sdim {
                    fail(
                        &mut out,
                        d,
                        "odd-step-sign",
                        &recursive_sdim,
                        sdim_recursive_memo(&sub, memo),
                    );
                }
            }
        } else if d.rank() > 0 {
            // Even rank: every (maximal even cap, odd successor) pair is
            // removed with total sign +1.
            for c in &maximal {
                let odd_succ: Vec<_> = cd
                    .successors(&CapRef::Cap(*c))
                    .unwrap()
                    .into_iter()
                    .filter(|s| cd.is_odd(&CapRef::Cap(*s)).unwrap())
                    .collect();
                if odd_succ.len() != 1 {
                    fail(
                        &mut out,
                        d,
                        "even-pair-sign",
                        "one odd successor",
                        odd_succ.len(),
                    );
                    continue;
                }
                let z1 = Parity::of(d.balls_right_of(c.right) as i64);
                let mid = d.without_ball(c.right).expect("ball");
                let z2 = Parity::of(mid.balls_right_of(odd_succ[0].right) as i64);
                if z1 + z2 != Parity::Even {
                    fail(
                        &mut out,
                        d,
                        "even-pair-sign",
                        "z1 + z2 = 0",
                        format!("{}", z1 + z2),
                    );
                }
            }
        }
    }

    out
}
