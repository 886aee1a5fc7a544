//! Worthiness, the rooted forest of a worthy weight, forest factorials and
//! the closed-form superdimension.
//!
//! Caps are graded by the parity of their internal count, with the virtual
//! cap counting `n + 1`. A weight is worthy when no cap of the augmented
//! poset has two odd successors; exactly the worthy weights have nonzero
//! superdimension, computed as `|F|!/F!` over the rooted forest that pairs
//! each even cap with its unique odd successor.

use crate::cap::{Cap, CapDiagram, CapRef};
use crate::ds::SimpleModule;
use crate::weight::{Parity, WeightDiagram};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// A forest node: an even cap of the augmented poset together with its
/// unique odd successor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestNode {
    pub even_cap: CapRef,
    pub odd_cap: Cap,
}

/// The rooted forest of a worthy weight. Nodes are stored with their parent
/// links; roots have no parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedForest {
    pub nodes: Vec<ForestNode>,
    pub parent: Vec<Option<usize>>,
}

impl RootedForest {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&v| self.parent[v].is_none())
            .collect()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.size())
            .filter(|&w| self.parent[w] == Some(v))
            .collect()
    }

    /// Size of the subtree rooted at each node.
    pub fn subtree_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![1u64; self.size()];
        let order = self.topological();
        for &v in order.iter().rev() {
            if let Some(p) = self.parent[v] {
                sizes[p] += sizes[v];
            }
        }
        sizes
    }

    /// Parents before children.
    fn topological(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.size());
        let mut stack = self.roots();
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children(v));
        }
        assert_eq!(order.len(), self.size(), "forest has a parent cycle");
        order
    }

    /// The forest factorial: the product of all subtree sizes.
    pub fn factorial(&self) -> BigUint {
        self.subtree_sizes()
            .iter()
            .fold(BigUint::one(), |acc, &s| acc * BigUint::from(s))
    }

    /// `|F|! / F!`, the number of heap-orderings by the closed formula.
    pub fn heap_count_formula(&self) -> BigUint {
        let total = factorial(self.size() as u64);
        let divisor = self.factorial();
        debug_assert!((&total % &divisor).is_zero());
        total / divisor
    }

    /// Removes a root together with its edges; its children become roots.
    pub fn remove_root(&self, v: usize) -> Result<RootedForest> {
        if v >= self.size() || self.parent[v].is_some() {
            return Err(Error::InvalidWeight(format!("node {v} is not a root")));
        }
        let mut nodes = Vec::with_capacity(self.size() - 1);
        let mut remap = vec![usize::MAX; self.size()];
        for (i, node) in self.nodes.iter().enumerate() {
            if i != v {
                remap[i] = nodes.len();
                nodes.push(*node);
            }
        }
        let parent = (0..self.size())
            .filter(|&i| i != v)
            .map(|i| match self.parent[i] {
                Some(p) if p != v => Some(remap[p]),
                _ => None,
            })
            .collect();
        Ok(RootedForest { nodes, parent })
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Whether every cap of the augmented poset has at most one odd successor.
pub fn is_worthy(cd: &CapDiagram) -> bool {
    worthiness_witness(cd).is_none()
}

/// The first cap of the augmented poset with at least two odd successors,
/// together with those successors; `None` when the weight is worthy.
pub fn worthiness_witness(cd: &CapDiagram) -> Option<(CapRef, Vec<Cap>)> {
    for cap in cd.augmented() {
        let odd: Vec<Cap> = cd
            .successors(&cap)
            .expect("cap from the diagram itself")
            .into_iter()
            .filter(|c| cd.is_odd(&CapRef::Cap(*c)).unwrap())
            .collect();
        if odd.len() >= 2 {
            return Some((cap, odd));
        }
    }
    None
}

/// Builds the rooted forest of a worthy weight.
///
/// Nodes pair each even cap of the augmented poset (including the virtual
/// cap when the rank is odd) with its unique odd successor; a node's parent
/// is the node containing the cap that immediately encloses its even cap.
pub fn forest(cd: &CapDiagram) -> Result<RootedForest> {
    if !is_worthy(cd) {
        return Err(Error::NotWorthy);
    }
    let n = cd.rank();

    // Even caps in right-end order, the virtual cap last when it is even.
    let mut evens: Vec<CapRef> = cd
        .caps()
        .iter()
        .filter(|c| !cd.is_odd(&CapRef::Cap(**c)).unwrap())
        .map(|c| CapRef::Cap(*c))
        .collect();
    if !cd.is_odd(&CapRef::Virtual).unwrap() {
        evens.push(CapRef::Virtual);
    }

    let mut nodes = Vec::with_capacity(evens.len());
    for even_cap in evens {
        let odd: Vec<Cap> = cd
            .successors(&even_cap)?
            .into_iter()
            .filter(|c| cd.is_odd(&CapRef::Cap(*c)).unwrap())
            .collect();
        // Every even cap has an odd number of odd successors, so a worthy
        // weight gives exactly one.
        assert_eq!(odd.len(), 1, "even cap {even_cap} of a worthy weight");
        nodes.push(ForestNode {
            even_cap,
            odd_cap: odd[0],
        });
    }
    assert_eq!(nodes.len(), n.div_ceil(2));

    // The node owning each cap: even caps as the first component, odd caps
    // as the second.
    let owner_of = |cap: &CapRef| -> Option<usize> {
        nodes.iter().position(|node| {
            node.even_cap == *cap || matches!(cap, CapRef::Cap(c) if node.odd_cap == *c)
        })
    };

    let parent = nodes
        .iter()
        .map(|node| {
            let enclosing = match node.even_cap {
                CapRef::Virtual => return None,
                CapRef::Cap(c) => {
                    let idx = cd.index_of(&c).expect("node cap");
                    match cd.parent_of(idx) {
                        Some(p) => CapRef::Cap(cd.caps()[p]),
                        None => CapRef::Virtual,
                    }
                }
            };
            owner_of(&enclosing)
        })
        .collect();

    Ok(RootedForest { nodes, parent })
}

/// Superdimension of a simple module: zero unless the weight is worthy, and
/// otherwise `(-1)^parity |F|!/F!`.
pub fn sdim(s: &SimpleModule) -> BigInt {
    let cd = crate::cap::caps(&s.weight.diagram());
    match forest(&cd) {
        Err(_) => BigInt::zero(),
        Ok(f) => {
            let magnitude = BigInt::from(f.heap_count_formula());
            if s.parity == Parity::Odd {
                -magnitude
            } else {
                magnitude
            }
        }
    }
}

/// The block index `k = Σ (-1)^p` over ball positions.
pub fn block_index(d: &WeightDiagram) -> i64 {
    d.positions().iter().map(|&p| Parity::of(p).sign()).sum()
}

/// The Kac-Wakimoto consistency check for one diagram: a worthy weight must
/// sit in block 0 for even rank and in block ±1 for odd rank.
pub fn kw_check(d: &WeightDiagram) -> bool {
    let cd = crate::cap::caps(d);
    if !is_worthy(&cd) {
        return true;
    }
    let k = block_index(d);
    if d.rank().is_multiple_of(2) {
        k == 0
    } else {
        k == 1 || k == -1
    }
}
