//! Solid arrows, caps, the nesting poset and clusters of a weight diagram.
//!
//! A solid arrow runs from a ball at `j` to a position `i < j` whenever the
//! interval `[i, j-1]` balances to zero while every right sub-interval stays
//! non-negative. Caps pair each ball with the nearest free empty position on
//! its left; the resulting arcs are non-crossing and nest into a forest
//! order.

use crate::weight::WeightDiagram;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A solid arrow from the ball at `src` to the empty position `dst < src`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub src: i64,
    pub dst: i64,
}

/// A cap from the empty position `left` to the ball at `right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cap {
    pub left: i64,
    pub right: i64,
}

impl Cap {
    /// Nesting order: `self` is internal to `outer` if its interval is
    /// contained in `outer`'s.
    pub fn internal_to(&self, outer: &Cap) -> bool {
        self != outer && outer.left <= self.left && self.right <= outer.right
    }

    /// Whether the ball at `pos` lies strictly inside this cap.
    pub fn covers(&self, pos: i64) -> bool {
        self.left < pos && pos < self.right
    }
}

impl fmt::Display for Cap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// A cap of the augmented poset: either a real cap or the virtual greatest
/// element adjoined above all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CapRef {
    Virtual,
    Cap(Cap),
}

impl fmt::Display for CapRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapRef::Virtual => write!(f, "c_*"),
            CapRef::Cap(c) => write!(f, "{c}"),
        }
    }
}

/// A maximal run of consecutive balls, from `start` to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cluster {
    pub start: i64,
    pub end: i64,
}

/// The cap diagram of a weight diagram: one cap per ball, stored with the
/// nesting forest (parents and children by cap index).
///
/// Caps are indexed in order of their right end, which is also the order of
/// the balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapDiagram {
    base: WeightDiagram,
    caps: Vec<Cap>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    maximal: Vec<usize>,
}

impl CapDiagram {
    pub fn base(&self) -> &WeightDiagram {
        &self.base
    }

    pub fn caps(&self) -> &[Cap] {
        &self.caps
    }

    pub fn rank(&self) -> usize {
        self.caps.len()
    }

    /// Index of `cap` among the caps, or an error if it is not one of them.
    pub fn index_of(&self, cap: &Cap) -> Result<usize> {
        self.caps
            .iter()
            .position(|c| c == cap)
            .ok_or(Error::UnknownCap(cap.left, cap.right))
    }

    /// The caps not internal to any other, ordered by right end.
    pub fn maximal_caps(&self) -> Vec<Cap> {
        self.maximal.iter().map(|&i| self.caps[i]).collect()
    }

    /// Index of the cap whose nesting parent is `idx`'s immediate container,
    /// if any.
    pub fn parent_of(&self, idx: usize) -> Option<usize> {
        self.parent[idx]
    }

    /// Immediate children of a cap (or of the virtual cap, whose children are
    /// the maximal caps), ordered by right end.
    pub fn successors(&self, cap: &CapRef) -> Result<Vec<Cap>> {
        let indices = match cap {
            CapRef::Virtual => &self.maximal,
            CapRef::Cap(c) => &self.children[self.index_of(c)?],
        };
        Ok(indices.iter().map(|&i| self.caps[i]).collect())
    }

    /// Number of caps weakly internal to `cap`: the ball count of its
    /// interval for real caps, `n + 1` for the virtual cap.
    pub fn int_count(&self, cap: &CapRef) -> Result<i64> {
        match cap {
            CapRef::Virtual => Ok(self.rank() as i64 + 1),
            CapRef::Cap(c) => {
                self.index_of(c)?;
                Ok(self.base.balls_in(c.left, c.right))
            }
        }
    }

    /// Whether `int_count` of the cap is odd.
    pub fn is_odd(&self, cap: &CapRef) -> Result<bool> {
        Ok(self.int_count(cap)? % 2 == 1)
    }

    /// The augmented poset: every real cap by right end, then the virtual cap.
    pub fn augmented(&self) -> impl Iterator<Item = CapRef> + '_ {
        self.caps
            .iter()
            .map(|&c| CapRef::Cap(c))
            .chain(std::iter::once(CapRef::Virtual))
    }

    /// Nesting depth of each cap: the number of caps strictly containing it.
    pub fn depths(&self) -> Vec<usize> {
        let mut depths = vec![0; self.caps.len()];
        // Parents have larger right ends, so a reverse pass sees them first.
        for i in (0..self.caps.len()).rev() {
            if let Some(p) = self.parent[i] {
                depths[i] = depths[p] + 1;
            }
        }
        depths
    }

    /// Arc height of each cap: 1 for innermost caps, growing outward.
    pub fn heights(&self) -> Vec<usize> {
        let mut heights = vec![1; self.caps.len()];
        for i in 0..self.caps.len() {
            for &c in &self.children[i] {
                heights[i] = heights[i].max(heights[c] + 1);
            }
        }
        heights
    }
}

/// All solid arrows of a diagram, sorted by `(src, dst)`.
pub fn arrows(d: &WeightDiagram) -> Vec<Arrow> {
    let mut out = Vec::new();
    for &j in d.positions() {
        // Walk s down from j-1 keeping the running balance r(j, s); an arrow
        // ends at the first empty positions where the balance hits zero, and
        // no arrow extends past a negative balance.
        let mut running = 0i64;
        let mut s = j - 1;
        loop {
            running += d.sign(s);
            if running < 0 {
                break;
            }
            if running == 0 && !d.ball(s) {
                out.push(Arrow { src: j, dst: s });
            }
            s -= 1;
        }
    }
    out.sort();
    out
}

/// Arrows with nothing above them: no other arrow spans at least as far on
/// both sides.
pub fn maximal_arrows(all: &[Arrow]) -> Vec<Arrow> {
    all.iter()
        .filter(|a| {
            !all.iter()
                .any(|b| b != *a && b.dst <= a.dst && b.src >= a.src)
        })
        .copied()
        .collect()
}

/// Builds the cap diagram: balls are processed left to right and matched to
/// the nearest empty position on the left not yet used by a cap.
pub fn caps(d: &WeightDiagram) -> CapDiagram {
    let n = d.rank();
    let mut caps = Vec::with_capacity(n);
    if n > 0 {
        let lo = d.min_position().unwrap() - n as i64;
        let hi = d.max_position().unwrap();
        // Classic bracket matching: empty positions are openers, balls close
        // the most recent unmatched one. Padding n positions on the left
        // guarantees the stack never underflows.
        let mut free: Vec<i64> = Vec::new();
        for p in lo..=hi {
            if d.ball(p) {
                let left = free.pop().expect("left padding exhausted");
                caps.push(Cap { left, right: p });
            } else {
                free.push(p);
            }
        }
    }

    // Nesting parents by interval scan: left ends open caps, right ends close
    // the innermost open one.
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut maximal = Vec::new();
    if n > 0 {
        let mut by_left: Vec<usize> = (0..n).collect();
        by_left.sort_by_key(|&i| caps[i].left);
        let mut open: Vec<usize> = Vec::new();
        let mut next_open = by_left.into_iter().peekable();
        let lo = caps.iter().map(|c| c.left).min().unwrap();
        let hi = caps.last().unwrap().right;
        for p in lo..=hi {
            if let Some(&i) = next_open.peek() {
                if caps[i].left == p {
                    next_open.next();
                    if let Some(&top) = open.last() {
                        parent[i] = Some(top);
                        children[top].push(i);
                    } else {
                        maximal.push(i);
                    }
                    open.push(i);
                }
            }
            if d.ball(p) {
                let closed = open.pop().expect("cap stack underflow");
                debug_assert_eq!(caps[closed].right, p);
            }
        }
        debug_assert!(open.is_empty());
        for list in &mut children {
            list.sort_by_key(|&i| caps[i].right);
        }
        maximal.sort_by_key(|&i| caps[i].right);
    }

    let cd = CapDiagram {
        base: d.clone(),
        caps,
        parent,
        children,
        maximal,
    };
    debug_assert!(cd.check_invariants());
    cd
}

impl CapDiagram {
    /// One cap per ball, non-crossing, balanced intervals.
    fn check_invariants(&self) -> bool {
        let rights: Vec<i64> = self.caps.iter().map(|c| c.right).collect();
        if rights != self.base.positions() {
            return false;
        }
        for c in &self.caps {
            if self.base.ball(c.left) || !self.base.ball(c.right) {
                return false;
            }
            // Balanced interval: as many balls as empty positions.
            let len = c.right - c.left + 1;
            if 2 * self.base.balls_in(c.left, c.right) != len {
                return false;
            }
        }
        for (i, a) in self.caps.iter().enumerate() {
            for b in self.caps.iter().skip(i + 1) {
                let disjoint = a.right < b.left || b.right < a.left;
                if !(disjoint || a.internal_to(b) || b.internal_to(a)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether the ball at `i` is removable: every segment starting just past it
/// balances to at most zero. Equivalently no solid arrow ends at `i + 1` and
/// `i + 1` is empty.
pub fn initial_segment_ok(d: &WeightDiagram, i: i64) -> Result<bool> {
    if !d.ball(i) {
        return Err(Error::NotABall(i));
    }
    let hi = d.max_position().unwrap();
    let mut running = 0i64;
    let mut ok = true;
    // running = r(j, i+1) for j = s+1 as s walks right; past the last ball
    // the balance only decreases, so stopping at hi is exhaustive.
    for s in i + 1..=hi {
        running += d.sign(s);
        if running > 0 {
            ok = false;
            break;
        }
    }
    // The arrow formulation must agree: i+1 empty and no arrow ending there.
    let arrow_form = !d.ball(i + 1) && !arrows(d).iter().any(|a| a.dst == i + 1);
    assert_eq!(ok, arrow_form, "segment and arrow criteria disagree at {i}");
    Ok(ok)
}

/// Maximal runs of consecutive balls, left to right.
pub fn clusters(d: &WeightDiagram) -> Vec<Cluster> {
    let mut out = Vec::new();
    let mut current: Option<Cluster> = None;
    for &p in d.positions() {
        match current {
            Some(ref mut c) if c.end + 1 == p => c.end = p,
            Some(c) => {
                out.push(c);
                current = Some(Cluster { start: p, end: p });
            }
            None => current = Some(Cluster { start: p, end: p }),
        }
    }
    if let Some(c) = current {
        out.push(c);
    }
    out
}
