//! Dominant integral weights of `p(n)` and their weight diagrams.
//!
//! A dominant weight is a non-decreasing integer tuple `(λ_1, ..., λ_n)`.
//! Adding the staircase shift `i - 1` to the i-th coefficient produces a
//! strictly increasing tuple of *ball positions* on the integer line; that
//! labeling of the line is the weight diagram. Rank 0 (the empty weight) is
//! allowed as the ground case of the rank recursion.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An element of `Z/2Z`, used for the parity of highest weight vectors and
/// the exponent of the parity-shift functor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of an arbitrary signed integer.
    pub fn of(value: i64) -> Self {
        if value.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// The sign `(-1)^p`.
    pub fn sign(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl TryFrom<u8> for Parity {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            other => Err(Error::Parse {
                field: "parity",
                reason: format!("expected 0 or 1, got {other}"),
            }),
        }
    }
}

impl From<Parity> for u8 {
    fn from(p: Parity) -> u8 {
        p.as_u8()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// A dominant integral weight: a non-decreasing tuple of integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DominantWeight {
    coeffs: Vec<i64>,
}

impl DominantWeight {
    /// Builds a weight from its coefficient tuple, rejecting non-monotone
    /// input.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidWeight(format!(
                "coefficients must be non-decreasing: {coeffs:?}"
            )));
        }
        Ok(DominantWeight { coeffs })
    }

    /// The zero weight of rank `n`.
    pub fn zero(n: usize) -> Self {
        DominantWeight { coeffs: vec![0; n] }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Ball positions `λ_i + (i - 1)`; strictly increasing by construction.
    pub fn diagram(&self) -> WeightDiagram {
        let positions = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c + i as i64)
            .collect();
        WeightDiagram { positions }
    }

    /// Parses the comma-separated text form, e.g. `"0,0,1,3,3,6,8,8,8"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = parse_comma_ints(text, "coeffs")?;
        if coeffs.is_empty() {
            return Err(Error::Parse {
                field: "coeffs",
                reason: "empty weight".into(),
            });
        }
        DominantWeight::new(coeffs).map_err(|_| Error::Parse {
            field: "coeffs",
            reason: "not non-decreasing".into(),
        })
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = Error;

    fn try_from(coeffs: Vec<i64>) -> Result<Self> {
        DominantWeight::new(coeffs).map_err(|_| Error::Parse {
            field: "coeffs",
            reason: "not non-decreasing".into(),
        })
    }
}

impl From<DominantWeight> for Vec<i64> {
    fn from(w: DominantWeight) -> Vec<i64> {
        w.coeffs
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A weight diagram: the strictly increasing ball positions on the integer
/// line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightDiagram {
    positions: Vec<i64>,
}

impl WeightDiagram {
    pub fn new(positions: Vec<i64>) -> Result<Self> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWeight(format!(
                "positions must be strictly increasing: {positions:?}"
            )));
        }
        Ok(WeightDiagram { positions })
    }

    pub fn rank(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    /// Inverse of [`DominantWeight::diagram`]: subtracts the staircase shift.
    pub fn weight(&self) -> DominantWeight {
        let coeffs = self
            .positions
            .iter()
            .enumerate()
            .map(|(i, &p)| p - i as i64)
            .collect();
        // Strictly increasing positions force non-decreasing coefficients.
        DominantWeight { coeffs }
    }

    /// Indicator of a ball at position `i` (the function `f`).
    pub fn ball(&self, i: i64) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    /// The sign function `g`: `+1` on balls, `-1` on empty positions.
    pub fn sign(&self, i: i64) -> i64 {
        if self.ball(i) {
            1
        } else {
            -1
        }
    }

    /// The balance `r(j, i) = Σ_{s=i}^{j-1} g(s)` for `i < j`.
    pub fn balance(&self, j: i64, i: i64) -> Result<i64> {
        if i >= j {
            return Err(Error::BadRange { i, j });
        }
        // Count of balls in [i, j-1] minus count of empty positions there.
        let balls = self.balls_in(i, j - 1);
        let len = j - i;
        Ok(2 * balls - len)
    }

    /// Number of balls in the closed interval `[lo, hi]`.
    pub fn balls_in(&self, lo: i64, hi: i64) -> i64 {
        if lo > hi {
            return 0;
        }
        let a = self.positions.partition_point(|&p| p < lo);
        let b = self.positions.partition_point(|&p| p <= hi);
        (b - a) as i64
    }

    /// Number of balls strictly to the right of `pos`.
    pub fn balls_right_of(&self, pos: i64) -> usize {
        self.rank() - self.positions.partition_point(|&p| p <= pos)
    }

    pub fn min_position(&self) -> Option<i64> {
        self.positions.first().copied()
    }

    pub fn max_position(&self) -> Option<i64> {
        self.positions.last().copied()
    }

    /// Translates every ball by `offset`.
    pub fn translated(&self, offset: i64) -> WeightDiagram {
        WeightDiagram {
            positions: self.positions.iter().map(|&p| p + offset).collect(),
        }
    }

    /// Translates the diagram so the leftmost ball sits at 0. Identity on the
    /// empty diagram.
    pub fn normalized(&self) -> WeightDiagram {
        match self.min_position() {
            Some(m) => self.translated(-m),
            None => self.clone(),
        }
    }

    /// Removes the ball at `pos`, dropping the rank by one.
    pub fn without_ball(&self, pos: i64) -> Result<WeightDiagram> {
        let idx = self
            .positions
            .binary_search(&pos)
            .map_err(|_| Error::NotABall(pos))?;
        let mut positions = self.positions.clone();
        positions.remove(idx);
        Ok(WeightDiagram { positions })
    }

    /// Moves a ball from `from` to the empty position `to`.
    pub fn with_ball_moved(&self, from: i64, to: i64) -> Result<WeightDiagram> {
        if !self.ball(from) {
            return Err(Error::NotABall(from));
        }
        if self.ball(to) {
            return Err(Error::InvalidWeight(format!(
                "target position {to} is already a ball"
            )));
        }
        let mut positions = self.positions.clone();
        positions.retain(|&p| p != from);
        let idx = positions.partition_point(|&p| p < to);
        positions.insert(idx, to);
        Ok(WeightDiagram { positions })
    }

    /// Parses the `@`-prefixed text form, e.g. `"@0,1,3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let body = text.strip_prefix('@').ok_or(Error::Parse {
            field: "positions",
            reason: "diagram form must start with '@'".into(),
        })?;
        let positions = parse_comma_ints(body, "positions")?;
        if positions.is_empty() {
            return Err(Error::Parse {
                field: "positions",
                reason: "empty diagram".into(),
            });
        }
        WeightDiagram::new(positions).map_err(|_| Error::Parse {
            field: "positions",
            reason: "not strictly increasing".into(),
        })
    }
}

impl TryFrom<Vec<i64>> for WeightDiagram {
    type Error = Error;

    fn try_from(positions: Vec<i64>) -> Result<Self> {
        WeightDiagram::new(positions).map_err(|_| Error::Parse {
            field: "positions",
            reason: "not strictly increasing".into(),
        })
    }
}

impl From<WeightDiagram> for Vec<i64> {
    fn from(d: WeightDiagram) -> Vec<i64> {
        d.positions
    }
}

impl fmt::Display for WeightDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "@{}", parts.join(","))
    }
}

fn parse_comma_ints(text: &str, field: &'static str) -> Result<Vec<i64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|e| Error::Parse {
                field,
                reason: format!("`{}`: {e}", part.trim()),
            })
        })
        .collect()
}

/// Enumerates every rank-`n` diagram whose balls lie in `{0, ..., span}` and
/// whose leftmost ball sits at 0, in lexicographic order.
///
/// Diagrams are normalized this way because every statistic downstream (caps,
/// forest shape, superdimension) is translation-invariant.
pub fn enumerate_diagrams(n: usize, span: i64) -> Result<DiagramIter> {
    if n == 0 || span < n as i64 {
        return Err(Error::EmptyCorpus { n, span });
    }
    Ok(DiagramIter {
        n,
        span,
        state: None,
        done: false,
    })
}

/// Total number of diagrams [`enumerate_diagrams`] will yield: `C(span, n-1)`.
pub fn corpus_size(n: usize, span: i64) -> u128 {
    binomial(span as u128, (n - 1) as u128)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // Saturate instead of overflowing; callers only compare against
        // budget limits far below the saturation point.
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Lexicographic stream over the normalized corpus of a fixed rank.
pub struct DiagramIter {
    n: usize,
    span: i64,
    // Tail positions (excluding the fixed leading 0), strictly increasing in 1..=span.
    state: Option<Vec<i64>>,
    done: bool,
}

impl Iterator for DiagramIter {
    type Item = WeightDiagram;

    fn next(&mut self) -> Option<WeightDiagram> {
        if self.done {
            return None;
        }
        let k = self.n - 1;
        match &mut self.state {
            None => {
                let first: Vec<i64> = (1..=k as i64).collect();
                self.state = Some(first);
            }
            Some(tail) => {
                // Advance to the next k-combination of {1..span}.
                let mut i = k;
                loop {
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    if tail[i] < self.span - (k - 1 - i) as i64 {
                        tail[i] += 1;
                        for j in i + 1..k {
                            tail[j] = tail[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        let tail = self.state.as_ref().unwrap();
        let mut positions = Vec::with_capacity(self.n);
        positions.push(0);
        positions.extend_from_slice(tail);
        Some(WeightDiagram { positions })
    }
}
