//! Integer partitions and bipartitions.
//!
//! Row indices are 1-based throughout, matching the usual combinatorial
//! formulas, and [`Partition::part`] returns 0 past the last row so that
//! expressions like `mu.part(i) + nu.part(i)` need no bounds checks.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// `Ord` is the lexicographic order on the part vectors, which is what the
/// enumeration routines below use as a tie-break.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts, dropping trailing
    /// zeros. Errors if the parts increase anywhere.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Builds a partition from parts in any order, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The i-th part, 1-based; 0 when `i` exceeds the number of rows.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "rows are indexed from 1");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Componentwise sum of two partitions.
    pub fn add(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        let parts = (1..=n).map(|i| self.part(i) + other.part(i)).collect();
        Partition { parts }
    }

    /// Multiset union of the parts of both partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    /// Conjugate partition: column lengths of the Young diagram.
    pub fn transpose(&self) -> Partition {
        let cols = self.part(1);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// The statistic `n(lambda) = sum (i-1) lambda_i`.
    pub fn n_stat(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }

    /// Young diagram containment, componentwise `>=`.
    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Removes one box from row `row` (1-based). Errors if the result is not
    /// a partition, i.e. the row is empty or as long as the next one.
    pub fn remove_box(&self, row: usize) -> Result<Partition> {
        let p = self.part(row);
        if p == 0 || p == self.part(row + 1) {
            return Err(Error::Invalid(format!(
                "no removable box in row {row} of {self}"
            )));
        }
        let mut parts = self.parts.clone();
        parts[row - 1] -= 1;
        Partition::new(parts)
    }

    /// Removes the bottom box of column `col`: one box from the last row of
    /// length at least `col`. Errors if the column is empty.
    pub fn remove_column_box(&self, col: usize) -> Result<Partition> {
        assert!(col >= 1, "columns are indexed from 1");
        let row = (1..=self.len()).rev().find(|&i| self.part(i) >= col);
        match row {
            Some(r) => self.remove_box(r),
            None => Err(Error::Invalid(format!(
                "column {col} of {self} is empty"
            ))),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{s}")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses "5,3,1". The empty string and "0" both denote the empty
    /// partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// All partitions of `k` in descending lexicographic order, so `(k)` first
/// and `(1,...,1)` last.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, stack: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: stack.clone(),
            });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            stack.push(p);
            rec(remaining - p, p, stack, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k.max(1), &mut Vec::new(), &mut out);
    out
}

/// Which component of a bipartition a box belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "mu"),
            Side::Right => write!(f, "nu"),
        }
    }
}

/// An ordered pair of partitions `(mu, nu)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    pub mu: Partition,
    pub nu: Partition,
}

/// One way of removing a single box from a bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxRemoval {
    pub side: Side,
    /// 1-based row the box is removed from.
    pub row: usize,
    pub result: Bipartition,
}

/// One way of adding a single box to a bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxAddition {
    pub side: Side,
    /// 1-based row the box is added to.
    pub row: usize,
    pub result: Bipartition,
}

impl Bipartition {
    pub fn new(mu: Partition, nu: Partition) -> Self {
        Self { mu, nu }
    }

    pub fn empty() -> Self {
        Self::new(Partition::empty(), Partition::empty())
    }

    /// Total number of boxes `|mu| + |nu|`.
    pub fn size(&self) -> usize {
        self.mu.size() + self.nu.size()
    }

    /// The componentwise sum `lambda = mu + nu`.
    pub fn lambda(&self) -> Partition {
        self.mu.add(&self.nu)
    }

    /// Dimension statistic `b(mu,nu) = 2 n(lambda) + |nu|`.
    pub fn b_dim(&self) -> usize {
        2 * self.lambda().n_stat() + self.nu.size()
    }

    /// Componentwise Young diagram containment on both components.
    pub fn contains(&self, other: &Bipartition) -> bool {
        self.mu.contains(&other.mu) && self.nu.contains(&other.nu)
    }

    /// All single-box removals: left component first, rows ascending, then
    /// the right component.
    pub fn removable_boxes(&self) -> Vec<BoxRemoval> {
        let mut out = Vec::new();
        for (side, p, q) in [
            (Side::Left, &self.mu, &self.nu),
            (Side::Right, &self.nu, &self.mu),
        ] {
            for row in 1..=p.len() {
                if let Ok(smaller) = p.remove_box(row) {
                    let result = match side {
                        Side::Left => Bipartition::new(smaller, q.clone()),
                        Side::Right => Bipartition::new(q.clone(), smaller),
                    };
                    out.push(BoxRemoval { side, row, result });
                }
            }
        }
        out
    }

    /// All single-box additions, in the same order convention as
    /// [`Bipartition::removable_boxes`].
    pub fn addable_boxes(&self) -> Vec<BoxAddition> {
        let mut out = Vec::new();
        for (side, p, q) in [
            (Side::Left, &self.mu, &self.nu),
            (Side::Right, &self.nu, &self.mu),
        ] {
            for row in 1..=p.len() + 1 {
                if row == 1 || p.part(row) < p.part(row - 1) {
                    let mut parts = p.parts().to_vec();
                    if row == p.len() + 1 {
                        parts.push(1);
                    } else {
                        parts[row - 1] += 1;
                    }
                    let bigger = Partition::new(parts).expect("addition keeps monotonicity");
                    let result = match side {
                        Side::Left => Bipartition::new(bigger, q.clone()),
                        Side::Right => Bipartition::new(q.clone(), bigger),
                    };
                    out.push(BoxAddition { side, row, result });
                }
            }
        }
        out
    }

    /// Locates `child` among the single-box removals of `self`.
    pub fn removal_to(&self, child: &Bipartition) -> Result<BoxRemoval> {
        self.removable_boxes()
            .into_iter()
            .find(|r| &r.result == child)
            .ok_or_else(|| {
                Error::Invalid(format!(
                    "{child} is not obtained from {self} by removing one box"
                ))
            })
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.mu, self.nu)
    }
}

impl FromStr for Bipartition {
    type Err = Error;

    /// Parses "3,1|2,2,1". Either side may be empty or "0".
    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("bipartition {s:?} is missing '|'")))?;
        Ok(Bipartition::new(l.parse()?, r.parse()?))
    }
}

/// All bipartitions of `n`, ordered by `|mu|` ascending and then by the
/// descending lexicographic order of [`partitions_of`] on `mu` and on `nu`.
pub fn bipartitions_of(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for a in 0..=n {
        for mu in partitions_of(a) {
            for nu in partitions_of(n - a) {
                out.push(Bipartition::new(mu.clone(), nu));
            }
        }
    }
    out
}

/// The doubled type `rho` of the quotient by the marked cyclic subspace:
/// `rho_{2i-1} = mu_i + nu_i` and `rho_{2i} = mu_{i+1} + nu_i` for
/// `i = 1..len(lambda)`, with trailing zeros dropped.
pub fn rho_of(bp: &Bipartition) -> Partition {
    let l = bp.lambda().len();
    let mut parts = Vec::with_capacity(2 * l);
    for i in 1..=l {
        parts.push(bp.mu.part(i) + bp.nu.part(i));
        parts.push(bp.mu.part(i + 1) + bp.nu.part(i));
    }
    Partition::new(parts).expect("rho is weakly decreasing by construction")
}

/// Inverts [`rho_of`]: recovers `(mu, nu)` from the halved ambient type
/// `lambda` and the quotient type `rho`. Errors if no bipartition fits,
/// which is how type computations detect inconsistent input.
pub fn from_lambda_rho(lambda: &Partition, rho: &Partition) -> Result<Bipartition> {
    let l = lambda.len();
    if rho.len() > 2 * l {
        return Err(Error::Invalid(format!(
            "quotient type {rho} is longer than twice the ambient type {lambda}"
        )));
    }
    if l == 0 {
        return Ok(Bipartition::empty());
    }
    let r = |k: usize| rho.part(k) as i64;
    let mut mu = vec![0i64; l + 1];
    let mut nu = vec![0i64; l + 1];
    nu[l] = r(2 * l);
    for i in (1..=l).rev() {
        mu[i] = r(2 * i - 1) - nu[i];
        if i >= 2 {
            nu[i - 1] = r(2 * i - 2) - mu[i];
        }
    }
    let to_partition = |v: &[i64]| -> Result<Partition> {
        if v.iter().any(|&p| p < 0) {
            return Err(Error::Invalid(format!(
                "type pair ({lambda}; {rho}) forces a negative row"
            )));
        }
        Partition::new(v.iter().map(|&p| p as usize).collect())
    };
    let mu = to_partition(&mu[1..=l])?;
    let nu = to_partition(&nu[1..=l])?;
    for i in 1..=l {
        if mu.part(i) + nu.part(i) != lambda.part(i) {
            return Err(Error::Invalid(format!(
                "type pair ({lambda}; {rho}) does not split: row {i} sums to {}",
                mu.part(i) + nu.part(i)
            )));
        }
    }
    Ok(Bipartition::new(mu, nu))
}

/// Predicted dimension of the variety of admissible lines taking a point of
/// shape `parent` to shape `child`: `2r - 2` for a left removal in row `r`
/// and `2r - 1` for a right removal.
pub fn predict_bvariety_dim(parent: &Bipartition, child: &Bipartition) -> Result<usize> {
    let removal = parent.removal_to(child)?;
    Ok(match removal.side {
        Side::Left => 2 * removal.row - 2,
        Side::Right => 2 * removal.row - 1,
    })
}

/// The two shapes of `n >= 2` boxes whose dimension statistic equals 2:
/// `((n-1,1), 0)` and `((n-2), (2))`.
pub fn dim2_shapes(n: usize) -> Vec<Bipartition> {
    assert!(n >= 2, "dimension-two shapes need n >= 2");
    let first = Bipartition::new(
        Partition::new(vec![n - 1, 1]).unwrap(),
        Partition::empty(),
    );
    let second = Bipartition::new(
        Partition::new(vec![n - 2]).unwrap(),
        Partition::new(vec![2]).unwrap(),
    );
    vec![first, second]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn part_is_one_based_and_padded() {
        let p: Partition = "5,3,1".parse().unwrap();
        assert_eq!(p.part(1), 5);
        assert_eq!(p.part(3), 1);
        assert_eq!(p.part(4), 0);
        assert_eq!(p.len(), 3);
        assert_eq!(p.size(), 9);
    }

    #[test]
    fn transpose_of_hook() {
        let p: Partition = "3,1".parse().unwrap();
        assert_eq!(p.transpose(), "2,1,1".parse().unwrap());
    }

    #[test]
    fn display_roundtrip_includes_empty() {
        for s in ["0", "4,4,2", "1"] {
            let p: Partition = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn rho_of_worked_pair() {
        let bp: Bipartition = "3,1|2,2,1".parse().unwrap();
        assert_eq!(rho_of(&bp), "5,3,3,2,1,1".parse().unwrap());
        assert_eq!(from_lambda_rho(&bp.lambda(), &rho_of(&bp)).unwrap(), bp);
    }

    #[test]
    fn rho_of_extreme_shapes() {
        let row: Bipartition = "4|0".parse().unwrap();
        assert_eq!(rho_of(&row), "4".parse().unwrap());
        let dual: Bipartition = "0|3,1".parse().unwrap();
        assert_eq!(rho_of(&dual), "3,3,1,1".parse().unwrap());
    }

    #[test]
    fn b_dim_worked_pair() {
        let bp: Bipartition = "3,1|2,2,1".parse().unwrap();
        assert_eq!(bp.lambda(), "5,3,1".parse().unwrap());
        assert_eq!(bp.b_dim(), 15);
    }

    #[test]
    fn bipartition_counts() {
        // Number of bipartitions of n = 0..5.
        let expected = [1usize, 2, 5, 10, 20, 36];
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(bipartitions_of(n).len(), *want, "n = {n}");
        }
    }
}
