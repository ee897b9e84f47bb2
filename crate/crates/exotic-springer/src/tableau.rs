//! Standard bitableaux: a pair of tableaux jointly filled by `1..=n`, each
//! with strictly increasing rows and columns. Equivalently, a chain of
//! bipartitions growing one box per step.

use std::fmt;

use serde_json::{json, Value};

use crate::partition::{bipartitions_of, Bipartition, Partition, Side};
use crate::{Error, Result};

/// A standard filling of a bipartition shape.
///
/// Rows are stored left-justified with entries increasing to the right; the
/// mirrored display of the left component happens only at serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardBitableau {
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl StandardBitableau {
    /// Validates rows/columns and that the entries are exactly `1..=n`
    /// across both components.
    pub fn new(left: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self { left, right };
        let n = t.n();
        let mut seen = vec![false; n + 1];
        for rows in [&t.left, &t.right] {
            for r in 0..rows.len() {
                if rows[r].is_empty() {
                    return Err(Error::Invalid("empty tableau row".into()));
                }
                if r + 1 < rows.len() && rows[r + 1].len() > rows[r].len() {
                    return Err(Error::Invalid("row lengths increase downwards".into()));
                }
                for c in 0..rows[r].len() {
                    let e = rows[r][c];
                    if e == 0 || e > n || seen[e] {
                        return Err(Error::Invalid(format!("bad or repeated entry {e}")));
                    }
                    seen[e] = true;
                    if c + 1 < rows[r].len() && rows[r][c + 1] <= e {
                        return Err(Error::Invalid("row not strictly increasing".into()));
                    }
                    if r + 1 < rows.len() && rows[r + 1].get(c).is_some_and(|&b| b <= e) {
                        return Err(Error::Invalid("column not strictly increasing".into()));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn empty() -> Self {
        Self {
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    /// Total number of entries.
    pub fn n(&self) -> usize {
        self.left.iter().map(Vec::len).sum::<usize>()
            + self.right.iter().map(Vec::len).sum::<usize>()
    }

    pub fn left_rows(&self) -> &[Vec<usize>] {
        &self.left
    }

    pub fn right_rows(&self) -> &[Vec<usize>] {
        &self.right
    }

    pub fn shape(&self) -> Bipartition {
        let part = |rows: &[Vec<usize>]| {
            Partition::new(rows.iter().map(Vec::len).collect()).expect("rows validated")
        };
        Bipartition::new(part(&self.left), part(&self.right))
    }

    /// Shape of the sub-bitableau with entries `<= k`.
    pub fn shape_after_step(&self, k: usize) -> Bipartition {
        let part = |rows: &[Vec<usize>]| {
            let lens: Vec<usize> = rows
                .iter()
                .map(|r| r.iter().filter(|&&e| e <= k).count())
                .collect();
            Partition::new(lens).expect("initial segments form a partition")
        };
        Bipartition::new(part(&self.left), part(&self.right))
    }

    /// Component and 1-based row of the entry `k`.
    pub fn position_of(&self, k: usize) -> Result<(Side, usize)> {
        for (side, rows) in [(Side::Left, &self.left), (Side::Right, &self.right)] {
            for (r, row) in rows.iter().enumerate() {
                if row.contains(&k) {
                    return Ok((side, r + 1));
                }
            }
        }
        Err(Error::Invalid(format!("entry {k} not present")))
    }

    /// The bitableau with the largest entry removed.
    pub fn without_last(&self) -> StandardBitableau {
        let n = self.n();
        assert!(n > 0, "cannot shrink the empty bitableau");
        let mut t = self.clone();
        for rows in [&mut t.left, &mut t.right] {
            for row in rows.iter_mut() {
                if row.last() == Some(&n) {
                    row.pop();
                }
            }
            rows.retain(|r| !r.is_empty());
        }
        t
    }

    fn with_box(&self, side: Side, row: usize, entry: usize) -> StandardBitableau {
        let mut t = self.clone();
        let rows = match side {
            Side::Left => &mut t.left,
            Side::Right => &mut t.right,
        };
        if row == rows.len() + 1 {
            rows.push(vec![entry]);
        } else {
            rows[row - 1].push(entry);
        }
        t
    }

    /// JSON pair `[left, right]` of row arrays. The left component is
    /// mirrored, so its rows read right-to-left.
    pub fn to_json(&self) -> Value {
        let left: Vec<Vec<usize>> = self
            .left
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        json!([left, self.right])
    }
}

impl fmt::Display for StandardBitableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

/// All standard bitableaux of the given shape, ordered lexicographically by
/// their growth sequence: the box holding 1 is placed first, ties broken by
/// the [`Bipartition::addable_boxes`] order (left component before right,
/// rows ascending).
pub fn enumerate_syb(shape: &Bipartition) -> Vec<StandardBitableau> {
    fn rec(
        target: &Bipartition,
        current: &Bipartition,
        filled: &StandardBitableau,
        step: usize,
        out: &mut Vec<StandardBitableau>,
    ) {
        if current == target {
            out.push(filled.clone());
            return;
        }
        for add in current.addable_boxes() {
            if target.contains(&add.result) {
                let bigger = filled.with_box(add.side, add.row, step);
                rec(target, &add.result, &bigger, step + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(
        shape,
        &Bipartition::empty(),
        &StandardBitableau::empty(),
        1,
        &mut out,
    );
    out
}

/// `sum over shapes of n of |SYB(shape)|^2`. Equals the order of the
/// hyperoctahedral group `2^n n!`.
pub fn sum_of_squares(n: usize) -> u64 {
    bipartitions_of(n)
        .iter()
        .map(|bp| {
            let c = enumerate_syb(bp).len() as u64;
            c * c
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_fillings() {
        assert!(StandardBitableau::new(vec![vec![1, 1]], vec![]).is_err());
        assert!(StandardBitableau::new(vec![vec![2, 1]], vec![]).is_err());
        assert!(StandardBitableau::new(vec![vec![1], vec![2], vec![3]], vec![vec![3]]).is_err());
        assert!(StandardBitableau::new(vec![vec![1, 2]], vec![vec![2]]).is_err());
    }

    #[test]
    fn growth_chain_of_shapes() {
        let t = StandardBitableau::new(vec![vec![1, 4], vec![2]], vec![vec![3]]).unwrap();
        assert_eq!(t.shape(), "2,1|1".parse().unwrap());
        assert_eq!(t.shape_after_step(2), "1,1|0".parse().unwrap());
        assert_eq!(t.shape_after_step(3), "1,1|1".parse().unwrap());
        assert_eq!(t.position_of(3).unwrap(), (Side::Right, 1));
        assert_eq!(
            t.without_last(),
            StandardBitableau::new(vec![vec![1], vec![2]], vec![vec![3]]).unwrap()
        );
    }

    #[test]
    fn counts_for_small_shapes() {
        let one_one: Bipartition = "1|1".parse().unwrap();
        assert_eq!(enumerate_syb(&one_one).len(), 2);
        let row: Bipartition = "2|0".parse().unwrap();
        assert_eq!(enumerate_syb(&row).len(), 1);
    }

    #[test]
    fn mirrored_left_serialization() {
        let t = StandardBitableau::new(vec![vec![1, 2]], vec![]).unwrap();
        assert_eq!(t.to_json().to_string(), "[[[2,1]],[]]");
    }
}
