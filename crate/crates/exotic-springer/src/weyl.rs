//! Signed permutations, their Coxeter lengths, the embedding into `S_2n`,
//! and the relative position of two isotropic flags.
//!
//! One-line notation: `w` is stored as the images `w(1), ..., w(n)` with
//! values in `{-n..-1, 1..n}` and extended by `w(-i) = -w(i)`. The
//! generators are `s_0` negating `1` and `s_i` swapping `i, i+1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::exotic::Flag;
use crate::linalg::BilinearForm;
use crate::{Error, Result};

/// An element of the hyperoctahedral group `W(C_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    img: Vec<i32>,
}

impl SignedPerm {
    pub fn new(img: Vec<i32>) -> Result<Self> {
        let n = img.len();
        let mut seen = vec![false; n + 1];
        for &v in &img {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::Invalid(format!("bad signed permutation {img:?}")));
            }
            seen[a] = true;
        }
        Ok(Self { img })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            img: (1..=n as i32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.img.len()
    }

    /// `w(i)` for `i` in `{-n..-1, 1..n}`.
    pub fn image(&self, i: i32) -> i32 {
        let a = self.img[(i.unsigned_abs() as usize) - 1];
        if i < 0 {
            -a
        } else {
            a
        }
    }

    /// `self` after `first`: `(self . first)(i) = self(first(i))`.
    pub fn compose(&self, first: &SignedPerm) -> SignedPerm {
        assert_eq!(self.n(), first.n());
        SignedPerm {
            img: first.img.iter().map(|&v| self.image(v)).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut img = vec![0; self.n()];
        for (i, &v) in self.img.iter().enumerate() {
            let pos = (v.unsigned_abs() as usize) - 1;
            img[pos] = if v < 0 { -(i as i32 + 1) } else { i as i32 + 1 };
        }
        SignedPerm { img }
    }

    /// `s_0, s_1, ..., s_{n-1}`.
    pub fn generators(n: usize) -> Vec<SignedPerm> {
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(n);
        let mut neg = SignedPerm::identity(n);
        neg.img[0] = -1;
        out.push(neg);
        for i in 1..n {
            let mut swap = SignedPerm::identity(n);
            swap.img.swap(i - 1, i);
            out.push(swap);
        }
        out
    }

    /// Coxeter length; builds the length table of the whole group, so only
    /// sensible for small `n`.
    pub fn length(&self) -> usize {
        *length_table(self.n())
            .get(self)
            .expect("every element is reached by the generator walk")
    }

    /// One-line notation with spaces, e.g. `-2 1`.
    pub fn to_one_line(&self) -> String {
        self.img.iter().map(|v| v.to_string()).join(" ")
    }

    /// Compact display with combining overbars for negative entries.
    pub fn to_barred(&self) -> String {
        self.img
            .iter()
            .map(|v| {
                if *v < 0 {
                    format!("{}\u{304}", -v)
                } else {
                    v.to_string()
                }
            })
            .collect()
    }

    /// The embedding into `S_2n` induced by labelling positions
    /// `1..=2n` with `n, ..., 1, -1, ..., -n`: returns the images
    /// `sigma(1), ..., sigma(2n)`, 1-based.
    pub fn iota(&self) -> Vec<usize> {
        let n = self.n() as i32;
        let label_of = |p: i32| -> i32 {
            if p <= n {
                n + 1 - p
            } else {
                -(p - n)
            }
        };
        let pos_of = |v: i32| -> usize {
            if v > 0 {
                (n + 1 - v) as usize
            } else {
                (n - v) as usize
            }
        };
        (1..=2 * n).map(|p| pos_of(self.image(label_of(p)))).collect()
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_one_line())
    }
}

impl FromStr for SignedPerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let img = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad entry {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SignedPerm::new(img)
    }
}

/// All `2^n n!` elements: permutations in lexicographic order, sign masks
/// in binary order within each permutation.
pub fn enumerate(n: usize) -> Vec<SignedPerm> {
    if n == 0 {
        return vec![SignedPerm::identity(0)];
    }
    let mut out = Vec::new();
    for perm in (1..=n as i32).permutations(n) {
        for mask in 0u32..(1 << n) {
            let img = perm
                .iter()
                .enumerate()
                .map(|(k, &v)| if mask & (1 << k) != 0 { -v } else { v })
                .collect();
            out.push(SignedPerm { img });
        }
    }
    out
}

/// Distance of every group element from the identity in the Cayley graph
/// of the standard generators, i.e. the Coxeter length.
pub fn length_table(n: usize) -> HashMap<SignedPerm, usize> {
    let gens = SignedPerm::generators(n);
    let mut dist = HashMap::new();
    let id = SignedPerm::identity(n);
    dist.insert(id.clone(), 0);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for g in &gens {
            let next = w.compose(g);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Intersection dimension table of two full flags and the permutation
/// matrix of its mixed differences. Rows follow the first flag, columns the
/// second.
#[derive(Clone, Debug)]
pub struct IntersectionTable {
    /// `dims[i][j] = dim(F_i meet G_j)` for `0 <= i, j <= 2n`.
    pub dims: Vec<Vec<usize>>,
    /// For each column `j = 1..=2n` (index `j-1`), the row holding the 1.
    pub col_to_row: Vec<usize>,
}

/// Relative position of two isotropic flags on the same space: the signed
/// permutation `w` with `dim(F_i meet G_j)` counting the model basis
/// vectors shared by the first `i` rows and the images of the first `j`
/// columns. The identity comes back when the flags coincide.
pub fn relative_position(
    form: &BilinearForm,
    f: &Flag,
    g: &Flag,
) -> Result<(SignedPerm, IntersectionTable)> {
    let n = f.n();
    if g.n() != n {
        return Err(Error::Invalid("flags have different lengths".into()));
    }
    let fs = f.full_steps(form);
    let gs = g.full_steps(form);
    let two_n = 2 * n;
    let mut dims = vec![vec![0usize; two_n + 1]; two_n + 1];
    for i in 0..=two_n {
        for j in 0..=two_n {
            // dim(A meet B) = dim A + dim B - dim(A + B)
            dims[i][j] = i + j - fs[i].sum(&gs[j]).dim();
        }
    }
    let mut col_to_row = vec![0usize; two_n];
    let mut row_used = vec![false; two_n + 1];
    for j in 1..=two_n {
        let mut hit = None;
        for i in 1..=two_n {
            let b = dims[i][j] + dims[i - 1][j - 1];
            let b = b as i64 - dims[i - 1][j] as i64 - dims[i][j - 1] as i64;
            match b {
                0 => {}
                1 => {
                    if hit.replace(i).is_some() {
                        return Err(Error::Check("intersection table is not a permutation".into()));
                    }
                }
                _ => return Err(Error::Check("intersection table is not unimodular".into())),
            }
        }
        let i = hit.ok_or_else(|| Error::Check("intersection table column without pivot".into()))?;
        if row_used[i] {
            return Err(Error::Check("intersection table row used twice".into()));
        }
        row_used[i] = true;
        col_to_row[j - 1] = i;
    }
    // Column labelled c sits at position n+1-c; the row label is the value.
    let mut img = vec![0i32; n];
    for c in 1..=n {
        let col = n + 1 - c;
        let r = col_to_row[col - 1];
        img[c - 1] = if r <= n {
            (n + 1 - r) as i32
        } else {
            -((r - n) as i32)
        };
    }
    let w = SignedPerm::new(img)?;
    // The embedded permutation must reproduce the pivot pattern.
    let emb = w.iota();
    for (j, &r) in col_to_row.iter().enumerate() {
        if emb[j] != r {
            return Err(Error::Check(
                "extracted permutation does not match the pivot pattern".into(),
            ));
        }
    }
    Ok((w, IntersectionTable { dims, col_to_row }))
}
