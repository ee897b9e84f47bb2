//! The sampled geometric correspondence between pairs of standard
//! bitableaux and signed permutations, and the naive insertion algorithm it
//! is compared against.
//!
//! For a pair `(T, T')` of bitableaux of the same shape, generic flags are
//! drawn in the fibres cut out by `T` and `T'` over the normal point of
//! that shape, and the relative position of the two flags is the value of
//! the correspondence. Independent seeded samples vote; the winner must
//! reach a 90% majority among the longest observed words or the run fails
//! loudly rather than return a doubtful row.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::exotic::build_normal_form;
use crate::jordan::{sample_generic_flag, LINE_TRIES};
use crate::normalize::NormalBasis;
use crate::partition::{bipartitions_of, Bipartition};
use crate::seeding::derive_rng;
use crate::tableau::{enumerate_syb, StandardBitableau};
use crate::weyl::{enumerate, length_table, relative_position, SignedPerm};
use crate::{Error, Result};

/// Vote tally behind one returned word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Consensus {
    pub samples: usize,
    pub agreeing: usize,
}

impl Consensus {
    pub fn display(&self) -> String {
        format!("{}/{}", self.agreeing, self.samples)
    }
}

/// Majority threshold: agreeing samples must be at least 90% of all
/// samples.
fn majority_reached(c: &Consensus) -> bool {
    c.agreeing * 10 >= c.samples * 9
}

/// One row of a correspondence table.
#[derive(Clone, Debug)]
pub struct RsRow {
    pub bp: Bipartition,
    pub t: StandardBitableau,
    pub tprime: StandardBitableau,
    pub w: SignedPerm,
    pub length: usize,
    pub consensus: Consensus,
}

impl RsRow {
    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.bp.mu.to_string(),
            "nu": self.bp.nu.to_string(),
            "T": self.t.to_json(),
            "Tprime": self.tprime.to_json(),
            "w": self.w.to_one_line(),
            "length": self.length,
            "consensus": self.consensus.display(),
        })
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.bp.mu,
            self.bp.nu,
            self.t,
            self.tprime,
            self.w.to_one_line(),
            self.length,
            self.consensus.display()
        )
    }
}

/// Samples the word attached to one pair of bitableaux. Each sample draws
/// the two flags from an RNG stream derived from
/// `(seed, shape, T, T', sample index)`, so samples are independent and
/// the result does not depend on evaluation order.
pub fn geometric_rs(
    bp: &Bipartition,
    t: &StandardBitableau,
    tprime: &StandardBitableau,
    seed: u64,
    samples: usize,
) -> Result<(SignedPerm, Consensus)> {
    assert!(samples > 0, "need at least one sample");
    let p = build_normal_form(bp);
    let nb = NormalBasis::standard(bp);
    let mut votes: Vec<SignedPerm> = Vec::with_capacity(samples);
    for s in 0..samples {
        let mut rng = derive_rng(
            seed,
            &[
                "rs",
                &bp.to_string(),
                &t.to_string(),
                &tprime.to_string(),
                &s.to_string(),
            ],
        );
        let flag_t = sample_generic_flag(&p, &nb, t, &mut rng, LINE_TRIES)?;
        let flag_tp = sample_generic_flag(&p, &nb, tprime, &mut rng, LINE_TRIES)?;
        let (w, _) = relative_position(p.form(), &flag_t, &flag_tp)?;
        votes.push(w);
    }
    let lengths = length_table(bp.size());
    let mut tally: HashMap<&SignedPerm, usize> = HashMap::new();
    for w in &votes {
        *tally.entry(w).or_insert(0) += 1;
    }
    // The generic word is the longest one observed; shorter words come from
    // unlucky degenerate pairs.
    let best = tally
        .iter()
        .max_by_key(|(w, &count)| (lengths[*w], count, *w))
        .map(|(w, &count)| ((*w).clone(), count))
        .expect("votes is nonempty");
    let consensus = Consensus {
        samples,
        agreeing: best.1,
    };
    if !majority_reached(&consensus) {
        return Err(Error::Consensus(format!(
            "pair ({t}, {tprime}) over {bp}: best word {} won only {} of {} samples",
            best.0.to_one_line(),
            best.1,
            samples
        )));
    }
    Ok((best.0, consensus))
}

/// The full table for all shapes of `n`, all pairs of bitableaux, in
/// enumeration order. Pairs are distributed over a thread pool; every pair
/// owns derived RNG streams, and rows come back in deterministic order.
pub fn full_table(n: usize, seed: u64, samples: usize) -> Result<Vec<RsRow>> {
    let mut jobs = Vec::new();
    for bp in bipartitions_of(n) {
        let tabs = enumerate_syb(&bp);
        for t in &tabs {
            for tp in &tabs {
                jobs.push((bp.clone(), t.clone(), tp.clone()));
            }
        }
    }
    let lengths = length_table(n);
    jobs.par_iter()
        .map(|(bp, t, tp)| {
            let (w, consensus) = geometric_rs(bp, t, tp, seed, samples)?;
            let length = lengths[&w];
            Ok(RsRow {
                bp: bp.clone(),
                t: t.clone(),
                tprime: tp.clone(),
                w,
                length,
                consensus,
            })
        })
        .collect()
}

/// Checks that a table is a bijection onto the whole group.
pub fn verify_bijection(n: usize, rows: &[RsRow]) -> Result<()> {
    let mut by_word: HashMap<&SignedPerm, Vec<usize>> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        by_word.entry(&row.w).or_default().push(i);
    }
    let group = enumerate(n);
    if rows.len() != group.len() {
        return Err(Error::Check(format!(
            "table has {} rows but the group has {} elements",
            rows.len(),
            group.len()
        )));
    }
    for (w, hits) in &by_word {
        if hits.len() > 1 {
            let pairs: Vec<String> = hits
                .iter()
                .map(|&i| format!("({}, {})", rows[i].t, rows[i].tprime))
                .collect();
            return Err(Error::Check(format!(
                "word {} assigned to {} pairs: {}",
                w.to_one_line(),
                hits.len(),
                pairs.join(", ")
            )));
        }
    }
    for w in &group {
        if !by_word.contains_key(w) {
            return Err(Error::Check(format!(
                "word {} missing from the table",
                w.to_one_line()
            )));
        }
    }
    Ok(())
}

/// Row bumping insertion of `val` into increasing rows; returns the row
/// the tableau grew in.
fn bump(rows: &mut Vec<Vec<usize>>, mut val: usize) -> usize {
    let mut r = 0;
    loop {
        if r == rows.len() {
            rows.push(vec![val]);
            return r;
        }
        match rows[r].iter().position(|&x| x > val) {
            None => {
                rows[r].push(val);
                return r;
            }
            Some(c) => {
                std::mem::swap(&mut rows[r][c], &mut val);
                r += 1;
            }
        }
    }
}

/// The insertion algorithm run on the word `w(1), ..., w(n)`: positive
/// letters bump into the left tableau of `P`, negative letters bump their
/// absolute values into the right tableau, and `Q` records the step on the
/// side that grew.
pub fn naive_rs(w: &SignedPerm) -> (StandardBitableau, StandardBitableau) {
    let n = w.n();
    let mut p_left: Vec<Vec<usize>> = Vec::new();
    let mut p_right: Vec<Vec<usize>> = Vec::new();
    let mut q_left: Vec<Vec<usize>> = Vec::new();
    let mut q_right: Vec<Vec<usize>> = Vec::new();
    for i in 1..=n {
        let letter = w.image(i as i32);
        let (p_side, q_side) = if letter > 0 {
            (&mut p_left, &mut q_left)
        } else {
            (&mut p_right, &mut q_right)
        };
        let row = bump(p_side, letter.unsigned_abs() as usize);
        if row == q_side.len() {
            q_side.push(vec![i]);
        } else {
            q_side[row].push(i);
        }
    }
    let p = StandardBitableau::new(p_left, p_right).expect("insertion keeps P standard");
    let q = StandardBitableau::new(q_left, q_right).expect("recording keeps Q standard");
    (p, q)
}

/// Comparison of the sampled correspondence against naive insertion for
/// every group element.
#[derive(Clone, Debug)]
pub struct NaiveComparison {
    pub w: SignedPerm,
    pub geometric: (StandardBitableau, StandardBitableau),
    pub naive: (StandardBitableau, StandardBitableau),
    pub agree: bool,
}

impl NaiveComparison {
    pub fn to_json(&self) -> Value {
        json!({
            "w": self.w.to_one_line(),
            "geometric_T": self.geometric.0.to_json(),
            "geometric_Tprime": self.geometric.1.to_json(),
            "naive_P": self.naive.0.to_json(),
            "naive_Q": self.naive.1.to_json(),
            "agree": self.agree,
        })
    }

    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.w.to_one_line(),
            self.geometric.0,
            self.geometric.1,
            self.naive.0,
            self.naive.1,
            self.agree
        )
    }
}

/// Runs the full geometric table and lines it up against naive insertion,
/// one row per group element in enumeration order.
pub fn compare_naive_geometric(n: usize, seed: u64, samples: usize) -> Result<Vec<NaiveComparison>> {
    let rows = full_table(n, seed, samples)?;
    verify_bijection(n, &rows)?;
    let by_word: HashMap<&SignedPerm, &RsRow> =
        rows.iter().map(|row| (&row.w, row)).collect();
    Ok(enumerate(n)
        .into_iter()
        .map(|w| {
            let row = by_word[&w];
            let naive = naive_rs(&w);
            let geometric = (row.t.clone(), row.tprime.clone());
            let agree = geometric == naive;
            NaiveComparison {
                w,
                geometric,
                naive,
                agree,
            }
        })
        .collect())
}
