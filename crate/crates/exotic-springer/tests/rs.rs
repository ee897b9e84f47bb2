//! The geometric correspondence table at small rank, the naive insertion
//! variant, and the bookkeeping around consensus and bijectivity.

use exotic_springer::rs::{
    compare_naive_geometric, full_table, naive_rs, verify_bijection, Consensus, RsRow,
};
use exotic_springer::seeding::DEFAULT_SEED;
use exotic_springer::weyl::{enumerate, SignedPerm};
use exotic_springer::{Bipartition, StandardBitableau};
use std::collections::HashSet;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn tab(left: &[&[usize]], right: &[&[usize]]) -> StandardBitableau {
    StandardBitableau::new(
        left.iter().map(|r| r.to_vec()).collect(),
        right.iter().map(|r| r.to_vec()).collect(),
    )
    .unwrap()
}

#[test]
fn naive_insertion_is_a_bijection_on_small_ranks() {
    for n in 1..=3 {
        let mut seen = HashSet::new();
        let all = enumerate(n);
        for w in &all {
            let (p, q) = naive_rs(w);
            assert_eq!(p.shape(), q.shape(), "record tableau tracks the insertion");
            assert_eq!(p.shape().size(), n);
            assert!(
                seen.insert(format!("{p}#{q}")),
                "pair for {} repeats an earlier word",
                w.to_one_line()
            );
        }
        assert_eq!(seen.len() as u64, 2u64.pow(n as u32) * factorial(n));
    }
}

#[test]
fn naive_insertion_routes_barred_letters_to_the_right_tableau() {
    let w = SignedPerm::new(vec![-2, -1]).unwrap();
    let (p, q) = naive_rs(&w);
    assert_eq!(p, tab(&[], &[&[1], &[2]]));
    assert_eq!(q, tab(&[], &[&[1], &[2]]));

    let w = SignedPerm::new(vec![-2, 1]).unwrap();
    let (p, q) = naive_rs(&w);
    assert_eq!(p, tab(&[&[1]], &[&[2]]));
    assert_eq!(q, tab(&[&[2]], &[&[1]]));
}

#[test]
fn rank_one_table_is_pinned() {
    let rows = full_table(1, DEFAULT_SEED, 8).unwrap();
    assert_eq!(rows.len(), 2);

    assert_eq!(rows[0].bp, "0|1".parse::<Bipartition>().unwrap());
    assert_eq!(rows[0].t, tab(&[], &[&[1]]));
    assert_eq!(rows[0].tprime, rows[0].t);
    assert_eq!(rows[0].w.to_one_line(), "-1");
    assert_eq!(rows[0].length, 1);
    assert_eq!(rows[0].consensus.display(), "8/8");

    assert_eq!(rows[1].bp, "1|0".parse::<Bipartition>().unwrap());
    assert_eq!(rows[1].t, tab(&[&[1]], &[]));
    assert_eq!(rows[1].w.to_one_line(), "1");
    assert_eq!(rows[1].length, 0);

    verify_bijection(1, &rows).unwrap();
}

#[test]
fn row_serialization_is_pinned() {
    let rows = full_table(1, DEFAULT_SEED, 8).unwrap();
    assert_eq!(
        rows[0].to_json().to_string(),
        r#"{"T":[[],[[1]]],"Tprime":[[],[[1]]],"consensus":"8/8","length":1,"mu":"0","nu":"1","w":"-1"}"#
    );
    assert_eq!(
        rows[0].to_tsv(),
        "0\t1\t[[],[[1]]]\t[[],[[1]]]\t-1\t1\t8/8"
    );
}

#[test]
fn tables_rerun_identically_and_words_survive_reseeding() {
    let a = full_table(2, DEFAULT_SEED, 8).unwrap();
    let b = full_table(2, DEFAULT_SEED, 8).unwrap();
    assert_eq!(a.len(), 8);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.w, y.w);
        assert_eq!(x.consensus, y.consensus);
    }
    // A different seed draws different flags but must land on the same words.
    let c = full_table(2, DEFAULT_SEED + 17, 8).unwrap();
    for (x, y) in a.iter().zip(&c) {
        assert_eq!(x.w, y.w, "word for pair ({}, {}) moved with the seed", x.t, x.tprime);
    }
}

#[test]
fn bijection_check_rejects_duplicates_and_short_tables() {
    let rows = full_table(1, DEFAULT_SEED, 8).unwrap();

    let mut dup = rows.clone();
    dup[1] = RsRow {
        w: dup[0].w.clone(),
        length: dup[0].length,
        ..dup[1].clone()
    };
    let err = verify_bijection(1, &dup).unwrap_err().to_string();
    assert!(err.contains("-1"), "duplicate report names the word: {err}");

    let short = vec![rows[0].clone()];
    assert!(verify_bijection(1, &short).is_err());

    let consensus_is_copy = Consensus { samples: 8, agreeing: 8 };
    assert_eq!(consensus_is_copy.display(), "8/8");
}

#[test]
fn naive_and_geometric_tables_agree_on_exactly_half_of_rank_two() {
    let rows = compare_naive_geometric(2, DEFAULT_SEED, 8).unwrap();
    assert_eq!(rows.len(), 8);
    let agreeing = rows.iter().filter(|r| r.agree).count();
    assert_eq!(agreeing, 4, "the two algorithms are genuinely different");

    let minus_two_one = rows
        .iter()
        .find(|r| r.w.to_one_line() == "-2 1")
        .expect("every word has a row");
    assert!(minus_two_one.agree);

    // Where they split, the geometric side reads a row where insertion
    // builds a column.
    let sts = rows
        .iter()
        .find(|r| r.w.to_one_line() == "-2 -1")
        .expect("every word has a row");
    assert!(!sts.agree);
    assert_eq!(sts.geometric.0, tab(&[], &[&[1, 2]]));
    assert_eq!(sts.naive.0, tab(&[], &[&[1], &[2]]));
}
