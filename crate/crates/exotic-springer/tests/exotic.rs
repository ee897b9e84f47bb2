//! Orbit invariants of marked nilpotent pairs: the type of the normal form,
//! invariance under the symplectic group, and the type sequence of a flag.

use exotic_springer::exotic::{build_normal_form, phi, Flag, PhiOutcome};
use exotic_springer::linalg::{rat, BilinearForm, Matrix, Rat, Subspace};
use exotic_springer::normalize::NormalBasis;
use exotic_springer::partition::bipartitions_of;
use exotic_springer::seeding::{derive_rng, DEFAULT_SEED};
use exotic_springer::Bipartition;
use rand::Rng;

/// `w -> w + c <u, w> u`, an invertible map preserving the form.
fn transvection(form: &BilinearForm, u: &[Rat], c: i64) -> Matrix {
    let gu = form.gram().transpose().apply(u);
    let d = u.len();
    let mut rows = Matrix::identity(d).row_vecs();
    for i in 0..d {
        for j in 0..d {
            rows[i][j] += rat(c) * &u[i] * &gu[j];
        }
    }
    Matrix::from_rows(rows)
}

#[test]
fn normal_form_has_the_type_it_was_built_from() {
    for n in 0..=4 {
        for bp in bipartitions_of(n) {
            let p = build_normal_form(&bp);
            assert_eq!(
                p.etype().unwrap_or_else(|e| panic!("etype failed on {bp}: {e}")),
                bp
            );
            assert_eq!(p.halved_type().unwrap(), bp.lambda(), "halved type of {bp}");
            NormalBasis::standard(&bp)
                .verify(&p)
                .unwrap_or_else(|e| panic!("standard basis fails its own axioms on {bp}: {e}"));
        }
    }
}

#[test]
fn etype_is_constant_on_symplectic_orbits() {
    for n in 1..=3 {
        for bp in bipartitions_of(n) {
            let p = build_normal_form(&bp);
            let mut rng = derive_rng(DEFAULT_SEED, &["transvection", &bp.to_string()]);
            for trial in 0..3 {
                let u: Vec<Rat> = (0..p.dim()).map(|_| rat(rng.gen_range(-3..=3))).collect();
                if u.iter().all(|x| x == &rat(0)) {
                    continue;
                }
                let c = rng.gen_range(1..=3);
                let g = transvection(p.form(), &u, c);
                let g_inv = transvection(p.form(), &u, -c);
                assert_eq!(g.mul(&g_inv), Matrix::identity(p.dim()));
                assert_eq!(
                    &g.transpose().mul(p.form().gram()).mul(&g),
                    p.form().gram(),
                    "transvection must preserve the form"
                );
                let moved = exotic_springer::exotic::ExoticPoint::new(
                    p.space().clone(),
                    g.apply(p.v()),
                    g.mul(p.x()).mul(&g_inv),
                )
                .unwrap_or_else(|e| panic!("conjugate of {bp} rejected (trial {trial}): {e}"));
                assert_eq!(moved.etype().unwrap(), bp, "type moved under the group");
            }
        }
    }
}

#[test]
fn marked_line_first_makes_the_type_sequence_non_nested() {
    // Taking F_1 through the marked vector of ((1,1), -) reads the boxes in
    // an order no standard bitableau allows; the sequence must be flagged.
    let bp: Bipartition = "1,1|0".parse().unwrap();
    let p = build_normal_form(&bp);
    let nb = NormalBasis::standard(&bp);
    let f1 = Subspace::span(p.dim(), &[p.v().to_vec()]);
    let f2 = f1.sum(&Subspace::span(p.dim(), &[nb.u(1, 1).to_vec()]));
    let flag = Flag::new(vec![f1, f2], p.form()).unwrap();
    let result = phi(&p, &flag).unwrap();

    let want: Vec<Bipartition> = ["1,1|0", "0|1", "0|0"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(result.shapes, want, "type sequence along the flag");
    match result.outcome {
        PhiOutcome::NonNested { step } => assert_eq!(step, 1),
        PhiOutcome::Nested(t) => panic!("sequence wrongly read as tableau {t}"),
    }
}

#[test]
fn rank_one_fibre_reads_off_the_single_tableau() {
    let bp: Bipartition = "1|0".parse().unwrap();
    let p = build_normal_form(&bp);
    let f1 = Subspace::span(p.dim(), &[p.v().to_vec()]);
    let flag = Flag::new(vec![f1], p.form()).unwrap();
    let result = phi(&p, &flag).unwrap();
    match result.outcome {
        PhiOutcome::Nested(t) => {
            assert_eq!(t.left_rows(), &[vec![1]]);
            assert!(t.right_rows().is_empty());
        }
        PhiOutcome::NonNested { step } => panic!("one-step flag flagged at {step}"),
    }
}

#[test]
fn flags_missing_the_marked_vector_are_rejected() {
    let bp: Bipartition = "1|0".parse().unwrap();
    let p = build_normal_form(&bp);
    let nb = NormalBasis::standard(&bp);
    // The dual partner pairs nontrivially with v, so its line avoids v.
    let f1 = Subspace::span(p.dim(), &[nb.u_star(1, 1).to_vec()]);
    let flag = Flag::new(vec![f1], p.form()).unwrap();
    assert!(phi(&p, &flag).is_err());
}
