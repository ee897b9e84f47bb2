//! Exact linear algebra invariants on small random integer matrices.

use exotic_springer::linalg::{
    col_kernel, is_zero_vec, jordan_type, rat, rats, rref, solve_affine, BilinearForm, Matrix,
    Quotient, Rat, Subspace,
};
use exotic_springer::Partition;
use num::Zero;
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = Matrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |flat| {
            Matrix::from_rows(flat.chunks(c).map(rats).collect())
        })
    })
}

fn vectors_strategy(ambient: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, ambient), 0..count)
        .prop_map(|vs| vs.iter().map(|v| rats(v)).collect())
}

/// Strictly upper triangular, hence nilpotent.
fn nilpotent_strategy() -> impl Strategy<Value = Matrix> {
    (2usize..6).prop_flat_map(|d| {
        prop::collection::vec(-3i64..=3, d * d).prop_map(move |flat| {
            let rows: Vec<Vec<Rat>> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if j > i { rat(flat[i * d + j]) } else { Rat::zero() })
                        .collect()
                })
                .collect();
            Matrix::from_rows(rows)
        })
    })
}

fn standard_symplectic(n: usize) -> BilinearForm {
    let mut gram = Matrix::zeros(2 * n, 2 * n);
    let mut rows = gram.row_vecs();
    for i in 0..n {
        rows[i][n + i] = rat(1);
        rows[n + i][i] = rat(-1);
    }
    gram = Matrix::from_rows(rows);
    BilinearForm::new(gram)
}

/// One nilpotent Jordan block of the given size: `x e_j = e_{j-1}`.
fn jordan_block(size: usize) -> Matrix {
    let mut rows = Matrix::zeros(size, size).row_vecs();
    for j in 1..size {
        rows[j - 1][j] = rat(1);
    }
    Matrix::from_rows(rows)
}

fn block_diag(blocks: &[Matrix]) -> Matrix {
    let total: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut rows = Matrix::zeros(total, total).row_vecs();
    let mut offset = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                rows[offset + i][offset + j] = b.row(i)[j].clone();
            }
        }
        offset += b.rows();
    }
    Matrix::from_rows(rows)
}

#[test]
fn jordan_type_reads_off_block_sizes() {
    assert_eq!(jordan_type(&jordan_block(1)).unwrap(), "1".parse::<Partition>().unwrap());
    assert_eq!(jordan_type(&jordan_block(4)).unwrap(), "4".parse::<Partition>().unwrap());
    let x = block_diag(&[jordan_block(3), jordan_block(2), jordan_block(2)]);
    assert_eq!(jordan_type(&x).unwrap(), "3,2,2".parse::<Partition>().unwrap());
}

#[test]
fn jordan_type_rejects_invertible_matrices() {
    assert!(jordan_type(&Matrix::identity(3)).is_err());
}

#[test]
fn quotient_of_a_shift_by_its_socle_shifts_one_shorter() {
    let x = jordan_block(3);
    let full = Subspace::full(3);
    let socle = Subspace::span(3, &[rats(&[1, 0, 0])]);
    let quot = Quotient::new(full, socle).unwrap();
    assert_eq!(quot.dim(), 2);
    let induced = quot.induced_operator(&x).unwrap();
    assert_eq!(jordan_type(&induced).unwrap(), "2".parse::<Partition>().unwrap());
}

#[test]
fn solve_affine_detects_inconsistency() {
    let rows = Matrix::from_ints(&[&[1, 0], &[1, 0]]);
    let rhs = rats(&[1, 2]);
    assert!(solve_affine(&rows, &rhs).is_none());
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix_strategy()) {
        let (r1, p1) = rref(&m);
        let (r2, p2) = rref(&r1);
        prop_assert_eq!(&r2, &r1);
        prop_assert_eq!(p2, p1);
    }

    #[test]
    fn rref_pivot_columns_are_unit_columns(m in matrix_strategy()) {
        let (r, pivots) = rref(&m);
        for (i, &p) in pivots.iter().enumerate() {
            for row in 0..r.rows() {
                let want = if row == i { rat(1) } else { rat(0) };
                prop_assert_eq!(&r.row(row)[p], &want);
            }
        }
        // Pivots strictly increase left to right.
        for w in pivots.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in matrix_strategy()) {
        let rank = rref(&m).1.len();
        let kernel = Subspace::kernel_of(&m);
        prop_assert_eq!(rank + kernel.dim(), m.cols());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix_strategy()) {
        let k = col_kernel(&m);
        for r in 0..k.rows() {
            prop_assert!(is_zero_vec(&m.apply(k.row(r))));
        }
    }

    #[test]
    fn solve_affine_solutions_really_solve(
        m in matrix_strategy(),
        x in prop::collection::vec(-4i64..=4, 4),
    ) {
        let x: Vec<Rat> = rats(&x)[..m.cols().min(4)].to_vec();
        prop_assume!(x.len() == m.cols());
        let rhs = m.apply(&x);
        let (sol, hom) = solve_affine(&m, &rhs).expect("consistent by construction");
        prop_assert_eq!(m.apply(&sol), rhs);
        for r in 0..hom.rows() {
            prop_assert!(is_zero_vec(&m.apply(hom.row(r))));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions_balance(
        us in vectors_strategy(4, 4),
        ws in vectors_strategy(4, 4),
    ) {
        let u = Subspace::span(4, &us);
        let w = Subspace::span(4, &ws);
        let s = u.sum(&w);
        let i = u.intersect(&w);
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains(&u) && s.contains(&w));
        prop_assert!(u.contains(&i) && w.contains(&i));
    }

    #[test]
    fn symplectic_perp_is_an_involution(us in vectors_strategy(6, 5)) {
        let form = standard_symplectic(3);
        let u = Subspace::span(6, &us);
        let p = form.perp(&u);
        prop_assert_eq!(p.dim(), 6 - u.dim());
        prop_assert_eq!(form.perp(&p), u);
    }

    #[test]
    fn quotient_projects_lifts_faithfully(
        ws in vectors_strategy(5, 3),
        extra in vectors_strategy(5, 3),
    ) {
        let den = Subspace::span(5, &ws);
        let num = den.sum(&Subspace::span(5, &extra));
        let quot = Quotient::new(num.clone(), den.clone()).unwrap();
        prop_assert_eq!(quot.dim(), num.dim() - den.dim());
        for b in den.basis_rows() {
            prop_assert!(is_zero_vec(&quot.project(&b).unwrap()));
        }
        for b in num.basis_rows() {
            let coords = quot.project(&b).unwrap();
            let lifted = quot.lift(&coords);
            // The lift is a coset representative: it differs from b by den.
            let diff: Vec<Rat> = b.iter().zip(&lifted).map(|(x, y)| x - y).collect();
            prop_assert!(den.contains_vec(&diff));
        }
    }

    #[test]
    fn nilpotent_jordan_type_partitions_the_dimension(x in nilpotent_strategy()) {
        let t = jordan_type(&x).unwrap();
        prop_assert_eq!(t.size(), x.rows());
        let tt = jordan_type(&x.transpose()).unwrap();
        prop_assert_eq!(tt, t);
    }

    #[test]
    fn matrix_powers_compose(x in nilpotent_strategy()) {
        prop_assert_eq!(x.pow(0), Matrix::identity(x.rows()));
        prop_assert_eq!(x.pow(3), x.pow(2).mul(&x));
    }
}
