//! Dense matrices over arbitrary-precision rationals, subspaces in reduced
//! row echelon form, skew bilinear forms, quotient spaces, and Jordan types
//! of nilpotent operators.
//!
//! Vectors are column vectors when an operator acts on them; subspace bases
//! are stored as matrix rows. Row echelon form is the canonical
//! representative, so subspace equality is plain structural equality.

use std::fmt;
use std::ops::{Index, IndexMut};

use num::{BigRational, One, Zero};
use rand::Rng;

use crate::partition::Partition;
use crate::{Error, Result};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Integer slice as a rational vector.
pub fn rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&n| rat(n)).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl Index<[usize; 2]> for Matrix {
    type Output = Rat;
    fn index(&self, [r, c]: [usize; 2]) -> &Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &self.a[r * self.cols + c]
    }
}

impl IndexMut<[usize; 2]> for Matrix {
    fn index_mut(&mut self, [r, c]: [usize; 2]) -> &mut Rat {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.a[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            a: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[[i, i]] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    /// A matrix with no rows but a definite column count.
    pub fn empty_rows(cols: usize) -> Self {
        Self {
            rows: 0,
            cols,
            a: Vec::new(),
        }
    }

    /// Test helper: build from integer rows.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| rats(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.a[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[[c, r]] = self[[r, c]].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let lhs = &self[[r, k]];
                if lhs.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let term = lhs * &other[[k, c]];
                    out[[r, c]] += term;
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols, "pow needs a square matrix");
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn vstack(top: &Matrix, bottom: &Matrix) -> Matrix {
        if top.rows == 0 {
            return bottom.clone();
        }
        if bottom.rows == 0 {
            return top.clone();
        }
        assert_eq!(top.cols, bottom.cols, "dimension mismatch in vstack");
        let mut a = top.a.clone();
        a.extend_from_slice(&bottom.a);
        Matrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            a,
        }
    }
}

/// Reduced row echelon form. Returns the reduced matrix and the pivot
/// columns, one per nonzero row.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m[[r, col]].is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols {
                let tmp = m[[p, c]].clone();
                m[[p, c]] = m[[row, c]].clone();
                m[[row, c]] = tmp;
            }
        }
        let inv = m[[row, col]].clone();
        for c in col..m.cols {
            let val = &m[[row, c]] / &inv;
            m[[row, c]] = val;
        }
        for r in 0..m.rows {
            if r != row && !m[[r, col]].is_zero() {
                let factor = m[[r, col]].clone();
                for c in col..m.cols {
                    let val = &m[[r, c]] - &factor * &m[[row, c]];
                    m[[r, c]] = val;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// Basis rows for the kernel `{v : m v = 0}`, in reduced row echelon form.
pub fn col_kernel(m: &Matrix) -> Matrix {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut rows = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Rat::zero(); m.cols];
        v[f] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[[i, f]].clone();
        }
        rows.push(v);
    }
    if rows.is_empty() {
        return Matrix::empty_rows(m.cols);
    }
    let (canon, _) = rref(&Matrix::from_rows(rows));
    canon
}

/// Any solution of `rows * x = rhs` together with a basis of the
/// homogeneous solutions, or `None` if the system is inconsistent.
pub fn solve_affine(rows: &Matrix, rhs: &[Rat]) -> Option<(Vec<Rat>, Matrix)> {
    assert_eq!(rows.rows(), rhs.len(), "dimension mismatch in solve_affine");
    let n = rows.cols();
    let mut aug = Matrix::zeros(rows.rows(), n + 1);
    for r in 0..rows.rows() {
        for c in 0..n {
            aug[[r, c]] = rows[[r, c]].clone();
        }
        aug[[r, n]] = rhs[r].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut particular = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = red[[i, n]].clone();
    }
    Some((particular, col_kernel(rows)))
}

/// A linear subspace with a canonical (reduced row echelon) basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}) {:?}",
            self.dim(),
            self.ambient,
            self.basis
        )
    }
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rat>]) -> Subspace {
        assert!(vectors.iter().all(|v| v.len() == ambient));
        let input = if vectors.is_empty() {
            Matrix::empty_rows(ambient)
        } else {
            Matrix::from_rows(vectors.to_vec())
        };
        let (red, pivots) = rref(&input);
        let rows: Vec<Vec<Rat>> = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        let basis = if rows.is_empty() {
            Matrix::empty_rows(ambient)
        } else {
            Matrix::from_rows(rows)
        };
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    /// Adopts rows that are already reduced (used by kernel computations).
    fn from_rref(ambient: usize, reduced: Matrix, pivots: Vec<usize>) -> Subspace {
        Subspace {
            ambient,
            basis: reduced,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::span(ambient, &Matrix::identity(ambient).row_vecs())
    }

    pub fn kernel_of(m: &Matrix) -> Subspace {
        let k = col_kernel(m);
        let pivots = (0..k.rows())
            .map(|r| k.row(r).iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        Subspace::from_rref(m.cols(), k, pivots)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rat>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical coset representative: subtracts the projection onto the
    /// basis rows, leaving zeros in all pivot coordinates.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for c in 0..self.ambient {
                let val = &out[c] - &factor * &self.basis[[i, c]];
                out[c] = val;
            }
        }
        out
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|v| self.contains_vec(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::span(self.ambient, &rows)
    }

    /// Rows spanning `{u : B u = 0}` for the basis matrix `B`; a vector lies
    /// in the subspace iff it is annihilated by all of them under the
    /// standard dot product.
    pub fn annihilator(&self) -> Matrix {
        col_kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let stacked = Matrix::vstack(&self.annihilator(), &other.annihilator());
        if stacked.rows() == 0 {
            return Subspace::full(self.ambient);
        }
        Subspace::kernel_of(&stacked)
    }

    /// The image `{m b : b in basis}` as a subspace of the codomain.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let rows: Vec<Vec<Rat>> = self.basis_rows().iter().map(|b| m.apply(b)).collect();
        Subspace::span(m.rows(), &rows)
    }

    /// `{v : m v in w}`.
    pub fn preimage_under(m: &Matrix, w: &Subspace) -> Subspace {
        assert_eq!(m.rows(), w.ambient);
        let ann = w.annihilator();
        if ann.rows() == 0 {
            return Subspace::full(m.cols());
        }
        Subspace::kernel_of(&ann.mul(m))
    }

    /// Random integer combination of the basis rows with coefficients in
    /// `[-bound, bound]`. May be zero.
    pub fn random_element<R: Rng>(&self, rng: &mut R, bound: i64) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient];
        for b in self.basis_rows() {
            let c = rat(rng.gen_range(-bound..=bound));
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&b) {
                *o += &c * x;
            }
        }
        out
    }
}

/// A bilinear form given by its Gram matrix; `pair(u, v) = u^T G v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Self {
        assert_eq!(gram.rows(), gram.cols(), "Gram matrix must be square");
        Self { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn pair(&self, u: &[Rat], v: &[Rat]) -> Rat {
        self.gram
            .apply(v)
            .iter()
            .zip(u)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Skew-symmetric and nondegenerate.
    pub fn is_symplectic(&self) -> bool {
        let neg_t = {
            let mut t = self.gram.transpose();
            for r in 0..t.rows() {
                for c in 0..t.cols() {
                    let v = -t[[r, c]].clone();
                    t[[r, c]] = v;
                }
            }
            t
        };
        if self.gram != neg_t {
            return false;
        }
        let (_, pivots) = rref(&self.gram);
        pivots.len() == self.dim()
    }

    /// Orthogonal complement `{v : pair(w, v) = 0 for all w in sub}`.
    pub fn perp(&self, sub: &Subspace) -> Subspace {
        assert_eq!(sub.ambient(), self.dim());
        if sub.dim() == 0 {
            return Subspace::full(self.dim());
        }
        Subspace::kernel_of(&sub.basis().mul(&self.gram))
    }

    /// Gram matrix restricted to the given basis rows.
    pub fn restrict(&self, rows: &Matrix) -> Matrix {
        rows.mul(&self.gram).mul(&rows.transpose())
    }
}

/// A quotient `num / den` with a fixed complement for lifting.
///
/// The complement is spanned by the echelon rows of `num` whose pivots are
/// not pivots of `den`; since `den`'s pivot columns are a subset of `num`'s,
/// coset representatives reduced modulo `den` have coordinates directly at
/// those remaining pivots.
#[derive(Clone, Debug)]
pub struct Quotient {
    num: Subspace,
    den: Subspace,
    lift_rows: Matrix,
    lift_pivots: Vec<usize>,
}

impl Quotient {
    pub fn new(num: Subspace, den: Subspace) -> Result<Self> {
        if num.ambient() != den.ambient() || !num.contains(&den) {
            return Err(Error::Linalg(
                "quotient denominator is not contained in the numerator".into(),
            ));
        }
        let mut lift = Vec::new();
        let mut lift_pivots = Vec::new();
        for (i, &p) in num.pivots().iter().enumerate() {
            if !den.pivots().contains(&p) {
                lift.push(num.basis().row(i).to_vec());
                lift_pivots.push(p);
            }
        }
        let lift_rows = if lift.is_empty() {
            Matrix::empty_rows(num.ambient())
        } else {
            Matrix::from_rows(lift)
        };
        let q = Quotient {
            num,
            den,
            lift_rows,
            lift_pivots,
        };
        assert_eq!(q.dim() + q.den.dim(), q.num.dim());
        Ok(q)
    }

    pub fn dim(&self) -> usize {
        self.lift_pivots.len()
    }

    pub fn num(&self) -> &Subspace {
        &self.num
    }

    pub fn den(&self) -> &Subspace {
        &self.den
    }

    /// Coordinates of `v + den` in the lift basis. Errors if `v` is not in
    /// the numerator.
    pub fn project(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let reduced = self.den.reduce(v);
        let coords: Vec<Rat> = self.lift_pivots.iter().map(|&p| reduced[p].clone()).collect();
        // Reconstruction check doubles as membership test.
        let back = self.lift(&coords);
        if back != reduced {
            return Err(Error::Linalg(
                "vector is not in the quotient numerator".into(),
            ));
        }
        Ok(coords)
    }

    /// The chosen representative of the coset with these coordinates.
    pub fn lift(&self, coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Rat::zero(); self.num.ambient()];
        for (c, row) in coords.iter().zip(self.lift_rows.row_vecs()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&row) {
                *o += c * x;
            }
        }
        out
    }

    /// Matrix of the operator induced on the quotient. Errors unless `x`
    /// preserves both numerator and denominator.
    pub fn induced_operator(&self, x: &Matrix) -> Result<Matrix> {
        if !self.num.contains(&self.num.image_under(x)) {
            return Err(Error::Linalg("operator does not preserve the numerator".into()));
        }
        if !self.den.contains(&self.den.image_under(x)) {
            return Err(Error::Linalg("operator does not preserve the denominator".into()));
        }
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (j, row) in self.lift_rows.row_vecs().into_iter().enumerate() {
            let coords = self.project(&x.apply(&row))?;
            for (i, c) in coords.into_iter().enumerate() {
                out[[i, j]] = c;
            }
        }
        Ok(out)
    }

    /// Form induced on the quotient via the lift basis. Meaningful when the
    /// denominator is isotropic and the numerator is its perp.
    pub fn induced_form(&self, form: &BilinearForm) -> BilinearForm {
        BilinearForm::new(form.restrict(&self.lift_rows))
    }
}

/// Jordan type of a nilpotent matrix: part `j` of the transpose counts the
/// kernel growth of successive powers. Errors if the matrix is not
/// nilpotent.
pub fn jordan_type(x: &Matrix) -> Result<Partition> {
    assert_eq!(x.rows(), x.cols(), "jordan_type needs a square matrix");
    let d = x.rows();
    let mut col_counts = Vec::new();
    let mut power = Matrix::identity(d);
    let mut prev = 0usize;
    while prev < d {
        power = power.mul(x);
        let rank = rref(&power).1.len();
        let ker = d - rank;
        if ker == prev {
            return Err(Error::Linalg("matrix is not nilpotent".into()));
        }
        col_counts.push(ker - prev);
        prev = ker;
    }
    let cols = Partition::new(col_counts)
        .map_err(|_| Error::Linalg("kernel growth is not monotone".into()))?;
    Ok(cols.transpose())
}
