//! Marked symplectic nilpotent pairs and their exotic Jordan types.
//!
//! A point is a pair `(v, x)` on a symplectic space of dimension `2n` where
//! `x` is nilpotent and self-adjoint for the form. Orbits of such pairs are
//! classified by bipartitions of `n`; [`build_normal_form`] produces the
//! standard representative of an orbit and [`ExoticPoint::etype`] recovers
//! the bipartition from an arbitrary representative.

use crate::linalg::{
    is_zero_vec, jordan_type, BilinearForm, Matrix, Quotient, Rat, Subspace,
};
use crate::partition::{from_lambda_rho, Bipartition, Partition, Side};
use crate::tableau::StandardBitableau;
use crate::{Error, Result};

use num::{One, Zero};

/// Position of a basis vector in the normal form: box `(row, col)` of the
/// diagram of `lambda`, either the chain vector or its dual partner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxLabel {
    pub row: usize,
    pub col: usize,
    pub dual: bool,
}

/// A symplectic space of dimension `2n`, optionally remembering how its
/// coordinates were labelled by a normal form.
#[derive(Clone, Debug)]
pub struct ExoticSpace {
    n: usize,
    form: BilinearForm,
    labels: Option<Vec<BoxLabel>>,
}

impl ExoticSpace {
    pub fn new(n: usize, form: BilinearForm) -> Result<Self> {
        if form.dim() != 2 * n {
            return Err(Error::Point(format!(
                "form has dimension {}, expected {}",
                form.dim(),
                2 * n
            )));
        }
        if !form.is_symplectic() {
            return Err(Error::Point("form is not skew or is degenerate".into()));
        }
        Ok(Self {
            n,
            form,
            labels: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn labels(&self) -> Option<&[BoxLabel]> {
        self.labels.as_deref()
    }
}

/// A marked nilpotent pair `(v, x)` on an [`ExoticSpace`].
#[derive(Clone, Debug)]
pub struct ExoticPoint {
    space: ExoticSpace,
    v: Vec<Rat>,
    x: Matrix,
}

impl ExoticPoint {
    /// Wraps and validates: `x` nilpotent, self-adjoint for the form.
    pub fn new(space: ExoticSpace, v: Vec<Rat>, x: Matrix) -> Result<Self> {
        let d = space.dim();
        if v.len() != d || x.rows() != d || x.cols() != d {
            return Err(Error::Point("dimension mismatch".into()));
        }
        let p = Self { space, v, x };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        jordan_type(&self.x).map_err(|_| Error::Point("x is not nilpotent".into()))?;
        // Self-adjointness x^T G = G x, the matrix form of <xu, w> = <u, xw>.
        let g = self.space.form.gram();
        if self.x.transpose().mul(g) != g.mul(&self.x) {
            return Err(Error::Point("x is not self-adjoint for the form".into()));
        }
        Ok(())
    }

    pub fn space(&self) -> &ExoticSpace {
        &self.space
    }

    pub fn v(&self) -> &[Rat] {
        &self.v
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn form(&self) -> &BilinearForm {
        self.space.form()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// The cyclic subspace spanned by `v, xv, x^2 v, ...`.
    pub fn cyclic_subspace(&self) -> Subspace {
        let mut vectors = Vec::new();
        let mut cur = self.v.clone();
        while !is_zero_vec(&cur) {
            vectors.push(cur.clone());
            cur = self.x.apply(&cur);
        }
        Subspace::span(self.dim(), &vectors)
    }

    /// Jordan type of `x` halved: the ambient type always has even
    /// multiplicities, and this returns one copy of each pair.
    pub fn halved_type(&self) -> Result<Partition> {
        let full = jordan_type(&self.x)?;
        let parts = full.parts();
        if parts.len() % 2 != 0 {
            return Err(Error::Point(format!(
                "ambient type {full} does not have even multiplicities"
            )));
        }
        let mut halved = Vec::with_capacity(parts.len() / 2);
        for pair in parts.chunks(2) {
            if pair[0] != pair[1] {
                return Err(Error::Point(format!(
                    "ambient type {full} does not have even multiplicities"
                )));
            }
            halved.push(pair[0]);
        }
        Partition::new(halved)
    }

    /// The exotic Jordan type: the bipartition `(mu, nu)` determined by the
    /// ambient type of `x` and the type of `x` on the quotient by the
    /// cyclic subspace of `v`.
    pub fn etype(&self) -> Result<Bipartition> {
        let lambda = self.halved_type()?;
        let quot = Quotient::new(Subspace::full(self.dim()), self.cyclic_subspace())?;
        let rho = jordan_type(&quot.induced_operator(&self.x)?)?;
        from_lambda_rho(&lambda, &rho)
            .map_err(|e| Error::Point(format!("no exotic type: {e}")))
    }

    /// Reduction by an admissible line: the marked pair induced on
    /// `perp(line)/line`. Errors unless the line is one-dimensional, killed
    /// by `x`, and orthogonal to `v`. Also returns the quotient structure so
    /// subspaces can be lifted back.
    pub fn reduce_by_line(&self, line: &Subspace) -> Result<(ExoticPoint, Quotient)> {
        if line.ambient() != self.dim() || line.dim() != 1 {
            return Err(Error::Point("reduction needs a line in the ambient space".into()));
        }
        if line.image_under(&self.x).dim() != 0 {
            return Err(Error::Point("line is not contained in ker x".into()));
        }
        let perp = self.form().perp(line);
        if !perp.contains_vec(&self.v) {
            return Err(Error::Point("marked vector is not orthogonal to the line".into()));
        }
        let quot = Quotient::new(perp, line.clone())?;
        let x_red = quot.induced_operator(&self.x)?;
        let form_red = quot.induced_form(self.form());
        let v_red = quot.project(&self.v)?;
        let space = ExoticSpace::new(self.space.n - 1, form_red)?;
        let point = ExoticPoint::new(space, v_red, x_red)?;
        Ok((point, quot))
    }
}

/// The normal representative of the orbit labelled by `bp`: a basis of
/// chain vectors `v_{i,1..lambda_i}` and dual chains `v*_{i,1..lambda_i}`
/// with `<v_{ij}, v*_{ij}> = 1` the only nonzero pairings, `x` shifting each
/// chain, and the marked vector `v = sum_i v_{i, mu_i}`.
pub fn build_normal_form(bp: &Bipartition) -> ExoticPoint {
    let lambda = bp.lambda();
    let n = lambda.size();
    let d = 2 * n;
    let mut labels = Vec::with_capacity(d);
    for dual in [false, true] {
        for row in 1..=lambda.len() {
            for col in 1..=lambda.part(row) {
                labels.push(BoxLabel { row, col, dual });
            }
        }
    }
    let idx = |row: usize, col: usize, dual: bool| -> usize {
        labels
            .iter()
            .position(|l| l.row == row && l.col == col && l.dual == dual)
            .expect("label exists")
    };
    let mut gram = Matrix::zeros(d, d);
    let mut x = Matrix::zeros(d, d);
    let mut v = vec![Rat::zero(); d];
    for row in 1..=lambda.len() {
        for col in 1..=lambda.part(row) {
            let plain = idx(row, col, false);
            let dual = idx(row, col, true);
            gram[[plain, dual]] = Rat::one();
            gram[[dual, plain]] = -Rat::one();
            if col >= 2 {
                // x v_{i,j} = v_{i,j-1}
                x[[idx(row, col - 1, false), plain]] = Rat::one();
            }
            if col < lambda.part(row) {
                // x v*_{i,j} = v*_{i,j+1}
                x[[idx(row, col + 1, true), dual]] = Rat::one();
            }
        }
    }
    for row in 1..=bp.mu.len() {
        v[idx(row, bp.mu.part(row), false)] = Rat::one();
    }
    let mut space = ExoticSpace::new(n, BilinearForm::new(gram)).expect("normal form is symplectic");
    space.labels = Some(labels);
    ExoticPoint::new(space, v, x).expect("normal form is a valid point")
}

/// A half flag `F_1 < ... < F_n` of isotropic subspaces.
#[derive(Clone, Debug)]
pub struct Flag {
    steps: Vec<Subspace>,
}

impl Flag {
    /// Validates dimensions, the chain condition, and isotropy of the top
    /// step (which implies isotropy of the rest).
    pub fn new(steps: Vec<Subspace>, form: &BilinearForm) -> Result<Self> {
        let n = steps.len();
        for (i, s) in steps.iter().enumerate() {
            if s.ambient() != form.dim() || s.dim() != i + 1 {
                return Err(Error::Invalid(format!("flag step {} has dimension {}", i + 1, s.dim())));
            }
            if i > 0 && !s.contains(&steps[i - 1]) {
                return Err(Error::Invalid(format!("flag step {} does not contain step {i}", i + 1)));
            }
        }
        if n > 0 {
            let top = &steps[n - 1];
            if !form.perp(top).contains(top) {
                return Err(Error::Invalid("top flag step is not isotropic".into()));
            }
        }
        Ok(Self { steps })
    }

    pub fn n(&self) -> usize {
        self.steps.len()
    }

    /// 1-based access to `F_i`.
    pub fn step(&self, i: usize) -> &Subspace {
        &self.steps[i - 1]
    }

    pub fn steps(&self) -> &[Subspace] {
        &self.steps
    }

    /// The full isotropic-coisotropic chain `F_0 <= ... <= F_2n` with
    /// `F_{2n-i} = perp(F_i)`.
    pub fn full_steps(&self, form: &BilinearForm) -> Vec<Subspace> {
        let n = self.n();
        let mut out = Vec::with_capacity(2 * n + 1);
        out.push(Subspace::zero(form.dim()));
        out.extend(self.steps.iter().cloned());
        for i in (0..n).rev() {
            out.push(form.perp(&out[i]));
        }
        out
    }
}

/// Checks that the flag lies in the fibre over `(v, x)`: the marked vector
/// sits in the top step and `x` moves every step of the full chain into the
/// previous one.
pub fn is_in_fibre(p: &ExoticPoint, flag: &Flag) -> Result<()> {
    if flag.n() != p.space().n() {
        return Err(Error::Check(format!(
            "flag has {} steps, expected {}",
            flag.n(),
            p.space().n()
        )));
    }
    if flag.n() == 0 {
        return Ok(());
    }
    if !flag.step(flag.n()).contains_vec(p.v()) {
        return Err(Error::Check("marked vector is not in the top flag step".into()));
    }
    let full = flag.full_steps(p.form());
    for i in 1..full.len() {
        if !full[i - 1].contains(&full[i].image_under(p.x())) {
            return Err(Error::Check(format!("x F_{i} is not contained in F_{}", i - 1)));
        }
    }
    Ok(())
}

/// Outcome of the type-sequence map on a flag.
#[derive(Clone, Debug)]
pub enum PhiOutcome {
    /// The types nest one box at a time; the growth records a bitableau.
    Nested(StandardBitableau),
    /// The smallest `i >= 1` with `Phi^i` not contained in `Phi^{i-1}`.
    NonNested { step: usize },
}

/// The sequence `Phi^i = etype on perp(F_i)/F_i` for `i = 0..=n`, plus the
/// bitableau it spells out when the sequence nests.
#[derive(Clone, Debug)]
pub struct PhiResult {
    pub shapes: Vec<Bipartition>,
    pub outcome: PhiOutcome,
}

pub fn phi(p: &ExoticPoint, flag: &Flag) -> Result<PhiResult> {
    is_in_fibre(p, flag)?;
    let n = flag.n();
    let mut shapes = Vec::with_capacity(n + 1);
    shapes.push(p.etype()?);
    for i in 1..=n {
        let f = flag.step(i);
        let quot = Quotient::new(p.form().perp(f), f.clone())?;
        let x_red = quot.induced_operator(p.x())?;
        let form_red = quot.induced_form(p.form());
        let v_red = quot.project(p.v())?;
        let space = ExoticSpace::new(p.space().n() - i, form_red)?;
        let reduced = ExoticPoint::new(space, v_red, x_red)?;
        shapes.push(reduced.etype()?);
    }
    for i in 1..=n {
        if !shapes[i - 1].contains(&shapes[i]) {
            return Ok(PhiResult {
                shapes,
                outcome: PhiOutcome::NonNested { step: i },
            });
        }
    }
    // Box k of the tableau appears between Phi^{n-k+1} and Phi^{n-k}.
    let mut t = StandardBitableau::empty();
    let mut current = shapes[n].clone();
    debug_assert_eq!(current, Bipartition::empty());
    for k in 1..=n {
        let bigger = &shapes[n - k];
        let addition = bigger
            .removal_to(&current)
            .map_err(|_| Error::Check("nested types do not differ by one box".into()))?;
        t = match addition.side {
            Side::Left => t_with(&t, Side::Left, addition.row, k),
            Side::Right => t_with(&t, Side::Right, addition.row, k),
        };
        current = bigger.clone();
    }
    let tableau = StandardBitableau::new(t.left_rows().to_vec(), t.right_rows().to_vec())?;
    Ok(PhiResult {
        shapes,
        outcome: PhiOutcome::Nested(tableau),
    })
}

fn t_with(t: &StandardBitableau, side: Side, row: usize, entry: usize) -> StandardBitableau {
    let mut left = t.left_rows().to_vec();
    let mut right = t.right_rows().to_vec();
    let rows = match side {
        Side::Left => &mut left,
        Side::Right => &mut right,
    };
    if row == rows.len() + 1 {
        rows.push(vec![entry]);
    } else {
        rows[row - 1].push(entry);
    }
    StandardBitableau::new(left, right).expect("growth keeps the filling standard")
}
