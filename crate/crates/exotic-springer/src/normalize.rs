//! Recovery of an adapted basis for an arbitrary valid marked pair.
//!
//! [`build_normal_form`](crate::exotic::build_normal_form) produces points
//! whose chains are coordinate vectors; after a reduction the point is a
//! generic matrix again, and the samplers need chain coordinates back. This
//! module rebuilds them.
//!
//! Rows are peeled off longest first. Writing `(w, y)` for the current
//! marked pair on the current window `W` and `(l, m, u)` for the row's
//! lambda, mu, nu, a chain top `t` and a dual seed `s` are solutions of
//!
//! ```text
//!   <w, y^a t> = 0          for a = 0..l          (t stays clear of the marking)
//!   y^{l' + u} t = y^{l'} w                       (l' = next row's lambda; pins the residue)
//!   y^{l-1} t != 0                                (full chain length, open condition)
//!   <y^k t, s> = [k == l-1] for k = 0..l
//!   <y^b w, s> = [b == m-1] for b = 0..l
//! ```
//!
//! Chains of `t` and of `s` are isotropic for free because `<y^k t, t>` is
//! killed by skewness combined with self-adjointness. The two chains span a
//! nondegenerate invariant block, the residue `w - y^u t` lands in its
//! perp, and the loop continues there. Linear systems are solved exactly;
//! the free choices are randomised over small integers and redrawn whenever
//! an open condition or a later system fails. The finished basis is
//! certified by [`NormalBasis::verify`], so a lucky draw is never trusted
//! blindly.

use num::{One, Zero};
use rand::Rng;

use crate::exotic::ExoticPoint;
use crate::linalg::{is_zero_vec, rat, solve_affine, Matrix, Rat, Subspace};
use crate::partition::Bipartition;
use crate::{Error, Result};

/// Coefficient bound for randomised draws. The bases built here seed the
/// coordinates of sampled flags, so the height matches the flag samplers:
/// large enough that independent draws essentially never collide.
const DRAW_BOUND: i64 = 1_000_000;
/// Draws of `(t, s)` per row before the whole construction restarts.
const ROW_TRIES: usize = 60;
/// Whole-construction restarts before giving up.
const RESTARTS: usize = 5;

/// Chain vectors `u_{i,j}` and dual chains `u*_{i,j}` of a normal basis,
/// in ambient coordinates. Rows are 1-based, columns run `1..=lambda_i`.
#[derive(Clone, Debug)]
pub struct NormalBasis {
    bp: Bipartition,
    chains: Vec<(Vec<Vec<Rat>>, Vec<Vec<Rat>>)>,
}

impl NormalBasis {
    pub fn bp(&self) -> &Bipartition {
        &self.bp
    }

    /// Chain vector `u_{i,j}`.
    pub fn u(&self, i: usize, j: usize) -> &[Rat] {
        &self.chains[i - 1].0[j - 1]
    }

    /// Dual chain vector `u*_{i,j}`.
    pub fn u_star(&self, i: usize, j: usize) -> &[Rat] {
        &self.chains[i - 1].1[j - 1]
    }

    /// The basis of the normal representative itself: unit vectors laid out
    /// the way [`build_normal_form`](crate::exotic::build_normal_form)
    /// orders its coordinates.
    pub fn standard(bp: &Bipartition) -> NormalBasis {
        let lambda = bp.lambda();
        let n = lambda.size();
        let unit = |k: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); 2 * n];
            v[k] = Rat::one();
            v
        };
        let mut chains = Vec::new();
        let mut offset = 0;
        for i in 1..=lambda.len() {
            let l = lambda.part(i);
            let plain = (0..l).map(|j| unit(offset + j)).collect();
            let dual = (0..l).map(|j| unit(n + offset + j)).collect();
            chains.push((plain, dual));
            offset += l;
        }
        NormalBasis {
            bp: bp.clone(),
            chains,
        }
    }

    /// Exact certificate that the chains are a normal basis for `p`: chain
    /// shifts under `x`, the delta pairing pattern, and the marking
    /// `v = sum_i u_{i, mu_i}`.
    pub fn verify(&self, p: &ExoticPoint) -> Result<()> {
        let bp = &self.bp;
        let lambda = bp.lambda();
        let x = p.x();
        let form = p.form();
        let fail = |msg: String| Err(Error::Check(format!("normal basis check: {msg}")));
        if self.chains.len() != lambda.len() {
            return fail("row count mismatch".into());
        }
        for i in 1..=lambda.len() {
            let l = lambda.part(i);
            let (plain, dual) = &self.chains[i - 1];
            if plain.len() != l || dual.len() != l {
                return fail(format!("row {i} has the wrong chain length"));
            }
            for j in 1..=l {
                let down = x.apply(self.u(i, j));
                let expect = if j >= 2 {
                    self.u(i, j - 1).to_vec()
                } else {
                    vec![Rat::zero(); p.dim()]
                };
                if down != expect {
                    return fail(format!("x does not shift u_({i},{j})"));
                }
                let up = x.apply(self.u_star(i, j));
                let expect = if j < l {
                    self.u_star(i, j + 1).to_vec()
                } else {
                    vec![Rat::zero(); p.dim()]
                };
                if up != expect {
                    return fail(format!("x does not shift u*_({i},{j})"));
                }
            }
        }
        for i in 1..=lambda.len() {
            for j in 1..=lambda.part(i) {
                for i2 in 1..=lambda.len() {
                    for j2 in 1..=lambda.part(i2) {
                        if !form.pair(self.u(i, j), self.u(i2, j2)).is_zero() {
                            return fail(format!("u_({i},{j}) pairs with u_({i2},{j2})"));
                        }
                        if !form.pair(self.u_star(i, j), self.u_star(i2, j2)).is_zero() {
                            return fail(format!("u*_({i},{j}) pairs with u*_({i2},{j2})"));
                        }
                        let got = form.pair(self.u(i, j), self.u_star(i2, j2));
                        let want = if i == i2 && j == j2 {
                            Rat::one()
                        } else {
                            Rat::zero()
                        };
                        if got != want {
                            return fail(format!("<u_({i},{j}), u*_({i2},{j2})> = {got}"));
                        }
                    }
                }
            }
        }
        let mut marked = vec![Rat::zero(); p.dim()];
        for i in 1..=bp.mu.len() {
            for (m, c) in marked.iter_mut().zip(self.u(i, bp.mu.part(i))) {
                *m += c;
            }
        }
        if marked != p.v() {
            return fail("marked vector is not the sum of the mu-column chain vectors".into());
        }
        Ok(())
    }
}

fn apply_pow(x: &Matrix, k: usize, v: &[Rat]) -> Vec<Rat> {
    let mut out = v.to_vec();
    for _ in 0..k {
        out = x.apply(&out);
    }
    out
}

fn combine(basis: &[Vec<Rat>], coeffs: &[Rat]) -> Vec<Rat> {
    let d = basis.first().map_or(0, Vec::len);
    let mut out = vec![Rat::zero(); d];
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

fn randomized_solution<R: Rng>(
    particular: &[Rat],
    kernel: &Matrix,
    rng: &mut R,
) -> Vec<Rat> {
    let mut out = particular.to_vec();
    for krow in kernel.row_vecs() {
        let c = rat(rng.gen_range(-DRAW_BOUND..=DRAW_BOUND));
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(&krow) {
            *o += &c * x;
        }
    }
    out
}

/// Computes a certified normal basis for any valid point. Randomised with
/// retries; errors only after all restarts fail.
pub fn normal_basis<R: Rng>(p: &ExoticPoint, rng: &mut R) -> Result<NormalBasis> {
    let bp = p.etype()?;
    let mut last = None;
    for _ in 0..RESTARTS {
        match try_build(p, &bp, rng).and_then(|nb| nb.verify(p).map(|()| nb)) {
            Ok(nb) => return Ok(nb),
            Err(e) => last = Some(e),
        }
    }
    Err(Error::Sampling(format!(
        "normal basis construction for {bp} failed after {RESTARTS} restarts: {}",
        last.expect("at least one attempt")
    )))
}

fn try_build<R: Rng>(p: &ExoticPoint, bp: &Bipartition, rng: &mut R) -> Result<NormalBasis> {
    let lambda = bp.lambda();
    let d = p.dim();
    let x = p.x();
    let form = p.form();
    let mut window = Subspace::full(d);
    let mut v_cur = p.v().to_vec();
    let mut chains = Vec::new();
    for r in 1..=lambda.len() {
        let l = lambda.part(r);
        let mu = bp.mu.part(r);
        let nu = bp.nu.part(r);
        let l_next = lambda.part(r + 1);
        let basis = window.basis_rows();
        let k = basis.len();
        let max_pow = l.max(l_next + nu);
        // powered[a][i] = x^a (basis_i)
        let mut powered = vec![basis.clone()];
        for a in 1..=max_pow {
            let prev: &Vec<Vec<Rat>> = &powered[a - 1];
            powered.push(prev.iter().map(|b| x.apply(b)).collect());
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for a in 0..l {
            rows.push(
                (0..k)
                    .map(|i| form.pair(&v_cur, &powered[a][i]))
                    .collect::<Vec<_>>(),
            );
            rhs.push(Rat::zero());
        }
        let target = apply_pow(x, l_next, &v_cur);
        for coord in 0..d {
            rows.push(
                (0..k)
                    .map(|i| powered[l_next + nu][i][coord].clone())
                    .collect(),
            );
            rhs.push(target[coord].clone());
        }
        let (t_part, t_kernel) = solve_affine(&Matrix::from_rows(rows), &rhs)
            .ok_or_else(|| Error::Sampling(format!("row {r}: chain top system is infeasible")))?;
        let mut found = None;
        'tries: for _ in 0..ROW_TRIES {
            let t = combine(&basis, &randomized_solution(&t_part, &t_kernel, rng));
            let t_chain: Vec<Vec<Rat>> = (1..=l).map(|j| apply_pow(x, l - j, &t)).collect();
            if is_zero_vec(&t_chain[0]) {
                continue 'tries;
            }
            let mut srows = Vec::new();
            let mut srhs = Vec::new();
            for kk in 0..l {
                // x^kk t = t_chain[l-1-kk]
                let u = &t_chain[l - 1 - kk];
                srows.push((0..k).map(|i| form.pair(u, &basis[i])).collect::<Vec<_>>());
                srhs.push(if kk == l - 1 { Rat::one() } else { Rat::zero() });
            }
            for b in 0..l {
                let u = apply_pow(x, b, &v_cur);
                srows.push((0..k).map(|i| form.pair(&u, &basis[i])).collect());
                srhs.push(if mu >= 1 && b == mu - 1 {
                    Rat::one()
                } else {
                    Rat::zero()
                });
            }
            let Some((s_part, s_kernel)) = solve_affine(&Matrix::from_rows(srows), &srhs) else {
                continue 'tries;
            };
            let s = combine(&basis, &randomized_solution(&s_part, &s_kernel, rng));
            let s_chain: Vec<Vec<Rat>> = (1..=l).map(|j| apply_pow(x, j - 1, &s)).collect();
            found = Some((t, t_chain, s_chain));
            break;
        }
        let Some((t, t_chain, s_chain)) = found else {
            return Err(Error::Sampling(format!(
                "row {r}: no chain pair found in {ROW_TRIES} draws"
            )));
        };
        let mut block_rows = t_chain.clone();
        block_rows.extend(s_chain.iter().cloned());
        let block = Subspace::span(d, &block_rows);
        if block.dim() != 2 * l {
            return Err(Error::Sampling(format!("row {r}: chains are dependent")));
        }
        let next_window = window.intersect(&form.perp(&block));
        if next_window.dim() + 2 * l != window.dim() {
            return Err(Error::Sampling(format!("row {r}: block is degenerate")));
        }
        let v_next: Vec<Rat> = {
            let drop = apply_pow(x, nu, &t);
            v_cur.iter().zip(&drop).map(|(a, b)| a - b).collect()
        };
        if !next_window.contains_vec(&v_next) {
            return Err(Error::Sampling(format!(
                "row {r}: residual marking left the window"
            )));
        }
        chains.push((t_chain, s_chain));
        window = next_window;
        v_cur = v_next;
    }
    if !is_zero_vec(&v_cur) {
        return Err(Error::Sampling("marking residue after the last row".into()));
    }
    Ok(NormalBasis {
        bp: bp.clone(),
        chains,
    })
}
