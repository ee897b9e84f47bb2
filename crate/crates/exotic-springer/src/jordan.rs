//! Closed-form predictions for how an exotic Jordan type changes under
//! reduction by an admissible line, and seeded samplers that realise a
//! prescribed change.
//!
//! A line in `ker x` orthogonal to the marked cyclic subspace is written in
//! chain coordinates as
//!
//! ```text
//!   v1 = sum_i alpha_i u_{i,1} + sum_i beta_i u*_{i, lambda_i}
//! ```
//!
//! with the orthogonality constraint `sum over {i : nu_i = 0} of beta_i = 0`.
//! All predictions read only the support pattern of the coefficients, never
//! the matrices; the matching brute-force computations live in
//! [`oracle`](crate::oracle) and the two routes are compared in tests.

use num::Zero;
use rand::Rng;

use crate::exotic::{ExoticPoint, Flag};
use crate::linalg::{is_zero_vec, rat, Rat, Subspace};
use crate::normalize::{normal_basis, NormalBasis};
use crate::partition::{rho_of, from_lambda_rho, Bipartition, Partition, Side};
use crate::tableau::StandardBitableau;
use crate::{Error, Result};

/// Coefficient bound for cross-check lines. Small values keep the
/// brute-force route fast and make cancellation branches (balanced beta
/// sums, repeated alphas) show up often.
pub const LINE_DRAW_BOUND: i64 = 20;
/// Coefficient bound for lines that become flag steps. Two flags drawn
/// over the same point must avoid each other's special positions, and the
/// collision probability scales with one over this height; 20 is far too
/// small to keep a whole rank-3 table of pairs generic.
pub const FLAG_DRAW_BOUND: i64 = 1_000_000;
/// Draws per bound level in [`sample_line_for_shape`].
pub const LINE_TRIES: usize = 200;
/// Restarts of the whole flag construction when an inner step fails.
const FLAG_RETRIES: usize = 4;

/// Chain coordinates of a line in `ker x`, padded to the length of
/// `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCoeffs {
    alpha: Vec<Rat>,
    beta: Vec<Rat>,
}

impl LineCoeffs {
    /// Pads both coefficient vectors to `len(lambda)` rows. Rejects vectors
    /// that are longer than that or identically zero.
    pub fn new(bp: &Bipartition, mut alpha: Vec<Rat>, mut beta: Vec<Rat>) -> Result<Self> {
        let ell = bp.lambda().len();
        if alpha.len() > ell || beta.len() > ell {
            return Err(Error::Invalid(format!(
                "coefficients for more than {ell} rows"
            )));
        }
        alpha.resize(ell, Rat::zero());
        beta.resize(ell, Rat::zero());
        if is_zero_vec(&alpha) && is_zero_vec(&beta) {
            return Err(Error::Invalid("zero coefficients do not span a line".into()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn from_ints(bp: &Bipartition, alpha: &[i64], beta: &[i64]) -> Result<Self> {
        Self::new(
            bp,
            alpha.iter().map(|&a| rat(a)).collect(),
            beta.iter().map(|&b| rat(b)).collect(),
        )
    }

    /// 1-based coefficient access.
    pub fn alpha(&self, i: usize) -> &Rat {
        &self.alpha[i - 1]
    }

    pub fn beta(&self, i: usize) -> &Rat {
        &self.beta[i - 1]
    }

    pub fn rows(&self) -> usize {
        self.alpha.len()
    }
}

/// The vector with these chain coordinates, in the ambient coordinates of
/// the given normal basis.
pub fn line_vector(nb: &NormalBasis, coeffs: &LineCoeffs) -> Vec<Rat> {
    let lambda = nb.bp().lambda();
    let dim = 2 * lambda.size();
    let mut out = vec![Rat::zero(); dim];
    for i in 1..=lambda.len() {
        for (source, c) in [
            (nb.u(i, 1), coeffs.alpha(i)),
            (nb.u_star(i, lambda.part(i)), coeffs.beta(i)),
        ] {
            if c.is_zero() {
                continue;
            }
            for (o, s) in out.iter_mut().zip(source) {
                *o += c * s;
            }
        }
    }
    out
}

/// Draws coefficients of a random admissible line. Every row enters the
/// support independently, so pure-alpha, pure-beta, and gappy patterns all
/// occur; the orthogonality constraint is restored by balancing the betas
/// over the rows with `nu_i = 0`.
pub fn random_admissible_coeffs<R: Rng>(
    bp: &Bipartition,
    rng: &mut R,
    bound: i64,
) -> LineCoeffs {
    let ell = bp.lambda().len();
    assert!(ell > 0, "the zero space has no lines");
    loop {
        let mut alpha = vec![Rat::zero(); ell];
        let mut beta = vec![Rat::zero(); ell];
        for i in 0..ell {
            if rng.gen_bool(0.5) {
                alpha[i] = rat(rng.gen_range(-bound..=bound));
            }
            if rng.gen_bool(0.5) {
                beta[i] = rat(rng.gen_range(-bound..=bound));
            }
        }
        let zero_rows: Vec<usize> = (1..=ell).filter(|&i| bp.nu.part(i) == 0).collect();
        if let Some(&last) = zero_rows.last() {
            let excess: Rat = zero_rows[..zero_rows.len() - 1]
                .iter()
                .map(|&i| beta[i - 1].clone())
                .sum();
            beta[last - 1] = -excess;
        }
        if let Ok(coeffs) = LineCoeffs::new(bp, alpha, beta) {
            return coeffs;
        }
    }
}

/// The support and repetition indices a prediction reads off a line.
///
/// `mu` and `nu` are read zero-padded to the length of `lambda`, so the
/// index sets always contain `m` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexData {
    /// Largest row with a nonzero coefficient.
    pub m: usize,
    /// Rows with `lambda_i = lambda_m`; `m_bar` is the largest.
    pub lambda_set: Vec<usize>,
    pub m_bar: usize,
    /// Rows with `mu_i = mu_m`.
    pub gamma_set: Vec<usize>,
    /// Rows with `nu_i = nu_m`.
    pub delta_set: Vec<usize>,
    /// Rows `i` of `gamma_set` with `alpha_j = alpha_m != 0` for every
    /// `i <= j <= max(gamma_set)`; `m_alpha` is the smallest.
    pub gamma_alpha: Vec<usize>,
    pub m_alpha: Option<usize>,
    /// Rows `i` of `gamma_set` with `beta_j = 0` for every
    /// `i <= j <= max(gamma_set)`; `m_beta` is the smallest.
    pub gamma_beta: Vec<usize>,
    pub m_beta: Option<usize>,
    /// `max(m_alpha, m_beta)` when both exist.
    pub m_prime: Option<usize>,
    /// `max(delta_set) + 1`.
    pub m_dprime: usize,
}

/// Computes [`IndexData`] for a coefficient vector on the given shape.
pub fn index_data(bp: &Bipartition, coeffs: &LineCoeffs) -> Result<IndexData> {
    let lambda = bp.lambda();
    let ell = lambda.len();
    assert_eq!(coeffs.rows(), ell, "coefficients sized for a different shape");
    let m = (1..=ell)
        .rev()
        .find(|&i| !coeffs.alpha(i).is_zero() || !coeffs.beta(i).is_zero())
        .ok_or_else(|| Error::Invalid("zero coefficient vector".into()))?;
    let lambda_set: Vec<usize> = (1..=ell).filter(|&i| lambda.part(i) == lambda.part(m)).collect();
    let gamma_set: Vec<usize> = (1..=ell).filter(|&i| bp.mu.part(i) == bp.mu.part(m)).collect();
    let delta_set: Vec<usize> = (1..=ell).filter(|&i| bp.nu.part(i) == bp.nu.part(m)).collect();
    let m_bar = *lambda_set.last().expect("m is in its own lambda set");
    let gamma_max = *gamma_set.last().expect("m is in its own gamma set");
    let alpha_m = coeffs.alpha(m);
    let gamma_alpha: Vec<usize> = gamma_set
        .iter()
        .copied()
        .filter(|&i| {
            !alpha_m.is_zero() && (i..=gamma_max).all(|j| coeffs.alpha(j) == alpha_m)
        })
        .collect();
    let gamma_beta: Vec<usize> = gamma_set
        .iter()
        .copied()
        .filter(|&i| (i..=gamma_max).all(|j| coeffs.beta(j).is_zero()))
        .collect();
    let m_alpha = gamma_alpha.first().copied();
    let m_beta = gamma_beta.first().copied();
    let m_prime = match (m_alpha, m_beta) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    let m_dprime = delta_set.last().unwrap() + 1;
    Ok(IndexData {
        m,
        lambda_set,
        m_bar,
        gamma_set,
        delta_set,
        gamma_alpha,
        m_alpha,
        gamma_beta,
        m_beta,
        m_prime,
        m_dprime,
    })
}

/// The orthogonality constraint a line must satisfy to be admissible:
/// the betas over rows with `nu_i = 0` sum to zero.
pub fn perp_condition_holds(bp: &Bipartition, coeffs: &LineCoeffs) -> bool {
    let mut sum = Rat::zero();
    for i in 1..=coeffs.rows() {
        if bp.nu.part(i) == 0 {
            sum += coeffs.beta(i).clone();
        }
    }
    sum.is_zero()
}

/// Whether the line lies inside the marked cyclic subspace: the only such
/// line in `ker x` is spanned by `x^{mu_1 - 1} v`, whose coefficients are a
/// nonzero constant exactly on the rows with `mu_i = mu_1`.
pub fn in_marked_span(bp: &Bipartition, coeffs: &LineCoeffs) -> bool {
    if bp.mu.is_empty() {
        return false;
    }
    if !coeffs.beta.iter().all(Zero::is_zero) {
        return false;
    }
    let mu1 = bp.mu.part(1);
    let c = coeffs.alpha(1);
    if c.is_zero() {
        return false;
    }
    (1..=coeffs.rows()).all(|i| {
        if bp.mu.part(i) == mu1 {
            coeffs.alpha(i) == c
        } else {
            coeffs.alpha(i).is_zero()
        }
    })
}

/// The halved ambient type after reduction: `lambda` loses one box in row
/// `m_bar`. Needs only the line to be in `ker x`, not the orthogonality
/// constraint.
pub fn predict_quotient_lambda(bp: &Bipartition, coeffs: &LineCoeffs) -> Result<Partition> {
    let id = index_data(bp, coeffs)?;
    bp.lambda().remove_box(id.m_bar)
}

/// Outcome of [`predict_k`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KOutcome {
    /// The line lies inside the marked cyclic subspace; no column is
    /// removed at this stage.
    InSpan,
    /// The quotient by the span plus the line loses the bottom box of this
    /// column.
    Col(usize),
}

fn require_perp(bp: &Bipartition, coeffs: &LineCoeffs) -> Result<()> {
    if !perp_condition_holds(bp, coeffs) {
        return Err(Error::Prediction(format!(
            "line is not orthogonal to the marked cyclic subspace on {bp}"
        )));
    }
    Ok(())
}

/// Column whose bottom box the type of the quotient by
/// `span(v) + line` loses, relative to the type of the quotient by
/// `span(v)` alone.
pub fn predict_k(bp: &Bipartition, coeffs: &LineCoeffs) -> Result<KOutcome> {
    require_perp(bp, coeffs)?;
    if in_marked_span(bp, coeffs) {
        return Ok(KOutcome::InSpan);
    }
    let id = index_data(bp, coeffs)?;
    let lambda_m = bp.lambda().part(id.m);
    let mu_m = bp.mu.part(id.m);
    if mu_m == 0 || id.gamma_alpha.is_empty() || id.gamma_beta.is_empty() {
        return Ok(KOutcome::Col(lambda_m));
    }
    let m_prime = id.m_prime.expect("both gamma subsets are nonempty");
    if m_prime < 2 {
        return Err(Error::Prediction(format!(
            "repetition index m' = {m_prime} has no row above it (shape {bp}, m = {})",
            id.m
        )));
    }
    Ok(KOutcome::Col(mu_m + bp.nu.part(m_prime - 1)))
}

/// Column whose bottom box is lost in the passage from the quotient type of
/// the point to the quotient type of the reduced point.
pub fn predict_l(bp: &Bipartition, coeffs: &LineCoeffs) -> Result<usize> {
    require_perp(bp, coeffs)?;
    let id = index_data(bp, coeffs)?;
    let gamma_max = *id.gamma_set.last().unwrap();
    let delta_max = *id.delta_set.last().unwrap();
    let mut delta_sum = Rat::zero();
    for &i in id.delta_set.iter().filter(|&&i| i <= id.m) {
        delta_sum += coeffs.beta(i).clone();
    }
    if gamma_max <= delta_max && !delta_sum.is_zero() {
        Ok(bp.mu.part(id.m_dprime) + bp.nu.part(id.m))
    } else {
        Ok(bp.lambda().part(id.m))
    }
}

/// Jordan type of `x` on `perp(line) / (cyclic + line)`: the quotient type
/// loses the bottom box of column `k`, then the bottom box of column `l`.
/// When the line sits in the marked span only the `l` removal happens.
pub fn predict_sigma(bp: &Bipartition, coeffs: &LineCoeffs) -> Result<Partition> {
    let rho = rho_of(bp);
    let l = predict_l(bp, coeffs)?;
    match predict_k(bp, coeffs)? {
        KOutcome::InSpan => rho.remove_column_box(l),
        KOutcome::Col(k) => rho.remove_column_box(k)?.remove_column_box(l),
    }
}

/// Exotic Jordan type of the reduction of the normal point by the line with
/// these coefficients. Requires the orthogonality constraint.
pub fn predict_etype_after_line(bp: &Bipartition, coeffs: &LineCoeffs) -> Result<Bipartition> {
    let lambda_next = predict_quotient_lambda(bp, coeffs)?;
    let sigma = predict_sigma(bp, coeffs)?;
    from_lambda_rho(&lambda_next, &sigma)
        .map_err(|e| Error::Prediction(format!("types after reduction do not fit: {e}")))
}

/// Draws a line whose reduction has the prescribed type, which must be one
/// box below the type of `p`. The line is certified twice before it is
/// returned: the coefficient prediction and an actual reduction must both
/// give `target`. Disagreement between those two routes is a hard error,
/// never retried.
pub fn sample_line_for_shape<R: Rng>(
    p: &ExoticPoint,
    nb: &NormalBasis,
    target: &Bipartition,
    rng: &mut R,
    tries_per_level: usize,
) -> Result<(Subspace, LineCoeffs)> {
    let bp = nb.bp().clone();
    assert_eq!(p.etype().map_err(|e| e.to_string()), Ok(bp.clone()), "basis does not match the point");
    let removal = bp.removal_to(target)?;
    let m_bar = removal.row;

    let certify = |coeffs: &LineCoeffs| -> Result<Option<(Subspace, LineCoeffs)>> {
        let predicted = match predict_etype_after_line(&bp, coeffs) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        if &predicted != target {
            return Ok(None);
        }
        let v1 = line_vector(nb, coeffs);
        let line = Subspace::span(p.dim(), &[v1]);
        let (reduced, _) = p.reduce_by_line(&line)?;
        let actual = reduced.etype()?;
        if actual != predicted {
            return Err(Error::Check(format!(
                "prediction {predicted} disagrees with reduction {actual} for {bp}"
            )));
        }
        Ok(Some((line, coeffs.clone())))
    };

    if removal.side == Side::Left && m_bar == 1 {
        // The only line over this removal is spanned by x^{mu_1 - 1} v.
        let mu1 = bp.mu.part(1);
        let alpha: Vec<i64> = (1..=bp.lambda().len())
            .map(|i| if bp.mu.part(i) == mu1 { 1 } else { 0 })
            .collect();
        let coeffs = LineCoeffs::from_ints(&bp, &alpha, &[])?;
        return certify(&coeffs)?.ok_or_else(|| {
            Error::Sampling(format!("the forced line over {bp} -> {target} fails its checks"))
        });
    }

    let nu_here = bp.nu.part(m_bar);
    let mut last_issue = String::from("no draws attempted");
    for level in 0..2 {
        let bound = FLAG_DRAW_BOUND << level;
        for _ in 0..tries_per_level {
            let mut alpha: Vec<i64> = (0..m_bar).map(|_| rng.gen_range(-bound..=bound)).collect();
            let mut beta: Vec<i64> = (0..m_bar).map(|_| rng.gen_range(-bound..=bound)).collect();
            match removal.side {
                Side::Left if bp.nu.part(m_bar - 1) > nu_here => {
                    beta[m_bar - 1] = 0;
                    while alpha[m_bar - 1] == 0 {
                        alpha[m_bar - 1] = rng.gen_range(-bound..=bound);
                    }
                }
                Side::Left => {
                    // nu constant across rows m_bar - 1, m_bar: balance the
                    // betas over the rows that share nu_{m_bar}.
                    let set: Vec<usize> = (1..=m_bar)
                        .filter(|&i| bp.nu.part(i) == nu_here)
                        .collect();
                    let last = *set.last().expect("m_bar qualifies");
                    beta[last - 1] = -set[..set.len() - 1]
                        .iter()
                        .map(|&i| beta[i - 1])
                        .sum::<i64>();
                }
                Side::Right => {}
            }
            let Ok(coeffs) = LineCoeffs::from_ints(&bp, &alpha, &beta) else {
                continue;
            };
            if !perp_condition_holds(&bp, &coeffs) {
                last_issue = "draw violated the orthogonality constraint".into();
                continue;
            }
            match certify(&coeffs)? {
                Some(hit) => return Ok(hit),
                None => last_issue = format!("draw predicted a different stratum"),
            }
        }
    }
    Err(Error::Sampling(format!(
        "no line over {bp} -> {target} in {} draws: {last_issue}",
        2 * tries_per_level
    )))
}

/// Samples a flag in the fibre over `p` whose type sequence spells out the
/// bitableau `t`: repeatedly draws a line for the next box removal, reduces,
/// renormalises, and lifts the smaller flag back. The result is verified
/// with [`phi`](crate::exotic::phi) before it is returned.
pub fn sample_generic_flag<R: Rng>(
    p: &ExoticPoint,
    nb: &NormalBasis,
    t: &StandardBitableau,
    rng: &mut R,
    tries_per_level: usize,
) -> Result<Flag> {
    let steps = build_steps(p, nb, t, rng, tries_per_level)?;
    let flag = Flag::new(steps, p.form())?;
    let result = crate::exotic::phi(p, &flag)?;
    match result.outcome {
        crate::exotic::PhiOutcome::Nested(ref spelled) if spelled == t => Ok(flag),
        other => Err(Error::Check(format!(
            "sampled flag spells {other:?} instead of the requested bitableau"
        ))),
    }
}

fn build_steps<R: Rng>(
    p: &ExoticPoint,
    nb: &NormalBasis,
    t: &StandardBitableau,
    rng: &mut R,
    tries_per_level: usize,
) -> Result<Vec<Subspace>> {
    let n = t.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let target = t.shape_after_step(n - 1);
    let mut last = None;
    for _ in 0..FLAG_RETRIES {
        let (line, _) = sample_line_for_shape(p, nb, &target, rng, tries_per_level)?;
        let (reduced, quot) = p.reduce_by_line(&line)?;
        let attempt = normal_basis(&reduced, rng).and_then(|nb_red| {
            build_steps(&reduced, &nb_red, &t.without_last(), rng, tries_per_level)
        });
        match attempt {
            Ok(sub_steps) => {
                let mut steps = vec![line.clone()];
                for s in &sub_steps {
                    let mut rows: Vec<Vec<Rat>> = s
                        .basis_rows()
                        .iter()
                        .map(|coords| quot.lift(coords))
                        .collect();
                    rows.extend(line.basis_rows());
                    steps.push(Subspace::span(p.dim(), &rows));
                }
                return Ok(steps);
            }
            Err(e) => last = Some(e),
        }
    }
    Err(Error::Sampling(format!(
        "flag construction stalled after {FLAG_RETRIES} restarts: {}",
        last.expect("at least one attempt")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(bp: &Bipartition, alpha: &[i64], beta: &[i64]) -> LineCoeffs {
        LineCoeffs::from_ints(bp, alpha, beta).unwrap()
    }

    #[test]
    fn index_sets_are_padded_blocks() {
        let bp: Bipartition = "3,3,3,2|3,2,2,1,1".parse().unwrap();
        // Support through row 5 of lambda = (6,5,5,3,1).
        let c = coeffs(&bp, &[1, 0, 0, 0, 2], &[0, 0, 0, 0, 0]);
        let id = index_data(&bp, &c).unwrap();
        assert_eq!(id.m, 5);
        assert_eq!(id.gamma_set, vec![5]);
        assert_eq!(id.delta_set, vec![4, 5]);
        let c1 = coeffs(&bp, &[1], &[]);
        let id1 = index_data(&bp, &c1).unwrap();
        assert_eq!(id1.gamma_set, vec![1, 2, 3]);
        assert_eq!(id1.delta_set, vec![1]);
    }

    #[test]
    fn single_row_shape_uses_its_own_row() {
        let bp: Bipartition = "3|0".parse().unwrap();
        let c = coeffs(&bp, &[1], &[]);
        let id = index_data(&bp, &c).unwrap();
        assert_eq!((id.m, id.m_bar), (1, 1));
        assert_eq!(id.delta_set, vec![1]);
        assert!(in_marked_span(&bp, &c));
        assert_eq!(predict_quotient_lambda(&bp, &c).unwrap(), "2".parse().unwrap());
    }

    #[test]
    fn perp_condition_reads_zero_nu_rows() {
        let bp: Bipartition = "2,2|1".parse().unwrap();
        assert!(perp_condition_holds(&bp, &coeffs(&bp, &[1, 1], &[5, 0])));
        assert!(!perp_condition_holds(&bp, &coeffs(&bp, &[1, 1], &[0, 3])));
        assert!(perp_condition_holds(&bp, &coeffs(&bp, &[0, 0], &[1, 0])));
    }
}
