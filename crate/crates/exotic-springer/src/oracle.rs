//! Brute-force reference computations for everything
//! [`jordan`](crate::jordan) predicts combinatorially.
//!
//! Nothing here looks at coefficient patterns: the quantities are computed
//! from explicit subspace chains, images, preimages, and Jordan types of
//! quotient operators. Tests and the `crosscheck` command compare the two
//! routes line by line.

use crate::exotic::ExoticPoint;
use crate::jordan::{
    line_vector, predict_etype_after_line, predict_k, predict_l, predict_quotient_lambda,
    predict_sigma, KOutcome, LineCoeffs,
};
use crate::linalg::{jordan_type, Quotient, Subspace};
use crate::normalize::NormalBasis;
use crate::partition::{Bipartition, Partition};
use crate::{Error, Result};

/// Everything the brute-force route can say about one admissible line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFacts {
    /// Halved Jordan type of `x` on `perp(line)/line`.
    pub quotient_lambda: Partition,
    /// Largest `k` with `line` inside `im(x^{k-1}) + span(v)`, or `None`
    /// when the line lies inside the marked cyclic subspace.
    pub k: Option<usize>,
    /// Largest `l` such that the preimage of the cyclic subspace under
    /// `x^{l-1}` is still orthogonal to the line.
    pub l: usize,
    /// Jordan type of `x` on `perp(line) / (cyclic + line)`.
    pub sigma: Partition,
    /// Exotic type of the reduced point.
    pub etype_after: Bipartition,
}

/// Computes [`LineFacts`] for a line in `ker x` orthogonal to both the
/// marked vector and its cyclic subspace. Errors on inadmissible lines.
pub fn line_facts(p: &ExoticPoint, line: &Subspace) -> Result<LineFacts> {
    if line.dim() != 1 || line.ambient() != p.dim() {
        return Err(Error::Invalid("expected a line in the ambient space".into()));
    }
    if line.image_under(p.x()).dim() != 0 {
        return Err(Error::Invalid("line is not in ker x".into()));
    }
    let cyclic = p.cyclic_subspace();
    if !p.form().perp(&cyclic).contains(line) {
        return Err(Error::Invalid(
            "line is not orthogonal to the marked cyclic subspace".into(),
        ));
    }
    let perp = p.form().perp(line);

    let (reduced, _) = p.reduce_by_line(line)?;
    let quotient_lambda = reduced.halved_type()?;
    let etype_after = reduced.etype()?;

    let k = if cyclic.contains(line) {
        None
    } else {
        let mut best = 0usize;
        let mut image = Subspace::full(p.dim());
        for kk in 1..=p.space().n() + 1 {
            if image.sum(&cyclic).contains(line) {
                best = kk;
            } else {
                break;
            }
            image = image.image_under(p.x());
        }
        assert!(best >= 1, "k = 1 always holds because im(x^0) is everything");
        Some(best)
    };

    let mut l = 0usize;
    let mut pre = cyclic.clone();
    for ll in 1..=p.space().n() + 1 {
        if perp.contains(&pre) {
            l = ll;
        } else {
            break;
        }
        pre = Subspace::preimage_under(p.x(), &pre);
    }
    assert!(l >= 1, "l = 1 always holds because the line is orthogonal to the cyclic subspace");

    let sigma = {
        let den = cyclic.sum(line);
        let quot = Quotient::new(perp.clone(), den)?;
        jordan_type(&quot.induced_operator(p.x())?)?
    };

    Ok(LineFacts {
        quotient_lambda,
        k,
        l,
        sigma,
        etype_after,
    })
}

/// Compares every combinatorial prediction against the brute-force facts
/// for one line on the normal point of `nb`'s shape. Disagreements are
/// collected into a single check failure naming each quantity.
pub fn crosscheck_line(p: &ExoticPoint, nb: &NormalBasis, coeffs: &LineCoeffs) -> Result<()> {
    let bp = nb.bp();
    let line = Subspace::span(p.dim(), &[line_vector(nb, coeffs)]);
    let facts = line_facts(p, &line)?;
    let mut mismatches = Vec::new();

    let lam = predict_quotient_lambda(bp, coeffs)?;
    if lam != facts.quotient_lambda {
        mismatches.push(format!(
            "quotient lambda predicted {lam}, computed {}",
            facts.quotient_lambda
        ));
    }
    let k = match predict_k(bp, coeffs)? {
        KOutcome::InSpan => None,
        KOutcome::Col(k) => Some(k),
    };
    if k != facts.k {
        mismatches.push(format!("k predicted {k:?}, computed {:?}", facts.k));
    }
    let l = predict_l(bp, coeffs)?;
    if l != facts.l {
        mismatches.push(format!("l predicted {l}, computed {}", facts.l));
    }
    let sigma = predict_sigma(bp, coeffs)?;
    if sigma != facts.sigma {
        mismatches.push(format!(
            "sigma predicted {sigma}, computed {}",
            facts.sigma
        ));
    }
    let after = predict_etype_after_line(bp, coeffs)?;
    if after != facts.etype_after {
        mismatches.push(format!(
            "reduced type predicted {after}, computed {}",
            facts.etype_after
        ));
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Error::Check(format!(
            "shape {bp}, coefficients {coeffs:?}: {}",
            mismatches.join("; ")
        )))
    }
}
