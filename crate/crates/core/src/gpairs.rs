//! Degree pairs along a direction subset.
//!
//! For a direction subset `I`, a partner for a source cluster is a seed
//! reachable from the root by mutations inside `I` whose degree matrix
//! factors the source's `I`-rows: `G_source|_{I x [1,n]} = G_partner|_{I x
//! I} * Q` with `Q` entrywise nonnegative and integral. The partner block is
//! unimodular, so `Q` is exact. Search scans the labeled restricted graph;
//! the partner is unique up to seed equivalence and, when `I` omits exactly
//! one direction `k`, the sign of row `k` of the transition matrix
//! classifies every source variable against the partner cluster.

use crate::error::{Error, Result};
use crate::explorer::{reduce_path, restricted_explore};
use crate::invariants::{dvector_direct, gmatrix};
use crate::laurent::LaurentPoly;
use crate::matrix::IntMatrix;
use crate::seed::{Mode, Seed};

/// Accepted partner search result, with everything needed to audit it.
#[derive(Clone, Debug)]
pub struct GPairCertificate {
    /// The direction subset, 0-based, strictly increasing.
    pub subset: Vec<usize>,
    pub source: Seed,
    pub source_path: Vec<usize>,
    pub partner: Seed,
    pub partner_path: Vec<usize>,
    /// The nonnegative factor, `|I| x n`.
    pub qmat: IntMatrix,
}

/// How one source variable sits relative to the partner cluster when the
/// subset omits exactly one direction `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartnerMembership {
    /// Equals the partner variable at the omitted slot.
    OmittedSlot,
    /// Equals a partner variable at some slot inside the subset.
    OtherSlot,
    /// Not a partner cluster variable at all.
    Absent,
}

fn normalize_subset(subset: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut s: Vec<usize> = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&k| k >= n) {
        return Err(Error::IndexOutOfRange(bad, n));
    }
    Ok(s)
}

/// Test one candidate partner. Returns the factor `Q` when the candidate
/// passes, `None` when the factorization has a negative entry. The
/// candidate must have been reached by directions inside the subset.
pub fn is_gpair(
    source: &Seed,
    partner: &Seed,
    partner_path: &[usize],
    subset: &[usize],
) -> Result<Option<IntMatrix>> {
    let n = source.rank();
    let subset = normalize_subset(subset, n)?;
    if let Some(&bad) = partner_path.iter().find(|k| !subset.contains(k)) {
        return Err(Error::PathOutsideSubset(bad));
    }
    let g_source = gmatrix(source)?;
    let g_partner = gmatrix(partner)?;
    let all: Vec<usize> = (0..n).collect();
    let block = g_partner.submatrix(&subset, &subset);
    let block_inv = block.inverse_unimodular().map_err(|e| match e {
        Error::NonUnimodular(d) => Error::SingularBlock(d),
        other => other,
    })?;
    let q = block_inv.mul(&g_source.submatrix(&subset, &all))?;
    let nonneg = (0..q.rows()).all(|i| (0..q.cols()).all(|j| q.get(i, j) >= 0));
    Ok(nonneg.then_some(q))
}

/// Search the labeled restricted graph for the partner of `source` along
/// `subset`. Exactly one equivalence class of seeds may pass; the breadth-
/// first earliest passing seed is returned as its witness.
pub fn find_gpair(
    root: &Seed,
    source: &Seed,
    source_path: &[usize],
    subset: &[usize],
    limit: usize,
) -> Result<GPairCertificate> {
    if root.mode() != Mode::Principal {
        return Err(Error::PrincipalModeRequired);
    }
    let subset = normalize_subset(subset, root.rank())?;
    let g = restricted_explore(root, &subset, limit)?;
    if g.truncated {
        return Err(Error::TruncatedGraph);
    }
    let mut found: Option<GPairCertificate> = None;
    let mut class_keys: Vec<Vec<u8>> = Vec::new();
    for node in &g.nodes {
        if let Some(q) = is_gpair(source, &node.seed, &node.path, &subset)? {
            let key = node.seed.canonical_key();
            if !class_keys.contains(&key) {
                class_keys.push(key);
            }
            if found.is_none() {
                found = Some(GPairCertificate {
                    subset: subset.clone(),
                    source: source.clone(),
                    source_path: source_path.to_vec(),
                    partner: node.seed.clone(),
                    partner_path: node.path.clone(),
                    qmat: q,
                });
            }
        }
    }
    match (found, class_keys.len()) {
        (None, _) => Err(Error::GPairNotFound),
        (Some(cert), 1) => Ok(cert),
        (Some(_), m) => Err(Error::GPairNotUnique(m)),
    }
}

/// Classify source variable `i` against the partner cluster of a
/// certificate whose subset omits exactly one direction `k`, and cross-check
/// the classification three ways: by the sign of the transition-matrix entry
/// `r_ki`, by the `k`-entry of the denominator vector of the variable in
/// partner coordinates, and by direct comparison of expansions.
pub fn gpair_dvector_classify(cert: &GPairCertificate, i: usize) -> Result<PartnerMembership> {
    let n = cert.source.rank();
    if i >= n {
        return Err(Error::IndexOutOfRange(i, n));
    }
    if cert.subset.len() + 1 != n {
        return Err(Error::BadDimensions(
            "classification needs a subset omitting exactly one direction".into(),
        ));
    }
    let k = (0..n)
        .find(|j| !cert.subset.contains(j))
        .expect("one direction is omitted");

    let g_partner = gmatrix(&cert.partner)?;
    let r = g_partner.inverse_unimodular()?.mul(&gmatrix(&cert.source)?)?;
    let rki = r.get(k, i);

    // The variable in partner coordinates.
    let fresh = Seed::initial(cert.partner.bmat().clone(), Mode::Trivial)?;
    let mut path: Vec<usize> = cert.partner_path.iter().rev().copied().collect();
    path.extend(&cert.source_path);
    let in_partner_coords = fresh.walk(&reduce_path(path))?;
    let expansion = &in_partner_coords.cluster()[i];
    let dk = dvector_direct(expansion)?.entries[k];

    let is_variable_slot =
        |slot: usize| expansion == &LaurentPoly::variable(n, slot);

    let class = match rki.signum() {
        1 => PartnerMembership::OmittedSlot,
        0 => PartnerMembership::OtherSlot,
        _ => PartnerMembership::Absent,
    };
    let consistent = match class {
        PartnerMembership::OmittedSlot => dk == -1 && is_variable_slot(k),
        PartnerMembership::OtherSlot => {
            dk == 0 && (0..n).any(|j| j != k && is_variable_slot(j))
        }
        PartnerMembership::Absent => dk > 0 && !(0..n).any(is_variable_slot),
    };
    if !consistent {
        return Err(Error::ClassificationMismatch(format!(
            "slot {}: r_ki = {}, denominator entry {}, expansion {}",
            i + 1,
            rki,
            dk,
            expansion
        )));
    }
    Ok(class)
}
