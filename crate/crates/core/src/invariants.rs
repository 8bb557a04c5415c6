//! Denominator and degree invariants of cluster-variable expansions.
//!
//! The denominator vector of an expansion is the negated componentwise
//! minimum of its x-exponents; stacking the vectors of one cluster gives its
//! denominator matrix, which also satisfies a purely matrix-level recurrence
//! along mutation paths. Degree vectors come from principal-coefficient
//! expansions: under the grading `deg(x_i) = e_i`, `deg(y_j) = -b_j` every
//! expansion is homogeneous, and dropping all terms with coefficient
//! variables leaves a single monic monomial whose x-exponents are the degree
//! vector.

use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::IntMatrix;
use crate::seed::{mutate_matrix, Mode, Seed};

/// Denominator vector of one expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DVector {
    pub entries: Vec<i64>,
}

/// Degree vector of one principal-coefficients expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVector {
    pub entries: Vec<i64>,
}

/// Denominator vector read straight off the expansion.
pub fn dvector_direct(x: &LaurentPoly) -> Result<DVector> {
    let entries = x
        .min_x_exponents()?
        .into_iter()
        .map(|e| -(e as i64))
        .collect();
    Ok(DVector { entries })
}

/// Denominator matrix of a seed, vectors as columns.
pub fn dmatrix_direct(s: &Seed) -> Result<IntMatrix> {
    let n = s.rank();
    let mut m = IntMatrix::zeros(n, n);
    for (j, x) in s.cluster().iter().enumerate() {
        for (i, &d) in dvector_direct(x)?.entries.iter().enumerate() {
            m.set(i, j, d);
        }
    }
    Ok(m)
}

/// Denominator matrix of the seed at the end of `path`, computed without any
/// polynomial arithmetic: start from minus the identity at the root and
/// update one column per step while the exchange matrix co-mutates. Along an
/// edge in direction `k`, the new column `k` is
/// `-d_k + max(sum_{b_lk > 0} d_l b_lk, sum_{b_lk < 0} -d_l b_lk)` rowwise.
pub fn dmatrix_recurrence(path: &[usize], bmat: &IntMatrix) -> Result<IntMatrix> {
    if !bmat.is_square() {
        return Err(Error::BadDimensions("exchange matrix must be square".into()));
    }
    let n = bmat.rows();
    let mut d = IntMatrix::identity(n).neg();
    let mut b = bmat.clone();
    for &k in path {
        if k >= n {
            return Err(Error::IndexOutOfRange(k, n));
        }
        let mut col = vec![0i64; n];
        for i in 0..n {
            let mut pos: i64 = 0;
            let mut neg: i64 = 0;
            for l in 0..n {
                let blk = b.get(l, k);
                if blk > 0 {
                    pos = pos
                        .checked_add(d.get(i, l).checked_mul(blk).expect("overflow"))
                        .expect("overflow");
                } else if blk < 0 {
                    neg = neg
                        .checked_sub(d.get(i, l).checked_mul(blk).expect("overflow"))
                        .expect("overflow");
                }
            }
            col[i] = -d.get(i, k) + pos.max(neg);
        }
        for i in 0..n {
            d.set(i, k, col[i]);
        }
        b = mutate_matrix(&b, k)?;
    }
    Ok(d)
}

/// Degree vector of a principal-coefficients expansion: the x-exponents of
/// its unique coefficient-free term, which must be monic. Anything else
/// reports a malformed expansion.
pub fn gvector(x: &LaurentPoly) -> Result<GVector> {
    let mut found: Option<&crate::laurent::ExponentVector> = None;
    for (e, c) in x.terms() {
        if e.yexp.iter().all(|&a| a == 0) {
            if found.is_some() {
                return Err(Error::MalformedExpansion(
                    "more than one coefficient-free term".into(),
                ));
            }
            if !c.is_one() {
                return Err(Error::MalformedExpansion(format!(
                    "coefficient-free term has coefficient {}",
                    c
                )));
            }
            found = Some(e);
        }
    }
    match found {
        Some(e) => Ok(GVector {
            entries: e.xexp.iter().map(|&a| a as i64).collect(),
        }),
        None => Err(Error::MalformedExpansion("no coefficient-free term".into())),
    }
}

/// Degree matrix of a principal-coefficients seed, vectors as columns.
pub fn gmatrix(s: &Seed) -> Result<IntMatrix> {
    if s.mode() != Mode::Principal {
        return Err(Error::PrincipalModeRequired);
    }
    let n = s.rank();
    let mut m = IntMatrix::zeros(n, n);
    for (j, x) in s.cluster().iter().enumerate() {
        for (i, &g) in gvector(x)?.entries.iter().enumerate() {
            m.set(i, j, g);
        }
    }
    Ok(m)
}

/// Transition matrix `R` with `G_s * R = G_t`. Degree matrices are
/// unimodular, so `R` is integral and exact.
pub fn rmatrix(s: &Seed, t: &Seed) -> Result<IntMatrix> {
    let gs = gmatrix(s)?;
    let gt = gmatrix(t)?;
    gs.inverse_unimodular()?.mul(&gt)
}

/// Degree vector of the cluster monomial `prod x_i^{v_i}` of `s`: the
/// degree matrix applied to `v`. Entries of `v` must be nonnegative.
pub fn monomial_gvector(s: &Seed, v: &[i64]) -> Result<GVector> {
    if v.len() != s.rank() {
        return Err(Error::RankMismatch(v.len(), s.rank()));
    }
    if v.iter().any(|&a| a < 0) {
        return Err(Error::NegativeExponent);
    }
    Ok(GVector {
        entries: gmatrix(s)?.mul_vec(v)?,
    })
}

/// Expansion of the cluster monomial `prod cluster[i]^{v_i}`.
pub fn expand_monomial(s: &Seed, v: &[u32]) -> Result<LaurentPoly> {
    if v.len() != s.rank() {
        return Err(Error::RankMismatch(v.len(), s.rank()));
    }
    let mut p = LaurentPoly::one(s.rank());
    for (x, &e) in s.cluster().iter().zip(v) {
        if e > 0 {
            p = p.mul(&x.pow(e))?;
        }
    }
    Ok(p)
}

/// Decide whether an expansion written in the coordinates of a reference
/// cluster is a proper Laurent polynomial there: every term carries at least
/// one negative x-exponent. A cluster monomial of the reference itself (a
/// single monic monomial with nonnegative x-exponents) violates the
/// precondition and is rejected.
pub fn proper_laurent_check(expansion_in_reference: &LaurentPoly) -> Result<bool> {
    if expansion_in_reference.is_monic_nonneg_monomial() {
        return Err(Error::ClusterMonomialOfTarget);
    }
    if expansion_in_reference.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(expansion_in_reference
        .terms()
        .all(|(e, _)| e.xexp.iter().any(|&a| a < 0)))
}
