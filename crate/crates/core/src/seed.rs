//! Seeds and mutation. A seed carries the cluster (each entry stored as its
//! Laurent expansion in the initial variables), the coefficient tuple in the
//! tropical semifield, and the exchange matrix. Mutation in a direction `k`
//! is an involution and preserves skew-symmetrizability.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, TropicalMonomial};
use crate::matrix::IntMatrix;

/// Coefficient system of a seed pattern. `Principal` attaches one generator
/// `y_i` per slot at the initial seed; `Trivial` keeps every coefficient at
/// one, which collapses the exchange relation to its coefficient-free form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Principal,
    Trivial,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Principal => "principal",
            Mode::Trivial => "trivial",
        }
    }
}

/// Positive diagonal `S` with `S * B` skew-symmetric, minimal trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewSymmetrizer {
    pub diag: Vec<i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b)).checked_mul(b).expect("overflow in lcm").abs()
    }
}

/// Find the positive integer diagonal of minimal trace symmetrizing `b`, or
/// explain why none exists. Ratios `s_j / s_i = |b_ij| / |b_ji|` propagate
/// along the edges of the diagram; every connected component is scaled to
/// the smallest positive integer solution, and isolated vertices get 1.
pub fn find_skew_symmetrizer(b: &IntMatrix) -> Result<SkewSymmetrizer> {
    if !b.is_square() {
        return Err(Error::BadDimensions("exchange matrix must be square".into()));
    }
    let n = b.rows();
    for i in 0..n {
        if b.get(i, i) != 0 {
            return Err(Error::NotSkewSymmetrizable(format!(
                "diagonal entry ({0},{0}) is {1}",
                i + 1,
                b.get(i, i)
            )));
        }
        for j in 0..n {
            let (bij, bji) = (b.get(i, j), b.get(j, i));
            if (bij == 0) != (bji == 0) {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "entries ({},{}) and ({},{}) are {} and {}",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1,
                    bij,
                    bji
                )));
            }
            if bij != 0 && bij.signum() == bji.signum() {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "entries ({},{}) and ({},{}) have the same sign",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }

    // Ratios relative to the component root, as reduced positive fractions,
    // plus the component id per vertex.
    let mut ratio: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some((1, 1));
        comp[root] = ncomp;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let (pi, qi) = ratio[i].unwrap();
            for j in 0..n {
                if b.get(i, j) == 0 || i == j {
                    continue;
                }
                // s_i * b_ij = -s_j * b_ji, so s_j = s_i * |b_ij| / |b_ji|.
                let num = pi.checked_mul(b.get(i, j).abs()).expect("overflow in symmetrizer");
                let den = qi.checked_mul(b.get(j, i).abs()).expect("overflow in symmetrizer");
                let g = gcd(num, den);
                let next = (num / g, den / g);
                match ratio[j] {
                    None => {
                        ratio[j] = Some(next);
                        comp[j] = ncomp;
                        stack.push(j);
                    }
                    Some(prev) => {
                        if prev != next {
                            return Err(Error::NotSkewSymmetrizable(format!(
                                "inconsistent ratio cycle through vertex {}",
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        ncomp += 1;
    }

    // Scale each component to the smallest positive integer vector.
    let mut diag = vec![0i64; n];
    for c in 0..ncomp {
        let members: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        let denom_lcm = members
            .iter()
            .fold(1i64, |acc, &v| lcm(acc, ratio[v].unwrap().1));
        let mut vals: Vec<i64> = members
            .iter()
            .map(|&v| {
                let (p, q) = ratio[v].unwrap();
                p.checked_mul(denom_lcm / q).expect("overflow in symmetrizer")
            })
            .collect();
        let g = vals.iter().fold(0i64, |acc, &v| gcd(acc, v));
        for v in &mut vals {
            *v /= g;
        }
        for (&v, val) in members.iter().zip(vals) {
            diag[v] = val;
        }
    }

    let s = SkewSymmetrizer { diag };
    debug_assert!(symmetrizes(&s, b));
    Ok(s)
}

fn symmetrizes(s: &SkewSymmetrizer, b: &IntMatrix) -> bool {
    let n = b.rows();
    s.diag.iter().all(|&d| d > 0)
        && (0..n).all(|i| {
            (0..n).all(|j| {
                s.diag[i].checked_mul(b.get(i, j)).unwrap()
                    == -s.diag[j].checked_mul(b.get(j, i)).unwrap()
            })
        })
}

/// Exchange-matrix mutation in direction `k` (0-based):
/// entries in row or column `k` flip sign, and elsewhere
/// `b_ij` gains `sign(b_ik) * max(b_ik * b_kj, 0)`.
pub fn mutate_matrix(b: &IntMatrix, k: usize) -> Result<IntMatrix> {
    let n = b.rows();
    if !b.is_square() {
        return Err(Error::BadDimensions("exchange matrix must be square".into()));
    }
    if k >= n {
        return Err(Error::IndexOutOfRange(k, n));
    }
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = if i == k || j == k {
                -b.get(i, j)
            } else {
                let prod = b
                    .get(i, k)
                    .checked_mul(b.get(k, j))
                    .expect("overflow in matrix mutation");
                b.get(i, j) + b.get(i, k).signum() * prod.max(0)
            };
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// A seed: cluster expansions, coefficient tuple, exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    mode: Mode,
    cluster: Vec<LaurentPoly>,
    coeffs: Vec<TropicalMonomial>,
    bmat: IntMatrix,
}

impl Seed {
    /// The initial seed: cluster entry `i` is the variable `x_{i+1}`, the
    /// coefficient tuple is the generators (principal) or all ones
    /// (trivial). Rejects matrices that are not skew-symmetrizable.
    pub fn initial(bmat: IntMatrix, mode: Mode) -> Result<Seed> {
        find_skew_symmetrizer(&bmat)?;
        let n = bmat.rows();
        let cluster = (0..n).map(|i| LaurentPoly::variable(n, i)).collect();
        let coeffs = (0..n)
            .map(|i| match mode {
                Mode::Principal => TropicalMonomial::generator(n, i),
                Mode::Trivial => TropicalMonomial::one(n),
            })
            .collect();
        Ok(Seed {
            mode,
            cluster,
            coeffs,
            bmat,
        })
    }

    pub fn rank(&self) -> usize {
        self.bmat.rows()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn coeffs(&self) -> &[TropicalMonomial] {
        &self.coeffs
    }

    pub fn bmat(&self) -> &IntMatrix {
        &self.bmat
    }

    /// Mutate in direction `k` (0-based). The new variable is the exchange
    /// binomial divided by the leaving variable's expansion; that division
    /// being exact is exactly the Laurent property, so an inexact division
    /// here reports a structural failure rather than truncating anything.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange(k, n));
        }

        let bmat = mutate_matrix(&self.bmat, k)?;

        let yk = &self.coeffs[k];
        let one = TropicalMonomial::one(n);
        let one_plus_yk = one.oplus(yk)?;

        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            if i == k {
                coeffs.push(yk.inv());
            } else {
                let bki = i32::try_from(self.bmat.get(k, i))
                    .expect("exchange entry out of exponent range");
                let y = self.coeffs[i]
                    .mul(&yk.pow(bki.max(0)))?
                    .mul(&one_plus_yk.pow(-bki))?;
                coeffs.push(y);
            }
        }

        let mut pos = LaurentPoly::one(n);
        let mut neg = LaurentPoly::one(n);
        for i in 0..n {
            let bik = self.bmat.get(i, k);
            if bik > 0 {
                pos = pos.mul(&self.cluster[i].pow(u32::try_from(bik).unwrap()))?;
            } else if bik < 0 {
                neg = neg.mul(&self.cluster[i].pow(u32::try_from(-bik).unwrap()))?;
            }
        }
        let yhat = match self.mode {
            Mode::Principal => yk.to_laurent(),
            Mode::Trivial => LaurentPoly::one(n),
        };
        let numerator = yhat.mul(&pos)?.add(&neg)?;
        let denominator = self.cluster[k].mul(&one_plus_yk.to_laurent())?;
        let new_var = numerator.div_exact(&denominator)?;

        let mut cluster = self.cluster.clone();
        cluster[k] = new_var;

        Ok(Seed {
            mode: self.mode,
            cluster,
            coeffs,
            bmat,
        })
    }

    /// Replay a mutation path (0-based directions) from this seed.
    pub fn walk(&self, path: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// The same seed with slots renumbered: slot `i` of the result holds
    /// slot `perm[i]` of `self`, with the exchange matrix conjugated to
    /// match, so that `seeds_equivalent(&self.permuted(perm)?, &self)`
    /// recovers `perm`. Mutating the result in direction `i` agrees with
    /// mutating `self` in direction `perm[i]` and permuting after.
    pub fn permuted(&self, perm: &[usize]) -> Result<Seed> {
        let n = self.rank();
        if perm.len() != n {
            return Err(Error::RankMismatch(perm.len(), n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n {
                return Err(Error::IndexOutOfRange(p, n));
            }
            if seen[p] {
                return Err(Error::BadDimensions("repeated slot in permutation".into()));
            }
            seen[p] = true;
        }
        let cluster = perm.iter().map(|&p| self.cluster[p].clone()).collect();
        let coeffs = perm.iter().map(|&p| self.coeffs[p].clone()).collect();
        let mut bmat = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                bmat.set(i, j, self.bmat.get(perm[i], perm[j]));
            }
        }
        Ok(Seed {
            mode: self.mode,
            cluster,
            coeffs,
            bmat,
        })
    }

    /// Byte serialization of the seed with slots reordered so that the
    /// cluster is sorted under the canonical polynomial order. Two seeds get
    /// equal keys exactly when they are equal up to a simultaneous slot
    /// permutation.
    pub fn canonical_key(&self) -> Vec<u8> {
        let n = self.rank();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| self.cluster[a].cmp_canonical(&self.cluster[b]));
        self.serialize_with(&perm)
    }

    /// Byte serialization with slots in place; separates labeled seeds that
    /// differ only by a permutation.
    pub fn labeled_key(&self) -> Vec<u8> {
        let n = self.rank();
        let perm: Vec<usize> = (0..n).collect();
        self.serialize_with(&perm)
    }

    fn serialize_with(&self, perm: &[usize]) -> Vec<u8> {
        let n = self.rank();
        let mut buf: Vec<u8> = Vec::new();
        buf.push(match self.mode {
            Mode::Principal => 1,
            Mode::Trivial => 0,
        });
        buf.extend_from_slice(&(n as u32).to_le_bytes());
        for &i in perm {
            write_poly(&mut buf, &self.cluster[i]);
        }
        for &i in perm {
            for &e in self.coeffs[i].exponents() {
                buf.extend_from_slice(&e.to_le_bytes());
            }
        }
        for &i in perm {
            for &j in perm {
                buf.extend_from_slice(&self.bmat.get(i, j).to_le_bytes());
            }
        }
        buf
    }
}

fn write_poly(buf: &mut Vec<u8>, p: &LaurentPoly) {
    buf.extend_from_slice(&(p.num_terms() as u32).to_le_bytes());
    for (e, c) in p.terms() {
        for &v in &e.xexp {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        for &v in &e.yexp {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        let bytes = c.to_signed_bytes_le();
        buf.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
        buf.extend_from_slice(&bytes);
    }
}

/// The simultaneous slot permutation `sigma` with `a.x_i = b.x_sigma(i)`,
/// `a.y_i = b.y_sigma(i)` and `a.b_ij = b.b_sigma(i)sigma(j)`, if one
/// exists. Cluster entries within a seed are pairwise distinct, so the
/// cluster match already pins the permutation down.
pub fn seeds_equivalent(a: &Seed, b: &Seed) -> Option<Vec<usize>> {
    let n = a.rank();
    if n != b.rank() || a.mode() != b.mode() {
        return None;
    }
    let mut sigma = vec![usize::MAX; n];
    for i in 0..n {
        let j = (0..n).find(|&j| a.cluster[i] == b.cluster[j])?;
        sigma[i] = j;
    }
    let mut seen = vec![false; n];
    for &j in &sigma {
        if seen[j] {
            return None;
        }
        seen[j] = true;
    }
    for i in 0..n {
        if a.coeffs[i] != b.coeffs[sigma[i]] {
            return None;
        }
        for j in 0..n {
            if a.bmat.get(i, j) != b.bmat.get(sigma[i], sigma[j]) {
                return None;
            }
        }
    }
    Some(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn poly(rank: usize, s: &str) -> LaurentPoly {
        LaurentPoly::parse(rank, s).unwrap()
    }

    #[test]
    fn symmetrizer_minimal_trace() {
        let b = mat(&[vec![0, 1], vec![-2, 0]]);
        assert_eq!(find_skew_symmetrizer(&b).unwrap().diag, vec![2, 1]);
        // Skew-symmetric input gets the identity.
        let b = mat(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(find_skew_symmetrizer(&b).unwrap().diag, vec![1, 1]);
    }

    #[test]
    fn symmetrizer_isolated_vertex_gets_one() {
        let b = mat(&[vec![0, 0, 1], vec![0, 0, 0], vec![-3, 0, 0]]);
        assert_eq!(find_skew_symmetrizer(&b).unwrap().diag, vec![3, 1, 1]);
    }

    #[test]
    fn symmetrizer_rejects_bad_signs() {
        let b = mat(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            find_skew_symmetrizer(&b),
            Err(Error::NotSkewSymmetrizable(_))
        ));
        let b = mat(&[vec![1, 0], vec![0, 0]]);
        assert!(matches!(
            find_skew_symmetrizer(&b),
            Err(Error::NotSkewSymmetrizable(_))
        ));
        let b = mat(&[vec![0, 1], vec![0, 0]]);
        assert!(matches!(
            find_skew_symmetrizer(&b),
            Err(Error::NotSkewSymmetrizable(_))
        ));
    }

    #[test]
    fn matrix_mutation_rank_three() {
        let b = mat(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]);
        let expect = mat(&[vec![0, -1, 1], vec![1, 0, -1], vec![-2, 2, 0]]);
        assert_eq!(mutate_matrix(&b, 1).unwrap(), expect);
    }

    #[test]
    fn matrix_mutation_is_involutive() {
        let b = mat(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]);
        for k in 0..3 {
            let once = mutate_matrix(&b, k).unwrap();
            assert_eq!(mutate_matrix(&once, k).unwrap(), b);
        }
    }

    #[test]
    fn principal_first_mutation_matches_known_expansion() {
        let b = mat(&[vec![0, 1], vec![-1, 0]]);
        let s = Seed::initial(b, Mode::Principal).unwrap();
        let t = s.mutate(0).unwrap();
        // x1' = (y1 + x2) / x1.
        assert_eq!(t.cluster()[0], poly(2, "x1^-1*x2 + x1^-1*y1"));
        assert_eq!(t.coeffs()[0], TropicalMonomial::from_exponents(vec![-1, 0]));
        assert_eq!(t.coeffs()[1], TropicalMonomial::from_exponents(vec![1, 1]));
        assert_eq!(
            t.bmat(),
            &mat(&[vec![0, -1], vec![1, 0]])
        );
    }

    #[test]
    fn trivial_first_mutation_matches_known_expansion() {
        let b = mat(&[vec![0, 1], vec![-1, 0]]);
        let s = Seed::initial(b, Mode::Trivial).unwrap();
        let t = s.mutate(0).unwrap();
        assert_eq!(t.cluster()[0], poly(2, "x1^-1*x2 + x1^-1"));
    }

    #[test]
    fn seed_mutation_is_involutive_in_both_modes() {
        let b = mat(&[vec![0, 1], vec![-2, 0]]);
        for mode in [Mode::Principal, Mode::Trivial] {
            let s = Seed::initial(b.clone(), mode).unwrap();
            for k in 0..2 {
                let back = s.mutate(k).unwrap().mutate(k).unwrap();
                assert_eq!(back, s);
            }
        }
    }

    #[test]
    fn mutation_rejects_out_of_range_direction() {
        let b = mat(&[vec![0, 1], vec![-1, 0]]);
        let s = Seed::initial(b, Mode::Trivial).unwrap();
        assert_eq!(s.mutate(2).unwrap_err(), Error::IndexOutOfRange(2, 2));
    }

    #[test]
    fn pentagon_endpoint_is_equivalent_by_transposition() {
        let b = mat(&[vec![0, 1], vec![-1, 0]]);
        let s = Seed::initial(b, Mode::Trivial).unwrap();
        let end = s.walk(&[0, 1, 0, 1, 0]).unwrap();
        assert_eq!(seeds_equivalent(&end, &s), Some(vec![1, 0]));
        assert_eq!(end.canonical_key(), s.canonical_key());
        assert_ne!(end.labeled_key(), s.labeled_key());
    }

    #[test]
    fn equivalence_checks_coefficients_and_matrix() {
        let b = mat(&[vec![0, 1], vec![-1, 0]]);
        let s = Seed::initial(b.clone(), Mode::Principal).unwrap();
        let t = Seed::initial(mat(&[vec![0, -1], vec![1, 0]]), Mode::Principal).unwrap();
        // Equal clusters, different exchange matrices: not equivalent.
        assert_eq!(seeds_equivalent(&s, &t), None);
        assert_ne!(s.canonical_key(), t.canonical_key());
        let trivial = Seed::initial(b, Mode::Trivial).unwrap();
        assert_eq!(seeds_equivalent(&s, &trivial), None);
    }

    #[test]
    fn permutation_commutes_with_mutation() {
        let b = mat(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]);
        let s = Seed::initial(b, Mode::Principal).unwrap().walk(&[0, 2]).unwrap();
        let perm = [2usize, 0, 1];
        let p = s.permuted(&perm).unwrap();
        assert_eq!(seeds_equivalent(&p, &s), Some(perm.to_vec()));
        assert_eq!(p.canonical_key(), s.canonical_key());
        for i in 0..3 {
            assert_eq!(
                p.mutate(i).unwrap(),
                s.mutate(perm[i]).unwrap().permuted(&perm).unwrap()
            );
        }
        assert_eq!(
            s.permuted(&[0, 0, 1]).unwrap_err(),
            Error::BadDimensions("repeated slot in permutation".into())
        );
    }
}
