//! Compatibility degrees between cluster variables of a finite exchange
//! graph.
//!
//! The degree of `b` relative to `a` is read off the denominator vector of
//! `b` in the coordinates of any cluster containing `a`: the entry at `a`'s
//! slot. The value does not depend on the witness cluster, `a` and `b` are
//! compatible exactly when the degree is nonpositive, and the maximal sets
//! of pairwise compatible variables are precisely the clusters.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::explorer::ExchangeGraph;
use crate::invariants::dvector_direct;
use crate::laurent::LaurentPoly;
use crate::matrix::IntMatrix;

/// One degree evaluation, with the witness that produced it.
#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub first: LaurentPoly,
    pub second: LaurentPoly,
    pub degree: i64,
    /// Key of the witness node whose cluster contains `first`.
    pub witness_key: Vec<u8>,
}

/// Where every cluster variable of a complete graph lives: variables in
/// discovery order, with all `(node, slot)` occurrences of each.
pub struct VariableRegistry {
    vars: Vec<LaurentPoly>,
    occurrences: Vec<Vec<(usize, usize)>>,
    lookup: BTreeMap<LaurentPoly, usize>,
}

impl VariableRegistry {
    pub fn build(g: &ExchangeGraph) -> Result<Self> {
        if g.truncated {
            return Err(Error::TruncatedGraph);
        }
        let mut reg = VariableRegistry {
            vars: Vec::new(),
            occurrences: Vec::new(),
            lookup: BTreeMap::new(),
        };
        for (ni, node) in g.nodes.iter().enumerate() {
            for (slot, x) in node.seed.cluster().iter().enumerate() {
                let vi = *reg.lookup.entry(x.clone()).or_insert_with(|| {
                    reg.vars.push(x.clone());
                    reg.occurrences.push(Vec::new());
                    reg.vars.len() - 1
                });
                reg.occurrences[vi].push((ni, slot));
            }
        }
        Ok(reg)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var(&self, i: usize) -> &LaurentPoly {
        &self.vars[i]
    }

    pub fn vars(&self) -> &[LaurentPoly] {
        &self.vars
    }

    pub fn index_of(&self, x: &LaurentPoly) -> Result<usize> {
        self.lookup.get(x).copied().ok_or(Error::UnknownVariable)
    }

    pub fn occurrences(&self, i: usize) -> &[(usize, usize)] {
        &self.occurrences[i]
    }

    pub fn first_occurrence(&self, i: usize) -> (usize, usize) {
        self.occurrences[i][0]
    }
}

fn degree_via_witness(
    g: &ExchangeGraph,
    reg: &VariableRegistry,
    witness: (usize, usize),
    b: usize,
) -> Result<i64> {
    let (wnode, wslot) = witness;
    let (bnode, bslot) = reg.first_occurrence(b);
    let re = g.reexpand_node(wnode, bnode)?;
    Ok(dvector_direct(&re.cluster()[bslot])?.entries[wslot])
}

/// Compatibility degree of `b` relative to `a`, using the breadth-first
/// earliest cluster containing `a` as witness.
pub fn compatibility_degree(g: &ExchangeGraph, a: &LaurentPoly, b: &LaurentPoly) -> Result<i64> {
    Ok(compatibility_degree_report(g, a, b)?.degree)
}

/// Same as [`compatibility_degree`], with the witness attached.
pub fn compatibility_degree_report(
    g: &ExchangeGraph,
    a: &LaurentPoly,
    b: &LaurentPoly,
) -> Result<DegreeReport> {
    let reg = VariableRegistry::build(g)?;
    let ai = reg.index_of(a)?;
    let bi = reg.index_of(b)?;
    let witness = reg.first_occurrence(ai);
    let degree = degree_via_witness(g, &reg, witness, bi)?;
    Ok(DegreeReport {
        first: a.clone(),
        second: b.clone(),
        degree,
        witness_key: g.nodes[witness.0].key.clone(),
    })
}

/// Recompute the degree through every cluster containing `a` and insist the
/// answers agree; the audit trail for witness independence.
pub fn compatibility_degree_audited(
    g: &ExchangeGraph,
    a: &LaurentPoly,
    b: &LaurentPoly,
) -> Result<i64> {
    let reg = VariableRegistry::build(g)?;
    let ai = reg.index_of(a)?;
    let bi = reg.index_of(b)?;
    let mut value: Option<i64> = None;
    for &witness in reg.occurrences(ai) {
        let d = degree_via_witness(g, &reg, witness, bi)?;
        match value {
            None => value = Some(d),
            Some(prev) if prev == d => {}
            Some(prev) => {
                return Err(Error::ClassificationMismatch(format!(
                    "degree {} via node {} disagrees with {}",
                    d, witness.0, prev
                )))
            }
        }
    }
    Ok(value.expect("every registered variable occurs somewhere"))
}

/// Full degree table over the variables in discovery order: entry `(i, j)`
/// is the degree of variable `j` relative to variable `i`. Witness
/// re-expansions are shared per witness node, so the table costs one graph
/// replay per distinct witness.
pub fn degree_matrix(g: &ExchangeGraph) -> Result<IntMatrix> {
    let reg = VariableRegistry::build(g)?;
    let m = reg.len();
    let mut cache: BTreeMap<usize, Vec<crate::seed::Seed>> = BTreeMap::new();
    let mut out = IntMatrix::zeros(m, m);
    for i in 0..m {
        let (wnode, wslot) = reg.first_occurrence(i);
        if !cache.contains_key(&wnode) {
            cache.insert(wnode, g.reexpand_all(wnode)?);
        }
        let re = &cache[&wnode];
        for j in 0..m {
            let (bnode, bslot) = reg.first_occurrence(j);
            let d = dvector_direct(&re[bnode].cluster()[bslot])?.entries[wslot];
            out.set(i, j, d);
        }
    }
    Ok(out)
}

/// True when the given variables are pairwise compatible (nonpositive
/// degrees both ways).
pub fn is_compatible_set(g: &ExchangeGraph, vars: &[LaurentPoly]) -> Result<bool> {
    let reg = VariableRegistry::build(g)?;
    let idx: Vec<usize> = vars
        .iter()
        .map(|v| reg.index_of(v))
        .collect::<Result<_>>()?;
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            if i == j {
                continue;
            }
            let wi = reg.first_occurrence(i);
            let wj = reg.first_occurrence(j);
            if degree_via_witness(g, &reg, wi, j)? > 0 || degree_via_witness(g, &reg, wj, i)? > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Index of the breadth-first earliest node whose cluster contains every
/// given variable. The variables must be pairwise compatible; for a
/// complete finite-type graph a containing cluster then must exist, so its
/// absence is reported as a structural failure.
pub fn complete_to_cluster(g: &ExchangeGraph, vars: &[LaurentPoly]) -> Result<usize> {
    if !is_compatible_set(g, vars)? {
        return Err(Error::IncompatibleSet);
    }
    (0..g.nodes.len())
        .find(|&i| {
            vars.iter()
                .all(|v| g.nodes[i].seed.cluster().contains(v))
        })
        .ok_or(Error::ClusterNotFound)
}

/// All maximal sets of pairwise compatible variables, as sorted variable
/// indices in discovery order, enumerated independently of the cluster
/// structure (maximal cliques of the compatibility relation).
pub fn maximal_compatible_sets(g: &ExchangeGraph) -> Result<Vec<Vec<usize>>> {
    let deg = degree_matrix(g)?;
    let m = deg.rows();
    let compatible =
        |i: usize, j: usize| i != j && deg.get(i, j) <= 0 && deg.get(j, i) <= 0;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let all: Vec<usize> = (0..m).collect();
    bron_kerbosch(&mut Vec::new(), all, Vec::new(), &compatible, &mut out);
    for set in &mut out {
        set.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    adj: &dyn Fn(usize, usize) -> bool,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r.clone());
        return;
    }
    let mut p = p;
    let mut x = x;
    while let Some(v) = p.first().copied() {
        r.push(v);
        let np: Vec<usize> = p.iter().copied().filter(|&u| adj(u, v)).collect();
        let nx: Vec<usize> = x.iter().copied().filter(|&u| adj(u, v)).collect();
        bron_kerbosch(r, np, nx, adj, out);
        r.pop();
        p.remove(0);
        x.push(v);
    }
}
