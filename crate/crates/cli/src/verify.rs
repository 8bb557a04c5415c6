//! The verification harness: every structural fact the library is built on,
//! executed exhaustively over an explored exchange graph and collected into
//! a deterministic JSON report.
//!
//! Properties are gated two ways. Checks that quantify over the whole graph
//! (cluster-level statements, degree tables, partner searches) are skipped
//! when exploration truncated; per-node checks run on whatever prefix was
//! explored. Checks that read degree matrices off expansions need principal
//! coefficients and are skipped for trivial-mode instances.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use cluster_core::compat::{degree_matrix, maximal_compatible_sets, VariableRegistry};
use cluster_core::explorer::{explore, restricted_explore, ExchangeGraph};
use cluster_core::gpairs::{find_gpair, gpair_dvector_classify};
use cluster_core::invariants::{
    dmatrix_direct, dmatrix_recurrence, dvector_direct, expand_monomial, gmatrix,
    monomial_gvector, proper_laurent_check,
};
use cluster_core::{find_skew_symmetrizer, seeds_equivalent, Error, IntMatrix, Mode, Result, Seed};
use serde_json::{json, Value};

use crate::corpus::CORPUS;
use crate::output::matrix_rows;

pub const SCHEMA_VERSION: &str = "1";

/// Largest variable count for which the exhaustive subset sweeps run.
const SUBSET_SWEEP_MAX_VARS: usize = 16;
/// Largest rank for which the relabeling sweep enumerates all slot
/// permutations.
const RELABEL_SWEEP_MAX_RANK: usize = 4;
/// Monomial exponent sum bound for injectivity and Laurent sweeps.
const MONOMIAL_DEGREE_BOUND: u32 = 3;

enum PropOutcome {
    Pass { cases: u64, note: Option<String> },
    Fail { cases: u64, detail: String },
    Skipped { reason: String },
}

fn pass(cases: u64) -> Result<PropOutcome> {
    Ok(PropOutcome::Pass { cases, note: None })
}

fn fail(cases: u64, detail: String) -> Result<PropOutcome> {
    Ok(PropOutcome::Fail { cases, detail })
}

fn skip(reason: &str) -> Result<PropOutcome> {
    Ok(PropOutcome::Skipped {
        reason: reason.to_string(),
    })
}

pub struct PropertyReport {
    pub name: &'static str,
    pub status: &'static str,
    pub cases: u64,
    pub details: Option<String>,
}

pub struct InstanceReport {
    pub name: String,
    pub b: IntMatrix,
    pub mode: Mode,
    pub limit: usize,
    pub elapsed_ms: u128,
    pub nodes: usize,
    pub edges: usize,
    pub variables: Option<usize>,
    pub truncated: bool,
    pub properties: Vec<PropertyReport>,
}

struct Ctx {
    root: Seed,
    g: ExchangeGraph,
    limit: usize,
}

type PropFn = fn(&Ctx) -> Result<PropOutcome>;

/// The battery, in report order. The booleans gate on graph completeness
/// and on principal coefficients respectively.
const PROPERTIES: &[(&str, bool, bool, PropFn)] = &[
    ("mutation-involution", false, false, prop_mutation_involution),
    ("symmetrizer-preservation", false, false, prop_symmetrizer_preservation),
    ("witness-path-replay", false, false, prop_witness_path_replay),
    ("degree-regularity", true, false, prop_degree_regularity),
    ("seed-determined-by-cluster", true, false, prop_seed_determined_by_cluster),
    ("pentagon-identity", true, false, prop_pentagon_identity),
    ("dmatrix-recurrence-agreement", false, false, prop_dmatrix_recurrence_agreement),
    ("dvector-mutation-stability", false, false, prop_dvector_mutation_stability),
    ("dvector-mode-independence", false, false, prop_dvector_mode_independence),
    ("d-sign-coherence", false, false, prop_d_sign_coherence),
    ("gmatrix-unimodularity", false, true, prop_gmatrix_unimodularity),
    ("g-row-sign-coherence", false, true, prop_g_row_sign_coherence),
    ("g-vector-injectivity", false, true, prop_g_vector_injectivity),
    ("gpair-existence-uniqueness", true, true, prop_gpair_existence_uniqueness),
    ("gpair-singleton-rows", true, true, prop_gpair_singleton_rows),
    ("gpair-trichotomy", true, true, prop_gpair_trichotomy),
    ("gpair-monomial-matching", true, true, prop_gpair_monomial_matching),
    ("restricted-reachability-recorded", true, false, prop_restricted_reachability),
    ("compat-witness-independence", true, false, prop_compat_witness_independence),
    ("compat-trichotomy", true, false, prop_compat_trichotomy),
    ("compat-sign-symmetry", true, false, prop_compat_sign_symmetry),
    ("exchange-pair-sharing", true, false, prop_exchange_pair_sharing),
    ("pairwise-implies-joint-cluster", true, false, prop_pairwise_implies_joint),
    ("maximal-sets-are-clusters", true, false, prop_maximal_sets_are_clusters),
    ("connected-containing-subgraphs", true, false, prop_connected_containing),
    ("proper-laurent-monomials", false, false, prop_proper_laurent_monomials),
];

pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|&(n, _, _, _)| n).collect()
}

/// Parse a `--suite` value: `all`, or a comma-separated list of property
/// name prefixes, each of which must match something.
pub fn parse_suite(spec: &str) -> Result<Option<Vec<String>>> {
    let trimmed = spec.trim();
    if trimmed == "all" {
        return Ok(None);
    }
    let mut tokens = Vec::new();
    for tok in trimmed.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        if !PROPERTIES.iter().any(|&(n, _, _, _)| n.starts_with(tok)) {
            return Err(Error::Parse(format!(
                "suite token {:?} matches no property",
                tok
            )));
        }
        tokens.push(tok.to_string());
    }
    if tokens.is_empty() {
        return Err(Error::Parse("empty suite selection".into()));
    }
    Ok(Some(tokens))
}

fn selected(name: &str, filter: &Option<Vec<String>>) -> bool {
    match filter {
        None => true,
        Some(tokens) => tokens.iter().any(|t| name.starts_with(t.as_str())),
    }
}

pub fn verify_instance(
    name: &str,
    b: IntMatrix,
    mode: Mode,
    limit: usize,
    filter: &Option<Vec<String>>,
) -> Result<InstanceReport> {
    let started = Instant::now();
    let root = Seed::initial(b.clone(), mode)?;
    let g = explore(&root, limit)?;
    let cx = Ctx {
        root,
        g,
        limit,
    };
    let mut properties = Vec::new();
    for &(pname, needs_complete, needs_principal, f) in PROPERTIES {
        if !selected(pname, filter) {
            continue;
        }
        let outcome = if needs_principal && mode != Mode::Principal {
            PropOutcome::Skipped {
                reason: "needs principal coefficients".into(),
            }
        } else if needs_complete && cx.g.truncated {
            PropOutcome::Skipped {
                reason: format!("graph truncated at {} nodes", cx.g.node_count()),
            }
        } else {
            match f(&cx) {
                Ok(o) => o,
                Err(e) => PropOutcome::Fail {
                    cases: 0,
                    detail: e.to_string(),
                },
            }
        };
        properties.push(match outcome {
            PropOutcome::Pass { cases, note } => PropertyReport {
                name: pname,
                status: "pass",
                cases,
                details: note,
            },
            PropOutcome::Fail { cases, detail } => PropertyReport {
                name: pname,
                status: "fail",
                cases,
                details: Some(detail),
            },
            PropOutcome::Skipped { reason } => PropertyReport {
                name: pname,
                status: "skipped",
                cases: 0,
                details: Some(reason),
            },
        });
    }
    let variables = if cx.g.truncated {
        None
    } else {
        Some(cx.g.cluster_variables()?.len())
    };
    Ok(InstanceReport {
        name: name.to_string(),
        b,
        mode,
        limit,
        elapsed_ms: started.elapsed().as_millis(),
        nodes: cx.g.node_count(),
        edges: cx.g.edges.len(),
        variables,
        truncated: cx.g.truncated,
        properties,
    })
}

/// Run the whole bundled corpus in principal mode.
pub fn verify_corpus(limit: usize, filter: &Option<Vec<String>>) -> Result<Vec<InstanceReport>> {
    CORPUS
        .iter()
        .map(|inst| verify_instance(inst.name, inst.matrix(), Mode::Principal, limit, filter))
        .collect()
}

pub fn has_failures(reports: &[InstanceReport]) -> bool {
    reports
        .iter()
        .any(|r| r.properties.iter().any(|p| p.status == "fail"))
}

pub fn report_json(reports: &[InstanceReport]) -> Value {
    let mut pass = 0u64;
    let mut failc = 0u64;
    let mut skipped = 0u64;
    let entries: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut ipass = 0u64;
            let mut ifail = 0u64;
            let mut iskip = 0u64;
            let props: Vec<Value> = r
                .properties
                .iter()
                .map(|p| {
                    match p.status {
                        "pass" => ipass += 1,
                        "fail" => ifail += 1,
                        _ => iskip += 1,
                    }
                    json!({
                        "name": p.name,
                        "status": p.status,
                        "cases": p.cases,
                        "details": p.details,
                    })
                })
                .collect();
            pass += ipass;
            failc += ifail;
            skipped += iskip;
            json!({
                "instance": {
                    "name": r.name,
                    "b": matrix_rows(&r.b),
                    "mode": r.mode.as_str(),
                    "limit": r.limit,
                },
                "graph": {
                    "nodes": r.nodes,
                    "edges": r.edges,
                    "variables": r.variables,
                    "truncated": r.truncated,
                },
                "elapsed_ms": r.elapsed_ms,
                "properties": props,
                "summary": {"pass": ipass, "fail": ifail, "skipped": iskip},
            })
        })
        .collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "reports": entries,
        "summary": {"pass": pass, "fail": failc, "skipped": skipped},
    })
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        path.iter()
            .map(|k| (k + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn fmt_subset(subset: &[usize]) -> String {
    format!(
        "{{{}}}",
        subset
            .iter()
            .map(|k| (k + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn fmt_exponents(v: &[u32]) -> String {
    format!(
        "({})",
        v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    )
}

/// All exponent vectors of length `n` with entry sum at most `bound`, in
/// lexicographic order.
fn monomials_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

fn subsets_of(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn no_mixed_signs(values: impl IntoIterator<Item = i64>) -> bool {
    let mut saw_pos = false;
    let mut saw_neg = false;
    for v in values {
        if v > 0 {
            saw_pos = true;
        } else if v < 0 {
            saw_neg = true;
        }
    }
    !(saw_pos && saw_neg)
}

/// Unordered cluster fingerprint: sorted canonical term strings.
fn cluster_set_key(s: &Seed) -> Vec<String> {
    let mut names: Vec<String> = s.cluster().iter().map(|x| x.to_string()).collect();
    names.sort();
    names
}

/// Expansions of every node's cluster in the coordinates of the labeled
/// seed sitting at the end of `path_from_root`, replayed one mutation per
/// node along breadth-first tree edges.
fn expansions_wrt(cx: &Ctx, bmat: IntMatrix, path_to_root: &[usize]) -> Result<Vec<Seed>> {
    let fresh = Seed::initial(bmat, Mode::Trivial)?;
    let at_root = fresh.walk(path_to_root)?;
    let mut out = Vec::with_capacity(cx.g.node_count());
    out.push(at_root);
    for i in 1..cx.g.node_count() {
        let (p, k) = cx.g.nodes[i].parent.expect("non-root nodes have parents");
        let next = out[p].mutate(k)?;
        out.push(next);
    }
    Ok(out)
}

fn prop_mutation_involution(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        for k in 0..n {
            if node.seed.mutate(k)?.mutate(k)? != node.seed {
                return fail(
                    cases,
                    format!("path {}, direction {}", fmt_path(&node.path), k + 1),
                );
            }
            cases += 1;
        }
    }
    pass(cases)
}

fn prop_symmetrizer_preservation(cx: &Ctx) -> Result<PropOutcome> {
    let d = find_skew_symmetrizer(cx.root.bmat())?.diag;
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        let b = node.seed.bmat();
        for i in 0..n {
            for j in 0..n {
                if d[i] * b.get(i, j) != -d[j] * b.get(j, i) {
                    return fail(
                        cases,
                        format!(
                            "path {}: entry ({},{}) breaks the symmetrizer",
                            fmt_path(&node.path),
                            i + 1,
                            j + 1
                        ),
                    );
                }
            }
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_witness_path_replay(cx: &Ctx) -> Result<PropOutcome> {
    let mut cases = 0;
    for node in &cx.g.nodes {
        if cx.root.walk(&node.path)? != node.seed {
            return fail(cases, format!("path {}", fmt_path(&node.path)));
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_degree_regularity(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for i in 0..cx.g.node_count() {
        let nbrs = cx.g.neighbors(i);
        let mut targets: Vec<usize> = nbrs.iter().map(|&(_, j)| j).collect();
        targets.sort_unstable();
        targets.dedup();
        if nbrs.len() != n || targets.len() != n {
            return fail(
                cases,
                format!(
                    "path {}: {} slots, {} distinct neighbors",
                    fmt_path(&cx.g.nodes[i].path),
                    nbrs.len(),
                    targets.len()
                ),
            );
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_seed_determined_by_cluster(cx: &Ctx) -> Result<PropOutcome> {
    let mut seen: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut cases = 0;
    for (i, node) in cx.g.nodes.iter().enumerate() {
        if let Some(&other) = seen.get(&cluster_set_key(&node.seed)) {
            return fail(
                cases,
                format!(
                    "paths {} and {} share a cluster",
                    fmt_path(&cx.g.nodes[other].path),
                    fmt_path(&node.path)
                ),
            );
        }
        seen.insert(cluster_set_key(&node.seed), i);
        cases += 1;
    }
    pass(cases)
}

fn prop_pentagon_identity(cx: &Ctx) -> Result<PropOutcome> {
    let b = cx.root.bmat();
    if cx.root.rank() != 2 || b.get(0, 1).abs() != 1 || b.get(1, 0).abs() != 1 {
        return skip("applies to the rank-2 unit form");
    }
    let end = cx.root.walk(&[0, 1, 0, 1, 0])?;
    match seeds_equivalent(&end, &cx.root) {
        Some(p) if p == vec![1, 0] => pass(1),
        other => fail(
            0,
            format!("five-step return is not the slot swap: {:?}", other),
        ),
    }
}

fn prop_dmatrix_recurrence_agreement(cx: &Ctx) -> Result<PropOutcome> {
    let mut cases = 0;
    for node in &cx.g.nodes {
        let by_recurrence = dmatrix_recurrence(&node.path, cx.root.bmat())?;
        let by_expansion = dmatrix_direct(&node.seed)?;
        if by_recurrence != by_expansion {
            return fail(cases, format!("path {}", fmt_path(&node.path)));
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_dvector_mutation_stability(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for u in 0..cx.g.node_count() {
        let u_node = &cx.g.nodes[u];
        let back: Vec<usize> = u_node.path.iter().rev().copied().collect();
        let wrt_u = expansions_wrt(cx, u_node.seed.bmat().clone(), &back)?;
        for k in 0..n {
            let mutated = u_node.seed.mutate(k)?;
            let mut back_k = vec![k];
            back_k.extend(back.iter().copied());
            let wrt_uk = expansions_wrt(cx, mutated.bmat().clone(), &back_k)?;
            for (nb, bnode) in cx.g.nodes.iter().enumerate() {
                for sb in 0..bnode.seed.rank() {
                    let d_u = dvector_direct(&wrt_u[nb].cluster()[sb])?.entries;
                    let d_uk = dvector_direct(&wrt_uk[nb].cluster()[sb])?.entries;
                    for i in 0..n {
                        if i != k && d_u[i] != d_uk[i] {
                            return fail(
                                cases,
                                format!(
                                    "variable at path {} slot {}, clusters at {} and its direction-{} neighbor differ at coordinate {}",
                                    fmt_path(&bnode.path),
                                    sb + 1,
                                    fmt_path(&u_node.path),
                                    k + 1,
                                    i + 1
                                ),
                            );
                        }
                    }
                    cases += 1;
                }
            }
        }
    }
    pass(cases)
}

fn prop_dvector_mode_independence(cx: &Ctx) -> Result<PropOutcome> {
    let other_mode = match cx.root.mode() {
        Mode::Principal => Mode::Trivial,
        Mode::Trivial => Mode::Principal,
    };
    let other_root = Seed::initial(cx.root.bmat().clone(), other_mode)?;
    let mut cases = 0;
    for node in &cx.g.nodes {
        let other = other_root.walk(&node.path)?;
        if dmatrix_direct(&other)? != dmatrix_direct(&node.seed)? {
            return fail(cases, format!("path {}", fmt_path(&node.path)));
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_d_sign_coherence(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        let d = dmatrix_direct(&node.seed)?;
        for i in 0..n {
            if !no_mixed_signs((0..n).map(|j| d.get(i, j))) {
                return fail(
                    cases,
                    format!("path {}: row {} mixes signs", fmt_path(&node.path), i + 1),
                );
            }
            if !no_mixed_signs((0..n).map(|j| d.get(j, i))) {
                return fail(
                    cases,
                    format!("path {}: column {} mixes signs", fmt_path(&node.path), i + 1),
                );
            }
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_gmatrix_unimodularity(cx: &Ctx) -> Result<PropOutcome> {
    let mut cases = 0;
    for node in &cx.g.nodes {
        let det = gmatrix(&node.seed)?.det();
        if det != 1 && det != -1 {
            return fail(
                cases,
                format!("path {}: determinant {}", fmt_path(&node.path), det),
            );
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_g_row_sign_coherence(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        let g = gmatrix(&node.seed)?;
        for i in 0..n {
            if !no_mixed_signs((0..n).map(|j| g.get(i, j))) {
                return fail(
                    cases,
                    format!("path {}: row {} mixes signs", fmt_path(&node.path), i + 1),
                );
            }
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_g_vector_injectivity(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    // g-vector -> (expansion, support with exponents, witness description)
    let mut seen: BTreeMap<Vec<i64>, (String, Vec<(String, u32)>, String)> = BTreeMap::new();
    let mut cases = 0;
    for node in &cx.g.nodes {
        for v in monomials_up_to(n, MONOMIAL_DEGREE_BOUND) {
            let v_i64: Vec<i64> = v.iter().map(|&e| e as i64).collect();
            let gv = monomial_gvector(&node.seed, &v_i64)?.entries;
            let expansion = expand_monomial(&node.seed, &v)?.to_string();
            let mut support: Vec<(String, u32)> = node
                .seed
                .cluster()
                .iter()
                .zip(&v)
                .filter(|&(_, &e)| e > 0)
                .map(|(x, &e)| (x.to_string(), e))
                .collect();
            support.sort();
            let here = format!("path {} exponents {}", fmt_path(&node.path), fmt_exponents(&v));
            match seen.get(&gv) {
                None => {
                    seen.insert(gv, (expansion, support, here));
                }
                Some((prev_exp, prev_support, prev_here)) => {
                    if prev_exp != &expansion || prev_support != &support {
                        return fail(
                            cases,
                            format!("{} and {} share a degree but differ", prev_here, here),
                        );
                    }
                }
            }
            cases += 1;
        }
    }
    pass(cases)
}

fn prop_gpair_existence_uniqueness(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        for subset in subsets_of(n) {
            match find_gpair(&cx.root, &node.seed, &node.path, &subset, cx.limit) {
                Ok(_) => cases += 1,
                Err(Error::TruncatedGraph) => {
                    return skip("a restricted graph hit the node limit")
                }
                Err(e @ (Error::GPairNotFound | Error::GPairNotUnique(_))) => {
                    return fail(
                        cases,
                        format!(
                            "source path {}, subset {}: {}",
                            fmt_path(&node.path),
                            fmt_subset(&subset),
                            e
                        ),
                    );
                }
                Err(e) => return Err(e),
            }
        }
    }
    pass(cases)
}

fn prop_gpair_singleton_rows(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        let g_source = gmatrix(&node.seed)?;
        for k in 0..n {
            let cert = match find_gpair(&cx.root, &node.seed, &node.path, &[k], cx.limit) {
                Ok(c) => c,
                Err(Error::TruncatedGraph) => {
                    return skip("a restricted graph hit the node limit")
                }
                Err(e) => return Err(e),
            };
            let q: Vec<i64> = (0..n).map(|j| cert.qmat.get(0, j)).collect();
            let row: Vec<i64> = (0..n).map(|j| g_source.get(k, j)).collect();
            let neg: Vec<i64> = row.iter().map(|&x| -x).collect();
            if q != row && q != neg {
                return fail(
                    cases,
                    format!(
                        "source path {}, direction {}: factor row {:?} is not a signed copy of degree row {:?}",
                        fmt_path(&node.path),
                        k + 1,
                        q,
                        row
                    ),
                );
            }
            cases += 1;
        }
    }
    pass(cases)
}

fn prop_gpair_trichotomy(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        for omitted in 0..n {
            let subset: Vec<usize> = (0..n).filter(|&j| j != omitted).collect();
            let cert = match find_gpair(&cx.root, &node.seed, &node.path, &subset, cx.limit) {
                Ok(c) => c,
                Err(Error::TruncatedGraph) => {
                    return skip("a restricted graph hit the node limit")
                }
                Err(e) => return Err(e),
            };
            for i in 0..n {
                if let Err(e) = gpair_dvector_classify(&cert, i) {
                    return fail(
                        cases,
                        format!(
                            "source path {}, omitted direction {}, slot {}: {}",
                            fmt_path(&node.path),
                            omitted + 1,
                            i + 1,
                            e
                        ),
                    );
                }
                cases += 1;
            }
        }
    }
    pass(cases)
}

fn prop_gpair_monomial_matching(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        let g_source = gmatrix(&node.seed)?;
        for subset in subsets_of(n) {
            if subset.is_empty() {
                continue;
            }
            let cert = match find_gpair(&cx.root, &node.seed, &node.path, &subset, cx.limit) {
                Ok(c) => c,
                Err(Error::TruncatedGraph) => {
                    return skip("a restricted graph hit the node limit")
                }
                Err(e) => return Err(e),
            };
            let g_partner = gmatrix(&cert.partner)?;
            for v in monomials_up_to(n, MONOMIAL_DEGREE_BOUND) {
                let v_i64: Vec<i64> = v.iter().map(|&e| e as i64).collect();
                let source_deg = g_source.mul_vec(&v_i64)?;
                let transported = cert.qmat.mul_vec(&v_i64)?;
                let mut v_partner = vec![0i64; n];
                for (r, &slot) in cert.subset.iter().enumerate() {
                    v_partner[slot] = transported[r];
                }
                let partner_deg = g_partner.mul_vec(&v_partner)?;
                if cert.subset.iter().any(|&r| source_deg[r] != partner_deg[r]) {
                    return fail(
                        cases,
                        format!(
                            "source path {}, subset {}, exponents {}",
                            fmt_path(&node.path),
                            fmt_subset(&subset),
                            fmt_exponents(&v)
                        ),
                    );
                }
                cases += 1;
            }
        }
    }
    pass(cases)
}

fn prop_restricted_reachability(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    if n > RELABEL_SWEEP_MAX_RANK {
        return skip("relabeling sweep runs for rank at most 4");
    }
    let perms = permutations_of(n);
    let mut cases = 0;
    let mut slack: Vec<String> = Vec::new();
    for subset in subsets_of(n) {
        if subset.is_empty() {
            continue;
        }
        let mut identity_clusters: BTreeSet<Vec<String>> = BTreeSet::new();
        let mut all_clusters: BTreeSet<Vec<String>> = BTreeSet::new();
        for perm in &perms {
            let start = cx.root.permuted(perm)?;
            let g = restricted_explore(&start, &subset, cx.limit)?;
            if g.truncated {
                return skip("a restricted graph hit the node limit");
            }
            let is_identity = perm.iter().enumerate().all(|(i, &p)| i == p);
            for node in &g.nodes {
                let key = cluster_set_key(&node.seed);
                if is_identity {
                    identity_clusters.insert(key.clone());
                }
                all_clusters.insert(key);
            }
        }
        if all_clusters.len() != identity_clusters.len() {
            slack.push(format!(
                "{}: {} labeled-reachable vs {} relabeling-reachable clusters",
                fmt_subset(&subset),
                identity_clusters.len(),
                all_clusters.len()
            ));
        }
        cases += 1;
    }
    let note = if slack.is_empty() {
        "no relabeling slack on this instance".to_string()
    } else {
        format!("relabeling enlarges reachability: {}", slack.join("; "))
    };
    Ok(PropOutcome::Pass {
        cases,
        note: Some(note),
    })
}

fn prop_compat_witness_independence(cx: &Ctx) -> Result<PropOutcome> {
    let reg = VariableRegistry::build(&cx.g)?;
    let m = reg.len();
    let mut values: BTreeMap<(usize, usize), (i64, usize)> = BTreeMap::new();
    let mut cases = 0;
    for w in 0..cx.g.node_count() {
        let re = cx.g.reexpand_all(w)?;
        for (slot, x) in cx.g.nodes[w].seed.cluster().iter().enumerate() {
            let a = reg.index_of(x)?;
            for b in 0..m {
                let (nb, sb) = reg.first_occurrence(b);
                let d = dvector_direct(&re[nb].cluster()[sb])?.entries[slot];
                match values.get(&(a, b)) {
                    None => {
                        values.insert((a, b), (d, w));
                    }
                    Some(&(prev, prev_w)) => {
                        if prev != d {
                            return fail(
                                cases,
                                format!(
                                    "degree of variable {} against variable {}: {} via node at {} but {} via node at {}",
                                    b + 1,
                                    a + 1,
                                    prev,
                                    fmt_path(&cx.g.nodes[prev_w].path),
                                    d,
                                    fmt_path(&cx.g.nodes[w].path)
                                ),
                            );
                        }
                    }
                }
                cases += 1;
            }
        }
    }
    pass(cases)
}

/// Shared membership table: `cocluster[a][b]` is true when some explored
/// cluster contains both variables.
fn cocluster_table(cx: &Ctx, reg: &VariableRegistry) -> Result<Vec<Vec<bool>>> {
    let m = reg.len();
    let mut table = vec![vec![false; m]; m];
    for node in &cx.g.nodes {
        let idx: Vec<usize> = node
            .seed
            .cluster()
            .iter()
            .map(|x| reg.index_of(x))
            .collect::<Result<_>>()?;
        for &a in &idx {
            for &b in &idx {
                table[a][b] = true;
            }
        }
    }
    Ok(table)
}

fn prop_compat_trichotomy(cx: &Ctx) -> Result<PropOutcome> {
    let reg = VariableRegistry::build(&cx.g)?;
    let deg = degree_matrix(&cx.g)?;
    let cocluster = cocluster_table(cx, &reg)?;
    let m = reg.len();
    let mut cases = 0;
    for a in 0..m {
        for b in 0..m {
            let d = deg.get(a, b);
            let ok = if a == b {
                d == -1
            } else if cocluster[a][b] {
                d == 0
            } else {
                d > 0
            };
            if !ok {
                return fail(
                    cases,
                    format!(
                        "degree of variable {} relative to variable {} is {} but they are {}",
                        b + 1,
                        a + 1,
                        d,
                        if a == b {
                            "equal"
                        } else if cocluster[a][b] {
                            "co-clustered"
                        } else {
                            "never co-clustered"
                        }
                    ),
                );
            }
            cases += 1;
        }
    }
    pass(cases)
}

fn prop_compat_sign_symmetry(cx: &Ctx) -> Result<PropOutcome> {
    let deg = degree_matrix(&cx.g)?;
    let m = deg.rows();
    let mut cases = 0;
    for a in 0..m {
        for b in (a + 1)..m {
            let ab = deg.get(a, b);
            let ba = deg.get(b, a);
            if (ab == 0) != (ba == 0) || (ab > 0) != (ba > 0) {
                return fail(
                    cases,
                    format!(
                        "variables {} and {}: degrees {} and {} disagree in sign",
                        a + 1,
                        b + 1,
                        ab,
                        ba
                    ),
                );
            }
            cases += 1;
        }
    }
    pass(cases)
}

fn prop_exchange_pair_sharing(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let keys: Vec<BTreeSet<String>> = cx
        .g
        .nodes
        .iter()
        .map(|node| {
            node.seed
                .cluster()
                .iter()
                .map(|x| x.to_string())
                .collect()
        })
        .collect();
    let mut cases = 0;
    for u in 0..cx.g.node_count() {
        for v in (u + 1)..cx.g.node_count() {
            let shared = keys[u].intersection(&keys[v]).count();
            if shared != n - 1 {
                continue;
            }
            let u_seed = &cx.g.nodes[u].seed;
            let slot = (0..n)
                .find(|&j| !keys[v].contains(&u_seed.cluster()[j].to_string()))
                .expect("one entry is unshared");
            let mutated = u_seed.mutate(slot)?;
            if cluster_set_key(&mutated) != keys[v].iter().cloned().collect::<Vec<_>>() {
                return fail(
                    cases,
                    format!(
                        "clusters at {} and {} share {} variables but are not an exchange apart",
                        fmt_path(&cx.g.nodes[u].path),
                        fmt_path(&cx.g.nodes[v].path),
                        n - 1
                    ),
                );
            }
            cases += 1;
        }
    }
    pass(cases)
}

fn prop_pairwise_implies_joint(cx: &Ctx) -> Result<PropOutcome> {
    let reg = VariableRegistry::build(&cx.g)?;
    let m = reg.len();
    if m > SUBSET_SWEEP_MAX_VARS {
        return skip("too many variables for the exhaustive subset sweep");
    }
    let deg = degree_matrix(&cx.g)?;
    let members: Vec<BTreeSet<usize>> = cx
        .g
        .nodes
        .iter()
        .map(|node| {
            node.seed
                .cluster()
                .iter()
                .map(|x| reg.index_of(x).expect("cluster entries are registered"))
                .collect()
        })
        .collect();
    let mut cases = 0;
    for mask in 1u64..(1u64 << m) {
        let set: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let compatible = set.iter().enumerate().all(|(p, &a)| {
            set[p + 1..]
                .iter()
                .all(|&b| deg.get(a, b) <= 0 && deg.get(b, a) <= 0)
        });
        if !compatible {
            continue;
        }
        cases += 1;
        if !members
            .iter()
            .any(|cluster| set.iter().all(|i| cluster.contains(i)))
        {
            return fail(
                cases,
                format!(
                    "compatible variables {:?} lie in no explored cluster",
                    set.iter().map(|i| i + 1).collect::<Vec<_>>()
                ),
            );
        }
    }
    pass(cases)
}

fn prop_maximal_sets_are_clusters(cx: &Ctx) -> Result<PropOutcome> {
    let reg = VariableRegistry::build(&cx.g)?;
    let sets = maximal_compatible_sets(&cx.g)?;
    let mut clusters: Vec<Vec<usize>> = cx
        .g
        .nodes
        .iter()
        .map(|node| {
            let mut c: Vec<usize> = node
                .seed
                .cluster()
                .iter()
                .map(|x| reg.index_of(x).expect("cluster entries are registered"))
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    clusters.sort();
    clusters.dedup();
    if sets != clusters {
        return fail(
            sets.len() as u64,
            format!(
                "{} maximal compatible sets vs {} clusters",
                sets.len(),
                clusters.len()
            ),
        );
    }
    pass(sets.len() as u64)
}

fn prop_connected_containing(cx: &Ctx) -> Result<PropOutcome> {
    let reg = VariableRegistry::build(&cx.g)?;
    let m = reg.len();
    if m > SUBSET_SWEEP_MAX_VARS {
        return skip("too many variables for the exhaustive subset sweep");
    }
    let mut cases = 0;
    for mask in 0u64..(1u64 << m) {
        let vars: Vec<_> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| reg.var(i).clone())
            .collect();
        let sub = cx.g.seeds_containing(&vars)?;
        if !sub.is_connected() {
            return fail(
                cases,
                format!(
                    "containing seeds of variables {:?} form a disconnected subgraph",
                    (0..m)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| i + 1)
                        .collect::<Vec<_>>()
                ),
            );
        }
        cases += 1;
    }
    pass(cases)
}

fn prop_proper_laurent_monomials(cx: &Ctx) -> Result<PropOutcome> {
    let n = cx.root.rank();
    let mut cases = 0;
    for node in &cx.g.nodes {
        for v in monomials_up_to(n, MONOMIAL_DEGREE_BOUND) {
            let p = expand_monomial(&node.seed, &v)?;
            match proper_laurent_check(&p) {
                Err(Error::ClusterMonomialOfTarget) => cases += 1,
                Ok(true) => cases += 1,
                Ok(false) => {
                    return fail(
                        cases,
                        format!(
                            "path {} exponents {}: expansion has a term without negative exponents",
                            fmt_path(&node.path),
                            fmt_exponents(&v)
                        ),
                    );
                }
                Err(e) => return Err(e),
            }
        }
    }
    pass(cases)
}
