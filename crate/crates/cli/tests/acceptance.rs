//! The acceptance gate. Each test pins one headline guarantee of the engine
//! on the bundled finite-type corpus, checks it exactly, and prints a single
//! pass/fail line with the elapsed time against the stated budget.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use cluster_cli::corpus::CORPUS;
use cluster_core::compat::{degree_matrix, maximal_compatible_sets, VariableRegistry};
use cluster_core::explorer::{explore, restricted_explore, ExchangeGraph};
use cluster_core::gpairs::{find_gpair, gpair_dvector_classify};
use cluster_core::invariants::{
    dmatrix_direct, dmatrix_recurrence, dvector_direct, expand_monomial, gmatrix,
    monomial_gvector, proper_laurent_check,
};
use cluster_core::{Error, IntMatrix, LaurentPoly, Mode, Seed};

type CheckResult = Result<(), String>;

const NODE_BUDGET: usize = 10_000;

fn criterion(num: u32, label: &str, budget: Duration, f: impl FnOnce() -> CheckResult) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    let ok = matches!(outcome, Ok(Ok(()))) && elapsed <= budget;
    println!(
        "acceptance {:02} {} {:7.3}s (budget {:3}s) {}",
        num,
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs(),
        label
    );
    match outcome {
        Ok(Ok(())) => assert!(
            elapsed <= budget,
            "criterion {} exceeded its {:?} budget: {:?}",
            num,
            budget,
            elapsed
        ),
        Ok(Err(msg)) => panic!("criterion {}: {}", num, msg),
        Err(payload) => std::panic::resume_unwind(payload),
    }
}

fn fails(e: Error) -> String {
    e.to_string()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rank2_unit() -> IntMatrix {
    IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
}

fn explored(b: IntMatrix, mode: Mode) -> Result<(Seed, ExchangeGraph), String> {
    let root = Seed::initial(b, mode).map_err(fails)?;
    let g = explore(&root, NODE_BUDGET).map_err(fails)?;
    Ok((root, g))
}

/// The three non-initial variables of the rank-2 unit form, written as the
/// textbook fractions over the initial cluster.
fn rank2_unit_fractions() -> Vec<LaurentPoly> {
    let frac = |num: &str, den: &str| {
        LaurentPoly::parse(2, num)
            .unwrap()
            .div_exact(&LaurentPoly::parse(2, den).unwrap())
            .unwrap()
    };
    vec![
        frac("x2 + 1", "x1"),
        frac("x1 + x2 + 1", "x1*x2"),
        frac("x1 + 1", "x2"),
    ]
}

fn undirected_edges(g: &ExchangeGraph) -> BTreeSet<(usize, usize)> {
    g.edges
        .iter()
        .map(|&(i, _, j)| (i.min(j), i.max(j)))
        .collect()
}

fn monomials_up_to(n: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(left: u32, cur: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(left - e, cur, n, out);
            cur.pop();
        }
    }
    rec(bound, &mut Vec::new(), n, &mut out);
    out
}

fn signs_coherent(values: impl IntoIterator<Item = i64>) -> bool {
    let mut pos = false;
    let mut neg = false;
    for v in values {
        pos |= v > 0;
        neg |= v < 0;
    }
    !(pos && neg)
}

#[test]
fn a01_pentagon_graph_and_variable_formulas() {
    criterion(
        1,
        "rank-2 unit form: five seed classes in a cycle, textbook variables",
        Duration::from_secs(1),
        || {
            let (_, g) = explored(rank2_unit(), Mode::Trivial)?;
            check(g.node_count() == 5, || {
                format!("expected 5 seed classes, found {}", g.node_count())
            })?;
            let edges = undirected_edges(&g);
            check(edges.len() == 5, || {
                format!("expected a 5-cycle, found {} undirected edges", edges.len())
            })?;
            for i in 0..5 {
                let mut targets: Vec<usize> = g.neighbors(i).iter().map(|&(_, j)| j).collect();
                targets.sort_unstable();
                targets.dedup();
                check(targets.len() == 2, || {
                    format!("node {} has {} distinct neighbors, wanted 2", i, targets.len())
                })?;
            }
            let vars: BTreeSet<LaurentPoly> = g
                .cluster_variables()
                .map_err(fails)?
                .into_iter()
                .collect();
            let mut expected: BTreeSet<LaurentPoly> = rank2_unit_fractions().into_iter().collect();
            expected.insert(LaurentPoly::parse(2, "x1").unwrap());
            expected.insert(LaurentPoly::parse(2, "x2").unwrap());
            check(vars == expected, || {
                format!(
                    "variables {:?} differ from the textbook five {:?}",
                    vars.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    expected.iter().map(|p| p.to_string()).collect::<Vec<_>>()
                )
            })
        },
    );
}

#[test]
fn a02_pentagon_degree_table() {
    criterion(
        2,
        "rank-2 unit form: full 5x5 compatibility degree table",
        Duration::from_secs(1),
        || {
            let expected = [
                [-1, 0, 1, 1, 0],
                [0, -1, 0, 1, 1],
                [1, 0, -1, 0, 1],
                [1, 1, 0, -1, 0],
                [0, 1, 1, 0, -1],
            ];
            let (_, g) = explored(rank2_unit(), Mode::Trivial)?;
            let reg = VariableRegistry::build(&g).map_err(fails)?;
            let deg = degree_matrix(&g).map_err(fails)?;
            // Textbook order: the initial pair, then the three fractions in
            // exchange order. Discovery order differs, so map explicitly.
            let mut ordered = vec![
                LaurentPoly::parse(2, "x1").unwrap(),
                LaurentPoly::parse(2, "x2").unwrap(),
            ];
            ordered.extend(rank2_unit_fractions());
            let mut perm = Vec::new();
            for v in &ordered {
                perm.push(reg.index_of(v).map_err(fails)?);
            }
            for i in 0..5 {
                for j in 0..5 {
                    let got = deg.get(perm[i], perm[j]);
                    check(got == expected[i][j], || {
                        format!(
                            "degree of variable {} relative to variable {}: got {}, expected {}",
                            j + 1,
                            i + 1,
                            got,
                            expected[i][j]
                        )
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a03_maximal_compatible_sets_are_clusters() {
    criterion(
        3,
        "maximal pairwise-compatible sets coincide with clusters",
        Duration::from_secs(5),
        || {
            for name in ["a2", "a3-linear", "a3-alternating", "b2"] {
                let inst = CORPUS.iter().find(|c| c.name == name).unwrap();
                let (_, g) = explored(inst.matrix(), Mode::Trivial)?;
                let n = g.nodes[0].seed.rank();
                let reg = VariableRegistry::build(&g).map_err(fails)?;
                let sets = maximal_compatible_sets(&g).map_err(fails)?;
                let mut clusters: Vec<Vec<usize>> = g
                    .nodes
                    .iter()
                    .map(|node| {
                        let mut c: Vec<usize> = node
                            .seed
                            .cluster()
                            .iter()
                            .map(|x| reg.index_of(x).unwrap())
                            .collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                clusters.sort();
                clusters.dedup();
                for s in &sets {
                    check(s.len() == n, || {
                        format!("{}: maximal set {:?} has size {}, wanted {}", name, s, s.len(), n)
                    })?;
                }
                check(sets == clusters, || {
                    format!(
                        "{}: {} maximal sets vs {} clusters",
                        name,
                        sets.len(),
                        clusters.len()
                    )
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn a04_unimodularity_and_sign_coherence() {
    criterion(
        4,
        "degree matrices unimodular, rows and denominator rows/columns sign-coherent",
        Duration::from_secs(5),
        || {
            for inst in CORPUS {
                let (_, g) = explored(inst.matrix(), Mode::Principal)?;
                let n = g.nodes[0].seed.rank();
                for node in &g.nodes {
                    let gm = gmatrix(&node.seed).map_err(fails)?;
                    let det = gm.det();
                    check(det == 1 || det == -1, || {
                        format!("{}: seed determinant {}", inst.name, det)
                    })?;
                    let dm = dmatrix_direct(&node.seed).map_err(fails)?;
                    for i in 0..n {
                        check(signs_coherent((0..n).map(|j| gm.get(i, j))), || {
                            format!("{}: degree row {} mixes signs", inst.name, i + 1)
                        })?;
                        check(signs_coherent((0..n).map(|j| dm.get(i, j))), || {
                            format!("{}: denominator row {} mixes signs", inst.name, i + 1)
                        })?;
                        check(signs_coherent((0..n).map(|j| dm.get(j, i))), || {
                            format!("{}: denominator column {} mixes signs", inst.name, i + 1)
                        })?;
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a05_denominator_recurrence_and_mode_agreement() {
    criterion(
        5,
        "denominator recurrence equals expansions at every labeled seed, both modes",
        Duration::from_secs(10),
        || {
            for inst in CORPUS {
                let b = inst.matrix();
                let n = b.rows();
                let principal = Seed::initial(b.clone(), Mode::Principal).map_err(fails)?;
                let trivial = Seed::initial(b.clone(), Mode::Trivial).map_err(fails)?;
                let all: Vec<usize> = (0..n).collect();
                let labeled = restricted_explore(&principal, &all, NODE_BUDGET).map_err(fails)?;
                check(!labeled.truncated, || {
                    format!("{}: labeled graph truncated", inst.name)
                })?;
                for node in &labeled.nodes {
                    let recurred = dmatrix_recurrence(&node.path, &b).map_err(fails)?;
                    let direct_principal = dmatrix_direct(&node.seed).map_err(fails)?;
                    let at_trivial = trivial.walk(&node.path).map_err(fails)?;
                    let direct_trivial = dmatrix_direct(&at_trivial).map_err(fails)?;
                    check(recurred == direct_principal, || {
                        format!(
                            "{}: recurrence disagrees with principal expansions at {:?}",
                            inst.name, node.path
                        )
                    })?;
                    check(direct_principal == direct_trivial, || {
                        format!("{}: coefficient modes disagree at {:?}", inst.name, node.path)
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a06_denominator_trichotomy() {
    criterion(
        6,
        "denominator entries classify equality / shared cluster / separation",
        Duration::from_secs(10),
        || {
            for inst in CORPUS {
                let (_, g) = explored(inst.matrix(), Mode::Trivial)?;
                let reg = VariableRegistry::build(&g).map_err(fails)?;
                let m = reg.len();
                // Exhaustive membership: which variable pairs share a cluster.
                let mut cocluster = vec![vec![false; m]; m];
                for node in &g.nodes {
                    let idx: Vec<usize> = node
                        .seed
                        .cluster()
                        .iter()
                        .map(|x| reg.index_of(x).unwrap())
                        .collect();
                    for &a in &idx {
                        for &bb in &idx {
                            cocluster[a][bb] = true;
                        }
                    }
                }
                for w in 0..g.node_count() {
                    let re = g.reexpand_all(w).map_err(fails)?;
                    let cluster_idx: Vec<usize> = g.nodes[w]
                        .seed
                        .cluster()
                        .iter()
                        .map(|x| reg.index_of(x).unwrap())
                        .collect();
                    for var in 0..m {
                        let (nb, sb) = reg.first_occurrence(var);
                        let d = dvector_direct(&re[nb].cluster()[sb]).map_err(fails)?;
                        for (slot, &a) in cluster_idx.iter().enumerate() {
                            let entry = d.entries[slot];
                            let ok = if a == var {
                                entry == -1
                            } else if cocluster[a][var] {
                                entry == 0
                            } else {
                                entry > 0
                            };
                            check(ok, || {
                                format!(
                                    "{}: variable {} against cluster {} slot {}: entry {}",
                                    inst.name,
                                    var + 1,
                                    w,
                                    slot + 1,
                                    entry
                                )
                            })?;
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a07_partner_existence_uniqueness_and_classification() {
    criterion(
        7,
        "restricted partners exist uniquely for every seed and direction subset",
        Duration::from_secs(30),
        || {
            for inst in CORPUS {
                let (root, g) = explored(inst.matrix(), Mode::Principal)?;
                let n = root.rank();
                for node in &g.nodes {
                    for mask in 1u64..(1u64 << n) {
                        let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                        let cert = find_gpair(&root, &node.seed, &node.path, &subset, NODE_BUDGET)
                            .map_err(|e| {
                                format!(
                                    "{}: source {:?} subset {:?}: {}",
                                    inst.name, node.path, subset, e
                                )
                            })?;
                        if subset.len() == n - 1 {
                            for i in 0..n {
                                gpair_dvector_classify(&cert, i).map_err(|e| {
                                    format!(
                                        "{}: source {:?} subset {:?} slot {}: {}",
                                        inst.name,
                                        node.path,
                                        subset,
                                        i + 1,
                                        e
                                    )
                                })?;
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a08_containing_subgraphs_are_connected() {
    criterion(
        8,
        "seeds containing any fixed variable set induce a connected subgraph",
        Duration::from_secs(10),
        || {
            for name in ["a2", "a3-linear", "a3-alternating", "b2"] {
                let inst = CORPUS.iter().find(|c| c.name == name).unwrap();
                let (_, g) = explored(inst.matrix(), Mode::Trivial)?;
                let reg = VariableRegistry::build(&g).map_err(fails)?;
                let m = reg.len();
                for mask in 0u64..(1u64 << m) {
                    let vars: Vec<LaurentPoly> = (0..m)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| reg.var(i).clone())
                        .collect();
                    let sub = g.seeds_containing(&vars).map_err(fails)?;
                    check(sub.is_connected(), || {
                        format!("{}: variable mask {:#b} induces a disconnected subgraph", name, mask)
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a09_degree_vectors_determine_monomials() {
    criterion(
        9,
        "equal degree vectors force identical expansions, supports, and exponents",
        Duration::from_secs(30),
        || {
            for inst in CORPUS {
                let (_, g) = explored(inst.matrix(), Mode::Principal)?;
                let n = g.nodes[0].seed.rank();
                let mut seen: BTreeMap<Vec<i64>, (LaurentPoly, Vec<(String, u32)>)> =
                    BTreeMap::new();
                for node in &g.nodes {
                    for v in monomials_up_to(n, 3) {
                        let v_i64: Vec<i64> = v.iter().map(|&e| e as i64).collect();
                        let gv = monomial_gvector(&node.seed, &v_i64).map_err(fails)?.entries;
                        let expansion = expand_monomial(&node.seed, &v).map_err(fails)?;
                        let mut support: Vec<(String, u32)> = node
                            .seed
                            .cluster()
                            .iter()
                            .zip(&v)
                            .filter(|&(_, &e)| e > 0)
                            .map(|(x, &e)| (x.to_string(), e))
                            .collect();
                        support.sort();
                        match seen.get(&gv) {
                            None => {
                                seen.insert(gv, (expansion, support));
                            }
                            Some((prev_expansion, prev_support)) => {
                                check(
                                    prev_expansion == &expansion && prev_support == &support,
                                    || {
                                        format!(
                                            "{}: degree vector {:?} names two different monomials",
                                            inst.name, gv
                                        )
                                    },
                                )?;
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn a10_proper_laurent_property() {
    criterion(
        10,
        "cluster monomials outside the initial cluster expand properly",
        Duration::from_secs(30),
        || {
            for inst in CORPUS {
                let (_, g) = explored(inst.matrix(), Mode::Principal)?;
                let n = g.nodes[0].seed.rank();
                for node in &g.nodes {
                    for v in monomials_up_to(n, 3) {
                        let expansion = expand_monomial(&node.seed, &v).map_err(fails)?;
                        match proper_laurent_check(&expansion) {
                            // A monomial of the initial cluster itself is out
                            // of scope for the property.
                            Err(Error::ClusterMonomialOfTarget) => {}
                            Ok(true) => {}
                            Ok(false) => {
                                return Err(format!(
                                    "{}: monomial {:?} at {:?} has a term with no negative exponent",
                                    inst.name, v, node.path
                                ))
                            }
                            Err(e) => return Err(fails(e)),
                        }
                    }
                }
            }
            Ok(())
        },
    );
}
