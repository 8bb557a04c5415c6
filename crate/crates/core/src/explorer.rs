//! Breadth-first materialization of exchange graphs.
//!
//! `explore` walks the full graph with nodes identified up to simultaneous
//! slot permutation; `restricted_explore` walks only directions from a given
//! subset and keeps labeled seeds distinct, which is the right notion for
//! direction-subset sequences. Every node stores one breadth-first witness
//! path from the root, so any node can be replayed, and any cluster can be
//! re-expanded in the coordinates of any other node by walking the tree path
//! between them.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::invariants::{self, expand_monomial};
use crate::laurent::LaurentPoly;
use crate::seed::{Mode, Seed};

pub const DEFAULT_NODE_LIMIT: usize = 10_000;

#[derive(Clone, Debug)]
pub struct GraphNode {
    pub seed: Seed,
    pub key: Vec<u8>,
    /// Witness mutation path from the root, 0-based directions.
    pub path: Vec<usize>,
    /// Breadth-first tree parent and the direction of the discovering edge.
    pub parent: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub mode: Mode,
    /// True when nodes are labeled seeds, false when they are equivalence
    /// classes keyed canonically.
    pub labeled: bool,
    /// Directions explored from every node, 0-based, strictly increasing.
    pub directions: Vec<usize>,
    pub nodes: Vec<GraphNode>,
    /// One `(node, direction, node)` triple per explored slot.
    pub edges: Vec<(usize, usize, usize)>,
    pub truncated: bool,
    index: HashMap<Vec<u8>, usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

/// Explore the exchange graph up to seed equivalence.
pub fn explore(initial: &Seed, limit: usize) -> Result<ExchangeGraph> {
    let dirs: Vec<usize> = (0..initial.rank()).collect();
    explore_impl(initial, dirs, false, limit)
}

/// Explore only the given directions, on labeled seeds.
pub fn restricted_explore(initial: &Seed, subset: &[usize], limit: usize) -> Result<ExchangeGraph> {
    let n = initial.rank();
    let mut dirs: Vec<usize> = subset.to_vec();
    dirs.sort_unstable();
    dirs.dedup();
    if let Some(&bad) = dirs.iter().find(|&&k| k >= n) {
        return Err(Error::IndexOutOfRange(bad, n));
    }
    explore_impl(initial, dirs, true, limit)
}

fn explore_impl(
    initial: &Seed,
    directions: Vec<usize>,
    labeled: bool,
    limit: usize,
) -> Result<ExchangeGraph> {
    let key_of = |s: &Seed| if labeled { s.labeled_key() } else { s.canonical_key() };
    let root_key = key_of(initial);
    let mut g = ExchangeGraph {
        mode: initial.mode(),
        labeled,
        directions: directions.clone(),
        nodes: vec![GraphNode {
            seed: initial.clone(),
            key: root_key.clone(),
            path: Vec::new(),
            parent: None,
        }],
        edges: Vec::new(),
        truncated: false,
        index: HashMap::new(),
        adjacency: vec![Vec::new()],
    };
    g.index.insert(root_key, 0);

    let mut queue = VecDeque::from([0usize]);
    'bfs: while let Some(i) = queue.pop_front() {
        for &k in &directions {
            let child = g.nodes[i].seed.mutate(k)?;
            let ckey = key_of(&child);
            let j = match g.index.get(&ckey) {
                Some(&j) => j,
                None => {
                    if g.nodes.len() >= limit {
                        g.truncated = true;
                        break 'bfs;
                    }
                    let j = g.nodes.len();
                    let mut path = g.nodes[i].path.clone();
                    path.push(k);
                    g.index.insert(ckey.clone(), j);
                    g.nodes.push(GraphNode {
                        seed: child,
                        key: ckey,
                        path,
                        parent: Some((i, k)),
                    });
                    g.adjacency.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            g.edges.push((i, k, j));
            g.adjacency[i].push((k, j));
        }
    }
    Ok(g)
}

impl ExchangeGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Index of the node this seed belongs to, under the graph's identity
    /// notion (class for quotient graphs, labeled seed otherwise).
    pub fn lookup(&self, seed: &Seed) -> Option<usize> {
        let key = if self.labeled {
            seed.labeled_key()
        } else {
            seed.canonical_key()
        };
        self.index.get(&key).copied()
    }

    /// Explored `(direction, target)` pairs of one node.
    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    /// All distinct cluster variables in discovery order: nodes in
    /// breadth-first order, slots in slot order within each node.
    pub fn cluster_variables(&self) -> Result<Vec<LaurentPoly>> {
        if self.truncated {
            return Err(Error::TruncatedGraph);
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for node in &self.nodes {
            for x in node.seed.cluster() {
                if seen.insert(x.clone()) {
                    out.push(x.clone());
                }
            }
        }
        Ok(out)
    }

    /// Induced subgraph on the nodes whose clusters contain every one of the
    /// given expansions.
    pub fn seeds_containing(&self, vars: &[LaurentPoly]) -> Result<InducedSubgraph> {
        if self.truncated {
            return Err(Error::TruncatedGraph);
        }
        let node_indices: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| {
                vars.iter()
                    .all(|v| self.nodes[i].seed.cluster().contains(v))
            })
            .collect();
        let inside: std::collections::HashSet<usize> = node_indices.iter().copied().collect();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, _, b)| inside.contains(&a) && inside.contains(&b))
            .collect();
        Ok(InducedSubgraph {
            node_indices,
            edges,
        })
    }

    /// Every node's cluster re-expanded in the coordinates of the reference
    /// node's cluster, as trivial-coefficient seeds. Denominator data read
    /// off these seeds is what "with respect to the reference cluster"
    /// means; coefficients play no role in it.
    ///
    /// The reference's own re-expansion is the fresh initial seed; all other
    /// nodes follow by replaying breadth-first tree edges, so the whole
    /// graph costs one mutation per node.
    pub fn reexpand_all(&self, reference: usize) -> Result<Vec<Seed>> {
        if reference >= self.nodes.len() {
            return Err(Error::IndexOutOfRange(reference, self.nodes.len()));
        }
        let fresh = Seed::initial(self.nodes[reference].seed.bmat().clone(), Mode::Trivial)?;
        let back: Vec<usize> = self.nodes[reference].path.iter().rev().copied().collect();
        let at_root = fresh.walk(&back)?;
        let mut out: Vec<Seed> = Vec::with_capacity(self.nodes.len());
        out.push(at_root);
        for i in 1..self.nodes.len() {
            let (p, k) = self.nodes[i].parent.expect("non-root nodes have parents");
            let s = out[p].mutate(k)?;
            out.push(s);
        }
        Ok(out)
    }

    /// One node's cluster re-expanded in the reference node's coordinates,
    /// walking the reduced tree path between the two nodes.
    pub fn reexpand_node(&self, reference: usize, node: usize) -> Result<Seed> {
        if reference >= self.nodes.len() {
            return Err(Error::IndexOutOfRange(reference, self.nodes.len()));
        }
        if node >= self.nodes.len() {
            return Err(Error::IndexOutOfRange(node, self.nodes.len()));
        }
        let fresh = Seed::initial(self.nodes[reference].seed.bmat().clone(), Mode::Trivial)?;
        let mut path: Vec<usize> = self.nodes[reference].path.iter().rev().copied().collect();
        path.extend(&self.nodes[node].path);
        fresh.walk(&reduce_path(path))
    }

    /// True when the cluster monomial with exponents `v` at `source`,
    /// rewritten in the coordinates of `target`, has a negative x-exponent
    /// in every term. Rejects monomials that are cluster monomials of the
    /// target itself.
    pub fn proper_laurent_check(&self, source: usize, v: &[u32], target: usize) -> Result<bool> {
        let re = self.reexpand_node(target, source)?;
        let p = expand_monomial(&re, v)?;
        invariants::proper_laurent_check(&p)
    }
}

/// Subgraph induced by a variable-membership query; indices refer to the
/// parent graph.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub node_indices: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl InducedSubgraph {
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.node_indices.first() else {
            return true;
        };
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(a, _, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = std::collections::HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &j in adj.get(&i).map(|v| v.as_slice()).unwrap_or(&[]) {
                if seen.insert(j) {
                    stack.push(j);
                }
            }
        }
        self.node_indices.iter().all(|i| seen.contains(i))
    }
}

/// Cancel adjacent repeats; mutation in one direction is an involution, so
/// this is the geodesic word in the mutation tree.
pub fn reduce_path(path: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for k in path {
        if out.last() == Some(&k) {
            out.pop();
        } else {
            out.push(k);
        }
    }
    out
}
