//! JSON and text serialization of the library's values. All JSON objects
//! print with sorted keys, so identical inputs produce identical bytes.

use cluster_core::explorer::ExchangeGraph;
use cluster_core::gpairs::GPairCertificate;
use cluster_core::{IntMatrix, Seed};
use serde_json::{json, Value};

pub fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        s.push_str(&format!("{:02x}", b));
    }
    s
}

pub fn matrix_rows(m: &IntMatrix) -> Value {
    Value::from(m.to_rows_vec())
}

/// Column vectors of a matrix as a JSON array of arrays.
pub fn matrix_columns(m: &IntMatrix) -> Value {
    let cols: Vec<Vec<i64>> = (0..m.cols()).map(|j| m.column(j)).collect();
    Value::from(cols)
}

fn path_one_based(path: &[usize]) -> Vec<usize> {
    path.iter().map(|&k| k + 1).collect()
}

pub fn seed_json(s: &Seed) -> Value {
    json!({
        "mode": s.mode().as_str(),
        "b": matrix_rows(s.bmat()),
        "cluster": s.cluster().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "coeffs": s.coeffs().iter().map(|y| y.to_string()).collect::<Vec<_>>(),
    })
}

pub fn graph_json(g: &ExchangeGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .map(|node| {
            json!({
                "key": hex(&node.key),
                "path": path_one_based(&node.path),
                "cluster": node.seed.cluster().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let edges: Vec<Vec<usize>> = g
        .edges
        .iter()
        .map(|&(i, k, j)| vec![i, k + 1, j])
        .collect();
    json!({
        "mode": g.mode.as_str(),
        "labeled": g.labeled,
        "directions": path_one_based(&g.directions),
        "nodes": nodes,
        "edges": edges,
        "truncated": g.truncated,
    })
}

/// Plain edge list, one `source target slot` line per explored edge,
/// node indices 0-based and slots 1-based.
pub fn edges_text(g: &ExchangeGraph) -> String {
    let mut out = String::new();
    for &(i, k, j) in &g.edges {
        out.push_str(&format!("{}\t{}\t{}\n", i, j, k + 1));
    }
    out
}

pub fn certificate_json(cert: &GPairCertificate) -> Value {
    json!({
        "subset": path_one_based(&cert.subset),
        "source_path": path_one_based(&cert.source_path),
        "source_cluster": cert.source.cluster().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "partner_path": path_one_based(&cert.partner_path),
        "partner_cluster": cert.partner.cluster().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "q": matrix_rows(&cert.qmat),
    })
}

/// Render a value for standard output: pretty by default, single-line when
/// `compact` is set. Both end with a newline.
pub fn emit(value: &Value, compact: bool) -> String {
    let body = if compact {
        serde_json::to_string(value).expect("serializable value")
    } else {
        serde_json::to_string_pretty(value).expect("serializable value")
    };
    format!("{}\n", body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cluster_core::explorer::{explore, DEFAULT_NODE_LIMIT};
    use cluster_core::Mode;

    #[test]
    fn graph_export_shape() {
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let g = explore(
            &Seed::initial(b, Mode::Trivial).unwrap(),
            DEFAULT_NODE_LIMIT,
        )
        .unwrap();
        let v = graph_json(&g);
        assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
        assert_eq!(v["edges"].as_array().unwrap().len(), 10);
        assert_eq!(v["truncated"], Value::Bool(false));
        assert_eq!(v["nodes"][0]["path"].as_array().unwrap().len(), 0);
        let text = edges_text(&g);
        assert_eq!(text.lines().count(), 10);
        assert!(text.starts_with("0\t"));
    }

    #[test]
    fn emit_is_stable_and_newline_terminated() {
        let v = json!({"zeta": 1, "alpha": [2, 3]});
        let compact = emit(&v, true);
        assert_eq!(compact, "{\"alpha\":[2,3],\"zeta\":1}\n");
        assert!(emit(&v, false).ends_with('\n'));
    }
}
