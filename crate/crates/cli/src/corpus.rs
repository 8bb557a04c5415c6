//! The bundled verification corpus: every rank-2 finite type plus both
//! orientations of the rank-3 path. Small enough to sweep exhaustively,
//! rich enough to exercise asymmetric symmetrizers, nontrivial direction
//! subsets, and permutation-bearing equivalences.

use cluster_core::IntMatrix;

pub struct CorpusInstance {
    pub name: &'static str,
    pub rows: &'static [&'static [i64]],
}

pub const CORPUS: &[CorpusInstance] = &[
    CorpusInstance {
        name: "a2",
        rows: &[&[0, 1], &[-1, 0]],
    },
    CorpusInstance {
        name: "a3-linear",
        rows: &[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]],
    },
    CorpusInstance {
        name: "a3-alternating",
        rows: &[&[0, 1, 0], &[-1, 0, -1], &[0, 1, 0]],
    },
    CorpusInstance {
        name: "b2",
        rows: &[&[0, 1], &[-2, 0]],
    },
    CorpusInstance {
        name: "c2-transpose",
        rows: &[&[0, 2], &[-1, 0]],
    },
    CorpusInstance {
        name: "g2",
        rows: &[&[0, 1], &[-3, 0]],
    },
];

impl CorpusInstance {
    pub fn matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&rows).expect("corpus matrices are well formed")
    }
}
