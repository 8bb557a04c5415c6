//! Input plumbing: exchange-matrix descriptors, 1-based path and subset
//! syntax, and cluster-variable addresses.

use std::fs;

use cluster_core::compat::VariableRegistry;
use cluster_core::{Error, IntMatrix, LaurentPoly, Mode, Result, Seed};
use serde::Deserialize;

/// Object form of the seed descriptor. The bare row-array form is also
/// accepted wherever a descriptor is, with `n` implied and mode defaulted.
#[derive(Clone, Debug, Deserialize)]
pub struct SeedDescriptor {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: Vec<Vec<i64>>,
    #[serde(default)]
    pub mode: Option<String>,
}

/// Parse the `--b` argument: inline JSON rows, an inline JSON descriptor
/// object, or a path to a file holding either.
pub fn parse_b_arg(text: &str) -> Result<(IntMatrix, Option<Mode>)> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let rows: Vec<Vec<i64>> = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("exchange matrix rows: {}", e)))?;
        return Ok((IntMatrix::from_rows(&rows)?, None));
    }
    if trimmed.starts_with('{') {
        let d: SeedDescriptor = serde_json::from_str(trimmed)
            .map_err(|e| Error::Parse(format!("seed descriptor: {}", e)))?;
        let m = IntMatrix::from_rows(&d.b)?;
        if m.rows() != d.n {
            return Err(Error::Parse(format!(
                "descriptor says n = {} but B has {} rows",
                d.n,
                m.rows()
            )));
        }
        let mode = match d.mode.as_deref() {
            None => None,
            Some(s) => Some(parse_mode(s)?),
        };
        return Ok((m, mode));
    }
    let content = fs::read_to_string(trimmed)
        .map_err(|e| Error::Parse(format!("reading {}: {}", trimmed, e)))?;
    let inner = content.trim();
    if inner.starts_with('[') || inner.starts_with('{') {
        parse_b_arg(inner)
    } else {
        Err(Error::Parse(format!(
            "{} does not contain a JSON matrix or descriptor",
            trimmed
        )))
    }
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "principal" => Ok(Mode::Principal),
        "trivial" => Ok(Mode::Trivial),
        other => Err(Error::Parse(format!(
            "mode must be principal or trivial, got {:?}",
            other
        ))),
    }
}

/// Build the initial seed, giving an explicit `--mode` flag precedence over
/// the descriptor's mode, with principal as the default.
pub fn build_seed(b: IntMatrix, descriptor_mode: Option<Mode>, flag_mode: Option<Mode>) -> Result<Seed> {
    let mode = flag_mode.or(descriptor_mode).unwrap_or(Mode::Principal);
    Seed::initial(b, mode)
}

/// Parse a comma-separated 1-based direction list into 0-based indices.
pub fn parse_directions(text: &str) -> Result<Vec<usize>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("direction {:?} is not an integer", tok)))?;
            if v == 0 {
                return Err(Error::Parse("directions are 1-based".into()));
            }
            Ok(v - 1)
        })
        .collect()
}

/// A cluster-variable address: `@k` for the k-th variable in discovery
/// order, or `path:slot` with a 1-based mutation path (empty for the root)
/// and a 1-based slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarAddress {
    DiscoveryIndex(usize),
    PathSlot(Vec<usize>, usize),
}

pub fn parse_var_address(text: &str) -> Result<VarAddress> {
    let trimmed = text.trim();
    if let Some(idx) = trimmed.strip_prefix('@') {
        let v: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("discovery index {:?} is not an integer", idx)))?;
        if v == 0 {
            return Err(Error::Parse("discovery indices are 1-based".into()));
        }
        return Ok(VarAddress::DiscoveryIndex(v - 1));
    }
    let Some((path_part, slot_part)) = trimmed.rsplit_once(':') else {
        return Err(Error::Parse(format!(
            "variable address {:?} is neither @k nor path:slot",
            trimmed
        )));
    };
    let path = parse_directions(path_part)?;
    let slot: usize = slot_part
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("slot {:?} is not an integer", slot_part)))?;
    if slot == 0 {
        return Err(Error::Parse("slots are 1-based".into()));
    }
    Ok(VarAddress::PathSlot(path, slot - 1))
}

impl VarAddress {
    /// Resolve to the variable's expansion in initial coordinates. The
    /// address must name a variable registered in the explored graph.
    pub fn resolve(&self, root: &Seed, reg: &VariableRegistry) -> Result<LaurentPoly> {
        match self {
            VarAddress::DiscoveryIndex(i) => {
                if *i >= reg.len() {
                    return Err(Error::IndexOutOfRange(*i, reg.len()));
                }
                Ok(reg.var(*i).clone())
            }
            VarAddress::PathSlot(path, slot) => {
                let s = root.walk(path)?;
                if *slot >= s.rank() {
                    return Err(Error::IndexOutOfRange(*slot, s.rank()));
                }
                let x = s.cluster()[*slot].clone();
                reg.index_of(&x)?;
                Ok(x)
            }
        }
    }
}
