//! Input files: group tables, quantum configurations and exported tube tables.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use super::table::{parse_table, LoadedTable};
use crate::category::group::GroupBackend;
use crate::category::quantum::{parse_spin, QuantumBackend};
use crate::error::{Error, Result};
use crate::numerics::linalg::{ComplexMatrix, C64};

/// Largest group order accepted from a file.
pub const MAX_ORDER: usize = 128;
/// Largest twice-spin cutoff accepted from a file.
pub const MAX_CUTOFF2: usize = 24;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    order: usize,
    mul: Vec<Vec<usize>>,
    #[serde(default)]
    irreps: Option<Vec<Vec<Vec<Vec<[f64; 2]>>>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuantumFile {
    q: f64,
    cutoff: String,
}

#[derive(Debug)]
pub enum Input {
    Group(GroupBackend),
    Quantum(QuantumBackend),
    Table(LoadedTable),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Group(_) => "group",
            Input::Quantum(_) => "quantum",
            Input::Table(_) => "table",
        }
    }
}

fn matrix(rows: &[Vec<[f64; 2]>], k: usize, g: usize) -> Result<ComplexMatrix> {
    let d = rows.len();
    if d == 0 {
        return Err(Error::Schema(format!("irreps[{k}][{g}] is empty")));
    }
    let mut m = ComplexMatrix::zeros(d, d);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != d {
            return Err(Error::Schema(format!("irreps[{k}][{g}] row {r} has length {}, expected {d}", row.len())));
        }
        for (cc, z) in row.iter().enumerate() {
            if !z[0].is_finite() || !z[1].is_finite() {
                return Err(Error::Schema(format!("irreps[{k}][{g}][{r}][{cc}] is not finite")));
            }
            m[(r, cc)] = C64::new(z[0], z[1]);
        }
    }
    Ok(m)
}

/// Parses a group file `{"order", "mul", "irreps"?}` and validates the backend eagerly.
pub fn parse_group(text: &str, seed: u64) -> Result<GroupBackend> {
    let f: GroupFile = serde_json::from_str(text)?;
    if f.order == 0 || f.order > MAX_ORDER {
        return Err(Error::Schema(format!("order {} outside 1..={MAX_ORDER}", f.order)));
    }
    if f.mul.len() != f.order {
        return Err(Error::Schema(format!("mul has {} rows, order is {}", f.mul.len(), f.order)));
    }
    let irreps = match f.irreps {
        None => None,
        Some(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (k, rep) in list.iter().enumerate() {
                if rep.len() != f.order {
                    return Err(Error::Schema(format!("irreps[{k}] has {} matrices, order is {}", rep.len(), f.order)));
                }
                let mats = rep.iter().enumerate().map(|(g, rows)| matrix(rows, k, g)).collect::<Result<Vec<_>>>()?;
                if let Some(g) = mats.iter().position(|m| m.nrows() != mats[0].nrows()) {
                    return Err(Error::Schema(format!("irreps[{k}][{g}] has a different size from irreps[{k}][0]")));
                }
                out.push(mats);
            }
            Some(out)
        }
    };
    GroupBackend::new(f.mul, irreps, seed)
}

/// Parses `{"q", "cutoff"}` with the cutoff a spin such as `"3/2"`.
pub fn parse_quantum(text: &str) -> Result<QuantumBackend> {
    let f: QuantumFile = serde_json::from_str(text)?;
    let cutoff2 = parse_spin(&f.cutoff)?;
    if cutoff2 > MAX_CUTOFF2 {
        return Err(Error::Schema(format!("cutoff {} exceeds {}", f.cutoff, MAX_CUTOFF2 / 2)));
    }
    QuantumBackend::new(f.q, cutoff2)
}

/// Dispatches on the top-level keys.
pub fn parse_input(text: &str, seed: u64) -> Result<Input> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v.as_object().ok_or_else(|| Error::Schema("top level is not an object".into()))?;
    if obj.contains_key("schema") {
        Ok(Input::Table(parse_table(text)?))
    } else if obj.contains_key("q") {
        Ok(Input::Quantum(parse_quantum(text)?))
    } else if obj.contains_key("mul") {
        Ok(Input::Group(parse_group(text, seed)?))
    } else {
        Err(Error::Schema("expected a group file (mul), a quantum file (q) or a table (schema)".into()))
    }
}

pub fn ingest(path: &Path, seed: u64) -> Result<(Input, Vec<u8>)> {
    let bytes = std::fs::read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Schema(format!("input is not UTF-8: {e}")))?;
    Ok((parse_input(text, seed)?, bytes))
}

/// Parses a subgroup given as comma-separated element indices; `e` names the identity.
pub fn parse_subgroup(spec: &str, group: &GroupBackend) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let g = if tok == "e" {
            group.identity()
        } else {
            tok.parse::<usize>().map_err(|_| Error::Schema(format!("bad subgroup element {tok:?}")))?
        };
        if g >= group.order() {
            return Err(Error::Validation(format!("subgroup element {g} outside the group of order {}", group.order())));
        }
        if !out.contains(&g) {
            out.push(g);
        }
    }
    if out.is_empty() {
        return Err(Error::Schema("empty subgroup".into()));
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_file() {
        let g = parse_group(r#"{"order":2,"mul":[[0,1],[1,0]]}"#, 1).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn broken_associativity_names_the_triple() {
        // a 3-element loop that is not associative
        let err = parse_group(r#"{"order":3,"mul":[[0,1,2],[1,0,0],[2,0,1]]}"#, 1).unwrap_err();
        assert!(err.to_string().contains('('), "{err}");
    }

    #[test]
    fn quantum_spins() {
        let q = parse_quantum(r#"{"q":0.5,"cutoff":"2"}"#).unwrap();
        assert_eq!(q.spins().len(), 5);
    }

    #[test]
    fn non_unitary_irrep_is_indexed() {
        let text = r#"{"order":2,"mul":[[0,1],[1,0]],"irreps":[[[[[1,0]]],[[[1,0]]]],[[[[1,0]]],[[[-2,0]]]]]}"#;
        let err = parse_group(text, 1).unwrap_err();
        assert!(matches!(err, Error::NonUnitary { index: 1, .. }), "{err}");
    }

    #[test]
    fn subgroup_tokens() {
        let g = parse_group(r#"{"order":2,"mul":[[0,1],[1,0]]}"#, 1).unwrap();
        assert_eq!(parse_subgroup("e", &g).unwrap(), vec![0]);
        assert_eq!(parse_subgroup("1, e", &g).unwrap(), vec![0, 1]);
        assert!(parse_subgroup("5", &g).is_err());
    }
}
