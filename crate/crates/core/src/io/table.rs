//! Tube tables as JSON documents and structure constants as CSV.

use serde::Deserialize;
use serde_json::{Map, Value};

use super::report::{canonical_json, complex, float};
use crate::error::{Error, Result};
use crate::numerics::algebra::{SparseVec, StarAlgebra};
use crate::numerics::linalg::{ComplexMatrix, ComplexVector, C64};
use crate::tube::TubeTable;

pub const TABLE_SCHEMA: &str = "annulus.table/1";
/// Largest table dimension accepted on import.
pub const MAX_TABLE_DIM: usize = 1024;

/// A table read back from disk: enough to re-check the algebra axioms.
#[derive(Clone, Debug)]
pub struct LoadedTable {
    pub algebra: StarAlgebra,
    pub trace: ComplexVector,
    pub labels: Vec<String>,
}

#[derive(Deserialize)]
struct LabelRow {
    name: String,
}

#[derive(Deserialize)]
struct TableFile {
    schema: String,
    dim: usize,
    #[serde(default)]
    labels: Vec<LabelRow>,
    products: Vec<(usize, usize, usize, [f64; 2])>,
    involution: Vec<(usize, usize, [f64; 2])>,
    trace: Vec<[f64; 2]>,
}

fn z(p: [f64; 2], what: &str) -> Result<C64> {
    if p[0].is_finite() && p[1].is_finite() {
        Ok(C64::new(p[0], p[1]))
    } else {
        Err(Error::Schema(format!("{what} is not finite")))
    }
}

pub fn parse_table(text: &str) -> Result<LoadedTable> {
    let f: TableFile = serde_json::from_str(text)?;
    if f.schema != TABLE_SCHEMA {
        return Err(Error::Schema(format!("unknown table schema {:?}", f.schema)));
    }
    let n = f.dim;
    if n == 0 || n > MAX_TABLE_DIM {
        return Err(Error::Schema(format!("dimension {n} outside 1..={MAX_TABLE_DIM}")));
    }
    let mut products: Vec<SparseVec> = vec![Vec::new(); n * n];
    for (row, &(a, b, cc, v)) in f.products.iter().enumerate() {
        if a >= n || b >= n || cc >= n {
            return Err(Error::Schema(format!("products[{row}] has an index out of range")));
        }
        products[a * n + b].push((cc as u32, z(v, &format!("products[{row}]"))?));
    }
    for p in &mut products {
        p.sort_by_key(|e| e.0);
        if p.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Schema("duplicate product entry".into()));
        }
    }
    let mut inv = ComplexMatrix::zeros(n, n);
    for (row, &(a, b, v)) in f.involution.iter().enumerate() {
        if a >= n || b >= n {
            return Err(Error::Schema(format!("involution[{row}] has an index out of range")));
        }
        inv[(b, a)] = z(v, &format!("involution[{row}]"))?;
    }
    if f.trace.len() != n {
        return Err(Error::Schema(format!("trace has length {}, dimension is {n}", f.trace.len())));
    }
    let trace = ComplexVector::from_iterator(
        n,
        f.trace.iter().enumerate().map(|(k, &v)| z(v, &format!("trace[{k}]"))).collect::<Result<Vec<_>>>()?,
    );
    Ok(LoadedTable {
        algebra: StarAlgebra::new(n, products, inv)?,
        trace,
        labels: f.labels.into_iter().map(|l| l.name).collect(),
    })
}

fn index_array(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| Value::from(x)).collect())
}

pub fn table_value(table: &TubeTable) -> Value {
    let n = table.dim();
    let labels = table
        .labels
        .iter()
        .map(|l| {
            let mut m = Map::new();
            m.insert("name".into(), Value::from(l.name.clone()));
            m.insert("source".into(), Value::from(l.source));
            m.insert("target".into(), Value::from(l.target));
            m.insert("dual".into(), Value::from(l.dual));
            m.insert("qdim".into(), float(l.qdim));
            Value::Object(m)
        })
        .collect();
    let basis = table.basis.iter().map(|b| index_array(&[b.i, b.j, b.k, b.index])).collect();
    let mut products = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for &(cc, v) in table.algebra.basis_product(a, b) {
                products.push(Value::Array(vec![a.into(), b.into(), (cc as usize).into(), complex(v)]));
            }
        }
    }
    let inv = table.algebra.involution();
    let mut involution = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if inv[(b, a)].norm() > 0.0 {
                involution.push(Value::Array(vec![a.into(), b.into(), complex(inv[(b, a)])]));
            }
        }
    }
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(TABLE_SCHEMA));
    m.insert("dim".into(), Value::from(n));
    m.insert("labels".into(), Value::Array(labels));
    m.insert("basis".into(), Value::Array(basis));
    m.insert("products".into(), Value::Array(products));
    m.insert("involution".into(), Value::Array(involution));
    m.insert("trace".into(), Value::Array(table.trace.iter().map(|z| complex(*z)).collect()));
    Value::Object(m)
}

pub fn table_json(table: &TubeTable) -> String {
    canonical_json(&table_value(table))
}

/// Structure constants as rows `a,b,c,re,im` of `e_a e_b = Σ_c (re + i im) e_c`.
pub fn structure_csv(algebra: &StarAlgebra) -> String {
    let n = algebra.dim();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["a", "b", "c", "re", "im"]).expect("in-memory write");
    for a in 0..n {
        for b in 0..n {
            for &(cc, v) in algebra.basis_product(a, b) {
                w.write_record([
                    a.to_string(),
                    b.to_string(),
                    cc.to_string(),
                    super::report::fmt_float(v.re),
                    super::report::fmt_float(v.im),
                ])
                .expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is UTF-8")
}

/// Reads the CSV produced by [`structure_csv`] back into sparse products.
pub fn parse_structure_csv(text: &str, dim: usize) -> Result<Vec<SparseVec>> {
    if dim == 0 || dim > MAX_TABLE_DIM {
        return Err(Error::Schema(format!("dimension {dim} outside 1..={MAX_TABLE_DIM}")));
    }
    let mut out: Vec<SparseVec> = vec![Vec::new(); dim * dim];
    let mut r = csv::Reader::from_reader(text.as_bytes());
    for (row, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| Error::Schema(format!("csv row {row}: {e}")))?;
        if rec.len() != 5 {
            return Err(Error::Schema(format!("csv row {row} has {} fields", rec.len())));
        }
        let idx = |k: usize| -> Result<usize> {
            rec[k].trim().parse::<usize>().map_err(|_| Error::Schema(format!("csv row {row}: bad index {:?}", &rec[k])))
        };
        let num = |k: usize| -> Result<f64> {
            rec[k].trim().parse::<f64>().map_err(|_| Error::Schema(format!("csv row {row}: bad number {:?}", &rec[k])))
        };
        let (a, b, cc) = (idx(0)?, idx(1)?, idx(2)?);
        if a >= dim || b >= dim || cc >= dim {
            return Err(Error::Schema(format!("csv row {row}: index out of range")));
        }
        out[a * dim + b].push((cc as u32, z([num(3)?, num(4)?], &format!("csv row {row}"))?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::group::{cyclic_table, GroupBackend};
    use crate::tube::build_tube;

    fn z2() -> TubeTable {
        build_tube(&GroupBackend::new(cyclic_table(2), None, 1).unwrap().engine().unwrap()).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let t = z2();
        let back = parse_table(&table_json(&t)).unwrap();
        assert_eq!(back.algebra.dim(), 4);
        for a in 0..4 {
            for b in 0..4 {
                let x = t.algebra.mul(&t.algebra.basis_vector(a), &t.algebra.basis_vector(b));
                let y = back.algebra.mul(&back.algebra.basis_vector(a), &back.algebra.basis_vector(b));
                assert!((x - y).camax() < 1e-15);
            }
        }
    }

    #[test]
    fn csv_round_trip() {
        let t = z2();
        let s = structure_csv(&t.algebra);
        assert!(s.starts_with("a,b,c,re,im\n"));
        let p = parse_structure_csv(&s, 4).unwrap();
        assert_eq!(&p[5], t.algebra.basis_product(1, 1));
    }
}
