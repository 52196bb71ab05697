//! JSON instance files.
//!
//! ```json
//! {"n": 3, "arrows": "RL", "dims": [1, 2, 1], "field": "fp", "prime": 32003,
//!  "matrices": {"1": [[1], [0]], "2": [0, 1]}}
//! ```
//!
//! Matrices are keyed by arrow index and given either as rows or as a flat
//! row-major list; the arrow `s → t` carries a `d_t × d_s` matrix. Instead of
//! matrices an instance may list `multiplicities` (`{"p,q": m}`), realized as
//! `⊕ m I_pq`. Point files for `image-check` add a `point` (`N × N` rows).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, PrimeField, Rationals, DEFAULT_PRIME};
use crate::quiver::QuiverA;
use crate::representation::{DimVector, Multiplicities, Representation};
use crate::zelevinsky::{Frame, OppositeCellPoint};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldName {
    #[default]
    Fp,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixData {
    Rows(Vec<Vec<i64>>),
    Flat(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub arrows: String,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub field: FieldName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, MatrixData>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Vec<i64>>>,
}

/// A validated representation over the declared field.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Fp(Representation<PrimeField>),
    Rational(Representation<Rationals>),
}

/// A validated opposite-cell point over the declared field.
#[derive(Clone, Debug, PartialEq)]
pub enum PointInstance {
    Fp(OppositeCellPoint<PrimeField>),
    Rational(OppositeCellPoint<Rationals>),
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("{field}: {msg}"))
}

impl InstanceFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn quiver(&self) -> Result<QuiverA> {
        let q: QuiverA = self.arrows.parse().map_err(|e| field_err("arrows", e))?;
        if q.n() != self.n {
            return Err(field_err("arrows", format!("{} arrows for n = {}", q.n() - 1, self.n)));
        }
        Ok(q)
    }

    pub fn dim_vector(&self) -> Result<DimVector> {
        if self.dims.len() != self.n {
            return Err(field_err("dims", format!("{} entries for n = {}", self.dims.len(), self.n)));
        }
        if let Some(x) = self.dims.iter().position(|&d| d == 0) {
            return Err(field_err(&format!("dims[{x}]"), "dimensions must be positive"));
        }
        DimVector::positive(self.dims.clone())
    }

    fn prime_field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime.unwrap_or(DEFAULT_PRIME)).map_err(|e| field_err("prime", e))
    }

    pub fn instance(&self) -> Result<Instance> {
        match self.field {
            FieldName::Fp => Ok(Instance::Fp(self.representation(&self.prime_field()?)?)),
            FieldName::Rational => {
                if self.prime.is_some() {
                    return Err(field_err("prime", "only allowed with field \"fp\""));
                }
                Ok(Instance::Rational(self.representation(&Rationals)?))
            }
        }
    }

    pub fn point_instance(&self) -> Result<PointInstance> {
        match self.field {
            FieldName::Fp => Ok(PointInstance::Fp(self.point(&self.prime_field()?)?)),
            FieldName::Rational => Ok(PointInstance::Rational(self.point(&Rationals)?)),
        }
    }

    /// The representation given by `matrices` or `multiplicities`.
    pub fn representation<F: Field>(&self, field: &F) -> Result<Representation<F>> {
        let q = self.quiver()?;
        let dims = self.dim_vector()?;
        match (&self.matrices, &self.multiplicities) {
            (Some(_), Some(_)) => Err(field_err("matrices", "give either matrices or multiplicities, not both")),
            (None, None) => Err(field_err("matrices", "missing; give matrices or multiplicities")),
            (Some(ms), None) => {
                if let Some(k) = ms.keys().find(|k| k.parse::<usize>().map_or(true, |e| e == 0 || e >= self.n)) {
                    return Err(field_err(&format!("matrices.{k}"), format!("arrow index must be in 1..{}", self.n - 1)));
                }
                let maps = (1..self.n)
                    .map(|e| {
                        let key = e.to_string();
                        let data = ms.get(&key).ok_or_else(|| field_err(&format!("matrices.{key}"), "missing"))?;
                        let (s, t) = q.ends(e);
                        to_matrix(field, data, dims.get(t), dims.get(s), &format!("matrices.{key}"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Representation::new(q, dims, field, maps)
            }
            (None, Some(mult)) => {
                let mut m = Multiplicities::new(self.n);
                for (key, &count) in mult {
                    let (p, e) = parse_pair(key).ok_or_else(|| field_err(&format!("multiplicities.{key}"), "expected \"p,q\""))?;
                    m.set(p, e, count).map_err(|err| field_err(&format!("multiplicities.{key}"), err))?;
                }
                if m.dims() != dims {
                    return Err(field_err("multiplicities", format!("total dimension {} differs from dims {}", m.dims(), dims)));
                }
                m.realize(&q, field)
            }
        }
    }

    /// The `point` matrix, or ζ(V) of the representation when absent.
    pub fn point<F: Field>(&self, field: &F) -> Result<OppositeCellPoint<F>> {
        let q = self.quiver()?;
        let dims = self.dim_vector()?;
        match &self.point {
            Some(rows) => {
                let n = dims.total();
                let m = to_matrix(field, &MatrixData::Rows(rows.clone()), n, n, "point")?;
                OppositeCellPoint::from_matrix(Frame::new(&q, &dims)?, m)
            }
            None => crate::zelevinsky::zeta(&self.representation(field)?),
        }
    }

    /// Serializes a representation with integer entries.
    pub fn from_representation<F: Field>(v: &Representation<F>, field: FieldName, prime: Option<u32>) -> Result<Self> {
        let mut matrices = BTreeMap::new();
        for (e, m) in v.maps().iter().enumerate() {
            let rows = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| {
                            let s = m.get(i, j).to_string();
                            s.parse::<i64>().map_err(|_| field_err(&format!("matrices.{}", e + 1), format!("entry {s} is not an integer")))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            matrices.insert((e + 1).to_string(), MatrixData::Rows(rows));
        }
        Ok(InstanceFile {
            n: v.quiver().n(),
            arrows: v.quiver().word(),
            dims: v.dims().as_slice().to_vec(),
            field,
            prime,
            matrices: Some(matrices),
            multiplicities: None,
            point: None,
        })
    }
}

fn parse_pair(key: &str) -> Option<(usize, usize)> {
    let (p, q) = key.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn to_matrix<F: Field>(field: &F, data: &MatrixData, rows: usize, cols: usize, name: &str) -> Result<Matrix<F>> {
    let flat: Vec<i64> = match data {
        MatrixData::Flat(v) => {
            if v.len() != rows * cols {
                return Err(field_err(name, format!("{} entries, expected {rows}x{cols} = {}", v.len(), rows * cols)));
            }
            v.clone()
        }
        MatrixData::Rows(r) => {
            // An empty row list stands for a matrix with a zero dimension.
            if r.len() != rows || r.iter().any(|row| row.len() != cols) {
                let got_cols = r.first().map_or(0, Vec::len);
                return Err(field_err(name, format!("shape {}x{got_cols}, expected {rows}x{cols}", r.len())));
            }
            r.concat()
        }
    };
    Matrix::from_vec(field, rows, cols, flat.into_iter().map(|x| field.from_i64(x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{"n": 3, "arrows": "RL", "dims": [1, 2, 1],
        "matrices": {"1": [[1], [0]], "2": [0, 1]}}"#;

    #[test]
    fn parses_rows_and_flat() {
        let f = InstanceFile::parse(EXAMPLE).unwrap();
        let Instance::Fp(v) = f.instance().unwrap() else { panic!("default field is fp") };
        assert_eq!(v.map(2).shape(), (2, 1));
    }

    #[test]
    fn round_trip() {
        let f = InstanceFile::parse(EXAMPLE).unwrap();
        let v = f.representation(&Rationals).unwrap();
        let g = InstanceFile::from_representation(&v, FieldName::Rational, None).unwrap();
        let again = InstanceFile::parse(&g.to_json()).unwrap();
        assert_eq!(again.representation(&Rationals).unwrap(), v);
        assert_eq!(again, g);
    }

    #[test]
    fn rejects_bad_input() {
        let zero_dim = EXAMPLE.replace("[1, 2, 1]", "[1, 0, 1]");
        let e = InstanceFile::parse(&zero_dim).unwrap().instance().unwrap_err();
        assert!(e.to_string().contains("dims[1]"), "{e}");
        let bad_shape = EXAMPLE.replace("[[1], [0]]", "[[1, 0]]");
        let e = InstanceFile::parse(&bad_shape).unwrap().instance().unwrap_err();
        assert!(e.to_string().contains("matrices.1"), "{e}");
        let e = InstanceFile::parse("{\"n\": 2,\n \"arrows\": 5}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let unknown = EXAMPLE.replace("\"n\"", "\"extra\": 1, \"n\"");
        assert!(InstanceFile::parse(&unknown).is_err());
    }

    #[test]
    fn multiplicities_build_direct_sums() {
        let text = r#"{"n": 3, "arrows": "RL", "dims": [1, 2, 1], "multiplicities": {"1,2": 1, "2,3": 1}}"#;
        let v = InstanceFile::parse(text).unwrap().representation(&Rationals).unwrap();
        assert_eq!(v.decompose().unwrap().get(1, 2), 1);
        let wrong = text.replace("[1, 2, 1]", "[1, 1, 1]");
        assert!(InstanceFile::parse(&wrong).unwrap().representation(&Rationals).is_err());
    }
}
