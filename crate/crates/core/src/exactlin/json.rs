use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{FpMatrix, IntMatrix, LinError, Matrix, NatMatrix};

/// Scalar domain tag: `"nat"`, `"int"` or `{"fp": p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarDomain {
    Ring(Ring),
    Fp { fp: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Nat,
    Int,
}

/// A matrix with its scalar domain, serialized as
/// `{"domain": …, "rows": [[…], …], "cols": n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedMatrix {
    pub domain: ScalarDomain,
    pub rows: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<usize>,
}

fn entry_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) if v.unsigned_abs() < (1u64 << 53) => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

fn entry_from_json(v: &Value) -> Result<BigInt, LinError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| LinError::Json(format!("non-integer entry {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| LinError::Json(format!("bad integer string {s:?}"))),
        other => Err(LinError::Json(format!("bad entry {other}"))),
    }
}

pub fn int_matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(entry_to_json).collect())).collect())
}

/// Parses an array of rows. `cols` disambiguates matrices with no rows.
pub fn int_matrix_from_json(v: &Value, cols: Option<usize>) -> Result<IntMatrix, LinError> {
    let rows = v.as_array().ok_or_else(|| LinError::Json("matrix must be an array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let r = r.as_array().ok_or_else(|| LinError::Json("row must be an array".into()))?;
        out.push(r.iter().map(entry_from_json).collect::<Result<Vec<_>, _>>()?);
    }
    let width = match (out.first(), cols) {
        (Some(r), _) => r.len(),
        (None, Some(c)) => c,
        (None, None) => 0,
    };
    if let Some(c) = cols {
        if c != width {
            return Err(LinError::Json(format!("declared {c} columns, found {width}")));
        }
    }
    Matrix::from_rows(out, width)
}

pub fn nat_matrix_to_json(m: &NatMatrix) -> Value {
    int_matrix_to_json(&m.to_int())
}

pub fn nat_matrix_from_json(v: &Value, cols: Option<usize>) -> Result<NatMatrix, LinError> {
    int_matrix_from_json(v, cols)?.to_nat().ok_or_else(|| LinError::Json("negative entry in a nat matrix".into()))
}

impl TaggedMatrix {
    pub fn from_int(m: &IntMatrix) -> Self {
        Self { domain: ScalarDomain::Ring(Ring::Int), rows: int_matrix_to_json(m), cols: Some(m.cols()) }
    }

    pub fn from_nat(m: &NatMatrix) -> Self {
        Self { domain: ScalarDomain::Ring(Ring::Nat), rows: nat_matrix_to_json(m), cols: Some(m.cols()) }
    }

    pub fn from_fp(m: &FpMatrix) -> Self {
        Self {
            domain: ScalarDomain::Fp { fp: m.p() },
            rows: int_matrix_to_json(&m.matrix().map(|&x| BigInt::from(x))),
            cols: Some(m.cols()),
        }
    }

    pub fn to_int(&self) -> Result<IntMatrix, LinError> {
        int_matrix_from_json(&self.rows, self.cols)
    }

    pub fn to_nat(&self) -> Result<NatMatrix, LinError> {
        nat_matrix_from_json(&self.rows, self.cols)
    }

    pub fn to_fp(&self) -> Result<FpMatrix, LinError> {
        let ScalarDomain::Fp { fp } = self.domain else {
            return Err(LinError::Json("expected an fp domain".into()));
        };
        let m = self.to_int()?;
        let pb = BigInt::from(fp);
        let reduced = m.map(|x| {
            let r: BigInt = ((x % &pb) + &pb) % &pb;
            let r: BigUint = r.to_biguint().expect("nonnegative residue");
            u64::try_from(r).expect("residue below p")
        });
        FpMatrix::new(fp, reduced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_tags() {
        let nat: ScalarDomain = serde_json::from_str("\"nat\"").unwrap();
        assert_eq!(nat, ScalarDomain::Ring(Ring::Nat));
        let fp: ScalarDomain = serde_json::from_str("{\"fp\": 5}").unwrap();
        assert_eq!(fp, ScalarDomain::Fp { fp: 5 });
        assert_eq!(serde_json::to_string(&ScalarDomain::Ring(Ring::Int)).unwrap(), "\"int\"");
    }

    #[test]
    fn big_entries_survive_as_strings() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let m = IntMatrix::new(1, 2, vec![huge.clone(), BigInt::from(-3)]).unwrap();
        let v = int_matrix_to_json(&m);
        assert_eq!(v[0][1], Value::from(-3));
        assert_eq!(int_matrix_from_json(&v, None).unwrap(), m);
    }

    #[test]
    fn empty_rows_need_width() {
        let m = int_matrix_from_json(&Value::Array(vec![]), Some(3)).unwrap();
        assert_eq!(m.shape(), (0, 3));
    }

    #[test]
    fn tagged_fp_reduces() {
        let t: TaggedMatrix = serde_json::from_str(r#"{"domain": {"fp": 3}, "rows": [[4, -1]]}"#).unwrap();
        let m = t.to_fp().unwrap();
        assert_eq!((m.get(0, 0), m.get(0, 1)), (1, 2));
    }
}
