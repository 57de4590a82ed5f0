use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::group::{members, size, PermGroup, Subgroup};
use super::EquiError;

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn q_identity(n: usize) -> QMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect()
}

pub fn q_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

/// A linear representation over the rationals, given on the generators and
/// extended to every element along a breadth-first spanning tree.
#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub dim: usize,
    pub generators: Vec<QMatrix>,
    /// Indexed like the group's elements.
    pub matrices: Vec<QMatrix>,
    pub character: Vec<BigRational>,
}

impl Representation {
    pub fn new(group: &PermGroup, name: &str, dim: usize, generators: Vec<QMatrix>) -> Result<Self, EquiError> {
        if generators.len() != group.generators.len() {
            return Err(EquiError::NotAHomomorphism(format!(
                "{} matrices for {} generators",
                generators.len(),
                group.generators.len()
            )));
        }
        if generators.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(EquiError::NotAHomomorphism(format!("every matrix must be {dim}x{dim}")));
        }
        let gens = group.generator_indices();
        let mut matrices: Vec<Option<QMatrix>> = vec![None; group.order()];
        matrices[0] = Some(q_identity(dim));
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for (s, m) in gens.iter().zip(&generators) {
                let y = group.mul(*s, x);
                if matrices[y].is_none() {
                    matrices[y] = Some(q_mul(m, matrices[x].as_ref().expect("visited")));
                    queue.push_back(y);
                }
            }
        }
        let matrices: Vec<QMatrix> = matrices.into_iter().map(|m| m.expect("generators generate")).collect();
        for (s, m) in gens.iter().zip(&generators) {
            for x in 0..group.order() {
                if q_mul(m, &matrices[x]) != matrices[group.mul(*s, x)] {
                    return Err(EquiError::NotAHomomorphism(format!("relation fails at element {x}")));
                }
            }
        }
        let character = matrices.iter().map(|m| (0..dim).map(|i| m[i][i].clone()).sum()).collect();
        Ok(Self { name: name.into(), dim, generators, matrices, character })
    }

    /// Permutation representation of an action table `act[g][x] = g·x`.
    pub fn permutation(group: &PermGroup, name: &str, act: &[Vec<usize>]) -> Result<Self, EquiError> {
        let n = act.first().map_or(0, Vec::len);
        let gens = group
            .generator_indices()
            .into_iter()
            .map(|s| {
                let mut m = vec![vec![BigRational::zero(); n]; n];
                for x in 0..n {
                    m[act[s][x]][x] = BigRational::one();
                }
                m
            })
            .collect();
        Self::new(group, name, n, gens)
    }

    /// The permutation representation on sum-zero vectors, in the basis
    /// `e_i - e_last`.
    pub fn reduced_permutation(group: &PermGroup, name: &str, act: &[Vec<usize>]) -> Result<Self, EquiError> {
        let n = act.first().map_or(0, Vec::len);
        let d = n.saturating_sub(1);
        let gens = group
            .generator_indices()
            .into_iter()
            .map(|s| {
                let mut m = vec![vec![BigRational::zero(); d]; d];
                for i in 0..d {
                    if act[s][i] < d {
                        m[act[s][i]][i] += BigRational::one();
                    }
                    if act[s][d] < d {
                        m[act[s][d]][i] -= BigRational::one();
                    }
                }
                m
            })
            .collect();
        Self::new(group, name, d, gens)
    }

    pub fn trivial(group: &PermGroup) -> Self {
        let gens = vec![q_identity(1); group.generators.len()];
        Self::new(group, "trivial", 1, gens).expect("trivial representation")
    }

    pub fn sign(group: &PermGroup) -> Self {
        let gens = group
            .generators
            .iter()
            .map(|p| {
                let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)));
                let odd = inversions.filter(|&(i, j)| p[i] > p[j]).count() % 2 == 1;
                vec![vec![BigRational::from_integer(if odd { -1 } else { 1 }.into())]]
            })
            .collect();
        Self::new(group, "sign", 1, gens).expect("sign is a homomorphism")
    }

    pub fn preset(group: &PermGroup, name: &str) -> Result<Self, EquiError> {
        let regular: Vec<Vec<usize>> =
            (0..group.order()).map(|g| (0..group.order()).map(|x| group.mul(g, x)).collect()).collect();
        match name {
            "trivial" => Ok(Self::trivial(group)),
            "sign" => Ok(Self::sign(group)),
            "permutation" => Self::permutation(group, name, &group.natural_action()),
            "standard" => Self::reduced_permutation(group, name, &group.natural_action()),
            "regular" => Self::permutation(group, name, &regular),
            "reduced-regular" => Self::reduced_permutation(group, name, &regular),
            _ => Err(EquiError::UnknownPreset(name.into())),
        }
    }

    /// Generator matrices as rows of `"p/q"` strings.
    pub fn from_json(group: &PermGroup, name: &str, v: &Value) -> Result<Self, EquiError> {
        let parse = |m: &Value| -> Result<QMatrix, EquiError> {
            let rows = m.as_array().ok_or_else(|| EquiError::Parse("matrix must be an array of rows".into()))?;
            rows.iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| EquiError::Parse("row must be an array".into()))?
                        .iter()
                        .map(|x| {
                            let s = x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string());
                            s.parse::<BigRational>().map_err(|_| EquiError::Parse(format!("bad rational {s}")))
                        })
                        .collect()
                })
                .collect()
        };
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| EquiError::Parse("expected {\"generators\": [...]}".into()))?
            .iter()
            .map(parse)
            .collect::<Result<Vec<_>, _>>()?;
        let dim = gens.first().map_or(0, Vec::len);
        Self::new(group, name, dim, gens)
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Vec<Vec<String>>> = self
            .generators
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect())
            .collect();
        json!({ "name": self.name, "dim": self.dim, "generators": gens })
    }
}

/// `dim V^H`, the average of the character over `H`.
pub fn fixed_dim(v: &Representation, h: Subgroup) -> Result<usize, EquiError> {
    let total: BigRational = members(h).map(|x| v.character[x].clone()).sum();
    let avg = total / BigRational::from_integer(size(h).into());
    if !avg.is_integer() || avg.is_negative() {
        return Err(EquiError::NonIntegralAverage(avg.to_string()));
    }
    Ok(avg.to_integer().try_into().expect("dimension fits"))
}
