use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::EquiError;

/// 0-based images of `0..n`.
pub type Perm = Vec<usize>;

/// Default cap on the group order.
pub const DEFAULT_ORDER_BOUND: usize = 60;

/// Subgroups are sets of element indices, packed into a bitmask.
pub type Subgroup = u64;

/// A finite permutation group with its elements materialized.
///
/// Elements are sorted lexicographically, so index 0 is the identity.
/// Products are composites of functions: `(a * b)(x) = a(b(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    elements: Vec<Perm>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    degree: usize,
    generators: Vec<Vec<usize>>,
}

fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

impl PermGroup {
    pub fn new(name: &str, degree: usize, generators: Vec<Perm>) -> Result<Self, EquiError> {
        Self::with_bound(name, degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(name: &str, degree: usize, generators: Vec<Perm>, bound: usize) -> Result<Self, EquiError> {
        let bound = bound.min(Subgroup::BITS as usize);
        for g in &generators {
            let distinct: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != degree || distinct.len() != degree || g.iter().any(|&x| x >= degree) {
                return Err(EquiError::InvalidGenerator(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let id: Perm = (0..degree).collect();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    if seen.len() > bound {
                        return Err(EquiError::GroupTooLarge { bound });
                    }
                    queue.push_back(y);
                }
            }
        }
        let elements: Vec<Perm> = seen.into_iter().collect();
        let index = |p: &Perm| elements.binary_search(p).expect("closed under products");
        let table: Vec<Vec<usize>> =
            elements.iter().map(|a| elements.iter().map(|b| index(&compose(a, b))).collect()).collect();
        let inverses = (0..elements.len()).map(|a| table[a].iter().position(|&c| c == 0).expect("group")).collect();
        Ok(Self { name: name.into(), degree, generators, elements, table, inverses })
    }

    /// `{"degree": n, "generators": [[...], ...]}` with 1-based images.
    pub fn from_json(name: &str, v: &Value) -> Result<Self, EquiError> {
        let g: GroupJson = serde_json::from_value(v.clone()).map_err(|e| EquiError::Parse(e.to_string()))?;
        let gens = g
            .generators
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&x| x.checked_sub(1).ok_or_else(|| EquiError::InvalidGenerator("images are 1-based".into())))
                    .collect()
            })
            .collect::<Result<Vec<Perm>, _>>()?;
        Self::new(name, g.degree, gens)
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Vec<usize>> = self.generators.iter().map(|p| p.iter().map(|x| x + 1).collect()).collect();
        serde_json::to_value(GroupJson { degree: self.degree, generators: gens }).expect("plain data")
    }

    pub fn preset(name: &str) -> Result<Self, EquiError> {
        let p = |xs: &[usize]| xs.iter().map(|x| x - 1).collect::<Perm>();
        match name {
            "trivial" => Self::new(name, 1, vec![]),
            "c2" => Self::new(name, 2, vec![p(&[2, 1])]),
            "c3" => Self::new(name, 3, vec![p(&[2, 3, 1])]),
            "c4" => Self::new(name, 4, vec![p(&[2, 3, 4, 1])]),
            "s3" => Self::new(name, 3, vec![p(&[2, 1, 3]), p(&[2, 3, 1])]),
            "d4" => Self::new(name, 4, vec![p(&[2, 3, 4, 1]), p(&[4, 3, 2, 1])]),
            "q8" => Self::new(name, 8, vec![quaternion_left(1), quaternion_left(2)]),
            "a4" => Self::new(name, 4, vec![p(&[2, 3, 1, 4]), p(&[2, 1, 4, 3])]),
            _ => Err(EquiError::UnknownPreset(name.into())),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index_of(g).expect("generators are elements")).collect()
    }

    pub fn whole(&self) -> Subgroup {
        mask(0..self.order())
    }

    /// Smallest subgroup containing the given elements.
    pub fn generate(&self, gens: Subgroup) -> Subgroup {
        let mut h: Subgroup = 1;
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for g in members(gens) {
                let y = self.mul(g, x);
                if h & (1 << y) == 0 {
                    h |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        h
    }

    pub fn conjugate(&self, h: Subgroup, g: usize) -> Subgroup {
        mask(members(h).map(|x| self.mul(self.mul(g, x), self.inv(g))))
    }

    pub fn normalizer(&self, h: Subgroup) -> Subgroup {
        mask((0..self.order()).filter(|&g| self.conjugate(h, g) == h))
    }

    pub fn is_subgroup(&self, h: Subgroup) -> bool {
        h & 1 == 1 && members(h).all(|a| members(h).all(|b| h & (1 << self.mul(a, b)) != 0))
    }

    /// Left multiplication on the cosets `gH`, listed by smallest element.
    pub fn coset_action(&self, h: Subgroup) -> Vec<Vec<usize>> {
        let coset = |g: usize| mask(members(h).map(|x| self.mul(g, x)));
        let mut cosets: Vec<Subgroup> = (0..self.order()).map(coset).collect();
        cosets.sort_by_key(|c| c.trailing_zeros());
        cosets.dedup();
        let pos = |c: Subgroup| cosets.iter().position(|&d| d == c).expect("coset");
        (0..self.order())
            .map(|g| cosets.iter().map(|&c| pos(mask(members(c).map(|x| self.mul(g, x))))).collect())
            .collect()
    }

    /// The action on `0..degree` this group was given as.
    pub fn natural_action(&self) -> Vec<Vec<usize>> {
        self.elements.clone()
    }
}

/// Element `u` of the quaternion group acting on itself from the left.
/// Elements are numbered `2u + s` for `±1, ±i, ±j, ±k` with `s = 1` for minus.
fn quaternion_left(u: usize) -> Perm {
    // Product of units as (negated, unit).
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    (0..8)
        .map(|x| {
            let (neg, w) = UNIT[u][x / 2];
            2 * w + usize::from(neg ^ (x % 2 == 1))
        })
        .collect()
}

pub fn mask(xs: impl IntoIterator<Item = usize>) -> Subgroup {
    xs.into_iter().fold(0, |m, x| m | (1 << x))
}

pub fn members(h: Subgroup) -> impl Iterator<Item = usize> {
    (0..Subgroup::BITS as usize).filter(move |&i| h & (1 << i) != 0)
}

pub fn size(h: Subgroup) -> usize {
    h.count_ones() as usize
}
