//! Spans of finite sets, up to isomorphism of spans.
//!
//! A span `n ← A → m` is recorded by the `m × n` matrix counting apex
//! elements over each pair, and pullback composition becomes the matrix
//! product over ℕ.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};
use serde_json::{json, Value};

use super::{Biproduct, Cofiber, DualityData, HomInvariant, ModelCategory, ModelError};
use crate::exactlin::{nat_matrix_from_json, nat_matrix_to_json, NatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanObject(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanMorphism {
    dom: usize,
    cod: usize,
    matrix: NatMatrix,
}

impl SpanMorphism {
    /// `matrix` is `cod × dom`.
    pub fn new(dom: usize, cod: usize, matrix: NatMatrix) -> Result<Self, ModelError> {
        if matrix.shape() != (cod, dom) {
            return Err(ModelError::Invalid(format!("matrix is {:?}, expected {cod}x{dom}", matrix.shape())));
        }
        Ok(Self { dom, cod, matrix })
    }

    pub fn from_u64_rows(dom: usize, cod: usize, rows: &[&[u64]]) -> Result<Self, ModelError> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigUint::from(x)).collect()).collect();
        Self::new(dom, cod, NatMatrix::from_rows(rows, dom)?)
    }

    pub fn matrix(&self) -> &NatMatrix {
        &self.matrix
    }

    pub fn dom_size(&self) -> usize {
        self.dom
    }

    pub fn cod_size(&self) -> usize {
        self.cod
    }

    /// Forward map along a function `dom → cod`.
    pub fn forward(cod: usize, f: &[usize]) -> Self {
        let mut m = NatMatrix::zeros(cod, f.len());
        for (j, &i) in f.iter().enumerate() {
            m.set(i, j, BigUint::one());
        }
        Self { dom: f.len(), cod, matrix: m }
    }

    /// Backward map along a function `cod → dom`.
    pub fn backward(dom: usize, f: &[usize]) -> Self {
        let fwd = Self::forward(dom, f);
        Self { dom, cod: f.len(), matrix: fwd.matrix.transpose() }
    }

    pub fn to_json(&self) -> Value {
        json!({"dom": self.dom, "cod": self.cod, "matrix": nat_matrix_to_json(&self.matrix)})
    }

    pub fn from_json(v: &Value) -> Result<Self, ModelError> {
        let size = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| ModelError::Invalid(format!("span morphism needs integer {k:?}")))
        };
        let (dom, cod) = (size("dom")?, size("cod")?);
        let m = v.get("matrix").ok_or_else(|| ModelError::Invalid("span morphism needs \"matrix\"".into()))?;
        Self::new(dom, cod, nat_matrix_from_json(m, Some(dom))?)
    }
}

/// Connected piece of a span's support graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanBlock {
    /// `0 → 1`: an element of the target hit by nothing.
    Injection { target: usize },
    /// `1 ← k → k` with identity forward leg, including `1 ← 0 → 0` and the identity of 1.
    Backward { source: usize, targets: Vec<usize> },
    /// `k → 1` with `k ≥ 2`.
    Fold { sources: Vec<usize>, target: usize },
}

impl SpanBlock {
    fn rule(&self) -> String {
        match self {
            SpanBlock::Injection { .. } => "forward 0→1 has cofiber 1".into(),
            SpanBlock::Backward { targets, .. } if targets.len() == 1 => "identity has cofiber 0".into(),
            SpanBlock::Backward { targets, .. } => format!("backward 1←{} has cofiber 0", targets.len()),
            SpanBlock::Fold { sources, .. } => format!("fold {}→1 has cofiber 0", sources.len()),
        }
    }
}

/// Splits a span into the handled block shapes, or says why it cannot.
pub fn classify_span(f: &SpanMorphism) -> Result<Vec<SpanBlock>, ModelError> {
    let m = &f.matrix;
    let (rows, cols) = m.shape();
    let one = BigUint::one();
    let mut blocks = Vec::new();
    let mut seen_rows = vec![false; rows];
    for j in 0..cols {
        let hit: Vec<usize> = (0..rows).filter(|&i| !m.get(i, j).is_zero()).collect();
        if hit.iter().any(|&i| *m.get(i, j) != one) {
            return Err(ModelError::UnsupportedShape(format!("column {j} has a multiplicity above 1")));
        }
        match hit.as_slice() {
            [] => blocks.push(SpanBlock::Backward { source: j, targets: vec![] }),
            [i] => {
                let i = *i;
                if seen_rows[i] {
                    continue;
                }
                let sources: Vec<usize> = (0..cols).filter(|&c| !m.get(i, c).is_zero()).collect();
                for &c in &sources {
                    let col_hits = (0..rows).filter(|&r| !m.get(r, c).is_zero()).count();
                    if col_hits != 1 || *m.get(i, c) != one {
                        return Err(ModelError::UnsupportedShape(format!("row {i} mixes a fold with a backward map")));
                    }
                }
                seen_rows[i] = true;
                if sources.len() == 1 {
                    blocks.push(SpanBlock::Backward { source: j, targets: vec![i] });
                } else {
                    blocks.push(SpanBlock::Fold { sources, target: i });
                }
            }
            _ => {
                for &i in &hit {
                    let row_hits = (0..cols).filter(|&c| !m.get(i, c).is_zero()).count();
                    if row_hits != 1 {
                        return Err(ModelError::UnsupportedShape(format!(
                            "rows and columns of the block at column {j} both branch"
                        )));
                    }
                    seen_rows[i] = true;
                }
                blocks.push(SpanBlock::Backward { source: j, targets: hit });
            }
        }
    }
    for (i, seen) in seen_rows.iter().enumerate() {
        if !seen {
            blocks.push(SpanBlock::Injection { target: i });
        }
    }
    Ok(blocks)
}

/// The category of spans of finite sets at the level of isomorphism classes.
#[derive(Clone, Copy, Debug, Default)]
pub struct SpanFin;

impl ModelCategory for SpanFin {
    type Obj = SpanObject;
    type Mor = SpanMorphism;

    fn name(&self) -> &'static str {
        "span-fin"
    }

    fn unit(&self) -> SpanObject {
        SpanObject(1)
    }

    fn zero_object(&self) -> SpanObject {
        SpanObject(0)
    }

    fn dom(&self, f: &SpanMorphism) -> SpanObject {
        SpanObject(f.dom)
    }

    fn cod(&self, f: &SpanMorphism) -> SpanObject {
        SpanObject(f.cod)
    }

    fn identity(&self, x: &SpanObject) -> SpanMorphism {
        SpanMorphism { dom: x.0, cod: x.0, matrix: NatMatrix::identity(x.0) }
    }

    fn compose(&self, g: &SpanMorphism, f: &SpanMorphism) -> Result<SpanMorphism, ModelError> {
        if f.cod != g.dom {
            return Err(ModelError::DimensionMismatch { cod: f.cod.to_string(), dom: g.dom.to_string() });
        }
        Ok(SpanMorphism { dom: f.dom, cod: g.cod, matrix: g.matrix.mul(&f.matrix)? })
    }

    fn tensor_obj(&self, x: &SpanObject, y: &SpanObject) -> SpanObject {
        SpanObject(x.0 * y.0)
    }

    fn tensor(&self, f: &SpanMorphism, g: &SpanMorphism) -> SpanMorphism {
        SpanMorphism { dom: f.dom * g.dom, cod: f.cod * g.cod, matrix: f.matrix.kronecker(&g.matrix) }
    }

    fn braiding(&self, x: &SpanObject, y: &SpanObject) -> SpanMorphism {
        let n = x.0 * y.0;
        SpanMorphism { dom: n, cod: n, matrix: NatMatrix::commutation(x.0, y.0) }
    }

    fn zero_mor(&self, x: &SpanObject, y: &SpanObject) -> SpanMorphism {
        SpanMorphism { dom: x.0, cod: y.0, matrix: NatMatrix::zeros(y.0, x.0) }
    }

    fn add(&self, f: &SpanMorphism, g: &SpanMorphism) -> Result<SpanMorphism, ModelError> {
        if (f.dom, f.cod) != (g.dom, g.cod) {
            return Err(ModelError::DimensionMismatch {
                cod: format!("{}→{}", f.dom, f.cod),
                dom: format!("{}→{}", g.dom, g.cod),
            });
        }
        Ok(SpanMorphism { dom: f.dom, cod: f.cod, matrix: f.matrix.add(&g.matrix)? })
    }

    fn negate(&self, f: &SpanMorphism) -> Option<SpanMorphism> {
        f.matrix.is_zero().then(|| f.clone())
    }

    fn biproduct(&self, x: &SpanObject, y: &SpanObject) -> Biproduct<SpanObject, SpanMorphism> {
        let (a, b) = (x.0, y.0);
        let inj1 = SpanMorphism::forward(a + b, &(0..a).collect::<Vec<_>>());
        let inj2 = SpanMorphism::forward(a + b, &(a..a + b).collect::<Vec<_>>());
        Biproduct { object: SpanObject(a + b), proj1: transpose(&inj1), proj2: transpose(&inj2), inj1, inj2 }
    }

    fn dual(&self, x: &SpanObject) -> SpanObject {
        *x
    }

    fn duality(&self, x: &SpanObject) -> DualityData<SpanObject, SpanMorphism> {
        let n = x.0;
        let diag: Vec<usize> = (0..n).map(|i| i * n + i).collect();
        // the apex is n itself: 1 ← n → n × n along the diagonal
        let mut unit = NatMatrix::zeros(n * n, 1);
        for &d in &diag {
            unit.set(d, 0, BigUint::one());
        }
        let unit = SpanMorphism { dom: 1, cod: n * n, matrix: unit };
        DualityData { object: *x, dual: *x, counit: transpose(&unit), unit }
    }

    fn cofiber(&self, f: &SpanMorphism) -> Result<Cofiber<SpanObject, SpanMorphism>, ModelError> {
        let blocks = classify_span(f)?;
        let survivors: Vec<usize> = blocks
            .iter()
            .filter_map(|b| match b {
                SpanBlock::Injection { target } => Some(*target),
                _ => None,
            })
            .collect();
        let mut provenance: Vec<String> = blocks.iter().map(SpanBlock::rule).collect();
        provenance.sort();
        provenance.dedup();
        if blocks.len() > 1 {
            provenance.push("blocks assemble by disjoint union".into());
        }
        let quotient = SpanMorphism {
            dom: f.cod,
            cod: survivors.len(),
            matrix: NatMatrix::identity(f.cod).select_rows(&survivors),
        };
        Ok(Cofiber { object: SpanObject(survivors.len()), quotient, provenance })
    }

    fn invert(&self, f: &SpanMorphism) -> Option<SpanMorphism> {
        if f.dom != f.cod {
            return None;
        }
        let one = BigUint::one();
        let is_perm = (0..f.cod).all(|i| {
            let row = f.matrix.row(i);
            row.iter().filter(|x| !x.is_zero()).count() == 1 && row.iter().all(|x| x.is_zero() || *x == one)
        }) && (0..f.dom).all(|j| (0..f.cod).filter(|&i| !f.matrix.get(i, j).is_zero()).count() == 1);
        is_perm.then(|| transpose(f))
    }

    fn section(&self, f: &SpanMorphism) -> Option<SpanMorphism> {
        // each target element needs a source column hitting it alone, once
        let one = BigUint::one();
        let mut s = NatMatrix::zeros(f.dom, f.cod);
        for i in 0..f.cod {
            let j = (0..f.dom)
                .find(|&j| *f.matrix.get(i, j) == one && (0..f.cod).all(|k| k == i || f.matrix.get(k, j).is_zero()))?;
            s.set(j, i, one.clone());
        }
        Some(SpanMorphism { dom: f.cod, cod: f.dom, matrix: s })
    }

    fn hom_invariant(&self, x: &SpanObject, y: &SpanObject) -> HomInvariant {
        HomInvariant::new(0, (x.0 * y.0) as u64, 0, Default::default())
    }

    fn enumerate_homs(&self, x: &SpanObject, y: &SpanObject, _limit: usize) -> Option<Vec<SpanMorphism>> {
        (x.0 * y.0 == 0).then(|| vec![self.zero_mor(x, y)])
    }

    fn sample_hom(&self, x: &SpanObject, y: &SpanObject, rng: &mut dyn RngCore) -> SpanMorphism {
        let matrix = NatMatrix::from_fn(y.0, x.0, |_, _| BigUint::from(rng.gen_range(0u32..=3)));
        SpanMorphism { dom: x.0, cod: y.0, matrix }
    }

    fn sample_object(&self, rng: &mut dyn RngCore) -> SpanObject {
        SpanObject(rng.gen_range(0..=4))
    }

    fn sample_finite_object(&self, _rng: &mut dyn RngCore) -> Option<SpanObject> {
        None
    }
}

fn transpose(f: &SpanMorphism) -> SpanMorphism {
    SpanMorphism { dom: f.cod, cod: f.dom, matrix: f.matrix.transpose() }
}
