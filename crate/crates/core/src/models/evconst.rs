//! The eventually-constant product of `Vect_{F_p}` over all primes.
//!
//! An object is a free rank `f` together with the finitely many primes
//! where the component dimension differs from `f`. A morphism is an
//! integer matrix between the free parts plus explicit `F_p`-matrices at
//! finitely many primes; at every other prime the component is the
//! reduction of the integer matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{seq::SliceRandom, Rng, RngCore};
use serde_json::{json, Map, Value};

use super::{Biproduct, Cofiber, DualityData, HomInvariant, ModelCategory, ModelError};
use crate::exactlin::{
    int_matrix_from_json, int_matrix_to_json, invert_int, is_prime, smith_normal_form, FpMatrix, IntMatrix, LinError,
    Matrix,
};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvObject {
    free: usize,
    exc: BTreeMap<u64, usize>,
}

impl EvObject {
    pub fn new(free: usize, exc: BTreeMap<u64, usize>) -> Self {
        let exc = exc.into_iter().filter(|&(_, d)| d != free).collect();
        Self { free, exc }
    }

    pub fn zero() -> Self {
        Self::new(0, BTreeMap::new())
    }

    pub fn sphere() -> Self {
        Self::new(1, BTreeMap::new())
    }

    /// `S/p`: one dimension at `p`, nothing elsewhere.
    pub fn mod_p(p: u64) -> Self {
        Self::new(0, BTreeMap::from([(p, 1)]))
    }

    /// `S(m)`: one dimension at every prime not dividing `m`.
    pub fn localized(m: u64) -> Self {
        Self::new(1, prime_divisors_u64(m).into_iter().map(|p| (p, 0)).collect())
    }

    /// `S/m`: one dimension at each prime dividing `m`.
    pub fn mod_m(m: u64) -> Self {
        Self::new(0, prime_divisors_u64(m).into_iter().map(|p| (p, 1)).collect())
    }

    pub fn free_rank(&self) -> usize {
        self.free
    }

    pub fn exceptional(&self) -> &BTreeMap<u64, usize> {
        &self.exc
    }

    pub fn dim_at(&self, p: u64) -> usize {
        self.exc.get(&p).copied().unwrap_or(self.free)
    }

    /// `None` is the free level.
    fn dim(&self, p: Option<u64>) -> usize {
        p.map_or(self.free, |p| self.dim_at(p))
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.exc.values().all(|&d| d == 0)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let primes: BTreeSet<u64> = self.exc.keys().chain(other.exc.keys()).copied().collect();
        Self::new(self.free + other.free, primes.into_iter().map(|p| (p, self.dim_at(p) + other.dim_at(p))).collect())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let primes: BTreeSet<u64> = self.exc.keys().chain(other.exc.keys()).copied().collect();
        Self::new(self.free * other.free, primes.into_iter().map(|p| (p, self.dim_at(p) * other.dim_at(p))).collect())
    }

    pub fn to_json(&self) -> Value {
        let exc: Map<String, Value> = self.exc.iter().map(|(p, d)| (p.to_string(), json!(d))).collect();
        json!({"f": self.free, "exc": exc})
    }

    pub fn from_json(v: &Value) -> Result<Self, ModelError> {
        let free = v
            .get("f")
            .and_then(Value::as_u64)
            .ok_or_else(|| ModelError::Invalid("object needs integer \"f\"".into()))? as usize;
        let mut exc = BTreeMap::new();
        if let Some(m) = v.get("exc") {
            let m = m.as_object().ok_or_else(|| ModelError::Invalid("\"exc\" must be an object".into()))?;
            for (k, d) in m {
                let p: u64 = k.parse().map_err(|_| ModelError::Invalid(format!("bad prime key {k:?}")))?;
                if !is_prime(p) {
                    return Err(LinError::NotPrime(p).into());
                }
                let d = d.as_u64().ok_or_else(|| ModelError::Invalid(format!("bad dimension at {p}")))?;
                exc.insert(p, d as usize);
            }
        }
        Ok(Self::new(free, exc))
    }
}

/// Sums of `0`, `S`, `S/m` and `S(m)`, each optionally prefixed by a
/// multiplicity: `"S/2 + 2*S(3)"`.
impl std::str::FromStr for EvObject {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, ModelError> {
        let bad = || ModelError::Invalid(format!("cannot read {s:?} as an object"));
        let number = |t: &str| t.trim().parse::<u64>().ok().filter(|&m| m >= 1).ok_or_else(bad);
        let mut acc = EvObject::zero();
        for term in s.split('+') {
            let term = term.trim();
            let (k, atom) = match term.split_once('*') {
                Some((k, a)) => (number(k)?, a.trim()),
                None => (1, term),
            };
            let x = if atom == "0" {
                EvObject::zero()
            } else if atom == "S" {
                EvObject::sphere()
            } else if let Some(m) = atom.strip_prefix("S/") {
                EvObject::mod_m(number(m)?)
            } else if let Some(m) = atom.strip_prefix("S(").and_then(|r| r.strip_suffix(')')) {
                EvObject::localized(number(m)?)
            } else {
                return Err(bad());
            };
            for _ in 0..k {
                acc = acc.direct_sum(&x);
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for EvObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(f={}, {:?})", self.free, self.exc)
    }
}

impl fmt::Display for EvObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvMorphism {
    dom: EvObject,
    cod: EvObject,
    free: IntMatrix,
    explicit: BTreeMap<u64, FpMatrix>,
}

impl EvMorphism {
    /// Builds and canonicalizes a morphism. Every prime exceptional in
    /// `dom` or `cod` needs an explicit component.
    pub fn new(
        dom: EvObject,
        cod: EvObject,
        free: IntMatrix,
        explicit: BTreeMap<u64, FpMatrix>,
    ) -> Result<Self, ModelError> {
        if free.shape() != (cod.free, dom.free) {
            return Err(ModelError::Invalid(format!(
                "free part is {:?}, expected {}x{}",
                free.shape(),
                cod.free,
                dom.free
            )));
        }
        for (&p, m) in &explicit {
            if m.p() != p {
                return Err(LinError::FieldMismatch(p, m.p()).into());
            }
            if m.shape() != (cod.dim_at(p), dom.dim_at(p)) {
                return Err(ModelError::Invalid(format!(
                    "component at {p} is {:?}, expected {}x{}",
                    m.shape(),
                    cod.dim_at(p),
                    dom.dim_at(p)
                )));
            }
        }
        if let Some(p) = dom.exc.keys().chain(cod.exc.keys()).find(|p| !explicit.contains_key(p)) {
            return Err(ModelError::Invalid(format!("missing component at exceptional prime {p}")));
        }
        let mut out = Self { dom, cod, free, explicit };
        out.canonicalize();
        Ok(out)
    }

    fn canonicalize(&mut self) {
        let free = &self.free;
        let (dom, cod) = (&self.dom, &self.cod);
        self.explicit
            .retain(|&p, m| dom.exc.contains_key(&p) || cod.exc.contains_key(&p) || *m.matrix() != free.reduce_mod(p));
    }

    /// A morphism given by the same integer matrix at every level;
    /// `make(None)` is the free part and `make(Some(p))` is reduced mod `p`.
    fn uniform(dom: &EvObject, cod: &EvObject, make: impl Fn(Option<u64>) -> IntMatrix) -> Self {
        let primes: BTreeSet<u64> = dom.exc.keys().chain(cod.exc.keys()).copied().collect();
        let explicit = primes
            .into_iter()
            .map(|p| (p, FpMatrix::new(p, make(Some(p)).reduce_mod(p)).expect("prime key")))
            .collect();
        Self::new(dom.clone(), cod.clone(), make(None), explicit).expect("uniform shapes")
    }

    pub fn scalar(x: &EvObject, k: i64) -> Self {
        Self::uniform(x, x, |p| Matrix::identity(x.dim(p)).scale(&BigInt::from(k)))
    }

    pub fn dom(&self) -> &EvObject {
        &self.dom
    }

    pub fn cod(&self) -> &EvObject {
        &self.cod
    }

    pub fn free_part(&self) -> &IntMatrix {
        &self.free
    }

    pub fn explicit(&self) -> &BTreeMap<u64, FpMatrix> {
        &self.explicit
    }

    /// Component at `p`, materialized from the free part when not explicit.
    pub fn component(&self, p: u64) -> FpMatrix {
        match self.explicit.get(&p) {
            Some(m) => m.clone(),
            None => FpMatrix::new(p, self.free.reduce_mod(p)).expect("component at a prime"),
        }
    }

    fn primes_with(&self, other: &Self) -> BTreeSet<u64> {
        self.explicit.keys().chain(other.explicit.keys()).copied().collect()
    }

    pub fn to_json(&self) -> Value {
        let explicit: Map<String, Value> = self
            .explicit
            .iter()
            .map(|(p, m)| {
                let rows = m.matrix().to_rows();
                (p.to_string(), json!(rows))
            })
            .collect();
        json!({
            "dom": self.dom.to_json(),
            "cod": self.cod.to_json(),
            "free": int_matrix_to_json(&self.free),
            "explicit": explicit,
        })
    }

    /// `dom` and `cod` may be omitted; they are then read off the matrix
    /// shapes, with the explicit primes as the only exceptional ones.
    pub fn from_json(v: &Value) -> Result<Self, ModelError> {
        let object = |k: &str| v.get(k).map(EvObject::from_json).transpose();
        let (dom, cod) = (object("dom")?, object("cod")?);
        let free = v.get("free").ok_or_else(|| ModelError::Invalid("morphism needs \"free\"".into()))?;
        let free = int_matrix_from_json(free, dom.as_ref().map(|d| d.free))?;
        let mut explicit = BTreeMap::new();
        if let Some(m) = v.get("explicit") {
            let m = m.as_object().ok_or_else(|| ModelError::Invalid("\"explicit\" must be an object".into()))?;
            for (k, rows) in m {
                let p: u64 = k.parse().map_err(|_| ModelError::Invalid(format!("bad prime key {k:?}")))?;
                let ints = int_matrix_from_json(rows, dom.as_ref().map(|d| d.dim_at(p)))?;
                explicit.insert(p, FpMatrix::new(p, ints.reduce_mod(p))?);
            }
        }
        let infer = |side: fn(&FpMatrix) -> usize, level: usize| {
            EvObject::new(level, explicit.iter().map(|(&p, m)| (p, side(m))).collect())
        };
        let dom = dom.unwrap_or_else(|| infer(FpMatrix::cols, free.cols()));
        let cod = cod.unwrap_or_else(|| infer(FpMatrix::rows, free.rows()));
        Self::new(dom, cod, free, explicit)
    }
}

fn prime_divisors_u64(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn prime_divisors(n: &BigInt) -> Result<Vec<u64>, ModelError> {
    let mut m: BigUint = n.magnitude().clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigUint::from(d) * BigUint::from(d) <= m {
        if (&m % d).is_zero() {
            out.push(d);
            while (&m % d).is_zero() {
                m /= d;
            }
        }
        d += 1;
    }
    if m > BigUint::one() {
        let p = m
            .to_u64()
            .filter(|&p| p <= u32::MAX as u64)
            .ok_or_else(|| ModelError::Invalid(format!("torsion prime {m} is too large")))?;
        out.push(p);
    }
    Ok(out)
}

/// The category of eventually-constant families of `F_p`-vector spaces.
#[derive(Clone, Copy, Debug, Default)]
pub struct EvConst;

const SAMPLE_PRIMES: [u64; 3] = [2, 3, 5];

fn random_fp(p: u64, rows: usize, cols: usize, rng: &mut dyn RngCore) -> FpMatrix {
    FpMatrix::new(p, Matrix::from_fn(rows, cols, |_, _| rng.gen_range(0..p))).expect("sample prime")
}

fn all_fp_matrices(p: u64, rows: usize, cols: usize) -> Vec<FpMatrix> {
    let n = rows * cols;
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut code| {
            let data = (0..n)
                .map(|_| {
                    let d = (code % p as usize) as u64;
                    code /= p as usize;
                    d
                })
                .collect();
            FpMatrix::new(p, Matrix::new(rows, cols, data).expect("shape")).expect("prime")
        })
        .collect()
}

impl ModelCategory for EvConst {
    type Obj = EvObject;
    type Mor = EvMorphism;

    fn name(&self) -> &'static str {
        "evconst"
    }

    fn unit(&self) -> EvObject {
        EvObject::sphere()
    }

    fn zero_object(&self) -> EvObject {
        EvObject::zero()
    }

    fn dom(&self, f: &EvMorphism) -> EvObject {
        f.dom.clone()
    }

    fn cod(&self, f: &EvMorphism) -> EvObject {
        f.cod.clone()
    }

    fn identity(&self, x: &EvObject) -> EvMorphism {
        EvMorphism::uniform(x, x, |p| Matrix::identity(x.dim(p)))
    }

    fn compose(&self, g: &EvMorphism, f: &EvMorphism) -> Result<EvMorphism, ModelError> {
        if f.cod != g.dom {
            return Err(ModelError::DimensionMismatch { cod: f.cod.to_string(), dom: g.dom.to_string() });
        }
        let free = g.free.mul(&f.free)?;
        let mut explicit = BTreeMap::new();
        for p in f.primes_with(g) {
            explicit.insert(p, g.component(p).mul(&f.component(p))?);
        }
        EvMorphism::new(f.dom.clone(), g.cod.clone(), free, explicit)
    }

    fn tensor_obj(&self, x: &EvObject, y: &EvObject) -> EvObject {
        x.tensor(y)
    }

    fn tensor(&self, f: &EvMorphism, g: &EvMorphism) -> EvMorphism {
        let explicit = f
            .primes_with(g)
            .into_iter()
            .map(|p| (p, f.component(p).kronecker(&g.component(p)).expect("same prime")))
            .collect();
        EvMorphism::new(f.dom.tensor(&g.dom), f.cod.tensor(&g.cod), f.free.kronecker(&g.free), explicit)
            .expect("tensor shapes")
    }

    fn braiding(&self, x: &EvObject, y: &EvObject) -> EvMorphism {
        EvMorphism::uniform(&x.tensor(y), &y.tensor(x), |p| Matrix::commutation(x.dim(p), y.dim(p)))
    }

    fn zero_mor(&self, x: &EvObject, y: &EvObject) -> EvMorphism {
        EvMorphism::uniform(x, y, |p| Matrix::zeros(y.dim(p), x.dim(p)))
    }

    fn add(&self, f: &EvMorphism, g: &EvMorphism) -> Result<EvMorphism, ModelError> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(ModelError::DimensionMismatch {
                cod: format!("{}→{}", f.dom, f.cod),
                dom: format!("{}→{}", g.dom, g.cod),
            });
        }
        let mut explicit = BTreeMap::new();
        for p in f.primes_with(g) {
            explicit.insert(p, f.component(p).add(&g.component(p))?);
        }
        EvMorphism::new(f.dom.clone(), f.cod.clone(), f.free.add(&g.free)?, explicit)
    }

    fn negate(&self, f: &EvMorphism) -> Option<EvMorphism> {
        let explicit = f.explicit.iter().map(|(&p, m)| (p, m.neg())).collect();
        Some(EvMorphism::new(f.dom.clone(), f.cod.clone(), f.free.neg(), explicit).expect("same shapes"))
    }

    fn biproduct(&self, x: &EvObject, y: &EvObject) -> Biproduct<EvObject, EvMorphism> {
        let s = x.direct_sum(y);
        let inj = |first: bool| {
            move |p: Option<u64>| {
                let (a, b) = (x.dim(p), y.dim(p));
                if first {
                    Matrix::identity(a).vstack(&Matrix::zeros(b, a)).expect("widths")
                } else {
                    Matrix::zeros(a, b).vstack(&Matrix::identity(b)).expect("widths")
                }
            }
        };
        let inj1 = EvMorphism::uniform(x, &s, inj(true));
        let inj2 = EvMorphism::uniform(y, &s, inj(false));
        let proj1 = EvMorphism::uniform(&s, x, |p| inj(true)(p).transpose());
        let proj2 = EvMorphism::uniform(&s, y, |p| inj(false)(p).transpose());
        Biproduct { object: s, inj1, inj2, proj1, proj2 }
    }

    fn dual(&self, x: &EvObject) -> EvObject {
        x.clone()
    }

    fn duality(&self, x: &EvObject) -> DualityData<EvObject, EvMorphism> {
        let xx = x.tensor(x);
        let s = EvObject::sphere();
        let vec_id = |p: Option<u64>| {
            let n = x.dim(p);
            let mut m = Matrix::zeros(n * n, 1);
            for i in 0..n {
                m.set(i * n + i, 0, BigInt::one());
            }
            m
        };
        DualityData {
            object: x.clone(),
            dual: x.clone(),
            unit: EvMorphism::uniform(&s, &xx, vec_id),
            counit: EvMorphism::uniform(&xx, &s, |p| vec_id(p).transpose()),
        }
    }

    fn cofiber(&self, phi: &EvMorphism) -> Result<Cofiber<EvObject, EvMorphism>, ModelError> {
        let m = phi.cod.free;
        let smith = smith_normal_form(&phi.free);
        let rank = smith.rank();
        let mut relevant: BTreeSet<u64> = phi.explicit.keys().copied().collect();
        for d in smith.diagonal() {
            if d.abs() > BigInt::one() {
                relevant.extend(prime_divisors(&d)?);
            }
        }

        // rows of U past the rank span the functionals killing the image
        let rows: Vec<usize> = (rank..m).collect();
        let mut q_free = smith.u.select_rows(&rows);
        for i in 0..q_free.rows() {
            let lead_negative = q_free.row(i).iter().find(|x| !x.is_zero()).is_some_and(|x| x.sign() == Sign::Minus);
            if lead_negative {
                for j in 0..q_free.cols() {
                    let v = -q_free.get(i, j).clone();
                    q_free.set(i, j, v);
                }
            }
        }

        let mut exc = BTreeMap::new();
        let mut explicit = BTreeMap::new();
        let mut provenance = vec!["free part from the integer cokernel".to_string()];
        for &p in &relevant {
            let comp = phi.component(p);
            let d = phi.cod.dim_at(p) - comp.rank();
            exc.insert(p, d);
            let candidate = (phi.cod.dim_at(p) == m)
                .then(|| FpMatrix::new(p, q_free.reduce_mod(p)).expect("prime"))
                .filter(|c| c.rows() == d && c.rank() == d && c.mul(&comp).map(|z| z.is_zero()).unwrap_or(false));
            let proj = match candidate {
                Some(c) => c,
                None => {
                    provenance.push(format!("explicit cokernel at {p}"));
                    comp.cokernel_projection()
                }
            };
            explicit.insert(p, proj);
        }
        let object = EvObject::new(m - rank, exc);
        let quotient = EvMorphism::new(phi.cod.clone(), object.clone(), q_free, explicit)?;
        Ok(Cofiber { object, quotient, provenance })
    }

    fn invert(&self, f: &EvMorphism) -> Option<EvMorphism> {
        if f.dom != f.cod {
            return None;
        }
        let free = invert_int(&f.free).ok()?;
        let mut explicit = BTreeMap::new();
        for (&p, m) in &f.explicit {
            explicit.insert(p, m.inverse().ok()?);
        }
        EvMorphism::new(f.cod.clone(), f.dom.clone(), free, explicit).ok()
    }

    fn section(&self, f: &EvMorphism) -> Option<EvMorphism> {
        let smith = smith_normal_form(&f.free);
        let k = f.free.rows();
        let diag = smith.diagonal();
        if diag.len() != k || diag.iter().any(|d| !d.is_one()) {
            return None;
        }
        // U A V = [I 0], so A (V [I 0]ᵀ U) = I
        let dt = Matrix::from_fn(f.free.cols(), k, |i, j| if i == j { BigInt::one() } else { BigInt::zero() });
        let free = smith.v.mul(&dt).ok()?.mul(&smith.u).ok()?;
        let mut explicit = BTreeMap::new();
        for (&p, m) in &f.explicit {
            explicit.insert(p, m.right_inverse().ok()?);
        }
        let s = EvMorphism::new(f.cod.clone(), f.dom.clone(), free, explicit).ok()?;
        (self.compose(f, &s).ok()? == self.identity(&f.cod)).then_some(s)
    }

    fn hom_invariant(&self, x: &EvObject, y: &EvObject) -> HomInvariant {
        let r = (x.free * y.free) as u64;
        let primes: BTreeSet<u64> = x.exc.keys().chain(y.exc.keys()).copied().collect();
        let fp_dims = primes.into_iter().map(|p| (p, (x.dim_at(p) * y.dim_at(p)) as u64)).collect();
        HomInvariant::new(r, 0, r, fp_dims)
    }

    fn enumerate_homs(&self, x: &EvObject, y: &EvObject, limit: usize) -> Option<Vec<EvMorphism>> {
        let inv = self.hom_invariant(x, y);
        let count = inv.count()?;
        if count > BigUint::from(limit) {
            return None;
        }
        let primes: Vec<u64> = x.exc.keys().chain(y.exc.keys()).copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut combos: Vec<BTreeMap<u64, FpMatrix>> = vec![BTreeMap::new()];
        for &p in &primes {
            let options = all_fp_matrices(p, y.dim_at(p), x.dim_at(p));
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    options.iter().map(move |m| {
                        let mut c = c.clone();
                        c.insert(p, m.clone());
                        c
                    })
                })
                .collect();
        }
        let free = Matrix::zeros(y.free, x.free);
        Some(
            combos
                .into_iter()
                .map(|e| EvMorphism::new(x.clone(), y.clone(), free.clone(), e).expect("enumerated shapes"))
                .collect(),
        )
    }

    fn sample_hom(&self, x: &EvObject, y: &EvObject, rng: &mut dyn RngCore) -> EvMorphism {
        let free = Matrix::from_fn(y.free, x.free, |_, _| BigInt::from(rng.gen_range(-5i64..=5)));
        let mut explicit = BTreeMap::new();
        for &p in x.exc.keys().chain(y.exc.keys()) {
            explicit.insert(p, random_fp(p, y.dim_at(p), x.dim_at(p), rng));
        }
        if rng.gen_bool(0.3) {
            let p = *SAMPLE_PRIMES.choose(rng).expect("nonempty");
            explicit.entry(p).or_insert_with(|| random_fp(p, y.dim_at(p), x.dim_at(p), rng));
        }
        EvMorphism::new(x.clone(), y.clone(), free, explicit).expect("sampled shapes")
    }

    fn sample_object(&self, rng: &mut dyn RngCore) -> EvObject {
        let n = rng.gen_range(0..=3);
        (0..n).fold(EvObject::zero(), |acc, _| {
            let p = *SAMPLE_PRIMES.choose(rng).expect("nonempty");
            let summand = match rng.gen_range(0..3) {
                0 => EvObject::sphere(),
                1 => EvObject::mod_p(p),
                _ => EvObject::localized(p),
            };
            acc.direct_sum(&summand)
        })
    }

    fn sample_finite_object(&self, rng: &mut dyn RngCore) -> Option<EvObject> {
        let n = rng.gen_range(1..=2);
        Some((0..n).fold(EvObject::zero(), |acc, _| {
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            acc.direct_sum(&EvObject::mod_p(p))
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{biproduct_equations_hold, triangle_equations_hold};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64, rows: Vec<Vec<u64>>, cols: usize) -> FpMatrix {
        FpMatrix::from_rows(p, rows, cols).unwrap()
    }

    fn s() -> EvObject {
        EvObject::sphere()
    }

    fn reduction(p: u64) -> EvMorphism {
        let sp = EvObject::mod_p(p);
        EvMorphism::new(s(), sp, Matrix::zeros(0, 1), BTreeMap::from([(p, fp(p, vec![vec![1]], 1))])).unwrap()
    }

    fn inclusion(p: u64) -> EvMorphism {
        let sp = EvObject::mod_p(p);
        EvMorphism::new(sp, s(), Matrix::zeros(1, 0), BTreeMap::from([(p, fp(p, vec![vec![1]], 1))])).unwrap()
    }

    #[test]
    fn object_names_parse() {
        let p = |s: &str| s.parse::<EvObject>().unwrap();
        assert_eq!(p("S/2"), EvObject::mod_p(2));
        assert_eq!(p("S/6"), EvObject::mod_p(2).direct_sum(&EvObject::mod_p(3)));
        assert_eq!(p("S/2 + S(2)"), EvObject::sphere());
        assert_eq!(p("2*S"), EvObject::new(2, BTreeMap::new()));
        assert_eq!(p("0"), EvObject::zero());
        assert!("T".parse::<EvObject>().is_err());
        assert!("S/0".parse::<EvObject>().is_err());
    }
    #[test]
    fn integers_compose_by_multiplication() {
        let two = EvMorphism::scalar(&s(), 2);
        let three = EvMorphism::scalar(&s(), 3);
        assert_eq!(EvConst.compose(&two, &three).unwrap(), EvMorphism::scalar(&s(), 6));
    }

    #[test]
    fn reduction_then_inclusion() {
        let ir = EvConst.compose(&inclusion(2), &reduction(2)).unwrap();
        assert_eq!(*ir.free_part(), IntMatrix::from_i64(1, 1, &[0]).unwrap());
        assert_eq!(ir.explicit().get(&2), Some(&fp(2, vec![vec![1]], 1)));
        assert_eq!(ir.explicit().len(), 1);
    }

    #[test]
    fn identity_is_neutral() {
        let x = EvObject::new(1, BTreeMap::from([(2, 2)]));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = EvConst.sample_hom(&x, &x, &mut rng);
        assert_eq!(EvConst.compose(&f, &EvConst.identity(&x)).unwrap(), f);
        assert_eq!(EvConst.compose(&EvConst.identity(&x), &f).unwrap(), f);
    }

    #[test]
    fn biproduct_examples() {
        let sum = EvObject::mod_p(2).direct_sum(&EvObject::localized(2));
        assert_eq!(sum, s());
        let x = EvObject::localized(6);
        assert_eq!(x.direct_sum(&EvObject::zero()), x);
        let y = EvObject::localized(2).direct_sum(&EvObject::localized(3));
        assert_eq!(y, EvObject::new(2, BTreeMap::from([(2, 1), (3, 1)])));
        let b = EvConst.biproduct(&EvObject::localized(2), &EvObject::mod_p(3));
        assert!(biproduct_equations_hold(&EvConst, &b, &EvObject::localized(2), &EvObject::mod_p(3)).unwrap());
    }

    #[test]
    fn cofiber_examples() {
        let six = EvConst.cofiber(&EvMorphism::scalar(&s(), 6)).unwrap();
        assert_eq!(six.object, EvObject::new(0, BTreeMap::from([(2, 1), (3, 1)])));
        let x = EvObject::new(1, BTreeMap::from([(2, 2), (5, 0)]));
        assert!(EvConst.cofiber(&EvConst.identity(&x)).unwrap().object.is_zero());
        let s2 = s().direct_sum(&s());
        let phi = EvMorphism::uniform(&s2, &s2, |_| IntMatrix::from_i64(2, 2, &[2, 0, 0, 0]).unwrap());
        let c = EvConst.cofiber(&phi).unwrap();
        assert_eq!(c.object, EvObject::new(1, BTreeMap::from([(2, 2)])));
        assert!(EvConst.compose(&c.quotient, &phi).unwrap() == EvConst.zero_mor(&s2, &c.object));
    }

    #[test]
    fn suspension_vanishes() {
        let x = EvObject::mod_p(2).direct_sum(&s());
        assert!(EvConst.suspension(&x).unwrap().is_zero());
        assert!(EvConst.suspension(&EvObject::zero()).unwrap().is_zero());
    }

    #[test]
    fn duality_examples() {
        let d = EvConst.duality(&s());
        assert_eq!(d.unit, EvConst.identity(&s()));
        assert_eq!(d.counit, EvConst.identity(&s()));
        let d2 = EvConst.duality(&EvObject::mod_p(2));
        assert_eq!(d2.unit.explicit().get(&2), Some(&fp(2, vec![vec![1]], 1)));
        let two = EvObject::mod_p(2).direct_sum(&EvObject::mod_p(2));
        let d4 = EvConst.duality(&two);
        assert_eq!(d4.unit.explicit().get(&2), Some(&fp(2, vec![vec![1], vec![0], vec![0], vec![1]], 1)));
        let x = EvObject::new(1, BTreeMap::from([(2, 2)]));
        assert!(triangle_equations_hold(&EvConst, &EvConst.duality(&x)).unwrap());
        assert!(triangle_equations_hold(&EvConst, &EvConst.duality(&EvObject::zero())).unwrap());
    }

    #[test]
    fn duality_closed_under_sums() {
        // assemble the datum for x ⊕ y from the summands' data
        let (x, y) = (EvObject::mod_p(3), EvObject::localized(2));
        let b = EvConst.biproduct(&x, &y);
        let (dx, dy) = (EvConst.duality(&x), EvConst.duality(&y));
        let sum = &b.object;
        let unit = EvConst
            .add(
                &EvConst.compose(&EvConst.tensor(&b.inj1, &b.inj1), &dx.unit).unwrap(),
                &EvConst.compose(&EvConst.tensor(&b.inj2, &b.inj2), &dy.unit).unwrap(),
            )
            .unwrap();
        let counit = EvConst
            .add(
                &EvConst.compose(&dx.counit, &EvConst.tensor(&b.proj1, &b.proj1)).unwrap(),
                &EvConst.compose(&dy.counit, &EvConst.tensor(&b.proj2, &b.proj2)).unwrap(),
            )
            .unwrap();
        let d = DualityData { object: sum.clone(), dual: sum.clone(), unit, counit };
        assert!(triangle_equations_hold(&EvConst, &d).unwrap());
    }

    #[test]
    fn hom_set_sizes() {
        let s2 = EvObject::mod_p(2);
        let s3 = EvObject::mod_p(3);
        assert_eq!(EvConst.enumerate_homs(&s2, &s2, 100).unwrap().len(), 2);
        assert_eq!(EvConst.enumerate_homs(&s3, &s3, 100).unwrap().len(), 3);
        assert_eq!(EvConst.enumerate_homs(&s2, &s3, 100).unwrap().len(), 1);
        assert_eq!(EvConst.enumerate_homs(&s2, &EvObject::localized(6), 100).unwrap().len(), 1);
        assert_eq!(EvConst.enumerate_homs(&s2, &EvObject::localized(3), 100).unwrap().len(), 2);
        assert!(EvConst.enumerate_homs(&s(), &s(), 100).is_none());
    }

    #[test]
    fn invertibility_needs_unimodular_free_part() {
        assert!(EvConst.invert(&EvMorphism::scalar(&s(), -1)).is_some());
        assert!(EvConst.invert(&EvMorphism::scalar(&s(), 2)).is_none());
        let three_on_s2 = EvMorphism::scalar(&EvObject::mod_p(2), 3);
        assert_eq!(EvConst.invert(&three_on_s2).unwrap(), EvConst.identity(&EvObject::mod_p(2)));
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..30 {
            let (x, y) = (EvConst.sample_object(&mut rng), EvConst.sample_object(&mut rng));
            let f = EvConst.sample_hom(&x, &y, &mut rng);
            assert_eq!(EvMorphism::from_json(&f.to_json()).unwrap(), f);
            assert_eq!(EvObject::from_json(&x.to_json()).unwrap(), x);
        }
    }
}
