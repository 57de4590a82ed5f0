//! Computable symmetric monoidal categories behind a common interface.
//!
//! Two concrete models are provided: [`SpanFin`], finite sets with spans
//! up to isomorphism (hom-sets are ℕ-matrices), and [`EvConst`], the
//! eventually-constant product of the categories of vector spaces over
//! the prime fields. [`Product`] combines two models componentwise.
//!
//! All models here are strict: `X ⊗ S = X` and tensoring is associative on
//! the nose, so diagrams can be evaluated without inserting unitors.

mod evconst;
mod hom;
mod product;
mod span;

pub use evconst::{EvConst, EvMorphism, EvObject};
pub use hom::HomInvariant;
pub use product::Product;
pub use span::{classify_span, SpanBlock, SpanFin, SpanMorphism, SpanObject};

use std::fmt::Debug;

use rand::RngCore;
use thiserror::Error;

use crate::exactlin::LinError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("cannot compose: codomain {cod} does not match domain {dom}")]
    DimensionMismatch { cod: String, dom: String },
    #[error("unsupported cofiber shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid morphism: {0}")]
    Invalid(String),
    #[error(transparent)]
    Lin(#[from] LinError),
}

/// Chosen biproduct diagram `x ⇄ x ⊕ y ⇆ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biproduct<O, M> {
    pub object: O,
    pub inj1: M,
    pub inj2: M,
    pub proj1: M,
    pub proj2: M,
}

/// Unit `S → x^∨ ⊗ x` and counit `x ⊗ x^∨ → S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityData<O, M> {
    pub object: O,
    pub dual: O,
    pub unit: M,
    pub counit: M,
}

/// A cofiber object with its quotient map out of the codomain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cofiber<O, M> {
    pub object: O,
    pub quotient: M,
    /// Which rules of the case analysis produced the answer.
    pub provenance: Vec<String>,
}

pub type BiproductOf<C> = Biproduct<<C as ModelCategory>::Obj, <C as ModelCategory>::Mor>;
pub type DualityOf<C> = DualityData<<C as ModelCategory>::Obj, <C as ModelCategory>::Mor>;
pub type CofiberOf<C> = Cofiber<<C as ModelCategory>::Obj, <C as ModelCategory>::Mor>;

/// Uniform surface over the computable symmetric monoidal models.
///
/// Objects and morphisms are kept in canonical form, so `==` decides
/// equality.
pub trait ModelCategory {
    type Obj: Clone + PartialEq + Eq + Debug;
    type Mor: Clone + PartialEq + Eq + Debug;

    fn name(&self) -> &'static str;

    fn unit(&self) -> Self::Obj;
    fn zero_object(&self) -> Self::Obj;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;

    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, ModelError>;

    fn tensor_obj(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn tensor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// `β_{x,y}: x ⊗ y → y ⊗ x`.
    fn braiding(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;
    /// `β_{x,y}⁻¹: y ⊗ x → x ⊗ y`. The models are symmetric, so this is `β_{y,x}`.
    fn braiding_inv(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor {
        self.braiding(y, x)
    }

    fn zero_mor(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;
    /// Sum in the hom-monoid.
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, ModelError>;
    /// Additive inverse, when the hom-monoid has one.
    fn negate(&self, f: &Self::Mor) -> Option<Self::Mor>;

    fn biproduct(&self, x: &Self::Obj, y: &Self::Obj) -> BiproductOf<Self>;

    fn dual(&self, x: &Self::Obj) -> Self::Obj;
    fn duality(&self, x: &Self::Obj) -> DualityOf<Self>;

    fn cofiber(&self, f: &Self::Mor) -> Result<CofiberOf<Self>, ModelError>;

    /// `Σx = cofiber(x → 0)`.
    fn suspension(&self, x: &Self::Obj) -> Result<Self::Obj, ModelError> {
        let z = self.zero_object();
        Ok(self.cofiber(&self.zero_mor(x, &z))?.object)
    }

    fn invert(&self, f: &Self::Mor) -> Option<Self::Mor>;

    /// Some `s` with `f ∘ s = id`, when one exists.
    fn section(&self, f: &Self::Mor) -> Option<Self::Mor>;

    fn hom_invariant(&self, x: &Self::Obj, y: &Self::Obj) -> HomInvariant;

    /// Every morphism `x → y`, when the hom-set is finite and has at most
    /// `limit` elements.
    fn enumerate_homs(&self, x: &Self::Obj, y: &Self::Obj, limit: usize) -> Option<Vec<Self::Mor>>;

    fn sample_hom(&self, x: &Self::Obj, y: &Self::Obj, rng: &mut dyn RngCore) -> Self::Mor;

    /// An object from the model's sampling grammar.
    fn sample_object(&self, rng: &mut dyn RngCore) -> Self::Obj;

    /// An object from the grammar whose hom-sets with other such objects
    /// are finite, if the model has any beyond zero.
    fn sample_finite_object(&self, rng: &mut dyn RngCore) -> Option<Self::Obj>;

    fn is_zero_object(&self, x: &Self::Obj) -> bool {
        *x == self.zero_object()
    }

    fn is_iso(&self, f: &Self::Mor) -> bool {
        self.invert(f).is_some()
    }

    fn tensor_all(&self, xs: &[Self::Obj]) -> Self::Obj {
        xs.iter().fold(self.unit(), |acc, x| self.tensor_obj(&acc, x))
    }

    /// Difference `f - g`, when negation exists.
    fn subtract(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Result<Self::Mor, ModelError>> {
        self.negate(g).map(|ng| self.add(f, &ng))
    }
}

/// Checks both triangle equations for a duality datum.
pub fn triangle_equations_hold<C: ModelCategory>(model: &C, d: &DualityOf<C>) -> Result<bool, ModelError> {
    let x = &d.object;
    let xv = &d.dual;
    let id_x = model.identity(x);
    let id_xv = model.identity(xv);
    // (ε ⊗ x)(x ⊗ η) = id_x
    let left = model.compose(&model.tensor(&d.counit, &id_x), &model.tensor(&id_x, &d.unit))?;
    // (x^∨ ⊗ ε)(η ⊗ x^∨) = id_{x^∨}
    let right = model.compose(&model.tensor(&id_xv, &d.counit), &model.tensor(&d.unit, &id_xv))?;
    Ok(left == id_x && right == id_xv)
}

/// The canonical comparison `x ⊔ y → x × y` is the identity of the
/// biproduct object when assembled from injections and projections.
pub fn biproduct_equations_hold<C: ModelCategory>(
    model: &C,
    b: &BiproductOf<C>,
    x: &C::Obj,
    y: &C::Obj,
) -> Result<bool, ModelError> {
    let p1i1 = model.compose(&b.proj1, &b.inj1)?;
    let p2i2 = model.compose(&b.proj2, &b.inj2)?;
    let p1i2 = model.compose(&b.proj1, &b.inj2)?;
    let p2i1 = model.compose(&b.proj2, &b.inj1)?;
    let sum = model.add(&model.compose(&b.inj1, &b.proj1)?, &model.compose(&b.inj2, &b.proj2)?)?;
    Ok(p1i1 == model.identity(x)
        && p2i2 == model.identity(y)
        && p1i2 == model.zero_mor(y, x)
        && p2i1 == model.zero_mor(x, y)
        && sum == model.identity(&b.object))
}
