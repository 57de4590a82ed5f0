//! Closed, open and clopen idempotents over any [`ModelCategory`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::models::{DualityOf, EvConst, EvMorphism, EvObject, HomInvariant, ModelCategory, ModelError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdemError {
    #[error("braiding on T ∧ T is not id_T ∧ t")]
    NotTwistedTrivial,
    #[error("duality datum fails the triangle equations")]
    BadDuality,
    #[error("{0} is not a morphism out of the unit")]
    NotFromUnit(String),
    #[error("quotient map has no section")]
    NoSection,
    #[error("constructed data fails the {0} check")]
    CheckFailed(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedIdempotent<O, M> {
    pub object: O,
    pub r: M,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenIdempotent<O, M> {
    pub object: O,
    pub r: M,
    pub i: M,
}

pub type ClosedOf<C> = ClosedIdempotent<<C as ModelCategory>::Obj, <C as ModelCategory>::Mor>;
pub type ClopenOf<C> = ClopenIdempotent<<C as ModelCategory>::Obj, <C as ModelCategory>::Mor>;

fn check_from_unit<C: ModelCategory>(model: &C, e: &C::Obj, r: &C::Mor) -> Result<(), IdemError> {
    if model.dom(r) != model.unit() || model.cod(r) != *e {
        return Err(IdemError::NotFromUnit(format!("{r:?}")));
    }
    Ok(())
}

/// `r ∧ id_E` is invertible.
pub fn is_closed_idempotent<C: ModelCategory>(model: &C, e: &C::Obj, r: &C::Mor) -> Result<bool, IdemError> {
    check_from_unit(model, e, r)?;
    Ok(model.is_iso(&model.tensor(r, &model.identity(e))))
}

/// `i ∧ id_E` is invertible.
pub fn is_open_idempotent<C: ModelCategory>(model: &C, e: &C::Obj, i: &C::Mor) -> Result<bool, IdemError> {
    if model.cod(i) != model.unit() || model.dom(i) != *e {
        return Err(IdemError::NotFromUnit(format!("{i:?}")));
    }
    Ok(model.is_iso(&model.tensor(i, &model.identity(e))))
}

/// Splitting `r i = id_E` and stability `(i r) ∧ id_E = id_E`.
pub fn is_clopen<C: ModelCategory>(model: &C, e: &C::Obj, r: &C::Mor, i: &C::Mor) -> Result<bool, IdemError> {
    check_from_unit(model, e, r)?;
    if model.cod(i) != model.unit() || model.dom(i) != *e {
        return Ok(false);
    }
    let id_e = model.identity(e);
    let splitting = model.compose(r, i)? == id_e;
    let stability = model.tensor(&model.compose(i, r)?, &id_e) == id_e;
    Ok(splitting && stability)
}

pub fn has_trivial_braiding<C: ModelCategory>(model: &C, e: &C::Obj) -> bool {
    let ee = model.tensor_obj(e, e);
    model.braiding(e, e) == model.identity(&ee)
}

pub fn has_twisted_trivial_braiding<C: ModelCategory>(model: &C, t_obj: &C::Obj, t: &C::Mor) -> bool {
    model.braiding(t_obj, t_obj) == model.tensor(&model.identity(t_obj), t)
}

/// `id_T ∧ (ε β⁻¹_{T,T^∨} η)`.
pub fn euler_twist<C: ModelCategory>(model: &C, dd: &DualityOf<C>) -> Result<C::Mor, IdemError> {
    let loop_ = model.compose(&dd.counit, &model.compose(&model.braiding_inv(&dd.object, &dd.dual), &dd.unit)?)?;
    Ok(model.tensor(&model.identity(&dd.object), &loop_))
}

/// Clopen structure on `T^∨ ∧ T` from a twist satisfying `β_{T,T} = id_T ∧ t`.
pub fn untwist<C: ModelCategory>(model: &C, dd: &DualityOf<C>, t: &C::Mor) -> Result<ClopenOf<C>, IdemError> {
    if !crate::models::triangle_equations_hold(model, dd)? {
        return Err(IdemError::BadDuality);
    }
    if !has_twisted_trivial_braiding(model, &dd.object, t) {
        return Err(IdemError::NotTwistedTrivial);
    }
    let object = model.tensor_obj(&dd.dual, &dd.object);
    let r = model.compose(&model.tensor(&model.identity(&dd.dual), t), &dd.unit)?;
    let i = model.compose(&dd.counit, &model.braiding(&dd.dual, &dd.object))?;
    Ok(ClopenIdempotent { object, r, i })
}

/// `i (id_E ∧ r)⁻¹ (id_E ∧ i)⁻¹`, the open leg compatible with the closed
/// structure `r`.
pub fn derived_open_leg<C: ModelCategory>(model: &C, e: &C::Obj, r: &C::Mor, i: &C::Mor) -> Result<C::Mor, IdemError> {
    let id_e = model.identity(e);
    let er = model.invert(&model.tensor(&id_e, r)).ok_or(IdemError::CheckFailed("closed"))?;
    let ei = model.invert(&model.tensor(&id_e, i)).ok_or(IdemError::CheckFailed("open"))?;
    Ok(model.compose(i, &model.compose(&er, &ei)?)?)
}

/// The complement `S/E` of a retract of the unit, with its own clopen data.
pub fn complement_of_retract<C: ModelCategory>(
    model: &C,
    _e: &C::Obj,
    r: &C::Mor,
    i: &C::Mor,
) -> Result<ClopenOf<C>, IdemError> {
    let cof = model.cofiber(i)?;
    let q = cof.quotient;
    let s = model.section(&q).ok_or(IdemError::NoSection)?;
    let irs = model.compose(i, &model.compose(r, &s)?)?;
    let unit = model.unit();
    // j = (1 - i r) s
    let j = if irs == model.zero_mor(&cof.object, &unit) {
        s
    } else {
        model.subtract(&s, &irs).ok_or(IdemError::CheckFailed("complement"))??
    };
    Ok(ClopenIdempotent { object: cof.object, r: q, i: j })
}

/// Chosen sampled pair of the hom-splitting check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    pub x: String,
    pub y: String,
    pub method: &'static str,
    pub hom: HomInvariant,
    pub split: HomInvariant,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub check: String,
    pub verdict: bool,
    pub witnesses: Vec<SplitWitness>,
}

/// Hom-sets with at most this many elements are compared element by element.
pub const ENUMERATION_LIMIT: usize = 4096;

/// Compares `C(X,Y)` with `C(EX,EY) × C(CX,CY)` on each pair, either by
/// enumerating the comparison map or, for infinite hom-sets, by invariants.
pub fn split_homs_check<C: ModelCategory>(
    model: &C,
    e: &C::Obj,
    complement: &C::Obj,
    pairs: &[(C::Obj, C::Obj)],
) -> Result<SplitReport, IdemError> {
    let id_e = model.identity(e);
    let id_c = model.identity(complement);
    let mut witnesses = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        let (ex, ey) = (model.tensor_obj(e, x), model.tensor_obj(e, y));
        let (cx, cy) = (model.tensor_obj(complement, x), model.tensor_obj(complement, y));
        let hom = model.hom_invariant(x, y);
        let split = model.hom_invariant(&ex, &ey).product(&model.hom_invariant(&cx, &cy));
        let enumerated = model.enumerate_homs(x, y, ENUMERATION_LIMIT);
        let (method, bijective) = match (enumerated, split.count()) {
            (Some(homs), Some(target)) => {
                let mut images: Vec<(C::Mor, C::Mor)> = Vec::with_capacity(homs.len());
                for f in &homs {
                    let img = (model.tensor(&id_e, f), model.tensor(&id_c, f));
                    if !images.contains(&img) {
                        images.push(img);
                    }
                }
                let injective = images.len() == homs.len();
                ("enumeration", injective && target == homs.len().into())
            }
            _ => ("invariants", hom == split),
        };
        witnesses.push(SplitWitness { x: format!("{x:?}"), y: format!("{y:?}"), method, hom, split, bijective });
    }
    Ok(SplitReport { check: "split-homs".into(), verdict: witnesses.iter().all(|w| w.bijective), witnesses })
}

/// Deterministic sample of object pairs, finite-hom ones when available.
pub fn sample_pairs<C: ModelCategory>(model: &C, seed: u64, n: usize, finite: bool) -> Vec<(C::Obj, C::Obj)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let draw = |rng: &mut ChaCha8Rng| {
                if finite {
                    model.sample_finite_object(rng).unwrap_or_else(|| model.sample_object(rng))
                } else {
                    model.sample_object(rng)
                }
            };
            let x = draw(&mut rng);
            let y = draw(&mut rng);
            (x, y)
        })
        .collect()
}

/// `S_gp` as the cofiber of the diagonal of `S`, with
/// `r: S → S ⊕ S → S_gp` through the first summand.
pub fn gp_idempotent<C: ModelCategory>(model: &C) -> Result<ClosedOf<C>, IdemError> {
    let s = model.unit();
    let b = model.biproduct(&s, &s);
    let diagonal = model.add(&b.inj1, &b.inj2)?;
    let cof = model.cofiber(&diagonal)?;
    let r = model.compose(&cof.quotient, &b.inj1)?;
    Ok(ClosedIdempotent { object: cof.object, r })
}

/// Which factors of a model survive: the suspension of the unit, the
/// grouplike idempotent and its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport<O> {
    pub suspension_of_unit: O,
    pub gp: O,
    pub gp_closed: bool,
    pub anti_gp: Option<O>,
}

pub fn classify_factors<C: ModelCategory>(model: &C) -> Result<FactorReport<C::Obj>, IdemError> {
    let suspension_of_unit = model.suspension(&model.unit())?;
    let gp = gp_idempotent(model)?;
    let gp_closed = is_closed_idempotent(model, &gp.object, &gp.r)?;
    // an inclusion of S_gp is a section of r, when r splits
    let anti_gp = match model.section(&gp.r) {
        Some(i) if is_clopen(model, &gp.object, &gp.r, &i)? => {
            Some(complement_of_retract(model, &gp.object, &gp.r, &i)?.object)
        }
        _ => None,
    };
    Ok(FactorReport { suspension_of_unit, gp: gp.object, gp_closed, anti_gp })
}

/// `r ∧ id_{E∧X}` is invertible, so `E ∧ E ∧ X ≅ E ∧ X`.
pub fn localization_is_idempotent<C: ModelCategory>(model: &C, e: &C::Obj, r: &C::Mor, x: &C::Obj) -> bool {
    let ex = model.tensor_obj(e, x);
    model.is_iso(&model.tensor(r, &model.identity(&ex)))
}

/// Decomposition of `X` into its `S/m` and `S(m)` parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSplit {
    pub torsion_idempotent: ClopenIdempotent<EvObject, EvMorphism>,
    pub complement: ClopenIdempotent<EvObject, EvMorphism>,
    pub torsion_part: EvObject,
    pub free_part: EvObject,
    /// `X → (S/m ∧ X) ⊕ (S(m) ∧ X)` assembled from the two quotient maps.
    pub reassembly: EvMorphism,
    pub reassembly_invertible: bool,
}

pub fn char_split(m: u64, x: &EvObject) -> Result<CharSplit, IdemError> {
    let model = EvConst;
    let s = model.unit();
    let times_m = EvMorphism::scalar(&s, m as i64);
    let cof = model.cofiber(&times_m)?;
    let r = cof.quotient;
    let i = model.section(&r).ok_or(IdemError::NoSection)?;
    if !is_clopen(&model, &cof.object, &r, &i)? {
        return Err(IdemError::CheckFailed("clopen"));
    }
    let torsion_idempotent = ClopenIdempotent { object: cof.object.clone(), r: r.clone(), i: i.clone() };
    let complement = complement_of_retract(&model, &cof.object, &r, &i)?;
    let torsion_part = model.tensor_obj(&cof.object, x);
    let free_part = model.tensor_obj(&complement.object, x);
    let b = model.biproduct(&torsion_part, &free_part);
    let id_x = model.identity(x);
    let reassembly = model.add(
        &model.compose(&b.inj1, &model.tensor(&r, &id_x))?,
        &model.compose(&b.inj2, &model.tensor(&complement.r, &id_x))?,
    )?;
    let reassembly_invertible = model.is_iso(&reassembly);
    Ok(CharSplit { torsion_idempotent, complement, torsion_part, free_part, reassembly, reassembly_invertible })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exactlin::{FpMatrix, Matrix};
    use crate::models::{Product, SpanFin, SpanMorphism, SpanObject};

    fn s() -> EvObject {
        EvObject::sphere()
    }

    fn reduction(p: u64) -> EvMorphism {
        EvMorphism::new(s(), EvObject::mod_p(p), Matrix::zeros(0, 1), BTreeMap::from([(p, FpMatrix::identity(p, 1))]))
            .unwrap()
    }

    fn inclusion(p: u64) -> EvMorphism {
        EvMorphism::new(EvObject::mod_p(p), s(), Matrix::zeros(1, 0), BTreeMap::from([(p, FpMatrix::identity(p, 1))]))
            .unwrap()
    }

    #[test]
    fn closed_examples() {
        assert!(is_closed_idempotent(&EvConst, &EvObject::mod_p(2), &reduction(2)).unwrap());
        assert!(!is_closed_idempotent(&EvConst, &s(), &EvMorphism::scalar(&s(), 2)).unwrap());
        let gp = gp_idempotent(&EvConst).unwrap();
        assert!(is_closed_idempotent(&EvConst, &gp.object, &gp.r).unwrap());
    }

    #[test]
    fn clopen_examples() {
        assert!(is_clopen(&EvConst, &EvObject::mod_p(2), &reduction(2), &inclusion(2)).unwrap());
        assert!(!is_clopen(&EvConst, &s(), &EvConst.identity(&s()), &EvConst.zero_mor(&s(), &s())).unwrap());
        let one = SpanObject(1);
        assert!(is_clopen(&SpanFin, &one, &SpanFin.identity(&one), &SpanFin.identity(&one)).unwrap());
    }

    #[test]
    fn euler_twists() {
        let t = euler_twist(&EvConst, &EvConst.duality(&s())).unwrap();
        assert_eq!(t, EvConst.identity(&s()));
        for n in 0..=4 {
            let t = euler_twist(&SpanFin, &SpanFin.duality(&SpanObject(n))).unwrap();
            let expected =
                SpanMorphism::new(n, n, crate::exactlin::NatMatrix::identity(n).scale(&(n as u32).into())).unwrap();
            assert_eq!(t, expected, "n = {n}");
        }
        let t = euler_twist(&EvConst, &EvConst.duality(&EvObject::mod_p(2))).unwrap();
        assert_eq!(t, EvConst.identity(&EvObject::mod_p(2)));
    }

    #[test]
    fn untwist_examples() {
        let c = untwist(&EvConst, &EvConst.duality(&s()), &EvConst.identity(&s())).unwrap();
        assert_eq!(c.object, s());
        assert_eq!(c.r, EvConst.identity(&s()));
        assert_eq!(c.i, EvConst.identity(&s()));

        // a two-dimensional component makes the braiding a genuine swap
        let t = EvObject::mod_p(3).direct_sum(&s());
        let err = untwist(&EvConst, &EvConst.duality(&t), &EvConst.identity(&t));
        assert_eq!(err, Err(IdemError::NotTwistedTrivial));

        for t in [EvObject::mod_p(3), EvObject::localized(6), EvObject::mod_p(3).direct_sum(&EvObject::localized(3))] {
            let c = untwist(&EvConst, &EvConst.duality(&t), &EvConst.identity(&t)).unwrap();
            assert!(is_clopen(&EvConst, &c.object, &c.r, &c.i).unwrap(), "{t:?}");
        }

        let two = SpanObject(2);
        let t = SpanMorphism::new(2, 2, crate::exactlin::NatMatrix::identity(2).scale(&2u32.into())).unwrap();
        assert_eq!(untwist(&SpanFin, &SpanFin.duality(&two), &t), Err(IdemError::NotTwistedTrivial));
    }

    #[test]
    fn complements() {
        let c = complement_of_retract(&EvConst, &EvObject::mod_p(2), &reduction(2), &inclusion(2)).unwrap();
        assert_eq!(c.object, EvObject::localized(2));
        assert!(is_clopen(&EvConst, &c.object, &c.r, &c.i).unwrap());
        assert!(EvConst.tensor_obj(&EvObject::mod_p(2), &c.object).is_zero());

        let id = EvConst.identity(&s());
        assert!(complement_of_retract(&EvConst, &s(), &id, &id).unwrap().object.is_zero());

        let e = EvObject::mod_p(2).direct_sum(&EvObject::mod_p(3));
        let r = EvConst.cofiber(&EvMorphism::scalar(&s(), 6)).unwrap().quotient;
        let i = EvConst.section(&r).unwrap();
        assert!(is_clopen(&EvConst, &e, &r, &i).unwrap());
        let c = complement_of_retract(&EvConst, &e, &r, &i).unwrap();
        assert_eq!(c.object, EvObject::localized(6));
    }

    #[test]
    fn hom_splitting() {
        let e = EvObject::mod_p(2);
        let c = EvObject::localized(2);
        let report = split_homs_check(&EvConst, &e, &c, &[(e.clone(), e.clone())]).unwrap();
        assert!(report.verdict);
        assert_eq!(report.witnesses[0].method, "enumeration");
        assert_eq!(report.witnesses[0].hom.count(), Some(2u32.into()));

        let pairs = sample_pairs(&EvConst, 0, 20, true);
        assert!(split_homs_check(&EvConst, &e, &c, &pairs).unwrap().verdict);
        let pairs = sample_pairs(&EvConst, 0, 20, false);
        assert!(split_homs_check(&EvConst, &s(), &EvObject::zero(), &pairs).unwrap().verdict);
    }

    #[test]
    fn gp_idempotents() {
        let gp = gp_idempotent(&EvConst).unwrap();
        assert_eq!(gp.object, s());
        assert_eq!(gp.r, EvConst.identity(&s()));
        assert_eq!(gp_idempotent(&SpanFin).unwrap().object, SpanObject(0));
        let p = Product::new(EvConst, SpanFin);
        assert_eq!(gp_idempotent(&p).unwrap().object, (s(), SpanObject(0)));
    }

    #[test]
    fn product_factors() {
        let p = Product::new(EvConst, SpanFin);
        let f = classify_factors(&p).unwrap();
        assert_eq!(f.suspension_of_unit, (EvObject::zero(), SpanObject(0)));
        assert_eq!(f.gp, (s(), SpanObject(0)));
        assert!(f.gp_closed);
        assert_eq!(f.anti_gp, Some((EvObject::zero(), SpanObject(1))));

        let e = f.gp.clone();
        let c = f.anti_gp.unwrap();
        let pairs = sample_pairs(&p, 7, 50, false);
        assert!(split_homs_check(&p, &e, &c, &pairs).unwrap().verdict);
    }

    #[test]
    fn char_splits() {
        let sp = char_split(6, &s()).unwrap();
        assert_eq!(sp.torsion_part, EvObject::mod_p(2).direct_sum(&EvObject::mod_p(3)));
        assert_eq!(sp.free_part, EvObject::localized(6));
        assert!(sp.reassembly_invertible);

        let x = EvObject::mod_p(5).direct_sum(&EvObject::localized(2));
        let sp = char_split(1, &x).unwrap();
        assert!(sp.torsion_part.is_zero());
        assert_eq!(sp.free_part, x);
        assert!(sp.reassembly_invertible);

        let sp = char_split(4, &EvObject::mod_p(2)).unwrap();
        assert_eq!(sp.torsion_part, EvObject::mod_p(2));
        assert!(sp.free_part.is_zero());
    }

    #[test]
    fn closed_idempotents_have_trivial_braiding() {
        assert!(has_trivial_braiding(&EvConst, &EvObject::mod_p(2)));
        assert!(has_trivial_braiding(&EvConst, &gp_idempotent(&EvConst).unwrap().object));
        assert!(has_trivial_braiding(&SpanFin, &SpanObject(1)));
        assert!(!has_trivial_braiding(&SpanFin, &SpanObject(2)));
    }

    #[test]
    fn derived_open_leg_matches() {
        for p in [2, 3, 5] {
            let e = EvObject::mod_p(p);
            let i2 = derived_open_leg(&EvConst, &e, &reduction(p), &inclusion(p)).unwrap();
            assert_eq!(i2, inclusion(p));
        }
    }
}
