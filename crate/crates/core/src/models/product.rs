use rand::RngCore;

use super::{Biproduct, Cofiber, DualityData, HomInvariant, ModelCategory, ModelError};

/// The product of two models, with every operation taken componentwise.
#[derive(Clone, Copy, Debug, Default)]
pub struct Product<A, B> {
    pub left: A,
    pub right: B,
}

impl<A, B> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        Self { left, right }
    }
}

impl<A: ModelCategory, B: ModelCategory> ModelCategory for Product<A, B> {
    type Obj = (A::Obj, B::Obj);
    type Mor = (A::Mor, B::Mor);

    fn name(&self) -> &'static str {
        "product"
    }

    fn unit(&self) -> Self::Obj {
        (self.left.unit(), self.right.unit())
    }

    fn zero_object(&self) -> Self::Obj {
        (self.left.zero_object(), self.right.zero_object())
    }

    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        (self.left.dom(&f.0), self.right.dom(&f.1))
    }

    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        (self.left.cod(&f.0), self.right.cod(&f.1))
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        (self.left.identity(&x.0), self.right.identity(&x.1))
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, ModelError> {
        Ok((self.left.compose(&g.0, &f.0)?, self.right.compose(&g.1, &f.1)?))
    }

    fn tensor_obj(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj {
        (self.left.tensor_obj(&x.0, &y.0), self.right.tensor_obj(&x.1, &y.1))
    }

    fn tensor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        (self.left.tensor(&f.0, &g.0), self.right.tensor(&f.1, &g.1))
    }

    fn braiding(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor {
        (self.left.braiding(&x.0, &y.0), self.right.braiding(&x.1, &y.1))
    }

    fn braiding_inv(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor {
        (self.left.braiding_inv(&x.0, &y.0), self.right.braiding_inv(&x.1, &y.1))
    }

    fn zero_mor(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor {
        (self.left.zero_mor(&x.0, &y.0), self.right.zero_mor(&x.1, &y.1))
    }

    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor, ModelError> {
        Ok((self.left.add(&f.0, &g.0)?, self.right.add(&f.1, &g.1)?))
    }

    fn negate(&self, f: &Self::Mor) -> Option<Self::Mor> {
        Some((self.left.negate(&f.0)?, self.right.negate(&f.1)?))
    }

    fn biproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Biproduct<Self::Obj, Self::Mor> {
        let l = self.left.biproduct(&x.0, &y.0);
        let r = self.right.biproduct(&x.1, &y.1);
        Biproduct {
            object: (l.object, r.object),
            inj1: (l.inj1, r.inj1),
            inj2: (l.inj2, r.inj2),
            proj1: (l.proj1, r.proj1),
            proj2: (l.proj2, r.proj2),
        }
    }

    fn dual(&self, x: &Self::Obj) -> Self::Obj {
        (self.left.dual(&x.0), self.right.dual(&x.1))
    }

    fn duality(&self, x: &Self::Obj) -> DualityData<Self::Obj, Self::Mor> {
        let l = self.left.duality(&x.0);
        let r = self.right.duality(&x.1);
        DualityData {
            object: (l.object, r.object),
            dual: (l.dual, r.dual),
            unit: (l.unit, r.unit),
            counit: (l.counit, r.counit),
        }
    }

    fn cofiber(&self, f: &Self::Mor) -> Result<Cofiber<Self::Obj, Self::Mor>, ModelError> {
        let l = self.left.cofiber(&f.0)?;
        let r = self.right.cofiber(&f.1)?;
        let provenance = l
            .provenance
            .iter()
            .map(|s| format!("left: {s}"))
            .chain(r.provenance.iter().map(|s| format!("right: {s}")))
            .collect();
        Ok(Cofiber { object: (l.object, r.object), quotient: (l.quotient, r.quotient), provenance })
    }

    fn invert(&self, f: &Self::Mor) -> Option<Self::Mor> {
        Some((self.left.invert(&f.0)?, self.right.invert(&f.1)?))
    }

    fn section(&self, f: &Self::Mor) -> Option<Self::Mor> {
        Some((self.left.section(&f.0)?, self.right.section(&f.1)?))
    }

    fn hom_invariant(&self, x: &Self::Obj, y: &Self::Obj) -> HomInvariant {
        self.left.hom_invariant(&x.0, &y.0).product(&self.right.hom_invariant(&x.1, &y.1))
    }

    fn enumerate_homs(&self, x: &Self::Obj, y: &Self::Obj, limit: usize) -> Option<Vec<Self::Mor>> {
        let ls = self.left.enumerate_homs(&x.0, &y.0, limit)?;
        let rs = self.right.enumerate_homs(&x.1, &y.1, limit)?;
        if ls.len().saturating_mul(rs.len()) > limit {
            return None;
        }
        Some(ls.iter().flat_map(|l| rs.iter().map(move |r| (l.clone(), r.clone()))).collect())
    }

    fn sample_hom(&self, x: &Self::Obj, y: &Self::Obj, rng: &mut dyn RngCore) -> Self::Mor {
        (self.left.sample_hom(&x.0, &y.0, rng), self.right.sample_hom(&x.1, &y.1, rng))
    }

    fn sample_object(&self, rng: &mut dyn RngCore) -> Self::Obj {
        (self.left.sample_object(rng), self.right.sample_object(rng))
    }

    fn sample_finite_object(&self, rng: &mut dyn RngCore) -> Option<Self::Obj> {
        let l = self.left.sample_finite_object(rng).unwrap_or_else(|| self.left.zero_object());
        let r = self.right.sample_finite_object(rng).unwrap_or_else(|| self.right.zero_object());
        Some((l, r))
    }
}
