use std::collections::BTreeMap;

use super::signature::{Letter, Signature};
use super::term::{Cell, Diagram};
use super::DiagramError;
use crate::models::{DualityOf, ModelCategory};

/// Where objects and generators go.
#[derive(Clone, Debug)]
pub struct Interpretation<C: ModelCategory> {
    pub objects: BTreeMap<String, C::Obj>,
    pub generators: BTreeMap<String, C::Mor>,
}

impl<C: ModelCategory> Default for Interpretation<C> {
    fn default() -> Self {
        Self { objects: BTreeMap::new(), generators: BTreeMap::new() }
    }
}

impl<C: ModelCategory> Interpretation<C> {
    pub fn object(mut self, name: &str, x: C::Obj) -> Self {
        self.objects.insert(name.into(), x);
        self
    }

    pub fn generator(mut self, name: &str, f: C::Mor) -> Self {
        self.generators.insert(name.into(), f);
        self
    }
}

struct Evaluator<'a, C: ModelCategory> {
    model: &'a C,
    sig: &'a Signature,
    interp: &'a Interpretation<C>,
    duals: BTreeMap<String, DualityOf<C>>,
}

impl<C: ModelCategory> Evaluator<'_, C> {
    fn object(&self, name: &str) -> Result<&C::Obj, DiagramError> {
        self.interp.objects.get(name).ok_or_else(|| DiagramError::MissingAssignment(name.into()))
    }

    fn letter(&self, l: &Letter) -> Result<C::Obj, DiagramError> {
        if l.dual {
            Ok(self.duals[&l.object].dual.clone())
        } else {
            self.object(&l.object).cloned()
        }
    }

    fn word(&self, w: &[Letter]) -> Result<C::Obj, DiagramError> {
        let xs = w.iter().map(|l| self.letter(l)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.model.tensor_all(&xs))
    }

    fn generator(&self, g: &str) -> Result<&C::Mor, DiagramError> {
        self.interp.generators.get(g).ok_or_else(|| DiagramError::MissingAssignment(g.into()))
    }

    fn cell(&self, cell: &Cell, input: &[Letter]) -> Result<C::Mor, DiagramError> {
        let m = self.model;
        Ok(match cell {
            Cell::BraidPos => m.braiding(&self.letter(&input[0])?, &self.letter(&input[1])?),
            Cell::BraidNeg => m.braiding_inv(&self.letter(&input[1])?, &self.letter(&input[0])?),
            Cell::Cup(x) | Cell::Cap(x) => {
                let dd = &self.duals[x];
                let flipped = self.sig.pair(x).is_some_and(|p| p.flipped);
                let swap = m.braiding(&dd.dual, &dd.object);
                match (cell, flipped) {
                    (Cell::Cup(_), false) => dd.unit.clone(),
                    (Cell::Cap(_), false) => dd.counit.clone(),
                    (Cell::Cup(_), true) => m.compose(&swap, &dd.unit)?,
                    (_, true) => m.compose(&dd.counit, &swap)?,
                    _ => unreachable!(),
                }
            }
            Cell::Gen(g) => self.generator(g)?.clone(),
            Cell::GenInv(g) => {
                let f = self.generator(g)?;
                m.invert(f).ok_or_else(|| DiagramError::NotInvertible(g.clone()))?
            }
        })
    }
}

/// Interprets each layer as `id ⊗ cell ⊗ id` and composes.
pub fn evaluate<C: ModelCategory>(
    model: &C,
    sig: &Signature,
    interp: &Interpretation<C>,
    d: &Diagram,
) -> Result<C::Mor, DiagramError> {
    let ws = d.words(sig)?;
    let mut ev = Evaluator { model, sig, interp, duals: BTreeMap::new() };
    for p in &sig.dual_pairs {
        if let Ok(x) = ev.object(&p.object) {
            let dd = model.duality(x);
            ev.duals.insert(p.object.clone(), dd);
        }
    }
    for w in &ws {
        for l in w {
            if l.dual && !ev.duals.contains_key(&l.object) {
                return Err(DiagramError::MissingAssignment(l.object.clone()));
            }
        }
    }
    let mut acc = model.identity(&ev.word(&d.domain)?);
    for (k, layer) in d.layers.iter().enumerate() {
        let w = &ws[k];
        let a = layer.cell.arity(sig)?;
        let (o, end) = (layer.offset, layer.offset + a);
        let core = ev.cell(&layer.cell, &w[o..end])?;
        let left = model.identity(&ev.word(&w[..o])?);
        let right = model.identity(&ev.word(&w[end..])?);
        let whole = model.tensor(&model.tensor(&left, &core), &right);
        acc = model.compose(&whole, &acc)?;
    }
    Ok(acc)
}
