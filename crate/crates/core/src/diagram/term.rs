use std::fmt;

use serde_json::{json, Value};

use super::signature::{show_word, Flavor, Letter, ObjectWord, Signature};
use super::DiagramError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    /// `β_{A,B}` on the letters `A B`.
    BraidPos,
    /// `β⁻¹_{B,A}` on the letters `A B`.
    BraidNeg,
    Cup(String),
    Cap(String),
    Gen(String),
    GenInv(String),
}

impl Cell {
    pub fn is_braid(&self) -> bool {
        matches!(self, Cell::BraidPos | Cell::BraidNeg)
    }

    /// In the symmetric flavor both crossings are the same cell.
    pub fn canonical(&self, flavor: Flavor) -> Cell {
        match (self, flavor) {
            (Cell::BraidNeg, Flavor::Symmetric) => Cell::BraidPos,
            _ => self.clone(),
        }
    }

    /// Number of input letters.
    pub fn arity(&self, sig: &Signature) -> Result<usize, DiagramError> {
        Ok(match self {
            Cell::BraidPos | Cell::BraidNeg => 2,
            Cell::Cup(_) => 0,
            Cell::Cap(_) => 2,
            Cell::Gen(g) => lookup(sig, g)?.dom.len(),
            Cell::GenInv(g) => lookup(sig, g)?.cod.len(),
        })
    }

    pub fn coarity(&self, sig: &Signature) -> Result<usize, DiagramError> {
        Ok(match self {
            Cell::BraidPos | Cell::BraidNeg | Cell::Cup(_) => 2,
            Cell::Cap(_) => 0,
            Cell::Gen(g) => lookup(sig, g)?.cod.len(),
            Cell::GenInv(g) => lookup(sig, g)?.dom.len(),
        })
    }

    /// Output letters for the given input letters.
    pub fn apply(&self, sig: &Signature, input: &[Letter]) -> Result<ObjectWord, DiagramError> {
        let mismatch =
            |want: &[Letter]| DiagramError::BoundaryMismatch { expected: show_word(want), found: show_word(input) };
        match self {
            Cell::BraidPos | Cell::BraidNeg => match input {
                [a, b] => Ok(vec![b.clone(), a.clone()]),
                _ => Err(DiagramError::Ill(format!("crossing on {} letters", input.len()))),
            },
            Cell::Cup(x) => {
                let p = pair(sig, x)?;
                if !input.is_empty() {
                    return Err(mismatch(&[]));
                }
                Ok(p.unit_word())
            }
            Cell::Cap(x) => {
                let want = pair(sig, x)?.counit_word();
                if input != want.as_slice() {
                    return Err(mismatch(&want));
                }
                Ok(Vec::new())
            }
            Cell::Gen(g) => {
                let d = lookup(sig, g)?;
                if input != d.dom.as_slice() {
                    return Err(mismatch(&d.dom));
                }
                Ok(d.cod.clone())
            }
            Cell::GenInv(g) => {
                let d = lookup(sig, g)?;
                if !sig.invertible.contains(g) {
                    return Err(DiagramError::Ill(format!("{g} is not invertible")));
                }
                if input != d.cod.as_slice() {
                    return Err(mismatch(&d.cod));
                }
                Ok(d.dom.clone())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Cell::BraidPos => json!("B+"),
            Cell::BraidNeg => json!("B-"),
            Cell::Cup(x) => json!({ "cup": x }),
            Cell::Cap(x) => json!({ "cap": x }),
            Cell::Gen(g) => json!({ "gen": g }),
            Cell::GenInv(g) => json!({ "inv": g }),
        }
    }

    /// `None` for the identity tag `"id"`.
    pub fn from_json(v: &Value) -> Result<Option<Cell>, DiagramError> {
        let bad = || DiagramError::Parse(format!("bad cell {v}"));
        if let Some(s) = v.as_str() {
            return match s {
                "id" => Ok(None),
                "B+" => Ok(Some(Cell::BraidPos)),
                "B-" => Ok(Some(Cell::BraidNeg)),
                _ => Err(bad()),
            };
        }
        let obj = v.as_object().filter(|o| o.len() == 1).ok_or_else(bad)?;
        let (tag, arg) = obj.iter().next().expect("one entry");
        let arg = arg.as_str().ok_or_else(bad)?.to_string();
        Ok(Some(match tag.as_str() {
            "cup" => Cell::Cup(arg),
            "cap" => Cell::Cap(arg),
            "gen" => Cell::Gen(arg),
            "inv" => Cell::GenInv(arg),
            _ => return Err(bad()),
        }))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::BraidPos => f.write_str("B+"),
            Cell::BraidNeg => f.write_str("B-"),
            Cell::Cup(x) => write!(f, "cup({x})"),
            Cell::Cap(x) => write!(f, "cap({x})"),
            Cell::Gen(g) => f.write_str(g),
            Cell::GenInv(g) => write!(f, "{g}⁻¹"),
        }
    }
}

fn lookup<'a>(sig: &'a Signature, g: &str) -> Result<&'a super::signature::GeneratorDecl, DiagramError> {
    sig.gen(g).ok_or_else(|| DiagramError::Signature(format!("unknown generator {g}")))
}

fn pair<'a>(sig: &'a Signature, x: &str) -> Result<&'a super::signature::DualPair, DiagramError> {
    sig.pair(x).ok_or_else(|| DiagramError::Signature(format!("{x} has no duality data")))
}

/// A single non-identity cell acting at `offset` of the current word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    pub offset: usize,
    pub cell: Cell,
}

impl Layer {
    pub fn new(offset: usize, cell: Cell) -> Self {
        Self { offset, cell }
    }
}

/// A morphism term, stored with one non-identity cell per layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    pub domain: ObjectWord,
    pub layers: Vec<Layer>,
}

impl Diagram {
    pub fn identity(domain: ObjectWord) -> Self {
        Self { domain, layers: Vec::new() }
    }

    /// Builds and type-checks a diagram; crossings are canonicalized for the flavor.
    pub fn new(sig: &Signature, domain: ObjectWord, layers: Vec<Layer>) -> Result<Self, DiagramError> {
        let d = Self { domain, layers }.canonical(sig.flavor);
        d.words(sig)?;
        Ok(d)
    }

    /// Convenience builder: `(offset, cell)` pairs.
    pub fn build(sig: &Signature, domain: ObjectWord, layers: &[(usize, Cell)]) -> Result<Self, DiagramError> {
        let layers = layers.iter().map(|(o, c)| Layer::new(*o, c.clone())).collect();
        Self::new(sig, domain, layers)
    }

    pub fn canonical(mut self, flavor: Flavor) -> Self {
        for l in &mut self.layers {
            l.cell = l.cell.canonical(flavor);
        }
        self
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Applies one layer to a word.
    pub fn step(sig: &Signature, w: &[Letter], layer: &Layer) -> Result<ObjectWord, DiagramError> {
        let a = layer.cell.arity(sig)?;
        if layer.offset + a > w.len() {
            return Err(DiagramError::Ill(format!(
                "{} at offset {} overruns {}",
                layer.cell,
                layer.offset,
                show_word(w)
            )));
        }
        let out = layer.cell.apply(sig, &w[layer.offset..layer.offset + a])?;
        let mut next = w[..layer.offset].to_vec();
        next.extend(out);
        next.extend_from_slice(&w[layer.offset + a..]);
        Ok(next)
    }

    /// The boundary words between layers: `words[k]` is the domain of layer `k`.
    pub fn words(&self, sig: &Signature) -> Result<Vec<ObjectWord>, DiagramError> {
        sig.check_word(&self.domain)?;
        let mut ws = Vec::with_capacity(self.layers.len() + 1);
        ws.push(self.domain.clone());
        for layer in &self.layers {
            let next = Self::step(sig, ws.last().expect("nonempty"), layer)?;
            ws.push(next);
        }
        Ok(ws)
    }

    pub fn codomain(&self, sig: &Signature) -> Result<ObjectWord, DiagramError> {
        Ok(self.words(sig)?.pop().expect("nonempty"))
    }

    /// `self` followed by `next`.
    pub fn compose(&self, sig: &Signature, next: &Diagram) -> Result<Diagram, DiagramError> {
        let cod = self.codomain(sig)?;
        if cod != next.domain {
            return Err(DiagramError::BoundaryMismatch { expected: show_word(&cod), found: show_word(&next.domain) });
        }
        next.words(sig)?;
        let mut layers = self.layers.clone();
        layers.extend(next.layers.iter().cloned());
        Ok(Diagram { domain: self.domain.clone(), layers })
    }

    /// Side by side: `self` acts on the left part first, then `other` on the right.
    pub fn tensor(&self, sig: &Signature, other: &Diagram) -> Result<Diagram, DiagramError> {
        let cod = self.codomain(sig)?;
        other.words(sig)?;
        let mut domain = self.domain.clone();
        domain.extend(other.domain.iter().cloned());
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().map(|l| Layer::new(l.offset + cod.len(), l.cell.clone())));
        Ok(Diagram { domain, layers })
    }

    /// Groups layers into maximal left-to-right slices.
    pub fn slices(&self, sig: &Signature) -> Result<Vec<Vec<Layer>>, DiagramError> {
        let mut out: Vec<Vec<Layer>> = Vec::new();
        // end of the last cell's output within the current slice
        let mut frontier: Option<usize> = None;
        for layer in &self.layers {
            let b = layer.cell.coarity(sig)?;
            match frontier {
                Some(f) if layer.offset >= f => out.last_mut().expect("open slice").push(layer.clone()),
                _ => out.push(vec![layer.clone()]),
            }
            frontier = Some(layer.offset + b);
        }
        Ok(out)
    }

    pub fn to_json(&self, sig: &Signature) -> Result<Value, DiagramError> {
        let ws = self.words(sig)?;
        let mut slices = Vec::new();
        let mut k = 0;
        for slice in self.slices(sig)? {
            // the word entering this slice
            let w = &ws[k];
            let mut tags = Vec::new();
            let mut pos = 0; // position in the partially rewritten word
            let mut consumed = 0; // position in `w`
            for layer in &slice {
                let skip = layer.offset - pos;
                tags.extend(std::iter::repeat_n(json!("id"), skip));
                consumed += skip;
                consumed += layer.cell.arity(sig)?;
                pos = layer.offset + layer.cell.coarity(sig)?;
                tags.push(layer.cell.to_json());
            }
            tags.extend(std::iter::repeat_n(json!("id"), w.len() - consumed));
            slices.push(Value::Array(tags));
            k += slice.len();
        }
        Ok(json!({ "domain": self.domain, "slices": slices }))
    }

    pub fn from_json(sig: &Signature, v: &Value) -> Result<Diagram, DiagramError> {
        let domain: ObjectWord = serde_json::from_value(v.get("domain").cloned().unwrap_or(Value::Null))
            .map_err(|e| DiagramError::Parse(format!("domain: {e}")))?;
        let slices = match v.get("slices") {
            None => Vec::new(),
            Some(s) => s.as_array().ok_or_else(|| DiagramError::Parse("slices must be an array".into()))?.clone(),
        };
        sig.check_word(&domain)?;
        let mut w = domain.clone();
        let mut layers = Vec::new();
        for (k, slice) in slices.iter().enumerate() {
            let tags = slice.as_array().ok_or_else(|| DiagramError::Parse(format!("slice {k} must be an array")))?;
            let before = w.len();
            let mut pos = 0;
            let mut read = 0;
            for tag in tags {
                match Cell::from_json(tag)? {
                    None => {
                        pos += 1;
                        read += 1;
                    }
                    Some(cell) => {
                        let layer = Layer::new(pos, cell);
                        w = Self::step(sig, &w, &layer)?;
                        read += layer.cell.arity(sig)?;
                        pos += layer.cell.coarity(sig)?;
                        layers.push(layer);
                    }
                }
            }
            if read != before || pos != w.len() {
                return Err(DiagramError::Ill(format!("slice {k} does not cover its word")));
            }
        }
        Diagram::new(sig, domain, layers)
    }

    pub fn show(&self) -> String {
        let cells: Vec<String> = self.layers.iter().map(|l| format!("{}@{}", l.cell, l.offset)).collect();
        format!("[{}] on {}", cells.join(", "), show_word(&self.domain))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::signature::{word, DualPair};

    fn sig() -> Signature {
        Signature::new(Flavor::Braided, &["T"]).dual_pair(DualPair::new("T")).generator("t", "T", "T").twist("t", "T")
    }

    #[test]
    fn identity_composition_stays_identity() {
        let s = sig();
        let id = Diagram::identity(word("T").unwrap());
        assert_eq!(id.compose(&s, &id).unwrap(), id);
    }

    #[test]
    fn snake_boundary() {
        let s = sig();
        let cup = Diagram::build(&s, word("T").unwrap(), &[(1, Cell::Cup("T".into()))]).unwrap();
        let cap = Diagram::build(&s, word("T T^ T").unwrap(), &[(0, Cell::Cap("T".into()))]).unwrap();
        let snake = cup.compose(&s, &cap).unwrap();
        assert_eq!(snake.codomain(&s).unwrap(), word("T").unwrap());
        assert_eq!(snake.len(), 2);
    }

    #[test]
    fn mismatched_compose_is_rejected() {
        let s = sig();
        let tt = Diagram::identity(word("T T").unwrap());
        let t = Diagram::identity(word("T").unwrap());
        assert!(matches!(tt.compose(&s, &t), Err(DiagramError::BoundaryMismatch { .. })));
    }

    #[test]
    fn tensor_packs_into_one_slice() {
        let s = sig();
        let t = Diagram::build(&s, word("T").unwrap(), &[(0, Cell::Gen("t".into()))]).unwrap();
        let tt = t.tensor(&s, &t).unwrap();
        assert_eq!(tt.slices(&s).unwrap().len(), 1);
        let unit = Diagram::identity(Vec::new());
        assert_eq!(unit.tensor(&s, &t).unwrap(), t);

        let eta = Diagram::build(&s, vec![], &[(0, Cell::Cup("T".into()))]).unwrap();
        let eps = Diagram::build(&s, word("T T^").unwrap(), &[(0, Cell::Cap("T".into()))]).unwrap();
        let both = eta.tensor(&s, &eps).unwrap();
        assert_eq!(both.domain, word("T T^").unwrap());
        assert_eq!(both.codomain(&s).unwrap(), word("T^ T").unwrap());
        assert_eq!(both.slices(&s).unwrap().len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let s = sig();
        let d = Diagram::build(
            &s,
            word("T T").unwrap(),
            &[
                (0, Cell::Gen("t".into())),
                (1, Cell::Gen("t".into())),
                (0, Cell::BraidPos),
                (2, Cell::Cup("T".into())),
                (1, Cell::BraidNeg),
            ],
        )
        .unwrap();
        let v = d.to_json(&s).unwrap();
        assert_eq!(v["slices"].as_array().unwrap().len(), 3);
        assert_eq!(Diagram::from_json(&s, &v).unwrap(), d);
    }

    #[test]
    fn symmetric_flavor_identifies_crossings() {
        let mut s = sig();
        s.flavor = Flavor::Symmetric;
        let a = Diagram::build(&s, word("T T").unwrap(), &[(0, Cell::BraidNeg)]).unwrap();
        let b = Diagram::build(&s, word("T T").unwrap(), &[(0, Cell::BraidPos)]).unwrap();
        assert_eq!(a, b);
    }
}
