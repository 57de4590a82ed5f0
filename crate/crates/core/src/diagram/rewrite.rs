use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::signature::{Flavor, Letter, ObjectWord, Signature};
use super::term::{Cell, Diagram, Layer};
use super::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "fwd")]
    Forward,
    #[serde(rename = "bwd")]
    Backward,
}

/// First layer of the matched region and its leftmost wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Location {
    pub slice: usize,
    pub offset: usize,
}

impl Location {
    pub fn new(slice: usize, offset: usize) -> Self {
        Self { slice, offset }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Axiom,
    Hypothesis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schema {
    /// Literal left- and right-hand sides.
    Explicit { lhs: Diagram, rhs: Diagram },
    /// Two adjacent layers on disjoint wires trade places.
    Interchange,
    /// A cell slides through a ladder of same-sign crossings carrying one
    /// extra wire. `leftward`: the wire travels from the right of the cell
    /// to its left. Forward moves the cell before the ladder to after it.
    Naturality { leftward: bool, sign: Cell },
    /// `first` followed by the opposite crossing on the same wires is the identity.
    BraidCancel { first: Cell },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: String,
    pub kind: RuleKind,
    pub schema: Schema,
}

impl RewriteRule {
    /// A literal rule; both sides must share domain and codomain.
    pub fn explicit(
        sig: &Signature,
        id: &str,
        kind: RuleKind,
        lhs: Diagram,
        rhs: Diagram,
    ) -> Result<Self, DiagramError> {
        let (lhs, rhs) = (lhs.canonical(sig.flavor), rhs.canonical(sig.flavor));
        if lhs.domain != rhs.domain || lhs.codomain(sig)? != rhs.codomain(sig)? {
            return Err(DiagramError::Ill(format!("rule {id}: sides have different boundaries")));
        }
        if lhs.is_empty() && rhs.is_empty() {
            return Err(DiagramError::Ill(format!("rule {id}: both sides are identities")));
        }
        Ok(Self { id: id.into(), kind, schema: Schema::Explicit { lhs, rhs } })
    }

    fn schema(id: &str, schema: Schema) -> Self {
        Self { id: id.into(), kind: RuleKind::Axiom, schema }
    }

    /// Rewrites `d` at `loc`.
    pub fn apply(&self, sig: &Signature, d: &Diagram, dir: Direction, loc: Location) -> Result<Diagram, DiagramError> {
        let ws = d.words(sig)?;
        let fail = || DiagramError::NoMatchAtLocation { rule: self.id.clone(), slice: loc.slice, offset: loc.offset };
        let (start, len, replacement) = match &self.schema {
            Schema::Explicit { lhs, rhs } => {
                let (src, tgt) = match dir {
                    Direction::Forward => (lhs, rhs),
                    Direction::Backward => (rhs, lhs),
                };
                if !embeds(d, &ws, src, loc) {
                    return Err(fail());
                }
                let shifted = tgt.layers.iter().map(|l| Layer::new(l.offset + loc.offset, l.cell.clone())).collect();
                (loc.slice, src.len(), shifted)
            }
            Schema::Interchange => {
                if dir == Direction::Backward {
                    return Err(fail());
                }
                let swapped = interchange(sig, d, loc)?.ok_or_else(fail)?;
                (loc.slice, 2, swapped)
            }
            Schema::BraidCancel { first } => {
                let second = opposite(first, sig.flavor);
                let (k, o) = (loc.slice, loc.offset);
                match dir {
                    Direction::Forward => {
                        let hit = |i: usize, c: &Cell| d.layers.get(i).is_some_and(|l| l.offset == o && l.cell == *c);
                        if !(hit(k, first) && hit(k + 1, &second)) {
                            return Err(fail());
                        }
                        (k, 2, Vec::new())
                    }
                    Direction::Backward => {
                        if k > d.len() || o + 2 > ws[k].len() {
                            return Err(fail());
                        }
                        (k, 0, vec![Layer::new(o, first.clone()), Layer::new(o, second)])
                    }
                }
            }
            Schema::Naturality { leftward, sign } => {
                let forward = dir == Direction::Forward;
                let m = if forward {
                    match_cell_first(sig, d, &ws, *leftward, sign, loc)?
                } else {
                    match_ladder_first(sig, d, &ws, *leftward, sign, loc)?
                };
                let (len, cell, a, b) = m.ok_or_else(fail)?;
                let o = loc.offset;
                let replacement = if forward {
                    ladder_then_cell(*leftward, sign, &cell, a, o)
                } else {
                    cell_then_ladder(*leftward, sign, &cell, b, o)
                };
                (loc.slice, len, replacement)
            }
        };
        let mut layers = d.layers[..start].to_vec();
        layers.extend(replacement);
        layers.extend_from_slice(&d.layers[start + len..]);
        Diagram::new(sig, d.domain.clone(), layers)
    }
}

fn opposite(c: &Cell, flavor: Flavor) -> Cell {
    match c {
        Cell::BraidPos => Cell::BraidNeg.canonical(flavor),
        _ => Cell::BraidPos,
    }
}

fn embeds(d: &Diagram, ws: &[ObjectWord], src: &Diagram, loc: Location) -> bool {
    let (k, o) = (loc.slice, loc.offset);
    if k + src.len() > d.len() {
        return false;
    }
    let w = &ws[k];
    if o + src.domain.len() > w.len() || w[o..o + src.domain.len()] != src.domain[..] {
        return false;
    }
    src.layers.iter().zip(&d.layers[k..]).all(|(p, l)| l.offset == p.offset + o && l.cell == p.cell)
}

fn interchange(sig: &Signature, d: &Diagram, loc: Location) -> Result<Option<Vec<Layer>>, DiagramError> {
    let k = loc.slice;
    let (Some(l1), Some(l2)) = (d.layers.get(k), d.layers.get(k + 1)) else {
        return Ok(None);
    };
    let (a1, b1) = (l1.cell.arity(sig)?, l1.cell.coarity(sig)?);
    let (o1, o2) = (l1.offset, l2.offset);
    let a2 = l2.cell.arity(sig)?;
    let b2 = l2.cell.coarity(sig)?;
    let (left, swapped) = if o2 + a2 <= o1 {
        (o2, vec![Layer::new(o2, l2.cell.clone()), Layer::new(o1 + b2 - a2, l1.cell.clone())])
    } else if o2 >= o1 + b1 {
        let moved = o2 + a1 - b1;
        (o1, vec![Layer::new(moved, l2.cell.clone()), Layer::new(o1, l1.cell.clone())])
    } else {
        return Ok(None);
    };
    Ok((left == loc.offset).then_some(swapped))
}

fn braid_at(d: &Diagram, i: usize, sign: &Cell, offset: usize) -> bool {
    d.layers.get(i).is_some_and(|l| l.cell == *sign && l.offset == offset)
}

type NatMatch = Option<(usize, Cell, usize, usize)>;

/// The cell comes first, then the ladder over its outputs.
fn match_cell_first(
    sig: &Signature,
    d: &Diagram,
    ws: &[ObjectWord],
    leftward: bool,
    sign: &Cell,
    loc: Location,
) -> Result<NatMatch, DiagramError> {
    let (k, o) = (loc.slice, loc.offset);
    let Some(layer) = d.layers.get(k) else { return Ok(None) };
    let cell_at = if leftward { o } else { o + 1 };
    if layer.offset != cell_at {
        return Ok(None);
    }
    let (a, b) = (layer.cell.arity(sig)?, layer.cell.coarity(sig)?);
    // the travelling wire must exist
    if ws[k].len() < o + a + 1 {
        return Ok(None);
    }
    let ok = (0..b).all(|i| {
        let off = if leftward { o + b - 1 - i } else { o + i };
        braid_at(d, k + 1 + i, sign, off)
    });
    Ok(ok.then(|| (b + 1, layer.cell.clone(), a, b)))
}

/// The ladder over the cell's inputs comes first, then the cell.
fn match_ladder_first(
    sig: &Signature,
    d: &Diagram,
    ws: &[ObjectWord],
    leftward: bool,
    sign: &Cell,
    loc: Location,
) -> Result<NatMatch, DiagramError> {
    let (k, o) = (loc.slice, loc.offset);
    let Some(first) = d.layers.get(k) else { return Ok(None) };
    let cell_at = if leftward { o + 1 } else { o };
    let with_cell = |a: usize| -> Result<NatMatch, DiagramError> {
        let Some(l) = d.layers.get(k + a) else { return Ok(None) };
        if l.offset != cell_at || l.cell.arity(sig)? != a {
            return Ok(None);
        }
        Ok(Some((a + 1, l.cell.clone(), a, l.cell.coarity(sig)?)))
    };
    if first.cell.arity(sig)? == 0 && first.offset == cell_at {
        if ws[k].len() <= o {
            return Ok(None);
        }
        return with_cell(0);
    }
    if first.cell != *sign {
        return Ok(None);
    }
    if leftward {
        if first.offset < o {
            return Ok(None);
        }
        let a = first.offset - o + 1;
        if !(0..a).all(|i| braid_at(d, k + i, sign, o + a - 1 - i)) {
            return Ok(None);
        }
        with_cell(a)
    } else {
        let mut j = 0;
        while braid_at(d, k + j, sign, o + j) {
            j += 1;
            if let Some(m) = with_cell(j)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

fn ladder_then_cell(leftward: bool, sign: &Cell, cell: &Cell, a: usize, o: usize) -> Vec<Layer> {
    let mut out: Vec<Layer> =
        (0..a).map(|i| Layer::new(if leftward { o + a - 1 - i } else { o + i }, sign.clone())).collect();
    out.push(Layer::new(if leftward { o + 1 } else { o }, cell.clone()));
    out
}

fn cell_then_ladder(leftward: bool, sign: &Cell, cell: &Cell, b: usize, o: usize) -> Vec<Layer> {
    let mut out = vec![Layer::new(if leftward { o } else { o + 1 }, cell.clone())];
    out.extend((0..b).map(|i| Layer::new(if leftward { o + b - 1 - i } else { o + i }, sign.clone())));
    out
}

/// The rules available to a trace: built-in axioms plus declared hypotheses.
#[derive(Clone, Debug)]
pub struct RuleSet {
    rules: BTreeMap<String, RewriteRule>,
}

impl RuleSet {
    /// Interchange, naturality, crossing cancellation, triangle equations
    /// for every dual pair and cancellation for every invertible generator.
    pub fn axioms(sig: &Signature) -> Result<Self, DiagramError> {
        sig.validate()?;
        let mut rules = Vec::new();
        rules.push(RewriteRule::schema("interchange", Schema::Interchange));
        let signs: &[(Cell, &str)] = match sig.flavor {
            Flavor::Braided => &[(Cell::BraidPos, "+"), (Cell::BraidNeg, "-")],
            Flavor::Symmetric => &[(Cell::BraidPos, "")],
        };
        for (sign, tag) in signs {
            for (leftward, dir) in [(true, "rl"), (false, "lr")] {
                rules.push(RewriteRule::schema(
                    &format!("nat-{dir}{tag}"),
                    Schema::Naturality { leftward, sign: sign.clone() },
                ));
            }
        }
        match sig.flavor {
            Flavor::Braided => {
                rules.push(RewriteRule::schema("braid-cancel+-", Schema::BraidCancel { first: Cell::BraidPos }));
                rules.push(RewriteRule::schema("braid-cancel-+", Schema::BraidCancel { first: Cell::BraidNeg }));
            }
            Flavor::Symmetric => {
                rules.push(RewriteRule::schema("braid-cancel", Schema::BraidCancel { first: Cell::BraidPos }));
            }
        }
        for p in &sig.dual_pairs {
            let x = &p.object;
            let (on_obj, on_dual) = (vec![Letter::plain(x)], vec![Letter::dual(x)]);
            // The snake through the object and the one through its dual.
            let (obj_snake, dual_snake) = if p.flipped {
                (
                    vec![(0, Cell::Cup(x.clone())), (1, Cell::Cap(x.clone()))],
                    vec![(1, Cell::Cup(x.clone())), (0, Cell::Cap(x.clone()))],
                )
            } else {
                (
                    vec![(1, Cell::Cup(x.clone())), (0, Cell::Cap(x.clone()))],
                    vec![(0, Cell::Cup(x.clone())), (1, Cell::Cap(x.clone()))],
                )
            };
            rules.push(RewriteRule::explicit(
                sig,
                &format!("triangle-left:{x}"),
                RuleKind::Axiom,
                Diagram::build(sig, on_obj.clone(), &obj_snake)?,
                Diagram::identity(on_obj),
            )?);
            rules.push(RewriteRule::explicit(
                sig,
                &format!("triangle-right:{x}"),
                RuleKind::Axiom,
                Diagram::build(sig, on_dual.clone(), &dual_snake)?,
                Diagram::identity(on_dual),
            )?);
        }
        for g in &sig.invertible {
            let decl = sig.gen(g).expect("validated");
            rules.push(RewriteRule::explicit(
                sig,
                &format!("inverse-right:{g}"),
                RuleKind::Axiom,
                Diagram::build(sig, decl.dom.clone(), &[(0, Cell::Gen(g.clone())), (0, Cell::GenInv(g.clone()))])?,
                Diagram::identity(decl.dom.clone()),
            )?);
            rules.push(RewriteRule::explicit(
                sig,
                &format!("inverse-left:{g}"),
                RuleKind::Axiom,
                Diagram::build(sig, decl.cod.clone(), &[(0, Cell::GenInv(g.clone())), (0, Cell::Gen(g.clone()))])?,
                Diagram::identity(decl.cod.clone()),
            )?);
        }
        Ok(Self { rules: rules.into_iter().map(|r| (r.id.clone(), r)).collect() })
    }

    pub fn add(&mut self, rule: RewriteRule) -> Result<(), DiagramError> {
        if self.rules.contains_key(&rule.id) {
            return Err(DiagramError::Ill(format!("rule {} declared twice", rule.id)));
        }
        self.rules.insert(rule.id.clone(), rule);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<&RewriteRule, DiagramError> {
        self.rules.get(id).ok_or_else(|| DiagramError::UnknownRule(id.into()))
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.rules.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.values()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        })
    }
}

/// Applies the rule named `id` from `rules`.
pub fn apply_rule(
    sig: &Signature,
    rules: &RuleSet,
    d: &Diagram,
    id: &str,
    dir: Direction,
    loc: Location,
) -> Result<Diagram, DiagramError> {
    rules.get(id)?.apply(sig, d, dir, loc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::signature::{word, DualPair};

    fn sig() -> Signature {
        Signature::new(Flavor::Braided, &["T"])
            .dual_pair(DualPair::new("T"))
            .generator("s", "T", "T")
            .generator("t", "T", "T")
            .generator("f", "T", "T T")
    }

    fn gen(g: &str) -> Cell {
        Cell::Gen(g.into())
    }

    #[test]
    fn snake_yanks_straight() {
        let s = sig();
        let rules = RuleSet::axioms(&s).unwrap();
        let snake =
            Diagram::build(&s, word("T").unwrap(), &[(1, Cell::Cup("T".into())), (0, Cell::Cap("T".into()))]).unwrap();
        let out = apply_rule(&s, &rules, &snake, "triangle-left:T", Direction::Forward, Location::new(0, 0)).unwrap();
        assert_eq!(out, Diagram::identity(word("T").unwrap()));
        let back = apply_rule(&s, &rules, &out, "triangle-left:T", Direction::Backward, Location::new(0, 0)).unwrap();
        assert_eq!(back, snake);
    }

    #[test]
    fn hypothesis_replaces_crossing() {
        let s = sig();
        let mut rules = RuleSet::axioms(&s).unwrap();
        let beta = Diagram::build(&s, word("T T").unwrap(), &[(0, Cell::BraidPos)]).unwrap();
        let st = Diagram::build(&s, word("T T").unwrap(), &[(0, gen("s")), (1, gen("t"))]).unwrap();
        rules.add(RewriteRule::explicit(&s, "h", RuleKind::Hypothesis, beta.clone(), st.clone()).unwrap()).unwrap();
        let out = apply_rule(&s, &rules, &beta, "h", Direction::Forward, Location::new(0, 0)).unwrap();
        assert_eq!(out, st);
        assert_eq!(out.slices(&s).unwrap().len(), 1);
    }

    #[test]
    fn triangle_on_bare_wires_does_not_match() {
        let s = sig();
        let rules = RuleSet::axioms(&s).unwrap();
        let id = Diagram::identity(word("T T").unwrap());
        let err = apply_rule(&s, &rules, &id, "triangle-left:T", Direction::Forward, Location::new(0, 0));
        assert!(matches!(err, Err(DiagramError::NoMatchAtLocation { .. })));
    }

    #[test]
    fn interchange_swaps_disjoint_cells() {
        let s = sig();
        let rules = RuleSet::axioms(&s).unwrap();
        let d = Diagram::build(&s, word("T T").unwrap(), &[(0, gen("s")), (1, gen("t"))]).unwrap();
        let out = apply_rule(&s, &rules, &d, "interchange", Direction::Forward, Location::new(0, 0)).unwrap();
        assert_eq!(out.layers, vec![Layer::new(1, gen("t")), Layer::new(0, gen("s"))]);
        assert!(apply_rule(&s, &rules, &d, "interchange", Direction::Forward, Location::new(0, 1)).is_err());
        // a cell that grows the word shifts its neighbour
        let d = Diagram::build(&s, word("T T").unwrap(), &[(0, gen("f")), (2, gen("t"))]).unwrap();
        let out = apply_rule(&s, &rules, &d, "interchange", Direction::Forward, Location::new(0, 0)).unwrap();
        assert_eq!(out.layers, vec![Layer::new(1, gen("t")), Layer::new(0, gen("f"))]);
    }

    #[test]
    fn naturality_round_trips() {
        let s = sig();
        let rules = RuleSet::axioms(&s).unwrap();
        // f on the first wire, then the third wire crosses leftwards over both outputs
        let a = Diagram::build(&s, word("T T").unwrap(), &[(0, gen("f")), (1, Cell::BraidPos), (0, Cell::BraidPos)])
            .unwrap();
        let b = apply_rule(&s, &rules, &a, "nat-rl+", Direction::Forward, Location::new(0, 0)).unwrap();
        assert_eq!(b.layers, vec![Layer::new(0, Cell::BraidPos), Layer::new(1, gen("f"))]);
        let back = apply_rule(&s, &rules, &b, "nat-rl+", Direction::Backward, Location::new(0, 0)).unwrap();
        assert_eq!(back, a);
        assert!(apply_rule(&s, &rules, &a, "nat-rl-", Direction::Forward, Location::new(0, 0)).is_err());

        let c = Diagram::build(&s, word("T T").unwrap(), &[(1, gen("s")), (0, Cell::BraidNeg)]).unwrap();
        let d = apply_rule(&s, &rules, &c, "nat-lr-", Direction::Forward, Location::new(0, 0)).unwrap();
        assert_eq!(d.layers, vec![Layer::new(0, Cell::BraidNeg), Layer::new(0, gen("s"))]);
        let back = apply_rule(&s, &rules, &d, "nat-lr-", Direction::Backward, Location::new(0, 0)).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn cups_slide_through_wires() {
        let s = sig();
        let rules = RuleSet::axioms(&s).unwrap();
        let d = Diagram::build(&s, word("T").unwrap(), &[(0, Cell::Cup("T".into()))]).unwrap();
        let out = apply_rule(&s, &rules, &d, "nat-lr+", Direction::Backward, Location::new(0, 0)).unwrap();
        assert_eq!(
            out.layers,
            vec![Layer::new(1, Cell::Cup("T".into())), Layer::new(0, Cell::BraidPos), Layer::new(1, Cell::BraidPos)]
        );
        assert_eq!(out.codomain(&s).unwrap(), d.codomain(&s).unwrap());
        let fwd = apply_rule(&s, &rules, &out, "nat-lr+", Direction::Forward, Location::new(0, 0)).unwrap();
        assert_eq!(fwd, d);
    }

    #[test]
    fn crossing_cancellation() {
        let s = sig();
        let rules = RuleSet::axioms(&s).unwrap();
        let id = Diagram::identity(word("T T^").unwrap());
        let two = apply_rule(&s, &rules, &id, "braid-cancel-+", Direction::Backward, Location::new(0, 0)).unwrap();
        assert_eq!(two.layers, vec![Layer::new(0, Cell::BraidNeg), Layer::new(0, Cell::BraidPos)]);
        assert!(apply_rule(&s, &rules, &two, "braid-cancel+-", Direction::Forward, Location::new(0, 0)).is_err());
        assert_eq!(
            apply_rule(&s, &rules, &two, "braid-cancel-+", Direction::Forward, Location::new(0, 0)).unwrap(),
            id
        );
    }
}
