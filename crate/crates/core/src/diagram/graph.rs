use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use super::signature::{Flavor, ObjectWord, Signature};
use super::term::{Cell, Diagram};
use super::DiagramError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Port {
    Input(usize),
    Output(usize),
    NodeIn(usize, usize),
    NodeOut(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Node {
    pub label: String,
    pub inputs: usize,
    pub outputs: usize,
}

/// Generator occurrences and the perfect matching between their ports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpenGraph {
    pub domain: ObjectWord,
    pub codomain: ObjectWord,
    pub nodes: Vec<Node>,
    /// Symmetric: every port appears as a key, mapped to its mate.
    pub wiring: BTreeMap<Port, Port>,
    /// Closed components, by object name, sorted.
    pub loops: Vec<String>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.parent[a] = b;
    }
}

/// Traces wires through crossings, cups and caps.
pub fn normalize_symmetric(sig: &Signature, d: &Diagram) -> Result<OpenGraph, DiagramError> {
    if sig.flavor != Flavor::Symmetric {
        return Err(DiagramError::WrongFlavor);
    }
    let codomain = d.codomain(sig)?;
    let mut uf = UnionFind { parent: Vec::new() };
    // per segment: attached ports and the object it carries
    let mut ends: Vec<Vec<Port>> = Vec::new();
    let mut objs: Vec<String> = Vec::new();
    let mut new_seg = |uf: &mut UnionFind, ends: &mut Vec<Vec<Port>>, port: Option<Port>, obj: &str| {
        let s = uf.add();
        ends.push(port.into_iter().collect());
        objs.push(obj.to_string());
        s
    };
    let mut pos: Vec<usize> = Vec::new();
    for (i, l) in d.domain.iter().enumerate() {
        pos.push(new_seg(&mut uf, &mut ends, Some(Port::Input(i)), &l.object));
    }
    let mut nodes = Vec::new();
    let ws = d.words(sig)?;
    for (k, layer) in d.layers.iter().enumerate() {
        let o = layer.offset;
        match &layer.cell {
            Cell::BraidPos | Cell::BraidNeg => pos.swap(o, o + 1),
            Cell::Cup(x) => {
                let s = new_seg(&mut uf, &mut ends, None, x);
                pos.splice(o..o, [s, s]);
            }
            Cell::Cap(_) => {
                uf.union(pos[o], pos[o + 1]);
                pos.drain(o..o + 2);
            }
            Cell::Gen(g) => {
                let decl = sig.gen(g).expect("typed");
                let n = nodes.len();
                nodes.push(Node { label: g.clone(), inputs: decl.dom.len(), outputs: decl.cod.len() });
                for (j, &seg) in pos[o..o + decl.dom.len()].iter().enumerate() {
                    ends[seg].push(Port::NodeIn(n, j));
                }
                let outs: Vec<usize> = decl
                    .cod
                    .iter()
                    .enumerate()
                    .map(|(j, l)| new_seg(&mut uf, &mut ends, Some(Port::NodeOut(n, j)), &l.object))
                    .collect();
                pos.splice(o..o + decl.dom.len(), outs);
            }
            Cell::GenInv(g) => return Err(DiagramError::UnsupportedCell(format!("{g}⁻¹ in layer {k}"))),
        }
        debug_assert_eq!(pos.len(), ws[k + 1].len());
    }
    for (j, &seg) in pos.iter().enumerate() {
        ends[seg].push(Port::Output(j));
    }
    let mut classes: BTreeMap<usize, (Vec<Port>, String)> = BTreeMap::new();
    for seg in 0..ends.len() {
        let root = uf.find(seg);
        let entry = classes.entry(root).or_insert_with(|| (Vec::new(), objs[seg].clone()));
        entry.0.extend(ends[seg].iter().copied());
    }
    let mut wiring = BTreeMap::new();
    let mut loops = Vec::new();
    for (ports, obj) in classes.into_values() {
        match ports.as_slice() {
            [] => loops.push(obj),
            [a, b] => {
                wiring.insert(*a, *b);
                wiring.insert(*b, *a);
            }
            _ => unreachable!("a wire has two ends"),
        }
    }
    loops.sort();
    Ok(OpenGraph { domain: d.domain.clone(), codomain, nodes, wiring, loops })
}

impl OpenGraph {
    /// Decides whether a label-, port- and boundary-preserving bijection of
    /// nodes carries one wiring onto the other.
    pub fn isomorphic(&self, other: &OpenGraph) -> bool {
        if self.domain != other.domain
            || self.codomain != other.codomain
            || self.loops != other.loops
            || self.nodes.len() != other.nodes.len()
            || self.wiring.len() != other.wiring.len()
        {
            return false;
        }
        let mut la: Vec<&str> = self.nodes.iter().map(|n| n.label.as_str()).collect();
        let mut lb: Vec<&str> = other.nodes.iter().map(|n| n.label.as_str()).collect();
        la.sort_unstable();
        lb.sort_unstable();
        if la != lb {
            return false;
        }
        let mut m = Matching { fwd: vec![None; self.nodes.len()], bwd: vec![None; other.nodes.len()] };
        let seeds: Vec<(Port, Port)> = (0..self.domain.len())
            .map(Port::Input)
            .chain((0..self.codomain.len()).map(Port::Output))
            .map(|p| (p, p))
            .collect();
        if !self.propagate(other, &mut m, seeds) {
            return false;
        }
        self.search(other, m)
    }

    fn search(&self, other: &OpenGraph, m: Matching) -> bool {
        let Some(n) = m.fwd.iter().position(Option::is_none) else {
            return true;
        };
        for c in 0..other.nodes.len() {
            if m.bwd[c].is_some() || other.nodes[c].label != self.nodes[n].label {
                continue;
            }
            let mut trial = m.clone();
            if self.propagate(other, &mut trial, vec![(Port::NodeIn(n, usize::MAX), Port::NodeIn(c, usize::MAX))])
                && self.search(other, trial)
            {
                return true;
            }
        }
        false
    }

    /// Extends the node matching from port pairs that must correspond.
    /// The sentinel index `usize::MAX` only pairs the nodes.
    fn propagate(&self, other: &OpenGraph, m: &mut Matching, seeds: Vec<(Port, Port)>) -> bool {
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let pair_ports = |p: Port, q: Port, m: &mut Matching, queue: &mut VecDeque<(usize, usize)>| -> bool {
            let (n, c) = match (p, q) {
                (Port::Input(i), Port::Input(j)) | (Port::Output(i), Port::Output(j)) => return i == j,
                (Port::NodeIn(n, i), Port::NodeIn(c, j)) | (Port::NodeOut(n, i), Port::NodeOut(c, j)) => {
                    if i != j {
                        return false;
                    }
                    (n, c)
                }
                _ => return false,
            };
            if self.nodes[n] != other.nodes[c] {
                return false;
            }
            match (m.fwd[n], m.bwd[c]) {
                (Some(x), _) => x == c,
                (None, Some(_)) => false,
                (None, None) => {
                    m.fwd[n] = Some(c);
                    m.bwd[c] = Some(n);
                    queue.push_back((n, c));
                    true
                }
            }
        };
        for (p, q) in seeds {
            match (p, q) {
                (Port::NodeIn(n, usize::MAX), Port::NodeIn(c, usize::MAX)) => {
                    if !pair_ports(Port::NodeIn(n, 0), Port::NodeIn(c, 0), m, &mut queue) {
                        return false;
                    }
                }
                _ => {
                    if !pair_ports(self.wiring[&p], other.wiring[&q], m, &mut queue) {
                        return false;
                    }
                }
            }
        }
        while let Some((n, c)) = queue.pop_front() {
            let node = &self.nodes[n];
            let ports = (0..node.inputs)
                .map(|j| (Port::NodeIn(n, j), Port::NodeIn(c, j)))
                .chain((0..node.outputs).map(|j| (Port::NodeOut(n, j), Port::NodeOut(c, j))));
            for (p, q) in ports {
                if !pair_ports(self.wiring[&p], other.wiring[&q], m, &mut queue) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone)]
struct Matching {
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
}

/// Equality in the free symmetric compact closed category.
pub fn equal_symmetric(sig: &Signature, a: &Diagram, b: &Diagram) -> Result<bool, DiagramError> {
    Ok(normalize_symmetric(sig, a)?.isomorphic(&normalize_symmetric(sig, b)?))
}
