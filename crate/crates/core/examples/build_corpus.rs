//! Regenerates the bundled proof traces under `data/traces/`.
//!
//! Each trace is given by its signature, hypotheses, endpoints and a few
//! waypoints; the steps between consecutive waypoints are found by a
//! bidirectional breadth-first search over single rule applications.
//!
//! Run with `cargo run --release -p dualkit-core --example build_corpus`.

use std::collections::{HashMap, VecDeque};
use std::path::PathBuf;

use dualkit_core::diagram::{
    validate_trace, word, Cell, Diagram, Direction, DualPair, Flavor, Hypothesis, Location, RewriteTrace, RuleSet,
    Signature, TraceStep,
};

#[derive(Clone, Copy)]
struct Limits {
    layers: usize,
    width: usize,
}

/// `"B+@0 s@1 cup:T@2 cap:T@0 q~@0"`
fn parse(sig: &Signature, dom: &str, cells: &str) -> Diagram {
    let layers: Vec<(usize, Cell)> = cells
        .split_whitespace()
        .map(|tok| {
            let (c, o) = tok.rsplit_once('@').expect("cell@offset");
            let o: usize = o.parse().expect("offset");
            let cell = match c {
                "B+" => Cell::BraidPos,
                "B-" => Cell::BraidNeg,
                _ if c.starts_with("cup:") => Cell::Cup(c[4..].into()),
                _ if c.starts_with("cap:") => Cell::Cap(c[4..].into()),
                _ if c.ends_with('~') => Cell::GenInv(c[..c.len() - 1].into()),
                _ => Cell::Gen(c.into()),
            };
            (o, cell)
        })
        .collect();
    Diagram::build(sig, word(dom).unwrap(), &layers).unwrap_or_else(|e| panic!("{cells}: {e}"))
}

fn neighbours(sig: &Signature, rules: &RuleSet, d: &Diagram, lim: Limits) -> Vec<(TraceStep, Diagram)> {
    let ws = d.words(sig).unwrap();
    let width = ws.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::new();
    for rule in rules.iter() {
        for dir in [Direction::Forward, Direction::Backward] {
            for k in 0..=d.len() {
                for o in 0..=width {
                    if let Ok(next) = rule.apply(sig, d, dir, Location::new(k, o)) {
                        let w = next.words(sig).unwrap().iter().map(Vec::len).max().unwrap_or(0);
                        if next.len() <= lim.layers && w <= lim.width {
                            out.push((TraceStep::new(&rule.id, dir, k, o), next));
                        }
                    }
                }
            }
        }
    }
    out
}

fn step_between(sig: &Signature, rules: &RuleSet, from: &Diagram, to: &Diagram) -> TraceStep {
    neighbours(sig, rules, from, Limits { layers: usize::MAX, width: usize::MAX })
        .into_iter()
        .find(|(_, n)| n == to)
        .map(|(s, _)| s)
        .expect("every move is reversible")
}

/// Shortest derivation from `a` to `b`.
fn search(sig: &Signature, rules: &RuleSet, a: &Diagram, b: &Diagram, lim: Limits) -> Option<Vec<TraceStep>> {
    if a == b {
        return Some(Vec::new());
    }
    let mut seen_a: HashMap<Diagram, Option<(Diagram, TraceStep)>> = HashMap::new();
    let mut seen_b: HashMap<Diagram, Option<Diagram>> = HashMap::new();
    seen_a.insert(a.clone(), None);
    seen_b.insert(b.clone(), None);
    let mut qa = VecDeque::from([a.clone()]);
    let mut qb = VecDeque::from([b.clone()]);
    let mut meet = None;
    'outer: while !qa.is_empty() || !qb.is_empty() {
        if seen_a.len() + seen_b.len() > 3_000_000 {
            return None;
        }
        let expand_a = !qa.is_empty() && (qa.len() <= qb.len() || qb.is_empty());
        if expand_a {
            for _ in 0..qa.len() {
                let d = qa.pop_front().unwrap();
                for (s, n) in neighbours(sig, rules, &d, lim) {
                    if seen_a.contains_key(&n) {
                        continue;
                    }
                    seen_a.insert(n.clone(), Some((d.clone(), s)));
                    if seen_b.contains_key(&n) {
                        meet = Some(n);
                        break 'outer;
                    }
                    qa.push_back(n);
                }
            }
        } else {
            for _ in 0..qb.len() {
                let d = qb.pop_front().unwrap();
                for (_, n) in neighbours(sig, rules, &d, lim) {
                    if seen_b.contains_key(&n) {
                        continue;
                    }
                    seen_b.insert(n.clone(), Some(d.clone()));
                    if seen_a.contains_key(&n) {
                        meet = Some(n);
                        break 'outer;
                    }
                    qb.push_back(n);
                }
            }
        }
    }
    let meet = meet?;
    let mut front = Vec::new();
    let mut cur = meet.clone();
    while let Some(Some((prev, s))) = seen_a.get(&cur) {
        front.push(s.clone());
        cur = prev.clone();
    }
    front.reverse();
    let mut cur = meet;
    while let Some(Some(next)) = seen_b.get(&cur) {
        front.push(step_between(sig, rules, &cur, next));
        cur = next.clone();
    }
    Some(front)
}

struct Plan {
    name: &'static str,
    statement: &'static str,
    sig: Signature,
    hyps: Vec<(&'static str, Diagram, Diagram)>,
    start: Diagram,
    /// Diagrams the derivation must pass through, the last one being the end.
    legs: Vec<Diagram>,
    limits: Limits,
}

fn build(plan: Plan) -> RewriteTrace {
    let mut trace = RewriteTrace {
        name: plan.name.into(),
        statement: plan.statement.into(),
        signature: plan.sig.clone(),
        hypotheses: plan
            .hyps
            .iter()
            .map(|(id, l, r)| Hypothesis { id: id.to_string(), lhs: l.clone(), rhs: r.clone() })
            .collect(),
        start: plan.start.clone(),
        steps: Vec::new(),
        end: plan.start.clone(),
    };
    let rules = trace.rules().unwrap();
    let sig = &plan.sig;
    let mut cur = plan.start.clone();
    for (i, target) in plan.legs.iter().enumerate() {
        let steps = search(sig, &rules, &cur, target, plan.limits)
            .unwrap_or_else(|| panic!("{}: leg {i} not found from {} to {}", plan.name, cur.show(), target.show()));
        for s in &steps {
            cur = rules.get(&s.rule).unwrap().apply(sig, &cur, s.dir, s.location()).unwrap();
        }
        trace.steps.extend(steps);
    }
    trace.end = cur;
    let report = validate_trace(&trace);
    assert!(report.valid, "{report:?}");
    trace
}

fn twist_sig() -> Signature {
    Signature::new(Flavor::Braided, &["T"]).generator("s", "T", "T").generator("t", "T", "T")
}

fn twist_spec(name: &'static str, statement: &'static str, from: &str, to: &str) -> Plan {
    let sig = twist_sig();
    let beta = parse(&sig, "T T", "B+@0");
    Plan {
        name,
        statement,
        hyps: vec![("hyp", beta.clone(), parse(&sig, "T T", from))],
        start: beta,
        legs: vec![parse(&sig, "T T", to)],
        sig,
        limits: Limits { layers: 7, width: 2 },
    }
}

#[allow(clippy::too_many_arguments)]
fn plan(
    name: &'static str,
    statement: &'static str,
    sig: Signature,
    hyps: &[(&'static str, &str, &str, &str)],
    dom: &str,
    start: &str,
    waypoints: &[&str],
    limits: Limits,
) -> Plan {
    let hyps = hyps.iter().map(|(id, d, l, r)| (*id, parse(&sig, d, l), parse(&sig, d, r))).collect();
    let legs = waypoints.iter().map(|w| parse(&sig, dom, w)).collect();
    Plan { name, statement, hyps, start: parse(&sig, dom, start), legs, sig, limits }
}

fn closed_sig() -> Signature {
    Signature::new(Flavor::Braided, &["E"]).generator("r", "", "E").generator("q", "E", "E E").invertible("q")
}

const CLOSED: (&str, &str, &str, &str) = ("closed", "E", "q@0", "r@0");
const TRIVIAL: (&str, &str, &str, &str) = ("trivial-braiding", "E E", "B+@0", "");

fn specs() -> Vec<Plan> {
    let mut out = vec![
        twist_spec("twist-st-implies-ts", "β = s⊗t implies β = t⊗s", "s@0 t@1", "t@0 s@1"),
        twist_spec("twist-ts-implies-st", "β = t⊗s implies β = s⊗t", "t@0 s@1", "s@0 t@1"),
        twist_spec("twist-st-implies-id-st", "β = s⊗t implies β = id⊗(s∘t)", "s@0 t@1", "t@1 s@1"),
        twist_spec("twist-id-st-implies-st", "β = id⊗(s∘t) implies β = s⊗t", "t@1 s@1", "s@0 t@1"),
        twist_spec("twist-ts-implies-id-ts", "β = t⊗s implies β = id⊗(t∘s)", "t@0 s@1", "s@1 t@1"),
        twist_spec("twist-id-ts-implies-ts", "β = id⊗(t∘s) implies β = t⊗s", "s@1 t@1", "t@0 s@1"),
        twist_spec("twist-st-id-implies-id-st", "β = (s∘t)⊗id implies β = id⊗(s∘t)", "t@0 s@0", "t@1 s@1"),
        twist_spec("twist-id-st-implies-st-id", "β = id⊗(s∘t) implies β = (s∘t)⊗id", "t@1 s@1", "t@0 s@0"),
        twist_spec("twist-ts-id-implies-id-ts", "β = (t∘s)⊗id implies β = id⊗(t∘s)", "s@0 t@0", "s@1 t@1"),
        twist_spec("twist-id-ts-implies-ts-id", "β = id⊗(t∘s) implies β = (t∘s)⊗id", "s@1 t@1", "s@0 t@0"),
    ];
    let tt = Signature::new(Flavor::Braided, &["T"]).generator("t", "T", "T").twist("t", "T");
    out.push(plan(
        "twisted-trivial-implies-symmetric",
        "β = id⊗t implies (id⊗β⁻¹)(β⊗id) = id on T⊗T⊗T",
        tt,
        &[("twisted-trivial", "T T", "B+@0", "t@1")],
        "T T T",
        "B+@0 B-@1",
        &[""],
        Limits { layers: 6, width: 3 },
    ));
    let dual = Signature::new(Flavor::Braided, &["T"]).dual_pair(DualPair::new("T"));
    out.push(plan(
        "symmetric-dual-implies-euler-twist",
        "a symmetric dualizable T has β = id⊗(ε∘β⁻¹∘η)",
        dual,
        &[("symmetric", "T T T", "B+@0 B-@1", "")],
        "T T",
        "B+@0",
        &["cup:T@2 B-@2 cap:T@2"],
        Limits { layers: 8, width: 5 },
    ));
    let faithful = Signature::new(Flavor::Braided, &["E", "X", "Y"])
        .generator("r", "", "E")
        .generator("q", "E", "E E")
        .invertible("q")
        .generator("f", "E X", "E Y")
        .generator("g", "E X", "E Y");
    out.push(plan(
        "smashing-localization-faithful",
        "id_E⊗f = id_E⊗g implies f = g for f, g: E⊗X → E⊗Y when r⊗id_E is invertible",
        faithful,
        &[CLOSED, ("hyp", "E E X", "f@1", "g@1")],
        "E X",
        "f@0",
        &["g@0"],
        Limits { layers: 6, width: 4 },
    ));
    out.push(plan(
        "smashing-localization-unit-commutes",
        "r⊗id_E = id_E⊗r for a closed idempotent (E, r)",
        closed_sig(),
        &[CLOSED],
        "E",
        "r@0",
        &["r@1"],
        Limits { layers: 7, width: 3 },
    ));
    out.push(plan(
        "clopen-trivial-braiding",
        "a closed idempotent E has β_{E,E} = id",
        closed_sig(),
        &[CLOSED],
        "E E",
        "B+@0",
        &[""],
        Limits { layers: 7, width: 3 },
    ));
    let both = Signature::new(Flavor::Braided, &["E"])
        .generator("r", "", "E")
        .generator("i", "E", "")
        .generator("u", "E", "E E")
        .generator("v", "E E", "E")
        .invertible("u")
        .invertible("v");
    out.push(plan(
        "clopen-b-implies-a-stability",
        "closed (E, r) and open (E, i) give i'r⊗id_E = id_E for i' = i∘(id_E⊗r)⁻¹∘(id_E⊗i)⁻¹",
        both,
        &[("closed", "E", "u@0", "r@1"), ("open", "E E", "v@0", "i@1"), TRIVIAL],
        "E",
        "r@0 v~@0 u~@0 i@0",
        &[""],
        Limits { layers: 8, width: 4 },
    ));
    let split = Signature::new(Flavor::Braided, &["E"]).generator("r", "", "E").generator("j", "E", "");
    out.push(plan(
        "clopen-b-implies-a-splitting",
        "stability jr⊗id_E = id_E and trivial braiding give r∘j = id_E",
        split,
        &[("stability", "E", "r@0 j@0", ""), TRIVIAL],
        "E",
        "j@0 r@0",
        &[""],
        Limits { layers: 5, width: 3 },
    ));
    let clopen = Signature::new(Flavor::Braided, &["E"]).generator("r", "", "E").generator("i", "E", "");
    out.push(plan(
        "clopen-a-implies-c-triangle",
        "a clopen idempotent is self-dual with unit r⊗r and counit i⊗i",
        clopen.clone(),
        &[("splitting", "E", "i@0 r@0", ""), ("stability", "E", "r@0 i@0", "")],
        "E",
        "r@1 r@2 i@0 i@0",
        &[""],
        Limits { layers: 6, width: 4 },
    ));
    let mut flipped = DualPair::new("E");
    flipped.flipped = true;
    let open = closed_sig().dual_pair(flipped);
    out.push(plan(
        "clopen-c-implies-b-open",
        "for dualizable closed E, id_E⊗(i∘r) = id_E with i = ε∘β∘((r⊗id_E)⁻¹⊗id)∘(id_E⊗η)",
        open,
        &[CLOSED, TRIVIAL],
        "E",
        "r@1 cup:E@2 q~@1 B+@1 cap:E@1",
        &[""],
        Limits { layers: 7, width: 4 },
    ));
    let unique =
        Signature::new(Flavor::Braided, &["E"]).generator("r", "", "E").generator("i", "E", "").generator("k", "E", "");
    out.push(plan(
        "clopen-uniqueness",
        "two clopen structures (r, i) and (r, k) have i = k",
        unique,
        &[("splitting", "E", "k@0 r@0", ""), ("stability", "E", "r@0 i@0", "")],
        "E",
        "i@0",
        &["k@0"],
        Limits { layers: 5, width: 2 },
    ));
    let untwist =
        Signature::new(Flavor::Braided, &["T"]).dual_pair(DualPair::new("T")).generator("t", "T", "T").twist("t", "T");
    out.push(plan(
        "untwist-splitting",
        "r∘i = id on T^∨⊗T for r = (id⊗t)∘η and i = ε∘β",
        untwist.clone(),
        &[("twisted-trivial", "T T", "B+@0", "t@1")],
        "T^ T",
        "B+@0 cap:T@0 cup:T@0 t@1",
        &[""],
        Limits { layers: 7, width: 4 },
    ));
    out.push(plan(
        "untwist-stability",
        "i∘r⊗id_T = id_T for r = (id⊗t)∘η and i = ε∘β",
        untwist,
        &[("twisted-trivial", "T T", "B+@0", "t@1")],
        "T",
        "cup:T@0 t@1 B+@0 cap:T@0",
        &[""],
        Limits { layers: 6, width: 3 },
    ));
    out
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/traces");
    std::fs::create_dir_all(&dir).unwrap();
    let only: Vec<String> = std::env::args().skip(1).collect();
    for plan in specs() {
        if !only.is_empty() && !only.iter().any(|n| n == plan.name) {
            continue;
        }
        let t0 = std::time::Instant::now();
        let name = plan.name;
        let trace = build(plan);
        let text = serde_json::to_string_pretty(&trace.to_json().unwrap()).unwrap();
        std::fs::write(dir.join(format!("{name}.json")), text + "\n").unwrap();
        println!("{name}: {} steps ({:.2?})", trace.steps.len(), t0.elapsed());
    }
}
