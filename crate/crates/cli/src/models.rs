use dualkit_core::exactlin::NatMatrix;
use dualkit_core::idem::char_split;
use dualkit_core::models::{
    triangle_equations_hold, EvConst, EvMorphism, EvObject, ModelCategory, Product, SpanFin, SpanMorphism, SpanObject,
};
use serde_json::{json, Value};

use crate::output::{domain, usage, CliError, Outcome};

pub fn parse_json(s: &str) -> Result<Value, CliError> {
    serde_json::from_str(s).map_err(|e| usage(format!("invalid JSON {s:?}: {e}")))
}

/// What the `idem` commands need from a model beyond [`ModelCategory`].
pub trait CliModel: ModelCategory {
    fn parse_object(&self, s: &str) -> Result<Self::Obj, CliError>;
    fn parse_morphism(&self, v: &Value) -> Result<Self::Mor, CliError>;
    fn object_json(&self, x: &Self::Obj) -> Value;
    fn morphism_json(&self, f: &Self::Mor) -> Value;
    fn scalar(&self, x: &Self::Obj, k: u64) -> Self::Mor;
    /// The standard `r: S → E` and `i: E → S` when `E` has one.
    fn standard_structure(&self, e: &Self::Obj) -> Result<(Self::Mor, Self::Mor), CliError>;
}

impl CliModel for EvConst {
    fn parse_object(&self, s: &str) -> Result<EvObject, CliError> {
        if s.trim_start().starts_with('{') {
            EvObject::from_json(&parse_json(s)?).map_err(usage)
        } else {
            s.parse().map_err(usage)
        }
    }

    fn parse_morphism(&self, v: &Value) -> Result<EvMorphism, CliError> {
        EvMorphism::from_json(v).map_err(usage)
    }

    fn object_json(&self, x: &EvObject) -> Value {
        x.to_json()
    }

    fn morphism_json(&self, f: &EvMorphism) -> Value {
        f.to_json()
    }

    fn scalar(&self, x: &EvObject, k: u64) -> EvMorphism {
        EvMorphism::scalar(x, k as i64)
    }

    fn standard_structure(&self, e: &EvObject) -> Result<(EvMorphism, EvMorphism), CliError> {
        let s = self.unit();
        if *e == s {
            return Ok((self.identity(&s), self.identity(&s)));
        }
        if e.is_zero() {
            return Ok((self.zero_mor(&s, e), self.zero_mor(e, &s)));
        }
        let exc = e.exceptional();
        let m: u64 = exc.keys().product();
        match e.free_rank() {
            0 if exc.values().all(|&d| d == 1) => {
                let t = char_split(m, &s).map_err(domain)?.torsion_idempotent;
                Ok((t.r, t.i))
            }
            1 if exc.values().all(|&d| d == 0) => {
                let c = char_split(m, &s).map_err(domain)?.complement;
                Ok((c.r, c.i))
            }
            _ => Err(domain(format!("{e} is not S, 0, S/m or S(m); it has no standard retract structure"))),
        }
    }
}

impl CliModel for SpanFin {
    fn parse_object(&self, s: &str) -> Result<SpanObject, CliError> {
        s.trim().parse().map(SpanObject).map_err(|_| usage(format!("span objects are sizes, not {s:?}")))
    }

    fn parse_morphism(&self, v: &Value) -> Result<SpanMorphism, CliError> {
        SpanMorphism::from_json(v).map_err(usage)
    }

    fn object_json(&self, x: &SpanObject) -> Value {
        json!(x.0)
    }

    fn morphism_json(&self, f: &SpanMorphism) -> Value {
        f.to_json()
    }

    fn scalar(&self, x: &SpanObject, k: u64) -> SpanMorphism {
        SpanMorphism::new(x.0, x.0, NatMatrix::identity(x.0).scale(&k.into())).expect("square")
    }

    fn standard_structure(&self, e: &SpanObject) -> Result<(SpanMorphism, SpanMorphism), CliError> {
        let s = self.unit();
        match e.0 {
            0 => Ok((self.zero_mor(&s, e), self.zero_mor(e, &s))),
            1 => Ok((self.identity(&s), self.identity(&s))),
            _ => Err(domain(format!("{} has no standard retract structure over {}; pass --r and --i", e.0, s.0))),
        }
    }
}

/// Product objects are written `X|n`.
impl CliModel for Product<EvConst, SpanFin> {
    fn parse_object(&self, s: &str) -> Result<(EvObject, SpanObject), CliError> {
        let (a, b) =
            s.split_once('|').ok_or_else(|| usage(format!("product objects look like \"S/2|1\", not {s:?}")))?;
        Ok((self.left.parse_object(a)?, self.right.parse_object(b)?))
    }

    fn parse_morphism(&self, v: &Value) -> Result<(EvMorphism, SpanMorphism), CliError> {
        let part = |k: &str| v.get(k).ok_or_else(|| usage(format!("product morphism needs {k:?}")));
        Ok((self.left.parse_morphism(part("left")?)?, self.right.parse_morphism(part("right")?)?))
    }

    fn object_json(&self, x: &(EvObject, SpanObject)) -> Value {
        json!({ "left": self.left.object_json(&x.0), "right": self.right.object_json(&x.1) })
    }

    fn morphism_json(&self, f: &(EvMorphism, SpanMorphism)) -> Value {
        json!({ "left": self.left.morphism_json(&f.0), "right": self.right.morphism_json(&f.1) })
    }

    fn scalar(&self, x: &(EvObject, SpanObject), k: u64) -> (EvMorphism, SpanMorphism) {
        (self.left.scalar(&x.0, k), self.right.scalar(&x.1, k))
    }

    fn standard_structure(
        &self,
        e: &(EvObject, SpanObject),
    ) -> Result<((EvMorphism, SpanMorphism), (EvMorphism, SpanMorphism)), CliError> {
        let (r1, i1) = self.left.standard_structure(&e.0)?;
        let (r2, i2) = self.right.standard_structure(&e.1)?;
        Ok(((r1, r2), (i1, i2)))
    }
}

fn compose_report<C: CliModel>(model: &C, f: &str, g: &str) -> Result<Outcome, CliError> {
    let (f, g) = (model.parse_morphism(&parse_json(f)?)?, model.parse_morphism(&parse_json(g)?)?);
    let h = model.compose(&g, &f).map_err(domain)?;
    Ok(Outcome::new(json!({ "result": model.morphism_json(&h) }), true))
}

fn tensor_report<C: CliModel>(model: &C, f: &str, g: &str) -> Result<Outcome, CliError> {
    let (f, g) = (model.parse_morphism(&parse_json(f)?)?, model.parse_morphism(&parse_json(g)?)?);
    Ok(Outcome::new(json!({ "result": model.morphism_json(&model.tensor(&f, &g)) }), true))
}

fn cofiber_report<C: CliModel>(model: &C, f: &C::Mor) -> Result<Outcome, CliError> {
    let c = model.cofiber(f).map_err(domain)?;
    Ok(Outcome::new(
        json!({
            "cofiber": model.object_json(&c.object),
            "quotient": model.morphism_json(&c.quotient),
            "provenance": c.provenance,
        }),
        true,
    ))
}

pub fn span_compose(f: &str, g: &str) -> Result<Outcome, CliError> {
    compose_report(&SpanFin, f, g)
}

pub fn span_tensor(f: &str, g: &str) -> Result<Outcome, CliError> {
    tensor_report(&SpanFin, f, g)
}

pub fn span_dual_check(n: usize) -> Result<Outcome, CliError> {
    let d = SpanFin.duality(&SpanObject(n));
    let holds = triangle_equations_hold(&SpanFin, &d).map_err(domain)?;
    Ok(Outcome::new(
        json!({
            "object": n,
            "unit": d.unit.to_json(),
            "counit": d.counit.to_json(),
            "triangle_equations": holds,
        }),
        holds,
    ))
}

/// `sizes = (a, b)` names the function `a → b`, `i ↦ i mod b`.
pub fn span_cofiber(morphism: Option<&str>, shape: Option<&str>, sizes: Option<&[usize]>) -> Result<Outcome, CliError> {
    let f = match (morphism, shape, sizes) {
        (Some(m), None, None) => SpanFin.parse_morphism(&parse_json(m)?)?,
        (None, Some(shape), Some(&[a, b])) => {
            if a > 0 && b == 0 {
                return Err(usage(format!("there is no function {a} → 0")));
            }
            let map: Vec<usize> = (0..a).map(|i| i % b.max(1)).collect();
            match shape {
                "forward" => SpanMorphism::forward(b, &map),
                "backward" => SpanMorphism::backward(b, &map),
                other => return Err(usage(format!("unknown shape {other:?}; use forward or backward"))),
            }
        }
        _ => return Err(usage("give either --morphism or both --shape and --sizes a,b")),
    };
    cofiber_report(&SpanFin, &f).map(|o| {
        let mut report = o.report;
        report["input"] = f.to_json();
        Outcome::new(report, o.ok)
    })
}

pub fn evconst_compose(f: &str, g: &str) -> Result<Outcome, CliError> {
    compose_report(&EvConst, f, g)
}

pub fn evconst_biproduct(x: &str, y: &str) -> Result<Outcome, CliError> {
    let (x, y) = (EvConst.parse_object(x)?, EvConst.parse_object(y)?);
    let b = EvConst.biproduct(&x, &y);
    Ok(Outcome::new(
        json!({
            "object": b.object.to_json(),
            "inj1": b.inj1.to_json(),
            "inj2": b.inj2.to_json(),
            "proj1": b.proj1.to_json(),
            "proj2": b.proj2.to_json(),
        }),
        true,
    ))
}

pub fn evconst_cofiber(morphism: &str) -> Result<Outcome, CliError> {
    let f = EvConst.parse_morphism(&parse_json(morphism)?)?;
    cofiber_report(&EvConst, &f)
}

pub fn evconst_split(m: u64, object: &str) -> Result<Outcome, CliError> {
    if m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    let x = EvConst.parse_object(object)?;
    let s = char_split(m, &x).map_err(domain)?;
    let zero = EvConst.tensor_obj(&s.torsion_idempotent.object, &s.complement.object).is_zero();
    let ok = s.reassembly_invertible && zero;
    Ok(Outcome::new(
        json!({
            "m": m,
            "object": x.to_json(),
            "torsion_idempotent": s.torsion_idempotent.object.to_json(),
            "complement": s.complement.object.to_json(),
            "torsion_part": s.torsion_part.to_json(),
            "free_part": s.free_part.to_json(),
            "idempotent_smash_complement_is_zero": zero,
            "reassembly_invertible": s.reassembly_invertible,
            "verdict": ok,
        }),
        ok,
    ))
}
