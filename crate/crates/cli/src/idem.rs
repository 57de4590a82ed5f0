use dualkit_core::idem::{
    complement_of_retract, euler_twist, gp_idempotent, is_clopen, is_closed_idempotent, sample_pairs, split_homs_check,
    untwist, IdemError,
};
use serde_json::json;

use crate::models::{parse_json, CliModel};
use crate::output::{domain, usage, CliError, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Action {
    Closed,
    Clopen,
    Untwist,
    Euler,
    Complement,
    SplitHoms,
    Gp,
}

pub struct Args<'a> {
    pub object: Option<&'a str>,
    pub r: Option<&'a str>,
    pub i: Option<&'a str>,
    pub twist: u64,
    pub samples: usize,
    pub seed: u64,
}

fn object<C: CliModel>(model: &C, args: &Args) -> Result<C::Obj, CliError> {
    model.parse_object(args.object.ok_or_else(|| usage("this action needs --object"))?)
}

fn structure<C: CliModel>(model: &C, e: &C::Obj, args: &Args) -> Result<(C::Mor, C::Mor), CliError> {
    match (args.r, args.i) {
        (None, None) => model.standard_structure(e),
        (Some(r), Some(i)) => Ok((model.parse_morphism(&parse_json(r)?)?, model.parse_morphism(&parse_json(i)?)?)),
        _ => Err(usage("give both --r and --i, or neither")),
    }
}

pub fn run<C: CliModel>(model: &C, action: Action, args: &Args) -> Result<Outcome, CliError> {
    let name = model.name();
    match action {
        Action::Closed => {
            let e = object(model, args)?;
            let (r, _) = structure(model, &e, args)?;
            let verdict = is_closed_idempotent(model, &e, &r).map_err(domain)?;
            let report = json!({
                "check": "closed", "model": name, "object": model.object_json(&e),
                "r": model.morphism_json(&r), "verdict": verdict,
            });
            Ok(Outcome::new(report, verdict))
        }
        Action::Clopen => {
            let e = object(model, args)?;
            let (r, i) = structure(model, &e, args)?;
            let verdict = is_clopen(model, &e, &r, &i).map_err(domain)?;
            let report = json!({
                "check": "clopen", "model": name, "object": model.object_json(&e),
                "r": model.morphism_json(&r), "i": model.morphism_json(&i), "verdict": verdict,
            });
            Ok(Outcome::new(report, verdict))
        }
        Action::Euler => {
            let t_obj = object(model, args)?;
            let t = euler_twist(model, &model.duality(&t_obj)).map_err(domain)?;
            let report =
                json!({ "model": name, "object": model.object_json(&t_obj), "twist": model.morphism_json(&t) });
            Ok(Outcome::new(report, true))
        }
        Action::Untwist => {
            let t_obj = object(model, args)?;
            let t = model.scalar(&t_obj, args.twist);
            match untwist(model, &model.duality(&t_obj), &t) {
                Ok(c) => {
                    let verdict = is_clopen(model, &c.object, &c.r, &c.i).map_err(domain)?;
                    let report = json!({
                        "check": "untwist", "model": name, "object": model.object_json(&t_obj), "twist": args.twist,
                        "idempotent": model.object_json(&c.object), "r": model.morphism_json(&c.r),
                        "i": model.morphism_json(&c.i), "verdict": verdict,
                    });
                    Ok(Outcome::new(report, verdict))
                }
                Err(IdemError::NotTwistedTrivial) => {
                    let report = json!({
                        "check": "untwist", "model": name, "object": model.object_json(&t_obj), "twist": args.twist,
                        "verdict": false, "reason": IdemError::NotTwistedTrivial.to_string(),
                    });
                    Ok(Outcome::new(report, false))
                }
                Err(e) => Err(domain(e)),
            }
        }
        Action::Complement => {
            let e = object(model, args)?;
            let (r, i) = structure(model, &e, args)?;
            let c = complement_of_retract(model, &e, &r, &i).map_err(domain)?;
            let clopen = is_clopen(model, &c.object, &c.r, &c.i).map_err(domain)?;
            let disjoint = model.is_zero_object(&model.tensor_obj(&e, &c.object));
            let report = json!({
                "check": "complement", "model": name, "object": model.object_json(&e),
                "complement": model.object_json(&c.object), "r": model.morphism_json(&c.r),
                "i": model.morphism_json(&c.i), "complement_clopen": clopen,
                "object_smash_complement_is_zero": disjoint, "verdict": clopen && disjoint,
            });
            Ok(Outcome::new(report, clopen && disjoint))
        }
        Action::SplitHoms => {
            let e = object(model, args)?;
            let (r, i) = structure(model, &e, args)?;
            let c = complement_of_retract(model, &e, &r, &i).map_err(domain)?;
            let pairs = sample_pairs(model, args.seed, args.samples, true);
            let rep = split_homs_check(model, &e, &c.object, &pairs).map_err(domain)?;
            let mut report = serde_json::to_value(&rep).expect("plain data");
            report["model"] = json!(name);
            report["seed"] = json!(args.seed);
            report["complement"] = model.object_json(&c.object);
            Ok(Outcome::new(report, rep.verdict))
        }
        Action::Gp => {
            let gp = gp_idempotent(model).map_err(domain)?;
            let closed = is_closed_idempotent(model, &gp.object, &gp.r).map_err(domain)?;
            let report = json!({
                "check": "gp", "model": name, "object": model.object_json(&gp.object),
                "r": model.morphism_json(&gp.r), "verdict": closed,
            });
            Ok(Outcome::new(report, closed))
        }
    }
}
