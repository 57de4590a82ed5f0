use std::fmt::Write;
use std::path::Path;

use dualkit_core::equivariant::{
    enumerate_subgroup_classes, fixed_dim, generate_collapse_certificate, members, validate_certificate,
    CollapseCertificate, ConjugacyPoset, PermGroup, Representation, GROUP_PRESETS,
};
use serde_json::{json, Value};

use crate::output::{domain, usage, CliError, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Action {
    Lattice,
    Weyl,
    Fixdim,
    Collapse,
    Validate,
}

fn read_json(path: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))
}

/// A preset name, or a JSON file.
pub fn group(arg: &str) -> Result<PermGroup, CliError> {
    if GROUP_PRESETS.contains(&arg) {
        return PermGroup::preset(arg).map_err(usage);
    }
    if !Path::new(arg).exists() {
        return Err(usage(format!("{arg:?} is neither a group preset ({}) nor a file", GROUP_PRESETS.join(", "))));
    }
    let name = Path::new(arg).file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    PermGroup::from_json(name, &read_json(arg)?).map_err(domain)
}

fn representation(g: &PermGroup, arg: &str) -> Result<Representation, CliError> {
    if Path::new(arg).exists() {
        let name = Path::new(arg).file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        return Representation::from_json(g, name, &read_json(arg)?).map_err(domain);
    }
    Representation::preset(g, arg).map_err(usage)
}

fn perm_json(g: &PermGroup, x: usize) -> Value {
    json!(g.element(x).iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn class_json(p: &ConjugacyPoset, k: usize) -> Value {
    let c = &p.classes[k];
    let rep: Vec<Value> = members(c.representative()).map(|x| perm_json(&p.group, x)).collect();
    json!({
        "class": k,
        "order": c.order,
        "conjugates": c.members.len(),
        "weyl_order": p.weyl_orders[k],
        "below": p.down(k).into_iter().filter(|&j| j != k).collect::<Vec<_>>(),
        "representative": rep,
    })
}

pub struct Args<'a> {
    pub group: &'a str,
    pub rep: Option<&'a str>,
    pub class: Option<usize>,
    pub certificate: Option<&'a str>,
}

pub fn run(action: Action, args: &Args) -> Result<Outcome, CliError> {
    let g = group(args.group)?;
    let p = enumerate_subgroup_classes(&g);
    let header = json!({ "group": g.name, "order": g.order(), "classes": p.len() });
    let mut report = header.clone();
    let ok = match action {
        Action::Lattice => {
            report["lattice"] = (0..p.len()).map(|k| class_json(&p, k)).collect();
            true
        }
        Action::Weyl => {
            let classes: Vec<usize> = match args.class {
                Some(k) if k < p.len() => vec![k],
                Some(k) => return Err(usage(format!("no class {k}; the group has {}", p.len()))),
                None => (0..p.len()).collect(),
            };
            report["weyl"] = classes
                .into_iter()
                .map(|k| {
                    let w = p.weyl_group(k);
                    let reps: Vec<Value> = w.coset_reps.iter().map(|&x| perm_json(&g, x)).collect();
                    json!({ "class": k, "order": w.order, "coset_reps": reps })
                })
                .collect();
            true
        }
        Action::Fixdim => {
            let v = representation(&g, args.rep.ok_or_else(|| usage("fixdim needs --rep"))?)?;
            let dims = p
                .classes
                .iter()
                .map(|c| fixed_dim(&v, c.representative()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(domain)?;
            report["rep"] = json!(v.name);
            report["dim"] = json!(v.dim);
            report["fixed_dims"] = json!(dims);
            true
        }
        Action::Collapse => {
            let v = representation(&g, args.rep.ok_or_else(|| usage("collapse needs --rep"))?)?;
            let cert = generate_collapse_certificate(&p, &v).map_err(domain)?;
            let check = validate_certificate(&cert, &p);
            report["removals"] = json!(cert.removals());
            report["valid"] = json!(check.valid);
            report["certificate"] = serde_json::to_value(&cert).expect("plain data");
            let mut text = String::new();
            let _ = writeln!(text, "group {} (order {}), {} classes, rep {}", g.name, g.order(), p.len(), v.name);
            let base = cert.axioms.len();
            for (i, f) in cert.axioms.iter().enumerate() {
                let _ = writeln!(text, "[{i}] axiom: {f}");
            }
            for (i, s) in cert.steps.iter().enumerate() {
                let _ = writeln!(
                    text,
                    "[{}] {:?}(class {}) from {:?}: {}",
                    base + i,
                    s.rule,
                    s.class,
                    s.premises,
                    s.conclusion
                );
            }
            let _ = writeln!(text, "final: {} ({})", cert.final_fact, if check.valid { "valid" } else { "INVALID" });
            return Ok(Outcome::new(report, check.valid).with_text(text));
        }
        Action::Validate => {
            let path = args.certificate.ok_or_else(|| usage("validate needs --certificate <file>"))?;
            let v = read_json(path)?;
            let v = v.get("certificate").cloned().unwrap_or(v);
            let cert: CollapseCertificate =
                serde_json::from_value(v).map_err(|e| usage(format!("{path}: not a certificate: {e}")))?;
            let check = validate_certificate(&cert, &p);
            report["report"] = serde_json::to_value(&check).expect("plain data");
            check.valid
        }
    };
    Ok(Outcome::new(report, ok))
}
