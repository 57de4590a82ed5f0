use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::lattice::ConjugacyPoset;
use super::rep::{fixed_dim, Representation};
use super::sphere::{interval_smash, IntervalSphere};
use super::EquiError;

/// Statements about a functor `F` that kills `S^V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "kebab-case")]
pub enum Fact {
    /// `F(S^V) = 0`; the fixed-point dimensions are recorded but not used.
    SphereVanishes { rep: String, fixed_dims: Vec<usize> },
    /// `F(S^I) = 0`.
    Vanishes { interval: BTreeSet<usize> },
    /// `F` inverts `S^from -> S^to`.
    LocalMap { from: BTreeSet<usize>, to: BTreeSet<usize> },
    /// `F` inverts `S^0 -> S^U`; for `U` empty this says `F(S^0) = 0`.
    Local { upset: BTreeSet<usize> },
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set =
            |s: &BTreeSet<usize>| format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        match self {
            Fact::SphereVanishes { rep, .. } => write!(f, "F(S^{rep}) = 0"),
            Fact::Vanishes { interval } => write!(f, "F(S^{}) = 0", set(interval)),
            Fact::LocalMap { from, to } => write!(f, "F inverts S^{} -> S^{}", set(from), set(to)),
            Fact::Local { upset } if upset.is_empty() => write!(f, "F(S^0) = 0"),
            Fact::Local { upset } => write!(f, "F inverts S^0 -> S^{}", set(upset)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// A single class dies: its sphere is a suspension of a smash with `S^V`
    /// once stability cancels the suspension.
    SingletonKill,
    /// Smashing `S^{↓H} -> S^0 -> S^{G∖↓H}` with `S^U` leaves the single
    /// class `H` as fiber, which `F` kills.
    CofiberLocal,
    /// Composes `S^0 -> S^U -> S^{U∖H}`.
    SmashRemove,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub rule: Rule,
    pub class: usize,
    /// Indices into the fact list: axioms first, then step conclusions.
    pub premises: Vec<usize>,
    pub conclusion: Fact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseCertificate {
    pub group: String,
    /// `F(S^V) = 0` and the trivial `F inverts S^0 -> S^all`.
    pub axioms: Vec<Fact>,
    pub steps: Vec<CertStep>,
    pub final_fact: Fact,
}

impl CollapseCertificate {
    pub fn removals(&self) -> usize {
        self.steps.iter().filter(|s| s.rule == Rule::SmashRemove).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertReport {
    pub valid: bool,
    pub steps: usize,
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

/// Removes classes one at a time, always the first minimal one in class order.
pub fn generate_collapse_certificate(
    poset: &ConjugacyPoset,
    v: &Representation,
) -> Result<CollapseCertificate, EquiError> {
    let fixed_dims = poset.classes.iter().map(|c| fixed_dim(v, c.representative())).collect::<Result<Vec<_>, _>>()?;
    let axioms = vec![Fact::SphereVanishes { rep: v.name.clone(), fixed_dims }, Fact::Local { upset: poset.all() }];
    let mut steps = Vec::new();
    let mut u = poset.all();
    let mut current = 1;
    while let Some(h) = u.iter().copied().find(|&h| poset.is_minimal_in(h, &u)) {
        let next: BTreeSet<usize> = u.iter().copied().filter(|&k| k != h).collect();
        let base = axioms.len() + steps.len();
        steps.push(CertStep {
            rule: Rule::SingletonKill,
            class: h,
            premises: vec![0],
            conclusion: Fact::Vanishes { interval: BTreeSet::from([h]) },
        });
        steps.push(CertStep {
            rule: Rule::CofiberLocal,
            class: h,
            premises: vec![base, current],
            conclusion: Fact::LocalMap { from: u.clone(), to: next.clone() },
        });
        steps.push(CertStep {
            rule: Rule::SmashRemove,
            class: h,
            premises: vec![current, base + 1],
            conclusion: Fact::Local { upset: next.clone() },
        });
        current = base + 2;
        u = next;
    }
    Ok(CollapseCertificate {
        group: poset.group.name.clone(),
        axioms,
        steps,
        final_fact: Fact::Local { upset: BTreeSet::new() },
    })
}

fn check_step(poset: &ConjugacyPoset, facts: &[Fact], step: &CertStep) -> Result<(), String> {
    let h = step.class;
    if h >= poset.len() {
        return Err(format!("class {h} does not exist"));
    }
    let premise = |k: usize| -> Result<&Fact, String> {
        let i = *step.premises.get(k).ok_or_else(|| format!("missing premise {k}"))?;
        facts.get(i).ok_or_else(|| format!("premise {i} is not derived yet"))
    };
    let arity = match step.rule {
        Rule::SingletonKill => 1,
        _ => 2,
    };
    if step.premises.len() != arity {
        return Err(format!("{:?} takes {arity} premises", step.rule));
    }
    let expected = match step.rule {
        Rule::SingletonKill => {
            if !matches!(premise(0)?, Fact::SphereVanishes { .. }) {
                return Err("premise must be the vanishing of S^V".into());
            }
            Fact::Vanishes { interval: BTreeSet::from([h]) }
        }
        Rule::CofiberLocal => {
            if *premise(0)? != (Fact::Vanishes { interval: BTreeSet::from([h]) }) {
                return Err(format!("needs F(S^{{{h}}}) = 0"));
            }
            let Fact::Local { upset } = premise(1)? else {
                return Err("second premise must be a localization fact".into());
            };
            if !poset.is_upset(upset) {
                return Err("support is not an upset".into());
            }
            if !poset.is_minimal_in(h, upset) {
                return Err(format!("class {h} is not minimal in the current upset"));
            }
            let down = IntervalSphere::new(poset, poset.down(h)).map_err(|e| e.to_string())?;
            let fiber = interval_smash(&down, &IntervalSphere { classes: upset.clone() });
            if fiber.classes != BTreeSet::from([h]) {
                return Err("fiber is not the single class".into());
            }
            let to: BTreeSet<usize> = upset.difference(&down.classes).copied().collect();
            if !poset.is_upset(&to) {
                return Err("cofiber support is not an upset".into());
            }
            Fact::LocalMap { from: upset.clone(), to }
        }
        Rule::SmashRemove => {
            let Fact::Local { upset } = premise(0)? else {
                return Err("first premise must be a localization fact".into());
            };
            let Fact::LocalMap { from, to } = premise(1)? else {
                return Err("second premise must be a local map".into());
            };
            if from != upset {
                return Err("local map does not start at the current support".into());
            }
            if from.difference(to).copied().collect::<Vec<_>>() != vec![h] {
                return Err(format!("step does not remove exactly class {h}"));
            }
            Fact::Local { upset: to.clone() }
        }
    };
    if expected != step.conclusion {
        return Err(format!("concludes {} but the premises give {expected}", step.conclusion));
    }
    Ok(())
}

/// Re-checks every step against the poset alone.
pub fn validate_certificate(cert: &CollapseCertificate, poset: &ConjugacyPoset) -> CertReport {
    let fail = |i: usize, reason: String| CertReport {
        valid: false,
        steps: cert.steps.len(),
        failing_step: Some(i),
        reason: Some(reason),
    };
    let expected_axioms = [
        matches!(cert.axioms.first(), Some(Fact::SphereVanishes { .. })),
        cert.axioms.get(1) == Some(&Fact::Local { upset: poset.all() }),
    ];
    if cert.axioms.len() != 2 || expected_axioms.contains(&false) {
        return fail(0, "axioms must be F(S^V) = 0 and the identity on S^0".into());
    }
    let mut facts = cert.axioms.clone();
    for (i, step) in cert.steps.iter().enumerate() {
        if let Err(reason) = check_step(poset, &facts, step) {
            return fail(i, reason);
        }
        facts.push(step.conclusion.clone());
    }
    if cert.final_fact != (Fact::Local { upset: BTreeSet::new() }) || !facts.contains(&cert.final_fact) {
        return fail(cert.steps.len(), "F(S^0) = 0 is not derived".into());
    }
    CertReport { valid: true, steps: cert.steps.len(), failing_step: None, reason: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::group::PermGroup;
    use crate::equivariant::lattice::enumerate_subgroup_classes;

    fn cert(group: &str, rep: &str) -> (CollapseCertificate, ConjugacyPoset) {
        let g = PermGroup::preset(group).unwrap();
        let p = enumerate_subgroup_classes(&g);
        let v = Representation::preset(&g, rep).unwrap();
        (generate_collapse_certificate(&p, &v).unwrap(), p)
    }

    #[test]
    fn c2_removes_the_trivial_class_then_the_whole_group() {
        let (c, p) = cert("c2", "sign");
        let removed: Vec<usize> = c.steps.iter().filter(|s| s.rule == Rule::SmashRemove).map(|s| s.class).collect();
        assert_eq!(removed, vec![0, 1]);
        assert!(validate_certificate(&c, &p).valid);
        assert_eq!(c.final_fact.to_string(), "F(S^0) = 0");
    }

    #[test]
    fn trivial_group_needs_one_removal() {
        let (c, p) = cert("trivial", "trivial");
        assert_eq!(c.removals(), 1);
        assert!(validate_certificate(&c, &p).valid);
    }

    #[test]
    fn s3_removes_each_class_once() {
        let (c, p) = cert("s3", "reduced-regular");
        assert_eq!(c.removals(), 4);
        assert!(validate_certificate(&c, &p).valid);
    }

    #[test]
    fn removing_a_non_minimal_class_first_fails() {
        let (mut c, p) = cert("s3", "reduced-regular");
        c.steps.swap(2, 5);
        let r = validate_certificate(&c, &p);
        assert!(!r.valid);
    }

    #[test]
    fn missing_singleton_kill_fails_at_the_dependent_step() {
        let (mut c, p) = cert("c2", "sign");
        c.steps.remove(3);
        let r = validate_certificate(&c, &p);
        assert_eq!(r.failing_step, Some(3));
    }
}
