use std::collections::BTreeSet;

use serde::Serialize;

use super::group::PermGroup;
use super::lattice::ConjugacyPoset;
use super::EquiError;

/// The sphere supported on an order-convex set of subgroup classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IntervalSphere {
    pub classes: BTreeSet<usize>,
}

impl IntervalSphere {
    pub fn new(poset: &ConjugacyPoset, classes: BTreeSet<usize>) -> Result<Self, EquiError> {
        if let Some(&bad) = classes.iter().find(|&&c| c >= poset.len()) {
            return Err(EquiError::ClassOutOfRange(bad));
        }
        if !poset.is_convex(&classes) {
            return Err(EquiError::NotConvex(classes.into_iter().collect()));
        }
        Ok(Self { classes })
    }

    /// `S^0`, supported everywhere.
    pub fn full(poset: &ConjugacyPoset) -> Self {
        Self { classes: poset.all() }
    }

    /// The zero object.
    pub fn empty() -> Self {
        Self { classes: BTreeSet::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn interval_smash(i: &IntervalSphere, j: &IntervalSphere) -> IntervalSphere {
    IntervalSphere { classes: i.classes.intersection(&j.classes).copied().collect() }
}

/// `S^D -> S^0 -> S^U` for a downset `D` and its complement `U`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofiberSequence {
    pub fiber: IntervalSphere,
    pub total: IntervalSphere,
    pub cofiber: IntervalSphere,
}

pub fn cofiber_upset_sequence(poset: &ConjugacyPoset, d: &BTreeSet<usize>) -> Result<CofiberSequence, EquiError> {
    if d.iter().any(|&c| c >= poset.len()) || !poset.is_downset(d) {
        return Err(EquiError::NotADownset(d.iter().copied().collect()));
    }
    let u: BTreeSet<usize> = poset.all().difference(d).copied().collect();
    debug_assert!(poset.is_upset(&u));
    Ok(CofiberSequence {
        fiber: IntervalSphere { classes: d.clone() },
        total: IntervalSphere::full(poset),
        cofiber: IntervalSphere { classes: u },
    })
}

/// Checks `act[g][x] = g·x` is a left action of `group`.
pub fn check_action(group: &PermGroup, act: &[Vec<usize>]) -> Result<usize, EquiError> {
    if act.len() != group.order() {
        return Err(EquiError::InvalidAction(format!("{} rows for {} elements", act.len(), group.order())));
    }
    let n = act[0].len();
    for (g, row) in act.iter().enumerate() {
        let distinct: BTreeSet<usize> = row.iter().copied().collect();
        if row.len() != n || distinct.len() != n || row.iter().any(|&y| y >= n) {
            return Err(EquiError::InvalidAction(format!("element {g} does not act bijectively")));
        }
    }
    if act[0].iter().enumerate().any(|(x, &y)| x != y) {
        return Err(EquiError::InvalidAction("the identity moves a point".into()));
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            for x in 0..n {
                if act[group.mul(g, h)][x] != act[g][act[h][x]] {
                    return Err(EquiError::InvalidAction(format!("(gh)x != g(hx) for g={g}, h={h}, x={x}")));
                }
            }
        }
    }
    Ok(n)
}

/// Whether `(g, x) -> (g, gx)` is an equivariant bijection from `G × X`
/// acting on the first factor to `G × X` acting diagonally, with inverse
/// `(g, y) -> (g, g⁻¹y)`.
pub fn untwisting_check(group: &PermGroup, act: &[Vec<usize>]) -> Result<bool, EquiError> {
    let n = check_action(group, act)?;
    let order = group.order();
    let phi = |(g, x): (usize, usize)| (g, act[g][x]);
    let psi = |(g, y): (usize, usize)| (g, act[group.inv(g)][y]);
    let pairs: Vec<(usize, usize)> = (0..order).flat_map(|g| (0..n).map(move |x| (g, x))).collect();
    let image: BTreeSet<(usize, usize)> = pairs.iter().map(|&p| phi(p)).collect();
    if image.len() != pairs.len() {
        return Ok(false);
    }
    for &(g, x) in &pairs {
        if psi(phi((g, x))) != (g, x) || phi(psi((g, x))) != (g, x) {
            return Ok(false);
        }
        let (a, b) = phi((g, x));
        for (h, h_act) in act.iter().enumerate() {
            if phi((group.mul(h, g), x)) != (group.mul(h, a), h_act[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::lattice::enumerate_subgroup_classes;

    fn s3() -> ConjugacyPoset {
        enumerate_subgroup_classes(&PermGroup::preset("s3").unwrap())
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn smash_is_intersection() {
        let p = s3();
        let i = IntervalSphere::new(&p, set(&[1])).unwrap();
        let j = IntervalSphere::new(&p, set(&[1, 2])).unwrap();
        assert_eq!(interval_smash(&i, &j), i);
        assert_eq!(interval_smash(&i, &i), i);
    }

    #[test]
    fn upset_meets_downset_in_an_interval() {
        let p = s3();
        let u = IntervalSphere::new(&p, p.up(1)).unwrap();
        let d = IntervalSphere::new(&p, p.down(1)).unwrap();
        assert_eq!(interval_smash(&u, &d).classes, set(&[1]));
    }

    #[test]
    fn non_convex_sets_are_rejected() {
        assert!(matches!(IntervalSphere::new(&s3(), set(&[0, 3])), Err(EquiError::NotConvex(_))));
    }

    #[test]
    fn cofiber_sequences() {
        let p = s3();
        assert_eq!(cofiber_upset_sequence(&p, &set(&[0])).unwrap().cofiber.classes, set(&[1, 2, 3]));
        assert!(cofiber_upset_sequence(&p, &p.all()).unwrap().cofiber.is_zero());
        let empty = cofiber_upset_sequence(&p, &set(&[])).unwrap();
        assert!(empty.fiber.is_zero());
        assert_eq!(empty.cofiber, IntervalSphere::full(&p));
        assert!(matches!(cofiber_upset_sequence(&p, &set(&[1])), Err(EquiError::NotADownset(_))));
    }

    #[test]
    fn untwisting_on_small_actions() {
        let c3 = PermGroup::preset("c3").unwrap();
        let left: Vec<Vec<usize>> = (0..3).map(|g| (0..3).map(|x| c3.mul(g, x)).collect()).collect();
        assert!(untwisting_check(&c3, &left).unwrap());
        let s3 = PermGroup::preset("s3").unwrap();
        assert!(untwisting_check(&s3, &s3.natural_action()).unwrap());
    }

    #[test]
    fn corrupted_actions_are_rejected() {
        let s3 = PermGroup::preset("s3").unwrap();
        let mut act = s3.natural_action();
        act[1].swap(0, 1);
        act[1].swap(1, 2);
        assert!(matches!(untwisting_check(&s3, &act), Err(EquiError::InvalidAction(_))));
    }
}
