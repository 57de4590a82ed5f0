use std::collections::BTreeSet;

use serde::Serialize;

use super::group::{members, size, PermGroup, Subgroup};

/// One conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    /// Sorted by element list; the first is the representative.
    pub members: Vec<Subgroup>,
    pub order: usize,
}

impl SubgroupClass {
    pub fn representative(&self) -> Subgroup {
        self.members[0]
    }
}

/// Subgroup classes ordered by subconjugacy.
///
/// Classes are listed by (order, element list of the representative), so
/// `le[i][j]` implies `i <= j` and class 0 is the trivial subgroup.
#[derive(Clone, Debug)]
pub struct ConjugacyPoset {
    pub group: PermGroup,
    pub classes: Vec<SubgroupClass>,
    pub le: Vec<Vec<bool>>,
    pub weyl_orders: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylGroup {
    pub order: usize,
    /// Smallest element of each coset of `H` in `N(H)`.
    pub coset_reps: Vec<usize>,
}

fn key(h: Subgroup) -> (usize, Vec<usize>) {
    (size(h), members(h).collect())
}

pub fn all_subgroups(g: &PermGroup) -> BTreeSet<Subgroup> {
    let cyclic: BTreeSet<Subgroup> = (0..g.order()).map(|x| g.generate(1 << x)).collect();
    let mut all = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().copied().collect();
    while let Some(h) = frontier.pop() {
        for &c in &cyclic {
            let j = g.generate(h | c);
            if all.insert(j) {
                frontier.push(j);
            }
        }
    }
    all
}

/// Every subgroup is a join of cyclic ones, so joining with cyclic subgroups
/// until nothing new appears finds them all.
pub fn enumerate_subgroup_classes(g: &PermGroup) -> ConjugacyPoset {
    let mut left: Vec<Subgroup> = all_subgroups(g).into_iter().collect();
    left.sort_by_key(|&h| key(h));
    let mut classes = Vec::new();
    while let Some(&h) = left.first() {
        let mut conj: Vec<Subgroup> =
            (0..g.order()).map(|x| g.conjugate(h, x)).collect::<BTreeSet<_>>().into_iter().collect();
        conj.sort_by_key(|&k| key(k));
        left.retain(|k| !conj.contains(k));
        classes.push(SubgroupClass { order: size(h), members: conj });
    }
    let le = classes
        .iter()
        .map(|a| classes.iter().map(|b| b.members.iter().any(|&k| a.representative() & !k == 0)).collect())
        .collect();
    let weyl_orders = classes.iter().map(|c| size(g.normalizer(c.representative())) / c.order).collect();
    ConjugacyPoset { group: g.clone(), classes, le, weyl_orders }
}

impl ConjugacyPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.order).collect()
    }

    pub fn class_of(&self, h: Subgroup) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&h))
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn all(&self) -> BTreeSet<usize> {
        (0..self.len()).collect()
    }

    pub fn down(&self, h: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&k| self.le[k][h]).collect()
    }

    pub fn up(&self, h: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&k| self.le[h][k]).collect()
    }

    pub fn is_upset(&self, s: &BTreeSet<usize>) -> bool {
        s.iter().all(|&h| self.up(h).is_subset(s))
    }

    pub fn is_downset(&self, s: &BTreeSet<usize>) -> bool {
        s.iter().all(|&h| self.down(h).is_subset(s))
    }

    pub fn is_convex(&self, s: &BTreeSet<usize>) -> bool {
        s.iter()
            .all(|&a| s.iter().all(|&c| (0..self.len()).all(|b| !(self.le[a][b] && self.le[b][c]) || s.contains(&b))))
    }

    pub fn is_minimal_in(&self, h: usize, s: &BTreeSet<usize>) -> bool {
        s.contains(&h) && s.iter().all(|&k| k == h || !self.le[k][h])
    }

    /// `N_G(H)/H` for the representative of class `h`.
    pub fn weyl_group(&self, h: usize) -> WeylGroup {
        let g = &self.group;
        let rep = self.classes[h].representative();
        let n = g.normalizer(rep);
        let mut reps = BTreeSet::new();
        for x in members(n) {
            let coset = members(rep).map(|y| g.mul(x, y)).min().expect("nonempty");
            reps.insert(coset);
        }
        WeylGroup { order: reps.len(), coset_reps: reps.into_iter().collect() }
    }
}
