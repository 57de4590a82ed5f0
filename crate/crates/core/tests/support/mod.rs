//! Oracles shared by the integration tests. Each one recomputes its answer
//! from first principles, without calling the code it checks.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dualkit_core::diagram::{Direction, RewriteTrace};
use dualkit_core::equivariant::{members, Perm, PermGroup, Representation};
use num_rational::BigRational;
use num_traits::Zero;

/// Every single-step corruption of a trace: another rule, the other
/// direction, or a neighbouring location. Tagged with the step index.
pub fn mutants(trace: &RewriteTrace) -> Vec<(usize, String, RewriteTrace)> {
    let ids: Vec<String> = trace.rules().unwrap().ids().map(String::from).collect();
    let mut out = Vec::new();
    for (i, step) in trace.steps.iter().enumerate() {
        let mut push = |what: String, f: &dyn Fn(&mut RewriteTrace)| {
            let mut t = trace.clone();
            f(&mut t);
            out.push((i, what, t));
        };
        for id in ids.iter().filter(|id| **id != step.rule) {
            push(format!("rule {id}"), &|t| t.steps[i].rule = id.clone());
        }
        push("direction".into(), &|t| {
            t.steps[i].dir = match t.steps[i].dir {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
            }
        });
        push("slice+1".into(), &|t| t.steps[i].slice += 1);
        push("offset+1".into(), &|t| t.steps[i].offset += 1);
        if step.slice > 0 {
            push("slice-1".into(), &|t| t.steps[i].slice -= 1);
        }
        if step.offset > 0 {
            push("offset-1".into(), &|t| t.steps[i].offset -= 1);
        }
    }
    out
}

pub fn perm_compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn perm_inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub type ClassOfSubgroups = BTreeSet<BTreeSet<Perm>>;

/// Subgroup classes by brute force: every subset that contains the identity
/// and is closed under products, grouped under conjugation.
pub fn power_set_classes(g: &PermGroup) -> BTreeSet<ClassOfSubgroups> {
    let elems = g.elements().to_vec();
    let n = elems.len();
    assert!(n <= 24);
    let id: Perm = (0..g.degree).collect();
    let mut subgroups = Vec::new();
    for bits in 0u32..(1 << n) {
        let set: BTreeSet<Perm> = (0..n).filter(|i| bits & (1 << i) != 0).map(|i| elems[i].clone()).collect();
        if set.contains(&id) && set.iter().all(|a| set.iter().all(|b| set.contains(&perm_compose(a, b)))) {
            subgroups.push(set);
        }
    }
    let mut classes: Vec<ClassOfSubgroups> = Vec::new();
    for h in subgroups {
        if classes.iter().any(|c| c.contains(&h)) {
            continue;
        }
        let class = elems
            .iter()
            .map(|x| h.iter().map(|y| perm_compose(&perm_compose(x, y), &perm_inverse(x))).collect())
            .collect();
        classes.push(class);
    }
    classes.into_iter().collect()
}

pub fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the averaging projector `|H|⁻¹ Σ_{h∈H} ρ(h)`.
pub fn projector_rank(v: &Representation, h: u64) -> usize {
    let n = BigRational::from_integer(h.count_ones().into());
    let mut p = vec![vec![BigRational::zero(); v.dim]; v.dim];
    for x in members(h) {
        for (row, src) in p.iter_mut().zip(&v.matrices[x]) {
            for (a, b) in row.iter_mut().zip(src) {
                *a += b / &n;
            }
        }
    }
    rational_rank(p)
}

/// Rank over `F_p` by elimination on plain integers.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).expect("field");
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let s = inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// Invariant factors of an integer matrix, by the textbook Smith reduction
/// with `i128` entries. Zero factors are dropped.
#[allow(clippy::needless_range_loop)]
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
    let (nr, nc) = (m.len(), m.first().map_or(0, Vec::len));
    let mut out = Vec::new();
    for t in 0..nr.min(nc) {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pi, pj)) = (t..nr)
            .flat_map(|i| (t..nc).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                let q = m[i][t] / m[t][t];
                for j in t..nc {
                    m[i][j] -= q * m[t][j];
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..nc {
                let q = m[t][j] / m[t][t];
                for i in t..nr {
                    m[i][j] -= q * m[i][t];
                }
                dirty |= m[t][j] != 0;
            }
            // the pivot must also divide the rest of the block
            if !dirty {
                if let Some((i, _)) =
                    (t + 1..nr).flat_map(|i| (t + 1..nc).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % m[t][t] != 0)
                {
                    for j in t..nc {
                        m[t][j] += m[i][j];
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            let (pi, pj) = (t..nr)
                .flat_map(|i| (t..nc).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0 && (i == t || j == t))
                .min_by_key(|&(i, j)| m[i][j].abs())
                .expect("pivot row or column is nonzero");
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
        }
        out.push(m[t][t].abs());
    }
    out
}

pub fn primes_dividing(mut n: i128) -> Vec<u64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p as u64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n as u64);
    }
    ps
}
