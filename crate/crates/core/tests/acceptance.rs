//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the summary is always printed.

mod support;

use std::collections::{BTreeMap, HashMap};
use std::panic;
use std::time::{Duration, Instant};

use dualkit_core::diagram::{bundled, validate_trace};
use dualkit_core::equivariant::{
    enumerate_subgroup_classes, fixed_dim, generate_collapse_certificate, members, untwisting_check,
    validate_certificate, PermGroup, Representation,
};
use dualkit_core::exactlin::{FpMatrix, IntMatrix};
use dualkit_core::idem::{
    char_split, classify_factors, complement_of_retract, gp_idempotent, is_clopen, is_closed_idempotent, sample_pairs,
    split_homs_check,
};
use dualkit_core::models::{EvConst, EvMorphism, EvObject, ModelCategory, Product, SpanFin, SpanMorphism, SpanObject};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::{
    invariant_factors, mutants, power_set_classes, primes_dividing, projector_rank, rank_mod_p, ClassOfSubgroups,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const GROUPS: &[&str] = &["c2", "c4", "s3", "d4", "q8", "a4"];

fn corpus() -> Verdict {
    let t0 = Instant::now();
    let traces = bundled().map_err(|e| e.to_string())?;
    ensure!(traces.len() >= 12, "only {} traces", traces.len());
    for t in &traces {
        let r = validate_trace(t);
        ensure!(r.valid, "{} fails at {:?}: {:?}", t.name, r.failing_step, r.reason);
    }
    let elapsed = t0.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "validation took {elapsed:?}");
    let mut killed = 0;
    for t in &traces {
        for (i, what, m) in mutants(t) {
            ensure!(!validate_trace(&m).valid, "{} step {i} with {what} still validates", t.name);
            killed += 1;
        }
    }
    Ok(format!("{} traces valid in {} ms, {killed} single-step mutants rejected", traces.len(), elapsed.as_millis()))
}

/// A span `dom ← apex → cod` given by its two legs.
struct Legs {
    dom: usize,
    cod: usize,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Legs {
    fn random(rng: &mut ChaCha8Rng, dom: usize, cod: usize) -> Self {
        let apex = if dom == 0 || cod == 0 { 0 } else { rng.gen_range(0..=4) };
        Self {
            dom,
            cod,
            left: (0..apex).map(|_| rng.gen_range(0..dom)).collect(),
            right: (0..apex).map(|_| rng.gen_range(0..cod)).collect(),
        }
    }

    /// Entry `(j, i)` counts apex points over `i` and `j`.
    fn matrix(&self) -> Vec<Vec<u64>> {
        let mut m = vec![vec![0; self.dom]; self.cod];
        for (&i, &j) in self.left.iter().zip(&self.right) {
            m[j][i] += 1;
        }
        m
    }

    /// `g ∘ self` through the explicit pullback of the middle legs.
    fn then(&self, g: &Legs) -> Legs {
        let mut out = Legs { dom: self.dom, cod: g.cod, left: vec![], right: vec![] };
        for (s, &mid) in self.right.iter().enumerate() {
            for (t, &mid2) in g.left.iter().enumerate() {
                if mid == mid2 {
                    out.left.push(self.left[s]);
                    out.right.push(g.right[t]);
                }
            }
        }
        out
    }

    fn morphism(&self) -> SpanMorphism {
        let rows = self.matrix();
        let refs: Vec<&[u64]> = rows.iter().map(Vec::as_slice).collect();
        SpanMorphism::from_u64_rows(self.dom, self.cod, &refs).expect("shape")
    }
}

fn span_rows(f: &SpanMorphism) -> Vec<Vec<u64>> {
    f.matrix().to_rows().iter().map(|r| r.iter().map(|x| x.to_u64().expect("small")).collect()).collect()
}

fn kron(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let (bc, ac) = (b.first().map_or(0, Vec::len), a.first().map_or(0, Vec::len));
    let mut out = vec![vec![0; ac * bc]; a.len() * b.len()];
    for (i1, ra) in a.iter().enumerate() {
        for (i2, rb) in b.iter().enumerate() {
            for j1 in 0..ac {
                for j2 in 0..bc {
                    out[i1 * b.len() + i2][j1 * bc + j2] = ra[j1] * rb[j2];
                }
            }
        }
    }
    out
}

fn matmul(a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|r| (0..cols).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect()).collect()
}

fn eye(n: usize) -> Vec<Vec<u64>> {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

fn span_semantics() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..200 {
        let (a, b, c) = (rng.gen_range(0..=4), rng.gen_range(0..=4), rng.gen_range(0..=4));
        let f = Legs::random(&mut rng, a, b);
        let g = Legs::random(&mut rng, b, c);
        let ours = SpanFin.compose(&g.morphism(), &f.morphism()).map_err(|e| e.to_string())?;
        ensure!(span_rows(&ours) == f.then(&g).matrix(), "sample {k}: composite differs from the pullback count");
    }
    for n in 0..=4 {
        let d = SpanFin.duality(&SpanObject(n));
        let (unit, counit) = (span_rows(&d.unit), span_rows(&d.counit));
        let id = eye(n);
        let snake1 = matmul(&kron(&counit, &id), &kron(&id, &unit));
        let snake2 = matmul(&kron(&id, &counit), &kron(&unit, &id));
        ensure!(snake1 == id && snake2 == id, "snake equations fail for n = {n}");
    }
    Ok("200 composites equal pullback counts, snakes hold for n ≤ 4".into())
}

fn functions(from: usize, to: usize) -> Vec<Vec<usize>> {
    (0..from).fold(vec![vec![]], |acc, _| {
        acc.into_iter().flat_map(|f| (0..to).map(move |y| [f.clone(), vec![y]].concat())).collect()
    })
}

fn span_cofibers() -> Verdict {
    let cof = |f: &SpanMorphism| SpanFin.cofiber(f).map(|c| c.object).map_err(|e| e.to_string());
    ensure!(cof(&SpanFin.zero_mor(&SpanObject(0), &SpanObject(1)))? == SpanObject(1), "cofiber(0 → 1) is not 1");
    ensure!(cof(&SpanMorphism::forward(1, &[0, 0]))? == SpanObject(0), "cofiber of the fold is not 0");
    let mut backward = 0;
    for dom in 0..=3 {
        for cod in 0..=3 {
            for f in functions(cod, dom) {
                let m = SpanMorphism::backward(dom, &f);
                ensure!(cof(&m)? == SpanObject(0), "backward map along {f:?} has a nonzero cofiber");
                backward += 1;
            }
        }
    }
    let gp = gp_idempotent(&SpanFin).map_err(|e| e.to_string())?;
    ensure!(gp.object == SpanObject(0), "S_gp is {:?}", gp.object);
    Ok(format!("table reproduced on {backward} backward maps, S_gp = 0"))
}

/// Raw data of an eventually-constant morphism, kept alongside the model's
/// canonical form for the oracle.
struct RawEv {
    cod_free: usize,
    cod_dims: BTreeMap<u64, usize>,
    free: Vec<Vec<i64>>,
    explicit: BTreeMap<u64, Vec<Vec<i64>>>,
    morphism: EvMorphism,
}

fn random_ev(rng: &mut ChaCha8Rng) -> RawEv {
    let (df, cf) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
    let free: Vec<Vec<i64>> = (0..cf).map(|_| (0..df).map(|_| rng.gen_range(-10..=10)).collect()).collect();
    let mut dom_dims = BTreeMap::new();
    let mut cod_dims = BTreeMap::new();
    let mut explicit = BTreeMap::new();
    let mut fp = BTreeMap::new();
    for p in [2u64, 3, 5] {
        if !rng.gen_bool(0.5) {
            continue;
        }
        let (dd, cd) = if rng.gen_bool(0.3) { (df, cf) } else { (rng.gen_range(0..=4), rng.gen_range(0..=4)) };
        let rows: Vec<Vec<i64>> = (0..cd).map(|_| (0..dd).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
        let as_u64 = rows.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
        fp.insert(p, FpMatrix::from_rows(p, as_u64, dd).expect("prime"));
        dom_dims.insert(p, dd);
        cod_dims.insert(p, cd);
        explicit.insert(p, rows);
    }
    let flat: Vec<i64> = free.iter().flatten().copied().collect();
    let morphism = EvMorphism::new(
        EvObject::new(df, dom_dims),
        EvObject::new(cf, cod_dims.clone()),
        IntMatrix::from_i64(cf, df, &flat).expect("shape"),
        fp,
    )
    .expect("well-formed");
    RawEv { cod_free: cf, cod_dims, free, explicit, morphism }
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x: &BigInt| x.to_i64().expect("small")).collect()).collect()
}

fn fp_rows(m: &FpMatrix) -> Vec<Vec<i64>> {
    m.matrix().to_rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
}

/// The cofiber predicted from the Smith form of the free part and ranks at
/// the explicit primes.
fn cokernel_oracle(raw: &RawEv) -> EvObject {
    let d = invariant_factors(&raw.free);
    let mut exc = BTreeMap::new();
    for &p in d.iter().flat_map(|&x| primes_dividing(x)).collect::<Vec<_>>().iter() {
        exc.insert(p, raw.cod_free - d.iter().filter(|&&x| x % i128::from(p) != 0).count());
    }
    for (&p, rows) in &raw.explicit {
        exc.insert(p, raw.cod_dims[&p] - rank_mod_p(rows, p as i64));
    }
    EvObject::new(raw.cod_free - d.len(), exc)
}

fn torsion_grid() -> Vec<EvObject> {
    let mut out = Vec::new();
    for a in 0..=2 {
        for b in 0..=1 {
            for c in 0..=1 {
                out.push(EvObject::new(0, BTreeMap::from([(2, a), (3, b), (5, c)])));
            }
        }
    }
    out
}

fn evconst_cofibers() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..300 {
        let raw = random_ev(&mut rng);
        let cof = EvConst.cofiber(&raw.morphism).map_err(|e| e.to_string())?;
        let expected = cokernel_oracle(&raw);
        ensure!(cof.object == expected, "sample {k}: cofiber {:?}, oracle {expected:?}", cof.object);
        let dom = raw.morphism.dom().clone();
        let killed = EvConst.compose(&cof.quotient, &raw.morphism).map_err(|e| e.to_string())?;
        ensure!(killed == EvConst.zero_mor(&dom, &cof.object), "sample {k}: quotient does not kill the image");
        let q_free = invariant_factors(&int_rows(cof.quotient.free_part()));
        ensure!(
            q_free.len() == expected.free_rank() && q_free.iter().all(|&x| x == 1),
            "sample {k}: free quotient is not onto"
        );
        for p in [2u64, 3, 5, 7, 11] {
            let rank = rank_mod_p(&fp_rows(&cof.quotient.component(p)), p as i64);
            ensure!(rank == expected.dim_at(p), "sample {k}: quotient not onto at {p}");
        }
    }

    // existence and uniqueness of factorizations, exhaustively
    let grid = torsion_grid();
    let (mut instances, mut skipped) = (0usize, 0usize);
    for x in &grid {
        for y in &grid {
            let Some(phis) = EvConst.enumerate_homs(x, y, 81) else {
                skipped += 1;
                continue;
            };
            for phi in &phis {
                let cof = EvConst.cofiber(phi).map_err(|e| e.to_string())?;
                for z in &grid {
                    let Some(thetas) = EvConst.enumerate_homs(y, z, 81) else { continue };
                    let us = EvConst.enumerate_homs(&cof.object, z, 81).ok_or("cofiber hom-set is larger")?;
                    let mut through: HashMap<EvMorphism, usize> = HashMap::new();
                    for u in &us {
                        let uq = EvConst.compose(u, &cof.quotient).map_err(|e| e.to_string())?;
                        *through.entry(uq).or_default() += 1;
                    }
                    let zero = EvConst.zero_mor(x, z);
                    for theta in &thetas {
                        let kills = EvConst.compose(theta, phi).map_err(|e| e.to_string())? == zero;
                        let n = through.get(theta).copied().unwrap_or(0);
                        ensure!(n == usize::from(kills), "{phi:?} into {z:?}: {n} factorizations, kills = {kills}");
                    }
                    instances += 1;
                }
            }
        }
    }
    Ok(format!(
        "300 cofibers match the oracle, universal property on {instances} torsion instances, {skipped} hom-sets over 81 skipped"
    ))
}

/// `|Hom(X, Y)|` for purely torsion objects: `∏ p^{x_p y_p}`.
fn torsion_hom_count(x: &EvObject, y: &EvObject) -> u128 {
    x.exceptional().iter().map(|(&p, &d)| u128::from(p).pow((d * y.dim_at(p)) as u32)).product()
}

fn random_torsion(rng: &mut ChaCha8Rng) -> EvObject {
    EvObject::new(0, BTreeMap::from([(2, rng.gen_range(0..=2)), (3, rng.gen_range(0..=1)), (5, rng.gen_range(0..=1))]))
}

fn characteristic_splittings() -> Verdict {
    let s = EvObject::sphere();
    for m in [2u64, 3, 4, 6, 12] {
        let primes = primes_dividing(m.into());
        let want_e = EvObject::new(0, primes.iter().map(|&p| (p, 1)).collect());
        let want_c = EvObject::new(1, primes.iter().map(|&p| (p, 0)).collect());
        let cs = char_split(m, &s).map_err(|e| e.to_string())?;
        let (e, c) = (&cs.torsion_idempotent, &cs.complement);
        ensure!(e.object == want_e, "S/{m} came out as {:?}", e.object);
        ensure!(c.object == want_c, "complement of S/{m} came out as {:?}", c.object);
        ensure!(is_clopen(&EvConst, &e.object, &e.r, &e.i).map_err(|x| x.to_string())?, "S/{m} is not clopen");
        ensure!(is_clopen(&EvConst, &c.object, &c.r, &c.i).map_err(|x| x.to_string())?, "S({m}) is not clopen");
        ensure!(EvConst.tensor_obj(&e.object, &c.object).is_zero(), "S/{m} ∧ S({m}) ≠ 0");
        ensure!(cs.reassembly_invertible, "S does not reassemble for m = {m}");

        let mut rng = ChaCha8Rng::seed_from_u64(m);
        let pairs: Vec<(EvObject, EvObject)> =
            (0..100).map(|_| (random_torsion(&mut rng), random_torsion(&mut rng))).collect();
        let report = split_homs_check(&EvConst, &e.object, &c.object, &pairs).map_err(|x| x.to_string())?;
        ensure!(report.verdict, "hom-splitting fails for m = {m}");
        for ((x, y), w) in pairs.iter().zip(&report.witnesses) {
            let (ex, ey) = (EvConst.tensor_obj(&e.object, x), EvConst.tensor_obj(&e.object, y));
            let (cx, cy) = (EvConst.tensor_obj(&c.object, x), EvConst.tensor_obj(&c.object, y));
            let hom = torsion_hom_count(x, y);
            let split = torsion_hom_count(&ex, &ey) * torsion_hom_count(&cx, &cy);
            ensure!(w.method == "enumeration" && w.bijective, "{x:?} → {y:?} not checked elementwise");
            ensure!(w.hom.count() == Some(hom.into()), "{x:?} → {y:?}: {:?} ≠ {hom}", w.hom.count());
            ensure!(w.split.count() == Some(split.into()) && hom == split, "{x:?} → {y:?}: split count {split}");
        }
    }
    Ok("m ∈ {2,3,4,6,12}: clopen, complement S(m), disjoint, 100 exact hom splits each".into())
}

fn three_fold_splitting() -> Verdict {
    let model = Product::new(EvConst, SpanFin);
    let s = EvObject::sphere();
    let gp = gp_idempotent(&model).map_err(|e| e.to_string())?;
    ensure!(gp.object == (s.clone(), SpanObject(0)), "S_gp is {:?}", gp.object);
    ensure!(is_closed_idempotent(&model, &gp.object, &gp.r).map_err(|e| e.to_string())?, "S_gp is not closed");
    let factors = classify_factors(&model).map_err(|e| e.to_string())?;
    ensure!(model.is_zero_object(&factors.suspension_of_unit), "ΣS ≠ 0");
    ensure!(factors.anti_gp == Some((EvObject::zero(), SpanObject(1))), "anti-grouplike factor {:?}", factors.anti_gp);

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let x = model.sample_object(&mut rng);
        let sx = model.suspension(&x).map_err(|e| e.to_string())?;
        ensure!(model.is_zero_object(&sx), "Σ{x:?} ≠ 0");
    }

    let i = model.section(&gp.r).ok_or("r has no section")?;
    let comp = complement_of_retract(&model, &gp.object, &gp.r, &i).map_err(|e| e.to_string())?;
    let pairs = sample_pairs(&model, 6, 50, false);
    let report = split_homs_check(&model, &gp.object, &comp.object, &pairs).map_err(|e| e.to_string())?;
    ensure!(report.verdict, "hom-splitting fails on the product");
    for (x, _) in &pairs {
        ensure!(model.tensor_obj(&gp.object, x) == (x.0.clone(), SpanObject(0)), "S_gp ∧ {x:?} keeps the span part");
        ensure!(
            model.tensor_obj(&comp.object, x) == (EvObject::zero(), x.1),
            "complement ∧ {x:?} keeps the additive part"
        );
    }
    Ok("S_gp = (S, 0), suspension trivial, 50 hom splits separate the factors".into())
}

fn equivariant_suite() -> Verdict {
    let t0 = Instant::now();
    let mut removals = 0;
    for name in GROUPS {
        let g = PermGroup::preset(name).map_err(|e| e.to_string())?;
        let poset = enumerate_subgroup_classes(&g);
        let ours: std::collections::BTreeSet<ClassOfSubgroups> = poset
            .classes
            .iter()
            .map(|c| c.members.iter().map(|&h| members(h).map(|i| g.element(i).clone()).collect()).collect())
            .collect();
        ensure!(power_set_classes(&g) == ours, "{name}: subgroup classes differ from the power-set oracle");
        for rep in ["trivial", "permutation", "reduced-regular"] {
            let v = Representation::preset(&g, rep).map_err(|e| e.to_string())?;
            for c in &poset.classes {
                let d = fixed_dim(&v, c.representative()).map_err(|e| e.to_string())?;
                ensure!(d == projector_rank(&v, c.representative()), "{name}/{rep}: fixed dimension {d} is wrong");
            }
            let cert = generate_collapse_certificate(&poset, &v).map_err(|e| e.to_string())?;
            let report = validate_certificate(&cert, &poset);
            ensure!(report.valid, "{name}/{rep}: certificate rejected at {:?}", report.failing_step);
            ensure!(
                cert.removals() == poset.len(),
                "{name}/{rep}: {} removals for {} classes",
                cert.removals(),
                poset.len()
            );
            removals += cert.removals();
        }
    }
    let elapsed = t0.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "suite took {elapsed:?}");
    Ok(format!("6 groups, 18 certificates with {removals} removals, {} ms", elapsed.as_millis()))
}

fn untwisting() -> Verdict {
    let mut checked = 0;
    for name in GROUPS {
        let g = PermGroup::preset(name).map_err(|e| e.to_string())?;
        let poset = enumerate_subgroup_classes(&g);
        // every transitive G-set is G/H for some subgroup H
        for c in &poset.classes {
            for &h in &c.members {
                let act = g.coset_action(h);
                let n = act[0].len();
                ensure!(n * c.order == g.order(), "{name}: G/H has {n} points");
                let orbit: std::collections::BTreeSet<usize> = act.iter().map(|row| row[0]).collect();
                ensure!(orbit.len() == n, "{name}: coset action is not transitive");
                ensure!(untwisting_check(&g, &act).map_err(|e| e.to_string())?, "{name}: untwisting fails on G/H");
                checked += 1;
            }
        }
    }
    Ok(format!("φ(g,x) = (g,gx) is an equivariant bijection on all {checked} coset actions"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("proof-trace corpus", corpus),
        ("span semantics", span_semantics),
        ("span cofiber table", span_cofibers),
        ("eventually-constant cofibers", evconst_cofibers),
        ("characteristic splittings", characteristic_splittings),
        ("three-fold splitting", three_fold_splitting),
        ("equivariant suite", equivariant_suite),
        ("untwisting", untwisting),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let verdict = panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let ms = t0.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("criterion {} ({name}): PASS [{ms} ms] {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{ms} ms] {why}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
