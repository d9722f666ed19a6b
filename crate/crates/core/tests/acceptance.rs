//! Acceptance suite: one PASS/FAIL line per criterion, then a nonzero exit
//! if any criterion failed. Runs without the libtest harness so the lines
//! are always shown.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use outclass::bratteli::{
    check_certificate, check_intertwining, equivalent, find_intertwining, BratteliDiagram, SearchBounds, Verdict,
};
use outclass::matcat::{
    enumerate_homs, export_as_spec, hom_exists, AlgebraObject, HomFilter, IntMatrix, MultiplicityMorphism,
};
use outclass::metric::{
    approximate_intertwine, dyadic, verify_isometry, GroupHomCategory, IntertwineError, IntertwiningProblem,
    MetricCategory, MetricHomSpace, ExhaustiveCorrector, WeightedDisagreement,
};
use outclass::permgrp::{
    all_homs, alternating_group, block_data_of, hom_from_generator_images, inner_equivalent,
    inner_reducibility_condition, multiplicity_of, symmetric_conjugate, verify_nonclosure_a3_a6_a7, FiniteGroup,
    GroupHom, HomRecord, Permutation,
};
use outclass::quotient::{
    cantor_bernstein_check, cantor_bernstein_violations, class_product_defect, finite_sets_all_maps_instance,
    finite_sets_injections_instance, group_endomorphism_category, is_super_strong, quotient, verify_inner_axiom,
    FiniteCategorySpec, ThinPreorder,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into(), details: Vec::new() }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Exhaustive check that every product of two composable classes lands in
/// one class, by composing all member pairs.
fn class_products_are_classes(spec: &FiniteCategorySpec) -> Result<usize, String> {
    let q = quotient(spec).map_err(|e| e.to_string())?;
    q.check_laws().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for c1 in q.classes() {
        for c2 in q.classes().iter().filter(|c| c.source == c1.target) {
            let mut hit = BTreeSet::new();
            for &f in &c1.members {
                for &g in &c2.members {
                    hit.insert(q.class_of(spec.compose(f, g).ok_or("missing composite")?));
                }
            }
            if hit.len() != 1 {
                return Err(format!("product of classes of {} and {} meets {} classes",
                    spec.morphism_name(c1.members[0]), spec.morphism_name(c2.members[0]), hit.len()));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_1() -> Outcome {
    let a5 = alternating_group(5).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["A5 endomorphisms", "matcat bound 3", "injections(4)"] {
        let t = Instant::now();
        let spec = match name {
            "A5 endomorphisms" => group_endomorphism_category(&a5).unwrap(),
            "matcat bound 3" => export_as_spec(3).unwrap().spec,
            _ => finite_sets_injections_instance(4).unwrap(),
        };
        let axiom = verify_inner_axiom(&spec).unwrap();
        let products = class_products_are_classes(&spec);
        let el = t.elapsed();
        let ok = axiom.is_empty() && products.is_ok() && el < Duration::from_secs(10);
        pass &= ok;
        parts.push(match products {
            Ok(n) => format!("{name}: {} axiom failures, {n} class products, {}", axiom.len(), secs(el)),
            Err(e) => format!("{name}: {e}"),
        });
    }
    Outcome::new(pass, parts.join("; "))
}

/// Values of a finite-set map named like `2->2:[1,1]`.
fn map_values(name: &str) -> Vec<usize> {
    serde_json::from_str(name.split(':').nth(1).unwrap()).unwrap()
}

fn is_constant(name: &str) -> bool {
    map_values(name).windows(2).all(|w| w[0] == w[1])
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let spec = finite_sets_all_maps_instance(3).unwrap();
    let defect = class_product_defect(&spec).unwrap();
    let el = t.elapsed();
    let Some(w) = defect else {
        return Outcome::new(false, "no defect found");
    };
    let factors_nonconstant =
        w.left.iter().chain(&w.right).all(|f| !is_constant(f));
    let constant_example = w.examples.iter().find(|[f, g, fg]| !is_constant(f) && !is_constant(g) && is_constant(fg));
    let split_has_constant = w.split.iter().any(|c| c.iter().all(|f| is_constant(f)));
    let pass = factors_nonconstant && constant_example.is_some() && split_has_constant && el < Duration::from_secs(1);
    let mut o = Outcome::new(
        pass,
        format!("product splits into {} classes, constant composite {:?}, {}", w.split.len(), constant_example, secs(el)),
    );
    o.details.push(format!("left class {:?}", w.left));
    o.details.push(format!("right class {:?}", w.right));
    o
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let r = verify_nonclosure_a3_a6_a7().unwrap();
    let el = t.elapsed();
    let sigma_image = r.sigma.images[0].to_string();
    let pass = r.holds()
        && sigma_image == "(123)(456)"
        && r.straight_cycle_type == [3]
        && r.twisted_cycle_type == [3, 3]
        && r.both_in_class_product
        && el < Duration::from_secs(300);
    Outcome::new(
        pass,
        format!(
            "sigma((123)) = {sigma_image}, cycle types {:?} vs {:?}, conjugate {}, in class product {}, {}",
            r.straight_cycle_type,
            r.twisted_cycle_type,
            r.symmetric_search.conjugator.is_some(),
            r.both_in_class_product,
            secs(el)
        ),
    )
}

fn random_hom(rng: &mut StdRng, a: &AlgebraObject, b: &AlgebraObject) -> MultiplicityMorphism {
    let mut data = Vec::new();
    for &budget in b.sizes() {
        let mut left = budget;
        for &s in a.sizes() {
            let x = rng.gen_range(0..=left / s);
            left -= x * s;
            data.push(x);
        }
    }
    let m = IntMatrix::new(b.len(), a.len(), data).unwrap();
    MultiplicityMorphism::new(a.clone(), b.clone(), m).unwrap()
}

fn random_object(rng: &mut StdRng) -> AlgebraObject {
    let len = rng.gen_range(1..=3);
    AlgebraObject::new((0..len).map(|_| rng.gen_range(1..=12)).collect()).unwrap()
}

/// Plain triple-loop product of row-major matrices.
fn naive_mul(a: &IntMatrix, b: &IntMatrix) -> Vec<u64> {
    let mut out = vec![0; a.rows() * b.cols()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            for k in 0..a.cols() {
                out[i * b.cols() + j] += a.get(i, k) * b.get(k, j);
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let unital = HomFilter { unital: true, allow_zero: true };
    let o = |s: &str| AlgebraObject::parse(s).unwrap();
    let yes = hom_exists(&o("(2)"), &o("(6)"), unital);
    let no = hom_exists(&o("(2)"), &o("(5)"), unital);
    let rows: BTreeSet<Vec<u64>> = enumerate_homs(&o("(1,2)"), &o("(5)"), unital)
        .iter()
        .map(|m| m.matrix().row(0).to_vec())
        .collect();
    let expected: BTreeSet<Vec<u64>> = [vec![5, 0], vec![3, 1], vec![1, 2]].into_iter().collect();
    let count = enumerate_homs(&o("(1,2)"), &o("(5)"), unital).len();

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = 0;
    for _ in 0..10_000 {
        let objs: Vec<_> = (0..4).map(|_| random_object(&mut rng)).collect();
        let f = random_hom(&mut rng, &objs[0], &objs[1]);
        let g = random_hom(&mut rng, &objs[1], &objs[2]);
        let h = random_hom(&mut rng, &objs[2], &objs[3]);
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        let oracle = naive_mul(h.matrix(), &IntMatrix::new(g.matrix().rows(), f.matrix().cols(), naive_mul(g.matrix(), f.matrix())).unwrap());
        if left != right || left.matrix().entries() != oracle.as_slice() {
            failures += 1;
        }
    }
    Outcome::new(
        yes && !no && rows == expected && count == 3 && failures == 0,
        format!("(2)->(6) {yes}, (2)->(5) {no}, rows {rows:?}, associativity failures {failures}/10000"),
    )
}

/// A permutation matrix carrying the source sizes onto the target sizes.
fn is_size_permutation(f: &MultiplicityMorphism) -> bool {
    let m = f.matrix();
    m.mul_vec(f.source().sizes()).unwrap() == f.target().sizes()
        && m.rows() == m.cols()
        && (0..m.rows()).all(|r| m.row(r).iter().filter(|&&x| x == 1).count() == 1 && m.row(r).iter().all(|&x| x <= 1))
        && (0..m.cols()).all(|c| (0..m.rows()).filter(|&r| m.get(r, c) == 1).count() == 1)
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for bound in 1..=4 {
        let export = export_as_spec(bound).unwrap();
        let q = quotient(&export.spec).unwrap();
        let violations = is_super_strong(&q);
        let mut mismatches = 0;
        let mut invertible = 0;
        for (i, c) in q.classes().iter().enumerate() {
            let inv = q.inverse(outclass::quotient::ClassId(i as u32)).is_some();
            invertible += usize::from(inv);
            if inv != is_size_permutation(export.morphism(c.members[0])) {
                mismatches += 1;
            }
        }
        pass &= violations.is_empty() && mismatches == 0;
        parts.push(format!("bound {bound}: {} morphisms, {invertible} invertible, {} violations, {mismatches} mismatches",
            export.spec.morphism_count(), violations.len()));
    }
    Outcome::new(pass, format!("{}; {}", parts.join("; "), secs(t.elapsed())))
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let car = BratteliDiagram::stationary(AlgebraObject::new(vec![1]).unwrap(), IntMatrix::from_rows(&[[2]]).unwrap()).unwrap();
    let scalar = |k: u64| BratteliDiagram::stationary(AlgebraObject::new(vec![1]).unwrap(), IntMatrix::from_rows(&[[k]]).unwrap()).unwrap();
    let bounds = SearchBounds { depth: 3, level_bound: 8, entry_bound: 16 };
    let tele = car.extended(5).unwrap().telescope(&[0, 2, 4]).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, e) in [("[2] vs telescope 0,2,4", &tele), ("[2] vs [4]", &scalar(4))] {
        let w = find_intertwining(&car, e, bounds);
        let ok = w.as_ref().is_some_and(|w| w.segments() == 3 && check_intertwining(&car, e, w).unwrap());
        pass &= ok;
        parts.push(format!("{name}: witness checked {ok}"));
    }
    let three = scalar(3);
    let cert = match equivalent(&car, &three, bounds) {
        Verdict::Distinct { certificate } => Some(certificate),
        _ => None,
    };
    let cert_ok = cert.as_ref().is_some_and(|c| check_certificate(&car, &three, c));
    pass &= cert_ok;
    parts.push(format!("[2] vs [3]: distinct, prime {:?}, checked {cert_ok}", cert.map(|c| c.prime)));
    // a search that exhausts its bounds without a witness
    let fib = BratteliDiagram::stationary(AlgebraObject::new(vec![1, 1]).unwrap(), IntMatrix::from_rows(&[[1, 1], [1, 0]]).unwrap()).unwrap();
    let s = Instant::now();
    let none = find_intertwining(&fib, &car, bounds).is_none();
    parts.push(format!("fibonacci vs [2] exhausted: {none} in {}", secs(s.elapsed())));
    let el = t.elapsed();
    pass &= none && el < Duration::from_secs(30);
    Outcome::new(pass, format!("{}; total {}", parts.join("; "), secs(el)))
}

fn hom(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, images: &[&str]) -> GroupHom {
    let n = target.degree();
    let images: Vec<Permutation> = images.iter().map(|s| Permutation::parse_cycles(n, s).unwrap()).collect();
    hom_from_generator_images(source, target, &images).unwrap().unwrap()
}

fn criterion_7() -> Outcome {
    let a5 = alternating_group(5).unwrap();
    let a6 = alternating_group(6).unwrap();
    let f1 = hom(&a5, &a5, &["(345)", "(13452)"]);
    let g1 = hom(&a5, &a5, &["(152)", "(15234)"]);
    let cat = GroupHomCategory::new(vec![a5.clone()]);
    let problem = IntertwiningProblem::new(a5.kind().clone(), a5.kind().clone(), f1.clone(), g1.clone());
    let mut parts = Vec::new();
    let exact = match approximate_intertwine(&cat, &problem, &ExhaustiveCorrector) {
        Ok(r) => {
            let inverse = r.f.then(&r.g).unwrap() == GroupHom::identity(&a5) && r.g.then(&r.f).unwrap() == GroupHom::identity(&a5);
            let in_class = inner_equivalent(&f1, &r.f).unwrap().is_some() && inner_equivalent(&g1, &r.g).unwrap().is_some();
            // recomputed from the iterates, n counted from 1
            let cauchy = r
                .f_iterates
                .windows(2)
                .enumerate()
                .all(|(i, w)| cat.distance(&w[1], &w[0]) <= dyadic(2 * (i + 1) - 2));
            parts.push(format!(
                "twisted A5 pair: inverse {inverse}, in classes {in_class}, {} f-iterates, Cauchy {cauchy} (library says {})",
                r.f_iterates.len(),
                r.cauchy_bounds_hold()
            ));
            inverse && in_class && cauchy && r.cauchy_bounds_hold()
        }
        Err(e) => {
            parts.push(format!("twisted A5 pair: {e}"));
            false
        }
    };
    let cat = GroupHomCategory::new(vec![a5.clone(), a6.clone()]);
    let up = hom(&a5, &a6, &["(123)", "(12345)"]);
    let down = GroupHom::trivial(&a6, &a5);
    let problem = IntertwiningProblem::new(a5.kind().clone(), a6.kind().clone(), up, down);
    let precondition = matches!(
        approximate_intertwine(&cat, &problem, &ExhaustiveCorrector),
        Err(IntertwineError::Precondition { .. })
    );
    parts.push(format!("A5 -> A6 embedding with trivial return: precondition error {precondition}"));
    Outcome::new(exact && precondition, parts.join("; "))
}

fn criterion_8() -> Outcome {
    let a3 = alternating_group(3).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [4, 6] {
        let an = alternating_group(n).unwrap();
        let cat = GroupHomCategory::new(vec![a3.clone(), an.clone()]);
        let space = MetricHomSpace::new(&cat, all_homs(&a3, &an));
        let axioms = space.check_metric_axioms();
        let inner = cat.inner(an.kind()).unwrap();
        let iso = verify_isometry(&cat, &space, &inner).unwrap();
        pass &= axioms.is_empty() && iso.is_empty();
        parts.push(format!(
            "Hom(A3,A{n}): {} maps, {} axiom failures, {} isometry failures over {} conjugations",
            space.len(),
            axioms.len(),
            iso.len(),
            inner.len()
        ));
    }
    // identity and inversion of A3 agree only at the identity element
    let cat = GroupHomCategory::new(vec![a3.clone()]);
    let id = GroupHom::identity(&a3);
    let inv = hom(&a3, &a3, &["(132)"]);
    let d = cat.distance(&id, &inv);
    let m = WeightedDisagreement::new(a3.elements().to_vec()).unwrap();
    let direct = m.distance(|g| g.clone(), |g| g.inverse());
    let three_eighths = BigRational::new(3.into(), 8.into());
    let worked = d == three_eighths && direct == three_eighths && a3.elements()[0].is_identity();
    pass &= worked;
    parts.push(format!("d(id, inversion) on A3 = {d}"));
    Outcome::new(pass, parts.join("; "))
}

/// Cycle type of the image of the first standard generator, a 3-cycle.
fn three_cycle_image(f: &GroupHom) -> Vec<usize> {
    f.generator_images()[0].cycle_type()
}

struct ClassInfo {
    rep: GroupHom,
    multiplicity: usize,
    members: usize,
    three_cycle_types: BTreeSet<Vec<usize>>,
    reducible: Option<bool>,
    even_found: usize,
}

fn criterion_9() -> Outcome {
    let t = Instant::now();
    let mut classification = true;
    let mut even_ok = true;
    let mut invariance = true;
    let mut diagnostic = true;
    let mut details = Vec::new();
    let mut cases = 0;
    for m in [5, 6] {
        let am = alternating_group(m).unwrap();
        for n in m..=8 {
            let an = alternating_group(n).unwrap();
            let homs = all_homs(&am, &an);
            let odd = Permutation::parse_cycles(n, "(12)").unwrap();
            let mut classes: Vec<ClassInfo> = Vec::new();
            for f in &homs {
                let k = multiplicity_of(f).unwrap();
                let moved = f.conjugate_by(&odd).unwrap();
                invariance &= multiplicity_of(&moved).unwrap() == k;
                let found = classes.iter_mut().find(|c| symmetric_conjugate(&c.rep, f).unwrap().is_some());
                let c = match found {
                    Some(c) => c,
                    None => {
                        let reducible = block_data_of(f).ok().map(|b| inner_reducibility_condition(&b));
                        classes.push(ClassInfo {
                            rep: f.clone(),
                            multiplicity: k,
                            members: 0,
                            three_cycle_types: BTreeSet::new(),
                            reducible,
                            even_found: 0,
                        });
                        classes.last_mut().unwrap()
                    }
                };
                c.members += 1;
                invariance &= c.multiplicity == k;
                c.three_cycle_types.insert(three_cycle_image(f));
                if let Some(h) = inner_equivalent(&c.rep, f).unwrap() {
                    // an even conjugator also preserves multiplicity
                    invariance &= h.is_even() && multiplicity_of(&c.rep.conjugate_by(&h).unwrap()).unwrap() == k;
                    c.even_found += 1;
                }
            }
            let mut by_k: BTreeMap<usize, Vec<&ClassInfo>> = BTreeMap::new();
            for c in &classes {
                by_k.entry(c.multiplicity).or_default().push(c);
                if c.reducible == Some(true) && c.even_found != c.members {
                    even_ok = false;
                    details.push(format!("A{m}->A{n}: reducible class of {} has {} members without an even conjugator",
                        HomRecord::from(&c.rep).images.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                        c.members - c.even_found));
                }
            }
            let types: Vec<_> = classes.iter().map(|c| &c.three_cycle_types).collect();
            diagnostic &= types.iter().all(|s| s.len() == 1) && types.iter().collect::<BTreeSet<_>>().len() == types.len();
            for (k, cs) in &by_k {
                cases += 1;
                if cs.len() > 1 {
                    classification = false;
                    let reps: Vec<String> = cs
                        .iter()
                        .map(|c| format!(
                            "[{}] ({} maps, 3-cycle -> {:?})",
                            HomRecord::from(&c.rep).images.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
                            c.members,
                            c.three_cycle_types.iter().next().unwrap()
                        ))
                        .collect();
                    details.push(format!("A{m}->A{n}, multiplicity {k}: {} S{n}-classes: {}", cs.len(), reps.join(", ")));
                }
            }
        }
    }
    let mut o = Outcome::new(
        classification && even_ok && invariance,
        format!(
            "{cases} (m,n,k) cases; equal multiplicity => S_n-conjugate {classification}; reducible => even conjugator {even_ok}; invariance {invariance}; 3-cycle image classifies {diagnostic}; {}",
            secs(t.elapsed())
        ),
    );
    o.details = details;
    o
}

fn criterion_10() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for size in 1..=5 {
        let spec = finite_sets_injections_instance(size).unwrap();
        let q = quotient(&spec).unwrap();
        let v = cantor_bernstein_check(&q).unwrap();
        pass &= q.is_thin() && v.is_empty();
        parts.push(format!("injections({size}): {} violations", v.len()));
    }
    let control = ThinPreorder {
        objects: vec!["x".into(), "y".into()],
        arrows: [(0, 0), (1, 1), (0, 1), (1, 0)].into_iter().collect(),
        isomorphisms: BTreeSet::new(),
    };
    let v = cantor_bernstein_violations(&control);
    pass &= v.len() == 1;
    parts.push(format!("two-cycle control: {} violation", v.len()));
    Outcome::new(pass, parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exchange axiom and class products", criterion_1),
        ("non-closure for finite sets", criterion_2),
        ("non-closure A3 -> A6 -> A7", criterion_3),
        ("multiplicity matrix facts", criterion_4),
        ("super-strong on matcat", criterion_5),
        ("diagram intertwining", criterion_6),
        ("correction loop", criterion_7),
        ("disagreement metric", criterion_8),
        ("multiplicity classification", criterion_9),
        ("Cantor-Bernstein", criterion_10),
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), o)) in criteria.iter().zip(&outcomes).enumerate() {
        println!("criterion {:>2} {}: {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.summary);
        for d in &o.details {
            println!("    {d}");
        }
        failed += usize::from(!o.pass);
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
