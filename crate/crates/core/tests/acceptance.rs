//! Acceptance run. Every test prints one `criterion N ...: PASS|FAIL` line.
//! Run with `cargo test -p kcirl --test acceptance -- --nocapture`.
#![allow(clippy::absurd_extreme_comparisons)]

mod common;

use std::time::{Duration, Instant};

use kcirl::algebra::quotient;
use kcirl::axioms::{axioms_for_vlin, family_class, fmp_witness};
use kcirl::canonical::{all_mjo_embeddings, build_canonical, lift_embedding, DSpec};
use kcirl::closure::{closure_mult_join_one, refuting_subalgebra};
use kcirl::enumeration::naive::naive_kcirl;
use kcirl::enumeration::{enumerate_kcirl, Filter};
use kcirl::formula::{eval, find_counterexample, holds, parse};
use kcirl::verify::{default_suite, verify, Report, Theorem, VerifyConfig};
use kcirl::{FiniteRl, Formula};

const LAW_SUITE_LIMIT: Duration = Duration::from_secs(120);
const LEMMA34_LIMIT: Duration = Duration::from_secs(300);
const THM45_LIMIT: Duration = Duration::from_secs(600);
const MAX_DISCREPANCIES: usize = 0;

fn line(n: &str, name: &str, pass: bool, detail: String) -> bool {
    println!("criterion {n} {name}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    pass
}

fn catalog(k: u32, n: usize) -> Vec<FiniteRl> {
    enumerate_kcirl(k, n, &Filter::All).entries
}

/// SI entries of the full catalog, keeping its names.
fn si_catalog(k: u32, n: usize) -> Vec<FiniteRl> {
    catalog(k, n).into_iter().filter(FiniteRl::is_si).collect()
}

fn report_ok(r: &Report) -> bool {
    r.passed() && r.witnesses.len() <= MAX_DISCREPANCIES
}

#[test]
fn c01_law_suite() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in [1, 2] {
        for a in catalog(k, 6) {
            checked += 1;
            let v = common::law_violations(&a);
            if !v.is_empty() {
                bad.push(format!("k={k} {}: {}", a.name().unwrap_or("?"), v[0]));
            }
        }
    }
    let t = start.elapsed();
    let pass = bad.len() <= MAX_DISCREPANCIES && t < LAW_SUITE_LIMIT;
    assert!(line("1", "law suite", pass, format!("{checked} algebras, {} violations, {t:.1?} < {LAW_SUITE_LIMIT:?}", bad.len())), "{bad:?}");
}

#[test]
fn c02_enumeration_oracle() {
    let mut mismatches = Vec::new();
    for k in [1, 2] {
        let pruned = catalog(k, 4);
        for n in 1..=4 {
            let naive = naive_kcirl(k, n).len();
            let fast = pruned.iter().filter(|a| a.size() == n).count();
            if naive != fast {
                mismatches.push(format!("k={k} n={n}: naive {naive} pruned {fast}"));
            }
        }
    }
    let brouwerian = catalog(1, 5)
        .iter()
        .all(|a| a.elements().all(|x| a.elements().all(|y| a.mult(x, y) == common::meet(a, x, y).unwrap())));
    let chains3 = enumerate_kcirl(2, 3, &Filter::Linear).entries.iter().filter(|a| a.size() == 3).count();
    let pass = mismatches.is_empty() && brouwerian && chains3 == 2;
    assert!(line(
        "2",
        "enumeration oracle",
        pass,
        format!("count mismatches {mismatches:?}, k=1 fusion=meet {brouwerian}, k=2 3-chains {chains3} == 2")
    ));
}

#[test]
fn c03_si_criterion() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in [1, 2] {
        for a in catalog(k, 6) {
            checked += 1;
            let lib = a.is_subdirectly_irreducible().unwrap_or(false);
            if lib != common::is_si(&a) || lib != a.is_si() {
                bad.push(format!("k={k} {}", a.name().unwrap_or("?")));
            }
        }
    }
    let pass = bad.len() <= MAX_DISCREPANCIES;
    assert!(line("3", "SI criterion", pass, format!("{checked} algebras, {} disagreements", bad.len())), "{bad:?}");
}

/// Joins of nonempty subsets of the products `g1^e1 · ... · gm^em`,
/// `0 <= ei <= k`.
fn closure_by_products(a: &FiniteRl, seed: &[usize]) -> Vec<usize> {
    let k = a.k() as usize;
    let mut products = Vec::new();
    common::for_each_map(seed.len(), k + 1, |e| {
        let p = seed.iter().zip(e).fold(a.one(), |acc, (&g, &ei)| a.mult(acc, a.power(g, ei as u32)));
        if !products.contains(&p) {
            products.push(p);
        }
    });
    let mut out: Vec<usize> = Vec::new();
    for m in 1u64..1 << products.len() {
        let j = (0..products.len()).filter(|&i| m >> i & 1 == 1).fold(None, |acc: Option<usize>, i| {
            Some(acc.map_or(products[i], |x| a.join(x, products[i])))
        });
        let j = j.unwrap();
        if !out.contains(&j) {
            out.push(j);
        }
    }
    out.sort_unstable();
    out
}

#[test]
fn c04_closure_bound() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in [1u32, 2] {
        for a in catalog(k, 6) {
            let n = a.size();
            let mut seeds: Vec<Vec<usize>> = vec![vec![]];
            seeds.extend((0..n).map(|x| vec![x]));
            seeds.extend((0..n).flat_map(|x| (x + 1..n).map(move |y| vec![x, y])));
            for s in seeds {
                checked += 1;
                let c = closure_mult_join_one(&a, &s);
                let bound = 1u64 << (k as u64 + 1).pow(s.len() as u32);
                if c.len() as u64 > bound || c.carrier != closure_by_products(&a, &s) {
                    bad.push(format!("k={k} {} seed {s:?}", a.name().unwrap_or("?")));
                }
            }
        }
    }
    let pass = bad.len() <= MAX_DISCREPANCIES;
    assert!(line("4", "closure bound", pass, format!("{checked} seeds, {} violations", bad.len())), "{bad:?}");
}

#[test]
fn c05_refuting_subalgebra() {
    let start = Instant::now();
    let suite = default_suite();
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in [1, 2] {
        for host in si_catalog(k, 5) {
            for phi in &suite {
                let vars: Vec<String> = phi.vars().into_iter().collect();
                for v in common::valuations(&vars, host.size()) {
                    let value = eval(phi, &host, &v).unwrap();
                    if value == host.one() {
                        continue;
                    }
                    checked += 1;
                    let s = refuting_subalgebra(&host, phi, &v).unwrap();
                    let a = &s.algebra;
                    let inc = &s.inclusion;
                    let revalidated =
                        FiniteRl::validate(a.size(), k, a.one(), a.join_table().to_vec(), a.mult_table().to_vec()).is_ok();
                    let sub = inc[a.one()] == host.one()
                        && a.elements().all(|x| {
                            a.elements().all(|y| {
                                inc[a.mult(x, y)] == host.mult(inc[x], inc[y])
                                    && inc[a.join(x, y)] == host.join(inc[x], inc[y])
                            })
                        })
                        && inc.windows(2).all(|w| w[0] < w[1]);
                    let same_value = s.corestrict(&v).is_some_and(|w| inc[eval(phi, a, &w).unwrap()] == value);
                    let si = common::is_si(a);
                    if !(revalidated && sub && same_value && si) {
                        bad.push(format!("k={k} {} {phi} {v}", host.name().unwrap_or("?")));
                    }
                }
            }
        }
    }
    let t = start.elapsed();
    let pass = bad.len() <= MAX_DISCREPANCIES && t < LEMMA34_LIMIT && checked > 0;
    assert!(
        line("5", "refuting subalgebra", pass, format!("{checked} refutations, {} failures, {t:.1?} < {LEMMA34_LIMIT:?}", bad.len())),
        "{bad:?}"
    );
}

fn dspecs(n: usize) -> Vec<DSpec> {
    let mut out = vec![DSpec::stable(), DSpec::splitting(n)];
    out.extend((0..3).map(|s| DSpec::random(n, 17 + s)));
    out
}

#[test]
fn c06_canonical_refutation() {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut reports = Vec::new();
    for k in [1, 2] {
        let mut cfg = VerifyConfig::new(k, 5);
        cfg.small_size = 4;
        reports.push(verify(Theorem::Lemma36, &cfg));
        let cs = si_catalog(k, 5);
        for a in cs.iter().filter(|a| a.size() <= 4) {
            for d in dspecs(a.size()) {
                let g = build_canonical(a, &d).unwrap();
                for c in &cs {
                    checked += 1;
                    let refuted = g.refutes_1(c).unwrap().is_some();
                    let embeds = !common::embeddings(a, c, Some(&d)).is_empty();
                    if refuted != embeds {
                        bad.push(format!("k={k} {} into {}", a.name().unwrap_or("?"), c.name().unwrap_or("?")));
                    }
                }
            }
        }
    }
    let pass = bad.len() <= MAX_DISCREPANCIES && reports.iter().all(report_ok);
    let harness: Vec<u64> = reports.iter().map(|r| r.checked).collect();
    assert!(
        line("6", "canonical formula refutation", pass, format!("{checked} oracle triples, {} disagreements, harness checks {harness:?}", bad.len())),
        "{bad:?}"
    );
}

#[test]
fn c07_associated_system() {
    let mut cfg = VerifyConfig::new(1, 5);
    cfg.small_size = 5;
    let r38 = verify(Theorem::Prop38, &cfg);
    let r39 = verify(Theorem::Prop39, &cfg);

    let named = ["(x -> y) | (y -> x)", "(x -> 0) | ((x -> 0) -> 0)", "x | (x -> 0)", "x & (y | z) -> (x & y) | (x & z)"];
    let si = si_catalog(1, 5);
    let all = catalog(1, 5);
    let mut checked = 0;
    let mut bad = Vec::new();
    for s in named {
        let phi = parse(s).unwrap();
        let system = kcirl::canonical::associated_system_over(&phi, &si);
        let gammas: Vec<Formula> = system.iter().map(|(a, d)| build_canonical(a, d).unwrap().gamma).collect();
        for b in &all {
            checked += 1;
            let lhs = common::holds(b, &phi);
            let rhs = gammas.iter().all(|g| common::holds(b, g));
            if lhs != rhs {
                bad.push(format!("{s} in {}", b.name().unwrap_or("?")));
            }
        }
    }
    let pass = bad.len() <= MAX_DISCREPANCIES && report_ok(&r38) && report_ok(&r39);
    assert!(
        line(
            "7",
            "associated system",
            pass,
            format!(
                "{checked} oracle pairs, {} discrepancies; harness {} + {} checks, {} + {} witnesses",
                bad.len(),
                r38.checked,
                r39.checked,
                r38.witnesses.len(),
                r39.witnesses.len()
            )
        ),
        "{bad:?}"
    );
}

#[test]
fn c08_stable_characterization() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut reports = Vec::new();
    for k in [1, 2] {
        let cfg = VerifyConfig::new(k, 6);
        reports.push(verify(Theorem::Thm45, &cfg));
        let bs = si_catalog(k, 6);
        for a in bs.iter().filter(|a| a.size() <= 4) {
            let g = build_canonical(a, &DSpec::stable()).unwrap().gamma;
            for b in &bs {
                checked += 1;
                let refuted = !common::holds(b, &g);
                let embeds = !common::embeddings(a, b, Some(&DSpec::stable())).is_empty();
                if refuted != embeds {
                    bad.push(format!("k={k} {} / {}", a.name().unwrap_or("?"), b.name().unwrap_or("?")));
                }
            }
        }
    }
    let t = start.elapsed();
    let pass = bad.len() <= MAX_DISCREPANCIES && reports.iter().all(report_ok) && t < THM45_LIMIT;
    assert!(
        line("8", "stable characterization", pass, format!("{checked} SI pairs, {} disagreements, {t:.1?} < {THM45_LIMIT:?}", bad.len())),
        "{bad:?}"
    );
}

#[test]
fn c09_lifting() {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in [1, 2] {
        let all = catalog(k, 5);
        for a in all.iter().filter(|a| a.is_si()) {
            for b in &all {
                for f in kcirl::algebra::all_filters(b) {
                    let q = quotient(b, &f).unwrap();
                    let hs = common::embeddings(a, &q.algebra, None);
                    if hs != all_mjo_embeddings(a, &q.algebra).unwrap() {
                        bad.push(format!("embedding sets differ for {} / {}", a.name().unwrap_or("?"), b.name().unwrap_or("?")));
                    }
                    for h in hs {
                        checked += 1;
                        let ok = lift_embedding(a, b, &q.surjection, &q.algebra, &h).is_ok_and(|g| {
                            common::embeddings(a, b, None).contains(&g)
                                && a.elements().all(|x| q.surjection[g[x]] == h[x])
                        });
                        if !ok {
                            bad.push(format!("k={k} {} / {} {:?} {h:?}", a.name().unwrap_or("?"), b.name().unwrap_or("?"), f.members));
                        }
                    }
                }
            }
        }
    }
    let pass = bad.len() <= MAX_DISCREPANCIES && checked > 0;
    assert!(line("9", "embedding lifting", pass, format!("{checked} triples, {} failures", bad.len())), "{bad:?}");
}

#[test]
fn c10_linear_axiomatization() {
    let k = 1;
    let family = family_class(k, 1);
    let axioms = axioms_for_vlin(k);
    let si = si_catalog(k, 7);
    let mut bad = Vec::new();
    for b in &si {
        let linear = common::is_linear(b);
        let embeds = family.iter().any(|a| !common::embeddings(a, b, None).is_empty());
        let model = axioms.axioms.iter().all(|g| holds(b, &g.gamma));
        if linear == embeds || linear != model {
            bad.push(format!("{} (linear {linear}, embeds {embeds}, model {model})", b.name().unwrap_or("?")));
        }
    }
    let pointed = verify(Theorem::Lemma51Pointed, &VerifyConfig::new(k, 7));
    println!(
        "info: criterion 10 with all of A_0, A_1 excluded (bottom-preserving embeddings): {} ({} checks)",
        if pointed.passed() { "holds" } else { "fails" },
        pointed.checked
    );
    let pass = bad.len() <= MAX_DISCREPANCIES;
    assert!(
        line("10", "linear axiomatization", pass, format!("{} SI algebras, {} counterexamples {bad:?}", si.len(), bad.len())),
        "{bad:?}"
    );
}

#[test]
fn c11_finite_model_property() {
    let k = 1;
    let axioms = axioms_for_vlin(k);
    let si = si_catalog(k, 7);
    let models: Vec<&FiniteRl> = si.iter().filter(|b| axioms.axioms.iter().all(|g| holds(b, &g.gamma))).collect();
    let mut refuted = 0;
    let mut bad = Vec::new();
    for phi in default_suite() {
        if !models.iter().any(|b| find_counterexample(b, &phi).is_some()) {
            continue;
        }
        refuted += 1;
        let ok = fmp_witness(&axioms, &phi, &si).is_some_and(|w| {
            let a = &w.subalgebra.algebra;
            let v = w.subalgebra.corestrict(&w.valuation).unwrap();
            common::law_violations(a).is_empty()
                && common::is_si(a)
                && eval(&phi, a, &v).unwrap() != a.one()
                && axioms.axioms.iter().all(|g| holds(a, &g.gamma))
        });
        if !ok {
            bad.push(phi.to_string());
        }
    }
    let pass = bad.len() <= MAX_DISCREPANCIES && refuted > 0;
    assert!(
        line("11", "finite model property", pass, format!("{} models, {refuted} refuted formulas, {} without witness", models.len(), bad.len())),
        "{bad:?}"
    );
}

fn reports_in_pool(threads: usize) -> String {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let mut out = String::new();
        for (k, n) in [(1, 5), (2, 4)] {
            let cfg = VerifyConfig::new(k, n);
            for t in Theorem::ALL {
                out.push_str(&verify(t, &cfg).to_json());
                out.push('\n');
            }
        }
        let mut buf = Vec::new();
        enumerate_kcirl(2, 6, &Filter::All).write_jsonl(&mut buf).unwrap();
        out.push_str(&String::from_utf8(buf).unwrap());
        out
    })
}

#[test]
fn c12_determinism() {
    let one = reports_in_pool(1);
    let eight = reports_in_pool(8);
    let pass = one == eight;
    assert!(line("12", "determinism", pass, format!("{} bytes, threads 1 vs 8 identical: {pass}", one.len())));
}
