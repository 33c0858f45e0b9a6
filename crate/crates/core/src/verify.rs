//! Exhaustive checks of the characterization results over catalogs of
//! bounded size. Each check yields a [`Report`]; counterexamples are
//! collected as JSON witnesses.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{all_filters, all_si_quotients, quotient, FiniteRl};
use crate::axioms::{
    axioms_for_vlin, axioms_for_vlin_h, axioms_for_vlin_h_lemma, axioms_for_vlin_pointed, check_stability,
    fmp_witness, j_set, lin_class, pad_to, StableAxiomatization,
};
use crate::canonical::{
    all_mjo_embeddings, associated_system_over, build_canonical, find_d_embedding, is_d_embedding,
    lift_embedding, refutation_certificate, CanonicalFormula, DSpec,
};
use crate::enumeration::{enumerate_kcirl, Filter};
use crate::formula::{eval, find_counterexample, parse, Formula};

const MAX_WITNESSES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    Lemma36,
    Prop38,
    Prop39,
    Thm45,
    Lemma43,
    Lemma51,
    Lemma51Pointed,
    Lemma53,
    StabilityFmp,
}

impl Theorem {
    pub const ALL: [Theorem; 9] = [
        Theorem::Lemma36,
        Theorem::Prop38,
        Theorem::Prop39,
        Theorem::Thm45,
        Theorem::Lemma43,
        Theorem::Lemma51,
        Theorem::Lemma51Pointed,
        Theorem::Lemma53,
        Theorem::StabilityFmp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Lemma36 => "lemma3.6",
            Theorem::Prop38 => "prop3.8",
            Theorem::Prop39 => "prop3.9",
            Theorem::Thm45 => "thm4.5",
            Theorem::Lemma43 => "lemma4.3",
            Theorem::Lemma51 => "lemma5.1",
            Theorem::Lemma51Pointed => "lemma5.1-pointed",
            Theorem::Lemma53 => "lemma5.3",
            Theorem::StabilityFmp => "stability-fmp",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown theorem `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub claim: String,
    pub bound: usize,
    pub k: u32,
    pub status: Status,
    pub checked: u64,
    pub witnesses: Vec<Value>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub notes: Value,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub k: u32,
    /// Bound on the algebras a formula is tested in.
    pub max_size: usize,
    /// Bound on the algebras a formula is built from.
    pub small_size: usize,
    /// Chain length for the bounded-height results.
    pub h: usize,
    pub formulas: Vec<Formula>,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(k: u32, max_size: usize) -> Self {
        VerifyConfig { k, max_size, small_size: max_size.min(4), h: 3, formulas: default_suite(), seed: 0 }
    }
}

/// Twenty test formulas in at most three variables.
pub const DEFAULT_SUITE: [&str; 20] = [
    "(x -> y) | (y -> x)",
    "(x -> 0) | ((x -> 0) -> 0)",
    "x | (x -> 0)",
    "x & (y | z) -> (x & y) | (x & z)",
    "(x | y) & (x | z) -> x | (y & z)",
    "x & y -> x*y",
    "x -> x*x",
    "((x -> y) -> x) -> x",
    "((x -> 0) -> 0) -> x",
    "(x*y -> 0) | (x & y -> x*y)",
    "(x -> y | z) -> (x -> y) | (x -> z)",
    "((x -> y) -> y) -> ((y -> x) -> x)",
    "(x & y -> 0) -> (x -> 0) | (y -> 0)",
    "x*x | (x -> 0)",
    "(x -> y) | (y -> z) | (z -> x)",
    "x^2 <-> x^3",
    "(x -> y) -> ((y -> z) -> (x -> z))",
    "x*(x -> y) -> y",
    "(x -> y*y) | (y -> x)",
    "x | y | (x -> y) | (y -> z)",
];

pub fn default_suite() -> Vec<Formula> {
    DEFAULT_SUITE.iter().map(|s| parse(s).expect("suite formulas parse")).collect()
}

/// Reads a formula suite: one formula per line, `#` starts a comment.
pub fn parse_suite(text: &str) -> crate::Result<Vec<Formula>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse)
        .collect()
}

fn name(a: &FiniteRl) -> String {
    a.name().map_or_else(|| a.to_json(), str::to_owned)
}

/// Per-task outcome, merged in task order.
#[derive(Default)]
struct Tally {
    checked: u64,
    witnesses: Vec<Value>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok {
            self.witnesses.push(witness());
        }
    }

    fn merge(parts: impl IntoIterator<Item = Tally>) -> Tally {
        let mut out = Tally::default();
        for p in parts {
            out.checked += p.checked;
            out.witnesses.extend(p.witnesses);
        }
        out
    }
}

fn report(th: Theorem, cfg: &VerifyConfig, t: Tally, notes: Value) -> Report {
    let status = if t.witnesses.is_empty() { Status::Verified } else { Status::Violated };
    let mut witnesses = t.witnesses;
    witnesses.truncate(MAX_WITNESSES);
    Report { claim: th.name().to_owned(), bound: cfg.max_size, k: cfg.k, status, checked: t.checked, witnesses, notes }
}

fn dspecs(a: &FiniteRl, seed: u64) -> Vec<(String, DSpec)> {
    let n = a.size();
    let mut out = vec![("stable".to_owned(), DSpec::stable()), ("splitting".to_owned(), DSpec::splitting(n))];
    for j in 0..3 {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(j);
        out.push((format!("random{j}"), DSpec::random(n, s)));
    }
    out
}

struct Catalogs {
    all: Vec<FiniteRl>,
    si: Vec<FiniteRl>,
    small_si: Vec<FiniteRl>,
}

fn catalogs(cfg: &VerifyConfig) -> Catalogs {
    let all = enumerate_kcirl(cfg.k, cfg.max_size, &Filter::All).entries;
    let si: Vec<FiniteRl> = all.iter().filter(|a| a.is_si()).cloned().collect();
    let small_si = si.iter().filter(|a| a.size() <= cfg.small_size).cloned().collect();
    Catalogs { all, si, small_si }
}

/// Runs one check.
pub fn verify(th: Theorem, cfg: &VerifyConfig) -> Report {
    let cats = catalogs(cfg);
    match th {
        Theorem::Lemma36 => lemma36(cfg, &cats),
        Theorem::Prop38 => prop38(cfg, &cats),
        Theorem::Prop39 => prop39(cfg, &cats),
        Theorem::Thm45 => thm45(cfg, &cats),
        Theorem::Lemma43 => lemma43(cfg, &cats),
        Theorem::Lemma51 => lemma51(cfg, &cats, &axioms_for_vlin(cfg.k), Theorem::Lemma51),
        Theorem::Lemma51Pointed => lemma51(cfg, &cats, &axioms_for_vlin_pointed(cfg.k), Theorem::Lemma51Pointed),
        Theorem::Lemma53 => lemma53(cfg, &cats),
        Theorem::StabilityFmp => stability_fmp(cfg, &cats),
    }
}

/// `A ⊭₁ γ(A, D)` via the identity, and `C ⊭₁ γ(A, D)` exactly when
/// `A` D-embeds into `C`.
fn lemma36(cfg: &VerifyConfig, cats: &Catalogs) -> Report {
    let tasks: Vec<(usize, String, DSpec)> = cats
        .small_si
        .iter()
        .enumerate()
        .flat_map(|(i, a)| dspecs(a, cfg.seed.wrapping_add(i as u64)).into_iter().map(move |(l, d)| (i, l, d)))
        .collect();
    let parts: Vec<Tally> = tasks
        .par_iter()
        .map(|(i, label, d)| {
            let a = &cats.small_si[*i];
            let mut t = Tally::default();
            let g = build_canonical(a, d).expect("SI input");
            let id = g.identity_valuation();
            let lhs = eval(&Formula::power(g.gamma_lhs.clone(), a.k()), a, &id).expect("total");
            let delta = eval(&g.delta, a, &id).expect("total");
            let s = a.second_greatest().expect("SI");
            t.check(lhs == a.one() && a.le(delta, s), || json!({"item": 1, "a": name(a), "dspec": label}));
            for c in &cats.si {
                let refuted = g.refutes_1(c).expect("SI input").is_some();
                let embeds = find_d_embedding(a, c, d).expect("same k").is_some();
                t.check(refuted == embeds, || {
                    json!({"item": 2, "a": name(a), "c": name(c), "dspec": label, "refutes_1": refuted, "embeds": embeds})
                });
            }
            t
        })
        .collect();
    report(Theorem::Lemma36, cfg, Tally::merge(parts), Value::Null)
}

/// For each suite formula `φ` and algebra `B`: `B ⊭ φ` iff some member of
/// the associated system D-embeds into an SI quotient of `B`, iff `B`
/// refutes some canonical formula of the system.
fn prop38(cfg: &VerifyConfig, cats: &Catalogs) -> Report {
    let mut parts = Vec::new();
    let mut sizes = Vec::new();
    for phi in &cfg.formulas {
        let system = associated_system_over(phi, &cats.si);
        sizes.push(system.len());
        let gammas: Vec<CanonicalFormula> =
            system.iter().map(|(a, d)| build_canonical(a, d).expect("SI members")).collect();
        let per_b: Vec<Tally> = cats
            .all
            .par_iter()
            .map(|b| {
                let mut t = Tally::default();
                let refuted = find_counterexample(b, phi).is_some();
                let quotients = all_si_quotients(b);
                let embeds = system.iter().any(|(a, d)| {
                    quotients.iter().any(|q| find_d_embedding(a, &q.algebra, d).expect("same k").is_some())
                });
                t.check(refuted == embeds, || {
                    json!({"part": "embedding", "formula": phi.to_string(), "b": name(b), "refuted": refuted})
                });
                let gamma_refuted = gammas.iter().any(|g| !g.holds_in(b));
                t.check(refuted == gamma_refuted, || {
                    json!({"part": "axioms", "formula": phi.to_string(), "b": name(b), "refuted": refuted})
                });
                t
            })
            .collect();
        parts.extend(per_b);
    }
    report(Theorem::Prop38, cfg, Tally::merge(parts), json!({"system_sizes": sizes}))
}

/// `B ⊭ γ` iff a certificate exists; certificates are valid; when `B ⊨ γ`
/// no SI quotient of `B` admits a D-embedding at all.
fn prop39(cfg: &VerifyConfig, cats: &Catalogs) -> Report {
    let tasks: Vec<(usize, String, DSpec)> = cats
        .small_si
        .iter()
        .enumerate()
        .flat_map(|(i, a)| dspecs(a, cfg.seed.wrapping_add(i as u64)).into_iter().map(move |(l, d)| (i, l, d)))
        .collect();
    let parts: Vec<Tally> = tasks
        .par_iter()
        .map(|(i, label, d)| {
            let a = &cats.small_si[*i];
            let g = build_canonical(a, d).expect("SI input");
            let mut t = Tally::default();
            for b in &cats.all {
                let models = g.holds_in(b);
                let cert = refutation_certificate(b, &g);
                let w = || json!({"a": name(a), "b": name(b), "dspec": label, "models": models});
                match cert {
                    Ok(Some(c)) => t.check(
                        !models && c.quotient.algebra.is_si() && is_d_embedding(a, &c.quotient.algebra, d, &c.embedding),
                        w,
                    ),
                    Ok(None) => {
                        let any = all_si_quotients(b)
                            .iter()
                            .any(|q| find_d_embedding(a, &q.algebra, d).expect("same k").is_some());
                        t.check(models && !any, w)
                    }
                    Err(_) => t.check(false, w),
                }
            }
            t
        })
        .collect();
    report(Theorem::Prop39, cfg, Tally::merge(parts), Value::Null)
}

/// Injective maps `A → C` preserving every operation, found by brute force.
fn has_full_embedding(a: &FiniteRl, c: &FiniteRl) -> bool {
    let (n, m) = (a.size(), c.size());
    if n > m {
        return false;
    }
    let mut h = vec![0usize; n];
    loop {
        let mut seen = vec![false; m];
        if h.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) && a.is_full_homomorphism(c, &h) {
            return true;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            h[i] += 1;
            if h[i] < m {
                break;
            }
            h[i] = 0;
        }
    }
}

/// Stable mode: for SI `A`, `B`, `B ⊭ γ(A)` iff `A` D-embeds into `B`.
/// Splitting mode: `B ⊭ γ(A, A², A²)` iff `A` is isomorphic to a
/// subalgebra of an SI quotient of `B`.
fn thm45(cfg: &VerifyConfig, cats: &Catalogs) -> Report {
    let parts: Vec<Tally> = cats
        .small_si
        .par_iter()
        .map(|a| {
            let mut t = Tally::default();
            let stable = build_canonical(a, &DSpec::stable()).expect("SI input");
            let split = build_canonical(a, &DSpec::splitting(a.size())).expect("SI input");
            for b in &cats.si {
                let refuted = !stable.holds_in(b);
                let embeds = find_d_embedding(a, b, &DSpec::stable()).expect("same k").is_some();
                t.check(refuted == embeds, || {
                    json!({"mode": "stable", "a": name(a), "b": name(b), "refuted": refuted, "embeds": embeds})
                });
                let refuted = !split.holds_in(b);
                let sub = all_si_quotients(b).iter().any(|q| has_full_embedding(a, &q.algebra));
                t.check(refuted == sub, || {
                    json!({"mode": "splitting", "a": name(a), "b": name(b), "refuted": refuted, "subalgebra": sub})
                });
            }
            t
        })
        .collect();
    report(Theorem::Thm45, cfg, Tally::merge(parts), Value::Null)
}

/// Every `(·,∨,1)`-embedding of an SI algebra into a quotient lifts along
/// the quotient map.
fn lemma43(cfg: &VerifyConfig, cats: &Catalogs) -> Report {
    let tasks: Vec<(usize, usize)> =
        (0..cats.si.len()).flat_map(|i| (0..cats.all.len()).map(move |j| (i, j))).collect();
    let parts: Vec<Tally> = tasks
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&cats.si[i], &cats.all[j]);
            let mut t = Tally::default();
            for f in all_filters(b) {
                let q = quotient(b, &f).expect("valid quotient");
                for h in all_mjo_embeddings(a, &q.algebra).expect("same k") {
                    let ok = match lift_embedding(a, b, &q.surjection, &q.algebra, &h) {
                        Ok(g) => {
                            let mut seen = vec![false; b.size()];
                            g.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
                                && a.is_homomorphism_mjo(b, &g)
                                && a.elements().all(|x| q.surjection[g[x]] == h[x])
                        }
                        Err(_) => false,
                    };
                    t.check(ok, || json!({"a": name(a), "b": name(b), "filter": f.members, "h": h}));
                }
            }
            t
        })
        .collect();
    report(Theorem::Lemma43, cfg, Tally::merge(parts), Value::Null)
}

/// For SI `B`: `B` is linear iff no axiom algebra D-embeds into it, iff
/// `B` satisfies every axiom; and the J-set of a non-linear `B` is a
/// `(·,∨,1)`-subalgebra.
fn lemma51(cfg: &VerifyConfig, cats: &Catalogs, ax: &StableAxiomatization, th: Theorem) -> Report {
    let parts: Vec<Tally> = cats
        .si
        .par_iter()
        .map(|b| {
            let mut t = Tally::default();
            let linear = b.is_linear();
            let embeds = ax.some_embeds(b);
            t.check(linear != embeds, || json!({"part": "embedding", "b": name(b), "linear": linear}));
            let models = ax.models(b);
            t.check(linear == models, || json!({"part": "axioms", "b": name(b), "linear": linear}));
            if let Some(j) = j_set(b) {
                t.check(j.closed, || json!({"part": "j-set", "b": name(b), "carrier": j.carrier}));
            }
            t
        })
        .collect();
    let mut by_size = std::collections::BTreeMap::new();
    for a in ax.algebras() {
        *by_size.entry(a.size().to_string()).or_insert(0usize) += 1;
    }
    let notes = json!({"axioms": ax.axioms.len(), "axioms_by_size": by_size});
    report(th, cfg, Tally::merge(parts), notes)
}

/// For SI `B`: `B` is a chain of at most `h` elements iff no algebra of
/// `Lin_{h+1} ∪ 𝔸_{k²}` D-embeds into `B`. The reading with `Lin_h` is
/// evaluated as well and reported in the notes; only the lemma's own
/// reading decides the status. Chains shorter than `h` must embed into a
/// chain of exactly `h` elements via iterated bottom extension.
fn lemma53(cfg: &VerifyConfig, cats: &Catalogs) -> Report {
    let h = cfg.h;
    let lemma = axioms_for_vlin_h_lemma(cfg.k, h);
    let theorem = axioms_for_vlin_h(cfg.k, h);
    let rows: Vec<(Tally, bool)> = cats
        .si
        .par_iter()
        .map(|b| {
            let mut t = Tally::default();
            let inside = b.is_linear() && b.size() <= h;
            let embeds = lemma.some_embeds(b);
            t.check(inside != embeds, || json!({"reading": "lin_h+1", "part": "embedding", "b": name(b)}));
            let models = lemma.models(b);
            t.check(inside == models, || json!({"reading": "lin_h+1", "part": "axioms", "b": name(b)}));
            let theorem_ok = inside != theorem.some_embeds(b) && inside == theorem.models(b);
            (t, theorem_ok)
        })
        .collect();
    let theorem_ok = rows.iter().all(|r| r.1);
    let mut t = Tally::merge(rows.into_iter().map(|r| r.0));
    for n in 1..=h {
        for a in lin_class(cfg.k, n) {
            let padded = pad_to(&a, h);
            let inclusion: Vec<usize> = a.elements().map(|x| x + h - n).collect();
            t.check(padded.size() == h && a.is_homomorphism_mjo(&padded, &inclusion), || {
                json!({"part": "padding", "a": name(&a)})
            });
        }
    }
    let lemma_ok = t.witnesses.is_empty();
    let notes = json!({
        "h": h,
        "lin_h+1_reading": if lemma_ok { "holds" } else { "fails" },
        "lin_h_reading": if theorem_ok { "holds" } else { "fails" },
    });
    report(Theorem::Lemma53, cfg, t, notes)
}

/// The SI models of the axioms for the variety generated by chains are
/// closed under SI subalgebras, and every suite formula refuted by some
/// model has a finite SI countermodel inside the model class.
fn stability_fmp(cfg: &VerifyConfig, cats: &Catalogs) -> Report {
    let ax = axioms_for_vlin(cfg.k);
    let stab = check_stability(&ax.axioms, &cats.si);
    let mut t = Tally::default();
    t.checked += stab.model_class.len() as u64;
    for &(a, b) in &stab.violations {
        t.witnesses.push(json!({"part": "stability", "a": name(&cats.si[a]), "b": name(&cats.si[b])}));
    }
    let models: Vec<&FiniteRl> = stab.model_class.iter().map(|&i| &cats.si[i]).collect();
    let rows: Vec<(bool, bool, String)> = cfg
        .formulas
        .par_iter()
        .map(|phi| {
            let refuted = models.iter().any(|b| find_counterexample(b, phi).is_some());
            let witness = fmp_witness(&ax, phi, &cats.si);
            (refuted, witness.is_some(), phi.to_string())
        })
        .collect();
    let mut refuted_count = 0;
    for (refuted, found, phi) in rows {
        refuted_count += refuted as usize;
        t.check(refuted == found, || json!({"part": "fmp", "formula": phi, "refuted": refuted}));
    }
    let notes = json!({"model_class": stab.model_class.len(), "refuted_formulas": refuted_count});
    report(Theorem::StabilityFmp, cfg, t, notes)
}
