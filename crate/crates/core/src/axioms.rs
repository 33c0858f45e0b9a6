//! Stable axiomatizations of varieties generated by chains.
//!
//! `𝔸_i` is the class of k-CIRL algebras whose lattice reduct is `A_i`
//! (see [`lattice_family_ai`]), `Lin_h` the class of chains with exactly
//! `h` elements.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{canonical_form, prepend_bottom, FiniteRl};
use crate::canonical::{build_canonical, find_d_embedding, CanonicalFormula, DSpec};
use crate::closure::{closure_mult_join_one, complete_to_rl, Subalgebra};
use crate::enumeration::{enumerate_kcirl, lattice_family_ai, Filter};
use crate::formula::{find_counterexample, sub_values, Formula, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Lin,
    /// Chains of at most `h` elements.
    LinH(usize),
}

#[derive(Clone, Debug)]
pub struct StableAxiomatization {
    pub k: u32,
    pub scope: Scope,
    pub axioms: Vec<CanonicalFormula>,
}

impl StableAxiomatization {
    pub fn algebras(&self) -> impl Iterator<Item = &FiniteRl> {
        self.axioms.iter().map(|c| &c.algebra)
    }

    /// Whether `b` satisfies every axiom.
    pub fn models(&self, b: &FiniteRl) -> bool {
        self.axioms.iter().all(|c| c.holds_in(b))
    }

    /// Whether some axiom algebra D-embeds into `b` with `D = (∅, ∅)`.
    pub fn some_embeds(&self, b: &FiniteRl) -> bool {
        self.algebras().any(|a| find_d_embedding(a, b, &DSpec::stable()).expect("same k").is_some())
    }
}

/// `𝔸_i` for potency `k`.
pub fn family_class(k: u32, i: usize) -> Vec<FiniteRl> {
    let l = lattice_family_ai(i);
    enumerate_kcirl(k, l.size(), &Filter::LatticeReduct(l)).entries
}

/// Chains of exactly `h` elements.
pub fn lin_class(k: u32, h: usize) -> Vec<FiniteRl> {
    enumerate_kcirl(k, h, &Filter::Linear).entries.into_iter().filter(|a| a.size() == h).collect()
}

fn stable_axioms(algebras: impl IntoIterator<Item = FiniteRl>) -> Vec<CanonicalFormula> {
    algebras
        .into_iter()
        .map(|a| build_canonical(&a, &DSpec::stable()).expect("axiom algebras are SI"))
        .collect()
}

/// `{γ(A) | A ∈ 𝔸_{k²}}`.
pub fn axioms_for_vlin(k: u32) -> StableAxiomatization {
    let kk = (k * k) as usize;
    StableAxiomatization { k, scope: Scope::Lin, axioms: stable_axioms(family_class(k, kk)) }
}

/// `{γ(A) | A ∈ 𝔸_i, i ≤ k²}`, the variant for a signature containing `⊥`,
/// where embeddings must preserve the bottom.
pub fn axioms_for_vlin_pointed(k: u32) -> StableAxiomatization {
    let kk = (k * k) as usize;
    let algebras = (0..=kk).flat_map(|i| family_class(k, i));
    StableAxiomatization { k, scope: Scope::Lin, axioms: stable_axioms(algebras) }
}

/// `{γ(A) | A ∈ Lin_len ∪ 𝔸_{k²}}` for the variety generated by chains of
/// at most `h` elements. The theorem's reading takes `len = h`, the
/// lemma's takes `len = h + 1`; see [`axioms_for_vlin_h`] and
/// [`axioms_for_vlin_h_lemma`].
pub fn axioms_excluding_chains(k: u32, h: usize, len: usize) -> StableAxiomatization {
    let kk = (k * k) as usize;
    let algebras = lin_class(k, len).into_iter().chain(family_class(k, kk));
    StableAxiomatization { k, scope: Scope::LinH(h), axioms: stable_axioms(algebras) }
}

/// `{γ(A) | A ∈ Lin_h ∪ 𝔸_{k²}}`.
pub fn axioms_for_vlin_h(k: u32, h: usize) -> StableAxiomatization {
    axioms_excluding_chains(k, h, h)
}

/// `{γ(A) | A ∈ Lin_{h+1} ∪ 𝔸_{k²}}`.
pub fn axioms_for_vlin_h_lemma(k: u32, h: usize) -> StableAxiomatization {
    axioms_excluding_chains(k, h, h + 1)
}

/// Outcome of the down-set check behind stability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    /// Catalog indices of the SI models of the axioms.
    pub model_class: Vec<usize>,
    /// `(a, b)`: `b` is a model, `a` is not, yet `a` embeds into `b`.
    pub violations: Vec<(usize, usize)>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the SI models of `axioms` in `catalog` are closed under SI
/// `(·,∨,1)`-subalgebras, using bottom-preserving embeddings.
pub fn check_stability(axioms: &[CanonicalFormula], catalog: &[FiniteRl]) -> StabilityReport {
    let si: Vec<usize> = (0..catalog.len()).filter(|&i| catalog[i].is_si()).collect();
    let member: Vec<bool> = catalog
        .par_iter()
        .map(|b| b.is_si() && axioms.iter().all(|c| c.holds_in(b)))
        .collect();
    let model_class: Vec<usize> = si.iter().copied().filter(|&i| member[i]).collect();
    let pairs: Vec<(usize, usize)> = model_class
        .iter()
        .flat_map(|&b| si.iter().filter(|&&a| !member[a]).map(move |&a| (a, b)))
        .collect();
    let violations = pairs
        .into_par_iter()
        .filter(|&(a, b)| {
            find_d_embedding(&catalog[a], &catalog[b], &DSpec::stable()).expect("same k").is_some()
        })
        .collect();
    StabilityReport { model_class, violations }
}

/// A finite countermodel extracted from a catalog model.
#[derive(Clone, Debug)]
pub struct FmpWitness {
    /// Catalog index of the refuted model.
    pub host: usize,
    pub valuation: Valuation,
    pub subalgebra: Subalgebra,
}

/// Finds the first catalog model of `axioms` refuting `φ` and returns the
/// `(·,∨,1,⊥)`-subalgebra generated by `Sub_v(φ)` for the least refuting
/// valuation `v`, after checking that it is SI, refutes `φ` and is again a
/// model.
pub fn fmp_witness(axioms: &StableAxiomatization, phi: &Formula, catalog: &[FiniteRl]) -> Option<FmpWitness> {
    let hosts: Vec<Option<Valuation>> = catalog
        .par_iter()
        .map(|b| {
            if !b.is_si() || b.k() != axioms.k || !axioms.models(b) {
                return None;
            }
            find_counterexample(b, phi)
        })
        .collect();
    let (host, v) = hosts.into_iter().enumerate().find_map(|(i, v)| v.map(|v| (i, v)))?;
    let b = &catalog[host];
    let mut seed = sub_values(phi, b, &v).expect("valuation is total");
    seed.push(b.bottom());
    let sub = complete_to_rl(&closure_mult_join_one(b, &seed));
    let w = sub.corestrict(&v).expect("seed covers the valuation");
    let ok = sub.algebra.is_si() && !holds_at(&sub.algebra, phi, &w) && axioms.models(&sub.algebra);
    ok.then_some(FmpWitness { host, valuation: v, subalgebra: sub })
}

fn holds_at(a: &FiniteRl, phi: &Formula, v: &Valuation) -> bool {
    crate::formula::eval(phi, a, v).expect("valuation is total") == a.one()
}

/// The subalgebra extracted from a non-linear algebra: for the first
/// incomparable pair `p, q`, `Y` is the set of nonempty products of `p`
/// and `q`, `c, d` is a minimal incomparable pair in `Y`, and
/// `J = {1, c∨d, c, d} ∪ {e ∈ Y | e ≤ c, d}`.
#[derive(Clone, Debug)]
pub struct JWitness {
    pub pair: (usize, usize),
    pub c: usize,
    pub d: usize,
    pub carrier: Vec<usize>,
    /// Whether `J` is closed under `·`, `∨` and contains `1`.
    pub closed: bool,
    /// `J ∪ {⊥}`, completed, when `J` is closed.
    pub bounded: Option<Subalgebra>,
    /// `i` such that the lattice of `J ∪ {⊥}` is `A_i`.
    pub family_index: Option<usize>,
}

pub fn j_set(b: &FiniteRl) -> Option<JWitness> {
    let incomparable = |x: usize, y: usize| !b.le(x, y) && !b.le(y, x);
    let (p, q) = b.elements().flat_map(|x| (x + 1..b.size()).map(move |y| (x, y))).find(|&(x, y)| incomparable(x, y))?;
    let k = b.k();
    let mut y: BTreeSet<usize> = BTreeSet::new();
    for i in 0..=k {
        for j in 0..=k {
            if i + j > 0 {
                y.insert(b.mult(b.power(p, i), b.power(q, j)));
            }
        }
    }
    let (mut c, mut d) = (p, q);
    loop {
        if let Some(&e) = y.iter().find(|&&e| b.lt(e, c) && incomparable(e, d)) {
            c = e;
        } else if let Some(&e) = y.iter().find(|&&e| b.lt(e, d) && incomparable(c, e)) {
            d = e;
        } else {
            break;
        }
    }
    let mut carrier: BTreeSet<usize> = [b.one(), b.join(c, d), c, d].into_iter().collect();
    carrier.extend(y.iter().copied().filter(|&e| b.le(e, c) && b.le(e, d)));
    let carrier: Vec<usize> = carrier.into_iter().collect();
    let inside = |x: usize| carrier.binary_search(&x).is_ok();
    let closed = carrier.iter().all(|&x| carrier.iter().all(|&z| inside(b.mult(x, z)) && inside(b.join(x, z))));
    let (bounded, family_index) = if closed {
        let mut seed = carrier.clone();
        seed.push(b.bottom());
        let sub = complete_to_rl(&closure_mult_join_one(b, &seed));
        let n = sub.algebra.size();
        let index = (n >= 5)
            .then(|| n - 5)
            .filter(|&i| crate::algebra::lattice_canonical_form(sub.algebra.lattice()).0
                == crate::algebra::lattice_canonical_form(&lattice_family_ai(i)).0);
        (Some(sub), index)
    } else {
        (None, None)
    };
    Some(JWitness { pair: (p, q), c, d, carrier, closed, bounded, family_index })
}

/// Iterates [`prepend_bottom`] until `a` has `h` elements.
pub fn pad_to(a: &FiniteRl, h: usize) -> FiniteRl {
    let mut out = a.clone();
    while out.size() < h {
        out = prepend_bottom(&out);
    }
    out
}

/// Whether `a` is isomorphic to a member of `class`.
pub fn is_member(a: &FiniteRl, class: &[FiniteRl]) -> bool {
    let f = canonical_form(a);
    class.iter().any(|b| canonical_form(b) == f)
}
