//! `(·,∨,1)`-canonical formulas `γ(A, D∧, D→) = Γ^k → Δ`.
//!
//! `Γ` describes the join, fusion and constant structure of `A` completely
//! and its meets and residuals on the designated pairs only; `Δ` says that
//! some order relation of `A` fails. Variables are named `X<a>` after the
//! element index `a`.

mod embed;
mod search;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use embed::{
    all_d_embeddings, all_mjo_embeddings, find_d_embedding, is_d_embedding, lift_embedding, refutation_certificate,
    Certificate,
};

use crate::algebra::{AlgebraJson, FiniteRl};
use crate::enumeration::{enumerate_kcirl, Filter};
use crate::error::{Error, Result};
use crate::formula::{sub_values, Formula, Program, Valuation};

/// The designated pairs `(D∧, D→)` of a canonical formula.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DSpec {
    pub dwedge: BTreeSet<(usize, usize)>,
    pub dto: BTreeSet<(usize, usize)>,
}

impl DSpec {
    /// `(∅, ∅)`.
    pub fn stable() -> Self {
        DSpec::default()
    }

    /// `(A², A²)` for an algebra with `n` elements.
    pub fn splitting(n: usize) -> Self {
        let all: BTreeSet<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        DSpec { dwedge: all.clone(), dto: all }
    }

    /// Each pair of each relation is included independently with
    /// probability one half.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || -> BTreeSet<(usize, usize)> {
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.5)).collect()
        };
        let dwedge = pick();
        let dto = pick();
        DSpec { dwedge, dto }
    }

    pub fn mode(&self, n: usize) -> Mode {
        if self.dwedge.is_empty() && self.dto.is_empty() {
            Mode::Stable
        } else if self.dwedge.len() == n * n && self.dto.len() == n * n {
            Mode::Splitting
        } else {
            Mode::General
        }
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.dwedge.iter().chain(&self.dto).find(|&&(a, b)| a >= n || b >= n) {
            Some(&(a, b)) => Err(Error::PreconditionViolation(format!(
                "pair {a}-{b} out of range for an algebra of size {n}"
            ))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    General,
    Stable,
    Splitting,
}

#[derive(Clone, Debug)]
pub struct CanonicalFormula {
    pub algebra: FiniteRl,
    pub dspec: DSpec,
    /// `Γ`, before raising to the `k`-th power.
    pub gamma_lhs: Formula,
    pub delta: Formula,
    /// `Γ^k → Δ`.
    pub gamma: Formula,
    pub mode: Mode,
}

pub fn var_name(a: usize) -> String {
    format!("X{a}")
}

fn x(a: usize) -> Formula {
    Formula::var(var_name(a))
}

/// Builds `γ(A, D∧, D→)`. Conjuncts of `Γ` come in the order: constants,
/// fusion pairs, join pairs, residual pairs of `D→`, meet pairs of `D∧`,
/// each group in lexicographic pair order.
pub fn build_canonical(a: &FiniteRl, d: &DSpec) -> Result<CanonicalFormula> {
    if !a.is_subdirectly_irreducible()? {
        return Err(Error::NotSi);
    }
    let n = a.size();
    d.check_range(n)?;
    let pairs = || (0..n).flat_map(|p| (0..n).map(move |q| (p, q)));
    let mut conj = vec![
        Formula::iff(x(a.bottom()), Formula::Bot),
        Formula::iff(x(a.one()), Formula::One),
    ];
    conj.extend(pairs().map(|(p, q)| Formula::iff(x(a.mult(p, q)), Formula::fuse(x(p), x(q)))));
    conj.extend(pairs().map(|(p, q)| Formula::iff(x(a.join(p, q)), Formula::join(x(p), x(q)))));
    conj.extend(d.dto.iter().map(|&(p, q)| Formula::iff(x(a.imp(p, q)), Formula::imp(x(p), x(q)))));
    conj.extend(
        d.dwedge.iter().map(|&(p, q)| Formula::iff(x(a.meet(p, q)), Formula::meet(x(p), x(q)))),
    );
    let gamma_lhs = Formula::meet_all(conj);
    let delta = Formula::join_all(pairs().filter(|&(p, q)| !a.le(p, q)).map(|(p, q)| Formula::imp(x(p), x(q))));
    let gamma = Formula::imp(Formula::power(gamma_lhs.clone(), a.k()), delta.clone());
    Ok(CanonicalFormula {
        algebra: a.clone(),
        dspec: d.clone(),
        gamma_lhs,
        delta,
        gamma,
        mode: d.mode(n),
    })
}

#[derive(Serialize, Deserialize)]
struct CanonicalJson {
    algebra: AlgebraJson,
    dwedge: Vec<(usize, usize)>,
    dto: Vec<(usize, usize)>,
    gamma: String,
}

impl CanonicalFormula {
    /// The identity assignment `X_a ↦ a`.
    pub fn identity_valuation(&self) -> Valuation {
        self.algebra.elements().map(|a| (var_name(a), a)).collect()
    }

    pub fn to_json(&self) -> String {
        let j = CanonicalJson {
            algebra: AlgebraJson::from(&self.algebra),
            dwedge: self.dspec.dwedge.iter().copied().collect(),
            dto: self.dspec.dto.iter().copied().collect(),
            gamma: self.gamma.to_string(),
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }

    /// Rebuilds from JSON and checks that the stored formula text matches
    /// the rebuilt one.
    pub fn from_json(text: &str) -> Result<Self> {
        let j: CanonicalJson = serde_json::from_str(text)?;
        let algebra = FiniteRl::try_from(&j.algebra)?;
        let dspec = DSpec {
            dwedge: j.dwedge.into_iter().collect(),
            dto: j.dto.into_iter().collect(),
        };
        let c = build_canonical(&algebra, &dspec)?;
        if c.gamma.to_string() != j.gamma {
            return Err(Error::PreconditionViolation(
                "gamma text does not match the algebra and pairs".into(),
            ));
        }
        Ok(c)
    }

    /// A valuation `μ` into `c` with `μ(Γ^k) = 1` and `μ(Δ) ≤ s_C`, the
    /// lexicographically least one if any.
    pub fn refutes_1(&self, c: &FiniteRl) -> Result<Option<Valuation>> {
        if !c.is_subdirectly_irreducible()? {
            return Err(Error::NotSi);
        }
        let s = c.second_greatest().expect("SI algebras have a second-greatest element");
        let lhs = Formula::power(self.gamma_lhs.clone(), self.algebra.k());
        let prog = Program::compile(&[&lhs, &self.delta]);
        let one = c.one();
        Ok(prog
            .search(c, |_, r| !(r[0] == one && c.le(r[1], s)))
            .map(|assign| prog.valuation(&assign)))
    }
}

/// `D∧` and `D→` read off `S = Sub_v(φ)`: the pairs of `S` whose meet,
/// respectively residual, stays in `S`.
pub fn dspec_of_valuation(a: &FiniteRl, phi: &Formula, v: &Valuation) -> Result<DSpec> {
    let s = sub_values(phi, a, v)?;
    let inside = |x: usize| s.binary_search(&x).is_ok();
    let mut d = DSpec::default();
    for &p in &s {
        for &q in &s {
            if inside(a.meet(p, q)) {
                d.dwedge.insert((p, q));
            }
            if inside(a.imp(p, q)) {
                d.dto.insert((p, q));
            }
        }
    }
    Ok(d)
}

/// The system associated with `φ` over the given SI algebras: one entry per
/// algebra and distinct DSpec arising from a refuting valuation.
pub fn associated_system_over(phi: &Formula, algebras: &[FiniteRl]) -> Vec<(FiniteRl, DSpec)> {
    algebras
        .par_iter()
        .filter(|a| a.is_si())
        .flat_map_iter(|a| {
            let prog = Program::compile(&[phi]);
            let mut seen = BTreeSet::new();
            prog.search(a, |assign, roots| {
                if roots[0] != a.one() {
                    let v = prog.valuation(assign);
                    seen.insert(dspec_of_valuation(a, phi, &v).expect("valuation is total"));
                }
                true
            });
            seen.into_iter().map(move |d| (a.clone(), d))
        })
        .collect()
}

/// The system associated with `φ`, restricted to SI algebras of at most
/// `size_bound` elements.
pub fn associated_system(phi: &Formula, k: u32, size_bound: usize) -> Vec<(FiniteRl, DSpec)> {
    let cat = enumerate_kcirl(k, size_bound, &Filter::Si);
    associated_system_over(phi, &cat.entries)
}
