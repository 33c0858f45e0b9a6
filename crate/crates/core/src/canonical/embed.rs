//! D-embedding search, refutation certificates and lifting of embeddings
//! through quotients.

use serde::Serialize;

use super::{CanonicalFormula, DSpec};
use crate::algebra::{all_filters, ensure_same_k, quotient, AlgebraJson, DeductiveFilter, FiniteRl, Quotient};
use crate::error::{Error, Result};
use crate::formula::{eval, Formula, Valuation};

/// Whether `h: A → B` is injective, preserves `·`, `∨`, `1` and `⊥`, and
/// preserves `∧` on `D∧` and `→` on `D→`.
pub fn is_d_embedding(a: &FiniteRl, b: &FiniteRl, d: &DSpec, h: &[usize]) -> bool {
    let mut used = vec![false; b.size()];
    for &y in h {
        if y >= b.size() || std::mem::replace(&mut used[y], true) {
            return false;
        }
    }
    a.is_homomorphism_mjo(b, h)
        && h[a.bottom()] == b.bottom()
        && d.dwedge.iter().all(|&(p, q)| h[a.meet(p, q)] == b.meet(h[p], h[q]))
        && d.dto.iter().all(|&(p, q)| h[a.imp(p, q)] == b.imp(h[p], h[q]))
}

struct Search<'a> {
    a: &'a FiniteRl,
    b: &'a FiniteRl,
    d: &'a DSpec,
    h: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Checks every constraint that involves `x` and only assigned elements.
    fn consistent(&self, x: usize) -> bool {
        let (a, b, h) = (self.a, self.b, &self.h);
        let hx = h[x].unwrap();
        for y in a.elements() {
            let Some(hy) = h[y] else { continue };
            if a.le(x, y) != b.le(hx, hy) || a.le(y, x) != b.le(hy, hx) {
                return false;
            }
            for (r, img) in [(a.mult(x, y), b.mult(hx, hy)), (a.join(x, y), b.join(hx, hy))] {
                if h[r].is_some_and(|hr| hr != img) {
                    return false;
                }
            }
            // x as the value of an already assigned pair
            for z in a.elements() {
                let Some(hz) = h[z] else { continue };
                if (a.mult(y, z) == x && b.mult(hy, hz) != hx)
                    || (a.join(y, z) == x && b.join(hy, hz) != hx)
                {
                    return false;
                }
            }
        }
        for &(p, q) in self.d.dwedge.iter() {
            if let (Some(hp), Some(hq), Some(hr)) = (h[p], h[q], h[a.meet(p, q)]) {
                if b.meet(hp, hq) != hr {
                    return false;
                }
            }
        }
        for &(p, q) in self.d.dto.iter() {
            if let (Some(hp), Some(hq), Some(hr)) = (h[p], h[q], h[a.imp(p, q)]) {
                if b.imp(hp, hq) != hr {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, x: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if x == self.a.size() {
            let h: Vec<usize> = self.h.iter().map(|y| y.unwrap()).collect();
            return visit(&h);
        }
        if self.h[x].is_some() {
            return self.run(x + 1, visit);
        }
        for y in self.b.elements() {
            if self.used[y] {
                continue;
            }
            self.h[x] = Some(y);
            self.used[y] = true;
            if self.consistent(x) && !self.run(x + 1, visit) {
                return false;
            }
            self.used[y] = false;
        }
        self.h[x] = None;
        true
    }
}

/// Calls `visit` on every D-embedding `A ↣ B` in lexicographic order until
/// it returns `false`.
fn search(
    a: &FiniteRl,
    b: &FiniteRl,
    d: &DSpec,
    bounded: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    ensure_same_k(a, b)?;
    if a.size() > b.size() {
        return Ok(());
    }
    let mut s = Search { a, b, d, h: vec![None; a.size()], used: vec![false; b.size()] };
    let mut fixed = vec![(a.one(), b.one())];
    if bounded {
        fixed.push((a.bottom(), b.bottom()));
    }
    for (x, y) in fixed {
        match s.h[x] {
            Some(prev) if prev != y => return Ok(()),
            Some(_) => {}
            None if s.used[y] => return Ok(()),
            None => {
                s.h[x] = Some(y);
                s.used[y] = true;
            }
        }
    }
    if !s.consistent(a.one()) || (bounded && !s.consistent(a.bottom())) {
        return Ok(());
    }
    s.run(0, visit);
    Ok(())
}

/// The lexicographically least D-embedding of `a` into `b`.
pub fn find_d_embedding(a: &FiniteRl, b: &FiniteRl, d: &DSpec) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    search(a, b, d, true, &mut |h| {
        found = Some(h.to_vec());
        false
    })?;
    Ok(found)
}

pub fn all_d_embeddings(a: &FiniteRl, b: &FiniteRl, d: &DSpec) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    search(a, b, d, true, &mut |h| {
        out.push(h.to_vec());
        true
    })?;
    Ok(out)
}

/// Every injective map preserving `·`, `∨` and `1`, without the bottom
/// requirement of D-embeddings, in lexicographic order.
pub fn all_mjo_embeddings(a: &FiniteRl, b: &FiniteRl) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    search(a, b, &DSpec::default(), false, &mut |h| {
        out.push(h.to_vec());
        true
    })?;
    Ok(out)
}

/// Evidence that `B ⊭ γ(A, D)`: an SI quotient `C` of `B` and a
/// D-embedding `A ↣ C`.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// The lexicographically least valuation refuting `γ` in `B`.
    pub valuation: Valuation,
    pub quotient: Quotient,
    pub embedding: Vec<usize>,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    valuation: &'a std::collections::BTreeMap<String, usize>,
    filter: &'a [usize],
    quotient: AlgebraJson,
    surjection: &'a [usize],
    embedding: &'a [usize],
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let j = CertificateJson {
            valuation: &self.valuation.0,
            filter: &self.quotient.filter.members,
            quotient: AlgebraJson::from(&self.quotient.algebra),
            surjection: &self.quotient.surjection,
            embedding: &self.embedding,
        };
        serde_json::to_string(&j).expect("plain data serializes")
    }
}

/// Decides `B ⊨ γ` and, if not, extracts a certificate: with `v` the least
/// refuting valuation, quotients of `B` by filters containing `v(Γ^k)` but
/// not `v(Δ)` are tried smallest first, and the first SI one yields the
/// embedding `a ↦ [v(X_a)]`.
pub fn refutation_certificate(b: &FiniteRl, gamma: &CanonicalFormula) -> Result<Option<Certificate>> {
    ensure_same_k(&gamma.algebra, b)?;
    let Some(v) = gamma.counterexample_in(b) else {
        return Ok(None);
    };
    let a = &gamma.algebra;
    let lhs = eval(&Formula::power(gamma.gamma_lhs.clone(), a.k()), b, &v)?;
    let delta = eval(&gamma.delta, b, &v)?;
    let mut filters: Vec<DeductiveFilter> =
        all_filters(b).into_iter().filter(|f| f.contains(lhs) && !f.contains(delta)).collect();
    filters.sort_by_key(|f| f.len());
    for f in filters {
        let q = quotient(b, &f)?;
        if !q.algebra.is_si() {
            continue;
        }
        let h: Vec<usize> = a
            .elements()
            .map(|x| q.surjection[v.get(&super::var_name(x)).expect("γ mentions every X_a")])
            .collect();
        if is_d_embedding(a, &q.algebra, &gamma.dspec, &h) {
            return Ok(Some(Certificate { valuation: v, quotient: q, embedding: h }));
        }
    }
    Err(Error::PreconditionViolation(
        "refuting valuation found but no SI quotient yields an embedding".into(),
    ))
}

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::PreconditionViolation(msg.into()))
}

/// Lifts a `(·,∨,1)`-embedding `h: A ↣ C` along a quotient map
/// `f: B ↠ C` to `g: A ↣ B` with `f∘g = h`. With `d` the least element of
/// the kernel filter, `g(1) = 1` and `g(x)` is the unique element of
/// `B·d` mapped to `h(x)`.
pub fn lift_embedding(
    a: &FiniteRl,
    b: &FiniteRl,
    f: &[usize],
    c: &FiniteRl,
    h: &[usize],
) -> Result<Vec<usize>> {
    ensure_same_k(a, b)?;
    ensure_same_k(b, c)?;
    if !a.is_si() {
        return violation("A is not a nontrivial SI algebra");
    }
    if !b.is_homomorphism_mjo(c, f) {
        return violation("f is not a homomorphism B -> C");
    }
    let mut hit = vec![false; c.size()];
    f.iter().for_each(|&y| hit[y] = true);
    if hit.contains(&false) {
        return violation("f is not surjective");
    }
    let kernel: Vec<usize> = b.elements().filter(|&x| f[x] == c.one()).collect();
    let d = kernel.iter().fold(b.one(), |acc, &x| b.mult(acc, x));
    if !kernel.iter().all(|&x| b.le(d, x)) || !b.is_idempotent(d) {
        return violation("kernel filter has no idempotent minimum");
    }
    if b.elements().any(|x| b.elements().any(|y| (f[x] == f[y]) != (b.mult(d, x) == b.mult(d, y)))) {
        return violation("f is not the quotient map of its kernel filter");
    }
    if h.len() != a.size() || h.iter().any(|&y| y >= c.size()) || !a.is_homomorphism_mjo(c, h) {
        return violation("h is not a (·,∨,1)-homomorphism A -> C");
    }
    let mut seen = vec![false; c.size()];
    if h.iter().any(|&y| std::mem::replace(&mut seen[y], true)) {
        return violation("h is not injective");
    }
    let mut rep = vec![None; c.size()];
    for x in b.elements() {
        let y = b.mult(d, x);
        rep[f[y]] = Some(y);
    }
    let g: Vec<usize> = a
        .elements()
        .map(|x| if x == a.one() { b.one() } else { rep[h[x]].expect("f is surjective") })
        .collect();
    let injective = {
        let mut seen = vec![false; b.size()];
        g.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    };
    if !injective || !a.is_homomorphism_mjo(b, &g) || a.elements().any(|x| f[g[x]] != h[x]) {
        return violation("lifted map is not an embedding over h");
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean2, filter_generated, godel_chain, lukasiewicz3};
    use crate::canonical::build_canonical;

    #[test]
    fn identity_is_least_splitting_embedding() {
        for a in [boolean2(), lukasiewicz3(), godel_chain(4)] {
            let h = find_d_embedding(&a, &a, &DSpec::splitting(a.size())).unwrap().unwrap();
            assert_eq!(h, a.elements().collect::<Vec<_>>());
        }
    }

    #[test]
    fn boolean_into_godel() {
        let h = find_d_embedding(&boolean2(), &godel_chain(4), &DSpec::stable()).unwrap();
        assert_eq!(h, Some(vec![0, 3]));
    }

    #[test]
    fn lukasiewicz_not_into_godel() {
        let g = godel_chain(3).with_k(2).unwrap();
        assert_eq!(find_d_embedding(&lukasiewicz3(), &g, &DSpec::stable()).unwrap(), None);
    }

    #[test]
    fn potency_mismatch() {
        let err = find_d_embedding(&lukasiewicz3(), &godel_chain(3), &DSpec::stable()).unwrap_err();
        assert!(matches!(err, Error::KMismatch { left: 2, right: 1 }));
    }

    #[test]
    fn certificate_for_self() {
        let a = lukasiewicz3();
        let c = build_canonical(&a, &DSpec::stable()).unwrap();
        let cert = refutation_certificate(&a, &c).unwrap().unwrap();
        assert!(cert.quotient.algebra == a);
        assert_eq!(cert.embedding, vec![0, 1, 2]);
    }

    #[test]
    fn certificate_for_godel3() {
        let g = godel_chain(3);
        let c = build_canonical(&boolean2(), &DSpec::stable()).unwrap();
        let cert = refutation_certificate(&g, &c).unwrap().unwrap();
        assert!(is_d_embedding(&boolean2(), &cert.quotient.algebra, &DSpec::stable(), &cert.embedding));
    }

    #[test]
    fn models_have_no_certificate() {
        let c = build_canonical(&lukasiewicz3(), &DSpec::stable()).unwrap();
        let b = boolean2().with_k(2).unwrap();
        assert!(refutation_certificate(&b, &c).unwrap().is_none());
    }

    #[test]
    fn lift_through_identity() {
        let g = godel_chain(4);
        let id: Vec<usize> = g.elements().collect();
        let h = vec![1, 3];
        assert_eq!(lift_embedding(&boolean2(), &g, &id, &g, &h).unwrap(), h);
    }

    #[test]
    fn lift_through_collapse() {
        // G4 = 0 < 1 < 2 < 3; the filter {2, 3} collapses onto G3
        let g = godel_chain(4);
        let q = quotient(&g, &filter_generated(&g, &[2])).unwrap();
        assert_eq!(q.surjection, vec![0, 1, 2, 2]);
        let lifted = lift_embedding(&boolean2(), &g, &q.surjection, &q.algebra, &[1, 2]).unwrap();
        assert_eq!(lifted, vec![1, 3]);
    }

    #[test]
    fn lift_into_trivial_fails() {
        let g = godel_chain(3);
        let q = quotient(&g, &filter_generated(&g, &[0])).unwrap();
        let err = lift_embedding(&boolean2(), &g, &q.surjection, &q.algebra, &[0, 0]).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolation(_)));
    }
}
