//! Finite k-potent commutative integral residuated lattices.
//!
//! An algebra is stored as its join and fusion tables over dense element
//! identifiers `0..n`. Everything else (order, meet, residual, bottom, the
//! second-greatest element) is derived once at validation time, after which
//! the value is immutable.

mod construct;
mod filter;
mod iso;
mod json;
mod lattice;

pub use construct::{
    boolean2, diamond, godel_chain, heyting_on, lukasiewicz3, prepend_bottom, trivial,
};
pub use filter::{all_filters, all_si_quotients, filter_generated, quotient, DeductiveFilter, Quotient};
pub use iso::{canonical_form, canonical_labeling, is_isomorphic, lattice_canonical_form};
pub use json::AlgebraJson;
pub use lattice::Lattice;

use crate::error::{Error, Law, Result};

/// A validated finite k-CIRL algebra.
#[derive(Clone, Debug)]
pub struct FiniteRl {
    lattice: Lattice,
    k: u32,
    one: usize,
    mult: Vec<usize>,
    imp: Vec<usize>,
    second: Option<usize>,
    name: Option<String>,
}

impl PartialEq for FiniteRl {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.one == other.one
            && self.lattice.join_table() == other.lattice.join_table()
            && self.mult == other.mult
    }
}

impl Eq for FiniteRl {}

impl FiniteRl {
    /// Checks every k-CIRL law on the raw tables and derives the remaining
    /// operations. Laws are checked in the order of [`Law`]'s variants and
    /// the first failure is reported with witnessing elements.
    pub fn validate(
        n: usize,
        k: u32,
        one: usize,
        join: Vec<usize>,
        mult: Vec<usize>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::MalformedTables("k must be positive".into()));
        }
        if n == 0 {
            return Err(Error::MalformedTables("size must be positive".into()));
        }
        if mult.len() != n * n {
            return Err(Error::MalformedTables(format!(
                "mult table has {} entries, expected {}",
                mult.len(),
                n * n
            )));
        }
        if one >= n {
            return Err(Error::MalformedTables(format!("unit {one} out of range")));
        }
        if let Some(bad) = mult.iter().find(|&&x| x >= n) {
            return Err(Error::MalformedTables(format!("mult entry {bad} out of range")));
        }
        let lattice = Lattice::from_join(n, join)?;
        let m = |a: usize, b: usize| mult[a * n + b];
        let violation = |law, witnesses: Vec<usize>| Err(Error::LawViolation { law, witnesses });

        for a in 0..n {
            for b in 0..n {
                if m(a, b) != m(b, a) {
                    return violation(Law::MultCommutative, vec![a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(m(a, b), c) != m(a, m(b, c)) {
                        return violation(Law::MultAssociative, vec![a, b, c]);
                    }
                }
            }
        }
        for a in 0..n {
            if m(one, a) != a {
                return violation(Law::MultUnit, vec![a]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m(a, lattice.join(b, c)) != lattice.join(m(a, b), m(a, c)) {
                        return violation(Law::Distributivity, vec![a, b, c]);
                    }
                }
            }
        }
        if one != lattice.top() {
            return violation(Law::Integrality, vec![one, lattice.top()]);
        }
        for a in 0..n {
            let pk = power_in(&mult, n, one, a, k);
            if m(pk, a) != pk {
                return violation(Law::KPotency, vec![a]);
            }
        }

        let bottom = lattice.bottom();
        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                imp[a * n + b] = (0..n)
                    .filter(|&c| lattice.le(m(a, c), b))
                    .fold(bottom, |acc, c| lattice.join(acc, c));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if lattice.le(m(a, c), b) != lattice.le(c, imp[a * n + b]) {
                        return violation(Law::Residuation, vec![a, b, c]);
                    }
                }
            }
        }

        let second = second_greatest_of(&lattice);
        Ok(FiniteRl { lattice, k, one, mult, imp, second, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size() + b]
    }

    #[inline]
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size() + b]
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.lattice.le(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lattice.lt(a, b)
    }

    pub fn join_table(&self) -> &[usize] {
        self.lattice.join_table()
    }

    pub fn mult_table(&self) -> &[usize] {
        &self.mult
    }

    /// `a^e`, with `a^0 = 1`.
    pub fn power(&self, a: usize, e: u32) -> usize {
        power_in(&self.mult, self.size(), self.one, a, e)
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mult(a, a) == a
    }

    /// The element `s` with `{x ≠ 1} = {x ≤ s}`, if any.
    pub fn second_greatest(&self) -> Option<usize> {
        self.second
    }

    /// Subdirect irreducibility, decided by the existence of a
    /// second-greatest element.
    pub fn is_subdirectly_irreducible(&self) -> Result<bool> {
        if self.is_trivial() {
            return Err(Error::TrivialAlgebra);
        }
        Ok(self.second.is_some())
    }

    /// Like [`Self::is_subdirectly_irreducible`] but treats the trivial
    /// algebra as not SI.
    pub fn is_si(&self) -> bool {
        !self.is_trivial() && self.second.is_some()
    }

    pub fn is_well_connected(&self) -> bool {
        let one = self.one;
        self.elements()
            .all(|x| self.elements().all(|y| x == one || y == one || self.join(x, y) != one))
    }

    pub fn is_linear(&self) -> bool {
        self.lattice.is_chain()
    }

    /// Relabels so that new element `i` is old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteRl {
        let n = self.size();
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut join = vec![0; n * n];
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = inv[self.join(perm[a], perm[b])];
                mult[a * n + b] = inv[self.mult(perm[a], perm[b])];
            }
        }
        let mut out = FiniteRl::validate(n, self.k, inv[self.one], join, mult)
            .expect("relabeling preserves validity");
        out.name = self.name.clone();
        out
    }

    /// Same tables, different potency bound. Fails if the tables are not
    /// `k`-potent.
    pub fn with_k(&self, k: u32) -> Result<FiniteRl> {
        let mut out = FiniteRl::validate(
            self.size(),
            k,
            self.one,
            self.join_table().to_vec(),
            self.mult.clone(),
        )?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Whether `f: self → other` preserves join, fusion and the unit.
    pub fn is_homomorphism_mjo(&self, other: &FiniteRl, f: &[usize]) -> bool {
        f.len() == self.size()
            && f.iter().all(|&x| x < other.size())
            && f[self.one] == other.one
            && self.elements().all(|a| {
                self.elements().all(|b| {
                    f[self.join(a, b)] == other.join(f[a], f[b])
                        && f[self.mult(a, b)] == other.mult(f[a], f[b])
                })
            })
    }

    /// Whether `f` preserves every operation including meet, residual and
    /// the bottom constant.
    pub fn is_full_homomorphism(&self, other: &FiniteRl, f: &[usize]) -> bool {
        self.is_homomorphism_mjo(other, f)
            && f[self.bottom()] == other.bottom()
            && self.elements().all(|a| {
                self.elements().all(|b| {
                    f[self.meet(a, b)] == other.meet(f[a], f[b])
                        && f[self.imp(a, b)] == other.imp(f[a], f[b])
                })
            })
    }
}

pub(crate) fn power_in(mult: &[usize], n: usize, one: usize, a: usize, e: u32) -> usize {
    (0..e).fold(one, |acc, _| mult[acc * n + a])
}

fn second_greatest_of(lattice: &Lattice) -> Option<usize> {
    let top = lattice.top();
    let n = lattice.size();
    if n < 2 {
        return None;
    }
    let s = (0..n).filter(|&x| x != top).fold(lattice.bottom(), |acc, x| lattice.join(acc, x));
    (s != top).then_some(s)
}

/// Requires equal potency for operations that combine two algebras.
pub fn ensure_same_k(a: &FiniteRl, b: &FiniteRl) -> Result<()> {
    if a.k() != b.k() {
        return Err(Error::KMismatch { left: a.k(), right: b.k() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3(s_squared: usize, k: u32) -> Result<FiniteRl> {
        let join = vec![0, 1, 2, 1, 1, 2, 2, 2, 2];
        let mult = vec![0, 0, 0, 0, s_squared, 1, 0, 1, 2];
        FiniteRl::validate(3, k, 2, join, mult)
    }

    #[test]
    fn boolean_two_is_valid() {
        let b = boolean2();
        assert_eq!(b.size(), 2);
        assert_eq!(b.second_greatest(), Some(0));
        assert!(b.is_subdirectly_irreducible().unwrap());
    }

    #[test]
    fn lukasiewicz_three_chain_validates_at_k2() {
        let l = chain3(0, 2).unwrap();
        assert_eq!(l.imp(1, 0), 1);
        assert_eq!(l.second_greatest(), Some(1));
        assert!(l.is_subdirectly_irreducible().unwrap());
    }

    #[test]
    fn lukasiewicz_three_chain_is_not_idempotent() {
        match chain3(0, 1) {
            Err(Error::LawViolation { law: Law::KPotency, witnesses }) => {
                assert_eq!(witnesses, vec![1])
            }
            other => panic!("expected k-potency violation, got {other:?}"),
        }
    }

    #[test]
    fn diamond_has_no_second_greatest() {
        let d = diamond();
        assert_eq!(d.second_greatest(), None);
        assert!(!d.is_subdirectly_irreducible().unwrap());
        assert!(!d.is_well_connected());
    }

    #[test]
    fn chains_are_well_connected() {
        assert!(godel_chain(4).is_well_connected());
        assert!(lukasiewicz3().is_well_connected());
    }

    #[test]
    fn trivial_algebra_rejected_by_si() {
        assert!(matches!(trivial(1).is_subdirectly_irreducible(), Err(Error::TrivialAlgebra)));
    }

    #[test]
    fn non_unit_top_breaks_integrality() {
        // 2-chain where the unit is the bottom: x·y = x∨y.
        let join = vec![0, 1, 1, 1];
        let mult = vec![0, 1, 1, 1];
        match FiniteRl::validate(2, 1, 0, join, mult) {
            Err(Error::LawViolation { law, .. }) => assert_eq!(law, Law::Integrality),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn out_of_range_entry_is_malformed() {
        let err = FiniteRl::validate(2, 1, 1, vec![0, 1, 1, 1], vec![0, 0, 0, 5]).unwrap_err();
        assert!(matches!(err, Error::MalformedTables(_)));
    }

    #[test]
    fn residuation_checked_on_small_algebras() {
        for a in [boolean2(), godel_chain(3), lukasiewicz3(), diamond(), godel_chain(5)] {
            for x in a.elements() {
                for y in a.elements() {
                    for z in a.elements() {
                        assert_eq!(a.le(a.mult(x, z), y), a.le(z, a.imp(x, y)));
                    }
                }
            }
        }
    }
}
