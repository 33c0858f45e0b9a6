//! Deductive filters, the quotients they induce, and SI homomorphic images.
//!
//! In a finite k-CIRL every deductive filter is the up-set of an idempotent
//! element `d`, and the congruence it induces is `a ~ b ⇔ d·a = d·b`. The
//! quotient is therefore carried by the set `{d·a}` of class
//! representatives.

use super::FiniteRl;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeductiveFilter {
    /// Least element of the filter; always idempotent.
    pub min: usize,
    /// Members in increasing identifier order.
    pub members: Vec<usize>,
}

impl DeductiveFilter {
    fn up_set(a: &FiniteRl, d: usize) -> Self {
        DeductiveFilter { min: d, members: a.elements().filter(|&x| a.le(d, x)).collect() }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The filter generated by `gens`: the up-set of `∏ g^k`.
pub fn filter_generated(a: &FiniteRl, gens: &[usize]) -> DeductiveFilter {
    let d = gens.iter().fold(a.one(), |acc, &g| a.mult(acc, a.power(g, a.k())));
    DeductiveFilter::up_set(a, d)
}

/// Every deductive filter, one per idempotent element, ordered by the
/// identifier of the minimum.
pub fn all_filters(a: &FiniteRl) -> Vec<DeductiveFilter> {
    a.elements()
        .filter(|&d| a.is_idempotent(d))
        .map(|d| DeductiveFilter::up_set(a, d))
        .collect()
}

/// A quotient algebra together with the canonical surjection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub filter: DeductiveFilter,
    pub algebra: FiniteRl,
    /// `surjection[b]` is the class of `b`.
    pub surjection: Vec<usize>,
    /// `representatives[c]` is the element `d·b` standing for class `c`.
    pub representatives: Vec<usize>,
}

/// Quotient by a deductive filter. Classes are numbered in increasing order
/// of their representative `d·a`, so a naturally labeled algebra yields a
/// naturally labeled quotient.
pub fn quotient(a: &FiniteRl, f: &DeductiveFilter) -> Result<Quotient> {
    let d = f.min;
    let mut reps: Vec<usize> = a.elements().map(|x| a.mult(d, x)).collect();
    reps.sort_unstable();
    reps.dedup();
    let class_of = |x: usize| reps.binary_search(&a.mult(d, x)).expect("representative");
    let m = reps.len();
    let mut join = vec![0; m * m];
    let mut mult = vec![0; m * m];
    for (i, &x) in reps.iter().enumerate() {
        for (j, &y) in reps.iter().enumerate() {
            join[i * m + j] = class_of(a.join(x, y));
            mult[i * m + j] = class_of(a.mult(x, y));
        }
    }
    let algebra = FiniteRl::validate(m, a.k(), class_of(a.one()), join, mult)?;
    let surjection = a.elements().map(class_of).collect();
    Ok(Quotient { filter: f.clone(), algebra, surjection, representatives: reps })
}

/// All subdirectly irreducible quotients, in the order of [`all_filters`].
pub fn all_si_quotients(a: &FiniteRl) -> Vec<Quotient> {
    all_filters(a)
        .iter()
        .map(|f| quotient(a, f).expect("quotients of valid algebras are valid"))
        .filter(|q| q.algebra.is_si())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean2, diamond, godel_chain, is_isomorphic, lukasiewicz3};

    #[test]
    fn filter_of_lukasiewicz_middle_is_everything() {
        let l = lukasiewicz3();
        let f = filter_generated(&l, &[1]);
        assert_eq!(f.min, 0);
        assert_eq!(f.members, vec![0, 1, 2]);
    }

    #[test]
    fn filter_of_godel_middle() {
        let g = godel_chain(3);
        assert_eq!(filter_generated(&g, &[1]).members, vec![1, 2]);
        assert_eq!(filter_generated(&g, &[]).members, vec![2]);
    }

    #[test]
    fn quotient_by_unit_filter_is_identity() {
        for a in [diamond(), lukasiewicz3(), godel_chain(4)] {
            let q = quotient(&a, &filter_generated(&a, &[])).unwrap();
            assert_eq!(q.algebra, a);
            assert_eq!(q.surjection, a.elements().collect::<Vec<_>>());
        }
    }

    #[test]
    fn quotient_by_everything_is_trivial() {
        let a = godel_chain(4);
        let q = quotient(&a, &filter_generated(&a, &[0])).unwrap();
        assert!(q.algebra.is_trivial());
    }

    #[test]
    fn godel3_mod_top_pair_is_boolean() {
        let g = godel_chain(3);
        let q = quotient(&g, &filter_generated(&g, &[1])).unwrap();
        assert!(is_isomorphic(&q.algebra, &boolean2()));
        assert_eq!(q.surjection, vec![0, 1, 1]);
    }

    #[test]
    fn si_quotients() {
        assert_eq!(all_si_quotients(&boolean2()).len(), 1);
        let dq = all_si_quotients(&diamond());
        assert_eq!(dq.len(), 2);
        assert!(dq.iter().all(|q| is_isomorphic(&q.algebra, &boolean2())));
        let lq = all_si_quotients(&lukasiewicz3());
        assert_eq!(lq.len(), 1);
        assert_eq!(lq[0].algebra, lukasiewicz3());
    }
}
