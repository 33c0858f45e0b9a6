//! `(·,∨,1)`-subalgebras of a host algebra and their completion to
//! standalone k-CIRL algebras.

use crate::algebra::FiniteRl;
use crate::error::{Error, Result};
use crate::formula::{eval, sub_values, Formula, Valuation};

/// A subset of the host closed under join, fusion and the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSubalgebra<'h> {
    pub host: &'h FiniteRl,
    /// Host identifiers, ascending.
    pub carrier: Vec<usize>,
}

impl PartialSubalgebra<'_> {
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.carrier.binary_search(&x).is_ok()
    }
}

/// Least superset of `seed ∪ {1}` closed under `·` and `∨`.
pub fn closure_mult_join_one<'h>(host: &'h FiniteRl, seed: &[usize]) -> PartialSubalgebra<'h> {
    let mut member = vec![false; host.size()];
    let mut items = Vec::new();
    for x in std::iter::once(host.one()).chain(seed.iter().copied()) {
        if !member[x] {
            member[x] = true;
            items.push(x);
        }
    }
    // every pair (i, j) with j <= i is combined exactly once
    let mut i = 0;
    while i < items.len() {
        for j in 0..=i {
            let (a, b) = (items[i], items[j]);
            for c in [host.join(a, b), host.mult(a, b)] {
                if !member[c] {
                    member[c] = true;
                    items.push(c);
                }
            }
        }
        i += 1;
    }
    items.sort_unstable();
    PartialSubalgebra { host, carrier: items }
}

/// A k-CIRL algebra carried by a `(·,∨,1)`-closed subset of a host, with
/// the inclusion map into the host.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: FiniteRl,
    /// `inclusion[i]` is the host element standing for element `i`.
    pub inclusion: Vec<usize>,
}

impl Subalgebra {
    /// Pulls a host valuation back along the inclusion; `None` if some
    /// value lies outside the carrier.
    pub fn corestrict(&self, v: &Valuation) -> Option<Valuation> {
        v.0.iter()
            .map(|(x, &h)| self.inclusion.binary_search(&h).ok().map(|i| (x.clone(), i)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut j = crate::algebra::AlgebraJson::from(&self.algebra);
        j.inclusion = Some(self.inclusion.clone());
        serde_json::to_string(&j).expect("plain data serializes")
    }
}

/// Restricts join and fusion to the carrier, re-indexing densely in
/// ascending host order. Meet and residual are the ones forced by the
/// restricted order, which may differ from the host's.
pub fn complete_to_rl(p: &PartialSubalgebra<'_>) -> Subalgebra {
    let host = p.host;
    let n = p.len();
    let idx = |x: usize| p.carrier.binary_search(&x).expect("carrier is closed");
    let mut join = vec![0; n * n];
    let mut mult = vec![0; n * n];
    for (i, &a) in p.carrier.iter().enumerate() {
        for (j, &b) in p.carrier.iter().enumerate() {
            join[i * n + j] = idx(host.join(a, b));
            mult[i * n + j] = idx(host.mult(a, b));
        }
    }
    let mut algebra = FiniteRl::validate(n, host.k(), idx(host.one()), join, mult)
        .expect("closed subsets of k-CIRL algebras complete to k-CIRL algebras");
    if let Some(name) = host.name() {
        algebra = algebra.with_name(format!("sub({name})"));
    }
    Subalgebra { algebra, inclusion: p.carrier.clone() }
}

/// The completed closure of `Sub_v(φ)`. It refutes `φ` under the
/// corestricted valuation with the same value as the host.
pub fn refuting_subalgebra(host: &FiniteRl, phi: &Formula, v: &Valuation) -> Result<Subalgebra> {
    if eval(phi, host, v)? == host.one() {
        return Err(Error::NotRefuted);
    }
    let seed = sub_values(phi, host, v)?;
    Ok(complete_to_rl(&closure_mult_join_one(host, &seed)))
}
