use crate::error::{Error, Law, Result};

/// A finite lattice given by its join table over elements `0..n`.
///
/// Order, meet, bottom and top are derived from the join table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    n: usize,
    join: Vec<usize>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Validates a flat `n*n` join table and derives the order structure.
    pub fn from_join(n: usize, join: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTables("size must be positive".into()));
        }
        if join.len() != n * n {
            return Err(Error::MalformedTables(format!(
                "join table has {} entries, expected {}",
                join.len(),
                n * n
            )));
        }
        if let Some(bad) = join.iter().find(|&&x| x >= n) {
            return Err(Error::MalformedTables(format!("join entry {bad} out of range")));
        }
        let j = |a: usize, b: usize| join[a * n + b];
        for a in 0..n {
            if j(a, a) != a {
                return Err(Error::LawViolation { law: Law::JoinIdempotent, witnesses: vec![a] });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if j(a, b) != j(b, a) {
                    return Err(Error::LawViolation {
                        law: Law::JoinCommutative,
                        witnesses: vec![a, b],
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if j(j(a, b), c) != j(a, j(b, c)) {
                        return Err(Error::LawViolation {
                            law: Law::JoinAssociative,
                            witnesses: vec![a, b, c],
                        });
                    }
                }
            }
        }
        let leq: Vec<bool> = (0..n * n).map(|i| join[i] == i % n).collect();
        let le = |a: usize, b: usize| leq[a * n + b];

        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let glb = lower.iter().copied().find(|&g| lower.iter().all(|&c| le(c, g)));
                match glb {
                    Some(g) => {
                        meet[a * n + b] = g;
                        meet[b * n + a] = g;
                    }
                    None => {
                        return Err(Error::LawViolation {
                            law: Law::MeetExists,
                            witnesses: vec![a, b],
                        })
                    }
                }
            }
        }
        let top = (1..n).fold(0, |acc, x| join[acc * n + x]);
        let bottom = (1..n).fold(0, |acc, x| meet[acc * n + x]);
        Ok(Lattice { n, join, leq, meet, bottom, top })
    }

    /// Builds a lattice from a strict-order predicate on `0..n`, returning
    /// `None` when the order is not a lattice.
    pub fn from_order(n: usize, le: impl Fn(usize, usize) -> bool) -> Option<Self> {
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let upper: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let lub = upper.iter().copied().find(|&u| upper.iter().all(|&c| le(u, c)))?;
                join[a * n + b] = lub;
            }
        }
        Lattice::from_join(n, join).ok()
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        Lattice::from_order(n, |a, b| a <= b).expect("chains are lattices")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.le(a, b) || self.le(b, a)))
    }

    /// Length of the longest chain from the bottom up to each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| self.le(b, a)).count());
        let mut h = vec![0; n];
        for &a in &order {
            h[a] = (0..n)
                .filter(|&b| self.lt(b, a))
                .map(|b| h[b] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Elements covered by nothing but the top.
    pub fn coatoms(&self) -> Vec<usize> {
        let top = self.top;
        (0..self.n)
            .filter(|&a| a != top && (0..self.n).all(|c| !(self.lt(a, c) && self.lt(c, top))))
            .collect()
    }

    /// Upper covers of `a`.
    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&b| self.lt(a, b) && (0..self.n).all(|c| !(self.lt(a, c) && self.lt(c, b))))
            .collect()
    }

    /// Relabels so that new element `i` is old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = inv[self.join(perm[a], perm[b])];
            }
        }
        Lattice::from_join(n, join).expect("relabeling preserves lattice laws")
    }
}
