use super::{FiniteRl, Lattice};
use crate::error::Result;

/// The algebra on `lattice` whose fusion is the lattice meet. Valid exactly
/// when the lattice is distributive (it is then a Heyting algebra).
pub fn heyting_on(lattice: &Lattice, k: u32) -> Result<FiniteRl> {
    let n = lattice.size();
    let mut mult = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            mult[a * n + b] = lattice.meet(a, b);
        }
    }
    FiniteRl::validate(n, k, lattice.top(), lattice.join_table().to_vec(), mult)
}

pub fn trivial(k: u32) -> FiniteRl {
    FiniteRl::validate(1, k, 0, vec![0], vec![0]).expect("trivial algebra").with_name("1")
}

/// The 2-element Boolean algebra, `0 < 1`.
pub fn boolean2() -> FiniteRl {
    godel_chain(2).with_name("2")
}

/// The `n`-element chain with fusion = meet (k = 1).
pub fn godel_chain(n: usize) -> FiniteRl {
    heyting_on(&Lattice::chain(n), 1).expect("chains are distributive").with_name(format!("G{n}"))
}

/// The 3-element Łukasiewicz chain `0 < s < 1` with `s·s = 0` (k = 2).
pub fn lukasiewicz3() -> FiniteRl {
    let join = vec![0, 1, 2, 1, 1, 2, 2, 2, 2];
    let mult = vec![0, 0, 0, 0, 0, 1, 0, 1, 2];
    FiniteRl::validate(3, 2, 2, join, mult).expect("Ł3 is a 2-potent CIRL").with_name("L3")
}

/// The four-element Boolean algebra `0 < a, b < 1` with fusion = meet.
pub fn diamond() -> FiniteRl {
    let lattice = Lattice::from_order(4, |a, b| a == b || a == 0 || b == 3).expect("2x2");
    heyting_on(&lattice, 1).expect("2x2 is distributive").with_name("2x2")
}

/// `2[A]`: adjoins a new absorbing bottom. The new bottom gets identifier 0
/// and old element `x` becomes `x + 1`.
pub fn prepend_bottom(a: &FiniteRl) -> FiniteRl {
    let n = a.size() + 1;
    let mut join = vec![0; n * n];
    let mut mult = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (j, m) = match (x, y) {
                (0, _) => (y, 0),
                (_, 0) => (x, 0),
                _ => (a.join(x - 1, y - 1) + 1, a.mult(x - 1, y - 1) + 1),
            };
            join[x * n + y] = j;
            mult[x * n + y] = m;
        }
    }
    let out = FiniteRl::validate(n, a.k(), a.one() + 1, join, mult)
        .expect("2[A] is again a k-CIRL");
    match a.name() {
        Some(name) => out.with_name(format!("2[{name}]")),
        None => out,
    }
}
