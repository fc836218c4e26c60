use std::fmt;

use crate::presentation::Presentation;
use crate::snf::{smith_normal_form, Matrix};
use crate::Scalar;

/// `Z^free_rank + Z_d1 + Z_d2 + ...` with `d1 | d2 | ...`, every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup<E> {
    pub free_rank: usize,
    pub torsion: Vec<E>,
}

impl<E: Scalar> AbelianGroup<E> {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        AbelianGroup { free_rank: 1, torsion: Vec::new() }
    }

    /// `Z_n`; `n = 0` gives `Z`, `n = 1` the trivial group.
    pub fn cyclic(n: E) -> Self {
        Self::from_orders(&[n])
    }

    /// The group `Z_n1 + Z_n2 + ...` in canonical form (zero orders are free factors).
    pub fn from_orders(orders: &[E]) -> Self {
        let m: Matrix<E> = orders
            .iter()
            .enumerate()
            .map(|(i, n)| (0..orders.len()).map(|j| if i == j { n.clone() } else { E::zero() }).collect())
            .collect();
        Self::from_relation_matrix(&m, orders.len())
    }

    pub fn from_relation_matrix(m: &Matrix<E>, gens: usize) -> Self {
        let snf = smith_normal_form(m);
        let factors = snf.invariant_factors();
        AbelianGroup {
            free_rank: gens - factors.len(),
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.torsion.len() <= 1
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<E> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(E::one(), |acc, d| acc * d.clone()))
    }
}

pub fn abelianization<E: Scalar>(p: &Presentation<E>) -> AbelianGroup<E> {
    let n = p.rank();
    let m: Matrix<E> = p
        .relators()
        .iter()
        .map(|r| (0..n).map(|g| r.exponent_sum(g)).collect())
        .collect();
    if m.is_empty() {
        return AbelianGroup { free_rank: n, torsion: Vec::new() };
    }
    AbelianGroup::from_relation_matrix(&m, n)
}

impl<E: Scalar> fmt::Display for AbelianGroup<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    type P = Presentation<i64>;

    #[test]
    fn basic_groups() {
        let mut p = P::new(["a", "b"]).unwrap();
        p.add_relator(Word::commutator(&Word::gen(0), &Word::gen(1))).unwrap();
        assert_eq!(abelianization(&p), AbelianGroup { free_rank: 2, torsion: vec![] });
        p.add_relator(Word::power(0, 3)).unwrap();
        let ab = abelianization(&p);
        assert_eq!(ab, AbelianGroup { free_rank: 1, torsion: vec![3] });
        assert_eq!(ab.to_string(), "Z_3 + Z");

        let mut q = P::new(["x"]).unwrap();
        q.add_relator(Word::gen(0)).unwrap();
        assert_eq!(abelianization(&q), AbelianGroup::trivial());
    }

    #[test]
    fn coprime_orders_merge() {
        assert_eq!(AbelianGroup::<i64>::from_orders(&[3, 5]), AbelianGroup::cyclic(15));
        assert_eq!(AbelianGroup::<i64>::cyclic(0), AbelianGroup::integers());
        assert_eq!(AbelianGroup::<i64>::cyclic(1), AbelianGroup::trivial());
    }
}
