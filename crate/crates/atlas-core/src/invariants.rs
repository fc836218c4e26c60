use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Minimality {
    Minimal,
    NonMinimal,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("b2 +- sigma is odd (b2 = {b2}, sigma = {sigma})")]
    ParityError { b2: i64, sigma: i64 },
    #[error("negative Betti number (b2 = {b2}, b2+ = {plus}, b2- = {minus})")]
    NegativeBetti { b2: i64, plus: i64, minus: i64 },
    #[error("symplectic sums along spheres are not supported")]
    GenusZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharInvariants {
    pub e: i64,
    pub sigma: i64,
    pub b1: u32,
    pub parity: Parity,
    pub minimal: Minimality,
    pub symplectic: bool,
}

impl CharInvariants {
    pub fn new(e: i64, sigma: i64) -> Self {
        CharInvariants { e, sigma, b1: 0, parity: Parity::Unknown, minimal: Minimality::Unknown, symplectic: true }
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = parity;
        self
    }

    pub fn with_minimal(mut self, minimal: Minimality) -> Self {
        self.minimal = minimal;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChernCoords {
    pub c1sq: i64,
    pub chi_h: Ratio<i64>,
}

impl ChernCoords {
    pub fn is_lattice(&self) -> bool {
        self.chi_h.is_integer()
    }

    /// The lattice point `(c1sq, chi_h)` if `chi_h` is an integer.
    pub fn lattice(&self) -> Option<(i64, i64)> {
        self.is_lattice().then(|| (self.c1sq, self.chi_h.to_integer()))
    }

    /// Inverse of `chern_coords`: `e = 12 chi - c`, `sigma = c - 8 chi`.
    pub fn euler_signature(&self) -> (Ratio<i64>, Ratio<i64>) {
        let c = Ratio::from_integer(self.c1sq);
        (self.chi_h * 12 - c, c - self.chi_h * 8)
    }
}

impl fmt::Display for ChernCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1sq, self.chi_h)
    }
}

pub fn chern_coords(inv: &CharInvariants) -> ChernCoords {
    ChernCoords { c1sq: 2 * inv.e + 3 * inv.sigma, chi_h: Ratio::new(inv.e + inv.sigma, 4) }
}

/// `(b2, b2+, b2-)` from `e = 2 - 2 b1 + b2`.
pub fn betti(inv: &CharInvariants) -> Result<(i64, i64, i64), InvariantError> {
    let b2 = inv.e - 2 + 2 * i64::from(inv.b1);
    if (b2 + inv.sigma) % 2 != 0 {
        return Err(InvariantError::ParityError { b2, sigma: inv.sigma });
    }
    let plus = (b2 + inv.sigma) / 2;
    let minus = (b2 - inv.sigma) / 2;
    if b2 < 0 || plus < 0 || minus < 0 {
        return Err(InvariantError::NegativeBetti { b2, plus, minus });
    }
    Ok((b2, plus, minus))
}

/// Symplectic sum along surfaces of genus `genus`; `minimal` is left to the caller.
pub fn sum_invariants(
    left: &CharInvariants,
    right: &CharInvariants,
    genus: u32,
) -> Result<CharInvariants, InvariantError> {
    if genus == 0 {
        return Err(InvariantError::GenusZero);
    }
    let parity = if left.parity == Parity::Odd || right.parity == Parity::Odd { Parity::Odd } else { Parity::Unknown };
    Ok(CharInvariants {
        e: left.e + right.e + 4 * i64::from(genus) - 4,
        sigma: left.sigma + right.sigma,
        b1: 0,
        parity,
        minimal: Minimality::Unknown,
        symplectic: left.symplectic && right.symplectic,
    })
}

pub fn blowup_invariants(inv: &CharInvariants, n: u32) -> CharInvariants {
    if n == 0 {
        return *inv;
    }
    CharInvariants {
        e: inv.e + i64::from(n),
        sigma: inv.sigma - i64::from(n),
        parity: Parity::Odd,
        minimal: Minimality::NonMinimal,
        ..*inv
    }
}

pub fn cover_invariants(inv: &CharInvariants, degree: u32) -> (i64, i64) {
    let d = i64::from(degree);
    (d * inv.e, d * inv.sigma)
}
