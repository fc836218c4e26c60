use crate::abelian::{abelianization, AbelianGroup};
use crate::presentation::Presentation;
use crate::simplify::simplify;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerdictLevel {
    ProvenCyclic,
    AbelianizationOnly,
    Mismatch,
}

impl VerdictLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictLevel::ProvenCyclic => "ProvenCyclic",
            VerdictLevel::AbelianizationOnly => "AbelianizationOnly",
            VerdictLevel::Mismatch => "Mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicVerdict<E> {
    pub level: VerdictLevel,
    pub abelianization: AbelianGroup<E>,
    pub witness: Option<Presentation<E>>,
}

pub fn verify_cyclic<E: Scalar>(
    p: &Presentation<E>,
    expected: &AbelianGroup<E>,
    budget: usize,
) -> CyclicVerdict<E> {
    let ab = abelianization(p);
    if &ab != expected {
        return CyclicVerdict { level: VerdictLevel::Mismatch, abelianization: ab, witness: None };
    }
    let s = simplify(p, budget);
    let level = if s.rank() <= 1 { VerdictLevel::ProvenCyclic } else { VerdictLevel::AbelianizationOnly };
    CyclicVerdict { level, abelianization: ab, witness: Some(s) }
}
