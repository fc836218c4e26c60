//! Prototype names up to homeomorphism for cyclic fundamental groups.

use std::fmt;

use fpgroups::{abelianization, AbelianGroup};
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::invariants::{betti, InvariantError, Parity};
use crate::surgery::{ManifoldState, Pi1};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Omega2Type {
    TypeI,
    TypeII,
    TypeIII,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("parity of the intersection form is unknown")]
    UnknownParity,
    #[error("fundamental group is not the requested cyclic group (abelianization {0})")]
    NonCyclicGroup(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Only type I is ever certified: for finite `p` through Rokhlin on the
/// universal cover, for `Z` through the odd form.
pub fn omega2_type(parity: Parity, pi1_order: Option<u64>, _e: i64, sigma: i64) -> Result<Omega2Type, ClassifyError> {
    match parity {
        Parity::Unknown => Err(ClassifyError::UnknownParity),
        Parity::Even => Ok(Omega2Type::Undetermined),
        Parity::Odd => match pi1_order {
            None => Ok(Omega2Type::TypeI),
            Some(p) => {
                let cover = i128::from(p) * i128::from(sigma);
                Ok(if cover.rem_euclid(16) != 0 { Omega2Type::TypeI } else { Omega2Type::Undetermined })
            }
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    S1xS3,
    SurgeredLens(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrototypeName {
    Manifold { b2plus: i64, b2minus: i64, tail: Tail },
    Unclassified(String),
}

impl fmt::Display for PrototypeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrototypeName::Manifold { b2plus, b2minus, tail: Tail::S1xS3 } => {
                write!(f, "{b2plus} CP2 # {b2minus} -CP2 # S1xS3")
            }
            PrototypeName::Manifold { b2plus, b2minus, tail: Tail::SurgeredLens(p) } => {
                write!(f, "{b2plus} CP2 # {b2minus} -CP2 # ~L({p},1)xS1")
            }
            PrototypeName::Unclassified(reason) => write!(f, "Unclassified ({reason})"),
        }
    }
}

fn state_abelianization(state: &ManifoldState) -> AbelianGroup {
    match &state.closure {
        Some(c) => c.abelianization.clone(),
        None => abelianization(&state.closed_presentation()),
    }
}

/// The cyclic group a state's abelianization names, if any.
pub fn cyclic_pi1(state: &ManifoldState) -> Option<Pi1> {
    let ab = state_abelianization(state);
    match (ab.free_rank, ab.torsion.as_slice()) {
        (1, []) => Some(Pi1::Infinite),
        (0, [d]) => d.to_u64().map(Pi1::Finite),
        _ => None,
    }
}

pub fn prototype(state: &ManifoldState, pi1: Pi1) -> Result<PrototypeName, ClassifyError> {
    let ab = state_abelianization(state);
    if ab != pi1.abelian() {
        return Err(ClassifyError::NonCyclicGroup(ab.to_string()));
    }
    let mut inv = state.invariants;
    inv.b1 = ab.free_rank as u32;
    let (b2, plus, minus) = betti(&inv)?;
    match pi1 {
        Pi1::Infinite => {
            if inv.parity == Parity::Odd && b2 - inv.sigma.abs() >= 6 {
                Ok(PrototypeName::Manifold { b2plus: plus, b2minus: minus, tail: Tail::S1xS3 })
            } else {
                Ok(PrototypeName::Unclassified("stability gap".into()))
            }
        }
        Pi1::Finite(p) => match omega2_type(inv.parity, Some(p), inv.e, inv.sigma)? {
            Omega2Type::TypeI => Ok(PrototypeName::Manifold { b2plus: plus, b2minus: minus, tail: Tail::SurgeredLens(p) }),
            _ => Ok(PrototypeName::Unclassified("omega2 undetermined".into())),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomeoVerdict {
    Homeomorphic,
    Distinct,
    Undetermined,
}

pub fn homeo_equal(a: &ManifoldState, b: &ManifoldState) -> HomeoVerdict {
    let (Some(pa), Some(pb)) = (cyclic_pi1(a), cyclic_pi1(b)) else {
        return HomeoVerdict::Undetermined;
    };
    let name = |s: &ManifoldState, p| prototype(s, p).ok().filter(|n| !matches!(n, PrototypeName::Unclassified(_)));
    if let (Some(na), Some(nb)) = (name(a, pa), name(b, pb)) {
        if na == nb {
            return HomeoVerdict::Homeomorphic;
        }
    }
    let numbers = |s: &ManifoldState, p: Pi1| {
        let mut inv = s.invariants;
        inv.b1 = if p == Pi1::Infinite { 1 } else { 0 };
        betti(&inv).ok().map(|(_, plus, minus)| (plus, minus))
    };
    let (Some(xa), Some(xb)) = (numbers(a, pa), numbers(b, pb)) else {
        return HomeoVerdict::Undetermined;
    };
    let parity_differs =
        a.invariants.parity != Parity::Unknown && b.invariants.parity != Parity::Unknown && a.invariants.parity != b.invariants.parity;
    if pa != pb || xa != xb || parity_differs {
        HomeoVerdict::Distinct
    } else {
        HomeoVerdict::Undetermined
    }
}
