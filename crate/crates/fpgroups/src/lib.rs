//! Finitely presented groups: words, presentations, Tietze simplification and
//! abelianization through Smith normal form.
//!
//! Everything is generic over the exponent scalar; the aliases below fix it to
//! arbitrary precision integers.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub mod abelian;
pub mod presentation;
pub mod simplify;
pub mod snf;
pub mod verify;
pub mod word;

pub use abelian::abelianization;
pub use presentation::GroupError;
pub use simplify::simplify;
pub use snf::smith_normal_form;
pub use verify::{verify_cyclic, VerdictLevel};
pub use word::free_reduce;

/// Exponent and matrix entry type.
pub trait Scalar:
    Clone + Debug + Display + Eq + Ord + Hash + Send + Sync + Integer + Signed + FromPrimitive + ToPrimitive + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Eq + Ord + Hash + Send + Sync + Integer + Signed + FromPrimitive + ToPrimitive + 'static
{
}

pub type Int = num_bigint::BigInt;
pub type Word = word::Word<Int>;
pub type Letter = word::Letter<Int>;
pub type Presentation = presentation::Presentation<Int>;
pub type AbelianGroup = abelian::AbelianGroup<Int>;
pub type CyclicVerdict = verify::CyclicVerdict<Int>;
pub type Matrix = snf::Matrix<Int>;
pub type Snf = snf::Snf<Int>;
