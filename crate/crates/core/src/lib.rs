//! Verification workbench for the algebraic machinery of equivariant
//! Iwasawa theory on finite l-group models: restriction maps between trace
//! quotients of group rings, Adams/induction character calculus, integral
//! logarithms, and trace-ideal congruences, all in exact truncated l-adic
//! arithmetic.

pub mod cyclo;
pub mod error;
pub mod group;
pub mod intmat;
pub mod modlin;
pub mod padic;

pub use cyclo::{CycInt, CycloScalar};
pub use error::{ArithError, GroupError, SuiteError};
pub use group::{LGroup, Marking};
pub use intmat::{smith_normal_form, IntMatrix};
pub use modlin::{Membership, SpanBasis};
pub use padic::PadicScalar;
