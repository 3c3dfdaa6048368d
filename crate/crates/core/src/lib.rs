//! Finite groupoid-graded rings over `Z/m` and separability of relative
//! extensions.

pub mod groupoid;
pub mod zmod;

pub use groupoid::{FiniteGroupoid, GroupoidError, Transversal, WideSubgroupoid};
pub use zmod::{MatZm, ZmError};
