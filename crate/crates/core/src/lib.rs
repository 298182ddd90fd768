//! Exact computations with graded Majid algebras on path coalgebras of Hopf
//! quivers.

pub mod exactfield;
pub mod group;
pub mod majid;
pub mod pathcoalg;
pub mod quiver;
pub mod report;
pub mod structure;

pub use exactfield::{Field, Scalar};
pub use group::{Cocycle3, FiniteGroup, RamificationData};
pub use majid::{BimoduleAction, MajidStructure};
pub use pathcoalg::{Element, PathCoalgebra, TensorElement};
pub use quiver::{HopfQuiver, Path, Quiver};
pub use report::VerificationReport;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    pub mod scalars {}
    #[doc = include_str!("../../../book/src/groups.md")]
    pub mod groups {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    pub mod quivers {}
    #[doc = include_str!("../../../book/src/pathcoalg.md")]
    pub mod pathcoalg {}
    #[doc = include_str!("../../../book/src/majid.md")]
    pub mod majid {}
    #[doc = include_str!("../../../book/src/structure.md")]
    pub mod structure {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
