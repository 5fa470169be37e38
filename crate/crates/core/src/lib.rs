//! Garside structures on homogeneous monoids, divided categories, periodic
//! elements and regular-number arithmetic for complex reflection groups.

pub mod data;
pub mod divided;
pub mod garside;
pub mod oracle;
pub mod par;
pub mod periodic;
pub mod presentation;
pub mod reflgroups;
pub mod scenario;
pub mod series;
mod unionfind;

pub use garside::{AxiomReport, GarsideError, GarsideStructure, NormalForm, SimpleId};
pub use par::Execution;
pub use presentation::{Budget, BudgetExceeded, GroupWord, Presentation, Word};
