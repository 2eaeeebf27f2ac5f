//! Basic Zariski-open neighbourhoods of the identity in `F_n` and `T_n`
//! that fit inside a given sup-metric ball, and their use to separate two
//! distinct elements.

mod audit;
mod gadget;
mod separate;

pub use audit::{AuditReport, AuditViolation, AUDIT_LEAVES};
pub use gadget::{snap_epsilon, GadgetMode, GadgetParams, SeparationGadget};
pub use separate::{separate, separation_epsilon, GadgetCache, Separation, ShiftedGadget, MAX_GRID};
