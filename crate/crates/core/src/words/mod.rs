//! One-variable group words, their normal form, and the basic Zariski-open
//! sets they define.

mod parse;
mod system;
mod word;

pub use parse::{is_valid_name, parse_terms, print_terms, Term, MAX_EXPONENT};
pub use system::{system_member, InequationSystem, SetDescriptor, SystemSpec, TermSpec, WordSpec};
pub use word::{word_trace, GroupWord, NormalWord, Normalized};

use std::collections::BTreeMap;

use crate::error::Result;
use crate::groups::GroupOps;

pub fn parse_word<E: GroupOps>(text: &str, store: &BTreeMap<String, E>) -> Result<GroupWord<E>> {
    GroupWord::parse(text, store)
}

pub fn evaluate_word<E: GroupOps>(w: &GroupWord<E>, x: &E) -> Result<E> {
    w.evaluate(x)
}
