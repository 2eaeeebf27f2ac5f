use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::parse::Term;
use super::word::{GroupWord, NormalWord, Normalized};
use crate::error::{Error, Result};
use crate::groups::{ElementKind, GroupElement, GroupOps};

/// The conjunction `w_0(x) != 1, ..., w_{m-1}(x) != 1` of normalized words.
#[derive(Clone, PartialEq, Debug)]
pub struct InequationSystem<E> {
    words: Vec<NormalWord<E>>,
}

impl<E: GroupOps> InequationSystem<E> {
    pub fn new(words: Vec<NormalWord<E>>) -> Self {
        InequationSystem { words }
    }

    pub fn words(&self) -> &[NormalWord<E>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn concat(&self, other: &InequationSystem<E>) -> InequationSystem<E> {
        InequationSystem { words: self.words.iter().chain(&other.words).cloned().collect() }
    }

    pub fn try_map<F, T>(&self, mut f: F) -> Result<InequationSystem<T>>
    where
        F: FnMut(&E) -> Result<T>,
        T: GroupOps,
    {
        Ok(InequationSystem { words: self.words.iter().map(|w| w.try_map(&mut f)).collect::<Result<_>>()? })
    }

    /// Whether `x` lies in the set: every word evaluates to a non-identity
    /// element.
    pub fn member(&self, x: &E) -> Result<bool> {
        for w in &self.words {
            if w.evaluate(x)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn system_member<E: GroupOps>(s: &InequationSystem<E>, x: &E) -> Result<bool> {
    s.member(x)
}

/// A basic Zariski-open set, with the two degenerate cases split off.
#[derive(Clone, PartialEq, Debug)]
pub enum SetDescriptor<E> {
    Empty,
    Full,
    Basic(InequationSystem<E>),
}

impl<E: GroupOps> SetDescriptor<E> {
    /// Intersects the sets `{x : w(x) != 1}` of the given raw words.
    pub fn from_words(words: &[GroupWord<E>]) -> Result<Self> {
        let mut normal = Vec::new();
        for w in words {
            match w.normalize()? {
                Normalized::Empty => return Ok(SetDescriptor::Empty),
                Normalized::Full => {}
                Normalized::Word(w) => normal.push(w),
            }
        }
        Ok(if normal.is_empty() { SetDescriptor::Full } else { SetDescriptor::Basic(InequationSystem::new(normal)) })
    }

    pub fn member(&self, x: &E) -> Result<bool> {
        match self {
            SetDescriptor::Empty => Ok(false),
            SetDescriptor::Full => Ok(true),
            SetDescriptor::Basic(s) => s.member(x),
        }
    }

    /// The system of words, empty for the whole group.
    pub fn system(&self) -> Result<InequationSystem<E>> {
        match self {
            SetDescriptor::Empty => Err(Error::EmptySet),
            SetDescriptor::Full => Ok(InequationSystem::new(Vec::new())),
            SetDescriptor::Basic(s) => Ok(s.clone()),
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            SetDescriptor::Empty => "empty",
            SetDescriptor::Full => "full",
            SetDescriptor::Basic(_) => "basic",
        }
    }
}

/// One term of a word given structurally, which allows anonymous inline
/// elements.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermSpec {
    Power { x: i64 },
    Name { name: String },
    Inline { element: GroupElement },
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordSpec {
    Text(String),
    Terms(Vec<TermSpec>),
}

/// JSON form of a system: `{"elements": {name: element}, "words": [...]}`.
#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(default)]
    pub elements: BTreeMap<String, GroupElement>,
    pub words: Vec<WordSpec>,
}

impl SystemSpec {
    pub fn from_text(elements: BTreeMap<String, GroupElement>, words: &[&str]) -> Self {
        SystemSpec { elements, words: words.iter().map(|w| WordSpec::Text(w.to_string())).collect() }
    }

    pub fn raw_words(&self) -> Result<Vec<GroupWord<GroupElement>>> {
        for name in self.elements.keys() {
            if !super::parse::is_valid_name(name) {
                return Err(Error::InvalidInput(format!("{name:?} is not a valid element name")));
            }
        }
        self.words
            .iter()
            .map(|w| match w {
                WordSpec::Text(text) => GroupWord::parse(text, &self.elements),
                WordSpec::Terms(terms) => {
                    let mut store = self.elements.clone();
                    let mut named = Vec::with_capacity(terms.len());
                    for (i, t) in terms.iter().enumerate() {
                        named.push(match t {
                            TermSpec::Power { x } => {
                                if x.abs() > super::parse::MAX_EXPONENT {
                                    return Err(Error::InvalidInput(format!("exponent {x} is too large")));
                                }
                                Term::Var(*x)
                            }
                            TermSpec::Name { name } => Term::Name(name.clone()),
                            TermSpec::Inline { element } => {
                                // spaces keep inline keys apart from every valid name
                                let key = format!("inline {i}");
                                store.insert(key.clone(), element.clone());
                                Term::Name(key)
                            }
                        });
                    }
                    GroupWord::from_terms(&named, &store)
                }
            })
            .collect()
    }

    /// The kind shared by every element the words mention, if any.
    pub fn kind(&self) -> Result<Option<ElementKind>> {
        let mut kinds = self.elements.values().map(GroupElement::kind).collect::<Vec<_>>();
        for w in &self.words {
            if let WordSpec::Terms(terms) = w {
                kinds.extend(terms.iter().filter_map(|t| match t {
                    TermSpec::Inline { element } => Some(element.kind()),
                    _ => None,
                }));
            }
        }
        let first = kinds.first().copied();
        if let Some(k) = kinds.iter().find(|k| Some(**k) != first) {
            return Err(Error::kind_mismatch(first.expect("non-empty").to_string(), k.to_string()));
        }
        Ok(first)
    }

    pub fn compile(&self) -> Result<SetDescriptor<GroupElement>> {
        self.kind()?;
        SetDescriptor::from_words(&self.raw_words()?)
    }

    pub fn concat(&self, other: &SystemSpec) -> Result<SystemSpec> {
        let mut elements = self.elements.clone();
        for (name, e) in &other.elements {
            if let Some(prev) = elements.insert(name.clone(), e.clone()) {
                if &prev != e {
                    return Err(Error::InvalidInput(format!("element {name:?} is defined twice differently")));
                }
            }
        }
        Ok(SystemSpec { elements, words: self.words.iter().chain(&other.words).cloned().collect() })
    }
}
