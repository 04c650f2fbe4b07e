//! Monoidal signatures: a colour set plus typed operations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Colour (sort) of a node or wire.
pub type Colour = String;

/// A word over colours, the type of an interface.
pub type Word = Vec<Colour>;

/// The colour used by one-sorted theories. Numeric widths in term syntax
/// (`id(2)`) expand to words over this colour.
pub const DEFAULT_COLOUR: &str = "•";

/// `n` copies of the default colour.
pub fn plain_word(n: usize) -> Word {
    vec![DEFAULT_COLOUR.to_string(); n]
}

/// Renders a word the way the term grammar reads it back.
pub fn format_word(word: &[Colour]) -> String {
    if word.iter().all(|c| c == DEFAULT_COLOUR) {
        word.len().to_string()
    } else if word.len() == 1 {
        word[0].clone()
    } else {
        format!("[{}]", word.join(","))
    }
}

/// Arity and coarity of an operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpType {
    pub arity: Word,
    pub coarity: Word,
}

impl OpType {
    pub fn new(arity: Word, coarity: Word) -> Self {
        OpType { arity, coarity }
    }

    /// One-sorted `n -> m`.
    pub fn plain(n: usize, m: usize) -> Self {
        OpType::new(plain_word(n), plain_word(m))
    }
}

impl fmt::Display for OpType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", format_word(&self.arity), format_word(&self.coarity))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("operation `{label}` uses colour `{colour}` which is not declared")]
    UnknownColour { label: String, colour: Colour },
    #[error("operation `{0}` declared twice")]
    DuplicateLabel(String),
}

/// A (possibly coloured) monoidal signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    colours: BTreeSet<Colour>,
    operations: BTreeMap<String, OpType>,
}

impl Signature {
    pub fn new(colours: impl IntoIterator<Item = Colour>) -> Self {
        Signature {
            colours: colours.into_iter().collect(),
            operations: BTreeMap::new(),
        }
    }

    /// A signature over the single default colour.
    pub fn one_sorted() -> Self {
        Signature::new([DEFAULT_COLOUR.to_string()])
    }

    pub fn with_op(mut self, label: &str, ty: OpType) -> Result<Self, SignatureError> {
        self.add_op(label, ty)?;
        Ok(self)
    }

    pub fn add_op(&mut self, label: &str, ty: OpType) -> Result<(), SignatureError> {
        if self.operations.contains_key(label) {
            return Err(SignatureError::DuplicateLabel(label.to_string()));
        }
        if let Some(c) = ty
            .arity
            .iter()
            .chain(ty.coarity.iter())
            .find(|c| !self.colours.contains(*c))
        {
            return Err(SignatureError::UnknownColour {
                label: label.to_string(),
                colour: c.clone(),
            });
        }
        self.operations.insert(label.to_string(), ty);
        Ok(())
    }

    pub fn colours(&self) -> &BTreeSet<Colour> {
        &self.colours
    }

    pub fn has_colour(&self, colour: &str) -> bool {
        self.colours.contains(colour)
    }

    pub fn op(&self, label: &str) -> Option<&OpType> {
        self.operations.get(label)
    }

    pub fn operations(&self) -> impl Iterator<Item = (&str, &OpType)> {
        self.operations.iter().map(|(l, t)| (l.as_str(), t))
    }

    pub fn len(&self) -> usize {
        self.operations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operations.is_empty()
    }

    /// The union of two signatures; conflicting operation types are an error.
    pub fn merged(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let mut out = self.clone();
        out.colours.extend(other.colours.iter().cloned());
        for (label, ty) in &other.operations {
            match out.operations.get(label) {
                Some(existing) if existing == ty => {}
                Some(_) => return Err(SignatureError::DuplicateLabel(label.clone())),
                None => {
                    out.operations.insert(label.clone(), ty.clone());
                }
            }
        }
        Ok(out)
    }
}
