//! Σ-terms of symmetric monoidal syntax and their interpretation as cospans.
//!
//! Concrete syntax:
//!
//! ```text
//! seq  := par (';' par)*
//! par  := atom ('+' atom)*
//! atom := '(' seq ')' | 'id' '(' word ')' | 'sym' '(' word ',' word ')' | LABEL
//! word := INT | COLOUR | '[' (COLOUR (',' COLOUR)*)? ']'
//! ```
//!
//! An integer word `n` stands for `n` wires of the default colour.

mod extract;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::cospan::{CospanError, InterfacedCospan};
use crate::signature::{format_word, Colour, Signature, Word};

pub use extract::{decompose, extract_term, Decomposition, ExtractError};
pub use parse::parse;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(String),
    Id(Word),
    Sym(Word, Word),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown colour `{0}`")]
    UnknownColour(Colour),
    #[error("type mismatch{}: {left} does not compose with {right}", at.map(|p| format!(" at offset {p}")).unwrap_or_default())]
    TypeMismatch {
        at: Option<usize>,
        left: String,
        right: String,
    },
    #[error(transparent)]
    Cospan(#[from] CospanError),
}

impl Term {
    pub fn gen(label: &str) -> Term {
        Term::Gen(label.to_string())
    }

    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }

    pub fn par(a: Term, b: Term) -> Term {
        Term::Par(Box::new(a), Box::new(b))
    }

    /// Left-nested sequential composite of a non-empty list.
    pub fn seq_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::seq)
    }

    /// Left-nested parallel composite of a non-empty list.
    pub fn par_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::par)
    }

    /// `(domain, codomain)` if the term is well typed over `sig`.
    pub fn typecheck(&self, sig: &Signature) -> Result<(Word, Word), TermError> {
        match self {
            Term::Gen(l) => sig
                .op(l)
                .map(|t| (t.arity.clone(), t.coarity.clone()))
                .ok_or_else(|| TermError::UnknownGenerator(l.clone())),
            Term::Id(w) => {
                check_word(sig, w)?;
                Ok((w.clone(), w.clone()))
            }
            Term::Sym(a, b) => {
                check_word(sig, a)?;
                check_word(sig, b)?;
                Ok(([a.clone(), b.clone()].concat(), [b.clone(), a.clone()].concat()))
            }
            Term::Seq(a, b) => {
                let (d, c1) = a.typecheck(sig)?;
                let (d2, c) = b.typecheck(sig)?;
                if c1 != d2 {
                    return Err(TermError::TypeMismatch {
                        at: None,
                        left: format_word(&c1),
                        right: format_word(&d2),
                    });
                }
                Ok((d, c))
            }
            Term::Par(a, b) => {
                let (d1, c1) = a.typecheck(sig)?;
                let (d2, c2) = b.typecheck(sig)?;
                Ok(([d1, d2].concat(), [c1, c2].concat()))
            }
        }
    }

    /// The cospan denoted by the term.
    pub fn interpret(&self, sig: &Signature) -> Result<InterfacedCospan, TermError> {
        self.typecheck(sig)?;
        self.interpret_checked(sig)
    }

    fn interpret_checked(&self, sig: &Signature) -> Result<InterfacedCospan, TermError> {
        Ok(match self {
            Term::Gen(l) => InterfacedCospan::generator(sig, l)?,
            Term::Id(w) => InterfacedCospan::identity(w),
            Term::Sym(a, b) => InterfacedCospan::symmetry(a, b),
            Term::Seq(a, b) => a.interpret_checked(sig)?.compose(&b.interpret_checked(sig)?)?,
            Term::Par(a, b) => a.interpret_checked(sig)?.tensor(&b.interpret_checked(sig)?),
        })
    }

    /// Number of generator occurrences.
    pub fn generator_count(&self) -> usize {
        match self {
            Term::Gen(_) => 1,
            Term::Id(_) | Term::Sym(..) => 0,
            Term::Seq(a, b) | Term::Par(a, b) => a.generator_count() + b.generator_count(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Term::Gen(l) => write!(f, "{l}"),
            Term::Id(w) => write!(f, "id({})", format_word(w)),
            Term::Sym(a, b) => write!(f, "sym({}, {})", format_word(a), format_word(b)),
            Term::Seq(a, b) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 0)?;
                write!(f, " ; ")?;
                b.fmt_prec(f, 1)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::Par(a, b) => {
                if prec > 1 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn check_word(sig: &Signature, w: &[Colour]) -> Result<(), TermError> {
    match w.iter().find(|c| !sig.has_colour(c)) {
        Some(c) => Err(TermError::UnknownColour(c.clone())),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{plain_word, OpType};

    fn sig() -> Signature {
        Signature::one_sorted()
            .with_op("m", OpType::plain(2, 1))
            .unwrap()
            .with_op("d", OpType::plain(1, 2))
            .unwrap()
    }

    #[test]
    fn display_round_trips_through_parser() {
        let t = Term::seq(
            Term::par(Term::gen("d"), Term::Id(plain_word(1))),
            Term::seq(Term::par(Term::Id(plain_word(1)), Term::gen("m")), Term::gen("m")),
        );
        let text = t.to_string();
        assert_eq!(text, "d + id(1) ; (id(1) + m ; m)");
        assert_eq!(parse(&text, &sig()).unwrap(), t);
    }

    #[test]
    fn interpret_identity() {
        let c = Term::Id(plain_word(1)).interpret(&sig()).unwrap();
        assert!(c.is_isomorphic(&InterfacedCospan::identity(&plain_word(1))));
    }

    #[test]
    fn interchange_law_holds_up_to_iso() {
        let s = sig();
        let a = parse("(m + d) ; (d + m)", &s).unwrap();
        let b = parse("(m ; d) + (d ; m)", &s).unwrap();
        assert!(a.interpret(&s).unwrap().is_isomorphic(&b.interpret(&s).unwrap()));
    }

    #[test]
    fn counterexample_graph_shape() {
        let s = sig();
        let g = parse("(d + d) ; (id(1) + sym(1, 1) + id(1)) ; (m + m)", &s)
            .unwrap()
            .interpret(&s)
            .unwrap();
        assert_eq!(g.graph.edge_count(), 4);
        assert_eq!(g.graph.node_count(), 8);
        assert_eq!((g.inputs.len(), g.outputs.len()), (2, 2));
        assert!(g.is_ma());
    }
}
