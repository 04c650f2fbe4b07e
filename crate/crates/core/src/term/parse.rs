use crate::signature::{format_word, plain_word, Colour, Signature, Word};

use super::{Term, TermError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Int(usize),
    Ident(String),
    End,
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !"();+,[]".contains(c)
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '+' => Tok::Plus,
            _ => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                let tok = if s.chars().all(|c| c.is_ascii_digit()) {
                    Tok::Int(s.parse().map_err(|_| TermError::Syntax {
                        pos,
                        msg: format!("number `{s}` out of range"),
                    })?)
                } else {
                    Tok::Ident(s)
                };
                out.push((pos, tok));
                continue;
            }
        };
        chars.next();
        out.push((pos, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// Parses and typechecks a term over `sig`.
pub fn parse(text: &str, sig: &Signature) -> Result<Term, TermError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        sig,
    };
    let (t, _, _) = p.seq()?;
    p.expect(Tok::End, "end of input")?;
    Ok(t)
}

type Typed = (Term, Word, Word);

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), TermError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn seq(&mut self) -> Result<Typed, TermError> {
        let (mut t, dom, mut cod) = self.par()?;
        while *self.peek() == Tok::Semi {
            let at = self.pos();
            self.bump();
            let (r, rdom, rcod) = self.par()?;
            if cod != rdom {
                return Err(TermError::TypeMismatch {
                    at: Some(at),
                    left: format_word(&cod),
                    right: format_word(&rdom),
                });
            }
            t = Term::seq(t, r);
            cod = rcod;
        }
        Ok((t, dom, cod))
    }

    fn par(&mut self) -> Result<Typed, TermError> {
        let (mut t, mut dom, mut cod) = self.atom()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let (r, rdom, rcod) = self.atom()?;
            t = Term::par(t, r);
            dom.extend(rdom);
            cod.extend(rcod);
        }
        Ok((t, dom, cod))
    }

    fn atom(&mut self) -> Result<Typed, TermError> {
        let pos = self.pos();
        match self.bump() {
            Tok::LParen => {
                let inner = self.seq()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "id" => {
                self.expect(Tok::LParen, "`(` after `id`")?;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok((Term::Id(w.clone()), w.clone(), w))
            }
            Tok::Ident(name) if name == "sym" => {
                self.expect(Tok::LParen, "`(` after `sym`")?;
                let a = self.word()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                let dom = [a.clone(), b.clone()].concat();
                let cod = [b.clone(), a.clone()].concat();
                Ok((Term::Sym(a, b), dom, cod))
            }
            Tok::Ident(label) => match self.sig.op(&label) {
                Some(ty) => Ok((Term::Gen(label), ty.arity.clone(), ty.coarity.clone())),
                None => Err(TermError::UnknownGenerator(label)),
            },
            _ => Err(TermError::Syntax {
                pos,
                msg: "expected a term".into(),
            }),
        }
    }

    fn word(&mut self) -> Result<Word, TermError> {
        let w = match self.bump() {
            Tok::Int(n) => plain_word(n),
            Tok::Ident(c) => vec![c],
            Tok::LBracket => {
                let mut w: Vec<Colour> = Vec::new();
                if *self.peek() != Tok::RBracket {
                    loop {
                        match self.bump() {
                            Tok::Ident(c) => w.push(c),
                            _ => return self.error("expected a colour"),
                        }
                        if *self.peek() != Tok::Comma {
                            break;
                        }
                        self.bump();
                    }
                }
                self.expect(Tok::RBracket, "`]`")?;
                w
            }
            _ => return self.error("expected a word"),
        };
        if let Some(c) = w.iter().find(|c| !self.sig.has_colour(c)) {
            return Err(TermError::UnknownColour(c.clone()));
        }
        Ok(w)
    }
}
