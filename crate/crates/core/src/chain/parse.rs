//! Text syntax for chain formulas.
//!
//! ```text
//! expr  := term (op term)*          all ops in one expression must agree
//! op    := 'v' | '∨' | '^' | '∧'
//! term  := 'E' | '(' expr ')' | name '(' args ')'
//! ```
//!
//! Functions: `flip(F)`, `vex(n)`, `cave(n)`, `koch(s)`, `dc(k)`, `zz(k)`,
//! `dzz(k)`, `poly(F, N)`, `twin(F, N)`, `gdc(n1, ..., nm)`.

use thiserror::Error;

use super::{builders, ChainError, Formula, SumKind};

const MAX_NESTING: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad argument at byte {pos}: {msg}")]
    Arity { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    Open,
    Close,
    Comma,
    Op(SumKind),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '(' | ')' | ',' | '^' | '∨' | '∧' => {
                it.next();
                let t = match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    ',' => Tok::Comma,
                    '^' | '∧' => Tok::Op(SumKind::Concave),
                    _ => Tok::Op(SumKind::Convex),
                };
                out.push((pos, t));
            }
            c if c.is_ascii_digit() => {
                let mut v: u64 = 0;
                while let Some(&(_, d)) = it.peek() {
                    let Some(digit) = d.to_digit(10) else { break };
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit as u64))
                        .ok_or_else(|| ParseError::Syntax {
                            pos,
                            msg: "number too large".into(),
                        })?;
                    it.next();
                }
                out.push((pos, Tok::Num(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        word.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                if word == "v" {
                    out.push((pos, Tok::Op(SumKind::Convex)));
                } else {
                    out.push((pos, Tok::Ident(word)));
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Formula, ParseError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return self.syntax("formula nested too deeply");
        }
        let first = self.term()?;
        let mut parts = vec![first];
        let mut op: Option<SumKind> = None;
        while let Tok::Op(k) = *self.peek() {
            match op {
                Some(prev) if prev != k => {
                    return self.syntax("mixing 'v' and '^' requires parentheses");
                }
                _ => op = Some(k),
            }
            self.bump();
            parts.push(self.term()?);
        }
        self.depth -= 1;
        Ok(match op {
            None => parts.pop().unwrap(),
            Some(k) => Formula::sum(k, parts),
        })
    }

    fn term(&mut self) -> Result<Formula, ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Open => {
                let f = self.expr()?;
                self.expect(Tok::Close, "')'")?;
                Ok(f)
            }
            Tok::Ident(name) if name == "E" => Ok(Formula::prim()),
            Tok::Ident(name) => {
                self.expect(Tok::Open, "'(' after function name")?;
                let f = self.call(&name, pos)?;
                self.expect(Tok::Close, "')'")?;
                Ok(f)
            }
            Tok::End => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match self.bump() {
            (_, Tok::Num(v)) => Ok(v),
            (pos, _) => Err(ParseError::Syntax {
                pos,
                msg: "expected a number".into(),
            }),
        }
    }

    fn comma(&mut self) -> Result<(), ParseError> {
        self.expect(Tok::Comma, "','")
    }

    fn call(&mut self, name: &str, pos: usize) -> Result<Formula, ParseError> {
        let arity = |e: ChainError| ParseError::Arity {
            pos,
            msg: e.to_string(),
        };
        let size = |v: u64| {
            usize::try_from(v).map_err(|_| ParseError::Arity {
                pos,
                msg: "argument too large".into(),
            })
        };
        match name {
            "flip" => Ok(self.expr()?.flip()),
            "vex" => builders::vex(size(self.number()?)?).map_err(arity),
            "cave" => builders::cave(size(self.number()?)?).map_err(arity),
            "dc" => builders::double_chain(size(self.number()?)?).map_err(arity),
            "zz" => builders::zigzag(size(self.number()?)?).map_err(arity),
            "dzz" => builders::double_zigzag(size(self.number()?)?).map_err(arity),
            "koch" => {
                let s = self.number()?;
                let s = u32::try_from(s).map_err(|_| ParseError::Arity {
                    pos,
                    msg: "koch level too large".into(),
                })?;
                builders::koch(s).map_err(arity)
            }
            "poly" | "twin" => {
                let base = self.expr()?;
                self.comma()?;
                let copies = size(self.number()?)?;
                if name == "poly" {
                    builders::poly(&base, copies).map_err(arity)
                } else {
                    builders::twin(&base, copies).map_err(arity)
                }
            }
            "gdc" => {
                let mut counts = vec![size(self.number()?)?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    counts.push(size(self.number()?)?);
                }
                builders::gdc(&counts).map_err(arity)
            }
            other => Err(ParseError::Syntax {
                pos,
                msg: format!("unknown function '{other}'"),
            }),
        }
    }
}

/// Parses formula text into its canonical [`Formula`].
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        depth: 0,
    };
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::super::{builders::*, vee, wedge};
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn basic_forms() {
        let e = prim();
        assert_eq!(p("E"), e);
        let v3 = p("(E v E) v E");
        assert_eq!(v3.children().len(), 3);
        assert_eq!(v3, vex(3).unwrap());
        assert_eq!(p("flip(E v E)"), wedge(&e, &e));
        assert_eq!(p("E ^ (E v E)"), wedge(&e, &vee(&e, &e)));
        assert_eq!(p("E ∧ (E ∨ E)"), p("E ^ (E v E)"));
        assert_eq!(p("flip(flip(E ^ (E v E)))"), p("E ^ (E v E)"));
    }

    #[test]
    fn functions() {
        assert_eq!(p("vex(4)"), vex(4).unwrap());
        assert_eq!(p("cave(3)"), cave(3).unwrap());
        assert_eq!(p("koch(3)"), koch(3).unwrap());
        assert_eq!(p("dc(2)"), double_chain(2).unwrap());
        assert_eq!(p("zz(2)"), zigzag(2).unwrap());
        assert_eq!(p("dzz(1)"), double_zigzag(1).unwrap());
        assert_eq!(p("poly(koch(2), 3)"), poly(&koch(2).unwrap(), 3).unwrap());
        assert_eq!(p("twin(E v E, 2)"), twin(&vex(2).unwrap(), 2).unwrap());
        assert_eq!(p("gdc(1, 0, 2)"), gdc(&[1, 0, 2]).unwrap());
        assert_eq!(p("koch(2) v cave(2)").edges(), 6);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_formula("vex(0)"),
            Err(ParseError::Arity { pos: 0, .. })
        ));
        assert!(matches!(
            parse_formula("E v E ^ E"),
            Err(ParseError::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_formula("(E v E"),
            Err(ParseError::Syntax { pos: 6, .. })
        ));
        assert!(matches!(
            parse_formula("E v"),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_formula("foo(1)"),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_formula("E E"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_formula("E # E"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(parse_formula("gdc(0,0)").is_err());
        assert!(parse_formula("poly(E)").is_err());
        assert!(parse_formula("").is_err());
        let deep = format!("{}E{}", "(".repeat(2000), ")".repeat(2000));
        assert!(parse_formula(&deep).is_err());
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = Just(prim());
        leaf.prop_recursive(5, 24, 4, |inner| {
            (any::<bool>(), prop::collection::vec(inner, 2..4)).prop_map(|(convex, parts)| {
                let kind = if convex {
                    SumKind::Convex
                } else {
                    SumKind::Concave
                };
                Formula::sum(kind, parts)
            })
        })
    }

    proptest! {
        #[test]
        fn print_parse_is_fixed_point(f in arb_formula()) {
            let text = f.to_string();
            let g = parse_formula(&text).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), text);
        }
    }
}
