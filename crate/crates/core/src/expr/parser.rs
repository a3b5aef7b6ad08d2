use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Parsed expression over `x1`, `x2` (or `X1 .. Xk`, see
/// [`parse_multivariate`]) and integer literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    /// 1-based variable index: `1` for `x1`, `2` for `x2`.
    Var(u8),
    Int(BigInt),
    Neg(Box<ExprAst>),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Div(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, i64),
}

/// Prefix form, e.g. `Div(Add(x1,1),x2)`.
impl std::fmt::Display for ExprAst {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bin = |f: &mut std::fmt::Formatter<'_>, name: &str, a: &ExprAst, b: &ExprAst| write!(f, "{name}({a},{b})");
        match self {
            ExprAst::Var(i) => write!(f, "x{i}"),
            ExprAst::Int(k) => write!(f, "{k}"),
            ExprAst::Neg(a) => write!(f, "Neg({a})"),
            ExprAst::Add(a, b) => bin(f, "Add", a, b),
            ExprAst::Sub(a, b) => bin(f, "Sub", a, b),
            ExprAst::Mul(a, b) => bin(f, "Mul", a, b),
            ExprAst::Div(a, b) => bin(f, "Div", a, b),
            ExprAst::Pow(a, k) => write!(f, "Pow({a},{k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(u8),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(offset: usize, expected: &[&str]) -> Error {
    Error::SyntaxError {
        offset,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

/// Exponents beyond this are rejected; they would not fit the polynomial
/// representation anyway.
const MAX_EXPONENT: i64 = u32::MAX as i64;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    /// `None` accepts `x1`, `x2`; `Some(k)` accepts `X1 .. Xk` instead.
    arity: Option<u8>,
}

impl<'a> Lexer<'a> {
    /// Returns the next token and its byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = self.src.get(start) else {
            return Ok((Tok::End, start));
        };
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Ok((t, start));
        }
        if c.is_ascii_digit() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok((Tok::Int(digits.parse().unwrap()), start));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let word = &self.src[start..self.pos];
            let Some(k) = self.arity else {
                return match word {
                    b"x1" => Ok((Tok::Var(1), start)),
                    b"x2" => Ok((Tok::Var(2), start)),
                    _ => Err(syntax(start, &["x1", "x2"])),
                };
            };
            let index = std::str::from_utf8(&word[1..]).ok().and_then(|d| d.parse::<u8>().ok());
            return match (word[0], index) {
                (b'X', Some(i)) if (1..=k).contains(&i) && !word[1..].starts_with(b"0") => Ok((Tok::Var(i), start)),
                _ => Err(syntax(start, &[&format!("X1 .. X{k}")])),
            };
        }
        Err(syntax(start, &["variable", "integer", "(", "-", "+", "*", "/", "^", ")"]))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<()> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            let ctor: fn(Box<ExprAst>, Box<ExprAst>) -> ExprAst = match self.tok {
                Tok::Plus => ExprAst::Add,
                Tok::Minus => ExprAst::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = ctor(Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        loop {
            let ctor: fn(Box<ExprAst>, Box<ExprAst>) -> ExprAst = match self.tok {
                Tok::Star => ExprAst::Mul,
                Tok::Slash => ExprAst::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.factor()?;
            lhs = ctor(Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        if self.tok == Tok::Minus {
            self.bump()?;
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let negative = self.tok == Tok::Minus;
        if negative {
            self.bump()?;
        }
        let Tok::Int(k) = &self.tok else {
            return Err(syntax(self.at, if negative { &["integer"] } else { &["-", "integer"] }));
        };
        let k: i64 = match i64::try_from(k) {
            Ok(k) if k <= MAX_EXPONENT => k,
            _ => return Err(syntax(self.at, &["exponent below 2^32"])),
        };
        self.bump()?;
        Ok(ExprAst::Pow(Box::new(base), if negative { -k } else { k }))
    }

    fn base(&mut self) -> Result<ExprAst> {
        let node = match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Var(v) => ExprAst::Var(v),
            Tok::Int(k) => ExprAst::Int(k),
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return Err(syntax(self.at, &["+", "-", "*", "/", "^", ")"]));
                }
                inner
            }
            _ => {
                let vars = match self.lexer.arity {
                    None => vec!["x1".to_string(), "x2".to_string()],
                    Some(k) => vec![format!("X1 .. X{k}")],
                };
                let mut expected = vec!["-".to_string()];
                expected.extend(vars);
                expected.extend(["integer".to_string(), "(".to_string()]);
                return Err(Error::SyntaxError { offset: self.at, expected });
            }
        };
        self.bump()?;
        Ok(node)
    }
}

/// Parses the expression grammar: `+ -` over `* /` over unary `-` over `^`
/// with an integer exponent.
pub fn parse(text: &str) -> Result<ExprAst> {
    parse_with(text, None)
}

/// Same grammar over the variables `X1 .. X{arity}`, used for symmetric
/// combiners.
pub fn parse_multivariate(text: &str, arity: u8) -> Result<ExprAst> {
    parse_with(text, Some(arity))
}

fn parse_with(text: &str, arity: Option<u8>) -> Result<ExprAst> {
    let mut p = Parser {
        lexer: Lexer { src: text.as_bytes(), pos: 0, arity },
        tok: Tok::End,
        at: 0,
    };
    p.bump()?;
    let ast = p.expr()?;
    if p.tok != Tok::End {
        return Err(syntax(p.at, &["+", "-", "*", "/", "^", "end of input"]));
    }
    Ok(ast)
}
