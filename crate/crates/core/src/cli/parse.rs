//! Recursive-descent parser for polynomial and series expressions.
//!
//! ```text
//! expr   := ('-')? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | 'i' | var | '(' expr ')'
//! rational := int | '(' '-'? int '/' posint ')'
//! ```
//!
//! A leading minus is accepted so that printed expressions parse back.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{BiPoly, GaussianRational as Gr, TruncSeries, UniPoly};
use crate::error::{CurveError, Result};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> CurveError {
    CurveError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<(Vec<Token>, (usize, usize))> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            if k < chars.len() && (chars[k] == '.' || chars[k] == 'e' || chars[k] == 'E') {
                let mut end = k + 1;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '.') {
                    end += 1;
                }
                let text: String = chars[start..end].iter().collect();
                return Err(err(l0, c0, format!("non-rational literal {}", text)));
            }
            let text: String = chars[start..k].iter().collect();
            col += k - start;
            out.push(Token {
                tok: Tok::Int(text.parse().expect("digits")),
                line: l0,
                col: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            col += k - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..k].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        }
        if "+-*^()/".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
            col += 1;
            k += 1;
            continue;
        }
        return Err(err(l0, c0, format!("unexpected character '{}'", c)));
    }
    Ok((out, (line, col)))
}

#[derive(Clone, Debug)]
enum Node {
    Num(Gr),
    Var(char),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Pow(Box<Node>, u32),
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    vars: &'a [char],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn unexpected(&self) -> CurveError {
        let (l, c) = self.here();
        match self.toks.get(self.pos) {
            None => err(l, c, "unexpected end of input"),
            Some(Token { tok: Tok::Sym('/'), .. }) => {
                err(l, c, "division is only allowed inside a rational literal (a/b)")
            }
            Some(t) => err(l, c, format!("unexpected {}", describe(&t.tok))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let (l, col) = self.here();
            Err(match self.toks.get(self.pos) {
                None => err(l, col, format!("expected '{}' before end of input", c)),
                Some(t) => err(l, col, format!("expected '{}', found {}", c, describe(&t.tok))),
            })
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut acc = if self.eat('-') {
            Node::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Node::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Node::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Node::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Node> {
        let base = self.base()?;
        if self.eat('^') {
            let (l, c) = self.here();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e: u32 = u32::try_from(&n)
                        .ok()
                        .filter(|e| *e <= MAX_EXPONENT)
                        .ok_or_else(|| err(l, c, format!("exponent {} exceeds {}", n, MAX_EXPONENT)))?;
                    return Ok(Node::Pow(Box::new(base), e));
                }
                _ => return Err(err(l, c, "expected a natural-number exponent")),
            }
        }
        Ok(base)
    }

    fn rational_ahead(&self) -> bool {
        let off = usize::from(self.peek_at(1) == Some(&Tok::Sym('-')));
        matches!(
            (
                self.peek_at(1 + off),
                self.peek_at(2 + off),
                self.peek_at(3 + off),
                self.peek_at(4 + off)
            ),
            (
                Some(Tok::Int(_)),
                Some(Tok::Sym('/')),
                Some(Tok::Int(_)),
                Some(Tok::Sym(')'))
            )
        )
    }

    fn base(&mut self) -> Result<Node> {
        let (l, c) = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Node::Num(Gr::from_rational(BigRational::from_integer(n))))
            }
            Some(Tok::Sym('(')) if self.rational_ahead() => {
                self.pos += 1;
                let neg = self.eat('-');
                let Some(Tok::Int(num)) = self.peek().cloned() else {
                    unreachable!()
                };
                self.pos += 2;
                let (dl, dc) = self.here();
                let Some(Tok::Int(den)) = self.peek().cloned() else {
                    unreachable!()
                };
                self.pos += 2;
                if den.is_zero() {
                    return Err(err(dl, dc, "zero denominator"));
                }
                let q = BigRational::new(if neg { -num } else { num }, den);
                Ok(Node::Num(Gr::from_rational(q)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(Node::Num(Gr::i()));
                }
                let mut cs = name.chars();
                match (cs.next(), cs.next()) {
                    (Some(v), None) if self.vars.contains(&v) => Ok(Node::Var(v)),
                    _ => Err(err(l, c, format!("unknown variable {}", name))),
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {}", n),
        Tok::Ident(s) => format!("identifier {}", s),
        Tok::Sym(c) => format!("'{}'", c),
    }
}

fn parse_tree(src: &str, vars: &[char]) -> Result<Node> {
    let (toks, end) = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        vars,
    };
    let node = p.expr()?;
    if p.pos < p.toks.len() {
        let (l, c) = p.here();
        let t = &p.toks[p.pos].tok;
        return Err(match t {
            Tok::Sym('/') => p.unexpected(),
            Tok::Sym(')') => err(l, c, "unbalanced ')'"),
            Tok::Sym(_) => p.unexpected(),
            _ => err(
                l,
                c,
                format!(
                    "expected an operator before {} (implicit multiplication is not allowed)",
                    describe(t)
                ),
            ),
        });
    }
    Ok(node)
}

fn eval_bi(n: &Node) -> BiPoly {
    match n {
        Node::Num(c) => BiPoly::constant(c.clone()),
        Node::Var('x') => BiPoly::x(),
        Node::Var(_) => BiPoly::y(),
        Node::Add(a, b) => &eval_bi(a) + &eval_bi(b),
        Node::Sub(a, b) => &eval_bi(a) - &eval_bi(b),
        Node::Mul(a, b) => &eval_bi(a) * &eval_bi(b),
        Node::Neg(a) => -&eval_bi(a),
        Node::Pow(a, e) => eval_bi(a).pow(*e),
    }
}

fn eval_uni(n: &Node) -> UniPoly {
    match n {
        Node::Num(c) => UniPoly::constant(c.clone()),
        Node::Var(_) => UniPoly::monomial(Gr::from_int(1), 1),
        Node::Add(a, b) => eval_uni(a).add(&eval_uni(b)),
        Node::Sub(a, b) => eval_uni(a).sub(&eval_uni(b)),
        Node::Mul(a, b) => eval_uni(a).mul(&eval_uni(b)),
        Node::Neg(a) => eval_uni(a).neg(),
        Node::Pow(a, e) => eval_uni(a).pow(*e),
    }
}

/// A polynomial in `x`, `y` with Gaussian-rational coefficients.
pub fn parse_poly(src: &str) -> Result<BiPoly> {
    Ok(eval_bi(&parse_tree(src, &['x', 'y'])?))
}

/// A polynomial in `t`, exactly.
pub fn parse_tpoly(src: &str) -> Result<UniPoly> {
    Ok(eval_uni(&parse_tree(src, &['t'])?))
}

/// A polynomial in `t` read as a series truncated at `trunc`.
pub fn parse_series(src: &str, trunc: usize) -> Result<TruncSeries> {
    Ok(TruncSeries::from_poly(&parse_tpoly(src)?, trunc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_polynomials() {
        assert_eq!(
            parse_poly("y^2 - x^3").unwrap(),
            BiPoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)])
        );
        let f = parse_poly("(1/2)*x + i*y").unwrap();
        assert_eq!(f.coeff(1, 0), Gr::from_ratio(1, 2));
        assert_eq!(f.coeff(0, 1), Gr::i());
        assert_eq!(
            parse_poly("-(x - y)^2 + (-3/4)").unwrap().coeff(0, 0),
            Gr::from_ratio(-3, 4)
        );
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_poly("z^2").unwrap_err().to_string(), "unknown variable z at 1:1");
        assert_eq!(
            parse_poly("x +\n  t").unwrap_err().to_string(),
            "unknown variable t at 2:3"
        );
        assert!(parse_poly("2x")
            .unwrap_err()
            .to_string()
            .contains("implicit multiplication"));
        assert!(parse_poly("1.5*x")
            .unwrap_err()
            .to_string()
            .starts_with("non-rational literal 1.5"));
        assert!(parse_poly("x/2").unwrap_err().to_string().contains("rational literal"));
        assert!(parse_poly("(1/0)")
            .unwrap_err()
            .to_string()
            .contains("zero denominator"));
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("x)").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_tpoly("x").is_err());
    }

    #[test]
    fn printed_forms_parse_back() {
        for s in [
            "-x^3 + y^2",
            "(1/2)*x + i*y",
            "((1/2) - (2/3)*i)*x^2 - i*y",
            "-2*x^3*y^6 + (-1/3)*y",
            "0",
        ] {
            let f = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&f.to_string()).unwrap(), f, "{}", s);
        }
        let s = parse_series("t^2 - (1/2)*t^5", 16).unwrap();
        assert_eq!(parse_series(&s.to_string(), 16).unwrap(), s);
    }
}
