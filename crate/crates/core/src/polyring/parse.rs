use super::{Monomial, PolyError, SparsePolynomial};
use crate::exactfield::Field;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, PolyError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| PolyError::Parse(format!("number {text}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [&'a str],
    constants: &'a [(&'a str, F)],
    ctx: &'a F::Context,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<SparsePolynomial<F>, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePolynomial<F>, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = constant_value(&d).ok_or_else(|| PolyError::Parse("division by a non-constant".into()))?;
                let inv = c.inv().ok_or_else(|| PolyError::Parse("division by zero".into()))?;
                acc = acc.scale(&inv);
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                acc = acc * self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SparsePolynomial<F>, PolyError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<SparsePolynomial<F>, PolyError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(e)) if (0..=u16::MAX as i64).contains(&e) => {
                    self.pos += 1;
                    Ok(base.pow(e as u32))
                }
                other => Err(PolyError::Parse(format!("bad exponent {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<SparsePolynomial<F>, PolyError> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(v)) => Ok(SparsePolynomial::constant(self.n(), F::from_i64(self.ctx, v))),
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.names.iter().position(|&x| x == name) {
                    return Ok(SparsePolynomial::var(self.n(), i, self.ctx));
                }
                if let Some((_, c)) = self.constants.iter().find(|(k, _)| *k == name) {
                    return Ok(SparsePolynomial::constant(self.n(), c.clone()));
                }
                Err(PolyError::Parse(format!("unknown identifier {name}")))
            }
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(PolyError::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a field element written as a constant expression, e.g. `2` or
/// `1 + zeta^3` with `zeta` supplied through `constants`.
pub fn parse_constant<F: Field>(s: &str, ctx: &F::Context, constants: &[(&str, F)]) -> Result<F, PolyError> {
    let p = parse_polynomial(s, &[], ctx, constants)?;
    constant_value(&p).ok_or_else(|| PolyError::Parse(format!("{s} is not a constant")))
}

fn constant_value<F: Field>(p: &SparsePolynomial<F>) -> Option<F> {
    match p.num_terms() {
        0 => Some(F::zero(p.ctx())),
        1 => {
            let (m, c) = p.leading_term()?;
            (m == &Monomial::one(p.nvars())).then(|| c.clone())
        }
        _ => None,
    }
}

/// Parses expressions such as `x1^2*x2 - 3/2*x4*x5 + zeta*(x1 + x2)`.
/// Juxtaposition multiplies; `constants` names extra field elements.
pub fn parse_polynomial<F: Field>(
    s: &str,
    names: &[&str],
    ctx: &F::Context,
    constants: &[(&str, F)],
) -> Result<SparsePolynomial<F>, PolyError> {
    let mut p = Parser {
        toks: tokenize(s)?,
        pos: 0,
        names,
        constants,
        ctx,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}
