//! Exact value expressions such as `sqrt(3)/2 + cos(2pi/5)`.
//!
//! Grammar: integers, `a/b`, `sqrt(q)` for rationals `q ≥ 0`, `sin`/`cos` of
//! rational multiples of `pi` (or `π`), `+ - * /`, parentheses and implicit
//! multiplication (`2pi`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use origami_core::arith::{cos_pi, sin_pi, sqrt_rational};
use origami_core::CyclotomicReal;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unexpected `{token}` at position {pos}")]
    Unexpected { token: String, pos: usize },
    #[error("expression ended early, expected {expected}")]
    End { expected: &'static str },
    #[error("unknown name `{token}` at position {pos}")]
    UnknownName { token: String, pos: usize },
    #[error("`{token}` at position {pos}: {reason}")]
    Invalid { token: String, pos: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
    Open,
    Close,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    text: String,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '.') {
                    j += 1;
                }
                let text: String = chars[start..j].iter().collect();
                return Err(ExprError::Invalid {
                    token: text,
                    pos,
                    reason: "decimal literals are not exact; write a fraction such as 3/2".into(),
                });
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Int(text.parse().unwrap()), text, pos });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Name(text.to_lowercase()), text, pos });
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' => Tok::Op(c),
            '·' | '×' => Tok::Op('*'),
            '−' => Tok::Op('-'),
            '(' => Tok::Open,
            ')' => Tok::Close,
            _ => return Err(ExprError::Unexpected { token: c.to_string(), pos }),
        };
        out.push(Spanned { tok, text: c.to_string(), pos });
        i += 1;
    }
    Ok(out)
}

/// Intermediate values: a real number or a rational multiple of π.
#[derive(Debug, Clone)]
enum Value {
    Real(CyclotomicReal),
    Pi(BigRational),
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
}

fn invalid(s: &Spanned, reason: &str) -> ExprError {
    ExprError::Invalid { token: s.text.clone(), pos: s.pos, reason: reason.into() }
}

const PI_MISUSE: &str = "π may only appear inside sin or cos, as a rational multiple";

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.at)
    }

    fn next(&mut self, expected: &'static str) -> Result<Spanned, ExprError> {
        let t = self.toks.get(self.at).cloned().ok_or(ExprError::End { expected })?;
        self.at += 1;
        Ok(t)
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        let t = self.next("`)`")?;
        match t.tok {
            Tok::Close => Ok(()),
            _ => Err(ExprError::Unexpected { token: t.text, pos: t.pos }),
        }
    }

    fn expr(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek().cloned() {
            let Tok::Op(op @ ('+' | '-')) = t.tok else { break };
            self.at += 1;
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (Value::Real(a), Value::Real(b)) => Value::Real(if op == '+' { a + b } else { a - b }),
                (Value::Pi(a), Value::Pi(b)) => Value::Pi(if op == '+' { a + b } else { a - b }),
                _ => return Err(invalid(&t, PI_MISUSE)),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value, ExprError> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek().cloned() {
            let op = match t.tok {
                Tok::Op(op @ ('*' | '/')) => {
                    self.at += 1;
                    op
                }
                // implicit multiplication: `2pi`, `3sqrt(2)`, `2(1+pi)`
                Tok::Name(_) | Tok::Open => '*',
                _ => break,
            };
            let rhs = self.unary()?;
            acc = if op == '*' { mul(acc, rhs, &t)? } else { div(acc, rhs, &t)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, ExprError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(match self.unary()? {
                    Value::Real(x) => Value::Real(-x),
                    Value::Pi(q) => Value::Pi(-q),
                })
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Value, ExprError> {
        let t = self.next("a number, name or `(`")?;
        match &t.tok {
            Tok::Int(n) => Ok(Value::Real(CyclotomicReal::from_bigint(n.clone()))),
            Tok::Open => {
                let v = self.expr()?;
                self.expect_close()?;
                Ok(v)
            }
            Tok::Name(name) => match name.as_str() {
                "pi" | "π" => Ok(Value::Pi(BigRational::from_integer(1.into()))),
                "sqrt" | "sin" | "cos" => {
                    let open = self.next("`(`")?;
                    if open.tok != Tok::Open {
                        return Err(ExprError::Unexpected { token: open.text, pos: open.pos });
                    }
                    let arg = self.expr()?;
                    self.expect_close()?;
                    apply(name, arg, &t)
                }
                _ => Err(ExprError::UnknownName { token: t.text.clone(), pos: t.pos }),
            },
            Tok::Op(_) | Tok::Close => Err(ExprError::Unexpected { token: t.text.clone(), pos: t.pos }),
        }
    }
}

fn rational_of(v: &Value) -> Option<BigRational> {
    match v {
        Value::Real(x) => x.to_rational(),
        Value::Pi(_) => None,
    }
}

fn mul(a: Value, b: Value, at: &Spanned) -> Result<Value, ExprError> {
    match (a, b) {
        (Value::Real(x), Value::Real(y)) => Ok(Value::Real(x * y)),
        (Value::Pi(q), other) | (other, Value::Pi(q)) => match rational_of(&other) {
            Some(r) => Ok(Value::Pi(q * r)),
            None => Err(invalid(at, PI_MISUSE)),
        },
    }
}

fn div(a: Value, b: Value, at: &Spanned) -> Result<Value, ExprError> {
    match (a, b) {
        (Value::Real(x), Value::Real(y)) => {
            x.checked_div(&y).map(Value::Real).map_err(|_| invalid(at, "division by zero"))
        }
        (Value::Pi(q), other) => match rational_of(&other) {
            Some(r) if r.is_zero() => Err(invalid(at, "division by zero")),
            Some(r) => Ok(Value::Pi(q / r)),
            None => Err(invalid(at, PI_MISUSE)),
        },
        (Value::Real(_), Value::Pi(_)) => Err(invalid(at, PI_MISUSE)),
    }
}

fn apply(name: &str, arg: Value, at: &Spanned) -> Result<Value, ExprError> {
    if name == "sqrt" {
        let q = rational_of(&arg).ok_or_else(|| invalid(at, "sqrt takes a rational argument"))?;
        return sqrt_rational(&q)
            .map(Value::Real)
            .ok_or_else(|| invalid(at, "sqrt of a negative number"));
    }
    let q = match arg {
        Value::Pi(q) => q,
        Value::Real(x) if x.is_zero() => BigRational::zero(),
        Value::Real(_) => return Err(invalid(at, "argument must be a rational multiple of pi")),
    };
    let (k, n) = (q.numer(), q.denom());
    let (Some(k), Some(n)) = (k.to_i64(), n.to_u64()) else {
        return Err(invalid(at, "angle is too large"));
    };
    if n > 1_000_000 || k.abs() > 1_000_000_000 {
        return Err(invalid(at, "angle denominator is too large"));
    }
    Ok(Value::Real(if name == "sin" { sin_pi(k, n) } else { cos_pi(k, n) }))
}

/// Parses and evaluates an expression to an exact real.
pub fn parse_value(src: &str) -> Result<CyclotomicReal, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0 };
    let v = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ExprError::Unexpected { token: t.text.clone(), pos: t.pos });
    }
    match v {
        Value::Real(x) => Ok(x),
        Value::Pi(q) if q.is_zero() => Ok(CyclotomicReal::zero()),
        Value::Pi(_) => Err(ExprError::Invalid { token: "pi".into(), pos: 1, reason: PI_MISUSE.into() }),
    }
}
