//! Arithmetic expressions in `x` for user-supplied integrands.
//!
//! Grammar: `+ - * /`, integer powers `^k`, parentheses, the variable `x`,
//! the constant `pi`, and the functions `exp` and `sqrt` (principal branch).

use hankelquad::numerics::real::{c_from_f64, cexp, cpowi, csqrt, C};
use hankelquad::numerics::{Cplx, Real};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, String> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        match p.peek() {
            None => Ok(e),
            Some(t) => Err(format!("unexpected {t:?} in expression")),
        }
    }

    pub fn eval<R: Real>(&self, z: &C<R>, ctx: R::Ctx) -> C<R> {
        match self {
            Expr::Num(v) => c_from_f64(Cplx::new(*v, 0.0), ctx),
            Expr::X => z.clone(),
            Expr::Neg(a) => -a.eval(z, ctx),
            Expr::Add(a, b) => a.eval(z, ctx) + b.eval(z, ctx),
            Expr::Sub(a, b) => a.eval(z, ctx) - b.eval(z, ctx),
            Expr::Mul(a, b) => a.eval(z, ctx) * b.eval(z, ctx),
            Expr::Div(a, b) => a.eval(z, ctx) / b.eval(z, ctx),
            Expr::Pow(a, k) => cpowi(&a.eval(z, ctx), *k),
            Expr::Exp(a) => cexp(&a.eval(z, ctx)),
            Expr::Sqrt(a) => csqrt(&a.eval(z, ctx)),
        }
    }

    /// `Some(true)` if `f(−x) = f(x)`, `Some(false)` if `f(−x) = −f(x)`,
    /// read off the syntax; `None` when undecided.
    pub fn symmetry(&self) -> Option<bool> {
        match self {
            Expr::Num(_) => Some(true),
            Expr::X => Some(false),
            Expr::Neg(a) => a.symmetry(),
            Expr::Add(a, b) | Expr::Sub(a, b) => match (a.symmetry(), b.symmetry()) {
                (Some(p), Some(q)) if p == q => Some(p),
                _ => None,
            },
            Expr::Mul(a, b) | Expr::Div(a, b) => Some(a.symmetry()? == b.symmetry()?),
            Expr::Pow(a, k) => a.symmetry().map(|p| p || k % 2 == 0),
            Expr::Exp(a) | Expr::Sqrt(a) => a.symmetry().filter(|&p| p),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, e.g. 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| format!("bad number {s:?}"))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?} in expression"));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, String> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.next() {
                Some(Tok::Num(v)) if v.fract() == 0.0 && v.abs() < 1e6 => {
                    let k = v as i64;
                    return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
                }
                _ => return Err("exponents must be integer literals".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, String> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::X),
                "pi" => Ok(Expr::Num(std::f64::consts::PI)),
                "exp" | "sqrt" => {
                    if !self.eat('(') {
                        return Err(format!("{name} needs parentheses"));
                    }
                    let arg = Box::new(self.expr()?);
                    if !self.eat(')') {
                        return Err("missing ')'".into());
                    }
                    Ok(if name == "exp" { Expr::Exp(arg) } else { Expr::Sqrt(arg) })
                }
                _ => Err(format!("unknown name {name:?}")),
            },
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("missing ')'".into());
                }
                Ok(e)
            }
            Some(t) => Err(format!("unexpected {t:?} in expression")),
            None => Err("expression ends early".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(src: &str, x: f64) -> Cplx {
        Expr::parse(src).unwrap().eval::<f64>(&Cplx::new(x, 0.0), ())
    }

    #[test]
    fn precedence_and_functions() {
        assert_eq!(at("1 + 2*x^2", 3.0).re, 19.0);
        assert_eq!(at("-x^2", 2.0).re, -4.0);
        assert!((at("exp(-x)/(1+x)^2", 1.0).re - (-1f64).exp() / 4.0).abs() < 1e-15);
        assert!((at("sqrt(x+1e-1*10)", 3.0).re - 2.0).abs() < 1e-15);
        assert_eq!(at("x^-1", 4.0).re, 0.25);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1 +", "x^y", "sin(x)", "(x", "2 $ x", "exp x"] {
            assert!(Expr::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn parity_from_syntax() {
        assert_eq!(Expr::parse("exp(-x^2)").unwrap().symmetry(), Some(true));
        assert_eq!(Expr::parse("x*exp(-x^2)").unwrap().symmetry(), Some(false));
        assert_eq!(Expr::parse("exp(-x)").unwrap().symmetry(), None);
    }
}
