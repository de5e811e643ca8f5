use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::element::AlgebraicNumber;
use super::field::NumberField;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Den {
    /// β^e
    BetaPow(u32),
    /// A nonzero element with cached sign.
    General(AlgebraicNumber, i8),
}

/// An element of Q(β) written num/den with num, den in Z[β].
#[derive(Clone, Debug)]
pub struct RationalCombination {
    num: AlgebraicNumber,
    den: Den,
}

impl RationalCombination {
    pub fn new(num: AlgebraicNumber, den: AlgebraicNumber) -> Result<Self> {
        let s = den.sign()?;
        if s == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalCombination { num, den: Den::General(den, s) })
    }

    pub fn from_element(x: AlgebraicNumber) -> Self {
        RationalCombination { num: x, den: Den::BetaPow(0) }
    }

    /// x / β^e
    pub fn over_beta_pow(x: AlgebraicNumber, e: u32) -> Self {
        RationalCombination { num: x, den: Den::BetaPow(e) }
    }

    pub fn from_integer(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_element(AlgebraicNumber::from_integer(field, n))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.num.field()
    }

    pub fn numerator(&self) -> &AlgebraicNumber {
        &self.num
    }

    pub fn denominator(&self) -> AlgebraicNumber {
        match &self.den {
            Den::BetaPow(e) => AlgebraicNumber::beta_pow(self.num.field(), *e),
            Den::General(d, _) => d.clone(),
        }
    }

    fn den_sign(&self) -> i8 {
        match &self.den {
            Den::BetaPow(_) => 1,
            Den::General(_, s) => *s,
        }
    }

    pub fn sign(&self) -> Result<i8> {
        Ok(self.num.sign()? * self.den_sign())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.den, &other.den) {
            (Den::BetaPow(a), Den::BetaPow(b)) => {
                let f = self.num.field();
                let e = (*a).max(*b);
                let x = &self.num * &AlgebraicNumber::beta_pow(f, e - a);
                let y = &other.num * &AlgebraicNumber::beta_pow(f, e - b);
                Self::over_beta_pow(&x + &y, e)
            }
            _ => {
                let (d1, d2) = (self.denominator(), other.denominator());
                let num = &(&self.num * &d2) + &(&other.num * &d1);
                RationalCombination { num, den: Den::General(&d1 * &d2, self.den_sign() * other.den_sign()) }
            }
        }
    }

    pub fn neg(&self) -> Self {
        RationalCombination { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = &self.num * &other.num;
        match (&self.den, &other.den) {
            (Den::BetaPow(a), Den::BetaPow(b)) => Self::over_beta_pow(num, a + b),
            _ => RationalCombination {
                num,
                den: Den::General(&self.denominator() * &other.denominator(), self.den_sign() * other.den_sign()),
            },
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let s = other.sign()?;
        if s == 0 {
            return Err(Error::DivisionByZero);
        }
        let num = &self.num * &other.denominator();
        let den = &self.denominator() * &other.num;
        Ok(RationalCombination { num, den: Den::General(den, self.den_sign() * s) })
    }

    /// Multiply by β^{-e}.
    pub fn shift(&self, e: u32) -> Self {
        match &self.den {
            Den::BetaPow(a) => Self::over_beta_pow(self.num.clone(), a + e),
            Den::General(d, s) => RationalCombination {
                num: self.num.clone(),
                den: Den::General(d * &AlgebraicNumber::beta_pow(self.num.field(), e), *s),
            },
        }
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        let s = self.sub(other).sign()?;
        Ok(s.cmp(&0))
    }

    /// Exact equality after clearing denominators.
    pub fn equals(&self, other: &Self) -> bool {
        let l = &self.num * &other.denominator();
        let r = &other.num * &self.denominator();
        l == r
    }

    pub fn to_f64(&self) -> f64 {
        match &self.den {
            Den::BetaPow(e) => self.num.to_f64() / self.num.field().beta_f64().powi(*e as i32),
            Den::General(d, _) => self.num.to_f64() / d.to_f64(),
        }
    }

    /// Numerator and denominator as coefficient vectors.
    pub fn parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        (self.num.coeffs().to_vec(), self.denominator().coeffs().to_vec())
    }
}

impl fmt::Display for RationalCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.den {
            Den::BetaPow(0) => write!(f, "{}", self.num),
            Den::BetaPow(e) => write!(f, "({})/β^{}", self.num, e),
            Den::General(d, _) => write!(f, "({})/({})", self.num, d),
        }
    }
}

/// Parse an expression in β such as `1`, `phi`, `b^2-2*b`, `(d-1)/(beta-1)`, `1/2`.
pub fn parse_expr(field: &Arc<NumberField>, text: &str) -> Result<RationalCombination> {
    let toks = tokenize(text)?;
    let mut p = ExprParser { field, toks, pos: 0, text };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Beta,
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = cs[st..i].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if c.is_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_alphabetic() {
                i += 1;
            }
            let s: String = cs[st..i].iter().collect();
            match s.as_str() {
                "b" | "beta" | "phi" | "β" | "x" => out.push(Tok::Beta),
                _ => return Err(Error::Parse(format!("unknown symbol '{s}' in '{text}'"))),
            }
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected '{c}' in '{text}'")));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    field: &'a Arc<NumberField>,
    toks: Vec<Tok>,
    pos: usize,
    text: &'a str,
}

impl ExprParser<'_> {
    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("expression '{}': {m}", self.text))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<RationalCombination> {
        let mut neg = false;
        if self.peek() == Some(&Tok::Op('-')) {
            neg = true;
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        while let Some(Tok::Op(c)) = self.peek() {
            let c = *c;
            if c != '+' && c != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalCombination> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    acc = acc.div(&self.power()?)?;
                }
                // implicit product such as 2b
                Some(Tok::Beta) | Some(Tok::Op('(')) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RationalCombination> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => u32::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected integer exponent")),
            };
            self.pos += 1;
            let mut acc = RationalCombination::from_integer(self.field, 1);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalCombination> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(RationalCombination::from_element(AlgebraicNumber::from_integer(self.field, n))),
            Tok::Beta => Ok(RationalCombination::from_element(AlgebraicNumber::beta(self.field))),
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.toks.get(self.pos) != Some(&Tok::Op(')')) {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_mu_golden_equals_beta() {
        let f = NumberField::golden();
        let a = parse_expr(&f, "1/(b-1)").unwrap();
        let b = parse_expr(&f, "phi").unwrap();
        assert!(a.equals(&b));
        assert_eq!(a.compare(&b).unwrap(), Ordering::Equal);
    }

    #[test]
    fn beta_power_sums() {
        let f = NumberField::golden();
        let one = RationalCombination::from_integer(&f, 1);
        let x = RationalCombination::over_beta_pow(AlgebraicNumber::one(&f), 1)
            .add(&RationalCombination::over_beta_pow(AlgebraicNumber::one(&f), 2));
        assert!(x.equals(&one));
    }

    #[test]
    fn parse_forms() {
        let f = NumberField::golden();
        for (s, v) in [("1", 1.0), ("2b", 2.0 * 1.618033988749895), ("1/2", 0.5), ("-b+3", 3.0 - 1.618033988749895)] {
            assert!((parse_expr(&f, s).unwrap().to_f64() - v).abs() < 1e-12, "{s}");
        }
        assert!(parse_expr(&f, "1/0").is_err());
        assert!(parse_expr(&f, "y").is_err());
    }
}
