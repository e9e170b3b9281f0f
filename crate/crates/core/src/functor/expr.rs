//! Functor expressions on ab and their evaluation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Variance of a functor on ab.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Co,
    Contra,
    /// Constant functors are both.
    Both,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Co => Variance::Contra,
            Variance::Contra => Variance::Co,
            Variance::Both => Variance::Both,
        }
    }

    fn combine(self, other: Variance) -> Result<Variance> {
        match (self, other) {
            (Variance::Both, v) | (v, Variance::Both) => Ok(v),
            (a, b) if a == b => Ok(a),
            _ => Err(Error::Variance("operands of mixed variance".into())),
        }
    }

    pub fn is_contravariant(self) -> bool {
        self == Variance::Contra
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Co => "co",
            Variance::Contra => "contra",
            Variance::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FunctorExpr {
    Id,
    Const(usize),
    Reduced(Box<FunctorExpr>),
    Dual(Box<FunctorExpr>),
    Tensor(Box<FunctorExpr>, Box<FunctorExpr>),
    DirectSum(Box<FunctorExpr>, Box<FunctorExpr>),
    TensorPower(Box<FunctorExpr>, usize),
    Sym(usize),
    Ext(usize),
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl FunctorExpr {
    pub fn dual(f: FunctorExpr) -> Self {
        FunctorExpr::Dual(Box::new(f))
    }

    pub fn reduced(f: FunctorExpr) -> Self {
        FunctorExpr::Reduced(Box::new(f))
    }

    pub fn tensor(f: FunctorExpr, g: FunctorExpr) -> Self {
        FunctorExpr::Tensor(Box::new(f), Box::new(g))
    }

    pub fn sum(f: FunctorExpr, g: FunctorExpr) -> Self {
        FunctorExpr::DirectSum(Box::new(f), Box::new(g))
    }

    pub fn pow(f: FunctorExpr, n: usize) -> Self {
        FunctorExpr::TensorPower(Box::new(f), n)
    }

    pub fn variance(&self) -> Result<Variance> {
        use FunctorExpr::*;
        match self {
            Id | Sym(_) | Ext(_) => Ok(Variance::Co),
            Const(_) => Ok(Variance::Both),
            Reduced(f) => f.variance(),
            Dual(f) => Ok(f.variance()?.flip()),
            Tensor(f, g) | DirectSum(f, g) => f.variance()?.combine(g.variance()?),
            TensorPower(f, n) => {
                if *n == 0 {
                    f.variance()?;
                    Ok(Variance::Both)
                } else {
                    f.variance()
                }
            }
        }
    }

    /// Rank of `F(ℤ^m)`.
    pub fn dim(&self, m: usize) -> usize {
        use FunctorExpr::*;
        match self {
            Id => m,
            Const(r) => *r,
            Reduced(f) => f.dim(m) - f.dim(0),
            Dual(f) => f.dim(m),
            Tensor(f, g) => f.dim(m) * g.dim(m),
            DirectSum(f, g) => f.dim(m) + g.dim(m),
            TensorPower(f, n) => f.dim(m).pow(*n as u32),
            Sym(n) => {
                if *n == 0 {
                    1
                } else {
                    binomial(m + n - 1, *n)
                }
            }
            Ext(n) => binomial(m, *n),
        }
    }

    /// Number of nodes in the expression tree.
    pub(crate) fn size(&self) -> usize {
        use FunctorExpr::*;
        match self {
            Id | Const(_) | Sym(_) | Ext(_) => 1,
            Reduced(f) | Dual(f) | TensorPower(f, _) => 1 + f.size(),
            Tensor(f, g) | DirectSum(f, g) => 1 + f.size() + g.size(),
        }
    }

    pub fn parse(text: &str) -> Result<FunctorExpr> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorExpr::*;
        match self {
            Id => write!(f, "id"),
            Const(r) => write!(f, "const({r})"),
            Reduced(g) => write!(f, "reduced({g})"),
            Dual(g) => write!(f, "dual({g})"),
            Tensor(g, h) => write!(f, "tensor({g},{h})"),
            DirectSum(g, h) => write!(f, "sum({g},{h})"),
            TensorPower(g, n) => write!(f, "pow({g},{n})"),
            Sym(n) => write!(f, "sym({n})"),
            Ext(n) => write!(f, "ext({n})"),
        }
    }
}

impl FromStr for FunctorExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FunctorExpr::parse(s)
    }
}

impl Serialize for FunctorExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FunctorExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a functor name");
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_ascii_lowercase())
    }

    fn number(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "number too large".into() })
    }

    fn expr(&mut self) -> Result<FunctorExpr> {
        let start = self.pos;
        let name = self.ident()?;
        let e = match name.as_str() {
            "id" => FunctorExpr::Id,
            "const" | "sym" | "ext" => {
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                match name.as_str() {
                    "const" => FunctorExpr::Const(n),
                    "sym" => FunctorExpr::Sym(n),
                    _ => FunctorExpr::Ext(n),
                }
            }
            "dual" | "reduced" => {
                self.expect(b'(')?;
                let f = self.expr()?;
                self.expect(b')')?;
                if name == "dual" { FunctorExpr::dual(f) } else { FunctorExpr::reduced(f) }
            }
            "tensor" | "sum" => {
                self.expect(b'(')?;
                let f = self.expr()?;
                self.expect(b',')?;
                let g = self.expr()?;
                self.expect(b')')?;
                if name == "tensor" { FunctorExpr::tensor(f, g) } else { FunctorExpr::sum(f, g) }
            }
            "pow" => {
                self.expect(b'(')?;
                let f = self.expr()?;
                self.expect(b',')?;
                let n = self.number()?;
                self.expect(b')')?;
                FunctorExpr::pow(f, n)
            }
            _ => {
                return Err(Error::Parse { pos: start, msg: format!("unknown functor '{name}'") })
            }
        };
        Ok(e)
    }
}
