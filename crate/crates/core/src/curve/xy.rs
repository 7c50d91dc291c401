use std::fmt;

use num_traits::Zero;

use super::CurveParams;
use crate::error::{Error, Result};
use crate::ring::{Accumulator, MuPoly, Rat};
use crate::series::LSeries;

/// Element of Q[mu][x, y] / (f) in the normal form `a(x) + b(x) y`.
///
/// `parts[0][k]` is the coefficient of `x^k`, `parts[1][k]` that of `x^k y`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct XYPoly {
    parts: [Vec<MuPoly>; 2],
}

impl XYPoly {
    pub fn zero() -> Self {
        XYPoly::default()
    }

    pub fn constant(c: MuPoly) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(MuPoly::one())
    }

    /// `c x^a y^b` with `b <= 1`.
    pub fn term(c: MuPoly, a: usize, b: usize) -> Self {
        assert!(b <= 1, "y-degree must be at most 1");
        let mut out = XYPoly::zero();
        out.parts[b].resize(a + 1, MuPoly::zero());
        out.parts[b][a] = c;
        out.normalize()
    }

    pub fn x() -> Self {
        Self::term(MuPoly::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(MuPoly::one(), 0, 1)
    }

    fn normalize(mut self) -> Self {
        for part in &mut self.parts {
            while part.last().is_some_and(MuPoly::is_zero) {
                part.pop();
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Vec::is_empty)
    }

    /// Coefficient of `x^a y^b`.
    pub fn coeff(&self, a: usize, b: usize) -> MuPoly {
        self.parts[b].get(a).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(a, b, coefficient)`, highest pole order `2a + 3b` first.
    pub fn terms(&self) -> Vec<(usize, usize, &MuPoly)> {
        let mut out: Vec<(usize, usize, &MuPoly)> = Vec::new();
        for (b, part) in self.parts.iter().enumerate() {
            for (a, c) in part.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, c));
                }
            }
        }
        out.sort_by_key(|t| std::cmp::Reverse(2 * t.0 + 3 * t.1));
        out
    }

    /// Largest `2a + 3b` over nonzero terms: the pole order at infinity.
    pub fn pole_order(&self) -> Option<usize> {
        self.terms().first().map(|(a, b, _)| 2 * a + 3 * b)
    }

    pub fn map_coeffs(&self, f: impl Fn(&MuPoly) -> MuPoly) -> Self {
        XYPoly { parts: [self.parts[0].iter().map(&f).collect(), self.parts[1].iter().map(&f).collect()] }.normalize()
    }

    pub fn scale(&self, c: &MuPoly) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| -x)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let mut out = XYPoly::zero();
        for b in 0..2 {
            let n = self.parts[b].len().max(other.parts[b].len());
            out.parts[b] = (0..n)
                .map(|k| {
                    let l = self.parts[b].get(k).cloned().unwrap_or_default();
                    let r = other.parts[b].get(k).cloned().unwrap_or_default();
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
        }
        out.normalize()
    }

    /// Product, reduced with `y^2 = -(mu1 x + mu3) y + x^3 + mu2 x^2 + mu4 x + mu6`.
    pub fn mul(&self, other: &Self, curve: &CurveParams) -> Self {
        let conv = |a: &[MuPoly], b: &[MuPoly]| -> Vec<MuPoly> {
            if a.is_empty() || b.is_empty() {
                return Vec::new();
            }
            let mut acc: Vec<Accumulator> = (0..a.len() + b.len() - 1).map(|_| Accumulator::new()).collect();
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        acc[i + j].add_product(x, y);
                    }
                }
            }
            acc.into_iter().map(Accumulator::finish).collect()
        };
        let [a0, a1] = &self.parts;
        let [b0, b1] = &other.parts;
        let plain = XYPoly { parts: [conv(a0, b0), Vec::new()] };
        let mixed = XYPoly { parts: [Vec::new(), add_vecs(&conv(a0, b1), &conv(a1, b0))] };
        let yy = conv(a1, b1);
        let y_sq = curve.y_squared();
        let reduced = XYPoly { parts: [yy, Vec::new()] }.mul_simple(&y_sq);
        plain.add(&mixed).add(&reduced)
    }

    /// Product with an element that has no y-part on the left.
    fn mul_simple(&self, other: &Self) -> Self {
        debug_assert!(self.parts[1].is_empty());
        let mut out = XYPoly::zero();
        for b in 0..2 {
            let mut acc: Vec<Accumulator> = Vec::new();
            for (i, x) in self.parts[0].iter().enumerate() {
                for (j, y) in other.parts[b].iter().enumerate() {
                    if acc.len() <= i + j {
                        acc.resize_with(i + j + 1, Accumulator::new);
                    }
                    if !x.is_zero() && !y.is_zero() {
                        acc[i + j].add_product(x, y);
                    }
                }
            }
            out.parts[b] = acc.into_iter().map(Accumulator::finish).collect();
        }
        out.normalize()
    }

    pub fn pow(&self, k: u32, curve: &CurveParams) -> Self {
        let mut out = XYPoly::one();
        for _ in 0..k {
            out = out.mul(self, curve);
        }
        out
    }

    /// Substitutes Laurent series for x and y.
    pub fn to_series(&self, x: &LSeries, y: &LSeries) -> Result<LSeries> {
        let mut acc: Option<LSeries> = None;
        let mut xp: Option<LSeries> = None;
        let n = self.parts[0].len().max(self.parts[1].len());
        for a in 0..n {
            xp = Some(match xp {
                None => LSeries::one(x.var(), x.prec()),
                Some(p) => p.try_mul(x)?,
            });
            let pa = xp.as_ref().expect("power");
            for b in 0..2 {
                let c = self.coeff(a, b);
                if c.is_zero() {
                    continue;
                }
                let term = if b == 0 { pa.scale(&c) } else { pa.try_mul(y)?.scale(&c) };
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.try_add(&term)?,
                });
            }
        }
        Ok(acc.unwrap_or_else(|| LSeries::zero(x.var(), x.prec())))
    }

    /// Value at a rational point; every coefficient must be a constant.
    pub fn evaluate_at(&self, x: &Rat, y: &Rat) -> Result<Rat> {
        let mut total = Rat::zero();
        for (a, b, c) in self.terms() {
            let c = c.constant_value().ok_or_else(|| Error::Range(format!("coefficient {c} is not numeric")))?;
            let mut v = c * num_traits::pow(x.clone(), a);
            if b == 1 {
                v *= y;
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes numeric values for mu in every coefficient.
    pub fn evaluate_mu(&self, values: &[Rat; 5]) -> Self {
        self.map_coeffs(|c| MuPoly::constant(c.evaluate(values)))
    }

    pub fn to_latex(&self) -> String {
        self.render(|c| c.to_latex(), |a, b| monomial_text(a, b, true), " ")
    }

    fn render(&self, coef: impl Fn(&MuPoly) -> String, mono: impl Fn(usize, usize) -> String, sep: &str) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (a, b, c)) in terms.iter().enumerate() {
            let m = mono(*a, *b);
            let body = coef(c);
            let (neg, body) = if c.len() == 1 {
                match body.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, body),
                }
            } else {
                (false, format!("({body})"))
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            match (body.as_str(), m.is_empty()) {
                (b, true) => out.push_str(b),
                ("1", false) => out.push_str(&m),
                (b, false) => {
                    out.push_str(b);
                    out.push_str(sep);
                    out.push_str(&m);
                }
            }
        }
        out
    }
}

fn add_vecs(a: &[MuPoly], b: &[MuPoly]) -> Vec<MuPoly> {
    let n = a.len().max(b.len());
    (0..n).map(|k| a.get(k).cloned().unwrap_or_default() + b.get(k).cloned().unwrap_or_default()).collect()
}

fn monomial_text(a: usize, b: usize, latex: bool) -> String {
    let mut parts: Vec<String> = Vec::new();
    match a {
        0 => {}
        1 => parts.push("x".into()),
        _ if latex => parts.push(format!("x^{{{a}}}")),
        _ => parts.push(format!("x^{a}")),
    }
    if b == 1 {
        parts.push("y".into());
    }
    parts.join(if latex { " " } else { "*" })
}

impl fmt::Display for XYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|c| c.to_string(), |a, b| monomial_text(a, b, false), "*"))
    }
}

impl fmt::Debug for XYPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XYPoly({self})")
    }
}
