//! JSON and LaTeX forms of series.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use super::{BSeries, LSeries, Var};
use crate::error::{Error, Result};
use crate::ring::{MuPoly, Rat};

fn latex_coeff(c: &MuPoly) -> (bool, String) {
    if c.len() == 1 {
        let s = c.to_latex();
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("\\left({}\\right)", c.to_latex()))
    }
}

fn push_term(out: &mut String, neg: bool, body: &str, mono: &str) {
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    match (body, mono.is_empty()) {
        (b, true) => out.push_str(b),
        ("1", false) => out.push_str(mono),
        (b, false) => {
            out.push_str(b);
            out.push(' ');
            out.push_str(mono);
        }
    }
}

fn latex_power(v: Var, n: i64) -> String {
    match n {
        0 => String::new(),
        1 => v.latex().to_string(),
        _ => format!("{}^{{{n}}}", v.latex()),
    }
}

fn factorial(n: i64) -> Rat {
    Rat::from_integer((1..=n).map(BigInt::from).product())
}

impl LSeries {
    /// `{"var": "u", "lo": -2, "prec": 7, "coeffs": {"-2": <MuPoly>, ...}}`,
    /// listing nonzero coefficients in increasing order.
    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (n, c) in self.iter() {
            if !c.is_zero() {
                coeffs.insert(n.to_string(), c.to_json());
            }
        }
        json!({"var": self.var().name(), "lo": self.lo(), "prec": self.prec(), "coeffs": coeffs})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("series JSON: {what}"));
        let var = v.get("var").and_then(Value::as_str).and_then(Var::parse).ok_or_else(|| bad("bad var"))?;
        let lo = v.get("lo").and_then(Value::as_i64).ok_or_else(|| bad("missing lo"))?;
        let prec = v.get("prec").and_then(Value::as_i64).ok_or_else(|| bad("missing prec"))?;
        let map = v.get("coeffs").and_then(Value::as_object).ok_or_else(|| bad("missing coeffs"))?;
        let mut entries = Vec::with_capacity(map.len());
        for (k, c) in map {
            let n: i64 = k.parse().map_err(|_| bad("bad exponent"))?;
            if n < lo || n > prec {
                return Err(bad("exponent outside [lo, prec]"));
            }
            entries.push((n, MuPoly::from_json(c)?));
        }
        Ok(LSeries::from_fn(var, lo, prec, |n| {
            entries.iter().find(|(k, _)| *k == n).map(|(_, c)| c.clone()).unwrap_or_default()
        }))
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for (n, c) in self.iter() {
            if !c.is_zero() {
                let (neg, body) = latex_coeff(c);
                push_term(&mut out, neg, &body, &latex_power(self.var(), n));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("{out} + O({})", latex_power(self.var(), self.prec() + 1))
    }

    /// Text with coefficients in Hurwitz form, `n! c_n * var^n/n!`.
    pub fn to_hurwitz_text(&self) -> Result<String> {
        let coeffs = self.hurwitz_coeffs()?;
        let v = self.var();
        let mut out = String::new();
        for (n, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = super::term_text(c);
            let mono = match n {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{n}/{n}!"),
            };
            let text = match (body.as_str(), mono.is_empty()) {
                (_, true) => body,
                ("1", false) => mono,
                (_, false) => format!("{body}*{mono}"),
            };
            push_term(&mut out, neg, &text, "");
        }
        if out.is_empty() {
            out.push('0');
        }
        Ok(format!("{out} + O({v}^{})", self.prec() + 1))
    }

    /// LaTeX with coefficients in Hurwitz form, `n! c_n \frac{var^n}{n!}`.
    pub fn to_hurwitz_latex(&self) -> Result<String> {
        let coeffs = self.hurwitz_coeffs()?;
        let v = self.var();
        let mut out = String::new();
        for (n, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = latex_coeff(c);
            let mono = match n {
                0 | 1 => latex_power(v, n as i64),
                _ => format!("\\frac{{{}}}{{{n}!}}", latex_power(v, n as i64)),
            };
            push_term(&mut out, neg, &body, &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        Ok(format!("{out} + O({})", latex_power(v, self.prec() + 1)))
    }

    /// `n! c_n` for one index.
    pub fn hurwitz_coeff(&self, n: i64) -> MuPoly {
        self.coeff(n).scale(&factorial(n))
    }
}

impl BSeries {
    /// `{"vars": ["t1","t2"], "prec": 8, "coeffs": [{"i":1,"j":0,"poly":<MuPoly>}, ...]}`
    /// in increasing total degree, then increasing `j`.
    pub fn to_json(&self) -> Value {
        let (a, b) = self.vars();
        let coeffs: Vec<Value> = self
            .iter()
            .filter(|(_, _, c)| !c.is_zero())
            .map(|(i, j, c)| json!({"i": i, "j": j, "poly": c.to_json()}))
            .collect();
        json!({"vars": [a.name(), b.name()], "prec": self.prec(), "coeffs": coeffs})
    }

    pub fn to_latex(&self) -> String {
        let (a, b) = self.vars();
        let mut out = String::new();
        for (i, j, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = latex_coeff(c);
            let mono = [latex_power(a, i as i64), latex_power(b, j as i64)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            push_term(&mut out, neg, &body, &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        format!("{out} + O(\\deg {})", self.prec() + 1)
    }
}
