use std::collections::BTreeMap;
use std::fmt;

use super::{CurveParams, XYPoly};
use crate::error::Result;
use crate::ring::MuPoly;
use crate::series::{BSeries, LSeries, Var};

/// Polynomial in `(x, y; z, w)` over Q[mu]; keys are exponents of x, y, z, w.
#[derive(Clone, PartialEq, Eq)]
pub struct PairingPoly {
    terms: BTreeMap<[u32; 4], MuPoly>,
}

impl PairingPoly {
    /// The polynomial F(x,y;z,w) in the numerator of the fundamental 2-form
    /// `F dx dz / ((x - z)^2 f_y(x,y) f_y(z,w))`.
    pub fn fundamental(curve: &CurveParams) -> Self {
        let [m1, m2, m3, m4, m6] = curve.mus();
        let m13_4 = &m1 * &m3 + &m4;
        let entries = [
            ([2, 0, 1, 0], MuPoly::one()),
            ([1, 0, 2, 0], MuPoly::one()),
            ([1, 0, 1, 0], &m1 * &m1 + m2.scale_int(2)),
            ([0, 1, 1, 0], m1.clone()),
            ([1, 0, 0, 1], m1.clone()),
            ([1, 0, 0, 0], m13_4.clone()),
            ([0, 0, 1, 0], m13_4),
            ([0, 1, 0, 1], MuPoly::from_int(2)),
            ([0, 1, 0, 0], m3.clone()),
            ([0, 0, 0, 1], m3.clone()),
            ([0, 0, 0, 0], &m3 * &m3 + m6.scale_int(2)),
        ];
        let mut terms = BTreeMap::new();
        for (e, c) in entries {
            if !c.is_zero() {
                terms.insert(e, c);
            }
        }
        PairingPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &MuPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `F(z,w; x,y)`.
    pub fn swap(&self) -> Self {
        PairingPoly { terms: self.terms.iter().map(|(e, c)| ([e[2], e[3], e[0], e[1]], c.clone())).collect() }
    }

    /// `F(x,y; x,y)` reduced modulo the curve equation.
    pub fn diagonal(&self, curve: &CurveParams) -> XYPoly {
        let mut out = XYPoly::zero();
        for (e, c) in &self.terms {
            let xa = XYPoly::term(c.clone(), (e[0] + e[2]) as usize, 0);
            let yb = XYPoly::y().pow(e[1] + e[3], curve);
            out = out.add(&xa.mul(&yb, curve));
        }
        out
    }

    /// `F(x1,y1; x2,y2) s1^2 s2^2` as a power series in `(t1, t2)`, where
    /// `x = 1/s` and `y = -1/(t s)`.
    pub fn times_s_squared(&self, s: &LSeries) -> Result<BSeries> {
        let mut cache: BTreeMap<(u32, u32), LSeries> = BTreeMap::new();
        let mut piece = |a: u32, b: u32| -> Result<LSeries> {
            if let Some(p) = cache.get(&(a, b)) {
                return Ok(p.clone());
            }
            // x^a y^b s^2 = (-1)^b s^(2-a-b) t^(-b)
            let mut p = s.pow(2 - a as i64 - b as i64)?.shift(-(b as i64));
            if b % 2 == 1 {
                p = p.neg();
            }
            cache.insert((a, b), p.clone());
            Ok(p)
        };
        let vars = (Var::T1, Var::T2);
        let mut total: Option<BSeries> = None;
        for (e, c) in &self.terms {
            let left = piece(e[0], e[1])?.with_var(Var::T1);
            let right = piece(e[2], e[3])?.with_var(Var::T2);
            let term = BSeries::outer(vars, &left, &right)?.scale(c);
            total = Some(match total {
                None => term,
                Some(t) => t.try_add(&term)?,
            });
        }
        Ok(total.unwrap_or_else(|| BSeries::zero(vars, s.prec())))
    }
}

impl fmt::Display for PairingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let vars: Vec<String> = ["x", "y", "z", "w"]
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            let (neg, body) = crate::series::term_text(c);
            if !first {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            first = false;
            match (body.as_str(), vars.is_empty()) {
                (b, true) => write!(f, "{b}")?,
                ("1", false) => write!(f, "{}", vars.join("*"))?,
                (b, false) => write!(f, "{b}*{}", vars.join("*"))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
