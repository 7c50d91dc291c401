//! n-plication polynomials `psi_n(u) = sigma(n u) / sigma(u)^(n^2)` and
//! their normal form in `(x, y)`.

pub mod group;

use std::fmt;

use serde_json::{json, Value};

use crate::curve::{CurveParams, XYPoly};
use crate::error::{Error, Result};
use crate::ring::{int, rat, MuPoly, Rat};
use crate::series::LSeries;
use crate::sigma::SigmaKit;

pub use group::{Group, Point};

/// `psi_n` reduced to `a(x) + b(x) y` modulo the curve equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiPoly {
    n: u32,
    poly: XYPoly,
}

/// `(a, b)` with `2a + 3b = k` and `b <= 1`; none for `k = 1`.
fn monomial_of_pole(k: usize) -> Option<(usize, usize)> {
    match k {
        1 => None,
        k if k % 2 == 0 => Some((k / 2, 0)),
        k => Some(((k - 3) / 2, 1)),
    }
}

impl PsiPoly {
    pub fn new(n: u32, poly: XYPoly) -> Self {
        PsiPoly { n, poly }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn poly(&self) -> &XYPoly {
        &self.poly
    }

    pub fn neg(&self) -> Self {
        PsiPoly { n: self.n, poly: self.poly.neg() }
    }

    /// Coefficient of the monomial of pole order `n^2 - 1 - j`.
    pub fn coefficient(&self, j: usize) -> MuPoly {
        let top = (self.n * self.n) as usize - 1;
        if j > top {
            return MuPoly::zero();
        }
        match monomial_of_pole(top - j) {
            Some((a, b)) => self.poly.coeff(a, b),
            None => MuPoly::zero(),
        }
    }

    /// `C_0, ..., C_(n^2 - 1)`.
    pub fn coefficients(&self) -> Vec<MuPoly> {
        (0..(self.n * self.n) as usize).map(|j| self.coefficient(j)).collect()
    }

    pub fn evaluate_at(&self, x: &Rat, y: &Rat) -> Result<Rat> {
        self.poly.evaluate_at(x, y)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.poly.terms().into_iter().map(|(a, b, c)| json!({"x": a, "y": b, "poly": c.to_json()})).collect();
        json!({"n": self.n, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("PsiPoly JSON: {what}"));
        let n =
            v.get("n").and_then(Value::as_u64).and_then(|n| u32::try_from(n).ok()).ok_or_else(|| bad("missing n"))?;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut poly = XYPoly::zero();
        for t in terms {
            let a = t.get("x").and_then(Value::as_u64).ok_or_else(|| bad("missing x"))?;
            let b = t.get("y").and_then(Value::as_u64).filter(|&b| b <= 1).ok_or_else(|| bad("y must be 0 or 1"))?;
            let c = MuPoly::from_json(t.get("poly").ok_or_else(|| bad("missing poly"))?)?;
            poly = poly.add(&XYPoly::term(c, a as usize, b as usize));
        }
        Ok(PsiPoly { n, poly })
    }

    pub fn to_latex(&self) -> String {
        format!("\\psi_{{{}}} = {}", self.n, self.poly.to_latex())
    }
}

impl fmt::Display for PsiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Smallest sigma order from which [`SigmaKit`] supports `psi_series(n)`.
pub fn kit_order_for(n: u32) -> i64 {
    i64::from(n * n).max(4)
}

/// `sigma(n u) / sigma(u)^(n^2)`.
pub fn psi_series(kit: &SigmaKit, n: u32) -> Result<LSeries> {
    if n == 0 {
        return Err(Error::Range("n must be positive".into()));
    }
    let sigma = kit.sigma();
    let nn = i64::from(n * n);
    if sigma.prec() < nn {
        return Err(Error::Precision { needed: nn, have: sigma.prec() });
    }
    sigma.scale_var(&int(i64::from(n))).try_div(&sigma.pow(nn)?)
}

/// Pole stripping of a series with pole order `n^2 - 1` against `x(u)^a y(u)^b`.
pub fn reduce_to_xy(kit: &SigmaKit, series: &LSeries, n: u32) -> Result<PsiPoly> {
    let top = (n * n) as usize - 1;
    if series.valuation() != Some(-(top as i64)) {
        return Err(Error::Identity(format!(
            "psi_{n} has valuation {:?}, expected {}",
            series.valuation(),
            -(top as i64)
        )));
    }
    let x = kit.wp();
    let y = kit.y_of_u();
    let mut x_pows: Vec<LSeries> = vec![LSeries::one(x.var(), x.prec() + 2)];
    while x_pows.len() <= top / 2 {
        let next = x_pows.last().expect("nonempty").try_mul(x)?;
        x_pows.push(next);
    }
    let mut rest = series.clone();
    let mut poly = XYPoly::zero();
    for k in (0..=top).rev() {
        let c = rest.coeff(-(k as i64)).clone();
        if c.is_zero() {
            continue;
        }
        let (a, b) = monomial_of_pole(k).ok_or_else(|| Error::Identity(format!("psi_{n} has a simple pole: {c}")))?;
        let basis = if b == 0 { x_pows[a].clone() } else { x_pows[a].try_mul(&y)? };
        // leading coefficient of x^a y^b is (-1)^b
        let c = if b == 1 { -c } else { c };
        rest = rest.try_sub(&basis.scale(&c))?;
        poly = poly.add(&XYPoly::term(c, a, b));
    }
    if let Some((k, c)) = rest.iter().find(|(_, c)| !c.is_zero()) {
        return Err(Error::Identity(format!("psi_{n} leaves remainder {c} at u^{k} after reduction")));
    }
    Ok(PsiPoly { n, poly })
}

/// `psi_n` in normal form, computed from sigma.
pub fn n_plication(kit: &SigmaKit, n: u32) -> Result<PsiPoly> {
    let s = psi_series(kit, n)?;
    reduce_to_xy(kit, &s, n)
}

fn mono(c: Rat, powers: &[(u32, u32)]) -> MuPoly {
    powers.iter().fold(MuPoly::constant(c), |acc, &(j, k)| acc * MuPoly::mu(j).pow(k))
}

/// The tabulated closed forms for `C_j`: `j <= 6` for odd n, `j <= 5` for even n.
///
/// For even n the leading coefficient is `-n`: `sigma(n u) / sigma(u)^(n^2)`
/// starts with `n u^(1 - n^2)` while `x^a y` starts with `-u^(1 - n^2)`.
pub fn cj_formula(n: u32, j: usize) -> Result<MuPoly> {
    let m = int(i64::from(n));
    let n2 = &m * &m;
    let p = |c: i64| &n2 + int(c);
    if n % 2 == 1 {
        let base = &m * p(-1);
        let out = match j {
            0 => MuPoly::constant(m),
            1 | 3 | 5 => MuPoly::zero(),
            2 => mono(&base * rat(1, 24), &[(1, 2)]) + mono(&base * rat(1, 6), &[(2, 1)]),
            4 => {
                let lo = &base * p(-9);
                let hi = &base * p(6);
                mono(&lo * rat(1, 1920), &[(1, 4)])
                    + mono(&lo * rat(1, 240), &[(2, 1), (1, 2)])
                    + mono(&hi * rat(1, 120), &[(3, 1), (1, 1)])
                    + mono(&lo * rat(1, 120), &[(2, 2)])
                    + mono(&hi * rat(1, 60), &[(4, 1)])
            }
            6 => {
                let a = &base * p(-9) * p(-25);
                let b = &base * p(-9) * p(10);
                let c = &base * (&n2 * &n2 + &n2 + int(15));
                mono(&a * rat(1, 322560), &[(1, 6)])
                    + mono(&a * rat(1, 26880), &[(2, 1), (1, 4)])
                    + mono(&b * rat(1, 6720), &[(3, 1), (1, 3)])
                    + mono(&a * rat(1, 6720), &[(2, 2), (1, 2)])
                    + mono(&b * rat(1, 3360), &[(4, 1), (1, 2)])
                    + mono(&b * rat(1, 1680), &[(3, 1), (2, 1), (1, 1)])
                    + mono(&a * rat(1, 5040), &[(2, 3)])
                    + mono(&b * rat(1, 840), &[(4, 1), (2, 1)])
                    + mono(&c * rat(1, 840), &[(3, 2)])
                    + mono(&c * rat(1, 210), &[(6, 1)])
            }
            _ => return Err(Error::Range(format!("C_{j} is not tabulated for odd n"))),
        };
        return Ok(out);
    }
    let base = -(&m * p(-4));
    let out = match j {
        0 => MuPoly::constant(-m),
        1 => mono(-&m * rat(1, 2), &[(1, 1)]),
        2 => mono(&base * rat(1, 24), &[(1, 2)]) + mono(&base * rat(1, 6), &[(2, 1)]),
        3 => {
            mono(&base * rat(1, 48), &[(1, 3)])
                + mono(&base * rat(1, 12), &[(2, 1), (1, 1)])
                + mono(-&m * rat(1, 2), &[(3, 1)])
        }
        4 => {
            let lo = &base * p(-16);
            let hi = &base * p(9);
            mono(&lo * rat(1, 1920), &[(1, 4)])
                + mono(&lo * rat(1, 240), &[(2, 1), (1, 2)])
                + mono(&hi * rat(1, 120), &[(3, 1), (1, 1)])
                + mono(&lo * rat(1, 120), &[(2, 2)])
                + mono(&hi * rat(1, 60), &[(4, 1)])
        }
        5 => {
            let lo = &base * p(-16);
            mono(&lo * rat(1, 3840), &[(1, 5)])
                + mono(&lo * rat(1, 480), &[(2, 1), (1, 3)])
                + mono(&base * p(14) * rat(1, 240), &[(3, 1), (1, 2)])
                + mono(&lo * rat(1, 240), &[(2, 2), (1, 1)])
                + mono(&base * p(9) * rat(1, 120), &[(4, 1), (1, 1)])
                + mono(&base * rat(1, 12), &[(3, 1), (2, 1)])
        }
        _ => return Err(Error::Range(format!("C_{j} is not tabulated for even n"))),
    };
    Ok(out)
}

/// Division polynomials from the standard recurrence, independent of sigma.
///
/// Odd `psi_n` is a polynomial `f_n(x)`; even `psi_n = psi_2 g_n(x)` with
/// `psi_2 = 2y + mu1 x + mu3` and `psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn classical_oracle(n: u32, curve: &CurveParams) -> Result<PsiPoly> {
    if n == 0 {
        return Err(Error::Range("n must be positive".into()));
    }
    let inv = curve.invariants();
    let xp = |cs: &[MuPoly]| -> XYPoly {
        cs.iter().enumerate().fold(XYPoly::zero(), |acc, (k, c)| acc.add(&XYPoly::term(c.clone(), k, 0)))
    };
    let (b2, b4, b6, b8) = (&inv.b2, &inv.b4, &inv.b6, &inv.b8);
    let c = |k: i64| MuPoly::from_int(k);
    let pp = xp(&[b6.clone(), b4.scale_int(2), b2.clone(), c(4)]);
    let pp2 = pp.mul(&pp, curve);
    let mul = |a: &XYPoly, b: &XYPoly| a.mul(b, curve);
    let cube = |a: &XYPoly| mul(&mul(a, a), a);
    // h[k] is f_k for odd k and g_k for even k
    let mut h: Vec<XYPoly> = vec![
        XYPoly::zero(),
        XYPoly::one(),
        XYPoly::one(),
        xp(&[b8.clone(), b6.scale_int(3), b4.scale_int(3), b2.clone(), c(3)]),
        xp(&[
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            b8.scale_int(10),
            b6.scale_int(10),
            b4.scale_int(5),
            b2.clone(),
            c(2),
        ]),
    ];
    for k in 5..=n as usize {
        let m = k / 2;
        let next = if k % 2 == 1 {
            if m % 2 == 0 {
                mul(&mul(&pp2, &h[m + 2]), &cube(&h[m])).sub(&mul(&h[m - 1], &cube(&h[m + 1])))
            } else {
                mul(&h[m + 2], &cube(&h[m])).sub(&mul(&mul(&pp2, &h[m - 1]), &cube(&h[m + 1])))
            }
        } else {
            let sq = |a: &XYPoly| mul(a, a);
            mul(&h[m], &mul(&h[m + 2], &sq(&h[m - 1])).sub(&mul(&h[m - 2], &sq(&h[m + 1]))))
        };
        h.push(next);
    }
    let body = &h[n as usize];
    let poly = if n % 2 == 1 { body.clone() } else { mul(&curve.f_y(), body) };
    Ok(PsiPoly { n, poly })
}

/// `+1` or `-1` if `computed = sign * oracle`, otherwise none.
pub fn relative_sign(computed: &PsiPoly, oracle: &PsiPoly) -> Option<i8> {
    if computed == oracle {
        Some(1)
    } else if *computed == oracle.neg() {
        Some(-1)
    } else {
        None
    }
}

/// Value of `psi_n` at an affine point, with the point's order from the group law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionReport {
    pub n: u32,
    pub value: Rat,
    /// Order of the point, if at most `ORDER_BOUND`.
    pub order: Option<u64>,
}

const ORDER_BOUND: u64 = 64;

impl TorsionReport {
    /// `psi_n(P) = 0` exactly when the order of `P` divides `n` (for `P != O`).
    pub fn consistent(&self) -> bool {
        let divides = self.order.is_some_and(|k| u64::from(self.n) % k == 0);
        self.value == Rat::from_integer(0.into()) && divides || self.value != Rat::from_integer(0.into()) && !divides
    }
}

pub fn torsion_check(psi: &PsiPoly, curve: &CurveParams, x: &Rat, y: &Rat) -> Result<TorsionReport> {
    let g = Group::new(curve)?;
    let p = g.point(x.clone(), y.clone())?;
    let poly = psi.poly.evaluate_mu(curve.values().expect("numeric curve"));
    let value = poly.evaluate_at(x, y)?;
    Ok(TorsionReport { n: psi.n, value, order: g.order(&p, ORDER_BOUND) })
}
