//! Curve data and the expansions at infinity in the parameter `t = -x/y`.

mod pairing;
mod xy;

use std::fmt;

pub use pairing::PairingPoly;
pub use xy::XYPoly;

use crate::error::{Error, Result};
use crate::ring::{parse_rat, IntegralityClass, Monomial, MuPoly, Rat, MU_INDICES};
use crate::series::{BSeries, LSeries, Var};

/// Coefficients of `y^2 + (mu1 x + mu3) y = x^3 + mu2 x^2 + mu4 x + mu6`,
/// either all symbolic or all rational.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CurveParams {
    values: Option<[Rat; 5]>,
}

impl CurveParams {
    pub fn symbolic() -> Self {
        CurveParams { values: None }
    }

    pub fn from_rats(values: [Rat; 5]) -> Self {
        CurveParams { values: Some(values) }
    }

    /// Parses five rationals written as `p/q` or `p`.
    pub fn numeric<S: AsRef<str>>(values: [S; 5]) -> Result<Self> {
        let mut out: [Rat; 5] = Default::default();
        for (slot, v) in out.iter_mut().zip(values.iter()) {
            *slot = parse_rat(v.as_ref())?;
        }
        Ok(Self::from_rats(out))
    }

    /// Parses `"a,b,c,d,e"`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let arr: [&str; 5] = parts
            .try_into()
            .map_err(|p: Vec<&str>| Error::Parse(format!("expected 5 comma-separated rationals, got {}", p.len())))?;
        Self::numeric(arr)
    }

    pub fn is_symbolic(&self) -> bool {
        self.values.is_none()
    }

    /// Symbolic, or numeric with integer values: the cases where integrality
    /// over Z[mu] is meaningful.
    pub fn is_integral(&self) -> bool {
        self.values.as_ref().is_none_or(|v| v.iter().all(Rat::is_integer))
    }

    pub fn values(&self) -> Option<&[Rat; 5]> {
        self.values.as_ref()
    }

    /// `mu_j` for `j` in {1, 2, 3, 4, 6}, as a generator or a constant.
    pub fn mu(&self, j: u32) -> MuPoly {
        let k = MU_INDICES.iter().position(|&m| m == j).expect("mu index must be one of 1, 2, 3, 4, 6");
        match &self.values {
            None => MuPoly::mu(j),
            Some(v) => MuPoly::constant(v[k].clone()),
        }
    }

    pub fn mus(&self) -> [MuPoly; 5] {
        MU_INDICES.map(|j| self.mu(j))
    }

    /// Specializes a symbolic polynomial to this curve (identity when symbolic).
    pub fn specialize(&self, p: &MuPoly) -> MuPoly {
        match &self.values {
            None => p.clone(),
            Some(v) => MuPoly::constant(p.evaluate(v)),
        }
    }

    /// `x^3 + mu2 x^2 + mu4 x + mu6 - (mu1 x + mu3) y`, the normal form of `y^2`.
    pub fn y_squared(&self) -> XYPoly {
        let [m1, m2, m3, m4, m6] = self.mus();
        XYPoly::term(MuPoly::one(), 3, 0)
            .add(&XYPoly::term(m2, 2, 0))
            .add(&XYPoly::term(m4, 1, 0))
            .add(&XYPoly::constant(m6))
            .sub(&XYPoly::term(m1, 1, 1))
            .sub(&XYPoly::term(m3, 0, 1))
    }

    /// `f_y = 2y + mu1 x + mu3`.
    pub fn f_y(&self) -> XYPoly {
        XYPoly::term(MuPoly::from_int(2), 0, 1).add(&XYPoly::term(self.mu(1), 1, 0)).add(&XYPoly::constant(self.mu(3)))
    }

    /// Whether `(x, y)` satisfies the curve equation. Numeric curves only.
    pub fn contains(&self, x: &Rat, y: &Rat) -> Result<bool> {
        let v = self.values.as_ref().ok_or_else(|| Error::Range("point test needs numeric mu".into()))?;
        let [m1, m2, m3, m4, m6] = v;
        let lhs = y * y + (m1 * x + m3) * y;
        let rhs = x * x * x + m2 * x * x + m4 * x + m6;
        Ok(lhs == rhs)
    }

    pub fn invariants(&self) -> Invariants {
        Invariants::of(&self.mus())
    }
}

impl fmt::Display for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.values {
            None => f.write_str("symbolic"),
            Some(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// b2, b4, b6, b8 and the discriminant D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: MuPoly,
    pub b4: MuPoly,
    pub b6: MuPoly,
    pub b8: MuPoly,
    pub d: MuPoly,
}

impl Invariants {
    pub fn of(mus: &[MuPoly; 5]) -> Self {
        let [m1, m2, m3, m4, m6] = mus;
        let b2 = m1 * m1 + m2.scale_int(4);
        let b4 = m4.scale_int(2) + m1 * m3;
        let b6 = m3 * m3 + m6.scale_int(4);
        let b8 = m1 * m1 * m6 + (m2 * m6).scale_int(4) - m1 * m3 * m4 + m2 * m3 * m3 - m4 * m4;
        let d =
            -(&b2 * &b2 * &b8) - b4.pow(3).scale_int(8) - (&b6 * &b6).scale_int(27) + (&b2 * &b4 * &b6).scale_int(9);
        Invariants { b2, b4, b6, b8, d }
    }

    pub fn symbolic() -> Self {
        CurveParams::symbolic().invariants()
    }
}

/// A series exported by [`CurveKit`], with the weight offset of its coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveSeries {
    S,
    X,
    Y,
    Omega,
    Eta,
    TPrime,
    Q,
    UOfT,
}

impl CurveSeries {
    pub const ALL: [CurveSeries; 8] = [
        CurveSeries::S,
        CurveSeries::X,
        CurveSeries::Y,
        CurveSeries::Omega,
        CurveSeries::Eta,
        CurveSeries::TPrime,
        CurveSeries::Q,
        CurveSeries::UOfT,
    ];

    /// The coefficient of `t^n` has weight `n + weight_offset()`.
    pub fn weight_offset(self) -> i64 {
        match self {
            CurveSeries::S => -2,
            CurveSeries::X => 2,
            CurveSeries::Y => 3,
            CurveSeries::Omega => 0,
            CurveSeries::Eta => 2,
            CurveSeries::TPrime => -1,
            CurveSeries::Q => 0,
            CurveSeries::UOfT => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveSeries::S => "s",
            CurveSeries::X => "x",
            CurveSeries::Y => "y",
            CurveSeries::Omega => "omega1",
            CurveSeries::Eta => "eta1",
            CurveSeries::TPrime => "tprime",
            CurveSeries::Q => "q",
            CurveSeries::UOfT => "u",
        }
    }
}

/// Expansions of the curve data at infinity in `t`.
///
/// Every series is computed once from `s` and keeps the precision that the
/// arithmetic certifies; [`CurveKit::order`] is a lower bound for all of them.
#[derive(Clone, Debug)]
pub struct CurveKit {
    params: CurveParams,
    order: i64,
    s: LSeries,
    x: LSeries,
    y: LSeries,
    fy: LSeries,
    omega: LSeries,
    eta: LSeries,
    tprime: LSeries,
    q: LSeries,
    u_of_t: LSeries,
    t_of_u: LSeries,
    p: BSeries,
    invariants: Invariants,
}

/// Orders lost between `s` and the least precise exported series.
const CURVE_MARGIN: i64 = 5;

impl CurveKit {
    /// Builds every expansion with precision at least `order`.
    pub fn new(params: &CurveParams, order: i64) -> Result<Self> {
        if order < 2 {
            return Err(Error::Range(format!("order must be at least 2, got {order}")));
        }
        let top = order + CURVE_MARGIN;
        let s = expand_s(params, top);
        let x = s.inverse()?;
        let y = x.shift(-1).neg();
        let [m1, _, m3, _, _] = params.mus();
        let t = Var::T;
        let c3 = LSeries::constant(t, m3.clone(), x.prec());
        // y + mu1 x + mu3, which is -y(t')
        let y_conj = (&y + &x.scale(&m1)) + &c3;
        let fy = &y + &y_conj;
        let omega = x.derivative().try_div(&fy)?;
        let eta = x.try_mul(&omega)?.neg();
        let tprime = x.try_div(&y_conj)?;
        let q = x.shift(1).try_mul(&tprime)?.neg();
        let u_of_t = omega.integrate()?;
        let t_of_u = u_of_t.revert(Var::U)?;
        let p = expand_p(&s, &tprime)?;
        let kit = CurveKit {
            params: params.clone(),
            order,
            s,
            x,
            y,
            fy,
            omega,
            eta,
            tprime,
            q,
            u_of_t,
            t_of_u,
            p,
            invariants: params.invariants(),
        };
        for which in CurveSeries::ALL {
            let have = kit.series(which).prec();
            if have < order {
                return Err(Error::Precision { needed: order, have });
            }
        }
        Ok(kit)
    }

    pub fn params(&self) -> &CurveParams {
        &self.params
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn series(&self, which: CurveSeries) -> &LSeries {
        match which {
            CurveSeries::S => &self.s,
            CurveSeries::X => &self.x,
            CurveSeries::Y => &self.y,
            CurveSeries::Omega => &self.omega,
            CurveSeries::Eta => &self.eta,
            CurveSeries::TPrime => &self.tprime,
            CurveSeries::Q => &self.q,
            CurveSeries::UOfT => &self.u_of_t,
        }
    }

    /// `which`, truncated to the kit's order.
    pub fn expand(&self, which: CurveSeries) -> LSeries {
        self.series(which).truncate(self.order)
    }

    pub fn s(&self) -> &LSeries {
        &self.s
    }

    pub fn x(&self) -> &LSeries {
        &self.x
    }

    pub fn y(&self) -> &LSeries {
        &self.y
    }

    /// `f_y(x(t), y(t)) = 2y + mu1 x + mu3`.
    pub fn f_y(&self) -> &LSeries {
        &self.fy
    }

    /// `omega_1 / dt`.
    pub fn omega(&self) -> &LSeries {
        &self.omega
    }

    /// `eta_1 / dt`.
    pub fn eta(&self) -> &LSeries {
        &self.eta
    }

    pub fn tprime(&self) -> &LSeries {
        &self.tprime
    }

    pub fn q(&self) -> &LSeries {
        &self.q
    }

    /// `u(t) = integral of omega_1`.
    pub fn u_of_t(&self) -> &LSeries {
        &self.u_of_t
    }

    /// Reversion of `u(t)`, a series in `u`.
    pub fn t_of_u(&self) -> &LSeries {
        &self.t_of_u
    }

    /// `p(t1, t2) = (s(t1) - s(t2)) / ((t1 - t2)(t1 - t2'))`.
    pub fn p(&self) -> &BSeries {
        &self.p
    }

    pub fn invariants(&self) -> &Invariants {
        &self.invariants
    }

    pub fn pairing(&self) -> PairingPoly {
        PairingPoly::fundamental(&self.params)
    }

    /// `f(x(t), y(t)) = 0`.
    pub fn check_curve_equation(&self) -> Result<()> {
        let [m1, m2, m3, m4, m6] = self.params.mus();
        let (x, y) = (&self.x, &self.y);
        let t = Var::T;
        let lhs = y.try_mul(y)? + x.scale(&m1).try_mul(y)? + y.scale(&m3);
        let x2 = x.try_mul(x)?;
        let rhs = x2.try_mul(x)? + x2.scale(&m2) + x.scale(&m4) + LSeries::constant(t, m6, x.prec());
        zero_check(&(lhs - rhs), "f(x(t), y(t))")
    }

    /// `t y(t) + x(t) = 0`.
    pub fn check_parameter(&self) -> Result<()> {
        zero_check(&(self.y.shift(1) + &self.x), "t y + x")
    }

    /// `x(t') = x(t)`, `t'(t'(t)) = t` and `y(t) + y(t') = -(mu1 x + mu3)`.
    pub fn check_conjugation(&self) -> Result<()> {
        let tp = &self.tprime;
        let x_tp = self.x.compose(tp)?;
        x_tp.agrees_with(&self.x, "x(t')")?;
        let tpp = tp.compose(tp)?;
        tpp.agrees_with(&LSeries::identity(Var::T, tpp.prec()), "t'(t'(t))")?;
        let y_tp = self.y.compose(tp)?;
        let sum = &self.y + &y_tp;
        let [m1, _, m3, _, _] = self.params.mus();
        let want = (self.x.scale(&m1) + LSeries::constant(Var::T, m3, self.x.prec())).neg();
        sum.agrees_with(&want, "y(t) + y(t')")?;
        // f_y = y(t) - y(t')
        (&self.y - &y_tp).agrees_with(&self.fy, "y(t) - y(t')")
    }

    /// `(t t')^3 f_y / (t - t')` lies in `t^2 + t^3 Z[mu][[t]]`.
    pub fn check_fy_shape(&self) -> Result<()> {
        let t = Var::T;
        let ttp = self.tprime.shift(1);
        let cube = ttp.pow(3)?;
        let diff = LSeries::identity(t, self.tprime.prec()) - &self.tprime;
        let g = cube.try_mul(&self.fy)?.try_div(&diff)?;
        for (n, c) in g.iter() {
            let ok = match n {
                n if n < 2 => c.is_zero(),
                2 => c.is_one(),
                _ => c.integrality_class() == IntegralityClass::ZMu,
            };
            if !ok {
                return Err(Error::Identity(format!("(tt')^3 f_y/(t-t') has coefficient {c} at t^{n}")));
            }
        }
        Ok(())
    }

    /// Coefficients `c_k` with `1/x = sum_k c_k (t t')^k`, solved degree by
    /// degree; errors if the remainder does not vanish or a coefficient is not in Z[mu].
    pub fn inverse_x_in_ttprime(&self) -> Result<Vec<MuPoly>> {
        let w = self.tprime.shift(1);
        let mut rest = self.s.clone();
        let mut coeffs = vec![MuPoly::zero()];
        let mut wk = LSeries::one(Var::T, w.prec());
        let prec = rest.prec().min(w.prec());
        let mut k = 1;
        while 2 * k <= prec {
            wk = wk.try_mul(&w)?.truncate(prec);
            let lead = wk.coeff(2 * k).constant_value().expect("leading coefficient of (tt')^k is +-1");
            let c = rest.coeff(2 * k).scale(&lead.recip());
            rest = rest.try_sub(&wk.scale(&c))?;
            if let Some(n) = rest.iter().take_while(|(n, _)| *n <= 2 * k).find(|(_, c)| !c.is_zero()).map(|(n, _)| n) {
                return Err(Error::Identity(format!("1/x is not a series in tt': remainder at t^{n}")));
            }
            if c.integrality_class() != IntegralityClass::ZMu {
                return Err(Error::Integrality(format!("coefficient of (tt')^{k} is {c}")));
            }
            coeffs.push(c);
            k += 1;
        }
        if let Some(n) = rest.iter().find(|(n, c)| *n <= prec && !c.is_zero()).map(|(n, _)| n) {
            return Err(Error::Identity(format!("1/x is not a series in tt': remainder at t^{n}")));
        }
        Ok(coeffs)
    }

    /// `(t2' - t1)(t2 - t1) p(t1,t2) = -(t1' - t2)(t1 - t2) p(t2,t1)`.
    pub fn check_p_antisymmetry(&self) -> Result<()> {
        let vars = (Var::T1, Var::T2);
        let prec = self.p.prec();
        let t1 = BSeries::monomial(vars, MuPoly::one(), 1, 0, prec);
        let t2 = BSeries::monomial(vars, MuPoly::one(), 0, 1, prec);
        let tp1 = BSeries::lift_first(vars, &self.tprime.clone().with_var(Var::T1))?;
        let tp2 = BSeries::lift_second(vars, &self.tprime.clone().with_var(Var::T2))?;
        let lhs = (&tp2 - &t1) * (&t2 - &t1) * &self.p;
        let rhs = ((&tp1 - &t2) * (&t1 - &t2) * self.p.swap()).neg();
        lhs.agrees_with(&rhs, "p antisymmetry")
    }

    /// Weight homogeneity of every exported series and of `p`.
    pub fn check_weights(&self) -> Result<()> {
        if !self.params.is_symbolic() {
            return Ok(());
        }
        for which in CurveSeries::ALL {
            self.series(which).check_weights(which.weight_offset())?;
        }
        self.fy.check_weights(3)?;
        self.t_of_u.check_weights(-1)?;
        self.p.check_weights(0)
    }

    /// Coefficients of `t'` that involve mu2, mu4 or mu6, or a non-integer,
    /// as (exponent, offending monomial). Empty means `t'` is in `t Z[mu1, mu3][[t]]`
    /// to the kit's precision.
    pub fn tprime_subring_violations(&self) -> Vec<(i64, Monomial)> {
        let mut out = Vec::new();
        for (n, c) in self.tprime.iter() {
            for (m, r) in c.terms() {
                let e = m.exponents();
                if e[1] != 0 || e[3] != 0 || e[4] != 0 || !r.is_integer() {
                    out.push((n, m));
                }
            }
        }
        out
    }

    /// Every exported series has coefficients in Z[mu].
    pub fn check_integrality(&self) -> Result<()> {
        require_integral(&self.params)?;
        for which in CurveSeries::ALL {
            if which == CurveSeries::UOfT {
                continue;
            }
            for (n, c) in self.series(which).iter() {
                if c.integrality_class() != IntegralityClass::ZMu {
                    return Err(Error::Integrality(format!("{} at t^{n}: {c}", which.name())));
                }
            }
        }
        for (i, j, c) in self.p.iter() {
            if c.integrality_class() != IntegralityClass::ZMu {
                return Err(Error::Integrality(format!("p at t1^{i} t2^{j}: {c}")));
            }
        }
        Ok(())
    }
}

pub(crate) fn require_integral(params: &CurveParams) -> Result<()> {
    if params.is_integral() {
        Ok(())
    } else {
        Err(Error::Range(format!("integrality needs integer mu, got {params}")))
    }
}

fn zero_check(s: &LSeries, what: &str) -> Result<()> {
    match s.iter().find(|(_, c)| !c.is_zero()) {
        None => Ok(()),
        Some((n, c)) => Err(Error::Identity(format!("{what}: coefficient of t^{n} is {c}"))),
    }
}

/// Fixed-point iteration of `s = (1 + mu2 s + mu4 s^2 + mu6 s^3) t^2 + (mu1 s + mu3 s^2) t`
/// from `s = 0`; every pass fixes at least one more coefficient.
pub fn expand_s(params: &CurveParams, order: i64) -> LSeries {
    let [m1, m2, m3, m4, m6] = params.mus();
    let t = Var::T;
    let one = LSeries::one(t, order);
    let mut s = LSeries::zero(t, order);
    for _ in 0..=order {
        let s2 = s.try_mul(&s).expect("same variable").truncate(order);
        let s3 = s2.try_mul(&s).expect("same variable").truncate(order);
        let quad = &one + &s.scale(&m2) + s2.scale(&m4) + s3.scale(&m6);
        let lin = s.scale(&m1) + s2.scale(&m3);
        let next = (quad.shift(2) + lin.shift(1)).truncate(order);
        if next == s {
            break;
        }
        s = next;
    }
    s
}

fn expand_p(s: &LSeries, tprime: &LSeries) -> Result<BSeries> {
    let vars = (Var::T1, Var::T2);
    let s1 = BSeries::lift_first(vars, &s.clone().with_var(Var::T1))?;
    let s2 = BSeries::lift_second(vars, &s.clone().with_var(Var::T2))?;
    let tp2 = tprime.clone().with_var(Var::T2);
    (s1 - s2).diagonal_divide()?.divide_by_first_minus(&tp2)
}
