//! sigma(u) from the product formula
//! `sigma(u - v)^2 = (t2 - t1)^2 q(t1) q(t2) p(t1,t2) p(t2,t1) r(t1,t2)`,
//! and the functions derived from it.

mod identities;

pub use identities::{IdentityReport, IdentitySuite};

use crate::curve::{CurveKit, CurveParams};
use crate::error::{Error, Result};
use crate::ring::{IntegralityClass, MuPoly};
use crate::series::{BSeries, HurwitzReport, LSeries, Var};

const VARS: (Var, Var) = (Var::T1, Var::T2);

/// Orders lost between the curve kit and sigma in `u`, plus what wp needs.
const SIGMA_MARGIN: i64 = 1;

/// The sigma pipeline for one curve.
#[derive(Clone, Debug)]
pub struct SigmaKit {
    order: i64,
    curve: CurveKit,
    xi_reg: BSeries,
    double_integral: BSeries,
    diag_integral: LSeries,
    sigma_sq_t: LSeries,
    sigma_sq: LSeries,
    sigma: LSeries,
    wp: LSeries,
    wp_prime: LSeries,
}

impl SigmaKit {
    /// Runs the pipeline so that sigma(u) and sigma(u)^2 are certified through
    /// `u^order`, and wp, wp' through `u^(order - 3)` and `u^(order - 4)`.
    pub fn new(params: &CurveParams, order: i64) -> Result<Self> {
        if order < 1 {
            return Err(Error::Range(format!("order must be at least 1, got {order}")));
        }
        let curve = CurveKit::new(params, (order + SIGMA_MARGIN).max(2))?;
        Self::from_curve(curve, order)
    }

    /// Runs the pipeline on an existing curve kit.
    pub fn from_curve(curve: CurveKit, order: i64) -> Result<Self> {
        let xi_reg = xi_regular(&curve)?;
        let double_integral = xi_reg.integrate_first().integrate_second();
        let tprime = curve.tprime();
        let diag_integral = double_integral.compose_diagonal(None, Some(tprime), Var::T)?;
        let r_t = diag_integral.exp()?;
        let p = curve.p();
        let t = Var::T;
        let p_t0 = p.restrict_second_zero().with_var(t);
        let p_0t = p.restrict_first_zero().with_var(t);
        let sigma_sq_t = (curve.q() * &p_t0 * &p_0t * &r_t).shift(2);
        let sigma_sq = sigma_sq_t.compose(curve.t_of_u())?;
        let sigma = sigma_sq.shift(-2).sqrt_hurwitz()?.shift(1);
        let g = sigma.shift(-1);
        let second = g.log()?.derivative().derivative();
        let wp = LSeries::monomial(Var::U, MuPoly::one(), -2, second.prec()) - second;
        let wp_prime = wp.derivative();
        let kit = SigmaKit {
            order,
            curve,
            xi_reg,
            double_integral,
            diag_integral,
            sigma_sq_t,
            sigma_sq,
            sigma,
            wp,
            wp_prime,
        };
        for (what, s) in [("sigma", &kit.sigma), ("sigma^2", &kit.sigma_sq)] {
            if s.prec() < order {
                return Err(Error::Precision { needed: order, have: s.prec() }).map_err(|e| annotate(e, what));
            }
        }
        Ok(kit)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn curve(&self) -> &CurveKit {
        &self.curve
    }

    pub fn params(&self) -> &CurveParams {
        self.curve.params()
    }

    /// `xi(t1,t2) / (dt1 dt2) - 1/(t1 - t2)^2`.
    pub fn xi_regular(&self) -> &BSeries {
        &self.xi_reg
    }

    /// `A(T1,T2)`: the double antiderivative of the regular part, zero on both axes.
    pub fn double_integral(&self) -> &BSeries {
        &self.double_integral
    }

    /// `r(t1, t2)` as a series in `(t1, t2)`.
    pub fn r_series(&self) -> Result<BSeries> {
        let a = &self.double_integral;
        let tp2 = self.curve.tprime().clone().with_var(Var::T2);
        let d = self.diag_integral.clone();
        let d1 = BSeries::lift_first(VARS, &d.clone().with_var(Var::T1))?;
        let d2 = BSeries::lift_second(VARS, &d.with_var(Var::T2))?;
        // A(t1, t2') and A(t2, t1')
        let mixed = a.substitute(None, Some(&tp2))?;
        let exponent = d1 + d2 - &mixed - mixed.swap();
        exponent.exp()
    }

    /// `r(t, 0) = exp(A(t, t'(t)))`.
    pub fn r_restricted(&self) -> Result<LSeries> {
        self.diag_integral.exp()
    }

    /// sigma(u)^2 as a series in `t`.
    pub fn sigma_sq_in_t(&self) -> &LSeries {
        &self.sigma_sq_t
    }

    /// sigma(u) as a series in `t`.
    pub fn sigma_in_t(&self) -> Result<LSeries> {
        Ok(self.sigma_sq_t.shift(-2).sqrt_hurwitz()?.shift(1))
    }

    pub fn sigma_sq(&self) -> &LSeries {
        &self.sigma_sq
    }

    pub fn sigma(&self) -> &LSeries {
        &self.sigma
    }

    pub fn wp(&self) -> &LSeries {
        &self.wp
    }

    pub fn wp_prime(&self) -> &LSeries {
        &self.wp_prime
    }

    /// `y(u) = (wp' - mu1 wp - mu3) / 2`.
    pub fn y_of_u(&self) -> LSeries {
        let [m1, _, m3, _, _] = self.params().mus();
        let c3 = LSeries::constant(Var::U, m3, self.wp.prec());
        (&self.wp_prime - &self.wp.scale(&m1) - c3).scale_rat(&crate::ring::rat(1, 2))
    }

    /// sigma(u - v)^2 as a series in `(u, v)`.
    pub fn sigma_sq_two_var(&self) -> Result<BSeries> {
        let curve = &self.curve;
        let p = curve.p();
        let q1 = curve.q().clone().with_var(Var::T1);
        let q2 = curve.q().clone().with_var(Var::T2);
        let qq = BSeries::outer(VARS, &q1, &q2)?;
        let prec = p.prec();
        let diff =
            BSeries::monomial(VARS, MuPoly::one(), 0, 1, prec) - BSeries::monomial(VARS, MuPoly::one(), 1, 0, prec);
        let r = self.r_series()?;
        let in_t = &diff * &diff * qq * p * p.swap() * r;
        let tu = curve.t_of_u().clone();
        let tv = curve.t_of_u().clone().with_var(Var::V);
        in_t.substitute(Some(&tu), Some(&tv))
    }

    /// The series of the third-kind correction
    /// `((y1 + y2 + mu1 x2 + mu3)/(x2 - x1) - 1/t1 + 1/t2) omega(t1) + 1/(t1 - t2)`.
    pub fn third_kind_correction(&self) -> Result<BSeries> {
        third_kind_correction(&self.curve)
    }

    /// Hurwitz classification of sigma(u)^2 and sigma(u).
    pub fn integrality(&self) -> Result<(HurwitzReport, HurwitzReport)> {
        Ok((HurwitzReport::of(&self.sigma_sq)?, HurwitzReport::of(&self.sigma)?))
    }

    /// The integrality statement: sigma^2 is Hurwitz integral over Z[mu] and
    /// sigma over Z[mu1/2, mu2, mu3, mu4, mu6]; xi_reg has coefficients in Z[mu].
    /// For integer numeric mu the second reads: denominators of sigma's
    /// Hurwitz coefficients are powers of 2. A violation is an error.
    pub fn check_integrality(&self) -> Result<(HurwitzReport, HurwitzReport)> {
        crate::curve::require_integral(self.params())?;
        let (sq, s) = self.integrality()?;
        if sq.overall != IntegralityClass::ZMu {
            return Err(Error::Integrality(format!("sigma^2: {sq}")));
        }
        if self.params().is_symbolic() {
            if s.overall < IntegralityClass::ZHalfMu1 {
                return Err(Error::Integrality(format!("sigma: {s}")));
            }
        } else {
            for (n, c) in self.sigma.hurwitz_coeffs()?.iter().enumerate() {
                let d = c.denominator_lcm();
                let odd_part = &d >> d.trailing_zeros().unwrap_or(0);
                if odd_part != num_bigint::BigInt::from(1) {
                    return Err(Error::Integrality(format!("sigma: Hurwitz coefficient {n} is {c}")));
                }
            }
        }
        for (i, j, c) in self.xi_reg.iter() {
            if c.integrality_class() != IntegralityClass::ZMu {
                return Err(Error::Integrality(format!("xi_reg at t1^{i} t2^{j}: {c}")));
            }
        }
        Ok((sq, s))
    }

    /// Weight homogeneity of every pipeline stage. Symbolic curves only.
    pub fn check_weights(&self) -> Result<()> {
        if !self.params().is_symbolic() {
            return Ok(());
        }
        self.curve.check_weights()?;
        self.xi_reg.check_weights(2)?;
        self.double_integral.check_weights(0)?;
        self.diag_integral.check_weights(0)?;
        self.sigma_sq_t.check_weights(-2)?;
        self.sigma_sq.check_weights(-2)?;
        self.sigma.check_weights(-1)?;
        self.wp.check_weights(2)?;
        self.wp_prime.check_weights(3)
    }

    /// sigma(-u) = -sigma(u) after mu1 -> -mu1, mu3 -> -mu3.
    pub fn check_reflection(&self) -> Result<()> {
        let flipped = self.sigma.map_coeffs(MuPoly::flip_mu1_mu3).scale_var(&crate::ring::int(-1)).neg();
        flipped.agrees_with(&self.sigma, "sigma reflection")
    }

    pub fn identities(&self) -> IdentitySuite<'_> {
        IdentitySuite::new(self)
    }
}

fn annotate(e: Error, what: &str) -> Error {
    match e {
        Error::Precision { needed, have } => {
            Error::Identity(format!("{what}: precision {have} below requested {needed}"))
        }
        other => other,
    }
}

/// Expansion pieces `x^a y^b s^2` in one variable are combined into
/// `F s1^2 s2^2`; the pole `(x1 - x2)^2` then cancels against
/// `(s1 - s2)^2 = (t1 - t2)^2 (t1 - t2')^2 p^2`.
pub fn xi_cofactor(curve: &CurveKit) -> Result<BSeries> {
    let f = curve.pairing().times_s_squared(curve.s())?;
    let tp2 = curve.tprime().clone().with_var(Var::T2);
    let g = f.divide_by_first_minus(&tp2)?.divide_by_first_minus(&tp2)?;
    let omega =
        BSeries::outer(VARS, &curve.omega().clone().with_var(Var::T1), &curve.omega().clone().with_var(Var::T2))?;
    let p_inv = curve.p().inverse()?;
    Ok(g * omega * &p_inv * &p_inv)
}

/// `xi_reg = (B - 1) / (t1 - t2)^2`, where `B(t, t) = 1`.
pub fn xi_regular(curve: &CurveKit) -> Result<BSeries> {
    let b = xi_cofactor(curve)?;
    let diag = b.diagonal(Var::T);
    if let Some((n, c)) = diag.iter().find(|&(n, c)| if n == 0 { !c.is_one() } else { !c.is_zero() }) {
        return Err(Error::Identity(format!("cofactor on the diagonal has coefficient {c} at t^{n}, expected 1")));
    }
    let one = BSeries::one(VARS, b.prec());
    (b - one).diagonal_divide()?.diagonal_divide()
}

/// See [`SigmaKit::third_kind_correction`].
pub fn third_kind_correction(curve: &CurveKit) -> Result<BSeries> {
    let [m1, _, m3, _, _] = curve.params().mus();
    let s1 = BSeries::lift_first(VARS, &curve.s().clone().with_var(Var::T1))?;
    let s2 = BSeries::lift_second(VARS, &curve.s().clone().with_var(Var::T2))?;
    let prec = s1.prec();
    let t1 = BSeries::monomial(VARS, MuPoly::one(), 1, 0, prec);
    let t2 = BSeries::monomial(VARS, MuPoly::one(), 0, 1, prec);
    let t1t2 = BSeries::monomial(VARS, MuPoly::one(), 1, 1, prec);
    let tp2 = curve.tprime().clone().with_var(Var::T2);
    let tp2_lift = BSeries::lift_second(VARS, &tp2)?;
    let p = curve.p();
    let omega1 = BSeries::lift_first(VARS, &curve.omega().clone().with_var(Var::T1))?;
    // (y1 + y2 + mu1 x2 + mu3) t1 t2 s1 s2
    let k = (&t2 * &s2).neg() - &t1 * &s1 + (&t1t2 * &s1).scale(&m1) + (&t1t2 * &s1 * &s2).scale(&m3);
    let d12 = &t1 - &t2;
    let d1p = &t1 - &tp2_lift;
    let num = (k + &d12 * &d12 * &d1p * p) * omega1 + &t1t2 * &d1p * p;
    let quotient = num.div_first()?.div_second()?.diagonal_divide()?.divide_by_first_minus(&tp2)?;
    let out = quotient * p.inverse()?;
    if !curve.params().is_integral() {
        return Ok(out);
    }
    for (i, j, c) in out.iter() {
        if c.integrality_class() != IntegralityClass::ZMu {
            return Err(Error::Integrality(format!("correction series at t1^{i} t2^{j}: {c}")));
        }
    }
    Ok(out)
}
