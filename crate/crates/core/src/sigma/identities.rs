use std::fmt;

use super::SigmaKit;
use crate::error::{Error, Result};
use crate::ring::{int, MuPoly};
use crate::series::{BSeries, LSeries, Var};

/// Outcome of one identity check.
#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub result: std::result::Result<(), String>,
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub outcomes: Vec<IdentityOutcome>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.result.is_ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityOutcome> {
        self.outcomes.iter().filter(|o| o.result.is_err())
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.result {
                Ok(()) => writeln!(f, "PASS {}", o.name)?,
                Err(e) => writeln!(f, "FAIL {}: {e}", o.name)?,
            }
        }
        Ok(())
    }
}

/// Classical identities checked coefficient by coefficient.
pub struct IdentitySuite<'a> {
    kit: &'a SigmaKit,
}

const UV: (Var, Var) = (Var::U, Var::V);

impl<'a> IdentitySuite<'a> {
    pub(super) fn new(kit: &'a SigmaKit) -> Self {
        IdentitySuite { kit }
    }

    /// `sigma(u+v) sigma(u-v) = sigma(u)^2 (wp sigma^2)(v) - (wp sigma^2)(u) sigma(v)^2`.
    pub fn frobenius_stickelberger(&self) -> Result<()> {
        let sigma = self.kit.sigma();
        let plus = BSeries::compose_linear(UV, sigma, 1, 1)?;
        let minus = BSeries::compose_linear(UV, sigma, 1, -1)?;
        let lhs = plus * minus;
        let sq = self.kit.sigma_sq();
        let wsq = self.kit.wp().try_mul(sq)?;
        let rhs = BSeries::outer(UV, sq, &wsq.clone().with_var(Var::V))?
            - BSeries::outer(UV, &wsq, &sq.clone().with_var(Var::V))?;
        lhs.agrees_with(&rhs, "Frobenius-Stickelberger")
    }

    /// `sigma(2u) / sigma(u)^4 = -wp'(u)`.
    pub fn duplication(&self) -> Result<()> {
        let sigma = self.kit.sigma();
        let lhs = sigma.scale_var(&int(2)).try_div(&sigma.pow(4)?)?;
        lhs.agrees_with(&self.kit.wp_prime().neg(), "duplication")
    }

    /// `wp(u) = x(t(u))` and `wp'(u) = f_y(t(u))`.
    pub fn inversion(&self) -> Result<()> {
        let curve = self.kit.curve();
        let x = curve.x().compose(curve.t_of_u())?;
        self.kit.wp().agrees_with(&x, "wp = x(t(u))")?;
        let fy = curve.f_y().compose(curve.t_of_u())?;
        self.kit.wp_prime().agrees_with(&fy, "wp' = f_y(t(u))")
    }

    /// `(wp(u), y(u))` lies on the curve and
    /// `wp'^2 = 4 wp^3 + b2 wp^2 + 2 b4 wp + b6`.
    pub fn curve_relation(&self) -> Result<()> {
        let [m1, m2, m3, m4, m6] = self.kit.params().mus();
        let wp = self.kit.wp();
        let y = self.kit.y_of_u();
        let prec = wp.prec();
        let c = |m: &MuPoly| LSeries::constant(Var::U, m.clone(), prec);
        let wp2 = wp.try_mul(wp)?;
        let wp3 = wp2.try_mul(wp)?;
        let lhs = y.try_mul(&y)? + (wp.scale(&m1) + c(&m3)).try_mul(&y)?;
        let rhs = &wp3 + wp2.scale(&m2) + wp.scale(&m4) + c(&m6);
        lhs.agrees_with(&rhs, "curve equation in wp, y")?;
        let inv = self.kit.curve().invariants().clone();
        let wpp = self.kit.wp_prime();
        let lhs = wpp.try_mul(wpp)?;
        let rhs = wp3.scale_int(4) + wp2.scale(&inv.b2) + wp.scale(&inv.b4.scale_int(2)) + c(&inv.b6);
        lhs.agrees_with(&rhs, "Weierstrass differential equation")
    }

    /// sigma(u - v)^2 built from the two-variable product formula: restriction
    /// to `v = 0`, invariance under joint translation and symmetry.
    pub fn two_variable(&self) -> Result<()> {
        let sq2 = self.kit.sigma_sq_two_var()?;
        let restricted = sq2.restrict_second_zero();
        restricted.agrees_with(self.kit.sigma_sq(), "sigma(u - v)^2 at v = 0")?;
        let flow = sq2.derivative_first() + sq2.derivative_second();
        if let Some((i, j, c)) = flow.iter().find(|(_, _, c)| !c.is_zero()) {
            return Err(Error::Identity(format!("(d/du + d/dv) sigma(u - v)^2 has {c} at u^{i} v^{j}")));
        }
        sq2.agrees_with(&sq2.swap(), "sigma(u - v)^2 symmetry")
    }

    pub fn reflection(&self) -> Result<()> {
        self.kit.check_reflection()
    }

    pub fn weights(&self) -> Result<()> {
        self.kit.check_weights()
    }

    pub fn integrality(&self) -> Result<()> {
        self.kit.check_integrality().map(|_| ())
    }

    /// Runs every check; the two-variable one is included when `two_variable` is set.
    pub fn run(&self, two_variable: bool) -> IdentityReport {
        let mut checks: Vec<(&'static str, Box<dyn Fn() -> Result<()> + '_>)> = vec![
            ("Frobenius-Stickelberger", Box::new(|| self.frobenius_stickelberger())),
            ("duplication", Box::new(|| self.duplication())),
            ("inversion", Box::new(|| self.inversion())),
            ("curve relation", Box::new(|| self.curve_relation())),
            ("reflection", Box::new(|| self.reflection())),
            ("weights", Box::new(|| self.weights())),
            ("integrality", Box::new(|| self.integrality())),
        ];
        if two_variable {
            checks.push(("two-variable product", Box::new(|| self.two_variable())));
        }
        let outcomes = checks
            .into_iter()
            .map(|(name, f)| IdentityOutcome { name, result: f().map_err(|e| e.to_string()) })
            .collect();
        IdentityReport { outcomes }
    }
}
