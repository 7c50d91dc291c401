use std::fmt;

use num_traits::Zero;

use super::{LSeries, Var};
use crate::error::{Error, Result};
use crate::ring::{int, rat, Accumulator, MuPoly, Rat};

/// Truncated power series in two variables, certified through total degree `prec`.
///
/// `coeffs[d][i]` is the coefficient of `a^i b^(d-i)` where `(a, b) = vars`.
#[derive(Clone, PartialEq, Eq)]
pub struct BSeries {
    vars: (Var, Var),
    prec: i64,
    coeffs: Vec<Vec<MuPoly>>,
}

/// Marker for "no substitution" in [`BSeries::substitute`]: the variable is kept.
const EXACT: i64 = i64::MAX / 4;

impl BSeries {
    pub fn from_fn(vars: (Var, Var), prec: i64, mut f: impl FnMut(usize, usize) -> MuPoly) -> Self {
        let coeffs = (0..=prec.max(-1)).map(|d| (0..=d as usize).map(|i| f(i, d as usize - i)).collect()).collect();
        BSeries { vars, prec, coeffs }
    }

    pub fn zero(vars: (Var, Var), prec: i64) -> Self {
        Self::from_fn(vars, prec, |_, _| MuPoly::zero())
    }

    pub fn constant(vars: (Var, Var), c: MuPoly, prec: i64) -> Self {
        let mut out = Self::zero(vars, prec);
        if prec >= 0 {
            out.coeffs[0][0] = c;
        }
        out
    }

    pub fn one(vars: (Var, Var), prec: i64) -> Self {
        Self::constant(vars, MuPoly::one(), prec)
    }

    /// `c a^i b^j`.
    pub fn monomial(vars: (Var, Var), c: MuPoly, i: usize, j: usize, prec: i64) -> Self {
        let mut out = Self::zero(vars, prec);
        if (i + j) as i64 <= prec {
            out.coeffs[i + j][i] = c;
        }
        out
    }

    pub fn vars(&self) -> (Var, Var) {
        self.vars
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Coefficient of `a^i b^j`. Panics beyond the certified total degree.
    pub fn coeff(&self, i: usize, j: usize) -> &MuPoly {
        assert!((i + j) as i64 <= self.prec, "coefficient ({i},{j}) requested beyond precision {}", self.prec);
        &self.coeffs[i + j][i]
    }

    /// Homogeneous component of total degree `d`, indexed by the first exponent.
    pub fn degree_part(&self, d: usize) -> &[MuPoly] {
        &self.coeffs[d]
    }

    /// Certified `(i, j, coefficient)` triples, including zeros.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &MuPoly)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(d, row)| row.iter().enumerate().map(move |(i, c)| (i, d - i, c)))
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|row| row.iter().any(|c| !c.is_zero())).map(|d| d as i64)
    }

    fn val_or_beyond(&self) -> i64 {
        self.valuation().unwrap_or(self.prec + 1)
    }

    pub fn with_vars(mut self, vars: (Var, Var)) -> Self {
        self.vars = vars;
        self
    }

    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.prec {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeffs.truncate((n + 1).max(0) as usize);
        out.prec = n;
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&MuPoly) -> MuPoly) -> Self {
        BSeries {
            vars: self.vars,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    pub fn scale(&self, c: &MuPoly) -> Self {
        match c.constant_value() {
            Some(r) => self.scale_rat(&r),
            None => self.map_coeffs(|x| x * c),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map_coeffs(|x| x.scale(r))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| -x)
    }

    pub fn map_evaluate(&self, values: &[Rat; 5]) -> Self {
        self.map_coeffs(|c| MuPoly::constant(c.evaluate(values)))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars.0 != other.vars.0 {
            return Err(Error::VarMismatch(self.vars.0, other.vars.0));
        }
        if self.vars.1 != other.vars.1 {
            return Err(Error::VarMismatch(self.vars.1, other.vars.1));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let prec = self.prec.min(other.prec);
        Ok(Self::from_fn(self.vars, prec, |i, j| self.coeff(i, j) + other.coeff(i, j)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let prec = self.prec.min(other.prec);
        Ok(Self::from_fn(self.vars, prec, |i, j| self.coeff(i, j) - other.coeff(i, j)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let va = self.val_or_beyond();
        let vb = other.val_or_beyond();
        let prec = (self.prec + vb).min(other.prec + va);
        let mut coeffs = Vec::with_capacity((prec + 1).max(0) as usize);
        for d in 0..=prec {
            let mut accs: Vec<Accumulator> = (0..=d).map(|_| Accumulator::new()).collect();
            for e in va..=(d - vb) {
                hmul_into(&mut accs, &self.coeffs[e as usize], &other.coeffs[(d - e) as usize], 1);
            }
            coeffs.push(accs.into_iter().map(Accumulator::finish).collect());
        }
        Ok(BSeries { vars: self.vars, prec, coeffs })
    }

    /// `a(x) b(y)` as a series in `vars`. Both factors must be power series.
    pub fn outer(vars: (Var, Var), a: &LSeries, b: &LSeries) -> Result<Self> {
        if a.valuation().unwrap_or(0) < 0 || b.valuation().unwrap_or(0) < 0 {
            return Err(Error::PrincipalPart);
        }
        let va = a.valuation().unwrap_or(a.prec() + 1);
        let vb = b.valuation().unwrap_or(b.prec() + 1);
        let prec = (a.prec() + vb).min(b.prec() + va);
        Ok(Self::from_fn(vars, prec, |i, j| {
            // beyond a factor's precision the other factor is below its valuation
            if i as i64 > a.prec() || j as i64 > b.prec() {
                return MuPoly::zero();
            }
            let x = a.coeff(i as i64);
            if x.is_zero() {
                return MuPoly::zero();
            }
            x * b.coeff(j as i64)
        }))
    }

    /// `a(x)` viewed as a series in `(x, y)`.
    pub fn lift_first(vars: (Var, Var), a: &LSeries) -> Result<Self> {
        if a.valuation().unwrap_or(0) < 0 {
            return Err(Error::PrincipalPart);
        }
        Ok(Self::from_fn(vars, a.prec(), |i, j| if j == 0 { a.coeff(i as i64).clone() } else { MuPoly::zero() }))
    }

    /// `b(y)` viewed as a series in `(x, y)`.
    pub fn lift_second(vars: (Var, Var), b: &LSeries) -> Result<Self> {
        Ok(Self::lift_first((vars.1, vars.0), b)?.swap().with_vars(vars))
    }

    /// `f(c1 x + c2 y)` for a power series `f`.
    pub fn compose_linear(vars: (Var, Var), f: &LSeries, c1: i64, c2: i64) -> Result<Self> {
        if f.valuation().unwrap_or(0) < 0 {
            return Err(Error::PrincipalPart);
        }
        let mut out = Self::zero(vars, f.prec());
        for d in 0..=f.prec().max(-1) {
            let c = f.coeff(d);
            if c.is_zero() {
                continue;
            }
            let d = d as usize;
            let mut binom = num_bigint::BigInt::from(1);
            for i in 0..=d {
                let factor = Rat::from(binom.clone()) * num_traits::pow(int(c1), i) * num_traits::pow(int(c2), d - i);
                out.coeffs[d][i] += &c.scale(&factor);
                binom = binom * (d - i) / (i + 1);
            }
        }
        Ok(out)
    }

    /// `f(x, y) -> f(y, x)`, keeping the variable names in place.
    pub fn swap(&self) -> Self {
        BSeries {
            vars: self.vars,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|row| row.iter().rev().cloned().collect()).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().eq(row.iter().rev()))
    }

    /// `f(x, 0)` as a series in the first variable.
    pub fn restrict_second_zero(&self) -> LSeries {
        LSeries::from_fn(self.vars.0, 0, self.prec, |i| self.coeff(i as usize, 0).clone())
    }

    /// `f(0, y)` as a series in the second variable.
    pub fn restrict_first_zero(&self) -> LSeries {
        LSeries::from_fn(self.vars.1, 0, self.prec, |j| self.coeff(0, j as usize).clone())
    }

    /// `f(t, t)` as a series in `var`.
    pub fn diagonal(&self, var: Var) -> LSeries {
        LSeries::from_fn(var, 0, self.prec, |d| {
            let mut acc = Accumulator::new();
            for c in &self.coeffs[d as usize] {
                acc.add(c);
            }
            acc.finish()
        })
    }

    pub fn derivative_first(&self) -> Self {
        Self::from_fn(self.vars, self.prec - 1, |i, j| self.coeff(i + 1, j).scale_int(i as i64 + 1))
    }

    pub fn derivative_second(&self) -> Self {
        self.swap().derivative_first().swap()
    }

    /// Antiderivative in the first variable, vanishing at `x = 0`.
    pub fn integrate_first(&self) -> Self {
        Self::from_fn(self.vars, self.prec + 1, |i, j| {
            if i == 0 {
                MuPoly::zero()
            } else {
                self.coeff(i - 1, j).scale(&rat(1, i as i64))
            }
        })
    }

    /// Antiderivative in the second variable, vanishing at `y = 0`.
    pub fn integrate_second(&self) -> Self {
        self.swap().integrate_first().swap()
    }

    /// Exact division by the first variable.
    pub fn div_first(&self) -> Result<Self> {
        for j in 0..count(self.prec) {
            if !self.coeff(0, j).is_zero() {
                return Err(Error::NotDivisible(format!("coefficient of {}^{j} is nonzero", self.vars.1)));
            }
        }
        Ok(Self::from_fn(self.vars, self.prec - 1, |i, j| self.coeff(i + 1, j).clone()))
    }

    /// Exact division by the second variable.
    pub fn div_second(&self) -> Result<Self> {
        Ok(self.swap().div_first()?.swap())
    }

    /// Exact division by `x - phi(y)`, where `phi` is a series in the second
    /// variable with valuation 1 and unit linear coefficient.
    ///
    /// Writing `h = sum h_i(y) x^i` and `q = sum q_i(y) x^i`, the quotient
    /// satisfies `q_0 = -h_0 / phi` and `q_i = (q_(i-1) - h_i) / phi`; each
    /// division is checked to leave no principal part. The quotient is certified
    /// through total degree `min(prec, phi.prec) - 1`.
    pub fn divide_by_first_minus(&self, phi: &LSeries) -> Result<Self> {
        if phi.var() != self.vars.1 {
            return Err(Error::VarMismatch(phi.var(), self.vars.1));
        }
        if phi.valuation() != Some(1) {
            return Err(Error::NotDivisible(format!("divisor has valuation {:?}", phi.valuation())));
        }
        // the quotient is certified through degree min(prec, phi.prec) - 1
        let p = self.prec.min(phi.prec());
        let phi_inv = phi.inverse()?;
        let y = self.vars.1;
        let mut rows: Vec<LSeries> = Vec::new();
        for i in 0..p.max(0) {
            let h_i = LSeries::from_fn(y, 0, p - i, |j| self.coeff(i as usize, j as usize).clone());
            let num = if i == 0 { h_i.neg() } else { rows[i as usize - 1].try_sub(&h_i)? };
            let q = num.try_mul(&phi_inv)?.truncate(p - 1 - i);
            if !q.coeff(-1).is_zero() {
                return Err(Error::NotDivisible(format!("residual {}^-1 term {} in row {i}", y, q.coeff(-1))));
            }
            rows.push(q);
        }
        Ok(Self::from_fn(self.vars, p - 1, |i, j| rows[i].coeff(j as i64).clone()))
    }

    /// Exact division by `x - y`.
    pub fn diagonal_divide(&self) -> Result<Self> {
        // g = (x - y) q  <=>  g_d(i) = q_(d-1)(i-1) - q_(d-1)(i)
        let mut coeffs: Vec<Vec<MuPoly>> = Vec::new();
        for d in 1..=self.prec.max(0) as usize {
            let g = &self.coeffs[d];
            let mut q: Vec<MuPoly> = Vec::with_capacity(d);
            // i = 0: g(0) = -q(0)
            q.push(-&g[0]);
            for i in 1..d {
                let next = &q[i - 1] - &g[i];
                q.push(next);
            }
            if q[d - 1] != g[d] {
                return Err(Error::NotDivisible(format!("degree {d} part does not vanish on the diagonal")));
            }
            coeffs.push(q);
        }
        if self.prec >= 0 && !self.coeffs[0][0].is_zero() {
            return Err(Error::NotDivisible("nonzero constant term".into()));
        }
        Ok(BSeries { vars: self.vars, prec: self.prec - 1, coeffs })
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = if self.prec >= 0 { self.coeffs[0][0].constant_value() } else { None };
        let c0 = c0.filter(|c| !c.is_zero()).ok_or_else(|| Error::NonUnit(self.coeff_str(0, 0)))?;
        let neg_inv = -c0.recip();
        let mut coeffs: Vec<Vec<MuPoly>> = vec![vec![MuPoly::constant(c0.recip())]];
        for d in 1..=self.prec as usize {
            let mut accs: Vec<Accumulator> = (0..=d).map(|_| Accumulator::new()).collect();
            for e in 1..=d {
                hmul_into(&mut accs, &self.coeffs[e], &coeffs[d - e], 1);
            }
            coeffs.push(accs.into_iter().map(|a| a.finish().scale(&neg_inv)).collect());
        }
        Ok(BSeries { vars: self.vars, prec: self.prec, coeffs })
    }

    fn coeff_str(&self, i: usize, j: usize) -> String {
        if (i + j) as i64 <= self.prec {
            self.coeff(i, j).to_string()
        } else {
            "unknown".into()
        }
    }

    /// exp of a series with zero constant term, via `d E_d = sum_k k A_k E_(d-k)`
    /// on homogeneous parts.
    pub fn exp(&self) -> Result<Self> {
        if self.prec >= 0 && !self.coeffs[0][0].is_zero() {
            return Err(Error::ExpDomain);
        }
        let mut coeffs: Vec<Vec<MuPoly>> = Vec::new();
        for d in 0..count(self.prec) {
            if d == 0 {
                coeffs.push(vec![MuPoly::one()]);
                continue;
            }
            let mut accs: Vec<Accumulator> = (0..=d).map(|_| Accumulator::new()).collect();
            for k in 1..=d {
                hmul_into(&mut accs, &self.coeffs[k], &coeffs[d - k], k as i64);
            }
            let inv = rat(1, d as i64);
            coeffs.push(accs.into_iter().map(|a| a.finish().scale(&inv)).collect());
        }
        Ok(BSeries { vars: self.vars, prec: self.prec, coeffs })
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.prec < 0 || !self.coeffs[0][0].is_one() {
            return Err(Error::LogDomain);
        }
        let mut coeffs: Vec<Vec<MuPoly>> = vec![vec![MuPoly::zero()]];
        for d in 1..=self.prec as usize {
            let mut accs: Vec<Accumulator> = (0..=d).map(|_| Accumulator::new()).collect();
            for (acc, c) in accs.iter_mut().zip(&self.coeffs[d]) {
                acc.add(&c.scale_int(d as i64));
            }
            for k in 1..d {
                hmul_into(&mut accs, &coeffs[k], &self.coeffs[d - k], -(k as i64));
            }
            let inv = rat(1, d as i64);
            coeffs.push(accs.into_iter().map(|a| a.finish().scale(&inv)).collect());
        }
        Ok(BSeries { vars: self.vars, prec: self.prec, coeffs })
    }

    /// Substitutes `first` for the first variable and `second` for the second.
    /// `None` keeps a variable as it is. Substituted series must have positive
    /// valuation; the result's variables are taken from them.
    pub fn substitute(&self, first: Option<&LSeries>, second: Option<&LSeries>) -> Result<Self> {
        let (k1, r1, v1) = sub_params(first, self.vars.0)?;
        let (k2, r2, v2) = sub_params(second, self.vars.1)?;
        let kmin = k1.min(k2);
        let mut prec = (self.prec + 1) * kmin - 1;
        for (i, j, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            let base = i as i64 * k1 + j as i64 * k2;
            if i > 0 {
                prec = prec.min(base + r1);
            }
            if j > 0 {
                prec = prec.min(base + r2);
            }
        }
        let pows1 = powers(first, self.prec, prec)?;
        let pows2 = powers(second, self.prec, prec)?;
        let vars = (v1, v2);
        // Stage 1: rows indexed by the second exponent, first variable substituted.
        let mut stage: Vec<Vec<MuPoly>> = Vec::new(); // stage[j][a] = coeff of new_x^a y^j
        for j in 0..count(self.prec) {
            let width = (prec - j as i64).max(-1);
            let mut row: Vec<Accumulator> = (0..=width).map(|_| Accumulator::new()).collect();
            for i in 0..=(self.prec as usize - j) {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                match &pows1 {
                    None => {
                        if (i as i64) <= width {
                            row[i].add(c);
                        }
                    }
                    Some(p) => {
                        for (a, pc) in p[i].iter() {
                            if a > width {
                                break;
                            }
                            if !pc.is_zero() {
                                row[a as usize].add_product(c, pc);
                            }
                        }
                    }
                }
            }
            stage.push(row.into_iter().map(Accumulator::finish).collect());
        }
        // Stage 2: substitute the second variable.
        let mut out = Self::zero(vars, prec);
        for a in 0..count(prec) {
            let width = prec - a as i64;
            let mut col: Vec<Accumulator> = (0..=width).map(|_| Accumulator::new()).collect();
            for (j, row) in stage.iter().enumerate() {
                let Some(c) = row.get(a) else { continue };
                if c.is_zero() {
                    continue;
                }
                match &pows2 {
                    None => {
                        if (j as i64) <= width {
                            col[j].add(c);
                        }
                    }
                    Some(p) => {
                        for (b, pc) in p[j].iter() {
                            if b > width {
                                break;
                            }
                            if !pc.is_zero() {
                                col[b as usize].add_product(c, pc);
                            }
                        }
                    }
                }
            }
            for (b, acc) in col.into_iter().enumerate() {
                out.coeffs[a + b][a] = acc.finish();
            }
        }
        Ok(out)
    }

    /// `f(first(t), second(t))` as a univariate series; `None` means the identity.
    pub fn compose_diagonal(&self, first: Option<&LSeries>, second: Option<&LSeries>, var: Var) -> Result<LSeries> {
        for s in [first, second].into_iter().flatten() {
            if s.var() != var {
                return Err(Error::VarMismatch(s.var(), var));
            }
        }
        let t = self.clone().with_vars((var, Var::V)).substitute(first, None)?;
        let id_v = LSeries::identity(var, t.prec().max(1));
        let second_or_id = second.unwrap_or(&id_v);
        // Sum over rows in the second variable: row_j(t) * second(t)^j.
        let (k2, r2, _) = sub_params(Some(second_or_id), var)?;
        let mut prec = t.prec;
        for (i, j, c) in t.iter() {
            if !c.is_zero() && j > 0 {
                prec = prec.min(i as i64 + j as i64 * k2 + r2);
            }
        }
        let pows = powers(Some(second_or_id), t.prec, prec)?.expect("powers");
        let mut acc: Vec<Accumulator> = (0..count(prec)).map(|_| Accumulator::new()).collect();
        for (i, j, c) in t.iter() {
            if c.is_zero() {
                continue;
            }
            for (b, pc) in pows[j].iter() {
                let n = i as i64 + b;
                if n > prec {
                    break;
                }
                if !pc.is_zero() {
                    acc[n as usize].add_product(c, pc);
                }
            }
        }
        Ok(LSeries::new(var, 0, prec, acc.into_iter().map(Accumulator::finish).collect()))
    }

    /// Checks that the coefficient of `a^i b^j` has weight `i + j + offset`.
    pub fn check_weights(&self, offset: i64) -> Result<()> {
        for (i, j, c) in self.iter() {
            if !c.has_weight(i as i64 + j as i64 + offset) {
                return Err(Error::Weight(format!(
                    "coefficient of {}^{i} {}^{j} is {c}, expected weight {}",
                    self.vars.0,
                    self.vars.1,
                    i as i64 + j as i64 + offset
                )));
            }
        }
        Ok(())
    }

    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let prec = self.prec.min(other.prec);
        (0..count(prec))
            .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
            .find(|&(i, j)| self.coeff(i, j) != other.coeff(i, j))
    }

    pub fn agrees_with(&self, other: &Self, what: &str) -> Result<()> {
        match self.first_difference(other) {
            None => Ok(()),
            Some((i, j)) => Err(Error::Identity(format!(
                "{what}: coefficient of {}^{i} {}^{j} differs: {} vs {}",
                self.vars.0,
                self.vars.1,
                self.coeff(i, j),
                other.coeff(i, j)
            ))),
        }
    }
}

/// Number of degrees `0..=prec`, zero when `prec < 0`.
fn count(prec: i64) -> usize {
    (prec + 1).max(0) as usize
}

/// (valuation, relative precision, variable name) of a substitution.
fn sub_params(s: Option<&LSeries>, keep: Var) -> Result<(i64, i64, Var)> {
    match s {
        None => Ok((1, EXACT, keep)),
        Some(s) => match s.valuation() {
            Some(k) if k >= 1 && s.iter().all(|(n, c)| n >= 0 || c.is_zero()) => Ok((k, s.prec() - k, s.var())),
            other => Err(Error::InnerValuation(other)),
        },
    }
}

/// Powers `s^0 ..= s^max_pow`, each truncated to `prec`.
fn powers(s: Option<&LSeries>, max_pow: i64, prec: i64) -> Result<Option<Vec<LSeries>>> {
    let Some(s) = s else { return Ok(None) };
    let s = s.truncate(prec);
    let mut out = vec![LSeries::one(s.var(), prec)];
    for k in 1..=max_pow.max(0) as usize {
        let next = if k == 1 { s.clone() } else { out[k - 1].try_mul(&s)?.truncate(prec) };
        out.push(next);
    }
    Ok(Some(out))
}

/// Adds `scale * x * y` into `acc`, where `x`, `y` are homogeneous parts
/// indexed by the first exponent.
fn hmul_into(acc: &mut [Accumulator], x: &[MuPoly], y: &[MuPoly], scale: i64) {
    for (a, xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, yb) in y.iter().enumerate() {
            if yb.is_zero() {
                continue;
            }
            if scale == 1 {
                acc[a + b].add_product(xa, yb);
            } else {
                acc[a + b].add_scaled_product(scale, xa, yb);
            }
        }
    }
}

impl fmt::Display for BSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.vars;
        let mut first = true;
        for (i, j, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = super::term_text(c);
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            if body != "1" || (i == 0 && j == 0) {
                parts.push(body);
            }
            for (v, e) in [(x, i), (y, j)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.prec + 1)
    }
}

impl fmt::Debug for BSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BSeries({self})")
    }
}

macro_rules! bseries_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait<&BSeries> for &BSeries {
            type Output = BSeries;
            fn $method(self, rhs: &BSeries) -> BSeries {
                self.$try(rhs).expect(concat!("BSeries ", stringify!($method)))
            }
        }
        impl std::ops::$trait<BSeries> for BSeries {
            type Output = BSeries;
            fn $method(self, rhs: BSeries) -> BSeries {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&BSeries> for BSeries {
            type Output = BSeries;
            fn $method(self, rhs: &BSeries) -> BSeries {
                (&self).$method(rhs)
            }
        }
    };
}

bseries_op!(Add, add, try_add);
bseries_op!(Sub, sub, try_sub);
bseries_op!(Mul, mul, try_mul);
