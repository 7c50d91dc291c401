use std::fmt;

use num_traits::{One, Zero};

use super::Var;
use crate::error::{Error, Result};
use crate::ring::{int, rat, Accumulator, MuPoly, Rat, ZERO_POLY};

/// Truncated Laurent series `sum_{n=lo}^{prec} c_n var^n` over Q[mu].
///
/// Coefficients above `prec` are unknown, not zero. Every binary operation
/// computes the certified precision of its result from the valuations and
/// precisions of its inputs.
#[derive(Clone)]
pub struct LSeries {
    var: Var,
    lo: i64,
    prec: i64,
    coeffs: Vec<MuPoly>,
}

impl LSeries {
    /// Coefficients `coeffs[k]` of `var^(lo + k)`, certified through `prec`.
    /// Missing trailing coefficients are zero.
    pub fn new(var: Var, lo: i64, prec: i64, mut coeffs: Vec<MuPoly>) -> Self {
        let lo = lo.min(prec + 1);
        let len = (prec - lo + 1) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, MuPoly::zero());
        LSeries { var, lo, prec, coeffs }
    }

    pub fn from_fn(var: Var, lo: i64, prec: i64, mut f: impl FnMut(i64) -> MuPoly) -> Self {
        let lo = lo.min(prec + 1);
        let coeffs = (lo..=prec).map(&mut f).collect();
        LSeries { var, lo, prec, coeffs }
    }

    pub fn zero(var: Var, prec: i64) -> Self {
        Self::new(var, 0, prec, Vec::new())
    }

    pub fn constant(var: Var, c: MuPoly, prec: i64) -> Self {
        Self::new(var, 0, prec, vec![c])
    }

    pub fn one(var: Var, prec: i64) -> Self {
        Self::constant(var, MuPoly::one(), prec)
    }

    /// `c * var^k`, certified through `prec`.
    pub fn monomial(var: Var, c: MuPoly, k: i64, prec: i64) -> Self {
        Self::new(var, k, prec, vec![c])
    }

    /// The identity series `var`, certified through `prec`.
    pub fn identity(var: Var, prec: i64) -> Self {
        Self::monomial(var, MuPoly::one(), 1, prec)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Highest exponent whose coefficient is certified.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Lowest stored exponent (not necessarily nonzero).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Coefficient of `var^n`. Panics if `n` is above the certified precision.
    pub fn coeff(&self, n: i64) -> &MuPoly {
        assert!(n <= self.prec, "coefficient {n} requested beyond precision {}", self.prec);
        if n < self.lo {
            &ZERO_POLY
        } else {
            &self.coeffs[(n - self.lo) as usize]
        }
    }

    pub fn try_coeff(&self, n: i64) -> Option<&MuPoly> {
        (n <= self.prec).then(|| self.coeff(n))
    }

    /// Certified (exponent, coefficient) pairs, including zeros.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &MuPoly)> + '_ {
        self.coeffs.iter().enumerate().map(move |(k, c)| (self.lo + k as i64, c))
    }

    /// Lowest exponent with a nonzero coefficient, if any is certified.
    pub fn valuation(&self) -> Option<i64> {
        self.iter().find(|(_, c)| !c.is_zero()).map(|(n, _)| n)
    }

    fn val_or_beyond(&self) -> i64 {
        self.valuation().unwrap_or(self.prec + 1)
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn truncate(&self, n: i64) -> Self {
        if n >= self.prec {
            return self.clone();
        }
        Self::new(self.var, self.lo, n, self.coeffs.clone())
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        LSeries { var: self.var, lo: self.lo + k, prec: self.prec + k, coeffs: self.coeffs.clone() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&MuPoly) -> MuPoly) -> Self {
        LSeries { var: self.var, lo: self.lo, prec: self.prec, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &MuPoly) -> Self {
        if let Some(r) = c.constant_value() {
            return self.scale_rat(&r);
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map_coeffs(|x| x.scale(r))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_rat(&int(n))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|x| -x)
    }

    /// f(var) -> f(c * var)
    pub fn scale_var(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for (k, coeff) in out.coeffs.iter_mut().enumerate() {
            let n = self.lo + k as i64;
            let f = rat_pow(c, n);
            *coeff = coeff.scale(&f);
        }
        out
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VarMismatch(self.var, other.var));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let prec = self.prec.min(other.prec);
        let lo = self.lo.min(other.lo);
        Self::from_fn(self.var, lo, prec, |n| {
            let a = self.coeff(n);
            let b = other.coeff(n);
            if negate {
                a - b
            } else {
                a + b
            }
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let va = self.val_or_beyond();
        let vb = other.val_or_beyond();
        let prec = (self.prec + vb).min(other.prec + va);
        let lo = va + vb;
        Ok(Self::from_fn(self.var, lo, prec, |n| {
            let mut acc = Accumulator::new();
            for k in va..=(n - vb) {
                let a = self.coeff(k);
                if a.is_zero() {
                    continue;
                }
                acc.add_product(a, other.coeff(n - k));
            }
            acc.finish()
        }))
    }

    /// Multiplicative inverse; the leading coefficient must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or_else(|| Error::NonUnit("0".into()))?;
        let lead = self.coeff(v);
        let c = lead.constant_value().filter(|c| !c.is_zero()).ok_or_else(|| Error::NonUnit(lead.to_string()))?;
        let inv_c = c.recip();
        let rel = self.prec - v;
        let mut out: Vec<MuPoly> = Vec::with_capacity((rel + 1).max(0) as usize);
        for n in 0..=rel {
            if n == 0 {
                out.push(MuPoly::constant(inv_c.clone()));
                continue;
            }
            let mut acc = Accumulator::new();
            for k in 1..=n {
                acc.add_product(self.coeff(v + k), &out[(n - k) as usize]);
            }
            out.push(acc.finish().scale(&-&inv_c));
        }
        Ok(Self::new(self.var, -v, self.prec - 2 * v, out))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse()?)
    }

    /// Integer power; negative exponents go through [`LSeries::inverse`].
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.try_mul(&sq)?,
                });
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc.unwrap_or_else(|| Self::one(self.var, (self.prec - self.valuation().unwrap_or(0)).max(0))))
    }

    pub fn derivative(&self) -> Self {
        Self::from_fn(self.var, self.lo - 1, self.prec - 1, |n| self.coeff(n + 1).scale_int(n + 1))
    }

    /// Term-wise antiderivative with zero constant. A nonzero `var^-1` term is an error.
    pub fn integrate(&self) -> Result<Self> {
        if self.lo <= -1 && -1 <= self.prec && !self.coeff(-1).is_zero() {
            return Err(Error::LogTerm);
        }
        Ok(Self::from_fn(self.var, self.lo + 1, self.prec + 1, |n| {
            if n == 0 {
                MuPoly::zero()
            } else {
                self.coeff(n - 1).scale(&rat(1, n))
            }
        }))
    }

    /// Substitutes `inner` for the variable of `self`. The result is in the
    /// variable of `inner`, which must have positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let k = match inner.valuation() {
            Some(k) if k >= 1 => k,
            other => return Err(Error::InnerValuation(other)),
        };
        let rel = inner.prec - k;
        let mut prec = (self.prec + 1) * k - 1;
        for (n, c) in self.iter() {
            if n != 0 && !c.is_zero() {
                prec = prec.min(n * k + rel);
            }
        }
        let var = inner.var;
        let full = inner;
        let inner = inner.truncate(prec);
        let mut acc = Self::zero(var, prec);
        if self.lo <= 0 && 0 <= self.prec {
            acc = acc.combine(&Self::constant(var, self.coeff(0).clone(), prec), false);
        }
        if self.prec >= 1 {
            let mut pw = inner.clone();
            for n in 1..=self.prec {
                if n > 1 {
                    pw = pw.try_mul(&inner)?.truncate(prec);
                }
                let c = self.coeff(n);
                if !c.is_zero() {
                    acc = acc.combine(&pw.scale(c), false);
                }
            }
        }
        if self.lo < 0 {
            let inv = full.inverse()?;
            let mut pw = inv.clone();
            for m in 1..=(-self.lo) {
                if m > 1 {
                    // no truncation here: later factors of t^-1 would eat into it
                    pw = pw.try_mul(&inv)?;
                }
                if -m > self.prec {
                    continue;
                }
                let c = self.coeff(-m);
                if !c.is_zero() {
                    acc = acc.combine(&pw.scale(c), false);
                }
            }
        }
        debug_assert!(
            acc.prec >= prec,
            "compose: {} vs {prec}; outer lo {} prec {}, inner {:?} prec {}",
            acc.prec,
            self.lo,
            self.prec,
            full.valuation(),
            full.prec
        );
        Ok(acc.truncate(prec))
    }

    /// Compositional inverse of `var + O(var^2)`, solved order by order.
    /// The result is expressed in `new_var`.
    pub fn revert(&self, new_var: Var) -> Result<Self> {
        if self.valuation().is_none_or(|v| v < 1) || self.lo < 0 && self.iter().any(|(n, c)| n < 1 && !c.is_zero()) {
            return Err(Error::Revert(format!("valuation {:?}", self.valuation())));
        }
        if self.prec < 1 || !self.coeff(1).is_one() {
            return Err(Error::Revert("linear coefficient must be 1".into()));
        }
        let n_max = self.prec as usize;
        // pw[k][n] = [u^n] b^k
        let mut pw: Vec<Vec<MuPoly>> = vec![vec![MuPoly::zero(); n_max + 1]; n_max + 1];
        let mut b = vec![MuPoly::zero(); n_max + 1];
        b[1] = MuPoly::one();
        pw[1][1] = MuPoly::one();
        for n in 2..=n_max {
            let mut total = Accumulator::new();
            for k in 2..=n {
                let mut acc = Accumulator::new();
                for j in 1..=(n - k + 1) {
                    if b[j].is_zero() {
                        continue;
                    }
                    acc.add_product(&pw[k - 1][n - j], &b[j]);
                }
                pw[k][n] = acc.finish();
                total.add_product(self.coeff(k as i64), &pw[k][n]);
            }
            b[n] = -total.finish();
            pw[1][n] = b[n].clone();
        }
        Ok(Self::new(new_var, 0, self.prec, b))
    }

    fn check_power_series(&self) -> Result<()> {
        if self.iter().any(|(n, c)| n < 0 && !c.is_zero()) {
            return Err(Error::PrincipalPart);
        }
        Ok(())
    }

    fn dense_from_zero(&self) -> Vec<MuPoly> {
        (0..=self.prec).map(|n| self.coeff(n).clone()).collect()
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.check_power_series().map_err(|_| Error::ExpDomain)?;
        if self.prec >= 0 && !self.coeff(0).is_zero() {
            return Err(Error::ExpDomain);
        }
        let a = self.dense_from_zero();
        let mut e: Vec<MuPoly> = Vec::with_capacity(a.len());
        for n in 0..a.len() {
            if n == 0 {
                e.push(MuPoly::one());
                continue;
            }
            // n e_n = sum_{k=1}^n k a_k e_{n-k}
            let mut acc = Accumulator::new();
            for k in 1..=n {
                if !a[k].is_zero() {
                    acc.add_scaled_product(k as i64, &a[k], &e[n - k]);
                }
            }
            e.push(acc.finish().scale(&rat(1, n as i64)));
        }
        Ok(Self::new(self.var, 0, self.prec, e))
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.check_power_series().map_err(|_| Error::LogDomain)?;
        if self.prec < 0 || !self.coeff(0).is_one() {
            return Err(Error::LogDomain);
        }
        let a = self.dense_from_zero();
        let mut l: Vec<MuPoly> = Vec::with_capacity(a.len());
        for n in 0..a.len() {
            if n == 0 {
                l.push(MuPoly::zero());
                continue;
            }
            // n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
            let mut acc = Accumulator::new();
            acc.add(&a[n].scale_int(n as i64));
            for k in 1..n {
                if !l[k].is_zero() && !a[n - k].is_zero() {
                    acc.add_scaled_product(-(k as i64), &l[k], &a[n - k]);
                }
            }
            l.push(acc.finish().scale(&rat(1, n as i64)));
        }
        Ok(Self::new(self.var, 0, self.prec, l))
    }

    /// The square root with constant term 1 of a series with constant term 1.
    ///
    /// If `h = 1 + 2 a_1 z/1! + 2 a_2 z^2/2! + ...` with every `a_j` in a ring `A`,
    /// the Hurwitz coefficients of the result lie in `A` as well.
    pub fn sqrt_hurwitz(&self) -> Result<Self> {
        self.check_power_series().map_err(|_| Error::SqrtDomain)?;
        if self.prec < 0 || !self.coeff(0).is_one() {
            return Err(Error::SqrtDomain);
        }
        let h = self.dense_from_zero();
        let half = rat(1, 2);
        let mut phi: Vec<MuPoly> = Vec::with_capacity(h.len());
        for n in 0..h.len() {
            if n == 0 {
                phi.push(MuPoly::one());
                continue;
            }
            let mut acc = Accumulator::new();
            acc.add(&h[n]);
            for k in 1..n {
                acc.add_scaled_product(-1, &phi[k], &phi[n - k]);
            }
            phi.push(acc.finish().scale(&half));
        }
        Ok(Self::new(self.var, 0, self.prec, phi))
    }

    /// Hurwitz coefficients `n! c_n` for `n = 0..=prec`.
    pub fn hurwitz_coeffs(&self) -> Result<Vec<MuPoly>> {
        self.check_power_series()?;
        let mut fact = Rat::one();
        let mut out = Vec::new();
        for n in 0..=self.prec {
            if n > 0 {
                fact *= int(n);
            }
            out.push(self.coeff(n).scale(&fact));
        }
        Ok(out)
    }

    /// Checks that every coefficient of `var^n` is homogeneous of weight `n + offset`.
    pub fn check_weights(&self, offset: i64) -> Result<()> {
        for (n, c) in self.iter() {
            if !c.has_weight(n + offset) {
                return Err(Error::Weight(format!(
                    "coefficient of {}^{n} is {c}, expected weight {}",
                    self.var,
                    n + offset
                )));
            }
        }
        Ok(())
    }

    /// First exponent (up to the common precision) where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<i64> {
        let prec = self.prec.min(other.prec);
        let lo = self.lo.min(other.lo);
        (lo..=prec).find(|&n| self.coeff(n) != other.coeff(n))
    }

    /// Equality up to the common precision, with a diagnostic on failure.
    pub fn agrees_with(&self, other: &Self, what: &str) -> Result<()> {
        match self.first_difference(other) {
            None => Ok(()),
            Some(n) => Err(Error::Identity(format!(
                "{what}: coefficient of {}^{n} differs: {} vs {}",
                self.var,
                self.coeff(n),
                other.coeff(n)
            ))),
        }
    }

    pub fn map_evaluate(&self, values: &[Rat; 5]) -> Self {
        self.map_coeffs(|c| MuPoly::constant(c.evaluate(values)))
    }
}

fn rat_pow(c: &Rat, n: i64) -> Rat {
    if n >= 0 {
        num_traits::pow(c.clone(), n as usize)
    } else {
        num_traits::pow(c.recip(), (-n) as usize)
    }
}

/// Equal variable, equal precision and equal certified coefficients. The
/// stored lower bound is a representation detail and does not take part.
impl PartialEq for LSeries {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.prec == other.prec && self.first_difference(other).is_none()
    }
}

impl Eq for LSeries {}

impl fmt::Display for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = term_text(c);
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let v = self.var;
            match (body.as_str(), n) {
                (b, 0) => write!(f, "{b}")?,
                ("1", 1) => write!(f, "{v}")?,
                ("1", _) => write!(f, "{v}^{n}")?,
                (b, 1) => write!(f, "{b}*{v}")?,
                (b, _) => write!(f, "{b}*{v}^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.prec + 1)
    }
}

impl fmt::Debug for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LSeries({self})")
    }
}

/// Splits a coefficient into a sign and a body suitable for `body*t^n`.
pub(crate) fn term_text(c: &MuPoly) -> (bool, String) {
    if c.len() == 1 {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({c})"))
    }
}

macro_rules! series_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait<&LSeries> for &LSeries {
            type Output = LSeries;
            fn $method(self, rhs: &LSeries) -> LSeries {
                self.$try(rhs).expect(concat!("LSeries ", stringify!($method)))
            }
        }
        impl std::ops::$trait<LSeries> for LSeries {
            type Output = LSeries;
            fn $method(self, rhs: LSeries) -> LSeries {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&LSeries> for LSeries {
            type Output = LSeries;
            fn $method(self, rhs: &LSeries) -> LSeries {
                (&self).$method(rhs)
            }
        }
        impl std::ops::$trait<LSeries> for &LSeries {
            type Output = LSeries;
            fn $method(self, rhs: LSeries) -> LSeries {
                self.$method(&rhs)
            }
        }
    };
}

series_op!(Add, add, try_add);
series_op!(Sub, sub, try_sub);
series_op!(Mul, mul, try_mul);

impl std::ops::Neg for &LSeries {
    type Output = LSeries;
    fn neg(self) -> LSeries {
        LSeries::neg(self)
    }
}

impl std::ops::Neg for LSeries {
    type Output = LSeries;
    fn neg(self) -> LSeries {
        LSeries::neg(&self)
    }
}

impl Zero for LSeries {
    fn zero() -> Self {
        LSeries::zero(Var::T, 0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MuPoly::is_zero)
    }
}
