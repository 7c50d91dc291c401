use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use super::rat::{int, Rat};
use crate::error::{Error, Result};

/// Subscripts of the five curve coefficients, in exponent-vector order.
pub const MU_INDICES: [u32; 5] = [1, 2, 3, 4, 6];

const EXP_BITS: u32 = 10;
const EXP_MASK: u64 = (1 << EXP_BITS) - 1;
const WEIGHT_SHIFT: u32 = 5 * EXP_BITS;

/// A monomial mu1^e1 mu2^e2 mu3^e3 mu4^e4 mu6^e6, packed into one word.
///
/// The weight sits in the top bits, so the integer order is
/// (weight, e1, e2, e3, e4, e6) lexicographic and multiplication is a
/// single addition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn new(exps: [u32; 5]) -> Self {
        let mut packed = 0u64;
        let mut weight = 0u64;
        for (k, &e) in exps.iter().enumerate() {
            assert!(u64::from(e) <= EXP_MASK, "exponent {e} too large");
            packed |= u64::from(e) << ((4 - k) as u32 * EXP_BITS);
            weight += u64::from(e) * u64::from(MU_INDICES[k]);
        }
        Monomial(packed | (weight << WEIGHT_SHIFT))
    }

    /// The generator mu_j, j in {1, 2, 3, 4, 6}.
    pub fn generator(j: u32) -> Self {
        let k = MU_INDICES.iter().position(|&i| i == j).unwrap_or_else(|| panic!("no generator mu{j}"));
        let mut e = [0; 5];
        e[k] = 1;
        Monomial::new(e)
    }

    pub fn exponents(self) -> [u32; 5] {
        let mut e = [0; 5];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = ((self.0 >> ((4 - k) as u32 * EXP_BITS)) & EXP_MASK) as u32;
        }
        e
    }

    pub fn weight(self) -> u32 {
        (self.0 >> WEIGHT_SHIFT) as u32
    }

    /// Exponent of mu1.
    pub fn mu1_degree(self) -> u32 {
        self.exponents()[0]
    }

    /// Parity of e1 + e3, i.e. the sign picked up under (mu1, mu3) -> (-mu1, -mu3).
    pub fn is_odd_in_mu1_mu3(self) -> bool {
        let e = self.exponents();
        (e[0] + e[2]) % 2 == 1
    }

    #[inline]
    fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 + other.0)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = MU_INDICES[k];
            if latex {
                write!(f, "\\mu_{j}")?;
                if e > 1 {
                    write!(f, "^{{{e}}}")?;
                }
            } else {
                if !first {
                    write!(f, "*")?;
                }
                write!(f, "mu{j}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Term {
    mono: Monomial,
    coef: Rat,
    /// `Some(n)` iff `coef` is an integer that fits in an i64.
    small: Option<i64>,
}

impl Term {
    fn new(mono: Monomial, coef: Rat) -> Self {
        let small = if coef.is_integer() { coef.numer().to_i64() } else { None };
        Term { mono, coef, small }
    }
}

/// Weight of a nonzero polynomial under wt(mu_j) = j.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Homogeneous(u32),
    Inhomogeneous,
}

/// Which coefficient ring a polynomial lives in. Ordered so that `min` is the meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntegralityClass {
    Neither,
    /// Z[mu1/2, mu2, mu3, mu4, mu6]
    ZHalfMu1,
    /// Z[mu1, mu2, mu3, mu4, mu6]
    ZMu,
}

impl fmt::Display for IntegralityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntegralityClass::ZMu => "Z[mu]",
            IntegralityClass::ZHalfMu1 => "Z[mu1/2,mu2,mu3,mu4,mu6]",
            IntegralityClass::Neither => "neither",
        })
    }
}

/// Result of [`MuPoly::integrality`]. The witness is a monomial whose
/// coefficient is not in Z; for `Neither` it is one that also fails the
/// Z[mu1/2, ...] test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrality {
    pub class: IntegralityClass,
    pub witness: Option<Monomial>,
}

/// Polynomial in mu1, mu2, mu3, mu4, mu6 with exact rational coefficients.
///
/// Terms are kept sorted in canonical order (descending weight, then
/// descending exponent vector) with no zero coefficients, so equality is
/// structural and printing is reproducible.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MuPoly {
    terms: Vec<Term>,
}

pub(crate) static ZERO_POLY: MuPoly = MuPoly { terms: Vec::new() };

impl MuPoly {
    pub fn zero() -> Self {
        MuPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MuPoly { terms: vec![Term::new(m, c)] }
        }
    }

    /// The generator mu_j.
    pub fn mu(j: u32) -> Self {
        Self::monomial(Monomial::generator(j), Rat::one())
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Self {
        let mut map: FxHashMap<Monomial, Rat> = FxHashMap::default();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rat::zero) += c;
        }
        Self::from_map(map)
    }

    fn from_map(map: FxHashMap<Monomial, Rat>) -> Self {
        let mut terms: Vec<Term> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| Term::new(m, c)).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.mono));
        MuPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rat)> + '_ {
        self.terms.iter().map(|t| (t.mono, &t.coef))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono == Monomial::ONE && self.terms[0].coef.is_one()
    }

    pub fn coefficient(&self, m: Monomial) -> Rat {
        self.terms
            .binary_search_by(|t| m.cmp(&t.mono))
            .map(|i| self.terms[i].coef.clone())
            .unwrap_or_else(|_| Rat::zero())
    }

    /// The value if this is a constant polynomial (including zero).
    pub fn constant_value(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [t] if t.mono == Monomial::ONE => Some(t.coef.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MuPoly { terms: self.terms.iter().map(|t| Term::new(t.mono, &t.coef * c)).collect() }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&int(n))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Common weight of all monomials.
    pub fn weight_of(&self) -> Result<Weight> {
        let first = self.terms.first().ok_or(Error::UndefinedWeight)?.mono.weight();
        if self.terms.iter().all(|t| t.mono.weight() == first) {
            Ok(Weight::Homogeneous(first))
        } else {
            Ok(Weight::Inhomogeneous)
        }
    }

    /// True for zero or for a polynomial homogeneous of weight `w`.
    pub fn has_weight(&self, w: i64) -> bool {
        self.terms.iter().all(|t| i64::from(t.mono.weight()) == w)
    }

    /// Classifies the polynomial as a member of Z[mu], Z[mu1/2, mu2, ...], or neither,
    /// by exact denominator divisibility.
    pub fn integrality(&self) -> Integrality {
        let mut not_z = None;
        let mut not_half = None;
        for t in &self.terms {
            if t.coef.is_integer() {
                continue;
            }
            not_z.get_or_insert(t.mono);
            let den = t.coef.denom();
            let twos = den.trailing_zeros().unwrap_or(0);
            let odd_part_is_one = (den >> twos).is_one();
            if !(odd_part_is_one && twos <= u64::from(t.mono.mu1_degree())) {
                not_half.get_or_insert(t.mono);
            }
        }
        match (not_z, not_half) {
            (None, _) => Integrality { class: IntegralityClass::ZMu, witness: None },
            (Some(w), None) => Integrality { class: IntegralityClass::ZHalfMu1, witness: Some(w) },
            (Some(_), Some(w)) => Integrality { class: IntegralityClass::Neither, witness: Some(w) },
        }
    }

    pub fn integrality_class(&self) -> IntegralityClass {
        self.integrality().class
    }

    /// Substitutes numeric values for (mu1, mu2, mu3, mu4, mu6).
    pub fn evaluate(&self, values: &[Rat; 5]) -> Rat {
        let mut sum = Rat::zero();
        for t in &self.terms {
            let mut v = t.coef.clone();
            for (k, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(values[k].clone(), e as usize);
                }
            }
            sum += v;
        }
        sum
    }

    /// Image under (mu1, mu3) -> (-mu1, -mu3), the other three fixed.
    pub fn flip_mu1_mu3(&self) -> Self {
        MuPoly {
            terms: self
                .terms
                .iter()
                .map(|t| if t.mono.is_odd_in_mu1_mu3() { Term::new(t.mono, -&t.coef) } else { t.clone() })
                .collect(),
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.coef.denom()))
    }

    fn merge(&self, other: &MuPoly, negate_other: bool) -> MuPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => y.mono.cmp(&x.mono),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { -&b[j].coef } else { b[j].coef.clone() };
                    out.push(Term::new(b[j].mono, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { &a[i].coef - &b[j].coef } else { &a[i].coef + &b[j].coef };
                    if !c.is_zero() {
                        out.push(Term::new(a[i].mono, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MuPoly { terms: out }
    }

    fn product(&self, other: &MuPoly) -> MuPoly {
        if self.is_zero() || other.is_zero() {
            return MuPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut acc = Accumulator::with_capacity(self.len() * other.len() / 2 + 1);
        acc.add_product(self, other);
        acc.finish()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coef.is_negative();
            let abs = t.coef.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs.is_one();
            if t.mono == Monomial::ONE {
                write_rat(f, &abs, latex)?;
                continue;
            }
            if !unit {
                write_rat(f, &abs, latex)?;
                if !latex {
                    write!(f, "*")?;
                }
            }
            t.mono.fmt_with(f, latex)?;
        }
        Ok(())
    }

    pub fn to_latex(&self) -> String {
        struct L<'a>(&'a MuPoly);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, true)
            }
        }
        L(self).to_string()
    }

    /// Canonical JSON: `[{"e":[e1,e2,e3,e4,e6],"n":"num","d":"den"}, ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|t| {
                    json!({
                        "e": t.mono.exponents().to_vec(),
                        "n": t.coef.numer().to_string(),
                        "d": t.coef.denom().to_string(),
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("MuPoly JSON: {what}"));
        let arr = v.as_array().ok_or_else(|| bad("expected array"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for item in arr {
            let e = item.get("e").and_then(Value::as_array).ok_or_else(|| bad("missing e"))?;
            if e.len() != 5 {
                return Err(bad("exponent vector must have length 5"));
            }
            let mut exps = [0u32; 5];
            for (k, x) in e.iter().enumerate() {
                exps[k] = x
                    .as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .filter(|&x| u64::from(x) <= EXP_MASK)
                    .ok_or_else(|| bad("bad exponent"))?;
            }
            let n: BigInt = item
                .get("n")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad numerator"))?;
            let d: BigInt = item
                .get("d")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .filter(|d: &BigInt| d.is_positive())
                .ok_or_else(|| bad("bad denominator"))?;
            terms.push((Monomial::new(exps), Rat::new(n, d)));
        }
        Ok(Self::from_terms(terms))
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, r: &Rat, latex: bool) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else if latex {
        write!(f, "\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for MuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, false)
    }
}

impl fmt::Debug for MuPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MuPoly({self})")
    }
}

/// Sums of products of polynomials without intermediate normalization.
///
/// Products of integer coefficients that fit in i64 are summed in i128;
/// everything else goes through big rationals.
#[derive(Default)]
pub struct Accumulator {
    small: FxHashMap<Monomial, i128>,
    big: FxHashMap<Monomial, Rat>,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Accumulator {
            small: FxHashMap::with_capacity_and_hasher(n.min(4096), Default::default()),
            big: FxHashMap::default(),
        }
    }

    #[inline]
    fn push_small(&mut self, m: Monomial, v: i128) {
        let slot = self.small.entry(m).or_insert(0);
        match slot.checked_add(v) {
            Some(s) => *slot = s,
            None => {
                let old = std::mem::replace(slot, v);
                *self.big.entry(m).or_insert_with(Rat::zero) += Rat::from_integer(BigInt::from(old));
            }
        }
    }

    /// acc += a * b
    pub fn add_product(&mut self, a: &MuPoly, b: &MuPoly) {
        for ta in &a.terms {
            for tb in &b.terms {
                let m = ta.mono.times(tb.mono);
                match (ta.small, tb.small) {
                    (Some(x), Some(y)) => self.push_small(m, i128::from(x) * i128::from(y)),
                    _ => *self.big.entry(m).or_insert_with(Rat::zero) += &ta.coef * &tb.coef,
                }
            }
        }
    }

    /// acc += c * a * b
    pub fn add_scaled_product(&mut self, c: i64, a: &MuPoly, b: &MuPoly) {
        if c == 1 {
            return self.add_product(a, b);
        }
        let cr = int(c);
        for ta in &a.terms {
            for tb in &b.terms {
                let m = ta.mono.times(tb.mono);
                let fast = match (ta.small, tb.small) {
                    (Some(x), Some(y)) => (i128::from(x) * i128::from(y)).checked_mul(i128::from(c)),
                    _ => None,
                };
                match fast {
                    Some(v) => self.push_small(m, v),
                    None => *self.big.entry(m).or_insert_with(Rat::zero) += &ta.coef * &tb.coef * &cr,
                }
            }
        }
    }

    /// acc += a
    pub fn add(&mut self, a: &MuPoly) {
        for t in &a.terms {
            match t.small {
                Some(x) => self.push_small(t.mono, i128::from(x)),
                None => *self.big.entry(t.mono).or_insert_with(Rat::zero) += &t.coef,
            }
        }
    }

    /// acc -= a
    pub fn sub(&mut self, a: &MuPoly) {
        for t in &a.terms {
            match t.small {
                Some(x) => self.push_small(t.mono, -i128::from(x)),
                None => *self.big.entry(t.mono).or_insert_with(Rat::zero) -= &t.coef,
            }
        }
    }

    pub fn finish(self) -> MuPoly {
        let Accumulator { small, mut big } = self;
        if big.is_empty() {
            let mut terms: Vec<Term> = small
                .into_iter()
                .filter(|&(_, v)| v != 0)
                .map(|(m, v)| Term::new(m, Rat::from_integer(BigInt::from(v))))
                .collect();
            terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.mono));
            return MuPoly { terms };
        }
        for (m, v) in small {
            if v != 0 {
                *big.entry(m).or_insert_with(Rat::zero) += Rat::from_integer(BigInt::from(v));
            }
        }
        MuPoly::from_map(big)
    }
}

impl Neg for &MuPoly {
    type Output = MuPoly;
    fn neg(self) -> MuPoly {
        MuPoly { terms: self.terms.iter().map(|t| Term::new(t.mono, -&t.coef)).collect() }
    }
}

impl Neg for MuPoly {
    type Output = MuPoly;
    fn neg(self) -> MuPoly {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&MuPoly> for &MuPoly {
            type Output = MuPoly;
            fn $method(self, rhs: &MuPoly) -> MuPoly {
                let f: fn(&MuPoly, &MuPoly) -> MuPoly = $body;
                f(self, rhs)
            }
        }
        impl $trait<MuPoly> for MuPoly {
            type Output = MuPoly;
            fn $method(self, rhs: MuPoly) -> MuPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MuPoly> for MuPoly {
            type Output = MuPoly;
            fn $method(self, rhs: &MuPoly) -> MuPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MuPoly> for &MuPoly {
            type Output = MuPoly;
            fn $method(self, rhs: MuPoly) -> MuPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.merge(b, false));
binop!(Sub, sub, |a, b| a.merge(b, true));
binop!(Mul, mul, |a, b| a.product(b));

impl AddAssign<&MuPoly> for MuPoly {
    fn add_assign(&mut self, rhs: &MuPoly) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&MuPoly> for MuPoly {
    fn sub_assign(&mut self, rhs: &MuPoly) {
        *self = self.merge(rhs, true);
    }
}
