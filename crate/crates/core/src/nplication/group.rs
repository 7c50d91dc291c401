//! Chord-tangent group law on a numeric curve.

use num_traits::Zero;

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::ring::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(Rat, Rat),
}

/// The rational points of a curve with numeric coefficients.
#[derive(Clone, Debug)]
pub struct Group {
    a: [Rat; 5],
}

impl Group {
    pub fn new(curve: &CurveParams) -> Result<Self> {
        let a = curve.values().ok_or_else(|| Error::Range("the group law needs numeric mu".into()))?;
        Ok(Group { a: a.clone() })
    }

    pub fn point(&self, x: Rat, y: Rat) -> Result<Point> {
        let p = Point::Affine(x, y);
        if !self.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let [a1, a2, a3, a4, a6] = &self.a;
                y * y + (a1 * x + a3) * y == x * x * x + a2 * x * x + a4 * x + a6
            }
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let [a1, _, a3, _, _] = &self.a;
                Point::Affine(x.clone(), -y - a1 * x - a3)
            }
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 == x2 {
            let denom = y1 + y2 + a1 * x2 + a3;
            if denom.is_zero() {
                return Point::Infinity;
            }
            let two_y = y1 + y1 + a1 * x1 + a3;
            let lambda =
                (Rat::from_integer(3.into()) * x1 * x1 + Rat::from_integer(2.into()) * a2 * x1 + a4 - a1 * y1) / &two_y;
            let nu = (-(x1 * x1 * x1) + a4 * x1 + Rat::from_integer(2.into()) * a6 - a3 * y1) / &two_y;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda + a1) * &x3 - nu - a3;
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, n: u64, p: &Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = p.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// Smallest `k <= bound` with `[k]P = O`.
    pub fn order(&self, p: &Point, bound: u64) -> Option<u64> {
        let mut q = p.clone();
        for k in 1..=bound {
            if q == Point::Infinity {
                return Some(k);
            }
            q = self.add(&q, p);
        }
        None
    }
}
