//! Shared helpers for the integration tests: a small reader for hand-written
//! coefficient expressions and the golden tables.

#![allow(dead_code)]

pub mod props;

use std::sync::OnceLock;

use sigma_forge::curve::{CurveKit, CurveParams};
use sigma_forge::ring::{rat, MuPoly};
use sigma_forge::series::{BSeries, LSeries};
use sigma_forge::sigma::SigmaKit;

/// Reads expressions such as `-(3/2*h^2 + mu2)*mu3` over Q[mu1, mu2, mu3, mu4, mu6],
/// where `h` stands for `mu1/2`.
pub fn mp(src: &str) -> MuPoly {
    let mut r = Reader { s: src.as_bytes(), i: 0 };
    let p = r.expr();
    r.skip_ws();
    assert!(r.i == r.s.len(), "trailing input in {src:?} at {}", r.i);
    p
}

struct Reader<'a> {
    s: &'a [u8],
    i: usize,
}

impl Reader<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn number(&mut self) -> i64 {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().expect("number")
    }

    fn expr(&mut self) -> MuPoly {
        let mut acc = self.term();
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    acc = acc + self.term();
                }
                Some(b'-') => {
                    self.i += 1;
                    acc = acc - self.term();
                }
                _ => return acc,
            }
        }
    }

    fn term(&mut self) -> MuPoly {
        let mut acc = self.unary();
        while self.peek() == Some(b'*') {
            self.i += 1;
            acc = acc * self.unary();
        }
        acc
    }

    fn unary(&mut self) -> MuPoly {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return -self.unary();
        }
        let base = self.atom();
        if self.peek() == Some(b'^') {
            self.i += 1;
            let k = self.number();
            return base.pow(k as u32);
        }
        base
    }

    fn atom(&mut self) -> MuPoly {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let p = self.expr();
                assert_eq!(self.peek(), Some(b')'), "unbalanced parenthesis");
                self.i += 1;
                p
            }
            Some(b'h') => {
                self.i += 1;
                MuPoly::mu(1).scale(&rat(1, 2))
            }
            Some(b'm') => {
                assert_eq!(&self.s[self.i..self.i + 2], b"mu");
                self.i += 2;
                MuPoly::mu(self.number() as u32)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number();
                if self.peek() == Some(b'/') {
                    self.i += 1;
                    let d = self.number();
                    MuPoly::constant(rat(n, d))
                } else {
                    MuPoly::from_int(n)
                }
            }
            other => panic!("unexpected {:?} at {}", other.map(char::from), self.i),
        }
    }
}

pub type Outcome = (&'static str, Result<(), String>);

/// Compares listed coefficients; every index in `lo..=hi` that is not listed must vanish.
pub fn expect_series(s: &LSeries, lo: i64, hi: i64, listed: &[(i64, &str)]) -> Result<(), String> {
    if s.prec() < hi {
        return Err(format!("series known only through {}^{}", s.var(), s.prec()));
    }
    for n in lo..=hi {
        let want = listed.iter().find(|(k, _)| *k == n).map(|(_, e)| mp(e)).unwrap_or_default();
        let got = s.coeff(n);
        if *got != want {
            return Err(format!("{}^{n}: expected {want}, got {got}", s.var()));
        }
    }
    Ok(())
}

/// Compares listed coefficients of `t1^i t2^j`; with `complete`, every other
/// coefficient of total degree at most `deg` must vanish.
pub fn expect_bivariate(
    b: &BSeries,
    deg: usize,
    listed: &[(usize, usize, &str)],
    complete: bool,
) -> Result<(), String> {
    if (b.prec() as usize) < deg {
        return Err(format!("bivariate series known only through degree {}", b.prec()));
    }
    for d in 0..=deg {
        for j in 0..=d {
            let i = d - j;
            let want = match listed.iter().find(|(a, c, _)| (*a, *c) == (i, j)) {
                Some((_, _, e)) => mp(e),
                None if complete => MuPoly::zero(),
                None => continue,
            };
            let got = b.coeff(i, j);
            if *got != want {
                return Err(format!("t1^{i} t2^{j}: expected {want}, got {got}"));
            }
        }
    }
    Ok(())
}

/// Symbolic kit at order 12, shared by the tests of one binary.
pub fn symbolic_kit() -> &'static SigmaKit {
    static KIT: OnceLock<SigmaKit> = OnceLock::new();
    KIT.get_or_init(|| SigmaKit::new(&CurveParams::symbolic(), 12).expect("symbolic kit"))
}

pub fn curve_goldens(c: &CurveKit) -> Vec<Outcome> {
    vec![
        (
            "s to t^6",
            expect_series(
                c.s(),
                0,
                6,
                &[
                    (2, "1"),
                    (3, "mu1"),
                    (4, "mu1^2 + mu2"),
                    (5, "mu1^3 + 2*mu2*mu1 + mu3"),
                    (6, "mu1^4 + 3*mu2*mu1^2 + 3*mu3*mu1 + mu2^2 + mu4"),
                ],
            ),
        ),
        (
            "x to t^3",
            expect_series(
                c.x(),
                -2,
                3,
                &[
                    (-2, "1"),
                    (-1, "-mu1"),
                    (0, "-mu2"),
                    (1, "-mu3"),
                    (2, "-(mu3*mu1 + mu4)"),
                    (3, "-(mu3*mu1^2 + mu4*mu1 + mu2*mu3)"),
                ],
            ),
        ),
        (
            "y to t^2",
            expect_series(
                c.y(),
                -3,
                2,
                &[
                    (-3, "-1"),
                    (-2, "mu1"),
                    (-1, "mu2"),
                    (0, "mu3"),
                    (1, "mu3*mu1 + mu4"),
                    (2, "mu3*mu1^2 + mu4*mu1 + mu2*mu3"),
                ],
            ),
        ),
        (
            "omega1 to t^3",
            expect_series(
                c.omega(),
                0,
                3,
                &[(0, "1"), (1, "mu1"), (2, "mu2 + mu1^2"), (3, "2*mu1*mu2 + 2*mu3 + mu1^3")],
            ),
        ),
        (
            "t' to t^5",
            expect_series(
                c.tprime(),
                0,
                5,
                &[(1, "-1"), (2, "-mu1"), (3, "-mu1^2"), (4, "-mu1^3 - mu3"), (5, "-mu1^4 - 3*mu3*mu1")],
            ),
        ),
        (
            "eta1 to t^3",
            expect_series(
                c.eta(),
                -2,
                3,
                &[(-2, "-1"), (1, "-mu3"), (2, "-(mu4 + 2*mu1*mu3)"), (3, "-(2*mu1*mu4 + 2*mu3*mu2 + 3*mu1^2*mu3)")],
            ),
        ),
        (
            "p displayed terms",
            expect_bivariate(
                c.p(),
                3,
                &[(0, 0, "1"), (1, 0, "mu1"), (0, 1, "0"), (0, 2, "mu2"), (2, 0, "mu2 + mu1^2"), (0, 3, "mu1*mu2")],
                false,
            ),
        ),
        (
            "q to t^5",
            expect_series(
                c.q(),
                0,
                5,
                &[
                    (0, "1"),
                    (2, "-mu2"),
                    (3, "-mu2*mu1"),
                    (4, "-(mu2*mu1^2 + mu4)"),
                    (5, "-(mu2*mu1^3 + 2*mu4*mu1 + mu2*mu3)"),
                ],
            ),
        ),
    ]
}

pub const XI_REGULAR: [(usize, usize, &str); 14] = [
    (1, 0, "mu3"),
    (0, 1, "mu3"),
    (1, 1, "3*mu3*mu1 + 2*mu4"),
    (2, 0, "2*mu3*mu1 + mu4"),
    (0, 2, "2*mu3*mu1 + mu4"),
    (2, 1, "5*mu3*mu1^2 + 4*mu4*mu1 + 3*mu2*mu3"),
    (1, 2, "5*mu3*mu1^2 + 4*mu4*mu1 + 3*mu2*mu3"),
    (3, 0, "3*mu3*mu1^2 + 2*mu4*mu1 + 2*mu2*mu3"),
    (0, 3, "3*mu3*mu1^2 + 2*mu4*mu1 + 2*mu2*mu3"),
    (2, 2, "8*mu3*mu1^3 + 7*mu4*mu1^2 + 11*mu2*mu3*mu1 + 3*mu3^2 + 4*mu4*mu2 + 3*mu6"),
    (3, 1, "7*mu3*mu1^3 + 6*mu4*mu1^2 + 10*mu2*mu3*mu1 + 4*mu3^2 + 4*mu4*mu2 + 4*mu6"),
    (1, 3, "7*mu3*mu1^3 + 6*mu4*mu1^2 + 10*mu2*mu3*mu1 + 4*mu3^2 + 4*mu4*mu2 + 4*mu6"),
    (4, 0, "4*mu3*mu1^3 + 3*mu4*mu1^2 + 6*mu2*mu3*mu1 + 3*mu3^2 + 2*mu4*mu2 + 2*mu6"),
    (0, 4, "4*mu3*mu1^3 + 3*mu4*mu1^2 + 6*mu2*mu3*mu1 + 3*mu3^2 + 2*mu4*mu2 + 2*mu6"),
];

pub const CORRECTION: [(usize, usize, &str); 10] = [
    (1, 0, "-mu2"),
    (1, 1, "-mu3"),
    (2, 0, "-(mu2*mu1 + 2*mu3)"),
    (2, 1, "-(2*mu3*mu1 + mu4)"),
    (1, 2, "-(mu3*mu1 + mu4)"),
    (3, 0, "-(mu2*mu1^2 + 4*mu3*mu1 + mu2^2 + 2*mu4)"),
    (1, 3, "-(mu3*mu1^2 + mu4*mu1 + mu2*mu3)"),
    (2, 2, "-(2*mu3*mu1^2 + 2*mu4*mu1 + mu2*mu3)"),
    (3, 1, "-(3*mu3*mu1^2 + 2*mu4*mu1 + 2*mu2*mu3)"),
    (4, 0, "-(mu2*mu1^3 + 6*mu3*mu1^2 + 2*mu2^2*mu1 + 4*mu4*mu1 + 6*mu2*mu3)"),
];

/// The displayed part of r, expanded from its factored form.
pub fn r_expected() -> Vec<(usize, usize, MuPoly)> {
    let a = mp("-(1/12*mu1*mu3 + 1/6*mu4)");
    let b = mp("-(1/6*mu1^2*mu3 + 1/3*mu4*mu1)");
    let c = mp("-(1/30*mu3^2 + (43/180*mu1^3 + 11/90*mu2*mu1)*mu3 + 43/90*mu4*mu1^2 + 11/45*mu2*mu4 + 2/15*mu6)");
    let d = mp("2/15*mu3^2 + (11/90*mu1^3 + 7/45*mu2*mu1)*mu3 + 11/45*mu4*mu1^2 + 14/45*mu2*mu4 + 8/15*mu6");
    let e = mp("-1/5*mu3^2 + (7/30*mu1^3 - 1/15*mu2*mu1)*mu3 + 7/15*mu4*mu1^2 - 2/15*mu2*mu4 + 1/5*mu6");
    // dense polynomials in (t1, t2) as coefficient grids
    type Grid = Vec<Vec<MuPoly>>;
    let zero = || -> Grid { vec![vec![MuPoly::zero(); 7]; 7] };
    let mul = |x: &Grid, y: &Grid| -> Grid {
        let mut out = zero();
        for i in 0..7 {
            for j in 0..7 {
                if x[i][j].is_zero() {
                    continue;
                }
                for k in 0..7 - i {
                    for l in 0..7 - j {
                        out[i + k][j + l] = &out[i + k][j + l] + &x[i][j] * &y[k][l];
                    }
                }
            }
        }
        out
    };
    let mono = |c: MuPoly, i: usize, j: usize| -> Grid {
        let mut g = zero();
        g[i][j] = c;
        g
    };
    let add = |x: &Grid, y: &Grid| -> Grid { (0..7).map(|i| (0..7).map(|j| &x[i][j] + &y[i][j]).collect()).collect() };
    let one = MuPoly::one;
    let diff = add(&mono(one(), 1, 0), &mono(-one(), 0, 1));
    let diff2 = mul(&diff, &diff);
    let diff4 = mul(&diff2, &diff2);
    let sum = add(&mono(one(), 1, 0), &mono(one(), 0, 1));
    let mut r = mono(one(), 0, 0);
    r = add(&r, &mul(&mono(a, 0, 0), &diff4));
    r = add(&r, &mul(&mono(b, 0, 0), &mul(&diff4, &sum)));
    let block = [mono(c.clone(), 4, 0), mono(c, 0, 4), mono(d.clone(), 3, 1), mono(d, 1, 3), mono(e, 2, 2)]
        .iter()
        .fold(zero(), |acc, g| add(&acc, g));
    r = add(&r, &mul(&block, &diff2));
    let mut out = Vec::new();
    for (i, row) in r.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            if i + j <= 6 && !c.is_zero() {
                out.push((i, j, c));
            }
        }
    }
    out
}

pub fn check_r(r: &BSeries) -> Result<(), String> {
    if r.prec() < 6 {
        return Err(format!("r known only through degree {}", r.prec()));
    }
    let expected = r_expected();
    for d in 0..=6usize {
        for j in 0..=d {
            let i = d - j;
            let want = expected.iter().find(|(a, b, _)| (*a, *b) == (i, j)).map(|t| t.2.clone()).unwrap_or_default();
            if *r.coeff(i, j) != want {
                return Err(format!("t1^{i} t2^{j}: expected {want}, got {}", r.coeff(i, j)));
            }
        }
    }
    Ok(())
}

/// The t^5 line prints 29/16 for the mu3*h term; 5! * 29/16 is not integral, and
/// composing the u-display with u(t) gives 29/12, which is what is listed.
pub const SIGMA_IN_T: [(i64, &str); 7] = [
    (1, "1"),
    (2, "1/2*mu1"),
    (3, "3/2*h^2 + 1/2*mu2"),
    (4, "5/2*h^3 + 3/2*mu2*h + 1/2*mu3"),
    (5, "35/8*h^4 + 15/4*mu2*h^2 + 29/12*mu3*h + 3/8*mu2^2 + 5/12*mu4"),
    (6, "63/8*h^5 + 35/4*mu2*h^3 + 25/3*mu3*h^2 + (15/8*mu2^2 + 25/12*mu4)*h + 5/4*mu2*mu3"),
    (
        7,
        "231/16*h^6 + 315/16*mu2*h^4 + 8941/360*mu3*h^3 + (105/16*mu2^2 + 2641/360*mu4)*h^2 \
         + 3091/360*mu2*mu3*h + 103/120*mu3^2 + 5/16*mu2^3 + 391/360*mu4*mu2 + 13/30*mu6",
    ),
];

/// Hurwitz coefficients `n! c_n` of sigma in u.
pub const SIGMA_HURWITZ: [(i64, &str); 4] = [
    (1, "1"),
    (3, "h^2 + mu2"),
    (5, "h^4 + 2*mu2*h^2 + mu3*mu1 + mu2^2 + 2*mu4"),
    (7, "h^6 + 3*mu2*h^4 + 6*mu3*h^3 + 3*mu2^2*h^2 + 6*mu4*h^2 + 6*mu3*mu2*h + mu2^3 + 6*mu4*mu2 + 6*mu3^2 + 24*mu6"),
];

/// The u^6 line is read with the missing opening parenthesis restored before
/// `-1/225*mu2^2`.
pub const WP: [(i64, &str); 5] = [
    (-2, "1"),
    (0, "-1/12*mu1^2 - 1/3*mu2"),
    (2, "1/240*mu1^4 + 1/30*mu2*mu1^2 - 1/10*mu3*mu1 + 1/15*mu2^2 - 1/5*mu4"),
    (
        4,
        "-1/6048*mu1^6 - 1/504*mu2*mu1^4 + 1/168*mu3*mu1^3 + (-1/126*mu2^2 + 1/84*mu4)*mu1^2 \
         + 1/42*mu2*mu3*mu1 - 1/28*mu3^2 - 2/189*mu2^3 + 1/21*mu4*mu2 - 1/7*mu6",
    ),
    (
        6,
        "1/172800*mu1^8 + 1/10800*mu2*mu1^6 - 1/3600*mu3*mu1^5 + (1/1800*mu2^2 - 1/1800*mu4)*mu1^4 \
         - 1/450*mu2*mu3*mu1^3 + (1/300*mu3^2 + 1/675*mu2^3 - 1/225*mu4*mu2)*mu1^2 \
         + (-1/225*mu2^2 + 1/75*mu4)*mu3*mu1 + 1/675*mu2^4 - 2/225*mu4*mu2^2 + 1/75*mu4^2",
    ),
];

pub fn sigma_goldens(kit: &SigmaKit) -> Vec<Outcome> {
    let err = |e: sigma_forge::Error| e.to_string();
    let sigma_u = {
        let s = kit.sigma();
        let mut res = Ok(());
        for n in 0..=7 {
            let want = SIGMA_HURWITZ.iter().find(|(k, _)| *k == n).map(|(_, e)| mp(e)).unwrap_or_default();
            let got = s.hurwitz_coeff(n);
            if got != want {
                res = Err(format!("u^{n}/{n}!: expected {want}, got {got}"));
                break;
            }
        }
        res
    };
    let wp_terms = expect_series(kit.wp(), -2, 6, &WP);
    let wp_u6_size = match kit.wp().coeff(6).len() {
        14 => Ok(()),
        k => Err(format!("u^6 coefficient of wp has {k} monomials, display has 14")),
    };
    vec![
        (
            "correction through the t1^4 line",
            kit.third_kind_correction().map_err(err).and_then(|c| expect_bivariate(&c, 4, &CORRECTION, true)),
        ),
        ("xi_reg through degree 4", expect_bivariate(kit.xi_regular(), 4, &XI_REGULAR, true)),
        ("r through the degree-6 block", kit.r_series().map_err(err).and_then(|r| check_r(&r))),
        ("sigma in t to t^7", kit.sigma_in_t().map_err(err).and_then(|s| expect_series(&s, 0, 7, &SIGMA_IN_T))),
        ("sigma in u to u^7/7!", sigma_u),
        ("wp to u^6", wp_terms.and(wp_u6_size)),
    ]
}
