//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::Instant;

use sigma_forge::curve::CurveParams;
use sigma_forge::nplication::{cj_formula, classical_oracle, n_plication, relative_sign, torsion_check, Group, Point};
use sigma_forge::ring::{int, IntegralityClass, MuPoly};
use sigma_forge::series::HurwitzReport;
use sigma_forge::sigma::SigmaKit;

type Verdict = Result<String, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn goldens() -> Verdict {
    let kit = common::symbolic_kit();
    let mut outcomes = common::curve_goldens(kit.curve());
    outcomes.extend(common::sigma_goldens(kit));
    let total = outcomes.len();
    let failed: Vec<String> =
        outcomes.into_iter().filter_map(|(name, r)| r.err().map(|e| format!("{name}: {e}"))).collect();
    if failed.is_empty() {
        Ok(format!("{total} displays matched at symbolic order 12"))
    } else {
        Err(failed.join("; "))
    }
}

fn integrality(kit: &SigmaKit) -> Verdict {
    kit.check_integrality().map_err(err)?;
    for n in 1..=24 {
        let sq = HurwitzReport::of(&kit.sigma_sq().truncate(n)).map_err(err)?;
        let s = HurwitzReport::of(&kit.sigma().truncate(n)).map_err(err)?;
        if sq.overall != IntegralityClass::ZMu {
            return Err(format!("order {n}: sigma^2 {sq}"));
        }
        // the truncation u + O(u^3) is still in Z[mu]; mu1/2 first enters at u^3
        let want = if n >= 3 { IntegralityClass::ZHalfMu1 } else { IntegralityClass::ZMu };
        if s.overall != want {
            return Err(format!("order {n}: sigma {s}"));
        }
    }
    let s = HurwitzReport::of(&kit.sigma().truncate(24)).map_err(err)?;
    let (n, mono) = s.first_non_integral.ok_or("no witness that sigma leaves Z[mu]<<u>>")?;
    let c = kit.sigma().hurwitz_coeff(n as i64);
    Ok(format!(
        "orders 1..=24: sigma^2 in Z[mu]<<u>>, sigma in Z[mu1/2,mu2,mu3,mu4,mu6]<<u>>; \
         witness sigma not in Z[mu]<<u>>: {n}! c_{n} = {c} (monomial {mono} has coefficient {})",
        c.coefficient(mono)
    ))
}

fn identity_suite() -> Verdict {
    let kit = SigmaKit::new(&CurveParams::symbolic(), 14).map_err(err)?;
    let s = kit.identities();
    let checks: [(&str, sigma_forge::Result<()>); 4] = [
        ("Frobenius-Stickelberger", s.frobenius_stickelberger()),
        ("duplication", s.duplication()),
        ("inversion", s.inversion()),
        ("curve relation", s.curve_relation()),
    ];
    let failed: Vec<String> =
        checks.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    if failed.is_empty() {
        Ok("Frobenius-Stickelberger, duplication (= -wp'), inversion, curve relation exact at symbolic order 14".into())
    } else {
        Err(failed.join("; "))
    }
}

fn tabulated(n: u32) -> usize {
    if n % 2 == 1 {
        6
    } else {
        5
    }
}

fn nplication_case(kit: &SigmaKit, n: u32) -> Result<(), String> {
    let c = kit.params();
    let psi = n_plication(kit, n).map_err(err)?;
    let want_sign = if n.is_multiple_of(2) { -1 } else { 1 };
    match relative_sign(&psi, &classical_oracle(n, c).map_err(err)?) {
        Some(s) if s == want_sign => {}
        other => return Err(format!("n = {n}: sign against the oracle is {other:?}")),
    }
    for j in 0..=tabulated(n) {
        let want = c.specialize(&cj_formula(n, j).map_err(err)?);
        if psi.coefficient(j) != want {
            return Err(format!("n = {n}: C_{j} = {}, table gives {want}", psi.coefficient(j)));
        }
    }
    if let Some((j, cj)) =
        psi.coefficients().iter().enumerate().find(|(_, p)| p.integrality_class() != IntegralityClass::ZMu)
    {
        return Err(format!("n = {n}: C_{j} = {cj} is not in Z[mu]"));
    }
    if n == 3 {
        let inv = c.invariants();
        let nonzero: Vec<MuPoly> = psi.coefficients().into_iter().filter(|p| !p.is_zero()).collect();
        let want = [MuPoly::from_int(3), inv.b2.clone(), inv.b4.scale_int(3), inv.b6.scale_int(3), inv.b8.clone()];
        if nonzero != want {
            return Err(format!("psi_3 coefficients {nonzero:?}"));
        }
    }
    Ok(())
}

fn nplication(symbolic: &SigmaKit) -> Verdict {
    for n in 2..=5 {
        nplication_case(symbolic, n)?;
    }
    for mu in ["1,2,3,4,6", "1,-1,1,-2,3"] {
        let kit = SigmaKit::new(&CurveParams::parse_list(mu).map_err(err)?, 49).map_err(err)?;
        for n in 6..=7 {
            nplication_case(&kit, n).map_err(|e| format!("mu = {mu}: {e}"))?;
        }
    }
    Ok("n = 2..5 symbolic, n = 6, 7 at mu = (1,2,3,4,6), (1,-1,1,-2,3): sign +1 odd / -1 even, \
        C_j match the tables, all C_j in Z[mu], psi_3 = (3, b2, 3b4, 3b6, b8)"
        .into())
}

fn properties() -> Verdict {
    let failed: Vec<String> =
        common::props::ALL.iter().filter_map(|(name, f)| f().err().map(|e| format!("{name}: {e}"))).collect();
    if failed.is_empty() {
        Ok(format!("{} suites, 100 cases each, fixed seed", common::props::ALL.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn torsion() -> Verdict {
    let c = CurveParams::parse_list("0,0,1,0,0").map_err(err)?;
    let zero = int(0);
    let g = Group::new(&c).map_err(err)?;
    let p = g.point(zero.clone(), zero.clone()).map_err(err)?;
    if g.mul(3, &p) != Point::Infinity || g.mul(2, &p) == Point::Infinity {
        return Err("group law: P is not of exact order 3".into());
    }
    let psi3 = torsion_check(&classical_oracle(3, &c).map_err(err)?, &c, &zero, &zero).map_err(err)?;
    let psi2 = torsion_check(&classical_oracle(2, &c).map_err(err)?, &c, &zero, &zero).map_err(err)?;
    if psi3.value != zero || psi2.value != int(1) {
        return Err(format!("psi_3(P) = {}, psi_2(P) = {}", psi3.value, psi2.value));
    }
    let kit = SigmaKit::new(&c, 9).map_err(err)?;
    let s3 = torsion_check(&n_plication(&kit, 3).map_err(err)?, &c, &zero, &zero).map_err(err)?;
    let s2 = torsion_check(&n_plication(&kit, 2).map_err(err)?, &c, &zero, &zero).map_err(err)?;
    if s3.value != zero || s2.value != int(-1) {
        return Err(format!("from sigma: psi_3(P) = {}, psi_2(P) = {}", s3.value, s2.value));
    }
    Ok("y^2 + y = x^3, P = (0,0): psi_3(P) = 0, psi_2(P) = f_y(P) = 1 (sigma(2u)/sigma^4 gives -1), [3]P = O".into())
}

fn report(k: usize, name: &str, start: Instant, v: Verdict) -> bool {
    let secs = start.elapsed().as_secs_f64();
    match v {
        Ok(detail) => {
            println!("PASS criterion {k} ({name}, {secs:.1}s): {detail}");
            true
        }
        Err(e) => {
            println!("FAIL criterion {k} ({name}, {secs:.1}s): {e}");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "golden series", t, goldens());

    // one symbolic kit at order 25 serves criteria 2 and 4
    let t = Instant::now();
    let big = SigmaKit::new(&CurveParams::symbolic(), 25).map_err(|e| format!("symbolic kit at order 25: {e}"));
    ok &= report(2, "integrality", t, big.as_ref().map_err(Clone::clone).and_then(integrality));

    let t = Instant::now();
    ok &= report(3, "identities", t, identity_suite());
    let t = Instant::now();
    ok &= report(4, "n-plication", t, big.as_ref().map_err(Clone::clone).and_then(nplication));
    let t = Instant::now();
    ok &= report(5, "properties", t, properties());
    let t = Instant::now();
    ok &= report(6, "torsion fixture", t, torsion());
    if !ok {
        std::process::exit(1);
    }
}
