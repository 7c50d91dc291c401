use sigma_forge::curve::CurveParams;
use sigma_forge::nplication::{
    cj_formula, classical_oracle, kit_order_for, n_plication, relative_sign, torsion_check, Group, Point, PsiPoly,
};
use sigma_forge::ring::{int, IntegralityClass, MuPoly};
use sigma_forge::sigma::SigmaKit;

fn tabulated(n: u32) -> usize {
    if n % 2 == 1 {
        6
    } else {
        5
    }
}

fn check_against_tables(psi: &PsiPoly, curve: &CurveParams) {
    let n = psi.n();
    for j in 0..=tabulated(n) {
        let want = curve.specialize(&cj_formula(n, j).unwrap());
        assert_eq!(psi.coefficient(j), want, "C_{j} for n = {n}");
    }
    for (j, c) in psi.coefficients().iter().enumerate() {
        assert_eq!(c.integrality_class(), IntegralityClass::ZMu, "C_{j} for n = {n} is {c}");
    }
}

#[test]
fn symbolic_n_up_to_4_matches_oracle_and_tables() {
    let c = CurveParams::symbolic();
    let kit = SigmaKit::new(&c, kit_order_for(4)).unwrap();
    for n in 2..=4 {
        let psi = n_plication(&kit, n).unwrap();
        let sign = relative_sign(&psi, &classical_oracle(n, &c).unwrap());
        assert_eq!(sign, Some(if n % 2 == 0 { -1 } else { 1 }), "n = {n}");
        check_against_tables(&psi, &c);
    }
}

#[test]
fn psi_3_is_3_b2_3b4_3b6_b8() {
    let c = CurveParams::symbolic();
    let kit = SigmaKit::new(&c, kit_order_for(3)).unwrap();
    let psi = n_plication(&kit, 3).unwrap();
    let inv = c.invariants();
    let nonzero: Vec<_> = psi.coefficients().into_iter().filter(|p| !p.is_zero()).collect();
    assert_eq!(
        nonzero,
        [MuPoly::from_int(3), inv.b2.clone(), inv.b4.scale_int(3), inv.b6.scale_int(3), inv.b8.clone()]
    );
}

#[test]
fn numeric_n_5_to_7() {
    for mu in ["1,2,3,4,6", "1,-1,1,-2,3"] {
        let c = CurveParams::parse_list(mu).unwrap();
        let kit = SigmaKit::new(&c, kit_order_for(7)).unwrap();
        for n in 5..=7 {
            let psi = n_plication(&kit, n).unwrap();
            let sign = relative_sign(&psi, &classical_oracle(n, &c).unwrap());
            assert_eq!(sign, Some(if n % 2 == 0 { -1 } else { 1 }), "n = {n}, mu = {mu}");
            check_against_tables(&psi, &c);
        }
    }
}

#[test]
fn torsion_fixture_y2_plus_y_eq_x3() {
    let c = CurveParams::parse_list("0,0,1,0,0").unwrap();
    let zero = int(0);
    let g = Group::new(&c).unwrap();
    let p = g.point(zero.clone(), zero.clone()).unwrap();
    assert_eq!(g.mul(3, &p), Point::Infinity);
    assert_ne!(g.mul(2, &p), Point::Infinity);

    let r3 = torsion_check(&classical_oracle(3, &c).unwrap(), &c, &zero, &zero).unwrap();
    assert_eq!(r3.value, zero);
    assert_eq!(r3.order, Some(3));
    let r2 = torsion_check(&classical_oracle(2, &c).unwrap(), &c, &zero, &zero).unwrap();
    assert_eq!(r2.value, int(1));
    assert!(r2.consistent() && r3.consistent());

    // the sigma quotient gives psi_2 = -f_y, so -1 at P
    let kit = SigmaKit::new(&c, kit_order_for(3)).unwrap();
    let s3 = torsion_check(&n_plication(&kit, 3).unwrap(), &c, &zero, &zero).unwrap();
    let s2 = torsion_check(&n_plication(&kit, 2).unwrap(), &c, &zero, &zero).unwrap();
    assert_eq!(s3.value, zero);
    assert_eq!(s2.value, int(-1));
}

#[test]
fn psi_vanishes_exactly_on_torsion_of_a_rank_one_curve() {
    // y^2 + y = x^3 - x: (0, 0) has infinite order
    let c = CurveParams::parse_list("0,0,1,-1,0").unwrap();
    let g = Group::new(&c).unwrap();
    let p = g.point(int(0), int(0)).unwrap();
    for n in 2..=7 {
        let psi = classical_oracle(n, &c).unwrap();
        let q = g.mul(3, &p);
        let Point::Affine(x, y) = q else { panic!("3P is finite") };
        let r = torsion_check(&psi, &c, &x, &y).unwrap();
        assert!(r.order.is_none());
        assert_ne!(r.value, int(0), "n = {n}");
    }
}
