use chirality_core::bigraph::{parse_pair, BigraphPair, Side, VertexId};
use chirality_core::real::{Precision, Real};
use chirality_core::spectra::{branch_data, qint, BranchData, Designation, SpectralProfile};

const TOL: f64 = 1e-10;

fn profile(p: &str, m: &str) -> (BigraphPair, SpectralProfile) {
    let pair = parse_pair(p, m).unwrap();
    let prof = SpectralProfile::compute(&pair, Precision::default(), TOL).unwrap();
    (pair, prof)
}

fn r(x: f64) -> Real {
    Real::from_f64(x, Precision::default())
}

#[test]
fn haagerup_index() {
    let h = "bwd1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1x2v2x1";
    let (_, prof) = profile(h, h);
    let p = Precision::default();
    let expect = (Real::from_i64(5, p) + Real::from_i64(13, p).sqrt()) / Real::from_i64(2, p);
    assert!(prof.index.close_to(&expect, 1e-40));
    assert!(prof.residual < r(1e-40));
    assert_eq!(prof.supertransitivity.k, 3);
}

#[test]
fn index_six_base_traces() {
    let (pair, prof) = profile("bwd1v1p1p1v0x1x1v1p1duals1v1x3x2v1x2", "bwd1v1p1p1v0x0x2duals1v2x1x3");
    assert!(prof.index.close_to(&r(6.0), 1e-40));
    let BranchData::Quadruple(b) = branch_data(&pair, &prof, Designation::default()).unwrap() else { panic!() };
    assert_eq!(b.p, VertexId::new(2, 0));
    assert_eq!(b.p_check, VertexId::new(2, 2));
    assert!(b.tr_p.close_to(&r(1.0), TOL) && b.tr_q.close_to(&r(2.0), TOL));
    assert!(b.tr_p_check.close_to(&r(3.0), TOL) && b.tr_q_check.close_to(&r(1.0), TOL));
    assert_eq!(b.r_exact.unwrap().to_string(), "4");
    assert_eq!(b.r_check_exact.unwrap().to_string(), "2/3");
    let d = &prof.norm;
    assert!((&b.tr_p + &b.tr_q + &b.tr_r).close_to(&qint(d, 3), TOL));
    let _ = prof.dim(Side::Minus, VertexId::new(3, 0));
}
