use chirality_core::bigraph::{parse_pair, BigraphPair};
use chirality_core::chirality::{solve_quadruple, solve_triple_all, RootVerdict};
use chirality_core::real::{Precision, Real};
use chirality_core::spectra::{branch_data, BranchData, Designation, SpectralProfile};

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
fn index_six_quadruple() {
    let (pair, prof) = profile("bwd1v1p1p1v0x1x1v1p1duals1v1x3x2v1x2", "bwd1v1p1p1v0x0x2duals1v2x1x3");
    let BranchData::Quadruple(b) = branch_data(&pair, &prof, Designation::default()).unwrap() else { panic!() };
    let q = solve_quadruple(&pair, &prof, &b, TOL).unwrap();
    println!("{}", serde_json::to_string_pretty(&q.to_json(12)).unwrap());
    assert!(q.s_a_qa1.close_to(&r(-2.0), 1e-9));
    assert!(q.s_a_qa2.close_to(&r(-2.0), 1e-9));
    assert!(q.qa_disagreement < r(1e-10));
    assert!(q.s_b.as_ref().unwrap().close_to(&r(0.0), 1e-9));
    assert!(q.qb_residual < r(1e-12));
    assert_eq!(q.b_candidates.len(), 2);
}

#[test]
fn two_d_two_odd() {
    let (pair, prof) = profile("bwd1v1v1p1v1x0p1x0p0x1p0x1v0x1x1x0duals1v1v1x3x2x4", "bwd1v1v1p1v1x1v1v1duals1v1v1v1");
    let res = solve_triple_all(&pair, &prof, Designation::default(), TOL).unwrap();
    for x in &res {
        println!("{}", serde_json::to_string_pretty(&x.to_json(12)).unwrap());
    }
    assert!(res[0].s.close_to(&r(-2.0), 1e-9));
    assert_eq!(res[0].check.verdict, RootVerdict::Consistent);
}
