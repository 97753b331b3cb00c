use nestsum::exactnum::rat_int;
use nestsum::identities::{closed_form, sweep, AnAxis, Class, Family, Grid, IdentityId, IdentityInstance};
use nestsum::report::json_line;
use nestsum::sequences::HoradamParams;

fn fib() -> HoradamParams<nestsum::Rational> {
    HoradamParams::fibonacci()
}

#[allow(clippy::too_many_arguments)]
fn value(
    id: IdentityId,
    params: HoradamParams<nestsum::Rational>,
    n: u32,
    an: i64,
    c: i64,
    r: i64,
    s: i64,
    d: i64,
) -> nestsum::Rational {
    closed_form(&IdentityInstance::new(id, params, n, an, c, r, s, d).unwrap()).unwrap().value
}

#[test]
fn gibonacci_f3_reduces_to_fibonacci_form() {
    for n in 1..=4 {
        for an in 0..=8 {
            assert_eq!(
                value(IdentityId::F3G, fib(), n, an, 1, 1, 0, 0),
                value(IdentityId::H, fib(), n, an, 1, 1, 0, 0)
            );
        }
    }
}

#[test]
fn specialization_spot_checks() {
    assert_eq!(value(IdentityId::F6FOdd, fib(), 1, 4, 0, 2, 1, 1), value(IdentityId::F6b, fib(), 1, 4, 0, 2, 1, 1));
    let gib = Family::by_name("gib31").unwrap().params;
    assert_eq!(value(IdentityId::F7R1D0G, gib.clone(), 3, 5, 1, 1, 2, 0), value(IdentityId::F7, gib, 3, 5, 1, 1, 2, 0));
}

#[test]
fn sweep_output_is_deterministic() {
    let grid = Grid { ns: vec![1, 2, 3], ss: vec![-1, 2, 5], ..Grid::default() };
    let render = |id| sweep(id, &grid).records.iter().map(json_line).collect::<Vec<_>>();
    for id in [IdentityId::F1a, IdentityId::F5, IdentityId::F6GOdd] {
        assert_eq!(render(id), render(id));
    }
}

#[test]
fn f1a_shifted_grids_agree() {
    let grid = |ss: Vec<i64>| Grid { ss, rs: vec![0], ds: vec![0], ..Grid::default() };
    let base = sweep(IdentityId::F1a, &grid(vec![0, 1, 2]));
    let shifted = sweep(IdentityId::F1a, &grid(vec![3, 4, 5]));
    assert_eq!(base.records.len(), shifted.records.len());
    assert_eq!(base.summary, shifted.summary);
    assert!(base.records.iter().all(|r| r.class == Class::Equal));
}

#[test]
fn outside_domain_is_classified_not_failed() {
    let grid = Grid { an: AnAxis::Offsets(vec![-4, -3, -2]), ..Grid::default() };
    let out = sweep(IdentityId::F3, &grid);
    let s = out.summary;
    assert_eq!(s.equal + s.mismatch, 0);
    assert!(s.outside_mismatch > 0 && s.outside_equal > 0);
    assert!(s.passed());
    for r in &out.records {
        if r.class == Class::OutsideEqual || r.class == Class::OutsideMismatch {
            assert_eq!(r.lhs, Some(rat_int(0)));
        }
    }
}
