use std::collections::HashMap;

use dlfq::dickson::dickson_by_product;
use dlfq::linalg::{enumerate_gl, DEFAULT_GROUP_BOUND};
use dlfq::unipotent::dl_companion;
use dlfq::variety::{
    enumerate_variety, fiber_census, quotient_map, scaling_cover, torsor_check, VarietyKind,
    VarietySpec,
};
use dlfq::{make_field, Error, Fe, FieldCtx, FieldSpec};

const BOUND: u64 = 1 << 24;

fn f(p: u32, s: u32, m: u32) -> FieldCtx {
    make_field(FieldSpec::new(p, s, m)).unwrap()
}

#[test]
fn f_is_constant_on_group_orbits() {
    for (p, m) in [(2, 2), (2, 4), (3, 2)] {
        let ctx = f(p, 1, m);
        let spec = VarietySpec::new(VarietyKind::QPrime, 2, p, 1);
        let group = enumerate_gl(&ctx, 2, DEFAULT_GROUP_BOUND).unwrap();
        for x in enumerate_variety(&ctx, &spec, BOUND).unwrap() {
            let fx = dl_companion(&ctx, &x).unwrap().f;
            for g in &group {
                assert_eq!(dl_companion(&ctx, &g.apply(&x, &ctx)).unwrap().f, fx);
            }
        }
    }
}

#[test]
fn quotient_map_separates_orbits() {
    // a geometric fiber is one free orbit, and its F_{q^m}-points are all
    // of it or none
    let ctx = f(2, 1, 4);
    let spec = VarietySpec::new(VarietyKind::QPrime, 2, 2, 1);
    let mut fibers: HashMap<Vec<Fe>, usize> = HashMap::new();
    for x in enumerate_variety(&ctx, &spec, BOUND).unwrap() {
        *fibers.entry(quotient_map(&ctx, &spec, &x).unwrap()).or_default() += 1;
    }
    assert!(!fibers.is_empty());
    assert!(fibers.values().all(|&c| c == 6));
}

#[test]
fn product_oracle_on_unit_corner() {
    // where e = 1 the constant term is (-1)^n
    let ctx = f(3, 1, 3);
    let spec = VarietySpec::new(VarietyKind::Q, 2, 3, 1);
    let points = enumerate_variety(&ctx, &spec, BOUND).unwrap();
    assert!(!points.is_empty());
    for x in points {
        let d = dickson_by_product(&ctx, &x, 1 << 16).unwrap();
        assert_eq!(d.c[0], Fe::ONE);
    }
}

#[test]
fn covers_and_torsors() {
    let ctx = f(3, 1, 1);
    let spec = VarietySpec::new(VarietyKind::Q, 2, 3, 1).with_sign_variant(true);
    // X(1)(F_3) is empty for n = 2
    assert!(scaling_cover(&ctx, &spec, 4, BOUND).unwrap().entries.is_empty());
    let ctx = f(3, 1, 2);
    let cover = scaling_cover(&ctx, &spec, 4, BOUND).unwrap();
    assert_eq!(cover.exponent, 4);
    assert!(cover.all_fibers_full());
    assert!(torsor_check(&ctx, &spec, 4, BOUND).unwrap().passed());
}

#[test]
fn fiber_ladder_failures_are_reported() {
    let ctx = f(2, 1, 2);
    let spec = VarietySpec::new(VarietyKind::QPrime, 2, 2, 1);
    let mut seen_short = false;
    for c in ctx.elements() {
        match fiber_census(&ctx, &spec, &[c], 1, BOUND) {
            Ok(r) => panic!("a one-step ladder cannot confirm: {r:?}"),
            Err(Error::LadderExhausted(1)) => seen_short = true,
            Err(other) => panic!("{other}"),
        }
    }
    assert!(seen_short);
    assert!(matches!(
        fiber_census(&ctx, &spec, &[], 6, BOUND),
        Err(Error::Dimension(_))
    ));
}
