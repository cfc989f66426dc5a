//! Named verification checks with time budgets. Each check exercises one
//! claim exhaustively or on seeded samples and reports pass/fail with
//! enough detail to reproduce a failure.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::dickson::{dickson_by_product, dickson_vector, MooreEval};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldCtx, FieldSpec, Fe};
use crate::json::{mat_json, point_json};
use crate::linalg::{
    enumerate_gl, enumerate_gl_over, lang_map, torus_fixed, PermWord, TorusVariant,
    DEFAULT_GROUP_BOUND,
};
use crate::presentations::{dickson_rank_check, inductive_series, root_identity_check};
use crate::strata::census;
use crate::unipotent::{dl_companion, in_inu, normal_form, random_inu, random_u_star, rho};
use crate::variety::{
    check_action, enumerate_variety, fiber_census, GroupKind, VarietyKind, VarietySpec,
};

/// Knobs shared by all checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    /// Seeded samples per case for randomized checks.
    pub trials: usize,
    /// Cap on enumerated points.
    pub bound: u64,
    /// Extension ladder length for fiber censuses.
    pub ladder: u32,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            trials: 1000,
            bound: 1 << 24,
            ladder: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub claim: String,
    pub params: Value,
    pub pass: bool,
    pub summary: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// Excluded from serialized reports so equal configs give equal bytes.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// What a check body returns: the verdict plus report fields.
struct Outcome {
    pass: bool,
    params: Value,
    summary: Value,
    witness: Option<Value>,
}

pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    pub time_limit: Duration,
    run: fn(&CheckConfig) -> Result<Outcome>,
}

impl Check {
    /// Runs the check; module errors become failed reports.
    pub fn run(&self, config: &CheckConfig) -> CheckReport {
        let start = Instant::now();
        let outcome = (self.run)(config);
        let elapsed = start.elapsed();
        let (pass, params, summary, witness) = match outcome {
            Ok(o) => (o.pass, o.params, o.summary, o.witness),
            Err(err) => (false, Value::Null, Value::Null, Some(json!({ "error": err.to_string() }))),
        };
        CheckReport {
            id: self.id.to_string(),
            claim: self.claim.to_string(),
            params,
            pass,
            summary,
            witness,
            elapsed,
        }
    }
}

/// The desk-scale verification profile.
pub fn desk_checks() -> Vec<Check> {
    vec![
        Check {
            id: "q-no-base-points",
            claim: "Q has no points over the base field F_q",
            time_limit: Duration::from_secs(1),
            run: q_no_base_points,
        },
        Check {
            id: "companion-identity",
            claim: "x^{-1}F(x) is the companion matrix of the Dickson invariants at x",
            time_limit: Duration::from_secs(30),
            run: companion_identity,
        },
        Check {
            id: "dickson-invariance",
            claim: "c_{n,i}(gx) = c_{n,i}(x) and e(gx) = det(g)e(x) for g in GL_n(F_q)",
            time_limit: Duration::from_secs(60),
            run: dickson_invariance,
        },
        Check {
            id: "strata-census",
            claim: "corank-i points number gauss(n,i,q) * prod_{j<n-i} (q^m - q^j)",
            time_limit: Duration::from_secs(60),
            run: strata_census,
        },
        Check {
            id: "rank-ledger",
            claim: "the Poincare-series ratio over the Dickson algebra evaluates to |SL_n(F_q)|",
            time_limit: Duration::from_secs(1),
            run: rank_ledger,
        },
        Check {
            id: "series-recurrence",
            claim: "the stratification recurrence reproduces the GL_n cohomology series",
            time_limit: Duration::from_secs(1),
            run: series_recurrence,
        },
        Check {
            id: "root-identity",
            claim: "prod_{i<r} (X - q^i t) = X^r - t^r over Z/ell, and its block products",
            time_limit: Duration::from_secs(1),
            run: root_identity,
        },
        Check {
            id: "free-action-fibers",
            claim: "SL_n(F_q) acts freely on Q, GL_n(F_q) freely on Q', fibers of Q' -> A^{n-1} are GL_n(F_q)-torsors",
            time_limit: Duration::from_secs(120),
            run: free_action_fibers,
        },
        Check {
            id: "normal-form",
            claim: "every rho(InU*)-orbit in U* has a unique last-column representative",
            time_limit: Duration::from_secs(30),
            run: normal_form_check,
        },
        Check {
            id: "torus-orders",
            claim: "|T(w)^F| = prod (q^{r_j} - 1), and (q^n - 1)/(q - 1) for SL with w an n-cycle",
            time_limit: Duration::from_secs(10),
            run: torus_orders,
        },
        Check {
            id: "lang-map",
            claim: "the Lang map on GL_2(F_4) has kernel GL_2(F_2) and is left GL_2(F_2)-invariant",
            time_limit: Duration::from_secs(5),
            run: lang_map_check,
        },
    ]
}

pub fn run_desk_profile(config: &CheckConfig) -> Vec<CheckReport> {
    desk_checks().iter().map(|c| c.run(config)).collect()
}

fn field(p: u32, s: u32, m: u32) -> Result<FieldCtx> {
    make_field(FieldSpec::new(p, s, m))
}

fn q_no_base_points(config: &CheckConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut pass = true;
    for (n, p) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let ctx = field(p, 1, 1)?;
        let spec = VarietySpec::new(VarietyKind::Q, n, p, 1);
        let count = enumerate_variety(&ctx, &spec, config.bound)?.len();
        let signed = enumerate_variety(&ctx, &spec.with_sign_variant(true), config.bound)?.len();
        pass &= count == 0 && signed == 0;
        rows.push(json!({ "n": n, "q": p, "count": count, "sign_variant_count": signed }));
    }
    Ok(Outcome {
        pass,
        params: json!({ "cases": [[2, 2], [2, 3], [3, 2], [3, 3]] }),
        summary: json!(rows),
        witness: None,
    })
}

fn companion_identity(config: &CheckConfig) -> Result<Outcome> {
    let mut cases: Vec<(usize, u32, u32)> = (1..=4).map(|m| (2, 2, m)).collect();
    // n = 3 over F_2 and F_4 has no independent points; F_8 is added so
    // the n = 3 identity is exercised at all
    cases.extend([(3, 2, 1), (3, 2, 2), (3, 2, 3), (2, 3, 1), (2, 3, 2)]);
    let mut rows = Vec::new();
    let mut failures = 0usize;
    let mut witness = None;
    for &(n, p, m) in &cases {
        let ctx = field(p, 1, m)?;
        let spec = VarietySpec::new(VarietyKind::X1, n, p, 1);
        let points = enumerate_variety(&ctx, &spec, config.bound)?;
        let mut checked = 0;
        for x in &points {
            let ok = match dl_companion(&ctx, x) {
                Ok(comp) => comp.dickson == dickson_by_product(&ctx, x, config.bound)?,
                Err(Error::CompanionMismatch { .. }) => false,
                Err(other) => return Err(other),
            };
            checked += 1;
            if !ok {
                failures += 1;
                witness.get_or_insert_with(|| json!({ "field": ctx.spec().to_string(), "x": point_json(&ctx, x) }));
            }
        }
        rows.push(json!({ "n": n, "q": p, "m": m, "points": checked }));
    }
    Ok(Outcome {
        pass: failures == 0,
        params: json!({ "cases": cases }),
        summary: json!({ "cases": rows, "failures": failures }),
        witness,
    })
}

fn dickson_invariance(config: &CheckConfig) -> Result<Outcome> {
    // sample fields large enough to contain F_q-independent tuples
    let cases = [(2usize, 2u32, 3u32), (2, 3, 3), (3, 2, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    let mut failures = 0usize;
    let mut witness = None;
    for &(n, p, m) in &cases {
        let ctx = field(p, 1, m)?;
        let group = enumerate_gl(&ctx, n, DEFAULT_GROUP_BOUND)?;
        let mut eval = MooreEval::new(n);
        let mut independent = 0;
        for _ in 0..config.trials {
            let x: Vec<Fe> = (0..n)
                .map(|_| ctx.elem(rng.gen_range(0..ctx.size() as u32)))
                .collect();
            let base = dickson_vector(&ctx, &x, config.bound)?;
            if !base.e.is_zero() {
                independent += 1;
            }
            for g in &group {
                let gx = g.apply(&x, &ctx);
                let moved = dickson_vector(&ctx, &gx, config.bound)?;
                let e_ok = eval.moore_det(&ctx, &gx) == ctx.mul(g.det(&ctx), base.e);
                if moved.c != base.c || !e_ok {
                    failures += 1;
                    witness.get_or_insert_with(|| {
                        json!({ "x": point_json(&ctx, &x), "g": mat_json(&ctx, g) })
                    });
                }
            }
        }
        rows.push(json!({
            "n": n, "q": p, "m": m, "group_order": group.len(),
            "samples": config.trials, "independent_samples": independent,
        }));
    }
    Ok(Outcome {
        pass: failures == 0,
        params: json!({ "cases": cases, "seed": config.seed, "trials": config.trials }),
        summary: json!({ "cases": rows, "failures": failures }),
        witness,
    })
}

fn strata_census(_config: &CheckConfig) -> Result<Outcome> {
    let bound = 1 << 20;
    let mut rows = Vec::new();
    let mut pass = true;
    for p in [2u32, 3] {
        for n in 1..=3usize {
            for m in 1..=3u32 {
                let ctx = field(p, 1, m)?;
                if ctx.size().pow(n as u32) > bound {
                    continue;
                }
                let c = census(&ctx, n, bound)?;
                pass &= c.pass;
                rows.push(c);
            }
        }
    }
    Ok(Outcome {
        pass,
        params: json!({ "n_max": 3, "q": [2, 3], "m_max": 3, "bound": bound }),
        summary: json!(rows),
        witness: None,
    })
}

fn rank_ledger(_config: &CheckConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut pass = true;
    for q in [2u64, 3, 4] {
        for n in 1..=5u32 {
            let check = dickson_rank_check(n, q);
            pass &= check.pass;
            rows.push(json!({ "n": n, "q": q, "computed": check.computed, "expected": check.expected }));
        }
    }
    Ok(Outcome {
        pass,
        params: json!({ "n_max": 5, "q": [2, 3, 4] }),
        summary: json!(rows),
        witness: None,
    })
}

fn series_recurrence(_config: &CheckConfig) -> Result<Outcome> {
    let degree = 40;
    let mut rows = Vec::new();
    let mut pass = true;
    for (q, ell) in [(2u64, 3u64), (2, 7), (4, 3), (3, 13)] {
        for n in 1..=6u32 {
            let s = inductive_series(n, q, ell, degree)?;
            pass &= s.pass;
            rows.push(json!({ "n": n, "q": q, "ell": ell, "r": s.r, "pass": s.pass }));
        }
    }
    Ok(Outcome {
        pass,
        params: json!({ "degree": degree, "pairs": [[2, 3], [2, 7], [4, 3], [3, 13]], "n_max": 6 }),
        summary: json!(rows),
        witness: None,
    })
}

fn root_identity(_config: &CheckConfig) -> Result<Outcome> {
    let mut checked = 0;
    let mut failed = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for ell in [2u64, 3, 5, 7, 11, 13] {
            if q % ell == 0 {
                continue;
            }
            checked += 1;
            if !root_identity_check(q, ell)?.pass {
                failed.push((q, ell));
            }
        }
    }
    Ok(Outcome {
        pass: failed.is_empty(),
        params: json!({ "q_max": 9, "ell_max": 13 }),
        summary: json!({ "pairs_checked": checked }),
        witness: (!failed.is_empty()).then(|| json!(failed)),
    })
}

fn free_action_fibers(config: &CheckConfig) -> Result<Outcome> {
    let mut actions = Vec::new();
    let mut pass = true;
    let mut cases: Vec<(usize, u32)> = (1..=4).map(|m| (2, m)).collect();
    // Q(F_4) is empty for n = 3, so F_8 is added as well
    cases.extend([(3, 2), (3, 3)]);
    for &(n, m) in &cases {
        let ctx = field(2, 1, m)?;
        for (kind, group) in [(VarietyKind::Q, GroupKind::Sl), (VarietyKind::QPrime, GroupKind::Gl)] {
            let spec = VarietySpec::new(kind, n, 2, 1);
            // a nontrivial stabilizer surfaces as an error
            let report = check_action(&ctx, &spec, group, config.bound)?;
            pass &= report.violations.is_empty()
                && report.orbit_sizes.iter().all(|&s| s == report.group_order);
            actions.push(json!({
                "kind": kind, "group": group, "n": n, "m": m,
                "points": report.count, "orbits": report.orbit_sizes.len(),
            }));
        }
    }
    let mut fibers = Vec::new();
    for m in [1u32, 2] {
        let ctx = field(2, 1, m)?;
        let spec = VarietySpec::new(VarietyKind::QPrime, 2, 2, 1);
        for c in ctx.elements() {
            let report = fiber_census(&ctx, &spec, &[c], config.ladder, config.bound)?;
            pass &= report.stabilized == report.group_order && report.single_orbit;
            fibers.push(json!({
                "base_ext": m, "target": ctx.coeffs(c),
                "steps": report.steps, "stabilized": report.stabilized,
            }));
        }
    }
    Ok(Outcome {
        pass,
        params: json!({ "actions": cases, "fiber_bases": ["2^1:1", "2^1:2"], "ladder": config.ladder }),
        summary: json!({ "actions": actions, "fibers": fibers }),
        witness: None,
    })
}

fn normal_form_check(config: &CheckConfig) -> Result<Outcome> {
    let fields = [(2u32, 1u32), (2, 2), (3, 1), (2, 3), (3, 2), (2, 4), (5, 1), (7, 1), (2, 6)];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut violations = 0usize;
    let mut witness = None;
    let mut max_steps = 0;
    for n in [3usize, 4] {
        let contexts: Vec<FieldCtx> = fields
            .iter()
            .map(|&(p, m)| field(p, 1, m))
            .collect::<Result<_>>()?;
        for t in 0..config.trials {
            let ctx = &contexts[t % contexts.len()];
            let v = random_u_star(ctx, n, &mut rng);
            let nf = normal_form(ctx, &v)?;
            let form = nf.matrix();
            let again = normal_form(ctx, &form)?;
            let u = random_inu(ctx, n, &mut rng);
            let moved = normal_form(ctx, &rho(ctx, &u, &v)?)?;
            max_steps = max_steps.max(nf.steps);
            let ok = again.steps == 0
                && again.d == nf.d
                && in_inu(&nf.transform)?
                && rho(ctx, &nf.transform, &v)? == form
                && moved.d == nf.d
                && nf.steps <= (n - 1) * (n - 2) / 2;
            if !ok {
                violations += 1;
                witness.get_or_insert_with(|| json!({ "field": ctx.spec().to_string(), "v": mat_json(ctx, &v) }));
            }
        }
    }
    Ok(Outcome {
        pass: violations == 0,
        params: json!({ "n": [3, 4], "fields": fields.iter().map(|&(p, m)| format!("{p}^1:{m}")).collect::<Vec<_>>(), "trials_per_n": config.trials, "seed": config.seed }),
        summary: json!({ "violations": violations, "max_steps": max_steps }),
        witness,
    })
}

fn torus_orders(config: &CheckConfig) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut pass = true;
    for p in [2u32, 3] {
        for n in 1..=3usize {
            let mut variants = vec![];
            for w in PermWord::all(n) {
                variants.push((w, TorusVariant::Gl));
            }
            variants.push((PermWord::coxeter(n), TorusVariant::Sl));
            for (w, variant) in variants {
                let r = torus_fixed(&w, p, 1, variant, config.bound)?;
                pass &= r.consistent();
                rows.push(json!({
                    "w": w.to_string(), "variant": variant, "q": p,
                    "order": r.order, "counted": r.counted,
                }));
            }
        }
    }
    Ok(Outcome {
        pass,
        params: json!({ "n_max": 3, "q": [2, 3] }),
        summary: json!(rows),
        witness: None,
    })
}

fn lang_map_check(_config: &CheckConfig) -> Result<Outcome> {
    let ctx = field(2, 1, 2)?;
    let all: Vec<Fe> = ctx.elements().collect();
    let big = enumerate_gl_over(&ctx, 2, &all);
    let small = enumerate_gl(&ctx, 2, DEFAULT_GROUP_BOUND)?;
    let small_set: HashSet<_> = small.iter().cloned().collect();
    let mut kernel = HashSet::new();
    let mut invariance_failures = 0;
    for g in &big {
        let l = lang_map(&ctx, g)?;
        if l.is_identity() {
            kernel.insert(g.clone());
        }
        for gamma in &small {
            if lang_map(&ctx, &gamma.mul(g, &ctx))? != l {
                invariance_failures += 1;
            }
        }
    }
    let pass = big.len() == 180 && kernel == small_set && invariance_failures == 0;
    Ok(Outcome {
        pass,
        params: json!({ "field": "2^1:2", "n": 2 }),
        summary: json!({
            "gl2_f4": big.len(), "kernel": kernel.len(), "gl2_f2": small.len(),
            "invariance_failures": invariance_failures,
        }),
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let checks = desk_checks();
        let ids: HashSet<_> = checks.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), checks.len());
        assert_eq!(checks.len(), 11);
    }

    #[test]
    fn cheap_checks_pass() {
        let config = CheckConfig::default();
        for check in desk_checks() {
            if ["q-no-base-points", "rank-ledger", "series-recurrence", "root-identity", "lang-map"]
                .contains(&check.id)
            {
                let report = check.run(&config);
                assert!(report.pass, "{}: {:?}", report.id, report.witness);
            }
        }
    }

    #[test]
    fn errors_become_failed_reports() {
        let check = Check {
            id: "broken",
            claim: "always errors",
            time_limit: Duration::from_secs(1),
            run: |_| Err(Error::NotOnVariety),
        };
        let report = check.run(&CheckConfig::default());
        assert!(!report.pass);
        assert!(report.witness.is_some());
    }
}
