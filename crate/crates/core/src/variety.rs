//! The hypersurfaces `Q: e_n = 1`, `Q′: e_n^{q-1} = 1` and the open set
//! `X(1): e_n ≠ 0` in affine n-space, enumerated over finite fields.
//!
//! "Over the algebraic closure" is approximated by an extension ladder
//! F_{q^m} ⊂ F_{q^{mk}}, k = 1..M.
//!
//! The optional sign variant replaces the defining function `h` of Q or
//! Q′ by `(-1)^{n-1} h`. Only that variant makes `x^{-1}F(x)` land in the
//! Coxeter cell with a unit corner (see [`crate::unipotent`]).

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dickson::{dickson_cofactor, scale, MooreEval};
use crate::error::{Error, Result};
use crate::field::{make_field, Embedding, FieldCtx, FieldSpec, Fe};
use crate::linalg::{
    enumerate_gl, enumerate_sl, fe_display, gl_order_u64, q_integer, Mat, DEFAULT_GROUP_BOUND,
};

/// Default cap on the ladder length M.
pub const DEFAULT_LADDER: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarietyKind {
    Q,
    #[serde(rename = "Qprime")]
    QPrime,
    X1,
}

impl FromStr for VarietyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(Self::Q),
            "Qprime" | "Q'" => Ok(Self::QPrime),
            "X1" => Ok(Self::X1),
            other => Err(Error::InvalidSpec(format!("unknown variety kind {other}"))),
        }
    }
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Q => "Q",
            Self::QPrime => "Qprime",
            Self::X1 => "X1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietySpec {
    pub kind: VarietyKind,
    pub n: usize,
    pub p: u32,
    pub s: u32,
    pub sign_variant: bool,
}

impl VarietySpec {
    pub fn new(kind: VarietyKind, n: usize, p: u32, s: u32) -> Self {
        Self {
            kind,
            n,
            p,
            s,
            sign_variant: false,
        }
    }

    pub fn with_sign_variant(self, sign_variant: bool) -> Self {
        Self {
            sign_variant,
            ..self
        }
    }

    pub fn of_kind(self, kind: VarietyKind) -> Self {
        Self { kind, ..self }
    }

    pub fn field(&self, m: u32) -> FieldSpec {
        FieldSpec::new(self.p, self.s, m)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }

    fn sign_flips(&self) -> bool {
        self.sign_variant && self.n.is_multiple_of(2)
    }

    /// Applies `(-1)^{n-1}` when the sign variant is on.
    pub fn signed(&self, ctx: &FieldCtx, a: Fe) -> Fe {
        if self.sign_flips() {
            ctx.neg(a)
        } else {
            a
        }
    }

    /// Whether a point with Moore determinant `e` lies on the variety.
    pub fn contains_e(&self, ctx: &FieldCtx, e: Fe) -> bool {
        match self.kind {
            VarietyKind::Q => self.signed(ctx, e) == Fe::ONE,
            VarietyKind::QPrime => {
                !e.is_zero() && self.signed(ctx, ctx.pow(e, ctx.q() - 1)) == Fe::ONE
            }
            VarietyKind::X1 => !e.is_zero(),
        }
    }

    pub fn contains(&self, ctx: &FieldCtx, x: &[Fe]) -> bool {
        self.contains_e(ctx, MooreEval::new(x.len()).moore_det(ctx, x))
    }
}

/// Scans `F^n` in lexicographic order, first coordinate most significant,
/// in parallel blocks by first coordinate; returns one accumulator per
/// block, in order.
pub(crate) fn fold_points<A, S, I, J, F>(ctx: &FieldCtx, n: usize, init: I, acc: J, f: F) -> Vec<A>
where
    A: Send,
    I: Fn() -> S + Sync + Send,
    J: Fn() -> A + Sync + Send,
    F: Fn(&mut S, &mut A, &[Fe]) + Sync + Send,
{
    if n == 0 {
        let (mut state, mut a) = (init(), acc());
        f(&mut state, &mut a, &[]);
        return vec![a];
    }
    let size = ctx.size() as u32;
    (0..size)
        .into_par_iter()
        .map_init(&init, |state, first| {
            let mut x = vec![Fe::ZERO; n];
            x[0] = ctx.elem(first);
            let mut a = acc();
            loop {
                f(state, &mut a, &x);
                let mut pos = n;
                let mut advanced = false;
                while pos > 1 {
                    pos -= 1;
                    let next = x[pos].index() + 1;
                    if next < size {
                        x[pos] = ctx.elem(next);
                        advanced = true;
                        break;
                    }
                    x[pos] = Fe::ZERO;
                }
                if !advanced {
                    break;
                }
            }
            a
        })
        .collect()
}

/// The points where `f` returns a value, in lexicographic order.
pub(crate) fn scan_points<T, S, I, F>(ctx: &FieldCtx, n: usize, init: I, f: F) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &[Fe]) -> Option<T> + Sync + Send,
{
    fold_points(ctx, n, init, Vec::new, |state, out, x| out.extend(f(state, x)))
        .into_iter()
        .flatten()
        .collect()
}

pub(crate) fn check_point_bound(ctx: &FieldCtx, n: usize, bound: u64) -> Result<()> {
    let ok = ctx
        .size()
        .checked_pow(n as u32)
        .is_some_and(|total| total <= bound);
    if ok {
        Ok(())
    } else {
        Err(Error::DegreeOverflow {
            p: ctx.p() as u64,
            degree: (ctx.degree() * n) as u32,
            bound,
        })
    }
}

/// All points of the variety over `ctx` (which must be built from the
/// spec's base field).
pub fn enumerate_variety(ctx: &FieldCtx, spec: &VarietySpec, bound: u64) -> Result<Vec<Vec<Fe>>> {
    check_field(ctx, spec)?;
    check_point_bound(ctx, spec.n, bound)?;
    Ok(scan_points(
        ctx,
        spec.n,
        || MooreEval::new(spec.n),
        |eval, x| spec.contains_e(ctx, eval.moore_det(ctx, x)).then(|| x.to_vec()),
    ))
}

fn check_field(ctx: &FieldCtx, spec: &VarietySpec) -> Result<()> {
    let f = ctx.spec();
    if f.p != spec.p || f.s != spec.s {
        return Err(Error::Incompatible(format!(
            "field {f} does not have base {}^{}",
            spec.p, spec.s
        )));
    }
    Ok(())
}

/// Whether the plain and sign-variant definitions cut out the same points.
pub fn sign_variants_coincide(ctx: &FieldCtx, spec: &VarietySpec, bound: u64) -> Result<bool> {
    let plain = enumerate_variety(ctx, &spec.with_sign_variant(false), bound)?;
    let signed = enumerate_variety(ctx, &spec.with_sign_variant(true), bound)?;
    Ok(plain == signed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GroupKind {
    Gl,
    Sl,
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Self::Gl),
            "sl" => Ok(Self::Sl),
            other => Err(Error::InvalidSpec(format!("unknown group {other}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Stabilizer,
    Closure,
    Commutation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub gamma: String,
    pub point: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointOrbitReport {
    pub kind: VarietyKind,
    pub group: GroupKind,
    pub n: usize,
    pub q: u64,
    pub m: u32,
    pub count: usize,
    pub group_order: usize,
    /// Orbit sizes, one per orbit, ordered by the orbit's first point.
    pub orbit_sizes: Vec<usize>,
    pub violations: Vec<Violation>,
    /// Whether the action is claimed free (and so was checked for it).
    pub free_claimed: bool,
    /// Number of `(gx)μ = g(xμ)` instances checked.
    pub commutation_checks: usize,
}

/// Scalars acting on the variety on the right: `μ_{q(n)}` on Q,
/// `μ_{q^n-1}` on Q′ and all units on X(1), intersected with `ctx`.
/// Order bound k of the scalars preserving the variety, `None` for all of
/// F_{q^m}^*.
fn scalar_exponent(spec: &VarietySpec) -> Option<u64> {
    let q = spec.q();
    match spec.kind {
        VarietyKind::Q => Some(q_integer(spec.n as u32, q)),
        VarietyKind::QPrime => Some(q.pow(spec.n as u32) - 1),
        VarietyKind::X1 => None,
    }
}

fn right_scalars(ctx: &FieldCtx, spec: &VarietySpec) -> Vec<Fe> {
    let exponent = scalar_exponent(spec);
    ctx.elements()
        .skip(1)
        .filter(|&t| exponent.is_none_or(|k| ctx.pow(t, k) == Fe::ONE))
        .collect()
}

/// A generator of the cyclic group of right scalars; empty when it is
/// trivial. Linearity of the action makes commuting with the generator
/// equivalent to commuting with the whole group.
fn scalar_generator(ctx: &FieldCtx, spec: &VarietySpec) -> Vec<Fe> {
    let units = ctx.size() - 1;
    let order = scalar_exponent(spec).map_or(units, |k| num_integer::gcd(k, units));
    if order == 1 {
        return Vec::new();
    }
    vec![ctx.pow(ctx.primitive(), units / order)]
}

/// Checks that GL_n(F_q) or SL_n(F_q) preserves the variety, collects
/// orbit sizes, and where freeness holds (Q under SL, Q′ under GL or SL)
/// fails on the first nontrivial stabilizer.
pub fn check_action(
    ctx: &FieldCtx,
    spec: &VarietySpec,
    group: GroupKind,
    bound: u64,
) -> Result<PointOrbitReport> {
    let points = enumerate_variety(ctx, spec, bound)?;
    let elems = match group {
        GroupKind::Gl => enumerate_gl(ctx, spec.n, DEFAULT_GROUP_BOUND)?,
        GroupKind::Sl => enumerate_sl(ctx, spec.n, DEFAULT_GROUP_BOUND)?,
    };
    let free_claimed = matches!(
        (spec.kind, group),
        (VarietyKind::Q, GroupKind::Sl) | (VarietyKind::QPrime, _)
    );
    let index: HashMap<&[Fe], usize> = points
        .iter()
        .enumerate()
        .map(|(i, x)| (x.as_slice(), i))
        .collect();
    let identity = Mat::identity(spec.n);
    let scalars = scalar_generator(ctx, spec);
    let show_point = |x: &[Fe]| {
        let cells: Vec<String> = x.iter().map(|&a| fe_display(ctx, a)).collect();
        format!("({})", cells.join(", "))
    };

    let mut violations = Vec::new();
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut orbit_sizes = Vec::new();
    let mut commutation_checks = 0;
    for (i, x) in points.iter().enumerate() {
        let fresh = orbit_of[i] == usize::MAX;
        let mut orbit = HashSet::new();
        for g in &elems {
            let gx = g.apply(x, ctx);
            match index.get(gx.as_slice()) {
                Some(&j) => {
                    if fresh {
                        orbit.insert(j);
                    }
                }
                None => violations.push(Violation {
                    kind: ViolationKind::Closure,
                    gamma: g.display(ctx),
                    point: show_point(x),
                }),
            }
            if free_claimed && *g != identity && gx == *x {
                return Err(Error::StabilizerViolation {
                    gamma: g.display(ctx),
                    point: show_point(x),
                });
            }
            if !free_claimed && *g != identity && gx == *x {
                violations.push(Violation {
                    kind: ViolationKind::Stabilizer,
                    gamma: g.display(ctx),
                    point: show_point(x),
                });
            }
            for &mu in &scalars {
                let lhs = scale(ctx, mu, &gx);
                let rhs = g.apply(&scale(ctx, mu, x), ctx);
                commutation_checks += 1;
                if lhs != rhs || !index.contains_key(lhs.as_slice()) {
                    violations.push(Violation {
                        kind: ViolationKind::Commutation,
                        gamma: g.display(ctx),
                        point: show_point(x),
                    });
                }
            }
        }
        if fresh {
            let id = orbit_sizes.len();
            orbit_sizes.push(orbit.len());
            for j in orbit {
                orbit_of[j] = id;
            }
        }
    }
    // stabilizer rows are informative for non-free actions; keep the
    // report small by listing each point at most once
    violations.dedup_by(|a, b| a.kind == b.kind && a.point == b.point);
    Ok(PointOrbitReport {
        kind: spec.kind,
        group,
        n: spec.n,
        q: spec.q(),
        m: ctx.spec().m,
        count: points.len(),
        group_order: elems.len(),
        orbit_sizes,
        violations,
        free_claimed,
        commutation_checks,
    })
}

/// The extension fields F_{q^{mk}} over a base F_{q^m}, built on demand.
pub struct Ladder<'a> {
    base: &'a FieldCtx,
    cap: u32,
    steps: BTreeMap<u32, (FieldCtx, Embedding)>,
}

impl<'a> Ladder<'a> {
    pub fn new(base: &'a FieldCtx, cap: u32) -> Self {
        Self {
            base,
            cap,
            steps: BTreeMap::new(),
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// F_{q^{mk}} together with the embedding of the base.
    pub fn step(&mut self, k: u32) -> Result<(&FieldCtx, &Embedding)> {
        if !self.steps.contains_key(&k) {
            let spec = self.base.spec();
            let big = make_field(spec.with_ext(spec.m * k))?;
            let emb = self.base.embed_into(&big)?;
            self.steps.insert(k, (big, emb));
        }
        let (f, e) = &self.steps[&k];
        Ok((f, e))
    }

    pub fn lift(&mut self, k: u32, x: &[Fe]) -> Result<Vec<Fe>> {
        let base = self.base;
        let (big, emb) = self.step(k)?;
        Ok(x.iter().map(|&a| emb.map(base, big, a)).collect())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverEntry {
    pub y: Vec<Vec<u32>>,
    /// Least ladder step with a solution `t`.
    pub first_step: u32,
    /// Least ladder step containing all solutions.
    pub splitting_step: u32,
    /// Number of pairs `(x, t)` over the splitting step.
    pub fiber_size: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub n: usize,
    pub q: u64,
    pub m: u32,
    /// Exponent `k` in `t^k = (target)`; `q(n)` for Q, `q^n - 1` for Q′.
    pub exponent: u64,
    pub entries: Vec<CoverEntry>,
    /// Instances of a fiber pair not related by a root of unity.
    pub torsor_failures: usize,
}

impl CoverReport {
    pub fn all_fibers_full(&self) -> bool {
        self.torsor_failures == 0 && self.entries.iter().all(|e| e.fiber_size == self.exponent)
    }
}

/// For every `y ∈ X(1)(F_{q^m})`, finds `t` up the ladder with
/// `t^{q(n)} = ±e_n(y)`, so that `t^{-1}y ∈ Q`, and checks that the pairs
/// `(x, t)` over `y` form one `μ_{q(n)}`-orbit of size `q(n)`.
pub fn scaling_cover(ctx: &FieldCtx, spec: &VarietySpec, ladder: u32, bound: u64) -> Result<CoverReport> {
    let q = spec.q();
    let exponent = q_integer(spec.n as u32, q);
    let target_spec = spec.of_kind(VarietyKind::Q);
    cover(ctx, &target_spec, exponent, ladder, bound, |ctx, e| spec.signed(ctx, e))
}

/// Like [`scaling_cover`] but from Q′ with `t` modulo `μ_{q^n-1}`: solves
/// `t^{q^n-1} = ±e_n(y)^{q-1}`.
pub fn torsor_cover(ctx: &FieldCtx, spec: &VarietySpec, ladder: u32, bound: u64) -> Result<CoverReport> {
    let q = spec.q();
    let exponent = q.pow(spec.n as u32) - 1;
    let target_spec = spec.of_kind(VarietyKind::QPrime);
    cover(ctx, &target_spec, exponent, ladder, bound, |ctx, e| {
        spec.signed(ctx, ctx.pow(e, q - 1))
    })
}

fn cover(
    ctx: &FieldCtx,
    target_spec: &VarietySpec,
    exponent: u64,
    ladder_cap: u32,
    bound: u64,
    rhs: impl Fn(&FieldCtx, Fe) -> Fe,
) -> Result<CoverReport> {
    let n = target_spec.n;
    let open = enumerate_variety(ctx, &target_spec.of_kind(VarietyKind::X1), bound)?;
    let mut ladder = Ladder::new(ctx, ladder_cap);
    let mut entries = Vec::with_capacity(open.len());
    let mut torsor_failures = 0;
    for y in &open {
        let mut first_step = None;
        let mut split = None;
        for k in 1..=ladder_cap {
            let lifted = ladder.lift(k, y)?;
            let (big, _) = ladder.step(k)?;
            let value = rhs(big, MooreEval::new(n).moore_det(big, &lifted));
            let roots: Vec<Fe> = big
                .elements()
                .skip(1)
                .filter(|&t| big.pow(t, exponent) == value)
                .collect();
            if roots.is_empty() {
                continue;
            }
            first_step.get_or_insert(k);
            if roots.len() as u64 == exponent {
                // every pair (t^{-1}y, t) lies on the target and any two
                // differ by a root of unity of order dividing `exponent`
                let t0_inv = big.inv(roots[0]).expect("unit");
                let x0 = scale(big, t0_inv, &lifted);
                for &t in &roots {
                    let x = scale(big, big.inv(t).expect("unit"), &lifted);
                    let s = big.mul(t0_inv, t);
                    let related = big.pow(s, exponent) == Fe::ONE
                        && scale(big, big.inv(s).expect("unit"), &x0) == x;
                    if !related || !target_spec.contains(big, &x) {
                        torsor_failures += 1;
                    }
                }
                split = Some(k);
                break;
            }
        }
        let (Some(first_step), Some(splitting_step)) = (first_step, split) else {
            return Err(Error::LadderExhausted(ladder_cap));
        };
        entries.push(CoverEntry {
            y: y.iter().map(|&a| ctx.coeffs(a)).collect(),
            first_step,
            splitting_step,
            fiber_size: exponent,
        });
    }
    Ok(CoverReport {
        n,
        q: target_spec.q(),
        m: ctx.spec().m,
        exponent,
        entries,
        torsor_failures,
    })
}

/// `(c_{n,1}(x), ..., c_{n,n-1}(x))` for `x ∈ Q′`.
pub fn quotient_map(ctx: &FieldCtx, spec: &VarietySpec, x: &[Fe]) -> Result<Vec<Fe>> {
    let qprime = spec.of_kind(VarietyKind::QPrime);
    if !qprime.contains(ctx, x) {
        return Err(Error::NotOnVariety);
    }
    Ok(dickson_cofactor(ctx, x)?.upper().to_vec())
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberStep {
    pub step: u32,
    /// Absolute degree of the field over F_q.
    pub ext: u32,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub n: usize,
    pub q: u64,
    pub m: u32,
    pub target: Vec<Vec<u32>>,
    pub steps: Vec<FiberStep>,
    pub stabilized: u64,
    pub group_order: u64,
    /// The stabilized fiber is a single GL_n(F_q)-orbit.
    pub single_orbit: bool,
}

/// Counts the fiber of [`quotient_map`] over `target ∈ F_{q^m}^{n-1}` up the
/// ladder. When Frobenius acts on the fiber as an element of order `k`
/// of GL_n(F_q), the fiber is empty below step `k` and complete from step
/// `k` on, so the count is taken at the first nonempty step `k` and
/// confirmed at step `2k`, the next step containing it.
pub fn fiber_census(
    ctx: &FieldCtx,
    spec: &VarietySpec,
    target: &[Fe],
    ladder_cap: u32,
    bound: u64,
) -> Result<FiberReport> {
    let n = spec.n;
    if target.len() + 1 != n {
        return Err(Error::Dimension(format!(
            "target has {} coordinates, expected {}",
            target.len(),
            n - 1
        )));
    }
    let qprime = spec.of_kind(VarietyKind::QPrime);
    let group_order = gl_order_u64(n as u32, spec.q()).expect("small group");
    let mut ladder = Ladder::new(ctx, ladder_cap);
    let mut steps = Vec::new();
    let mut first: Option<(u32, u64)> = None;
    let mut k = 1;
    let mut stabilized = None;
    while k <= ladder_cap {
        let lifted = ladder.lift(k, target)?;
        let (big, _) = ladder.step(k)?;
        check_point_bound(big, n, bound)?;
        let fiber = fiber_points(big, &qprime, &lifted);
        let count = fiber.len() as u64;
        steps.push(FiberStep {
            step: k,
            ext: big.spec().m,
            count,
        });
        match first {
            None if count > 0 => {
                first = Some((k, count));
                k *= 2;
            }
            None => k += 1,
            Some((_, c0)) => {
                if count != c0 {
                    return Err(Error::FiberSizeMismatch {
                        found: count,
                        expected: c0,
                    });
                }
                stabilized = Some((count, single_orbit(big, n, &fiber)?));
                break;
            }
        }
    }
    let Some((stabilized, single_orbit)) = stabilized else {
        return Err(Error::LadderExhausted(ladder_cap));
    };
    if stabilized != group_order {
        return Err(Error::FiberSizeMismatch {
            found: stabilized,
            expected: group_order,
        });
    }
    Ok(FiberReport {
        n,
        q: spec.q(),
        m: ctx.spec().m,
        target: target.iter().map(|&a| ctx.coeffs(a)).collect(),
        steps,
        stabilized,
        group_order,
        single_orbit,
    })
}

fn fiber_points(ctx: &FieldCtx, qprime: &VarietySpec, target: &[Fe]) -> Vec<Vec<Fe>> {
    let n = qprime.n;
    scan_points(
        ctx,
        n,
        || (MooreEval::new(n), vec![Fe::ZERO; n]),
        |(eval, c), x| {
            if !qprime.contains_e(ctx, eval.moore_det(ctx, x)) {
                return None;
            }
            eval.dickson(ctx, x, c);
            (c[1..] == *target).then(|| x.to_vec())
        },
    )
}

fn single_orbit(ctx: &FieldCtx, n: usize, fiber: &[Vec<Fe>]) -> Result<bool> {
    let Some(x0) = fiber.first() else {
        return Ok(false);
    };
    let orbit: HashSet<Vec<Fe>> = enumerate_gl(ctx, n, DEFAULT_GROUP_BOUND)?
        .iter()
        .map(|g| g.apply(x0, ctx))
        .collect();
    let fiber: HashSet<Vec<Fe>> = fiber.iter().cloned().collect();
    Ok(orbit == fiber)
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsorReport {
    pub n: usize,
    pub q: u64,
    pub m: u32,
    pub qprime_points: usize,
    /// Size of `μ_{q^n-1} ∩ F_{q^m}^*`.
    pub scalar_count: usize,
    /// `(t, x)` with `tx ∉ Q′` or `tx = x`, `t ≠ 1`.
    pub stability_violations: usize,
    pub cover: CoverReport,
}

impl TorsorReport {
    pub fn passed(&self) -> bool {
        self.stability_violations == 0 && self.cover.all_fibers_full()
    }
}

/// Stability of Q′ under `μ_{q^n-1}` and covering of X(1) from Q′.
pub fn torsor_check(ctx: &FieldCtx, spec: &VarietySpec, ladder: u32, bound: u64) -> Result<TorsorReport> {
    let qprime = spec.of_kind(VarietyKind::QPrime);
    let points = enumerate_variety(ctx, &qprime, bound)?;
    let scalars = right_scalars(ctx, &qprime);
    let mut stability_violations = 0;
    for x in &points {
        for &t in &scalars {
            let tx = scale(ctx, t, x);
            if !qprime.contains(ctx, &tx) || (t != Fe::ONE && tx == *x) {
                stability_violations += 1;
            }
        }
    }
    let cover = torsor_cover(ctx, spec, ladder, bound)?;
    Ok(TorsorReport {
        n: spec.n,
        q: spec.q(),
        m: ctx.spec().m,
        qprime_points: points.len(),
        scalar_count: scalars.len(),
        stability_violations,
        cover,
    })
}
