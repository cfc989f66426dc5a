//! Upper unitriangular matrices U*, the subgroup InU* with trivial first
//! row, the twisted action `ρ(u)v = ẇ^{-1} u ẇ · v · F(u)^{-1}` and the
//! last-column normal form of U* modulo ρ(InU*).
//!
//! Indices are 0-based internally and 1-based in displays.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::dickson::{dickson_cofactor, moore_matrix, DicksonVector};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fe};
use crate::json::mat_json;
use crate::linalg::{coxeter_matrix, Mat};

/// `x_{i,j}(a) = 1 + a·e_{i,j}` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootElt {
    pub i: usize,
    pub j: usize,
    pub a: Fe,
}

impl RootElt {
    pub fn new(i: usize, j: usize, a: Fe) -> Self {
        assert!(i < j, "root ({i}, {j}) is not above the diagonal");
        Self { i, j, a }
    }

    pub fn matrix(&self, n: usize) -> Mat {
        root_matrix(n, self.i, self.j, self.a)
    }
}

impl fmt::Display for RootElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{{{},{}}}(#{})", self.i + 1, self.j + 1, self.a.index())
    }
}

pub fn root_matrix(n: usize, i: usize, j: usize, a: Fe) -> Mat {
    let mut m = Mat::identity(n);
    m.set(i, j, a);
    m
}

/// Accepts upper or lower unitriangular matrices.
fn require_unitriangular(m: &Mat) -> Result<()> {
    if m.is_unitriangular() || m.transpose().is_unitriangular() {
        Ok(())
    } else {
        Err(Error::NotUnitriangular)
    }
}

pub fn in_u_star(m: &Mat) -> Result<bool> {
    require_unitriangular(m)?;
    Ok(m.is_unitriangular())
}

/// U* ∩ ad(ẇ)U*: upper unitriangular with trivial first row.
pub fn in_inu(m: &Mat) -> Result<bool> {
    Ok(in_u_star(m)? && (1..m.n()).all(|j| m.get(0, j).is_zero()))
}

/// Inverse of a unitriangular matrix by back substitution.
pub fn unitriangular_inverse(ctx: &FieldCtx, m: &Mat) -> Mat {
    debug_assert!(m.is_unitriangular());
    let n = m.n();
    let mut inv = Mat::identity(n);
    for j in 0..n {
        for i in (0..j).rev() {
            // inv[i][j] = -Σ_{i<k≤j} m[i][k] inv[k][j]
            let mut acc = Fe::ZERO;
            for k in i + 1..=j {
                acc = ctx.add(acc, ctx.mul(m.get(i, k), inv.get(k, j)));
            }
            inv.set(i, j, ctx.neg(acc));
        }
    }
    inv
}

/// `ad(ẇ^{-1})(u) = ẇ^{-1} u ẇ`; sends `x_{i,j}` to `x_{i-1,j-1}`.
pub fn ad_w_inverse(ctx: &FieldCtx, u: &Mat) -> Mat {
    let w = coxeter_matrix(u.n());
    w.transpose().mul(u, ctx).mul(&w, ctx)
}

pub fn rho(ctx: &FieldCtx, u: &Mat, v: &Mat) -> Result<Mat> {
    if !in_inu(u)? {
        return Err(Error::MembershipViolation(format!(
            "{} is not in InU*",
            u.display(ctx)
        )));
    }
    if !in_u_star(v)? {
        return Err(Error::MembershipViolation(format!(
            "{} is not in U*",
            v.display(ctx)
        )));
    }
    let f_inv = unitriangular_inverse(ctx, &u.frobenius(ctx));
    Ok(ad_w_inverse(ctx, u).mul(v, ctx).mul(&f_inv, ctx))
}

/// The unique `b_{i,j}` with `v = ∏ x_{i,j}(b_{i,j})` in row-major root
/// order; zero coefficients are omitted.
pub fn ordered_decompose(ctx: &FieldCtx, v: &Mat) -> Result<Vec<RootElt>> {
    if !in_u_star(v)? {
        return Err(Error::NotUnitriangular);
    }
    let n = v.n();
    let mut w = v.clone();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = w.get(i, j);
            if b.is_zero() {
                continue;
            }
            // left factor x_{i,j}(b); row i of x_{i,j}(-b)·w loses b·row j
            for k in j..n {
                let updated = ctx.sub(w.get(i, k), ctx.mul(b, w.get(j, k)));
                w.set(i, k, updated);
            }
            out.push(RootElt::new(i, j, b));
        }
    }
    debug_assert!(w.is_identity());
    Ok(out)
}

pub fn reconstruct(ctx: &FieldCtx, n: usize, roots: &[RootElt]) -> Mat {
    roots
        .iter()
        .fold(Mat::identity(n), |acc, r| acc.mul(&r.matrix(n), ctx))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    /// Last-column entries `(d_1, ..., d_{n-1})`.
    pub d: Vec<Fe>,
    /// `u ∈ InU*` with `ρ(u)v` equal to the normal form.
    pub transform: Mat,
    pub steps: usize,
}

impl NormalFormResult {
    pub fn matrix(&self) -> Mat {
        let n = self.d.len() + 1;
        let mut m = Mat::identity(n);
        for (i, &d) in self.d.iter().enumerate() {
            m.set(i, n - 1, d);
        }
        m
    }
}

/// Repeatedly clears the minimal nonzero root `(i₀,j₀)` off the last
/// column with `ρ(x_{i₀+1,j₀+1}(-b))`. The minimal such root strictly
/// increases, so at most `(n-1)(n-2)/2` steps occur.
pub fn normal_form(ctx: &FieldCtx, v: &Mat) -> Result<NormalFormResult> {
    let n = v.n();
    let cap = n * n;
    let mut current = v.clone();
    let mut transform = Mat::identity(n);
    let mut steps = 0;
    loop {
        let roots = ordered_decompose(ctx, &current)?;
        let Some(bad) = roots.iter().find(|r| r.j + 1 < n) else {
            break;
        };
        let (i, j) = (bad.i + 1, bad.j + 1);
        if i >= n || j >= n {
            return Err(Error::BoundaryIndex(i + 1, j + 1));
        }
        if steps == cap {
            return Err(Error::NonTermination(cap));
        }
        let u = root_matrix(n, i, j, ctx.neg(bad.a));
        current = rho(ctx, &u, &current)?;
        // ρ is a left action: ρ(u₂)ρ(u₁) = ρ(u₂u₁)
        transform = u.mul(&transform, ctx);
        steps += 1;
    }
    let d = (0..n.saturating_sub(1))
        .map(|i| current.get(i, n - 1))
        .collect();
    Ok(NormalFormResult {
        d,
        transform,
        steps,
    })
}

pub fn orbit_equiv(ctx: &FieldCtx, v1: &Mat, v2: &Mat) -> Result<bool> {
    Ok(normal_form(ctx, v1)?.d == normal_form(ctx, v2)?.d)
}

#[derive(Clone, Debug)]
pub struct Companion {
    /// `x^{-1}F(x)` for the Moore matrix `x`.
    pub lang: Mat,
    /// `ẇ^{-1}x^{-1}F(x)`.
    pub f: Mat,
    pub dickson: DicksonVector,
}

/// Subdiagonal 1s and last column `(-c_{n,0}, ..., -c_{n,n-1})`, from `c`
/// of length n.
pub fn companion_matrix(ctx: &FieldCtx, c: &[Fe]) -> Mat {
    let n = c.len();
    let mut m = Mat::zeros(n);
    for i in 1..n {
        m.set(i, i - 1, Fe::ONE);
    }
    for (i, &ci) in c.iter().enumerate() {
        m.set(i, n - 1, ctx.neg(ci));
    }
    m
}

/// Computes `x^{-1}F(x)` from the Moore matrix, checks it against the
/// companion matrix of the Dickson invariants and forms `f(x)`. The
/// corner of `f(x)` is `-c_{n,0} = (-1)^{n-1}e^{q-1}`, so `f(x) ∈ U*`
/// exactly on the sign-variant Q′.
pub fn dl_companion(ctx: &FieldCtx, x: &[Fe]) -> Result<Companion> {
    let n = x.len();
    let moore = moore_matrix(ctx, x);
    let inv = moore.inverse(ctx).map_err(|err| match err {
        Error::Singular => Error::SingularMoore,
        other => other,
    })?;
    let lang = inv.mul(&moore.frobenius(ctx), ctx);
    let dickson = dickson_cofactor(ctx, x)?;
    let expected = companion_matrix(ctx, &dickson.c);
    if lang != expected {
        return Err(Error::CompanionMismatch {
            expected: expected.display(ctx),
            found: lang.display(ctx),
        });
    }
    let extracted: Vec<Fe> = (0..n).map(|i| ctx.neg(lang.get(i, n - 1))).collect();
    debug_assert_eq!(extracted, dickson.c);
    let f = coxeter_matrix(n).transpose().mul(&lang, ctx);
    Ok(Companion { lang, f, dickson })
}

fn random_elem(ctx: &FieldCtx, rng: &mut impl Rng) -> Fe {
    ctx.elem(rng.gen_range(0..ctx.size() as u32))
}

pub fn random_u_star(ctx: &FieldCtx, n: usize, rng: &mut impl Rng) -> Mat {
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, random_elem(ctx, rng));
        }
    }
    m
}

pub fn random_inu(ctx: &FieldCtx, n: usize, rng: &mut impl Rng) -> Mat {
    let mut m = random_u_star(ctx, n, rng);
    for j in 1..n {
        m.set(0, j, Fe::ZERO);
    }
    m
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CompositionReport {
    pub trials: usize,
    /// Trials with `ρ(u₂)(ρ(u₁)v) = ρ(u₂u₁)v`.
    pub left_law: usize,
    /// Trials with `ρ(u₂)(ρ(u₁)v) = ρ(u₁u₂)v`.
    pub right_law: usize,
}

/// Records which composition law ρ obeys on random triples.
pub fn rho_composition(ctx: &FieldCtx, n: usize, trials: usize, rng: &mut impl Rng) -> Result<CompositionReport> {
    let mut report = CompositionReport {
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let u1 = random_inu(ctx, n, rng);
        let u2 = random_inu(ctx, n, rng);
        let v = random_u_star(ctx, n, rng);
        let twice = rho(ctx, &u2, &rho(ctx, &u1, &v)?)?;
        if twice == rho(ctx, &u2.mul(&u1, ctx), &v)? {
            report.left_law += 1;
        }
        if twice == rho(ctx, &u1.mul(&u2, ctx), &v)? {
            report.right_law += 1;
        }
    }
    Ok(report)
}

/// One seeded normal-form run, JSON-encoded for reports.
#[derive(Clone, Debug, Serialize)]
pub struct NormalFormTrial {
    pub input: serde_json::Value,
    pub d: Vec<Vec<u32>>,
    pub steps: usize,
    pub transform: serde_json::Value,
    /// Normal form of `ρ(u)v` for a random `u ∈ InU*` has the same `d`.
    pub orbit_invariant: bool,
}

/// Random `v ∈ U*` from a ChaCha8 stream seeded with `seed`.
pub fn seeded_trials(ctx: &FieldCtx, n: usize, seed: u64, trials: usize) -> Result<Vec<NormalFormTrial>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let v = random_u_star(ctx, n, &mut rng);
            let u = random_inu(ctx, n, &mut rng);
            let nf = normal_form(ctx, &v)?;
            let moved = normal_form(ctx, &rho(ctx, &u, &v)?)?;
            Ok(NormalFormTrial {
                input: mat_json(ctx, &v),
                d: nf.d.iter().map(|&a| ctx.coeffs(a)).collect(),
                steps: nf.steps,
                transform: mat_json(ctx, &nf.transform),
                orbit_invariant: moved.d == nf.d,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::dickson::dickson_by_product;
    use crate::field::{make_field, FieldSpec};
    use crate::linalg::{enumerate_gl, DEFAULT_GROUP_BOUND};
    use crate::variety::{enumerate_variety, VarietyKind, VarietySpec};

    fn f(p: u32, s: u32, m: u32) -> FieldCtx {
        make_field(FieldSpec::new(p, s, m)).unwrap()
    }

    fn commutator(ctx: &FieldCtx, a: &Mat, b: &Mat) -> Mat {
        let ai = unitriangular_inverse(ctx, a);
        let bi = unitriangular_inverse(ctx, b);
        a.mul(b, ctx).mul(&ai, ctx).mul(&bi, ctx)
    }

    #[test]
    fn memberships() {
        let ctx = f(3, 1, 1);
        let a = Fe::ONE;
        let id = Mat::identity(3);
        assert_eq!((in_u_star(&id), in_inu(&id)), (Ok(true), Ok(true)));
        let x12 = root_matrix(3, 0, 1, a);
        assert_eq!((in_u_star(&x12), in_inu(&x12)), (Ok(true), Ok(false)));
        let x23 = root_matrix(3, 1, 2, a);
        assert_eq!((in_u_star(&x23), in_inu(&x23)), (Ok(true), Ok(true)));
        assert_eq!(in_u_star(&x12.transpose()), Ok(false));
        let two = ctx.from_int(2);
        assert_eq!(
            in_u_star(&Mat::diagonal(&[two, Fe::ONE, Fe::ONE])),
            Err(Error::NotUnitriangular)
        );
    }

    #[test]
    fn root_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, s) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let ctx = f(p, s, 1);
            for n in 2..=4 {
                let roots: Vec<(usize, usize)> =
                    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
                for &(i, j) in &roots {
                    for &(k, l) in &roots {
                        let a = random_elem(&ctx, &mut rng);
                        let b = random_elem(&ctx, &mut rng);
                        let xa = root_matrix(n, i, j, a);
                        let xb = root_matrix(n, i, j, b);
                        assert_eq!(xa.mul(&xb, &ctx), root_matrix(n, i, j, ctx.add(a, b)));
                        let c = commutator(&ctx, &xa, &root_matrix(n, k, l, b));
                        let expected = if j == k {
                            root_matrix(n, i, l, ctx.mul(a, b))
                        } else if l == i {
                            // the reversed pattern: [x_{i,j}(a), x_{k,i}(b)] = x_{k,j}(-ab)
                            root_matrix(n, k, j, ctx.neg(ctx.mul(a, b)))
                        } else {
                            Mat::identity(n)
                        };
                        assert_eq!(c, expected, "({i},{j}) ({k},{l}) over {}", ctx.spec());
                    }
                }
            }
        }
    }

    #[test]
    fn rho_on_root_elements() {
        let ctx = f(3, 1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 4;
        for i in 1..n {
            for j in i + 1..n {
                for (k, l) in [(0, 1), (1, 3), (0, 3), (2, 3)] {
                    let a = random_elem(&ctx, &mut rng);
                    let b = random_elem(&ctx, &mut rng);
                    let lhs = rho(&ctx, &root_matrix(n, i, j, a), &root_matrix(n, k, l, b)).unwrap();
                    let rhs = root_matrix(n, i - 1, j - 1, a)
                        .mul(&root_matrix(n, k, l, b), &ctx)
                        .mul(&root_matrix(n, i, j, ctx.neg(ctx.frobenius_q(a))), &ctx);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let v = random_u_star(&ctx, n, &mut rng);
        assert_eq!(rho(&ctx, &Mat::identity(n), &v).unwrap(), v);
        assert!(matches!(
            rho(&ctx, &root_matrix(n, 0, 1, Fe::ONE), &v),
            Err(Error::MembershipViolation(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        let ctx = f(2, 1, 3);
        assert!(ordered_decompose(&ctx, &Mat::identity(4)).unwrap().is_empty());
        let a = ctx.elem(3);
        let b = ctx.elem(5);
        let single = root_matrix(4, 1, 3, a);
        assert_eq!(ordered_decompose(&ctx, &single).unwrap(), vec![RootElt::new(1, 3, a)]);
        let x12 = root_matrix(4, 0, 1, a);
        let x34 = root_matrix(4, 2, 3, b);
        let one = ordered_decompose(&ctx, &x12.mul(&x34, &ctx)).unwrap();
        let other = ordered_decompose(&ctx, &x34.mul(&x12, &ctx)).unwrap();
        assert_eq!(one, other);
        assert_eq!(one, vec![RootElt::new(0, 1, a), RootElt::new(2, 3, b)]);
    }

    #[test]
    fn decompose_round_trip() {
        let ctx = f(2, 1, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..200 {
                let v = random_u_star(&ctx, n, &mut rng);
                let roots = ordered_decompose(&ctx, &v).unwrap();
                assert_eq!(reconstruct(&ctx, n, &roots), v);
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let ctx = f(3, 1, 2);
        let id = normal_form(&ctx, &Mat::identity(4)).unwrap();
        assert_eq!((id.d, id.steps), (vec![Fe::ZERO; 3], 0));
        assert!(id.transform.is_identity());
        let mut last = Mat::identity(4);
        last.set(0, 3, ctx.elem(4));
        last.set(2, 3, ctx.elem(7));
        let nf = normal_form(&ctx, &last).unwrap();
        assert_eq!((nf.matrix(), nf.steps), (last, 0));
    }

    #[test]
    fn normal_form_is_invariant_and_verifiable() {
        let ctx = f(2, 1, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            for _ in 0..150 {
                let v = random_u_star(&ctx, n, &mut rng);
                let nf = normal_form(&ctx, &v).unwrap();
                assert!(nf.steps <= (n - 1) * (n - 2) / 2);
                assert!(in_inu(&nf.transform).unwrap());
                assert_eq!(rho(&ctx, &nf.transform, &v).unwrap(), nf.matrix());
                assert_eq!(normal_form(&ctx, &nf.matrix()).unwrap().steps, 0);
                let u = random_inu(&ctx, n, &mut rng);
                let moved = rho(&ctx, &u, &v).unwrap();
                assert_eq!(normal_form(&ctx, &moved).unwrap().d, nf.d);
            }
        }
    }

    #[test]
    fn composition_is_a_left_action() {
        let ctx = f(3, 1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let report = rho_composition(&ctx, 4, 100, &mut rng).unwrap();
        assert_eq!(report.left_law, 100);
        assert!(report.right_law < 100);
    }

    #[test]
    fn companion_over_f4() {
        let ctx = f(2, 1, 2);
        let w = ctx.from_coeffs(&[0, 1]).unwrap();
        let comp = dl_companion(&ctx, &[Fe::ONE, w]).unwrap();
        let swap = Mat::from_rows(vec![vec![Fe::ZERO, Fe::ONE], vec![Fe::ONE, Fe::ZERO]]).unwrap();
        assert_eq!(comp.lang, swap);
        assert_eq!(comp.dickson.c, vec![Fe::ONE, Fe::ZERO]);
        assert!(comp.f.is_identity());
        assert_eq!(dl_companion(&ctx, &[Fe::ONE, Fe::ONE]).unwrap_err(), Error::SingularMoore);
    }

    #[test]
    fn companion_matches_dickson_everywhere() {
        for (p, m, n) in [(2, 2, 2), (3, 2, 2), (2, 3, 3), (3, 3, 3), (2, 3, 2)] {
            let ctx = f(p, 1, m);
            let spec = VarietySpec::new(VarietyKind::X1, n, p, 1);
            for x in enumerate_variety(&ctx, &spec, 1 << 24).unwrap() {
                let comp = dl_companion(&ctx, &x).unwrap();
                assert_eq!(comp.dickson, dickson_by_product(&ctx, &x, 1 << 20).unwrap());
                let corner = comp.f.get(n - 1, n - 1);
                let on_signed = spec.of_kind(VarietyKind::QPrime).with_sign_variant(true).contains(&ctx, &x);
                assert_eq!(in_u_star(&comp.f).unwrap_or(false), on_signed);
                assert_eq!(corner == Fe::ONE, on_signed);
            }
        }
    }

    #[test]
    fn f_separates_orbits_on_qprime() {
        for (p, m) in [(2, 2), (3, 2), (2, 4)] {
            let ctx = f(p, 1, m);
            let spec = VarietySpec::new(VarietyKind::QPrime, 2, p, 1).with_sign_variant(true);
            let points = enumerate_variety(&ctx, &spec, 1 << 24).unwrap();
            let group = enumerate_gl(&ctx, 2, DEFAULT_GROUP_BOUND).unwrap();
            let mut orbit_id: HashMap<Vec<Fe>, usize> = HashMap::new();
            for x in &points {
                if orbit_id.contains_key(x) {
                    continue;
                }
                let id = orbit_id.len();
                for g in &group {
                    orbit_id.entry(g.apply(x, &ctx)).or_insert(id);
                }
            }
            let forms: Vec<Mat> = points.iter().map(|x| dl_companion(&ctx, x).unwrap().f).collect();
            for (a, fa) in points.iter().zip(&forms) {
                for (b, fb) in points.iter().zip(&forms) {
                    assert_eq!(
                        orbit_equiv(&ctx, fa, fb).unwrap(),
                        orbit_id[a] == orbit_id[b]
                    );
                }
            }
        }
    }
}
