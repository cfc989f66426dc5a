//! Strata of the F_q-hyperplane arrangement in affine n-space.
//!
//! `F(i)` is the set of points whose coordinates satisfy at least `i`
//! independent F_q-linear relations, so `F(0) ⊃ F(1) ⊃ ... ⊃ F(n) = {0}`
//! and `X(i)` is the complement of `F(i)`. Points are sorted by corank,
//! the dimension of the relation space.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::Result;
use crate::field::{FieldCtx, Fe};
use crate::linalg::{all_vectors, gl_order};
use crate::variety::{check_point_bound, fold_points};

/// `dim_{F_q} {λ ∈ F_q^n : Σ λ_i x_i = 0}` by scanning every λ.
pub fn corank_bruteforce(ctx: &FieldCtx, x: &[Fe]) -> usize {
    let scalars = ctx.base_subfield();
    let kernel = all_vectors(&scalars, x.len())
        .iter()
        .filter(|lambda| {
            lambda
                .iter()
                .zip(x)
                .fold(Fe::ZERO, |acc, (&l, &xi)| ctx.add(acc, ctx.mul(l, xi)))
                .is_zero()
        })
        .count() as u64;
    let mut dim = 0;
    let mut size = 1;
    while size < kernel {
        size *= ctx.q();
        dim += 1;
    }
    debug_assert_eq!(size, kernel);
    dim
}

/// `n - dim_{F_q} span(x_i)`. The F_q-span of the `x_i` is the F_p-span
/// of `ζ^a x_i` for a generator ζ of F_q over F_p, `a < s`, whose F_p-rank
/// is `s` times the F_q-rank.
pub fn corank_linear(ctx: &FieldCtx, x: &[Fe]) -> usize {
    let s = ctx.spec().s as usize;
    let zeta = ctx.base_generator();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(x.len() * s);
    for &xi in x {
        let mut v = xi;
        for _ in 0..s {
            rows.push(ctx.coeffs(v));
            v = ctx.mul(v, zeta);
        }
    }
    let rank = rank_mod_p(&mut rows, ctx.p());
    debug_assert_eq!(rank % s, 0);
    x.len() - rank / s
}

fn rank_mod_p(rows: &mut [Vec<u32>], p: u32) -> usize {
    let p = p as u64;
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col] as u64, p);
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col] as u64 * inv % p;
            for c in col..cols {
                let sub = factor * rows[rank][c] as u64 % p;
                rows[r][c] = ((rows[r][c] as u64 + p - sub) % p) as u32;
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime and a ≠ 0
    let mut result = 1;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Brute force for `q^n ≤ 64`, linear algebra otherwise.
pub fn corank(ctx: &FieldCtx, x: &[Fe]) -> usize {
    if ctx.q().checked_pow(x.len() as u32).is_some_and(|v| v <= 64) {
        corank_bruteforce(ctx, x)
    } else {
        corank_linear(ctx, x)
    }
}

/// Number of `i`-dimensional subspaces of F_q^n, as the index
/// `|GL_n| / (|GL_i| |GL_{n-i}| q^{i(n-i)})`.
pub fn gauss_binomial(n: u32, i: u32, q: u64) -> BigUint {
    assert!(i <= n);
    let parabolic = gl_order(i, q) * gl_order(n - i, q) * BigUint::from(q).pow(i * (n - i));
    let index = gl_order(n, q) / &parabolic;
    debug_assert_eq!(&index * parabolic, gl_order(n, q));
    index
}

/// `gauss(n, i, q) · ∏_{j<n-i} (q^m - q^j)`; zero once `n - i > m`.
pub fn predicted_count(n: u32, i: u32, q: u64, m: u32) -> BigUint {
    let qm = BigUint::from(q).pow(m);
    (0..n - i).fold(gauss_binomial(n, i, q), |acc, j| {
        let qj = BigUint::from(q).pow(j);
        if qj > qm {
            BigUint::default()
        } else {
            acc * (&qm - qj)
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StrataCensus {
    pub n: usize,
    pub q: u64,
    pub m: u32,
    /// Points of corank exactly `i`, `i = 0..=n`.
    pub counts: Vec<u64>,
    pub predictions: Vec<u64>,
    /// Points where the two corank algorithms disagree.
    pub disagreements: u64,
    pub pass: bool,
}

/// Exhaustive corank histogram of `F_{q^m}^n`, with both corank
/// algorithms run on every point.
pub fn census(ctx: &FieldCtx, n: usize, bound: u64) -> Result<StrataCensus> {
    check_point_bound(ctx, n, bound)?;
    let blocks = fold_points(
        ctx,
        n,
        || (),
        || (vec![0u64; n + 1], 0u64),
        |_, (counts, bad), x| {
            let c = corank_linear(ctx, x);
            if c != corank_bruteforce(ctx, x) {
                *bad += 1;
            }
            counts[c] += 1;
        },
    );
    let mut counts = vec![0u64; n + 1];
    let mut disagreements = 0;
    for (block, bad) in blocks {
        for (total, c) in counts.iter_mut().zip(block) {
            *total += c;
        }
        disagreements += bad;
    }
    let (q, m) = (ctx.q(), ctx.spec().m);
    let predictions: Vec<u64> = (0..=n as u32)
        .map(|i| {
            predicted_count(n as u32, i, q, m)
                .to_u64()
                .expect("bounded by the point count")
        })
        .collect();
    let total: u64 = counts.iter().sum();
    let pass = counts == predictions && disagreements == 0 && total == ctx.size().pow(n as u32);
    Ok(StrataCensus {
        n,
        q,
        m,
        counts,
        predictions,
        disagreements,
        pass,
    })
}

/// The textbook q-binomial `∏_{k<i} (q^{n-k} - 1)/(q^{k+1} - 1)`.
pub fn q_binomial_product(n: u32, i: u32, q: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 0..i {
        num *= BigUint::from(q).pow(n - k) - 1u32;
        den *= BigUint::from(q).pow(k + 1) - 1u32;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, FieldSpec};

    fn f(p: u32, s: u32, m: u32) -> FieldCtx {
        make_field(FieldSpec::new(p, s, m)).unwrap()
    }

    #[test]
    fn corank_examples() {
        let ctx = f(2, 1, 2);
        assert_eq!(corank(&ctx, &[Fe::ZERO, Fe::ZERO]), 2);
        assert_eq!(corank(&ctx, &[Fe::ONE, Fe::ONE]), 1);
        let w = ctx.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(corank(&ctx, &[Fe::ONE, w]), 0);
        let f9 = f(3, 2, 2);
        let zeta = f9.base_generator();
        assert_eq!(corank_linear(&f9, &[Fe::ONE, zeta]), 1);
        assert_eq!(corank_bruteforce(&f9, &[Fe::ONE, zeta]), 1);
    }

    #[test]
    fn gauss_binomials() {
        assert_eq!(gauss_binomial(5, 0, 3), BigUint::one());
        assert_eq!(gauss_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gauss_binomial(3, 1, 2), BigUint::from(7u32));
        for q in [2, 3, 4, 5] {
            for n in 0..6 {
                for i in 0..=n {
                    assert_eq!(gauss_binomial(n, i, q), q_binomial_product(n, i, q));
                    assert_eq!(gauss_binomial(n, i, q), gauss_binomial(n, n - i, q));
                }
            }
        }
    }

    #[test]
    fn census_f4_plane() {
        let ctx = f(2, 1, 2);
        let c = census(&ctx, 2, 1 << 20).unwrap();
        assert_eq!(c.counts, vec![6, 9, 1]);
        assert_eq!(c.predictions, vec![6, 9, 1]);
        assert!(c.pass);
    }

    #[test]
    fn census_exhaustive() {
        for (p, s) in [(2, 1), (3, 1), (2, 2)] {
            for m in 1..=3 {
                for n in 1..=3 {
                    let ctx = f(p, s, m);
                    if ctx.size().pow(n) > 1 << 18 {
                        continue;
                    }
                    let c = census(&ctx, n as usize, 1 << 18).unwrap();
                    assert!(c.pass, "{c:?}");
                    if m == 1 && n >= 2 {
                        assert_eq!(c.counts[0], 0);
                    }
                }
            }
        }
    }

    #[test]
    fn filtration_bookkeeping() {
        // X(i+1) - X(i) and F(i) - F(i+1) are both "corank exactly i"
        let ctx = f(3, 1, 2);
        let n = 2;
        for x in all_vectors(&ctx.elements().collect::<Vec<_>>(), n) {
            let c = corank(&ctx, &x);
            for i in 0..n {
                let in_f = |k: usize| c >= k;
                let in_x = |k: usize| !in_f(k);
                assert_eq!(in_x(i + 1) && !in_x(i), in_f(i) && !in_f(i + 1));
            }
        }
    }

    #[test]
    fn census_bound() {
        let ctx = f(2, 1, 8);
        assert!(census(&ctx, 4, 1 << 20).is_err());
    }
}
