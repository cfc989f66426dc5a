//! Moore determinants and Dickson invariants evaluated at points.
//!
//! Two independent routes compute the Dickson values `c_{n,i}(x)`:
//!
//! * [`dickson_product_poly`] expands `∏_{λ ∈ F_q^n} (X + λ·x)` as an
//!   ordinary polynomial and reads off the coefficients at `X^{q^i}`. It is
//!   slow and needs nothing beyond field arithmetic.
//! * [`dickson_cofactor`] divides a Moore minor by `e_n(x)`. It needs
//!   `e_n(x) ≠ 0` and a sign per `(n, s)`, fixed by [`cofactor_sign`].
//!
//! Conventions: `c_{n,i}` are the coefficients of the product, so
//! `∑_{i≤n} c_{n,i} X^{q^i} = ∏ (X + λ·x)` with `c_{n,n} = 1`, and
//! `c_{n,0} = (-1)^n e_n^{q-1}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fe};
use crate::json::fe_coeffs;
use crate::linalg::{all_vectors, det_in_place, Mat};

/// `x_i^{q^j}` at `(i, j)`, `0 ≤ j < n`.
pub fn moore_matrix(ctx: &FieldCtx, x: &[Fe]) -> Mat {
    let n = x.len();
    let rows = x
        .iter()
        .map(|&xi| {
            let mut row = Vec::with_capacity(n);
            let mut v = xi;
            for _ in 0..n {
                row.push(v);
                v = ctx.frobenius_q(v);
            }
            row
        })
        .collect();
    Mat::from_rows(rows).expect("square")
}

/// `e_n(x) = det(x_i^{q^j})`.
pub fn moore_det(ctx: &FieldCtx, x: &[Fe]) -> Fe {
    moore_matrix(ctx, x).det(ctx)
}

/// The additive polynomial `∑ c_i X^{q^i}`, with the ordinary expansion it
/// was read from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolynomial {
    pub q: u64,
    /// `c_0, ..., c_n`, the coefficient at `X^{q^i}`.
    pub coeffs: Vec<Fe>,
    /// Ordinary coefficients, constant term first, degree `q^n`.
    pub expansion: Vec<Fe>,
}

impl QPolynomial {
    pub fn eval(&self, ctx: &FieldCtx, x: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut power = x;
        for &c in &self.coeffs {
            acc = ctx.add(acc, ctx.mul(c, power));
            power = ctx.frobenius_q(power);
        }
        acc
    }
}

/// Expands `∏_{λ ∈ F_q^n} (X + λ_1 x_1 + ... + λ_n x_n)` and checks that only
/// the exponents `q^i` survive.
pub fn dickson_product_poly(ctx: &FieldCtx, x: &[Fe], bound: u64) -> Result<QPolynomial> {
    let n = x.len();
    let q = ctx.q();
    let degree = q
        .checked_pow(n as u32)
        .filter(|&d| d <= bound)
        .ok_or_else(|| Error::OrderOverflow {
            order: format!("{q}^{n}"),
            bound,
        })? as usize;

    let mut poly = Vec::with_capacity(degree + 1);
    poly.push(Fe::ONE);
    for lambda in all_vectors(&ctx.base_subfield(), n) {
        let root = lambda
            .iter()
            .zip(x)
            .fold(Fe::ZERO, |acc, (&l, &xi)| ctx.add(acc, ctx.mul(l, xi)));
        // poly *= (X + root)
        poly.push(Fe::ZERO);
        for k in (0..poly.len()).rev() {
            let shifted = if k > 0 { poly[k - 1] } else { Fe::ZERO };
            poly[k] = ctx.add(shifted, ctx.mul(root, poly[k]));
        }
    }
    debug_assert_eq!(poly.len(), degree + 1);

    let mut coeffs = Vec::with_capacity(n + 1);
    let mut next_power = 1usize;
    for (k, &c) in poly.iter().enumerate() {
        if k == next_power {
            coeffs.push(c);
            next_power = next_power.saturating_mul(q as usize);
        } else if !c.is_zero() {
            return Err(Error::NonAdditiveExpansion(k));
        }
    }
    if coeffs.len() != n + 1 || coeffs[n] != Fe::ONE {
        return Err(Error::NonAdditiveExpansion(degree));
    }
    Ok(QPolynomial {
        q,
        coeffs,
        expansion: poly,
    })
}

/// Sign relating the Moore minor to `c_{n,s}`: with `D_s` the determinant
/// of the `n × (n+1)` matrix `(x_i^{q^j})_{0≤j≤n}` minus column `s`,
/// `c_{n,s} = (-1)^{n-s} D_s / e_n`.
///
/// Frozen from the exhaustive comparison with [`dickson_product_poly`]
/// (see the `cofactor_sign_matches_product` test); it is also what Cramer's
/// rule gives after moving the `q^n` column into slot `s`.
pub const fn cofactor_sign(n: usize, s: usize) -> i8 {
    if (n - s).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Dickson values at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DicksonVector {
    pub n: usize,
    /// The Moore determinant `e_n(x)`.
    pub e: Fe,
    /// `c_{n,0}, ..., c_{n,n-1}`.
    pub c: Vec<Fe>,
}

#[derive(Serialize)]
pub struct DicksonVectorJson {
    pub n: usize,
    pub q: u64,
    pub m: u32,
    pub e: Vec<u32>,
    pub c: Vec<Vec<u32>>,
}

impl DicksonVector {
    pub fn to_json(&self, ctx: &FieldCtx) -> DicksonVectorJson {
        DicksonVectorJson {
            n: self.n,
            q: ctx.q(),
            m: ctx.spec().m,
            e: fe_coeffs(ctx, self.e),
            c: self.c.iter().map(|&a| fe_coeffs(ctx, a)).collect(),
        }
    }

    /// `(c_{n,1}, ..., c_{n,n-1})`.
    pub fn upper(&self) -> &[Fe] {
        &self.c[1..]
    }
}

/// The oracle route: Dickson values read off the product expansion.
pub fn dickson_by_product(ctx: &FieldCtx, x: &[Fe], bound: u64) -> Result<DicksonVector> {
    let poly = dickson_product_poly(ctx, x, bound)?;
    Ok(DicksonVector {
        n: x.len(),
        e: moore_det(ctx, x),
        c: poly.coeffs[..x.len()].to_vec(),
    })
}

/// The fast route: Moore minors over `e_n(x)`.
pub fn dickson_cofactor(ctx: &FieldCtx, x: &[Fe]) -> Result<DicksonVector> {
    let mut eval = MooreEval::new(x.len());
    let mut c = vec![Fe::ZERO; x.len()];
    let e = eval.dickson(ctx, x, &mut c);
    if e.is_zero() {
        return Err(Error::SingularMoore);
    }
    Ok(DicksonVector { n: x.len(), e, c })
}

/// Cofactor route when `e_n(x) ≠ 0`, product route otherwise.
pub fn dickson_vector(ctx: &FieldCtx, x: &[Fe], bound: u64) -> Result<DicksonVector> {
    match dickson_cofactor(ctx, x) {
        Err(Error::SingularMoore) => dickson_by_product(ctx, x, bound),
        other => other,
    }
}

/// Scratch space for evaluating Moore determinants and minors in tight
/// enumeration loops without allocating per point.
pub struct MooreEval {
    n: usize,
    powers: Vec<Fe>,
    work: Vec<Fe>,
}

impl MooreEval {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            powers: vec![Fe::ZERO; n * (n + 1)],
            work: vec![Fe::ZERO; n * n],
        }
    }

    fn fill_powers(&mut self, ctx: &FieldCtx, x: &[Fe], cols: usize) {
        let w = self.n + 1;
        for (i, &xi) in x.iter().enumerate() {
            let mut v = xi;
            for j in 0..cols {
                self.powers[i * w + j] = v;
                if j + 1 < cols {
                    v = ctx.frobenius_q(v);
                }
            }
        }
    }

    /// Determinant of the powers matrix with column `skip` removed.
    fn minor(&mut self, ctx: &FieldCtx, skip: usize) -> Fe {
        let (n, w) = (self.n, self.n + 1);
        for i in 0..n {
            let mut k = 0;
            for j in 0..w {
                if j != skip {
                    self.work[i * n + k] = self.powers[i * w + j];
                    k += 1;
                }
            }
        }
        det_in_place(ctx, &mut self.work, n)
    }

    /// `e_n(x)`.
    pub fn moore_det(&mut self, ctx: &FieldCtx, x: &[Fe]) -> Fe {
        self.fill_powers(ctx, x, self.n);
        // skipping the (unfilled) last column leaves the Moore matrix
        self.minor(ctx, self.n)
    }

    /// Writes `c_{n,0..n}` into `c` and returns `e_n(x)`; `c` is left
    /// untouched when `e_n(x) = 0`.
    pub fn dickson(&mut self, ctx: &FieldCtx, x: &[Fe], c: &mut [Fe]) -> Fe {
        let n = self.n;
        self.fill_powers(ctx, x, n + 1);
        let e = self.minor(ctx, n);
        let Some(e_inv) = ctx.inv(e) else {
            return Fe::ZERO;
        };
        for (s, slot) in c.iter_mut().enumerate().take(n) {
            let d = ctx.mul(self.minor(ctx, s), e_inv);
            *slot = if cofactor_sign(n, s) < 0 { ctx.neg(d) } else { d };
        }
        e
    }
}

/// `t ↦ t·x` coordinatewise.
pub fn scale(ctx: &FieldCtx, t: Fe, x: &[Fe]) -> Vec<Fe> {
    x.iter().map(|&xi| ctx.mul(t, xi)).collect()
}
