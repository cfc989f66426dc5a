//! Graded presentations of mod-ℓ cohomology rings of GL_n(F_q) and
//! SL_n(F_q), with truncated Poincaré-series ledgers that check them.
//!
//! With `r = ord_ℓ(q)` the GL ring is polynomial on `c_{rj}` (degree
//! `2rj`) tensor exterior on `e_{rj}` (degree `2rj - 1`), `1 ≤ j ≤ ⌊n/r⌋`.
//! The rings are data; the checks are that independent series
//! computations agree with them.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Num, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::ord_mod;
use crate::linalg::{q_integer, sl_order};

/// Power series truncated at `t^D`, stored as `a_0, ..., a_D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> PoincareSeries<T> {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, 0, T::one())
    }

    /// `c·t^k`, or zero when `k > D`.
    pub fn monomial(degree: usize, k: usize, c: T) -> Self {
        let mut s = Self::zero(degree);
        if k <= degree {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or truncates to degree `D`.
    pub fn from_coeffs(degree: usize, mut coeffs: Vec<T>) -> Self {
        coeffs.resize(degree + 1, T::zero());
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_coeffs(degree, self.coeffs.clone())
    }

    fn check_degree(&self, other: &Self) {
        assert_eq!(self.degree(), other.degree(), "truncation degrees differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_degree(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_degree(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Self { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_degree(other);
        let d = self.degree();
        let mut out = Self::zero(d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let d = self.degree();
        let mut out = Self::zero(d);
        for i in k..=d {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Multiplication by `1 + t^k`.
    pub fn times_one_plus(&self, k: usize) -> Self {
        self.add(&self.shift(k))
    }

    /// Multiplication by `1 - t^k`.
    pub fn times_one_minus(&self, k: usize) -> Self {
        self.sub(&self.shift(k))
    }

    /// Multiplication by `(1 - t^k)^{-1}`, `k ≥ 1`.
    pub fn div_one_minus(&self, k: usize) -> Self {
        assert!(k > 0);
        let mut out = self.clone();
        for i in k..=self.degree() {
            out.coeffs[i] = out.coeffs[i].clone() + out.coeffs[i - k].clone();
        }
        out
    }

    /// Multiplication by `1 + t + ... + t^{k-1}`, by a sliding window.
    pub fn times_geometric_sum(&self, k: usize) -> Self {
        let d = self.degree();
        let mut out = Self::zero(d);
        let mut window = T::zero();
        for i in 0..=d {
            window = window + self.coeffs[i].clone();
            if i >= k {
                window = window - self.coeffs[i - k].clone();
            }
            out.coeffs[i] = window.clone();
        }
        out
    }

    /// Sum of the stored coefficients; the value at `t = 1` of a
    /// polynomial of degree at most `D`.
    pub fn eval_one(&self) -> T {
        self.coeffs
            .iter()
            .cloned()
            .fold(T::zero(), |acc, a| acc + a)
    }
}

impl<T: Clone + Num + PartialOrd> PoincareSeries<T> {
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|a| *a >= T::zero())
    }
}

impl<T: Clone + Num + Serialize> Serialize for PoincareSeries<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Polynomial,
    Exterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
    pub kind: GeneratorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Gl,
    Sl,
    Motivic,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gl" => Ok(Self::Gl),
            "sl" => Ok(Self::Sl),
            "motivic" => Ok(Self::Motivic),
            other => Err(Error::InvalidSpec(format!("unknown variant {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPresentation {
    pub variant: Variant,
    pub n: u32,
    pub q: u64,
    pub ell: u64,
    pub r: u64,
    pub generators: Vec<Generator>,
    /// Set when the exterior convention is a choice (ℓ = 2).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

impl GradedPresentation {
    pub fn polynomial(&self) -> impl Iterator<Item = &Generator> {
        self.generators
            .iter()
            .filter(|g| g.kind == GeneratorKind::Polynomial)
    }

    pub fn exterior(&self) -> impl Iterator<Item = &Generator> {
        self.generators
            .iter()
            .filter(|g| g.kind == GeneratorKind::Exterior)
    }

    /// Highest positive generator degree.
    pub fn top_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// `∏ (1 - t^{deg})^{-1} ∏ (1 + t^{deg})` over generators of positive
    /// degree. Degree-zero polynomial generators (τ) are left to
    /// [`Self::bigraded_series`].
    pub fn poincare_series<T: Clone + Num>(&self, degree: usize) -> PoincareSeries<T> {
        let mut s = PoincareSeries::one(degree);
        for g in &self.generators {
            let d = g.degree as usize;
            s = match g.kind {
                GeneratorKind::Polynomial if d > 0 => s.div_one_minus(d),
                GeneratorKind::Polynomial => s,
                GeneratorKind::Exterior => s.times_one_plus(d),
            };
        }
        s
    }

    /// Coefficients `a[deg][weight]` truncated at `deg ≤ D`, `weight ≤ W`.
    pub fn bigraded_series(&self, degree: usize, weight: usize) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; weight + 1]; degree + 1];
        a[0][0] = 1;
        for g in &self.generators {
            let (d, w) = (g.degree as usize, g.weight.unwrap_or(0) as usize);
            match g.kind {
                GeneratorKind::Polynomial => {
                    for i in d..=degree {
                        for j in w..=weight {
                            a[i][j] += a[i - d][j - w];
                        }
                    }
                }
                GeneratorKind::Exterior => {
                    for i in (d..=degree).rev() {
                        for j in (w..=weight).rev() {
                            a[i][j] += a[i - d][j - w];
                        }
                    }
                }
            }
        }
        a
    }
}

fn check_ell(q: u64, ell: u64) -> Result<u64> {
    ord_mod(q, ell)
}

fn convention_note(ell: u64) -> Option<String> {
    (ell == 2).then(|| "exterior factors read with e^2 = 0 at ell = 2".to_string())
}

fn quillen_generators(n: u32, r: u64, from: u64, weights: bool) -> Vec<Generator> {
    let top = n as u64 / r;
    let mut gens = Vec::new();
    for kind in [GeneratorKind::Polynomial, GeneratorKind::Exterior] {
        for j in 1..=top {
            let rj = r * j;
            if rj < from {
                continue;
            }
            let (prefix, degree) = match kind {
                GeneratorKind::Polynomial => ("c", 2 * rj),
                GeneratorKind::Exterior => ("e", 2 * rj - 1),
            };
            gens.push(Generator {
                name: format!("{prefix}_{rj}"),
                degree: degree as u32,
                weight: weights.then_some(rj as u32),
                kind,
            });
        }
    }
    gens
}

pub fn quillen_presentation(n: u32, q: u64, ell: u64) -> Result<GradedPresentation> {
    let r = check_ell(q, ell)?;
    Ok(GradedPresentation {
        variant: Variant::Gl,
        n,
        q,
        ell,
        r,
        generators: quillen_generators(n, r, 1, false),
        convention: convention_note(ell),
    })
}

/// Same as GL for `r ≥ 2`; for `r = 1`, `c_1` and `e_1` are dropped.
pub fn sl_presentation(n: u32, q: u64, ell: u64) -> Result<GradedPresentation> {
    let r = check_ell(q, ell)?;
    let from = if r == 1 { 2 } else { 1 };
    Ok(GradedPresentation {
        variant: Variant::Sl,
        n,
        q,
        ell,
        r,
        generators: quillen_generators(n, r, from, false),
        convention: convention_note(ell),
    })
}

/// GL generators with weight `rj`, plus τ in bidegree `(0, 1)`.
pub fn motivic_presentation(n: u32, q: u64, ell: u64) -> Result<GradedPresentation> {
    let r = check_ell(q, ell)?;
    let mut generators = vec![Generator {
        name: "tau".to_string(),
        degree: 0,
        weight: Some(1),
        kind: GeneratorKind::Polynomial,
    }];
    generators.extend(quillen_generators(n, r, 1, true));
    Ok(GradedPresentation {
        variant: Variant::Motivic,
        n,
        q,
        ell,
        r,
        generators,
        convention: convention_note(ell),
    })
}

pub fn presentation(variant: Variant, n: u32, q: u64, ell: u64) -> Result<GradedPresentation> {
    match variant {
        Variant::Gl => quillen_presentation(n, q, ell),
        Variant::Sl => sl_presentation(n, q, ell),
        Variant::Motivic => motivic_presentation(n, q, ell),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankCheck {
    pub n: u32,
    pub q: u64,
    /// `∏_{0<i<n} [q^n - q^i]_t · [1 + q + ... + q^{n-1}]_t`, low first.
    #[serde(serialize_with = "serialize_big_coeffs")]
    pub polynomial: PoincareSeries<BigInt>,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

fn serialize_big_coeffs<S: serde::Serializer>(
    s: &PoincareSeries<BigInt>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<String> = s.coeffs().iter().map(BigInt::to_string).collect();
    text.serialize(serializer)
}

/// The ratio of the Poincaré polynomials of the polynomial rings on
/// `x_1..x_n` and on the Dickson invariants, evaluated at `t = 1`,
/// against `|SL_n(F_q)|`. Each factor `[k]_t = 1 + ... + t^{k-1}` is the
/// ratio for a generator of degree `k`.
pub fn dickson_rank_check(n: u32, q: u64) -> RankCheck {
    let qn = BigUint::from(q).pow(n);
    let factors: Vec<usize> = (1..n)
        .map(|i| {
            (&qn - BigUint::from(q).pow(i))
                .to_usize()
                .expect("degree fits in memory")
        })
        .chain(std::iter::once(q_integer(n, q) as usize))
        .collect();
    let degree: usize = factors.iter().map(|k| k - 1).sum();
    let polynomial = factors
        .iter()
        .fold(PoincareSeries::<BigInt>::one(degree), |acc, &k| {
            acc.times_geometric_sum(k)
        });
    let computed = polynomial.eval_one();
    let expected = BigInt::from(sl_order(n, q));
    RankCheck {
        n,
        q,
        pass: computed == expected && polynomial.coeffs().iter().all(|c| !c.is_negative()),
        computed: computed.to_string(),
        expected: expected.to_string(),
        polynomial,
    }
}

/// `∏_{1≤j≤⌊n/r⌋} (1 + t^{2rj-1}) / (1 - t^{2rj})`.
pub fn closed_form_series(n: u32, r: u64, degree: usize) -> PoincareSeries<i64> {
    (1..=n as u64 / r).fold(PoincareSeries::one(degree), |s, j| {
        let d = (2 * r * j) as usize;
        s.times_one_plus(d - 1).div_one_minus(d)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InductiveSeries {
    pub n: u32,
    pub r: u64,
    pub degree: usize,
    /// Series of `H^*(BG_i)` for `i = 0..=n`, built by the recurrence.
    pub levels: Vec<PoincareSeries<i64>>,
    pub closed_form: PoincareSeries<i64>,
    pub pass: bool,
}

impl InductiveSeries {
    pub fn series(&self) -> &PoincareSeries<i64> {
        self.levels.last().expect("level 0 is always present")
    }
}

/// Builds `H(k) = PS H^*(BG_k)` from the filtration of affine space by
/// strata. `S_i` is the series of the `G`-equivariant cohomology of the
/// open piece `X(i)`; the stratum `F(i) - F(i+1)` contributes
/// `H(i)·(1 + t)` in degrees `≥ 2i` through the Gysin sequence, which
/// splits when `r | i` and otherwise cancels the classes `t^{2i-1}H(i-1)`
/// and `t^{2i}H(i)` in pairs:
///
/// * `r | i`: `S_{i+1} = S_i + t^{2i}H(i)(1+t)`
/// * `r ∤ i`: `S_{i+1} = S_i - t^{2i-1}H(i-1) + t^{2i}H(i)(1+t) - t^{2i}H(i)`
///
/// and the final stratum `{0}` gives `H(k) = S_k/(1 - t^{2k})` when
/// `r | k`, `H(k) = S_k - t^{2k-1}H(k-1)` otherwise.
pub fn inductive_series(n: u32, q: u64, ell: u64, degree: usize) -> Result<InductiveSeries> {
    let r = check_ell(q, ell)?;
    let needed = (2 * r * (n as u64 / r)) as usize;
    if degree < needed {
        return Err(Error::TruncationTooSmall {
            given: degree,
            needed,
        });
    }
    let one = PoincareSeries::<i64>::one(degree);
    let mut levels = vec![one.clone()];
    let mut s = one.times_one_plus(1);
    for i in 1..=n as usize {
        let divides = (i as u64).is_multiple_of(r);
        let prev = &levels[i - 1];
        let h = if divides {
            s.div_one_minus(2 * i)
        } else {
            s.sub(&prev.shift(2 * i - 1))
        };
        let stratum = h.times_one_plus(1).shift(2 * i);
        s = if divides {
            s.add(&stratum)
        } else {
            s.sub(&prev.shift(2 * i - 1))
                .add(&stratum)
                .sub(&h.shift(2 * i))
        };
        levels.push(h);
    }
    let closed_form = closed_form_series(n, r, degree);
    let presented = quillen_presentation(n, q, ell)?.poincare_series(degree);
    let pass = levels[n as usize] == closed_form && closed_form == presented;
    Ok(InductiveSeries {
        n,
        r,
        degree,
        levels,
        closed_form,
        pass,
    })
}

/// Sparse polynomial over Z/ℓ keyed by exponent vectors.
type SparsePoly = BTreeMap<Vec<u32>, u64>;

fn poly_mul(a: &SparsePoly, b: &SparsePoly, ell: u64) -> SparsePoly {
    let mut out = SparsePoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = out.entry(e).or_insert(0);
            *c = (*c + ca * cb) % ell;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn monomial(vars: usize, exps: &[(usize, u32)], c: u64) -> (Vec<u32>, u64) {
    let mut e = vec![0; vars];
    for &(v, k) in exps {
        e[v] = k;
    }
    (e, c)
}

#[derive(Clone, Debug, Serialize)]
pub struct RootIdentityReport {
    pub q: u64,
    pub ell: u64,
    pub r: u64,
    /// Nonzero terms of `∏_{i<r} (X - q^i t)` as `(deg_X, deg_t, coeff)`.
    pub product: Vec<(u32, u32, u64)>,
    /// Block products checked for `k = 1..=3` tori.
    pub blocks_checked: usize,
    pub pass: bool,
}

/// Expands `∏_{i<r}(X - q^i t)` over Z/ℓ and compares with `X^r - t^r`,
/// then checks `∏_j ∏_i (X - q^i t_j) = ∏_j (X^r - t_j^r)` for up to three
/// variables `t_j`.
pub fn root_identity_check(q: u64, ell: u64) -> Result<RootIdentityReport> {
    let r = check_ell(q, ell)?;
    let factor = |vars: usize, t: usize| -> SparsePoly {
        (0..r)
            .map(|i| {
                let mut x = SparsePoly::new();
                x.insert(monomial(vars, &[(0, 1)], 1).0, 1);
                let qi = (0..i).fold(1, |acc, _| acc * (q % ell) % ell);
                let c = (ell - qi) % ell;
                if c != 0 {
                    x.insert(monomial(vars, &[(t, 1)], c).0, c);
                }
                x
            })
            .fold(
                SparsePoly::from([(vec![0; vars], 1)]),
                |acc, f| poly_mul(&acc, &f, ell),
            )
    };
    let binomial = |vars: usize, t: usize| -> SparsePoly {
        let mut p = SparsePoly::new();
        p.insert(monomial(vars, &[(0, r as u32)], 1).0, 1);
        let (e, c) = monomial(vars, &[(t, r as u32)], ell - 1);
        *p.entry(e).or_insert(0) += c;
        p.retain(|_, c| {
            *c %= ell;
            *c != 0
        });
        p
    };
    let single = factor(2, 1);
    let mut pass = single == binomial(2, 1);
    for k in 1..=3 {
        let vars = k + 1;
        let mut lhs = SparsePoly::from([(vec![0; vars], 1)]);
        let mut rhs = lhs.clone();
        for t in 1..=k {
            lhs = poly_mul(&lhs, &factor(vars, t), ell);
            rhs = poly_mul(&rhs, &binomial(vars, t), ell);
        }
        let only_rth_powers = lhs.keys().all(|e| e.iter().all(|&d| (d as u64).is_multiple_of(r)));
        pass &= lhs == rhs && only_rth_powers;
    }
    Ok(RootIdentityReport {
        q,
        ell,
        r,
        product: single.iter().map(|(e, &c)| (e[0], e[1], c)).collect(),
        blocks_checked: 3,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(p: &GradedPresentation) -> Vec<(String, u32)> {
        p.generators.iter().map(|g| (g.name.clone(), g.degree)).collect()
    }

    /// Independent expansion of `(1 + t^a)/(1 - t^b)` products by counting
    /// monomials.
    fn brute_series(n: u32, r: u64, degree: usize) -> Vec<i64> {
        let gens: Vec<(usize, usize)> = (1..=n as u64 / r)
            .map(|j| ((2 * r * j - 1) as usize, (2 * r * j) as usize))
            .collect();
        let mut out = vec![0i64; degree + 1];
        fn walk(gens: &[(usize, usize)], deg: usize, max: usize, out: &mut [i64]) {
            let Some((&(odd, even), rest)) = gens.split_first() else {
                out[deg] += 1;
                return;
            };
            for ext in [0, odd] {
                let mut d = deg + ext;
                while d <= max {
                    walk(rest, d, max, out);
                    d += even;
                }
            }
        }
        walk(&gens, 0, degree, &mut out);
        out
    }

    #[test]
    fn series_arithmetic() {
        let s = PoincareSeries::<i64>::one(6).div_one_minus(2);
        assert_eq!(s.coeffs(), &[1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(s.times_one_minus(2), PoincareSeries::one(6));
        let g = PoincareSeries::<i64>::one(6).times_geometric_sum(3);
        assert_eq!(g.coeffs(), &[1, 1, 1, 0, 0, 0, 0]);
        assert_eq!(g.mul(&g).coeffs(), &[1, 2, 3, 2, 1, 0, 0]);
        assert_eq!(g.eval_one(), 3);
    }

    #[test]
    fn presentation_examples() {
        let p = quillen_presentation(2, 2, 3).unwrap();
        assert_eq!(p.r, 2);
        assert_eq!(names(&p), vec![("c_2".into(), 4), ("e_2".into(), 3)]);
        assert!(quillen_presentation(1, 2, 7).unwrap().generators.is_empty());
        let p = quillen_presentation(3, 4, 3).unwrap();
        assert_eq!(p.r, 1);
        let degrees: Vec<u32> = p.polynomial().map(|g| g.degree).collect();
        assert_eq!(degrees, vec![2, 4, 6]);
        let degrees: Vec<u32> = p.exterior().map(|g| g.degree).collect();
        assert_eq!(degrees, vec![1, 3, 5]);
        assert_eq!(quillen_presentation(2, 2, 2).unwrap_err(), Error::EllEqualsP(2));
    }

    #[test]
    fn sl_examples() {
        assert_eq!(
            names(&sl_presentation(2, 2, 3).unwrap()),
            names(&quillen_presentation(2, 2, 3).unwrap())
        );
        assert_eq!(
            names(&sl_presentation(2, 4, 3).unwrap()),
            vec![("c_2".into(), 4), ("e_2".into(), 3)]
        );
        assert!(sl_presentation(1, 4, 3).unwrap().generators.is_empty());
        for (q, ell) in [(2, 3), (2, 5), (3, 5), (4, 5), (5, 3), (7, 3)] {
            for n in 1..6 {
                let gl = quillen_presentation(n, q, ell).unwrap();
                if gl.r >= 2 {
                    assert_eq!(names(&sl_presentation(n, q, ell).unwrap()), names(&gl));
                }
            }
        }
    }

    #[test]
    fn motivic_examples() {
        let m = motivic_presentation(2, 2, 3).unwrap();
        let bi: Vec<(String, u32, Option<u32>)> = m
            .generators
            .iter()
            .map(|g| (g.name.clone(), g.degree, g.weight))
            .collect();
        assert_eq!(
            bi,
            vec![
                ("tau".into(), 0, Some(1)),
                ("c_2".into(), 4, Some(2)),
                ("e_2".into(), 3, Some(2)),
            ]
        );
        for g in m.polynomial().filter(|g| g.degree > 0) {
            assert_eq!(g.weight, Some(g.degree / 2));
        }
        // B = G/(1 - u) with G the weighted GL series, so B[d][W]
        // telescopes to G(t, 1)[d] once W bounds every weight in degree d
        let gl = quillen_presentation(2, 2, 3).unwrap().poincare_series::<i64>(30);
        let bi = m.bigraded_series(30, 30);
        for (d, row) in bi.iter().enumerate() {
            assert_eq!(row[30], gl.coeff(d), "degree {d}");
        }
    }

    #[test]
    fn rank_ledger() {
        for (n, q, expected) in [(2, 2, 6u32), (2, 3, 24), (3, 2, 168)] {
            let check = dickson_rank_check(n, q);
            assert!(check.pass);
            assert_eq!(check.computed, expected.to_string());
        }
        for n in 1..=5 {
            for q in [2, 3, 4] {
                assert!(dickson_rank_check(n, q).pass, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn inductive_matches_closed_form() {
        let one = inductive_series(1, 2, 3, 10).unwrap();
        assert_eq!(one.series(), &PoincareSeries::one(10));
        let two = inductive_series(2, 2, 3, 40).unwrap();
        assert!(two.pass);
        assert_eq!(
            two.series(),
            &PoincareSeries::one(40).times_one_plus(3).div_one_minus(4)
        );
        for (q, ell) in [(2, 3), (4, 3), (2, 7), (3, 2), (3, 13), (5, 3), (2, 5), (9, 5)] {
            for n in 1..=6 {
                let r = ord_mod(q, ell).unwrap();
                let degree = (2 * r as usize * (n as usize / r as usize)).max(40);
                let s = inductive_series(n, q, ell, degree).unwrap();
                assert!(s.pass, "n={n} q={q} ell={ell}");
                assert_eq!(s.series().coeffs(), brute_series(n, r, degree).as_slice());
                assert!(s.series().is_nonnegative());
            }
        }
        assert_eq!(
            inductive_series(3, 4, 3, 5).unwrap_err(),
            Error::TruncationTooSmall { given: 5, needed: 6 }
        );
    }

    #[test]
    fn root_identities() {
        let r = root_identity_check(2, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.product, vec![(0, 2, 2), (2, 0, 1)]);
        let r = root_identity_check(4, 3).unwrap();
        assert_eq!(r.r, 1);
        assert!(r.pass);
        assert!(root_identity_check(2, 7).unwrap().pass);
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for ell in [2u64, 3, 5, 7, 11, 13] {
                if q % ell == 0 {
                    continue;
                }
                assert!(root_identity_check(q, ell).unwrap().pass, "q={q} ell={ell}");
            }
        }
    }
}
