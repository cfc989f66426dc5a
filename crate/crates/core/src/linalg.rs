//! Square matrices over a [`FieldCtx`], the finite groups GL_n(F_q) and
//! SL_n(F_q), the Lang map, Coxeter permutation matrices and the fixed
//! points of twisted Frobenius on the diagonal torus.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{make_field, FieldCtx, FieldSpec, Fe};

/// Default cap on the number of group elements an enumeration may produce.
pub const DEFAULT_GROUP_BOUND: u64 = 1_000_000;

/// An `n × n` matrix, row-major. All entries live in one field context,
/// which every operation takes explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    n: usize,
    data: Vec<Fe>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Fe::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn diagonal(entries: &[Fe]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &a) in entries.iter().enumerate() {
            m.set(i, i, a);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows must form a square".into()));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: Fe) {
        self.data[i * self.n + j] = a;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Fe]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat, ctx: &FieldCtx) -> Mat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = ctx.add(out.get(i, j), ctx.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `M·x` for a column vector `x`.
    pub fn apply(&self, x: &[Fe], ctx: &FieldCtx) -> Vec<Fe> {
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(Fe::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect()
    }

    /// Entrywise q-Frobenius.
    pub fn frobenius(&self, ctx: &FieldCtx) -> Mat {
        Mat {
            n: self.n,
            data: self.data.iter().map(|&a| ctx.frobenius_q(a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Unit diagonal, zeros below it.
    pub fn is_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i) == Fe::ONE && (0..i).all(|j| self.get(i, j).is_zero())
        })
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self, ctx: &FieldCtx) -> Fe {
        det_in_place(ctx, &mut self.data.clone(), self.n)
    }

    /// The `(n-1)`-square matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Mat {
        let n = self.n;
        let data = (0..n)
            .filter(|&r| r != i)
            .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        Mat { n: n - 1, data }
    }

    /// Inverse as adjugate over determinant (Cramer's rule).
    pub fn inverse_adjugate(&self, ctx: &FieldCtx) -> Result<Mat> {
        let n = self.n;
        let det = self.det(ctx);
        let det_inv = ctx.inv(det).ok_or(Error::Singular)?;
        let mut out = Self::zeros(n);
        if n == 1 {
            out.set(0, 0, det_inv);
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let mut cof = self.minor(i, j).det(ctx);
                if (i + j) % 2 == 1 {
                    cof = ctx.neg(cof);
                }
                // adjugate is the transposed cofactor matrix
                out.set(j, i, ctx.mul(cof, det_inv));
            }
        }
        Ok(out)
    }

    /// Inverse by Gauss–Jordan elimination.
    pub fn inverse_elimination(&self, ctx: &FieldCtx) -> Result<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let pinv = ctx.inv(a.get(col, col)).expect("pivot is nonzero");
            for j in 0..n {
                a.set(col, j, ctx.mul(a.get(col, j), pinv));
                inv.set(col, j, ctx.mul(inv.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, ctx.sub(a.get(r, j), ctx.mul(factor, a.get(col, j))));
                    inv.set(r, j, ctx.sub(inv.get(r, j), ctx.mul(factor, inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    /// Inverse computed by both routes, which must agree.
    pub fn inverse(&self, ctx: &FieldCtx) -> Result<Mat> {
        let by_cofactors = self.inverse_adjugate(ctx)?;
        let by_elimination = self.inverse_elimination(ctx)?;
        if by_cofactors != by_elimination {
            return Err(Error::InverseMismatch);
        }
        Ok(by_cofactors)
    }

    pub fn display(&self, ctx: &FieldCtx) -> String {
        let rows: Vec<String> = self
            .rows()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|&a| fe_display(ctx, a)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Determinant of the row-major `n × n` block `a`, destroying it.
pub fn det_in_place(ctx: &FieldCtx, a: &mut [Fe], n: usize) -> Fe {
    let mut det = Fe::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Fe::ZERO;
        };
        if pivot != col {
            for j in col..n {
                a.swap(pivot * n + j, col * n + j);
            }
            det = ctx.neg(det);
        }
        let pv = a[col * n + col];
        det = ctx.mul(det, pv);
        let pinv = ctx.inv(pv).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = ctx.mul(a[r * n + col], pinv);
            if factor.is_zero() {
                continue;
            }
            for j in col + 1..n {
                a[r * n + j] = ctx.sub(a[r * n + j], ctx.mul(factor, a[col * n + j]));
            }
        }
    }
    det
}

pub(crate) fn fe_display(ctx: &FieldCtx, a: Fe) -> String {
    if ctx.degree() == 1 {
        a.index().to_string()
    } else {
        format!("{:?}", ctx.coeffs(a))
    }
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n);
    (0..n).map(|i| &qn - q.pow(i)).product()
}

/// `|SL_n(F_q)| = |GL_n(F_q)| / (q - 1)`.
pub fn sl_order(n: u32, q: u64) -> BigUint {
    gl_order(n, q) / BigUint::from(q - 1)
}

/// GL_n(F_q) with F_q the base subfield of `ctx`, in deterministic order.
pub fn enumerate_gl(ctx: &FieldCtx, n: usize, bound: u64) -> Result<Vec<Mat>> {
    let order = gl_order(n as u32, ctx.q());
    check_bound(&order, bound)?;
    Ok(enumerate_gl_over(ctx, n, &ctx.base_subfield()))
}

/// SL_n(F_q) inside `ctx`.
pub fn enumerate_sl(ctx: &FieldCtx, n: usize, bound: u64) -> Result<Vec<Mat>> {
    let order = sl_order(n as u32, ctx.q());
    check_bound(&order, bound)?;
    Ok(enumerate_gl_over(ctx, n, &ctx.base_subfield())
        .into_iter()
        .filter(|g| g.det(ctx) == Fe::ONE)
        .collect())
}

fn check_bound(order: &BigUint, bound: u64) -> Result<()> {
    match order.to_u64() {
        Some(o) if o <= bound => Ok(()),
        _ => Err(Error::OrderOverflow {
            order: order.to_string(),
            bound,
        }),
    }
}

/// Every invertible matrix with entries from `scalars` (which must be a
/// subfield of `ctx`). Rows are chosen one at a time, skipping vectors in
/// the span of the rows already chosen.
pub fn enumerate_gl_over(ctx: &FieldCtx, n: usize, scalars: &[Fe]) -> Vec<Mat> {
    let vectors: Vec<Vec<Fe>> = all_vectors(scalars, n);
    let mut out = Vec::new();
    let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(n);
    let mut echelon: Vec<Vec<Fe>> = Vec::with_capacity(n);
    extend_rows(ctx, n, &vectors, &mut rows, &mut echelon, &mut out);
    out
}

fn extend_rows(
    ctx: &FieldCtx,
    n: usize,
    vectors: &[Vec<Fe>],
    rows: &mut Vec<Vec<Fe>>,
    echelon: &mut Vec<Vec<Fe>>,
    out: &mut Vec<Mat>,
) {
    if rows.len() == n {
        out.push(Mat::from_rows(rows.clone()).expect("square"));
        return;
    }
    for v in vectors {
        let reduced = reduce(ctx, echelon, v);
        if reduced.iter().all(|a| a.is_zero()) {
            continue;
        }
        rows.push(v.clone());
        echelon.push(reduced);
        extend_rows(ctx, n, vectors, rows, echelon, out);
        echelon.pop();
        rows.pop();
    }
}

/// Reduces `v` against an echelon list whose rows each have a distinct
/// leading position.
fn reduce(ctx: &FieldCtx, echelon: &[Vec<Fe>], v: &[Fe]) -> Vec<Fe> {
    let mut v = v.to_vec();
    for b in echelon {
        let lead = b.iter().position(|a| !a.is_zero()).expect("nonzero row");
        if v[lead].is_zero() {
            continue;
        }
        let factor = ctx.div(v[lead], b[lead]).expect("nonzero lead");
        for (x, &y) in v.iter_mut().zip(b) {
            *x = ctx.sub(*x, ctx.mul(factor, y));
        }
    }
    v
}

/// All vectors of length `n` over `scalars`, lexicographic.
pub fn all_vectors(scalars: &[Fe], n: usize) -> Vec<Vec<Fe>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                scalars.iter().map(move |&a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// The Lang map `g ↦ g^{-1} F(g)`.
pub fn lang_map(ctx: &FieldCtx, g: &Mat) -> Result<Mat> {
    Ok(g.inverse(ctx)?.mul(&g.frobenius(ctx), ctx))
}

/// A permutation of `{1..n}` given by disjoint cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermWord {
    /// `images[i]` is the 0-based image of the 0-based point `i`.
    images: Vec<usize>,
}

impl PermWord {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// From 1-based disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = HashSet::new();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || !seen.insert(a) {
                    return Err(Error::InvalidSpec(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..{n}"
                    )));
                }
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b - 1;
            }
        }
        Ok(Self { images })
    }

    /// The Coxeter cycle `(1, 2, ..., n)`.
    pub fn coxeter(n: usize) -> Self {
        Self {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    /// `k` consecutive `r`-cycles `(1..r)(r+1..2r)...`, the rest fixed.
    pub fn block_cycles(n: usize, r: usize, k: usize) -> Result<Self> {
        let cycles: Vec<Vec<usize>> = (0..k).map(|b| (b * r + 1..=(b + 1) * r).collect()).collect();
        Self::from_cycles(n, &cycles)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 0-based image.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// All cycles including fixed points, 1-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Permutation matrix sending `e_j` to `e_{w(j)}`.
    pub fn matrix(&self) -> Mat {
        let mut m = Mat::zeros(self.n());
        for j in 0..self.n() {
            m.set(self.images[j], j, Fe::ONE);
        }
        m
    }

    /// All permutations of `{1..n}` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<PermWord> {
        fn go(n: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<PermWord>) {
            if prefix.len() == n {
                out.push(PermWord {
                    images: prefix.clone(),
                });
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    go(n, prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for PermWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let parts: Vec<String> = c.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for PermWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        cycles.serialize(serializer)
    }
}

/// The matrix of the Coxeter cycle `w_n = (1, ..., n)`: a 1 in the top
/// right corner and ones on the subdiagonal.
pub fn coxeter_matrix(n: usize) -> Mat {
    PermWord::coxeter(n).matrix()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusVariant {
    Gl,
    Sl,
}

/// Fixed points of `t ↦ ad(w)F(t)` on the diagonal torus.
#[derive(Clone, Debug, Serialize)]
pub struct TorusFixedReport {
    pub w: PermWord,
    pub variant: TorusVariant,
    pub q: u64,
    pub cycle_lengths: Vec<usize>,
    /// The closed form `∏ (q^{r_j} - 1)`, divided by `q - 1` for SL.
    pub order: u64,
    /// Brute-force count inside F_{q^L}, L the lcm of the cycle lengths.
    pub counted: u64,
    /// Extension degree L of the field the count ran in.
    pub ext_degree: u32,
    /// A generating set, each generator a diagonal as coefficient vectors.
    pub generators: Vec<Vec<Vec<u32>>>,
}

impl TorusFixedReport {
    pub fn consistent(&self) -> bool {
        self.order == self.counted
    }
}

/// Solves `t_{w(i)} = t_i^q` on diagonal matrices by exhaustive search over
/// `(F_{q^L}^*)^n`, and attaches the closed-form order.
pub fn torus_fixed(
    w: &PermWord,
    p: u32,
    s: u32,
    variant: TorusVariant,
    bound: u64,
) -> Result<TorusFixedReport> {
    let n = w.n();
    let lengths = w.cycle_lengths();
    let ext = lengths.iter().fold(1usize, |acc, &r| acc.lcm(&r)) as u32;
    let ctx = make_field(FieldSpec::new(p, s, ext))?;
    let q = ctx.q();
    let units: Vec<Fe> = ctx.elements().skip(1).collect();
    let search = (units.len() as u64).checked_pow(n as u32);
    if search.is_none_or(|s| s > bound) {
        return Err(Error::OrderOverflow {
            order: format!("{}^{n}", units.len()),
            bound,
        });
    }

    let mut members: Vec<Vec<Fe>> = Vec::new();
    let mut t = vec![units[0]; n];
    let mut idx = vec![0usize; n];
    loop {
        for (slot, &k) in t.iter_mut().zip(&idx) {
            *slot = units[k];
        }
        let fixed = (0..n).all(|i| t[w.image(i)] == ctx.frobenius_q(t[i]));
        let det_one = t.iter().fold(Fe::ONE, |acc, &a| ctx.mul(acc, a)) == Fe::ONE;
        if fixed && (variant == TorusVariant::Gl || det_one) {
            members.push(t.clone());
        }
        // odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < units.len() {
                break;
            }
            idx[pos] = 0;
        }
        if idx.iter().all(|&k| k == 0) {
            break;
        }
    }

    let gl: u64 = lengths.iter().map(|&r| q.pow(r as u32) - 1).product();
    let order = match variant {
        TorusVariant::Gl => gl,
        TorusVariant::Sl => gl / (q - 1),
    };
    let generators = abelian_generators(&ctx, &members)
        .into_iter()
        .map(|g| g.iter().map(|&a| ctx.coeffs(a)).collect())
        .collect();
    Ok(TorusFixedReport {
        w: w.clone(),
        variant,
        q,
        cycle_lengths: lengths,
        order,
        counted: members.len() as u64,
        ext_degree: ext,
        generators,
    })
}

/// Greedy generating set of a finite abelian group of diagonal tuples.
fn abelian_generators(ctx: &FieldCtx, members: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let Some(first) = members.first() else {
        return Vec::new();
    };
    let one = vec![Fe::ONE; first.len()];
    let mul = |a: &[Fe], b: &[Fe]| -> Vec<Fe> {
        a.iter().zip(b).map(|(&x, &y)| ctx.mul(x, y)).collect()
    };
    let mut span: HashSet<Vec<Fe>> = HashSet::from([one.clone()]);
    let mut gens = Vec::new();
    for g in members {
        if span.contains(g) {
            continue;
        }
        gens.push(g.clone());
        let mut next: HashSet<Vec<Fe>> = span.clone();
        let mut power = g.clone();
        while power != one {
            for h in &span {
                next.insert(mul(h, &power));
            }
            power = mul(&power, g);
        }
        span = next;
    }
    gens
}

/// `|GL_n(F_q)|` as an integer count, for comparisons with enumerations.
pub fn gl_order_u64(n: u32, q: u64) -> Option<u64> {
    gl_order(n, q).to_u64()
}

/// `q(n) = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: u32, q: u64) -> u64 {
    (0..n).map(|i| q.pow(i)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f4() -> FieldCtx {
        make_field(FieldSpec::new(2, 1, 2)).unwrap()
    }

    fn omega(ctx: &FieldCtx) -> Fe {
        ctx.from_coeffs(&[0, 1]).unwrap()
    }

    #[test]
    fn det_examples() {
        let ctx = f4();
        let w = omega(&ctx);
        assert_eq!(Mat::identity(3).det(&ctx), Fe::ONE);
        let m = Mat::from_rows(vec![vec![Fe::ONE, Fe::ONE], vec![w, ctx.square(w)]]).unwrap();
        // w^2 - w = 1 in F_4
        assert_eq!(m.det(&ctx), Fe::ONE);
        let f3 = make_field(FieldSpec::new(3, 1, 1)).unwrap();
        for n in 2..6 {
            let expected = if n % 2 == 1 { Fe::ONE } else { f3.neg(Fe::ONE) };
            assert_eq!(coxeter_matrix(n).det(&f3), expected, "n = {n}");
        }
    }

    #[test]
    fn inverse_examples() {
        let ctx = f4();
        let w = omega(&ctx);
        let w2 = ctx.square(w);
        let m = Mat::from_rows(vec![vec![Fe::ONE, Fe::ONE], vec![w, w2]]).unwrap();
        let expected = Mat::from_rows(vec![vec![w2, Fe::ONE], vec![w, Fe::ONE]]).unwrap();
        assert_eq!(m.inverse(&ctx).unwrap(), expected);
        assert!(m.mul(&expected, &ctx).is_identity());
        let d = Mat::diagonal(&[w, w2]);
        assert_eq!(d.inverse(&ctx).unwrap(), Mat::diagonal(&[w2, w]));
        assert_eq!(Mat::zeros(2).inverse(&ctx), Err(Error::Singular));
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(sl_order(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order(2, 3), BigUint::from(48u32));
        assert_eq!(sl_order(2, 3), BigUint::from(24u32));
        assert_eq!(gl_order(1, 5), BigUint::from(4u32));
        assert_eq!(sl_order(1, 5), BigUint::from(1u32));
    }

    #[test]
    fn gl_enumeration_counts() {
        let f2 = make_field(FieldSpec::new(2, 1, 1)).unwrap();
        assert_eq!(enumerate_gl(&f2, 2, DEFAULT_GROUP_BOUND).unwrap().len(), 6);
        let f3 = make_field(FieldSpec::new(3, 1, 1)).unwrap();
        assert_eq!(enumerate_gl(&f3, 1, DEFAULT_GROUP_BOUND).unwrap().len(), 2);
        let g23 = enumerate_gl(&f3, 2, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(g23.len(), 48);
        assert_eq!(enumerate_sl(&f3, 2, DEFAULT_GROUP_BOUND).unwrap().len(), 24);
        let ctx = f4();
        let all = enumerate_gl_over(&ctx, 2, &ctx.elements().collect::<Vec<_>>());
        assert_eq!(all.len(), 180);
        let unique: HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), 180);
        assert!(all.iter().all(|g| !g.det(&ctx).is_zero()));
        assert!(matches!(
            enumerate_gl(&f3, 3, 1000),
            Err(Error::OrderOverflow { .. })
        ));
    }

    #[test]
    fn lang_map_examples() {
        let ctx = f4();
        let w = omega(&ctx);
        assert!(lang_map(&ctx, &Mat::identity(2)).unwrap().is_identity());
        let g = Mat::diagonal(&[w, Fe::ONE]);
        // w^{-1} w^2 = w
        assert_eq!(lang_map(&ctx, &g).unwrap(), Mat::diagonal(&[w, Fe::ONE]));
        for gamma in enumerate_gl(&ctx, 2, DEFAULT_GROUP_BOUND).unwrap() {
            assert!(lang_map(&ctx, &gamma).unwrap().is_identity());
            let lhs = lang_map(&ctx, &gamma.mul(&g, &ctx)).unwrap();
            assert_eq!(lhs, lang_map(&ctx, &g).unwrap());
        }
    }

    #[test]
    fn coxeter_layout() {
        let f2 = make_field(FieldSpec::new(2, 1, 1)).unwrap();
        let o = Fe::ONE;
        let z = Fe::ZERO;
        assert_eq!(
            coxeter_matrix(2),
            Mat::from_rows(vec![vec![z, o], vec![o, z]]).unwrap()
        );
        assert_eq!(
            coxeter_matrix(3),
            Mat::from_rows(vec![vec![z, z, o], vec![o, z, z], vec![z, o, z]]).unwrap()
        );
        // conjugating x_{i,j} by w shifts both indices by one
        let w = coxeter_matrix(4);
        let winv = w.inverse(&f2).unwrap();
        let mut e = Mat::identity(4);
        e.set(0, 2, o);
        let shifted = w.mul(&e, &f2).mul(&winv, &f2);
        let mut expected = Mat::identity(4);
        expected.set(1, 3, o);
        assert_eq!(shifted, expected);
    }

    #[test]
    fn perm_words() {
        let w = PermWord::from_cycles(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(w.cycle_lengths(), vec![2, 2]);
        assert_eq!(w.to_string(), "(1,2)(3,4)");
        assert!(PermWord::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(PermWord::from_cycles(3, &[vec![4]]).is_err());
        assert_eq!(PermWord::all(3).len(), 6);
        assert_eq!(PermWord::block_cycles(5, 2, 2).unwrap().cycle_lengths(), vec![2, 2, 1]);
        assert_eq!(PermWord::coxeter(3).matrix(), coxeter_matrix(3));
    }

    #[test]
    fn torus_examples() {
        let id = PermWord::identity(2);
        let r = torus_fixed(&id, 2, 1, TorusVariant::Gl, 1 << 20).unwrap();
        assert_eq!((r.order, r.counted), (1, 1));
        let swap = PermWord::from_cycles(2, &[vec![1, 2]]).unwrap();
        let r = torus_fixed(&swap, 2, 1, TorusVariant::Gl, 1 << 20).unwrap();
        assert_eq!((r.order, r.counted, r.ext_degree), (3, 3, 2));
        assert_eq!(r.generators.len(), 1);
        let r = torus_fixed(&swap, 2, 1, TorusVariant::Sl, 1 << 20).unwrap();
        assert_eq!((r.order, r.counted), (3, 3));
        let r = torus_fixed(&swap, 3, 1, TorusVariant::Sl, 1 << 20).unwrap();
        assert_eq!((r.order, r.counted), (4, 4));
    }
}
