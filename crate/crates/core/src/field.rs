//! The finite-field tower F_p ⊂ F_q ⊂ F_{q^m}.
//!
//! A [`FieldCtx`] realises F_{p^{s·m}} as F_p[x]/(f) where `f` is the
//! lexicographically smallest monic irreducible of degree `s·m`, comparing
//! coefficient sequences constant term first. Elements are [`Fe`] values
//! packing the coefficient vector as a base-p integer, so the natural
//! integer order on encodings is the enumeration order.
//!
//! Fields with at most 2^16 elements get log/antilog tables; larger ones
//! fall back to polynomial multiplication modulo `f`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{self, fp_poly};
use crate::error::{Error, Result};

/// Default cap on the number of elements of a constructed field.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 24;

const TABLE_LIMIT: u64 = 1 << 16;

/// `p`, `s` and `m` of the tower F_p ⊂ F_q ⊂ F_{q^m}, q = p^s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
    pub m: u32,
}

impl FieldSpec {
    pub fn new(p: u32, s: u32, m: u32) -> Self {
        Self { p, s, m }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }

    /// Degree over F_p.
    pub fn degree(&self) -> u32 {
        self.s * self.m
    }

    pub fn with_ext(self, m: u32) -> Self {
        Self { m, ..self }
    }

    /// Parses the base part `"p^s"` (or a bare prime `"p"`).
    pub fn parse_base(text: &str) -> Result<(u32, u32)> {
        let bad = || Error::InvalidSpec(text.to_string());
        let (p, s) = match text.trim().split_once('^') {
            Some((p, s)) => (p.trim(), s.trim()),
            None => (text.trim(), "1"),
        };
        let p = p.parse::<u32>().map_err(|_| bad())?;
        let s = s.parse::<u32>().map_err(|_| bad())?;
        Ok((p, s))
    }

    fn validate(&self) -> Result<()> {
        if !arith::is_prime(self.p as u64) {
            return Err(Error::NonPrime(self.p as u64));
        }
        if self.s == 0 || self.m == 0 {
            return Err(Error::InvalidSpec(format!("{self}: s and m must be positive")));
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:{}", self.p, self.s, self.m)
    }
}

/// Accepts `"p^s:m"`; a missing `:m` means `m = 1`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (base, m) = match text.split_once(':') {
            Some((b, m)) => (
                b,
                m.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidSpec(text.to_string()))?,
            ),
            None => (text, 1),
        };
        let (p, s) = Self::parse_base(base)?;
        Ok(Self { p, s, m })
    }
}

/// A field element: its F_p coefficient vector packed base p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    /// `exp[k] = g^k` for k in 0..2(N-1), doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// An immutable constructed field F_{p^{s·m}}.
pub struct FieldCtx {
    spec: FieldSpec,
    p: u32,
    q: u64,
    degree: usize,
    size: u32,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
    primitive: Fe,
    group_order_factors: Vec<u64>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("spec", &self.spec)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Builds F_{q^m} with the default enumeration bound.
pub fn make_field(spec: FieldSpec) -> Result<FieldCtx> {
    FieldCtx::new(spec)
}

impl FieldCtx {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        Self::with_bound(spec, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(spec: FieldSpec, bound: u64) -> Result<Self> {
        spec.validate()?;
        let degree = spec.degree();
        let overflow = Error::DegreeOverflow {
            p: spec.p as u64,
            degree,
            bound,
        };
        let size = arith::checked_pow(spec.p as u64, degree).ok_or(overflow.clone())?;
        if size > bound || size > u32::MAX as u64 {
            return Err(overflow);
        }
        let p = spec.p;
        let modulus = smallest_irreducible(p as u64, degree as usize);
        let mut ctx = FieldCtx {
            spec,
            p,
            q: spec.q(),
            degree: degree as usize,
            size: size as u32,
            modulus,
            tables: None,
            primitive: Fe::ONE,
            group_order_factors: arith::prime_factors(size - 1),
        };
        ctx.primitive = ctx.find_primitive();
        if size <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree over F_p.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u64 {
        self.size as u64
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Comma-separated base-p coefficients, constant term first.
    pub fn modulus_string(&self) -> String {
        self.modulus
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn primitive(&self) -> Fe {
        self.primitive
    }

    /// The element with the given encoding.
    pub fn elem(&self, index: u32) -> Fe {
        assert!(index < self.size, "encoding {index} out of range");
        Fe(index)
    }

    /// Image of an integer under Z → F_p ⊂ F.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.degree)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.degree || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidSpec(format!(
                "{coeffs:?} is not a coefficient vector of {}",
                self.spec
            )));
        }
        Ok(Fe(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Fe> + Clone {
        (0..self.size).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return Fe((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.degree {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        if self.degree == 1 {
            return Fe((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.degree {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        if self.degree == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let p = self.p as u64;
        let to_poly = |x: Fe| -> fp_poly::Poly {
            let mut v: Vec<u64> = self.coeffs(x).into_iter().map(u64::from).collect();
            fp_poly::trim(&mut v);
            v
        };
        let modulus: fp_poly::Poly = self.modulus.iter().map(|&c| c as u64).collect();
        let prod = fp_poly::mul_mod(&to_poly(a), &to_poly(b), &modulus, p);
        Fe(prod.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32)
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = (self.size - 1) as u128;
            let k = (t.log[a.0 as usize] as u128 * (e as u128 % n)) % n;
            return Fe(t.exp[k as usize]);
        }
        let mut e = e % (self.size as u64 - 1);
        let (mut base, mut acc) = (a, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = self.size - 1;
                Fe(t.exp[((n - t.log[a.0 as usize]) % n) as usize])
            }
            None => self.pow(a, self.size as u64 - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// The q-power Frobenius `a ↦ a^q`.
    pub fn frobenius_q(&self, a: Fe) -> Fe {
        self.pow(a, self.q)
    }

    /// `a^{q^k}`.
    pub fn frobenius_pow(&self, a: Fe, k: u32) -> Fe {
        (0..k).fold(a, |x, _| self.frobenius_q(x))
    }

    /// Smallest `k ≥ 1` with `a^k = 1`.
    pub fn mult_order(&self, a: Fe) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let n = self.size as u64 - 1;
        if let Some(t) = &self.tables {
            return Ok(n / (t.log[a.0 as usize] as u64).gcd(&n));
        }
        let mut order = n;
        for &r in &self.group_order_factors {
            while order.is_multiple_of(r) && self.pow(a, order / r) == Fe::ONE {
                order /= r;
            }
        }
        Ok(order)
    }

    /// Discrete log base [`Self::primitive`] (table-backed fields only).
    pub fn log(&self, a: Fe) -> Option<u32> {
        match &self.tables {
            Some(t) if a.0 != 0 => Some(t.log[a.0 as usize]),
            _ => None,
        }
    }

    pub fn is_in_base(&self, a: Fe) -> bool {
        self.frobenius_q(a) == a
    }

    /// The subfield F_q, sorted by encoding.
    pub fn base_subfield(&self) -> Vec<Fe> {
        let q1 = self.q - 1;
        let zeta = self.pow(self.primitive, (self.size as u64 - 1) / q1);
        let mut out = vec![Fe::ZERO];
        let mut x = Fe::ONE;
        for _ in 0..q1 {
            out.push(x);
            x = self.mul(x, zeta);
        }
        out.sort();
        out
    }

    /// A primitive element of F_q, whose powers 1..ζ^{s-1} are an F_p-basis of F_q.
    pub fn base_generator(&self) -> Fe {
        self.pow(self.primitive, (self.size as u64 - 1) / (self.q - 1))
    }

    fn find_primitive(&self) -> Fe {
        let n = self.size as u64 - 1;
        if n == 1 {
            return Fe::ONE;
        }
        (1..self.size)
            .map(Fe)
            .find(|&g| {
                self.group_order_factors
                    .iter()
                    .all(|&r| self.pow_slow(g, n / r) != Fe::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn pow_slow(&self, a: Fe, mut e: u64) -> Fe {
        let (mut base, mut acc) = (a, Fe::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.size - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.size as usize];
        let mut x = Fe::ONE;
        for k in 0..n.max(1) {
            exp[k] = x.0;
            log[x.0 as usize] = k as u32;
            x = self.mul_slow(x, self.primitive);
        }
        for k in n..2 * n {
            exp[k] = exp[k - n];
        }
        LogTables { exp, log }
    }

    /// Embeds this field into `target` by sending the generator x to the
    /// smallest root of this modulus in `target`.
    pub fn embed_into(&self, target: &FieldCtx) -> Result<Embedding> {
        if self.p != target.p || !target.degree.is_multiple_of(self.degree) {
            return Err(Error::Incompatible(format!(
                "{} does not embed in {}",
                self.spec, target.spec
            )));
        }
        let root = target
            .elements()
            .find(|&b| {
                let value = self
                    .modulus
                    .iter()
                    .rev()
                    .fold(Fe::ZERO, |acc, &c| target.add(target.mul(acc, b), Fe(c)));
                value.is_zero()
            })
            .ok_or_else(|| Error::Incompatible("modulus has no root".into()))?;
        let mut powers = Vec::with_capacity(self.degree);
        let mut x = Fe::ONE;
        for _ in 0..self.degree {
            powers.push(x);
            x = target.mul(x, root);
        }
        Ok(Embedding { powers })
    }
}

/// A field homomorphism between two constructed contexts.
#[derive(Debug, Clone)]
pub struct Embedding {
    powers: Vec<Fe>,
}

impl Embedding {
    pub fn map(&self, source: &FieldCtx, target: &FieldCtx, a: Fe) -> Fe {
        source
            .coeffs(a)
            .iter()
            .zip(&self.powers)
            .fold(Fe::ZERO, |acc, (&c, &b)| {
                target.add(acc, target.mul(Fe(c), b))
            })
    }
}

fn smallest_irreducible(p: u64, degree: usize) -> Vec<u32> {
    // counter over (c_0, ..., c_{d-1}) with c_0 most significant
    let mut low = vec![0u64; degree];
    loop {
        let mut f = low.clone();
        f.push(1);
        if (f[0] != 0 || degree == 1)
            && fp_poly::is_irreducible(&f, p) {
                return f.into_iter().map(|c| c as u32).collect();
            }
        let mut pos = degree;
        loop {
            pos -= 1;
            low[pos] += 1;
            if low[pos] < p {
                break;
            }
            low[pos] = 0;
            assert!(pos > 0, "no irreducible polynomial found");
        }
    }
}

/// Multiplicative order of `q` modulo the prime `ell`.
pub fn ord_mod(q: u64, ell: u64) -> Result<u64> {
    if !arith::is_prime(ell) {
        return Err(Error::NonPrime(ell));
    }
    if q.gcd(&ell) != 1 {
        return if arith::log_exact(q, ell).is_some() {
            Err(Error::EllEqualsP(ell))
        } else {
            Err(Error::NotCoprime { q, ell })
        };
    }
    let base = q % ell;
    let mut x = base;
    let mut r = 1;
    while x != 1 {
        x = x * base % ell;
        r += 1;
    }
    Ok(r)
}

/// Every element of the field, checked against the enumeration bound.
pub fn enumerate_field(ctx: &FieldCtx, bound: u64) -> Result<Vec<Fe>> {
    if ctx.size() > bound {
        return Err(Error::DegreeOverflow {
            p: ctx.p as u64,
            degree: ctx.degree as u32,
            bound,
        });
    }
    Ok(ctx.elements().collect())
}
