//! Small integer helpers: primality, factoring of group orders, and
//! dense polynomial arithmetic over a prime field F_p.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `base^exp` if it fits in a u64.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `Some(k)` when `n = p^k` for the prime `p`.
pub fn log_exact(n: u64, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let (mut n, mut k) = (n, 0);
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// Polynomials over F_p, coefficients low degree first, no trailing zeros.
pub(crate) mod fp_poly {
    pub type Poly = Vec<u64>;

    pub fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        // p is prime, so a^(p-2) is the inverse
        let mut base = a % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
        let len = a.len().max(b.len());
        let mut out: Poly = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn rem(a: &Poly, m: &Poly, p: u64) -> Poly {
        let mut r = a.clone();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let factor = r[top] * lead_inv % p;
            let shift = top - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_mod(a: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
        let mut base = rem(a, m, p);
        let mut acc: Poly = rem(&vec![1], m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test for a monic `f` of degree `d`.
    pub fn is_irreducible(f: &Poly, p: u64) -> bool {
        let d = f.len() - 1;
        if d == 1 {
            return true;
        }
        let x: Poly = vec![0, 1];
        // x^(p^k) mod f for k = 0..=d
        let mut frob = Vec::with_capacity(d + 1);
        frob.push(rem(&x, f, p));
        for k in 1..=d {
            let prev = &frob[k - 1];
            frob.push(pow_mod(prev, p, f, p));
        }
        if sub(&frob[d], &x, p) != Vec::<u64>::new() {
            return false;
        }
        for r in super::prime_factors(d as u64) {
            let k = d / r as usize;
            let g = gcd(&sub(&frob[k], &x, p), f, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_factors(63), vec![3, 7]);
        assert_eq!(prime_factors(4095), vec![3, 5, 7, 13]);
        assert_eq!(log_exact(81, 3), Some(4));
        assert_eq!(log_exact(12, 2), None);
    }

    #[test]
    fn irreducibles_over_f2() {
        // x^2+x+1 is the only irreducible quadratic over F_2
        let quads: Vec<_> = (0..4u64)
            .map(|c| vec![c & 1, c >> 1, 1])
            .filter(|f| fp_poly::is_irreducible(f, 2))
            .collect();
        assert_eq!(quads, vec![vec![1, 1, 1]]);
        // x^4+x^2+1 = (x^2+x+1)^2
        assert!(!fp_poly::is_irreducible(&vec![1, 0, 1, 0, 1], 2));
        assert!(fp_poly::is_irreducible(&vec![1, 1, 0, 0, 1], 2));
    }
}
