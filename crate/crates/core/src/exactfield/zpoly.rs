//! Dense integer polynomials (index `k` holds the coefficient of `ζ^k`) and
//! the multi-modular gcd behind rational-function normalization.

use std::sync::OnceLock;

use rug::Integer;

pub(crate) type ZPoly = Vec<Integer>;

pub(crate) fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.cmp0().is_eq()) {
        p.pop();
    }
}

pub(crate) fn is_zero(p: &[Integer]) -> bool {
    p.iter().all(|c| c.cmp0().is_eq())
}

pub(crate) fn content(p: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for c in p {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive(p: &[Integer]) -> ZPoly {
    let mut out: ZPoly = p.to_vec();
    trim(&mut out);
    if out.is_empty() {
        return out;
    }
    let mut g = content(&out);
    if out.last().unwrap().cmp0().is_lt() {
        g = -g;
    }
    if g != 1 {
        for c in &mut out {
            c.div_exact_mut(&g);
        }
    }
    out
}

pub(crate) fn mul(a: &[Integer], b: &[Integer]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.cmp0().is_eq() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.cmp0().is_eq() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient `a / b` over `Z[ζ]`, or `None` when `b` does not divide `a`.
///
/// For primitive `b`, divisibility over `Q[ζ]` and over `Z[ζ]` coincide, so a
/// `None` here is a proof of non-divisibility over the rationals as well.
pub(crate) fn div_exact(a: &[Integer], b: &[Integer]) -> Option<ZPoly> {
    let db = b
        .len()
        .checked_sub(1)
        .expect("division by the zero polynomial");
    if is_zero(a) {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lc = &b[db];
    let mut rem: ZPoly = a.to_vec();
    let mut quo = vec![Integer::new(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db];
        if c.cmp0().is_eq() {
            continue;
        }
        if !c.is_divisible(lc) {
            return None;
        }
        let qk = Integer::from(c.div_exact_ref(lc));
        for (j, bj) in b.iter().enumerate() {
            if bj.cmp0().is_ne() {
                rem[k + j] -= &qk * bj;
            }
        }
        quo[k] = qk;
    }
    if rem[..db].iter().any(|c| c.cmp0().is_ne()) {
        return None;
    }
    Some(quo)
}

const PRIME_COUNT: usize = 4096;

/// Descending primes below 2^62, generated once.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut candidate = Integer::from((1u64 << 62) - 1);
        while out.len() < PRIME_COUNT {
            if candidate.is_probably_prime(30) != rug::integer::IsPrime::No {
                out.push(candidate.to_u64().unwrap());
            }
            candidate -= 2;
        }
        out
    })
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn reduce(c: &Integer, p: u64) -> u64 {
    let mut r = Integer::from(c % p);
    if r.cmp0().is_lt() {
        r += p;
    }
    r.to_u64().unwrap()
}

fn reduce_poly(a: &[Integer], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd over `F_p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        // a <- a mod b
        let db = b.len() - 1;
        let inv = invmod(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let f = mulmod(a[da], inv, p);
            if f != 0 {
                let shift = da - db;
                for (j, bj) in b.iter().enumerate() {
                    let t = mulmod(f, *bj, p);
                    let slot = &mut a[shift + j];
                    *slot = if *slot >= t { *slot - t } else { *slot + p - t };
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = invmod(lc, p);
        for c in &mut a {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

/// Primitive gcd (positive leading coefficient) of two nonzero integer
/// polynomials, by reduction modulo word-size primes, Chinese remaindering
/// and a final trial division.
pub(crate) fn gcd(a: &[Integer], b: &[Integer]) -> ZPoly {
    let a = primitive(a);
    let b = primitive(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![Integer::from(1)];
    }
    if a == b {
        return a;
    }
    let lc_a = a.last().unwrap();
    let lc_b = b.last().unwrap();
    let gamma = Integer::from(lc_a.gcd_ref(lc_b));

    let mut best_degree = usize::MAX;
    let mut acc: Option<(ZPoly, Integer)> = None;
    let mut last_candidate: Option<ZPoly> = None;

    for &p in primes() {
        if reduce(lc_a, p) == 0 || reduce(lc_b, p) == 0 {
            continue;
        }
        let g = gcd_mod(reduce_poly(&a, p), reduce_poly(&b, p), p);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![Integer::from(1)];
        }
        if deg > best_degree {
            continue;
        }
        if deg < best_degree {
            best_degree = deg;
            acc = None;
            last_candidate = None;
        }
        let gm = reduce(&gamma, p);
        let g: Vec<u64> = g.iter().map(|&c| mulmod(c, gm, p)).collect();

        let (h, modulus) = match acc.take() {
            None => (
                g.iter().map(|&c| Integer::from(c)).collect::<ZPoly>(),
                Integer::from(p),
            ),
            Some((mut h, modulus)) => {
                let minv = invmod(reduce(&modulus, p), p);
                for (hi, &gi) in h.iter_mut().zip(&g) {
                    let hm = reduce(hi, p);
                    let t = mulmod((gi + p - hm) % p, minv, p);
                    *hi += Integer::from(&modulus * t);
                }
                (h, modulus * p)
            }
        };
        let half = Integer::from(&modulus >> 1);
        let symmetric: ZPoly = h
            .iter()
            .map(|c| {
                if *c > half {
                    Integer::from(c - &modulus)
                } else {
                    c.clone()
                }
            })
            .collect();
        let candidate = primitive(&symmetric);
        acc = Some((h, modulus));

        let stable = last_candidate.as_ref() == Some(&candidate);
        if stable && div_exact(&a, &candidate).is_some() && div_exact(&b, &candidate).is_some() {
            return candidate;
        }
        last_candidate = Some(candidate);
    }
    unreachable!("multi-modular gcd exhausted {PRIME_COUNT} primes")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| Integer::from(c)).collect()
    }

    #[test]
    fn div_exact_detects_remainder() {
        // (ζ^2 - 1) / (ζ - 1) = ζ + 1
        assert_eq!(div_exact(&z(&[-1, 0, 1]), &z(&[-1, 1])), Some(z(&[1, 1])));
        assert_eq!(div_exact(&z(&[1, 0, 1]), &z(&[-1, 1])), None);
    }

    #[test]
    fn gcd_of_products() {
        let f = z(&[3, -7, 0, 2]);
        let g = z(&[5, 1, 4]);
        let h = z(&[-11, 0, 6]);
        let a = mul(&f, &g);
        let b = mul(&f, &h);
        assert_eq!(gcd(&a, &b), primitive(&f));
        assert_eq!(gcd(&g, &h), z(&[1]));
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let big: Integer = Integer::from(Integer::u_pow_u(10, 60)) + 7;
        let f = vec![big.clone(), Integer::from(3), Integer::from(1)];
        let g = vec![Integer::from(-1), big, Integer::from(2)];
        let h = vec![
            Integer::from(5),
            Integer::from(0),
            Integer::from(0),
            Integer::from(9),
        ];
        let a = mul(&mul(&f, &g), &g);
        let b = mul(&mul(&f, &h), &g);
        assert_eq!(gcd(&a, &b), primitive(&mul(&f, &g)));
    }
}
