//! Integer helpers: primality, factoring of group orders, modular arithmetic.

use crate::error::{Error, Result};

pub use num_integer::Integer;

pub fn gcd(a: u128, b: u128) -> u128 {
    a.gcd(&b)
}

pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let (Ok(a64), Ok(b64)) = (u64::try_from(a), u64::try_from(b)) {
        return (a64 as u128 * b64 as u128) % m;
    }
    // Double-and-add; only reached for moduli above 2^64.
    let (mut a, mut b, mut acc) = (a % m, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a as u128, (p - 2) as u128, p as u128) as u64)
    }
}

/// Deterministic Miller-Rabin. Exact for every `n < 2^64`; for larger inputs
/// the first twelve prime bases make a false positive vanishingly unlikely.
pub fn is_prime(n: u128) -> bool {
    const BASES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n == b {
            return true;
        }
        if n.is_multiple_of(b) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorisation as `(prime, multiplicity)` pairs, ascending.
pub fn factor(mut n: u128) -> Result<Vec<(u128, u32)>> {
    let mut out = Vec::new();
    if n <= 1 {
        return Ok(out);
    }
    let mut d = 2u128;
    while d < (1 << 16) && d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut large = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            large.push(m);
            continue;
        }
        let f = pollard_brent(m)?;
        stack.push(f);
        stack.push(m / f);
    }
    large.sort_unstable();
    for q in large {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn pollard_brent(n: u128) -> Result<u128> {
    if n.is_multiple_of(2) {
        return Ok(2);
    }
    let budget: u64 = if n < (1u128 << 64) { 1 << 26 } else { 1 << 20 };
    for c in 1..64u128 {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut y, mut r, mut q, mut g) = (2u128, 1u64, 1u128, 1u128);
        let (mut x, mut ys) = (0u128, 0u128);
        let mut steps = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
            steps += r;
            if steps > budget {
                return Err(Error::CapExceeded(format!("cannot factor {n}")));
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Ok(g);
        }
    }
    Err(Error::CapExceeded(format!("cannot factor {n}")))
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u128) -> Result<Vec<u128>> {
    Ok(factor(n)?.into_iter().map(|(q, _)| q).collect())
}

/// Reduce a signed integer into `[0, m)`.
pub fn reduce_signed(v: i128, m: u128) -> u128 {
    let m_i = m as i128;
    let r = v % m_i;
    if r < 0 {
        (r + m_i) as u128
    } else {
        r as u128
    }
}
