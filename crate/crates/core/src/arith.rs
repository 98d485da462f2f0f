//! Small exact-integer utilities: primality, factorization, square classes.
//!
//! Everything here is deterministic. Factorization is desk-scale by design:
//! trial division plus Pollard rho on 64-bit values, which covers every
//! discriminant and diagonal entry the rest of the crate produces.

use crate::{Error, Int, Rat, Result};
use num_bigint::Sign;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// All primes `<= n` by sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // this base set decides primality for all n < 2^64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // n must be odd, composite, not a prime power caught by trial division
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of a positive 64-bit integer as sorted `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, e: u32, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            out.push((p, e));
        }
    };
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            n /= p;
            push(p, 1, &mut out);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, 1, &mut out);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    out.sort_unstable();
    out
}

/// Prime factorization of a nonzero `Int` whose magnitude fits in 64 bits.
///
/// Everything this crate factors (discriminants, diagonal entries of
/// desk-scale forms) stays far below that; anything larger is a bug upstream.
pub fn factor_int(n: &Int) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(Error::Internal("factor_int called on zero".into()));
    }
    let mag = n.abs().to_u64().ok_or_else(|| {
        Error::Internal(format!("{n} is beyond the desk-scale factorization range"))
    })?;
    Ok(factor_u64(mag))
}

/// The squarefree part of a nonzero integer: `sign(n) * prod of primes with odd exponent`.
pub fn squarefree_part(n: &Int) -> Result<Int> {
    let mut part = Int::one();
    for (p, e) in factor_int(n)? {
        if e % 2 == 1 {
            part *= Int::from(p);
        }
    }
    if n.sign() == Sign::Minus {
        part = -part;
    }
    Ok(part)
}

/// Is `n` a perfect square? (Negative integers are not.)
pub fn is_perfect_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Is the rational `r` a square in Q?
pub fn is_rational_square(r: &Rat) -> bool {
    !r.is_negative() && is_perfect_square(r.numer()) && is_perfect_square(r.denom())
}

/// The exact `n`-th root of a positive rational, if one exists.
pub fn rational_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    if !r.is_positive() {
        return None;
    }
    let num = r.numer().nth_root(n);
    let den = r.denom().nth_root(n);
    if &num.pow(n) == r.numer() && &den.pow(n) == r.denom() {
        Some(Rat::new(num, den))
    } else {
        None
    }
}

/// Parse `p/q` or a plain integer into an exact rational.
pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    let make = |t: &str| t.parse::<Int>().map_err(|_| format!("bad integer `{t}`"));
    match s.split_once('/') {
        Some((num, den)) => {
            let n = make(num)?;
            let d = make(den)?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from(make(s)?)),
    }
}

/// Render a rational as `p/q`, or just `p` when integral.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_miller_rabin_agree() {
        let sieved = primes_up_to(2000);
        for n in 0..=2000u64 {
            assert_eq!(is_prime_u64(n), sieved.contains(&n), "n = {n}");
        }
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 97, 2 * 3 * 5 * 7 * 11, 1 << 40, 999_983 * 7] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back, n);
            for (p, _) in &f {
                assert!(is_prime_u64(*p));
            }
        }
    }

    #[test]
    fn squarefree_and_square_checks() {
        assert_eq!(squarefree_part(&Int::from(12)).unwrap(), Int::from(3));
        assert_eq!(squarefree_part(&Int::from(-50)).unwrap(), Int::from(-2));
        assert!(is_perfect_square(&Int::from(144)));
        assert!(!is_perfect_square(&Int::from(-4)));
        assert!(is_rational_square(&Rat::new(Int::from(9), Int::from(16))));
        assert!(!is_rational_square(&Rat::new(Int::from(3), Int::from(4))));
    }

    #[test]
    fn nth_roots() {
        let r = Rat::new(Int::from(27), Int::from(8));
        assert_eq!(
            rational_nth_root(&r, 3),
            Some(Rat::new(Int::from(3), Int::from(2)))
        );
        assert_eq!(rational_nth_root(&r, 2), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("3/2").unwrap(), Rat::new(Int::from(3), Int::from(2)));
        assert_eq!(parse_rat("-7").unwrap(), Rat::from(Int::from(-7)));
        assert!(parse_rat("1/0").is_err());
        assert_eq!(rat_to_string(&parse_rat("6/4").unwrap()), "3/2");
    }
}
