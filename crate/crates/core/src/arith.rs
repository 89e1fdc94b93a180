//! Arbitrary-precision integer utilities: integer square root, perfect-square
//! detection, the Kronecker symbol, odd-part factorization and square-root
//! residue enumeration modulo d.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::big;

/// Floor of the square root of a non-negative integer.
///
/// The result r satisfies r² ≤ n < (r+1)².
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative input {n}");
    n.sqrt()
}

/// Returns the root when `n` is a perfect square, `None` otherwise.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Kronecker symbol (a/n) for n ≥ 1.
///
/// Multiplicative in both arguments; for an odd prime p this is the Legendre
/// symbol, so (±2/p) matches the classical (−1)^ω(p) and (−1)^{ω(p)+ε(p)}
/// evaluations with ω(p) = (p²−1)/8 and ε(p) = (p−1)/2.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i8 {
    assert!(n.is_positive(), "kronecker modulus must be >= 1, got {n}");
    let mut a = a.clone();
    let mut n = n.clone();
    let mut result: i8 = 1;
    let eight = big(8);
    let four = big(4);
    let three = big(3);
    let five = big(5);
    while n.is_even() {
        n /= 2;
        if a.is_even() {
            return 0;
        }
        let a8 = a.mod_floor(&eight);
        if a8 == three || a8 == five {
            result = -result;
        }
    }
    // n is odd and positive from here: plain Jacobi with reciprocity
    a = a.mod_floor(&n);
    while !a.is_zero() {
        while a.is_even() {
            a /= 2;
            let n8 = n.mod_floor(&eight);
            if n8 == three || n8 == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

/// Complete factorization of the odd part of `d`, primes ascending.
///
/// The product of the returned p^m times the 2-part of d reconstructs d.
pub fn odd_prime_factors(d: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(d.is_positive(), "factorization input must be >= 1, got {d}");
    let mut m = d.clone();
    while m.is_even() {
        m /= 2;
    }
    let mut out = Vec::new();
    let mut p = big(3);
    while &p * &p <= m {
        if m.mod_floor(&p).is_zero() {
            let mut e = 0u32;
            while m.mod_floor(&p).is_zero() {
                m /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 2;
    }
    if m > BigInt::one() {
        out.push((m, 1));
    }
    out
}

/// All k in [0, d−1] with k² ≡ c (mod d), ascending.
pub fn sqrt_residues_mod(d: &BigInt, c: &BigInt) -> Vec<BigInt> {
    assert!(d.is_positive(), "modulus must be >= 1, got {d}");
    let target = c.mod_floor(d);
    let mut out = Vec::new();
    let mut k = BigInt::zero();
    // k² mod d maintained incrementally: (k+1)² = k² + 2k + 1
    let mut sq = BigInt::zero();
    while &k < d {
        if sq == target {
            out.push(k.clone());
        }
        sq += (&k << 1) + 1;
        sq = sq.mod_floor(d);
        k += 1;
    }
    out
}
