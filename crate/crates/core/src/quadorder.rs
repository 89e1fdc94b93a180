//! Arithmetic in the real quadratic order of odd discriminant d.
//!
//! Elements are written (x + y√d)/2 with x ≡ y (mod 2), the order
//! Z + Z·(1+√d)/2. The intersection pairing of the rank-2 lattice N²_d
//! corresponds to the norm here via z² = 2·N(z), so positive units are
//! square-2 classes and negative units are (−2)-roots. The fundamental unit
//! ε₀ = (s + t√d)/2 is computed by the classical continued-fraction
//! recursion on the reduced principal surd, entirely in exact integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, isqrt};
use crate::{big, DomainError};

/// An element (x + y√d)/2 of the order of discriminant d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    d: BigInt,
    x: BigInt,
    y: BigInt,
}

impl QuadInt {
    /// Builds (x + y√d)/2. Panics unless d > 0 and x ≡ y (mod 2).
    pub fn new(d: BigInt, x: BigInt, y: BigInt) -> Self {
        assert!(d.is_positive(), "discriminant must be positive, got {d}");
        assert_eq!(
            x.mod_floor(&big(2)),
            y.mod_floor(&big(2)),
            "coordinates must have equal parity: ({x} + {y}*sqrt({d}))/2"
        );
        QuadInt { d, x, y }
    }

    /// The rational integer n as an element (2n + 0√d)/2.
    pub fn from_int(d: BigInt, n: &BigInt) -> Self {
        QuadInt::new(d, n * 2, BigInt::zero())
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    /// Product in the order; panics on mismatched discriminants.
    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        assert_eq!(self.d, other.d, "mismatched discriminants in product");
        let x = (&self.x * &other.x + &self.d * &self.y * &other.y) / 2;
        let y = (&self.x * &other.y + &self.y * &other.x) / 2;
        QuadInt::new(self.d.clone(), x, y)
    }

    /// Conjugate (x − y√d)/2; an involution.
    pub fn conj(&self) -> QuadInt {
        QuadInt {
            d: self.d.clone(),
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    /// Norm z·z̄ = (x² − d·y²)/4, always an integer on the order.
    pub fn norm(&self) -> BigInt {
        (&self.x * &self.x - &self.d * &self.y * &self.y) / 4
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt {
            d: self.d.clone(),
            x: -&self.x,
            y: -&self.y,
        }
    }
}

/// The fundamental unit ε₀ = (s + t√d)/2 > 1 with s, t > 0 and
/// s² − d·t² = 4·norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub s: BigInt,
    pub t: BigInt,
    pub norm: i8,
}

impl FundamentalUnit {
    pub fn as_quadint(&self, d: BigInt) -> QuadInt {
        QuadInt::new(d, self.s.clone(), self.t.clone())
    }
}

/// ε·u, the automorphism (norm 1) or anti-automorphism (norm −1) of the
/// order defined by the unit.
pub fn unit_times(e: &FundamentalUnit, u: &QuadInt) -> QuadInt {
    e.as_quadint(u.d().clone()).mul(u)
}

/// Walks the continued-fraction expansion of the reduced principal surd
/// (b₀ + √d)/2, where b₀ is the largest odd integer ≤ ⌊√d⌋, calling
/// `visit(g_k, b_k)` with the convergent combination satisfying
/// g_k² − d·b_k² = (−1)^{k+1}·2·Q_{k+1}. Stops after `periods` returns of
/// the surd to its start, so one period ends exactly on Q = 2 and yields a
/// unit. Requires d > 0, d ≡ 1 (mod 4), non-square (checked by callers).
pub(crate) fn principal_cycle<F: FnMut(&BigInt, &BigInt)>(d: &BigInt, periods: u32, mut visit: F) {
    let rd = isqrt(d);
    let b0 = if rd.is_odd() { rd.clone() } else { &rd - 1 };
    debug_assert!(b0 >= BigInt::one());
    let two = big(2);
    let mut p = b0.clone();
    let mut q = two.clone();
    let (mut a_km2, mut a_km1) = (BigInt::zero(), BigInt::one());
    let (mut b_km2, mut b_km1) = (BigInt::one(), BigInt::zero());
    let mut laps = 0u32;
    loop {
        let ak = (&p + &rd).div_floor(&q);
        let a_k = &ak * &a_km1 + &a_km2;
        let b_k = &ak * &b_km1 + &b_km2;
        a_km2 = std::mem::replace(&mut a_km1, a_k);
        b_km2 = std::mem::replace(&mut b_km1, b_k);
        let g_k = &two * &a_km1 - &b0 * &b_km1;
        visit(&g_k, &b_km1);
        let p_next = &ak * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
        if p == b0 && q == two {
            laps += 1;
            if laps >= periods {
                return;
            }
        }
    }
}

/// The fundamental unit of the order of discriminant d.
///
/// For non-squarefree d this is the unit of the order of discriminant d
/// itself, not of the maximal order: the recursion is seeded from the
/// principal reduced surd (b₀ + √d)/2 of that order.
pub fn fundamental_unit(d: &BigInt) -> Result<FundamentalUnit, DomainError> {
    if !d.is_positive() {
        return Err(DomainError::NotPositive(d.clone()));
    }
    if d.mod_floor(&big(4)) != BigInt::one() {
        return Err(DomainError::NotOneMod4(d.clone()));
    }
    if is_perfect_square(d).is_some() {
        return Err(DomainError::Square(d.clone()));
    }
    let mut s = BigInt::zero();
    let mut t = BigInt::zero();
    principal_cycle(d, 1, |g, b| {
        s = g.clone();
        t = b.clone();
    });
    let norm4 = &s * &s - d * (&t * &t);
    let norm = if norm4 == big(4) {
        1
    } else if norm4 == big(-4) {
        -1
    } else {
        unreachable!("continued fraction closed off a unit: s={s} t={t} d={d}");
    };
    debug_assert!(s.is_positive() && t.is_positive());
    Ok(FundamentalUnit { s, t, norm })
}
