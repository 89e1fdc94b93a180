//! Bounded solvers for a² − d·b² = ±8 inside the reduced-domain bounds of
//! the effective membership criteria, the associated-solution map onto
//! x² − d·y² = 16, and an independent brute-force oracle.
//!
//! The bounded solver first iterates a over the residue classes of
//! √(±8) mod d in blocks a = j·d + r. When the minimal witness lies beyond a
//! fixed block budget (fundamental units grow like exp(√d), so this happens
//! for some d already below 2009) it switches to an equivalent enumeration
//! through the continued-fraction cycle of the principal surd: every
//! primitive value ±8 of the principal form appears among the convergent
//! combinations G_k² − d·B_k² = (−1)^{k+1}·2·Q_{k+1}, since |±2| < √d/2 for
//! d > 16 (classical reduction theory).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{is_perfect_square, sqrt_residues_mod};
use crate::quadorder::{principal_cycle, FundamentalUnit};
use crate::{big, DomainError};

/// Which of the two norm equations a² − d·b² = ±8 is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// The right-hand side ±8.
    pub fn rhs(self) -> BigInt {
        big(8 * self.value() as i64)
    }
}

/// A solution of a² − d·b² = sign·8 with a, b > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub a: BigInt,
    pub b: BigInt,
    pub sign: Sign,
}

impl PellSolution {
    /// Verifies a² − d·b² = sign·8 exactly before constructing.
    pub fn checked(d: &BigInt, a: BigInt, b: BigInt, sign: Sign) -> Self {
        assert!(a.is_positive() && b.is_positive());
        assert_eq!(
            &a * &a - d * (&b * &b),
            sign.rhs(),
            "not a solution: a={a} b={b} d={d}"
        );
        PellSolution { a, b, sign }
    }
}

/// A solution of x² − d·y² = 16 with odd x, y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution16 {
    pub x: BigInt,
    pub y: BigInt,
}

const BLOCK_BUDGET: u32 = 1024;

fn check_pm8_disc(d: &BigInt) -> Result<(), DomainError> {
    if !d.is_positive() {
        return Err(DomainError::NotPositive(d.clone()));
    }
    if d.mod_floor(&big(8)) != BigInt::one() {
        return Err(DomainError::NotOneMod8(d.clone()));
    }
    if is_perfect_square(d).is_some() {
        return Err(DomainError::Square(d.clone()));
    }
    if *d <= big(9) {
        return Err(DomainError::TooSmall(d.clone()));
    }
    Ok(())
}

/// The reduced-domain bound on a candidate a, decided exactly.
///
/// Norm −1: 8 < a² ≤ 2t√d + 4 for +8, 0 < a² ≤ 2t√d − 4 for −8, compared
/// via (a² ∓ 4)² against 4t²d (never an equality: the left side is odd).
/// Norm +1: 8 < a² < 2s + 4 for +8, 0 < a² < 2s − 4 for −8.
fn within_bound(d: &BigInt, sign: Sign, unit: &FundamentalUnit, a: &BigInt) -> bool {
    let a2 = a * a;
    if unit.norm == -1 {
        let tt4d = big(4) * &unit.t * &unit.t * d;
        match sign {
            Sign::Plus => {
                if a2 <= big(4) {
                    return true;
                }
                let lhs = &a2 - 4;
                &lhs * &lhs <= tt4d
            }
            Sign::Minus => {
                let lhs = &a2 + 4;
                &lhs * &lhs <= tt4d
            }
        }
    } else {
        let two_s = big(2) * &unit.s;
        match sign {
            Sign::Plus => a2 < &two_s + 4,
            Sign::Minus => a2 < &two_s - 4,
        }
    }
}

/// All norm-(sign·8) convergent pairs in two periods of the principal cycle.
fn cycle_hits(d: &BigInt, sign: Sign) -> Vec<(BigInt, BigInt)> {
    let rhs = sign.rhs();
    let mut hits = Vec::new();
    principal_cycle(d, 2, |g, b| {
        if &(g * g) - d * (b * b) == rhs {
            hits.push((g.clone(), b.clone()));
        }
    });
    hits.sort();
    hits.dedup();
    hits
}

/// The solution with smallest a > 0 (b > 0) of a² − d·b² = sign·8 inside the
/// reduced-domain bound, or `None` when no solution satisfies it.
pub fn solve_pm8_bounded(
    d: &BigInt,
    sign: Sign,
    unit: &FundamentalUnit,
) -> Result<Option<PellSolution>, DomainError> {
    check_pm8_disc(d)?;
    let residues = sqrt_residues_mod(d, &sign.rhs());
    if residues.is_empty() {
        return Ok(None);
    }
    let eight = big(8);
    let mut base = BigInt::zero();
    for _ in 0..=BLOCK_BUDGET {
        let mut block_alive = false;
        for r in &residues {
            let a = &base + r;
            if a.is_zero() {
                continue;
            }
            if !within_bound(d, sign, unit, &a) {
                continue;
            }
            block_alive = true;
            if a.is_even() {
                continue;
            }
            let num = &a * &a - sign.rhs();
            if num.is_negative() {
                continue;
            }
            if sign == Sign::Plus && &a * &a <= eight {
                continue;
            }
            let (q, rem) = num.div_rem(d);
            if !rem.is_zero() {
                continue;
            }
            if let Some(b) = is_perfect_square(&q) {
                if b.is_positive() {
                    return Ok(Some(PellSolution::checked(d, a, b, sign)));
                }
            }
        }
        if !block_alive {
            return Ok(None);
        }
        base += d;
    }
    // block budget exhausted: enumerate through the principal cycle instead
    let bounded = cycle_hits(d, sign)
        .into_iter()
        .filter(|(g, b)| g.is_positive() && b.is_positive() && within_bound(d, sign, unit, g))
        .min();
    Ok(bounded.map(|(a, b)| PellSolution::checked(d, a, b, sign)))
}

/// All solutions of a² − d·b² = sign·8 with 1 ≤ b ≤ b_max, by direct
/// enumeration of b. Independent of the bounded solver.
pub fn solve_pm8_oracle(d: &BigInt, sign: Sign, b_max: &BigInt) -> Vec<PellSolution> {
    assert!(d.is_positive() && d.is_odd(), "oracle needs odd positive d");
    if !b_max.is_positive() {
        return Vec::new();
    }
    match oracle_u128(d, sign, b_max) {
        Some(sols) => sols,
        None => oracle_bigint(d, sign, b_max),
    }
}

fn oracle_bigint(d: &BigInt, sign: Sign, b_max: &BigInt) -> Vec<PellSolution> {
    let mut out = Vec::new();
    let mut b = BigInt::one();
    while &b <= b_max {
        let a2 = d * &b * &b + sign.rhs();
        if !a2.is_negative() {
            if let Some(a) = is_perfect_square(&a2) {
                if a.is_positive() {
                    out.push(PellSolution::checked(d, a, b.clone(), sign));
                }
            }
        }
        b += 1;
    }
    out
}

/// Bitmask of quadratic residues modulo 64.
const SQUARE_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0u64;
    while i < 32 {
        mask |= 1 << ((i * i) & 63);
        i += 1;
    }
    mask
};

/// Machine-word enumeration when d·(b_max+2)² + 8 fits in a u128.
fn oracle_u128(d: &BigInt, sign: Sign, b_max: &BigInt) -> Option<Vec<PellSolution>> {
    let d_u = d.to_u128()?;
    let bm = b_max.to_u128()?;
    // headroom check for the incremental d·b² updates
    let bm2 = bm.checked_add(2)?;
    bm2.checked_mul(bm2)?.checked_mul(d_u)?.checked_add(8)?;
    let mut out = Vec::new();
    let mut db2 = 0u128;
    let mut b = 0u128;
    while b < bm {
        // d(b+1)² = d·b² + d(2b+1)
        db2 += d_u * (2 * b + 1);
        b += 1;
        let a2 = match sign {
            Sign::Plus => db2 + 8,
            Sign::Minus => {
                if db2 < 8 {
                    continue;
                }
                db2 - 8
            }
        };
        if (SQUARE_MOD_64 >> ((a2 & 63) as u32)) & 1 == 0 {
            continue;
        }
        let a = a2.isqrt();
        if a * a == a2 && a > 0 {
            out.push(PellSolution::checked(
                d,
                BigInt::from(a),
                BigInt::from(b),
                sign,
            ));
        }
    }
    Some(out)
}

/// The x² − d·y² = 16 solution associated with a ±8 solution:
/// (x, y) = (a² − 4, ab) for +8 and (a² + 4, ab) for −8.
pub fn associated_solution(sol: &PellSolution) -> Solution16 {
    let a2 = &sol.a * &sol.a;
    let x = match sol.sign {
        Sign::Plus => a2 - 4,
        Sign::Minus => a2 + 4,
    };
    Solution16 {
        x,
        y: &sol.a * &sol.b,
    }
}

/// The associated solution of the first bounded ±8 witness (+8 tried first),
/// or `None`; invalid d (not ≡ 1 mod 8, square, or ≤ 9) is rejected upstream
/// and also yields `None`.
pub fn solve_16_constrained(d: &BigInt, unit: &FundamentalUnit) -> Option<Solution16> {
    check_pm8_disc(d).ok()?;
    let sol = solve_pm8_bounded(d, Sign::Plus, unit)
        .expect("preconditions checked")
        .or_else(|| {
            solve_pm8_bounded(d, Sign::Minus, unit).expect("preconditions checked")
        })?;
    let assoc = associated_solution(&sol);
    debug_assert_eq!(&assoc.x * &assoc.x - d * (&assoc.y * &assoc.y), big(16));
    Some(assoc)
}
