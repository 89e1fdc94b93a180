//! Indefinite primitive binary quadratic forms of positive non-square
//! discriminant d: Gauss reduction, cycle enumeration, the narrow class
//! number (count of rho-cycles) and the lattice class number cl(d) obtained
//! from it by the unit-norm correction.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, isqrt};
use crate::quadorder::fundamental_unit;
use crate::{big, DomainError};

/// A binary quadratic form a·x² + b·xy + c·y² of discriminant d = b² − 4ac.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BQForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl BQForm {
    /// Panics unless b² − 4ac equals the stated positive non-square d.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        assert_eq!(&b * &b - big(4) * &a * &c, d, "discriminant mismatch");
        assert!(d.is_positive() && is_perfect_square(&d).is_none());
        BQForm { a, b, c, d }
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// 0 < b < √d and √d − b < 2|a| < √d + b, decided exactly:
    /// b² < d, (2|a| + b)² > d and (2|a| − b)² < d (or 2|a| ≤ b).
    pub fn is_reduced(&self) -> bool {
        if !self.b.is_positive() || &self.b * &self.b >= self.d {
            return false;
        }
        let two_abs_a = big(2) * self.a.abs();
        let hi = &two_abs_a + &self.b;
        if &hi * &hi <= self.d {
            return false;
        }
        let lo = &two_abs_a - &self.b;
        !lo.is_positive() || &lo * &lo < self.d
    }
}

/// The reduced principal form (1, b₀, (b₀²−d)/4) with b₀ the largest odd
/// integer below √d.
pub fn principal_form(d: &BigInt) -> Result<BQForm, DomainError> {
    check_disc(d)?;
    let rd = isqrt(d);
    let b0 = if rd.is_odd() { rd } else { rd - 1 };
    let c = (&b0 * &b0 - d) / 4;
    let f = BQForm::new(BigInt::one(), b0, c, d.clone());
    debug_assert!(f.is_reduced());
    Ok(f)
}

/// The right neighbor of a reduced form: (a, b, c) → (c, b′, c′) with
/// b′ ≡ −b (mod 2|c|) chosen in the reduction window (√d − 2|c|, √d).
/// Iterating returns to the starting form in finitely many steps.
pub fn rho_step(f: &BQForm) -> BQForm {
    assert!(f.is_reduced(), "rho_step input must be reduced: {f:?}");
    let m = big(2) * f.c.abs();
    let rd = isqrt(&f.d);
    let r0 = (-&f.b).mod_floor(&m);
    let bp = &rd - (&rd - &r0).mod_floor(&m);
    let cp = (&bp * &bp - &f.d) / (big(4) * &f.c);
    let g = BQForm::new(f.c.clone(), bp, cp, f.d.clone());
    debug_assert!(g.is_reduced());
    g
}

/// All reduced primitive forms of discriminant d, enumerated by scanning
/// odd b in (0, √d) and factoring (b² − d)/4 into a·c.
pub fn reduced_forms(d: &BigInt) -> Result<Vec<BQForm>, DomainError> {
    check_disc(d)?;
    let rd = isqrt(d);
    let mut out = Vec::new();
    let mut b = BigInt::one();
    while b <= rd {
        let ac = (&b * &b - d) / 4;
        let n = -&ac; // positive
        let mut m = BigInt::one();
        while &m * &m <= n {
            if n.mod_floor(&m).is_zero() {
                let pair = [m.clone(), &n / &m];
                for abs_a in if pair[0] == pair[1] { &pair[..1] } else { &pair[..] } {
                    for a in [abs_a.clone(), -abs_a] {
                        let c = &ac / &a;
                        if !a.gcd(&b).gcd(&c).is_one() {
                            continue;
                        }
                        let f = BQForm::new(a, b.clone(), c, d.clone());
                        if f.is_reduced() {
                            out.push(f);
                        }
                    }
                }
            }
            m += 1;
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

/// Number of rho-cycles among the reduced primitive forms of discriminant d,
/// i.e. the narrow class number of the order of discriminant d.
pub fn narrow_class_number(d: &BigInt) -> Result<u64, DomainError> {
    Ok(cycle_partition(d)?.len() as u64)
}

fn cycle_partition(d: &BigInt) -> Result<Vec<Vec<BQForm>>, DomainError> {
    let forms = reduced_forms(d)?;
    let all: BTreeSet<BQForm> = forms.iter().cloned().collect();
    let mut seen: BTreeSet<BQForm> = BTreeSet::new();
    let mut cycles = Vec::new();
    for f in &forms {
        if seen.contains(f) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut g = f.clone();
        loop {
            assert!(all.contains(&g), "rho left the reduced set at {g:?}");
            seen.insert(g.clone());
            cycle.push(g.clone());
            g = rho_step(&g);
            if &g == f {
                break;
            }
        }
        assert!(cycle.len() % 2 == 0, "odd rho-cycle length for d={d}");
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Class-number report: narrow count, the isometry-class count cl, and the
/// unit norm that relates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassNumberReport {
    pub d: BigInt,
    pub narrow: u64,
    pub cl: u64,
    pub unit_norm: i8,
}

/// cl(d) = narrow when N(ε₀) = −1, narrow/2 when N(ε₀) = +1 (narrow is
/// forced even in that case).
pub fn lattice_class_number(d: &BigInt) -> Result<ClassNumberReport, DomainError> {
    let narrow = narrow_class_number(d)?;
    let unit = fundamental_unit(d)?;
    let cl = if unit.norm == -1 {
        narrow
    } else {
        assert!(narrow % 2 == 0, "narrow class number must be even when N(eps0)=+1, d={d}");
        narrow / 2
    };
    Ok(ClassNumberReport {
        d: d.clone(),
        narrow,
        cl,
        unit_norm: unit.norm,
    })
}

fn check_disc(d: &BigInt) -> Result<(), DomainError> {
    if !d.is_positive() {
        return Err(DomainError::NotPositive(d.clone()));
    }
    if d.mod_floor(&big(4)) != BigInt::one() {
        return Err(DomainError::NotOneMod4(d.clone()));
    }
    if is_perfect_square(d).is_some() {
        return Err(DomainError::Square(d.clone()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn f(a: i64, bb: i64, c: i64, d: i64) -> BQForm {
        BQForm::new(b(a), b(bb), b(c), b(d))
    }

    #[test]
    fn principal_forms() {
        assert_eq!(principal_form(&b(17)).unwrap(), f(1, 3, -2, 17));
        assert_eq!(principal_form(&b(33)).unwrap(), f(1, 5, -2, 33));
        assert_eq!(principal_form(&b(5)).unwrap(), f(1, 1, -1, 5));
        assert!(matches!(principal_form(&b(25)), Err(DomainError::Square(_))));
    }

    #[test]
    fn rho_neighbors() {
        assert_eq!(rho_step(&f(1, 3, -2, 17)), f(-2, 1, 2, 17));
        assert_eq!(rho_step(&f(1, 1, -1, 5)), f(-1, 1, 1, 5));
    }

    #[test]
    fn principal_cycle_closes() {
        let start = principal_form(&b(17)).unwrap();
        let mut g = rho_step(&start);
        let mut steps = 1;
        while g != start {
            g = rho_step(&g);
            steps += 1;
            assert!(steps < 100);
        }
        assert_eq!(steps, 6);
    }

    #[test]
    fn narrow_class_numbers() {
        assert_eq!(narrow_class_number(&b(17)).unwrap(), 1);
        assert_eq!(narrow_class_number(&b(33)).unwrap(), 2);
        assert_eq!(narrow_class_number(&b(5)).unwrap(), 1);
    }

    #[test]
    fn reduced_enumeration_invariants() {
        for d in [17i64, 33, 97, 129, 153] {
            let forms = reduced_forms(&b(d)).unwrap();
            assert!(!forms.is_empty());
            for g in &forms {
                assert!(g.is_reduced());
                assert!(g.is_primitive());
                assert_eq!(&g.b * &g.b - b(4) * &g.a * &g.c, b(d));
            }
            // rho permutes the reduced set
            let all: BTreeSet<_> = forms.iter().cloned().collect();
            let image: BTreeSet<_> = forms.iter().map(rho_step).collect();
            assert_eq!(all, image);
        }
    }

    #[test]
    fn lattice_class_numbers_of_worked_discriminants() {
        for d in [17i64, 33, 41, 57, 73, 89, 97, 113, 129, 137] {
            let report = lattice_class_number(&b(d)).unwrap();
            assert_eq!(report.cl, 1, "d={d}");
            if report.unit_norm == 1 {
                assert_eq!(report.narrow, 2, "d={d}");
            } else {
                assert_eq!(report.narrow, 1, "d={d}");
            }
        }
    }
}
