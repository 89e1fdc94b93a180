//! Exact models of the rank-2 hyperbolic lattices N⁸_d and N²_d, plus a
//! generic rank-2 Gram lattice.
//!
//! N⁸_d is spanned by H, δ with H² = 8, δ² = −8d, H·δ = 0 together with
//! (H + μδ)/8; its members are the pairs (x, y) with μx ≡ y (mod 8) in the
//! coordinates z = (xH + yδ)/8. N²_d is the analogue with h² = 2,
//! α² = −2d and the parity congruence x ≡ y (mod 2) in z = (xh + yα)/2.
//! Both have determinant −d. The γ invariant of a member is the positive
//! generator of its ideal of inner products with the whole lattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::pell::PellSolution;
use crate::quadorder::FundamentalUnit;
use crate::{big, DomainError};

/// μ ∈ {1, 3}: 1 when d ≡ 1 (mod 16), 3 when d ≡ 9 (mod 16).
/// Satisfies μ² ≡ d (mod 16).
pub fn mu(d: &BigInt) -> Result<u8, DomainError> {
    if !d.is_positive() || d.mod_floor(&big(8)) != BigInt::one() {
        return Err(DomainError::NotOneMod8(d.clone()));
    }
    let m16 = d.mod_floor(&big(16));
    Ok(if m16 == BigInt::one() { 1 } else { 3 })
}

/// Which of the two lattices a coordinate pair is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    N8,
    N2,
}

/// Membership congruence: μx ≡ y (mod 8) for N⁸_d, x ≡ y (mod 2) for N²_d.
pub fn is_member(d: &BigInt, x: &BigInt, y: &BigInt, kind: LatticeKind) -> bool {
    match kind {
        LatticeKind::N8 => {
            let Ok(m) = mu(d) else { return false };
            (big(m as i64) * x - y).mod_floor(&big(8)).is_zero()
        }
        LatticeKind::N2 => (x - y).mod_floor(&big(2)).is_zero(),
    }
}

/// A member (xH + yδ)/8 of N⁸_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem8 {
    d: BigInt,
    x: BigInt,
    y: BigInt,
}

impl Elem8 {
    pub fn new(d: BigInt, x: BigInt, y: BigInt) -> Self {
        assert!(
            is_member(&d, &x, &y, LatticeKind::N8),
            "({x}H + {y}d)/8 is not in N8_{d}"
        );
        Elem8 { d, x, y }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    /// (x₁x₂ − d·y₁y₂)/8, an integer on members.
    pub fn inner(&self, other: &Elem8) -> BigInt {
        assert_eq!(self.d, other.d);
        (&self.x * &other.x - &self.d * &self.y * &other.y) / 8
    }

    pub fn square(&self) -> BigInt {
        self.inner(self)
    }

    /// gcd of the inner products with the generators H, δ, (H + μδ)/8.
    pub fn gamma(&self) -> BigInt {
        let m = mu(&self.d).expect("member implies d = 1 mod 8") as i64;
        let gens = [
            Elem8::new(self.d.clone(), big(8), BigInt::zero()),
            Elem8::new(self.d.clone(), BigInt::zero(), big(8)),
            Elem8::new(self.d.clone(), BigInt::one(), big(m)),
        ];
        gens.iter()
            .fold(BigInt::zero(), |g, e| g.gcd(&self.inner(e)))
    }
}

/// A member (xh + yα)/2 of N²_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem2 {
    d: BigInt,
    x: BigInt,
    y: BigInt,
}

impl Elem2 {
    pub fn new(d: BigInt, x: BigInt, y: BigInt) -> Self {
        assert!(
            is_member(&d, &x, &y, LatticeKind::N2),
            "({x}h + {y}a)/2 is not in N2_{d}"
        );
        Elem2 { d, x, y }
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

    /// (x₁x₂ − d·y₁y₂)/2, an integer on members.
    pub fn inner(&self, other: &Elem2) -> BigInt {
        assert_eq!(self.d, other.d);
        (&self.x * &other.x - &self.d * &self.y * &other.y) / 2
    }

    pub fn square(&self) -> BigInt {
        self.inner(self)
    }

    /// gcd of the inner products with the generators h, α, (h + α)/2.
    pub fn gamma(&self) -> BigInt {
        let gens = [
            Elem2::new(self.d.clone(), big(2), BigInt::zero()),
            Elem2::new(self.d.clone(), BigInt::zero(), big(2)),
            Elem2::new(self.d.clone(), BigInt::one(), BigInt::one()),
        ];
        gens.iter()
            .fold(BigInt::zero(), |g, e| g.gcd(&self.inner(e)))
    }
}

/// The square-±4 element h₁ = (2aH ± 2bδ)/8 of N⁸_d attached to a ±8
/// solution, the sign of b flipped when needed so that μa ≡ b (mod 4).
pub fn construct_h1_n8(d: &BigInt, sol: &PellSolution) -> Elem8 {
    let m = big(mu(d).expect("d = 1 mod 8 required") as i64);
    let b = if (&m * &sol.a - &sol.b).mod_floor(&big(4)).is_zero() {
        sol.b.clone()
    } else {
        -&sol.b
    };
    let h1 = Elem8::new(d.clone(), big(2) * &sol.a, big(2) * b);
    debug_assert_eq!(h1.square(), big(4 * sol.sign.value() as i64));
    h1
}

/// Symmetric Gram matrix of a rank-2 lattice in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gram2 {
    pub g11: BigInt,
    pub g12: BigInt,
    pub g22: BigInt,
}

/// Coordinates of a vector in the Gram basis.
pub type Vec2 = (BigInt, BigInt);

impl Gram2 {
    pub fn new(g11: BigInt, g12: BigInt, g22: BigInt) -> Self {
        let g = Gram2 { g11, g12, g22 };
        assert!(!g.det().is_zero(), "degenerate Gram matrix");
        g
    }

    pub fn det(&self) -> BigInt {
        &self.g11 * &self.g22 - &self.g12 * &self.g12
    }

    pub fn inner(&self, u: &Vec2, v: &Vec2) -> BigInt {
        &self.g11 * &u.0 * &v.0 + &self.g12 * (&u.0 * &v.1 + &u.1 * &v.0) + &self.g22 * &u.1 * &v.1
    }

    pub fn square(&self, u: &Vec2) -> BigInt {
        self.inner(u, u)
    }

    /// gcd of the inner products with the basis vectors.
    pub fn gamma(&self, v: &Vec2) -> BigInt {
        let e1 = (BigInt::one(), BigInt::zero());
        let e2 = (BigInt::zero(), BigInt::one());
        self.inner(v, &e1).gcd(&self.inner(v, &e2))
    }

    /// The reflection x → x + (x·δ)δ in a (−2)-vector δ. Fixes δ^⊥,
    /// negates δ, preserves the form; an involution.
    pub fn reflect_neg2(&self, x: &Vec2, delta: &Vec2) -> Vec2 {
        assert_eq!(self.square(delta), big(-2), "reflection vector must have square -2");
        let c = self.inner(x, delta);
        (&x.0 + &c * &delta.0, &x.1 + &c * &delta.1)
    }
}

/// Nef test when N(ε₀) = −1: xs ≥ ytd ≥ −xs for z = (xh + yα)/2.
pub fn is_nef_norm_minus1(z: &Elem2, unit: &FundamentalUnit) -> bool {
    assert_eq!(unit.norm, -1);
    let xs = z.x() * &unit.s;
    let ytd = z.y() * &unit.t * z.d();
    xs >= ytd && ytd >= -&xs
}

/// Exact form of 1 ≤ x/√(x²−dy²) ≤ t√d/2 (norm −1) resp. ≤ s/2 (norm +1)
/// for z with z² > 0 and x > 0.
pub fn in_fundamental_interval(z: &Elem2, unit: &FundamentalUnit) -> bool {
    let q = z.x() * z.x() - z.d() * z.y() * z.y();
    assert!(q.is_positive(), "element must have positive square");
    assert!(z.x().is_positive(), "element must pair positively with h");
    let left = z.x() * z.x() >= q;
    let four_x2 = big(4) * z.x() * z.x();
    let right = if unit.norm == -1 {
        four_x2 <= &unit.t * &unit.t * z.d() * &q
    } else {
        four_x2 <= &unit.s * &unit.s * &q
    };
    left && right
}

/// Exact form of 1/√d ≤ y/√(dy²−x²) ≤ t/2 (norm −1) resp. s/(2√d)
/// (norm +1) for w with w² < 0, y > 0, x ≥ 0.
pub fn is_reduced_negative(w: &Elem2, unit: &FundamentalUnit) -> bool {
    let q = w.d() * w.y() * w.y() - w.x() * w.x();
    assert!(q.is_positive(), "element must have negative square");
    assert!(w.y().is_positive() && !w.x().is_negative());
    let left = w.d() * w.y() * w.y() >= q;
    let right = if unit.norm == -1 {
        big(4) * w.y() * w.y() <= &unit.t * &unit.t * &q
    } else {
        big(4) * w.d() * w.y() * w.y() <= &unit.s * &unit.s * &q
    };
    left && right
}
