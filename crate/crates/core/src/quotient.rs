//! The ring `A = F[x]/<f(x)>` with elements represented by polynomials of
//! degree `< m = deg f`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::poly::Poly;

#[derive(PartialEq, Eq)]
struct QuotInner {
    f: Poly,
}

/// A quotient ring `F[x]/<f>` for monic `f` of degree at least 1.
/// Cheap to clone; two rings are equal when they share field and modulus.
#[derive(Clone)]
pub struct QuotRing(Arc<QuotInner>);

impl PartialEq for QuotRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for QuotRing {}

impl fmt::Debug for QuotRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[x]/<{}>", self.field(), self.0.f)
    }
}

impl QuotRing {
    pub fn new(f: Poly) -> Result<Self> {
        if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
            return Err(Error::BadModulus);
        }
        Ok(QuotRing(Arc::new(QuotInner { f })))
    }

    /// Convenience: `GF(q)[x]/<f>` with `f` in the polynomial text syntax.
    pub fn parse(q: u64, f: &str) -> Result<Self> {
        let k = FieldCtx::of_size(q)?;
        let f = Poly::parse(&k, f).map_err(|e| Error::Precondition(e.to_string()))?;
        QuotRing::new(f)
    }

    pub fn field(&self) -> &FieldCtx {
        self.0.f.field()
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.f
    }

    /// `m = deg f`.
    pub fn degree(&self) -> usize {
        self.0.f.degree().unwrap()
    }

    pub fn q(&self) -> u64 {
        self.field().size() as u64
    }

    /// `q^m`, the number of ring elements, if it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(self.degree() as u32)
    }

    pub fn characteristic(&self) -> u32 {
        self.field().characteristic()
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        if a.deg_i() < self.degree() as isize {
            a.clone()
        } else {
            a.rem(&self.0.f).expect("modulus is nonzero")
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    pub fn elem(&self, a: &Poly) -> RingElem {
        assert_eq!(a.field(), self.field(), "element over a different field");
        RingElem {
            ring: self.clone(),
            rep: self.reduce(a),
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        let p = Poly::parse(self.field(), s).map_err(|e| Error::Precondition(e.to_string()))?;
        Ok(self.elem(&p))
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field())
    }

    pub fn one(&self) -> Poly {
        self.reduce(&Poly::one(self.field()))
    }

    pub fn minus_one(&self) -> Poly {
        let k = self.field();
        self.reduce(&Poly::constant(k, k.neg(1)))
    }

    /// `f/g mod f` for a divisor `g` of `f` (up to a unit of `F`). By convention
    /// the cofactor of `0` is `1`, and the cofactor of `f` itself is `1`.
    pub fn cofactor(&self, g: &Poly) -> Result<Poly> {
        if g.is_zero() {
            return Ok(self.one());
        }
        let q = self.0.f.exact_div(g).ok_or(Error::NotADivisor)?;
        Ok(self.reduce(&q))
    }

    /// The cofactor `f/g` as a polynomial of `F[x]` (not reduced), `g` a divisor of `f`.
    pub fn cofactor_poly(&self, g: &Poly) -> Result<Poly> {
        if g.is_zero() {
            return Ok(self.one());
        }
        self.0.f.exact_div(g).ok_or(Error::NotADivisor)
    }

    /// Membership of `a` in the ideal `<g>` for a divisor `g` of `f`.
    /// Since `gF[x] + fF[x] = gF[x]`, this is divisibility of the reduced
    /// representative; the quotient is returned as witness.
    pub fn divides_ideal(&self, g: &Poly, a: &Poly) -> Option<Poly> {
        debug_assert!(g.divides(&self.0.f) || g.is_zero(), "g must divide f");
        if g.is_zero() {
            return a.is_zero().then(|| self.zero());
        }
        self.reduce(a).exact_div(g)
    }

    /// Inverse of `a` when `gcd(a, f) = 1`.
    pub fn unit_inverse(&self, a: &Poly) -> Option<Poly> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.ext_gcd(&self.0.f).ok()?;
        g.is_one().then(|| self.reduce(&s))
    }

    /// All `q^m` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Poly> + '_ {
        crate::poly::polys_below(self.field(), self.degree())
    }

    /// Multiplication by `x^{-1}` exists when `f(0) != 0`; for `f = x^m ± 1`
    /// it is `-f_0·x^{m-1}`.
    pub fn x_inverse(&self) -> Option<Poly> {
        self.unit_inverse(&self.reduce(&Poly::x(self.field())))
    }
}

/// An element of a [`QuotRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    ring: QuotRing,
    rep: Poly,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl RingElem {
    pub fn ring(&self) -> &QuotRing {
        &self.ring
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn same(&self, other: &RingElem) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        self.same(other)?;
        Ok(self.ring.elem(&(&self.rep + &other.rep)))
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem> {
        self.same(other)?;
        Ok(self.ring.elem(&(&self.rep - &other.rep)))
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        self.same(other)?;
        Ok(RingElem {
            ring: self.ring.clone(),
            rep: self.ring.mul(&self.rep, &other.rep),
        })
    }

    /// Cofactor `f/g mod f` of this element viewed as a divisor of `f`.
    pub fn cofactor(&self) -> Result<RingElem> {
        let h = self.ring.cofactor(&self.rep)?;
        Ok(self.ring.elem(&h))
    }

    /// Whether `a ∈ <self>`, with witness `w` such that `w·self = a`.
    pub fn divides_ideal(&self, a: &RingElem) -> Result<Option<RingElem>> {
        self.same(a)?;
        Ok(self
            .ring
            .divides_ideal(&self.rep, &a.rep)
            .map(|w| self.ring.elem(&w)))
    }

    pub fn inverse(&self) -> Option<RingElem> {
        self.ring
            .unit_inverse(&self.rep)
            .map(|r| self.ring.elem(&r))
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            rep: -&self.rep,
        }
    }
}
