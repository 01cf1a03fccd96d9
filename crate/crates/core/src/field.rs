//! Finite fields GF(p) and GF(p^n).
//!
//! Elements are stored as integers in `[0, q)`. For extension fields the
//! integer is read as base-`p` digits, the coordinates of the element in the
//! power basis `1, t, t^2, ...` modulo the extension modulus.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct FieldInner {
    p: u32,
    n: u32,
    q: u32,
    /// Monic irreducible of degree `n` over GF(p), ascending coefficients.
    /// `None` for prime fields.
    modulus: Option<Vec<u32>>,
}

/// A finite field context. Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldInner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "GF({})", self.0.p),
            Some(m) => write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.n, m),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, n)` with `q = p^n`, or `None` if `q` is not a prime power.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

// Dense GF(p) polynomial helpers used only for validating an extension modulus.
fn gfp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let inv_lc = pow_mod(b[db] as u64, p as u64 - 2, p as u64);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * inv_lc % p as u64;
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = top - db + i;
                r[idx] = (r[idx] + (p as u64 - c) * bc as u64) % p as u64;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree `1..=n/2`.
fn gfp_is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                cand.push((v % p as u64) as u32);
                v /= p as u64;
            }
            cand.push(1);
            if gfp_rem(f, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u16::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldCtx(Arc::new(FieldInner {
            p: p as u32,
            n: 1,
            q: p as u32,
            modulus: None,
        })))
    }

    /// GF(p^n) defined by a monic irreducible `modulus` of degree `n` over GF(p),
    /// given with ascending coefficients.
    pub fn extension(p: u64, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) || p > u16::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        let mut m: Vec<u32> = modulus.iter().map(|&c| c % p as u32).collect();
        while m.last() == Some(&0) {
            m.pop();
        }
        let n = m.len().saturating_sub(1) as u32;
        if n == 0 || m[n as usize] != 1 {
            return Err(Error::ReducibleModulus(n));
        }
        if n == 1 {
            return Self::prime(p);
        }
        let q = p.checked_pow(n).filter(|&q| q <= u32::MAX as u64 / 2);
        let Some(q) = q else {
            return Err(Error::Precondition("field too large".into()));
        };
        if !gfp_is_irreducible(&m, p as u32) {
            return Err(Error::ReducibleModulus(n));
        }
        Ok(FieldCtx(Arc::new(FieldInner {
            p: p as u32,
            n,
            q: q as u32,
            modulus: Some(m),
        })))
    }

    /// GF(p^n) using the first monic irreducible of degree `n` in graded
    /// lexicographic order of coefficient tuples.
    pub fn with_degree(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) || p > u16::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        if n <= 1 {
            return Self::prime(p);
        }
        let count = p.pow(n);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(n as usize + 1);
            let mut v = idx;
            for _ in 0..n {
                cand.push((v % p) as u32);
                v /= p;
            }
            cand.push(1);
            if cand[0] != 0 && gfp_is_irreducible(&cand, p as u32) {
                return Self::extension(p, &cand);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// GF(q) for a prime power q.
    pub fn of_size(q: u64) -> Result<Self> {
        let (p, n) = prime_power_decomposition(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_degree(p, n)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn size(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    pub fn ext_modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn elem(&self, value: u32) -> Result<FieldElem> {
        if value >= self.0.q {
            return Err(Error::Precondition(format!(
                "{value} is not an element code of {self:?}"
            )));
        }
        Ok(FieldElem {
            ctx: self.clone(),
            value,
        })
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            value: 1,
        }
    }

    /// Iterates over all element codes `0..q`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.n)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }

    // Raw arithmetic on element codes. Callers guarantee codes belong to this field.

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.n == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.0.n {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        out
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.n == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.0.n {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale *= p;
        }
        out
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.n == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.n as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let modulus = self
            .0
            .modulus
            .as_ref()
            .expect("extension field has a modulus");
        for top in (n..prod.len()).rev() {
            let c = prod[top];
            if c != 0 {
                for (i, &mc) in modulus.iter().enumerate().take(n) {
                    let idx = top - n + i;
                    prod[idx] = (prod[idx] + (p as u64 - c) * mc as u64) % p as u64;
                }
                prod[top] = 0;
            }
        }
        let low: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.undigits(&low)
    }

    pub(crate) fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, self.0.q as u64 - 2))
    }

    /// `a^(q/p)`, the unique p-th root of `a`.
    pub(crate) fn pth_root(&self, a: u32) -> u32 {
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    /// Image of the integer `k` in the prime subfield, as an element code.
    pub(crate) fn int(&self, k: u64) -> u32 {
        (k % self.0.p as u64) as u32
    }
}

/// An element of a [`FieldCtx`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    ctx: FieldCtx,
    value: u32,
}

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// The integer code of this element.
    pub fn value(&self) -> u32 {
        self.value
    }

    /// Coordinates over GF(p) in the power basis (length `n`).
    pub fn coordinates(&self) -> Vec<u32> {
        self.ctx.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same(&self, other: &FieldElem) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn wrap(&self, value: u32) -> FieldElem {
        FieldElem {
            ctx: self.ctx.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same(other)?;
        Ok(self.wrap(self.ctx.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElem {
        self.wrap(self.ctx.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElem> {
        self.ctx
            .inv(self.value)
            .map(|v| self.wrap(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.wrap(self.ctx.pow(self.value, e))
    }

    pub fn pth_root(&self) -> FieldElem {
        self.wrap(self.ctx.pth_root(self.value))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
