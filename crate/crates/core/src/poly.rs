//! Dense univariate polynomials over a [`FieldCtx`].
//!
//! Coefficients are ascending and carry no trailing zeros, so the zero
//! polynomial has an empty coefficient list and no degree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, ParseError, Result};
use crate::field::FieldCtx;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldCtx,
    coeffs: Vec<u32>,
}

/// Squarefree decomposition: `(multiplicity, squarefree monic part)`, sorted by
/// multiplicity. Parts are pairwise coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomp {
    pub parts: Vec<(u32, Poly)>,
}

impl SquarefreeDecomp {
    /// `∏ P_e^e`, i.e. the monic normalization of the decomposed polynomial.
    pub fn product(&self, field: &FieldCtx) -> Poly {
        self.parts
            .iter()
            .fold(Poly::one(field), |acc, (e, p)| &acc * &p.pow(*e))
    }
}

/// One class of irreducible factors: `count` distinct monic irreducibles of
/// degree `degree`, each occurring with multiplicity `multiplicity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorClass {
    pub degree: u32,
    pub multiplicity: u32,
    pub count: u32,
}

/// Degree/multiplicity profile of a factorization, sorted by `(degree, multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorProfile {
    pub entries: Vec<FactorClass>,
}

impl FactorProfile {
    pub fn total_degree(&self) -> usize {
        self.entries
            .iter()
            .map(|c| (c.degree * c.multiplicity * c.count) as usize)
            .sum()
    }
}

impl Poly {
    /// Builds a polynomial from ascending element codes, stripping trailing zeros.
    pub fn new(field: &FieldCtx, mut coeffs: Vec<u32>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| c < field.size()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from integers mapped into the prime subfield.
    pub fn from_ints(field: &FieldCtx, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FieldCtx) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FieldCtx) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn x(field: &FieldCtx) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn constant(field: &FieldCtx, c: u32) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(field: &FieldCtx, c: u32, k: usize) -> Poly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::new(field, coeffs)
    }

    /// The polynomial whose base-`q` digits (lowest first, `len` of them) spell `index`.
    pub fn from_index(field: &FieldCtx, mut index: u64, len: usize) -> Poly {
        let q = field.size() as u64;
        let coeffs = (0..len)
            .map(|_| {
                let d = (index % q) as u32;
                index /= q;
                d
            })
            .collect();
        Poly::new(field, coeffs)
    }

    /// Inverse of [`Poly::from_index`].
    pub fn index(&self) -> u64 {
        let q = self.field.size() as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`; handy for strict comparisons.
    pub fn deg_i(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Leading coefficient code (0 for the zero polynomial).
    pub fn lc(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    fn check(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn scale(&self, c: u32) -> Poly {
        if c == 0 {
            return Poly::zero(&self.field);
        }
        let k = &self.field;
        Poly::new(k, self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lc()) {
            Some(i) if i != 1 => self.scale(i),
            _ => self.clone(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, coeffs)
    }

    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| k.mul(k.int(i as u64), c))
            .collect();
        Poly::new(k, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// `self^e mod modulus` for a nonzero modulus.
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        let mut b = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &b).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                b = (&b * &b).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(k), self.clone()));
        }
        let inv_lc = k.inv(d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut quo = vec![0; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            let c = k.mul(c, inv_lc);
            quo[top - dd] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = k.sub(r[idx], k.mul(c, dc));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(k, quo), Poly::new(k, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        self.check(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Ok(self.clone());
        }
        Ok(self.divrem(d)?.1)
    }

    /// `self / d` when `d` divides `self` exactly; `None` otherwise (or when `d = 0`).
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        match self.divrem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Whether `self` divides `other` in F[x]. Zero divides only zero.
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedInput("gcd(0, 0)"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `g = gcd` monic and `g = s·self + t·other`.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedInput("gcd(0, 0)"));
        }
        let k = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(k), Poly::zero(k));
        let (mut t0, mut t1) = (Poly::zero(k), Poly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = k.inv(r0.lc()).expect("nonzero gcd");
        let (g, s, t) = (r0.scale(inv), s0.scale(inv), t0.scale(inv));
        debug_assert_eq!(&(&s * self) + &(&t * other), g, "Bezout identity");
        Ok((g, s, t))
    }

    /// `x^deg(g)·g(1/x)`.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::UndefinedInput("reciprocal of the zero polynomial"));
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(Poly::new(&self.field, c))
    }

    /// For a polynomial in `x^p`, returns the polynomial `g` with `g^p = self`.
    fn pth_root_poly(&self) -> Poly {
        let k = &self.field;
        let p = k.characteristic() as usize;
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || i % p == 0));
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| k.pth_root(c))
            .collect();
        Poly::new(k, coeffs)
    }

    /// Squarefree decomposition of a nonzero polynomial (of its monic normalization).
    ///
    /// Handles characteristic `p`: whatever survives the multiplicity-extraction
    /// loop is a `p`-th power, whose root is decomposed recursively.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomp> {
        if self.is_zero() {
            return Err(Error::UndefinedInput("squarefree decomposition of zero"));
        }
        let mut parts = sqf_rec(&self.monic());
        parts.sort_by_key(|(e, _)| *e);
        Ok(SquarefreeDecomp { parts })
    }

    /// The smallest monic `s` (w.r.t. divisibility) with `self | s²`: every
    /// prime power `P^e` of `self` is replaced by `P^⌈e/2⌉`.
    pub fn sqrt2(&self) -> Result<Poly> {
        if self.is_zero() || !self.is_monic() {
            return Err(Error::Precondition(
                "sqrt2 needs a nonzero monic polynomial".into(),
            ));
        }
        let d = self.squarefree_decomposition()?;
        Ok(d.parts.iter().fold(Poly::one(&self.field), |acc, (e, p)| {
            &acc * &p.pow(e.div_ceil(2))
        }))
    }

    /// Returns `Some(g)` with `g² = self` when every multiplicity is even.
    pub fn square_root(&self) -> Result<Option<Poly>> {
        if self.is_zero() || !self.is_monic() {
            return Err(Error::Precondition(
                "square test needs a nonzero monic polynomial".into(),
            ));
        }
        let d = self.squarefree_decomposition()?;
        if d.parts.iter().any(|(e, _)| e % 2 == 1) {
            return Ok(None);
        }
        Ok(Some(
            d.parts
                .iter()
                .fold(Poly::one(&self.field), |acc, (e, p)| &acc * &p.pow(e / 2)),
        ))
    }

    /// Degree/multiplicity classes of the irreducible factors, via squarefree
    /// decomposition followed by distinct-degree splitting of each part.
    pub fn factor_profile(&self) -> Result<FactorProfile> {
        if self.degree().unwrap_or(0) == 0 || !self.is_monic() {
            return Err(Error::Precondition(
                "factor profile needs a monic polynomial of degree >= 1".into(),
            ));
        }
        let mut entries: Vec<FactorClass> = Vec::new();
        for (e, part) in self.squarefree_decomposition()?.parts {
            for (d, count) in distinct_degree(&part)? {
                entries.push(FactorClass {
                    degree: d,
                    multiplicity: e,
                    count,
                });
            }
        }
        entries.sort();
        debug_assert_eq!(
            entries
                .iter()
                .map(|c| (c.degree * c.multiplicity * c.count) as usize)
                .sum::<usize>(),
            self.degree().unwrap()
        );
        Ok(FactorProfile { entries })
    }

    /// Irreducibility over the coefficient field, via distinct-degree splitting.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => {
                let m = self.monic();
                m.squarefree_decomposition()
                    .map(|s| s.parts.len() == 1 && s.parts[0].0 == 1)
                    .unwrap_or(false)
                    && distinct_degree(&m)
                        .map(|v| v == vec![(d as u32, 1)])
                        .unwrap_or(false)
            }
        }
    }

    /// All monic divisors of a monic polynomial, in graded-lex order.
    ///
    /// Candidates of degree `<= deg/2` are found by trial division over every
    /// monic polynomial of that degree; the remaining divisors are their
    /// cofactors. Fails when `q^(deg/2+1)` trial candidates or `cap` divisors
    /// would be exceeded.
    pub fn divisors(&self, cap: usize) -> Result<Vec<Poly>> {
        if self.is_zero() || !self.is_monic() {
            return Err(Error::Precondition(
                "divisors need a nonzero monic polynomial".into(),
            ));
        }
        let n = self.degree().unwrap();
        let q = self.field.size() as u128;
        let half = n / 2;
        let trials: u128 = (0..=half as u32).map(|d| q.pow(d)).sum();
        let budget = (cap as u128).max(1) * 4096;
        if trials > budget {
            return Err(Error::BudgetExceeded {
                needed: trials,
                budget,
            });
        }
        let mut out = Vec::new();
        for d in 0..=half {
            for cand in monic_of_degree(&self.field, d) {
                if let Some(co) = self.exact_div(&cand) {
                    // every divisor or its cofactor has degree <= n/2
                    out.push(co);
                    out.push(cand);
                }
                if out.len() > 2 * cap {
                    return Err(Error::BudgetExceeded {
                        needed: out.len() as u128,
                        budget: cap as u128,
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        if out.len() > cap {
            return Err(Error::BudgetExceeded {
                needed: out.len() as u128,
                budget: cap as u128,
            });
        }
        Ok(out)
    }

    /// Parses the polynomial text syntax: terms `c`, `x`, `x^k`, `cx^k` in
    /// strictly descending exponent order joined by `+`, or the single `0`.
    /// Integer coefficients must lie in `[1, q)` and name element codes.
    pub fn parse(field: &FieldCtx, text: &str) -> Result<Poly, ParseError> {
        parse_poly(field, text, 1, 1)
    }

    /// Like [`Poly::parse`], reporting positions relative to `(line, col0)`.
    pub fn parse_at(
        field: &FieldCtx,
        text: &str,
        line: usize,
        col0: usize,
    ) -> Result<Poly, ParseError> {
        parse_poly(field, text, line, col0)
    }
}

fn sqf_rec(f: &Poly) -> Vec<(u32, Poly)> {
    let k = f.field();
    let p = k.characteristic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let mut c = if df.is_zero() {
        f.clone()
    } else {
        f.gcd(&df).unwrap()
    };
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).unwrap();
        let fac = w.exact_div(&y).unwrap();
        if !fac.is_one() {
            out.push((i, fac.monic()));
        }
        w = y;
        c = c.exact_div(&w).unwrap();
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root_poly();
        for (e, part) in sqf_rec(&root.monic()) {
            out.push((e * p, part));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial: `(degree, count)` pairs.
fn distinct_degree(part: &Poly) -> Result<Vec<(u32, u32)>> {
    let k = part.field();
    let q = k.size() as u128;
    let x = Poly::x(k);
    let mut rest = part.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest)?;
        let g = (&h - &x).gcd(&rest)?;
        if !g.is_one() {
            out.push((d as u32, (g.degree().unwrap() / d) as u32));
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest)?;
        }
        d += 1;
    }
    if let Some(r) = rest.degree().filter(|&r| r > 0) {
        out.push((r as u32, 1));
    }
    Ok(out)
}

/// All polynomials of degree `< len` (including zero), in index order.
pub fn polys_below(field: &FieldCtx, len: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.size() as u64).pow(len as u32);
    (0..count).map(move |i| Poly::from_index(field, i, len))
}

/// All monic polynomials of degree exactly `d`.
pub fn monic_of_degree(field: &FieldCtx, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (field.size() as u64).pow(d as u32);
    (0..count).map(move |i| {
        let mut p = Poly::from_index(field, i, d);
        p.coeffs.resize(d + 1, 0);
        p.coeffs[d] = 1;
        p
    })
}

/// Graded-lex: zero first, then by degree, then by ascending coefficient tuples.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| k.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(k, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let k = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| k.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::new(k, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let k = &self.field;
        Poly::new(k, self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check(rhs);
        let k = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(k);
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        if k.is_prime_field() {
            let p = k.characteristic() as u64;
            let mut acc = vec![0u64; out.len()];
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
                }
            }
            for (o, a) in out.iter_mut().zip(acc) {
                *o = a as u32;
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    out[i + j] = k.add(out[i + j], k.mul(a, b));
                }
            }
        }
        Poly::new(k, out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn parse_poly(field: &FieldCtx, text: &str, line: usize, col0: usize) -> Result<Poly, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| ParseError::new(line, col0 + pos, msg);
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return None;
        }
        chars[start..*pos].iter().collect::<String>().parse().ok()
    };

    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(err(pos, "empty polynomial"));
    }
    let q = field.size() as u64;
    let mut coeffs: Vec<u32> = Vec::new();
    let mut last_exp: Option<usize> = None;
    loop {
        skip_ws(&mut pos);
        let term_start = pos;
        let coef = read_int(&mut pos);
        let mut exp = 0usize;
        let has_x = pos < chars.len() && chars[pos] == 'x';
        if has_x {
            pos += 1;
            exp = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                match read_int(&mut pos) {
                    Some(e) if e >= 2 => exp = e as usize,
                    Some(_) => return Err(err(pos - 1, "exponent must be at least 2")),
                    None => return Err(err(pos, "expected exponent after '^'")),
                }
            }
        }
        let c = match (coef, has_x) {
            (None, false) => return Err(err(term_start, "expected a term")),
            (None, true) => 1,
            (Some(c), _) => c,
        };
        if c == 0 {
            if !has_x && coeffs.is_empty() && last_exp.is_none() {
                skip_ws(&mut pos);
                if pos == chars.len() {
                    return Ok(Poly::zero(field));
                }
            }
            return Err(err(term_start, "zero coefficient inside a sum"));
        }
        if c >= q {
            return Err(err(term_start, &format!("coefficient {c} not in [1, {q})")));
        }
        if let Some(prev) = last_exp {
            if exp >= prev {
                return Err(err(term_start, "exponents must strictly decrease"));
            }
        }
        last_exp = Some(exp);
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] = c as u32;
        skip_ws(&mut pos);
        if pos == chars.len() {
            break;
        }
        if chars[pos] != '+' {
            return Err(err(pos, &format!("unexpected character '{}'", chars[pos])));
        }
        pos += 1;
        skip_ws(&mut pos);
        if pos == chars.len() {
            return Err(err(pos, "dangling '+'"));
        }
    }
    Ok(Poly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> FieldCtx {
        FieldCtx::prime(2).unwrap()
    }
    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }
    fn p(k: &FieldCtx, s: &str) -> Poly {
        Poly::parse(k, s).unwrap()
    }

    #[test]
    fn division_examples() {
        let k = f2();
        let (q, r) = p(&k, "x^3+x^2+x").divrem(&p(&k, "x^2+x+1")).unwrap();
        assert_eq!((q, r), (p(&k, "x"), Poly::zero(&k)));
        let a = p(&k, "x^4+x+1");
        assert_eq!(a.divrem(&a).unwrap(), (Poly::one(&k), Poly::zero(&k)));
        let (_, r) = p(&k, "x^5+x^2").divrem(&p(&k, "x^2")).unwrap();
        assert!(r.is_zero());
        assert_eq!(a.divrem(&Poly::zero(&k)), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let k = f2();
        assert_eq!(p(&k, "x^2").gcd(&p(&k, "x^3+x^2+x")).unwrap(), p(&k, "x"));
        let k5 = FieldCtx::prime(5).unwrap();
        let a = p(&k5, "3x^2+1");
        assert_eq!(a.gcd(&Poly::zero(&k5)).unwrap(), a.monic());
        assert!(Poly::zero(&k).gcd(&Poly::zero(&k)).is_err());
        let a = p(&k, "x^2+x+1");
        let b = p(&k, "x^4+x");
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(g, p(&k, "x^2+x+1"));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn reciprocal_examples() {
        let k = f2();
        assert_eq!(p(&k, "x^2+x").reciprocal().unwrap(), p(&k, "x+1"));
        assert_eq!(p(&k, "x^3+1").reciprocal().unwrap(), p(&k, "x^3+1"));
        assert_eq!(p(&k, "x^2+x+1").reciprocal().unwrap(), p(&k, "x^2+x+1"));
        assert!(Poly::zero(&k).reciprocal().is_err());
    }

    #[test]
    fn squarefree_examples() {
        let k = f2();
        let d = p(&k, "x^5+x^2").squarefree_decomposition().unwrap();
        assert_eq!(d.parts, vec![(1, p(&k, "x^3+1")), (2, p(&k, "x"))]);
        let d = p(&k, "x^3+x+1").squarefree_decomposition().unwrap();
        assert_eq!(d.parts, vec![(1, p(&k, "x^3+x+1"))]);
        let d = p(&k, "x^4").squarefree_decomposition().unwrap();
        assert_eq!(d.parts, vec![(4, p(&k, "x"))]);
        // (x+1)^3 x^6 over GF(3): multiplicity 6 comes from the p-th root branch
        let k3 = f3();
        let f = &p(&k3, "x+1").pow(3) * &p(&k3, "x").pow(6);
        let d = f.squarefree_decomposition().unwrap();
        assert_eq!(d.parts, vec![(3, p(&k3, "x+1")), (6, p(&k3, "x"))]);
        assert!(Poly::zero(&k).squarefree_decomposition().is_err());
    }

    #[test]
    fn sqrt2_examples() {
        let k = f3();
        let h = &p(&k, "x").pow(3) * &p(&k, "x+1").pow(2);
        assert_eq!(h.sqrt2().unwrap(), &p(&k, "x").pow(2) * &p(&k, "x+1"));
        let sf = p(&k, "x^2+1");
        assert_eq!(sf.sqrt2().unwrap(), sf);
        let k = f2();
        assert_eq!(p(&k, "x^5+x^2").sqrt2().unwrap(), p(&k, "x^4+x"));
        assert!(p(&FieldCtx::prime(5).unwrap(), "2x+1").sqrt2().is_err());
    }

    #[test]
    fn factor_profile_examples() {
        let k = f2();
        // x^2 (x+1) (x^2+x+1)
        let prof = p(&k, "x^5+x^2").factor_profile().unwrap();
        let expect = vec![
            FactorClass {
                degree: 1,
                multiplicity: 1,
                count: 1,
            },
            FactorClass {
                degree: 1,
                multiplicity: 2,
                count: 1,
            },
            FactorClass {
                degree: 2,
                multiplicity: 1,
                count: 1,
            },
        ];
        assert_eq!(prof.entries, expect);
        let irr = p(&k, "x^5+x^2+1");
        assert!(irr.is_irreducible());
        assert_eq!(
            irr.factor_profile().unwrap().entries,
            vec![FactorClass {
                degree: 5,
                multiplicity: 1,
                count: 1
            }]
        );
        let prof = p(&f3(), "x^2").factor_profile().unwrap();
        assert_eq!(
            prof.entries,
            vec![FactorClass {
                degree: 1,
                multiplicity: 2,
                count: 1
            }]
        );
        assert!(Poly::one(&k).factor_profile().is_err());
    }

    #[test]
    fn square_examples() {
        let k = f2();
        assert_eq!(p(&k, "x^2").square_root().unwrap(), Some(p(&k, "x")));
        assert_eq!(p(&k, "x^3+1").square_root().unwrap(), None);
        let f = &p(&k, "x").pow(2) * &p(&k, "x^3+1").pow(2);
        assert_eq!(f.square_root().unwrap(), Some(p(&k, "x^4+x")));
    }

    #[test]
    fn divisor_examples() {
        let k = f2();
        let d = p(&k, "x^3+x^2+x").divisors(100).unwrap();
        let expect: Vec<Poly> = ["1", "x", "x^2+x+1", "x^3+x^2+x"]
            .iter()
            .map(|s| p(&k, s))
            .collect();
        assert_eq!(d, expect);
        assert_eq!(Poly::one(&k).divisors(10).unwrap(), vec![Poly::one(&k)]);
        let d = p(&k, "x^2").divisors(10).unwrap();
        assert_eq!(d, vec![p(&k, "1"), p(&k, "x"), p(&k, "x^2")]);
        assert!(matches!(
            p(&k, "x^6").divisors(3),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn divisors_match_full_trial_division() {
        // oracle: trial division over every monic polynomial of degree <= deg f
        for k in [f2(), f3()] {
            let maxdeg = if k.size() == 2 { 7 } else { 4 };
            for deg in 1..=maxdeg {
                for f in monic_of_degree(&k, deg) {
                    let mut brute: Vec<Poly> = (0..=deg)
                        .flat_map(|d| monic_of_degree(&k, d).collect::<Vec<_>>())
                        .filter(|c| c.divides(&f))
                        .collect();
                    brute.sort();
                    assert_eq!(f.divisors(10_000).unwrap(), brute, "f = {f}");
                }
            }
        }
    }

    #[test]
    fn sqrt2_law_exhaustive() {
        // (h | g^2) <=> (sqrt2(h) | g), for all monic h and all g with deg g <= deg h
        for (k, maxdeg) in [(f2(), 5usize), (f3(), 3)] {
            for deg in 1..=maxdeg {
                for h in monic_of_degree(&k, deg) {
                    let s = h.sqrt2().unwrap();
                    for g in polys_below(&k, deg + 1) {
                        assert_eq!(h.divides(&(&g * &g)), s.divides(&g), "h = {h}, g = {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let k = FieldCtx::prime(3).unwrap();
        for s in ["x^3+x+1", "2x^2+1", "0", "x", "2x", "2"] {
            assert_eq!(p(&k, s).to_string(), s);
        }
        let e = Poly::parse(&k, "x^+1").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        assert!(Poly::parse(&k, "x+x^2").is_err());
        assert!(Poly::parse(&k, "3x").is_err());
        assert!(Poly::parse(&k, "x-1").is_err());
        assert!(Poly::parse(&k, "x+").is_err());
        assert_eq!(p(&k, " x^2 + 1 ").to_string(), "x^2+1");
    }

    #[test]
    fn extension_field_polys() {
        let k = FieldCtx::of_size(4).unwrap();
        // x^2 + x + t over GF(4) (t has code 2) is irreducible: it has no root in GF(4)
        let f = Poly::new(&k, vec![2, 1, 1]);
        assert!(f.is_irreducible());
        let sq = &f * &f;
        let d = sq.squarefree_decomposition().unwrap();
        assert_eq!(d.parts, vec![(2, f.clone())]);
        assert_eq!(sq.square_root().unwrap(), Some(f));
    }

    fn arb_poly(q: u32, maxlen: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..q, 0..maxlen)
    }

    proptest! {
        #[test]
        fn squarefree_roundtrip(c in arb_poly(3, 12), e in 1u32..4) {
            let k = f3();
            let base = Poly::new(&k, c);
            prop_assume!(!base.is_zero());
            let h = base.pow(e);
            let d = h.squarefree_decomposition().unwrap();
            prop_assert_eq!(d.product(&k), h.monic());
            for (i, (_, a)) in d.parts.iter().enumerate() {
                let da = a.derivative();
                prop_assert!(a.gcd(&da).map(|g| g.is_one()).unwrap_or(false) || da.is_zero() && a.degree() == Some(0));
                for (_, b) in &d.parts[i + 1..] {
                    prop_assert!(a.gcd(b).unwrap().is_one());
                }
            }
        }

        #[test]
        fn squarefree_roundtrip_char2(c in arb_poly(2, 14), e in 1u32..5) {
            let k = f2();
            let base = Poly::new(&k, c);
            prop_assume!(!base.is_zero());
            let h = base.pow(e);
            let d = h.squarefree_decomposition().unwrap();
            prop_assert_eq!(d.product(&k), h.monic());
            if h.degree() > Some(0) {
                prop_assert_eq!(h.monic().factor_profile().unwrap().total_degree(), h.degree().unwrap());
            }
        }

        #[test]
        fn reciprocal_involution(c in arb_poly(5, 10)) {
            let k = FieldCtx::prime(5).unwrap();
            let g = Poly::new(&k, c);
            prop_assume!(g.coeff(0) != 0);
            prop_assert_eq!(g.reciprocal().unwrap().reciprocal().unwrap(), g);
        }

        #[test]
        fn divrem_law(a in arb_poly(7, 12), b in arb_poly(7, 6)) {
            let k = FieldCtx::prime(7).unwrap();
            let (a, b) = (Poly::new(&k, a), Poly::new(&k, b));
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.deg_i() < b.deg_i());
        }

        #[test]
        fn bezout(a in arb_poly(3, 8), b in arb_poly(3, 8)) {
            let k = f3();
            let (a, b) = (Poly::new(&k, a), Poly::new(&k, b));
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let (g, s, t) = a.ext_gcd(&b).unwrap();
            prop_assert!(g.is_monic());
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            prop_assert!(g.divides(&a) && g.divides(&b));
        }
    }
}
