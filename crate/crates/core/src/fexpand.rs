//! `F`-linear expansion of `A`-codes through the companion matrix of `f`.
//!
//! A word of `A^l` is the coefficient vector of length `l·m` obtained by
//! concatenating `[u_1], …, [u_l]`, each ascending. `M_g = g(M_x)` satisfies
//! `[g]·M_h = [gh]`.

use crate::amodule::{Code, CodeMatrix};
use crate::dual::gen_mat_dual;
use crate::error::{Error, Result};
use crate::fmatrix::{FCode, FMatrix};
use crate::poly::Poly;
use crate::quotient::QuotRing;

/// The companion matrix `M_x`: row `i` is `e_{i+1}`, the last row is `−(f_0, …, f_{m−1})`.
pub fn companion(ring: &QuotRing) -> FMatrix {
    let k = ring.field();
    let m = ring.degree();
    let f = ring.modulus();
    let mut mx = FMatrix::zeros(k, m, m);
    for i in 0..m - 1 {
        mx.set(i, i + 1, 1);
    }
    for j in 0..m {
        mx.set(m - 1, j, k.neg(f.coeff(j)));
    }
    mx
}

/// `M_g = g(M_x)`, by Horner's rule.
pub fn m_of_g(ring: &QuotRing, g: &Poly) -> FMatrix {
    let k = ring.field();
    let m = ring.degree();
    let g = ring.reduce(g);
    let mx = companion(ring);
    let id = FMatrix::identity(k, m);
    let mut acc = FMatrix::zeros(k, m, m);
    for i in (0..m).rev() {
        acc = acc
            .mul(&mx)
            .expect("square")
            .add(&id.scale(g.coeff(i)))
            .expect("square");
    }
    acc
}

fn blockwise(g: &CodeMatrix, transpose: bool) -> FMatrix {
    let ring = g.ring();
    let blocks: Vec<Vec<FMatrix>> = g
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| {
                    let b = m_of_g(ring, e);
                    if transpose {
                        b.transpose()
                    } else {
                        b
                    }
                })
                .collect()
        })
        .collect();
    if blocks.is_empty() {
        return FMatrix::zeros(ring.field(), 0, g.ncols() * ring.degree());
    }
    FMatrix::from_blocks(ring.field(), ring.degree(), &blocks)
}

/// Block `(i, j)` is `M_{g_ij}`.
pub fn psi(g: &CodeMatrix) -> FMatrix {
    blockwise(g, false)
}

/// Block `(i, j)` is `M_{g_ij}^T`.
pub fn zeta(g: &CodeMatrix) -> FMatrix {
    blockwise(g, true)
}

/// The code as an `F`-linear code of length `l·m`.
pub fn expansion(c: &Code) -> FCode {
    FCode::from_generators(&psi(c.cgm()))
}

pub fn f_rref(m: &FMatrix) -> FMatrix {
    m.rref()
}

pub fn f_nullspace(m: &FMatrix) -> FMatrix {
    m.nullspace()
}

/// The `F`-dual `C^{⊥_F}`: the nullspace of `ψ(cgm(C))`.
pub fn f_dual(c: &Code) -> FCode {
    FCode::from_generators(&psi(c.cgm()).nullspace())
}

/// Whether an `F`-code of length `l·m` is closed under multiplication by `x`
/// in every coordinate.
pub fn is_acode(cf: &FCode, ring: &QuotRing, l: usize) -> Result<bool> {
    let n = l * ring.degree();
    if cf.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: cf.len(),
        });
    }
    Ok(cf.invariant_under(&FMatrix::block_diag(ring.field(), &companion(ring), l)))
}

/// The `A`-code whose expansion is `cf`; fails when `cf` is not `x`-invariant.
pub fn acode_of(cf: &FCode, ring: &QuotRing, l: usize) -> Result<Code> {
    if !is_acode(cf, ring, l)? {
        return Err(Error::Precondition("F-code is not closed under x".into()));
    }
    let m = ring.degree();
    let rows: Vec<Vec<Poly>> = cf
        .basis()
        .rows()
        .into_iter()
        .map(|v| {
            (0..l)
                .map(|i| Poly::new(ring.field(), v[i * m..(i + 1) * m].to_vec()))
                .collect()
        })
        .collect();
    let code = Code::from_generators(&CodeMatrix::new(ring, l, rows)?);
    debug_assert_eq!(code.dim_f(), cf.dim());
    Ok(code)
}

/// `f = x^m ± 1`.
pub fn is_binomial_pm1(ring: &QuotRing) -> bool {
    let f = ring.modulus();
    let m = ring.degree();
    let k = ring.field();
    (1..m).all(|i| f.coeff(i) == 0) && (f.coeff(0) == 1 || f.coeff(0) == k.neg(1))
}

/// `m = 2` and `f = x² + ax − 1`.
pub fn is_quadratic_minus1(ring: &QuotRing) -> bool {
    ring.degree() == 2 && ring.modulus().coeff(0) == ring.field().neg(1)
}

pub fn fdual_always_acode(ring: &QuotRing) -> bool {
    ring.degree() == 1 || is_quadratic_minus1(ring) || is_binomial_pm1(ring)
}

pub fn fdual_equals_adual(ring: &QuotRing) -> bool {
    ring.degree() == 1 || is_quadratic_minus1(ring)
}

/// `x^{-1} = −f_0·x^{m−1}` for `f = x^m ± 1`.
fn x_inverse(ring: &QuotRing) -> Result<Poly> {
    if !is_binomial_pm1(ring) {
        return Err(Error::Precondition("f is not of the form x^m ± 1".into()));
    }
    let k = ring.field();
    let f0 = ring.modulus().coeff(0);
    Ok(ring.reduce(&Poly::monomial(k, k.neg(f0), ring.degree() - 1)))
}

/// `g(x^{-1})` in `A`, given `x^{-1}`.
fn at_inverse(ring: &QuotRing, xinv: &Poly, g: &Poly) -> Poly {
    let k = ring.field();
    let mut acc = ring.zero();
    for i in (0..=g.degree().unwrap_or(0)).rev() {
        acc = ring.reduce(&(&ring.mul(&acc, xinv) + &Poly::constant(k, g.coeff(i))));
    }
    acc
}

/// Scales row `i` by `α^{-1} x^d` and substitutes `x^{-1}`, where `e` is the
/// reference entry of the row (`α` its constant term, `d` its degree).
fn invert_rows(
    ring: &QuotRing,
    rows: &[Vec<Poly>],
    pick: impl Fn(&[Poly]) -> Option<usize>,
) -> Result<Vec<Vec<Poly>>> {
    let xinv = x_inverse(ring)?;
    let k = ring.field();
    rows.iter()
        .map(|r| {
            let Some(j) = pick(r) else {
                return Ok(r.clone());
            };
            let e = &r[j];
            let alpha = e.coeff(0);
            let inv = k
                .inv(alpha)
                .ok_or_else(|| Error::InvariantViolation(format!("{e} has zero constant term")))?;
            let scale = Poly::monomial(k, inv, e.degree().unwrap());
            Ok(r.iter()
                .map(|g| ring.mul(&scale, &at_inverse(ring, &xinv, g)))
                .collect())
        })
        .collect()
}

/// `G' = (α_i^{-1} x^{d_i} g_ij(x^{-1}))` for a basis of divisors `G` over
/// `f = x^m ± 1`; its rows form a basis of divisors of `(C^⊥)^{⊥_F}`.
pub fn zeta_basis(g: &CodeMatrix) -> Result<CodeMatrix> {
    let ring = g.ring();
    if !crate::amodule::is_divisor_basis(g).is_basis() {
        return Err(Error::NotDivisorBasis(format!("{g:?}")));
    }
    let g = g.monic_rows();
    let rows = invert_rows(ring, g.rows(), crate::amodule::leading_index)?;
    let out = CodeMatrix::new(ring, g.ncols(), rows)?;
    if !crate::amodule::is_divisor_basis(&out).is_basis() {
        return Err(Error::InvariantViolation(
            "G' is not a basis of divisors".into(),
        ));
    }
    Ok(out)
}

/// Rows forming a reverse basis of divisors of `C^{⊥_F}`: the `gen_mat_dual`
/// matrix when `C^{⊥_F} = C^⊥`, and for `f = x^m ± 1` the matrix with entries
/// `α_i^{-1} x^{d_i} h_ij(x^{-1})`, `α_i` and `d_i` taken from the last
/// nonzero entry of row `i`.
pub fn fdual_reverse_basis(c: &Code) -> Result<CodeMatrix> {
    let ring = c.ring();
    if !fdual_always_acode(ring) {
        return Err(Error::Precondition(
            "F-duals over this ring need not be A-codes".into(),
        ));
    }
    let h = gen_mat_dual(c.cgm())?.h_stripped;
    let out = if fdual_equals_adual(ring) {
        h
    } else {
        let rows = invert_rows(ring, h.rows(), |r| r.iter().rposition(|e| !e.is_zero()))?;
        CodeMatrix::new(ring, h.ncols(), rows)?
    };
    if !crate::amodule::is_divisor_basis(&out.reversed()).is_basis() {
        return Err(Error::InvariantViolation(
            "reversed F-dual rows are not a basis of divisors".into(),
        ));
    }
    Ok(out)
}
