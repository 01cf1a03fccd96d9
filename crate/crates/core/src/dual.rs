//! Generator matrices of dual codes.
//!
//! [`gen_mat_dual`] runs the column-by-column construction: peeling the first
//! column off a basis of divisors `G`, the dual of the remaining code `C'`
//! (generated by `G` without its first row and column) is lifted by one
//! coordinate. With `g11` the first pivot and `h11 = f/g11`, the new matrix has
//! first row `(h11, 0, …, 0)` and rows `(α_i, H'_i)` where
//! `α_i = −(Σ_j H'_ij g_1j) / g11`, reduced modulo `h11`. A zero first column
//! contributes `diag(1, H')`. The loop runs from the last column to the first,
//! so the output is always `l × l`, possibly with zero rows.

use crate::amodule::{
    check_key_space, expand_word, is_divisor_basis, leading_index, unpack_word, Code, CodeMatrix,
};
use crate::error::{Error, Result};
use crate::fmatrix::FCode;
use crate::poly::Poly;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualOptions {
    /// Reduce `α_i` modulo `f` instead of modulo `h11`. The result still
    /// generates the dual, but its reversal need not be canonical.
    pub reduce_alpha_mod_f: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualResult {
    /// Raw `l × l` output, zero rows included.
    pub h: CodeMatrix,
    /// `h` without its zero rows.
    pub h_stripped: CodeMatrix,
    /// Ring multiplications spent on the `α_i` sums.
    pub mult_count: u64,
}

pub fn gen_mat_dual(g: &CodeMatrix) -> Result<DualResult> {
    gen_mat_dual_with(g, &DualOptions::default())
}

pub fn gen_mat_dual_with(g: &CodeMatrix, opts: &DualOptions) -> Result<DualResult> {
    let g = g.monic_rows();
    let check = is_divisor_basis(&g);
    if !check.is_basis() {
        return Err(Error::NotDivisorBasis(format!("{check:?}")));
    }
    let ring = g.ring();
    let f = ring.modulus();
    let l = g.ncols();
    let pivots: Vec<usize> = g.rows().iter().map(|r| leading_index(r).unwrap()).collect();

    // h holds the dual of the suffix code on columns c..l
    let mut h: Vec<Vec<Poly>> = Vec::new();
    let mut mult_count = 0u64;
    for c in (0..l).rev() {
        let width = l - c - 1;
        let r = pivots.iter().filter(|&&p| p < c).count();
        let mut next: Vec<Vec<Poly>> = Vec::with_capacity(width + 1);
        if pivots.get(r) == Some(&c) {
            let row = &g.rows()[r];
            let g11 = &row[c];
            let h11_poly = ring.cofactor_poly(g11)?;
            let mut first = vec![ring.reduce(&h11_poly)];
            first.extend(std::iter::repeat_n(ring.zero(), width));
            next.push(first);
            for hp in &h {
                let mut s = ring.zero();
                for (j, e) in hp.iter().enumerate() {
                    s = &s + &ring.mul(e, &row[c + 1 + j]);
                    mult_count += 1;
                }
                let s = ring.reduce(&s);
                let quo = s.exact_div(g11).ok_or_else(|| {
                    Error::InvariantViolation(format!("{g11} does not divide {s} at column {c}"))
                })?;
                let modulus = if opts.reduce_alpha_mod_f {
                    f
                } else {
                    &h11_poly
                };
                let alpha = (-&quo).rem(modulus)?;
                let mut new_row = vec![alpha];
                new_row.extend(hp.iter().cloned());
                next.push(new_row);
            }
        } else {
            let mut first = vec![ring.one()];
            first.extend(std::iter::repeat_n(ring.zero(), width));
            next.push(first);
            for hp in &h {
                let mut new_row = vec![ring.zero()];
                new_row.extend(hp.iter().cloned());
                next.push(new_row);
            }
        }
        h = next;
    }

    let h = CodeMatrix::new(ring, l, h)?;
    for hr in h.rows() {
        for gr in g.rows() {
            if !crate::amodule::dot(ring, hr, gr).is_zero() {
                return Err(Error::InvariantViolation("dual row not orthogonal".into()));
            }
        }
    }
    let h_stripped = h.without_zero_rows();
    Ok(DualResult {
        h,
        h_stripped,
        mult_count,
    })
}

/// Deletes zero rows, then reverses rows and columns; the result is checked
/// to be the CGM of the reciprocal of the dual.
pub fn reverse_cgm(res: &DualResult) -> Result<CodeMatrix> {
    let rev = res.h_stripped.reversed();
    let check = is_divisor_basis(&rev);
    if !check.is_cgm() || rev.monic_rows() != rev {
        return Err(Error::InvariantViolation(format!(
            "reversed dual matrix is not canonical: {check:?}"
        )));
    }
    Ok(rev)
}

pub fn dual_code(c: &Code) -> Result<Code> {
    Ok(Code::from_generators(&gen_mat_dual(c.cgm())?.h))
}

/// All words orthogonal to every CGM row of `c`, by exhaustive scan of `A^l`,
/// as sorted packed keys.
pub fn orthogonal_keys(c: &Code, budget: u128) -> Result<Vec<u64>> {
    let ring = c.ring();
    let k = ring.field();
    let m = ring.degree();
    let l = c.len();
    let n = l * m;
    check_key_space(ring.q(), n)?;
    let total = (ring.q() as u128).pow(n as u32);
    if total > budget {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget,
        });
    }
    let gens = c.cgm().rows();
    let width = gens.len() * m;
    // images[t]: the dot products of x^s·e_i (t = i·m + s) with every generator
    let images: Vec<Vec<u32>> = (0..n)
        .map(|t| {
            let (i, s) = (t / m, t % m);
            let xs = Poly::monomial(k, 1, s);
            gens.iter()
                .flat_map(|g| {
                    let v = ring.mul(&xs, &g[i]);
                    (0..m).map(move |d| v.coeff(d))
                })
                .collect()
        })
        .collect();
    let q = k.size();
    // steps[t][d]: the change in the accumulator when digit t moves from d to d+1 (mod q)
    let steps: Vec<Vec<Vec<u32>>> = images
        .iter()
        .map(|img| {
            (0..q)
                .map(|old| {
                    let delta = k.sub(if old + 1 == q { 0 } else { old + 1 }, old);
                    img.iter().map(|&b| k.mul(delta, b)).collect()
                })
                .collect()
        })
        .collect();
    if k.is_prime_field() && q < 128 && width <= Packed::LANES {
        Ok(scan_packed(Packed::new(q), &steps, q, n))
    } else {
        Ok(scan_wide(k, width, &steps, q, n))
    }
}

/// Up to 16 residues mod a prime `p < 128`, one per byte of a `u128`.
#[derive(Clone, Copy)]
struct Packed {
    p_lanes: u128,
    bias: u128,
}

impl Packed {
    const LANES: usize = 16;
    const ONES: u128 = u128::MAX / 255;
    const HIGH: u128 = Self::ONES << 7;

    fn new(p: u32) -> Packed {
        Packed {
            p_lanes: p as u128 * Self::ONES,
            bias: (128 - p as u128) * Self::ONES,
        }
    }

    fn pack(v: &[u32]) -> u128 {
        v.iter().rev().fold(0u128, |a, &c| (a << 8) | c as u128)
    }

    #[inline]
    fn add(self, a: u128, b: u128) -> u128 {
        let s = a.wrapping_add(b);
        let hb = s.wrapping_add(self.bias) & Self::HIGH;
        let mask = (hb << 1).wrapping_sub(hb >> 7);
        s.wrapping_sub(mask & self.p_lanes)
    }

    fn neg(self, a: u128) -> u128 {
        self.add(self.p_lanes.wrapping_sub(a), 0)
    }
}

/// Splits the digits into a low block, tabulated once, and a high block
/// walked by an odometer; a word is orthogonal when its low entry cancels the
/// high partial sum.
fn scan_packed(pk: Packed, steps: &[Vec<Vec<u32>>], q: u32, n: usize) -> Vec<u64> {
    let images: Vec<u128> = steps.iter().map(|st| Packed::pack(&st[0])).collect();
    let low_digits = n.min(10);
    let mut low = vec![0u128];
    for img in &images[..low_digits] {
        let mut next = Vec::with_capacity(low.len() * q as usize);
        let mut shift = 0u128;
        for _ in 0..q {
            next.extend(low.iter().map(|&v| pk.add(v, shift)));
            shift = pk.add(shift, *img);
        }
        low = next;
    }
    let high: Vec<u128> = images[low_digits..].iter().map(|&v| pk.neg(v)).collect();
    let block = low.len() as u64;
    let mut digits = vec![0u32; high.len()];
    let mut target = 0u128;
    let mut base = 0u64;
    let mut out = Vec::new();
    loop {
        for (j, &v) in low.iter().enumerate() {
            if v == target {
                out.push(base + j as u64);
            }
        }
        base += block;
        let mut t = 0;
        loop {
            if t == high.len() {
                return out;
            }
            target = pk.add(target, high[t]);
            if digits[t] + 1 < q {
                digits[t] += 1;
                break;
            }
            digits[t] = 0;
            t += 1;
        }
    }
}

/// Plain odometer over all `q^n` digit vectors with a per-coordinate accumulator.
fn scan_wide(
    k: &crate::field::FieldCtx,
    width: usize,
    steps: &[Vec<Vec<u32>>],
    q: u32,
    n: usize,
) -> Vec<u64> {
    let powers: Vec<u64> = (0..n).map(|t| (q as u64).pow(t as u32)).collect();
    let mut digits = vec![0u32; n];
    let mut acc = vec![0u32; width];
    let mut out = Vec::new();
    let mut key = 0u64;
    loop {
        if acc.iter().all(|&a| a == 0) {
            out.push(key);
        }
        let mut t = 0;
        loop {
            if t == n {
                return out;
            }
            let old = digits[t];
            for (a, &b) in acc.iter_mut().zip(&steps[t][old as usize]) {
                *a = k.add(*a, b);
            }
            if old + 1 < q {
                digits[t] = old + 1;
                key += powers[t];
                break;
            }
            digits[t] = 0;
            key -= (q as u64 - 1) * powers[t];
            t += 1;
        }
    }
}

pub fn dual_oracle(c: &Code, budget: u128) -> Result<Code> {
    let ring = c.ring();
    let l = c.len();
    let n = l * ring.degree();
    let keys = orthogonal_keys(c, budget)?;
    let q = ring.q() as u128;
    let mut dim = 0;
    while q.pow(dim as u32) < keys.len() as u128 {
        dim += 1;
    }
    if q.pow(dim as u32) != keys.len() as u128 {
        return Err(Error::InvariantViolation(
            "orthogonal words are not a subspace".into(),
        ));
    }
    // keys are sorted, so the first key with each top digit position is the
    // smallest one there; distinct top positions make these independent
    let mut chosen = Vec::new();
    let mut top = 0u64;
    for &key in &keys {
        if key >= top.max(1) {
            chosen.push(expand_word(ring, &unpack_word(ring, key, l)));
            let mut next = 1u64;
            while next <= key {
                next *= q as u64;
            }
            top = next;
        }
    }
    let fc = FCode::from_vectors(ring.field(), n, &chosen)?;
    if fc.dim() != dim || chosen.len() != dim {
        return Err(Error::InvariantViolation(
            "orthogonal words are not a subspace".into(),
        ));
    }
    let m = ring.degree();
    let gens: Vec<Vec<Poly>> = fc
        .basis()
        .rows()
        .into_iter()
        .map(|v| {
            (0..l)
                .map(|i| Poly::new(ring.field(), v[i * m..(i + 1) * m].to_vec()))
                .collect()
        })
        .collect();
    let code = Code::from_generators(&CodeMatrix::new(ring, l, gens)?);
    if code.dim_f() != fc.dim() {
        return Err(Error::InvariantViolation(
            "orthogonal set is not an A-module".into(),
        ));
    }
    Ok(code)
}

/// For a code starting at the first coordinate, checks that puncturing the
/// dual in the first position gives the dual of `C'` (the punctured tail
/// subcode). Otherwise the first column is zero and the check is
/// `C^⊥ = A × C_1^⊥` with `C_1` the punctured code.
pub fn punctured_dual_check(c: &Code) -> Result<bool> {
    if c.len() < 2 {
        return Err(Error::Precondition(
            "punctured dual check needs length >= 2".into(),
        ));
    }
    let dual = dual_code(c)?;
    if c.leading_index() == Some(0) {
        let c_prime = c.tail_subcode().puncture_first()?;
        Ok(dual.puncture_first()? == dual_code(&c_prime)?)
    } else {
        let c1 = c.puncture_first()?;
        let expected = Code::full(c.ring(), 1).direct_product(&dual_code(&c1)?)?;
        Ok(dual == expected)
    }
}
