//! Self-dual, self-reciprocal-dual and isodual codes.
//!
//! The predicates [`is_self_dual`], [`is_self_reciprocal_dual`] and
//! [`is_isodual`] go through the general dual construction. The closed forms
//! for one-generator codes and for length 2 are separate functions so they
//! can be checked against the general predicates.

use itertools::Itertools;

use crate::amodule::{Code, CodeMatrix};
use crate::dual::dual_code;
use crate::error::{Error, Result};
use crate::field::prime_power_decomposition;
use crate::poly::Poly;
use crate::quotient::QuotRing;

/// Shape of the CGM of a nonzero length-2 code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Length2Class {
    /// CGM `(g1 g2)` with `g1 ≠ 0`.
    I { g1: Poly, g2: Poly },
    /// CGM `(0 g2)`.
    II { g2: Poly },
    /// CGM `[[g1, g2], [0, g3]]`.
    III { g1: Poly, g2: Poly, g3: Poly },
}

pub fn classify_length2(c: &Code) -> Result<Length2Class> {
    if c.len() != 2 {
        return Err(Error::Precondition(format!("length {} is not 2", c.len())));
    }
    let rows = c.cgm().rows();
    let ring = c.ring();
    let f = ring.modulus();
    let cls = match rows.len() {
        0 => return Err(Error::Precondition("the zero code has no class".into())),
        1 if !rows[0][0].is_zero() => Length2Class::I {
            g1: rows[0][0].clone(),
            g2: rows[0][1].clone(),
        },
        1 => Length2Class::II {
            g2: rows[0][1].clone(),
        },
        _ => Length2Class::III {
            g1: rows[0][0].clone(),
            g2: rows[0][1].clone(),
            g3: rows[1][1].clone(),
        },
    };
    let ok = match &cls {
        Length2Class::I { g1, g2 } => g1.divides(f) && g1.divides(g2),
        Length2Class::II { g2 } => g2.divides(f),
        Length2Class::III { g1, g2, g3 } => {
            let h1 = ring.cofactor_poly(g1)?;
            g1.divides(f) && g3.divides(f) && g3.divides(&(&h1 * g2)) && g2.deg_i() < g3.deg_i()
        }
    };
    if !ok {
        return Err(Error::InvariantViolation(format!(
            "{cls:?} violates its class conditions"
        )));
    }
    Ok(cls)
}

/// The dual generator matrix of a length-2 code read off its class.
pub fn dual_of_length2(ring: &QuotRing, cls: &Length2Class) -> Result<CodeMatrix> {
    let z = ring.zero();
    let div = |a: &Poly, b: &Poly| {
        a.exact_div(b)
            .ok_or_else(|| Error::InvariantViolation(format!("{b} does not divide {a}")))
    };
    let rows = match cls {
        Length2Class::I { g1, g2 } => {
            let h1 = ring.cofactor(g1)?;
            vec![vec![h1, z], vec![-&div(g2, g1)?, ring.one()]]
        }
        Length2Class::II { g2 } => vec![vec![ring.one(), z.clone()], vec![z, ring.cofactor(g2)?]],
        Length2Class::III { g1, g2, g3 } => {
            let h1 = ring.cofactor(g1)?;
            let h3 = ring.cofactor_poly(g3)?;
            let a = -&div(&(&h3 * g2), g1)?;
            vec![vec![h1, z], vec![a, ring.reduce(&h3)]]
        }
    };
    CodeMatrix::new(ring, 2, rows)
}

pub fn is_self_dual(c: &Code) -> Result<bool> {
    Ok(dual_code(c)? == *c)
}

/// Whether `C` equals the reciprocal of its dual.
pub fn is_self_reciprocal_dual(c: &Code) -> Result<bool> {
    Ok(dual_code(c)?.reciprocal_code() == *c)
}

/// Default bound on the length accepted by [`is_isodual`].
pub const ISODUAL_MAX_LEN: usize = 7;

/// First permutation (lexicographic) carrying `C` onto its dual, if any.
pub fn is_isodual(c: &Code) -> Result<Option<Vec<usize>>> {
    is_isodual_bounded(c, ISODUAL_MAX_LEN)
}

pub fn is_isodual_bounded(c: &Code, max_len: usize) -> Result<Option<Vec<usize>>> {
    let l = c.len();
    if l > max_len {
        let needed = (1..=l as u128).product();
        let budget = (1..=max_len as u128).product();
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let dual = dual_code(c)?;
    if dual.dim_f() != c.dim_f() {
        return Ok(None);
    }
    for perm in (0..l).permutations(l) {
        if c.permute_cols(&perm)? == dual {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneGenVerdict {
    pub self_dual: bool,
    pub self_reciprocal_dual: bool,
}

/// Closed-form answer for codes whose CGM has a single row.
pub fn selfdual_onegen_characterization(c: &Code) -> Result<OneGenVerdict> {
    if c.rank() != 1 {
        return Err(Error::Precondition(format!(
            "basis of divisors has {} rows, expected 1",
            c.rank()
        )));
    }
    let ring = c.ring();
    let f = ring.modulus();
    let g = &c.cgm().rows()[0];
    let one = ring.one();
    let l = g.len();
    let square_is_f = l == 1 && &(&g[0] * &g[0]) == f;
    let self_dual =
        square_is_f || (l == 2 && g[0] == one && ring.mul(&g[1], &g[1]) == ring.minus_one());
    let char2 = ring.characteristic() == 2;
    let srd = square_is_f
        || (l == 2
            && ((g[0].is_zero() && g[1] == one)
                || (g[0] == one && g[1].is_zero())
                || (char2 && g[0] == one)));
    Ok(OneGenVerdict {
        self_dual,
        self_reciprocal_dual: srd,
    })
}

/// Closed form for `C = C^{⊥R}` at length 2.
pub fn srd_length2(ring: &QuotRing, cls: &Length2Class) -> bool {
    let char2 = ring.characteristic() == 2;
    match cls {
        Length2Class::I { g1, g2 } => g1.is_one() && (char2 || g2.is_zero()),
        Length2Class::II { g2 } => g2.is_one(),
        Length2Class::III { g1, g2, g3 } => &(g1 * g3) == ring.modulus() && (char2 || g2.is_zero()),
    }
}

/// Closed form for self-duality at length 2: `[1 g2]` with `g2² = −1`, or a
/// class III code satisfying [`selfdual_class3_predicate`].
pub fn selfdual_length2(ring: &QuotRing, cls: &Length2Class) -> bool {
    match cls {
        Length2Class::I { g1, g2 } => g1.is_one() && ring.mul(g2, g2) == ring.minus_one(),
        Length2Class::II { .. } => false,
        Length2Class::III { g1, g2, g3 } => selfdual_class3_predicate(ring, g1, g2, g3),
    }
}

/// `deg g1 + deg g3 = m`, `g3² = g2·g3 = g1² + g2² = 0` in `A`, and `g1² | f`.
pub fn selfdual_class3_predicate(ring: &QuotRing, g1: &Poly, g2: &Poly, g3: &Poly) -> bool {
    let m = ring.degree() as isize;
    g1.deg_i() + g3.deg_i() == m
        && ring.mul(g3, g3).is_zero()
        && ring.mul(g2, g3).is_zero()
        && ring.reduce(&(&(g1 * g1) + &(g2 * g2))).is_zero()
        && (g1 * g1).divides(ring.modulus())
}

/// `f = g1²·f'`, `g3 = g1·f'`, `g2 = g1·g'` and `g'² = r·f' − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualWitness {
    pub g1: Poly,
    pub f_prime: Poly,
    pub g_prime: Poly,
    pub r: Poly,
}

impl SelfDualWitness {
    pub fn verify(&self, f: &Poly, g2: &Poly, g3: &Poly) -> bool {
        let one = Poly::one(self.g1.field());
        &(&(&self.g1 * &self.g1) * &self.f_prime) == f
            && &(&self.g1 * &self.f_prime) == g3
            && &(&self.g1 * &self.g_prime) == g2
            && &self.g_prime * &self.g_prime == &(&self.r * &self.f_prime) - &one
    }
}

/// Extracts `(f', g', r)` for a class III code satisfying the predicate.
pub fn extract_witness(
    ring: &QuotRing,
    g1: &Poly,
    g2: &Poly,
    g3: &Poly,
) -> Option<SelfDualWitness> {
    if !selfdual_class3_predicate(ring, g1, g2, g3) {
        return None;
    }
    let f_prime = ring.modulus().exact_div(&(g1 * g1))?;
    let g_prime = g2.exact_div(g1)?;
    let one = Poly::one(ring.field());
    let r = (&(&g_prime * &g_prime) + &one).exact_div(&f_prime)?;
    let w = SelfDualWitness {
        g1: g1.clone(),
        f_prime,
        g_prime,
        r,
    };
    w.verify(ring.modulus(), g2, g3).then_some(w)
}

/// Builds `A = F[x]/<g1²f'>` and the code with CGM `[[g1, g1g'], [0, g1f']]`.
pub fn build_selfdual_class3(
    g1: &Poly,
    f_prime: &Poly,
    g_prime: &Poly,
) -> Result<(QuotRing, Code, SelfDualWitness)> {
    if !g1.is_monic() || g1.deg_i() < 1 {
        return Err(Error::Precondition(
            "g1 must be monic of degree >= 1".into(),
        ));
    }
    if !f_prime.is_monic() {
        return Err(Error::Precondition("f' must be monic".into()));
    }
    let one = Poly::one(g1.field());
    let r = (&(g_prime * g_prime) + &one)
        .exact_div(f_prime)
        .ok_or_else(|| Error::Precondition("f' does not divide g'^2 + 1".into()))?;
    let g2 = g1 * g_prime;
    let g3 = g1 * f_prime;
    if g2.deg_i() >= g3.deg_i() {
        return Err(Error::Precondition(
            "deg(g1 g') must be below deg(g1 f')".into(),
        ));
    }
    let ring = QuotRing::new(&(g1 * g1) * f_prime)?;
    let g = CodeMatrix::new(
        &ring,
        2,
        vec![vec![g1.clone(), g2.clone()], vec![ring.zero(), g3.clone()]],
    )?;
    let code = Code::from_generators(&g);
    if code.cgm() != &g {
        return Err(Error::InvariantViolation(
            "constructed matrix is not canonical".into(),
        ));
    }
    let w = SelfDualWitness {
        g1: g1.clone(),
        f_prime: f_prime.clone(),
        g_prime: g_prime.clone(),
        r,
    };
    if !w.verify(ring.modulus(), &g2, &g3) || !is_self_dual(&code)? {
        return Err(Error::InvariantViolation(
            "constructed code is not self-dual".into(),
        ));
    }
    Ok((ring, code, w))
}

/// Characteristic-2 closed form for a class III code.
pub fn selfdual_char2_characterization(
    ring: &QuotRing,
    g1: &Poly,
    g2: &Poly,
    g3: &Poly,
) -> Result<bool> {
    if ring.characteristic() != 2 {
        return Err(Error::Precondition("characteristic is not 2".into()));
    }
    let f = ring.modulus();
    if g1 == g3 && g2.is_zero() && &(g1 * g1) == f {
        return Ok(true);
    }
    let Some(f_prime) = f.exact_div(&(g1 * g1)) else {
        return Ok(false);
    };
    if &(g1 * &f_prime) != g3 {
        return Ok(false);
    }
    let Some(g_prime) = g2.exact_div(g1) else {
        return Ok(false);
    };
    let s = f_prime.sqrt2()?;
    let one = Poly::one(ring.field());
    let Some(h) = (&g_prime - &one).exact_div(&s) else {
        return Ok(false);
    };
    let bound = f_prime.deg_i() - s.deg_i();
    Ok(h.deg_i() < bound)
}

/// Every self-dual code of length 1 or 2.
pub fn enumerate_selfdual(ring: &QuotRing, l: usize, budget: u128) -> Result<Vec<Code>> {
    let f = ring.modulus();
    let mut out = Vec::new();
    match l {
        1 => {
            if let Some(g) = f.square_root()? {
                out.push(Code::from_generators(&CodeMatrix::new(
                    ring,
                    1,
                    vec![vec![g.monic()]],
                )?));
            }
        }
        2 => {
            let size = ring.size().unwrap_or(u128::MAX);
            let divisors = f.divisors(budget.min(1 << 20) as usize)?;
            let pairs = (divisors.len() as u128).pow(2);
            if size.saturating_add(pairs.saturating_mul(size)) > budget {
                return Err(Error::BudgetExceeded {
                    needed: size.saturating_add(pairs.saturating_mul(size)),
                    budget,
                });
            }
            let minus_one = ring.minus_one();
            for g2 in ring.elements() {
                if ring.mul(&g2, &g2) == minus_one {
                    let g = CodeMatrix::new(ring, 2, vec![vec![ring.one(), g2]])?;
                    out.push(Code::from_generators(&g));
                }
            }
            let m = ring.degree();
            for g1 in divisors.iter().filter(|d| *d != f) {
                if !(g1 * g1).divides(f) {
                    continue;
                }
                let h1 = ring.cofactor_poly(g1)?;
                for g3 in divisors.iter().filter(|d| *d != f) {
                    if g1.degree().unwrap() + g3.degree().unwrap() != m {
                        continue;
                    }
                    let d3 = g3.degree().unwrap();
                    for g2 in crate::poly::polys_below(ring.field(), d3) {
                        if !g3.divides(&(&h1 * &g2))
                            || !selfdual_class3_predicate(ring, g1, &g2, g3)
                        {
                            continue;
                        }
                        let g = CodeMatrix::new(
                            ring,
                            2,
                            vec![vec![g1.clone(), g2], vec![ring.zero(), g3.clone()]],
                        )?;
                        out.push(Code::from_generators(&g));
                    }
                }
            }
        }
        _ => {
            return Err(Error::Precondition(
                "only lengths 1 and 2 are enumerated".into(),
            ))
        }
    }
    out.sort_by(|a, b| a.cgm().rows().cmp(b.cgm().rows()));
    out.dedup();
    for c in &out {
        if !is_self_dual(c)? {
            return Err(Error::InvariantViolation(format!("{c:?} is not self-dual")));
        }
    }
    Ok(out)
}

pub fn is_minus_one_square(q: u64) -> Result<bool> {
    prime_power_decomposition(q).ok_or(Error::NotPrimePower(q))?;
    Ok(q.is_multiple_of(2) || q % 4 == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExistenceReport {
    /// Self-dual codes exist for every length.
    pub all_lengths: bool,
    /// Self-dual codes exist for every even length.
    pub all_even_lengths: bool,
    /// Self-dual codes exist for every multiple of 4 (always).
    pub multiples_of_4: bool,
}

pub fn selfdual_existence(ring: &QuotRing) -> Result<ExistenceReport> {
    let f = ring.modulus();
    let q = ring.q();
    let all_lengths = f.square_root()?.is_some();
    let all_even_lengths = is_minus_one_square(q)?
        || f.factor_profile()?
            .entries
            .iter()
            .all(|e| (e.degree as u64 * e.multiplicity as u64).is_multiple_of(2));
    Ok(ExistenceReport {
        all_lengths,
        all_even_lengths,
        multiples_of_4: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amodule::enumerate_codes;
    use crate::field::FieldCtx;

    fn ring(q: u64, f: &str) -> QuotRing {
        QuotRing::parse(q, f).unwrap()
    }

    fn p(r: &QuotRing, s: &str) -> Poly {
        Poly::parse(r.field(), s).unwrap()
    }

    #[test]
    fn classification_examples() {
        let r = ring(2, "x^4+x^2");
        let c = Code::parse(&r, &["x|x^2", "0|x^3+x"]).unwrap();
        assert!(matches!(
            classify_length2(&c).unwrap(),
            Length2Class::III { .. }
        ));
        let c = Code::parse(&r, &["0|x^2+1"]).unwrap();
        assert_eq!(
            classify_length2(&c).unwrap(),
            Length2Class::II { g2: p(&r, "x^2+1") }
        );
        let r2 = ring(2, "x^2+1");
        let c = Code::parse(&r2, &["1|x"]).unwrap();
        assert!(matches!(
            classify_length2(&c).unwrap(),
            Length2Class::I { .. }
        ));
        assert!(classify_length2(&Code::zero(&r2, 2)).is_err());
        assert!(classify_length2(&Code::zero(&r2, 3)).is_err());
    }

    #[test]
    fn self_dual_examples() {
        let r = ring(2, "x^2");
        assert!(is_self_dual(&Code::parse(&r, &["x"]).unwrap()).unwrap());
        let r = ring(2, "x^2+1");
        assert!(is_self_dual(&Code::parse(&r, &["1|x"]).unwrap()).unwrap());
        let r = ring(2, "x^2");
        let c = Code::parse(&r, &["0|x|0", "0|0|1"]).unwrap();
        assert!(is_self_reciprocal_dual(&c).unwrap());
        assert!(is_isodual(&c).unwrap().is_some());
    }

    #[test]
    fn onegen_examples() {
        let r = ring(2, "x^3+x+1");
        let v = selfdual_onegen_characterization(&Code::parse(&r, &["1|x+1"]).unwrap()).unwrap();
        assert!(v.self_reciprocal_dual);
        let v = selfdual_onegen_characterization(&Code::parse(&r, &["0|1"]).unwrap()).unwrap();
        assert!(v.self_reciprocal_dual && !v.self_dual);
        let v = selfdual_onegen_characterization(&Code::parse(&r, &["1|1|1"]).unwrap()).unwrap();
        assert!(!v.self_dual);
        assert!(selfdual_onegen_characterization(&Code::full(&r, 2)).is_err());
    }

    #[test]
    fn b_code_and_family() {
        for q in [2, 3, 5] {
            let k = FieldCtx::prime(q).unwrap();
            let g1 = Poly::parse(&k, "x+1").unwrap();
            let fp = Poly::from_ints(&k, &[1, 0, -1, 0, 1]);
            let gp = Poly::parse(&k, "x^3").unwrap();
            let (_, code, w) = build_selfdual_class3(&g1, &fp, &gp).unwrap();
            assert_eq!(w.r, Poly::parse(&k, "x^2+1").unwrap());
            assert!(is_self_dual(&code).unwrap());
        }
        let k = FieldCtx::prime(2).unwrap();
        let g1 = Poly::parse(&k, "x").unwrap();
        let gp = Poly::parse(&k, "x").unwrap();
        let fp = &(&gp * &gp) + &Poly::one(&k);
        let (r, code, _) = build_selfdual_class3(&g1, &fp, &gp).unwrap();
        assert_eq!(r.modulus(), &Poly::parse(&k, "x^4+x^2").unwrap());
        assert_eq!(
            code.cgm(),
            &CodeMatrix::parse_rows(&r, &["x|x^2", "0|x^3+x"]).unwrap()
        );
        assert!(build_selfdual_class3(&Poly::one(&k), &fp, &gp).is_err());
    }

    #[test]
    fn minus_one() {
        assert!(is_minus_one_square(2).unwrap());
        assert!(is_minus_one_square(5).unwrap());
        assert!(!is_minus_one_square(3).unwrap());
        assert!(is_minus_one_square(9).unwrap());
        assert!(!is_minus_one_square(7).unwrap());
        assert!(is_minus_one_square(6).is_err());
        // oracle: search GF(q) for a square root of -1
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27] {
            let k = FieldCtx::of_size(q).unwrap();
            let m1 = k.neg(1);
            let found = k.elements().any(|a| k.mul(a, a) == m1);
            assert_eq!(found, is_minus_one_square(q).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn existence_examples() {
        let e = selfdual_existence(&ring(3, "x")).unwrap();
        assert!(!e.all_even_lengths && !e.all_lengths && e.multiples_of_4);
        assert!(enumerate_selfdual(&ring(3, "x"), 2, 1 << 20)
            .unwrap()
            .is_empty());
        assert!(selfdual_existence(&ring(3, "x^2")).unwrap().all_lengths);
        assert!(
            selfdual_existence(&ring(2, "x^3+x+1"))
                .unwrap()
                .all_even_lengths
        );
    }

    #[test]
    fn enumerate_x_squared() {
        let r = ring(2, "x^2");
        let one = enumerate_selfdual(&r, 1, 1 << 20).unwrap();
        assert_eq!(one, vec![Code::parse(&r, &["x"]).unwrap()]);
        let two = enumerate_selfdual(&r, 2, 1 << 20).unwrap();
        for rows in [vec!["x|0", "0|x"], vec!["1|1"], vec!["1|x+1"]] {
            assert!(two.contains(&Code::parse(&r, &rows).unwrap()));
        }
        // oracle: every length-2 code that equals its dual
        let all: Vec<Code> = enumerate_codes(&r, 2, 1 << 20)
            .unwrap()
            .into_iter()
            .filter(|c| is_self_dual(c).unwrap())
            .collect();
        assert_eq!(all.len(), two.len());
        assert!(enumerate_selfdual(&ring(2, "x"), 1, 100)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn class_duals_match_algorithm() {
        for (q, f) in [(2, "x^4+x^2"), (3, "x^3"), (2, "x^3+1")] {
            let r = ring(q, f);
            for c in enumerate_codes(&r, 2, 1 << 20).unwrap() {
                if c.is_zero() {
                    continue;
                }
                let cls = classify_length2(&c).unwrap();
                let h = dual_of_length2(&r, &cls).unwrap();
                assert_eq!(Code::from_generators(&h), dual_code(&c).unwrap());
                let alg = crate::dual::gen_mat_dual(c.cgm()).unwrap().h;
                assert_eq!(h, alg, "{c:?}");
            }
        }
    }
}
