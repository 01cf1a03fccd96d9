use std::collections::BTreeSet;

use proptest::prelude::*;
use quotient_codes::amodule::{all_words, divisor_basis, is_divisor_basis, word_key};
use quotient_codes::dual::dual_oracle;
use quotient_codes::fexpand::{expansion, f_dual, m_of_g, zeta};
use quotient_codes::selfdual::{enumerate_selfdual, is_self_dual};
use quotient_codes::{
    dual_code, gen_mat_dual, reverse_cgm, Code, CodeMatrix, FCode, Poly, QuotRing,
};

const BUDGET: u128 = 1 << 22;

const RINGS: &[(u64, &str)] = &[
    (2, "x^4+x^2"),
    (2, "x^5+1"),
    (2, "x^4"),
    (2, "x^3+x+1"),
    (3, "x^3+2x"),
    (3, "x^2+1"),
    (5, "x^2+4"),
];

fn ring(i: usize) -> QuotRing {
    let (q, f) = RINGS[i % RINGS.len()];
    QuotRing::parse(q, f).unwrap()
}

fn element(r: &QuotRing, seed: u64) -> Poly {
    let space = r.q().pow(r.degree() as u32);
    Poly::from_index(r.field(), seed % space, r.degree())
}

fn matrix(r: &QuotRing, l: usize, seeds: &[u64]) -> CodeMatrix {
    let rows = seeds
        .chunks(l)
        .filter(|c| c.len() == l)
        .map(|c| c.iter().map(|&s| element(r, s)).collect())
        .collect();
    CodeMatrix::new(r, l, rows).unwrap()
}

/// Every `A`-combination of the rows of `g`, as packed keys.
fn brute_span(g: &CodeMatrix) -> BTreeSet<u64> {
    let r = g.ring();
    let l = g.ncols();
    all_words(r, g.nrows())
        .map(|coeffs| {
            let word: Vec<Poly> = (0..l)
                .map(|j| {
                    let s = coeffs
                        .iter()
                        .zip(g.rows())
                        .fold(r.zero(), |a, (c, row)| &a + &r.mul(c, &row[j]));
                    r.reduce(&s)
                })
                .collect();
            word_key(r, &word)
        })
        .collect()
}

fn dot(r: &QuotRing, a: &[Poly], b: &[Poly]) -> Poly {
    r.reduce(
        &a.iter()
            .zip(b)
            .fold(r.zero(), |acc, (x, y)| &acc + &r.mul(x, y)),
    )
}

fn small_code() -> impl Strategy<Value = (usize, usize, Vec<u64>)> {
    (0..RINGS.len(), 1usize..=3).prop_flat_map(|(ri, l)| {
        let rows = if l == 3 { 1 } else { 2 };
        (
            Just(ri),
            Just(l),
            prop::collection::vec(any::<u64>(), l..=rows * l),
        )
    })
}

fn within(r: &QuotRing, n: usize, bound: u32) -> bool {
    (r.q() as f64).powi(n as i32) <= 2f64.powi(bound as i32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cgm_matches_brute_span((ri, l, seeds) in small_code()) {
        let r = ring(ri);
        let g = matrix(&r, l, &seeds);
        prop_assume!(within(&r, g.nrows() * r.degree(), 14));
        let c = Code::from_generators(&g);
        let span = brute_span(&g);
        prop_assert_eq!(c.codeword_keys(BUDGET).unwrap(), span.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(span.len() as u128, (r.q() as u128).pow(c.dim_f() as u32));
        prop_assert_eq!(c.enumerate_codewords(BUDGET).unwrap().len(), span.len());
        prop_assert!(is_divisor_basis(&divisor_basis(&g).0).is_basis());
        prop_assert!(is_divisor_basis(c.cgm()).is_cgm());
    }

    #[test]
    fn cgm_independent_of_generators((ri, l, seeds) in small_code(), mix in prop::collection::vec(any::<u64>(), 4), unit in 1u32..5) {
        let r = ring(ri);
        let g = matrix(&r, l, &seeds);
        let k = r.field().size();
        let mut rows: Vec<Vec<Poly>> = g.rows().iter().rev().map(|row| row.iter().map(|e| e.scale(1 + (unit - 1) % (k - 1))).collect()).collect();
        for (i, &s) in mix.iter().enumerate() {
            let a = element(&r, s);
            let src = g.row(i % g.nrows()).to_vec();
            let dst = i % rows.len();
            for j in 0..l {
                rows[dst][j] = r.reduce(&(&rows[dst][j] + &r.mul(&a, &src[j])));
            }
        }
        rows.rotate_left(1);
        rows.extend(g.rows().iter().cloned());
        let g2 = CodeMatrix::new(&r, l, rows).unwrap();
        prop_assert_eq!(Code::from_generators(&g2).cgm().clone(), Code::from_generators(&g).cgm().clone());
    }

    #[test]
    fn membership_matches_codeword_set((ri, l, seeds) in small_code(), word in prop::collection::vec(any::<u64>(), 3)) {
        let r = ring(ri);
        let c = Code::from_generators(&matrix(&r, l, &seeds));
        let keys = c.codeword_keys(BUDGET).unwrap();
        let u: Vec<Poly> = word[..l].iter().map(|&s| element(&r, s)).collect();
        let member = keys.binary_search(&word_key(&r, &u)).is_ok();
        match c.membership_test(&u).unwrap() {
            Some(z) => {
                prop_assert!(member);
                let rebuilt: Vec<Poly> = (0..l)
                    .map(|j| r.reduce(&z.iter().zip(c.cgm().rows()).fold(r.zero(), |a, (zi, row)| &a + &r.mul(zi, &row[j]))))
                    .collect();
                prop_assert_eq!(rebuilt, u);
            }
            None => prop_assert!(!member),
        }
        let w = keys[(word[0] as usize) % keys.len()];
        prop_assert!(c.contains(&quotient_codes::amodule::unpack_word(&r, w, l)));
    }

    #[test]
    fn permutation_preserves_cardinality((ri, l, seeds) in small_code(), perm in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let r = ring(ri);
        let c = Code::from_generators(&matrix(&r, l, &seeds));
        let p: Vec<usize> = perm.into_iter().filter(|&i| i < l).collect();
        let pc = c.permute_cols(&p).unwrap();
        prop_assert_eq!(pc.cardinality(), c.cardinality());
    }

    #[test]
    fn dual_laws((ri, l, seeds) in small_code()) {
        let r = ring(ri);
        let c = Code::from_generators(&matrix(&r, l, &seeds));
        let res = gen_mat_dual(c.cgm()).unwrap();
        for h in res.h.rows() {
            for g in c.cgm().rows() {
                prop_assert!(dot(&r, h, g).is_zero());
            }
        }
        let d = dual_code(&c).unwrap();
        prop_assert_eq!(dual_code(&d).unwrap(), c.clone());
        prop_assert_eq!(c.dim_f() + d.dim_f(), l * r.degree());
        let rev = reverse_cgm(&res).unwrap();
        prop_assert!(is_divisor_basis(&rev).is_cgm());
        prop_assert_eq!(rev, d.reciprocal_code().cgm().clone());
        prop_assert!(3 * res.mult_count <= (l as u64).pow(3));
    }

    #[test]
    fn expansion_laws((ri, l, seeds) in small_code()) {
        let r = ring(ri);
        let c = Code::from_generators(&matrix(&r, l, &seeds));
        let e = expansion(&c);
        prop_assert_eq!(e.dim(), c.dim_f());
        for w in c.enumerate_codewords(BUDGET).unwrap() {
            prop_assert!(e.contains(&quotient_codes::amodule::expand_word(&r, &w)));
        }
        let fd = f_dual(&c);
        prop_assert_eq!(fd.dim(), l * r.degree() - c.dim_f());
        let d = dual_code(&c).unwrap();
        prop_assert_eq!(FCode::from_generators(&zeta(c.cgm())), f_dual(&d));
    }

    #[test]
    fn transpose_lemma(which in 0usize..5, seed in any::<u64>()) {
        let (q, f) = [(2, "x^4+1"), (3, "x^3+1"), (3, "x^3+2"), (5, "x^4+4"), (2, "x^5+1")][which];
        let r = QuotRing::parse(q, f).unwrap();
        let g = element(&r, seed);
        let xi = r.x_inverse().unwrap();
        let mut at_inv = r.zero();
        let mut pow = r.one();
        for &c in g.coeffs() {
            at_inv = &at_inv + &pow.scale(c);
            pow = r.mul(&pow, &xi);
        }
        let at_inv = r.reduce(&at_inv);
        prop_assert_eq!(m_of_g(&r, &g).transpose(), m_of_g(&r, &at_inv));
    }

    #[test]
    fn symmetric_multiplication_matrices(q in prop::sample::select(vec![3u64, 5, 7]), a in 0u32..7, seed in any::<u64>()) {
        let k = quotient_codes::FieldCtx::prime(q).unwrap();
        let f = Poly::new(&k, vec![k.from_int(-1), a % q as u32, 1]);
        let r = QuotRing::new(f).unwrap();
        let g = element(&r, seed);
        let mg = m_of_g(&r, &g);
        prop_assert_eq!(mg.transpose(), mg);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn oracle_agrees_on_larger_codes(ri in 0..RINGS.len(), seeds in prop::collection::vec(any::<u64>(), 3..=6)) {
        let r = ring(ri);
        let l = 3;
        prop_assume!(within(&r, l * r.degree(), 15));
        let c = Code::from_generators(&matrix(&r, l, &seeds));
        prop_assert_eq!(dual_code(&c).unwrap(), dual_oracle(&c, BUDGET).unwrap());
    }
}

#[test]
fn direct_products_of_self_dual_codes() {
    for (q, f) in [
        (2, "x^2"),
        (2, "x^2+1"),
        (3, "x^2"),
        (2, "x^4+1"),
        (5, "x^2+1"),
    ] {
        let r = QuotRing::parse(q, f).unwrap();
        let ones = enumerate_selfdual(&r, 1, BUDGET).unwrap();
        let twos = enumerate_selfdual(&r, 2, BUDGET).unwrap();
        let all: Vec<&Code> = ones.iter().chain(&twos).collect();
        for a in &all {
            for b in &all {
                let p = a.direct_product(b).unwrap();
                assert!(is_self_dual(&p).unwrap(), "{a:?} x {b:?} over {f}");
            }
        }
    }
}
