//! Oracle cross-checks for a single input code.

use std::collections::BTreeSet;

use quotient_codes::amodule::{all_words, is_divisor_basis, word_key};
use quotient_codes::dual::dual_oracle;
use quotient_codes::fexpand::{expansion, f_dual, fdual_always_acode, is_acode, zeta};
use quotient_codes::selfdual::{
    classify_length2, is_self_dual, is_self_reciprocal_dual, selfdual_char2_characterization,
    selfdual_class3_predicate, selfdual_length2, selfdual_onegen_characterization, srd_length2,
    Length2Class,
};
use quotient_codes::{dual_code, gen_mat_dual, reverse_cgm, Code, CodeMatrix, FCode, Poly};
use serde_json::{json, Value};

/// Largest search space any single check enumerates.
pub const VERIFY_BUDGET: u128 = 1 << 20;

pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

pub struct Check {
    pub name: &'static str,
    pub status: Status,
}

impl Check {
    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail(_))
    }

    pub fn line(&self) -> String {
        match &self.status {
            Status::Pass => format!("ok    {}", self.name),
            Status::Fail(d) => format!("FAIL  {}: {d}", self.name),
            Status::Skip(d) => format!("skip  {}: {d}", self.name),
        }
    }

    pub fn json(&self) -> Value {
        let (status, detail) = match &self.status {
            Status::Pass => ("pass", None),
            Status::Fail(d) => ("fail", Some(d)),
            Status::Skip(d) => ("skip", Some(d)),
        };
        json!({ "name": self.name, "status": status, "detail": detail })
    }
}

type Outcome = Result<Status, quotient_codes::Error>;

fn expect(cond: bool, detail: impl FnOnce() -> String) -> Status {
    if cond {
        Status::Pass
    } else {
        Status::Fail(detail())
    }
}

fn space(q: u64, digits: usize) -> u128 {
    (q as u128).saturating_pow(digits as u32)
}

fn brute_span(g: &CodeMatrix) -> BTreeSet<u64> {
    let r = g.ring();
    all_words(r, g.nrows())
        .map(|coeffs| {
            let word: Vec<Poly> = (0..g.ncols())
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

pub fn run(g: &CodeMatrix) -> Vec<Check> {
    let r = g.ring();
    let (q, m, l) = (r.q(), r.degree(), g.ncols());
    let c = Code::from_generators(g);
    let mut checks = Vec::new();
    let mut add = |name: &'static str, outcome: Outcome| {
        let status = outcome.unwrap_or_else(|e| Status::Fail(e.to_string()));
        checks.push(Check { name, status });
    };

    add(
        "cgm certificate",
        Ok(expect(is_divisor_basis(c.cgm()).is_cgm(), || {
            "CGM conditions fail".into()
        })),
    );
    add(
        "input rows are codewords",
        Ok(expect(g.rows().iter().all(|row| c.contains(row)), || {
            "a row is not in the code".into()
        })),
    );
    add("codeword set vs brute-force span", {
        let n = space(q, m * g.nrows());
        if n > VERIFY_BUDGET {
            Ok(Status::Skip(format!("{n} combinations exceed the budget")))
        } else {
            let span: Vec<u64> = brute_span(g).into_iter().collect();
            c.codeword_keys(VERIFY_BUDGET).map(|keys| {
                expect(
                    keys == span && span.len() as u128 == space(q, c.dim_f()),
                    || {
                        format!(
                            "{} codewords by span, {} from the CGM",
                            span.len(),
                            keys.len()
                        )
                    },
                )
            })
        }
    });

    let res = match gen_mat_dual(c.cgm()) {
        Ok(res) => res,
        Err(e) => {
            add("dual construction", Err(e));
            return checks;
        }
    };
    add("dual rows orthogonal", {
        let ok = res.h.rows().iter().all(|h| {
            c.cgm().rows().iter().all(|row| {
                let s = h
                    .iter()
                    .zip(row)
                    .fold(r.zero(), |a, (x, y)| &a + &r.mul(x, y));
                r.reduce(&s).is_zero()
            })
        });
        Ok(expect(ok, || "a dual row is not orthogonal".into()))
    });
    let d = Code::from_generators(&res.h);
    add("dual vs oracle", {
        let n = space(q, l * m);
        if n > VERIFY_BUDGET {
            Ok(Status::Skip(format!("{n} words exceed the budget")))
        } else {
            dual_oracle(&c, VERIFY_BUDGET).map(|o| expect(o == d, || "oracle dual differs".into()))
        }
    });
    add(
        "double dual",
        dual_code(&d).map(|dd| expect(dd == c, || "dual of dual differs".into())),
    );
    add(
        "dimension sum",
        Ok(expect(c.dim_f() + d.dim_f() == l * m, || {
            format!("{} + {} != {}", c.dim_f(), d.dim_f(), l * m)
        })),
    );
    add(
        "reverse CGM",
        reverse_cgm(&res).map(|rev| {
            expect(
                is_divisor_basis(&rev).is_cgm() && &rev == d.reciprocal_code().cgm(),
                || "reversed dual is not the CGM of the reciprocal dual".into(),
            )
        }),
    );
    add(
        "expansion dimension",
        Ok(expect(expansion(&c).dim() == c.dim_f(), || {
            "dim mismatch".into()
        })),
    );
    let fd = f_dual(&c);
    add(
        "F-dual rank",
        Ok(expect(fd.dim() == l * m - c.dim_f(), || {
            format!("rank {}", fd.dim())
        })),
    );
    add(
        "zeta spans the F-dual of the dual",
        Ok(expect(
            FCode::from_generators(&zeta(c.cgm())) == f_dual(&d),
            || "row spaces differ".into(),
        )),
    );
    if fdual_always_acode(r) {
        add(
            "F-dual is an A-code",
            is_acode(&fd, r, l).map(|b| expect(b, || "not A-invariant".into())),
        );
    }

    let sd = is_self_dual(&c);
    let srd = is_self_reciprocal_dual(&c);
    let (sd, srd) = match (sd, srd) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            add("self-duality", Err(e));
            return checks;
        }
    };
    if c.rank() == 1 {
        add(
            "one-generator self-dual forms",
            selfdual_onegen_characterization(&c).map(|v| {
                expect(v.self_dual == sd && v.self_reciprocal_dual == srd, || {
                    format!(
                        "closed form ({}, {}) vs general ({sd}, {srd})",
                        v.self_dual, v.self_reciprocal_dual
                    )
                })
            }),
        );
    }
    if l == 2 && !c.is_zero() {
        match classify_length2(&c) {
            Err(e) => add("length-2 class", Err(e)),
            Ok(cls) => {
                add(
                    "length-2 self-dual form",
                    Ok(expect(selfdual_length2(r, &cls) == sd, || {
                        format!("general says {sd}")
                    })),
                );
                add(
                    "length-2 reciprocal-dual form",
                    Ok(expect(srd_length2(r, &cls) == srd, || {
                        format!("general says {srd}")
                    })),
                );
                if let Length2Class::III { g1, g2, g3 } = &cls {
                    add(
                        "class III condition",
                        Ok(expect(
                            selfdual_class3_predicate(r, g1, g2, g3) == sd,
                            || format!("general says {sd}"),
                        )),
                    );
                    if r.characteristic() == 2 {
                        add(
                            "characteristic-2 form",
                            selfdual_char2_characterization(r, g1, g2, g3)
                                .map(|b| expect(b == sd, || format!("general says {sd}"))),
                        );
                    }
                }
            }
        }
    }
    checks
}
