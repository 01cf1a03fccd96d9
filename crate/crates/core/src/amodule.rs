//! A-codes: codewords, generator matrices, bases of divisors and canonical
//! generator matrices (CGMs).
//!
//! A basis of divisors is computed as the Hermite echelon form over `F[x]` of
//! the lifted module `<G> + f·F[x]^l`: every column then carries a monic pivot
//! dividing `f`, and rows whose pivot is `f` itself vanish in `A` and are
//! dropped. Reducing the entries above each pivot modulo that pivot yields the
//! CGM, which is unique for the code, so code equality is CGM equality.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quotient::QuotRing;

/// A word of `A^l`.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeWord {
    ring: QuotRing,
    entries: Vec<Poly>,
}

impl fmt::Debug for CodeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join_entries(&self.entries, ", "))
    }
}

fn join_entries(entries: &[Poly], sep: &str) -> String {
    entries
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Position of the first nonzero entry, 0-based; `None` for the zero word.
pub fn leading_index(entries: &[Poly]) -> Option<usize> {
    entries.iter().position(|e| !e.is_zero())
}

impl CodeWord {
    pub fn new(ring: &QuotRing, entries: Vec<Poly>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition("codewords have length >= 1".into()));
        }
        if entries.iter().any(|e| e.field() != ring.field()) {
            return Err(Error::ContextMismatch);
        }
        Ok(CodeWord {
            ring: ring.clone(),
            entries: entries.iter().map(|e| ring.reduce(e)).collect(),
        })
    }

    /// Parses entries separated by `|`.
    pub fn parse(ring: &QuotRing, text: &str) -> Result<Self> {
        let entries = parse_row(ring, text)?;
        CodeWord::new(ring, entries)
    }

    pub fn ring(&self) -> &QuotRing {
        &self.ring
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// 0-based leading index; `None` plays the role of infinity for the zero word.
    pub fn leading_index(&self) -> Option<usize> {
        leading_index(&self.entries)
    }

    pub fn leading_coef(&self) -> Result<Poly> {
        self.leading_index()
            .map(|i| self.entries[i].clone())
            .ok_or(Error::UndefinedInput(
                "leading coefficient of the zero word",
            ))
    }

    /// `Σ u_i v_i` in `A`.
    pub fn dot(&self, other: &CodeWord) -> Result<Poly> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(dot(&self.ring, &self.entries, &other.entries))
    }
}

pub(crate) fn dot(ring: &QuotRing, a: &[Poly], b: &[Poly]) -> Poly {
    let sum = a
        .iter()
        .zip(b)
        .fold(ring.zero(), |acc, (x, y)| &acc + &(x * y));
    ring.reduce(&sum)
}

fn parse_row(ring: &QuotRing, text: &str) -> Result<Vec<Poly>> {
    text.split('|')
        .map(|s| {
            Poly::parse(ring.field(), s)
                .map(|p| ring.reduce(&p))
                .map_err(|e| Error::Precondition(e.to_string()))
        })
        .collect()
}

/// A `k × l` matrix over `A` whose rows generate a code. Entries are kept
/// reduced modulo `f`.
#[derive(Clone, PartialEq, Eq)]
pub struct CodeMatrix {
    ring: QuotRing,
    ncols: usize,
    rows: Vec<Vec<Poly>>,
}

impl fmt::Debug for CodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", join_entries(r, ", "))?;
        }
        write!(f, "]")
    }
}

impl CodeMatrix {
    pub fn new(ring: &QuotRing, ncols: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        if ncols == 0 {
            return Err(Error::Precondition("codes have length >= 1".into()));
        }
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
            if r.iter().any(|e| e.field() != ring.field()) {
                return Err(Error::ContextMismatch);
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| r.iter().map(|e| ring.reduce(e)).collect())
            .collect();
        Ok(CodeMatrix {
            ring: ring.clone(),
            ncols,
            rows,
        })
    }

    /// Rows in the text syntax, entries separated by `|`.
    pub fn parse_rows(ring: &QuotRing, rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<Poly>> = rows
            .iter()
            .map(|r| parse_row(ring, r))
            .collect::<Result<_>>()?;
        let ncols = parsed.first().map(|r| r.len()).unwrap_or(0);
        CodeMatrix::new(ring, ncols, parsed)
    }

    pub fn empty(ring: &QuotRing, ncols: usize) -> Self {
        CodeMatrix {
            ring: ring.clone(),
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn identity(ring: &QuotRing, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        CodeMatrix {
            ring: ring.clone(),
            ncols: n,
            rows,
        }
    }

    pub fn ring(&self) -> &QuotRing {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.rows[i].iter().all(Poly::is_zero)
    }

    pub fn without_zero_rows(&self) -> CodeMatrix {
        CodeMatrix {
            ring: self.ring.clone(),
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .filter(|r| r.iter().any(|e| !e.is_zero()))
                .cloned()
                .collect(),
        }
    }

    /// Reverses the order of both rows and columns.
    pub fn reversed(&self) -> CodeMatrix {
        let rows = self
            .rows
            .iter()
            .rev()
            .map(|r| r.iter().rev().cloned().collect())
            .collect();
        CodeMatrix {
            ring: self.ring.clone(),
            ncols: self.ncols,
            rows,
        }
    }

    /// Scales each nonzero row by a field unit so its leading coefficient is monic.
    pub fn monic_rows(&self) -> CodeMatrix {
        let k = self.ring.field();
        let rows = self
            .rows
            .iter()
            .map(|r| match leading_index(r) {
                Some(i) => {
                    let inv = k.inv(r[i].lc()).expect("nonzero");
                    r.iter().map(|e| e.scale(inv)).collect()
                }
                None => r.clone(),
            })
            .collect();
        CodeMatrix {
            ring: self.ring.clone(),
            ncols: self.ncols,
            rows,
        }
    }

    /// Aligned text rendering, one row per line, entries separated by ` | `.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.ncols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for r in &cells {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Pivot data of a basis of divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorBasisInfo {
    /// 0-based, strictly increasing.
    pub pivot_cols: Vec<usize>,
    /// Monic divisors of `f` (the leading coefficients).
    pub pivot_polys: Vec<Poly>,
    /// `r_i = deg(pivot_i)`.
    pub pivot_degs: Vec<usize>,
    /// `Σ (m − r_i)`.
    pub dim_f: usize,
}

impl DivisorBasisInfo {
    fn from_echelon(ring: &QuotRing, rows: &[Vec<Poly>]) -> Self {
        let m = ring.degree();
        let mut info = DivisorBasisInfo {
            pivot_cols: Vec::new(),
            pivot_polys: Vec::new(),
            pivot_degs: Vec::new(),
            dim_f: 0,
        };
        for r in rows {
            let j = leading_index(r).expect("echelon rows are nonzero");
            let d = r[j].degree().unwrap();
            info.pivot_cols.push(j);
            info.pivot_polys.push(r[j].clone());
            info.pivot_degs.push(d);
            info.dim_f += m - d;
        }
        info
    }
}

/// Outcome of checking whether the rows of a matrix form a basis of divisors,
/// condition by condition (rows are first scaled to be monic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorBasisCheck {
    /// No zero rows and strictly increasing leading indices.
    pub echelon: bool,
    /// Every leading coefficient divides `f`.
    pub pivots_divide_f: bool,
    /// `h_i·g^(i)` is an `A`-combination of the later rows, for every `i`.
    pub later_span: bool,
    /// `dim_F C = Σ (m − deg L_coef(g^(i)))`, with `dim_F C` computed independently.
    pub dimension: bool,
    /// Entries above each pivot have smaller degree than the pivot.
    pub reduced_above_pivots: bool,
}

impl DivisorBasisCheck {
    /// Conditions (echelon, divisibility, dimension).
    pub fn is_basis(&self) -> bool {
        self.echelon && self.pivots_divide_f && self.dimension
    }

    pub fn is_cgm(&self) -> bool {
        self.is_basis() && self.reduced_above_pivots
    }
}

/// Hermite echelon form of `<rows> + f·F[x]^l` over `F[x]`, restricted to the
/// rows whose pivot is a proper divisor of `f`. Entries stay reduced mod `f`:
/// the rows `f·e_t` for not-yet-processed columns `t` are implicitly present,
/// so reducing those columns mod `f` is a legal row operation.
fn echelon(ring: &QuotRing, rows: &[Vec<Poly>], l: usize, reduce_above: bool) -> Vec<Vec<Poly>> {
    let f = ring.modulus();
    let k = ring.field();
    let mut active: Vec<Vec<Poly>> = rows
        .iter()
        .map(|r| r.iter().map(|e| ring.reduce(e)).collect::<Vec<_>>())
        .filter(|r| r.iter().any(|e| !e.is_zero()))
        .collect();
    let mut out: Vec<Vec<Poly>> = Vec::new();
    for j in 0..l {
        let (mut cands, rest): (Vec<_>, Vec<_>) = active.into_iter().partition(|r| !r[j].is_zero());
        active = rest;
        let mut fe = vec![Poly::zero(k); l];
        fe[j] = f.clone();
        cands.push(fe);
        let pivot = loop {
            let idx = (0..cands.len())
                .min_by_key(|&i| cands[i][j].degree())
                .expect("at least one candidate");
            let piv = cands.swap_remove(idx);
            let mut others = Vec::new();
            for mut c in cands.drain(..) {
                let (quo, r) = c[j].divrem(&piv[j]).expect("pivot nonzero");
                c[j] = r;
                if !quo.is_zero() {
                    for t in j + 1..l {
                        c[t] = ring.reduce(&(&c[t] - &(&quo * &piv[t])));
                    }
                }
                if !c[j].is_zero() {
                    others.push(c);
                } else if c.iter().any(|e| !e.is_zero()) {
                    active.push(c);
                }
            }
            if others.is_empty() {
                break piv;
            }
            others.push(piv);
            cands = others;
        };
        if pivot[j] == *f {
            // no generator reaches column j first; this row is f·e_j, zero in A
            continue;
        }
        let inv = k.inv(pivot[j].lc()).expect("nonzero pivot");
        out.push(pivot.iter().map(|e| e.scale(inv)).collect());
    }
    if reduce_above {
        for i in 0..out.len() {
            let row_i = out[i].clone();
            let j = leading_index(&row_i).unwrap();
            for row_t in out.iter_mut().take(i) {
                let (quo, r) = row_t[j].divrem(&row_i[j]).expect("pivot nonzero");
                if quo.is_zero() {
                    continue;
                }
                row_t[j] = r;
                for c in j + 1..l {
                    row_t[c] = ring.reduce(&(&row_t[c] - &(&quo * &row_i[c])));
                }
            }
        }
    }
    out
}

/// Rows forming a basis of divisors of the code generated by `g`, with pivot data.
pub fn divisor_basis(g: &CodeMatrix) -> (CodeMatrix, DivisorBasisInfo) {
    let rows = echelon(&g.ring, &g.rows, g.ncols, false);
    let info = DivisorBasisInfo::from_echelon(&g.ring, &rows);
    (
        CodeMatrix {
            ring: g.ring.clone(),
            ncols: g.ncols,
            rows,
        },
        info,
    )
}

/// The canonical generator matrix of the code generated by `g`.
pub fn cgm(g: &CodeMatrix) -> CodeMatrix {
    CodeMatrix {
        ring: g.ring.clone(),
        ncols: g.ncols,
        rows: echelon(&g.ring, &g.rows, g.ncols, true),
    }
}

/// Reduces `word` against the rows of a basis of divisors, pivot by pivot.
/// Returns the coefficients `z_j` (with `deg z_j < m − r_j`) when the word
/// lies in the code, `None` otherwise.
fn reduce_against(ring: &QuotRing, basis: &[Vec<Poly>], word: &[Poly]) -> Option<Vec<Poly>> {
    let mut cur: Vec<Poly> = word.iter().map(|e| ring.reduce(e)).collect();
    let mut z = Vec::with_capacity(basis.len());
    let mut col = 0;
    for row in basis {
        let j = leading_index(row)?;
        if cur[col..j].iter().any(|e| !e.is_zero()) {
            return None;
        }
        let w = ring.divides_ideal(&row[j], &cur[j])?;
        if !w.is_zero() {
            for t in j..cur.len() {
                cur[t] = ring.reduce(&(&cur[t] - &(&w * &row[t])));
            }
        }
        debug_assert!(cur[j].is_zero());
        z.push(w);
        col = j + 1;
    }
    cur.iter().all(Poly::is_zero).then_some(z)
}

/// Checks conditions (echelon), (pivot | f), (later span) and (dimension) for
/// the rows of `g`, after scaling rows to be monic.
pub fn is_divisor_basis(g: &CodeMatrix) -> DivisorBasisCheck {
    let g = g.monic_rows();
    let ring = &g.ring;
    let f = ring.modulus();
    let m = ring.degree();
    let leads: Vec<Option<usize>> = g.rows.iter().map(|r| leading_index(r)).collect();
    let echelon_ok = leads.iter().all(Option::is_some) && leads.windows(2).all(|w| w[0] < w[1]);
    if !echelon_ok {
        return DivisorBasisCheck {
            echelon: false,
            pivots_divide_f: false,
            later_span: false,
            dimension: false,
            reduced_above_pivots: false,
        };
    }
    let pivots: Vec<(usize, &Poly)> = g
        .rows
        .iter()
        .zip(&leads)
        .map(|(r, l)| (l.unwrap(), &r[l.unwrap()]))
        .collect();
    let divides = pivots.iter().all(|(_, p)| p.divides(f));
    let later_span = divides
        && (0..g.rows.len()).rev().all(|i| {
            let h = ring.cofactor(pivots[i].1).expect("pivot divides f");
            let w: Vec<Poly> = g.rows[i].iter().map(|e| ring.mul(&h, e)).collect();
            reduce_against(ring, &g.rows[i + 1..], &w).is_some()
        });
    let claimed: usize = pivots.iter().map(|(_, p)| m - p.degree().unwrap()).sum();
    let (_, info) = divisor_basis(&g);
    let reduced = pivots
        .iter()
        .enumerate()
        .all(|(i, (j, p))| g.rows[..i].iter().all(|r| r[*j].deg_i() < p.deg_i()));
    DivisorBasisCheck {
        echelon: true,
        pivots_divide_f: divides,
        later_span,
        dimension: info.dim_f == claimed,
        reduced_above_pivots: reduced,
    }
}

/// An `A`-code, stored through its canonical generator matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Code {
    cgm: CodeMatrix,
    info: DivisorBasisInfo,
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code{:?}", self.cgm)
    }
}

impl Code {
    /// The code generated by the rows of `g` (any generator matrix).
    pub fn from_generators(g: &CodeMatrix) -> Code {
        let c = cgm(g);
        let info = DivisorBasisInfo::from_echelon(&c.ring, &c.rows);
        Code { cgm: c, info }
    }

    pub fn parse(ring: &QuotRing, rows: &[&str]) -> Result<Code> {
        Ok(Code::from_generators(&CodeMatrix::parse_rows(ring, rows)?))
    }

    pub fn zero(ring: &QuotRing, len: usize) -> Code {
        Code::from_generators(&CodeMatrix::empty(ring, len))
    }

    pub fn full(ring: &QuotRing, len: usize) -> Code {
        Code::from_generators(&CodeMatrix::identity(ring, len))
    }

    pub fn cgm(&self) -> &CodeMatrix {
        &self.cgm
    }

    pub fn info(&self) -> &DivisorBasisInfo {
        &self.info
    }

    pub fn ring(&self) -> &QuotRing {
        &self.cgm.ring
    }

    pub fn len(&self) -> usize {
        self.cgm.ncols
    }

    pub fn is_empty(&self) -> bool {
        self.cgm.ncols == 0
    }

    pub fn is_zero(&self) -> bool {
        self.cgm.rows.is_empty()
    }

    /// Number of rows of the CGM.
    pub fn rank(&self) -> usize {
        self.cgm.rows.len()
    }

    pub fn dim_f(&self) -> usize {
        self.info.dim_f
    }

    /// `q^dim_F`, if it fits.
    pub fn cardinality(&self) -> Option<u128> {
        (self.ring().q() as u128).checked_pow(self.dim_f() as u32)
    }

    /// Leading index of the code (0-based), `None` for the zero code.
    pub fn leading_index(&self) -> Option<usize> {
        self.info.pivot_cols.first().copied()
    }

    fn check_word(&self, word: &[Poly]) -> Result<()> {
        if word.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: word.len(),
            });
        }
        if word.iter().any(|e| e.field() != self.ring().field()) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    /// Membership by reduction against the CGM pivots; returns the
    /// coefficient witness `z` with `word = Σ z_j g^(j)` when it belongs.
    pub fn membership_test(&self, word: &[Poly]) -> Result<Option<Vec<Poly>>> {
        self.check_word(word)?;
        Ok(reduce_against(self.ring(), &self.cgm.rows, word))
    }

    pub fn contains(&self, word: &[Poly]) -> bool {
        matches!(self.membership_test(word), Ok(Some(_)))
    }

    pub fn contains_word(&self, word: &CodeWord) -> Result<bool> {
        if word.ring != *self.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(self.membership_test(&word.entries)?.is_some())
    }

    /// Equality with a ring-mismatch error instead of `false`.
    pub fn code_equal(&self, other: &Code) -> Result<bool> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self.cgm.rows == other.cgm.rows)
    }

    pub fn is_subcode_of(&self, other: &Code) -> bool {
        self.cgm.rows.iter().all(|r| other.contains(r))
    }

    fn map_generators(&self, ncols: usize, f: impl Fn(&[Poly]) -> Vec<Poly>) -> Code {
        let rows = self.cgm.rows.iter().map(|r| f(r)).collect();
        Code::from_generators(&CodeMatrix {
            ring: self.ring().clone(),
            ncols,
            rows,
        })
    }

    /// Drops the first coordinate of every codeword.
    pub fn puncture_first(&self) -> Result<Code> {
        if self.len() < 2 {
            return Err(Error::Precondition(
                "cannot puncture a length-1 code".into(),
            ));
        }
        Ok(self.map_generators(self.len() - 1, |r| r[1..].to_vec()))
    }

    /// `C^(2)`: the codewords whose leading index exceeds that of the code,
    /// generated by all CGM rows but the first.
    pub fn tail_subcode(&self) -> Code {
        let rows = self.cgm.rows.iter().skip(1).cloned().collect();
        Code::from_generators(&CodeMatrix {
            ring: self.ring().clone(),
            ncols: self.len(),
            rows,
        })
    }

    /// Reverses the coordinate order.
    pub fn reciprocal_code(&self) -> Code {
        self.map_generators(self.len(), |r| r.iter().rev().cloned().collect())
    }

    /// New coordinate `j` is old coordinate `perm[j]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Result<Code> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len()
            || perm
                .iter()
                .any(|&p| p >= seen.len() || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Precondition(
                "not a permutation of the coordinates".into(),
            ));
        }
        Ok(self.map_generators(self.len(), |r| perm.iter().map(|&p| r[p].clone()).collect()))
    }

    /// `C1 × C2`, generated by the block-diagonal matrix of the two CGMs.
    pub fn direct_product(&self, other: &Code) -> Result<Code> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch);
        }
        let (l1, l2) = (self.len(), other.len());
        let zero = self.ring().zero();
        let mut rows: Vec<Vec<Poly>> = self
            .cgm
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .cloned()
                    .chain(std::iter::repeat_n(zero.clone(), l2))
                    .collect()
            })
            .collect();
        rows.extend(other.cgm.rows.iter().map(|r| {
            std::iter::repeat_n(zero.clone(), l1)
                .chain(r.iter().cloned())
                .collect()
        }));
        Ok(Code::from_generators(&CodeMatrix {
            ring: self.ring().clone(),
            ncols: l1 + l2,
            rows,
        }))
    }

    /// The `F`-basis `{x^s·g^(j) : s < m − r_j}` as coefficient vectors of
    /// length `l·m` (coordinate-major, ascending powers).
    pub fn f_basis(&self) -> Vec<Vec<u32>> {
        let ring = self.ring();
        let m = ring.degree();
        let mut out = Vec::with_capacity(self.dim_f());
        for (row, &r) in self.cgm.rows.iter().zip(&self.info.pivot_degs) {
            let mut cur: Vec<Poly> = row.clone();
            for s in 0..m - r {
                if s > 0 {
                    cur = cur.iter().map(|e| ring.reduce(&e.shift(1))).collect();
                }
                out.push(expand_word(ring, &cur));
            }
        }
        out
    }

    /// All codewords, as sorted packed keys (see [`word_key`]).
    pub fn codeword_keys(&self, budget: u128) -> Result<Vec<u64>> {
        let ring = self.ring();
        let n = self.len() * ring.degree();
        check_key_space(ring.q(), n)?;
        let count = self.cardinality().unwrap_or(u128::MAX);
        if count > budget {
            return Err(Error::BudgetExceeded {
                needed: count,
                budget,
            });
        }
        let basis = self.f_basis();
        let mut keys = span_keys(ring, &basis, n);
        keys.sort_unstable();
        debug_assert!(keys.windows(2).all(|w| w[0] != w[1]));
        Ok(keys)
    }

    /// All codewords as words of `A^l`.
    pub fn enumerate_codewords(&self, budget: u128) -> Result<Vec<Vec<Poly>>> {
        let ring = self.ring();
        Ok(self
            .codeword_keys(budget)?
            .into_iter()
            .map(|k| unpack_word(ring, k, self.len()))
            .collect())
    }
}

/// Coefficient vector of a word (coordinate-major, ascending powers, length `l·m`).
pub fn expand_word(ring: &QuotRing, word: &[Poly]) -> Vec<u32> {
    let m = ring.degree();
    let mut v = Vec::with_capacity(word.len() * m);
    for e in word {
        v.extend((0..m).map(|s| e.coeff(s)));
    }
    v
}

pub(crate) fn check_key_space(q: u64, n: usize) -> Result<()> {
    let bits = (q as f64).log2() * n as f64;
    if bits >= 63.0 {
        return Err(Error::BudgetExceeded {
            needed: (q as u128).saturating_pow(n as u32),
            budget: 1 << 63,
        });
    }
    Ok(())
}

/// Packs a coefficient vector into `Σ v_i q^i`.
pub fn pack_vector(q: u64, v: &[u32]) -> u64 {
    v.iter().rev().fold(0, |acc, &c| acc * q + c as u64)
}

/// Packed key of a word of `A^l`: `Σ_i Σ_s coeff_s(u_i)·q^(i·m + s)`.
pub fn word_key(ring: &QuotRing, word: &[Poly]) -> u64 {
    pack_vector(ring.q(), &expand_word(ring, word))
}

pub fn unpack_word(ring: &QuotRing, mut key: u64, len: usize) -> Vec<Poly> {
    let m = ring.degree();
    let qm = ring.q().pow(m as u32);
    (0..len)
        .map(|_| {
            let e = Poly::from_index(ring.field(), key % qm, m);
            key /= qm;
            e
        })
        .collect()
}

/// Every `F`-linear combination of `basis`, as packed keys (unsorted).
fn span_keys(ring: &QuotRing, basis: &[Vec<u32>], n: usize) -> Vec<u64> {
    let k = ring.field();
    let q = k.size();
    let mut coef = vec![0u32; basis.len()];
    let mut cur = vec![0u32; n];
    let mut out = Vec::with_capacity((q as usize).pow(basis.len() as u32));
    loop {
        out.push(pack_vector(q as u64, &cur));
        // odometer step: bump the first coefficient that does not wrap
        let mut t = 0;
        loop {
            if t == basis.len() {
                return out;
            }
            let old = coef[t];
            let new = if old + 1 == q { 0 } else { old + 1 };
            coef[t] = new;
            let delta = k.sub(new, old);
            for (c, &b) in cur.iter_mut().zip(&basis[t]) {
                if b != 0 {
                    *c = k.add(*c, k.mul(delta, b));
                }
            }
            if new != 0 {
                break;
            }
            t += 1;
        }
    }
}

/// Every code of length `l` over `ring`, each exactly once, in a fixed order.
///
/// Iterates over CGM-shaped matrices: pivot column sets, monic proper divisors
/// of `f` as pivots, entries right of a pivot bounded in degree by the pivot of
/// their column (or by `m` in non-pivot columns), keeping only the candidates
/// whose rows form a basis of divisors.
pub fn enumerate_codes(ring: &QuotRing, l: usize, budget: u128) -> Result<Vec<Code>> {
    let m = ring.degree();
    let q = ring.q() as u128;
    let f = ring.modulus();
    let divisors: Vec<Poly> = f
        .divisors(budget.min(1 << 20) as usize)?
        .into_iter()
        .filter(|d| d != f)
        .collect();

    // count candidates first
    let mut total: u128 = 0;
    for mask in 0u32..(1 << l) {
        let cols: Vec<usize> = (0..l).filter(|j| mask >> j & 1 == 1).collect();
        total = total.saturating_add(count_shape(&cols, l, m, q, &divisors));
        if total > budget {
            return Err(Error::BudgetExceeded {
                needed: total,
                budget,
            });
        }
    }

    let mut out = Vec::new();
    for mask in 0u32..(1 << l) {
        let cols: Vec<usize> = (0..l).filter(|j| mask >> j & 1 == 1).collect();
        let k = cols.len();
        // iterate over pivot assignments
        let mut piv_idx = vec![0usize; k];
        loop {
            let pivots: Vec<&Poly> = piv_idx.iter().map(|&i| &divisors[i]).collect();
            // free positions: (row, col, degree bound)
            let mut slots = Vec::new();
            for (i, &ji) in cols.iter().enumerate() {
                for c in ji + 1..l {
                    let bound = match cols.iter().position(|&x| x == c) {
                        Some(t) => pivots[t].degree().unwrap(),
                        None => m,
                    };
                    if bound > 0 {
                        slots.push((i, c, bound));
                    }
                }
            }
            let mut slot_idx = vec![0u64; slots.len()];
            let limits: Vec<u64> = slots.iter().map(|s| (q as u64).pow(s.2 as u32)).collect();
            loop {
                let mut rows = vec![vec![ring.zero(); l]; k];
                for (i, &ji) in cols.iter().enumerate() {
                    rows[i][ji] = pivots[i].clone();
                }
                for (s, &(i, c, bound)) in slots.iter().enumerate() {
                    rows[i][c] = Poly::from_index(ring.field(), slot_idx[s], bound);
                }
                if rows_form_divisor_basis(ring, &rows) {
                    let g = CodeMatrix {
                        ring: ring.clone(),
                        ncols: l,
                        rows,
                    };
                    let info = DivisorBasisInfo::from_echelon(ring, &g.rows);
                    out.push(Code { cgm: g, info });
                }
                if !odometer(&mut slot_idx, &limits) {
                    break;
                }
            }
            let plimits = vec![divisors.len() as u64; k];
            let mut pi: Vec<u64> = piv_idx.iter().map(|&x| x as u64).collect();
            if !odometer(&mut pi, &plimits) {
                break;
            }
            piv_idx = pi.into_iter().map(|x| x as usize).collect();
        }
    }
    Ok(out)
}

fn count_shape(cols: &[usize], l: usize, m: usize, q: u128, divisors: &[Poly]) -> u128 {
    // column cols[t] has t entries above its pivot, each below the pivot degree
    let mut total: u128 = 1;
    for t in 0..cols.len() {
        let s = divisors.iter().fold(0u128, |acc, d| {
            acc.saturating_add(q.saturating_pow((d.degree().unwrap() * t) as u32))
        });
        total = total.saturating_mul(s);
    }
    for &ji in cols {
        let free = (ji + 1..l).filter(|c| !cols.contains(c)).count();
        total = total.saturating_mul(q.saturating_pow((free * m) as u32));
    }
    total
}

fn odometer(idx: &mut [u64], limits: &[u64]) -> bool {
    for (i, l) in idx.iter_mut().zip(limits) {
        *i += 1;
        if *i < *l {
            return true;
        }
        *i = 0;
    }
    false
}

/// Fast validity test for CGM-shaped candidates (echelon and pivots dividing
/// `f` hold by construction): checks that `h_i·g^(i)` reduces to zero against
/// the later rows, bottom-up.
fn rows_form_divisor_basis(ring: &QuotRing, rows: &[Vec<Poly>]) -> bool {
    (0..rows.len()).rev().all(|i| {
        let j = leading_index(&rows[i]).unwrap();
        let h = ring.cofactor(&rows[i][j]).expect("pivot divides f");
        let w: Vec<Poly> = rows[i].iter().map(|e| ring.mul(&h, e)).collect();
        reduce_against(ring, &rows[i + 1..], &w).is_some()
    })
}

/// All words of `A^l` as polynomial vectors, for oracle-style scans.
pub fn all_words(ring: &QuotRing, l: usize) -> impl Iterator<Item = Vec<Poly>> + '_ {
    let m = ring.degree();
    let per = ring.q().pow(m as u32);
    let total = per.pow(l as u32);
    (0..total).map(move |key| unpack_word(ring, key, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ring(q: u64, f: &str) -> QuotRing {
        QuotRing::parse(q, f).unwrap()
    }

    fn mat(r: &QuotRing, rows: &[&str]) -> CodeMatrix {
        CodeMatrix::parse_rows(r, rows).unwrap()
    }

    /// Oracle: the set of all A-combinations of the generator rows, by brute force.
    fn brute_span(r: &QuotRing, gens: &[Vec<Poly>], l: usize) -> BTreeSet<u64> {
        let mut set: BTreeSet<u64> = BTreeSet::new();
        set.insert(word_key(r, &vec![r.zero(); l]));
        for g in gens {
            let current: Vec<u64> = set.iter().copied().collect();
            for key in current {
                let base = unpack_word(r, key, l);
                for a in r.elements() {
                    let w: Vec<Poly> = base
                        .iter()
                        .zip(g)
                        .map(|(b, e)| r.reduce(&(b + &r.mul(&a, e))))
                        .collect();
                    set.insert(word_key(r, &w));
                }
            }
        }
        set
    }

    #[test]
    fn leading_data() {
        let r = ring(2, "x^3+x^2+x");
        let w = CodeWord::parse(&r, "0|0|x+1").unwrap();
        assert_eq!(w.leading_index(), Some(2));
        let w = CodeWord::parse(&r, "x^2|0|x^2+1").unwrap();
        assert_eq!(w.leading_index(), Some(0));
        let z = CodeWord::parse(&r, "0|0|0").unwrap();
        assert_eq!(z.leading_index(), None);
        assert!(z.leading_coef().is_err());
        assert_eq!(
            CodeWord::parse(&r, "0|x^2|1")
                .unwrap()
                .leading_coef()
                .unwrap()
                .to_string(),
            "x^2"
        );
        let r5 = ring(5, "x^3+1");
        assert_eq!(
            CodeWord::parse(&r5, "x|0|4")
                .unwrap()
                .leading_coef()
                .unwrap()
                .to_string(),
            "x"
        );
        assert_eq!(
            CodeWord::parse(&r, "0|0|x^2+x+1")
                .unwrap()
                .leading_coef()
                .unwrap()
                .to_string(),
            "x^2+x+1"
        );
    }

    #[test]
    fn first_example_cgm() {
        let r = ring(2, "x^3+x^2+x");
        let g = mat(&r, &["x^2|0|x^2+1"]);
        let c = cgm(&g);
        assert_eq!(c, mat(&r, &["x|0|1", "0|0|x^2+x+1"]));
        let code = Code::from_generators(&g);
        assert_eq!(code.dim_f(), 3);
        assert_eq!(code.cardinality(), Some(8));
        assert_eq!(code.codeword_keys(1000).unwrap().len(), 8);
        assert!(!is_divisor_basis(&g).is_basis());
        assert!(!is_divisor_basis(&g).pivots_divide_f);
        assert!(is_divisor_basis(&c).is_cgm());
        assert_eq!(code, Code::parse(&r, &["x|0|1"]).unwrap());
        assert!(code.contains(&mat(&r, &["x|0|1"]).rows[0]));
        assert!(!code.contains(&mat(&r, &["1|0|0"]).rows[0]));
    }

    #[test]
    fn counterexample_matrix_is_canonical() {
        let r = ring(2, "x^5+x^2");
        let g = mat(&r, &["x|x|0", "0|x^2|1", "0|0|x^3+1"]);
        let chk = is_divisor_basis(&g);
        assert!(chk.is_cgm() && chk.later_span);
        assert_eq!(cgm(&g), g);
        let (basis, info) = divisor_basis(&g);
        assert!(is_divisor_basis(&basis).is_basis());
        assert_eq!(info.pivot_degs, vec![1, 2, 3]);
        assert_eq!(info.dim_f, 9);
        let code = Code::from_generators(&g);
        assert_eq!(code.codeword_keys(1 << 12).unwrap().len(), 512);
        let oracle = brute_span(&r, g.rows(), 3);
        assert_eq!(oracle.len(), 512);
        assert_eq!(
            code.codeword_keys(1 << 12).unwrap(),
            oracle.into_iter().collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_and_empty() {
        let r = ring(2, "x^3+x^2+x");
        let z = Code::zero(&r, 3);
        assert!(z.is_zero());
        assert_eq!(z.dim_f(), 0);
        assert_eq!(z.cardinality(), Some(1));
        assert_eq!(z.codeword_keys(10).unwrap(), vec![0]);
        assert!(is_divisor_basis(&CodeMatrix::empty(&r, 3)).is_cgm());
        let zero_rows = mat(&r, &["0|0|0", "0|0|0"]);
        assert!(Code::from_generators(&zero_rows).is_zero());
        assert_eq!(Code::full(&r, 2).dim_f(), 6);
    }

    #[test]
    fn operations() {
        let r = ring(2, "x^5+x^2");
        let c = Code::parse(&r, &["x|x|0", "0|x^2|1", "0|0|x^3+1"]).unwrap();
        let punct = c.tail_subcode().puncture_first().unwrap();
        assert_eq!(punct, Code::parse(&r, &["x^2|1", "0|x^3+1"]).unwrap());
        assert_eq!(c.reciprocal_code().reciprocal_code(), c);
        assert_eq!(c.permute_cols(&[0, 1, 2]).unwrap(), c);
        assert!(c.permute_cols(&[0, 0, 1]).is_err());
        let p = c.permute_cols(&[2, 0, 1]).unwrap();
        assert_eq!(p.dim_f(), c.dim_f());
        assert!(Code::full(&r, 1).puncture_first().is_err());

        let one = Code::parse(&r, &["x"]).unwrap();
        let zero = Code::zero(&r, 1);
        let prod = one.direct_product(&zero).unwrap();
        assert_eq!(prod.cgm(), &mat(&r, &["x|0"]));
        let other = Code::parse(&r, &["x^3+1"]).unwrap();
        let prod = one.direct_product(&other).unwrap();
        assert_eq!(prod.cgm(), &mat(&r, &["x|0", "0|x^3+1"]));
        let r2 = ring(3, "x^5+x^2");
        assert_eq!(
            one.direct_product(&Code::zero(&r2, 1)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn membership_witness() {
        let r = ring(2, "x^5+x^2");
        let c = Code::parse(&r, &["x|x|0", "0|x^2|1", "0|0|x^3+1"]).unwrap();
        for key in c.codeword_keys(1 << 12).unwrap() {
            let w = unpack_word(&r, key, 3);
            let z = c.membership_test(&w).unwrap().expect("codeword");
            for (zj, dj) in z.iter().zip(&c.info().pivot_degs) {
                assert!(zj.deg_i() < (5 - dj) as isize);
            }
        }
        assert_eq!(
            c.membership_test(&[r.one()]),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn length_one_codes() {
        let r = ring(2, "x^3+x^2+x");
        let codes = enumerate_codes(&r, 1, 1 << 20).unwrap();
        assert_eq!(codes.len(), 4);
        // oracle: distinct ideals of A, found by spanning every element
        let ideals: BTreeSet<Vec<u64>> = r
            .elements()
            .map(|a| brute_span(&r, &[vec![a]], 1).into_iter().collect())
            .collect();
        assert_eq!(ideals.len(), 4);
    }

    #[test]
    fn enumerated_codes_are_distinct_canonical_and_complete() {
        for (q, f) in [(2, "x^2"), (2, "x^2+x"), (3, "x"), (2, "x^3+1"), (3, "x^2")] {
            let r = ring(q, f);
            let codes = enumerate_codes(&r, 2, 1 << 20).unwrap();
            let mut seen = BTreeSet::new();
            for c in &codes {
                assert!(is_divisor_basis(c.cgm()).is_cgm());
                assert_eq!(cgm(c.cgm()), *c.cgm());
                assert!(seen.insert(c.codeword_keys(1 << 16).unwrap()));
            }
            // oracle: every submodule is generated by at most 2 words; span all pairs
            let words: Vec<Vec<Poly>> = all_words(&r, 2).collect();
            let mut subs = BTreeSet::new();
            for a in &words {
                for b in &words {
                    let s: Vec<u64> = brute_span(&r, &[a.clone(), b.clone()], 2)
                        .into_iter()
                        .collect();
                    subs.insert(s);
                }
            }
            assert_eq!(subs, seen, "f = {f}");
        }
    }

    #[test]
    fn cgm_unique_over_generator_sets() {
        // every pair of words generating the same code yields the same CGM
        let r = ring(2, "x^2+x");
        let words: Vec<Vec<Poly>> = all_words(&r, 2).collect();
        let mut by_set: std::collections::BTreeMap<Vec<u64>, CodeMatrix> = Default::default();
        for a in &words {
            for b in &words {
                let g = CodeMatrix::new(&r, 2, vec![a.clone(), b.clone()]).unwrap();
                let set: Vec<u64> = brute_span(&r, g.rows(), 2).into_iter().collect();
                let c = cgm(&g);
                let prev = by_set.entry(set).or_insert_with(|| c.clone());
                assert_eq!(*prev, c);
            }
        }
    }

    #[test]
    fn divisor_basis_conditions_agree() {
        let r = ring(2, "x^4+x^2");
        for c in enumerate_codes(&r, 2, 1 << 20).unwrap() {
            let (b, _) = divisor_basis(c.cgm());
            let chk = is_divisor_basis(&b);
            assert!(chk.is_basis() && chk.later_span);
        }
        // random non-bases: the two variants of the third condition agree
        let words: Vec<Vec<Poly>> = all_words(&r, 2).step_by(7).collect();
        for a in &words {
            for b in words.iter().step_by(3) {
                let g = CodeMatrix::new(&r, 2, vec![a.clone(), b.clone()])
                    .unwrap()
                    .monic_rows();
                let chk = is_divisor_basis(&g);
                if chk.echelon && chk.pivots_divide_f {
                    assert_eq!(chk.later_span, chk.dimension, "{g:?}");
                }
            }
        }
    }

    #[test]
    fn text_rendering() {
        let r = ring(2, "x^5+x^2");
        let g = mat(&r, &["x^4+x|0|0", "x^3+1|x^3+1|0", "1|1|x^2"]);
        let t = g.to_text();
        let back: Vec<&str> = t.lines().collect();
        assert_eq!(CodeMatrix::parse_rows(&r, &back).unwrap(), g);
        assert_eq!(t.lines().next().unwrap(), "x^4+x | 0     | 0");
    }
}
