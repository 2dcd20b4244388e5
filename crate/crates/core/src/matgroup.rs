//! Exact matrices over base and quotient rings, elementary-matrix words,
//! factorization of determinant-one matrices into elementary factors, and
//! brute-force closure search for the GE property.
//!
//! Words act as left multiplications (row operations): the matrix of a word
//! is the left-to-right product of its factors Id + t*e_ij.

use std::collections::{BTreeSet, VecDeque};

use crate::conditions::usc_pivot_coeffs;
use crate::error::{Error, Result};
use crate::exactring::{Ideal, QuotRing, RingElem};

/// An exact matrix with canonical entries. The ring tag is a quotient ring;
/// a zero modulus means the base ring itself.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RMatrix {
    ring: QuotRing,
    n_rows: usize,
    n_cols: usize,
    entries: Vec<RingElem>,
}

impl RMatrix {
    pub fn new(ring: QuotRing, n_rows: usize, n_cols: usize, entries: Vec<RingElem>) -> Result<Self> {
        if entries.len() != n_rows * n_cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", n_rows * n_cols),
                got: format!("{}", entries.len()),
            });
        }
        let entries = entries.iter().map(|e| ring.reduce(e)).collect();
        Ok(RMatrix {
            ring,
            n_rows,
            n_cols,
            entries,
        })
    }

    pub fn from_rows(ring: QuotRing, rows: Vec<Vec<RingElem>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != n_cols {
                return Err(Error::ShapeMismatch {
                    expected: format!("{n_cols} columns"),
                    got: format!("{}", r.len()),
                });
            }
        }
        RMatrix::new(ring, n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from signed integers (integer rings only).
    pub fn from_int_rows(ring: QuotRing, rows: &[&[i64]]) -> Result<Self> {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|v| ring.base().from_i64(*v)).collect())
            .collect();
        RMatrix::from_rows(ring, converted)
    }

    pub fn from_fn(
        ring: QuotRing,
        n_rows: usize,
        n_cols: usize,
        f: impl Fn(usize, usize) -> RingElem,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for r in 0..n_rows {
            for c in 0..n_cols {
                entries.push(f(r, c));
            }
        }
        RMatrix::new(ring, n_rows, n_cols, entries)
    }

    pub fn identity(ring: QuotRing, n: usize) -> Self {
        let one = ring.one();
        let zero = ring.zero();
        RMatrix::from_fn(ring.clone(), n, n, |r, c| {
            if r == c {
                one.clone()
            } else {
                zero.clone()
            }
        })
        .unwrap()
    }

    /// The standard alternating form [[0, Id_k], [-Id_k, 0]].
    pub fn omega(ring: QuotRing, k: usize) -> Self {
        let one = ring.one();
        let m_one = ring.neg(&one);
        let zero = ring.zero();
        RMatrix::from_fn(ring.clone(), 2 * k, 2 * k, |r, c| {
            if c == r + k {
                one.clone()
            } else if r == c + k {
                m_one.clone()
            } else {
                zero.clone()
            }
        })
        .unwrap()
    }

    pub fn ring(&self) -> &QuotRing {
        &self.ring
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn at(&self, r: usize, c: usize) -> &RingElem {
        &self.entries[r * self.n_cols + c]
    }

    pub fn row(&self, r: usize) -> &[RingElem] {
        &self.entries[r * self.n_cols..(r + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RingElem]> {
        (0..self.n_rows).map(|r| self.row(r))
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn is_identity(&self) -> bool {
        let one = self.ring.one();
        let n = self.n_rows;
        self.is_square()
            && (0..n).all(|r| {
                (0..n).all(|c| {
                    if r == c {
                        *self.at(r, c) == one
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.n_cols != other.n_rows {
            return Err(Error::ShapeMismatch {
                expected: format!("{} rows", self.n_cols),
                got: format!("{}", other.n_rows),
            });
        }
        let mut entries = Vec::with_capacity(self.n_rows * other.n_cols);
        for r in 0..self.n_rows {
            for c in 0..other.n_cols {
                let mut acc = self.ring.zero();
                for m in 0..self.n_cols {
                    acc = acc.add(&self.at(r, m).mul(other.at(m, c)));
                }
                entries.push(self.ring.reduce(&acc));
            }
        }
        RMatrix::new(self.ring.clone(), self.n_rows, other.n_cols, entries)
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.ring.clone(), self.n_cols, self.n_rows, |r, c| {
            self.at(c, r).clone()
        })
        .unwrap()
    }

    /// Entrywise negation.
    pub fn neg(&self) -> RMatrix {
        RMatrix::from_fn(self.ring.clone(), self.n_rows, self.n_cols, |r, c| {
            self.ring.neg(self.at(r, c))
        })
        .unwrap()
    }

    /// Reduction map to the quotient by a further ideal of the same base.
    pub fn reduce_mod(&self, ideal: &Ideal) -> Result<RMatrix> {
        if ideal.ring() != self.ring.base() {
            return Err(Error::MixedRings);
        }
        let q = QuotRing::new(ideal.clone());
        RMatrix::new(q, self.n_rows, self.n_cols, self.entries.clone())
    }

    /// The matrix of canonical representatives over the base ring.
    pub fn lift_canonical(&self) -> RMatrix {
        let base = QuotRing::base_ring(self.ring.base());
        RMatrix::new(base, self.n_rows, self.n_cols, self.entries.clone()).unwrap()
    }

    /// Exact determinant: cofactor expansion for n <= 4, fraction-free
    /// elimination above. In quotient rings it is computed on the canonical
    /// representatives and then reduced.
    pub fn det(&self) -> Result<RingElem> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            });
        }
        let n = self.n_rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let base = self.ring.base();
        let reps: Vec<RingElem> = self.entries.clone();
        let d = if n <= 4 {
            det_cofactor(&reps, n)
        } else {
            det_bareiss(reps, n, base)
        };
        Ok(self.ring.reduce(&d))
    }

    /// True iff M^T * Omega * M = Omega exactly.
    pub fn is_symplectic(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            });
        }
        if !self.n_rows.is_multiple_of(2) {
            return Err(Error::OddDimension { dim: self.n_rows });
        }
        let k = self.n_rows / 2;
        let omega = RMatrix::omega(self.ring.clone(), k);
        let lhs = self.transpose().mul(&omega)?.mul(self)?;
        Ok(lhs == omega)
    }

    /// Inverse of a matrix whose determinant is a unit, via the adjugate.
    pub fn inverse(&self) -> Result<RMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            });
        }
        let n = self.n_rows;
        let d = self.det()?;
        let d_inv = self.ring.inv(&d).ok_or(Error::NotAUnit {
            elem: d.to_string(),
        })?;
        let adj = RMatrix::from_fn(self.ring.clone(), n, n, |r, c| {
            // adjugate: cofactor of (c, r)
            let minor: Vec<RingElem> = (0..n)
                .filter(|i| *i != c)
                .flat_map(|i| {
                    (0..n)
                        .filter(|j| *j != r)
                        .map(move |j| self.at(i, j).clone())
                })
                .collect();
            let m = det_cofactor(&minor, n - 1);
            if (r + c) % 2 == 0 {
                self.ring.reduce(&m)
            } else {
                self.ring.neg(&m)
            }
        })?;
        RMatrix::from_fn(self.ring.clone(), n, n, |r, c| {
            self.ring.mul(adj.at(r, c), &d_inv)
        })
    }

    /// Inverse of a symplectic matrix: -Omega * M^T * Omega.
    pub fn inverse_symplectic(&self) -> Result<RMatrix> {
        if !self.n_rows.is_multiple_of(2) {
            return Err(Error::OddDimension { dim: self.n_rows });
        }
        let k = self.n_rows / 2;
        let omega = RMatrix::omega(self.ring.clone(), k);
        Ok(omega.mul(&self.transpose())?.mul(&omega)?.neg())
    }
}

fn det_cofactor(entries: &[RingElem], n: usize) -> RingElem {
    debug_assert_eq!(entries.len(), n * n);
    if n == 0 {
        panic!("empty determinant");
    }
    let ring = entries[0].ring();
    if n == 1 {
        return entries[0].clone();
    }
    let mut acc = ring.zero();
    for c in 0..n {
        if entries[c].is_zero() {
            continue;
        }
        let minor: Vec<RingElem> = (1..n)
            .flat_map(|r| {
                (0..n)
                    .filter(|j| *j != c)
                    .map(move |j| entries[r * n + j].clone())
            })
            .collect();
        let term = entries[c].mul(&det_cofactor(&minor, n - 1));
        acc = if c % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

fn det_bareiss(mut m: Vec<RingElem>, n: usize, base: crate::exactring::BaseRing) -> RingElem {
    let at = |m: &Vec<RingElem>, r: usize, c: usize| m[r * n + c].clone();
    let mut sign_flip = false;
    let mut prev = base.one();
    for k in 0..n - 1 {
        if at(&m, k, k).is_zero() {
            match (k + 1..n).find(|r| !at(&m, *r, k).is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    sign_flip = !sign_flip;
                }
                None => return base.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = at(&m, i, j)
                    .mul(&at(&m, k, k))
                    .sub(&at(&m, i, k).mul(&at(&m, k, j)));
                let (q, r) = num.divrem(&prev).unwrap();
                debug_assert!(r.is_zero(), "Bareiss division not exact");
                m[i * n + j] = q;
            }
            m[i * n + k] = base.zero();
        }
        prev = at(&m, k, k);
    }
    let d = at(&m, n - 1, n - 1);
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

/// One elementary factor E_ij(t) = Id + t*e_ij, i != j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemFactor {
    pub i: usize,
    pub j: usize,
    pub t: RingElem,
}

/// An ordered product of elementary factors in a fixed ring and size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemWord {
    ring: QuotRing,
    n: usize,
    factors: Vec<ElemFactor>,
}

impl ElemWord {
    pub fn new(ring: QuotRing, n: usize, factors: Vec<ElemFactor>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(factors.len());
        for f in factors {
            if f.i == f.j || f.i >= n || f.j >= n {
                return Err(Error::InvalidArgument(format!(
                    "elementary factor indices ({}, {}) invalid for size {}",
                    f.i, f.j, n
                )));
            }
            reduced.push(ElemFactor {
                i: f.i,
                j: f.j,
                t: ring.reduce(&f.t),
            });
        }
        Ok(ElemWord {
            ring,
            n,
            factors: reduced,
        })
    }

    pub fn empty(ring: QuotRing, n: usize) -> Self {
        ElemWord {
            ring,
            n,
            factors: Vec::new(),
        }
    }

    pub fn ring(&self) -> &QuotRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[ElemFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The same word with every factor reduced modulo a further ideal.
    pub fn reduce_mod(&self, ideal: &Ideal) -> Result<ElemWord> {
        if ideal.ring() != self.ring.base() {
            return Err(Error::MixedRings);
        }
        let q = QuotRing::new(ideal.clone());
        ElemWord::new(
            q,
            self.n,
            self.factors
                .iter()
                .map(|f| ElemFactor {
                    i: f.i,
                    j: f.j,
                    t: f.t.clone(),
                })
                .collect(),
        )
    }
}

/// Left-to-right product of the factors of a word.
pub fn word_to_matrix(w: &ElemWord) -> RMatrix {
    let mut m = RMatrix::identity(w.ring.clone(), w.n);
    for f in &w.factors {
        // right-multiplying by E_ij(t) adds t * column i to column j
        for r in 0..w.n {
            let add = m.at(r, f.i).mul(&f.t);
            let new = w.ring.add(m.at(r, f.j), &add);
            m.entries[r * w.n + f.j] = new;
        }
    }
    m
}

/// The three-factor word for the transposition matrix [[0,-1],[1,0]],
/// embedded at the adjacent row pair (i, i+1) of an n x n identity.
pub fn transposition_word(ring: QuotRing, n: usize, i: usize) -> Result<ElemWord> {
    if i + 1 >= n {
        return Err(Error::InvalidArgument(format!(
            "adjacent pair ({}, {}) out of range for size {}",
            i,
            i + 1,
            n
        )));
    }
    let one = ring.one();
    let m_one = ring.neg(&one);
    ElemWord::new(
        ring,
        n,
        vec![
            ElemFactor {
                i,
                j: i + 1,
                t: m_one.clone(),
            },
            ElemFactor {
                i: i + 1,
                j: i,
                t: one,
            },
            ElemFactor {
                i,
                j: i + 1,
                t: m_one,
            },
        ],
    )
}

/// The four-factor word for diag(s, s^{-1}), embedded at the adjacent row
/// pair (i, i+1) of an n x n identity. s must be a unit.
pub fn diag_word(ring: QuotRing, n: usize, i: usize, s: &RingElem) -> Result<ElemWord> {
    if i + 1 >= n {
        return Err(Error::InvalidArgument(format!(
            "adjacent pair ({}, {}) out of range for size {}",
            i,
            i + 1,
            n
        )));
    }
    let s = ring.reduce(s);
    let s_inv = ring.inv(&s).ok_or(Error::NotAUnit {
        elem: s.to_string(),
    })?;
    let one = ring.one();
    ElemWord::new(
        ring.clone(),
        n,
        vec![
            ElemFactor {
                i: i + 1,
                j: i,
                t: s_inv.clone(),
            },
            ElemFactor {
                i,
                j: i + 1,
                t: ring.sub(&one, &s),
            },
            ElemFactor {
                i: i + 1,
                j: i,
                t: ring.neg(&one),
            },
            ElemFactor {
                i,
                j: i + 1,
                t: ring.sub(&one, &s_inv),
            },
        ],
    )
}

/// Factors a determinant-one matrix into elementary factors so that
/// word_to_matrix(result) equals the input exactly.
///
/// Over the Euclidean base rings the pivot is created by gcd-driven row
/// reduction; over finite quotients by a unit entry or a USC witness
/// combination added from lower rows. The final diagonal is eliminated
/// through the diag(s, s^{-1}) words.
pub fn elementary_decompose(m: &RMatrix) -> Result<ElemWord> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.n_rows,
            cols: m.n_cols,
        });
    }
    let ring = m.ring.clone();
    let d = m.det()?;
    if d != ring.one() {
        return Err(Error::DeterminantNotOne {
            det: d.to_string(),
        });
    }
    let n = m.n_rows;
    if n == 0 || ring.is_zero_ring() {
        return Ok(ElemWord::empty(ring, n));
    }

    let mut w: Vec<Vec<RingElem>> = m.rows().map(|r| r.to_vec()).collect();
    // applied row operations (target += t * source), in order
    let mut ops: Vec<ElemFactor> = Vec::new();

    let apply = |w: &mut Vec<Vec<RingElem>>, ops: &mut Vec<ElemFactor>, i: usize, j: usize, t: &RingElem| {
        let t = ring.reduce(t);
        if t.is_zero() {
            return;
        }
        for c in 0..n {
            w[i][c] = ring.add(&w[i][c], &t.mul(&w[j][c]));
        }
        ops.push(ElemFactor { i, j, t });
    };

    for col in 0..n {
        if ring.is_base() {
            // Euclidean pivot creation on the subcolumn
            loop {
                let nz: Vec<usize> = (col..n).filter(|r| !w[*r][col].is_zero()).collect();
                debug_assert!(!nz.is_empty(), "determinant-one matrix with zero subcolumn");
                if nz.len() == 1 {
                    let r = nz[0];
                    if r != col {
                        let one = ring.one();
                        apply(&mut w, &mut ops, col, r, &one);
                        apply(&mut w, &mut ops, r, col, &one.neg());
                    }
                    break;
                }
                let r0 = *nz
                    .iter()
                    .min_by_key(|r| w[**r][col].euclid_size().unwrap())
                    .unwrap();
                for &r1 in &nz {
                    if r1 == r0 {
                        continue;
                    }
                    let (q, _) = w[r1][col].divrem(&w[r0][col])?;
                    apply(&mut w, &mut ops, r1, r0, &q.neg());
                }
            }
        } else {
            // finite quotient: pivot must become a unit
            if !ring.is_unit(&w[col][col]) {
                let unit_row = (col + 1..n).find(|r| ring.is_unit(&w[*r][col]));
                if let Some(r) = unit_row {
                    let u_inv = ring.inv(&w[r][col]).unwrap();
                    let t = u_inv.mul(&ring.one().sub(&w[col][col]));
                    apply(&mut w, &mut ops, col, r, &t);
                } else {
                    let column: Vec<RingElem> = (col..n).map(|r| w[r][col].clone()).collect();
                    let ts = usc_pivot_coeffs(&ring, &column)?;
                    for (offset, t) in ts.iter().enumerate() {
                        apply(&mut w, &mut ops, col, col + 1 + offset, t);
                    }
                }
                debug_assert!(ring.is_unit(&w[col][col]));
            }
            let p_inv = ring.inv(&w[col][col]).unwrap();
            for r in col + 1..n {
                if !w[r][col].is_zero() {
                    let t = ring.neg(&w[r][col].mul(&p_inv));
                    apply(&mut w, &mut ops, r, col, &t);
                }
            }
        }
    }

    // clear above the diagonal, ascending columns
    for col in 1..n {
        let p_inv = ring.inv(&w[col][col]).expect("diagonal pivot is a unit");
        for r in 0..col {
            if !w[r][col].is_zero() {
                let t = ring.neg(&w[r][col].mul(&p_inv));
                apply(&mut w, &mut ops, r, col, &t);
            }
        }
    }

    // the matrix is now diag(d_0..d_{n-1}) with product 1; invert the
    // applied operations and append the diagonal words
    let mut factors: Vec<ElemFactor> = ops
        .iter()
        .map(|f| ElemFactor {
            i: f.i,
            j: f.j,
            t: ring.neg(&f.t),
        })
        .collect();
    let mut s = ring.one();
    for idx in 0..n.saturating_sub(1) {
        s = ring.mul(&s, &w[idx][idx]);
        if !s.is_one() {
            factors.extend(diag_word(ring.clone(), n, idx, &s)?.factors);
        }
    }
    let word = ElemWord::new(ring, n, factors)?;
    debug_assert_eq!(&word_to_matrix(&word), m);
    Ok(word)
}

/// Closure of the elementary matrices of a finite quotient under
/// multiplication. Equals all of SL_n iff the quotient is a GE_n-ring.
pub fn ge_closure(ring: &QuotRing, n: usize, cap: usize) -> Result<Vec<RMatrix>> {
    if !ring.is_finite() {
        return Err(Error::InfiniteQuotient);
    }
    let elems = ring.elements()?;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for t in &elems {
                if t.is_zero() {
                    continue;
                }
                let mut g = RMatrix::identity(ring.clone(), n);
                g.entries[i * n + j] = t.clone();
                gens.push(g);
            }
        }
    }
    let mut visited: BTreeSet<RMatrix> = BTreeSet::new();
    let mut queue: VecDeque<RMatrix> = VecDeque::new();
    let id = RMatrix::identity(ring.clone(), n);
    visited.insert(id.clone());
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = m.mul(g)?;
            if !visited.contains(&next) {
                if visited.len() >= cap {
                    return Err(Error::ClosureCapExceeded {
                        cap,
                        partial: visited.into_iter().collect(),
                    });
                }
                visited.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(visited.into_iter().collect())
}

/// Exhaustive list of all n x n determinant-one matrices over a finite
/// quotient, in ascending entry order. Guarded by candidate count.
pub fn enumerate_sl(ring: &QuotRing, n: usize, guard: u128) -> Result<Vec<RMatrix>> {
    enumerate_filtered(ring, n, guard, |m| Ok(m.det()? == m.ring.one()))
}

/// Exhaustive list of all 2k x 2k form-preserving matrices over a finite
/// quotient.
pub fn enumerate_sp(ring: &QuotRing, k: usize, guard: u128) -> Result<Vec<RMatrix>> {
    enumerate_filtered(ring, 2 * k, guard, |m| m.is_symplectic())
}

fn enumerate_filtered(
    ring: &QuotRing,
    n: usize,
    guard: u128,
    keep: impl Fn(&RMatrix) -> Result<bool>,
) -> Result<Vec<RMatrix>> {
    if !ring.is_finite() {
        return Err(Error::InfiniteQuotient);
    }
    let elems = ring.elements()?;
    let size = elems.len() as u128;
    let cells = n * n;
    let total = size
        .checked_pow(cells as u32)
        .ok_or(Error::GuardExceeded {
            checked: u128::MAX,
            cap: guard,
        })?;
    if total > guard {
        return Err(Error::GuardExceeded {
            checked: total,
            cap: guard,
        });
    }
    let mut out = Vec::new();
    let mut odometer = vec![0usize; cells];
    loop {
        let entries: Vec<RingElem> = odometer.iter().map(|i| elems[*i].clone()).collect();
        let m = RMatrix::new(ring.clone(), n, n, entries)?;
        if keep(&m)? {
            out.push(m);
        }
        // advance
        let mut pos = cells;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < elems.len() {
                break;
            }
            odometer[pos] = 0;
        }
    }
}

/// |SL_n| or |Sp_2k| of Z/m when small enough to enumerate.
pub fn group_order(ring: &QuotRing, n: usize, symplectic: bool, guard: u128) -> Result<usize> {
    let list = if symplectic {
        enumerate_sp(ring, n / 2, guard)?
    } else {
        enumerate_sl(ring, n, guard)?
    };
    Ok(list.len())
}

/// True iff a - b reduces to zero modulo the ideal, entrywise.
pub fn congruent_mod(a: &RMatrix, b: &RMatrix, ideal: &Ideal) -> Result<bool> {
    if a.n_rows != b.n_rows || a.n_cols != b.n_cols {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{}", a.n_rows, a.n_cols),
            got: format!("{}x{}", b.n_rows, b.n_cols),
        });
    }
    Ok(a.reduce_mod(ideal)? == b.reduce_mod(ideal)?)
}

/// Guard value large enough for every desk-scale enumeration in the tests.
pub const DEFAULT_ENUM_GUARD: u128 = 1 << 40;
