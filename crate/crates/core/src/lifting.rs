//! Constructive lifting: unimodular and symplectic row completion over Z,
//! strong-approximation lifts SL_k(Z) -> SL_k(Z/n) and Sp_2k(Z) -> Sp_2k(Z/n),
//! CRT matrix assembly, and the two pipelines that produce members of
//! principal congruence subgroups with prescribed row residues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactring::{
    crt_combine, distinct_prime_factors, gcd_with_coeffs, is_comaximal, BaseRing, Ideal, QuotRing,
    Residue, RingElem,
};
use crate::matgroup::{elementary_decompose, word_to_matrix, ElemWord, RMatrix};

/// Which classical group a level or certificate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// SL_{k+1}, type A_k.
    Sl,
    /// Sp_{2k}, type C_k.
    Sp,
}

impl GroupKind {
    pub fn dimension(&self, k: usize) -> usize {
        match self {
            GroupKind::Sl => k + 1,
            GroupKind::Sp => 2 * k,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GroupKind::Sl => "sl",
            GroupKind::Sp => "sp",
        }
    }
}

/// A principal congruence level: the kernel of reduction modulo the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLevel {
    pub kind: GroupKind,
    pub k: usize,
    pub ideal: Ideal,
}

impl CongruenceLevel {
    pub fn new(kind: GroupKind, k: usize, ideal: Ideal) -> Self {
        CongruenceLevel { kind, k, ideal }
    }

    /// True iff the matrix is a group member of the right size congruent
    /// to the identity modulo the level ideal.
    pub fn contains(&self, m: &RMatrix) -> Result<bool> {
        let n = self.kind.dimension(self.k);
        if m.n_rows() != n || m.n_cols() != n {
            return Ok(false);
        }
        let member = match self.kind {
            GroupKind::Sl => m.det()?.is_one(),
            GroupKind::Sp => m.is_symplectic()?,
        };
        if !member {
            return Ok(false);
        }
        let id = RMatrix::identity(QuotRing::base_ring(m.ring().base()), n);
        crate::matgroup::congruent_mod(m, &id, &self.ideal)
    }
}

/// Outcome of the membership, congruence, and level checks for a lifted
/// matrix. The certificate is self-verifying: every verdict can be
/// recomputed from the other fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdicts {
    /// det = 1 (SL) or exact form preservation (Sp), over the base ring.
    pub group_membership: bool,
    /// row_i(B) = target row i modulo its ideal.
    pub row_congruences: Vec<bool>,
    /// B = Id modulo the level ideal.
    pub level_congruence: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.group_membership && self.level_congruence && self.row_congruences.iter().all(|b| *b)
    }
}

/// A lifted matrix together with its targets and recomputable evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftCertificate {
    pub kind: GroupKind,
    pub k: usize,
    pub matrix: RMatrix,
    pub rows: Vec<Vec<RingElem>>,
    pub ideals: Vec<Ideal>,
    pub level: Ideal,
    pub verdicts: Verdicts,
}

impl LiftCertificate {
    /// The congruence subgroup the lifted matrix was required to land in.
    pub fn congruence_level(&self) -> CongruenceLevel {
        CongruenceLevel::new(self.kind, self.k, self.level.clone())
    }
}

/// Lifts a residue row that is unital modulo the quotient to a tuple over
/// the base ring whose entries generate the unit ideal, congruent to the
/// input entrywise.
pub fn lift_unital_residue(q: &QuotRing, row: &[RingElem]) -> Result<Vec<RingElem>> {
    if row.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut reps: Vec<RingElem> = row.iter().map(|e| q.reduce(e)).collect();
    let modulus = q.modulus().generator().clone();
    let mut with_mod = reps.clone();
    with_mod.push(modulus.clone());
    let (g, _) = gcd_with_coeffs(&with_mod)?;
    if !g.is_base_unit() {
        return Err(Error::NotUnital);
    }
    let (g_row, _) = gcd_with_coeffs(&reps)?;
    if g_row.is_base_unit() {
        return Ok(reps);
    }
    // the modulus is nonzero here: unital mod <0> already means gcd 1
    if reps.len() == 1 {
        // a single entry must become a unit exactly
        for unit in [q.base().one(), q.base().one().neg()] {
            if q.reduce(&unit) == reps[0] {
                return Ok(vec![unit]);
            }
        }
        return Err(Error::NotUnital);
    }
    // if the tail vanishes identically, seed it with the modulus itself
    let tail_gcd = |reps: &[RingElem]| gcd_with_coeffs(&reps[1..]).map(|(g, _)| g);
    if tail_gcd(&reps)?.is_zero() {
        reps[1] = reps[1].add(&modulus);
    }
    let d_tail = tail_gcd(&reps)?;
    debug_assert!(!d_tail.is_zero());
    match q.base() {
        BaseRing::Int => {
            // choose m so that gcd(a_0 + m*g, tail gcd) = 1, prime by prime
            let a0 = reps[0].as_int().clone();
            let g_int = modulus.as_int().clone();
            let mut constraints: Vec<(BigInt, BigInt)> = Vec::new();
            for p in distinct_prime_factors(d_tail.as_int()) {
                if (&g_int % &p).is_zero() {
                    // p divides the modulus, hence not a_0; any m works
                    continue;
                }
                let g_inv = mod_inverse_int(&g_int, &p).expect("p does not divide modulus");
                let bad = ((-&a0) * g_inv).mod_floor(&p);
                let pick = (&bad + BigInt::one()).mod_floor(&p);
                constraints.push((pick, p));
            }
            let m = crate::exactring::crt_int(&constraints);
            reps[0] = reps[0].add(&RingElem::int(m * &g_int));
        }
        BaseRing::PolyMod { p } => {
            // bounded search over multipliers in counting order
            let mut idx: u64 = 0;
            loop {
                let m = poly_by_index(p, idx);
                let candidate = reps[0].add(&m.mul(&modulus));
                let (g2, _, _) = crate::exactring::egcd(&candidate, &d_tail)?;
                if g2.is_base_unit() {
                    reps[0] = candidate;
                    break;
                }
                idx += 1;
            }
        }
    }
    let (g_final, _) = gcd_with_coeffs(&reps)?;
    debug_assert!(g_final.is_base_unit());
    Ok(reps)
}

fn mod_inverse_int(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = crate::exactring::egcd(&RingElem::int(a.clone()), &RingElem::int(m.clone()))
        .ok()?;
    if g.is_one() {
        Some(x.as_int().mod_floor(m))
    } else {
        None
    }
}

fn poly_by_index(p: u64, idx: u64) -> RingElem {
    let mut digits = Vec::new();
    let mut v = idx;
    while v > 0 {
        digits.push(v % p);
        v /= p;
    }
    RingElem::from_coeffs(p, digits).unwrap()
}

/// Completes a unimodular row over a Euclidean base ring to a square matrix
/// of determinant one whose i-th row is the input, by extended-gcd column
/// reduction.
pub fn complete_row_sl(row: &[RingElem], pos: usize) -> Result<RMatrix> {
    let n = row.len();
    if n == 0 || pos >= n {
        return Err(Error::InvalidArgument(format!(
            "row position {pos} out of range for length {n}"
        )));
    }
    let ring = QuotRing::base_ring(row[0].ring());
    let (g, _) = gcd_with_coeffs(row)?;
    if !g.is_base_unit() {
        return Err(Error::NonUnimodularRow);
    }
    if n == 1 {
        if row[0].is_one() {
            return RMatrix::from_rows(ring, vec![vec![row[0].clone()]]);
        }
        return Err(Error::InvalidArgument(
            "a 1x1 completion requires the entry 1".into(),
        ));
    }
    let mut v: Vec<RingElem> = row.to_vec();
    // column operations entry[target] += t * entry[source], recorded as
    // elementary factors E(source, target, t)
    let mut ops: Vec<(usize, usize, RingElem)> = Vec::new();
    let apply = |v: &mut Vec<RingElem>, ops: &mut Vec<(usize, usize, RingElem)>,
                     target: usize,
                     source: usize,
                     t: &RingElem| {
        if t.is_zero() {
            return;
        }
        v[target] = v[target].add(&t.mul(&v[source]));
        ops.push((source, target, t.clone()));
    };
    for j in 0..n {
        if j == pos {
            continue;
        }
        while !v[j].is_zero() {
            let (q, r) = v[pos].divrem(&v[j])?;
            apply(&mut v, &mut ops, pos, j, &q.neg());
            if r.is_zero() {
                // move the pivot value into position and clear j
                let one = ring.one();
                apply(&mut v, &mut ops, pos, j, &one);
                apply(&mut v, &mut ops, j, pos, &one.neg());
                break;
            }
            let (q2, _) = v[j].divrem(&v[pos])?;
            apply(&mut v, &mut ops, j, pos, &q2.neg());
        }
    }
    // v is now delta * e_pos for a unit delta; normalize delta to 1
    debug_assert!((0..n).all(|j| j == pos || v[j].is_zero()));
    if !v[pos].is_one() {
        let delta = v[pos].clone();
        let u_inv = delta.base_unit_inverse()?;
        let j0 = if pos == 0 { 1 } else { 0 };
        let one = ring.one();
        apply(&mut v, &mut ops, j0, pos, &one);
        apply(&mut v, &mut ops, pos, j0, &u_inv.sub(&one));
        apply(&mut v, &mut ops, j0, pos, &delta.neg());
    }
    debug_assert!(v[pos].is_one());
    // row * U = e_pos with U the product of the recorded factors, so the
    // completion is U^{-1}: reversed factors with negated parameters
    let factors = ops
        .into_iter()
        .rev()
        .map(|(i, j, t)| crate::matgroup::ElemFactor { i, j, t: t.neg() })
        .collect();
    let word = ElemWord::new(ring, n, factors)?;
    let m = word_to_matrix(&word);
    debug_assert_eq!(m.row(pos), row);
    debug_assert!(m.det().map(|d| d.is_one()).unwrap_or(false));
    Ok(m)
}

/// Lifts a determinant-one matrix over a finite quotient to a
/// determinant-one matrix over the base ring reducing back to it: the
/// matrix is factored into elementary words and each parameter is replaced
/// by its canonical representative.
pub fn sap_lift_sl(a: &RMatrix) -> Result<RMatrix> {
    let ring = a.ring().clone();
    if ring.is_base() {
        let d = a.det()?;
        if !d.is_one() {
            return Err(Error::DeterminantNotOne { det: d.to_string() });
        }
        return Ok(a.clone());
    }
    let base = QuotRing::base_ring(ring.base());
    if ring.is_zero_ring() {
        return Ok(RMatrix::identity(base, a.n_rows()));
    }
    let word = elementary_decompose(a)?;
    let lifted = ElemWord::new(
        base,
        word.n(),
        word.factors()
            .iter()
            .map(|f| crate::matgroup::ElemFactor {
                i: f.i,
                j: f.j,
                t: f.t.clone(),
            })
            .collect(),
    )?;
    let b = word_to_matrix(&lifted);
    debug_assert_eq!(&b.reduce_mod(ring.modulus())?, a);
    Ok(b)
}

// ---- symplectic machinery over Z ----

fn symp_form(x: &[BigInt], y: &[BigInt], k: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for a in 0..k {
        acc += &x[a] * &y[a + k] - &x[a + k] * &y[a];
    }
    acc
}

/// Row-lattice basis by integer row echelon (Euclidean column sweeps).
fn row_lattice_basis(mut rows: Vec<Vec<BigInt>>, width: usize) -> Vec<Vec<BigInt>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for col in 0..width {
        loop {
            let nz: Vec<usize> = (0..rows.len())
                .filter(|r| !rows[*r][col].is_zero())
                .collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let r = nz[0];
                basis.push(rows.remove(r));
                break;
            }
            let r0 = *nz
                .iter()
                .min_by_key(|r| rows[**r][col].abs())
                .unwrap();
            for &r1 in &nz {
                if r1 == r0 {
                    continue;
                }
                let q = rows[r1][col].div_floor(&rows[r0][col]);
                if !q.is_zero() {
                    for c in 0..width {
                        let sub = &q * &rows[r0][c];
                        rows[r1][c] -= sub;
                    }
                }
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
    }
    basis
}

/// Projects x onto the symplectic complement of the hyperbolic plane
/// spanned by (v, w) with <v, w> = 1.
fn hyperbolic_project(x: &[BigInt], v: &[BigInt], w: &[BigInt], k: usize) -> Vec<BigInt> {
    let xv = symp_form(x, v, k);
    let xw = symp_form(x, w, k);
    (0..2 * k)
        .map(|c| &x[c] + &xv * &w[c] - &xw * &v[c])
        .collect()
}

/// Completes a unimodular integer row to a symplectic matrix whose i-th
/// row is the input: a partner w with <v, w> = 1 splits off a hyperbolic
/// plane, and the complement is completed to a symplectic basis by
/// iterated pairing.
pub fn complete_row_sp(row: &[RingElem], pos: usize, k: usize) -> Result<RMatrix> {
    let n = 2 * k;
    if row.len() != n || pos >= n || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "symplectic completion needs a row of length 2k, got {} for k={}",
            row.len(),
            k
        )));
    }
    if row[0].ring() != BaseRing::Int {
        return Err(Error::InvalidArgument(
            "symplectic completion is supported over Z".into(),
        ));
    }
    let (g, _) = gcd_with_coeffs(row)?;
    if !g.is_base_unit() {
        return Err(Error::NonUnimodularRow);
    }
    let v: Vec<BigInt> = row.iter().map(|e| e.as_int().clone()).collect();
    // solve <v, w> = 1: the form against v has coefficients of content 1
    let coeff: Vec<RingElem> = (0..n)
        .map(|b| {
            if b < k {
                RingElem::int(-&v[b + k])
            } else {
                RingElem::int(v[b - k].clone())
            }
        })
        .collect();
    let (g, cs) = gcd_with_coeffs(&coeff)?;
    debug_assert!(g.is_one());
    let w: Vec<BigInt> = cs.iter().map(|c| c.as_int().clone()).collect();
    debug_assert!(symp_form(&v, &w, k).is_one());

    let mut pairs: Vec<(Vec<BigInt>, Vec<BigInt>)> = vec![(v.clone(), w.clone())];
    // generators of the complement of the hyperbolic plane
    let mut gens: Vec<Vec<BigInt>> = (0..n)
        .map(|b| {
            let mut e = vec![BigInt::zero(); n];
            e[b] = BigInt::one();
            hyperbolic_project(&e, &v, &w, k)
        })
        .collect();
    let mut basis = row_lattice_basis(std::mem::take(&mut gens), n);
    while !basis.is_empty() {
        debug_assert!(basis.len() >= 2);
        let x = basis[0].clone();
        let vals: Vec<RingElem> = basis[1..]
            .iter()
            .map(|b| RingElem::int(symp_form(&x, b, k)))
            .collect();
        let (g, cs) = gcd_with_coeffs(&vals)?;
        debug_assert!(g.is_one(), "unimodular alternating form pairs to 1");
        let mut y = vec![BigInt::zero(); n];
        for (c, b) in cs.iter().zip(&basis[1..]) {
            for idx in 0..n {
                y[idx] += c.as_int() * &b[idx];
            }
        }
        debug_assert!(symp_form(&x, &y, k).is_one());
        let rest: Vec<Vec<BigInt>> = basis[1..]
            .iter()
            .map(|b| hyperbolic_project(b, &x, &y, k))
            .collect();
        pairs.push((x, y));
        basis = row_lattice_basis(rest, n);
    }
    debug_assert_eq!(pairs.len(), k);

    // place the primary pair at the requested slot
    let first = pairs.remove(0);
    let (slot0, first_pair) = if pos < k {
        (pos, first)
    } else {
        let (x, y) = first;
        let neg_y: Vec<BigInt> = y.iter().map(|c| -c).collect();
        (pos - k, (neg_y, x))
    };
    let mut slot_pairs: Vec<Option<(Vec<BigInt>, Vec<BigInt>)>> = vec![None; k];
    slot_pairs[slot0] = Some(first_pair);
    let mut rest = pairs.into_iter();
    for slot in 0..k {
        if slot_pairs[slot].is_none() {
            slot_pairs[slot] = Some(rest.next().expect("enough pairs"));
        }
    }
    let ring = QuotRing::base_ring(BaseRing::Int);
    let mut rows_out: Vec<Vec<RingElem>> = vec![Vec::new(); n];
    for (slot, pair) in slot_pairs.into_iter().enumerate() {
        let (x, y) = pair.unwrap();
        rows_out[slot] = x.into_iter().map(RingElem::int).collect();
        rows_out[slot + k] = y.into_iter().map(RingElem::int).collect();
    }
    let m = RMatrix::from_rows(ring, rows_out)?;
    debug_assert!(m.is_symplectic()?);
    debug_assert_eq!(m.row(pos), row);
    Ok(m)
}

fn block_l_siegel(ring: &QuotRing, k: usize, s: &[Vec<RingElem>]) -> RMatrix {
    // [[I, 0], [S, I]] with S symmetric
    RMatrix::from_fn(ring.clone(), 2 * k, 2 * k, |r, c| {
        if r == c {
            ring.one()
        } else if r >= k && c < k {
            s[r - k][c].clone()
        } else {
            ring.zero()
        }
    })
    .unwrap()
}

fn block_h_pair(ring: &QuotRing, k: usize, c_mat: &[Vec<RingElem>], c_inv_t: &[Vec<RingElem>]) -> RMatrix {
    // [[C, 0], [0, (C^T)^{-1}]]
    RMatrix::from_fn(ring.clone(), 2 * k, 2 * k, |r, c| {
        if r < k && c < k {
            c_mat[r][c].clone()
        } else if r >= k && c >= k {
            c_inv_t[r - k][c - k].clone()
        } else {
            ring.zero()
        }
    })
    .unwrap()
}

/// Lifts a symplectic matrix over Z/n to a symplectic matrix over Z
/// reducing back to it. The first row is lifted and completed, the
/// resulting parabolic block structure is peeled off with integrally
/// liftable Siegel factors, and the embedded Sp_{2(k-1)} block is lifted
/// recursively.
pub fn sap_lift_sp(a: &RMatrix) -> Result<RMatrix> {
    let ring = a.ring().clone();
    if ring.base() != BaseRing::Int {
        return Err(Error::InvalidArgument(
            "symplectic lifting is supported over Z".into(),
        ));
    }
    if !a.is_symplectic()? {
        return Err(Error::NotSymplectic);
    }
    let n = a.n_rows();
    let k = n / 2;
    let base = QuotRing::base_ring(BaseRing::Int);
    if ring.is_base() {
        return Ok(a.clone());
    }
    if ring.is_zero_ring() {
        return Ok(RMatrix::identity(base, n));
    }
    if k == 1 {
        // Sp_2 = SL_2
        return sap_lift_sl(a);
    }
    let modulus = ring.modulus().clone();

    let v = lift_unital_residue(&ring, a.row(0))?;
    let p_mat = complete_row_sp(&v, 0, k)?;
    let p_red = p_mat.reduce_mod(&modulus)?;
    let p_inv = p_red.inverse_symplectic()?;
    let a1 = a.mul(&p_inv)?;
    debug_assert!(a1.row(0)[0].is_one() && a1.row(0)[1..].iter().all(|e| e.is_zero()));

    // partner row u has u[k] = 1; kill its p-part with a lower Siegel factor
    let u = a1.row(k).to_vec();
    debug_assert!(u[k].is_one());
    let up = &u[..k];
    let uq = &u[k..];
    let mut s_row: Vec<RingElem> = vec![ring.zero(); k];
    for b in 1..k {
        s_row[b] = ring.neg(&up[b]);
    }
    let mut s0 = ring.neg(&up[0]);
    for a_idx in 1..k {
        s0 = ring.add(&s0, &uq[a_idx].mul(&up[a_idx]));
    }
    s_row[0] = s0;
    let mut s_full: Vec<Vec<RingElem>> = vec![vec![ring.zero(); k]; k];
    for b in 0..k {
        s_full[0][b] = s_row[b].clone();
        s_full[b][0] = s_row[b].clone();
    }
    let l_red = block_l_siegel(&ring, k, &s_full);
    let a2 = a1.mul(&l_red)?;

    // clear the q-part tail with a hyperbolic SL block
    let u2 = a2.row(k).to_vec();
    debug_assert!(u2[..k].iter().all(|e| e.is_zero()));
    let u2q = &u2[k..];
    debug_assert!(u2q[0].is_one());
    let mut c_mat: Vec<Vec<RingElem>> = vec![vec![ring.zero(); k]; k];
    let mut c_inv_t: Vec<Vec<RingElem>> = vec![vec![ring.zero(); k]; k];
    for r in 0..k {
        c_mat[r][r] = ring.one();
        c_inv_t[r][r] = ring.one();
    }
    for r in 1..k {
        c_mat[r][0] = u2q[r].clone();
        c_inv_t[0][r] = ring.neg(&u2q[r]);
    }
    let h_red = block_h_pair(&ring, k, &c_mat, &c_inv_t);
    let a3 = a2.mul(&h_red)?;
    debug_assert!(a3.row(0)[0].is_one());
    debug_assert!(a3.row(k)[k].is_one());

    // extract the embedded Sp_{2(k-1)} block
    let old_index = |idx: usize| if idx < k - 1 { idx + 1 } else { idx + 2 };
    let sub = RMatrix::from_fn(ring.clone(), 2 * (k - 1), 2 * (k - 1), |r, c| {
        a3.at(old_index(r), old_index(c)).clone()
    })?;
    let b_sub = sap_lift_sp(&sub)?;
    let b3 = RMatrix::from_fn(base.clone(), n, n, |r, c| {
        if r == 0 || r == k || c == 0 || c == k {
            if r == c {
                base.one()
            } else {
                base.zero()
            }
        } else {
            let new_r = if r < k { r - 1 } else { r - 2 };
            let new_c = if c < k { c - 1 } else { c - 2 };
            b_sub.at(new_r, new_c).clone()
        }
    })?;

    // lift the peeled factors integrally and recompose
    let s_int: Vec<Vec<RingElem>> = s_full
        .iter()
        .map(|row| row.iter().map(|e| e.neg()).collect())
        .collect();
    let l_inv_int = block_l_siegel(&base, k, &s_int);
    let mut c_inv_int: Vec<Vec<RingElem>> = vec![vec![base.zero(); k]; k];
    let mut c_t_int: Vec<Vec<RingElem>> = vec![vec![base.zero(); k]; k];
    for r in 0..k {
        c_inv_int[r][r] = base.one();
        c_t_int[r][r] = base.one();
    }
    for r in 1..k {
        c_inv_int[r][0] = c_mat[r][0].neg();
        c_t_int[0][r] = c_mat[r][0].clone();
    }
    let h_inv_int = block_h_pair(&base, k, &c_inv_int, &c_t_int);
    let b = b3.mul(&h_inv_int)?.mul(&l_inv_int)?.mul(&p_mat)?;
    debug_assert!(b.is_symplectic()?);
    debug_assert_eq!(&b.reduce_mod(&modulus)?, a);
    Ok(b)
}

/// Entrywise CRT assembly of matrices with pairwise co-maximal moduli.
pub fn crt_matrix(targets: &[RMatrix]) -> Result<RMatrix> {
    if targets.is_empty() {
        return Err(Error::EmptyInput);
    }
    let first = &targets[0];
    for t in targets {
        if t.n_rows() != first.n_rows() || t.n_cols() != first.n_cols() {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", first.n_rows(), first.n_cols()),
                got: format!("{}x{}", t.n_rows(), t.n_cols()),
            });
        }
    }
    if targets.len() == 1 {
        return Ok(first.clone());
    }
    let mut entries = Vec::with_capacity(first.n_rows() * first.n_cols());
    let mut combined_ring = None;
    for r in 0..first.n_rows() {
        for c in 0..first.n_cols() {
            let residues: Vec<Residue> = targets
                .iter()
                .map(|t| Residue::new(t.ring().clone(), t.at(r, c)))
                .collect();
            let combined = crt_combine(&residues)?;
            if combined_ring.is_none() {
                combined_ring = Some(combined.parent().clone());
            }
            entries.push(combined.rep().clone());
        }
    }
    RMatrix::new(
        combined_ring.expect("at least one entry"),
        first.n_rows(),
        first.n_cols(),
        entries,
    )
}

fn compute_verdicts(
    kind: GroupKind,
    matrix: &RMatrix,
    rows: &[Vec<RingElem>],
    ideals: &[Ideal],
    level: &Ideal,
) -> Result<Verdicts> {
    let group_membership = match kind {
        GroupKind::Sl => matrix.det()?.is_one(),
        GroupKind::Sp => matrix.is_symplectic()?,
    };
    let mut row_congruences = Vec::with_capacity(rows.len());
    for (i, (row, ideal)) in rows.iter().zip(ideals).enumerate() {
        if ideal.is_unit_ideal() {
            row_congruences.push(true);
            continue;
        }
        let q = QuotRing::new(ideal.clone());
        let ok = matrix
            .row(i)
            .iter()
            .zip(row)
            .all(|(a, b)| q.reduce(a) == q.reduce(b));
        row_congruences.push(ok);
    }
    let id = RMatrix::identity(
        QuotRing::base_ring(matrix.ring().base()),
        matrix.n_rows(),
    );
    let level_congruence = crate::matgroup::congruent_mod(matrix, &id, level)?;
    Ok(Verdicts {
        group_membership,
        row_congruences,
        level_congruence,
    })
}

fn validate_lift_inputs(
    rows: &[Vec<RingElem>],
    ideals: &[Ideal],
    level: &Ideal,
    n: usize,
) -> Result<()> {
    if rows.len() != n || ideals.len() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("{n} rows and ideals"),
            got: format!("{} rows, {} ideals", rows.len(), ideals.len()),
        });
    }
    for row in rows {
        if row.len() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("row length {n}"),
                got: format!("{}", row.len()),
            });
        }
        let (g, _) = gcd_with_coeffs(row)?;
        if !g.is_base_unit() {
            return Err(Error::NonUnimodularRow);
        }
    }
    for i in 0..ideals.len() {
        for j in i + 1..ideals.len() {
            if !is_comaximal(&ideals[i], &ideals[j])? {
                return Err(Error::NotComaximal {
                    left: ideals[i].generator().to_string(),
                    right: ideals[j].generator().to_string(),
                });
            }
        }
    }
    let mut product = Ideal::unit(level.ring());
    for ideal in ideals {
        product = product.product(ideal)?;
    }
    if !is_comaximal(&product, level)? {
        return Err(Error::NotComaximal {
            left: product.generator().to_string(),
            right: level.generator().to_string(),
        });
    }
    Ok(())
}

fn assemble_congruence_target(
    completions: Vec<(RMatrix, &Ideal)>,
    level: &Ideal,
    n: usize,
) -> Result<Option<RMatrix>> {
    let base = QuotRing::base_ring(BaseRing::Int);
    let mut targets = Vec::new();
    for (m, ideal) in completions {
        if ideal.is_unit_ideal() {
            continue;
        }
        targets.push(m.reduce_mod(ideal)?);
    }
    if !level.is_unit_ideal() {
        let id = RMatrix::identity(base, n);
        targets.push(id.reduce_mod(level)?);
    }
    if targets.is_empty() {
        return Ok(None);
    }
    Some(crt_matrix(&targets)).transpose()
}

/// Produces B in SL_{k+1}(Z) with B = Id mod the level ideal and
/// row_i(B) = rows[i] mod ideals[i], via per-row determinant-one
/// completion, CRT assembly, and a strong-approximation lift.
pub fn omega_lift(
    rows: &[Vec<RingElem>],
    ideals: &[Ideal],
    level: &Ideal,
) -> Result<LiftCertificate> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "SL lifting needs k >= 1, i.e. at least two rows".into(),
        ));
    }
    validate_lift_inputs(rows, ideals, level, n)?;
    let mut completions = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if ideals[i].is_unit_ideal() {
            continue;
        }
        completions.push((complete_row_sl(row, i)?, &ideals[i]));
    }
    let matrix = match assemble_congruence_target(completions, level, n)? {
        None => RMatrix::identity(QuotRing::base_ring(BaseRing::Int), n),
        Some(c) => sap_lift_sl(&c)?,
    };
    let verdicts = compute_verdicts(GroupKind::Sl, &matrix, rows, ideals, level)?;
    Ok(LiftCertificate {
        kind: GroupKind::Sl,
        k: n - 1,
        matrix,
        rows: rows.to_vec(),
        ideals: ideals.to_vec(),
        level: level.clone(),
        verdicts,
    })
}

/// As `omega_lift` for Sp_{2k}(Z), with symplectic row completion and the
/// symplectic strong-approximation lift.
pub fn sigma_lift(
    rows: &[Vec<RingElem>],
    ideals: &[Ideal],
    level: &Ideal,
) -> Result<LiftCertificate> {
    let n = rows.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::OddDimension { dim: n });
    }
    let k = n / 2;
    validate_lift_inputs(rows, ideals, level, n)?;
    let mut completions = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if ideals[i].is_unit_ideal() {
            continue;
        }
        completions.push((complete_row_sp(row, i, k)?, &ideals[i]));
    }
    let matrix = match assemble_congruence_target(completions, level, n)? {
        None => RMatrix::identity(QuotRing::base_ring(BaseRing::Int), n),
        Some(c) => sap_lift_sp(&c)?,
    };
    let verdicts = compute_verdicts(GroupKind::Sp, &matrix, rows, ideals, level)?;
    Ok(LiftCertificate {
        kind: GroupKind::Sp,
        k,
        matrix,
        rows: rows.to_vec(),
        ideals: ideals.to_vec(),
        level: level.clone(),
        verdicts,
    })
}

/// Recomputes every verdict of a certificate from scratch.
pub fn verify_certificate(c: &LiftCertificate) -> bool {
    let n = c.kind.dimension(c.k);
    if c.matrix.n_rows() != n || c.matrix.n_cols() != n {
        return false;
    }
    if c.rows.len() != n || c.ideals.len() != n {
        return false;
    }
    if c.rows.iter().any(|r| r.len() != n) {
        return false;
    }
    match compute_verdicts(c.kind, &c.matrix, &c.rows, &c.ideals, &c.level) {
        Ok(v) => v.all(),
        Err(_) => false,
    }
}
