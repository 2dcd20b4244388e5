//! Seeded sampling helpers used by the checkers, the tests, and the CLI.
//! Everything is driven by a caller-supplied RNG so runs are reproducible.

use num_bigint::BigInt;
use rand::Rng;

use crate::exactring::{gcd_with_coeffs, QuotRing, RingElem};
use crate::matgroup::{ElemFactor, ElemWord};

/// A random elementary word of the given length; its product is a
/// determinant-one matrix.
pub fn random_sl_word(rng: &mut impl Rng, ring: QuotRing, n: usize, len: usize) -> ElemWord {
    let mut factors = Vec::with_capacity(len);
    for _ in 0..len {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t = if ring.is_base() {
            ring.base().from_i64(rng.gen_range(-3i64..=3))
        } else {
            random_element(rng, &ring)
        };
        factors.push(ElemFactor { i, j, t });
    }
    ElemWord::new(ring, n, factors).unwrap()
}

/// A uniformly random canonical representative of a finite quotient.
pub fn random_element(rng: &mut impl Rng, ring: &QuotRing) -> RingElem {
    let elems = ring.elements().expect("finite quotient");
    elems[rng.gen_range(0..elems.len())].clone()
}

/// A random integer row with entries in [-bound, bound] and gcd exactly 1.
pub fn random_unimodular_row(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<RingElem> {
    loop {
        let row: Vec<RingElem> = (0..len)
            .map(|_| RingElem::int(BigInt::from(rng.gen_range(-bound..=bound))))
            .collect();
        if let Ok((g, _)) = gcd_with_coeffs(&row) {
            if g.is_one() {
                return row;
            }
        }
    }
}

/// A random elementary word over Z whose parameters are multiples of the
/// level; its product lies in the principal congruence subgroup.
pub fn random_sl_word_in_level(
    rng: &mut impl Rng,
    n: usize,
    len: usize,
    level: &BigInt,
) -> ElemWord {
    let ring = QuotRing::base_ring(crate::exactring::BaseRing::Int);
    let mut factors = Vec::with_capacity(len);
    for _ in 0..len {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t = RingElem::int(BigInt::from(rng.gen_range(-2i64..=2)) * level);
        factors.push(ElemFactor { i, j, t });
    }
    ElemWord::new(ring, n, factors).unwrap()
}

fn siegel_factor(k: usize, s: &[Vec<i64>], upper: bool, scale: &BigInt) -> crate::matgroup::RMatrix {
    let ring = QuotRing::base_ring(crate::exactring::BaseRing::Int);
    crate::matgroup::RMatrix::from_fn(ring, 2 * k, 2 * k, |r, c| {
        let mut v = if r == c { BigInt::from(1) } else { BigInt::from(0) };
        if upper && r < k && c >= k {
            v += BigInt::from(s[r][c - k]) * scale;
        }
        if !upper && r >= k && c < k {
            v += BigInt::from(s[r - k][c]) * scale;
        }
        RingElem::int(v)
    })
    .unwrap()
}

/// A random product of integral Siegel unipotent factors: a symplectic
/// matrix over Z.
pub fn random_sp_matrix(rng: &mut impl Rng, k: usize, len: usize) -> crate::matgroup::RMatrix {
    random_sp_matrix_in_level(rng, k, len, &BigInt::from(1))
}

/// As `random_sp_matrix`, with every Siegel block a multiple of the level:
/// the product is symplectic and congruent to the identity modulo it.
pub fn random_sp_matrix_in_level(
    rng: &mut impl Rng,
    k: usize,
    len: usize,
    level: &BigInt,
) -> crate::matgroup::RMatrix {
    let ring = QuotRing::base_ring(crate::exactring::BaseRing::Int);
    let mut acc = crate::matgroup::RMatrix::identity(ring, 2 * k);
    for _ in 0..len {
        let mut s = vec![vec![0i64; k]; k];
        for a in 0..k {
            for b in 0..=a {
                let v = rng.gen_range(-2i64..=2);
                s[a][b] = v;
                s[b][a] = v;
            }
        }
        let factor = siegel_factor(k, &s, rng.gen(), level);
        acc = acc.mul(&factor).unwrap();
    }
    acc
}
