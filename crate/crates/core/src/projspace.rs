//! Weighted generalized projective spaces over finite quotients:
//! membership, weighted equivalence, canonical representatives, and
//! enumeration.
//!
//! A class is an orbit of a unital tuple under the unit scaling
//! a_i -> lambda^{m_i} a_i modulo the ideal. The unit ideal carries a
//! single distinguished class.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactring::{gcd_with_coeffs, Ideal, QuotRing, RingElem};
use crate::lifting::lift_unital_residue;

/// Positive weights (m_0, ..., m_k), one per tuple coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::InvalidArgument(
                "weights must be positive and nonempty".into(),
            ));
        }
        Ok(WeightVector(weights))
    }

    pub fn ones(len: usize) -> Self {
        WeightVector(vec![1; len])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A point of a weighted projective space: an equivalence class with a
/// distinguished representative tuple over the base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjPoint {
    /// The single distinguished class of the unit ideal.
    Singleton { ideal: Ideal },
    Class {
        ideal: Ideal,
        weights: WeightVector,
        rep: Vec<RingElem>,
    },
}

impl ProjPoint {
    pub fn ideal(&self) -> &Ideal {
        match self {
            ProjPoint::Singleton { ideal } => ideal,
            ProjPoint::Class { ideal, .. } => ideal,
        }
    }

    pub fn rep(&self) -> Option<&[RingElem]> {
        match self {
            ProjPoint::Singleton { .. } => None,
            ProjPoint::Class { rep, .. } => Some(rep),
        }
    }
}

/// True iff the entries generate the unit ideal of the base ring
/// (over Z: gcd of entries is 1).
pub fn is_unital_tuple(tuple: &[RingElem]) -> Result<bool> {
    if tuple.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (g, _) = gcd_with_coeffs(tuple)?;
    Ok(g.is_base_unit())
}

/// True iff the entries together with the ideal generate the unit ideal,
/// i.e. the tuple is the reduction of a unital tuple over the base ring.
pub fn is_unital_mod(ideal: &Ideal, tuple: &[RingElem]) -> Result<bool> {
    if tuple.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut with_modulus = tuple.to_vec();
    with_modulus.push(ideal.generator().clone());
    let (g, _) = gcd_with_coeffs(&with_modulus)?;
    Ok(g.is_base_unit())
}

fn effective_weights(q: &QuotRing, weights: &WeightVector) -> Result<Vec<u64>> {
    // lambda^m depends only on m modulo the exponent of the unit group
    let exp = q
        .unit_group_exponent()?
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("unit group exponent too large".into()))?;
    Ok(weights
        .as_slice()
        .iter()
        .map(|m| {
            let r = m % exp;
            if r == 0 {
                exp
            } else {
                r
            }
        })
        .collect())
}

fn scale_tuple(q: &QuotRing, lambda: &RingElem, weights: &[u64], tuple: &[RingElem]) -> Vec<RingElem> {
    tuple
        .iter()
        .zip(weights)
        .map(|(a, m)| q.mul(&q.pow(lambda, *m), a))
        .collect()
}

/// Weighted projective equivalence: true iff some unit lambda of R/I has
/// a_i = lambda^{m_i} b_i mod I for every coordinate. Always true for the
/// unit ideal.
pub fn proj_equiv(
    a: &[RingElem],
    b: &[RingElem],
    ideal: &Ideal,
    weights: &WeightVector,
) -> Result<bool> {
    if a.len() != b.len() || a.len() != weights.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} coordinates", weights.len()),
            got: format!("{} and {}", a.len(), b.len()),
        });
    }
    if ideal.is_unit_ideal() {
        return Ok(true);
    }
    let q = QuotRing::new(ideal.clone());
    if !q.is_finite() {
        return Err(Error::InfiniteQuotient);
    }
    if !is_unital_mod(ideal, a)? || !is_unital_mod(ideal, b)? {
        return Err(Error::NotUnital);
    }
    let a: Vec<RingElem> = a.iter().map(|e| q.reduce(e)).collect();
    let b: Vec<RingElem> = b.iter().map(|e| q.reduce(e)).collect();
    let weights = effective_weights(&q, weights)?;
    for lambda in q.unit_list()? {
        if scale_tuple(&q, &lambda, &weights, &b) == a {
            return Ok(true);
        }
    }
    Ok(false)
}

fn orbit_minimum(
    q: &QuotRing,
    weights: &[u64],
    tuple: &[RingElem],
) -> Result<Vec<RingElem>> {
    let mut best: Option<Vec<RingElem>> = None;
    for lambda in q.unit_list()? {
        let scaled = scale_tuple(q, &lambda, weights, tuple);
        if best.as_ref().is_none_or(|b| &scaled < b) {
            best = Some(scaled);
        }
    }
    Ok(best.expect("unit list nonempty"))
}

/// The canonical representative of a point: the lexicographically smallest
/// residue tuple of the orbit, lifted to a unital tuple over the base ring.
pub fn canon(p: &ProjPoint) -> Result<ProjPoint> {
    match p {
        ProjPoint::Singleton { ideal } => Ok(ProjPoint::Singleton {
            ideal: ideal.clone(),
        }),
        ProjPoint::Class {
            ideal,
            weights,
            rep,
        } => {
            if ideal.is_unit_ideal() {
                return Ok(ProjPoint::Singleton {
                    ideal: ideal.clone(),
                });
            }
            let q = QuotRing::new(ideal.clone());
            if !q.is_finite() {
                return Err(Error::InfiniteQuotient);
            }
            if !is_unital_mod(ideal, rep)? {
                return Err(Error::NotUnital);
            }
            let reduced: Vec<RingElem> = rep.iter().map(|e| q.reduce(e)).collect();
            let weights_eff = effective_weights(&q, weights)?;
            let min = orbit_minimum(&q, &weights_eff, &reduced)?;
            let lifted = lift_unital_residue(&q, &min)?;
            Ok(ProjPoint::Class {
                ideal: ideal.clone(),
                weights: weights.clone(),
                rep: lifted,
            })
        }
    }
}

/// Enumerates one canonical representative per class of
/// PF^{k,(m_0..m_k)}_I over a finite proper ideal, sorted by representative.
pub fn enumerate_pf(k: usize, weights: &WeightVector, ideal: &Ideal) -> Result<Vec<ProjPoint>> {
    if weights.len() != k + 1 {
        return Err(Error::ShapeMismatch {
            expected: format!("{} weights", k + 1),
            got: format!("{}", weights.len()),
        });
    }
    if ideal.is_unit_ideal() {
        return Err(Error::InvalidArgument(
            "enumeration requires a proper ideal".into(),
        ));
    }
    let q = QuotRing::new(ideal.clone());
    if !q.is_finite() {
        return Err(Error::InfiniteQuotient);
    }
    let elems = q.elements()?;
    let weights_eff = effective_weights(&q, weights)?;
    let mut minima = std::collections::BTreeSet::new();
    let mut odometer = vec![0usize; k + 1];
    'outer: loop {
        let tuple: Vec<RingElem> = odometer.iter().map(|i| elems[*i].clone()).collect();
        if is_unital_mod(ideal, &tuple)? {
            minima.insert(orbit_minimum(&q, &weights_eff, &tuple)?);
        }
        let mut pos = k + 1;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < elems.len() {
                break;
            }
            odometer[pos] = 0;
        }
    }
    minima
        .into_iter()
        .map(|min| {
            let lifted = lift_unital_residue(&q, &min)?;
            Ok(ProjPoint::Class {
                ideal: ideal.clone(),
                weights: weights.clone(),
                rep: lifted,
            })
        })
        .collect()
}

/// Number of classes of PF^{k,w}_I.
pub fn pf_class_count(k: usize, weights: &WeightVector, ideal: &Ideal) -> Result<usize> {
    Ok(enumerate_pf(k, weights, ideal)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    fn tuple(vals: &[i64]) -> Vec<RingElem> {
        vals.iter().map(|v| z(*v)).collect()
    }

    #[test]
    fn unital_examples() {
        assert!(is_unital_tuple(&tuple(&[1, 0, 0])).unwrap());
        assert!(!is_unital_tuple(&tuple(&[4, 6])).unwrap());
        // {x, 3x^2 - 1} is unital over F_5[x]
        let a = RingElem::poly(5, &[0, 1]).unwrap();
        let b = RingElem::poly(5, &[-1, 0, 3]).unwrap();
        assert!(is_unital_tuple(&[a, b]).unwrap());
    }

    #[test]
    fn equiv_examples() {
        let w = WeightVector::ones(2);
        let i5 = Ideal::from_int(5);
        assert!(proj_equiv(&tuple(&[1, 2]), &tuple(&[1, 2]), &i5, &w).unwrap());
        assert!(proj_equiv(&tuple(&[1, 2]), &tuple(&[2, 4]), &i5, &w).unwrap());
        assert!(!proj_equiv(&tuple(&[1, 2]), &tuple(&[2, 1]), &i5, &w).unwrap());
    }

    #[test]
    fn equiv_unit_ideal_always_true() {
        let w = WeightVector::ones(2);
        let unit = Ideal::from_int(1);
        assert!(proj_equiv(&tuple(&[1, 2]), &tuple(&[40, 7]), &unit, &w).unwrap());
    }

    #[test]
    fn equiv_infinite_rejected() {
        let w = WeightVector::ones(2);
        let zero = Ideal::from_int(0);
        assert!(matches!(
            proj_equiv(&tuple(&[1, 2]), &tuple(&[1, 2]), &zero, &w),
            Err(Error::InfiniteQuotient)
        ));
    }

    #[test]
    fn canon_examples() {
        let w = WeightVector::ones(2);
        let p = ProjPoint::Class {
            ideal: Ideal::from_int(5),
            weights: w.clone(),
            rep: tuple(&[2, 4]),
        };
        let c = canon(&p).unwrap();
        assert_eq!(c.rep().unwrap(), tuple(&[1, 2]).as_slice());

        let p = ProjPoint::Class {
            ideal: Ideal::from_int(1),
            weights: w.clone(),
            rep: tuple(&[1, 0]),
        };
        assert!(matches!(canon(&p).unwrap(), ProjPoint::Singleton { .. }));

        let p = ProjPoint::Class {
            ideal: Ideal::from_int(3),
            weights: w,
            rep: tuple(&[0, 1]),
        };
        let c = canon(&p).unwrap();
        assert_eq!(c.rep().unwrap(), tuple(&[0, 1]).as_slice());
    }

    #[test]
    fn canon_idempotent_and_consistent_with_equiv() {
        let w = WeightVector::ones(2);
        let i5 = Ideal::from_int(5);
        let pts = enumerate_pf(1, &w, &i5).unwrap();
        // all pairs: equal canon iff equivalent
        for a in &pts {
            for b in &pts {
                let equiv = proj_equiv(a.rep().unwrap(), b.rep().unwrap(), &i5, &w).unwrap();
                assert_eq!(equiv, a == b);
            }
            let again = canon(a).unwrap();
            assert_eq!(&again, a);
        }
    }

    #[test]
    fn enumerate_counts_small() {
        let w = WeightVector::ones(2);
        assert_eq!(enumerate_pf(1, &w, &Ideal::from_int(2)).unwrap().len(), 3);
        assert_eq!(enumerate_pf(1, &w, &Ideal::from_int(3)).unwrap().len(), 4);
        let w12 = WeightVector::new(vec![1, 2]).unwrap();
        assert_eq!(enumerate_pf(1, &w12, &Ideal::from_int(5)).unwrap().len(), 7);
    }

    #[test]
    fn enumerate_matches_projective_space_formula() {
        // weights all 1, prime modulus: (p^{k+1} - 1) / (p - 1)
        for p in [2u64, 3, 5] {
            for k in [1usize, 2] {
                let w = WeightVector::ones(k + 1);
                let count = enumerate_pf(k, &w, &Ideal::from_int(p as i64)).unwrap().len();
                let expected = ((p.pow((k + 1) as u32) - 1) / (p - 1)) as usize;
                assert_eq!(count, expected, "p={p}, k={k}");
            }
        }
    }

    #[test]
    fn equivalence_relation_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        fn sample(
            rng: &mut rand_chacha::ChaCha8Rng,
            ideal: &Ideal,
            len: usize,
            n: i64,
        ) -> Vec<RingElem> {
            loop {
                let t: Vec<RingElem> = (0..len).map(|_| z(rng.gen_range(0..n))).collect();
                if is_unital_mod(ideal, &t).unwrap() {
                    return t;
                }
            }
        }
        let configs: [(i64, Vec<u64>); 3] =
            [(6, vec![1, 2, 1]), (5, vec![1, 1]), (4, vec![2, 3])];
        for (n, ws) in configs {
            let ideal = Ideal::from_int(n);
            let len = ws.len();
            let w = WeightVector::new(ws).unwrap();
            let q = QuotRing::new(ideal.clone());
            let units = q.unit_list().unwrap();
            for _ in 0..500 {
                let a = sample(&mut rng, &ideal, len, n);
                let b = sample(&mut rng, &ideal, len, n);
                let c = sample(&mut rng, &ideal, len, n);
                // reflexive
                assert!(proj_equiv(&a, &a, &ideal, &w).unwrap());
                // symmetric
                assert_eq!(
                    proj_equiv(&a, &b, &ideal, &w).unwrap(),
                    proj_equiv(&b, &a, &ideal, &w).unwrap()
                );
                // transitive: force an equivalent pair by explicit scaling
                let lambda = &units[rng.gen_range(0..units.len())];
                let weights_eff = effective_weights(&q, &w).unwrap();
                let b2 = scale_tuple(&q, lambda, &weights_eff, &a);
                assert!(proj_equiv(&a, &b2, &ideal, &w).unwrap());
                if proj_equiv(&b2, &c, &ideal, &w).unwrap() {
                    assert!(proj_equiv(&a, &c, &ideal, &w).unwrap());
                }
            }
        }
    }

    #[test]
    fn weight_reduction_leaves_equiv_unchanged() {
        let ideal = Ideal::from_int(5);
        let q = QuotRing::new(ideal.clone());
        let exp = q.unit_group_exponent().unwrap();
        let exp = num_traits::ToPrimitive::to_u64(&exp).unwrap(); // 4
        let w_big = WeightVector::new(vec![1 + exp, 2 + 3 * exp]).unwrap();
        let w_small = WeightVector::new(vec![1, 2]).unwrap();
        for a0 in 0..5 {
            for a1 in 0..5 {
                for b0 in 0..5 {
                    for b1 in 0..5 {
                        let a = tuple(&[a0, a1]);
                        let b = tuple(&[b0, b1]);
                        if !is_unital_mod(&ideal, &a).unwrap() || !is_unital_mod(&ideal, &b).unwrap()
                        {
                            continue;
                        }
                        assert_eq!(
                            proj_equiv(&a, &b, &ideal, &w_big).unwrap(),
                            proj_equiv(&a, &b, &ideal, &w_small).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_rejects_unit_and_zero_ideals() {
        let w = WeightVector::ones(2);
        assert!(enumerate_pf(1, &w, &Ideal::from_int(1)).is_err());
        assert!(matches!(
            enumerate_pf(1, &w, &Ideal::from_int(0)),
            Err(Error::InfiniteQuotient)
        ));
    }

    #[test]
    fn enumerate_reps_are_globally_unital() {
        let w = WeightVector::ones(3);
        for pt in enumerate_pf(2, &w, &Ideal::from_int(6)).unwrap() {
            assert!(is_unital_tuple(pt.rep().unwrap()).unwrap());
        }
    }
}
