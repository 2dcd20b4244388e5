//! Exact arithmetic in the two supported Euclidean base rings (arbitrary
//! precision integers and univariate polynomials over a prime field) and
//! their principal quotient rings.
//!
//! Every value is immutable after construction and every operation is a
//! pure function, so the whole module is safe to use concurrently.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// One of the two supported Euclidean base rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    /// The ring of integers Z.
    Int,
    /// The polynomial ring F_p[x] for a prime p.
    PolyMod { p: u64 },
}

impl BaseRing {
    /// Builds F_p[x], rejecting composite characteristics.
    pub fn poly_over(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(BaseRing::PolyMod { p })
    }

    pub fn zero(&self) -> RingElem {
        match self {
            BaseRing::Int => RingElem {
                ring: *self,
                value: Value::Int(BigInt::zero()),
            },
            BaseRing::PolyMod { .. } => RingElem {
                ring: *self,
                value: Value::Poly(Vec::new()),
            },
        }
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    /// The canonical image of an integer constant in this ring.
    pub fn from_i64(&self, n: i64) -> RingElem {
        match self {
            BaseRing::Int => RingElem {
                ring: *self,
                value: Value::Int(BigInt::from(n)),
            },
            BaseRing::PolyMod { p } => {
                let c = n.rem_euclid(*p as i64) as u64;
                RingElem {
                    ring: *self,
                    value: Value::Poly(trim(vec![c])),
                }
            }
        }
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            BaseRing::Int => None,
            BaseRing::PolyMod { p } => Some(*p),
        }
    }
}

/// Underlying value of a ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    /// Coefficients mod p, lowest degree first, no trailing zeros.
    Poly(Vec<u64>),
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    // Counting order: integers numerically, polynomials by degree then
    // leading coefficients. Matches the enumeration order of quotients.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Poly(a), Value::Poly(b)) => a.len().cmp(&b.len()).then_with(|| {
                for i in (0..a.len()).rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }),
            (Value::Int(_), Value::Poly(_)) => Ordering::Less,
            (Value::Poly(_), Value::Int(_)) => Ordering::Greater,
        }
    }
}

fn trim(mut cs: Vec<u64>) -> Vec<u64> {
    while cs.last() == Some(&0) {
        cs.pop();
    }
    cs
}

/// An element of a base ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem {
    ring: BaseRing,
    value: Value,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{}", n),
            Value::Poly(cs) => {
                if cs.is_empty() {
                    return write!(f, "0");
                }
                let terms: Vec<String> = cs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| match i {
                        0 => format!("{}", c),
                        1 if *c == 1 => "x".to_string(),
                        1 => format!("{}x", c),
                        _ if *c == 1 => format!("x^{}", i),
                        _ => format!("{}x^{}", c, i),
                    })
                    .collect();
                write!(f, "{}", terms.join("+"))
            }
        }
    }
}

impl RingElem {
    pub fn int(n: impl Into<BigInt>) -> Self {
        RingElem {
            ring: BaseRing::Int,
            value: Value::Int(n.into()),
        }
    }

    /// A polynomial over F_p from signed coefficients, lowest degree first.
    pub fn poly(p: u64, coeffs: &[i64]) -> Result<Self> {
        let ring = BaseRing::poly_over(p)?;
        let cs = coeffs
            .iter()
            .map(|c| c.rem_euclid(p as i64) as u64)
            .collect();
        Ok(RingElem {
            ring,
            value: Value::Poly(trim(cs)),
        })
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        let ring = BaseRing::poly_over(p)?;
        let cs = coeffs.into_iter().map(|c| c % p).collect();
        Ok(RingElem {
            ring,
            value: Value::Poly(trim(cs)),
        })
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn as_int(&self) -> &BigInt {
        match &self.value {
            Value::Int(n) => n,
            Value::Poly(_) => panic!("polynomial element where integer expected"),
        }
    }

    pub fn as_coeffs(&self) -> &[u64] {
        match &self.value {
            Value::Poly(cs) => cs,
            Value::Int(_) => panic!("integer element where polynomial expected"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_zero(),
            Value::Poly(cs) => cs.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_one(),
            Value::Poly(cs) => cs == &[1],
        }
    }

    /// Degree of a polynomial; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        match &self.value {
            Value::Poly(cs) => {
                if cs.is_empty() {
                    None
                } else {
                    Some(cs.len() - 1)
                }
            }
            Value::Int(_) => panic!("degree of an integer"),
        }
    }

    fn same_ring(&self, other: &RingElem) {
        assert_eq!(self.ring, other.ring, "mixed base rings in arithmetic");
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        self.same_ring(other);
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => RingElem::int(a + b),
            (Value::Poly(a), Value::Poly(b)) => {
                let p = self.ring.characteristic().unwrap();
                let n = a.len().max(b.len());
                let cs = (0..n)
                    .map(|i| {
                        let x = a.get(i).copied().unwrap_or(0);
                        let y = b.get(i).copied().unwrap_or(0);
                        (x + y) % p
                    })
                    .collect();
                RingElem {
                    ring: self.ring,
                    value: Value::Poly(trim(cs)),
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElem {
        match &self.value {
            Value::Int(n) => RingElem::int(-n),
            Value::Poly(cs) => {
                let p = self.ring.characteristic().unwrap();
                let out = cs.iter().map(|c| (p - c) % p).collect();
                RingElem {
                    ring: self.ring,
                    value: Value::Poly(trim(out)),
                }
            }
        }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        self.same_ring(other);
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => RingElem::int(a * b),
            (Value::Poly(a), Value::Poly(b)) => {
                let p = self.ring.characteristic().unwrap() as u128;
                if a.is_empty() || b.is_empty() {
                    return self.ring.zero();
                }
                let mut cs = vec![0u64; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        let prod = (*x as u128 * *y as u128) % p;
                        cs[i + j] = ((cs[i + j] as u128 + prod) % p) as u64;
                    }
                }
                RingElem {
                    ring: self.ring,
                    value: Value::Poly(trim(cs)),
                }
            }
            _ => unreachable!(),
        }
    }

    /// Euclidean division with canonical remainder: 0 <= r < |d| over Z,
    /// deg r < deg d over F_p[x].
    pub fn divrem(&self, d: &RingElem) -> Result<(RingElem, RingElem)> {
        self.same_ring(d);
        if d.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        match (&self.value, &d.value) {
            (Value::Int(a), Value::Int(b)) => {
                let (mut q, mut r) = a.div_rem(b);
                if r.is_negative() {
                    if b.is_positive() {
                        r += b;
                        q -= 1;
                    } else {
                        r -= b;
                        q += 1;
                    }
                }
                Ok((RingElem::int(q), RingElem::int(r)))
            }
            (Value::Poly(a), Value::Poly(b)) => {
                let p = self.ring.characteristic().unwrap();
                let mut rem = a.clone();
                let db = b.len() - 1;
                let lead_inv = inv_mod_u64(b[db], p).expect("leading coefficient invertible");
                let mut quot = vec![0u64; a.len().saturating_sub(db)];
                while rem.len() > db {
                    let dr = rem.len() - 1;
                    let c = mul_mod(rem[dr], lead_inv, p);
                    quot[dr - db] = c;
                    for (i, bc) in b.iter().enumerate() {
                        let sub = mul_mod(c, *bc, p);
                        let idx = dr - db + i;
                        rem[idx] = (rem[idx] + p - sub) % p;
                    }
                    rem = trim(rem);
                }
                Ok((
                    RingElem {
                        ring: self.ring,
                        value: Value::Poly(trim(quot)),
                    },
                    RingElem {
                        ring: self.ring,
                        value: Value::Poly(rem),
                    },
                ))
            }
            _ => unreachable!(),
        }
    }

    /// True for units of the base ring: +-1 in Z, nonzero constants in F_p[x].
    pub fn is_base_unit(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.abs().is_one(),
            Value::Poly(cs) => cs.len() == 1,
        }
    }

    /// Inverse of a base-ring unit.
    pub fn base_unit_inverse(&self) -> Result<RingElem> {
        if !self.is_base_unit() {
            return Err(Error::NotAUnit {
                elem: self.to_string(),
            });
        }
        match &self.value {
            Value::Int(_) => Ok(self.clone()),
            Value::Poly(cs) => {
                let p = self.ring.characteristic().unwrap();
                let c = inv_mod_u64(cs[0], p).unwrap();
                Ok(RingElem {
                    ring: self.ring,
                    value: Value::Poly(vec![c]),
                })
            }
        }
    }

    /// The canonical associate g of self together with the unit u with
    /// self * u = g: non-negative over Z, monic over F_p[x].
    pub fn canonical_assoc(&self) -> (RingElem, RingElem) {
        match &self.value {
            Value::Int(n) => {
                if n.is_negative() {
                    (self.neg(), RingElem::int(-1))
                } else {
                    (self.clone(), RingElem::int(1))
                }
            }
            Value::Poly(cs) => {
                if cs.is_empty() {
                    return (self.clone(), self.ring.one());
                }
                let p = self.ring.characteristic().unwrap();
                let u = inv_mod_u64(*cs.last().unwrap(), p).unwrap();
                let unit = RingElem {
                    ring: self.ring,
                    value: Value::Poly(vec![u]),
                };
                (self.mul(&unit), unit)
            }
        }
    }

    /// Euclidean size used for pivot selection: |a| over Z, degree over
    /// F_p[x]. None for zero.
    pub fn euclid_size(&self) -> Option<BigInt> {
        if self.is_zero() {
            return None;
        }
        match &self.value {
            Value::Int(n) => Some(n.abs()),
            Value::Poly(cs) => Some(BigInt::from(cs.len() - 1)),
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod_u64(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        t -= q * new_t;
        std::mem::swap(&mut t, &mut new_t);
        r -= q * new_r;
        std::mem::swap(&mut r, &mut new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|s| s <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Extended gcd. Returns (g, x, y) with a*x + b*y = g and g canonical
/// (non-negative over Z, monic over F_p[x]). (0, 0) maps to (0, 0, 0).
pub fn egcd(a: &RingElem, b: &RingElem) -> Result<(RingElem, RingElem, RingElem)> {
    if a.ring != b.ring {
        return Err(Error::MixedRings);
    }
    if a.is_zero() && b.is_zero() {
        let z = a.ring.zero();
        return Ok((z.clone(), z.clone(), z));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (a.ring.one(), a.ring.zero());
    let (mut t0, mut t1) = (a.ring.zero(), a.ring.one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let (g, u) = r0.canonical_assoc();
    Ok((g, s0.mul(&u), t0.mul(&u)))
}

/// gcd of a list together with Bezout coefficients: sum c_i * e_i = g.
pub fn gcd_with_coeffs(elems: &[RingElem]) -> Result<(RingElem, Vec<RingElem>)> {
    if elems.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ring = elems[0].ring;
    for e in elems {
        if e.ring != ring {
            return Err(Error::MixedRings);
        }
    }
    let (mut g, u) = elems[0].canonical_assoc();
    let mut coeffs = vec![u];
    for e in &elems[1..] {
        let (g2, x, y) = egcd(&g, e)?;
        for c in coeffs.iter_mut() {
            *c = c.mul(&x);
        }
        coeffs.push(y);
        g = g2;
    }
    Ok((g, coeffs))
}

/// A principal ideal of a base ring, stored with a canonical generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    ring: BaseRing,
    generator: RingElem,
}

impl Ideal {
    pub fn new(generator: RingElem) -> Self {
        let ring = generator.ring;
        let (g, _) = generator.canonical_assoc();
        Ideal { ring, generator: g }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Ideal::new(RingElem::int(n))
    }

    pub fn zero(ring: BaseRing) -> Self {
        Ideal::new(ring.zero())
    }

    pub fn unit(ring: BaseRing) -> Self {
        Ideal::new(ring.one())
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn generator(&self) -> &RingElem {
        &self.generator
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generator.is_one()
    }

    pub fn contains(&self, e: &RingElem) -> Result<bool> {
        if e.ring != self.ring {
            return Err(Error::MixedRings);
        }
        if self.is_zero() {
            return Ok(e.is_zero());
        }
        let (_, r) = e.divrem(&self.generator)?;
        Ok(r.is_zero())
    }

    /// Product ideal.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if other.ring != self.ring {
            return Err(Error::MixedRings);
        }
        Ok(Ideal::new(self.generator.mul(&other.generator)))
    }
}

/// True iff I + J is the unit ideal, i.e. gcd of the generators is a unit.
pub fn is_comaximal(i: &Ideal, j: &Ideal) -> Result<bool> {
    if i.ring() != j.ring() {
        return Err(Error::MixedRings);
    }
    let (g, _, _) = egcd(i.generator(), j.generator())?;
    Ok(g.is_base_unit())
}

/// A quotient ring R/<g> of a base ring by a principal ideal. The zero
/// modulus encodes the base ring itself (an infinite quotient).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotRing {
    base: BaseRing,
    modulus: Ideal,
    finite: bool,
    size: Option<BigInt>,
}

impl QuotRing {
    pub fn new(modulus: Ideal) -> Self {
        let base = modulus.ring();
        let gen = modulus.generator();
        let (finite, size) = if gen.is_zero() {
            (false, None)
        } else {
            match gen.value() {
                Value::Int(n) => (true, Some(n.abs())),
                Value::Poly(cs) => {
                    let p = base.characteristic().unwrap();
                    (true, Some(BigInt::from(p).pow((cs.len() - 1) as u32)))
                }
            }
        };
        QuotRing {
            base,
            modulus,
            finite,
            size,
        }
    }

    /// The base ring viewed as the quotient by the zero ideal.
    pub fn base_ring(base: BaseRing) -> Self {
        QuotRing::new(Ideal::zero(base))
    }

    pub fn integers_mod(n: impl Into<BigInt>) -> Self {
        QuotRing::new(Ideal::from_int(n))
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    pub fn is_base(&self) -> bool {
        self.modulus.is_zero()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.modulus.is_unit_ideal()
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    pub fn size(&self) -> Option<&BigInt> {
        self.size.as_ref()
    }

    /// Canonical representative of an element's residue class.
    pub fn reduce(&self, e: &RingElem) -> RingElem {
        assert_eq!(e.ring(), self.base, "mixed base rings in reduction");
        if self.modulus.is_zero() {
            return e.clone();
        }
        let (_, r) = e.divrem(self.modulus.generator()).unwrap();
        r
    }

    pub fn zero(&self) -> RingElem {
        self.base.zero()
    }

    pub fn one(&self) -> RingElem {
        self.reduce(&self.base.one())
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.reduce(&a.add(b))
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.reduce(&a.sub(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.reduce(&a.mul(b))
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        self.reduce(&a.neg())
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        let mut base = self.reduce(a);
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a residue, if it is a unit.
    pub fn inv(&self, a: &RingElem) -> Option<RingElem> {
        if self.is_zero_ring() {
            // zero ring: the single element is its own inverse
            return Some(self.zero());
        }
        if self.modulus.is_zero() {
            if a.is_base_unit() {
                return Some(a.base_unit_inverse().unwrap());
            }
            return None;
        }
        let (g, x, _) = egcd(a, self.modulus.generator()).ok()?;
        if g.is_one() {
            Some(self.reduce(&x))
        } else {
            None
        }
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        self.inv(a).is_some()
    }

    /// All canonical representatives in ascending canonical order.
    pub fn elements(&self) -> Result<Vec<RingElem>> {
        if !self.finite {
            return Err(Error::InfiniteQuotient);
        }
        if self.is_zero_ring() {
            return Ok(vec![self.zero()]);
        }
        let size = self
            .size
            .as_ref()
            .unwrap()
            .to_u64()
            .ok_or(Error::GuardExceeded {
                checked: 0,
                cap: u64::MAX as u128,
            })?;
        match self.base {
            BaseRing::Int => Ok((0..size).map(RingElem::int).collect()),
            BaseRing::PolyMod { p } => {
                let deg = self.modulus.generator().as_coeffs().len() - 1;
                let mut out = Vec::with_capacity(size as usize);
                for idx in 0..size {
                    let mut digits = Vec::with_capacity(deg);
                    let mut v = idx;
                    for _ in 0..deg {
                        digits.push(v % p);
                        v /= p;
                    }
                    out.push(RingElem {
                        ring: self.base,
                        value: Value::Poly(trim(digits)),
                    });
                }
                Ok(out)
            }
        }
    }

    /// Exactly the units of a finite quotient, ascending canonical order.
    pub fn unit_list(&self) -> Result<Vec<RingElem>> {
        let elems = self.elements()?;
        Ok(elems.into_iter().filter(|e| self.is_unit(e)).collect())
    }

    /// Exponent of the unit group (lcm of the orders of all units).
    pub fn unit_group_exponent(&self) -> Result<BigInt> {
        let units = self.unit_list()?;
        let mut exp = BigInt::one();
        for u in &units {
            let mut ord = BigInt::one();
            let mut acc = u.clone();
            while !acc.is_one() && !self.is_zero_ring() {
                acc = self.mul(&acc, u);
                ord += 1;
            }
            exp = exp.lcm(&ord);
        }
        Ok(exp)
    }
}

/// A residue class in a quotient ring, stored by canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Residue {
    parent: QuotRing,
    rep: RingElem,
}

impl Residue {
    pub fn new(parent: QuotRing, e: &RingElem) -> Self {
        let rep = parent.reduce(e);
        Residue { parent, rep }
    }

    pub fn from_int(n: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Self {
        let q = QuotRing::integers_mod(modulus);
        Residue::new(q, &RingElem::int(n))
    }

    pub fn parent(&self) -> &QuotRing {
        &self.parent
    }

    pub fn rep(&self) -> &RingElem {
        &self.rep
    }

    /// True iff the residue has a multiplicative inverse in its quotient.
    pub fn is_unit(&self) -> bool {
        self.parent.is_unit(&self.rep)
    }
}

/// Distinct prime factors of |n| by trial division (desk scale).
pub(crate) fn distinct_prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n = &n / &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// CRT solution for pairwise co-prime integer moduli.
pub(crate) fn crt_int(pairs: &[(BigInt, BigInt)]) -> BigInt {
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in pairs {
        // acc + modulus * x = r (mod m)
        let (g, inv, _) = egcd(&RingElem::int(modulus.clone()), &RingElem::int(m.clone())).unwrap();
        debug_assert!(g.is_one());
        let x = ((r - &acc) * inv.as_int()).mod_floor(m);
        acc += &modulus * x;
        modulus *= m;
        acc = acc.mod_floor(&modulus);
    }
    acc
}

/// Combines residues with pairwise co-maximal moduli into a single residue
/// modulo the product ideal.
pub fn crt_combine(residues: &[Residue]) -> Result<Residue> {
    if residues.is_empty() {
        return Err(Error::EmptyInput);
    }
    let ring = residues[0].parent.base();
    for r in residues {
        if r.parent.base() != ring {
            return Err(Error::MixedRings);
        }
    }
    for i in 0..residues.len() {
        for j in i + 1..residues.len() {
            if !is_comaximal(residues[i].parent.modulus(), residues[j].parent.modulus())? {
                return Err(Error::NotComaximal {
                    left: residues[i].parent.modulus().generator().to_string(),
                    right: residues[j].parent.modulus().generator().to_string(),
                });
            }
        }
    }
    let mut acc = residues[0].clone();
    for r in &residues[1..] {
        let m1 = acc.parent.modulus().generator().clone();
        let m2 = r.parent.modulus().generator().clone();
        let (g, x, _) = egcd(&m1, &m2)?;
        debug_assert!(g.is_base_unit());
        // g is canonical, hence exactly 1 for co-maximal moduli
        let combined_modulus = Ideal::new(m1.mul(&m2));
        let q = QuotRing::new(combined_modulus);
        // acc + m1 * x * (target - acc) = target mod m2, = acc mod m1
        let diff = r.rep.sub(&acc.rep);
        let lift = acc.rep.add(&m1.mul(&x).mul(&diff));
        acc = Residue::new(q, &lift);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: i64) -> RingElem {
        RingElem::int(n)
    }

    #[test]
    fn egcd_integers() {
        let (g, x, y) = egcd(&z(4), &z(7)).unwrap();
        assert_eq!(g, z(1));
        assert_eq!(x, z(2));
        assert_eq!(y, z(-1));
        // Bezout by substitution
        assert_eq!(z(4).mul(&x).add(&z(7).mul(&y)), z(1));
    }

    #[test]
    fn egcd_zero_zero() {
        let (g, x, y) = egcd(&z(0), &z(0)).unwrap();
        assert_eq!((g, x, y), (z(0), z(0), z(0)));
    }

    #[test]
    fn egcd_poly_over_f5() {
        // gcd(x, 3x^2 - 1) over F_5[x] is 1
        let a = RingElem::poly(5, &[0, 1]).unwrap();
        let b = RingElem::poly(5, &[-1, 0, 3]).unwrap();
        let (g, x, y) = egcd(&a, &b).unwrap();
        assert!(g.is_one());
        assert_eq!(a.mul(&x).add(&b.mul(&y)), g);
    }

    #[test]
    fn egcd_mixed_rings_rejected() {
        let a = z(4);
        let b = RingElem::poly(5, &[1]).unwrap();
        assert!(matches!(egcd(&a, &b), Err(Error::MixedRings)));
    }

    #[test]
    fn crt_pair() {
        let r = crt_combine(&[Residue::from_int(1, 2), Residue::from_int(2, 3)]).unwrap();
        assert_eq!(r.rep(), &z(5));
        assert_eq!(r.parent().modulus().generator(), &z(6));
    }

    #[test]
    fn crt_singleton_identity() {
        let r = crt_combine(&[Residue::from_int(4, 7)]).unwrap();
        assert_eq!(r.rep(), &z(4));
        assert_eq!(r.parent().modulus().generator(), &z(7));
    }

    #[test]
    fn crt_constant_one() {
        let r = crt_combine(&[
            Residue::from_int(1, 2),
            Residue::from_int(1, 3),
            Residue::from_int(1, 5),
        ])
        .unwrap();
        assert_eq!(r.rep(), &z(1));
        assert_eq!(r.parent().modulus().generator(), &z(30));
    }

    #[test]
    fn crt_rejects_non_comaximal() {
        let err = crt_combine(&[Residue::from_int(1, 4), Residue::from_int(1, 6)]).unwrap_err();
        match err {
            Error::NotComaximal { left, right } => {
                assert_eq!((left.as_str(), right.as_str()), ("4", "6"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn crt_round_trip_small_comaximal_triples() {
        let moduli = [2i64, 3, 5, 7, 9];
        for &a in &moduli {
            for &b in &moduli {
                for &c in &moduli {
                    let ia = Ideal::from_int(a);
                    let ib = Ideal::from_int(b);
                    let ic = Ideal::from_int(c);
                    let ok = is_comaximal(&ia, &ib).unwrap()
                        && is_comaximal(&ia, &ic).unwrap()
                        && is_comaximal(&ib, &ic).unwrap();
                    if !ok {
                        continue;
                    }
                    for r0 in 0..a {
                        for r1 in 0..b {
                            for r2 in 0..c {
                                let rs = [
                                    Residue::from_int(r0, a),
                                    Residue::from_int(r1, b),
                                    Residue::from_int(r2, c),
                                ];
                                let combined = crt_combine(&rs).unwrap();
                                for r in &rs {
                                    let back = r.parent().reduce(combined.rep());
                                    assert_eq!(&back, r.rep());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_detection() {
        let q6 = QuotRing::integers_mod(6);
        assert!(Residue::new(q6.clone(), &z(5)).is_unit());
        assert!(!Residue::new(q6.clone(), &z(0)).is_unit());
        assert!(!Residue::new(q6, &z(3)).is_unit());
    }

    #[test]
    fn unit_list_z5_z6() {
        let q5 = QuotRing::integers_mod(5);
        let units: Vec<_> = q5.unit_list().unwrap();
        assert_eq!(units, vec![z(1), z(2), z(3), z(4)]);
        let q6 = QuotRing::integers_mod(6);
        assert_eq!(q6.unit_list().unwrap(), vec![z(1), z(5)]);
    }

    #[test]
    fn unit_list_f4() {
        // F_2[x]/<x^2+x+1> is the field with 4 elements
        let f = RingElem::poly(2, &[1, 1, 1]).unwrap();
        let q = QuotRing::new(Ideal::new(f));
        assert_eq!(q.unit_list().unwrap().len(), 3);
    }

    #[test]
    fn unit_list_infinite_rejected() {
        let q = QuotRing::base_ring(BaseRing::Int);
        assert!(matches!(q.unit_list(), Err(Error::InfiniteQuotient)));
    }

    #[test]
    fn comaximality() {
        assert!(is_comaximal(&Ideal::from_int(2), &Ideal::from_int(3)).unwrap());
        assert!(!is_comaximal(&Ideal::from_int(0), &Ideal::from_int(0)).unwrap());
        assert!(!is_comaximal(&Ideal::from_int(4), &Ideal::from_int(6)).unwrap());
    }

    #[test]
    fn zero_ring_conventions() {
        let q = QuotRing::integers_mod(1);
        assert!(q.is_zero_ring());
        assert_eq!(q.size().unwrap(), &BigInt::from(1));
        let e = Residue::new(q.clone(), &z(42));
        assert!(e.rep().is_zero());
        assert!(e.is_unit());
        assert_eq!(q.unit_list().unwrap().len(), 1);
    }

    fn phi_oracle(n: u64) -> u64 {
        // independent trial-division Euler phi
        (1..=n).filter(|k| gcd_u64(*k, n) == 1).count() as u64
    }

    fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }

    #[test]
    fn unit_count_matches_euler_phi() {
        for n in 2u64..=200 {
            let q = QuotRing::integers_mod(n);
            assert_eq!(
                q.unit_list().unwrap().len() as u64,
                phi_oracle(n),
                "phi mismatch at n={n}"
            );
        }
    }

    #[test]
    fn ideal_canonicalization() {
        assert_eq!(Ideal::from_int(-6).generator(), &z(6));
        let f = RingElem::poly(5, &[1, 0, 3]).unwrap(); // 3x^2 + 1
        let i = Ideal::new(f);
        // monic: x^2 + 2 (3^{-1} = 2 mod 5, 2*1 = 2)
        assert_eq!(i.generator(), &RingElem::poly(5, &[2, 0, 1]).unwrap());
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert!(matches!(RingElem::poly(4, &[1]), Err(Error::NotPrime(4))));
        assert!(BaseRing::poly_over(91).is_err()); // 7 * 13
        assert!(BaseRing::poly_over(2).is_ok());
    }

    #[test]
    fn unit_group_exponent_small() {
        let q8 = QuotRing::integers_mod(8);
        // (Z/8)^* = C2 x C2, exponent 2
        assert_eq!(q8.unit_group_exponent().unwrap(), BigInt::from(2));
        let q5 = QuotRing::integers_mod(5);
        assert_eq!(q5.unit_group_exponent().unwrap(), BigInt::from(4));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn egcd_bezout_integers(a in -100_000i64..100_000, b in -100_000i64..100_000) {
            let (g, x, y) = egcd(&z(a), &z(b)).unwrap();
            prop_assert_eq!(z(a).mul(&x).add(&z(b).mul(&y)), g.clone());
            prop_assert!(!g.as_int().is_negative());
            prop_assert_eq!(g.is_zero(), a == 0 && b == 0);
        }

        #[test]
        fn egcd_bezout_poly(a in proptest::collection::vec(0i64..5, 0..6),
                            b in proptest::collection::vec(0i64..5, 0..6)) {
            let pa = RingElem::poly(5, &a).unwrap();
            let pb = RingElem::poly(5, &b).unwrap();
            let (g, x, y) = egcd(&pa, &pb).unwrap();
            prop_assert_eq!(pa.mul(&x).add(&pb.mul(&y)), g.clone());
            if !g.is_zero() {
                // monic canonical generator
                prop_assert_eq!(*g.as_coeffs().last().unwrap(), 1u64);
            }
        }

        #[test]
        fn reduction_idempotent(v in -1_000_000i64..1_000_000, n in 2i64..10_000) {
            let q = QuotRing::integers_mod(n);
            let once = q.reduce(&z(v));
            let twice = q.reduce(&once);
            prop_assert_eq!(once, twice);
        }
    }
}
