//! JSON encoding of the public value types. Integers travel as decimal
//! strings, polynomials as coefficient arrays lowest degree first. Maps
//! are emitted with sorted keys, so identical values serialize to
//! identical bytes.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactring::{BaseRing, Ideal, QuotRing, RingElem};
use crate::lifting::{GroupKind, LiftCertificate, Verdicts};
use crate::matgroup::{ElemFactor, ElemWord, RMatrix};
use crate::projspace::{ProjPoint, WeightVector};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

pub fn base_ring_to_json(ring: &BaseRing) -> Value {
    match ring {
        BaseRing::Int => json!({"kind": "integers"}),
        BaseRing::PolyMod { p } => json!({"kind": "poly_mod_p", "p": p}),
    }
}

pub fn base_ring_from_json(v: &Value) -> Result<BaseRing> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("ring object needs a 'kind' string"))?;
    match kind {
        "integers" => Ok(BaseRing::Int),
        "poly_mod_p" => {
            let p = v
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("poly_mod_p ring needs a numeric 'p'"))?;
            BaseRing::poly_over(p)
        }
        other => Err(bad(format!("unknown ring kind '{other}'"))),
    }
}

pub fn elem_to_json(e: &RingElem) -> Value {
    match e.ring() {
        BaseRing::Int => Value::String(e.as_int().to_string()),
        BaseRing::PolyMod { .. } => {
            Value::Array(e.as_coeffs().iter().map(|c| json!(c)).collect())
        }
    }
}

pub fn elem_from_json(ring: BaseRing, v: &Value) -> Result<RingElem> {
    match (ring, v) {
        (BaseRing::Int, Value::String(s)) => {
            let n = BigInt::from_str(s).map_err(|e| bad(format!("bad integer '{s}': {e}")))?;
            Ok(RingElem::int(n))
        }
        (BaseRing::Int, Value::Number(n)) => {
            let i = n
                .as_i64()
                .ok_or_else(|| bad(format!("integer entry out of range: {n}")))?;
            Ok(RingElem::int(i))
        }
        (BaseRing::PolyMod { p }, Value::Array(arr)) => {
            let coeffs: Vec<u64> = arr
                .iter()
                .map(|c| {
                    c.as_u64()
                        .ok_or_else(|| bad("polynomial coefficients must be non-negative integers"))
                })
                .collect::<Result<_>>()?;
            RingElem::from_coeffs(p, coeffs)
        }
        _ => Err(bad("entry form does not match the ring kind")),
    }
}

pub fn ideal_to_json(i: &Ideal) -> Value {
    json!({
        "ring": base_ring_to_json(&i.ring()),
        "generator": elem_to_json(i.generator()),
    })
}

pub fn ideal_from_json(v: &Value) -> Result<Ideal> {
    let ring = base_ring_from_json(v.get("ring").ok_or_else(|| bad("ideal needs 'ring'"))?)?;
    let gen = elem_from_json(
        ring,
        v.get("generator")
            .ok_or_else(|| bad("ideal needs 'generator'"))?,
    )?;
    Ok(Ideal::new(gen))
}

pub fn quot_ring_to_json(q: &QuotRing) -> Value {
    json!({
        "base": base_ring_to_json(&q.base()),
        "modulus": elem_to_json(q.modulus().generator()),
    })
}

pub fn quot_ring_from_json(v: &Value) -> Result<QuotRing> {
    let base = base_ring_from_json(v.get("base").ok_or_else(|| bad("ring tag needs 'base'"))?)?;
    let modulus = elem_from_json(
        base,
        v.get("modulus")
            .ok_or_else(|| bad("ring tag needs 'modulus'"))?,
    )?;
    Ok(QuotRing::new(Ideal::new(modulus)))
}

pub fn matrix_to_json(m: &RMatrix) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .map(|r| Value::Array(r.iter().map(elem_to_json).collect()))
        .collect();
    json!({
        "ring": quot_ring_to_json(m.ring()),
        "rows": rows,
    })
}

pub fn matrix_from_json(v: &Value) -> Result<RMatrix> {
    let ring = quot_ring_from_json(v.get("ring").ok_or_else(|| bad("matrix needs 'ring'"))?)?;
    let rows_v = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("matrix needs a 'rows' array"))?;
    let mut rows = Vec::with_capacity(rows_v.len());
    for row in rows_v {
        let row = row
            .as_array()
            .ok_or_else(|| bad("matrix rows must be arrays"))?;
        rows.push(
            row.iter()
                .map(|e| elem_from_json(ring.base(), e))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    RMatrix::from_rows(ring, rows)
}

pub fn word_to_json(w: &ElemWord) -> Value {
    let factors: Vec<Value> = w
        .factors()
        .iter()
        .map(|f| {
            json!({
                "i": f.i,
                "j": f.j,
                "t": elem_to_json(&f.t),
            })
        })
        .collect();
    json!({
        "ring": quot_ring_to_json(w.ring()),
        "n": w.n(),
        "factors": factors,
    })
}

pub fn word_from_json(v: &Value) -> Result<ElemWord> {
    let ring = quot_ring_from_json(v.get("ring").ok_or_else(|| bad("word needs 'ring'"))?)?;
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("word needs a numeric 'n'"))? as usize;
    let factors_v = v
        .get("factors")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("word needs a 'factors' array"))?;
    let mut factors = Vec::with_capacity(factors_v.len());
    for f in factors_v {
        let i = f
            .get("i")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("factor needs 'i'"))? as usize;
        let j = f
            .get("j")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("factor needs 'j'"))? as usize;
        let t = elem_from_json(ring.base(), f.get("t").ok_or_else(|| bad("factor needs 't'"))?)?;
        factors.push(ElemFactor { i, j, t });
    }
    ElemWord::new(ring, n, factors)
}

pub fn proj_point_to_json(p: &ProjPoint) -> Value {
    match p {
        ProjPoint::Singleton { ideal } => json!({
            "singleton": true,
            "ideal": ideal_to_json(ideal),
        }),
        ProjPoint::Class {
            ideal,
            weights,
            rep,
        } => json!({
            "ideal": ideal_to_json(ideal),
            "weights": weights.as_slice(),
            "rep": rep.iter().map(elem_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn proj_point_from_json(v: &Value) -> Result<ProjPoint> {
    let ideal = ideal_from_json(v.get("ideal").ok_or_else(|| bad("point needs 'ideal'"))?)?;
    if v.get("singleton").and_then(Value::as_bool) == Some(true) {
        return Ok(ProjPoint::Singleton { ideal });
    }
    let weights: Vec<u64> = v
        .get("weights")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("point needs 'weights'"))?
        .iter()
        .map(|w| w.as_u64().ok_or_else(|| bad("weights must be positive integers")))
        .collect::<Result<_>>()?;
    let rep = v
        .get("rep")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("point needs 'rep'"))?
        .iter()
        .map(|e| elem_from_json(ideal.ring(), e))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProjPoint::Class {
        ideal,
        weights: WeightVector::new(weights)?,
        rep,
    })
}

pub fn group_kind_to_json(k: &GroupKind) -> Value {
    Value::String(k.as_str().into())
}

pub fn group_kind_from_json(v: &Value) -> Result<GroupKind> {
    match v.as_str() {
        Some("sl") => Ok(GroupKind::Sl),
        Some("sp") => Ok(GroupKind::Sp),
        _ => Err(bad("group must be 'sl' or 'sp'")),
    }
}

pub fn certificate_to_json(c: &LiftCertificate) -> Value {
    let rows: Vec<Value> = c
        .rows
        .iter()
        .map(|r| Value::Array(r.iter().map(elem_to_json).collect()))
        .collect();
    let ideals: Vec<Value> = c.ideals.iter().map(ideal_to_json).collect();
    let mut verdicts = Map::new();
    verdicts.insert("member".into(), json!(c.verdicts.group_membership));
    verdicts.insert("rows".into(), json!(c.verdicts.row_congruences));
    verdicts.insert("level".into(), json!(c.verdicts.level_congruence));
    verdicts.insert("all".into(), json!(c.verdicts.all()));
    json!({
        "group": group_kind_to_json(&c.kind),
        "k": c.k,
        "B": matrix_to_json(&c.matrix),
        "rows": rows,
        "ideals": ideals,
        "level": ideal_to_json(&c.level),
        "verdicts": Value::Object(verdicts),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<LiftCertificate> {
    let kind = group_kind_from_json(v.get("group").ok_or_else(|| bad("certificate needs 'group'"))?)?;
    let k = v
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("certificate needs numeric 'k'"))? as usize;
    let matrix = matrix_from_json(v.get("B").ok_or_else(|| bad("certificate needs 'B'"))?)?;
    let base = matrix.ring().base();
    let rows = v
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("certificate needs 'rows'"))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("certificate rows must be arrays"))?
                .iter()
                .map(|e| elem_from_json(base, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let ideals = v
        .get("ideals")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("certificate needs 'ideals'"))?
        .iter()
        .map(ideal_from_json)
        .collect::<Result<Vec<_>>>()?;
    let level = ideal_from_json(v.get("level").ok_or_else(|| bad("certificate needs 'level'"))?)?;
    let verdicts_v = v
        .get("verdicts")
        .ok_or_else(|| bad("certificate needs 'verdicts'"))?;
    let verdicts = Verdicts {
        group_membership: verdicts_v
            .get("member")
            .and_then(Value::as_bool)
            .ok_or_else(|| bad("verdicts need 'member'"))?,
        row_congruences: verdicts_v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("verdicts need 'rows'"))?
            .iter()
            .map(|b| b.as_bool().ok_or_else(|| bad("row verdicts must be booleans")))
            .collect::<Result<_>>()?,
        level_congruence: verdicts_v
            .get("level")
            .and_then(Value::as_bool)
            .ok_or_else(|| bad("verdicts need 'level'"))?,
    };
    Ok(LiftCertificate {
        kind,
        k,
        matrix,
        rows,
        ideals,
        level,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::omega_lift;

    #[test]
    fn elem_round_trip() {
        let e = RingElem::int(-42);
        let v = elem_to_json(&e);
        assert_eq!(v, Value::String("-42".into()));
        assert_eq!(elem_from_json(BaseRing::Int, &v).unwrap(), e);

        let p = RingElem::poly(5, &[1, 0, 3]).unwrap();
        let v = elem_to_json(&p);
        assert_eq!(v, json!([1, 0, 3]));
        assert_eq!(
            elem_from_json(BaseRing::poly_over(5).unwrap(), &v).unwrap(),
            p
        );
    }

    #[test]
    fn matrix_round_trip() {
        let q = QuotRing::integers_mod(7);
        let m = RMatrix::from_int_rows(q, &[&[1, 2], &[3, 4]]).unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn poly_matrix_round_trip() {
        let f = RingElem::poly(2, &[1, 1, 1]).unwrap();
        let q = QuotRing::new(Ideal::new(f));
        let x = RingElem::poly(2, &[0, 1]).unwrap();
        let m = RMatrix::from_rows(
            q.clone(),
            vec![
                vec![q.one(), x.clone()],
                vec![q.zero(), q.one()],
            ],
        )
        .unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn word_round_trip() {
        let q = QuotRing::integers_mod(5);
        let w = crate::matgroup::transposition_word(q, 2, 0).unwrap();
        let v = word_to_json(&w);
        assert_eq!(word_from_json(&v).unwrap(), w);
    }

    #[test]
    fn point_round_trip() {
        let p = ProjPoint::Class {
            ideal: Ideal::from_int(5),
            weights: WeightVector::new(vec![1, 2]).unwrap(),
            rep: vec![RingElem::int(1), RingElem::int(2)],
        };
        let v = proj_point_to_json(&p);
        assert_eq!(proj_point_from_json(&v).unwrap(), p);

        let s = ProjPoint::Singleton {
            ideal: Ideal::from_int(1),
        };
        let v = proj_point_to_json(&s);
        assert_eq!(v.get("singleton"), Some(&json!(true)));
        assert_eq!(proj_point_from_json(&v).unwrap(), s);
    }

    #[test]
    fn certificate_round_trip_and_stability() {
        let rows = vec![
            vec![RingElem::int(1), RingElem::int(2)],
            vec![RingElem::int(3), RingElem::int(1)],
        ];
        let ideals = vec![Ideal::from_int(2), Ideal::from_int(3)];
        let level = Ideal::from_int(5);
        let cert = omega_lift(&rows, &ideals, &level).unwrap();
        let v = certificate_to_json(&cert);
        let back = certificate_from_json(&v).unwrap();
        assert_eq!(back, cert);
        assert!(crate::lifting::verify_certificate(&back));
        // byte-identical re-serialization
        let s1 = serde_json::to_string(&v).unwrap();
        let s2 = serde_json::to_string(&certificate_to_json(&back)).unwrap();
        assert_eq!(s1, s2);
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(matrix_from_json(&json!({"rows": []})).is_err());
        assert!(elem_from_json(BaseRing::Int, &json!([1, 2])).is_err());
        assert!(group_kind_from_json(&json!("gl")).is_err());
    }
}
