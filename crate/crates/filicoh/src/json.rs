//! Canonical JSON interchange formats.
//!
//! One format per artifact: algebras (and their Leibniz variants), cochains,
//! Gram reports and deformations. Emission is canonical and byte-stable:
//! object keys are sorted, rationals are in lowest terms as num/den integer
//! pairs, entry lists follow the canonical tuple order, and zero entries are
//! omitted. Parsing accepts arbitrary entry order and non-canonical index
//! tuples, canonicalizing signs and accumulating duplicates.

use crate::algebra::NLieAlgebra;
use crate::cohomology::{Action, Cochain, Complex};
use crate::deformation::Deformation;
use crate::killing::GramReport;
use crate::leibniz::NLeibnizAlgebra;
use crate::matrix::QMatrix;
use crate::multiindex::wedge_expand;
use crate::rational::Rational;
use crate::{Error, Result};
use serde_json::{json, Map, Value};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn rational_to_fields(x: &Rational, obj: &mut Map<String, Value>) -> Result<()> {
    let (num, den) = x
        .as_i64_pair()
        .ok_or_else(|| parse_err("rational exceeds the 64-bit interchange range"))?;
    obj.insert("num".into(), json!(num));
    obj.insert("den".into(), json!(den));
    Ok(())
}

fn rational_pair(x: &Rational) -> Result<Value> {
    let mut obj = Map::new();
    rational_to_fields(x, &mut obj)?;
    Ok(Value::Object(obj))
}

fn get<'v>(value: &'v Value, key: &str) -> Result<&'v Value> {
    value
        .get(key)
        .ok_or_else(|| parse_err(format!("missing field '{key}'")))
}

fn get_usize(value: &Value, key: &str) -> Result<usize> {
    get(value, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| parse_err(format!("field '{key}' must be a non-negative integer")))
}

fn get_i64(value: &Value, key: &str) -> Result<i64> {
    get(value, key)?
        .as_i64()
        .ok_or_else(|| parse_err(format!("field '{key}' must be an integer")))
}

fn get_rational(value: &Value) -> Result<Rational> {
    let num = get_i64(value, "num")?;
    let den = get_i64(value, "den")?;
    if den == 0 {
        return Err(parse_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn index_vec(value: &Value, key: &str) -> Result<Vec<usize>> {
    get(value, key)?
        .as_array()
        .ok_or_else(|| parse_err(format!("field '{key}' must be an array")))?
        .iter()
        .map(|v| {
            v.as_u64()
                .filter(|&i| i >= 1)
                .map(|i| i as usize)
                .ok_or_else(|| parse_err(format!("entries of '{key}' must be positive integers")))
        })
        .collect()
}

/// Serializes with sorted keys and no insignificant whitespace; the same
/// value always produces the same bytes.
pub fn to_canonical_string(value: &Value) -> String {
    serde_json::to_string(value).expect("serializable value")
}

pub fn to_pretty_string(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

pub fn algebra_to_value(alg: &NLieAlgebra) -> Result<Value> {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(alg.arity()));
    obj.insert("dim".into(), json!(alg.dim()));
    obj.insert("basis".into(), json!(alg.basis_names()));
    if let Some(sig) = alg.signature() {
        obj.insert("signature".into(), json!(sig));
    }
    if let Some(ideals) = alg.ideals() {
        let blocks: Vec<Value> = ideals.iter().map(|(lo, hi)| json!([lo, hi])).collect();
        obj.insert("ideals".into(), Value::Array(blocks));
    }
    let mut entries = Vec::new();
    for (idx, target, coeff) in alg.structure_entries() {
        let mut entry = Map::new();
        entry.insert("idx".into(), json!(idx));
        entry.insert("target".into(), json!(target));
        rational_to_fields(coeff, &mut entry)?;
        entries.push(Value::Object(entry));
    }
    obj.insert("f".into(), Value::Array(entries));
    Ok(Value::Object(obj))
}

pub fn algebra_from_value(value: &Value) -> Result<NLieAlgebra> {
    if value.get("antisymmetric").and_then(Value::as_bool) == Some(false) {
        return Err(parse_err(
            "tensor is flagged non-antisymmetric; this command expects an n-Lie algebra",
        ));
    }
    let n = get_usize(value, "n")?;
    let d = get_usize(value, "dim")?;
    let names = match value.get("basis") {
        Some(v) => Some(
            v.as_array()
                .ok_or_else(|| parse_err("field 'basis' must be an array"))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(String::from)
                        .ok_or_else(|| parse_err("basis names must be strings"))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let mut entries = Vec::new();
    for entry in get(value, "f")?
        .as_array()
        .ok_or_else(|| parse_err("field 'f' must be an array"))?
    {
        let idx = index_vec(entry, "idx")?;
        if !idx.windows(2).all(|w| w[0] < w[1]) {
            return Err(parse_err(format!(
                "structure index {idx:?} must be strictly increasing"
            )));
        }
        let target = get_usize(entry, "target")?;
        entries.push((idx, target, get_rational(entry)?));
    }
    let mut alg = NLieAlgebra::new(n, d, names, entries)?;
    if let Some(sig_value) = value.get("signature") {
        let sig: Vec<i64> = sig_value
            .as_array()
            .ok_or_else(|| parse_err("field 'signature' must be an array"))?
            .iter()
            .map(|v| {
                v.as_i64()
                    .filter(|s| *s == 1 || *s == -1)
                    .ok_or(Error::InvalidSignature)
            })
            .collect::<Result<Vec<_>>>()?;
        alg = alg.with_signature(&sig)?;
    }
    if let Some(ideals_value) = value.get("ideals") {
        let blocks: Vec<(usize, usize)> = ideals_value
            .as_array()
            .ok_or_else(|| parse_err("field 'ideals' must be an array"))?
            .iter()
            .map(|b| {
                let pair = b
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| parse_err("ideal blocks must be [lo, hi] pairs"))?;
                let lo = pair[0]
                    .as_u64()
                    .ok_or_else(|| parse_err("ideal bounds must be integers"))?;
                let hi = pair[1]
                    .as_u64()
                    .ok_or_else(|| parse_err("ideal bounds must be integers"))?;
                Ok((lo as usize, hi as usize))
            })
            .collect::<Result<Vec<_>>>()?;
        alg = alg.with_ideals(blocks)?;
    }
    Ok(alg)
}

pub fn leibniz_to_value(l: &NLeibnizAlgebra, names: &[String]) -> Result<Value> {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(l.arity()));
    obj.insert("dim".into(), json!(l.dim()));
    obj.insert("antisymmetric".into(), json!(false));
    obj.insert("basis".into(), json!(names));
    let mut entries = Vec::new();
    for (idx, target, coeff) in l.structure_entries() {
        let mut entry = Map::new();
        entry.insert("idx".into(), json!(idx));
        entry.insert("target".into(), json!(target));
        rational_to_fields(coeff, &mut entry)?;
        entries.push(Value::Object(entry));
    }
    obj.insert("f".into(), Value::Array(entries));
    Ok(Value::Object(obj))
}

pub fn leibniz_from_value(value: &Value) -> Result<NLeibnizAlgebra> {
    let n = get_usize(value, "n")?;
    let d = get_usize(value, "dim")?;
    let mut entries = Vec::new();
    for entry in get(value, "f")?
        .as_array()
        .ok_or_else(|| parse_err("field 'f' must be an array"))?
    {
        let idx = index_vec(entry, "idx")?;
        let target = get_usize(entry, "target")?;
        entries.push((idx, target, get_rational(entry)?));
    }
    NLeibnizAlgebra::new(n, d, entries)
}

pub fn cochain_to_value(algebra: &NLieAlgebra, c: &Cochain) -> Result<Value> {
    let mut obj = Map::new();
    obj.insert("action".into(), json!(c.action.as_str()));
    obj.insert("p".into(), json!(c.p));
    let d = algebra.dim();
    let vdim = match c.action {
        Action::Trivial => 1,
        Action::Adjoint => d,
    };
    let mut entries = Vec::new();
    let mut push_entry =
        |blocks: Vec<&[usize]>, z: usize, value_index: Option<usize>, coeff: &Rational| -> Result<()> {
            let mut entry = Map::new();
            entry.insert(
                "blocks".into(),
                Value::Array(blocks.into_iter().map(|b| json!(b)).collect()),
            );
            entry.insert("z".into(), json!(z));
            if let Some(v) = value_index {
                entry.insert("value_index".into(), json!(v));
            }
            rational_to_fields(coeff, &mut entry)?;
            entries.push(Value::Object(entry));
            Ok(())
        };
    let value_of = |base: usize, r: usize| -> &Rational { &c.coeffs[base * vdim + r] };
    let value_index = |r: usize| match c.action {
        Action::Trivial => None,
        Action::Adjoint => Some(r + 1),
    };
    match c.p {
        0 => {
            for z in 1..=d {
                for r in 0..vdim {
                    let coeff = value_of(z - 1, r);
                    if !coeff.is_zero() {
                        push_entry(vec![], z, value_index(r), coeff)?;
                    }
                }
            }
        }
        1 => {
            for (s, subset) in algebra.n_subset_basis().iter().enumerate() {
                for r in 0..vdim {
                    let coeff = value_of(s, r);
                    if !coeff.is_zero() {
                        push_entry(
                            vec![&subset[..subset.len() - 1]],
                            subset[subset.len() - 1],
                            value_index(r),
                            coeff,
                        )?;
                    }
                }
            }
        }
        2 => {
            let slen = algebra.n_subset_basis().len();
            for (w, wblock) in algebra.wedge_basis().iter().enumerate() {
                for (s, subset) in algebra.n_subset_basis().iter().enumerate() {
                    for r in 0..vdim {
                        let coeff = value_of(w * slen + s, r);
                        if !coeff.is_zero() {
                            push_entry(
                                vec![wblock, &subset[..subset.len() - 1]],
                                subset[subset.len() - 1],
                                value_index(r),
                                coeff,
                            )?;
                        }
                    }
                }
            }
        }
        p => return Err(Error::UnsupportedDegree(p)),
    }
    obj.insert("entries".into(), Value::Array(entries));
    Ok(Value::Object(obj))
}

pub fn cochain_from_value(algebra: &NLieAlgebra, value: &Value) -> Result<Cochain> {
    let action = match get(value, "action")?.as_str() {
        Some("trivial") => Action::Trivial,
        Some("adjoint") => Action::Adjoint,
        _ => return Err(parse_err("field 'action' must be 'trivial' or 'adjoint'")),
    };
    let p = get_usize(value, "p")?;
    if p > 2 {
        return Err(Error::UnsupportedDegree(p));
    }
    let complex = Complex::new(algebra, action);
    let mut c = complex.zero_cochain(p);
    let d = algebra.dim();
    let vdim = match action {
        Action::Trivial => 1,
        Action::Adjoint => d,
    };
    let nm1 = algebra.arity() - 1;
    for entry in get(value, "entries")?
        .as_array()
        .ok_or_else(|| parse_err("field 'entries' must be an array"))?
    {
        let blocks_value = get(entry, "blocks")?
            .as_array()
            .ok_or_else(|| parse_err("field 'blocks' must be an array"))?;
        if blocks_value.len() != p {
            return Err(parse_err(format!(
                "degree-{p} cochain entries need exactly {p} blocks"
            )));
        }
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(p);
        for b in blocks_value {
            let idx: Vec<usize> = b
                .as_array()
                .ok_or_else(|| parse_err("blocks must be index arrays"))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .filter(|&i| i >= 1 && i as usize <= d)
                        .map(|i| i as usize)
                        .ok_or_else(|| parse_err("block indices must lie in 1..=dim"))
                })
                .collect::<Result<Vec<_>>>()?;
            if idx.len() != nm1 {
                return Err(parse_err(format!("blocks must have {nm1} indices")));
            }
            blocks.push(idx);
        }
        let z = get_usize(entry, "z")?;
        if z < 1 || z > d {
            return Err(parse_err("field 'z' must lie in 1..=dim"));
        }
        let r = match action {
            Action::Trivial => 0,
            Action::Adjoint => {
                let v = get_usize(entry, "value_index")?;
                if v < 1 || v > d {
                    return Err(parse_err("field 'value_index' must lie in 1..=dim"));
                }
                v - 1
            }
        };
        let coeff = get_rational(entry)?;
        // canonicalize: leading blocks independently, last block jointly
        // with z
        let mut sign = 1i64;
        let mut lead = 0usize;
        let mut degenerate = false;
        for (bi, block) in blocks.iter().enumerate() {
            if bi + 1 < p {
                match wedge_expand(block) {
                    Some((sorted, s)) => {
                        sign *= s;
                        lead = lead * algebra.wedge_basis().len()
                            + algebra
                                .wedge_basis()
                                .index_of(&sorted)
                                .expect("canonical block");
                    }
                    None => {
                        degenerate = true;
                        break;
                    }
                }
            }
        }
        if degenerate {
            continue;
        }
        let base = if p == 0 {
            z - 1
        } else {
            let mut joint = blocks[p - 1].clone();
            joint.push(z);
            match algebra.n_subset_basis().resolve(&joint) {
                Some((s, sj)) => {
                    sign *= sj;
                    lead * algebra.n_subset_basis().len() + s
                }
                None => continue,
            }
        };
        let add = &coeff * &Rational::from_int(sign);
        c.coeffs[base * vdim + r] += &add;
    }
    Ok(c)
}

pub fn gram_to_value(report: &GramReport) -> Result<Value> {
    let mut obj = Map::new();
    obj.insert("rank".into(), json!(report.rank));
    obj.insert("nullity".into(), json!(report.nullity));
    obj.insert("is_diagonal".into(), json!(report.is_diagonal));
    obj.insert("matrix".into(), matrix_to_value(&report.matrix)?);
    let null_basis: Vec<Value> = report
        .null_basis
        .iter()
        .map(|v| {
            v.coords
                .iter()
                .map(rational_pair)
                .collect::<Result<Vec<_>>>()
                .map(Value::Array)
        })
        .collect::<Result<Vec<_>>>()?;
    obj.insert("null_basis".into(), Value::Array(null_basis));
    Ok(Value::Object(obj))
}

pub fn matrix_to_value(m: &QMatrix) -> Result<Value> {
    let rows: Vec<Value> = (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(rational_pair)
                .collect::<Result<Vec<_>>>()
                .map(Value::Array)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(rows))
}

pub fn deformation_to_value(def: &Deformation) -> Result<Value> {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(def.base.arity()));
    obj.insert("dim".into(), json!(def.base.dim()));
    obj.insert("order".into(), json!(def.order));
    obj.insert("basis".into(), json!(def.base.basis_names()));
    let mut entries = Vec::new();
    for (idx, target, coeffs) in def.structure_poly_entries() {
        let mut entry = Map::new();
        entry.insert("idx".into(), json!(idx));
        entry.insert("target".into(), json!(target));
        entry.insert(
            "coeffs".into(),
            Value::Array(coeffs.iter().map(rational_pair).collect::<Result<Vec<_>>>()?),
        );
        entries.push(Value::Object(entry));
    }
    obj.insert("f".into(), Value::Array(entries));
    Ok(Value::Object(obj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a4() -> NLieAlgebra {
        NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap()
    }

    #[test]
    fn algebra_round_trip_is_byte_stable() {
        for alg in [
            a4(),
            NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap(),
            NLieAlgebra::abelian(3, 2),
        ] {
            let v = algebra_to_value(&alg).unwrap();
            let s = to_canonical_string(&v);
            let parsed = algebra_from_value(&serde_json::from_str(&s).unwrap()).unwrap();
            let s2 = to_canonical_string(&algebra_to_value(&parsed).unwrap());
            assert_eq!(s, s2);
        }
    }

    #[test]
    fn cochain_round_trip_and_canonicalization() {
        let alg = a4();
        let complex = Complex::new(&alg, Action::Adjoint);
        let mut c = complex.zero_cochain(1);
        for (i, x) in c.coeffs.iter_mut().enumerate() {
            *x = Rational::new(i as i64 % 5 - 2, 1 + (i as i64 % 3));
        }
        let v = cochain_to_value(&alg, &c).unwrap();
        let s = to_canonical_string(&v);
        let parsed = cochain_from_value(&alg, &serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(parsed, c);
        let s2 = to_canonical_string(&cochain_to_value(&alg, &parsed).unwrap());
        assert_eq!(s, s2);

        // permuted, duplicated entries accumulate with signs
        let scrambled = serde_json::json!({
            "action": "trivial",
            "p": 1,
            "entries": [
                {"blocks": [[2, 1]], "z": 3, "num": 1, "den": 1},
                {"blocks": [[1, 2]], "z": 3, "num": 2, "den": 1},
                {"blocks": [[1, 3]], "z": 3, "num": 9, "den": 1},
            ],
        });
        let c = cochain_from_value(&alg, &scrambled).unwrap();
        let s123 = alg.n_subset_basis().index_of(&[1, 2, 3]).unwrap();
        assert_eq!(c.coeffs[s123], Rational::one());
        // the degenerate wedge entry is dropped
        assert_eq!(c.coeffs.iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn leibniz_round_trip_is_byte_stable() {
        use crate::leibniz::associated_leibniz_algebra;
        let pair = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
        let l = associated_leibniz_algebra(&pair);
        let names: Vec<String> = (1..=l.dim()).map(|i| format!("w{i}")).collect();
        let v = leibniz_to_value(&l, &names).unwrap();
        let s = to_canonical_string(&v);
        let parsed = leibniz_from_value(&serde_json::from_str(&s).unwrap()).unwrap();
        let s2 = to_canonical_string(&leibniz_to_value(&parsed, &names).unwrap());
        assert_eq!(s, s2);
        assert!(parsed.check_identity().passed);
        // and the algebra parser refuses the flagged tensor
        assert!(algebra_from_value(&serde_json::from_str::<Value>(&s).unwrap()).is_err());
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let alg = a4();
        let bad = serde_json::json!({"action": "adjoint", "p": 1, "entries": [
            {"blocks": [[1,2]], "z": 3, "num": 1, "den": 1}
        ]});
        // missing value_index for an adjoint cochain
        assert!(cochain_from_value(&alg, &bad).is_err());
        let bad = serde_json::json!({"n": 3, "dim": 4, "f": [
            {"idx": [2, 1, 3], "target": 4, "num": 1, "den": 1}
        ]});
        assert!(algebra_from_value(&bad).is_err());
        let bad = serde_json::json!({"n": 3, "dim": 4, "f": [
            {"idx": [1, 2, 3], "target": 4, "num": 1, "den": 0}
        ]});
        assert!(algebra_from_value(&bad).is_err());
    }

    #[test]
    fn declared_signature_must_match() {
        let mut v = algebra_to_value(&a4()).unwrap();
        // tamper with one structure constant
        let f = v.get_mut("f").unwrap().as_array_mut().unwrap();
        f[0] = serde_json::json!({"idx": [1,2,3], "target": 4, "num": 5, "den": 1});
        assert!(algebra_from_value(&v).is_err());
    }
}
