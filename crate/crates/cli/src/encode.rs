//! JSON encodings shared by every payload.
//!
//! Objects are `serde_json::Map`s, which keep keys sorted, so identical
//! inputs serialize to identical bytes.

use equimatch::algebra::cyclotomic::{CyclotomicFactorization, RatioFactorization};
use equimatch::algebra::laurent::LaurentPoly;
use equimatch::algebra::rational::Rational;
use equimatch::algebra::ratpoly::RatPoly;
use equimatch::conventions::Conventions;
use equimatch::series::PoincareSeries;
use equimatch::symgroup::Permutation;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Integers that do not fit in `i64` are written as decimal strings.
pub fn integer(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// `[num, den]`
pub fn rational(r: &Rational) -> Value {
    json!([integer(r.numer()), integer(r.denom())])
}

/// `{"var": var, "coeffs": [[num, den], ...]}`, coefficient `k` multiplying `var^k`.
pub fn poly(p: &RatPoly, var: &str) -> Value {
    json!({ "var": var, "coeffs": p.coeffs().iter().map(rational).collect::<Vec<_>>() })
}

/// Polynomial in `t'` with only even powers, written in `u' = t'^2`.
pub fn poly_in_u(p: &RatPoly) -> Value {
    match p.halve_exponents() {
        Some(h) => poly(&h, "u'"),
        None => poly(p, "t'"),
    }
}

/// Laurent polynomial as `{"var", "min_exp", "coeffs"}`.
pub fn laurent(p: &LaurentPoly, var: &str) -> Value {
    let (poly_part, shift) = p.to_poly();
    json!({
        "var": var,
        "min_exp": shift,
        "coeffs": poly_part.coeffs().iter().map(rational).collect::<Vec<_>>(),
    })
}

/// Series in `x = t^2`, written by degree in `t`.
pub fn series(s: &PoincareSeries) -> Value {
    let coeffs: Vec<Value> = s.t_coeffs().iter().map(|c| json!([integer(c), 1])).collect();
    json!({ "var": "t", "coeffs": coeffs })
}

pub fn permutation(p: &Permutation) -> Value {
    json!(p.one_line())
}

pub fn conventions(c: &Conventions) -> Value {
    let mut m = Map::new();
    for (k, v) in c.ledger() {
        m.insert(k.to_string(), json!(v));
    }
    Value::Object(m)
}

pub fn cyclotomic(f: &CyclotomicFactorization) -> Value {
    let factors: Map<String, Value> = f.factors.iter().map(|(d, m)| (d.to_string(), json!(m))).collect();
    json!({
        "unit": rational(&f.unit),
        "shift": f.shift,
        "factors": factors,
        "remainder": poly(&f.remainder, "q"),
        "fully_cyclotomic": f.is_fully_cyclotomic(),
    })
}

pub fn ratio(f: &RatioFactorization) -> Value {
    let factors: Map<String, Value> = f
        .factors
        .iter()
        .filter(|(_, &m)| m != 0)
        .map(|(d, m)| (d.to_string(), json!(m)))
        .collect();
    json!({
        "unit": rational(&f.unit),
        "shift": f.shift,
        "factors": factors,
        "remainder_num": poly(&f.remainder_num, "q"),
        "remainder_den": poly(&f.remainder_den, "q"),
        "fully_cyclotomic": f.is_fully_cyclotomic(),
        "display": f.display(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
