//! Dense coordinate vectors.

use crate::field::{Field, FieldElement};

pub type Vector = Vec<FieldElement>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// `acc += coef * v`
pub fn add_scaled(acc: &mut [FieldElement], coef: &FieldElement, v: &[FieldElement]) {
    debug_assert_eq!(acc.len(), v.len());
    if coef.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_product(coef, x);
        }
    }
}

pub fn add(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &FieldElement, v: &[FieldElement]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Formats as `[a, b, c]`.
pub fn format_vector(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}
