//! Multipliers of an ideal: compatible pairs `(R, L)` of right and left
//! module maps, stored as matrices in the ideal's canonical basis.
//!
//! `x -> x R` is the right action and `x -> L x` the left action; both are
//! applied to row coordinate vectors, so `L x` is `coords(x) * L`.

use serde::Serialize;

use crate::algebra::Ideal;
use crate::error::{Error, Result};
use crate::matrix::{solution_space, Matrix};
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};
use crate::FieldElement;

#[derive(Clone, Debug, Serialize)]
pub struct Multiplier {
    #[serde(skip)]
    ideal: Ideal,
    r: Matrix,
    l: Matrix,
}

impl PartialEq for Multiplier {
    fn eq(&self, other: &Multiplier) -> bool {
        self.ideal == other.ideal && self.r == other.r && self.l == other.l
    }
}

impl Multiplier {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn r_matrix(&self) -> &Matrix {
        &self.r
    }

    pub fn l_matrix(&self) -> &Matrix {
        &self.l
    }

    pub fn identity(ideal: Ideal) -> Multiplier {
        let id = Matrix::identity(ideal.field(), ideal.dim());
        Multiplier {
            ideal,
            r: id.clone(),
            l: id,
        }
    }

    /// `(R_a, L_a)` for an element `a` of the ambient algebra.
    pub fn element_induced(ideal: Ideal, a: &[FieldElement]) -> Result<Multiplier> {
        let alg = ideal.ambient().clone();
        let space = ideal.space();
        let mut rr = Vec::with_capacity(ideal.dim());
        let mut ll = Vec::with_capacity(ideal.dim());
        for x in space.vectors() {
            rr.push(coords(space, &alg.multiply(&x, a)?, "ideal (x a)")?);
            ll.push(coords(space, &alg.multiply(a, &x)?, "ideal (a x)")?);
        }
        let f = ideal.field();
        let d = ideal.dim();
        Ok(Multiplier {
            r: Matrix::from_rows(f, d, rr),
            l: Matrix::from_rows(f, d, ll),
            ideal,
        })
    }

    /// Builds without validation; callers must check with [`make_multiplier`]
    /// or know the pair is valid.
    pub fn new_unchecked(ideal: Ideal, r: Matrix, l: Matrix) -> Multiplier {
        Multiplier { ideal, r, l }
    }

    /// `x u` for `x` in the ideal.
    pub fn apply_right(&self, x: &[FieldElement]) -> Result<Vector> {
        let c = coords(self.ideal.space(), x, "multiplier carrier")?;
        Ok(self.ideal.space().combine(&self.r.vec_mul(&c)))
    }

    /// `u x` for `x` in the ideal.
    pub fn apply_left(&self, x: &[FieldElement]) -> Result<Vector> {
        let c = coords(self.ideal.space(), x, "multiplier carrier")?;
        Ok(self.ideal.space().combine(&self.l.vec_mul(&c)))
    }

    pub fn is_identity(&self) -> bool {
        let id = Matrix::identity(self.ideal.field(), self.ideal.dim());
        self.r == id && self.l == id
    }
}

fn coords(space: &SubspaceBasis, x: &[FieldElement], what: &str) -> Result<Vector> {
    space.coordinates(x).ok_or_else(|| Error::Membership(what.to_string()))
}

/// Validates `(r, l)` as a multiplier of `ideal`: compatibility on ideal
/// basis pairs and the module-map laws against every ambient basis vector.
pub fn make_multiplier(ideal: Ideal, r: Matrix, l: Matrix) -> Result<Multiplier> {
    let d = ideal.dim();
    for m in [&r, &l] {
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: if m.rows() != d { m.rows() } else { m.cols() },
            });
        }
    }
    let u = Multiplier { ideal, r, l };
    validate(&u)?;
    Ok(u)
}

fn validate(u: &Multiplier) -> Result<()> {
    let alg = u.ideal.ambient().clone();
    let space = u.ideal.space();
    let basis = space.vectors();
    let ar: Vec<Vector> = (0..basis.len()).map(|i| space.combine(u.r.row(i))).collect();
    let lb: Vec<Vector> = (0..basis.len()).map(|i| space.combine(u.l.row(i))).collect();
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            if alg.mul(&ar[a], &basis[b]) != alg.mul(&basis[a], &lb[b]) {
                return Err(Error::CompatibilityViolation { a, b });
            }
        }
    }
    let n = alg.dim();
    for x in 0..n {
        let xv = vector::unit_vector(alg.field(), n, x);
        for a in 0..basis.len() {
            let xa = alg.mul(&xv, &basis[a]);
            if u.apply_right(&xa).ok().as_ref() != Some(&alg.mul(&xv, &ar[a])) {
                return Err(Error::ModuleMapViolation { side: "right", x, a });
            }
            let ax = alg.mul(&basis[a], &xv);
            if u.apply_left(&ax).ok().as_ref() != Some(&alg.mul(&lb[a], &xv)) {
                return Err(Error::ModuleMapViolation { side: "left", x, a });
            }
        }
    }
    Ok(())
}

/// The product `u w`: `x (u w) = (x u) w` and `(u w) x = u (w x)`.
pub fn mult_compose(u: &Multiplier, w: &Multiplier) -> Result<Multiplier> {
    if u.ideal != w.ideal {
        return Err(Error::IdealMismatch);
    }
    Ok(Multiplier {
        ideal: u.ideal.clone(),
        r: u.r.mul(&w.r),
        l: w.l.mul(&u.l),
    })
}

pub fn mult_invert(u: &Multiplier) -> Option<Multiplier> {
    Some(Multiplier {
        ideal: u.ideal.clone(),
        r: u.r.inverse()?,
        l: u.l.inverse()?,
    })
}

/// All multipliers of `ideal`, as vectors `(vec R, vec L)` of length `2 d^2`
/// with row-major flattening.
pub fn multiplier_space(ideal: &Ideal) -> SubspaceBasis {
    let d = ideal.dim();
    let f = ideal.field();
    solution_space(f, 2 * d * d, |vars| {
        let r = Matrix::from_rows(f, d, vars[..d * d].chunks(d.max(1)).map(|c| c.to_vec()).collect());
        let l = Matrix::from_rows(f, d, vars[d * d..].chunks(d.max(1)).map(|c| c.to_vec()).collect());
        residuals(&Multiplier::new_unchecked(
            ideal.clone(),
            fix_shape(r, d),
            fix_shape(l, d),
        ))
    })
}

fn fix_shape(m: Matrix, d: usize) -> Matrix {
    if d == 0 {
        Matrix::zeros(m.field(), 0, 0)
    } else {
        m
    }
}

fn residuals(u: &Multiplier) -> Vector {
    let alg = u.ideal.ambient().clone();
    let space = u.ideal.space();
    let basis = space.vectors();
    let ar: Vec<Vector> = (0..basis.len()).map(|i| space.combine(u.r.row(i))).collect();
    let lb: Vec<Vector> = (0..basis.len()).map(|i| space.combine(u.l.row(i))).collect();
    let mut out = Vec::new();
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            out.extend(vector::sub(&alg.mul(&ar[a], &basis[b]), &alg.mul(&basis[a], &lb[b])));
        }
    }
    let n = alg.dim();
    for x in 0..n {
        let xv = vector::unit_vector(alg.field(), n, x);
        for a in 0..basis.len() {
            let xa = alg.mul(&xv, &basis[a]);
            let lhs = u.apply_right(&xa).expect("ideal is closed");
            out.extend(vector::sub(&lhs, &alg.mul(&xv, &ar[a])));
            let ax = alg.mul(&basis[a], &xv);
            let lhs = u.apply_left(&ax).expect("ideal is closed");
            out.extend(vector::sub(&lhs, &alg.mul(&lb[a], &xv)));
        }
    }
    out
}

/// Checks `(u x) w = u (x w)` on the ideal basis. Only meaningful for
/// idempotent ideals.
pub fn check_commuting_property(ideal: &Ideal, u: &Multiplier, w: &Multiplier) -> Result<bool> {
    if &u.ideal != ideal || &w.ideal != ideal {
        return Err(Error::IdealMismatch);
    }
    if !ideal.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    for x in ideal.space().vectors() {
        let left = w.apply_right(&u.apply_left(&x)?)?;
        let right = u.apply_left(&w.apply_right(&x)?)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}
