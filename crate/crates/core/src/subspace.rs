//! Subspaces in canonical reduced row-echelon form, and linear maps defined
//! by their values on a spanning set.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{kernel, Matrix};
use crate::vector::{self, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: Matrix,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vector]) -> SubspaceBasis {
        SubspaceBasis::from_matrix(&Matrix::from_rows(field, ambient_dim, vectors.to_vec()))
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> SubspaceBasis {
        let (basis, pivots) = m.rref();
        SubspaceBasis {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn zero(field: Field, n: usize) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim: n,
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> SubspaceBasis {
        SubspaceBasis {
            ambient_dim: n,
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vector(&self, i: usize) -> Vector {
        self.basis.row(i).to_vec()
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim, "coordinates: ambient mismatch");
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.combine(&c);
        (back.as_slice() == v).then_some(c)
    }

    /// `sum c_i b_i`.
    pub fn combine(&self, c: &[FieldElement]) -> Vector {
        self.basis.vec_mul(c)
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check_ambient(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        Ok(SubspaceBasis::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis);
        let k = kernel(&stacked.transpose());
        let d = self.dim();
        let vectors: Vec<Vector> = k.vectors().iter().map(|c| self.combine(&c[..d])).collect();
        Ok(SubspaceBasis::span(self.field(), self.ambient_dim, &vectors))
    }

    /// Image of the subspace under `v -> v * m`.
    pub fn image(&self, m: &Matrix) -> SubspaceBasis {
        SubspaceBasis::from_matrix(&self.basis.mul(m))
    }

    fn check_ambient(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// A linear map fixed by prescribed values `x_k -> y_k` on vectors spanning
/// its domain. Construction fails when the prescription is not well defined,
/// i.e. some relation among the `x_k` is not respected by the `y_k`.
#[derive(Clone, Debug)]
pub struct LinearExtension {
    domain: SubspaceBasis,
    images: Matrix,
}

impl LinearExtension {
    pub fn new(
        field: Field,
        source_dim: usize,
        target_dim: usize,
        pairs: impl IntoIterator<Item = (Vector, Vector)>,
    ) -> Result<LinearExtension> {
        let rows: Vec<Vector> = pairs
            .into_iter()
            .map(|(mut x, y)| {
                x.extend(y);
                x
            })
            .collect();
        let aug = Matrix::from_rows(field, source_dim + target_dim, rows);
        let (r, pivots) = aug.rref();
        let k = pivots.iter().take_while(|&&p| p < source_dim).count();
        if k < pivots.len() {
            let bad = r.row(k)[source_dim..].to_vec();
            return Err(Error::InternalInconsistency(format!(
                "linear extension is not well defined: zero maps to {}",
                vector::format_vector(&bad)
            )));
        }
        let domain = SubspaceBasis {
            ambient_dim: source_dim,
            basis: r.block(0, k, 0, source_dim),
            pivots: pivots[..k].to_vec(),
        };
        Ok(LinearExtension {
            domain,
            images: r.block(0, k, source_dim, source_dim + target_dim),
        })
    }

    pub fn domain(&self) -> &SubspaceBasis {
        &self.domain
    }

    pub fn apply(&self, x: &[FieldElement]) -> Option<Vector> {
        self.domain.coordinates(x).map(|c| self.images.vec_mul(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn set_operations() {
        let q = Field::Rational;
        let e1 = SubspaceBasis::span(q, 2, &[v(q, &[1, 0])]);
        let e2 = SubspaceBasis::span(q, 2, &[v(q, &[0, 1])]);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        let s = SubspaceBasis::span(q, 2, &[v(q, &[1, 0]), v(q, &[1, 1])]);
        assert_eq!(s, SubspaceBasis::full(q, 2));
        assert!(e1.sum(&SubspaceBasis::zero(q, 3)).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let q = Field::Rational;
        let s = SubspaceBasis::span(q, 3, &[v(q, &[1, 1, 0]), v(q, &[0, 1, 1])]);
        let x = v(q, &[2, 5, 3]);
        let c = s.coordinates(&x).unwrap();
        assert_eq!(s.combine(&c), x);
        assert!(s.coordinates(&v(q, &[0, 0, 1])).is_none());
    }

    #[test]
    fn extension_detects_ill_defined_prescriptions() {
        let q = Field::Rational;
        let ok = LinearExtension::new(q, 2, 1, vec![(v(q, &[1, 0]), v(q, &[3])), (v(q, &[2, 0]), v(q, &[6]))]).unwrap();
        assert_eq!(ok.apply(&v(q, &[5, 0])), Some(v(q, &[15])));
        assert_eq!(ok.apply(&v(q, &[0, 1])), None);
        let bad = LinearExtension::new(q, 2, 1, vec![(v(q, &[1, 0]), v(q, &[3])), (v(q, &[2, 0]), v(q, &[5]))]);
        assert!(matches!(bad, Err(Error::InternalInconsistency(_))));
    }
}
