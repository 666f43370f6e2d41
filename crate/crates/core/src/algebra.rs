//! Finite-dimensional associative algebras given by structure constants,
//! products of subspaces, annihilators and ideals.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::{kernel, solve, Matrix};
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};

/// Sparse structure constants: `products[i * dim + j]` lists the nonzero
/// coordinates of `b_i * b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: Field,
    names: Vec<String>,
    products: Vec<Vec<(usize, FieldElement)>>,
}

impl StructureAlgebra {
    /// `table[i * dim + j]` is the coordinate vector of `b_i * b_j`.
    /// Associativity is checked on every basis triple.
    pub fn new(field: Field, names: Vec<String>, table: Vec<Vector>) -> Result<StructureAlgebra> {
        let alg = StructureAlgebra::new_unchecked(field, names, table)?;
        if let Some((i, j, k)) = alg.associativity_defect() {
            return Err(Error::AssociativityViolation(i, j, k));
        }
        Ok(alg)
    }

    /// Same as [`StructureAlgebra::new`] without the associativity check.
    pub fn new_unchecked(field: Field, names: Vec<String>, table: Vec<Vector>) -> Result<StructureAlgebra> {
        let dim = names.len();
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: table.len(),
            });
        }
        let mut products = Vec::with_capacity(dim * dim);
        for v in table {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            products.push(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
        }
        Ok(StructureAlgebra { field, names, products })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, FieldElement)] {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_product_vector(&self, i: usize, j: usize) -> Vector {
        let mut v = vector::zero_vector(self.field, self.dim());
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Dense table in the layout accepted by [`StructureAlgebra::new`].
    pub fn table(&self) -> Vec<Vector> {
        let n = self.dim();
        (0..n * n).map(|ij| self.basis_product_vector(ij / n, ij % n)).collect()
    }

    pub fn multiply(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<Vector> {
        let n = self.dim();
        for len in [x.len(), y.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(self.mul(x, y))
    }

    /// Bilinear product; panics on dimension mismatch.
    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "multiply: dimension mismatch");
        let mut out = vector::zero_vector(self.field, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.basis_product(i, j) {
                    out[*k].add_product(&c, s);
                }
            }
        }
        out
    }

    /// First basis triple where `(b_i b_j) b_k != b_i (b_j b_k)`.
    pub fn associativity_defect(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut left = vector::zero_vector(self.field, n);
                    for (m, c) in self.basis_product(i, j) {
                        for (t, s) in self.basis_product(*m, k) {
                            left[*t].add_product(c, s);
                        }
                    }
                    let mut right = vector::zero_vector(self.field, n);
                    for (m, c) in self.basis_product(j, k) {
                        for (t, s) in self.basis_product(i, *m) {
                            right[*t].add_product(c, s);
                        }
                    }
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Matrix of `x -> a x`.
    pub fn left_mult_matrix(&self, a: &[FieldElement]) -> Matrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| self.mul(a, &vector::unit_vector(self.field, n, i)))
            .collect();
        Matrix::from_rows(self.field, n, rows)
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult_matrix(&self, a: &[FieldElement]) -> Matrix {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| self.mul(&vector::unit_vector(self.field, n, i), a))
            .collect();
        Matrix::from_rows(self.field, n, rows)
    }

    pub fn full_space(&self) -> SubspaceBasis {
        SubspaceBasis::full(self.field, self.dim())
    }

    /// Span of all products `u v` with `u` in `U` and `v` in `V`.
    pub fn subspace_product(&self, u: &SubspaceBasis, v: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut prods = Vec::with_capacity(u.dim() * v.dim());
        for a in u.vectors() {
            for b in v.vectors() {
                let p = self.mul(&a, &b);
                if !vector::is_zero(&p) {
                    prods.push(p);
                }
            }
        }
        Ok(SubspaceBasis::span(self.field, self.dim(), &prods))
    }

    /// `U U = U`.
    pub fn is_idempotent_subspace(&self, u: &SubspaceBasis) -> Result<bool> {
        Ok(&self.subspace_product(u, u)? == u)
    }

    /// `{x in U : x W = 0}`.
    pub fn left_annihilator_in(&self, u: &SubspaceBasis, w: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.annihilator(u, w, true)
    }

    /// `{x in U : W x = 0}`.
    pub fn right_annihilator_in(&self, u: &SubspaceBasis, w: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.annihilator(u, w, false)
    }

    fn annihilator(&self, u: &SubspaceBasis, w: &SubspaceBasis, x_on_left: bool) -> Result<SubspaceBasis> {
        self.check_subspace(u)?;
        self.check_subspace(w)?;
        let n = self.dim();
        if w.is_zero() {
            return Ok(u.clone());
        }
        let rows: Vec<Vector> = u
            .vectors()
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(n * w.dim());
                for y in w.vectors() {
                    row.extend(if x_on_left { self.mul(x, &y) } else { self.mul(&y, x) });
                }
                row
            })
            .collect();
        let m = Matrix::from_rows(self.field, n * w.dim(), rows);
        let k = kernel(&m.transpose());
        let vs: Vec<Vector> = k.vectors().iter().map(|c| u.combine(c)).collect();
        Ok(SubspaceBasis::span(self.field, n, &vs))
    }

    /// Whether `A U` and `U A` lie in `U`.
    pub fn is_ideal(&self, u: &SubspaceBasis) -> Result<bool> {
        Ok(self.ideal_defect(u)?.is_none())
    }

    fn ideal_defect(&self, u: &SubspaceBasis) -> Result<Option<String>> {
        self.check_subspace(u)?;
        let n = self.dim();
        for i in 0..n {
            let b = vector::unit_vector(self.field, n, i);
            for (a_idx, a) in u.vectors().iter().enumerate() {
                if !u.contains_vector(&self.mul(&b, a)) {
                    return Ok(Some(format!("{} * ideal basis {} escapes", self.names[i], a_idx)));
                }
                if !u.contains_vector(&self.mul(a, &b)) {
                    return Ok(Some(format!("ideal basis {} * {} escapes", a_idx, self.names[i])));
                }
            }
        }
        Ok(None)
    }

    /// The two-sided unit, if any.
    pub fn unit_element(&self) -> Option<Vector> {
        self.unit_in(&self.full_space())
    }

    /// An element `e` of `U` with `e x = x = x e` for every `x` in `U`.
    pub fn unit_in(&self, u: &SubspaceBasis) -> Option<Vector> {
        let n = self.dim();
        let d = u.dim();
        let basis = u.vectors();
        let rows: Vec<Vector> = basis
            .iter()
            .map(|m| {
                let mut row = Vec::with_capacity(2 * n * d);
                for x in &basis {
                    row.extend(self.mul(m, x));
                    row.extend(self.mul(x, m));
                }
                row
            })
            .collect();
        let mut target = Vec::with_capacity(2 * n * d);
        for x in &basis {
            target.extend(x.iter().cloned());
            target.extend(x.iter().cloned());
        }
        let m = Matrix::from_rows(self.field, 2 * n * d, rows);
        let t = Matrix::from_rows(self.field, 2 * n * d, vec![target]);
        let c = solve(&m.transpose(), &t.transpose())?;
        Some(u.combine(c.transpose().row(0)))
    }

    /// Whether every `x` in `U` lies in `U x` and in `x U`.
    pub fn is_s_unital_subspace(&self, u: &SubspaceBasis) -> bool {
        u.vectors().iter().all(|x| {
            let single = SubspaceBasis::span(self.field, self.dim(), std::slice::from_ref(x));
            let left = self.subspace_product(u, &single).expect("same ambient");
            let right = self.subspace_product(&single, u).expect("same ambient");
            left.contains_vector(x) && right.contains_vector(x)
        })
    }

    /// The algebra structure on a multiplicatively closed subspace, in its
    /// canonical basis.
    pub fn subalgebra(&self, u: &SubspaceBasis, names: Vec<String>) -> Result<StructureAlgebra> {
        self.check_subspace(u)?;
        let basis = u.vectors();
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for a in &basis {
            for b in &basis {
                let p = self.mul(a, b);
                table.push(
                    u.coordinates(&p)
                        .ok_or_else(|| Error::Membership("subalgebra (not closed under products)".into()))?,
                );
            }
        }
        StructureAlgebra::new(self.field, names, table)
    }

    fn check_subspace(&self, u: &SubspaceBasis) -> Result<()> {
        if u.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// A two-sided ideal of a shared ambient algebra.
#[derive(Clone, Debug)]
pub struct Ideal {
    ambient: Arc<StructureAlgebra>,
    space: SubspaceBasis,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient) && self.space == other.space
    }
}

impl Ideal {
    pub fn new(ambient: Arc<StructureAlgebra>, space: SubspaceBasis) -> Result<Ideal> {
        if let Some(why) = ambient.ideal_defect(&space)? {
            return Err(Error::NotAnIdeal(why));
        }
        Ok(Ideal { ambient, space })
    }

    pub fn full(ambient: Arc<StructureAlgebra>) -> Ideal {
        let space = ambient.full_space();
        Ideal { ambient, space }
    }

    /// Skips the ideal check; for carriers already known to be ideals.
    pub fn new_unchecked(ambient: Arc<StructureAlgebra>, space: SubspaceBasis) -> Ideal {
        Ideal { ambient, space }
    }

    pub fn ambient(&self) -> &Arc<StructureAlgebra> {
        &self.ambient
    }

    pub fn space(&self) -> &SubspaceBasis {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.ambient.field()
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let space = self.ambient.subspace_product(&self.space, &other.space)?;
        Ok(Ideal {
            ambient: self.ambient.clone(),
            space,
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.ambient
            .is_idempotent_subspace(&self.space)
            .expect("ideal lives in its ambient")
    }
}
