//! Group-graded algebras, their identity-component ideals `D_g = B_g B_{g^-1}`,
//! the triple-product and non-degeneracy conditions, and the linking
//! algebras `C_g` with their corner multipliers.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Ideal, StructureAlgebra};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::Matrix;
use crate::multiplier::{mult_compose, Multiplier};
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};
use crate::FieldElement;

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    group: FiniteGroup,
    ambient: Arc<StructureAlgebra>,
    components: Vec<SubspaceBasis>,
}

impl GradedAlgebra {
    /// Validates that the components form a direct sum decomposition and
    /// that `B_g B_h` lies in `B_{gh}`.
    pub fn new(
        ambient: Arc<StructureAlgebra>,
        group: FiniteGroup,
        components: Vec<SubspaceBasis>,
    ) -> Result<GradedAlgebra> {
        let n = group.order();
        if components.len() != n {
            return Err(Error::Input(format!(
                "expected {n} components, found {}",
                components.len()
            )));
        }
        let f = ambient.field();
        let dim = ambient.dim();
        let mut acc = SubspaceBasis::zero(f, dim);
        for (g, c) in components.iter().enumerate() {
            if c.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.ambient_dim(),
                });
            }
            let meet = acc.intersect(c)?;
            if !meet.is_zero() {
                return Err(Error::NotDirectSum(format!(
                    "B_{} meets the earlier components in {}",
                    group.name(g),
                    describe(&ambient, &meet.vector(0))
                )));
            }
            acc = acc.sum(c)?;
        }
        if acc.dim() != dim {
            return Err(Error::NotDirectSum(format!(
                "components span {} of {} dimensions",
                acc.dim(),
                dim
            )));
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                for (i, x) in components[g].vectors().iter().enumerate() {
                    for (j, y) in components[h].vectors().iter().enumerate() {
                        if !components[gh].contains_vector(&ambient.mul(x, y)) {
                            return Err(Error::NotGraded {
                                g: group.name(g).into(),
                                h: group.name(h).into(),
                                gh: group.name(gh).into(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
        Ok(GradedAlgebra {
            group,
            ambient,
            components,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ambient(&self) -> &Arc<StructureAlgebra> {
        &self.ambient
    }

    pub fn component(&self, g: usize) -> &SubspaceBasis {
        &self.components[g]
    }

    pub fn components(&self) -> &[SubspaceBasis] {
        &self.components
    }

    pub fn field(&self) -> crate::Field {
        self.ambient.field()
    }

    /// `B_g B_{g^-1}` as a subspace of `B`.
    pub fn d(&self, g: usize) -> SubspaceBasis {
        self.product(&self.components[g], &self.components[self.group.inv(g)])
    }

    pub fn product(&self, a: &SubspaceBasis, b: &SubspaceBasis) -> SubspaceBasis {
        self.ambient
            .subspace_product(a, b)
            .expect("components share the ambient")
    }

    /// Concatenated canonical bases of the components, in group order, as
    /// the rows of an invertible matrix.
    pub fn homogeneous_basis(&self) -> Matrix {
        let rows: Vec<Vector> = self.components.iter().flat_map(|c| c.vectors()).collect();
        Matrix::from_rows(self.field(), self.ambient.dim(), rows)
    }

    /// The identity component `B_1` as an algebra in its canonical basis.
    pub fn identity_algebra(&self) -> Result<StructureAlgebra> {
        let b1 = &self.components[self.group.identity()];
        let names = basis_names(&self.ambient, b1, "a");
        self.ambient.subalgebra(b1, names)
    }

    /// Coordinates of `x` (in `B`) with respect to the canonical basis of `B_1`.
    pub fn to_identity_coords(&self, x: &[FieldElement]) -> Option<Vector> {
        self.components[self.group.identity()].coordinates(x)
    }

    pub fn from_identity_coords(&self, a: &[FieldElement]) -> Vector {
        self.components[self.group.identity()].combine(a)
    }

    /// Each `D_g` as an ideal of the identity component algebra.
    pub fn component_products(&self) -> Result<(Arc<StructureAlgebra>, Vec<Ideal>)> {
        let a = Arc::new(self.identity_algebra()?);
        let mut out = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let vs = self
                .d(g)
                .vectors()
                .iter()
                .map(|x| {
                    self.to_identity_coords(x)
                        .ok_or_else(|| Error::InternalInconsistency("D_g escapes B_1".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let space = SubspaceBasis::span(a.field(), a.dim(), &vs);
            out.push(
                Ideal::new(a.clone(), space).map_err(|e| {
                    Error::InternalInconsistency(format!("D_{} is not an ideal: {e}", self.group.name(g)))
                })?,
            );
        }
        Ok((a, out))
    }

    pub fn describe(&self, x: &[FieldElement]) -> String {
        describe(&self.ambient, x)
    }
}

/// Labels for a canonical basis: the ambient name when the vector is a unit
/// vector, otherwise `{prefix}{k}`.
pub(crate) fn basis_names(alg: &StructureAlgebra, s: &SubspaceBasis, prefix: &str) -> Vec<String> {
    let names: Vec<String> = s
        .vectors()
        .iter()
        .enumerate()
        .map(|(k, v)| match unit_index(v) {
            Some(i) => alg.names()[i].clone(),
            None => format!("{prefix}{k}"),
        })
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() == names.len() {
        names
    } else {
        (0..names.len()).map(|k| format!("{prefix}{k}")).collect()
    }
}

pub(crate) fn unit_index(v: &[FieldElement]) -> Option<usize> {
    let mut hit = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || hit.is_some() {
            return None;
        }
        hit = Some(i);
    }
    hit
}

/// Writes `x` as a linear combination of basis names, e.g. `e1 + 2 e2`.
pub fn describe(alg: &StructureAlgebra, x: &[FieldElement]) -> String {
    let mut out = String::new();
    for (i, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push(' ');
        }
        out.push_str(&alg.names()[i]);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub g: String,
    pub passed: bool,
    /// A vector of the component violating the condition.
    pub witness: Option<String>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub checks: Vec<ComponentCheck>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ComponentCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `B_g B_{g^-1} B_g = B_g` for every `g`.
pub fn check_condition_i(gb: &GradedAlgebra) -> ConditionReport {
    let checks = gb
        .group
        .elements()
        .map(|g| {
            let bg = gb.component(g);
            let triple = gb.product(&gb.d(g), bg);
            if &triple == bg {
                ComponentCheck {
                    g: gb.group.name(g).into(),
                    passed: true,
                    witness: None,
                    detail: None,
                }
            } else {
                let missing = bg
                    .vectors()
                    .into_iter()
                    .find(|x| !triple.contains_vector(x))
                    .expect("triple product is a proper subspace");
                ComponentCheck {
                    g: gb.group.name(g).into(),
                    passed: false,
                    witness: Some(gb.describe(&missing)),
                    detail: Some(format!(
                        "B_g B_g^-1 B_g has dimension {} but B_g has dimension {}",
                        triple.dim(),
                        bg.dim()
                    )),
                }
            }
        })
        .collect();
    ConditionReport { checks }
}

/// No nonzero `x` in `B_g` with `x B_{g^-1} = 0` or `B_{g^-1} x = 0`.
pub fn check_homogeneous_nondegeneracy(gb: &GradedAlgebra) -> ConditionReport {
    let alg = &gb.ambient;
    let checks = gb
        .group
        .elements()
        .map(|g| {
            let bg = gb.component(g);
            let binv = gb.component(gb.group.inv(g));
            let left = alg.left_annihilator_in(bg, binv).expect("same ambient");
            let right = alg.right_annihilator_in(bg, binv).expect("same ambient");
            let name = gb.group.name(g).to_string();
            if !left.is_zero() {
                ComponentCheck {
                    g: name,
                    passed: false,
                    witness: Some(gb.describe(&left.vector(0))),
                    detail: Some("x B_g^-1 = 0".into()),
                }
            } else if !right.is_zero() {
                ComponentCheck {
                    g: name,
                    passed: false,
                    witness: Some(gb.describe(&right.vector(0))),
                    detail: Some("B_g^-1 x = 0".into()),
                }
            } else {
                ComponentCheck {
                    g: name,
                    passed: true,
                    witness: None,
                    detail: None,
                }
            }
        })
        .collect();
    ConditionReport { checks }
}

/// The four corners of a linking algebra, in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Corner {
    /// `D_g`, position (1,1)
    R,
    /// `B_g`, position (1,2)
    M,
    /// `B_{g^-1}`, position (2,1)
    Mp,
    /// `D_{g^-1}`, position (2,2)
    Rp,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::R, Corner::M, Corner::Mp, Corner::Rp];

    fn index(self) -> usize {
        self as usize
    }

    fn position(self) -> (usize, usize) {
        match self {
            Corner::R => (0, 0),
            Corner::M => (0, 1),
            Corner::Mp => (1, 0),
            Corner::Rp => (1, 1),
        }
    }

    fn at(pos: (usize, usize)) -> Corner {
        match pos {
            (0, 0) => Corner::R,
            (0, 1) => Corner::M,
            (1, 0) => Corner::Mp,
            _ => Corner::Rp,
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Corner::R => "R",
            Corner::M => "M",
            Corner::Mp => "M'",
            Corner::Rp => "R'",
        })
    }
}

/// `C_g = [[D_g, B_g], [B_{g^-1}, D_{g^-1}]]` with multiplication inherited
/// from `B`. Its basis is the concatenation of the corner bases.
#[derive(Clone, Debug)]
pub struct LinkingAlgebra {
    pub g: usize,
    corners: [SubspaceBasis; 4],
    offsets: [usize; 5],
    algebra: Arc<StructureAlgebra>,
    e11: Multiplier,
    e22: Multiplier,
}

impl LinkingAlgebra {
    pub fn corner(&self, c: Corner) -> &SubspaceBasis {
        &self.corners[c.index()]
    }

    pub fn corner_dim(&self, c: Corner) -> usize {
        self.corners[c.index()].dim()
    }

    pub fn offset(&self, c: Corner) -> usize {
        self.offsets[c.index()]
    }

    pub fn range(&self, c: Corner) -> std::ops::Range<usize> {
        self.offsets[c.index()]..self.offsets[c.index() + 1]
    }

    pub fn algebra(&self) -> &Arc<StructureAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.offsets[4]
    }

    pub fn e11(&self) -> &Multiplier {
        &self.e11
    }

    pub fn e22(&self) -> &Multiplier {
        &self.e22
    }

    pub fn full_ideal(&self) -> Ideal {
        self.e11.ideal().clone()
    }

    /// The `C_g` vector of corner-coordinate vector `c` placed in corner `k`.
    pub fn embed(&self, k: Corner, c: &[FieldElement]) -> Vector {
        let mut v = vector::zero_vector(self.algebra.field(), self.dim());
        v[self.range(k)].clone_from_slice(c);
        v
    }

    /// Corner coordinates of `x` restricted to corner `k`.
    pub fn project(&self, k: Corner, x: &[FieldElement]) -> Vector {
        x[self.range(k)].to_vec()
    }

    /// The `C_g` vector of a `B`-vector lying in corner `k`.
    pub fn embed_from_b(&self, k: Corner, x: &[FieldElement]) -> Option<Vector> {
        self.corner(k).coordinates(x).map(|c| self.embed(k, &c))
    }

    /// The `B`-vector of corner `k` of `x`.
    pub fn to_b(&self, k: Corner, x: &[FieldElement]) -> Vector {
        self.corner(k).combine(&self.project(k, x))
    }

    /// Block of a `C_g`-matrix from corner `from` (rows) to corner `to` (columns).
    pub fn block(&self, m: &Matrix, from: Corner, to: Corner) -> Matrix {
        let (r, c) = (self.range(from), self.range(to));
        m.block(r.start, r.end, c.start, c.end)
    }

    /// Assembles a `C_g`-matrix from corner blocks.
    pub fn assemble(&self, blocks: &[(Corner, Corner, &Matrix)]) -> Matrix {
        let mut m = Matrix::zeros(self.algebra.field(), self.dim(), self.dim());
        for (from, to, b) in blocks {
            assert_eq!((b.rows(), b.cols()), (self.corner_dim(*from), self.corner_dim(*to)));
            m.set_block(self.offset(*from), self.offset(*to), b);
        }
        m
    }

    /// `u` in corner form from its four maps: `L_u: M' -> R, R' -> M` and
    /// `R_u: R -> M, M' -> R'`.
    pub fn u_from_maps(&self, l_mp_r: &Matrix, l_rp_m: &Matrix, r_r_m: &Matrix, r_mp_rp: &Matrix) -> Multiplier {
        let r = self.assemble(&[(Corner::R, Corner::M, r_r_m), (Corner::Mp, Corner::Rp, r_mp_rp)]);
        let l = self.assemble(&[(Corner::Mp, Corner::R, l_mp_r), (Corner::Rp, Corner::M, l_rp_m)]);
        Multiplier::new_unchecked(self.full_ideal(), r, l)
    }

    /// `v` in corner form: `L_v: R -> M', M -> R'` and `R_v: M -> R, R' -> M'`.
    pub fn v_from_maps(&self, l_r_mp: &Matrix, l_m_rp: &Matrix, r_m_r: &Matrix, r_rp_mp: &Matrix) -> Multiplier {
        let r = self.assemble(&[(Corner::M, Corner::R, r_m_r), (Corner::Rp, Corner::Mp, r_rp_mp)]);
        let l = self.assemble(&[(Corner::R, Corner::Mp, l_r_mp), (Corner::M, Corner::Rp, l_m_rp)]);
        Multiplier::new_unchecked(self.full_ideal(), r, l)
    }
}

/// Builds `C_g` together with `e11` and `e22`.
pub fn build_linking_algebra(gb: &GradedAlgebra, g: usize) -> Result<LinkingAlgebra> {
    let gi = gb.group.inv(g);
    let corners = [gb.d(g), gb.component(g).clone(), gb.component(gi).clone(), gb.d(gi)];
    let mut offsets = [0; 5];
    for k in 0..4 {
        offsets[k + 1] = offsets[k] + corners[k].dim();
    }
    let dim = offsets[4];
    let f = gb.field();
    let alg = &gb.ambient;
    let bases: Vec<Vec<Vector>> = corners.iter().map(|c| c.vectors()).collect();
    let mut labels = Vec::with_capacity(dim);
    for k in Corner::ALL {
        for i in 0..corners[k.index()].dim() {
            labels.push(format!("{k}{i}"));
        }
    }
    let mut table = vec![vector::zero_vector(f, dim); dim * dim];
    for x in Corner::ALL {
        for y in Corner::ALL {
            let (a, b) = x.position();
            let (c, d) = y.position();
            if b != c {
                continue;
            }
            let z = Corner::at((a, d));
            for (i, xv) in bases[x.index()].iter().enumerate() {
                for (j, yv) in bases[y.index()].iter().enumerate() {
                    let p = alg.mul(xv, yv);
                    let coords = corners[z.index()].coordinates(&p).ok_or_else(|| {
                        Error::InternalInconsistency(format!("linking product {x}*{y} leaves corner {z}"))
                    })?;
                    let mut row = vector::zero_vector(f, dim);
                    row[offsets[z.index()]..offsets[z.index() + 1]].clone_from_slice(&coords);
                    table[(offsets[x.index()] + i) * dim + offsets[y.index()] + j] = row;
                }
            }
        }
    }
    let algebra = Arc::new(StructureAlgebra::new_unchecked(f, labels, table)?);
    let full = Ideal::full(algebra.clone());
    let keep = |ks: &[Corner]| {
        let mut m = Matrix::zeros(f, dim, dim);
        for &k in ks {
            for i in offsets[k.index()]..offsets[k.index() + 1] {
                m.set(i, i, f.one());
            }
        }
        m
    };
    let e11 = Multiplier::new_unchecked(
        full.clone(),
        keep(&[Corner::R, Corner::Mp]),
        keep(&[Corner::R, Corner::M]),
    );
    let e22 = Multiplier::new_unchecked(full, keep(&[Corner::M, Corner::Rp]), keep(&[Corner::Mp, Corner::Rp]));
    Ok(LinkingAlgebra {
        g,
        corners,
        offsets,
        algebra,
        e11,
        e22,
    })
}

/// `(u, v)` on `C_g` in corner form with `u v = e11` and `v u = e22`.
#[derive(Clone, Debug, Serialize)]
pub struct CornerMultiplierPair {
    pub g: String,
    pub u: Multiplier,
    pub v: Multiplier,
}

impl CornerMultiplierPair {
    /// Checks `u v = e11`, `v u = e22` and the corner normalization.
    pub fn validate(link: &LinkingAlgebra, u: &Multiplier, v: &Multiplier) -> Result<()> {
        let uv = mult_compose(u, v)?;
        let vu = mult_compose(v, u)?;
        if &uv != link.e11() {
            return Err(Error::InternalInconsistency("u v differs from e11".into()));
        }
        if &vu != link.e22() {
            return Err(Error::InternalInconsistency("v u differs from e22".into()));
        }
        let e11u = mult_compose(link.e11(), u)?;
        let ue22 = mult_compose(u, link.e22())?;
        let e22v = mult_compose(link.e22(), v)?;
        let ve11 = mult_compose(v, link.e11())?;
        if &e11u != u || &ue22 != u || &e22v != v || &ve11 != v {
            return Err(Error::InternalInconsistency("pair is not in corner form".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bracketing {
    /// `m (x y) = (m x) y`
    LeftMul,
    /// `(x y) m = x (y m)`
    RightMul,
    /// `(x m) y = x (m y)`
    Middle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UvIdentity {
    pub multiplier: char,
    pub bracketing: Bracketing,
    pub x: Corner,
    pub y: Corner,
}

impl fmt::Display for UvIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.multiplier;
        let (x, y) = (self.x, self.y);
        match self.bracketing {
            Bracketing::LeftMul => write!(f, "{m}({x}{y}) = ({m}{x}){y}"),
            Bracketing::RightMul => write!(f, "({x}{y}){m} = {x}({y}{m})"),
            Bracketing::Middle => write!(f, "({x}{m}){y} = {x}({m}{y})"),
        }
    }
}

const fn uvid(multiplier: char, bracketing: Bracketing, x: Corner, y: Corner) -> UvIdentity {
    UvIdentity {
        multiplier,
        bracketing,
        x,
        y,
    }
}

use Bracketing::{LeftMul, Middle, RightMul};
use Corner::{Mp, Rp, M, R};

/// The twelve associativity laws a corner-form `u` must satisfy.
pub const U_IDENTITIES: [UvIdentity; 12] = [
    uvid('u', LeftMul, Mp, R),
    uvid('u', LeftMul, Mp, M),
    uvid('u', LeftMul, Rp, Mp),
    uvid('u', LeftMul, Rp, Rp),
    uvid('u', RightMul, R, R),
    uvid('u', RightMul, M, Mp),
    uvid('u', RightMul, Rp, Mp),
    uvid('u', RightMul, Mp, R),
    uvid('u', Middle, R, Mp),
    uvid('u', Middle, R, Rp),
    uvid('u', Middle, Mp, Mp),
    uvid('u', Middle, Mp, Rp),
];

/// The twelve laws for a corner-form `v`.
pub const V_IDENTITIES: [UvIdentity; 12] = [
    uvid('v', LeftMul, R, R),
    uvid('v', LeftMul, M, Mp),
    uvid('v', LeftMul, R, M),
    uvid('v', LeftMul, M, Rp),
    uvid('v', RightMul, R, M),
    uvid('v', RightMul, M, Rp),
    uvid('v', RightMul, Mp, M),
    uvid('v', RightMul, Rp, Rp),
    uvid('v', Middle, M, R),
    uvid('v', Middle, M, M),
    uvid('v', Middle, Rp, M),
    uvid('v', Middle, Rp, R),
];

/// Residual `lhs - rhs` of one identity over all corner basis pairs,
/// concatenated.
pub(crate) fn identity_residual(link: &LinkingAlgebra, id: &UvIdentity, m: &Multiplier) -> Vector {
    let f = link.algebra.field();
    let alg = &link.algebra;
    let (r, l) = (m.r_matrix(), m.l_matrix());
    let mut out = Vec::new();
    for i in link.range(id.x) {
        let x = vector::unit_vector(f, link.dim(), i);
        for j in link.range(id.y) {
            let y = vector::unit_vector(f, link.dim(), j);
            let (lhs, rhs) = match id.bracketing {
                Bracketing::LeftMul => (l.vec_mul(&alg.mul(&x, &y)), alg.mul(&l.vec_mul(&x), &y)),
                Bracketing::RightMul => (r.vec_mul(&alg.mul(&x, &y)), alg.mul(&x, &r.vec_mul(&y))),
                Bracketing::Middle => (alg.mul(&r.vec_mul(&x), &y), alg.mul(&x, &l.vec_mul(&y))),
            };
            out.extend(vector::sub(&lhs, &rhs));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UvCheck {
    pub identity: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UvPropertyReport {
    pub g: String,
    pub identities: Vec<UvCheck>,
    /// `r' -> u r' v` is multiplicative.
    pub theta_multiplicative: bool,
    /// `r -> v r u` inverts it.
    pub theta_inverse: bool,
}

impl UvPropertyReport {
    pub fn passed(&self) -> bool {
        self.theta_multiplicative && self.theta_inverse && self.identities.iter().all(|c| c.passed)
    }
}

/// Runs all 24 corner identities and the isomorphism check for
/// `theta(r') = u r' v`.
pub fn check_lemma_uv_properties(link: &LinkingAlgebra, pair: &CornerMultiplierPair) -> UvPropertyReport {
    let mut identities = Vec::with_capacity(24);
    for (ids, m) in [(&U_IDENTITIES, &pair.u), (&V_IDENTITIES, &pair.v)] {
        for id in ids.iter() {
            identities.push(UvCheck {
                identity: id.to_string(),
                passed: vector::is_zero(&identity_residual(link, id, m)),
            });
        }
    }
    let theta = |x: &Vector| pair.v.r_matrix().vec_mul(&pair.u.l_matrix().vec_mul(x));
    let theta_inv = |x: &Vector| pair.u.r_matrix().vec_mul(&pair.v.l_matrix().vec_mul(x));
    let f = link.algebra.field();
    let rp: Vec<Vector> = link
        .range(Corner::Rp)
        .map(|i| vector::unit_vector(f, link.dim(), i))
        .collect();
    let alg = &link.algebra;
    let mut mult = true;
    for a in &rp {
        for b in &rp {
            if theta(&alg.mul(a, b)) != alg.mul(&theta(a), &theta(b)) {
                mult = false;
            }
        }
    }
    let r: Vec<Vector> = link
        .range(Corner::R)
        .map(|i| vector::unit_vector(f, link.dim(), i))
        .collect();
    let inverse = rp.iter().all(|a| &theta_inv(&theta(a)) == a) && r.iter().all(|a| &theta(&theta_inv(a)) == a);
    UvPropertyReport {
        g: pair.g.clone(),
        identities,
        theta_multiplicative: mult,
        theta_inverse: inverse,
    }
}

/// Matrix of the restriction of `m` to the corner `from -> to`, as a map
/// between canonical corner bases.
pub fn corner_map(link: &LinkingAlgebra, m: &Matrix, from: Corner, to: Corner) -> Matrix {
    link.block(m, from, to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    pub(crate) fn m2(f: Field) -> Arc<StructureAlgebra> {
        let mut t = vec![vector::zero_vector(f, 4); 16];
        for a in 0..4 {
            for b in 0..4 {
                let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
                if j == k {
                    t[a * 4 + b] = vector::unit_vector(f, 4, 2 * i + l);
                }
            }
        }
        let names = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
        Arc::new(StructureAlgebra::new(f, names, t).unwrap())
    }

    fn m2_graded(f: Field) -> GradedAlgebra {
        let diag = SubspaceBasis::span(f, 4, &[v(f, &[1, 0, 0, 0]), v(f, &[0, 0, 0, 1])]);
        let anti = SubspaceBasis::span(f, 4, &[v(f, &[0, 1, 0, 0]), v(f, &[0, 0, 1, 0])]);
        GradedAlgebra::new(m2(f), FiniteGroup::cyclic(2), vec![diag, anti]).unwrap()
    }

    fn dual(f: Field) -> Arc<StructureAlgebra> {
        let t = vec![v(f, &[1, 0]), v(f, &[0, 1]), v(f, &[0, 1]), v(f, &[0, 0])];
        Arc::new(StructureAlgebra::new(f, vec!["one".into(), "x".into()], t).unwrap())
    }

    #[test]
    fn grading_validation() {
        let q = Field::Rational;
        let gb = m2_graded(q);
        assert!(check_condition_i(&gb).passed());
        assert!(check_homogeneous_nondegeneracy(&gb).passed());
        assert_eq!(gb.d(1), gb.component(0).clone());

        let d = dual(q);
        let one = SubspaceBasis::span(q, 2, &[v(q, &[1, 0])]);
        let x = SubspaceBasis::span(q, 2, &[v(q, &[0, 1])]);
        let gb = GradedAlgebra::new(d.clone(), FiniteGroup::cyclic(2), vec![one, x.clone()]).unwrap();
        assert!(gb.d(1).is_zero());
        let ci = check_condition_i(&gb);
        assert!(!ci.checks[1].passed);
        let nd = check_homogeneous_nondegeneracy(&gb);
        assert_eq!(nd.checks[1].witness.as_deref(), Some("x"));

        let bad = SubspaceBasis::span(q, 2, &[v(q, &[1, 1])]);
        let err = GradedAlgebra::new(d, FiniteGroup::cyclic(2), vec![bad, x]).unwrap_err();
        assert!(matches!(err, Error::NotGraded { .. }));
    }

    #[test]
    fn linking_algebra_dimensions() {
        let q = Field::Rational;
        let gb = m2_graded(q);
        let link = build_linking_algebra(&gb, 1).unwrap();
        assert_eq!(link.dim(), 8);
        assert!(link.algebra().associativity_defect().is_none());
        let c1 = build_linking_algebra(&gb, 0).unwrap();
        assert_eq!(c1.dim(), 8);
    }

    #[test]
    fn corner_idempotents() {
        let q = Field::Rational;
        let gb = m2_graded(q);
        let link = build_linking_algebra(&gb, 1).unwrap();
        let e11 = link.e11().clone();
        let e22 = link.e22().clone();
        crate::multiplier::make_multiplier(e11.ideal().clone(), e11.r_matrix().clone(), e11.l_matrix().clone())
            .unwrap();
        assert_eq!(mult_compose(&e11, &e11).unwrap(), e11);
        let sum = Multiplier::new_unchecked(
            e11.ideal().clone(),
            e11.r_matrix().add(e22.r_matrix()),
            e11.l_matrix().add(e22.l_matrix()),
        );
        assert!(sum.is_identity());
    }
}
