//! The crossed product `A *_w G = sum_g D_g delta_g` of a twisted partial
//! action, its canonical grading, and the explicit corner multipliers of
//! its linking algebras.

use std::sync::Arc;

use crate::action::{verify_action, Side, TwistedPartialAction};
use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::graded::{build_linking_algebra, unit_index, Corner, CornerMultiplierPair, GradedAlgebra, LinkingAlgebra};
use crate::matrix::Matrix;
use crate::multiplier::mult_invert;
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};
use crate::FieldElement;

#[derive(Clone, Debug)]
pub struct CrossedProduct {
    action: TwistedPartialAction,
    algebra: Arc<StructureAlgebra>,
    offsets: Vec<usize>,
}

/// Verifies the action and then builds its crossed product.
pub fn build_crossed_product(th: &TwistedPartialAction) -> Result<CrossedProduct> {
    let report = verify_action(th);
    if let Some(fail) = report.first_failure() {
        return Err(Error::UnverifiedAction(format!(
            "{} fails at {:?}",
            fail.check, fail.witness
        )));
    }
    build_crossed_product_unverified(th)
}

/// Builds the multiplication table without checking the postulates first.
/// Associativity is still checked on every basis triple.
pub fn build_crossed_product_unverified(th: &TwistedPartialAction) -> Result<CrossedProduct> {
    let grp = th.group();
    let n = grp.order();
    let alg = th.ambient();
    let f = alg.field();
    let mut offsets = vec![0];
    for g in 0..n {
        offsets.push(offsets[g] + th.domain(g).dim());
    }
    let dim = offsets[n];
    let bases: Vec<Vec<Vector>> = (0..n).map(|g| th.domain(g).space().vectors()).collect();
    let mut table = vec![vector::zero_vector(f, dim); dim * dim];
    for g in 0..n {
        let pre: Vec<Vector> = bases[g]
            .iter()
            .map(|a| th.apply_theta_inverse(g, a))
            .collect::<Result<_>>()?;
        for h in 0..n {
            let gh = grp.mul(g, h);
            for (i, t) in pre.iter().enumerate() {
                for (j, b) in bases[h].iter().enumerate() {
                    let x = th.apply_theta(g, &alg.mul(t, b))?;
                    let y = th.apply_twist(g, h, Side::Right, &x)?;
                    let c = th
                        .domain(gh)
                        .space()
                        .coordinates(&y)
                        .ok_or_else(|| Error::Membership(format!("D_{}", grp.name(gh))))?;
                    let row = &mut table[(offsets[g] + i) * dim + offsets[h] + j];
                    row[offsets[gh]..offsets[gh + 1]].clone_from_slice(&c);
                }
            }
        }
    }
    let labels = crossed_labels(th, &bases);
    let algebra = Arc::new(StructureAlgebra::new(f, labels, table)?);
    Ok(CrossedProduct {
        action: th.clone(),
        algebra,
        offsets,
    })
}

fn crossed_labels(th: &TwistedPartialAction, bases: &[Vec<Vector>]) -> Vec<String> {
    let grp = th.group();
    let names = th.ambient().names();
    let mut labels = Vec::new();
    for (g, basis) in bases.iter().enumerate() {
        for (k, b) in basis.iter().enumerate() {
            labels.push(match unit_index(b) {
                Some(i) => format!("{}_{}", names[i], grp.name(g)),
                None => format!("v{k}_{}", grp.name(g)),
            });
        }
    }
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() == labels.len() {
        labels
    } else {
        bases
            .iter()
            .enumerate()
            .flat_map(|(g, b)| (0..b.len()).map(move |k| format!("d{g}_{k}")))
            .collect()
    }
}

impl CrossedProduct {
    pub fn action(&self) -> &TwistedPartialAction {
        &self.action
    }

    pub fn algebra(&self) -> &Arc<StructureAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn block_range(&self, g: usize) -> std::ops::Range<usize> {
        self.offsets[g]..self.offsets[g + 1]
    }

    /// `a delta_g` for `a` in `D_g`, given in ambient coordinates.
    pub fn embed(&self, g: usize, a: &[FieldElement]) -> Result<Vector> {
        let c = self
            .action
            .domain(g)
            .space()
            .coordinates(a)
            .ok_or_else(|| Error::Membership(format!("D_{}", self.action.group().name(g))))?;
        let mut v = vector::zero_vector(self.algebra.field(), self.dim());
        v[self.block_range(g)].clone_from_slice(&c);
        Ok(v)
    }

    /// The coefficient of `delta_g` in `x`, in ambient coordinates.
    pub fn component(&self, x: &[FieldElement], g: usize) -> Vector {
        self.action.domain(g).space().combine(&x[self.block_range(g)])
    }

    /// `B_g = D_g delta_g`.
    pub fn canonical_grading(&self) -> Result<GradedAlgebra> {
        let f = self.algebra.field();
        let comps = (0..self.action.group().order())
            .map(|g| {
                let vs: Vec<Vector> = self
                    .block_range(g)
                    .map(|i| vector::unit_vector(f, self.dim(), i))
                    .collect();
                SubspaceBasis::span(f, self.dim(), &vs)
            })
            .collect();
        GradedAlgebra::new(self.algebra.clone(), self.action.group().clone(), comps)
    }
}

/// The pair `(u_g, v_g)` on the linking algebra `C_g` of the canonical
/// grading, written down directly from `theta_g` and the twists.
pub fn build_uv_for_crossed(cp: &CrossedProduct, g: usize) -> Result<(LinkingAlgebra, CornerMultiplierPair)> {
    let gb = cp.canonical_grading()?;
    let link = build_linking_algebra(&gb, g)?;
    let th = cp.action();
    let grp = th.group();
    let gi = grp.inv(g);
    let e = grp.identity();
    let w_a = th.twist(gi, g).clone();
    let w_b = th.twist(g, gi).clone();
    let wi_a = mult_invert(&w_a).ok_or_else(|| Error::UnverifiedAction("w_{g^-1,g} not invertible".into()))?;
    let wi_b = mult_invert(&w_b).ok_or_else(|| Error::UnverifiedAction("w_{g,g^-1} not invertible".into()))?;

    // Matrix of a corner map given on ambient elements, sending the block
    // `src_block` of corner `from` to block `dst_block` of corner `to`.
    let map = |from: Corner, src_block: usize, to: Corner, dst_block: usize, op: &dyn Fn(&Vector) -> Result<Vector>| {
        let rows = link
            .corner(from)
            .vectors()
            .iter()
            .map(|bv| {
                let a = cp.component(bv, src_block);
                let img = cp.embed(dst_block, &op(&a)?)?;
                link.corner(to)
                    .coordinates(&img)
                    .ok_or_else(|| Error::InternalInconsistency(format!("image leaves corner {to}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok::<Matrix, Error>(Matrix::from_rows(cp.algebra.field(), link.corner_dim(to), rows))
    };

    let id = |a: &Vector| Ok(a.clone());
    let r_r_m = map(Corner::R, e, Corner::M, g, &id)?;
    let r_mp_rp = map(Corner::Mp, gi, Corner::Rp, e, &|c| w_a.apply_right(c))?;
    let l_mp_r = map(Corner::Mp, gi, Corner::R, e, &|c| {
        w_b.apply_right(&th.apply_theta(g, c)?)
    })?;
    let l_rp_m = map(Corner::Rp, e, Corner::M, g, &|d| th.apply_theta(g, d))?;
    let r_m_r = map(Corner::M, g, Corner::R, e, &id)?;
    let r_rp_mp = map(Corner::Rp, e, Corner::Mp, gi, &|d| wi_a.apply_right(d))?;
    let l_r_mp = map(Corner::R, e, Corner::Mp, gi, &|a| {
        th.apply_theta_inverse(g, &wi_b.apply_right(a)?)
    })?;
    let l_m_rp = map(Corner::M, g, Corner::Rp, e, &|b| th.apply_theta_inverse(g, b))?;

    let u = link.u_from_maps(&l_mp_r, &l_rp_m, &r_r_m, &r_mp_rp);
    let v = link.v_from_maps(&l_r_mp, &l_m_rp, &r_m_r, &r_rp_mp);
    CornerMultiplierPair::validate(&link, &u, &v)?;
    let pair = CornerMultiplierPair {
        g: grp.name(g).to_string(),
        u,
        v,
    };
    Ok((link, pair))
}
