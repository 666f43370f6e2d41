use std::sync::Arc;

use super::ast::*;
use crate::action::TwistedPartialAction;
use crate::algebra::StructureAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::GradedAlgebra;
use crate::group::FiniteGroup;
use crate::matrix::Matrix;
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};

fn lookup<'a, V>(map: &'a std::collections::BTreeMap<String, V>, name: &str, what: &str) -> Result<&'a V> {
    map.get(name)
        .ok_or_else(|| Error::Input(format!("unknown {what} '{name}'")))
}

fn literal(field: Field, text: &str) -> Result<crate::FieldElement> {
    field
        .parse_literal(text)
        .ok_or_else(|| Error::Input(format!("'{text}' is not an element of {field}")))
}

pub(crate) fn group_from_decl(decl: &GroupDecl) -> Result<FiniteGroup> {
    let idx = |e: &String| {
        decl.elements
            .iter()
            .position(|x| x == e)
            .ok_or_else(|| Error::Input(format!("unknown group element '{e}'")))
    };
    let table = decl
        .table
        .iter()
        .map(|row| row.iter().map(idx).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::new(decl.elements.clone(), table)
}

fn lincomb_vector(field: Field, basis: &[String], lc: &LinComb) -> Result<Vector> {
    let mut v = vector::zero_vector(field, basis.len());
    for t in &lc.0 {
        let i = basis
            .iter()
            .position(|b| *b == t.name)
            .ok_or_else(|| Error::Input(format!("unknown basis element '{}'", t.name)))?;
        v[i] = &v[i] + &literal(field, &t.coef)?;
    }
    Ok(v)
}

fn table_from_decl(field: Field, decl: &AlgebraDecl) -> Result<Vec<Vector>> {
    let n = decl.basis.len();
    let mut table = vec![vector::zero_vector(field, n); n * n];
    let idx = |x: &String| {
        decl.basis
            .iter()
            .position(|b| b == x)
            .ok_or_else(|| Error::Input(format!("unknown basis element '{x}'")))
    };
    for (l, r, rhs) in &decl.products {
        table[idx(l)? * n + idx(r)?] = lincomb_vector(field, &decl.basis, rhs)?;
    }
    Ok(table)
}

fn matrix_from_lit(field: Field, m: &MatrixLit, rows: usize, cols: usize) -> Result<Matrix> {
    if m.len() != rows || (rows > 0 && m.iter().any(|r| r.len() != cols)) {
        return Err(Error::DimensionMismatch {
            expected: rows,
            found: m.len(),
        });
    }
    let rs = m
        .iter()
        .map(|r| r.iter().map(|x| literal(field, x)).collect::<Result<Vector>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, cols, rs))
}

fn span(field: Field, basis: &[String], vs: &[LinComb]) -> Result<SubspaceBasis> {
    let vs = vs
        .iter()
        .map(|v| lincomb_vector(field, basis, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SubspaceBasis::span(field, basis.len(), &vs))
}

fn action_domains(field: Field, alg: &AlgebraDecl, grp: &FiniteGroup, decl: &ActionDecl) -> Result<Vec<SubspaceBasis>> {
    let n = alg.basis.len();
    let mut doms: Vec<SubspaceBasis> = grp
        .elements()
        .map(|g| {
            if g == grp.identity() {
                SubspaceBasis::full(field, n)
            } else {
                SubspaceBasis::zero(field, n)
            }
        })
        .collect();
    for (g, vs) in &decl.domains {
        let gi = grp
            .index_of(g)
            .ok_or_else(|| Error::Input(format!("unknown group element '{g}'")))?;
        doms[gi] = span(field, &alg.basis, vs)?;
    }
    Ok(doms)
}

/// Dimensions of every `D_g` and of every carrier `D_g D_{gh}` (indexed
/// `g * |G| + h`).
pub(crate) fn carrier_dims(
    field: Field,
    alg: &AlgebraDecl,
    grp: &FiniteGroup,
    decl: &ActionDecl,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let a = StructureAlgebra::new_unchecked(field, alg.basis.clone(), table_from_decl(field, alg)?)?;
    let doms = action_domains(field, alg, grp, decl)?;
    let mut carriers = Vec::new();
    for g in grp.elements() {
        for h in grp.elements() {
            carriers.push(a.subspace_product(&doms[g], &doms[grp.mul(g, h)])?.dim());
        }
    }
    Ok((doms.iter().map(|d| d.dim()).collect(), carriers))
}

pub fn build_group(doc: &Document, name: &str) -> Result<FiniteGroup> {
    group_from_decl(lookup(&doc.groups, name, "group")?)
}

/// Builds the algebra, checking associativity.
pub fn build_algebra(doc: &Document, name: &str, field: Field) -> Result<Arc<StructureAlgebra>> {
    let decl = lookup(&doc.algebras, name, "algebra")?;
    let table = table_from_decl(field, decl)?;
    Ok(Arc::new(StructureAlgebra::new(field, decl.basis.clone(), table)?))
}

pub fn build_grading(doc: &Document, name: &str, field: Field) -> Result<GradedAlgebra> {
    let decl = lookup(&doc.gradings, name, "grading")?;
    let grp = build_group(doc, &decl.group)?;
    let alg = build_algebra(doc, &decl.algebra, field)?;
    let mut comps = vec![SubspaceBasis::zero(field, alg.dim()); grp.order()];
    for (g, vs) in &decl.components {
        let gi = grp
            .index_of(g)
            .ok_or_else(|| Error::Input(format!("unknown group element '{g}'")))?;
        comps[gi] = span(field, alg.names(), vs)?;
    }
    GradedAlgebra::new(alg, grp, comps)
}

pub fn build_action(doc: &Document, name: &str, field: Field) -> Result<TwistedPartialAction> {
    let decl = lookup(&doc.actions, name, "action")?;
    let alg_name = doc
        .action_algebra(decl)
        .ok_or_else(|| Error::Input(format!("action '{name}' needs 'on <algebra>'")))?;
    let grp_name = doc
        .action_group(decl)
        .ok_or_else(|| Error::Input(format!("action '{name}' needs 'by <group>'")))?;
    let grp = build_group(doc, grp_name)?;
    let alg_decl = lookup(&doc.algebras, alg_name, "algebra")?;
    let alg = build_algebra(doc, alg_name, field)?;
    let doms = action_domains(field, alg_decl, &grp, decl)?;
    let n = grp.order();
    let elem = |g: &str| {
        grp.index_of(g)
            .ok_or_else(|| Error::Input(format!("unknown group element '{g}'")))
    };
    let mut thetas: Vec<Option<Matrix>> = vec![None; n];
    thetas[grp.identity()] = Some(Matrix::identity(field, alg.dim()));
    for (g, m) in &decl.thetas {
        let g = elem(g)?;
        thetas[g] = Some(matrix_from_lit(field, m, doms[grp.inv(g)].dim(), doms[g].dim())?);
    }
    let thetas = thetas
        .into_iter()
        .enumerate()
        .map(|(g, t)| match t {
            Some(t) => Ok(t),
            None if doms[g].dim() + doms[grp.inv(g)].dim() == 0 => Ok(Matrix::zeros(field, 0, 0)),
            None => Err(Error::Input(format!("theta {} is missing", grp.name(g)))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut twists = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let d = alg.subspace_product(&doms[g], &doms[grp.mul(g, h)])?.dim();
            let w = decl
                .twists
                .iter()
                .find(|w| grp.index_of(&w.g) == Some(g) && grp.index_of(&w.h) == Some(h));
            twists.push(match w {
                Some(w) => (matrix_from_lit(field, &w.r, d, d)?, matrix_from_lit(field, &w.l, d, d)?),
                None => (Matrix::identity(field, d), Matrix::identity(field, d)),
            });
        }
    }
    TwistedPartialAction::new(grp, alg, doms, thetas, twists)
}

fn vector_lincomb(names: &[String], v: &[crate::FieldElement]) -> LinComb {
    LinComb(
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| Term {
                coef: x.to_string(),
                name: names[i].clone(),
            })
            .collect(),
    )
}

fn matrix_lit(m: &Matrix) -> MatrixLit {
    m.row_vectors()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn group_decl(grp: &FiniteGroup) -> GroupDecl {
    GroupDecl {
        elements: grp.names().to_vec(),
        table: grp
            .table()
            .iter()
            .map(|row| row.iter().map(|&x| grp.name(x).to_string()).collect())
            .collect(),
    }
}

pub fn algebra_decl(alg: &StructureAlgebra) -> AlgebraDecl {
    let n = alg.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = alg.basis_product_vector(i, j);
            if !vector::is_zero(&p) {
                products.push((
                    alg.names()[i].clone(),
                    alg.names()[j].clone(),
                    vector_lincomb(alg.names(), &p),
                ));
            }
        }
    }
    AlgebraDecl {
        basis: alg.names().to_vec(),
        products,
    }
}

pub fn grading_decl(gb: &GradedAlgebra, algebra: &str, group: &str) -> GradingDecl {
    let names = gb.ambient().names();
    let grp = gb.group();
    GradingDecl {
        algebra: algebra.into(),
        group: group.into(),
        components: grp
            .elements()
            .filter(|&g| !gb.component(g).is_zero())
            .map(|g| {
                let vs = gb
                    .component(g)
                    .vectors()
                    .iter()
                    .map(|v| vector_lincomb(names, v))
                    .collect();
                (grp.name(g).to_string(), vs)
            })
            .collect(),
    }
}

/// Declaration reproducing `th`, omitting entries equal to their defaults.
pub fn action_decl(th: &TwistedPartialAction, algebra: &str, group: &str) -> ActionDecl {
    let names = th.ambient().names();
    let grp = th.group();
    let e = grp.identity();
    let mut decl = ActionDecl {
        algebra: Some(algebra.into()),
        group: Some(group.into()),
        domains: Vec::new(),
        thetas: Vec::new(),
        twists: Vec::new(),
    };
    for g in grp.elements() {
        let d = th.domain(g).space();
        let default = if g == e {
            d.dim() == th.ambient().dim()
        } else {
            d.is_zero()
        };
        if !default {
            let vs = d.vectors().iter().map(|v| vector_lincomb(names, v)).collect();
            decl.domains.push((grp.name(g).to_string(), vs));
        }
    }
    for g in grp.elements() {
        let t = th.theta(g);
        let default = if g == e {
            t.is_square() && *t == Matrix::identity(t.field(), t.rows())
        } else {
            t.rows() + t.cols() == 0
        };
        if !default {
            decl.thetas.push((grp.name(g).to_string(), matrix_lit(t)));
        }
    }
    for g in grp.elements() {
        for h in grp.elements() {
            let w = th.twist(g, h);
            if !w.is_identity() {
                decl.twists.push(TwistDecl {
                    g: grp.name(g).into(),
                    h: grp.name(h).into(),
                    r: matrix_lit(w.r_matrix()),
                    l: matrix_lit(w.l_matrix()),
                });
            }
        }
    }
    decl
}
