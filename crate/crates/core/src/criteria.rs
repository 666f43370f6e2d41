//! Deciding whether a graded algebra is a twisted partial crossed product:
//! per-element corner multipliers `(u_g, v_g)` found either from module
//! isomorphisms `(psi, psi')` or directly, the reconstructed action, and the
//! graded isomorphism onto its crossed product.

use std::sync::Arc;

use serde::Serialize;

use crate::action::{check_derived_identities, verify_action, TwistedPartialAction};
use crate::algebra::{Ideal, StructureAlgebra};
use crate::crossed::{build_crossed_product, CrossedProduct};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{
    build_linking_algebra, check_condition_i, check_homogeneous_nondegeneracy, check_lemma_uv_properties,
    identity_residual, ConditionReport, Corner, CornerMultiplierPair, GradedAlgebra, LinkingAlgebra, UvPropertyReport,
    U_IDENTITIES,
};
use crate::matrix::{solution_space, Matrix};
use crate::multiplier::{make_multiplier, Multiplier};
use crate::search::{derive_seed, search_space, SearchBudget, SearchOutcome};
use crate::subspace::{LinearExtension, SubspaceBasis};
use crate::vector::{self, Vector};

/// Prime used for the modular existence hint when a rational search runs
/// out of trials.
pub const PROBE_PRIME: u64 = 10007;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Route {
    #[default]
    Auto,
    Psi,
    Uv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriteriaConfig {
    pub route: Route,
    pub budget: SearchBudget,
}

/// `psi: D_g -> B_g` (left `D_g`-linear) and `psi': D_{g^-1} -> B_g` (right
/// `D_{g^-1}`-linear), as matrices between canonical bases.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleIsoPair {
    pub g: String,
    pub psi: Matrix,
    pub psi_prime: Matrix,
}

/// Every basis element `x` of `I` lies in `I x` and in `x I`.
pub fn check_s_unital(i: &Ideal) -> bool {
    i.ambient().is_s_unital_subspace(i.space())
}

fn inconsistency(what: impl Into<String>) -> Error {
    Error::InternalInconsistency(what.into())
}

/// Searches for `(psi, psi')` with `psi(r) = r m`, `psi'(r') = n r'` for
/// `m, n` in `B_g`, subject to `(d m) d' = d (n d')`. With `D_g` unital every
/// module map has this form, so an exhausted enumeration or a dimension
/// mismatch proves there is none.
pub fn solve_module_iso_pair(
    gb: &GradedAlgebra,
    g: usize,
    budget: &SearchBudget,
    seed: u64,
) -> Result<SearchOutcome<ModuleIsoPair>> {
    let grp = gb.group();
    let gi = grp.inv(g);
    if !check_condition_i(gb).passed() {
        return Err(Error::PreconditionFailed("condition (i) fails".into()));
    }
    let (_, ds) = gb.component_products()?;
    if !check_s_unital(&ds[g]) || !check_s_unital(&ds[gi]) {
        return Err(Error::PreconditionFailed(format!(
            "D_{} or D_{} is not s-unital",
            grp.name(g),
            grp.name(gi)
        )));
    }
    let alg = gb.ambient();
    let f = gb.field();
    let bg = gb.component(g);
    let (dg, dgi) = (gb.d(g), gb.d(gi));
    let k = bg.dim();
    if dg.dim() != k || dgi.dim() != k {
        return Ok(SearchOutcome::Absent);
    }
    let (db, dib) = (dg.vectors(), dgi.vectors());
    let space = solution_space(f, 2 * k, |vars| {
        let m = bg.combine(&vars[..k]);
        let n = bg.combine(&vars[k..]);
        let mut out = Vec::new();
        for d in &db {
            let dm = alg.mul(d, &m);
            for dp in &dib {
                out.extend(vector::sub(&alg.mul(&dm, dp), &alg.mul(d, &alg.mul(&n, dp))));
            }
        }
        out
    });
    let name = grp.name(g).to_string();
    Ok(search_space(&space, budget, seed, |x| {
        let m = bg.combine(&x[..k]);
        let n = bg.combine(&x[k..]);
        let rows = |vs: &[Vector], left: bool| -> Option<Matrix> {
            let rs = vs
                .iter()
                .map(|d| bg.coordinates(&if left { alg.mul(d, &m) } else { alg.mul(&n, d) }))
                .collect::<Option<Vec<_>>>()?;
            Some(Matrix::from_rows(f, k, rs))
        };
        let psi = rows(&db, true)?;
        let psi_prime = rows(&dib, false)?;
        (psi.is_invertible() && psi_prime.is_invertible()).then(|| ModuleIsoPair {
            g: name.clone(),
            psi,
            psi_prime,
        })
    }))
}

/// Checks the module-map, compatibility and invertibility conditions on a
/// candidate pair.
pub fn validate_module_iso_pair(gb: &GradedAlgebra, g: usize, pair: &ModuleIsoPair) -> bool {
    let alg = gb.ambient();
    let bg = gb.component(g);
    let gi = gb.group().inv(g);
    let (dg, dgi) = (gb.d(g), gb.d(gi));
    let psi = |x: &Vector| dg.coordinates(x).map(|c| bg.combine(&pair.psi.vec_mul(&c)));
    let psip = |x: &Vector| dgi.coordinates(x).map(|c| bg.combine(&pair.psi_prime.vec_mul(&c)));
    if !pair.psi.is_invertible() || !pair.psi_prime.is_invertible() {
        return false;
    }
    let (db, dib) = (dg.vectors(), dgi.vectors());
    for d in &db {
        for x in &db {
            if psi(&alg.mul(d, x)) != psi(x).map(|y| alg.mul(d, &y)) {
                return false;
            }
        }
        for dp in &dib {
            let lhs = psi(d).map(|y| alg.mul(&y, dp));
            let rhs = psip(dp).map(|y| alg.mul(d, &y));
            if lhs.is_none() || lhs != rhs {
                return false;
            }
        }
    }
    for x in &dib {
        for dp in &dib {
            if psip(&alg.mul(x, dp)) != psip(x).map(|y| alg.mul(&y, dp)) {
                return false;
            }
        }
    }
    true
}

/// Rows: images of the basis of corner `from` under `op`, as coordinates in
/// corner `to`. `op` works on `B`-vectors.
fn corner_matrix(
    link: &LinkingAlgebra,
    from: Corner,
    to: Corner,
    op: impl Fn(&Vector) -> Result<Vector>,
) -> Result<Matrix> {
    let rows = link
        .corner(from)
        .vectors()
        .iter()
        .map(|x| {
            let y = op(x)?;
            link.corner(to)
                .coordinates(&y)
                .ok_or_else(|| inconsistency(format!("image leaves corner {to}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(link.algebra().field(), link.corner_dim(to), rows))
}

fn invert(m: &Matrix, what: &str) -> Result<Matrix> {
    m.inverse()
        .ok_or_else(|| inconsistency(format!("{what} is not invertible")))
}

fn finish_pair(link: &LinkingAlgebra, g: String, u: Multiplier, v: Multiplier) -> Result<CornerMultiplierPair> {
    CornerMultiplierPair::validate(link, &u, &v)?;
    let pair = CornerMultiplierPair { g, u, v };
    let report = check_lemma_uv_properties(link, &pair);
    if !report.passed() {
        return Err(inconsistency(format!("corner identities fail for g = {}", pair.g)));
    }
    Ok(pair)
}

/// `u` from `(psi, psi')`: `R_u = psi` on `R`, `L_u = psi'` on `R'`, and on
/// `M'` through `u (r' m') = psi'(r') m'` and `(m' r) u = m' psi(r)`; `v` is
/// the corner-wise inverse.
pub fn assemble_uv(gb: &GradedAlgebra, link: &LinkingAlgebra, pair: &ModuleIsoPair) -> Result<CornerMultiplierPair> {
    let alg = gb.ambient();
    let f = gb.field();
    let n = alg.dim();
    let bg = gb.component(link.g);
    let psi = |r: usize| bg.combine(pair.psi.row(r));
    let psip = |r: usize| bg.combine(pair.psi_prime.row(r));
    let (rb, mpb, rpb) = (
        link.corner(Corner::R).vectors(),
        link.corner(Corner::Mp).vectors(),
        link.corner(Corner::Rp).vectors(),
    );
    let mut left = Vec::new();
    for (a, rp) in rpb.iter().enumerate() {
        for mp in &mpb {
            left.push((alg.mul(rp, mp), alg.mul(&psip(a), mp)));
        }
    }
    let left = LinearExtension::new(f, n, n, left)?;
    let mut right = Vec::new();
    for mp in &mpb {
        for (b, r) in rb.iter().enumerate() {
            right.push((alg.mul(mp, r), alg.mul(mp, &psi(b))));
        }
    }
    let right = LinearExtension::new(f, n, n, right)?;
    let ext =
        |e: &LinearExtension, x: &Vector| e.apply(x).ok_or_else(|| inconsistency("M' is not spanned by products"));
    let l_mp_r = corner_matrix(link, Corner::Mp, Corner::R, |x| ext(&left, x))?;
    let r_mp_rp = corner_matrix(link, Corner::Mp, Corner::Rp, |x| ext(&right, x))?;
    let r_r_m = pair.psi.clone();
    let l_rp_m = pair.psi_prime.clone();
    let u = link.u_from_maps(&l_mp_r, &l_rp_m, &r_r_m, &r_mp_rp);
    let v = link.v_from_maps(
        &invert(&l_mp_r, "L_u on M'")?,
        &invert(&l_rp_m, "psi'")?,
        &invert(&r_r_m, "psi")?,
        &invert(&r_mp_rp, "R_u on M'")?,
    );
    finish_pair(link, pair.g.clone(), u, v)
}

/// The pair for the identity element: all four corner maps are identities.
pub fn identity_uv(gb: &GradedAlgebra, link: &LinkingAlgebra) -> Result<CornerMultiplierPair> {
    let d = link.corner_dim(Corner::R);
    if Corner::ALL.iter().any(|&c| link.corner(c) != link.corner(Corner::R)) {
        return Err(inconsistency("B_1 B_1 differs from B_1"));
    }
    let id = Matrix::identity(gb.field(), d);
    let u = link.u_from_maps(&id, &id, &id, &id);
    let v = link.v_from_maps(&id, &id, &id, &id);
    finish_pair(link, gb.group().name(link.g).to_string(), u, v)
}

/// Corner dimensions `[R, M, M', R']` admit invertible corner maps only when
/// all four agree.
pub fn uv_dimension_obstruction(dims: [usize; 4]) -> bool {
    dims.iter().any(|&d| d != dims[0])
}

/// Solves the twelve linear corner identities for `u` and searches the
/// solution space for a point with all four corner maps invertible.
pub fn solve_uv_directly(
    gb: &GradedAlgebra,
    link: &LinkingAlgebra,
    budget: &SearchBudget,
    seed: u64,
) -> Result<SearchOutcome<CornerMultiplierPair>> {
    if !check_condition_i(gb).passed() || !check_homogeneous_nondegeneracy(gb).passed() {
        return Err(Error::PreconditionFailed(
            "condition (i) or homogeneous non-degeneracy fails".into(),
        ));
    }
    let dims = Corner::ALL.map(|c| link.corner_dim(c));
    if uv_dimension_obstruction(dims) {
        return Ok(SearchOutcome::Absent);
    }
    let f = gb.field();
    let d = dims[0];
    let blocks = |x: &[crate::FieldElement]| -> [Matrix; 4] {
        std::array::from_fn(|b| {
            let chunk = &x[b * d * d..(b + 1) * d * d];
            Matrix::from_rows(f, d, (0..d).map(|i| chunk[i * d..(i + 1) * d].to_vec()).collect())
        })
    };
    let space = solution_space(f, 4 * d * d, |x| {
        let [a, b, c, e] = blocks(x);
        let u = link.u_from_maps(&a, &b, &c, &e);
        U_IDENTITIES
            .iter()
            .flat_map(|id| identity_residual(link, id, &u))
            .collect()
    });
    let name = gb.group().name(link.g).to_string();
    Ok(search_space(&space, budget, seed, |x| {
        let [a, b, c, e] = blocks(x);
        let (ai, bi, ci, ei) = (a.inverse()?, b.inverse()?, c.inverse()?, e.inverse()?);
        let u = link.u_from_maps(&a, &b, &c, &e);
        let v = link.v_from_maps(&ai, &bi, &ci, &ei);
        let u = make_multiplier(link.full_ideal(), u.r_matrix().clone(), u.l_matrix().clone()).ok()?;
        let v = make_multiplier(link.full_ideal(), v.r_matrix().clone(), v.l_matrix().clone()).ok()?;
        finish_pair(link, name.clone(), u, v).ok()
    }))
}

/// `m` applied (as a row-vector matrix on `C_g`) to the `B`-vector `x` of
/// corner `from`; the result is returned as a `B`-vector.
fn act(link: &LinkingAlgebra, m: &Matrix, from: Corner, x: &Vector) -> Result<Vector> {
    let c = link
        .embed_from_b(from, x)
        .ok_or_else(|| inconsistency(format!("vector outside corner {from}")))?;
    let y = m.vec_mul(&c);
    let n = link.corner(from).ambient_dim();
    let mut out = vector::zero_vector(m.field(), n);
    for k in Corner::ALL {
        out = vector::add(&out, &link.to_b(k, &y));
    }
    Ok(out)
}

/// Extensions of the corner actions of `(u_g, v_g)` to the one-sided ideals
/// they generate in `B`.
struct Extended {
    lu: LinearExtension,
    ru: LinearExtension,
    lv: LinearExtension,
    rv: LinearExtension,
}

fn extend(gb: &GradedAlgebra, link: &LinkingAlgebra, pair: &CornerMultiplierPair) -> Result<Extended> {
    let alg = gb.ambient();
    let f = gb.field();
    let n = alg.dim();
    let hom = gb.homogeneous_basis().row_vectors();
    let side = |m: &Matrix, corners: [Corner; 2], left: bool| -> Result<LinearExtension> {
        let mut pairs = Vec::new();
        for c in corners {
            for x in link.corner(c).vectors() {
                let mx = act(link, m, c, &x)?;
                for y in &hom {
                    if left {
                        pairs.push((alg.mul(&x, y), alg.mul(&mx, y)));
                    } else {
                        pairs.push((alg.mul(y, &x), alg.mul(y, &mx)));
                    }
                }
            }
        }
        LinearExtension::new(f, n, n, pairs)
    };
    Ok(Extended {
        lu: side(pair.u.l_matrix(), [Corner::Mp, Corner::Rp], true)?,
        ru: side(pair.u.r_matrix(), [Corner::R, Corner::Mp], false)?,
        lv: side(pair.v.l_matrix(), [Corner::R, Corner::M], true)?,
        rv: side(pair.v.r_matrix(), [Corner::M, Corner::Rp], false)?,
    })
}

fn chain(x: &Vector, steps: &[&LinearExtension]) -> Result<Vector> {
    steps.iter().try_fold(x.clone(), |y, e| {
        e.apply(&y)
            .ok_or_else(|| inconsistency("argument outside an extended domain"))
    })
}

/// `theta_g(x) = u_g x v_g` on `D_{g^-1}` and `w_{g,h} = u_g u_h v_{gh}` on
/// `D_g D_{gh}`, as a twisted partial action on `B_1`, verified before it is
/// returned.
pub fn reconstruct_action(
    gb: &GradedAlgebra,
    pairs: &[(LinkingAlgebra, CornerMultiplierPair)],
) -> Result<TwistedPartialAction> {
    let grp = gb.group();
    let n = grp.order();
    if pairs.len() != n {
        return Err(inconsistency("one pair per group element is required"));
    }
    let (a, ds) = gb.component_products()?;
    let f = gb.field();
    let to_a = |x: &Vector| {
        gb.to_identity_coords(x)
            .ok_or_else(|| inconsistency("value outside B_1"))
    };
    let mut thetas = Vec::with_capacity(n);
    for (g, (link, pair)) in pairs.iter().enumerate() {
        let gi = grp.inv(g);
        let rows = ds[gi]
            .space()
            .vectors()
            .iter()
            .map(|x| {
                let xb = gb.from_identity_coords(x);
                let y = act(link, pair.u.l_matrix(), Corner::Rp, &xb)?;
                let z = act(link, pair.v.r_matrix(), Corner::M, &y)?;
                ds[g]
                    .space()
                    .coordinates(&to_a(&z)?)
                    .ok_or_else(|| inconsistency("theta_g leaves D_g"))
            })
            .collect::<Result<Vec<_>>>()?;
        thetas.push(Matrix::from_rows(f, ds[g].dim(), rows));
    }
    let ext = pairs
        .iter()
        .map(|(link, pair)| extend(gb, link, pair))
        .collect::<Result<Vec<_>>>()?;
    let mut twists = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let gh = grp.mul(g, h);
            let carrier = a.subspace_product(ds[g].space(), ds[gh].space())?;
            let (eg, eh, egh) = (&ext[g], &ext[h], &ext[gh]);
            let matrix = |steps: &[&LinearExtension]| -> Result<Matrix> {
                let rows = carrier
                    .vectors()
                    .iter()
                    .map(|x| {
                        let y = chain(&gb.from_identity_coords(x), steps)?;
                        carrier
                            .coordinates(&to_a(&y)?)
                            .ok_or_else(|| inconsistency("twist leaves D_g D_gh"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_rows(f, carrier.dim(), rows))
            };
            let l = matrix(&[&egh.lv, &eh.lu, &eg.lu])?;
            let r = matrix(&[&eg.ru, &eh.ru, &egh.rv])?;
            let l_inv = matrix(&[&eg.lv, &eh.lv, &egh.lu])?;
            let r_inv = matrix(&[&egh.ru, &eh.rv, &eg.rv])?;
            let id = Matrix::identity(f, carrier.dim());
            if l.mul(&l_inv) != id || r.mul(&r_inv) != id {
                return Err(inconsistency(format!(
                    "u_gh v_h v_g does not invert w_{{{},{}}}",
                    grp.name(g),
                    grp.name(h)
                )));
            }
            twists.push((r, l));
        }
    }
    let domains = ds.iter().map(|d| d.space().clone()).collect();
    let th = TwistedPartialAction::new(grp.clone(), a, domains, thetas, twists)?;
    let report = verify_action(&th);
    if let Some(fail) = report.first_failure() {
        return Err(inconsistency(format!(
            "reconstructed action fails {} at {:?}",
            fail.check, fail.witness
        )));
    }
    check_derived_identities(&th)?.ensure()?;
    Ok(th)
}

/// `phi(x) = x v_g delta_g` on `B_g`, in the standard bases of `B` and of the
/// crossed product, checked to be a grading-preserving algebra isomorphism.
pub fn build_phi(
    gb: &GradedAlgebra,
    th: &TwistedPartialAction,
    pairs: &[(LinkingAlgebra, CornerMultiplierPair)],
) -> Result<(CrossedProduct, Matrix)> {
    let cp = build_crossed_product(th).map_err(|e| inconsistency(e.to_string()))?;
    let f = gb.field();
    let mut rows = Vec::new();
    for (g, (link, pair)) in pairs.iter().enumerate() {
        for x in gb.component(g).vectors() {
            let y = act(link, pair.v.r_matrix(), Corner::M, &x)?;
            let a = gb
                .to_identity_coords(&y)
                .ok_or_else(|| inconsistency("x v_g outside B_1"))?;
            rows.push(cp.embed(g, &a)?);
        }
    }
    let phi_h = Matrix::from_rows(f, cp.dim(), rows);
    let p_inv = invert(&gb.homogeneous_basis(), "homogeneous basis")?;
    let phi = p_inv.mul(&phi_h);
    if !phi.is_invertible() {
        return Err(inconsistency("phi is not bijective"));
    }
    for (g, comp) in gb.components().iter().enumerate() {
        for x in comp.vectors() {
            let y = phi.vec_mul(&x);
            if (0..pairs.len()).any(|h| h != g && !vector::is_zero(&y[cp.block_range(h)])) {
                return Err(inconsistency("phi does not preserve the grading"));
            }
        }
    }
    let alg = gb.ambient();
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = phi.vec_mul(&alg.basis_product_vector(i, j));
            let rhs = cp.algebra().mul(phi.row(i), phi.row(j));
            if lhs != rhs {
                return Err(inconsistency(format!(
                    "phi is not multiplicative on ({}, {})",
                    alg.names()[i],
                    alg.names()[j]
                )));
            }
        }
    }
    Ok((cp, phi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Certificate,
    Rejected,
    Undecided,
}

/// A failed necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub condition: String,
    pub g: Option<String>,
    pub witness: Option<String>,
    pub detail: Option<String>,
}

/// How the pair for one group element was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementSolve {
    pub g: String,
    pub route: String,
    pub seed: u64,
    pub note: Option<String>,
    /// Over `Q` after an exhausted search: whether the reduction modulo
    /// [`PROBE_PRIME`] has a solution.
    pub probe_hint: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CriteriaCertificate {
    pub module_pairs: Vec<ModuleIsoPair>,
    pub pairs: Vec<(LinkingAlgebra, CornerMultiplierPair)>,
    pub uv_reports: Vec<UvPropertyReport>,
    pub action: TwistedPartialAction,
    pub crossed: CrossedProduct,
    pub phi: Matrix,
}

#[derive(Clone, Debug)]
pub struct CriteriaReport {
    pub verdict: Verdict,
    pub config: CriteriaConfig,
    pub condition_i: ConditionReport,
    pub nondegeneracy: ConditionReport,
    pub s_unital: Vec<(String, bool)>,
    pub solves: Vec<ElementSolve>,
    pub rejections: Vec<Rejection>,
    pub undecided: Option<String>,
    pub certificate: Option<CriteriaCertificate>,
}

fn condition_rejections(name: &str, r: &ConditionReport) -> Option<Rejection> {
    r.failures().next().map(|c| Rejection {
        condition: name.to_string(),
        g: Some(c.g.clone()),
        witness: c.witness.clone(),
        detail: c.detail.clone(),
    })
}

enum Solved {
    Pair(Box<CornerMultiplierPair>, Option<ModuleIsoPair>),
    Absent(String),
    Exhausted(String),
}

fn solve_element(
    gb: &GradedAlgebra,
    link: &LinkingAlgebra,
    route: Route,
    s_unital: bool,
    budget: &SearchBudget,
    seed: u64,
) -> Result<(Solved, &'static str)> {
    let use_psi = match route {
        Route::Psi if !s_unital => {
            return Ok((
                Solved::Exhausted("the psi route needs s-unital D_g and D_g^-1".into()),
                "psi",
            ))
        }
        Route::Psi => true,
        Route::Uv => false,
        Route::Auto => s_unital,
    };
    if use_psi {
        match solve_module_iso_pair(gb, link.g, budget, seed)? {
            SearchOutcome::Found(mp) => {
                return Ok((Solved::Pair(Box::new(assemble_uv(gb, link, &mp)?), Some(mp)), "psi"))
            }
            SearchOutcome::Absent => {
                return Ok((
                    Solved::Absent("no invertible module isomorphism pair (psi, psi') exists".into()),
                    "psi",
                ))
            }
            SearchOutcome::Exhausted if route == Route::Psi => {
                return Ok((Solved::Exhausted("solver budget exhausted (psi route)".into()), "psi"))
            }
            SearchOutcome::Exhausted => {}
        }
    }
    Ok(match solve_uv_directly(gb, link, budget, seed)? {
        SearchOutcome::Found(p) => (Solved::Pair(Box::new(p), None), "uv"),
        SearchOutcome::Absent => (
            Solved::Absent("no corner multipliers u, v with u v = e11 and v u = e22 exist".into()),
            "uv",
        ),
        SearchOutcome::Exhausted => (Solved::Exhausted("solver budget exhausted (uv route)".into()), "uv"),
    })
}

/// Runs the whole decision procedure. Only internal inconsistencies are
/// returned as errors; every verdict is a value.
pub fn check_criteria(gb: &GradedAlgebra, config: &CriteriaConfig) -> Result<CriteriaReport> {
    let grp = gb.group();
    let condition_i = check_condition_i(gb);
    let nondegeneracy = check_homogeneous_nondegeneracy(gb);
    let mut report = CriteriaReport {
        verdict: Verdict::Rejected,
        config: *config,
        condition_i,
        nondegeneracy,
        s_unital: Vec::new(),
        solves: Vec::new(),
        rejections: Vec::new(),
        undecided: None,
        certificate: None,
    };
    report
        .rejections
        .extend(condition_rejections("condition (i)", &report.condition_i));
    report.rejections.extend(condition_rejections(
        "homogeneous non-degeneracy",
        &report.nondegeneracy,
    ));
    if !report.rejections.is_empty() {
        return Ok(report);
    }
    let (_, ds) = gb.component_products()?;
    let su: Vec<bool> = ds.iter().map(check_s_unital).collect();
    report.s_unital = grp.elements().map(|g| (grp.name(g).to_string(), su[g])).collect();

    let mut pairs = Vec::with_capacity(grp.order());
    let mut module_pairs = Vec::new();
    for g in grp.elements() {
        let link = build_linking_algebra(gb, g)?;
        let seed = derive_seed(config.budget.seed, g);
        let mut solve = ElementSolve {
            g: grp.name(g).to_string(),
            route: "identity".into(),
            seed,
            note: None,
            probe_hint: None,
        };
        if g == grp.identity() {
            let pair = identity_uv(gb, &link)?;
            report.solves.push(solve);
            pairs.push((link, pair));
            continue;
        }
        let s_unital = su[g] && su[grp.inv(g)];
        let (outcome, route) = solve_element(gb, &link, config.route, s_unital, &config.budget, seed)?;
        solve.route = route.into();
        match outcome {
            Solved::Pair(pair, mp) => {
                module_pairs.extend(mp);
                report.solves.push(solve);
                pairs.push((link, *pair));
            }
            Solved::Absent(why) => {
                solve.note = Some(why.clone());
                report.solves.push(solve);
                report.rejections.push(Rejection {
                    condition: "corner multipliers".into(),
                    g: Some(grp.name(g).to_string()),
                    witness: None,
                    detail: Some(why),
                });
                return Ok(report);
            }
            Solved::Exhausted(why) => {
                solve.note = Some(why.clone());
                if gb.field() == Field::Rational {
                    solve.probe_hint = probe_mod_p(gb, g, config, s_unital);
                }
                report.solves.push(solve);
                report.verdict = Verdict::Undecided;
                report.undecided = Some(format!("{why} at g = {}", grp.name(g)));
                return Ok(report);
            }
        }
    }
    let action = reconstruct_action(gb, &pairs)?;
    let (crossed, phi) = build_phi(gb, &action, &pairs)?;
    let uv_reports = pairs.iter().map(|(l, p)| check_lemma_uv_properties(l, p)).collect();
    report.verdict = Verdict::Certificate;
    report.certificate = Some(CriteriaCertificate {
        module_pairs,
        pairs,
        uv_reports,
        action,
        crossed,
        phi,
    });
    Ok(report)
}

/// Reruns the element search on the reduction modulo [`PROBE_PRIME`]. Only a
/// hint: a modular solution need not lift.
fn probe_mod_p(gb: &GradedAlgebra, g: usize, config: &CriteriaConfig, s_unital: bool) -> Option<bool> {
    let red = reduce_graded(gb, Field::Prime(PROBE_PRIME))?;
    let link = build_linking_algebra(&red, g).ok()?;
    let seed = derive_seed(config.budget.seed, g);
    let (outcome, _) = solve_element(&red, &link, config.route, s_unital, &config.budget, seed).ok()?;
    Some(matches!(outcome, Solved::Pair(..)))
}

/// The reduction of a rational graded algebra into `F_p`, when all
/// structure constants are `p`-integral and component dimensions survive.
pub fn reduce_graded(gb: &GradedAlgebra, target: Field) -> Option<GradedAlgebra> {
    let reduce = |v: &Vector| v.iter().map(|x| x.reduce_into(target)).collect::<Option<Vector>>();
    let alg = gb.ambient();
    let table = alg.table().iter().map(reduce).collect::<Option<Vec<_>>>()?;
    let red = Arc::new(StructureAlgebra::new_unchecked(target, alg.names().to_vec(), table).ok()?);
    if red.associativity_defect().is_some() {
        return None;
    }
    let comps = gb
        .components()
        .iter()
        .map(|c| {
            let vs = c.vectors().iter().map(reduce).collect::<Option<Vec<_>>>()?;
            let s = SubspaceBasis::span(target, alg.dim(), &vs);
            (s.dim() == c.dim()).then_some(s)
        })
        .collect::<Option<Vec<_>>>()?;
    GradedAlgebra::new(red, gb.group().clone(), comps).ok()
}

/// `n x n` matrices over `B` graded entrywise; basis `E_ij (x) b` is named
/// `{b}_{i}_{j}` with 1-based `i, j`.
pub fn matrix_amplify(gb: &GradedAlgebra, n: usize) -> Result<GradedAlgebra> {
    if n == 0 {
        return Err(Error::Input("amplification size must be at least 1".into()));
    }
    let alg = gb.ambient();
    let f = gb.field();
    let d = alg.dim();
    let dim = n * n * d;
    let idx = |i: usize, j: usize, b: usize| (i * n + j) * d + b;
    let mut names = vec![String::new(); dim];
    for i in 0..n {
        for j in 0..n {
            for b in 0..d {
                names[idx(i, j, b)] = format!("{}_{}_{}", alg.names()[b], i + 1, j + 1);
            }
        }
    }
    let mut table = vec![vector::zero_vector(f, dim); dim * dim];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for x in 0..d {
                    for y in 0..d {
                        let row = &mut table[idx(i, j, x) * dim + idx(j, l, y)];
                        for (k, c) in alg.basis_product(x, y) {
                            row[idx(i, l, *k)] = c.clone();
                        }
                    }
                }
            }
        }
    }
    let big = Arc::new(StructureAlgebra::new_unchecked(f, names, table)?);
    let comps = gb
        .components()
        .iter()
        .map(|c| {
            let mut vs = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for x in c.vectors() {
                        let mut v = vector::zero_vector(f, dim);
                        v[idx(i, j, 0)..idx(i, j, 0) + d].clone_from_slice(&x);
                        vs.push(v);
                    }
                }
            }
            SubspaceBasis::span(f, dim, &vs)
        })
        .collect();
    GradedAlgebra::new(big, gb.group().clone(), comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn v(f: Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    fn m2_graded(f: Field) -> GradedAlgebra {
        let mut t = vec![vector::zero_vector(f, 4); 16];
        for a in 0..4 {
            for b in 0..4 {
                if a % 2 == b / 2 {
                    t[a * 4 + b] = vector::unit_vector(f, 4, 2 * (a / 2) + b % 2);
                }
            }
        }
        let names = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
        let alg = Arc::new(StructureAlgebra::new(f, names, t).unwrap());
        let diag = SubspaceBasis::span(f, 4, &[v(f, &[1, 0, 0, 0]), v(f, &[0, 0, 0, 1])]);
        let anti = SubspaceBasis::span(f, 4, &[v(f, &[0, 1, 0, 0]), v(f, &[0, 0, 1, 0])]);
        GradedAlgebra::new(alg, FiniteGroup::cyclic(2), vec![diag, anti]).unwrap()
    }

    #[test]
    fn s_unital_examples() {
        let q = Field::Rational;
        let t = vec![v(q, &[1, 0]), v(q, &[0, 1]), v(q, &[0, 1]), v(q, &[0, 0])];
        let dual = Arc::new(StructureAlgebra::new(q, vec!["one".into(), "x".into()], t).unwrap());
        assert!(check_s_unital(&Ideal::full(dual.clone())));
        let x = Ideal::new(dual, SubspaceBasis::span(q, 2, &[v(q, &[0, 1])])).unwrap();
        assert!(!check_s_unital(&x));
    }

    #[test]
    fn m2_psi_route() {
        let q = Field::Rational;
        let gb = m2_graded(q);
        let mp = solve_module_iso_pair(&gb, 1, &SearchBudget::default(), 0)
            .unwrap()
            .found()
            .unwrap();
        assert!(validate_module_iso_pair(&gb, 1, &mp));
        let link = build_linking_algebra(&gb, 1).unwrap();
        let pair = assemble_uv(&gb, &link, &mp).unwrap();
        assert!(check_lemma_uv_properties(&link, &pair).passed());
    }

    #[test]
    fn explicit_m2_module_pair() {
        // psi: e11 -> e12, e22 -> e21 ; psi': e11 -> e21, e22 -> e12
        let q = Field::Rational;
        let gb = m2_graded(q);
        // canonical B_g basis is (e12, e21)
        let psi = Matrix::from_i64(q, &[&[1, 0], &[0, 1]]);
        let psi_prime = Matrix::from_i64(q, &[&[0, 1], &[1, 0]]);
        let mp = ModuleIsoPair {
            g: "g".into(),
            psi,
            psi_prime,
        };
        assert!(validate_module_iso_pair(&gb, 1, &mp));
    }

    #[test]
    fn m2_routes_agree() {
        let q = Field::Rational;
        let gb = m2_graded(q);
        for route in [Route::Psi, Route::Uv] {
            let cfg = CriteriaConfig {
                route,
                ..Default::default()
            };
            let r = check_criteria(&gb, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::Certificate, "{route:?}");
            let cert = r.certificate.unwrap();
            assert_eq!(cert.crossed.dim(), 4);
            // theta_g is the coordinate swap on k x k
            assert_eq!(cert.action.theta(1), &Matrix::from_i64(q, &[&[0, 1], &[1, 0]]));
        }
    }

    #[test]
    fn dimension_fast_reject() {
        assert!(!uv_dimension_obstruction([2, 2, 2, 2]));
        assert!(uv_dimension_obstruction([2, 1, 1, 2]));
        assert!(uv_dimension_obstruction([0, 0, 0, 1]));
    }

    #[test]
    fn dual_numbers_rejected() {
        let q = Field::Rational;
        let t = vec![v(q, &[1, 0]), v(q, &[0, 1]), v(q, &[0, 1]), v(q, &[0, 0])];
        let dual = Arc::new(StructureAlgebra::new(q, vec!["one".into(), "x".into()], t).unwrap());
        let one = SubspaceBasis::span(q, 2, &[v(q, &[1, 0])]);
        let x = SubspaceBasis::span(q, 2, &[v(q, &[0, 1])]);
        let gb = GradedAlgebra::new(dual, FiniteGroup::cyclic(2), vec![one, x]).unwrap();
        let r = check_criteria(&gb, &CriteriaConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Rejected);
        let conds: Vec<&str> = r.rejections.iter().map(|x| x.condition.as_str()).collect();
        assert_eq!(conds, ["condition (i)", "homogeneous non-degeneracy"]);
        assert_eq!(r.rejections[1].witness.as_deref(), Some("x"));
        let amp = matrix_amplify(&gb, 2).unwrap();
        assert_eq!(
            check_criteria(&amp, &CriteriaConfig::default()).unwrap().verdict,
            Verdict::Rejected
        );
    }

    #[test]
    fn amplification_n1_is_identity() {
        let q = Field::Rational;
        let gb = m2_graded(q);
        let amp = matrix_amplify(&gb, 1).unwrap();
        assert_eq!(amp.ambient().table(), gb.ambient().table());
        assert_eq!(amp.components(), gb.components());
    }

    #[test]
    fn reduction_keeps_grading() {
        let gb = m2_graded(Field::Rational);
        let red = reduce_graded(&gb, Field::Prime(PROBE_PRIME)).unwrap();
        assert_eq!(red.field(), Field::Prime(PROBE_PRIME));
        assert_eq!(red.component(1).dim(), 2);
    }
}
