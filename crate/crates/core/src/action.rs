//! Twisted partial actions `(D_g, theta_g, w_{g,h})` of a finite group on a
//! finite-dimensional algebra, the exhaustive postulate verifier, and the
//! suite of identities every twisted partial action satisfies.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Ideal, StructureAlgebra};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::Matrix;
use crate::multiplier::{make_multiplier, mult_invert, Multiplier};
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};
use crate::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct TwistedPartialAction {
    group: FiniteGroup,
    ambient: Arc<StructureAlgebra>,
    domains: Vec<Ideal>,
    thetas: Vec<Matrix>,
    theta_inverses: Vec<Option<Matrix>>,
    twists: Vec<Multiplier>,
}

impl TwistedPartialAction {
    /// `thetas[g]` maps the canonical basis of `D_{g^-1}` to coordinates in
    /// the canonical basis of `D_g`; `twists[g * |G| + h]` is the pair
    /// `(R, L)` on the canonical basis of `D_g D_{gh}`.
    pub fn new(
        group: FiniteGroup,
        ambient: Arc<StructureAlgebra>,
        domains: Vec<SubspaceBasis>,
        thetas: Vec<Matrix>,
        twists: Vec<(Matrix, Matrix)>,
    ) -> Result<TwistedPartialAction> {
        let n = group.order();
        if domains.len() != n || thetas.len() != n || twists.len() != n * n {
            return Err(Error::Structural(format!(
                "expected {n} domains, {n} isomorphisms and {} twists",
                n * n
            )));
        }
        let mut ideals = Vec::with_capacity(n);
        for (g, d) in domains.into_iter().enumerate() {
            let ideal = Ideal::new(ambient.clone(), d)
                .map_err(|e| Error::Structural(format!("domain of {}: {e}", group.name(g))))?;
            ideals.push(ideal);
        }
        for (g, t) in thetas.iter().enumerate() {
            let want = (ideals[group.inv(g)].dim(), ideals[g].dim());
            if (t.rows(), t.cols()) != want {
                return Err(Error::Structural(format!(
                    "theta {} has shape {}x{}, expected {}x{}",
                    group.name(g),
                    t.rows(),
                    t.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        let mut ws = Vec::with_capacity(n * n);
        for (idx, (r, l)) in twists.into_iter().enumerate() {
            let (g, h) = (idx / n, idx % n);
            let carrier = ideals[g].product(&ideals[group.mul(g, h)])?;
            let d = carrier.dim();
            if (r.rows(), r.cols(), l.rows(), l.cols()) != (d, d, d, d) {
                return Err(Error::Structural(format!(
                    "twist ({}, {}) must be a pair of {d}x{d} matrices on D_g D_gh",
                    group.name(g),
                    group.name(h)
                )));
            }
            ws.push(Multiplier::new_unchecked(carrier, r, l));
        }
        let theta_inverses = thetas.iter().map(|t| t.inverse()).collect();
        Ok(TwistedPartialAction {
            group,
            ambient,
            domains: ideals,
            thetas,
            theta_inverses,
            twists: ws,
        })
    }

    /// Builds from maps on the ambient algebra: `theta_maps[g]` is an
    /// ambient `dim x dim` matrix restricted to `D_{g^-1}`, and the twist
    /// `w_{g,h}` is induced by the ambient element `twist_elements[g*|G|+h]`.
    pub fn from_ambient(
        group: FiniteGroup,
        ambient: Arc<StructureAlgebra>,
        domains: Vec<SubspaceBasis>,
        theta_maps: &[Matrix],
        twist_elements: &[Vector],
    ) -> Result<TwistedPartialAction> {
        let n = group.order();
        let mut thetas = Vec::with_capacity(n);
        for g in 0..n {
            let src = &domains[group.inv(g)];
            let dst = &domains[g];
            let rows = src
                .vectors()
                .iter()
                .map(|x| {
                    dst.coordinates(&theta_maps[g].vec_mul(x))
                        .ok_or_else(|| Error::Structural(format!("theta {} leaves D_g", group.name(g))))
                })
                .collect::<Result<Vec<_>>>()?;
            thetas.push(Matrix::from_rows(ambient.field(), dst.dim(), rows));
        }
        let mut twists = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let carrier = ambient.subspace_product(&domains[g], &domains[group.mul(g, h)])?;
                let ideal = Ideal::new_unchecked(ambient.clone(), carrier);
                let w = Multiplier::element_induced(ideal, &twist_elements[g * n + h])?;
                twists.push((w.r_matrix().clone(), w.l_matrix().clone()));
            }
        }
        TwistedPartialAction::new(group, ambient, domains, thetas, twists)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ambient(&self) -> &Arc<StructureAlgebra> {
        &self.ambient
    }

    pub fn domain(&self, g: usize) -> &Ideal {
        &self.domains[g]
    }

    pub fn theta(&self, g: usize) -> &Matrix {
        &self.thetas[g]
    }

    pub fn theta_inverse(&self, g: usize) -> Option<&Matrix> {
        self.theta_inverses[g].as_ref()
    }

    pub fn twist(&self, g: usize, h: usize) -> &Multiplier {
        &self.twists[g * self.group.order() + h]
    }

    pub fn twist_inverse(&self, g: usize, h: usize) -> Option<Multiplier> {
        mult_invert(self.twist(g, h))
    }

    /// `theta_g(a)` for `a` in `D_{g^-1}`.
    pub fn apply_theta(&self, g: usize, a: &[FieldElement]) -> Result<Vector> {
        let src = self.domains[self.group.inv(g)].space();
        let c = src
            .coordinates(a)
            .ok_or_else(|| Error::Membership(format!("D_{}", self.group.name(self.group.inv(g)))))?;
        Ok(self.domains[g].space().combine(&self.thetas[g].vec_mul(&c)))
    }

    /// `theta_g^-1(a)` for `a` in `D_g`.
    pub fn apply_theta_inverse(&self, g: usize, a: &[FieldElement]) -> Result<Vector> {
        let inv = self.theta_inverses[g]
            .as_ref()
            .ok_or_else(|| Error::UnverifiedAction(format!("theta {} is not invertible", self.group.name(g))))?;
        let c = self.domains[g]
            .space()
            .coordinates(a)
            .ok_or_else(|| Error::Membership(format!("D_{}", self.group.name(g))))?;
        Ok(self.domains[self.group.inv(g)].space().combine(&inv.vec_mul(&c)))
    }

    /// `x w_{g,h}` (right) or `w_{g,h} x` (left) for `x` in `D_g D_{gh}`.
    pub fn apply_twist(&self, g: usize, h: usize, side: Side, x: &[FieldElement]) -> Result<Vector> {
        let w = self.twist(g, h);
        match side {
            Side::Right => w.apply_right(x),
            Side::Left => w.apply_left(x),
        }
    }

    fn names(&self, gs: &[usize]) -> Vec<String> {
        gs.iter().map(|&g| self.group.name(g).to_string()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Postulate {
    DomainsIdempotentCommuting,
    IdentityComponent,
    DomainTransport,
    ConjugationByTwist,
    NormalizedTwist,
    CocycleIdentity,
    ThetaIsomorphism,
    TwistMultiplier,
    TwistInvertible,
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Where a check failed: group elements, the index of the basis vector of
/// the relevant domain, and a description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub elements: Vec<String>,
    pub basis_index: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult<K> {
    pub check: K,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult<Postulate>>,
    /// Pairs `(g, h)` whose twist carrier `D_g D_{gh}` is zero; postulates
    /// involving them hold vacuously.
    pub vacuous_twists: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failure(&self, p: Postulate) -> Option<&Witness> {
        self.checks
            .iter()
            .find(|c| c.check == p && !c.passed)
            .and_then(|c| c.witness.as_ref())
    }

    pub fn first_failure(&self) -> Option<&CheckResult<Postulate>> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Recorder<K> {
    checks: Vec<CheckResult<K>>,
}

impl<K: Copy> Recorder<K> {
    fn run(&mut self, check: K, f: impl FnOnce() -> Option<Witness>) {
        let witness = f();
        self.checks.push(CheckResult {
            check,
            passed: witness.is_none(),
            witness,
        });
    }
}

fn witness(elements: Vec<String>, basis_index: Option<usize>, detail: impl Into<String>) -> Option<Witness> {
    Some(Witness {
        elements,
        basis_index,
        detail: detail.into(),
    })
}

/// Checks every postulate on basis elements.
pub fn verify_action(th: &TwistedPartialAction) -> VerificationReport {
    let grp = &th.group;
    let n = grp.order();
    let alg = &th.ambient;
    let f = alg.field();
    let d = |g: usize| th.domains[g].space();
    let prod = |a: &SubspaceBasis, b: &SubspaceBasis| alg.subspace_product(a, b).expect("same ambient");
    let mut rec = Recorder { checks: Vec::new() };

    rec.run(Postulate::DomainsIdempotentCommuting, || {
        for g in 0..n {
            if &prod(d(g), d(g)) != d(g) {
                return witness(th.names(&[g]), None, "D_g D_g differs from D_g");
            }
            for h in 0..n {
                if prod(d(g), d(h)) != prod(d(h), d(g)) {
                    return witness(th.names(&[g, h]), None, "D_g D_h differs from D_h D_g");
                }
            }
        }
        None
    });

    rec.run(Postulate::IdentityComponent, || {
        let e = grp.identity();
        if d(e) != &alg.full_space() {
            return witness(th.names(&[e]), None, "D_1 is not the whole algebra");
        }
        if th.thetas[e] != Matrix::identity(f, alg.dim()) {
            return witness(th.names(&[e]), None, "theta_1 is not the identity");
        }
        None
    });

    rec.run(Postulate::ThetaIsomorphism, || {
        for g in 0..n {
            if th.theta_inverses[g].is_none() {
                return witness(th.names(&[g]), None, "theta_g is not bijective");
            }
            let src = d(grp.inv(g)).vectors();
            for (i, a) in src.iter().enumerate() {
                for b in &src {
                    let lhs = th.apply_theta(g, &alg.mul(a, b));
                    let rhs = alg.mul(&th.apply_theta(g, a).ok()?, &th.apply_theta(g, b).ok()?);
                    if lhs.as_ref().ok() != Some(&rhs) {
                        return witness(th.names(&[g]), Some(i), "theta_g is not multiplicative");
                    }
                }
            }
        }
        None
    });

    rec.run(Postulate::DomainTransport, || {
        for g in 0..n {
            for h in 0..n {
                let src = prod(d(grp.inv(g)), d(h));
                let img: Vec<Vector> = src.vectors().iter().filter_map(|x| th.apply_theta(g, x).ok()).collect();
                let img = SubspaceBasis::span(f, alg.dim(), &img);
                if img != prod(d(g), d(grp.mul(g, h))) {
                    return witness(th.names(&[g, h]), None, "theta_g(D_g^-1 D_h) differs from D_g D_gh");
                }
            }
        }
        None
    });

    rec.run(Postulate::TwistMultiplier, || {
        for g in 0..n {
            for h in 0..n {
                let w = th.twist(g, h);
                if let Err(e) = make_multiplier(w.ideal().clone(), w.r_matrix().clone(), w.l_matrix().clone()) {
                    return witness(th.names(&[g, h]), None, e.to_string());
                }
            }
        }
        None
    });

    rec.run(Postulate::TwistInvertible, || {
        for g in 0..n {
            for h in 0..n {
                if th.twist_inverse(g, h).is_none() {
                    return witness(th.names(&[g, h]), None, "twist is not invertible");
                }
            }
        }
        None
    });

    rec.run(Postulate::NormalizedTwist, || {
        let e = grp.identity();
        for g in 0..n {
            for (a, b) in [(e, g), (g, e)] {
                if !th.twist(a, b).is_identity() {
                    return witness(th.names(&[a, b]), None, "twist is not the identity");
                }
            }
        }
        None
    });

    rec.run(Postulate::ConjugationByTwist, || {
        for g in 0..n {
            for h in 0..n {
                let gh = grp.mul(g, h);
                let hi = grp.inv(h);
                let dom = prod(d(hi), d(grp.mul(hi, grp.inv(g))));
                let w = th.twist(g, h);
                let Some(winv) = mult_invert(w) else { continue };
                for (i, a) in dom.vectors().iter().enumerate() {
                    let wit = |s: &str| witness(th.names(&[g, h]), Some(i), s);
                    let lhs = match th.apply_theta(h, a).and_then(|x| th.apply_theta(g, &x)) {
                        Ok(v) => v,
                        Err(e) => return wit(&e.to_string()),
                    };
                    let x = match th.apply_theta(gh, a) {
                        Ok(v) => v,
                        Err(e) => return wit(&e.to_string()),
                    };
                    let r1 = w.apply_left(&x).and_then(|y| winv.apply_right(&y));
                    let r2 = winv.apply_right(&x).and_then(|y| w.apply_left(&y));
                    match (r1, r2) {
                        (Ok(r1), Ok(r2)) => {
                            if r1 != r2 {
                                return wit("the two bracketings of w x w^-1 differ");
                            }
                            if lhs != r1 {
                                return wit("theta_g theta_h(a) differs from w theta_gh(a) w^-1");
                            }
                        }
                        (Err(e), _) | (_, Err(e)) => return wit(&e.to_string()),
                    }
                }
            }
        }
        None
    });

    rec.run(Postulate::CocycleIdentity, || {
        for g in 0..n {
            let gi = grp.inv(g);
            for h in 0..n {
                for t in 0..n {
                    let ht = grp.mul(h, t);
                    let gh = grp.mul(g, h);
                    let dom = prod(&prod(d(gi), d(h)), d(ht));
                    for (i, a) in dom.vectors().iter().enumerate() {
                        let lhs = th
                            .apply_twist(h, t, Side::Right, a)
                            .and_then(|x| th.apply_theta(g, &x))
                            .and_then(|x| th.apply_twist(g, ht, Side::Right, &x));
                        let rhs = th
                            .apply_theta(g, a)
                            .and_then(|x| th.apply_twist(g, h, Side::Right, &x))
                            .and_then(|x| th.apply_twist(gh, t, Side::Right, &x));
                        let ok = matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r);
                        if !ok {
                            let detail = match (lhs, rhs) {
                                (Ok(l), Ok(r)) => format!(
                                    "theta_g(a w_h,t) w_g,ht = {} but theta_g(a) w_g,h w_gh,t = {}",
                                    vector::format_vector(&l),
                                    vector::format_vector(&r)
                                ),
                                (Err(e), _) | (_, Err(e)) => e.to_string(),
                            };
                            return witness(th.names(&[g, h, t]), Some(i), detail);
                        }
                    }
                }
            }
        }
        None
    });

    let mut vacuous = Vec::new();
    for g in 0..n {
        for h in 0..n {
            if th.twist(g, h).ideal().dim() == 0 {
                vacuous.push((grp.name(g).to_string(), grp.name(h).to_string()));
            }
        }
    }
    VerificationReport {
        checks: rec.checks,
        vacuous_twists: vacuous,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[allow(non_camel_case_types)]
pub enum DerivedIdentity {
    theta_twist_right,
    theta_twist_inverse_right,
    theta_inv_twist_right,
    theta_inv_twist_inverse_right,
    theta_twist_left,
    theta_twist_inverse_left,
    theta_inv_twist_left,
    theta_inv_twist_inverse_left,
    theta_inverse_conjugation,
}

impl DerivedIdentity {
    pub const ALL: [DerivedIdentity; 9] = [
        DerivedIdentity::theta_twist_right,
        DerivedIdentity::theta_twist_inverse_right,
        DerivedIdentity::theta_inv_twist_right,
        DerivedIdentity::theta_inv_twist_inverse_right,
        DerivedIdentity::theta_twist_left,
        DerivedIdentity::theta_twist_inverse_left,
        DerivedIdentity::theta_inv_twist_left,
        DerivedIdentity::theta_inv_twist_inverse_left,
        DerivedIdentity::theta_inverse_conjugation,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checks: Vec<CheckResult<DerivedIdentity>>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Converts a failure into [`Error::InternalInconsistency`].
    pub fn ensure(&self) -> Result<()> {
        match self.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Error::InternalInconsistency(format!(
                "identity {:?} fails at {:?}",
                c.check, c.witness
            ))),
        }
    }
}

/// Checks the nine identities relating `theta_g`, `theta_g^-1` and the twists
/// `w_{g,g^-1}`, `w_{g^-1,g}` on the canonical bases of `D_g` and `D_{g^-1}`.
/// The action must already have passed [`verify_action`].
pub fn check_derived_identities(th: &TwistedPartialAction) -> Result<IdentityReport> {
    let grp = &th.group;
    let n = grp.order();
    let mut inverses = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            inverses.push(
                th.twist_inverse(g, h)
                    .ok_or_else(|| Error::UnverifiedAction("non-invertible twist".into()))?,
            );
        }
    }
    let winv = |g: usize, h: usize| &inverses[g * n + h];
    let mut rec = Recorder { checks: Vec::new() };
    type Step<'a> = Box<dyn Fn(&[FieldElement]) -> Result<Vector> + 'a>;

    for id in DerivedIdentity::ALL {
        rec.run(id, || {
            for g in 0..n {
                let gi = grp.inv(g);
                let w_a = th.twist(gi, g); // carrier D_{g^-1}
                let w_b = th.twist(g, gi); // carrier D_g
                let wi_a = winv(gi, g);
                let wi_b = winv(g, gi);
                let theta: Step = Box::new(move |x| th.apply_theta(g, x));
                let theta_inv: Step = Box::new(move |x| th.apply_theta_inverse(g, x));
                let right = |m: &Multiplier| -> Step {
                    let m = m.clone();
                    Box::new(move |x| m.apply_right(x))
                };
                let left = |m: &Multiplier| -> Step {
                    let m = m.clone();
                    Box::new(move |x| m.apply_left(x))
                };
                use DerivedIdentity::*;
                // (domain element of, lhs inner twist, outer map, rhs twist)
                let (dom, inner, outer, after): (usize, Step, Step, Step) = match id {
                    theta_twist_right => (gi, right(w_a), theta, right(w_b)),
                    theta_twist_inverse_right => (gi, right(wi_a), theta, right(wi_b)),
                    theta_inv_twist_right => (g, right(w_b), theta_inv, right(w_a)),
                    theta_inv_twist_inverse_right => (g, right(wi_b), theta_inv, right(wi_a)),
                    theta_twist_left => (gi, left(w_a), theta, left(w_b)),
                    theta_twist_inverse_left => (gi, left(wi_a), theta, left(wi_b)),
                    theta_inv_twist_left => (g, left(w_b), theta_inv, left(w_a)),
                    theta_inv_twist_inverse_left => (g, left(wi_b), theta_inv, left(wi_a)),
                    theta_inverse_conjugation => {
                        for (i, a) in th.domains[g].space().vectors().iter().enumerate() {
                            let lhs = th.apply_theta_inverse(g, a);
                            let rhs = th
                                .apply_theta(gi, a)
                                .and_then(|x| wi_a.apply_left(&x))
                                .and_then(|x| w_a.apply_right(&x));
                            if !matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r) {
                                return witness(th.names(&[g]), Some(i), "conjugation formula for theta_g^-1 fails");
                            }
                        }
                        continue;
                    }
                };
                for (i, a) in th.domains[dom].space().vectors().iter().enumerate() {
                    let lhs = inner(a).and_then(|x| outer(&x));
                    let rhs = outer(a).and_then(|x| after(&x));
                    if !matches!((&lhs, &rhs), (Ok(l), Ok(r)) if l == r) {
                        return witness(th.names(&[g]), Some(i), format!("{id:?} fails"));
                    }
                }
            }
            None
        });
    }
    Ok(IdentityReport { checks: rec.checks })
}
