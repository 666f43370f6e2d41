//! Random twisted partial actions over `F_5`.
//!
//! A group `G` of order 2, 3 or 4 acts on a finite `G`-set `X`; each point
//! carries a copy of `k` or `M_2(k)` (constant along orbits). The global
//! action moves blocks and conjugates `M_2` blocks by random invertible
//! matrices `U_{g,x}`, which forces the twist
//! `w_{g,h} = U_{g,hx} U_{h,x} U_{gh,x}^-1` on block `ghx`; it is further
//! multiplied by a central scalar 2-cocycle. Restricting to the ideal of a
//! random set of blocks gives a partial action, optionally written in a
//! random basis.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{verify_action, TwistedPartialAction};
use crate::algebra::StructureAlgebra;
use crate::field::{Field, FieldElement};
use crate::group::FiniteGroup;
use crate::matrix::Matrix;
use crate::subspace::SubspaceBasis;
use crate::vector::{self, Vector};

pub const MAX_DIM: usize = 6;

fn f5() -> Field {
    Field::Prime(5)
}

fn random_group(rng: &mut impl Rng) -> FiniteGroup {
    match rng.gen_range(0..4) {
        0 => FiniteGroup::cyclic(2),
        1 => FiniteGroup::cyclic(3),
        2 => FiniteGroup::cyclic(4),
        _ => FiniteGroup::klein4(),
    }
}

fn subgroups(grp: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = grp.order();
    (0u32..1 << n)
        .map(|mask| (0..n).filter(|&g| mask & (1 << g) != 0).collect::<Vec<_>>())
        .filter(|s| s.contains(&grp.identity()) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&grp.mul(a, b)))))
        .collect()
}

fn random_invertible(rng: &mut impl Rng, d: usize) -> Matrix {
    let f = f5();
    loop {
        let rows = (0..d)
            .map(|_| (0..d).map(|_| f.from_i64(rng.gen_range(0..5))).collect())
            .collect();
        let m = Matrix::from_rows(f, d, rows);
        if m.is_invertible() {
            return m;
        }
    }
}

fn nonzero(rng: &mut impl Rng) -> FieldElement {
    f5().from_i64(rng.gen_range(1..5))
}

/// A normalized scalar 2-cocycle with trivial action, as a table `c[g][h]`.
fn random_cocycle(rng: &mut impl Rng, grp: &FiniteGroup) -> Vec<Vec<FieldElement>> {
    let f = f5();
    let n = grp.order();
    let e = grp.identity();
    let fv: Vec<FieldElement> = (0..n).map(|g| if g == e { f.one() } else { nonzero(rng) }).collect();
    let mut c: Vec<Vec<FieldElement>> = (0..n)
        .map(|g| {
            (0..n)
                .map(|h| &(&fv[g] * &fv[h]) * &fv[grp.mul(g, h)].inv().unwrap())
                .collect()
        })
        .collect();
    let is_v4 = n == 4 && (0..n).all(|g| grp.mul(g, g) == e);
    let twist: Option<Box<dyn Fn(usize, usize) -> FieldElement>> = if is_v4 && rng.gen_bool(0.5) {
        // the quaternion sign table on 1, a, b, c
        Some(Box::new(move |g, h| {
            let neg = g != 0 && h != 0 && (g == h || !matches!((g, h), (1, 2) | (2, 3) | (3, 1)));
            f.from_i64(if neg { -1 } else { 1 })
        }))
    } else if !is_v4 && rng.gen_bool(0.5) {
        let lambda = nonzero(rng);
        Some(Box::new(move |g, h| if g + h >= n { lambda.clone() } else { f.one() }))
    } else {
        None
    };
    if let Some(t) = twist {
        for g in 0..n {
            for h in 0..n {
                c[g][h] = &c[g][h] * &t(g, h);
            }
        }
    }
    c
}

struct GSet {
    /// `perm[g][x]` is `g x`.
    perm: Vec<Vec<usize>>,
    /// 1 for `k`, 2 for `M_2(k)`.
    size: Vec<usize>,
}

fn random_gset(rng: &mut impl Rng, grp: &FiniteGroup) -> GSet {
    let subs = subgroups(grp);
    let n = grp.order();
    let mut perm = vec![Vec::new(); n];
    let mut size = Vec::new();
    let orbits = rng.gen_range(1..=3);
    for _ in 0..orbits {
        let h = subs.choose(rng).unwrap();
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            let mut c: Vec<usize> = h.iter().map(|&x| grp.mul(g, x)).collect();
            c.sort();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        let s = if rng.gen_bool(0.3) { 2 } else { 1 };
        let base = size.len();
        for _ in &cosets {
            size.push(s);
        }
        for (g, row) in perm.iter_mut().enumerate() {
            for c in &cosets {
                let mut gc: Vec<usize> = c.iter().map(|&x| grp.mul(g, x)).collect();
                gc.sort();
                row.push(base + cosets.iter().position(|d| *d == gc).unwrap());
            }
        }
    }
    GSet { perm, size }
}

/// Unit vectors of the block at `x` inside an algebra with blocks `sizes`.
fn block_offsets(sizes: &[usize]) -> Vec<usize> {
    let mut off = vec![0];
    for s in sizes {
        off.push(off.last().unwrap() + s * s);
    }
    off
}

fn block_algebra(sizes: &[usize]) -> StructureAlgebra {
    let f = f5();
    let off = block_offsets(sizes);
    let dim = *off.last().unwrap();
    let mut names = Vec::with_capacity(dim);
    let mut table = vec![vector::zero_vector(f, dim); dim * dim];
    for (x, &s) in sizes.iter().enumerate() {
        for a in 0..s * s {
            names.push(if s == 1 {
                format!("e{x}")
            } else {
                format!("m{x}_{}{}", a / s + 1, a % s + 1)
            });
            for b in 0..s * s {
                if a % s == b / s {
                    table[(off[x] + a) * dim + off[x] + b] = vector::unit_vector(f, dim, off[x] + (a / s) * s + b % s);
                }
            }
        }
    }
    StructureAlgebra::new(f, names, table).expect("blocks are associative")
}

/// A random twisted partial action over `F_5` with `|G|` in `{2, 3, 4}` and
/// algebra dimension at most [`MAX_DIM`], not yet filtered through the
/// verifier.
pub fn random_candidate(rng: &mut impl Rng) -> TwistedPartialAction {
    let f = f5();
    let grp = random_group(rng);
    let n = grp.order();
    let e = grp.identity();
    let (gset, keep) = loop {
        let gs = random_gset(rng, &grp);
        let pts: Vec<usize> = (0..gs.size.len()).filter(|_| rng.gen_bool(0.6)).collect();
        let dim: usize = pts.iter().map(|&x| gs.size[x] * gs.size[x]).sum();
        if !pts.is_empty() && dim <= MAX_DIM {
            break (gs, pts);
        }
    };
    let sizes: Vec<usize> = keep.iter().map(|&x| gset.size[x]).collect();
    let alg = block_algebra(&sizes);
    let off = block_offsets(&sizes);
    let dim = alg.dim();
    let local = |x: usize| keep.iter().position(|&y| y == x);

    // U[g][x] for every point of X
    let npts = gset.size.len();
    let u: Vec<Vec<Matrix>> = (0..n)
        .map(|g| {
            (0..npts)
                .map(|x| {
                    let s = gset.size[x];
                    if g == e {
                        Matrix::identity(f, s)
                    } else {
                        random_invertible(rng, s)
                    }
                })
                .collect()
        })
        .collect();
    let cocycle = random_cocycle(rng, &grp);
    let flat = |m: &Matrix| -> Vector { m.entries().to_vec() };

    let in_s = |x: usize| local(x).is_some();
    let mut domains = Vec::with_capacity(n);
    let mut thetas = Vec::with_capacity(n);
    for g in 0..n {
        // D_g = blocks y in S with g^-1 y in S
        let gi = grp.inv(g);
        let mut vs = Vec::new();
        let mut theta = Matrix::zeros(f, dim, dim);
        for (li, &y) in keep.iter().enumerate() {
            if in_s(gset.perm[gi][y]) {
                for i in off[li]..off[li + 1] {
                    vs.push(vector::unit_vector(f, dim, i));
                }
            }
        }
        for (li, &x) in keep.iter().enumerate() {
            let gx = gset.perm[g][x];
            let Some(lj) = local(gx) else { continue };
            let s = gset.size[x];
            let um = &u[g][x];
            let ui = um.inverse().unwrap();
            for a in 0..s * s {
                let mut ea = Matrix::zeros(f, s, s);
                ea.set(a / s, a % s, f.one());
                let img = flat(&um.mul(&ea).mul(&ui));
                for (b, c) in img.into_iter().enumerate() {
                    theta.set(off[li] + a, off[lj] + b, c);
                }
            }
        }
        domains.push(SubspaceBasis::span(f, dim, &vs));
        thetas.push(theta);
    }
    let mut twists = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let gh = grp.mul(g, h);
            let mut w = vector::zero_vector(f, dim);
            for (ly, &y) in keep.iter().enumerate() {
                // y in S, g^-1 y in S, (gh)^-1 y in S
                let x = gset.perm[grp.inv(gh)][y];
                if !in_s(gset.perm[grp.inv(g)][y]) || !in_s(x) {
                    continue;
                }
                let hx = gset.perm[h][x];
                let m = u[g][hx].mul(&u[h][x]).mul(&u[gh][x].inverse().unwrap());
                let m = m.scale(&cocycle[g][h]);
                w[off[ly]..off[ly + 1]].clone_from_slice(&flat(&m));
            }
            twists.push(w);
        }
    }

    let (alg, domains, thetas, twists) = if rng.gen_bool(0.5) {
        change_basis(rng, alg, domains, thetas, twists)
    } else {
        (alg, domains, thetas, twists)
    };
    TwistedPartialAction::from_ambient(grp, Arc::new(alg), domains, &thetas, &twists)
        .expect("restricted global actions are well formed")
}

type Parts = (StructureAlgebra, Vec<SubspaceBasis>, Vec<Matrix>, Vec<Vector>);

/// Rewrites everything in the basis given by the rows of a random `P`.
fn change_basis(
    rng: &mut impl Rng,
    alg: StructureAlgebra,
    domains: Vec<SubspaceBasis>,
    thetas: Vec<Matrix>,
    twists: Vec<Vector>,
) -> Parts {
    let f = f5();
    let dim = alg.dim();
    let p = random_invertible(rng, dim);
    let pi = p.inverse().unwrap();
    let rows = p.row_vectors();
    let mut table = Vec::with_capacity(dim * dim);
    for a in &rows {
        for b in &rows {
            table.push(pi.vec_mul(&alg.mul(a, b)));
        }
    }
    let names = (1..=dim).map(|i| format!("b{i}")).collect();
    let alg = StructureAlgebra::new(f, names, table).expect("isomorphic to an associative algebra");
    let domains = domains
        .iter()
        .map(|d| {
            let vs: Vec<Vector> = d.vectors().iter().map(|x| pi.vec_mul(x)).collect();
            SubspaceBasis::span(f, dim, &vs)
        })
        .collect();
    let thetas = thetas.iter().map(|t| p.mul(t).mul(&pi)).collect();
    let twists = twists.iter().map(|w| pi.vec_mul(w)).collect();
    (alg, domains, thetas, twists)
}

/// Draws candidates until `count` pass [`verify_action`]. Returns the
/// actions and the number of rejected candidates.
pub fn random_verified_actions(seed: u64, count: usize) -> (Vec<TwistedPartialAction>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    while out.len() < count {
        let th = random_candidate(&mut rng);
        if verify_action(&th).passed() {
            out.push(th);
        } else {
            rejected += 1;
        }
    }
    (out, rejected)
}
