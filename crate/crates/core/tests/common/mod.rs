#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use twistcross::action::TwistedPartialAction;
use twistcross::algebra::StructureAlgebra;
use twistcross::crossed::CrossedProduct;
use twistcross::dsl::{self, Document};
use twistcross::graded::GradedAlgebra;
use twistcross::group::FiniteGroup;
use twistcross::{vector, Field, Matrix, SubspaceBasis};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// The corpus documents, sorted by file name.
pub fn corpus_files() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tc"))
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

pub fn corpus_doc(name: &str) -> Document {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.tc"))).unwrap();
    dsl::parse(&text).unwrap()
}

pub fn corpus_grading(file: &str, grading: &str) -> GradedAlgebra {
    let doc = corpus_doc(file);
    let f = doc.field(None).unwrap();
    dsl::build_grading(&doc, grading, f).unwrap()
}

pub fn corpus_action(file: &str, action: &str) -> TwistedPartialAction {
    let doc = corpus_doc(file);
    let f = doc.field(None).unwrap();
    dsl::build_action(&doc, action, f).unwrap()
}

/// Every grading declared in the corpus, with its file and name.
pub fn corpus_gradings() -> Vec<(String, String, GradedAlgebra)> {
    let mut out = Vec::new();
    for (file, text) in corpus_files() {
        let doc = dsl::parse(&text).unwrap();
        let f = doc.field(None).unwrap();
        for name in doc.gradings.keys() {
            out.push((file.clone(), name.clone(), dsl::build_grading(&doc, name, f).unwrap()));
        }
    }
    out
}

/// Every action declared in the corpus that passes verification.
pub fn corpus_verified_actions() -> Vec<(String, String, TwistedPartialAction)> {
    let mut out = Vec::new();
    for (file, text) in corpus_files() {
        let doc = dsl::parse(&text).unwrap();
        let f = doc.field(None).unwrap();
        for name in doc.actions.keys() {
            let th = dsl::build_action(&doc, name, f).unwrap();
            if twistcross::action::verify_action(&th).passed() {
                out.push((file.clone(), name.clone(), th));
            }
        }
    }
    out
}

/// Brute force over all `2^16` sign tables `w: V4 x V4 -> {1, -1}` for the
/// trivial action on `Q`: keeps the normalized cocycles whose twisted group
/// algebra satisfies `d_x^2 = -d_1` for `x != 1` and `d_a d_b = -d_b d_a`.
/// Tables are indexed `g * 4 + h` in the element order of `klein4`.
pub fn quaternion_sign_tables() -> Vec<[i64; 16]> {
    let v4 = FiniteGroup::klein4();
    let mut out = Vec::new();
    for mask in 0u32..1 << 16 {
        let w: [i64; 16] = std::array::from_fn(|i| if mask >> i & 1 == 1 { -1 } else { 1 });
        let normalized = (0..4).all(|g| w[g] == 1 && w[g * 4] == 1);
        let cocycle = (0..4).all(|g| {
            (0..4).all(|h| {
                (0..4).all(|t| w[g * 4 + h] * w[v4.mul(g, h) * 4 + t] == w[h * 4 + t] * w[g * 4 + v4.mul(h, t)])
            })
        });
        let squares = (1..4).all(|x| w[x * 4 + x] == -1);
        let (a, b) = (v4.index_of("a").unwrap(), v4.index_of("b").unwrap());
        let anti = w[a * 4 + b] == -w[b * 4 + a];
        if normalized && cocycle && squares && anti {
            out.push(w);
        }
    }
    out
}

/// The global trivial action of `V4` on `Q` twisted by `w`.
pub fn sign_twisted_action(w: &[i64; 16]) -> TwistedPartialAction {
    let f = Field::Rational;
    let grp = FiniteGroup::klein4();
    let alg = Arc::new(StructureAlgebra::new(f, vec!["one".into()], vec![vec![f.one()]]).unwrap());
    let doms = vec![SubspaceBasis::full(f, 1); 4];
    let thetas = vec![Matrix::identity(f, 1); 4];
    let twists = w
        .iter()
        .map(|&s| {
            let m = Matrix::from_i64(f, &[&[s]]);
            (m.clone(), m)
        })
        .collect();
    TwistedPartialAction::new(grp, alg, doms, thetas, twists).unwrap()
}

/// `(xy)z = x(yz)` for every triple of basis vectors.
pub fn associative_on_basis(alg: &StructureAlgebra) -> bool {
    let n = alg.dim();
    let e = |i: usize| {
        let mut v = vector::zero_vector(alg.field(), n);
        v[i] = alg.field().one();
        v
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            let xy = alg.mul(&e(i), &e(j));
            (0..n).all(|k| alg.mul(&xy, &e(k)) == alg.mul(&e(i), &alg.mul(&e(j), &e(k))))
        })
    })
}

/// Checks that `phi: B -> cp` is bijective, multiplicative on basis pairs,
/// and maps each `B_g` into the block of `g`.
pub fn phi_is_graded_isomorphism(gb: &GradedAlgebra, cp: &CrossedProduct, phi: &Matrix) -> Result<(), String> {
    let alg = gb.ambient();
    let n = alg.dim();
    if phi.rows() != n || phi.cols() != cp.dim() || !phi.is_invertible() {
        return Err(format!("phi is {}x{} and not bijective", phi.rows(), phi.cols()));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = phi.vec_mul(&alg.basis_product_vector(i, j));
            let rhs = cp.algebra().mul(phi.row(i), phi.row(j));
            if lhs != rhs {
                return Err(format!(
                    "phi not multiplicative on ({}, {})",
                    alg.names()[i],
                    alg.names()[j]
                ));
            }
        }
    }
    for g in gb.group().elements() {
        for x in gb.component(g).vectors() {
            let y = phi.vec_mul(&x);
            let outside = gb
                .group()
                .elements()
                .any(|h| h != g && !vector::is_zero(&y[cp.block_range(h)]));
            if outside {
                return Err(format!("phi moves B_{} out of its block", gb.group().name(g)));
            }
        }
    }
    Ok(())
}
