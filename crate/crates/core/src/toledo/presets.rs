//! Ready-made representations: Fuchsian groups acting on the complex
//! geodesic polar to `e₃`, and the trivial representation.

use num_complex::Complex64;

use super::rep::{central_residual, ConeWord, Generator, RepresentationData, Word};
use super::ToledoError;
use crate::chp::sample::embed_su11;
use crate::chp::HMatrix;
use crate::orbifold::OrbifoldSignature;
use crate::quadrature::{octagon_domain, triangle_domain, triangle_orders, GeodesicPolygon, Mat2};

/// Genus-two surface group acting through `A ↦ diag(A, 1)` on the complex
/// geodesic polar to `e₃`; sources are the octagon side pairings.
pub fn genus2() -> (RepresentationData, GeodesicPolygon) {
    let dom = octagon_domain();
    let generators = dom
        .side_pairings()
        .expect("octagon has pairings")
        .iter()
        .map(|p| Generator {
            source: p.matrix,
            target: embed_su11(&p.matrix),
        })
        .collect();
    let rep = RepresentationData {
        signature: OrbifoldSignature::surface(2),
        generators,
        relators: vec![vec![1, -2, 3, -4, -1, 2, -3, 4]],
        cone_assignment: Vec::new(),
    };
    (rep, dom)
}

/// `λ·diag(c·A, 1)` with `λ³ = c⁻²`, so the determinant is one.
fn twisted_embedding(a: &Mat2, c: Complex64) -> HMatrix {
    embed_su11(&(a * c)) * c.powf(-2.0 / 3.0)
}

struct TrianglePresentation {
    dom: GeodesicPolygon,
    x: Mat2,
    y: Mat2,
    pa: u64,
    pc: u64,
    signature: OrbifoldSignature,
    relators: Vec<Word>,
    cone_assignment: Vec<ConeWord>,
}

impl TrianglePresentation {
    fn rep(&self, tx: HMatrix, ty: HMatrix) -> RepresentationData {
        RepresentationData {
            signature: self.signature.clone(),
            generators: vec![
                Generator {
                    source: self.x,
                    target: tx,
                },
                Generator {
                    source: self.y,
                    target: ty,
                },
            ],
            relators: self.relators.clone(),
            cone_assignment: self.cone_assignment.clone(),
        }
    }
}

fn triangle_presentation(p: u64, q: u64, r: u64) -> Result<TrianglePresentation, ToledoError> {
    let dom = triangle_domain(p, q, r)?;
    let (pa, pb, pc) = triangle_orders(p, q, r);
    let pairs = dom.side_pairings().expect("triangle domain has pairings");
    let (x, y) = (pairs[0].matrix, pairs[1].matrix);
    let signature = dom.signature().expect("triangle domain has a signature").clone();
    let relators = vec![vec![1; pa as usize], vec![2; pc as usize], [2, 1].repeat(pb as usize)];
    let cone_assignment = vec![
        ConeWord {
            word: vec![1],
            order: pa,
        },
        ConeWord {
            word: vec![2, 1],
            order: pb,
        },
        ConeWord {
            word: vec![2],
            order: pc,
        },
    ];
    Ok(TrianglePresentation {
        dom,
        x,
        y,
        pa,
        pc,
        signature,
        relators,
        cone_assignment,
    })
}

/// The `(p, q, r)` triangle group with targets `diag(A, 1)`.
///
/// Elliptic generators of order `m` have `A^m = -I`, and `diag(-I, 1)` is
/// not central in SU(2,1), so this is generally not a representation into
/// PU(2,1): validation reports the relators that fail. The map
/// `u ↦ (1, u, 0)` is still equivariant for the generators.
pub fn triangle_block(p: u64, q: u64, r: u64) -> Result<(RepresentationData, GeodesicPolygon), ToledoError> {
    let t = triangle_presentation(p, q, r)?;
    let rep = t.rep(embed_su11(&t.x), embed_su11(&t.y));
    Ok((rep, t.dom))
}

/// The `(p, q, r)` triangle group acting on the complex geodesic polar to
/// `e₃`, with the quadrilateral from [`triangle_domain`].
///
/// Each generator is embedded as `λ·diag(c·A, 1)` with a phase `c` chosen
/// so that every relator maps to the center. Such phases exist exactly when
/// `(3/2)χ` lies in `ℤ + Σ(1/m_k)ℤ`, e.g. for (5,5,5) but not for (2,3,7).
pub fn triangle(p: u64, q: u64, r: u64) -> Result<(RepresentationData, GeodesicPolygon), ToledoError> {
    let t = triangle_presentation(p, q, r)?;
    let (pa, pc) = (t.pa, t.pc);
    let phase = |k: u64, m: u64| Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / m as f64);
    for kx in 0..2 * pa {
        for ky in 0..2 * pc {
            let rep = t.rep(
                twisted_embedding(&t.x, phase(kx, pa)),
                twisted_embedding(&t.y, phase(ky, pc)),
            );
            let ok = rep
                .relators
                .iter()
                .all(|w| central_residual(&rep.eval_target(w).expect("letters in range")) < 1e-9);
            if ok {
                return Ok((rep, t.dom));
            }
        }
    }
    Err(ToledoError::InvalidRepresentation(format!(
        "the ({p},{q},{r}) triangle group has no central lift through a complex geodesic"
    )))
}

/// Same presentation, every target the identity.
pub fn trivial(rep: &RepresentationData) -> RepresentationData {
    let mut out = rep.clone();
    for g in &mut out.generators {
        g.target = HMatrix::identity();
    }
    out
}
