use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::{is_irreducible, Status};
use crate::image::{DigitalImage, Vertex};
use crate::maps::{Category, MulTable};

use super::{check_table, HSpaceStructure};

/// A continuous binary operation with no axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagmaStructure {
    image: Arc<DigitalImage>,
    tau: MulTable,
    category: Category,
}

impl MagmaStructure {
    pub fn new(image: Arc<DigitalImage>, tau: MulTable, category: Category) -> Result<Self> {
        check_table(&image, &tau, category)?;
        Ok(MagmaStructure {
            image,
            tau,
            category,
        })
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn tau(&self) -> &MulTable {
        &self.tau
    }

    pub fn category(&self) -> Category {
        self.category
    }
}

/// Adjoins an isolated unit `e = |Z|` to a magma: `μ` is `τ` on `Z × Z` and
/// a projection whenever one argument is `e`.
pub fn magma_point_extension(m: &MagmaStructure) -> HSpaceStructure {
    let nz = m.image.len();
    let x = Arc::new(m.image.disjoint_union(&DigitalImage::point()));
    let mu = MulTable::from_fn(nz + 1, |a, b| match (a == nz, b == nz) {
        (true, _) => b,
        (_, true) => a,
        _ => m.tau.get(a, b),
    })
    .expect("values lie in X");
    HSpaceStructure::new(x, nz, mu, m.category).expect("extension of a continuous magma is continuous")
}

/// The shape of an irreducible NP₂ H-space: an isolated unit `e`, the rest
/// `Z`, a magma `τ` on `Z` and the part `A ⊆ Z × Z` that `μ` sends into `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Np2Decomposition {
    /// The unit.
    pub e: Vertex,
    /// Vertices of `X` other than `e`, ascending. Index `i` of the magma is `z[i]`.
    pub z: Vec<Vertex>,
    /// Pairs of original vertices with `μ(a, b) ∈ Z`.
    pub a: Vec<(Vertex, Vertex)>,
    /// `τ` on the induced image of `Z`, in local indices. `None` when `Z` is empty.
    pub magma: Option<MagmaStructure>,
    /// Value of `τ` off `A` (the least vertex of `Z`).
    pub z_default: Option<Vertex>,
}

impl Np2Decomposition {
    /// Rebuilds `μ` from the piecewise description.
    pub fn reconstruct(&self, n: usize) -> MulTable {
        let local = |v: Vertex| self.z.binary_search(&v).ok();
        MulTable::from_fn(n, |x, y| {
            if x == self.e {
                return y;
            }
            if y == self.e {
                return x;
            }
            if self.a.binary_search(&(x, y)).is_err() {
                return self.e;
            }
            let m = self.magma.as_ref().expect("A nonempty implies Z nonempty");
            self.z[m.tau.get(local(x).unwrap(), local(y).unwrap())]
        })
        .expect("values lie in X")
    }
}

fn violation(msg: &str) -> Error {
    Error::StructureViolation(msg.to_string())
}

/// Decomposes an irreducible category-2 H-space and checks every part of the
/// classification, including that the piecewise formula gives back `μ`.
pub fn decompose_np2(h: &HSpaceStructure, budget: usize) -> Result<Np2Decomposition> {
    if h.category() != Category::Np2 {
        return Err(Error::NotCategory2);
    }
    let x = h.image();
    match is_irreducible(x, Category::Np2, budget)?.status {
        Status::Yes => {}
        Status::No => return Err(Error::NotIrreducible),
        Status::Inconclusive => {
            return Err(Error::BudgetExhausted {
                what: "checking irreducibility",
                budget,
            })
        }
    }
    let e = h.basepoint();
    let mu = h.mu();
    if x.degree(e) != 0 {
        return Err(violation("the unit is not isolated"));
    }
    if !x.vertices().all(|v| mu.get(e, v) == v && mu.get(v, e) == v) {
        return Err(violation("the unit laws do not hold exactly"));
    }
    let z: Vec<Vertex> = x.vertices().filter(|&v| v != e).collect();
    if z.is_empty() {
        return Ok(Np2Decomposition {
            e,
            z,
            a: Vec::new(),
            magma: None,
            z_default: None,
        });
    }
    let mut a = Vec::new();
    for &p in &z {
        for &q in &z {
            if mu.get(p, q) != e {
                a.push((p, q));
            }
        }
    }
    for &(p, q) in &a {
        for &r in x.neighborhood(p) {
            for &s in x.neighborhood(q) {
                if mu.get(r, s) == e {
                    return Err(violation("A is not a union of components of Z × Z"));
                }
            }
        }
    }
    let zimg = Arc::new(x.induced(&z)?);
    let local = |v: Vertex| z.binary_search(&v).expect("v in Z");
    let tau = MulTable::from_fn(z.len(), |i, j| {
        let m = mu.get(z[i], z[j]);
        if m == e {
            0
        } else {
            local(m)
        }
    })?;
    let magma = MagmaStructure::new(zimg, tau, Category::Np2)
        .map_err(|_| violation("the magma on Z is not continuous"))?;
    let d = Np2Decomposition {
        e,
        z_default: Some(z[0]),
        z,
        a,
        magma: Some(magma),
    };
    if &d.reconstruct(x.len()) != mu {
        return Err(violation("the piecewise formula does not reconstruct μ"));
    }
    Ok(d)
}
