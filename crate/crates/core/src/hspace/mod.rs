//! Digital H-spaces: a digital image `X`, a basepoint `e` and a continuous
//! multiplication `μ : NP_i(X, X) → X` whose unit-law composites
//! `ν_e = μ(·, e)` and `μ_e = μ(e, ·)` are homotopic to the identity.

mod equivalence;
mod fixtures;
mod np2;
mod search;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::{
    homotopic, maps_between, pointed_homotopic, ClassOracle, HomotopyCertificate, HomotopyVerdict,
    Status, DEFAULT_BUDGET,
};
use crate::image::{DigitalImage, Vertex};
use crate::maps::{
    constant_map, cube, left_mult, pair_map, right_mult, Category, DigitalMap, MulTable,
};

pub use equivalence::{
    h_equivalent, left_unital_reduction, transport_structure, HEquivalenceVerdict,
};
pub use fixtures::{fixture, Fixture, FIXTURE_NAMES};
pub use np2::{decompose_np2, magma_point_extension, MagmaStructure, Np2Decomposition};
pub use search::{search_hspace_multiplications, HSpaceSearch, SEARCH_CAP};

/// A pointed image with a continuous multiplication table.
///
/// Construction checks only that `μ` is continuous on the product; the unit
/// laws are decided by [`verify_hspace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSpaceStructure {
    image: Arc<DigitalImage>,
    basepoint: Vertex,
    mu: MulTable,
    category: Category,
}

impl HSpaceStructure {
    pub fn new(image: Arc<DigitalImage>, basepoint: Vertex, mu: MulTable, category: Category) -> Result<Self> {
        image.check_vertex(basepoint)?;
        check_table(&image, &mu, category)?;
        Ok(HSpaceStructure {
            image,
            basepoint,
            mu,
            category,
        })
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn basepoint(&self) -> Vertex {
        self.basepoint
    }

    pub fn mu(&self) -> &MulTable {
        &self.mu
    }

    pub fn category(&self) -> Category {
        self.category
    }

    /// `μ_x = μ(x, ·)`.
    pub fn left(&self, x: Vertex) -> Result<DigitalMap> {
        left_mult(&self.image, &self.mu, x)
    }

    /// `ν_x = μ(·, x)`.
    pub fn right(&self, x: Vertex) -> Result<DigitalMap> {
        right_mult(&self.image, &self.mu, x)
    }

    /// `μ` as a map out of the product carrier.
    pub fn as_map(&self) -> DigitalMap {
        self.mu.as_map(&self.image, self.category).expect("orders agree")
    }

    pub fn verify(&self, budget: usize) -> Result<HSpaceReport> {
        verify_hspace(&self.image, self.basepoint, &self.mu, self.category, budget)
    }
}

pub(crate) fn check_table(image: &DigitalImage, mu: &MulTable, cat: Category) -> Result<()> {
    if mu.order() != image.len() {
        return Err(Error::DomainMismatch("table order differs from image size"));
    }
    match mu.discontinuity(image, cat) {
        Some((a, b)) => Err(Error::DiscontinuousMultiplication { a, b }),
        None => Ok(()),
    }
}

/// Result of [`verify_hspace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSpaceReport {
    /// Both unit laws hold up to homotopy.
    pub is_hspace: Status,
    /// Both unit laws hold exactly.
    pub unital: bool,
    /// Both unit laws hold up to homotopy fixing the basepoint.
    pub pointed: Status,
    /// `μ(e, x) = x` for all `x`.
    pub left_unit_exact: bool,
    /// `μ(x, e) = x` for all `x`.
    pub right_unit_exact: bool,
    /// Certificates for `μ_e ≃ id` and `ν_e ≃ id` when `is_hspace` is `Yes`.
    pub certificates: Option<(HomotopyCertificate, HomotopyCertificate)>,
    /// The same for the pointed homotopies.
    pub pointed_certificates: Option<(HomotopyCertificate, HomotopyCertificate)>,
}

/// Checks continuity of `μ`, then decides both unit-law homotopies, their
/// pointed versions, and the exact unit laws.
pub fn verify_hspace(
    x: &Arc<DigitalImage>,
    e: Vertex,
    mu: &MulTable,
    cat: Category,
    budget: usize,
) -> Result<HSpaceReport> {
    x.check_vertex(e)?;
    check_table(x, mu, cat)?;
    let id = DigitalMap::identity(x.clone());
    let mu_e = left_mult(x, mu, e)?;
    let nu_e = right_mult(x, mu, e)?;

    let left = homotopic(&mu_e, &id, cat, budget)?;
    let right = homotopic(&nu_e, &id, cat, budget)?;
    let is_hspace = left.status.and(right.status);
    let certificates = both_certificates(&left, &right);

    let (pointed, pointed_certificates) = if mu.get(e, e) != e || is_hspace == Status::No {
        (Status::No, None)
    } else {
        let pl = pointed_homotopic(&mu_e, &id, cat, e, e, budget)?;
        let pr = pointed_homotopic(&nu_e, &id, cat, e, e, budget)?;
        (pl.status.and(pr.status), both_certificates(&pl, &pr))
    };

    Ok(HSpaceReport {
        is_hspace,
        unital: mu_e.is_identity() && nu_e.is_identity(),
        pointed,
        left_unit_exact: mu_e.is_identity(),
        right_unit_exact: nu_e.is_identity(),
        certificates,
        pointed_certificates,
    })
}

fn both_certificates(
    a: &HomotopyVerdict,
    b: &HomotopyVerdict,
) -> Option<(HomotopyCertificate, HomotopyCertificate)> {
    if a.status.is_yes() && b.status.is_yes() {
        a.certificate.clone().zip(b.certificate.clone())
    } else {
        None
    }
}

/// The two composites `μ ∘ (μ × id)` and `μ ∘ (id × μ)` as maps
/// `NP_i(X, X, X) → X`.
pub fn associativity_composites(h: &HSpaceStructure) -> (DigitalMap, DigitalMap) {
    let prod = cube(&h.image, h.category);
    let mu = &h.mu;
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for r in prod.carrier().vertices() {
        let t = prod.unrank(r);
        left.push(mu.get(mu.get(t[0], t[1]), t[2]));
        right.push(mu.get(t[0], mu.get(t[1], t[2])));
    }
    let carrier = prod.carrier().clone();
    (
        DigitalMap::from_parts_unchecked(carrier.clone(), h.image.clone(), left),
        DigitalMap::from_parts_unchecked(carrier, h.image.clone(), right),
    )
}

/// Exact associativity of the table.
pub fn is_associative(h: &HSpaceStructure) -> bool {
    let n = h.image.len();
    let mu = &h.mu;
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| mu.get(mu.get(a, b), c) == mu.get(a, mu.get(b, c)))))
}

/// Decides `μ ∘ (μ × id) ≃ μ ∘ (id × μ)`. Exactly associative tables answer
/// `Yes` with a zero-step certificate.
pub fn is_homotopy_associative(h: &HSpaceStructure, budget: usize) -> Result<HomotopyVerdict> {
    let (left, right) = associativity_composites(h);
    if left == right {
        return Ok(HomotopyVerdict {
            status: Status::Yes,
            certificate: Some(HomotopyCertificate::trivial(left, h.category)),
            explored: 1,
            budget,
        });
    }
    match homotopic(&left, &right, h.category, budget) {
        Err(Error::CapExceeded { .. }) => Ok(HomotopyVerdict {
            status: Status::Inconclusive,
            certificate: None,
            explored: 0,
            budget,
        }),
        other => other,
    }
}

/// The self-maps `x ↦ μ(μ(x, p(x)), q(x))` and `x ↦ μ(x, μ(p(x), q(x)))`.
pub fn associator_probe(
    h: &HSpaceStructure,
    p: &DigitalMap,
    q: &DigitalMap,
) -> Result<(DigitalMap, DigitalMap)> {
    for f in [p, q] {
        if f.domain() != &h.image || f.codomain() != &h.image {
            return Err(Error::DomainMismatch("probe maps must be self-maps of the H-space"));
        }
    }
    let mu = &h.mu;
    let x = &h.image;
    let a = DigitalMap::from_fn(x.clone(), x.clone(), |v| mu.get(mu.get(v, p.apply(v)), q.apply(v)))?;
    let b = DigitalMap::from_fn(x.clone(), x.clone(), |v| mu.get(v, mu.get(p.apply(v), q.apply(v))))?;
    Ok((a, b))
}

/// Exact inverses `α, β` with `μ(α(x), x) = e = μ(x, β(x))`, built by
/// inverting the slice maps.
///
/// Needs a connected image. When every slice is a bijection the inverses are
/// built directly; otherwise the image must be reducible (`NotIrreducible`),
/// and a non-bijective slice on an irreducible image is reported as
/// `MultiplicationNotInvertible`. Returns `None` if `α` or `β` fails to be
/// continuous.
pub fn find_exact_inverses(h: &HSpaceStructure) -> Result<Option<(DigitalMap, DigitalMap)>> {
    let x = &h.image;
    if !x.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = x.len();
    let e = h.basepoint;
    let mut alpha = vec![usize::MAX; n];
    let mut beta = vec![usize::MAX; n];
    for v in x.vertices() {
        let row = h.left(v)?;
        let col = h.right(v)?;
        let (Some(ri), Some(ci)) = (row.inverse(), col.inverse()) else {
            let irreducible = crate::homotopy::is_irreducible(x, h.category, DEFAULT_BUDGET)?;
            return Err(match irreducible.status {
                Status::Yes => Error::MultiplicationNotInvertible { x: v },
                Status::No => Error::NotIrreducible,
                Status::Inconclusive => Error::BudgetExhausted {
                    what: "checking irreducibility",
                    budget: DEFAULT_BUDGET,
                },
            });
        };
        beta[v] = ri.apply(e);
        alpha[v] = ci.apply(e);
    }
    let alpha = DigitalMap::new(x.clone(), x.clone(), alpha)?;
    let beta = DigitalMap::new(x.clone(), x.clone(), beta)?;
    debug_assert!(x.vertices().all(|v| h.mu.get(alpha.apply(v), v) == e && h.mu.get(v, beta.apply(v)) == e));
    if alpha.is_continuous() && beta.is_continuous() {
        Ok(Some((alpha, beta)))
    } else {
        Ok(None)
    }
}

/// Which side an inverse acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `μ ∘ (α, id) ≃ c_e`.
    Left,
    /// `μ ∘ (id, β) ≃ c_e`.
    Right,
}

/// Outcome of a homotopy-inverse search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseVerdict {
    pub status: Status,
    /// The inverse map found.
    pub witness: Option<DigitalMap>,
    /// Homotopy from the composite to the constant map at `e`.
    pub certificate: Option<HomotopyCertificate>,
    /// Candidate maps examined.
    pub explored: usize,
    /// Candidates rejected because the pair map into the product is not
    /// continuous.
    pub pair_discontinuous: usize,
}

/// The composite `μ ∘ (α, id)` or `μ ∘ (id, α)`, if the pair map is
/// continuous into `NP_i(X, X)`.
pub fn inverse_composite(h: &HSpaceStructure, alpha: &DigitalMap, side: Side) -> Result<Option<DigitalMap>> {
    let id = DigitalMap::identity(h.image.clone());
    let (pair, continuous) = match side {
        Side::Left => pair_map(alpha, &id, h.category)?,
        Side::Right => pair_map(&id, alpha, h.category)?,
    };
    if !continuous {
        return Ok(None);
    }
    let values = pair.values().iter().map(|&r| h.mu.cells()[r]).collect();
    Ok(Some(DigitalMap::new(h.image.clone(), h.image.clone(), values)?))
}

/// Searches continuous self-maps for a homotopy inverse on the given side.
/// Exact inverses are tried first; every candidate must pass the pair
/// continuity precheck before its composite is compared with `c_e`.
pub fn has_homotopy_inverse(h: &HSpaceStructure, side: Side, budget: usize) -> Result<InverseVerdict> {
    let x = &h.image;
    let e = h.basepoint;
    let c_e = constant_map(x, x, e)?;
    let mut oracle = ClassOracle::new(&c_e, h.category, None, budget)?;
    let mut explored = 0;
    let mut pair_discontinuous = 0;
    let mut any_inconclusive = false;

    let exact = match find_exact_inverses(h) {
        Ok(Some((alpha, beta))) => Some(match side {
            Side::Left => alpha,
            Side::Right => beta,
        }),
        _ => None,
    };
    let candidates = exact.into_iter().chain(maps_between(x, x, None)?);
    for alpha in candidates {
        explored += 1;
        if explored > budget {
            any_inconclusive = true;
            break;
        }
        let Some(comp) = inverse_composite(h, &alpha, side)? else {
            pair_discontinuous += 1;
            continue;
        };
        let status = match oracle.contains(comp.values()) {
            Some(b) => Status::from_bool(b),
            None => homotopic(&comp, &c_e, h.category, budget)?.status,
        };
        match status {
            Status::Yes => {
                let cert = homotopic(&comp, &c_e, h.category, budget)?.certificate;
                return Ok(InverseVerdict {
                    status: Status::Yes,
                    witness: Some(alpha),
                    certificate: cert,
                    explored,
                    pair_discontinuous,
                });
            }
            Status::Inconclusive => any_inconclusive = true,
            Status::No => {}
        }
    }
    Ok(InverseVerdict {
        status: if any_inconclusive { Status::Inconclusive } else { Status::No },
        witness: None,
        certificate: None,
        explored,
        pair_discontinuous,
    })
}

pub fn has_left_homotopy_inverse(h: &HSpaceStructure, budget: usize) -> Result<InverseVerdict> {
    has_homotopy_inverse(h, Side::Left, budget)
}

pub fn has_right_homotopy_inverse(h: &HSpaceStructure, budget: usize) -> Result<InverseVerdict> {
    has_homotopy_inverse(h, Side::Right, budget)
}
