use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::{
    homotopic, is_irreducible, maps_between, pointed_homotopic, ClassOracle, HomotopyCertificate,
    HomotopyClass, Status,
};
use crate::image::Vertex;
use crate::maps::{compose, DigitalMap, MulTable};

use super::HSpaceStructure;

/// Outcome of an H-equivalence search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HEquivalenceVerdict {
    pub status: Status,
    /// Pointed maps `f: X → Y` and `g: Y → X`.
    pub witness: Option<(DigitalMap, DigitalMap)>,
    /// Certificates for `g∘f ≃ id`, `f∘g ≃ id`, `f∘μ_X ≃ μ_Y∘(f×f)` and
    /// `g∘μ_Y ≃ μ_X∘(g×g)`, in that order.
    pub certificates: Option<Vec<HomotopyCertificate>>,
    /// Candidate pairs examined.
    pub explored: usize,
}

/// The two sides of the intertwining condition for `f: X → Y`:
/// `f ∘ μ_X` and `μ_Y ∘ (f × f)`, both maps `NP_i(X, X) → Y`.
pub fn intertwining_pair(
    hx: &HSpaceStructure,
    hy: &HSpaceStructure,
    f: &DigitalMap,
) -> Result<(DigitalMap, DigitalMap)> {
    if f.domain() != hx.image() || f.codomain() != hy.image() {
        return Err(Error::DomainMismatch("f must map the first H-space to the second"));
    }
    let carrier = hx.as_map().domain().clone();
    let n = hx.image().len();
    let lhs = hx.mu().cells().iter().map(|&v| f.apply(v)).collect();
    let rhs = (0..n * n)
        .map(|r| hy.mu().get(f.apply(r / n), f.apply(r % n)))
        .collect();
    Ok((
        DigitalMap::new(carrier.clone(), hy.image().clone(), lhs)?,
        DigitalMap::new(carrier, hy.image().clone(), rhs)?,
    ))
}

struct Intertwining<'a> {
    from: &'a HSpaceStructure,
    to: &'a HSpaceStructure,
    pointed: bool,
    budget: usize,
    cache: HashMap<Vec<Vertex>, Status>,
}

impl Intertwining<'_> {
    fn decide(&self, f: &DigitalMap) -> Result<(Status, Option<HomotopyCertificate>)> {
        let (lhs, rhs) = intertwining_pair(self.from, self.to, f)?;
        let cat = self.from.category();
        let verdict = if self.pointed {
            let e = self.from.basepoint();
            let base = e * self.from.image().len() + e;
            match pointed_homotopic(&lhs, &rhs, cat, base, self.to.basepoint(), self.budget) {
                Err(Error::NotPointed { .. }) => return Ok((Status::No, None)),
                other => other?,
            }
        } else {
            homotopic(&lhs, &rhs, cat, self.budget)?
        };
        Ok((verdict.status, verdict.certificate))
    }

    fn status(&mut self, f: &DigitalMap) -> Result<Status> {
        if let Some(&s) = self.cache.get(f.values()) {
            return Ok(s);
        }
        let (s, _) = self.decide(f)?;
        self.cache.insert(f.values().to_vec(), s);
        Ok(s)
    }
}

/// Searches pointed maps `f: (X, e_X) → (Y, e_Y)` and `g: (Y, e_Y) → (X, e_X)`
/// with `g∘f ≃ id_X`, `f∘g ≃ id_Y`, `f∘μ_X ≃ μ_Y∘(f×f)` and
/// `g∘μ_Y ≃ μ_X∘(g×g)`. The homotopies are unpointed unless
/// `pointed_homotopies` is set.
pub fn h_equivalent(
    hx: &HSpaceStructure,
    hy: &HSpaceStructure,
    budget: usize,
    pointed_homotopies: bool,
) -> Result<HEquivalenceVerdict> {
    let cat = hx.category();
    if cat != hy.category() {
        return Err(Error::DomainMismatch("H-spaces must share a category"));
    }
    let (x, y) = (hx.image(), hy.image());
    let (ex, ey) = (hx.basepoint(), hy.basepoint());
    let verdict = |status, explored| HEquivalenceVerdict {
        status,
        witness: None,
        certificates: None,
        explored,
    };

    let (fs, gs) = match (maps_between(x, y, Some((ex, ey))), maps_between(y, x, Some((ey, ex)))) {
        (Ok(f), Ok(g)) => (f.collect::<Vec<_>>(), g.collect::<Vec<_>>()),
        (Err(Error::CapExceeded { .. }), _) | (_, Err(Error::CapExceeded { .. })) => {
            return Ok(verdict(Status::Inconclusive, 0))
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let id_x = DigitalMap::identity(x.clone());
    let id_y = DigitalMap::identity(y.clone());
    let pin = |e: Vertex| pointed_homotopies.then_some((e, e));
    let mut oracle_x = ClassOracle::new(&id_x, cat, pin(ex), budget)?;
    let mut oracle_y = ClassOracle::new(&id_y, cat, pin(ey), budget)?;
    let mut forward = Intertwining {
        from: hx,
        to: hy,
        pointed: pointed_homotopies,
        budget,
        cache: HashMap::new(),
    };
    let mut backward = Intertwining {
        from: hy,
        to: hx,
        pointed: pointed_homotopies,
        budget,
        cache: HashMap::new(),
    };

    let unit_law = |h: &DigitalMap, id: &DigitalMap, oracle: &mut ClassOracle, e: Vertex| -> Result<(Status, Option<HomotopyCertificate>)> {
        if let Some(b) = oracle.contains(h.values()) {
            if !b {
                return Ok((Status::No, None));
            }
        }
        let v = if pointed_homotopies {
            pointed_homotopic(h, id, cat, e, e, budget)?
        } else {
            homotopic(h, id, cat, budget)?
        };
        Ok((v.status, v.certificate))
    };

    let mut explored = 0;
    let mut any_inconclusive = false;
    for f in &fs {
        // The unit-law filters are cheap class lookups, so they run before
        // the intertwining test on the product.
        let mut candidates = Vec::new();
        for g in &gs {
            explored += 1;
            if explored > budget {
                return Ok(verdict(Status::Inconclusive, budget));
            }
            let gf = compose(g, f)?;
            let fg = compose(f, g)?;
            let s1 = oracle_x.contains(gf.values()).map(Status::from_bool);
            let s2 = oracle_y.contains(fg.values()).map(Status::from_bool);
            if s1 != Some(Status::No) && s2 != Some(Status::No) {
                candidates.push((g, gf, fg));
            }
        }
        if candidates.is_empty() {
            continue;
        }
        let s3 = forward.status(f)?;
        if s3 == Status::No {
            continue;
        }
        for (g, gf, fg) in candidates {
            let s4 = backward.status(g)?;
            if s4 == Status::No {
                continue;
            }
            let c1 = unit_law(&gf, &id_x, &mut oracle_x, ex)?;
            let c2 = unit_law(&fg, &id_y, &mut oracle_y, ey)?;
            match c1.0.and(c2.0).and(s3).and(s4) {
                Status::Yes => {
                    let (_, c3) = forward.decide(f)?;
                    let (_, c4) = backward.decide(g)?;
                    let certificates = [c1.1, c2.1, c3, c4].into_iter().collect::<Option<Vec<_>>>();
                    return Ok(HEquivalenceVerdict {
                        status: Status::Yes,
                        witness: Some((f.clone(), g.clone())),
                        certificates,
                        explored,
                    });
                }
                Status::Inconclusive => any_inconclusive = true,
                Status::No => {}
            }
        }
    }
    Ok(verdict(
        if any_inconclusive { Status::Inconclusive } else { Status::No },
        explored,
    ))
}

fn transport_unchecked(hx: &HSpaceStructure, f: &DigitalMap, g: &DigitalMap) -> Result<HSpaceStructure> {
    let y = f.codomain().clone();
    let mu = MulTable::from_fn(y.len(), |a, b| f.apply(hx.mu().get(g.apply(a), g.apply(b))))?;
    HSpaceStructure::new(y, f.apply(hx.basepoint()), mu, hx.category())
}

fn require_hspace(h: &HSpaceStructure, budget: usize, what: &str) -> Result<()> {
    match h.verify(budget)?.is_hspace {
        Status::Yes => Ok(()),
        Status::No => Err(Error::StructureViolation(format!("{what} is not an H-space"))),
        Status::Inconclusive => Err(Error::BudgetExhausted {
            what: "verifying a transported structure",
            budget,
        }),
    }
}

/// Moves the structure of `H_X` along a pointed homotopy equivalence
/// `f: X → Y`, `g: Y → X`: `e_Y = f(e_X)` and `μ_Y = f ∘ μ_X ∘ (g × g)`.
pub fn transport_structure(
    hx: &HSpaceStructure,
    f: &DigitalMap,
    g: &DigitalMap,
    budget: usize,
) -> Result<HSpaceStructure> {
    if f.domain() != hx.image() || g.codomain() != hx.image() || f.codomain() != g.domain() {
        return Err(Error::DomainMismatch("need f: X → Y and g: Y → X"));
    }
    for h in [f, g] {
        if let Some((a, b)) = h.discontinuity() {
            return Err(Error::Discontinuous { a, b });
        }
    }
    let ey = f.apply(hx.basepoint());
    if g.apply(ey) != hx.basepoint() {
        return Err(Error::NotPointed {
            base: ey,
            target: hx.basepoint(),
        });
    }
    let cat = hx.category();
    let id_x = DigitalMap::identity(hx.image().clone());
    let id_y = DigitalMap::identity(f.codomain().clone());
    let status = homotopic(&compose(g, f)?, &id_x, cat, budget)?
        .status
        .and(homotopic(&compose(f, g)?, &id_y, cat, budget)?.status);
    match status {
        Status::Yes => {}
        Status::No => return Err(Error::NotHomotopyEquivalence),
        Status::Inconclusive => {
            return Err(Error::BudgetExhausted {
                what: "checking the homotopy equivalence",
                budget,
            })
        }
    }
    let out = transport_unchecked(hx, f, g)?;
    require_hspace(&out, budget, "transported structure")?;
    Ok(out)
}

fn idempotent_power(r: &DigitalMap) -> Result<DigitalMap> {
    let mut p = r.clone();
    for _ in 0..r.domain().len() {
        p = compose(&p, r)?;
    }
    let q = p.clone();
    loop {
        if compose(&p, &p)? == p {
            return Ok(p);
        }
        p = compose(&p, &q)?;
    }
}

/// A non-surjective idempotent map homotopic to the identity, preferring one
/// that fixes the basepoint.
fn reducing_retraction(h: &HSpaceStructure, witness: &DigitalMap, budget: usize) -> Result<DigitalMap> {
    let e = h.basepoint();
    let first = idempotent_power(witness)?;
    if first.apply(e) == e {
        return Ok(first);
    }
    let id = DigitalMap::identity(h.image().clone());
    if let HomotopyClass::Complete(members) = crate::homotopy::homotopy_class(&id, h.category(), budget)? {
        if let Some(m) = members.iter().find(|m| !m.is_surjective() && m.apply(e) == e) {
            return idempotent_power(m);
        }
    }
    Ok(first)
}

/// Replaces a connected H-space by an H-equivalent left-unital structure on
/// an irreducible image.
///
/// Reducible images are first shrunk along idempotent non-surjective maps
/// homotopic to the identity, transporting the multiplication each time.
/// On the irreducible result, `p = μ_e(e)` and `τ = μ ∘ (μ_e⁻¹ × μ_e⁻¹)`.
pub fn left_unital_reduction(h: &HSpaceStructure, budget: usize) -> Result<HSpaceStructure> {
    if !h.image().is_connected() {
        return Err(Error::NotConnected);
    }
    let cat = h.category();
    let mut cur = h.clone();
    loop {
        let v = is_irreducible(cur.image(), cat, budget)?;
        match v.status {
            Status::Yes => break,
            Status::Inconclusive => {
                return Err(Error::BudgetExhausted {
                    what: "checking irreducibility",
                    budget,
                })
            }
            Status::No => {
                let witness = v.witness().expect("reducible verdicts carry a witness");
                let r = reducing_retraction(&cur, witness, budget)?;
                let keep: Vec<Vertex> = {
                    let mut k: Vec<Vertex> = r.values().to_vec();
                    k.sort_unstable();
                    k.dedup();
                    k
                };
                let y = Arc::new(cur.image().induced(&keep)?);
                let pos = |v: Vertex| keep.binary_search(&v).expect("r maps into its image");
                let f = DigitalMap::from_fn(cur.image().clone(), y.clone(), |v| pos(r.apply(v)))?;
                let g = DigitalMap::from_fn(y.clone(), cur.image().clone(), |i| keep[i])?;
                cur = transport_unchecked(&cur, &f, &g)?;
                require_hspace(&cur, budget, "reduced structure")?;
            }
        }
    }

    let e = cur.basepoint();
    let mu_e = cur.left(e)?;
    let inv = mu_e.inverse().ok_or(Error::MuENotInvertible)?;
    if !inv.is_continuous() {
        return Err(Error::MuENotInvertible);
    }
    let p = mu_e.apply(e);
    let tau = MulTable::from_fn(cur.image().len(), |a, b| cur.mu().get(inv.apply(a), inv.apply(b)))?;
    let out = HSpaceStructure::new(cur.image().clone(), p, tau, cat)?;
    let x = out.image().clone();
    if !x.vertices().all(|a| out.mu().get(p, a) == a) {
        return Err(Error::StructureViolation("reduction is not left-unital".into()));
    }
    let commutes = x.vertices().all(|v| cur.mu().get(e, v) == cur.mu().get(v, e));
    if commutes && !x.vertices().all(|a| out.mu().get(a, p) == a) {
        return Err(Error::StructureViolation("commuting unit slices but reduction is not unital".into()));
    }
    Ok(out)
}
