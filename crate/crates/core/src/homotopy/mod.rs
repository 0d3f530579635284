//! Exact NP₁/NP₂ homotopy decisions between continuous maps.
//!
//! Every query explores the single-step homotopy graph (see [`search`]) and
//! reports a tri-state [`HomotopyVerdict`]: `Yes` carries a certificate chain,
//! `No` means the relevant component was exhausted, `Inconclusive` means the
//! node budget ran out first.

mod certificate;
pub(crate) mod search;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

pub use certificate::HomotopyCertificate;

use crate::error::{Error, Result};
use crate::image::{DigitalImage, Vertex};
use crate::maps::{compose, Category, ContinuousMaps, DigitalMap, MAP_ENUMERATION_CAP};
use search::{connect, explore, to_table, Connection, Exploration, MapSpace, Table};

/// Default cap on visited maps per search.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Yes,
    No,
    Inconclusive,
}

impl Status {
    pub fn is_yes(self) -> bool {
        self == Status::Yes
    }

    /// Conjunction of two verdicts: `No` dominates, then `Inconclusive`.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::No, _) | (_, Status::No) => Status::No,
            (Status::Yes, Status::Yes) => Status::Yes,
            _ => Status::Inconclusive,
        }
    }

    pub fn from_bool(b: bool) -> Status {
        if b {
            Status::Yes
        } else {
            Status::No
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Yes => "YES",
            Status::No => "NO",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Outcome of a homotopy-type query.
///
/// For path queries (`homotopic`, `is_contractible`) the certificate is the
/// homotopy found on `Yes`. For property queries (`is_irreducible`,
/// `is_rigid`) it is the homotopy from the identity to the counterexample on
/// `No`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyVerdict {
    pub status: Status,
    pub certificate: Option<HomotopyCertificate>,
    pub explored: usize,
    pub budget: usize,
}

impl HomotopyVerdict {
    fn yes(certificate: HomotopyCertificate, explored: usize, budget: usize) -> Self {
        HomotopyVerdict {
            status: Status::Yes,
            certificate: Some(certificate),
            explored,
            budget,
        }
    }

    fn no(explored: usize, budget: usize) -> Self {
        HomotopyVerdict {
            status: Status::No,
            certificate: None,
            explored,
            budget,
        }
    }

    fn inconclusive(budget: usize) -> Self {
        HomotopyVerdict {
            status: Status::Inconclusive,
            certificate: None,
            explored: budget,
            budget,
        }
    }

    /// The map at the end of the certificate, if any.
    pub fn witness(&self) -> Option<&DigitalMap> {
        self.certificate.as_ref().map(HomotopyCertificate::target)
    }
}

fn check_same_spaces(f: &DigitalMap, g: &DigitalMap) -> Result<()> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(Error::DomainMismatch("maps must share domain and codomain"));
    }
    Ok(())
}

fn check_continuous(f: &DigitalMap) -> Result<()> {
    match f.discontinuity() {
        Some((a, b)) => Err(Error::Discontinuous { a, b }),
        None => Ok(()),
    }
}

/// Single-step homotopy test.
///
/// NP₁: `f(a) ~ g(a)` for every `a`. NP₂: `a ~ b` implies `f(a) ~ g(b)`.
pub fn single_step_homotopic(f: &DigitalMap, g: &DigitalMap, cat: Category) -> Result<bool> {
    check_same_spaces(f, g)?;
    let (x, y) = (f.domain(), f.codomain());
    Ok(match cat {
        Category::Np1 => x.vertices().all(|a| y.adjacent(f.apply(a), g.apply(a))),
        Category::Np2 => x.vertices().all(|a| {
            x.neighborhood(a)
                .iter()
                .all(|&b| y.adjacent(f.apply(a), g.apply(b)))
        }),
    })
}

fn certificate_from(
    space: &MapSpace,
    path: &[Table],
    cat: Category,
    base: Option<(Vertex, Vertex)>,
) -> HomotopyCertificate {
    HomotopyCertificate::new(path.iter().map(|t| space.to_map(t)).collect(), cat, base)
}

fn decide(
    f: &DigitalMap,
    g: &DigitalMap,
    cat: Category,
    base: Option<(Vertex, Vertex)>,
    budget: usize,
) -> Result<HomotopyVerdict> {
    check_same_spaces(f, g)?;
    check_continuous(f)?;
    check_continuous(g)?;
    let space = MapSpace::for_map(f, cat, base)?;
    if f == g {
        return Ok(HomotopyVerdict::yes(
            HomotopyCertificate::new(vec![f.clone()], cat, base),
            1,
            budget,
        ));
    }
    if single_step_homotopic(f, g, cat)? {
        return Ok(HomotopyVerdict::yes(
            HomotopyCertificate::new(vec![f.clone(), g.clone()], cat, base),
            2,
            budget,
        ));
    }
    let (outcome, explored) = connect(&space, to_table(f.values()), to_table(g.values()), budget);
    Ok(match outcome {
        Connection::Path(path) => {
            HomotopyVerdict::yes(certificate_from(&space, &path, cat, base), explored, budget)
        }
        Connection::Disconnected => HomotopyVerdict::no(explored, budget),
        Connection::OutOfBudget => HomotopyVerdict::inconclusive(budget),
    })
}

/// Decides `f ≃ g` in the given category.
pub fn homotopic(
    f: &DigitalMap,
    g: &DigitalMap,
    cat: Category,
    budget: usize,
) -> Result<HomotopyVerdict> {
    decide(f, g, cat, None, budget)
}

/// Decides whether `f` and `g` are homotopic through maps sending
/// `base_dom` to `base_cod` at every stage.
pub fn pointed_homotopic(
    f: &DigitalMap,
    g: &DigitalMap,
    cat: Category,
    base_dom: Vertex,
    base_cod: Vertex,
    budget: usize,
) -> Result<HomotopyVerdict> {
    f.domain().check_vertex(base_dom)?;
    f.codomain().check_vertex(base_cod)?;
    for h in [f, g] {
        if h.domain().len() != f.domain().len() || h.apply(base_dom) != base_cod {
            return Err(Error::NotPointed {
                base: base_dom,
                target: base_cod,
            });
        }
    }
    decide(f, g, cat, Some((base_dom, base_cod)), budget)
}

/// The homotopy class of a map, or `Inconclusive` when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomotopyClass {
    Complete(Vec<DigitalMap>),
    Inconclusive { explored: usize },
}

impl HomotopyClass {
    pub fn maps(&self) -> Option<&[DigitalMap]> {
        match self {
            HomotopyClass::Complete(maps) => Some(maps),
            HomotopyClass::Inconclusive { .. } => None,
        }
    }
}

fn class_of(
    f: &DigitalMap,
    cat: Category,
    base: Option<(Vertex, Vertex)>,
    budget: usize,
) -> Result<HomotopyClass> {
    check_continuous(f)?;
    let space = MapSpace::for_map(f, cat, base)?;
    let (outcome, explored) = explore(&space, to_table(f.values()), budget, |_| false);
    Ok(match outcome {
        Exploration::Exhausted(nodes) => {
            HomotopyClass::Complete(nodes.iter().map(|t| space.to_map(t)).collect())
        }
        _ => HomotopyClass::Inconclusive { explored },
    })
}

/// All maps homotopic to `f`, in breadth-first order from `f`.
pub fn homotopy_class(f: &DigitalMap, cat: Category, budget: usize) -> Result<HomotopyClass> {
    class_of(f, cat, None, budget)
}

/// All maps pointed-homotopic to `f` relative to `(base, f(base))`.
pub fn pointed_homotopy_class(
    f: &DigitalMap,
    cat: Category,
    base: Vertex,
    budget: usize,
) -> Result<HomotopyClass> {
    f.domain().check_vertex(base)?;
    class_of(f, cat, Some((base, f.apply(base))), budget)
}

/// BFS from the identity until `stop` accepts a map.
fn search_from_identity(
    img: &Arc<DigitalImage>,
    cat: Category,
    budget: usize,
    found_status: Status,
    exhausted_status: Status,
    stop: impl FnMut(&[u8]) -> bool,
) -> Result<HomotopyVerdict> {
    let id = DigitalMap::identity(img.clone());
    let space = MapSpace::for_map(&id, cat, None)?;
    let (outcome, explored) = explore(&space, to_table(id.values()), budget, stop);
    Ok(match outcome {
        Exploration::Found(path) => HomotopyVerdict {
            status: found_status,
            certificate: Some(certificate_from(&space, &path, cat, None)),
            explored,
            budget,
        },
        Exploration::Exhausted(_) => HomotopyVerdict {
            status: exhausted_status,
            certificate: None,
            explored,
            budget,
        },
        Exploration::OutOfBudget => HomotopyVerdict::inconclusive(budget),
    })
}

/// `Yes` iff the identity is homotopic to a constant map.
pub fn is_contractible(
    img: &Arc<DigitalImage>,
    cat: Category,
    budget: usize,
) -> Result<HomotopyVerdict> {
    search_from_identity(img, cat, budget, Status::Yes, Status::No, |t| {
        t.windows(2).all(|w| w[0] == w[1])
    })
}

/// `Yes` iff every map homotopic to the identity is surjective. A `No`
/// certificate ends at a non-surjective map.
pub fn is_irreducible(
    img: &Arc<DigitalImage>,
    cat: Category,
    budget: usize,
) -> Result<HomotopyVerdict> {
    let n = img.len();
    search_from_identity(img, cat, budget, Status::No, Status::Yes, move |t| {
        let mut hit = vec![false; n];
        for &v in t {
            hit[v as usize] = true;
        }
        !hit.iter().all(|&h| h)
    })
}

/// `Yes` iff the identity is homotopic to no other map. Only the identity's
/// single-step neighbours need checking, since its class is connected.
pub fn is_rigid(img: &Arc<DigitalImage>, cat: Category, budget: usize) -> Result<HomotopyVerdict> {
    let id = DigitalMap::identity(img.clone());
    let space = MapSpace::for_map(&id, cat, None)?;
    let start = to_table(id.values());
    let mut witness = None;
    let _ = space.for_each_neighbor(&start, &mut |g| {
        witness = Some(g);
        std::ops::ControlFlow::Break(())
    });
    Ok(match witness {
        Some(g) => HomotopyVerdict {
            status: Status::No,
            certificate: Some(HomotopyCertificate::new(
                vec![id, space.to_map(&g)],
                cat,
                None,
            )),
            explored: 2,
            budget,
        },
        None => HomotopyVerdict {
            status: Status::Yes,
            certificate: None,
            explored: 1,
            budget,
        },
    })
}

/// Outcome of a homotopy-equivalence search between two images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub status: Status,
    /// `(f, g)` with `f: X → Y`, `g: Y → X`.
    pub witness: Option<(DigitalMap, DigitalMap)>,
    /// Certificates for `g ∘ f ≃ id_X` and `f ∘ g ≃ id_Y`.
    pub certificates: Option<(HomotopyCertificate, HomotopyCertificate)>,
    pub explored: usize,
}

/// Membership oracle for the homotopy class of one map, computed lazily.
pub(crate) struct ClassOracle {
    space: MapSpace,
    start: Table,
    budget: usize,
    members: Option<Option<HashSet<Table>>>,
}

impl ClassOracle {
    pub fn new(f: &DigitalMap, cat: Category, base: Option<(Vertex, Vertex)>, budget: usize) -> Result<Self> {
        Ok(ClassOracle {
            space: MapSpace::for_map(f, cat, base)?,
            start: to_table(f.values()),
            budget,
            members: None,
        })
    }

    fn ensure(&mut self) -> Option<&HashSet<Table>> {
        if self.members.is_none() {
            let (outcome, _) = explore(&self.space, self.start.clone(), self.budget, |_| false);
            self.members = Some(match outcome {
                Exploration::Exhausted(nodes) => Some(nodes.into_iter().collect()),
                _ => None,
            });
        }
        self.members.as_ref().and_then(Option::as_ref)
    }

    /// `Some(true/false)` for a decided membership, `None` when the class could
    /// not be enumerated within budget.
    pub fn contains(&mut self, values: &[Vertex]) -> Option<bool> {
        let key = to_table(values);
        self.ensure().map(|set| set.contains(&key))
    }

    /// Class members in lexicographic order of their tables.
    pub fn members(&mut self) -> Option<Vec<DigitalMap>> {
        let mut out: Vec<Table> = self.ensure()?.iter().cloned().collect();
        out.sort();
        Some(out.iter().map(|t| self.space.to_map(t)).collect())
    }
}

/// Continuous maps `X → Y`, optionally pinned at one point.
pub(crate) fn maps_between(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    pin: Option<(Vertex, Vertex)>,
) -> Result<ContinuousMaps> {
    if x.len() > MAP_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "continuous map enumeration",
            size: x.len(),
            cap: MAP_ENUMERATION_CAP,
        });
    }
    let candidates = x
        .vertices()
        .map(|v| match pin {
            Some((base, target)) if base == v => vec![target],
            _ => y.vertices().collect(),
        })
        .collect();
    Ok(ContinuousMaps::with_candidates(x.clone(), y.clone(), candidates))
}

/// Searches for continuous `f: X → Y`, `g: Y → X` with `g ∘ f ≃ id_X` and
/// `f ∘ g ≃ id_Y`. With `pointed = Some((x0, y0))` the maps and both
/// homotopies must respect the basepoints.
///
/// `No` is returned only after every pair was refuted. Enumeration caps and
/// budget exhaustion yield `Inconclusive`.
pub fn homotopy_equivalent(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
    cat: Category,
    budget: usize,
    pointed: Option<(Vertex, Vertex)>,
) -> Result<EquivalenceVerdict> {
    if let Some((x0, y0)) = pointed {
        x.check_vertex(x0)?;
        y.check_vertex(y0)?;
    }
    let inconclusive = |explored| EquivalenceVerdict {
        status: Status::Inconclusive,
        witness: None,
        certificates: None,
        explored,
    };
    if x == y && pointed.is_none_or(|(a, b)| a == b) {
        let id = DigitalMap::identity(x.clone());
        let base = pointed;
        let cert = HomotopyCertificate::new(vec![id.clone()], cat, base);
        return Ok(EquivalenceVerdict {
            status: Status::Yes,
            witness: Some((id.clone(), id)),
            certificates: Some((cert.clone(), cert)),
            explored: 1,
        });
    }
    let (fs, gs) = match (
        maps_between(x, y, pointed),
        maps_between(y, x, pointed.map(|(a, b)| (b, a))),
    ) {
        (Ok(f), Ok(g)) => (f.collect::<Vec<_>>(), g.collect::<Vec<_>>()),
        (Err(Error::CapExceeded { .. }), _) | (_, Err(Error::CapExceeded { .. })) => {
            return Ok(inconclusive(0))
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let id_x = DigitalMap::identity(x.clone());
    let id_y = DigitalMap::identity(y.clone());
    let mut oracle_x = ClassOracle::new(&id_x, cat, pointed.map(|(a, _)| (a, a)), budget)?;
    let mut oracle_y = ClassOracle::new(&id_y, cat, pointed.map(|(_, b)| (b, b)), budget)?;

    let decide_pair = |h: &DigitalMap, id: &DigitalMap, oracle: &mut ClassOracle, base: Option<Vertex>| -> Result<Status> {
        match oracle.contains(h.values()) {
            Some(b) => Ok(Status::from_bool(b)),
            None => {
                let v = match base {
                    Some(p) => pointed_homotopic(h, id, cat, p, p, budget)?,
                    None => homotopic(h, id, cat, budget)?,
                };
                Ok(v.status)
            }
        }
    };

    let mut explored = 0usize;
    let mut any_inconclusive = false;
    for f in &fs {
        for g in &gs {
            explored += 1;
            if explored > budget {
                return Ok(inconclusive(budget));
            }
            let gf = compose(g, f)?;
            let s1 = decide_pair(&gf, &id_x, &mut oracle_x, pointed.map(|(a, _)| a))?;
            if s1 == Status::No {
                continue;
            }
            let fg = compose(f, g)?;
            let s2 = decide_pair(&fg, &id_y, &mut oracle_y, pointed.map(|(_, b)| b))?;
            match s1.and(s2) {
                Status::Yes => {
                    let (c1, c2) = match pointed {
                        Some((x0, y0)) => (
                            pointed_homotopic(&gf, &id_x, cat, x0, x0, budget)?,
                            pointed_homotopic(&fg, &id_y, cat, y0, y0, budget)?,
                        ),
                        None => (
                            homotopic(&gf, &id_x, cat, budget)?,
                            homotopic(&fg, &id_y, cat, budget)?,
                        ),
                    };
                    return Ok(EquivalenceVerdict {
                        status: Status::Yes,
                        witness: Some((f.clone(), g.clone())),
                        certificates: c1.certificate.zip(c2.certificate),
                        explored,
                    });
                }
                Status::Inconclusive => any_inconclusive = true,
                Status::No => {}
            }
        }
    }
    Ok(EquivalenceVerdict {
        status: if any_inconclusive {
            Status::Inconclusive
        } else {
            Status::No
        },
        witness: None,
        certificates: None,
        explored,
    })
}

#[cfg(test)]
mod tests;
