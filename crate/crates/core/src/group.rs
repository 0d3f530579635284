//! Finite groups and the digital topological groups built on their Cayley graphs.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hspace::HSpaceStructure;
use crate::image::{DigitalImage, Vertex};
use crate::maps::{Category, DigitalMap, MulTable};

/// Largest order accepted by [`enumerate_groups`].
pub const GROUP_ENUMERATION_CAP: usize = 6;

/// A verified finite group on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupStructure {
    mul: MulTable,
    identity: Vertex,
    inv: Vec<Vertex>,
}

/// Checks the group axioms on a table, reporting the first violation.
pub fn make_group(mul: MulTable) -> Result<GroupStructure> {
    let n = mul.order();
    let identity = (0..n)
        .find(|&e| (0..n).all(|a| mul.get(e, a) == a && mul.get(a, e) == a))
        .ok_or(Error::NoIdentity)?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul.get(mul.get(a, b), c) != mul.get(a, mul.get(b, c)) {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
    }
    let mut inv = Vec::with_capacity(n);
    for a in 0..n {
        let b = (0..n)
            .find(|&b| mul.get(a, b) == identity && mul.get(b, a) == identity)
            .ok_or(Error::NoInverse { a })?;
        inv.push(b);
    }
    Ok(GroupStructure { mul, identity, inv })
}

impl GroupStructure {
    pub fn order(&self) -> usize {
        self.mul.order()
    }

    pub fn mul(&self) -> &MulTable {
        &self.mul
    }

    pub fn identity(&self) -> Vertex {
        self.identity
    }

    pub fn inverse(&self, a: Vertex) -> Vertex {
        self.inv[a]
    }

    pub fn op(&self, a: Vertex, b: Vertex) -> Vertex {
        self.mul.get(a, b)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    fn check_subset(&self, s: &[Vertex]) -> Result<()> {
        match s.iter().find(|&&x| x >= self.order()) {
            Some(&s) => Err(Error::BadSubset { s }),
            None => Ok(()),
        }
    }
}

/// `ℤ_n` under addition.
pub fn cyclic_group(n: usize) -> GroupStructure {
    make_group(MulTable::from_fn(n, |a, b| (a + b) % n).expect("in range")).expect("a group")
}

/// `G × H` with elements `g * |H| + h`.
pub fn direct_product(g: &GroupStructure, h: &GroupStructure) -> GroupStructure {
    let m = h.order();
    let table = MulTable::from_fn(g.order() * m, |a, b| {
        g.op(a / m, b / m) * m + h.op(a % m, b % m)
    })
    .expect("in range");
    make_group(table).expect("a group")
}

/// The dihedral group of order `2k`: element `s * k + r` is `t^s ρ^r`.
pub fn dihedral_group(k: usize) -> GroupStructure {
    let table = MulTable::from_fn(2 * k, |a, b| {
        let (s1, r1) = (a / k, a % k);
        let (s2, r2) = (b / k, b % k);
        // ρ^r t = t ρ^{-r}
        let r = if s2 == 0 { r1 + r2 } else { k - r1 % k + r2 };
        ((s1 + s2) % 2) * k + r % k
    })
    .expect("in range");
    make_group(table).expect("a group")
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion_group() -> GroupStructure {
    // Unit index 0..4 for 1, i, j, k, sign bit in the high position.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let table = MulTable::from_fn(8, |a, b| {
        let (u, neg) = UNIT[a % 4][b % 4];
        let sign = (a / 4 + b / 4 + usize::from(neg)) % 2;
        sign * 4 + u
    })
    .expect("in range");
    make_group(table).expect("a group")
}

/// Cayley graph: `a ~ b` iff `ab⁻¹ ∈ S` or `ba⁻¹ ∈ S`, plus loops.
pub fn cayley_graph(g: &GroupStructure, s: &[Vertex]) -> Result<DigitalImage> {
    g.check_subset(s)?;
    let set: BTreeSet<Vertex> = s.iter().copied().collect();
    DigitalImage::from_fn(g.order(), |a, b| {
        set.contains(&g.op(a, g.inverse(b))) || set.contains(&g.op(b, g.inverse(a)))
    })
}

/// `true` iff `S` together with the identity generates `G` under
/// multiplication.
pub fn generates(g: &GroupStructure, s: &[Vertex]) -> Result<bool> {
    g.check_subset(s)?;
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for &t in s {
            let y = g.op(x, t);
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    Ok(seen.into_iter().all(|b| b))
}

/// Why a labelled image fails to be a digital topological group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtgWitness {
    /// Adjacent product points with non-adjacent products.
    Multiplication((Vertex, Vertex), (Vertex, Vertex)),
    /// Adjacent points with non-adjacent inverses.
    Inversion(Vertex, Vertex),
}

/// Checks continuity of multiplication on the NP product and of inversion.
/// Returns the first failure, or `None` when the image carries a digital
/// topological group.
///
/// On success in category 1 every right multiplication is also checked to be
/// a graph automorphism; a failure there is reported as a
/// `StructureViolation`.
pub fn is_digital_topological_group(
    img: &DigitalImage,
    g: &GroupStructure,
    cat: Category,
) -> Result<Option<DtgWitness>> {
    if img.len() != g.order() {
        return Err(Error::SizeMismatch {
            image: img.len(),
            group: g.order(),
        });
    }
    if let Some((a, b)) = g.mul.discontinuity(img, cat) {
        return Ok(Some(DtgWitness::Multiplication(a, b)));
    }
    for (a, b) in img.edges() {
        if !img.adjacent(g.inverse(a), g.inverse(b)) {
            return Ok(Some(DtgWitness::Inversion(a, b)));
        }
    }
    if cat == Category::Np1 {
        let n = g.order();
        for x in 0..n {
            let ok = img
                .edges()
                .iter()
                .all(|&(a, b)| img.adjacent(g.op(a, x), g.op(b, x)));
            if !ok {
                return Err(Error::StructureViolation(format!(
                    "right multiplication by {x} is not an automorphism"
                )));
            }
        }
    }
    Ok(None)
}

/// A group together with an image on its elements on which it is a digital
/// topological group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalTopologicalGroup {
    image: Arc<DigitalImage>,
    group: GroupStructure,
    category: Category,
}

impl DigitalTopologicalGroup {
    pub fn new(image: Arc<DigitalImage>, group: GroupStructure, category: Category) -> Result<Self> {
        match is_digital_topological_group(&image, &group, category)? {
            None => Ok(DigitalTopologicalGroup {
                image,
                group,
                category,
            }),
            Some(DtgWitness::Multiplication(a, b)) => Err(Error::DiscontinuousMultiplication { a, b }),
            Some(DtgWitness::Inversion(a, b)) => Err(Error::Discontinuous { a, b }),
        }
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn group(&self) -> &GroupStructure {
        &self.group
    }

    pub fn category(&self) -> Category {
        self.category
    }

    /// The inversion map as a continuous self-map.
    pub fn inversion(&self) -> DigitalMap {
        DigitalMap::new(self.image.clone(), self.image.clone(), self.group.inv.clone()).expect("verified")
    }

    pub fn identity_neighborhood(&self) -> Vec<Vertex> {
        identity_neighborhood(&self.image, &self.group)
    }

    pub fn cayley_reconstruction_check(&self) -> bool {
        cayley_reconstruction_check(&self.image, &self.group)
    }

    /// The group as a unital, associative H-space.
    pub fn to_hspace(&self) -> HSpaceStructure {
        hspace_from_group(self)
    }
}

/// Non-identity elements adjacent to the identity.
pub fn identity_neighborhood(img: &DigitalImage, g: &GroupStructure) -> Vec<Vertex> {
    let e = g.identity();
    img.neighborhood(e).iter().copied().filter(|&s| s != e).collect()
}

/// `true` iff the image equals, label for label, the Cayley graph of the
/// group with respect to the identity's neighbours.
pub fn cayley_reconstruction_check(img: &DigitalImage, g: &GroupStructure) -> bool {
    match cayley_graph(g, &identity_neighborhood(img, g)) {
        Ok(c) => &c == img,
        Err(_) => false,
    }
}

/// Shape of an image that could carry an NP₂ digital topological group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Np2Classification {
    /// Every component is complete and all components have the same size.
    pub accepted: bool,
    /// The image is connected (for accepted images, equivalently complete).
    pub connected: bool,
}

pub fn classify_np2_group_image(img: &DigitalImage) -> Np2Classification {
    let comps = img.components();
    let complete = comps.blocks().iter().all(|b| {
        b.iter().all(|&u| b.iter().all(|&v| img.adjacent(u, v)))
    });
    let sizes = comps.sizes();
    let equal = sizes.windows(2).all(|w| w[0] == w[1]);
    Np2Classification {
        accepted: complete && equal,
        connected: comps.len() == 1,
    }
}

pub fn hspace_from_group(dtg: &DigitalTopologicalGroup) -> HSpaceStructure {
    HSpaceStructure::new(
        dtg.image.clone(),
        dtg.group.identity,
        dtg.group.mul.clone(),
        dtg.category,
    )
    .expect("a digital topological group has a continuous multiplication")
}

/// Relabels a table by a permutation `p` (new label of `a` is `p[a]`).
fn relabel(cells: &[Vertex], n: usize, p: &[Vertex]) -> Vec<Vertex> {
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[p[a] * n + p[b]] = p[cells[a * n + b]];
        }
    }
    out
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<Vertex>> {
    fn rec(prefix: &mut Vec<Vertex>, used: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 1..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    used[0] = true;
    rec(&mut vec![0], &mut used, &mut out);
    out
}

/// One group of each isomorphism type of order `n`, identity 0, as the
/// lexicographically least relabelled table.
pub fn enumerate_groups(n: usize) -> Result<Vec<GroupStructure>> {
    if n == 0 {
        return Err(Error::ZeroVertices);
    }
    if n > GROUP_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "group enumeration",
            size: n,
            cap: GROUP_ENUMERATION_CAP,
        });
    }
    let perms = permutations_fixing_zero(n);
    let mut cells = vec![usize::MAX; n * n];
    for a in 0..n {
        cells[a] = a;
        cells[a * n] = a;
    }
    let free: Vec<usize> = (0..n * n).filter(|&c| c / n != 0 && c % n != 0).collect();
    let mut found: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    fill_latin(&mut cells, n, &free, 0, &mut |t| {
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]]))
        });
        if assoc {
            let canon = perms.iter().map(|p| relabel(t, n, p)).min().expect("nonempty");
            found.insert(canon);
        }
    });
    Ok(found
        .into_iter()
        .map(|t| make_group(MulTable::new(n, t).expect("valid")).expect("a group"))
        .collect())
}

fn fill_latin(cells: &mut [Vertex], n: usize, free: &[usize], k: usize, emit: &mut dyn FnMut(&[Vertex])) {
    if k == free.len() {
        emit(cells);
        return;
    }
    let c = free[k];
    let (a, b) = (c / n, c % n);
    for v in 0..n {
        let clash = (0..n).any(|j| cells[a * n + j] == v) || (0..n).any(|i| cells[i * n + b] == v);
        if !clash {
            cells[c] = v;
            fill_latin(cells, n, free, k + 1, emit);
            cells[c] = usize::MAX;
        }
    }
}
