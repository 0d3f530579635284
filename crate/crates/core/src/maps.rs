//! Continuous maps with the normal product images they act on.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::{DigitalImage, Vertex};

/// Default cap on the domain size for [`enumerate_continuous_maps`].
pub const MAP_ENUMERATION_CAP: usize = 8;

/// Choice between the NP₁ and NP₂ product adjacencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Np1,
    Np2,
}

impl Category {
    pub const BOTH: [Category; 2] = [Category::Np1, Category::Np2];

    pub fn from_level(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Category::Np1),
            2 => Ok(Category::Np2),
            other => Err(Error::BadCategory(other)),
        }
    }

    pub fn level(self) -> usize {
        match self {
            Category::Np1 => 1,
            Category::Np2 => 2,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NP{}", self.level())
    }
}

fn same_image(a: &Arc<DigitalImage>, b: &Arc<DigitalImage>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A total function between two digital images, stored as a value table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    values: Vec<Vertex>,
}

impl DigitalMap {
    pub fn new(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        values: Vec<Vertex>,
    ) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::BadTable {
                got: values.len(),
                expected: domain.len(),
            });
        }
        for &v in &values {
            codomain.check_vertex(v)?;
        }
        Ok(DigitalMap {
            domain,
            codomain,
            values,
        })
    }

    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        f: impl FnMut(Vertex) -> Vertex,
    ) -> Result<Self> {
        let values = domain.vertices().map(f).collect();
        Self::new(domain, codomain, values)
    }

    pub(crate) fn from_parts_unchecked(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        values: Vec<Vertex>,
    ) -> Self {
        debug_assert_eq!(values.len(), domain.len());
        DigitalMap {
            domain,
            codomain,
            values,
        }
    }

    pub fn identity(image: Arc<DigitalImage>) -> Self {
        let values = image.vertices().collect();
        DigitalMap {
            domain: image.clone(),
            codomain: image,
            values,
        }
    }

    pub fn constant(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        c: Vertex,
    ) -> Result<Self> {
        codomain.check_vertex(c)?;
        let values = vec![c; domain.len()];
        Ok(DigitalMap {
            domain,
            codomain,
            values,
        })
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn values(&self) -> &[Vertex] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: Vertex) -> Vertex {
        self.values[x]
    }

    /// First edge `a ~ b` (with `a < b`) whose images are not adjacent.
    pub fn discontinuity(&self) -> Option<(Vertex, Vertex)> {
        for a in self.domain.vertices() {
            for &b in self.domain.neighborhood(a) {
                if a < b && !self.codomain.adjacent(self.values[a], self.values[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_continuous(&self) -> bool {
        self.discontinuity().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.len()];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_identity(&self) -> bool {
        same_image(&self.domain, &self.codomain)
            && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Inverse table when the map is a bijection.
    pub fn inverse(&self) -> Option<DigitalMap> {
        if self.domain.len() != self.codomain.len() {
            return None;
        }
        let mut inv = vec![usize::MAX; self.codomain.len()];
        for (x, &y) in self.values.iter().enumerate() {
            if inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(DigitalMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            values: inv,
        })
    }

    /// True for a bijection whose inverse is also continuous.
    pub fn is_isomorphism(&self) -> bool {
        self.is_continuous() && self.inverse().is_some_and(|inv| inv.is_continuous())
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &DigitalMap) -> Result<DigitalMap> {
        compose(self, f)
    }
}

impl fmt::Debug for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DigitalMap{:?}", self.values)
    }
}

/// `g ∘ f`.
pub fn compose(g: &DigitalMap, f: &DigitalMap) -> Result<DigitalMap> {
    if !same_image(&f.codomain, &g.domain) {
        return Err(Error::DomainMismatch("codomain of f must equal domain of g"));
    }
    Ok(DigitalMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        values: f.values.iter().map(|&x| g.values[x]).collect(),
    })
}

pub fn identity_map(image: &Arc<DigitalImage>) -> DigitalMap {
    DigitalMap::identity(image.clone())
}

pub fn constant_map(
    domain: &Arc<DigitalImage>,
    codomain: &Arc<DigitalImage>,
    c: Vertex,
) -> Result<DigitalMap> {
    DigitalMap::constant(domain.clone(), codomain.clone(), c)
}

pub fn is_continuous(f: &DigitalMap) -> bool {
    f.is_continuous()
}

/// Cartesian product of images with the NP_u adjacency.
///
/// Tuples are ranked in mixed radix with the last factor varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductImage {
    factors: Vec<Arc<DigitalImage>>,
    level: usize,
    carrier: Arc<DigitalImage>,
}

/// NP_u adjacency of two coordinate tuples.
pub fn np_adjacent(
    factors: &[Arc<DigitalImage>],
    level: usize,
    s: &[Vertex],
    t: &[Vertex],
) -> bool {
    let mut moved = 0;
    for (x, (&a, &b)) in factors.iter().zip(s.iter().zip(t)) {
        if a != b {
            if !x.adjacent(a, b) {
                return false;
            }
            moved += 1;
        }
    }
    moved <= level
}

impl ProductImage {
    pub fn factors(&self) -> &[Arc<DigitalImage>] {
        &self.factors
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn carrier(&self) -> &Arc<DigitalImage> {
        &self.carrier
    }

    pub fn rank(&self, tuple: &[Vertex]) -> Vertex {
        debug_assert_eq!(tuple.len(), self.factors.len());
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&t, x)| acc * x.len() + t)
    }

    pub fn unrank(&self, mut r: Vertex) -> Vec<Vertex> {
        let mut out = vec![0; self.factors.len()];
        for (slot, x) in out.iter_mut().zip(&self.factors).rev() {
            *slot = r % x.len();
            r /= x.len();
        }
        out
    }
}

/// Builds the NP_u product of `factors`.
pub fn np_product(factors: &[Arc<DigitalImage>], level: usize) -> Result<ProductImage> {
    if factors.is_empty() || level == 0 || level > factors.len() {
        return Err(Error::BadLevel {
            level,
            factors: factors.len(),
        });
    }
    let size: usize = factors.iter().map(|x| x.len()).product();
    let radix = |mut r: usize| {
        let mut out = vec![0; factors.len()];
        for (slot, x) in out.iter_mut().zip(factors).rev() {
            *slot = r % x.len();
            r /= x.len();
        }
        out
    };
    let tuples: Vec<Vec<Vertex>> = (0..size).map(radix).collect();
    let carrier = DigitalImage::from_fn(size, |a, b| {
        np_adjacent(factors, level, &tuples[a], &tuples[b])
    })?;
    Ok(ProductImage {
        factors: factors.to_vec(),
        level,
        carrier: Arc::new(carrier),
    })
}

/// `X × X` with the category's product adjacency.
pub fn square(x: &Arc<DigitalImage>, cat: Category) -> ProductImage {
    np_product(&[x.clone(), x.clone()], cat.level()).expect("level <= 2")
}

/// `X × X × X` with NP₁ or NP₂ adjacency.
pub fn cube(x: &Arc<DigitalImage>, cat: Category) -> ProductImage {
    np_product(&[x.clone(), x.clone(), x.clone()], cat.level()).expect("level <= 3")
}

/// `x ↦ (f(x), g(x))` into `NP_cat(Y, Y)`, with a continuity flag.
///
/// In category 2 the flag is always true for continuous inputs; in category 1
/// it can be false (the diagonal of a non-discrete image is the usual case).
pub fn pair_map(f: &DigitalMap, g: &DigitalMap, cat: Category) -> Result<(DigitalMap, bool)> {
    if !same_image(&f.domain, &g.domain) || !same_image(&f.codomain, &g.codomain) {
        return Err(Error::DomainMismatch("pair_map needs a common domain and codomain"));
    }
    let prod = square(&f.codomain, cat);
    let n = f.codomain.len();
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(&a, &b)| a * n + b)
        .collect();
    let map = DigitalMap::from_parts_unchecked(f.domain.clone(), prod.carrier.clone(), values);
    let continuous = map.is_continuous();
    Ok((map, continuous))
}

/// `(x₁, x₂) ↦ (f₁(x₁), f₂(x₂))` between NP_cat products.
pub fn cross_map(f1: &DigitalMap, f2: &DigitalMap, cat: Category) -> Result<DigitalMap> {
    let dom = np_product(&[f1.domain.clone(), f2.domain.clone()], cat.level())?;
    let cod = np_product(&[f1.codomain.clone(), f2.codomain.clone()], cat.level())?;
    Ok(cross_map_between(f1, f2, &dom, &cod))
}

pub(crate) fn cross_map_between(
    f1: &DigitalMap,
    f2: &DigitalMap,
    dom: &ProductImage,
    cod: &ProductImage,
) -> DigitalMap {
    let values = dom
        .carrier
        .vertices()
        .map(|r| {
            let t = dom.unrank(r);
            cod.rank(&[f1.apply(t[0]), f2.apply(t[1])])
        })
        .collect();
    DigitalMap::from_parts_unchecked(dom.carrier.clone(), cod.carrier.clone(), values)
}

/// A binary operation on `0..n`, stored row-major: `get(a, b)` at `a * n + b`.
///
/// Row-major order coincides with the rank order of `X × X`, so the table is
/// also the value table of the operation as a map out of the product carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MulTable {
    n: usize,
    cells: Vec<Vertex>,
}

impl MulTable {
    pub fn new(n: usize, cells: Vec<Vertex>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::BadTable {
                got: cells.len(),
                expected: n * n,
            });
        }
        if let Some(&v) = cells.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { v, n });
        }
        Ok(MulTable { n, cells })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Vertex, Vertex) -> Vertex) -> Result<Self> {
        let mut cells = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                cells.push(f(a, b));
            }
        }
        Self::new(n, cells)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Vertex] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, a: Vertex, b: Vertex) -> Vertex {
        self.cells[a * self.n + b]
    }

    pub fn row(&self, a: Vertex) -> &[Vertex] {
        &self.cells[a * self.n..(a + 1) * self.n]
    }

    pub fn column(&self, b: Vertex) -> Vec<Vertex> {
        (0..self.n).map(|a| self.get(a, b)).collect()
    }

    /// The operation as a map `NP_cat(X, X) → X`.
    pub fn as_map(&self, image: &Arc<DigitalImage>, cat: Category) -> Result<DigitalMap> {
        if image.len() != self.n {
            return Err(Error::DomainMismatch("table order differs from image size"));
        }
        let prod = square(image, cat);
        Ok(DigitalMap::from_parts_unchecked(
            prod.carrier.clone(),
            image.clone(),
            self.cells.clone(),
        ))
    }

    /// A pair of NP_cat-adjacent points of `X × X` whose products are not
    /// adjacent, if any.
    pub fn discontinuity(
        &self,
        image: &DigitalImage,
        cat: Category,
    ) -> Option<((Vertex, Vertex), (Vertex, Vertex))> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for &c in image.neighborhood(a) {
                    for &d in image.neighborhood(b) {
                        if cat == Category::Np1 && a != c && b != d {
                            continue;
                        }
                        if !image.adjacent(ab, self.get(c, d)) {
                            return Some(((a, b), (c, d)));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_continuous(&self, image: &DigitalImage, cat: Category) -> bool {
        self.discontinuity(image, cat).is_none()
    }
}

/// `μ_x = μ(x, ·)`.
pub fn left_mult(image: &Arc<DigitalImage>, mu: &MulTable, x: Vertex) -> Result<DigitalMap> {
    image.check_vertex(x)?;
    if mu.order() != image.len() {
        return Err(Error::DomainMismatch("table order differs from image size"));
    }
    Ok(DigitalMap::from_parts_unchecked(
        image.clone(),
        image.clone(),
        mu.row(x).to_vec(),
    ))
}

/// `ν_x = μ(·, x)`.
pub fn right_mult(image: &Arc<DigitalImage>, mu: &MulTable, x: Vertex) -> Result<DigitalMap> {
    image.check_vertex(x)?;
    if mu.order() != image.len() {
        return Err(Error::DomainMismatch("table order differs from image size"));
    }
    Ok(DigitalMap::from_parts_unchecked(
        image.clone(),
        image.clone(),
        mu.column(x),
    ))
}

/// Every continuous map `X → Y`, in lexicographic order of value tables.
pub fn enumerate_continuous_maps(
    x: &Arc<DigitalImage>,
    y: &Arc<DigitalImage>,
) -> Result<ContinuousMaps> {
    if x.len() > MAP_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "enumerate_continuous_maps",
            size: x.len(),
            cap: MAP_ENUMERATION_CAP,
        });
    }
    let candidates = vec![y.vertices().collect(); x.len()];
    Ok(ContinuousMaps::with_candidates(x.clone(), y.clone(), candidates))
}

/// Backtracking stream of continuous maps with per-vertex candidate values.
///
/// Vertices are assigned in index order; a value is accepted only when it is
/// adjacent to the values already chosen for earlier neighbours.
#[derive(Debug, Clone)]
pub struct ContinuousMaps {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    candidates: Vec<Vec<Vertex>>,
    earlier: Vec<Vec<Vertex>>,
    values: Vec<Vertex>,
    pos: Vec<usize>,
    started: bool,
    done: bool,
}

impl ContinuousMaps {
    /// `candidates[v]` must be sorted for lexicographic output order.
    pub fn with_candidates(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        candidates: Vec<Vec<Vertex>>,
    ) -> Self {
        let n = domain.len();
        let earlier = (0..n)
            .map(|v| {
                domain
                    .neighborhood(v)
                    .iter()
                    .copied()
                    .filter(|&u| u < v)
                    .collect()
            })
            .collect();
        ContinuousMaps {
            domain,
            codomain,
            candidates,
            earlier,
            values: vec![0; n],
            pos: vec![0; n],
            started: false,
            done: false,
        }
    }

    #[inline]
    fn fits(&self, k: usize, y: Vertex) -> bool {
        self.earlier[k]
            .iter()
            .all(|&u| self.codomain.adjacent(self.values[u], y))
    }

    /// Advances to the next table; returns a view of it.
    pub fn next_table(&mut self) -> Option<&[Vertex]> {
        if self.done {
            return None;
        }
        let n = self.domain.len();
        let mut k;
        if self.started {
            k = n - 1;
            self.pos[k] += 1;
        } else {
            self.started = true;
            k = 0;
            self.pos[0] = 0;
        }
        loop {
            while self.pos[k] < self.candidates[k].len()
                && !self.fits(k, self.candidates[k][self.pos[k]])
            {
                self.pos[k] += 1;
            }
            if self.pos[k] < self.candidates[k].len() {
                self.values[k] = self.candidates[k][self.pos[k]];
                if k + 1 == n {
                    return Some(&self.values);
                }
                k += 1;
                self.pos[k] = 0;
            } else {
                if k == 0 {
                    self.done = true;
                    return None;
                }
                k -= 1;
                self.pos[k] += 1;
            }
        }
    }
}

impl Iterator for ContinuousMaps {
    type Item = DigitalMap;

    fn next(&mut self) -> Option<DigitalMap> {
        let values = self.next_table()?.to_vec();
        Some(DigitalMap::from_parts_unchecked(
            self.domain.clone(),
            self.codomain.clone(),
            values,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::enumerate_images;

    fn arc(x: DigitalImage) -> Arc<DigitalImage> {
        Arc::new(x)
    }

    fn five_twist() -> Arc<DigitalImage> {
        arc(DigitalImage::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (3, 5), (5, 0)]).unwrap())
    }

    fn rho(w: &Arc<DigitalImage>) -> DigitalMap {
        DigitalMap::new(w.clone(), w.clone(), vec![0, 1, 2, 3, 4, 4]).unwrap()
    }

    #[test]
    fn continuity_examples() {
        let w = five_twist();
        assert!(identity_map(&w).is_continuous());
        assert!(rho(&w).is_continuous());
        let c5 = arc(DigitalImage::cycle(5));
        let f = DigitalMap::new(c5.clone(), c5.clone(), vec![0, 3, 2, 3, 4]).unwrap();
        assert!(!f.is_continuous());
        assert_eq!(f.discontinuity(), Some((0, 1)));
    }

    #[test]
    fn map_construction_errors() {
        let k2 = arc(DigitalImage::complete(2));
        assert!(DigitalMap::new(k2.clone(), k2.clone(), vec![0]).is_err());
        assert!(DigitalMap::new(k2.clone(), k2.clone(), vec![0, 2]).is_err());
        assert!(constant_map(&k2, &k2, 5).is_err());
    }

    #[test]
    fn products_follow_the_normal_product_rule() {
        let k2 = arc(DigitalImage::complete(2));
        let p1 = square(&k2, Category::Np1);
        let c = p1.carrier();
        assert!(c.adjacent(p1.rank(&[0, 0]), p1.rank(&[0, 1])));
        assert!(c.adjacent(p1.rank(&[0, 0]), p1.rank(&[1, 0])));
        assert!(!c.adjacent(p1.rank(&[0, 0]), p1.rank(&[1, 1])));

        // All 16 ordered pairs of NP2(K2, K2) are adjacent: the carrier is K4.
        let p2 = square(&k2, Category::Np2);
        assert!(p2.carrier().is_complete());
        assert_eq!(p2.carrier().len(), 4);

        let c5 = arc(DigitalImage::cycle(5));
        let q = square(&c5, Category::Np2);
        assert!(q.carrier().adjacent(q.rank(&[0, 0]), q.rank(&[1, 1])));
        assert!(!q.carrier().adjacent(q.rank(&[0, 0]), q.rank(&[1, 2])));

        assert_eq!(
            np_product(std::slice::from_ref(&k2), 2).err(),
            Some(Error::BadLevel { level: 2, factors: 1 })
        );
        assert!(np_product(&[], 1).is_err());
    }

    #[test]
    fn codec_is_mixed_radix_last_fastest() {
        let a = arc(DigitalImage::complete(2));
        let b = arc(DigitalImage::cycle(3));
        let p = np_product(&[a, b], 1).unwrap();
        assert_eq!(p.rank(&[1, 2]), 5);
        assert_eq!(p.unrank(4), vec![1, 1]);
    }

    #[test]
    fn composition_examples() {
        let w = five_twist();
        let r = rho(&w);
        assert_eq!(compose(&r, &r).unwrap(), r);
        assert_eq!(compose(&identity_map(&w), &r).unwrap(), r);
        let c = constant_map(&w, &w, 0).unwrap();
        assert_eq!(compose(&c, &r).unwrap(), c);
        let k2 = arc(DigitalImage::complete(2));
        assert!(matches!(
            compose(&identity_map(&k2), &r),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn identity_and_constants() {
        let k1 = arc(DigitalImage::point());
        assert_eq!(identity_map(&k1), constant_map(&k1, &k1, 0).unwrap());
        let w = five_twist();
        assert_eq!(constant_map(&w, &w, 0).unwrap().values(), &[0; 6]);
        for n in 1..=5 {
            for x in enumerate_images(n).unwrap() {
                let x = arc(x);
                assert!(identity_map(&x).is_continuous());
                assert!(constant_map(&x, &x, 0).unwrap().is_continuous());
            }
        }
    }

    #[test]
    fn pair_map_examples() {
        let c5 = arc(DigitalImage::cycle(5));
        let (_, ok) = pair_map(
            &identity_map(&c5),
            &constant_map(&c5, &c5, 0).unwrap(),
            Category::Np1,
        )
        .unwrap();
        assert!(ok);

        let k2 = arc(DigitalImage::complete(2));
        let id = identity_map(&k2);
        assert!(!pair_map(&id, &id, Category::Np1).unwrap().1);
        assert!(pair_map(&id, &id, Category::Np2).unwrap().1);
    }

    #[test]
    fn cross_map_examples() {
        let w = five_twist();
        let id = identity_map(&w);
        let cross = cross_map(&id, &id, Category::Np1).unwrap();
        assert!(cross.is_identity());
        let c = constant_map(&w, &w, 2).unwrap();
        assert!(cross_map(&c, &c, Category::Np2).unwrap().is_constant());
        assert!(cross_map(&rho(&w), &id, Category::Np1).unwrap().is_continuous());
    }

    #[test]
    fn slices_of_multiplication() {
        let w = five_twist();
        let mu = MulTable::from_fn(6, |a, b| (a.min(4) + b.min(4)) % 5).unwrap();
        let row = left_mult(&w, &mu, 2).unwrap();
        assert_eq!(row.values(), mu.row(2));
        let col = right_mult(&w, &mu, 3).unwrap();
        assert_eq!(col.values(), &mu.column(3)[..]);
        assert!(left_mult(&w, &mu, 6).is_err());
    }

    fn brute_force_count(x: &DigitalImage, y: &DigitalImage) -> usize {
        let (n, m) = (x.len(), y.len());
        let mut count = 0;
        for code in 0..m.pow(n as u32) {
            let f: Vec<_> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
            let ok = (0..n).all(|a| (0..n).all(|b| !x.adjacent(a, b) || y.adjacent(f[a], f[b])));
            count += usize::from(ok);
        }
        count
    }

    #[test]
    fn map_enumeration_counts() {
        let k1 = arc(DigitalImage::point());
        let w = five_twist();
        assert_eq!(enumerate_continuous_maps(&k1, &w).unwrap().count(), 6);
        let k2 = arc(DigitalImage::complete(2));
        assert_eq!(enumerate_continuous_maps(&k2, &k2).unwrap().count(), 4);
        let c4 = arc(DigitalImage::cycle(4));
        let count = enumerate_continuous_maps(&c4, &c4).unwrap().count();
        assert_eq!(count, brute_force_count(&c4, &c4));
        let big = arc(DigitalImage::discrete(9));
        assert!(matches!(
            enumerate_continuous_maps(&big, &k1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn map_enumeration_is_lexicographic_and_unique() {
        let c4 = arc(DigitalImage::cycle(4));
        let tables: Vec<Vec<usize>> = enumerate_continuous_maps(&c4, &c4)
            .unwrap()
            .map(|f| f.values().to_vec())
            .collect();
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn np1_adjacency_implies_np2_adjacency() {
        let images: Vec<_> = (1..=4)
            .flat_map(|n| enumerate_images(n).unwrap())
            .map(arc)
            .collect();
        for x in &images {
            for y in &images {
                let p1 = np_product(&[x.clone(), y.clone()], 1).unwrap();
                let p2 = np_product(&[x.clone(), y.clone()], 2).unwrap();
                for a in p1.carrier().vertices() {
                    for b in p1.carrier().vertices() {
                        if p1.carrier().adjacent(a, b) {
                            assert!(p2.carrier().adjacent(a, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pair_and_cross_maps_of_continuous_maps_are_continuous() {
        for n in 1..=3 {
            for x in enumerate_images(n).unwrap() {
                let x = arc(x);
                let maps: Vec<_> = enumerate_continuous_maps(&x, &x).unwrap().collect();
                for f in &maps {
                    for g in &maps {
                        assert!(pair_map(f, g, Category::Np2).unwrap().1);
                        for cat in Category::BOTH {
                            assert!(cross_map(f, g, cat).unwrap().is_continuous());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn composition_preserves_continuity() {
        for n in 1..=4 {
            for x in enumerate_images(n).unwrap() {
                let x = arc(x);
                let maps: Vec<_> = enumerate_continuous_maps(&x, &x).unwrap().collect();
                for f in maps.iter().step_by(7) {
                    for g in maps.iter().step_by(11) {
                        assert!(compose(g, f).unwrap().is_continuous());
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_continuity_matches_product_map() {
        let c5 = arc(DigitalImage::cycle(5));
        let add = MulTable::from_fn(5, |a, b| (a + b) % 5).unwrap();
        assert!(add.is_continuous(&c5, Category::Np1));
        assert!(add.as_map(&c5, Category::Np1).unwrap().is_continuous());
        assert!(!add.is_continuous(&c5, Category::Np2));
        let w = add.discontinuity(&c5, Category::Np2).unwrap();
        assert!(!add.as_map(&c5, Category::Np2).unwrap().is_continuous());
        let ((a, b), (c, d)) = w;
        assert!(!c5.adjacent(add.get(a, b), add.get(c, d)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn codec_round_trips(sizes in prop::collection::vec(1usize..5, 1..4), r in 0usize..1000) {
                let factors: Vec<_> = sizes.iter().map(|&n| arc(DigitalImage::discrete(n))).collect();
                let p = np_product(&factors, 1).unwrap();
                let r = r % p.carrier().len();
                prop_assert_eq!(p.rank(&p.unrank(r)), r);
            }

            #[test]
            fn random_images_are_reflexive_and_symmetric(n in 1usize..8, edges in prop::collection::vec((0usize..8, 0usize..8), 0..20)) {
                let edges: Vec<_> = edges.into_iter().filter(|&(a, b)| a < n && b < n).collect();
                let x = DigitalImage::new(n, &edges).unwrap();
                for a in 0..n {
                    prop_assert!(x.adjacent(a, a));
                    for b in 0..n {
                        prop_assert_eq!(x.adjacent(a, b), x.adjacent(b, a));
                    }
                }
            }
        }
    }
}
