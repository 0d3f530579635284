//! Digital images as finite reflexive graphs.
//!
//! Vertices are dense indices `0..n`. Every vertex is adjacent to itself and
//! adjacency is symmetric; both properties are enforced at construction.

use std::fmt;

use crate::error::{Error, Result};

/// Index of a point in a digital image.
pub type Vertex = usize;

/// Largest vertex count accepted by [`enumerate_images`].
pub const ENUMERATION_CAP: usize = 7;

/// A finite set of points with a reflexive, symmetric adjacency relation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DigitalImage {
    n: usize,
    adj: Vec<bool>,
    // Closed neighbourhoods, sorted ascending.
    nbhd: Vec<Vec<Vertex>>,
}

impl DigitalImage {
    /// Builds an image on `n` points from undirected edges. Loops and the
    /// symmetric closure are added automatically.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroVertices);
        }
        let mut adj = vec![false; n * n];
        for v in 0..n {
            adj[v * n + v] = true;
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::EdgeOutOfRange { a, b, n });
            }
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        Ok(Self::from_matrix(n, adj))
    }

    /// Builds an image from an adjacency predicate, which is symmetrized and
    /// made reflexive.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(Vertex, Vertex) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroVertices);
        }
        let mut adj = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                if a == b || adjacent(a, b) || adjacent(b, a) {
                    adj[a * n + b] = true;
                    adj[b * n + a] = true;
                }
            }
        }
        Ok(Self::from_matrix(n, adj))
    }

    fn from_matrix(n: usize, adj: Vec<bool>) -> Self {
        let nbhd = (0..n)
            .map(|a| (0..n).filter(|&b| adj[a * n + b]).collect())
            .collect();
        DigitalImage { n, adj, nbhd }
    }

    /// The single-point image.
    pub fn point() -> Self {
        Self::complete(1)
    }

    /// Complete graph on `n` points.
    pub fn complete(n: usize) -> Self {
        Self::from_fn(n.max(1), |_, _| true).expect("n >= 1")
    }

    /// `n` isolated points.
    pub fn discrete(n: usize) -> Self {
        Self::new(n.max(1), &[]).expect("n >= 1")
    }

    /// Simple cycle `0 ~ 1 ~ ... ~ n-1 ~ 0`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n.max(1), &edges).expect("cycle edges in range")
    }

    /// Digital interval `[0, m]` with the standard adjacency.
    pub fn interval(m: usize) -> Self {
        let edges: Vec<_> = (0..m).map(|i| (i, i + 1)).collect();
        Self::new(m + 1, &edges).expect("interval edges in range")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Adjacency test. Panics if either vertex is out of range.
    #[inline]
    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        assert!(a < self.n && b < self.n, "vertex out of range");
        self.adj[a * self.n + b]
    }

    /// Range-checked adjacency test.
    pub fn try_adjacent(&self, a: Vertex, b: Vertex) -> Result<bool> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        Ok(self.adj[a * self.n + b])
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n })
        }
    }

    /// Closed neighbourhood of `v` (contains `v`), ascending.
    #[inline]
    pub fn neighborhood(&self, v: Vertex) -> &[Vertex] {
        &self.nbhd[v]
    }

    /// Number of neighbours other than `v` itself.
    pub fn degree(&self, v: Vertex) -> usize {
        self.nbhd[v].len() - 1
    }

    /// Undirected non-loop edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in &self.nbhd[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.nbhd.iter().map(|nb| nb.len() - 1).sum::<usize>() / 2
    }

    /// True when every pair of points is adjacent.
    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|&x| x)
    }

    /// Path-connected components, each block ascending, blocks ordered by
    /// their least vertex.
    pub fn components(&self) -> VertexPartition {
        let mut label = vec![usize::MAX; self.n];
        let mut blocks = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            label[start] = id;
            let mut i = 0;
            while i < block.len() {
                let v = block[i];
                i += 1;
                for &w in &self.nbhd[v] {
                    if label[w] == usize::MAX {
                        label[w] = id;
                        block.push(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        VertexPartition { blocks, label }
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Induced subimage on `keep` (listed order becomes the new labelling).
    pub fn induced(&self, keep: &[Vertex]) -> Result<DigitalImage> {
        for &v in keep {
            self.check_vertex(v)?;
        }
        DigitalImage::from_fn(keep.len(), |a, b| self.adjacent(keep[a], keep[b]))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &DigitalImage) -> DigitalImage {
        let n = self.n;
        DigitalImage::from_fn(n + other.n, |a, b| match (a < n, b < n) {
            (true, true) => self.adjacent(a, b),
            (false, false) => other.adjacent(a - n, b - n),
            _ => false,
        })
        .expect("nonempty")
    }

    /// Graphviz rendering (loops omitted).
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.n {
            s.push_str(&format!("  {v};\n"));
        }
        for (a, b) in self.edges() {
            s.push_str(&format!("  {a} -- {b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitalImage")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Partition of the vertex set into disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<Vertex>>,
    label: Vec<usize>,
}

impl VertexPartition {
    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: Vertex) -> usize {
        self.label[v]
    }

    pub fn same_block(&self, a: Vertex, b: Vertex) -> bool {
        self.label[a] == self.label[b]
    }

    /// Sorted multiset of block sizes.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<_> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}

/// Finds an isomorphism `a -> b` as a vertex table, if one exists.
///
/// Backtracking assigns vertices of `a` in order of decreasing degree, pruned by
/// non-loop degree and by the sorted degree multiset of the neighbourhood.
pub fn graph_isomorphism(a: &DigitalImage, b: &DigitalImage) -> Option<Vec<Vertex>> {
    let n = a.len();
    if n != b.len() || a.edge_count() != b.edge_count() {
        return None;
    }
    let signature = |g: &DigitalImage, v: Vertex| {
        let mut nd: Vec<usize> = g
            .neighborhood(v)
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| g.degree(w))
            .collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let sig_a: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }

    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(a.degree(v)), v));
    let candidates: Vec<Vec<Vertex>> = (0..n)
        .map(|v| (0..n).filter(|&w| sig_a[v] == sig_b[w]).collect())
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        depth: usize,
        order: &[Vertex],
        candidates: &[Vec<Vertex>],
        a: &DigitalImage,
        b: &DigitalImage,
        map: &mut [Vertex],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for &w in &candidates[v] {
            if used[w] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| a.adjacent(u, v) == b.adjacent(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(depth + 1, order, candidates, a, b, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    extend(0, &order, &candidates, a, b, &mut map, &mut used).then_some(map)
}

/// Stream of one representative per isomorphism class of reflexive graphs on
/// `n` points.
///
/// Edge sets are bitmasks over vertex pairs in colexicographic order
/// `(0,1), (0,2), (1,2), (0,3), ...`; a mask is kept when its bit sequence is the
/// lexicographic minimum over all relabellings. Masks are visited in
/// increasing numeric order.
pub fn enumerate_images(n: usize) -> Result<ImageEnumerator> {
    if n == 0 {
        return Err(Error::ZeroVertices);
    }
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "enumerate_images",
            size: n,
            cap: ENUMERATION_CAP,
        });
    }
    let pairs = n * (n - 1) / 2;
    Ok(ImageEnumerator {
        n,
        next: 0,
        end: 1u64 << pairs,
    })
}

#[derive(Debug, Clone)]
pub struct ImageEnumerator {
    n: usize,
    next: u64,
    end: u64,
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

fn mask_to_image(n: usize, mask: u64) -> DigitalImage {
    DigitalImage::from_fn(n, |a, b| a != b && mask >> pair_index(a, b) & 1 == 1).expect("n >= 1")
}

/// True when no relabelling yields a lexicographically smaller bit sequence.
fn is_canonical_mask(n: usize, mask: u64) -> bool {
    let bit = |i: usize, j: usize| mask >> pair_index(i, j) & 1;
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n];

    // Err(()) means a smaller relabelling exists.
    fn dfs(
        k: usize,
        n: usize,
        perm: &mut [usize],
        used: &mut [bool],
        bit: &dyn Fn(usize, usize) -> u64,
    ) -> Result<(), ()> {
        if k == n {
            return Ok(());
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            perm[k] = cand;
            // Bits for pairs (i, k), i < k, in order.
            let mut cmp = std::cmp::Ordering::Equal;
            for (i, &p) in perm[..k].iter().enumerate() {
                let permuted = bit(p, cand);
                let original = bit(i, k);
                if permuted != original {
                    cmp = permuted.cmp(&original);
                    break;
                }
            }
            match cmp {
                std::cmp::Ordering::Less => return Err(()),
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => {
                    used[cand] = true;
                    let r = dfs(k + 1, n, perm, used, bit);
                    used[cand] = false;
                    r?;
                }
            }
        }
        Ok(())
    }
    dfs(0, n, &mut perm, &mut used, &bit).is_ok()
}

impl Iterator for ImageEnumerator {
    type Item = DigitalImage;

    fn next(&mut self) -> Option<DigitalImage> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            if is_canonical_mask(self.n, mask) {
                return Some(mask_to_image(self.n, mask));
            }
        }
        None
    }
}
