//! Exhaustive search for H-space multiplications on a fixed pointed image.
//!
//! The unit-law composites `μ_e` and `ν_e` are the row and the column of the
//! table through `e`. Both must lie in the homotopy class of the identity, so
//! that class is computed once and every compatible (row, column) pair is
//! tried. The remaining cells are filled by backtracking in row-major order,
//! rejecting any value not adjacent to the values of already-filled
//! neighbouring cells. Every completed table is therefore continuous with
//! both unit laws holding up to homotopy, i.e. an H-space.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homotopy::ClassOracle;
use crate::image::{DigitalImage, Vertex};
use crate::maps::{Category, DigitalMap, MulTable};

use super::HSpaceStructure;

/// Largest image accepted by the search.
pub const SEARCH_CAP: usize = 6;

const UNSET: Vertex = usize::MAX;

/// Lazy stream of H-space structures on `(X, e)`, in a fixed order.
pub struct HSpaceSearch {
    image: Arc<DigitalImage>,
    e: Vertex,
    cat: Category,
    prefix: Vec<Vertex>,
    units: Vec<(Vec<Vertex>, Vec<Vertex>)>,
    next_unit: usize,
    /// Free cells in filling order.
    order: Vec<usize>,
    /// For each free cell, the neighbouring cells filled before it.
    earlier: Vec<Vec<usize>>,
    table: Vec<Vertex>,
    next_value: Vec<Vertex>,
    depth: usize,
    active: bool,
}

/// All H-space multiplications on `(X, e)` in the given category.
pub fn search_hspace_multiplications(
    x: &Arc<DigitalImage>,
    e: Vertex,
    cat: Category,
    budget: usize,
) -> Result<HSpaceSearch> {
    HSpaceSearch::with_prefix(x, e, cat, budget, &[])
}

fn product_neighbours(x: &DigitalImage, cat: Category, a: Vertex, b: Vertex) -> Vec<usize> {
    let n = x.len();
    let mut out = Vec::new();
    for &c in x.neighborhood(a) {
        for &d in x.neighborhood(b) {
            if (c, d) == (a, b) || (cat == Category::Np1 && c != a && d != b) {
                continue;
            }
            out.push(c * n + d);
        }
    }
    out
}

impl HSpaceSearch {
    /// Restricts the stream to tables whose first cells, in row-major order,
    /// equal `prefix`. Streams for distinct prefixes partition the full one.
    pub fn with_prefix(
        x: &Arc<DigitalImage>,
        e: Vertex,
        cat: Category,
        budget: usize,
        prefix: &[Vertex],
    ) -> Result<Self> {
        x.check_vertex(e)?;
        let n = x.len();
        if n > SEARCH_CAP {
            return Err(Error::CapExceeded {
                what: "H-space multiplication search",
                size: n,
                cap: SEARCH_CAP,
            });
        }
        if prefix.len() > n * n {
            return Err(Error::BadTable {
                got: prefix.len(),
                expected: n * n,
            });
        }
        for &v in prefix {
            x.check_vertex(v)?;
        }
        let id = DigitalMap::identity(x.clone());
        let class = ClassOracle::new(&id, cat, None, budget)?
            .members()
            .ok_or(Error::BudgetExhausted {
                what: "enumerating the homotopy class of the identity",
                budget,
            })?;
        let mut units = Vec::new();
        for row in &class {
            for col in &class {
                if row.apply(e) == col.apply(e) {
                    units.push((row.values().to_vec(), col.values().to_vec()));
                }
            }
        }
        let fixed = |c: usize| c / n == e || c % n == e;
        let order: Vec<usize> = (0..n * n).filter(|&c| !fixed(c)).collect();
        let earlier = order
            .iter()
            .map(|&c| {
                product_neighbours(x, cat, c / n, c % n)
                    .into_iter()
                    .filter(|&d| fixed(d) || d < c)
                    .collect()
            })
            .collect();
        Ok(HSpaceSearch {
            image: x.clone(),
            e,
            cat,
            prefix: prefix.to_vec(),
            units,
            next_unit: 0,
            next_value: vec![0; order.len()],
            order,
            earlier,
            table: vec![UNSET; n * n],
            depth: 0,
            active: false,
        })
    }

    /// Number of (row, column) unit-law pairs that will be tried.
    pub fn unit_pairs(&self) -> usize {
        self.units.len()
    }

    fn allowed(&self, cell: usize, v: Vertex) -> bool {
        self.prefix.get(cell).is_none_or(|&p| p == v)
    }

    /// Loads the next compatible unit pair into the fixed cells.
    fn start_next_unit(&mut self) -> bool {
        let n = self.image.len();
        let e = self.e;
        while self.next_unit < self.units.len() {
            let (row, col) = &self.units[self.next_unit];
            self.next_unit += 1;
            self.table.fill(UNSET);
            self.table[e * n..(e + 1) * n].copy_from_slice(row);
            for (a, &v) in col.iter().enumerate() {
                self.table[a * n + e] = v;
            }
            let fixed: Vec<usize> = (0..n * n).filter(|&c| self.table[c] != UNSET).collect();
            let consistent = fixed.iter().all(|&c| {
                self.allowed(c, self.table[c])
                    && product_neighbours(&self.image, self.cat, c / n, c % n)
                        .into_iter()
                        .all(|d| self.table[d] == UNSET || self.image.adjacent(self.table[c], self.table[d]))
            });
            if consistent {
                self.depth = 0;
                if let Some(v) = self.next_value.first_mut() {
                    *v = 0;
                }
                self.active = true;
                return true;
            }
        }
        false
    }

    /// Advances to the next complete table.
    fn next_table(&mut self) -> Option<&[Vertex]> {
        let n = self.image.len();
        loop {
            if !self.active && !self.start_next_unit() {
                return None;
            }
            if self.depth == self.order.len() {
                if self.depth == 0 {
                    self.active = false;
                } else {
                    self.depth -= 1;
                }
                return Some(&self.table);
            }
            let k = self.depth;
            let cell = self.order[k];
            let found = (self.next_value[k]..n).find(|&v| {
                self.allowed(cell, v)
                    && self.earlier[k]
                        .iter()
                        .all(|&d| self.image.adjacent(v, self.table[d]))
            });
            match found {
                Some(v) => {
                    self.table[cell] = v;
                    self.next_value[k] = v + 1;
                    self.depth += 1;
                    if let Some(nv) = self.next_value.get_mut(self.depth) {
                        *nv = 0;
                    }
                }
                None => {
                    self.table[cell] = UNSET;
                    if k == 0 {
                        self.active = false;
                    } else {
                        self.depth -= 1;
                    }
                }
            }
        }
    }
}

impl Iterator for HSpaceSearch {
    type Item = HSpaceStructure;

    fn next(&mut self) -> Option<HSpaceStructure> {
        let (image, e, cat) = (self.image.clone(), self.e, self.cat);
        let n = image.len();
        let cells = self.next_table()?.to_vec();
        let mu = MulTable::new(n, cells).expect("complete table");
        Some(HSpaceStructure::new(image, e, mu, cat).expect("search tables are continuous"))
    }
}
