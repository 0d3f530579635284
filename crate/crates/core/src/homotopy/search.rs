//! Breadth-first search over the single-step homotopy graph of continuous maps.
//!
//! Two maps are joined when they are homotopic in a single step. Restricting
//! any homotopy to consecutive times gives such a step, and steps concatenate,
//! so homotopy is exactly connectivity in this graph.
//!
//! NP₁ neighbours are all continuous maps pointwise adjacent to the current
//! one, produced by backtracking over closed neighbourhoods of its values.
//! NP₂ neighbours are one-point moves: every NP₂ homotopy can be realised by
//! steps that change the map at a single point, so these generate the same
//! components.

use std::ops::ControlFlow;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::image::{DigitalImage, Vertex};
use crate::maps::{Category, ContinuousMaps, DigitalMap};

/// Compact value table used as a visited-set key.
pub(crate) type Table = Box<[u8]>;

/// Largest codomain representable in a [`Table`].
pub(crate) const TABLE_CODOMAIN_CAP: usize = 256;

pub(crate) fn to_table(values: &[Vertex]) -> Table {
    values.iter().map(|&v| v as u8).collect()
}

/// The space of continuous maps `dom → cod`, optionally pinned at one point.
#[derive(Debug, Clone)]
pub(crate) struct MapSpace {
    pub dom: Arc<DigitalImage>,
    pub cod: Arc<DigitalImage>,
    pub cat: Category,
    pub pin: Option<(Vertex, Vertex)>,
}

impl MapSpace {
    pub fn new(
        dom: Arc<DigitalImage>,
        cod: Arc<DigitalImage>,
        cat: Category,
        pin: Option<(Vertex, Vertex)>,
    ) -> Result<Self> {
        if cod.len() > TABLE_CODOMAIN_CAP {
            return Err(Error::CapExceeded {
                what: "homotopy search codomain",
                size: cod.len(),
                cap: TABLE_CODOMAIN_CAP,
            });
        }
        Ok(MapSpace { dom, cod, cat, pin })
    }

    pub fn for_map(f: &DigitalMap, cat: Category, pin: Option<(Vertex, Vertex)>) -> Result<Self> {
        Self::new(f.domain().clone(), f.codomain().clone(), cat, pin)
    }

    pub fn to_map(&self, t: &[u8]) -> DigitalMap {
        DigitalMap::from_parts_unchecked(
            self.dom.clone(),
            self.cod.clone(),
            t.iter().map(|&v| v as Vertex).collect(),
        )
    }

    /// Calls `visit` on every neighbour of `f` other than `f` itself, stopping
    /// early when `visit` breaks.
    pub fn for_each_neighbor(
        &self,
        f: &[u8],
        visit: &mut dyn FnMut(Table) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        match self.cat {
            Category::Np1 => self.np1_neighbors(f, visit),
            Category::Np2 => self.np2_neighbors(f, visit),
        }
    }

    fn np1_neighbors(
        &self,
        f: &[u8],
        visit: &mut dyn FnMut(Table) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let candidates = self
            .dom
            .vertices()
            .map(|v| match self.pin {
                Some((base, target)) if base == v => vec![target],
                _ => self.cod.neighborhood(f[v] as Vertex).to_vec(),
            })
            .collect();
        let mut maps =
            ContinuousMaps::with_candidates(self.dom.clone(), self.cod.clone(), candidates);
        while let Some(g) = maps.next_table() {
            if g.iter().zip(f).any(|(&a, &b)| a != b as Vertex) {
                visit(to_table(g))?;
            }
        }
        ControlFlow::Continue(())
    }

    fn np2_neighbors(
        &self,
        f: &[u8],
        visit: &mut dyn FnMut(Table) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        for v in self.dom.vertices() {
            if matches!(self.pin, Some((base, _)) if base == v) {
                continue;
            }
            let fv = f[v] as Vertex;
            for &y in self.cod.neighborhood(fv) {
                if y == fv {
                    continue;
                }
                let ok = self
                    .dom
                    .neighborhood(v)
                    .iter()
                    .all(|&u| u == v || self.cod.adjacent(f[u] as Vertex, y));
                if ok {
                    let mut g: Table = f.into();
                    g[v] = y as u8;
                    visit(g)?;
                }
            }
        }
        ControlFlow::Continue(())
    }
}

/// Result of a breadth-first exploration from one map.
#[derive(Debug)]
pub(crate) enum Exploration {
    /// A map satisfying the stop predicate; path runs from the start to it.
    Found(Vec<Table>),
    /// The whole component was visited without a hit.
    Exhausted(IndexSet<Table>),
    /// The node budget ran out.
    OutOfBudget,
}

fn path_to(nodes: &IndexSet<Table>, parent: &[usize], mut i: usize) -> Vec<Table> {
    let mut path = vec![nodes[i].clone()];
    while parent[i] != usize::MAX {
        i = parent[i];
        path.push(nodes[i].clone());
    }
    path.reverse();
    path
}

/// BFS from `start` until `stop` accepts a map. Returns the outcome and the
/// number of maps visited.
pub(crate) fn explore(
    space: &MapSpace,
    start: Table,
    budget: usize,
    mut stop: impl FnMut(&[u8]) -> bool,
) -> (Exploration, usize) {
    let budget = budget.max(1);
    let mut nodes: IndexSet<Table> = IndexSet::new();
    let mut parent: Vec<usize> = vec![usize::MAX];
    let hit = stop(&start);
    nodes.insert(start);
    if hit {
        return (Exploration::Found(path_to(&nodes, &parent, 0)), 1);
    }
    let mut head = 0;
    while head < nodes.len() {
        let current = nodes[head].clone();
        let mut found = None;
        let mut out_of_budget = false;
        let _ = space.for_each_neighbor(&current, &mut |g| {
            if nodes.contains(&g) {
                return ControlFlow::Continue(());
            }
            if nodes.len() >= budget {
                out_of_budget = true;
                return ControlFlow::Break(());
            }
            let accept = stop(&g);
            let (idx, _) = nodes.insert_full(g);
            parent.push(head);
            if accept {
                found = Some(idx);
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if let Some(idx) = found {
            let explored = nodes.len();
            return (Exploration::Found(path_to(&nodes, &parent, idx)), explored);
        }
        if out_of_budget {
            return (Exploration::OutOfBudget, budget);
        }
        head += 1;
    }
    let explored = nodes.len();
    (Exploration::Exhausted(nodes), explored)
}

/// Outcome of a bidirectional search between two maps.
#[derive(Debug)]
pub(crate) enum Connection {
    Path(Vec<Table>),
    Disconnected,
    OutOfBudget,
}

struct Side {
    nodes: IndexSet<Table>,
    parent: Vec<usize>,
    layer_start: usize,
}

impl Side {
    fn new(start: Table) -> Self {
        let mut nodes = IndexSet::new();
        nodes.insert(start);
        Side {
            nodes,
            parent: vec![usize::MAX],
            layer_start: 0,
        }
    }

    fn frontier(&self) -> usize {
        self.nodes.len() - self.layer_start
    }
}

/// Bidirectional BFS from `from` and `to`, always expanding the side with the
/// smaller frontier. Either side running dry proves the maps lie in different
/// components.
pub(crate) fn connect(space: &MapSpace, from: Table, to: Table, budget: usize) -> (Connection, usize) {
    if from == to {
        return (Connection::Path(vec![from]), 1);
    }
    let budget = budget.max(2);
    let mut sides = [Side::new(from), Side::new(to)];
    loop {
        let s = usize::from(sides[1].frontier() < sides[0].frontier());
        let o = 1 - s;
        let layer_end = sides[s].nodes.len();
        let mut meet: Option<(usize, usize)> = None; // (index in s, index in o)
        let mut out_of_budget = false;
        for head in sides[s].layer_start..layer_end {
            let current = sides[s].nodes[head].clone();
            let [a, b] = &mut sides;
            let (me, other) = if s == 0 { (a, b) } else { (b, a) };
            let _ = space.for_each_neighbor(&current, &mut |g| {
                if let Some(j) = other.nodes.get_index_of(&g) {
                    meet = Some((head, j));
                    return ControlFlow::Break(());
                }
                if me.nodes.contains(&g) {
                    return ControlFlow::Continue(());
                }
                if me.nodes.len() + other.nodes.len() >= budget {
                    out_of_budget = true;
                    return ControlFlow::Break(());
                }
                me.nodes.insert(g);
                me.parent.push(head);
                ControlFlow::Continue(())
            });
            if meet.is_some() || out_of_budget {
                break;
            }
        }
        let explored = sides[0].nodes.len() + sides[1].nodes.len();
        if let Some((i, j)) = meet {
            let mut first = path_to(&sides[s].nodes, &sides[s].parent, i);
            let mut second = path_to(&sides[o].nodes, &sides[o].parent, j);
            second.reverse();
            first.extend(second);
            if s == 1 {
                first.reverse();
            }
            return (Connection::Path(first), explored);
        }
        if out_of_budget {
            return (Connection::OutOfBudget, budget);
        }
        if sides[s].nodes.len() == layer_end {
            return (Connection::Disconnected, explored);
        }
        sides[s].layer_start = layer_end;
    }
}
