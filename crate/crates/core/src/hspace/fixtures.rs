use std::sync::Arc;

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::maps::{Category, DigitalMap, MulTable};

use super::{magma_point_extension, HSpaceStructure, MagmaStructure};

/// A named example object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Image(Arc<DigitalImage>),
    Map(DigitalMap),
    HSpace(HSpaceStructure),
    Magma(MagmaStructure),
}

pub const FIXTURE_NAMES: [&str; 10] = [
    "five_twist_mu",
    "five_twist_tau",
    "five_twist_image",
    "rho",
    "d1",
    "d4",
    "z5_cycle_group",
    "disjoint_c5_point",
    "two_point_constant",
    "z4_k4_group",
];

/// The five-cycle `x₀ … x₄` with a replicated point `x̄₄` (index 5) adjacent
/// to `x₃` and `x₀`.
fn five_twist() -> Arc<DigitalImage> {
    Arc::new(
        DigitalImage::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (3, 5), (5, 0)])
            .expect("valid edges"),
    )
}

/// `x_i x_j = x_{i+j}`, with `x̄₄` acting as `x₄`.
fn five_twist_mu_table() -> MulTable {
    MulTable::from_fn(6, |a, b| (a.min(4) + b.min(4)) % 5).expect("values in range")
}

fn five_twist_tau_table() -> MulTable {
    MulTable::from_fn(6, |a, b| match (a, b) {
        (0, b) => b,
        (a, 0) => a,
        _ => (a.min(4) + b.min(4)) % 5,
    })
    .expect("values in range")
}

fn cyclic_table(n: usize) -> MulTable {
    MulTable::from_fn(n, |a, b| (a + b) % n).expect("values in range")
}

fn self_map(x: &Arc<DigitalImage>, values: Vec<usize>) -> DigitalMap {
    DigitalMap::new(x.clone(), x.clone(), values).expect("valid table")
}

fn hspace(x: Arc<DigitalImage>, e: usize, mu: MulTable, cat: Category) -> HSpaceStructure {
    HSpaceStructure::new(x, e, mu, cat).expect("fixture multiplications are continuous")
}

/// Looks up a fixture by name.
pub fn fixture(name: &str) -> Result<Fixture> {
    let w = five_twist();
    Ok(match name {
        "five_twist_image" => Fixture::Image(w),
        "five_twist_mu" => Fixture::HSpace(hspace(w, 0, five_twist_mu_table(), Category::Np1)),
        "five_twist_tau" => Fixture::HSpace(hspace(w, 0, five_twist_tau_table(), Category::Np1)),
        "rho" => Fixture::Map(self_map(&w, vec![0, 1, 2, 3, 4, 4])),
        "d1" => Fixture::Map(self_map(&w, vec![0, 1, 1, 1, 1, 1])),
        "d4" => Fixture::Map(self_map(&w, vec![0, 4, 4, 4, 4, 4])),
        "z5_cycle_group" => Fixture::HSpace(hspace(
            Arc::new(DigitalImage::cycle(5)),
            0,
            cyclic_table(5),
            Category::Np1,
        )),
        "disjoint_c5_point" => {
            let m = MagmaStructure::new(Arc::new(DigitalImage::cycle(5)), cyclic_table(5), Category::Np1)?;
            Fixture::HSpace(magma_point_extension(&m))
        }
        "two_point_constant" => Fixture::HSpace(hspace(
            Arc::new(DigitalImage::complete(2)),
            0,
            MulTable::from_fn(2, |_, _| 0)?,
            Category::Np2,
        )),
        "z4_k4_group" => Fixture::HSpace(hspace(
            Arc::new(DigitalImage::complete(4)),
            0,
            cyclic_table(4),
            Category::Np1,
        )),
        other => return Err(Error::UnknownFixture(other.to_string())),
    })
}

impl Fixture {
    pub fn into_hspace(self) -> Option<HSpaceStructure> {
        match self {
            Fixture::HSpace(h) => Some(h),
            _ => None,
        }
    }

    pub fn into_map(self) -> Option<DigitalMap> {
        match self {
            Fixture::Map(f) => Some(f),
            _ => None,
        }
    }

    pub fn into_image(self) -> Option<Arc<DigitalImage>> {
        match self {
            Fixture::Image(x) => Some(x),
            _ => None,
        }
    }
}
