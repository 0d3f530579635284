use crate::error::Result;
use crate::image::Vertex;
use crate::maps::{compose, Category, DigitalMap};

use super::single_step_homotopic;

/// A chain of continuous maps in which consecutive maps are homotopic in a
/// single step. It encodes a homotopy from the first map to the last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyCertificate {
    chain: Vec<DigitalMap>,
    category: Category,
    base: Option<(Vertex, Vertex)>,
}

impl HomotopyCertificate {
    /// Wraps a chain without checking it; call [`verify`](Self::verify).
    pub fn new(chain: Vec<DigitalMap>, category: Category, base: Option<(Vertex, Vertex)>) -> Self {
        assert!(!chain.is_empty(), "certificate chain must be nonempty");
        HomotopyCertificate {
            chain,
            category,
            base,
        }
    }

    pub fn trivial(f: DigitalMap, category: Category) -> Self {
        Self::new(vec![f], category, None)
    }

    pub fn chain(&self) -> &[DigitalMap] {
        &self.chain
    }

    pub fn category(&self) -> Category {
        self.category
    }

    /// Basepoint pair preserved at every stage, for pointed certificates.
    pub fn base(&self) -> Option<(Vertex, Vertex)> {
        self.base
    }

    /// Number of single steps (the length `m` of the time interval).
    pub fn steps(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn source(&self) -> &DigitalMap {
        &self.chain[0]
    }

    pub fn target(&self) -> &DigitalMap {
        self.chain.last().expect("nonempty")
    }

    /// Re-checks the chain from scratch: every stage continuous, consecutive
    /// stages single-step homotopic, and the basepoint fixed if pointed.
    pub fn verify(&self) -> bool {
        let stages_ok = self.chain.iter().all(|f| {
            f.is_continuous()
                && self
                    .base
                    .is_none_or(|(a, b)| a < f.domain().len() && f.apply(a) == b)
        });
        stages_ok
            && self.chain.windows(2).all(|w| {
                single_step_homotopic(&w[0], &w[1], self.category).unwrap_or(false)
            })
    }

    /// True when the certificate is valid and runs from `f` to `g`.
    pub fn proves(&self, f: &DigitalMap, g: &DigitalMap) -> bool {
        self.source() == f && self.target() == g && self.verify()
    }

    pub fn reversed(&self) -> Self {
        let mut chain = self.chain.clone();
        chain.reverse();
        HomotopyCertificate {
            chain,
            category: self.category,
            base: self.base,
        }
    }

    /// Concatenation; the target of `self` must be the source of `next`.
    pub fn then(&self, next: &HomotopyCertificate) -> Option<Self> {
        if self.target() != next.source() || self.category != next.category {
            return None;
        }
        let mut chain = self.chain.clone();
        chain.extend(next.chain[1..].iter().cloned());
        let base = if self.base == next.base { self.base } else { None };
        Some(HomotopyCertificate {
            chain,
            category: self.category,
            base,
        })
    }

    /// `h ∘ H`: post-composition with a continuous map.
    pub fn post_compose(&self, h: &DigitalMap) -> Result<Self> {
        let chain = self
            .chain
            .iter()
            .map(|f| compose(h, f))
            .collect::<Result<_>>()?;
        Ok(HomotopyCertificate {
            chain,
            category: self.category,
            base: None,
        })
    }

    /// `H ∘ h`: pre-composition with a continuous map.
    pub fn pre_compose(&self, h: &DigitalMap) -> Result<Self> {
        let chain = self
            .chain
            .iter()
            .map(|f| compose(f, h))
            .collect::<Result<_>>()?;
        Ok(HomotopyCertificate {
            chain,
            category: self.category,
            base: None,
        })
    }
}
