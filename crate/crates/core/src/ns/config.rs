//! Surface configuration: singular fibers and the tracked sections.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a fiber came from when the config is itself a pullback.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberOrigin {
    /// Name of the fiber in the original surface.
    pub root: String,
    /// Its size there.
    pub n: usize,
    /// Accumulated ramification degree at this point.
    pub e: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSpec {
    pub name: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<FiberOrigin>,
}

impl FiberSpec {
    pub fn new(name: &str, n: usize) -> Self {
        Self {
            name: name.to_string(),
            n,
            origin: None,
        }
    }
}

/// A tracked section.
///
/// `components[t]` is the component of fiber `t` the section meets (missing
/// means 0). A torsion section sets `order`. A non-torsion section may give
/// `free` coordinates of its image in `E(K)/torsion`; without them it cannot
/// take part in translations. `pairings` holds intersection numbers with
/// `O` and with other sections; missing ones are derived by translation
/// invariance when possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionData {
    pub name: String,
    #[serde(default)]
    pub components: BTreeMap<String, i64>,
    #[serde(default)]
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free: Option<Vec<i64>>,
    #[serde(default)]
    pub pairings: BTreeMap<String, i64>,
}

impl SectionData {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            components: BTreeMap::new(),
            order: None,
            free: None,
            pairings: BTreeMap::new(),
        }
    }

    pub fn component(mut self, fiber: &str, c: i64) -> Self {
        self.components.insert(fiber.to_string(), c);
        self
    }

    pub fn torsion(mut self, order: u64) -> Self {
        self.order = Some(order);
        self
    }

    pub fn free(mut self, coords: Vec<i64>) -> Self {
        self.free = Some(coords);
        self
    }

    pub fn pairing(mut self, other: &str, value: i64) -> Self {
        self.pairings.insert(other.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SurfaceConfig {
    pub fibers: Vec<FiberSpec>,
    #[serde(default)]
    pub sections: Vec<SectionData>,
}

impl SurfaceConfig {
    pub fn new(fibers: Vec<FiberSpec>, sections: Vec<SectionData>) -> Self {
        Self { fibers, sections }
    }

    /// Config with the given fiber sizes named `t0, t1, …` and no sections.
    pub fn with_fibers(sizes: &[usize]) -> Self {
        Self {
            fibers: sizes
                .iter()
                .enumerate()
                .map(|(i, &n)| FiberSpec::new(&format!("t{i}"), n))
                .collect(),
            sections: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn fiber_sum(&self) -> usize {
        self.fibers.iter().map(|f| f.n).sum()
    }
}
