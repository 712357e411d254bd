//! Finite groups described by their irreducible-representation dimensions.
//!
//! Every count used downstream (induction multiplicities, traces, the
//! classification fingerprint) depends only on `|F|` and the dimension
//! vector, so that is all a [`GroupRepData`] stores. Index 0 is always the
//! trivial representation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CATALOG: &str = "C<n> / cyclic(<n>) for n >= 2, klein4, S3, D4, Q8, A4, S4, A5";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupRepData {
    name: String,
    order: u64,
    dims: Vec<u64>,
    abelian_order: u64,
}

/// Raw input shape; `abelian_order` is always derived, never read.
#[derive(Debug, Clone, Deserialize)]
pub struct RawGroup {
    #[serde(default)]
    pub name: Option<String>,
    pub order: u64,
    pub dims: Vec<u64>,
}

impl GroupRepData {
    pub fn validate(name: impl Into<String>, order: u64, dims: Vec<u64>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::ZeroDimension);
        }
        let sum: u64 = dims.iter().map(|d| d * d).sum();
        if sum != order {
            return Err(Error::DimensionCount { order, sum });
        }
        match dims.first() {
            Some(1) => {}
            Some(&d) => return Err(Error::TrivialRep(d)),
            None => return Err(Error::TrivialGroup(order)),
        }
        if order < 2 {
            return Err(Error::TrivialGroup(order));
        }
        let abelian_order = dims.iter().filter(|&&d| d == 1).count() as u64;
        if !order.is_multiple_of(abelian_order) {
            return Err(Error::AbelianOrder {
                order,
                abelian_order,
            });
        }
        Ok(Self {
            name: name.into(),
            order,
            dims,
            abelian_order,
        })
    }

    pub fn from_raw(raw: RawGroup) -> Result<Self> {
        let name = raw.name.unwrap_or_else(|| format!("G{}", raw.order));
        Self::validate(name, raw.order, raw.dims)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::TrivialGroup(n));
        }
        Self::validate(format!("C{n}"), n, vec![1; n as usize])
    }

    /// Looks a group up in the built-in catalog.
    ///
    /// Cyclic groups are accepted as `C6`, `Z6` or `cyclic(6)`; names are
    /// case-insensitive.
    pub fn builtin(name: &str) -> Result<Self> {
        let key = name.trim().to_ascii_lowercase();
        let unknown = || Error::UnknownGroup {
            name: name.to_string(),
            available: CATALOG.to_string(),
        };
        let cyclic_order = key
            .strip_prefix("cyclic(")
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| key.strip_prefix('c'))
            .or_else(|| key.strip_prefix('z'));
        if let Some(n) = cyclic_order.and_then(|s| s.parse::<u64>().ok()) {
            return if n >= 2 {
                Self::cyclic(n)
            } else {
                Err(unknown())
            };
        }
        let (canonical, order, dims): (&str, u64, &[u64]) = match key.as_str() {
            "klein4" | "v4" => ("klein4", 4, &[1, 1, 1, 1]),
            "s3" => ("S3", 6, &[1, 1, 2]),
            "d4" => ("D4", 8, &[1, 1, 1, 1, 2]),
            "q8" => ("Q8", 8, &[1, 1, 1, 1, 2]),
            "a4" => ("A4", 12, &[1, 1, 1, 3]),
            "s4" => ("S4", 24, &[1, 1, 2, 3, 3]),
            "a5" => ("A5", 60, &[1, 3, 3, 4, 5]),
            _ => return Err(unknown()),
        };
        Self::validate(canonical, order, dims.to_vec())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// `|F^ab|`, the number of one-dimensional irreps.
    pub fn abelian_order(&self) -> u64 {
        self.abelian_order
    }

    /// Number of irreps, `r = |F̂|`.
    pub fn irrep_count(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, irrep: u32) -> u64 {
        self.dims[irrep as usize]
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_order == self.order
    }

    pub fn check_irrep(&self, irrep: u32) -> Result<()> {
        if (irrep as usize) < self.dims.len() {
            Ok(())
        } else {
            Err(Error::IrrepOutOfRange {
                index: irrep,
                count: self.dims.len(),
            })
        }
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut dims = self.dims.clone();
        dims.sort_unstable();
        Fingerprint {
            order: self.order,
            dims,
            abelian_order: self.abelian_order,
        }
    }
}

/// The data `(|F|, sorted irrep dimensions, |F^ab|)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u64,
    pub dims: Vec<u64>,
    pub abelian_order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoDecision {
    Iso,
    NotIso,
    Undecided,
}

/// Decides whether the group C*-algebras of `F1 wr Z` and `F2 wr Z` are
/// isomorphic, in the case where at least one of the groups is abelian.
/// Then the algebras are isomorphic exactly when both groups are abelian of
/// the same order. With two non-abelian groups the answer is `Undecided`.
pub fn csalgebras_isomorphic_abelian_case(a: &GroupRepData, b: &GroupRepData) -> IsoDecision {
    match (a.is_abelian(), b.is_abelian()) {
        (false, false) => IsoDecision::Undecided,
        (true, true) if a.order == b.order => IsoDecision::Iso,
        _ => IsoDecision::NotIso,
    }
}
