//! Finite truncations of the inductive system `(B̂_n, s_n)` with
//! `B_n = F^n`, the induction map `f` on `Z(⊔ B̂_n)` and the check that
//! `Im f ⊕ H` is everything.
//!
//! Levels are one-sided: a level-`n` element is a tuple of `n` irrep
//! indices, `s_n` appends the trivial index and `r_n` drops the last one.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::GroupRepData;
use crate::linalg::IntMatrix;

/// An element of `B̂_n`, `n = tuple.len()`.
pub type LevelTuple = Vec<u32>;

/// Default cap on the number of matrix columns `Σ_{n≤N} r^n`.
pub const DEFAULT_COLUMN_BUDGET: u128 = 100_000;

pub fn s_map(tuple: &[u32]) -> LevelTuple {
    let mut t = tuple.to_vec();
    t.push(0);
    t
}

pub fn r_map(tuple: &[u32]) -> LevelTuple {
    tuple[..tuple.len().saturating_sub(1)].to_vec()
}

/// Finitely supported integer function on `⊔_{n≥1} B̂_n`, keyed by
/// `(level, tuple)` so that iteration runs level by level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelVector {
    terms: BTreeMap<(usize, LevelTuple), BigInt>,
}

impl LevelVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(tuple: LevelTuple) -> Self {
        let mut v = Self::zero();
        v.add(tuple, BigInt::one());
        v
    }

    pub fn add(&mut self, tuple: LevelTuple, k: BigInt) {
        assert!(!tuple.is_empty(), "levels start at 1");
        if k.is_zero() {
            return;
        }
        let key = (tuple.len(), tuple);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += k;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn get(&self, tuple: &[u32]) -> BigInt {
        self.terms
            .get(&(tuple.len(), tuple.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|(n, _)| *n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LevelTuple, &BigInt)> {
        self.terms.iter().map(|((_, t), k)| (t, k))
    }
}

/// The maps `s_n`, `r_n` and `f` up to truncation level `N`.
#[derive(Debug, Clone)]
pub struct LevelMaps {
    group: GroupRepData,
    levels: usize,
}

/// Outcome of [`LevelMaps::claim_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCertificate {
    pub size: usize,
    #[serde(with = "crate::bigint_json")]
    pub det: BigInt,
    pub holds: bool,
}

impl LevelMaps {
    pub fn new(group: GroupRepData, levels: usize) -> Result<Self> {
        if levels < 2 {
            return Err(Error::Argument(format!(
                "truncation level must be at least 2, got {levels}"
            )));
        }
        Ok(Self { group, levels })
    }

    pub fn group(&self) -> &GroupRepData {
        &self.group
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `Σ_{n=1}^{N} r^n`, the side length of the claim matrix.
    pub fn column_count(&self) -> u128 {
        let r = self.group.irrep_count() as u128;
        let mut total: u128 = 0;
        let mut power: u128 = 1;
        for _ in 0..self.levels {
            power = power.saturating_mul(r);
            total = total.saturating_add(power);
        }
        total
    }

    /// All of `B̂_n` in lexicographic order.
    pub fn level_basis(&self, n: usize) -> Vec<LevelTuple> {
        let r = self.group.irrep_count() as u32;
        let mut out: Vec<LevelTuple> = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| (0..r).map(move |g| [t.as_slice(), &[g]].concat()))
                .collect();
        }
        out
    }

    /// Basis of `H`: all of `B̂_1`, and for `n ≥ 2` the tuples outside
    /// `s_{n-1}(B̂_{n-1})`, i.e. with non-trivial last coordinate.
    pub fn h_basis(&self) -> Vec<LevelTuple> {
        (1..=self.levels)
            .flat_map(|n| {
                self.level_basis(n)
                    .into_iter()
                    .filter(move |t| n == 1 || *t.last().unwrap() != 0)
            })
            .collect()
    }

    /// `dim π_n / dim r_{n-1}(π_n)`, the dimension of the last coordinate.
    pub fn dim_ratio(&self, tuple: &[u32]) -> u64 {
        self.group.dim(*tuple.last().expect("non-empty tuple"))
    }

    /// `f(φ)(π_n) = φ(π_n) - φ(r_{n-1}(π_n)) · dim π_n / dim r_{n-1}(π_n)`.
    ///
    /// `φ` must live on levels `1..N-1` so that the image fits below `N`.
    pub fn f_apply(&self, phi: &LevelVector) -> Result<LevelVector> {
        if let Some(level) = phi.max_level() {
            if level >= self.levels {
                return Err(Error::Truncation {
                    level,
                    max: self.levels - 1,
                });
            }
        }
        for (t, _) in phi.terms() {
            t.iter().try_for_each(|&g| self.group.check_irrep(g))?;
        }
        let r = self.group.irrep_count() as u32;
        let mut out = LevelVector::zero();
        for (tuple, k) in phi.terms() {
            out.add(tuple.clone(), k.clone());
            // φ(π) contributes to f(φ)(π ⊗ σ) for every σ, with weight dim σ
            for sigma in 0..r {
                let child = [tuple.as_slice(), &[sigma]].concat();
                let weight = BigInt::from(self.dim_ratio(&child));
                out.add(child, -(k * weight));
            }
        }
        Ok(out)
    }

    /// Square matrix with columns `f(π)` for `π` at levels `1..N-1`, then the
    /// inclusion of the `H` basis; rows indexed by all tuples at levels `1..N`.
    pub fn claim_matrix(&self) -> Result<IntMatrix> {
        let rows: Vec<LevelTuple> = (1..=self.levels)
            .flat_map(|n| self.level_basis(n))
            .collect();
        let index: BTreeMap<&[u32], usize> = rows
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let mut columns: Vec<LevelVector> = Vec::with_capacity(rows.len());
        for n in 1..self.levels {
            for t in self.level_basis(n) {
                columns.push(self.f_apply(&LevelVector::basis(t))?);
            }
        }
        columns.extend(self.h_basis().into_iter().map(LevelVector::basis));
        assert_eq!(
            columns.len(),
            rows.len(),
            "column count must equal row count"
        );

        let mut m = IntMatrix::zeros(rows.len(), columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (t, k) in col.terms() {
                m[(index[t.as_slice()], j)] = k.clone();
            }
        }
        Ok(m)
    }

    /// Determinant of [`claim_matrix`](Self::claim_matrix); the direct-sum
    /// decomposition holds at this level iff it is `±1`.
    pub fn claim_check(&self, budget: u128) -> Result<ClaimCertificate> {
        let cols = self.column_count();
        if cols > budget {
            return Err(Error::Budget { cols, budget });
        }
        let m = self.claim_matrix()?;
        let det = m.determinant();
        let holds = det.abs().is_one();
        if !holds {
            return Err(Error::ClaimViolation {
                levels: self.levels,
                det: det.to_string(),
            });
        }
        Ok(ClaimCertificate {
            size: m.rows(),
            det,
            holds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maps(name: &str, n: usize) -> LevelMaps {
        LevelMaps::new(GroupRepData::builtin(name).unwrap(), n).unwrap()
    }

    fn int(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn s_and_r() {
        assert_eq!(s_map(&[0]), vec![0, 0]);
        assert_eq!(s_map(&[2, 1]), vec![2, 1, 0]);
        for t in maps("S3", 4).level_basis(3) {
            assert_eq!(r_map(&s_map(&t)), t);
        }
    }

    #[test]
    fn f_on_c2_trivial_tuple() {
        let m = maps("C2", 3);
        let img = m.f_apply(&LevelVector::basis(vec![0])).unwrap();
        let expected: Vec<(LevelTuple, BigInt)> = vec![
            (vec![0], int(1)),
            (vec![0, 0], int(-1)),
            (vec![0, 1], int(-1)),
        ];
        assert_eq!(
            img.terms()
                .map(|(t, k)| (t.clone(), k.clone()))
                .collect::<Vec<_>>(),
            expected
        );
    }

    #[test]
    fn f_on_s3_two_dimensional_irrep() {
        let m = maps("S3", 2);
        let img = m.f_apply(&LevelVector::basis(vec![2])).unwrap();
        assert_eq!(img.get(&[2]), int(1));
        assert_eq!(img.get(&[2, 0]), int(-1));
        assert_eq!(img.get(&[2, 1]), int(-1));
        assert_eq!(img.get(&[2, 2]), int(-2));
        // dim accounting: 2·1 + 2·1 + 4·2 = 12 = dim π · |F|
        let dim = |t: &LevelTuple| t.iter().map(|&g| m.group().dim(g)).product::<u64>();
        let induced: i64 = img
            .terms()
            .filter(|(t, _)| t.len() == 2)
            .map(|(t, k)| -(dim(t) as i64) * i64::try_from(k).unwrap())
            .sum();
        assert_eq!(induced, 12);
        assert!(m.f_apply(&LevelVector::zero()).unwrap().is_zero());
    }

    #[test]
    fn f_matches_pointwise_formula() {
        let m = maps("S3", 4);
        let mut phi = LevelVector::zero();
        for (i, t) in m
            .level_basis(1)
            .into_iter()
            .chain(m.level_basis(2))
            .chain(m.level_basis(3))
            .enumerate()
        {
            phi.add(t, int(i as i64 % 7 - 3));
        }
        let img = m.f_apply(&phi).unwrap();
        for n in 1..=4 {
            for t in m.level_basis(n) {
                let prev = if n == 1 { int(0) } else { phi.get(&r_map(&t)) };
                let expected = phi.get(&t) - prev * int(m.dim_ratio(&t) as i64);
                assert_eq!(img.get(&t), expected, "{t:?}");
            }
        }
    }

    #[test]
    fn truncation_guard() {
        let m = maps("C2", 2);
        assert!(matches!(
            m.f_apply(&LevelVector::basis(vec![0, 1])),
            Err(Error::Truncation { level: 2, .. })
        ));
        assert!(LevelMaps::new(GroupRepData::builtin("C2").unwrap(), 1).is_err());
    }

    #[test]
    fn claim_examples() {
        for (name, n, size) in [("C2", 2, 6), ("C2", 3, 14), ("S3", 2, 12)] {
            let cert = maps(name, n).claim_check(DEFAULT_COLUMN_BUDGET).unwrap();
            assert_eq!(cert.size, size);
            assert!(cert.det.abs().is_one() && cert.holds);
        }
    }

    #[test]
    fn claim_budget() {
        assert!(matches!(
            maps("C3", 3).claim_check(20),
            Err(Error::Budget {
                cols: 39,
                budget: 20
            })
        ));
    }

    #[test]
    fn matrix_columns_agree_with_f() {
        let m = maps("C3", 3);
        let mat = m.claim_matrix().unwrap();
        let rows: Vec<LevelTuple> = (1..=3).flat_map(|n| m.level_basis(n)).collect();
        let domain: Vec<LevelTuple> = (1..3).flat_map(|n| m.level_basis(n)).collect();
        for (j, t) in domain.iter().enumerate() {
            let img = m.f_apply(&LevelVector::basis(t.clone())).unwrap();
            for (i, row) in rows.iter().enumerate() {
                assert_eq!(mat[(i, j)], img.get(row));
            }
        }
    }

    /// Every non-zero φ in {-1,0,1}^(levels 1..N-1) has f(φ) non-zero on the
    /// image of the s maps.
    #[test]
    fn injective_on_s_image_exhaustive() {
        for n in 2..=3 {
            let m = maps("C2", n);
            let domain: Vec<LevelTuple> = (1..n).flat_map(|k| m.level_basis(k)).collect();
            let s_image: Vec<LevelTuple> = (1..n)
                .flat_map(|k| m.level_basis(k))
                .map(|t| s_map(&t))
                .collect();
            let total = 3usize.pow(domain.len() as u32);
            for code in 1..total {
                let mut phi = LevelVector::zero();
                let mut c = code;
                for t in &domain {
                    phi.add(t.clone(), int((c % 3) as i64 - 1));
                    c /= 3;
                }
                if phi.is_zero() {
                    continue;
                }
                let img = m.f_apply(&phi).unwrap();
                assert!(s_image.iter().any(|t| !img.get(t).is_zero()), "{phi:?}");
            }
        }
    }
}
