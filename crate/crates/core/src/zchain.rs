//! The free abelian group on words, with the shift action.
//!
//! [`ZChain::decompose`] realizes the splitting
//! `Z(F̂^(Z)) = Im(Id - α) ⊕ Z·S`, with `S` the canonical words: every word
//! `x = shift(s, k)` differs from its representative `s` by a telescoping
//! sum in the image of `Id - α`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::word::{CanonicalWord, Word};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<TermJson>", into = "Vec<TermJson>")]
pub struct ZChain {
    terms: BTreeMap<Word, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Word,
    #[serde(with = "crate::bigint_json")]
    coeff: BigInt,
}

impl From<Vec<TermJson>> for ZChain {
    fn from(terms: Vec<TermJson>) -> Self {
        terms.into_iter().map(|t| (t.word, t.coeff)).collect()
    }
}

impl From<ZChain> for Vec<TermJson> {
    fn from(c: ZChain) -> Self {
        c.terms
            .into_iter()
            .map(|(word, coeff)| TermJson { word, coeff })
            .collect()
    }
}

impl FromIterator<(Word, BigInt)> for ZChain {
    fn from_iter<I: IntoIterator<Item = (Word, BigInt)>>(iter: I) -> Self {
        let mut c = ZChain::zero();
        for (w, k) in iter {
            c.add_term(w, k);
        }
        c
    }
}

/// Result of [`ZChain::decompose`]: `chain = (witness - α(witness)) + canonical`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub witness: ZChain,
    pub canonical: ZChain,
}

impl ZChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: Word, coeff: impl Into<BigInt>) -> Self {
        let mut c = Self::zero();
        c.add_term(w, coeff.into());
        c
    }

    /// `k·[empty]`.
    pub fn constant(k: impl Into<BigInt>) -> Self {
        Self::term(Word::empty(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, w: Word, k: BigInt) {
        if k.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(k);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += k;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Applies `shift(·, k)` to every word.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.shift(k), c.clone()))
                .collect(),
        }
    }

    /// The shift automorphism α, i.e. `shift(·, 1)` on every basis word.
    pub fn alpha(&self) -> Self {
        self.shift(1)
    }

    /// `(Id - α)(self)`.
    pub fn coboundary(&self) -> Self {
        self - &self.alpha()
    }

    /// True iff `α(self) = self`. The empty word is the only finite orbit,
    /// so this holds exactly for multiples of `[empty]`.
    pub fn is_invariant(&self) -> bool {
        self.terms.keys().all(Word::is_empty)
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(Word::is_canonical)
    }

    /// Splits `self` as `(witness - α(witness)) + canonical`.
    ///
    /// `canonical` is supported on canonical words and is unique; the witness
    /// is unique up to multiples of `[empty]` and is returned with zero
    /// coefficient there.
    pub fn decompose(&self) -> Decomposition {
        let mut witness = ZChain::zero();
        let mut canonical = ZChain::zero();
        for (x, c) in &self.terms {
            let (rep, offset) = x.canonicalize();
            // x = α^offset(rep); x - rep = (Id - α)(-Σ_{j=0}^{offset-1} α^j rep) for offset > 0,
            // and (Id - α)(Σ_{j=offset}^{-1} α^j rep) for offset < 0.
            if offset > 0 {
                for j in 0..offset {
                    witness.add_term(rep.shift(j), -c.clone());
                }
            } else {
                for j in offset..0 {
                    witness.add_term(rep.shift(j), c.clone());
                }
            }
            canonical.add_term(rep.into_word(), c.clone());
        }
        Decomposition { witness, canonical }
    }

    /// Image in the co-invariants `Z(F̂^(Z))_Z`, written on canonical words.
    /// Vanishes exactly on `Im(Id - α)`.
    pub fn coinvariant_class(&self) -> ZChain {
        let mut out = ZChain::zero();
        for (x, c) in &self.terms {
            out.add_term(x.canonicalize().0.into_word(), c.clone());
        }
        out
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(BigInt::abs)
            .max()
            .unwrap_or_default()
    }
}

/// Generator of the shift-invariant chains.
pub fn invariant_basis() -> Vec<CanonicalWord> {
    vec![CanonicalWord::empty()]
}

impl Add<&ZChain> for &ZChain {
    type Output = ZChain;

    fn add(self, rhs: &ZChain) -> ZChain {
        let mut out = self.clone();
        for (w, k) in &rhs.terms {
            out.add_term(w.clone(), k.clone());
        }
        out
    }
}

impl Sub<&ZChain> for &ZChain {
    type Output = ZChain;

    fn sub(self, rhs: &ZChain) -> ZChain {
        let mut out = self.clone();
        for (w, k) in &rhs.terms {
            out.add_term(w.clone(), -k.clone());
        }
        out
    }
}

impl Neg for &ZChain {
    type Output = ZChain;

    fn neg(self) -> ZChain {
        self.scale(&-BigInt::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ZChain> for ZChain {
            type Output = ZChain;

            fn $m(self, rhs: ZChain) -> ZChain {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);

impl Neg for ZChain {
    type Output = ZChain;

    fn neg(self) -> ZChain {
        -&self
    }
}

impl fmt::Display for ZChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if i > 0 {
                write!(f, " ")?;
            }
            if !c.abs().is_one() {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}
