//! Finitely supported words `Z -> F̂`, the shift, and canonical orbit
//! representatives.
//!
//! A word stores only its non-trivial letters; the trivial irrep (index 0)
//! is implicit everywhere else. The representative of a shift orbit is the
//! translate whose support starts at position 0.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::GroupRepData;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WordJson", into = "WordJson")]
pub struct Word {
    entries: BTreeMap<i64, u32>,
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    entries: BTreeMap<String, u32>,
}

impl TryFrom<WordJson> for Word {
    type Error = String;

    fn try_from(json: WordJson) -> std::result::Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (k, v) in json.entries {
            let pos: i64 = k
                .trim()
                .parse()
                .map_err(|_| format!("bad word position `{k}`"))?;
            entries.insert(pos, v);
        }
        Ok(Word::from_entries(entries))
    }
}

impl From<Word> for WordJson {
    fn from(w: Word) -> Self {
        WordJson {
            entries: w
                .entries
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }
}

impl Word {
    /// The base point: every coordinate trivial.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a word from `(position, irrep)` pairs; trivial letters are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, u32)>) -> Self {
        Self {
            entries: entries.into_iter().filter(|&(_, v)| v != 0).collect(),
        }
    }

    /// The word with `letters[i]` at position `start + i`.
    pub fn from_dense(start: i64, letters: &[u32]) -> Self {
        Self::from_entries(
            letters
                .iter()
                .enumerate()
                .map(|(i, &v)| (start + i as i64, v)),
        )
    }

    pub fn single(pos: i64, irrep: u32) -> Self {
        Self::from_entries([(pos, irrep)])
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, pos: i64) -> u32 {
        self.entries.get(&pos).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn min_supp(&self) -> Option<i64> {
        self.entries.keys().next().copied()
    }

    pub fn max_supp(&self) -> Option<i64> {
        self.entries.keys().next_back().copied()
    }

    /// Length of the smallest interval containing the support.
    pub fn span(&self) -> usize {
        match (self.min_supp(), self.max_supp()) {
            (Some(a), Some(b)) => (b - a + 1) as usize,
            _ => 0,
        }
    }

    /// Letters from `min supp` to `max supp`, trivial ones included.
    pub fn dense(&self) -> Vec<u32> {
        match self.min_supp() {
            None => Vec::new(),
            Some(a) => (0..self.span() as i64).map(|i| self.get(a + i)).collect(),
        }
    }

    /// `shift(w, k)(i) = w(i - k)`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            entries: self.entries.iter().map(|(&p, &v)| (p + k, v)).collect(),
        }
    }

    /// Translates the support minimum to 0; `shift(rep, offset) == self`.
    pub fn canonicalize(&self) -> (CanonicalWord, i64) {
        let offset = self.min_supp().unwrap_or(0);
        (CanonicalWord(self.shift(-offset)), offset)
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self.min_supp(), None | Some(0))
    }

    pub fn check_letters(&self, group: &GroupRepData) -> Result<()> {
        self.entries
            .values()
            .try_for_each(|&v| group.check_irrep(v))
    }
}

impl Ord for Word {
    /// Span length first, then the support minimum, then the dense letters
    /// lexicographically. On canonical words this is length-lex order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.span()
            .cmp(&other.span())
            .then_with(|| self.min_supp().cmp(&other.min_supp()))
            .then_with(|| self.dense().cmp(&other.dense()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.min_supp() {
            None => write!(f, "[]"),
            Some(a) => {
                let letters: Vec<String> = self.dense().iter().map(u32::to_string).collect();
                if a == 0 {
                    write!(f, "[{}]", letters.join(" "))
                } else {
                    write!(f, "{a}:[{}]", letters.join(" "))
                }
            }
        }
    }
}

/// A word whose support is empty or starts at position 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Word", into = "Word")]
pub struct CanonicalWord(Word);

impl CanonicalWord {
    pub fn new(word: Word) -> Option<Self> {
        word.is_canonical().then_some(Self(word))
    }

    pub fn empty() -> Self {
        Self(Word::empty())
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl TryFrom<Word> for CanonicalWord {
    type Error = String;

    fn try_from(w: Word) -> std::result::Result<Self, String> {
        Self::new(w).ok_or_else(|| "word support does not start at 0".to_string())
    }
}

impl From<CanonicalWord> for Word {
    fn from(c: CanonicalWord) -> Self {
        c.0
    }
}

impl std::ops::Deref for CanonicalWord {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.0
    }
}

impl fmt::Display for CanonicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of canonical words with support in `[0, max_len)` over `r` letters:
/// `1 + (r-1) + sum_{L=2}^{max_len} (r-1)^2 r^(L-2)`.
pub fn canonical_count(r: u128, max_len: usize) -> u128 {
    if max_len == 0 {
        return 1;
    }
    let nontrivial = r - 1;
    let mut total = 1 + nontrivial;
    let mut interior = 1u128;
    for _ in 2..=max_len {
        total += nontrivial * nontrivial * interior;
        interior *= r;
    }
    total
}

/// Every canonical word with support inside `[0, max_len)`, in length-lex
/// order: the empty word, the single letters, then for each length `L` the
/// words with non-trivial letters at 0 and `L-1` and any interior.
pub fn enumerate_canonical(group: &GroupRepData, max_len: usize) -> Result<Vec<CanonicalWord>> {
    if max_len < 1 {
        return Err(Error::Argument("max_len must be at least 1".into()));
    }
    let r = group.irrep_count() as u32;
    let mut out = vec![CanonicalWord::empty()];
    out.extend((1..r).map(|g| CanonicalWord(Word::single(0, g))));
    for len in 2..=max_len {
        let interior = len - 2;
        let interior_count = (r as usize).pow(interior as u32);
        for g in 1..r {
            for code in 0..interior_count {
                let mut letters = Vec::with_capacity(len);
                letters.push(g);
                // big-endian base-r digits of `code`
                letters.extend(
                    (0..interior)
                        .rev()
                        .map(|i| (code / (r as usize).pow(i as u32)) as u32 % r),
                );
                letters.push(0);
                for h in 1..r {
                    letters[len - 1] = h;
                    out.push(CanonicalWord(Word::from_dense(0, &letters)));
                }
            }
        }
    }
    Ok(out)
}
