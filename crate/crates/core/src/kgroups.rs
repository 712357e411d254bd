//! Both sides of the assembly map for `L = F wr Z` at finite word length:
//! `K_0` bases indexed by shift orbits, `K_1` generators, the
//! Pimsner–Voiculescu kernel/cokernel bookkeeping, and traces.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grouprep::GroupRepData;
use crate::sampling;
use crate::word::{enumerate_canonical, CanonicalWord, Word};
use crate::zchain::ZChain;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Topological,
    Analytic,
}

/// `K_1` of either side: infinite cyclic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K1Report {
    #[serde(rename = "K1")]
    pub group: String,
    pub generator: String,
    pub boundary: String,
}

impl K1Report {
    pub fn analytic() -> Self {
        Self {
            group: "Z".into(),
            generator: "[u]".into(),
            boundary: "∂1[u] = -[1]".into(),
        }
    }

    pub fn topological() -> Self {
        Self {
            group: "Z".into(),
            generator: "i_*(t)".into(),
            boundary: "∂1[u] = -[1]".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroupReport {
    pub side: Side,
    pub k0_basis: Vec<CanonicalWord>,
    pub k1: K1Report,
}

/// The minimal projection chosen in the summand of `CF` for one irrep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinimalProjection(pub u32);

/// Class of the tensor product `⊗_{k ∈ supp} e_{π_k}` in `K_0(C*B)`;
/// positions not listed carry the trivial projection `p_F`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectionClass {
    pub factors: BTreeMap<i64, MinimalProjection>,
}

impl ProjectionClass {
    pub fn shift(&self, k: i64) -> Self {
        Self {
            factors: self.factors.iter().map(|(&p, &e)| (p + k, e)).collect(),
        }
    }

    pub fn to_word(&self) -> Word {
        Word::from_entries(self.factors.iter().map(|(&p, e)| (p, e.0)))
    }
}

/// The assembly map on basis elements, factor by factor over the support:
/// each irrep goes to the class of its minimal idempotent.
pub fn assemble(word: &Word) -> ProjectionClass {
    ProjectionClass {
        factors: word
            .entries()
            .map(|(p, g)| (p, MinimalProjection(g)))
            .collect(),
    }
}

/// Topological and analytic reports plus the index bijection induced by
/// [`assemble`], as `(topological index, analytic index)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroups {
    pub topological: KGroupReport,
    pub analytic: KGroupReport,
    pub bijection: Vec<(usize, usize)>,
}

pub fn k_groups(group: &GroupRepData, max_len: usize) -> Result<KGroups> {
    let topological_basis = enumerate_canonical(group, max_len)?;
    // Analytic side: orbits of the shift on finitely supported maps into Min F,
    // with Min F indexed like F̂.
    let analytic_classes: Vec<ProjectionClass> = enumerate_canonical(group, max_len)?
        .iter()
        .map(|w| assemble(w))
        .collect();
    let position: BTreeMap<&ProjectionClass, usize> = analytic_classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let bijection = topological_basis
        .iter()
        .enumerate()
        .map(|(i, w)| (i, position[&assemble(w)]))
        .collect();
    let analytic_basis = analytic_classes
        .iter()
        .map(|c| CanonicalWord::new(c.to_word()).expect("canonical class"))
        .collect();
    Ok(KGroups {
        topological: KGroupReport {
            side: Side::Topological,
            k0_basis: topological_basis,
            k1: K1Report::topological(),
        },
        analytic: KGroupReport {
            side: Side::Analytic,
            k0_basis: analytic_basis,
            k1: K1Report::analytic(),
        },
        bijection,
    })
}

/// An exact rational in lowest terms, serialized as `{"num": .., "den": ..}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "FractionJson", into = "FractionJson")]
pub struct TraceValue(BigRational);

#[derive(Serialize, Deserialize)]
struct FractionJson {
    #[serde(with = "crate::bigint_json")]
    num: BigInt,
    #[serde(with = "crate::bigint_json")]
    den: BigInt,
}

impl TryFrom<FractionJson> for TraceValue {
    type Error = String;

    fn try_from(f: FractionJson) -> std::result::Result<Self, String> {
        if !f.den.is_positive() {
            return Err("denominator must be positive".into());
        }
        Ok(Self(BigRational::new(f.num, f.den)))
    }
}

impl From<TraceValue> for FractionJson {
    fn from(t: TraceValue) -> Self {
        let (num, den) = t.0.into_raw();
        FractionJson { num, den }
    }
}

impl TraceValue {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for TraceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Trace of the minimal projection indexed by `w`:
/// `Π_{k ∈ supp w} dim w(k) / |F|^{|supp w|}`. The empty word is `[1]`.
pub fn trace_of_word(group: &GroupRepData, w: &Word) -> Result<TraceValue> {
    w.check_letters(group)?;
    let num: BigInt = w
        .entries()
        .map(|(_, g)| BigInt::from(group.dim(g)))
        .product();
    let den = BigInt::from(group.order()).pow(w.support_len() as u32);
    Ok(TraceValue::new(num, den))
}

pub fn trace_of_chain(group: &GroupRepData, chain: &ZChain) -> Result<TraceValue> {
    let mut total = BigRational::zero();
    for (w, k) in chain.terms() {
        total += trace_of_word(group, w)?.0 * BigRational::from_integer(k.clone());
    }
    Ok(TraceValue(total))
}

/// Positive generator of the subgroup of `Q` spanned by the traces of all
/// words supported in `[0, n)`.
pub fn trace_image_level(group: &GroupRepData, n: usize) -> TraceValue {
    let r = group.irrep_count() as u32;
    let den = BigInt::from(group.order()).pow(n as u32);
    let mut gcd = BigInt::zero();
    let mut letters = vec![0u32; n];
    loop {
        // trace · |F|^n is an integer for every word inside [0, n)
        let support = letters.iter().filter(|&&g| g != 0).count();
        let dims: BigInt = letters
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| BigInt::from(group.dim(g)))
            .product();
        let scaled = dims * BigInt::from(group.order()).pow((n - support) as u32);
        gcd = gcd.gcd(&scaled);
        // next letter vector, little-endian odometer
        let mut i = 0;
        while i < n && letters[i] + 1 == r {
            letters[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        letters[i] += 1;
    }
    TraceValue::new(gcd, den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvCounterexample {
    pub sample: usize,
    pub property: String,
    pub chain: ZChain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PvReport {
    pub group: String,
    pub samples: usize,
    pub window: i64,
    pub seed: u64,
    pub invariant_samples: usize,
    pub counterexamples: Vec<PvCounterexample>,
}

impl PvReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn same_orbit(x: &Word, y: &Word, reach: i64) -> bool {
    (-reach..=reach).any(|k| &x.shift(k) == y)
}

/// Co-invariant class computed without canonicalization: orbits are found by
/// searching shifts, and each orbit's coefficient sum is attached to the
/// orbit member whose support starts at 0.
pub fn coinvariant_oracle(chain: &ZChain, reach: i64) -> ZChain {
    let mut orbits: Vec<(Word, BigInt)> = Vec::new();
    for (x, k) in chain.terms() {
        match orbits.iter_mut().find(|(y, _)| same_orbit(x, y, reach)) {
            Some((_, sum)) => *sum += k,
            None => orbits.push((x.clone(), k.clone())),
        }
    }
    orbits
        .into_iter()
        .map(|(x, sum)| {
            let rep = (-reach..=reach)
                .map(|k| x.shift(k))
                .find(|y| y.is_empty() || y.min_supp() == Some(0));
            (rep.expect("reach covers the support"), sum)
        })
        .collect()
}

/// Seeded check of the kernel and cokernel of `Id - α` on random chains
/// supported in `[-window, window]`.
pub fn pv_check(group: &GroupRepData, samples: usize, window: i64, seed: u64) -> PvReport {
    let r = group.irrep_count();
    let mut rng = sampling::rng(seed);
    let mut counterexamples = Vec::new();
    let mut invariant_samples = 0;
    let reach = 4 * window + 4;
    let mut fail = |sample: usize, property: &str, chain: &ZChain| {
        counterexamples.push(PvCounterexample {
            sample,
            property: property.into(),
            chain: chain.clone(),
        });
    };
    for i in 0..samples {
        let c = if rand::Rng::gen_ratio(&mut rng, 1, 4) {
            ZChain::constant(rand::Rng::gen_range(&mut rng, -9i64..=9))
        } else {
            sampling::random_chain(&mut rng, r, window, 6)
        };
        let m = sampling::random_chain(&mut rng, r, window, 6);

        // (a) invariants are exactly the multiples of [empty]
        let fixed = c.alpha() == c;
        let constant = (&c - &ZChain::constant(c.coeff(&Word::empty()))).is_zero();
        if fixed {
            invariant_samples += 1;
        }
        if c.is_invariant() != fixed || fixed != constant {
            fail(i, "invariant iff multiple of [empty]", &c);
        }

        // (b) the co-invariant class kills Im(Id - α) and matches orbit sums
        let cob = m.coboundary();
        if !cob.coinvariant_class().is_zero() {
            fail(i, "coboundary has zero co-invariant class", &m);
        }
        let shifted = &c + &cob;
        if shifted.coinvariant_class() != c.coinvariant_class() {
            fail(i, "co-invariant class constant on cosets of Im(Id - α)", &c);
        }
        let class = c.coinvariant_class();
        if class != coinvariant_oracle(&c, reach) {
            fail(i, "co-invariant class equals orbit sums", &c);
        }

        // (c) identity on canonical words, hence idempotent
        if class.coinvariant_class() != class {
            fail(i, "co-invariant class is identity on canonical chains", &c);
        }

        // decomposition identity, term by term
        let d = c.decompose();
        if &d.witness.coboundary() + &d.canonical != c
            || d.canonical != class
            || !d.witness.coeff(&Word::empty()).is_zero()
        {
            fail(i, "chain = (Id - α)(witness) + canonical", &c);
        }
        // vanishing class means the witness exhibits c inside Im(Id - α)
        if class.is_zero() && d.witness.coboundary() != c {
            fail(i, "zero class implies coboundary", &c);
        }
    }
    PvReport {
        group: group.name().to_string(),
        samples,
        window,
        seed,
        invariant_samples,
        counterexamples,
    }
}
