//! Locally constant integer functions on the full shift `F̂^Z` for abelian
//! `F`, identified with chains via `β: ε ↦ χ_ε`, and the periodic-orbit
//! (Livšic) test for coboundaries.
//!
//! Shift conventions: points shift like words, `shift(x, k)(i) = x(i - k)`,
//! and `β(α c)(x) = β(c)(shift(x, -1))`. Accordingly `g∘α` below means the
//! function `x ↦ g(shift(x, -1))`, which is `β(α(witness))`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::GroupRepData;
use crate::word::Word;
use crate::zchain::{Decomposition, ZChain};

/// Refuse orbit enumerations beyond this many patterns.
pub const MAX_PATTERNS: u128 = 5_000_000;

pub fn require_abelian(group: &GroupRepData) -> Result<()> {
    if group.is_abelian() {
        Ok(())
    } else {
        Err(Error::NonAbelian(group.name().to_string()))
    }
}

/// The `p`-periodic point `x(i) = pattern[i mod p]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeriodicPoint {
    pattern: Vec<u32>,
}

impl PeriodicPoint {
    pub fn new(pattern: Vec<u32>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::Argument("periodic pattern must be non-empty".into()));
        }
        Ok(Self { pattern })
    }

    pub fn pattern(&self) -> &[u32] {
        &self.pattern
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn at(&self, i: i64) -> u32 {
        self.pattern[i.rem_euclid(self.pattern.len() as i64) as usize]
    }

    pub fn shift(&self, k: i64) -> Self {
        let p = self.period() as i64;
        Self {
            pattern: (0..p).map(|i| self.at(i - k)).collect(),
        }
    }

    /// Lexicographically least rotation; equal for points in one orbit.
    pub fn least_rotation(&self) -> Self {
        (0..self.period() as i64)
            .map(|k| self.shift(k))
            .min()
            .expect("non-empty")
    }

    fn check_letters(&self, group: &GroupRepData) -> Result<()> {
        self.pattern.iter().try_for_each(|&g| group.check_irrep(g))
    }
}

impl fmt::Display for PeriodicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.pattern.iter().map(u32::to_string).collect();
        write!(f, "({})^∞", letters.join(" "))
    }
}

/// A point of the full shift with a finite description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point {
    Periodic(PeriodicPoint),
    /// Trivial outside the support of the word.
    EventuallyTrivial(Word),
}

impl Point {
    pub fn at(&self, i: i64) -> u32 {
        match self {
            Point::Periodic(x) => x.at(i),
            Point::EventuallyTrivial(w) => w.get(i),
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        match self {
            Point::Periodic(x) => Point::Periodic(x.shift(k)),
            Point::EventuallyTrivial(w) => Point::EventuallyTrivial(w.shift(k)),
        }
    }
}

impl From<PeriodicPoint> for Point {
    fn from(x: PeriodicPoint) -> Self {
        Point::Periodic(x)
    }
}

impl From<Word> for Point {
    fn from(w: Word) -> Self {
        Point::EventuallyTrivial(w)
    }
}

/// `χ_ε(x) = 1` iff `x` agrees with `ε` on `supp ε`.
pub fn chi(word: &Word, x: &Point) -> bool {
    word.entries().all(|(k, g)| x.at(k) == g)
}

fn eval(chain: &ZChain, x: &Point) -> BigInt {
    chain
        .terms()
        .filter(|(w, _)| chi(w, x))
        .map(|(_, k)| k.clone())
        .sum()
}

/// Value of `β(chain) = Σ a_ε χ_ε` at `x`.
pub fn beta_eval(group: &GroupRepData, chain: &ZChain, x: &Point) -> Result<BigInt> {
    require_abelian(group)?;
    Ok(eval(chain, x))
}

/// A clopen cylinder: coordinates pinned to given letters. Unlike in a
/// [`Word`], a constraint to the trivial letter 0 is meaningful here.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, u32>", into = "BTreeMap<String, u32>")]
pub struct CylinderSpec {
    constraints: BTreeMap<i64, u32>,
}

impl TryFrom<BTreeMap<String, u32>> for CylinderSpec {
    type Error = String;

    fn try_from(m: BTreeMap<String, u32>) -> std::result::Result<Self, String> {
        let constraints = m
            .into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<i64>()
                    .map(|p| (p, v))
                    .map_err(|_| format!("bad cylinder position `{k}`"))
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { constraints })
    }
}

impl From<CylinderSpec> for BTreeMap<String, u32> {
    fn from(c: CylinderSpec) -> Self {
        c.constraints
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    }
}

impl CylinderSpec {
    pub fn new(constraints: impl IntoIterator<Item = (i64, u32)>) -> Self {
        Self {
            constraints: constraints.into_iter().collect(),
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.constraints.iter().all(|(&k, &g)| x.at(k) == g)
    }

    pub fn constraints(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.constraints.iter().map(|(&k, &g)| (k, g))
    }
}

/// The chain whose `β`-image is the indicator of the cylinder.
///
/// Each constraint `x_k = 0` is rewritten as `1 - Σ_{g≠0} [x_k = g]`, and the
/// product is expanded over the trivially constrained positions.
pub fn cylinder_to_chain(group: &GroupRepData, spec: &CylinderSpec) -> Result<ZChain> {
    require_abelian(group)?;
    for (_, g) in spec.constraints() {
        group.check_irrep(g)?;
    }
    let r = group.irrep_count() as u32;
    let base: Vec<(i64, u32)> = spec.constraints().filter(|&(_, g)| g != 0).collect();
    let trivial: Vec<i64> = spec
        .constraints()
        .filter(|&(_, g)| g == 0)
        .map(|(k, _)| k)
        .collect();

    // choice 0 leaves the position free (sign +), choice g ≠ 0 pins it to g (sign -)
    let mut out = ZChain::zero();
    let mut choice = vec![0u32; trivial.len()];
    loop {
        let pinned = choice.iter().filter(|&&c| c != 0).count();
        let word = Word::from_entries(
            base.iter()
                .copied()
                .chain(trivial.iter().zip(&choice).map(|(&k, &c)| (k, c))),
        );
        out.add_term(word, BigInt::from(if pinned % 2 == 0 { 1 } else { -1 }));
        let mut i = 0;
        while i < choice.len() && choice[i] + 1 == r {
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
        choice[i] += 1;
    }
    Ok(out)
}

/// `f = (g - g∘α) + h` with `h` on the free basis `S` of the complement of
/// the coboundaries.
pub fn coboundary_decompose(group: &GroupRepData, f: &ZChain) -> Result<Decomposition> {
    require_abelian(group)?;
    Ok(f.decompose())
}

/// Coordinates `[lo, hi]` outside of which none of the chains look.
fn joint_window<'a>(chains: impl IntoIterator<Item = &'a ZChain>) -> Option<(i64, i64)> {
    let mut window: Option<(i64, i64)> = None;
    for c in chains {
        for w in c.words() {
            if let (Some(a), Some(b)) = (w.min_supp(), w.max_supp()) {
                window = Some(match window {
                    None => (a, b),
                    Some((lo, hi)) => (lo.min(a), hi.max(b)),
                });
            }
        }
    }
    window
}

/// All assignments of letters to `[lo, hi]`, as eventually trivial points.
pub fn window_points(r: usize, lo: i64, hi: i64) -> impl Iterator<Item = Point> {
    let len = (hi - lo + 1).max(0) as u32;
    let total = (r as u64).pow(len);
    (0..total).map(move |mut code| {
        let letters: Vec<u32> = (0..len)
            .map(|_| {
                let g = (code % r as u64) as u32;
                code /= r as u64;
                g
            })
            .collect();
        Point::EventuallyTrivial(Word::from_dense(lo, &letters))
    })
}

/// A chain flattened for evaluation on letter arrays covering `[lo, ..]`.
struct DenseFn {
    terms: Vec<(Vec<(usize, u32)>, BigInt)>,
}

impl DenseFn {
    /// Reads coordinate `k` of the point from `letters[k + shift - lo]`,
    /// i.e. evaluates at `shift(x, -shift)`.
    fn new(chain: &ZChain, lo: i64, shift: i64) -> Self {
        let terms = chain
            .terms()
            .map(|(w, k)| {
                (
                    w.entries()
                        .map(|(p, g)| ((p + shift - lo) as usize, g))
                        .collect(),
                    k.clone(),
                )
            })
            .collect();
        Self { terms }
    }

    fn eval(&self, letters: &[u32]) -> BigInt {
        let mut total = BigInt::zero();
        for (constraints, k) in &self.terms {
            if constraints.iter().all(|&(i, g)| letters[i] == g) {
                total += k;
            }
        }
        total
    }
}

/// Checks `f(x) = g(x) - g(shift(x, -1)) + h(x)` pointwise on every
/// assignment of the coordinates the three functions depend on.
pub fn verify_decomposition(group: &GroupRepData, f: &ZChain, d: &Decomposition) -> Result<bool> {
    require_abelian(group)?;
    let shifted_witness = d.witness.alpha();
    let Some((lo, hi)) = joint_window([f, &d.canonical, &d.witness, &shifted_witness]) else {
        return Ok(true);
    };
    let r = group.irrep_count() as u32;
    let f_dense = DenseFn::new(f, lo, 0);
    let g_dense = DenseFn::new(&d.witness, lo, 0);
    let g_shifted = DenseFn::new(&d.witness, lo, 1);
    let h_dense = DenseFn::new(&d.canonical, lo, 0);
    let len = (hi - lo + 1) as usize;
    let mut letters = vec![0u32; len];
    loop {
        let rhs = g_dense.eval(&letters) - g_shifted.eval(&letters) + h_dense.eval(&letters);
        if f_dense.eval(&letters) != rhs {
            return Ok(false);
        }
        let mut i = 0;
        while i < len && letters[i] + 1 == r {
            letters[i] = 0;
            i += 1;
        }
        if i == len {
            return Ok(true);
        }
        letters[i] += 1;
    }
}

/// `Σ_{k=0}^{p-1} f(shift^k x)` over one period.
pub fn periodic_orbit_sum(group: &GroupRepData, f: &ZChain, x: &PeriodicPoint) -> Result<BigInt> {
    require_abelian(group)?;
    x.check_letters(group)?;
    Ok((0..x.period() as i64)
        .map(|k| eval(f, &Point::Periodic(x.shift(k))))
        .sum())
}

/// One periodic point per shift orbit with period dividing some `p ≤ max_period`,
/// each given by its least rotation, ordered by length then lexicographically.
pub fn periodic_orbit_representatives(r: usize, max_period: usize) -> Result<Vec<PeriodicPoint>> {
    let total: u128 = (1..=max_period as u32)
        .map(|p| (r as u128).saturating_pow(p))
        .sum();
    if total > MAX_PATTERNS {
        return Err(Error::Argument(format!(
            "{total} patterns up to period {max_period} exceed the limit {MAX_PATTERNS}"
        )));
    }
    let mut out = Vec::new();
    for p in 1..=max_period as u32 {
        let count = (r as u64).pow(p);
        for code in 0..count {
            let mut c = code;
            let mut pattern = vec![0u32; p as usize];
            for slot in pattern.iter_mut().rev() {
                *slot = (c % r as u64) as u32;
                c /= r as u64;
            }
            let x = PeriodicPoint { pattern };
            if x.least_rotation() == x {
                out.push(x);
            }
        }
    }
    Ok(out)
}

/// `w + 1`, where `w = 1 + max supp` over the words of `f` (support minima
/// below 0 widen `w` accordingly). Periods up to this bound are the default
/// evidence for the converse direction.
pub fn sufficiency_bound(f: &ZChain) -> usize {
    let w = f
        .words()
        .filter_map(|word| Some((word.min_supp()?, word.max_supp()?)))
        .map(|(a, b)| (b - a.min(0) + 1) as usize)
        .max()
        .unwrap_or(0);
    w + 1
}

/// A period bound that always decides the converse: `h` depends on the
/// `w` coordinates `[0, w)`, so it is a weight on the edges of the de Bruijn
/// graph on `r^(w-1)` vertices, and simple cycles there have length at
/// most `r^(w-1)`.
pub fn provable_period_bound(r: usize, h: &ZChain) -> u128 {
    let w = h.words().map(Word::span).max().unwrap_or(0);
    (r as u128)
        .saturating_pow(w.saturating_sub(1) as u32)
        .max(1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub orbit: PeriodicPoint,
    #[serde(with = "crate::bigint_json")]
    pub sum: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LivsicVerdict {
    pub is_coboundary_exact: bool,
    pub periodic_sums_vanish_up_to_p: bool,
    pub violating_orbit: Option<Violation>,
    pub max_period: usize,
    pub sufficiency_bound: usize,
    #[serde(with = "crate::bigint_json")]
    pub provable_bound: BigInt,
    /// The two tests disagree although `max_period` reaches the sufficiency bound.
    pub bound_violation: bool,
}

impl LivsicVerdict {
    /// Coboundaries always have vanishing orbit sums, and at or above the
    /// sufficiency bound the two tests agree.
    pub fn consistent(&self) -> bool {
        let forward = !self.is_coboundary_exact || self.periodic_sums_vanish_up_to_p;
        forward && !self.bound_violation
    }
}

/// Compares the exact coboundary test (`h = 0`) with orbit sums over all
/// periodic orbits of period at most `max_period`.
pub fn livsic_check(group: &GroupRepData, f: &ZChain, max_period: usize) -> Result<LivsicVerdict> {
    require_abelian(group)?;
    if max_period < 1 {
        return Err(Error::Argument("max period must be at least 1".into()));
    }
    for w in f.words() {
        w.check_letters(group)?;
    }
    let h = f.decompose().canonical;
    let is_coboundary_exact = h.is_zero();
    let mut violating_orbit = None;
    for x in periodic_orbit_representatives(group.irrep_count(), max_period)? {
        let sum: BigInt = (0..x.period() as i64)
            .map(|k| eval(f, &Point::Periodic(x.shift(k))))
            .sum();
        if !sum.is_zero() {
            violating_orbit = Some(Violation { orbit: x, sum });
            break;
        }
    }
    let vanish = violating_orbit.is_none();
    let bound = sufficiency_bound(f);
    Ok(LivsicVerdict {
        is_coboundary_exact,
        periodic_sums_vanish_up_to_p: vanish,
        violating_orbit,
        max_period,
        sufficiency_bound: bound,
        provable_bound: provable_period_bound(group.irrep_count(), &h).into(),
        bound_violation: max_period >= bound && is_coboundary_exact != vanish,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> GroupRepData {
        GroupRepData::builtin(name).unwrap()
    }

    fn pp(pattern: &[u32]) -> PeriodicPoint {
        PeriodicPoint::new(pattern.to_vec()).unwrap()
    }

    fn int(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn beta_examples() {
        let c2 = group("C2");
        let one = ZChain::constant(1);
        assert_eq!(
            beta_eval(&c2, &one, &pp(&[1, 0, 1]).into()).unwrap(),
            int(1)
        );
        assert_eq!(
            beta_eval(&c2, &one, &Word::single(4, 1).into()).unwrap(),
            int(1)
        );
        assert_eq!(
            beta_eval(&c2, &ZChain::word(Word::single(0, 1)), &pp(&[1]).into()).unwrap(),
            int(1)
        );
        let gg = ZChain::word(Word::from_entries([(0, 1), (1, 1)]));
        assert_eq!(beta_eval(&c2, &gg, &pp(&[1, 0]).into()).unwrap(), int(0));
        assert!(matches!(
            beta_eval(&group("S3"), &one, &pp(&[0]).into()),
            Err(Error::NonAbelian(_))
        ));
    }

    #[test]
    fn beta_is_shift_equivariant() {
        let c3 = group("C3");
        let c = &ZChain::term(Word::from_entries([(0, 1), (2, 2)]), 3)
            - &ZChain::word(Word::single(-1, 2));
        for x in [
            Point::from(pp(&[1, 0, 2, 2])),
            Point::from(Word::from_entries([(-1, 2), (1, 1), (3, 2)])),
        ] {
            assert_eq!(
                beta_eval(&c3, &c.alpha(), &x).unwrap(),
                beta_eval(&c3, &c, &x.shift(-1)).unwrap()
            );
        }
    }

    #[test]
    fn periodic_points() {
        let x = pp(&[1, 0, 2]);
        assert_eq!(x.at(-1), 2);
        assert_eq!(x.at(4), 0);
        assert_eq!(x.shift(1).pattern(), &[2, 1, 0]);
        assert_eq!(x.shift(3), x);
        assert_eq!(x.least_rotation().pattern(), &[0, 2, 1]);
        assert!(PeriodicPoint::new(vec![]).is_err());
    }

    #[test]
    fn cylinder_examples() {
        let c2 = group("C2");
        assert_eq!(
            cylinder_to_chain(&c2, &CylinderSpec::new([(0, 1)])).unwrap(),
            ZChain::word(Word::single(0, 1))
        );
        let expected = &ZChain::constant(1) - &ZChain::word(Word::single(0, 1));
        assert_eq!(
            cylinder_to_chain(&c2, &CylinderSpec::new([(0, 0)])).unwrap(),
            expected
        );

        let c3 = group("C3");
        let spec = CylinderSpec::new([(0, 0), (1, 1)]);
        let chain = cylinder_to_chain(&c3, &spec).unwrap();
        let expected = &(&ZChain::word(Word::single(1, 1))
            - &ZChain::word(Word::from_entries([(0, 1), (1, 1)])))
            - &ZChain::word(Word::from_entries([(0, 2), (1, 1)]));
        assert_eq!(chain, expected);
        for x in window_points(3, 0, 1) {
            assert_eq!(
                beta_eval(&c3, &chain, &x).unwrap(),
                int(spec.contains(&x) as i64)
            );
        }
        assert!(cylinder_to_chain(&group("Q8"), &spec).is_err());
    }

    #[test]
    fn cylinder_indicator_exhaustive() {
        let c3 = group("C3");
        let spec = CylinderSpec::new([(-1, 0), (0, 2), (2, 0)]);
        let chain = cylinder_to_chain(&c3, &spec).unwrap();
        assert!(chain.terms().all(|(_, k)| *k == int(1) || *k == int(-1)));
        for x in window_points(3, -1, 2) {
            assert_eq!(eval(&chain, &x), int(spec.contains(&x) as i64));
        }
    }

    #[test]
    fn decompose_examples() {
        let c2 = group("C2");
        let c = &ZChain::word(Word::from_entries([(0, 1), (1, 1)]))
            + &ZChain::term(Word::single(3, 1), -2);
        let d = coboundary_decompose(&c2, &c.coboundary()).unwrap();
        assert!(d.canonical.is_zero());

        let d = coboundary_decompose(&c2, &ZChain::constant(1)).unwrap();
        assert_eq!(
            (d.canonical, d.witness),
            (ZChain::constant(1), ZChain::zero())
        );

        let f = ZChain::word(Word::single(2, 1));
        let d = coboundary_decompose(&c2, &f).unwrap();
        assert_eq!(d.canonical, ZChain::word(Word::single(0, 1)));
        assert!(!d.witness.is_zero());
        assert!(verify_decomposition(&c2, &f, &d).unwrap());

        let wrong = Decomposition {
            witness: d.witness.clone(),
            canonical: ZChain::zero(),
        };
        assert!(!verify_decomposition(&c2, &f, &wrong).unwrap());
    }

    #[test]
    fn orbit_sums() {
        let c2 = group("C2");
        let c = ZChain::word(Word::from_entries([(0, 1), (2, 1)]));
        for x in [pp(&[1]), pp(&[1, 0, 1]), pp(&[0, 1, 1, 0, 1])] {
            assert_eq!(
                periodic_orbit_sum(&c2, &c.coboundary(), &x).unwrap(),
                int(0)
            );
            assert_eq!(
                periodic_orbit_sum(&c2, &ZChain::constant(1), &x).unwrap(),
                int(x.period() as i64)
            );
        }
        assert_eq!(
            periodic_orbit_sum(&c2, &ZChain::word(Word::single(0, 1)), &pp(&[1, 0])).unwrap(),
            int(1)
        );
    }

    #[test]
    fn orbit_representatives() {
        // necklaces over 2 letters: 2, 3, 4, 6 of lengths 1..4
        let reps = periodic_orbit_representatives(2, 4).unwrap();
        assert_eq!(reps.len(), 2 + 3 + 4 + 6);
        assert!(reps.iter().all(|x| x.least_rotation() == *x));
        assert!(periodic_orbit_representatives(3, 40).is_err());
    }

    #[test]
    fn livsic_examples() {
        let c2 = group("C2");
        let f = ZChain::word(Word::from_entries([(0, 1), (2, 1)])).coboundary();
        let v = livsic_check(&c2, &f, 5).unwrap();
        assert!(
            v.is_coboundary_exact && v.periodic_sums_vanish_up_to_p && v.violating_orbit.is_none()
        );

        let v = livsic_check(&c2, &ZChain::constant(1), 1).unwrap();
        assert!(!v.is_coboundary_exact && !v.periodic_sums_vanish_up_to_p);
        assert_eq!(
            v.violating_orbit,
            Some(Violation {
                orbit: pp(&[0]),
                sum: int(1)
            })
        );

        let v = livsic_check(&c2, &ZChain::word(Word::single(0, 1)), 1).unwrap();
        assert!(!v.is_coboundary_exact && !v.periodic_sums_vanish_up_to_p);
        assert_eq!(
            v.violating_orbit,
            Some(Violation {
                orbit: pp(&[1]),
                sum: int(1)
            })
        );
        assert!(v.consistent());

        assert!(livsic_check(&group("S3"), &f, 3).is_err());
        assert!(livsic_check(&c2, &f, 0).is_err());
    }

    #[test]
    fn bounds() {
        assert_eq!(sufficiency_bound(&ZChain::zero()), 1);
        assert_eq!(sufficiency_bound(&ZChain::constant(1)), 1);
        assert_eq!(
            sufficiency_bound(&ZChain::word(Word::from_entries([(0, 1), (2, 1)]))),
            4
        );
        assert_eq!(sufficiency_bound(&ZChain::word(Word::single(-1, 1))), 2);
        let h = ZChain::word(Word::from_entries([(0, 1), (3, 1)]));
        assert_eq!(provable_period_bound(2, &h), 8);
        assert_eq!(provable_period_bound(3, &ZChain::constant(1)), 1);
    }

    #[test]
    fn cylinder_json() {
        let spec: CylinderSpec = serde_json::from_str(r#"{"0":0,"1":1}"#).unwrap();
        assert_eq!(spec, CylinderSpec::new([(0, 0), (1, 1)]));
        assert!(serde_json::from_str::<CylinderSpec>(r#"{"x":0}"#).is_err());
    }
}
