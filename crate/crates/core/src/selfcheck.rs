//! The end-to-end acceptance checks, runnable from tests and from the CLI.
//!
//! Each check pairs the library routine with an independent brute-force
//! computation. Reports carry no timings, so two runs with the same seed
//! and a sufficient budget serialize identically.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::colimit::{LevelMaps, DEFAULT_COLUMN_BUDGET};
use crate::fullshift::{self, PeriodicPoint, Point};
use crate::grouprep::{csalgebras_isomorphic_abelian_case, GroupRepData, IsoDecision};
use crate::kgroups::{self, K1Report, TraceValue};
use crate::linalg::IntMatrix;
use crate::sampling;
use crate::word::{canonical_count, enumerate_canonical, Word};
use crate::zchain::ZChain;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

/// A criterion: number, name, time limit, and the check itself.
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
    run: fn(u64) -> std::result::Result<String, String>,
}

impl Criterion {
    pub fn run(&self, seed: u64) -> (CriterionOutcome, Duration) {
        let start = Instant::now();
        let result = (self.run)(seed);
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) => (Status::Pass, d),
            Err(d) => (Status::Fail, d),
        };
        (
            CriterionOutcome {
                id: self.id,
                name: self.name.to_string(),
                status,
                detail,
            },
            elapsed,
        )
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            name: "orbit representatives",
            limit: secs(5),
            run: orbit_representatives,
        },
        Criterion {
            id: 2,
            name: "direct-sum claim",
            limit: secs(30),
            run: direct_sum_claim,
        },
        Criterion {
            id: 3,
            name: "P-V kernel and cokernel",
            limit: secs(10),
            run: pv_kernel_cokernel,
        },
        Criterion {
            id: 4,
            name: "trace image",
            limit: secs(5),
            run: trace_image,
        },
        Criterion {
            id: 5,
            name: "assembly correspondence",
            limit: secs(1),
            run: assembly_correspondence,
        },
        Criterion {
            id: 6,
            name: "beta isomorphism and basis freeness",
            limit: secs(10),
            run: beta_freeness,
        },
        Criterion {
            id: 7,
            name: "coboundary decomposition identity",
            limit: secs(10),
            run: coboundary_identity,
        },
        Criterion {
            id: 8,
            name: "Livsic biconditional",
            limit: secs(20),
            run: livsic_biconditional,
        },
        Criterion {
            id: 9,
            name: "classification predicate",
            limit: secs(1),
            run: classification,
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfCheckReport {
    pub seed: u64,
    pub outcomes: Vec<CriterionOutcome>,
}

impl SelfCheckReport {
    pub fn failed(&self) -> bool {
        self.outcomes.iter().any(|o| o.status == Status::Fail)
    }

    pub fn complete(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Skipped)
    }
}

/// Runs every criterion in order; once `budget` is spent the remaining ones
/// are reported as skipped.
pub fn run_all(seed: u64, budget: Duration) -> SelfCheckReport {
    let start = Instant::now();
    let outcomes = criteria()
        .iter()
        .map(|c| {
            if start.elapsed() >= budget {
                CriterionOutcome {
                    id: c.id,
                    name: c.name.to_string(),
                    status: Status::Skipped,
                    detail: "budget exhausted".into(),
                }
            } else {
                c.run(seed).0
            }
        })
        .collect();
    SelfCheckReport { seed, outcomes }
}

fn group(name: &str) -> GroupRepData {
    GroupRepData::builtin(name).expect("built-in group")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Shift-orbit ids for all letter vectors on a window of `len` coordinates,
/// found by breadth-first search over single steps that stay in the window.
fn brute_force_orbits(r: u32, len: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let total = (r as usize).pow(len as u32);
    let decode = |mut code: usize| -> Vec<u32> {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (code % r as usize) as u32;
            code /= r as usize;
        }
        v
    };
    let all: Vec<Vec<u32>> = (0..total).map(decode).collect();
    let index: HashMap<&[u32], usize> = all
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_slice(), i))
        .collect();
    let mut orbit = vec![usize::MAX; total];
    let mut next_id = 0;
    for start in 0..total {
        if orbit[start] != usize::MAX {
            continue;
        }
        orbit[start] = next_id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let v = &all[i];
            let mut neighbours = Vec::new();
            if v[len - 1] == 0 {
                neighbours.push([&[0], &v[..len - 1]].concat());
            }
            if v[0] == 0 {
                neighbours.push([&v[1..], &[0]].concat());
            }
            for n in neighbours {
                let j = index[n.as_slice()];
                if orbit[j] == usize::MAX {
                    orbit[j] = next_id;
                    queue.push_back(j);
                }
            }
        }
        next_id += 1;
    }
    (all, orbit)
}

fn orbit_representatives(_seed: u64) -> std::result::Result<String, String> {
    let mut detail = Vec::new();
    for name in ["C2", "C3"] {
        let g = group(name);
        let r = g.irrep_count() as u32;
        let (words, orbit) = brute_force_orbits(r, 9);
        // canonicalize must induce exactly the brute-force partition
        let mut rep_of_orbit: BTreeMap<usize, Word> = BTreeMap::new();
        let mut orbit_of_rep: BTreeMap<Word, usize> = BTreeMap::new();
        for (letters, &id) in words.iter().zip(&orbit) {
            let (rep, _) = Word::from_dense(-4, letters).canonicalize();
            let rep = rep.into_word();
            let a = rep_of_orbit.entry(id).or_insert_with(|| rep.clone());
            ensure(*a == rep, || {
                format!("{name}: orbit {id} has two representatives {a} and {rep}")
            })?;
            let b = orbit_of_rep.entry(rep.clone()).or_insert(id);
            ensure(*b == id, || {
                format!("{name}: representative {rep} shared by orbits {b} and {id}")
            })?;
        }
        // orbit counts by span against the closed form and the enumeration
        let mut spans: BTreeMap<usize, u128> = BTreeMap::new();
        for rep in rep_of_orbit.values() {
            *spans.entry(rep.span()).or_default() += 1;
        }
        for max_len in 1..=6 {
            let brute: u128 = spans.range(..=max_len).map(|(_, c)| c).sum();
            let formula = canonical_count(r as u128, max_len);
            let listed = enumerate_canonical(&g, max_len)
                .map_err(|e| e.to_string())?
                .len() as u128;
            ensure(brute == formula && listed == formula, || {
                format!("{name} max_len {max_len}: brute {brute}, formula {formula}, enumerated {listed}")
            })?;
        }
        detail.push(format!(
            "{name}: {} words, {} orbits",
            words.len(),
            rep_of_orbit.len()
        ));
    }
    Ok(detail.join("; "))
}

fn direct_sum_claim(_seed: u64) -> std::result::Result<String, String> {
    let cases = [
        ("C2", 2),
        ("C2", 3),
        ("C2", 4),
        ("C3", 2),
        ("C3", 3),
        ("S3", 2),
        ("S3", 3),
    ];
    let mut detail = Vec::new();
    for (name, n) in cases {
        let maps = LevelMaps::new(group(name), n).map_err(|e| e.to_string())?;
        let cert = maps
            .claim_check(DEFAULT_COLUMN_BUDGET)
            .map_err(|e| format!("{name} N={n}: {e}"))?;
        ensure(cert.det.abs().is_one(), || {
            format!("{name} N={n}: det {}", cert.det)
        })?;
        detail.push(format!(
            "{name}/{n}: {}x{} det {}",
            cert.size, cert.size, cert.det
        ));
    }
    Ok(detail.join(", "))
}

fn pv_kernel_cokernel(seed: u64) -> std::result::Result<String, String> {
    let mut detail = Vec::new();
    for name in ["C2", "S3"] {
        let report = kgroups::pv_check(&group(name), 1000, 4, seed);
        ensure(report.passed(), || {
            format!(
                "{name}: {} counterexamples, first {:?}",
                report.counterexamples.len(),
                report.counterexamples[0]
            )
        })?;
        ensure(report.invariant_samples > 0, || {
            format!("{name}: no invariant samples drawn")
        })?;
        detail.push(format!(
            "{name}: 1000 samples, {} invariant",
            report.invariant_samples
        ));
    }
    Ok(detail.join("; "))
}

fn trace_image(seed: u64) -> std::result::Result<String, String> {
    let mut rng = sampling::rng(seed);
    for name in ["C2", "C3", "S3", "Q8"] {
        let g = group(name);
        for n in 0..=4u32 {
            let got = kgroups::trace_image_level(&g, n as usize);
            let expected = TraceValue::new(1, BigInt::from(g.order()).pow(n));
            ensure(got == expected, || {
                format!("{name} level {n}: {got}, expected {expected}")
            })?;
        }
        for _ in 0..500 {
            let m = sampling::random_chain(&mut rng, g.irrep_count(), 4, 6);
            let t = kgroups::trace_of_chain(&g, &m.coboundary()).map_err(|e| e.to_string())?;
            ensure(t == TraceValue::zero(), || {
                format!("{name}: trace {t} on the coboundary of {m}")
            })?;
        }
    }
    Ok("levels 0..=4 give 1/|F|^n; 500 coboundaries per group have trace 0".into())
}

fn assembly_correspondence(_seed: u64) -> std::result::Result<String, String> {
    for name in ["C2", "S3"] {
        let g = group(name);
        for max_len in 1..=5 {
            let k = kgroups::k_groups(&g, max_len).map_err(|e| e.to_string())?;
            ensure(k.topological.k0_basis == k.analytic.k0_basis, || {
                format!("{name} {max_len}: bases differ")
            })?;
            ensure(
                k.bijection
                    .iter()
                    .enumerate()
                    .all(|(i, &(a, b))| a == i && b == i),
                || format!("{name} {max_len}: bijection is not the identity"),
            )?;
            for report in [&k.topological.k1, &k.analytic.k1] {
                ensure(
                    report.group == "Z" && report.boundary == K1Report::analytic().boundary,
                    || format!("{name}: bad K1 report {report:?}"),
                )?;
            }
            ensure(k.analytic.k1.generator == "[u]", || {
                "analytic K1 generator must be [u]".into()
            })?;
        }
    }
    Ok("C2, S3 with max_len 1..=5".into())
}

fn random_point<R: Rng>(rng: &mut R, r: usize) -> Point {
    if rng.gen_bool(0.5) {
        let p = rng.gen_range(1..=6);
        Point::Periodic(
            PeriodicPoint::new((0..p).map(|_| rng.gen_range(0..r as u32)).collect())
                .expect("non-empty"),
        )
    } else {
        let letters: Vec<u32> = (0..9).map(|_| rng.gen_range(0..r as u32)).collect();
        Point::EventuallyTrivial(Word::from_dense(-4, &letters))
    }
}

fn beta_freeness(seed: u64) -> std::result::Result<String, String> {
    let mut detail = Vec::new();
    for name in ["C2", "C3"] {
        let g = group(name);
        let r = g.irrep_count();
        let basis = enumerate_canonical(&g, 4).map_err(|e| e.to_string())?;
        let points: Vec<Point> = fullshift::window_points(r, 0, 4).collect();
        let rows: Vec<Vec<i64>> = points
            .iter()
            .map(|x| basis.iter().map(|s| fullshift::chi(s, x) as i64).collect())
            .collect();
        let rank = IntMatrix::from_rows(&rows).rank();
        ensure(rank == basis.len(), || {
            format!("{name}: rank {rank} < {} basis functions", basis.len())
        })?;
        detail.push(format!(
            "{name}: {}x{} rank {rank}",
            rows.len(),
            basis.len()
        ));
    }
    let mut rng = sampling::rng(seed);
    for i in 0..500 {
        let g = group(if i % 2 == 0 { "C2" } else { "C3" });
        let r = g.irrep_count();
        let c = sampling::random_chain(&mut rng, r, 3, 6);
        let d = sampling::random_chain(&mut rng, r, 3, 6);
        let x = random_point(&mut rng, r);
        let eval =
            |c: &ZChain, x: &Point| fullshift::beta_eval(&g, c, x).map_err(|e| e.to_string());
        ensure(eval(&c.alpha(), &x)? == eval(&c, &x.shift(-1))?, || {
            format!("sample {i}: shift-equivariance fails for {c}")
        })?;
        ensure(
            eval(&(&c + &d), &x)? == eval(&c, &x)? + eval(&d, &x)?,
            || format!("sample {i}: additivity fails"),
        )?;
    }
    detail.push("500 equivariance samples".into());
    Ok(detail.join("; "))
}

fn coboundary_identity(seed: u64) -> std::result::Result<String, String> {
    let mut rng = sampling::rng(seed);
    for i in 0..500 {
        let g = group(if i % 2 == 0 { "C2" } else { "C3" });
        let f = sampling::random_chain_between(&mut rng, g.irrep_count(), -2, 1, 5);
        let d = fullshift::coboundary_decompose(&g, &f).map_err(|e| e.to_string())?;
        ensure(d.canonical.is_canonical(), || {
            format!("sample {i}: non-canonical h for {f}")
        })?;
        let ok = fullshift::verify_decomposition(&g, &f, &d).map_err(|e| e.to_string())?;
        ensure(ok, || {
            format!("sample {i}: f - (g - g∘α) - h is not zero for f = {f}")
        })?;
    }
    Ok("500 samples, support width 4".into())
}

fn livsic_biconditional(seed: u64) -> std::result::Result<String, String> {
    let mut rng = sampling::rng(seed);
    let mut coboundaries = 0;
    for i in 0..500 {
        let g = group(if i % 2 == 0 { "C2" } else { "C3" });
        let r = g.irrep_count();
        // mix exact coboundaries, perturbed ones, and arbitrary functions on [0, 3)
        let f = match rng.gen_range(0..3) {
            0 => sampling::random_chain_between(&mut rng, r, 0, 1, 4).coboundary(),
            1 => {
                let m = sampling::random_chain_between(&mut rng, r, 0, 1, 4);
                let bump = sampling::random_chain_between(&mut rng, r, 0, 2, 1);
                &m.coboundary() + &bump
            }
            _ => sampling::random_chain_between(&mut rng, r, 0, 2, 5),
        };
        let bound = fullshift::sufficiency_bound(&f);
        let v = fullshift::livsic_check(&g, &f, bound).map_err(|e| e.to_string())?;
        if v.is_coboundary_exact {
            coboundaries += 1;
            ensure(v.periodic_sums_vanish_up_to_p, || {
                format!(
                    "sample {i}: coboundary {f} has orbit sum {:?}",
                    v.violating_orbit
                )
            })?;
        }
        ensure(!v.bound_violation, || {
            format!("sample {i}: converse fails at P = {bound} for f = {f}")
        })?;
    }
    for name in ["C2", "C3"] {
        let g = group(name);
        let v = fullshift::livsic_check(&g, &ZChain::constant(1), 1).map_err(|e| e.to_string())?;
        let expected = PeriodicPoint::new(vec![0]).expect("non-empty");
        ensure(
            !v.is_coboundary_exact
                && v.violating_orbit
                    .as_ref()
                    .is_some_and(|o| o.orbit == expected && o.sum.is_one()),
            || format!("{name}: constant 1 not rejected via the trivial fixed point: {v:?}"),
        )?;
        for letter in 1..g.irrep_count() as u32 {
            let f = ZChain::word(Word::single(0, letter));
            let v = fullshift::livsic_check(&g, &f, 1).map_err(|e| e.to_string())?;
            let expected = PeriodicPoint::new(vec![letter]).expect("non-empty");
            ensure(
                !v.is_coboundary_exact
                    && v.violating_orbit
                        .as_ref()
                        .is_some_and(|o| o.orbit == expected && o.sum.is_one()),
                || format!("{name}: indicator of letter {letter} not rejected: {v:?}"),
            )?;
        }
    }
    Ok(format!(
        "500 samples ({coboundaries} coboundaries), no bound violations"
    ))
}

fn classification(_seed: u64) -> std::result::Result<String, String> {
    let cases = [
        ("C4", "klein4", IsoDecision::Iso),
        ("C6", "S3", IsoDecision::NotIso),
        ("S3", "D4", IsoDecision::Undecided),
    ];
    for (a, b, expected) in cases {
        let got = csalgebras_isomorphic_abelian_case(&group(a), &group(b));
        ensure(got == expected, || {
            format!("({a}, {b}) gave {got:?}, expected {expected:?}")
        })?;
    }
    Ok("(C4, klein4) iso; (C6, S3) not-iso; (S3, D4) undecided".into())
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn brute_force_orbits_small_window() {
        // C2 on 3 coordinates: [] , g at 3 places, gg at 2, g0g at 1, ggg at 1
        let (_, orbit) = brute_force_orbits(2, 3);
        let distinct: BTreeSet<usize> = orbit.iter().copied().collect();
        assert_eq!(distinct.len(), 5);
    }

    #[test]
    fn zero_budget_skips_everything() {
        let report = run_all(1, Duration::ZERO);
        assert!(!report.complete() && !report.failed());
        assert_eq!(report.outcomes.len(), 9);
    }
}
