//! Seeded instance families and batch certification runs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bounds::{full_report, proximity_check, BoundOptions, BoundReport, ProximityReport, Status, ZChoice};
use crate::exact::{compute_invariants_capped, rank, IntegerMatrix, DEFAULT_MINOR_CAP};
use crate::geometry::seeded_rng;
use crate::integer::{IntError, IntOptions, DEFAULT_NODE_CAP};
use crate::io::{text, InstanceFile, ParseError};
use crate::polyhedra::{is_polytope, Instance, PolyError};

type Q = BigRational;

/// Attempts per instance before the generator gives up on a family.
pub const MAX_ATTEMPTS: u32 = 100_000;

fn default_seed() -> u64 {
    1
}
fn default_count() -> usize {
    500
}
fn default_m() -> [usize; 2] {
    [1, 3]
}
fn default_entry_bound() -> i64 {
    5
}
fn default_node_cap() -> u64 {
    DEFAULT_NODE_CAP
}
fn default_precision() -> u32 {
    64
}

/// A reproducible run: identical manifests give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_count")]
    pub count: usize,
    /// Inclusive range of row counts.
    #[serde(default = "default_m")]
    pub m: [usize; 2],
    /// Inclusive range of column counts; `None` means `m+1 ..= m+5`.
    #[serde(default)]
    pub n: Option<[usize; 2]>,
    /// Largest absolute entry of `A` and `c`.
    #[serde(default = "default_entry_bound")]
    pub entry_bound: i64,
    #[serde(default = "default_node_cap")]
    pub node_cap: u64,
    #[serde(default = "default_precision")]
    pub precision_bits: u32,
    /// Explicit instance files; when present they replace the generated family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<Vec<Value>>,
}

impl Default for RunManifest {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            count: default_count(),
            m: default_m(),
            n: None,
            entry_bound: default_entry_bound(),
            node_cap: default_node_cap(),
            precision_bits: default_precision(),
            instances: None,
        }
    }
}

impl RunManifest {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let manifest: Self = serde_json::from_str(src).map_err(|e| ParseError::Json(e.to_string()))?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<(), ParseError> {
        let bad = |field: &str, message: &str| {
            Err(ParseError::Field {
                field: field.into(),
                message: message.into(),
            })
        };
        if self.m[0] == 0 || self.m[0] > self.m[1] {
            return bad("m", "need 1 <= m_min <= m_max");
        }
        if let Some([lo, hi]) = self.n {
            if lo > hi || hi <= self.m[0] {
                return bad("n", "need n_min <= n_max and some n > m");
            }
        }
        if self.entry_bound < 1 {
            return bad("entry_bound", "must be at least 1");
        }
        Ok(())
    }

    fn n_range(&self, m: usize) -> Option<(usize, usize)> {
        match self.n {
            None => Some((m + 1, m + 5)),
            Some([lo, hi]) => {
                let lo = lo.max(m + 1);
                (lo <= hi).then_some((lo, hi))
            }
        }
    }

    pub fn bound_options(&self) -> BoundOptions {
        BoundOptions {
            precision_bits: self.precision_bits,
            int: IntOptions {
                node_cap: self.node_cap,
                cross_check: true,
            },
            ..BoundOptions::default()
        }
    }

    /// The instances of this run: the explicit list, or the generated family.
    pub fn instance_files(&self) -> Result<Vec<InstanceFile>, ParseError> {
        match &self.instances {
            Some(list) => list.iter().map(InstanceFile::from_value).collect(),
            None => generate(self),
        }
    }
}

fn sample_instance(rng: &mut rand_chacha::ChaCha8Rng, manifest: &RunManifest) -> Option<Instance> {
    let e = manifest.entry_bound;
    let m = rng.gen_range(manifest.m[0]..=manifest.m[1]);
    let (n_lo, n_hi) = manifest.n_range(m)?;
    let n = rng.gen_range(n_lo..=n_hi);
    let a = loop {
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-e..=e)).collect())
            .collect();
        let a = IntegerMatrix::from_rows(&rows).expect("rectangular");
        if rank(&a) == m {
            break a;
        }
    };
    let x0: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(0..=2))).collect();
    let b = a.mul_vec(&x0);
    let c: Vec<Q> = (0..n).map(|_| Q::from_integer(rng.gen_range(-e..=e).into())).collect();
    Instance::new(a, b, c).ok()
}

/// Seeded instances with a known integer point `x0` and bounded `P(A, b)`.
pub fn generate(manifest: &RunManifest) -> Result<Vec<InstanceFile>, ParseError> {
    manifest.validate()?;
    let mut rng = seeded_rng(manifest.seed, 0);
    let mut out = Vec::with_capacity(manifest.count);
    for index in 0..manifest.count {
        let mut attempts = 0;
        let inst = loop {
            attempts += 1;
            if attempts > MAX_ATTEMPTS {
                return Err(ParseError::Field {
                    field: "n".into(),
                    message: format!("no bounded instance after {MAX_ATTEMPTS} draws"),
                });
            }
            if let Some(inst) = sample_instance(&mut rng, manifest) {
                if is_polytope(&inst) {
                    break inst;
                }
            }
        };
        out.push(InstanceFile::from_instance(
            &inst,
            Some(format!("seed{}-{index}", manifest.seed)),
        ));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Violation,
    BudgetExceeded,
    Indeterminate,
    Infeasible,
    Unbounded,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceResult {
    pub index: usize,
    pub name: Option<String>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
    pub bound_violations: usize,
    pub proximity_violations: usize,
    pub indeterminate: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tightness {
    pub bound: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_star: Option<ZChoice>,
    /// Largest `gap / bound` seen.
    pub ratio: f64,
    pub instance: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub instance: Value,
    pub report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proximity: Option<ProximityReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertifySummary {
    pub manifest: RunManifest,
    pub instances: usize,
    pub passed: usize,
    pub violations: usize,
    pub budget_exceeded: usize,
    pub indeterminate: usize,
    pub infeasible_or_unbounded: usize,
    pub errors: usize,
    pub worst_tightness: Vec<Tightness>,
    pub counterexamples: Vec<Counterexample>,
    pub results: Vec<InstanceResult>,
}

impl CertifySummary {
    /// 0 when every verdict holds, 5 on a violation, 4 when budgets or
    /// precision ran out, 3 on infeasible or unbounded explicit instances.
    pub fn exit_code(&self) -> i32 {
        if self.violations > 0 {
            5
        } else if self.budget_exceeded > 0 || self.indeterminate > 0 || self.errors > 0 {
            4
        } else if self.infeasible_or_unbounded > 0 {
            3
        } else {
            0
        }
    }
}

/// Every bound and the vertex distance check for one instance.
pub struct Certified {
    pub report: BoundReport,
    pub proximity: Option<ProximityReport>,
}

pub fn certify_instance(inst: &Instance, opts: &BoundOptions) -> Result<Certified, IntError> {
    let report = full_report(inst, None, opts)?;
    let proximity = if report.status == Status::Optimal && is_polytope(inst) {
        let inv =
            compute_invariants_capped(inst.a(), opts.minor_cap.min(DEFAULT_MINOR_CAP)).map_err(PolyError::from)?;
        Some(proximity_check(inst, &inv, None, opts)?)
    } else {
        None
    };
    Ok(Certified { report, proximity })
}

fn classify(index: usize, file: &InstanceFile, result: &Result<Certified, String>, budget: bool) -> InstanceResult {
    let mut r = InstanceResult {
        index,
        name: file.name.clone(),
        outcome: Outcome::Pass,
        gap: None,
        bound_violations: 0,
        proximity_violations: 0,
        indeterminate: 0,
        message: None,
    };
    match result {
        Err(message) => {
            r.outcome = if budget {
                Outcome::BudgetExceeded
            } else {
                Outcome::Error
            };
            r.message = Some(message.clone());
        }
        Ok(c) => {
            r.gap = c.report.gap.as_ref().map(text::format_rational);
            r.bound_violations = c.report.violations();
            r.proximity_violations = c.proximity.as_ref().map_or(0, |p| p.violations);
            r.indeterminate = c.report.indeterminate();
            r.outcome = match c.report.status {
                Status::Infeasible => Outcome::Infeasible,
                Status::Unbounded => Outcome::Unbounded,
                Status::Optimal if r.bound_violations + r.proximity_violations > 0 => Outcome::Violation,
                Status::Optimal if r.indeterminate > 0 => Outcome::Indeterminate,
                Status::Optimal => Outcome::Pass,
            };
        }
    }
    r
}

/// Certifies every instance of the run in parallel; the summary is ordered
/// by instance index.
pub fn certify(manifest: &RunManifest) -> Result<CertifySummary, ParseError> {
    let files = manifest.instance_files()?;
    let instances: Vec<Instance> = files.iter().map(InstanceFile::instance).collect::<Result<_, _>>()?;
    let opts = manifest.bound_options();
    let runs: Vec<(Result<Certified, String>, bool)> = instances
        .par_iter()
        .map(|inst| match certify_instance(inst, &opts) {
            Ok(c) => (Ok(c), false),
            Err(e) => {
                let budget = matches!(
                    e,
                    IntError::BudgetExceeded(_) | IntError::Poly(PolyError::BudgetExceeded(_))
                );
                (Err(e.to_string()), budget)
            }
        })
        .collect();

    let mut summary = CertifySummary {
        manifest: manifest.clone(),
        instances: files.len(),
        passed: 0,
        violations: 0,
        budget_exceeded: 0,
        indeterminate: 0,
        infeasible_or_unbounded: 0,
        errors: 0,
        worst_tightness: Vec::new(),
        counterexamples: Vec::new(),
        results: Vec::with_capacity(files.len()),
    };
    let mut worst: BTreeMap<usize, Tightness> = BTreeMap::new();
    let mut order: Vec<(String, Option<ZChoice>)> = Vec::new();
    for (index, ((run, budget), file)) in runs.into_iter().zip(&files).enumerate() {
        let r = classify(index, file, &run, budget);
        match r.outcome {
            Outcome::Pass => summary.passed += 1,
            Outcome::Violation => summary.violations += 1,
            Outcome::BudgetExceeded => summary.budget_exceeded += 1,
            Outcome::Indeterminate => summary.indeterminate += 1,
            Outcome::Infeasible | Outcome::Unbounded => summary.infeasible_or_unbounded += 1,
            Outcome::Error => summary.errors += 1,
        }
        if let Ok(c) = run {
            if let Some(gap) = c.report.gap.as_ref().and_then(|g| g.to_f64()) {
                for entry in c.report.bounds.iter().filter(|e| e.applicable) {
                    let Some(bound) = entry.exact.as_ref().map(|b| b.to_f64()) else {
                        continue;
                    };
                    if bound <= 0.0 {
                        continue;
                    }
                    let key = (entry.name.to_string(), entry.z_star);
                    let slot = match order.iter().position(|k| *k == key) {
                        Some(i) => i,
                        None => {
                            order.push(key.clone());
                            order.len() - 1
                        }
                    };
                    let ratio = gap / bound;
                    let current = worst.entry(slot).or_insert(Tightness {
                        bound: key.0,
                        z_star: key.1,
                        ratio,
                        instance: index,
                    });
                    if ratio > current.ratio {
                        current.ratio = ratio;
                        current.instance = index;
                    }
                }
            }
            if r.outcome == Outcome::Violation {
                summary.counterexamples.push(Counterexample {
                    index,
                    instance: file.to_value(),
                    report: c.report,
                    proximity: c.proximity,
                });
            }
        }
        summary.results.push(r);
    }
    summary.worst_tightness = worst.into_values().collect();
    Ok(summary)
}

/// `gap(t c) = t gap(c)` checked exactly.
pub fn homogeneous(inst: &Instance, t: &Q, opts: &IntOptions) -> Result<bool, IntError> {
    let base = crate::bounds::integrality_gap(inst, opts)?.gap;
    let scaled = inst.with_cost(inst.c().iter().map(|c| c * t).collect())?;
    let gap = crate::bounds::integrality_gap(&scaled, opts)?.gap;
    Ok(gap == base * t || (t.is_zero() && gap.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(count: usize) -> RunManifest {
        RunManifest {
            seed: 1,
            count,
            m: [1, 1],
            n: Some([3, 3]),
            ..RunManifest::default()
        }
    }

    #[test]
    fn generation_is_deterministic_and_bounded() {
        let a = generate(&small(3)).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a, generate(&small(3)).unwrap());
        for f in &a {
            assert_eq!((f.a.len(), f.a[0].len()), (1, 3));
            assert!(f.a.iter().flatten().all(|x| x.magnitude() <= &5u32.into()));
            assert!(is_polytope(&f.instance().unwrap()));
        }
        let other = generate(&RunManifest { seed: 2, ..small(3) }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn default_family_ranges() {
        let files = generate(&RunManifest {
            count: 40,
            ..RunManifest::default()
        })
        .unwrap();
        for f in files {
            let (m, n) = (f.a.len(), f.a[0].len());
            assert!((1..=3).contains(&m) && n > m && n <= m + 5);
            assert!(f.c.iter().all(|c| c.numer().magnitude() <= &5u32.into()));
        }
    }

    #[test]
    fn explicit_single_instance_passes() {
        let manifest = RunManifest::parse(r#"{"instances": [{"A": [[2, 3]], "b": [5], "c": [1, 0]}]}"#).unwrap();
        let s = certify(&manifest).unwrap();
        assert_eq!((s.instances, s.passed, s.violations), (1, 1, 0));
        assert_eq!(s.results[0].gap.as_deref(), Some("1"));
        assert_eq!(s.exit_code(), 0);
    }

    #[test]
    fn tiny_node_cap_is_counted_not_skipped() {
        let manifest = RunManifest {
            node_cap: 10,
            count: 20,
            ..RunManifest::default()
        };
        let s = certify(&manifest).unwrap();
        assert!(s.budget_exceeded > 0, "{:?}", s.results);
        assert_eq!(s.violations, 0);
        assert_eq!(s.passed + s.budget_exceeded + s.indeterminate + s.errors, 20);
        assert_eq!(s.exit_code(), 4);
    }

    #[test]
    fn certify_is_deterministic() {
        let m = RunManifest {
            count: 12,
            ..RunManifest::default()
        };
        let a = serde_json::to_string(&certify(&m).unwrap()).unwrap();
        let b = serde_json::to_string(&certify(&m).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn manifest_validation() {
        assert!(RunManifest::parse(r#"{"m": [0, 2]}"#).is_err());
        assert!(RunManifest::parse(r#"{"bogus": 1}"#).is_err());
        assert_eq!(RunManifest::parse("{}").unwrap(), RunManifest::default());
    }

    #[test]
    fn homogeneity_on_the_knapsack() {
        let inst = Instance::from_ints(&[vec![2, 3]], &[5], &[1, 0]).unwrap();
        for t in [
            Q::new(1.into(), 3.into()),
            Q::from_integer(2.into()),
            Q::new(7.into(), 2.into()),
        ] {
            assert!(homogeneous(&inst, &t, &IntOptions::default()).unwrap());
        }
    }
}
