//! Canonical JSON reports.
//!
//! Key order is fixed by struct declaration order, output is two-space
//! pretty-printed with a trailing newline, and every number that can exceed
//! u64 is emitted as a string. Byte-identical reruns on identical inputs and
//! seeds are the contract; tests diff raw bytes.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::model::{save_system, FiniteSystem};
use crate::verifier::{
    DeltaDecision, MinimalityVerdict, OrbitalMode, OrbitalReport, SearchOutcome,
    StrongOrbitalReport, SwsCertificate, TrapCertificate, Verdict,
};

/// Hex SHA-256 of the canonical save text; names a system independent of
/// where the file lives.
pub fn system_hash(s: &FiniteSystem) -> String {
    let digest = Sha256::digest(save_system(s).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Pretty JSON plus trailing newline. All report values funnel through here.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports have no fallible fields");
    text.push('\n');
    text
}

#[derive(Debug, Clone, Serialize)]
pub struct Recommended {
    pub delta: u64,
    pub n: usize,
    /// n = 0 means a single point suffices; real but worth flagging.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultEntry {
    pub delta: u64,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub lasso: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<usize>>,
}

/// Envelope for trap, cover, and second-weak-shadowing runs.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub system: String,
    pub theorem: String,
    pub eps: u64,
    pub results: Vec<ResultEntry>,
    pub recommended: Option<Recommended>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub justification: Option<Vec<String>>,
    pub oracle_checked: bool,
}

fn recommended_of(pair: Option<(u64, usize)>) -> Option<Recommended> {
    pair.map(|(delta, n)| Recommended { delta, n, degenerate: n == 0 })
}

/// Report for a delta-grid sweep (`trap --search`, covering searches).
pub fn sweep_report(
    s: &FiniteSystem,
    theorem: &str,
    out: &SearchOutcome,
    oracle_checked: bool,
) -> VerificationReport {
    let results = out
        .entries
        .iter()
        .map(|e| match &e.decision {
            DeltaDecision::Feasible { min_n } => ResultEntry {
                delta: e.delta,
                feasible: true,
                n: Some(*min_n),
                lasso: false,
                counterexample: None,
            },
            DeltaDecision::Infeasible { lasso } => ResultEntry {
                delta: e.delta,
                feasible: false,
                n: None,
                lasso: true,
                counterexample: Some(lasso.points().to_vec()),
            },
        })
        .collect();
    VerificationReport {
        system: system_hash(s),
        theorem: theorem.to_string(),
        eps: out.eps,
        results,
        recommended: recommended_of(out.recommended),
        justification: None,
        oracle_checked,
    }
}

/// Report for a single fixed (delta, n) verdict. Works for both certificate
/// kinds since they share fields; pass the matching theorem name.
#[allow(clippy::too_many_arguments)]
pub fn check_report(
    s: &FiniteSystem,
    theorem: &str,
    eps: u64,
    delta: u64,
    n: usize,
    verdict: Verdict,
    counterexample: Option<&[usize]>,
    oracle_checked: bool,
) -> VerificationReport {
    let pass = verdict.passed();
    VerificationReport {
        system: system_hash(s),
        theorem: theorem.to_string(),
        eps,
        results: vec![ResultEntry {
            delta,
            feasible: pass,
            n: Some(n),
            lasso: false,
            counterexample: counterexample.map(<[usize]>::to_vec),
        }],
        recommended: pass.then_some(Recommended { delta, n, degenerate: n == 0 }),
        justification: None,
        oracle_checked,
    }
}

pub fn trap_check_report(
    s: &FiniteSystem,
    cert: &TrapCertificate,
    delta: u64,
    oracle_checked: bool,
) -> VerificationReport {
    check_report(
        s,
        "cycle_trapping",
        cert.eps,
        delta,
        cert.n,
        cert.verdict,
        cert.counterexample.as_ref().map(|w| w.points()),
        oracle_checked,
    )
}

pub fn sws_report(s: &FiniteSystem, cert: &SwsCertificate, oracle_checked: bool) -> VerificationReport {
    let mut report = sweep_report(s, "second_weak_shadowing", &cert.search, oracle_checked);
    report.justification = Some(cert.justification.clone());
    report
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub eps: u64,
    pub witness: Option<Recommended>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexamplePair {
    pub eps: u64,
    pub base_point: usize,
    pub inside_orbit: Vec<usize>,
    pub outside_orbit: Vec<usize>,
    pub violating_point: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub system: String,
    pub theorem: String,
    pub minimal: bool,
    pub per_eps: Vec<WitnessEntry>,
    pub counterexample: Option<CounterexamplePair>,
    pub oracle_checked: bool,
}

pub fn minimality_report(
    s: &FiniteSystem,
    verdict: &MinimalityVerdict,
    oracle_checked: bool,
) -> MinimalityReport {
    MinimalityReport {
        system: system_hash(s),
        theorem: "minimality_criterion".to_string(),
        minimal: verdict.minimal,
        per_eps: verdict
            .per_eps
            .iter()
            .map(|e| WitnessEntry { eps: e.eps, witness: recommended_of(e.witness) })
            .collect(),
        counterexample: verdict.counterexample.as_ref().map(|c| CounterexamplePair {
            eps: c.eps,
            base_point: c.base_point,
            inside_orbit: c.inside_orbit.points().to_vec(),
            outside_orbit: c.outside_orbit.points().to_vec(),
            violating_point: c.violating_point,
        }),
        oracle_checked,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongOrbitalFailureEntry {
    pub sampled: bool,
    pub start: usize,
    pub offset: usize,
    pub shadow: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongOrbitalDoc {
    pub system: String,
    pub theorem: String,
    pub eps: u64,
    pub delta: u64,
    pub n: usize,
    pub horizon: usize,
    pub orbit_instances: u64,
    pub sampled_instances: u64,
    pub seed: u64,
    pub pass: bool,
    pub failure_count: u64,
    pub failures: Vec<StrongOrbitalFailureEntry>,
}

pub fn strong_orbital_report(s: &FiniteSystem, r: &StrongOrbitalReport) -> StrongOrbitalDoc {
    StrongOrbitalDoc {
        system: system_hash(s),
        theorem: "strong_orbital_shadowing".to_string(),
        eps: r.eps,
        delta: r.delta,
        n: r.n,
        horizon: r.horizon,
        orbit_instances: r.orbit_instances,
        sampled_instances: r.sampled_instances,
        seed: r.seed,
        pass: r.passed(),
        failure_count: r.failure_count,
        failures: r
            .failures
            .iter()
            .map(|f| StrongOrbitalFailureEntry {
                sampled: f.sampled,
                start: f.start,
                offset: f.offset,
                shadow: f.shadow,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitalDetailEntry {
    pub walk: Vec<usize>,
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitalDoc {
    pub system: String,
    pub theorem: String,
    pub eps: u64,
    pub delta: u64,
    pub horizon: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub seed: u64,
    /// Stringified: walk counts overflow u64 early.
    pub walk_count: String,
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
    pub pass: bool,
    pub note: String,
    pub details: Vec<OrbitalDetailEntry>,
    pub failures: Vec<OrbitalDetailEntry>,
}

pub fn orbital_report(s: &FiniteSystem, r: &OrbitalReport) -> OrbitalDoc {
    let detail = |d: &crate::verifier::OrbitalDetail| OrbitalDetailEntry {
        walk: d.walk.points().to_vec(),
        witness: d.witness,
    };
    let (mode, samples) = match r.mode {
        OrbitalMode::Exhaustive => ("exhaustive".to_string(), None),
        OrbitalMode::Sampled { samples } => ("sampled".to_string(), Some(samples)),
    };
    OrbitalDoc {
        system: system_hash(s),
        theorem: "orbital_shadowing".to_string(),
        eps: r.eps,
        delta: r.delta,
        horizon: r.horizon,
        mode,
        samples,
        seed: r.seed,
        walk_count: r.walk_count.to_string(),
        checked: r.checked,
        passed: r.passed,
        failed: r.failed,
        pass: r.all_passed(),
        note: format!("semi-decision at horizon {}", r.horizon),
        details: r.details.iter().map(detail).collect(),
        failures: r.failures.iter().map(detail).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::{
        certify_second_weak_shadowing, minimality_criterion, trap_check, trap_search,
        SearchLimits,
    };
    use crate::zoo::{cyclic_rotation, disjoint_attractors, RotationMetric};

    #[test]
    fn hash_is_hex_and_input_sensitive() {
        let a = cyclic_rotation(5, RotationMetric::Arc, 1).unwrap();
        let b = cyclic_rotation(5, RotationMetric::Arc, 2).unwrap();
        let ha = system_hash(&a);
        assert_eq!(ha.len(), 64);
        assert!(ha.bytes().all(|c| c.is_ascii_hexdigit()));
        assert_eq!(ha, system_hash(&a));
        assert_ne!(ha, system_hash(&b));
    }

    #[test]
    fn sweep_report_bytes_are_stable_and_ordered() {
        let s = cyclic_rotation(8, RotationMetric::Arc, 1).unwrap();
        let out = trap_search(&s, 2, SearchLimits::default()).unwrap();
        let text = canonical_json(&sweep_report(&s, "cycle_trapping", &out, true));
        assert_eq!(text, canonical_json(&sweep_report(&s, "cycle_trapping", &out, true)));
        assert!(text.ends_with('\n'));
        let order = ["\"system\"", "\"theorem\"", "\"eps\"", "\"results\"", "\"recommended\"", "\"oracle_checked\""];
        let positions: Vec<usize> = order.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "keys out of order in {text}");
        assert!(!text.contains("justification"));
        assert!(text.contains("\"lasso\": true"));
        assert!(text.contains("\"degenerate\": false"));
    }

    #[test]
    fn check_report_carries_the_counterexample() {
        let s = cyclic_rotation(8, RotationMetric::Arc, 1).unwrap();
        let cert = trap_check(&s, 2, 2, 3, SearchLimits::default()).unwrap();
        let doc = trap_check_report(&s, &cert, 2, false);
        assert!(!doc.results[0].feasible);
        assert_eq!(doc.results[0].counterexample.as_deref(), Some(&[0, 0, 0, 0][..]));
        assert!(doc.recommended.is_none());
    }

    #[test]
    fn sws_report_includes_justification() {
        let s = cyclic_rotation(5, RotationMetric::Arc, 1).unwrap();
        let cert = certify_second_weak_shadowing(&s, 2, SearchLimits::default()).unwrap();
        let text = canonical_json(&sws_report(&s, &cert, true));
        assert!(text.contains("\"justification\""));
        assert!(text.contains("second weak shadowing"));
    }

    #[test]
    fn minimality_report_shapes() {
        let s = disjoint_attractors(&[1, 1], 10).unwrap();
        let v = minimality_criterion(&s, SearchLimits::default()).unwrap();
        let doc = minimality_report(&s, &v, true);
        assert!(!doc.minimal);
        let cex = doc.counterexample.unwrap();
        assert_eq!(cex.eps, 10);
        assert_eq!(cex.inside_orbit, vec![0, 0]);
        let text = canonical_json(&minimality_report(&s, &v, true));
        assert!(text.contains("\"per_eps\""));
    }
}
