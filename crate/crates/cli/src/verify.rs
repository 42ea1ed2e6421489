//! Verification sweeps behind `submon verify`.

use std::fmt::Write as _;

use submon::appendix::{check_entry, golden_entries};
use submon::closed_forms::{chain_b_coefficient, lambda_chain, lambda_chain_x1, lambda_mk, poly_bernoulli};
use submon::oracle::brute_force_submonoid_count_with_limits;
use submon::spectral::{blocks_are_diagonal, eigenvalues, verify_recurrence, Spectrum};
use submon::transfer_systems::{st_count_sequence, verify_graph_isomorphism, FiniteLattice};
use submon::{CayleyMonoid, CountSequence, Limits, TransferMatrix};

use crate::{load, Failure};

const SUITES: [&str; 6] = ["triangular", "recurrence", "oracle", "transfer-iso", "closed-forms", "appendix"];

const IDEMPOTENT_DEFAULTS: [&str; 8] = [
    "chain:0",
    "chain:1",
    "chain:2",
    "chain:3",
    "chain:1 x chain:1",
    "mk:2",
    "mk:3",
    "n5",
];

const ORACLE_DEFAULTS: [&str; 10] = [
    "chain:0",
    "chain:1",
    "chain:2",
    "chain:3",
    "chain:1 x chain:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "mk:2",
    "mk:3",
];

const LATTICE_DEFAULTS: [&str; 5] = ["chain:1", "chain:2", "chain:1 x chain:1", "chain:1 x chain:2", "mk:3"];

/// Compares pipeline counts with the brute-force oracle wherever the oracle
/// budget allows.
pub fn oracle_cross_check(m: &CayleyMonoid, seq: &CountSequence, limits: &Limits) -> Result<usize, Failure> {
    let mut checked = 0;
    for (n, value) in seq.values.iter().enumerate() {
        if (n + 1) * m.size() > limits.max_oracle_size {
            break;
        }
        let oracle = brute_force_submonoid_count_with_limits(m, n, limits)?;
        if *value != oracle {
            return Err(Failure::Verification(format!(
                "n = {n}: transfer matrix gives {value}, brute force gives {oracle}"
            )));
        }
        checked += 1;
    }
    Ok(checked)
}

fn targets<'a>(given: Option<&'a str>, defaults: &[&'a str]) -> Vec<&'a str> {
    match given {
        Some(m) => vec![m],
        None => defaults.to_vec(),
    }
}

pub fn run_suite(
    suite: &str,
    monoid: Option<&str>,
    n: Option<usize>,
    slow: bool,
    limits: &Limits,
) -> Result<String, Failure> {
    let mut out = String::new();
    match suite {
        "triangular" => {
            for spec in targets(monoid, &["chain:1 x chain:1", "cyclic:4", "cyclic:2 x cyclic:2", "n5", "mk:3"]) {
                let m = load(spec)?;
                let w = TransferMatrix::build_with_limits(&m, limits)?;
                if !w.is_lower_triangular() {
                    return Err(Failure::Verification(format!("{spec}: not lower triangular\n{}", w.to_json())));
                }
                if m.is_idempotent() && !blocks_are_diagonal(&w) {
                    return Err(Failure::Verification(format!(
                        "{spec}: an equal-diagonal block is not diagonal\n{}",
                        w.to_json()
                    )));
                }
                let _ = writeln!(out, "ok {spec}: {} submonoids", w.len());
            }
        }
        "recurrence" => {
            for spec in targets(monoid, &IDEMPOTENT_DEFAULTS) {
                let w = TransferMatrix::build_with_limits(&load(spec)?, limits)?;
                let lambdas = eigenvalues(&w)?;
                let len = n.map_or(0, |n| n + 1).max(2 * lambdas.len());
                let seq = w.count_sequence(len - 1);
                let check = verify_recurrence(&lambdas, &seq.values)?;
                if let Some(at) = check.first_violation {
                    return Err(Failure::Verification(format!(
                        "{spec}: recurrence with coefficients {:?} fails at n = {at}; S = {:?}",
                        check.coefficients, seq.values
                    )));
                }
                let _ = writeln!(out, "ok {spec}: Λ = {lambdas:?}, {len} terms");
            }
        }
        "oracle" => {
            for spec in targets(monoid, &ORACLE_DEFAULTS) {
                let m = load(spec)?;
                let n_max = n.unwrap_or(limits.max_oracle_size / m.size() - 1);
                if (n_max + 1) * m.size() > limits.max_oracle_size {
                    return Err(Failure::Core(submon::Error::SizeLimitExceeded {
                        what: "oracle product size",
                        requested: ((n_max + 1) * m.size()) as u128,
                        limit: limits.max_oracle_size as u128,
                    }));
                }
                let seq = TransferMatrix::build_with_limits(&m, limits)?.count_sequence(n_max);
                oracle_cross_check(&m, &seq, limits)
                    .map_err(|f| Failure::Verification(format!("{spec}: {f}")))?;
                let _ = writeln!(out, "ok {spec}: n ≤ {n_max}");
            }
        }
        "transfer-iso" => {
            let n_max = n.unwrap_or(3);
            for spec in targets(monoid, &LATTICE_DEFAULTS) {
                let m = load(spec)?;
                let lattice = FiniteLattice::from_monoid(&m)?;
                let report = verify_graph_isomorphism(&lattice, limits)?;
                if !report.holds() {
                    return Err(Failure::Verification(format!("{spec}: {report:?}")));
                }
                let st = st_count_sequence(&lattice, n_max, limits)?;
                let g = TransferMatrix::build_with_limits(&m, limits)?.count_sequence(n_max);
                if st != g {
                    return Err(Failure::Verification(format!(
                        "{spec}: transfer systems {:?}, submonoids {:?}",
                        st.values, g.values
                    )));
                }
                let _ = writeln!(out, "ok {spec}: {} systems, counts agree for n ≤ {n_max}", report.systems);
            }
        }
        "closed-forms" => {
            for m in 0..=10 {
                for k in 0..=10 {
                    poly_bernoulli(m, k)?;
                }
            }
            let _ = writeln!(out, "ok poly-Bernoulli formulas agree for m, n ≤ 10");
            for m in 0..=6 {
                let w = TransferMatrix::build_with_limits(&CayleyMonoid::chain(m)?, limits)?;
                let s = Spectrum::compute(&w)?;
                if s.lambdas() != lambda_chain(m) {
                    return Err(Failure::Verification(format!("chain:{m}: Λ = {:?}", s.lambdas())));
                }
                for (&j, b) in s.lambdas().iter().zip(s.b()) {
                    let closed = chain_b_coefficient(m, j as usize)?;
                    if closed != *b {
                        return Err(Failure::Verification(format!("chain:{m}, λ = {j}: {closed} vs {b}")));
                    }
                }
            }
            let _ = writeln!(out, "ok chain coefficients for m ≤ 6");
            for (spec, expected) in (1..=4)
                .map(|m| (format!("chain:{m} x chain:1"), lambda_chain_x1(m)))
                .chain((1..=5).map(|k| (format!("mk:{k}"), lambda_mk(k))))
            {
                let expected = expected?;
                let got = eigenvalues(&TransferMatrix::build_with_limits(&load(&spec)?, limits)?)?;
                if got != expected {
                    return Err(Failure::Verification(format!("{spec}: Λ = {got:?}, expected {expected:?}")));
                }
            }
            let _ = writeln!(out, "ok eigenvalue sets of [m]x[1] (m ≤ 4) and M_k (k ≤ 5)");
        }
        "appendix" => {
            for entry in golden_entries()? {
                if entry.slow && !slow {
                    let _ = writeln!(out, "skipped {} (pass --slow)", entry.label);
                    continue;
                }
                if let Some(m) = check_entry(&entry, limits)? {
                    return Err(Failure::Verification(format!("{}: {m}", entry.label)));
                }
                let _ = writeln!(out, "ok {}: {} rows", entry.label, entry.rows.len());
            }
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    out.push_str("passed\n");
    Ok(out)
}
