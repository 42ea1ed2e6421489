//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Set `SUBMON_SLOW=1` to include the three large table entries.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use submon::appendix::{check_entry, golden_entries};
use submon::closed_forms::{
    abelian_group_count, chain_b_coefficient, chain_counts, lambda_chain, lambda_chain_x1, lambda_mk,
    poly_bernoulli,
};
use submon::eigenmatrix::{half_factorial, ChainEigenmatrix};
use submon::notation::parse_monoid;
use submon::oracle::brute_force_submonoid_count;
use submon::spectral::{eigenvalues, growth_ratio, rational_to_f64, verify_recurrence};
use submon::transfer_systems::{st_count_sequence, verify_graph_isomorphism, FiniteLattice};
use submon::{CayleyMonoid, Limits, Spectrum, SubmonoidLattice, TransferMatrix};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

fn slow_enabled() -> bool {
    std::env::var("SUBMON_SLOW").is_ok_and(|v| v == "1")
}

fn monoid(spec: &str) -> CayleyMonoid {
    parse_monoid(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn transfer(spec: &str) -> TransferMatrix {
    TransferMatrix::build(&monoid(spec)).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn reference_matrix() -> Outcome {
    // Published order: bottom, the two atoms' submonoids and the diagonal,
    // then the two three-element ones, then everything.
    let expected: [[u32; 7]; 7] = [
        [2, 0, 0, 0, 0, 0, 0],
        [2, 3, 0, 0, 0, 0, 0],
        [2, 0, 3, 0, 0, 0, 0],
        [2, 0, 0, 3, 0, 0, 0],
        [2, 0, 2, 3, 4, 0, 0],
        [2, 3, 2, 0, 0, 4, 0],
        [2, 3, 2, 3, 3, 3, 6],
    ];
    // Legend as masks over (x, y) ↦ 2x + y: {e}, {e,(0,1)}, {e,(1,1)},
    // {e,(1,0)}, {e,(1,0),(1,1)}, {e,(0,1),(1,1)}, everything.
    let legend = [0x1u64, 0x3, 0x9, 0x5, 0xd, 0xb, 0xf];
    let w = transfer("chain:1 x chain:1");
    if w.len() != 7 {
        return Err(format!("{} submonoids, expected 7", w.len()));
    }
    let idx: Vec<usize> = legend
        .iter()
        .map(|&m| w.lattice().index_of(submon::SubsetMask::from_bits(m)).ok_or(format!("{m:#x} missing")))
        .collect::<Result<_, _>>()?;
    for (i, row) in expected.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            let got = w.entry(idx[i], idx[j]);
            if *got != BigUint::from(e) {
                return Err(format!("entry ({i},{j}) is {got}, expected {e}"));
            }
        }
    }
    Ok("7x7 matrix matches entry for entry".into())
}

fn appendix() -> Outcome {
    let limits = Limits::default();
    let mut checked = Vec::new();
    for entry in golden_entries().map_err(|e| e.to_string())? {
        if entry.slow && !slow_enabled() {
            continue;
        }
        match check_entry(&entry, &limits).map_err(|e| format!("{}: {e}", entry.label))? {
            None => checked.push(entry.label.clone()),
            Some(m) => return Err(format!("{}: {m}", entry.label)),
        }
    }
    let note = if slow_enabled() { "" } else { " (slow entries skipped)" };
    Ok(format!("{} entries match{note}: {}", checked.len(), checked.join(" ")))
}

fn m3_zero() -> Outcome {
    let s = Spectrum::compute(&transfer("mk:3")).map_err(|e| e.to_string())?;
    match s.b_of(4) {
        Some(b) if *b == BigRational::from_integer(0.into()) => Ok("4 ∈ Λ(M_3) and b_4 = 0".into()),
        Some(b) => Err(format!("b_4 = {b}")),
        None => Err(format!("4 not in Λ = {:?}", s.lambdas())),
    }
}

fn poly_bernoulli_anchor() -> Outcome {
    let b = poly_bernoulli(9, 9).map_err(|e| e.to_string())?;
    let expected = BigUint::from(44_222_780_245_622u64);
    let half = &b / 2u32;
    if b == expected && half == BigUint::from(22_111_390_122_811u64) {
        Ok(format!("B(9,9) = {b}, half = {half}"))
    } else {
        Err(format!("B(9,9) = {b}"))
    }
}

fn oracle_equivalence() -> Outcome {
    let specs = [
        "chain:0", "chain:1", "chain:2", "chain:3", "chain:1 x chain:1", "cyclic:2", "cyclic:3", "cyclic:4", "mk:2",
        "mk:3",
    ];
    let mut pairs = 0;
    for spec in specs {
        let m = monoid(spec);
        let n_max = 12 / m.size() - 1;
        let seq = TransferMatrix::build(&m).map_err(|e| e.to_string())?.count_sequence(n_max);
        for n in 0..=n_max {
            let oracle = brute_force_submonoid_count(&m, n).map_err(|e| e.to_string())?;
            if seq.values[n] != oracle {
                return Err(format!("{spec}, n={n}: pipeline {} vs oracle {oracle}", seq.values[n]));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (M, n) pairs agree"))
}

fn closed_forms() -> Outcome {
    // (a) poly-Bernoulli against chain products.
    for m in 1..=4 {
        let seq = transfer(&format!("chain:{}", m - 1)).count_sequence(3);
        for n in 1..=4 {
            let b = poly_bernoulli(m, n).map_err(|e| e.to_string())?;
            if &b / 2u32 != seq.values[n - 1] || &b % 2u32 != BigUint::from(0u32) {
                return Err(format!("(a) B({m},{n}) = {b}, count {}", seq.values[n - 1]));
            }
        }
    }
    // (b) chain coefficients against the Vandermonde solve.
    for m in 0..=6 {
        let s = Spectrum::compute(&transfer(&format!("chain:{m}"))).map_err(|e| e.to_string())?;
        for (&j, b) in s.lambdas().iter().zip(s.b()) {
            let closed = chain_b_coefficient(m, j as usize).map_err(|e| e.to_string())?;
            if closed != *b {
                return Err(format!("(b) m={m}, j={j}: closed {closed}, solved {b}"));
            }
        }
    }
    // (c) groups: chain counts of the subgroup lattice.
    for spec in ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:6", "cyclic:2 x cyclic:2"] {
        let m = monoid(spec);
        let lattice = SubmonoidLattice::new(&m).map_err(|e| e.to_string())?;
        let c = chain_counts(&lattice.inclusion_order().map_err(|e| e.to_string())?);
        let seq = TransferMatrix::from_lattice(lattice).map_err(|e| e.to_string())?.count_sequence(10);
        for n in 0..=10 {
            if abelian_group_count(&c, n) != seq.values[n] {
                return Err(format!("(c) {spec}, n={n}"));
            }
        }
    }
    // (d) eigenvalue sets.
    let check = |spec: String, expected: Vec<u64>| -> Result<(), String> {
        let got = eigenvalues(&transfer(&spec)).map_err(|e| e.to_string())?;
        if got == expected {
            Ok(())
        } else {
            Err(format!("(d) {spec}: {got:?} vs {expected:?}"))
        }
    };
    for m in 0..=6 {
        check(format!("chain:{m}"), lambda_chain(m))?;
    }
    for m in 1..=4 {
        check(format!("chain:{m} x chain:1"), lambda_chain_x1(m).map_err(|e| e.to_string())?)?;
    }
    for k in 1..=5 {
        check(format!("mk:{k}"), lambda_mk(k).map_err(|e| e.to_string())?)?;
    }
    Ok("(a) m,n ≤ 4; (b) m ≤ 6; (c) five groups, n ≤ 10; (d) chains m ≤ 6, [m]x[1] 1 ≤ m ≤ 4, M_k k ≤ 5".into())
}

/// Idempotent monoids used by the recurrence and asymptotic checks.
fn idempotent_test_set() -> Vec<String> {
    let mut specs: Vec<String> = ["chain:0", "chain:1", "chain:2", "chain:3", "mk:2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for entry in golden_entries().expect("bundled table") {
        if !entry.slow || slow_enabled() {
            specs.push(entry.monoid);
        }
    }
    specs
}

fn recurrence() -> Outcome {
    let specs = idempotent_test_set();
    for spec in &specs {
        let w = transfer(spec);
        let lambdas = eigenvalues(&w).map_err(|e| e.to_string())?;
        let seq = w.count_sequence(2 * lambdas.len() - 1);
        let check = verify_recurrence(&lambdas, &seq.values).map_err(|e| format!("{spec}: {e}"))?;
        if !check.holds {
            return Err(format!("{spec}: fails at {:?}", check.first_violation));
        }
    }
    Ok(format!("{} monoids", specs.len()))
}

fn transfer_iso() -> Outcome {
    let limits = Limits::default();
    for spec in ["chain:1", "chain:2", "chain:1 x chain:1", "chain:1 x chain:2", "mk:3"] {
        let m = monoid(spec);
        let lattice = FiniteLattice::from_monoid(&m).map_err(|e| e.to_string())?;
        let report = verify_graph_isomorphism(&lattice, &limits).map_err(|e| e.to_string())?;
        if !report.holds() {
            return Err(format!("{spec}: {report:?}"));
        }
        let st = st_count_sequence(&lattice, 3, &limits).map_err(|e| e.to_string())?;
        let g = TransferMatrix::build(&m).map_err(|e| e.to_string())?.count_sequence(3);
        if st != g {
            return Err(format!("{spec}: ST counts {:?}, submonoid counts {:?}", st.values, g.values));
        }
    }
    Ok("five lattices: χ bijective, order reversing, weights equal; counts agree for n ≤ 3".into())
}

fn asymptotics() -> Outcome {
    const TOL: f64 = 1e-3;
    let mut failures = Vec::new();
    let specs = idempotent_test_set();
    for spec in &specs {
        let w = transfer(spec);
        let top = w.entry(w.lattice().top(), w.lattice().top()).to_u64().expect("small diagonal");
        let s = Spectrum::compute(&w).map_err(|e| e.to_string())?;
        let b_max = rational_to_f64(s.dominant_coefficient().expect("nonempty spectrum"));
        let seq = w.count_sequence(40);
        let r30 = growth_ratio(&seq.values[30], top, 30);
        let r40 = growth_ratio(&seq.values[40], top, 40);
        let drift = ((r40 - r30) / r40).abs();
        let off = ((r40 - b_max) / b_max).abs();
        if drift >= TOL || off >= TOL || s.lambdas().last() != Some(&top) {
            failures.push(format!("{spec} (drift {drift:.2e}, distance to b_max {off:.2e})"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} monoids within 1e-3", specs.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn chain_eigenmatrix() -> Outcome {
    for m in 0..=5 {
        let e = ChainEigenmatrix::new(m).map_err(|e| e.to_string())?;
        if !e.diagonalizes() {
            return Err(format!("m={m}: Q⁻¹WQ is not diag(#A+1)"));
        }
        let members = e.transfer().lattice().members().to_vec();
        for (a, v) in members.iter().zip(e.inverse_times_ones()) {
            if v != half_factorial(a.len() + 1) {
                return Err(format!("m={m}, A={a:?}: (Q⁻¹1)_A = {v}"));
            }
        }
    }
    Ok("m ≤ 5".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "transfer matrix of [1]x[1] matches the reference", reference_matrix, Duration::from_secs(1)),
        (2, "spectral table reproduction", appendix, Duration::from_secs(600)),
        (3, "b_4(M_3) = 0", m3_zero, Duration::from_secs(60)),
        (4, "poly-Bernoulli anchor B(9,9)", poly_bernoulli_anchor, Duration::from_secs(1)),
        (5, "oracle equivalence", oracle_equivalence, Duration::from_secs(120)),
        (6, "closed-form cross-checks", closed_forms, Duration::from_secs(600)),
        (7, "linear recurrence from Λ", recurrence, Duration::from_secs(600)),
        (8, "transfer-system isomorphism", transfer_iso, Duration::from_secs(300)),
        (9, "S_n / w(P,P)^n converges to b_max", asymptotics, Duration::from_secs(600)),
        (10, "chain eigenmatrix", chain_eigenmatrix, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, budget {budget:?}")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2}: {status} {name} [{elapsed:.2?}] {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
