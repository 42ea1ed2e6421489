//! Spectral closed forms for idempotent monoids (finite join-semilattices).
//!
//! For idempotent `P` the matrix `W(P)` is diagonalizable: distinct
//! submonoids with equal antichain counts are incomparable, so every block of
//! equal diagonal entries is itself diagonal. Consequently
//! `S_n = Σ_λ b_λ λⁿ` over the distinct diagonal entries `Λ`, and the `b_λ`
//! are pinned down by the first `|Λ|` counts through a Vandermonde system.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve_fraction_free;
use crate::transfer::TransferMatrix;

/// Distinct eigenvalues of `W(P)` in ascending order.
///
/// Fails with [`Error::NotIdempotent`] unless the ambient monoid is
/// idempotent, since only then is the closed form guaranteed.
pub fn eigenvalues(w: &TransferMatrix) -> Result<Vec<u64>> {
    let m = w.lattice().monoid();
    if let Some(x) = (0..m.size()).find(|&x| m.op(x, x) != x) {
        return Err(Error::NotIdempotent { x });
    }
    let mut lambdas: Vec<u64> = w
        .diagonal()
        .iter()
        .map(|d| d.to_u64().expect("ideal counts fit in 64 bits"))
        .collect();
    lambdas.sort_unstable();
    lambdas.dedup();
    debug_assert!(blocks_are_diagonal(w), "equal diagonal entries must be incomparable");
    Ok(lambdas)
}

/// Diagonalizability criterion for a triangular matrix: any two distinct
/// indices sharing a diagonal value have a zero entry between them.
pub fn blocks_are_diagonal(w: &TransferMatrix) -> bool {
    let d = w.diagonal();
    (0..w.len()).all(|a| (0..a).all(|b| d[a] != d[b] || w.entry(a, b).is_zero()))
}

/// Solves `Σ_j b_j λ_jʳ = S_r` for `r < k`.
pub fn solve_b_coefficients(lambdas: &[u64], prefix: &[BigUint]) -> Result<Vec<BigRational>> {
    let k = lambdas.len();
    if prefix.len() < k {
        return Err(Error::SequenceTooShort {
            needed: k,
            got: prefix.len(),
        });
    }
    let mut sorted = lambdas.to_vec();
    sorted.sort_unstable();
    if let Some(dup) = sorted.windows(2).find(|p| p[0] == p[1]) {
        return Err(Error::DegenerateSystem { lambda: dup[0] });
    }
    let vandermonde: Vec<Vec<BigInt>> = (0..k)
        .map(|r| lambdas.iter().map(|&l| BigInt::from(l).pow(r as u32)).collect())
        .collect();
    let rhs: Vec<BigInt> = prefix[..k].iter().map(|s| BigInt::from(s.clone())).collect();
    solve_fraction_free(&vandermonde, &rhs).ok_or(Error::DegenerateSystem { lambda: 0 })
}

/// `∏_{μ≠λ} (μ − λ)` for each `λ`.
fn gap_products(lambdas: &[u64]) -> Vec<BigInt> {
    lambdas
        .iter()
        .map(|&l| {
            lambdas
                .iter()
                .filter(|&&mu| mu != l)
                .map(|&mu| BigInt::from(mu) - BigInt::from(l))
                .product()
        })
        .collect()
}

/// `b_λ · ∏_{μ≠λ} (μ − λ)`, asserted integral.
pub fn normalized_coefficients(lambdas: &[u64], b: &[BigRational]) -> Result<Vec<BigInt>> {
    lambdas
        .iter()
        .zip(b)
        .zip(gap_products(lambdas))
        .map(|((&l, b), gaps)| {
            let v = b * BigRational::from_integer(gaps);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NonIntegerNormalization { lambda: l })
            }
        })
        .collect()
}

/// `Λ`, the coefficients `b_λ`, and their normalizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    lambdas: Vec<u64>,
    b: Vec<BigRational>,
    normalized: Vec<BigInt>,
}

impl Spectrum {
    pub fn compute(w: &TransferMatrix) -> Result<Self> {
        let lambdas = eigenvalues(w)?;
        let prefix = w.count_sequence(lambdas.len() - 1).values;
        Self::from_prefix(lambdas, &prefix)
    }

    pub fn from_prefix(lambdas: Vec<u64>, prefix: &[BigUint]) -> Result<Self> {
        let b = solve_b_coefficients(&lambdas, prefix)?;
        Self::from_parts(lambdas, b)
    }

    pub fn from_parts(lambdas: Vec<u64>, b: Vec<BigRational>) -> Result<Self> {
        assert_eq!(lambdas.len(), b.len(), "one coefficient per eigenvalue");
        let normalized = normalized_coefficients(&lambdas, &b)?;
        Ok(Spectrum {
            lambdas,
            b,
            normalized,
        })
    }

    pub fn lambdas(&self) -> &[u64] {
        &self.lambdas
    }

    pub fn b(&self) -> &[BigRational] {
        &self.b
    }

    pub fn b_of(&self, lambda: u64) -> Option<&BigRational> {
        self.lambdas.iter().position(|&l| l == lambda).map(|i| &self.b[i])
    }

    pub fn normalized(&self) -> &[BigInt] {
        &self.normalized
    }

    /// `b_λ · ∏_{μ≠λ} (λ − μ)`: differs from [`Spectrum::normalized`] by the
    /// sign `(-1)^{|Λ|-1}`.
    pub fn normalized_reversed_gaps(&self) -> Vec<BigInt> {
        let flip = self.lambdas.len().is_multiple_of(2);
        self.normalized
            .iter()
            .map(|v| if flip { -v } else { v.clone() })
            .collect()
    }

    /// `Σ_λ b_λ λⁿ`, asserted integral.
    pub fn closed_form_eval(&self, n: usize) -> Result<BigInt> {
        let total: BigRational = self
            .lambdas
            .iter()
            .zip(&self.b)
            .map(|(&l, b)| b * BigRational::from_integer(BigInt::from(l).pow(n as u32)))
            .sum();
        if total.is_integer() {
            Ok(total.to_integer())
        } else {
            Err(Error::NonIntegerCount { n })
        }
    }

    /// `b` of the largest eigenvalue, the limit of `S_n / λ_maxⁿ`.
    pub fn dominant_coefficient(&self) -> Option<&BigRational> {
        self.b.last()
    }

    pub fn rows(&self) -> Vec<SpectrumRow> {
        self.lambdas
            .iter()
            .zip(&self.b)
            .zip(&self.normalized)
            .map(|((&lambda, b), normalized)| SpectrumRow {
                lambda,
                b: format_rational(b),
                normalized: normalized.to_string(),
            })
            .collect()
    }
}

/// One serialized spectrum row; `b` is `"p/q"` in lowest terms (or `"p"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub lambda: u64,
    pub b: String,
    pub normalized: String,
}

/// `p/q` in lowest terms with `q > 0`; integers print without `/1`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Coefficients `a_0 = 1, a_1, ..., a_k` of `∏_λ (1 − λx)`.
pub fn characteristic_coefficients(lambdas: &[u64]) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for &l in lambdas {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * BigInt::from(l);
        }
        poly = next;
    }
    poly
}

/// Outcome of checking `S_n + Σ_{i≥1} a_i S_{n-i} = 0` for `|Λ| ≤ n < len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCheck {
    pub holds: bool,
    pub first_violation: Option<usize>,
    pub coefficients: Vec<BigInt>,
}

pub fn verify_recurrence(lambdas: &[u64], sequence: &[BigUint]) -> Result<RecurrenceCheck> {
    let k = lambdas.len();
    if sequence.len() < 2 * k {
        return Err(Error::SequenceTooShort {
            needed: 2 * k,
            got: sequence.len(),
        });
    }
    let a = characteristic_coefficients(lambdas);
    let first_violation = (k..sequence.len()).find(|&n| {
        let lhs: BigInt = a
            .iter()
            .enumerate()
            .map(|(i, ai)| ai * BigInt::from(sequence[n - i].clone()))
            .sum();
        !lhs.is_zero()
    });
    Ok(RecurrenceCheck {
        holds: first_violation.is_none(),
        first_violation,
        coefficients: a,
    })
}

/// `F(x) = f(x) / ∏_{λ∈Λ} (1 − λx)` with an integer numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOgf {
    pub numerator: Vec<BigInt>,
    pub denominator_roots: Vec<u64>,
}

impl RationalOgf {
    /// Coefficients of the expansion through degree `degree`.
    pub fn series(&self, degree: usize) -> Vec<BigInt> {
        let d = characteristic_coefficients(&self.denominator_roots);
        let mut g: Vec<BigInt> = Vec::with_capacity(degree + 1);
        for n in 0..=degree {
            let mut v = self.numerator.get(n).cloned().unwrap_or_default();
            for i in 1..d.len().min(n + 1) {
                v -= &d[i] * &g[n - i];
            }
            g.push(v);
        }
        g
    }

    pub fn numerator_degree(&self) -> usize {
        self.numerator
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }
}

impl fmt::Display for RationalOgf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut first = true;
        for (i, c) in self.numerator.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => f.write_str("x")?,
                1 => write!(f, "{mag}x")?,
                _ if mag.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")/(")?;
        for l in &self.denominator_roots {
            write!(f, "(1 - {l}x)")?;
        }
        f.write_str(")")
    }
}

/// Rational generating function of `S_n`, verified against the series
/// through degree `2|Λ|`. Missing terms are taken from `w`.
pub fn ogf(w: &TransferMatrix, spectrum: &Spectrum, sequence: &[BigUint]) -> Result<RationalOgf> {
    let k = spectrum.lambdas().len();
    let needed = 2 * k + 1;
    let seq: Vec<BigUint> = if sequence.len() >= needed {
        sequence.to_vec()
    } else {
        w.count_sequence(needed - 1).values
    };
    let d = characteristic_coefficients(spectrum.lambdas());
    let numerator: Vec<BigInt> = (0..k)
        .map(|n| {
            (0..=n)
                .map(|i| &d[i] * BigInt::from(seq[n - i].clone()))
                .sum()
        })
        .collect();
    let f = RationalOgf {
        numerator,
        denominator_roots: spectrum.lambdas().to_vec(),
    };
    let expansion = f.series(needed - 1);
    if let Some(degree) = (0..needed).find(|&n| expansion[n] != BigInt::from(seq[n].clone())) {
        return Err(Error::SeriesMismatch { degree });
    }
    Ok(f)
}

/// `S_n / λ_maxⁿ` computed exactly, then rounded.
pub fn growth_ratio(value: &BigUint, base: u64, n: usize) -> f64 {
    let q = BigRational::new(
        BigInt::from(value.clone()),
        BigInt::from(base).pow(n as u32),
    );
    rational_to_f64(&q)
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    // Scale so both parts fit comfortably in an f64 before dividing.
    let (n, d) = (q.numer(), q.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}
