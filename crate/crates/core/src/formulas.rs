//! Closed-form counts and inequality checks in exact unbounded-integer
//! arithmetic. Hypothesis checks are exact rational comparisons written as
//! cross-multiplied integer inequalities; no floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::digraph::Orientation;

#[derive(Debug, Error)]
pub enum FormulaError {
    #[error("need 1 <= m <= n, got n={n}, m={m}")]
    CarRange { n: u64, m: u64 },
    #[error("need 2 <= j <= m, got j={j}, m={m}")]
    PairIndex { j: u64, m: u64 },
    #[error("need r >= 2, got r={r}")]
    Ratio { r: u64 },
}

/// Falling factorial `x (x-1) ... (x-k+1)`; zero as soon as a factor is.
pub fn falling(x: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        if i >= x {
            return BigUint::zero();
        }
        acc *= x - i;
    }
    acc
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn rising(x: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= x + i;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(n-m+1)(n+1)^(m-1)`: parking functions of m cars on the directed path.
pub fn classical_count(n: u64, m: u64) -> Result<BigUint, FormulaError> {
    check_car_range(n, m)?;
    Ok(BigUint::from(n - m + 1) * BigUint::from(n + 1).pow((m - 1) as u32))
}

/// Parking functions of m cars on the n-vertex star oriented toward the
/// center: `n^(m falling) + C(m,2) (n-1)^((m-1) falling)`.
pub fn sink_star_count(n: u64, m: u64) -> Result<BigUint, FormulaError> {
    check_car_range(n, m)?;
    Ok(falling(n, m) + binomial(m, 2) * falling(n - 1, m - 1))
}

/// Parking functions of m cars on the n-vertex star oriented away from the
/// center: `sum_i C(m,i) (n-1)^((m-i) falling)`.
pub fn source_star_count(n: u64, m: u64) -> Result<BigUint, FormulaError> {
    check_car_range(n, m)?;
    let mut acc = BigUint::zero();
    for i in 0..=m {
        acc += binomial(m, i) * falling(n - 1, m - i);
    }
    Ok(acc)
}

/// Established envelope for tree parking-function counts:
/// (sink-tree lower bound, source-tree lower bound, shared upper bound).
pub fn bounds(n: u64, m: u64) -> Result<(BigUint, BigUint, BigUint), FormulaError> {
    Ok((
        sink_star_count(n, m)?,
        source_star_count(n, m)?,
        classical_count(n, m)?,
    ))
}

/// Completions of a fixed arrangement of the first `j` cars on a star, after
/// the designated pair is placed. Source side sums over how many later cars
/// avoid the root; sink side seats the pair and then the rest injectively.
pub fn star_pair_partition(
    n: u64,
    m: u64,
    j: u64,
    side: Orientation,
) -> Result<BigUint, FormulaError> {
    check_car_range(n, m)?;
    if j < 2 || j > m {
        return Err(FormulaError::PairIndex { j, m });
    }
    Ok(match side {
        Orientation::Source => {
            let mut acc = BigUint::zero();
            for l in 0..=(m - j) {
                acc += binomial(m - j, l) * falling(n - j + 1, l);
            }
            acc
        }
        Orientation::Sink => BigUint::from(n - j + 1) * falling(n - j, m - j),
    })
}

/// Two exactly evaluated sides of an inequality, plus whether the inequality
/// holds and whether the inputs satisfied its hypotheses. Out-of-hypothesis
/// evaluation is allowed so sweeps can map where an inequality stops holding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
    pub in_hypothesis: bool,
}

/// For `0 <= a <= b-1`, `r(a+1) <= b+1`, `r >= 2`:
/// `r * sum_l C(a,l) (b+1)^(l falling) <= (b+1) b^(a falling)`,
/// with equality only at `a = 0`.
pub fn lemma_precise_holds(a: u64, b: u64, r: u64) -> Comparison {
    let in_hypothesis = r >= 2 && a < b && r * (a + 1) <= b + 1;
    let mut sum = BigUint::zero();
    for l in 0..=a {
        sum += binomial(a, l) * falling(b + 1, l);
    }
    let lhs = BigUint::from(r) * sum;
    let rhs = BigUint::from(b + 1) * falling(b, a);
    let holds = lhs <= rhs;
    Comparison {
        lhs,
        rhs,
        holds,
        in_hypothesis,
    }
}

/// For `0 <= a <= b-1`, `3a <= 2b`:
/// `sum_l C(a,l) (b+1)^(l falling) < (b+1) b^(a falling)` (strict).
pub fn lemma_premaxbound_holds(a: u64, b: u64) -> Comparison {
    let in_hypothesis = a < b && 3 * a <= 2 * b;
    let mut lhs = BigUint::zero();
    for l in 0..=a {
        lhs += binomial(a, l) * falling(b + 1, l);
    }
    let rhs = BigUint::from(b + 1) * falling(b, a);
    let holds = lhs < rhs;
    Comparison {
        lhs,
        rhs,
        holds,
        in_hypothesis,
    }
}

/// Star comparison at the case level: the multi-collision side against the
/// single-pair side. With `r` given the hypothesis is `3 < m`, `r m <= n+1`,
/// `r >= 2`, and the left side is scaled by `r`; without `r` the hypothesis
/// is `3 < m`, `3m <= 2n`. `holds` reports the strict inequality.
pub fn thm_star_comparison(n: u64, m: u64, r: Option<u64>) -> Comparison {
    let scale = r.unwrap_or(1);
    let in_hypothesis = match r {
        Some(r) => r >= 2 && m > 3 && r * m <= n + 1,
        None => m > 3 && 3 * m <= 2 * n,
    };
    let mut sum = BigUint::zero();
    if n >= 1 {
        for i in 2..=m {
            sum += binomial(m, i) * falling(n - 1, m - i);
        }
    }
    let lhs = BigUint::from(scale) * sum;
    let rhs = if n >= 1 {
        binomial(m, 2) * falling(n - 1, m - 1)
    } else {
        BigUint::zero()
    };
    let holds = lhs < rhs;
    Comparison {
        lhs,
        rhs,
        holds,
        in_hypothesis,
    }
}

/// A named formula evaluation, tagged with what produced it.
#[derive(Debug, Clone)]
pub struct FormulaValue {
    pub value: BigUint,
    pub provenance: String,
}

fn check_car_range(n: u64, m: u64) -> Result<(), FormulaError> {
    if m < 1 || m > n {
        Err(FormulaError::CarRange { n, m })
    } else {
        Ok(())
    }
}
