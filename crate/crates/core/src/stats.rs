//! Spearman rank correlation with average-rank tie handling.

use std::cmp::Ordering;

use serde::Serialize;
use statrs::function::beta::beta_reg;

use crate::metrics::{AuthorMetrics, Measure};

/// Correlations with `p` below this are flagged significant.
pub const SIGNIFICANCE_LEVEL: f64 = 0.01;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq, Serialize)]
pub enum StatsError {
    #[error("input lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} observations, got {got}")]
    TooFewObservations { needed: usize, got: usize },
    #[error("input is constant; rank correlation is undefined")]
    DegenerateInput,
}

/// Ranks starting at 1 for the smallest value; tied values share the mean of their ranks.
pub fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]).then(a.cmp(&b)));
    let mut ranks = vec![0.0; xs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && xs[order[end]].total_cmp(&xs[order[start]]) == Ordering::Equal {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let shared = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = shared;
        }
        start = end;
    }
    ranks
}

/// Pearson correlation of two average-rank vectors.
///
/// Doubled ranks are integers, so the co-moment sums are computed exactly; perfectly
/// (anti-)aligned rankings give exactly ±1.
fn pearson_of_ranks(rx: &[f64], ry: &[f64]) -> Option<f64> {
    let n = rx.len() as i128;
    let doubled = |r: &[f64]| -> Vec<i128> { r.iter().map(|&v| (v * 2.0).round() as i128).collect() };
    let (x, y) = (doubled(rx), doubled(ry));
    let (sx, sy): (i128, i128) = (x.iter().sum(), y.iter().sum());
    let sxy: i128 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
    let sxx: i128 = x.iter().map(|a| a * a).sum();
    let syy: i128 = y.iter().map(|b| b * b).sum();
    let cov = n * sxy - sx * sy;
    let var_x = n * sxx - sx * sx;
    let var_y = n * syy - sy * sy;
    if var_x == 0 || var_y == 0 {
        return None;
    }
    if let Some(prod) = var_x.checked_mul(var_y) {
        if cov.checked_mul(cov) == Some(prod) {
            return Some(cov.signum() as f64);
        }
    }
    let rho = cov as f64 / ((var_x as f64).sqrt() * (var_y as f64).sqrt());
    Some(rho.clamp(-1.0, 1.0))
}

/// Two-tailed p-value of a correlation coefficient under the t approximation with `n - 2`
/// degrees of freedom.
pub fn correlation_p_value(rho: f64, n: usize) -> f64 {
    if rho.abs() >= 1.0 || n <= 2 {
        return if rho.abs() >= 1.0 { 0.0 } else { 1.0 };
    }
    let df = (n - 2) as f64;
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    student_t_two_tailed(t, df)
}

/// `P(|T| >= |t|)` for Student's t with `df` degrees of freedom.
pub fn student_t_two_tailed(t: f64, df: f64) -> f64 {
    let x = df / (df + t * t);
    beta_reg(df / 2.0, 0.5, x).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Correlation {
    pub rho: f64,
    pub p_value: f64,
    pub n: usize,
}

impl Correlation {
    pub fn is_significant(&self) -> bool {
        self.p_value < SIGNIFICANCE_LEVEL
    }
}

/// Spearman's rho as the Pearson correlation of average ranks, with its two-tailed p-value.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<Correlation, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(StatsError::TooFewObservations {
            needed: 2,
            got: xs.len(),
        });
    }
    let rho = pearson_of_ranks(&average_ranks(xs), &average_ranks(ys)).ok_or(StatsError::DegenerateInput)?;
    Ok(Correlation {
        rho,
        p_value: correlation_p_value(rho, xs.len()),
        n: xs.len(),
    })
}

/// One capital-vs-performance pair. A constant column yields `Err(DegenerateInput)` for that
/// pair only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationResult {
    pub measure_x: Measure,
    pub measure_y: Measure,
    pub n: usize,
    pub outcome: Result<Correlation, StatsError>,
}

impl CorrelationResult {
    pub fn rho(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|c| c.rho)
    }

    pub fn p_value(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|c| c.p_value)
    }

    pub fn is_significant(&self) -> bool {
        self.outcome.as_ref().is_ok_and(Correlation::is_significant)
    }
}

/// Every capital measure against every performance measure: 7 x 2 = 14 rows, capital-major.
pub fn correlation_table(metrics: &[AuthorMetrics]) -> Result<Vec<CorrelationResult>, StatsError> {
    if metrics.len() < 3 {
        return Err(StatsError::TooFewObservations {
            needed: 3,
            got: metrics.len(),
        });
    }
    let column = |m: Measure| -> Vec<f64> { metrics.iter().map(|row| row.value(m)).collect() };
    let performance: Vec<(Measure, Vec<f64>)> = Measure::PERFORMANCE.iter().map(|&m| (m, column(m))).collect();
    let mut out = Vec::with_capacity(Measure::CAPITAL.len() * performance.len());
    for capital in Measure::CAPITAL {
        let xs = column(capital);
        for (perf, ys) in &performance {
            out.push(CorrelationResult {
                measure_x: capital,
                measure_y: *perf,
                n: metrics.len(),
                outcome: spearman(&xs, ys),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AuthorId;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn ranks_examples() {
        assert_eq!(average_ranks(&[10.0, 20.0, 30.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(average_ranks(&[5.0, 5.0]), vec![1.5, 1.5]);
        // sorted: 1 (rank 1), 2 (rank 2), 3,3 (ranks 3,4 -> 3.5)
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn spearman_examples() {
        let xs = [1.0, 4.0, 9.0, 2.5];
        assert!((spearman(&xs, &xs).unwrap().rho - 1.0).abs() < 1e-15);
        let inc = [1.0, 2.0, 3.0, 4.0, 5.0];
        let dec = [5.0, 4.0, 3.0, 2.0, 1.0];
        let c = spearman(&inc, &dec).unwrap();
        assert!((c.rho + 1.0).abs() < 1e-15);
        assert_eq!(c.p_value, 0.0);
        // d = [0, -1, 1, -1, 1], sum d^2 = 4; 1 - 6*4/(5*24) = 0.8
        let c = spearman(&inc, &[1.0, 3.0, 2.0, 5.0, 4.0]).unwrap();
        assert!((c.rho - 0.8).abs() < 1e-12);
        assert_eq!(c.n, 5);
    }

    #[test]
    fn spearman_errors() {
        assert_eq!(spearman(&[1.0, 2.0], &[1.0]), Err(StatsError::LengthMismatch(2, 1)));
        assert_eq!(
            spearman(&[1.0], &[1.0]),
            Err(StatsError::TooFewObservations { needed: 2, got: 1 })
        );
        assert_eq!(
            spearman(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(StatsError::DegenerateInput)
        );
        assert_eq!(
            spearman(&[1.0, 2.0, 3.0], &[0.0, 0.0, 0.0]),
            Err(StatsError::DegenerateInput)
        );
    }

    #[test]
    fn t_distribution_reference_values() {
        // Two-tailed p = I_{df/(df+t^2)}(df/2, 1/2), evaluated at 40 significant digits.
        let table = [
            (0.5, 3.0, 0.651_447_964_848_151),
            (1.0, 1.0, 0.5),
            (2.0, 5.0, 0.101_939_478_829_858_36),
            (2.449_489_742_783_178, 18.0, 0.024_769_558_804_109_704),
            (3.5, 30.0, 0.001_476_807_437_644_253_1),
            (1.96, 1000.0, 0.050_273_184_955_748_72),
            (0.1, 9998.0, 0.920_346_330_432_067_1),
            (5.0, 100.0, 2.450_173_413_503_800_4e-6),
        ];
        for (t, df, expected) in table {
            let p = student_t_two_tailed(t, df);
            assert!((p - expected).abs() < 1e-10, "t={t} df={df}: {p} vs {expected}");
        }
    }

    fn row(id: u32, degree: u32, citations: u64, h: u32) -> AuthorMetrics {
        AuthorMetrics {
            author_id: AuthorId(id),
            citation_count: citations,
            h_index: h,
            degree,
            weighted_degree: u64::from(degree),
            avg_tie_strength: BigRational::zero(),
            effectiveness: BigRational::zero(),
            ego_betweenness: BigRational::zero(),
            power_diversity: 0,
            power_tie_diversity: 0,
        }
    }

    #[test]
    fn table_shape_and_degenerate_pairs() {
        let same: Vec<_> = (0..5).map(|i| row(i, 1, 1, 1)).collect();
        let table = correlation_table(&same).unwrap();
        assert_eq!(table.len(), 14);
        assert!(table.iter().all(|r| r.outcome == Err(StatsError::DegenerateInput)));
        assert!(table.iter().all(|r| !r.is_significant()));

        let monotone: Vec<_> = (0..6).map(|i| row(i, i + 1, 10 * u64::from(i), i % 2)).collect();
        let table = correlation_table(&monotone).unwrap();
        let deg_cit = table
            .iter()
            .find(|r| r.measure_x == Measure::Degree && r.measure_y == Measure::CitationCount)
            .unwrap();
        assert!((deg_cit.rho().unwrap() - 1.0).abs() < 1e-12);
        assert!(deg_cit.is_significant());

        assert_eq!(
            correlation_table(&monotone[..2]),
            Err(StatsError::TooFewObservations { needed: 3, got: 2 })
        );
    }

    fn distinct_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (3usize..30)
            .prop_flat_map(|n| {
                (
                    prop::collection::vec(-50i32..50, n),
                    prop::collection::vec(-50i32..50, n),
                )
            })
            .prop_filter("needs two distinct values per side", |(x, y)| {
                x.iter().any(|v| *v != x[0]) && y.iter().any(|v| *v != y[0])
            })
            .prop_map(|(x, y)| {
                (
                    x.into_iter().map(f64::from).collect(),
                    y.into_iter().map(f64::from).collect(),
                )
            })
    }

    proptest! {
        #[test]
        fn rank_sum_is_triangular(xs in prop::collection::vec(-20i32..20, 1..40)) {
            let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
            let n = xs.len() as f64;
            prop_assert!((average_ranks(&xs).iter().sum::<f64>() - n * (n + 1.0) / 2.0).abs() < 1e-9);
        }

        #[test]
        fn spearman_is_symmetric_and_bounded((xs, ys) in distinct_pair()) {
            let a = spearman(&xs, &ys).unwrap();
            let b = spearman(&ys, &xs).unwrap();
            prop_assert!((a.rho - b.rho).abs() < 1e-12);
            prop_assert!(a.rho.abs() <= 1.0);
            prop_assert!((0.0..=1.0).contains(&a.p_value));
        }

        #[test]
        fn spearman_invariant_under_monotone_maps((xs, ys) in distinct_pair()) {
            let base = spearman(&xs, &ys).unwrap().rho;
            let maps: [fn(f64) -> f64; 3] = [|v| v * 3.0, |v| v + 100.0, |v| v * v * v];
            for f in maps {
                let fx: Vec<f64> = xs.iter().map(|&v| f(v)).collect();
                prop_assert!((spearman(&fx, &ys).unwrap().rho - base).abs() < 1e-12);
            }
        }

        #[test]
        fn p_value_decreases_with_abs_rho(n in 3usize..200, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(correlation_p_value(hi, n) <= correlation_p_value(lo, n) + 1e-15);
            prop_assert!((correlation_p_value(-hi, n) - correlation_p_value(hi, n)).abs() < 1e-15);
        }
    }
}
