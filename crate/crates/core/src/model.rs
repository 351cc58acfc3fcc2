//! Domain types for binary datasets and interaction-parameter matrices,
//! plus pseudo- and exact-likelihood evaluation with analytic gradients.
//!
//! The joint density over p binary variables is
//! `f(x) = exp(sum_j theta_jj x_j + sum_{j<j'} theta_jj' x_j x_j') / Z`,
//! where the diagonal of the symmetric parameter matrix stores main effects
//! and off-diagonals store pairwise interactions. The tractable surrogate
//! used for fitting is the pseudo-log-likelihood built from the conditional
//! logits of each variable given the rest.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::num::{Scalar, log1pexp, sigmoid};

/// Largest p for which 2^p state enumeration is allowed.
pub const ENUMERATION_LIMIT: usize = 20;

/// n x p matrix of {0,1} observations with named columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDataset {
    values: Array2<u8>,
    variable_names: Vec<String>,
}

impl BinaryDataset {
    /// Validates that every entry is 0/1, n >= 1 and that the p column names
    /// are unique.
    pub fn new(values: Array2<u8>, variable_names: Vec<String>) -> Result<Self> {
        let (n, p) = values.dim();
        if n < 1 {
            return Err(Error::InvalidArgument("dataset needs n >= 1".into()));
        }
        if p < 1 {
            return Err(Error::InvalidArgument("dataset needs p >= 1".into()));
        }
        if variable_names.len() != p {
            return Err(Error::DimensionMismatch {
                context: "variable names".into(),
                expected: p,
                found: variable_names.len(),
            });
        }
        for (idx, name) in variable_names.iter().enumerate() {
            if variable_names[..idx].contains(name) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate variable name: {name}"
                )));
            }
        }
        for ((i, j), &v) in values.indexed_iter() {
            if v > 1 {
                return Err(Error::NonBinary {
                    context: format!("row {i}, column {j}"),
                    value: v.to_string(),
                });
            }
        }
        Ok(Self {
            values,
            variable_names,
        })
    }

    /// Build from a flat row-major 0/1 buffer, with auto-generated names.
    pub fn from_rows(n: usize, p: usize, data: Vec<u8>) -> Result<Self> {
        let values = Array2::from_shape_vec((n, p), data)
            .map_err(|e| Error::InvalidArgument(format!("bad shape: {e}")))?;
        Self::new(values, default_names(p))
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn p(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &Array2<u8> {
        &self.values
    }

    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    /// Dataset restricted to the given rows (duplicates allowed, so this also
    /// serves bootstrap resampling).
    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        let p = self.p();
        let mut data = Vec::with_capacity(rows.len() * p);
        for &i in rows {
            if i >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.n(),
                });
            }
            data.extend(self.values.row(i).iter().copied());
        }
        let values = Array2::from_shape_vec((rows.len(), p), data)
            .map_err(|e| Error::InvalidArgument(format!("bad shape: {e}")))?;
        Self::new(values, self.variable_names.clone())
    }

    pub fn column_mean(&self, j: usize) -> f64 {
        let s: u64 = self.values.column(j).iter().map(|&v| v as u64).sum();
        s as f64 / self.n() as f64
    }
}

/// Default column names v1..vp used by the synthetic generators.
pub fn default_names(p: usize) -> Vec<String> {
    (1..=p).map(|j| format!("v{j}")).collect()
}

/// K binary datasets over the same variables.
#[derive(Debug, Clone)]
pub struct CategoryCollection {
    categories: Vec<BinaryDataset>,
    labels: Vec<String>,
}

impl CategoryCollection {
    pub fn new(categories: Vec<BinaryDataset>, labels: Vec<String>) -> Result<Self> {
        if categories.is_empty() {
            return Err(Error::InvalidArgument("need K >= 1 categories".into()));
        }
        if labels.len() != categories.len() {
            return Err(Error::DimensionMismatch {
                context: "category labels".into(),
                expected: categories.len(),
                found: labels.len(),
            });
        }
        let names = categories[0].variable_names();
        for (k, cat) in categories.iter().enumerate().skip(1) {
            if cat.p() != categories[0].p() {
                return Err(Error::DimensionMismatch {
                    context: format!("category {k} variable count"),
                    expected: categories[0].p(),
                    found: cat.p(),
                });
            }
            if let Some(j) = (0..names.len()).find(|&j| cat.variable_names()[j] != names[j]) {
                return Err(Error::InvalidArgument(format!(
                    "category {k} variable names differ from category 0, first mismatch at \
                     column {j}: {} vs {}",
                    cat.variable_names()[j],
                    names[j]
                )));
            }
        }
        Ok(Self { categories, labels })
    }

    pub fn k(&self) -> usize {
        self.categories.len()
    }

    pub fn p(&self) -> usize {
        self.categories[0].p()
    }

    pub fn category(&self, k: usize) -> &BinaryDataset {
        &self.categories[k]
    }

    pub fn categories(&self) -> &[BinaryDataset] {
        &self.categories
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn sample_sizes(&self) -> Vec<usize> {
        self.categories.iter().map(|c| c.n()).collect()
    }

    pub fn variable_names(&self) -> &[String] {
        self.categories[0].variable_names()
    }
}

/// Symmetric p x p parameter matrix on the log-odds scale. The diagonal
/// stores main effects, off-diagonals pairwise interaction effects.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix<F: Scalar> {
    theta: Array2<F>,
}

impl<F: Scalar> InteractionMatrix<F> {
    pub fn zeros(p: usize) -> Self {
        Self {
            theta: Array2::zeros((p, p)),
        }
    }

    /// Validates exact (bit-level) symmetry and finiteness.
    pub fn from_matrix(theta: Array2<F>) -> Result<Self> {
        let (r, c) = theta.dim();
        if r != c {
            return Err(Error::DimensionMismatch {
                context: "interaction matrix".into(),
                expected: r,
                found: c,
            });
        }
        for ((j, l), &v) in theta.indexed_iter() {
            if !v.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite entry at ({j}, {l})"
                )));
            }
            if theta[[l, j]] != v {
                return Err(Error::InvalidArgument(format!(
                    "asymmetric entries at ({j}, {l})"
                )));
            }
        }
        Ok(Self { theta })
    }

    pub fn p(&self) -> usize {
        self.theta.nrows()
    }

    #[inline]
    pub fn get(&self, j: usize, l: usize) -> F {
        self.theta[[j, l]]
    }

    /// Sets both (j, l) and (l, j) so symmetry is preserved bit-for-bit.
    #[inline]
    pub fn set(&mut self, j: usize, l: usize, value: F) {
        self.theta[[j, l]] = value;
        self.theta[[l, j]] = value;
    }

    pub fn as_array(&self) -> &Array2<F> {
        &self.theta
    }

    pub fn max_abs_diff(&self, other: &Self) -> F {
        self.theta
            .iter()
            .zip(other.theta.iter())
            .map(|(&a, &b)| (a - b).abs())
            .fold(F::zero(), F::max)
    }

    /// Number of structurally nonzero off-diagonal pairs (j < l).
    pub fn nonzero_offdiag(&self) -> usize {
        let p = self.p();
        let mut count = 0;
        for j in 0..p {
            for l in (j + 1)..p {
                if self.get(j, l) != F::zero() {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Penalty configuration shared by the solvers: group-l1 weight `lambda`,
/// ridge weight `lambda2` on off-diagonals, and whether main effects take an
/// l1 penalty (they never take the ridge).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PenaltySpec {
    pub lambda: f64,
    pub lambda2: f64,
    #[serde(default)]
    pub penalize_main_effects: bool,
}

impl PenaltySpec {
    pub fn new(lambda: f64, lambda2: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "lambda must be a finite nonnegative real, got {lambda}"
            )));
        }
        if !(lambda2 >= 0.0) || !lambda2.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "lambda2 must be a finite nonnegative real, got {lambda2}"
            )));
        }
        Ok(Self {
            lambda,
            lambda2,
            penalize_main_effects: false,
        })
    }

    pub fn l1(lambda: f64) -> Result<Self> {
        Self::new(lambda, 0.0)
    }
}

fn check_dims(data: &BinaryDataset, theta_p: usize, context: &str) -> Result<()> {
    if data.p() != theta_p {
        return Err(Error::DimensionMismatch {
            context: context.into(),
            expected: data.p(),
            found: theta_p,
        });
    }
    Ok(())
}

fn check_binary_row(x: &[u8]) -> Result<()> {
    for (j, &v) in x.iter().enumerate() {
        if v > 1 {
            return Err(Error::NonBinary {
                context: format!("x[{j}]"),
                value: v.to_string(),
            });
        }
    }
    Ok(())
}

/// Linear predictor of variable j given the rest of the row:
/// theta_jj + sum_{l != j} theta_jl x_l.
pub fn conditional_logit<F: Scalar>(
    theta: &InteractionMatrix<F>,
    x: &[u8],
    j: usize,
) -> Result<F> {
    let p = theta.p();
    if x.len() != p {
        return Err(Error::DimensionMismatch {
            context: "conditional_logit row".into(),
            expected: p,
            found: x.len(),
        });
    }
    if j >= p {
        return Err(Error::IndexOutOfRange { index: j, len: p });
    }
    check_binary_row(x)?;
    let mut eta = theta.get(j, j);
    for l in 0..p {
        if l != j && x[l] == 1 {
            eta += theta.get(j, l);
        }
    }
    Ok(eta)
}

/// All n x p conditional linear predictors for a dataset.
pub(crate) fn linear_predictors<F: Scalar>(
    data: &BinaryDataset,
    theta: &InteractionMatrix<F>,
) -> Array2<F> {
    let n = data.n();
    let p = data.p();
    let x = data.values();
    let mut eta = Array2::zeros((n, p));
    for i in 0..n {
        for j in 0..p {
            let mut e = theta.get(j, j);
            for l in 0..p {
                if l != j && x[[i, l]] == 1 {
                    e += theta.get(j, l);
                }
            }
            eta[[i, j]] = e;
        }
    }
    eta
}

/// Average pseudo-log-likelihood
/// (1/n) sum_i sum_j [x_ij eta_ij - log(1 + exp(eta_ij))].
pub fn pseudo_loglik<F: Scalar>(data: &BinaryDataset, theta: &InteractionMatrix<F>) -> Result<F> {
    check_dims(data, theta.p(), "pseudo_loglik")?;
    let eta = linear_predictors(data, theta);
    Ok(pseudo_loglik_from_eta(data, &eta))
}

pub(crate) fn pseudo_loglik_from_eta<F: Scalar>(data: &BinaryDataset, eta: &Array2<F>) -> F {
    let x = data.values();
    let mut total = F::zero();
    for (idx, &e) in eta.indexed_iter() {
        let term = if x[idx] == 1 { e } else { F::zero() };
        total += term - log1pexp(e);
    }
    total / F::from_f64(data.n() as f64)
}

/// Analytic gradient of [`pseudo_loglik`]; exactly symmetric by construction.
///
/// Off-diagonal (j, l): (1/n) sum_i [2 x_ij x_il - s(eta_ij) x_il - s(eta_il) x_ij];
/// diagonal (j, j): (1/n) sum_i [x_ij - s(eta_ij)].
pub fn pseudo_loglik_grad<F: Scalar>(
    data: &BinaryDataset,
    theta: &InteractionMatrix<F>,
) -> Result<InteractionMatrix<F>> {
    check_dims(data, theta.p(), "pseudo_loglik_grad")?;
    let n = data.n();
    let p = data.p();
    let x = data.values();
    let eta = linear_predictors(data, theta);
    let inv_n = F::one() / F::from_f64(n as f64);
    let mut grad = InteractionMatrix::zeros(p);
    let two = F::from_f64(2.0);
    for j in 0..p {
        let mut d = F::zero();
        for i in 0..n {
            d += F::from_f64(x[[i, j]] as f64) - sigmoid(eta[[i, j]]);
        }
        grad.set(j, j, d * inv_n);
        for l in (j + 1)..p {
            let mut g = F::zero();
            for i in 0..n {
                let xj = x[[i, j]];
                let xl = x[[i, l]];
                if xj == 1 && xl == 1 {
                    g += two;
                }
                if xl == 1 {
                    g -= sigmoid(eta[[i, j]]);
                }
                if xj == 1 {
                    g -= sigmoid(eta[[i, l]]);
                }
            }
            grad.set(j, l, g * inv_n);
        }
    }
    Ok(grad)
}

/// Score of a single binary state under theta:
/// sum_j theta_jj x_j + sum_{j<l} theta_jl x_j x_l, with state bits packed
/// into the low p bits of `state`.
pub(crate) fn state_score<F: Scalar>(theta: &InteractionMatrix<F>, state: usize) -> F {
    let p = theta.p();
    let mut score = F::zero();
    for j in 0..p {
        if state >> j & 1 == 1 {
            score += theta.get(j, j);
            for l in (j + 1)..p {
                if state >> l & 1 == 1 {
                    score += theta.get(j, l);
                }
            }
        }
    }
    score
}

/// Log partition function by log-sum-exp over all 2^p states.
pub(crate) fn log_partition<F: Scalar>(theta: &InteractionMatrix<F>) -> Result<F> {
    let p = theta.p();
    if p > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            p,
            max: ENUMERATION_LIMIT,
        });
    }
    let states = 1usize << p;
    let mut max = F::neg_infinity();
    let mut scores = Vec::with_capacity(states);
    for s in 0..states {
        let v = state_score(theta, s);
        if v > max {
            max = v;
        }
        scores.push(v);
    }
    let mut sum = F::zero();
    for v in scores {
        sum += (v - max).exp();
    }
    Ok(max + sum.ln())
}

/// Average exact log-likelihood (1/n) sum_i log f(x_i), with the partition
/// function computed by full state enumeration. Exists as a small-p oracle;
/// refuses p > 20.
pub fn exact_loglik<F: Scalar>(data: &BinaryDataset, theta: &InteractionMatrix<F>) -> Result<F> {
    check_dims(data, theta.p(), "exact_loglik")?;
    let log_z = log_partition(theta)?;
    let x = data.values();
    let p = data.p();
    let mut total = F::zero();
    for i in 0..data.n() {
        let mut state = 0usize;
        for j in 0..p {
            if x[[i, j]] == 1 {
                state |= 1 << j;
            }
        }
        total += state_score(theta, state) - log_z;
    }
    Ok(total / F::from_f64(data.n() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use ndarray::array;
    use proptest::prelude::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_instance(p: usize, n: usize, seed: u64) -> (BinaryDataset, InteractionMatrix<f64>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<u8> = (0..n * p).map(|_| rng.random_range(0..=1)).collect();
        let data = BinaryDataset::from_rows(n, p, data).unwrap();
        let mut theta = InteractionMatrix::zeros(p);
        for j in 0..p {
            for l in j..p {
                theta.set(j, l, rng.random_range(-1.0..1.0));
            }
        }
        (data, theta)
    }

    #[test]
    fn dataset_rejects_bad_input() {
        assert!(BinaryDataset::from_rows(1, 2, vec![0, 2]).is_err());
        assert!(BinaryDataset::from_rows(0, 2, vec![]).is_err());
        let names = vec!["a".to_string(), "a".to_string()];
        assert!(BinaryDataset::new(array![[0u8, 1]], names).is_err());
    }

    #[test]
    fn interaction_matrix_rejects_asymmetry_and_nonfinite() {
        assert!(InteractionMatrix::from_matrix(array![[0.0, 1.0], [0.5, 0.0]]).is_err());
        assert!(InteractionMatrix::from_matrix(array![[0.0, f64::NAN], [f64::NAN, 0.0]]).is_err());
        assert!(InteractionMatrix::from_matrix(array![[0.0, 1.0], [1.0, 0.0]]).is_ok());
    }

    #[test]
    fn conditional_logit_zero_theta() {
        let theta = InteractionMatrix::<f64>::zeros(3);
        assert_eq!(conditional_logit(&theta, &[1, 0, 1], 1).unwrap(), 0.0);
    }

    #[test]
    fn conditional_logit_main_effect_only() {
        // theta_{1,1} = 1 in 1-based terms is index (0,0) here.
        let mut theta = InteractionMatrix::<f64>::zeros(3);
        theta.set(0, 0, 1.0);
        assert_eq!(conditional_logit(&theta, &[1, 0, 0], 0).unwrap(), 1.0);
    }

    #[test]
    fn conditional_logit_hand_sum() {
        // 1-based theta_{1,2} = 0.7, theta_{1,3} = -0.4, theta_{1,1} = 0.1.
        let mut theta = InteractionMatrix::<f64>::zeros(3);
        theta.set(0, 1, 0.7);
        theta.set(0, 2, -0.4);
        theta.set(0, 0, 0.1);
        let got = conditional_logit(&theta, &[1, 1, 1], 0).unwrap();
        assert_relative_eq!(got, 0.4, max_relative = 1e-12);
    }

    #[test]
    fn conditional_logit_errors() {
        let theta = InteractionMatrix::<f64>::zeros(3);
        assert!(conditional_logit(&theta, &[1, 0, 1], 3).is_err());
        assert!(conditional_logit(&theta, &[1, 0, 2], 0).is_err());
        assert!(conditional_logit(&theta, &[1, 0], 0).is_err());
    }

    #[test]
    fn pseudo_loglik_zero_theta_is_minus_p_log2() {
        let data = BinaryDataset::from_rows(3, 4, vec![0, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 0]).unwrap();
        let theta = InteractionMatrix::<f64>::zeros(4);
        let got = pseudo_loglik(&data, &theta).unwrap();
        assert_relative_eq!(got, -4.0 * 2.0f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn pseudo_loglik_symmetric_two_node() {
        // p = 2, n = 1, x = (1,1), theta_{1,2} = t, zero diagonal:
        // value = 2 (t - log(1 + e^t)); at t = 0 this is -2 log 2.
        for &t in &[0.0, 0.8, -1.3] {
            let data = BinaryDataset::from_rows(1, 2, vec![1, 1]).unwrap();
            let mut theta = InteractionMatrix::<f64>::zeros(2);
            theta.set(0, 1, t);
            let got = pseudo_loglik(&data, &theta).unwrap();
            let expect = 2.0 * (t - (1.0 + t.exp()).ln());
            assert_relative_eq!(got, expect, max_relative = 1e-12);
        }
    }

    /// Independent double-loop re-summation of the pseudo-likelihood terms.
    fn naive_pseudo_loglik(data: &BinaryDataset, theta: &InteractionMatrix<f64>) -> f64 {
        let mut total = 0.0;
        for i in 0..data.n() {
            for j in 0..data.p() {
                let mut eta = theta.get(j, j);
                for l in 0..data.p() {
                    if l != j {
                        eta += theta.get(j, l) * data.values()[[i, l]] as f64;
                    }
                }
                total += data.values()[[i, j]] as f64 * eta - (1.0 + eta.exp()).ln();
            }
        }
        total / data.n() as f64
    }

    #[test]
    fn pseudo_loglik_matches_naive_oracle() {
        let (data, theta) = random_instance(6, 20, 42);
        let got = pseudo_loglik(&data, &theta).unwrap();
        assert_relative_eq!(got, naive_pseudo_loglik(&data, &theta), max_relative = 1e-10);
    }

    #[test]
    fn pseudo_loglik_dimension_mismatch() {
        let data = BinaryDataset::from_rows(1, 2, vec![1, 1]).unwrap();
        let theta = InteractionMatrix::<f64>::zeros(3);
        assert!(pseudo_loglik(&data, &theta).is_err());
    }

    #[test]
    fn grad_zero_theta_hand_values() {
        // n = 1, x = (1,1,0), theta = 0: sigma(0) = 1/2 everywhere.
        let data = BinaryDataset::from_rows(1, 3, vec![1, 1, 0]).unwrap();
        let theta = InteractionMatrix::<f64>::zeros(3);
        let g = pseudo_loglik_grad(&data, &theta).unwrap();
        assert_relative_eq!(g.get(0, 1), 1.0, max_relative = 1e-12);
        assert_relative_eq!(g.get(0, 2), -0.5, max_relative = 1e-12);
        assert_relative_eq!(g.get(0, 0), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn grad_constant_zero_column_has_negative_diagonal() {
        let data = BinaryDataset::from_rows(4, 3, vec![1, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 0]).unwrap();
        let (_, theta) = random_instance(3, 1, 7);
        let g = pseudo_loglik_grad(&data, &theta).unwrap();
        assert!(g.get(1, 1) < 0.0, "column of zeros forces negative diagonal");
    }

    /// Central finite difference of the pseudo-log-likelihood in one
    /// coordinate, respecting symmetry.
    fn fd_grad_entry(data: &BinaryDataset, theta: &InteractionMatrix<f64>, j: usize, l: usize) -> f64 {
        let h = 1e-5;
        let mut plus = theta.clone();
        plus.set(j, l, theta.get(j, l) + h);
        let mut minus = theta.clone();
        minus.set(j, l, theta.get(j, l) - h);
        (pseudo_loglik(data, &plus).unwrap() - pseudo_loglik(data, &minus).unwrap()) / (2.0 * h)
    }

    #[test]
    fn grad_matches_finite_differences() {
        let (data, theta) = random_instance(8, 30, 3);
        let g = pseudo_loglik_grad(&data, &theta).unwrap();
        for j in 0..8 {
            for l in j..8 {
                let fd = fd_grad_entry(&data, &theta, j, l);
                let an = g.get(j, l);
                let rel = (an - fd).abs() / fd.abs().max(1e-8);
                assert!(rel < 1e-6, "entry ({j},{l}): analytic {an} vs fd {fd}");
            }
        }
    }

    #[test]
    fn grad_is_bitwise_symmetric() {
        let (data, theta) = random_instance(7, 25, 11);
        let g = pseudo_loglik_grad(&data, &theta).unwrap();
        for j in 0..7 {
            for l in 0..7 {
                assert_eq!(g.get(j, l).to_bits(), g.get(l, j).to_bits());
            }
        }
    }

    #[test]
    fn exact_loglik_single_site() {
        let data = BinaryDataset::from_rows(1, 1, vec![0]).unwrap();
        let theta = InteractionMatrix::<f64>::zeros(1);
        let got = exact_loglik(&data, &theta).unwrap();
        assert_relative_eq!(got, 0.5f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn exact_loglik_independent_pair() {
        let data = BinaryDataset::from_rows(2, 2, vec![0, 1, 1, 1]).unwrap();
        let theta = InteractionMatrix::<f64>::zeros(2);
        let got = exact_loglik(&data, &theta).unwrap();
        assert_relative_eq!(got, -4.0f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn exact_loglik_coupled_pair() {
        // p = 2, theta_12 = 1: Z = 3 + e, log f(1,1) = 1 - log(3 + e).
        let data = BinaryDataset::from_rows(1, 2, vec![1, 1]).unwrap();
        let mut theta = InteractionMatrix::<f64>::zeros(2);
        theta.set(0, 1, 1.0);
        let got = exact_loglik(&data, &theta).unwrap();
        assert_relative_eq!(got, 1.0 - (3.0 + 1.0f64.exp()).ln(), max_relative = 1e-12);
    }

    #[test]
    fn exact_loglik_refuses_large_p() {
        let p = 21;
        let data = BinaryDataset::from_rows(1, p, vec![0; p]).unwrap();
        let theta = InteractionMatrix::<f64>::zeros(p);
        match exact_loglik(&data, &theta) {
            Err(Error::EnumerationLimit { p: 21, max: 20 }) => {}
            other => panic!("expected enumeration limit error, got {other:?}"),
        }
    }

    #[test]
    fn exact_distribution_normalizes() {
        for seed in 0..5 {
            let (_, theta) = random_instance(6, 1, seed);
            let log_z = log_partition(&theta).unwrap();
            let total: f64 = (0..1usize << 6)
                .map(|s| (state_score(&theta, s) - log_z).exp())
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "seed {seed}: total {total}");
        }
    }

    proptest! {
        #[test]
        fn pseudo_loglik_never_positive(seed in 0u64..500) {
            let (data, theta) = random_instance(5, 12, seed);
            let v = pseudo_loglik(&data, &theta).unwrap();
            prop_assert!(v <= 0.0);
        }

        #[test]
        fn pseudo_loglik_concave_on_segments(seed in 0u64..200) {
            let (data, a) = random_instance(5, 15, seed);
            let (_, b) = random_instance(5, 15, seed.wrapping_add(10_000));
            let mut mid = InteractionMatrix::zeros(5);
            for j in 0..5 {
                for l in j..5 {
                    mid.set(j, l, 0.5 * (a.get(j, l) + b.get(j, l)));
                }
            }
            let fa = pseudo_loglik(&data, &a).unwrap();
            let fb = pseudo_loglik(&data, &b).unwrap();
            let fm = pseudo_loglik(&data, &mid).unwrap();
            prop_assert!(fm >= 0.5 * (fa + fb) - 1e-10);
        }
    }
}
