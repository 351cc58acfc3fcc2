//! Synthetic benchmark generation: common-structure graphs (chain, mutual
//! nearest-neighbor, scale-free), disjoint per-category individual edges
//! controlled by the ratio rho, interaction values drawn from
//! [-1, -0.5] u [0.5, 1], and Gibbs sampling of observations, with an exact
//! small-p sampler for validation.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    BinaryDataset, CategoryCollection, InteractionMatrix, default_names, log_partition,
    state_score, ENUMERATION_LIMIT,
};
use crate::num::{Scalar, sigmoid};
use crate::seed::{shuffle, substream};

/// Undirected edge set over nodes 0..p (no self-loops, no duplicates).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSet {
    p: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    pub fn new(p: usize) -> Self {
        Self {
            p,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(p: usize, pairs: I) -> Result<Self> {
        let mut set = Self::new(p);
        for (j, l) in pairs {
            set.insert(j, l)?;
        }
        Ok(set)
    }

    /// Inserts the unordered pair {j, l}.
    pub fn insert(&mut self, j: usize, l: usize) -> Result<()> {
        if j == l {
            return Err(Error::InvalidArgument(format!("self-loop at node {j}")));
        }
        if j >= self.p || l >= self.p {
            return Err(Error::IndexOutOfRange {
                index: j.max(l),
                len: self.p,
            });
        }
        self.edges.insert((j.min(l), j.max(l)));
        Ok(())
    }

    pub fn contains(&self, j: usize, l: usize) -> bool {
        self.edges.contains(&(j.min(l), j.max(l)))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in sorted order as (j, l) with j < l.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> Result<EdgeSet> {
        if self.p != other.p {
            return Err(Error::DimensionMismatch {
                context: "edge set union".into(),
                expected: self.p,
                found: other.p,
            });
        }
        let mut out = self.clone();
        out.edges.extend(other.edges.iter().copied());
        Ok(out)
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.edges.is_disjoint(&other.edges)
    }

    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            p: self.p,
            edges: self.edges.intersection(&other.edges).copied().collect(),
        }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            p: self.p,
            edges: self.edges.difference(&other.edges).copied().collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.p];
        for &(j, l) in &self.edges {
            deg[j] += 1;
            deg[l] += 1;
        }
        deg
    }
}

/// Chain graph connecting nodes 0..p in increasing order: p - 1 edges.
pub fn gen_chain(p: usize) -> Result<EdgeSet> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!(
            "chain graph needs p >= 2, got {p}"
        )));
    }
    EdgeSet::from_pairs(p, (0..p - 1).map(|j| (j, j + 1)))
}

/// Mutual 3-nearest-neighbor graph of p points placed uniformly on the unit
/// square; also returns the points (useful for oracles and plotting).
/// Distance ties break toward the lower node index.
pub fn gen_nearest_neighbor_points(p: usize, seed: u64) -> Result<(EdgeSet, Vec<(f64, f64)>)> {
    if p < 4 {
        return Err(Error::InvalidArgument(format!(
            "nearest-neighbor graph needs p >= 4, got {p}"
        )));
    }
    let mut rng = substream(seed, "nn_points", 0);
    let points: Vec<(f64, f64)> = (0..p)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect();
    let neighbors: Vec<Vec<usize>> = (0..p)
        .map(|j| {
            let mut others: Vec<(f64, usize)> = (0..p)
                .filter(|&l| l != j)
                .map(|l| {
                    let dx = points[j].0 - points[l].0;
                    let dy = points[j].1 - points[l].1;
                    (dx * dx + dy * dy, l)
                })
                .collect();
            others.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            others.into_iter().take(3).map(|(_, l)| l).collect()
        })
        .collect();
    let mut edges = EdgeSet::new(p);
    for j in 0..p {
        for &l in &neighbors[j] {
            if l > j && neighbors[l].contains(&j) {
                edges.insert(j, l)?;
            }
        }
    }
    Ok((edges, points))
}

/// Mutual 3-nearest-neighbor graph (points discarded).
pub fn gen_nearest_neighbor(p: usize, seed: u64) -> Result<EdgeSet> {
    gen_nearest_neighbor_points(p, seed).map(|(e, _)| e)
}

/// Scale-free graph by preferential attachment: start from a clique on
/// m + 1 nodes; each arriving node attaches m edges to distinct existing
/// nodes with probability proportional to current degree.
pub fn gen_scale_free(p: usize, m: usize, seed: u64) -> Result<EdgeSet> {
    if m < 1 {
        return Err(Error::InvalidArgument("need m >= 1".into()));
    }
    if p <= m {
        return Err(Error::InvalidArgument(format!(
            "scale-free graph needs p >= m + 1, got p = {p}, m = {m}"
        )));
    }
    let mut rng = substream(seed, "scale_free", 0);
    let mut edges = EdgeSet::new(p);
    let mut degrees = vec![0usize; p];
    for j in 0..=m {
        for l in (j + 1)..=m {
            edges.insert(j, l)?;
            degrees[j] += 1;
            degrees[l] += 1;
        }
    }
    for new_node in (m + 1)..p {
        let mut chosen: Vec<usize> = Vec::with_capacity(m);
        let mut total: usize = degrees[..new_node].iter().sum();
        let mut remaining: Vec<usize> = (0..new_node).collect();
        for _ in 0..m {
            let mut ticket = rng.random_range(0..total);
            let mut pick_idx = remaining.len() - 1;
            for (idx, &node) in remaining.iter().enumerate() {
                let d = degrees[node];
                if ticket < d {
                    pick_idx = idx;
                    break;
                }
                ticket -= d;
            }
            let node = remaining.swap_remove(pick_idx);
            total -= degrees[node];
            chosen.push(node);
        }
        for node in chosen {
            edges.insert(new_node, node)?;
            degrees[new_node] += 1;
            degrees[node] += 1;
        }
    }
    Ok(edges)
}

/// Number of individual edges per category: round-half-up of rho * |common|.
pub fn individual_edge_count(common_len: usize, rho: f64) -> usize {
    (rho * common_len as f64).round() as usize
}

/// K pairwise-disjoint edge sets of size round(rho * |common|), sampled
/// uniformly without replacement from the non-edges of `common`.
pub fn add_individual_edges(
    common: &EdgeSet,
    rho: f64,
    k: usize,
    seed: u64,
) -> Result<Vec<EdgeSet>> {
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "rho must be a finite nonnegative real, got {rho}"
        )));
    }
    let p = common.p();
    let count = individual_edge_count(common.len(), rho);
    let capacity = p * (p - 1) / 2 - common.len();
    if k * count > capacity {
        return Err(Error::InvalidArgument(format!(
            "cannot place {k} x {count} individual edges: only {capacity} non-edges available"
        )));
    }
    let mut non_edges: Vec<(usize, usize)> = Vec::with_capacity(capacity);
    for j in 0..p {
        for l in (j + 1)..p {
            if !common.contains(j, l) {
                non_edges.push((j, l));
            }
        }
    }
    let mut rng = substream(seed, "individual_edges", 0);
    shuffle(&mut non_edges, &mut rng);
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        out.push(EdgeSet::from_pairs(
            p,
            non_edges[i * count..(i + 1) * count].iter().copied(),
        )?);
    }
    Ok(out)
}

/// Interaction values for the given edges, drawn uniformly from
/// [-1, -0.5] u [0.5, 1]; all other entries (including the diagonal) are 0.
pub fn sample_params<F: Scalar>(edges: &EdgeSet, seed: u64) -> InteractionMatrix<F> {
    let mut rng = substream(seed, "edge_params", 0);
    let mut theta = InteractionMatrix::zeros(edges.p());
    for (j, l) in edges.iter() {
        let magnitude = 0.5 + 0.5 * rng.random::<f64>();
        let value = if rng.random::<f64>() < 0.5 {
            -magnitude
        } else {
            magnitude
        };
        theta.set(j, l, F::from_f64(value));
    }
    theta
}

fn gibbs_round<F: Scalar>(
    theta: &InteractionMatrix<F>,
    state: &mut [u8],
    rng: &mut ChaCha8Rng,
) {
    let p = theta.p();
    for j in 0..p {
        let mut eta = theta.get(j, j);
        for l in 0..p {
            if l != j && state[l] == 1 {
                eta += theta.get(j, l);
            }
        }
        let prob = sigmoid(eta).as_f64();
        state[j] = if rng.random::<f64>() < prob { 1 } else { 0 };
    }
}

/// Systematic-scan Gibbs sampler: after `burnin` full rounds, one observation
/// is retained every `thin` rounds (thin = 0 behaves like 1).
pub fn gibbs_sample<F: Scalar>(
    theta: &InteractionMatrix<F>,
    n: usize,
    burnin: usize,
    thin: usize,
    seed: u64,
) -> Result<BinaryDataset> {
    if n < 1 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let p = theta.p();
    let mut rng = substream(seed, "gibbs", 0);
    let mut state: Vec<u8> = (0..p)
        .map(|_| if rng.random::<f64>() < 0.5 { 1 } else { 0 })
        .collect();
    for _ in 0..burnin {
        gibbs_round(theta, &mut state, &mut rng);
    }
    let stride = thin.max(1);
    let mut data = Vec::with_capacity(n * p);
    for _ in 0..n {
        for _ in 0..stride {
            gibbs_round(theta, &mut state, &mut rng);
        }
        data.extend_from_slice(&state);
    }
    BinaryDataset::new(
        ndarray::Array2::from_shape_vec((n, p), data)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?,
        default_names(p),
    )
}

/// Exact probabilities of all 2^p states under theta (p <= 20).
pub fn exact_distribution<F: Scalar>(theta: &InteractionMatrix<F>) -> Result<Vec<f64>> {
    let p = theta.p();
    if p > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            p,
            max: ENUMERATION_LIMIT,
        });
    }
    let log_z = log_partition(theta)?.as_f64();
    Ok((0..1usize << p)
        .map(|s| (state_score(theta, s).as_f64() - log_z).exp())
        .collect())
}

/// I.i.d. exact draws by inverse-CDF over the enumerated distribution
/// (p <= 20); a validation oracle for the Gibbs sampler.
pub fn exact_sample<F: Scalar>(
    theta: &InteractionMatrix<F>,
    n: usize,
    seed: u64,
) -> Result<BinaryDataset> {
    if n < 1 {
        return Err(Error::InvalidArgument("need n >= 1".into()));
    }
    let p = theta.p();
    let probs = exact_distribution(theta)?;
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for &q in &probs {
        acc += q;
        cumulative.push(acc);
    }
    let mut rng = substream(seed, "exact_sample", 0);
    let mut data = Vec::with_capacity(n * p);
    for _ in 0..n {
        let u: f64 = rng.random();
        let state = match cumulative.binary_search_by(|c| c.total_cmp(&u)) {
            Ok(idx) => idx + 1,
            Err(idx) => idx,
        }
        .min(probs.len() - 1);
        for j in 0..p {
            data.push((state >> j & 1) as u8);
        }
    }
    BinaryDataset::new(
        ndarray::Array2::from_shape_vec((n, p), data)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?,
        default_names(p),
    )
}

/// A complete simulation design: common structure, K disjoint individual
/// edge sets, per-category parameter matrices and sample sizes.
///
/// Common-edge values are drawn once and shared across categories by default
/// (so rho = 0 gives literally identical models); `independent_common_values`
/// redraws them per category.
#[derive(Debug, Clone)]
pub struct SimulationDesign<F: Scalar> {
    pub p: usize,
    pub k: usize,
    pub common: EdgeSet,
    pub individual: Vec<EdgeSet>,
    pub rho: f64,
    pub sample_sizes: Vec<usize>,
    pub seed: u64,
    pub thetas: Vec<InteractionMatrix<F>>,
}

impl<F: Scalar> SimulationDesign<F> {
    pub fn new(
        common: EdgeSet,
        rho: f64,
        sample_sizes: Vec<usize>,
        seed: u64,
        independent_common_values: bool,
    ) -> Result<Self> {
        let k = sample_sizes.len();
        if k == 0 {
            return Err(Error::InvalidArgument("need K >= 1 sample sizes".into()));
        }
        if sample_sizes.iter().any(|&n| n == 0) {
            return Err(Error::InvalidArgument("sample sizes must be positive".into()));
        }
        let p = common.p();
        let individual = add_individual_edges(&common, rho, k, seed)?;
        for (a, ind_a) in individual.iter().enumerate() {
            if !common.is_disjoint(ind_a) {
                return Err(Error::InvalidArgument(format!(
                    "individual set {a} overlaps the common structure"
                )));
            }
            for ind_b in individual.iter().skip(a + 1) {
                if !ind_a.is_disjoint(ind_b) {
                    return Err(Error::InvalidArgument(
                        "individual edge sets overlap".into(),
                    ));
                }
            }
        }

        let shared_common: InteractionMatrix<F> =
            sample_params(&common, crate::seed::substream_seed(seed, "common_params", 0));
        let mut thetas = Vec::with_capacity(k);
        for (kk, ind) in individual.iter().enumerate() {
            let common_part: InteractionMatrix<F> = if independent_common_values {
                sample_params(
                    &common,
                    crate::seed::substream_seed(seed, "common_params", kk as u64 + 1),
                )
            } else {
                shared_common.clone()
            };
            let ind_part: InteractionMatrix<F> = sample_params(
                ind,
                crate::seed::substream_seed(seed, "individual_params", kk as u64),
            );
            let mut theta = InteractionMatrix::zeros(p);
            for (j, l) in common.iter() {
                theta.set(j, l, common_part.get(j, l));
            }
            for (j, l) in ind.iter() {
                theta.set(j, l, ind_part.get(j, l));
            }
            thetas.push(theta);
        }

        Ok(Self {
            p,
            k,
            common,
            individual,
            rho,
            sample_sizes,
            seed,
            thetas,
        })
    }

    /// True graph of category k: common u individual_k.
    pub fn truth(&self, k: usize) -> Result<EdgeSet> {
        self.common.union(&self.individual[k])
    }

    pub fn truths(&self) -> Result<Vec<EdgeSet>> {
        (0..self.k).map(|k| self.truth(k)).collect()
    }

    /// Gibbs-sample the K datasets (category k uses substream index k).
    pub fn sample_collection(&self, burnin: usize, thin: usize) -> Result<CategoryCollection> {
        let mut cats = Vec::with_capacity(self.k);
        for k in 0..self.k {
            cats.push(gibbs_sample(
                &self.thetas[k],
                self.sample_sizes[k],
                burnin,
                thin,
                crate::seed::substream_seed(self.seed, "gibbs_category", k as u64),
            )?);
        }
        let labels = (1..=self.k).map(|k| format!("cat{k}")).collect();
        CategoryCollection::new(cats, labels)
    }
}
