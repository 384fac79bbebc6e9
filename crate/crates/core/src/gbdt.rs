//! Gradient-boosted decision trees over ordinal pair features, trained with
//! second-order (Newton) steps on the multiclass softmax cross-entropy.
//!
//! One tree per class per boosting round, exact greedy splits (no histogram
//! binning), per-round row bagging and per-tree feature subsampling from a
//! seeded generator, and best-round early stopping on validation loss.
//! Training is bit-deterministic given the seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qxg::{featurize_pair, FeatureVector, StarGraph};
use crate::scene::ActionLabel;

pub const NUM_CLASSES: usize = ActionLabel::COUNT;

const MODEL_FORMAT_VERSION: u32 = 1;
/// A split must beat this gain to be taken; filters float-noise splits.
const MIN_SPLIT_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Internal {
        feature: usize,
        /// Rows go left when `x[feature] <= threshold`.
        threshold: f64,
        cover: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        /// Log-odds contribution before the learning-rate scaling.
        value: f64,
        cover: f64,
    },
}

impl TreeNode {
    pub fn cover(&self) -> f64 {
        match self {
            TreeNode::Internal { cover, .. } => *cover,
            TreeNode::Leaf { cover, .. } => *cover,
        }
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        match self {
            TreeNode::Leaf { value, .. } => *value,
            TreeNode::Internal {
                feature,
                threshold,
                left,
                right,
                ..
            } => {
                if x[*feature] <= *threshold {
                    left.predict(x)
                } else {
                    right.predict(x)
                }
            }
        }
    }

    /// Cover-weighted average of leaf values: the tree's output under the
    /// background distribution its training rows induce.
    pub fn expected_value(&self) -> f64 {
        match self {
            TreeNode::Leaf { value, .. } => *value,
            TreeNode::Internal { left, right, cover, .. } => {
                (left.cover() * left.expected_value() + right.cover() * right.expected_value())
                    / cover
            }
        }
    }

    /// Feature indices this tree splits on.
    pub fn collect_split_features(&self, out: &mut std::collections::BTreeSet<usize>) {
        if let TreeNode::Internal {
            feature,
            left,
            right,
            ..
        } = self
        {
            out.insert(*feature);
            left.collect_split_features(out);
            right.collect_split_features(out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassTree {
    pub class: usize,
    pub root: TreeNode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    #[serde(default = "default_num_rounds")]
    pub num_rounds: usize,
    #[serde(default = "default_max_depth")]
    pub max_depth: usize,
    #[serde(default = "default_min_child_rows")]
    pub min_child_rows: usize,
    #[serde(default = "default_learning_rate")]
    pub learning_rate: f64,
    #[serde(default = "default_feature_fraction")]
    pub feature_fraction: f64,
    #[serde(default = "default_bagging_fraction")]
    pub bagging_fraction: f64,
    #[serde(default = "default_l2_leaf_reg")]
    pub l2_leaf_reg: f64,
    #[serde(default = "default_early_stopping_rounds")]
    pub early_stopping_rounds: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_num_rounds() -> usize {
    200
}
fn default_max_depth() -> usize {
    6
}
fn default_min_child_rows() -> usize {
    5
}
fn default_learning_rate() -> f64 {
    0.1
}
fn default_feature_fraction() -> f64 {
    0.8
}
fn default_bagging_fraction() -> f64 {
    0.8
}
fn default_l2_leaf_reg() -> f64 {
    1.0
}
fn default_early_stopping_rounds() -> usize {
    20
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            num_rounds: default_num_rounds(),
            max_depth: default_max_depth(),
            min_child_rows: default_min_child_rows(),
            learning_rate: default_learning_rate(),
            feature_fraction: default_feature_fraction(),
            bagging_fraction: default_bagging_fraction(),
            l2_leaf_reg: default_l2_leaf_reg(),
            early_stopping_rounds: default_early_stopping_rounds(),
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_rounds == 0 {
            return Err(Error::Config("num_rounds must be positive".into()));
        }
        if self.max_depth == 0 {
            return Err(Error::Config("max_depth must be positive".into()));
        }
        if self.min_child_rows == 0 {
            return Err(Error::Config("min_child_rows must be positive".into()));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::Config("learning_rate must be positive".into()));
        }
        for (name, v) in [
            ("feature_fraction", self.feature_fraction),
            ("bagging_fraction", self.bagging_fraction),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::Config(format!("{name} must be in (0, 1]")));
            }
        }
        if self.l2_leaf_reg < 0.0 {
            return Err(Error::Config("l2_leaf_reg must be >= 0".into()));
        }
        Ok(())
    }
}

/// A trained forest: `rounds[r]` holds one tree per class fit in round `r`.
/// Raw score is `base_score[c] + learning_rate * sum of class-c leaf values`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbdtModel {
    pub format_version: u32,
    pub num_classes: usize,
    pub feature_len: usize,
    pub learning_rate: f64,
    pub base_score: Vec<f64>,
    pub rounds: Vec<Vec<ClassTree>>,
    pub seed: u64,
    pub config: TrainConfig,
}

impl GbdtModel {
    pub fn class_trees(&self, class: usize) -> impl Iterator<Item = &TreeNode> {
        self.rounds
            .iter()
            .flat_map(move |round| round.iter().filter(move |t| t.class == class))
            .map(|t| &t.root)
    }

    pub fn raw_score(&self, x: &[f64], class: usize) -> Result<f64> {
        if x.len() != self.feature_len {
            return Err(Error::InvalidInput(format!(
                "feature vector length {} != model feature length {}",
                x.len(),
                self.feature_len
            )));
        }
        if class >= self.num_classes {
            return Err(Error::InvalidInput(format!(
                "class {class} out of range [0, {})",
                self.num_classes
            )));
        }
        let sum: f64 = self.class_trees(class).map(|t| t.predict(x)).sum();
        Ok(self.base_score[class] + self.learning_rate * sum)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let model: GbdtModel = serde_json::from_str(s)?;
        if model.format_version != MODEL_FORMAT_VERSION {
            return Err(Error::Serde(format!(
                "unsupported model format version {}",
                model.format_version
            )));
        }
        Ok(model)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

fn softmax(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

/// Class probabilities for one feature vector.
pub fn predict_proba(model: &GbdtModel, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != model.feature_len {
        return Err(Error::InvalidInput(format!(
            "feature vector length {} != model feature length {}",
            x.len(),
            model.feature_len
        )));
    }
    let scores: Vec<f64> = (0..model.num_classes)
        .map(|c| model.raw_score(x, c).unwrap())
        .collect();
    Ok(softmax(&scores))
}

/// Outcome of a training run: the best-round model plus validation metrics.
#[derive(Debug, Clone)]
pub struct GbdtFit {
    pub model: GbdtModel,
    /// Validation logloss recorded after each trained round.
    pub round_val_losses: Vec<f64>,
    pub best_round: usize,
    pub val_loss: f64,
    pub val_accuracy: f64,
}

struct SplitCandidate {
    feature: usize,
    threshold: f64,
    gain: f64,
}

struct TreeBuilder<'a> {
    columns: &'a [Vec<f64>],
    grad: &'a [f64],
    hess: &'a [f64],
    features: &'a [usize],
    max_depth: usize,
    min_child_rows: usize,
    lambda: f64,
}

impl TreeBuilder<'_> {
    fn leaf_value(&self, g: f64, h: f64) -> f64 {
        if h + self.lambda > 0.0 {
            -g / (h + self.lambda)
        } else {
            0.0
        }
    }

    fn score(&self, g: f64, h: f64) -> f64 {
        if h + self.lambda > 0.0 {
            g * g / (h + self.lambda)
        } else {
            0.0
        }
    }

    fn best_split(&self, rows: &[usize], g_total: f64, h_total: f64) -> Option<SplitCandidate> {
        let parent_score = self.score(g_total, h_total);
        let mut best: Option<SplitCandidate> = None;
        let mut sorted: Vec<usize> = Vec::with_capacity(rows.len());
        for &feature in self.features {
            let col = &self.columns[feature];
            sorted.clear();
            sorted.extend_from_slice(rows);
            sorted.sort_by(|&a, &b| col[a].partial_cmp(&col[b]).unwrap().then(a.cmp(&b)));
            let mut gl = 0.0;
            let mut hl = 0.0;
            for k in 1..sorted.len() {
                gl += self.grad[sorted[k - 1]];
                hl += self.hess[sorted[k - 1]];
                let prev = col[sorted[k - 1]];
                let cur = col[sorted[k]];
                if prev == cur {
                    continue;
                }
                if k < self.min_child_rows || sorted.len() - k < self.min_child_rows {
                    continue;
                }
                let gr = g_total - gl;
                let hr = h_total - hl;
                let gain = 0.5 * (self.score(gl, hl) + self.score(gr, hr) - parent_score);
                // strictly-greater keeps the lowest feature index, then the
                // lowest threshold, on equal gain
                if gain > best.as_ref().map_or(MIN_SPLIT_GAIN, |b| b.gain) {
                    best = Some(SplitCandidate {
                        feature,
                        threshold: 0.5 * (prev + cur),
                        gain,
                    });
                }
            }
        }
        best
    }

    fn build(&self, rows: &[usize], depth: usize) -> TreeNode {
        let g_total: f64 = rows.iter().map(|&i| self.grad[i]).sum();
        let h_total: f64 = rows.iter().map(|&i| self.hess[i]).sum();
        let cover = rows.len() as f64;
        let as_leaf = TreeNode::Leaf {
            value: self.leaf_value(g_total, h_total),
            cover,
        };
        if depth >= self.max_depth || rows.len() < 2 * self.min_child_rows {
            return as_leaf;
        }
        let Some(split) = self.best_split(rows, g_total, h_total) else {
            return as_leaf;
        };
        let col = &self.columns[split.feature];
        let (left_rows, right_rows): (Vec<usize>, Vec<usize>) =
            rows.iter().partition(|&&i| col[i] <= split.threshold);
        let left = self.build(&left_rows, depth + 1);
        let right = self.build(&right_rows, depth + 1);
        TreeNode::Internal {
            feature: split.feature,
            threshold: split.threshold,
            cover,
            left: Box::new(left),
            right: Box::new(right),
        }
    }
}

fn mean_logloss(margins: &[Vec<f64>], labels: &[usize]) -> f64 {
    let mut total = 0.0;
    for (m, &y) in margins.iter().zip(labels) {
        let p = softmax(m);
        total -= p[y].max(1e-300).ln();
    }
    total / labels.len() as f64
}

fn accuracy(margins: &[Vec<f64>], labels: &[usize]) -> f64 {
    let mut hits = 0usize;
    for (m, &y) in margins.iter().zip(labels) {
        let pred = m
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        if pred == y {
            hits += 1;
        }
    }
    hits as f64 / labels.len() as f64
}

/// Draws `count` distinct values from `0..n` with a partial Fisher-Yates
/// shuffle; returned sorted ascending for deterministic downstream iteration.
fn sample_indices(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..count.min(n) {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    let mut out = pool[..count.min(n)].to_vec();
    out.sort_unstable();
    out
}

/// Trains a multiclass forest and returns the model truncated at the best
/// validation round.
pub fn train_gbdt(
    train: &[(FeatureVector, ActionLabel)],
    val: &[(FeatureVector, ActionLabel)],
    cfg: &TrainConfig,
) -> Result<GbdtFit> {
    cfg.validate()?;
    if train.is_empty() {
        return Err(Error::Training("empty training set".into()));
    }
    if val.is_empty() {
        return Err(Error::Training("empty validation set".into()));
    }
    let feature_len = train[0].0.len();
    for (x, _) in train.iter().chain(val.iter()) {
        if x.len() != feature_len {
            return Err(Error::InvalidInput(
                "feature vectors must all have the same length".into(),
            ));
        }
    }
    let train_labels: Vec<usize> = train.iter().map(|(_, a)| a.class_index()).collect();
    let val_labels: Vec<usize> = val.iter().map(|(_, a)| a.class_index()).collect();
    if train_labels.iter().all(|&y| y == train_labels[0]) {
        return Err(Error::Training(
            "training set contains a single class".into(),
        ));
    }

    let n = train.len();
    // column-major copy for cache-friendly split scans
    let columns: Vec<Vec<f64>> = (0..feature_len)
        .map(|f| train.iter().map(|(x, _)| x[f]).collect())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let base_score = vec![0.0; NUM_CLASSES];
    let mut train_margins = vec![base_score.clone(); n];
    let mut val_margins = vec![base_score.clone(); val.len()];

    let bag_count = ((n as f64) * cfg.bagging_fraction).floor().max(1.0) as usize;
    let feat_count = ((feature_len as f64) * cfg.feature_fraction)
        .floor()
        .max(1.0) as usize;

    let mut rounds: Vec<Vec<ClassTree>> = Vec::new();
    let mut round_val_losses: Vec<f64> = Vec::new();
    let mut best_round = 0usize;
    let mut best_loss = f64::INFINITY;
    let mut grad = vec![0.0; n];
    let mut hess = vec![0.0; n];

    for round in 0..cfg.num_rounds {
        let probs: Vec<Vec<f64>> = train_margins.iter().map(|m| softmax(m)).collect();
        let bag = if bag_count < n {
            sample_indices(&mut rng, n, bag_count)
        } else {
            (0..n).collect()
        };

        let mut round_trees = Vec::with_capacity(NUM_CLASSES);
        for class in 0..NUM_CLASSES {
            for i in 0..n {
                let p = probs[i][class];
                let y = if train_labels[i] == class { 1.0 } else { 0.0 };
                grad[i] = p - y;
                hess[i] = p * (1.0 - p);
            }
            let features = if feat_count < feature_len {
                sample_indices(&mut rng, feature_len, feat_count)
            } else {
                (0..feature_len).collect()
            };
            let builder = TreeBuilder {
                columns: &columns,
                grad: &grad,
                hess: &hess,
                features: &features,
                max_depth: cfg.max_depth,
                min_child_rows: cfg.min_child_rows,
                lambda: cfg.l2_leaf_reg,
            };
            let root = builder.build(&bag, 0);
            for (i, (x, _)) in train.iter().enumerate() {
                train_margins[i][class] += cfg.learning_rate * root.predict(x);
            }
            for (i, (x, _)) in val.iter().enumerate() {
                val_margins[i][class] += cfg.learning_rate * root.predict(x);
            }
            round_trees.push(ClassTree { class, root });
        }
        rounds.push(round_trees);

        let loss = mean_logloss(&val_margins, &val_labels);
        round_val_losses.push(loss);
        if loss < best_loss {
            best_loss = loss;
            best_round = round;
        }
        if cfg.early_stopping_rounds > 0 && round - best_round >= cfg.early_stopping_rounds {
            break;
        }
    }

    rounds.truncate(best_round + 1);
    let model = GbdtModel {
        format_version: MODEL_FORMAT_VERSION,
        num_classes: NUM_CLASSES,
        feature_len,
        learning_rate: cfg.learning_rate,
        base_score,
        rounds,
        seed: cfg.seed,
        config: *cfg,
    };

    // metrics at the returned (best) round
    let mut margins = vec![vec![0.0; NUM_CLASSES]; val.len()];
    for (i, (x, _)) in val.iter().enumerate() {
        for c in 0..NUM_CLASSES {
            margins[i][c] = model.raw_score(x, c)?;
        }
    }
    let val_loss = mean_logloss(&margins, &val_labels);
    let val_accuracy = accuracy(&margins, &val_labels);

    Ok(GbdtFit {
        model,
        round_val_losses,
        best_round,
        val_loss,
        val_accuracy,
    })
}

/// Scores every spoke of the star with the observed action's probability and
/// returns the best object; ties break toward the lexicographically smaller
/// object id (spokes arrive sorted).
pub fn pick_relevant_object(
    model: &GbdtModel,
    star: &StarGraph,
    observed: ActionLabel,
    num_frames: usize,
) -> Result<(String, Vec<(String, f64)>)> {
    if star.spokes.is_empty() {
        return Err(Error::NoCandidates);
    }
    let class = observed.class_index();
    let mut scores = Vec::with_capacity(star.spokes.len());
    let mut best: Option<(usize, f64)> = None;
    for (i, spoke) in star.spokes.iter().enumerate() {
        let x = featurize_pair(&spoke.chain, star.center_type, spoke.other_type, num_frames)?;
        let p = predict_proba(model, &x)?[class];
        scores.push((spoke.other.clone(), p));
        if best.map_or(true, |(_, bp)| p > bp) {
            best = Some((i, p));
        }
    }
    let (idx, _) = best.unwrap();
    Ok((star.spokes[idx].other.clone(), scores))
}
