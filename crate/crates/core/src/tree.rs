//! Decision-tree induction with soft mutual information as the split score.
//!
//! Each node fits a bivariate Gaussian to every (feature, label) pair, turns
//! both columns into mixed point/interval sets and scores the feature by the
//! soft mutual information of that model over those sets. Gains are compared
//! with [`SoftNumber::total_cmp`], so interval evidence on the real axis
//! dominates and point evidence on the zero axis breaks ties.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{BivariateGaussian, GaussianParams};
use crate::error::{Error, Result};
use crate::information::{soft_mutual_information, InfoConfig, MiForm};
use crate::moments::MixedSet;
use crate::soft::SoftNumber;

/// Largest correlation magnitude a fitted model may carry.
pub const MAX_CORRELATION: f64 = 0.999;

/// Column variances at or below this make a fitted model degenerate.
const MIN_VARIANCE: f64 = 1e-12;

/// A single sample or an interval observation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Observation {
    Point { value: f64 },
    Interval { lo: f64, hi: f64 },
}

impl Observation {
    pub fn point(value: f64) -> Self {
        Observation::Point { value }
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::domain(format!(
                "interval observation needs finite lo < hi, got {lo}..{hi}"
            )));
        }
        Ok(Observation::Interval { lo, hi })
    }

    pub fn midpoint(&self) -> f64 {
        match *self {
            Observation::Point { value } => value,
            Observation::Interval { lo, hi } => 0.5 * (lo + hi),
        }
    }

    /// Variance of a uniform spread over the observation: `width² / 12`.
    pub fn spread_variance(&self) -> f64 {
        match *self {
            Observation::Point { .. } => 0.0,
            Observation::Interval { lo, hi } => (hi - lo).powi(2) / 12.0,
        }
    }
}

impl FromStr for Observation {
    type Err = String;

    /// Parses `"1.5"` or `"lo..hi"`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        if let Some(idx) = s.find("..") {
            let (lo, hi) = (&s[..idx], &s[idx + 2..]);
            let lo: f64 = lo.trim().parse().map_err(|_| format!("bad interval bound {lo:?}"))?;
            let hi: f64 = hi.trim().parse().map_err(|_| format!("bad interval bound {hi:?}"))?;
            return Observation::interval(lo, hi).map_err(|e| e.to_string());
        }
        let v: f64 = s.parse().map_err(|_| format!("bad number {s:?}"))?;
        if !v.is_finite() {
            return Err(format!("value must be finite, got {s:?}"));
        }
        Ok(Observation::point(v))
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Observation::Point { value } => write!(f, "{value}"),
            Observation::Interval { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub features: Vec<Observation>,
    pub label: Observation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    feature_names: Vec<String>,
    rows: Vec<Row>,
}

impl Dataset {
    pub fn new(feature_names: Vec<String>, rows: Vec<Row>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::domain(format!(
                "a dataset needs at least 2 rows, got {}",
                rows.len()
            )));
        }
        if let Some((i, r)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.features.len() != feature_names.len())
        {
            return Err(Error::domain(format!(
                "row {i} has {} features, expected {}",
                r.features.len(),
                feature_names.len()
            )));
        }
        Ok(Dataset { feature_names, rows })
    }

    /// Reads delimited text with a header row; the last column is the label.
    /// Cells hold a number or an interval written `lo..hi`.
    pub fn from_delimited<R: std::io::Read>(reader: R, delimiter: u8) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header = rdr
            .headers()
            .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
            .clone();
        if header.len() < 2 {
            return Err(Error::Parse {
                line: 1,
                message: "need at least one feature column and a label column".into(),
            });
        }
        let n_features = header.len() - 1;
        let names: Vec<String> = header.iter().take(n_features).map(str::to_owned).collect();
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let mut cells = Vec::with_capacity(rec.len());
            for (col, cell) in rec.iter().enumerate() {
                let obs = cell.parse::<Observation>().map_err(|m| Error::Parse {
                    line,
                    message: format!("column {:?}: {m}", header.get(col).unwrap_or("?")),
                })?;
                cells.push(obs);
            }
            let label = cells.pop().expect("csv enforces the header width");
            rows.push(Row { features: cells, label });
        }
        Dataset::new(names, rows)
    }

    /// Reads feature rows for prediction. The header must begin with
    /// `feature_names`; any further columns (such as a label) are ignored.
    pub fn read_features<R: std::io::Read>(
        reader: R,
        delimiter: u8,
        feature_names: &[String],
    ) -> Result<Vec<Vec<Observation>>> {
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(reader);
        let header = rdr
            .headers()
            .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
            .clone();
        let n = feature_names.len();
        if header.len() < n || header.iter().take(n).ne(feature_names.iter().map(String::as_str)) {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "columns {:?} do not start with the model features {feature_names:?}",
                    header.iter().collect::<Vec<_>>()
                ),
            });
        }
        let mut out = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            if rec.len() < n {
                return Err(Error::Parse {
                    line,
                    message: format!("expected at least {n} cells, got {}", rec.len()),
                });
            }
            let row = rec
                .iter()
                .take(n)
                .enumerate()
                .map(|(col, cell)| {
                    cell.parse::<Observation>().map_err(|m| Error::Parse {
                        line,
                        message: format!("column {:?}: {m}", feature_names[col]),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(row);
        }
        Ok(out)
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn feature_index(&self, name: &str) -> Result<usize> {
        self.feature_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::domain(format!("unknown feature {name:?}")))
    }

    fn column(&self, rows: &[usize], feature: usize) -> Vec<Observation> {
        rows.iter().map(|&r| self.rows[r].features[feature]).collect()
    }

    fn labels(&self, rows: &[usize]) -> Vec<Observation> {
        rows.iter().map(|&r| self.rows[r].label).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeConfig {
    pub max_depth: usize,
    pub min_rows: usize,
    /// A split is taken only when its gain is strictly above this.
    pub min_gain: SoftNumber,
    pub info: InfoConfig,
}

impl Default for TreeConfig {
    fn default() -> Self {
        TreeConfig {
            max_depth: 4,
            min_rows: 10,
            min_gain: SoftNumber::ZERO,
            info: InfoConfig::default(),
        }
    }
}

impl TreeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_depth < 1 {
            return Err(Error::domain("max_depth must be at least 1"));
        }
        if self.min_rows < 2 {
            return Err(Error::domain("min_rows must be at least 2"));
        }
        self.info.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf {
        prediction: f64,
        count: usize,
    },
    Split {
        feature: String,
        threshold: f64,
        gain: SoftNumber,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }
}

/// A trained tree with the schema it was trained on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeModel {
    pub feature_names: Vec<String>,
    pub config: TreeConfig,
    pub seed: u64,
    pub root: TreeNode,
}

impl TreeModel {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree models always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn predict(&self, features: &[Observation]) -> Result<f64> {
        predict(&self.root, &self.feature_names, features)
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Fits a bivariate Gaussian to a (feature, label) column pair.
///
/// Observations enter through their midpoints; each interval adds its
/// `width² / 12` spread to its column's variance. The correlation is clipped
/// to ±[`MAX_CORRELATION`].
pub fn fit_joint_model(feature: &[Observation], label: &[Observation]) -> Result<BivariateGaussian> {
    if feature.len() != label.len() {
        return Err(Error::domain("feature and label columns differ in length"));
    }
    let n = feature.len();
    if n < 2 {
        return Err(Error::Degenerate("need at least 2 rows to fit a model".into()));
    }
    let xs: Vec<f64> = feature.iter().map(Observation::midpoint).collect();
    let ys: Vec<f64> = label.iter().map(Observation::midpoint).collect();
    let (mx, my) = (mean(&xs), mean(&ys));
    let denom = (n - 1) as f64;
    let spread = |col: &[Observation]| col.iter().map(Observation::spread_variance).sum::<f64>() / n as f64;
    let vx = xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>() / denom + spread(feature);
    let vy = ys.iter().map(|y| (y - my).powi(2)).sum::<f64>() / denom + spread(label);
    if vx <= MIN_VARIANCE || vy <= MIN_VARIANCE {
        return Err(Error::Degenerate(format!(
            "column variance too small (feature {vx:e}, label {vy:e})"
        )));
    }
    let cov = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / denom;
    let scale = (vx * vy).sqrt();
    let rho = (cov / scale).clamp(-MAX_CORRELATION, MAX_CORRELATION);
    BivariateGaussian::new(
        GaussianParams { mean: mx, variance: vx },
        GaussianParams { mean: my, variance: vy },
        rho * scale,
    )
}

/// Turns a column into a [`MixedSet`]: overlapping intervals merge into
/// maximal open intervals, duplicate points collapse, and points inside or on
/// the boundary of an interval are absorbed by it.
pub fn build_mixed_set(col: &[Observation]) -> MixedSet {
    let mut intervals: Vec<(f64, f64)> = col
        .iter()
        .filter_map(|o| match *o {
            Observation::Interval { lo, hi } => Some((lo, hi)),
            Observation::Point { .. } => None,
        })
        .collect();
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        match merged.last_mut() {
            Some(last) if lo < last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    let mut points: Vec<f64> = col
        .iter()
        .filter_map(|o| match *o {
            Observation::Point { value } => Some(value),
            Observation::Interval { .. } => None,
        })
        .filter(|&p| !merged.iter().any(|&(a, b)| p >= a && p <= b))
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    MixedSet::new(points, merged).expect("merged intervals and absorbed points are disjoint")
}

fn gain_for(feature: &[Observation], label: &[Observation], info: &InfoConfig) -> Result<SoftNumber> {
    let model = match fit_joint_model(feature, label) {
        Ok(m) => m,
        Err(Error::Degenerate(_)) => return Ok(SoftNumber::ZERO),
        Err(e) => return Err(e),
    };
    let sx = build_mixed_set(feature);
    let sy = build_mixed_set(label);
    soft_mutual_information(&model, &sx, &sy, info, MiForm::Symmetric)
}

/// Soft mutual information between one feature and the label over all rows.
///
/// A feature whose fitted model is degenerate scores absolute zero.
pub fn split_gain(ds: &Dataset, feature: &str, cfg: &TreeConfig) -> Result<SoftNumber> {
    let idx = ds.feature_index(feature)?;
    let rows: Vec<usize> = (0..ds.rows.len()).collect();
    gain_for(&ds.column(&rows, idx), &ds.labels(&rows), &cfg.info)
}

/// Index and gain of the best feature; ties go to the lowest index.
pub fn best_feature(gains: &[SoftNumber]) -> Option<(usize, SoftNumber)> {
    gains
        .iter()
        .copied()
        .enumerate()
        .fold(None, |best: Option<(usize, SoftNumber)>, (i, g)| match best {
            Some((_, bg)) if g.total_cmp(&bg) != Ordering::Greater => best,
            _ => Some((i, g)),
        })
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

fn leaf(ds: &Dataset, rows: &[usize]) -> TreeNode {
    let labels: Vec<f64> = rows.iter().map(|&r| ds.rows[r].label.midpoint()).collect();
    TreeNode::Leaf {
        prediction: mean(&labels),
        count: rows.len(),
    }
}

fn grow(ds: &Dataset, rows: &[usize], depth: usize, cfg: &TreeConfig) -> Result<TreeNode> {
    if depth >= cfg.max_depth || rows.len() < cfg.min_rows || rows.len() < 2 {
        return Ok(leaf(ds, rows));
    }
    let labels = ds.labels(rows);
    let gains = (0..ds.feature_names.len())
        .into_par_iter()
        .map(|f| gain_for(&ds.column(rows, f), &labels, &cfg.info))
        .collect::<Result<Vec<_>>>()?;
    let Some((feature, gain)) = best_feature(&gains) else {
        return Ok(leaf(ds, rows));
    };
    if gain.total_cmp(&cfg.min_gain) != Ordering::Greater {
        return Ok(leaf(ds, rows));
    }
    let mids: Vec<f64> = rows
        .iter()
        .map(|&r| ds.rows[r].features[feature].midpoint())
        .collect();
    let threshold = median(mids.clone());
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (&r, &m) in rows.iter().zip(&mids) {
        if m <= threshold {
            left.push(r);
        } else {
            right.push(r);
        }
    }
    if left.is_empty() || right.is_empty() {
        return Ok(leaf(ds, rows));
    }
    Ok(TreeNode::Split {
        feature: ds.feature_names[feature].clone(),
        threshold,
        gain,
        left: Box::new(grow(ds, &left, depth + 1, cfg)?),
        right: Box::new(grow(ds, &right, depth + 1, cfg)?),
    })
}

/// Greedy top-down induction.
///
/// Every node splits on the feature of maximal gain at the median of that
/// feature's midpoints, sending rows with midpoint `≤ threshold` left. Growth
/// stops at `max_depth`, below `min_rows`, or when no gain exceeds `min_gain`.
pub fn induce(ds: &Dataset, cfg: &TreeConfig) -> Result<TreeNode> {
    cfg.validate()?;
    let rows: Vec<usize> = (0..ds.rows.len()).collect();
    grow(ds, &rows, 0, cfg)
}

/// Trains a [`TreeModel`]. Induction is deterministic; `seed` is recorded
/// with the model so that a training run can be reproduced from its output.
pub fn train(ds: &Dataset, cfg: &TreeConfig, seed: u64) -> Result<TreeModel> {
    Ok(TreeModel {
        feature_names: ds.feature_names.clone(),
        config: *cfg,
        seed,
        root: induce(ds, cfg)?,
    })
}

/// Routes an observation vector by midpoint comparisons to a leaf.
pub fn predict(t: &TreeNode, feature_names: &[String], features: &[Observation]) -> Result<f64> {
    if features.len() != feature_names.len() {
        return Err(Error::domain(format!(
            "expected {} features, got {}",
            feature_names.len(),
            features.len()
        )));
    }
    let mut node = t;
    loop {
        match node {
            TreeNode::Leaf { prediction, .. } => return Ok(*prediction),
            TreeNode::Split {
                feature,
                threshold,
                left,
                right,
                ..
            } => {
                let idx = feature_names
                    .iter()
                    .position(|n| n == feature)
                    .ok_or_else(|| Error::domain(format!("tree refers to unknown feature {feature:?}")))?;
                node = if features[idx].midpoint() <= *threshold { left } else { right };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[f64]) -> Vec<Observation> {
        v.iter().map(|&x| Observation::point(x)).collect()
    }

    #[test]
    fn parse_observations() {
        assert_eq!("1.5".parse::<Observation>().unwrap(), Observation::point(1.5));
        assert_eq!(
            "-2..3e0".parse::<Observation>().unwrap(),
            Observation::Interval { lo: -2.0, hi: 3.0 }
        );
        assert_eq!(
            "-3..-2".parse::<Observation>().unwrap(),
            Observation::Interval { lo: -3.0, hi: -2.0 }
        );
        assert!("4..1".parse::<Observation>().is_err());
        assert!("abc".parse::<Observation>().is_err());
        assert!("nan".parse::<Observation>().is_err());
    }

    #[test]
    fn mixed_sets_from_columns() {
        let col = vec![
            Observation::point(1.0),
            Observation::point(2.0),
            Observation::interval(3.0, 4.0).unwrap(),
        ];
        let ms = build_mixed_set(&col);
        assert_eq!(ms.points(), &[1.0, 2.0]);
        assert_eq!(ms.intervals(), &[(3.0, 4.0)]);

        let col = vec![
            Observation::interval(0.0, 2.0).unwrap(),
            Observation::interval(1.0, 3.0).unwrap(),
        ];
        assert_eq!(build_mixed_set(&col).intervals(), &[(0.0, 3.0)]);

        let col = vec![Observation::point(1.5), Observation::interval(1.0, 2.0).unwrap()];
        let ms = build_mixed_set(&col);
        assert!(ms.points().is_empty());
        assert_eq!(ms.intervals(), &[(1.0, 2.0)]);

        let ms = build_mixed_set(&pts(&[2.0, 1.0, 2.0]));
        assert_eq!(ms.points(), &[1.0, 2.0]);
    }

    #[test]
    fn fit_clips_perfect_correlation() {
        let col = pts(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let m = fit_joint_model(&col, &col).unwrap();
        assert!((m.correlation() - MAX_CORRELATION).abs() < 1e-15);
        let neg = pts(&[-1.0, -2.0, -3.0, -4.0, -5.0]);
        let m = fit_joint_model(&col, &neg).unwrap();
        assert!((m.correlation() + MAX_CORRELATION).abs() < 1e-15);
    }

    #[test]
    fn fit_adds_interval_spread() {
        let ivs: Vec<Observation> = [0.0, 1.0, 2.0, 3.0]
            .iter()
            .map(|&c| Observation::interval(c - 0.5, c + 0.5).unwrap())
            .collect();
        let lab = pts(&[0.0, 1.0, 0.5, 2.0]);
        let m = fit_joint_model(&ivs, &lab).unwrap();
        // sample variance of 0..3 is 5/3, plus 1/12 for unit-width intervals
        assert!((m.x().variance() - (5.0 / 3.0 + 1.0 / 12.0)).abs() < 1e-14);
    }

    #[test]
    fn degenerate_feature_has_zero_gain() {
        let rows: Vec<Row> = (0..10)
            .map(|i| Row {
                features: vec![Observation::point(1.0)],
                label: Observation::point(i as f64),
            })
            .collect();
        let ds = Dataset::new(vec!["c".into()], rows).unwrap();
        let g = split_gain(&ds, "c", &TreeConfig::default()).unwrap();
        assert!(g.is_absolute_zero());
        assert!(fit_joint_model(&pts(&[1.0, 1.0]), &pts(&[0.0, 1.0])).is_err());
        let t = induce(&ds, &TreeConfig::default()).unwrap();
        assert!(matches!(t, TreeNode::Leaf { count: 10, .. }));
    }

    #[test]
    fn best_feature_prefers_real_part_then_lowest_index() {
        let g = [
            SoftNumber::new(5.0, 0.0),
            SoftNumber::new(0.0, 0.1),
            SoftNumber::new(1.0, 0.1),
            SoftNumber::new(1.0, 0.1),
        ];
        assert_eq!(best_feature(&g).unwrap().0, 2);
        assert!(best_feature(&[]).is_none());
    }

    #[test]
    fn dataset_parsing() {
        let text = "a,b,y\n1,0..2,3\n2.5,1,4..6\n";
        let ds = Dataset::from_delimited(text.as_bytes(), b',').unwrap();
        assert_eq!(ds.feature_names(), &["a", "b"]);
        assert_eq!(ds.rows()[1].label, Observation::Interval { lo: 4.0, hi: 6.0 });
        let err = Dataset::from_delimited("a,y\n1,2\n1,x\n".as_bytes(), b',').unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(Dataset::from_delimited("a,y\n1,2\n".as_bytes(), b',').is_err());

        let names = vec!["a".to_string(), "b".to_string()];
        let rows = Dataset::read_features("a;b\n1;2..3\n".as_bytes(), b';', &names).unwrap();
        assert_eq!(rows[0][1], Observation::Interval { lo: 2.0, hi: 3.0 });
        let rows = Dataset::read_features(text.as_bytes(), b',', &names).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(Dataset::read_features("b,a\n1,2\n".as_bytes(), b',', &names).is_err());
    }

    #[test]
    fn predict_routes_by_midpoint() {
        let names = vec!["x".to_string()];
        let t = TreeNode::Split {
            feature: "x".into(),
            threshold: 1.0,
            gain: SoftNumber::new(0.1, 0.0),
            left: Box::new(TreeNode::Leaf { prediction: -1.0, count: 1 }),
            right: Box::new(TreeNode::Leaf { prediction: 1.0, count: 1 }),
        };
        assert_eq!(predict(&t, &names, &[Observation::point(0.5)]).unwrap(), -1.0);
        assert_eq!(
            predict(&t, &names, &[Observation::interval(0.0, 3.0).unwrap()]).unwrap(),
            1.0
        );
        assert!(predict(&t, &names, &[]).is_err());
        let single = TreeNode::Leaf { prediction: 7.0, count: 3 };
        assert_eq!(predict(&single, &names, &[Observation::point(-100.0)]).unwrap(), 7.0);
    }
}
