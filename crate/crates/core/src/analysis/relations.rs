use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{principal_angles, trace_inner_product, Code};

/// Principal-angle vectors of all pairs `i < j`; row `i` holds `j = i+1..N`.
pub fn pair_angles(code: &Code) -> Result<Vec<Vec<Vec<f64>>>> {
    (0..code.len())
        .into_par_iter()
        .map(|i| {
            ((i + 1)..code.len())
                .map(|j| Ok(principal_angles(code.member(i), code.member(j))?.values().to_vec()))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Cluster {
    lo: Vec<f64>,
    hi: Vec<f64>,
    sum: Vec<f64>,
    count: usize,
}

impl Cluster {
    fn new(v: &[f64]) -> Self {
        Cluster {
            lo: v.to_vec(),
            hi: v.to_vec(),
            sum: v.to_vec(),
            count: 1,
        }
    }

    fn point_gap(&self, v: &[f64]) -> f64 {
        v.iter()
            .enumerate()
            .map(|(d, &x)| (self.lo[d] - x).max(x - self.hi[d]).max(0.0))
            .fold(0.0, f64::max)
    }

    fn box_gap(&self, other: &Cluster) -> f64 {
        (0..self.lo.len())
            .map(|d| (self.lo[d] - other.hi[d]).max(other.lo[d] - self.hi[d]).max(0.0))
            .fold(0.0, f64::max)
    }

    fn absorb(&mut self, v: &[f64]) {
        for (d, &x) in v.iter().enumerate() {
            self.lo[d] = self.lo[d].min(x);
            self.hi[d] = self.hi[d].max(x);
            self.sum[d] += x;
        }
        self.count += 1;
    }

    fn merge(&mut self, other: Cluster) {
        for d in 0..self.lo.len() {
            self.lo[d] = self.lo[d].min(other.lo[d]);
            self.hi[d] = self.hi[d].max(other.hi[d]);
            self.sum[d] += other.sum[d];
        }
        self.count += other.count;
    }

    fn mean(&self) -> Vec<f64> {
        self.sum.iter().map(|s| s / self.count as f64).collect()
    }
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Single-linkage clustering in the max norm, linking a point to a cluster
/// when it lies within `tol` of the cluster's bounding box. Returns the
/// cluster means, sorted descending lexicographically, and the cluster index
/// of every input point.
///
/// Clusters whose boxes are closer than `3 tol` are reported as ambiguous.
pub fn cluster_vectors(points: &[Vec<f64>], tol: f64) -> Result<(Vec<Vec<f64>>, Vec<usize>)> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| lex(&points[a], &points[b]));
    let mut clusters: Vec<Option<Cluster>> = Vec::new();
    let mut owner = vec![usize::MAX; points.len()];
    // Union-find parent links for merged clusters.
    let mut parent: Vec<usize> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    fn root(parent: &mut [usize], mut c: usize) -> usize {
        while parent[c] != c {
            parent[c] = parent[parent[c]];
            c = parent[c];
        }
        c
    }
    for &idx in &order {
        let v = &points[idx];
        active.retain(|&c| clusters[c].as_ref().is_some_and(|cl| cl.hi[0] >= v[0] - tol));
        let hits: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&c| clusters[c].as_ref().is_some_and(|cl| cl.point_gap(v) <= tol))
            .collect();
        let target = match hits.split_first() {
            None => {
                clusters.push(Some(Cluster::new(v)));
                parent.push(clusters.len() - 1);
                active.push(clusters.len() - 1);
                owner[idx] = clusters.len() - 1;
                continue;
            }
            Some((&first, rest)) => {
                for &other in rest {
                    let taken = clusters[other].take().expect("active cluster");
                    clusters[first].as_mut().expect("active cluster").merge(taken);
                    parent[other] = first;
                }
                active.retain(|c| !rest.contains(c));
                first
            }
        };
        clusters[target].as_mut().expect("active cluster").absorb(v);
        owner[idx] = target;
    }

    let live: Vec<usize> = (0..clusters.len()).filter(|&c| clusters[c].is_some()).collect();
    let mut by_lo = live.clone();
    by_lo.sort_by(|&a, &b| {
        let (ca, cb) = (clusters[a].as_ref().unwrap(), clusters[b].as_ref().unwrap());
        ca.lo[0].total_cmp(&cb.lo[0])
    });
    for (pos, &a) in by_lo.iter().enumerate() {
        let ca = clusters[a].as_ref().unwrap();
        for &b in &by_lo[pos + 1..] {
            let cb = clusters[b].as_ref().unwrap();
            if cb.lo[0] > ca.hi[0] + 3.0 * tol {
                break;
            }
            if ca.box_gap(cb) < 3.0 * tol {
                let (ma, mb) = (ca.mean(), cb.mean());
                let first = |m: &[f64]| m.first().copied().unwrap_or(0.0);
                return Err(Error::ClusterAmbiguity(first(&ma), first(&mb)));
            }
        }
    }

    let mut means: Vec<(usize, Vec<f64>)> = live.iter().map(|&c| (c, clusters[c].as_ref().unwrap().mean())).collect();
    means.sort_by(|a, b| lex(&b.1, &a.1));
    let mut rank = vec![usize::MAX; clusters.len()];
    for (r, (c, _)) in means.iter().enumerate() {
        rank[*c] = r;
    }
    let labels = owner.iter().map(|&c| rank[root(&mut parent, c)]).collect();
    Ok((means.into_iter().map(|(_, m)| m).collect(), labels))
}

/// The distinct off-diagonal trace inner products of a code.
pub fn inner_product_set(code: &Code, tol: f64) -> Result<Vec<f64>> {
    if code.len() < 2 {
        return Err(Error::OutOfRange("inner products need at least two members".into()));
    }
    let g = code.gram_matrix();
    let values: Vec<Vec<f64>> = (0..code.len())
        .flat_map(|i| ((i + 1)..code.len()).map(move |j| (i, j)))
        .map(|(i, j)| vec![g[(i, j)]])
        .collect();
    let (mut means, _) = cluster_vectors(&values, tol)?;
    means.reverse();
    Ok(means.into_iter().map(|v| v[0]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// Classes are principal-angle vectors.
    Angles,
    /// Classes are trace inner products.
    InnerProducts,
}

/// One relation: its representative and the number of ordered pairs in it.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationClass {
    pub representative: Vec<f64>,
    pub pairs: usize,
}

impl RelationClass {
    /// The trace inner product of the class.
    pub fn inner_product(&self, kind: RelationKind) -> f64 {
        match kind {
            RelationKind::Angles => self.representative.iter().sum(),
            RelationKind::InnerProducts => self.representative[0],
        }
    }
}

/// A partition of `S x S` into relations. Class 0 is the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationPartition {
    pub size: usize,
    pub kind: RelationKind,
    pub classes: Vec<RelationClass>,
    /// Row-major `N x N` class indices.
    pub assignment: Vec<usize>,
}

impl RelationPartition {
    fn from_pairs(size: usize, kind: RelationKind, identity: Vec<f64>, pair_values: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        let (means, labels) = cluster_vectors(&pair_values, tol)?;
        let mut classes = vec![RelationClass {
            representative: identity,
            pairs: size,
        }];
        classes.extend(means.into_iter().map(|representative| RelationClass { representative, pairs: 0 }));
        let mut assignment = vec![0; size * size];
        let mut k = 0;
        for i in 0..size {
            for j in (i + 1)..size {
                let c = labels[k] + 1;
                assignment[i * size + j] = c;
                assignment[j * size + i] = c;
                classes[c].pairs += 2;
                k += 1;
            }
        }
        Ok(RelationPartition {
            size,
            kind,
            classes,
            assignment,
        })
    }

    pub fn class_of(&self, i: usize, j: usize) -> usize {
        self.assignment[i * self.size + j]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The 0/1 matrix of class `k`.
    pub fn relation_matrix(&self, k: usize) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.size, self.size, |i, j| if self.class_of(i, j) == k { 1.0 } else { 0.0 })
    }

    /// Merges classes with equal trace inner product (within `tol`).
    pub fn coarsen(&self, tol: f64) -> Result<RelationPartition> {
        if self.kind == RelationKind::InnerProducts {
            return Ok(self.clone());
        }
        let values: Vec<Vec<f64>> = self.classes[1..]
            .iter()
            .map(|c| vec![c.inner_product(self.kind)])
            .collect();
        let (means, labels) = cluster_vectors(&values, tol)?;
        let m = self.classes[0].representative.len() as f64;
        let mut classes = vec![RelationClass {
            representative: vec![m],
            pairs: self.size,
        }];
        classes.extend(means.into_iter().map(|representative| RelationClass { representative, pairs: 0 }));
        let map: Vec<usize> = std::iter::once(0).chain(labels.iter().map(|l| l + 1)).collect();
        for (old, class) in self.classes.iter().enumerate().skip(1) {
            classes[map[old]].pairs += class.pairs;
        }
        Ok(RelationPartition {
            size: self.size,
            kind: RelationKind::InnerProducts,
            classes,
            assignment: self.assignment.iter().map(|&c| map[c]).collect(),
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size,
            "kind": match self.kind { RelationKind::Angles => "angles", RelationKind::InnerProducts => "inner-products" },
            "classes": self.classes.iter().map(|c| json!({
                "representative": c.representative,
                "inner_product": c.inner_product(self.kind),
                "pairs": c.pairs,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for RelationPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} classes on {} members", self.classes.len(), self.size)?;
        for (k, c) in self.classes.iter().enumerate() {
            let rep: Vec<String> = c.representative.iter().map(|v| format!("{v:.10}")).collect();
            writeln!(
                f,
                "  class {k}: ({}) inner product {:.10}, {} ordered pairs",
                rep.join(", "),
                c.inner_product(self.kind),
                c.pairs
            )?;
        }
        Ok(())
    }
}

/// Relations by principal angles, clustered in the max norm at `tol`.
pub fn angle_classes(code: &Code, tol: f64) -> Result<RelationPartition> {
    if code.len() < 2 {
        return Err(Error::OutOfRange("angle classes need at least two members".into()));
    }
    let values: Vec<Vec<f64>> = pair_angles(code)?.into_iter().flatten().collect();
    RelationPartition::from_pairs(code.len(), RelationKind::Angles, vec![1.0; code.m()], values, tol)
}

/// Relations by trace inner product alone.
pub fn coarse_relations(code: &Code, tol: f64) -> Result<RelationPartition> {
    if code.len() < 2 {
        return Err(Error::OutOfRange("relations need at least two members".into()));
    }
    let mut values = Vec::with_capacity(code.len() * (code.len() - 1) / 2);
    for i in 0..code.len() {
        for j in (i + 1)..code.len() {
            values.push(vec![trace_inner_product(code.member(i), code.member(j))?]);
        }
    }
    RelationPartition::from_pairs(code.len(), RelationKind::InnerProducts, vec![code.m() as f64], values, tol)
}
