use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ur::{dl_arc, ModelArc, Tag};

/// A tagged segment joining two tree points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeEdge {
    pub from: usize,
    pub to: usize,
    pub tag: Tag,
}

/// Model of a tree of bounded turning: tree points with a global distance
/// matrix and tagged segments forming a spanning tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelTree {
    n: usize,
    dist: Vec<f64>,
    edges: Vec<TreeEdge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl ModelTree {
    pub fn new(rows: Vec<Vec<f64>>, edges: Vec<TreeEdge>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Structural("tree needs a nonempty square matrix".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::Structural(format!("{} edges for {n} tree points", edges.len())));
        }
        let mut adj = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            if e.from >= n || e.to >= n || e.from == e.to {
                return Err(Error::Structural(format!("edge {k} has invalid endpoints")));
            }
            adj[e.from].push((e.to, k));
            adj[e.to].push((e.from, k));
        }
        let tree = Self { n, dist: rows.into_iter().flatten().collect(), edges, adj };
        if tree.parents(0).iter().any(|p| p.is_none()) {
            return Err(Error::Structural("tree is not connected".into()));
        }
        for x in 0..n {
            for y in (x + 1)..n {
                tree.path_arc(x, y)?;
            }
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    /// BFS parent pointers `(parent, edge)` toward `root`.
    fn parents(&self, root: usize) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.n];
        parent[root] = Some((root, usize::MAX));
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(v, k) in &self.adj[u] {
                if parent[v].is_none() {
                    parent[v] = Some((u, k));
                    queue.push_back(v);
                }
            }
        }
        parent
    }

    /// The unique path from `x` to `y` as tree point indices.
    pub fn path(&self, x: usize, y: usize) -> Vec<usize> {
        let parent = self.parents(y);
        let mut path = vec![x];
        let mut u = x;
        while u != y {
            u = parent[u].expect("connected tree").0;
            path.push(u);
        }
        path
    }

    /// The path from `x` to `y` as a model arc.
    pub fn path_arc(&self, x: usize, y: usize) -> Result<ModelArc> {
        let parent = self.parents(y);
        let path = self.path(x, y);
        let segments = path[..path.len() - 1]
            .iter()
            .map(|&u| self.edges[parent[u].expect("connected tree").1].tag)
            .collect();
        let rows = path.iter().map(|&a| path.iter().map(|&b| self.d(a, b)).collect()).collect();
        let params = (0..path.len()).map(|i| i as f64).collect();
        ModelArc::with_ids(path, params, rows, segments)
    }

    /// First point of the `x`–`y` path met when walking from each tree point.
    pub fn first_contact_retraction(&self, x: usize, y: usize) -> Vec<usize> {
        let path = self.path(x, y);
        let mut r = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for &p in &path {
            r[p] = p;
            queue.push_back(p);
        }
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adj[u] {
                if r[v] == usize::MAX {
                    r[v] = r[u];
                    queue.push_back(v);
                }
            }
        }
        r
    }
}

/// `d_Λ` on a tree with the path and the retraction check used to extract it.
#[derive(Debug, Clone, PartialEq)]
pub struct DlTreeReport {
    pub value: f64,
    pub path: Vec<usize>,
    /// Largest difference quotient of the first-contact retraction.
    pub retraction_quotient: f64,
}

pub fn dl_tree(tree: &ModelTree, x: usize, y: usize) -> Result<DlTreeReport> {
    let n = tree.len();
    if x >= n || y >= n {
        return Err(Error::Parameter(format!("tree point out of range ({x}, {y})")));
    }
    let r = tree.first_contact_retraction(x, y);
    let mut quotient = 0.0_f64;
    for a in 0..n {
        for b in (a + 1)..n {
            quotient = quotient.max(tree.d(r[a], r[b]) / tree.d(a, b));
        }
    }
    if x == y {
        return Ok(DlTreeReport { value: 0.0, path: vec![x], retraction_quotient: quotient });
    }
    let arc = tree.path_arc(x, y)?;
    let value = dl_arc(&arc, 0, arc.len() - 1)?;
    Ok(DlTreeReport { value, path: arc.ids().to_vec(), retraction_quotient: quotient })
}
