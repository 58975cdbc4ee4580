//! Rooted trees of growth nodes.
//!
//! Node ids are dense insertion indices and a parent id is always smaller
//! than its child's id, so iterating ids in reverse visits every child before
//! its parent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthNode<T> {
    pub id: usize,
    pub pos: Point2<T>,
    pub parent: Option<usize>,
    /// Vessel radius in pixels; zero until radii are assigned.
    pub radius: T,
    /// Set when the assigned radius hit the configured maximum.
    #[serde(default)]
    pub clamped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VesselForest<T> {
    nodes: Vec<GrowthNode<T>>,
    roots: Vec<usize>,
    width: u32,
    height: u32,
}

impl<T: Scalar> VesselForest<T> {
    pub fn new(width: u32, height: u32) -> Self {
        Self {
            nodes: Vec::new(),
            roots: Vec::new(),
            width,
            height,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn nodes(&self) -> &[GrowthNode<T>] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &GrowthNode<T> {
        &self.nodes[id]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        p.in_rect(self.width, self.height)
    }

    /// Appends a node and returns its id (the previous node count).
    pub fn add_node(&mut self, pos: Point2<T>, parent: Option<usize>) -> Result<usize> {
        if !self.contains(pos) {
            return Err(Error::DomainBounds {
                x: pos.x.as_f64(),
                y: pos.y.as_f64(),
                width: self.width,
                height: self.height,
            });
        }
        let id = self.nodes.len();
        if let Some(p) = parent {
            if p >= id {
                return Err(Error::Structure(format!(
                    "parent {p} does not exist (forest has {id} nodes)"
                )));
            }
        } else {
            self.roots.push(id);
        }
        self.nodes.push(GrowthNode {
            id,
            pos,
            parent,
            radius: T::zero(),
            clamped: false,
        });
        Ok(id)
    }

    pub(crate) fn set_radius(&mut self, id: usize, radius: T, clamped: bool) {
        let n = &mut self.nodes[id];
        n.radius = radius;
        n.clamped = clamped;
    }

    /// Child lists indexed by node id, each ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for n in &self.nodes {
            if let Some(p) = n.parent {
                out[p].push(n.id);
            }
        }
        out
    }

    /// Ids of childless nodes, ascending.
    pub fn leaves(&self) -> Vec<usize> {
        let mut has_child = vec![false; self.nodes.len()];
        for p in self.nodes.iter().filter_map(|n| n.parent) {
            has_child[p] = true;
        }
        (0..self.nodes.len()).filter(|&i| !has_child[i]).collect()
    }

    /// Nodes with at least two children, with those children, ascending by id.
    pub fn bifurcations(&self) -> Vec<(usize, Vec<usize>)> {
        self.children()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| c.len() >= 2)
            .collect()
    }

    /// `(parent, child)` id pairs in child order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes.iter().filter_map(|n| n.parent.map(|p| (p, n.id)))
    }

    pub fn edge_lengths(&self) -> impl Iterator<Item = T> + '_ {
        self.edges()
            .map(|(p, c)| self.nodes[p].pos.dist(self.nodes[c].pos))
    }

    pub fn has_radii(&self) -> bool {
        self.nodes.iter().all(|n| n.radius > T::zero())
    }

    /// Checks the structural invariants; used after deserialising a forest.
    pub fn validate(&self) -> Result<()> {
        let mut expected_roots = Vec::new();
        for (i, n) in self.nodes.iter().enumerate() {
            if n.id != i {
                return Err(Error::Structure(format!("node at index {i} has id {}", n.id)));
            }
            if !self.contains(n.pos) {
                return Err(Error::DomainBounds {
                    x: n.pos.x.as_f64(),
                    y: n.pos.y.as_f64(),
                    width: self.width,
                    height: self.height,
                });
            }
            match n.parent {
                Some(p) if p >= i => {
                    return Err(Error::Structure(format!("node {i} has parent {p} >= own id")))
                }
                Some(_) => {}
                None => expected_roots.push(i),
            }
            if n.radius < T::zero() || !n.radius.is_finite() {
                return Err(Error::Structure(format!("node {i} has invalid radius")));
            }
        }
        if expected_roots != self.roots {
            return Err(Error::Structure("root list does not match parentless nodes".into()));
        }
        Ok(())
    }

    /// The root reached by following parent links from `id`.
    pub fn root_of(&self, mut id: usize) -> usize {
        while let Some(p) = self.nodes[id].parent {
            id = p;
        }
        id
    }
}
