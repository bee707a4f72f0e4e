//! Hypergraphs, headings, colorings and their counting functions.
//!
//! Nodes are `0..d`. Edges form a multiset kept in input order; a heading
//! assigns one head per edge position, so parallel edges have independent
//! heads. A heading is acyclic when the digraph with an arc `u -> head(e)`
//! for every edge `e` and every non-head `u ∈ e` has no directed cycle.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat;
use crate::par;
use crate::poly::Polynomial;
use crate::setfn::{SetFn, Subset, MAX_D};

/// Default cap on enumerated headings or colorings.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    d: usize,
    edges: Vec<Subset>,
    names: Vec<String>,
}

impl Hypergraph {
    /// Edges are given as lists of 0-based node indices.
    pub fn new(d: usize, edges: &[Vec<usize>]) -> Result<Self> {
        let masks = edges
            .iter()
            .map(|e| {
                e.iter().try_fold(0 as Subset, |acc, &i| {
                    if i >= d {
                        Err(Error::InvalidHypergraph(format!("node {i} outside 0..{d}")))
                    } else {
                        Ok(acc | 1 << i)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(d, masks)
    }

    pub fn from_masks(d: usize, edges: Vec<Subset>) -> Result<Self> {
        if !(1..=MAX_D).contains(&d) {
            return Err(Error::DimensionOutOfRange { d, min: 1, max: MAX_D });
        }
        let full = ((1u32 << d) - 1) as Subset;
        for &e in &edges {
            if e == 0 {
                return Err(Error::InvalidHypergraph("empty edge".into()));
            }
            if e & !full != 0 {
                return Err(Error::InvalidHypergraph(format!("edge outside 0..{d}")));
            }
        }
        let names = (1..=d).map(|i| i.to_string()).collect();
        Ok(Hypergraph { d, edges, names })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.d {
            return Err(Error::InvalidHypergraph("one name per node required".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[Subset] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edge_nodes(&self, e: usize) -> Vec<usize> {
        (0..self.d).filter(|i| self.edges[e] & (1 << i) != 0).collect()
    }

    pub fn with_edge(&self, nodes: &[usize]) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(nodes.iter().fold(0, |acc, &i| acc | 1 << i));
        Hypergraph::from_masks(self.d, edges)?.with_names(self.names.clone())
    }

    /// `z(T)` = number of edges meeting `T`, with multiplicity.
    pub fn setfn(&self) -> SetFn {
        let z = SetFn::from_fn(self.d, |t| {
            rat(self.edges.iter().filter(|&&e| e & t != 0).count() as i64)
        })
        .expect("d within range");
        debug_assert!(z.is_submodular());
        z
    }

    pub fn validate_heading(&self, s: &Heading) -> Result<()> {
        if s.heads.len() != self.edges.len() {
            return Err(Error::InvalidHeading(format!(
                "{} heads for {} edges",
                s.heads.len(),
                self.edges.len()
            )));
        }
        for (e, &hd) in s.heads.iter().enumerate() {
            if hd >= self.d || self.edges[e] & (1 << hd) == 0 {
                return Err(Error::InvalidHeading(format!("head {hd} not in edge {e}")));
            }
        }
        Ok(())
    }

    pub fn validate_coloring(&self, c: &Coloring) -> Result<()> {
        if c.colors.len() != self.d {
            return Err(Error::InvalidColoring(format!(
                "{} colors for {} nodes",
                c.colors.len(),
                self.d
            )));
        }
        if c.m == 0 || c.colors.iter().any(|&x| x == 0 || x > c.m) {
            return Err(Error::InvalidColoring(format!("colors must lie in 1..={}", c.m)));
        }
        Ok(())
    }

    pub fn is_acyclic(&self, s: &Heading) -> Result<bool> {
        self.validate_heading(s)?;
        Ok(self.heads_acyclic(&s.heads))
    }

    fn heads_acyclic(&self, heads: &[usize]) -> bool {
        // out[u]: heads reachable from u by one arc
        let mut out = [0 as Subset; MAX_D];
        for (&e, &hd) in self.edges.iter().zip(heads) {
            let mut rest = e & !(1 << hd);
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                out[u] |= 1 << hd;
                rest &= rest - 1;
            }
        }
        // peel sinks until nothing changes
        let mut alive: Subset = ((1u32 << self.d) - 1) as Subset;
        loop {
            let sinks = (0..self.d)
                .filter(|&u| alive & (1 << u) != 0 && out[u] & alive == 0)
                .fold(0 as Subset, |acc, u| acc | 1 << u);
            if sinks == 0 {
                return alive == 0;
            }
            alive &= !sinks;
        }
    }

    pub fn indegree_vector(&self, s: &Heading) -> Result<Vec<i64>> {
        self.validate_heading(s)?;
        Ok(self.indegrees(&s.heads))
    }

    fn indegrees(&self, heads: &[usize]) -> Vec<i64> {
        let mut v = vec![0i64; self.d];
        for &hd in heads {
            v[hd] += 1;
        }
        v
    }

    fn heading_count(&self) -> u128 {
        self.edges.iter().map(|e| e.count_ones() as u128).product()
    }

    /// Calls `visit` on every heading whose head for edge `e` lies in
    /// `choices[e]`, in lexicographic order of head indices.
    fn for_each_heading(choices: &[Subset], mut visit: impl FnMut(&[usize])) {
        let options: Vec<Vec<usize>> = choices
            .iter()
            .map(|&c| (0..16).filter(|i| c & (1 << i) != 0).collect())
            .collect();
        if options.iter().any(Vec::is_empty) {
            return;
        }
        let mut idx = vec![0usize; options.len()];
        let mut heads: Vec<usize> = options.iter().map(|o| o[0]).collect();
        loop {
            visit(&heads);
            let mut e = options.len();
            loop {
                if e == 0 {
                    return;
                }
                e -= 1;
                if idx[e] + 1 < options[e].len() {
                    idx[e] += 1;
                    heads[e] = options[e][idx[e]];
                    break;
                }
                idx[e] = 0;
                heads[e] = options[e][0];
            }
        }
    }

    pub fn acyclic_headings(&self) -> Result<Vec<Heading>> {
        self.acyclic_headings_with_budget(ENUMERATION_BUDGET)
    }

    pub fn acyclic_headings_with_budget(&self, budget: u64) -> Result<Vec<Heading>> {
        check_budget(self.heading_count(), budget)?;
        let mut out = Vec::new();
        Self::for_each_heading(&self.edges, |heads| {
            if self.heads_acyclic(heads) {
                out.push(Heading {
                    heads: heads.to_vec(),
                });
            }
        });
        Ok(out)
    }

    /// In-degree vectors of all acyclic headings, deduplicated and sorted.
    pub fn vertices_via_headings(&self) -> Result<Vec<Vec<i64>>> {
        let set: BTreeSet<Vec<i64>> = self
            .acyclic_headings()?
            .iter()
            .map(|s| self.indegrees(&s.heads))
            .collect();
        Ok(set.into_iter().collect())
    }

    pub fn is_proper(&self, c: &Coloring) -> Result<bool> {
        self.validate_coloring(c)?;
        Ok(self.colors_proper(&c.colors))
    }

    fn colors_proper(&self, colors: &[u32]) -> bool {
        self.edges
            .iter()
            .all(|&e| max_nodes(e, colors).count_ones() == 1)
    }

    pub fn is_compatible(&self, s: &Heading, c: &Coloring) -> Result<bool> {
        self.validate_heading(s)?;
        self.validate_coloring(c)?;
        Ok(self
            .edges
            .iter()
            .zip(&s.heads)
            .all(|(&e, &hd)| max_nodes(e, &c.colors) & (1 << hd) != 0))
    }

    /// Number of proper colorings with colors in `1..=m`.
    pub fn chromatic_count(&self, m: u32) -> Result<u64> {
        self.check_colorings(m)?;
        Ok(self.sum_over_colorings(m, |colors| u64::from(self.colors_proper(colors))))
    }

    /// Interpolant of `chromatic_count` through `m = 1..=d+1`.
    pub fn chromatic_polynomial(&self) -> Result<Polynomial> {
        let nodes: Vec<i64> = (1..=self.d as i64 + 1).collect();
        Polynomial::interpolate_ints(&nodes, |m| self.chromatic_count(m as u32))
    }

    /// Number of pairs (acyclic heading, `m`-coloring) where every head
    /// carries the maximal color of its edge.
    pub fn compatible_pairs_count(&self, m: u32) -> Result<u64> {
        self.check_colorings(m)?;
        check_budget(self.heading_count(), ENUMERATION_BUDGET)?;
        Ok(self.sum_over_colorings(m, |colors| {
            let choices: Vec<Subset> = self.edges.iter().map(|&e| max_nodes(e, colors)).collect();
            let mut n = 0u64;
            Self::for_each_heading(&choices, |heads| {
                if self.heads_acyclic(heads) {
                    n += 1;
                }
            });
            n
        }))
    }

    fn check_colorings(&self, m: u32) -> Result<()> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be positive".into()));
        }
        check_budget((m as u128).pow(self.d as u32), ENUMERATION_BUDGET)
    }

    fn sum_over_colorings(&self, m: u32, f: impl Fn(&[u32]) -> u64 + Sync + Send) -> u64 {
        let lo = vec![1i64; self.d];
        let hi = vec![m as i64; self.d];
        par::map_shards(1..=m as i64, |first| {
            let mut total = 0u64;
            let mut colors = vec![0u32; self.d];
            par::for_each_in_box(&lo, &hi, first, |y| {
                for (c, &v) in colors.iter_mut().zip(y) {
                    *c = v as u32;
                }
                total += f(&colors);
            });
            total
        })
        .into_iter()
        .sum()
    }
}

/// Nodes of `edge` carrying its maximal color.
fn max_nodes(edge: Subset, colors: &[u32]) -> Subset {
    let mut best = 0u32;
    let mut set: Subset = 0;
    let mut rest = edge;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        match colors[i].cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = colors[i];
                set = 1 << i;
            }
            std::cmp::Ordering::Equal => set |= 1 << i,
            std::cmp::Ordering::Less => {}
        }
    }
    set
}

fn check_budget(needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// One head per edge position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Heading {
    pub heads: Vec<usize>,
}

impl Heading {
    pub fn new(heads: Vec<usize>) -> Self {
        Heading { heads }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub m: u32,
}

impl Coloring {
    pub fn new(colors: Vec<u32>, m: u32) -> Self {
        Coloring { colors, m }
    }
}

/// `{ "nodes": ["a", ...], "edges": [["a", "b"], ...] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub nodes: Vec<String>,
    pub edges: Vec<Vec<String>>,
}

impl TryFrom<HypergraphJson> for Hypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Self> {
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, n) in j.nodes.iter().enumerate() {
            if index.insert(n.as_str(), i).is_some() {
                return Err(Error::InvalidHypergraph(format!("duplicate node {n:?}")));
            }
        }
        let edges = j
            .edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|n| {
                        index
                            .get(n.as_str())
                            .copied()
                            .ok_or_else(|| Error::InvalidHypergraph(format!("unknown node {n:?}")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(j.nodes.len(), &edges)?.with_names(j.nodes)
    }
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(h: &Hypergraph) -> Self {
        HypergraphJson {
            nodes: h.names.clone(),
            edges: (0..h.edges.len())
                .map(|e| h.edge_nodes(e).into_iter().map(|i| h.names[i].clone()).collect())
                .collect(),
        }
    }
}
