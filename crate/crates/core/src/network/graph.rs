use std::collections::BTreeSet;

use num_traits::One;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;

use super::matrices::stoichiometric_matrix;
use super::ReactionNetwork;
use crate::linalg::{integer_kernel, lp_feasible, rank, IntegerMatrix, Rational, Sign};

/// The three conditions of a regular network.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regularity {
    /// `ker(N)` meets the open positive orthant.
    pub positive_flux: bool,
    /// Each linkage class contains exactly one terminal strong linkage class.
    pub unique_terminal: bool,
    /// Removing the reactions between two adjacent complexes of a terminal
    /// class always disconnects the linkage class.
    pub terminal_cuts_disconnect: bool,
}

impl Regularity {
    pub fn regular(&self) -> bool {
        self.positive_flux && self.unique_terminal && self.terminal_cuts_disconnect
    }
}

/// Structural data of the reaction graph. Complex indices are 0-based.
#[derive(Clone, Debug)]
pub struct GraphSummary {
    pub linkage_classes: Vec<Vec<usize>>,
    pub strong_classes: Vec<Vec<usize>>,
    pub terminal_classes: Vec<Vec<usize>>,
    pub dim_s: usize,
    /// `m − l − dim S`; meaningful when `formula_valid`.
    pub deficiency: i64,
    pub formula_valid: bool,
    pub regularity: Regularity,
    /// Columns span `S^⊥`, Hermite-reduced.
    pub conservation: IntegerMatrix,
}

impl GraphSummary {
    pub fn num_linkage_classes(&self) -> usize {
        self.linkage_classes.len()
    }

    pub fn regular(&self) -> bool {
        self.regularity.regular()
    }
}

fn components(m: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(m);
    for (a, b) in edges {
        uf.union(a, b);
    }
    let labels = uf.into_labeling();
    let mut seen: Vec<Option<usize>> = vec![None; m];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, &root) in labels.iter().enumerate() {
        match seen[root] {
            Some(c) => out[c].push(i),
            None => {
                seen[root] = Some(out.len());
                out.push(vec![i]);
            }
        }
    }
    out
}

pub fn graph_summary(net: &ReactionNetwork) -> GraphSummary {
    let m = net.num_complexes();
    let edges: Vec<(usize, usize)> = net.reactions().iter().map(|r| (r.educt, r.product)).collect();
    let linkage_classes = components(m, edges.iter().copied());

    let mut g = DiGraph::<(), ()>::with_capacity(m, edges.len());
    let nodes: Vec<NodeIndex> = (0..m).map(|_| g.add_node(())).collect();
    for &(a, b) in &edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let mut strong_classes: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    strong_classes.sort();
    let mut class_of = vec![0; m];
    for (c, members) in strong_classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let terminal_classes: Vec<Vec<usize>> = strong_classes
        .iter()
        .enumerate()
        .filter(|(c, _)| edges.iter().all(|&(a, b)| class_of[a] != *c || class_of[b] == *c))
        .map(|(_, v)| v.clone())
        .collect();

    let unique_terminal = linkage_classes.iter().all(|lc| {
        terminal_classes
            .iter()
            .filter(|t| lc.contains(&t[0]))
            .count()
            == 1
    });

    let n = stoichiometric_matrix(net);
    let dim_s = rank(&n.to_rational());
    let deficiency = m as i64 - linkage_classes.len() as i64 - dim_s as i64;
    let conservation = integer_kernel(&n.transpose());

    let positive_flux = net.num_reactions() > 0
        && lp_feasible(
            &n.to_rational(),
            &vec![Sign::Pos; net.num_reactions()],
            &Rational::one(),
        )
        .is_some();

    let terminal_cuts_disconnect = terminal_classes.iter().all(|t| {
        let members: BTreeSet<usize> = t.iter().copied().collect();
        let lc = linkage_classes
            .iter()
            .find(|lc| lc.contains(&t[0]))
            .expect("every complex lies in a linkage class");
        let adjacent: BTreeSet<(usize, usize)> = edges
            .iter()
            .filter(|(a, b)| members.contains(a) && members.contains(b))
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        adjacent.iter().all(|&(u, v)| {
            let kept = edges
                .iter()
                .copied()
                .filter(|&(a, b)| (a.min(b), a.max(b)) != (u, v));
            let parts = components(m, kept);
            parts.iter().filter(|p| lc.contains(&p[0])).count() > 1
        })
    });

    GraphSummary {
        linkage_classes,
        strong_classes,
        terminal_classes,
        dim_s,
        deficiency,
        formula_valid: unique_terminal,
        regularity: Regularity {
            positive_flux,
            unique_terminal,
            terminal_cuts_disconnect,
        },
        conservation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fixtures;

    #[test]
    fn phos1_is_regular_deficiency_one() {
        let g = graph_summary(&fixtures::phos1());
        assert_eq!(g.num_linkage_classes(), 2);
        assert_eq!(g.dim_s, 3);
        assert_eq!(g.deficiency, 1);
        assert!(g.formula_valid);
        assert!(g.regular());
        assert_eq!(g.conservation.cols(), 3);
    }

    #[test]
    fn phos2_terminal_classes() {
        let g = graph_summary(&fixtures::phos2());
        // S2+E is complex 3, S0+F is complex 6 (1-based).
        assert_eq!(g.terminal_classes, vec![vec![2], vec![5]]);
        assert_eq!(g.deficiency, 2);
    }

    #[test]
    fn triangle_is_one_strong_class() {
        let g = graph_summary(&fixtures::triangle());
        assert_eq!(g.terminal_classes, vec![vec![0, 1, 2]]);
        // Removing one pair of reactions leaves the triangle connected.
        assert!(!g.regularity.terminal_cuts_disconnect);
        assert!(g.regularity.positive_flux);
        assert_eq!(g.dim_s, 1);
        assert_eq!(g.deficiency, 1);
    }

    #[test]
    fn empty_network() {
        let net = ReactionNetwork::new(vec![], vec![], vec![]).unwrap();
        let g = graph_summary(&net);
        assert_eq!(g.num_linkage_classes(), 0);
        assert_eq!(g.deficiency, 0);
        assert_eq!(g.dim_s, 0);
    }
}
