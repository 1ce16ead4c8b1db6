use crate::exact::EventSpec;

/// Component structure of one sampled graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCensus {
    n: usize,
    /// Component sizes, largest first.
    sizes: Vec<usize>,
    edges: u64,
    /// Edges that closed a cycle when inserted.
    redundant: u64,
}

impl ComponentCensus {
    pub(crate) fn new(n: usize, mut sizes: Vec<usize>, edges: u64, redundant: u64) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert_eq!(sizes.iter().sum::<usize>(), n);
        ComponentCensus { n, sizes, edges, redundant }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn components(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn edges(&self) -> u64 {
        self.edges
    }

    /// Whether the graph is a forest.
    pub fn is_acyclic(&self) -> bool {
        self.redundant == 0
    }

    /// Vertices in components with more than `r` vertices.
    pub fn v_r(&self, r: usize) -> usize {
        self.sizes.iter().take_while(|&&s| s > r).sum()
    }

    /// Number of components with more than `r` vertices.
    pub fn n_r(&self, r: usize) -> usize {
        self.sizes.iter().take_while(|&&s| s > r).count()
    }

    pub fn satisfies(&self, event: &EventSpec) -> bool {
        event.holds(&self.sizes, self.is_acyclic())
    }
}
