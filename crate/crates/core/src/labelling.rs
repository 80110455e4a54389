//! Edge labellings with exact rational labels.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A labelling of every edge of some graph, stored in the graph's canonical
/// edge order. Ties between labels are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling {
    labels: Vec<BigRational>,
}

impl Labelling {
    pub fn new(g: &Graph, labels: Vec<BigRational>) -> Result<Self> {
        if labels.len() != g.m() {
            return Err(Error::validation(format!(
                "labelling covers {} edges but the graph has {}",
                labels.len(),
                g.m()
            )));
        }
        Ok(Labelling { labels })
    }

    /// Labelling from integer ranks, in canonical edge order.
    pub fn from_ranks(g: &Graph, ranks: impl IntoIterator<Item = u64>) -> Result<Self> {
        let labels = ranks
            .into_iter()
            .map(|r| BigRational::from_integer(BigInt::from(r)))
            .collect();
        Self::new(g, labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Label of the edge with canonical index `edge_id`.
    pub fn label(&self, edge_id: usize) -> &BigRational {
        &self.labels[edge_id]
    }

    pub fn label_of(&self, g: &Graph, u: usize, v: usize) -> Option<&BigRational> {
        g.edge_id(u, v).map(|e| &self.labels[e])
    }

    pub fn labels(&self) -> &[BigRational] {
        &self.labels
    }

    /// Replace the label of one edge; used by the resampling labeller.
    pub(crate) fn set(&mut self, edge_id: usize, value: BigRational) {
        self.labels[edge_id] = value;
    }
}
