use crate::{Error, Result};

/// Largest total Hilbert-space dimension a layout may describe.
pub const MAX_TOTAL_DIMENSION: usize = 4096;

/// Ordered subsystem dimensions with display labels.
///
/// Subsystem 0 is the most significant tensor factor. Default labels are
/// `A, B0, B1, ...`, matching the `A|B0 B1 ... B(N-1)` partition used by the
/// polygamy bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemLayout {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl SystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        let labels = default_labels(dims.len());
        Self::with_labels(dims, labels)
    }

    pub fn with_labels(dims: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Layout("layout has no subsystems".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::Layout(format!("subsystem dimension {d} is below 2")));
        }
        if labels.len() != dims.len() {
            return Err(Error::Layout(format!(
                "{} labels for {} subsystems",
                labels.len(),
                dims.len()
            )));
        }
        let mut total = 1usize;
        for &d in &dims {
            total = total.saturating_mul(d);
        }
        if total > MAX_TOTAL_DIMENSION {
            return Err(Error::Size { dim: total, cap: MAX_TOTAL_DIMENSION });
        }
        Ok(Self { dims, labels })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Self {
        Self::new(vec![2; n]).expect("qubit layout within cap")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Layout of the listed subsystems in their original order.
    pub fn subset(&self, keep: &[usize]) -> Result<Self> {
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.is_empty() || kept.len() != keep.len() {
            return Err(Error::Layout("keep set is empty or has duplicates".into()));
        }
        if let Some(&bad) = kept.iter().find(|&&i| i >= self.dims.len()) {
            return Err(Error::Layout(format!("subsystem {bad} out of range")));
        }
        Ok(Self {
            dims: kept.iter().map(|&i| self.dims[i]).collect(),
            labels: kept.iter().map(|&i| self.labels[i].clone()).collect(),
        })
    }

    /// Checks that `side` is a nonempty strict subset of the subsystems and
    /// returns it sorted.
    pub fn bipartition(&self, side: &[usize]) -> Result<Vec<usize>> {
        let mut s = side.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != side.len() {
            return Err(Error::Layout("partition side has duplicates".into()));
        }
        if s.is_empty() || s.len() >= self.dims.len() {
            return Err(Error::Layout(format!(
                "partition side {side:?} must be a nonempty strict subset of {} subsystems",
                self.dims.len()
            )));
        }
        if let Some(&bad) = s.iter().find(|&&i| i >= self.dims.len()) {
            return Err(Error::Layout(format!("subsystem {bad} out of range")));
        }
        Ok(s)
    }

    /// Joint dimension of the listed subsystems.
    pub fn dim_of(&self, subs: &[usize]) -> usize {
        subs.iter().map(|&i| self.dims[i]).product()
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i == 0 { "A".to_string() } else { format!("B{}", i - 1) })
        .collect()
}
