use crate::error::{Error, Result};

/// A finite-dimensional space with an ordered, labelled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
}

impl BasedSpace {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Invalid("space must have positive dimension".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Invalid(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// Basis labelled `x0, x1, ...`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Self { labels: (0..n).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Direct sum; labels of `other` get `suffix` appended.
    pub fn direct_sum(&self, other: &BasedSpace, suffix: &str) -> Self {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}{suffix}")));
        Self { labels }
    }
}
