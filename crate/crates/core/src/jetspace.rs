//! Jet-basis monomials d^α over space-time axes and their Minkowskian signature.

use serde::Serialize;

use crate::error::{Error, Result};

const NAMED_AXES: [&str; 4] = ["t", "x", "y", "z"];

/// Axis 0 is the timelike axis `t`.
pub fn axis_label(axis: usize) -> String {
    NAMED_AXES
        .get(axis)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("w{axis}"))
}

/// Sorted multiset of axis indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex {
    axes: Vec<usize>,
}

impl MultiIndex {
    pub fn new(mut axes: Vec<usize>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidArgument(
                "multi-index degree must be >= 1".into(),
            ));
        }
        axes.sort_unstable();
        Ok(MultiIndex { axes })
    }

    /// Parses labels such as `"tyz"` over the named axes t, x, y, z.
    pub fn parse(s: &str) -> Result<Self> {
        let axes = s
            .chars()
            .map(|c| {
                NAMED_AXES
                    .iter()
                    .position(|a| a.starts_with(c))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown axis '{c}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(axes)
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn degree(&self) -> usize {
        self.axes.len()
    }

    pub fn t_count(&self) -> usize {
        self.axes.iter().filter(|&&a| a == 0).count()
    }

    pub fn label(&self) -> String {
        self.axes.iter().map(|&a| axis_label(a)).collect()
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "d^{}", self.label())
    }
}

/// Odd number of `t` factors.
pub fn is_timelike(m: &MultiIndex) -> bool {
    m.t_count() % 2 == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetEntry {
    pub index: MultiIndex,
    pub timelike: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetBasis {
    pub n_axes: usize,
    pub max_order: usize,
    pub entries: Vec<JetEntry>,
}

impl JetBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn of_degree(&self, k: usize) -> impl Iterator<Item = &JetEntry> {
        self.entries.iter().filter(move |e| e.index.degree() == k)
    }

    /// (timelike, spacelike) counts at a single order.
    pub fn order_counts(&self, k: usize) -> (usize, usize) {
        let (mut p, mut q) = (0, 0);
        for e in self.of_degree(k) {
            if e.timelike {
                p += 1;
            } else {
                q += 1;
            }
        }
        (p, q)
    }

    /// Labels of one sign class at one order, in basis order.
    pub fn class_labels(&self, k: usize, timelike: bool) -> Vec<String> {
        self.of_degree(k)
            .filter(|e| e.timelike == timelike)
            .map(|e| e.index.label())
            .collect()
    }
}

fn multisets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for a in start..n {
        cur.push(a);
        multisets(n, k, a, cur, out);
        cur.pop();
    }
}

/// Graded (by degree), then lexicographic within each degree.
pub fn enumerate_basis(n_axes: usize, max_order: usize) -> Result<JetBasis> {
    if n_axes == 0 || max_order == 0 {
        return Err(Error::InvalidArgument(
            "n_axes and max_order must both be >= 1".into(),
        ));
    }
    let mut entries = Vec::new();
    for k in 1..=max_order {
        let mut raw = Vec::new();
        multisets(n_axes, k, 0, &mut Vec::with_capacity(k), &mut raw);
        for axes in raw {
            let index = MultiIndex { axes };
            let timelike = is_timelike(&index);
            entries.push(JetEntry { index, timelike });
        }
    }
    Ok(JetBasis {
        n_axes,
        max_order,
        entries,
    })
}

/// Σ_{k=1..r} C(n+k−1, k).
pub fn basis_count(n_axes: usize, max_order: usize) -> usize {
    let mut total = 0usize;
    for k in 1..=max_order {
        let mut c = 1usize;
        for i in 0..k {
            c = c * (n_axes + i) / (i + 1);
        }
        total += c;
    }
    total
}

pub fn signature(n_axes: usize, max_order: usize) -> Result<(usize, usize)> {
    if n_axes < 2 {
        return Err(Error::InvalidArgument(
            "signature needs a timelike axis and at least one spacelike axis".into(),
        ));
    }
    let basis = enumerate_basis(n_axes, max_order)?;
    let p = basis.entries.iter().filter(|e| e.timelike).count();
    Ok((p, basis.len() - p))
}

/// Lorentz pieces of the 2-jets: 1-jets carry the vector (4), 2-jets split as 1 ⊕ 9.
pub fn two_jet_irrep_dims() -> (usize, [usize; 2]) {
    (4, [1, 9])
}
