use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Occupations `|m_1, …, m_n⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OccupationVector(pub Vec<usize>);

impl OccupationVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "⟩")
    }
}

/// All occupations of `n` modes with total `N`, in nested-sum order: the state
/// at `(j_1, …, j_{n−1})` is `(N−j_1, j_1−j_2, …, j_{n−1})` with `j_1` outermost
/// and every index ascending.
#[derive(Debug, Clone)]
pub struct OccupationBasis {
    n: usize,
    size: usize,
    states: Vec<OccupationVector>,
    index: HashMap<Vec<usize>, usize>,
}

impl OccupationBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total occupation `N`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &OccupationVector {
        &self.states[i]
    }

    pub fn index_of(&self, m: &[usize]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Position of `|N, 0, …, 0⟩`, always 0.
    pub fn highest_weight_index(&self) -> usize {
        0
    }
}

/// `C(N + n − 1, n − 1)`, exact.
pub fn basis_dimension(n: usize, size: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let k = n - 1;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (size + k - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

pub fn basis(n: usize, size: usize) -> Result<OccupationBasis> {
    if n == 0 {
        return Err(Error::DimensionTooSmall { n, min: 1 });
    }
    let mut states = Vec::with_capacity(basis_dimension(n, size));
    let mut prefix = Vec::with_capacity(n);
    enumerate(n, size, &mut prefix, &mut states);
    let index = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.0.clone(), i))
        .collect();
    Ok(OccupationBasis {
        n,
        size,
        states,
        index,
    })
}

fn enumerate(modes: usize, count: usize, prefix: &mut Vec<usize>, out: &mut Vec<OccupationVector>) {
    if modes == 1 {
        prefix.push(count);
        out.push(OccupationVector(prefix.clone()));
        prefix.pop();
        return;
    }
    for j in 0..=count {
        prefix.push(count - j);
        enumerate(modes - 1, j, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn states(n: usize, size: usize) -> Vec<Vec<usize>> {
        basis(n, size)
            .unwrap()
            .states()
            .iter()
            .map(|s| s.0.clone())
            .collect()
    }

    #[test]
    fn small_bases() {
        assert_eq!(states(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(
            states(3, 1),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        assert_eq!(
            states(3, 2),
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(states(1, 4), vec![vec![4]]);
        assert_eq!(states(4, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn dimensions_and_lookup() {
        for n in 1..=5 {
            for size in 0..=6 {
                let b = basis(n, size).unwrap();
                assert_eq!(b.dim(), basis_dimension(n, size));
                assert!(b.states().iter().all(|s| s.total() == size && s.len() == n));
                for (i, s) in b.states().iter().enumerate() {
                    assert_eq!(b.index_of(s.as_slice()), Some(i));
                }
                let mut first = vec![0; n];
                first[0] = size;
                assert_eq!(b.state(0).0, first);
            }
        }
        assert_eq!(basis_dimension(3, 2), 6);
        assert_eq!(basis_dimension(4, 2), 10);
        assert!(basis(0, 1).is_err());
    }
}
