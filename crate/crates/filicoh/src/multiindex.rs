//! Levi-Civita signs and canonical multi-index bases.
//!
//! Coordinates on the (n-1)-fold wedge or tensor power of an algebra are
//! taken over a canonical ordered list of multi-indices: strictly increasing
//! subsets for the wedge, arbitrary tuples for the tensor power. Basis
//! indices are 1-based throughout, matching the usual e_1, ..., e_d naming.

use std::collections::HashMap;

/// Sign of the permutation sorting `indices`; 0 if any index repeats.
///
/// The totally antisymmetric symbol normalized so that the strictly
/// increasing tuple has sign +1.
pub fn epsilon(indices: &[usize]) -> i64 {
    let mut sign = 1i64;
    for i in 0..indices.len() {
        for j in (i + 1)..indices.len() {
            match indices[j].cmp(&indices[i]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => sign = -sign,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    sign
}

/// Sorts a tuple of basis indices into canonical (strictly increasing) form.
///
/// Returns the sorted tuple and the Levi-Civita sign of the sort, or `None`
/// if an index repeats (degenerate wedge).
pub fn wedge_expand(indices: &[usize]) -> Option<(Vec<usize>, i64)> {
    let sign = epsilon(indices);
    if sign == 0 {
        return None;
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    Some((sorted, sign))
}

/// All strictly increasing `k`-tuples from `1..=d`, in lexicographic order.
pub fn k_subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < d - (k - 1 - i) {
                cur[i] += 1;
                for j in (i + 1)..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All `k`-tuples from `1..=d` in lexicographic (odometer) order.
pub fn all_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(d.pow(k as u32));
    let mut cur = vec![1usize; k];
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < d {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisMode {
    Wedge,
    Tensor,
}

/// Canonical ordered basis of `k`-blocks over a `d`-dimensional space.
#[derive(Clone)]
pub struct MultiIndexBasis {
    pub d: usize,
    pub k: usize,
    pub mode: BasisMode,
    indices: Vec<Vec<usize>>,
    positions: HashMap<Vec<usize>, usize>,
}

impl MultiIndexBasis {
    pub fn new(d: usize, k: usize, mode: BasisMode) -> Self {
        let indices: Vec<Vec<usize>> = match mode {
            BasisMode::Wedge => k_subsets(d, k),
            BasisMode::Tensor => all_tuples(d, k),
        };
        Self::build(d, k, mode, indices)
    }

    fn build(d: usize, k: usize, mode: BasisMode, indices: Vec<Vec<usize>>) -> Self {
        let positions = indices
            .iter()
            .enumerate()
            .map(|(i, idx)| (idx.clone(), i))
            .collect();
        MultiIndexBasis {
            d,
            k,
            mode,
            indices,
            positions,
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn at(&self, i: usize) -> &[usize] {
        &self.indices[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.indices.iter().map(Vec::as_slice)
    }

    /// Position of a canonical multi-index.
    pub fn index_of(&self, idx: &[usize]) -> Option<usize> {
        self.positions.get(idx).copied()
    }

    /// Position and sign of an arbitrary tuple. Wedge mode canonicalizes and
    /// returns `None` on repeats; tensor mode looks the tuple up as-is.
    pub fn resolve(&self, idx: &[usize]) -> Option<(usize, i64)> {
        match self.mode {
            BasisMode::Wedge => {
                let (sorted, sign) = wedge_expand(idx)?;
                Some((self.index_of(&sorted)?, sign))
            }
            BasisMode::Tensor => Some((self.index_of(idx)?, 1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn epsilon_base_cases() {
        assert_eq!(epsilon(&[1, 2, 3, 4]), 1);
        assert_eq!(epsilon(&[1, 2, 4, 3]), -1);
        assert_eq!(epsilon(&[1, 1, 3, 4]), 0);
        assert_eq!(epsilon(&[]), 1);
    }

    #[test]
    fn wedge_expand_cases() {
        assert_eq!(wedge_expand(&[3, 1]), Some((vec![1, 3], -1)));
        assert_eq!(wedge_expand(&[1, 3]), Some((vec![1, 3], 1)));
        assert_eq!(wedge_expand(&[2, 2]), None);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(k_subsets(4, 2).len(), 6);
        assert_eq!(k_subsets(8, 3).len(), binomial(8, 3));
        assert_eq!(k_subsets(5, 0), vec![Vec::<usize>::new()]);
        let b = MultiIndexBasis::new(4, 2, BasisMode::Tensor);
        assert_eq!(b.len(), 16);
        assert_eq!(b.index_of(&[1, 1]), Some(0));
        assert_eq!(b.index_of(&[4, 4]), Some(15));
    }

    #[test]
    fn wedge_basis_bijection() {
        let b = MultiIndexBasis::new(6, 3, BasisMode::Wedge);
        assert_eq!(b.len(), binomial(6, 3));
        for i in 0..b.len() {
            assert_eq!(b.index_of(b.at(i)), Some(i));
        }
    }

    fn tuple() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(1usize..=8, 2..=5)
    }

    proptest! {
        #[test]
        fn epsilon_totally_antisymmetric(t in tuple(), i in 0usize..5, j in 0usize..5) {
            let (i, j) = (i % t.len(), j % t.len());
            prop_assume!(i != j);
            let mut s = t.clone();
            s.swap(i, j);
            prop_assert_eq!(epsilon(&s), -epsilon(&t));
        }

        #[test]
        fn wedge_expand_respects_permutation_sign(t in tuple()) {
            // sorting a permuted tuple lands on the same canonical form with
            // the composed sign
            if let Some((canon, sign)) = wedge_expand(&t) {
                let mut p = t.clone();
                p.reverse();
                let swaps = t.len() * (t.len() - 1) / 2;
                let rev_sign = if swaps % 2 == 0 { 1 } else { -1 };
                let (canon2, sign2) = wedge_expand(&p).unwrap();
                prop_assert_eq!(&canon2, &canon);
                prop_assert_eq!(sign2, sign * rev_sign);
            }
        }
    }
}
