//! n-Leibniz algebras: the derivation identity without total antisymmetry.
//!
//! The bracket of an n-Leibniz algebra satisfies the same left-derivation
//! identity as a Filippov bracket but carries no symmetry constraint, so its
//! structure tensor lives on all index tuples and its fundamental objects on
//! the full tensor power. Every n-Lie algebra is an n-Leibniz algebra; in
//! the other direction, the composition of fundamental objects of any
//! n-Leibniz (or n-Lie) algebra is an ordinary (arity-2) Leibniz bracket on
//! the space of fundamental objects.

use crate::algebra::{add_scaled_sparse, NLieAlgebra, SparseVec};
use crate::fundamental::FundamentalVector;
use crate::matrix::QMatrix;
use crate::multiindex::{BasisMode, MultiIndexBasis};
use crate::rational::Rational;
use crate::{Error, Result};

/// An n-ary algebra with no antisymmetry constraint on the bracket.
pub struct NLeibnizAlgebra {
    n: usize,
    d: usize,
    /// g[t] = bracket of the t-th basis tuple, sparse over targets.
    g: Vec<SparseVec>,
    tuples: MultiIndexBasis,
    blocks: MultiIndexBasis,
}

#[derive(Clone, Debug)]
pub struct LeibnizReport {
    pub passed: bool,
    pub witness: Option<(Vec<usize>, Vec<usize>, Vec<Rational>)>,
}

impl NLeibnizAlgebra {
    pub fn new(
        n: usize,
        d: usize,
        entries: impl IntoIterator<Item = (Vec<usize>, usize, Rational)>,
    ) -> Result<Self> {
        if n < 2 || d == 0 {
            return Err(Error::InvalidStructure(
                "arity must be >= 2 and dimension positive".into(),
            ));
        }
        let tuples = MultiIndexBasis::new(d, n, BasisMode::Tensor);
        let blocks = MultiIndexBasis::new(d, n - 1, BasisMode::Tensor);
        let mut g = vec![SparseVec::new(); tuples.len()];
        for (idx, target, coeff) in entries {
            let Some(t) = tuples.index_of(&idx) else {
                return Err(Error::InvalidStructure(format!(
                    "tuple {idx:?} out of range"
                )));
            };
            if target < 1 || target > d {
                return Err(Error::InvalidStructure(format!(
                    "target {target} out of range"
                )));
            }
            if coeff.is_zero() {
                continue;
            }
            match g[t].iter_mut().find(|(m, _)| *m == target) {
                Some((_, c)) => *c += &coeff,
                None => g[t].push((target, coeff)),
            }
        }
        for row in &mut g {
            row.retain(|(_, c)| !c.is_zero());
            row.sort_by_key(|(m, _)| *m);
        }
        Ok(NLeibnizAlgebra {
            n,
            d,
            g,
            tuples,
            blocks,
        })
    }

    /// Reinterprets an n-Lie algebra as an n-Leibniz algebra by expanding
    /// the antisymmetric tensor over all tuples.
    pub fn from_nlie(algebra: &NLieAlgebra) -> Self {
        let n = algebra.arity();
        let d = algebra.dim();
        let tuples = MultiIndexBasis::new(d, n, BasisMode::Tensor);
        let blocks = MultiIndexBasis::new(d, n - 1, BasisMode::Tensor);
        let g = tuples
            .iter()
            .map(|t| algebra.bracket_tuple(t))
            .collect();
        NLeibnizAlgebra {
            n,
            d,
            g,
            tuples,
            blocks,
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn tuple_basis(&self) -> &MultiIndexBasis {
        &self.tuples
    }

    pub fn block_basis(&self) -> &MultiIndexBasis {
        &self.blocks
    }

    pub fn structure_entries(&self) -> impl Iterator<Item = (&[usize], usize, &Rational)> {
        self.g.iter().enumerate().flat_map(move |(t, row)| {
            row.iter().map(move |(m, c)| (self.tuples.at(t), *m, c))
        })
    }

    pub fn bracket_tuple(&self, tuple: &[usize]) -> &SparseVec {
        let t = self.tuples.index_of(tuple).expect("tuple in range");
        &self.g[t]
    }

    /// Left n-Leibniz identity residual on a pair of basis tuples.
    pub fn identity_residual(&self, x: &[usize], y: &[usize]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.d];
        let mut args = vec![0usize; self.n];
        args[..self.n - 1].copy_from_slice(x);
        for (m, c) in self.bracket_tuple(y).clone() {
            args[self.n - 1] = m;
            add_scaled_sparse(&mut out, &c, self.bracket_tuple(&args));
        }
        let mut yargs = y.to_vec();
        for a in 0..self.n {
            args[self.n - 1] = y[a];
            let inner = self.bracket_tuple(&args).clone();
            for (m, c) in inner {
                yargs[a] = m;
                let neg = -&c;
                add_scaled_sparse(&mut out, &neg, self.bracket_tuple(&yargs));
            }
            yargs[a] = y[a];
        }
        out
    }

    /// Verifies the left n-Leibniz identity on every pair of basis tuples:
    /// (n-1)-tuples against n-tuples, with no antisymmetry assumed.
    pub fn check_identity(&self) -> LeibnizReport {
        for x in self.blocks.iter() {
            for y in self.tuples.iter() {
                let res = self.identity_residual(x, y);
                if res.iter().any(|r| !r.is_zero()) {
                    return LeibnizReport {
                        passed: false,
                        witness: Some((x.to_vec(), y.to_vec(), res)),
                    };
                }
            }
        }
        LeibnizReport {
            passed: true,
            witness: None,
        }
    }

    /// Matrix of Z -> [X_1, ..., X_{n-1}, Z] for a tensor-mode fundamental
    /// vector.
    pub fn ad_matrix(&self, x: &FundamentalVector) -> Result<QMatrix> {
        if x.mode != BasisMode::Tensor || x.coords.len() != self.blocks.len() {
            return Err(Error::ModeMismatch);
        }
        let mut m = QMatrix::zeros(self.d, self.d);
        let mut args = vec![0usize; self.n];
        for (b, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            args[..self.n - 1].copy_from_slice(self.blocks.at(b));
            for z in 1..=self.d {
                args[self.n - 1] = z;
                for (t, coeff) in self.bracket_tuple(&args) {
                    let term = c * coeff;
                    m.add_at(t - 1, z - 1, &term);
                }
            }
        }
        Ok(m)
    }

    /// Composition of tensor-mode fundamental vectors: the first block acts
    /// on each slot of the second.
    pub fn compose(
        &self,
        x: &FundamentalVector,
        y: &FundamentalVector,
    ) -> Result<FundamentalVector> {
        for v in [x, y] {
            if v.mode != BasisMode::Tensor || v.coords.len() != self.blocks.len() {
                return Err(Error::ModeMismatch);
            }
        }
        let mut out = FundamentalVector::zero(self.blocks.len(), BasisMode::Tensor);
        let mut args = vec![0usize; self.n];
        for (bx, cx) in x.coords.iter().enumerate() {
            if cx.is_zero() {
                continue;
            }
            args[..self.n - 1].copy_from_slice(self.blocks.at(bx));
            for (by, cy) in y.coords.iter().enumerate() {
                if cy.is_zero() {
                    continue;
                }
                let cxy = cx * cy;
                let yblock = self.blocks.at(by);
                let mut slot = yblock.to_vec();
                for a in 0..self.n - 1 {
                    args[self.n - 1] = yblock[a];
                    for (m, c) in self.bracket_tuple(&args) {
                        slot[a] = *m;
                        let k = self.blocks.index_of(&slot).expect("tuple in range");
                        let term = &cxy * c;
                        out.coords[k] += &term;
                    }
                    slot[a] = yblock[a];
                }
            }
        }
        Ok(out)
    }
}

/// The ordinary Leibniz algebra carried by the fundamental objects of an
/// n-Lie algebra: the 2-bracket is the composition, on the canonical wedge
/// basis.
pub fn associated_leibniz_algebra(algebra: &NLieAlgebra) -> NLeibnizAlgebra {
    let w = algebra.wedge_basis().len();
    let tables = algebra.tables();
    let mut entries = Vec::new();
    for i in 0..w {
        for j in 0..w {
            for (k, c) in &tables.compose[i * w + j] {
                entries.push((vec![i + 1, j + 1], k + 1, c.clone()));
            }
        }
    }
    NLeibnizAlgebra::new(2, w, entries).expect("valid shape")
}

/// Same construction for an n-Leibniz input, over the tensor block basis.
pub fn associated_leibniz_of_leibniz(l: &NLeibnizAlgebra) -> NLeibnizAlgebra {
    let b = l.block_basis().len();
    let mut entries = Vec::new();
    for i in 0..b {
        let mut x = FundamentalVector::zero(b, BasisMode::Tensor);
        x.coords[i] = Rational::one();
        for j in 0..b {
            let mut y = FundamentalVector::zero(b, BasisMode::Tensor);
            y.coords[j] = Rational::one();
            let xy = l.compose(&x, &y).expect("modes match");
            for (k, c) in xy.coords.iter().enumerate() {
                if !c.is_zero() {
                    entries.push((vec![i + 1, j + 1], k + 1, c.clone()));
                }
            }
        }
    }
    NLeibnizAlgebra::new(2, b, entries).expect("valid shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a4() -> NLieAlgebra {
        NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap()
    }

    #[test]
    fn fa_reinterpreted_as_leibniz_passes() {
        let l = NLeibnizAlgebra::from_nlie(&a4());
        assert!(l.check_identity().passed);
    }

    #[test]
    fn random_tensor_fails_with_witness() {
        let l = NLeibnizAlgebra::new(
            3,
            3,
            vec![
                (vec![1, 1, 2], 3, Rational::one()),
                (vec![2, 3, 1], 1, Rational::one()),
            ],
        )
        .unwrap();
        let report = l.check_identity();
        assert!(!report.passed);
        assert!(report.witness.is_some());
    }

    #[test]
    fn associated_leibniz_of_a4_is_antisymmetric() {
        // the wedge Gram form of the euclidean simple algebra is
        // nondegenerate, so ad is injective and the composition is forced
        // antisymmetric
        let alg = a4();
        let l = associated_leibniz_algebra(&alg);
        assert_eq!(l.dim(), 6);
        assert!(l.check_identity().passed);
        for i in 1..=6 {
            for j in 1..=6 {
                let xy = l.bracket_tuple(&[i, j]).clone();
                let yx = l.bracket_tuple(&[j, i]);
                let neg: SparseVec = yx.iter().map(|(t, c)| (*t, -c)).collect();
                assert_eq!(xy, neg, "({i},{j})");
            }
        }
        // and it coincides with the associated Lie algebra: all six wedge
        // derivations are independent, so the structure constants agree
        let lie = crate::fundamental::associated_lie_algebra(&alg).unwrap();
        assert_eq!(lie.basis_wedges, (0..6).collect::<Vec<_>>());
        for i in 0..6 {
            for j in 0..6 {
                let expect: SparseVec = lie.structure[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k + 1, c.clone()))
                    .collect();
                assert_eq!(l.bracket_tuple(&[i + 1, j + 1]), &expect);
            }
        }
    }

    #[test]
    fn associated_leibniz_of_direct_sum_is_not_antisymmetric() {
        let sum = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
        let l = associated_leibniz_algebra(&sum);
        assert_eq!(l.dim(), 28);
        assert!(l.check_identity().passed);
        // witness: X = (e1, f1) cross wedge, Y = (e2, e3)
        let x = sum.wedge_basis().index_of(&[1, 5]).unwrap() + 1;
        let y = sum.wedge_basis().index_of(&[2, 3]).unwrap() + 1;
        assert!(l.bracket_tuple(&[x, y]).is_empty());
        let yx = l.bracket_tuple(&[y, x]);
        let e4f1 = sum.wedge_basis().index_of(&[4, 5]).unwrap() + 1;
        assert_eq!(yx, &vec![(e4f1, Rational::from_int(-1))]);
    }

    #[test]
    fn n2_lie_algebra_is_its_own_associated_leibniz() {
        let so3 = NLieAlgebra::simple(2, &[1, 1, 1]).unwrap();
        let l = associated_leibniz_algebra(&so3);
        assert_eq!(l.dim(), 3);
        assert!(l.check_identity().passed);
        for t in so3.n_subset_basis().iter() {
            assert_eq!(l.bracket_tuple(t), &so3.bracket_tuple(t));
        }
        // and the construction is idempotent for arity 2
        let again = associated_leibniz_of_leibniz(&l);
        assert!(again.check_identity().passed);
        assert_eq!(again.dim(), 3);
    }
}
