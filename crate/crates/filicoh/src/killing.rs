//! Kasymov's trace form on fundamental objects, in both readings.
//!
//! As a multilinear form it furnishes the semisimplicity test: an algebra is
//! semisimple iff no nonzero Z annihilates `k(Z, ..., ...)` with the other
//! 2n-3 slots running over the algebra. As a bilinear form on the wedge
//! power it is a Gram matrix, nondegenerate for simple algebras but
//! degenerate on semisimple non-simple ones, where cross-ideal wedges act
//! trivially. Both readings are computed here so the contrast can be
//! reproduced exactly.

use crate::algebra::NLieAlgebra;
use crate::fundamental::{ad_basis_apply, ad_matrix, FundamentalVector};
use crate::matrix::{KernelBuilder, QMatrix};
use crate::multiindex::{k_subsets, BasisMode};
use crate::rational::Rational;
use crate::Result;

/// Trace form `k(X, Y) = tr(ad_X ad_Y)` on wedge-mode fundamental vectors.
pub fn kasymov_form(
    algebra: &NLieAlgebra,
    x: &FundamentalVector,
    y: &FundamentalVector,
) -> Result<Rational> {
    let ax = ad_matrix(algebra, x)?;
    let ay = ad_matrix(algebra, y)?;
    Ok(ax.matmul(&ay).trace())
}

/// Gram matrix of the trace form on the canonical wedge basis.
#[derive(Clone, Debug)]
pub struct GramReport {
    pub matrix: QMatrix,
    pub rank: usize,
    pub nullity: usize,
    pub null_basis: Vec<FundamentalVector>,
    pub is_diagonal: bool,
}

/// Trace form between two canonical basis wedges, via the sparse tables.
fn gram_entry(algebra: &NLieAlgebra, i: usize, j: usize) -> Rational {
    let d = algebra.dim();
    let mut tr = Rational::zero();
    for z in 1..=d {
        for (m, c) in ad_basis_apply(algebra, j, z) {
            for (t, c2) in ad_basis_apply(algebra, i, *m) {
                if *t == z {
                    let term = c * c2;
                    tr += &term;
                }
            }
        }
    }
    tr
}

pub fn wedge_gram_matrix(algebra: &NLieAlgebra) -> GramReport {
    let w = algebra.wedge_basis().len();
    let mut g = QMatrix::zeros(w, w);
    for i in 0..w {
        for j in 0..=i {
            let v = gram_entry(algebra, i, j);
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    let (rank, kernel) = g.rank_kernel();
    let null_basis = kernel
        .into_iter()
        .map(|coords| FundamentalVector {
            mode: BasisMode::Wedge,
            coords,
        })
        .collect::<Vec<_>>();
    GramReport {
        is_diagonal: g.is_diagonal(),
        rank,
        nullity: null_basis.len(),
        null_basis,
        matrix: g,
    }
}

/// Semisimplicity test: the multilinear form with Z in the first slot and
/// all other slots running over basis vectors. Returns a nonzero annihilator
/// Z as witness when the test fails.
pub fn kasymov_nondegenerate(algebra: &NLieAlgebra) -> (bool, Option<Vec<Rational>>) {
    let d = algebra.dim();
    let n = algebra.arity();
    let w = algebra.wedge_basis().len();
    // gram entries on wedge pairs, computed once
    let mut g = QMatrix::zeros(w, w);
    for i in 0..w {
        for j in 0..=i {
            let v = gram_entry(algebra, i, j);
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    let mut kb = KernelBuilder::new(d);
    let mut tuple = vec![0usize; n - 1];
    for filler in k_subsets(d, n - 2) {
        for ys in algebra.wedge_basis().iter() {
            let yidx = algebra.wedge_basis().index_of(ys).expect("canonical");
            let mut row: Vec<(usize, Rational)> = Vec::new();
            for z in 1..=d {
                tuple[0] = z;
                tuple[1..].copy_from_slice(&filler);
                if let Some((xidx, sign)) = algebra.wedge_basis().resolve(&tuple) {
                    let entry = g.at(xidx, yidx) * &Rational::from_int(sign);
                    if !entry.is_zero() {
                        row.push((z - 1, entry));
                    }
                }
            }
            kb.push_sparse(&row);
        }
    }
    if kb.nullity() == 0 {
        (true, None)
    } else {
        let witness = kb.kernel()[0].clone();
        (false, Some(witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::unit;
    use crate::fundamental::random_rational;
    use crate::multiindex::epsilon;

    fn a4() -> NLieAlgebra {
        NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap()
    }

    fn wedge(alg: &NLieAlgebra, t: &[usize]) -> FundamentalVector {
        FundamentalVector::decomposable(alg, t).unwrap()
    }

    #[test]
    fn diagonal_values_on_a4() {
        let alg = a4();
        let k = kasymov_form(&alg, &wedge(&alg, &[1, 2]), &wedge(&alg, &[1, 2])).unwrap();
        assert_eq!(k, Rational::from_int(-2));
        let k = kasymov_form(&alg, &wedge(&alg, &[1, 2]), &wedge(&alg, &[1, 3])).unwrap();
        assert!(k.is_zero());
    }

    #[test]
    fn gram_of_a4_is_minus_two_identity() {
        let report = wedge_gram_matrix(&a4());
        assert!(report.is_diagonal);
        assert_eq!(report.rank, 6);
        assert_eq!(report.nullity, 0);
        for i in 0..6 {
            assert_eq!(report.matrix.at(i, i), &Rational::from_int(-2));
        }
    }

    /// Independent route for the simple family: the double epsilon
    /// contraction weighted by the signature, instead of traces of products.
    fn gram_entry_epsilon_oracle(signature: &[i64], xi: &[usize], yj: &[usize]) -> Rational {
        let d = signature.len();
        let mut acc = 0i64;
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for l in 1..=d {
            for s in 1..=d {
                left.clear();
                left.extend_from_slice(yj);
                left.push(s);
                left.push(l);
                right.clear();
                right.extend_from_slice(xi);
                right.push(l);
                right.push(s);
                acc += signature[l - 1] * signature[s - 1] * epsilon(&left) * epsilon(&right);
            }
        }
        Rational::from_int(acc)
    }

    #[test]
    fn gram_matches_epsilon_contraction_on_all_signatures() {
        for bits in 0..16u32 {
            let signature: Vec<i64> =
                (0..4).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
            let alg = NLieAlgebra::simple(3, &signature).unwrap();
            let report = wedge_gram_matrix(&alg);
            assert!(report.is_diagonal, "signature {signature:?}");
            assert_eq!(report.nullity, 0);
            for i in 0..6 {
                assert!(!report.matrix.at(i, i).is_zero());
                for j in 0..6 {
                    let xi = alg.wedge_basis().at(i).to_vec();
                    let yj = alg.wedge_basis().at(j).to_vec();
                    let oracle = gram_entry_epsilon_oracle(&signature, &xi, &yj);
                    assert_eq!(
                        report.matrix.at(i, j),
                        &oracle,
                        "signature {signature:?} at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn direct_sum_contrast() {
        let sum = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
        let report = wedge_gram_matrix(&sum);
        assert_eq!(report.rank, 12);
        assert_eq!(report.nullity, 16);
        // every null vector is supported on cross-ideal wedges
        for v in &report.null_basis {
            for (i, c) in v.coords.iter().enumerate() {
                if !c.is_zero() {
                    let idx = sum.wedge_basis().at(i);
                    assert!(idx[0] <= 4 && idx[1] > 4, "unexpected support {idx:?}");
                }
            }
        }
        let (nondeg, witness) = kasymov_nondegenerate(&sum);
        assert!(nondeg, "witness {witness:?}");
        // cross-ideal wedges pair to zero with everything
        let x = wedge(&sum, &[1, 5]);
        for j in 0..sum.wedge_basis().len() {
            let y = FundamentalVector::basis_wedge(&sum, j);
            assert!(kasymov_form(&sum, &x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn degenerate_on_solvable_algebra() {
        let alg = NLieAlgebra::new(3, 3, None, vec![(vec![1, 2, 3], 1, Rational::one())])
            .unwrap();
        let (nondeg, witness) = kasymov_nondegenerate(&alg);
        assert!(!nondeg);
        assert_eq!(witness.unwrap(), unit(3, 1));
        let abelian = NLieAlgebra::abelian(3, 4);
        assert!(wedge_gram_matrix(&abelian).matrix.is_zero());
    }

    #[test]
    fn form_is_symmetric_on_random_vectors() {
        use rand::SeedableRng;
        let sum = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
        let w = sum.wedge_basis().len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let x = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
            let y = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
            assert_eq!(
                kasymov_form(&sum, &x, &y).unwrap(),
                kasymov_form(&sum, &y, &x).unwrap()
            );
            let _ = random_rational(&mut rng);
        }
    }
}
