//! Cross-module invariants: the cross-ideal vanishing lemmas on direct sums,
//! nilpotency of the coboundary on a wider family of algebras (including
//! randomly conjugated ones), and frozen cohomology dimensions for the
//! degrees beside one.

use filicoh::algebra::NLieAlgebra;
use filicoh::cohomology::{check_nilpotency, cocycle_basis, cohomology_dims, Action, Complex};
use filicoh::matrix::QMatrix;
use filicoh::rational::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn a4() -> NLieAlgebra {
    NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap()
}

/// Conjugates an algebra by a random unimodular integer matrix. A change of
/// basis preserves the Filippov identity while scrambling the constants.
fn conjugate(alg: &NLieAlgebra, rng: &mut impl Rng) -> NLieAlgebra {
    let d = alg.dim();
    let mut p = QMatrix::identity(d);
    for _ in 0..2 * d {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d);
        if i == j {
            j = (j + 1) % d;
        }
        let c = Rational::from_int(rng.gen_range(-2i64..=2));
        // row_i += c * row_j
        for k in 0..d {
            let v = p.at(i, k) + &(&c * p.at(j, k));
            p.set(i, k, v);
        }
    }
    let columns: Vec<Vec<Rational>> = (0..d)
        .map(|i| (0..d).map(|r| p.at(r, i).clone()).collect())
        .collect();
    let mut entries = Vec::new();
    for subset in alg.n_subset_basis().iter() {
        let args: Vec<Vec<Rational>> = subset.iter().map(|&i| columns[i - 1].clone()).collect();
        let image = alg.bracket(&args).unwrap();
        let coords = p.solve(&image).expect("unimodular");
        for (t, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                entries.push((subset.to_vec(), t + 1, c));
            }
        }
    }
    NLieAlgebra::new(alg.arity(), d, None, entries).unwrap()
}

#[test]
fn coboundary_squares_to_zero_on_a_wider_family() {
    let a5 = NLieAlgebra::simple(4, &[1; 5]).unwrap();
    for action in [Action::Trivial, Action::Adjoint] {
        for p in [0usize, 1] {
            let report = check_nilpotency(&a5, action, p, 20, 5).unwrap();
            assert!(report.passed, "arity-4 algebra, {action:?} p={p}");
        }
    }
    // five random conjugates of mixed direct sums
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let pool: Vec<NLieAlgebra> = vec![
        a4(),
        NLieAlgebra::simple(3, &[1, -1, 1, -1]).unwrap(),
        NLieAlgebra::abelian(3, 2),
        NLieAlgebra::new(3, 3, None, vec![(vec![1, 2, 3], 1, Rational::one())]).unwrap(),
    ];
    for trial in 0..5 {
        let k = rng.gen_range(1..=2);
        let parts: Vec<NLieAlgebra> = (0..k)
            .map(|_| pool[rng.gen_range(0..pool.len())].clone())
            .collect();
        let sum = NLieAlgebra::direct_sum(&parts).unwrap();
        let scrambled = conjugate(&sum, &mut rng);
        assert!(scrambled.check_fi().passed, "trial {trial}");
        for action in [Action::Trivial, Action::Adjoint] {
            for p in [0usize, 1] {
                let report = check_nilpotency(&scrambled, action, p, 5, 100 + trial).unwrap();
                assert!(report.passed, "trial {trial}, {action:?} p={p}");
            }
        }
    }
}

/// On a semisimple sum, a trivial-action 1-cocycle vanishes whenever two of
/// its arguments come from different ideals: exhaustive over the cocycle
/// basis and all mixed basis tuples.
#[test]
fn trivial_cocycles_vanish_across_ideals() {
    let pair = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
    let basis = cocycle_basis(&pair, Action::Trivial, 1).unwrap();
    assert_eq!(basis.len(), 8);
    for c in &basis {
        for (s, subset) in pair.n_subset_basis().iter().enumerate() {
            let lo = subset.iter().any(|&i| i <= 4);
            let hi = subset.iter().any(|&i| i > 4);
            if lo && hi {
                assert!(
                    c.coeffs[s].is_zero(),
                    "cocycle has a cross-ideal component at {subset:?}"
                );
            }
        }
    }
}

/// On a triple sum, any adjoint 1-cocycle component whose value and argument
/// blocks meet at least three distinct ideals vanishes. Rather than solving
/// the (infeasible) full kernel, this verifies the stronger statement that
/// each such coordinate functional is itself a row of the coboundary system:
/// writing the argument from a foreign block as a bracket of its own ideal
/// turns the cocycle condition at that tuple into exactly "this coordinate
/// is zero", all other terms vanishing identically.
#[test]
fn adjoint_cocycle_components_spanning_three_ideals_vanish() {
    let triple = NLieAlgebra::direct_sum(&[a4(), a4(), a4()]).unwrap();
    let complex = Complex::new(&triple, Action::Adjoint);
    let d = triple.dim();
    let block_of = |i: usize| (i - 1) / 4;
    let mut checked = 0usize;
    for (s, subset) in triple.n_subset_basis().iter().enumerate() {
        for r in 1..=d {
            let mut blocks: Vec<usize> = subset.iter().map(|&i| block_of(i)).collect();
            blocks.push(block_of(r));
            blocks.sort_unstable();
            blocks.dedup();
            if blocks.len() < 3 {
                continue;
            }
            // pick an argument living outside the value's block
            let &xn = subset
                .iter()
                .find(|&&i| block_of(i) != block_of(r))
                .expect("three ideals meet");
            let rest: Vec<usize> = subset.iter().copied().filter(|&i| i != xn).collect();
            let x_wedge = triple.wedge_basis().index_of(&rest).unwrap();
            // xn is (plus or minus) the bracket of the other three members
            // of its own block
            let lo = 4 * block_of(xn) + 1;
            let preimage: Vec<usize> = (lo..lo + 4).filter(|&i| i != xn).collect();
            let bracket = triple.bracket_tuple(&preimage);
            assert_eq!(bracket.len(), 1);
            assert_eq!(bracket[0].0, xn);
            let y_wedge = triple.wedge_basis().index_of(&preimage[..2]).unwrap();
            let z = preimage[2];
            let rows = complex.coboundary_rows_at(1, &[x_wedge, y_wedge], z);
            // the cocycle-condition row for the value component r reduces to
            // a single entry at exactly this coordinate
            let row = &rows[r - 1];
            assert_eq!(row.len(), 1, "row not a bare coordinate at {subset:?} r={r}");
            assert_eq!(row[0].0, s * d + (r - 1));
            assert!(!row[0].1.is_zero());
            checked += 1;
        }
    }
    // every mixed component is forced to vanish for every cocycle
    assert!(checked > 500, "only {checked} mixed components found");
}

#[test]
fn frozen_dimensions_for_degrees_zero_and_two() {
    let alg = a4();
    // degree 0: no trivial-action covector annihilates the whole bracket
    // image; the adjoint kernel is the six-dimensional space of maps
    // commuting with the bracket in the coboundary sense
    assert_eq!(cohomology_dims(&alg, Action::Trivial, 0).unwrap(), (0, 0, 0));
    assert_eq!(cohomology_dims(&alg, Action::Adjoint, 0).unwrap(), (6, 0, 6));
    // degree 2 on the simple algebra: every closed 2-cochain for the adjoint
    // action is the coboundary of a 1-cochain, so nothing obstructs second
    // order; for the trivial action nothing at all is closed
    assert_eq!(cohomology_dims(&alg, Action::Trivial, 2).unwrap(), (0, 0, 0));
    assert_eq!(cohomology_dims(&alg, Action::Adjoint, 2).unwrap(), (6, 6, 0));
    // degree 3 is out of scope
    assert!(cohomology_dims(&alg, Action::Adjoint, 3).is_err());
}

/// The composition identities hold exhaustively on all basis fundamental
/// objects of the eight-dimensional direct sum, not just the simple algebra.
#[test]
fn fundamental_identities_exhaustive_at_dimension_eight() {
    use filicoh::fundamental::{check_fundamental_identities, SampleSpec};
    let pair = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
    let report = check_fundamental_identities(&pair, SampleSpec::Exhaustive).unwrap();
    assert!(report.passed, "{:?}", report.failure);
    assert_eq!(report.tuples_checked, 28 * 28 * 28);
}

/// Both coboundary operators vanish identically on an abelian algebra, so
/// everything is a cocycle and nothing a coboundary.
#[test]
fn abelian_coboundaries_vanish_identically() {
    let abelian = NLieAlgebra::abelian(3, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for action in [Action::Trivial, Action::Adjoint] {
        let complex = Complex::new(&abelian, action);
        for p in [0usize, 1] {
            let c = complex.random_cochain(p, &mut rng);
            let dc = complex.coboundary(&c).unwrap();
            assert!(dc.coeffs.iter().all(Rational::is_zero));
            assert!(complex.is_cocycle(&c).unwrap());
        }
    }
    assert_eq!(
        cohomology_dims(&abelian, Action::Trivial, 1).unwrap(),
        (4, 0, 4)
    );
}

/// A random trivial-action cocycle on the direct sum extends centrally, and
/// the assembled zero-cochain removes the central generator again.
#[test]
fn semisimple_extension_trivializes_end_to_end() {
    use filicoh::cohomology::trivialize_semisimple;
    use filicoh::extension::{central_extend, trivialize_extension};
    let pair = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
    let basis = cocycle_basis(&pair, Action::Trivial, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..5 {
        let mut c = basis[0].clone();
        for x in c.coeffs.iter_mut() {
            *x = Rational::zero();
        }
        for b in &basis {
            let a = Rational::from_int(rng.gen_range(-3i64..=3));
            for (x, y) in c.coeffs.iter_mut().zip(&b.coeffs) {
                let t = &a * y;
                *x += &t;
            }
        }
        let ext = central_extend(&pair, &c).unwrap();
        assert!(ext.fi.passed);
        let beta = trivialize_semisimple(&pair, &c).unwrap();
        assert!(trivialize_extension(&ext, &beta).unwrap().success);
    }
}

/// The trace form on basis wedges coincides with the Gram matrix entries.
#[test]
fn kasymov_form_matches_gram_entries() {
    use filicoh::fundamental::FundamentalVector;
    use filicoh::killing::{kasymov_form, wedge_gram_matrix};
    let pair = NLieAlgebra::direct_sum(&[a4(), NLieAlgebra::simple(3, &[1, 1, -1, -1]).unwrap()])
        .unwrap();
    let report = wedge_gram_matrix(&pair);
    let w = pair.wedge_basis().len();
    for i in 0..w {
        for j in 0..w {
            let x = FundamentalVector::basis_wedge(&pair, i);
            let y = FundamentalVector::basis_wedge(&pair, j);
            assert_eq!(&kasymov_form(&pair, &x, &y).unwrap(), report.matrix.at(i, j));
        }
    }
}
