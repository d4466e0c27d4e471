//! Fundamental objects of an n-Lie algebra: antisymmetric (n-1)-blocks of
//! arguments, their composition law, the derivations they induce, and the
//! ordinary Lie algebra those derivations span.
//!
//! A fundamental object X = (X_1, ..., X_{n-1}) acts on the algebra by
//! Z -> [X_1, ..., X_{n-1}, Z]. Two of them compose by letting the first act
//! on each slot of the second; the Filippov identity makes
//! `ad_{X.Y} = [ad_X, ad_Y]`, which is what the identity checks here verify.

use crate::algebra::{add_scaled_sparse, NLieAlgebra};
use crate::matrix::{QMatrix, SpanSolver};
use crate::multiindex::BasisMode;
use crate::rational::Rational;
use crate::{Error, Result};
use rand::Rng;

/// Element of the (n-1)-fold wedge (or tensor) power of an algebra, in
/// coordinates over the canonical multi-index basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalVector {
    pub mode: BasisMode,
    pub coords: Vec<Rational>,
}

impl FundamentalVector {
    pub fn zero(len: usize, mode: BasisMode) -> Self {
        FundamentalVector {
            mode,
            coords: vec![Rational::zero(); len],
        }
    }

    /// The canonical wedge with position `idx` in the algebra's wedge basis.
    pub fn basis_wedge(algebra: &NLieAlgebra, idx: usize) -> Self {
        let mut v = Self::zero(algebra.wedge_basis().len(), BasisMode::Wedge);
        v.coords[idx] = Rational::one();
        v
    }

    /// The decomposable wedge of the given basis indices (1-based); zero if
    /// an index repeats.
    pub fn decomposable(algebra: &NLieAlgebra, tuple: &[usize]) -> Result<Self> {
        if tuple.len() != algebra.arity() - 1 {
            return Err(Error::ArityMismatch {
                expected: algebra.arity() - 1,
                got: tuple.len(),
            });
        }
        let mut v = Self::zero(algebra.wedge_basis().len(), BasisMode::Wedge);
        if let Some((idx, sign)) = algebra.wedge_basis().resolve(tuple) {
            v.coords[idx] = Rational::from_int(sign);
        }
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.mode != other.mode || self.coords.len() != other.coords.len() {
            return Err(Error::ModeMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FundamentalVector {
            mode: self.mode,
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FundamentalVector {
            mode: self.mode,
            coords: self.coords.iter().map(|x| c * x).collect(),
        }
    }

    /// Uniform random coordinates with small numerators and denominators.
    pub fn random(len: usize, mode: BasisMode, rng: &mut impl Rng) -> Self {
        FundamentalVector {
            mode,
            coords: (0..len).map(|_| random_rational(rng)).collect(),
        }
    }
}

pub(crate) fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3))
}

fn expect_wedge(algebra: &NLieAlgebra, v: &FundamentalVector) -> Result<()> {
    if v.mode != BasisMode::Wedge || v.coords.len() != algebra.wedge_basis().len() {
        return Err(Error::ModeMismatch);
    }
    Ok(())
}

/// Matrix of Z -> [X_1, ..., X_{n-1}, Z], extended linearly over the wedge
/// coordinates of `x`.
pub fn ad_matrix(algebra: &NLieAlgebra, x: &FundamentalVector) -> Result<QMatrix> {
    expect_wedge(algebra, x)?;
    let d = algebra.dim();
    let tables = algebra.tables();
    let mut m = QMatrix::zeros(d, d);
    for (i, c) in x.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for z in 1..=d {
            for (t, coeff) in &tables.ad[i * d + (z - 1)] {
                let term = c * coeff;
                m.add_at(t - 1, z - 1, &term);
            }
        }
    }
    Ok(m)
}

/// Sparse image of the basis vector `z` under the derivation of the `i`-th
/// canonical wedge.
pub(crate) fn ad_basis_apply(algebra: &NLieAlgebra, wedge: usize, z: usize) -> &[(usize, Rational)] {
    &algebra.tables().ad[wedge * algebra.dim() + (z - 1)]
}

/// Composition of fundamental objects: the first acts on each slot of the
/// second. Bilinear in both arguments; not antisymmetric in general.
pub fn compose(
    algebra: &NLieAlgebra,
    x: &FundamentalVector,
    y: &FundamentalVector,
) -> Result<FundamentalVector> {
    expect_wedge(algebra, x)?;
    expect_wedge(algebra, y)?;
    let w = algebra.wedge_basis().len();
    let tables = algebra.tables();
    let mut out = FundamentalVector::zero(w, BasisMode::Wedge);
    for (i, a) in x.coords.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.coords.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (k, coeff) in &tables.compose[i * w + j] {
                let term = &ab * coeff;
                out.coords[*k] += &term;
            }
        }
    }
    Ok(out)
}

/// Applies the derivation of a fundamental vector to a dense algebra vector.
pub fn ad_apply(
    algebra: &NLieAlgebra,
    x: &FundamentalVector,
    z: &[Rational],
) -> Result<Vec<Rational>> {
    expect_wedge(algebra, x)?;
    if z.len() != algebra.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            got: z.len(),
        });
    }
    let d = algebra.dim();
    let tables = algebra.tables();
    let mut out = vec![Rational::zero(); d];
    for (i, c) in x.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (zi, zv) in z.iter().enumerate() {
            if zv.is_zero() {
                continue;
            }
            let f = c * zv;
            add_scaled_sparse(&mut out, &f, &tables.ad[i * d + zi]);
        }
    }
    Ok(out)
}

/// How to choose test tuples for an identity check.
#[derive(Clone, Copy, Debug)]
pub enum SampleSpec {
    /// Every canonical basis fundamental object.
    Exhaustive,
    /// Seeded random rational fundamental objects.
    Random { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub passed: bool,
    pub tuples_checked: usize,
    pub failure: Option<String>,
}

/// Verifies the composition identities that the Filippov identity forces:
/// the left-derivation law for the dot product, its matrix form
/// `ad_{X.Y} = [ad_X, ad_Y]`, and `ad_{X.Y} = -ad_{Y.X}`.
pub fn check_fundamental_identities(
    algebra: &NLieAlgebra,
    spec: SampleSpec,
) -> Result<IdentityReport> {
    let w = algebra.wedge_basis().len();
    let mut checked = 0usize;

    let verify = |x: &FundamentalVector,
                      y: &FundamentalVector,
                      z: &FundamentalVector|
     -> Result<Option<String>> {
        // X.(Y.Z) - Y.(X.Z) = (X.Y).Z
        let lhs = compose(algebra, x, &compose(algebra, y, z)?)?
            .sub(&compose(algebra, y, &compose(algebra, x, z)?)?)?;
        let xy = compose(algebra, x, y)?;
        let rhs = compose(algebra, &xy, z)?;
        if lhs != rhs {
            return Ok(Some("left-derivation law failed for compositions".into()));
        }
        // ad_{X.Y} = ad_X ad_Y - ad_Y ad_X
        let ax = ad_matrix(algebra, x)?;
        let ay = ad_matrix(algebra, y)?;
        let mut comm = ax.matmul(&ay);
        let ba = ay.matmul(&ax);
        for r in 0..comm.rows() {
            for c in 0..comm.cols() {
                let v = comm.at(r, c) - ba.at(r, c);
                comm.set(r, c, v);
            }
        }
        if comm != ad_matrix(algebra, &xy)? {
            return Ok(Some("derivation of composition is not the commutator".into()));
        }
        // ad_{X.Y} = -ad_{Y.X}
        let yx = compose(algebra, y, x)?;
        let mut sum = ad_matrix(algebra, &xy)?;
        let ayx = ad_matrix(algebra, &yx)?;
        for r in 0..sum.rows() {
            for c in 0..sum.cols() {
                let v = sum.at(r, c) + ayx.at(r, c);
                sum.set(r, c, v);
            }
        }
        if !sum.is_zero() {
            return Ok(Some("ad of X.Y is not minus ad of Y.X".into()));
        }
        Ok(None)
    };

    match spec {
        SampleSpec::Exhaustive => {
            for i in 0..w {
                let x = FundamentalVector::basis_wedge(algebra, i);
                for j in 0..w {
                    let y = FundamentalVector::basis_wedge(algebra, j);
                    for k in 0..w {
                        let z = FundamentalVector::basis_wedge(algebra, k);
                        checked += 1;
                        if let Some(msg) = verify(&x, &y, &z)? {
                            return Ok(IdentityReport {
                                passed: false,
                                tuples_checked: checked,
                                failure: Some(format!("{msg} at basis triple ({i},{j},{k})")),
                            });
                        }
                    }
                }
            }
        }
        SampleSpec::Random { count, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for t in 0..count {
                let x = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
                let y = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
                let z = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
                checked += 1;
                if let Some(msg) = verify(&x, &y, &z)? {
                    return Ok(IdentityReport {
                        passed: false,
                        tuples_checked: checked,
                        failure: Some(format!("{msg} at random trial {t}")),
                    });
                }
            }
        }
    }
    Ok(IdentityReport {
        passed: true,
        tuples_checked: checked,
        failure: None,
    })
}

/// The ordinary Lie algebra spanned by the derivations of the fundamental
/// wedges, with structure constants taken from matrix commutators.
pub struct AssociatedLieAlgebra {
    pub dim: usize,
    /// Wedge-basis positions whose derivations were kept (greedy scan in
    /// canonical order).
    pub basis_wedges: Vec<usize>,
    pub basis_matrices: Vec<QMatrix>,
    /// structure[i][j] = coordinates of [b_i, b_j] over the chosen basis.
    pub structure: Vec<Vec<Vec<Rational>>>,
}

impl AssociatedLieAlgebra {
    /// Bracket of coordinate vectors over the chosen basis.
    pub fn bracket_coords(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        let term = &ab * c;
                        out[k] += &term;
                    }
                }
            }
        }
        out
    }

    /// Killing form of the associated Lie algebra itself.
    pub fn killing_form(&self) -> QMatrix {
        let dim = self.dim;
        let ad = |i: usize| {
            let mut m = QMatrix::zeros(dim, dim);
            for j in 0..dim {
                for k in 0..dim {
                    m.set(k, j, self.structure[i][j][k].clone());
                }
            }
            m
        };
        let ads: Vec<QMatrix> = (0..dim).map(ad).collect();
        let mut g = QMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..=i {
                let t = ads[i].matmul(&ads[j]).trace();
                g.set(i, j, t.clone());
                g.set(j, i, t);
            }
        }
        g
    }
}

/// Negative definiteness of a symmetric matrix by Sylvester's criterion on
/// leading principal minors, exactly.
pub fn is_negative_definite(g: &QMatrix) -> bool {
    let n = g.rows();
    for k in 1..=n {
        let mut sub = QMatrix::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                sub.set(r, c, g.at(r, c).clone());
            }
        }
        let det = sub.det();
        let expect_positive = k % 2 == 0;
        if det.is_zero() || (det.is_negative() == expect_positive) {
            return false;
        }
    }
    true
}

/// Computes the span of the basis-wedge derivations, picks a basis by greedy
/// rank extension in canonical wedge order, and closes it under commutators.
///
/// Antisymmetry and the Jacobi identity of the returned constants are
/// verified exactly; on an algebra satisfying the Filippov identity they
/// cannot fail.
pub fn associated_lie_algebra(algebra: &NLieAlgebra) -> Result<AssociatedLieAlgebra> {
    let d = algebra.dim();
    let w = algebra.wedge_basis().len();
    let flat = |m: &QMatrix| -> Vec<Rational> {
        let mut v = Vec::with_capacity(d * d);
        for r in 0..d {
            v.extend(m.row(r).iter().cloned());
        }
        v
    };
    let mut scan = crate::matrix::Span::new(d * d);
    let mut basis_wedges = Vec::new();
    let mut basis_matrices = Vec::new();
    for i in 0..w {
        let m = ad_matrix(algebra, &FundamentalVector::basis_wedge(algebra, i))?;
        if scan.insert(&flat(&m)) {
            basis_wedges.push(i);
            basis_matrices.push(m);
        }
    }
    let dim = basis_matrices.len();
    // re-insert only the kept derivations so solve() expresses vectors over
    // exactly the chosen basis
    let mut solver = SpanSolver::new(d * d);
    for m in &basis_matrices {
        solver.insert(&flat(m));
    }
    let mut structure = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut comm = basis_matrices[i].matmul(&basis_matrices[j]);
            let ba = basis_matrices[j].matmul(&basis_matrices[i]);
            for r in 0..d {
                for c in 0..d {
                    let v = comm.at(r, c) - ba.at(r, c);
                    comm.set(r, c, v);
                }
            }
            structure[i][j] = solver.solve(&flat(&comm)).ok_or_else(|| {
                Error::InvalidStructure(
                    "derivation commutator left the span of inner derivations".into(),
                )
            })?;
        }
    }
    let lie = AssociatedLieAlgebra {
        dim,
        basis_wedges,
        basis_matrices,
        structure,
    };
    // antisymmetry
    for i in 0..dim {
        for j in 0..dim {
            let neg: Vec<Rational> = lie.structure[j][i].iter().map(|c| -c).collect();
            if lie.structure[i][j] != neg {
                return Err(Error::InvalidStructure(
                    "associated Lie constants are not antisymmetric".into(),
                ));
            }
        }
    }
    // Jacobi on basis triples
    let mut e = vec![vec![Rational::zero(); dim]; dim];
    for (i, row) in e.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let a = lie.bracket_coords(&e[i], &lie.bracket_coords(&e[j], &e[k]));
                let b = lie.bracket_coords(&e[j], &lie.bracket_coords(&e[k], &e[i]));
                let c = lie.bracket_coords(&e[k], &lie.bracket_coords(&e[i], &e[j]));
                let sum: Vec<Rational> = a
                    .iter()
                    .zip(&b)
                    .zip(&c)
                    .map(|((x, y), z)| &(x + y) + z)
                    .collect();
                if sum.iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidStructure(
                        "associated Lie constants violate the Jacobi identity".into(),
                    ));
                }
            }
        }
    }
    Ok(lie)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a4() -> NLieAlgebra {
        NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap()
    }

    fn wedge(alg: &NLieAlgebra, t: &[usize]) -> FundamentalVector {
        FundamentalVector::decomposable(alg, t).unwrap()
    }

    #[test]
    fn ad_matrix_on_a4() {
        let alg = a4();
        let m = ad_matrix(&alg, &wedge(&alg, &[1, 2])).unwrap();
        // e3 -> -e4, e4 -> +e3, e1 and e2 -> 0
        let mut expect = QMatrix::zeros(4, 4);
        expect.set(3, 2, Rational::from_int(-1));
        expect.set(2, 3, Rational::from_int(1));
        assert_eq!(m, expect);
    }

    #[test]
    fn cross_ideal_derivation_vanishes() {
        let sum = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
        let m = ad_matrix(&sum, &wedge(&sum, &[1, 5])).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn n2_reduces_to_ordinary_adjoint() {
        let so3 = NLieAlgebra::simple(2, &[1, 1, 1]).unwrap();
        let m = ad_matrix(&so3, &wedge(&so3, &[1])).unwrap();
        // ad_{e1}: e2 -> e3, e3 -> -e2
        let mut expect = QMatrix::zeros(3, 3);
        expect.set(2, 1, Rational::from_int(1));
        expect.set(1, 2, Rational::from_int(-1));
        assert_eq!(m, expect);
        // and composition reduces to the bracket
        let x = wedge(&so3, &[1]);
        let y = wedge(&so3, &[2]);
        let xy = compose(&so3, &x, &y).unwrap();
        assert_eq!(xy, wedge(&so3, &[3]));
    }

    #[test]
    fn compose_examples_on_a4() {
        let alg = a4();
        let e12 = wedge(&alg, &[1, 2]);
        let e34 = wedge(&alg, &[3, 4]);
        let e23 = wedge(&alg, &[2, 3]);
        assert!(compose(&alg, &e12, &e34).unwrap().is_zero());
        let out = compose(&alg, &e12, &e23).unwrap();
        let expect = wedge(&alg, &[2, 4]).scale(&Rational::from_int(-1));
        assert_eq!(out, expect);
    }

    #[test]
    fn identities_exhaustive_on_a4() {
        let report = check_fundamental_identities(&a4(), SampleSpec::Exhaustive).unwrap();
        assert!(report.passed, "{:?}", report.failure);
        assert_eq!(report.tuples_checked, 6 * 6 * 6);
    }

    #[test]
    fn identities_fail_on_non_fi_tensor() {
        // perturbed tensor that no longer satisfies the Filippov identity
        let mut entries: Vec<(Vec<usize>, usize, Rational)> = a4()
            .structure_entries()
            .map(|(i, t, c)| (i.to_vec(), t, c.clone()))
            .collect();
        entries.push((vec![1, 2, 3], 1, Rational::one()));
        let broken = NLieAlgebra::new(3, 4, None, entries).unwrap();
        assert!(!broken.check_fi().passed);
        let report = check_fundamental_identities(&broken, SampleSpec::Exhaustive).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn ad_apply_matches_the_matrix() {
        use rand::SeedableRng;
        let sum = NLieAlgebra::direct_sum(&[a4(), a4()]).unwrap();
        let w = sum.wedge_basis().len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
            let z: Vec<Rational> = (0..sum.dim()).map(|_| random_rational(&mut rng)).collect();
            let via_matrix = ad_matrix(&sum, &x).unwrap().mul_vec(&z);
            assert_eq!(ad_apply(&sum, &x, &z).unwrap(), via_matrix);
        }
    }

    #[test]
    fn compose_is_bilinear() {
        use rand::SeedableRng;
        let alg = a4();
        let w = alg.wedge_basis().len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
            let x2 = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
            let y = FundamentalVector::random(w, BasisMode::Wedge, &mut rng);
            let a = random_rational(&mut rng);
            let lhs = compose(&alg, &x.scale(&a).add(&x2).unwrap(), &y).unwrap();
            let rhs = compose(&alg, &x, &y)
                .unwrap()
                .scale(&a)
                .add(&compose(&alg, &x2, &y).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn associated_lie_algebra_of_a4_is_six_dimensional() {
        for signature in [[1i64, 1, 1, 1], [1, 1, 1, -1]] {
            let alg = NLieAlgebra::simple(3, &signature).unwrap();
            let lie = associated_lie_algebra(&alg).unwrap();
            assert_eq!(lie.dim, 6);
        }
        // euclidean case: compact, so the Killing form is negative definite
        let lie = associated_lie_algebra(&a4()).unwrap();
        assert!(is_negative_definite(&lie.killing_form()));
        // the Lorentz signature is non-compact
        let lorentz = NLieAlgebra::simple(3, &[1, 1, 1, -1]).unwrap();
        let lie = associated_lie_algebra(&lorentz).unwrap();
        assert!(!is_negative_definite(&lie.killing_form()));
    }

    #[test]
    fn associated_lie_algebra_of_solvable_example() {
        let alg = NLieAlgebra::new(3, 3, None, vec![(vec![1, 2, 3], 1, Rational::one())])
            .unwrap();
        let lie = associated_lie_algebra(&alg).unwrap();
        assert_eq!(lie.dim, 3);
    }
}
