//! Infinitesimal deformations with exact truncated-polynomial scalars.
//!
//! A deformation perturbs the structure constants by an adjoint 1-cochain
//! times a formal parameter, with coefficients in Q[t]/(t^{m+1}) so all
//! arithmetic stays finite and exact. The Filippov identity of the deformed
//! bracket, expanded by powers of t, recovers the whole story: the linear
//! term vanishes iff the perturbation is a cocycle, a basis shift along a
//! zero-cochain undoes the deformation iff the cocycle is its coboundary,
//! and the quadratic defect of a cocycle is the 2-cochain obstructing an
//! extension to second order.

use crate::algebra::NLieAlgebra;
use crate::cohomology::{Action, Cochain, Complex};
use crate::rational::Rational;
use crate::{Error, Result};

/// Polynomial in the deformation parameter, truncated at `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncPoly {
    pub coeffs: Vec<Rational>,
}

impl TruncPoly {
    pub fn zero(order: usize) -> Self {
        TruncPoly {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add_assign(&mut self, other: &TruncPoly) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Product truncated at the common order.
    pub fn mul(&self, other: &TruncPoly) -> TruncPoly {
        let order = self.order();
        let mut out = TruncPoly::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                if !b.is_zero() {
                    let t = a * b;
                    out.coeffs[i + j] += &t;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> TruncPoly {
        TruncPoly {
            coeffs: self.coeffs.iter().map(|x| c * x).collect(),
        }
    }
}

/// Structure constants over Q[t]/(t^{m+1}): the base bracket at order zero,
/// the deformation cochain at order one, optionally a second-order term.
pub struct Deformation {
    pub base: NLieAlgebra,
    pub order: usize,
    /// tensors[k][s][t-1] = coefficient of t^k in the bracket of the s-th
    /// canonical n-subset, target component t.
    tensors: Vec<Vec<Vec<Rational>>>,
}

fn cochain_tensor(base: &NLieAlgebra, c: &Cochain) -> Result<Vec<Vec<Rational>>> {
    if c.action != Action::Adjoint || c.p != 1 {
        return Err(Error::WrongCochain);
    }
    let complex = Complex::new(base, Action::Adjoint);
    if c.coeffs.len() != complex.cochain_len(1) {
        return Err(Error::WrongCochain);
    }
    let d = base.dim();
    Ok((0..base.n_subset_basis().len())
        .map(|s| c.coeffs[s * d..(s + 1) * d].to_vec())
        .collect())
}

/// Deformed bracket with constants `f + t c (+ t^2 c2)`.
pub fn deform(
    base: &NLieAlgebra,
    c: &Cochain,
    order: usize,
    second: Option<&Cochain>,
) -> Result<Deformation> {
    if order == 0 || order > 2 {
        return Err(Error::WrongDeformationOrder { expected: 1 });
    }
    let d = base.dim();
    let slen = base.n_subset_basis().len();
    let zero_tensor = || vec![vec![Rational::zero(); d]; slen];
    let mut t0 = zero_tensor();
    for (s, row) in t0.iter_mut().enumerate() {
        for (t, coeff) in base.bracket_subset(s) {
            row[t - 1] = coeff.clone();
        }
    }
    let mut tensors = vec![t0, cochain_tensor(base, c)?];
    if order == 2 {
        tensors.push(match second {
            Some(c2) => cochain_tensor(base, c2)?,
            None => zero_tensor(),
        });
    }
    Ok(Deformation {
        base: base.clone(),
        order,
        tensors,
    })
}

impl Deformation {
    /// Deformed bracket of basis vectors in arbitrary order, as truncated
    /// polynomials over the targets.
    pub fn bracket_poly(&self, tuple: &[usize]) -> Vec<TruncPoly> {
        let d = self.base.dim();
        let mut out = vec![TruncPoly::zero(self.order); d];
        let Some((s, sign)) = self.base.n_subset_basis().resolve(tuple) else {
            return out;
        };
        let sign = Rational::from_int(sign);
        for (k, tensor) in self.tensors.iter().enumerate() {
            for (t, coeff) in tensor[s].iter().enumerate() {
                if !coeff.is_zero() {
                    out[t].coeffs[k] = &sign * coeff;
                }
            }
        }
        out
    }

    pub fn structure_poly_entries(
        &self,
    ) -> impl Iterator<Item = (&[usize], usize, Vec<Rational>)> + '_ {
        let d = self.base.dim();
        (0..self.base.n_subset_basis().len()).flat_map(move |s| {
            (1..=d).filter_map(move |t| {
                let coeffs: Vec<Rational> = self
                    .tensors
                    .iter()
                    .map(|tensor| tensor[s][t - 1].clone())
                    .collect();
                if coeffs.iter().all(Rational::is_zero) {
                    None
                } else {
                    Some((self.base.n_subset_basis().at(s), t, coeffs))
                }
            })
        })
    }
}

#[derive(Clone, Debug)]
pub struct OrderResidual {
    pub order: usize,
    pub zero: bool,
    /// First violating tuple (derivation block, inner bracket block) and the
    /// residual vector at that order.
    pub witness: Option<(Vec<usize>, Vec<usize>, Vec<Rational>)>,
}

/// Filippov-identity residual of the deformed bracket, split by powers of t.
///
/// Order zero vanishes for a valid base; order one vanishes iff the
/// deformation cochain is an adjoint 1-cocycle.
pub fn fi_residual_orders(def: &Deformation) -> Vec<OrderResidual> {
    let base = &def.base;
    let n = base.arity();
    let d = base.dim();
    let mut reports: Vec<OrderResidual> = (0..=def.order)
        .map(|k| OrderResidual {
            order: k,
            zero: true,
            witness: None,
        })
        .collect();
    let mut args = vec![0usize; n];
    for x in base.wedge_basis().iter() {
        for y in base.n_subset_basis().iter() {
            let mut residual = vec![TruncPoly::zero(def.order); d];
            // [x, [y]_t]_t
            let inner = def.bracket_poly(y);
            args[..n - 1].copy_from_slice(x);
            for (m, poly) in inner.iter().enumerate() {
                if poly.is_zero() {
                    continue;
                }
                args[n - 1] = m + 1;
                let outer = def.bracket_poly(&args);
                for (t, p) in outer.iter().enumerate() {
                    residual[t].add_assign(&p.mul(poly));
                }
            }
            // - sum_a [y_1 .. [x, y_a]_t .. y_n]_t
            let mut yargs = y.to_vec();
            for a in 0..n {
                args[n - 1] = y[a];
                let inner = def.bracket_poly(&args);
                for (m, poly) in inner.iter().enumerate() {
                    if poly.is_zero() {
                        continue;
                    }
                    yargs[a] = m + 1;
                    let outer = def.bracket_poly(&yargs);
                    for (t, p) in outer.iter().enumerate() {
                        let prod = p.mul(poly);
                        for (rc, pc) in residual[t].coeffs.iter_mut().zip(&prod.coeffs) {
                            *rc -= pc;
                        }
                    }
                }
                yargs[a] = y[a];
            }
            for k in 0..=def.order {
                if reports[k].zero {
                    let slice: Vec<Rational> =
                        residual.iter().map(|p| p.coeffs[k].clone()).collect();
                    if slice.iter().any(|r| !r.is_zero()) {
                        reports[k].zero = false;
                        reports[k].witness = Some((x.to_vec(), y.to_vec(), slice));
                    }
                }
            }
        }
    }
    reports
}

#[derive(Clone, Debug)]
pub struct TrivializeDeformationReport {
    pub success: bool,
    /// First tuple where the transformed constants differ from the base,
    /// with the order-one discrepancy.
    pub residual: Option<(Vec<usize>, Vec<Rational>)>,
}

/// Shifts the generators by `t beta` and recomputes the deformed brackets
/// modulo t^2; success means the base constants reappear exactly, which
/// happens iff the deformation cochain is the coboundary of `beta`.
pub fn trivialize_deformation(
    def: &Deformation,
    beta: &Cochain,
) -> Result<TrivializeDeformationReport> {
    if def.order != 1 {
        return Err(Error::WrongDeformationOrder { expected: 1 });
    }
    if beta.action != Action::Adjoint || beta.p != 0 {
        return Err(Error::WrongCochain);
    }
    let base = &def.base;
    let d = base.dim();
    let n = base.arity();
    if beta.coeffs.len() != d * d {
        return Err(Error::WrongCochain);
    }
    // arguments e_i - t beta(e_i) as sparse polynomial vectors
    let shifted_arg = |i: usize| -> Vec<(usize, TruncPoly)> {
        let mut v = Vec::with_capacity(d + 1);
        let mut head = TruncPoly::zero(1);
        head.coeffs[0] = Rational::one();
        v.push((i, head));
        for r in 1..=d {
            let b = &beta.coeffs[(i - 1) * d + (r - 1)];
            if !b.is_zero() {
                let mut p = TruncPoly::zero(1);
                p.coeffs[1] = -b;
                v.push((r, p));
            }
        }
        v
    };
    for s in 0..base.n_subset_basis().len() {
        let subset = base.n_subset_basis().at(s).to_vec();
        let args: Vec<Vec<(usize, TruncPoly)>> =
            subset.iter().map(|&i| shifted_arg(i)).collect();
        // multilinear expansion of the deformed bracket on shifted arguments
        let mut value = vec![TruncPoly::zero(1); d];
        let mut tuple = vec![0usize; n];
        expand_args(&args, &mut tuple, 0, &TruncPoly::one(1), &mut |tuple, factor| {
            let image = def.bracket_poly(tuple);
            for (t, p) in image.iter().enumerate() {
                value[t].add_assign(&p.mul(factor));
            }
        });
        // back to the shifted basis: apply (1 + t beta) to the value
        let mut primed = value.clone();
        for t in 1..=d {
            let order0 = value[t - 1].coeffs[0].clone();
            if order0.is_zero() {
                continue;
            }
            for r in 1..=d {
                let b = &beta.coeffs[(t - 1) * d + (r - 1)];
                if !b.is_zero() {
                    let term = b * &order0;
                    primed[r - 1].coeffs[1] += &term;
                }
            }
        }
        // compare with the undeformed constants
        let mut expect = vec![Rational::zero(); d];
        for (t, coeff) in base.bracket_subset(s) {
            expect[t - 1] = coeff.clone();
        }
        let t1: Vec<Rational> = primed.iter().map(|p| p.coeffs[1].clone()).collect();
        let t0_ok = primed
            .iter()
            .zip(&expect)
            .all(|(p, e)| &p.coeffs[0] == e);
        if !t0_ok || t1.iter().any(|x| !x.is_zero()) {
            return Ok(TrivializeDeformationReport {
                success: false,
                residual: Some((subset, t1)),
            });
        }
    }
    Ok(TrivializeDeformationReport {
        success: true,
        residual: None,
    })
}

impl TruncPoly {
    fn one(order: usize) -> Self {
        let mut p = TruncPoly::zero(order);
        p.coeffs[0] = Rational::one();
        p
    }
}

fn expand_args(
    args: &[Vec<(usize, TruncPoly)>],
    tuple: &mut Vec<usize>,
    depth: usize,
    factor: &TruncPoly,
    f: &mut impl FnMut(&[usize], &TruncPoly),
) {
    if depth == args.len() {
        f(tuple, factor);
        return;
    }
    for (i, p) in &args[depth] {
        tuple[depth] = *i;
        let next = factor.mul(p);
        if !next.is_zero() {
            expand_args(args, tuple, depth + 1, &next, f);
        }
    }
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    /// The quadratic defect is itself closed under the coboundary.
    pub gamma_is_cocycle: bool,
    pub gamma_witness: Option<String>,
    /// Whether the defect is a coboundary, i.e. the deformation extends to
    /// second order.
    pub extendable: bool,
    /// A second-order correction witnessing extendability.
    pub alpha2: Option<Cochain>,
}

/// Quadratic defect of an adjoint 1-cocycle: the t^2 coefficient of the
/// Filippov residual of the order-one deformation, packaged as a 2-cochain.
/// The deformation extends to second order iff the defect is a coboundary.
pub fn obstruction_cocycle(
    base: &NLieAlgebra,
    c: &Cochain,
) -> Result<(Cochain, ObstructionReport)> {
    let def1 = deform(base, c, 1, None)?;
    let order1 = &fi_residual_orders(&def1)[1];
    if !order1.zero {
        return Err(Error::NotACocycle);
    }
    let def2 = deform(base, c, 2, None)?;
    // gamma's class coordinates are exactly the residual tuples: derivation
    // block out of (n-1)-subsets, inner block out of n-subsets
    let complex = Complex::new(base, Action::Adjoint);
    let d = base.dim();
    let slen = base.n_subset_basis().len();
    let mut gamma = complex.zero_cochain(2);
    let mut args = vec![0usize; base.arity()];
    for (w, x) in base.wedge_basis().iter().enumerate() {
        for (s, y) in base.n_subset_basis().iter().enumerate() {
            // t^2 coefficient of the residual at (x, y)
            let mut residual = vec![Rational::zero(); d];
            let inner = def2.bracket_poly(y);
            args[..base.arity() - 1].copy_from_slice(x);
            for (m, poly) in inner.iter().enumerate() {
                if poly.is_zero() {
                    continue;
                }
                args[base.arity() - 1] = m + 1;
                let outer = def2.bracket_poly(&args);
                for (t, p) in outer.iter().enumerate() {
                    let prod = p.mul(poly);
                    residual[t] += &prod.coeffs[2];
                }
            }
            let mut yargs = y.to_vec();
            for a in 0..base.arity() {
                args[base.arity() - 1] = y[a];
                let inner = def2.bracket_poly(&args);
                for (m, poly) in inner.iter().enumerate() {
                    if poly.is_zero() {
                        continue;
                    }
                    yargs[a] = m + 1;
                    let outer = def2.bracket_poly(&yargs);
                    for (t, p) in outer.iter().enumerate() {
                        let prod = p.mul(poly);
                        residual[t] -= &prod.coeffs[2];
                    }
                }
                yargs[a] = y[a];
            }
            let bs = w * slen + s;
            for (t, v) in residual.into_iter().enumerate() {
                gamma.coeffs[bs * d + t] = v;
            }
        }
    }
    let witness = complex.delta_nonzero_witness(&gamma)?;
    let gamma_is_cocycle = witness.is_none();
    let gamma_witness = witness
        .map(|(xs, z, _)| format!("coboundary of the defect nonzero at blocks {xs:?}, argument {z}"));
    // solve for a 1-cochain whose coboundary is the defect
    let (extendable, alpha2) = solve_in_coboundaries(base, &gamma)?;
    Ok((
        gamma,
        ObstructionReport {
            gamma_is_cocycle,
            gamma_witness,
            extendable,
            alpha2,
        },
    ))
}

/// Writes `gamma` as the coboundary of a 1-cochain where possible; the
/// second-order correction is minus that cochain.
fn solve_in_coboundaries(
    base: &NLieAlgebra,
    gamma: &Cochain,
) -> Result<(bool, Option<Cochain>)> {
    let complex = Complex::new(base, Action::Adjoint);
    let c1 = complex.cochain_len(1);
    let c2 = complex.cochain_len(2);
    let mut m = crate::matrix::QMatrix::zeros(c2, c1);
    for col in 0..c1 {
        let mut e = complex.zero_cochain(1);
        e.coeffs[col] = Rational::one();
        let de = complex.coboundary(&e)?;
        for (row, v) in de.coeffs.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(row, col, v);
            }
        }
    }
    match m.solve(&gamma.coeffs) {
        Some(x) => {
            let alpha2 = Cochain {
                action: Action::Adjoint,
                p: 1,
                coeffs: x.into_iter().map(|v| -v).collect(),
            };
            Ok((true, Some(alpha2)))
        }
        None => Ok((false, None)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{
        bracket_cochain, cochain_from_dual, trivialize_adjoint_simple, Complex,
    };
    use crate::matrix::QMatrix;
    use rand::SeedableRng;

    fn a4() -> NLieAlgebra {
        NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap()
    }

    #[test]
    fn scalars_truncate_exactly() {
        let mut a = TruncPoly::zero(2);
        a.coeffs = vec![Rational::one(), Rational::from_int(2), Rational::one()];
        let b = a.clone();
        let p = a.mul(&b);
        // (1 + 2t + t^2)^2 = 1 + 4t + 6t^2 mod t^3
        assert_eq!(
            p.coeffs,
            vec![Rational::one(), Rational::from_int(4), Rational::from_int(6)]
        );
    }

    #[test]
    fn coboundary_deformation_rescales_the_bracket() {
        let alg = a4();
        // alpha = 2 * bracket: the deformed constants are (1 + 2t) f
        let mut c = bracket_cochain(&alg);
        for x in c.coeffs.iter_mut() {
            *x = &*x * &Rational::from_int(2);
        }
        let def = deform(&alg, &c, 1, None).unwrap();
        let poly = def.bracket_poly(&[1, 2, 3]);
        assert_eq!(poly[3].coeffs, vec![Rational::from_int(-1), Rational::from_int(-2)]);
        let reports = fi_residual_orders(&def);
        assert!(reports[0].zero);
        assert!(reports[1].zero);
    }

    #[test]
    fn order_one_residual_detects_non_cocycles() {
        let alg = a4();
        let mut m = QMatrix::zeros(4, 4);
        m.set(0, 1, Rational::one());
        m.set(1, 0, -Rational::one());
        let c = cochain_from_dual(&alg, &m).unwrap();
        let def = deform(&alg, &c, 1, None).unwrap();
        let reports = fi_residual_orders(&def);
        assert!(reports[0].zero);
        assert!(!reports[1].zero);
        assert!(reports[1].witness.is_some());
    }

    #[test]
    fn abelian_base_carries_any_valid_tensor_to_all_orders() {
        let abelian = NLieAlgebra::abelian(3, 4);
        let c = bracket_cochain(&a4());
        let def = deform(&abelian, &c, 2, None).unwrap();
        let reports = fi_residual_orders(&def);
        assert!(reports.iter().all(|r| r.zero));
        // but nothing trivializes it: the coboundary operator vanishes
        let def1 = deform(&abelian, &c, 1, None).unwrap();
        let complex = Complex::new(&abelian, Action::Adjoint);
        let report = trivialize_deformation(&def1, &complex.zero_cochain(0)).unwrap();
        assert!(!report.success);
    }

    #[test]
    fn constructed_coboundaries_trivialize() {
        let alg = a4();
        let complex = Complex::new(&alg, Action::Adjoint);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            let beta = complex.random_cochain(0, &mut rng);
            let c = complex.coboundary(&beta).unwrap();
            let def = deform(&alg, &c, 1, None).unwrap();
            let report = trivialize_deformation(&def, &beta).unwrap();
            assert!(report.success, "{:?}", report.residual);
        }
    }

    #[test]
    fn symmetric_dual_cocycles_trivialize_via_the_closed_form() {
        let alg = a4();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for _ in 0..5 {
            let mut m = QMatrix::zeros(4, 4);
            for i in 0..4 {
                for j in 0..=i {
                    let v = crate::fundamental::random_rational(&mut rng);
                    m.set(i, j, v.clone());
                    m.set(j, i, v);
                }
            }
            let c = cochain_from_dual(&alg, &m).unwrap();
            let beta = trivialize_adjoint_simple(&alg, &c).unwrap();
            let def = deform(&alg, &c, 1, None).unwrap();
            let report = trivialize_deformation(&def, &beta).unwrap();
            assert!(report.success, "{:?}", report.residual);
        }
    }

    #[test]
    fn obstruction_of_cocycles_is_closed() {
        let alg = a4();
        // the rescaling coboundary gives a vanishing defect
        let mut c = bracket_cochain(&alg);
        for x in c.coeffs.iter_mut() {
            *x = &*x * &Rational::from_int(2);
        }
        let (gamma, report) = obstruction_cocycle(&alg, &c).unwrap();
        assert!(gamma.coeffs.iter().all(Rational::is_zero));
        assert!(report.gamma_is_cocycle);
        assert!(report.extendable);

        // a generic symmetric-dual cocycle has a nonzero but closed defect
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        let mut m = QMatrix::zeros(4, 4);
        for i in 0..4 {
            for j in 0..=i {
                let v = crate::fundamental::random_rational(&mut rng);
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        let c = cochain_from_dual(&alg, &m).unwrap();
        let (_, report) = obstruction_cocycle(&alg, &c).unwrap();
        assert!(report.gamma_is_cocycle, "{:?}", report.gamma_witness);

        // non-cocycles are rejected
        let mut m = QMatrix::zeros(4, 4);
        m.set(0, 1, Rational::one());
        let c = cochain_from_dual(&alg, &m).unwrap();
        assert!(matches!(
            obstruction_cocycle(&alg, &c),
            Err(crate::Error::NotACocycle)
        ));
    }

    #[test]
    fn abelian_obstruction_vanishes_for_transported_constants() {
        let abelian = NLieAlgebra::abelian(3, 4);
        let c = bracket_cochain(&a4());
        let (gamma, report) = obstruction_cocycle(&abelian, &c).unwrap();
        assert!(gamma.coeffs.iter().all(Rational::is_zero));
        assert!(report.gamma_is_cocycle);
        assert!(report.extendable);
    }
}
