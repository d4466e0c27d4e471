//! Central extensions: adjoin one central generator, twist the bracket by a
//! trivial-action 1-cochain, and test both directions of the story — the
//! extension satisfies the Filippov identity iff the cochain is a cocycle,
//! and a basis shift along a zero-cochain removes the central term iff the
//! cocycle is its coboundary.

use crate::algebra::{FIReport, NLieAlgebra};
use crate::cohomology::{Action, Cochain, Complex};
use crate::rational::Rational;
use crate::{Error, Result};

pub struct CentralExtension {
    pub base: NLieAlgebra,
    pub cocycle: Cochain,
    /// Base algebra plus one central generator in the last basis slot.
    pub extended: NLieAlgebra,
    /// Filippov identity report of the extended algebra; failure pinpoints
    /// exactly the broken cocycle condition.
    pub fi: FIReport,
}

/// Builds the one-generator central extension twisted by `c`. Non-cocycles
/// are allowed: the attached report then fails with a witness.
pub fn central_extend(base: &NLieAlgebra, c: &Cochain) -> Result<CentralExtension> {
    if c.action != Action::Trivial || c.p != 1 {
        return Err(Error::WrongCochain);
    }
    let complex = Complex::new(base, Action::Trivial);
    if c.coeffs.len() != complex.cochain_len(1) {
        return Err(Error::WrongCochain);
    }
    let d = base.dim();
    let mut entries: Vec<(Vec<usize>, usize, Rational)> = base
        .structure_entries()
        .map(|(idx, t, coeff)| (idx.to_vec(), t, coeff.clone()))
        .collect();
    for (s, coeff) in c.coeffs.iter().enumerate() {
        if !coeff.is_zero() {
            let idx = base.n_subset_basis().at(s).to_vec();
            entries.push((idx, d + 1, coeff.clone()));
        }
    }
    let mut names: Vec<String> = base.basis_names().to_vec();
    names.push("Xi".into());
    let extended = NLieAlgebra::new(base.arity(), d + 1, Some(names), entries)?;
    let fi = extended.check_fi();
    Ok(CentralExtension {
        base: base.clone(),
        cocycle: c.clone(),
        extended,
        fi,
    })
}

#[derive(Clone, Debug)]
pub struct TrivializeExtensionReport {
    pub success: bool,
    /// First bracket tuple where the central generator survives the basis
    /// change, with the surviving coefficient.
    pub residual: Option<(Vec<usize>, Rational)>,
}

/// Shifts the generators by `beta` against the central direction and checks
/// whether the central generator disappears from every bracket. Succeeds iff
/// the extension cocycle is the coboundary of `beta`.
pub fn trivialize_extension(
    ext: &CentralExtension,
    beta: &Cochain,
) -> Result<TrivializeExtensionReport> {
    if beta.action != Action::Trivial || beta.p != 0 {
        return Err(Error::WrongCochain);
    }
    let base = &ext.base;
    if beta.coeffs.len() != base.dim() {
        return Err(Error::WrongCochain);
    }
    // central coefficient of the bracket in the shifted basis: the original
    // cocycle value plus beta of the base bracket
    for (s, alpha) in ext.cocycle.coeffs.iter().enumerate() {
        let mut residual = alpha.clone();
        for (t, coeff) in base.bracket_subset(s) {
            let term = coeff * &beta.coeffs[t - 1];
            residual += &term;
        }
        if !residual.is_zero() {
            return Ok(TrivializeExtensionReport {
                success: false,
                residual: Some((base.n_subset_basis().at(s).to_vec(), residual)),
            });
        }
    }
    Ok(TrivializeExtensionReport {
        success: true,
        residual: None,
    })
}
