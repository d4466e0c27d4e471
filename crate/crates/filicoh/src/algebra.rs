//! Filippov (n-Lie) algebras: representation, brackets, the Filippov
//! identity, the simple epsilon family, direct sums, ideals and solvability.
//!
//! Structure constants are stored only on strictly increasing n-tuples of
//! basis indices and expanded by total antisymmetry on read, so a
//! constructed algebra cannot carry an inconsistent tensor. Basis indices
//! are 1-based.

use crate::matrix::{QMatrix, Span};
use crate::multiindex::{epsilon, BasisMode, MultiIndexBasis};
use crate::rational::Rational;
use crate::{Error, Result};
use std::sync::OnceLock;

/// Sparse vector over the algebra basis: (1-based index, coefficient).
pub type SparseVec = Vec<(usize, Rational)>;

/// An n-Lie algebra given by structure constants.
pub struct NLieAlgebra {
    n: usize,
    d: usize,
    basis_names: Vec<String>,
    /// f[s] = bracket of the s-th canonical n-subset, sparse over targets.
    f: Vec<SparseVec>,
    n_subsets: MultiIndexBasis,
    wedge_blocks: MultiIndexBasis,
    signature: Option<Vec<i64>>,
    ideals: Option<Vec<(usize, usize)>>,
    tables: OnceLock<Tables>,
}

/// Per-algebra lookup tables for the hot evaluation paths.
pub(crate) struct Tables {
    /// compose[i * w + j]: coordinates of the composition of the i-th and
    /// j-th canonical fundamental wedges, sparse over 0-based wedge indices.
    pub compose: Vec<Vec<(usize, Rational)>>,
    /// ad[i * d + (z-1)]: image of e_z under the derivation attached to the
    /// i-th canonical fundamental wedge.
    pub ad: Vec<SparseVec>,
    /// join[i * d + (z-1)]: canonical n-subset index and sign of the i-th
    /// wedge extended by e_z; None when z already occurs in the wedge.
    pub join: Vec<Option<(usize, i64)>>,
}

/// Outcome of verifying the Filippov identity on all canonical basis tuples.
#[derive(Clone, Debug)]
pub struct FIReport {
    pub passed: bool,
    /// First violating tuple, with its residual vector.
    pub worst_case: Option<FIViolation>,
}

#[derive(Clone, Debug)]
pub struct FIViolation {
    pub x_tuple: Vec<usize>,
    pub y_tuple: Vec<usize>,
    pub residual: Vec<Rational>,
}

impl NLieAlgebra {
    /// Builds an algebra from entries `(strictly increasing n-tuple, target,
    /// coefficient)`. Omitted entries are zero.
    pub fn new(
        n: usize,
        d: usize,
        names: Option<Vec<String>>,
        entries: impl IntoIterator<Item = (Vec<usize>, usize, Rational)>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidStructure("arity must be at least 2".into()));
        }
        if d == 0 {
            return Err(Error::InvalidStructure("dimension must be positive".into()));
        }
        let n_subsets = MultiIndexBasis::new(d, n, BasisMode::Wedge);
        let wedge_blocks = MultiIndexBasis::new(d, n - 1, BasisMode::Wedge);
        let mut f = vec![SparseVec::new(); n_subsets.len()];
        for (idx, target, coeff) in entries {
            if idx.len() != n {
                return Err(Error::InvalidStructure(format!(
                    "index tuple {idx:?} does not have {n} entries"
                )));
            }
            if !idx.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::InvalidStructure(format!(
                    "index tuple {idx:?} is not strictly increasing"
                )));
            }
            if idx.iter().any(|&i| i < 1 || i > d) || target < 1 || target > d {
                return Err(Error::InvalidStructure(format!(
                    "index out of range in entry {idx:?} -> {target}"
                )));
            }
            if coeff.is_zero() {
                continue;
            }
            let s = n_subsets.index_of(&idx).expect("canonical tuple");
            match f[s].iter_mut().find(|(t, _)| *t == target) {
                Some((_, c)) => *c += &coeff,
                None => f[s].push((target, coeff)),
            }
        }
        for row in &mut f {
            row.retain(|(_, c)| !c.is_zero());
            row.sort_by_key(|(t, _)| *t);
        }
        let basis_names = match names {
            Some(names) => {
                if names.len() != d {
                    return Err(Error::InvalidStructure(
                        "basis name count does not match dimension".into(),
                    ));
                }
                names
            }
            None => default_names(d),
        };
        Ok(NLieAlgebra {
            n,
            d,
            basis_names,
            f,
            n_subsets,
            wedge_blocks,
            signature: None,
            ideals: None,
            tables: OnceLock::new(),
        })
    }

    /// The abelian algebra: every bracket vanishes.
    pub fn abelian(n: usize, d: usize) -> Self {
        Self::new(n, d, None, std::iter::empty()).expect("valid shape")
    }

    /// The (n+1)-dimensional simple algebra of the epsilon family.
    ///
    /// In the basis e_1, ..., e_{n+1}, the bracket omitting e_i equals
    /// `(-1)^(i+1) * sign_i * e_i`.
    pub fn simple(n: usize, signature: &[i64]) -> Result<Self> {
        if signature.len() != n + 1 || signature.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidSignature);
        }
        let d = n + 1;
        let parity = if n.is_multiple_of(2) { 1 } else { -1 };
        let mut entries = Vec::with_capacity(d);
        for subset in crate::multiindex::k_subsets(d, n) {
            let missing = (1..=d)
                .find(|i| !subset.contains(i))
                .expect("one index missing");
            let mut tuple = subset.clone();
            tuple.push(missing);
            let eps = epsilon(&tuple);
            let coeff = Rational::from_int(parity * signature[missing - 1] * eps);
            entries.push((subset, missing, coeff));
        }
        let mut alg = Self::new(n, d, None, entries)?;
        alg.signature = Some(signature.to_vec());
        alg.ideals = Some(vec![(1, d)]);
        Ok(alg)
    }

    /// Block-diagonal direct sum. Cross-block brackets vanish and the block
    /// ranges are recorded as the ideal decomposition.
    pub fn direct_sum(parts: &[NLieAlgebra]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidStructure("empty direct sum".into()));
        };
        if parts.len() == 1 {
            return Ok(first.clone());
        }
        let n = first.n;
        for p in parts {
            if p.n != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: p.n,
                });
            }
        }
        let d: usize = parts.iter().map(|p| p.d).sum();
        let mut entries = Vec::new();
        let mut blocks = Vec::new();
        let mut names = Vec::with_capacity(d);
        let mut offset = 0usize;
        for (pi, p) in parts.iter().enumerate() {
            let letter = (b'e' + (pi % 22) as u8) as char;
            for i in 1..=p.d {
                names.push(format!("{letter}{i}"));
            }
            for (s, row) in p.f.iter().enumerate() {
                if row.is_empty() {
                    continue;
                }
                let idx: Vec<usize> = p.n_subsets.at(s).iter().map(|&i| i + offset).collect();
                for (target, coeff) in row {
                    entries.push((idx.clone(), target + offset, coeff.clone()));
                }
            }
            match &p.ideals {
                Some(bs) if bs.len() > 1 => {
                    blocks.extend(bs.iter().map(|(lo, hi)| (lo + offset, hi + offset)));
                }
                _ => blocks.push((offset + 1, offset + p.d)),
            }
            offset += p.d;
        }
        let mut alg = Self::new(n, d, Some(names), entries)?;
        alg.ideals = Some(blocks);
        Ok(alg)
    }

    /// Records a signature after verifying that the structure constants are
    /// exactly those of the epsilon family for it.
    pub fn with_signature(mut self, signature: &[i64]) -> Result<Self> {
        if signature.len() != self.n + 1 || self.d != self.n + 1 {
            return Err(Error::InvalidSignature);
        }
        let model = Self::simple(self.n, signature)?;
        for s in 0..self.n_subsets.len() {
            if self.f[s] != model.f[s] {
                return Err(Error::InvalidStructure(
                    "declared signature does not match the structure constants".into(),
                ));
            }
        }
        self.signature = Some(signature.to_vec());
        if self.ideals.is_none() {
            self.ideals = Some(vec![(1, self.d)]);
        }
        Ok(self)
    }

    /// Declares an ideal decomposition. The blocks must partition `1..=d`
    /// and no stored bracket may mix two blocks.
    pub fn with_ideals(mut self, blocks: Vec<(usize, usize)>) -> Result<Self> {
        let mut cover = 0usize;
        for &(lo, hi) in &blocks {
            if lo != cover + 1 || hi < lo || hi > self.d {
                return Err(Error::InvalidIdealDecomposition);
            }
            cover = hi;
        }
        if cover != self.d {
            return Err(Error::InvalidIdealDecomposition);
        }
        let block_of = |i: usize| blocks.iter().position(|&(lo, hi)| lo <= i && i <= hi);
        for (s, row) in self.f.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let idx = self.n_subsets.at(s);
            let b0 = block_of(idx[0]);
            let mixed = idx.iter().any(|&i| block_of(i) != b0)
                || row.iter().any(|(t, _)| block_of(*t) != b0);
            if mixed {
                return Err(Error::InvalidIdealDecomposition);
            }
        }
        self.ideals = Some(blocks);
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn signature(&self) -> Option<&[i64]> {
        self.signature.as_deref()
    }

    pub fn ideals(&self) -> Option<&[(usize, usize)]> {
        self.ideals.as_deref()
    }

    /// Canonical basis of n-subsets carrying the structure constants.
    pub fn n_subset_basis(&self) -> &MultiIndexBasis {
        &self.n_subsets
    }

    /// Canonical basis of (n-1)-subsets indexing fundamental wedges.
    pub fn wedge_basis(&self) -> &MultiIndexBasis {
        &self.wedge_blocks
    }

    /// Structure-constant entries on canonical tuples, for serialization.
    pub fn structure_entries(&self) -> impl Iterator<Item = (&[usize], usize, &Rational)> {
        self.f.iter().enumerate().flat_map(move |(s, row)| {
            row.iter()
                .map(move |(t, c)| (self.n_subsets.at(s), *t, c))
        })
    }

    /// Bracket of the canonical n-subset with position `s`.
    pub(crate) fn bracket_subset(&self, s: usize) -> &SparseVec {
        &self.f[s]
    }

    /// Bracket of basis vectors in arbitrary order, sparse. Zero on repeats.
    pub fn bracket_tuple(&self, tuple: &[usize]) -> SparseVec {
        assert_eq!(tuple.len(), self.n, "bracket takes {} arguments", self.n);
        let Some((s, sign)) = self.n_subsets.resolve(tuple) else {
            return SparseVec::new();
        };
        scale_sparse(&self.f[s], sign)
    }

    /// Totally antisymmetric multilinear extension of the bracket.
    pub fn bracket(&self, vectors: &[Vec<Rational>]) -> Result<Vec<Rational>> {
        if vectors.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: vectors.len(),
            });
        }
        for v in vectors {
            if v.len() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    got: v.len(),
                });
            }
        }
        let mut out = vec![Rational::zero(); self.d];
        for (s, row) in self.f.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let subset = self.n_subsets.at(s);
            // coefficient of e_subset in v_1 ^ ... ^ v_n
            let minor = QMatrix::from_rows(
                vectors
                    .iter()
                    .map(|v| subset.iter().map(|&i| v[i - 1].clone()).collect())
                    .collect(),
            )
            .det();
            if minor.is_zero() {
                continue;
            }
            for (t, c) in row {
                let term = &minor * c;
                out[t - 1] += &term;
            }
        }
        Ok(out)
    }

    /// Verifies the Filippov identity on every canonical basis tuple:
    /// (n-1)-subsets for the derivation block, n-subsets for the inner
    /// bracket. Multilinearity makes this coverage complete.
    pub fn check_fi(&self) -> FIReport {
        for x in self.wedge_blocks.iter() {
            for y in self.n_subsets.iter() {
                let residual = self.fi_residual(x, y);
                if residual.iter().any(|r| !r.is_zero()) {
                    return FIReport {
                        passed: false,
                        worst_case: Some(FIViolation {
                            x_tuple: x.to_vec(),
                            y_tuple: y.to_vec(),
                            residual,
                        }),
                    };
                }
            }
        }
        FIReport {
            passed: true,
            worst_case: None,
        }
    }

    /// Left side minus right side of the Filippov identity on basis tuples.
    pub fn fi_residual(&self, x: &[usize], y: &[usize]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.d];
        let mut args = vec![0usize; self.n];
        // [x_1 .. x_{n-1} [y_1 .. y_n]]
        let inner = self.bracket_tuple(y);
        args[..self.n - 1].copy_from_slice(x);
        for (m, c) in &inner {
            args[self.n - 1] = *m;
            add_scaled_sparse(&mut out, c, &self.bracket_tuple(&args));
        }
        // - sum_a [y_1 .. [x, y_a] .. y_n]
        let mut yargs = y.to_vec();
        args[..self.n - 1].copy_from_slice(x);
        for a in 0..self.n {
            args[self.n - 1] = y[a];
            let inner = self.bracket_tuple(&args);
            for (m, c) in &inner {
                yargs[a] = *m;
                let neg = -c;
                add_scaled_sparse(&mut out, &neg, &self.bracket_tuple(&yargs));
            }
            yargs[a] = y[a];
        }
        out
    }

    /// True iff brackets with one slot running over `subspace` stay inside
    /// its span.
    pub fn is_ideal(&self, subspace: &[Vec<Rational>]) -> bool {
        let mut span = Span::new(self.d);
        for v in subspace {
            span.insert(v);
        }
        let mut args: Vec<Vec<Rational>> = Vec::new();
        for x in self.wedge_blocks.iter() {
            for z in subspace {
                args.clear();
                args.extend(x.iter().map(|&i| unit(self.d, i)));
                args.push(z.clone());
                let image = self.bracket(&args).expect("shapes agree");
                if !span.contains(&image) {
                    return false;
                }
            }
        }
        true
    }

    /// Dimensions of the descending solvability series of an ideal, for
    /// k-solvability with `k` in `2..=n`: each step brackets k copies of the
    /// previous term with n-k copies of the whole algebra. The list ends
    /// when the dimension stabilizes or reaches zero; `k = n` is ordinary
    /// solvability.
    pub fn derived_series(&self, subspace: &[Vec<Rational>], k: usize) -> Result<Vec<usize>> {
        if !(2..=self.n).contains(&k) {
            return Err(Error::InvalidSolvabilityOrder);
        }
        if !self.is_ideal(subspace) {
            return Err(Error::NotAnIdeal);
        }
        let mut current = Span::new(self.d);
        for v in subspace {
            current.insert(v);
        }
        let mut dims = vec![current.dim()];
        loop {
            let next = self.derived_step(&current, k);
            let stop = next.dim() == 0 || next.dim() == *dims.last().expect("nonempty");
            dims.push(next.dim());
            if stop {
                return Ok(dims);
            }
            current = next;
        }
    }

    fn derived_step(&self, current: &Span, k: usize) -> Span {
        let mut next = Span::new(self.d);
        let basis = current.basis();
        let inner_choices = crate::multiindex::k_subsets(basis.len(), k);
        let outer_choices = crate::multiindex::k_subsets(self.d, self.n - k);
        let mut args: Vec<Vec<Rational>> = Vec::new();
        for inner in &inner_choices {
            for outer in &outer_choices {
                args.clear();
                args.extend(inner.iter().map(|&i| basis[i - 1].clone()));
                args.extend(outer.iter().map(|&j| unit(self.d, j)));
                let image = self.bracket(&args).expect("shapes agree");
                next.insert(&image);
            }
        }
        next
    }

    /// Signature of a declared block, verified against the epsilon family.
    ///
    /// Succeeds only when the block's structure constants agree exactly with
    /// [`NLieAlgebra::simple`] for some signature.
    pub fn block_signature(&self, block: (usize, usize)) -> Result<Vec<i64>> {
        let (lo, hi) = block;
        let err = || Error::BlockNotSimple(block);
        if lo < 1 || hi > self.d || hi < lo || hi - lo + 1 != self.n + 1 {
            return Err(err());
        }
        // read candidate signs from the hatted brackets
        let mut signature = Vec::with_capacity(self.n + 1);
        for i in 0..=self.n {
            let tuple: Vec<usize> = (lo..=hi).filter(|&j| j != lo + i).collect();
            let image = self.bracket_tuple(&tuple);
            let [(target, coeff)] = image.as_slice() else {
                return Err(err());
            };
            if *target != lo + i {
                return Err(err());
            }
            let parity = if i % 2 == 0 { 1 } else { -1 };
            let sign = Rational::from_int(parity) * coeff.clone();
            if sign == Rational::one() {
                signature.push(1);
            } else if sign == -Rational::one() {
                signature.push(-1);
            } else {
                return Err(err());
            }
        }
        // cross-check every structure entry of the block
        let model = NLieAlgebra::simple(self.n, &signature)?;
        for subset in crate::multiindex::k_subsets(self.n + 1, self.n) {
            let shifted: Vec<usize> = subset.iter().map(|&i| i + lo - 1).collect();
            let actual = self.bracket_tuple(&shifted);
            let expect: SparseVec = model
                .bracket_tuple(&subset)
                .into_iter()
                .map(|(t, c)| (t + lo - 1, c))
                .collect();
            if actual != expect {
                return Err(err());
            }
        }
        Ok(signature)
    }

    pub(crate) fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| self.build_tables())
    }

    fn build_tables(&self) -> Tables {
        let w = self.wedge_blocks.len();
        let mut ad = Vec::with_capacity(w * self.d);
        let mut tuple = vec![0usize; self.n];
        for i in 0..w {
            tuple[..self.n - 1].copy_from_slice(self.wedge_blocks.at(i));
            for z in 1..=self.d {
                tuple[self.n - 1] = z;
                ad.push(self.bracket_tuple(&tuple));
            }
        }
        let mut compose = Vec::with_capacity(w * w);
        for i in 0..w {
            let _x = self.wedge_blocks.at(i);
            for j in 0..w {
                let y = self.wedge_blocks.at(j);
                let mut out: Vec<(usize, Rational)> = Vec::new();
                let mut block = y.to_vec();
                for a in 0..self.n - 1 {
                    // replace the a-th slot of y by the bracket [x, y_a]
                    let image = &ad[i * self.d + (y[a] - 1)];
                    for (m, c) in image {
                        block[a] = *m;
                        if let Some((k, sign)) = self.wedge_blocks.resolve(&block) {
                            let coeff = c * &Rational::from_int(sign);
                            accumulate(&mut out, k, coeff);
                        }
                    }
                    block[a] = y[a];
                }
                out.sort_by_key(|(k, _)| *k);
                compose.push(out);
            }
        }
        let mut join = Vec::with_capacity(w * self.d);
        let mut tuple = vec![0usize; self.n];
        for i in 0..w {
            tuple[..self.n - 1].copy_from_slice(self.wedge_blocks.at(i));
            for z in 1..=self.d {
                tuple[self.n - 1] = z;
                join.push(self.n_subsets.resolve(&tuple));
            }
        }
        Tables { compose, ad, join }
    }
}

impl Clone for NLieAlgebra {
    fn clone(&self) -> Self {
        NLieAlgebra {
            n: self.n,
            d: self.d,
            basis_names: self.basis_names.clone(),
            f: self.f.clone(),
            n_subsets: self.n_subsets.clone(),
            wedge_blocks: self.wedge_blocks.clone(),
            signature: self.signature.clone(),
            ideals: self.ideals.clone(),
            tables: OnceLock::new(),
        }
    }
}

fn default_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("e{i}")).collect()
}

/// Standard basis vector e_i of a d-dimensional space, 1-based.
pub fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i - 1] = Rational::one();
    v
}

pub(crate) fn scale_sparse(v: &SparseVec, sign: i64) -> SparseVec {
    match sign {
        1 => v.clone(),
        -1 => v.iter().map(|(t, c)| (*t, -c)).collect(),
        _ => SparseVec::new(),
    }
}

/// `dst += c * sparse`, indices 1-based.
pub(crate) fn add_scaled_sparse(dst: &mut [Rational], c: &Rational, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (t, x) in src {
        let term = c * x;
        dst[t - 1] += &term;
    }
}

fn accumulate(out: &mut Vec<(usize, Rational)>, key: usize, coeff: Rational) {
    if coeff.is_zero() {
        return;
    }
    match out.iter_mut().find(|(k, _)| *k == key) {
        Some((_, c)) => {
            *c += &coeff;
            if c.is_zero() {
                out.retain(|(_, c)| !c.is_zero());
            }
        }
        None => out.push((key, coeff)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a4_euclidean() -> NLieAlgebra {
        NLieAlgebra::simple(3, &[1, 1, 1, 1]).unwrap()
    }

    fn sparse(v: &[(usize, i64)]) -> SparseVec {
        v.iter()
            .map(|(t, c)| (*t, Rational::from_int(*c)))
            .collect()
    }

    #[test]
    fn simple_a4_brackets() {
        let a4 = a4_euclidean();
        assert_eq!(a4.bracket_tuple(&[1, 2, 3]), sparse(&[(4, -1)]));
        assert_eq!(a4.bracket_tuple(&[1, 3, 4]), sparse(&[(2, -1)]));
        assert_eq!(a4.bracket_tuple(&[2, 3, 4]), sparse(&[(1, 1)]));
        assert_eq!(a4.bracket_tuple(&[1, 1, 3]), sparse(&[]));
    }

    #[test]
    fn simple_signature_variants() {
        let lorentz = NLieAlgebra::simple(3, &[1, 1, 1, -1]).unwrap();
        assert_eq!(lorentz.bracket_tuple(&[1, 2, 3]), sparse(&[(4, 1)]));
        let a5 = NLieAlgebra::simple(4, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(a5.bracket_tuple(&[1, 2, 3, 4]), sparse(&[(5, 1)]));
        assert!(NLieAlgebra::simple(3, &[1, 1, 2, 1]).is_err());
    }

    #[test]
    fn hatted_and_epsilon_forms_agree() {
        // the two standard presentations of the simple family coincide:
        // the stored epsilon-contraction constants reproduce the hatted
        // brackets for every signature
        for n in [2usize, 3, 4] {
            for bits in 0..1u32 << (n + 1) {
                let signature: Vec<i64> = (0..=n)
                    .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                    .collect();
                let alg = NLieAlgebra::simple(n, &signature).unwrap();
                for i in 0..=n {
                    let tuple: Vec<usize> = (1..=n + 1).filter(|&j| j != i + 1).collect();
                    let parity = if i % 2 == 0 { 1 } else { -1 };
                    let expect = sparse(&[(i + 1, parity * signature[i])]);
                    assert_eq!(
                        alg.bracket_tuple(&tuple),
                        expect,
                        "n {n} sig {signature:?} i {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn bracket_multilinear() {
        let a4 = a4_euclidean();
        // e1 + e2 in the first slot
        let mut v = unit(4, 1);
        v[1] = Rational::one();
        let out = a4
            .bracket(&[v, unit(4, 3), unit(4, 4)])
            .unwrap();
        // [e1,e3,e4] = -e2 and [e2,e3,e4] = +e1
        let expect = vec![
            Rational::one(),
            -Rational::one(),
            Rational::zero(),
            Rational::zero(),
        ];
        assert_eq!(out, expect);
    }

    #[test]
    fn fi_passes_on_simples_and_fails_on_perturbation() {
        assert!(a4_euclidean().check_fi().passed);

        let solvable = NLieAlgebra::new(
            3,
            3,
            None,
            vec![(vec![1, 2, 3], 1, Rational::one())],
        )
        .unwrap();
        assert!(solvable.check_fi().passed);

        // rescaling a single constant is just a diagonal change of basis
        // (e4 -> e4/2) and keeps the identity intact
        let mut entries: Vec<(Vec<usize>, usize, Rational)> = a4_euclidean()
            .structure_entries()
            .map(|(i, t, c)| (i.to_vec(), t, c.clone()))
            .collect();
        for (idx, target, c) in entries.iter_mut() {
            if idx == &vec![1, 2, 3] && *target == 4 {
                *c = Rational::from_int(-2);
            }
        }
        let rescaled = NLieAlgebra::new(3, 4, None, entries.clone()).unwrap();
        assert!(rescaled.check_fi().passed);

        // a genuinely broken tensor: an extra target on one bracket
        entries.push((vec![1, 2, 3], 1, Rational::one()));
        let broken = NLieAlgebra::new(3, 4, None, entries).unwrap();
        let report = broken.check_fi();
        assert!(!report.passed);
        let violation = report.worst_case.unwrap();
        assert!(violation.residual.iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn direct_sum_blocks_and_cross_brackets() {
        let a4 = a4_euclidean();
        let sum = NLieAlgebra::direct_sum(&[a4.clone(), a4.clone()]).unwrap();
        assert_eq!(sum.dim(), 8);
        assert_eq!(sum.ideals(), Some(&[(1, 4), (5, 8)][..]));
        assert!(sum.check_fi().passed);
        // brackets mixing the two blocks vanish on all basis tuples
        for y in sum.n_subset_basis().iter() {
            let lo = y.iter().any(|&i| i <= 4);
            let hi = y.iter().any(|&i| i > 4);
            if lo && hi {
                assert!(sum.bracket_tuple(y).is_empty(), "mixed tuple {y:?}");
            }
        }
        let with_abelian =
            NLieAlgebra::direct_sum(&[a4.clone(), NLieAlgebra::abelian(3, 2)]).unwrap();
        assert_eq!(with_abelian.dim(), 6);
        assert!(with_abelian.check_fi().passed);

        let single = NLieAlgebra::direct_sum(std::slice::from_ref(&a4)).unwrap();
        assert_eq!(single.dim(), 4);
        assert_eq!(single.signature(), Some(&[1, 1, 1, 1][..]));

        // summing a sum flattens the block list
        let nested = NLieAlgebra::direct_sum(&[sum, a4.clone()]).unwrap();
        assert_eq!(nested.dim(), 12);
        assert_eq!(nested.ideals(), Some(&[(1, 4), (5, 8), (9, 12)][..]));
        assert!(nested.check_fi().passed);
        assert_eq!(nested.block_signature((9, 12)).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn ideals_and_series() {
        let alg = NLieAlgebra::new(3, 3, None, vec![(vec![1, 2, 3], 1, Rational::one())])
            .unwrap();
        assert!(alg.is_ideal(&[unit(3, 1)]));
        assert!(!a4_euclidean().is_ideal(&[unit(4, 1)]));
        assert!(a4_euclidean().is_ideal(&(1..=4).map(|i| unit(4, i)).collect::<Vec<_>>()));

        let full3: Vec<_> = (1..=3).map(|i| unit(3, i)).collect();
        assert_eq!(alg.derived_series(&full3, 3).unwrap(), vec![3, 1, 0]);

        let full4: Vec<_> = (1..=4).map(|i| unit(4, i)).collect();
        assert_eq!(a4_euclidean().derived_series(&full4, 3).unwrap(), vec![4, 4]);
        assert_eq!(
            NLieAlgebra::abelian(3, 4).derived_series(&full4, 3).unwrap(),
            vec![4, 0]
        );
        assert!(matches!(
            a4_euclidean().derived_series(&[unit(4, 1)], 3),
            Err(Error::NotAnIdeal)
        ));
        assert!(matches!(
            a4_euclidean().derived_series(&full4, 7),
            Err(Error::InvalidSolvabilityOrder)
        ));
    }

    #[test]
    fn block_signature_extraction() {
        let lorentz = NLieAlgebra::simple(3, &[1, -1, 1, -1]).unwrap();
        let sum = NLieAlgebra::direct_sum(&[a4_euclidean(), lorentz]).unwrap();
        assert_eq!(sum.block_signature((1, 4)).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(sum.block_signature((5, 8)).unwrap(), vec![1, -1, 1, -1]);
        let with_abelian =
            NLieAlgebra::direct_sum(&[a4_euclidean(), NLieAlgebra::abelian(3, 4)]).unwrap();
        assert!(with_abelian.block_signature((5, 8)).is_err());
    }

    #[test]
    fn antisymmetry_under_permutations() {
        let a4 = a4_euclidean();
        let base = [1usize, 2, 4];
        let b0 = a4.bracket_tuple(&base);
        let perms: [([usize; 3], i64); 5] = [
            ([2, 1, 4], -1),
            ([4, 2, 1], -1),
            ([2, 4, 1], 1),
            ([4, 1, 2], 1),
            ([1, 4, 2], -1),
        ];
        for (p, sign) in perms {
            assert_eq!(a4.bracket_tuple(&p), scale_sparse(&b0, sign));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = Rational> {
            (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
        }

        proptest! {
            #[test]
            fn bracket_tuple_flips_sign_under_swaps(
                tuple in proptest::collection::vec(1usize..=4, 3),
                i in 0usize..3,
                j in 0usize..3,
            ) {
                let a4 = a4_euclidean();
                let mut swapped = tuple.clone();
                swapped.swap(i, j);
                let sign = if i == j { 1 } else { -1 };
                prop_assert_eq!(
                    a4.bracket_tuple(&swapped),
                    scale_sparse(&a4.bracket_tuple(&tuple), sign)
                );
            }

            #[test]
            fn bracket_vectors_flip_sign_under_swaps(
                coords in proptest::collection::vec(rat(), 12),
                i in 0usize..3,
                j in 0usize..3,
            ) {
                let a4 = a4_euclidean();
                let args: Vec<Vec<Rational>> =
                    coords.chunks(4).map(<[Rational]>::to_vec).collect();
                let mut swapped = args.clone();
                swapped.swap(i, j);
                let out = a4.bracket(&args).unwrap();
                let out_swapped = a4.bracket(&swapped).unwrap();
                for (a, b) in out.iter().zip(&out_swapped) {
                    if i == j {
                        prop_assert_eq!(a, b);
                    } else {
                        prop_assert_eq!(&-a, b);
                    }
                }
            }
        }
    }
}
