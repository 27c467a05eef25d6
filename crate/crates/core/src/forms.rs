//! Complex exterior algebra over an invariant (1,0)-coframe.
//!
//! The 2n basis covectors are ordered φ¹ < … < φⁿ < φ̄¹ < … < φ̄ⁿ and a
//! monomial is stored as a bitmask over that order (bit `i` is φ^{i+1}, bit
//! `n + j` is φ̄^{j+1}). Every coefficient is attached to the increasing
//! product, so two forms are equal exactly when their coefficient maps are.
//!
//! Structure equations follow a single input convention:
//!
//! ```text
//! dφ^i = Σ_{j<k} A^i_{jk} φ^j∧φ^k + Σ_{j,k} B^i_{jk̄} φ^j∧φ̄^k + Σ_{j<k} C^i_{j̄k̄} φ̄^j∧φ̄^k
//! ```
//!
//! and d is extended to the whole algebra by the Leibniz rule, with
//! dφ̄^i = conj(dφ^i). Invariant forms have constant coefficients, so d only
//! acts through the structure equations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64, CQ};
use crate::tolerance;

/// A wedge product of distinct basis covectors in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    mask: u32,
    n: u8,
}

impl Monomial {
    pub fn new(n: usize, mask: u32) -> Self {
        debug_assert!(n <= 16 && (n == 16 || mask >> (2 * n) == 0));
        Monomial { mask, n: n as u8 }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn degree(&self) -> u32 {
        self.mask.count_ones()
    }

    /// (p, q) = number of holomorphic and antiholomorphic factors.
    pub fn bidegree(&self) -> (u32, u32) {
        let n = self.n as u32;
        let holo = self.mask & ((1u32 << n) - 1);
        (holo.count_ones(), (self.mask >> n).count_ones())
    }

    /// Basis positions in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        (0..2 * self.n as usize).filter(|b| self.mask >> b & 1 == 1).collect()
    }

    pub fn render(&self) -> String {
        if self.mask == 0 {
            return "1".into();
        }
        let n = self.n as usize;
        self.indices()
            .into_iter()
            .map(|b| if b < n { format!("phi{}", b + 1) } else { format!("bar{}", b - n + 1) })
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.mask ^ other.mask;
            if diff == 0 {
                Ordering::Equal
            } else if self.mask & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Sign of `a ∧ b` relative to the canonical ordering of `a | b`, or `None`
/// when a covector repeats.
fn wedge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j).count_ones();
        rest &= rest - 1;
    }
    Some(swaps % 2 == 1)
}

/// An invariant differential form with constant complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantForm<S> {
    n: usize,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> InvariantForm<S> {
    pub fn zero(n: usize) -> Self {
        assert!((1..=16).contains(&n), "complex dimension must be in 1..=16");
        InvariantForm { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: S) -> Self {
        Self::monomial(n, 0, c)
    }

    pub fn monomial(n: usize, mask: u32, c: S) -> Self {
        let mut f = Self::zero(n);
        f.add_term(mask, c);
        f
    }

    /// φ^{j+1}.
    pub fn phi(n: usize, j: usize) -> Self {
        assert!(j < n);
        Self::monomial(n, 1 << j, S::one())
    }

    /// φ̄^{j+1}.
    pub fn phibar(n: usize, j: usize) -> Self {
        assert!(j < n);
        Self::monomial(n, 1 << (n + j), S::one())
    }

    /// Builds `c · e_{b1} ∧ e_{b2} ∧ …` from basis positions in any order.
    pub fn from_product(n: usize, positions: &[usize], c: S) -> Self {
        let mut acc = Self::constant(n, c);
        for &b in positions {
            assert!(b < 2 * n, "basis position out of range");
            acc = acc.wedge_unchecked(&Self::monomial(n, 1 << b, S::one()));
        }
        acc
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u32) -> S {
        self.terms.get(&Monomial::new(self.n, mask)).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of φ^{i+1}∧φ̄^{j+1}.
    pub fn coeff_11(&self, i: usize, j: usize) -> S {
        self.coefficient(1 << i | 1 << (self.n + j))
    }

    pub fn add_term(&mut self, mask: u32, c: S) {
        let key = Monomial::new(self.n, mask);
        let value = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !value.is_exact_zero() {
            self.terms.insert(key, value);
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.mask, c.clone());
        }
        out
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.mask, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.mask, v.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Graded-anticommutative exterior product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.wedge_unchecked(other))
    }

    pub(crate) fn wedge_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(odd) = wedge_sign(ma.mask, mb.mask) {
                    let prod = ca.clone() * cb.clone();
                    out.add_term(ma.mask | mb.mask, if odd { -prod } else { prod });
                }
            }
        }
        out
    }

    /// Complex conjugation: φ^i ↔ φ̄^i with conjugated coefficients.
    pub fn conj(&self) -> Self {
        let n = self.n;
        let low = (1u32 << n) - 1;
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let (p, q) = m.bidegree();
            let swapped = (m.mask & low) << n | m.mask >> n;
            // conj of e_I ∧ ē_J is ē_I ∧ e_J; moving the q holomorphic
            // factors in front costs (−1)^{pq}.
            let c = c.conj();
            out.add_term(swapped, if p * q % 2 == 1 { -c } else { c });
        }
        out
    }

    pub fn project_bidegree(&self, p: u32, q: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m.bidegree() == (p, q) {
                out.add_term(m.mask, c.clone());
            }
        }
        out
    }

    pub fn project_degree(&self, k: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m.degree() == k {
                out.add_term(m.mask, c.clone());
            }
        }
        out
    }

    /// Bidegrees carrying a coefficient above `threshold`.
    pub fn bidegrees(&self, threshold: f64) -> Vec<(u32, u32)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_negligible(threshold))
            .map(|(m, _)| m.bidegree())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn max_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Zero test: exact in rational mode, `max |c| <= threshold` in float mode.
    pub fn is_zero_within(&self, threshold: f64) -> bool {
        self.terms.values().all(|c| c.is_negligible(threshold))
    }

    pub fn is_real(&self, threshold: f64) -> bool {
        self.sub_unchecked(&self.conj()).is_zero_within(threshold)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> InvariantForm<T> {
        let mut out = InvariantForm::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.mask, f(c));
        }
        out
    }

    pub fn to_c64(&self) -> InvariantForm<C64> {
        self.map(|c| c.to_c64())
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({}) {}", c.render(), m))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl InvariantForm<CQ> {
    pub fn to_scalar<S: Scalar>(&self) -> InvariantForm<S> {
        self.map(S::from_cq)
    }
}

/// Lie-algebra / complex-structure input: the differentials dφ^i of an
/// invariant (1,0)-coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct CoframeAlgebra<S> {
    n: usize,
    d_phi: Vec<InvariantForm<S>>,
    d_phibar: Vec<InvariantForm<S>>,
}

/// Outcome of the d∘d = 0 check on the basis 1-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiReport {
    pub pass: bool,
    pub residual: f64,
    /// Basis positions (0..2n) whose d² did not vanish.
    pub failing: Vec<usize>,
}

impl<S: Scalar> CoframeAlgebra<S> {
    /// Takes dφ^1, …, dφ^n. Each must be a 2-form over the same dimension.
    pub fn new(n: usize, d_phi: Vec<InvariantForm<S>>) -> Result<Self> {
        if d_phi.len() != n {
            return Err(Error::DimensionMismatch { left: n, right: d_phi.len() });
        }
        for form in &d_phi {
            if form.dim() != n {
                return Err(Error::DimensionMismatch { left: n, right: form.dim() });
            }
            if form.terms().any(|(m, _)| m.degree() != 2) {
                return Err(Error::Invalid("structure equations must be 2-forms".into()));
            }
        }
        let d_phibar = d_phi.iter().map(InvariantForm::conj).collect();
        Ok(CoframeAlgebra { n, d_phi, d_phibar })
    }

    /// Builds the algebra from the coefficient arrays of the input convention:
    /// `a[i][j][k]` (j<k) for φ^j∧φ^k, `b[i][j][k]` for φ^j∧φ̄^k and
    /// `c[i][j][k]` (j<k) for φ̄^j∧φ̄^k. Entries with j ≥ k in `a`, `c` are ignored.
    pub fn from_coefficients(
        n: usize,
        a: &[Vec<Vec<S>>],
        b: &[Vec<Vec<S>>],
        c: &[Vec<Vec<S>>],
    ) -> Result<Self> {
        let mut d_phi = Vec::with_capacity(n);
        for i in 0..n {
            let mut f = InvariantForm::zero(n);
            for j in 0..n {
                for k in 0..n {
                    if j < k {
                        f.add_term(1 << j | 1 << k, a[i][j][k].clone());
                        f.add_term(1 << (n + j) | 1 << (n + k), c[i][j][k].clone());
                    }
                    f.add_term(1 << j | 1 << (n + k), b[i][j][k].clone());
                }
            }
            d_phi.push(f);
        }
        Self::new(n, d_phi)
    }

    /// The abelian algebra: every dφ^i = 0.
    pub fn abelian(n: usize) -> Self {
        Self::new(n, vec![InvariantForm::zero(n); n]).expect("abelian algebra is well formed")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn d_phi(&self, i: usize) -> &InvariantForm<S> {
        &self.d_phi[i]
    }

    /// A^i_{jk} (j < k).
    pub fn a(&self, i: usize, j: usize, k: usize) -> S {
        self.d_phi[i].coefficient(1 << j | 1 << k)
    }

    /// B^i_{jk̄}.
    pub fn b(&self, i: usize, j: usize, k: usize) -> S {
        self.d_phi[i].coeff_11(j, k)
    }

    /// C^i_{j̄k̄} (j < k).
    pub fn c(&self, i: usize, j: usize, k: usize) -> S {
        self.d_phi[i].coefficient(1 << (self.n + j) | 1 << (self.n + k))
    }

    /// Largest structure-constant magnitude; the natural scale for zero tests.
    pub fn scale(&self) -> f64 {
        self.d_phi.iter().map(InvariantForm::max_norm).fold(0.0, f64::max)
    }

    fn d_basis(&self, b: usize) -> &InvariantForm<S> {
        if b < self.n {
            &self.d_phi[b]
        } else {
            &self.d_phibar[b - self.n]
        }
    }

    /// Exterior derivative.
    pub fn d(&self, form: &InvariantForm<S>) -> Result<InvariantForm<S>> {
        if form.dim() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: form.dim() });
        }
        Ok(self.d_unchecked(form))
    }

    pub(crate) fn d_unchecked(&self, form: &InvariantForm<S>) -> InvariantForm<S> {
        let mut out = InvariantForm::zero(self.n);
        for (m, c) in form.terms() {
            // d(e_1∧…∧e_k) = Σ_m (−1)^m e_1∧…∧de_m∧…∧e_k, and de_m is a 2-form
            // so it moves to the front without a sign.
            for (pos, b) in m.indices().into_iter().enumerate() {
                let rest = InvariantForm::monomial(self.n, m.mask() & !(1 << b), c.clone());
                let piece = self.d_basis(b).wedge_unchecked(&rest);
                out = if pos % 2 == 0 { out.add_unchecked(&piece) } else { out.sub_unchecked(&piece) };
            }
        }
        out
    }

    /// ∂ = (p+1, q) part of d on a (p, q)-form.
    pub fn del(&self, form: &InvariantForm<S>) -> InvariantForm<S> {
        self.project_each(form, 1, 0)
    }

    /// ∂̄ = (p, q+1) part of d on a (p, q)-form.
    pub fn delbar(&self, form: &InvariantForm<S>) -> InvariantForm<S> {
        self.project_each(form, 0, 1)
    }

    fn project_each(&self, form: &InvariantForm<S>, dp: u32, dq: u32) -> InvariantForm<S> {
        let mut out = InvariantForm::zero(self.n);
        for (m, c) in form.terms() {
            let (p, q) = m.bidegree();
            let piece = self.d_unchecked(&InvariantForm::monomial(self.n, m.mask(), c.clone()));
            out = out.add_unchecked(&piece.project_bidegree(p + dp, q + dq));
        }
        out
    }

    /// d(dφ^i) and d(dφ̄^i) for every i; passes when all vanish.
    pub fn check_jacobi(&self) -> JacobiReport {
        let threshold = tolerance::zero_threshold(self.scale().powi(2));
        let mut residual = 0.0f64;
        let mut failing = Vec::new();
        for b in 0..2 * self.n {
            let dd = self.d_unchecked(self.d_basis(b));
            residual = residual.max(dd.max_norm());
            if !dd.is_zero_within(threshold) {
                failing.push(b);
            }
        }
        JacobiReport { pass: failing.is_empty(), residual, failing }
    }

    /// Integrability: no dφ^i has a (0,2) component (C ≡ 0).
    pub fn check_integrable(&self) -> Result<()> {
        let threshold = tolerance::zero_threshold(self.scale());
        for (i, form) in self.d_phi.iter().enumerate() {
            if !form.project_bidegree(0, 2).is_zero_within(threshold) {
                return Err(Error::NotIntegrable { component: format!("phi{}", i + 1) });
            }
        }
        Ok(())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> CoframeAlgebra<T> {
        let d_phi = self.d_phi.iter().map(|form| form.map(f)).collect();
        CoframeAlgebra::new(self.n, d_phi).expect("mapping preserves shape")
    }

    pub fn to_c64(&self) -> CoframeAlgebra<C64> {
        self.map(|c| c.to_c64())
    }
}

impl CoframeAlgebra<CQ> {
    pub fn to_scalar<S: Scalar>(&self) -> CoframeAlgebra<S> {
        self.map(S::from_cq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cq_real, CQ};

    type F = InvariantForm<CQ>;

    fn i() -> CQ {
        CQ::i()
    }

    fn hopf() -> CoframeAlgebra<CQ> {
        let n = 2;
        let d1 = F::from_product(n, &[0, 1], i()).add_unchecked(&F::from_product(n, &[0, 3], i()));
        let d2 = F::from_product(n, &[0, 2], -i());
        CoframeAlgebra::new(n, vec![d1, d2]).unwrap()
    }

    #[test]
    fn repeated_covector_wedges_to_zero() {
        let p1 = F::phi(2, 0);
        assert!(p1.wedge(&p1).unwrap().is_empty());
    }

    #[test]
    fn one_forms_anticommute() {
        let (p1, b1) = (F::phi(2, 0), F::phibar(2, 0));
        assert_eq!(p1.wedge(&b1).unwrap(), b1.wedge(&p1).unwrap().neg());
    }

    #[test]
    fn wedge_is_bilinear() {
        let n = 2;
        let lhs = F::phi(n, 0).add_unchecked(&F::phi(n, 1)).wedge(&F::phibar(n, 1)).unwrap();
        let rhs = F::from_product(n, &[0, 3], CQ::one()).add_unchecked(&F::from_product(n, &[1, 3], CQ::one()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_rejects_mixed_dimensions() {
        let err = F::phi(2, 0).wedge(&F::phi(3, 0)).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn conj_fixes_real_11_form() {
        let f = F::from_product(2, &[0, 2], i());
        assert_eq!(f.conj(), f);
    }

    #[test]
    fn conj_of_holomorphic_2_form() {
        let f = F::from_product(2, &[0, 1], CQ::one());
        assert_eq!(f.conj(), F::from_product(2, &[2, 3], CQ::one()));
    }

    #[test]
    fn conj_of_mixed_monomial() {
        // conj(u φ¹∧φ̄²) = ū φ̄¹∧φ² = −ū φ²∧φ̄¹
        let u = crate::scalar::cq((1, 2), (3, 1));
        let f = F::from_product(2, &[0, 3], u.clone());
        assert_eq!(f.conj(), F::from_product(2, &[1, 2], -u.conj()));
        assert_eq!(f.conj().conj(), f);
    }

    #[test]
    fn bidegree_projection() {
        let n = 2;
        let a = F::from_product(n, &[0, 1], CQ::one()).add_unchecked(&F::from_product(n, &[0, 2], CQ::one()));
        assert_eq!(a.project_bidegree(1, 1), F::from_product(n, &[0, 2], CQ::one()));
        assert!(a.project_bidegree(0, 0).is_empty());
        assert_eq!(hopf().d_phi(0).project_bidegree(2, 0), F::from_product(n, &[0, 1], i()));
    }

    #[test]
    fn hopf_d_phi2() {
        let alg = hopf();
        assert_eq!(alg.d(&F::phi(2, 1)).unwrap(), F::from_product(2, &[0, 2], -i()));
    }

    #[test]
    fn snow_d_phi2() {
        let n = 2;
        let half = cq_real(1, 2);
        let d2 = F::from_product(n, &[0, 1], half.clone()).add_unchecked(&F::from_product(n, &[1, 2], -half.clone()));
        let alg = CoframeAlgebra::new(n, vec![F::zero(n), d2.clone()]).unwrap();
        assert_eq!(alg.d(&F::phi(n, 1)).unwrap(), d2);
        assert!(alg.check_jacobi().pass);
    }

    #[test]
    fn abelian_d_vanishes() {
        let alg = CoframeAlgebra::<CQ>::abelian(3);
        let f = F::from_product(3, &[0, 4], i()).add_unchecked(&F::phi(3, 2));
        assert!(alg.d(&f).unwrap().is_empty());
        let report = alg.check_jacobi();
        assert!(report.pass);
        assert_eq!(report.residual, 0.0);
    }

    #[test]
    fn non_jacobi_algebra_fails() {
        let n = 2;
        let alg = CoframeAlgebra::new(
            n,
            vec![F::from_product(n, &[1, 3], CQ::one()), F::from_product(n, &[0, 2], CQ::one())],
        )
        .unwrap();
        let report = alg.check_jacobi();
        assert!(!report.pass);
        assert!(report.residual > 0.0);
        assert!(report.failing.contains(&0));
    }

    #[test]
    fn phi_wedge_phibar_without_i_is_still_closed() {
        // d(φ¹∧φ̄¹) vanishes identically, so this shape passes d∘d = 0.
        let n = 2;
        let alg = CoframeAlgebra::new(n, vec![F::from_product(n, &[0, 2], CQ::one()), F::zero(n)]).unwrap();
        assert!(alg.check_jacobi().pass);
    }

    #[test]
    fn c_part_breaks_integrability() {
        let n = 2;
        let alg = CoframeAlgebra::new(n, vec![F::from_product(n, &[2, 3], CQ::one()), F::zero(n)]).unwrap();
        assert!(matches!(alg.check_integrable(), Err(Error::NotIntegrable { .. })));
        assert!(hopf().check_integrable().is_ok());
    }

    #[test]
    fn coefficient_constructor_matches_forms() {
        let n = 2;
        let z = || vec![vec![CQ::zero(); n]; n];
        let mut a = vec![z(), z()];
        let mut b = vec![z(), z()];
        let c = vec![z(), z()];
        a[0][0][1] = i();
        b[0][0][1] = i();
        b[1][0][0] = -i();
        let alg = CoframeAlgebra::from_coefficients(n, &a, &b, &c).unwrap();
        assert_eq!(alg, hopf());
        assert_eq!(alg.a(0, 0, 1), i());
        assert_eq!(alg.b(1, 0, 0), -i());
    }

    #[test]
    fn monomial_order_is_degree_then_lexicographic() {
        let n = 2;
        let m = |positions: &[usize]| Monomial::new(n, positions.iter().map(|b| 1u32 << b).sum());
        assert!(m(&[3]) < m(&[0, 1]));
        assert!(m(&[0, 1]) < m(&[0, 2]));
        assert!(m(&[0, 3]) < m(&[1, 2]));
        assert_eq!(m(&[1, 2]).render(), "phi2^bar1");
    }
}
