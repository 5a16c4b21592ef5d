use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::monomial::Exps;
use super::{Coeff, CurveLetter, Monomial, RingContext};
use crate::combinatorics::Perm;
use crate::{Error, Result};

/// Homogeneity of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u32),
    Mixed,
}

/// Sparse exact-rational combination of monomials. No stored coefficient is
/// zero, so structural equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ctx: Arc<RingContext>,
    terms: BTreeMap<Monomial, Coeff>,
}

fn add_term(terms: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl RingElement {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        RingElement {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        Self::constant(ctx, Coeff::one())
    }

    pub fn constant(ctx: &Arc<RingContext>, c: Coeff) -> Self {
        let mut x = Self::zero(ctx);
        add_term(&mut x.terms, Monomial::unit(ctx.factors()), c);
        x
    }

    pub fn from_integer(ctx: &Arc<RingContext>, c: i64) -> Self {
        Self::constant(ctx, Coeff::from_integer(c.into()))
    }

    /// `c · m` after checking `m` against the context.
    pub fn from_monomial(ctx: &Arc<RingContext>, m: Monomial, c: Coeff) -> Result<Self> {
        validate_monomial(ctx, &m)?;
        let mut x = Self::zero(ctx);
        add_term(&mut x.terms, m, c);
        Ok(x)
    }

    pub(crate) fn from_terms(ctx: &Arc<RingContext>, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut x = Self::zero(ctx);
        for (m, c) in terms {
            add_term(&mut x.terms, m, c);
        }
        x
    }

    /// `x_1 ⊗ … ⊗ x_n` with one letter per factor.
    pub fn tensor(ctx: &Arc<RingContext>, letters: &[CurveLetter]) -> Result<Self> {
        if letters.len() != ctx.factors() {
            return Err(Error::precondition(format!(
                "{} letters for {} factors",
                letters.len(),
                ctx.factors()
            )));
        }
        let m = Monomial::new(letters, &vec![0; letters.len()], &[]);
        Self::from_monomial(ctx, m, Coeff::one())
    }

    /// `p_i^*(a)`, factors numbered from 1.
    pub fn pullback(ctx: &Arc<RingContext>, i: usize, a: CurveLetter) -> Result<Self> {
        ctx.check_factor(i)?;
        let mut letters = vec![CurveLetter::Unit; ctx.factors()];
        letters[i - 1] = a;
        Self::tensor(ctx, &letters)
    }

    /// `ω_i`.
    pub fn omega(ctx: &Arc<RingContext>, i: usize) -> Result<Self> {
        ctx.check_factor(i)?;
        let n = ctx.factors();
        let mut e = vec![0; n];
        e[i - 1] = 1;
        let m = Monomial::new(&vec![CurveLetter::Unit; n], &e, &[]);
        Self::from_monomial(ctx, m, Coeff::one())
    }

    /// `t_α`, parameters numbered from 0.
    pub fn t(ctx: &Arc<RingContext>, alpha: u32) -> Result<Self> {
        ctx.check_t_index(alpha)?;
        let n = ctx.factors();
        let mut t = vec![0; alpha as usize + 1];
        t[alpha as usize] = 1;
        let m = Monomial::new(&vec![CurveLetter::Unit; n], &vec![0; n], &t);
        Self::from_monomial(ctx, m, Coeff::one())
    }

    /// `pt_i = p_i^*(pt)`.
    pub fn point(ctx: &Arc<RingContext>, i: usize) -> Result<Self> {
        Self::pullback(ctx, i, CurveLetter::Point)
    }

    /// `pt_I = Π_{i∈I} pt_i`.
    pub fn point_on(ctx: &Arc<RingContext>, set: &[usize]) -> Result<Self> {
        let mut letters = vec![CurveLetter::Unit; ctx.factors()];
        for &i in set {
            ctx.check_factor(i)?;
            letters[i - 1] = CurveLetter::Point;
        }
        Self::tensor(ctx, &letters)
    }

    /// Künneth representative of the pairwise diagonal
    /// `Δ_ij = pt_i + pt_j − Σ_k (α_k^{(i)} β_k^{(j)} − β_k^{(i)} α_k^{(j)})`.
    pub fn diagonal(ctx: &Arc<RingContext>, i: usize, j: usize) -> Result<Self> {
        ctx.check_factor(i)?;
        ctx.check_factor(j)?;
        if i >= j {
            return Err(Error::precondition(format!("diagonal needs i < j, got ({i}, {j})")));
        }
        let n = ctx.factors();
        let mut out = Self::point(ctx, i)? + Self::point(ctx, j)?;
        let mut letters = vec![CurveLetter::Unit; n];
        for k in 1..=ctx.genus() as u16 {
            letters[i - 1] = CurveLetter::Alpha(k);
            letters[j - 1] = CurveLetter::Beta(k);
            out = out - Self::tensor(ctx, &letters)?;
            letters[i - 1] = CurveLetter::Beta(k);
            letters[j - 1] = CurveLetter::Alpha(k);
            out = out + Self::tensor(ctx, &letters)?;
        }
        Ok(out)
    }

    /// `Δ_I` as the product of pairwise diagonals along the sorted chain of
    /// `I`; the unit when `|I| ≤ 1`.
    pub fn small_diagonal(ctx: &Arc<RingContext>, set: &[usize]) -> Result<Self> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &i in &sorted {
            ctx.check_factor(i)?;
        }
        let mut out = Self::one(ctx);
        for w in sorted.windows(2) {
            out = &out * &Self::diagonal(ctx, w[0], w[1])?;
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    fn same_ctx(&self, other: &RingElement) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Graded-commutative product.
    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ctx(other)?;
        let mut terms = BTreeMap::new();
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                if let Some((m, negative)) = mx.mul(my) {
                    let c = cx * cy;
                    add_term(&mut terms, m, if negative { -c } else { c });
                }
            }
        }
        Ok(RingElement {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Coeff) -> RingElement {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        RingElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> RingElement {
        self.scale(&Coeff::from_integer(c.into()))
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut out = Self::one(&self.ctx);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Action of `σ` on the curve factors: the letter in factor `p` moves to
    /// factor `σ(p)`, ω and t exponents stay put.
    pub fn permute_factors(&self, sigma: &Perm) -> RingElement {
        self.act(sigma, false)
    }

    /// `ρ(σ)`: curve factors and ω-indices are permuted together.
    pub fn rho_act(&self, sigma: &Perm) -> RingElement {
        self.act(sigma, true)
    }

    fn act(&self, sigma: &Perm, move_omega: bool) -> RingElement {
        let terms = self.terms.iter().map(|(m, c)| {
            let (pm, negative) = m.permuted(sigma, move_omega);
            (pm, if negative { -c.clone() } else { c.clone() })
        });
        Self::from_terms(&self.ctx, terms)
    }

    /// Average of `permute_factors(σ, ·)` over a finite group `G`.
    pub fn project_invariant(&self, group: &[Perm]) -> RingElement {
        assert!(!group.is_empty(), "empty group");
        let mut acc = Self::zero(&self.ctx);
        for sigma in group {
            for (m, c) in &self.terms {
                let (pm, negative) = m.permuted(sigma, false);
                add_term(&mut acc.terms, pm, if negative { -c.clone() } else { c.clone() });
            }
        }
        acc.scale(&Coeff::new(1.into(), group.len().into()))
    }

    /// Pullback along the projection forgetting trailing factors: pads with
    /// unit letters and zero ω-exponents.
    pub fn embed(&self, target: &Arc<RingContext>) -> Result<RingElement> {
        let src = &self.ctx;
        if src.genus() != target.genus()
            || src.rank() != target.rank()
            || src.degrees() != target.degrees()
            || target.factors() < src.factors()
        {
            return Err(Error::ContextMismatch);
        }
        let n = target.factors();
        Ok(Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.padded(n), c.clone())),
        ))
    }

    pub fn degree(&self) -> Degree {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => Degree::Zero,
            Some(d) if it.all(|e| e == d) => Degree::Homogeneous(d),
            Some(_) => Degree::Mixed,
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> RingElement {
        self.filter(|m| m.degree() == degree)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> RingElement {
        RingElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_omega_free(&self) -> bool {
        self.terms.keys().all(|m| m.omega_degree() == 0)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|m| m.t_exp().is_empty())
    }

    /// Largest ω-degree among the terms, `None` for zero.
    pub fn omega_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::omega_degree).max()
    }

    /// Specialization `t ↦ 0`, landing in `target` (usually the
    /// non-equivariant version of this context).
    pub fn specialize_t_zero(&self, target: &Arc<RingContext>) -> RingElement {
        Self::from_terms(
            target,
            self.terms
                .iter()
                .filter(|(m, _)| m.t_exp().is_empty())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Re-homes the element in a context with the same factor count.
    pub fn with_ctx(&self, target: &Arc<RingContext>) -> Result<RingElement> {
        if target.factors() != self.ctx.factors() || target.genus() != self.ctx.genus() {
            return Err(Error::ContextMismatch);
        }
        for m in self.terms.keys() {
            validate_monomial(target, m)?;
        }
        Ok(RingElement {
            ctx: target.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Ring endomorphism fixing letters and t, sending `ω_i` to `images[i]`.
    pub fn substitute_omega(&self, images: &[RingElement]) -> Result<RingElement> {
        assert_eq!(images.len(), self.ctx.factors());
        let target = images.first().map(|x| x.ctx.clone()).unwrap_or_else(|| self.ctx.clone());
        let n = self.ctx.factors();
        let mut powers: Vec<Vec<RingElement>> = images.iter().map(|x| vec![Self::one(&x.ctx), x.clone()]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let base = Monomial::from_parts(
                m.letters().into(),
                SmallVec::from_elem(0, n),
                m.t_exp().into(),
            );
            let mut term = Self::from_monomial(&target, base, c.clone())?;
            for (i, &e) in m.omega_exp().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = out + term;
        }
        Ok(out)
    }

    /// Splits off the ω-exponents: `x = Σ_e c_e · ω^e` with ω-free `c_e`.
    pub fn omega_layers(&self) -> BTreeMap<Vec<u16>, RingElement> {
        let n = self.ctx.factors();
        let mut out: BTreeMap<Vec<u16>, RingElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.omega_exp().to_vec();
            let stripped = m.with_omega(SmallVec::from_elem(0, n));
            let entry = out.entry(key).or_insert_with(|| Self::zero(&self.ctx));
            add_term(&mut entry.terms, stripped, c.clone());
        }
        out
    }

    /// `c · ω^e` for an ω-free `c`.
    pub fn times_omega_power(&self, e: &[u16]) -> RingElement {
        let exps: Exps = e.into();
        Self::from_terms(
            &self.ctx,
            self.terms.iter().map(|(m, c)| {
                let sum: Exps = m.omega_exp().iter().zip(exps.iter()).map(|(a, b)| a + b).collect();
                (m.with_omega(sum), c.clone())
            }),
        )
    }
}

pub(crate) fn validate_monomial(ctx: &RingContext, m: &Monomial) -> Result<()> {
    let n = ctx.factors();
    if m.letters().len() != n || m.omega_exp().len() != n {
        return Err(Error::precondition(format!(
            "monomial with {} factors in a context with {n}",
            m.letters().len()
        )));
    }
    for l in m.letters() {
        if let Some(k) = l.index() {
            if k == 0 || k as u32 > ctx.genus() {
                return Err(Error::IndexOutOfRange {
                    index: k as usize,
                    max: ctx.genus() as usize,
                });
            }
        }
    }
    if !m.t_exp().is_empty() {
        ctx.check_t_index(m.t_exp().len() as u32 - 1)?;
    }
    Ok(())
}


macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $checked:ident) => {
        impl $Trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("ring elements from different contexts")
            }
        }
        impl $Trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(mut self) -> RingElement {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use CurveLetter::*;

    fn el(ctx: &Arc<RingContext>, s: &str) -> RingElement {
        parse(ctx, s).unwrap()
    }

    #[test]
    fn alpha_times_beta_is_point() {
        let ctx = RingContext::new(1, 1);
        let a = RingElement::tensor(&ctx, &[Alpha(1)]).unwrap();
        let b = RingElement::tensor(&ctx, &[Beta(1)]).unwrap();
        assert_eq!(&a * &b, RingElement::point(&ctx, 1).unwrap());
        assert_eq!(&b * &a, -RingElement::point(&ctx, 1).unwrap());
    }

    #[test]
    fn koszul_sign_example() {
        let ctx = RingContext::new(1, 2);
        let x = el(&ctx, "1 * [one|a1]");
        let y = el(&ctx, "1 * [b1|one]");
        assert_eq!(&x * &y, el(&ctx, "-1 * [b1|a1]"));
    }

    #[test]
    fn diagonal_square_genus_zero() {
        let ctx = RingContext::new(0, 2);
        let d = RingElement::diagonal(&ctx, 1, 2).unwrap();
        assert_eq!(d, el(&ctx, "1 * [pt|one] + 1 * [one|pt]"));
        assert_eq!(&d * &d, el(&ctx, "2 * [pt|pt]"));
    }

    #[test]
    fn diagonal_square_all_genera() {
        for g in 0..=3u32 {
            let ctx = RingContext::new(g, 2);
            let d = RingElement::diagonal(&ctx, 1, 2).unwrap();
            let expected = RingElement::point_on(&ctx, &[1, 2]).unwrap().scale_int(2 - 2 * g as i64);
            assert_eq!(&d * &d, expected, "genus {g}");
        }
    }

    #[test]
    fn diagonal_absorbs_factor_swap() {
        for g in 0..=2u32 {
            let ctx = RingContext::new(g, 3);
            let d = RingElement::diagonal(&ctx, 1, 3).unwrap();
            for a in CurveLetter::basis(g) {
                let left = &d * &RingElement::pullback(&ctx, 1, a).unwrap();
                let right = &d * &RingElement::pullback(&ctx, 3, a).unwrap();
                assert_eq!(left, right, "genus {g}, letter {a}");
            }
        }
    }

    #[test]
    fn diagonal_rejects_bad_indices() {
        let ctx = RingContext::new(0, 2);
        assert!(RingElement::diagonal(&ctx, 1, 3).is_err());
        assert!(RingElement::diagonal(&ctx, 2, 1).is_err());
    }

    #[test]
    fn small_diagonal_cases() {
        let ctx = RingContext::new(1, 3);
        assert_eq!(RingElement::small_diagonal(&ctx, &[3]).unwrap(), RingElement::one(&ctx));
        assert_eq!(
            RingElement::small_diagonal(&ctx, &[1, 2]).unwrap(),
            RingElement::diagonal(&ctx, 1, 2).unwrap()
        );
        let d12 = RingElement::diagonal(&ctx, 1, 2).unwrap();
        let d13 = RingElement::diagonal(&ctx, 1, 3).unwrap();
        let d23 = RingElement::diagonal(&ctx, 2, 3).unwrap();
        assert_eq!(&d12 * &d23, &d13 * &d23);
        assert_eq!(&d12 * &d23, &d12 * &d13);
    }

    #[test]
    fn permute_factors_examples() {
        let ctx = RingContext::new(1, 2);
        let swap = Perm::transposition(2, 0, 1);
        assert_eq!(el(&ctx, "1 * [a1|b1]").permute_factors(&swap), el(&ctx, "-1 * [b1|a1]"));
        assert_eq!(el(&ctx, "1 * [pt|one]").permute_factors(&swap), el(&ctx, "1 * [one|pt]"));
        let x = el(&ctx, "3/2 * [a1|b1] w^(1,0) + 1 * [pt|one]");
        assert_eq!(x.permute_factors(&Perm::identity(2)), x);
    }

    #[test]
    fn rho_examples() {
        let ctx = RingContext::new(0, 2);
        let swap = Perm::transposition(2, 0, 1);
        assert_eq!(el(&ctx, "1 * [pt|one] w^(2,0)").rho_act(&swap), el(&ctx, "1 * [one|pt] w^(0,2)"));
        let x = &(RingElement::omega(&ctx, 1).unwrap() + RingElement::omega(&ctx, 2).unwrap())
            + &RingElement::diagonal(&ctx, 1, 2).unwrap();
        assert_eq!(x.rho_act(&swap), x);
    }

    #[test]
    fn point_embed_project() {
        let ctx = RingContext::new(1, 2);
        assert_eq!(RingElement::point_on(&ctx, &[1, 2]).unwrap(), el(&ctx, "1 * [pt|pt]"));
        let small = RingContext::new(1, 1);
        let big = RingContext::new(1, 3);
        let w = RingElement::omega(&small, 1).unwrap().embed(&big).unwrap();
        assert_eq!(w, RingElement::omega(&big, 1).unwrap());
        assert!(RingElement::omega(&big, 1).unwrap().embed(&small).is_err());
        let group = Perm::all(2);
        let avg = el(&ctx, "1 * [a1|one]").project_invariant(&group);
        assert_eq!(avg, el(&ctx, "1/2 * [a1|one] + 1/2 * [one|a1]"));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = RingElement::one(&RingContext::new(0, 2));
        let b = RingElement::one(&RingContext::new(1, 2));
        assert_eq!(a.checked_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn degree_classification() {
        let ctx = RingContext::new(1, 2);
        assert_eq!(RingElement::zero(&ctx).degree(), Degree::Zero);
        assert_eq!(el(&ctx, "1 * [a1|one] w^(1,0)").degree(), Degree::Homogeneous(3));
        assert_eq!(el(&ctx, "1 * [a1|one] + 1 * [pt|one]").degree(), Degree::Mixed);
    }
}
