//! Quot-scheme classes through their pullback to the complete filt scheme.

use std::sync::Arc;


use crate::algebra::{CurveLetter, RingContext, RingElement};
use crate::combinatorics::{enumerate_t, Perm, SubsetTuple, TConvention, WeightVector};
use crate::xi::{check_curve_class, reciprocal, XiEngine};
use crate::{Error, Result};

/// How a class that is not `St(u)`-invariant is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InvariantMode {
    /// Reject it.
    Strict,
    /// Replace it by its `St(u)`-average.
    #[default]
    Lenient,
}

/// A pullback together with whether the input class had to be averaged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub value: RingElement,
    pub averaged: bool,
}

fn prepare_class(u: &WeightVector, a: &RingElement, mode: InvariantMode) -> Result<(RingElement, bool)> {
    if !u.is_decreasing() {
        return Err(Error::precondition(format!("{u} is not decreasing")));
    }
    if u.len() != a.ctx().factors() {
        return Err(Error::precondition("weight length differs from factor count"));
    }
    check_curve_class(a)?;
    let stab = Perm::stabilizer(u.entries());
    let avg = a.project_invariant(&stab);
    if avg == *a {
        return Ok((avg, false));
    }
    match mode {
        InvariantMode::Strict => Err(Error::precondition(format!("class is not St{u}-invariant"))),
        InvariantMode::Lenient => Ok((avg, true)),
    }
}

/// `Ψ*ξ^Q(u; a) = |St(u)|^{-1} Σ_σ ξ(σu)·σ(a)`.
pub fn psi_pullback(engine: &XiEngine, u: &WeightVector, a: &RingElement, mode: InvariantMode) -> Result<Pullback> {
    let (a, averaged) = prepare_class(u, a, mode)?;
    let sum = engine.sym_xi(u, &a)?;
    Ok(Pullback {
        value: sum.scale(&reciprocal(u.stabilizer_order())),
        averaged,
    })
}

/// The same class from the closed formula over `T(u, σ)`.
pub fn psi_pullback_combinatorial(
    ctx: &Arc<RingContext>,
    u: &WeightVector,
    a: &RingElement,
    mode: InvariantMode,
    conv: TConvention,
) -> Result<Pullback> {
    if !ctx.has_trivial_degrees() {
        return Err(Error::precondition("the combinatorial formula needs trivial line-bundle degrees"));
    }
    let (a, averaged) = prepare_class(u, a, mode)?;
    let n = ctx.factors();
    let mut out = RingElement::zero(ctx);
    for sigma in Perm::all(n) {
        let mut inner = RingElement::zero(ctx);
        for l in enumerate_t(u, &sigma, conv)? {
            let mut term = RingElement::one(ctx);
            for h in 1..=n {
                let e = l.rho(h);
                if e > 0 {
                    term = &term * &RingElement::omega(ctx, h)?.pow(e as u32);
                }
            }
            for (_, comps) in l.incidence().classify() {
                for c in comps {
                    term = &term * &diagonal_product_classified(ctx, &c)?;
                }
            }
            inner = inner + term;
        }
        if !inner.is_zero() {
            out = out + inner * a.permute_factors(&sigma);
        }
    }
    Ok(Pullback {
        value: out.scale(&reciprocal(u.stabilizer_order())),
        averaged,
    })
}

/// `Π_j Δ_{I_j}` as a literal ring product.
pub fn diagonal_product(ctx: &Arc<RingContext>, tuple: &SubsetTuple) -> Result<RingElement> {
    let mut out = RingElement::one(ctx);
    for set in tuple.sets() {
        out = &out * &RingElement::small_diagonal(ctx, &set)?;
    }
    Ok(out)
}

/// `Π_j Δ_{I_j}` for a connected tuple, read off from `b1`: `Δ_S`, `(2−2g)pt_S`
/// or zero, `S` the support.
pub fn diagonal_product_classified(ctx: &Arc<RingContext>, tuple: &SubsetTuple) -> Result<RingElement> {
    let support = tuple.support();
    match tuple.betti_b1()? {
        0 => RingElement::small_diagonal(ctx, &support),
        1 => Ok(RingElement::point_on(ctx, &support)?.scale_int(2 - 2 * ctx.genus() as i64)),
        _ => Ok(RingElement::zero(ctx)),
    }
}

/// `Ψ_l^*ξ^l(v_*; a) = |St(v_*)|^{-1} Σ_{σ∈S(l)} ξ(σv_*)·σ(a)`, `S(l)` the Young
/// subgroup of the composition `l`.
pub fn psi_partial(engine: &XiEngine, composition: &[usize], v: &WeightVector, a: &RingElement) -> Result<RingElement> {
    let n = engine.ctx().factors();
    if composition.iter().sum::<usize>() != n || v.len() != n {
        return Err(Error::precondition("composition does not match the factor count"));
    }
    check_curve_class(a)?;
    let mut offset = 0;
    for &size in composition {
        if !WeightVector(v.entries()[offset..offset + size].to_vec()).is_decreasing() {
            return Err(Error::precondition(format!("block {offset}..{} of {v} is not decreasing", offset + size)));
        }
        offset += size;
    }
    let group = Perm::young_subgroup(composition);
    let stab = group.iter().filter(|s| v.permuted(s) == *v).count() as u64;
    let mut out = RingElement::zero(engine.ctx());
    for sigma in &group {
        out = out + engine.xi(&v.permuted(sigma))? * a.permute_factors(sigma);
    }
    Ok(out.scale(&reciprocal(stab)))
}

/// `x` is fixed by `ρ` of every adjacent transposition.
pub fn rho_invariance_check(x: &RingElement) -> bool {
    Perm::adjacent_transpositions(x.ctx().factors())
        .iter()
        .all(|s| x.rho_act(s) == *x)
}

/// Tensor monomials of `H*(C^n)` (no ω, no t) with degree in `degrees`.
pub fn curve_monomials(ctx: &Arc<RingContext>, degree: impl Fn(u32) -> bool) -> Vec<RingElement> {
    let basis = CurveLetter::basis(ctx.genus());
    let mut tuples: Vec<(Vec<CurveLetter>, u32)> = vec![(Vec::new(), 0)];
    for _ in 0..ctx.factors() {
        tuples = tuples
            .into_iter()
            .flat_map(|(ls, d)| {
                basis.iter().map(move |&b| {
                    let mut next = ls.clone();
                    next.push(b);
                    (next, d + b.degree())
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .filter(|(_, d)| degree(*d))
        .map(|(ls, _)| RingElement::tensor(ctx, &ls).expect("letters in range"))
        .collect()
}

/// ω-exponent vectors of length `n` with total `k`.
fn omega_vectors(n: usize, k: u32) -> Vec<Vec<u16>> {
    WeightVector::all_with_co(n, k)
        .into_iter()
        .filter(|v| v.co() == k)
        .map(|v| v.entries().iter().map(|&x| x as u16).collect())
        .collect()
}

/// A basis of the classes of `H*(C^n)` invariant under `group`, of degree at
/// most `max_degree`.
pub fn invariant_curve_basis(ctx: &Arc<RingContext>, group: &[Perm], max_degree: u32) -> Vec<RingElement> {
    let avgs = curve_monomials(ctx, |d| d <= max_degree)
        .into_iter()
        .map(|m| m.project_invariant(group))
        .filter(|x| !x.is_zero())
        .collect();
    crate::linalg::independent_subset(avgs)
}

/// Dimension of the `ρ`-invariant part of `H*(C^n)[ω]` in cohomological
/// degree `degree`.
pub fn invariant_dimension(ctx: &Arc<RingContext>, degree: u32) -> usize {
    let n = ctx.factors();
    let group = Perm::all(n);
    let mut seen = std::collections::HashSet::new();
    let mut averages = Vec::new();
    for base in curve_monomials(ctx, |d| d <= degree && (degree - d).is_multiple_of(2)) {
        let letter_degree = match base.degree() {
            crate::algebra::Degree::Homogeneous(d) => d,
            _ => 0,
        };
        for e in omega_vectors(n, (degree - letter_degree) / 2) {
            let m = base.times_omega_power(&e);
            let mut avg = RingElement::zero(ctx);
            for s in &group {
                avg = avg + m.rho_act(s);
            }
            if avg.is_zero() {
                continue;
            }
            // averages over one orbit agree up to sign
            let lead = avg.terms().next().map(|(m, _)| m.clone()).unwrap();
            if seen.insert(lead) {
                averages.push(avg);
            }
        }
    }
    crate::linalg::rank_of(&averages)
}

/// Rank over `Q` of the degree-`degree` members of `classes`; every class must
/// be homogeneous (zero is allowed and ignored).
pub fn span_rank(classes: &[RingElement], degree: u32) -> Result<usize> {
    use crate::algebra::Degree;
    let mut chosen = Vec::new();
    for x in classes {
        match x.degree() {
            Degree::Mixed => return Err(Error::precondition("span_rank needs homogeneous classes")),
            Degree::Homogeneous(d) if d == degree => chosen.push(x),
            _ => {}
        }
    }
    Ok(crate::linalg::rank_of(chosen))
}

/// The classes `Ψ*ξ^Q(u; a)` for decreasing `u` (entries `< r` when `r` is
/// given) and `a` over a basis of `St(u)`-invariants, of degree at most
/// `max_degree`. Trivial line-bundle degrees are assumed.
pub fn pullback_classes(engine: &XiEngine, r: Option<u32>, max_degree: u32) -> Result<Vec<RingElement>> {
    let ctx = engine.ctx();
    let n = ctx.factors();
    let mut out = Vec::new();
    for u in crate::combinatorics::enumerate_b(n, r, Some(max_degree / 2))? {
        let stab = Perm::stabilizer(u.entries());
        for a in invariant_curve_basis(ctx, &stab, max_degree - 2 * u.co()) {
            out.push(psi_pullback(engine, &u, &a, InvariantMode::Strict)?.value);
        }
    }
    Ok(out)
}

/// Truncated residuals of
/// `Σ_{i≤n} Σ_l t^l ξ(l e_i) p_i^*(a) = Σ_{I≠∅} Δ_I p_{min I}^*(a) t^{|I|−1} Π_{j∈I} (1 − ω_j t)^{-1}`,
/// one per power of `t` up to `max_l`. Fails if `Δ_I·p_i^*(a)` depends on `i ∈ I`.
pub fn generating_identity_check(engine: &XiEngine, a: CurveLetter, max_l: u32) -> Result<Vec<RingElement>> {
    let ctx = engine.ctx();
    let n = ctx.factors();
    let mut residual = vec![RingElement::zero(ctx); max_l as usize + 1];
    for i in 1..=n {
        let pa = RingElement::pullback(ctx, i, a)?;
        for (l, x) in engine.pn_series(i, max_l)?.into_iter().enumerate() {
            residual[l] = &residual[l] + &(&x * &pa);
        }
    }
    for mask in 1u64..(1 << n) {
        let set: Vec<usize> = (1..=n).filter(|k| mask & (1 << (k - 1)) != 0).collect();
        let diag = RingElement::small_diagonal(ctx, &set)?;
        let class = &diag * &RingElement::pullback(ctx, set[0], a)?;
        for &i in &set[1..] {
            if &diag * &RingElement::pullback(ctx, i, a)? != class {
                return Err(Error::precondition(format!("Δ_I·p_i*({a}) depends on i for I = {set:?}")));
            }
        }
        let shift = set.len() as u32 - 1;
        for l in shift..=max_l {
            let h = crate::xi::complete_homogeneous(ctx, &set, l - shift)?;
            residual[l as usize] = &residual[l as usize] - &(&class * &h);
        }
    }
    Ok(residual)
}

/// Per-degree outcome of a rank comparison.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeRank {
    pub degree: u32,
    pub span_rank: usize,
    pub expected: usize,
}

impl DegreeRank {
    pub fn ok(&self) -> bool {
        self.span_rank == self.expected
    }
}

/// Rank of the subalgebra generated by `Ψ*ξ^Q(l e_1; p_1^*a)` (`1 ≤ l ≤ n`,
/// `a` a curve basis letter) and the `S_n`-invariant curve classes, compared
/// with the `ρ`-invariant dimension in each degree up to `max_degree`.
pub fn generator_span_check(engine: &XiEngine, max_degree: u32) -> Result<Vec<DegreeRank>> {
    use crate::algebra::Degree;
    use crate::linalg::independent_subset;
    let ctx = engine.ctx();
    let n = ctx.factors();
    let mut gens: Vec<(u32, RingElement)> = Vec::new();
    for l in 1..=n as u32 {
        for a in CurveLetter::basis(ctx.genus()) {
            let pa = RingElement::pullback(ctx, 1, a)?;
            let x = psi_pullback(engine, &WeightVector::unit(n, 1, l), &pa, InvariantMode::Strict)?.value;
            gens.push((2 * l + a.degree(), x));
        }
    }
    for a in invariant_curve_basis(ctx, &Perm::all(n), 2 * ctx.factors() as u32) {
        if let Degree::Homogeneous(d) = a.degree() {
            if d > 0 {
                gens.push((d, a));
            }
        }
    }
    let mut bases: Vec<Vec<RingElement>> = vec![vec![RingElement::one(ctx)]];
    let mut report = vec![DegreeRank {
        degree: 0,
        span_rank: 1,
        expected: invariant_dimension(ctx, 0),
    }];
    for d in 1..=max_degree {
        let mut products = Vec::new();
        for (k, g) in &gens {
            if *k <= d {
                for b in &bases[(d - k) as usize] {
                    let p = g * b;
                    if !p.is_zero() {
                        products.push(p);
                    }
                }
            }
        }
        let basis = independent_subset(products);
        report.push(DegreeRank {
            degree: d,
            span_rank: basis.len(),
            expected: invariant_dimension(ctx, d),
        });
        bases.push(basis);
    }
    Ok(report)
}

/// `span_rank` of all pullback classes against `invariant_dimension`, degree
/// by degree.
pub fn rank_equality_check(engine: &XiEngine, max_degree: u32) -> Result<Vec<DegreeRank>> {
    let ctx = engine.ctx();
    let classes = pullback_classes(engine, None, max_degree)?;
    (0..=max_degree)
        .map(|d| {
            Ok(DegreeRank {
                degree: d,
                span_rank: span_rank(&classes, d)?,
                expected: invariant_dimension(ctx, d),
            })
        })
        .collect()
}
