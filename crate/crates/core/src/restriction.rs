//! Restriction of equivariant classes to torus-fixed components.

use crate::algebra::RingElement;
use crate::combinatorics::{Perm, WeightVector};
use crate::xi::XiEngine;
use crate::{Error, Result};

/// Substitutes `ω_i ↦ t_{w_i} − Σ_{k<i, w_k=w_i} Δ_{k,i} + d_{w_i}·pt_i`.
pub fn restrict(x: &RingElement, w: &WeightVector) -> Result<RingElement> {
    let ctx = x.ctx();
    if !ctx.rank().is_equivariant() {
        return Err(Error::NotEquivariant);
    }
    ctx.check_weight(w.entries())?;
    let n = ctx.factors();
    let mut images = Vec::with_capacity(n);
    for i in 1..=n {
        let wi = w.entries()[i - 1];
        let mut img = RingElement::t(ctx, wi)?;
        for k in 1..i {
            if w.entries()[k - 1] == wi {
                img = img - RingElement::diagonal(ctx, k, i)?;
            }
        }
        let d = ctx.degree_of(wi);
        if d != 0 {
            img = img + RingElement::point(ctx, i)?.scale_int(d);
        }
        images.push(img);
    }
    x.substitute_omega(&images)
}

/// Largest total t-degree, `None` for zero.
pub fn t_degree(f: &RingElement) -> Option<u32> {
    f.terms().map(|(m, _)| m.t_degree()).max()
}

/// The terms of maximal t-degree.
pub fn top_term(f: &RingElement) -> RingElement {
    match t_degree(f) {
        None => f.clone(),
        Some(d) => f.filter(|m| m.t_degree() == d),
    }
}

/// `Π_j Π_{i=0}^{v_j−1} (t_{w_j} − t_i)`.
pub fn top_term_product(engine: &XiEngine, v: &WeightVector, w: &WeightVector) -> Result<RingElement> {
    let ctx = engine.ctx();
    let mut out = RingElement::one(ctx);
    for (&vj, &wj) in v.entries().iter().zip(w.entries()) {
        for i in 0..vj {
            out = out * (RingElement::t(ctx, wj)? - RingElement::t(ctx, i)?);
        }
    }
    Ok(out)
}

fn restricted_xi(engine: &XiEngine, v: &WeightVector, w: &WeightVector) -> Result<RingElement> {
    if !engine.ctx().has_trivial_degrees() {
        return Err(Error::precondition("localization checks need trivial degrees"));
    }
    restrict(&engine.xi_equivariant(v)?, w)
}

/// For `w ≥₀ v`: `[ξ(v)^w]` minus the product formula.
pub fn check_top_term(engine: &XiEngine, v: &WeightVector, w: &WeightVector) -> Result<RingElement> {
    if !v.leq0(w) {
        return Err(Error::precondition(format!("needs {w} ≥₀ {v}")));
    }
    let f = restricted_xi(engine, v, w)?;
    Ok(top_term(&f) - top_term_product(engine, v, w)?)
}

/// `deg_t ξ(v)^w = co(v)` implies `w ≥₀ v`.
pub fn check_top_term_converse(engine: &XiEngine, v: &WeightVector, w: &WeightVector) -> Result<bool> {
    let f = restricted_xi(engine, v, w)?;
    Ok(t_degree(&f) != Some(v.co()) || v.leq0(w))
}

/// If no `σ` has `σ(v) ≤₀ w`, then `ξ(v)^w = 0`.
pub fn check_vanishing(engine: &XiEngine, v: &WeightVector, w: &WeightVector) -> Result<bool> {
    let f = restricted_xi(engine, v, w)?;
    let reachable = Perm::all(v.len()).iter().any(|s| v.permuted(s).leq0(w));
    Ok(reachable || f.is_zero())
}

/// For `w = σ(v)`: `deg_t ξ(v)^w ≤ co(v) − |I| + 1`, `I = {i : v_i ≠ w_i}`.
pub fn check_degree_bound(engine: &XiEngine, v: &WeightVector, sigma: &Perm) -> Result<bool> {
    let w = v.permuted(sigma);
    let f = restricted_xi(engine, v, &w)?;
    let moved = v.entries().iter().zip(w.entries()).filter(|(a, b)| a != b).count() as i64;
    Ok(t_degree(&f).is_none_or(|d| d as i64 <= v.co() as i64 - moved + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse, Rank, RingContext};

    fn w(v: &[u32]) -> WeightVector {
        WeightVector(v.to_vec())
    }

    #[test]
    fn single_factor_examples() {
        let ctx = RingContext::with(0, 1, Rank::Finite(4), vec![]).unwrap();
        let e = XiEngine::new(&ctx);
        let xi = e.xi_equivariant(&w(&[2])).unwrap();
        let t = |i| RingElement::t(&ctx, i).unwrap();
        assert_eq!(restrict(&xi, &w(&[3])).unwrap(), (t(3) - t(0)) * (t(3) - t(1)));
        assert!(restrict(&xi, &w(&[1])).unwrap().is_zero());
        assert_eq!(restrict(&RingElement::one(&ctx), &w(&[2])).unwrap(), RingElement::one(&ctx));
        assert!(check_vanishing(&e, &w(&[2]), &w(&[1])).unwrap());
        assert!(check_top_term(&e, &w(&[2]), &w(&[2])).unwrap().is_zero());
        assert!(restrict(&xi, &w(&[4])).is_err());
    }

    #[test]
    fn top_term_examples() {
        let ctx = RingContext::with(0, 2, Rank::Finite(3), vec![]).unwrap();
        let f = parse(&ctx, "1 * [one|one] t^(2,0,0) + 1 * [pt|one] t^(0,1,0) + 1 * [one|pt] t^(0,1,0)").unwrap();
        assert_eq!(t_degree(&f), Some(2));
        assert_eq!(top_term(&f), parse(&ctx, "1 * [one|one] t^(2,0,0)").unwrap());
        assert!(top_term(&RingElement::zero(&ctx)).is_zero());
        assert_eq!(t_degree(&RingElement::zero(&ctx)), None);
        let e = XiEngine::new(&ctx);
        assert!(check_top_term(&e, &w(&[0, 1]), &w(&[1, 2])).unwrap().is_zero());
        let top = top_term(&restrict(&e.xi_equivariant(&w(&[0, 1])).unwrap(), &w(&[1, 2])).unwrap());
        assert_eq!(top, RingElement::t(&ctx, 2).unwrap() - RingElement::t(&ctx, 0).unwrap());
        assert!(check_top_term(&e, &w(&[0, 0]), &w(&[2, 1])).unwrap().is_zero());
        assert!(check_degree_bound(&e, &w(&[0, 1]), &Perm::transposition(2, 0, 1)).unwrap());
    }

    #[test]
    fn restriction_is_multiplicative() {
        let ctx = RingContext::with(1, 2, Rank::Finite(2), vec![1, -2]).unwrap();
        let x = parse(&ctx, "1 * [a1|one] w^(1,1) + 2 * [one|one] w^(0,1) t^(1,0)").unwrap();
        let y = parse(&ctx, "1 * [one|b1] w^(2,0) + -1 * [pt|one]").unwrap();
        for v in WeightVector::all_below(2, 2) {
            assert_eq!(restrict(&(&x * &y), &v).unwrap(), restrict(&x, &v).unwrap() * restrict(&y, &v).unwrap());
        }
    }
}
