//! The fixed-point classes `ξ(v)` and identities among them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::algebra::{Coeff, RingContext, RingElement};
use crate::combinatorics::{Perm, WeightVector};
use crate::{Error, Result};

/// Computes `ξ(v)` by the last-coordinate recursion, with a shared cache.
///
/// The cache is keyed by `(equivariant, v)`; one engine serves one context.
#[derive(Debug)]
pub struct XiEngine {
    ctx: Arc<RingContext>,
    cache: Mutex<HashMap<(bool, WeightVector), RingElement>>,
}

impl XiEngine {
    pub fn new(ctx: &Arc<RingContext>) -> Self {
        XiEngine {
            ctx: ctx.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    /// Non-equivariant `ξ(v)`.
    pub fn xi(&self, v: &WeightVector) -> Result<RingElement> {
        self.ctx.check_weight(v.entries())?;
        Ok(self.compute(v, false))
    }

    /// Equivariant `ξ(v)`; needs a positive rank.
    pub fn xi_equivariant(&self, v: &WeightVector) -> Result<RingElement> {
        if !self.ctx.rank().is_equivariant() {
            return Err(Error::NotEquivariant);
        }
        self.ctx.check_weight(v.entries())?;
        Ok(self.compute(v, true))
    }

    fn compute(&self, v: &WeightVector, equivariant: bool) -> RingElement {
        let key = (equivariant, v.clone());
        if let Some(x) = self.cache.lock().unwrap().get(&key) {
            return x.clone();
        }
        let ctx = &self.ctx;
        let result = match v.last_nonzero() {
            None => RingElement::one(ctx),
            Some(j) => {
                let w = v.plus_unit(j, -1).expect("entry is positive");
                let wj = w.entries()[j - 1];
                let step = self.step_factor(j, wj, equivariant);
                let mut out = &step * &self.compute(&w, equivariant);
                for k in 1..j {
                    if w.entries()[k - 1] <= wj {
                        let d = RingElement::diagonal(ctx, k, j).expect("indices in range");
                        out = out + &d * &self.compute(&w.swapped(k, j), equivariant);
                    }
                }
                out
            }
        };
        self.cache.lock().unwrap().insert(key, result.clone());
        result
    }

    /// `ω_j − d_α·pt_j` and, equivariantly, `− t_α`.
    fn step_factor(&self, j: usize, alpha: u32, equivariant: bool) -> RingElement {
        let ctx = &self.ctx;
        let mut f = RingElement::omega(ctx, j).expect("index in range");
        let d = ctx.degree_of(alpha);
        if d != 0 {
            f = f - RingElement::point(ctx, j).unwrap().scale_int(d);
        }
        if equivariant {
            f = f - RingElement::t(ctx, alpha).expect("rank checked by caller");
        }
        f
    }

    /// `Σ_{σ∈S_n} ξ(σv)·σ(a)` for an ω-free, t-free `a`.
    pub fn sym_xi(&self, v: &WeightVector, a: &RingElement) -> Result<RingElement> {
        check_curve_class(a)?;
        let mut out = RingElement::zero(&self.ctx);
        for sigma in Perm::all(self.ctx.factors()) {
            let x = self.xi(&v.permuted(&sigma))?;
            out = out + x * a.permute_factors(&sigma);
        }
        Ok(out)
    }

    /// Coefficients `a_v` (ω-free) with `x = Σ_v a_v·ξ(v)`, found by peeling
    /// off the top ω-degree layer.
    pub fn to_xi_basis(&self, x: &RingElement) -> Result<BTreeMap<WeightVector, RingElement>> {
        let mut rest = x.clone();
        let mut out: BTreeMap<WeightVector, RingElement> = BTreeMap::new();
        while let Some(top) = rest.omega_degree() {
            let layers = rest.omega_layers();
            for (e, c) in layers {
                if e.iter().map(|&x| x as u32).sum::<u32>() != top {
                    continue;
                }
                let v = WeightVector(e.iter().map(|&x| x as u32).collect());
                let xi = self.xi(&v)?;
                rest = rest - &c * &xi;
                let slot = out.entry(v).or_insert_with(|| RingElement::zero(&self.ctx));
                *slot = &*slot + &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `Σ_v a_v·ξ(v)`.
    pub fn from_xi_basis(&self, coeffs: &BTreeMap<WeightVector, RingElement>) -> Result<RingElement> {
        let mut out = RingElement::zero(&self.ctx);
        for (v, c) in coeffs {
            out = out + c * &self.xi(v)?;
        }
        Ok(out)
    }

    /// LHS − RHS of
    /// `(ω_m − Σ_{k<m, v_k=v_m} Δ_{k,m} − d_{v_m} pt_m [− t_{v_m}])·ξ(v)
    ///  = ξ(v+e_m) + H_{m,n}(v)·Δ_{m,n}·ξ(τ_{m,n}v)`, `H = [v_m < v_n]`.
    pub fn check_increment_lower_index(&self, v: &WeightVector, m: usize, equivariant: bool) -> Result<RingElement> {
        let n = self.ctx.factors();
        if v.len() != n || n == 0 || v.entries()[n - 1] == 0 {
            return Err(Error::precondition("needs v_n ≥ 1"));
        }
        if m == 0 || m >= n {
            return Err(Error::precondition(format!("needs 1 ≤ m < n, got m = {m}")));
        }
        let ctx = &self.ctx;
        let xi = |w: &WeightVector| if equivariant { self.xi_equivariant(w) } else { self.xi(w) };
        let vm = v.entries()[m - 1];
        let mut factor = self.step_factor(m, vm, equivariant);
        for k in 1..m {
            if v.entries()[k - 1] == vm {
                factor = factor - RingElement::diagonal(ctx, k, m)?;
            }
        }
        let lhs = &factor * &xi(v)?;
        let mut rhs = xi(&v.plus_unit(m, 1).unwrap())?;
        if vm < v.entries()[n - 1] {
            rhs = rhs + &RingElement::diagonal(ctx, m, n)? * &xi(&v.swapped(m, n))?;
        }
        Ok(lhs - rhs)
    }

    /// LHS − RHS of
    /// `(ω_m + Σ_{k<m, v_k=v_m} Δ_{k,m} − d_{v_m} pt_m [− t_{v_m}])·ξ(v)
    ///  = ξ(v+e_m) + Σ_{k>m, v_k>v_m} Δ_{m,k} ξ(τ_{m,k}v) − Σ_{k<m, v_k<v_m} Δ_{k,m} ξ(τ_{k,m}v)`
    /// for any `1 ≤ m ≤ n`. At `m = n` this is the defining recursion.
    pub fn check_increment_any_index(&self, v: &WeightVector, m: usize, equivariant: bool) -> Result<RingElement> {
        let n = self.ctx.factors();
        if v.len() != n {
            return Err(Error::precondition("weight length differs from factor count"));
        }
        self.ctx.check_factor(m)?;
        let ctx = &self.ctx;
        let xi = |w: &WeightVector| if equivariant { self.xi_equivariant(w) } else { self.xi(w) };
        let e = v.entries();
        let vm = e[m - 1];
        let mut factor = self.step_factor(m, vm, equivariant);
        for k in 1..m {
            if e[k - 1] == vm {
                factor = factor + RingElement::diagonal(ctx, k, m)?;
            }
        }
        let mut residual = &factor * &xi(v)? - xi(&v.plus_unit(m, 1).unwrap())?;
        for k in 1..=n {
            if k > m && e[k - 1] > vm {
                residual = residual - &RingElement::diagonal(ctx, m, k)? * &xi(&v.swapped(m, k))?;
            } else if k < m && e[k - 1] < vm {
                residual = residual + &RingElement::diagonal(ctx, k, m)? * &xi(&v.swapped(k, m))?;
            }
        }
        Ok(residual)
    }

    /// Residual of the module recursion
    /// `ξ(u+l e_n)·a = ω_n ξ(u+(l−1)e_n)·a + Σ_{k<n, u_k≤l−1} Δ_{n,k} ξ(τ_{n,k}(u+(l−1)e_n))·τ_{n,k}(a)`,
    /// with `u` given on the first `n − 1` slots.
    pub fn check_module_recursion(&self, u: &WeightVector, l: u32, a: &RingElement) -> Result<RingElement> {
        let ctx = &self.ctx;
        let n = ctx.factors();
        if u.len() + 1 != n {
            return Err(Error::precondition("u must have n − 1 entries"));
        }
        if l == 0 {
            return Err(Error::precondition("needs l ≥ 1"));
        }
        check_curve_class(a)?;
        let with_last = |x: u32| {
            let mut e = u.entries().to_vec();
            e.push(x);
            WeightVector(e)
        };
        let lower = with_last(l - 1);
        let lhs = &self.xi(&with_last(l))? * a;
        let mut rhs = &RingElement::omega(ctx, n)? * &(&self.xi(&lower)? * a);
        for k in 1..n {
            if u.entries()[k - 1] < l {
                let tau = Perm::transposition(n, k - 1, n - 1);
                let term = &RingElement::diagonal(ctx, k, n)? * &self.xi(&lower.swapped(k, n))?;
                rhs = rhs + term * a.permute_factors(&tau);
            }
        }
        Ok(lhs - rhs)
    }

    /// `[ξ(0), ξ(e_i), …, ξ(L·e_i)]` for 1-based `i`.
    pub fn pn_series(&self, i: usize, max_l: u32) -> Result<Vec<RingElement>> {
        self.ctx.check_factor(i)?;
        let n = self.ctx.factors();
        (0..=max_l).map(|l| self.xi(&WeightVector::unit(n, i, l))).collect()
    }

    /// Coefficients of `Σ_{J⊆[1,i−1]} Δ_{J∪{i}} t^{|J|} Π_{j∈J∪{i}} (1−ω_j t)^{-1}`
    /// up to `t^L`.
    pub fn pn_closed_form(&self, i: usize, max_l: u32) -> Result<Vec<RingElement>> {
        self.ctx.check_factor(i)?;
        let ctx = &self.ctx;
        let mut out = vec![RingElement::zero(ctx); max_l as usize + 1];
        for mask in 0u64..(1 << (i - 1)) {
            let mut set: Vec<usize> = (1..i).filter(|k| mask & (1 << (k - 1)) != 0).collect();
            set.push(i);
            let size = set.len() as u32 - 1;
            if size > max_l {
                continue;
            }
            let diag = RingElement::small_diagonal(ctx, &set)?;
            for l in size..=max_l {
                let h = complete_homogeneous(ctx, &set, l - size)?;
                out[l as usize] = &out[l as usize] + &(&diag * &h);
            }
        }
        Ok(out)
    }
}

/// `h_k(ω_J)`.
pub fn complete_homogeneous(ctx: &Arc<RingContext>, set: &[usize], k: u32) -> Result<RingElement> {
    fn go(
        ctx: &Arc<RingContext>,
        set: &[usize],
        k: u32,
        acc: RingElement,
        out: &mut RingElement,
    ) -> Result<()> {
        match set.split_first() {
            None => {
                if k == 0 {
                    *out = &*out + &acc;
                }
                Ok(())
            }
            Some((&i, rest)) if rest.is_empty() => {
                *out = &*out + &(&acc * &RingElement::omega(ctx, i)?.pow(k));
                Ok(())
            }
            Some((&i, rest)) => {
                let w = RingElement::omega(ctx, i)?;
                let mut cur = acc;
                for e in 0..=k {
                    go(ctx, rest, k - e, cur.clone(), out)?;
                    cur = &cur * &w;
                }
                Ok(())
            }
        }
    }
    let mut out = RingElement::zero(ctx);
    go(ctx, set, k, RingElement::one(ctx), &mut out)?;
    Ok(out)
}

pub(crate) fn check_curve_class(a: &RingElement) -> Result<()> {
    if a.is_omega_free() && a.is_t_free() {
        Ok(())
    } else {
        Err(Error::precondition("class must be free of ω and t"))
    }
}

/// `1/k` as a coefficient.
pub(crate) fn reciprocal(k: u64) -> Coeff {
    Coeff::new(1.into(), k.into())
}
