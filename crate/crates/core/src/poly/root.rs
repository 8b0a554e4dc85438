//! `mu`-th roots of forms over `F_q` and over `W_2(F_q)`.
//!
//! Over `F_q` a root is found in an affine chart `x_j = 1` where `f` has the
//! pure power `x_j^d`: the dehomogenized root is determined degree by degree
//! from `g_0 = c^(1/mu)` since `mu * g_0^(mu-1)` is invertible when `p` does
//! not divide `mu`. Forms with no such chart fall back to leading-term
//! extraction in lex order. Every candidate is verified by re-multiplication.

use crate::arith;
use crate::field::{Field, Fq};
use crate::witt::Witt2;

use super::{Form, PolyError};

/// Result of [`max_divisibility`]: `witness^mu = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub mu: u64,
    pub witness: Form<Field>,
}

/// A lifted root `root = tau(base) + p * correction` with `root^mu = s~`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittRoot {
    pub root: Form<Witt2>,
    pub base: Form<Field>,
    pub correction: Form<Field>,
    /// Root of unity applied to the reduced root before lifting.
    pub zeta: Fq,
}

fn check_mu(field: &Field, mu: u64) -> Result<(), PolyError> {
    if mu == 0 || mu % field.p() as u64 == 0 {
        return Err(PolyError::MuDivisibleByP { mu, p: field.p() });
    }
    Ok(())
}

/// `g` with `g^mu = f`, normalized so the lex-leading coefficient of `g` is
/// the smallest `mu`-th root of that of `f`; `None` when no root exists.
pub fn mu_th_root_form(f: &Form<Field>, mu: u64) -> Result<Option<Form<Field>>, PolyError> {
    let k = f.ring();
    check_mu(k, mu)?;
    let d = f.degree() as u64;
    if d % mu != 0 {
        return Ok(None);
    }
    let root_degree = (d / mu) as u32;
    if f.is_zero() {
        return Ok(Some(Form::zero(k, f.num_vars(), root_degree)));
    }
    if mu == 1 {
        return Ok(Some(f.clone()));
    }
    let chart = (0..f.num_vars()).find(|&j| {
        let mut e = vec![0; f.num_vars()];
        e[j] = f.degree();
        !f.coeff(&e).is_zero()
    });
    let candidate = match chart {
        Some(j) => chart_root(f, mu, j)?,
        None => leading_term_root(f, mu)?,
    };
    let Some(g) = candidate else {
        return Ok(None);
    };
    if g.pow(mu as u32) != *f {
        return Ok(None);
    }
    let lc_f = f.lead_coeff().expect("nonzero");
    let target = k.mu_power_root(lc_f, mu)?.expect("lc(g)^mu = lc(f)");
    let lc_g = g.lead_coeff().expect("nonzero");
    Ok(Some(g.scalar_mul(k.div(target, lc_g)?)))
}

/// Truncated product of graded series (index = degree in the chart variables).
fn series_mul(a: &[Form<Field>], b: &[Form<Field>], max_degree: usize) -> Vec<Form<Field>> {
    let k = a[0].ring();
    let nv = a[0].num_vars();
    (0..=max_degree)
        .map(|deg| {
            let mut acc = Form::zero(k, nv, deg as u32);
            for i in 0..=deg {
                if let (Some(x), Some(y)) = (a.get(i), b.get(deg - i)) {
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y).expect("same ring")).expect("same degree");
                    }
                }
            }
            acc.with_degree(deg as u32)
        })
        .collect()
}

fn chart_root(f: &Form<Field>, mu: u64, j: usize) -> Result<Option<Form<Field>>, PolyError> {
    let k = f.ring();
    let nv = f.num_vars();
    let d = f.degree() as usize;
    let root_degree = d / mu as usize;
    let drop_j = |e: &[u32]| -> Vec<u32> { e.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &x)| x).collect() };

    let mut components: Vec<Form<Field>> = (0..=d).map(|deg| Form::zero(k, nv - 1, deg as u32)).collect();
    for (e, c) in f.terms() {
        let deg = d - e[j] as usize;
        components[deg].add_term(drop_j(e), *c);
    }
    let c0 = components[0].coeff(&vec![0; nv - 1]);
    let Some(b) = k.mu_power_root(c0, mu)? else {
        return Ok(None);
    };
    let denom = k.mul(k.from_int((mu % k.p() as u64) as i64), k.pow(b, mu - 1));
    let denom_inv = k.inv(denom)?;

    let mut g: Vec<Form<Field>> = vec![Form::constant(k, nv - 1, b)];
    for deg in 1..=root_degree {
        // [ (g_0 + ... + g_{deg-1})^mu ]_deg
        let mut power = g.clone();
        for _ in 1..mu {
            power = series_mul(&power, &g, deg);
        }
        let known = power.get(deg).cloned().unwrap_or_else(|| Form::zero(k, nv - 1, deg as u32));
        let next = components[deg].sub(&known)?.scalar_mul(denom_inv).with_degree(deg as u32);
        g.push(next);
    }

    let mut out = Form::zero(k, nv, root_degree as u32);
    for (deg, comp) in g.iter().enumerate() {
        for (e, c) in comp.terms() {
            let mut full = Vec::with_capacity(nv);
            full.extend_from_slice(&e[..j]);
            full.push((root_degree - deg) as u32);
            full.extend_from_slice(&e[j..]);
            out.add_term(full, *c);
        }
    }
    Ok(Some(out))
}

fn leading_term_root(f: &Form<Field>, mu: u64) -> Result<Option<Form<Field>>, PolyError> {
    let k = f.ring();
    let (lead_e, lead_c) = f.leading_term().expect("nonzero");
    if lead_e.iter().any(|&x| x as u64 % mu != 0) {
        return Ok(None);
    }
    let Some(b) = k.mu_power_root(lead_c, mu)? else {
        return Ok(None);
    };
    let root_lead: Vec<u32> = lead_e.iter().map(|&x| x / mu as u32).collect();
    let shift: Vec<u32> = root_lead.iter().map(|&x| x * (mu as u32 - 1)).collect();
    let denom_inv = k.inv(k.mul(k.from_int((mu % k.p() as u64) as i64), k.pow(b, mu - 1)))?;

    let mut g = Form::monomial(k, root_lead.clone(), b);
    let mut last = root_lead;
    loop {
        let rem = f.sub(&g.pow(mu as u32))?;
        let Some((e, c)) = rem.leading_term() else {
            return Ok(Some(g));
        };
        if e.iter().zip(&shift).any(|(a, s)| a < s) {
            return Ok(None);
        }
        let next: Vec<u32> = e.iter().zip(&shift).map(|(a, s)| a - s).collect();
        if next >= last {
            return Ok(None);
        }
        g.add_term(next.clone(), k.mul(c, denom_inv));
        last = next;
    }
}

/// Largest `mu | n` for which `f` is a `mu`-th power, with a witness.
pub fn max_divisibility(f: &Form<Field>, n: u64) -> Result<Divisibility, PolyError> {
    let k = f.ring();
    if n == 0 || n % k.p() as u64 == 0 {
        return Err(PolyError::NDivisibleByP { n, p: k.p() });
    }
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for mu in arith::divisors(n).into_iter().rev() {
        if let Some(witness) = mu_th_root_form(f, mu)? {
            return Ok(Divisibility { mu, witness });
        }
    }
    unreachable!("mu = 1 always succeeds")
}

/// Decides whether `s~ = t~^mu` for some form `t~` over `W_2`.
///
/// With `t = s^(1/mu)` over `F_q`, write `s~ = tau(zeta t)^mu + p e` for each
/// `mu`-th root of unity `zeta`; a lift `tau(zeta t) + p w` works exactly when
/// `mu (zeta t)^(mu-1) w = e`, which is decided by exact division.
pub fn witt_mu_th_root(s: &Form<Witt2>, mu: u64) -> Result<Option<WittRoot>, PolyError> {
    let w = s.ring().clone();
    let k = w.field().clone();
    check_mu(&k, mu)?;
    let base = s.reduce();
    if mu == 1 {
        let (b, c) = s.split();
        return Ok(Some(WittRoot { root: s.clone(), base: b, correction: c, zeta: Fq::ONE }));
    }
    let Some(t) = mu_th_root_form(&base, mu)? else {
        return Ok(None);
    };
    let mu_elem = k.from_int((mu % k.p() as u64) as i64);
    for zeta in k.roots_of_unity(mu) {
        let tz = t.scalar_mul(zeta);
        let lifted = tz.teichmuller(&w);
        let e = s.sub(&lifted.pow(mu as u32))?.divide_by_p()?.with_degree(s.degree());
        let denom = tz.pow(mu as u32 - 1).scalar_mul(mu_elem);
        let quotient = if denom.is_zero() {
            // t = 0: only the zero section has a root
            e.is_zero().then(|| Form::zero(&k, s.num_vars(), tz.degree()))
        } else {
            e.divide_exact(&denom)?
        };
        let Some(correction) = quotient else {
            continue;
        };
        let correction = correction.with_degree(tz.degree());
        let root = lifted.add(&correction.times_p(&w))?;
        if root.pow(mu as u32) == *s {
            return Ok(Some(WittRoot { root, base: tz, correction, zeta }));
        }
    }
    Ok(None)
}
