// Heuristic multivariate polynomial gcd (evaluate at a large integer, take
// the gcd recursively, reconstruct by symmetric xi-adic expansion, verify by
// exact division). When verification fails the routine gives up and returns
// None; callers then simply skip cancellation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::{LaurentPoly, Monomial, VarId};

// Past this many bits in an evaluation point the heuristic is abandoned.
const MAX_XI_BITS: u64 = 4096;
const ATTEMPTS: usize = 6;

/// Gcd of two Laurent polynomials up to units (signed monomials).
///
/// Returns a polynomial with nonnegative exponents, no monomial content and
/// positive leading coefficient, or `None` if the heuristic fails.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if a.is_zero() {
        return Some(normalize(b));
    }
    if b.is_zero() {
        return Some(normalize(a));
    }
    let a = a.mul_monomial(&a.monomial_content().inv());
    let b = b.mul_monomial(&b.monomial_content().inv());
    if a.len() == 1 || b.len() == 1 {
        let g = a.content().gcd(&b.content());
        return Some(LaurentPoly::constant(g));
    }
    let mut vars = a.variables();
    vars.extend(b.variables());
    vars.sort();
    vars.dedup();
    let g = heu(&a, &b, &vars)?;
    Some(normalize(&g))
}

fn normalize(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let p = p.mul_monomial(&p.monomial_content().inv());
    if p.leading_sign() < 0 {
        p.neg()
    } else {
        p
    }
}

fn heu(a: &LaurentPoly, b: &LaurentPoly, vars: &[VarId]) -> Option<LaurentPoly> {
    if a.is_zero() {
        return Some(b.clone());
    }
    if b.is_zero() {
        return Some(a.clone());
    }
    let (Some(x), rest) = pick_var(a, b, vars) else {
        let ca = a.as_constant()?;
        let cb = b.as_constant()?;
        return Some(LaurentPoly::constant(ca.gcd(&cb)));
    };
    let ma = a.max_abs_coefficient();
    let mb = b.max_abs_coefficient();
    let mut xi: BigInt = ma.min(mb) * 2 + 2;
    for _ in 0..ATTEMPTS {
        if xi.bits() > MAX_XI_BITS {
            return None;
        }
        let ae = a.eval_var_int(x, &xi);
        let be = b.eval_var_int(x, &xi);
        if let Some(gamma) = heu(&ae, &be, &rest) {
            let g = reconstruct(&gamma, &xi, x);
            if !g.is_zero() {
                let g = primitive(&g);
                if a.exact_div(&g).is_some() && b.exact_div(&g).is_some() {
                    // restore integer content
                    let c = a.content().gcd(&b.content());
                    return Some(g.scale(&c));
                }
            }
        }
        // golden-ratio style growth recommended for this heuristic
        xi = (xi * BigInt::from(73794)) / BigInt::from(27011);
    }
    None
}

fn pick_var(a: &LaurentPoly, b: &LaurentPoly, vars: &[VarId]) -> (Option<VarId>, Vec<VarId>) {
    let mut rest = Vec::new();
    let mut chosen = None;
    for &v in vars {
        let used = a.max_degree(v).unwrap_or(0) > 0 || b.max_degree(v).unwrap_or(0) > 0;
        if !used {
            continue;
        }
        if chosen.is_none() {
            chosen = Some(v);
        } else {
            rest.push(v);
        }
    }
    (chosen, rest)
}

fn primitive(p: &LaurentPoly) -> LaurentPoly {
    let c = p.content();
    let q = if c.is_one() || c.is_zero() {
        p.clone()
    } else {
        p.exact_div_scalar(&c)
    };
    if q.leading_sign() < 0 {
        q.neg()
    } else {
        q
    }
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

// Symmetric xi-adic expansion of gamma in the variable x.
fn reconstruct(gamma: &LaurentPoly, xi: &BigInt, x: VarId) -> LaurentPoly {
    let mut out: Vec<(Monomial, BigInt)> = Vec::new();
    let mut cur = gamma.clone();
    let mut i = 0i32;
    while !cur.is_zero() {
        let digit = cur.map_coefficients(|c| sym_mod(c, xi));
        for (m, c) in digit.terms() {
            out.push((m.mul(&Monomial::var_pow(x, i)), c.clone()));
        }
        cur = cur.sub(&digit).map_coefficients(|c| c / xi);
        i += 1;
        if i > 100_000 {
            break;
        }
    }
    LaurentPoly::from_terms(out)
}
