//! Maurer–Cartan elements and twisting.

use crate::error::{Error, Result};
use crate::graded::{inv_factorial, GradedSpace};
use crate::linfty::LieInfty;
use crate::sym::{monomials_up_to, LinearFamily, SymElement};

fn check_mc_candidate(space: &GradedSpace, z: &SymElement) -> Result<()> {
    for (m, _) in z.iter() {
        if m.weight() != 1 {
            return Err(Error::malformed("a Maurer–Cartan candidate is a linear element"));
        }
        if m.degree(space) != 0 {
            return Err(Error::DegreeMismatch {
                key: m.display(space),
                expected: 0,
                found: m.degree(space),
            });
        }
    }
    Ok(())
}

/// `z^{⊙k}` for `k = 0..=n` (index 0 is the unit).
fn powers(space: &GradedSpace, z: &SymElement, n: usize) -> Vec<SymElement> {
    let mut out = vec![SymElement::unit()];
    for k in 1..=n {
        let next = out[k - 1].mul(z, space);
        out.push(next);
    }
    out
}

/// `Σ_k 1/k! l_k(z,…,z)`; finite because `l` has finite support.
pub fn curvature(l: &LieInfty, z: &SymElement) -> Result<SymElement> {
    let space = l.space();
    check_mc_candidate(space, z)?;
    let n = l.brackets().max_arity();
    let mut out = SymElement::zero();
    for (k, zk) in powers(space, z, n).iter().enumerate().skip(1) {
        out.add_scaled(&l.brackets().eval(zk), &inv_factorial(k));
    }
    Ok(out)
}

pub fn is_maurer_cartan(l: &LieInfty, z: &SymElement) -> Result<bool> {
    Ok(curvature(l, z)?.is_zero())
}

/// `l^z_k(x) = Σ_{i≥0} 1/i! l_{k+i}(z,…,z,x)`. Does not require `z` to be
/// Maurer–Cartan; the result is a Lie ∞-structure when it is.
pub fn twist(l: &LieInfty, z: &SymElement) -> Result<LieInfty> {
    let space = l.space();
    check_mc_candidate(space, z)?;
    let n = l.brackets().max_arity();
    let zp = powers(space, z, n);
    let twisted = LinearFamily::tabulate(
        space.clone(),
        space.clone(),
        1,
        monomials_up_to(space, n),
        |x| {
            let xe = SymElement::monomial(x.clone(), crate::graded::one());
            let mut out = SymElement::zero();
            for (i, zi) in zp.iter().enumerate().take(n + 1 - x.weight()) {
                out.add_scaled(&l.brackets().eval(&zi.mul(&xe, space)), &inv_factorial(i));
            }
            out
        },
    );
    LieInfty::new(twisted)
}
