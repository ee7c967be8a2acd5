use crate::error::{Error, Result};
use crate::graded::{int, inv_factorial, odd, one, ratio, sign, Scalar};
use crate::ooperators::check_ooperator;
use crate::sym::{rn_bracket, LinearFamily};
use crate::verdict::{Verdict, Witness};
use crate::voronov::{lprime_bracket, HElement, LPrimeElement, VData};

/// An element `(x, a)` of `𝔏′[1] ⊕ 𝔥`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairElement {
    pub x: LPrimeElement,
    pub a: HElement,
}

/// `q₁^Δ(x, a) = (-[Δ,x]_RN, ∂₁a)`; `P(x)` vanishes on `𝔏′`.
pub fn q1(data: &VData, p: &PairElement) -> Result<PairElement> {
    let w = data.bounds().max_weight;
    let x = lprime_bracket(data.delta(), &p.x, w)?.scaled(&-one());
    let a = data.derived_bracket(&[&p.a])?;
    Ok(PairElement { x, a })
}

/// `q₂^Δ(x, x′) = (-1)^{deg x} [x,x′]_RN`.
pub fn q2_lprime(data: &VData, x: &LPrimeElement, x_prime: &LPrimeElement) -> Result<LPrimeElement> {
    let b = lprime_bracket(x, x_prime, data.bounds().max_weight)?;
    Ok(b.scaled(&sign(odd(x.degree()))))
}

/// `q_k^Δ(x, a₁,…,a_{k-1}) = P([…[x,a₁]_RN…,a_{k-1}]_RN)` for `k ≥ 2`.
pub fn q_mixed(data: &VData, x: &LPrimeElement, args: &[&HElement]) -> Result<HElement> {
    if args.is_empty() {
        return Err(Error::malformed("the mixed bracket needs at least one 𝔥 argument"));
    }
    Ok(data.project(&data.nested(&x.ambient(), args)?))
}

/// The two components of a Maurer–Cartan expression, with a verdict.
#[derive(Clone, Debug)]
pub struct PairCurvature {
    pub lprime: LPrimeElement,
    pub h: HElement,
    pub verdict: Verdict,
}

fn curvature_verdict(check: &str, data: &VData, lprime: &LPrimeElement, h: &HElement) -> Verdict {
    let bounds = data.bounds();
    let sum = data.sum();
    let l_part = lprime.ambient();
    let witness = l_part
        .terms()
        .next()
        .map(|(m, v)| Witness {
            monomial: m.display(sum.sum()),
            weight: m.weight(),
            lhs: v.display(sum.sum()),
            rhs: "0".into(),
        })
        .or_else(|| {
            h.family().terms().next().map(|(m, v)| Witness {
                monomial: m.display(sum.v()),
                weight: m.weight(),
                lhs: v.display(sum.e()),
                rhs: "0".into(),
            })
        });
    Verdict::from_witness(check, bounds, witness)
}

fn check_pair_degrees(p: &PairElement) -> Result<()> {
    if !p.x.is_zero() && p.x.degree() != 1 {
        return Err(Error::DegreeMismatch {
            key: "𝔏′ component".into(),
            expected: 1,
            found: p.x.degree(),
        });
    }
    if !p.a.is_zero() && p.a.degree() != 0 {
        return Err(Error::DegreeMismatch {
            key: "𝔥 component".into(),
            expected: 0,
            found: p.a.degree(),
        });
    }
    Ok(())
}

/// `G[i][k] = […[x, t,…,t (i times), t′,…,t′ (k times)]`, for `i + k ≤ n`.
/// Elements of `𝔥` commute, so the order of the arguments is immaterial.
fn grid(data: &VData, x: &LinearFamily, t: &HElement, t_prime: &HElement, n: usize) -> Result<Vec<Vec<LinearFamily>>> {
    let w = data.bounds().max_weight;
    let (lt, ltp) = (t.lift(), t_prime.lift());
    let mut g: Vec<Vec<LinearFamily>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = Vec::with_capacity(n + 1 - i);
        row.push(if i == 0 {
            x.truncated(w)
        } else {
            rn_bracket(&g[i - 1][0], &lt, w)?
        });
        for k in 1..=n - i {
            let next = rn_bracket(&row[k - 1], &ltp, w)?;
            row.push(next);
        }
        g.push(row);
    }
    Ok(g)
}

/// `Σ_{k≥1} Σ_{i≥0} 1/(k! i!) q_{k+i}(z,…,z, w,…,w)` for degree zero
/// elements `z` (`i` times) and `w` (`k` times) of `(𝔏′[1]⊕𝔥)_Δ`, each
/// `q_n` expanded by multilinearity into the displayed brackets. With
/// `z = 0` this is the Maurer–Cartan expression of `w`; otherwise it is
/// that of `w` in the structure twisted by `z`.
fn twisted_curvature(data: &VData, z: &PairElement, w: &PairElement) -> Result<(LPrimeElement, HElement)> {
    check_pair_degrees(z)?;
    check_pair_degrees(w)?;
    let n = data.bounds().max_weight;
    let (xz, xw) = (&z.x, &w.x);
    let mut lp = q1(data, w)?.x;
    lp = lp.add(&q2_lprime(data, xz, xw)?)?;
    lp = lp.add(&q2_lprime(data, xw, xw)?.scaled(&ratio(1, 2)))?;

    let (t, tp) = (&z.a, &w.a);
    let gd = grid(data, &data.delta().ambient(), t, tp, n)?;
    let gz = if xz == data.delta() { None } else { Some(grid(data, &xz.ambient(), t, tp, n - 1)?) };
    let gw = if xw == data.delta() { None } else { Some(grid(data, &xw.ambient(), t, tp, n - 1)?) };
    let (gz, gw) = (gz.as_ref().unwrap_or(&gd), gw.as_ref().unwrap_or(&gd));
    let sum = data.sum();
    let mut h = LinearFamily::new(sum.v().clone(), sum.e().clone(), 1);
    for total in 1..=n {
        for k in 1..=total {
            let i = total - k;
            let c = inv_factorial(k) * inv_factorial(i);
            // ∂_n(t^i, t′^k)
            h.add_scaled(data.project(&gd[i][k]).family(), &c)?;
            if total >= 2 {
                if i >= 1 {
                    let ci: Scalar = &c * int(i as i64);
                    h.add_scaled(data.project(&gz[i - 1][k]).family(), &ci)?;
                }
                let ck: Scalar = &c * int(k as i64);
                h.add_scaled(data.project(&gw[i][k - 1]).family(), &ck)?;
            }
        }
    }
    Ok((lp, data.element(h)?))
}

/// The Maurer–Cartan expression of `(x, a)` in `(𝔏′[1]⊕𝔥)_Δ`.
pub fn pair_curvature(data: &VData, p: &PairElement) -> Result<PairCurvature> {
    let zero = PairElement {
        x: LPrimeElement::zero(data.sum(), 1),
        a: HElement::zero(data.sum(), 0),
    };
    let (lprime, h) = twisted_curvature(data, &zero, p)?;
    let verdict = curvature_verdict("pair-mc", data, &lprime, &h);
    Ok(PairCurvature { lprime, h, verdict })
}

/// Outcome of [`deformation_check`].
#[derive(Clone, Debug)]
pub struct DeformationCheck {
    /// Whether `(Δ, t′)` is Maurer–Cartan in the structure twisted by
    /// `(Δ, t)`. Parts: `base` (`T` is an O-operator) and `perturbed` (the
    /// comorphism of `t + t′` is one).
    pub verdict: Verdict,
    /// `verdict.pass` equals the `perturbed` outcome.
    pub agree: bool,
}

/// When `T` is an O-operator, `T + T′` (the comorphism of `t + t′`) is one
/// iff `(Δ, t′)` is Maurer–Cartan in `(𝔏′[1]⊕𝔥)_Δ` twisted by `(Δ, t)`.
pub fn deformation_check(data: &VData, t: &HElement, t_prime: &HElement) -> Result<DeformationCheck> {
    let bounds = data.bounds();
    let z = PairElement {
        x: data.delta().clone(),
        a: t.clone(),
    };
    let w = PairElement {
        x: data.delta().clone(),
        a: t_prime.clone(),
    };
    let (lprime, h) = twisted_curvature(data, &z, &w)?;
    let twisted = curvature_verdict("deformation", data, &lprime, &h);
    let mut base = check_ooperator(t.family(), data.action(), bounds)?;
    base.check = "base".into();
    let mut perturbed = check_ooperator(t.add(t_prime)?.family(), data.action(), bounds)?;
    perturbed.check = "perturbed".into();
    let agree = twisted.pass == perturbed.pass;
    Ok(DeformationCheck {
        verdict: twisted.with_part(base).with_part(perturbed),
        agree,
    })
}
