//! The named constants of the G₂ asymptotics, each computed from its closed
//! form and from an independent route through the expansions.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::closed_form::BEvaluator;
use crate::ball::{bits_for_digits, pi, sqrt3, PrecReal};
use crate::error::{Error, Result};
use crate::series::{int, parse_rational, rat};
use crate::sing::expand::expand_fg;
use crate::sing::psi::{bootstrap_from, sing_a_from};

fn i(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `ρ = 5π / (8575π - 15552√3)`.
pub fn rho_closed(prec: u32) -> PrecReal {
    let wp = prec + 32;
    let pi = pi(wp);
    let den = pi.mul_int(&i(8575)).sub(&sqrt3(wp).mul_int(&i(15552)));
    pi.mul_int(&i(5)).div(&den).with_prec(prec)
}

/// `λ = (852768√3 - 470155π) / (10π)`.
pub fn lambda_closed(prec: u32) -> PrecReal {
    let wp = prec + 32;
    let pi = pi(wp);
    let num = sqrt3(wp).mul_int(&i(852768)).sub(&pi.mul_int(&i(470155)));
    num.div(&pi.mul_int(&i(10))).with_prec(prec)
}

/// `K = 4117715√3 / (864π)`.
pub fn k_closed(prec: u32) -> PrecReal {
    let wp = prec + 32;
    sqrt3(wp).mul_int(&i(4117715)).div(&pi(wp).mul_int(&i(864))).with_prec(prec)
}

/// `M = (4√3 / (421875π)) ((8575π - 15552√3) / (2592√3 - 1429π))⁷`.
pub fn m_closed(prec: u32) -> PrecReal {
    let wp = prec + 64;
    let pi = pi(wp);
    let s3 = sqrt3(wp);
    let num = pi.mul_int(&i(8575)).sub(&s3.mul_int(&i(15552)));
    let den = s3.mul_int(&i(2592)).sub(&pi.mul_int(&i(1429)));
    let pre = s3.mul_int(&i(4)).div(&pi.mul_int(&i(421875)));
    pre.mul(&num.div(&den).powi(7)).with_prec(prec)
}

/// `y'(1/7) = 7/ρ + λ`.
pub fn yprime_closed(prec: u32) -> PrecReal {
    let wp = prec + 32;
    PrecReal::from_int(7, wp).div(&rho_closed(wp)).add(&lambda_closed(wp)).with_prec(prec)
}

/// `A'(1/ρ) = 7 - 49/(ρλ + 7)`.
pub fn aprime_closed(prec: u32) -> PrecReal {
    let wp = prec + 32;
    let d = rho_closed(wp).mul(&lambda_closed(wp)).add_rational(&int(7));
    PrecReal::from_int(7, wp).sub(&PrecReal::from_int(49, wp).div(&d)).with_prec(prec)
}

/// `C = 7⁵ K ρ / (6! (7 + ρλ)⁷)`.
pub fn c_closed(prec: u32) -> Result<PrecReal> {
    let wp = prec + 32;
    let rho = rho_closed(wp);
    let d = rho.mul(&lambda_closed(wp)).add_rational(&int(7));
    let v = k_closed(wp).mul(&rho).mul_int(&i(16807)).div(&d.powi(7).mul_int(&i(720)));
    crate::ball::require_finite(v.with_prec(prec), "C")
}

/// One certified constant.
#[derive(Clone, Debug)]
pub struct ConstantRecord {
    pub name: &'static str,
    pub value: PrecReal,
    pub closed_form: &'static str,
    /// The value from the second, independent route.
    pub alternate: PrecReal,
    pub alternate_route: &'static str,
    pub printed_approx: Option<&'static str>,
}

impl ConstantRecord {
    pub fn routes_agree(&self) -> bool {
        self.value.overlaps(&self.alternate)
    }

    pub fn matches_printed(&self) -> bool {
        self.printed_approx.is_none_or(|s| matches_printed(&self.value, s))
    }

    pub fn to_json(&self, sig: usize) -> ConstantJson {
        ConstantJson {
            name: self.name.to_string(),
            decimal_midpoint: self.value.to_decimal(sig),
            decimal_radius: self.value.radius_string(),
            closed_form: self.closed_form.to_string(),
            printed_approx: self.printed_approx.map(str::to_string),
            alternate_route: self.alternate_route.to_string(),
            alternate_midpoint: self.alternate.to_decimal(sig),
            alternate_radius: self.alternate.radius_string(),
            routes_agree: self.routes_agree(),
            matches_printed: self.matches_printed(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantJson {
    pub name: String,
    pub decimal_midpoint: String,
    pub decimal_radius: String,
    pub closed_form: String,
    pub printed_approx: Option<String>,
    pub alternate_route: String,
    pub alternate_midpoint: String,
    pub alternate_radius: String,
    pub routes_agree: bool,
    pub matches_printed: bool,
}

/// Whether a printed decimal is the value rounded or truncated to its
/// number of decimals. The ball must be narrow enough to decide.
pub fn matches_printed(value: &PrecReal, printed: &str) -> bool {
    let Ok(p) = parse_rational(printed) else { return false };
    let decimals = printed.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let ulp = rat(1, 10).pow(decimals);
    let (Some(lo), Some(hi)) = (value.lower(), value.upper()) else { return false };
    let half = &ulp / int(2);
    let rounded = lo >= &p - &half && hi < &p + &half;
    let truncated = if p.is_negative() { hi <= p && lo > &p - &ulp } else { lo >= p && hi < &p + &ulp };
    rounded || truncated
}

/// Computes every constant at `digits` decimal digits. `corrupt` names a
/// constant whose closed form is perturbed, to exercise the failure path.
pub fn constants_with(digits: u32, corrupt: Option<&str>) -> Result<Vec<ConstantRecord>> {
    if digits < 30 {
        return Err(Error::Usage(format!("constants need at least 30 digits, got {digits}")));
    }
    let prec = bits_for_digits(digits);
    let exp = expand_fg(10, digits + 10)?;
    let psi = bootstrap_from(&exp)?;
    let a_exp = sing_a_from(&psi)?;
    let ev = BEvaluator::new(digits)?;
    let b17 = ev.eval(&rat(1, 7))?;
    let f = &exp.f;

    let mut out = vec![
        ConstantRecord {
            name: "rho",
            value: rho_closed(prec),
            closed_form: "5π/(8575π - 15552√3)",
            alternate: PrecReal::from_int(7, prec).div(&b17),
            alternate_route: "7/B(1/7), hypergeometric closed form at φ = 1",
            printed_approx: Some("6.8211"),
        },
        ConstantRecord {
            name: "K",
            value: k_closed(prec),
            closed_form: "4117715√3/(864π)",
            alternate: exp.k_sym().to_real(prec),
            alternate_route: "-6!·g₆ from the exact expansion of g",
            printed_approx: Some("2627.6"),
        },
        ConstantRecord {
            name: "M",
            value: m_closed(prec),
            closed_form: "(4√3/(421875π))·((8575π - 15552√3)/(2592√3 - 1429π))^7",
            alternate: a_exp.m.with_prec(prec),
            alternate_route: "49·6!·C/ρ with C from the bootstrap of ψ",
            printed_approx: Some("1721.0"),
        },
        ConstantRecord {
            name: "lambda",
            value: lambda_closed(prec),
            closed_form: "(852768√3 - 470155π)/(10π)",
            alternate: f[1].neg().with_prec(prec),
            alternate_route: "-f₁ from the expansion of f",
            printed_approx: Some("0.0639"),
        },
        ConstantRecord {
            name: "y_prime_at_1_7",
            value: yprime_closed(prec),
            closed_form: "7/ρ + λ",
            alternate: f[0].sub(&f[1]).with_prec(prec),
            alternate_route: "f₀ - f₁",
            printed_approx: Some("1.0901"),
        },
        ConstantRecord {
            name: "A_prime_at_1_rho",
            value: aprime_closed(prec),
            closed_form: "7 - 49/(ρλ + 7)",
            alternate: a_exp.rho.mul(&a_exp.eta[1]).neg().with_prec(prec),
            alternate_route: "-ρ·η₁ from the expansion of A",
            printed_approx: Some("0.4106"),
        },
        ConstantRecord {
            name: "C",
            value: c_closed(prec)?,
            closed_form: "7^5·K·ρ/(6!·(7 + ρλ)^7)",
            alternate: psi.c.with_prec(prec),
            alternate_route: "bootstrap of ψ = y^(-1)",
            printed_approx: None,
        },
    ];
    if let Some(name) = corrupt {
        let rec = out
            .iter_mut()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::Usage(format!("unknown constant '{name}'")))?;
        rec.value = rec.value.add_rational(&rat(1, 1_000_000));
    }
    Ok(out)
}

/// All constants; fails if any pair of routes disagrees.
pub fn constants(digits: u32) -> Result<Vec<ConstantRecord>> {
    let recs = constants_with(digits, None)?;
    certify(&recs)?;
    Ok(recs)
}

/// Checks route agreement for every record.
pub fn certify(recs: &[ConstantRecord]) -> Result<()> {
    let bad: Vec<&str> = recs.iter().filter(|r| !r.routes_agree()).map(|r| r.name).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Certification(format!("routes disagree for {}", bad.join(", "))))
    }
}

/// Looks up a record by name.
pub fn find<'a>(recs: &'a [ConstantRecord], name: &str) -> Option<&'a ConstantRecord> {
    recs.iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    // Reference digits computed independently at high precision.
    const RHO: &str = "6.82111117268211001228533566087517563445275797397247392530001";
    const K: &str = "2627.56396135618570503880994444535759650884174884597420791868";
    const M: &str = "1720.99864009298659814170747764011586385705058363903900003179";
    const LAMBDA: &str = "0.0639491050762477674875313354324601566474089299416206409821552";
    const YP: &str = "1.09017486548231216727794886681140649963104920314801537094445";
    const AP: &str = "0.410616452192455438271174860523594033631841931427413745426119";
    const C: &str = "0.332741583109665204279125520657523374396002834743359571736763";

    fn close(x: &PrecReal, s: &str, tol: f64) -> bool {
        let q = parse_rational(s).unwrap();
        (x.mid_rational() - q).abs() < BigRational::from_float(tol).unwrap()
    }

    #[test]
    fn closed_forms_match_reference_digits() {
        let p = bits_for_digits(60);
        assert!(close(&rho_closed(p), RHO, 1e-55));
        assert!(close(&k_closed(p), K, 1e-52));
        assert!(close(&m_closed(p), M, 1e-52));
        assert!(close(&lambda_closed(p), LAMBDA, 1e-55));
        assert!(close(&yprime_closed(p), YP, 1e-55));
        assert!(close(&aprime_closed(p), AP, 1e-55));
        assert!(close(&c_closed(p).unwrap(), C, 1e-55));
    }

    #[test]
    fn printed_digit_matching() {
        let p = bits_for_digits(40);
        assert!(matches_printed(&rho_closed(p), "6.8211"));
        assert!(matches_printed(&yprime_closed(p), "1.0901"));
        assert!(matches_printed(&k_closed(p), "2627.6"));
        assert!(!matches_printed(&rho_closed(p), "6.8212"));
        assert!(!matches_printed(&k_closed(p), "2627.4"));
    }

    #[test]
    fn all_routes_agree() {
        let recs = constants(40).unwrap();
        assert_eq!(recs.len(), 7);
        for r in &recs {
            assert!(r.routes_agree(), "{}", r.name);
            assert!(r.matches_printed(), "{}", r.name);
        }
        assert!(aprime_closed(100).to_f64() < 1.0);
    }

    #[test]
    fn corruption_is_detected() {
        let recs = constants_with(30, Some("K")).unwrap();
        assert!(certify(&recs).is_err());
        assert!(constants_with(30, Some("nope")).is_err());
        assert!(constants_with(20, None).is_err());
    }

    #[test]
    fn doubling_digits_keeps_midpoints_inside_radii() {
        let lo = constants_with(30, None).unwrap();
        let hi = constants_with(60, None).unwrap();
        for (a, b) in lo.iter().zip(&hi) {
            assert!(a.value.contains_rational(&b.value.mid_rational()), "{}", a.name);
            assert!(a.alternate.contains_rational(&b.alternate.mid_rational()), "{}", a.name);
            assert!(b.value.radius_f64() < a.value.radius_f64() || b.value.is_exact(), "{}", a.name);
        }
    }

    #[test]
    fn growth_constant_inequalities() {
        let recs = constants(40).unwrap();
        let p = bits_for_digits(40);
        // ρ B(1/7) = 7 and A'(1/ρ) < 1.
        let rho = find(&recs, "rho").unwrap();
        let b17 = BEvaluator::new(40).unwrap().eval(&rat(1, 7)).unwrap();
        assert!(rho.value.mul(&b17).contains_rational(&int(7)));
        let ap = find(&recs, "A_prime_at_1_rho").unwrap();
        assert!(ap.value.sub(&PrecReal::from_i64(1, p)).is_negative());
    }
}
