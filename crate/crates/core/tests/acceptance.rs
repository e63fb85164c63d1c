// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

use std::time::{Duration, Instant};

use g2trees::ball::bits_for_digits;
use g2trees::criterion::{
    analyze, catalan_constant, derivative_gap_sums, example2_constant, example2_quintic, scaled_coeff, Branch,
};
use g2trees::generator::{a_sequence, example2_y_coeff, GeneratorSpec, G2_DEFAULT_ORDER};
use g2trees::hyper::constants::{constants, k_closed, m_closed, matches_printed, rho_closed};
use g2trees::series::{int, lagrange_invert, rat, recover_generator};
use g2trees::sing::psi::asym_an_scaled;
use g2trees::sing::{asym_bn_scaled, kappa, sing_a};
use g2trees::walk::{b_sequence, bn_exact, bn_scaled, saddle_quadrature};
use g2trees::{ExactSeries, PrecReal};
use num_bigint::BigInt;
use num_rational::BigRational;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Check {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn within(limit: Duration, t: Instant) -> Result<(), String> {
    let e = t.elapsed();
    if e > limit {
        return Err(format!("took {e:.2?}, limit {limit:?}"));
    }
    Ok(())
}

fn err(e: g2trees::Error) -> String {
    e.to_string()
}

fn b_ratio(n: usize, prec: u32) -> PrecReal {
    let q = BigRational::new(bn_exact(n).unwrap(), BigInt::from(7).pow(n as u32));
    PrecReal::from_rational(&q, prec)
}

fn sequence_fidelity() -> Check {
    let t = Instant::now();
    let b: Vec<i64> = vec![1, 0, 1, 1, 4, 10, 35, 120, 455, 1792];
    let a: Vec<i64> = vec![1, 0, 1, 1, 2, 5, 15, 50, 181, 697];
    let got_b = b_sequence(9);
    let got_a = a_sequence(9).map_err(err)?;
    let b_ok = got_b.iter().zip(&b).all(|(x, y)| *x == BigInt::from(*y));
    let a_ok = got_a.iter().zip(&a).all(|(x, y)| *x == BigInt::from(*y));
    within(Duration::from_secs(1), t)?;
    ensure(b_ok && a_ok && got_b.len() == 10 && got_a.len() == 10, format!("b = {got_b:?}, a = {got_a:?}"))
}

fn roundtrip() -> Check {
    let t = Instant::now();
    let n = G2_DEFAULT_ORDER;
    let b = ExactSeries::from_integers(b_sequence(n - 1)).map_err(err)?;
    let a = recover_generator(&b, n).map_err(err)?;
    let y = lagrange_invert(&a, n).map_err(err)?;
    let back = recover_generator(&y.shift_down().map_err(err)?, n).map_err(err)?;
    within(Duration::from_secs(120), t)?;
    ensure(back == a && y.shift_down().map_err(err)? == b, format!("order {n}, {:.2?}", t.elapsed()))
}

fn constant_certification() -> Check {
    let t = Instant::now();
    let recs = constants(60).map_err(err)?;
    let printed = [
        ("rho", "6.8211"),
        ("K", "2627.6"),
        ("M", "1721.0"),
        ("lambda", "0.0639"),
        ("y_prime_at_1_7", "1.0901"),
        ("A_prime_at_1_rho", "0.4106"),
    ];
    let mut bad = Vec::new();
    for (name, digits) in printed {
        let rec = recs.iter().find(|r| r.name == name).ok_or(format!("missing {name}"))?;
        if !rec.routes_agree() || !matches_printed(&rec.value, digits) || rec.value.radius_f64() > 1e-55 {
            bad.push(name);
        }
    }
    within(Duration::from_secs(30), t)?;
    ensure(bad.is_empty(), format!("failing: {bad:?}"))
}

fn kappa_exact() -> Check {
    let k = kappa(15).map_err(err)?;
    // The truncation through κ₁₅ tracks exact b_n far beyond what wrong
    // rationals could.
    let prec = bits_for_digits(40);
    let exact = b_ratio(300, prec);
    let rel = exact.sub(&asym_bn_scaled(300, 15, prec).map_err(err)?).div(&exact).to_f64().abs();
    ensure(
        k.len() == 9 && k[0] == rat(4117715, 864) && rel < 1e-12,
        format!("κ₇ = {}, κ₁₅ = {}, rel error at n = 300: {rel:.2e}", k[0], k[8]),
    )
}

fn b_asymptotics() -> Check {
    let t = Instant::now();
    let prec = bits_for_digits(30);
    let n = 2000;
    let k = k_closed(prec).to_f64();
    let dev_2000 = bn_scaled(n) * (n as f64).powi(7) / k - 1.0;
    let n = 100;
    let exact = b_ratio(n, prec);
    let dev_100 = exact.div(&asym_bn_scaled(n, 10, prec).map_err(err)?).to_f64() - 1.0;
    within(Duration::from_secs(300), t)?;
    ensure(
        dev_2000.abs() < 0.01 && dev_100.abs() < 1e-4,
        format!("n = 2000 leading term: {dev_2000:+.6}; n = 100 through κ₁₀: {dev_100:+.3e}"),
    )
}

fn a_asymptotics() -> Check {
    let t = Instant::now();
    let a = a_sequence(300).map_err(err)?;
    let a_exp = sing_a(30).map_err(err)?;
    let dev = |n: usize| -> Result<f64, String> {
        let v = PrecReal::from_int(a[n].clone(), a_exp.prec).div(&a_exp.rho.powi(n as u32));
        Ok(v.div(&asym_an_scaled(n, &a_exp).map_err(err)?).to_f64() - 1.0)
    };
    let (d100, d300) = (dev(100)?, dev(300)?);
    within(Duration::from_secs(600), t)?;
    ensure(d300.abs() < 0.05 && d300.abs() < d100.abs(), format!("n = 100: {d100:+.4}, n = 300: {d300:+.4}"))
}

fn criterion_fixtures() -> Check {
    let digits = 30;
    let prec = bits_for_digits(digits);
    let tol = rat(1, 10_000_000_000);
    let mut notes = Vec::new();
    let mut ok = true;

    let cat = analyze(&GeneratorSpec::catalan(), digits).map_err(err)?;
    let close = |x: &PrecReal, want: &PrecReal| x.sub(want).abs_upper().is_some_and(|d| d < tol);
    let tau_ok = cat.tau.as_ref().is_some_and(|t| close(t, &PrecReal::from_rational(&rat(1, 2), prec)));
    let r_ok = cat.r.finite().is_some_and(|r| close(r, &PrecReal::from_rational(&rat(1, 4), prec)));
    let c_ok = cat.c.as_ref().is_some_and(|c| close(c, &catalan_constant(prec)));
    ok &= cat.branch == Branch::Strict && tau_ok && r_ok && c_ok;
    notes.push(format!("catalan strict={} τ={tau_ok} r={r_ok} C={c_ok}", cat.branch == Branch::Strict));

    let ex = analyze(&GeneratorSpec::example2(), digits).map_err(err)?;
    let r_ok =
        ex.r.finite()
            .is_some_and(|r| r.contains_rational(&rat(1, 6)) || close(r, &PrecReal::from_rational(&rat(1, 6), prec)));
    let quintic_ok = example2_quintic(60).map_err(err)?.coeffs().iter().all(|c| *c == int(0));
    let n = 2000;
    let scaled = scaled_coeff(&example2_y_coeff(n), n, &int(6), 3, prec);
    let ratio = scaled.div(&example2_constant(prec)).to_f64();
    let ratio_ok = (ratio - 1.0).abs() < 0.02;
    ok &= ex.branch == Branch::Sharp && r_ok && quintic_ok && ratio_ok;
    notes.push(format!(
        "example2 sharp={} r={r_ok} quintic={quintic_ok} y_n n^1.5 / (K 6^n) at n = 2000: {ratio:.5}",
        ex.branch == Branch::Sharp
    ));

    let g2 = GeneratorSpec::g2(G2_DEFAULT_ORDER, digits).map_err(err)?;
    let rep = analyze(&g2, digits).map_err(err)?;
    let a: Vec<BigRational> = a_sequence(300).map_err(err)?.into_iter().map(int).collect();
    let sums = derivative_gap_sums(&a, &rho_closed(prec).recip());
    let one = rat(1, 1);
    let gaps_ok = sums.iter().all(|s| s.upper().is_some_and(|u| u < one));
    let last = sums.last().map(|s| s.to_f64()).unwrap_or(f64::NAN);
    ok &= rep.branch == Branch::Sharp && gaps_ok;
    notes.push(format!("g2 sharp={} partial sums < 1: {gaps_ok} (last {last:.6})", rep.branch == Branch::Sharp));

    ensure(ok, notes.join("; "))
}

fn saddle() -> Check {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [2, 4, 40] {
        let q = saddle_quadrature(n, 64).map_err(err)?;
        worst = worst.max(((q.value - bn_scaled(n)) / bn_scaled(n)).abs());
    }
    let q2 = saddle_quadrature(2, 64).map_err(err)?.value;
    let q4 = saddle_quadrature(4, 64).map_err(err)?.value;
    let exact_ok = (q2 - 1.0 / 49.0).abs() < 1e-12 && (q4 - 4.0 / 2401.0).abs() < 1e-12;
    within(Duration::from_secs(60), t)?;
    ensure(worst < 1e-6 && exact_ok, format!("worst relative difference {worst:.2e}"))
}

fn dual_route_m() -> Check {
    let prec = bits_for_digits(60);
    let closed = m_closed(prec);
    let a_exp = sing_a(60).map_err(err)?;
    ensure(
        a_exp.m.overlaps(&closed),
        format!("49·6!·C/ρ = {} vs closed {}", a_exp.m.to_decimal(20), closed.to_decimal(20)),
    )
}

fn order_improvement() -> Check {
    let prec = bits_for_digits(30);
    let n = 200;
    let exact = b_ratio(n, prec);
    let e7 = exact.sub(&asym_bn_scaled(n, 7, prec).map_err(err)?).div(&exact).to_f64().abs();
    let e10 = exact.sub(&asym_bn_scaled(n, 10, prec).map_err(err)?).div(&exact).to_f64().abs();
    ensure(e10 < e7, format!("n = 200: order 7 {e7:.3e}, order 10 {e10:.3e}"))
}

fn main() {
    let checks: [(&str, fn() -> Check); 10] = [
        ("1 sequence fidelity", sequence_fidelity),
        ("2 inversion roundtrip", roundtrip),
        ("3 constant certification", constant_certification),
        ("4 exact kappa", kappa_exact),
        ("5 b_n asymptotics", b_asymptotics),
        ("6 a_n asymptotics", a_asymptotics),
        ("7 criterion fixtures", criterion_fixtures),
        ("8 saddle quadrature", saddle),
        ("9 dual-route M", dual_route_m),
        ("order improvement", order_improvement),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let t = Instant::now();
        let out = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("PASS {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s): {msg}");
            }
        }
    }
    println!("{failed} of {} criteria failed", checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
