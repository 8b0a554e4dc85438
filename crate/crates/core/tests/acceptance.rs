//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with a custom harness so the verdict lines always reach stdout; the
//! process fails if any criterion fails.

use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclift::arith;
use cyclift::cover::{self, CoverSpec};
use cyclift::field::Field;
use cyclift::lifting::{
    self, frame_hyperplanes, LiftedForm, LiftedTarget, SearchMode, DEFAULT_SEARCH_CAP,
};
use cyclift::poly::{binary_factor, max_divisibility, monomials, FactoredDivisor, Form};
use cyclift::projective::{
    cohomology_dim, hi_vanishing_check, plane_curve_singularity, singular_probe, ExactVerdict, RestrictionTarget,
    SingularVerdict,
};
use cyclift::witt::{Witt2, WittElement};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn var(k: &Field, nv: usize, i: usize) -> Form<Field> {
    Form::variable(k, nv, i)
}

fn conic(k: &Field) -> Form<Field> {
    let (x, y, z) = (var(k, 3, 0), var(k, 3, 1), var(k, 3, 2));
    x.pow(2).sub(&y.mul(&z).unwrap()).unwrap()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn example_3_10() -> Outcome {
    let start = Instant::now();
    let k = Field::new(3, 1, None).unwrap();
    let spec = CoverSpec::new(2, 2, conic(&k), None, 0).map_err(|e| e.to_string())?;
    let target = RestrictionTarget::hyperplane(var(&k, 3, 1)).map_err(|e| e.to_string())?;
    let r = cover::restrict_cover(&spec, &target, 0).map_err(|e| e.to_string())?;
    let xz = names(&["x", "z"]);
    let restriction = r.restriction.format_with(&xz);
    let witness = r.witness.format_with(&xz);
    ensure(restriction == "x^2", || format!("restriction {restriction}"))?;
    ensure(r.mu_max == 2 && witness == "x", || format!("mu_max {} witness {witness}", r.mu_max))?;
    ensure(r.spec_b_components == 2, || format!("Spec B components {}", r.spec_b_components))?;
    ensure(r.b_degrees == Some(vec![0, 0]), || format!("B degrees {:?}", r.b_degrees))?;
    ensure(r.a_e_degrees == vec![0, -1], || format!("A|_E degrees {:?}", r.a_e_degrees))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("s|_E = {restriction}, mu_max = 2 (t = {witness}), B = O+O, A|_E = O+O(-1)"))
}

fn example_4_2() -> Outcome {
    let start = Instant::now();
    let k = Field::new(3, 1, None).unwrap();
    let s = LiftedForm::teichmuller(&conic(&k));
    let shifted = LiftedForm::new(var(&k, 3, 1), var(&k, 3, 2).neg()).map_err(|e| e.to_string())?;
    let restricted = lifting::restrict_lift(&s, &LiftedTarget::Hyperplane(shifted)).map_err(|e| e.to_string())?;
    let xz = names(&["x", "z"]);
    let (base, corr) = (restricted.base().format_with(&xz), restricted.correction().format_with(&xz));
    ensure(base == "x^2" && corr == "-z^2", || format!("restricted lift {base} + p*({corr})"))?;
    let cert = lifting::is_divisible_lifting(&restricted, 2).map_err(|e| e.to_string())?;
    ensure(!cert.divisible, || "divisibility not refuted".into())?;
    let comps = lifting::lifted_component_count(&restricted, 2).map_err(|e| e.to_string())?;
    ensure(comps == 1, || format!("lifted components {comps}"))?;

    let target = RestrictionTarget::hyperplane(var(&k, 3, 1)).map_err(|e| e.to_string())?;
    let search = lifting::construct_divisible_lift(&s, 2, &target, SearchMode::HyperplaneFamily { limit: DEFAULT_SEARCH_CAP })
        .map_err(|e| e.to_string())?;
    let found = search.found.ok_or("search found nothing")?;
    let LiftedTarget::Hyperplane(l) = &found.target else {
        return Err("unexpected target kind".into());
    };
    ensure(l.base() == &var(&k, 3, 1) && l.correction().is_zero(), || format!("found {}", found.target))?;
    let (mu, w) = found.certificate.top_witness().ok_or("no witness")?;
    let wt = w.root.format_with(&xz);
    ensure(mu == 2 && wt == "x", || format!("witness {wt} for mu {mu}"))?;
    let comps = lifting::lifted_component_count(&found.restricted, 2).map_err(|e| e.to_string())?;
    ensure(comps == 2, || format!("found lift has {comps} components"))?;
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok("(y - p z): x^2 + p*(-z^2) not divisible, 1 component; search: (y = 0), t~ = x, 2 components".into())
}

fn fermat(k: &Field, n: usize, big_n: u32) -> Form<Field> {
    (0..=n).fold(Form::zero(k, n + 1, big_n), |acc, i| acc.add(&var(k, n + 1, i).pow(big_n)).unwrap())
}

fn example_4_6() -> Outcome {
    let k = Field::new(13, 1, None).unwrap();
    let mut cases = 0;
    for n in 2..=4usize {
        for big_n in 2..=11u64 {
            if arith::gcd(big_n, 13) != 1 {
                continue;
            }
            let spec = CoverSpec::new(n, big_n, fermat(&k, n, big_n as u32), None, 0).map_err(|e| e.to_string())?;
            let r = cover::canonical_report(&spec).map_err(|e| e.to_string())?;
            let expected = big_n as i64 - (n as i64 + 2);
            ensure(r.degree == Rational64::from_integer(expected), || format!("n={n} N={big_n}: degree {}", r.degree))?;
            ensure(r.general_type == (big_n as i64 > n as i64 + 2), || format!("n={n} N={big_n}: general type flag"))?;
            let direct = cover::canonical_degree(n as u32, big_n, Rational64::from_integer(1));
            ensure(direct == r, || format!("n={n} N={big_n}: formula mismatch"))?;
            cases += 1;
        }
    }
    Ok(format!("deg K = N - (n+2) and general type iff N > n+2 in {cases} cases"))
}

fn witt_oracle() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0u64;
    for p in [2u64, 3, 5, 7] {
        let k = Field::new(p, 1, None).unwrap();
        let w = Witt2::new(k.clone());
        let p2 = p * p;
        let elems: Vec<WittElement> =
            k.elements().flat_map(|a| k.elements().map(move |b| WittElement::new(a, b))).collect();
        let images: Vec<u64> = elems.iter().map(|&x| w.iso_zp2(x).unwrap()).collect();
        let mut seen = vec![false; p2 as usize];
        for &m in &images {
            ensure(m < p2 && !seen[m as usize], || format!("p={p}: iso_zp2 not injective at {m}"))?;
            seen[m as usize] = true;
        }
        ensure(images[elems.iter().position(|&x| x == WittElement::ONE).unwrap()] == 1, || format!("p={p}: iso(1) != 1"))?;
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                let sum = w.iso_zp2(w.w_add(x, y)).unwrap();
                let prod = w.iso_zp2(w.w_mul(x, y)).unwrap();
                ensure(sum == (images[i] + images[j]) % p2, || format!("p={p}: add mismatch"))?;
                ensure(prod == images[i] * images[j] % p2, || format!("p={p}: mul mismatch"))?;
                pairs += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("bijective ring isomorphism onto Z/p^2 on {pairs} operand pairs"))
}

fn random_binary(k: &Field, degree: u32, rng: &mut ChaCha8Rng) -> Form<Field> {
    loop {
        let terms = monomials(2, degree).into_iter().map(|e| (e, k.from_raw(rng.gen_range(0..k.size())).unwrap()));
        let f = Form::from_terms(k, 2, degree, terms).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// `mu_max` from the factorization: `mu | N`, `mu` divides every
/// multiplicity, and the leading scalar is a `mu`-th power in `F_q`.
fn mu_from_factorization(k: &Field, f: &Form<Field>, big_n: u64, seed: u64) -> u64 {
    let fac = binary_factor(f, seed).unwrap();
    let g = fac.factors.iter().fold(0u64, |acc, (_, m)| arith::gcd(acc, *m as u64));
    let q1 = k.size() as u64 - 1;
    (1..=big_n)
        .filter(|mu| big_n % mu == 0 && (g == 0 || g % mu == 0))
        .filter(|&mu| k.elements().any(|c| !c.is_zero() && k.pow(c, mu) == fac.leading) || q1 == 0)
        .max()
        .unwrap()
}

fn binary_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut nontrivial = 0;
    for case in 0..500 {
        let p = [5u64, 7, 13][case % 3];
        let k = Field::new(p, 1, None).unwrap();
        let divisors: Vec<u64> = arith::divisors(p - 1).into_iter().filter(|&d| d <= 12).collect();
        let big_n = divisors[rng.gen_range(0..divisors.len())];
        let f = if rng.gen_bool(0.5) {
            let inner_mu = arith::divisors(big_n)[rng.gen_range(0..arith::divisors(big_n).len())] as u32;
            let g = random_binary(&k, rng.gen_range(1..=24 / inner_mu), &mut rng);
            let c = k.from_raw(rng.gen_range(1..k.size())).unwrap();
            let mut f = g.pow(inner_mu).scalar_mul(c);
            if rng.gen_bool(0.3) && f.degree() < 24 {
                f = f.mul(&random_binary(&k, rng.gen_range(1..=24 - f.degree()), &mut rng)).unwrap();
            }
            f
        } else {
            random_binary(&k, rng.gen_range(1..=24), &mut rng)
        };
        let newton = max_divisibility(&f, big_n).map_err(|e| e.to_string())?;
        ensure(newton.witness.pow(newton.mu as u32) == f, || format!("case {case}: witness does not reproduce f"))?;
        let oracle = mu_from_factorization(&k, &f, big_n, case as u64);
        ensure(newton.mu == oracle, || format!("case {case}: {f} over F_{p}, N={big_n}: newton {} vs factorization {oracle}", newton.mu))?;
        if oracle > 1 {
            nontrivial += 1;
        }
    }
    Ok(format!("500 forms, 0 mismatches ({nontrivial} with mu_max > 1)"))
}

fn random_form(k: &Field, nv: usize, degree: u32, rng: &mut ChaCha8Rng) -> Form<Field> {
    let terms = monomials(nv, degree).into_iter().map(|e| (e, k.from_raw(rng.gen_range(0..k.size())).unwrap()));
    Form::from_terms(k, nv, degree, terms).unwrap()
}

fn lifting_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let setups: [(u64, &[u64]); 3] = [(7, &[2, 3, 6]), (13, &[2, 3, 4, 6]), (5, &[2, 4])];
    let (mut recovered, mut refuted) = (0, 0);
    for case in 0..400 {
        let (p, mus) = setups[case % 3];
        let mu = mus[rng.gen_range(0..mus.len())];
        let k = Field::new(p, 1, None).unwrap();
        let w = Witt2::new(k.clone());
        let nv = rng.gen_range(2..=3);
        let dt = rng.gen_range(1..=2);
        let t = loop {
            let t = random_form(&k, nv, dt, &mut rng);
            if !t.is_zero() {
                break t;
            }
        };
        let t_pow = t.pow(mu as u32 - 1);
        let tau_pow = t.teichmuller(&w).pow(mu as u32);
        let e = if case < 200 {
            t_pow.mul(&random_form(&k, nv, dt, &mut rng)).unwrap()
        } else {
            loop {
                let e = random_form(&k, nv, dt * mu as u32, &mut rng);
                if e.divide_exact(&t_pow).unwrap().is_none() {
                    break e;
                }
            }
        };
        let s_witt = tau_pow.add(&e.times_p(&w)).unwrap();
        let s = LiftedForm::from_witt(&s_witt);
        let root = lifting::lift_root(&s, mu).map_err(|err| err.to_string())?;
        if case < 200 {
            let r = root.ok_or_else(|| format!("case {case}: no root for a divisible lift (mu = {mu}, p = {p})"))?;
            ensure(r.root.to_witt(&w).pow(mu as u32) == s_witt, || format!("case {case}: t~^mu != s~"))?;
            recovered += 1;
        } else {
            ensure(root.is_none(), || format!("case {case}: adversarial lift accepted"))?;
            refuted += 1;
        }
    }
    Ok(format!("{recovered} witnesses verified exactly, {refuted} adversarial lifts refuted"))
}

fn smoothness() -> Outcome {
    let k = Field::new(5, 1, None).unwrap();
    let d = FactoredDivisor::new(&k, 3, vec![(conic(&k), 1)]).map_err(|e| e.to_string())?;
    let probe = singular_probe(&d, 3).map_err(|e| e.to_string())?;
    ensure(probe == SingularVerdict::NoSingularPointFound { m_max: 3 }, || format!("conic probe {probe:?}"))?;
    let exact = plane_curve_singularity(&d, 0).map_err(|e| e.to_string())?;
    ensure(exact == ExactVerdict::Smooth, || format!("conic exact {exact:?}"))?;

    let xy = FactoredDivisor::new(&k, 3, vec![(var(&k, 3, 0), 1), (var(&k, 3, 1), 1)]).map_err(|e| e.to_string())?;
    match singular_probe(&xy, 3).map_err(|e| e.to_string())? {
        SingularVerdict::SingularAt(pt) if pt.to_string() == "[0:0:1]" => {}
        other => return Err(format!("xy probe {other:?}")),
    }
    for power in 1..=5u32 {
        let d = FactoredDivisor::new(&k, 3, vec![(var(&k, 3, 0), power)]).map_err(|e| e.to_string())?;
        let v = singular_probe(&d, 3).map_err(|e| e.to_string())?;
        ensure(v == SingularVerdict::NoSingularPointFound { m_max: 3 }, || format!("x^{power}: {v:?}"))?;
        let spec = CoverSpec::new(2, power as u64, var(&k, 3, 0).pow(power), None, 0).map_err(|e| e.to_string())?;
        let check = cover::validate(&spec, 3, 0);
        ensure(check.find(cover::CHECK_SMOOTH).is_some_and(|c| c.passed), || format!("x^{power}: validate"))?;
    }
    Ok("x^2 - yz smooth (probe m <= 3 and exact), xy singular at [0:0:1], x^k smooth for k <= 5".into())
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn cohomology() -> Outcome {
    let mut entries = 0;
    for n in 1..=5u32 {
        for d in -20i64..=20 {
            let h0 = cohomology_dim(n, d, 0).map_err(|e| e.to_string())?;
            let expected = if d >= 0 { binomial(n as u64 + d as u64, n as u64) } else { 0 };
            ensure(h0 == expected, || format!("h^0(P^{n}, O({d})) = {h0}, expected {expected}"))?;
            for i in 0..=n {
                let h = cohomology_dim(n, d, i).map_err(|e| e.to_string())?;
                if 0 < i && i < n {
                    ensure(h == 0, || format!("h^{i}(P^{n}, O({d})) = {h}"))?;
                }
                let dual = cohomology_dim(n, -(n as i64) - 1 - d, n - i).map_err(|e| e.to_string())?;
                ensure(h == dual, || format!("Serre duality fails at n={n}, d={d}, i={i}"))?;
                entries += 1;
            }
        }
    }
    for n in 3..=5u32 {
        for i in 1..=2u32 {
            let r = hi_vanishing_check(n, i, -20, 20).map_err(|e| e.to_string())?;
            ensure(r.vanishes, || format!("H^{i} vanishing fails on P^{n}"))?;
        }
    }
    Ok(format!("{entries} table entries exact; H^1 = H^2 = 0 on P^n for n = 3..5"))
}

fn strong_liftability() -> Outcome {
    let start = Instant::now();
    let k = Field::new(5, 1, None).unwrap();
    let quadric = fermat(&k, 3, 2);
    let spec = CoverSpec::new(3, 2, quadric, None, 0).map_err(|e| e.to_string())?;
    let targets = frame_hyperplanes(&k, 3);
    ensure(targets.len() == 15, || format!("{} frame hyperplanes", targets.len()))?;
    let report = lifting::strong_liftability_probe(&spec, None, &targets, 2, DEFAULT_SEARCH_CAP, 0).map_err(|e| e.to_string())?;
    ensure(report.all_certified, || {
        let bad: Vec<String> = report.entries.iter().filter(|e| e.verdict != "certified" && e.verdict != "branch").map(|e| e.target.clone()).collect();
        format!("uncertified targets: {bad:?}")
    })?;
    let vacuous = report.entries.iter().filter(|e| e.mu_max == Some(1)).count();
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{}/{} frame hyperplanes certified over F_5 ({vacuous} with mu_max = 1, where divisibility is vacuous)",
        report.certified, report.total
    ))
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [Criterion; 9] = [
        ("1 conic cover restricted to a tangent line", example_3_10),
        ("2 divisible lifting refuted then found", example_4_2),
        ("3 canonical degree of Fermat covers", example_4_6),
        ("4 Witt ring against Z/p^2", witt_oracle),
        ("5 Newton roots against factorization", binary_oracle),
        ("6 divisible-lifting roundtrip", lifting_roundtrip),
        ("7 smoothness probe", smoothness),
        ("8 cohomology of line bundles", cohomology),
        ("9 finite strong-liftability certificate", strong_liftability),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} [{ms} ms]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name} [{ms} ms]: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
