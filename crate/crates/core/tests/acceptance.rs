//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always print.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lnd::certkit::{
    presentation_ideal, rank_upper_bound_witness, verify_kernel_certificate, KernelCertificate, Presentation,
};
use lnd::derivation::{CoordinateChange, DEFAULT_NILPOTENCY_CAP as CAP};
use lnd::dixmier::{dixmier_map, slice_kernel_generators, slice_taylor_identity};
use lnd::groebner::{classify_pair, is_principal_generated_by, PairClass};
use lnd::linalg::{complete_unimodular_row, PolyMatrix};
use lnd::poly::gcd;
use lnd::{Budget, Derivation, Polynomial, VarContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_poly, random_unimodular, triangular_with_local_slice, triangular_with_slice};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// A ring together with its derivation and named polynomials.
struct Example {
    ctx: VarContext,
    d: Derivation,
    defs: Vec<(&'static str, Polynomial)>,
}

impl Example {
    fn new(coeffs: &[&str], relations: &[&str], images: &[(&str, &str)], defs: &[(&'static str, &str)]) -> Self {
        let mut ctx = VarContext::over(coeffs, &["X", "Y", "Z"]).unwrap();
        if !relations.is_empty() {
            ctx = ctx.with_relations(relations).unwrap();
        }
        let d = Derivation::parse(&ctx, images).unwrap();
        let mut out = Example { ctx, d, defs: Vec::new() };
        for (name, text) in defs {
            let p = out.parse(text);
            out.defs.push((name, p));
        }
        out
    }

    fn parse(&self, text: &str) -> Polynomial {
        let bindings = self.defs.iter().map(|(n, p)| (n.to_string(), p.clone())).collect();
        lnd::poly::parse_with_bindings(text, &self.ctx, &bindings).unwrap()
    }

    fn all(&self, texts: &[&str]) -> Vec<Polynomial> {
        texts.iter().map(|t| self.parse(t)).collect()
    }
}

fn pidex() -> Example {
    Example::new(&["t"], &[], &[("Y", "X - t"), ("Z", "X + t")], &[("G", "(X - t)*Z - (X + t)*Y")])
}

fn ufdex() -> Example {
    Example::new(
        &["a", "b"],
        &[],
        &[("X", "b"), ("Y", "-a"), ("Z", "a*X + b*Y")],
        &[("u", "a*X + b*Y"), ("v", "b*Z - u*X"), ("w", "a*Z + u*Y")],
    )
}

fn dd() -> Example {
    Example::new(
        &["a", "b"],
        &["a^2 + b^2 - 1"],
        &[("X", "a"), ("Y", "b - 1"), ("Z", "a*Y + (1 - b)*X")],
        &[("u", "a*Y + (1 - b)*X"), ("v", "(1 + b)*Y + a*X"), ("w", "2*Z + u*Y - v*X")],
    )
}

fn two_var() -> Example {
    Example::new(
        &["t"],
        &[],
        &[("X", "t"), ("Y", "t*Z + X^2"), ("Z", "-2*X")],
        &[
            ("G", "t*Z + X^2"),
            ("F", "-G*X + t*Y"),
            ("H", "t*Y^2 - 2*t*X^2*Z^2 - 2*t*X*Y*Z - 2*X^3*Y - X^4*Z - t^2*Z^3"),
        ],
    )
}

fn one_var() -> Example {
    Example::new(
        &["t"],
        &[],
        &[("X", "t"), ("Y", "X"), ("Z", "Y")],
        &[
            ("F", "2*t*Y - X^2"),
            ("G", "3*t^2*Z - 3*t*X*Y + X^3"),
            ("H", "8*t*Y^3 + 9*t^2*Z^2 - 18*t*X*Y*Z - 3*X^2*Y^2 + 6*X^3*Z"),
        ],
    )
}

fn rank1() -> Example {
    Example::new(&[], &[], &[("Z", "1")], &[])
}

/// Runs `f` and fails if it takes longer than `limit`.
fn timed<T>(label: &str, limit: Duration, f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    let start = Instant::now();
    let out = f().map_err(|e| format!("{label}: {e}"))?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{label}: took {took:?}, limit {limit:?}"));
    }
    Ok(out)
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

const SECOND: Duration = Duration::from_secs(1);

fn criterion_1() -> Outcome {
    timed("2var", SECOND, || {
        let e = two_var();
        ensure(e.parse("F^2 - G^3") == e.parse("t*H"), "F^2 - G^3 != t*H")
    })?;
    timed("1var", SECOND, || {
        let e = one_var();
        ensure(e.parse("F^3 + G^2") == e.parse("t^2*H"), "F^3 + G^2 != t^2*H")
    })?;
    timed("UFDex", SECOND, || {
        let e = ufdex();
        let pres = Presentation::parse(&e.ctx, &["U", "V", "W"], "b*W - a*V - U^2").unwrap();
        let img = pres
            .relation
            .substitute(&[("U", e.parse("u")), ("V", e.parse("v")), ("W", e.parse("w"))])
            .map_err(|e| e.to_string())?;
        ensure(img.is_zero(), format!("relation maps to {img}"))
    })?;
    Ok("three identities hold exactly".into())
}

fn all_killed(e: &Example, polys: &[&str]) -> Result<(), String> {
    for p in polys {
        let dp = e.d.apply(&e.parse(p)).map_err(|e| e.to_string())?;
        ensure(dp.is_zero(), format!("D({p}) = {dp}"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    timed("PIDex", SECOND, || all_killed(&pidex(), &["G"]))?;
    timed("UFDex", SECOND, || all_killed(&ufdex(), &["u", "v", "w"]))?;
    timed("2var", SECOND, || all_killed(&two_var(), &["F", "G", "H"]))?;
    timed("1var", SECOND, || all_killed(&one_var(), &["F", "G", "H"]))?;
    timed("dd", SECOND, || all_killed(&dd(), &["u", "v", "w"]))?;
    Ok("all kernel elements are annihilated".into())
}

fn criterion_3() -> Outcome {
    for (name, e) in [("PIDex", pidex()), ("UFDex", ufdex()), ("dd", dd())] {
        timed(name, SECOND, || {
            let cert = e.d.certify_locally_nilpotent(CAP);
            ensure(cert.is_certified(), "not certified")?;
            ensure(cert.indices.iter().all(|(_, n)| n.is_some_and(|n| n <= 1)), format!("{:?}", cert.indices))?;
            ensure(e.d.quasi_nice_profile().is_nice, "not nice")
        })?;
    }
    timed("2var", SECOND, || {
        let prof = two_var().d.quasi_nice_profile();
        ensure(prof.vars == ["X", "Y"], format!("profile {:?}", prof.vars))
    })?;
    timed("1var", SECOND, || {
        let e = one_var();
        let prof = e.d.quasi_nice_profile();
        ensure(prof.vars == ["X"], format!("profile {:?}", prof.vars))?;
        let cert = e.d.certify_locally_nilpotent(CAP);
        let got: Vec<Option<u32>> = ["X", "Y", "Z"].iter().map(|v| cert.index_of(v)).collect();
        ensure(got == [Some(1), Some(2), Some(3)], format!("indices {got:?}"))
    })?;
    Ok("nice for PIDex, UFDex, dd; profiles {X,Y} and {X}; 1var indices 1,2,3".into())
}

fn criterion_4() -> Outcome {
    for (name, e) in [("PIDex", pidex()), ("UFDex", ufdex()), ("2var", two_var()), ("1var", one_var())] {
        ensure(e.d.is_irreducible().map_err(|e| e.to_string())?, format!("{name} not irreducible"))?;
    }
    for (name, e) in [("PIDex", pidex()), ("2var", two_var()), ("1var", one_var())] {
        let fpf = e.d.is_fixed_point_free(Budget::default()).map_err(|e| e.to_string())?;
        ensure(!fpf, format!("{name} reported fixed-point free"))?;
    }
    Ok("irreducible x4, not fixed-point free x3".into())
}

fn criterion_5() -> Outcome {
    timed("classify", SECOND, || {
        let e = pidex();
        let got = classify_pair(&e.parse("X - t"), &e.parse("X + t"), Budget::default()).map_err(|e| e.to_string())?;
        ensure(got == PairClass::RegularSequence, format!("(X - t, X + t): {got:?}"))?;
        let k = VarContext::over(&["t"], &["U"]).unwrap();
        let u = Polynomial::parse("U", &k).unwrap();
        let got = classify_pair(&u, &Polynomial::parse("1 + U", &k).unwrap(), Budget::default())
            .map_err(|e| e.to_string())?;
        ensure(got == PairClass::Comaximal, format!("(U, 1 + U): {got:?}"))
    })?;
    Ok("regular sequence and comaximal pair".into())
}

fn criterion_6() -> Outcome {
    let cases = [
        ("1var", one_var(), "U^3 + V^2 - t^2*W"),
        ("2var", two_var(), "U^2 - V^3 - t*W"),
        ("UFDex", ufdex(), "b*W - a*V - U^2"),
    ];
    let mut times = Vec::new();
    for (name, e, relation) in cases {
        let gens = if name == "UFDex" { e.all(&["u", "v", "w"]) } else { e.all(&["F", "G", "H"]) };
        let start = Instant::now();
        timed(name, Duration::from_secs(60), || {
            let pres = Presentation::parse(&e.ctx, &["U", "V", "W"], relation).map_err(|e| e.to_string())?;
            let elim = presentation_ideal(&gens, &pres, Budget::default()).map_err(|e| e.to_string())?;
            let shown: Vec<String> = elim.iter().map(|p| p.to_string()).collect();
            ensure(is_principal_generated_by(&elim, &pres.relation), format!("ideal {shown:?}"))
        })?;
        times.push(format!("{name} {:?}", start.elapsed()));
    }
    Ok(format!("principal elimination ideals ({})", times.join(", ")))
}

fn certificate(e: &Example, gens: &[&str], f: &str, r: &str, trdeg: usize) -> KernelCertificate {
    KernelCertificate {
        derivation: e.d.clone(),
        generators: e.all(gens),
        localizing: e.parse(f),
        local_slice: e.parse(r),
        presentation: None,
        expected_mod_f_trdeg: trdeg,
    }
}

fn criterion_7() -> Outcome {
    let limit = Duration::from_secs(120);
    let (p, v1, v2) = (pidex(), one_var(), two_var());
    let certs = [
        ("PIDex", certificate(&p, &["X", "G"], "X - t", "Y", 1)),
        ("1var", certificate(&v1, &["F", "G", "H"], "t", "X", 2)),
        ("2var", certificate(&v2, &["F", "G", "H"], "t", "X", 2)),
    ];
    for (name, cert) in &certs {
        timed(name, limit, || {
            let report = verify_kernel_certificate(cert, CAP, Budget::default());
            ensure(report.overall, format!("first failure {:?}", report.first_failure()))
        })?;
    }
    timed("negative control", limit, || {
        let report = verify_kernel_certificate(&certificate(&p, &["X"], "X - t", "Y", 1), CAP, Budget::default());
        ensure(!report.overall, "dropped generator passed")?;
        let first = report.first_failure().map(|s| s.name);
        ensure(first == Some("S3"), format!("first failure {first:?}"))
    })?;
    Ok("PIDex, 1var, 2var certified; negative control fails at S3".into())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..200 {
        let (d, s) = triangular_with_slice(&mut rng);
        let ctx = d.context().clone();
        let gens = slice_kernel_generators(&d, &s, CAP).map_err(|e| e.to_string())?;
        for g in &gens {
            ensure(d.apply(g).unwrap().is_zero(), format!("case {case}: D({g}) != 0"))?;
        }
        for v in ctx.ring_names() {
            let x = Polynomial::var(&ctx, v).unwrap();
            let ok = slice_taylor_identity(&d, &s, &x, CAP).map_err(|e| e.to_string())?;
            ensure(ok, format!("case {case}: Taylor identity fails for {v}"))?;
        }
    }
    Ok("200 derivations, 0 failures".into())
}

const CASES: usize = 1000;

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let tctx = common::tctx();
    let all: Vec<usize> = (0..tctx.len()).collect();

    for case in 0..CASES {
        let images: Vec<(&str, Polynomial)> =
            ["X", "Y", "Z"].iter().map(|v| (*v, random_poly(&mut rng, &tctx, &all, 3, 2))).collect();
        let d = Derivation::new(&tctx, &images).unwrap();
        let f = random_poly(&mut rng, &tctx, &all, 3, 2);
        let g = random_poly(&mut rng, &tctx, &all, 3, 2);
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        ensure(lhs == rhs, format!("Leibniz case {case}"))?;

        let m = random_unimodular(&mut rng, &tctx);
        let names = ["U", "V", "W"];
        let e = d.change_coordinates(&m, &names).unwrap();
        let change = CoordinateChange::new(&tctx, &m, &names).unwrap();
        let ok = e.apply(&change.pull(&f).unwrap()).unwrap() == change.pull(&d.apply(&f).unwrap()).unwrap();
        ensure(ok, format!("coordinate change case {case}"))?;
    }

    for case in 0..CASES {
        let (d, r) = triangular_with_local_slice(&mut rng);
        let f = random_poly(&mut rng, &tctx, &all, 3, 2);
        let g = random_poly(&mut rng, &tctx, &all, 3, 2);
        let pf = dixmier_map(&d, &r, &f, CAP).unwrap();
        let pg = dixmier_map(&d, &r, &g, CAP).unwrap();
        let pfg = dixmier_map(&d, &r, &(&f * &g), CAP).unwrap();
        ensure(pfg == pf.mul(&pg).unwrap(), format!("multiplicativity case {case}"))?;
    }

    for case in 0..CASES {
        let c = random_poly(&mut rng, &tctx, &all, 3, 2);
        let a = &random_poly(&mut rng, &tctx, &all, 3, 2) * &c;
        let b = &random_poly(&mut rng, &tctx, &all, 3, 2) * &c;
        let g = gcd(&a, &b).unwrap();
        ensure(g == gcd(&b, &a).unwrap(), format!("gcd symmetry case {case}"))?;
        if g.is_zero() {
            ensure(a.is_zero() && b.is_zero(), format!("gcd zero case {case}"))?;
        } else {
            let ok = a.divisible_by(&g).unwrap() && b.divisible_by(&g).unwrap();
            ensure(ok, format!("gcd divisibility case {case}"))?;
            ensure(c.is_zero() || g.divisible_by(&c).unwrap(), format!("gcd maximality case {case}"))?;
        }
    }

    let qt = VarContext::over(&["t"], &["X"]).unwrap();
    for case in 0..CASES {
        // unimodular by construction
        let row: Vec<Polynomial> = match case % 3 {
            0 => vec![Polynomial::constant(&qt, common::small_rational(&mut rng))],
            1 => {
                let a = random_poly(&mut rng, &qt, &[0], 3, 3);
                let c = random_poly(&mut rng, &qt, &[0], 3, 3);
                vec![a.clone(), &Polynomial::one(&qt) + &(&a * &c)]
            }
            _ => {
                let m = random_unimodular(&mut rng, &tctx);
                m.row(0).iter().map(|p| p.to_context(&qt).unwrap()).collect()
            }
        };
        let done = complete_unimodular_row(&row).map_err(|e| format!("completion case {case}: {e}"))?;
        ensure(done.row(0) == row.as_slice(), format!("completion first row case {case}"))?;
        let det = done.det();
        ensure(det.is_constant() && !det.is_zero(), format!("completion det {det} case {case}"))?;
    }
    Ok(format!("{CASES} cases each of Leibniz, coordinate change, multiplicativity, gcd, completion"))
}

fn criterion_10() -> Outcome {
    let p = pidex();
    let w = rank_upper_bound_witness(&p.d, &PolyMatrix::identity(&p.ctx, 3).unwrap()).map_err(|e| e.to_string())?;
    ensure(w == 2, format!("PIDex witness {w}"))?;
    let r = rank1();
    let w = rank_upper_bound_witness(&r.d, &PolyMatrix::identity(&r.ctx, 3).unwrap()).map_err(|e| e.to_string())?;
    ensure(w == 1, format!("rank1 witness {w}"))?;
    Ok("upper bounds 2 and 1; exact ranks are not machine-verified".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("corpus identities", criterion_1),
        ("kernel vanishing", criterion_2),
        ("nilpotency certificates", criterion_3),
        ("irreducibility and fixed points", criterion_4),
        ("pair classification", criterion_5),
        ("presentation eliminations", criterion_6),
        ("kernel certificates", criterion_7),
        ("slice property suite", criterion_8),
        ("algebraic property suites", criterion_9),
        ("rank witnesses", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{:?}]", i + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{:?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
