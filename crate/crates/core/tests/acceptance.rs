//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use constacode::cli::{self, Command, OutputFormat, RunConfig};
use constacode::codes::{self, CodeSpec};
use constacode::oracle::{self, TinyRing, DEFAULT_CAP};
use constacode::{binomial_irreducible, AmbientRing, ChainRing, Field, Poly, RElem, RPoly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(p: u32, m: usize, s: u32, n: usize, alpha: i64, beta: i64) -> Arc<AmbientRing> {
    let f = Field::new(p, m, None).unwrap();
    AmbientRing::build(&f, s, n, &f.from_int(alpha), &f.from_int(beta)).unwrap()
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:?}, limit {limit:?}", t.elapsed()))
}

/// Oracle ideals, their sizes and strict nesting for a ring with one factor.
fn chain_check(ring: &Arc<AmbientRing>, base: u64) -> Result<String, String> {
    let tiny = TinyRing::new(ring.field(), ring.length(), ring.lambda().clone(), DEFAULT_CAP).map_err(|e| e.to_string())?;
    let ideals = oracle::enumerate_ideals(&tiny);
    ensure(ideals.len() == 7, || format!("{} ideals, expected 7", ideals.len()))?;
    let top = 2 * ring.p_power() as u64;
    let mut by_size = ideals.clone();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.dim()));
    for (i, s) in by_size.iter().enumerate() {
        let size = (ring.field().characteristic() as u64).pow(s.dim() as u32);
        let want = base.pow((top - i as u64) as u32);
        ensure(size == want, || format!("ideal {i} has {size} elements, expected {want}"))?;
    }
    for w in by_size.windows(2) {
        ensure(w[1].is_subspace_of(&w[0]) && w[1] != w[0], || "ideals are not a strict chain".into())?;
    }
    for code in codes::enumerate_codes(ring) {
        let i = code.exponents()[0] as usize;
        ensure(code.basis() == by_size[i], || format!("code {code} differs from the oracle ideal of that size"))?;
    }
    Ok(format!("7 ideals over {} elements, sizes {base}^(6-i)", tiny.size()))
}

/// Exactly one ideal equals its own complement, and it is generated by u.
fn self_dual_check(ring: &Arc<AmbientRing>) -> Result<String, String> {
    let tiny = TinyRing::new(ring.field(), ring.length(), ring.lambda().clone(), DEFAULT_CAP).map_err(|e| e.to_string())?;
    let chain = ring.chain_ring();
    let self_dual: Vec<_> = oracle::enumerate_ideals(&tiny)
        .into_iter()
        .filter(|s| &oracle::orthogonal_complement(chain, ring.length(), s) == s)
        .collect();
    ensure(self_dual.len() == 1, || format!("{} self-dual ideals", self_dual.len()))?;
    let mut u_word = vec![chain.zero(); ring.length()];
    u_word[0] = chain.u();
    ensure(self_dual[0] == tiny.ideal(&u_word), || "self-dual ideal is not <u>".into())?;
    let mid = CodeSpec::new(ring, vec![ring.p_power() as u32]).unwrap();
    let f = &ring.factors()[0].f;
    let fps = RPoly::from_poly(&f.pow(ring.p_power() as u64));
    ensure(mid.basis() == self_dual[0], || "code (p^s) is not the self-dual ideal".into())?;
    ensure(codes::ideal_basis(chain, ring.lambda(), &ring.reduce(&fps).to_word(ring.length())) == self_dual[0], || {
        "<(x^n - a0)^(p^s)> differs from <u>".into()
    })?;
    let flagged: Vec<_> = codes::enumerate_codes(ring).filter(|c| c.is_self_dual(DEFAULT_CAP).unwrap()).collect();
    ensure(flagged == vec![mid], || "is_self_dual disagrees with brute force".into())?;
    Ok(format!("{}-element ring", tiny.size()))
}

fn c1() -> Outcome {
    let t = Instant::now();
    let r = ring(2, 1, 1, 3, 1, 1);
    let rep = oracle::verify_ring(&r, DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure(rep.ring_elements == 4096, || format!("{} elements", rep.ring_elements))?;
    ensure(rep.oracle_ideals == 25 && rep.expected_ideals == 25, || {
        format!("{} oracle ideals, {} predicted", rep.oracle_ideals, rep.expected_ideals)
    })?;
    ensure(rep.passed, || format!("{:?}", rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>()))?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("25 ideals over 4096 elements in {:?}", t.elapsed()))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let msg = chain_check(&ring(3, 1, 1, 1, 2, 1), 3)?;
    within(t, Duration::from_secs(10))?;
    Ok(format!("{msg} in {:?}", t.elapsed()))
}

fn c3() -> Outcome {
    let t = Instant::now();
    let f = Field::prime(3).unwrap();
    ensure(binomial_irreducible(&f, 2, &f.from_int(2)).unwrap(), || "x^2 - 2 reported reducible".into())?;
    let r = ring(3, 1, 1, 2, 2, 1);
    ensure(r.is_irreducible_case(), || "expected one factor".into())?;
    let msg = chain_check(&r, 9)?;
    within(t, Duration::from_secs(600))?;
    Ok(format!("{msg} in {:?}", t.elapsed()))
}

fn all_words(chain: &ChainRing, len: usize) -> Vec<Vec<RElem>> {
    let elems: Vec<RElem> = chain.elements().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                elems.iter().map(move |e| {
                    let mut v = w.clone();
                    v.push(e.clone());
                    v
                })
            })
            .collect();
    }
    out
}

fn orthogonal(chain: &ChainRing, a: &[RElem], b: &[RElem]) -> bool {
    a.iter().zip(b).fold(chain.zero(), |acc, (x, y)| chain.add(&acc, &chain.mul(x, y))).is_zero()
}

fn c4() -> Outcome {
    let r = ring(2, 1, 1, 3, 1, 1);
    let chain = r.chain_ring();
    let words = all_words(chain, r.length());
    let mut count = 0;
    for code in codes::enumerate_codes(&r) {
        let dual = code.dual().map_err(|e| e.to_string())?;
        let members = code.members(DEFAULT_CAP).map_err(|e| e.to_string())?;
        let brute: HashSet<&Vec<RElem>> =
            words.iter().filter(|w| members.words.iter().all(|c| orthogonal(chain, w, c))).collect();
        let predicted = dual.members(DEFAULT_CAP).map_err(|e| e.to_string())?;
        let predicted: HashSet<&Vec<RElem>> = predicted.words.iter().collect();
        ensure(predicted.len() == brute.len() && predicted.iter().all(|w| brute.contains(*w)), || {
            format!("dual of {code} is not the orthogonal complement")
        })?;
        let sum = code.log_cardinality() + dual.log_cardinality();
        ensure(sum == 12, || format!("{code}: exponent sum {sum}"))?;
        count += 1;
    }
    ensure(count == 25, || format!("{count} codes"))?;
    Ok("25 duals equal brute-force complements, exponent sums 12".into())
}

fn c5() -> Outcome {
    let a = self_dual_check(&ring(3, 1, 1, 1, 2, 1))?;
    let b = self_dual_check(&ring(3, 1, 1, 2, 2, 1))?;
    Ok(format!("unique self-dual <u> in the {a} and the {b}"))
}

/// Fields with q in {2,3,4,5,7,9}; every (n, s) with n p^s <= 50, α, β in {1, last element}.
fn matrix() -> Vec<(Arc<Field>, u32, usize, u64, u64)> {
    let mut cases = Vec::new();
    for (p, m) in [(2u32, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let field = Field::new(p, m, None).unwrap();
        let last = field.order() - 1;
        let picks: Vec<u64> = if last == 1 { vec![1] } else { vec![1, last] };
        let mut s = 1;
        while (p as usize).pow(s) <= 50 {
            let ps = (p as usize).pow(s);
            for n in (1..=50 / ps).filter(|n| n % p as usize != 0) {
                for &a in &picks {
                    for &b in &picks {
                        cases.push((field.clone(), s, n, a, b));
                    }
                }
            }
            s += 1;
        }
    }
    cases
}

fn c6() -> Outcome {
    let cases = matrix();
    ensure(cases.len() >= 30, || format!("only {} cases", cases.len()))?;
    for (field, s, n, a, b) in &cases {
        let (alpha, beta) = (field.element(*a), field.element(*b));
        let r = AmbientRing::build(field, *s, *n, &alpha, &beta).map_err(|e| e.to_string())?;
        let label = format!("q={} s={s} n={n} alpha={a} beta={b}", field.order());
        let chain = r.chain_ring();
        let big_n = r.length();
        let mut target = vec![chain.zero(); big_n + 1];
        target[0] = chain.neg(&chain.elem(alpha.clone(), beta.clone()));
        target[big_n] = chain.one();
        let target = RPoly::new(chain.clone(), target);
        let product = r.factors().iter().fold(RPoly::one(chain), |acc, fd| &acc * &fd.h);
        ensure(product == target, || format!("{label}: product of h_j is {product}"))?;
        let mut total = RPoly::zero(chain);
        for (j, fj) in r.factors().iter().enumerate() {
            ensure(fj.f.gcd(&fj.g).map_err(|e| e.to_string())?.is_one(), || format!("{label}: gcd(f_{j}, g_{j}) != 1"))?;
            ensure(r.mul(&fj.eps, &fj.eps) == fj.eps, || format!("{label}: eps_{j} is not idempotent"))?;
            for (l, fl) in r.factors().iter().enumerate().skip(j + 1) {
                ensure(r.mul(&fj.eps, &fl.eps).is_zero(), || format!("{label}: eps_{j} eps_{l} != 0"))?;
            }
            total = &total + &fj.eps;
        }
        ensure(r.reduce(&total) == RPoly::one(chain), || format!("{label}: idempotents do not sum to 1"))?;
    }
    Ok(format!("{} parameter sets exact", cases.len()))
}

fn c7() -> Outcome {
    let mut checked = 0;
    for (p, m) in [(2u32, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let field = Field::new(p, m, None).unwrap();
        for n in 2..=8 {
            for a in field.elements().filter(|a| !a.is_zero()) {
                let by_order = binomial_irreducible(&field, n, &a).map_err(|e| e.to_string())?;
                let fac = Poly::binomial(&field, n, &a).factorize().map_err(|e| e.to_string())?;
                let by_factoring = fac.factors.len() == 1 && fac.factors[0].1 == 1;
                ensure(by_order == by_factoring, || {
                    format!("q={} n={n} a={}: order criterion {by_order}, factorization {by_factoring}", field.order(), field.format_elem(&a))
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} binomials, 0 disagreements"))
}

fn c8() -> Outcome {
    let mut cfg = RunConfig::new(Command::Codes, 2, 1, 1, 3, vec![1], vec![1]);
    cfg.output = OutputFormat::Json;
    let a = cli::run(&cfg);
    let b = cli::run(&cfg);
    ensure(a.exit_code == 0, || a.stderr.clone())?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("code count, reducible case", c1),
        ("chain structure, n = 1", c2),
        ("chain structure, n = 2", c3),
        ("dual formula", c4),
        ("self-dual uniqueness", c5),
        ("factor lifting exactness", c6),
        ("binomial irreducibility agreement", c7),
        ("determinism", c8),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
