//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vdecomp_core::{
    alpha_p, elementary_divisor_valuations, enumerate_std, split, verify_product_formula, Character, Engine, Field,
    Matrix, ModularSystem, Multicomposition, PLocal, PSplit, ProductContext, Rational, Side, VPolynomial, Valuation,
    ValuationProfile, VerificationReport,
};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `(n, r)` grid shared by several criteria.
const GRID: [(usize, usize); 8] = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (1, 3), (2, 3)];

/// The two p-local systems, `Q̂_k = (k-1)p`, `q̂ = 1`, cut to `r` parameters.
fn system(p: u64, r: usize) -> PLocal {
    let qs: Vec<i64> = (0..r).map(|k| (k as u64 * p) as i64).collect();
    PLocal::with_ints(p, 1, &qs).expect("valid system")
}

fn engine(n: usize, p: u64, r: usize) -> Result<Engine<PLocal>, String> {
    Engine::with_default_bounds(n, system(p, r)).map_err(err)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn criterion_1() -> Check {
    let mut checked = 0;
    for (n, r) in GRID {
        for p in [2, 3] {
            let e = engine(n, p, r)?;
            let total: usize = e.lambda_plus().iter().map(|l| enumerate_std(l).len().pow(2)).sum();
            let dim = r.pow(n as u32) * factorial(n);
            ensure!(total == dim, "n={n} r={r}: Σ|Std|² = {total}, expected {dim}");
            ensure!(e.algebra().dim() == dim, "n={n} r={r}: algebra has dimension {}", e.algebra().dim());
            let t = e.murphy().map_err(err)?.transition();
            let id = Matrix::<Rational>::identity(dim);
            ensure!(t.matrix.rank() == dim, "n={n} r={r}: transition has rank {}", t.matrix.rank());
            ensure!(t.matrix.mul(&t.inverse) == id, "n={n} r={r}: M·M⁻¹ ≠ 1");
            ensure!(t.inverse.mul(&t.matrix) == id, "n={n} r={r}: M⁻¹·M ≠ 1");
            checked += 1;
        }
    }
    Ok(format!("{checked} configurations"))
}

fn criterion_2() -> Check {
    let mut shapes = 0;
    for (n, r) in GRID {
        for p in [2, 3] {
            let e = engine(n, p, r)?;
            for l in e.lambda_plus() {
                let m = e.omega_block_matches_specht(l).map_err(err)?;
                ensure!(m == Some(true), "n={n} r={r} p={p} λ={l}: ω block vs Specht form gives {m:?}");
                shapes += 1;
            }
        }
    }
    Ok(format!("{shapes} shapes"))
}

fn criterion_3() -> Check {
    let mut pairs = 0;
    for (n, r) in GRID {
        for p in [2, 3] {
            let e = engine(n, p, r)?;
            for l in e.lambda_plus() {
                let prof = e.jantzen_profile(l).map_err(err)?;
                ensure!(!prof.k_fiber_singular, "n={n} r={r} p={p} λ={l}: K-fiber is not semisimple");
                let mut sum = Character::new();
                for i in 0..=prof.cut {
                    for (mu, c) in e.layer_character(l, i).map_err(err)?.iter() {
                        sum.add(mu, c);
                    }
                }
                let weyl = e.char_weyl(l).map_err(err)?;
                ensure!(sum == weyl, "n={n} r={r} p={p} λ={l}: Σ layers {sum} ≠ ch W = {weyl}");
                let solved = e.decompose_character(&weyl).map_err(err)?;
                for m in e.lambda_plus() {
                    let d = e.v_decomp(l, m).map_err(err)?;
                    let tag = format!("n={n} r={r} p={p} d[{l}, {m}] = {d}");
                    if l == m {
                        ensure!(d == VPolynomial::one(), "{tag}, expected 1");
                    }
                    ensure!(d.coeff(0) == u64::from(l == m), "{tag}: constant term is not δ");
                    // Composition factors of W^λ have weights below λ.
                    ensure!(d.is_zero() || l.dominates(m), "{tag}: nonzero but λ does not dominate μ");
                    let at_one = solved.get(m).copied().unwrap_or(0) as u64;
                    ensure!(d.eval_one() == at_one, "{tag}: value at v=1 differs from d = {at_one}");
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn criterion_4() -> Check {
    let mut shapes = 0;
    for (n, r) in GRID {
        for p in [2, 3] {
            let e = engine(n, p, r)?;
            let omega = e.omega().ok_or("ω missing with default bounds")?;
            for l in e.lambda_plus() {
                let specht = elementary_divisor_valuations(e.modular_system(), &*e.specht_gram(l).map_err(err)?)
                    .map_err(err)?;
                let weyl = e.jantzen_profile(l).map_err(err)?;
                let block = weyl.block(&omega).ok_or_else(|| format!("λ={l}: no ω block"))?;
                ensure!(&specht == block, "n={n} r={r} p={p} λ={l}: Specht {specht} vs ω block {block}");
                ensure!(
                    e.specht_jantzen_valuations(l).map_err(err)? == specht,
                    "n={n} r={r} p={p} λ={l}: specht_jantzen_valuations disagrees"
                );
                shapes += 1;
            }
        }
    }
    Ok(format!("{shapes} shapes"))
}

/// Direct engine, product context and independently built component engines
/// for `r = 2`, split `(1,1)`, `m = (n, n)`.
struct SplitRun {
    n: usize,
    p: u64,
    direct: Arc<Engine<PLocal>>,
    ctx: ProductContext<PLocal>,
    report: VerificationReport,
    /// Component engines keyed by `(k, n_k)`, built from `restrict` alone.
    parts: BTreeMap<(usize, usize), Engine<PLocal>>,
    split: PSplit,
}

impl SplitRun {
    fn new(n: usize, p: u64) -> Result<Self, String> {
        let split = PSplit::new(vec![1, 1]).map_err(err)?;
        let ms = system(p, 2);
        let report = verify_product_formula(n, &[n, n], &split, ms.clone()).map_err(err)?;
        let direct = Arc::new(Engine::new(n, &[n, n], ms.clone()).map_err(err)?);
        let ctx = ProductContext::new(direct.clone(), split.clone()).map_err(err)?;
        let mut parts = BTreeMap::new();
        for k in 0..2 {
            for nk in 0..=n {
                parts.insert((k, nk), Engine::new(nk, &[n], ms.restrict(k, 1).map_err(err)?).map_err(err)?);
            }
        }
        Ok(SplitRun { n, p, direct, ctx, report, parts, split })
    }

    fn pieces(&self, l: &Multicomposition) -> Result<Vec<Multicomposition>, String> {
        split(l, &self.split).map_err(err)
    }

    fn part(&self, k: usize, piece: &Multicomposition) -> &Engine<PLocal> {
        &self.parts[&(k, piece.size())]
    }

    fn same_alpha(&self, l: &Multicomposition, m: &Multicomposition) -> Result<bool, String> {
        Ok(alpha_p(l, &self.split).map_err(err)? == alpha_p(m, &self.split).map_err(err)?)
    }

    fn label(&self) -> String {
        format!("n={} p={}", self.n, self.p)
    }
}

fn split_runs() -> Result<Vec<SplitRun>, String> {
    let mut runs = Vec::new();
    for p in [2, 3] {
        for n in 0..=3 {
            runs.push(SplitRun::new(n, p)?);
        }
    }
    Ok(runs)
}

fn criterion_5(runs: &[SplitRun]) -> Check {
    let mut pairs = 0;
    let mut nonconstant_schur = false;
    let mut nonconstant_hecke = false;
    for run in runs {
        let s = &run.report.summary;
        ensure!(s.schur_fail == 0, "{}: {} Schur-side failures", run.label(), s.schur_fail);
        ensure!(s.tensor_fail == 0, "{}: {} tensor failures", run.label(), s.tensor_fail);
        nonconstant_schur |= s.schur_nonconstant > 0;
        nonconstant_hecke |= s.hecke_nonconstant > 0;
        let d = &run.direct;
        for l in d.lambda_plus() {
            for m in d.lambda_plus() {
                if !run.same_alpha(l, m)? {
                    continue;
                }
                let direct = d.v_decomp(l, m).map_err(err)?;
                let mut product = VPolynomial::one();
                for (k, (lk, mk)) in run.pieces(l)?.iter().zip(run.pieces(m)?).enumerate() {
                    product = product.mul(&run.part(k, lk).v_decomp(lk, &mk).map_err(err)?);
                }
                ensure!(direct == product, "{}: d[{l}, {m}] = {direct}, product {product}", run.label());
                let rec = run
                    .report
                    .records
                    .iter()
                    .find(|x| x.side == Side::Schur && x.lambda == l.to_string() && x.mu == m.to_string())
                    .ok_or_else(|| format!("{}: no record for ({l}, {m})", run.label()))?;
                ensure!(rec.pass && rec.direct == direct, "{}: report disagrees at ({l}, {m})", run.label());
                pairs += 1;
            }
        }
    }
    ensure!(nonconstant_schur, "no nonconstant Schur-side polynomial on the grid");
    ensure!(nonconstant_hecke, "no nonconstant Hecke-side polynomial on the grid");
    Ok(format!("{} configurations, {pairs} pairs, nonconstant on both sides", runs.len()))
}

fn criterion_6(runs: &[SplitRun]) -> Check {
    let mut pairs = 0;
    for run in runs {
        let s = &run.report.summary;
        ensure!(s.hecke_fail == 0, "{}: {} Hecke-side failures", run.label(), s.hecke_fail);
        let d = &run.direct;
        let mut expected = 0;
        for l in d.lambda_plus() {
            for m in d.lambda_plus() {
                if !run.same_alpha(l, m)? {
                    continue;
                }
                let ms = run.pieces(m)?;
                let mut applicable = d.is_d_nonzero(m).map_err(err)?;
                for (k, mk) in ms.iter().enumerate() {
                    applicable &= run.part(k, mk).is_d_nonzero(mk).map_err(err)?;
                }
                if !applicable {
                    continue;
                }
                expected += 1;
                let direct = d.v_decomp_hecke(l, m).map_err(err)?;
                let mut product = VPolynomial::one();
                for (k, (lk, mk)) in run.pieces(l)?.iter().zip(&ms).enumerate() {
                    product = product.mul(&run.part(k, lk).v_decomp_hecke(lk, mk).map_err(err)?);
                }
                ensure!(direct == product, "{}: d^H[{l}, {m}] = {direct}, product {product}", run.label());
                ensure!(
                    direct == d.v_decomp(l, m).map_err(err)?,
                    "{}: Hecke and Schur sides differ at ({l}, {m})",
                    run.label()
                );
            }
        }
        ensure!(
            s.hecke_pass == expected,
            "{}: report checked {} Hecke pairs, expected {expected}",
            run.label(),
            s.hecke_pass
        );
        pairs += expected;
    }
    ensure!(pairs > 0, "no Hecke-side pair satisfied the hypotheses");
    Ok(format!("{pairs} pairs"))
}

fn random_matrix(rng: &mut ChaCha8Rng, p: i64) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=4);
    let cols = rows;
    let mut m: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| rng.gen_range(-6..=6) * p.pow(rng.gen_range(0..=2)))
                .collect()
        })
        .collect();
    if rows > 1 && rng.gen_bool(0.15) {
        let (a, b) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
        m[a] = m[b].iter().map(|x| x * p).collect();
    }
    m
}

fn to_matrix(m: &[Vec<i64>]) -> Matrix<Rational> {
    Matrix::from_rows(m.iter().map(|r| r.iter().map(|&x| Rational::from_i64(x)).collect()).collect())
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn vp(mut x: i64, p: i64) -> i64 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Elementary-divisor valuations from determinantal divisors: the `k`-th is
/// `min ν(k×k minors) − min ν((k−1)×(k−1) minors)`, infinite past the rank.
fn determinantal_profile(m: &[Vec<i64>], p: i64) -> ValuationProfile {
    let rows = m.len();
    let cols = m[0].len();
    let size = rows.min(cols);
    let mut prev = 0;
    let mut out = Vec::new();
    for k in 1..=size {
        let mut best: Option<i64> = None;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                let d = det(&sub);
                if d != 0 {
                    let v = vp(d, p);
                    best = Some(best.map_or(v, |b: i64| b.min(v)));
                }
            }
        }
        match best {
            Some(v) => {
                out.push(Valuation::Finite(v - prev));
                prev = v;
            }
            None => {
                out.extend(std::iter::repeat_n(Valuation::Infinity, size - k + 1));
                break;
            }
        }
    }
    ValuationProfile::new(out)
}

fn criterion_7(runs: &[SplitRun]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for trial in 0..200 {
        let p = if trial % 2 == 0 { 2 } else { 3 };
        let ms = PLocal::with_ints(p as u64, 1, &[0]).map_err(err)?;
        let (a, b) = (random_matrix(&mut rng, p), random_matrix(&mut rng, p));
        let pa = elementary_divisor_valuations(&ms, &to_matrix(&a)).map_err(err)?;
        let pb = elementary_divisor_valuations(&ms, &to_matrix(&b)).map_err(err)?;
        ensure!(pa == determinantal_profile(&a, p), "trial {trial}: profile of {a:?} is {pa}, minors disagree");
        ensure!(pb == determinantal_profile(&b, p), "trial {trial}: profile of {b:?} is {pb}, minors disagree");
        let pk = elementary_divisor_valuations(&ms, &to_matrix(&a).kronecker(&to_matrix(&b))).map_err(err)?;
        ensure!(pk == pa.minkowski_sum(&pb), "trial {trial}: {pk} ≠ {pa} ⊕ {pb}");
    }
    let mut blocks = 0;
    for run in runs {
        let ms = run.direct.modular_system();
        for l in run.direct.lambda_plus() {
            let ls = run.pieces(l)?;
            for m in run.direct.lambda() {
                if !run.same_alpha(l, m)? {
                    continue;
                }
                let block = run.ctx.barz_gram_block(l, m).map_err(err)?;
                if block.tableaux.is_empty() {
                    continue;
                }
                let got = elementary_divisor_valuations(ms, &block.gram).map_err(err)?;
                let mut expected = ValuationProfile::new(vec![Valuation::Finite(0)]);
                for (k, (lk, mk)) in ls.iter().zip(run.pieces(m)?).enumerate() {
                    let prof = run.part(k, lk).jantzen_profile(lk).map_err(err)?;
                    let p = prof.block(&mk).ok_or_else(|| format!("{}: no block {mk} in W^{lk}", run.label()))?;
                    expected = expected.minkowski_sum(p);
                }
                ensure!(got == expected, "{}: barZ block ({l}, {m}) has {got}, expected {expected}", run.label());
                blocks += 1;
            }
        }
    }
    Ok(format!("200 random pairs, {blocks} barZ blocks"))
}

fn criterion_8() -> Check {
    let generic = PLocal::with_ints(5, 1, &[7, -4]).map_err(err)?;
    let e = Engine::with_default_bounds(1, generic).map_err(err)?;
    let l = Multicomposition::parse("1|", &[1, 1]).map_err(err)?;
    let gram = e.specht_gram(&l).map_err(err)?;
    ensure!(*gram == Matrix::from_rows(vec![vec![Rational::from_i64(11)]]), "⟨m,m⟩ = {gram:?}, expected Q1−Q2 = 11");
    let omega = e.omega().ok_or("no ω")?;
    let weyl = e.weyl_gram(&l).map_err(err)?;
    let block = weyl.block(&omega).ok_or("no ω block")?;
    ensure!(block.gram == *gram, "ω block {:?} differs from Q1−Q2", block.gram);

    let e = engine(1, 2, 2)?;
    let mu = Multicomposition::parse("|1", &[1, 1]).map_err(err)?;
    let d = e.v_decomp(&l, &mu).map_err(err)?;
    ensure!(d == VPolynomial::new(vec![0, 1]), "d[1|, |1](v) = {d}, expected v");

    let e = engine(2, 2, 1)?;
    let two = Multicomposition::parse("2", &[2]).map_err(err)?;
    let one_one = Multicomposition::parse("1,1", &[2]).map_err(err)?;
    let d = e.v_decomp(&two, &one_one).map_err(err)?;
    ensure!(d == VPolynomial::new(vec![0, 1]), "d[(2), (1,1)](v) = {d}, expected v");
    Ok("⟨m,m⟩ = Q1−Q2, d = v, d = v".into())
}

fn cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let code = vdecomp_cli::run(std::iter::once("vdecomp").chain(args.iter().copied()), &mut out, &mut errs);
    ensure!(code == 0, "{args:?} exited {code}: {}", String::from_utf8_lossy(&errs));
    String::from_utf8(out).map_err(err)
}

fn criterion_9() -> Check {
    let configs: [&[&str]; 3] = [
        &["--n", "3", "--r", "2", "--Qhat", "0,2", "--p", "2"],
        &["--n", "2", "--r", "3", "--Qhat", "0,3,6", "--p", "3"],
        &["--n", "2", "--r", "2", "--system", "x-adic"],
    ];
    let mut artifacts = 0;
    for cfg in configs {
        for fmt in ["json", "csv", "latex"] {
            let mut args = vec!["vdecomp"];
            args.extend_from_slice(cfg);
            args.extend(["--output", fmt]);
            let first = cli(&args)?;
            let second = cli(&args)?;
            ensure!(first == second, "{args:?}: two uncached runs differ");
            let dir = tempfile::tempdir().map_err(err)?;
            let mut cached = args.clone();
            cached.extend(["--cache-dir", dir.path().to_str().ok_or("non-UTF-8 temp path")?]);
            let cold = cli(&cached)?;
            let warm = cli(&cached)?;
            ensure!(cold == first && warm == first, "{args:?}: cached output differs");
            artifacts += 1;
        }
    }
    Ok(format!("{artifacts} artifacts, each byte-identical over 4 runs"))
}

fn report(index: usize, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|panic| {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => {
            println!("criterion {index}: PASS ({detail}; {secs:.1}s)");
            true
        }
        Err(why) => {
            println!("criterion {index}: FAIL ({why}; {secs:.1}s)");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= report(1, criterion_1);
    ok &= report(2, criterion_2);
    ok &= report(3, criterion_3);
    ok &= report(4, criterion_4);
    let runs = split_runs();
    let with_runs = |f: fn(&[SplitRun]) -> Check| match &runs {
        Ok(r) => f(r),
        Err(e) => Err(format!("building the split runs failed: {e}")),
    };
    ok &= report(5, || with_runs(criterion_5));
    ok &= report(6, || with_runs(criterion_6));
    ok &= report(7, || with_runs(criterion_7));
    ok &= report(8, criterion_8);
    ok &= report(9, criterion_9);
    if !ok {
        std::process::exit(1);
    }
}
