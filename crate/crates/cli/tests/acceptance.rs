//! Acceptance suite: one pass/fail line per criterion, with timings.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use quasihopf::algebra::verify_associative_unital;
use quasihopf::corpus;
use quasihopf::linalg::{CoordVector, Field, LinearMap};
use quasihopf::quasi_hopf::{compute_pq, verify_all, verify_lemma3, verify_pq_identities};
use quasihopf::representations::{
    bv_construction, check_comodule_algebra_morphism, check_module_algebra_morphism, i0_map, lemma1_check,
    smash_product, verify_comodule_algebra, verify_module_algebra, ComoduleAlgebra, ModuleAlgebra,
};
use quasihopf::structure_theorem::{
    bimodule_from_comodule, decompose, projection_e, roundtrip, verify_e_properties, vh_bimodule,
};
use quasihopf_cli::commands::{self, canonical, DecomposeArgs};
use quasihopf_cli::corpus_files::{MALFORMED, VIOLATIONS};
use quasihopf_cli::format::read_document;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [Field; 2] = [Field::Rational, Field::Prime(7)];

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<T, String> {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?} (limit {limit:?})"))?;
    Ok(out)
}

fn corpus_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

fn is_hopf(name: &str) -> bool {
    name != "h2"
}

fn axiom_suite() -> Outcome {
    let one = Duration::from_secs(1);
    for field in FIELDS {
        for (name, h) in corpus::all(field) {
            let report = within(one, name, || verify_all(&h))?;
            ensure(report.passed(), || format!("{name} over {field}:\n{report}"))?;
        }
    }
    for f in VIOLATIONS {
        let report = within(one, f.path, || commands::verify(&corpus_path(f.path), None, None))?;
        ensure(report.exit_code() == 1, || format!("{} exits {}", f.path, report.exit_code()))?;
        ensure(report.failed_axioms().iter().any(|a| a == f.axiom), || {
            format!("{} does not name {}", f.path, f.axiom)
        })?;
    }
    Ok(())
}

fn identity_suite() -> Outcome {
    for field in FIELDS {
        for (name, h) in corpus::all(field) {
            within(Duration::from_secs(1), name, || -> Outcome {
                let pq = compute_pq(&h).map_err(|e| e.to_string())?;
                let ids = verify_pq_identities(&h, &pq);
                ensure(ids.passed(), || format!("{name}:\n{ids}"))?;
                for axiom in ["(unu)", "(trei)", "(cucu)"] {
                    ensure(ids.has_checked(axiom), || format!("{name}: {axiom} not checked"))?;
                }
                let l3 = verify_lemma3(&h).map_err(|e| e.to_string())?;
                ensure(l3.passed(), || format!("{name}:\n{l3}"))?;
                if is_hopf(name) {
                    let one = h.unit_tensor(2);
                    ensure(pq.p == one && pq.q == one, || format!("{name}: p_R, q_R differ from 1⊗1"))?;
                }
                Ok(())
            })??;
        }
    }
    Ok(())
}

fn smash_suite() -> Outcome {
    within(Duration::from_secs(5), "smash suite", || -> Outcome {
        for field in FIELDS {
            for (name, ma) in corpus::module_algebras(field) {
                let (b, j) = smash_product(&ma).map_err(|e| format!("{name}: {e}"))?;
                let assoc = verify_associative_unital(b.algebra());
                ensure(assoc.passed(), || format!("{name}:\n{assoc}"))?;
                let rca = verify_comodule_algebra(&b);
                ensure(rca.passed(), || format!("{name}:\n{rca}"))?;
                for axiom in ["(rca1)", "(rca2)", "(rca3)", "(rca4)"] {
                    ensure(rca.has_checked(axiom), || format!("{name}: {axiom} not checked"))?;
                }
                let regular = ComoduleAlgebra::regular(ma.hopf().clone());
                let jm = check_comodule_algebra_morphism(&j, &regular, &b).map_err(|e| e.to_string())?;
                ensure(jm.passed(), || format!("{name}: j\n{jm}"))?;
                let lemma = lemma1_check(&ma).map_err(|e| e.to_string())?;
                ensure(lemma.consistent() && lemma.associativity.passed(), || format!("{name}: (lulu)"))?;
            }
        }
        // the equivalence also has to see a failing side
        let h = Arc::new(corpus::cyclic_group(Field::Rational, 2));
        let adj = corpus::adjoint_module_algebra(h.clone()).map_err(|e| e.to_string())?;
        // g acts by -id, 1 still acts trivially
        let d = adj.dim();
        let minus = LinearMap::from_fn(Field::Rational, d, 2 * d, |r, c| {
            let x = adj.action().get(r, c).clone();
            if c >= d {
                -x
            } else {
                x
            }
        });
        let broken = ModuleAlgebra::new(h, adj.carrier().clone(), minus).map_err(|e| e.to_string())?;
        let lemma = lemma1_check(&broken).map_err(|e| e.to_string())?;
        ensure(lemma.consistent() && !lemma.associativity.passed(), || "negated action: (lulu)".into())
    })?
}

fn e_property_suite() -> Outcome {
    let tags = ["(E1)", "(E2)", "(E3)", "(E4)", "(E5)", "(E6)", "(E7)", "(coinv)"];
    for field in FIELDS {
        for (name, ma) in corpus::module_algebras(field) {
            let h = ma.hopf().clone();
            let (b, j) = smash_product(&ma).map_err(|e| e.to_string())?;
            let regular = ComoduleAlgebra::regular(h.clone());
            let id = LinearMap::identity(field, h.dim());
            let bimodules = [
                ("v⊗h", vh_bimodule(ma.module())),
                ("A#H", bimodule_from_comodule(&b, &j)),
                ("H", bimodule_from_comodule(&regular, &id)),
            ];
            for (kind, m) in bimodules {
                let m = m.map_err(|e| format!("{name} {kind}: {e}"))?;
                let e = projection_e(&m).map_err(|e| e.to_string())?;
                let report = verify_e_properties(&m, &e);
                ensure(report.passed(), || format!("{name} {kind}:\n{report}"))?;
                for t in tags {
                    ensure(report.has_checked(t), || format!("{name} {kind}: {t} not checked"))?;
                }
            }
            let m = bimodule_from_comodule(&b, &j).map_err(|e| e.to_string())?;
            let e = projection_e(&m).map_err(|e| e.to_string())?;
            ensure(&e.apply(b.algebra().unit()) == b.algebra().unit(), || format!("{name}: E(1) ≠ 1"))?;
            for a in 0..ma.dim() {
                for k in 0..h.dim() {
                    let lhs = e.column(a * h.dim() + k);
                    let a1 = CoordVector::basis(field, ma.dim(), a).tensor(h.one());
                    let rhs = a1.scale(&h.counit_of(&h.basis(k)));
                    ensure(lhs == rhs, || format!("{name}: E(a{a}#h{k}) ≠ ε(h)(a#1)"))?;
                }
            }
        }
    }
    Ok(())
}

fn structure_theorem() -> Outcome {
    for field in FIELDS {
        for (name, ma) in corpus::module_algebras(field) {
            let limit = Duration::from_secs(30);
            let out = within(limit, &name, || roundtrip(&ma))?.map_err(|e| format!("{name}: {e}"))?;
            ensure(out.report.passed(), || format!("{name}:\n{}", out.report))?;
            let d = &out.decomposition;
            ensure(d.module_algebra.dim() == ma.dim(), || format!("{name}: dim A"))?;
            ensure(d.psi.compose(&d.psi_inv).is_identity() && d.psi_inv.compose(&d.psi).is_identity(), || {
                format!("{name}: Ψ, Ψ⁻¹ are not inverse")
            })?;
            let (b, j) = smash_product(&ma).map_err(|e| e.to_string())?;
            let comod = check_comodule_algebra_morphism(&d.psi, &d.smash, &b).map_err(|e| e.to_string())?;
            ensure(comod.passed(), || format!("{name}: Ψ\n{comod}"))?;
            ensure(d.psi.compose(&d.j) == j, || format!("{name}: Ψ∘j ≠ v"))?;
        }
    }
    let sweedler = corpus_path("module_algebras/sweedler_id.json");
    let report = within(Duration::from_secs(30), "roundtrip sweedler", || {
        commands::roundtrip(&sweedler, &corpus_path("hopf/sweedler.qha"), None)
    })?;
    ensure(report.exit_code() == 0, || report.human())
}

fn theta_suite() -> Outcome {
    for field in FIELDS {
        for (name, ma) in corpus::module_algebras(field) {
            let (b, j) = smash_product(&ma).map_err(|e| e.to_string())?;
            let d = decompose(&b, &j).map_err(|e| format!("{name}: {e}"))?;
            let i0 = i0_map(&d.module_algebra).map_err(|e| e.to_string())?;
            ensure(d.psi.compose(&i0) == d.theta, || format!("{name}: θ ≠ Ψ∘i_0"))?;
            ensure(d.theta.rank() == d.module_algebra.dim(), || format!("{name}: rank θ"))?;
            let bv = bv_construction(b.algebra(), &j, ma.hopf()).map_err(|e| e.to_string())?;
            let mult = check_module_algebra_morphism(&d.theta, &d.module_algebra, &bv).map_err(|e| e.to_string())?;
            ensure(mult.passed(), || format!("{name}: θ into B^v\n{mult}"))?;
            if is_hopf(name.split('/').next().unwrap_or_default()) {
                ensure(d.theta == d.coinvariants.inclusion(), || format!("{name}: θ is not the inclusion"))?;
            }
        }
    }
    Ok(())
}

/// `L·U` with unit triangular factors and entries in `{-1, 0, 1}`: random,
/// invertible, and with an integral inverse.
fn random_unimodular(field: Field, n: usize, rng: &mut ChaCha8Rng) -> LinearMap {
    let mut entry = |keep: bool| if keep { field.int(rng.gen_range(-1..=1)) } else { field.zero() };
    let l = LinearMap::from_fn(field, n, n, |r, c| if r == c { field.one() } else { entry(r > c) });
    let u = LinearMap::from_fn(field, n, n, |r, c| if r == c { field.one() } else { entry(r < c) });
    l.compose(&u)
}

fn transport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for field in FIELDS {
        for (name, ma) in corpus::module_algebras(field) {
            let (b, j) = smash_product(&ma).map_err(|e| e.to_string())?;
            let n = b.dim();
            let p = loop {
                let p = random_unimodular(field, n, &mut rng);
                if n == 1 || !p.is_identity() {
                    break p;
                }
            };
            let (moved, p_inv) = b.transport(&p).map_err(|e| e.to_string())?;
            let d = decompose(&moved, &p_inv.compose(&j)).map_err(|e| format!("{name}: {e}"))?;
            ensure(d.module_algebra.dim() == ma.dim(), || format!("{name} over {field}: dim A"))?;
            let report = verify_module_algebra(&d.module_algebra);
            ensure(report.passed(), || format!("{name}:\n{report}"))?;
        }
    }
    Ok(())
}

fn reencodes(path: &Path) -> Outcome {
    let r = commands::verify(path, None, None);
    ensure(r.exit_code() == 0, || format!("{}:\n{}", path.display(), r.human()))?;
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let doc = read_document(path).map_err(|e| e.to_string())?;
    let again = canonical(&doc, doc.ctx(None).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(again.to_pretty() == text, || format!("{} changes on re-encoding", path.display()))
}

fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (name, _) in corpus::all(Field::Rational) {
        let h = corpus_path(&format!("hopf/{name}.qha"));
        reencodes(&h)?;
        for a in ["k", "id"] {
            let a_path = corpus_path(&format!("module_algebras/{name}_{a}.json"));
            reencodes(&a_path)?;
            let out = dir.path().join(format!("{name}_{a}"));
            let r = commands::smash(&a_path, &h, &out.join("smash"), None);
            ensure(r.exit_code() == 0, || r.human())?;
            let args = DecomposeArgs {
                b: out.join("smash/smash.json"),
                h: h.clone(),
                v: out.join("smash/j.json"),
                out: out.join("dec"),
                expect: Some(a_path.clone()),
            };
            let r = commands::decompose(&args, None, false);
            ensure(r.exit_code() == 0, || r.human())?;
            for f in ["smash/smash.json", "smash/j.json", "dec/A.json", "dec/psi.json", "dec/theta.json"] {
                reencodes(&out.join(f))?;
            }
        }
    }
    let run = |p: &Path| -> Result<i32, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_qhopf"))
            .arg("verify")
            .arg(p)
            .env_remove("QHOPF_FIELD")
            .output()
            .map_err(|e| e.to_string())?;
        out.status.code().ok_or_else(|| "killed by a signal".to_string())
    };
    ensure(run(&corpus_path("hopf/h2.qha"))? == 0, || "pass fixture".into())?;
    for f in VIOLATIONS {
        ensure(run(&corpus_path(f.path))? == 1, || format!("{} should exit 1", f.path))?;
    }
    for f in MALFORMED {
        ensure(run(&corpus_path(f))? == 2, || format!("{f} should exit 2"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("axiom suite", axiom_suite),
        ("identity suite", identity_suite),
        ("smash suite", smash_suite),
        ("E-property suite", e_property_suite),
        ("structure theorem", structure_theorem),
        ("theta suite", theta_suite),
        ("transport of structure", transport),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  {name:<24} {secs:>7.3}s"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<24} {secs:>7.3}s  {}", msg.lines().next().unwrap_or_default());
                for line in msg.lines().skip(1).take(20) {
                    println!("      {line}");
                }
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
