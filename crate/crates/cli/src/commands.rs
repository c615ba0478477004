//! The four subcommands. Each returns a [`RunReport`]; the exit code and
//! status follow from its contents.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use quasihopf::algebra::{check_algebra_morphism, verify_associative_unital, BasedAlgebra};
use quasihopf::linalg::{CoordVector, Field, LinearMap};
use quasihopf::quasi_hopf::{compute_pq, verify_all, verify_lemma3, verify_pq_identities, QuasiHopfAlgebra};
use quasihopf::representations::{
    bv_construction, check_comodule_algebra_morphism, check_module_algebra_morphism, lemma1_check, smash_product,
    verify_comodule_algebra, verify_module_algebra, ComoduleAlgebra, ModuleAlgebra,
};
use quasihopf::structure_theorem::{decompose as decompose_b, roundtrip as roundtrip_a};
use quasihopf::VerificationReport;
use serde_json::json;

use crate::format::{
    comodule_algebra_document, encode_algebra, encode_dense, module_algebra_document, morphism_document, quasi_hopf_document,
    read_document, ComoduleAlgebraPayload, Ctx, Document, Kind, ModuleAlgebraPayload, MorphismKind,
    MorphismPayload, QuasiHopfPayload,
};
use crate::report::RunReport;
use crate::CliError;

type Res<T> = Result<T, CliError>;

/// A structure read from any non-morphism file.
#[derive(Clone, Debug)]
pub enum Structure {
    Algebra(BasedAlgebra),
    QuasiHopf(Arc<QuasiHopfAlgebra>),
    ModuleAlgebra(ModuleAlgebra),
    ComoduleAlgebra(ComoduleAlgebra),
}

impl Structure {
    pub fn hopf(&self) -> Option<&Arc<QuasiHopfAlgebra>> {
        match self {
            Structure::Algebra(_) => None,
            Structure::QuasiHopf(h) => Some(h),
            Structure::ModuleAlgebra(m) => Some(m.hopf()),
            Structure::ComoduleAlgebra(c) => Some(c.hopf()),
        }
    }

    pub fn algebra(&self) -> &BasedAlgebra {
        match self {
            Structure::Algebra(a) => a,
            Structure::QuasiHopf(h) => h.algebra(),
            Structure::ModuleAlgebra(m) => m.carrier(),
            Structure::ComoduleAlgebra(c) => c.algebra(),
        }
    }

    /// Comodule algebras as they are; `H` as its regular comodule algebra.
    pub fn comodule(&self) -> Res<ComoduleAlgebra> {
        match self {
            Structure::ComoduleAlgebra(c) => Ok(c.clone()),
            Structure::QuasiHopf(h) => Ok(ComoduleAlgebra::regular(h.clone())),
            _ => Err(CliError::schema("expected a comodule_algebra or quasi_hopf file")),
        }
    }
}

/// Reads a structure, resolving the working field on first use.
pub fn load_structure(doc: &Document, ctx: Ctx, hopf: Option<&Arc<QuasiHopfAlgebra>>) -> Res<Structure> {
    Ok(match doc.kind {
        Kind::Algebra => Structure::Algebra(ctx.algebra(&doc.payload()?)?),
        Kind::QuasiHopf => Structure::QuasiHopf(Arc::new(ctx.quasi_hopf(&doc.payload::<QuasiHopfPayload>()?)?)),
        Kind::ModuleAlgebra => Structure::ModuleAlgebra(ctx.module_algebra(&doc.payload::<ModuleAlgebraPayload>()?, hopf)?),
        Kind::ComoduleAlgebra => {
            Structure::ComoduleAlgebra(ctx.comodule_algebra(&doc.payload::<ComoduleAlgebraPayload>()?, hopf)?)
        }
        Kind::Morphism => return Err(CliError::schema("a morphism cannot be the source or target of a morphism")),
    })
}

/// Parses `doc` completely and writes it back; files this tool emits are
/// fixed points.
pub fn canonical(doc: &Document, ctx: Ctx) -> Res<Document> {
    if doc.kind != Kind::Morphism {
        return Ok(match load_structure(doc, ctx, None)? {
            Structure::Algebra(a) => Document::new(a.field(), Kind::Algebra, encode_algebra(&a)),
            Structure::QuasiHopf(h) => quasi_hopf_document(&h),
            Structure::ModuleAlgebra(ma) => module_algebra_document(&ma),
            Structure::ComoduleAlgebra(ca) => comodule_algebra_document(&ca),
        });
    }
    let p: MorphismPayload = doc.payload()?;
    let nested = |d: Option<Box<Document>>| -> Res<Option<Document>> {
        d.map(|d| canonical(&d, d.nested_ctx(ctx)?)).transpose()
    };
    let matrix = ctx.matrix(&p.matrix)?;
    Ok(morphism_document(p.morphism_of, &matrix, nested(p.source)?, nested(p.target)?))
}

/// Tracks the field every file of one run is read over.
struct Session {
    field: Option<Field>,
}

impl Session {
    fn read(&mut self, path: &Path, kinds: &[Kind]) -> Res<(Document, Ctx)> {
        let doc = read_document(path)?;
        doc.expect_kind(kinds)?;
        let ctx = doc.ctx(self.field)?;
        self.field = Some(ctx.target);
        Ok((doc, ctx))
    }

    fn hopf(&mut self, path: &Path) -> Res<Arc<QuasiHopfAlgebra>> {
        let (doc, ctx) = self.read(path, &[Kind::QuasiHopf])?;
        Ok(Arc::new(ctx.quasi_hopf(&doc.payload()?)?))
    }
}

fn run(command: &str, field: Option<Field>, body: impl FnOnce(&mut RunReport, &mut Session) -> Res<()>) -> RunReport {
    let mut report = RunReport::new(command);
    let mut session = Session { field };
    if let Err(e) = body(&mut report, &mut session) {
        report.absorb(e);
    }
    if let Some(f) = session.field {
        report.info("field", f.to_string());
    }
    report
}

/// Every quasi-Hopf check: axioms, `p_R, q_R` identities and (lema3).
fn hopf_stages(report: &mut RunReport, h: &QuasiHopfAlgebra) -> Res<bool> {
    let axioms = report.timed("quasi_hopf", || verify_all(h));
    let mut ok = report.stage("quasi_hopf", axioms);
    if h.antipode_inv().is_none() {
        return Ok(false);
    }
    let pq = compute_pq(h)?;
    let ids = report.timed("pq", || verify_pq_identities(h, &pq));
    ok &= report.stage("pq", ids);
    let l3 = report.timed("lema3", || verify_lemma3(h))?;
    ok &= report.stage("lema3", l3);
    Ok(ok)
}

fn module_algebra_stages(report: &mut RunReport, ma: &ModuleAlgebra) -> Res<bool> {
    let mut ok = report.stage("module_algebra", verify_module_algebra(ma));
    let outcome = report.timed("lulu", || lemma1_check(ma))?;
    let mut lulu = VerificationReport::new();
    let flag = |b: bool| CoordVector::from_ints(Field::Rational, &[b as i64]);
    lulu.check("(lulu)", &[], &flag(outcome.consistent()), &flag(true));
    ok &= report.stage("smash_associativity", lulu);
    Ok(ok)
}

fn comodule_algebra_stages(report: &mut RunReport, ca: &ComoduleAlgebra) -> bool {
    let ok = report.stage("algebra", verify_associative_unital(ca.algebra()));
    ok & report.stage("comodule_algebra", verify_comodule_algebra(ca))
}

/// `qhopf verify FILE [-H HOPF]`.
pub fn verify(path: &Path, hopf_path: Option<&Path>, field: Option<Field>) -> RunReport {
    run("verify", field, |report, session| {
        let (doc, ctx) = session.read(path, &[Kind::Algebra, Kind::QuasiHopf, Kind::ModuleAlgebra, Kind::ComoduleAlgebra, Kind::Morphism])?;
        report.info("kind", serde_json::to_value(doc.kind).expect("kinds serialize"));
        let external = hopf_path.map(|p| session.hopf(p)).transpose()?;
        if doc.kind == Kind::Morphism {
            return verify_morphism(report, &doc, ctx, external.as_ref());
        }
        let s = load_structure(&doc, ctx, external.as_ref())?;
        report.info("dim", s.algebra().dim());
        match &s {
            Structure::Algebra(a) => {
                report.stage("algebra", verify_associative_unital(a));
            }
            Structure::QuasiHopf(h) => {
                hopf_stages(report, h)?;
            }
            Structure::ModuleAlgebra(ma) => {
                hopf_stages(report, ma.hopf())?;
                module_algebra_stages(report, ma)?;
            }
            Structure::ComoduleAlgebra(ca) => {
                hopf_stages(report, ca.hopf())?;
                comodule_algebra_stages(report, ca);
            }
        }
        Ok(())
    })
}

fn verify_morphism(report: &mut RunReport, doc: &Document, ctx: Ctx, hopf: Option<&Arc<QuasiHopfAlgebra>>) -> Res<()> {
    let p: MorphismPayload = doc.payload()?;
    let f = ctx.matrix(&p.matrix)?;
    report.info("morphism_of", serde_json::to_value(p.morphism_of).expect("kinds serialize"));
    let load = |d: &Option<Box<Document>>, h: Option<&Arc<QuasiHopfAlgebra>>| -> Res<Option<Structure>> {
        d.as_ref()
            .map(|d| load_structure(d, d.nested_ctx(ctx)?, h))
            .transpose()
    };
    let src = load(&p.source, hopf)?;
    let hopf = src.as_ref().and_then(|s| s.hopf().cloned()).or_else(|| hopf.cloned());
    let dst = load(&p.target, hopf.as_ref())?;
    let mut shape = VerificationReport::new();
    shape.touch("(shape)");
    for (s, dim, what) in [(&src, f.src_dim(), "source"), (&dst, f.dst_dim(), "target")] {
        if let Some(s) = s {
            if s.algebra().dim() != dim {
                return Err(CliError::schema(format!("matrix does not fit the {what} dimension {}", s.algebra().dim())));
            }
        }
    }
    report.stage("morphism", shape);
    if p.morphism_of == MorphismKind::Linear {
        return Ok(());
    }
    let (Some(src), Some(dst)) = (src, dst) else {
        return Err(CliError::schema("non-linear morphisms need embedded source and target"));
    };
    let checked = match p.morphism_of {
        MorphismKind::Linear => unreachable!(),
        MorphismKind::Algebra => check_algebra_morphism(&f, src.algebra(), dst.algebra())?,
        MorphismKind::ModuleAlgebra => match (&src, &dst) {
            (Structure::ModuleAlgebra(a), Structure::ModuleAlgebra(b)) => check_module_algebra_morphism(&f, a, b)?,
            _ => return Err(CliError::schema("module_algebra morphisms need module_algebra source and target")),
        },
        MorphismKind::ComoduleAlgebra => check_comodule_algebra_morphism(&f, &src.comodule()?, &dst.comodule()?)?,
    };
    report.stage("morphism", checked);
    Ok(())
}

fn loaded_inputs(
    report: &mut RunReport,
    session: &mut Session,
    a_path: &Path,
    h_path: &Path,
) -> Res<Option<ModuleAlgebra>> {
    let h = session.hopf(h_path)?;
    if !hopf_stages(report, &h)? {
        return Ok(None);
    }
    let (doc, ctx) = session.read(a_path, &[Kind::ModuleAlgebra])?;
    let ma = ctx.module_algebra(&doc.payload()?, Some(&h))?;
    if !module_algebra_stages(report, &ma)? {
        return Ok(None);
    }
    Ok(Some(ma))
}

fn create_dir(dir: &Path) -> Res<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// `qhopf smash -a A -H H -o OUT`: writes `OUT/smash.json` and `OUT/j.json`.
pub fn smash(a_path: &Path, h_path: &Path, out: &Path, field: Option<Field>) -> RunReport {
    run("smash", field, |report, session| {
        let Some(ma) = loaded_inputs(report, session, a_path, h_path)? else {
            return Ok(());
        };
        let (b, j) = report.timed("smash", || smash_product(&ma))?;
        let smash_doc = comodule_algebra_document(&b);
        let j_doc = morphism_document(
            MorphismKind::ComoduleAlgebra,
            &j,
            Some(quasi_hopf_document(ma.hopf())),
            Some(smash_doc.clone()),
        );
        create_dir(out)?;
        smash_doc.write(&out.join("smash.json"))?;
        j_doc.write(&out.join("j.json"))?;
        report.info("dim", b.dim());
        report.info("files", json!(["smash.json", "j.json"]));
        Ok(())
    })
}

/// Arguments of `qhopf decompose`.
#[derive(Clone, Debug)]
pub struct DecomposeArgs {
    pub b: PathBuf,
    pub h: PathBuf,
    pub v: PathBuf,
    pub out: PathBuf,
    pub expect: Option<PathBuf>,
}

/// `qhopf decompose -B B -H H -v V -o OUT`: writes `A.json`, `psi.json`,
/// `theta.json` and `report.json` into `OUT`.
pub fn decompose(args: &DecomposeArgs, field: Option<Field>, timings: bool) -> RunReport {
    let report = run("decompose", field, |report, session| {
        let h = session.hopf(&args.h)?;
        if !hopf_stages(report, &h)? {
            return Ok(());
        }
        let (doc, ctx) = session.read(&args.b, &[Kind::ComoduleAlgebra, Kind::QuasiHopf])?;
        let b = load_structure(&doc, ctx, Some(&h))?.comodule()?;
        if !comodule_algebra_stages(report, &b) {
            return Ok(());
        }
        let (vdoc, vctx) = session.read(&args.v, &[Kind::Morphism])?;
        let v = vctx.matrix(&vdoc.payload::<MorphismPayload>()?.matrix)?;
        let d = report.timed("decompose", || decompose_b(&b, &v))?;
        report.stage("decompose", d.report.clone());
        report.info("dim_A", d.module_algebra.dim());
        report.info("dim_B", b.dim());
        if let Some(expect) = &args.expect {
            let (edoc, ectx) = session.read(expect, &[Kind::ModuleAlgebra])?;
            let a0 = ectx.module_algebra(&edoc.payload()?, Some(&h))?;
            report.stage("expect", expected_iso(&a0, &d.coinvariants, &d.module_algebra)?);
        }
        let bv = bv_construction(b.algebra(), &v, &h)?;
        let a_doc = module_algebra_document(&d.module_algebra);
        let psi = morphism_document(
            MorphismKind::ComoduleAlgebra,
            &d.psi,
            Some(comodule_algebra_document(&d.smash)),
            Some(comodule_algebra_document(&b)),
        );
        let theta = morphism_document(
            MorphismKind::ModuleAlgebra,
            &d.theta,
            Some(a_doc.clone()),
            Some(module_algebra_document(&bv)),
        );
        create_dir(&args.out)?;
        a_doc.write(&args.out.join("A.json"))?;
        psi.write(&args.out.join("psi.json"))?;
        theta.write(&args.out.join("theta.json"))?;
        report.info("files", json!(["A.json", "psi.json", "theta.json", "report.json"]));
        Ok(())
    });
    if args.out.is_dir() {
        let path = args.out.join("report.json");
        let _ = std::fs::write(path, report.to_json_string(timings));
    }
    report
}

/// `a ↦ a⊗1`, read in the coinvariant basis, must be an isomorphism of
/// module algebras `A₀ → A`.
fn expected_iso(
    a0: &ModuleAlgebra,
    coinv: &quasihopf::structure_theorem::Coinvariants,
    a: &ModuleAlgebra,
) -> Res<VerificationReport> {
    let field = a0.field();
    let h = a0.hopf();
    let mut report = VerificationReport::new();
    let flag = |n: usize| CoordVector::from_ints(Field::Rational, &[n as i64]);
    if a0.dim() * h.dim() != coinv.subspace().ambient_dim() {
        report.check("(iso)", &[], &flag(a0.dim() * h.dim()), &flag(coinv.subspace().ambient_dim()));
        return Ok(report);
    }
    let mut columns = Vec::with_capacity(a0.dim());
    for i in 0..a0.dim() {
        let x = CoordVector::basis(field, a0.dim(), i).tensor(h.one());
        match coinv.coords(&x) {
            Ok(c) => columns.push(c),
            Err(_) => {
                report.fail("(iso)", &[i], x.clone(), CoordVector::zeros(field, x.dim()));
                return Ok(report);
            }
        }
    }
    let f = LinearMap::from_columns(field, a.dim(), &columns);
    report.merge(check_module_algebra_morphism(&f, a0, a)?);
    report.check("(iso)", &[], &flag(f.rank()), &flag(a.dim().max(a0.dim())));
    Ok(report)
}

/// `qhopf roundtrip -a A -H H`.
pub fn roundtrip(a_path: &Path, h_path: &Path, field: Option<Field>) -> RunReport {
    run("roundtrip", field, |report, session| {
        let Some(ma) = loaded_inputs(report, session, a_path, h_path)? else {
            return Ok(());
        };
        let out = report.timed("roundtrip", || roundtrip_a(&ma))?;
        report.stage("decompose", out.decomposition.report.clone());
        report.stage("roundtrip", out.report.clone());
        report.info("dim_A", out.decomposition.module_algebra.dim());
        report.info("iso", serde_json::to_value(encode_dense(&out.iso)).expect("matrices serialize"));
        Ok(())
    })
}
