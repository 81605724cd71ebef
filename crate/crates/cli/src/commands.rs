use std::path::Path;
use std::sync::Arc;

use serde_json::json;
use sha2::{Digest, Sha256};

use periodica::algebra::Algebra;
use periodica::complex::{cone, GradedMorphism, HomComplex, PeriodicComplex};
use periodica::derived::{derived_hom, ext_sum_check, stalk_tilting_check};
use periodica::hochschild::{formality_criterion, hh_table, smooth_dimension, LaurentSetup};
use periodica::homological::{global_dimension, Bounded};
use periodica::module::Module;
use periodica::parse::{load_complex_with, parse_algebra, parse_module, AlgebraCache};
use periodica::report::{InputHash, Report, Status};
use periodica::reproduce;
use periodica::stable::{algebra_period, check_periodic_tilting_stable, is_nakayama, is_self_injective, stable_end_algebra, StableContext, DEFAULT_CLOSURE_BUDGET};
use periodica::{Error, Field, Result};

use crate::{AlgebraArg, AlgebraCmd, Cli, Command, ComplexCmd, HochschildCmd, PeriodCmd, ReproduceCmd, TiltingCmd};

/// Reads inputs and records their hashes.
struct Inputs {
    field: Field,
    hashes: Vec<InputHash>,
    cache: AlgebraCache,
}

impl Inputs {
    fn hash(&mut self, path: &str) -> Result<()> {
        let bytes = std::fs::read(path).map_err(|e| Error::Precondition(format!("cannot read {path}: {e}")))?;
        self.hashes.push(InputHash { path: path.to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        Ok(())
    }

    fn algebra(&mut self, a: &AlgebraArg, default_preset: Option<&str>) -> Result<Arc<Algebra>> {
        match (&a.algebra, &a.preset) {
            (Some(path), _) => {
                self.hash(path)?;
                self.cache.load(Path::new(path), self.field)
            }
            (None, Some(p)) => preset(p, self.field),
            (None, None) => match default_preset {
                Some(p) => preset(p, self.field),
                None => Err(Error::Precondition("give --algebra FILE or --preset SPEC".into())),
            },
        }
    }

    fn complex(&mut self, path: &str) -> Result<PeriodicComplex> {
        self.hash(path)?;
        Ok(load_complex_with(Path::new(path), self.field, &mut self.cache)?.complex)
    }
}

fn preset(spec: &str, field: Field) -> Result<Arc<Algebra>> {
    parse_algebra(&format!("preset {spec}"), field)?.build()
}

fn complex_summary(v: &PeriodicComplex) -> serde_json::Value {
    let m = v.period() as i64;
    json!({
        "period": v.period(),
        "components": (0..m).map(|i| v.comp(i).dims().to_vec()).collect::<Vec<_>>(),
        "differential_ranks": v.diffs().iter().map(|d| d.rank()).collect::<Vec<_>>(),
        "cohomology": (0..m).map(|i| v.cohomology(i).dims().to_vec()).collect::<Vec<_>>(),
        "cohomology_dims": v.cohomology_dims(),
        "acyclic": v.is_acyclic(),
    })
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Precondition(format!("range `{s}` is not of the form a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn require_period(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("period m must be at least 1".into()));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<Report> {
    let field: Field = cli.field.parse()?;
    let mut inp = Inputs { field, hashes: Vec::new(), cache: AlgebraCache::new() };
    let t = cli.truncation;
    let mut report = match &cli.command {
        Command::Algebra(AlgebraCmd::Show(a)) => {
            let alg = inp.algebra(a, None)?;
            let n = alg.n_vertices();
            let names = alg.vertex_names();
            let mut r = Report::new("algebra show", "Basis data of a presented algebra.").bound("global_dimension_search", t);
            r.datum("name", alg.name());
            r.datum("field", alg.field().name());
            r.datum("vertices", names);
            r.datum("arrows", alg.generators().iter().map(|g| format!("{}: {} -> {}", g.name, names[g.right], names[g.left])).collect::<Vec<_>>());
            r.datum("dim", alg.dim());
            r.datum("basis", alg.basis().iter().map(|b| b.label.clone()).collect::<Vec<_>>());
            r.datum("cartan", (0..n).map(|i| (0..n).map(|j| alg.basis_between(i, j).len()).collect::<Vec<_>>()).collect::<Vec<_>>());
            r.datum("loewy_length", alg.loewy_length());
            r.datum("global_dimension", global_dimension(&alg, t));
            r.datum("self_injective", is_self_injective(&alg));
            r.datum("nakayama", is_nakayama(&alg));
            r
        }
        Command::Cohomology(c) | Command::Complex(ComplexCmd::Cohomology(c)) => {
            let v = inp.complex(&c.complex)?;
            let mut r = Report::new("complex cohomology", "Cohomology H^i = Z^i / B^i of a periodic complex.");
            r.datum("complex", complex_summary(&v));
            r
        }
        Command::Complex(ComplexCmd::Shift { complex, by }) => {
            let v = inp.complex(complex)?;
            let s = v.shift(*by);
            let mut r = Report::new("complex shift", "The shift V[l] with components V^{i+l} and differentials (-1)^l d^{i+l}.").param("by", by);
            r.datum("shifted", complex_summary(&s));
            r.datum("equal_to_input", s == v);
            r
        }
        Command::Complex(ComplexCmd::Cone { complex, target, map }) => {
            let v = inp.complex(complex)?;
            let w = match target {
                Some(p) => inp.complex(p)?,
                None => v.clone(),
            };
            let f = match map.as_str() {
                "identity" => {
                    if target.is_some() && w != v {
                        return Err(Error::Precondition("the identity needs the target to equal the source".into()));
                    }
                    GradedMorphism::identity(&v)
                }
                "zero" => GradedMorphism::zero(&v, &w, 0),
                other => {
                    let k: usize = other
                        .strip_prefix("basis:")
                        .and_then(|k| k.parse().ok())
                        .ok_or_else(|| Error::Precondition(format!("map `{other}` is not identity, zero or basis:K")))?;
                    let basis = HomComplex::new(&v, &w)?.cohomology_basis(0);
                    basis.get(k).cloned().ok_or_else(|| Error::Precondition(format!("K_m(V, W) has dimension {}, no basis element {k}", basis.len())))?
                }
            };
            let cd = cone(&f, &v, &w)?;
            let mut r = Report::new("complex cone", "The cone C_f^i = W^i ⊕ V^{i+1} of a chain map with its structure maps.").param("map", map);
            for (name, holds) in cd.verify(&f, &v, &w) {
                r.check_bool(format!("cone identity {name}"), holds, "");
            }
            r.datum("cone", complex_summary(&cd.cone));
            r.datum("quasi_isomorphism", cd.cone.is_acyclic());
            r
        }
        Command::Hom(p) => {
            let v = inp.complex(&p.complex)?;
            let w = inp.complex(&p.target)?;
            let h = HomComplex::new(&v, &w)?;
            let mut r = Report::new("hom", "dim K_m(V, W[p]): degree-p cohomology of the Hom complex.").param("degree", p.degree);
            r.datum("hom_complex_dims", (0..v.period() as i64).map(|q| h.dim(q)).collect::<Vec<_>>());
            r.datum("dim", h.cohomology_dim(p.degree));
            r
        }
        Command::DerivedHom(p) => {
            let v = inp.complex(&p.complex)?;
            let w = inp.complex(&p.target)?;
            let mut r = Report::new("derived-hom", "dim D_m(V, W[p]) through K-projective replacements.").param("degree", p.degree).bound("resolution_length", t);
            r.datum("dim", derived_hom(&v, &w, p.degree, t)?);
            r
        }
        Command::ExtSumCheck(a) => {
            require_period(a.m)?;
            let alg = inp.algebra(&a.alg, None)?;
            let pairs: Vec<(Module, Module)> = if a.all {
                let mods = reproduce::test_modules(&alg)?;
                mods.iter().flat_map(|x| mods.iter().map(move |y| (x.clone(), y.clone()))).collect()
            } else {
                let (s, tg) = (a.source.as_deref().unwrap_or_default(), a.target.as_deref().unwrap_or_default());
                vec![(parse_module(s, &alg)?, parse_module(tg, &alg)?)]
            };
            let mut r = Report::new("ext-sum-check", "dim D_m(M, N) = Σ_i dim Ext^{mi}(M, N).").param("m", a.m).bound("resolution_length", t);
            let mut rows = Vec::new();
            for (x, y) in &pairs {
                let c = ext_sum_check(x, y, a.m, t)?;
                r.check_bool(format!("{:?} -> {:?}", x.dims(), y.dims()), c.pass, format!("derived {} vs Ext sum {}", c.derived_hom_dim, c.ext_sum));
                rows.push(c);
            }
            r.datum("checks", rows);
            r
        }
        Command::Hochschild(HochschildCmd::Table { alg, m, pmax, qrange }) => {
            require_period(*m)?;
            let a = inp.algebra(alg, None)?;
            let (q0, q1) = parse_range(qrange)?;
            let table = hh_table(&LaurentSetup::new(a, *m)?, *pmax, q0, q1, t)?;
            let mut r = Report::new("hochschild table", "Bigraded Hochschild cohomology HH^{p,q} of Λ[t, t^-1] with deg t = m.")
                .param("m", m)
                .param("pmax", pmax)
                .param("qrange", qrange)
                .bound("truncation", t);
            if table.cells.iter().any(|c| c.dim.is_none()) {
                r.check("all cells computed", Status::Inconclusive, "some cells exceed the truncated resolution");
            }
            r.datum("table", table);
            r
        }
        Command::Hochschild(HochschildCmd::Formality { alg, m, qmax }) => {
            require_period(*m)?;
            let a = inp.algebra(alg, None)?;
            let f = formality_criterion(&LaurentSetup::new(a, *m)?, *qmax, t.max(*qmax))?;
            let mut r = Report::new("hochschild formality", "Sufficient criterion for intrinsic formality: HH^{q,2-q} = 0 for all q >= 3.")
                .param("m", m)
                .param("qmax", qmax)
                .bound("truncation", t.max(*qmax));
            let status = if f.pass {
                Status::Pass
            } else if f.witness.is_some() {
                Status::Fail
            } else {
                Status::Inconclusive
            };
            r.check("HH^{q,2-q} = 0 for q >= 3", status, format!("witness {:?}, tail closed {}", f.witness, f.tail_closed));
            r.datum("formality", f);
            r
        }
        Command::Hochschild(HochschildCmd::SmoothDim { alg }) => {
            let a = inp.algebra(alg, None)?;
            let s = smooth_dimension(&a, t)?;
            let mut r = Report::new("hochschild smooth-dim", "Projective dimension of Λ as a bimodule, compared with its global dimension.").bound("resolution_length", t);
            r.check_bool("bimodule dimension equals global dimension", s.consistent, format!("{} vs {}", s.bimodule_pd, s.global_dimension));
            r.datum("smooth_dimension", s);
            r
        }
        Command::Period(PeriodCmd::Module { alg, module }) => {
            let a = inp.algebra(alg, None)?;
            let ctx = StableContext::new(&a)?;
            let x = parse_module(module, &a)?;
            let p = ctx.module_period(&x, t)?;
            let mut r = Report::new("period module", "Smallest p >= 1 with Ω^p M ≅ M in the stable category.").param("module", module).bound("search", t);
            if let Bounded::AtLeast(b) = p {
                r.check("period found", Status::Inconclusive, format!("no return within {b} syzygies"));
            }
            r.datum("period", p);
            r
        }
        Command::Period(PeriodCmd::Algebra { alg }) => {
            let a = inp.algebra(alg, None)?;
            let p = algebra_period(&a, t)?;
            let mut r = Report::new("period algebra", "Smallest p >= 1 with Ω^p Λ ≅ Λ as bimodules.").bound("search", t);
            if let Bounded::AtLeast(b) = p {
                r.check("period found", Status::Inconclusive, format!("no return within {b} syzygies"));
            }
            r.datum("period", p);
            r
        }
        Command::Tilting(TiltingCmd::Stable { alg, summands, m, end_target }) => {
            require_period(*m)?;
            let a = inp.algebra(alg, None)?;
            let ctx = StableContext::new(&a)?;
            let x = parse_module(summands, &a)?;
            let rep = check_periodic_tilting_stable(&ctx, std::slice::from_ref(&x), *m, DEFAULT_CLOSURE_BUDGET)?;
            let mut r = Report::new("tilting stable", "T is rigid (no stable maps T -> Σ^i T for 0 < i < m) and generates the stable category under shifts, summands and cones.")
                .param("summands", summands)
                .param("m", m)
                .bound("closure_budget", DEFAULT_CLOSURE_BUDGET);
            r.check_bool("Σ^m ≅ Id objectwise", rep.periodicity_holds, format!("{} indecomposables", rep.periodicity_checked));
            r.check_bool("rigidity", rep.rigidity_pass, format!("{:?}", rep.rigidity));
            match rep.generation_pass {
                Some(g) => r.check_bool("generation", g, format!("{} unreached", rep.unreached.len())),
                None => r.check("generation", Status::Inconclusive, "no finite list of indecomposables to compare with"),
            }
            if let Some(spec) = end_target {
                let target = preset(spec, a.field())?;
                let parts = ctx.nonprojective_summands(&x)?;
                let (_, e) = stable_end_algebra(&parts, &target)?;
                r.check_bool(format!("stable End(T) ≅ {}", target.name()), e.pass, format!("dim {} vs {}", e.dim, e.target_dim));
                r.datum("end_algebra", e);
            }
            r.datum("tilting", rep);
            r
        }
        Command::Tilting(TiltingCmd::Stalk { alg, m }) => {
            require_period(*m)?;
            let a = inp.algebra(alg, None)?;
            let rep = stalk_tilting_check(&a, *m, t)?;
            let mut r = Report::new("tilting stalk", "The stalk Λ is m-periodic tilting in D_m: D_m(Λ, Λ[i]) is Λ for i ∈ mZ and 0 otherwise, and every simple is reached by cones of shifted projectives.")
                .param("m", m)
                .bound("resolution_length", t);
            r.check_bool("rigidity", rep.rigidity_pass, format!("{:?}", rep.rigidity));
            r.check_bool("generation witnesses", rep.witnesses.iter().all(|w| w.quasi_iso_verified), format!("{} simples", rep.witnesses.len()));
            r.datum("tilting", rep);
            r
        }
        Command::Reproduce(rc) => match rc {
            ReproduceCmd::Ex56 { n, m } => reproduce::ex5_6(*n, *m, field, t.max(2 * n.max(m)))?,
            ReproduceCmd::Ex58 { n } => reproduce::ex5_8(*n, field)?,
            ReproduceCmd::Ex59 => reproduce::ex5_9(field, t)?,
            ReproduceCmd::Lemma41 { alg, m } => {
                require_period(*m)?;
                let a = inp.algebra(alg, Some("linear 2"))?;
                reproduce::lemma4_1(&a, *m, t)?
            }
            ReproduceCmd::Prop310 { alg, m, samples } => {
                let a = inp.algebra(alg, Some("linear 2"))?;
                reproduce::prop3_10(&a, *m, cli.seed, *samples, t)?
            }
            ReproduceCmd::Prop325 { alg, m, samples } => {
                require_period(*m)?;
                let a = inp.algebra(alg, Some("linear 2"))?;
                reproduce::prop3_25(&a, *m, cli.seed, *samples)?
            }
        },
    };
    let loaded: Vec<String> = inp.cache.files().iter().map(|p| p.display().to_string()).collect();
    for path in loaded {
        if !inp.hashes.iter().any(|h| h.path == path) {
            inp.hash(&path)?;
        }
    }
    report.inputs = inp.hashes;
    Ok(report)
}
