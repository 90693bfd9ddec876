//! Execute parsed scripts. Each command calls into the engine and records
//! what it computed; no mathematics happens here.

use std::time::Instant;

use ratequiv::corpus::{self, run_corpus, CorpusConfig, CorpusVerb, DEFAULT_SEED};
use ratequiv::deformation::{
    bigrat_check, check_action_invariance, double_deformation, graph_closure, linear_action, normal_cone,
    normal_cone_by_elimination, tangent_action, truncated_action, verify_limit_difference, LimitCycle,
};
use ratequiv::divisor_calc::{
    divisor_on, excess, intersect_cycle, omega, principal_divisor, verify_commute, verify_difference,
    verify_reciprocity, IdentityCheck, PDivisor, RatEquivElement, Subvariety,
};
use ratequiv::exec::Exec;
use ratequiv::groebner::{set_step_limit, Ideal};
use ratequiv::{Error, Result};

use crate::parser::{Arg, IdealArg, Op, Script, ShowWhat};
use crate::report::{Document, Report, Step, Verdict};

pub const DEFAULT_MAX_DEGREE: u32 = 3;
pub const DEFAULT_COUNT: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub max_degree: u32,
    /// Reduction-step budget for each Gröbner computation.
    pub max_steps: Option<u64>,
    pub exec: Exec,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            max_degree: DEFAULT_MAX_DEGREE,
            max_steps: None,
            exec: Exec::default(),
            timing: false,
        }
    }
}

pub fn run(script: &Script, cfg: &RunConfig) -> Document {
    if let Some(n) = cfg.max_steps {
        set_step_limit(n);
    }
    let reports = script
        .commands
        .iter()
        .map(|c| {
            let started = Instant::now();
            let mut r = Report::new(&c.echo);
            if let Err(e) = execute(&c.op, cfg, &mut r) {
                r.verdict = verdict_of(&e);
                r.message = Some(e.to_string());
            }
            if cfg.timing {
                r.elapsed_ms = Some(started.elapsed().as_millis().to_string());
            }
            r
        })
        .collect();
    Document { reports }
}

/// The report of `corpus <verb>` outside a script.
pub fn run_corpus_command(verb: CorpusVerb, count: usize, cfg: &RunConfig) -> Document {
    run(
        &Script {
            commands: vec![crate::parser::Command {
                echo: format!("corpus {verb} --count {count} --seed {} --max-degree {}", cfg.seed, cfg.max_degree),
                line: 1,
                op: Op::Corpus {
                    verb,
                    count: Some(count),
                    seed: None,
                    max_degree: None,
                },
            }],
            ..Script::default()
        },
        cfg,
    )
}

fn verdict_of(e: &Error) -> Verdict {
    match e {
        Error::OutOfScope(_) => Verdict::OutOfScope,
        Error::ResourceExhausted(_) => Verdict::Exhausted,
        _ => Verdict::Error,
    }
}

fn divisor(arg: &Arg, r: &mut Report) -> Result<PDivisor> {
    let d = principal_divisor(&arg.function)?;
    r.input(&arg.name, &arg.function);
    Ok(d)
}

fn ideal(arg: &IdealArg, key: &str, r: &mut Report) -> Ideal {
    r.input(key, &arg.ideal);
    arg.ideal.clone()
}

fn components(d: &PDivisor, name: &str, r: &mut Report) {
    for (f, k) in d.components() {
        r.step(Step::new(format!("{name} component")).with("component", format!("V({f})")).with("ord", k));
    }
}

fn identity(check: &IdentityCheck, r: &mut Report) {
    for t in &check.terms {
        r.step(
            Step::new("term")
                .with("carrier", &t.carrier)
                .with("function", &t.function)
                .with("boundary", &t.boundary),
        );
    }
    r.step(Step::new("lhs").with("value", &check.lhs));
    r.step(Step::new("rhs").with("value", &check.rhs));
    r.verdict = Verdict::from_bool(check.holds());
}

fn equivalence(w: &RatEquivElement, r: &mut Report) -> Result<()> {
    let mut total = ratequiv::divisor_calc::Cycle::new();
    for (v, g) in w.terms() {
        let b = divisor_on(v, g)?;
        total = total.add(&b);
        r.step(Step::new("term").with("carrier", v).with("function", g).with("boundary", &b));
    }
    r.step(Step::new("boundary").with("value", total));
    Ok(())
}

fn limit(l: &LimitCycle, r: &mut Report) {
    let mut s = Step::new(format!("limit {}", l.order)).with("ideal", &l.ideal);
    s = match &l.cycle {
        Some(c) => s.with("cycle", c),
        None => s.with("cycle", "unavailable"),
    };
    if let Some(n) = &l.note {
        s = s.with("note", n);
    }
    r.step(s);
}

fn execute(op: &Op, cfg: &RunConfig, r: &mut Report) -> Result<()> {
    match op {
        Op::Show(what, a) => {
            let d = divisor(a, r)?;
            match what {
                ShowWhat::Weil => r.step(Step::new("weil").with("value", d.weil_divisor())),
                ShowWhat::Support => components(&d, &a.name, r),
            }
        }
        Op::ShowExcess(a, b) => {
            let (d, e) = (divisor(a, r)?, divisor(b, r)?);
            for (f, k) in d.components() {
                if e.ord(f) != 0 {
                    r.step(
                        Step::new("common component")
                            .with("component", format!("V({f})"))
                            .with(format!("ord {}", a.name), k)
                            .with(format!("ord {}", b.name), e.ord(f)),
                    );
                }
            }
            r.step(Step::new("excess").with("value", excess(&d, &e)));
        }
        Op::Intersect(a, b) => {
            let (d, e) = (divisor(a, r)?, divisor(b, r)?);
            for (f, k) in e.components() {
                let v = Subvariety::Hypersurface(f.clone());
                let s = Step::new("component").with("component", &v).with("ord", k);
                r.step(if d.support_contains(&v)? {
                    s.with("restriction", format!("skipped: V({f}) lies in the support of {}", a.name))
                } else {
                    s.with("restriction", divisor_on(&v, d.function())?)
                });
            }
            let label = format!("{}.[{}]", a.name, b.name);
            r.step(Step::new(label).with("value", intersect_cycle(&d, &e.weil_divisor())?));
        }
        Op::Omega(a, b) => {
            let (d, e) = (divisor(a, r)?, divisor(b, r)?);
            equivalence(&omega(&d, &e)?, r)?;
        }
        Op::VerifyReciprocity(a, b) => {
            r.input(&a.name, &a.function);
            r.input(&b.name, &b.function);
            identity(&verify_reciprocity(&a.function, &b.function)?, r);
        }
        Op::VerifyCommute(a, b) => {
            let d = divisor(a, r)?;
            r.input(&b.name, &b.function);
            let w = RatEquivElement::from_terms([(Subvariety::Ambient(b.function.ring().clone()), b.function.clone())]);
            identity(&verify_commute(&d, &w)?, r);
        }
        Op::VerifyDifference(a, b) => {
            let (d, e) = (divisor(a, r)?, divisor(b, r)?);
            r.step(Step::new("excess").with("value", excess(&d, &e)));
            identity(&verify_difference(&d, &e)?, r);
        }
        Op::Cone(a) => {
            let i = ideal(a, "f", r);
            let m = graph_closure(i.generators())?;
            let flat = m.is_flat()?;
            let cone = normal_cone(&m)?;
            let homogeneous = cone.is_homogeneous()?;
            let agrees = cone.ideal().same_ideal(normal_cone_by_elimination(&m)?.ideal())?;
            r.step(Step::new("deformation").with("ideal", m.ideal()).with("flat", flat));
            let mut s = Step::new("normal cone")
                .with("ideal", cone.ideal())
                .with("homogeneous", homogeneous)
                .with("elimination agrees", agrees);
            s = match cone.cycle() {
                Ok(c) => s.with("cycle", c),
                Err(Error::OutOfScope(why)) => s.with("cycle", format!("out of scope: {why}")),
                Err(e) => return Err(e),
            };
            r.step(s);
            r.verdict = Verdict::from_bool(flat && homogeneous && agrees);
        }
        Op::DoubleCone(a, b) => {
            let (g, f) = (ideal(a, "g", r), ideal(b, "f", r));
            let d = double_deformation(g.generators(), f.generators())?;
            let flat = d.is_flat()?;
            r.step(
                Step::new("double deformation")
                    .with("ring", d.ring())
                    .with("ideal", d.ideal())
                    .with("flat", flat)
                    .with("degenerate", d.is_degenerate()),
            );
            r.step(Step::new("s = 1").with("ideal", d.restrict_to_one(d.s())?));
            r.step(Step::new("t = 1").with("ideal", d.restrict_to_one(d.t())?));
            r.verdict = Verdict::from_bool(flat);
        }
        Op::BigratCheck(a, b) => {
            let (g, f) = (ideal(a, "g", r), ideal(b, "f", r));
            let d = double_deformation(g.generators(), f.generators())?;
            let check = bigrat_check(&d, cfg.exec)?;
            limit(&check.t_then_s, r);
            limit(&check.s_then_t, r);
            if let Some(diff) = check.difference() {
                r.step(Step::new("difference").with("value", &diff));
            }
            if !check.holds() && check.difference().is_some() {
                let ld = verify_limit_difference(&d, &check)?;
                for (v, w) in ld.omega.terms() {
                    r.step(Step::new("omega term").with("carrier", v).with("function", w));
                }
                r.step(
                    Step::new("limit difference")
                        .with("boundary of omega", &ld.boundary)
                        .with("equals difference", ld.holds()),
                );
            }
            r.verdict = Verdict::from_bool(check.holds());
        }
        Op::EquivarianceCheck(a) => {
            let i = ideal(a, "f", r);
            let m = graph_closure(i.generators())?;
            let act = tangent_action(&m)?;
            let full = check_action_invariance(&m, &act)?;
            let lin = linear_action(&m)?;
            let at0 = act.at_zero(m.parameter());
            let linear = m.cone_vars().iter().all(|z| at0.get(z) == lin.images().get(z));
            let control = check_action_invariance(&m, &truncated_action(&m)?)?;
            for (v, img) in act.images() {
                r.step(Step::new("action").with("variable", m.ring().var_name(*v)).with("image", img));
            }
            let mut s = Step::new("invariance").with("basis elements", full.checked).with("passed", full.passed());
            if let Some(p) = &full.offending {
                s = s.with("offending", p);
            }
            r.step(s);
            r.step(Step::new("t = 0").with("linear", linear));
            r.step(Step::new("truncated control").with("fails", !control.passed()));
            r.verdict = Verdict::from_bool(full.passed() && linear && !control.passed());
        }
        Op::Corpus {
            verb,
            count,
            seed,
            max_degree,
        } => {
            let c = CorpusConfig {
                seed: seed.unwrap_or(cfg.seed),
                count: count.unwrap_or(DEFAULT_COUNT),
                max_degree: max_degree.unwrap_or(cfg.max_degree),
                exec: cfg.exec,
            };
            r.input("verb", verb);
            r.input("seed", c.seed);
            r.input("count", c.count);
            r.input("max-degree", c.max_degree);
            let fixtures = run_corpus(*verb, &c);
            let mut tally = [0usize; 4];
            for f in &fixtures {
                let mut s = Step::new(format!("fixture {}", f.index))
                    .with("seed", f.seed)
                    .with("verdict", f.verdict);
                for (k, v) in &f.inputs {
                    s = s.with(format!("input {k}"), v);
                }
                for (k, v) in &f.facts {
                    s = s.with(format!("fact {k}"), v);
                }
                r.step(s);
                tally[slot(f.verdict)] += 1;
            }
            let [pass, fail, oos, exhausted] = tally;
            r.step(
                Step::new("summary")
                    .with("pass", pass)
                    .with("fail", fail)
                    .with("out of scope", oos)
                    .with("exhausted", exhausted),
            );
            r.verdict = if fail > 0 {
                Verdict::Fail
            } else if exhausted > 0 {
                Verdict::Exhausted
            } else if oos > 0 {
                Verdict::OutOfScope
            } else {
                Verdict::Pass
            };
        }
    }
    Ok(())
}

fn slot(v: corpus::Verdict) -> usize {
    match v {
        corpus::Verdict::Pass => 0,
        corpus::Verdict::Fail => 1,
        corpus::Verdict::OutOfScope => 2,
        corpus::Verdict::Exhausted => 3,
    }
}
