use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde_json::json;

use curvlie::cdga::{Cdga, LieCdgaTensor, RetractionSplit};
use curvlie::functors::{
    adjunction_backward, adjunction_forward, chevalley_c, counit_map, harrison_l, unit_map,
};
use curvlie::fuzz::{self, CdgaShape, LieShape};
use curvlie::homotopy::{
    filtered_qiso_check, homology, mc_hom_bijection_check, mc_residual, mc_solve_linear,
    McHomotopyContext, McSolution,
};
use curvlie::io;
use curvlie::lie::{
    associated_graded, coequaliser, coproduct, equaliser, lower_central_series, product, CurvedLieAlgebra,
    CurvedMorphism, Equaliser,
};
use curvlie::Rational;

use crate::report::{Caps, Report};
use crate::{Cli, Command, FuzzKind};

type G = CurvedLieAlgebra<Rational>;
type A = Cdga<Rational>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_lie(path: &Path) -> Result<Arc<G>> {
    let g = io::curved_lie_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(Arc::new(g))
}

fn load_cdga(path: &Path) -> Result<Arc<A>> {
    let a = io::cdga_from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(Arc::new(a))
}

fn load_morphism(path: &Path, source: &Arc<G>, target: &Arc<G>) -> Result<CurvedMorphism<Rational>> {
    io::curved_morphism_from_json(&read(path)?, source, target).with_context(|| format!("in {}", path.display()))
}

fn load_optional_cdga(path: &Option<std::path::PathBuf>) -> Result<Arc<A>> {
    match path {
        Some(p) => load_cdga(p),
        None => Ok(Arc::new(Cdga::ground())),
    }
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = io::to_pretty(value);
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn emit_lie(cli: &Cli, report: &mut Report, g: &G) -> Result<()> {
    if let Some(path) = &cli.emit {
        write_json(path, &io::curved_lie_to_json(g))?;
        report.line(format!("wrote {}", path.display()));
    }
    Ok(())
}

fn emit_cdga(cli: &Cli, report: &mut Report, a: &A) -> Result<()> {
    if let Some(path) = &cli.emit {
        write_json(path, &io::cdga_to_json(a))?;
        report.line(format!("wrote {}", path.display()));
    }
    Ok(())
}

pub fn run(cli: &Cli, caps: Caps, window: (i64, i64)) -> Result<Report> {
    let name = command_name(&cli.command);
    let mut r = Report::new(name, caps, window);
    match &cli.command {
        Command::Validate { file, source, target } => validate(&mut r, file, source.as_deref(), target.as_deref())?,
        Command::Twist { algebra, xi } => {
            let g = load_lie(algebra)?;
            let xi = g.parse_element(xi)?;
            let (twisted, _) = g.twist(&xi)?;
            r.line(twisted.to_string());
            let flat = twisted.curvature().is_zero();
            r.line(format!("twisted curvature: {}", twisted.format(twisted.curvature())));
            r.set("flat", flat);
            let report = twisted.validate();
            r.verdict = report.is_valid();
            r.line(report.to_string());
            emit_lie(cli, &mut r, &twisted)?;
        }
        Command::Product { algebras } => {
            let factors = algebras.iter().map(|p| load_lie(p)).collect::<Result<Vec<_>>>()?;
            let p = product(&factors)?;
            r.line(p.algebra.to_string());
            r.verdict = p.algebra.validate().is_valid();
            emit_lie(cli, &mut r, &p.algebra)?;
        }
        Command::Equalise { source, target, first, second } => {
            let (g, h) = (load_lie(source)?, load_lie(target)?);
            let (m1, m2) = (load_morphism(first, &g, &h)?, load_morphism(second, &g, &h)?);
            match equaliser(&m1, &m2)? {
                Equaliser::Initial => {
                    r.line("equaliser: the initial object (the constant terms differ)");
                    r.set("initial", true);
                }
                Equaliser::Sub { algebra, .. } => {
                    r.line(format!("equaliser: subalgebra of dimension {}", algebra.dim()));
                    r.line(algebra.to_string());
                    r.set("initial", false);
                    r.set("dim", algebra.dim());
                    emit_lie(cli, &mut r, &algebra)?;
                }
            }
        }
        Command::Coproduct { left, right } => {
            let (g, h) = (load_lie(left)?, load_lie(right)?);
            let c = coproduct(&g, &h, caps.weight)?;
            let x = c.x_vector();
            r.line(format!("coproduct at weight cap {}: dimension {}", caps.weight, c.algebra.dim()));
            r.line(format!("d {} = {}", c.algebra.space().name(c.x), c.algebra.format(&c.algebra.d(&x))));
            r.line(format!("curvature = {}", c.algebra.format(c.algebra.curvature())));
            r.set("dim", c.algebra.dim());
            let report = c.algebra.validate();
            r.verdict = report.is_valid();
            r.line(report.to_string());
            emit_lie(cli, &mut r, &c.algebra)?;
        }
        Command::Coequalise { source, target, first, second } => {
            let (g, h) = (load_lie(source)?, load_lie(target)?);
            let (m1, m2) = (load_morphism(first, &g, &h)?, load_morphism(second, &g, &h)?);
            let q = coequaliser(&m1, &m2)?;
            r.line(format!("coequaliser: quotient of dimension {}", q.algebra.dim()));
            r.line(q.algebra.to_string());
            r.set("dim", q.algebra.dim());
            r.verdict = q.algebra.validate().is_valid();
            emit_lie(cli, &mut r, &q.algebra)?;
        }
        Command::Lcs { algebra } => {
            let g = load_lie(algebra)?;
            let f = lower_central_series(&g);
            let dims = f.dims();
            r.line(format!("dims of F_1, F_2, ...: {dims:?}"));
            r.line(format!(
                "respects bracket: {}, respects differential: {}, complete: {}, admissible: {}",
                f.respects_bracket, f.respects_differential, f.complete, f.admissible
            ));
            r.set("dims", dims);
            r.set("complete", f.complete);
            r.verdict = f.admissible;
        }
        Command::Gr { algebra } => {
            let g = load_lie(algebra)?;
            let gr = associated_graded(&lower_central_series(&g))?;
            r.line(gr.algebra.to_string());
            r.line(format!("weights: {:?}", gr.weights));
            r.set("weights", gr.weights.clone());
            r.verdict = gr.differential_squares_to_zero();
            r.line(format!("gr d² = 0: {}", r.verdict));
            emit_lie(cli, &mut r, &gr.algebra)?;
        }
        Command::Homology { file } => {
            let text = read(file)?;
            let d = match io::kind_of(&text)?.as_str() {
                io::CURVED_LIE => io::curved_lie_from_json::<Rational>(&text)?.differential_map(),
                io::CDGA => io::cdga_from_json::<Rational>(&text)?.differential_map(),
                other => bail!("homology needs a curved_lie or cdga file, got kind {other:?}"),
            };
            let h = homology(&d, window)?;
            r.line(format!("homology in homological degrees [{}, {}]", window.0, window.1));
            r.betti = Some(h.betti.clone());
        }
        Command::FunctorL { cdga, epsilon } => {
            let a = load_cdga(cdga)?;
            let split = match epsilon {
                None => RetractionSplit::default_for(a.clone())?,
                Some(text) => {
                    let values = a.parse_element(text)?;
                    let mut eps = vec![Rational::from_integer(0.into()); a.dim()];
                    eps[a.unit()] = Rational::from_integer(1.into());
                    for (i, c) in values.iter() {
                        eps[*i] = c.clone();
                    }
                    RetractionSplit::new(a.clone(), eps)?
                }
            };
            let l = harrison_l(&split, caps.weight)?;
            r.line(format!("L(A) at weight cap {}: dims by weight {:?}", caps.weight, l.free.dims_by_weight()));
            r.line(format!("augmentation: {}", split.augmentation));
            r.line(l.algebra.to_string());
            r.set("augmentation", split.augmentation);
            r.set("dims_by_weight", l.free.dims_by_weight());
            let report = l.algebra.validate();
            r.verdict = report.is_valid();
            r.line(report.to_string());
            emit_lie(cli, &mut r, &l.algebra)?;
        }
        Command::FunctorC { algebra } => {
            let g = load_lie(algebra)?;
            let ce = chevalley_c(&g, caps.words)?;
            r.line(format!("C(g) at word cap {}: dimension {}", caps.words, ce.algebra.dim()));
            r.line(ce.algebra.to_string());
            r.verdict = ce.d_squared_violations().is_empty();
            let everywhere = ce.d_squared_vanishes_everywhere();
            r.line(format!("d² = 0 on words below the cap: {}, everywhere: {everywhere}", r.verdict));
            r.set("dim", ce.algebra.dim());
            if cli.emit.is_some() && !everywhere {
                bail!("C(g) is not a cdga at word cap {} (curvature breaks d² = 0 on top words); nothing emitted", caps.words);
            }
            emit_cdga(cli, &mut r, &ce.algebra)?;
        }
        Command::Adjunction { algebra, cdga, samples } => adjunction(cli, &mut r, algebra, cdga, *samples)?,
        Command::Unit { cdga } => {
            let a = load_cdga(cdga)?;
            let l = harrison_l(&RetractionSplit::default_for(a)?, caps.weight)?;
            let ce = chevalley_c(&l.algebra, caps.words)?;
            let eta = unit_map(&l, &ce)?;
            r.verdict = ce.is_chain_on_generators(&eta);
            r.line(format!("unit C(L(A)) → A: chain map on generators: {}", r.verdict));
        }
        Command::Counit { algebra } => {
            let g = load_lie(algebra)?;
            let ce = chevalley_c(&g, caps.words)?;
            let l = harrison_l(&RetractionSplit::default_for(ce.algebra.clone())?, caps.weight)?;
            let eps = counit_map(&ce, &l)?;
            let report = eps.validate();
            r.verdict = report.is_valid();
            r.line(format!("counit L(C(g)) → g: strict {}", eps.is_strict()));
            r.line(report.to_string());
        }
        Command::McCheck { algebra, xi, cdga } => {
            let t = LieCdgaTensor::new(load_lie(algebra)?, load_optional_cdga(cdga)?)?;
            let xi = t.algebra.parse_element(xi)?;
            let residual = mc_residual(&t.algebra, &xi)?;
            r.verdict = residual.is_zero();
            r.line(format!("Maurer-Cartan: {}", r.verdict));
            if !r.verdict {
                r.witness = Some(t.algebra.format(&residual));
            }
        }
        Command::McSolve { algebra, cdga } => {
            let t = LieCdgaTensor::new(load_lie(algebra)?, load_optional_cdga(cdga)?)?;
            let g = &t.algebra;
            match mc_solve_linear(g) {
                McSolution::Refused { left, right } => {
                    r.verdict = false;
                    r.line(format!("refused: [{left}, {right}] ≠ 0, the MC equation is not linear"));
                    r.set("refused", json!([left, right]));
                }
                McSolution::Empty => {
                    r.verdict = false;
                    r.line("no Maurer-Cartan elements");
                }
                McSolution::Affine { particular, directions } => {
                    r.line(format!("particular: {}", g.format(&particular)));
                    for d in &directions {
                        r.line(format!("direction: {}", g.format(d)));
                    }
                    r.line(format!("dimension: {}", directions.len()));
                    r.set("particular", g.format(&particular));
                    r.set("directions", directions.iter().map(|d| g.format(d)).collect::<Vec<_>>());
                }
            }
        }
        Command::McHomotopy { algebra, xi, eta, witness, cdga } => {
            let ctx = McHomotopyContext::new(load_lie(algebra)?, load_optional_cdga(cdga)?, caps.poly)?;
            let xi = ctx.parse_base(xi)?;
            let eta = ctx.parse_base(eta)?;
            let h = match witness {
                Some(text) => ctx.parse_path(text)?,
                None => ctx.constant(&xi),
            };
            let report = ctx.check(&xi, &eta, &h)?;
            r.verdict = report.verdict();
            r.line(report.to_string());
            r.witness = report.residual.clone();
        }
        Command::McBijection { algebra, cdga } => {
            let report = mc_hom_bijection_check(&load_lie(algebra)?, &load_cdga(cdga)?, caps.words)?;
            r.verdict = report.verdict();
            r.line(report.to_string());
            r.set("solved", report.solved);
            r.set("mc_dimension", report.mc_dimension);
            r.set("hom_dimension", report.hom_dimension);
        }
        Command::Fqiso { morphism, source, target } => {
            let (g, h) = (load_lie(source)?, load_lie(target)?);
            let m = load_morphism(morphism, &g, &h)?;
            let report = filtered_qiso_check(&m, &lower_central_series(&g), &lower_central_series(&h), window)?;
            r.verdict = report.verdict;
            r.line("filtrations: lower central series");
            r.line(report.to_string());
            r.line("(a filtered quasi-isomorphism check only; weak equivalence is its two-out-of-three closure)");
        }
        Command::Fuzz { count, kind, max_dim } => fuzz_command(cli, &mut r, *count, *kind, *max_dim)?,
    }
    Ok(r)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Twist { .. } => "twist",
        Command::Product { .. } => "product",
        Command::Equalise { .. } => "equalise",
        Command::Coproduct { .. } => "coproduct",
        Command::Coequalise { .. } => "coequalise",
        Command::Lcs { .. } => "lcs",
        Command::Gr { .. } => "gr",
        Command::Homology { .. } => "homology",
        Command::FunctorL { .. } => "functor-L",
        Command::FunctorC { .. } => "functor-C",
        Command::Adjunction { .. } => "adjunction",
        Command::Unit { .. } => "unit",
        Command::Counit { .. } => "counit",
        Command::McCheck { .. } => "mc-check",
        Command::McSolve { .. } => "mc-solve",
        Command::McHomotopy { .. } => "mc-homotopy",
        Command::McBijection { .. } => "mc-bijection",
        Command::Fqiso { .. } => "fqiso",
        Command::Fuzz { .. } => "fuzz",
    }
}

fn validate(r: &mut Report, file: &Path, source: Option<&Path>, target: Option<&Path>) -> Result<()> {
    let text = read(file)?;
    let kind = io::kind_of(&text).with_context(|| format!("in {}", file.display()))?;
    let ends = || -> Result<(&Path, &Path)> {
        match (source, target) {
            (Some(s), Some(t)) => Ok((s, t)),
            _ => bail!("a morphism file needs --source and --target"),
        }
    };
    let (valid, message) = match kind.as_str() {
        io::CURVED_LIE => {
            let g = io::curved_lie_from_json::<Rational>(&text).with_context(|| format!("in {}", file.display()))?;
            let report = g.validate();
            (report.is_valid(), report.to_string())
        }
        io::CDGA => {
            let a = io::cdga_from_json::<Rational>(&text).with_context(|| format!("in {}", file.display()))?;
            let report = a.validate();
            (report.is_valid(), report.to_string())
        }
        io::CURVED_MORPHISM => {
            let (s, t) = ends()?;
            let m = load_morphism(file, &load_lie(s)?, &load_lie(t)?)?;
            let report = m.validate();
            (report.is_valid(), report.to_string())
        }
        io::CDGA_MORPHISM => {
            let (s, t) = ends()?;
            let f = io::cdga_morphism_from_json(&text, &load_cdga(s)?, &load_cdga(t)?)
                .with_context(|| format!("in {}", file.display()))?;
            let failures = f.check();
            let message = if failures.is_empty() {
                "all axioms hold".to_string()
            } else {
                failures.iter().map(|(a, d)| format!("FAILED {a}: {d}")).collect::<Vec<_>>().join("\n")
            };
            (failures.is_empty(), message)
        }
        other => bail!("unknown kind {other:?} in {}", file.display()),
    };
    r.set("kind", kind);
    r.verdict = valid;
    r.line(message);
    Ok(())
}

fn adjunction(cli: &Cli, r: &mut Report, algebra: &Path, cdga: &Path, samples: usize) -> Result<()> {
    let g = load_lie(algebra)?;
    let a = load_cdga(cdga)?;
    let ce = chevalley_c(&g, r.caps.words)?;
    let split = RetractionSplit::default_for(a.clone())?;
    let l = harrison_l(&split, r.caps.weight)?;
    let mut rng = fuzz::rng(cli.seed);

    // Hom(C(g), A): the zero map, every single basis image, random images
    let mut candidates = vec![vec![Default::default(); g.dim()]];
    for x in 0..g.dim() {
        for i in a.space().indices_in_degree(-g.degree(x) - 1) {
            let mut images = vec![Default::default(); g.dim()];
            images[x] = curvlie::graded::Vector::unit(i);
            candidates.push(images);
        }
    }
    candidates.extend((0..samples).map(|_| fuzz::random_generator_images(&mut rng, &g, &a, 0.7)));
    let (mut round_trips, mut chain_maps, mut agree) = (true, 0, true);
    for images in &candidates {
        let phi = ce.algebra_map(&a, images)?;
        let m = adjunction_forward(&phi, &ce, &l)?;
        let back = adjunction_backward(&m, &ce, &l)?;
        round_trips &= &ce.generator_images(&back) == images;
        let chain = ce.is_chain_on_generators(&phi);
        agree &= chain == m.validate().is_valid();
        chain_maps += chain as usize;
    }
    // Hom(L(A), g): random generator images and constant terms
    let mut from_l = 0;
    for _ in 0..samples {
        let images: Vec<_> = (0..split.plus_dim())
            .map(|p| fuzz::random_element(&mut rng, g.space(), l.algebra.degree(l.generator(p)), 0.7, 2))
            .collect();
        let alpha = fuzz::random_element(&mut rng, g.space(), -1, 0.7, 2);
        let m = l.morphism_to(&g, &images, alpha)?;
        let phi = adjunction_backward(&m, &ce, &l)?;
        round_trips &= adjunction_forward(&phi, &ce, &l)? == m;
        from_l += 1;
    }
    r.line(format!(
        "{} maps C(g) → A and {from_l} maps L(A) → g: round trips {round_trips}",
        candidates.len()
    ));
    r.line(format!("{chain_maps} chain maps; chain map ⇔ curved morphism: {agree}"));
    r.set("round_trips", round_trips);
    r.set("chain_maps", chain_maps);
    r.set("samples", candidates.len() + from_l);
    r.verdict = round_trips && agree;
    Ok(())
}

fn fuzz_command(cli: &Cli, r: &mut Report, count: usize, kind: FuzzKind, max_dim: usize) -> Result<()> {
    if max_dim == 0 {
        bail!("--max-dim must be positive");
    }
    let mut rng = fuzz::rng(cli.seed);
    if let Some(dir) = &cli.emit {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let shape = LieShape { max_dim, ..LieShape::default() };
    let mut valid = 0;
    for n in 0..count {
        let (ok, summary, json) = match kind {
            FuzzKind::Lie | FuzzKind::Nilpotent => {
                let g: G = if kind == FuzzKind::Lie {
                    fuzz::candidate_curved_lie(&mut rng, &shape)
                } else {
                    fuzz::valid_curved_lie(&mut rng, &shape, true, 60)
                };
                let report = g.validate();
                let failed: Vec<String> = report.failures.iter().map(|f| f.axiom.to_string()).collect();
                let summary = format!("dim {}, {}", g.dim(), if failed.is_empty() { "valid".into() } else { format!("fails {}", failed.join(", ")) });
                (report.is_valid(), summary, serde_json::to_value(io::curved_lie_to_json(&g))?)
            }
            FuzzKind::Cdga => {
                let a: A = fuzz::augmented_cdga(&mut rng, &CdgaShape { max_dim, ..CdgaShape::default() });
                let report = a.validate();
                (report.is_valid(), format!("dim {}, {report}", a.dim()), serde_json::to_value(io::cdga_to_json(&a))?)
            }
        };
        r.line(format!("#{n}: {summary}"));
        if ok {
            valid += 1;
            if let Some(dir) = &cli.emit {
                write_json(&dir.join(format!("fuzz-{n:03}.json")), &json)?;
            }
        }
    }
    r.line(format!("{valid} of {count} valid"));
    r.set("valid", valid);
    r.set("count", count);
    Ok(())
}
