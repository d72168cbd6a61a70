//! Randomized checks of the engine's laws, shared by `cag selftest` and the
//! acceptance suite. Each check returns a one-line summary or the first
//! counterexample it met.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cag_core::oracle::{partial_x_at, partial_y_at};
use cag_core::random::{self, GroupShape, PolyShape};
use cag_core::{
    check_mutual_inverse, classify_rigidity, decompose, is_variety_iso, retract, retract_general, transfer_iso,
    verify_uniqueness, BrickId, Decomposition, GroupPresentation, Homomorphism, LaurentPoly, Rat, RigidityReason,
    VarietyMorphism,
};

use crate::elab::check;
use crate::gen;
use crate::parser::parse;
use crate::print::to_text;

pub type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn engine<T>(r: cag_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub run: fn(&mut StdRng, usize) -> Outcome,
}

pub const CHECKS: [Check; 10] = [
    Check { id: 1, name: "retraction law", run: retraction_law },
    Check { id: 2, name: "functoriality", run: functoriality },
    Check { id: 3, name: "additivity", run: additivity },
    Check { id: 4, name: "monomial collapse", run: monomial_collapse },
    Check { id: 5, name: "decomposition round trip and uniqueness", run: decomposition },
    Check { id: 6, name: "isomorphism criterion", run: iso_criterion },
    Check { id: 7, name: "isomorphism transfer", run: iso_transfer },
    Check { id: 8, name: "rigidity table", run: rigidity_table },
    Check { id: 9, name: "differentiation oracle", run: differentiation },
    Check { id: 10, name: "source round trip", run: source_round_trip },
];

pub fn retraction_law(rng: &mut StdRng, count: usize) -> Outcome {
    for _ in 0..count {
        let g = random::presentation(rng, GroupShape::default());
        let h = random::presentation(rng, GroupShape::default());
        let hom = random::homomorphism(rng, &g, &h);
        ensure!(engine(retract(hom.as_morphism()), "retract")? == hom, "retract(h) != h for {hom}");
    }
    Ok(format!("{count} homomorphisms fixed"))
}

pub fn functoriality(rng: &mut StdRng, count: usize) -> Outcome {
    let mut nonlinear = 0;
    for _ in 0..count {
        let [a, b, c] = [(); 3].map(|_| random::presentation(rng, GroupShape::default()));
        let g = random::pointed_morphism(rng, &a, &b, PolyShape::default());
        let f = random::pointed_morphism(rng, &b, &c, PolyShape::default());
        let fg = engine(f.compose(&g), "compose")?;
        let lhs = engine(retract(&fg), "retract")?;
        let rhs = engine(engine(retract(&f), "retract")?.compose(&engine(retract(&g), "retract")?), "compose")?;
        ensure!(lhs == rhs, "retract(f∘g) != retract(f)∘retract(g)\nf = {f:?}\ng = {g:?}");
        nonlinear += usize::from(!fg.is_homomorphism());
    }
    Ok(format!("{count} composable pairs ({nonlinear} with non-homomorphic composite)"))
}

pub fn additivity(rng: &mut StdRng, count: usize) -> Outcome {
    for _ in 0..count {
        let g = random::presentation(rng, GroupShape::default());
        let h = random::presentation(rng, GroupShape::default());
        let f1 = random::pointed_morphism(rng, &g, &h, PolyShape::default());
        let f2 = random::pointed_morphism(rng, &g, &h, PolyShape::default());
        let lhs = engine(retract(&engine(f1.add(&f2), "add")?), "retract")?;
        let rhs = engine(engine(retract(&f1), "retract")?.add(&engine(retract(&f2), "retract")?), "add")?;
        ensure!(lhs == rhs, "retract(f+g) != retract(f)+retract(g)\nf = {f1:?}\ng = {f2:?}");
    }
    Ok(format!("{count} same-signature pairs"))
}

/// `x ↦ c·x^k` for `k ∈ 2..=6`: the retraction is zero, and the forcing
/// identity `λ∘m₂ = m_{2^k}∘λ` holds for it.
pub fn monomial_collapse(_: &mut StdRng, _: usize) -> Outcome {
    let ga = GroupPresentation::vector(1);
    let x = LaurentPoly::x(1, 0, 0);
    let mut cases = 0;
    for k in 2..=6u32 {
        for c in [Rat::one(), Rat::from(2), Rat::new(-3, 2).expect("nonzero denominator")] {
            let phi = engine(VarietyMorphism::new(ga.clone(), ga.clone(), vec![x.pow(k).scale(&c)], vec![], Default::default()), "build")?;
            let m2 = engine(Homomorphism::scalar(&ga, &Rat::from(2)), "m2")?;
            let m2k = engine(Homomorphism::scalar(&ga, &engine(Rat::from(2).pow(i64::from(k)), "pow")?), "m2k")?;
            ensure!(
                engine(phi.compose(m2.as_morphism()), "compose")? == engine(m2k.as_morphism().compose(&phi), "compose")?,
                "φ∘m₂ != m_(2^{k})∘φ"
            );
            let lambda = engine(retract(&phi), "retract")?;
            ensure!(
                engine(lambda.compose(&m2), "compose")? == engine(m2k.compose(&lambda), "compose")?,
                "conjugation identity fails for k = {k}, c = {c}"
            );
            ensure!(lambda.is_zero(), "retract({c}*x^{k}) = {lambda}");
            cases += 1;
        }
    }
    Ok(format!("{cases} monomials collapse to 0"))
}

fn nontrivial_semiabelian(rng: &mut StdRng) -> GroupPresentation {
    loop {
        let g = random::semiabelian_presentation(rng, GroupShape::default());
        if !g.is_trivial() {
            return g;
        }
    }
}

pub fn decomposition(rng: &mut StdRng, count: usize) -> Outcome {
    let (mut rejected_psi, mut rejected_chi) = (0, 0);
    for _ in 0..count {
        let g = random::semiabelian_presentation(rng, GroupShape::default());
        let h = random::presentation(rng, GroupShape::default());
        let phi = random::morphism(rng, &g, &h, PolyShape::default());
        let d = engine(decompose(&phi), "decompose")?;
        ensure!(engine(d.recompose(), "recompose")? == phi, "recompose(decompose(φ)) != φ for {phi:?}");
        ensure!(verify_uniqueness(&phi, &d), "independent recomputation disagrees for {phi:?}");
        ensure!(d.psi == engine(retract_general(&phi), "retract_general")?.1, "ψ differs from retract_general");
        ensure!(engine(retract(&d.chi), "retract χ")?.is_zero(), "retract(χ) != 0");
        let bump = random::homomorphism(rng, &g, &h);
        if !bump.is_zero() {
            let bad = Decomposition { psi: engine(d.psi.add(&bump), "add")?, ..d.clone() };
            ensure!(!verify_uniqueness(&phi, &bad), "perturbed ψ accepted");
            rejected_psi += 1;
        }
        let shift = random::torus_to_vector(rng, g.m, h.n, PolyShape::default());
        if shift != VarietyMorphism::zero(shift.domain(), shift.codomain()) {
            let bad = Decomposition { chi: engine(d.chi.add(&shift), "add")?, ..d };
            ensure!(!verify_uniqueness(&phi, &bad), "perturbed χ accepted");
            rejected_chi += 1;
        }
    }
    Ok(format!("{count} round trips; perturbations rejected: {rejected_psi} of ψ, {rejected_chi} of χ"))
}

/// Constructed variety isomorphisms `τ∘ψ + i∘χ∘p` with `ψ` a group
/// automorphism. Half have no vector factor in the domain, where `χ` must
/// vanish; the other half have one, with `χ ≠ 0`.
struct ConstructedIso {
    phi: VarietyMorphism,
    inverse: VarietyMorphism,
    psi: Homomorphism,
    chi_nonzero: bool,
}

fn constructed_isos(rng: &mut StdRng, count: usize) -> Result<Vec<ConstructedIso>, String> {
    let shape = PolyShape { max_x_degree: 3, max_terms: 4, max_y_exp: 2 };
    let mut out = Vec::new();
    for k in 0..count {
        let psi;
        let d = if k % 2 == 0 {
            let g = nontrivial_semiabelian(rng);
            psi = random::automorphism(rng, &g);
            random::decomposition_with(rng, psi.clone(), shape)
        } else {
            let mut g = random::presentation(rng, GroupShape::default());
            g.n = g.n.max(1);
            g.m = g.m.max(1);
            psi = random::automorphism(rng, &g);
            random::decomposition_with(rng, psi.clone(), shape)
        };
        let phi = engine(d.recompose(), "recompose")?;
        let inverse = if phi.domain().n == 0 {
            let v = engine(is_variety_iso(&phi), "is_variety_iso")?;
            ensure!(v.is_iso, "constructed isomorphism rejected: {phi:?}");
            v.inverse.ok_or("verdict without inverse")?
        } else {
            engine(d.inverse(), "inverse recipe")?
        };
        ensure!(engine(check_mutual_inverse(&phi, &inverse), "check")?, "explicit inverse fails for {phi:?}");
        let chi_nonzero = d.chi != VarietyMorphism::zero(d.chi.domain(), d.chi.codomain());
        out.push(ConstructedIso { phi, inverse, psi, chi_nonzero });
    }
    Ok(out)
}

pub fn iso_criterion(rng: &mut StdRng, count: usize) -> Outcome {
    let isos = constructed_isos(rng, 2 * count)?;
    let criterion = isos.iter().filter(|c| c.phi.domain().n == 0).count();
    let with_chi = isos.iter().filter(|c| c.chi_nonzero).count();
    ensure!(
        isos.iter().all(|c| c.phi.domain().n > 0 || !c.chi_nonzero),
        "nonzero χ on a domain without vector factor"
    );
    let shape = PolyShape { max_x_degree: 3, max_terms: 4, max_y_exp: 2 };
    for _ in 0..count {
        let g = nontrivial_semiabelian(rng);
        let psi = random::degenerate_endomorphism(rng, &g).ok_or("trivial group")?;
        let phi = engine(random::decomposition_with(rng, psi, shape).recompose(), "recompose")?;
        let v = engine(is_variety_iso(&phi), "is_variety_iso")?;
        ensure!(!v.is_iso && v.inverse.is_none(), "non-isomorphism accepted: {phi:?}");
    }
    Ok(format!(
        "{criterion} isos accepted by the criterion (χ = 0 forced), {} more inverted by the recipe with χ ≠ 0 in {with_chi}; {count} non-isos rejected",
        isos.len() - criterion
    ))
}

pub fn iso_transfer(rng: &mut StdRng, count: usize) -> Outcome {
    let isos = constructed_isos(rng, 2 * count)?;
    for c in &isos {
        let t = engine(transfer_iso(&c.phi, &c.inverse), "transfer")?;
        let back = engine(transfer_iso(&c.inverse, &c.phi), "transfer back")?;
        ensure!(t.iso.is_group_iso(), "transfer is not a group isomorphism");
        ensure!(t.inverse == back.iso && back.inverse == t.iso, "transfer of the inverse is not the inverse");
        ensure!(t.iso == c.psi, "transfer disagrees with the homomorphism part");
        ensure!(engine(t.iso.compose(&back.iso), "compose")? == Homomorphism::identity(c.phi.codomain()), "not inverse");
    }
    Ok(format!("{} transfers, each inverse to the transfer of the inverse", isos.len()))
}

pub fn rigidity_table(_: &mut StdRng, _: usize) -> Outcome {
    let mut rows = 0;
    let mut rigid = 0;
    for n in 0..=4usize {
        for m in 0..=4 - n {
            for e in 0..=4 - n - m {
                for f in 0..=4 - n - m - e {
                    let g = GroupPresentation::new(n, m, [(BrickId::new("E"), e), (BrickId::new("F"), f)]);
                    let v = classify_rigidity(&g);
                    rows += 1;
                    ensure!(v.rigid == (n == 0 || (n == 1 && m == 0)), "wrong verdict for {g}");
                    if v.rigid {
                        rigid += 1;
                        ensure!(v.counterexample.is_none() && v.reason != RigidityReason::NotRigid, "rigid {g} with witness");
                        continue;
                    }
                    let (c, inv) = (v.counterexample.ok_or("missing counterexample")?, v.counterexample_inverse.ok_or("missing inverse")?);
                    ensure!(c.is_pointed(), "counterexample for {g} is not pointed");
                    ensure!(engine(check_mutual_inverse(&c, &inv), "check")?, "counterexample for {g} is not invertible");
                    ensure!(engine(retract(&c), "retract")?.as_morphism() != &c, "counterexample for {g} is a homomorphism");
                }
            }
        }
    }
    Ok(format!("{rows} presentations, {rigid} rigid"))
}

pub fn differentiation(rng: &mut StdRng, count: usize) -> Outcome {
    let shape = PolyShape { max_x_degree: 5, max_terms: 6, max_y_exp: 3 };
    let mut comparisons = 0;
    for _ in 0..count {
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let f = random::laurent(rng, n, m, shape);
        let dx: Vec<_> = (0..n).map(|i| f.partial_x(i)).collect::<cag_core::Result<_>>().map_err(|e| e.to_string())?;
        let dy: Vec<_> = (0..m).map(|j| f.partial_y(j)).collect::<cag_core::Result<_>>().map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let x: Vec<_> = (0..n).map(|_| random::rat(rng)).collect();
            let y: Vec<_> = (0..m).map(|_| random::nonzero_rat(rng)).collect();
            for (i, d) in dx.iter().enumerate() {
                let oracle = engine(partial_x_at(&f, i, &x, &y), "oracle")?;
                ensure!(engine(d.evaluate(&x, &y), "eval")? == oracle, "∂/∂x{} of {f} disagrees", i + 1);
            }
            for (j, d) in dy.iter().enumerate() {
                let oracle = engine(partial_y_at(&f, j, &x, &y), "oracle")?;
                ensure!(engine(d.evaluate(&x, &y), "eval")? == oracle, "∂/∂y{} of {f} disagrees", j + 1);
            }
            comparisons += n + m;
        }
    }
    Ok(format!("{count} polynomials, {comparisons} exact comparisons"))
}

pub fn source_round_trip(rng: &mut StdRng, count: usize) -> Outcome {
    for _ in 0..count {
        let file = gen::source_file(rng);
        let text = to_text(&file);
        let parsed = parse(&text);
        ensure!(parsed.diagnostics.is_empty(), "generated source does not parse:\n{text}");
        ensure!(parsed.file == file, "parse(serialize(ast)) != ast:\n{text}");
        ensure!(to_text(&parsed.file) == text, "serialization is not stable:\n{text}");
        check(&text).map_err(|d| format!("generated source does not elaborate: {}\n{text}", d[0]))?;
    }
    Ok(format!("{count} generated files"))
}

pub struct Report {
    pub results: Vec<(&'static Check, Outcome)>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }

    pub fn text(&self) -> String {
        self.results
            .iter()
            .map(|(c, r)| match r {
                Ok(s) => format!("PASS [{}] {}: {s}\n", c.id, c.name),
                Err(e) => format!("FAIL [{}] {}: {e}\n", c.id, c.name),
            })
            .collect()
    }
}

/// Runs every check on its own thread, each with an RNG derived from one
/// draw of `rng`, so the outcome depends only on the seed.
pub fn run(rng: &mut StdRng, count: usize) -> Report {
    let seeds: Vec<u64> = CHECKS.iter().map(|_| rng.gen()).collect();
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS
            .iter()
            .zip(seeds)
            .map(|(c, seed)| s.spawn(move || (c, (c.run)(&mut StdRng::seed_from_u64(seed), count))))
            .collect();
        handles
            .into_iter()
            .zip(CHECKS.iter())
            .map(|(h, c)| h.join().unwrap_or((c, Err("check panicked".into()))))
            .collect()
    });
    Report { results }
}
