use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{Class, Failure, Outcome};
use crate::derivop::{conjugate as conjugate_by, ideal_stable, recognize_shamsuddin, Automorphism, Derivation};
use crate::error::Error;
use crate::exactalg::{Rational, Ring, UniPoly, VarId};
use crate::isotropy::{
    affine_isotropy_search, group_table, isotropy_shamsuddin, isotropy_two_var, AffineFamily, AlphaChoice,
    IsotropyResult, YDegreeDerivation,
};
use crate::lequain::{
    division_sequence, pab as lequain_pab, psolve as lequain_psolve, shamsuddin_simple, ComponentVerdict,
};
use crate::oracle::{
    oracle_ideal_search, oracle_isotropy_enum, oracle_psolve as oracle_solve, sufficient_degree, AnsatzConfig,
};
use crate::text::{parse_automorphism, parse_derivation, parse_expr, parse_uni, print_derivation, ParseError};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn located(path: &Path, e: ParseError) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<(String, Derivation), Failure> {
    let text = read(path)?;
    let d = parse_derivation(&text).map_err(|e| located(path, e))?;
    Ok((text, d))
}

fn expr_arg(flag: &str, text: &str) -> Result<UniPoly, Failure> {
    parse_uni(text).map_err(|e| Failure::input(format!("{flag}: {e}")))
}

fn big(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn uni_in(p: &UniPoly, ring: &Ring) -> String {
    p.display_in(ring.name(VarId::X))
}

fn list(ps: &[UniPoly], ring: &Ring) -> Vec<String> {
    ps.iter().map(|p| uni_in(p, ring)).collect()
}

fn shamsuddin_of(d: &Derivation) -> Result<crate::derivop::ShamsuddinForm, Failure> {
    recognize_shamsuddin(d).ok_or_else(|| {
        Failure::from(Error::Unsupported(
            "not a Shamsuddin derivation: need d(X) = 1 and d(Y) = a(X)*Y + b(X) for every other variable".into(),
        ))
    })
}

pub(super) fn simple(path: &Path) -> Result<Outcome, Failure> {
    let (text, d) = load(path)?;
    let form = shamsuddin_of(&d)?;
    let verdict = shamsuddin_simple(&form)?;
    let ring = form.ring();
    let mut out = format!("simple: {}\n", verdict.simple);
    let mut components = Vec::new();
    for (i, (c, v)) in form.components().iter().zip(&verdict.components).enumerate() {
        let head = format!("component {}: a = {}, b = [{}]", i + 1, uni_in(&c.a, ring), list(&c.bs, ring).join(", "));
        match v {
            ComponentVerdict::Independent { rank } => {
                out.push_str(&format!("{head}: independent, rank {rank}\n"));
                components
                    .push(json!({"a": uni_in(&c.a, ring), "bs": list(&c.bs, ring), "simple": true, "rank": rank}));
            }
            ComponentVerdict::Dependent { kernel, solution } => {
                let k: Vec<String> = kernel.iter().map(ToString::to_string).collect();
                out.push_str(&format!(
                    "{head}: dependent, kernel ({}), f = {}\n",
                    k.join(", "),
                    uni_in(solution, ring)
                ));
                components.push(json!({"a": uni_in(&c.a, ring), "bs": list(&c.bs, ring), "simple": false}));
            }
        }
    }
    let witness = match verdict.first_failure() {
        None => Value::Null,
        Some(i) => {
            let c = &form.components()[i];
            let ComponentVerdict::Dependent { kernel, solution } = &verdict.components[i] else {
                unreachable!("first_failure points at a dependent component")
            };
            let vars: Vec<&str> = c.vars.iter().map(|&v| ring.name(v)).collect();
            json!({
                "component": i + 1,
                "a": uni_in(&c.a, ring),
                "bs": list(&c.bs, ring),
                "vars": vars,
                "kernel": kernel.iter().map(big).collect::<Vec<_>>(),
                "solution": uni_in(solution, ring),
            })
        }
    };
    Ok(Outcome {
        command: "simple",
        inputs: vec![text.into_bytes()],
        verdict: json!({"simple": verdict.simple, "components": components}),
        witness,
        completeness: None,
        text: out,
    })
}

pub(super) fn canonical(path: &Path) -> Result<Outcome, Failure> {
    let (text, d) = load(path)?;
    let form = shamsuddin_of(&d)?;
    let ring = form.ring();
    let mut out = format!("s = {}\n", form.s());
    let mut components = Vec::new();
    for (i, c) in form.components().iter().enumerate() {
        let vars: Vec<&str> = c.vars.iter().map(|&v| ring.name(v)).collect();
        out.push_str(&format!(
            "component {}: a = {}, r = {}, vars [{}], b = [{}]\n",
            i + 1,
            uni_in(&c.a, ring),
            c.bs.len(),
            vars.join(", "),
            list(&c.bs, ring).join(", ")
        ));
        components.push(json!({"a": uni_in(&c.a, ring), "r": c.bs.len(), "vars": vars, "bs": list(&c.bs, ring)}));
    }
    Ok(Outcome {
        command: "canonical",
        inputs: vec![text.into_bytes()],
        verdict: json!({"s": form.s(), "components": components}),
        witness: Value::Null,
        completeness: None,
        text: out,
    })
}

pub(super) fn pab(a_text: &str, b_text: &str) -> Result<Outcome, Failure> {
    let a = expr_arg("--a", a_text)?;
    let b = expr_arg("--b", b_text)?;
    let seq = division_sequence(&a, &b)?;
    let p = lequain_pab(&a, &b)?;
    let text = format!(
        "P(a, b) = {p}\nt = {}\nquotients: [{}]\nremainders: [{}]\n",
        seq.t(),
        seq.quotients.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        seq.remainders.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
    );
    Ok(Outcome {
        command: "pab",
        inputs: vec![a_text.as_bytes().to_vec(), b_text.as_bytes().to_vec()],
        verdict: json!({"pab": p.to_string(), "zero": p.is_zero()}),
        witness: json!({
            "t": seq.t(),
            "quotients": seq.quotients.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "remainders": seq.remainders.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        completeness: None,
        text,
    })
}

fn solution_outcome(command: &'static str, inputs: Vec<Vec<u8>>, sol: Option<UniPoly>, extra: Value) -> Outcome {
    let text = match &sol {
        Some(f) => format!("solution: {f}\n"),
        None => "no solution\n".to_string(),
    };
    let mut verdict = json!({"solvable": sol.is_some()});
    if let (Value::Object(v), Value::Object(e)) = (&mut verdict, extra) {
        v.extend(e);
    }
    Outcome {
        command,
        inputs,
        verdict,
        witness: sol.map_or(Value::Null, |f| json!({"solution": f.to_string()})),
        completeness: None,
        text,
    }
}

pub(super) fn psolve(a_text: &str, b_text: &str) -> Result<Outcome, Failure> {
    let a = expr_arg("--a", a_text)?;
    let b = expr_arg("--b", b_text)?;
    let sol = lequain_psolve(&a, &b)?;
    Ok(solution_outcome("psolve", vec![a_text.into(), b_text.into()], sol, json!({})))
}

pub(super) fn oracle_psolve(a_text: &str, b_text: &str, max_degree: Option<usize>) -> Result<Outcome, Failure> {
    let a = expr_arg("--a", a_text)?;
    let b = expr_arg("--b", b_text)?;
    let bound = max_degree.unwrap_or_else(|| sufficient_degree(&a, &b));
    let sol = oracle_solve(&a, &b, bound)?;
    let mut out =
        solution_outcome("oracle-psolve", vec![a_text.into(), b_text.into()], sol, json!({"max_degree": bound}));
    out.text.push_str(&format!("searched degrees up to {bound}\n"));
    Ok(out)
}

fn automorphism_text(rho: &Automorphism) -> String {
    let ring = rho.ring();
    ring.vars().map(|v| format!("{} -> {}", ring.name(v), rho.image(v).display(ring))).collect::<Vec<_>>().join(", ")
}

fn automorphism_json(rho: &Automorphism) -> Value {
    let ring = rho.ring();
    Value::Object(ring.vars().map(|v| (ring.name(v).to_string(), Value::String(rho.image(v).display(ring)))).collect())
}

fn alpha_text(alpha: &AlphaChoice) -> String {
    match alpha {
        AlphaChoice::Fixed(a) => format!("alpha = {a}"),
        AlphaChoice::Generic { excluded } if excluded.is_empty() => "alpha arbitrary".into(),
        AlphaChoice::Generic { excluded } => format!(
            "alpha arbitrary except {}",
            excluded.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn family_outcome(family: &AffineFamily) -> (String, Value, Value) {
    let mut text = format!("isotropy: infinite family of affine automorphisms ({})\n", family.completeness.as_str());
    text.push_str("X -> X + alpha, Y -> C*Y + e(X) with C = (c(Yi,Yj)), e(Yi) = sum_k e(Yi,k)*X^k\n");
    let mut branches = Vec::new();
    for (i, b) in family.branches.iter().enumerate() {
        let eqs: Vec<String> = b.equations.iter().map(|e| e.display(&family.unknowns)).collect();
        text.push_str(&format!("branch {}: {}, {} free parameters\n", i + 1, alpha_text(&b.alpha), b.dimension()));
        for e in &eqs {
            text.push_str(&format!("  {e}\n"));
        }
        let alpha = match &b.alpha {
            AlphaChoice::Fixed(a) => json!({"fixed": a.to_string()}),
            AlphaChoice::Generic { excluded } => {
                json!({"excluded": excluded.iter().map(ToString::to_string).collect::<Vec<_>>()})
            }
        };
        branches.push(json!({"alpha": alpha, "equations": eqs, "free_parameters": b.dimension()}));
    }
    text.push_str(&format!("invertibility: {}\n", family.determinant_text()));
    let verdict = json!({"kind": "family", "infinite": true});
    let witness = json!({
        "unknowns": family.unknowns,
        "deg_bound": family.deg_bound,
        "branches": branches,
        "determinant": family.determinant_text(),
    });
    (text, verdict, witness)
}

fn isotropy_outcome(res: &IsotropyResult, solver: &str) -> Result<(String, Value, Value), Failure> {
    match res {
        IsotropyResult::Family(family) => {
            let (mut text, mut verdict, witness) = family_outcome(family);
            text.insert_str(0, &format!("solver: {solver}\n"));
            verdict["solver"] = json!(solver);
            Ok((text, verdict, witness))
        }
        IsotropyResult::Finite { elements, completeness } => {
            let cert = group_table(res)?;
            let group = if cert.is_trivial() {
                "trivial".to_string()
            } else if cert.is_cyclic() {
                format!("cyclic of order {}", cert.order)
            } else {
                format!("order {}", cert.order)
            };
            let mut text =
                format!("solver: {solver}\nisotropy: {group} ({})\norder: {}\n", completeness.as_str(), cert.order);
            for (i, rho) in elements.iter().enumerate() {
                text.push_str(&format!("element {}: {}\n", i + 1, automorphism_text(rho)));
            }
            let verdict = json!({"kind": "finite", "solver": solver, "order": cert.order, "cyclic": cert.is_cyclic()});
            let witness = json!({
                "elements": elements.iter().map(automorphism_json).collect::<Vec<_>>(),
                "table": cert.table,
                "inverses": cert.inverses,
            });
            Ok((text, verdict, witness))
        }
    }
}

fn solve_isotropy(d: &Derivation, class: Class, deg_bound: usize) -> Result<(IsotropyResult, &'static str), Failure> {
    let class = match class {
        Class::Auto => {
            let two_var = d.nvars() == 2
                && d.has_unit_x()
                && d.image(VarId(1)).degree_in(VarId(1)).finite().is_some_and(|n| n >= 2);
            if two_var {
                Class::Ydegree
            } else if recognize_shamsuddin(d).is_some() {
                Class::Shamsuddin
            } else {
                Class::Affine
            }
        }
        c => c,
    };
    Ok(match class {
        Class::Ydegree => (isotropy_two_var(&YDegreeDerivation::from_derivation(d)?)?, "ydegree"),
        Class::Shamsuddin => (isotropy_shamsuddin(&shamsuddin_of(d)?, deg_bound)?, "shamsuddin"),
        Class::Affine | Class::Auto => (affine_isotropy_search(d, deg_bound)?, "affine"),
    })
}

pub(super) fn isotropy(
    path: &Path,
    class: Class,
    deg_bound: usize,
    require_complete: bool,
) -> Result<Outcome, Failure> {
    let (text, d) = load(path)?;
    let (res, solver) = solve_isotropy(&d, class, deg_bound)?;
    let completeness = res.completeness();
    if require_complete && completeness != crate::isotropy::Completeness::Complete {
        return Err(Error::Unsupported(format!(
            "the {solver} solver only covers the affine ansatz for this input; the complete group is not known"
        ))
        .into());
    }
    let (out, verdict, witness) = isotropy_outcome(&res, solver)?;
    Ok(Outcome {
        command: "isotropy",
        inputs: vec![text.into_bytes()],
        verdict,
        witness,
        completeness: Some(completeness.as_str()),
        text: out,
    })
}

pub(super) fn conjugate(path: &Path, auto: &Path, affine: bool) -> Result<Outcome, Failure> {
    let (text, d) = load(path)?;
    let auto_text = read(auto)?;
    let rho = parse_automorphism(&auto_text, d.ring(), affine).map_err(|e| match e {
        Error::Parse(p) => located(auto, p),
        other => Failure::from(other).with_prefix(auto),
    })?;
    let conj = conjugate_by(&rho, &d)?;
    let printed = print_derivation(&conj);
    let ring = conj.ring();
    let images: serde_json::Map<String, Value> =
        ring.vars().map(|v| (ring.name(v).to_string(), Value::String(conj.image(v).display(ring)))).collect();
    Ok(Outcome {
        command: "conjugate",
        inputs: vec![text.into_bytes(), auto_text.into_bytes()],
        verdict: json!({"images": images, "unchanged": conj == d}),
        witness: Value::Null,
        completeness: None,
        text: printed,
    })
}

impl Failure {
    fn with_prefix(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}

pub(super) fn stable(path: &Path, generator: &str) -> Result<Outcome, Failure> {
    let (text, d) = load(path)?;
    let g = parse_expr(generator, d.ring()).map_err(|e| Failure::input(format!("--gen: {e}")))?;
    let ring = d.ring();
    let w = ideal_stable(&d, &g)?;
    let out = match &w {
        Some(w) => format!("stable: true\ncofactor: {}\n", w.cofactor.display(ring)),
        None => "stable: false\n".to_string(),
    };
    Ok(Outcome {
        command: "stable",
        inputs: vec![text.into_bytes(), generator.as_bytes().to_vec()],
        verdict: json!({"stable": w.is_some(), "generator": g.display(ring)}),
        witness: w.map_or(Value::Null, |w| json!({"cofactor": w.cofactor.display(ring)})),
        completeness: None,
        text: out,
    })
}

fn config(grid: &str, max_degree: usize, budget: u64, seed: u64) -> Result<AnsatzConfig, Failure> {
    let values = grid
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<Rational>().map_err(|_| Failure::input(format!("--grid: `{s}` is not a rational number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AnsatzConfig::new(max_degree, values)?.with_budget(budget).with_seed(seed))
}

fn grid_json(cfg: &AnsatzConfig) -> Value {
    json!({
        "grid": cfg.grid.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "max_degree": cfg.max_degree,
        "budget": cfg.budget,
    })
}

pub(super) fn oracle_isotropy(
    path: &Path,
    grid: &str,
    max_degree: usize,
    budget: u64,
    seed: u64,
) -> Result<Outcome, Failure> {
    let (text, d) = load(path)?;
    let cfg = config(grid, max_degree, budget, seed)?;
    let found = oracle_isotropy_enum(&d, &cfg)?;
    let mut out = format!("found {} commuting automorphisms in the grid\n", found.len());
    for (i, rho) in found.iter().enumerate() {
        out.push_str(&format!("element {}: {}\n", i + 1, automorphism_text(rho)));
    }
    Ok(Outcome {
        command: "oracle-isotropy",
        inputs: vec![text.into_bytes(), grid.as_bytes().to_vec()],
        verdict: json!({"found": found.len(), "only_identity": found.len() == 1 && found[0].is_identity(), "search": grid_json(&cfg)}),
        witness: json!({"elements": found.iter().map(automorphism_json).collect::<Vec<_>>()}),
        completeness: Some(crate::isotropy::Completeness::AnsatzOnly.as_str()),
        text: out,
    })
}

pub(super) fn oracle_ideal(
    path: &Path,
    grid: &str,
    max_degree: usize,
    budget: u64,
    seed: u64,
) -> Result<Outcome, Failure> {
    let (text, d) = load(path)?;
    let cfg = config(grid, max_degree, budget, seed)?;
    let ring = d.ring();
    let w = oracle_ideal_search(&d, &cfg)?;
    let out = match &w {
        Some(w) => {
            format!("stable ideal found: ({})\ncofactor: {}\n", w.generator.display(ring), w.cofactor.display(ring))
        }
        None => "no stable principal ideal in the grid (this does not prove simplicity)\n".to_string(),
    };
    Ok(Outcome {
        command: "oracle-ideal",
        inputs: vec![text.into_bytes(), grid.as_bytes().to_vec()],
        verdict: json!({"found": w.is_some(), "search": grid_json(&cfg)}),
        witness: w.map_or(
            Value::Null,
            |w| json!({"generator": w.generator.display(ring), "cofactor": w.cofactor.display(ring)}),
        ),
        completeness: None,
        text: out,
    })
}
