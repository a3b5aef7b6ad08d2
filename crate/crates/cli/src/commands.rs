use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Number;

use mutinv_core::algebra::{
    laurent_normalize, poly_exact_div, ratfunc_equal, ratfunc_substitute, Rational, RationalFunction,
};
use mutinv_core::cluster::{
    check_constant_terms, check_imr, check_mutation_maction_equivalence, check_mutation_maction_equivalence_at, enumerate_clusters,
    m_action, matrix_mutate, parse_word, walk, ExchangeData, ExchangeMatrix,
};
use mutinv_core::diophantine::{
    brute_force_solutions, certify_completeness, check_descent, enumerate_orbit, DescentCase, DioEquation,
};
use mutinv_core::dvector::{
    check_dvector_vs_cluster, check_growth, classify, dvectors_closed_form, dvectors_matrix_form,
    dvectors_recurrence, ClusterSource, DVector,
};
use mutinv_core::expr::{parse, parse_polynomial, parse_ratfunc, print_polynomial, print_polynomial_named, print_rational};
use mutinv_core::invariants::{
    check_degree_condition, combine_over_clusters, decompose_a1a1, decompose_half_invariant, finite_clusters,
    parse_combiner, search_grid, search_laurent_invariants, verify_invariant, InvariantCandidate,
};
use mutinv_core::{Error, Result};

use crate::args::{Command, DMode, Equation, Exchange, ExprOp, MatrixArg};
use crate::schema;

/// Canonical text and the JSON document of one command.
pub struct Report {
    pub text: String,
    pub json: String,
}

impl Report {
    fn new<T: Serialize>(text: String, doc: &T) -> Report {
        let json = serde_json::to_string_pretty(doc).expect("documents serialize");
        Report { text, json }
    }
}

fn big(k: &BigInt) -> Number {
    Number::from_str(&k.to_string()).expect("integers are valid JSON numbers")
}

fn dpair(d: &DVector) -> [Number; 2] {
    [big(&d.d1), big(&d.d2)]
}

fn position(p: i64) -> String {
    format!("t{p}")
}

pub fn dispatch(command: &Command) -> Result<Report> {
    match command {
        Command::Mutate { ex, word, maction, equivalence, points, k_min, constant_terms, lowest_terms } => {
            match (equivalence, constant_terms) {
                (Some(k_max), _) => equivalence_check(*ex, *k_min, *k_max, *points),
                (None, Some(len)) => constants(*ex, *len, *lowest_terms),
                _ if *maction => mactions(*ex, word),
                _ => mutate(*ex, word),
            }
        }
        Command::Clusters { ex, max_steps } => clusters(*ex, *max_steps),
        Command::Dvectors { ex, mode, k_max, k, lowest_terms } => dvectors(*ex, *mode, *k_max, *k, *lowest_terms),
        Command::Verify { ex, expr, degree } => verify(*ex, expr, *degree),
        Command::Construct { ex, f, phi } => construct(*ex, f, phi),
        Command::Search { ex, s, t, s_max, t_max, contains } => {
            let frame = s.zip(*t);
            search(*ex, frame, (*s_max, *t_max), contains.as_deref())
        }
        Command::Decompose { expr, half } => decompose(expr, *half),
        Command::DioSolve { eq, bound, brute_force } => {
            if *brute_force {
                dio_brute_force(eq, *bound)
            } else {
                dio_solve(eq, *bound)
            }
        }
        Command::DioCertify { eq, bound, descent } => dio_certify(eq, *bound, *descent),
        Command::ImrCheck { matrix, depth, mutate } => imr(matrix, *depth, *mutate),
        Command::Expr { op } => expr(op),
    }
}

fn mutate(Exchange { m, n }: Exchange, word: &str) -> Result<Report> {
    let seeds = walk(ExchangeData::new(m, n)?, &parse_word(word)?)?;
    let mut text = String::new();
    let mut out = Vec::new();
    for s in &seeds {
        writeln!(text, "{}: ({}, {})", position(s.position), s.var1, s.var2).unwrap();
        out.push(schema::WalkSeed { position: s.position, cluster: [s.var1.to_string(), s.var2.to_string()] });
    }
    Ok(Report::new(text, &schema::Walk { m, n, word: word.to_string(), seeds: out }))
}

fn source(lowest_terms: bool) -> ClusterSource {
    if lowest_terms {
        ClusterSource::LowestTerms
    } else {
        ClusterSource::Expanded
    }
}

fn constants(Exchange { m, n }: Exchange, len: usize, lowest_terms: bool) -> Result<Report> {
    let v = check_constant_terms(m, n, len, source(lowest_terms))?;
    let mut text = format!("constant terms: {}\n", v.is_none());
    if let Some(v) = &v {
        writeln!(text, "{} x{}: constant term {}", position(v.position), v.variable, print_rational(&v.constant)).unwrap();
    }
    let doc = schema::ConstantTerms {
        m,
        n,
        length: len,
        holds: v.is_none(),
        violation: v.map(|v| schema::Violation {
            position: v.position,
            variable: v.variable,
            constant: print_rational(&v.constant),
        }),
    };
    Ok(Report::new(text, &doc))
}

fn mactions(Exchange { m, n }: Exchange, word: &str) -> Result<Report> {
    ExchangeData::new(m, n)?;
    let mut pair = (RationalFunction::x1(), RationalFunction::x2());
    let mut pairs = vec![[pair.0.to_string(), pair.1.to_string()]];
    for d in parse_word(word)? {
        pair = m_action(&pair, d, m, n)?;
        pairs.push([pair.0.to_string(), pair.1.to_string()]);
    }
    let mut text = String::new();
    for (r, [f, g]) in pairs.iter().enumerate() {
        writeln!(text, "P{r}: ({f}, {g})").unwrap();
    }
    Ok(Report::new(text, &schema::MActions { m, n, word: word.to_string(), pairs }))
}

/// Fixed positive evaluation points, distinct in both coordinates.
fn sample_points(count: u32) -> Vec<(Rational, Rational)> {
    (0..count as i64)
        .map(|i| (Rational::new((i + 2).into(), (i + 1).into()), Rational::new((2 * i + 5).into(), (i + 3).into())))
        .collect()
}

fn equivalence_check(Exchange { m, n }: Exchange, k_min: usize, k_max: usize, points: Option<u32>) -> Result<Report> {
    let report = match points {
        None => check_mutation_maction_equivalence(m, n, k_max)?,
        Some(c) => check_mutation_maction_equivalence_at(m, n, k_min, k_max, &sample_points(c))?,
    };
    let k_min = if points.is_some() { k_min } else { 0 };
    let mut text = format!("equivalence: {}\nchecked: {}\n", report.holds, report.checked);
    if let Some(c) = &report.counterexample {
        writeln!(text, "counterexample: {c}").unwrap();
    }
    let doc = schema::Equivalence {
        m,
        n,
        k_min,
        k_max,
        points,
        holds: report.holds,
        checked: report.checked,
        counterexample: report.counterexample,
    };
    Ok(Report::new(text, &doc))
}

fn clusters(Exchange { m, n }: Exchange, max_steps: usize) -> Result<Report> {
    let e = enumerate_clusters(m, n, max_steps)?;
    let mut text = String::new();
    let mut list = Vec::new();
    for s in &e.seeds {
        writeln!(text, "{}: ({}, {})", position(s.position), s.var1, s.var2).unwrap();
        list.push([s.var1.to_string(), s.var2.to_string()]);
    }
    match e.period {
        Some(p) => writeln!(text, "period: {p}").unwrap(),
        None => writeln!(text, "period: none within {max_steps} steps").unwrap(),
    }
    Ok(Report::new(text, &schema::Clusters { m, n, period: e.period, clusters: list }))
}

fn dtable<'a>(m: u32, n: u32, rows: impl Iterator<Item = (i64, &'a [DVector; 2])>) -> Report {
    let mut text = String::new();
    let mut table = Vec::new();
    for (p, [d1, d2]) in rows {
        writeln!(text, "{}: d1 = {d1}, d2 = {d2}", position(p)).unwrap();
        table.push(schema::DEntry { position: p, dvectors: [dpair(d1), dpair(d2)] });
    }
    Report::new(text, &schema::DTable { m, n, table })
}

fn dvectors(Exchange { m, n }: Exchange, mode: DMode, k_max: usize, k: Option<u64>, lowest_terms: bool) -> Result<Report> {
    ExchangeData::new(m, n)?;
    match mode {
        DMode::Recurrence => {
            let table = dvectors_recurrence(m, n, k_max as i64)?;
            Ok(dtable(m, n, table.iter().map(|(p, d)| (*p, d))))
        }
        DMode::ClosedForm | DMode::MatrixForm => {
            let ks: Vec<u64> = match k {
                Some(k) => vec![k],
                None => (1..=k_max as u64).collect(),
            };
            let mut rows = Vec::new();
            for k in ks {
                let f = if mode == DMode::ClosedForm { dvectors_closed_form(m, n, k)? } else { dvectors_matrix_form(m, n, k)? };
                rows.push((2 * k as i64, f.even));
                rows.push((2 * k as i64 + 1, f.odd));
            }
            Ok(dtable(m, n, rows.iter().map(|(p, d)| (*p, d))))
        }
        DMode::Check => {
            let mismatch = check_dvector_vs_cluster(m, n, k_max, source(lowest_terms))?;
            let text = match mismatch {
                None => "match: true\n".to_string(),
                Some(p) => format!("match: false\nfirst mismatch: {}\n", position(p)),
            };
            let doc = schema::DCheck { m, n, mode: "check".into(), k_max, holds: mismatch.is_none(), mismatch };
            Ok(Report::new(text, &doc))
        }
        DMode::Classify => {
            let kind = classify(m, n).name().to_string();
            Ok(Report::new(format!("type: {kind}\n"), &schema::Classification { m, n, kind }))
        }
        DMode::Growth => {
            let holds = check_growth(m, n, k_max)?;
            let doc = schema::DCheck { m, n, mode: "growth".into(), k_max, holds, mismatch: None };
            Ok(Report::new(format!("growth: {holds}\n"), &doc))
        }
    }
}

fn verify(Exchange { m, n }: Exchange, expr: &str, degree: bool) -> Result<Report> {
    let t = parse_ratfunc(expr)?;
    let invariant = verify_invariant(&t, m, n)?;
    let degree_condition = if degree { Some(check_degree_condition(&InvariantCandidate::new(t.clone()))?) } else { None };
    let mut text = format!("invariant: {invariant}\n");
    if let Some(d) = degree_condition {
        writeln!(text, "degree condition: {d}").unwrap();
    }
    Ok(Report::new(text, &schema::Verification { m, n, expr: t.to_string(), invariant, degree_condition }))
}

fn construct(Exchange { m, n }: Exchange, f: &str, phi: &str) -> Result<Report> {
    let f = parse_ratfunc(f)?;
    let clusters = finite_clusters(m, n)?;
    let phi = parse_combiner(phi, clusters.len())?;
    let value = combine_over_clusters(&clusters, &f, &phi)?;
    let kind = if value.is_constant() {
        "constant"
    } else if verify_invariant(&value, m, n)? {
        "invariant"
    } else {
        "not_invariant"
    };
    let text = format!("clusters: {}\nphi: {phi}\nT = {value}\nresult: {kind}\n", clusters.len());
    let doc = schema::Construction {
        m,
        n,
        f: f.to_string(),
        phi: phi.describe(),
        clusters: clusters.len(),
        value: value.to_string(),
        kind: kind.into(),
    };
    Ok(Report::new(text, &doc))
}

fn search(Exchange { m, n }: Exchange, frame: Option<(u32, u32)>, grid: (u32, u32), contains: Option<&str>) -> Result<Report> {
    let target = contains.map(parse_ratfunc).transpose()?;
    let spaces = match frame {
        Some((s, t)) => vec![search_laurent_invariants(m, n, s, t)?],
        None => search_grid(m, n, grid.0, grid.1)?,
    };
    let mut text = String::new();
    let mut frames = Vec::new();
    for space in &spaces {
        writeln!(text, "s = {}, t = {}: dimension {}", space.s, space.t, space.dimension()).unwrap();
        let mut basis = Vec::new();
        let mut degree_condition = Vec::new();
        for cand in &space.basis {
            let d = check_degree_condition(cand)?;
            writeln!(text, "  {}  [degree condition: {d}]", cand.value).unwrap();
            basis.push(cand.value.to_string());
            degree_condition.push(d);
        }
        let hit = target.as_ref().map(|f| space.contains(f));
        if let Some(h) = hit {
            writeln!(text, "  contains: {h}").unwrap();
        }
        frames.push(schema::Frame {
            s: space.s,
            t: space.t,
            dimension: space.dimension(),
            basis,
            degree_condition,
            contains: hit,
        });
    }
    Ok(Report::new(text, &schema::Search { m, n, frames }))
}

fn decompose(expr: &str, half: bool) -> Result<Report> {
    let f = parse_ratfunc(expr)?;
    let (lhs, names, g) = if half {
        ("g(X)", vec!["X"], print_polynomial_named(&decompose_half_invariant(&f)?, ["X", "Y"]))
    } else {
        ("G(X1, X2)", vec!["X1", "X2"], print_polynomial_named(&decompose_a1a1(&f)?, ["X1", "X2"]))
    };
    let doc = schema::Decomposition {
        expr: f.to_string(),
        variables: names.into_iter().map(String::from).collect(),
        g: g.clone(),
    };
    Ok(Report::new(format!("{lhs} = {g}\n"), &doc))
}

fn equation(eq: &Equation) -> Result<DioEquation> {
    if let Some(p) = &eq.preset {
        return DioEquation::preset(p);
    }
    let (Some(expr), Some(m), Some(n)) = (&eq.expr, eq.m, eq.n) else {
        unreachable!("clap requires --preset or --expr with --m and --n")
    };
    let t = parse_ratfunc(expr)?;
    match &eq.level {
        None => DioEquation::new(t, m, n, eq.initial.clone()),
        Some(level) => {
            let level = parse_ratfunc(level)?
                .as_constant()
                .ok_or_else(|| Error::PreconditionViolated(format!("level {level:?} is not a constant")))?;
            DioEquation::with_level(t, m, n, eq.initial.clone(), level)
        }
    }
}

fn pair_text(a: impl std::fmt::Display, b: impl std::fmt::Display) -> String {
    format!("({a},{b})")
}

fn dio_solve(eq: &Equation, bound: u64) -> Result<Report> {
    let eq = equation(eq)?;
    let orbit = enumerate_orbit(&eq, &BigInt::from(bound))?;
    let mut text = format!("solutions: {}\nclosed: {}\n", orbit.nodes.len(), orbit.closed);
    let mut solutions = Vec::new();
    for node in &orbit.nodes {
        let word = if node.word.is_empty() { "-" } else { &node.word };
        writeln!(text, "{word} {}", pair_text(&node.pair.0, &node.pair.1)).unwrap();
        solutions.push(schema::Solution { pair: [big(&node.pair.0), big(&node.pair.1)], word: node.word.clone() });
    }
    let doc = schema::Orbit {
        m: eq.m,
        n: eq.n,
        invariant: eq.invariant.to_string(),
        level: print_rational(&eq.level),
        bound,
        closed: orbit.closed,
        solutions,
    };
    Ok(Report::new(text, &doc))
}

fn dio_brute_force(eq: &Equation, bound: u64) -> Result<Report> {
    let eq = equation(eq)?;
    let found = brute_force_solutions(&eq, bound);
    let mut text = format!("solutions: {}\n", found.len());
    for (a, b) in &found {
        writeln!(text, "{}", pair_text(a, b)).unwrap();
    }
    let doc = schema::BruteForce {
        m: eq.m,
        n: eq.n,
        invariant: eq.invariant.to_string(),
        level: print_rational(&eq.level),
        bound,
        solutions: found.iter().map(|&(a, b)| [a, b]).collect(),
    };
    Ok(Report::new(text, &doc))
}

fn dio_certify(eq: &Equation, bound: u64, descent: bool) -> Result<Report> {
    let eq = equation(eq)?;
    if descent && (eq.m, eq.n) != (1, 4) {
        return Err(Error::UnsupportedRegime(format!(
            "descent is stated for (m, n) = (1, 4), not ({}, {})",
            eq.m, eq.n
        )));
    }
    let r = certify_completeness(&eq, bound)?;
    let mut text = format!(
        "complete: {}\nbound: {bound}\norbit: {}\nbrute force: {}\n",
        r.holds,
        r.orbit.nodes.len(),
        r.brute_force.len()
    );
    let listed = |pairs: Vec<String>| if pairs.is_empty() { "none".to_string() } else { pairs.join(" ") };
    writeln!(text, "missing: {}", listed(r.missing.iter().map(|(a, b)| pair_text(a, b)).collect())).unwrap();
    writeln!(text, "unexpected: {}", listed(r.unexpected.iter().map(|(a, b)| pair_text(a, b)).collect())).unwrap();
    let cert = schema::Certificate {
        invariant: eq.invariant.to_string(),
        level: print_rational(&eq.level),
        bound,
        holds: r.holds,
        orbit: r.orbit.nodes.len(),
        brute_force: r.brute_force.len(),
        missing: r.missing.iter().map(|&(a, b)| [a, b]).collect(),
        unexpected: r.unexpected.iter().map(|(a, b)| [big(a), big(b)]).collect(),
    };
    if !descent {
        return Ok(Report::new(text, &cert));
    }
    // every solution the scan found, not only those the orbit reached
    let mut steps = Vec::new();
    let mut lines = String::new();
    for &(a, b) in r.brute_force.iter().filter(|&&(a, b)| a != 1 && b != 1) {
        let d = check_descent(&(BigInt::from(a), BigInt::from(b)))?;
        let case = match d.case {
            DescentCase::Above => "above",
            DescentCase::Below => "below",
        };
        writeln!(
            lines,
            "{} {case}: a' = {}, b' = {}, first: {}, second: {}",
            pair_text(a, b),
            d.a_prime,
            d.b_prime,
            d.first,
            d.second
        )
        .unwrap();
        steps.push(schema::DescentStep {
            pair: [a.into(), b.into()],
            case: case.into(),
            a_prime: big(&d.a_prime),
            b_prime: big(&d.b_prime),
            first: d.first,
            second: d.second,
        });
    }
    let holds = steps.iter().all(|s| s.first && s.second);
    writeln!(text, "descent: {holds} ({} solutions)", steps.len()).unwrap();
    text.push_str(&lines);
    #[derive(Serialize)]
    struct Both {
        certificate: schema::Certificate,
        descent: schema::Descent,
    }
    let doc = Both { certificate: cert, descent: schema::Descent { bound, holds, steps } };
    Ok(Report::new(text, &doc))
}

fn matrix_text(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn imr(MatrixArg(rows): &MatrixArg, depth: usize, mutate: Option<usize>) -> Result<Report> {
    let b = ExchangeMatrix::new(rows.clone())?;
    if let Some(k) = mutate {
        let result = matrix_mutate(&b, k)?.entries().to_vec();
        let text = format!("{}\n", matrix_text(&result));
        return Ok(Report::new(text, &schema::Mutated { matrix: rows.clone(), k, result }));
    }
    let r = check_imr(&b, depth);
    let mut text = format!("imr: {}\nreached: {}\nclosed: {}\n", r.holds, r.reached, r.closed);
    if let Some(w) = &r.witness {
        let w: Vec<String> = w.iter().map(usize::to_string).collect();
        writeln!(text, "witness: {}", w.join(",")).unwrap();
    }
    let doc = schema::Imr {
        matrix: rows.clone(),
        depth,
        holds: r.holds,
        reached: r.reached,
        closed: r.closed,
        witness: r.witness,
    };
    Ok(Report::new(text, &doc))
}

fn value(op: &str, v: impl std::fmt::Display) -> Report {
    let value = v.to_string();
    Report::new(format!("{value}\n"), &schema::ExprValue { op: op.into(), value })
}

fn expr(op: &ExprOp) -> Result<Report> {
    let p = parse_ratfunc;
    Ok(match op {
        ExprOp::Print { expr } => value("print", p(expr)?),
        ExprOp::Parse { expr } => value("parse", parse(expr)?),
        ExprOp::Add { a, b } => value("add", &p(a)? + &p(b)?),
        ExprOp::Sub { a, b } => value("sub", &p(a)? - &p(b)?),
        ExprOp::Mul { a, b } => value("mul", &p(a)? * &p(b)?),
        ExprOp::Div { a, b } => value("div", p(a)?.div(&p(b)?)?),
        ExprOp::ExactDiv { a, b } => {
            value("exact-div", print_polynomial(&poly_exact_div(&parse_polynomial(a)?, &parse_polynomial(b)?)?))
        }
        ExprOp::Pow { a, k } => value("pow", p(a)?.pow(*k)?),
        ExprOp::Equal { a, b } => {
            let equal = ratfunc_equal(&p(a)?, &p(b)?);
            Report::new(format!("equal: {equal}\n"), &schema::ExprEqual { op: "equal".into(), equal })
        }
        ExprOp::Substitute { f, s1, s2 } => value("substitute", ratfunc_substitute(&p(f)?, &p(s1)?, &p(s2)?)?),
        ExprOp::Normalize { num, d1, d2 } => {
            let l = laurent_normalize(parse_polynomial(num)?, *d1, *d2)?;
            let numerator = print_polynomial(l.numerator());
            let (e1, e2) = l.denominator_exponents();
            let text = format!("numerator: {numerator}\nd = ({e1}, {e2})\n");
            Report::new(text, &schema::ExprNormal { op: "normalize".into(), numerator, d: [e1, e2] })
        }
    })
}
