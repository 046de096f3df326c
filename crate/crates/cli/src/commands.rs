use std::fmt::Write as _;

use lenscape::artin::{self, ArtinPresentation, FillabilityScreen};
use lenscape::covers::{self, Pi1Report, RefinedCriterion, SignConstraintSystem, SignSolveReport, TotalSpace};
use lenscape::invariants::{self, PdClass};
use lenscape::lattice::{self, LinearPlumbing};
use lenscape::mcg::{self, HoleSet, MultiplicityMatrix, PalfTopology, Twist, TwistFactorization};
use lenscape::milnor::{self, MilnorVerdict, MilnorVerdictKind, UniqueFillingNote};
use lenscape::numbers::{chain_lengths, neg_cf_expand, normalize_lens, riemenschneider_dual, ExactFraction, LensSpace, NegCF};
use lenscape::serde_int::Int;
use lenscape::tight::{self, RotationVector, TightClass};
use lenscape::{Error, Limits, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::LensArgs;

pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
}

impl Report {
    fn new(command: &'static str, result: impl Serialize, text: String) -> Self {
        let result = serde_json::to_value(result).expect("reports serialize");
        Report { command, result, text }
    }

    pub fn to_json(&self) -> String {
        let wrapped = serde_json::json!({ "command": self.command, "result": self.result });
        serde_json::to_string_pretty(&wrapped).expect("values serialize")
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_int(s: &str, what: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| bad(format!("{what} must be an integer, got {s:?}")))
}

/// Longest chain the CLI will expand, whatever the search budget.
const MAX_CHAIN_LENGTH: u64 = 1 << 20;

fn chain_cap(limits: &Limits) -> BigInt {
    BigInt::from(limits.max_search.min(MAX_CHAIN_LENGTH))
}

/// Expansions of `p/q` close to 1 are as long as `p`; refuse before building one.
fn lens_of(args: &LensArgs, limits: &Limits) -> Result<LensSpace> {
    let l = normalize_lens(parse_int(&args.p, "p")?, parse_int(&args.q, "q")?)?;
    let (len, _) = chain_lengths(&l);
    if len > chain_cap(limits) {
        return Err(Error::ResourceLimit(format!("{l} expands to {len} entries, ceiling is {}", chain_cap(limits))));
    }
    Ok(l)
}

/// The dual is long when `q` is small.
fn dual_guard(l: &LensSpace, limits: &Limits) -> Result<()> {
    let (_, len) = chain_lengths(l);
    if len > chain_cap(limits) {
        return Err(Error::ResourceLimit(format!("dual of {l} has {len} entries, ceiling is {}", chain_cap(limits))));
    }
    Ok(())
}

fn rotation_for(cf: &NegCF, s: &str) -> Result<RotationVector> {
    let entries = s
        .split(',')
        .map(|x| parse_int(x, "rotation entry"))
        .collect::<Result<Vec<_>>>()?;
    RotationVector::for_chain(cf, entries)
}

fn read_json(arg: &str) -> Result<Value> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

fn class_name(c: TightClass) -> &'static str {
    match c {
        TightClass::UniversallyTight => "universally tight",
        TightClass::VirtuallyOvertwisted => "virtually overtwisted",
    }
}

fn matrix_text(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| format!("{x:>4}")).collect::<String>())
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Serialize)]
struct InfoResult {
    lens: LensSpace,
    expansion: NegCF,
    dual: NegCF,
    tight_structures: Int,
    contactomorphism_classes: Int,
    universally_tight: Vec<RotationVector>,
    chi_upper_bound: usize,
}

pub fn info(args: &LensArgs, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    dual_guard(&l, limits)?;
    let cf = neg_cf_expand(&l);
    let dual = riemenschneider_dual(&l);
    let count = tight::tight_count(&cf);
    // r = 0 is its own negative exactly when every coefficient is even
    let self_dual = if cf.coeffs().iter().all(|a| a.is_even()) { BigInt::one() } else { BigInt::zero() };
    let classes = (&count + self_dual) / 2;
    let ut = tight::universally_tight_vector(&cf);
    let mut universally_tight = vec![ut.clone()];
    if !ut.is_zero() {
        universally_tight.push(ut.negated());
    }
    let chi = lattice::chi_upper_bound(&l);
    let mut text = String::new();
    writeln!(text, "{l}").unwrap();
    writeln!(text, "expansion: {cf}").unwrap();
    writeln!(text, "dual: {dual}").unwrap();
    writeln!(text, "tight structures: {count} ({classes} up to contactomorphism)").unwrap();
    let uts: Vec<String> = universally_tight.iter().map(|r| r.to_string()).collect();
    writeln!(text, "universally tight: {}", uts.join(" ")).unwrap();
    writeln!(text, "Stein fillings: chi <= {chi}").unwrap();
    Ok(Report::new(
        "info",
        InfoResult {
            lens: l,
            expansion: cf,
            dual,
            tight_structures: Int(count),
            contactomorphism_classes: Int(classes),
            universally_tight,
            chi_upper_bound: chi,
        },
        text,
    ))
}

#[derive(Serialize)]
struct TightEntry {
    rotation: RotationVector,
    signs: String,
    class: TightClass,
    pd: PdClass,
    d3: ExactFraction,
}

#[derive(Serialize)]
struct TightResult {
    lens: LensSpace,
    expansion: NegCF,
    structures: Vec<TightEntry>,
}

pub fn tight(args: &LensArgs, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    let cf = neg_cf_expand(&l);
    let mut structures = Vec::new();
    let mut text = format!("{l} = {cf}\n");
    for r in tight::enumerate_tight(&l, limits)? {
        let entry = TightEntry {
            signs: tight::rotation_to_signs(&cf, &r)?.to_string(),
            class: tight::classify(&cf, &r)?,
            pd: invariants::pd_euler_class(&cf, &r)?,
            d3: invariants::d3_for_rotation(&cf, &r)?,
            rotation: r,
        };
        writeln!(
            text,
            "{:<16} {:<12} {:<22} PD {:<6} d3 {}",
            entry.rotation.to_string(),
            entry.signs,
            class_name(entry.class),
            entry.pd.reduced.to_string(),
            entry.d3
        )
        .unwrap();
        structures.push(entry);
    }
    Ok(Report::new("tight", TightResult { lens: l, expansion: cf, structures }, text))
}

#[derive(Serialize)]
struct D3Result {
    lens: LensSpace,
    rotation: RotationVector,
    class: TightClass,
    d3: ExactFraction,
}

pub fn d3(args: &LensArgs, rot: &str, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    let cf = neg_cf_expand(&l);
    let r = rotation_for(&cf, rot)?;
    let d3 = invariants::d3_for_rotation(&cf, &r)?;
    let class = tight::classify(&cf, &r)?;
    let text = format!("{d3}\n");
    Ok(Report::new("d3", D3Result { lens: l, rotation: r, class, d3 }, text))
}

#[derive(Serialize)]
struct EulerResult {
    lens: LensSpace,
    rotation: RotationVector,
    class: TightClass,
    pd: PdClass,
    c1_zero: bool,
}

pub fn euler(args: &LensArgs, rot: &str, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    let cf = neg_cf_expand(&l);
    let r = rotation_for(&cf, rot)?;
    let pd = invariants::pd_euler_class(&cf, &r)?;
    let c1_zero = invariants::c1_is_zero(&cf, &r)?;
    let class = tight::classify(&cf, &r)?;
    let text = format!("PD = {} (mod {}), unreduced {}\n", pd.reduced, pd.modulus, pd.unreduced);
    Ok(Report::new("euler", EulerResult { lens: l, rotation: r, class, pd, c1_zero }, text))
}

#[derive(Serialize)]
struct LiftResult {
    rotation: RotationVector,
    class: TightClass,
    compatible: Vec<RotationVector>,
    lift_overtwisted: bool,
}

#[derive(Serialize)]
struct SignConstraintResult {
    /// "solved", "inconclusive" or "not_applicable".
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    system: Option<SignConstraintSystem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<SignSolveReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct CoverResult {
    base: LensSpace,
    degree: Int,
    total: TotalSpace,
    total_only_universally_tight: bool,
    basic_criterion: bool,
    refined_criterion: RefinedCriterion,
    #[serde(skip_serializing_if = "Option::is_none")]
    lift: Option<LiftResult>,
    sign_constraints: SignConstraintResult,
}

pub fn cover(args: &LensArgs, deg: &str, rot: Option<&str>, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    let cf = neg_cf_expand(&l);
    let d = parse_int(deg, "degree")?;
    let datum = covers::cover_of(&l, &d)?;
    let basic = covers::overtwisted_lift_basic(&l, &d)?;
    let refined = covers::overtwisted_lift_refined(&l, &d)?;
    let lift = match rot {
        Some(s) => {
            let r = rotation_for(&cf, s)?;
            let compatible = covers::euler_compatibility_filter(&l, &r, &d, limits)?;
            Some(LiftResult {
                class: tight::classify(&cf, &r)?,
                lift_overtwisted: compatible.is_empty(),
                rotation: r,
                compatible,
            })
        }
        None => None,
    };
    let sign_constraints = if d.is_one() || &d == l.p() {
        SignConstraintResult {
            status: "not_applicable",
            system: None,
            equation: None,
            solution: None,
            reason: Some("sign constraints need 1 < d < p".into()),
        }
    } else {
        match covers::lift_sign_constraints(&l, &d, limits) {
            Ok(system) => {
                let solution = covers::solve_sign_constraints(&system, limits)?;
                SignConstraintResult {
                    status: "solved",
                    equation: Some(system.display_sum()),
                    system: Some(system),
                    solution: Some(solution),
                    reason: None,
                }
            }
            Err(Error::Inconclusive(why)) => SignConstraintResult {
                status: "inconclusive",
                system: None,
                equation: None,
                solution: None,
                reason: Some(why),
            },
            Err(e) => return Err(e),
        }
    };

    let mut text = String::new();
    writeln!(text, "{l} -> degree {d} cover {}", datum.total).unwrap();
    if datum.total.only_universally_tight() {
        writeln!(text, "cover carries only universally tight structures").unwrap();
    }
    writeln!(text, "basic criterion (q < p < dq): {}", if basic { "every vo lift overtwisted" } else { "silent" })
        .unwrap();
    writeln!(
        text,
        "refined criterion: p'/q' = {} (inverse route {}), {}",
        refined.expansion_route,
        refined.inverse_route,
        if refined.overtwisted { "every vo lift overtwisted" } else { "silent" }
    )
    .unwrap();
    if let Some(lift) = &lift {
        let list: Vec<String> = lift.compatible.iter().map(|r| r.to_string()).collect();
        writeln!(
            text,
            "lift of {} ({}): {}",
            lift.rotation,
            class_name(lift.class),
            if lift.lift_overtwisted { "no compatible tight lift, overtwisted".to_string() } else { list.join(" ") }
        )
        .unwrap();
    }
    match (&sign_constraints.equation, &sign_constraints.solution) {
        (Some(eq), Some(sol)) => {
            let outcome = match &sol.solution {
                covers::SignSolution::OnlyConstantSigns => "only constant signs".to_string(),
                covers::SignSolution::MixedSolutionExists { witness } => format!("mixed solution {witness:?}"),
            };
            writeln!(text, "sign constraint: {eq}: {outcome} [{}]", sol.confidence).unwrap();
        }
        _ => writeln!(text, "sign constraint: {}", sign_constraints.reason.as_deref().unwrap_or("")).unwrap(),
    }
    Ok(Report::new(
        "cover",
        CoverResult {
            base: l,
            degree: Int(d),
            total_only_universally_tight: datum.total.only_universally_tight(),
            total: datum.total,
            basic_criterion: basic,
            refined_criterion: refined,
            lift,
            sign_constraints,
        },
        text,
    ))
}

pub fn pi1(args: &LensArgs, rot: &str, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    let r = rotation_for(&neg_cf_expand(&l), rot)?;
    let rep: Pi1Report = covers::pi1_chi_report(&l, &r, limits)?;
    let mut text = String::new();
    let lower = match &rep.chi_lower {
        Some(x) => format!("chi >= {x}{}", if rep.chi_exact { " (exact)" } else { "" }),
        None => "no lower bound on chi".to_string(),
    };
    writeln!(text, "{} {} ({}): {lower}", rep.base, rep.rotation, class_name(rep.class)).unwrap();
    for e in &rep.entries {
        let status =
            if e.excluded_by.is_empty() { "possible".to_string() } else { format!("excluded: {}", e.excluded_by.join("; ")) };
        writeln!(text, "order {:<6} cover {:<10} chi <= {:<8} {status}", e.order.to_string(), e.total.to_string(), e.chi_bound.to_string())
            .unwrap();
    }
    let allowed: Vec<String> = rep.allowed_orders.iter().map(|x| x.to_string()).collect();
    writeln!(text, "allowed orders: {}", allowed.join(", ")).unwrap();
    for n in &rep.notes {
        writeln!(text, "note: {n}").unwrap();
    }
    Ok(Report::new("pi1", rep, text))
}

#[derive(Serialize)]
struct OracleResult {
    rank: usize,
    classes: usize,
    irreducible_classes: usize,
}

#[derive(Serialize)]
struct EmbedResult {
    lens: LensSpace,
    dual: NegCF,
    weights: Vec<i64>,
    t: usize,
    images: Vec<Vec<i64>>,
    complement: Vec<Vec<Int>>,
    complement_determinant: Int,
    complement_has_unit_vector: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    gauss_reduced: Option<[Int; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleResult>,
}

pub fn embed(args: &LensArgs, rank: Option<usize>, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    dual_guard(&l, limits)?;
    let dual = riemenschneider_dual(&l);
    let plumbing = LinearPlumbing::from_cf(&dual)?;
    let e = lattice::max_irreducible_embedding(&plumbing)?;
    let complement = lattice::orthogonal_complement(&e);
    let unit = if complement.dim() == 0 {
        false
    } else {
        !lattice::short_vectors(&complement.negated(), &BigInt::one(), limits)?.is_empty()
    };
    let gauss = if complement.dim() == 2 {
        let (a, b, c) = lattice::gauss_reduce(&complement)?;
        Some([Int(a), Int(b), Int(c)])
    } else {
        None
    };
    let oracle = match rank {
        Some(r) => {
            let all = lattice::embedding_oracle(&plumbing, r, limits)?;
            let irreducible = all.iter().filter(|x| x.is_irreducible()).count();
            Some(OracleResult { rank: r, classes: all.len(), irreducible_classes: irreducible })
        }
        None => None,
    };
    let mut text = String::new();
    writeln!(text, "{l}: dual plumbing {:?} embeds in <-1>^{}", plumbing.weights(), e.t).unwrap();
    for (i, v) in e.images.iter().enumerate() {
        writeln!(text, "  v{} -> {v:?}", i + 1).unwrap();
    }
    writeln!(text, "complement: rank {}, det {}", complement.dim(), complement.determinant()).unwrap();
    for row in complement.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
        writeln!(text, "  {}", cells.concat()).unwrap();
    }
    if let Some([a, b, c]) = &gauss {
        writeln!(text, "reduced binary form: ({}, {}, {})", a.0, b.0, c.0).unwrap();
    }
    writeln!(text, "complement contains a -1 vector: {unit}").unwrap();
    if let Some(o) = &oracle {
        writeln!(text, "oracle at rank {}: {} classes, {} irreducible", o.rank, o.classes, o.irreducible_classes).unwrap();
    }
    let rows = complement.rows().iter().map(|r| r.iter().cloned().map(Int).collect()).collect();
    Ok(Report::new(
        "embed",
        EmbedResult {
            lens: l,
            dual,
            weights: plumbing.weights().to_vec(),
            t: e.t,
            images: e.images.clone(),
            complement_determinant: Int(complement.determinant()),
            complement: rows,
            complement_has_unit_vector: unit,
            gauss_reduced: gauss,
            oracle,
        },
        text,
    ))
}

#[derive(Serialize)]
struct MilnorResult {
    lens: LensSpace,
    expansion: NegCF,
    rotation: RotationVector,
    verdict: MilnorVerdict,
    filling_note: UniqueFillingNote,
}

pub fn milnor(args: &LensArgs, rot: &str, limits: &Limits) -> Result<Report> {
    let l = lens_of(args, limits)?;
    let cf = neg_cf_expand(&l);
    let r = rotation_for(&cf, rot)?;
    let verdict = milnor::milnor_verdict(&l, &r, limits)?;
    let note = milnor::unique_filling_note(&l, &r)?;
    let kind = match verdict.verdict {
        MilnorVerdictKind::Obstructed => "Obstructed",
        MilnorVerdictKind::Inconclusive => "Inconclusive",
        MilnorVerdictKind::NotApplicable => "NotApplicable",
    };
    let case = match verdict.case {
        Some(c) => format!(" ({})", serde_json::to_value(c).unwrap().as_str().unwrap_or_default()),
        None => String::new(),
    };
    let text = format!("{kind}{case}: {}\n", verdict.reason);
    Ok(Report::new("milnor", MilnorResult { lens: l, expansion: cf, rotation: r, verdict, filling_note: note }, text))
}

fn presentation(arg: &str) -> Result<ArtinPresentation> {
    serde_json::from_value(read_json(arg)?).map_err(|e| bad(format!("bad presentation: {e}")))
}

#[derive(Serialize)]
struct ArtinResult {
    presentation: ArtinPresentation,
    valid: bool,
}

pub fn artin_validate(arg: &str) -> Result<Report> {
    let p = presentation(arg)?;
    let valid = artin::validate(&p);
    let text = format!("{p}: {}\n", if valid { "valid" } else { "invalid" });
    Ok(Report::new("artin-validate", ArtinResult { presentation: p, valid }, text))
}

pub fn artin_product(first: &str, second: &str) -> Result<Report> {
    let p = artin::artin_product(&presentation(first)?, &presentation(second)?)?;
    let valid = artin::validate(&p);
    let text = format!("{p}\n");
    Ok(Report::new("artin-product", ArtinResult { presentation: p, valid }, text))
}

#[derive(Serialize)]
struct ArtinMatrixResult {
    presentation: ArtinPresentation,
    matrix: MultiplicityMatrix,
    screen: FillabilityScreen,
}

pub fn artin_matrix(arg: &str) -> Result<Report> {
    let p = presentation(arg)?;
    let matrix = artin::relation_matrix(&p)?;
    let screen = artin::stein_fillable_screen(&p)?;
    let verdict = match screen {
        FillabilityScreen::FailsNecessary => "fails the quasi-positivity screen",
        FillabilityScreen::PassesNecessary => "passes the quasi-positivity screen (necessary only)",
    };
    let text = format!("{}\n{verdict}\n", matrix_text(&matrix.entries));
    Ok(Report::new("artin-matrix", ArtinMatrixResult { presentation: p, matrix, screen }, text))
}

fn factorization(arg: &str) -> Result<TwistFactorization> {
    TwistFactorization::from_json(&read_json(arg)?)
}

fn names_of(holes: &[String], s: HoleSet) -> Vec<String> {
    s.indices().iter().map(|&i| holes[i].clone()).collect()
}

#[derive(Serialize)]
struct McgMultResult {
    holes: Vec<String>,
    matrix: MultiplicityMatrix,
    quasipositivity_screen: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    topology: Option<PalfTopology>,
    #[serde(skip_serializing_if = "Option::is_none")]
    topology_note: Option<String>,
}

pub fn mcg_mult(arg: &str) -> Result<Report> {
    let f = factorization(arg)?;
    let matrix = mcg::multiplicity_matrix(&f)?;
    let screen = mcg::quasipositivity_screen(&matrix);
    let (topology, note) = match mcg::palf_euler(&f) {
        Ok(t) => (Some(t), None),
        Err(Error::NotStein(why)) => (None, Some(format!("no Lefschetz fibration: {why}"))),
        Err(e) => return Err(e),
    };
    let mut text = format!("holes: {}\n{}\n", f.holes.join(" "), matrix_text(&matrix.entries));
    writeln!(text, "quasi-positivity screen: {}", if screen { "passes" } else { "fails" }).unwrap();
    match (&topology, &note) {
        (Some(t), _) => {
            let torsion: Vec<String> = t.h1_torsion.iter().map(|x| format!("Z/{x}")).collect();
            let h1 = match (t.h1_rank, torsion.is_empty()) {
                (0, true) => "0".to_string(),
                (r, _) => {
                    let mut parts = if r > 0 { vec![format!("Z^{r}")] } else { vec![] };
                    parts.extend(torsion);
                    parts.join(" + ")
                }
            };
            writeln!(text, "chi = {}, b2 = {}, H1 = {h1}", t.chi, t.b2).unwrap();
        }
        (None, Some(n)) => writeln!(text, "{n}").unwrap(),
        _ => {}
    }
    Ok(Report::new(
        "mcg-mult",
        McgMultResult { holes: f.holes.clone(), matrix, quasipositivity_screen: screen, topology, topology_note: note },
        text,
    ))
}

#[derive(Serialize)]
struct McgConfigsResult {
    holes: Vec<String>,
    target: MultiplicityMatrix,
    max_curves: usize,
    symmetry: Vec<Vec<String>>,
    count: usize,
    configurations: Vec<Vec<Vec<String>>>,
}

fn name_list(v: &Value, what: &str) -> Result<Vec<String>> {
    let items = v.as_array().ok_or_else(|| bad(format!("{what} must be a list")))?;
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(bad(format!("{what} entries must be hole names"))),
        })
        .collect()
}

fn hole_index(holes: &[String], name: &str) -> Result<usize> {
    holes.iter().position(|h| h == name).ok_or_else(|| bad(format!("unknown hole {name:?}")))
}

pub fn mcg_configs(arg: &str, max_curves: usize, symmetry: Option<&str>, limits: &Limits) -> Result<Report> {
    let v = read_json(arg)?;
    let is_matrix = v.as_array().and_then(|a| a.first()).is_some_and(|x| x.is_array());
    let (holes, target) = if is_matrix {
        let entries: Vec<Vec<i64>> =
            serde_json::from_value(v).map_err(|e| bad(format!("bad matrix: {e}")))?;
        let holes = (1..=entries.len()).map(|i| i.to_string()).collect();
        (holes, MultiplicityMatrix::new(entries)?)
    } else {
        let f = TwistFactorization::from_json(&v)?;
        let m = mcg::multiplicity_matrix(&f)?;
        (f.holes, m)
    };
    let mut blocks_named = Vec::new();
    let mut blocks = Vec::new();
    if let Some(s) = symmetry {
        let v = read_json(s)?;
        for block in v.as_array().ok_or_else(|| bad("symmetry must be a list of lists"))? {
            let names = name_list(block, "symmetry block")?;
            blocks.push(names.iter().map(|n| hole_index(&holes, n)).collect::<Result<Vec<_>>>()?);
            blocks_named.push(names);
        }
    }
    let found = mcg::enumerate_configurations(&target, max_curves, &blocks, limits)?;
    let configurations: Vec<Vec<Vec<String>>> =
        found.iter().map(|c| c.iter().map(|&s| names_of(&holes, s)).collect()).collect();
    let mut text = format!("{} configuration class(es) with at most {max_curves} curves\n", configurations.len());
    for (i, c) in configurations.iter().enumerate() {
        let curves: Vec<String> = c.iter().map(|s| format!("{{{}}}", s.join(","))).collect();
        writeln!(text, "{}: {}", i + 1, curves.join(" ")).unwrap();
    }
    Ok(Report::new(
        "mcg-configs",
        McgConfigsResult {
            holes,
            target,
            max_curves,
            symmetry: blocks_named,
            count: configurations.len(),
            configurations,
        },
        text,
    ))
}

#[derive(Serialize)]
struct LanternResult {
    holes: Vec<String>,
    pick: Vec<Vec<String>>,
    before: Vec<Vec<String>>,
    after: Vec<Vec<String>>,
    matrix_before: MultiplicityMatrix,
    matrix_after: MultiplicityMatrix,
    chi_before: i64,
    chi_after: i64,
}

pub fn mcg_lantern(arg: &str, pick: &str) -> Result<Report> {
    let f = factorization(arg)?;
    if let Some(t) = f.twists.iter().find(|t| t.power < 0) {
        return Err(Error::NotStein(format!("negative power {} in a lantern input", t.power)));
    }
    let mut curves = Vec::new();
    for t in &f.twists {
        for _ in 0..t.power {
            curves.push(t.holes);
        }
    }
    curves.sort();
    let pv = read_json(pick)?;
    let parts = pv.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("pick must list exactly three hole sets"))?;
    let mut sets = Vec::new();
    let mut pick_names = Vec::new();
    for part in parts {
        let names = name_list(part, "pick")?;
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        sets.push(f.holeset(&refs)?);
        pick_names.push(names);
    }
    let after = mcg::lantern_rewrite(&curves, (sets[0], sets[1], sets[2]))?;
    let as_factorization = |cs: &[HoleSet]| {
        TwistFactorization::new(f.holes.clone(), cs.iter().map(|&holes| Twist { holes, power: 1 }).collect())
    };
    let before_top = mcg::palf_euler(&as_factorization(&curves)?)?;
    let after_top = mcg::palf_euler(&as_factorization(&after)?)?;
    let h = f.holes.len();
    let result = LanternResult {
        holes: f.holes.clone(),
        pick: pick_names,
        before: curves.iter().map(|&s| names_of(&f.holes, s)).collect(),
        after: after.iter().map(|&s| names_of(&f.holes, s)).collect(),
        matrix_before: mcg::multiset_matrix(&curves, h)?,
        matrix_after: mcg::multiset_matrix(&after, h)?,
        chi_before: before_top.chi,
        chi_after: after_top.chi,
    };
    let show = |cs: &[Vec<String>]| cs.iter().map(|s| format!("{{{}}}", s.join(","))).collect::<Vec<_>>().join(" ");
    let mut text = String::new();
    writeln!(text, "before ({} curves): {}", result.before.len(), show(&result.before)).unwrap();
    writeln!(text, "after  ({} curves): {}", result.after.len(), show(&result.after)).unwrap();
    writeln!(
        text,
        "multiplicities {}; chi {} -> {}",
        if result.matrix_before == result.matrix_after { "unchanged" } else { "CHANGED" },
        result.chi_before,
        result.chi_after
    )
    .unwrap();
    Ok(Report::new("mcg-lantern", result, text))
}
