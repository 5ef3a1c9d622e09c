//! The verification suites behind each CLI command. Each function returns a
//! [`Report`]; errors are reserved for unusable input (unknown names, invalid
//! subalgebras, unreadable data).

use std::path::Path;

use serde_json::json;

use crate::clifford;
use crate::conjugation;
use crate::cosets::{self, CosetDecomposition};
use crate::error::{Error, Result};
use crate::group::{self, CharacterTable, GroupSpec, ORTHOGONALITY_TOLERANCE, RESIDUE_TOLERANCE};
use crate::instance::{Instance, TRIVIAL};
use crate::report::{Report, Status, Verdict};
use crate::subalgebra::{self, Subalgebra};

/// Relative tolerance for the power-iteration cross-check.
pub const EIGEN_RELATIVE_TOLERANCE: f64 = 1e-6;

const CLIFFORD_CHECKS: [&str; 6] = [
    "validate_branching",
    "check_proportionality",
    "block_weights",
    "restrict_formula",
    "check_induction_formula",
    "check_trivial_induction",
];

const CONJUGATION_CHECKS: [&str; 7] = [
    "action_structure",
    "check_composition",
    "check_star",
    "check_coset_invariance",
    "check_induced_equality",
    "check_constituents",
    "restriction_invariance",
];

pub fn cmd_validate(inst: &Instance) -> Report {
    let mut report = Report::new("validate", inst.name());
    validate_into(inst, &mut report);
    report
}

fn validate_into(inst: &Instance, report: &mut Report) -> bool {
    let violations = inst.fusion.validate();
    let mut v = Verdict::pass();
    for viol in &violations {
        v.fail(viol.to_string());
    }
    report.verdict("validate", &v);
    let mut subs = Verdict::pass();
    for name in inst.subalgebra_names() {
        if let Err(e) = inst.subalgebra(name) {
            subs.fail(e.to_string());
        }
    }
    report.verdict("subalgebras", &subs);
    v.is_pass() && subs.is_pass()
}

/// Coset checks for one pair; `prefix` keeps names unique inside `check-all`.
fn coset_checks(dec: &CosetDecomposition<'_>, report: &mut Report, prefix: &str) -> Result<()> {
    let f = dec.parent();
    let (k, l) = (dec.left(), dec.right());
    let name = |n: &str| format!("{prefix}{n}");

    if dec.matrix().is_symmetric() {
        report.push(name("symmetry"), Status::Pass, "");
    } else {
        report.push(name("symmetry"), Status::Fail, "[T] is not symmetric");
    }
    report.verdict(name("verify_eigen"), &cosets::verify_eigen(dec));
    let mut scalar = Verdict::pass();
    for d in 0..f.rank() {
        scalar.merge(cosets::coset_scalar_identity(dec, d));
    }
    report.verdict(name("coset_scalar_identity"), &scalar);

    let (ok, ol) = (k.order()?, l.order()?);
    let meet = l.intersect(k)?.order()?;
    let lk = dec.class_eps(0);
    if ol * ok == meet * lk {
        report.push(name("dimension_identity"), Status::Pass, "");
    } else {
        report.push(
            name("dimension_identity"),
            Status::Fail,
            format!("|L||K| = {} but |L∩K|·|LK| = {}", ol * ok, meet * lk),
        );
    }
    if lk % ok == 0 && ol % meet == 0 && lk / ok == ol / meet {
        report.push(name("rank_corollary"), Status::Pass, "");
    } else {
        report.push(
            name("rank_corollary"),
            Status::Fail,
            format!("|LK|/|K| = {lk}/{ok}, |L|/|L∩K| = {ol}/{meet}"),
        );
    }

    let whole = f.eps(&f.regular())?;
    let one_sided = if k.members() == [f.unit()] {
        Some(ol)
    } else if l.members() == [f.unit()] {
        Some(ok)
    } else {
        None
    };
    match one_sided {
        Some(order) if (dec.classes().len() as i64) * order <= whole => {
            report.push(
                name("index_bound"),
                Status::Pass,
                format!("{} ≤ {}", dec.classes().len(), whole / order),
            );
        }
        Some(order) => report.push(
            name("index_bound"),
            Status::Fail,
            format!("{} classes exceed the index {}", dec.classes().len(), whole / order),
        ),
        None => report.skip(name("index_bound"), "neither side is trivial"),
    }

    let p = cosets::principal_eigen_numeric(dec.matrix());
    let target = dec.eigenvalue() as f64;
    let rel = (p.value - target).abs() / target;
    if !p.converged {
        report.skip(
            name("principal_eigen_numeric"),
            format!("numeric warning: no convergence, last value {}", p.value),
        );
    } else if rel < EIGEN_RELATIVE_TOLERANCE {
        report.push(
            name("principal_eigen_numeric"),
            Status::Pass,
            format!("{} (relative error {rel:.1e})", p.value),
        );
    } else {
        report.push(
            name("principal_eigen_numeric"),
            Status::Fail,
            format!("{} vs |K||L| = {target}", p.value),
        );
    }
    Ok(())
}

fn decomposition_json(dec: &CosetDecomposition<'_>) -> serde_json::Value {
    let classes: Vec<_> = (0..dec.classes().len())
        .map(|i| json!({"labels": dec.class_labels(i), "eps": dec.class_eps(i)}))
        .collect();
    json!({"eigenvalue": dec.eigenvalue(), "classes": classes})
}

pub fn cmd_cosets(inst: &Instance, left: &str, right: &str) -> Result<Report> {
    let k = inst.subalgebra(left)?;
    let l = inst.subalgebra(right)?;
    let dec = cosets::classes(&k, &l)?;
    let mut report = Report::new("cosets", inst.name());
    report.notes.push(format!(
        "r_{{{left},{right}}}: {} classes, eigenvalue |K||L| = {}",
        dec.classes().len(),
        dec.eigenvalue()
    ));
    for i in 0..dec.classes().len() {
        report.notes.push(format!(
            "C{}: {{{}}}  eps(a) = {}",
            i + 1,
            dec.class_labels(i).join(", "),
            dec.class_eps(i)
        ));
    }
    report.details = Some(decomposition_json(&dec));
    coset_checks(&dec, &mut report, "")?;
    Ok(report)
}

pub fn cmd_clifford(inst: &Instance) -> Report {
    let mut report = Report::new("clifford", inst.name());
    clifford_into(inst, &mut report);
    report
}

fn clifford_into(inst: &Instance, report: &mut Report) {
    let Some(bd) = &inst.clifford else {
        for c in CLIFFORD_CHECKS {
            report.skip(c, "no clifford block");
        }
        return;
    };
    let suite = clifford::run_suite(bd);
    for c in CLIFFORD_CHECKS {
        match suite.iter().find(|(n, _)| *n == c) {
            Some((_, v)) => report.verdict(c, v),
            None => report.skip(c, "branching data invalid"),
        }
    }
    if clifford::validate_branching(bd).is_empty() {
        let part = clifford::equiv_classes(bd);
        for (i, (c, b)) in part.classes.iter().zip(&part.blocks).enumerate() {
            let labels = |list: &[crate::fusion::BasisElement], idx: &[usize]| {
                idx.iter()
                    .map(|&x| list[x].label.clone())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            report.notes.push(format!(
                "C{}: {{{}}}  A{}: {{{}}}  a(1) = {}  |A| = {}",
                i + 1,
                labels(bd.irr_h(), c),
                i + 1,
                labels(bd.irr_k(), b),
                part.class_dims[i],
                part.block_weights[i]
            ));
        }
    }
}

pub fn cmd_conjugate(inst: &Instance) -> Result<Report> {
    let mut report = Report::new("conjugate", inst.name());
    conjugate_into(inst, &mut report)?;
    Ok(report)
}

fn conjugate_into(inst: &Instance, report: &mut Report) -> Result<()> {
    let (Some(act), Some(bd)) = (&inst.conjugation, &inst.clifford) else {
        for c in CONJUGATION_CHECKS {
            report.skip(c, "no conjugation block");
        }
        return Ok(());
    };
    let f = &inst.fusion;
    report.verdict("action_structure", &conjugation::check_structure(act, f, bd));
    report.verdict("check_composition", &conjugation::check_composition(act, f));
    match bd.star_k() {
        Some(star) => report.verdict("check_star", &conjugation::check_star(act, star)),
        None => report.skip("check_star", "no star_K in the clifford block"),
    }
    match bd.dual_subalgebra() {
        Some(name) => {
            let k = inst.subalgebra(name)?;
            let dec = cosets::classes(&Subalgebra::trivial(f), &k)?;
            report.verdict(
                "check_coset_invariance",
                &conjugation::check_coset_invariance(act, &dec),
            );
        }
        None => report.skip("check_coset_invariance", "clifford block names no dual subalgebra"),
    }
    report.verdict(
        "check_induced_equality",
        &conjugation::check_induced_equality(act, f, bd),
    );
    report.verdict("check_constituents", &conjugation::check_constituents(act, bd));
    report.verdict(
        "restriction_invariance",
        &conjugation::check_restriction_invariance(act, f, bd),
    );
    Ok(())
}

/// Everything applicable: axioms, every subalgebra pair, and the clifford and
/// conjugation suites when their blocks are present.
pub fn cmd_check_all(inst: &Instance) -> Result<Report> {
    let mut report = Report::new("check-all", inst.name());
    let valid = validate_into(inst, &mut report);
    if valid {
        let subs = inst.all_subalgebras()?;
        for (kn, k) in &subs {
            for (ln, l) in &subs {
                let dec = cosets::classes(k, l)?;
                coset_checks(&dec, &mut report, &format!("cosets[{kn},{ln}]."))?;
            }
        }
    } else {
        report.skip("cosets", "fusion data or subalgebras invalid");
    }
    clifford_into(inst, &mut report);
    conjugate_into(inst, &mut report)?;
    Ok(report)
}

/// Builds the dual fusion instance of a group (with clifford and conjugation
/// blocks for `normal`), checks it, and writes it to `emit`. A non-normal
/// subgroup is reported as a failed `normality` check and nothing is written.
pub fn cmd_group(spec: &GroupSpec, emit: &Path, normal: Option<&str>) -> Result<Report> {
    let oracle = spec.build()?;
    let mut report = Report::new("group", oracle.name.clone());
    report.notes.push(format!(
        "order {}, {} named subgroups",
        oracle.group.order(),
        oracle.subgroups.len()
    ));
    let table = oracle.table()?;
    let err = table.orthogonality_error();
    let status = if err < ORTHOGONALITY_TOLERANCE {
        Status::Pass
    } else {
        Status::Fail
    };
    report.push("character_table", status, format!("orthogonality error {err:.1e}"));

    if let Some(name) = normal {
        let n = oracle.subgroup(name)?;
        if !oracle.group.is_normal(n) {
            report.push(
                "normality",
                Status::Fail,
                Error::NotNormal(name.to_string()).to_string(),
            );
            return Ok(report);
        }
        report.push("normality", Status::Pass, "");
        let table_n = CharacterTable::compute(&oracle.group, n)?;
        let (_, residue) = group::restrict_induce(&oracle.group, n, name, &table, &table_n)?;
        let status = if residue < RESIDUE_TOLERANCE {
            Status::Pass
        } else {
            Status::Fail
        };
        report.push("branching_residue", status, format!("{residue:.1e}"));
    }
    let inst = group::group_instance(spec, normal)?;
    let violations = inst.fusion.validate();
    if violations.is_empty() {
        report.push("validate", Status::Pass, "");
    } else {
        report.push("validate", Status::Fail, format!("{} violations", violations.len()));
    }
    inst.save(emit)?;
    report.notes.push(format!("wrote {}", emit.display()));
    Ok(report)
}

/// `|LK|` for named subalgebras, exposed for scripting.
pub fn product_order(inst: &Instance, left: &str, right: &str) -> Result<i64> {
    subalgebra::product_order(&inst.subalgebra(left)?, &inst.subalgebra(right)?)
}

/// Resolves a reserved or named subalgebra list for reporting.
pub fn subalgebra_names(inst: &Instance) -> Vec<String> {
    std::iter::once(TRIVIAL.to_string())
        .chain(inst.subalgebra_names().map(str::to_string))
        .collect()
}
