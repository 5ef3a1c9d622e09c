//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs with `harness = false` so the summary is printed even on success.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dcoset::clifford;
use dcoset::commands;
use dcoset::conjugation;
use dcoset::cosets;
use dcoset::fusion::{Axiom, BasisElement, FusionData, FusionEntry};
use dcoset::group::{self, CharacterTable, GroupSpec, MackeyOutcome, ORTHOGONALITY_TOLERANCE, RESIDUE_TOLERANCE};
use dcoset::{bundled, Error, Instance, Subalgebra};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dcoset"))
}

/// Every instance file shipped in the data directory, sorted by name.
fn bundled_instances() -> Vec<(String, Instance)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(data_dir())
        .expect("data dir")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let inst = Instance::load(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, inst)
        })
        .collect()
}

/// `trivial`, every named subalgebra, and the whole basis when it is not named.
fn pair_candidates(inst: &Instance) -> Result<Vec<(String, Subalgebra<'_>)>, Error> {
    let mut subs = inst.all_subalgebras()?;
    let whole = Subalgebra::whole(&inst.fusion);
    if !subs.iter().any(|(_, s)| *s == whole) {
        subs.push(("whole".into(), whole));
    }
    Ok(subs)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn kashina_reproduction() -> Outcome {
    let text = std::fs::read_to_string(data_dir().join("kashina.json")).map_err(err)?;
    let start = Instant::now();
    let inst = Instance::from_json(&text).map_err(err)?;
    let t = inst.subalgebra("trivial").map_err(err)?;
    let k = inst.subalgebra("K").map_err(err)?;
    let dec = cosets::classes(&t, &k).map_err(err)?;
    let elapsed = start.elapsed();

    let mut got: Vec<Vec<&str>> = (0..dec.classes().len()).map(|i| dec.class_labels(i)).collect();
    for c in &mut got {
        c.sort();
    }
    got.sort();
    let expected = vec![vec!["1", "x"], vec!["d1", "d3"], vec!["d2"], vec!["xy", "y"]];
    ensure(got == expected, || format!("classes {got:?}"))?;
    let index = inst.fusion.eps(&inst.fusion.regular()).map_err(err)? / k.order().map_err(err)?;
    ensure(index == 8 && got.len() < 8, || {
        format!("{} classes vs index {index}", got.len())
    })?;
    ensure(elapsed < Duration::from_millis(100), || format!("took {elapsed:?}"))?;

    let out = bin()
        .args(["--data-dir", data_dir().to_str().unwrap()])
        .args(["cosets", "kashina.json", "--left", "trivial", "--right", "K"])
        .output()
        .map_err(err)?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), || {
        format!("CLI exit {:?}", out.status.code())
    })?;
    ensure(stdout.contains("4 classes"), || format!("CLI output:\n{stdout}"))?;
    Ok(format!("4 classes < index 8 in {elapsed:?}"))
}

fn eigen_exactness() -> Outcome {
    let mut pairs = 0;
    for (name, inst) in bundled_instances() {
        let subs = pair_candidates(&inst).map_err(err)?;
        for (kn, k) in &subs {
            for (ln, l) in &subs {
                let dec = cosets::classes(k, l).map_err(err)?;
                let v = cosets::verify_eigen(&dec);
                ensure(v.is_pass(), || format!("{name} ({kn},{ln}): {:?}", v.failures()))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (stem, text) in bundled::GROUPS {
        let oracle = GroupSpec::from_json(text).map_err(err)?.build().map_err(err)?;
        let inst = group::dual_fusion(&oracle).map_err(err)?;
        let subs = oracle.subgroups_with_extremes();
        for (kn, k) in &subs {
            let ks = Subalgebra::new(&inst.fusion, k.members().iter().copied()).map_err(err)?;
            for (ln, l) in &subs {
                let ls = Subalgebra::new(&inst.fusion, l.members().iter().copied()).map_err(err)?;
                let dec = cosets::classes(&ks, &ls).map_err(err)?;
                let mut fusion_side: Vec<Vec<usize>> = dec.classes().to_vec();
                for c in &mut fusion_side {
                    c.sort();
                }
                fusion_side.sort();
                let mut group_side = oracle.group.double_cosets(k, l);
                for c in &mut group_side {
                    c.sort();
                }
                group_side.sort();
                ensure(fusion_side == group_side, || {
                    format!("{stem} ({kn},{ln}): partitions differ")
                })?;
                for (i, class) in dec.classes().iter().enumerate() {
                    ensure(dec.class_eps(i) == class.len() as i64, || {
                        format!(
                            "{stem} ({kn},{ln}): ε(a_{i}) = {} but |Kg L| = {}",
                            dec.class_eps(i),
                            class.len()
                        )
                    })?;
                }
                pairs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} pairs over 6 groups in {elapsed:?}"))
}

fn dimension_identity() -> Outcome {
    let mut pairs = 0;
    for (name, inst) in bundled_instances() {
        let subs = pair_candidates(&inst).map_err(err)?;
        for (kn, k) in &subs {
            for (ln, l) in &subs {
                let lk = dcoset::subalgebra::product_order(k, l).map_err(err)?;
                let meet = l.intersect(k).map_err(err)?.order().map_err(err)?;
                let (ok, ol) = (k.order().map_err(err)?, l.order().map_err(err)?);
                ensure(ol * ok == meet * lk, || {
                    format!("{name} ({kn},{ln}): {ol}·{ok} ≠ {meet}·{lk}")
                })?;
                pairs += 1;
            }
        }
    }
    // Frobenius on element sets, counted independently of the fusion side.
    for (stem, text) in bundled::GROUPS {
        let oracle = GroupSpec::from_json(text).map_err(err)?.build().map_err(err)?;
        let subs = oracle.subgroups_with_extremes();
        for (_, k) in &subs {
            for (_, l) in &subs {
                let lk = oracle.group.product_set(l, k).len();
                ensure(l.order() * k.order() == l.intersect(k).order() * lk, || {
                    format!("{stem}: Frobenius count fails")
                })?;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

struct NormalPair {
    label: String,
    inst: Instance,
}

fn normal_pairs() -> Result<Vec<NormalPair>, String> {
    bundled::NORMAL_PAIRS
        .iter()
        .map(|&(stem, n)| {
            let spec = GroupSpec::from_json(bundled::group_spec(stem).unwrap()).map_err(err)?;
            let inst = group::group_instance(&spec, Some(n)).map_err(err)?;
            Ok(NormalPair {
                label: format!("{stem}⊳{n}"),
                inst,
            })
        })
        .collect()
}

fn clifford_suite() -> Outcome {
    let wanted = [
        "check_proportionality",
        "block_weights",
        "restrict_formula",
        "check_induction_formula",
        "check_trivial_induction",
    ];
    let pairs = normal_pairs()?;
    for p in &pairs {
        let bd = p.inst.clifford.as_ref().ok_or("missing clifford block")?;
        let suite = clifford::run_suite(bd);
        for name in wanted {
            let (_, v) = suite
                .iter()
                .find(|(n, _)| *n == name)
                .ok_or_else(|| format!("{}: {name} did not run", p.label))?;
            ensure(v.is_pass(), || format!("{}: {name}: {:?}", p.label, v.failures()))?;
        }
        let part = clifford::equiv_classes(bd);
        for (i, &w) in part.block_weights.iter().enumerate() {
            ensure(part.class_dims[i] * bd.dim_k() == bd.dim_h() * w, || {
                format!("{}: a_{i}(1) = {} vs |A_{i}| = {w}", p.label, part.class_dims[i])
            })?;
        }
    }
    Ok(format!("{} normal pairs", pairs.len()))
}

fn conjugation_suite() -> Outcome {
    let pairs = normal_pairs()?;
    for p in &pairs {
        let f = &p.inst.fusion;
        let bd = p.inst.clifford.as_ref().ok_or("missing clifford block")?;
        let act = p.inst.conjugation.as_ref().ok_or("missing conjugation block")?;
        let k = p
            .inst
            .subalgebra(bd.dual_subalgebra().ok_or("no dual subalgebra")?)
            .map_err(err)?;
        let dec = cosets::classes(&Subalgebra::trivial(f), &k).map_err(err)?;
        let checks = [
            ("structure", conjugation::check_structure(act, f, bd)),
            ("check_composition", conjugation::check_composition(act, f)),
            (
                "check_star",
                conjugation::check_star(act, bd.star_k().ok_or("no star_K")?),
            ),
            ("check_coset_invariance", conjugation::check_coset_invariance(act, &dec)),
            (
                "check_induced_equality",
                conjugation::check_induced_equality(act, f, bd),
            ),
            ("check_constituents", conjugation::check_constituents(act, bd)),
        ];
        for (name, v) in checks {
            ensure(v.is_pass(), || format!("{}: {name}: {:?}", p.label, v.failures()))?;
        }
    }
    Ok(format!("{} normal pairs", pairs.len()))
}

fn mackey() -> Outcome {
    let oracle = GroupSpec::from_json(bundled::GROUP_S4)
        .map_err(err)?
        .build()
        .map_err(err)?;
    let g = &oracle.group;
    let triples = [("C2", "A4"), ("S3", "V4"), ("D8", "C4")];
    let mut checked = 0;
    for (ln, kn) in triples {
        let l = oracle.subgroup(ln).map_err(err)?;
        let k = oracle.subgroup(kn).map_err(err)?;
        match group::check_mackey_unique_coset(g, l, k).map_err(err)? {
            MackeyOutcome::Checked { verdict, max_residue } => {
                ensure(verdict.is_pass(), || {
                    format!("L={ln}, K={kn}: {:?}", verdict.failures())
                })?;
                ensure(max_residue < RESIDUE_TOLERANCE, || format!("residue {max_residue:e}"))?;
                checked += 1;
            }
            MackeyOutcome::Skipped(why) => return Err(format!("L={ln}, K={kn} skipped: {why}")),
        }
    }
    ensure(checked >= 2, || "fewer than two triples".into())?;
    Ok(format!("{checked} triples in S4"))
}

fn numeric_cross_check() -> Outcome {
    let mut worst_rel: f64 = 0.0;
    let mut pairs = 0;
    for (name, inst) in bundled_instances() {
        let subs = pair_candidates(&inst).map_err(err)?;
        for (kn, k) in &subs {
            for (ln, l) in &subs {
                let dec = cosets::classes(k, l).map_err(err)?;
                let p = cosets::principal_eigen_numeric(dec.matrix());
                let target = dec.eigenvalue() as f64;
                let rel = (p.value - target).abs() / target;
                ensure(p.converged && rel < commands::EIGEN_RELATIVE_TOLERANCE, || {
                    format!("{name} ({kn},{ln}): {} vs {target}", p.value)
                })?;
                worst_rel = worst_rel.max(rel);
                pairs += 1;
            }
        }
    }
    let mut worst_orth: f64 = 0.0;
    let mut worst_residue: f64 = 0.0;
    for (stem, text) in bundled::GROUPS {
        let oracle = GroupSpec::from_json(text).map_err(err)?.build().map_err(err)?;
        let table = oracle.table().map_err(err)?;
        worst_orth = worst_orth.max(table.orthogonality_error());
        let (_, residue) = group::rep_fusion(&oracle).map_err(err)?;
        worst_residue = worst_residue.max(residue);
        for (n_name, n) in &oracle.subgroups {
            let tn = CharacterTable::compute(&oracle.group, n).map_err(err)?;
            worst_orth = worst_orth.max(tn.orthogonality_error());
            if oracle.group.is_normal(n) {
                let (_, residue) = group::restrict_induce(&oracle.group, n, n_name, &table, &tn)
                    .map_err(|e| format!("{stem}⊳{n_name}: {e}"))?;
                worst_residue = worst_residue.max(residue);
            }
        }
    }
    ensure(worst_orth < ORTHOGONALITY_TOLERANCE, || {
        format!("orthogonality error {worst_orth:e}")
    })?;
    ensure(worst_residue < RESIDUE_TOLERANCE, || {
        format!("rounding residue {worst_residue:e}")
    })?;
    Ok(format!(
        "{pairs} pairs, eigenvalue rel. err ≤ {worst_rel:.1e}, orthogonality ≤ {worst_orth:.1e}, residue ≤ {worst_residue:.1e}"
    ))
}

/// Fusion data of the Steiner loop of order 10: `e` plus the points of the
/// affine plane over F_3, with `x·x = e` and `x·y` the third point on the line
/// through `x` and `y`. Commutative, every element self-dual, Frobenius
/// reciprocity holds, but the product is not associative.
fn steiner_loop() -> Result<FusionData, Error> {
    let points: Vec<(u8, u8)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    let idx = |p: (u8, u8)| 1 + points.iter().position(|&q| q == p).unwrap();
    let mut basis = vec![BasisElement {
        label: "e".into(),
        dim: 1,
    }];
    basis.extend(points.iter().map(|(a, b)| BasisElement {
        label: format!("p{a}{b}"),
        dim: 1,
    }));
    let n = basis.len();
    let mut entries = Vec::new();
    for i in 0..n {
        entries.push(FusionEntry {
            left: 0,
            right: i,
            result: i,
            mult: 1,
        });
        if i > 0 {
            entries.push(FusionEntry {
                left: i,
                right: 0,
                result: i,
                mult: 1,
            });
        }
    }
    for (i, &p) in points.iter().enumerate() {
        for (j, &q) in points.iter().enumerate() {
            let result = if i == j {
                0
            } else {
                idx(((6 - p.0 - q.0) % 3, (6 - p.1 - q.1) % 3))
            };
            entries.push(FusionEntry {
                left: i + 1,
                right: j + 1,
                result,
                mult: 1,
            });
        }
    }
    FusionData::new("steiner-loop-10", basis, 0, (0..n).collect(), entries)
}

fn negative_controls() -> Outcome {
    let broken = steiner_loop().map_err(err)?;
    let violations = broken.validate();
    ensure(!violations.is_empty(), || "corrupted table validated".into())?;
    ensure(violations.iter().all(|v| v.axiom == Axiom::Associativity), || {
        format!("unexpected violations: {}", violations[0])
    })?;

    let dir = std::env::temp_dir().join(format!("dcoset-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let bad = dir.join("broken.json");
    Instance::new(broken).save(&bad).map_err(err)?;
    let out = bin().arg("validate").arg(&bad).output().map_err(err)?;
    ensure(out.status.code() == Some(1), || {
        format!("validate exit {:?}", out.status.code())
    })?;
    ensure(String::from_utf8_lossy(&out.stdout).contains("associativity"), || {
        "validate output does not name associativity".into()
    })?;

    let oracle = GroupSpec::from_json(bundled::GROUP_S4)
        .map_err(err)?
        .build()
        .map_err(err)?;
    let c2 = oracle.subgroup("C2").map_err(err)?;
    let table = oracle.table().map_err(err)?;
    let tc2 = CharacterTable::compute(&oracle.group, c2).map_err(err)?;
    match group::restrict_induce(&oracle.group, c2, "C2", &table, &tc2) {
        Err(Error::NotNormal(_)) => {}
        other => return Err(format!("restrict_induce on S4, C2 gave {other:?}")),
    }
    let emit = dir.join("never-written.json");
    let out = bin()
        .args(["--data-dir", data_dir().to_str().unwrap()])
        .args(["group", "s4.json", "--normal", "C2", "--emit"])
        .arg(&emit)
        .output()
        .map_err(err)?;
    ensure(out.status.code() == Some(1), || {
        format!("group --normal C2 exit {:?}", out.status.code())
    })?;
    ensure(!emit.exists(), || "instance written for a non-normal subgroup".into())?;

    let garbled = dir.join("garbled.json");
    std::fs::write(&garbled, "{\n  \"name\": \"x\",\n  \"basis\": [\n").map_err(err)?;
    let out = bin().arg("validate").arg(&garbled).output().map_err(err)?;
    ensure(out.status.code() == Some(2), || {
        format!("malformed file exit {:?}", out.status.code())
    })?;
    std::fs::remove_dir_all(&dir).map_err(err)?;
    Ok("associativity violation → exit 1, non-normal → NotNormal / exit 1, malformed → exit 2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("kashina reproduction", kashina_reproduction),
        ("eigen exactness", eigen_exactness),
        ("oracle equivalence", oracle_equivalence),
        ("dimension identity", dimension_identity),
        ("clifford suite", clifford_suite),
        ("conjugation suite", conjugation_suite),
        ("mackey unique coset", mackey),
        ("numeric cross-check", numeric_cross_check),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
