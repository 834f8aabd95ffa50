use quadsec_core::cohomology::{
    ideal_power_saturated, second_vanishing, vanishing_scan, CohomologyEngine, ModuleKind, SecondVanishing,
    VanishingScan,
};
use quadsec_core::conditions::{
    check_kd_with, check_n2, default_normality_bound, fano_lines, four_point_span_check, FourPointReport, KdReport,
};
use quadsec_core::corpus::{default_corpus, identify, Family};
use quadsec_core::flipcalc::{
    canonical_class, kv_class, kv_sides, m2_assumption_holds, pullback_h, threshold, verify_kv_rewrite, DivisorClass,
    Space, Sym, ThresholdFormula, ThresholdVariant,
};
use quadsec_core::groebner::{hilbert_data, GbOptions};
use quadsec_core::secant::{
    fiber_report, fiber_sample, line_sample, secant_ideal, secant_report, FiberKind, FiberReport, SecantReport,
};
use quadsec_core::syzygy::{free_resolution, syzygies_with};
use quadsec_core::{Error, Field, Ideal, InputModel, Result};
use serde_json::Value;

use crate::report::{betti, hilbert, ideal, int, ints, obj, point, polys, rational, syzygy};
use crate::{Command, Common, Kind, Loaded};

pub struct Outcome {
    pub parameters: Value,
    pub result: Value,
    pub violations: bool,
}

fn ok(parameters: Value, result: Value) -> Result<Outcome> {
    Ok(Outcome { parameters, result, violations: false })
}

fn no_params() -> Value {
    obj([])
}

fn require(loaded: Option<&Loaded>) -> Result<&InputModel> {
    loaded
        .map(|l| &l.model)
        .ok_or_else(|| Error::InvalidArgument("no input: give an input file or --corpus <family>".into()))
}

fn selected(loaded: Option<&Loaded>, common: &Common, opts: &GbOptions) -> Result<Ideal> {
    Ok(require(loaded)?.select_ideal(common.ideal.as_deref())?.clone().with_options(opts.clone()))
}

pub fn dispatch(
    command: &Command,
    loaded: Option<&Loaded>,
    common: &Common,
    field: Field,
    opts: &GbOptions,
) -> Result<Outcome> {
    match command {
        Command::Gb(_) => {
            let i = selected(loaded, common, opts)?;
            ok(no_params(), gb_value(&i)?)
        }
        Command::Syz(_) => {
            let i = selected(loaded, common, opts)?;
            let syz = syzygies_with(i.gens(), opts)?;
            ok(no_params(), obj([("syzygies", Value::Array(syz.iter().map(syzygy).collect()))]))
        }
        Command::Betti { length, .. } => {
            let i = selected(loaded, common, opts)?;
            ok(obj([("length", int(length))]), betti(&free_resolution(&i, *length)?.betti))
        }
        Command::CheckK2(_) => {
            let i = selected(loaded, common, opts)?;
            ok(obj([("degree", int(2))]), kd_value(&check_kd_with(i.gens(), 2, opts)?))
        }
        Command::CheckKd { degree, .. } => {
            let i = selected(loaded, common, opts)?;
            ok(obj([("degree", int(degree))]), kd_value(&check_kd_with(i.gens(), *degree, opts)?))
        }
        Command::CheckN2 { bound, .. } => {
            let i = selected(loaded, common, opts)?;
            let bound = bound.unwrap_or(default_normality_bound(2));
            ok(obj([("bound", int(bound))]), n2_value(&i, bound)?)
        }
        Command::Lines(_) => {
            let i = selected(loaded, common, opts)?;
            ok(obj([("trials", int(common.trials))]), lines_value(&i, common.trials, common.seed)?)
        }
        Command::Secant(_) => {
            let i = selected(loaded, common, opts)?;
            let sigma = secant_ideal(&i)?;
            let h = hilbert_data(&sigma)?;
            ok(no_params(), obj([("generators", ideal(&sigma)), ("hilbert", hilbert(&h))]))
        }
        Command::Deficiency(_) => {
            let i = selected(loaded, common, opts)?;
            let rep = secant_report(&i)?;
            let k2 = k2_holds(&i)?;
            let bad = k2 && !rep.formula_consistent;
            Ok(Outcome { parameters: no_params(), result: deficiency_value(&rep, k2), violations: bad })
        }
        Command::Fiber(_) => {
            let model = require(loaded)?;
            let i = selected(loaded, common, opts)?;
            match &common.point {
                Some(name) => {
                    let p =
                        model.point(name).ok_or_else(|| Error::InvalidArgument(format!("no point named '{name}'")))?;
                    let rep = fiber_report(&i, p)?;
                    let bad = matches!(rep.kind, FiberKind::Other { .. });
                    let params = obj([("point", Value::String(name.clone()))]);
                    Ok(Outcome { parameters: params, result: fiber_value(&rep, p), violations: bad })
                }
                None => {
                    let sample = fiber_sample(&i, common.trials, common.seed)?;
                    let fibers: Vec<Value> = sample
                        .fibers
                        .iter()
                        .map(|f| {
                            obj([
                                ("point", point(&f.point)),
                                ("on_secant", Value::Bool(f.on_secant)),
                                ("kind", kind_value(&f.kind)),
                                ("consistent", Value::Bool(f.consistent())),
                            ])
                        })
                        .collect();
                    let v = sample.violations();
                    let result = obj([("fibers", Value::Array(fibers)), ("violations", int(v))]);
                    Ok(Outcome { parameters: obj([("trials", int(common.trials))]), result, violations: v > 0 })
                }
            }
        }
        Command::Cohomology { kind, power, k_min, k_max, .. } => {
            let i = selected(loaded, common, opts)?;
            let params = obj([
                ("kind", Value::String(format!("{kind:?}").to_lowercase())),
                ("power", int(power)),
                ("k_min", int(k_min)),
                ("k_max", int(k_max)),
            ]);
            ok(params, cohomology_value(&i, *kind, *power, *k_min, *k_max)?)
        }
        Command::VanishScan { d, a_min, a_max, window, second, .. } => {
            let i = selected(loaded, common, opts)?;
            let scan = vanishing_scan(&i, *d, *a_min..=*a_max, *window)?;
            let k2 = check_kd_with(i.gens(), *d, opts)?.holds;
            let mut bad = !scan_ok(&scan, k2);
            let mut result = scan_value(&scan, k2);
            if let Some(a) = second {
                let sv = second_vanishing(&i, *a)?;
                bad |= !sv.euler_consistent || (k2 && !sv.violations.is_empty());
                result.as_object_mut().expect("object").insert("second".into(), second_value(&sv));
            }
            let params = obj([
                ("d", int(d)),
                ("a_min", int(a_min)),
                ("a_max", int(a_max)),
                ("window", int(window)),
                ("second", second.map_or(Value::Null, int)),
            ]);
            Ok(Outcome { parameters: params, result, violations: bad })
        }
        Command::FlipVerify => {
            let (result, all) = flip_value()?;
            Ok(Outcome { parameters: no_params(), result, violations: !all })
        }
        Command::Thresholds { variant, d, a, e, n, r, .. } => {
            let derived = match loaded {
                Some(_) => {
                    let i = selected(loaded, common, opts)?;
                    let nn = i.ring().nvars() as i64 - 1;
                    let rr = hilbert_data(&i)?.dimension;
                    Some((nn, rr))
                }
                None => None,
            };
            let n = n.or(derived.map(|x| x.0)).ok_or_else(|| Error::InvalidArgument("give --n or an input".into()))?;
            let r = r.or(derived.map(|x| x.1)).ok_or_else(|| Error::InvalidArgument("give --r or an input".into()))?;
            let e = e.unwrap_or(n - r);
            let variants: Vec<ThresholdVariant> = match variant {
                Some(v) => vec![v.parse()?],
                None => vec![ThresholdVariant::Little, ThresholdVariant::Veronese, ThresholdVariant::Second],
            };
            let mut out = serde_json::Map::new();
            for v in variants {
                out.insert(v.to_string(), threshold_value(&threshold(v, *d, e, *a, n, r)?));
            }
            let params = obj([("d", int(d)), ("a", int(a)), ("e", int(e)), ("n", int(n)), ("r", int(r))]);
            ok(params, Value::Object(out))
        }
        Command::ReportAll { a_max, .. } => {
            let mut entries = serde_json::Map::new();
            let mut bad = false;
            match loaded {
                Some(_) => {
                    let i = selected(loaded, common, opts)?;
                    let (v, b) = entry_value(&i, None, common, *a_max)?;
                    bad |= b;
                    entries.insert(common.ideal.clone().unwrap_or_else(|| "input".into()), v);
                }
                None => {
                    for family in default_corpus() {
                        let e = family.generate(field)?;
                        let i = e.ideal.clone().with_options(opts.clone());
                        let (v, b) = entry_value(&i, Some(&family), common, *a_max)?;
                        bad |= b;
                        entries.insert(family.label(), v);
                    }
                }
            }
            let (flip, flip_ok) = flip_value()?;
            bad |= !flip_ok;
            let params = obj([("a_max", int(a_max)), ("trials", int(common.trials))]);
            let result = obj([("entries", Value::Object(entries)), ("flip", flip)]);
            Ok(Outcome { parameters: params, result, violations: bad })
        }
        Command::Corpus { family } => {
            let f: Family = family.parse()?;
            let entry = f.generate(field)?;
            let model = entry.to_model();
            let result = obj([
                ("family", Value::String(f.to_string())),
                ("label", Value::String(f.label())),
                ("generators", ideal(&entry.ideal)),
                ("input", Value::String(model.to_string())),
                ("has_parametrization", Value::Bool(entry.parametrization.is_some())),
            ]);
            ok(obj([("family", Value::String(family.clone()))]), result)
        }
    }
}

fn gb_value(i: &Ideal) -> Result<Value> {
    Ok(obj([("basis", polys(i.gb()?)), ("hilbert", hilbert(&hilbert_data(i)?))]))
}

fn kd_value(rep: &KdReport) -> Value {
    let failing: Vec<Value> = rep
        .pairs
        .iter()
        .filter(|p| !p.member)
        .map(|p| obj([("i", int(p.i)), ("j", int(p.j)), ("witness", p.witness.as_ref().map_or(Value::Null, polys))]))
        .collect();
    obj([
        ("holds", Value::Bool(rep.holds)),
        ("linear_syzygies", int(rep.linear_syzygy_count())),
        ("koszul_pairs", int(rep.pairs.len())),
        ("failing_pairs", Value::Array(failing)),
    ])
}

fn n2_value(i: &Ideal, bound: i64) -> Result<Value> {
    let rep = check_n2(i, bound)?;
    Ok(obj([
        ("holds", Value::Bool(rep.holds())),
        ("quadric_generation", Value::Bool(rep.quadric_generation)),
        ("linear_first_syzygies", Value::Bool(rep.linear_first_syzygies)),
        ("projectively_normal_in_range", Value::Bool(rep.projectively_normal_in_range)),
        ("checked_to", int(rep.projective_normality_checked_to)),
    ]))
}

fn four_point_value(rep: &FourPointReport) -> Value {
    obj([
        ("all_passed", Value::Bool(rep.all_passed)),
        ("trials", int(rep.trials)),
        ("failures", int(rep.failures.len())),
        ("resampled", int(rep.resampled)),
        ("conic_free", rep.conic_free.map_or(Value::Null, Value::Bool)),
        ("supports_four_very_ample", Value::Bool(rep.supports_four_very_ample())),
    ])
}

fn lines_value(i: &Ideal, trials: usize, seed: u64) -> Result<Value> {
    let fano = fano_lines(i)?;
    let charts: Vec<Value> = fano
        .charts
        .iter()
        .filter(|c| !c.empty)
        .map(|c| obj([("i", int(c.i)), ("j", int(c.j)), ("conditions", ideal(&c.ideal))]))
        .collect();
    let four = match four_point_span_check(i, trials, seed) {
        Ok(rep) => four_point_value(&rep),
        Err(Error::SamplingUnavailable(msg)) => obj([("unavailable", Value::String(msg))]),
        Err(e) => return Err(e),
    };
    Ok(obj([
        ("contains_line", Value::Bool(fano.contains_line)),
        ("charts_checked", int(fano.charts.len())),
        ("nonempty_charts", Value::Array(charts)),
        ("four_point", four),
    ]))
}

fn k2_holds(i: &Ideal) -> Result<bool> {
    Ok(check_kd_with(i.gens(), 2, i.options())?.holds)
}

/// Vanishing is only asserted under (K_d); consistency checks always apply.
fn scan_ok(scan: &VanishingScan, k2: bool) -> bool {
    (!k2 || scan.violations.is_empty()) && scan.table.euler_mismatches.is_empty() && scan.table.h0_mismatches.is_empty()
}

fn deficiency_value(rep: &SecantReport, k2: bool) -> Value {
    obj([
        ("k2_holds", Value::Bool(k2)),
        ("secant_generators", ideal(&rep.sigma)),
        ("r", int(rep.r)),
        ("dim_sigma", int(rep.dim_sigma)),
        ("delta", int(rep.delta)),
        ("degree", rep.degree.map_or(Value::Null, int)),
        ("fills_space", Value::Bool(rep.degree.is_none())),
        ("generated_in_degree_le_3", Value::Bool(rep.generated_in_degree_le_3)),
        ("dim_y", int(rep.dim_y)),
        ("formula_consistent", Value::Bool(rep.formula_consistent)),
    ])
}

fn kind_value(k: &FiberKind) -> Value {
    match k {
        FiberKind::ReducedPoint => obj([("type", Value::String("reduced_point".into()))]),
        FiberKind::LinearSpace { dim } => obj([("type", Value::String("linear_space".into())), ("dim", int(dim))]),
        FiberKind::Other { dim, degree } => {
            obj([("type", Value::String("other".into())), ("dim", int(dim)), ("degree", int(degree))])
        }
    }
}

fn fiber_value(rep: &FiberReport, p: &[quadsec_core::FieldElement]) -> Value {
    obj([
        ("point", point(p)),
        ("fiber", ideal(&rep.fiber)),
        ("hilbert", hilbert(&rep.hilbert)),
        ("meet_x", rep.meet.as_ref().map_or(Value::Null, hilbert)),
        ("kind", kind_value(&rep.kind)),
    ])
}

fn cohomology_value(i: &Ideal, kind: Kind, power: u32, k_min: i64, k_max: i64) -> Result<Value> {
    let module = if power == 1 { i.clone() } else { ideal_power_saturated(i, power)? };
    let kind = match kind {
        Kind::Ideal => ModuleKind::Ideal,
        Kind::Quotient => ModuleKind::Quotient,
    };
    let engine = CohomologyEngine::new(&module, kind)?;
    let mut rows = Vec::new();
    let mut euler_ok = true;
    for k in k_min..=k_max {
        let h = engine.sheaf_cohomology(k);
        let chi = engine.hilbert_polynomial(k);
        euler_ok &= CohomologyEngine::euler_characteristic(&h) == chi;
        rows.push(obj([("k", int(k)), ("h", ints(h.iter())), ("hilbert_polynomial", int(chi))]));
    }
    Ok(obj([("table", Value::Array(rows)), ("euler_consistent", Value::Bool(euler_ok))]))
}

fn scan_value(scan: &VanishingScan, k2: bool) -> Value {
    let table: Vec<Value> = scan
        .table
        .entries
        .iter()
        .map(|((i, a, k), v)| obj([("i", int(i)), ("a", int(a)), ("k", int(k)), ("h", int(v))]))
        .collect();
    let violations: Vec<Value> = scan
        .violations
        .iter()
        .map(|v| obj([("i", int(v.i)), ("a", int(v.a)), ("k", int(v.k)), ("value", int(v.value))]))
        .collect();
    let probes: Vec<Value> =
        scan.probes.iter().map(|p| obj([("a", int(p.a)), ("k", int(p.k)), ("h", ints(p.values.iter()))])).collect();
    obj([
        ("d", int(scan.d)),
        ("n", int(scan.n)),
        ("r", int(scan.r)),
        ("e", int(scan.e)),
        ("bounds", Value::Array(scan.bounds.iter().map(|(a, k)| obj([("a", int(a)), ("k", int(k))])).collect())),
        ("ideal_id", Value::String(scan.table.ideal_id.clone())),
        ("table", Value::Array(table)),
        ("violations", Value::Array(violations)),
        ("probes", Value::Array(probes)),
        ("euler_consistent", Value::Bool(scan.table.euler_mismatches.is_empty())),
        ("h0_consistent", Value::Bool(scan.table.h0_mismatches.is_empty())),
        ("kd_holds", Value::Bool(k2)),
        ("passed", Value::Bool(scan_ok(scan, k2))),
    ])
}

fn second_value(sv: &SecondVanishing) -> Value {
    obj([
        ("a", int(sv.a)),
        ("twist", int(sv.twist)),
        ("in_range", Value::Bool(sv.in_range)),
        ("h", ints(sv.values.iter())),
        ("violations", int(sv.violations.len())),
        ("euler_consistent", Value::Bool(sv.euler_consistent)),
    ])
}

fn threshold_value(t: &ThresholdFormula) -> Value {
    obj([
        ("expression", Value::String(t.expression().into())),
        ("bound", rational(&t.bound)),
        ("strict", Value::Bool(t.strict)),
        ("first_integer", int(t.first_integer())),
        ("twist", t.twist.map_or(Value::Null, int)),
    ])
}

fn class_value(c: &DivisorClass) -> Value {
    Value::String(c.bundle_notation())
}

/// Flip identities; the flag is false if any check fails.
pub fn flip_value() -> Result<(Value, bool)> {
    let symbolic = verify_kv_rewrite()?;
    let (lhs, rhs) = kv_sides(&kv_class())?;
    let mut grid = 0usize;
    let mut grid_failures = Vec::new();
    for r in 1..=4i64 {
        for n in 2 * r + 3..=12 {
            if !m2_assumption_holds(n, r) {
                continue;
            }
            for k in 2..=10 {
                grid += 1;
                if lhs.eval_int(n, r, k) != rhs.eval_int(n, r, k) {
                    grid_failures.push(obj([("n", int(n)), ("r", int(r)), ("k", int(k))]));
                }
            }
        }
    }
    let canonical = canonical_class(Space::M2Tilde, &Sym::n(), &Sym::r())?;
    let canonical_ok = canonical.bundle_notation() == "O(-n-1, n-r-1, n-2r-2)";
    let pulled = pullback_h(&DivisorClass::ints(Space::M2, &[3, -2])?)?;
    let pullback_ok = pulled == DivisorClass::ints(Space::M2Tilde, &[3, -2, -1])?;
    let spot: Vec<Value> = lhs.eval_int(7, 1, 5).unwrap_or_default().iter().map(rational).collect();
    let all = symbolic && grid_failures.is_empty() && canonical_ok && pullback_ok;
    let value = obj([
        ("kv_rewrite", Value::Bool(symbolic)),
        ("b_minus_k", class_value(&lhs)),
        ("rewrite", Value::String(rhs.to_string())),
        ("spot_n7_r1_k5", Value::Array(spot)),
        ("grid_checked", int(grid)),
        ("grid_failures", Value::Array(grid_failures)),
        ("canonical_class", class_value(&canonical)),
        ("canonical_matches", Value::Bool(canonical_ok)),
        ("pullback_3h_minus_2e", class_value(&pulled)),
        ("pullback_matches", Value::Bool(pullback_ok)),
        ("all_passed", Value::Bool(all)),
    ]);
    Ok((value, all))
}

/// Every check that applies to one ideal; the flag reports violations.
fn entry_value(i: &Ideal, family: Option<&Family>, common: &Common, a_max: u32) -> Result<(Value, bool)> {
    let mut m = serde_json::Map::new();
    let mut bad = false;
    if let Some(f) = family {
        m.insert("family".into(), Value::String(f.to_string()));
    }
    m.insert("generators".into(), ideal(i));
    m.insert("hilbert".into(), hilbert(&hilbert_data(i)?));
    m.insert("betti".into(), betti(&free_resolution(i, 3)?.betti));
    m.insert("check_k2".into(), kd_value(&check_kd_with(i.gens(), 2, i.options())?));
    m.insert("check_n2".into(), n2_value(i, default_normality_bound(2))?);
    if i.ring().nvars() <= 6 {
        m.insert("lines".into(), lines_value(i, common.trials.min(20), common.seed)?);
    }
    if !i.degree_part(2)?.is_empty() {
        let rep = secant_report(i)?;
        let k2 = k2_holds(i)?;
        bad |= k2 && !rep.formula_consistent;
        m.insert("deficiency".into(), deficiency_value(&rep, k2));
        if identify(i)?.and_then(|e| e.parametrization).is_some() {
            let sample = fiber_sample(i, 20, common.seed)?;
            bad |= sample.violations() > 0;
            m.insert(
                "fibers".into(),
                obj([("trials", int(sample.fibers.len())), ("violations", int(sample.violations()))]),
            );
            if rep.degree.is_some() {
                let lines = line_sample(i, 20, 10, common.seed)?;
                bad |= !(lines.general_surjective() && lines.secant_deficient());
                m.insert(
                    "line_restriction".into(),
                    obj([
                        ("general_ranks", ints(lines.general.iter())),
                        ("secant_ranks", ints(lines.secant.iter())),
                        ("skipped", int(lines.skipped)),
                    ]),
                );
            }
        }
    }
    let scan = vanishing_scan(i, 2, 1..=a_max, 2)?;
    let k2 = k2_holds(i)?;
    bad |= !scan_ok(&scan, k2);
    m.insert("vanish_scan".into(), scan_value(&scan, k2));
    Ok((Value::Object(m), bad))
}
