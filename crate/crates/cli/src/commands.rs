use num_complex::Complex64;
use permsym::characters::character_matching;
use permsym::dicke::dicke_decompose;
use permsym::lu::{
    lu_invariants, m3_conjugate_connector, m3_connector, search_m4_conjugate, stab_algebra_dim,
    LocalUnitary1Q, LocalUnitaryNQ,
};
use permsym::necklace::{
    check_dn_promotion, check_sn_promotion, check_sp_cp_parity, classify_necklace,
};
use permsym::symmetrize::{gsym, make_m3, make_m4, BlochPoint, QubitTuple};
use permsym::{
    all_orbits, dicke_state, dual_group, extract_character, make_subgroup, BitString, Error,
    GroupKind, GroupRef, Permutation, Phase, PhaseHom, Qubit, Result, StateVector,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::Payload;
use crate::{CharArgs, GroupArgs};

pub fn parse_group(args: &GroupArgs) -> Result<GroupRef> {
    let text = args.group.trim();
    let mut chars = text.chars();
    let kind: GroupKind = chars
        .next()
        .ok_or_else(|| Error::InvalidInput("empty --group".into()))?
        .to_string()
        .parse()?;
    let rest = chars.as_str();
    let inline = if rest.is_empty() {
        None
    } else {
        Some(
            rest.parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad group {text:?}")))?,
        )
    };
    let n = match (inline, args.n) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::InvalidInput(format!(
                "--group {text} disagrees with --n {b}"
            )))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            return Err(Error::InvalidInput(
                "the number of qubits is missing; pass --n".into(),
            ))
        }
    };
    make_subgroup(kind, n)
}

pub fn parse_character(group: &GroupRef, args: &CharArgs) -> Result<PhaseHom> {
    let mut values: Vec<(Permutation, Phase)> = Vec::new();
    if let Some(text) = &args.t_epsilon {
        if !matches!(group.kind(), GroupKind::C | GroupKind::D) {
            return Err(Error::InvalidInput(
                "--t-epsilon needs a cyclic or dihedral group".into(),
            ));
        }
        values.push((Permutation::full_cycle(group.n()), text.parse()?));
    }
    if let Some(sign) = args.t_tau {
        if group.kind() != GroupKind::D {
            return Err(Error::InvalidInput("--t-tau needs a dihedral group".into()));
        }
        let phase = match sign {
            1 => Phase::zero(),
            -1 => Phase::new(1, 2)?,
            other => {
                return Err(Error::InvalidInput(format!(
                    "--t-tau must be +1 or -1, got {other}"
                )))
            }
        };
        values.push((Permutation::reversal(group.n()), phase));
    }
    if !values.is_empty() {
        if args.index.is_some() {
            return Err(Error::InvalidInput(
                "--char cannot be combined with --t-epsilon/--t-tau".into(),
            ));
        }
        if group.kind() == GroupKind::D && values.len() == 1 {
            let missing = if args.t_tau.is_none() {
                "--t-tau"
            } else {
                "--t-epsilon"
            };
            return Err(Error::InvalidInput(format!(
                "a dihedral character also needs {missing}"
            )));
        }
        return character_matching(group, &values);
    }
    let index = args.index.unwrap_or(0);
    let mut dual = dual_group(group);
    if index >= dual.len() {
        return Err(Error::InvalidInput(format!(
            "--char {index} out of range; {} has {} characters",
            group.label(),
            dual.len()
        )));
    }
    Ok(dual.swap_remove(index))
}

pub fn parse_complex(text: &str) -> Result<Complex64> {
    let parts = parse_floats(text)?;
    match parts[..] {
        [re] => Ok(Complex64::new(re, 0.0)),
        [re, im] => Ok(Complex64::new(re, im)),
        _ => Err(Error::InvalidInput(format!(
            "expected \"re,im\", got {text:?}"
        ))),
    }
}

fn parse_floats(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("bad number {p:?} in {text:?}")))
        })
        .collect()
}

fn parse_qubits(text: &str) -> Result<QubitTuple> {
    let qubits = text
        .split(';')
        .map(|item| match parse_floats(item)?[..] {
            [ar, ai, br, bi] => Qubit::new(Complex64::new(ar, ai), Complex64::new(br, bi)),
            _ => Err(Error::InvalidInput(format!(
                "expected \"re,im,re,im\", got {item:?}"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    QubitTuple::new(qubits)
}

fn parse_bloch(text: &str) -> Result<QubitTuple> {
    let points = text
        .split(';')
        .map(|item| match parse_floats(item)?[..] {
            [theta, phi] => BlochPoint::new(theta, phi),
            _ => Err(Error::InvalidInput(format!(
                "expected \"theta,phi\", got {item:?}"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    QubitTuple::from_bloch(&points)
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(u: &LocalUnitary1Q) -> Value {
    json!([
        [pair(u.entry(0, 0)), pair(u.entry(0, 1))],
        [pair(u.entry(1, 0)), pair(u.entry(1, 1))]
    ])
}

/// The state file fields, to be merged into a command's document.
fn state_fields(psi: &StateVector) -> Value {
    serde_json::to_value(psi.to_file()).expect("state serializes")
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn character_json(t: &PhaseHom) -> Value {
    serde_json::to_value(t.to_spec()).expect("character serializes")
}

/// `1 - |⟨target|candidate⟩|` for unit vectors.
fn overlap_residual(target: &StateVector, candidate: &StateVector) -> Result<f64> {
    Ok((1.0 - target.inner(candidate)?.norm()).max(0.0))
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidInput(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn orbits(args: &GroupArgs, csv: bool) -> Result<Payload> {
    let group = parse_group(args)?;
    let orbits = all_orbits(&group)?;
    if csv {
        let rows = orbits
            .iter()
            .map(|o| {
                vec![
                    o.representative().to_string(),
                    o.weight().to_string(),
                    o.len().to_string(),
                    o.stabilizer_order().to_string(),
                    o.members()
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                ]
            })
            .collect();
        return csv_text(
            &[
                "representative",
                "weight",
                "size",
                "stabilizerOrder",
                "members",
            ],
            rows,
        )
        .map(Payload::Csv);
    }
    let list: Vec<Value> = orbits
        .iter()
        .map(|o| {
            json!({
                "representative": o.representative(),
                "weight": o.weight(),
                "size": o.len(),
                "stabilizerOrder": o.stabilizer_order(),
                "members": o.members(),
            })
        })
        .collect();
    Ok(Payload::Json(json!({
        "group": group.label(),
        "groupOrder": group.order(),
        "count": list.len(),
        "orbits": list,
    })))
}

pub fn characters(args: &GroupArgs, csv: bool) -> Result<Payload> {
    let group = parse_group(args)?;
    let dual = dual_group(&group);
    if csv {
        let rows = dual
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let phases = t
                    .generator_phases()
                    .iter()
                    .map(|(g, p)| format!("{g}={p}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                vec![i.to_string(), t.is_trivial().to_string(), phases]
            })
            .collect();
        return csv_text(&["index", "trivial", "generatorPhases"], rows).map(Payload::Csv);
    }
    let list: Vec<Value> = dual
        .iter()
        .enumerate()
        .map(|(i, t)| {
            json!({
                "index": i,
                "trivial": t.is_trivial(),
                "generators": character_json(t)["generators"].clone(),
            })
        })
        .collect();
    Ok(Payload::Json(json!({
        "group": group.label(),
        "groupOrder": group.order(),
        "count": list.len(),
        "characters": list,
    })))
}

pub fn dicke(group: &GroupArgs, character: &CharArgs, bits: &str) -> Result<Payload> {
    let group = parse_group(group)?;
    let t = parse_character(&group, character)?;
    let bits: BitString = bits.parse()?;
    if bits.len() != group.n() {
        return Err(Error::ArityMismatch {
            expected: group.n(),
            found: bits.len(),
        });
    }
    let d = dicke_state(&t, &bits)?;
    Ok(Payload::Json(merge(
        state_fields(&d.state),
        json!({
            "group": group.label(),
            "character": character_json(&t),
            "representative": d.orbit.representative(),
            "orbitSize": d.orbit.len(),
        }),
    )))
}

pub fn symmetrize(
    group: &GroupArgs,
    character: &CharArgs,
    qubits: Option<&str>,
    bloch: Option<&str>,
) -> Result<Payload> {
    let group = parse_group(group)?;
    let t = parse_character(&group, character)?;
    let phis = match (qubits, bloch) {
        (Some(q), None) => parse_qubits(q)?,
        (None, Some(b)) => parse_bloch(b)?,
        _ => {
            return Err(Error::InvalidInput(
                "pass exactly one of --qubits or --bloch".into(),
            ))
        }
    };
    if phis.len() != group.n() {
        return Err(Error::ArityMismatch {
            expected: group.n(),
            found: phis.len(),
        });
    }
    let extra = json!({ "group": group.label(), "character": character_json(&t) });
    Ok(Payload::Json(match gsym(&t, &phis)? {
        None => merge(json!({ "zero": true }), extra),
        Some(psi) => merge(merge(state_fields(&psi), json!({ "zero": false })), extra),
    }))
}

pub fn invariance(group: &GroupArgs, state: &str) -> Result<Payload> {
    let group = parse_group(group)?;
    let psi = StateVector::read(state)?;
    if psi.n() != group.n() {
        return Err(Error::ArityMismatch {
            expected: group.n(),
            found: psi.n(),
        });
    }
    let t = extract_character(&psi, &group)?.ok_or_else(|| Error::NotInvariant(group.label()))?;
    let index = dual_group(&group).iter().position(|u| u == &t);
    Ok(Payload::Json(json!({
        "group": group.label(),
        "invariant": true,
        "character": character_json(&t),
        "characterIndex": index,
    })))
}

pub fn decompose(group: &GroupArgs, state: &str) -> Result<Payload> {
    let group = parse_group(group)?;
    let psi = StateVector::read(state)?;
    if psi.n() != group.n() {
        return Err(Error::ArityMismatch {
            expected: group.n(),
            found: psi.n(),
        });
    }
    let dec = dicke_decompose(&psi, &group)?;
    let residual = dec.reconstruct()?.distance(&psi)?;
    let body: Value = serde_json::from_str(&dec.to_json())?;
    Ok(Payload::Json(merge(
        body,
        json!({ "reconstructionResidual": residual }),
    )))
}

pub fn necklace(bits: &str) -> Result<Payload> {
    let bits: BitString = bits.parse()?;
    let class = classify_necklace(&bits)?;
    let shifts = check_sp_cp_parity(&bits).ok().map(|r| r.shifts);
    Ok(Payload::Json(json!({
        "bits": bits,
        "type": class.symmetry.to_string(),
        "cycleOrder": class.cycle_order,
        "mirrorLines": class.mirror_line_count(),
        "mirrorLineKinds": {
            "zeroVertex": class.mirror_lines.zero_vertex,
            "oneVertex": class.mirror_lines.one_vertex,
            "twoVertex": class.mirror_lines.two_vertex,
        },
        "reflectionShifts": shifts,
        "representative": class.orbit.representative(),
        "members": class.orbit.members(),
    })))
}

pub fn check_dn(state: &str) -> Result<Payload> {
    let psi = StateVector::read(state)?;
    let report = check_dn_promotion(&psi)?;
    Ok(Payload::Json(serde_json::to_value(report)?))
}

pub fn check_sn(state: &str) -> Result<Payload> {
    let psi = StateVector::read(state)?;
    let report = check_sn_promotion(&psi)?;
    Ok(Payload::Json(serde_json::to_value(report)?))
}

pub fn m3(a: &str, b: &str) -> Result<Payload> {
    let psi = make_m3(parse_complex(a)?, parse_complex(b)?)?;
    Ok(Payload::Json(state_fields(&psi)))
}

pub fn m4(conjugate: bool, lu_search: Option<usize>, seed: u64) -> Result<Payload> {
    let m4 = make_m4();
    let psi = if conjugate { m4.conjugate() } else { m4 };
    let mut doc = merge(state_fields(&psi), json!({ "conjugate": conjugate }));
    if let Some(trials) = lu_search {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let evidence = search_m4_conjugate(&mut rng, trials);
        doc = merge(
            doc,
            json!({ "luSearch": merge(serde_json::to_value(evidence)?, json!({ "seed": seed })) }),
        );
    }
    Ok(Payload::Json(doc))
}

pub fn m3_lu(a: &str, b: &str) -> Result<Payload> {
    let (a, b) = (parse_complex(a)?, parse_complex(b)?);
    let source = make_m3(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))?;
    let target = make_m3(a, b)?;
    let u = m3_connector(a, b)?;
    let reached = LocalUnitaryNQ::uniform(u.clone(), 3).apply(&source)?;
    let conj = m3_conjugate_connector(a, b)?;
    let reached_conj = conj.apply(&source)?;
    Ok(Payload::Json(json!({
        "a": pair(a),
        "b": pair(b),
        "unitary": matrix_json(&u),
        "residual": overlap_residual(&target, &reached)?,
        "conjugateFactors": conj.factors().iter().map(matrix_json).collect::<Vec<_>>(),
        "conjugateResidual": overlap_residual(&target.conjugate(), &reached_conj)?,
    })))
}

pub fn stab_dim(state: &str) -> Result<Payload> {
    let psi = StateVector::read(state)?;
    let r = stab_algebra_dim(&psi)?;
    Ok(Payload::Json(json!({
        "n": psi.n(),
        "dimension": r.dimension,
        "residuals": r.residuals,
        "singularValues": r.singular_values,
    })))
}

pub fn invariants(state: &str, block: usize) -> Result<Payload> {
    let psi = StateVector::read(state)?;
    Ok(Payload::Json(serde_json::to_value(lu_invariants(
        &psi, block,
    )?)?))
}

/// Rows of the four-qubit phase table in its customary order.
pub const TABLE1_ROWS: [&[usize]; 12] = [
    &[],
    &[1, 2, 3, 4],
    &[1, 3, 2, 4],
    &[1, 4, 2, 3],
    &[1, 2, 3],
    &[1, 3, 2],
    &[1, 2, 4],
    &[1, 4, 2],
    &[2, 3, 4],
    &[2, 4, 3],
    &[1, 3, 4],
    &[1, 4, 3],
];

fn table1_perm(row: &[usize]) -> Result<Permutation> {
    match row.len() {
        0 => Ok(Permutation::identity(4)),
        3 => Permutation::cycle(4, row),
        _ => Ok(Permutation::transposition(4, row[0], row[1])?
            .compose(&Permutation::transposition(4, row[2], row[3])?)),
    }
}

fn omega_symbol(p: Phase) -> &'static str {
    match (p.numer(), p.denom()) {
        (0, _) => "1",
        (1, 3) => "omega",
        (2, 3) => "omega^2",
        _ => "other",
    }
}

pub fn table1(csv: bool) -> Result<Payload> {
    let a4 = make_subgroup(GroupKind::A, 4)?;
    let t = extract_character(&make_m4(), &a4)?.ok_or_else(|| Error::NotInvariant(a4.label()))?;
    let mut rows = Vec::new();
    for row in TABLE1_ROWS {
        let g = table1_perm(row)?;
        let p = t.phase(&g)?;
        rows.push((g.to_string(), omega_symbol(p), p));
    }
    if csv {
        let rows = rows
            .iter()
            .map(|(g, s, p)| vec![g.clone(), (*s).to_string(), p.to_string()])
            .collect();
        return csv_text(&["sigma", "t", "phase"], rows).map(Payload::Csv);
    }
    let list: Vec<Value> = rows
        .iter()
        .map(|(g, s, p)| json!({ "sigma": g, "t": s, "phase": p }))
        .collect();
    Ok(Payload::Json(json!({ "group": a4.label(), "rows": list })))
}
