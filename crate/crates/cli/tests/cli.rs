mod common;

use common::*;
use num_complex::Complex64;
use serde_json::Value;
use tempfile::TempDir;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn table1_phases_match_direct_permutation() {
    let m4 = ok(&["m4"]);
    let psi = amplitudes(&m4);
    let doc = ok(&["table1"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    let expected = [
        "1", "1", "1", "1", "omega", "omega^2", "omega^2", "omega", "omega^2", "omega", "omega",
        "omega^2",
    ];
    for (row, want) in rows.iter().zip(expected) {
        assert_eq!(row["t"], want, "{row}");
        let images = cycle_images(row["sigma"].as_str().unwrap(), 4);
        let lambda = inner(&psi, &permute_amplitudes(&psi, &images));
        let value = match want {
            "1" => c(1.0, 0.0),
            "omega" => omega(),
            _ => omega() * omega(),
        };
        assert!((lambda - value).norm() < 1e-10, "{row}: {lambda}");
    }
}

#[test]
fn table1_csv_has_twelve_rows() {
    let r = run(&["table1", "--csv"]);
    assert_eq!(r.code, 0);
    let mut reader = csv::Reader::from_reader(r.stdout.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    assert_eq!(&rows[4][0], "(1,2,3)");
    assert_eq!(&rows[4][1], "omega");
}

#[test]
fn necklace_example() {
    let doc = ok(&["necklace", "--bits", "101100"]);
    assert_eq!(doc["type"], "chiral");
    assert_eq!(doc["cycleOrder"], 6);
    assert_eq!(doc["mirrorLines"], 0);
    assert_eq!(doc["members"].as_array().unwrap().len(), 6);
}

#[test]
fn m4_is_not_symmetric_but_alternating() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("m4.json");
    save(&["m4"], &path);
    let p = path.to_str().unwrap();
    let r = run(&["invariance", "--state", p, "--group", "S4"]);
    assert_eq!(r.code, 4);
    assert_eq!(r.json()["status"], "not-invariant");
    assert!(!r.stderr.is_empty());

    let doc = ok(&["invariance", "--state", p, "--group", "A", "--n", "4"]);
    assert_eq!(doc["invariant"], true);
    let gens = doc["character"]["generators"].as_array().unwrap();
    let angle = |perm: &str| gens.iter().find(|g| g["perm"] == perm).unwrap()["angle"].clone();
    assert_eq!(angle("(1,2,3)"), "1/3");
    assert_eq!(angle("(2,3,4)"), "2/3");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2}").unwrap();
    let r = run(&["stab-dim", "--state", bad.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["status"], "invalid-input");

    let r = run(&["orbits", "--group", "S", "--n", "9"]);
    assert_eq!(r.code, 5);
    assert_eq!(r.json()["status"], "cap-exceeded");

    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["necklace"]).code, 2);

    let r = run(&["necklace", "--bits", "10a1"]);
    assert_eq!(r.code, 3);

    // (1,1) is not a unit pair
    assert_eq!(run(&["m3", "--a", "1,0", "--b", "1,0"]).code, 3);

    // a nontrivial cyclic character on the all-zero orbit
    let r = run(&[
        "dicke",
        "--group",
        "C4",
        "--t-epsilon",
        "1/4",
        "--bits",
        "0000",
    ]);
    assert_eq!(r.code, 3);
}

#[test]
fn written_state_round_trips() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("m3.json");
    let doc = save(&["m3", "--a", "0.6,0", "--b", "0,0.8"], &path);
    assert_eq!(doc["convention"], "bigendian-q1msb");
    assert_eq!(doc["n"], 3);
    let psi = amplitudes(&doc);
    let s = 1.0 / 3f64.sqrt();
    // |100⟩ carries a/√3, |110⟩ carries b/√3
    assert!((psi[0b100] - c(0.6 * s, 0.0)).norm() < 1e-11);
    assert!((psi[0b110] - c(0.0, 0.8 * s)).norm() < 1e-11);

    let inv = ok(&[
        "invariance",
        "--state",
        path.to_str().unwrap(),
        "--group",
        "A3",
    ]);
    assert_eq!(inv["character"]["generators"][0]["angle"], "2/3");

    let dec = ok(&[
        "decompose",
        "--state",
        path.to_str().unwrap(),
        "--group",
        "A3",
    ]);
    assert_eq!(dec["terms"].as_array().unwrap().len(), 2);
    assert!(dec["reconstructionResidual"].as_f64().unwrap() < 1e-10);
}

#[test]
fn dicke_command_matches_hand_built_state() {
    let doc = ok(&[
        "dicke",
        "--group",
        "C3",
        "--t-epsilon",
        "1/3",
        "--bits",
        "100",
    ]);
    let psi = amplitudes(&doc);
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-11);
    // ε|ψ⟩ = ω|ψ⟩ with ε the right cyclic shift
    let shifted = permute_amplitudes(&psi, &cycle_images("(1,2,3)", 3));
    for (a, b) in shifted.iter().zip(&psi) {
        assert!((a - omega() * b).norm() < 1e-11);
    }
    assert_eq!(doc["orbitSize"], 3);
}

#[test]
fn dihedral_character_flags() {
    let doc = ok(&[
        "dicke",
        "--group",
        "D4",
        "--t-epsilon",
        "1/2",
        "--t-tau",
        "-1",
        "--bits",
        "1000",
    ]);
    let psi = amplitudes(&doc);
    let tau = permute_amplitudes(&psi, &cycle_images("(1,4)(2,3)", 4));
    for (a, b) in tau.iter().zip(&psi) {
        assert!((a + b).norm() < 1e-11);
    }
    assert_eq!(
        run(&[
            "dicke",
            "--group",
            "D4",
            "--t-epsilon",
            "1/2",
            "--bits",
            "1000"
        ])
        .code,
        3
    );
}

#[test]
fn symmetrize_zero_and_nonzero() {
    let doc = ok(&[
        "symmetrize",
        "--group",
        "A3",
        "--char",
        "1",
        "--qubits",
        "1,0,0,0;1,0,0,0;1,0,0,0",
    ]);
    assert_eq!(doc["zero"], true);
    assert!(doc.get("amplitudes").is_none());

    let doc = ok(&[
        "symmetrize",
        "--group",
        "S3",
        "--bloch",
        "0,0;0,0;3.141592653589793,0",
    ]);
    assert_eq!(doc["zero"], false);
    let psi = amplitudes(&doc);
    let s = 1.0 / 3f64.sqrt();
    for idx in [0b001, 0b010, 0b100] {
        assert!((psi[idx].norm() - s).abs() < 1e-11);
    }
}

#[test]
fn check_dn_and_sn_reports() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("w.json");
    let s = 0.5;
    let mut amps = vec![c(0.0, 0.0); 16];
    for idx in [0b1000, 0b0100, 0b0010, 0b0001] {
        amps[idx] = c(s, 0.0);
    }
    write_state(&path, 4, &amps);
    let p = path.to_str().unwrap();
    let dn = ok(&["check-dn", "--state", p]);
    assert_eq!(dn["isDn"], true);
    assert_eq!(dn["agrees"], true);
    let sn = ok(&["check-sn", "--state", p]);
    assert_eq!(sn["isSn"], true);
    assert_eq!(sn["directIsSn"], true);

    // a chiral C6 orbit alone is not reversal invariant
    let dicke = ok(&["dicke", "--group", "C6", "--bits", "101100"]);
    write_state(&path, 6, &amplitudes(&dicke));
    let dn = ok(&["check-dn", "--state", p]);
    assert_eq!(dn["isDn"], false);
    assert_eq!(dn["directIsDn"], false);
    assert_eq!(dn["conditions"]["iv"], "fail");
}

#[test]
fn stab_dim_and_invariants_of_m4() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("m4.json");
    save(&["m4"], &path);
    let p = path.to_str().unwrap();
    let doc = ok(&["stab-dim", "--state", p]);
    assert_eq!(doc["dimension"], 3);
    for r in doc["residuals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-8);
    }
    let inv = ok(&["invariants", "--state", p, "--block", "2"]);
    let avg = inv["avgBipartiteEntropy"].as_f64().unwrap();
    assert!((avg - (1.0 + 3f64.log2() / 2.0)).abs() < 1e-10);
    assert_eq!(inv["bipartiteSpectra"].as_array().unwrap().len(), 3);
}

#[test]
fn lu_search_is_seeded() {
    let a = ok(&["m4", "--lu-search", "50", "--seed", "7"]);
    let b = ok(&["m4", "--lu-search", "50", "--seed", "7"]);
    assert_eq!(a, b);
    assert_eq!(a["luSearch"]["certifying"], false);
    assert_eq!(a["luSearch"]["trials"], 50);
    let best = a["luSearch"]["bestOverlap"].as_f64().unwrap();
    assert!((0.0..=1.0 + 1e-12).contains(&best));
}

#[test]
fn m4_conjugate_flag() {
    let m4 = amplitudes(&ok(&["m4"]));
    let conj = amplitudes(&ok(&["m4", "--conjugate"]));
    for (a, b) in m4.iter().zip(&conj) {
        assert!((a.conj() - b).norm() < 1e-12);
    }
}

#[test]
fn orbit_and_character_listings() {
    let doc = ok(&["orbits", "--group", "C6"]);
    assert_eq!(doc["count"], 14);
    let total: u64 = doc["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| o["size"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 64);

    let doc = ok(&["characters", "--group", "A5"]);
    assert_eq!(doc["count"], 1);
    let doc = ok(&["characters", "--group", "C4"]);
    let angles: Vec<Value> = doc["characters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["generators"][0]["angle"].clone())
        .collect();
    assert_eq!(angles.len(), 4);
    for want in ["0", "1/4", "1/2", "3/4"] {
        assert!(
            angles.iter().any(|a| a == want),
            "{want} missing from {angles:?}"
        );
    }

    let r = run(&["orbits", "--group", "D5", "--csv"]);
    assert_eq!(r.code, 0);
    assert!(r
        .stdout
        .starts_with("representative,weight,size,stabilizerOrder,members\n"));
    assert_eq!(r.stdout.lines().count(), 1 + 8);
}

#[test]
fn floats_have_at_most_twelve_significant_digits() {
    let doc = ok(&["m3", "--a", "0.6,0", "--b", "0,0.8"]);
    for z in doc["amplitudes"].as_array().unwrap() {
        for part in z.as_array().unwrap() {
            let text = part.to_string();
            let digits: String = text
                .split(['e', 'E'])
                .next()
                .unwrap()
                .chars()
                .filter(char::is_ascii_digit)
                .collect();
            assert!(digits.trim_start_matches('0').len() <= 12, "{text}");
        }
    }
}
