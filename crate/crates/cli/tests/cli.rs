use std::path::PathBuf;
use std::process::Command;

use digitop::format;
use digitop::Category;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

/// Runs the binary with `args`, where arguments ending in a fixture
/// extension are resolved against the fixtures directory.
fn run(args: &[&str]) -> (i32, String, String) {
    let resolved: Vec<String> = args
        .iter()
        .map(|a| {
            if [".map", ".img", ".hs", ".grp", ".mg"].iter().any(|ext| a.ends_with(ext)) && !a.starts_with('/') {
                fixture(a)
            } else {
                a.to_string()
            }
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_digitop"))
        .args(&resolved)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn rho_is_homotopic_to_the_identity_in_two_steps() {
    let (code, out, _) = run(&["homotopic", "--cat", "1", "rho.map", "id6.map", "--certificate"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("YES\n"));
    assert!(out.contains("certificate_steps: 2\n"));
    let cert_text = out.split("# certificate\n").nth(1).unwrap();
    let cert = format::read_certificate(cert_text).unwrap();
    assert!(cert.verify());
    assert_eq!(cert.steps(), 2);
    assert_eq!(cert.category(), Category::Np1);
}

#[test]
fn five_cycle_is_np2_rigid() {
    assert_eq!(run(&["rigid", "--cat", "2", "c5.img"]).0, 0);
}

#[test]
fn cayley_of_z4_with_one_and_two_is_complete() {
    let (code, out, _) = run(&["cayley", "z4.grp", "--subset", "1", "2"]);
    assert_eq!(code, 0);
    let img = format::read_image(out.split("# image\n").nth(1).unwrap()).unwrap();
    assert_eq!(img, digitop::DigitalImage::complete(4));
}

#[test]
fn exit_codes_match_verdicts() {
    let cases: &[(&[&str], i32)] = &[
        (&["continuity", "rot5.map"], 0),
        (&["homotopic", "rot5.map", "id5.map", "--cat", "2"], 1),
        (&["homotopic", "rho.map", "id6.map", "--budget", "1"], 2),
        (&["pointed-homotopic", "rho.map", "id6.map", "--base", "0"], 1),
        (&["pointed-homotopic", "id6.map", "id6.map", "--base", "0"], 0),
        (&["contractible", "k4.img", "--cat", "2"], 0),
        (&["contractible", "c5.img"], 1),
        (&["irreducible", "c5.img"], 0),
        (&["irreducible", "k4.img"], 1),
        (&["rigid", "c5.img"], 1),
        (&["rigid", "c5.img", "--cat", "2"], 0),
        (&["equiv", "c5.img", "c5.img"], 0),
        (&["equiv", "c5.img", "k4.img"], 1),
        (&["hspace-verify", "five_twist_mu.hs"], 0),
        (&["hspace-verify", "five_twist_tau.hs"], 0),
        (&["hspace-assoc", "z5_c5.hs"], 0),
        (&["hspace-inverses", "z5_c5.hs"], 1),
        (&["hspace-inverses", "z4_k4_cat2.hs"], 0),
        (&["hspace-hequiv", "z5_c5.hs", "z5_c5.hs"], 0),
        (&["hspace-transport", "z5_c5.hs", "id5.map", "id5.map"], 0),
        (&["hspace-transport", "z5_c5.hs", "rot5.map", "id5.map"], 1),
        (&["hspace-reduce", "five_twist_mu.hs"], 0),
        (&["hspace-search", "c5.img", "--base", "0", "--limit", "3"], 0),
        (&["hspace-search", "c4_scrambled.img", "--base", "0", "--cat", "2"], 1),
        (&["np2-decompose", "point_ext.hs"], 0),
        (&["np2-decompose", "z5_c5.hs"], 1),
        (&["magma-extend", "point.mg"], 0),
        (&["cayley", "z4.grp", "--subset", "1"], 0),
        (&["dtg-verify", "k4.img", "z4.grp"], 0),
        (&["dtg-verify", "c4_scrambled.img", "z4.grp"], 1),
        (&["np2-classify", "k4.img"], 0),
        (&["np2-classify", "c5.img"], 1),
        (&["fixture"], 0),
        (&["fixture", "five_twist_tau"], 0),
        (&["enumerate", "4"], 0),
        (&["enumerate", "4", "--kind", "groups"], 0),
        // usage errors
        (&["frobnicate"], 64),
        (&["rigid"], 64),
        (&["rigid", "c5.img", "--cat", "3"], 64),
        (&["rigid", "c5.img", "--budget", "0"], 64),
        (&["rigid", "no-such-file"], 64),
        (&["fixture", "nope"], 64),
        (&["hspace-search", "c5.img"], 64),
        (&["pointed-homotopic", "rho.map", "id6.map", "--base", "9"], 64),
        (&["dtg-verify", "c5.img", "z4.grp"], 64),
        (&["homotopic", "rho.map", "id5.map"], 64),
        (&["enumerate", "9"], 64),
        // parse errors
        (&["rigid", "z4.grp"], 65),
        (&["hspace-verify", "c5.img"], 65),
        (&["cayley", "k4.img"], 65),
    ];
    for (args, want) in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, *want, "{args:?}\nstdout:\n{out}\nstderr:\n{err}");
    }
}

#[test]
fn parse_errors_name_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.img");
    std::fs::write(&path, "# header\nimage 3\nedge 0 1\nedge 1 x\n").unwrap();
    let (code, _, err) = run(&["rigid", path.to_str().unwrap()]);
    assert_eq!(code, 65);
    assert!(err.contains(&format!("{}:4:", path.display())), "{err}");
}

#[test]
fn records_output_is_key_value_lines() {
    let (code, out, _) = run(&["homotopic", "rho.map", "id6.map", "--certificate", "--format", "records"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("status=YES\n"));
    assert!(out.lines().all(|l| l.contains('=')));
    let cert: String = out
        .lines()
        .filter_map(|l| l.strip_prefix("certificate="))
        .map(|l| format!("{l}\n"))
        .collect();
    assert!(format::read_certificate(&cert).unwrap().verify());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["hspace-hequiv", "z5_c5.hs", "z5_c5.hs", "--certificate"][..],
        &["hspace-search", "c5.img", "--base", "0", "--limit", "5"],
        &["enumerate", "5"],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn emitted_files_round_trip() {
    for name in digitop::hspace::FIXTURE_NAMES {
        let (code, out, _) = run(&["fixture", name]);
        assert_eq!(code, 0);
        let body = out.split_once('\n').unwrap().1;
        let doc = format::parse_document(body).unwrap();
        assert!(!doc.images.is_empty(), "{name}");
        let again = match digitop::hspace::fixture(name).unwrap() {
            digitop::hspace::Fixture::HSpace(h) => format::write_hspace(&h),
            digitop::hspace::Fixture::Map(f) => format::write_map(&f),
            digitop::hspace::Fixture::Image(x) => format::write_image(&x),
            digitop::hspace::Fixture::Magma(m) => format::write_magma(&m),
        };
        assert_eq!(body, again);
    }
    let (_, out, _) = run(&["hspace-reduce", "five_twist_mu.hs"]);
    let h = format::read_hspace(out.split("# hspace\n").nth(1).unwrap()).unwrap();
    assert_eq!(h.image.len(), 5);
    let (_, out, _) = run(&["enumerate", "4"]);
    let images = format::parse_document(&out.lines().filter(|l| !l.starts_with("count")).collect::<Vec<_>>().join("\n"))
        .unwrap()
        .images;
    assert_eq!(images.len(), 11);
}

#[test]
fn dot_export_writes_the_image() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.dot");
    let (code, _, _) = run(&["irreducible", "c5.img", "--dot", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.matches(" -- ").count(), 5);
}
