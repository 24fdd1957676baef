use georefine_wasm::{analyze, classify, omega_samples, parse_symbol, refine_points};

#[test]
fn chaikin_square_in_the_plane() {
    let square = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
    let out = refine_points(&square, 2, "euclidean", true, "chaikin", 1).unwrap();
    assert_eq!(out.len(), 16);
    let first = [out[0], out[1]];
    assert_eq!(first, [0.0, 0.75]);
}

#[test]
fn mask_and_preset_agree() {
    let pts = [0.3, 0.1, 1.0, 0.2, 1.1, 0.9, -0.2, 0.7, -0.5, 0.2];
    let a = refine_points(&pts, 2, "euclidean", true, "bspline:3", 2).unwrap();
    let b = refine_points(&pts, 2, "euclidean", true, "1/8,1/2,3/4,1/2,1/8@0", 2).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-9, "{x} vs {y}");
    }
}

#[test]
fn sphere_points_stay_on_sphere() {
    let pts = [1.0, 0.0, 0.2, 0.0, 2.0, 0.1, -1.0, 0.1, 0.3];
    let out = refine_points(&pts, 3, "sphere", false, "bspline:2", 3).unwrap();
    for p in out.chunks(3) {
        let n: f64 = p.iter().map(|x| x * x).sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
}

#[test]
fn errors_are_messages() {
    assert!(refine_points(&[0.0, 1.0, 2.0], 2, "euclidean", true, "chaikin", 1).is_err());
    assert!(refine_points(&[0.0, 0.0, 1.0, 1.0], 2, "torus", true, "chaikin", 1).is_err());
    assert!(parse_symbol("1,1,1@0").unwrap_err().contains("a(1)"));
    assert!(parse_symbol("bspline:0").is_err());
}

#[test]
fn omega_and_classification() {
    let s = omega_samples(0.5, 3).unwrap();
    assert_eq!(s.len(), 9);
    assert!((s[3] - std::f64::consts::PI).abs() < 1e-12);
    assert!((s[4] - (5.0 - 24f64.sqrt())).abs() < 1e-12);
    assert_eq!(classify(-1.0, 0.01, 0.5).unwrap(), "inside");
    assert_eq!(classify(1.0, 1.0, 0.5).unwrap(), "outside");
    assert!(classify(1.0, 1.0, 1.5).is_err());
}

#[test]
fn analysis_text() {
    let text = analyze("bspline:3").unwrap();
    assert!(text.contains("μ = 0.500000"), "{text}");
    assert!(text.contains("certified-convergent"), "{text}");
}
