use sudler_web::demo;

#[test]
fn series_values() {
    let v = demo::series("phi", 5).unwrap();
    assert_eq!(v.len(), 5);
    assert!((v[0].exp() - 1.865).abs() < 1e-3);
    assert!(demo::series("phi", 0).is_err());
    assert!(demo::series("[0;2,", 10).unwrap_err().contains("column"));
}

#[test]
fn subsequence_rows() {
    let rows = demo::subsequence("sqrt3", 3).unwrap();
    assert_eq!(rows.len(), 6 * 4);
    let residues: Vec<f64> = rows.chunks(4).map(|r| r[0]).collect();
    assert_eq!(residues, [0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
    assert!(demo::subsequence("pi", 3).is_err());
}

#[test]
fn profile_and_maximum() {
    let p = demo::profile(1, 3).unwrap();
    // alpha = 1/4, 1/2, 3/4
    assert!((p[1] - 2f64.ln()).abs() < 1e-15);
    assert!((p[0] - p[2]).abs() < 1e-15);
    let m = demo::maximum(1).unwrap();
    assert!((m[2] - 2.0).abs() < 1e-12);
    assert!(demo::maximum(5000).is_err());
}
