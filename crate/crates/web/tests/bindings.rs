use quotcoh_web::{psi_json, quot_betti_json, xi_text};

#[test]
fn xi_matches_small_example() {
    let text = xi_text("0,1", 0).unwrap();
    assert_eq!(text, "1 * [one|pt] + 1 * [pt|one] + 1 * [one|one] w^(0,1)");
    assert!(xi_text("0,x", 0).is_err());
}

#[test]
fn psi_methods_agree() {
    let out: serde_json::Value = serde_json::from_str(&psi_json("2,1,0", "[pt|one|one]", 1).unwrap()).unwrap();
    assert_eq!(out["agree"], true);
    assert_eq!(out["averaged"], false);
    let sym: serde_json::Value = serde_json::from_str(&psi_json("1,1", "[pt|one]", 0).unwrap()).unwrap();
    assert_eq!(sym["averaged"], true);
    assert!(psi_json("0,1", "", 0).is_err());
}

#[test]
fn betti_numbers() {
    assert_eq!(quot_betti_json(0, 2, 1), "[1,0,2,0,1]");
}
