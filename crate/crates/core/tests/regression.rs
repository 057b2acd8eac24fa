//! Golden fixtures, regenerated only by `bienergy update-fixtures`.

use std::path::PathBuf;

use bienergy_core::energy::energy_eigen;
use bienergy_core::harness::{scan, DEFAULT_SCAN_CAP};
use bienergy_core::poly::charpoly_by_recursion;
use bienergy_core::{FamilySpec, IntPoly};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn golden_polynomials() {
    for n in [12, 13] {
        let want: IntPoly = fixture(&format!("p66_{n}.poly")).trim().parse().unwrap();
        assert_eq!(charpoly_by_recursion(&FamilySpec::P66(n)).unwrap(), want);
    }
}

#[test]
fn energy_of_p66_12_is_stable() {
    let want: f64 = fixture("energy_p66_12.txt").trim().parse().unwrap();
    let e = energy_eigen(&charpoly_by_recursion(&FamilySpec::P66(12)).unwrap()).unwrap();
    assert!((e.value - want).abs() < 1e-10, "{} vs {want}", e.value);
}

#[test]
fn scan_table_is_stable() {
    let text = fixture("scan_50.csv");
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,t,e_p66,e_r,difference,coulson_difference,methods_agree"
    );
    let records = scan(50, DEFAULT_SCAN_CAP).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), records.len());
    for (row, rec) in rows.iter().zip(&records) {
        assert_eq!(row[0].parse::<usize>().unwrap(), rec.n);
        assert_eq!(row[1].parse::<usize>().unwrap(), rec.t);
        let values = [rec.e_p66, rec.e_r, rec.difference, rec.coulson_difference];
        for (cell, v) in row[2..6].iter().zip(values) {
            let want: f64 = cell.parse().unwrap();
            assert!((want - v).abs() <= 1e-11 * want.abs().max(1.0), "{cell} vs {v}");
        }
        assert_eq!(row[6], rec.methods_agree.to_string());
    }
}
