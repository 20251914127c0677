use std::path::PathBuf;

use lctlab::Execution;
use lctlab_cli::golden::{golden_tables, FLOAT_TOLERANCE};

fn repo_golden() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}

#[test]
fn tables_match_checked_in_files_byte_for_byte() {
    for exec in [Execution::Sequential, Execution::default()] {
        for t in golden_tables(lctlab::budget::DEFAULT_BUDGET, exec).unwrap() {
            let on_disk = std::fs::read_to_string(repo_golden().join(t.name)).unwrap();
            assert_eq!(t.contents, on_disk, "{}", t.name);
        }
    }
}

#[test]
fn spot_rows() {
    let diag = std::fs::read_to_string(repo_golden().join("diagonal.tsv")).unwrap();
    assert!(diag.lines().any(|l| l == "n=5\td=3\tlct_fJ2=3/2\talpha=5/3\tstrict=true"));
    let det = std::fs::read_to_string(repo_golden().join("det.tsv")).unwrap();
    assert!(det.lines().any(|l| l == "n=4\tlct_fJ2=2\talpha=2"));
    let milnor = std::fs::read_to_string(repo_golden().join("milnor.tsv")).unwrap();
    assert!(milnor.lines().any(|l| l.starts_with("n=2\td=3\tmu=4\t")));
}

#[test]
fn expsum_floats_match_closed_forms() {
    // |E(p^m)| for x^2 is p^(-m/2); for x*y it is p^(-m)
    let text = std::fs::read_to_string(repo_golden().join("expsum.tsv")).unwrap();
    let field = |line: &str, key: &str| -> f64 {
        line.split('\t').find_map(|c| c.strip_prefix(&format!("{key}="))).unwrap().parse().unwrap()
    };
    let mut seen = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let (p, m) = (field(line, "p"), field(line, "m"));
        let expected = match line.split('\t').next().unwrap() {
            "f=x1^2" => p.powf(-m / 2.0),
            "f=x1*x2" => p.powf(-m),
            _ => continue,
        };
        assert!((field(line, "abs") - expected).abs() < FLOAT_TOLERANCE, "{line}");
        seen += 1;
    }
    assert_eq!(seen, 8);
}
