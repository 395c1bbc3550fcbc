mod common;

use common::*;
use jetgeom::exec::Execution;
use jetgeom::geometry::Geometry;
use jetgeom::model::ModelSpec;
use jetgeom::verify::{verify, Settings, Tier};
use proptest::prelude::*;

const DIAG: [&str; 5] = ["1", "2", "exp(2*t1)", "x1^2 + 1", "sin(x1)^2 + 2"];
const OFF: [&str; 3] = ["0", "1/4", "x1/8"];
const H: [&str; 4] = ["1", "2", "exp(2*t1)", "t1^2 + 1"];

fn random_model(p: usize, n: usize, hs: &[usize], diag: &[usize], off: &[usize]) -> String {
    let h: Vec<String> = (0..p)
        .map(|a| format!("[{}]", (0..p).map(|b| format!("\"{}\"", if a == b { H[hs[a]] } else { "0" })).collect::<Vec<_>>().join(", ")))
        .collect();
    let mut terms = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let e = if i == j { DIAG[diag[i]] } else { OFF[off[k]] };
            if i != j {
                k += 1;
            }
            for a in 0..p {
                // (h^aa) g_ij v^i_a v^j_a, doubled off the diagonal
                let w = if i == j { "1" } else { "2" };
                terms.push(format!("{w}*({e})*v{}_{}*v{}_{}/({})", i + 1, a + 1, j + 1, a + 1, H[hs[a]]));
            }
        }
    }
    let mut pts = String::from("[[sample_points]]\n");
    for a in 1..=p {
        pts += &format!("t{a} = 0.6\n");
    }
    for i in 1..=n {
        pts += &format!("x{i} = 0.7\n");
    }
    format!("p = {p}\nn = {n}\nh = [{}]\nlagrangian = \"{}\"\n{pts}", h.join(", "), terms.join(" + "))
}

fn compute(text: &str, exec: Execution) -> Geometry {
    Geometry::compute(&ModelSpec::from_toml_str(text).unwrap(), exec).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ledger_passes_symbolically_on_random_models(
        p in 1usize..=2,
        n in 1usize..=3,
        hs in prop::collection::vec(0usize..H.len(), 2),
        diag in prop::collection::vec(0usize..DIAG.len(), 3),
        off in prop::collection::vec(0usize..OFF.len(), 3),
    ) {
        let geom = compute(&random_model(p, n, &hs, &diag, &off), Execution::default());
        let settings = Settings { probes: 4, ..Settings::default() };
        let report = verify(&geom, &settings, Execution::default()).unwrap();
        for c in &report.checks {
            prop_assert!(c.passed(), "{} failed: {:?}", c.name, c.witness);
            if !c.name.starts_with("fd.") {
                prop_assert_eq!(c.tier, Tier::Symbolic, "{}", c.name);
            }
        }
        for name in ["symmetry.R^l_ijk", "symmetry.H^alpha_etabetagamma", "symmetry.R^(m)_(mu)ij"] {
            prop_assert!(report.get(name).is_some_and(|c| c.tier == Tier::Symbolic), "{}", name);
        }
    }

    #[test]
    fn sequential_and_parallel_agree(
        p in 1usize..=2,
        n in 1usize..=2,
        hs in prop::collection::vec(0usize..H.len(), 2),
        diag in prop::collection::vec(0usize..DIAG.len(), 2),
        off in prop::collection::vec(0usize..OFF.len(), 1),
    ) {
        let text = random_model(p, n, &hs, &diag, &off);
        let a = compute(&text, Execution::Sequential);
        let b = compute(&text, Execution::Parallel);
        prop_assert!(a == b);
        let s = Settings { probes: 3, ..Settings::default() };
        prop_assert_eq!(verify(&a, &s, Execution::Sequential).unwrap(), verify(&b, &s, Execution::Parallel).unwrap());
    }
}

#[test]
fn corpus_ledger_is_symbolic_and_audit_is_tight() {
    for name in CORPUS {
        let geom = load(name);
        let report = verify(&geom, &Settings::default(), Execution::default()).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{name}: {} failed {:?}", c.name, c.witness);
            if c.name.starts_with("fd.") {
                assert!(c.max_residual < 1e-6, "{name}: {} residual {}", c.name, c.max_residual);
            } else {
                assert_eq!(c.tier, Tier::Symbolic, "{name}: {}", c.name);
                assert!(c.max_residual < 1e-8, "{name}: {}", c.name);
            }
        }
    }
}

fn corrupted(family: &str, index: &str) -> Geometry {
    let base = std::fs::read_to_string(model_path("sphere")).unwrap();
    compute(&format!("{base}\n[corrupt]\nfamily = \"{family}\"\nindex = {index}\nadd = \"x1\"\n"), Execution::default())
}

#[test]
fn each_corruption_fails_exactly_its_checks() {
    let cases: [(&str, &str, &[&str]); 6] = [
        ("M", "[1, 1, 1]", &["fd.M^(i)_(alpha)beta", "nonlinear.M_canonical"]),
        ("N", "[1, 1, 2]", &["fd.N^(i)_(alpha)j", "nonlinear.N_canonical"]),
        (
            "H",
            "[1, 1, 1]",
            &["fd.H^gamma_alphabeta", "nonlinear.M_canonical", "metrical.h_alphabeta/gamma", "torsion.P_(mu)alpha(j)_plus_Gt"],
        ),
        ("Gt", "[1, 2, 1]", &["fd.G^k_jgamma", "metrical.g_ij/gamma", "cartan.Gt_delta_equals_partial"]),
        (
            "L",
            "[1, 1, 2]",
            &["fd.L^i_jk", "metrical.g_ij|k", "symmetry.L^i_jk", "cartan.L_equals_Gamma", "torsion.P_(mu)i(j)_zero"],
        ),
        (
            "C",
            "[1, 1, 2, 2]",
            &[
                "fd.C^i(gamma)_j(k)",
                "ricci.P_i(j)_zero",
                "metrical.g_ij|^(gamma)_(k)",
                "cartan.C_zero",
                "torsion.P_i(j)_zero",
                "curvature.P_ij(k)_zero",
            ],
        ),
    ];
    for (family, index, expected) in cases {
        let geom = corrupted(family, index);
        let report = verify(&geom, &Settings::default(), Execution::default()).unwrap();
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        let mut expected = expected.to_vec();
        expected.sort_unstable();
        assert_eq!(failed, expected, "corrupting {family}");
        for c in report.failures() {
            let w = c.witness.as_ref().unwrap_or_else(|| panic!("{family}: {} has no witness", c.name));
            assert_eq!(w.point.len(), geom.coords().len());
        }
    }
}

#[test]
fn corrupted_fixture_fails_metrical_condition_with_witness() {
    let geom = load("corrupted_sphere");
    let report = verify(&geom, &Settings::default(), Execution::default()).unwrap();
    let c = report.get("metrical.g_ij|k").unwrap();
    assert_eq!(c.tier, Tier::Failed);
    let w = c.witness.as_ref().unwrap();
    assert!(w.value.abs() >= 1e-8);
    assert!(w.point.values().all(|v| (0.2..=1.2).contains(v)));
}
