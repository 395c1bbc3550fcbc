use jetgeom::exec::Execution;
use jetgeom::geometry::Geometry;
use jetgeom::model::{hessian_metric, ModelSpec};
use jetgeom::symkernel::{parse_expression, Expr};
use proptest::prelude::*;

// entries that stay >= 1 on the sampling box
const DIAG: [&str; 5] = ["1", "2", "exp(2*t1)", "x1^2 + 1", "sin(x1)^2 + 2"];
const OFF: [&str; 3] = ["0", "1/4", "x1/8"];
const FREE: [&str; 6] = ["0", "x1", "t1*x2", "sin(x2)", "exp(x1)", "7/3"];
// h_aa and its reciprocal
const H: [(&str, &str); 4] = [("1", "1"), ("2", "1/2"), ("exp(2*t1)", "exp(-2*t1)"), ("t1^2 + 1", "1/(t1^2 + 1)")];

fn quote(rows: &[Vec<String>]) -> String {
    let rows: Vec<String> =
        rows.iter().map(|r| format!("[{}]", r.iter().map(|e| format!("\"{e}\"")).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn sample(p: usize, n: usize) -> String {
    let mut s = String::from("[[sample_points]]\n");
    for a in 1..=p {
        s += &format!("t{a} = 0.6\n");
    }
    for i in 1..=n {
        s += &format!("x{i} = 0.7\n");
    }
    s
}

fn g_rows(n: usize, diag: &[usize], off: &[usize]) -> Vec<Vec<String>> {
    let mut g = vec![vec![String::from("0"); n]; n];
    let mut k = 0;
    for i in 0..n {
        g[i][i] = DIAG[diag[i]].to_string();
        for j in i + 1..n {
            g[i][j] = OFF[off[k]].to_string();
            g[j][i] = OFF[off[k]].to_string();
            k += 1;
        }
    }
    g
}

fn h_rows(p: usize, hs: &[usize]) -> Vec<Vec<String>> {
    (0..p).map(|a| (0..p).map(|b| if a == b { H[hs[a]].0.to_string() } else { "0".into() }).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hessian_discards_linear_and_free_terms(
        n in 2usize..=3,
        diag in prop::collection::vec(0usize..DIAG.len(), 3),
        off in prop::collection::vec(0usize..OFF.len(), 3),
        u in prop::collection::vec(0usize..FREE.len(), 3),
        f in 0usize..FREE.len(),
    ) {
        let g = g_rows(n, &diag, &off);
        let mut quad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                quad.push(format!("({})*v{}_1*v{}_1", g[i][j], i + 1, j + 1));
            }
        }
        let lin: Vec<String> = (0..n).map(|i| format!("({})*v{}_1", FREE[u[i]], i + 1)).collect();
        let full = format!("{} + {} + {}", quad.join(" + "), lin.join(" + "), FREE[f]);
        let text = format!("p = 1\nn = {n}\nh = [[\"1\"]]\nlagrangian = \"{full}\"\n{}", sample(1, n));
        let spec = ModelSpec::from_toml_str(&text).unwrap();
        let cs = &spec.coords;
        let hess = hessian_metric(&spec.lagrangian(), cs, Execution::Sequential).unwrap();
        let quad_only = parse_expression(&quad.join(" + "), cs).unwrap();
        let hess_quad = hessian_metric(&quad_only, cs, Execution::Sequential).unwrap();
        for (idx, e) in hess.components() {
            let want = parse_expression(&g[idx[2]][idx[3]], cs).unwrap();
            prop_assert!(e.sym_eq(&want).unwrap(), "G{:?} = {}", idx, e.to_string(cs));
            prop_assert!(e.sym_eq(hess_quad.get(&idx)).unwrap());
        }
    }

    #[test]
    fn spatial_metric_is_left_inverse_of_kronecker(
        p in 1usize..=2,
        n in 1usize..=2,
        hs in prop::collection::vec(0usize..H.len(), 2),
        diag in prop::collection::vec(0usize..DIAG.len(), 2),
        off in prop::collection::vec(0usize..OFF.len(), 1),
    ) {
        let g = g_rows(n, &diag, &off);
        let mut big = vec![vec![String::from("0"); p * n]; p * n];
        for a in 0..p {
            for i in 0..n {
                for j in 0..n {
                    big[a * n + i][a * n + j] = format!("({})*({})", H[hs[a]].1, g[i][j]);
                }
            }
        }
        let text = format!("p = {p}\nn = {n}\nh = {}\nG = {}\n{}", quote(&h_rows(p, &hs)), quote(&big), sample(p, n));
        let spec = ModelSpec::from_toml_str(&text).unwrap();
        let geom = Geometry::compute(&spec, Execution::Sequential).unwrap();
        let cs = geom.coords();
        for (idx, e) in geom.metric.g.components() {
            let want = parse_expression(&g[idx[0]][idx[1]], cs).unwrap();
            prop_assert!(e.sym_eq(&want).unwrap(), "g{:?} = {}", idx, e.to_string(cs));
        }
        prop_assert_eq!(geom.kronecker.matches_input, Some(true));
    }

    #[test]
    fn metric_times_inverse_is_identity(
        n in 1usize..=3,
        diag in prop::collection::vec(0usize..DIAG.len(), 3),
        off in prop::collection::vec(0usize..OFF.len(), 3),
    ) {
        let g = g_rows(n, &diag, &off);
        let mut quad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                quad.push(format!("({})*v{}_1*v{}_1", g[i][j], i + 1, j + 1));
            }
        }
        let text = format!("p = 1\nn = {n}\nh = [[\"1\"]]\nlagrangian = \"{}\"\n{}", quad.join(" + "), sample(1, n));
        let spec = ModelSpec::from_toml_str(&text).unwrap();
        let geom = Geometry::compute(&spec, Execution::Sequential).unwrap();
        let (g, gi) = (&geom.metric.g, &geom.metric.g_inv);
        for i in 0..n {
            for k in 0..n {
                let prod = Expr::sum((0..n).map(|j| g.get(&[i, j]).clone() * gi.get(&[j, k]).clone()).collect());
                let want = Expr::int(i64::from(i == k));
                prop_assert!(prod.sym_eq(&want).unwrap(), "(g g^-1)[{i},{k}]");
            }
        }
    }
}
