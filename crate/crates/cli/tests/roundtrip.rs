use gsw_cli::{dump_session, parse, Session};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exponent vectors of weighted degree `d`.
fn monomials(weights: &[i64], d: i64) -> Vec<Vec<u32>> {
    if weights.is_empty() {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let w = weights[0];
    let mut e = 0;
    while e * w <= d {
        for mut rest in monomials(&weights[1..], d - e * w) {
            rest.insert(0, e as u32);
            out.push(rest);
        }
        e += 1;
    }
    out
}

fn coeff(rng: &mut ChaCha8Rng) -> String {
    let n: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=4);
    let s = if rng.gen_bool(0.5) { "-" } else { "" };
    if d == 1 {
        format!("{s}{n}")
    } else {
        format!("{s}{n}/{d}")
    }
}

fn poly(rng: &mut ChaCha8Rng, weights: &[i64], d: i64) -> String {
    let mons = monomials(weights, d);
    if mons.is_empty() || rng.gen_bool(0.05) {
        return "0".into();
    }
    let k = rng.gen_range(1..=mons.len().min(3));
    let terms: Vec<String> = mons
        .choose_multiple(rng, k)
        .map(|e| {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{i}") } else { format!("x{i}^{x}") })
                .collect();
            let c = coeff(rng);
            if vars.is_empty() {
                c
            } else {
                format!("{c}*{}", vars.join("*"))
            }
        })
        .collect();
    // a leading `-` parses as the sign of the first term
    terms.join(" + ").replace("+ -", "- ")
}

fn random_session(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    if rng.gen_bool(0.3) {
        out.push_str("fan P rays [[1,0],[0,1],[-1,-1]] cones [[0,1],[1,2],[2,0]]\n");
        out.push_str("fan H rays [[1,0],[0,1],[-1,2],[0,-1]] cones [[0,1],[1,2],[2,3],[3,0]]\n");
        out.push_str("ring T fan H\nideal J = x0*x1, x2^2\nmodule U = truncate J at (1,1)\n");
        out.push_str("ring TP fan P field GF(7)\n");
    }
    let nrings = rng.gen_range(1..=2);
    for r in 0..nrings {
        let n = rng.gen_range(1..=4);
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let ws: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
        let field = match rng.gen_range(0..3) {
            0 => "",
            1 => " field QQ",
            _ => " field GF(101)",
        };
        out.push_str(&format!("ring R{r} weights {}{field}\n", ws.join(" ")));
        let mut names: Vec<String> = Vec::new();
        let mut ideals: Vec<String> = Vec::new();
        for k in 0..rng.gen_range(1..=5) {
            if ideals.is_empty() || rng.gen_bool(0.3) {
                let gens: Vec<String> = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let d = rng.gen_range(1..=6);
                        poly(&mut rng, &weights, d)
                    })
                    .collect();
                let name = format!("I{r}_{k}");
                out.push_str(&format!("ideal {name} = {}\n", gens.join(", ")));
                ideals.push(name.clone());
                names.push(name);
                continue;
            }
            let name = format!("M{r}_{k}");
            let expr = match rng.gen_range(0..8) {
                0 => format!("quotient {}", ideals.choose(&mut rng).unwrap()),
                1 => format!("ideal {}", ideals.choose(&mut rng).unwrap()),
                2 => {
                    let degs: Vec<String> = (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(-3..=3).to_string()).collect();
                    format!("free {}", degs.join(" "))
                }
                3 => "residue".into(),
                4 => {
                    let parts: Vec<&String> = (0..rng.gen_range(1..=3)).map(|_| names.choose(&mut rng).unwrap()).collect();
                    format!("sum {}", parts.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" "))
                }
                5 => format!("twist {} {}", names.choose(&mut rng).unwrap(), rng.gen_range(-4..=4)),
                6 => format!("truncate {} at {}", names.choose(&mut rng).unwrap(), rng.gen_range(-2..=6)),
                _ => {
                    let rows = rng.gen_range(1..=3);
                    let cols = rng.gen_range(0..=3);
                    let twists: Vec<i64> = (0..rows).map(|_| rng.gen_range(-2..=2)).collect();
                    let sources: Vec<i64> = (0..cols).map(|_| rng.gen_range(3..=7)).collect();
                    let m: Vec<String> = twists
                        .iter()
                        .map(|t| {
                            let entries: Vec<String> = sources.iter().map(|s| poly(&mut rng, &weights, s - t)).collect();
                            format!("[{}]", entries.join(", "))
                        })
                        .collect();
                    let ts: Vec<String> = twists.iter().map(|t| t.to_string()).collect();
                    format!("coker [{}] twists {}", m.join(", "), ts.join(" "))
                }
            };
            out.push_str(&format!("module {name} = {expr}\n"));
            names.push(name);
        }
    }
    if out.contains("ring T ") && rng.gen_bool(0.5) {
        out.push_str("use T\nmodule V = sum U U\n");
    }
    out
}

fn decls(s: &Session) -> Vec<gsw_cli::parse::Statement> {
    s.declarations().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_of_dump_is_identity(seed in any::<u64>()) {
        let text = random_session(seed);
        let x = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        let dumped = dump_session(&x);
        let y = parse(&dumped).map_err(|e| TestCaseError::fail(format!("{e}\n{dumped}")))?;
        prop_assert_eq!(decls(&x), decls(&y));
        prop_assert_eq!(dump_session(&y), dumped);
    }
}
