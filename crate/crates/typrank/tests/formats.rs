use proptest::prelude::*;
use typrank::formats::*;
use typrank::report::to_json;
use typrank_core::completion::PartialSymmetricMatrix;
use typrank_core::{SemisimpleGraph, SymmetricMatrix};

fn graph_strategy() -> impl Strategy<Value = SemisimpleGraph> {
    (1usize..9).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n + 1) / 2).prop_map(move |bits| {
            let mut g = SemisimpleGraph::new(n).unwrap();
            let mut k = 0;
            for i in 1..=n {
                for j in i..=n {
                    if bits[k] {
                        g.insert_edge(i, j).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn graph_text_round_trips(g in graph_strategy()) {
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }

    #[test]
    fn partial_json_round_trips_bit_exact(g in graph_strategy(), seed in any::<u64>()) {
        let mut x = seed;
        let entries: Vec<_> = g.edges().map(|(i, j)| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (i, j, f64::from_bits((x >> 2) | 0x3000_0000_0000_0000) * if x & 1 == 0 { 1.0 } else { -1.0 })
        }).collect();
        let m = PartialSymmetricMatrix::new(g, &entries).unwrap();
        let json = to_json(&partial_file(&m));
        let back = parse_partial(&json).unwrap();
        prop_assert_eq!(back.n(), m.n());
        for ((i, j, v), (a, b, w)) in m.entries().zip(back.entries()) {
            prop_assert_eq!((i, j, v.to_bits()), (a, b, w.to_bits()));
        }
    }
}

#[test]
fn graph_comments_and_blank_lines() {
    let g = parse_graph("# header comment\n\n n 3 \n1 1 # loop\n\n2 3\n").unwrap();
    assert_eq!(g, SemisimpleGraph::from_edges(3, &[(1, 1), (2, 3)]).unwrap());
    assert_eq!(write_graph(&g), "n 3\n1 1\n2 3\n");
}

#[test]
fn graph_errors_carry_line_numbers() {
    for (text, line) in
        [("", 1), ("m 3\n", 1), ("n 2\n1 3\n", 2), ("n 2\n1 2\n2 1\n", 3), ("n 2\n\n1 x\n", 3), ("n 2\n1 2 2\n", 2)]
    {
        match parse_graph(text) {
            Err(typrank::Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn full_matrix_file() {
    let m = parse_matrix(r#"{"n": 2, "rows": [[1, 2], [2, -1]]}"#).unwrap();
    assert_eq!(m, SymmetricMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, -1.0]]).unwrap());
    assert_eq!(parse_matrix(&to_json(&matrix_file(&m))).unwrap(), m);
    assert!(parse_matrix(r#"{"n": 2, "rows": [[1, 2], [2.1, -1]]}"#).is_err());
    assert!(parse_matrix(r#"{"n": 3, "rows": [[1, 2], [2, -1]]}"#).is_err());
    assert!(parse_matrix(r#"{"n": 2, "rows": [[1, 2], [2, -1]], "x": 0}"#).is_err());
}

#[test]
fn partial_file_validation() {
    let ok = r#"{"n": 3, "entries": [{"i": 1, "j": 1, "v": 1}, {"i": 2, "j": 3, "v": 0.5}]}"#;
    let m = parse_partial(ok).unwrap();
    assert_eq!(m.unknowns(), vec![(1, 2), (1, 3), (2, 2), (3, 3)]);
    let reversed = r#"{"n": 3, "entries": [{"i": 3, "j": 2, "v": 0.5}]}"#;
    assert!(matches!(parse_partial(reversed), Err(typrank::Error::Usage(_))));
    let dup = r#"{"n": 3, "entries": [{"i": 1, "j": 2, "v": 0.5}, {"i": 1, "j": 2, "v": 1}]}"#;
    assert!(parse_partial(dup).is_err());
    let out = r#"{"n": 2, "entries": [{"i": 1, "j": 3, "v": 0.5}]}"#;
    assert!(matches!(parse_partial(out), Err(typrank::Error::Core(_))));
}

#[test]
fn ordering_file() {
    assert_eq!(parse_ordering("# order\n3 1\n2 4\n").unwrap(), vec![(1, 3), (2, 4)]);
    assert!(parse_ordering("1\n").is_err());
}
