//! Pipeline conformance: the Garsia-Milne walks must reproduce the surgery
//! codecs, every stage involution must be a fixed-point-free sign-reversing
//! involution on its difference, and the emitted traces must follow the
//! worked matrix derivations step for step.

use treecodex::engine::{
    blob_pipeline, dandelion_pipeline, garsia_milne_walk, happy_pipeline, mtt_involution, Element,
    Pipeline, Side, Stage,
};
use treecodex::tree::{enumerate_trees, random_tree, CodeVector, RootedTree};
use treecodex::{blob_encode, dandelion_encode, happy_encode};

fn tree(succ: &[usize]) -> RootedTree {
    RootedTree::from_successors(succ.to_vec()).unwrap()
}

#[test]
fn happy_walk_encodes_the_two_vertex_path() {
    let p = happy_pipeline(2);
    assert_eq!(p.stage_count(), 2 * 2 + 4);
    let code = p.encode_tree(&tree(&[2, 0]), p.default_budget()).unwrap();
    assert_eq!(code.to_string(), "2");
}

#[test]
fn blob_walk_encodes_the_worked_example() {
    let p = blob_pipeline(3);
    let code = p.encode_tree(&tree(&[3, 1, 0]), p.default_budget()).unwrap();
    assert_eq!(code.to_string(), "3,1");
}

#[test]
fn dandelion_walk_encodes_the_worked_example() {
    let p = dandelion_pipeline(4);
    let code = p.encode_tree(&tree(&[3, 0, 4, 2]), p.default_budget()).unwrap();
    assert_eq!(code.to_string(), "2,4,3");
}

#[test]
fn walks_match_surgery_exhaustively_to_n_4() {
    for n in 1..=4 {
        let pipes: [(Pipeline, fn(&RootedTree) -> CodeVector); 3] = [
            (blob_pipeline(n), blob_encode as fn(&RootedTree) -> CodeVector),
            (happy_pipeline(n), happy_encode),
            (dandelion_pipeline(n), dandelion_encode),
        ];
        for t in enumerate_trees(n).unwrap() {
            for (p, surgery) in &pipes {
                let walked = p.encode_tree(&t, p.default_budget()).unwrap();
                assert_eq!(walked, surgery(&t), "n={n} tree {t} {:?}", p.kind());
            }
        }
    }
}

#[test]
fn walks_match_surgery_on_random_trees_at_n_5() {
    let pipes: [(Pipeline, fn(&RootedTree) -> CodeVector); 3] = [
        (blob_pipeline(5), blob_encode as fn(&RootedTree) -> CodeVector),
        (happy_pipeline(5), happy_encode),
        (dandelion_pipeline(5), dandelion_encode),
    ];
    for seed in 0..500u64 {
        let t = random_tree(5, seed);
        for (p, surgery) in &pipes {
            let walked = p.encode_tree(&t, p.default_budget()).unwrap();
            assert_eq!(walked, surgery(&t), "seed {seed} {:?}", p.kind());
        }
    }
}

/// Every involution, enumerated over its full difference domain at small n,
/// is a sign-reversing involution without fixed points.
#[test]
fn stage_involutions_are_sign_reversing_involutions() {
    for n in 1..=3usize {
        for p in [happy_pipeline(n), blob_pipeline(n), dandelion_pipeline(n)] {
            for d in 0..p.stage_count() - 1 {
                let mut domain: Vec<(Element, Side)> = Vec::new();
                for e in p.enumerate_stage(d) {
                    domain.push((e, Side::Lo));
                }
                for e in p.enumerate_stage(d + 1) {
                    domain.push((e, Side::Hi));
                }
                for (e, side) in domain {
                    let d_sign = match side {
                        Side::Lo => e.sign(),
                        Side::Hi => -e.sign(),
                    };
                    let (img, img_side) = p.beta(d, &e, side);
                    let img_sign = match img_side {
                        Side::Lo => img.sign(),
                        Side::Hi => -img.sign(),
                    };
                    assert_eq!(
                        img_sign,
                        -d_sign,
                        "sign not reversed: {:?} d={d} {} on {}",
                        p.kind(),
                        p.stages()[d],
                        e.render()
                    );
                    assert!(
                        !(img == e && img_side == side),
                        "fixed point: {:?} d={d} on {}",
                        p.kind(),
                        e.render()
                    );
                    let (back, back_side) = p.beta(d, &img, img_side);
                    assert!(
                        back == e && back_side == side,
                        "not an involution: {:?} d={d} {} on {}",
                        p.kind(),
                        p.stages()[d],
                        e.render()
                    );
                }
            }
        }
    }
}

/// Stage counts and termination within the default budget, exhaustively.
#[test]
fn walks_terminate_within_budget_to_n_5() {
    for n in 1..=5usize {
        for p in [happy_pipeline(n), blob_pipeline(n), dandelion_pipeline(n)] {
            for t in enumerate_trees(n).unwrap() {
                garsia_milne_walk(&p, Element::Tree(t.clone()), p.default_budget())
                    .expect("walk within budget");
            }
        }
    }
}

#[test]
fn tiny_budgets_fail_loudly() {
    let p = blob_pipeline(3);
    let t = tree(&[3, 1, 0]);
    let err = p.encode_tree(&t, 3).unwrap_err();
    assert!(matches!(err, treecodex::Error::StepBudgetExceeded { budget: 3 }));
}

#[test]
fn happy_trace_follows_the_worked_two_vertex_derivation() {
    let p = happy_pipeline(2);
    let (code, steps) = p.encode_tree_traced(&tree(&[2, 0]), p.default_budget()).unwrap();
    assert_eq!(code.to_string(), "2");
    let lines: Vec<String> = steps.iter().map(|s| s.render()).collect();
    // the walk starts at the tree and the first involution lands on the
    // all-diagonal placeholder array with negative membership
    assert_eq!(lines[0], "STEP 0 | stage=A0 | sign=+ | tree[2 0]");
    assert_eq!(
        lines[1],
        "STEP 1 | stage=A0' | sign=- | (0,0,λ,D)(1,1,B2,D)(2,2,B0,D)"
    );
    assert_eq!(
        lines[2],
        "STEP 2 | stage=A0' | sign=+ | (0,0,λ,D)(1,1,B2,D)(2,2,B0,D)"
    );
    // the closing swap turns B2*B0 into the negative monomial B0*b2
    assert!(lines.iter().any(|l| l.contains("sign=- | B0*b2")));
    // and the very last element is the code
    assert_eq!(steps.last().unwrap().element, Element::Code(vec![2]));
    // the derivation bounces all the way back to the top set before
    // descending for good
    let a0_revisits = steps
        .iter()
        .filter(|s| s.stage == Stage::HMat { i: 0, primed: true })
        .count();
    assert!(a0_revisits >= 4, "expected several visits to A0', saw {a0_revisits}");
}

#[test]
fn traced_and_untraced_walks_agree() {
    let p = dandelion_pipeline(4);
    let t = tree(&[3, 0, 4, 2]);
    let (c1, trace) = p.encode_tree_traced(&t, p.default_budget()).unwrap();
    let c2 = p.encode_tree(&t, p.default_budget()).unwrap();
    assert_eq!(c1, c2);
    assert!(trace.len() >= 3);
    // membership signs alternate: involution then negative identity
    for pair in trace[1..].chunks(2) {
        assert_eq!(pair[0].sign, -1);
        if pair.len() == 2 {
            assert_eq!(pair[1].sign, 1);
        }
    }
}

#[test]
fn mtt_involution_pairs_trees_with_diagonal_arrays() {
    let t = tree(&[2, 0]);
    let img = mtt_involution(&Element::Tree(t.clone()));
    let Element::Array(ref a) = img else { panic!("expected an array") };
    assert_eq!(a.render(), "(0,0,λ,D)(1,1,B2,D)(2,2,B0,D)");
    assert_eq!(mtt_involution(&img), Element::Tree(t));
}

#[test]
fn mtt_involution_toggles_the_cycle_with_the_greatest_vertex() {
    use treecodex::engine::{Entry, SignedArray, Sym};
    // succ(1) = 0, succ(2) = 2: a loop at 2
    let a = SignedArray::new(
        0,
        vec![
            Entry { col: 0, sym: Sym::Lambda, neg: false },
            Entry { col: 1, sym: Sym::Upper(0), neg: false },
            Entry { col: 2, sym: Sym::Lower(2), neg: true },
        ],
    );
    let img = mtt_involution(&Element::Array(a.clone()));
    let Element::Array(ref b) = img else { panic!() };
    assert_eq!(b.render(), "(0,0,λ,D)(1,1,B0,D)(2,2,B2,D)");
    assert_eq!(mtt_involution(&img), Element::Array(a));
}

#[test]
fn pipeline_stage_counts() {
    for n in 2..=5 {
        assert_eq!(happy_pipeline(n).stage_count(), 2 * n + 4);
        assert_eq!(blob_pipeline(n).stage_count(), 6 * n - 3);
        assert_eq!(dandelion_pipeline(n).stage_count(), 4 * n - 2);
    }
    assert_eq!(blob_pipeline(1).stage_count(), 3);
    assert_eq!(dandelion_pipeline(1).stage_count(), 3);
}
