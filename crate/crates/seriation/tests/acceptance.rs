//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seriation::core::{
    binarize, fiedler_info, fixture, laplacian, seriate, seriate_similarity, similarity,
    smallest_eigenpairs, AbundanceMatrix, ComponentSpectrum, IllPosedReason, Label,
    LaplacianMatrix, NodeKind, PQNode, PQTree, SeriationOptions, SeriationResult, SimilarityMatrix,
    Tolerances, Warning,
};

type Check = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(rows: &[&[Label]]) -> BTreeSet<Vec<Label>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn frontier_set(t: &PQTree) -> BTreeSet<Vec<Label>> {
    t.enumerate_frontiers(1_000_000)
        .expect("small tree")
        .into_iter()
        .collect()
}

fn run(name: &str) -> SeriationResult {
    seriate(&fixture(name).unwrap(), &SeriationOptions::default()).unwrap()
}

/// Next permutation in lexicographic order, false after the last.
fn next_permutation(p: &mut [Label]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn all_permutations(labels: &[Label]) -> Vec<Vec<Label>> {
    let mut p = labels.to_vec();
    p.sort_unstable();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

const FIG1_TABLE: &[&[Label]] = &[
    &[1, 2, 3, 4, 5, 6],
    &[1, 2, 3, 6, 5, 4],
    &[1, 3, 2, 4, 5, 6],
    &[1, 3, 2, 6, 5, 4],
    &[2, 1, 3, 4, 5, 6],
    &[2, 1, 3, 6, 5, 4],
    &[2, 3, 1, 4, 5, 6],
    &[2, 3, 1, 6, 5, 4],
    &[3, 1, 2, 4, 5, 6],
    &[3, 1, 2, 6, 5, 4],
    &[3, 2, 1, 4, 5, 6],
    &[3, 2, 1, 6, 5, 4],
    &[4, 5, 6, 1, 2, 3],
    &[4, 5, 6, 1, 3, 2],
    &[4, 5, 6, 2, 1, 3],
    &[4, 5, 6, 2, 3, 1],
    &[4, 5, 6, 3, 1, 2],
    &[4, 5, 6, 3, 2, 1],
    &[6, 5, 4, 1, 2, 3],
    &[6, 5, 4, 1, 3, 2],
    &[6, 5, 4, 2, 1, 3],
    &[6, 5, 4, 2, 3, 1],
    &[6, 5, 4, 3, 1, 2],
    &[6, 5, 4, 3, 2, 1],
];

fn criterion_1() -> Check {
    let t = PQTree::new(PQNode::p([
        PQNode::p_leaves([1, 2, 3]),
        PQNode::q_leaves([4, 5, 6]),
    ]))
    .unwrap();
    let got = frontier_set(&t);
    ensure(got == set(FIG1_TABLE), || {
        format!("frontier set differs: {} sequences", got.len())
    })?;
    ensure(t.count_frontiers().to_string() == "24", || {
        format!("count {}", t.count_frontiers())
    })
}

const S2: [[u64; 4]; 4] = [[3, 1, 1, 2], [1, 3, 2, 2], [1, 2, 4, 3], [2, 2, 3, 5]];
const S3: [[u64; 4]; 4] = [[2, 1, 1, 1], [1, 4, 2, 1], [1, 2, 3, 1], [1, 1, 1, 2]];
const S4: [[u64; 4]; 4] = [[2, 1, 1, 1], [1, 4, 2, 2], [1, 2, 3, 1], [1, 2, 1, 3]];
const S5: [[u64; 5]; 5] = [
    [2, 1, 1, 1, 0],
    [1, 5, 4, 4, 0],
    [1, 4, 5, 4, 0],
    [1, 4, 4, 5, 0],
    [0, 0, 0, 0, 0],
];
const S6: [[u64; 5]; 5] = [
    [5, 3, 4, 4, 4],
    [3, 3, 2, 2, 2],
    [4, 2, 5, 4, 4],
    [4, 2, 4, 5, 4],
    [4, 2, 4, 4, 5],
];

fn criterion_2() -> Check {
    let reference: [(&str, Vec<Vec<u64>>); 5] = [
        ("b2", S2.iter().map(|r| r.to_vec()).collect()),
        ("b3", S3.iter().map(|r| r.to_vec()).collect()),
        ("b4", S4.iter().map(|r| r.to_vec()).collect()),
        ("b5", S5.iter().map(|r| r.to_vec()).collect()),
        ("b6", S6.iter().map(|r| r.to_vec()).collect()),
    ];
    for (name, want) in reference {
        let s = similarity(&binarize(&fixture(name).unwrap()));
        let got: Vec<Vec<u64>> = (0..s.order()).map(|i| s.row(i).to_vec()).collect();
        ensure(got == want, || format!("{name}: {got:?}"))?;
    }
    Ok(())
}

const ACTORS_BLOCK: &[&[Label]] = &[
    &[4, 3, 1, 2, 27],
    &[27, 2, 1, 3, 4],
    &[4, 3, 2, 1, 27],
    &[27, 1, 2, 3, 4],
];
const ACTORS_P: [Label; 27] = [
    4, 3, 1, 2, 27, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25,
    26,
];

fn criterion_3() -> Check {
    let r = run("actors27x31");
    let mut errors = Vec::new();

    let block = PQNode::q([
        PQNode::leaf(4),
        PQNode::leaf(3),
        PQNode::p_leaves([1, 2]),
        PQNode::leaf(27),
    ]);
    let mut kids: Vec<PQNode> = (5..=26).map(PQNode::leaf).collect();
    kids.push(block);
    let expected = PQTree::new(PQNode::P(kids)).unwrap();
    if !r.tree.equivalent(&expected) {
        let extra: Vec<String> = r
            .tree
            .root()
            .children()
            .iter()
            .filter(|c| c.kind() != NodeKind::Leaf && !c.frontier().contains(&27))
            .map(|c| format!("{c:?}"))
            .collect();
        errors.push(format!(
            "tree not equivalent to root P over 22 leaves plus the block: count {} vs {}, extra internal children {:?}",
            r.tree.count_frontiers(),
            expected.count_frontiers(),
            extra
        ));
    }

    match r
        .tree
        .root()
        .children()
        .iter()
        .find(|c| c.frontier().contains(&27))
    {
        Some(node) => {
            let sub = PQTree::new(node.clone()).unwrap();
            let got = frontier_set(&sub);
            if got != set(ACTORS_BLOCK) {
                errors.push(format!("block frontiers {got:?}"));
            }
        }
        None => errors.push("no root child holds unit 27".into()),
    }

    if r.tree.contains(&ACTORS_P) != Ok(true) {
        errors.push("reference ordering is not a frontier".into());
    }
    ensure(errors.is_empty(), || errors.join("; "))
}

fn criterion_4() -> Check {
    let r = run("b2");
    ensure(r.tree.root().kind() == NodeKind::Q, || {
        format!("root {:?}", r.tree.root())
    })?;
    ensure(r.tree.contains(&[2, 3, 4, 1]) == Ok(true), || {
        "[2,3,4,1] missing".into()
    })?;
    ensure(r.tree.count_frontiers().to_string() == "2", || {
        format!("count {}", r.tree.count_frontiers())
    })
}

fn criterion_5() -> Check {
    let r = run("b4");
    ensure(r.tree.root().kind() == NodeKind::P, || {
        format!("root {:?}", r.tree.root())
    })?;
    ensure(r.tree.contains(&[1, 3, 2, 4]) == Ok(true), || {
        "[1,3,2,4] missing".into()
    })?;
    ensure(r.tree.root().children().contains(&PQNode::Leaf(1)), || {
        format!("leaf 1 not a root child: {:?}", r.tree.root())
    })
}

const G5_TABLE: &[&[Label]] = &[
    &[5, 4, 3, 2, 1],
    &[5, 4, 2, 3, 1],
    &[5, 3, 4, 2, 1],
    &[5, 3, 2, 4, 1],
    &[5, 2, 4, 3, 1],
    &[5, 2, 3, 4, 1],
    &[5, 1, 4, 3, 2],
    &[5, 1, 4, 2, 3],
    &[5, 1, 3, 4, 2],
    &[5, 1, 3, 2, 4],
    &[5, 1, 2, 4, 3],
    &[5, 1, 2, 3, 4],
    &[4, 3, 2, 1, 5],
    &[4, 2, 3, 1, 5],
    &[3, 4, 2, 1, 5],
    &[3, 2, 4, 1, 5],
    &[2, 4, 3, 1, 5],
    &[2, 3, 4, 1, 5],
    &[1, 4, 3, 2, 5],
    &[1, 4, 2, 3, 5],
    &[1, 3, 4, 2, 5],
    &[1, 3, 2, 4, 5],
    &[1, 2, 4, 3, 5],
    &[1, 2, 3, 4, 5],
];

fn criterion_6() -> Check {
    let r = run("b5");
    let got = frontier_set(&r.tree);
    ensure(got == set(G5_TABLE), || {
        format!("{} frontiers, tree {:?}", got.len(), r.tree.root())
    })?;
    let warned = r.warnings.iter().any(|w| {
        matches!(w, Warning::IllPosed { units, reason: IllPosedReason::MultipleFiedler { .. }, .. }
            if units.iter().copied().collect::<BTreeSet<_>>() == BTreeSet::from([2, 3, 4]))
    });
    ensure(warned, || {
        format!("no ill-posed warning for {{2,3,4}}: {:?}", r.warnings)
    })?;
    ensure(r.tree.count_frontiers().to_string() == "24", || {
        format!("count {}", r.tree.count_frontiers())
    })
}

fn criterion_7() -> Check {
    let r = run("b6");
    ensure(r.tree.contains(&[2, 1, 3, 4, 5]) == Ok(true), || {
        format!("tree {:?}", r.tree.root())
    })
}

const G3_TABLE: &[&[Label]] = &[
    &[4, 3, 1, 2],
    &[4, 2, 3, 1],
    &[4, 1, 3, 2],
    &[4, 1, 2, 3],
    &[3, 2, 4, 1],
    &[2, 3, 4, 1],
    &[3, 2, 1, 4],
    &[2, 3, 1, 4],
    &[1, 4, 3, 2],
    &[1, 4, 2, 3],
    &[1, 3, 2, 4],
    &[1, 2, 3, 4],
];

fn criterion_8() -> Check {
    let l = laplacian(&SimilarityMatrix::from_rows(&S3).unwrap());
    let tol = Tolerances::default();
    let info = fiedler_info(&l, &tol).map_err(|e| e.to_string())?;
    ensure(
        (info.value - 4.0).abs() <= tol.mult_tol * 4.0 && info.multiplicity == 2,
        || {
            format!(
                "fiedler value {} multiplicity {}",
                info.value, info.multiplicity
            )
        },
    )?;

    let t = PQTree::new(PQNode::p([
        PQNode::leaf(1),
        PQNode::leaf(4),
        PQNode::q_leaves([2, 3]),
    ]))
    .unwrap();
    ensure(t.count_frontiers().to_string() == "12", || {
        format!("count {}", t.count_frontiers())
    })?;
    let got = frontier_set(&t);
    let reference = set(G3_TABLE);
    let matched = got.intersection(&reference).count();
    let missing: Vec<_> = reference.difference(&got).collect();
    let extra: Vec<_> = got.difference(&reference).collect();
    ensure(
        matched == 11 && missing == [&vec![4, 3, 1, 2]] && extra == [&vec![4, 3, 2, 1]],
        || format!("matched {matched}, reference-only {missing:?}, enumerated-only {extra:?}"),
    )
}

const OBSERVERS_P: [Label; 25] = [
    5, 8, 9, 1, 7, 12, 2, 11, 6, 10, 3, 4, 13, 15, 16, 18, 21, 23, 24, 19, 20, 14, 17, 22, 25,
];

fn criterion_9() -> Result<String, String> {
    let a = run("observers25x24");
    let b = run("observers25x24");
    ensure(a == b, || "two runs differ".into())?;
    let m = fixture("observers25x24").unwrap();
    let zero: Vec<Label> = (0..m.rows())
        .filter(|&i| m.row(i).iter().all(|&x| x == 0))
        .map(|i| m.row_labels()[i])
        .collect();
    for z in &zero {
        ensure(
            a.components
                .iter()
                .any(|c| c.units == [*z] && c.spectrum == ComponentSpectrum::Trivial { size: 1 }),
            || format!("zero row {z} is not a singleton component"),
        )?;
    }
    let mut seen: Vec<Label> = a
        .components
        .iter()
        .flat_map(|c| c.units.iter().copied())
        .collect();
    seen.sort_unstable();
    ensure(seen == (1..=25).collect::<Vec<_>>(), || {
        "components do not partition the units".into()
    })?;
    for c in &a.components {
        if c.units.len() >= 3 {
            ensure(matches!(c.spectrum, ComponentSpectrum::Fiedler(_)), || {
                format!("component {:?} lacks a Fiedler report", c.units)
            })?;
        }
    }
    let member = a.tree.contains(&OBSERVERS_P).map_err(|e| e.to_string())?;
    Ok(format!(
        "zero rows {zero:?} are singletons; {} components; count {}; ill-posed {}; reference ordering is a frontier: {member}",
        a.components.len(),
        a.tree.count_frontiers(),
        a.is_ill_posed()
    ))
}

fn random_node(rng: &mut impl Rng, labels: &[Label]) -> PQNode {
    if labels.len() == 1 {
        return PQNode::Leaf(labels[0]);
    }
    let k = rng.gen_range(2..=labels.len().min(4));
    let mut cuts: Vec<usize> = (1..labels.len()).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..k - 1].to_vec();
    cuts.sort_unstable();
    let mut parts = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([labels.len()]) {
        parts.push(random_node(rng, &labels[start..c]));
        start = c;
    }
    if rng.gen_bool(0.5) {
        PQNode::P(parts)
    } else {
        PQNode::Q(parts)
    }
}

fn random_tree(rng: &mut impl Rng, max_leaves: usize) -> PQTree {
    let n = rng.gen_range(1..=max_leaves);
    let mut labels: Vec<Label> = (1..=n as Label).collect();
    labels.shuffle(rng);
    PQTree::new(random_node(rng, &labels)).unwrap()
}

fn criterion_10a() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa);
    for _ in 0..500 {
        let t = random_tree(&mut rng, 8);
        let list = t.enumerate_frontiers(1_000_000).unwrap();
        let fs: BTreeSet<Vec<Label>> = list.iter().cloned().collect();
        ensure(fs.len() == list.len(), || {
            format!("duplicate frontiers in {t:?}")
        })?;
        ensure(
            t.count_frontiers().to_string() == list.len().to_string(),
            || format!("count {} vs {} for {t:?}", t.count_frontiers(), list.len()),
        )?;
        for f in &fs {
            let rev: Vec<Label> = f.iter().rev().copied().collect();
            ensure(fs.contains(&rev), || {
                format!("reversal of {f:?} missing in {t:?}")
            })?;
        }
    }
    Ok(())
}

fn criterion_10b() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb);
    for _ in 0..300 {
        let t = random_tree(&mut rng, 6);
        let fs = frontier_set(&t);
        for p in all_permutations(t.universe()) {
            let got = t.contains(&p).map_err(|e| e.to_string())?;
            ensure(got == fs.contains(&p), || {
                format!("contains({p:?}) = {got} for {t:?}")
            })?;
        }
    }
    Ok(())
}

fn random_binary(rng: &mut impl Rng, n: usize, m: usize) -> AbundanceMatrix {
    let density = rng.gen_range(0.2..0.8);
    let entries = (0..n * m)
        .map(|_| u64::from(rng.gen_bool(density)))
        .collect();
    AbundanceMatrix::from_flat(n, m, entries).unwrap()
}

fn residual(l: &LaplacianMatrix, value: f64, v: &[f64]) -> f64 {
    let n = l.order();
    (0..n)
        .map(|i| ((0..n).map(|j| l.get(i, j) * v[j]).sum::<f64>() - value * v[i]).abs())
        .fold(0.0, f64::max)
}

fn criterion_10c() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc);
    let tol = Tolerances::default();
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let m = rng.gen_range(1..=12);
        let s = similarity(&binarize(&random_binary(&mut rng, n, m)));
        let l = laplacian(&s);
        for i in 0..n {
            let sum: f64 = (0..n).map(|j| l.get(i, j)).sum();
            ensure(sum == 0.0, || format!("row {i} sums to {sum}"))?;
        }
        let bound = 1e-8 * l.norm_inf().max(1.0);
        for pair in smallest_eigenpairs(&l, n, &tol).map_err(|e| e.to_string())? {
            let r = residual(&l, pair.value, &pair.vector);
            ensure(r <= bound, || {
                format!("residual {r:e} > {bound:e} at order {n}")
            })?;
        }
    }
    Ok(())
}

/// Non-increasing away from the diagonal in every row and column.
fn is_robinson(s: &SimilarityMatrix) -> bool {
    let n = s.order();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let (a, b, c) = {
                    let mut t = [i, j, k];
                    t.sort_unstable();
                    (t[0], t[1], t[2])
                };
                s.get(a, c) <= s.get(a, b) && s.get(a, c) <= s.get(b, c)
            })
        })
    })
}

fn criterion_10d() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd);
    let mut accepted = 0;
    let mut tried = 0;
    while accepted < 100 {
        tried += 1;
        ensure(tried < 100_000, || {
            format!("only {accepted} usable instances")
        })?;
        let n = rng.gen_range(3..=8);
        let mut x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..2 * n as i64)).collect();
        x.sort_unstable();
        let width = rng.gen_range(2..=8i64);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (width - (x[i] - x[j]).abs()).max(0) as u64)
                    .collect()
            })
            .collect();
        let r = SimilarityMatrix::from_rows(&rows).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let scrambled = r.permuted(&order);
        let result = seriate_similarity(&scrambled, &SeriationOptions::default())
            .map_err(|e| e.to_string())?;
        if result.is_ill_posed() || result.blocks.iter().any(|b| b.fiedler.multiplicity != 1) {
            continue;
        }
        accepted += 1;
        let found = frontier_set(&result.tree)
            .into_iter()
            .any(|f| is_robinson(&scrambled.reordered_by_labels(&f).unwrap()));
        ensure(found, || {
            format!("no Robinson frontier for {rows:?} permuted by {order:?}")
        })?;
    }
    Ok(())
}

fn criterion_10e() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe);
    let opts = SeriationOptions::default();
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(1..=7);
        let a = random_binary(&mut rng, n, m);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let rows: Vec<Vec<u64>> = order.iter().map(|&i| a.row(i).to_vec()).collect();
        let labels: Vec<Label> = order.iter().map(|&i| a.row_labels()[i]).collect();
        let b = AbundanceMatrix::from_rows(&rows)
            .unwrap()
            .with_row_labels(labels)
            .unwrap();
        let ta = seriate(&a, &opts).map_err(|e| e.to_string())?.tree;
        let tb = seriate(&b, &opts).map_err(|e| e.to_string())?.tree;
        ensure(frontier_set(&ta) == frontier_set(&tb), || {
            format!("{ta:?} vs {tb:?} under {order:?}")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let checks: [Criterion; 14] = [
        (
            "1",
            "P(P(1,2,3),Q(4,5,6)) frontiers equal the 24 listed orderings",
            criterion_1,
        ),
        (
            "2",
            "binarized similarities equal the reference matrices",
            criterion_2,
        ),
        (
            "3",
            "actors tree, its 4 block orderings and the listed ordering",
            criterion_3,
        ),
        (
            "4",
            "b2: Q root, [2,3,4,1] admissible, count 2",
            criterion_4,
        ),
        (
            "5",
            "b4: P root, [1,3,2,4] admissible, leaf 1 under the root",
            criterion_5,
        ),
        (
            "6",
            "b5: the 24 listed orderings, ill-posed {2,3,4}, count 24",
            criterion_6,
        ),
        ("7", "b6: [2,1,3,4,5] admissible", criterion_7),
        (
            "8",
            "b3: double Fiedler value 4; P(1,4,Q(2,3)) vs the listed 12",
            criterion_8,
        ),
        ("9", "observers run", || {
            criterion_9().map(|note| println!("      {note}"))
        }),
        (
            "10a",
            "count = |enumeration| and reversal closure, 500 trees",
            criterion_10a,
        ),
        (
            "10b",
            "membership agrees with enumeration, |U| <= 6",
            criterion_10b,
        ),
        (
            "10c",
            "eigen residuals and Laplacian row sums, 200 matrices",
            criterion_10c,
        ),
        (
            "10d",
            "Robinson order recovered, 100 instances",
            criterion_10d,
        ),
        (
            "10e",
            "label-permutation equivariance, 100 instances",
            criterion_10e,
        ),
    ];
    let mut failed = 0;
    for (id, desc, check) in &checks {
        match check() {
            Ok(()) => println!("PASS {id:>3}  {desc}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id:>3}  {desc}\n      {why}");
            }
        }
    }
    println!("{failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
