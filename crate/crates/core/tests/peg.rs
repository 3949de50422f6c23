use std::collections::BTreeSet;

use qudo_core::encoders::encode_peg;
use qudo_core::problems::{DirectionCode, PegInstance, PegMove};
use qudo_core::validators::{trajectory_from_moves, validate_peg};

/// Every full-length sequence of legal jumps, by depth-first replay.
fn legal_games(inst: &PegInstance) -> Vec<Vec<PegMove>> {
    let cells: BTreeSet<_> = inst.cells.iter().copied().collect();
    let balls: BTreeSet<_> = cells.iter().copied().filter(|&c| c != inst.empty).collect();
    let mut out = Vec::new();
    let mut path = Vec::new();
    dfs(&cells, balls, inst.cells.len() - 2, &mut path, &mut out);
    out
}

fn dfs(
    cells: &BTreeSet<(i64, i64)>,
    balls: BTreeSet<(i64, i64)>,
    left: usize,
    path: &mut Vec<PegMove>,
    out: &mut Vec<Vec<PegMove>>,
) {
    if left == 0 {
        out.push(path.clone());
        return;
    }
    for &from in &balls {
        for code in DirectionCode::ALL {
            let (over, onto) = code.jump(from);
            if balls.contains(&over) && cells.contains(&onto) && !balls.contains(&onto) {
                let mut next = balls.clone();
                next.remove(&from);
                next.remove(&over);
                next.insert(onto);
                path.push(PegMove { from, code });
                dfs(cells, next, left - 1, path, out);
                path.pop();
            }
        }
    }
}

fn boards() -> Vec<PegInstance> {
    let mut out = Vec::new();
    for cols in 3..=6 {
        for e in 0..cols {
            out.push(PegInstance::rectangle(1, cols, (0, e)).unwrap());
        }
    }
    for (r, c) in [(2, 3), (3, 2)] {
        for er in 0..r {
            for ec in 0..c {
                out.push(PegInstance::rectangle(r, c, (er, ec)).unwrap());
            }
        }
    }
    // an L of five cells
    let l = vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)];
    for &e in &l {
        out.push(PegInstance::new(l.clone(), e).unwrap());
    }
    out
}

#[test]
fn solved_games_have_zero_cost_and_perturbations_cost_at_least_one() {
    let mut solved = 0;
    for inst in boards() {
        let enc = encode_peg(&inst).unwrap();
        for game in legal_games(&inst) {
            if !validate_peg(&inst, &game) {
                continue;
            }
            solved += 1;
            let x = trajectory_from_moves(&inst, &game).unwrap().into_inner();
            assert_eq!(enc.model.cost(&x), 0.0, "{inst:?} {game:?}");
            let mut y = x.clone();
            for i in 0..y.len() {
                y[i] ^= 1;
                assert!(enc.model.cost(&y) >= 1.0, "flip {i} on {inst:?}");
                y[i] ^= 1;
            }
            let qudo_core::problems::DomainSolution::Peg(back) = enc.decode(&x).unwrap() else {
                unreachable!()
            };
            assert_eq!(back.moves, game);
        }
    }
    // 1x3 from either end, 1x4, 2x3 and more have solutions
    assert!(solved >= 4, "only {solved} solved games");
}

#[test]
fn unsolvable_board_has_no_zero_cost_trajectory_of_legal_moves() {
    // middle-empty 1x3: both jumps land on an end cell, never the middle
    let inst = PegInstance::rectangle(1, 3, (0, 1)).unwrap();
    assert!(legal_games(&inst).iter().all(|g| !validate_peg(&inst, g)));
    let enc = encode_peg(&inst).unwrap();
    let n = enc.model.num_vars();
    for bits in 0..1u32 << n {
        let y: Vec<usize> = (0..n).map(|k| ((bits >> k) & 1) as usize).collect();
        assert!(enc.model.cost(&y) >= 1.0);
    }
}
