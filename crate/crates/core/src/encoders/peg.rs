use super::{EncodeError, EncodedProblem, ProblemLayout, FEASIBILITY_TOLERANCE};
use crate::models::{HoboModel, Model};
use crate::poly::Polynomial;
use crate::problems::{PegInstance, PegLayout, XSlot};

fn occupancy(layout: &PegLayout, cell: usize, t: usize) -> Polynomial {
    match layout.x(cell, t) {
        XSlot::Fixed(v) => Polynomial::constant(v as f64),
        XSlot::Var(i) => Polynomial::var(i),
    }
}

/// HOBO trajectory model `C_q + C_c + C_a + C_m` over steps `0..M-1`, with
/// the first and last occupancy substituted by the start and goal boards.
///
/// * `C_q`: step `t` holds `M - 1 - t` balls.
/// * `C_c`: exactly `M - 3` cells keep their state between steps.
/// * `C_a`: one action per move step.
/// * `C_m`: an active jump needs source and jumped full and target empty
///   before, and the reverse after.
pub fn encode_peg(inst: &PegInstance) -> Result<EncodedProblem, EncodeError> {
    inst.validate()?;
    let layout = PegLayout::new(inst);
    let m = layout.num_cells();
    let steps = layout.steps();
    let mut total = Polynomial::zero();

    for t in 0..steps {
        let balls: Polynomial = (0..m).map(|c| occupancy(&layout, c, t)).sum();
        total = total + (Polynomial::constant((m - 1 - t) as f64) - balls).square();
    }
    for t in 1..steps {
        let same: Polynomial = (0..m)
            .map(|c| {
                let (now, before) = (occupancy(&layout, c, t), occupancy(&layout, c, t - 1));
                &now * &before + (Polynomial::constant(1.0) - now) * (Polynomial::constant(1.0) - before)
            })
            .sum();
        total = total + (Polynomial::constant(m as f64 - 3.0) - same).square();
    }
    for t in 0..steps - 1 {
        let acts: Polynomial = layout
            .actions()
            .iter()
            .filter(|a| a.t == t)
            .map(|a| Polynomial::var(a.var))
            .sum();
        total = total + (Polynomial::constant(1.0) - acts).square();
    }
    // (P - 1)^2 = 1 - P for a product P of binaries
    let one = Polynomial::constant(1.0);
    for a in layout.actions() {
        let x = |cell, t| occupancy(&layout, cell, t);
        let before = x(a.source, a.t) * x(a.jumped, a.t) * (one.clone() - x(a.target, a.t));
        let after = (one.clone() - x(a.source, a.t + 1)) * (one.clone() - x(a.jumped, a.t + 1)) * x(a.target, a.t + 1);
        total = total + Polynomial::var(a.var) * ((one.clone() - before) + (one.clone() - after));
    }

    let mut model = HoboModel::new(layout.num_vars());
    total.add_to(&mut model)?;
    Ok(EncodedProblem {
        model: Model::Hobo(model),
        layout: ProblemLayout::Peg { instance: inst.clone() },
        feasibility_threshold: Some(FEASIBILITY_TOLERANCE),
        variable_names: layout.variable_names(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoders::testing::{all_assignments, feasible};
    use crate::problems::{DirectionCode, DomainSolution, PegMove, PegSolution};

    #[test]
    fn line_of_three() {
        let inst = PegInstance::rectangle(1, 3, (0, 2)).unwrap();
        let enc = encode_peg(&inst).unwrap();
        let layout = PegLayout::new(&inst);
        let right = DirectionCode::new(0, 2).unwrap();
        let mut x = vec![0; enc.model.num_vars()];
        x[layout.find_action(0, 0, right).unwrap().var] = 1;
        assert_eq!(enc.model.cost(&x), 0.0);
        for k in 0..x.len() {
            let mut y = x.clone();
            y[k] ^= 1;
            assert!(enc.model.cost(&y) >= 1.0);
        }
        assert_eq!(feasible(&enc), vec![x.clone()]);
        assert_eq!(
            enc.decode(&x).unwrap(),
            DomainSolution::Peg(PegSolution {
                moves: vec![PegMove { from: (0, 0), code: right }]
            })
        );
    }

    #[test]
    fn order_is_at_most_seven() {
        let inst = PegInstance::rectangle(2, 3, (0, 0)).unwrap();
        let Model::Hobo(model) = encode_peg(&inst).unwrap().model else {
            panic!("peg encodes to HOBO");
        };
        assert!(model.max_order() <= 7);
        assert_eq!(model.max_order(), 4);
    }

    #[test]
    fn costs_are_nonnegative_integers() {
        let inst = PegInstance::rectangle(1, 4, (0, 1)).unwrap();
        let enc = encode_peg(&inst).unwrap();
        for x in all_assignments(&enc.model.dims()) {
            let c = enc.model.cost(&x);
            assert!(c >= 0.0 && c.fract() == 0.0, "{x:?} -> {c}");
        }
    }
}
