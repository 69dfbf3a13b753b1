use super::formula::{Atom, Connective, Formula};

/// Number of distinct formulas of depth at most `depth` over `atoms` atoms
/// (atoms count as depth 1). Saturates at `u128::MAX`.
pub fn formula_count(atoms: usize, depth: usize) -> u128 {
    let mut n: u128 = 0;
    for d in 1..=depth {
        n = if d == 1 {
            atoms as u128
        } else {
            let binary = n
                .saturating_mul(n)
                .saturating_mul(Connective::ALL.len() as u128);
            (atoms as u128).saturating_add(n).saturating_add(binary)
        };
    }
    n
}

/// Every formula of depth at most `depth` over `atoms`, in a deterministic
/// order, shallowest first.
pub fn formulas_up_to_depth(atoms: &[Atom], depth: usize) -> Vec<Formula> {
    if depth == 0 {
        return Vec::new();
    }
    let leaves: Vec<Formula> = atoms.iter().cloned().map(Formula::Atom).collect();
    // `layers[d]` holds the formulas of depth exactly d + 1.
    let mut layers: Vec<Vec<Formula>> = vec![leaves];
    for _ in 1..depth {
        let below: Vec<&Formula> = layers.iter().flatten().collect();
        let top = layers.last().expect("non-empty");
        let mut next = Vec::new();
        for f in top {
            next.push(Formula::not(f.clone()));
        }
        for op in Connective::ALL {
            for l in &below {
                for r in &below {
                    // At least one child must sit on the previous layer.
                    if l.depth() == layers.len() || r.depth() == layers.len() {
                        next.push(op.apply((*l).clone(), (*r).clone()));
                    }
                }
            }
        }
        layers.push(next);
    }
    layers.into_iter().flatten().collect()
}
