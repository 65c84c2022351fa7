//! Named representatives of every isomorphism class of groups of order ≤ 16.

use crate::error::{Error, Result};
use crate::group::{
    abelian, alt, cyclic, dicyclic, dihedral, direct, semidirect_product, CayleyGroup,
};

fn z8_twist(mult: usize) -> CayleyGroup {
    // Z/8 ⋊ Z/2 where the involution acts by x ↦ mult·x.
    let map: Vec<usize> = (0..8).map(|x| (mult * x) % 8).collect();
    semidirect_product(&cyclic(8), &cyclic(2), &[(0..8).collect(), map])
        .expect("multiplication by an odd unit is an automorphism")
}

fn z4_rtimes_z4() -> CayleyGroup {
    let neg: Vec<usize> = (0..4).map(|x| (4 - x) % 4).collect();
    let id: Vec<usize> = (0..4).collect();
    let act = vec![id.clone(), neg.clone(), id, neg];
    semidirect_product(&cyclic(4), &cyclic(4), &act).expect("inversion squares to identity")
}

fn klein_rtimes_z4() -> CayleyGroup {
    // generator of Z/4 swaps the two Z/2 factors
    let swap = vec![0, 2, 1, 3];
    let id: Vec<usize> = (0..4).collect();
    let act = vec![id.clone(), swap.clone(), id, swap];
    semidirect_product(&abelian(&[2, 2]), &cyclic(4), &act).expect("swap is an automorphism")
}

fn pauli_group() -> CayleyGroup {
    // central product Z/4 ∘ D8: quotient of Z/4 × D8 by the diagonal central
    // involution (2, r²); (a, b) flattens to a·8 + b, and r² is element 2·2+0
    // of the dihedral table, so the identified pair is {0, 20}.
    let big = direct(&cyclic(4), &dihedral(4));
    let (q, _) = big.quotient(&[0, 20]).expect("central subgroup is normal");
    q
}

/// All groups of order `n` up to isomorphism, as (name, group) pairs in a
/// fixed documented order.  Supported for n ≤ 16.
pub fn groups_of_order(n: usize) -> Result<Vec<(String, CayleyGroup)>> {
    let named: Vec<(&str, CayleyGroup)> = match n {
        1 => vec![("Z1", cyclic(1))],
        2 => vec![("Z2", cyclic(2))],
        3 => vec![("Z3", cyclic(3))],
        5 => vec![("Z5", cyclic(5))],
        7 => vec![("Z7", cyclic(7))],
        11 => vec![("Z11", cyclic(11))],
        13 => vec![("Z13", cyclic(13))],
        4 => vec![("Z4", cyclic(4)), ("Z2xZ2", abelian(&[2, 2]))],
        6 => vec![("Z6", cyclic(6)), ("S3", dihedral(3))],
        8 => vec![
            ("Z8", cyclic(8)),
            ("Z4xZ2", abelian(&[4, 2])),
            ("Z2^3", abelian(&[2, 2, 2])),
            ("D8", dihedral(4)),
            ("Q8", dicyclic(2)),
        ],
        9 => vec![("Z9", cyclic(9)), ("Z3xZ3", abelian(&[3, 3]))],
        10 => vec![("Z10", cyclic(10)), ("D10", dihedral(5))],
        12 => vec![
            ("Z12", cyclic(12)),
            ("Z6xZ2", abelian(&[6, 2])),
            ("D12", dihedral(6)),
            ("Dic3", dicyclic(3)),
            ("A4", alt(4)),
        ],
        14 => vec![("Z14", cyclic(14)), ("D14", dihedral(7))],
        15 => vec![("Z15", cyclic(15))],
        16 => vec![
            ("Z16", cyclic(16)),
            ("Z8xZ2", abelian(&[8, 2])),
            ("Z4xZ4", abelian(&[4, 4])),
            ("Z4xZ2xZ2", abelian(&[4, 2, 2])),
            ("Z2^4", abelian(&[2, 2, 2, 2])),
            ("D16", dihedral(8)),
            ("Q16", dicyclic(4)),
            ("SD16", z8_twist(3)),
            ("M16", z8_twist(5)),
            ("D8xZ2", direct(&dihedral(4), &cyclic(2))),
            ("Q8xZ2", direct(&dicyclic(2), &cyclic(2))),
            ("Z4:Z4", z4_rtimes_z4()),
            ("(Z2xZ2):Z4", klein_rtimes_z4()),
            ("Pauli", pauli_group()),
        ],
        0 | 17.. => return Err(Error::UnsupportedOrder(n)),
    };
    Ok(named.into_iter().map(|(s, g)| (s.to_string(), g)).collect())
}
