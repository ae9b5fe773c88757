//! Integer lattice toolkit. Ends with the box transversal of ℤ²/(ℤa ⊕ ℤb).

use tgwa::lattice::{box_reps, hnf, intersect, skew_normal_form, IntMatrix, Lattice};
use tgwa::Result;

fn main() -> Result<()> {
    let l = hnf(&IntMatrix::from_i64(&[vec![4, 6, 2], vec![2, 3, 5], vec![6, 9, 7]], 3));
    println!("HNF basis: {:?}", l.rows_i64());

    let a = Lattice::from_rows(&[vec![2, 0], vec![0, 3]], 2);
    let b = Lattice::from_rows(&[vec![3, 1], vec![0, 2]], 2);
    println!("intersection: {:?}", intersect(&a, &b).rows_i64());

    let theta = IntMatrix::from_i64(&[vec![0, 4, 6, 0], vec![-4, 0, 2, 8], vec![-6, -2, 0, 2], vec![0, -8, -2, 0]], 4);
    let snf = skew_normal_form(&theta)?;
    println!("skew invariants {:?}, free rank {}", snf.thetas, snf.laurent_rank);
    println!("UᵀΘU = {:?}", snf.u.transpose().mul(&theta).mul(&snf.u).to_i64());

    let reps = box_reps((2, -2), (3, 2))?;
    println!("box for a=(2,-2), b=(3,2): d1={} d2={} s={}", reps.d1, reps.d2, reps.s);
    println!("(7, 5) reduces to {:?}", reps.reduce((7, 5)));
    Ok(())
}
