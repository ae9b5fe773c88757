//! Words in the quantized Weyl algebra reduced to Y⋯Y X⋯X · r(t), plus the
//! pairing a_g^* a_g at a symbolic point.

use tgwa::tgwa::{normalize, pair_at, qwa, reduce_word, star, Word};
use tgwa::{Result, Scalar};

fn main() -> Result<()> {
    let p = qwa(&[Scalar::var("q1"), Scalar::var("q2")], &[vec![Scalar::one(), Scalar::var("l12")]])?;
    let w = Word::parse("X1 Y2 X2 Y1 X1")?;
    let (reduced, r, c) = reduce_word(&w, &p);
    println!("{w} = {c} · {reduced} · ({r})");

    let cw = normalize(&w, &p)?;
    println!("normal form: degree {:?}, coefficient {}, r = {}", cw.degree, cw.coeff, cw.r_factor());
    println!("star: {}", star(&w));

    let alpha = [Scalar::var("a1"), Scalar::var("a2")];
    for g in [[1, 0], [0, 1], [2, -1]] {
        println!("a_g^* a_g at (a1, a2), g = {g:?}: {}", pair_at(&g, &alpha, &p)?);
    }
    Ok(())
}
