//! K_δ(N, M) with every intermediate constant.

use wks_bounds::bounds::{k_bound, k_tilde, BoundInputs};

fn main() -> wks_bounds::Result<()> {
    let b = k_bound(&BoundInputs::new(vec![2], vec![0.0], vec![1.0], 2.0))?;
    println!("d=1 q=2 M=0 N=2: K = {:.12}", b.k_delta);
    println!("{}", serde_json::to_string_pretty(&b)?);

    let inputs = BoundInputs::with_worst_separation(vec![16, 32], vec![0.02, 0.03], 2.0);
    let b = k_bound(&inputs)?;
    println!("d=2 N=(16,32) M=(0.02,0.03): A_p = {:.6}, B_q = {:.6}, K = {:.6}", b.a_p, b.b_q, b.k_delta);

    let t = k_tilde(&[16, 32], 0.03, 0.94, 1.0, 2.0)?;
    println!("K~ with M~=0.03, delta in [0.94, 1]: {:.6}", t.k_delta);

    match k_bound(&BoundInputs::with_worst_separation(vec![8], vec![0.0], 1.0)) {
        Ok(_) => unreachable!(),
        Err(e) => println!("q = 1: {e}"),
    }
    Ok(())
}
