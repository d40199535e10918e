//! Survival envelopes from a single survival value: the IFRA bound
//! S(t)^(x/t) and the log-scale envelope u^(log S(v) / log v).
//!
//! cargo run --example tail_bounds

use heavytail::tail_bounds::{
    cure_split, ifra_check, ifra_tail_bound, phi_hazard_rate, phi_ifra_bound, tail_exponent_bound, ExpPhi,
    SurvivalCurve,
};

fn main() -> heavytail::Result<()> {
    let s = |x: f64| (-x * x).exp();
    println!("Weibull(2), t = 1: x, bound, truth");
    for x in [1.0, 1.5, 2.0, 3.0] {
        println!("  {x:<4} {:.3e} {:.3e}", ifra_tail_bound(s(1.0), 1.0, x)?, s(x));
    }

    let grid: Vec<f64> = (0..=400).map(|i| (i as f64 * 0.015).exp()).collect();
    let pareto = SurvivalCurve::from_fn(grid.clone(), |x| x.powf(-1.5))?;
    let h = phi_hazard_rate(&pareto, &ExpPhi)?;
    println!(
        "\nPareto(1.5): IFRA {}  class {:?}",
        ifra_check(&pareto).member,
        h.classify()
    );
    for u in [5.0, 50.0, 500.0] {
        println!(
            "  u = {u:<5} envelope from v = 2: {:.4e}  truth {:.4e}",
            phi_ifra_bound(2f64.powf(-1.5), 2.0, u, &ExpPhi)?,
            u.powf(-1.5)
        );
    }
    let beta = tail_exponent_bound(0.01, 10.0)?;
    println!("S(10) = 0.01 certifies S(u) <= u^-{:.2}", beta.beta);

    let times: Vec<f64> = (1..=50).map(|i| i as f64 * 0.1).collect();
    let cured = SurvivalCurve::from_fn(times, |t| 0.2 + 0.8 * (-t).exp())?;
    let proper = cure_split(&cured, 0.2)?;
    println!(
        "\ncure mass 0.2 removed: S(1) = {:.6}, S_o(1) = {:.6} (e^-1 = {:.6})",
        cured.values()[9],
        proper.values()[9],
        (-1f64).exp()
    );
    Ok(())
}
