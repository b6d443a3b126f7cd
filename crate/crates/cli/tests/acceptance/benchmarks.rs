use gmde::bench::make_suite;
use gmde::Objective;

pub fn criterion() -> Result<String, String> {
    let (mut functions, mut rotations) = (0, 0);
    let (mut worst_gap, mut worst_orth) = (0.0f64, 0.0f64);
    for (d, seed) in [(2, 11), (10, 12), (30, 2005), (50, 13)] {
        let suite = make_suite(d, seed).map_err(|e| e.to_string())?;
        for f in &suite {
            let x = f.optimum();
            if !f.bounds().contains(&x) {
                return Err(format!("{} (D={d}): optimum outside the box", f.name()));
            }
            let gap = (f.evaluate(&x) - f.bias()).abs();
            if !(gap <= 1e-8) {
                return Err(format!("{} (D={d}): f(x*) - bias = {gap:e}", f.name()));
            }
            worst_gap = worst_gap.max(gap);
            functions += 1;
            if let Some(r) = f.rotation() {
                let err = r.orthogonality_error();
                if !(err <= 1e-10) {
                    return Err(format!("{} (D={d}): orthogonality error {err:e}", f.name()));
                }
                worst_orth = worst_orth.max(err);
                rotations += 1;
            }
        }
    }
    Ok(format!(
        "{functions} functions at D in {{2, 10, 30, 50}}, worst certificate gap {worst_gap:.1e}; \
         {rotations} rotations, worst orthogonality error {worst_orth:.1e}"
    ))
}
