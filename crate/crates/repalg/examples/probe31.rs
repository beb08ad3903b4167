use repalg::*;
use std::time::Instant;

fn main() {
    let path = std::env::args().nth(1).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let (q, r) = parse_quiver_json(&text).unwrap();
    let a: AlgRef<Q> = path_algebra(&q, &r).unwrap();
    let t0 = Instant::now();
    let (t2, bundle) = generator_thm31(&a, 400).unwrap();
    eprintln!("gen: {:?}, lambda dim {}, bundle {} summands, M dim {}", t0.elapsed(), t2.lambda.dim, bundle.summands.len(), bundle.summands.direct_sum().dim);
    let t0 = Instant::now();
    let r = repdim_bound(&t2.lambda, &bundle.summands, 1, 400).unwrap();
    eprintln!("repdim_bound in {:?}: bound {:?}, gldim {:?}, unresolved {}", t0.elapsed(), r.bound, r.end_gldim, r.unresolved.len());
}
