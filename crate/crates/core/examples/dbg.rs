use branchcuts_core::catalog::{Catalog, CutFunction};
use branchcuts_core::engine::{cut_support_polyline, semialgebraic_cuts, EngineConfig};
use branchcuts_core::expr::parse;
use branchcuts_core::poly::re_im_decompose;

const W: (f64, f64, f64, f64) = (-4.0, 4.0, -4.0, 4.0);

fn main() {
    let g = parse("3 + z - z^2 - 2*z^3").unwrap();
    let rb = re_im_decompose(&g).unwrap();
    println!("P = {}", rb.p.display("x", "y"));
    println!("Q = {}", rb.q.display("x", "y"));
    let d = Catalog::default().defining_cut(CutFunction::Ln);
    let cuts = semialgebraic_cuts(&g, &d, &EngineConfig::default()).unwrap();
    for c in &cuts {
        let pts = cut_support_polyline(&c.geometry, W, 65);
        println!("{}  [{} support pts, ends {:?} {:?}]", c.description(), pts.len(), pts.first(), pts.last());
    }
    // oracle scan on a coarse grid: print positive cells not near any support
    let n = 120usize;
    let q = rb.q.to_f64_terms();
    let p = rb.p.to_f64_terms();
    let ev = |t: &[(i32,i32,f64)], x: f64, y: f64| -> f64 { t.iter().map(|&(a,b,c)| c*x.powi(a)*y.powi(b)).sum() };
    let h = 8.0 / n as f64;
    let geoms: Vec<Vec<(f64,f64)>> = cuts.iter().map(|c| cut_support_polyline(&c.geometry, W, 2049)).collect();
    let mut missing = vec![];
    for i in 0..n {
        for j in 0..n {
            let (xa, ya) = (-4.0 + h*j as f64, -4.0 + h*i as f64);
            let (xb, yb) = (xa+h, ya+h);
            let corners = [(xa,ya),(xb,ya),(xa,yb),(xb,yb)];
            let qs: Vec<f64> = corners.iter().map(|&(x,y)| ev(&q,x,y)).collect();
            let cross = qs.iter().any(|&v| v == 0.0) || qs.iter().any(|&v| (v>0.0) != (qs[0]>0.0));
            if !cross { continue; }
            let (cx, cy) = (0.5*(xa+xb), 0.5*(ya+yb));
            if ev(&p, cx, cy) < 0.0 {
                let dmin = geoms.iter().map(|g| branchcuts_core::engine::dist_point_polyline((cx,cy), g)).fold(f64::INFINITY, f64::min);
                if dmin > 2.0*h { missing.push((cx, cy, dmin)); }
            }
        }
    }
    println!("missing-ish cells: {}", missing.len());
    for m in missing.iter().take(15) { println!("  ({:.3},{:.3}) d={:.3}", m.0, m.1, m.2); }
}
