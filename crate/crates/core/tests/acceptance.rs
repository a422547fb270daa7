//! The ten acceptance criteria at their pinned tolerances. Prints one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use annulus::category::group::{cyclic_table, symmetric_table, GroupBackend};
use annulus::category::quantum::QuantumBackend;
use annulus::double::*;
use annulus::io::suites::{self, RunConfig};
use annulus::morita::*;
use annulus::numerics::gram_positivity;
use annulus::numerics::linalg::c;
use annulus::tube::*;

const EXACT: f64 = 1e-9;
const HOM: f64 = 1e-8;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn group(mul: Vec<Vec<usize>>) -> GroupBackend {
    GroupBackend::new(mul, None, 11).unwrap()
}

/// Characters of a test group with their class sizes, kept independent of the library.
struct CharTable {
    class_sizes: Vec<f64>,
    /// `chi[irrep][class]`, all real or given as (re, im).
    chi: Vec<Vec<(f64, f64)>>,
}

impl CharTable {
    fn cyclic(n: usize) -> Self {
        let chi = (0..n)
            .map(|k| {
                (0..n)
                    .map(|g| {
                        let t = 2.0 * std::f64::consts::PI * (k * g) as f64 / n as f64;
                        (t.cos(), t.sin())
                    })
                    .collect()
            })
            .collect();
        Self { class_sizes: vec![1.0; n], chi }
    }

    fn s3() -> Self {
        // classes: e, transpositions, 3-cycles
        let r = |v: [f64; 3]| v.iter().map(|&x| (x, 0.0)).collect();
        Self { class_sizes: vec![1.0, 3.0, 2.0], chi: vec![r([1.0, 1.0, 1.0]), r([1.0, -1.0, 1.0]), r([2.0, 0.0, -1.0])] }
    }

    fn fusion(&self) -> Vec<Vec<Vec<usize>>> {
        let order: f64 = self.class_sizes.iter().sum();
        let n = self.chi.len();
        let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (0..n)
                            .map(|k| {
                                let mut s = 0.0;
                                for (g, &size) in self.class_sizes.iter().enumerate() {
                                    let ck = (self.chi[k][g].0, -self.chi[k][g].1);
                                    s += size * mul(mul(self.chi[a][g], self.chi[b][g]), ck).0;
                                }
                                (s / order).round() as usize
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// `Σ_{i,j,s} Σ_k N_{sj}^k N_{is}^k`.
    fn tube_dim(&self) -> usize {
        let n = self.fusion();
        let r = n.len();
        let mut total = 0;
        for i in 0..r {
            for j in 0..r {
                for s in 0..r {
                    for k in 0..r {
                        total += n[s][j][k] * n[i][s][k];
                    }
                }
            }
        }
        total
    }
}

/// SU(2) fusion multiplicity on doubled spins.
fn su2(a: usize, b: usize, c: usize) -> usize {
    usize::from(c >= a.abs_diff(b) && c <= a + b && (a + b + c).is_multiple_of(2))
}

/// `Σ_X dim hom(X⊗k, k⊗X)` over the window.
fn fusion_paths(window2: usize, k: usize) -> usize {
    let mut total = 0;
    for x in 0..=window2 {
        for m in 0..=window2 + k {
            total += su2(x, k, m) * su2(k, x, m);
        }
    }
    total
}

fn tube_validity() -> Outcome {
    let start = Instant::now();
    for (name, mul) in [("Z2", cyclic_table(2)), ("Z3", cyclic_table(3)), ("S3", symmetric_table(3))] {
        let e = group(mul).engine().map_err(|x| x.to_string())?;
        let t = build_tube(&e).map_err(|x| x.to_string())?;
        let (assoc, inv) = (t.algebra.associativity_residual(), t.algebra.involution_residual());
        ensure!(assoc < EXACT, "{name}: associativity {assoc:e}");
        ensure!(inv < EXACT, "{name}: involution {inv:e}");
        let (pos, min) = gram_positivity(&t.trace, &t.algebra).map_err(|x| x.to_string())?;
        ensure!(pos && min > 0.0, "{name}: trace Gram minimum {min:e}");
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "runtime {secs:.1}s");
    Ok(())
}

fn dimension_oracle() -> Outcome {
    for (name, mul, chars, want) in [
        ("Z2", cyclic_table(2), CharTable::cyclic(2), 4),
        ("Z3", cyclic_table(3), CharTable::cyclic(3), 9),
        ("S3", symmetric_table(3), CharTable::s3(), 17),
    ] {
        let t = build_tube(&group(mul).engine().unwrap()).map_err(|x| x.to_string())?;
        let oracle = chars.tube_dim();
        ensure!(t.dim() == want && oracle == want, "{name}: tube {} oracle {oracle} expected {want}", t.dim());
    }
    Ok(())
}

fn double_isomorphism() -> Outcome {
    for (name, mul) in [("Z2", cyclic_table(2)), ("S3", symmetric_table(3))] {
        let g = group(mul);
        let e = g.engine().unwrap();
        let t = build_tube(&e).map_err(|x| x.to_string())?;
        let v = vee_anti(&e, &t).map_err(|x| x.to_string())?;
        let tg = build_tub_g(&e, &t).map_err(|x| x.to_string())?;
        let d = build_double(&g).map_err(|x| x.to_string())?;
        let iso = tube_to_double(&e, &t, &v, &tg, &d, g.identity()).map_err(|x| x.to_string())?;
        ensure!(iso.homomorphism_residual < HOM, "{name}: homomorphism {:e}", iso.homomorphism_residual);
        ensure!(iso.star_residual < HOM, "{name}: star {:e}", iso.star_residual);
        ensure!(iso.rank == d.dim() && tg.dim() == d.dim(), "{name}: rank {} of {}", iso.rank, d.dim());
        let n = g.order();
        ensure!(d.dim() == n * n, "{name}: double dim {}", d.dim());
    }
    Ok(())
}

fn full_corner() -> Outcome {
    let g = group(symmetric_table(3));
    let e = g.engine().unwrap();
    let t = build_tube(&e).map_err(|x| x.to_string())?;
    let tg = build_tub_g(&e, &t).map_err(|x| x.to_string())?;
    let r = verify_full_corner(&t, &tg);
    ensure!(r.local_unit_residual < EXACT, "local units {:e}", r.local_unit_residual);
    ensure!(r.isometry_residual < EXACT, "isometries {:e}", r.isometry_residual);
    ensure!(r.embedding_residual < EXACT, "embedding {:e}", r.embedding_residual);
    ensure!(r.corner_dim == 17 && t.dim() == 17, "corner {} tube {}", r.corner_dim, t.dim());
    Ok(())
}

fn block_counts() -> Outcome {
    let g = group(symmetric_table(3));
    let t = build_tube(&g.engine().unwrap()).map_err(|x| x.to_string())?;
    let d = decompose(&t, EXACT, 2).map_err(|x| x.to_string())?;
    let irr = double_irreps(&g, 2).map_err(|x| x.to_string())?;
    ensure!(d.blocks.len() == 8, "{} blocks", d.blocks.len());
    ensure!(irr.len() == 8, "{} double irreps", irr.len());
    let sq: usize = d.sorted_dims().iter().map(|x| x * x).sum();
    ensure!(sq == 17, "sum of squares {sq}");
    Ok(())
}

fn imprimitivity() -> Outcome {
    for (name, mul) in [("Z2", cyclic_table(2)), ("S3", symmetric_table(3))] {
        let m = build_morita(group(mul), &[0]).map_err(|x| x.to_string())?;
        let table = build_tube_2cat(&m).map_err(|x| x.to_string())?;
        let r = verify_imprimitivity(&m, &table).map_err(|x| x.to_string())?;
        ensure!(r.per_label.len() == m.bimodule_labels().len(), "{name}: labels covered {}", r.per_label.len());
        ensure!(r.worst() < EXACT, "{name}: completeness {:e}", r.worst());
        for (s, (rank, dim)) in r.spans.iter().enumerate() {
            ensure!(rank == dim, "{name}: grade {s}{s} spanned to rank {rank} of {dim}");
        }
    }
    Ok(())
}

fn morita_invariance() -> Outcome {
    let m = build_morita(group(symmetric_table(3)), &[0]).map_err(|x| x.to_string())?;
    let table = build_tube_2cat(&m).map_err(|x| x.to_string())?;
    let r = invariance_report(&m, &table, EXACT, 4).map_err(|x| x.to_string())?;
    let (b0, b1) = (r.blocks[0].len(), r.blocks[1].len());
    ensure!(b0 == 8 && b1 == 8, "block counts {b0} and {b1}");
    ensure!(r.fusion_ranks == [3, 6], "fusion ranks {:?}", r.fusion_ranks);
    Ok(())
}

fn regular_half_braiding() -> Outcome {
    let m = build_morita(group(cyclic_table(2)), &[0]).map_err(|x| x.to_string())?;
    let z = build_zreg(&m, m.bimodule_labels()[0]).map_err(|x| x.to_string())?;
    let r = zreg_report(&m, &z).map_err(|x| x.to_string())?;
    ensure!(r.unitarity < EXACT, "unitarity {:e}", r.unitarity);
    ensure!(r.naturality < EXACT, "naturality {:e}", r.naturality);
    ensure!(r.multiplicativity < EXACT, "multiplicativity {:e}", r.multiplicativity);
    let table = build_tube_2cat(&m).map_err(|x| x.to_string())?;
    let rep = zreg_representation(&m, &table, &z).map_err(|x| x.to_string())?;
    let (mult, star) = rep.star_rep_residuals(&table);
    ensure!(rep.dim > 0 && mult < EXACT && star < EXACT, "representation {mult:e} {star:e}");
    Ok(())
}

fn temperley_lieb() -> Outcome {
    let window2 = 6;
    let e = QuantumBackend::new(0.5, 12).and_then(|q| q.engine()).map_err(|x| x.to_string())?;
    let d = e.simple(1).qdim;
    ensure!((d - 2.5).abs() < EXACT, "spin-1/2 dimension {d}");
    let window: Vec<usize> = (0..=window2).collect();
    for k in [0, 1] {
        let corner = annular_corner(&e, &window, k, k).map_err(|x| x.to_string())?;
        let comm = corner.commutator_residual().ok_or("corner has no multiplication")?;
        ensure!(comm < EXACT, "p{k}/2 commutators {comm:e}");
        let oracle = fusion_paths(window2, k);
        ensure!(corner.window_dim() == oracle, "p{k}/2 dim {} oracle {oracle}", corner.window_dim());
    }
    ensure!(fusion_paths(4, 1) == 9, "spin-1/2 corner below spin 2 should have dimension 9");
    let half = annular_corner(&e, &window, 1, 1).map_err(|x| x.to_string())?;
    let tr = half.projection_trace().ok_or("corner has no unit")?;
    ensure!((tr - c(2.5)).norm() < EXACT, "trace of p1/2 {tr}");
    Ok(())
}

fn determinism() -> Outcome {
    let cfg = RunConfig { seed: 17, ..RunConfig::default() };
    let a = suites::selftest(&cfg).map_err(|x| x.to_string())?.to_json();
    let b = suites::selftest(&cfg).map_err(|x| x.to_string())?.to_json();
    ensure!(a == b, "selftest reports differ between runs");
    let t = build_tube(&group(symmetric_table(3)).engine().unwrap()).map_err(|x| x.to_string())?;
    let base = decompose(&t, EXACT, 0).map_err(|x| x.to_string())?.sorted_dims();
    for seed in 1..6 {
        let dims = decompose(&t, EXACT, seed).map_err(|x| x.to_string())?.sorted_dims();
        ensure!(dims == base, "seed {seed}: {dims:?} vs {base:?}");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 tube *-algebra validity", tube_validity),
        ("2 dimension oracle", dimension_oracle),
        ("3 tube to double isomorphism", double_isomorphism),
        ("4 full corner", full_corner),
        ("5 block counts", block_counts),
        ("6 imprimitivity", imprimitivity),
        ("7 Morita invariance", morita_invariance),
        ("8 regular half-braiding", regular_half_braiding),
        ("9 Temperley-Lieb corners", temperley_lieb),
        ("10 determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
