//! Dispatch of single-target experiments.

use num_bigint::BigUint;
use num_traits::One;

use crate::bigmath::{big_ratio, ln_big, pow2};
use crate::error::{Result, ShiftError};
use crate::grids::{
    count_blocks_2d, fr_estimate, indep_witness_2d, is_indep_2d, max_symbol_count, GridPositionSet,
};
use crate::trees::TreeGeometry;
use crate::treeshifts::{
    bip_search, count_patterns, count_patterns_upto, is_indep_tree, sink_lift, surface_entropy_est,
    tree_density, EvenLevels, TreeBase, TreeShiftSpec, VertexSource, WholeTree,
};
use crate::words::{count_blocks_1d, entropy_est_1d};

use super::config::{DensitySet, ExperimentConfig, Task};
use super::reproduce::reproduce;
use super::report::{Report, Row, ValueKind};

/// Runs one experiment. Module errors are returned unchanged; failed
/// invariants are reported as failed assertions.
pub fn run_config(cfg: &ExperimentConfig) -> Result<Report> {
    match &cfg.task {
        Task::Entropy1D { shift, n } => {
            let mut report = Report::new(cfg, "entropy1d");
            if *n == 0 {
                return Err(ShiftError::Domain("n must be >= 1".into()));
            }
            let counts: Vec<BigUint> = (0..=*n).map(|m| count_blocks_1d(shift, m)).collect();
            for m in 1..=*n {
                let e = entropy_est_1d(shift, m)?;
                report.rows.push(Row::new(m, counts[m].clone(), e.raw));
            }
            let e = entropy_est_1d(shift, *n)?;
            report.record("fekete_upper", crate::numfmt::round12(e.fekete_upper));
            let sub = (1..=*n).all(|a| (1..=*n - a).all(|b| counts[a + b] <= &counts[a] * &counts[b]));
            report.check(
                "submultiplicative",
                "words: |B_{m+k}| <= |B_m| |B_k|",
                sub,
                format!("checked all m + k <= {n}"),
            );
            report.check(
                "fekete_below_raw",
                "words: fekete_upper <= raw",
                e.fekete_upper <= e.raw + 1e-12,
                format!("{} <= {}", e.fekete_upper, e.raw),
            );
            Ok(report)
        }
        Task::Entropy2D { shift, windows } => {
            let mut report = Report::new(cfg, "entropy2d");
            let mut nonempty = true;
            for &[k1, k2] in windows {
                let count = count_blocks_2d(shift, k1, k2)?;
                nonempty &= count >= BigUint::one();
                let raw = ln_big(&count) / (k1 * k2) as f64;
                report.rows.push(Row::new(k1 * k2, count, raw).labeled(format!("{k1}x{k2}")));
            }
            report.check(
                "language_nonempty",
                "grids: B_{k1,k2} nonempty for a nonempty shift",
                nonempty,
                format!("{} windows", windows.len()),
            );
            Ok(report)
        }
        Task::Fr { shift, symbol, kmax } => {
            let mut report = Report::new(cfg, "fr");
            let estimate = fr_estimate(shift, *symbol, *kmax)?;
            let mut below = true;
            for k in 1..=*kmax {
                let m = max_symbol_count(shift, k, k, *symbol)?;
                let ratio = m as f64 / (k * k) as f64;
                below &= estimate <= num_rational::Rational64::new(m as i64, (k * k) as i64);
                report.rows.push(Row::new(k, BigUint::from(m), ratio));
            }
            report.record("fr_estimate", estimate.to_string());
            report.check(
                "estimate_is_infimum",
                "grids: fr_estimate <= M_{k,k}/k^2 for every k",
                below,
                format!("estimate {estimate}"),
            );
            Ok(report)
        }
        Task::Indep2D { shift, windows } => {
            let mut report = Report::new(cfg, "indep2d");
            let mut witnesses = Vec::new();
            let mut ok = true;
            for &[k1, k2] in windows {
                let count = count_blocks_2d(shift, k1, k2)?;
                match indep_witness_2d(shift, k1, k2) {
                    Ok(w) => {
                        let set = GridPositionSet::Explicit(w.j.clone());
                        ok &= is_indep_2d(shift, &set, k1, k2)? && count >= pow2(w.j.len());
                        report.rows.push(Row::new(k1 * k2, count, w.k as f64).labeled(format!("{k1}x{k2}")));
                        witnesses.push(serde_json::json!({"window": [k1, k2], "k": w.k, "set": set}));
                    }
                    Err(ShiftError::NoWitness) => {
                        report.rows.push(Row::new(k1 * k2, count, 0.0).labeled(format!("{k1}x{k2}")));
                        witnesses.push(serde_json::json!({"window": [k1, k2], "k": 0, "set": null}));
                    }
                    Err(e) => return Err(e),
                }
            }
            report.record("witnesses", witnesses);
            report.check(
                "witnesses_independent",
                "grids: witness J is independent and |B_{k1,k2}| >= 2^|J|",
                ok,
                format!("{} windows", windows.len()),
            );
            Ok(report)
        }
        Task::TreeEntropy { shift, n } => {
            let mut report = Report::new(cfg, "tree-entropy");
            let counts = count_patterns_upto(shift, *n);
            let geometry = shift.geometry();
            for m in 1..=*n {
                let raw = ln_big(&counts[m]) / big_ratio(&geometry.delta_size(m), &BigUint::one());
                report.rows.push(Row::new(m, counts[m].clone(), raw));
            }
            let surface_ok = (1..=(*n).min(8)).try_fold(true, |acc, m| {
                Ok::<_, ShiftError>(acc && surface_entropy_est(shift, m)?.count <= counts[m])
            })?;
            report.check(
                "surface_below_volume",
                "treeshifts: surface count <= count_patterns",
                surface_ok,
                format!("depths 1..={}", (*n).min(8)),
            );
            Ok(report)
        }
        Task::Surface { shift, n } => {
            let mut report = Report::new(cfg, "surface");
            let mut ok = true;
            for m in 1..=*n {
                let s = surface_entropy_est(shift, m)?;
                ok &= s.count <= count_patterns(shift, m);
                report.rows.push(Row::new(m, s.count, s.raw));
            }
            report.check(
                "surface_below_volume",
                "treeshifts: surface count <= count_patterns",
                ok,
                format!("depths 1..={n}"),
            );
            Ok(report)
        }
        Task::Density { tree, set, n } => {
            let mut report = Report::new(cfg, "density");
            report.value_kind = ValueKind::Ratio;
            let geometry = TreeGeometry::new(tree.clone());
            let lifted;
            let source: &dyn VertexSource = match set {
                DensitySet::Whole => &WholeTree,
                DensitySet::EvenLevels => &EvenLevels,
                DensitySet::Vertices(v) => v,
                DensitySet::SinkLift { base, positions } => {
                    let spec = TreeShiftSpec::new(tree.clone(), TreeBase::Shift(base.clone()))?;
                    lifted = sink_lift(&spec, positions)?;
                    &lifted
                }
            };
            if *n == 0 {
                return Err(ShiftError::Domain("n must be >= 1".into()));
            }
            let depths: Vec<usize> = (1..=*n).collect();
            let d = tree_density(source, &geometry, &depths)?;
            let mut inside = BigUint::from(0u32);
            let mut level = 0;
            for (&m, &ratio) in depths.iter().zip(&d.ratios) {
                while level <= m {
                    inside += source.level_count(&geometry, level)?;
                    level += 1;
                }
                report.rows.push(Row::new(m, inside.clone(), ratio));
            }
            report.record("upper", crate::numfmt::round12(d.upper));
            report.record("lower", crate::numfmt::round12(d.lower));
            report.check(
                "ratios_in_unit_interval",
                "treeshifts: 0 <= |S ∩ Δ_n| / |Δ_n| <= 1",
                d.ratios.iter().all(|r| (0.0..=1.0).contains(r)),
                format!("depths 1..={n}"),
            );
            Ok(report)
        }
        Task::Bip { shift, l, n } => {
            let mut report = Report::new(cfg, "bip");
            report.value_kind = ValueKind::Ratio;
            let mut ok = true;
            let mut found = Vec::new();
            for m in 1..=*n {
                let search = bip_search(shift, *l, m)?;
                let size = search.witness.as_ref().map_or(0, |w| w.vertices.len());
                let ratio = search.witness.as_ref().map_or(0.0, |w| w.ratio);
                if let Some(w) = &search.witness {
                    ok &= is_indep_tree(shift, &w.vertices, m)? && count_patterns(shift, m) >= pow2(size);
                }
                report.rows.push(Row::new(m, BigUint::from(size), ratio));
                found.push(search);
            }
            report.record("searches", found);
            report.check(
                "witness_lower_bound",
                "treeshifts: S_n independent and count_patterns(n) >= 2^|S_n|",
                ok,
                format!("depths 1..={n}"),
            );
            Ok(report)
        }
        Task::Reproduce { theorem, depth } => reproduce(*theorem, *depth, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Report {
        run_config(&ExperimentConfig::from_json(text, "inline").unwrap()).unwrap()
    }

    #[test]
    fn golden_mean_row() {
        let r = run(r#"{"target":"entropy1d","shift":{"alphabet":2,"kind":"forbidden","forbidden":["11"]},"n":3}"#);
        let last = r.rows.last().unwrap();
        assert_eq!((last.n, last.count.clone()), (3, BigUint::from(5u32)));
        assert!((last.value - 0.5365).abs() < 1e-4);
        assert!(r.passed);
    }

    #[test]
    fn full_shift_row() {
        let r = run(r#"{"target":"entropy1d","shift":{"alphabet":2,"kind":"full"},"n":5}"#);
        let last = r.rows.last().unwrap();
        assert_eq!(last.count, BigUint::from(32u32));
        assert!((last.value - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn tree_entropy_row() {
        let r = run(r#"{"target":"tree-entropy","shift":{"tree":{"d":2,"rows":["11","11"]},"matrix":["11","01"]},"n":3}"#);
        let last = r.rows.last().unwrap();
        assert_eq!(last.count, BigUint::from(677u32));
        assert!((last.value - 0.4345).abs() < 1e-4);
        assert!(r.passed);
    }

    #[test]
    fn other_targets() {
        let hs = r#"{"alphabet":2,"forbidden":[{"dims":[1,2],"cells":"11"},{"dims":[2,1],"cells":"11"}]}"#;
        let r = run(&format!(r#"{{"target":"entropy2d","shift":{hs},"windows":[[2,2],[5,5]]}}"#));
        assert_eq!(r.rows[1].count, BigUint::from(55447u32));
        let r = run(&format!(r#"{{"target":"fr","shift":{hs},"symbol":1,"kmax":4}}"#));
        assert_eq!(r.records["fr_estimate"], "1/2");
        let r = run(&format!(r#"{{"target":"indep2d","shift":{hs},"windows":[[2,2]]}}"#));
        assert!(r.passed);
        let r = run(r#"{"target":"density","tree":{"d":2,"rows":["11","11"]},"set":"even_levels","n":6}"#);
        assert_eq!(r.value_kind, ValueKind::Ratio);
        assert!(r.to_csv().unwrap().starts_with("n,count,ratio\n"));
        let r = run(r#"{"target":"bip","shift":{"tree":{"d":2,"rows":["11","11"]},"matrix":["11","01"]},"l":1,"n":3}"#);
        assert!(r.passed);
        assert_eq!(r.rows[2].count, BigUint::from(8u32));
        let r = run(r#"{"target":"surface","shift":{"tree":{"d":2,"rows":["11","11"]},"matrix":["11","01"]},"n":2}"#);
        assert_eq!(r.rows[1].count, BigUint::from(16u32));
    }

    #[test]
    fn deterministic_json() {
        let text = r#"{"target":"tree-entropy","shift":{"tree":{"d":2,"rows":["11","01"]},"base":{"alphabet":2,"kind":"forbidden","forbidden":["11"]}},"n":12}"#;
        assert_eq!(run(text).to_json(), run(text).to_json());
    }
}
