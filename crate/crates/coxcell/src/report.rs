//! The verification dossier: every check for every lattice up to a rank.

use rayon::prelude::*;
use serde::Serialize;

use coxcell_core::coxeter::{Family, LatticeSpec, Variant};

use crate::checks::{lattice_checks, CheckResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dossier {
    pub max_rank: usize,
    pub tolerance: f64,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckResult>,
}

impl Dossier {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// `A_n`, `A_n*`, `D_n`, `D_n*` for `n = 1..=max_rank`, in that order.
pub fn lattices_up_to(max_rank: usize) -> Vec<LatticeSpec> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        for family in [Family::A, Family::D] {
            for variant in [Variant::Root, Variant::Weight] {
                if let Ok(spec) = LatticeSpec::new(family, n, variant) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// Lattices are checked in parallel and merged in order, so the dossier is
/// byte-identical across runs and thread counts.
pub fn report_all(max_rank: usize, tolerance: f64) -> Dossier {
    let checks: Vec<CheckResult> = lattices_up_to(max_rank)
        .par_iter()
        .map(|spec| lattice_checks(spec, tolerance))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    Dossier {
        max_rank,
        tolerance,
        total: checks.len(),
        passed,
        failed: checks.len() - passed,
        checks,
    }
}
