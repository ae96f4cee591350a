use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::semidirect_equals_regular;
use crate::io::ActionJson;

use super::{fuzz_instances, verify_decomposition, verify_disjointness_criterion, verify_main_theorem, DecompOptions, FuzzInstance, SizeCaps, TheoremReport, Verdict};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub id: usize,
    pub seed: u64,
    pub g_morphisms: usize,
    pub h_morphisms: usize,
    pub regular: bool,
    pub orbit_classes: usize,
    pub action: ActionJson,
    pub reports: Vec<TheoremReport>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub seed: u64,
    pub budget: usize,
    pub caps: SizeCaps,
    pub tally: Tally,
    pub instances: Vec<InstanceOutcome>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.tally.fail == 0
    }
}

/// Literal comparison of the semidirect tables over `H` and over `H_r`, as a report.
pub fn verify_regular_part_reduction(spec: &crate::action::ActionSpec, instance: &str) -> TheoremReport {
    let mut r = TheoremReport::new("regular-part reduction", instance);
    match semidirect_equals_regular(spec) {
        Ok((same, witness)) => {
            r.assert("semidirect over H equals over H_r", same, || witness.unwrap_or_default());
        }
        Err(e) => r.inapplicable(e.to_string()),
    }
    r.observe("h_morphisms", spec.h.morphism_count());
    r.observe("hr_morphisms", spec.regular_part().morphism_count());
    r
}

fn run_one(inst: &FuzzInstance) -> InstanceOutcome {
    let name = format!("fuzz#{}", inst.id);
    let spec = &inst.spec;
    let reports = vec![
        verify_regular_part_reduction(spec, &name),
        verify_disjointness_criterion(spec, &name),
        verify_main_theorem(spec, None, &name),
        verify_decomposition(spec, None, &name, DecompOptions::default()),
    ];
    InstanceOutcome {
        id: inst.id,
        seed: inst.seed,
        g_morphisms: spec.g.morphism_count(),
        h_morphisms: spec.h.morphism_count(),
        regular: spec.is_regular(),
        orbit_classes: spec.g.orbit_relation().len(),
        action: ActionJson::from_spec(spec),
        reports,
    }
}

/// Every theorem suite on `budget` fuzzed instances. Instances run in parallel; the
/// report is ordered by instance id, so it depends only on the arguments.
pub fn run_campaign(seed: u64, budget: usize, caps: SizeCaps) -> CampaignReport {
    let instances = fuzz_instances(seed, budget, caps);
    let mut outcomes: Vec<InstanceOutcome> = instances.par_iter().map(run_one).collect();
    outcomes.sort_by_key(|o| o.id);
    let mut tally = Tally::default();
    for r in outcomes.iter().flat_map(|o| &o.reports) {
        match r.verdict {
            Verdict::Pass => tally.pass += 1,
            Verdict::Fail => tally.fail += 1,
            Verdict::Inapplicable => tally.inapplicable += 1,
        }
    }
    CampaignReport {
        seed,
        budget,
        caps,
        tally,
        instances: outcomes,
    }
}
