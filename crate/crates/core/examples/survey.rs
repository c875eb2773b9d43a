//! A small exhaustive survey and its deterministic report digest.

use polybinom::{cmd_survey, SurveyConfig, SurveyKind};

fn main() -> polybinom::Result<()> {
    for kind in [SurveyKind::Graphs, SurveyKind::Posets, SurveyKind::Flows] {
        let report = cmd_survey(&SurveyConfig::new(kind, 5))?;
        let t = &report.totals;
        println!(
            "{kind:?}: {} instances, {} passed, {} skipped {:?}, {} counterexamples",
            t.instances,
            t.passed,
            t.skipped,
            t.skipped_by_reason,
            report.counterexamples.len()
        );
        println!("  digest {}", report.digest());
    }
    Ok(())
}
