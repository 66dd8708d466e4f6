//! A small seeded campaign written as CSV to a temporary file.

use bohrkit::functionals::TheoremId;
use bohrkit::harness::{emit_report, render_report, run_campaign, CampaignConfig, ReportFormat};
use bohrkit::multidim::LtIndex;

fn main() -> bohrkit::Result<()> {
    let config = CampaignConfig {
        theorems: vec![
            TheoremId::ThmC,
            TheoremId::Thm32,
            TheoremId::Thm34,
            TheoremId::Thm31,
        ],
        pm: vec![[1, 0], [1, 1], [3, 1]],
        t_values: vec![LtIndex::Finite(2.0), LtIndex::Infinity],
        s_values: vec![1.0, 2.0],
        samples: 50,
        seed: 2024,
        ..Default::default()
    };
    let report = run_campaign(&config)?;
    print!("{}", render_report(&report, ReportFormat::Text)?);

    let path = std::env::temp_dir().join("bohrkit_campaign.csv");
    emit_report(&report, ReportFormat::Csv, &path)?;
    println!("wrote {} (all pass: {})", path.display(), report.passed());
    Ok(())
}
