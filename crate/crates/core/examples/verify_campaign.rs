//! A reduced campaign over every inequality suite, with the per-suite summary
//! and the JSON report written to the temp directory.

use clarkson_lab::campaign::{run_verify, CampaignConfig, Outcome};

fn main() -> clarkson_lab::Result<()> {
    let config = CampaignConfig {
        dims: vec![1, 2, 4],
        n_values: vec![2, 3],
        trials: 1,
        output: Some(std::env::temp_dir().join("verify_campaign.json")),
        ..CampaignConfig::full_preset(2024)
    };
    let report = run_verify(&config)?;
    report.summary_lines().iter().for_each(|l| println!("{l}"));
    println!("config hash {}", report.meta.config_hash);
    println!("exit code would be {}", report.exit_code());
    Ok(())
}
