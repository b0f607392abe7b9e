//! Campaigns over parameter grids, engine cross-checking and certificates.

mod campaign;
mod certificate;

pub use campaign::{
    certificate_file_name, emit_certificates, hunt_ladders, run_hunt, run_threshold_table,
    sat_avoidance, summary_csv, Campaign, CampaignResult, Engine, Ladder, SatVerdict, Timing,
};
pub use certificate::{monochromatic_structure, Certificate, Evidence, Fingerprint, Verdict};
