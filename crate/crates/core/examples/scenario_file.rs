//! Loading a flat JSON scenario and the errors a bad file produces.

use covert_core::cli::{analyze_record, Experiment};
use covert_core::Scenario;

fn main() {
    let text = r#"{ "P_w": 50, "P_a": 2.0, "n": 150, "epsilon": 0.05 }"#;
    let scenario = Scenario::from_json_str(text).expect("valid scenario");
    println!("{}", scenario.to_json_string());

    let exp = Experiment {
        scenario,
        ..Experiment::default()
    };
    println!("{:#?}", analyze_record(&exp).expect("analysis runs"));

    for bad in [
        r#"{ "phi": 3 }"#,
        r#"{ "P_W": 100 }"#,
        r#"{ "n": 1 }"#,
        r#"{ "R": "fast" }"#,
    ] {
        println!("{bad:<20} -> {}", Scenario::from_json_str(bad).unwrap_err());
    }
}
