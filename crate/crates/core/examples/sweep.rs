//! A whole scenario from a config string: sweep, CSV and verdicts.

use resconv::expcli::{csv_string, parse_scenario, run_sweep};

const SCENARIO: &str = r#"
name = "demo"
kind = "slnrc"
interval = [0, "pi"]
m = 60
ns = [1, 2, 4, 8]
seed = 3

[limit]
w = "1"
p = "1"
q = "x^2/(1+x^2)"

[member]
w = "1 + sin(x)/n"
p = "1"
q = "x^2/(1+x^2) + indicator(0, 1)/n"

[checks]
decreasing = ["nrc_i", "fcalc_lorentzian"]
slope = { nrc_i = [0.7, 1.3] }
"#;

fn main() -> resconv::Result<()> {
    let scenario = parse_scenario(SCENARIO)?;
    let result = run_sweep(&scenario, Some(1))?;
    print!("{}", csv_string(&result));
    println!();
    for v in &result.verdicts {
        println!("{}", v.line());
    }
    Ok(())
}
