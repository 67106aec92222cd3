use std::process::ExitCode;

use arsub_core::accept;

fn main() -> ExitCode {
    let reports = accept::run_all();
    for r in &reports {
        println!("{}", r);
    }
    let failed = reports.iter().filter(|r| !r.pass()).count();
    println!("acceptance: {} of {} criteria pass", reports.len() - failed, reports.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
