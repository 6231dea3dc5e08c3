use clap::Args;
use passfft::{build_plan, count_operations};

use crate::common::CliError;

#[derive(Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub width: usize,

    #[arg(long)]
    pub height: usize,
}

/// Prints one `index,axis,kind,stage` line per pass, then the operation
/// count.
pub fn run(args: &PlanArgs) -> Result<(), CliError> {
    let plan = build_plan::<f32>(args.width, args.height).map_err(CliError::engine)?;
    for (index, pass) in plan.passes().iter().enumerate() {
        let stage = pass
            .stage()
            .map(|s| s.to_string())
            .unwrap_or_else(|| "-".to_string());
        println!("{index},{},{},{stage}", pass.axis(), pass.kind_label());
    }
    let ops = count_operations(args.width, args.height).map_err(CliError::engine)?;
    println!("operations: {ops}");
    Ok(())
}
