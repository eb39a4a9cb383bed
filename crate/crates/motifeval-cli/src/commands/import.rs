//! `motifeval import-ucr`: convert tab-separated archive instances.

use crate::formats::{import_ucr_files, write_json};
use crate::{CliError, ImportUcrArgs};

pub fn run(args: &ImportUcrArgs) -> Result<(), CliError> {
    if args.inputs.is_empty() {
        return Err(CliError::input("no input files given"));
    }
    let dataset = import_ucr_files(&args.inputs, &args.name)?;
    let classes = dataset.classes.len();
    let instances: usize = dataset.classes.iter().map(|c| c.instances.len()).sum();
    write_json(&args.out, &dataset)?;
    println!(
        "imported {instances} instances in {classes} classes to {}",
        args.out.display()
    );
    Ok(())
}
