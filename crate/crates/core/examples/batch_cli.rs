// Driving the command surface from code: the same rows the binary
// prints, captured in memory.

use additive_powers::cli::main_with_args;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let store = std::env::temp_dir().join(format!("additive-powers-batch-{}.jsonl", std::process::id()));
    let store = store.to_string_lossy().into_owned();
    let commands: [&[&str]; 3] = [
        &["energy", "--set", "[0,1,3,7]"],
        &["--store", &store, "qk", "--k", "2", "--n", "4", "--pmax", "200", "--rmax", "200"],
        &["--store", &store, "verify"],
    ];
    for args in commands {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("additive-powers").chain(args.iter().copied());
        let code = main_with_args(argv, &mut out, &mut err);
        print!("{}", String::from_utf8(out)?);
        if code != 0 {
            return Err(String::from_utf8(err)?.into());
        }
    }
    std::fs::remove_file(&store)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
