use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").unwrap();
    let out = PathBuf::from(&crate_dir).join("include");
    std::fs::create_dir_all(&out).unwrap();
    let config = cbindgen::Config::from_root_or_default(&crate_dir);
    match cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .with_language(cbindgen::Language::C)
        .with_include_guard("YDOUBLE_H")
        .with_header("/* C interface of the ydouble verification engine. */")
        .generate()
    {
        Ok(bindings) => {
            bindings.write_to_file(out.join("ydouble.h"));
        }
        Err(e) => {
            // Header generation failing should not break the library build.
            println!("cargo:warning=cbindgen: {}", e);
        }
    }
    println!("cargo:rerun-if-changed=src/lib.rs");
}
