fn main() {
    // System OpenBLAS bundles the LAPACK routines used by src/linalg.rs.
    println!("cargo:rustc-link-lib=openblas");
}
