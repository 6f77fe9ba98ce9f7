//! Write the exact quartic and its parametrization to disk, read them back,
//! then drive the same files through the batch pipeline.

use approx_param::familygen::exact_quartic;
use approx_param::io::{curve_to_string, param_to_string, read_curve, read_param, write_atomic};
use approx_param::paramalg::approx_parametrize;
use approx_param::pipeline::{cmd_analyze, RunConfig};
use approx_param::report::summary_line;

fn main() -> approx_param::Result<()> {
    let dir = tempfile::tempdir()?;
    let f = exact_quartic();
    let p = approx_parametrize(&f, 1e-6)?;

    let curve = dir.path().join("curve_exact.curve");
    let param = dir.path().join("exact.param");
    write_atomic(&curve, &curve_to_string(&f))?;
    write_atomic(&param, &param_to_string(&p))?;
    print!("{}", std::fs::read_to_string(&curve)?);

    assert_eq!(read_curve(&curve)?, f);
    assert_eq!(read_param(&param)?, p);
    println!("round trip is bit-exact");

    let cfg = RunConfig { epsilon: 1e-6, out: dir.path().to_path_buf(), ..RunConfig::default() };
    let r = cmd_analyze(&curve, &param, &cfg)?;
    println!("{}", summary_line(&r));
    for entry in std::fs::read_dir(dir.path())? {
        println!("  {}", entry?.file_name().to_string_lossy());
    }
    Ok(())
}
