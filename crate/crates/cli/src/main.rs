//! Command-line front end: thin compositions of the library operations.
//!
//! Exit codes: 0 on success, 1 for validation/parse/IO problems, 2 for
//! numeric failures (logarithm near pi, vanishing signal combinations, a
//! closing loop that does not converge).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lieshape_core::{
    blend, close_curve, interpolate, load_curve, project_so3_to_s2, save_curve, shape_distance,
    srvt_euclidean, srvt_group, srvt_reductive, srvt_sphere, AnyCurve, Error, GeodesicDataset,
    GeodesicOptions, GeodesicRequest, Result, SignalFile, SlopeSet, Space, Transform, UnitVector,
    Vec3,
};

#[derive(Parser)]
#[command(
    name = "lieshape",
    version,
    about = "Elastic shape analysis for curves on SO(3) and the sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    R3,
    So3,
    S2,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::R3 => Space::R3,
            SpaceArg::So3 => Space::So3,
            SpaceArg::S2 => Space::S2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformArg {
    Euclidean,
    Group,
    Sphere,
    Reductive,
}

#[derive(Args)]
struct CommonFlags {
    /// Expected sample space of the input files; mismatches are rejected.
    #[arg(long, value_enum)]
    space: Option<SpaceArg>,
    /// Which transform to run through (defaults to the space's natural
    /// one: r3 -> euclidean, so3 -> group, s2 -> sphere).
    #[arg(long, value_enum)]
    transform: Option<TransformArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Transform a curve and write the algebra-valued signal as JSON.
    Transform {
        input: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the shape distance between two curves, before and after
    /// dynamic-programming registration.
    Distance {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Interpolate between two curves and write the sampled family as CSV.
    Geodesic {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
        /// Interpolation weights in [0, 1].
        #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 0.75])]
        theta: Vec<f64>,
        /// Register the second curve onto the first before interpolating.
        #[arg(long)]
        register: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Blend two curves: the inverse transform of s*Q(first) + (1-s)*Q(second).
    Blend {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
        /// Blending weight in [0, 1]; 1 returns the first curve.
        #[arg(long)]
        s: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Register the second curve onto the first and write the warped curve.
    Register {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
        #[arg(long)]
        out: PathBuf,
    },
    /// Close an almost-closed SO(3) curve by distributing the endpoint
    /// defect in transform space.
    Close {
        input: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
        /// Target endpoint gap (algebra norm of the closure defect).
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 50)]
        max_iter: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Project an SO(3) curve to the sphere by rotating a reference vector.
    Project {
        input: PathBuf,
        #[command(flatten)]
        common: CommonFlags,
        /// Reference vector components "x,y,z" (normalized internally);
        /// default (0,1,1)/sqrt(2).
        #[arg(long, value_delimiter = ',')]
        vector: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Numeric failures exit with 2, validation with 1.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AngleNearPi { .. }
        | Error::ZeroSignalSegment { .. }
        | Error::NoConvergence { .. }
        | Error::NoAdmissiblePath => 2,
        _ => 1,
    }
}

fn check_space(curve: &AnyCurve, expected: Option<SpaceArg>) -> Result<()> {
    if let Some(expected) = expected {
        let expected: Space = expected.into();
        if curve.space() != expected {
            return Err(Error::SpaceMismatch {
                expected: expected.name(),
                found: curve.space().name(),
            });
        }
    }
    Ok(())
}

fn load_checked(path: &PathBuf, expected: Option<SpaceArg>) -> Result<AnyCurve> {
    let curve = load_curve(path)?;
    check_space(&curve, expected)?;
    Ok(curve)
}

/// Resolves the transform for pairwise shape operations.
fn pair_transform(curve: &AnyCurve, arg: Option<TransformArg>) -> Result<Transform> {
    match (arg, curve.space()) {
        (None, Space::So3) | (Some(TransformArg::Group), Space::So3) => Ok(Transform::Group),
        (None, Space::S2) | (Some(TransformArg::Sphere), Space::S2) => Ok(Transform::Sphere),
        (Some(TransformArg::Reductive), Space::S2) => Ok(Transform::Reductive),
        (Some(TransformArg::Group), other) => Err(Error::SpaceMismatch {
            expected: Space::So3.name(),
            found: other.name(),
        }),
        (Some(TransformArg::Sphere), other) | (Some(TransformArg::Reductive), other) => {
            Err(Error::SpaceMismatch {
                expected: Space::S2.name(),
                found: other.name(),
            })
        }
        (Some(TransformArg::Euclidean), other) | (None, other) => Err(Error::SpaceMismatch {
            expected: "SO(3) or S2",
            found: other.name(),
        }),
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Transform { input, common, out } => {
            let curve = load_checked(&input, common.space)?;
            let file = match (common.transform, &curve) {
                (None, AnyCurve::R3(c)) | (Some(TransformArg::Euclidean), AnyCurve::R3(c)) => {
                    SignalFile::from_vector("euclidean", &srvt_euclidean(c)?)
                }
                (None, AnyCurve::So3(c)) | (Some(TransformArg::Group), AnyCurve::So3(c)) => {
                    SignalFile::from_skew("group", &srvt_group(c)?)
                }
                (None, AnyCurve::S2(c)) | (Some(TransformArg::Sphere), AnyCurve::S2(c)) => {
                    SignalFile::from_skew("sphere", &srvt_sphere(c)?)
                }
                (Some(TransformArg::Reductive), AnyCurve::S2(c)) => {
                    let frame0 = lieshape_core::orthonormal_frame(c.start());
                    SignalFile::from_skew("reductive", &srvt_reductive(c, frame0)?.0)
                }
                (Some(arg), curve) => {
                    return Err(Error::SpaceMismatch {
                        expected: match arg {
                            TransformArg::Euclidean => Space::R3.name(),
                            TransformArg::Group => Space::So3.name(),
                            _ => Space::S2.name(),
                        },
                        found: curve.space().name(),
                    })
                }
            };
            file.save(out)?;
            Ok(())
        }
        Command::Distance {
            first,
            second,
            common,
        } => {
            let c1 = load_checked(&first, common.space)?;
            let c2 = load_checked(&second, common.space)?;
            let transform = pair_transform(&c1, common.transform)?;
            let report = shape_distance(&c1, &c2, transform, true)?;
            println!("pre_registration_distance={}", report.unregistered);
            println!(
                "post_registration_distance={}",
                report.registered.expect("registration requested")
            );
            Ok(())
        }
        Command::Geodesic {
            first,
            second,
            common,
            theta,
            register,
            out,
        } => {
            let c1 = load_checked(&first, common.space)?;
            let c2 = load_checked(&second, common.space)?;
            let transform = pair_transform(&c1, common.transform)?;
            let mut thetas = theta;
            thetas.sort_by(|a, b| a.total_cmp(b));
            let request = GeodesicRequest {
                c1,
                c2,
                transform,
                options: GeodesicOptions {
                    thetas,
                    register,
                    slopes: SlopeSet::default(),
                },
            };
            let geodesic = interpolate(&request)?;
            println!("pre_registration_distance={}", geodesic.pre_distance);
            if let Some(post) = geodesic.post_distance {
                println!("post_registration_distance={post}");
            }
            GeodesicDataset::new(geodesic)?.write_csv(out)?;
            Ok(())
        }
        Command::Blend {
            first,
            second,
            common,
            s,
            out,
        } => {
            let c0 = load_checked(&first, common.space)?;
            let c1 = load_checked(&second, common.space)?;
            let transform = pair_transform(&c0, common.transform)?;
            let blended = blend(&c0, &c1, s, transform)?;
            save_curve(out, &blended, None)?;
            Ok(())
        }
        Command::Register {
            first,
            second,
            common,
            out,
        } => {
            let c1 = load_checked(&first, common.space)?;
            let c2 = load_checked(&second, common.space)?;
            let transform = pair_transform(&c1, common.transform)?;
            let request = GeodesicRequest {
                c1,
                c2,
                transform,
                options: GeodesicOptions {
                    thetas: vec![1.0],
                    register: true,
                    slopes: SlopeSet::default(),
                },
            };
            let mut geodesic = interpolate(&request)?;
            println!("pre_registration_distance={}", geodesic.pre_distance);
            println!(
                "post_registration_distance={}",
                geodesic.post_distance.expect("registration requested")
            );
            save_curve(out, &geodesic.curves.remove(0), None)?;
            Ok(())
        }
        Command::Close {
            input,
            common,
            tol,
            max_iter,
            out,
        } => {
            let curve = load_checked(&input, common.space)?;
            let curve = curve.as_so3()?;
            match close_curve(curve, tol, max_iter) {
                Ok(closure) => {
                    println!("iterations={}", closure.iterations);
                    println!("final_gap={}", closure.gap_history.last().unwrap());
                    println!("relative_signal_change={}", closure.relative_signal_change);
                    save_curve(out, &AnyCurve::So3(closure.curve), None)?;
                    Ok(())
                }
                Err(Error::NoConvergence {
                    iterations,
                    gap,
                    best,
                }) => {
                    // Still write the best iterate so the caller can inspect it.
                    println!("iterations={iterations}");
                    println!("final_gap={gap}");
                    println!("relative_signal_change={}", best.relative_signal_change);
                    save_curve(out, &AnyCurve::So3(best.curve.clone()), None)?;
                    Err(Error::NoConvergence {
                        iterations,
                        gap,
                        best,
                    })
                }
                Err(e) => Err(e),
            }
        }
        Command::Project {
            input,
            common,
            vector,
            out,
        } => {
            let curve = load_checked(&input, common.space)?;
            let curve = curve.as_so3()?;
            let reference = match vector {
                Some(v) => {
                    if v.len() != 3 {
                        return Err(Error::Parse {
                            line: 0,
                            column: 0,
                            message: format!(
                                "projection vector needs 3 components, got {}",
                                v.len()
                            ),
                        });
                    }
                    let raw = Vec3::new(v[0], v[1], v[2]);
                    let norm = raw.norm();
                    if !norm.is_finite() || norm < 1e-12 {
                        return Err(Error::Parse {
                            line: 0,
                            column: 0,
                            message: "projection vector must be nonzero".into(),
                        });
                    }
                    UnitVector::try_new(raw / norm)?
                }
                None => lieshape_core::default_projection_vector(),
            };
            let projected = project_so3_to_s2(curve, &reference)?;
            save_curve(out, &AnyCurve::S2(projected), None)?;
            Ok(())
        }
    }
}
