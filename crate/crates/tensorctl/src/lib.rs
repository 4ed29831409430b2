//! `tensorctl`: inspect and transform MTF1 tensor files.
//!
//! Exit codes: 0 success, 2 usage error, 3 file or format error, 4 shape,
//! bounds or domain error.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use tempfile::NamedTempFile;
use tensorview::{
    ew_binary, read_tensor, render_matrix, render_table, with_any_tensor, write_any, AnyTensor,
    BinaryOp, CoordinateOrder, Element, ElementKind, Operand, Tensor,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FORMAT: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "tensorctl",
    version,
    about = "Inspect and transform MTF1 tensor files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Style {
    Table,
    Matrix,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    Lcmo,
    Fcmo,
}

impl From<Order> for CoordinateOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Lcmo => CoordinateOrder::LastMajor,
            Order::Fcmo => CoordinateOrder::FirstMajor,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print dimension, shape, order, element kind and size.
    Info { file: PathBuf },
    /// Render the elements.
    Print {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Style::Matrix)]
        style: Style,
    },
    /// Create a tensor with every element set to one value.
    New {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long, allow_hyphen_values = true)]
        fill: String,
        #[arg(long, value_enum, default_value_t = Order::Lcmo)]
        order: Order,
        #[arg(long, default_value = "f64")]
        kind: ElementKind,
        out: PathBuf,
    },
    /// Change the shape, keeping elements in index order.
    Reshape {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        out: PathBuf,
    },
    /// Change the shape, keeping elements at matching coordinates.
    Resize {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long, allow_hyphen_values = true)]
        fill: Option<String>,
        out: PathBuf,
    },
    /// Reorder axes: new axis j is old axis PERM[j].
    Permute {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        perm: Vec<usize>,
        out: PathBuf,
    },
    /// Swap two axes, or reverse all axes when --axes is absent.
    Transpose {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1)]
        axes: Option<Vec<usize>>,
        out: PathBuf,
    },
    /// Rotate the axis sequence by Z positions.
    Shift {
        file: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        by: isize,
        out: PathBuf,
    },
    /// Extract the window at BASE with the given shape.
    Slice {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        /// Drop axes of extent 1 from the result.
        #[arg(long)]
        squeeze: bool,
        out: PathBuf,
    },
    /// Fix coordinate AXIS at X, dropping that axis.
    Bind {
        file: PathBuf,
        #[arg(long)]
        axis: usize,
        #[arg(long)]
        at: usize,
        out: PathBuf,
    },
    /// Elementwise arithmetic: `binop OP A B OUT` or `binop OP A --scalar V OUT`.
    Binop {
        op: BinaryOp,
        /// A, B and OUT, or A and OUT with --scalar.
        #[arg(required = true, value_name = "FILE")]
        files: Vec<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        scalar: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    File(String),
    #[error(transparent)]
    Lib(#[from] tensorview::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use tensorview::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::File(_) => EXIT_FORMAT,
            CliError::Lib(
                E::BadMagic(_)
                | E::UnsupportedVersion(_)
                | E::UnknownElementCode(_)
                | E::UnknownOrderCode(_)
                | E::TruncatedPayload { .. }
                | E::TrailingGarbage
                | E::Io(_),
            ) => EXIT_FORMAT,
            CliError::Lib(_) => EXIT_DOMAIN,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (program name first) and runs the command. Renders go to
/// `stdout`, diagnostics to `stderr`. Returns the process exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "tensorctl: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Info { file } => {
            let t = load(&file)?;
            let d = t.descriptor();
            let text = format!(
                "dimension: {}\nshape: {}\norder: {}\nkind: {}\nsize: {}\n",
                d.dimension(),
                join(d.shape()),
                d.order(),
                t.kind(),
                d.size()
            );
            emit(stdout, &text)
        }
        Command::Print { file, style } => {
            let t = load(&file)?;
            let text = with_any_tensor!(&t, t => match style {
                Style::Table => render_table(&t.view()),
                Style::Matrix => render_matrix(&t.view()),
            });
            emit(stdout, &text)
        }
        Command::New {
            shape,
            fill,
            order,
            kind,
            out,
        } => {
            let order = order.into();
            let t = match kind {
                ElementKind::F32 => filled::<f32>(&shape, order, &fill)?.into(),
                ElementKind::F64 => filled::<f64>(&shape, order, &fill)?.into(),
                ElementKind::I32 => filled::<i32>(&shape, order, &fill)?.into(),
                ElementKind::I64 => filled::<i64>(&shape, order, &fill)?.into(),
                ElementKind::U8 => filled::<u8>(&shape, order, &fill)?.into(),
            };
            store(&out, &t)
        }
        Command::Reshape { file, shape, out } => {
            let t = load(&file)?;
            let r: AnyTensor = with_any_tensor!(t, t => t.reshaped(&shape)?.into());
            store(&out, &r)
        }
        Command::Resize {
            file,
            shape,
            fill,
            out,
        } => {
            let t = load(&file)?;
            let r: AnyTensor = with_any_tensor!(t, t => {
                let mut t = t;
                let fill = match &fill {
                    Some(s) => parse_value(s)?,
                    None => Default::default(),
                };
                t.resize(&shape, fill)?;
                t.into()
            });
            store(&out, &r)
        }
        Command::Permute { file, perm, out } => {
            let t = load(&file)?;
            let r: AnyTensor =
                with_any_tensor!(&t, t => t.view().permuted(&perm)?.to_tensor().into());
            store(&out, &r)
        }
        Command::Transpose { file, axes, out } => {
            let t = load(&file)?;
            let r: AnyTensor = match axes.as_deref() {
                None => with_any_tensor!(&t, t => t.view().transposed_all()?.to_tensor().into()),
                Some(&[j, k]) => {
                    with_any_tensor!(&t, t => t.view().transposed(j, k)?.to_tensor().into())
                }
                Some(_) => return Err(CliError::Usage("--axes takes exactly two axes J,K".into())),
            };
            store(&out, &r)
        }
        Command::Shift { file, by, out } => {
            let t = load(&file)?;
            let r: AnyTensor = with_any_tensor!(&t, t => t.view().shifted(by)?.to_tensor().into());
            store(&out, &r)
        }
        Command::Slice {
            file,
            base,
            shape,
            squeeze,
            out,
        } => {
            let t = load(&file)?;
            let r: AnyTensor = with_any_tensor!(&t, t => {
                let mut v = t.view().sub_view(&base, &shape)?;
                if squeeze {
                    v = v.squeezed();
                }
                v.to_tensor().into()
            });
            store(&out, &r)
        }
        Command::Bind {
            file,
            axis,
            at,
            out,
        } => {
            let t = load(&file)?;
            let r: AnyTensor =
                with_any_tensor!(&t, t => t.view().bound(axis, at)?.to_tensor().into());
            store(&out, &r)
        }
        Command::Binop { op, files, scalar } => {
            let (a, b, out) = match (files.as_slice(), &scalar) {
                ([a, out], Some(_)) => (a, None, out),
                ([a, b, out], None) => (a, Some(b), out),
                (_, Some(_)) => {
                    return Err(CliError::Usage(
                        "with --scalar, binop takes A and OUT".into(),
                    ))
                }
                (_, None) => return Err(CliError::Usage("binop takes A, B and OUT".into())),
            };
            let a = load(a)?;
            let b = match b {
                Some(path) => Some(load(path)?),
                None => None,
            };
            let r = binop(op, &a, b.as_ref(), scalar.as_deref())?;
            store(out, &r)
        }
    }
}

fn binop(
    op: BinaryOp,
    a: &AnyTensor,
    b: Option<&AnyTensor>,
    scalar: Option<&str>,
) -> CliResult<AnyTensor> {
    fn typed<T: Element>(
        op: BinaryOp,
        a: &Tensor<T>,
        b: Option<&Tensor<T>>,
        scalar: Option<&str>,
    ) -> CliResult<AnyTensor>
    where
        AnyTensor: From<Tensor<T>>,
    {
        let rhs = match (b, scalar) {
            (Some(b), _) => Operand::from(b),
            (None, Some(s)) => Operand::Scalar(parse_value::<T>(s)?),
            (None, None) => unreachable!("checked by the caller"),
        };
        Ok(ew_binary(op, a, rhs)?.into())
    }
    match (a, b) {
        (AnyTensor::F32(a), None) => typed(op, a, None, scalar),
        (AnyTensor::F64(a), None) => typed(op, a, None, scalar),
        (AnyTensor::I32(a), None) => typed(op, a, None, scalar),
        (AnyTensor::I64(a), None) => typed(op, a, None, scalar),
        (AnyTensor::U8(a), None) => typed(op, a, None, scalar),
        (AnyTensor::F32(a), Some(AnyTensor::F32(b))) => typed(op, a, Some(b), None),
        (AnyTensor::F64(a), Some(AnyTensor::F64(b))) => typed(op, a, Some(b), None),
        (AnyTensor::I32(a), Some(AnyTensor::I32(b))) => typed(op, a, Some(b), None),
        (AnyTensor::I64(a), Some(AnyTensor::I64(b))) => typed(op, a, Some(b), None),
        (AnyTensor::U8(a), Some(AnyTensor::U8(b))) => typed(op, a, Some(b), None),
        (a, Some(b)) => Err(tensorview::Error::KindMismatch {
            expected: a.kind().name(),
            found: b.kind().name(),
        }
        .into()),
    }
}

fn filled<T: Element>(shape: &[usize], order: CoordinateOrder, fill: &str) -> CliResult<Tensor<T>> {
    Ok(Tensor::filled(shape, order, parse_value(fill)?)?)
}

fn parse_value<T: Element>(s: &str) -> CliResult<T> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("'{s}' is not a valid {} value", T::KIND)))
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn emit(stdout: &mut dyn Write, text: &str) -> CliResult<()> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::File(format!("writing output: {e}")))
}

fn load(path: &Path) -> CliResult<AnyTensor> {
    let file = File::open(path).map_err(|e| CliError::File(format!("{}: {e}", path.display())))?;
    read_tensor(&mut BufReader::new(file)).map_err(|e| match e {
        tensorview::Error::Io(msg) => CliError::File(format!("{}: {msg}", path.display())),
        other => CliError::File(format!("{}: {other}", path.display())),
    })
}

/// Writes to a temporary file next to `path` and renames it into place, so
/// `path` is only touched once the whole tensor has been written.
fn store(path: &Path, tensor: &AnyTensor) -> CliResult<()> {
    let io_err = |e: std::io::Error| CliError::File(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut temp = NamedTempFile::new_in(dir).map_err(io_err)?;
    {
        let mut w = BufWriter::new(temp.as_file_mut());
        write_any(&mut w, tensor)?;
        w.flush().map_err(io_err)?;
    }
    temp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
