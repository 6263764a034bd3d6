"""Command-line entry point.

Reports go to standard output as stable ``key: value`` lines (tables use
the documented column formats); diagnostics go to standard error.  Exit
status 0 on success and on passing checks, 2 on a failing theorem check,
1 on usage or input errors.  Evaluation points and tolerances are exact
rationals written as ``p/q``; decimal floats are rejected.
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from . import l2 as l2mod
from .complex_core import (ComplexFormatError, GeneratorError,
                           complex_hash, emit_complex, generate, parse_chain,
                           parse_complex, parse_rational, validate)
from .dual_hodge import build_dual, emit_dual_complex
from .geodesics import closed_geodesics, signed_length_spectrum
from .homology import NullHomologyError, betti, linking_oracle
from .linking import (SingularSystemError, eta_exact, eta_partial_sum,
                      tail_bound, transfer_length_sums)
from .spectral import (check_laplacian_identity, emit_triplets, laplacian,
                       transfer_operator)
from .zeta import vanishing_order, zeta_polynomial


@dataclass
class CommandConfig:
    """Parsed invocation: subcommand, input paths, exact numeric options."""

    subcommand: str
    format: str
    options: argparse.Namespace


class Report:
    """Line-oriented, deterministically ordered output collector."""

    def __init__(self, fmt):
        self.fmt = fmt
        self.lines = []

    def section(self, title):
        if self.fmt == "human":
            self.lines.append(f"# {title}")

    def add(self, key, value):
        self.lines.append(f"{key}: {_format_value(value)}")

    def row(self, *cells):
        self.lines.append(" ".join(_format_value(c) for c in cells))

    def emit(self):
        print("\n".join(self.lines))


def _format_value(value):
    if isinstance(value, bool):
        return "PASS" if value else "FAIL"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def _rational(text):
    try:
        return parse_rational(text)
    except ComplexFormatError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _rational_list(text):
    return [_rational(tok) for tok in text.split(",") if tok]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="polyzeta",
        description="Exact zeta polynomials, geodesic counting, linking "
                    "numbers and finite-cover L2 invariants on regular "
                    "polyhedral complexes.")
    parser.add_argument("--format", choices=("human", "machine"),
                        default="human", help="output mode")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_complex_input(p, require_file=False):
        if require_file:
            p.add_argument("--complex", required=True, metavar="FILE",
                           help="complex file")
        else:
            g = p.add_mutually_exclusive_group(required=True)
            g.add_argument("--complex", metavar="FILE", help="complex file")
            g.add_argument("--generate", nargs="+", metavar="NAME",
                           help="generator name plus integer parameters")

    def add_cover_input(p):
        p.add_argument("--base-a", type=int, help="grid torus width")
        p.add_argument("--base-b", type=int, help="grid torus height")
        p.add_argument("-m", "--cover-order", type=int,
                       help="cyclic cover order")
        p.add_argument("--cover-complex", metavar="FILE",
                       help="explicit cover complex file")
        p.add_argument("--perm", metavar="FILE",
                       help="generator permutation file")

    p = sub.add_parser("validate", help="check the structural invariants")
    add_complex_input(p)

    p = sub.add_parser("info", help="cell counts and derived data")
    add_complex_input(p)
    p.add_argument("--triplets", choices=("laplacian", "transfer"),
                   help="also emit a matrix as 'row col value' lines")
    p.add_argument("--degree", type=int, default=None,
                   help="degree for --triplets laplacian")
    p.add_argument("--out", metavar="FILE", help="triplet output file")

    p = sub.add_parser("generate", help="emit a fixture complex file")
    p.add_argument("name", help="generator name")
    p.add_argument("params", nargs="*", type=int, help="generator parameters")
    p.add_argument("--dual", action="store_true",
                   help="emit the dual complex instead, tagged with the "
                        "base hash")
    p.add_argument("--out", metavar="FILE", help="output file")

    p = sub.add_parser("betti", help="exact Betti numbers by rational rank")
    add_complex_input(p)
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("zeta", help="det(Id - zT) and its vanishing order")
    add_complex_input(p)
    p.add_argument("--figures", metavar="DIR")

    p = sub.add_parser("geodesics", help="closed geodesic classes per length")
    add_complex_input(p)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--figures", metavar="DIR")

    p = sub.add_parser("trace-check",
                       help="enumeration against matrix traces")
    add_complex_input(p)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--figures", metavar="DIR")

    p = sub.add_parser("linking", help="orthogeodesic series and linking "
                                       "number")
    add_complex_input(p)
    p.add_argument("--k1", required=True, metavar="FILE",
                   help="base knot chain file")
    p.add_argument("--k2", required=True, metavar="FILE",
                   help="dual knot chain file")
    p.add_argument("--max-len", type=int, default=None,
                   help="also print per-length sums and the partial sum")
    p.add_argument("--at", type=_rational, default=None,
                   help="evaluation point p/q (default 1/(N+2))")
    p.add_argument("--figures", metavar="DIR")

    p = sub.add_parser("cover-build", help="build a cyclic grid torus cover")
    p.add_argument("--base-a", type=int, required=True)
    p.add_argument("--base-b", type=int, required=True)
    p.add_argument("-m", "--cover-order", type=int, required=True)
    p.add_argument("--out-complex", metavar="FILE")
    p.add_argument("--out-perm", metavar="FILE")

    p = sub.add_parser("l2-betti", help="exact L2 Betti numbers")
    add_cover_input(p)
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("l2-zeta-check",
                       help="determinant zeta asymptotics near the shift 0")
    add_cover_input(p)
    p.add_argument("--s", type=_rational_list,
                   default=[Fraction(1, 100), Fraction(1, 1000),
                            Fraction(1, 10000)],
                   help="comma-separated decreasing positive shifts")
    p.add_argument("--ratio-s", type=_rational, default=Fraction(1, 10 ** 6),
                   help="shift for the normalized-ratio check")
    p.add_argument("--slope-rtol", type=_rational, default=Fraction(1, 20),
                   help="relative slope tolerance")
    p.add_argument("--ratio-rtol", type=_rational, default=Fraction(1, 1000),
                   help="relative ratio tolerance")
    p.add_argument("--figures", metavar="DIR")

    p = sub.add_parser("psi", help="log-determinant series and heat trace")
    add_cover_input(p)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--heat-t", type=_rational, default=None,
                   help="also print the heat trace at this time")
    p.add_argument("--figures", metavar="DIR")

    return parser


def _load_complex(options):
    if getattr(options, "complex", None):
        with open(options.complex, encoding="utf-8") as handle:
            return parse_complex(handle.read())
    spec = options.generate
    name, params = spec[0], []
    for tok in spec[1:]:
        try:
            params.append(int(tok))
        except ValueError:
            raise GeneratorError(f"generator parameter '{tok}' is not an "
                                 "integer") from None
    return generate(name, *params)


def _load_cover(options):
    by_params = options.base_a is not None or options.base_b is not None \
        or options.cover_order is not None
    by_files = options.cover_complex is not None or options.perm is not None
    if by_params == by_files:
        raise ValueError("give either --base-a/--base-b/-m or "
                         "--cover-complex/--perm")
    if by_params:
        if None in (options.base_a, options.base_b, options.cover_order):
            raise ValueError("--base-a, --base-b and -m are all required")
        return l2mod.build_cyclic_cover(options.base_a, options.base_b,
                                        options.cover_order)
    if None in (options.cover_complex, options.perm):
        raise ValueError("--cover-complex and --perm are both required")
    with open(options.cover_complex, encoding="utf-8") as handle:
        cover = parse_complex(handle.read())
    with open(options.perm, encoding="utf-8") as handle:
        return l2mod.load_cover(cover, handle.read())


def _require_validated(complex):
    report = validate(complex)
    if not report.passed:
        names = ", ".join(c.name for c in report.failures())
        raise ValueError(f"complex fails validation ({names}); run the "
                         "validate subcommand for details")
    return report


def _special_point(complex):
    return Fraction(1, complex.regularity_degree + 2)


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_validate(config):
    out = Report(config.format)
    complex = _load_complex(config.options)
    report = validate(complex)
    out.section("validation report")
    out.add("dim", complex.dim)
    out.add("N", report.regularity_degree)
    for check in report.checks:
        out.add(f"check {check.name}", check.ok)
        if not check.ok:
            shown = ", ".join(str(o) for o in check.offenders[:8])
            out.add(f"offenders {check.name}", shown)
    out.add("validation", report.passed)
    out.emit()
    return 0 if report.passed else 2


def _cmd_info(config):
    opts = config.options
    out = Report(config.format)
    complex = _load_complex(opts)
    out.section("complex")
    out.add("dim", complex.dim)
    for k in range(complex.dim + 1):
        out.add(f"cells[{k}]", complex.count(k))
    out.add("N", complex.regularity_degree)
    out.add("euler_characteristic", complex.euler_characteristic())
    out.add("hash", complex_hash(complex))
    out.add("laplacian_identity", check_laplacian_identity(complex))
    if opts.triplets:
        if opts.triplets == "laplacian":
            degree = opts.degree if opts.degree is not None \
                else complex.dim - 1
            matrix = laplacian(complex, degree).matrix
        else:
            matrix = transfer_operator(complex).matrix
        text = emit_triplets(matrix)
        if opts.out:
            with open(opts.out, "w", encoding="utf-8") as handle:
                handle.write(text)
            out.add("triplets_written", opts.out)
        else:
            out.emit()
            sys.stdout.write(text)
            return 0
    out.emit()
    return 0


def _cmd_generate(config):
    opts = config.options
    complex = generate(opts.name, *opts.params)
    if opts.dual:
        text = emit_dual_complex(build_dual(complex))
    else:
        text = emit_complex(complex)
    if opts.out:
        with open(opts.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        out = Report(config.format)
        out.add("written", opts.out)
        out.emit()
    else:
        sys.stdout.write(text)
    return 0


def _cmd_betti(config):
    opts = config.options
    out = Report(config.format)
    complex = _load_complex(opts)
    _require_validated(complex)
    out.section("betti numbers (rational rank)")
    degrees = range(complex.dim + 1) if opts.degree is None \
        else [opts.degree]
    for k in degrees:
        out.add(f"betti[{k}]", betti(complex, k))
    out.emit()
    return 0


def _cmd_zeta(config):
    opts = config.options
    out = Report(config.format)
    complex = _load_complex(opts)
    _require_validated(complex)
    operator = transfer_operator(complex)
    poly = zeta_polynomial(operator)
    z0 = _special_point(complex)
    order = vanishing_order(poly, z0)
    out.section("zeta polynomial det(Id - zT)")
    out.add("nominal_degree", poly.nominal_degree)
    out.add("degree", poly.degree)
    for i, c in enumerate(poly.coefficients):
        out.add(f"coefficient[{i}]", c)
    out.add("special_point", z0)
    out.add("order_at_1/(N+2)", order)
    out.add("kernel_dim_check", betti(complex, complex.dim - 1))
    if opts.figures:
        from . import figures
        path = figures.save_zeta_figure(opts.figures, poly, z0, order)
        out.add("figure", path)
    out.emit()
    return 0


def _cmd_geodesics(config):
    opts = config.options
    out = Report(config.format)
    complex = _load_complex(opts)
    _require_validated(complex)
    classes = closed_geodesics(complex, opts.max_len)
    rows = []
    for k in range(1, opts.max_len + 1):
        at_k = [g for g in classes if g.length == k]
        rows.append((k, len(at_k),
                     sum(g.sign * g.primitive_length for g in at_k)))
    out.section("closed geodesic classes")
    if config.format == "human":
        out.lines.append("# k count signed_sum")
    for row in rows:
        out.row(*row)
    if opts.figures:
        from . import figures
        path = figures.save_geodesics_figure(opts.figures, rows)
        out.add("figure", path)
    out.emit()
    return 0


def _cmd_trace_check(config):
    opts = config.options
    out = Report(config.format)
    complex = _load_complex(opts)
    _require_validated(complex)
    operator = transfer_operator(complex)
    spectrum = signed_length_spectrum(complex, opts.max_k, operator=operator)
    rows = []
    power = [list(r) for r in operator.matrix]
    ok = True
    for k in range(1, opts.max_k + 1):
        trace = sum(power[i][i] for i in range(operator.size))
        rows.append((k, spectrum[k], trace))
        ok = ok and spectrum[k] == trace
        if k < opts.max_k:
            power = exact.mat_mul(power, operator.matrix)
    out.section("signed length spectrum against traces")
    if config.format == "human":
        out.lines.append("# k enumerated trace")
    for row in rows:
        out.row(*row)
    out.add("result", ok)
    if opts.figures:
        from . import figures
        path = figures.save_trace_check_figure(opts.figures, rows)
        out.add("figure", path)
    out.emit()
    return 0 if ok else 2


def _cmd_linking(config):
    opts = config.options
    out = Report(config.format)
    complex = _load_complex(opts)
    _require_validated(complex)
    dual = build_dual(complex)
    with open(opts.k1, encoding="utf-8") as handle:
        k1 = parse_chain(handle.read(), complex)
    with open(opts.k2, encoding="utf-8") as handle:
        k2 = parse_chain(handle.read(), dual.dual)
    z = opts.at if opts.at is not None else _special_point(complex)
    evaluation = eta_exact(complex, dual, k1, k2, z)
    out.section("orthogeodesic series")
    out.add("at", z)
    out.add("eta", evaluation.value)
    out.add("linking_number", linking_oracle(complex, dual, k1, k2))
    if opts.max_len is not None:
        sums = transfer_length_sums(complex, dual, k1, k2, opts.max_len)
        if config.format == "human":
            out.lines.append("# k signed_sum")
        partials = []
        acc = Fraction(0)
        for k, s in enumerate(sums, start=1):
            out.row(k, Fraction(s))
            acc += Fraction(s) * z ** k
            partials.append(acc)
        partial = eta_partial_sum(complex, dual, k1, k2, z, opts.max_len)
        out.add("partial_sum", partial.value)
        try:
            out.add("tail_bound",
                    tail_bound(complex, dual, k1, k2, z, opts.max_len))
        except ValueError:
            out.add("tail_bound", "outside convergence disk")
        if opts.figures:
            from . import figures
            path = figures.save_linking_figure(opts.figures, z, partials,
                                               evaluation.value)
            out.add("figure", path)
    out.emit()
    return 0


def _cmd_cover_build(config):
    opts = config.options
    out = Report(config.format)
    cover = l2mod.build_cyclic_cover(opts.base_a, opts.base_b,
                                     opts.cover_order)
    out.section("cyclic cover")
    out.add("group_order", cover.group_order)
    for k in range(cover.cover.dim + 1):
        out.add(f"cover_cells[{k}]", cover.cover.count(k))
    if opts.out_complex:
        with open(opts.out_complex, "w", encoding="utf-8") as handle:
            handle.write(emit_complex(cover.cover))
        out.add("complex_written", opts.out_complex)
    if opts.out_perm:
        with open(opts.out_perm, "w", encoding="utf-8") as handle:
            handle.write(l2mod.emit_permutations(cover))
        out.add("perm_written", opts.out_perm)
    out.emit()
    return 0


def _cmd_l2_betti(config):
    opts = config.options
    out = Report(config.format)
    cover = _load_cover(opts)
    out.section("L2 Betti numbers")
    degrees = range(cover.cover.dim + 1) if opts.degree is None \
        else [opts.degree]
    for k in degrees:
        out.add(f"l2_betti[{k}]", l2mod.l2_betti(cover, k))
    out.emit()
    return 0


def _cmd_l2_zeta_check(config):
    opts = config.options
    out = Report(config.format)
    cover = _load_cover(opts)
    report = l2mod.fk_zeta_asymptotic_check(cover, opts.s)
    ratio_report = l2mod.fk_zeta_asymptotic_check(cover, [opts.ratio_s])
    ratio = ratio_report.rows[0].normalized_ratio
    b = report.l2_betti
    out.section("determinant zeta asymptotics")
    out.add("degree", report.degree)
    out.add("l2_betti", b)
    out.add("det_fk_laplacian", report.det_fk_laplacian)
    if config.format == "human":
        out.lines.append("# s det_fk_shifted zeta_value normalized_ratio")
    for row in report.rows:
        out.row(row.s, row.det_fk_shifted, row.zeta_value,
                row.normalized_ratio)
    out.add("slope_zeta", report.slope_zeta)
    out.add("slope_det", report.slope_det)
    out.add("ratio_s", opts.ratio_s)
    out.add("normalized_ratio", ratio)
    slope_ok = abs(report.slope_zeta - float(b)) <= float(opts.slope_rtol) \
        * float(b)
    ratio_ok = abs(ratio - 1.0) <= float(opts.ratio_rtol)
    out.add("slope_within_tolerance", slope_ok)
    out.add("ratio_within_tolerance", ratio_ok)
    out.add("result", slope_ok and ratio_ok)
    if opts.figures:
        from . import figures
        path = figures.save_l2_figure(opts.figures, report)
        out.add("figure", path)
    out.emit()
    return 0 if slope_ok and ratio_ok else 2


def _cmd_psi(config):
    opts = config.options
    out = Report(config.format)
    cover = _load_cover(opts)
    coeffs = l2mod.psi_series(cover, opts.order)
    out.section("log-determinant series")
    for k, c in enumerate(coeffs, start=1):
        out.add(f"psi[{k}]", c)
    heat_points = []
    if opts.heat_t is not None:
        value = l2mod.heat_trace(cover, opts.heat_t)
        out.add(f"heat_trace[{opts.heat_t}]", value)
        heat_points.append((float(opts.heat_t), value))
    out.add("l2_betti_limit", l2mod.l2_betti(cover, cover.cover.dim - 1))
    if opts.figures:
        from . import figures
        path = figures.save_psi_figure(opts.figures, coeffs, heat_points)
        out.add("figure", path)
    out.emit()
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "info": _cmd_info,
    "generate": _cmd_generate,
    "betti": _cmd_betti,
    "zeta": _cmd_zeta,
    "geodesics": _cmd_geodesics,
    "trace-check": _cmd_trace_check,
    "linking": _cmd_linking,
    "cover-build": _cmd_cover_build,
    "l2-betti": _cmd_l2_betti,
    "l2-zeta-check": _cmd_l2_zeta_check,
    "psi": _cmd_psi,
}


def run(config):
    """Execute a parsed command; returns the process exit status."""
    return _COMMANDS[config.subcommand](config)


def main(argv=None):
    parser = build_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as exit_:
        # argparse reports usage errors with status 2; the contract here is
        # exit 1 for usage and input problems, 2 for failing checks
        return 0 if exit_.code in (0, None) else 1
    config = CommandConfig(subcommand=options.subcommand,
                           format=options.format, options=options)
    try:
        return run(config)
    except (ComplexFormatError, GeneratorError, NullHomologyError,
            SingularSystemError, l2mod.CoverError,
            l2mod.NonEquivariantError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
