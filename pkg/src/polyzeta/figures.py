"""Figure rendering for the CLI report paths.

Each helper writes one PNG next to the delimited text output and returns
the path.  Imported lazily so matplotlib is only a cost when figures are
requested.
"""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _finish(fig, outdir, stem):
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, stem + ".png")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_zeta_figure(outdir, poly, z0, order):
    """Coefficients of det(Id - zT) and the location of the special point."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3))
    ks = range(len(poly.coefficients))
    ax1.bar(ks, [float(c) for c in poly.coefficients], color="steelblue")
    ax1.set_xlabel("power of z")
    ax1.set_ylabel("coefficient")
    ax1.set_title("zeta polynomial coefficients")
    ax1.axhline(0.0, color="black", linewidth=0.6)

    import numpy as np
    zs = np.linspace(0.0, float(z0) * 1.5, 300)
    vals = [sum(float(c) * z ** k for k, c in enumerate(poly.coefficients))
            for z in zs]
    ax2.plot(zs, vals, color="darkred")
    ax2.axvline(float(z0), color="gray", linestyle="--",
                label=f"z = {z0} (order {order})")
    ax2.axhline(0.0, color="black", linewidth=0.6)
    ax2.set_xlabel("z")
    ax2.set_ylabel("zeta(z)")
    ax2.set_title("zeta on [0, 1.5/(N+2)]")
    ax2.legend(fontsize=8)
    return _finish(fig, outdir, "zeta")


def save_geodesics_figure(outdir, rows):
    """Counts and signed sums of closed geodesic classes per length."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3))
    ks = [r[0] for r in rows]
    ax1.bar(ks, [r[1] for r in rows], color="steelblue")
    ax1.set_xlabel("length")
    ax1.set_ylabel("classes")
    ax1.set_title("closed geodesic classes")
    ax2.bar(ks, [r[2] for r in rows], color="darkorange")
    ax2.set_xlabel("length")
    ax2.set_ylabel("sum of sign * primitive length")
    ax2.set_title("signed length spectrum")
    return _finish(fig, outdir, "geodesics")


def save_trace_check_figure(outdir, rows):
    """Enumeration side against matrix-power side of the trace formula."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ks = [r[0] for r in rows]
    ax.plot(ks, [float(r[1]) for r in rows], "o-", label="enumeration",
            color="steelblue")
    ax.plot(ks, [float(r[2]) for r in rows], "x--", label="trace of T^k",
            color="darkred")
    ax.set_xlabel("k")
    ax.set_ylabel("signed count")
    ax.set_title("trace formula cross-check")
    ax.legend(fontsize=8)
    return _finish(fig, outdir, "trace_check")


def save_linking_figure(outdir, z, partial_values, exact_value):
    """Partial sums of the orthogeodesic series against the exact value."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ls = list(range(len(partial_values)))
    ax.plot(ls, [float(v) for v in partial_values], "o-",
            color="steelblue", label=f"partial sums at z = {z}")
    ax.axhline(float(exact_value), color="darkred", linestyle="--",
               label=f"exact value {exact_value}")
    ax.set_xlabel("truncation length")
    ax.set_ylabel("eta partial sum")
    ax.set_title("orthogeodesic series convergence")
    ax.legend(fontsize=8)
    return _finish(fig, outdir, "linking")


def save_l2_figure(outdir, report):
    """Log-log determinant zeta against the shift, with the fitted slope."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    xs = [float(r.s) for r in report.rows]
    ax.loglog(xs, [r.zeta_value for r in report.rows], "o-",
              color="steelblue", label="zeta value")
    ax.loglog(xs, [r.det_fk_shifted for r in report.rows], "s--",
              color="darkorange", label="det_FK(s + Laplacian)")
    b = float(report.l2_betti)
    anchor = report.rows[0]
    ref = [anchor.zeta_value * (x / float(anchor.s)) ** b for x in xs]
    ax.loglog(xs, ref, ":", color="gray", label=f"slope {report.l2_betti}")
    ax.set_xlabel("shift s")
    ax.set_ylabel("value")
    ax.set_title(f"zeta asymptotics (fit {report.slope_zeta:.4f})")
    ax.legend(fontsize=8)
    return _finish(fig, outdir, "l2_zeta")


def save_psi_figure(outdir, coeffs, heat_points):
    """Log-determinant series coefficients and the heat trace tail."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3))
    ks = range(1, len(coeffs) + 1)
    ax1.semilogy(ks, [abs(float(c)) for c in coeffs], "o-",
                 color="steelblue")
    ax1.set_xlabel("k")
    ax1.set_ylabel("|coefficient|")
    ax1.set_title("log-determinant series")
    if heat_points:
        ts = [p[0] for p in heat_points]
        vs = [p[1] for p in heat_points]
        ax2.semilogx(ts, vs, "o-", color="darkred")
        ax2.set_xlabel("t")
        ax2.set_ylabel("heat trace")
        ax2.set_title("heat trace")
    return _finish(fig, outdir, "psi")
