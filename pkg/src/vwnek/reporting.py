"""Tables and figures for the command line report path.

All mathematics in the package is exact.  The CSV tables written here
carry canonical exact strings (plus one exact rational sample-value
column); the figures are lossy visualizations whose floats exist only at
plot time.  For a fixed (rank, order, seed) the output files are
byte-identical across runs: the only randomness is the seeded choice of
the sample Y-value, the table writer pins its line terminator, and the
PNG encoder is handed fixed metadata so nothing time-dependent is
embedded.
"""

from __future__ import annotations

import csv
import math
import random
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .nekrasov import fixed_points
from .toric import projective_plane, surface_g_series
from .verification import sample_rational

# ----------------------------------------------------------------------------
# data assembly
# ----------------------------------------------------------------------------


def sample_y_value(g, seed: int):
    """A seeded rational Y-value at which every coefficient of g is finite.

    Coefficients are rational functions of Y, so a random value can land on
    a denominator zero; each failed draw advances the seed by one, exactly
    like the resampling used by the seeded identity checks.
    """
    draw_seed = seed
    for _attempt in range(100):
        y_value = sample_rational(random.Random(draw_seed))
        draw_seed += 1
        if abs(y_value) == 1:
            continue
        try:
            for coeff in g.terms.values():
                coeff.evaluate(y_value)
        except ZeroDivisionError:
            continue
        return y_value
    raise ZeroDivisionError("no regular sample Y-value found in 100 draws")


def g_series_rows(g, y_value) -> list[list[str]]:
    """Header plus one row per tracked q-order of the G-series."""
    rows = [["q_order", "coefficient", f"value_at_Y={y_value}"]]
    for e in sorted(g.terms):
        coeff = g.terms[e]
        rows.append([str(e), coeff.render(), str(coeff.evaluate(y_value))])
    return rows


def fixed_point_rows(rank: int, n_max: int) -> list[list[str]]:
    """Header plus the number of torus-fixed points on each moduli space."""
    rows = [["instanton_number", "fixed_points"]]
    for n in range(n_max + 1):
        rows.append([str(n), str(sum(1 for _ in fixed_points(rank, n)))])
    return rows


def write_csv(path: Path, rows: list[list[str]]) -> None:
    with path.open("w", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)


# ----------------------------------------------------------------------------
# figures
# ----------------------------------------------------------------------------

_PNG_METADATA = {"Software": "vwnek report"}


def _save(fig, path: Path) -> None:
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)


def coefficient_profile_figure(g, y_value, rank: int, path: Path) -> None:
    """log10 |coefficient| of the G-series at the sample Y-value, per order."""
    xs, ys, signs = [], [], []
    for e in sorted(g.terms):
        value = g.terms[e].evaluate(y_value)
        if value == 0:
            continue
        xs.append(float(e))
        ys.append(math.log10(abs(float(value))) if value != 0 else 0.0)
        signs.append(value > 0)
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.plot(xs, ys, color="#888888", linewidth=1.0, zorder=1)
    for wanted, color, label in ((True, "#1f77b4", "positive"), (False, "#d62728", "negative")):
        pts = [(x, y) for x, y, s in zip(xs, ys, signs) if s is wanted]
        if pts:
            ax.scatter([p[0] for p in pts], [p[1] for p in pts], color=color, label=label, zorder=2)
    ax.set_xlabel("q-order")
    ax.set_ylabel("log10 |coefficient|")
    ax.set_title(f"P^2 rank-{rank} G-series coefficients at Y = {y_value}")
    ax.legend(loc="best")
    fig.tight_layout()
    _save(fig, path)


def fixed_point_figure(rows: list[list[str]], rank: int, path: Path) -> None:
    """Bar chart of fixed-point counts per instanton number."""
    levels = [int(r[0]) for r in rows[1:]]
    counts = [int(r[1]) for r in rows[1:]]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ax.bar(levels, counts, color="#1f77b4")
    for level, count in zip(levels, counts):
        ax.annotate(str(count), (level, count), ha="center", va="bottom", fontsize=8)
    ax.set_xlabel("instanton number")
    ax.set_ylabel("torus-fixed points")
    ax.set_title(f"rank-{rank} fixed-point counts")
    ax.set_xticks(levels)
    fig.tight_layout()
    _save(fig, path)


# ----------------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------------


def write_report(rank: int, order: int, out_dir, seed: int = 0) -> list[Path]:
    """Write the report tables and figures into out_dir; return the paths.

    The delimited tables are g_series.csv (exact G-series of the plane with
    zero twists, plus its value at a seeded sample Y) and fixed_points.csv;
    the figures plot the same two data sets.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    plane = projective_plane()
    twists = tuple(plane.zero_divisor() for _ in range(rank - 1))
    g = surface_g_series(plane, twists, rank, order)
    y_value = sample_y_value(g, seed)
    written = []

    table = g_series_rows(g, y_value)
    path = out_dir / "g_series.csv"
    write_csv(path, table)
    written.append(path)

    counts = fixed_point_rows(rank, order + 3)
    path = out_dir / "fixed_points.csv"
    write_csv(path, counts)
    written.append(path)

    path = out_dir / "g_series_profile.png"
    coefficient_profile_figure(g, y_value, rank, path)
    written.append(path)

    path = out_dir / "fixed_point_counts.png"
    fixed_point_figure(counts, rank, path)
    written.append(path)
    return written
