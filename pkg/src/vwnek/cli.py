"""Command line interface.

Subcommands compute instanton series (nekrasov), lattice theta functions
(theta), universal wall-crossing series (extract), vertical partition
functions for a user-supplied surface (vw), identity verifications
(verify ...), and CSV-plus-figure reports (report).

Exit codes: 0 on success and on verified identities, 1 when a
verification fails or a computation cannot be completed, 2 on usage
errors (bad flags, malformed input files).  Output on stdout is
byte-identical across runs with the same flags and seed; notes and
warnings go to stderr.

Exact values are printed in the package's canonical text renderings; the
--json mode wraps the same canonical strings (never floats) in a stable,
sorted JSON object.
"""

from __future__ import annotations

import dataclasses
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import __version__, assembler, extraction
from .cache import set_cache_dir
from .errors import (
    ExtractionRankDeficient,
    InvalidSurface,
    PoleCancellationFailure,
    SeriesOrderInsufficient,
    SingularPoint,
    SpecializedWeightTrivial,
    UniversalityResidual,
    WindowExceeded,
)
from .modular import theta_lattice
from .nekrasov import (
    nekrasov_series,
    verify_framing_inversion,
    verify_framing_permutation,
    verify_simultaneous_inversion,
)
from .blowup import verify_klt
from .vertical import verify_route_equality
from .verification import VerificationReport
from .weights import SubstitutionSpec

# ----------------------------------------------------------------------------
# shared helpers
# ----------------------------------------------------------------------------

_COMPUTE_ERRORS = (
    PoleCancellationFailure,
    UniversalityResidual,
    ExtractionRankDeficient,
    SeriesOrderInsufficient,
)


def _parse_int_tuple(text: str, what: str, expect: int | None = None) -> tuple[int, ...]:
    try:
        values = tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise click.UsageError(f"{what} must be comma-separated integers, got {text!r}")
    if expect is not None and len(values) != expect:
        raise click.UsageError(f"{what} needs {expect} entries, got {len(values)}")
    return values


def _series_terms(series) -> dict:
    return {str(e): series.terms[e].render() for e in sorted(series.terms)}


def _echo_series(series, as_json: bool, name: str, **params) -> None:
    if as_json:
        payload = {"object": name, "order": str(series.order), "terms": _series_terms(series)}
        payload.update(params)
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(series.render())


def _finish_report(report: VerificationReport, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        for line in report.render_lines():
            click.echo(line)
    if not report.passed:
        sys.exit(1)


def _retrying(fn, rank: int, order: int, **kwargs):
    """Run a series-backed verifier, re-extracting one order deeper if the
    default inner order turns out not to cover the requested window."""
    try:
        return fn(rank, order, **kwargs)
    except SeriesOrderInsufficient:
        click.echo("# inner extraction order insufficient; retrying deeper", err=True)
        series = extraction.extract(rank, int(order) + 2)
        return fn(rank, order, series=series, **kwargs)


_json_flag = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of text.")
_rank_opt = click.option("--rank", type=click.IntRange(min=1), default=2, show_default=True)


# ----------------------------------------------------------------------------
# top-level group
# ----------------------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="vwnek")
@click.option(
    "--cache-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Series cache directory (overrides VWNEK_CACHE_DIR).",
)
@click.option("--no-cache", is_flag=True, help="Disable the series cache for this run.")
def main(cache_dir: str | None, no_cache: bool) -> None:
    """Exact wall-crossing series for framed sheaves on the plane."""
    if no_cache:
        set_cache_dir(None)
    elif cache_dir is not None:
        set_cache_dir(cache_dir)


# ----------------------------------------------------------------------------
# series commands
# ----------------------------------------------------------------------------


@main.command()
@click.option("--rank", type=click.IntRange(min=1), required=True)
@click.option("--order", type=click.IntRange(min=0), required=True, help="Top instanton number.")
@click.option(
    "--alpha",
    type=str,
    default=None,
    help="Substitution direction A1,A2 for t1 -> s^A1, t2 -> s^A2 [default: 1,rank+2].",
)
@click.option(
    "--ei-spec",
    type=str,
    default=None,
    help=(
        "Framing substitution, one A:B pair per i = 1..rank-1 (comma separated), "
        "sending e_i -> s^A * Y^B [default: 0:-2i]."
    ),
)
@_json_flag
def nekrasov(rank: int, order: int, alpha: str | None, ei_spec: str | None, as_json: bool) -> None:
    """Instanton series of the plane under a one-parameter substitution."""
    direction = (1, rank + 2) if alpha is None else _parse_int_tuple(alpha, "--alpha", 2)
    if ei_spec is None:
        images = tuple((0, -2 * i) for i in range(rank))
    else:
        entries = [part.strip() for part in ei_spec.split(",")] if ei_spec.strip() else []
        if len(entries) != rank - 1:
            raise click.UsageError(f"--ei-spec needs {rank - 1} entries, got {len(entries)}")
        images = [(0, 0)]
        for i, entry in enumerate(entries, start=1):
            try:
                a_text, b_text = entry.split(":")
                images.append((int(a_text), int(b_text)))
            except ValueError:
                raise click.UsageError(f"--ei-spec entry {i} must look like A:B, got {entry!r}")
        images = tuple(images)
    try:
        spec = SubstitutionSpec(direction[0], direction[1], images)
    except ValueError as err:
        raise click.UsageError(str(err))
    try:
        series = nekrasov_series(rank, order, spec)
    except (SpecializedWeightTrivial, WindowExceeded, SingularPoint) as err:
        raise click.UsageError(f"degenerate substitution: {err}")
    _echo_series(series, as_json, "nekrasov-series", rank=rank)


@main.command()
@_rank_opt
@click.option("--ell", type=int, default=0, show_default=True, help="Glue class mod rank.")
@click.option("--order", type=str, default="4", show_default=True, help="q-order (integer or p/q).")
@_json_flag
def theta(rank: int, ell: int, order: str, as_json: bool) -> None:
    """Theta function of the A_(rank-1) lattice with a glue shift."""
    try:
        order_q = Fraction(order)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"--order must be a rational number, got {order!r}")
    series = theta_lattice(rank, ell, order_q)
    _echo_series(series, as_json, "theta-series", rank=rank, ell=ell)


@main.command()
@click.option("--rank", type=click.IntRange(min=2), required=True)
@click.option("--order", type=click.IntRange(min=1), required=True)
@click.option(
    "--out",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Write the canonical text rendering to this file.",
)
@_json_flag
def extract(rank: int, order: int, out: str | None, as_json: bool) -> None:
    """Determine the universal series A, B, E_i, E_ij from toric data."""
    try:
        series_set = extraction.extract(rank, order)
    except _COMPUTE_ERRORS as err:
        raise click.ClickException(str(err))
    text = series_set.render()
    if out is not None:
        Path(out).write_text(text + "\n")
    if as_json:
        payload = {
            "object": "universal-series",
            "rank": series_set.rank,
            "order": str(series_set.order),
            "configs": series_set.config_digest,
            "A_bar": _series_terms(series_set.a_bar),
            "B_bar": _series_terms(series_set.b_bar),
            "E": {str(i): _series_terms(s) for i, s in sorted(series_set.e_single.items())},
            "E_pair": {
                f"{i},{j}": _series_terms(s) for (i, j), s in sorted(series_set.e_pair.items())
            },
        }
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    elif out is None:
        click.echo(text)
    else:
        click.echo(f"wrote universal series rank={rank} order={order} to {out}")


# ----------------------------------------------------------------------------
# verify group
# ----------------------------------------------------------------------------


@main.group()
def verify() -> None:
    """Check a proven identity exactly; exit 0 if it holds."""


@verify.command()
@_rank_opt
@click.option("--level", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=25, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_json_flag
def permutation(rank: int, level: int, trials: int, seed: int, as_json: bool) -> None:
    """Framing-permutation invariance of the fixed-point sum."""
    _finish_report(verify_framing_permutation(rank, level, trials, seed), as_json)


@verify.command()
@_rank_opt
@click.option("--level", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--trials", type=click.IntRange(min=1), default=25, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_json_flag
def inversion(rank: int, level: int, trials: int, seed: int, as_json: bool) -> None:
    """Framing-inversion invariance, separately and jointly with t and Y."""
    report = verify_framing_inversion(rank, level, trials, seed)
    report.merge(verify_simultaneous_inversion(rank, level, trials, seed))
    _finish_report(report, as_json)


@verify.command()
@_rank_opt
@click.option("--ell", type=int, default=0, show_default=True, help="First Chern class mod rank.")
@click.option("--order", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--alpha", type=str, default=None, help="Substitution direction A1,A2.")
@_json_flag
def klt(rank: int, ell: int, order: int, alpha: str | None, as_json: bool) -> None:
    """Blow-up wall-crossing: theta times the plane series, order by order."""
    direction = None if alpha is None else _parse_int_tuple(alpha, "--alpha", 2)
    try:
        report = verify_klt(rank, ell, order, direction)
    except (SpecializedWeightTrivial, WindowExceeded) as err:
        raise click.UsageError(f"degenerate substitution: {err}")
    _finish_report(report, as_json)


@verify.command("a-formula")
@click.option("--rank", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--order", type=click.IntRange(min=1), default=3, show_default=True)
@_json_flag
def a_formula(rank: int, order: int, as_json: bool) -> None:
    """Closed infinite-product form of the extracted A series."""
    try:
        report = _retrying(extraction.verify_A_closed_form, rank, order)
    except _COMPUTE_ERRORS as err:
        raise click.ClickException(str(err))
    _finish_report(report, as_json)


@verify.command("symmetry-relations")
@click.option("--rank", type=click.IntRange(min=2), default=3, show_default=True)
@click.option("--order", type=click.IntRange(min=1), default=2, show_default=True)
@_json_flag
def symmetry_relations(rank: int, order: int, as_json: bool) -> None:
    """The index symmetry E_i = E_(r-i), E_ij = E_(r-j, r-i)."""
    try:
        report = _retrying(extraction.verify_symmetry_relations, rank, order)
    except _COMPUTE_ERRORS as err:
        raise click.ClickException(str(err))
    _finish_report(report, as_json)


@verify.command("blowup-relations")
@click.option("--rank", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--order", type=click.IntRange(min=1), default=2, show_default=True)
@click.option(
    "--eps-order",
    type=click.IntRange(min=0),
    default=None,
    help="q-order for the root-of-unity form [default: same as --order].",
)
@_json_flag
def blowup_relations(rank: int, order: int, eps_order: int | None, as_json: bool) -> None:
    """Theta quotients from subset sums of the C series, plus the
    root-of-unity transform of the same sums."""
    try:
        report = _retrying(extraction.verify_blowup_relations, rank, order, eps_order=eps_order)
    except _COMPUTE_ERRORS as err:
        raise click.ClickException(str(err))
    _finish_report(report, as_json)


@verify.command("route-equality")
@click.option("--max-rank", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--level", type=click.IntRange(min=0), default=2, show_default=True)
@_json_flag
def route_equality(max_rank: int, level: int, as_json: bool) -> None:
    """Vertical-factor route equals the instanton-substitution route."""
    _finish_report(verify_route_equality(max_rank, level), as_json)


# ----------------------------------------------------------------------------
# assembly and report
# ----------------------------------------------------------------------------


@main.command()
@click.option(
    "--surface",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="JSON surface description (chi, K2, gram, K, classes, c1).",
)
@click.option("--rank", type=click.IntRange(min=2), default=2, show_default=True)
@click.option("--c1", type=str, default=None, help="Override the surface's c1 (comma ints).")
@click.option("--order", type=click.IntRange(min=0), required=True)
@click.option(
    "--inner-order",
    type=click.IntRange(min=1),
    default=None,
    help="Extraction order for the universal series [default: order + rank].",
)
@_json_flag
def vw(
    surface: str, rank: int, c1: str | None, order: int, inner_order: int | None, as_json: bool
) -> None:
    """Vertical partition function of a surface, divided by its prefactor
    (y^(1/2) - y^(-1/2))^chi."""
    try:
        surf = assembler.SurfaceInput.from_json(Path(surface).read_text())
    except (InvalidSurface, OSError) as err:
        raise click.UsageError(str(err))
    if c1 is not None:
        surf = dataclasses.replace(
            surf, c1=_parse_int_tuple(c1, "--c1", surf.lattice_rank)
        )
    inner = inner_order if inner_order is not None else order + rank
    series = None
    for _attempt in range(3):
        try:
            series_set = extraction.extract(rank, inner)
            series = assembler.vertical_partition_function(surf, rank, order, series_set)
            break
        except SeriesOrderInsufficient as err:
            deficit = getattr(err, "deficit", None)
            inner += math.ceil(deficit) if deficit is not None else 1
            click.echo(f"# extraction order raised to {inner}", err=True)
        except (UniversalityResidual, ExtractionRankDeficient) as err:
            raise click.ClickException(str(err))
    if series is None:
        raise click.ClickException("could not reach the requested order in 3 attempts")
    _echo_series(
        series, as_json, "vertical-partition-function", rank=rank, c1=list(surf.c1)
    )


@main.command()
@_rank_opt
@click.option("--order", type=click.IntRange(min=1), default=3, show_default=True)
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False),
    required=True,
    help="Directory for the CSV tables and PNG figures.",
)
@click.option("--seed", type=int, default=0, show_default=True)
@_json_flag
def report(rank: int, order: int, out_dir: str, seed: int, as_json: bool) -> None:
    """Write CSV tables and PNG figures for the plane's G-series and
    fixed-point counts."""
    from . import reporting

    paths = reporting.write_report(rank, order, out_dir, seed)
    if as_json:
        click.echo(
            json.dumps({"object": "report", "files": [str(p) for p in paths]}, indent=2)
        )
    else:
        for path in paths:
            click.echo(str(path))


if __name__ == "__main__":
    main()
