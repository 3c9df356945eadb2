"""CLI entry point for the Besov Lab."""

import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional, Tuple

import click
import numpy as np

from core.config import get_settings, load_settings, use_settings
from core.errors import BesovLabError, DomainError

logger = logging.getLogger(__name__)

DIRECTIONS = {"s2b": "MixedIntoIso", "b2s": "IsoIntoMixed"}
FIGURES = {"1": "MixedIntoIso", "2": "IsoIntoMixed"}


@contextmanager
def _reported_errors():
    """DomainError becomes a usage error (exit 2), any other lab error exit 1"""
    try:
        yield
    except DomainError as e:
        raise click.UsageError(str(e)) from e
    except BesovLabError as e:
        raise click.ClickException(str(e)) from e


def _echo_json(payload) -> None:
    from core.utils import to_jsonable

    click.echo(json.dumps(to_jsonable(payload), ensure_ascii=False, separators=(",", ":")))


def _default_out(name: str, fmt: str) -> Path:
    return Path(get_settings().output_dir) / f"{name}.{fmt}"


def _parse_schedule(entries: Tuple[str, ...]) -> Optional[List[Tuple[int, float]]]:
    """'n:R' pairs; R may be written as a multiple of pi, e.g. 4pi"""
    if not entries:
        return None
    schedule = []
    for entry in entries:
        try:
            n_text, r_text = entry.split(":")
            r_text = r_text.strip().lower()
            if r_text.endswith("pi"):
                factor = r_text[:-2] or "1"
                R = float(factor) * np.pi
            else:
                R = float(r_text)
            schedule.append((int(n_text), R))
        except ValueError as e:
            raise click.BadParameter(f"expected n:R, got {entry!r}", param_hint="--grid-schedule") from e
    return schedule


@click.group()
@click.option("--seed", type=int, default=None, help="Seed for randomized trials (default from settings)")
@click.option("--config", "config_path", type=click.Path(path_type=Path, dir_okay=False),
              default=None, help="JSON settings file")
@click.option("-v", "--verbose", is_flag=True, default=False, help="Debug logging")
@click.pass_context
def main(ctx: click.Context, seed: Optional[int], config_path: Optional[Path], verbose: bool):
    """Embedding oracle, quasi-norm evaluator and witness harness for Besov spaces."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    with _reported_errors():
        if config_path:
            use_settings(load_settings(config_path))
        settings = get_settings()
    ctx.obj = {"seed": settings.default_seed if seed is None else seed}


@main.command()
@click.option("--direction", type=click.Choice(sorted(DIRECTIONS)), default="s2b", show_default=True,
              help="s2b: S^t_{p,q}B into B^t_{p,q}; b2s: B^{td}_{p,q} into S^t_{p,q}B")
@click.option("--t", "t", required=True, help="Smoothness (rationals such as 1/2 stay exact)")
@click.option("--p", "p", required=True, help="Integrability in (0, inf]")
@click.option("--q", "q", required=True, help="Summability in (0, inf]")
@click.option("--d", "d", type=int, default=2, show_default=True, help="Dimension")
def verdict(direction: str, t: str, p: str, q: str, d: int):
    """Decide one embedding and print the verdict as JSON."""
    from core.params import make_params, verdict as decide

    with _reported_errors():
        result = decide(make_params(t, p, q, d), DIRECTIONS[direction])
    _echo_json(result.to_dict())


@main.command()
@click.option("--input", "input_path", required=True,
              type=click.Path(path_type=Path, dir_okay=False), help="Tensor container (.npy + .json sidecar)")
@click.option("--space", type=click.Choice(["iso", "mixed"]), required=True)
@click.option("--t", "t", required=True)
@click.option("--p", "p", required=True)
@click.option("--q", "q", required=True)
@click.option("--levels", type=int, default=None, help="Partition level J (default: largest that fits)")
@click.option("--emit", type=click.Choice(["csv", "json"]), default=None, help="Also write the block ledger")
@click.option("--out", type=click.Path(path_type=Path, dir_okay=False), default=None)
def norm(input_path: Path, space: str, t: str, p: str, q: str, levels: Optional[int],
         emit: Optional[str], out: Optional[Path]):
    """Evaluate an isotropic or mixed quasi-norm of a stored grid function."""
    from core.harness import emit_report
    from core.norms import besov_norm, partition_for
    from core.params import SpaceFamily
    from core.signal import GridFunction

    family = SpaceFamily.ISO if space == "iso" else SpaceFamily.MIXED
    with _reported_errors():
        f = GridFunction.load(input_path)
        level = f.grid.max_level() if levels is None else levels
        result = besov_norm(f, family, t, p, q, partition_for(family, f.grid, level))
        if emit:
            emit_report(result, emit, out or _default_out(f"norm-{space}", emit))
    _echo_json({
        "space": result.space.value,
        "value": result.value,
        "truncation_level": result.truncation_level,
        "truncated_fraction": result.truncated_fraction,
        "nonzero_blocks": len(result.nonzero_blocks),
    })


@main.command()
def cases():
    """List the witness case registry."""
    from core.harness import CASES, case_in_region

    for case in CASES.values():
        lo, hi = case.ell_range
        flag = "" if case_in_region(case) else "  [out of region]"
        click.echo(f"{case.case_id:18s} {case.family.value:3s} {str(case.rule):20s} "
                   f"ℓ={lo}..{hi}  {case.clause}{flag}")


@main.command()
@click.option("--case", "case_id", required=True, help="Witness case id (see `cases`)")
@click.option("--lmin", type=int, default=None, help="Smallest ℓ (default from the case)")
@click.option("--lmax", type=int, default=None, help="Largest ℓ (default from the case)")
@click.option("--grid-schedule", multiple=True, help="Ladder rung n:R, repeatable (R may be k·pi, e.g. 4pi)")
@click.option("--emit", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(path_type=Path, dir_okay=False), default=None)
@click.option("--workers", type=int, default=1, show_default=True, help="Rows evaluated concurrently")
@click.option("--fit/--no-fit", default=True, show_default=True, help="Fit and check the growth exponent")
def witness(case_id: str, lmin: Optional[int], lmax: Optional[int], grid_schedule: Tuple[str, ...],
            emit: str, out: Optional[Path], workers: int, fit: bool):
    """Run a witness case across ℓ and write its ratio table."""
    from core.harness import assess_case, emit_report, get_case, run_witness

    schedule = _parse_schedule(grid_schedule)
    with _reported_errors():
        case = get_case(case_id)
        if lmin is not None or lmax is not None:
            lo, hi = case.ell_range
            case = case.with_range(lmin if lmin is not None else lo, lmax if lmax is not None else hi)
        table = run_witness(case, schedule, workers=workers)
        path = emit_report(table, emit, out or _default_out(case.case_id, emit))
    click.echo(str(path))

    if fit:
        try:
            assessment = assess_case(case, table)
        except BesovLabError as e:
            click.echo(f"fit skipped: {e}", err=True)
        else:
            status = "ok" if assessment.passed else "FAILED"
            click.echo(f"{case.case_id}: {assessment.fit.model.value} exponent "
                       f"{assessment.fit.exponent:.4f} ({status}: {assessment.reason})", err=True)


@main.command()
@click.option("--figure", type=click.Choice(sorted(FIGURES)), required=True,
              help="1: S into B (critical line t = 0); 2: B into S (critical line max(0, 1/p − 1))")
@click.option("--extent", type=float, default=2.0, show_default=True)
@click.option("--d", "d", type=int, default=2, show_default=True)
@click.option("--emit", type=click.Choice(["csv", "json"]), default="json", show_default=True)
@click.option("--out", type=click.Path(path_type=Path, dir_okay=False), default=None)
def regions(figure: str, extent: float, d: int, emit: str, out: Optional[Path]):
    """Write the (1/p, t) region diagram of one embedding direction."""
    from core.harness import emit_report
    from core.params import diagram_disagreements, region_diagram

    with _reported_errors():
        diagram = region_diagram(FIGURES[figure], d, extent)
        mismatches = diagram_disagreements(diagram)
        path = emit_report(diagram, emit, out or _default_out(f"regions-{figure}", emit))
    click.echo(str(path))
    if mismatches:
        click.echo(f"{len(mismatches)} region samples disagree with the oracle", err=True)


@main.command("probe-multiplier")
@click.option("--p", "p_values", multiple=True, required=True, help="Exponent, repeatable")
@click.option("--jmax", type=int, required=True, help="Largest cube level")
@click.option("--trials", type=int, default=20, show_default=True)
@click.option("--d", "d", type=int, default=2, show_default=True)
@click.option("--emit", type=click.Choice(["csv", "json"]), default=None)
@click.option("--out", type=click.Path(path_type=Path, dir_okay=False), default=None)
@click.pass_context
def probe_multiplier(ctx: click.Context, p_values: Tuple[str, ...], jmax: int, trials: int, d: int,
                     emit: Optional[str], out: Optional[Path]):
    """Maxima of the cube/tensor multiplier ratios over random spectra."""
    from core.harness import emit_report
    from core.norms import multiplier_probe_sweep, trend_slope

    if jmax < 1:
        raise click.BadParameter("must be at least 1", param_hint="--jmax")
    rng = np.random.default_rng(ctx.obj["seed"])
    with _reported_errors():
        table = multiplier_probe_sweep(list(p_values), range(1, jmax + 1), trials, rng, d=d)
        if emit:
            click.echo(str(emit_report(table, emit, out or _default_out("probe-multiplier", emit))))
    click.echo(table.to_string(index=False))

    for p, rows in table.groupby("p", sort=False):
        if len(rows) >= 2:
            slope = trend_slope(rows["j"], rows["max_ratio_ct3"])
            logger.info("p=%s ct3 trend slope %.4f", p, slope)


if __name__ == "__main__":
    main()
