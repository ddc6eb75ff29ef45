"""
Command-line frontend.

    nottingham-torsion reduce --p 3 --char "1:1,2:3,4:3"
    nottingham-torsion bound --p 2 --l 5 --m 15
    nottingham-torsion classify --p 2 --l 5 --m 15 --format json
    nottingham-torsion power-conj --p 2 --l 3 --m 6 --n 3
    nottingham-torsion tables --p 3 --l 2 --m 8
    nottingham-torsion verify --trials 200

Exit status: 0 success, 1 verification failure, 2 usage error, 3 budget refusal.
"""
from __future__ import annotations

import asyncio
import functools
import logging
import random
import time
from typing import Any, Callable

import click

from nottingham_torsion.characters import (TypeLM, break_sequence, format_character_pairs, parse_character_literal,
                                           random_character, validate_type)
from nottingham_torsion.equivalence import (CountMethod, apartition_reduced_forms, bound_B, bound_parameters,
                                            classify_by_reduction, partition_reduced_forms,
                                            power_conjugacy_oracle, power_conjugacy_predicate)
from nottingham_torsion.reduction import reduce, verify_witness
from nottingham_torsion.utils.config import Settings, load_settings
from nottingham_torsion.utils.errors import BudgetExceededError, NottinghamError, UsageError
from .cli_schema import CommandRequest, ExitStatus, OutputFormat, Subcommand
from .report_emitters import check_payload, class_report_payload, emit, witness_payload
from .verification import run_acceptance_suite

logger = logging.getLogger(__name__)


def _reduce(request: CommandRequest) -> tuple[ExitStatus, dict[str, Any]]:
    chi = parse_character_literal(request.character, request.prime)
    form, witness = reduce(chi)
    reduced = form.to_character()
    check = verify_witness(chi, reduced, witness.u)
    payload = {
        "kind": "reduce",
        "p": chi.prime.p,
        "input": format_character_pairs(chi),
        "type": str(form.type),
        "reduced": format_character_pairs(reduced),
        "x_l": form.x_l,
        "witness": witness_payload(witness),
        "verified": bool(check),
        "verdict": check.verdict.value,
    }
    return (ExitStatus.SUCCESS if check else ExitStatus.VERIFICATION_FAILED), payload


def _classify(request: CommandRequest) -> tuple[ExitStatus, dict[str, Any]]:
    if request.method is CountMethod.CANONICAL_REDUCE:
        report = classify_by_reduction(request.prime, request.l, request.m)
    elif request.jobs > 1:
        report = asyncio.run(apartition_reduced_forms(request.prime, request.l, request.m, request.budget,
                                                      request.jobs))
    else:
        report = partition_reduced_forms(request.prime, request.l, request.m, request.budget)
    return ExitStatus.SUCCESS, class_report_payload(report)


def _bound(request: CommandRequest) -> tuple[ExitStatus, dict[str, Any]]:
    k, epsilon = bound_parameters(request.prime, request.l, request.m)
    return ExitStatus.SUCCESS, {"kind": "bound", "p": request.prime, "l": request.l, "m": request.m,
                                "B": bound_B(request.prime, request.l, request.m), "k": k, "epsilon": epsilon}


def _table_row(request: CommandRequest, l: int, m: int) -> dict[str, Any]:
    p = request.prime
    row = {"p": p, "l": l, "m": m, "valid": validate_type(p, l, m), "B": "", "d": "", "method": "",
           "runtime_ms": ""}
    if not row["valid"]:
        return row
    row["B"] = bound_B(p, l, m)
    method = request.method
    if method is CountMethod.CANONICAL_REDUCE and l >= p:
        method = CountMethod.ORACLE_PARTITION
    started = time.perf_counter()
    try:
        if method is CountMethod.CANONICAL_REDUCE:
            row["d"] = classify_by_reduction(p, l, m).class_count
        else:
            row["d"] = partition_reduced_forms(p, l, m, request.budget).class_count
        row["method"] = method.value
    except BudgetExceededError:
        row["method"] = "refused"
    row["runtime_ms"] = round((time.perf_counter() - started) * 1000, 3)
    return row


def _tables(request: CommandRequest) -> tuple[ExitStatus, dict[str, Any]]:
    rows = [_table_row(request, l, m)
            for l in range(1, request.l + 1) for m in range(request.prime * l, request.m + 1)]
    return ExitStatus.SUCCESS, {"kind": "tables", "rows": rows}


def _power_conj(request: CommandRequest) -> tuple[ExitStatus, dict[str, Any]]:
    p, l, m, n = request.prime, request.l, request.m, request.n
    predicate = power_conjugacy_predicate(p, l, m, n)
    if n % p == 0:
        raise UsageError(f"--n must be prime to p={p}, got {n}")
    if request.character is not None:
        chi = parse_character_literal(request.character, p)
        if break_sequence(chi) != TypeLM(l, m):
            raise UsageError(f"--char has type {break_sequence(chi)}, not <{l},{m}>")
    else:
        chi = random_character(p, l, m, random.Random(request.seed))
    payload = {"kind": "power-conj", "p": p, "l": l, "m": m, "n": n, "predicate": predicate,
               "character": format_character_pairs(chi)}
    try:
        observed, witness = power_conjugacy_oracle(chi, n, request.budget)
        payload["oracle"] = observed
        payload["agrees"] = observed == predicate
        if witness is not None:
            payload["witness"] = witness_payload(witness)
    except BudgetExceededError as e:
        payload["oracle"] = f"skipped: {e}"
    except NottinghamError as e:
        payload["oracle"] = f"not applicable: {e}"
    return ExitStatus.SUCCESS, payload


def _verify(request: CommandRequest) -> tuple[ExitStatus, dict[str, Any]]:
    settings = Settings(budget=request.budget, seed=request.seed, jobs=request.jobs, trials=request.trials)
    payload = check_payload(run_acceptance_suite(settings))
    return (ExitStatus.SUCCESS if payload["passed"] else ExitStatus.VERIFICATION_FAILED), payload


_HANDLERS: dict[Subcommand, Callable[[CommandRequest], tuple[ExitStatus, dict[str, Any]]]] = {
    Subcommand.REDUCE: _reduce,
    Subcommand.CLASSIFY: _classify,
    Subcommand.BOUND: _bound,
    Subcommand.TABLES: _tables,
    Subcommand.POWER_CONJ: _power_conj,
    Subcommand.VERIFY: _verify,
}


def run(request: CommandRequest) -> tuple[ExitStatus, str]:
    """
    Execute one request.

    Args:
        request (CommandRequest): The parsed invocation.

    Returns:
        tuple[ExitStatus, str]: The exit status and the rendered report, or an
            "error: ..." line for usage errors and budget refusals.
    """
    try:
        request.validate()
        status, payload = _HANDLERS[request.subcommand](request)
    except BudgetExceededError as e:
        return ExitStatus.BUDGET_REFUSED, f"error: budget refused: {e}"
    except (NottinghamError, ValueError) as e:
        logger.debug("usage error in %s", request.subcommand.value, exc_info=True)
        return ExitStatus.USAGE_ERROR, f"error: {e}"
    return status, emit(payload, request.output_format)


def _common_options(command: Callable, default_format: OutputFormat = OutputFormat.TEXT) -> Callable:
    options = [
        click.option("--budget", type=int, default=None, help="Candidate budget for exhaustive searches."),
        click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]),
                     default=default_format.value, show_default=True),
        click.option("--seed", type=int, default=None, help="Seed for randomized choices."),
        click.option("--jobs", type=int, default=None, help="Worker processes."),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _dispatch(ctx: click.Context, subcommand: Subcommand, **kwargs) -> None:
    settings: Settings = ctx.obj
    settings = settings.override(budget=kwargs.pop("budget", None), seed=kwargs.pop("seed", None),
                                 jobs=kwargs.pop("jobs", None), trials=kwargs.pop("trials", None))
    request = CommandRequest(subcommand, budget=settings.budget, seed=settings.seed, jobs=settings.jobs,
                             trials=settings.trials, **kwargs)
    status, output = run(request)
    click.echo(output, err=status in (ExitStatus.USAGE_ERROR, ExitStatus.BUDGET_REFUSED))
    ctx.exit(int(status))


@click.group()
@click.option("--log-level", default=None, help="Logging level (default from NOTT_LOG_LEVEL).")
@click.pass_context
def main(ctx: click.Context, log_level: str | None) -> None:
    """Order-p^2 torsion in the Nottingham group over F_p."""
    try:
        settings = load_settings()
    except NottinghamError as e:
        raise click.UsageError(str(e))
    settings = settings.override(log_level=log_level.upper() if log_level else None)
    logging.basicConfig(level=settings.log_level, format="%(asctime)s %(name)s %(levelname)s %(message)s")
    ctx.obj = settings


@main.command("reduce")
@click.option("--p", "prime", type=int, required=True)
@click.option("--char", "character", required=True, help='Character literal, e.g. "5:1,15:2".')
@_common_options
@click.pass_context
def reduce_command(ctx: click.Context, **kwargs) -> None:
    """Reduce a character and print the certifying witness."""
    _dispatch(ctx, Subcommand.REDUCE, **kwargs)


@main.command("classify")
@click.option("--p", "prime", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--method", type=click.Choice([c.value for c in CountMethod]),
              default=CountMethod.ORACLE_PARTITION.value, show_default=True)
@_common_options
@click.pass_context
def classify_command(ctx: click.Context, **kwargs) -> None:
    """Strict classes of type <l, m>."""
    _dispatch(ctx, Subcommand.CLASSIFY, **kwargs)


@main.command("bound")
@click.option("--p", "prime", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@_common_options
@click.pass_context
def bound_command(ctx: click.Context, **kwargs) -> None:
    """B(p, l, m) with its exponents k and epsilon."""
    _dispatch(ctx, Subcommand.BOUND, **kwargs)


@main.command("tables")
@click.option("--p", "prime", type=int, required=True)
@click.option("--l", "l", type=int, required=True, help="Largest first break.")
@click.option("--m", "m", type=int, required=True, help="Largest second break.")
@click.option("--method", type=click.Choice([c.value for c in CountMethod]),
              default=CountMethod.ORACLE_PARTITION.value, show_default=True)
@functools.partial(_common_options, default_format=OutputFormat.CSV)
@click.pass_context
def tables_command(ctx: click.Context, **kwargs) -> None:
    """Bound and class count over a grid of types."""
    _dispatch(ctx, Subcommand.TABLES, **kwargs)


@main.command("power-conj")
@click.option("--p", "prime", type=int, required=True)
@click.option("--l", "l", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--char", "character", default=None, help="Character of the type; random if omitted.")
@_common_options
@click.pass_context
def power_conj_command(ctx: click.Context, **kwargs) -> None:
    """Whether u and u^n are conjugate."""
    _dispatch(ctx, Subcommand.POWER_CONJ, **kwargs)


@main.command("verify")
@click.option("--trials", type=int, default=None, help="Randomized cases per property check.")
@_common_options
@click.pass_context
def verify_command(ctx: click.Context, **kwargs) -> None:
    """Run the acceptance suite."""
    _dispatch(ctx, Subcommand.VERIFY, **kwargs)
