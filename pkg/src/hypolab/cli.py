"""Batch CLI: a thin client of the verdict service.

Every subcommand builds one JSON request and sends it to the service.  By
default the requests run against an in-process application instance (no
server needed); point --base-url at a running ``uvicorn hypolab.service:app``
to use a remote one.  JSON is the canonical output; --format csv flattens
complex rationals into re/im string columns for plot pipelines.

Exit codes: 0 success, 2 input or request error, 3 when --fail-on-violation
is set and the report contains a violation or refutation.
"""

from __future__ import annotations

import asyncio
import csv
import io
import json
import sys
from typing import Callable, Optional

import click
import httpx

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_VIOLATION = 3


def _call_inprocess(path: str, payload: dict) -> httpx.Response:
    from .service.app import app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://hypolab.local") as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _call_remote(base_url: str, path: str, payload: dict) -> httpx.Response:
    with httpx.Client(base_url=base_url, timeout=None) as client:
        return client.post(path, json=payload)


def _request(ctx: click.Context, path: str, payload: dict) -> dict:
    base_url = ctx.obj.get("base_url")
    try:
        response = _call_remote(base_url, path, payload) if base_url else _call_inprocess(path, payload)
    except httpx.HTTPError as exc:
        click.echo(f"request failed: {exc}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    if response.status_code != 200:
        try:
            click.echo(json.dumps(response.json(), indent=2), err=True)
        except ValueError:
            click.echo(response.text, err=True)
        sys.exit(EXIT_INPUT_ERROR)
    return response.json()


def _load_symbol(symbol: Optional[str], symbol_file: Optional[str]) -> dict:
    if (symbol is None) == (symbol_file is None):
        click.echo("provide exactly one of --symbol or --symbol-file", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    text = symbol if symbol is not None else open(symbol_file, "r", encoding="utf-8").read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        click.echo(f"malformed symbol JSON: {exc}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    if not isinstance(data, dict):
        click.echo("symbol JSON must be an object", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    return data


def _flatten(value: object, prefix: str, row: dict) -> None:
    if isinstance(value, dict):
        if set(value) == {"re", "im"}:
            row[f"{prefix}.re"] = value["re"]
            row[f"{prefix}.im"] = value["im"]
            return
        for key, sub in value.items():
            _flatten(sub, f"{prefix}.{key}" if prefix else str(key), row)
        return
    if isinstance(value, list):
        row[prefix] = json.dumps(value)
        return
    row[prefix] = value


def _to_csv(data: dict) -> str:
    buffer = io.StringIO()
    if isinstance(data.get("rows"), list):
        rows = []
        for item in data["rows"]:
            row: dict = {}
            _flatten(item, "", row)
            rows.append(row)
        fields: list = []
        for row in rows:
            for key in row:
                if key not in fields:
                    fields.append(key)
        writer = csv.DictWriter(buffer, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    elif isinstance(data.get("eigenvalues"), list):
        writer = csv.writer(buffer)
        writer.writerow(["index", "eigenvalue"])
        for i, value in enumerate(data["eigenvalues"]):
            writer.writerow([i, value])
    elif isinstance(data.get("entries"), list):
        writer = csv.writer(buffer)
        writer.writerow(["i", "j", "re", "im"])
        for i, row in enumerate(data["entries"]):
            for j, entry in enumerate(row):
                writer.writerow([i, j, entry["re"], entry["im"]])
    else:
        flat: dict = {}
        _flatten(data, "", flat)
        writer = csv.writer(buffer)
        writer.writerow(["key", "value"])
        for key in flat:
            writer.writerow([key, flat[key]])
    return buffer.getvalue()


def _emit(ctx: click.Context, data: dict, violated: bool) -> None:
    fmt = ctx.obj.get("format", "json")
    output = ctx.obj.get("output")
    text = _to_csv(data) if fmt == "csv" else json.dumps(data, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)
    if violated and ctx.obj.get("fail_on_violation"):
        sys.exit(EXIT_VIOLATION)


def common_options(fn: Callable) -> Callable:
    fn = click.option("--output", type=click.Path(writable=True), default=None, help="Write the report to a file.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)(fn)
    fn = click.option("--fail-on-violation", is_flag=True, help="Exit 3 if a violation/refutation is found.")(fn)
    return fn


def symbol_options(fn: Callable) -> Callable:
    fn = click.option("--symbol", default=None, help="Symbol as inline JSON.")(fn)
    fn = click.option("--symbol-file", type=click.Path(exists=True), default=None, help="Symbol JSON file.")(fn)
    return fn


def _store_common(ctx: click.Context, fmt: str, output: Optional[str], fail_on_violation: bool) -> None:
    ctx.obj["format"] = fmt
    ctx.obj["output"] = output
    ctx.obj["fail_on_violation"] = fail_on_violation


@click.group()
@click.option("--base-url", envvar="HYPOLAB_BASE_URL", default=None, help="Remote service URL; defaults to in-process.")
@click.pass_context
def main(ctx: click.Context, base_url: Optional[str]) -> None:
    """Exact hyponormality/normality verdicts for Bergman Toeplitz operators."""
    ctx.ensure_object(dict)
    ctx.obj["base_url"] = base_url


@main.command()
@click.argument("u", type=int)
@click.argument("v", type=int)
@common_options
@click.pass_context
def project(ctx, u, v, fmt, output, fail_on_violation):
    """Projection of conj(z)^U z^V onto the analytic part."""
    _store_common(ctx, fmt, output, fail_on_violation)
    _emit(ctx, _request(ctx, "/project", {"u": u, "v": v}), violated=False)


@main.command()
@click.argument("u", type=int)
@click.argument("v", type=int)
@click.argument("w", type=int)
@click.argument("t", type=int)
@common_options
@click.pass_context
def inner(ctx, u, v, w, t, fmt, output, fail_on_violation):
    """Inner product of the projections of conj(z)^U z^V and conj(z)^W z^T."""
    _store_common(ctx, fmt, output, fail_on_violation)
    _emit(ctx, _request(ctx, "/inner", {"u": u, "v": v, "w": w, "t": t}), violated=False)


@main.command("commutator-element")
@symbol_options
@click.option("--src", type=int, required=True)
@click.option("--dst", type=int, required=True)
@common_options
@click.pass_context
def commutator_element_cmd(ctx, symbol, symbol_file, src, dst, fmt, output, fail_on_violation):
    """Exact <C z^src, z^dst> for the self-commutator of the symbol."""
    _store_common(ctx, fmt, output, fail_on_violation)
    payload = {"symbol": _load_symbol(symbol, symbol_file), "src": src, "dst": dst}
    _emit(ctx, _request(ctx, "/commutator-element", payload), violated=False)


@main.command()
@symbol_options
@click.option("--k", type=int, required=True, help="Base ladder degree.")
@common_options
@click.pass_context
def qform(ctx, symbol, symbol_file, k, fmt, output, fail_on_violation):
    """Closed-form 3x3 ladder matrix of a balanced four-term symbol."""
    _store_common(ctx, fmt, output, fail_on_violation)
    payload = {"symbol": _load_symbol(symbol, symbol_file), "k": k}
    _emit(ctx, _request(ctx, "/qform", payload), violated=False)


@main.command()
@symbol_options
@click.option("--degrees", required=True, help="Comma-separated strictly increasing degrees, e.g. 0,1,2.")
@common_options
@click.pass_context
def compress(ctx, symbol, symbol_file, degrees, fmt, output, fail_on_violation):
    """Compression matrix of the self-commutator on chosen monomials."""
    _store_common(ctx, fmt, output, fail_on_violation)
    try:
        degree_list = [int(x) for x in degrees.split(",") if x.strip() != ""]
    except ValueError:
        click.echo("bad --degrees list", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    payload = {"symbol": _load_symbol(symbol, symbol_file), "degrees": degree_list}
    _emit(ctx, _request(ctx, "/compress", payload), violated=False)


@main.command()
@symbol_options
@click.option("--max-degree", type=click.IntRange(0, 2000), required=True)
@common_options
@click.pass_context
def scan(ctx, symbol, symbol_file, max_degree, fmt, output, fail_on_violation):
    """Exact PSD scan of compressions on degrees 0..max_degree."""
    _store_common(ctx, fmt, output, fail_on_violation)
    payload = {"symbol": _load_symbol(symbol, symbol_file), "max_degree": max_degree}
    data = _request(ctx, "/scan", payload)
    _emit(ctx, data, violated=data.get("verdict") == "REFUTED")


@main.command()
@symbol_options
@common_options
@click.pass_context
def limits(ctx, symbol, symbol_file, fmt, output, fail_on_violation):
    """Asymptotic limits a and rho of the scaled ladder matrix."""
    _store_common(ctx, fmt, output, fail_on_violation)
    _emit(ctx, _request(ctx, "/limits", {"symbol": _load_symbol(symbol, symbol_file)}), violated=False)


def _model_payload(symbol, symbol_file, a, rho) -> dict:
    if a is not None or rho is not None:
        if symbol is not None or symbol_file is not None or a is None or rho is None:
            click.echo("provide either a symbol source or both --a and --rho", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        return {"model": {"a": a, "rho": rho}}
    return {"symbol": _load_symbol(symbol, symbol_file)}


@main.command()
@symbol_options
@click.option("--a", default=None, help="Diagonal limit (rational), instead of a symbol.")
@click.option("--rho", default=None, help="Superdiagonal limit (complex literal), instead of a symbol.")
@common_options
@click.pass_context
def spectrum(ctx, symbol, symbol_file, a, rho, fmt, output, fail_on_violation):
    """Spectrum [a - 2|rho|, a + 2|rho|] of the limiting tridiagonal matrix."""
    _store_common(ctx, fmt, output, fail_on_violation)
    _emit(ctx, _request(ctx, "/spectrum", _model_payload(symbol, symbol_file, a, rho)), violated=False)


@main.command()
@symbol_options
@click.option("--a", default=None, help="Diagonal limit (rational), instead of a symbol.")
@click.option("--rho", default=None, help="Superdiagonal limit (complex literal), instead of a symbol.")
@click.option("--n", type=click.IntRange(1, 100000), required=True, help="Section size.")
@common_options
@click.pass_context
def sections(ctx, symbol, symbol_file, a, rho, n, fmt, output, fail_on_violation):
    """Eigenvalues of the N x N section of the limiting tridiagonal matrix."""
    _store_common(ctx, fmt, output, fail_on_violation)
    payload = _model_payload(symbol, symbol_file, a, rho)
    payload["n"] = n
    _emit(ctx, _request(ctx, "/sections", payload), violated=False)


@main.command()
@symbol_options
@click.option("--k-list", required=True, help="Comma-separated base degrees, e.g. 100,200,400.")
@common_options
@click.pass_context
def converge(ctx, symbol, symbol_file, k_list, fmt, output, fail_on_violation):
    """Exact k^3-scaled ladder entries and deviations from the limits."""
    _store_common(ctx, fmt, output, fail_on_violation)
    try:
        ks = [int(x) for x in k_list.split(",") if x.strip() != ""]
    except ValueError:
        click.echo("bad --k-list", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    payload = {"symbol": _load_symbol(symbol, symbol_file), "k_list": ks}
    _emit(ctx, _request(ctx, "/converge", payload), violated=False)


@main.command("check-main")
@symbol_options
@common_options
@click.pass_context
def check_main(ctx, symbol, symbol_file, fmt, output, fail_on_violation):
    """Main necessary inequality; failure certifies non-hyponormality."""
    _store_common(ctx, fmt, output, fail_on_violation)
    data = _request(ctx, "/check-main", {"symbol": _load_symbol(symbol, symbol_file)})
    _emit(ctx, data, violated=not data.get("holds", True))


@main.command("check-specific")
@symbol_options
@common_options
@click.pass_context
def check_specific(ctx, symbol, symbol_file, fmt, output, fail_on_violation):
    """Matched-exponent (p=m, q=n) reduction of the main inequality."""
    _store_common(ctx, fmt, output, fail_on_violation)
    data = _request(ctx, "/check-specific", {"symbol": _load_symbol(symbol, symbol_file)})
    _emit(ctx, data, violated=not data.get("holds", True))


@main.command("compare-lushi")
@symbol_options
@common_options
@click.pass_context
def compare_lushi(ctx, symbol, symbol_file, fmt, output, fail_on_violation):
    """Factor-2 bound next to the older factor-1 bound."""
    _store_common(ctx, fmt, output, fail_on_violation)
    data = _request(ctx, "/compare-lushi", {"symbol": _load_symbol(symbol, symbol_file)})
    violated = not data.get("paper_bound", {}).get("holds", True)
    _emit(ctx, data, violated=violated)


@main.command("threshold-example")
@click.option("--q-exp", type=int, default=2, show_default=True)
@click.option("--max-k", type=click.IntRange(0, 10000), default=10, show_default=True)
@common_options
@click.pass_context
def threshold_example(ctx, q_exp, max_k, fmt, output, fail_on_violation):
    """Per-degree bounds and threshold for the family conj(z)^2 + alpha z."""
    _store_common(ctx, fmt, output, fail_on_violation)
    _emit(ctx, _request(ctx, "/threshold-example", {"q_exp": q_exp, "max_k": max_k}), violated=False)


@main.command("classify-normal")
@symbol_options
@common_options
@click.pass_context
def classify_normal_cmd(ctx, symbol, symbol_file, fmt, output, fail_on_violation):
    """Normality classification with the unimodular lambda when normal."""
    _store_common(ctx, fmt, output, fail_on_violation)
    _emit(ctx, _request(ctx, "/classify-normal", {"symbol": _load_symbol(symbol, symbol_file)}), violated=False)


@main.command("hardy-check")
@symbol_options
@common_options
@click.pass_context
def hardy_check(ctx, symbol, symbol_file, fmt, output, fail_on_violation):
    """Hardy-space necessary and equal-modulus tests for a Laurent symbol."""
    _store_common(ctx, fmt, output, fail_on_violation)
    data = _request(ctx, "/hardy-check", {"symbol": _load_symbol(symbol, symbol_file)})
    violated = data.get("necessary", {}).get("fails", False) or (
        data.get("equal_modulus", {}).get("status") == "NOT_HYPONORMAL"
    )
    _emit(ctx, data, violated=violated)


@main.command()
@symbol_options
@click.option(
    "--vary",
    multiple=True,
    required=True,
    help="slot=v1,v2,... with slot one of alpha/beta/gamma/delta and complex literal values.",
)
@common_options
@click.pass_context
def sweep(ctx, symbol, symbol_file, vary, fmt, output, fail_on_violation):
    """Grid sweep of the main inequality over coefficient slots."""
    _store_common(ctx, fmt, output, fail_on_violation)
    vary_payload = []
    for spec in vary:
        if "=" not in spec:
            click.echo(f"bad --vary entry: {spec!r}", err=True)
            sys.exit(EXIT_INPUT_ERROR)
        slot, values = spec.split("=", 1)
        vary_payload.append({"slot": slot.strip(), "values": [v.strip() for v in values.split(",")]})
    payload = {"base": _load_symbol(symbol, symbol_file), "vary": vary_payload}
    data = _request(ctx, "/sweep", payload)
    _emit(ctx, data, violated=data.get("violations", 0) > 0)


if __name__ == "__main__":
    main()
