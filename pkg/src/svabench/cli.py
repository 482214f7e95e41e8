"""Command-line interface.

Every command is a thin client over the HTTP service: by default the app is
mounted in-process (fully offline), or point ``--service-url`` /
``SVABENCH_SERVICE_URL`` at a running instance.

Exit codes: 0 success (check: all assertions pass), 1 check found a
counterexample / validation found violations, 2 check produced an error
verdict, 64 usage or configuration errors, 70 unexpected service failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import __version__
from .service.client import ServiceClient, ServiceError

EX_USAGE = 64
EX_SOFTWARE = 70


def _client(service_url: str | None) -> ServiceClient:
    return ServiceClient(service_url)


service_url_option = click.option(
    "--service-url",
    default=None,
    envvar="SVABENCH_SERVICE_URL",
    help="Remote service URL; default runs the service in-process.",
)


@click.group()
@click.version_option(version=__version__, prog_name="svabench")
def cli() -> None:
    """Evaluate machine-generated SystemVerilog assertions against designs."""


@cli.command("check")
@click.argument("design", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("assertions", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--mode", type=click.Choice(["exhaustive", "random"]), default="exhaustive")
@click.option("--bit-budget", default=24, show_default=True)
@click.option("--depth", default=64, show_default=True, help="Reachability depth.")
@click.option("--trials", default=100_000, show_default=True, help="Random-mode trials.")
@click.option("--seed", default=0, show_default=True)
@click.option("--trace/--no-trace", default=False, help="Print counterexample traces.")
@click.option("--json", "as_json", is_flag=True, help="Emit raw JSON results.")
@service_url_option
@click.pass_context
def cmd_check(ctx, design, assertions, mode, bit_budget, depth, trials, seed, trace, as_json, service_url):
    """Check every assertion in ASSERTIONS against DESIGN."""
    from .bench.store import read_golden_file

    texts = read_golden_file(assertions)
    try:
        body = _client(service_url).post(
            "/check",
            {
                "design_source": design.read_text(encoding="utf-8"),
                "assertions": texts,
                "config": {
                    "mode": mode,
                    "bit_budget": bit_budget,
                    "reachability_depth": depth,
                    "random_trials": trials,
                    "seed": seed,
                },
            },
        )
    except ServiceError as exc:
        if exc.status_code == 400 and isinstance(exc.detail, dict):
            click.echo(f"{design}:{exc.detail.get('message', exc.detail)}", err=True)
            ctx.exit(2)
        click.echo(str(exc), err=True)
        ctx.exit(2 if exc.status_code == 400 else EX_SOFTWARE)

    results = body["results"]
    if as_json:
        click.echo(json.dumps(results, indent=2))
    else:
        for item in results:
            line = f"{item['kind']:8} {item['text']}"
            if item["kind"] == "Error":
                line += f"\n         ({item['detail']})"
            click.echo(line)
            if trace and item.get("trace"):
                for cycle in item["trace"]:
                    sigs = " ".join(f"{k}={v}" for k, v in sorted(cycle["signals"].items()))
                    click.echo(f"         cycle {cycle['cycle']}: {sigs}")
    kinds = {item["kind"] for item in results}
    if "Error" in kinds:
        ctx.exit(2)
    if "Cex" in kinds:
        ctx.exit(1)
    ctx.exit(0)


def _parse_models(models: str | None, default_endpoint: str) -> list[dict]:
    if not models:
        return [{"model_id": "default", "endpoint": default_endpoint}]
    parsed = []
    for chunk in models.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" in chunk:
            model_id, endpoint = chunk.split("=", 1)
        else:
            model_id, endpoint = chunk, default_endpoint
        parsed.append({"model_id": model_id, "endpoint": endpoint})
    return parsed


@cli.command("eval")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help="JSON config file; flags override its values.")
@click.option("--benchmark", "benchmark_root", type=click.Path(file_okay=False, path_type=Path),
              help="Benchmark root (default: the bundled benchmark).")
@click.option("--models", help="Comma-separated model_id=endpoint pairs.")
@click.option("--shots", help="Comma-separated shot counts, e.g. 1,5.")
@click.option("--mock", "mock_dir",
              help="Mock corpus directory for offline replay ('bundled' for the packaged corpus).")
@click.option("--resume", is_flag=True, help="Skip designs with existing records.")
@click.option("--out", "output_dir", type=click.Path(file_okay=False, path_type=Path),
              help="Results directory (default: ./results).")
@click.option("--parallelism", type=int, default=None)
@click.option("--ice-seed", type=int, default=None)
@service_url_option
@click.pass_context
def cmd_eval(ctx, config_path, benchmark_root, models, shots, mock_dir, resume,
             output_dir, parallelism, ice_seed, service_url):
    """Generate and formally evaluate assertions for every test design."""
    from .bench.store import bundled_benchmark_root, bundled_mock_root

    file_cfg = {}
    if config_path is not None:
        try:
            file_cfg = json.loads(config_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise click.UsageError(f"cannot read config {config_path}: {exc}")

    mock = mock_dir or file_cfg.get("mock")
    if mock == "bundled":
        mock = str(bundled_mock_root())
    root = benchmark_root or file_cfg.get("benchmark_root") or str(bundled_benchmark_root())
    out = output_dir or file_cfg.get("output_dir") or "results"
    shot_list = (
        [int(x) for x in shots.split(",")]
        if shots
        else file_cfg.get("shots", [1, 5])
    )
    default_endpoint = "" if mock else file_cfg.get("endpoint", "")
    model_list = (
        _parse_models(models, default_endpoint)
        if models
        else file_cfg.get(
            "models",
            _parse_models("mock-model" if mock else None, default_endpoint),
        )
    )

    payload = {
        "benchmark_root": str(root),
        "models": model_list,
        "shots": shot_list,
        "output_dir": str(out),
        "mock": mock,
        "resume": bool(resume or file_cfg.get("resume", False)),
        "parallelism": parallelism if parallelism is not None else file_cfg.get("parallelism", 1),
        "ice_seed": ice_seed if ice_seed is not None else file_cfg.get("ice_seed", 0),
        "gen": file_cfg.get("gen", {}),
        "check": file_cfg.get("check", {}),
    }
    if file_cfg.get("task_description"):
        payload["task_description"] = file_cfg["task_description"]

    try:
        body = _client(service_url).post("/eval", payload)
    except ServiceError as exc:
        click.echo(f"eval failed: {exc.detail}", err=True)
        ctx.exit(EX_USAGE if exc.status_code == 400 else EX_SOFTWARE)

    click.echo(f"records: {body['records_path']} ({body['records_written']} records, "
               f"{body['records_reused']} reused)")
    for path in body["metric_paths"]:
        click.echo(f"wrote {path}")
    for summary in body["summaries"]:
        fr = summary["fractions"]
        click.echo(
            f"{summary['model']} k={summary['k']}: "
            f"pass {fr['pass']:.3f}  fail {fr['fail']:.3f}  error {fr['error']:.3f} "
            f"({sum(summary['counts'].values())} assertions)"
        )
        if summary["no_output"]:
            click.echo(f"  no_output: {', '.join(summary['no_output'])}")
        if summary["skipped"]:
            click.echo(f"  skipped: {', '.join(summary['skipped'])}")
    ctx.exit(0)


@cli.group("bench")
def bench_group() -> None:
    """Benchmark maintenance commands."""


@bench_group.command("validate")
@click.argument("root", type=click.Path(file_okay=False, path_type=Path))
@click.option("--bit-budget", default=24, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@service_url_option
@click.pass_context
def cmd_bench_validate(ctx, root, bit_budget, as_json, service_url):
    """Validate a benchmark tree; exit 0 iff no violations."""
    if not root.is_dir():
        raise click.UsageError(f"benchmark root {root} does not exist")
    try:
        body = _client(service_url).post(
            "/benchmark/validate",
            {"root": str(root), "config": {"bit_budget": bit_budget}},
        )
    except ServiceError as exc:
        click.echo(f"validation failed: {exc.detail}", err=True)
        ctx.exit(EX_USAGE if exc.status_code == 400 else EX_SOFTWARE)
    click.echo(json.dumps(body["report"], indent=2, sort_keys=True) if as_json else body["text"])
    ctx.exit(0 if body["ok"] else 1)


@cli.command("report")
@click.argument("results_dir", type=click.Path(file_okay=False, exists=True, path_type=Path))
@click.option("--compare", "baseline_dir", type=click.Path(file_okay=False, exists=True, path_type=Path),
              help="Baseline results directory for relative deltas.")
@click.option("--json", "as_json", is_flag=True)
@service_url_option
@click.pass_context
def cmd_report(ctx, results_dir, baseline_dir, as_json, service_url):
    """Aggregate records.jsonl in RESULTS_DIR into metric tables."""
    payload = {"results_dir": str(results_dir)}
    if baseline_dir is not None:
        payload["compare_dir"] = str(baseline_dir)
    try:
        body = _client(service_url).post("/report", payload)
    except ServiceError as exc:
        click.echo(f"report failed: {exc.detail}", err=True)
        ctx.exit(EX_USAGE if exc.status_code == 400 else EX_SOFTWARE)
    if as_json:
        click.echo(json.dumps(body, indent=2, sort_keys=True))
    else:
        for path in body["metric_paths"]:
            click.echo(f"wrote {path}")
        for summary in body["summaries"]:
            fr = summary["fractions"]
            click.echo(
                f"{summary['model']} k={summary['k']}: "
                f"pass {fr['pass']:.3f}  fail {fr['fail']:.3f}  error {fr['error']:.3f}"
            )
        if body.get("deltas"):
            click.echo("relative to baseline:")
            for delta in body["deltas"]:
                parts = []
                for bucket in ("pass", "fail", "error"):
                    value = delta["deltas_pct"].get(bucket)
                    parts.append(
                        f"{bucket} undefined (zero baseline)"
                        if value is None
                        else f"{bucket} {value:+.2f}%"
                    )
                click.echo(f"  {delta['model']} k={delta['k']}: " + ", ".join(parts))
    ctx.exit(0)


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-code mapping."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        return EX_USAGE
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.exceptions.Abort:
        return 130
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
