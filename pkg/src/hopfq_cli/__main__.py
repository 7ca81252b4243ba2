#!/usr/bin/env python3
"""hopfq CLI - verify the quantum Hopf bundle S^7_q -> S^4_q from the shell."""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

import click
import yaml
from pydantic import BaseModel
from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.prompt import Confirm
from rich.table import Table

from hopfq import ConfigurationError, HopfqError, Report, Verifier
from hopfq.classical import chern_numbers
from hopfq.coaction import su2_system
from hopfq.grammar import parse_expr
from hopfq.logging import ErrorDisplay
from hopfq.models import Config as Settings
from hopfq.ncalg import SU2_ALPHABET, S4_ALPHABET, sphere_alphabet
from hopfq.representation import exact_q, index_pairing
from hopfq.rmatrix import Family, LegOrder, derive_relations, s7_system
from hopfq.spheres import s4_system

from .completion import get_completion_script

console = Console()
err_console = Console(stderr=True)

C2_TOL = 0.05
C1_TOL = 1e-6

EXIT_FAILED = 1
EXIT_USAGE = 2


# Configuration
def get_config_dir() -> Path:
    """Get config directory, using XDG on Unix-like systems."""
    import os

    if sys.platform == "win32":
        from platformdirs import user_config_dir

        return Path(user_config_dir("hopfq"))
    xdg_config = os.environ.get("XDG_CONFIG_HOME")
    if xdg_config:
        return Path(xdg_config) / "hopfq"
    return Path.home() / ".config" / "hopfq"


CONFIG_DIR = get_config_dir()
CONFIG_FILE = CONFIG_DIR / "config.yaml"


class Config:
    """CLI state shared by all commands."""

    def __init__(self) -> None:
        self.output_format: str = "table"
        self.no_color: bool = False
        self.quiet: bool = False
        self.verbose: bool = False
        self.profile: str = "default"
        self.config_path: Path | None = None

    def load_config(self) -> dict:
        """Load configuration from file."""
        path = self.config_path or CONFIG_FILE
        if not path.exists():
            return {}

        with open(path) as f:
            return yaml.safe_load(f) or {}

    def settings(self, **flags: Any) -> Settings:
        """Resolve numeric settings.

        Resolution order: command-line flag → config file profile → HOPFQ_* env
        vars (incl. .env) → defaults.
        """
        profile: dict = {}
        data = self.load_config()
        if data:
            profile = data.get("profiles", {}).get(self.profile, {})
            if not profile and self.profile != "default":
                err_console.print(f"[red]❌ Profile '{self.profile}' not found in configuration![/red]")
                err_console.print(f"\nAvailable profiles: {', '.join(data.get('profiles', {}).keys()) or 'none'}")
                sys.exit(EXIT_USAGE)

        merged = {**profile, **{k: v for k, v in flags.items() if v is not None}}
        if self.verbose:
            merged["log_level"] = "DEBUG"
        try:
            return Verifier(**merged).config
        except ConfigurationError as e:
            err_console.print(f"[red]❌ {e}[/red]")
            sys.exit(EXIT_USAGE)

    def use_json(self, flag: bool) -> None:
        if flag:
            self.output_format = "json"


pass_config = click.make_pass_decorator(Config, ensure=True)


def output_formatter(data: Any, format: str) -> None:
    """Format output based on specified format."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json", by_alias=True)
    if format == "json":
        click.echo(json.dumps(data, indent=2, default=str))
    elif format == "yaml":
        click.echo(yaml.dump(data, default_flow_style=False, sort_keys=False))


def show_report(config: Config, report: Report, title: str) -> None:
    """Print a Report and exit non-zero on any failure."""
    if config.output_format != "table":
        output_formatter(report, config.output_format)
    elif config.quiet:
        pass
    else:
        table = Table(title=f"{title} ({len(report.checks)} checks)")
        table.add_column("Check", style="cyan")
        table.add_column("Status")
        table.add_column("Residual", style="yellow", overflow="fold")
        table.add_column("Time", justify="right", style="dim")
        for c in report.checks:
            if c.passed and not config.verbose and len(report.checks) > 40:
                continue
            style = {"pass": "green", "fail": "red", "error": "magenta"}[c.status]
            table.add_row(c.check_id, f"[{style}]{c.status}[/{style}]", c.residual[:200], f"{c.wall_time:.2f}s")
        console.print(table)

    summary = f"{len(report.passed)} passed, {len(report.failed)} failed"
    if report.failed:
        err_console.print(f"[red]❌ {summary}[/red]")
        for c in report.failed:
            err_console.print(f"   [red]{c.check_id}[/red]: {c.residual[:200]}")
        sys.exit(EXIT_FAILED)
    if config.output_format == "table":
        console.print(f"[green]✅ {summary}[/green]")


def run_with_spinner(config: Config, message: str, fn: Any) -> Any:
    if config.quiet:
        return fn()
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=err_console,
        transient=True,
    ) as progress:
        progress.add_task(message, total=None)
        return fn()


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), help="Config file path")
@click.option("--profile", default="default", help="Config profile to use")
@click.option(
    "--output",
    "-o",
    type=click.Choice(["table", "json", "yaml"]),
    default="table",
    help="Output format",
)
@click.option("--no-color", is_flag=True, help="Disable colored output")
@click.option("--quiet", is_flag=True, help="Minimal output")
@click.option("--verbose", "-v", is_flag=True, help="Verbose output (debug logging, every check)")
@click.option("--debug", is_flag=True, hidden=True, help="Show tracebacks")
@click.version_option(package_name="hopf-bundle-q")
@pass_config
def cli(config: Config, config_path, profile, output, no_color, quiet, verbose, debug) -> None:
    """hopfq - certify the quantum instanton bundle S^7_q -> S^4_q."""
    config.output_format = output
    config.no_color = no_color
    config.quiet = quiet
    config.verbose = verbose or debug
    config.profile = profile
    config.config_path = config_path

    if no_color:
        console._color_system = None
        err_console._color_system = None


json_option = click.option("--json", "as_json", is_flag=True, help="Emit JSON")


@cli.command("derive-relations")
@click.option("--n", "n", type=click.IntRange(1, 4), default=2, show_default=True, help="Rank: S^{4n-1}_q")
@click.option(
    "--family",
    type=click.Choice([f.value for f in Family] + ["all"]),
    default="all",
    show_default=True,
)
@click.option("--leg-order", type=click.Choice([o.value for o in LegOrder]), default=LegOrder.STANDARD.value, show_default=True)
@json_option
@pass_config
def derive_relations_cmd(config: Config, n: int, family: str, leg_order: str, as_json: bool) -> None:
    """Derive the quadratic relations of S^{4n-1}_q from the R-matrix."""
    config.use_json(as_json)
    settings = config.settings()
    families = list(Family) if family == "all" else [Family(family)]
    try:
        sets = run_with_spinner(
            config,
            "Deriving relations...",
            lambda: [derive_relations(n, f, leg_order, budget=settings.rewrite_budget) for f in families],
        )
    except HopfqError as e:
        ErrorDisplay.show(e)
        sys.exit(EXIT_FAILED)

    if config.output_format != "table":
        data = [s.as_dict() for s in sets]
        output_formatter(data[0] if len(data) == 1 else data, config.output_format)
        return

    for s in sets:
        table = Table(title=f"{s.family.value.upper()} relations, n = {n} ({len(s.rules)} rules)")
        table.add_column("Lead", style="cyan")
        table.add_column("Replacement", style="green", overflow="fold")
        for lhs, rhs in s.rendered():
            table.add_row(lhs, rhs)
        console.print(table)


@cli.command("verify-spheres")
@json_option
@pass_config
def verify_spheres(config: Config, as_json: bool) -> None:
    """Certify p = v v* and the presentation of A(S^4_q)."""
    config.use_json(as_json)
    verifier = Verifier(config.settings())
    report = run_with_spinner(config, "Certifying the projection...", verifier.spheres.run)
    show_report(config, report, "S^7_q and S^4_q")


@cli.command("verify-bundle")
@click.option("--max-degree", type=click.IntRange(0, 4), help="PBW degree for the strong connection [default: 2]")
@json_option
@pass_config
def verify_bundle(config: Config, max_degree: int | None, as_json: bool) -> None:
    """Certify the coaction, the canonical map and the strong connection."""
    config.use_json(as_json)
    verifier = Verifier(config.settings(max_degree=max_degree))
    report = run_with_spinner(config, "Certifying the bundle...", verifier.bundle.run)
    show_report(config, report, "Principal SU_q(2) bundle")


def _q0(value: str | None) -> float | None:
    if value is None:
        return None
    try:
        return float(Fraction(value))
    except (ValueError, ZeroDivisionError) as e:
        raise click.BadParameter(f"{value!r} is not a number") from e


@cli.command("pairing")
@click.option("--q", "q", help="Deformation parameter in (0, 1); fractions like 1/2 allowed [default: 0.5]")
@click.option("--m", "m", type=click.IntRange(1), help="Truncation in m [default: 30]")
@click.option("--n", "n", type=click.IntRange(1), help="Truncation in n [default: 30]")
@click.option("--exact", is_flag=True, default=None, help="Rational arithmetic (q taken as a fraction)")
@json_option
@pass_config
def pairing(config: Config, q: str | None, m: int | None, n: int | None, exact: bool | None, as_json: bool) -> None:
    """The index pairing <[mu], [p]> of the Fredholm module with ch_0(p)."""
    config.use_json(as_json)
    settings = config.settings(q0=_q0(q), m_cutoff=m, n_cutoff=n, exact=exact)
    q0: float | Fraction = settings.q0
    if settings.exact:
        q0 = exact_q(q if q is not None else settings.q0)
    report = run_with_spinner(
        config,
        "Computing traces...",
        lambda: index_pairing(q0, settings.m_cutoff, settings.n_cutoff, exact=settings.exact),
    )
    ok = abs(report.pairing_value + 1) <= report.truncation_error_bound + settings.pairing_tol

    if config.output_format != "table":
        output_formatter(report, config.output_format)
    else:
        table = Table(title=f"Index pairing at q = {report.q0}, M = {report.m_cutoff}, N = {report.n_cutoff}")
        table.add_column("Quantity", style="cyan")
        table.add_column("Value", style="green", justify="right")
        table.add_row("Tr sigma(t)", report.exact_trace_t or f"{report.trace_t!r}")
        table.add_row("closed form", f"{report.closed_form!r}")
        table.add_row("tau^1(ch_0(p))", report.exact_pairing_value or f"{report.pairing_value!r}")
        table.add_row("tau^0(ch_0(p))", f"{report.tau0_value!r}")
        table.add_row("tau^1(1)", f"{report.trivial_pairing!r}")
        table.add_row("truncation bound", f"{report.truncation_error_bound:.3e}")
        console.print(table)
    if not ok:
        err_console.print(f"[red]❌ pairing {report.pairing_value!r} is not -1 within tolerance[/red]")
        sys.exit(EXIT_FAILED)


@cli.command("chern-classical")
@click.option("--samples", type=click.IntRange(1024), help="Quasi-random samples on S^4 [default: 2000000]")
@click.option("--fd-step", type=click.FloatRange(0, 0.1, min_open=True, max_open=True), help="Finite-difference step [default: 1e-4]")
@click.option("--seed", type=int, help="Sobol scrambling seed [default: 42]")
@json_option
@pass_config
def chern_classical(config: Config, samples: int | None, fd_step: float | None, seed: int | None, as_json: bool) -> None:
    """Estimate c_1 and c_2 of the classical instanton projection."""
    config.use_json(as_json)
    settings = config.settings(samples=samples, fd_step=fd_step, seed=seed)
    report = run_with_spinner(
        config,
        f"Integrating over {settings.samples} points...",
        lambda: chern_numbers(settings.samples, settings.fd_step, settings.seed),
    )
    ok = abs(report.c2_value + 1) < C2_TOL and report.c1_max_residual < C1_TOL

    if config.output_format != "table":
        output_formatter(report, config.output_format)
    else:
        table = Table(title="Chern numbers of the classical projection")
        table.add_column("Quantity", style="cyan")
        table.add_column("Value", style="green", justify="right")
        table.add_row("c_2", f"{report.c2_value:.6f} ± {report.c2_stderr:.1e}")
        table.add_row("max |C_1|", f"{report.c1_max_residual:.3e}")
        table.add_row("samples", f"{report.samples} ({report.rejected_samples} rejected)")
        table.add_row("fd step", f"{report.fd_step:g}")
        console.print(table)
    if not ok:
        err_console.print("[red]❌ c_2 is not -1 within tolerance[/red]")
        sys.exit(EXIT_FAILED)


ALGEBRAS = {
    "s7": (lambda b: s7_system(budget=b), sphere_alphabet(2)),
    "su2": (su2_system, SU2_ALPHABET),
    "s4": (s4_system, S4_ALPHABET),
}


@cli.command("normalize")
@click.argument("expression")
@click.option("--algebra", type=click.Choice(list(ALGEBRAS)), default="s7", show_default=True)
@json_option
@pass_config
def normalize(config: Config, expression: str, algebra: str, as_json: bool) -> None:
    """Print the normal form of EXPRESSION, e.g. 'x2*x1' or 'conj(x1)*x1'."""
    config.use_json(as_json)
    settings = config.settings()
    build, alphabet = ALGEBRAS[algebra]
    try:
        e = parse_expr(expression, alphabet)
        result = build(settings.rewrite_budget).normalize(e)
    except HopfqError as err:
        ErrorDisplay.show(err)
        sys.exit(EXIT_USAGE if err.code in ("parse_error", "unknown_generator") else EXIT_FAILED)

    if config.output_format != "table":
        output_formatter({"input": expression, "algebra": algebra, "normal_form": str(result)}, config.output_format)
    else:
        click.echo(str(result))


@cli.command("verify-all")
@click.option("--q", "q", help="Deformation parameter in (0, 1) [default: 0.5]")
@click.option("--m", "m", type=click.IntRange(1), help="Truncation in m [default: 30]")
@click.option("--n", "n", type=click.IntRange(1), help="Truncation in n [default: 30]")
@click.option("--samples", type=click.IntRange(1024), help="Quasi-random samples on S^4 [default: 2000000]")
@click.option("--fd-step", type=click.FloatRange(0, 0.1, min_open=True, max_open=True), help="Finite-difference step [default: 1e-4]")
@click.option("--seed", type=int, help="Seed for sampling and random trials [default: 42]")
@click.option("--max-degree", type=click.IntRange(0, 4), help="PBW degree for the strong connection [default: 2]")
@click.option("--inject-fault", is_flag=True, default=None, hidden=True, help="Corrupt one tabulated relation")
@json_option
@pass_config
def verify_all(config: Config, q, m, n, samples, fd_step, seed, max_degree, inject_fault, as_json: bool) -> None:
    """Run every suite; exit 0 iff every check passes."""
    config.use_json(as_json)
    settings = config.settings(
        q0=_q0(q),
        m_cutoff=m,
        n_cutoff=n,
        samples=samples,
        fd_step=fd_step,
        seed=seed,
        max_degree=max_degree,
        inject_fault=inject_fault,
    )
    verifier = Verifier(settings)
    report = run_with_spinner(config, "Running every suite...", verifier.run_all)
    show_report(config, report, "hopfq verification")


@cli.group("config")
def config_group() -> None:
    """Configuration management commands."""
    pass


@config_group.command("init")
@click.option("--force", is_flag=True, help="Overwrite without asking")
def config_init(force: bool) -> None:
    """Write a config file with a default profile."""
    CONFIG_DIR.mkdir(parents=True, exist_ok=True)

    if CONFIG_FILE.exists() and not force and not Confirm.ask(f"{CONFIG_FILE} already exists. Overwrite?", default=False):
        console.print("[yellow]Cancelled[/yellow]")
        return

    defaults = Settings().model_dump(exclude={"inject_fault", "log_level"})
    config = {
        "default_profile": "default",
        "profiles": {
            "default": defaults,
            "quick": {**defaults, "samples": 1 << 16, "m_cutoff": 20, "n_cutoff": 20, "confluence_trials": 200},
        },
    }
    with open(CONFIG_FILE, "w") as f:
        yaml.dump(config, f, default_flow_style=False, sort_keys=False)

    console.print(f"\n[green]✅ Configuration saved to {CONFIG_FILE}[/green]")
    console.print("\n💡 Tips:")
    console.print("  • HOPFQ_* environment variables fill in anything a profile leaves out")
    console.print("  • Use a profile with: hopfq --profile quick verify-all")


@config_group.command("show")
@pass_config
def config_show(config: Config) -> None:
    """Print the resolved settings."""
    settings = config.settings()
    if config.output_format == "table":
        table = Table(title=f"Settings (profile: {config.profile})")
        table.add_column("Key", style="cyan")
        table.add_column("Value", style="green")
        for key, value in settings.model_dump().items():
            table.add_row(key, str(value))
        console.print(table)
    else:
        output_formatter(settings, config.output_format)


@cli.command("completion")
@click.argument("shell", type=click.Choice(["bash", "zsh", "fish"]))
def completion(shell: str) -> None:
    """Generate shell completion script."""
    script = get_completion_script(shell, cli)
    click.echo(script)

    if not console.is_terminal:
        return

    console.print(f"\n[dim]# To install {shell} completion:[/dim]")
    if shell == "bash":
        console.print("[dim]hopfq completion bash >> ~/.bashrc[/dim]")
    elif shell == "zsh":
        console.print("[dim]hopfq completion zsh >> ~/.zshrc[/dim]")
    elif shell == "fish":
        console.print("[dim]hopfq completion fish > ~/.config/fish/completions/hopfq.fish[/dim]")


def main() -> None:
    """Main entry point."""
    # The library does not read .env files; the CLI loads one from CWD.
    from dotenv import load_dotenv

    load_dotenv(".env")

    try:
        cli()
    except KeyboardInterrupt:
        err_console.print("\n[yellow]Interrupted by user[/yellow]")
        sys.exit(130)
    except Exception as e:
        if "--debug" in sys.argv:
            err_console.print_exception()
        else:
            err_console.print(f"[red]❌ Unexpected error: {e}[/red]")
            err_console.print("[dim]Run with --debug for full traceback[/dim]")
        sys.exit(EXIT_FAILED)


if __name__ == "__main__":
    main()
