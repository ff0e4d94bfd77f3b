"""Command line interface"""

import sys
from pathlib import Path
from typing import Callable, Iterable, Optional, Text

import click

from twodist.about import about as about_installation
from twodist.base import PipelineConfig
from twodist.base.pipeline_config import default_workers
from twodist.pipeline import run
from twodist.system.exceptions import ConfigurationError, SchemaError, VerificationError
from twodist.utils import Stage

__all__ = ["main"]


def __dir__():
    return __all__


EXIT_FAILURE = 1
EXIT_CONFIGURATION = 2


def _run_options(function: Callable) -> Callable:
    decorators = [
        click.option(
            "--workers",
            type=int,
            default=None,
            help="Processes for the enumeration. Defaults to TWODIST_WORKERS or 1.",
        ),
        click.option(
            "--cache",
            "cache_dir",
            type=click.Path(file_okay=False, path_type=Path),
            default=None,
            help="Directory for cached intermediate artifacts.",
        ),
        click.option(
            "--certificate",
            "certificate_path",
            type=click.Path(dir_okay=False, path_type=Path),
            default=None,
            help="Write the certificate JSON to this file.",
        ),
        click.option("--quiet", is_flag=True, default=False, help="Hide progress bars."),
    ]
    for decorator in reversed(decorators):
        function = decorator(function)
    return function


def _execute(
    stages: Iterable[Text],
    workers: Optional[int],
    cache_dir: Optional[Path],
    certificate_path: Optional[Path],
    quiet: bool,
    long_test_enabled: bool = True,
) -> None:
    try:
        config = PipelineConfig(
            cache_dir=cache_dir,
            workers=default_workers() if workers is None else workers,
            stages=stages,
            long_test_enabled=long_test_enabled,
            certificate_path=certificate_path,
            progress=not quiet,
        )
        certificate = run(config)
    except ConfigurationError as err:
        click.echo(f"Configuration error: {err}", err=True)
        sys.exit(EXIT_CONFIGURATION)
    except (ValueError, SchemaError) as err:
        click.echo(f"Invalid input: {type(err).__name__}: {err}", err=True)
        sys.exit(EXIT_CONFIGURATION)
    except VerificationError as err:
        click.echo(f"{type(err).__name__}: {err}", err=True)
        sys.exit(EXIT_FAILURE)

    for stage, seconds in certificate.timing.items():
        click.echo(f"{stage:<12} passed in {seconds:.3f}s")
    if certificate_path is None:
        click.echo(certificate.to_json(), nl=False)


@click.group()
@click.version_option(package_name="twodist")
def main():
    """Construction and maximality certificate of the 277-point two-distance set in R^23"""


@main.command()
@_run_options
def construct(workers, cache_dir, certificate_path, quiet):
    """Build the Golay code, the graph, the embedding and the 277 points"""
    _execute(
        [Stage.code, Stage.graph, Stage.embed, Stage.construct],
        workers, cache_dir, certificate_path, quiet,
    )


@main.command()
@_run_options
def verify(workers, cache_dir, certificate_path, quiet):
    """Construction plus the exact spectra of the graph and its Seidel matrix"""
    _execute(
        [stage for stage in Stage if stage != Stage.maximality],
        workers, cache_dir, certificate_path, quiet,
    )


@main.command()
@_run_options
@click.option(
    "--skip-long",
    is_flag=True,
    default=False,
    help="Replace the full enumeration of the dual lattice by the bounded checks.",
)
def maximality(workers, cache_dir, certificate_path, quiet, skip_long):
    """Certify that the 277 points do not extend inside their hyperplane"""
    _execute([Stage.maximality], workers, cache_dir, certificate_path, quiet, not skip_long)


@main.command(name="all")
@_run_options
@click.option("--skip-long", is_flag=True, default=False, help="Skip the full enumeration.")
def run_all(workers, cache_dir, certificate_path, quiet, skip_long):
    """Every stage"""
    _execute(list(Stage), workers, cache_dir, certificate_path, quiet, not skip_long)


@main.command()
def about():
    """Versions of twodist and its dependencies"""
    about_installation()
