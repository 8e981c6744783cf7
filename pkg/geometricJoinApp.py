import cProfile
import io
import json
import logging
import os
import pstats
import sys
from typing import Any, Callable, Dict, List, Optional

import click

from configUtils import (
    addConfigByName,
    deleteConfigByName,
    getConfigJson,
    getConfigList,
    getCurrentConfigFilePath,
    getCurrentConfigName,
    loadSearchConfig,
    setConfigValue,
    setCurrentConfig
)
from errors import GeometricJoinError, InputError
from resources import ExitCode, Mode
from terminalUtils import runAlgorithm

logger = logging.getLogger(__name__)

LOG_LEVELS: List[str] = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

def parseClassSizes(text: Optional[str]) -> Optional[List[int]]:
    if text is None:
        return None
    try:
        return [int(size) for size in text.split(",") if size.strip()]
    except ValueError as e:
        raise InputError(f"--classes expects comma separated integers, got '{text}'") from e

def runMode(mode: Mode, options: Dict[str, Any]) -> None:
    """
    Translate terminal flags into config overrides and run the mode; library
    errors end the process with their exit code.
    """
    configFilePath: str = getCurrentConfigFilePath()
    logger.info("Running %s with config: %s", mode.value, configFilePath)
    try:
        overrides: Dict[str, Any] = {
            "mode": mode.value,
            "dimension": options.get("dim"),
            "classSizes": parseClassSizes(options.get("classes")),
            "matroid": options.get("matroid"),
            "seed": options.get("seed"),
            "count": options.get("count"),
            "bound": options.get("bound"),
            "dimensionCap": options.get("cap"),
            "outputFilePath": options.get("out"),
            "findingsFilePath": options.get("findings"),
            "lpBudget": options.get("budget_lp"),
            "faceBudget": options.get("budget_faces"),
            "tolerance": options.get("tolerance"),
            "instanceFilePath": options.get("instance"),
            "certificateFilePath": options.get("certificate"),
            "complexDumpFilePath": options.get("dump_complex"),
            "index": options.get("index"),
            "workers": options.get("workers"),
            "offset": options.get("offset")
        }
        runAlgorithm(configFilePath, overrides)
    except GeometricJoinError as e:
        logger.error("%s: %s", type(e).__name__, e)
        sys.exit(e.exitCode.value)

def runOptions(command: Callable[..., Any]) -> Callable[..., Any]:
    """The flags every run verb accepts."""
    options = [
        click.option('--dim', type=int, help="Ambient dimension d."),
        click.option('--classes', type=str, help="Class sizes, e.g. 2,2,2,2,2."),
        click.option('--matroid', type=str, help="partition, uniform:r or bases:<file>."),
        click.option('--seed', type=int, help="64-bit generator seed."),
        click.option('--count', type=int, help="Number of instances."),
        click.option('--bound', type=int, help="Coordinate bound B."),
        click.option('--cap', type=int, help="Nerve dimension cap (default d+1)."),
        click.option('--out', type=str, help="Output file."),
        click.option('--findings', type=str, help="Findings JSONL file."),
        click.option('--budget-lp', 'budget_lp', type=int, help="Maximum LP calls per instance."),
        click.option('--budget-faces', 'budget_faces', type=int, help="Maximum nerve faces per instance."),
        click.option('--tolerance', type=float, help="Numeric tolerance of the filtration probe."),
        click.option('--instance', type=str, help="Instance JSON file instead of a generated instance."),
        click.option('--certificate', type=str, help="Certificate file (certify writes, verify reads)."),
        click.option('--index', type=int, help="Index of the first generated instance."),
        click.option('--workers', type=int, help="Worker processes."),
        click.option('--offset', type=int, help="Shift of the first coordinate of generated points."),
        click.option('--dump-complex', 'dump_complex', type=str, help="Write the nerve, one face per line.")
    ]
    for option in reversed(options):
        command = option(command)
    return command

@click.group()
@click.option('--log-level', type=click.Choice(LOG_LEVELS), default=None, help="Logging level.")
def cli(log_level: Optional[str]):
    """Geometric join toolkit CLI."""
    if log_level:
        logging.getLogger().setLevel(log_level)

@cli.command(name='gen')
@runOptions
def generate(**options: Any):
    """Generate instance files."""
    runMode(Mode.GENERATE, options)

@cli.command(name='analyze')
@runOptions
def analyzeCommand(**options: Any):
    """Analyze one instance: nerve, homology, collapse, certificates."""
    runMode(Mode.ANALYZE, options)

@cli.command(name='search')
@runOptions
def search(**options: Any):
    """Run a counterexample search campaign."""
    runMode(Mode.SEARCH, options)

@cli.command(name='certify')
@runOptions
def certify(**options: Any):
    """Construct and verify the certificates the instance admits."""
    runMode(Mode.CERTIFY, options)

@cli.command(name='verify')
@runOptions
def verify(**options: Any):
    """Re-check a certificate file or replay a findings file."""
    runMode(Mode.VERIFY, options)

@cli.command(name='render')
@runOptions
def render(**options: Any):
    """Render a planar instance as SVG."""
    runMode(Mode.RENDER, options)

@cli.command(name='filtration')
@runOptions
def filtration(**options: Any):
    """Numeric offset filtration probe (approximate)."""
    runMode(Mode.FILTRATION, options)

# Config command group
@cli.group()
def config():
    """Commands for managing search configs."""

@config.command(name='list')
def listConfigs():
    """List all available configs."""
    click.echo("Available configs:")
    for cfg in getConfigList():
        click.echo(f"- {cfg}")

@config.command(name='view')
def viewCurrent():
    """Show the currently active config's name."""
    click.echo(getCurrentConfigName())

@config.command(name='set-current')
@click.argument('name')
def setCurrent(name: str):
    """Set the currently active config by name."""
    if not setCurrentConfig(name):
        sys.exit(ExitCode.INPUT_ERROR.value)

@config.command(name='add')
@click.argument('name')
def addConfig(name: str):
    """Add a new config by name."""
    addConfigByName(name)

@config.command(name='delete')
@click.argument('name')
@click.option(
    '--cascade',
    is_flag=True,
    help="Delete the report and findings files of the config as well."
)
def deleteConfig(name: str, cascade: bool = False):
    """Delete a config by name."""
    deleteConfigByName(name, cascade)

@config.command(name='set')
@click.argument('key')
@click.argument('value')
def setValue(key: str, value: str):
    """Set KEY to VALUE (JSON) in the current config."""
    try:
        writtenTo: str = setConfigValue(getCurrentConfigName(), key, value)
    except InputError as e:
        logger.error("%s", e)
        sys.exit(ExitCode.INPUT_ERROR.value)
    click.echo(f"{writtenTo}: {key} = {value}")

@config.command(name='show')
def showCurrent():
    """Show the resolved values of the current config."""
    configFilePath: str = getCurrentConfigFilePath()
    try:
        resolved = loadSearchConfig(configFilePath)
    except InputError as e:
        logger.error("%s", e)
        click.echo(json.dumps(getConfigJson(configFilePath), indent=4))
        sys.exit(ExitCode.INPUT_ERROR.value)
    click.echo(json.dumps(resolved.toJsonableDict(), indent=4))

def runCli() -> None:
    """
    Usage errors exit with 1 so that 2 stays reserved for exceeded budgets.
    """
    try:
        cli.main(standalone_mode=False)
    except click.exceptions.Abort:
        sys.exit(ExitCode.INPUT_ERROR.value)
    except click.ClickException as e:
        e.show()
        sys.exit(ExitCode.INPUT_ERROR.value)

if __name__ == "__main__":
    logging.basicConfig(
        level=logging.WARNING, # Options are DEBUG, INFO, WARNING, ERROR, CRITICAL
        format='%(levelname)s: %(message)s'
    )

    isDev = os.getenv("DEV_MODE", "false").lower() == "true"

    codeProfiler = None

    if isDev:
        codeProfiler = cProfile.Profile()
        codeProfiler.enable()

    try:
        runCli()
    finally:
        if codeProfiler is not None:
            codeProfiler.disable()

            s = io.StringIO()
            ps = pstats.Stats(codeProfiler, stream=s)

            # Sort by cumulative time and print top 20 functions
            ps.sort_stats('cumulative')
            ps.print_stats(20)
            print(s.getvalue())

            ps.dump_stats('profile_results.prof')
