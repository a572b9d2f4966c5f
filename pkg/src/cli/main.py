#!/usr/bin/env python3

import click
import logging
import sys
import os
from dataclasses import replace
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..'))

from src.core.bench.experiment_config import EXPERIMENT_ALIASES, EXPERIMENTS, HEAVY_TAIL_BASELINE, default_config, load_config
from src.core.bench.experiment_runner import ExperimentRunner
from src.core.bench.invariant_suite import InvariantSuite
from src.core.config import (
    ALPHA_MODES,
    DEFAULT_DEPTH_NOTION,
    DEFAULT_DIRECTIONS,
    DEFAULT_EPSILON,
    DEFAULT_MC_POINTS,
    DEFAULT_N_ALPHA,
    DEFAULT_P,
    DEPTH_NOTIONS,
    ENV_SEED,
    ENV_THREADS,
    Settings,
)
from src.core.generators.contamination_generator import ContaminationGenerator
from src.core.generators.synthetic_generator import SyntheticGenerator
from src.core.metrics.data_depth_distance import DataDepthDistance
from src.core.metrics.distance_dispatcher import METHODS, DistanceDispatcher
from src.core.types import CONTAMINATION_SCHEMES, GENERATOR_FAMILIES, ContaminationSpec, GeneratorSpec, IntegrationBox, MetricParams
from src.core.utilities.cloud_io_utility import FORMATS, CloudIOUtility
from src.core.utilities.result_formatter import OUTPUT_FORMATS, ResultFormatter

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: int, settings: Settings):
    """Log to stderr only, so stdout stays byte-identical across runs."""
    if verbose:
        level = logging.INFO if verbose == 1 else logging.DEBUG
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT, force=True)


def parse_floats(text, name):
    try:
        return [float(part) for part in text.split(',')]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}", param_hint=name)


def parse_box(ctx, param, value):
    """``l1,...,ld:u1,...,ud`` -> (lower, upper)."""
    if value is None:
        return None
    if value.count(':') != 1:
        raise click.BadParameter("expected 'l1,...,ld:u1,...,ud'")
    lower, upper = value.split(':')
    return parse_floats(lower, '--box'), parse_floats(upper, '--box')


def parse_shift(ctx, param, value):
    values = parse_floats(value, '--shift')
    return values[0] if len(values) == 1 else values


@click.group()
@click.version_option(version="1.0.0", prog_name="depth-toolbox")
@click.option('-v', '--verbose', count=True, help='Log progress to stderr (-vv for debug output)')
@click.pass_context
def cli(ctx, verbose):
    """Depth Toolbox - depth-based distances between point clouds."""
    try:
        settings = Settings.from_env()
    except ValueError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        sys.exit(1)
    configure_logging(verbose, settings)
    ctx.obj = settings


@cli.command()
@click.argument('x_path', type=click.Path(dir_okay=False))
@click.argument('y_path', type=click.Path(dir_okay=False))
@click.option('--method', type=click.Choice(METHODS), default='dr',
              help='Distance to compute')
@click.option('--depth', 'depth_notion', type=click.Choice(DEPTH_NOTIONS), default=DEFAULT_DEPTH_NOTION,
              help='Depth notion (dr and dd)')
@click.option('--p', type=click.FloatRange(min=1), default=DEFAULT_P,
              help='Order p >= 1')
@click.option('--eps', 'epsilon', type=click.FloatRange(0, 1, max_open=True), default=DEFAULT_EPSILON,
              help='Trimming level in [0, 1)')
@click.option('--ndirs', type=click.IntRange(min=1), default=DEFAULT_DIRECTIONS,
              help='Number of random directions K')
@click.option('--nalpha', type=click.IntRange(min=1), default=DEFAULT_N_ALPHA,
              help='Number of depth levels')
@click.option('--seed', type=int, envvar=ENV_SEED, default=0, show_envvar=True,
              help='Random seed')
@click.option('--box', callback=parse_box, default=None,
              help="Integration box for dd as 'l1,...,ld:u1,...,ud'")
@click.option('--mc-points', type=click.IntRange(min=1), default=DEFAULT_MC_POINTS,
              help='Monte-Carlo points for dd')
@click.option('--alpha-mode', type=click.Choice(ALPHA_MODES), default='random',
              help='Random levels or an evenly spaced grid')
@click.option('--alpha-upper', type=click.FloatRange(0, 1, min_open=True), default=None,
              help='Fixed upper depth level (at most the deepest common level)')
@click.option('--trim-upper', is_flag=True,
              help='Integrate up to alpha* - eps')
@click.option('--levels', is_flag=True,
              help='Include per-level Hausdorff distances (json)')
@click.option('--format', 'output_format', type=click.Choice(OUTPUT_FORMATS), default='json',
              help='Output format')
@click.option('--threads', type=click.IntRange(min=1), envvar=ENV_THREADS, default=None,
              help='Worker threads (default: machine parallelism)')
@click.pass_obj
def dist(settings, x_path, y_path, method, depth_notion, p, epsilon, ndirs, nalpha, seed, box,
         mc_points, alpha_mode, alpha_upper, trim_upper, levels, output_format, threads):
    """Compute the distance between the clouds in X_PATH and Y_PATH."""
    try:
        params = MetricParams(
            p=p,
            epsilon=epsilon,
            n_alpha=nalpha,
            K=ndirs,
            seed=seed,
            depth_notion=depth_notion,
            alpha_mode=alpha_mode,
            alpha_upper=alpha_upper,
            trim_upper=trim_upper,
        )
        io_utility = CloudIOUtility()
        X = io_utility.load_cloud(x_path)
        Y = io_utility.load_cloud(y_path)

        integration_box = None
        if method == 'dd':
            if box is not None:
                integration_box = IntegrationBox(box[0], box[1], mc_points)
            else:
                integration_box = DataDepthDistance().default_box(X, Y, mc_points)

        dispatcher = DistanceDispatcher(settings.chunk_elements, threads or settings.threads)
        result = dispatcher.compute(method, X, Y, params, integration_box)
        click.echo(ResultFormatter().format_distance(result, output_format, include_levels=levels))

    except ValueError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        sys.exit(1)


@cli.command()
@click.option('--family', type=click.Choice(GENERATOR_FAMILIES), default='gaussian_pair',
              help='Synthetic setting')
@click.option('--n', type=click.IntRange(min=1), default=1000,
              help='Points per cloud')
@click.option('--d', type=click.IntRange(min=1), default=2,
              help='Dimension (gaussian_pair, student_pair)')
@click.option('--shift', callback=parse_shift, default='0',
              help='Shift of the second cloud: a number or comma-separated vector')
@click.option('--dof', type=float, default=float('inf'),
              help='Student-t degrees of freedom (inf for Gaussian)')
@click.option('--noise', type=click.FloatRange(min=0), default=0.2,
              help='Noise level (circles)')
@click.option('--factor', type=click.FloatRange(0, 1, min_open=True, max_open=True), default=0.8,
              help='Inner radius (circles)')
@click.option('--seed', type=int, envvar=ENV_SEED, default=0,
              help='Random seed')
@click.option('--out-x', type=click.Path(dir_okay=False), required=True,
              help='Output file for the first cloud')
@click.option('--out-y', type=click.Path(dir_okay=False), required=True,
              help='Output file for the second cloud')
@click.option('--format', 'cloud_format', type=click.Choice(FORMATS), default='csv',
              help='Cloud file format')
@click.option('--header', is_flag=True,
              help='Write a header line (csv)')
@click.option('--contaminate', 'fraction', type=click.FloatRange(0, 1), default=0.0,
              help='Fraction of points replaced by outliers')
@click.option('--scheme', type=click.Choice(CONTAMINATION_SCHEMES), default='uniform_box',
              help='Outlier distribution')
@click.option('--box-lower', type=float, default=-10.0,
              help='Lower corner of the outlier box (uniform_box)')
@click.option('--box-upper', type=float, default=20.0,
              help='Upper corner of the outlier box (uniform_box)')
@click.option('--both/--x-only', default=True,
              help='Contaminate both clouds or only the first')
def gen(family, n, d, shift, dof, noise, factor, seed, out_x, out_y, cloud_format, header,
        fraction, scheme, box_lower, box_upper, both):
    """Generate a pair of synthetic point clouds."""
    try:
        spec = GeneratorSpec(family=family, d=d, n=n, shift=shift, dof=dof,
                             noise=noise, factor=factor, seed=seed)
        X, Y = SyntheticGenerator().generate(spec)

        if fraction > 0:
            contamination = ContaminationSpec(scheme, fraction, box_lower, box_upper, seed)
            X, Y = ContaminationGenerator().contaminate_pair(X, Y, contamination, both)

        io_utility = CloudIOUtility()
        columns = [f"x{i + 1}" for i in range(X.shape[1])] if header else None
        io_utility.save_cloud(X, out_x, cloud_format, columns)
        io_utility.save_cloud(Y, out_y, cloud_format, columns)
        click.echo(f"Wrote {X.shape[0]}x{X.shape[1]} and {Y.shape[0]}x{Y.shape[1]} clouds to {out_x}, {out_y}")

    except ValueError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        sys.exit(1)


@cli.command()
@click.argument('experiment', type=click.Choice(sorted(set(EXPERIMENT_ALIASES) | set(EXPERIMENTS))))
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), default=None,
              help='YAML or TOML experiment configuration')
@click.option('--repetitions', type=click.IntRange(min=1), default=None,
              help='Override the number of repetitions')
@click.option('--seed', type=int, default=None,
              help='Override the base seed')
@click.option('--format', 'output_format', type=click.Choice(OUTPUT_FORMATS), default='csv',
              help='Output format')
@click.option('--output', type=click.Path(dir_okay=False), default=None,
              help='Write the table to a file instead of stdout')
@click.option('--threads', type=click.IntRange(min=1), envvar=ENV_THREADS, default=None,
              help='Worker threads for repetitions')
@click.option('--timing/--no-timing', default=True,
              help='Record wall-clock seconds per evaluation (0 when disabled)')
@click.pass_obj
def bench(settings, experiment, config_path, repetitions, seed, output_format, output, threads, timing):
    """Run a benchmark EXPERIMENT and print its result table."""
    try:
        if config_path:
            config = load_config(config_path, experiment)
        else:
            config = default_config(experiment)
        overrides = {}
        if repetitions is not None:
            overrides['repetitions'] = repetitions
        if seed is not None:
            overrides['base_seed'] = seed
        if overrides:
            config = replace(config, **overrides)

        runner = ExperimentRunner(threads or settings.threads, settings.chunk_elements, timing)
        rows = runner.run(config)

        metadata = {
            'experiment': config.experiment,
            'base_seed': config.base_seed,
            'repetitions': config.repetitions,
        }
        if config.experiment == 'heavy_tails':
            metadata['baseline'] = HEAVY_TAIL_BASELINE
        text = ResultFormatter().format_rows(rows, output_format, metadata)

        if output:
            with open(output, 'w') as handle:
                handle.write(text + '\n')
            click.echo(f"Wrote {len(rows)} rows to {output}", err=True)
        else:
            click.echo(text)

    except ValueError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(1)
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        sys.exit(1)


@cli.command()
@click.option('--seed', type=int, default=0,
              help='Seed of the check inputs')
def selftest(seed):
    """Run the invariant suite; exit 1 if any check fails."""
    try:
        results = InvariantSuite(seed).run()
    except Exception as e:
        click.echo(f"Unexpected error: {e}", err=True)
        sys.exit(1)
    for result in results:
        status = "ok" if result.passed else "FAIL"
        click.echo(f"{status:4} {result.name}: {result.detail}")

    failed = [r.name for r in results if not r.passed]
    if failed:
        click.echo(f"Error: {len(failed)} check(s) failed: {', '.join(failed)}", err=True)
        sys.exit(1)
    click.echo(f"All {len(results)} checks passed")


if __name__ == '__main__':
    cli()
