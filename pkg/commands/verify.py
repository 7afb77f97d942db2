import click

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import suites

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

common_params = common.common_params

@click.command(context_settings=CONTEXT_SETTINGS)
@click.argument('suite', type=click.Choice(list(suites.SUITES) + ['all']))
@click.argument('path', required=False, type=click.Path(exists=True, dir_okay=False), metavar='[tower.json]')
@common.max_size_option
@common.depth_option
@common.seed_option
@click.option('--workers',
              envvar=common.prefix_envvar('WORKERS'),
              type=click.IntRange(1, 64),
              default=1,
              show_default=True,
              help='Worker processes for sweeps',
              metavar='<int>')
@common_params
def verify(suite, path, max_size, depth, seed, workers, as_json):
    """Run a verification suite and report counterexamples.

        * Exit code 0 when every case passes, 1 on the first failure, 2 on bad input.
        * main-theorem takes an optional tower file; without one it runs the built-in towers.
        * Reports are identical for any number of workers.
    """
    if path is not None and suite != 'main-theorem':
        raise click.UsageError('Only main-theorem takes a tower file')
    options = dict(max_size=max_size, depth=depth, seed=seed, workers=workers)
    if path is not None:
        options['tower'] = codec.load(path, codec.read_tower)
    if suite == 'all':
        report = suites.run_all(**options)
    else:
        report = suites.run_suite(suite, **options)
    common.emit_report(report, as_json)

if __name__ == '__main__':
    verify()
