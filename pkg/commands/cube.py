import click

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import qmatrix as qm
from commands.utils import vsheaf as vs

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

common_params = common.common_params

KINDS = {
    'random': vs.random_cube,
    'limit': vs.limit_cube,
    'perturbed': vs.perturbed_cube,
}

@click.group(context_settings=CONTEXT_SETTINGS)
def cube():
    """Cubical diagrams of rational vector spaces."""
    pass

@cube.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=click.Path(exists=True, dir_okay=False), metavar='<cube.json>')
@common_params
def check(path, as_json):
    """Decide whether a cube is cartesian.

        * Runs the direct criterion and the recursive one along every axis.
        * A face that does not commute exits 2 naming the face.
    """
    cb = codec.load(path, codec.read_cube)
    direct = vs.cube_cartesian_direct(cb)
    axes = {str(label): vs.cube_cartesian_recursive(cb, label) for label in cb.labels}
    cartesian = vs.cube_cartesian_check(cb)
    if as_json:
        common.echo_json({'n': cb.n, 'cartesian': cartesian, 'direct': direct, 'recursive': axes})
        return
    click.echo('cartesian: {}'.format('yes' if cartesian else 'no'))
    for label, verdict in axes.items():
        click.echo('  along {}: {}'.format(label, 'pullback' if verdict else 'not a pullback'))

@cube.command(context_settings=CONTEXT_SETTINGS)
@click.option('--axes',
              type=click.IntRange(1, vs.MAX_CUBE_AXES),
              default=3,
              show_default=True,
              help='Number of axes',
              metavar='<int>')
@click.option('--kind',
              type=click.Choice(sorted(KINDS)),
              default='random',
              show_default=True,
              help='Random maps, a limit cube, or a limit cube with one extra dimension')
@common.seed_option
@common_params
def random(axes, kind, seed, as_json):
    """Print a seeded random cube in the cube file format."""
    cb = KINDS[kind](axes, qm.make_rng(seed))
    common.echo_json(codec.encode_cube(cb))

if __name__ == '__main__':
    cube()
