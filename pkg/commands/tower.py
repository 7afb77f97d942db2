import click

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import tower as tw

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

common_params = common.common_params

TOWER_FILE = click.Path(exists=True, dir_okay=False)

def _echo_tower(T, d, as_json):
    T = T.truncate(d)
    if as_json:
        common.echo_json(codec.encode_tower(T))
        return
    for i, P in enumerate(T.levels):
        click.echo('level {}: {} points'.format(i, P.n))
        for lo, hi in P.covers():
            click.echo('  {} < {}'.format(P.names[lo], P.names[hi]))

@click.group(context_settings=CONTEXT_SETTINGS)
def tower():
    """Towers of finite posets standing in for pro-finite spaces.

        * Every answer is exact at the requested depth only.
    """
    pass

@tower.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=TOWER_FILE, metavar='<tower.json>')
@common.depth_option
@common_params
def threads(path, depth, as_json):
    """Compatible point sequences down to --depth."""
    T = codec.load(path, codec.read_tower)
    ts = tw.threads(T, depth)
    names = [list(t) for t in tw.thread_names(T, ts)]
    if as_json:
        common.echo_json({'depth': depth, 'threads': names})
        return
    click.echo('{} threads at depth {}'.format(len(names), depth))
    for t in names:
        click.echo('  ' + ' <- '.join(t))

@tower.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=TOWER_FILE, metavar='<tower.json>')
@common.depth_option
@common_params
def patch(path, depth, as_json):
    """The levelwise patch tower."""
    T = codec.load(path, codec.read_tower)
    T.check_depth(depth)
    _echo_tower(tw.patch_tower(T), depth, as_json)

@tower.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=TOWER_FILE, metavar='<tower.json>')
@common.depth_option
@common_params
def dual(path, depth, as_json):
    """The levelwise de Groot dual tower."""
    T = codec.load(path, codec.read_tower)
    T.check_depth(depth)
    _echo_tower(tw.dual_tower(T), depth, as_json)

@tower.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=TOWER_FILE, metavar='<tower.json>')
@common.depth_option
@common_params
def onepoint(path, depth, as_json):
    """The levelwise one-point compactification."""
    T = codec.load(path, codec.read_tower)
    T.check_depth(depth)
    _echo_tower(tw.onepoint_tower(T), depth, as_json)

@tower.command(context_settings=CONTEXT_SETTINGS)
@click.argument('kind', type=click.Choice(['cantor', 'dyadic-chain']))
@common.depth_option
@common_params
def example(kind, depth, as_json):
    """Print one of the built-in towers in the tower file format."""
    T = tw.cantor_tower(depth) if kind == 'cantor' else tw.dyadic_chain_tower(depth)
    common.echo_json(codec.encode_tower(T))

if __name__ == '__main__':
    tower()
