import click

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import dlattice as dl
from commands.utils import dot

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

INPUT_FILE = click.Path(exists=True, dir_okay=False)

@click.group(context_settings=CONTEXT_SETTINGS)
def render():
    """Hasse diagrams as Graphviz DOT."""
    pass

@render.command('poset', context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=INPUT_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common.common_params
def render_poset(path, upset_opens, as_json):
    """Hasse diagram of a poset."""
    click.echo(dot.render_poset(common.load_poset(path, upset_opens)), nl=False)

@render.command('lattice', context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=INPUT_FILE, metavar='<lattice.json>')
@common.common_params
def render_lattice(path, as_json):
    """Hasse diagram of a distributive lattice."""
    click.echo(dot.render_lattice(codec.load(path, codec.read_lattice)), nl=False)

@render.command('free', context_settings=CONTEXT_SETTINGS)
@click.argument('generators', type=click.IntRange(0, dl.MAX_FREE_GENERATORS), metavar='<n>')
@common.common_params
def render_free(generators, as_json):
    """Hasse diagram of the free bounded distributive lattice on n generators."""
    click.echo(dot.render_lattice(dl.free_bounded_dlattice(generators), name='free'), nl=False)

@render.command('nuclei', context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=INPUT_FILE, metavar='<lattice.json>')
@common.common_params
def render_nuclei(path, as_json):
    """Hasse diagram of the nucleus lattice, open, closed and Boolean nuclei filled."""
    click.echo(dot.render_nucleus_lattice(codec.load(path, codec.read_lattice)), nl=False)

if __name__ == '__main__':
    render()
