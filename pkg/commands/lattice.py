import click

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import dlattice as dl

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

common_params = common.common_params

LATTICE_FILE = click.Path(exists=True, dir_okay=False)

def _echo_lattice(D):
    J = dl.join_irreducibles(D)
    click.echo('elements:           {}'.format(len(D)))
    click.echo('join-irreducibles:  {}'.format(', '.join(str(x) for x in J.names) or '-'))
    click.echo('boolean:            {}'.format('yes' if D.is_boolean() else 'no'))
    for a in range(len(D)):
        ups = D.upper_covers(a)
        if ups:
            click.echo('  {} < {}'.format(D.label(a), ', '.join(str(D.label(b)) for b in ups)))

def _summary(D):
    return {
        'lattice': codec.encode_lattice(D),
        'join_irreducibles': codec.encode_poset(dl.join_irreducibles(D)),
        'boolean': D.is_boolean(),
    }

@click.group(context_settings=CONTEXT_SETTINGS)
def lattice():
    """Finite distributive lattices in Birkhoff normal form."""
    pass

@lattice.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=LATTICE_FILE, metavar='<lattice.json>')
@common_params
def info(path, as_json):
    """Validate a lattice and show its join-irreducibles.

        * Accepts {"birkhoff_base": <poset>} or {"elements", "leq_table"}.
        * Non-distributive tables exit 2 naming a violating triple.
    """
    D = codec.load(path, codec.read_lattice)
    if as_json:
        common.echo_json(_summary(D))
    else:
        _echo_lattice(D)

@lattice.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=LATTICE_FILE, metavar='<lattice.json>')
@common_params
def booleanize(path, as_json):
    """The Boolean algebra generated by a lattice, with the canonical embedding."""
    D = codec.load(path, codec.read_lattice)
    B, embed = dl.booleanize(D)
    if as_json:
        common.echo_json({'booleanization': codec.encode_lattice(B), 'embedding': codec.encode_hom(embed)})
        return
    _echo_lattice(B)
    click.echo('embedding:')
    for a, b in zip(D.labels, codec.encode_hom(embed)):
        click.echo('  {} -> {}'.format(a, b))

@lattice.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=LATTICE_FILE, metavar='<lattice.json>')
@common_params
def dual(path, as_json):
    """The opposite lattice, whose spectrum is the de Groot dual."""
    D = codec.load(path, codec.read_lattice)
    E, image = dl.hochster_correspondence(D)
    if as_json:
        common.echo_json({'dual': codec.encode_lattice(E), 'correspondence': [E.label(b) for b in image]})
        return
    _echo_lattice(E)

@lattice.command(context_settings=CONTEXT_SETTINGS)
@click.argument('generators', type=click.IntRange(0, dl.MAX_FREE_GENERATORS), metavar='<n>')
@common_params
def free(generators, as_json):
    """The free bounded distributive lattice on n generators."""
    D = dl.free_bounded_dlattice(generators)
    if as_json:
        common.echo_json(_summary(D))
    else:
        _echo_lattice(D)

@lattice.command(context_settings=CONTEXT_SETTINGS)
@click.argument('source', type=LATTICE_FILE, metavar='<lattice.json>')
@click.argument('target', type=LATTICE_FILE, metavar='<lattice.json>')
@click.option('--flavor',
              type=click.Choice(dl.FLAVORS),
              default=dl.BOUNDED,
              show_default=True,
              help='Preserve the top as well, or only the bottom')
@common_params
def homs(source, target, flavor, as_json):
    """Every lattice homomorphism between two lattices."""
    D = codec.load(source, codec.read_lattice)
    E = codec.load(target, codec.read_lattice)
    found = [codec.encode_hom(h) for h in dl.enumerate_homs(D, E, flavor)]
    if as_json:
        common.echo_json({'source': list(D.labels), 'flavor': flavor, 'homs': found})
        return
    click.echo('{} {} homs'.format(len(found), flavor))
    for image in found:
        click.echo('  [' + ', '.join(str(x) for x in image) + ']')

if __name__ == '__main__':
    lattice()
