import click
import os
import pystache

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import space as sp

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

common_params = common.common_params

POSET_FILE = click.Path(exists=True, dir_okay=False)

def _echo_space(X, as_json, extra=None):
    P = X.carrier
    data = {'poset': codec.encode_poset(P), 'opens': [codec.encode_subset(P, m) for m in P.downsets()]}
    data.update(extra or {})
    if as_json:
        common.echo_json(data)
        return
    click.echo('points: {}'.format(', '.join(str(x) for x in P.names)))
    click.echo('covers: {}'.format(', '.join('{}<{}'.format(P.names[i], P.names[j]) for i, j in P.covers()) or '-'))
    click.echo('opens:  {}'.format(len(data['opens'])))

@click.group(context_settings=CONTEXT_SETTINGS)
def space():
    """Finite spaces: patch, de Groot dual, one-point compactification.

        * Opens are downsets; pass --upset-opens to read upsets instead.
    """
    pass

@space.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=POSET_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common_params
def patch(path, upset_opens, as_json):
    """The patch space: discrete on the same points."""
    X = sp.FiniteSpace(common.load_poset(path, upset_opens))
    D, back = sp.patch(X)
    _echo_space(D, as_json, {'to_space': codec.encode_map(back)})

@space.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=POSET_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common_params
def dual(path, upset_opens, as_json):
    """The de Groot dual: closed sets become saturated compacts."""
    X = sp.FiniteSpace(common.load_poset(path, upset_opens))
    _echo_space(sp.de_groot_dual(X), as_json)

@space.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=POSET_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common_params
def onepoint(path, upset_opens, as_json):
    """X⁺: a new point above everything, open only as the whole space."""
    X = sp.FiniteSpace(common.load_poset(path, upset_opens))
    Xp, incl = sp.one_point(X)
    _echo_space(Xp, as_json, {'top': Xp.carrier.names[sp.top_of(Xp)], 'inclusion': codec.encode_map(incl)})

@space.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=POSET_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common_params
def filters(path, upset_opens, as_json):
    """Scott open filters of the open-set lattice and their saturated compact cores."""
    P = common.load_poset(path, upset_opens)
    found = sp.scott_open_filters(P)
    cores = [codec.encode_subset(P, f.core()) for f in found]
    if as_json:
        common.echo_json({'filters': len(found), 'cores': cores,
                          'hofmann_mislove': sp.hofmann_mislove_check(P)})
        return
    click.echo('{} Scott open filters'.format(len(found)))
    for core in cores:
        click.echo('  core {{{}}}'.format(','.join(str(x) for x in core)))

@space.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=POSET_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common_params
def report(path, upset_opens, as_json):
    """Correspondence table of closed, saturated compact, elementary and patch-closed sets."""
    P = common.load_poset(path, upset_opens)
    table = sp.space_report(P)
    if as_json:
        common.echo_json(table)
        return
    with open(os.path.join(common.TEMPLATE_DIR, 'space_report.txt'), encoding='utf-8') as f:
        template = f.read()
    context = dict(table)
    context['names'] = ', '.join(table['names'])
    click.echo(pystache.render(template, context), nl=False)

if __name__ == '__main__':
    space()
