import click

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import poset as po

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

common_params = common.common_params

POSET_FILE = click.Path(exists=True, dir_okay=False)

@click.group(context_settings=CONTEXT_SETTINGS)
def poset():
    """Finite posets: inspect, enumerate and compare."""
    pass

@poset.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=POSET_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common_params
def info(path, upset_opens, as_json):
    """Summarize a poset.

        * Lists cover relations, heights, minimal and maximal points.
        * Counts downsets (the opens of the space it defines).
    """
    P = common.load_poset(path, upset_opens)
    heights = P.heights()
    summary = {
        'poset': codec.encode_poset(P),
        'heights': {str(x): h for x, h in zip(P.names, heights)},
        'minimal': [P.names[i] for i in P.minimal()],
        'maximal': [P.names[i] for i in P.maximal()],
        'downsets': len(P.downsets()),
    }
    if as_json:
        common.echo_json(summary)
        return
    click.echo('points:   {}'.format(', '.join(str(x) for x in P.names)))
    click.echo('covers:   {}'.format(', '.join('{}<{}'.format(P.names[i], P.names[j]) for i, j in P.covers()) or '-'))
    click.echo('heights:  {}'.format(', '.join('{}={}'.format(x, h) for x, h in zip(P.names, heights))))
    click.echo('minimal:  {}'.format(', '.join(str(x) for x in summary['minimal'])))
    click.echo('maximal:  {}'.format(', '.join(str(x) for x in summary['maximal'])))
    click.echo('downsets: {}'.format(summary['downsets']))

@poset.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=POSET_FILE, metavar='<poset.json>')
@common.upset_opens_option
@common_params
def downsets(path, upset_opens, as_json):
    """List every downset, smallest first."""
    P = common.load_poset(path, upset_opens)
    found = [codec.encode_subset(P, m) for m in P.downsets()]
    if as_json:
        common.echo_json(found)
        return
    for names in found:
        click.echo(po.cube_name(names))

@poset.command('enumerate', context_settings=CONTEXT_SETTINGS)
@common.max_size_option
@common_params
def enumerate_posets(max_size, as_json):
    """Count posets up to isomorphism for each size up to --max-size."""
    counts = [len(po.all_posets(n)) for n in range(max_size + 1)]
    if as_json:
        common.echo_json({'sizes': list(range(max_size + 1)), 'counts': counts,
                          'posets': [codec.encode_poset(P) for P in po.posets_up_to(max_size)]})
        return
    for n, c in zip(range(max_size + 1), counts):
        click.echo('{:>2} elements: {}'.format(n, c))

@poset.command(context_settings=CONTEXT_SETTINGS)
@click.argument('first', type=POSET_FILE, metavar='<poset.json>')
@click.argument('second', type=POSET_FILE, metavar='<poset.json>')
@common_params
def iso(first, second, as_json):
    """Find an isomorphism between two posets; exits 1 when there is none."""
    P = common.load_poset(first)
    Q = common.load_poset(second)
    image = po.find_isomorphism(P, Q)
    f = po.MonotoneMap(P, Q, image) if image is not None else None
    if as_json:
        common.echo_json({'isomorphic': f is not None, 'map': codec.encode_map(f) if f is not None else None})
    elif f is None:
        click.echo('not isomorphic')
    else:
        for k, v in f.by_name().items():
            click.echo('{} -> {}'.format(k, v))
    if f is None:
        click.get_current_context().exit(common.EXIT_FAILED)

if __name__ == '__main__':
    poset()
