import click

try:
    import commands.common as common
except ImportError:
    # Allow running file as standalone
    import common

from commands.utils import codec
from commands.utils import frame as fr

CONTEXT_SETTINGS = dict(help_option_names=['--help', '-h'])

common_params = common.common_params

LATTICE_FILE = click.Path(exists=True, dir_okay=False)

@click.group(context_settings=CONTEXT_SETTINGS)
def frame():
    """Finite frames: Heyting structure, nuclei and sublocales."""
    pass

@frame.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=LATTICE_FILE, metavar='<lattice.json>')
@common_params
def info(path, as_json):
    """Frame summary: size, points, stable compactness."""
    F = codec.load(path, codec.read_lattice)
    summary = fr.frame_summary(F)
    if as_json:
        common.echo_json(summary)
        return
    common.echo_config(summary, ['elements', 'join_irreducibles', 'boolean', 'stably_compact', 'height'])
    click.echo('points: {}'.format(', '.join(str(x) for x in summary['points'])))

@frame.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=LATTICE_FILE, metavar='<lattice.json>')
@common_params
def nuclei(path, as_json):
    """The nucleus lattice, marking open, closed and Boolean nuclei.

        * Nuclei are printed as images of the frame's elements in order.
        * The lattice order is pointwise.
    """
    F = codec.load(path, codec.read_lattice)
    lattice, found, _ = fr.nucleus_lattice(F)
    rows = []
    for N in found:
        rows.append({'image': codec.encode_nucleus(N), 'kinds': fr.nucleus_kinds(N),
                     'fixed': [F.label(x) for x in N.fixed_points()]})
    if as_json:
        common.echo_json({'frame': list(F.labels), 'nuclei': rows, 'lattice': codec.encode_lattice(lattice)})
        return
    click.echo('{} nuclei on a {}-element frame [{}]'.format(
        len(found), len(F), ', '.join(str(x) for x in F.labels)))
    for row in rows:
        kinds = ' ({})'.format(', '.join(row['kinds'])) if row['kinds'] else ''
        click.echo('  [{}]{}'.format(', '.join(str(x) for x in row['image']), kinds))

@frame.command(context_settings=CONTEXT_SETTINGS)
@click.argument('path', type=click.Path(exists=True, dir_okay=False), metavar='<nucleus.json>')
@common_params
def quotient(path, as_json):
    """Fixed-point frame and congruence of a nucleus."""
    N = codec.load(path, codec.read_nucleus)
    F = N.frame
    fixed = fr.fixed_frame(N)
    congruence, _ = fr.congruence_quotient(N)
    classes = [[F.label(x) for x in c] for c in congruence.classes]
    if as_json:
        common.echo_json({'fixed': codec.encode_lattice(fixed.lattice), 'classes': classes,
                          'kinds': fr.nucleus_kinds(N)})
        return
    click.echo('fixed points: {}'.format(', '.join(str(x) for x in fixed.lattice.labels)))
    click.echo('classes:      {}'.format(' | '.join(' '.join(str(x) for x in c) for c in classes)))
    click.echo('kinds:        {}'.format(', '.join(fr.nucleus_kinds(N)) or '-'))

if __name__ == '__main__':
    frame()
