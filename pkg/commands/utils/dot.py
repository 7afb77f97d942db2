"""Hasse diagrams as DOT text, rendered from templates/hasse.dot.j2."""
import os

import jinja2

from commands.utils import frame as fr


TEMPLATE_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
                            'templates')
FILLS = {'open': 'lightblue', 'closed': 'lightpink', 'boolean': 'palegreen'}

_env = jinja2.Environment(loader=jinja2.FileSystemLoader(TEMPLATE_DIR), keep_trailing_newline=True)


def _render(name, labels, covers, heights, kinds=None):
    nodes = []
    for i, label in enumerate(labels):
        node = {'id': i, 'label': str(label), 'kinds': [], 'fill': None}
        if kinds and kinds[i]:
            node['kinds'] = kinds[i]
            node['fill'] = FILLS[kinds[i][0]]
        nodes.append(node)
    ranks = []
    for h in sorted(set(heights)):
        ranks.append([i for i, x in enumerate(heights) if x == h])
    template = _env.get_template('hasse.dot.j2')
    return template.render(name=name, nodes=nodes, ranks=ranks, edges=covers)

def render_poset(P, name='poset'):
    """Cover edges only, one rank per height, nodes in canonical order."""
    return _render(name, P.names, P.covers(), P.heights())

def render_lattice(D, name='lattice'):
    L = D.order_poset()
    return _render(name, L.names, L.covers(), L.heights())

def render_nucleus_lattice(F, name='nuclei'):
    lattice, nuclei, position = fr.nucleus_lattice(F)
    L = lattice.order_poset()
    by_name = {N.name(): N for N in nuclei}
    kinds = [fr.nucleus_kinds(by_name[label]) for label in L.names]
    return _render(name, L.names, L.covers(), L.heights(), kinds)
