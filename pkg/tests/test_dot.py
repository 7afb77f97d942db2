from commands.utils import dlattice as dl
from commands.utils import dot


def _nodes(text):
    return [line for line in text.splitlines() if ' [label=' in line]

def _edges(text):
    return [line for line in text.splitlines() if ' -> ' in line]


def test_two_chain(chain2):
    text = dot.render_poset(chain2)
    assert text.startswith('digraph poset {')
    assert len(_nodes(text)) == 2
    assert _edges(text) == ['  n0 -> n1;']

def test_ranks_follow_heights(spine):
    text = dot.render_poset(spine)
    assert '  { rank=same; n0; n1; }' in text
    assert '  { rank=same; n2; }' in text

def test_free_lattice_on_three_generators():
    text = dot.render_lattice(dl.free_bounded_dlattice(3), name='free')
    assert len(_nodes(text)) == 20
    assert text.rstrip().endswith('}')

def test_nucleus_lattice_is_coloured(chain2):
    text = dot.render_nucleus_lattice(dl.downset_lattice(chain2))
    nodes = _nodes(text)
    assert len(nodes) == 4
    assert any('fillcolor="lightpink"' in line for line in nodes)
    assert any('fillcolor="lightblue"' in line for line in nodes)

def test_labels_are_quoted(spine):
    text = dot.render_lattice(dl.downset_lattice(spine))
    assert '[label="{a,b}"]' in text
