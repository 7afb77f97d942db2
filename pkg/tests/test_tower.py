import pytest

from commands.utils import poset as po
from commands.utils import tower as tw
from commands.utils.errors import InputError


@pytest.mark.parametrize('build,sizes', [
    (tw.cantor_tower, [1, 2, 4, 8]),
    (tw.dyadic_chain_tower, [2, 3, 5, 9]),
])
def test_example_tower_sizes(build, sizes):
    assert build(3).sizes() == sizes

def test_onepoint_cantor_sizes():
    T = tw.onepoint_tower(tw.cantor_tower(2))
    assert T.sizes() == [2, 3, 5]
    for P in T.levels:
        assert len(P.maximal()) == 1

def test_dyadic_names_and_transitions():
    T = tw.dyadic_chain_tower(2)
    assert [str(x) for x in T.levels[1].names] == ['0', '1/2', '1']
    t = T.transitions[1].by_name()
    assert t['3/4'] == '1/2'
    assert t['1'] == '1'

def test_cantor_threads():
    T = tw.cantor_tower(2)
    ts = tw.threads(T, 2)
    assert len(ts.threads) == 4
    assert ('*', '1', '10') in tw.thread_names(T, ts)

def test_dyadic_threads_follow_the_top_level():
    T = tw.dyadic_chain_tower(3)
    assert len(tw.threads(T, 3).threads) == 9

def test_patch_and_dual_towers_keep_sizes():
    T = tw.dyadic_chain_tower(2)
    P = tw.patch_tower(T)
    assert P.sizes() == T.sizes()
    assert all(not L.covers() for L in P.levels)
    assert tw.dual_tower(T).sizes() == T.sizes()

def test_projection_composes():
    T = tw.cantor_tower(3)
    f = T.projection(1, 3)
    assert f.by_name()['101'] == '1'
    assert T.projection(2, 2) == po.identity(T.levels[2])

def test_make_tower_from_names(chain2):
    T = tw.make_tower([po.point('*'), chain2], [{0: '*', 1: '*'}])
    assert T.depth == 1
    with pytest.raises(InputError):
        tw.make_tower([po.point('*'), chain2], [{0: '*'}])
    with pytest.raises(InputError):
        tw.make_tower([po.point('*'), chain2], [['*']])

def test_tower_shape_is_checked(chain2):
    with pytest.raises(InputError):
        tw.Tower([chain2, chain2], [])
    with pytest.raises(InputError):
        tw.Tower([], [])
    with pytest.raises(InputError):
        tw.cantor_tower(2).check_depth(3)

def test_truncate():
    T = tw.cantor_tower(3).truncate(1)
    assert T.sizes() == [1, 2]

def test_colimit_classes_compare_at_depth():
    T = tw.cantor_tower(2)
    one = tw.ColimClass(T, 0, [1])
    assert tw.classes_equal(one, tw.ColimClass(T, 1, [1, 1]))
    assert not tw.classes_equal(one, tw.ColimClass(T, 2, [1, 1, 0, 1]))
    assert tw.pullback_class(one, 2) == (1, 1, 1, 1)
    with pytest.raises(InputError):
        tw.pullback_class(tw.ColimClass(T, 2, [0, 0, 0, 0]), 1)

def test_class_values_must_be_integers():
    with pytest.raises(InputError):
        tw.ColimClass(tw.cantor_tower(1), 1, [1, 0.5])

def test_clopen_function_group():
    group = tw.clopen_function_group(tw.cantor_tower(3), 3)
    assert group.rank == 8
    assert len(group.embeddings) == 4
    assert all(sum(row) == 1 for row in group.embeddings[0])
