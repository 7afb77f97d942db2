import pytest

from hypothesis import given, settings

from commands.utils import poset as po
from commands.utils.errors import NotMonotoneError, PosetError, SizeBoundError
from conftest import small_posets


@pytest.mark.parametrize('n,count', [(0, 1), (1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_poset_counts_up_to_isomorphism(n, count):
    assert len(po.all_posets(n)) == count

def test_chain_covers_and_heights(chain3):
    assert chain3.covers() == [(0, 1), (1, 2)]
    assert chain3.heights() == [0, 1, 2]
    assert chain3.minimal() == [0]
    assert chain3.maximal() == [2]

def test_spine_downsets(spine):
    names = [sorted(spine.names_of(m)) for m in spine.downsets()]
    assert names == [[], ['a'], ['b'], ['a', 'b'], ['a', 'b', 'c']]
    assert len(spine.upsets()) == 5

def test_cycle_is_reported():
    with pytest.raises(PosetError) as e:
        po.from_covers(['x', 'y', 'z'], [('x', 'y'), ('y', 'z'), ('z', 'x')])
    assert set(e.value.cycle) == {'x', 'y', 'z'}

def test_unknown_name_in_covers():
    with pytest.raises(PosetError):
        po.from_covers(['x'], [('x', 'q')])

def test_duplicate_names():
    with pytest.raises(PosetError):
        po.antichain(2, ['x', 'x'])

def test_leq_table_must_be_transitive():
    with pytest.raises(PosetError):
        po.from_leq(['a', 'b', 'c'], [[1, 1, 0], [0, 1, 1], [0, 0, 1]])

def test_non_monotone_map(chain2):
    with pytest.raises(NotMonotoneError) as e:
        po.MonotoneMap(chain2, chain2, [1, 0])
    assert e.value.pair is not None

def test_monotone_maps_between_chains(chain2):
    assert len(po.all_monotone_maps(chain2, chain2)) == 3

def test_compose_and_preimage(chain3, chain2):
    f = po.MonotoneMap(chain3, chain2, [0, 0, 1])
    g = po.MonotoneMap(chain2, chain3, [1, 2])
    h = po.compose(g, f)
    assert h.image == (1, 1, 2)
    assert f.preimage(0b01) == 0b011
    assert f.fiber(1) == 0b100

def test_join_puts_left_below_right(chain2):
    J = po.join(po.antichain(2, ['a', 'b']), po.point('t'))
    t = J.index('t')
    assert all(J.leq(i, t) for i in range(J.n))

def test_join_renames_on_clash(chain2):
    J = po.join(chain2, chain2)
    assert set(J.names) == {'0_0', '1_0', '0_1', '1_1'}

def test_disjoint_union_keeps_the_halves_apart(chain2):
    U = po.disjoint_union(chain2, po.point('t'))
    assert U.n == 3
    assert U.covers() == [(U.index(0), U.index(1))]
    assert not U.leq(U.index('t'), U.index(1))

def test_closures(chain3, antichain2):
    assert po.down_closure(chain3, chain3.subset([1])) == chain3.subset([0, 1])
    assert po.up_closure(chain3, chain3.subset([1])) == chain3.subset([1, 2])
    assert po.down_closure(chain3, chain3.subset()) == chain3.subset()
    assert po.down_closure(antichain2, antichain2.subset([0])).names() == [0]

def test_subset_mask_algebra(spine):
    S = spine.subset(['a', 'c'])
    T = spine.subset(['b', 'c'])
    assert (S & T).names() == ['c']
    assert (S | T) == spine.subset(['a', 'b', 'c'])
    assert (S - T).names() == ['a']
    assert len(S) == 2 and spine.index('c') in S
    assert spine.subset(['c']).issubset(S)
    assert S.complement().names() == ['b']

def test_indicator_rows(chain2):
    assert po.indicator_vector(chain2, 0) == (1, 0)
    assert po.indicator_vector(chain2, 1) == (1, 1)

def test_cube_sizes():
    assert po.cube(3).n == 8
    assert po.punctured_cube(3).n == 7
    assert po.cube(['x', 'y']).names[0] == '{}'
    with pytest.raises(SizeBoundError):
        po.cube(po.MAX_CUBE_DIMENSION + 1)

@pytest.mark.parametrize('P', list(po.posets_up_to(5)))
def test_urysohn_embedding_is_an_order_embedding(P):
    assert po.urysohn_cube_embedding(P).is_order_embedding()

def test_urysohn_embedding_is_bounded_by_the_cube():
    with pytest.raises(SizeBoundError):
        po.urysohn_cube_embedding(po.chain(po.MAX_CUBE_DIMENSION + 1))

def test_isomorphism_ignores_names(spine):
    relabelled = po.from_covers(['x', 'y', 'z'], [('y', 'x'), ('z', 'x')])
    image = po.find_isomorphism(spine, relabelled)
    assert image is not None
    assert relabelled.names[image[spine.index('c')]] == 'x'
    assert not po.is_isomorphic(spine, po.opposite(spine))

def test_product_of_chains():
    P = po.product(po.chain(2), po.chain(2))
    assert P.n == 4
    assert len(P.covers()) == 4

@given(small_posets)
@settings(max_examples=60, deadline=None)
def test_opposite_is_an_involution(P):
    assert po.opposite(po.opposite(P)) == P
    assert len(P.downsets()) == len(po.opposite(P).downsets())

@given(small_posets)
@settings(max_examples=60, deadline=None)
def test_downsets_and_upsets_are_complements(P):
    ups = set(P.upsets())
    assert all(P.full & ~m in ups for m in P.downsets())
    assert all(P.is_downset(m) for m in P.downsets())

@given(small_posets)
@settings(max_examples=60, deadline=None)
def test_canonical_form_is_isomorphism_invariant(P):
    renamed = po.FinitePoset(['p{}'.format(x) for x in P.names], P.down)
    assert po.canonical_form(renamed) == po.canonical_form(P)
