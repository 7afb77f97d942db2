import pytest

from hypothesis import given, settings

from commands.utils import dlattice as dl
from commands.utils import frame as fr
from commands.utils import poset as po
from commands.utils import space as sp
from commands.utils import vsheaf as vs
from commands.utils.errors import NotOpenError, SizeBoundError
from conftest import small_posets


def test_sierpinski_families(sierpinski):
    X = sp.FiniteSpace(sierpinski)
    assert len(sp.opens(X)) == 3
    assert len(sp.closed_sets(X)) == 3
    assert len(sp.saturated_compacts(X)) == 3
    assert len(sp.elementary_compacts(X)) == 4

def test_sierpinski_patch_is_discrete(sierpinski):
    D, back = sp.patch(sierpinski)
    assert D.carrier.n == 2
    assert D.carrier.covers() == []
    assert back.is_surjective()

def test_one_point_adds_a_top(spine):
    Xp, incl = sp.one_point(spine)
    top = sp.top_of(Xp)
    assert Xp.names[top] == 'top'
    assert len(Xp.carrier.downsets()) == len(spine.downsets()) + 1
    assert incl.is_order_embedding()

def test_one_point_name_does_not_clash():
    P = po.antichain(1, ['top'])
    Xp, _ = sp.one_point(P)
    assert set(Xp.names) == {'top', "top'"}

def test_de_groot_dual_swaps_families(spine):
    D = sp.de_groot_dual(spine).carrier
    assert len(D.upsets()) == len(spine.downsets())
    assert sp.de_groot_laws_check(spine)

def test_scott_filters_match_compacts(spine):
    filters = sp.scott_open_filters(spine)
    assert len(filters) == len(spine.downsets())
    assert sorted(f.core() for f in filters) == sorted(spine.downsets())

def test_filter_bound():
    with pytest.raises(SizeBoundError):
        sp.scott_open_filters(po.antichain(sp.MAX_FILTER_POINTS + 1))

def test_patch_generation_witnesses(spine):
    result = sp.patch_generation_check(spine)
    assert result.ok
    assert len(result.witnesses) == 1 << spine.n

def test_space_report(sierpinski):
    report = sp.space_report(sierpinski)
    assert report['opens'] == 3
    assert report['patch_points'] == 2
    assert report['patch_closed'] == 4
    assert report['one_point_opens'] == 4

def test_ksheaf_values_of_constant_sheaf(spine):
    table = sp.ksheaf_value_table(spine, vs.constant_sheaf(spine))
    assert table['{}'] == 0
    assert table['{a}'] == 1
    assert table['{a,b}'] == 2
    assert table['{a,b,c}'] == 1

def test_ksheaf_values_of_a_skyscraper_at_the_top(chain2):
    F = vs.skyscraper(chain2, chain2.index(1))
    assert list(sp.ksheaf_value_table(chain2, F).values()) == [0, 0, 1]

def test_subspace_nucleus_of_everything_is_identity(spine):
    N = sp.subspace_nucleus(spine, spine.full)
    assert N.is_identity()
    assert sp.subspace_nucleus(spine, 0) == fr.top_nucleus(dl.downset_lattice(spine))

def test_sublocale_correspondence(spine):
    assert sp.sublocale_correspondence_check(spine)
    with pytest.raises(SizeBoundError):
        sp.sublocale_correspondence_check(po.antichain(sp.MAX_SUBLOCALE_POINTS + 1))

def test_partial_maps_and_one_point_adjunction(chain2, spine):
    maps = sp.all_partial_maps(spine, chain2)
    assert maps
    for f in maps:
        assert sp.one_point_adjunction_check(spine, f)

def test_partial_map_on_a_closed_set_is_rejected(chain2):
    f = po.MonotoneMap(po.subposet(chain2, 0b10), chain2, [1])
    with pytest.raises(NotOpenError):
        sp.partial_stone(chain2, f)

@given(small_posets)
@settings(max_examples=60, deadline=None)
def test_hofmann_mislove(P):
    assert sp.hofmann_mislove_check(P)

@given(small_posets)
@settings(max_examples=60, deadline=None)
def test_one_point_laws(P):
    assert sp.one_point_laws_check(P)
    assert sp.de_groot_laws_check(P)

def test_one_point_laws_look_at_the_compacts(spine, monkeypatch):
    original = sp.saturated_compacts

    def without_the_whole_space(X):
        full = getattr(X, 'carrier', X).full
        return [K for K in original(X) if K.members != full]

    monkeypatch.setattr(sp, 'saturated_compacts', without_the_whole_space)
    assert not sp.one_point_laws_check(spine)

@given(small_posets)
@settings(max_examples=30, deadline=None)
def test_perfect_subspaces(P):
    for S in range(1 << P.n):
        assert sp.perfect_subspace_check(P, S)
