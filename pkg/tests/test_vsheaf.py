import pytest

from hypothesis import given, settings, strategies as st

from commands.utils import poset as po
from commands.utils import qmatrix as qm
from commands.utils import vsheaf as vs
from commands.utils.errors import CommutativityError, DimensionError, FunctorialityError, NotOpenError
from commands.utils.qmatrix import QMatrix
from conftest import small_posets


seeds = st.integers(0, 2 ** 32)


def test_constant_sheaf_sections(spine):
    F = vs.constant_sheaf(spine)
    assert vs.global_sections(F).dim == 1
    assert vs.sections(F, spine.mask_of(['a', 'b'])).dim == 2
    assert vs.sections(F, 0).dim == 0
    assert not vs.is_flabby(F)

def test_sections_need_an_open(spine):
    with pytest.raises(NotOpenError):
        vs.sections(vs.constant_sheaf(spine), spine.mask_of(['c']))

def test_missing_restriction_is_named(chain2):
    with pytest.raises(FunctorialityError) as e:
        vs.VecSheaf(chain2, [1, 1], {})
    assert e.value.witness == (1, 0)

def test_restrictions_must_compose(chain3):
    one = QMatrix.identity(1)
    maps = {(1, 0): one, (2, 1): one, (2, 0): one.scale(2)}
    with pytest.raises(FunctorialityError):
        vs.VecSheaf(chain3, [1, 1, 1], maps)

def test_from_cover_maps_composes(chain3):
    two = QMatrix.from_rows([[2]])
    F = vs.VecSheaf.from_cover_maps(chain3, [1, 1, 1], {(1, 0): two, (2, 1): two})
    assert F.restriction(2, 0) == QMatrix.from_rows([[4]])

def test_wrong_shape_is_rejected(chain2):
    with pytest.raises(DimensionError):
        vs.VecSheaf(chain2, [1, 2], {(1, 0): QMatrix.identity(1)})

def test_zero_sheaf(spine):
    Z = vs.zero_sheaf(spine)
    assert Z.dims == (0, 0, 0)
    assert vs.global_sections(Z).dim == 0
    assert vs.is_flabby(Z)

def test_pullback_reads_stalks_through_the_map(chain3, chain2):
    F = vs.VecSheaf(chain2, [1, 2], {(1, 0): QMatrix.from_rows([[1, 0]])})
    G = vs.pullback_sheaf(po.MonotoneMap(chain3, chain2, [0, 0, 1]), F)
    assert G.dims == (1, 1, 2)
    assert G.restriction(1, 0) == QMatrix.identity(1)
    assert G.restriction(2, 0) == QMatrix.from_rows([[1, 0]])

def test_skyscraper_at_the_top(spine):
    F = vs.skyscraper(spine, spine.index('c'))
    assert vs.global_sections(F).dim == 1
    assert vs.sections(F, spine.mask_of(['a', 'b'])).dim == 0
    assert vs.is_flabby(F)
    c = spine.index('c')
    assert F.restriction(c, c) == QMatrix.identity(1)
    assert F.dims == (0, 0, 1)

def test_pushforward_of_constant_along_patch(chain2):
    D = po.discrete(chain2)
    f = po.MonotoneMap(D, chain2, [chain2.index(x) for x in D.names])
    F = vs.pushforward_sheaf(f, vs.constant_sheaf(D))
    assert F.dims == (1, 2)

def test_square_must_commute():
    one, zero = QMatrix.identity(1), QMatrix(1, 1)
    with pytest.raises(CommutativityError):
        vs.Square(one, one, one, zero)

def test_identity_square_is_bicartesian():
    one = QMatrix.identity(2)
    report = vs.bicartesian_square_check(vs.Square(one, one, one, one))
    assert report.is_pullback and report.is_pushout

def test_two_lines_in_space_form_a_pullback_but_not_a_pushout():
    zero_in = QMatrix(1, 0)
    first = QMatrix.from_rows([[1], [0], [0]])
    second = QMatrix.from_rows([[0], [1], [0]])
    report = vs.bicartesian_square_check(vs.Square(zero_in, zero_in, first, second))
    assert report.is_pullback
    assert not report.is_pushout
    assert report.kernels_iso and not report.cokernels_iso

def test_cube_families():
    rng = qm.make_rng(11)
    assert vs.cube_cartesian_check(vs.zero_cube(3))
    assert vs.cube_cartesian_check(vs.limit_cube(3, rng))
    assert not vs.cube_cartesian_check(vs.perturbed_cube(3, rng))

def test_cube_missing_edge():
    with pytest.raises(DimensionError):
        vs.CubeDiagram([0], {0: 0, 1: 0}, {})

@given(small_posets, seeds)
@settings(max_examples=50, deadline=None)
def test_random_sheaves_satisfy_the_sheaf_condition(P, seed):
    F = vs.random_sheaf(P, qm.make_rng(seed), max_dim=2)
    F.validate()
    assert vs.sheaf_axiom_check(F)

@given(small_posets, seeds)
@settings(max_examples=50, deadline=None)
def test_recollement_on_every_open(P, seed):
    F = vs.random_sheaf(P, qm.make_rng(seed), max_dim=2)
    for U in P.downsets():
        assert vs.recollement_exactness_check(F, U)
        assert vs.adjunction_triangles_check(F, U)

@given(small_posets, seeds)
@settings(max_examples=40, deadline=None)
def test_flabby_generators(P, seed):
    rng = qm.make_rng(seed)
    assert vs.is_flabby(vs.random_flabby_sheaf(P, rng))
    S = vs.random_surjective_sheaf(P, rng)
    S.validate()
    assert S.is_surjective()

@given(st.integers(1, 4), seeds)
@settings(max_examples=40, deadline=None)
def test_cube_criteria_agree(n, seed):
    cb = vs.random_cube(n, qm.make_rng(seed), max_dim=3)
    direct = vs.cube_cartesian_direct(cb)
    for label in cb.labels:
        assert vs.cube_cartesian_recursive(cb, label) == direct
