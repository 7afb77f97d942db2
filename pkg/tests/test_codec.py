import json

import pytest

from commands.utils import codec
from commands.utils import frame as fr
from commands.utils import poset as po
from commands.utils import tower as tw
from commands.utils import vsheaf as vs
from commands.utils.errors import CommutativityError, DimensionError, InputError, LatticeError, PosetError
from conftest import data_path


def test_read_poset_from_covers():
    P = codec.load(data_path('spine.json'), codec.read_poset)
    assert P == po.spine()

def test_read_poset_from_leq_table():
    P = codec.loads('{"names": ["x", "y"], "leq": [[1, 1], [0, 1]]}', codec.read_poset)
    assert P.covers() == [(0, 1)]

def test_cycle_diagnostic_has_a_position():
    with pytest.raises(PosetError) as e:
        codec.load(data_path('cycle.json'), codec.read_poset)
    assert e.value.source.endswith('cycle.json')
    assert e.value.line == 2
    assert e.value.column is not None
    assert e.value.diagnostic().startswith(e.value.source + ':2:')

def test_syntax_error_position():
    with pytest.raises(InputError) as e:
        codec.loads('{\n  "names": [1,,]\n}', codec.read_poset, source='broken.json')
    assert (e.value.source, e.value.line) == ('broken.json', 2)

def test_names_must_be_strings_or_integers():
    with pytest.raises(InputError):
        codec.loads('{"names": [true]}', codec.read_poset)
    with pytest.raises(InputError):
        codec.loads('[]', codec.read_poset)

def test_m3_table_is_rejected():
    with pytest.raises(LatticeError):
        codec.load(data_path('m3.json'), codec.read_lattice)

def test_birkhoff_lattice_file():
    D = codec.load(data_path('chain3_lattice.json'), codec.read_lattice)
    assert list(D.labels) == ['{}', '{0}', '{0,1}']
    encoded = codec.encode_lattice(D)
    assert encoded['elements'] == ['{}', '{0}', '{0,1}']
    assert encoded['leq_table'][0] == [True, True, True]

def test_nucleus_file():
    N = codec.load(data_path('closed_nucleus.json'), codec.read_nucleus)
    assert 'closed' in fr.nucleus_kinds(N)
    assert codec.encode_nucleus(N) == ['{0}', '{0}', '{0,1}']

def test_nucleus_image_from_an_array():
    text = json.dumps({'lattice': {'birkhoff_base': {'names': ['0']}}, 'image': ['{}', '{0}']})
    assert codec.loads(text, codec.read_nucleus).is_identity()

def test_tower_file_matches_the_cantor_tower():
    T = codec.load(data_path('cantor_depth2.json'), codec.read_tower)
    assert T == tw.cantor_tower(2)
    assert codec.encode_tower(T)['transitions'] == [['*', '*'], ['0', '0', '1', '1']]

def test_tower_transition_length():
    text = json.dumps({'levels': [{'names': ['*']}, {'names': ['0', '1']}], 'transitions': [['*']]})
    with pytest.raises(InputError):
        codec.loads(text, codec.read_tower)

def test_cube_files():
    assert vs.cube_cartesian_check(codec.load(data_path('cartesian_cube.json'), codec.read_cube))
    assert not vs.cube_cartesian_check(codec.load(data_path('killed_cube.json'), codec.read_cube))

def test_cube_with_a_bad_shape():
    with pytest.raises(DimensionError) as e:
        codec.load(data_path('bad_cube.json'), codec.read_cube)
    assert e.value.source.endswith('bad_cube.json')

def test_cube_face_that_does_not_commute():
    with pytest.raises(CommutativityError) as e:
        codec.load(data_path('noncommuting_cube.json'), codec.read_cube)
    assert '{1}' in e.value.witness

def test_cube_keys_must_name_subsets():
    text = json.dumps({'n': 1, 'dims': {'0': 1, '{0}': 1}, 'maps': {}})
    with pytest.raises(InputError):
        codec.loads(text, codec.read_cube)

def test_cube_encoding_reads_back():
    cb = codec.load(data_path('cartesian_cube.json'), codec.read_cube)
    encoded = codec.encode_cube(cb)
    assert encoded['maps'] == {'{}→{0}': [['1', '1/2'], ['0', '1']]}
    assert codec.read_cube(json.loads(codec.dumps(encoded))).maps == cb.maps

def test_sheaf_file():
    F = codec.load(data_path('chain_sheaf.json'), codec.read_sheaf)
    assert F.dims == (1, 2)
    assert vs.global_sections(F).dim == 2
    assert codec.encode_sheaf(F)['maps'] == {'b→a': [['1', '0']]}

def test_sheaf_needs_every_dimension():
    text = json.dumps({'poset': {'names': ['a']}, 'dims': {}})
    with pytest.raises(InputError) as e:
        codec.loads(text, codec.read_sheaf)
    assert "'a'" in e.value.message

def test_dumps_is_stable():
    assert codec.dumps({'b': 1, 'a': 'π'}) == '{\n  "a": "π",\n  "b": 1\n}'
