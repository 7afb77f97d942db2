import json

import pytest

from click.testing import CliRunner

from cli import cli
from commands import common
from commands.utils import codec
from commands.utils import tower as tw
from conftest import data_path, golden


@pytest.fixture
def runner():
    return CliRunner()

def invoke(runner, *args, **kwargs):
    return runner.invoke(cli, [str(a) for a in args], catch_exceptions=False, **kwargs)


def test_space_report_matches_golden(runner):
    result = invoke(runner, 'space', 'report', data_path('sierpinski.json'))
    assert result.exit_code == 0
    assert result.output == golden('sierpinski_report.txt')

def test_space_report_json(runner):
    result = invoke(runner, 'space', 'report', data_path('sierpinski.json'), '--json')
    data = json.loads(result.output)
    assert data['elementary'] == 4
    assert data['names'] == ['o', 'c']

def test_upset_opens_flip_the_order(runner):
    result = invoke(runner, 'poset', 'info', data_path('sierpinski.json'), '--upset-opens', '--json')
    data = json.loads(result.output)
    assert data['minimal'] == ['c']
    assert data['downsets'] == 3

def test_render_poset_matches_golden(runner):
    result = invoke(runner, 'render', 'poset', data_path('spine.json'))
    assert result.exit_code == 0
    assert result.output == golden('spine.dot')

def test_render_free(runner):
    result = invoke(runner, 'render', 'free', 3)
    assert result.output.count(' [label=') == 20

def test_poset_enumerate(runner):
    result = invoke(runner, 'poset', 'enumerate', '--max-size', 4, '--json')
    assert json.loads(result.output)['counts'] == [1, 1, 2, 5, 16]

def test_poset_iso_exits_1_without_an_isomorphism(runner):
    result = invoke(runner, 'poset', 'iso', data_path('spine.json'), data_path('sierpinski.json'))
    assert result.exit_code == common.EXIT_FAILED
    assert 'not isomorphic' in result.output

def test_cycle_exits_2_with_a_position(runner):
    result = invoke(runner, 'poset', 'info', data_path('cycle.json'))
    assert result.exit_code == common.EXIT_BAD_INPUT
    assert 'cycle.json:2:' in result.output

def test_m3_exits_2(runner):
    result = invoke(runner, 'lattice', 'info', data_path('m3.json'))
    assert result.exit_code == common.EXIT_BAD_INPUT
    assert 'Error:' in result.output

def test_lattice_free(runner):
    result = invoke(runner, 'lattice', 'free', 2, '--json')
    data = json.loads(result.output)
    assert len(data['lattice']['elements']) == 6
    assert data['boolean'] is False

def test_frame_nuclei(runner):
    result = invoke(runner, 'frame', 'nuclei', data_path('chain3_lattice.json'), '--json')
    data = json.loads(result.output)
    assert len(data['nuclei']) == 4
    assert ['{0}', '{0}', '{0,1}'] in [row['image'] for row in data['nuclei']]

def test_frame_quotient(runner):
    result = invoke(runner, 'frame', 'quotient', data_path('closed_nucleus.json'), '--json')
    data = json.loads(result.output)
    assert data['fixed']['elements'] == ['{0}', '{0,1}']
    assert len(data['classes']) == 2
    assert 'closed' in data['kinds']

def test_cube_check(runner):
    result = invoke(runner, 'cube', 'check', data_path('cartesian_cube.json'))
    assert result.exit_code == 0
    assert result.output.startswith('cartesian: yes')
    result = invoke(runner, 'cube', 'check', data_path('killed_cube.json'), '--json')
    assert json.loads(result.output)['cartesian'] is False

@pytest.mark.parametrize('name', ['bad_cube.json', 'noncommuting_cube.json'])
def test_bad_cubes_exit_2(runner, name):
    result = invoke(runner, 'cube', 'check', data_path(name))
    assert result.exit_code == common.EXIT_BAD_INPUT
    assert name in result.output

def test_random_cube_seed_from_the_environment(runner):
    by_flag = invoke(runner, 'cube', 'random', '--axes', 2, '--seed', 7)
    by_env = invoke(runner, 'cube', 'random', '--axes', 2, env={'PATCHWORK_SEED': '7'})
    assert by_flag.output == by_env.output
    assert codec.loads(by_flag.output, codec.read_cube).n == 2

def test_tower_example_and_threads(runner, tmp_path):
    result = invoke(runner, 'tower', 'example', 'cantor', '--depth', 2)
    assert json.loads(result.output) == json.loads(codec.dumps(codec.encode_tower(tw.cantor_tower(2))))
    path = tmp_path / 'cantor.json'
    path.write_text(result.output, encoding='utf-8')
    result = invoke(runner, 'tower', 'threads', path, '--depth', 2)
    assert result.output.startswith('4 threads at depth 2')

def test_tower_depth_out_of_range(runner):
    result = invoke(runner, 'tower', 'patch', data_path('cantor_depth2.json'), '--depth', 3)
    assert result.exit_code == common.EXIT_BAD_INPUT

def test_verify_k0_descent(runner):
    result = invoke(runner, 'verify', 'k0-descent', '--max-size', 3)
    assert result.exit_code == 0
    assert 'k0-descent' in result.output
    assert 'ok' in result.output

def test_verify_json_matches_the_schema(runner):
    result = invoke(runner, 'verify', 'birkhoff', '--max-size', 2, '--json')
    report = json.loads(result.output)
    assert common.schema_errors(report) == []
    assert report['cases'] == 4

def test_verify_main_theorem_on_a_tower_file(runner):
    result = invoke(runner, 'verify', 'main-theorem', data_path('cantor_depth2.json'), '--depth', 2, '--json')
    assert result.exit_code == 0
    assert json.loads(result.output)['passed'] is True

def test_tower_file_is_only_for_main_theorem(runner):
    result = invoke(runner, 'verify', 'birkhoff', data_path('cantor_depth2.json'))
    assert result.exit_code == 2

def test_debug_flag_announces_itself(runner):
    result = invoke(runner, 'verify', 'additivity', '--max-size', 1, '--debug')
    assert result.exit_code == 0
    assert '>>> Debug mode: enabled' in result.output
