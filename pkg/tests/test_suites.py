import logging

import pytest

from commands import common
from commands.utils import poset as po
from commands.utils import suites
from commands.utils import tower as tw
from commands.utils.errors import InputError


def test_every_suite_is_registered():
    assert list(suites.SUITES) == [
        'birkhoff', 'booleanization', 'hofmann-mislove', 'escardo', 'second-iso', 'one-point',
        'cube-criterion', 'recollement', 'k0-descent', 'cosheaf', 'main-theorem', 'additivity',
        'verdier', 'nisnevich']

def test_poset_label():
    assert suites.poset_label(po.spine()) == 'a<c, b<c'
    assert suites.poset_label(po.antichain(2)) == '0, 1'
    assert suites.poset_label(po.empty()) == '∅'

def test_birkhoff_counts_one_case_per_poset():
    report = suites.run_suite('birkhoff', max_size=3)
    assert report == {'suite': 'birkhoff', 'cases': 9, 'failures': [], 'passed': True}

def test_additivity_grid():
    report = suites.run_suite('additivity', max_size=2)
    assert report['cases'] == 9
    assert report['passed']

def test_cube_samples_are_chunked():
    report = suites.run_suite('cube-criterion', seed=1, samples=2)
    assert report['cases'] == len(suites.CUBE_AXES) * 2 * 3
    assert report['passed']

def test_k0_descent_replays_the_induction_on_every_poset():
    report = suites.run_suite('k0-descent', max_size=2)
    assert report['passed']
    assert report['cases'] == 3 + 13 + 49 + 78

def test_main_theorem_on_a_given_tower():
    report = suites.run_suite('main-theorem', depth=2, tower=tw.dyadic_chain_tower(2))
    assert report['cases'] == 1
    assert report['passed']

def test_verdier_counts_skipped_sheaves():
    report = suites.run_suite('verdier', max_size=2, samples=3)
    assert report['passed']
    assert report['cases'] + report.get('skipped', 0) == 2 * 3 * 4

def test_size_limit_is_clamped(caplog):
    with caplog.at_level(logging.WARNING, logger='commands.utils.suites'):
        report = suites.run_suite('nisnevich', max_size=4)
    assert report['passed']
    assert 'limited to size 3' in caplog.text

def test_unknown_suite():
    with pytest.raises(InputError):
        suites.run_suite('no-such-suite')

def test_workers_do_not_change_the_report():
    options = dict(max_size=2, seed=5, samples=2)
    assert suites.run_suite('recollement', workers=2, **options) == suites.run_suite('recollement', **options)

def test_run_all_matches_the_report_schema():
    report = suites.run_all(max_size=1, depth=1, samples=1)
    assert [r['suite'] for r in report['suites']] == list(suites.SUITES)
    assert report['passed']
    assert common.schema_errors(report) == []

def test_schema_rejects_unknown_fields():
    report = suites.run_suite('birkhoff', max_size=1)
    report['extra'] = 1
    assert common.schema_errors(report)
