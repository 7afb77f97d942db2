"""Verification suites run by `patchwork verify`.

A suite turns its options into a list of work items and checks each item with
a module-level function, so items can be shipped to worker processes. Results
come back in item order, which makes the report independent of the number of
workers.
"""
import collections
import concurrent.futures
import itertools
import logging

from commands.utils import dlattice as dl
from commands.utils import frame as fr
from commands.utils import kzero as kz
from commands.utils import poset as po
from commands.utils import qmatrix as qm
from commands.utils import space as sp
from commands.utils import tower as tw
from commands.utils import vsheaf as vs
from commands.utils.errors import InputError


logger = logging.getLogger(__name__)

DEFAULT_SEED = 24301
CUBE_AXES = (2, 3, 4)
CUBE_SAMPLES = 200
CUBE_CHUNK = 25
SHEAF_SAMPLES = 100
VERDIER_SAMPLES = 20
TOWER_DEPTH = 4

Suite = collections.namedtuple('Suite', ['name', 'items', 'case', 'size_limit', 'description'])


def _failure(case, detail):
    return collections.OrderedDict([('case', case), ('detail', detail)])

def _poset_case(P):
    return 'poset {}'.format(poset_label(P))

def poset_label(P):
    """Short form like 'a<b, c' used to name cases."""
    if not P.n:
        return '∅'
    covers = ['{}<{}'.format(P.names[i], P.names[j]) for i, j in P.covers()]
    isolated = [str(P.names[i]) for i in range(P.n) if P.down[i] == P.up[i] == 1 << i]
    return ', '.join(covers + isolated)

def _posets(max_size):
    return list(po.posets_up_to(max_size))


def _birkhoff(P):
    D = dl.downset_lattice(P)
    J = dl.join_irreducibles(D)
    if not po.is_isomorphic(J, P):
        return 1, [_failure(_poset_case(P), 'join-irreducibles are not isomorphic to the poset')]
    E, _ = dl.lattice_from_table(D.labels, [[D.leq(a, b) for b in range(len(D))] for a in range(len(D))])
    if not dl.is_isomorphic(D, E):
        return 1, [_failure(_poset_case(P), 'order table does not normalize back to the lattice')]
    return 1, []

def _booleanization(item):
    if item == 'free':
        return _free_lattice_count()
    P = item
    B, embed = dl.booleanize(dl.downset_lattice(P))
    patch_lattice = dl.downset_lattice(sp.patch(P)[0].carrier)
    failures = []
    if not dl.is_isomorphic(B, patch_lattice):
        failures.append(_failure(_poset_case(P), 'Bool(O(X)) is not O(patch X)'))
    if not dl.hom_check(embed).ok or len(set(embed.image)) != len(embed.image):
        failures.append(_failure(_poset_case(P), 'canonical map into Bool(O(X)) is not an embedding'))
    return 1, failures

def _free_lattice_count():
    """free_bounded_dlattice(3) against downsets of the 3-cube counted by brute force."""
    C = po.cube(3)
    brute = 0
    for mask in range(1 << C.n):
        closed = all(not mask >> i & 1 or all(mask >> j & 1 for j in range(C.n) if C.leq(j, i))
                     for i in range(C.n))
        brute += closed
    size = len(dl.free_bounded_dlattice(3))
    if size != brute or size != 20:
        return 1, [_failure('free bounded lattice on 3 generators', '{} elements, brute force {}'.format(size, brute))]
    return 1, []

def _hofmann_mislove(P):
    if not sp.hofmann_mislove_check(P):
        return 1, [_failure(_poset_case(P), 'saturated compacts do not match Scott open filters')]
    return 1, []

def _escardo(P):
    result = sp.patch_generation_check(P)
    if not result.ok:
        bad = [A for A, family in result.witnesses.items()
               if _meet(P, family) != A]
        first = po.cube_name(P.names_of(bad[0])) if bad else '?'
        return 1, [_failure(_poset_case(P), 'subset {} is not an intersection of elementary compacts'.format(first))]
    return 1, []

def _meet(P, family):
    m = P.full
    for E in family:
        m &= E
    return m

def _second_iso(P):
    F = dl.downset_lattice(P)
    cases = 0
    failures = []
    for N in fr.enumerate_nuclei(F):
        for u in range(len(F)):
            cases += 1
            result = fr.second_iso_check(F, N, u)
            if not result.ok:
                failures.append(_failure('{} nucleus {} open {}'.format(_poset_case(P), N.name(), F.label(u)),
                                         ' '.join(str(x) for x in result.counterexample)))
    return cases, failures

def _one_point(P):
    failures = []
    if not sp.one_point_laws_check(P):
        failures.append(_failure(_poset_case(P), 'one-point compactification laws fail'))
    if not sp.de_groot_laws_check(P):
        failures.append(_failure(_poset_case(P), 'de Groot duality laws fail'))
    return 2, failures

def _cube_criterion(item):
    n, seed, count = item
    rng = qm.make_rng(seed)
    failures = []
    cases = 0
    for k in range(count):
        cases += 1
        vs.cube_cartesian_check(vs.random_cube(n, rng))
        cases += 1
        if not vs.cube_cartesian_check(vs.limit_cube(n, rng)):
            failures.append(_failure('{}-cube seed {} sample {}'.format(n, seed, k), 'limit cube is not cartesian'))
        cases += 1
        if vs.cube_cartesian_check(vs.perturbed_cube(n, rng)):
            failures.append(_failure('{}-cube seed {} sample {}'.format(n, seed, k), 'perturbed cube is cartesian'))
    return cases, failures

def _recollement(item):
    P, seed, samples = item
    rng = qm.make_rng(seed)
    cases = 0
    failures = []
    for k in range(samples):
        F = vs.random_sheaf(P, rng)
        for U in P.downsets():
            cases += 1
            if not vs.recollement_exactness_check(F, U):
                failures.append(_failure('{} sample {} U={}'.format(_poset_case(P), k, po.cube_name(P.names_of(U))),
                                         'recollement sequence is not exact'))
            elif not vs.adjunction_triangles_check(F, U):
                failures.append(_failure('{} sample {} U={}'.format(_poset_case(P), k, po.cube_name(P.names_of(U))),
                                         'triangle identities fail'))
    return cases, failures

def _k0_descent(P):
    cases = (1 << P.n) * ((1 << P.n) + 1) // 2
    failures = [_failure('{} {}'.format(_poset_case(P), r.description),
                         'kernel rank {} cokernel rank {}'.format(r.kernel_rank, r.cokernel_rank))
                for r in kz.descent_sweep(P)]
    cache = {}
    for K in range(1 << P.n):
        for S in P.downsets():
            for C in P.upsets():
                cases += 1
                report = kz.elementary_induction_check(P, K, S, C, cache)
                direct = kz.cached_descent_square(P, K, S | C, cache).verdict
                if report.verdict != direct or not report.verdict:
                    failures.append(_failure('{} {}'.format(_poset_case(P), report.description),
                                             'induction route disagrees with the direct square'))
    for U in P.downsets():
        cases += 1
        if not kz.open_closed_k0_exactness(P, U).verdict:
            failures.append(_failure('{} U={}'.format(_poset_case(P), po.cube_name(P.names_of(U))),
                                     'open-closed sequence is not exact'))
    return cases, failures

def _cosheaf(P):
    failures = []
    report = kz.cosheaf_extension_check(P)
    if not report.ok:
        bad = [k for A, (k, v) in enumerate(report.values.items()) if v != po.popcount(A)]
        failures.append(_failure(_poset_case(P), 'Kan extension differs at {}'.format(bad[0] if bad else '?')))
    control = kz.cosheaf_extension_check(P, kz.ConstantDatum(P))
    if P.n >= 2 and control.failing_pair is None:
        failures.append(_failure(_poset_case(P), 'constant datum passed the gluing hypothesis'))
    return 2, failures

def _main_theorem(item):
    label, T, d = item
    result = kz.main_theorem_check(T, d)
    if not result['verdict']:
        bad = [row for row in result['per_depth'] if not (row['verdict'] and row['onepoint']['verdict'])]
        row = bad[0] if bad else result['per_depth'][-1]
        return 1, [_failure('{} depth {}'.format(label, row['depth']),
                            'K0 rank {} against patch rank {}'.format(row['k0_rank'], row['patch_rank']))]
    return 1, []

def _additivity(item):
    m, n = item
    result = kz.sierpinski_additivity(m, n)
    if not result['verdict']:
        return 1, [_failure('(m, n) = ({}, {})'.format(m, n), 'K0 {} sections {}'.format(result['k0'],
                                                                                     result['sections']))]
    return 1, []

def _verdier(item):
    P, seed, samples = item
    rng = qm.make_rng(seed)
    cases = 0
    skipped = 0
    failures = []
    for k in range(samples):
        for F in (vs.random_flabby_sheaf(P, rng), vs.random_sheaf(P, rng)):
            report = kz.verdier_k0_check(P, F)
            if report is None:
                skipped += 1
                continue
            cases += 1
            if not report.verdict:
                failures.append(_failure('{} sample {}'.format(_poset_case(P), k),
                                         'costalks glue to {}'.format(dict(report.costalks))))
    return cases, failures, skipped

def _nisnevich(max_size):
    cases, failures = kz.nisnevich_sweep(max_size)
    return cases, [_failure(f, 'C={}'.format(c)) for f, c in failures]


def _poset_items(max_size, **options):
    return _posets(max_size)

def _booleanization_items(max_size, **options):
    return _posets(max_size) + ['free']

def _cube_items(seed, samples=CUBE_SAMPLES, **options):
    items = []
    for n in CUBE_AXES:
        for start in range(0, samples, CUBE_CHUNK):
            items.append((n, seed * 1000 + n * 100 + start // CUBE_CHUNK, min(CUBE_CHUNK, samples - start)))
    return items

def _sheaf_items(max_size, seed, samples=SHEAF_SAMPLES, **options):
    return [(P, seed + k, samples) for k, P in enumerate(_posets(max_size))]

def _verdier_items(max_size, seed, samples=VERDIER_SAMPLES, **options):
    return [(P, seed + k, samples) for k, P in enumerate(_posets(max_size))]

def _tower_items(max_size, depth, tower=None, **options):
    if tower is not None:
        return [('input tower', tower, depth)]
    items = []
    for P in _posets(max_size):
        items.append(('constant {}'.format(_poset_case(P)), tw.constant_tower(P, depth), depth))
    for d in range(TOWER_DEPTH + 1):
        items.append(('cantor', tw.cantor_tower(d), d))
        items.append(('dyadic chain', tw.dyadic_chain_tower(d), d))
    return items

def _additivity_items(max_size, **options):
    return list(itertools.product(range(max_size + 1), repeat=2))

def _nisnevich_items(max_size, **options):
    return [max_size]


SUITES = collections.OrderedDict((s.name, s) for s in [
    Suite('birkhoff', _poset_items, _birkhoff, 5, 'join-irreducibles of O(P) recover P'),
    Suite('booleanization', _booleanization_items, _booleanization, 5, 'Bool(O(X)) = O(patch X)'),
    Suite('hofmann-mislove', _poset_items, _hofmann_mislove, 5, 'saturated compacts = Scott open filters'),
    Suite('escardo', _poset_items, _escardo, 5, 'elementary compacts generate the patch'),
    Suite('second-iso', _poset_items, _second_iso, 4, 'second isomorphism theorem for sublocales'),
    Suite('one-point', _poset_items, _one_point, 5, 'one-point compactification and de Groot duality'),
    Suite('cube-criterion', _cube_items, _cube_criterion, None, 'direct and recursive cube criteria agree'),
    Suite('recollement', _sheaf_items, _recollement, 4, 'open-closed recollement is exact'),
    Suite('k0-descent', _poset_items, _k0_descent, 5, 'K0 descent squares'),
    Suite('cosheaf', _poset_items, _cosheaf, 4, 'cosheaf extension from elementary compacts'),
    Suite('main-theorem', _tower_items, _main_theorem, 5, 'K0 of a tower against its patch'),
    Suite('additivity', _additivity_items, _additivity, None, 'Sierpinski additivity'),
    Suite('verdier', _verdier_items, _verdier, 4, 'Verdier duality on flabby sheaves'),
    Suite('nisnevich', _nisnevich_items, _nisnevich, 3, 'Nisnevich squares are bicartesian'),
])


def _map(case, items, workers):
    if workers > 1 and len(items) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(case, items))
    return [case(item) for item in items]

def run_suite(name, max_size=5, seed=DEFAULT_SEED, depth=3, workers=1, **options):
    """Run one suite and return {suite, cases, failures, passed} (plus skipped, when any)."""
    if name not in SUITES:
        raise InputError('Unknown suite {!r}; choose from {}'.format(name, ', '.join(SUITES)))
    suite = SUITES[name]
    size = max_size
    if suite.size_limit is not None and max_size > suite.size_limit:
        logger.warning('Suite %s is limited to size %d; running at %d instead of %d',
                       name, suite.size_limit, suite.size_limit, max_size)
        size = suite.size_limit
    items = suite.items(max_size=size, seed=seed, depth=depth, **options)
    logger.debug('Suite %s: %d work items on %d workers', name, len(items), workers)
    cases = 0
    skipped = 0
    failures = []
    for result in _map(suite.case, items, workers):
        cases += result[0]
        failures.extend(result[1])
        if len(result) > 2:
            skipped += result[2]
    report = collections.OrderedDict([
        ('suite', name),
        ('cases', cases),
        ('failures', failures),
        ('passed', not failures),
    ])
    if skipped:
        report['skipped'] = skipped
        logger.warning('Suite %s skipped %d cases', name, skipped)
    logger.info('Suite %s: %d cases, %d failures', name, cases, len(failures))
    return report

def run_all(**options):
    reports = [run_suite(name, **options) for name in SUITES]
    failures = [f for r in reports for f in r['failures']]
    return collections.OrderedDict([
        ('suite', 'all'),
        ('cases', sum(r['cases'] for r in reports)),
        ('failures', failures),
        ('passed', not failures),
        ('suites', reports),
    ])
