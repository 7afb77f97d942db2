"""The K₀ model: one integer rank per point.

Descent squares, the elementary induction, cosheaf extension from elementary
compacts and the comparison between level ranks and locally constant functions
on the patch of a tower. Groups are free, so everything is decided by ranks
of rational matrices.
"""
import collections
import functools
import logging

from commands.utils import poset as po
from commands.utils import qmatrix as qm
from commands.utils import space as sp
from commands.utils import tower as tw
from commands.utils import vsheaf as vs
from commands.utils.errors import InputError, InternalConsistencyError, NotOpenError
from commands.utils.qmatrix import QMatrix


logger = logging.getLogger(__name__)

DescentReport = collections.namedtuple('DescentReport', [
    'description', 'kernel_rank', 'cokernel_rank', 'verdict', 'parts'])
CosheafReport = collections.namedtuple('CosheafReport', ['ok', 'failing_pair', 'values'])
VerdierReport = collections.namedtuple('VerdierReport', ['verdict', 'dual_table', 'costalks', 'group_ranks'])


class K0Class(object):
    poset = None
    vector = ()

    def __init__(self, space, vector):
        P = getattr(space, 'carrier', space)
        vector = tuple(vector)
        if len(vector) != P.n:
            raise InputError('K₀ class has {} entries for {} points'.format(len(vector), P.n))
        self.poset = P
        self.vector = vector

    def __eq__(self, other):
        return isinstance(other, K0Class) and self.poset == other.poset and self.vector == other.vector

    def __hash__(self):
        return hash((self.poset, self.vector))

    def __repr__(self):
        return 'K0Class({})'.format(', '.join('{}:{}'.format(x, v) for x, v in zip(self.poset.names, self.vector)))

    def by_name(self):
        return collections.OrderedDict((str(x), v) for x, v in zip(self.poset.names, self.vector))


def k0_of_vecsheaf(F):
    return K0Class(F.poset, F.dims)

def pullback_k0(f, c):
    if c.poset != f.dst:
        raise InputError('Class does not live on the target of the map')
    return K0Class(f.src, (c.vector[f(p)] for p in range(f.src.n)))


def restriction_matrix(P, big, small):
    """ℤ^big → ℤ^small, forgetting the points outside small."""
    if small & ~big:
        raise InputError('Restriction needs a subset')
    cols = list(po.bits(big))
    rows = list(po.bits(small))
    return QMatrix(len(rows), len(cols), [[1 if r == c else 0 for c in cols] for r in rows])

def pullback_matrix(f):
    """f^*: ℤ^dst → ℤ^src"""
    return QMatrix(f.src.n, f.dst.n, [[1 if f(p) == q else 0 for q in range(f.dst.n)] for p in range(f.src.n)])

def _check_subset(P, mask):
    if mask < 0 or mask & ~P.full:
        raise InputError('Subset has points outside the space')


def open_closed_k0_exactness(X, U):
    """0 → ℤ^U → ℤ^X → ℤ^{X∖U} → 0"""
    P = getattr(X, 'carrier', X)
    if not P.is_downset(U):
        raise NotOpenError('Open-closed sequence needs an open set')
    C = P.full & ~U
    inc = restriction_matrix(P, P.full, U).transpose()
    res = restriction_matrix(P, P.full, C)
    if not (res @ inc).is_zero():
        raise InternalConsistencyError('Open-closed sequence is not a complex')
    kernel_rank = inc.cols - inc.rank()
    middle = (P.n - res.rank()) - inc.rank()
    cokernel_rank = res.rows - res.rank()
    verdict = kernel_rank == 0 and middle == 0 and cokernel_rank == 0
    description = 'open-closed U={} in {} points'.format(po.cube_name(P.names_of(U)), P.n)
    return DescentReport(description, kernel_rank + middle, cokernel_rank, verdict, ())

def descent_square_check(X, K, L):
    """ℤ^{K∪L} → ℤ^K ×_{ℤ^{K∩L}} ℤ^L is an iso and ℤ^K ⊕ ℤ^L → ℤ^{K∩L} is onto."""
    P = getattr(X, 'carrier', X)
    _check_subset(P, K)
    _check_subset(P, L)
    union = K | L
    f = restriction_matrix(P, union, K)
    h = restriction_matrix(P, union, L)
    k = restriction_matrix(P, K, K & L)
    g = restriction_matrix(P, L, K & L)
    vs.Square(f, h, k, g)
    a, b, c, d = f.cols, f.rows, h.rows, k.rows
    to_sum = qm.vstack([f, h], cols=a)
    pair = qm.hstack([k, -g], rows=d)
    fibre_product = b + c - pair.rank()
    kernel_rank = a - to_sum.rank()
    cokernel_rank = fibre_product - to_sum.rank() + (d - pair.rank())
    verdict = kernel_rank == 0 and cokernel_rank == 0
    description = 'K={} L={}'.format(po.cube_name(P.names_of(K)), po.cube_name(P.names_of(L)))
    return DescentReport(description, kernel_rank, cokernel_rank, verdict, ())

def descent_sweep(P):
    """Every pair of subsets of P; returns the failing reports."""
    failures = []
    for K in range(1 << P.n):
        for L in range(K, 1 << P.n):
            report = descent_square_check(P, K, L)
            if not report.verdict:
                failures.append(report)
    return failures


def cover_cube(X, pieces):
    """ℤ^(∩ pieces in A) on nonempty A and ℤ^(∪ pieces) at the bottom, restrictions between."""
    P = getattr(X, 'carrier', X)
    n = len(pieces)
    union = 0
    for S in pieces:
        union |= S

    def support(a):
        if a == 0:
            return union
        m = P.full
        for i in po.bits(a):
            m &= pieces[i]
        return m

    dims = {a: po.popcount(support(a)) for a in range(1 << n)}
    maps = {}
    for a in range(1 << n):
        for i in range(n):
            if not a >> i & 1:
                maps[(a, a | 1 << i)] = restriction_matrix(P, support(a), support(a | 1 << i))
    return vs.CubeDiagram(list(range(n)), dims, maps)

def cached_descent_square(P, K, L, cache):
    """The descent report for (K, L), memoized in `cache` when one is given."""
    if cache is None:
        return descent_square_check(P, K, L)
    if (K, L) not in cache:
        cache[(K, L)] = descent_square_check(P, K, L)
    return cache[(K, L)]

@functools.lru_cache(maxsize=None)
def _membership_cube_is_cartesian(pattern):
    """A cover cube splits pointwise, so only the occupied membership patterns matter."""
    pattern = sorted(pattern)
    A = po.antichain(len(pattern))
    pieces = [sum(1 << x for x, member in enumerate(pattern) if member[j]) for j in range(3)]
    cube = cover_cube(A, pieces)
    cartesian = vs.cube_cartesian_recursive(cube, 2)
    if cartesian != vs.cube_cartesian_direct(cube):
        raise InternalConsistencyError('Cube criteria disagree on a cover cube')
    return cartesian

def elementary_induction_check(X, K, S, C, cache=None):
    """Replay the induction for K ∪ C ∪ S with S saturated compact and C closed.

    `cache` is an optional dict of descent reports keyed by (K, L), shared
    across calls on the same poset.
    """
    P = getattr(X, 'carrier', X)
    _check_subset(P, K)
    if not P.is_downset(S):
        raise NotOpenError('S must be saturated compact (downward closed)')
    if not P.is_upset(C):
        raise NotOpenError('C must be closed (upward closed)')
    parts = (
        cached_descent_square(P, K | C, S, cache),
        cached_descent_square(P, K, C, cache),
        cached_descent_square(P, K & S, C & S, cache),
    )
    pattern = frozenset((bool(K >> x & 1), bool(C >> x & 1), bool(S >> x & 1)) for x in po.bits(K | C | S))
    cartesian = _membership_cube_is_cartesian(pattern)
    verdict = all(p.verdict for p in parts) and cartesian
    description = 'K={} S={} C={}'.format(*(po.cube_name(P.names_of(m)) for m in (K, S, C)))
    kernel_rank = sum(p.kernel_rank for p in parts)
    cokernel_rank = sum(p.cokernel_rank for p in parts)
    return DescentReport(description, kernel_rank, cokernel_rank, verdict, parts)


class FreeModuleDatum(object):
    """E ↦ ℤ^E with restrictions."""
    name = 'free'

    def __init__(self, P):
        self.poset = P

    def rank(self, E):
        return po.popcount(E)

    def restriction(self, big, small):
        return restriction_matrix(self.poset, big, small)


class ConstantDatum(object):
    """E ↦ ℤ for nonempty E; breaks the gluing hypothesis on disjoint pieces."""
    name = 'constant'

    def __init__(self, P):
        self.poset = P

    def rank(self, E):
        return 1 if E else 0

    def restriction(self, big, small):
        return QMatrix.identity(1) if small else QMatrix(0, self.rank(big))


DATUMS = {FreeModuleDatum.name: FreeModuleDatum, ConstantDatum.name: ConstantDatum}


def gluing_violation(X, datum, elementary=None):
    """The first (K, E) where datum(K ∪ E) is not the bicartesian gluing of datum(K), datum(E)."""
    P = getattr(X, 'carrier', X)
    if elementary is None:
        elementary = [E.members for E in sp.elementary_compacts(P)]
    for K in range(1 << P.n):
        for E in elementary:
            sq = vs.Square(datum.restriction(K | E, K), datum.restriction(K | E, E),
                           datum.restriction(K, K & E), datum.restriction(E, K & E))
            report = vs.bicartesian_square_check(sq)
            if not (report.is_pullback and report.is_pushout):
                return (po.cube_name(P.names_of(K)), po.cube_name(P.names_of(E)))
    return None

def left_kan_extension(X, datum, A, elementary=None):
    """colim over elementary E ⊇ A of datum(E), with the induced map to datum(A)."""
    P = getattr(X, 'carrier', X)
    if elementary is None:
        elementary = [E.members for E in sp.elementary_compacts(P)]
    index = [E for E in elementary if E & A == A]
    offset = {}
    at = 0
    for E in index:
        offset[E] = at
        at += datum.rank(E)
    relations = []
    for E in index:
        for E2 in index:
            if E2 == E or E2 & E != E2:
                continue
            r = datum.restriction(E, E2)
            for j in range(datum.rank(E)):
                col = [0] * at
                col[offset[E] + j] = 1
                for i in range(datum.rank(E2)):
                    col[offset[E2] + i] -= r.entries[i][j]
                relations.append(col)
    R = QMatrix.from_columns(relations, at)
    Q = R.cokernel_projection()
    cocone = qm.hstack([datum.restriction(E, A) for E in index], rows=datum.rank(A))
    if not (cocone @ R).is_zero():
        raise InternalConsistencyError('Restrictions to A do not form a cocone')
    induced = cocone @ Q.right_inverse() if Q.rows else QMatrix(datum.rank(A), 0)
    return Q.rows, induced

def cosheaf_extension_check(X, datum=None):
    """Left Kan extension from elementary compacts reproduces the datum on every subset."""
    P = getattr(X, 'carrier', X)
    datum = datum or FreeModuleDatum(P)
    elementary = [E.members for E in sp.elementary_compacts(P)]
    failing = gluing_violation(P, datum, elementary)
    values = collections.OrderedDict()
    ok = failing is None
    for A in range(1 << P.n):
        rank, induced = left_kan_extension(P, datum, A, elementary)
        values[po.cube_name(P.names_of(A))] = rank
        if rank != datum.rank(A) or not induced.is_iso():
            ok = False
    if failing is not None:
        logger.info('Gluing hypothesis fails for the %s datum at %s', datum.name, failing)
    return CosheafReport(ok, failing, values)


def _colimit_projection(T, d):
    """⊕_{i≤d} ℤ^{level i} and the quotient by e_{i,q} = Σ_{fiber} e_{i+1,q'}."""
    offset = []
    at = 0
    for i in range(d + 1):
        offset.append(at)
        at += T.levels[i].n
    relations = []
    for i in range(d):
        t = T.transitions[i]
        for q in range(T.levels[i].n):
            col = [0] * at
            col[offset[i] + q] = 1
            for r in po.bits(t.fiber(q)):
                col[offset[i + 1] + r] -= 1
            relations.append(col)
    R = QMatrix.from_columns(relations, at)
    return offset, at, R, R.cokernel_projection()

def _cylinders(T, d, offset, total):
    """Indicator of {t : t_i = q} on depth-d threads of the patch tower.

    Threads come back indexed by the points of T's own levels.
    """
    PT = tw.patch_tower(T)
    found = []
    for th in tw.threads(PT, d).threads:
        found.append(tuple(T.levels[i].index(PT.levels[i].names[q]) for i, q in enumerate(th)))
    rows = []
    for th in found:
        row = [0] * total
        for i, q in enumerate(th):
            row[offset[i] + q] = 1
        rows.append(row)
    return tw.ThreadSet(T, d, found), QMatrix(len(rows), total, rows)

def _level_descent(T, d):
    cases = 0
    failures = []
    for i in range(d):
        src = T.levels[i + 1]
        t = T.transitions[i]
        for q in range(T.levels[i].n):
            K = t.fiber(q)
            report = descent_square_check(src, K, src.full & ~K)
            cases += 1
            if not report.verdict:
                failures.append(report)
    return cases, failures

def _compare_at_depth(T, d):
    offset, total, R, Q = _colimit_projection(T, d)
    ts, phi = _cylinders(T, d, offset, total)
    if not (phi @ R).is_zero():
        raise InternalConsistencyError('Cylinder indicators do not respect level pullbacks')
    induced = phi @ Q.right_inverse() if Q.rows else QMatrix(phi.rows, 0)
    k0_rank = Q.rows
    patch_rank = phi.rank()
    clopen = tw.clopen_function_group(tw.patch_tower(T), d)
    iso = induced.rank() == k0_rank == patch_rank == clopen.rank
    return ts, Q, phi, k0_rank, patch_rank, iso, offset, total

def _onepoint_at_depth(T, d):
    Tp = tw.onepoint_tower(T)
    ts, Q, phi, k0_rank, patch_rank, iso, offset, total = _compare_at_depth(Tp, d)
    tops = [sp.top_of(P) for P in Tp.levels]
    top_columns = {offset[i] + tops[i] for i in range(d + 1)}
    ev = QMatrix(1, total, [[1 if j in top_columns else 0 for j in range(total)]])
    _, _, R, _ = _colimit_projection(Tp, d)
    if not (ev @ R).is_zero():
        raise InternalConsistencyError('Evaluation at the new top does not factor through the colimit')
    ev_colim = ev @ Q.right_inverse() if Q.rows else QMatrix(1, 0)
    k0_kernel = k0_rank - ev_colim.rank()
    top_thread = ts.threads.index(tuple(tops[:d + 1]))
    ev_patch = QMatrix(1, len(ts.threads), [[1 if n == top_thread else 0 for n in range(len(ts.threads))]])
    patch_kernel = patch_rank - (ev_patch @ phi).rank()
    return {'k0_kernel_rank': k0_kernel, 'patch_kernel_rank': patch_kernel,
            'verdict': iso and k0_kernel == patch_kernel}

def main_theorem_check(T, d):
    """Level-rank colimit against locally constant functions on the patch, at every depth up to d."""
    T.check_depth(d)
    per_depth = []
    descent_cases = 0
    descent_failures = []
    for depth in range(d + 1):
        ts, _, _, k0_rank, patch_rank, iso, _, _ = _compare_at_depth(T, depth)
        onepoint = _onepoint_at_depth(T, depth)
        cases, failures = _level_descent(T, depth)
        descent_cases = cases
        descent_failures = failures
        per_depth.append(collections.OrderedDict([
            ('depth', depth),
            ('k0_rank', k0_rank),
            ('patch_rank', patch_rank),
            ('threads', len(ts.threads)),
            ('verdict', iso and not failures),
            ('onepoint', onepoint),
        ]))
    final = per_depth[-1]
    verdict = all(row['verdict'] and row['onepoint']['verdict'] for row in per_depth)
    return collections.OrderedDict([
        ('depth', d),
        ('sizes', T.sizes()[:d + 1]),
        ('k0_rank', final['k0_rank']),
        ('patch_rank', final['patch_rank']),
        ('descent_cases', descent_cases),
        ('descent_failures', [r.description for r in descent_failures]),
        ('per_depth', per_depth),
        ('verdict', verdict),
    ])


def sierpinski_additivity(m, n):
    """p: 2^disc → S pushes (m, n) forward to ranks (m + n, m) at (closed point, open point)."""
    S = po.chain(2)
    D, p = sp.patch(S)
    G = vs.VecSheaf(D.carrier, {0: m, 1: n}, {})
    F = vs.pushforward_sheaf(p, G)
    k0 = k0_of_vecsheaf(F)
    closed_point, open_point = S.index(1), S.index(0)
    ranks = [k0.vector[closed_point], k0.vector[open_point]]
    sections = (vs.global_sections(F).dim, vs.sections(F, S.down[open_point]).dim)
    matrix = QMatrix(2, 2, [[1, 1], [1, 0]])
    image = matrix @ QMatrix(2, 1, [[m], [n]])
    return collections.OrderedDict([
        ('input', [m, n]),
        ('points', ['closed', 'open']),
        ('k0', ranks),
        ('sections', list(sections)),
        ('matrix', matrix.to_strings()),
        ('verdict', ranks == [int(x) for x in image.column(0)] and sections == (m + n, m) and matrix.is_iso()),
    ])


def verdier_k0_check(X, F):
    """Costalks of the dual cosheaf on X∨ glue back to rank F(X) − rank F(X ∖ V).

    Returns None for sheaves that are not flabby: kernels are then not fibres.
    """
    P = getattr(X, 'carrier', X)
    if not vs.is_flabby(F):
        logger.warning('Skipping Verdier check on a sheaf that is not flabby: %r', F)
        return None
    total = vs.global_sections(F).dim
    table = collections.OrderedDict()
    rank = {}
    for V in P.upsets():
        rank[V] = total - vs.sections(F, P.full & ~V).dim
        table[po.cube_name(P.names_of(V))] = rank[V]
    costalk = {}
    for p in range(P.n):
        costalk[p] = vs.section_restriction(F, P.full, P.full & ~P.up[p]).kernel()
    verdict = True
    for V in P.upsets():
        points = list(po.bits(V))
        offset = {}
        at = 0
        for p in points:
            offset[p] = at
            at += costalk[p].cols
        relations = []
        for p in points:
            for q in points:
                if q == p or not P.leq(q, p):
                    continue
                # ↑p ⊆ ↑q, so the costalk at p sits inside the one at q.
                inside = costalk[q].solve(costalk[p]) if costalk[p].cols else QMatrix(costalk[q].cols, 0)
                for j in range(costalk[p].cols):
                    col = [0] * at
                    col[offset[p] + j] = 1
                    for i in range(costalk[q].cols):
                        col[offset[q] + i] -= inside.entries[i][j]
                    relations.append(col)
        colim = at - QMatrix.from_columns(relations, at).rank()
        if colim != rank[V]:
            verdict = False
    costalks = collections.OrderedDict((str(P.names[p]), costalk[p].cols) for p in range(P.n))
    dual = sp.de_groot_dual(P).carrier
    groups = (P.n, dual.n)
    return VerdierReport(verdict and groups[0] == groups[1], table, costalks, groups)


def _to_sub(P, sub):
    """ℤ^P → ℤ^sub, rows in the subposet's own order."""
    return QMatrix(sub.n, P.n, [[1 if P.index(name) == j else 0 for j in range(P.n)] for name in sub.names])

def _restricted_map(f, src_mask, dst_mask):
    src, dst = po.subposet(f.src, src_mask), po.subposet(f.dst, dst_mask)
    return po.MonotoneMap(src, dst, (dst.index(f.dst.names[f(f.src.index(name))]) for name in src.names))

def nisnevich_applies(f, C):
    """C closed in the target and f an isomorphism from the complement of f⁻¹C onto the complement of C."""
    X, Y = f.dst, f.src
    if not X.is_upset(C):
        return False
    outside = Y.full & ~f.preimage(C)
    if po.popcount(outside) != po.popcount(X.full & ~C):
        return False
    restricted = _restricted_map(f, outside, X.full & ~C)
    return restricted.is_order_embedding() and restricted.is_surjective()

def nisnevich_square_check(f, C):
    X, Y = f.dst, f.src
    if not nisnevich_applies(f, C):
        raise InputError('Map is not an isomorphism over the complement of C')
    pre = f.preimage(C)
    f_C = _restricted_map(f, pre, C)
    sq = vs.Square(_to_sub(X, f_C.dst), pullback_matrix(f), pullback_matrix(f_C), _to_sub(Y, f_C.src))
    report = vs.bicartesian_square_check(sq)
    return report.is_pullback and report.is_pushout

def nisnevich_sweep(max_size=3):
    cases = 0
    failures = []
    for X in po.posets_up_to(max_size):
        for Y in po.posets_up_to(max_size):
            for f in po.all_monotone_maps(Y, X):
                for C in X.upsets():
                    if not nisnevich_applies(f, C):
                        continue
                    cases += 1
                    if not nisnevich_square_check(f, C):
                        failures.append((repr(f), po.cube_name(X.names_of(C))))
    return cases, failures
