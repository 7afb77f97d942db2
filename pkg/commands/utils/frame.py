"""Frame operations on finite distributive lattices: Heyting implication,
nuclei, fixed-point frames, congruences and the sublocale lattice.

A nucleus is stored as a table of element indices of its frame.
"""
import collections
import logging

from commands.utils import dlattice as dl
from commands.utils.errors import InputError, InternalConsistencyError, NucleusError, SizeBoundError


logger = logging.getLogger(__name__)

MAX_NUCLEUS_FRAME = 32

IsoCheck = collections.namedtuple('IsoCheck', ['ok', 'pairs', 'counterexample'])
FixedFrame = collections.namedtuple('FixedFrame', ['lattice', 'nu', 'inclusion'])


def heyting(F, u, v):
    """u → v: complement of the up-closure of U ∖ V."""
    m = F.base.full & ~F.base.up_mask(F.mask(u) & ~F.mask(v))
    return F.index_of(m)

def heyting_by_scan(F, u, v):
    best = [w for w in range(len(F)) if F.leq(F.meet(w, u), v)]
    return F.join_all(best)

def pseudocomplement(F, u):
    return heyting(F, u, F.bottom)


class Nucleus(object):
    frame = None
    table = ()

    def __init__(self, frame, table, check=True):
        table = tuple(table)
        if len(table) != len(frame):
            raise InputError('Nucleus table has {} entries, frame has {} elements'.format(len(table), len(frame)))
        for b in table:
            if not isinstance(b, int) or b < 0 or b >= len(frame):
                raise InputError('Nucleus value {!r} out of range'.format(b))
        self.frame = frame
        self.table = table
        if check:
            law, witness = nucleus_violation(frame, table)
            if law:
                labels = tuple(frame.label(x) for x in witness)
                raise NucleusError('Table is not {} at {}'.format(law, labels), law=law, witness=labels)

    def __call__(self, x):
        return self.table[x]

    def __eq__(self, other):
        return isinstance(other, Nucleus) and self.frame == other.frame and self.table == other.table

    def __hash__(self):
        return hash((self.frame, self.table))

    def __repr__(self):
        return 'Nucleus([{}])'.format(', '.join(self.frame.label(b) for b in self.table))

    def fixed_points(self):
        return [x for x in range(len(self.frame)) if self.table[x] == x]

    def leq(self, other):
        return all(self.frame.leq(a, b) for a, b in zip(self.table, other.table))

    def meet(self, other):
        F = self.frame
        return Nucleus(F, (F.meet(a, b) for a, b in zip(self.table, other.table)))

    def is_identity(self):
        return all(self.table[x] == x for x in range(len(self.table)))

    def name(self):
        return '[' + ','.join(str(b) for b in self.table) + ']'


def nucleus_violation(F, table):
    """Return (law, witness) for the first broken law, or (None, None)."""
    for x in range(len(F)):
        if not F.leq(x, table[x]):
            return 'inflationary', (x,)
    for x in range(len(F)):
        if table[table[x]] != table[x]:
            return 'idempotent', (x,)
    for x in range(len(F)):
        for y in range(x + 1, len(F)):
            if table[F.meet(x, y)] != F.meet(table[x], table[y]):
                return 'meet-preserving', (x, y)
    return None, None

def identity_nucleus(F):
    return Nucleus(F, range(len(F)), check=False)

def top_nucleus(F):
    return Nucleus(F, [F.top] * len(F), check=False)

def open_nucleus(F, u):
    """x ↦ u → x"""
    return Nucleus(F, (heyting(F, u, x) for x in range(len(F))))

def closed_nucleus(F, u):
    """x ↦ u ∨ x"""
    return Nucleus(F, (F.join(u, x) for x in range(len(F))))

def boolean_nucleus(F, a):
    """x ↦ (x → a) → a"""
    return Nucleus(F, (heyting(F, heyting(F, x, a), a) for x in range(len(F))))

def is_boolean_nucleus(N):
    return N == boolean_nucleus(N.frame, N(N.frame.bottom))

def nucleus_kinds(N):
    F = N.frame
    kinds = []
    if any(N == open_nucleus(F, u) for u in range(len(F))):
        kinds.append('open')
    if any(N == closed_nucleus(F, u) for u in range(len(F))):
        kinds.append('closed')
    if is_boolean_nucleus(N):
        kinds.append('boolean')
    return kinds


def enumerate_nuclei(F, bound=MAX_NUCLEUS_FRAME):
    """All nuclei on F, by backtracking from the top down.

    Index order is a linear extension, so when x is visited every element above
    it already has a value. If x has two upper covers it is their meet and its
    value is forced.
    """
    size = len(F)
    if size > bound:
        raise SizeBoundError('Frame has {} elements; nucleus enumeration bound is {}'.format(size, bound))
    covers = [F.upper_covers(x) for x in range(size)]
    above = [[y for y in F.above(x) if y != x] for x in range(size)]
    table = [None] * size
    table[F.top] = F.top
    found = []

    def candidates(x):
        if len(covers[x]) >= 2:
            y, z = covers[x][0], covers[x][1]
            value = F.meet(table[y], table[z])
            if all(F.meet(table[a], table[b]) == value for a in covers[x] for b in covers[x] if a != b):
                yield value
            return
        for c in F.above(x):
            if c != x and table[c] != c:
                continue
            if all(F.leq(c, table[y]) for y in above[x]):
                yield c

    def visit(x):
        if x < 0:
            law, _ = nucleus_violation(F, table)
            if law is None:
                found.append(Nucleus(F, table, check=False))
            return
        if x == F.top:
            visit(x - 1)
            return
        for c in candidates(x):
            if not F.leq(x, c) or (c != x and table[c] != c):
                continue
            table[x] = c
            visit(x - 1)
        table[x] = None

    visit(size - 1)
    found.sort(key=lambda N: N.table)
    logger.debug('Enumerated %d nuclei on a %d-element frame', len(found), size)
    return found

def nucleus_lattice(F):
    """The nuclei of F ordered pointwise; returns (lattice, nuclei, position)."""
    nuclei = enumerate_nuclei(F)
    names = [N.name() for N in nuclei]
    leq = [[a.leq(b) for b in nuclei] for a in nuclei]
    lattice, position = dl.lattice_from_table(names, leq)
    return lattice, nuclei, position


def fixed_frame(N):
    """F_N with ν: F → F_N and the inclusion F_N ↪ F."""
    F = N.frame
    fixed = N.fixed_points()
    names = [F.label(x) for x in fixed]
    leq = [[F.leq(a, b) for b in fixed] for a in fixed]
    lattice, position = dl.lattice_from_table(names, leq)
    inclusion = [None] * len(lattice)
    for x in fixed:
        inclusion[position[F.label(x)]] = x
    nu = [position[F.label(N(x))] for x in range(len(F))]
    # Finite meets in F_N are computed in F.
    for a in range(len(lattice)):
        for b in range(len(lattice)):
            if inclusion[lattice.meet(a, b)] != F.meet(inclusion[a], inclusion[b]):
                raise InternalConsistencyError('Fixed points of a nucleus are not closed under meets')
    return FixedFrame(lattice, tuple(nu), tuple(inclusion))


class Congruence(object):
    frame = None
    classes = ()

    def __init__(self, frame, classes):
        self.frame = frame
        self.classes = tuple(tuple(sorted(c)) for c in classes)
        self._class_of = {}
        for k, c in enumerate(self.classes):
            for x in c:
                self._class_of[x] = k

    def related(self, a, b):
        return self._class_of[a] == self._class_of[b]

    def pairs(self):
        return [(a, b) for c in self.classes for a in c for b in c]

    def is_sublattice(self):
        F = self.frame
        pairs = self.pairs()
        for a, b in pairs:
            for c, d in pairs:
                if not self.related(F.meet(a, c), F.meet(b, d)) or not self.related(F.join(a, c), F.join(b, d)):
                    return False
        return all(self.related(x, x) for x in range(len(F)))


class QuotientMap(object):
    """The inclusion of a congruence into F × F with its right adjoint."""
    congruence = None
    nucleus = None

    def __init__(self, congruence, nucleus):
        self.congruence = congruence
        self.nucleus = nucleus

    def push(self, a, b):
        F, N = self.nucleus.frame, self.nucleus
        return F.meet(a, N(b)), F.meet(b, N(a))


def congruence_quotient(N):
    """The congruence {(U, V) : N(U) = N(V)} and its pushforward p_*."""
    F = N.frame
    groups = collections.OrderedDict()
    for x in range(len(F)):
        groups.setdefault(N(x), []).append(x)
    cong = Congruence(F, groups.values())
    if not cong.is_sublattice():
        raise InternalConsistencyError('Kernel of a nucleus is not a sublattice of F × F')
    quotient = QuotientMap(cong, N)
    pairs = cong.pairs()
    for a in range(len(F)):
        for b in range(len(F)):
            pa, pb = quotient.push(a, b)
            if not cong.related(pa, pb):
                raise InternalConsistencyError('Pushforward leaves the congruence at {}'.format(
                    (F.label(a), F.label(b))))
            for u, v in pairs:
                lhs = F.leq(u, a) and F.leq(v, b)
                rhs = F.leq(u, pa) and F.leq(v, pb)
                if lhs != rhs:
                    raise InternalConsistencyError('Inclusion ⊣ pushforward fails at {}'.format(
                        (F.label(u), F.label(v), F.label(a), F.label(b))))
    return cong, quotient


def sublocale_join_closed(N, u):
    """x ↦ N(x) ∧ (x ∨ u), the nucleus of the closed part of F_N cut by u."""
    F = N.frame
    return Nucleus(F, (F.meet(N(x), F.join(x, u)) for x in range(len(F))))

def second_iso_check(F, N, u):
    """Compare {V fixed by N, V ≤ N(u)} with {W fixed by M, W ≤ u}.

    M is sublocale_join_closed(N, u). The maps are N one way and (− ∧ u) the
    other; both must be monotone and mutually inverse.
    """
    if N.frame != F:
        raise InputError('Nucleus is defined on a different frame')
    M = sublocale_join_closed(N, u)
    left = [v for v in range(len(F)) if N(v) == v and F.leq(v, N(u))]
    right = [w for w in range(len(F)) if M(w) == w and F.leq(w, u)]
    left_set, right_set = set(left), set(right)
    pairs = []
    for w in right:
        v = N(w)
        if v not in left_set:
            return IsoCheck(False, pairs, ('N leaves the target', F.label(w)))
        if F.meet(v, u) != w:
            return IsoCheck(False, pairs, ('not a retraction', F.label(w)))
        pairs.append((F.label(w), F.label(v)))
    for v in left:
        w = F.meet(v, u)
        if w not in right_set:
            return IsoCheck(False, pairs, ('meet with u leaves the source', F.label(v)))
        if N(w) != v:
            return IsoCheck(False, pairs, ('not a section', F.label(v)))
    for a in right:
        for b in right:
            if F.leq(a, b) and not F.leq(N(a), N(b)):
                return IsoCheck(False, pairs, ('not monotone', F.label(a), F.label(b)))
    return IsoCheck(True, sorted(pairs, key=lambda p: str(p)), None)


def way_below(F, u, v):
    """u ≪ v: every directed family whose join is above v has a member above u.

    A directed family in a finite frame contains its own join, so it is enough
    to look at the elements above v.
    """
    return all(F.leq(u, m) for m in range(len(F)) if F.leq(v, m))

def is_stably_compact(F):
    size = len(F)
    wb = [[way_below(F, u, v) for v in range(size)] for u in range(size)]
    if not wb[F.top][F.top]:
        return False
    for v in range(size):
        if F.join_all(u for u in range(size) if wb[u][v]) != v:
            return False
    for u in range(size):
        for v in range(size):
            if not wb[u][v]:
                continue
            if not any(wb[u][w] and wb[w][v] for w in range(size)):
                return False
            for w in range(size):
                if wb[u][w] and not wb[u][F.meet(v, w)]:
                    return False
    return True


def frame_summary(F):
    """Counts and flags reported by the `frame info` command."""
    return {
        'elements': len(F),
        'join_irreducibles': F.base.n,
        'boolean': F.is_boolean(),
        'stably_compact': is_stably_compact(F),
        'covers': [[F.label(a), F.label(b)] for a in range(len(F)) for b in F.upper_covers(a)],
        'minimal_points': [F.base.names[i] for i in F.base.minimal()],
        'points': list(F.base.names),
        'height': max(F.base.heights() + [-1]) + 1,
    }
