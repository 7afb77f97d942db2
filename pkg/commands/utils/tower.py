"""Sequential towers of finite posets, standing in for pro-finite spaces.

Level i+1 maps to level i. Answers about the limit are always computed at an
explicit depth and are exact at that depth only.
"""
import collections
import logging

from fractions import Fraction

from commands.utils import poset as po
from commands.utils import space as sp
from commands.utils.errors import InputError


logger = logging.getLogger(__name__)

ROOT_NAME = '*'

ThreadSet = collections.namedtuple('ThreadSet', ['tower', 'depth', 'threads'])
ClopenGroup = collections.namedtuple('ClopenGroup', ['depth', 'rank', 'basis', 'embeddings'])


class Tower(object):
    levels = ()
    transitions = ()

    def __init__(self, levels, transitions):
        levels = list(levels)
        transitions = list(transitions)
        if not levels:
            raise InputError('A tower has at least one level')
        if len(transitions) != len(levels) - 1:
            raise InputError('A tower with {} levels needs {} transitions, got {}'.format(
                len(levels), len(levels) - 1, len(transitions)))
        for i, t in enumerate(transitions):
            if t.src != levels[i + 1] or t.dst != levels[i]:
                raise InputError('Transition {} does not go from level {} to level {}'.format(i, i + 1, i))
        self.levels = tuple(levels)
        self.transitions = tuple(transitions)

    @property
    def depth(self):
        return len(self.levels) - 1

    def __eq__(self, other):
        return isinstance(other, Tower) and self.levels == other.levels and self.transitions == other.transitions

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        return 'Tower(sizes={})'.format([P.n for P in self.levels])

    def sizes(self):
        return [P.n for P in self.levels]

    def check_depth(self, d):
        if d < 0 or d > self.depth:
            raise InputError('Depth {} is outside 0..{}'.format(d, self.depth))

    def projection(self, i, j):
        """The composite level j → level i, for i ≤ j."""
        self.check_depth(j)
        f = po.identity(self.levels[j])
        for k in range(j - 1, i - 1, -1):
            f = po.compose(self.transitions[k], f)
        return f

    def truncate(self, d):
        self.check_depth(d)
        return Tower(self.levels[:d + 1], self.transitions[:d])


def make_tower(levels, transitions):
    """Transitions are MonotoneMaps, {source name: target name} dicts, or
    lists of target names following the source level's canonical order."""
    levels = list(levels)
    maps = []
    for i, t in enumerate(transitions):
        if isinstance(t, po.MonotoneMap):
            maps.append(t)
            continue
        if i + 1 >= len(levels):
            raise InputError('Transition {} has no source level'.format(i))
        src, dst = levels[i + 1], levels[i]
        if isinstance(t, dict):
            missing = [name for name in src.names if name not in t]
            if missing:
                raise InputError('Transition {} has no image for {!r}'.format(i, missing[0]))
            t = [t[name] for name in src.names]
        if len(t) != src.n:
            raise InputError('Transition {} has {} images for {} points'.format(i, len(t), src.n))
        maps.append(po.MonotoneMap(src, dst, (dst.index(x) for x in t)))
    return Tower(levels, maps)

def _words(k):
    if k == 0:
        return [ROOT_NAME]
    return [format(w, '0{}b'.format(k)) for w in range(1 << k)]

def _parent(word):
    return ROOT_NAME if len(word) == 1 else word[:-1]

def cantor_tower(d):
    levels = [po.antichain(1 << k, _words(k)) for k in range(d + 1)]
    transitions = []
    for k in range(d):
        src, dst = levels[k + 1], levels[k]
        transitions.append(po.MonotoneMap(src, dst, (dst.index(_parent(w)) for w in src.names)))
    return Tower(levels, transitions)

def dyadic_chain_tower(d):
    """Chains of 2^k + 1 points named by dyadic rationals; j ↦ j // 2."""
    levels = []
    for k in range(d + 1):
        names = [str(Fraction(j, 1 << k)) for j in range((1 << k) + 1)]
        levels.append(po.chain(len(names), names))
    transitions = []
    for k in range(d):
        src, dst = levels[k + 1], levels[k]
        image = []
        for name in src.names:
            j = int(Fraction(name) * (1 << (k + 1)))
            image.append(dst.index(str(Fraction(j // 2, 1 << k))))
        transitions.append(po.MonotoneMap(src, dst, image))
    return Tower(levels, transitions)

def constant_tower(P, d):
    P = getattr(P, 'carrier', P)
    return Tower([P] * (d + 1), [po.identity(P)] * d)


def threads(T, d):
    """Compatible tuples (p_0, ..., p_d), enumerated forward through fibers."""
    T.check_depth(d)
    found = [(p,) for p in range(T.levels[0].n)]
    for i in range(d):
        t = T.transitions[i]
        found = [th + (q,) for th in found for q in po.bits(t.fiber(th[-1]))]
    return ThreadSet(T, d, found)

def thread_names(T, ts):
    return [tuple(str(T.levels[i].names[p]) for i, p in enumerate(th)) for th in ts.threads]


def _levelwise(T, make_level):
    """Apply a construction to every level and carry transitions over by name."""
    levels = [make_level(P) for P in T.levels]
    transitions = []
    for i, t in enumerate(T.transitions):
        src, dst = levels[i + 1], levels[i]
        old = t.by_name()
        transitions.append(po.MonotoneMap(src, dst, (dst.index(old[name]) for name in src.names)))
    return Tower(levels, transitions)

def patch_tower(T):
    return _levelwise(T, lambda P: sp.patch(P)[0].carrier)

def dual_tower(T):
    return _levelwise(T, lambda P: sp.de_groot_dual(P).carrier)

def onepoint_tower(T):
    """X_i⁺ levelwise; transitions send the new top to the new top."""
    plus = [sp.one_point(P) for P in T.levels]
    levels = [Xp.carrier for Xp, _ in plus]
    transitions = []
    for i, t in enumerate(T.transitions):
        (src_sp, src_incl), (dst_sp, dst_incl) = plus[i + 1], plus[i]
        image = [None] * levels[i + 1].n
        for p in range(T.levels[i + 1].n):
            image[src_incl(p)] = dst_incl(t(p))
        image[sp.top_of(src_sp)] = sp.top_of(dst_sp)
        transitions.append(po.MonotoneMap(levels[i + 1], levels[i], image))
    return Tower(levels, transitions)


class ColimClass(object):
    """An integer function on one level, standing for its class in the colimit."""
    tower = None
    level = 0
    vector = ()

    def __init__(self, tower, level, vector):
        tower.check_depth(level)
        vector = tuple(vector)
        if len(vector) != tower.levels[level].n:
            raise InputError('Function has {} values for {} points'.format(len(vector), tower.levels[level].n))
        for v in vector:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError('Function values must be integers, got {!r}'.format(v))
        self.tower = tower
        self.level = level
        self.vector = vector

    def __repr__(self):
        return 'ColimClass(level={}, {})'.format(self.level, list(self.vector))


def pullback_class(c, j):
    if j < c.level:
        raise InputError('Cannot pull back from level {} to the shallower level {}'.format(c.level, j))
    f = c.tower.projection(c.level, j)
    return tuple(c.vector[f(q)] for q in range(f.src.n))

def classes_equal(c, other):
    """Decided at the deeper representative level; exact at that depth."""
    if c.tower != other.tower:
        raise InputError('Classes live on different towers')
    j = max(c.level, other.level)
    equal = pullback_class(c, j) == pullback_class(other, j)
    logger.debug('Classes compared at depth %d (stable-at-depth): %s', j, equal)
    return equal

def clopen_function_group(T, d):
    """colim over i ≤ d of ℤ^{level i}: free on level-d points, with the level embeddings."""
    T.check_depth(d)
    embeddings = []
    for i in range(d + 1):
        f = T.projection(i, d)
        embeddings.append([[1 if f(q) == p else 0 for p in range(T.levels[i].n)] for q in range(T.levels[d].n)])
    basis = [str(x) for x in T.levels[d].names]
    return ClopenGroup(d, len(basis), basis, embeddings)
