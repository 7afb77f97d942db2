"""Finite posets, subsets and monotone maps.

Elements are stored in a canonical index order: a topological sort in which,
among the elements available at each step, the one with the smallest name comes
first. All subsets are bit-masks over that order.
"""
import itertools
import logging

from functools import lru_cache

from commands.utils.errors import InputError, NotMonotoneError, PosetError, SizeBoundError


logger = logging.getLogger(__name__)

# Bit-masks are Python ints; the bound keeps exhaustive enumeration tractable.
MAX_ELEMENTS = 64
MAX_DOWNSET_BASE = 18
MAX_CUBE_DIMENSION = 6


def name_key(name):
    if isinstance(name, int) and not isinstance(name, bool):
        return (0, name, '')
    return (1, 0, str(name))

def bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1

def popcount(mask):
    return bin(mask).count('1')

def mask_key(mask):
    return (popcount(mask), mask)


class FinitePoset(object):
    n = 0
    names = ()
    down = ()
    up = ()
    full = 0

    def __init__(self, names, below):
        """Build from labels and, per label, a mask of labels it lies above.

        `below[i]` uses the order of `names`. The relation is closed reflexively
        and transitively, then checked for antisymmetry.
        """
        names = tuple(names)
        if len(names) > MAX_ELEMENTS:
            raise SizeBoundError('Poset has {} elements; the bound is {}'.format(len(names), MAX_ELEMENTS))
        if len(set(names)) != len(names):
            seen = set()
            dupes = [x for x in names if x in seen or seen.add(x)]
            raise PosetError('Duplicate element names: {}'.format(dupes))
        n = len(names)
        rel = [below[i] | (1 << i) for i in range(n)]
        # Warshall closure on masks.
        for k in range(n):
            bit = 1 << k
            for i in range(n):
                if rel[i] & bit:
                    rel[i] |= rel[k]
        for i in range(n):
            for j in bits(rel[i] & ~(1 << i)):
                if rel[j] >> i & 1:
                    cycle = _find_cycle(names, below)
                    raise PosetError('Order relation has a cycle: {}'.format(' < '.join(str(c) for c in cycle)),
                                     cycle=cycle)

        order = _canonical_order(names, rel)
        position = {old: new for new, old in enumerate(order)}

        def remap(mask):
            out = 0
            for old in bits(mask):
                out |= 1 << position[old]
            return out

        self.n = n
        self.names = tuple(names[old] for old in order)
        self.down = tuple(remap(rel[old]) for old in order)
        up = [0] * n
        for i in range(n):
            for j in bits(self.down[i]):
                up[j] |= 1 << i
        self.up = tuple(up)
        self.full = (1 << n) - 1
        self._index = {name: i for i, name in enumerate(self.names)}
        self._downsets = None

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, FinitePoset) and self.names == other.names and self.down == other.down

    def __hash__(self):
        return hash((self.names, self.down))

    def __repr__(self):
        return 'FinitePoset({})'.format(', '.join(
            '{}<{}'.format(self.names[i], self.names[j]) for i, j in self.covers()) or
            ', '.join(str(x) for x in self.names))

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PosetError('Unknown element name: {!r}'.format(name))

    def has_name(self, name):
        return name in self._index

    def leq(self, i, j):
        return bool(self.down[j] >> i & 1)

    def mask_of(self, names):
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def subset(self, names=()):
        return SubsetMask(self, self.mask_of(names))

    def names_of(self, mask):
        return [self.names[i] for i in bits(mask)]

    def covers(self):
        pairs = []
        for j in range(self.n):
            strict = self.down[j] & ~(1 << j)
            for i in bits(strict):
                between = strict & self.up[i] & ~(1 << i)
                if not between:
                    pairs.append((i, j))
        return sorted(pairs)

    def heights(self):
        h = [0] * self.n
        # Index order is a linear extension.
        for j in range(self.n):
            for i in bits(self.down[j] & ~(1 << j)):
                h[j] = max(h[j], h[i] + 1)
        return h

    def minimal(self):
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def maximal(self):
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def is_downset(self, mask):
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def is_upset(self, mask):
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def down_mask(self, mask):
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def up_mask(self, mask):
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def downsets(self):
        """All downward closed masks, ordered by (size, mask)."""
        if self._downsets is None:
            if self.n > MAX_DOWNSET_BASE:
                raise SizeBoundError('Refusing to enumerate 2^{} candidate downsets (bound {})'.format(
                    self.n, MAX_DOWNSET_BASE))
            found = [0]
            for i in range(self.n):
                strict = self.down[i] & ~(1 << i)
                found += [m | (1 << i) for m in found if m & strict == strict]
            self._downsets = tuple(sorted(found, key=mask_key))
        return self._downsets

    def upsets(self):
        return tuple(sorted((self.full & ~m for m in self.downsets()), key=mask_key))


class SubsetMask(object):
    parent = None
    members = 0

    def __init__(self, parent, members):
        if members < 0 or members & ~parent.full:
            raise InputError('Subset mask {:b} has bits outside a {}-element poset'.format(members, parent.n))
        self.parent = parent
        self.members = members

    def __eq__(self, other):
        return isinstance(other, SubsetMask) and self.parent == other.parent and self.members == other.members

    def __hash__(self):
        return hash((self.parent, self.members))

    def __iter__(self):
        return bits(self.members)

    def __len__(self):
        return popcount(self.members)

    def __contains__(self, i):
        return bool(self.members >> i & 1)

    def __or__(self, other):
        return SubsetMask(self.parent, self.members | other.members)

    def __and__(self, other):
        return SubsetMask(self.parent, self.members & other.members)

    def __sub__(self, other):
        return SubsetMask(self.parent, self.members & ~other.members)

    def __repr__(self):
        return 'SubsetMask({})'.format(self.names())

    def complement(self):
        return SubsetMask(self.parent, self.parent.full & ~self.members)

    def issubset(self, other):
        return self.members & ~other.members == 0

    def names(self):
        return sorted(self.parent.names_of(self.members), key=name_key)


class MonotoneMap(object):
    src = None
    dst = None
    image = ()

    def __init__(self, src, dst, image, check=True):
        image = tuple(image)
        if check:
            if not is_monotone(src, dst, image):
                raise NotMonotoneError('Map is not order-preserving', pair=_monotone_violation(src, dst, image))
        self.src = src
        self.dst = dst
        self.image = image

    def __call__(self, i):
        return self.image[i]

    def __eq__(self, other):
        return (isinstance(other, MonotoneMap) and self.src == other.src and self.dst == other.dst
                and self.image == other.image)

    def __hash__(self):
        return hash((self.src, self.dst, self.image))

    def __repr__(self):
        return 'MonotoneMap({})'.format(', '.join(
            '{}->{}'.format(self.src.names[i], self.dst.names[j]) for i, j in enumerate(self.image)))

    def preimage(self, mask):
        out = 0
        for i, j in enumerate(self.image):
            if mask >> j & 1:
                out |= 1 << i
        return out

    def image_mask(self, mask):
        out = 0
        for i in bits(mask):
            out |= 1 << self.image[i]
        return out

    def fiber(self, j):
        return self.preimage(1 << j)

    def is_injective(self):
        return len(set(self.image)) == len(self.image)

    def is_surjective(self):
        return len(set(self.image)) == self.dst.n

    def is_order_embedding(self):
        return self.is_injective() and all(
            self.src.leq(i, j) == self.dst.leq(self.image[i], self.image[j])
            for i in range(self.src.n) for j in range(self.src.n))

    def by_name(self):
        return {self.src.names[i]: self.dst.names[j] for i, j in enumerate(self.image)}


def _check_image(src, dst, image):
    if len(image) != src.n:
        raise InputError('Image has length {}, source has {} elements'.format(len(image), src.n))
    for j in image:
        if not isinstance(j, int) or j < 0 or j >= dst.n:
            raise InputError('Image index {!r} out of range for a {}-element target'.format(j, dst.n))

def _monotone_violation(src, dst, image):
    for p in range(src.n):
        for q in bits(src.up[p]):
            if not dst.leq(image[p], image[q]):
                return (src.names[p], src.names[q])
    return None

def is_monotone(src, dst, image):
    _check_image(src, dst, image)
    return _monotone_violation(src, dst, image) is None

def identity(P):
    return MonotoneMap(P, P, range(P.n), check=False)

def compose(g, f):
    """g ∘ f"""
    if f.dst != g.src:
        raise InputError('Cannot compose: target of first map is not source of second')
    return MonotoneMap(f.src, g.dst, (g.image[j] for j in f.image), check=False)

def constant_map(P, Q, j):
    return MonotoneMap(P, Q, [j] * P.n)

def all_monotone_maps(P, Q):
    maps = []

    def extend(prefix):
        i = len(prefix)
        if i == P.n:
            maps.append(MonotoneMap(P, Q, prefix, check=False))
            return
        for j in range(Q.n):
            # Index order is a linear extension, so everything below i is assigned.
            if all(Q.leq(prefix[k], j) for k in bits(P.down[i] & ~(1 << i))):
                extend(prefix + [j])

    extend([])
    return maps


def _find_cycle(names, below):
    n = len(names)
    state = [0] * n
    stack = []

    def visit(i):
        state[i] = 1
        stack.append(i)
        for j in bits(below[i] & ~(1 << i)):
            if state[j] == 1:
                return stack[stack.index(j):] + [j]
            if state[j] == 0:
                found = visit(j)
                if found:
                    return found
        state[i] = 2
        stack.pop()
        return None

    for i in range(n):
        if state[i] == 0:
            found = visit(i)
            if found:
                # Reported from bottom to top.
                return [names[k] for k in reversed(found)]
    return []

def _canonical_order(names, rel):
    n = len(names)
    placed = 0
    order = []
    while len(order) < n:
        available = [i for i in range(n) if not placed >> i & 1 and rel[i] & ~(1 << i) & ~placed == 0]
        pick = min(available, key=lambda i: name_key(names[i]))
        order.append(pick)
        placed |= 1 << pick
    return order


def from_covers(names, cover_pairs):
    names = list(names)
    index = {}
    for i, name in enumerate(names):
        index.setdefault(name, i)
    below = [0] * len(names)
    for pair in cover_pairs:
        if len(pair) != 2:
            raise PosetError('Cover pair must have two entries: {!r}'.format(pair))
        lo, hi = pair
        for name in (lo, hi):
            if name not in index:
                raise PosetError('Cover pair references unknown name: {!r}'.format(name))
        below[index[hi]] |= 1 << index[lo]
    return FinitePoset(names, below)

def from_leq(names, leq):
    names = list(names)
    n = len(names)
    if len(leq) != n or any(len(row) != n for row in leq):
        raise PosetError('Order table must be {0}x{0}'.format(n))
    below = [0] * n
    for i in range(n):
        for j in range(n):
            if leq[i][j]:
                below[j] |= 1 << i
    P = FinitePoset(names, below)
    for i in range(n):
        for j in range(n):
            if bool(leq[i][j]) != P.leq(P.index(names[i]), P.index(names[j])):
                raise PosetError('Order table is not reflexive and transitive at ({!r}, {!r})'.format(
                    names[i], names[j]))
    return P

def empty():
    return FinitePoset([], [])

def point(name=0):
    return FinitePoset([name], [0])

def chain(n, names=None):
    names = list(range(n)) if names is None else list(names)
    return from_covers(names, zip(names, names[1:]))

def antichain(n, names=None):
    names = list(range(n)) if names is None else list(names)
    return FinitePoset(names, [0] * len(names))

def spine():
    return from_covers(['a', 'b', 'c'], [('a', 'c'), ('b', 'c')])

def discrete(P):
    return FinitePoset(P.names, [0] * P.n)

def subposet(P, mask):
    keep = list(bits(mask))
    position = {old: new for new, old in enumerate(keep)}
    below = []
    for old in keep:
        m = 0
        for k in bits(P.down[old] & mask):
            m |= 1 << position[k]
        below.append(m)
    return FinitePoset([P.names[i] for i in keep], below)

def inclusion(P, mask):
    S = subposet(P, mask)
    return MonotoneMap(S, P, (P.index(name) for name in S.names), check=False)

def down_closure(P, S):
    return SubsetMask(P, P.down_mask(S.members))

def up_closure(P, S):
    return SubsetMask(P, P.up_mask(S.members))

def opposite(P):
    return FinitePoset(P.names, P.up)

def _tagged_names(P, Q):
    if set(P.names) & set(Q.names):
        return (['{}_0'.format(x) for x in P.names], ['{}_1'.format(x) for x in Q.names])
    return list(P.names), list(Q.names)

def disjoint_union(P, Q):
    left, right = _tagged_names(P, Q)
    below = list(P.down) + [m << P.n for m in Q.down]
    return FinitePoset(left + right, below)

def join(P, Q):
    """P ⋆ Q: every element of P below every element of Q."""
    left, right = _tagged_names(P, Q)
    below = list(P.down) + [(m << P.n) | P.full for m in Q.down]
    return FinitePoset(left + right, below)

def product(P, Q):
    names = []
    below = []
    for i in range(P.n):
        for j in range(Q.n):
            names.append('({},{})'.format(P.names[i], Q.names[j]))
            m = 0
            for a in bits(P.down[i]):
                for b in bits(Q.down[j]):
                    m |= 1 << (a * Q.n + b)
            below.append(m)
    return FinitePoset(names, below)

def cube_name(labels):
    return '{' + ','.join(str(x) for x in sorted(labels, key=name_key)) + '}'

def _cube_labels(N):
    labels = list(range(N)) if isinstance(N, int) else list(N)
    if len(labels) > MAX_CUBE_DIMENSION:
        raise SizeBoundError('Cube dimension {} exceeds the bound {}'.format(len(labels), MAX_CUBE_DIMENSION))
    if len(set(labels)) != len(labels):
        raise PosetError('Cube index set has repeated labels')
    return sorted(labels, key=name_key)

def _cube(labels, with_bottom):
    k = len(labels)
    subsets = [a for a in range(1 << k) if with_bottom or a]
    position = {a: i for i, a in enumerate(subsets)}
    names = [cube_name(labels[b] for b in bits(a)) for a in subsets]
    below = []
    for a in subsets:
        m = 0
        for b in subsets:
            if b & ~a == 0:
                m |= 1 << position[b]
        below.append(m)
    return FinitePoset(names, below)

def cube(N):
    """𝒫(N) ordered by inclusion; elements are named like '{0,2}'."""
    return _cube(_cube_labels(N), True)

def punctured_cube(N):
    return _cube(_cube_labels(N), False)

def urysohn_cube_embedding(P):
    """p ↦ {q : q ≤ p}, an order embedding into the cube on P's names.

    Raises SizeBoundError past MAX_CUBE_DIMENSION points.
    """
    C = cube(P.names)
    image = [C.index(cube_name(P.names_of(P.down[p]))) for p in range(P.n)]
    return MonotoneMap(P, C, image)

def indicator_vector(P, p):
    return tuple(1 if P.leq(q, p) else 0 for q in range(P.n))


def _signature(P, i):
    return (popcount(P.down[i]), popcount(P.up[i]))

def find_isomorphism(P, Q):
    """An order isomorphism P → Q as an image tuple, or None."""
    if P.n != Q.n:
        return None
    sig_p = [_signature(P, i) for i in range(P.n)]
    sig_q = [_signature(Q, j) for j in range(Q.n)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    image = [None] * P.n
    used = [False] * Q.n

    def extend(i):
        if i == P.n:
            return True
        for j in range(Q.n):
            if used[j] or sig_q[j] != sig_p[i]:
                continue
            if all(P.leq(k, i) == Q.leq(image[k], j) and P.leq(i, k) == Q.leq(j, image[k]) for k in range(i)):
                image[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        image[i] = None
        return False

    return tuple(image) if extend(0) else None

def is_isomorphic(P, Q):
    return find_isomorphism(P, Q) is not None

def canonical_form(P):
    """A hashable key equal for isomorphic posets."""
    sigs = sorted({_signature(P, i) for i in range(P.n)})
    blocks = [[i for i in range(P.n) if _signature(P, i) == s] for s in sigs]
    best = None
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        order = [i for part in parts for i in part]
        position = {old: new for new, old in enumerate(order)}
        code = tuple(sum(1 << position[k] for k in bits(P.down[old])) for old in order)
        if best is None or code < best:
            best = code
    return (tuple(sigs), tuple(len(b) for b in blocks), best)

@lru_cache(maxsize=None)
def all_posets(n):
    """Every n-element poset up to isomorphism, labelled 0..n-1."""
    if n == 0:
        return (empty(),)
    found = {}
    for R in all_posets(n - 1):
        for D in R.downsets():
            below = list(R.down) + [D]
            P = FinitePoset(list(R.names) + [n - 1], below)
            found.setdefault(canonical_form(P), P)
    result = tuple(found[key] for key in sorted(found))
    logger.debug('Enumerated %d posets with %d elements', len(result), n)
    return result

def posets_up_to(max_size):
    for n in range(max_size + 1):
        for P in all_posets(n):
            yield P
