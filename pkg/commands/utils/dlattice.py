"""Finite distributive lattices in Birkhoff normal form.

A lattice is stored as its poset of join-irreducibles (`base`) together with
the list of all downsets of that poset; meet and join are intersection and
union of masks. Elements are referred to by their position in `elements`.
"""
import collections
import logging

from commands.utils import poset as po
from commands.utils.errors import InputError, InternalConsistencyError, LatticeError, SizeBoundError


logger = logging.getLogger(__name__)

BOUNDED = 'bounded'
LOWER_BOUNDED = 'lower_bounded'
FLAVORS = (BOUNDED, LOWER_BOUNDED)
MAX_FREE_GENERATORS = 4

HomCheck = collections.namedtuple('HomCheck', ['ok', 'witness'])


class DistLattice(object):
    base = None
    elements = ()
    labels = ()

    def __init__(self, base, labels=None):
        self.base = base
        self.elements = base.downsets()
        self._index = {m: i for i, m in enumerate(self.elements)}
        if labels is None:
            labels = [po.cube_name(base.names_of(m)) for m in self.elements]
        labels = tuple(labels)
        if len(labels) != len(self.elements) or len(set(labels)) != len(labels):
            raise LatticeError('Lattice labels must be distinct, one per element')
        self.labels = labels
        self._label_index = {label: i for i, label in enumerate(labels)}

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return isinstance(other, DistLattice) and self.base == other.base and self.labels == other.labels

    def __hash__(self):
        return hash((self.base, self.labels))

    def __repr__(self):
        return 'DistLattice({} elements over {} join-irreducibles)'.format(len(self), self.base.n)

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return len(self.elements) - 1

    def mask(self, a):
        return self.elements[a]

    def index_of(self, mask):
        try:
            return self._index[mask]
        except KeyError:
            raise InputError('Mask {:b} is not a downset of the join-irreducible poset'.format(mask))

    def index_of_label(self, label):
        try:
            return self._label_index[label]
        except KeyError:
            raise InputError('Unknown lattice element: {!r}'.format(label))

    def label(self, a):
        return self.labels[a]

    def meet(self, a, b):
        return self._index[self.elements[a] & self.elements[b]]

    def join(self, a, b):
        return self._index[self.elements[a] | self.elements[b]]

    def join_all(self, items):
        m = 0
        for a in items:
            m |= self.elements[a]
        return self._index[m]

    def leq(self, a, b):
        return self.elements[a] & ~self.elements[b] == 0

    def above(self, a):
        return [b for b in range(len(self)) if self.leq(a, b)]

    def below(self, a):
        return [b for b in range(len(self)) if self.leq(b, a)]

    def upper_covers(self, a):
        ups = [b for b in self.above(a) if b != a]
        return [b for b in ups if not any(c != b and self.leq(c, b) for c in ups)]

    def is_boolean(self):
        return all(self.base.down[i] == 1 << i for i in range(self.base.n))

    def order_poset(self):
        """The lattice order as a FinitePoset named by labels."""
        below = []
        for a in range(len(self)):
            m = 0
            for b in range(len(self)):
                if self.leq(b, a):
                    m |= 1 << b
            below.append(m)
        return po.FinitePoset(self.labels, below)


class LatticeHom(object):
    src = None
    dst = None
    image = ()
    flavor = BOUNDED

    def __init__(self, src, dst, image, flavor=BOUNDED):
        image = tuple(image)
        if flavor not in FLAVORS:
            raise InputError('Unknown homomorphism flavor: {!r}'.format(flavor))
        if len(image) != len(src):
            raise InputError('Image has length {}, source lattice has {} elements'.format(len(image), len(src)))
        for b in image:
            if not isinstance(b, int) or b < 0 or b >= len(dst):
                raise InputError('Image index {!r} out of range'.format(b))
        self.src = src
        self.dst = dst
        self.image = image
        self.flavor = flavor

    def __call__(self, a):
        return self.image[a]

    def __eq__(self, other):
        return (isinstance(other, LatticeHom) and self.src == other.src and self.dst == other.dst
                and self.image == other.image)

    def __hash__(self):
        return hash((self.src, self.dst, self.image))

    def __repr__(self):
        return 'LatticeHom({}: {})'.format(self.flavor, ', '.join(
            '{}->{}'.format(self.src.label(a), self.dst.label(b)) for a, b in enumerate(self.image)))


def hom_check(h):
    """Check the equations of the hom's flavor; the witness names a violation."""
    src, dst = h.src, h.dst
    if h(src.bottom) != dst.bottom:
        return HomCheck(False, ('bottom', src.label(src.bottom)))
    if h.flavor == BOUNDED and h(src.top) != dst.top:
        return HomCheck(False, ('top', src.label(src.top)))
    for a in range(len(src)):
        for b in range(a + 1, len(src)):
            if h(src.meet(a, b)) != dst.meet(h(a), h(b)):
                return HomCheck(False, ('meet', src.label(a), src.label(b)))
            if h(src.join(a, b)) != dst.join(h(a), h(b)):
                return HomCheck(False, ('join', src.label(a), src.label(b)))
    return HomCheck(True, None)

def compose_homs(g, f):
    """g ∘ f"""
    if f.dst != g.src:
        raise InputError('Cannot compose: target of first hom is not source of second')
    flavor = BOUNDED if f.flavor == g.flavor == BOUNDED else LOWER_BOUNDED
    return LatticeHom(f.src, g.dst, (g(b) for b in f.image), flavor)

def identity_hom(D):
    return LatticeHom(D, D, range(len(D)))


def downset_lattice(P):
    return DistLattice(P)

def lattice_from_table(names, leq):
    """Validate an order table as a distributive lattice and normalize it.

    Returns the lattice in Birkhoff normal form (labels taken from `names`) and
    a dict from each name to its element index.
    """
    names = list(names)
    if not names:
        raise LatticeError('A lattice has at least one element')
    L = po.from_leq(names, leq)
    n = L.n

    def bound(mask, upper):
        # Least element of the common upper bounds (or greatest lower bound).
        cands = [c for c in range(n) if (L.down[c] if upper else L.up[c]) & mask == mask]
        for c in cands:
            if all((L.leq(c, d) if upper else L.leq(d, c)) for d in cands):
                return c
        return None

    join_t = [[None] * n for _ in range(n)]
    meet_t = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            j = bound((1 << a) | (1 << b), True)
            m = bound((1 << a) | (1 << b), False)
            if j is None:
                raise LatticeError('No least upper bound for {!r} and {!r}'.format(L.names[a], L.names[b]),
                                   witness=(L.names[a], L.names[b]))
            if m is None:
                raise LatticeError('No greatest lower bound for {!r} and {!r}'.format(L.names[a], L.names[b]),
                                   witness=(L.names[a], L.names[b]))
            join_t[a][b] = j
            meet_t[a][b] = m
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meet_t[a][join_t[b][c]] != join_t[meet_t[a][b]][meet_t[a][c]]:
                    triple = (L.names[a], L.names[b], L.names[c])
                    raise LatticeError('Not distributive: a∧(b∨c) ≠ (a∧b)∨(a∧c) for {}'.format(triple),
                                       witness=triple)

    bottom = [c for c in range(n) if L.up[c] == L.full][0]
    irreducible = []
    for x in range(n):
        if x == bottom:
            continue
        strict = L.down[x] & ~(1 << x)
        j = bottom
        for y in po.bits(strict):
            j = join_t[j][y]
        if j != x:
            irreducible.append(x)
    ji_mask = sum(1 << x for x in irreducible)
    base = po.subposet(L, ji_mask)
    masks = {}
    for x in range(n):
        masks[x] = base.mask_of(L.names_of(L.down[x] & ji_mask))
    if len(set(masks.values())) != n or len(base.downsets()) != n:
        raise InternalConsistencyError('Birkhoff representation is not a bijection')
    by_mask = {m: L.names[x] for x, m in masks.items()}
    D = DistLattice(base, [by_mask[m] for m in base.downsets()])
    position = {name: D.index_of_label(name) for name in names}
    return D, position

def join_irreducibles(D):
    """The poset of join-irreducible elements, named after their generating points."""
    irreducible = []
    for x in range(len(D)):
        if x == D.bottom:
            continue
        below = [y for y in D.below(x) if y != x]
        if D.join_all(below) != x:
            irreducible.append(x)
    names = []
    below = []
    for x in irreducible:
        m = D.mask(x)
        tops = [p for p in po.bits(m) if D.base.up[p] & m == 1 << p]
        names.append(D.base.names[tops[0]] if len(tops) == 1 else D.label(x))
        below.append(sum(1 << k for k, y in enumerate(irreducible) if D.leq(y, x)))
    return po.FinitePoset(names, below)

def is_isomorphic(D, E):
    return po.is_isomorphic(D.base, E.base)

def booleanize(D):
    """Bool(D) over the same points, with the canonical embedding D ↪ Bool(D)."""
    B = DistLattice(po.discrete(D.base))
    image = [B.index_of(B.base.mask_of(D.base.names_of(m))) for m in D.elements]
    return B, LatticeHom(D, B, image)

def hochster_dual(D):
    """D^op in normal form: base reversed, masks complemented."""
    return DistLattice(po.opposite(D.base))

def hochster_correspondence(D):
    """The order-reversing bijection D → hochster_dual(D), U ↦ complement of U."""
    E = hochster_dual(D)
    image = []
    for m in D.elements:
        names = D.base.names_of(D.base.full & ~m)
        image.append(E.index_of(E.base.mask_of(names)))
    return E, tuple(image)

def free_bounded_dlattice(n):
    if n > MAX_FREE_GENERATORS:
        raise SizeBoundError('Free distributive lattice on {} generators is too large (bound {})'.format(
            n, MAX_FREE_GENERATORS))
    return downset_lattice(po.cube(n))

def stone_of_monotone(f):
    """The downset-preimage hom 𝒪(dst) → 𝒪(src)."""
    src = downset_lattice(f.dst)
    dst = downset_lattice(f.src)
    image = [dst.index_of(f.preimage(m)) for m in src.elements]
    return LatticeHom(src, dst, image)

def monotone_of_hom(h):
    """Inverse of stone_of_monotone on bounded homs between downset lattices."""
    P, Q = h.dst.base, h.src.base
    image = []
    for p in range(P.n):
        hits = [q for q in range(Q.n) if h.dst.mask(h(h.src.index_of(Q.down[q]))) >> p & 1]
        least = [q for q in hits if all(Q.leq(q, r) for r in hits)]
        if not least:
            raise InputError('Hom does not come from a monotone map at point {!r}'.format(P.names[p]))
        image.append(least[0])
    return po.MonotoneMap(P, Q, image)

def enumerate_homs(src, dst, flavor=BOUNDED):
    """All homs of the flavor, found by assigning the principal downsets."""
    Q = src.base
    homs = []

    def extend(assigned):
        if len(assigned) == Q.n:
            image = []
            for a in range(len(src)):
                tops = [q for q in range(Q.n) if src.mask(a) >> q & 1]
                image.append(dst.join_all(assigned[q] for q in tops))
            h = LatticeHom(src, dst, image, flavor)
            if hom_check(h).ok:
                homs.append(h)
            return
        q = len(assigned)
        for b in range(len(dst)):
            # Images of principal downsets must be monotone in q.
            if all(dst.leq(assigned[r], b) for r in po.bits(Q.down[q] & ~(1 << q))):
                extend(assigned + [b])

    extend([])
    logger.debug('Found %d %s homs between lattices of sizes %d and %d', len(homs), flavor, len(src), len(dst))
    return homs
