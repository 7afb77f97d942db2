"""Sheaves of finite-dimensional rational vector spaces on finite posets.

A sheaf on an Alexandrov space is a functor on the opposite poset: a vector
space F(p) for every point and a restriction F(p) → F(q) whenever q ≤ p.
Everything here is exact; limits are kernels of compatibility systems.
"""
import collections
import logging

from commands.utils import poset as po
from commands.utils import qmatrix as qm
from commands.utils.errors import (CommutativityError, DimensionError, FunctorialityError, InputError,
                                   InternalConsistencyError, NotOpenError, SizeBoundError)
from commands.utils.qmatrix import QMatrix


logger = logging.getLogger(__name__)

MAX_DIM = 3
ENTRY_RANGE = (-3, 3)
MAX_CUBE_AXES = 5

SquareReport = collections.namedtuple('SquareReport', [
    'is_pullback', 'is_pushout', 'kernels_iso', 'cokernels_iso', 'kernel_map_surjective',
    'cokernel_map_injective'])


class Limit(object):
    """A limit of a finite diagram, embedded in the product of its objects."""
    keys = ()
    dims = None
    basis = None

    def __init__(self, keys, dims, basis):
        self.keys = tuple(keys)
        self.dims = dict(dims)
        self.basis = basis
        self._offset = {}
        at = 0
        for k in self.keys:
            self._offset[k] = at
            at += self.dims[k]
        self.total = at

    @property
    def dim(self):
        return self.basis.cols

    def projection(self, key):
        start = self._offset[key]
        return self.basis.select_rows(list(range(start, start + self.dims[key])))

    def coordinates(self, components):
        """Coordinates in this limit of a compatible family of maps into its objects."""
        blocks = [components[k] for k in self.keys]
        cols = blocks[0].cols if blocks else 0
        stacked = qm.vstack(blocks, cols=cols)
        try:
            return self.basis.solve(stacked)
        except DimensionError:
            raise InternalConsistencyError('Family of maps is not compatible with the diagram')

def diagram_limit(keys, dims, arrows):
    """Limit of objects `dims[k]` under constraints x_dst = M x_src.

    `arrows` is an iterable of (src, dst, M) with M of shape dims[dst] × dims[src].
    """
    keys = list(keys)
    offset = {}
    at = 0
    for k in keys:
        offset[k] = at
        at += dims[k]
    rows = []
    for src, dst, M in arrows:
        if src == dst:
            continue
        if M.shape != (dims[dst], dims[src]):
            raise DimensionError('Arrow {}→{} has shape {}, expected {}'.format(
                src, dst, M.shape, (dims[dst], dims[src])))
        for i in range(dims[dst]):
            row = [0] * at
            for j in range(dims[src]):
                row[offset[src] + j] = -M.entries[i][j]
            row[offset[dst] + i] += 1
            rows.append(row)
    if rows:
        basis = QMatrix(len(rows), at, rows).kernel()
    else:
        basis = QMatrix.identity(at)
    return Limit(keys, {k: dims[k] for k in keys}, basis)


class VecSheaf(object):
    space = None
    poset = None
    dims = ()
    maps = None

    def __init__(self, space, dims, maps, check=True):
        """`maps[(p, q)]` for q ≤ p is the restriction F(p) → F(q), by element index."""
        P = getattr(space, 'carrier', space)
        if isinstance(dims, dict):
            dims = [dims[name] for name in P.names]
        dims = tuple(dims)
        if len(dims) != P.n:
            raise DimensionError('Sheaf has {} dimensions for {} points'.format(len(dims), P.n))
        for d in dims:
            if not isinstance(d, int) or isinstance(d, bool) or d < 0:
                raise DimensionError('Dimensions must be non-negative integers, got {!r}'.format(d))
        full = {}
        for p in range(P.n):
            for q in po.bits(P.down[p]):
                if (p, q) in maps:
                    full[(p, q)] = maps[(p, q)]
                elif p == q:
                    full[(p, q)] = QMatrix.identity(dims[p])
                else:
                    raise FunctorialityError('Missing restriction {}→{}'.format(P.names[p], P.names[q]),
                                             witness=(P.names[p], P.names[q]))
        for key in maps:
            if key not in full:
                raise FunctorialityError('Restriction given for a pair that is not ordered: {}'.format(key),
                                         witness=key)
        self.space = space
        self.poset = P
        self.dims = dims
        self.maps = full
        if check:
            self.validate()

    @classmethod
    def from_cover_maps(cls, space, dims, cover_maps, check=True):
        """Compose restrictions along cover paths, then validate every triple."""
        P = getattr(space, 'carrier', space)
        if isinstance(dims, dict):
            dims = [dims[name] for name in P.names]
        maps = {}
        for p in range(P.n):
            maps[(p, p)] = QMatrix.identity(dims[p])
            lower = [c for c, top in P.covers() if top == p]
            for q in sorted(po.bits(P.down[p] & ~(1 << p)), reverse=True):
                via = [c for c in lower if P.leq(q, c)][0]
                if (p, via) not in cover_maps:
                    raise FunctorialityError('Missing restriction {}→{}'.format(P.names[p], P.names[via]),
                                             witness=(P.names[p], P.names[via]))
                maps[(p, q)] = maps[(via, q)] @ cover_maps[(p, via)]
        return cls(space, dims, maps, check=check)

    def __eq__(self, other):
        return (isinstance(other, VecSheaf) and self.poset == other.poset and self.dims == other.dims
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.poset, self.dims))

    def __repr__(self):
        return 'VecSheaf({})'.format(', '.join(
            '{}:{}'.format(name, d) for name, d in zip(self.poset.names, self.dims)))

    def restriction(self, p, q):
        return self.maps[(p, q)]

    def validate(self):
        P = self.poset
        for (p, q), M in self.maps.items():
            if M.shape != (self.dims[q], self.dims[p]):
                raise DimensionError('Restriction {}→{} has shape {}, expected {}'.format(
                    P.names[p], P.names[q], M.shape, (self.dims[q], self.dims[p])))
        for p in range(P.n):
            if self.maps[(p, p)] != QMatrix.identity(self.dims[p]):
                raise FunctorialityError('Restriction {0}→{0} is not the identity'.format(P.names[p]),
                                         witness=(P.names[p],))
            for q in po.bits(P.down[p] & ~(1 << p)):
                for r in po.bits(P.down[q] & ~(1 << q)):
                    if self.maps[(p, r)] != self.maps[(q, r)] @ self.maps[(p, q)]:
                        witness = (P.names[p], P.names[q], P.names[r])
                        raise FunctorialityError('Restrictions do not compose along {}'.format(witness),
                                                 witness=witness)

    def is_surjective(self):
        return all(M.is_surjective() for M in self.maps.values())


def poset_limit(F, mask=None):
    """Limit of F over the points in `mask` (all points by default)."""
    P = F.poset
    mask = P.full if mask is None else mask
    keys = list(po.bits(mask))
    arrows = [(p, q, F.maps[(p, q)]) for q, p in P.covers() if mask >> p & 1 and mask >> q & 1]
    return diagram_limit(keys, {k: F.dims[k] for k in keys}, arrows)

def sections(F, U):
    if not F.poset.is_downset(U):
        raise NotOpenError('Sections are only defined over open (downward closed) sets')
    return poset_limit(F, U)

def global_sections(F):
    return sections(F, F.poset.full)

def section_restriction(F, U, V):
    """Γ(U) → Γ(V) for opens V ⊆ U."""
    if V & ~U:
        raise InputError('Restriction needs V ⊆ U')
    LU, LV = sections(F, U), sections(F, V)
    if not LV.keys:
        return QMatrix(0, LU.dim)
    return LV.coordinates({p: LU.projection(p) for p in LV.keys})


def zero_sheaf(P):
    return VecSheaf(P, [0] * P.n, {(p, q): QMatrix(0, 0) for p in range(P.n) for q in po.bits(P.down[p])})

def constant_sheaf(P, dim=1):
    return VecSheaf(P, [dim] * P.n, {(p, q): QMatrix.identity(dim)
                                     for p in range(P.n) for q in po.bits(P.down[p])}, check=False)

def skyscraper(P, p, dim=1):
    dims = [dim if i == p else 0 for i in range(P.n)]
    maps = {(a, b): QMatrix.identity(dims[a]) if a == b else QMatrix(dims[b], dims[a])
            for a in range(P.n) for b in po.bits(P.down[a])}
    return VecSheaf(P, dims, maps)


def _reindex(F, sub):
    to_old = [F.poset.index(name) for name in sub.names]
    dims = [F.dims[i] for i in to_old]
    maps = {(p, q): F.maps[(to_old[p], to_old[q])] for p in range(sub.n) for q in po.bits(sub.down[p])}
    return VecSheaf(sub, dims, maps, check=False)

def restrict_open(F, U):
    """j^*F on the open subposet U."""
    if not F.poset.is_downset(U):
        raise NotOpenError('Open restriction needs a downward closed set')
    return _reindex(F, po.subposet(F.poset, U))

def restrict_closed(F, C):
    """i^*F on the closed subposet C."""
    if not F.poset.is_upset(C):
        raise NotOpenError('Closed restriction needs an upward closed set')
    return _reindex(F, po.subposet(F.poset, C))

def _embedding_mask(X, sub, closed):
    mask = X.mask_of(sub.names)
    if closed and not X.is_upset(mask):
        raise NotOpenError('Support of the sheaf is not closed in the target space')
    if not closed and not X.is_downset(mask):
        raise NotOpenError('Support of the sheaf is not open in the target space')
    return mask

def extend_zero(G, X):
    """j_!G: G on its open support, zero elsewhere."""
    X = getattr(X, 'carrier', X)
    U = _embedding_mask(X, G.poset, closed=False)
    local = {X.index(name): i for i, name in enumerate(G.poset.names)}
    dims = [G.dims[local[p]] if p in local else 0 for p in range(X.n)]
    maps = {}
    for p in range(X.n):
        for q in po.bits(X.down[p]):
            if U >> p & 1:
                maps[(p, q)] = G.maps[(local[p], local[q])]
            else:
                maps[(p, q)] = QMatrix(dims[q], dims[p])
    return VecSheaf(X, dims, maps, check=False)

def _slice(X, H, p):
    """Mask in H's poset of the closed points below p."""
    return H.poset.mask_of(name for name in H.poset.names if X.leq(X.index(name), p))

def pushforward_closed(H, X):
    """i_*H as a right Kan extension: the limit of H over closed points below p."""
    X = getattr(X, 'carrier', X)
    _embedding_mask(X, H.poset, closed=True)
    slices = [_slice(X, H, p) for p in range(X.n)]
    limits = [sections(H, s) for s in slices]
    dims = [L.dim for L in limits]
    maps = {}
    for p in range(X.n):
        for q in po.bits(X.down[p]):
            maps[(p, q)] = _limit_map(limits[p], limits[q])
    return VecSheaf(X, dims, maps, check=False)

def _limit_map(big, small):
    if not small.keys:
        return QMatrix(0, big.dim)
    return small.coordinates({k: big.projection(k) for k in small.keys})

def pullback_sheaf(f, F):
    """f^*F for a monotone f into F's poset."""
    dims = [F.dims[f(p)] for p in range(f.src.n)]
    maps = {(p, q): F.maps[(f(p), f(q))] for p in range(f.src.n) for q in po.bits(f.src.down[p])}
    return VecSheaf(f.src, dims, maps, check=False)

def pushforward_sheaf(f, G):
    """f_*G: sections of G over preimages of principal opens."""
    Q = f.dst
    opens = [f.preimage(Q.down[q]) for q in range(Q.n)]
    limits = [sections(G, U) for U in opens]
    maps = {(q, r): _limit_map(limits[q], limits[r]) for q in range(Q.n) for r in po.bits(Q.down[q])}
    return VecSheaf(Q, [L.dim for L in limits], maps)


def counit_open(F, U):
    """j_!j^*F → F, pointwise."""
    P = F.poset
    return {p: QMatrix.identity(F.dims[p]) if U >> p & 1 else QMatrix(F.dims[p], 0) for p in range(P.n)}

def unit_closed(F, C):
    """F → i_*i^*F, pointwise into the slice limits."""
    P = F.poset
    H = restrict_closed(F, C)
    out = {}
    for p in range(P.n):
        L = sections(H, _slice(P, H, p))
        if not L.keys:
            out[p] = QMatrix(0, F.dims[p])
            continue
        out[p] = L.coordinates({c: F.maps[(p, P.index(H.poset.names[c]))] for c in L.keys})
    return out

def _natural(F, G, components):
    P = F.poset
    for p in range(P.n):
        for q in po.bits(P.down[p]):
            if G.maps[(p, q)] @ components[p] != components[q] @ F.maps[(p, q)]:
                return False
    return True

def recollement_exactness_check(F, U):
    """0 → j_!j^*F → F → i_*i^*F → 0 is exact at every point."""
    P = F.poset
    if not P.is_downset(U):
        raise NotOpenError('Recollement needs an open set')
    C = P.full & ~U
    left = extend_zero(restrict_open(F, U), P)
    right = pushforward_closed(restrict_closed(F, C), P)
    a = counit_open(F, U)
    b = unit_closed(F, C)
    if not _natural(left, F, a) or not _natural(F, right, b):
        logger.debug('Recollement maps are not natural for %r', F)
        return False
    for p in range(P.n):
        if not (b[p] @ a[p]).is_zero():
            return False
        if a[p].rank() != left.dims[p] or b[p].rank() != right.dims[p]:
            return False
        if left.dims[p] + right.dims[p] != F.dims[p]:
            return False
    return True

def adjunction_triangles_check(F, U):
    """Triangle identities for j_! ⊣ j^* and i^* ⊣ i_*."""
    P = F.poset
    C = P.full & ~U
    G = restrict_open(F, U)
    E = extend_zero(G, P)
    if restrict_open(E, U) != G:
        return False
    eps_E = counit_open(E, U)
    if any(eps_E[p] != QMatrix.identity(E.dims[p]) for p in range(P.n)):
        return False
    eps_F = counit_open(F, U)
    if any(eps_F[p] != QMatrix.identity(F.dims[p]) for p in po.bits(U)):
        return False

    H = restrict_closed(F, C)
    K = pushforward_closed(H, P)
    eta_F = unit_closed(F, C)
    for c in range(H.poset.n):
        p = P.index(H.poset.names[c])
        L = sections(H, _slice(P, H, p))
        if L.projection(c) @ eta_F[p] != QMatrix.identity(F.dims[p]):
            return False
    eta_K = unit_closed(K, C)
    KC = restrict_closed(K, C)
    for p in range(P.n):
        s = _slice(P, H, p)
        LK = sections(KC, s)
        LH = sections(H, s)
        if not LH.keys:
            continue
        comps = {}
        for c in LH.keys:
            own = sections(H, _slice(P, H, P.index(H.poset.names[c])))
            comps[c] = own.projection(c) @ LK.projection(c)
        back = LH.coordinates(comps)
        if back @ eta_K[p] != QMatrix.identity(K.dims[p]):
            return False
    return True

def sheaf_axiom_check(F):
    """Γ(∅) = 0 and Γ(U ∪ V) is the pullback of Γ(U), Γ(V) over Γ(U ∩ V)."""
    P = F.poset
    if sections(F, 0).dim != 0:
        return False
    opens = P.downsets()
    for i, U in enumerate(opens):
        for V in opens[i:]:
            sq = Square(section_restriction(F, U | V, U), section_restriction(F, U | V, V),
                        section_restriction(F, U, U & V), section_restriction(F, V, U & V))
            if not bicartesian_square_check(sq).is_pullback:
                return False
    return True


class Square(object):
    """A commuting square of linear maps.

        A --f--> B
        |        |
        h        k
        v        v
        C --g--> D
    """

    def __init__(self, f, h, k, g):
        if f.cols != h.cols or k.cols != f.rows or g.cols != h.rows or k.rows != g.rows:
            raise DimensionError('Square maps do not fit together')
        if k @ f != g @ h:
            raise CommutativityError('Square does not commute', witness=('k∘f', 'g∘h'))
        self.f, self.h, self.k, self.g = f, h, k, g

    @property
    def dims(self):
        return self.f.cols, self.f.rows, self.h.rows, self.k.rows


def bicartesian_square_check(sq):
    """Pullback and pushout tests plus the induced maps on horizontal kernels and cokernels."""
    f, h, k, g = sq.f, sq.h, sq.k, sq.g
    a, b, c, d = sq.dims
    to_sum = qm.vstack([f, h], cols=a)
    cospan = qm.hstack([k, -g], rows=d)
    is_pullback = to_sum.rank() == a and a == b + c - cospan.rank()
    opposite_sum = qm.vstack([f, -h], cols=a)
    from_sum = qm.hstack([k, g], rows=d)
    is_pushout = from_sum.rank() == d and b + c - opposite_sum.rank() == d

    kf, kg = f.kernel(), g.kernel()
    if kf.cols:
        on_kernels = kg.solve(h @ kf) if kg.cols else QMatrix(0, kf.cols)
    else:
        on_kernels = QMatrix(kg.cols, 0)
    kernels_iso = on_kernels.is_iso()
    kernel_map_surjective = on_kernels.is_surjective()

    qf, qg = f.cokernel_projection(), g.cokernel_projection()
    on_cokernels = qg @ k @ qf.right_inverse() if qf.rows else QMatrix(qg.rows, 0)
    cokernels_iso = on_cokernels.is_iso()
    cokernel_map_injective = on_cokernels.is_injective()

    report = SquareReport(is_pullback, is_pushout, kernels_iso, cokernels_iso, kernel_map_surjective,
                          cokernel_map_injective)
    if is_pullback != (kernels_iso and cokernel_map_injective):
        raise InternalConsistencyError('Pullback test disagrees with the kernel criterion: {}'.format(report))
    if is_pushout != (cokernels_iso and kernel_map_surjective):
        raise InternalConsistencyError('Pushout test disagrees with the cokernel criterion: {}'.format(report))
    if (is_pullback and is_pushout) != (kernels_iso and cokernels_iso):
        raise InternalConsistencyError('Bicartesian test disagrees with the fiber criterion: {}'.format(report))
    return report


class CubeDiagram(object):
    """A functor from subsets of `labels` (ordered by inclusion) to vector spaces.

    Subsets are bit-masks over `labels`; `maps[(a, b)]` is F(a) → F(b) for a ⊆ b.
    """
    labels = ()
    dims = None
    maps = None

    def __init__(self, labels, dims, maps, check=True):
        labels = list(labels)
        if not 1 <= len(labels) <= MAX_CUBE_AXES:
            raise SizeBoundError('Cube must have between 1 and {} axes, got {}'.format(MAX_CUBE_AXES, len(labels)))
        self.labels = tuple(labels)
        self.n = len(labels)
        self.full = (1 << self.n) - 1
        missing = [a for a in range(1 << self.n) if a not in dims]
        if missing:
            raise DimensionError('Cube is missing the dimension at {}'.format(self.name(missing[0])))
        self.dims = {a: dims[a] for a in range(1 << self.n)}
        full = {}
        for a in range(1 << self.n):
            full[(a, a)] = maps.get((a, a), QMatrix.identity(self.dims[a]))
        # Longer inclusions are composed from edges in increasing bit order.
        for a in sorted(range(1 << self.n), key=po.popcount, reverse=True):
            for b in sorted(range(1 << self.n), key=po.popcount):
                if b == a or b & a != a:
                    continue
                if (a, b) in maps:
                    full[(a, b)] = maps[(a, b)]
                    continue
                i = next(po.bits(b & ~a))
                edge = (a, a | 1 << i)
                if edge not in maps:
                    raise DimensionError('Cube is missing the edge {}→{}'.format(self.name(a), self.name(a | 1 << i)))
                full[(a, b)] = full[(a | 1 << i, b)] @ maps[edge] if a | 1 << i != b else maps[edge]
        self.maps = full
        if check:
            self.validate()

    def name(self, a):
        return po.cube_name(self.labels[i] for i in po.bits(a))

    def axis(self, label):
        for i, x in enumerate(self.labels):
            if x == label or str(x) == str(label):
                return i
        raise InputError('Axis {!r} is not in the index set {}'.format(label, list(self.labels)))

    def validate(self):
        for (a, b), M in self.maps.items():
            if M.shape != (self.dims[b], self.dims[a]):
                raise DimensionError('Map {}→{} has shape {}, expected {}'.format(
                    self.name(a), self.name(b), M.shape, (self.dims[b], self.dims[a])))
        for a in range(1 << self.n):
            for b in range(1 << self.n):
                if b == a or b & a != a:
                    continue
                for c in range(1 << self.n):
                    if c == b or c & b != b:
                        continue
                    if self.maps[(a, c)] != self.maps[(b, c)] @ self.maps[(a, b)]:
                        witness = (self.name(a), self.name(b), self.name(c))
                        raise CommutativityError('Cube face does not commute along {}'.format(witness),
                                                 witness=witness)

    def limit_over(self, members):
        members = sorted(members)
        present = set(members)
        arrows = [(a, a | 1 << i, self.maps[(a, a | 1 << i)])
                  for a in members for i in range(self.n) if not a >> i & 1 and a | 1 << i in present]
        return diagram_limit(members, {a: self.dims[a] for a in members}, arrows)


def cube_cartesian_direct(cb):
    """F(∅) → lim over nonempty subsets is an isomorphism."""
    L = cb.limit_over(range(1, 1 << cb.n))
    comparison = L.coordinates({a: cb.maps[(0, a)] for a in L.keys})
    return comparison.is_iso()

def cube_cartesian_recursive(cb, axis):
    """The square F(∅) → F({i}) over lim 𝒞₀ → lim 𝒞₁ is a pullback.

    𝒞₀ holds the nonempty subsets without i, 𝒞₁ the subsets with i other than {i}.
    """
    i = cb.axis(axis)
    bit = 1 << i
    c0 = [a for a in range(1, 1 << cb.n) if not a & bit]
    c1 = [a for a in range(1 << cb.n) if a & bit and a != bit]
    L0, L1 = cb.limit_over(c0), cb.limit_over(c1)
    f = cb.maps[(0, bit)]
    d0 = cb.dims[0]
    h = L0.coordinates({a: cb.maps[(0, a)] for a in c0}) if c0 else QMatrix(0, d0)
    k = L1.coordinates({a: cb.maps[(bit, a)] for a in c1}) if c1 else QMatrix(0, cb.dims[bit])
    if c1:
        g = L1.coordinates({a: cb.maps[(a & ~bit, a)] @ L0.projection(a & ~bit) for a in c1})
    else:
        g = QMatrix(0, L0.dim)
    return bicartesian_square_check(Square(f, h, k, g)).is_pullback

def cube_cartesian_check(cb):
    """Run both criteria on every axis; they must agree."""
    direct = cube_cartesian_direct(cb)
    for label in cb.labels:
        if cube_cartesian_recursive(cb, label) != direct:
            raise InternalConsistencyError('Cube criteria disagree on axis {!r}'.format(label))
    return direct


def random_sheaf(P, rng, max_dim=MAX_DIM, entries=ENTRY_RANGE):
    """Functorial by construction: each F(p) maps into the limit of F below p."""
    P = getattr(P, 'carrier', P)
    dims = []
    maps = {}
    for p in range(P.n):
        d = rng.randint(0, max_dim)
        dims.append(d)
        below = P.down[p] & ~(1 << p)
        if below:
            L = diagram_limit(list(po.bits(below)), {q: dims[q] for q in po.bits(below)},
                              [(a, b, maps[(a, b)]) for b, a in P.covers() if below >> a & 1 and below >> b & 1])
            R = qm.random_matrix(rng, L.dim, d, *entries)
            for q in po.bits(below):
                maps[(p, q)] = L.projection(q) @ R
        maps[(p, p)] = QMatrix.identity(d)
    return VecSheaf(P, dims, maps, check=False)

def _below_limit(F, p):
    P = F.poset
    return sections(F, P.down[p] & ~(1 << p))

def is_flabby(F):
    """Each F(p) maps onto the sections over the points strictly below p.

    Equivalent to Γ(U) → Γ(V) being onto for all opens V ⊆ U.
    """
    P = F.poset
    for p in range(P.n):
        L = _below_limit(F, p)
        if not L.keys:
            continue
        if not L.coordinates({q: F.maps[(p, q)] for q in L.keys}).is_surjective():
            return False
    return True

def random_flabby_sheaf(P, rng, max_extra=2, entries=ENTRY_RANGE):
    """F(p) is the limit below p plus up to max_extra free dimensions, in a random basis."""
    P = getattr(P, 'carrier', P)
    dims = []
    maps = {}
    for p in range(P.n):
        below = P.down[p] & ~(1 << p)
        L = diagram_limit(list(po.bits(below)), {q: dims[q] for q in po.bits(below)},
                          [(a, b, maps[(a, b)]) for b, a in P.covers() if below >> a & 1 and below >> b & 1])
        extra = rng.randint(0, max_extra)
        d = L.dim + extra
        dims.append(d)
        onto = qm.hstack([QMatrix.identity(L.dim), qm.random_matrix(rng, L.dim, extra, *entries)], rows=L.dim)
        onto = onto @ qm.random_unitriangular(rng, d).inverse()
        for q in po.bits(below):
            maps[(p, q)] = L.projection(q) @ onto
        maps[(p, p)] = QMatrix.identity(d)
    return VecSheaf(P, dims, maps, check=False)

def random_surjective_sheaf(P, rng, max_dim=MAX_DIM, conjugate=True):
    """Restrictions are surjective: basis vector k dies on a random open D_k."""
    P = getattr(P, 'carrier', P)
    m = rng.randint(0, max_dim)
    opens = P.downsets()
    killed = [opens[rng.randrange(len(opens))] for _ in range(m)]
    alive = [[k for k in range(m) if not killed[k] >> p & 1] for p in range(P.n)]
    change = [qm.random_unitriangular(rng, len(alive[p])) if conjugate else QMatrix.identity(len(alive[p]))
              for p in range(P.n)]
    maps = {}
    for p in range(P.n):
        for q in po.bits(P.down[p]):
            proj = QMatrix(len(alive[q]), len(alive[p]),
                           [[1 if k == l else 0 for l in alive[p]] for k in alive[q]])
            maps[(p, q)] = change[q] @ proj @ change[p].inverse()
    return VecSheaf(P, [len(a) for a in alive], maps, check=False)

def _random_punctured(labels, rng, max_dim, entries):
    n = len(labels)
    dims = {}
    maps = {}
    for a in sorted(range(1, 1 << n), key=lambda x: (-po.popcount(x), x)):
        d = rng.randint(0, max_dim)
        dims[a] = d
        above = [b for b in range(1, 1 << n) if b != a and b & a == a]
        if above:
            L = _limit_of(above, dims, maps, n)
            R = qm.random_matrix(rng, L.dim, d, *entries)
            for b in above:
                maps[(a, b)] = L.projection(b) @ R
    return dims, maps

def _limit_of(members, dims, maps, n):
    present = set(members)
    arrows = [(a, a | 1 << i, maps[(a, a | 1 << i)])
              for a in members for i in range(n) if not a >> i & 1 and a | 1 << i in present]
    return diagram_limit(sorted(members), {a: dims[a] for a in members}, arrows)

def _close_cube(labels, dims, maps, L, R):
    n = len(labels)
    dims[0] = R.cols
    for b in range(1, 1 << n):
        maps[(0, b)] = L.projection(b) @ R
    return CubeDiagram(labels, dims, maps, check=False)

def random_cube(labels, rng, max_dim=4, entries=ENTRY_RANGE):
    labels = list(range(labels)) if isinstance(labels, int) else list(labels)
    dims, maps = _random_punctured(labels, rng, max_dim, entries)
    L = _limit_of(range(1, 1 << len(labels)), dims, maps, len(labels))
    R = qm.random_matrix(rng, L.dim, rng.randint(0, max_dim), *entries)
    return _close_cube(labels, dims, maps, L, R)

def limit_cube(labels, rng, max_dim=4, entries=ENTRY_RANGE):
    """F(∅) is the limit of a random punctured cube."""
    labels = list(range(labels)) if isinstance(labels, int) else list(labels)
    dims, maps = _random_punctured(labels, rng, max_dim, entries)
    L = _limit_of(range(1, 1 << len(labels)), dims, maps, len(labels))
    return _close_cube(labels, dims, maps, L, QMatrix.identity(L.dim))

def perturbed_cube(labels, rng, max_dim=4, entries=ENTRY_RANGE):
    """F(∅) is the limit plus one extra dimension killed by every map."""
    labels = list(range(labels)) if isinstance(labels, int) else list(labels)
    dims, maps = _random_punctured(labels, rng, max_dim, entries)
    L = _limit_of(range(1, 1 << len(labels)), dims, maps, len(labels))
    R = qm.hstack([QMatrix.identity(L.dim), QMatrix(L.dim, 1)], rows=L.dim)
    return _close_cube(labels, dims, maps, L, R)

def zero_cube(labels):
    labels = list(range(labels)) if isinstance(labels, int) else list(labels)
    n = len(labels)
    dims = {a: 0 for a in range(1 << n)}
    maps = {(a, a | 1 << i): QMatrix(0, 0) for a in range(1 << n) for i in range(n) if not a >> i & 1}
    return CubeDiagram(labels, dims, maps)
