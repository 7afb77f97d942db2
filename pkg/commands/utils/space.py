"""Finite T0 spaces: a poset whose opens are its downsets.

Closed sets are upsets, saturated compact sets are downsets again, and the
patch topology is discrete.
"""
import collections
import logging

from commands.utils import dlattice as dl
from commands.utils import frame as fr
from commands.utils import poset as po
from commands.utils import vsheaf as vs
from commands.utils.errors import InputError, InternalConsistencyError, NotOpenError, SizeBoundError


logger = logging.getLogger(__name__)

MAX_FILTER_POINTS = 6
MAX_PATCH_POINTS = 6
MAX_SUBLOCALE_POINTS = 4
TOP_NAME = 'top'

PatchGeneration = collections.namedtuple('PatchGeneration', ['ok', 'witnesses'])


class FiniteSpace(object):
    carrier = None

    def __init__(self, carrier):
        self.carrier = getattr(carrier, 'carrier', carrier)

    def __eq__(self, other):
        return isinstance(other, FiniteSpace) and self.carrier == other.carrier

    def __hash__(self):
        return hash(self.carrier)

    def __repr__(self):
        return 'FiniteSpace({!r})'.format(self.carrier)

    def __len__(self):
        return self.carrier.n

    @property
    def names(self):
        return self.carrier.names


class ScottFilter(object):
    space = None
    members = frozenset()

    def __init__(self, space, members):
        P = _carrier(space)
        members = frozenset(members)
        if not members:
            raise InputError('A filter is nonempty')
        opens_ = set(P.downsets())
        for U in members:
            if U not in opens_:
                raise NotOpenError('Filter member {} is not open'.format(po.cube_name(P.names_of(U))))
            for V in opens_:
                if V & U == U and V not in members:
                    raise InputError('Filter is not upward closed')
            for W in members:
                if U & W not in members:
                    raise InputError('Filter is not closed under binary meets')
        # Directed families of opens contain their union, so Scott-openness holds.
        self.space = space
        self.members = members

    def __eq__(self, other):
        return isinstance(other, ScottFilter) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        P = _carrier(self.space)
        return 'ScottFilter({})'.format(', '.join(po.cube_name(P.names_of(U)) for U in sorted(self.members)))

    def core(self):
        """The intersection of all members."""
        m = _carrier(self.space).full
        for U in self.members:
            m &= U
        return m


def _carrier(X):
    return getattr(X, 'carrier', X)

def _masks(P, family):
    return [po.SubsetMask(P, m) for m in family]

def opens(X):
    P = _carrier(X)
    return _masks(P, P.downsets())

def closed_sets(X):
    P = _carrier(X)
    return _masks(P, P.upsets())

def saturated_compacts(X):
    # Every subset of a finite space is compact; saturated means an intersection of opens.
    P = _carrier(X)
    return _masks(P, P.downsets())


def scott_open_filters(X, bound=MAX_FILTER_POINTS):
    """Every Scott open filter of 𝒪(X), found by closing {X} under adjoining opens."""
    P = _carrier(X)
    if P.n > bound:
        raise SizeBoundError('Filter enumeration is limited to {} points'.format(bound))
    family = P.downsets()
    k = len(family)
    index = {m: i for i, m in enumerate(family)}
    supers = [sum(1 << j for j in range(k) if family[j] & family[i] == family[i]) for i in range(k)]
    meet = [[index[family[i] & family[j]] for j in range(k)] for i in range(k)]

    def adjoin(F, v):
        # F is already a filter; new meets all involve v.
        fresh = 1 << v
        for u in po.bits(F):
            fresh |= 1 << meet[u][v]
        out = F
        for w in po.bits(fresh & ~F):
            out |= supers[w]
        return out

    start = supers[index[P.full]]
    seen = {start}
    queue = [start]
    while queue:
        F = queue.pop()
        for v in range(k):
            if F >> v & 1:
                continue
            G = adjoin(F, v)
            if G not in seen:
                seen.add(G)
                queue.append(G)
    filters = [ScottFilter(P, (family[i] for i in po.bits(F))) for F in sorted(seen, key=po.mask_key)]
    logger.debug('Found %d Scott open filters on %d points', len(filters), P.n)
    return filters

def hofmann_mislove_check(X):
    """K ↦ {opens ⊇ K} is an order isomorphism from Q(X) (reverse inclusion) onto the filters."""
    P = _carrier(X)
    filters = set(f.members for f in scott_open_filters(P))
    compacts = P.downsets()
    image = {}
    for K in compacts:
        image[K] = frozenset(U for U in P.downsets() if U & K == K)
    if set(image.values()) != filters or len(set(image.values())) != len(compacts):
        return False
    for K in compacts:
        for L in compacts:
            if (K & L == L) != (image[K] <= image[L]):
                return False
    return True


def elementary_compacts(X):
    """Unions C ∪ S of a closed C and a saturated compact S."""
    P = _carrier(X)
    found = sorted({C | S for C in P.upsets() for S in P.downsets()}, key=po.mask_key)
    present = set(found)
    for a in found:
        for b in found:
            if a | b not in present:
                raise InternalConsistencyError('Elementary compacts are not closed under unions')
    return _masks(P, found)

def patch_generation_check(X, bound=MAX_PATCH_POINTS):
    """Every subset is an intersection of elementary compacts; witnesses per subset."""
    P = _carrier(X)
    if P.n > bound:
        raise SizeBoundError('Patch generation check is limited to {} points'.format(bound))
    elementary = [E.members for E in elementary_compacts(P)]
    witnesses = collections.OrderedDict()
    ok = True
    for A in range(1 << P.n):
        family = []
        for x in po.bits(P.full & ~A):
            E = next((E for E in elementary if E & A == A and not E >> x & 1), None)
            if E is None:
                ok = False
                break
            if E not in family:
                family.append(E)
        meet = P.full
        for E in family:
            meet &= E
        if meet != A:
            ok = False
        witnesses[A] = family or [P.full]
    return PatchGeneration(ok, witnesses)


def patch(X):
    """The discrete space on the same points, with the identity back to X."""
    P = _carrier(X)
    D = po.discrete(P)
    return FiniteSpace(D), po.MonotoneMap(D, P, (P.index(name) for name in D.names))

def _fresh_name(P, name):
    while P.has_name(name):
        name = name + "'"
    return name

def one_point(X):
    """X⁺: a new top above everything, with the open inclusion X ↪ X⁺."""
    P = _carrier(X)
    Pp = po.join(P, po.point(_fresh_name(P, TOP_NAME)))
    incl = po.MonotoneMap(P, Pp, (Pp.index(name) for name in P.names))
    return FiniteSpace(Pp), incl

def top_of(Xp):
    P = _carrier(Xp)
    return P.maximal()[0]

def one_point_laws_check(X):
    P = _carrier(X)
    Xp, incl = one_point(P)
    Pp = Xp.carrier
    embedded = {incl.image_mask(U) for U in P.downsets()}
    if Pp.full in embedded or set(Pp.downsets()) != embedded | {Pp.full}:
        return False
    # Q(X⁺) under reverse inclusion is Q(X) with X⁺ itself as a new bottom.
    compacts = {K.members for K in saturated_compacts(Xp)}
    old = {incl.image_mask(K.members) for K in saturated_compacts(P)}
    below_all = [K for K in compacts if all(L & ~K == 0 for L in compacts)]
    return Pp.full not in old and compacts == old | {Pp.full} and below_all == [Pp.full]

def de_groot_dual(X):
    return FiniteSpace(po.opposite(_carrier(X)))

def _name_family(P, masks):
    return {frozenset(P.names_of(m)) for m in masks}

def de_groot_laws_check(X):
    P = _carrier(X)
    D = de_groot_dual(P).carrier
    if _name_family(D, D.upsets()) != _name_family(P, P.downsets()):
        return False
    if _name_family(D, D.downsets()) != _name_family(P, P.upsets()):
        return False
    if patch(D)[0] != patch(P)[0]:
        return False
    return de_groot_dual(D).carrier == P


def ksheaf_value_table(X, F):
    """K ↦ dim Γ(K) on saturated compacts, checking the K-sheaf axioms."""
    P = _carrier(X)
    compacts = P.downsets()
    table = collections.OrderedDict()
    for K in compacts:
        table[po.cube_name(P.names_of(K))] = vs.sections(F, K).dim
    if table[po.cube_name([])] != 0:
        raise InputError('K-sheaf value on the empty set is not zero')
    for i, K in enumerate(compacts):
        for L in compacts[i:]:
            sq = vs.Square(vs.section_restriction(F, K | L, K), vs.section_restriction(F, K | L, L),
                           vs.section_restriction(F, K, K & L), vs.section_restriction(F, L, K & L))
            if not vs.bicartesian_square_check(sq).is_pullback:
                raise InputError('K-sheaf union square is not a pullback at {} and {}'.format(
                    po.cube_name(P.names_of(K)), po.cube_name(P.names_of(L))))
    return table


def subspace_nucleus(X, S):
    """The nucleus of 𝒪(X) cut out by the subset S: U ↦ X ∖ ↑(S ∖ U)."""
    P = _carrier(X)
    S = getattr(S, 'members', S)
    F = dl.downset_lattice(P)
    table = [F.index_of(P.full & ~P.up_mask(S & ~U)) for U in F.elements]
    return fr.Nucleus(F, table)

def perfect_subspace_check(X, S):
    """Opens of S with the induced order are exactly the traces of opens of X."""
    P = _carrier(X)
    S = getattr(S, 'members', S)
    sub = po.subposet(P, S)
    traces = _name_family(P, (U & S for U in P.downsets()))
    return _name_family(sub, sub.downsets()) == traces

def sublocale_correspondence_check(X, bound=MAX_SUBLOCALE_POINTS):
    """Subsets of X and nuclei on 𝒪(X) correspond one to one."""
    P = _carrier(X)
    if P.n > bound:
        raise SizeBoundError('Sublocale correspondence check is limited to {} points'.format(bound))
    nuclei = fr.enumerate_nuclei(dl.downset_lattice(P))
    from_subsets = [subspace_nucleus(P, S) for S in range(1 << P.n)]
    return len(set(from_subsets)) == len(from_subsets) and set(from_subsets) == set(nuclei)


def partial_stone(X, f):
    """For f defined on an open subposet of X: V ↦ f⁻¹(V) as an open of X."""
    P = _carrier(X)
    U = P.mask_of(f.src.names)
    if not P.is_downset(U):
        raise NotOpenError('Partial map must be defined on an open set')
    src = dl.downset_lattice(f.dst)
    dst = dl.downset_lattice(P)
    image = [dst.index_of(P.mask_of(f.src.names_of(f.preimage(V)))) for V in src.elements]
    return dl.LatticeHom(src, dst, image, dl.LOWER_BOUNDED)

def one_point_extension(X, f):
    """The total map X⁺ → Y⁺ sending points outside the domain to the new top."""
    P = _carrier(X)
    Xp, _ = one_point(P)
    Yp, incl_y = one_point(f.dst)
    top = top_of(Yp)
    image = []
    for name in Xp.carrier.names:
        if f.src.has_name(name):
            image.append(incl_y(f(f.src.index(name))))
        else:
            image.append(top)
    return po.MonotoneMap(Xp.carrier, Yp.carrier, image)

def one_point_adjunction_check(X, f):
    """Partial maps X ⇀ Y match total maps X⁺ → Y⁺ on lower-bounded homs."""
    P = _carrier(X)
    h = partial_stone(P, f)
    if not dl.hom_check(h).ok:
        return False
    ext = one_point_extension(P, f)
    total = dl.stone_of_monotone(ext)
    if total(total.src.top) != total.dst.top:
        return False
    Pp, Qp = ext.src, ext.dst
    for V in h.src.elements:
        lifted = Qp.mask_of(f.dst.names_of(V))
        back = total.dst.mask(total(total.src.index_of(lifted)))
        if set(Pp.names_of(back)) != set(P.names_of(h.dst.mask(h(h.src.index_of(V))))):
            return False
    return True

def all_partial_maps(X, Y):
    P, Q = _carrier(X), _carrier(Y)
    maps = []
    for U in P.downsets():
        maps.extend(po.all_monotone_maps(po.subposet(P, U), Q))
    return maps


def space_report(X):
    """Counts for the closed / saturated compact / elementary / patch-closed table."""
    P = _carrier(X)
    Xp, _ = one_point(P)
    return collections.OrderedDict([
        ('points', P.n),
        ('names', [str(x) for x in P.names]),
        ('opens', len(P.downsets())),
        ('closed', len(P.upsets())),
        ('saturated_compact', len(P.downsets())),
        ('elementary', len(elementary_compacts(P))),
        ('patch_closed', 1 << P.n),
        ('patch_points', patch(P)[0].carrier.n),
        ('one_point_opens', len(Xp.carrier.downsets())),
        ('dual_opens', len(de_groot_dual(P).carrier.downsets())),
    ])
