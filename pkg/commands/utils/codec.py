"""JSON file formats for posets, lattices, nuclei, towers, cubes and sheaves.

Readers raise `InputError` carrying the source name and, where the offending
value can be found in the text, its line and column.
"""
import collections
import json
import re

from commands.utils import dlattice as dl
from commands.utils import frame as fr
from commands.utils import poset as po
from commands.utils import qmatrix as qm
from commands.utils import tower as tw
from commands.utils import vsheaf as vs
from commands.utils.errors import InputError


ARROWS = ('→', '->')
CUBE_KEY_RE = re.compile(r'^\s*\{([^{}]*)\}\s*$')


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)

def _locate(text, token):
    """Line and column (1-based) of the first JSON occurrence of `token`."""
    if text is None or token is None:
        return None, None
    at = text.find(json.dumps(token, ensure_ascii=False))
    if at < 0:
        return None, None
    line = text.count('\n', 0, at) + 1
    column = at - (text.rfind('\n', 0, at) + 1) + 1
    return line, column

def _hint(err):
    for attr in ('cycle', 'pair', 'witness'):
        value = getattr(err, attr, None)
        if value:
            return value[0] if isinstance(value, (list, tuple)) else value
    found = re.search(r"'([^']+)'", err.message)
    return found.group(1) if found else None

def loads(text, reader, source='<input>'):
    """Decode `text` and hand the data to `reader`, attaching a position to errors."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(e.msg, source, e.lineno, e.colno)
    try:
        return reader(data)
    except InputError as e:
        if e.source is None:
            e.source = source
        if e.line is None:
            e.line, e.column = _locate(text, _hint(e))
        raise

def load(path, reader):
    with open(path, encoding='utf-8') as f:
        text = f.read()
    return loads(text, reader, source=path)


def _field(data, key, kind=None):
    if not isinstance(data, dict) or key not in data:
        raise InputError('Missing field {!r}'.format(key))
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise InputError('Field {!r} has the wrong type'.format(key))
    return value

def read_poset(data):
    """{"names": [...], "covers": [[below, above], ...]} or with a full "leq" table."""
    names = _field(data, 'names', list)
    for name in names:
        if not isinstance(name, (str, int)) or isinstance(name, bool):
            raise InputError('Element names must be strings or integers, got {!r}'.format(name))
    if 'leq' in data:
        return po.from_leq(names, _field(data, 'leq', list))
    return po.from_covers(names, data.get('covers', []))

def read_lattice(data):
    """{"birkhoff_base": <poset>} or {"elements": [...], "leq_table": [[...]]}."""
    if isinstance(data, dict) and 'birkhoff_base' in data:
        return dl.downset_lattice(read_poset(data['birkhoff_base']))
    names = _field(data, 'elements', list)
    D, _ = dl.lattice_from_table(names, _field(data, 'leq_table', list))
    return D

def read_nucleus(data):
    """{"lattice": <lattice>, "image": {label: label}} or an image array in "elements" order."""
    lattice_data = _field(data, 'lattice', dict)
    F = read_lattice(lattice_data)
    image = _field(data, 'image')
    if isinstance(image, list):
        order = lattice_data.get('elements') or list(F.labels)
        if len(image) != len(order):
            raise InputError('Nucleus image has {} entries for {} elements'.format(len(image), len(order)))
        image = dict(zip(order, image))
    if not isinstance(image, dict):
        raise InputError('Nucleus image must be an array or an object')
    table = []
    for label in F.labels:
        if label not in image:
            raise InputError('Nucleus has no value at {!r}'.format(label))
        table.append(F.index_of_label(image[label]))
    return fr.Nucleus(F, table)

def read_tower(data):
    """Transitions are image arrays aligned with the source level's "names", or objects."""
    level_data = _field(data, 'levels', list)
    levels = [read_poset(d) for d in level_data]
    transitions = []
    for i, t in enumerate(_field(data, 'transitions', list)):
        if isinstance(t, list):
            if i + 1 >= len(level_data):
                raise InputError('Transition {} has no source level'.format(i))
            src_names = level_data[i + 1]['names']
            if len(t) != len(src_names):
                raise InputError('Transition {} has {} images for {} points'.format(i, len(t), len(src_names)))
            t = dict(zip(src_names, t))
        elif not isinstance(t, dict):
            raise InputError('Transition {} must be an array or an object'.format(i))
        transitions.append(t)
    return tw.make_tower(levels, transitions)


def _cube_subset(text, labels):
    found = CUBE_KEY_RE.match(text)
    if not found:
        raise InputError('Bad cube vertex {!r}'.format(text))
    mask = 0
    for part in found.group(1).split(','):
        part = part.strip()
        if not part:
            continue
        hits = [i for i, x in enumerate(labels) if str(x) == part]
        if not hits:
            raise InputError('Unknown cube axis {!r} in {!r}'.format(part, text))
        mask |= 1 << hits[0]
    return mask

def _split_arrow(key):
    for arrow in ARROWS:
        if arrow in key:
            lo, hi = key.split(arrow, 1)
            return lo, hi
    raise InputError('Cube map key {!r} has no arrow'.format(key))

def read_cube(data):
    """{"n": 3, "dims": {"{}": 2, ...}, "maps": {"{}→{1}": [["1/2", ...], ...], ...}}"""
    if isinstance(data, dict) and 'labels' in data:
        labels = _field(data, 'labels', list)
    else:
        n = _field(data, 'n', int)
        labels = list(range(n))
    dims = {}
    for key, d in _field(data, 'dims', dict).items():
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError('Dimension at {!r} must be a non-negative integer'.format(key))
        dims[_cube_subset(key, labels)] = d
    maps = {}
    for key, rows in _field(data, 'maps', dict).items():
        lo, hi = _split_arrow(key)
        a, b = _cube_subset(lo, labels), _cube_subset(hi, labels)
        if b & a != a:
            raise InputError('Cube map {!r} does not go up the cube'.format(key))
        if a not in dims or b not in dims:
            raise InputError('Cube map {!r} touches a vertex without a dimension'.format(key))
        maps[(a, b)] = qm.from_json(dims[b], dims[a], rows)
    return vs.CubeDiagram(labels, dims, maps)

def read_sheaf(data):
    """{"poset": <poset>, "dims": {name: d}, "maps": {"p→q": rows}}; cover maps are required."""
    P = read_poset(_field(data, 'poset', dict))
    raw_dims = _field(data, 'dims', dict)
    dims = []
    for name in P.names:
        d = raw_dims.get(str(name))
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError('Sheaf has no valid dimension at {!r}'.format(str(name)))
        dims.append(d)
    given = {}
    for key, rows in data.get('maps', {}).items():
        hi, lo = (x.strip() for x in _split_arrow(key))
        p, q = P.index(_lookup(P, hi)), P.index(_lookup(P, lo))
        given[(p, q)] = qm.from_json(dims[q], dims[p], rows)
    covers = {(hi, lo): given[(hi, lo)] for lo, hi in P.covers() if (hi, lo) in given}
    F = vs.VecSheaf.from_cover_maps(P, dims, covers)
    for (p, q), M in given.items():
        if (p, q) in F.maps and F.maps[(p, q)] != M:
            raise InputError('Restriction {!r}→{!r} disagrees with the composite of cover maps'.format(
                str(P.names[p]), str(P.names[q])))
    return F

def _lookup(P, text):
    for name in P.names:
        if str(name) == text:
            return name
    raise InputError('Unknown element name: {!r}'.format(text))


def encode_poset(P):
    return collections.OrderedDict([
        ('names', list(P.names)),
        ('covers', [[P.names[i], P.names[j]] for i, j in P.covers()]),
    ])

def encode_subset(P, mask):
    return sorted(P.names_of(mask), key=po.name_key)

def encode_lattice(D):
    return collections.OrderedDict([
        ('elements', list(D.labels)),
        ('leq_table', [[D.leq(a, b) for b in range(len(D))] for a in range(len(D))]),
    ])

def encode_hom(h):
    return [h.dst.label(b) for b in h.image]

def encode_nucleus(N):
    return [N.frame.label(b) for b in N.table]

def encode_map(f):
    return collections.OrderedDict((str(k), v) for k, v in f.by_name().items())

def encode_tower(T):
    return collections.OrderedDict([
        ('levels', [encode_poset(P) for P in T.levels]),
        ('transitions', [[t.dst.names[j] for j in t.image] for t in T.transitions]),
    ])

def encode_matrix(M):
    return M.to_strings()

def encode_cube(cb):
    maps = collections.OrderedDict()
    for a in range(1 << cb.n):
        for i in range(cb.n):
            if not a >> i & 1:
                b = a | 1 << i
                maps['{}→{}'.format(cb.name(a), cb.name(b))] = encode_matrix(cb.maps[(a, b)])
    return collections.OrderedDict([
        ('n', cb.n),
        ('labels', list(cb.labels)),
        ('dims', collections.OrderedDict((cb.name(a), cb.dims[a]) for a in range(1 << cb.n))),
        ('maps', maps),
    ])

def encode_sheaf(F):
    P = F.poset
    return collections.OrderedDict([
        ('poset', encode_poset(P)),
        ('dims', collections.OrderedDict((str(x), d) for x, d in zip(P.names, F.dims))),
        ('maps', collections.OrderedDict(
            ('{}→{}'.format(P.names[hi], P.names[lo]), encode_matrix(F.maps[(hi, lo)])) for lo, hi in P.covers())),
    ])
