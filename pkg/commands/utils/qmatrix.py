"""Dense matrices over the rationals.

Entries are `fractions.Fraction`; rank uses fraction-free (Bareiss) elimination
on a row-scaled integer copy, everything else uses Gauss-Jordan.
"""
import math
import random

from fractions import Fraction

from commands.utils.errors import DimensionError, InputError


class QMatrix(object):
    rows = 0
    cols = 0
    entries = ()

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise DimensionError('Matrix shape must be non-negative, got {}x{}'.format(rows, cols))
        if entries is None:
            entries = [[0] * cols for _ in range(rows)]
        entries = [list(r) for r in entries]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionError('Expected a {}x{} matrix'.format(rows, cols))
        try:
            self.entries = tuple(tuple(Fraction(x) for x in r) for r in entries)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise InputError('Bad matrix entry: {}'.format(e))
        self.rows = rows
        self.cols = cols

    @classmethod
    def identity(cls, n):
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return 'QMatrix({}x{}, {})'.format(self.rows, self.cols, self.to_strings())

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError('Cannot multiply {}x{} by {}x{}'.format(self.rows, self.cols, other.rows, other.cols))
        ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return QMatrix(self.rows, other.cols,
                       [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in ocols] for r in self.entries])

    def __add__(self, other):
        self._same_shape(other)
        return QMatrix(self.rows, self.cols,
                       [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._same_shape(other)
        return QMatrix(self.rows, self.cols,
                       [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return self.scale(-1)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError('Shape mismatch: {} vs {}'.format(self.shape, other.shape))

    def scale(self, c):
        c = Fraction(c)
        return QMatrix(self.rows, self.cols, [[c * a for a in r] for r in self.entries])

    def transpose(self):
        return QMatrix(self.cols, self.rows, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_zero(self):
        return all(a == 0 for r in self.entries for a in r)

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def select_rows(self, indices):
        return QMatrix(len(indices), self.cols, [self.entries[i] for i in indices])

    def to_strings(self):
        return [[str(a) for a in r] for r in self.entries]

    def rank(self):
        """Bareiss elimination on an integer copy."""
        m = []
        for r in self.entries:
            scale = 1
            for a in r:
                scale = scale * a.denominator // math.gcd(scale, a.denominator)
            m.append([int(a * scale) for a in r])
        rank = 0
        prev = 1
        for c in range(self.cols):
            pivot = next((i for i in range(rank, self.rows) if m[i][c] != 0), None)
            if pivot is None:
                continue
            m[rank], m[pivot] = m[pivot], m[rank]
            for i in range(rank + 1, self.rows):
                for j in range(c + 1, self.cols):
                    m[i][j] = (m[rank][c] * m[i][j] - m[i][c] * m[rank][j]) // prev
                m[i][c] = 0
            prev = m[rank][c]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def rref(self):
        m = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            p = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            pv = m[r][c]
            m[r] = [x / pv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return QMatrix(self.rows, self.cols, m), pivots

    def kernel(self):
        """A basis of the null space, as the columns of a cols × k matrix."""
        R, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for row, c in enumerate(pivots):
                v[c] = -R.entries[row][f]
            basis.append(v)
        return QMatrix.from_columns(basis, self.cols)

    def cokernel_projection(self):
        """A surjection Q with ker Q = image of self."""
        return self.transpose().kernel().transpose()

    def solve(self, B):
        """The unique X with self @ X = B, for self of full column rank."""
        if B.rows != self.rows:
            raise DimensionError('Right-hand side has {} rows, expected {}'.format(B.rows, self.rows))
        aug = hstack([self, B])
        R, pivots = aug.rref()
        if any(c >= self.cols for c in pivots):
            raise DimensionError('Linear system is inconsistent')
        if len(pivots) != self.cols:
            raise DimensionError('Linear system has no unique solution')
        return QMatrix(self.cols, B.cols, [list(R.entries[i][self.cols:]) for i in range(self.cols)])

    def inverse(self):
        if self.rows != self.cols:
            raise DimensionError('Only square matrices can be inverted')
        return self.solve(QMatrix.identity(self.rows))

    def right_inverse(self):
        """S with self @ S = I, for self of full row rank."""
        t = self.transpose()
        return t @ (self @ t).inverse()

    def is_injective(self):
        return self.rank() == self.cols

    def is_surjective(self):
        return self.rank() == self.rows

    def is_iso(self):
        return self.rows == self.cols and self.rank() == self.rows


def hstack(mats, rows=None):
    mats = list(mats)
    if not mats:
        return QMatrix(rows or 0, 0)
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionError('hstack needs equal row counts')
    entries = [[a for m in mats for a in m.entries[i]] for i in range(rows)]
    return QMatrix(rows, sum(m.cols for m in mats), entries)

def vstack(mats, cols=None):
    mats = list(mats)
    if not mats:
        return QMatrix(0, cols or 0)
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionError('vstack needs equal column counts')
    return QMatrix(sum(m.rows for m in mats), cols, [r for m in mats for r in m.entries])

def block_diag(mats):
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    entries = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            for j in range(m.cols):
                entries[r0 + i][c0 + j] = m.entries[i][j]
        r0 += m.rows
        c0 += m.cols
    return QMatrix(rows, cols, entries)

def parse_entry(text):
    """'3', '-1/2' or an int; rejects floats."""
    if isinstance(text, bool) or isinstance(text, float):
        raise InputError('Matrix entries must be integers or "p/q" strings, got {!r}'.format(text))
    try:
        return Fraction(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError('Matrix entries must be integers or "p/q" strings, got {!r}'.format(text))

def from_json(rows, cols, data):
    try:
        entries = [[parse_entry(a) for a in r] for r in data]
    except TypeError:
        raise InputError('Matrix must be a list of rows')
    return QMatrix(rows, cols, entries)

def random_matrix(rng, rows, cols, low=-2, high=2):
    return QMatrix(rows, cols, [[rng.randint(low, high) for _ in range(cols)] for _ in range(rows)])

def random_unitriangular(rng, n, low=-2, high=2):
    """Lower unitriangular, hence invertible over the integers."""
    return QMatrix(n, n, [[1 if i == j else (rng.randint(low, high) if j < i else 0) for j in range(n)]
                          for i in range(n)])

def make_rng(seed):
    return random.Random(seed)
