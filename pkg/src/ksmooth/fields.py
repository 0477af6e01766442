"""Exact arithmetic in prime fields, extension fields GF(p^e) and the
rationals, plus the small dense linear algebra the constructions need.

Extension fields are presented as F_p[u]/(modulus) with elements stored as
coefficient vectors in the basis 1, u, ..., u^(e-1).  Canonical moduli make
every derived object bit-reproducible.  Fields up to order 256 precompute
full operation tables, which keeps the Groebner and search loops fast.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import (
    DescriptorMismatch,
    DivisionByZero,
    NoSolution,
    WrongCharacteristic,
)

# Exact rational coefficients for characteristic-zero lifts.  Fraction already
# maintains the invariant gcd(|num|, den) = 1 with den > 0.
RationalScalar = Fraction

_TABLE_LIMIT = 256


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


# -- dense univariate polynomials over F_p (coefficient lists, low degree first)

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, mod, p):
    """Remainder of a modulo the monic polynomial mod."""
    a = [c % p for c in a]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
            a[i] = 0
    del a[dm:]
    return _poly_trim(a)


def _poly_mulmod(a, b, mod, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_mod(prod, mod, p)


def _poly_powmod(base, k, mod, p):
    result = [1]
    base = _poly_mod(list(base), mod, p)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, mod, p)
        k >>= 1
        if k:
            base = _poly_mulmod(base, base, mod, p)
    return result


def _poly_gcd(a, b, p):
    a = _poly_trim([c % p for c in a])
    b = _poly_trim([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        r = a
        for i in range(len(r) - 1, len(bm) - 2, -1):
            c = r[i]
            if c:
                off = i - (len(bm) - 1)
                for j in range(len(bm)):
                    r[off + j] = (r[off + j] - c * bm[j]) % p
        a, b = bm, _poly_trim(r)
        a = [c for c in a]
    return a


def is_irreducible(coeffs, p):
    """Irreducibility over F_p of a monic polynomial given as a coefficient list.

    Degrees 2 and 3 reduce to a root check; in general the polynomial is
    irreducible iff it shares no factor with x^(p^k) - x for any k below its
    degree.
    """
    coeffs = [c % p for c in coeffs]
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] != 1:
        return False
    if k == 1:
        return True
    if k <= 3:
        for x in range(p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * x + c) % p
            if acc == 0:
                return False
        return True
    t = [0, 1]
    for _ in range(1, k):
        t = _poly_powmod(t, p, coeffs, p)
        diff = list(t)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(coeffs, diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def find_irreducible(p, k):
    """Canonical monic irreducible of degree k over F_p.

    Candidates are scanned in increasing order of the coefficient vector read
    as a base-p integer (constant term least significant), so the result is
    the same on every run.  Degree 1 needs no modulus and returns None.
    """
    if k < 1:
        raise ValueError("degree must be >= 1")
    if k == 1:
        return None
    for m in range(p ** k):
        digits = []
        v = m
        for _ in range(k):
            digits.append(v % p)
            v //= p
        cand = digits + [1]
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: an irreducible of every degree exists")


class FieldDescriptor:
    """Finite field GF(p^e), presented as F_p[u]/(modulus) for e >= 2."""

    __slots__ = ("p", "e", "modulus", "order", "key", "_red", "_elements",
                 "_add", "_sub", "_mul", "_neg", "_inv")

    def __init__(self, p, e=1, modulus=None):
        p = int(p)
        e = int(e)
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        if e == 1:
            if modulus is not None:
                raise ValueError("prime fields carry no modulus")
            self.modulus = None
        else:
            if modulus is None:
                modulus = find_irreducible(p, e)
            else:
                modulus = [int(c) % p for c in modulus]
                if len(modulus) != e + 1 or modulus[-1] != 1:
                    raise ValueError("modulus must be monic of degree e")
                if not is_irreducible(modulus, p):
                    raise ValueError("modulus is reducible over the prime field")
            self.modulus = tuple(modulus)
        self.p = p
        self.e = e
        self.order = p ** e
        self.key = (p, e, self.modulus)
        self._red = None
        if e >= 2:
            base_row = [(-m) % p for m in self.modulus[:e]]
            red = [tuple(base_row)]
            for _ in range(e - 2):
                prev = red[-1]
                shifted = [0] + list(prev[: e - 1])
                c = prev[e - 1]
                if c:
                    shifted = [(s + c * b) % p for s, b in zip(shifted, base_row)]
                red.append(tuple(shifted))
            self._red = red
        self._elements = None
        self._add = self._sub = self._mul = self._neg = self._inv = None
        if self.order <= _TABLE_LIMIT:
            self._build_tables()

    # -- raw coefficient arithmetic -------------------------------------

    def _coeffs_to_idx(self, coeffs):
        idx = 0
        for c in reversed(coeffs):
            idx = idx * self.p + c
        return idx

    def _idx_to_coeffs(self, idx):
        out = []
        for _ in range(self.e):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(out)

    def _add_coeffs(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub_coeffs(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg_coeffs(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul_coeffs(self, a, b):
        p = self.p
        e = self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = prod[:e]
        for k in range(e, 2 * e - 1):
            c = prod[k] % p
            if c:
                row = self._red[k - e]
                for j in range(e):
                    out[j] += c * row[j]
        return tuple(v % p for v in out)

    def _build_elements(self):
        self._elements = [FieldElement(self, self._idx_to_coeffs(i), i)
                          for i in range(self.order)]

    def _build_tables(self):
        self._build_elements()
        els = self._elements
        n = self.order
        negidx = [self._coeffs_to_idx(self._neg_coeffs(els[i].coeffs)) for i in range(n)]
        add = []
        sub = []
        mul = []
        for i in range(n):
            a = els[i].coeffs
            arow = [els[self._coeffs_to_idx(self._add_coeffs(a, els[j].coeffs))]
                    for j in range(n)]
            mrow = [els[self._coeffs_to_idx(self._mul_coeffs(a, els[j].coeffs))]
                    for j in range(n)]
            add.append(arow)
            mul.append(mrow)
            sub.append([arow[negidx[j]] for j in range(n)])
        one = els[1]
        inv = [None] * n
        for i in range(1, n):
            if inv[i] is None:
                row = mul[i]
                for j in range(1, n):
                    if row[j] is one:
                        inv[i] = els[j]
                        inv[j] = els[i]
                        break
        self._neg = [els[negidx[i]] for i in range(n)]
        self._inv = inv
        self._add = add
        self._sub = sub
        self._mul = mul

    # -- public element constructors -------------------------------------

    def element(self, coeffs):
        cs = tuple(int(c) % self.p for c in coeffs)
        if len(cs) != self.e:
            raise ValueError(f"expected {self.e} coefficients, got {len(cs)}")
        if self._elements is not None:
            return self._elements[self._coeffs_to_idx(cs)]
        return FieldElement(self, cs)

    def element_from_index(self, idx):
        if not 0 <= idx < self.order:
            raise ValueError("index out of range")
        if self._elements is not None:
            return self._elements[idx]
        return FieldElement(self, self._idx_to_coeffs(idx), idx)

    def from_int(self, n):
        return self.element_from_index(int(n) % self.p)

    def zero(self):
        return self.element_from_index(0)

    def one(self):
        return self.element_from_index(1)

    def elements(self):
        """All field elements, ordered by coefficient vector read as a base-p
        integer with the constant term least significant."""
        if self._elements is None:
            self._build_elements()
        return list(self._elements)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field.key != self.key:
                raise DescriptorMismatch(f"{value.field!r} element in {self!r}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.element(value)

    def __eq__(self, other):
        if isinstance(other, FieldDescriptor):
            return self.key == other.key
        return NotImplemented

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e})"


class RationalField:
    """The rational numbers as a coefficient domain (used by lifts)."""

    p = 0
    e = 1
    modulus = None
    order = None
    key = ("QQ",)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def __call__(self, value):
        return Fraction(value)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class FieldElement:
    """Element of a FieldDescriptor: coefficients of 1, u, ..., u^(e-1)."""

    __slots__ = ("field", "coeffs", "idx")

    def __init__(self, field, coeffs, idx=None):
        self.field = field
        self.coeffs = tuple(coeffs)
        self.idx = field._coeffs_to_idx(self.coeffs) if idx is None else idx

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        f = self.field
        if other.field is not f and other.field.key != f.key:
            raise DescriptorMismatch(f"{f!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        f = self.field
        t = f._add
        if t is not None:
            return t[self.idx][other.idx]
        return FieldElement(f, f._add_coeffs(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        f = self.field
        t = f._sub
        if t is not None:
            return t[self.idx][other.idx]
        return FieldElement(f, f._sub_coeffs(self.coeffs, other.coeffs))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        t = f._mul
        if t is not None:
            return t[self.idx][other.idx]
        return FieldElement(f, f._mul_coeffs(self.coeffs, other.coeffs))

    def __neg__(self):
        f = self.field
        t = f._neg
        if t is not None:
            return t[self.idx]
        return FieldElement(f, f._neg_coeffs(self.coeffs))

    def inv(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        t = self.field._inv
        if t is not None:
            return t[self.idx]
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        self._check(other)
        if not other:
            raise DivisionByZero("division by zero")
        return self * other.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __bool__(self):
        return self.idx != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.idx == other.idx and (self.field is other.field
                                              or self.field.key == other.field.key)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.idx))

    def __str__(self):
        parts = []
        for i in reversed(range(self.field.e)):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "u" if i == 1 else f"u^{i}"
                parts.append(var if c == 1 else f"{c}{var}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"{self}::{self.field!r}"


def frobenius(x, power=1):
    """Apply the p-power Frobenius `power` times: x -> x^(p^power)."""
    if power < 1:
        raise ValueError("power must be >= 1")
    p = x.field.p
    out = x
    for _ in range(power):
        out = out ** p
    return out


def sqrt_char2(x):
    """Square root in characteristic 2 via x -> x^(2^(e-1))."""
    if not isinstance(x, FieldElement) or x.field.p != 2:
        raise WrongCharacteristic("square roots this way exist only in characteristic 2")
    out = x
    for _ in range(x.field.e - 1):
        out = out * out
    return out


def enumerate_field(field):
    """All q elements in canonical order (base-p integer encodings)."""
    return field.elements()


def enumerate_projective_points(field, r):
    """Points of P^r over a finite field, one representative each.

    The first nonzero coordinate is normalized to 1 and tuples come out in
    lexicographic order (canonical field order per coordinate, leftmost
    coordinate most significant).
    """
    if r < 0:
        raise ValueError("dimension must be >= 0")
    one = field.one()
    zero = field.zero()
    if r == 0:
        yield (one,)
        return
    for tail in enumerate_projective_points(field, r - 1):
        yield (zero,) + tail
    els = field.elements()
    for tail in itertools.product(els, repeat=r):
        yield (one,) + tail


def normalize_projective(point):
    """Scale a nonzero coordinate tuple so its first nonzero entry is 1."""
    for c in point:
        if c:
            if c == c.field.one():
                return tuple(point)
            cinv = c.inv()
            return tuple(x * cinv for x in point)
    raise ValueError("zero tuple is not a projective point")


class FieldMatrix:
    """Dense rectangular matrix over one coefficient field.

    Exact Gaussian elimination with leftmost-nonzero pivoting; also usable
    with Fraction entries over the rationals.
    """

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        det = self.field.one()
        if n == 0:
            return det
        a = [list(r) for r in self.rows]
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return self.field.zero()
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = -det
            pv = a[c][c]
            det = det * pv
            for i in range(c + 1, n):
                if a[i][c]:
                    f = a[i][c] / pv
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return det

    def rref(self):
        """Reduced row echelon form; returns (rows, pivot column indices)."""
        a = [list(r) for r in self.rows]
        one = self.field.one()
        pivots = []
        r = 0
        for c in range(self.ncols):
            if r == self.nrows:
                break
            piv = next((i for i in range(r, self.nrows) if a[i][c]), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            pv = a[r][c]
            if pv != one:
                a[r] = [x / pv for x in a[r]]
            for i in range(self.nrows):
                if i != r and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Basis of the right kernel in reduced echelon form, one vector per
        free column, ordered by free column index."""
        a, pivots = self.rref()
        zero = self.field.zero()
        one = self.field.one()
        pivset = set(pivots)
        basis = []
        for fcol in range(self.ncols):
            if fcol in pivset:
                continue
            v = [zero] * self.ncols
            v[fcol] = one
            for i, pc in enumerate(pivots):
                v[pc] = -a[i][fcol]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs):
        """One solution of self * x = rhs (free variables set to zero)."""
        rhs = list(rhs)
        if len(rhs) != self.nrows:
            raise ValueError("right-hand side has the wrong length")
        aug = FieldMatrix(self.field, [row + [b] for row, b in zip(self.rows, rhs)])
        a, pivots = aug.rref()
        if pivots and pivots[-1] == self.ncols:
            raise NoSolution("inconsistent linear system")
        zero = self.field.zero()
        x = [zero] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = a[i][self.ncols]
        return tuple(x)


class FieldEmbedding:
    """Embedding of GF(p^e) into GF(p^E) with e dividing E.

    Determined by the first root of the small modulus in canonical order, so
    repeated runs embed identically.  `down` inverts the embedding on its
    image and raises NoSolution off it.
    """

    __slots__ = ("small", "big", "root", "_solver")

    def __init__(self, small, big):
        if small.p != big.p:
            raise DescriptorMismatch("embeddings require equal characteristic")
        if big.e % small.e:
            raise ValueError(f"GF({small.p}^{small.e}) does not embed in GF({big.p}^{big.e})")
        self.small = small
        self.big = big
        if small.e == 1:
            self.root = None
            self._solver = None
            return
        zero = big.zero()
        root = None
        for cand in big.elements():
            acc = zero
            for c in reversed(small.modulus):
                acc = acc * cand + big.from_int(c)
            if not acc:
                root = cand
                break
        if root is None:
            raise AssertionError("unreachable: the modulus splits in the big field")
        self.root = root
        powers = [big.one()]
        for _ in range(small.e - 1):
            powers.append(powers[-1] * root)
        prime = get_descriptor(big.p)
        rows = [[prime.from_int(pw.coeffs[j]) for pw in powers] for j in range(big.e)]
        self._solver = FieldMatrix(prime, rows)

    def up(self, x):
        if x.field.key != self.small.key:
            raise DescriptorMismatch("element is not in the small field")
        if self.small.e == 1:
            return self.big.from_int(x.coeffs[0])
        acc = self.big.zero()
        for c in reversed(x.coeffs):
            acc = acc * self.root + self.big.from_int(c)
        return acc

    def down(self, y):
        if y.field.key != self.big.key:
            raise DescriptorMismatch("element is not in the big field")
        if self.small.e == 1:
            if any(y.coeffs[1:]):
                raise NoSolution("element lies outside the prime subfield")
            return self.small.from_int(y.coeffs[0])
        prime = self._solver.field
        sol = self._solver.solve([prime.from_int(c) for c in y.coeffs])
        return self.small.element([s.coeffs[0] for s in sol])


_DESCRIPTOR_CACHE = {}
_EMBEDDING_CACHE = {}


def get_descriptor(p, e=1):
    """Cached descriptor with the canonical modulus."""
    key = (p, e)
    d = _DESCRIPTOR_CACHE.get(key)
    if d is None:
        d = FieldDescriptor(p, e)
        _DESCRIPTOR_CACHE[key] = d
    return d


def get_embedding(small, big):
    key = (small.key, big.key)
    emb = _EMBEDDING_CACHE.get(key)
    if emb is None:
        emb = FieldEmbedding(small, big)
        _EMBEDDING_CACHE[key] = emb
    return emb


# -- JSON wire format --------------------------------------------------------

def field_to_json(field):
    if isinstance(field, RationalField):
        return {"p": 0, "e": 1, "modulus": None}
    return {"p": field.p, "e": field.e,
            "modulus": list(field.modulus) if field.modulus else None}


def field_from_json(obj):
    p = int(obj["p"])
    if p == 0:
        return QQ
    e = int(obj.get("e", 1))
    modulus = obj.get("modulus")
    if modulus is None:
        return get_descriptor(p, e)
    canonical = get_descriptor(p, e)
    if canonical.modulus == tuple(int(c) for c in modulus):
        return canonical
    return FieldDescriptor(p, e, modulus)


def element_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    return list(x.coeffs)


def element_from_json(field, data):
    if isinstance(field, RationalField):
        return Fraction(data)
    return field.element(data)
