"""Exact arithmetic layer: extended rationals, 2x2 integer matrices with
their Moebius action, and integer-coefficient formal sums of matrices.

All values are immutable after construction and every operation is a pure
function, so values can be shared freely between threads.  Python integers
are unbounded, so no identity here can be corrupted by overflow.
"""

from __future__ import annotations

import math
from functools import total_ordering

__all__ = [
    "ExtendedRational",
    "IntMatrix2",
    "FormalSum",
    "xgcd",
    "MINUS_INFINITY",
    "INFINITY",
    "ZERO",
    "ONE",
    "I",
    "T",
    "S",
    "T_PRIME",
]


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y == g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


@total_ordering
class ExtendedRational:
    """A rational num/den in lowest terms with den >= 0, including the two
    signed infinities 1/0 and -1/0.

    The constructor normalizes: a negative denominator flips both signs,
    the gcd is divided out, and k/0 becomes sign(k)/0.  The order is total,
    with -1/0 below and 1/0 above every finite rational.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        if num == 0 and den == 0:
            raise ValueError("0/0 is not an extended rational")
        if den < 0:
            num, den = -num, -den
        if den == 0:
            num = 1 if num > 0 else -1
        else:
            g = math.gcd(num, den)
            num //= g
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("ExtendedRational is immutable")

    @classmethod
    def from_string(cls, text):
        """Parse 'p/q' or a bare integer 'p'."""
        parts = text.strip().split("/")
        if len(parts) == 1:
            return cls(int(parts[0]), 1)
        if len(parts) == 2:
            return cls(int(parts[0]), int(parts[1]))
        raise ValueError("malformed rational %r" % (text,))

    @property
    def is_infinite(self):
        return self.den == 0

    def __eq__(self, other):
        if not isinstance(other, ExtendedRational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other):
        if not isinstance(other, ExtendedRational):
            return NotImplemented
        if self.den == 0 and other.den == 0:
            return self.num < other.num
        # Cross multiplication is order preserving because den >= 0.
        return self.num * other.den < other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __float__(self):
        if self.den == 0:
            return math.inf if self.num > 0 else -math.inf
        return self.num / self.den

    def __str__(self):
        return "%d/%d" % (self.num, self.den)

    def __repr__(self):
        return "ExtendedRational(%d, %d)" % (self.num, self.den)


MINUS_INFINITY = ExtendedRational(-1, 0)
INFINITY = ExtendedRational(1, 0)
ZERO = ExtendedRational(0, 1)
ONE = ExtendedRational(1, 1)


class IntMatrix2:
    """An immutable 2x2 integer matrix (a b; c d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix2 is immutable")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def key(self):
        """Canonical sort key (a, b, c, d)."""
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __mul__(self, other):
        if isinstance(other, IntMatrix2):
            return IntMatrix2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        return NotImplemented

    def __neg__(self):
        return IntMatrix2(-self.a, -self.b, -self.c, -self.d)

    def adjugate(self):
        """The adjugate (d -b; -c a); equals det * inverse."""
        return IntMatrix2(self.d, -self.b, -self.c, self.a)

    def inverse(self):
        """Exact inverse, defined for unimodular matrices only."""
        det = self.det
        if det == 1:
            return self.adjugate()
        if det == -1:
            return -self.adjugate()
        raise ValueError("matrix with determinant %d has no integer inverse" % det)

    def moebius(self, r):
        """Apply (a b; c d) to an extended rational: p/q -> (ap+bq)/(cp+dq).

        Poles land on sign(ap+bq)/0; requires a nonsingular matrix.
        """
        if self.det == 0:
            raise ValueError("Moebius action of a singular matrix is undefined")
        return ExtendedRational(
            self.a * r.num + self.b * r.den,
            self.c * r.num + self.d * r.den,
        )

    def __eq__(self, other):
        if not isinstance(other, IntMatrix2):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __str__(self):
        return "[[%d, %d], [%d, %d]]" % self.key

    def __repr__(self):
        return "IntMatrix2(%d, %d, %d, %d)" % self.key


I = IntMatrix2(1, 0, 0, 1)
T = IntMatrix2(1, 1, 0, 1)
S = IntMatrix2(0, -1, 1, 0)
T_PRIME = IntMatrix2(1, 0, 1, 1)


class FormalSum:
    """A finite integer-coefficient combination of IntMatrix2 values.

    Terms with equal matrices are merged, zero coefficients are dropped,
    and terms are kept sorted by the matrix key, so equal sums compare
    equal and serialize identically.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged = {}
        for coeff, mat in terms:
            if not isinstance(mat, IntMatrix2):
                raise TypeError("formal sum terms must be IntMatrix2")
            merged[mat] = merged.get(mat, 0) + coeff
        canonical = tuple(
            (coeff, mat)
            for mat, coeff in sorted(merged.items(), key=lambda kv: kv[0].key)
            if coeff != 0
        )
        object.__setattr__(self, "terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("FormalSum is immutable")

    @classmethod
    def from_matrices(cls, mats):
        """Sum of the given matrices, each with coefficient 1."""
        return cls((1, m) for m in mats)

    def coefficient(self, mat):
        for coeff, m in self.terms:
            if m == mat:
                return coeff
        return 0

    def support(self):
        """The distinct matrices with nonzero coefficient, in canonical order."""
        return tuple(m for _, m in self.terms)

    def stratum(self):
        """The common determinant of all matrices, or None if mixed/empty."""
        dets = {m.det for _, m in self.terms}
        if len(dets) == 1:
            return dets.pop()
        return None

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, FormalSum):
            return FormalSum(self.terms + other.terms)
        if isinstance(other, IntMatrix2):
            return FormalSum(self.terms + ((1, other),))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return FormalSum((-c, m) for c, m in self.terms)

    def __sub__(self, other):
        return self + (-other if isinstance(other, FormalSum) else FormalSum(((-1, other),)))

    def __mul__(self, other):
        if isinstance(other, FormalSum):
            return FormalSum(
                (c1 * c2, m1 * m2) for c1, m1 in self.terms for c2, m2 in other.terms
            )
        if isinstance(other, IntMatrix2):
            return FormalSum((c, m * other) for c, m in self.terms)
        if isinstance(other, int):
            return FormalSum((c * other, m) for c, m in self.terms)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, IntMatrix2):
            return FormalSum((c, other * m) for c, m in self.terms)
        if isinstance(other, int):
            return FormalSum((c * other, m) for c, m in self.terms)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def to_json_obj(self):
        """Canonical encoding: [{"coeff": c, "matrix": [[a,b],[c,d]]}, ...]."""
        return [{"coeff": c, "matrix": m.rows()} for c, m in self.terms]

    @classmethod
    def from_json_obj(cls, obj):
        return cls((t["coeff"], IntMatrix2.from_rows(t["matrix"])) for t in obj)

    def __repr__(self):
        return "FormalSum(%r)" % (list(self.terms),)
