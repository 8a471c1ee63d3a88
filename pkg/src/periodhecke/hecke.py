"""Hecke sums on upper-triangular matrices, the coset bookkeeping maps
sigma_g and phi_A, the scalar operator sum on period functions, and the
assembly of the vector-valued Hecke operator matrix for Gamma0(n).
"""

from __future__ import annotations

import math

from .exact_core import ExtendedRational, FormalSum, IntMatrix2, xgcd
from .farey import m_of_q

__all__ = [
    "divisors",
    "is_prime",
    "gen_xm",
    "in_xm",
    "t_of_p",
    "u_of_q",
    "xm_representative",
    "sigma",
    "HeckeCosetRecord",
    "phi",
    "h_tilde",
    "gen_sm",
    "in_sm",
    "scalar_hecke_sum",
    "HeckeOperatorMatrix",
    "vector_hecke",
]


def divisors(m):
    """Positive divisors of m, ascending."""
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def gen_xm(m):
    """All (a b; 0 d) with a*d = m, a,d > 0, 0 <= b < d, in canonical order.

    These are the upper-triangular representatives of the left cosets
    SL(2,Z) \\ Mat_m; there are sigma(m) = sum of divisors of them.
    """
    if m < 1:
        raise ValueError("determinant must be positive")
    mats = [IntMatrix2(m // d, b, 0, d) for d in divisors(m) for b in range(d)]
    mats.sort(key=lambda g: g.key)
    return mats


def in_xm(g, m=None):
    """True iff g = (a b; 0 d) with d > b >= 0 and (optionally) det == m."""
    if g.c != 0 or g.d <= g.b or g.b < 0 or g.a <= 0:
        return False
    return m is None or g.det == m


def t_of_p(p):
    """The Hecke sum over all of X_p, for p prime (used when p does not
    divide the level)."""
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    return FormalSum.from_matrices(gen_xm(p))


def u_of_q(q):
    """The Hecke sum over (1 b; 0 q), 0 <= b < q, for q prime (used when q
    divides the level); equals X_q minus the term (q 0; 0 1)."""
    if not is_prime(q):
        raise ValueError("%d is not prime" % q)
    return FormalSum.from_matrices(IntMatrix2(1, b, 0, q) for b in range(q))


def xm_representative(g):
    """The unique member of X_det(g) in the left coset SL(2,Z) * g.

    Column-style Hermite-type reduction: clear the lower-left entry with a
    determinant-1 row operation, then reduce the upper-right entry modulo
    the lower-right one.
    """
    m = g.det
    if m <= 0:
        raise ValueError("reduction to X_m needs positive determinant, got %d" % m)
    gg, x, y = xgcd(g.a, g.c)
    # (x y; -c/g a/g) has determinant 1 and sends the first column to (g, 0).
    a, b = gg, x * g.b + y * g.d
    d = m // gg
    return IntMatrix2(a, b % d, 0, d)


def sigma(g, a_mat):
    """The unique A' in X_m with A * g * A'^-1 in SL(2,Z), for unimodular g.

    Computed as the X_m normal form of A*g; the inverse map is sigma with
    g^-1 in place of g.
    """
    if g.det != 1:
        raise ValueError("sigma is defined for determinant-1 matrices")
    if not in_xm(a_mat):
        raise ValueError("%r is not an X_m representative" % (a_mat,))
    return xm_representative(a_mat * g)


class HeckeCosetRecord:
    """One step of coset bookkeeping: A * reps[j] lies in
    Gamma0(n) * reps[phi] * sigma with sigma in X_m."""

    __slots__ = ("a_mat", "j", "phi", "sigma")

    def __init__(self, a_mat, j, phi, sigma):
        object.__setattr__(self, "a_mat", a_mat)
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "sigma", sigma)

    def __setattr__(self, name, value):
        raise AttributeError("HeckeCosetRecord is immutable")

    def __repr__(self):
        return "HeckeCosetRecord(a_mat=%r, j=%d, phi=%d, sigma=%r)" % (
            self.a_mat,
            self.j,
            self.phi,
            self.sigma,
        )


def _exact_divide(g, m):
    for entry in g.key:
        if entry % m != 0:
            raise ArithmeticError("matrix %r is not divisible by %d" % (g, m))
    return IntMatrix2(g.a // m, g.b // m, g.c // m, g.d // m)


def phi(table, a_mat, j):
    """Locate the coset hit by A * reps[j]: returns the record with
    sigma = sigma_{reps[j]}(A) and phi the index of the coset of
    A * reps[j] * sigma^-1."""
    if not in_xm(a_mat):
        raise ValueError("%r is not an X_m representative" % (a_mat,))
    m = a_mat.det
    s = sigma(table.reps[j], a_mat)
    # A * reps[j] * s^-1 = A * reps[j] * adj(s) / m, unimodular by construction.
    unimodular = _exact_divide(a_mat * table.reps[j] * s.adjugate(), m)
    return HeckeCosetRecord(a_mat, j, table.index(unimodular), s)


def h_tilde(m):
    """The scalar Hecke operator on period functions as a formal sum:
    sum over d | m, 0 <= b < d of M(b/d) * (m/d b; 0 d)."""
    if m < 1:
        raise ValueError("Hecke index must be positive")
    total = FormalSum()
    for d in divisors(m):
        for b in range(d):
            total = total + m_of_q(ExtendedRational(b, d)) * IntMatrix2(m // d, b, 0, d)
    return total


def in_sm(g, m=None):
    """True iff g = (a b; c d) with a > c >= 0, d > b >= 0 and
    (optionally) det == m."""
    if not (g.a > g.c >= 0 and g.d > g.b >= 0):
        return False
    return m is None or g.det == m


def gen_sm(m):
    """All matrices (a b; c d) of determinant m with a > c >= 0 and
    d > b >= 0, in canonical order, by bounded enumeration.

    The constraints force a + d <= m + 1, which bounds the search.
    """
    if m < 1:
        raise ValueError("determinant must be positive")
    mats = []
    for a in range(1, m + 1):
        for d in range(1, m + 2 - a):
            bc = a * d - m
            if bc < 0:
                continue
            for c in range(a):
                if c == 0:
                    if bc == 0:
                        mats.extend(IntMatrix2(a, b, 0, d) for b in range(d))
                elif bc % c == 0 and bc // c < d:
                    mats.append(IntMatrix2(a, bc // c, c, d))
    mats.sort(key=lambda g: g.key)
    return mats


def scalar_hecke_sum(m):
    """The classical level-1 Hecke operator as the formal sum of X_m."""
    return FormalSum.from_matrices(gen_xm(m))


class HeckeOperatorMatrix:
    """The mu x mu matrix of formal sums representing one Hecke operator on
    vector-valued period functions for Gamma0(n); all stored matrices have
    determinant m and positive-dominant entries (a' > c' >= 0, d' > b' >= 0).
    """

    __slots__ = ("n", "m", "mu", "entries")

    def __init__(self, n, m, entries):
        entries = tuple(tuple(row) for row in entries)
        mu = len(entries)
        for row in entries:
            if len(row) != mu:
                raise ValueError("entries must form a square array")
            for cell in row:
                for _, mat in cell:
                    if not in_sm(mat, m):
                        raise ValueError(
                            "matrix %r violates the determinant-%d entry conditions" % (mat, m)
                        )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("HeckeOperatorMatrix is immutable")

    def entry(self, j, i):
        return self.entries[j][i]

    def row_sum(self, j):
        """The formal sum obtained by forgetting the column bookkeeping."""
        total = FormalSum()
        for cell in self.entries[j]:
            total = total + cell
        return total

    def to_json_obj(self):
        return {
            "n": self.n,
            "m": self.m,
            "mu": self.mu,
            "entries": [[cell.to_json_obj() for cell in row] for row in self.entries],
        }

    def __eq__(self, other):
        if not isinstance(other, HeckeOperatorMatrix):
            return NotImplemented
        return (self.n, self.m, self.entries) == (other.n, other.m, other.entries)

    def __repr__(self):
        return "HeckeOperatorMatrix(n=%d, m=%d, mu=%d)" % (self.n, self.m, self.mu)


def vector_hecke(table, m):
    """Assemble the m-th Hecke operator matrix for the given coset table,
    m prime.

    For each source index j and each A in the defining set (all of X_m, or
    X_m minus (m 0; 0 1) when m divides the level), the chain sum of
    sigma_{reps[j]}(A) applied to 0 is expanded, and each chain matrix B
    contributes B * sigma to the entry in the column selected by the
    permutation of the chain matrix's inverse acting on the phi-row.
    """
    if not is_prime(m):
        raise ValueError("vector Hecke operators are defined for prime m only")
    g = math.gcd(m, table.n)
    if g == 1:
        a_set = gen_xm(m)
    elif g == m:
        skip = IntMatrix2(m, 0, 0, 1)
        a_set = [a for a in gen_xm(m) if a != skip]
    else:
        raise ValueError("gcd(%d, %d) must be 1 or %d" % (m, table.n, m))
    mu = table.mu
    cells = [[{} for _ in range(mu)] for _ in range(mu)]
    for j in range(mu):
        for a_mat in a_set:
            record = phi(table, a_mat, j)
            s = record.sigma
            chain = m_of_q(ExtendedRational(s.b, s.d))
            target_rep = table.reps[record.phi]
            for coeff, link in chain:
                i = table.index(target_rep * link.inverse())
                product = link * s
                cell = cells[j][i]
                cell[product] = cell.get(product, 0) + coeff
    entries = [
        [FormalSum((c, mat) for mat, c in cell.items()) for cell in row] for row in cells
    ]
    return HeckeOperatorMatrix(table.n, m, entries)
