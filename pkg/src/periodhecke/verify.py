"""Instance-level invariant suite behind the CLI's verify-all command.

Each check returns (name, passed, detail); the set is parameterized by the
level n and the prime Hecke index m, mirroring the exact and numeric
properties the library is built around.
"""

from __future__ import annotations

import random

from .congruence import coset_table, gamma0_contains, rho
from .exact_core import FormalSum, I, IntMatrix2, S, T, T_PRIME, xgcd
from .farey import farey_sequence, left_neighbor, level
from .hecke import divisors, gen_sm, gen_xm, h_tilde, in_sm, phi, sigma, vector_hecke
from .numeric import constant_lift, hecke_image, three_term_residual, transfer_residual

__all__ = ["run_all_checks"]


def _random_word(rng, max_len=6):
    g = I
    for _ in range(rng.randint(0, max_len)):
        g = g * rng.choice([T, S, T_PRIME])
    return g


def _random_gamma0(rng, n):
    while True:
        c = n * rng.randint(-4, 4)
        d = rng.randint(-15, 15)
        g, x, y = xgcd(d, -c)
        if g != 1:
            continue
        t = rng.randint(-2, 2)
        return IntMatrix2(x + t * c, y + t * d, c, d)


def _sample_points(points):
    return [0.1 + 9.9 * k / max(1, points - 1) for k in range(points)]


def run_all_checks(n, m, s=1.0, points=25, tolerance=1e-9, seed=0):
    """Run the invariant suite for level n and prime index m; returns a
    list of (name, passed, detail) triples."""
    rng = random.Random(seed)
    table = coset_table(n)
    checks = []

    size = len(gen_xm(m))
    expected = sum(divisors(m))
    checks.append(("xm-size", size == expected, "|X_m| = %d, divisor sum = %d" % (size, expected)))

    ht = h_tilde(m)
    sm = FormalSum.from_matrices(gen_sm(m))
    checks.append(
        (
            "scalar-sum-equals-enumeration",
            ht == sm and all(coeff == 1 for coeff, _ in ht),
            "%d terms" % len(ht),
        )
    )

    ok = True
    for q in farey_sequence(min(10 + m, 30)):
        lev = level(q)
        if q.num == -1 and q.den == 0:
            continue
        neighbor = left_neighbor(q)
        scan = max(r for r in farey_sequence(lev) if r < q)
        if neighbor != scan or (lev > 0 and level(neighbor) >= lev):
            ok = False
            break
    checks.append(("farey-left-neighbor", ok, "scan oracle + level descent"))

    ok = True
    for _ in range(50):
        g, gp = _random_word(rng), _random_word(rng)
        if rho(table, gp) @ rho(table, g) != rho(table, gp * g):
            ok = False
            break
    checks.append(("rho-homomorphism", ok, "50 random word pairs"))

    ok = all(rho(table, _random_gamma0(rng, n)).image[0] == 0 for _ in range(20))
    checks.append(("rho-fixes-identity-coset", ok, "20 random subgroup elements"))

    xm = gen_xm(m)
    ok = True
    for _ in range(20):
        g = _random_word(rng, 4)
        image = sorted((sigma(g, a) for a in xm), key=lambda x: x.key)
        if image != xm or any(sigma(g.inverse(), sigma(g, a)) != a for a in xm):
            ok = False
            break
    checks.append(("sigma-bijection-and-inverse", ok, "20 random words on X_m"))

    ok = True
    for a_mat in xm:
        for j in range(table.mu):
            rec = phi(table, a_mat, j)
            numerator = a_mat * table.reps[j] * rec.sigma.adjugate()
            if any(entry % m for entry in numerator.key):
                ok = False
                break
            unimodular = IntMatrix2(*(entry // m for entry in numerator.key))
            if not gamma0_contains(n, unimodular * table.reps[rec.phi].inverse()):
                ok = False
                break
    checks.append(("coset-record-membership", ok, "all (A, j) pairs"))

    op = vector_hecke(table, m)
    ok = all(
        mat.det == m and in_sm(mat, m)
        for row in op.entries
        for cell in row
        for _, mat in cell
    )
    checks.append(("operator-entry-conditions", ok, "determinant and dominance"))

    if n == 1:
        checks.append(
            ("level-one-reduction", op.entries[0][0] == h_tilde(m), "single entry vs scalar sum")
        )

    psi = constant_lift(lambda z: 1.0 / z, table.mu)
    zetas = _sample_points(points)
    worst_in = max(
        abs(x) for zeta in zetas for x in three_term_residual(psi, table, s, zeta)
    )
    checks.append(
        ("three-term-input", worst_in < 1e-12, "max residual %.3e" % worst_in)
    )

    image = hecke_image(op, psi, s)
    worst_out = max(
        abs(x) for zeta in zetas for x in three_term_residual(image, table, s, zeta)
    )
    checks.append(
        (
            "three-term-preserved",
            worst_out < tolerance,
            "max residual %.3e (tolerance %.1e)" % (worst_out, tolerance),
        )
    )

    if n == 1:
        plus = max(abs(transfer_residual(psi, table, s, 1, z)[0]) for z in zetas)
        minus = abs(transfer_residual(psi, table, s, -1, 1.0)[0])
        checks.append(
            (
                "transfer-equation-signs",
                plus < 1e-12 and minus > 1e-2,
                "plus %.3e, minus at 1 is %.3e" % (plus, minus),
            )
        )

    return checks
