import random

import pytest

from periodhecke.congruence import (
    CosetTable,
    PermutationMatrix,
    coset_projection,
    coset_table,
    gamma0_contains,
    gamma0_index,
    rho,
)
from periodhecke.exact_core import I, IntMatrix2, S, T, T_PRIME, xgcd

GENERATORS = [T, S, T_PRIME]


def random_word(rng, max_len=6, alphabet=GENERATORS):
    g = I
    for _ in range(rng.randint(0, max_len)):
        g = g * rng.choice(alphabet)
    return g


def random_gamma0_element(rng, n):
    """A determinant-1 matrix with lower-left entry divisible by n."""
    while True:
        c = n * rng.randint(-5, 5)
        d = rng.randint(-20, 20)
        g, x, y = xgcd(d, -c)
        if g != 1:
            continue
        t = rng.randint(-3, 3)
        return IntMatrix2(x + t * c, y + t * d, c, d)


def brute_force_coset_count(n, max_words=20000):
    """Closure oracle: grow coset representatives by right multiplication,
    deciding coset equality straight from the definition g*h^-1 in Gamma0(n)."""
    reps = [I]
    frontier = [I]
    while frontier:
        current = frontier.pop()
        for gen in (T, T.inverse(), S, S.inverse()):
            candidate = current * gen
            if any(gamma0_contains(n, candidate * r.inverse()) for r in reps):
                continue
            reps.append(candidate)
            frontier.append(candidate)
            if len(reps) > max_words:
                raise RuntimeError("runaway closure")
    return len(reps)


def test_gamma0_contains_examples():
    assert gamma0_contains(2, T)
    assert not gamma0_contains(2, S)
    assert gamma0_contains(2, IntMatrix2(1, 0, 2, 1))
    with pytest.raises(ValueError):
        gamma0_contains(2, IntMatrix2(1, 0, 0, -1))


def test_index_formula_small_values():
    assert gamma0_index(1) == 1
    assert gamma0_index(2) == 3
    assert gamma0_index(6) == 12


@pytest.mark.parametrize("n", list(range(1, 21)))
def test_mu_matches_closure_oracle_and_formula(n):
    table = coset_table(n)
    assert table.mu == gamma0_index(n)
    assert table.mu == brute_force_coset_count(n)


def test_table_basic_shape():
    assert coset_table(1).mu == 1
    assert coset_table(1).reps == (I,)
    assert coset_table(2).mu == 3
    assert coset_table(6).mu == 12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 10, 12])
def test_reps_are_valid(n):
    table = coset_table(n)
    assert table.reps[0] == I
    for g in table.reps:
        assert g.det == 1
    # Pairwise inequivalent.
    for i, g in enumerate(table.reps):
        for j, h in enumerate(table.reps):
            same = gamma0_contains(n, g * h.inverse())
            assert same == (i == j)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 9, 12])
def test_index_locates_cosets(n):
    table = coset_table(n)
    rng = random.Random(n)
    assert table.index(I) == 0
    for _ in range(50):
        gamma = random_gamma0_element(rng, n)
        assert table.index(gamma) == 0
        g = random_word(rng)
        j = table.index(g)
        # Defining property: g * reps[j]^-1 in Gamma0(n), and only for j.
        assert gamma0_contains(n, g * table.reps[j].inverse())
        assert table.index(gamma * g) == j


def test_index_example_level_two():
    table = coset_table(2)
    j = table.index(S)
    rep = table.reps[j]
    assert (rep.c % 2, rep.d % 2) == (1, 0)


def test_table_rejects_bad_reps():
    with pytest.raises(ValueError):
        CosetTable(2, [I, T])  # same coset twice
    with pytest.raises(ValueError):
        CosetTable(2, [I, S])  # incomplete
    with pytest.raises(ValueError):
        CosetTable(2, [I, S, IntMatrix2(1, 0, 0, -1)])  # wrong determinant


def test_rho_identity_and_membership():
    for n in (1, 2, 3, 6):
        table = coset_table(n)
        assert rho(table, I) == PermutationMatrix.identity(table.mu)
        rng = random.Random(10 + n)
        for _ in range(50):
            gamma = random_gamma0_element(rng, n)
            assert rho(table, gamma).image[0] == 0


def test_rho_level_two_transposition():
    table = coset_table(2)
    perm = rho(table, S)
    fixed = [i for i in range(3) if perm.image[i] == i]
    moved = [i for i in range(3) if perm.image[i] != i]
    assert len(fixed) == 1 and len(moved) == 2
    assert perm @ perm == PermutationMatrix.identity(3)


@pytest.mark.parametrize("n", list(range(1, 13)))
def test_rho_is_a_homomorphism(n):
    table = coset_table(n)
    rng = random.Random(100 + n)
    for _ in range(200):
        g = random_word(rng)
        gp = random_word(rng)
        assert rho(table, gp) @ rho(table, g) == rho(table, gp * g)


def test_rho_entry_definition():
    # Entry (i, j) = 1 iff reps[i] * g * reps[j]^-1 is in Gamma0(n).
    n = 4
    table = coset_table(n)
    rng = random.Random(11)
    for _ in range(20):
        g = random_word(rng)
        perm = rho(table, g)
        matrix = perm.rows()
        for i, gi in enumerate(table.reps):
            for j, gj in enumerate(table.reps):
                member = gamma0_contains(n, gi * g * gj.inverse())
                assert matrix[i][j] == (1 if member else 0)


def test_rho_conjugation_covariance_under_rep_permutation():
    n = 6
    canonical = coset_table(n)
    rng = random.Random(12)
    order = list(range(canonical.mu))
    rng.shuffle(order)
    permuted = CosetTable(n, [canonical.reps[k] for k in order])
    relabel = PermutationMatrix(order)
    for _ in range(30):
        g = random_word(rng)
        lhs = rho(permuted, g)
        rhs = relabel @ rho(canonical, g) @ relabel.inverse()
        assert lhs == rhs


def test_rho_independent_of_representative_choice_within_cosets():
    n = 5
    canonical = coset_table(n)
    rng = random.Random(13)
    twisted = CosetTable(
        n, [random_gamma0_element(rng, n) * g for g in canonical.reps]
    )
    for _ in range(30):
        g = random_word(rng)
        assert rho(twisted, g) == rho(canonical, g)


def test_permutation_matrix_api():
    p = PermutationMatrix([1, 2, 0])
    assert p.apply(["a", "b", "c"]) == ["b", "c", "a"]
    assert p.inverse() @ p == PermutationMatrix.identity(3)
    assert p.rows() == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    with pytest.raises(ValueError):
        PermutationMatrix([0, 0, 1])


def test_rho_accepts_determinant_minus_one():
    # The det -1 word of the transfer equation permutes cosets through the
    # same bottom-row key.
    word = IntMatrix2(-1, 1, 1, 0)
    assert word.det == -1
    for n in (1, 2, 4):
        table = coset_table(n)
        perm = rho(table, word)
        assert sorted(perm.image) == list(range(table.mu))


def test_coset_projection_identity_and_fibers():
    assert coset_projection(1, 3) == list(range(coset_table(3).mu))
    chi = coset_projection(2, 2)
    mu4, mu2 = coset_table(4).mu, coset_table(2).mu
    assert len(chi) == mu4
    fiber_sizes = [chi.count(j) for j in range(mu2)]
    assert all(size == mu4 // mu2 for size in fiber_sizes)


def test_coset_projection_defining_inclusion():
    for m, n in [(2, 2), (2, 3), (3, 2), (4, 3)]:
        fine = coset_table(m * n)
        coarse = coset_table(n)
        chi = coset_projection(m, n)
        for i, beta in enumerate(fine.reps):
            assert gamma0_contains(n, beta * coarse.reps[chi[i]].inverse())


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_coset_projection_surjective(m, n):
    chi = coset_projection(m, n)
    assert set(chi) == set(range(coset_table(n).mu))


@pytest.mark.parametrize("n", [30, 60, 97])
def test_larger_levels_build_consistent_tables(n):
    table = coset_table(n)
    assert table.mu == gamma0_index(n)
    assert table.reps[0] == I
    for i, g in enumerate(table.reps):
        assert g.det == 1
        assert table.index(g) == i
