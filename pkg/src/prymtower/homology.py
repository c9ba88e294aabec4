"""Integral homology of the full dihedral cover with its deck action.

The cover of the punctured line is encoded by the regular coset action;
a breadth-first Schreier transversal turns its fundamental group into a
free group on explicit generators, abelianized rewriting produces one
relation per puncture, and the Smith normal form of the relation matrix
yields H_1 of the closed curve as a free lattice of rank 2*g_X together
with exact integer matrices for the deck transformations.

Conventions: sheets of the regular cover are the 2n group elements,
branch generators act by right multiplication, deck transformations by
left multiplication.  Words are tuples of nonzero ints, letter +/-i for
the i-th branch generator (1-based, i < 2g+2; the last branch loop is
the inverse product of the others and is never a letter).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import lattice
from .dihedral import (
    IDENTITY,
    TRIVIAL,
    DihedralElement,
    MonodromyDatum,
    PermutationAction,
    all_elements,
    branch_parity_counts,
    coset_action,
    deck_fixed_point_count,
    dn_mul,
    element_index,
    require_valid,
    sigma,
    tau_sigma,
)
from .errors import InternalInvariantError

Word = tuple[int, ...]


def inverse_word(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class SchreierTransversal:
    """Breadth-first coset representatives for a transitive action.

    ``words[s]`` is a reduced positive word carrying the base sheet to
    sheet s; the base word is empty and the set is prefix-closed.
    ``tree_pairs`` are the (sheet, generator) pairs whose Schreier
    generator is trivial; all remaining pairs are indexed consecutively
    by ``gen_index``.
    """

    action: PermutationAction
    words: tuple[Word, ...]
    tree_pairs: frozenset[tuple[int, int]]
    gen_index: dict[tuple[int, int], int] = field(hash=False, compare=False)

    @property
    def generator_count(self) -> int:
        return len(self.gen_index)


def schreier_transversal(action: PermutationAction) -> SchreierTransversal:
    """BFS transversal over the positive letters 1..B-1."""
    if not action.is_transitive():
        raise InternalInvariantError("transversal requires a transitive action")
    letters = len(action.perms) - 1
    words: list[Word | None] = [None] * action.degree
    words[0] = ()
    tree: set[tuple[int, int]] = set()
    queue = [0]
    while queue:
        sheet = queue.pop(0)
        for i in range(1, letters + 1):
            target = action.perms[i - 1][sheet]
            if words[target] is None:
                words[target] = words[sheet] + (i,)
                tree.add((sheet, i))
                queue.append(target)
    gen_index: dict[tuple[int, int], int] = {}
    for sheet in range(action.degree):
        for i in range(1, letters + 1):
            if (sheet, i) not in tree:
                gen_index[(sheet, i)] = len(gen_index)
    return SchreierTransversal(action, tuple(words), frozenset(tree), gen_index)


def track_word(action: PermutationAction, word: Word, start: int) -> int:
    """Sheet reached by lifting ``word`` from ``start``."""
    sheet = start
    for letter in word:
        perm = action.perms[abs(letter) - 1]
        if letter > 0:
            sheet = perm[sheet]
        else:
            sheet = perm.index(sheet)
    return sheet


def rewrite_word(
    word: Word, transversal: SchreierTransversal, start: int = 0
) -> list[int]:
    """Abelianized Schreier coordinates of a subgroup word.

    Walks the word from ``start`` (the base sheet by default), emitting
    +/- the Schreier generator of each traversed edge; tree edges emit
    nothing.  The walk must return to its starting sheet.
    """
    action = transversal.action
    vec = [0] * transversal.generator_count
    sheet = start
    for letter in word:
        i = abs(letter)
        perm = action.perms[i - 1]
        if letter > 0:
            idx = transversal.gen_index.get((sheet, i))
            if idx is not None:
                vec[idx] += 1
            sheet = perm[sheet]
        else:
            sheet = perm.index(sheet)
            idx = transversal.gen_index.get((sheet, i))
            if idx is not None:
                vec[idx] -= 1
    if sheet != start:
        raise ValueError("word does not stabilize its starting sheet")
    return vec


@dataclass
class EquivariantLattice:
    """H_1 of the closed cover with the exact deck action.

    ``section`` maps quotient coordinates back to Schreier coordinates
    and ``projection_cols`` are the quotient columns of the Smith column
    transform; together they realize the torsion-free quotient by the
    puncture relations.  ``m_sigma`` and ``m_tau`` generate the action.
    """

    datum: MonodromyDatum
    rank: int
    action: PermutationAction
    transversal: SchreierTransversal
    section: lattice.Matrix  # rank x G
    projection_cols: lattice.Matrix  # G x rank
    m_sigma: lattice.Matrix
    m_tau: lattice.Matrix
    _sigma_powers: list[lattice.Matrix] = field(default_factory=list, repr=False)
    _deck_cache: dict[tuple[int, bool], lattice.Matrix] = field(default_factory=dict, repr=False)

    @property
    def genus(self) -> int:
        return self.rank // 2

    def project(self, schreier_vec: list[int]) -> list[int]:
        out = [0] * self.rank
        for i, x in enumerate(schreier_vec):
            if x:
                row = self.projection_cols[i]
                for j in range(self.rank):
                    out[j] += x * row[j]
        return out

    def sigma_power(self, j: int) -> lattice.Matrix:
        n = self.datum.n
        if not self._sigma_powers:
            powers = [lattice.identity_matrix(self.rank)]
            for _ in range(n - 1):
                powers.append(lattice.matrix_mul(powers[-1], self.m_sigma))
            self._sigma_powers.extend(powers)
        return self._sigma_powers[j % n]

    def deck(self, e: DihedralElement) -> lattice.Matrix:
        """Matrix of the deck transformation e, via the generators."""
        key = (e.exponent % self.datum.n, e.reflected)
        cached = self._deck_cache.get(key)
        if cached is None:
            cached = self.sigma_power(key[0])
            if key[1]:
                cached = lattice.matrix_mul(self.m_tau, cached)
            self._deck_cache[key] = cached
        return cached

    def norm_rotation(self) -> lattice.Matrix:
        """Sum of all rotation deck matrices (the norm of the cyclic cover)."""
        total = self.sigma_power(0)
        for j in range(1, self.datum.n):
            total = lattice.matrix_add(total, self.sigma_power(j))
        return total


def _branch_word(index: int, branch_count: int) -> Word:
    """The i-th branch loop as a word; the last one is the inverse
    product of the previous letters."""
    if index < branch_count - 1:
        return (index + 1,)
    return tuple(-(i + 1) for i in reversed(range(branch_count - 1)))


def puncture_relations(
    datum: MonodromyDatum, action: PermutationAction, transversal: SchreierTransversal
) -> list[list[int]]:
    """One abelianized relation per puncture of the cover.

    The puncture over branch point i entered through sheet s is killed
    by t_s x_i^len t_s^{-1}, len the cycle length of s under x_i.
    """
    relations = []
    for i in range(datum.branch_count):
        word = _branch_word(i, datum.branch_count)
        for cycle in action.cycles(i):
            rep = min(cycle)
            loop = transversal.words[rep] + word * len(cycle) + inverse_word(transversal.words[rep])
            relations.append(rewrite_word(loop, transversal))
    return relations


def generator_word(transversal: SchreierTransversal, sheet: int, i: int) -> Word:
    """Defining word t_s x_i t_{s.x_i}^{-1} of the Schreier generator (s, i)."""
    target = transversal.action.perms[i - 1][sheet]
    return transversal.words[sheet] + (i,) + inverse_word(transversal.words[target])


def deck_matrix(
    lat: EquivariantLattice, e: DihedralElement, lift_word: Word | None = None
) -> lattice.Matrix:
    """Action of the deck transformation e on the homology lattice.

    The image of a class [w] is [u w u^-1] for any word u whose
    permutation carries the base sheet to the sheet labelled e; by
    default u is the transversal word of that sheet.  The result does
    not depend on the choice (conjugation dies in homology).  Returned
    in column convention: column j is the image of basis vector j.
    """
    datum = lat.datum
    transversal = lat.transversal
    if lift_word is None:
        lift_word = transversal.words[element_index(e, datum.n)]
    elif track_word(lat.action, lift_word, 0) != element_index(e, datum.n):
        raise ValueError("lift word does not reach the sheet of e")
    inv_lift = inverse_word(lift_word)
    # projected image of each Schreier generator under conjugation by the lift
    pairs = sorted(transversal.gen_index, key=transversal.gen_index.__getitem__)
    images = [
        lat.project(rewrite_word(lift_word + generator_word(transversal, s, i) + inv_lift, transversal))
        for (s, i) in pairs
    ]
    rows = []
    for srow in lat.section:
        total = [0] * lat.rank
        for gi, coeff in enumerate(srow):
            if coeff:
                img = images[gi]
                for j in range(lat.rank):
                    total[j] += coeff * img[j]
        rows.append(total)
    return lattice.transpose(rows)


def homology_lattice(datum: MonodromyDatum, check: bool = True) -> EquivariantLattice:
    """Build H_1 of the closed cover with its verified deck action.

    Raises InternalInvariantError if the relation quotient has torsion,
    the rank disagrees with Riemann-Hurwitz, or any deck-action
    invariant (orders, dihedral relation, traces) fails.
    """
    require_valid(datum)
    action = coset_action(datum, TRIVIAL)
    transversal = schreier_transversal(action)
    g_count = transversal.generator_count
    expected_generators = action.degree * (datum.branch_count - 2) + 1
    if g_count != expected_generators:
        raise InternalInvariantError(
            f"Schreier generator count {g_count} != {expected_generators}"
        )
    relations = puncture_relations(datum, action, transversal)
    sf = lattice.snf(relations)
    if any(d != 1 for d in sf.divisors):
        raise InternalInvariantError(f"torsion in the relation quotient: {sf.divisors}")
    k = len(sf.divisors)
    rank = g_count - k
    genus_x = datum.n * (datum.genus - 1) + 1
    if rank != 2 * genus_x:
        raise InternalInvariantError(f"homology rank {rank} != {2 * genus_x}")
    section = [list(sf.vinv[k + j]) for j in range(rank)]
    projection_cols = [[sf.v[i][k + j] for j in range(rank)] for i in range(g_count)]
    lat = EquivariantLattice(
        datum=datum,
        rank=rank,
        action=action,
        transversal=transversal,
        section=section,
        projection_cols=projection_cols,
        m_sigma=[],
        m_tau=[],
    )
    lat.m_sigma = deck_matrix(lat, sigma(1, datum.n))
    lat.m_tau = deck_matrix(lat, tau_sigma(0, datum.n))
    if check:
        verify_lattice_invariants(lat)
    return lat


def verify_lattice_invariants(lat: EquivariantLattice) -> None:
    """Order, dihedral relation, and Lefschetz trace checks.

    The rotation traces (2 for every nontrivial power) pin down the
    characteristic polynomial of the rotation matrix to
    (x^n - 1)^(2(g-1)) (x - 1)^2, since the matrix has finite order and
    is therefore determined up to conjugacy by its power traces.
    """
    datum = lat.datum
    n = datum.n
    identity = lattice.identity_matrix(lat.rank)
    if not lattice.matrix_eq(lat.sigma_power(0), identity):
        raise InternalInvariantError("sigma^0 is not the identity")
    if not lattice.matrix_eq(
        lattice.matrix_mul(lat.sigma_power(n - 1), lat.m_sigma), identity
    ):
        raise InternalInvariantError("rotation matrix does not have order dividing n")
    for j in range(1, n):
        if lattice.matrix_eq(lat.sigma_power(j), identity):
            raise InternalInvariantError(f"rotation matrix has order {j} < n")
    if not lattice.matrix_eq(lattice.matrix_mul(lat.m_tau, lat.m_tau), identity):
        raise InternalInvariantError("reflection matrix is not an involution")
    conj = lattice.matrix_mul(lattice.matrix_mul(lat.m_tau, lat.m_sigma), lat.m_tau)
    if not lattice.matrix_eq(conj, lat.sigma_power(n - 1)):
        raise InternalInvariantError("dihedral relation t s t = s^-1 fails")
    # Lefschetz: trace = 2 - #Fix for every nontrivial deck transformation
    for j in range(1, n):
        if lattice.matrix_trace(lat.sigma_power(j)) != 2:
            raise InternalInvariantError(f"trace of rotation power {j} is not 2")
    for k in range(n):
        expected = 2 - deck_fixed_point_count(datum, tau_sigma(k, n))
        actual = _product_trace(lat.m_tau, lat.sigma_power(k))
        if actual != expected:
            raise InternalInvariantError(
                f"reflection trace mismatch at exponent {k}: {actual} != {expected}"
            )


def _product_trace(a: lattice.Matrix, b: lattice.Matrix) -> int:
    return sum(a[i][j] * b[j][i] for i in range(len(a)) for j in range(len(a)))


def charpoly_statement(lat: EquivariantLattice) -> tuple[list[int], list[int]]:
    """(actual, expected) coefficients of the rotation matrix's
    characteristic polynomial; expected is (x^n-1)^(2(g-1)) (x-1)^2."""
    actual = lattice.char_poly(lat.m_sigma)
    n, g = lat.datum.n, lat.datum.genus
    x_n_minus_1 = [1] + [0] * (n - 1) + [-1]
    expected = lattice.poly_mul(
        lattice.poly_pow(x_n_minus_1, 2 * (g - 1)), lattice.poly_mul([1, -1], [1, -1])
    )
    return actual, expected


def lefschetz_expectations(datum: MonodromyDatum) -> dict[str, int]:
    """Expected fixed-point counts per conjugacy class of involutions."""
    s0, s1 = branch_parity_counts(datum)
    if datum.n % 2:
        return {"reflection": 2 * datum.genus + 2}
    return {"reflection_even": 2 * s0, "reflection_odd": 2 * s1, "central_rotation": 0}
