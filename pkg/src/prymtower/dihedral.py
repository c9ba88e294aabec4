"""Dihedral group combinatorics for branched covers of the line.

Models covers of the projective line whose deck group is the dihedral
group D_n = <s, t | s^n = t^2 = (st)^2 = 1>, branched over the 2g+2
Weierstrass points of a genus-g hyperelliptic base, with every local
monodromy a reflection t*s^k.  Provides validation of monodromy data,
coset permutation actions for the quotient curves, fixed-point counts
and Riemann-Hurwitz genera.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .errors import InvalidDatumError, SamplingBudgetError

# ---------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class DihedralElement:
    """The element tau^reflected * sigma^exponent of D_n.

    The exponent is kept reduced mod n by the constructors below.
    """

    exponent: int
    reflected: bool

    def __repr__(self) -> str:
        if not self.reflected:
            return "1" if self.exponent == 0 else f"s^{self.exponent}"
        return "t" if self.exponent == 0 else f"t*s^{self.exponent}"


IDENTITY = DihedralElement(0, False)


def sigma(j: int, n: int) -> DihedralElement:
    return DihedralElement(j % n, False)


def tau_sigma(k: int, n: int) -> DihedralElement:
    return DihedralElement(k % n, True)


TAU = DihedralElement(0, True)


def dn_mul(a: DihedralElement, b: DihedralElement, n: int) -> DihedralElement:
    """Group product in D_n, reduced form.

    tau^p s^i * tau^q s^j = tau^(p+q) s^(j + (-1)^q i).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    exp = (b.exponent - a.exponent) if b.reflected else (b.exponent + a.exponent)
    return DihedralElement(exp % n, a.reflected ^ b.reflected)


def dn_inv(a: DihedralElement, n: int) -> DihedralElement:
    if a.reflected:
        return a
    return DihedralElement((-a.exponent) % n, False)


def dn_pow(a: DihedralElement, k: int, n: int) -> DihedralElement:
    if a.reflected:
        return a if k % 2 else IDENTITY
    return DihedralElement((a.exponent * k) % n, False)


def all_elements(n: int) -> list[DihedralElement]:
    return [DihedralElement(e, bool(r)) for r in (0, 1) for e in range(n)]


def element_index(e: DihedralElement, n: int) -> int:
    """Position of e in all_elements(n); identity gets index 0."""
    return (n if e.reflected else 0) + e.exponent % n


@dataclass(frozen=True)
class ConjugacyClass:
    """Class descriptor: rotations by exponent orbit {e, -e}, reflections
    by exponent parity for even n (None for odd n, a single class)."""

    kind: str  # "rotation" | "reflection"
    exponents: frozenset[int] | None = None
    parity: int | None = None


def dn_class(e: DihedralElement, n: int) -> ConjugacyClass:
    if not e.reflected:
        return ConjugacyClass("rotation", exponents=frozenset({e.exponent, (-e.exponent) % n}))
    if n % 2:
        return ConjugacyClass("reflection")
    return ConjugacyClass("reflection", parity=e.exponent % 2)


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class SubgroupSpec:
    """Canonical subgroup tags of D_n.

    trivial; rot(d) = <s^d> for d | n; refl(k) = <t s^k>;
    klein(k) = <s^(n/2), t s^k> (n even); dih8(k) = <t s^k, s^(n/4)>
    (4 | n); full.
    """

    kind: str
    param: int = 0

    def label(self) -> str:
        if self.kind in ("trivial", "full"):
            return self.kind
        return f"{self.kind}({self.param})"

    def validate(self, n: int) -> None:
        if self.kind in ("trivial", "full"):
            return
        if self.kind == "rot":
            if self.param < 1 or n % self.param:
                raise ValueError(f"rot({self.param}) needs a divisor of n={n}")
        elif self.kind == "refl":
            pass
        elif self.kind == "klein":
            if n % 2:
                raise ValueError(f"klein subgroup needs even n, got n={n}")
        elif self.kind == "dih8":
            if n % 4:
                raise ValueError(f"dih8 subgroup needs 4 | n, got n={n}")
        else:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")

    def elements(self, n: int) -> list[DihedralElement]:
        self.validate(n)
        if self.kind == "trivial":
            return [IDENTITY]
        if self.kind == "full":
            return all_elements(n)
        if self.kind == "rot":
            d = self.param
            return [sigma(j, n) for j in range(0, n, d)]
        if self.kind == "refl":
            return [IDENTITY, tau_sigma(self.param, n)]
        if self.kind == "klein":
            k = self.param
            return [IDENTITY, sigma(n // 2, n), tau_sigma(k, n), tau_sigma(k + n // 2, n)]
        # dih8
        k = self.param
        rotations = [sigma(j, n) for j in range(0, n, n // 4)]
        reflections = [tau_sigma(k + j, n) for j in range(0, n, n // 4)]
        return rotations + reflections

    def order(self, n: int) -> int:
        self.validate(n)
        return {
            "trivial": 1,
            "rot": n // self.param if self.kind == "rot" else 0,
            "refl": 2,
            "klein": 4,
            "dih8": 8,
            "full": 2 * n,
        }[self.kind]


TRIVIAL = SubgroupSpec("trivial")
FULL = SubgroupSpec("full")


def rot(d: int) -> SubgroupSpec:
    return SubgroupSpec("rot", d)


def refl(k: int) -> SubgroupSpec:
    return SubgroupSpec("refl", k)


def klein(k: int) -> SubgroupSpec:
    return SubgroupSpec("klein", k)


def dih8(k: int) -> SubgroupSpec:
    return SubgroupSpec("dih8", k)


# ---------------------------------------------------------------------------
# monodromy data


def two_adic_valuation(n: int) -> tuple[int, int]:
    """(r, m) with n = 2^r * m and m odd."""
    r = 0
    m = n
    while m % 2 == 0:
        r += 1
        m //= 2
    return r, m


@dataclass(frozen=True)
class MonodromyDatum:
    """Cover data: degree n, base genus g, and one reflection exponent per
    branch point (local monodromy t*s^k_i at branch point i)."""

    n: int
    genus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be at least 2, got {self.n}")
        if self.genus < 2:
            raise ValueError(f"genus must be at least 2, got {self.genus}")
        object.__setattr__(self, "exponents", tuple(k % self.n for k in self.exponents))

    @property
    def branch_count(self) -> int:
        return 2 * self.genus + 2

    @property
    def r(self) -> int:
        return two_adic_valuation(self.n)[0]

    @property
    def m(self) -> int:
        return two_adic_valuation(self.n)[1]

    def local_monodromy(self, i: int) -> DihedralElement:
        """Reflection attached to branch point i (0-based)."""
        return tau_sigma(self.exponents[i], self.n)


VALID = "valid"
VIOLATION_LENGTH = "length"
VIOLATION_PRODUCT = "product"
VIOLATION_GENERATION = "generation"


def validate_datum(d: MonodromyDatum) -> str:
    """'valid', or the tag of the first failed condition.

    Checks, in order: exponent count 2g+2; trivial total product
    (sum of k_{2j} - k_{2j-1} divisible by n); the reflections generate
    D_n (gcd of n with all exponent differences is 1), so the cover is
    connected.
    """
    if len(d.exponents) != d.branch_count:
        return VIOLATION_LENGTH
    total = sum(d.exponents[2 * j + 1] - d.exponents[2 * j] for j in range(d.genus + 1))
    if total % d.n:
        return VIOLATION_PRODUCT
    g = d.n
    for k in d.exponents[1:]:
        g = gcd(g, k - d.exponents[0])
    if g != 1:
        return VIOLATION_GENERATION
    return VALID


def is_valid(d: MonodromyDatum) -> bool:
    return validate_datum(d) == VALID


def require_valid(d: MonodromyDatum) -> None:
    verdict = validate_datum(d)
    if verdict != VALID:
        raise InvalidDatumError(f"violation({verdict})")


def branch_parity_counts(d: MonodromyDatum) -> tuple[int, int]:
    """(s0, s1): branch points whose fiber meets a fixed point of t,
    respectively of t*s^m.

    For even n these are the exponent parity counts; for odd n all
    reflections are conjugate and the convention (2g+2, 0) is returned.
    """
    if d.n % 2:
        return d.branch_count, 0
    s1 = sum(1 for k in d.exponents if k % 2)
    return d.branch_count - s1, s1


# ---------------------------------------------------------------------------
# coset actions


@dataclass(frozen=True)
class PermutationAction:
    """One permutation of range(degree) per branch point, composing to
    the identity in branch order."""

    degree: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for p in self.perms:
            if sorted(p) != list(range(self.degree)):
                raise ValueError("not a permutation of the sheet set")
        current = list(range(self.degree))
        for p in self.perms:
            current = [p[x] for x in current]
        if current != list(range(self.degree)):
            raise ValueError("branch permutations do not compose to the identity")

    def is_transitive(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for p in self.perms:
                y = p[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.degree

    def cycles(self, i: int) -> list[list[int]]:
        p = self.perms[i]
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = p[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = p[x]
            out.append(cyc)
        return out

    def cycle_count(self, i: int) -> int:
        return len(self.cycles(i))


def _coset_table(n: int, subgroup: SubgroupSpec) -> tuple[list[frozenset[int]], dict[int, int]]:
    """Right cosets S\\D_n as frozensets of element indices, plus a map
    element index -> coset index."""
    subgroup_elements = subgroup.elements(n)
    coset_of: dict[int, int] = {}
    cosets: list[frozenset[int]] = []
    for g in all_elements(n):
        gi = element_index(g, n)
        if gi in coset_of:
            continue
        coset = frozenset(element_index(dn_mul(s_el, g, n), n) for s_el in subgroup_elements)
        assert gi in coset
        idx = len(cosets)
        cosets.append(coset)
        for x in coset:
            coset_of[x] = idx
    return cosets, coset_of


def coset_action(d: MonodromyDatum, subgroup: SubgroupSpec) -> PermutationAction:
    """Action of the branch reflections on the right cosets S\\D_n.

    Generators act by right multiplication; the sheets of the quotient
    cover are the cosets.  Degree is 2n/|S|.
    """
    require_valid(d)
    subgroup.validate(d.n)
    cosets, coset_of = _coset_table(d.n, subgroup)
    elements = all_elements(d.n)
    perms = []
    for i in range(d.branch_count):
        h = d.local_monodromy(i)
        images = [0] * len(cosets)
        for ci, coset in enumerate(cosets):
            rep = elements[min(coset)]
            images[ci] = coset_of[element_index(dn_mul(rep, h, d.n), d.n)]
        perms.append(tuple(images))
    return PermutationAction(len(cosets), tuple(perms))


def fixed_point_count(d: MonodromyDatum, subgroup: SubgroupSpec, e: DihedralElement) -> int:
    """Cosets of S\\D_n fixed by right translation by e."""
    subgroup.validate(d.n)
    cosets, coset_of = _coset_table(d.n, subgroup)
    elements = all_elements(d.n)
    count = 0
    for ci, coset in enumerate(cosets):
        rep = elements[min(coset)]
        if coset_of[element_index(dn_mul(rep, e, d.n), d.n)] == ci:
            count += 1
    return count


def deck_fixed_point_count(d: MonodromyDatum, e: DihedralElement) -> int:
    """Fixed points of the deck transformation e on the full cover.

    Points over branch point i are the cycles of right multiplication by
    the local reflection on D_n; e acts by left multiplication.  Away
    from the branch points deck transformations are free, so this is the
    total fixed-point count on the curve.
    """
    require_valid(d)
    if e == IDENTITY:
        raise ValueError("identity is not a deck transformation with isolated fixed points")
    n = d.n
    total = 0
    for i in range(d.branch_count):
        h = d.local_monodromy(i)
        # cycles are the left cosets g<h>; e fixes g<h> iff g^-1 e g = h
        for g in all_elements(n):
            if dn_mul(dn_mul(dn_inv(g, n), e, n), g, n) == h:
                total += 1
    # each coset {g, g*h} is counted once per member
    assert total % 2 == 0
    return total // 2


def quotient_genus(d: MonodromyDatum, subgroup: SubgroupSpec) -> int:
    """Genus of the quotient curve attached to S, by Riemann-Hurwitz.

    2 - 2g_Y = N(2 - B) + sum of cycle counts, N = 2n/|S|, B = 2g+2.
    """
    action = coset_action(d, subgroup)
    if not action.is_transitive():
        raise InvalidDatumError("disconnected quotient: coset action is not transitive")
    total_cycles = sum(action.cycle_count(i) for i in range(d.branch_count))
    euler = action.degree * (2 - d.branch_count) + total_cycles
    assert euler % 2 == 0
    genus = (2 - euler) // 2
    assert genus >= 0
    return genus


# ---------------------------------------------------------------------------
# sampling


def sample_datum_stats(
    n: int, genus: int, seed: int, max_tries: int = 100_000
) -> tuple[MonodromyDatum, int]:
    """Seeded rejection sampling of a valid datum; returns (datum, tries)."""
    rng = random.Random(seed)
    count = 2 * genus + 2
    for attempt in range(1, max_tries + 1):
        exponents = tuple(rng.randrange(n) for _ in range(count))
        d = MonodromyDatum(n, genus, exponents)
        if is_valid(d):
            return d, attempt
    raise SamplingBudgetError(f"no valid datum found in {max_tries} tries for n={n}, g={genus}")


def sample_datum(n: int, genus: int, seed: int, max_tries: int = 100_000) -> MonodromyDatum:
    return sample_datum_stats(n, genus, seed, max_tries)[0]
