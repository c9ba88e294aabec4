"""Abelian subvarieties of the cover Jacobian and exact isogeny degrees.

Every subvariety in play is the identity component of the common kernel
of integer operators built from the deck action, so it is faithfully
represented by a saturated sublattice of H_1.  Degrees of addition maps
and operator-induced isogenies are then finite lattice indices, computed
exactly and compared against closed forms claim by claim.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formulas, lattice
from .dihedral import (
    MonodromyDatum,
    branch_parity_counts,
    deck_fixed_point_count,
    dih8,
    klein,
    quotient_genus,
    refl,
    require_valid,
    rot,
    sigma,
    tau_sigma,
    fixed_point_count,
    TRIVIAL,
    TAU,
)
from .errors import (
    DependentFactorsError,
    DimensionMismatchError,
    InapplicableClaimError,
    InternalInvariantError,
    SubspaceMismatchError,
)
from .homology import EquivariantLattice, homology_lattice

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

CLAIM_IDS = (
    "COMBINATORICS",
    "GENUS",
    "THM21a",
    "THM21b",
    "LEM26",
    "PROP27",
    "PROP32",
    "PROP42",
    "COR43",
    "COR44",
    "THM41",
)

ASSUMPTION_ETALE_KERNEL = (
    "pullback kernel order along the degree-n unramified cyclic quotient is taken to be n"
)
ASSUMPTION_RAMIFIED_KERNEL = (
    "pullbacks along ramified quotient maps are taken to be injective (kernel order 1); "
    "this requires s0, s1 >= 2"
)


@dataclass(frozen=True)
class AbelianSubvariety:
    """Identity component of the common kernel of integer operators,
    stored as the saturated lattice it spans in H_1."""

    name: str
    lattice: lattice.Sublattice

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def dim(self) -> int:
        return self.lattice.rank // 2

    def __repr__(self) -> str:
        return f"AbelianSubvariety({self.name!r}, dim={self.dim})"


@dataclass
class ClaimRecord:
    """Outcome of one verified comparison.

    ``formula`` and ``oracle`` are exact integers (None for skipped
    records); the verdict is pass iff they are equal and every attached
    side condition held.  ``witness`` carries diagnostics: lattice bases
    on mismatch, consistency-chain values, or documented findings.
    """

    claim: str
    anchor: str
    datum: MonodromyDatum
    formula: int | None
    oracle: int | None
    verdict: str
    witness: dict | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


def subvariety(
    lat: EquivariantLattice, operators: list[lattice.Matrix], name: str = ""
) -> AbelianSubvariety:
    """Cut a subvariety out of the full torus by integer operators.

    The lattice is the saturated common kernel; with no operators the
    result is the full torus.
    """
    if not operators:
        return AbelianSubvariety(name or "full", lattice.full_lattice(lat.rank))
    stacked: list[list[int]] = []
    for op in operators:
        rows, cols = lattice.matrix_shape(op)
        if cols != lat.rank or rows != lat.rank:
            raise DimensionMismatchError("operators must be square of the ambient rank")
        stacked.extend(op)
    ker = lattice.kernel_lattice(stacked, ambient=lat.rank)
    if ker.rank % 2:
        raise InternalInvariantError(f"odd-rank kernel for subvariety {name!r}")
    return AbelianSubvariety(name, ker)


def addition_degree(
    factors: list[tuple[AbelianSubvariety, lattice.Matrix | None]],
    target: AbelianSubvariety,
) -> int:
    """Degree of (x_1, ..., x_k) -> sum of twist_i(x_i) onto the target.

    The twisted factor lattices must be independent and span the target
    rationally; the degree is then the index of their sum in the target
    lattice.
    """
    twisted = []
    for sub, twist in factors:
        twisted.append(sub.lattice if twist is None else lattice.apply_matrix(twist, sub.lattice))
    total_rank = sum(t.rank for t in twisted)
    if total_rank != target.rank:
        raise DimensionMismatchError(
            f"factor ranks sum to {total_rank}, target has rank {target.rank}"
        )
    total = twisted[0]
    for t in twisted[1:]:
        total = lattice.lattice_sum(total, t)
    if total.rank != total_rank:
        raise DependentFactorsError("factor subspaces are not independent")
    if not lattice.is_sublattice(total, target.lattice):
        raise SubspaceMismatchError("factor sum does not lie in the target lattice")
    return lattice.lattice_index(total, target.lattice)


def operator_isogeny_degree(
    op: lattice.Matrix, src: AbelianSubvariety, dst: AbelianSubvariety
) -> int:
    """Degree of the isogeny induced by an integer operator src -> dst."""
    image = lattice.apply_matrix(op, src.lattice)
    if image.rank != src.rank:
        raise SubspaceMismatchError("operator has a kernel on the source subvariety")
    if lattice.saturate(image) != dst.lattice:
        raise SubspaceMismatchError("operator image does not span the target subvariety")
    return lattice.lattice_index(image, dst.lattice)


class PrymOracle:
    """Per-datum workspace: homology lattice, canonical subvarieties and
    memoized oracle degrees."""

    def __init__(self, datum: MonodromyDatum, lat: EquivariantLattice | None = None):
        require_valid(datum)
        self.datum = datum
        self.lattice = lat if lat is not None else homology_lattice(datum)
        self._subs: dict[str, AbelianSubvariety] = {}
        self._degrees: dict[str, int] = {}

    # -- operator building blocks ------------------------------------

    def _identity(self) -> lattice.Matrix:
        return lattice.identity_matrix(self.lattice.rank)

    def _fixing(self, e) -> lattice.Matrix:
        return lattice.matrix_sub(self.lattice.deck(e), self._identity())

    def _anti(self, e) -> lattice.Matrix:
        return lattice.matrix_add(self._identity(), self.lattice.deck(e))

    # -- canonical subvarieties ---------------------------------------

    def sub(self, key: str) -> AbelianSubvariety:
        if key in self._subs:
            return self._subs[key]
        n = self.datum.n
        m = self.datum.m
        half = sigma(n // 2, n) if n % 2 == 0 else None
        builders = {
            "full": lambda: subvariety(self.lattice, [], "full"),
            "base_pullback": lambda: subvariety(
                self.lattice, [self._fixing(sigma(1, n))], "base_pullback"
            ),
            "norm_kernel": lambda: subvariety(
                self.lattice, [self.lattice.norm_rotation()], "norm_kernel"
            ),
            "fixed_refl_0": lambda: subvariety(
                self.lattice, [self._fixing(TAU)], "fixed_refl_0"
            ),
            "fixed_refl_m": lambda: subvariety(
                self.lattice, [self._fixing(tau_sigma(m, n))], "fixed_refl_m"
            ),
            "fixed_klein_0": lambda: subvariety(
                self.lattice, [self._fixing(TAU), self._fixing(half)], "fixed_klein_0"
            ),
            "fixed_klein_m": lambda: subvariety(
                self.lattice,
                [self._fixing(tau_sigma(m, n)), self._fixing(half)],
                "fixed_klein_m",
            ),
            "fixed_half": lambda: subvariety(
                self.lattice, [self._fixing(half)], "fixed_half"
            ),
            "anti_half": lambda: subvariety(
                self.lattice, [self._anti(half)], "anti_half"
            ),
            "prym_left": lambda: subvariety(
                self.lattice,
                [self._fixing(tau_sigma(n // 2, n)), self._anti(TAU)],
                "prym_left",
            ),
            "prym_right": lambda: subvariety(
                self.lattice,
                [self._fixing(tau_sigma(m, n)), self._anti(half)],
                "prym_right",
            ),
            "prym_b_tau": lambda: subvariety(
                self.lattice, [self._fixing(TAU), self._anti(half)], "prym_b_tau"
            ),
            "half_norm_kernel": lambda: subvariety(
                self.lattice,
                [self._fixing(half), self.lattice.norm_rotation()],
                "half_norm_kernel",
            ),
            # the odd-class representative adjacent to t: together with t it
            # generates the whole dihedral group, so the pair of fixed
            # subvarieties is independent for every n (t s^m fails this
            # whenever m > 1); for m = 1 the two coincide
            "fixed_refl_adjacent": lambda: subvariety(
                self.lattice, [self._fixing(tau_sigma(1, n))], "fixed_refl_adjacent"
            ),
        }
        if key not in builders:
            raise KeyError(key)
        sub = builders[key]()
        self._subs[key] = sub
        return sub

    # -- memoized oracle degrees --------------------------------------

    def degree(self, key: str) -> int:
        if key in self._degrees:
            return self._degrees[key]
        value = self._compute_degree(key)
        self._degrees[key] = value
        return value

    def _compute_degree(self, key: str) -> int:
        n = self.datum.n
        m = self.datum.m
        if key == "twisted_addition":  # odd n
            twist = self.lattice.deck(sigma(1, n))
            return addition_degree(
                [(self.sub("fixed_refl_0"), None), (self.sub("fixed_refl_0"), twist)],
                self.sub("norm_kernel"),
            )
        if key == "reflection_addition":
            # the main addition map for even n, with the generating
            # representative of the second reflection class
            return addition_degree(
                [(self.sub("fixed_refl_0"), None), (self.sub("fixed_refl_adjacent"), None)],
                self.sub("norm_kernel"),
            )
        if key == "reflection_addition_literal":  # second factor fixed by t s^m
            return addition_degree(
                [(self.sub("fixed_refl_0"), None), (self.sub("fixed_refl_m"), None)],
                self.sub("norm_kernel"),
            )
        if key == "base_gluing":  # f*JH x P(f) -> JX
            return addition_degree(
                [(self.sub("base_pullback"), None), (self.sub("norm_kernel"), None)],
                self.sub("full"),
            )
        if key == "klein_gluing":  # P(b_tau) x A -> P(f_1)
            return addition_degree(
                [(self.sub("prym_b_tau"), None), (self.sub("prym_left"), None)],
                self.sub("anti_half"),
            )
        if key == "deg_h":  # (1 + t s^m): A -> B
            op = self._anti(tau_sigma(m, n))
            return operator_isogeny_degree(op, self.sub("prym_left"), self.sub("prym_right"))
        if key == "five_term_left":  # with the left prym factor A
            return addition_degree(
                [
                    (self.sub("base_pullback"), None),
                    (self.sub("fixed_klein_0"), None),
                    (self.sub("fixed_klein_m"), None),
                    (self.sub("prym_b_tau"), None),
                    (self.sub("prym_left"), None),
                ],
                self.sub("full"),
            )
        if key == "five_term_right":  # with the right prym factor B
            return addition_degree(
                [
                    (self.sub("base_pullback"), None),
                    (self.sub("fixed_klein_0"), None),
                    (self.sub("fixed_klein_m"), None),
                    (self.sub("prym_b_tau"), None),
                    (self.sub("prym_right"), None),
                ],
                self.sub("full"),
            )
        if key == "five_term_twisted":
            # left five-term with the A factor pushed through (1 + t s^m);
            # this literal composition forces the identity
            # deg = deg(five_term_right) * deg(h)
            twist = self._anti(tau_sigma(self.datum.m, n))
            return addition_degree(
                [
                    (self.sub("base_pullback"), None),
                    (self.sub("fixed_klein_0"), None),
                    (self.sub("fixed_klein_m"), None),
                    (self.sub("prym_b_tau"), None),
                    (self.sub("prym_left"), twist),
                ],
                self.sub("full"),
            )
        if key == "four_term":  # into the norm kernel
            return addition_degree(
                [
                    (self.sub("fixed_klein_0"), None),
                    (self.sub("fixed_klein_m"), None),
                    (self.sub("prym_b_tau"), None),
                    (self.sub("prym_right"), None),
                ],
                self.sub("norm_kernel"),
            )
        if key == "half_tower":  # two Klein fixed parts onto the half-tower prym
            return addition_degree(
                [(self.sub("fixed_klein_0"), None), (self.sub("fixed_klein_m"), None)],
                self.sub("half_norm_kernel"),
            )
        if key == "half_tower_full":  # base pullback joins in, onto the fixed half
            return addition_degree(
                [
                    (self.sub("base_pullback"), None),
                    (self.sub("fixed_klein_0"), None),
                    (self.sub("fixed_klein_m"), None),
                ],
                self.sub("fixed_half"),
            )
        if key == "double_cover_gluing":  # fixed half x anti half -> JX
            return addition_degree(
                [(self.sub("fixed_half"), None), (self.sub("anti_half"), None)],
                self.sub("full"),
            )
        if key == "left_reflection_gluing":  # klein_0 x P(b_tau) -> JX_tau
            return addition_degree(
                [(self.sub("fixed_klein_0"), None), (self.sub("prym_b_tau"), None)],
                self.sub("fixed_refl_0"),
            )
        if key == "right_reflection_gluing":  # klein_m x B -> JX_{t s^m}
            return addition_degree(
                [(self.sub("fixed_klein_m"), None), (self.sub("prym_right"), None)],
                self.sub("fixed_refl_m"),
            )
        raise KeyError(key)

    def lemma31_diagnostic(self) -> tuple[int, int]:
        """(kernel order of the prym-exchange isogeny, number of
        two-torsion classes fixed by the <t, s^m> action).

        The two counts are reported side by side; their equality is a
        statement the engine does not assert.
        """
        if self.datum.r < 2:
            raise InapplicableClaimError("diagnostic needs r >= 2")
        n, m = self.datum.n, self.datum.m
        kernel_order = self.degree("deg_h")
        fixed = lattice.fixed_two_torsion_count(
            [self.lattice.deck(TAU), self.lattice.deck(sigma(m, n))]
        )
        return kernel_order, fixed


# ---------------------------------------------------------------------------
# claims


def applicable_claims(datum: MonodromyDatum) -> list[str]:
    r = datum.r
    out = ["COMBINATORICS", "GENUS"]
    if r == 0 and datum.n >= 3:
        out.append("THM21a")
    if r == 1:
        out.append("THM21b")
    out.append("LEM26")
    if r >= 2:
        out.extend(["PROP27", "PROP32", "PROP42", "COR43", "COR44", "THM41"])
    return [c for c in CLAIM_IDS if c in out]


def claim_assumptions(claim_id: str) -> list[str]:
    if claim_id in ("LEM26", "COR44", "THM41", "PROP42", "COR43"):
        return [ASSUMPTION_ETALE_KERNEL, ASSUMPTION_RAMIFIED_KERNEL]
    if claim_id in ("PROP27", "PROP32"):
        return [ASSUMPTION_RAMIFIED_KERNEL]
    return []


def _record(claim, anchor, datum, formula, oracle, witness=None, extra_ok=True) -> ClaimRecord:
    verdict = PASS if (formula == oracle and extra_ok) else FAIL
    return ClaimRecord(claim, anchor, datum, formula, oracle, verdict, witness)


def _basis_witness(*subs: AbelianSubvariety) -> dict:
    return {s.name: [list(r) for r in s.lattice.basis] for s in subs}


def _run_combinatorics(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    n, g = d.n, d.genus
    s0, s1 = branch_parity_counts(d)
    records = []
    if n % 2 == 0:
        records.append(
            _record("COMBINATORICS", "s_0 + s_1 = 2g+2", d, 2 * g + 2, s0 + s1)
        )
        both_even_big = int(s0 % 2 == 0 and s1 % 2 == 0 and s0 >= 2 and s1 >= 2)
        records.append(
            _record("COMBINATORICS", "s_0, s_1 \\geq 2 \\; even", d, 1, both_even_big)
        )
        # reflection fixed points on the n-point fiber model (cosets of <t>)
        records.append(
            _record(
                "COMBINATORICS",
                "admits exactly $2$ fixed points",
                d,
                2,
                fixed_point_count(d, refl(0), TAU),
            )
        )
        pairing_ok = 1
        for k in (0, 1):
            for j in range(n):
                c_j = fixed_point_count(d, refl(k), tau_sigma(j, n))
                c_j1 = fixed_point_count(d, refl(k), tau_sigma(j + 1, n))
                if c_j not in (0, 2) or (c_j == 0) == (c_j1 == 0):
                    pairing_ok = 0
        records.append(
            _record("COMBINATORICS", "exactly one of the involutions", d, 1, pairing_ok)
        )
        records.append(
            _record(
                "COMBINATORICS",
                "ramified exactly at $2s_0$",
                d,
                2 * s0,
                deck_fixed_point_count(d, TAU),
            )
        )
        records.append(
            _record(
                "COMBINATORICS",
                "ramified exactly at $2s_1$",
                d,
                2 * s1,
                deck_fixed_point_count(d, tau_sigma(d.m, n)),
            )
        )
    else:
        records.append(
            _record(
                "COMBINATORICS",
                "admits exactly one fixed point",
                d,
                1,
                fixed_point_count(d, refl(0), TAU),
            )
        )
        all_single = int(
            all(
                fixed_point_count(d, refl(0), tau_sigma(j, n)) == 1 for j in range(n)
            )
        )
        records.append(
            _record("COMBINATORICS", "admits exactly one fixed point", d, 1, all_single)
        )
        records.append(
            _record(
                "COMBINATORICS",
                "branch points of the hyperelliptic",
                d,
                2 * g + 2,
                deck_fixed_point_count(d, TAU),
            )
        )
    return records


_GENUS_ROWS_R2 = (
    ("g(X) = n(g-1)+1", formulas.CURVE_X),
    ("X_{\\sigma} = H", formulas.CURVE_BASE),
    ("g(X_{\\sigma^{n/2}}) = \\frac{n}{2}(g-1) +1", formulas.CURVE_ROT_HALF),
    ("g(X_{\\sigma^{n/4}}) = \\frac{n}{4}(g -1) +1", formulas.CURVE_ROT_QUARTER),
    (
        "g(X_{\\tau \\sigma^{n/2}}) = \\frac{n}{2} (g-1) + 1 - \\frac{s_0}{2}",
        formulas.CURVE_REFL_HALF,
    ),
    (
        "g(X_{\\tau \\sigma^m}) = \\frac{n}{2}(g-1) +1  - \\frac{s_1}{2}",
        formulas.CURVE_REFL_M,
    ),
    (
        "g(X_{K_\\tau}) = \\frac{n}{4}(g-1) + 1 - \\frac{s_0}{2}",
        formulas.CURVE_KLEIN_0,
    ),
    (
        "g(X_{K_{\\tau \\sigma^m}}) = \\frac{n}{4}(g-1) + 1 - \\frac{s_1}{2}",
        formulas.CURVE_KLEIN_M,
    ),
)


def _genus_subgroup(curve: str, d: MonodromyDatum):
    n, m = d.n, d.m
    return {
        formulas.CURVE_X: TRIVIAL,
        formulas.CURVE_BASE: rot(1),
        formulas.CURVE_ROT_HALF: rot(n // 2),
        formulas.CURVE_ROT_QUARTER: rot(n // 4) if n % 4 == 0 else None,
        formulas.CURVE_REFL_0: refl(0),
        formulas.CURVE_REFL_HALF: refl(n // 2),
        formulas.CURVE_REFL_M: refl(m),
        formulas.CURVE_KLEIN_0: klein(0),
        formulas.CURVE_KLEIN_M: klein(m),
        formulas.CURVE_ORDER8_0: dih8(0) if n % 4 == 0 else None,
        formulas.CURVE_ORDER8_M: dih8(m) if n % 4 == 0 else None,
    }[curve]


def _run_genus(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    n, g = d.n, d.genus
    s0, s1 = branch_parity_counts(d)
    table = formulas.genus_closed_forms(n, g, s0, s1)
    records = []
    if d.r >= 2:
        rows = list(_GENUS_ROWS_R2)
        if d.r >= 3:
            rows.append(("g(X_{T_\\tau}) = \\frac{n}{8}(g-1) +1 - \\frac{s_0}{2}", formulas.CURVE_ORDER8_0))
            # the table labels this row with the reflection quotient; the
            # order-8 quotient is the reading that matches (see tests)
            rows.append(("g(X_{\\tau \\sigma^m}) = \\frac{n}{8}(g-1) +1 - \\frac{s_1}{2}", formulas.CURVE_ORDER8_M))
        else:
            rows.append(("g(X_{T_\\tau}) = g(X_{\\tau \\sigma^m}) = \\frac{1}{2}(m-1)(g-1)", formulas.CURVE_ORDER8_0))
            rows.append(("g(X_{T_\\tau}) = g(X_{\\tau \\sigma^m}) = \\frac{1}{2}(m-1)(g-1)", formulas.CURVE_ORDER8_M))
        for anchor, curve in rows:
            subgroup = _genus_subgroup(curve, d)
            records.append(
                _record("GENUS", anchor, d, table[curve], quotient_genus(d, subgroup))
            )
    elif d.r == 1:
        for anchor, curve in (
            ("g(X) = n(g-1)+1", formulas.CURVE_X),
            ("X_{\\sigma} = H", formulas.CURVE_BASE),
            ("m(g-1) + 1 - \\frac{s_0}{2}", formulas.CURVE_REFL_0),
            ("m(g-1) + 1 - \\frac{s_1}{2}", formulas.CURVE_REFL_M),
        ):
            subgroup = _genus_subgroup(curve, d)
            records.append(
                _record("GENUS", anchor, d, table[curve], quotient_genus(d, subgroup))
            )
    else:
        for anchor, curve in (
            ("g(X) = n(g-1)+1", formulas.CURVE_X),
            ("X_{\\sigma} = H", formulas.CURVE_BASE),
        ):
            subgroup = _genus_subgroup(curve, d)
            records.append(
                _record("GENUS", anchor, d, table[curve], quotient_genus(d, subgroup))
            )
    return records


def _run_thm21a(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    value = oracle.degree("twisted_addition")
    formula = formulas.degree_closed_form("THM21A", d.n, d.genus)
    witness = None
    if value != formula:
        witness = _basis_witness(oracle.sub("fixed_refl_0"), oracle.sub("norm_kernel"))
    return [_record("THM21a", "(x,y) \\mapsto x + \\sigma(y)", d, formula, value, witness)]


def _literal_pairing_finding(oracle: PrymOracle) -> dict:
    """Documented finding for m > 1: the two stated reflection-fixed
    subvarieties overlap in the fixed part of <t, s^m>, whose dimension
    is the genus (m-1)(g-1)/2 of the corresponding quotient curve, so
    the stated addition map is not an isogeny.  The oracle value is
    computed with the generating representative t*s instead."""
    d = oracle.datum
    inter = lattice.intersect(
        oracle.sub("fixed_refl_0").lattice, oracle.sub("fixed_refl_m").lattice
    )
    return {
        "finding": "stated factors fixed by t and t*s^m share a positive-dimensional "
        "subvariety for m > 1; oracle uses the generating representative t*s",
        "overlap_dim": inter.rank // 2,
        "expected_overlap_dim": (d.m - 1) * (d.genus - 1) // 2,
    }


def _run_thm21b(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    s0, s1 = branch_parity_counts(d)
    m = d.m
    value = oracle.degree("reflection_addition")
    formula = formulas.degree_closed_form("THM21B", d.n, d.genus)
    genus_left = quotient_genus(d, refl(0))
    genus_right = quotient_genus(d, refl(m))
    expected_left = m * (d.genus - 1) + 1 - s0 // 2
    expected_right = m * (d.genus - 1) + 1 - s1 // 2
    genus_ok = genus_left == expected_left and genus_right == expected_right
    witness = _literal_pairing_finding(oracle) if m > 1 else None
    if value != formula or not genus_ok:
        witness = dict(witness or {})
        witness.update(
            {
                "genus_left": [genus_left, expected_left],
                "genus_right": [genus_right, expected_right],
            }
        )
        witness.update(_basis_witness(oracle.sub("norm_kernel")))
    return [
        _record("THM21b", "(x,y) \\mapsto x + y", d, formula, value, witness, extra_ok=genus_ok)
    ]


def _run_lem26(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    value = oracle.degree("base_gluing")
    formula = formulas.degree_closed_form("LEM26", d.n, d.genus)
    witness = None
    if value != formula:
        witness = _basis_witness(oracle.sub("base_pullback"), oracle.sub("norm_kernel"))
    return [
        _record("LEM26", "\\frac{|JZ[d]|}{|\\ker g^*|^2}", d, formula, value, witness)
    ]


def _run_prop27(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    s0, _ = branch_parity_counts(d)
    value = oracle.degree("klein_gluing")
    formula = formulas.degree_closed_form("PROP27", d.n, d.genus, s0=s0)
    witness = None
    if value != formula:
        witness = _basis_witness(
            oracle.sub("prym_b_tau"), oracle.sub("prym_left"), oracle.sub("anti_half")
        )
    return [
        _record("PROP27", "is an isogeny of degree $2^{2g(Z)}$", d, formula, value, witness)
    ]


def _run_prop32(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    _, s1 = branch_parity_counts(d)
    value = oracle.degree("deg_h")
    formula = formulas.degree_closed_form("PROP32", d.n, d.genus, s1=s1)
    kernel_order, fixed_two = oracle.lemma31_diagnostic()
    witness: dict = {
        "kernel_order": str(kernel_order),
        "fixed_two_torsion": str(fixed_two),
    }
    if value != formula:
        witness.update(_basis_witness(oracle.sub("prym_left"), oracle.sub("prym_right")))
    return [_record("PROP32", "2^{(m-1)(g-1)+s_1-2 }", d, formula, value, witness)]


def _klein_overlap_finding(oracle: PrymOracle) -> dict:
    """Documented finding for m > 1: the two Klein-fixed factors of the
    multi-factor gluings share the fixed part of <t, s^m>, so the stated
    map is not an isogeny (its factors are dependent)."""
    d = oracle.datum
    inter = lattice.intersect(
        oracle.sub("fixed_klein_0").lattice, oracle.sub("fixed_klein_m").lattice
    )
    return {
        "finding": "stated factors are dependent for m > 1: the Klein-fixed parts "
        "overlap in the fixed subvariety of <t, s^m>",
        "overlap_dim": inter.rank // 2,
        "expected_overlap_dim": (d.m - 1) * (d.genus - 1) // 2,
    }


def _run_prop42(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    n, g = d.n, d.genus
    s0, _ = branch_parity_counts(d)
    formula = formulas.degree_closed_form("PROP42", n, g, s0=s0)
    anchor = "2^{[(2^{r+1} -r)m +r](g-1) +2 -s_0}"
    if d.m > 1:
        return [
            ClaimRecord("PROP42", anchor, d, formula, None, FAIL, _klein_overlap_finding(oracle))
        ]
    value = oracle.degree("five_term_left")
    factor_targets = {
        "half_tower": formulas.half_tower_addition_degree(n, g),
        "half_tower_full": formulas.half_tower_full_addition_degree(n, g),
        "klein_gluing": 2 ** (2 * quotient_genus(d, klein(0))),
        "double_cover_gluing": formulas.double_cover_gluing_degree(n, g),
    }
    factors = {k: oracle.degree(k) for k in factor_targets}
    factors_ok = factors == factor_targets
    chain_ok = value == (
        factors["half_tower_full"] * factors["klein_gluing"] * factors["double_cover_gluing"]
    )
    if not chain_ok:
        raise InternalInvariantError("forced five-term factorization failed")
    witness = None
    if value != formula or not factors_ok:
        witness = {
            "factors": {k: str(v) for k, v in factors.items()},
            "factor_formulas": {k: str(v) for k, v in factor_targets.items()},
        }
    return [_record("PROP42", anchor, d, formula, value, witness, extra_ok=factors_ok)]


def _run_cor43(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    formula = formulas.degree_closed_form("COR43", d.n, d.genus)
    anchor = "m^{2g-2} 2^{[(2^{r+1} -r - 1)m +r-1](g-1)}"
    if d.m > 1:
        return [
            ClaimRecord("COR43", anchor, d, formula, None, FAIL, _klein_overlap_finding(oracle))
        ]
    value = oracle.degree("five_term_right")
    deg_h = oracle.degree("deg_h")
    # forced: replacing the left prym factor by its (1 + t s^m) image
    # multiplies the degree by deg h
    if oracle.degree("five_term_twisted") != value * deg_h:
        raise InternalInvariantError("forced twisted five-term identity failed")
    # the stated derivation instead divides the untwisted left five-term
    stated_identity_holds = oracle.degree("five_term_left") == value * deg_h
    witness = None
    if not stated_identity_holds:
        witness = {
            "finding": "stated identity deg(five-term with A) = deg(five-term with B) "
            "* deg(h) fails; the exchange of prym factors shifts the lattice index",
            "five_term_left": str(oracle.degree("five_term_left")),
            "five_term_twisted": str(oracle.degree("five_term_twisted")),
            "deg_h": str(deg_h),
        }
    if value != formula:
        witness = dict(witness or {})
        witness.update(_basis_witness(oracle.sub("prym_right"), oracle.sub("full")))
    return [_record("COR43", anchor, d, formula, value, witness)]


def _run_cor44(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    n, g = d.n, d.genus
    formula = formulas.degree_closed_form("COR44", n, g)
    anchor = "2^{[(2^{r+1} -r - 1)m - (r+1)](g-1)}"
    if d.m > 1:
        return [
            ClaimRecord("COR44", anchor, d, formula, None, FAIL, _klein_overlap_finding(oracle))
        ]
    value = oracle.degree("four_term")
    base_gluing = oracle.degree("base_gluing")
    if oracle.degree("five_term_right") != value * base_gluing:
        raise InternalInvariantError("forced base-gluing factorization failed")
    witness = None
    textual = formulas.base_gluing_degree_textual(n, g)
    if textual != base_gluing:
        witness = {
            "finding": "stated base-gluing degree (16m)^{2g-2} differs from the oracle",
            "textual_value": str(textual),
            "oracle_base_gluing": str(base_gluing),
        }
    if value != formula:
        witness = dict(witness or {})
        witness.update(
            {
                "five_term_right": str(oracle.degree("five_term_right")),
                "base_gluing": str(base_gluing),
            }
        )
    return [_record("COR44", anchor, d, formula, value, witness)]


def _run_thm41(oracle: PrymOracle) -> list[ClaimRecord]:
    d = oracle.datum
    n, g = d.n, d.genus
    s0, s1 = branch_parity_counts(d)
    value = oracle.degree("reflection_addition")
    formula = formulas.degree_closed_form("THM41", n, g)
    anchor = "2^{[(2^{r} -r-1)m -(r-1)](g-1)}"
    witness = _literal_pairing_finding(oracle) if d.m > 1 else None
    extra_ok = True
    if d.m == 1:
        left = oracle.degree("left_reflection_gluing")
        right = oracle.degree("right_reflection_gluing")
        left_formula = formulas.reflection_gluing_degree(n, g, s0)
        right_formula = formulas.reflection_gluing_degree(n, g, s1)
        if oracle.degree("four_term") != value * left * right:
            raise InternalInvariantError("forced reflection-gluing factorization failed")
        extra_ok = left == left_formula and right == right_formula
        textual_left = formulas.reflection_gluing_degree_textual(n, g, s0)
        if textual_left != left_formula:
            witness = {
                "finding": "stated reflection-gluing degree 2^{8m(g-1)+2-s} differs "
                "from the general form",
                "textual_values": [
                    str(textual_left),
                    str(formulas.reflection_gluing_degree_textual(n, g, s1)),
                ],
                "oracle_values": [str(left), str(right)],
            }
        if value != formula or not extra_ok:
            witness = dict(witness or {})
            witness.update(
                {
                    "four_term": str(oracle.degree("four_term")),
                    "left_gluing": [str(left), str(left_formula)],
                    "right_gluing": [str(right), str(right_formula)],
                }
            )
            witness.update(_basis_witness(oracle.sub("norm_kernel")))
    elif value != formula:
        witness = dict(witness or {})
        witness.update(_basis_witness(oracle.sub("norm_kernel")))
    return [_record("THM41", anchor, d, formula, value, witness, extra_ok=extra_ok)]


_RUNNERS = {
    "COMBINATORICS": _run_combinatorics,
    "GENUS": _run_genus,
    "THM21a": _run_thm21a,
    "THM21b": _run_thm21b,
    "LEM26": _run_lem26,
    "PROP27": _run_prop27,
    "PROP32": _run_prop32,
    "PROP42": _run_prop42,
    "COR43": _run_cor43,
    "COR44": _run_cor44,
    "THM41": _run_thm41,
}


def verify_claim(
    datum: MonodromyDatum, claim_id: str, oracle: PrymOracle | None = None
) -> list[ClaimRecord]:
    """Run one claim on one datum; raises InapplicableClaimError outside
    the claim's regime."""
    if claim_id not in CLAIM_IDS:
        raise ValueError(f"unknown claim id {claim_id!r}")
    if claim_id not in applicable_claims(datum):
        raise InapplicableClaimError(f"{claim_id} does not apply to n={datum.n}")
    if oracle is None:
        oracle = PrymOracle(datum)
    return _RUNNERS[claim_id](oracle)


def run_claims(
    datum: MonodromyDatum, claim_ids: list[str] | None = None
) -> tuple[list[ClaimRecord], list[str]]:
    """Run the requested claims (all applicable ones by default) on a
    shared oracle.  Returns (records, skipped claim ids)."""
    applicable = applicable_claims(datum)
    requested = list(claim_ids) if claim_ids is not None else list(applicable)
    for c in requested:
        if c not in CLAIM_IDS:
            raise ValueError(f"unknown claim id {c!r}")
    oracle = PrymOracle(datum)
    records: list[ClaimRecord] = []
    skipped: list[str] = []
    for claim_id in CLAIM_IDS:
        if claim_id not in requested:
            continue
        if claim_id not in applicable:
            skipped.append(claim_id)
            continue
        records.extend(_RUNNERS[claim_id](oracle))
    return records, skipped
