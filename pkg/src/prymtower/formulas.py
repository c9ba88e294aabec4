"""Closed-form genus and isogeny-degree formulas with regime guards.

All values are exact integers; exponents are assembled first and a
single integer power is taken at the end.  Requesting a formula outside
its (n, r, m) regime raises :class:`RegimeError` rather than returning
a default.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RegimeError


@dataclass(frozen=True)
class TwoAdicSplit:
    """n = 2^r * m with m odd."""

    n: int
    r: int
    m: int


def two_adic_split(n: int) -> TwoAdicSplit:
    if n < 1:
        raise ValueError("n must be positive")
    r = 0
    m = n
    while m % 2 == 0:
        r += 1
        m //= 2
    return TwoAdicSplit(n, r, m)


def prym_dimension(n: int, g: int) -> int:
    """Dimension (n-1)(g-1) of the norm-kernel subvariety."""
    return (n - 1) * (g - 1)


def _check_parity_data(n: int, g: int, s0: int, s1: int) -> None:
    if n % 2 == 0:
        if s0 + s1 != 2 * g + 2 or s0 % 2 or s1 % 2:
            raise RegimeError(f"inconsistent parity counts s0={s0}, s1={s1} for g={g}")
    else:
        if (s0, s1) != (2 * g + 2, 0):
            raise RegimeError(f"odd n has (s0, s1) = (2g+2, 0), got ({s0}, {s1})")


# Canonical curve names, keyed by the subgroup that cuts out the quotient.
CURVE_X = "X"
CURVE_BASE = "H"
CURVE_ROT_HALF = "X_rot_half"  # quotient by <s^(n/2)>
CURVE_ROT_QUARTER = "X_rot_quarter"  # quotient by <s^(n/4)>
CURVE_REFL_0 = "X_refl_0"  # quotient by <t>
CURVE_REFL_HALF = "X_refl_half"  # quotient by <t s^(n/2)>
CURVE_REFL_M = "X_refl_m"  # quotient by <t s^m>
CURVE_KLEIN_0 = "X_klein_0"  # quotient by <s^(n/2), t>
CURVE_KLEIN_M = "X_klein_m"  # quotient by <s^(n/2), t s^m>
CURVE_ORDER8_0 = "X_dih8_0"  # quotient by <t, s^(n/4)>
CURVE_ORDER8_M = "X_dih8_m"  # quotient by <t s^m, s^(n/4)>
# second reading of the ambiguous order-8 table row (see genus_closed_forms)
CURVE_ORDER8_M_AS_REFL = "X_refl_m_order8_reading"


def genus_closed_forms(n: int, g: int, s0: int, s1: int) -> dict[str, int]:
    """Closed-form genera of the canonical quotient curves.

    Which keys appear depends on the regime: the full table needs
    r >= 2; for n = 2 mod 4 the two reflection quotients are included;
    for odd n only the cover and the base.  The order-8 row whose label
    collides with the index-2 reflection quotient is exposed under both
    candidate keys so the ambiguity can be adjudicated numerically.
    """
    split = two_adic_split(n)
    r, m = split.r, split.m
    _check_parity_data(n, g, s0, s1)
    table = {CURVE_X: n * (g - 1) + 1, CURVE_BASE: g}
    if r == 1:
        table[CURVE_REFL_0] = m * (g - 1) + 1 - s0 // 2
        table[CURVE_REFL_M] = m * (g - 1) + 1 - s1 // 2
        return table
    if r == 0:
        return table
    # r >= 2: the full tower
    table[CURVE_ROT_HALF] = (n // 2) * (g - 1) + 1
    table[CURVE_ROT_QUARTER] = (n // 4) * (g - 1) + 1
    table[CURVE_REFL_HALF] = (n // 2) * (g - 1) + 1 - s0 // 2
    table[CURVE_REFL_M] = (n // 2) * (g - 1) + 1 - s1 // 2
    table[CURVE_REFL_0] = (n // 2) * (g - 1) + 1 - s0 // 2
    table[CURVE_KLEIN_0] = (n // 4) * (g - 1) + 1 - s0 // 2
    table[CURVE_KLEIN_M] = (n // 4) * (g - 1) + 1 - s1 // 2
    if r >= 3:
        table[CURVE_ORDER8_0] = (n // 8) * (g - 1) + 1 - s0 // 2
        table[CURVE_ORDER8_M] = (n // 8) * (g - 1) + 1 - s1 // 2
        table[CURVE_ORDER8_M_AS_REFL] = table[CURVE_ORDER8_M]
    else:
        table[CURVE_ORDER8_0] = (m - 1) * (g - 1) // 2
        table[CURVE_ORDER8_M] = (m - 1) * (g - 1) // 2
    return table


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise RegimeError(message)


def addition_map_degree(n: int, g: int) -> int:
    """Degree of the addition map from the two reflection-quotient
    Jacobians onto the norm-kernel subvariety, in every regime."""
    split = two_adic_split(n)
    if split.r <= 1:
        return 1
    return degree_closed_form("THM41", n, g)


def degree_closed_form(
    claim_id: str, n: int, g: int, s0: int | None = None, s1: int | None = None
) -> int:
    """Exact closed-form value for the given claim identifier."""
    split = two_adic_split(n)
    r, m = split.r, split.m
    c = claim_id.upper()
    if c == "THM21A":
        _require(r == 0 and n >= 3, f"THM21a needs odd n >= 3, got n={n}")
        return 1
    if c == "THM21B":
        _require(r == 1, f"THM21b needs n = 2 mod 4, got n={n}")
        return 1
    if c == "LEM26":
        # etale cyclic pullback: |JH[n]| / |ker f*|^2 with kernel order n
        return n ** (2 * g - 2)
    if c == "PROP27":
        _require(r >= 2, f"PROP27 instance needs r >= 2, got n={n}")
        _require(s0 is not None, "PROP27 needs s0")
        genus_klein_0 = (n // 4) * (g - 1) + 1 - s0 // 2
        return 2 ** (2 * genus_klein_0)
    if c == "PROP32":
        _require(r >= 2, f"PROP32 needs r >= 2, got n={n}")
        _require(s1 is not None, "PROP32 needs s1")
        return 2 ** ((m - 1) * (g - 1) + s1 - 2)
    if c == "PROP42":
        _require(r >= 2, f"PROP42 needs r >= 2, got n={n}")
        _require(s0 is not None, "PROP42 needs s0")
        return m ** (2 * g - 2) * 2 ** (((2 ** (r + 1) - r) * m + r) * (g - 1) + 2 - s0)
    if c == "COR43":
        _require(r >= 2, f"COR43 needs r >= 2, got n={n}")
        return m ** (2 * g - 2) * 2 ** (((2 ** (r + 1) - r - 1) * m + r - 1) * (g - 1))
    if c == "COR44":
        _require(r >= 2, f"COR44 needs r >= 2, got n={n}")
        return 2 ** (((2 ** (r + 1) - r - 1) * m - (r + 1)) * (g - 1))
    if c == "THM41":
        _require(r >= 2, f"THM41 needs r >= 2, got n={n}")
        return 2 ** (((2**r - r - 1) * m - (r - 1)) * (g - 1))
    raise ValueError(f"unknown claim id {claim_id!r}")


# closed forms for the internal factors of the five-term addition map


def half_tower_addition_degree(n: int, g: int) -> int:
    """Degree of the two Klein-quotient Jacobians onto the half-tower
    norm-kernel: inductive value, equal to 1 at r = 2."""
    split = two_adic_split(n)
    _require(split.r >= 2, f"needs r >= 2, got n={n}")
    r, m = split.r, split.m
    return 2 ** (((2 ** (r - 1) - r) * m - (r - 2)) * (g - 1))


def half_tower_full_addition_degree(n: int, g: int) -> int:
    """Degree of base pullback x two Klein-quotient Jacobians onto the
    s^(n/2)-fixed subvariety: previous value times (n/2)^(2g-2)."""
    split = two_adic_split(n)
    _require(split.r >= 2, f"needs r >= 2, got n={n}")
    r, m = split.r, split.m
    return m ** (2 * g - 2) * 2 ** (((2 ** (r - 1) - r) * m + r) * (g - 1))


def double_cover_gluing_degree(n: int, g: int) -> int:
    """Degree of (s^(n/2)-fixed part) x (anti-fixed part) onto the full
    Jacobian: 2^(2 g(X_rot_half) - 2)."""
    split = two_adic_split(n)
    _require(split.r >= 2, f"needs r >= 2, got n={n}")
    return 2 ** (n * (g - 1))


def reflection_gluing_degree(n: int, g: int, s_count: int) -> int:
    """Degree of Klein-quotient Jacobian x its complement onto the
    reflection-quotient Jacobian: 2^(2 g(X_klein)) with the matching
    parity count."""
    split = two_adic_split(n)
    _require(split.r >= 2, f"needs r >= 2, got n={n}")
    return 2 ** (2 ** (split.r - 1) * split.m * (g - 1) + 2 - s_count)


def reflection_gluing_degree_textual(n: int, g: int, s_count: int) -> int:
    """Variant closed form stated with a hard-coded 8m in place of
    (n/2); agrees with the general form only at r = 4."""
    split = two_adic_split(n)
    _require(split.r >= 2, f"needs r >= 2, got n={n}")
    return 2 ** (8 * split.m * (g - 1) + 2 - s_count)


def base_gluing_degree_textual(n: int, g: int) -> int:
    """Variant closed form (16m)^(2g-2) for the base x norm-kernel
    gluing; agrees with the general n^(2g-2) only at r = 4."""
    split = two_adic_split(n)
    _require(split.r >= 2, f"needs r >= 2, got n={n}")
    return (16 * split.m) ** (2 * g - 2)
