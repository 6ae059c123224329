"""Closed-form bounds and the table of known values of scn(t, N) and N(v, t).

``scn(t, N)`` is the largest v for which an (N, v, t)-suitable core exists;
``sun(t, N) = scn(t, N) + N`` is the largest v for which an (N, v, t)-suitable
array exists; ``N(v, t)`` is the fewest rows of a (., v, t)-suitable array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

SCN = "scn"
SUN = "sun"
N_OF_V_T = "N_of_v_t"
EXACT, LOWER, UPPER = "exact", "lower", "upper"

PROV_SMALL = "Colbourn: scn(t,N) = k when k(t+1-k) <= N < (k+1)(t-k)"
PROV_COLBOURN_I = "Colbourn (i): scn(2s, s(s+1)) >= s+2, s >= 2"
PROV_COLBOURN_I_EQ = "Colbourn (i) equality scn(2s, s(s+1)) = s+2, stated without proof"
PROV_COLBOURN_II = "Colbourn (ii): scn(2s+1, (s+1)^2) >= s+2, s >= 1"
PROV_ODD_STRENGTH = "odd-strength nonexistence theorem: scn(2s+1, (s+1)^2) = s+2, s >= 3"
PROV_CATALOG = "explicit example core {name}"
PROV_DUSHNIK = "Dushnik: N(v,t) = v-j+1 for floor(v/j)+j-1 <= t < floor(v/(j-1))+j-2"
PROV_TRIVIAL = "trivial v x v array: N(v,t) <= v"
PROV_FUREDI_KAHN = "Furedi-Kahn: N(v,t) <= t^2(1+ln(v/t)) (natural log assumed)"
PROV_SPENCER = "Spencer: sun(t,N) <= 2^(2^N), t >= 3"
PROV_SEARCH = "exhaustive search"

# (t, N) -> (scn lower bound, catalog name)
_CATALOG_BOUNDS = {
    (3, 4): (8, "fig1-483"),
    (5, 9): (5, "fig2-955"),
    (7, 17): (6, "fig3-1767"),
    (9, 26): (7, "fig4-2679"),
}


@dataclass(frozen=True)
class BoundsRecord:
    quantity: str
    params: tuple[int, int]  # (t, N) for scn/sun, (v, t) for N_of_v_t
    kind: str
    value: int | float | str
    provenance: str

    def as_dict(self) -> dict:
        return {"quantity": self.quantity, "params": list(self.params), "kind": self.kind,
                "value": self.value, "provenance": self.provenance}


def scn_from_sun(sun_value: int, N: int) -> int:
    if sun_value < N:
        raise ValueError(f"sun={sun_value} < N={N} gives a negative core width")
    return sun_value - N


def sun_from_scn(scn_value: int, N: int) -> int:
    if scn_value < 0:
        raise ValueError("core width must be nonnegative")
    return scn_value + N


def prop_i_lower_bound(v: int, t: int) -> int:
    """Fewest rows any (N, v, t)-suitable core can have: max of i(t+1-i), i <= min(v, t)."""
    return max((i * (t + 1 - i) for i in range(1, min(v, t) + 1)), default=0)


def small_scn(t: int, N: int) -> int | None:
    """The exact value k of scn(t, N) when k(t+1-k) <= N < (k+1)(t-k), else None."""
    for k in range(0, (t - 1) // 2 + 1):
        if k * (t + 1 - k) <= N < (k + 1) * (t - k):
            return k
    return None


def dushnik_N(v: int, t: int) -> int | None:
    if v < 4:
        return None
    for j in range(2, isqrt(v) + 1):
        if v // j + j - 1 <= t < v // (j - 1) + j - 2:
            return v - j + 1
    return None


def spencer_check(t: int, N: int, v: int) -> bool:
    """False when an (N, v, t)-suitable array would break v <= 2^(2^N)."""
    if t < 3:
        raise ValueError("the double-exponential bound needs t >= 3")
    if v <= 2:
        return True
    # v <= 2**k  <=>  (v-1).bit_length() <= k
    return (v - 1).bit_length() <= 2 ** N


def furedi_kahn_upper(v: int, t: int) -> float:
    if t < 1 or v < t:
        raise ValueError(f"need v >= t >= 1, got v={v}, t={t}")
    return t * t * (1 + math.log(v / t))


def theorem_table(t: int, N: int) -> list[BoundsRecord]:
    """All recorded facts about scn(t, N)."""
    recs = []
    key = (t, N)
    k = small_scn(t, N)
    if k is not None:
        recs.append(BoundsRecord(SCN, key, EXACT, k, PROV_SMALL))
    if t % 2 == 0:
        s = t // 2
        if s >= 2 and N == s * (s + 1):
            recs.append(BoundsRecord(SCN, key, LOWER, s + 2, PROV_COLBOURN_I))
            recs.append(BoundsRecord(SCN, key, EXACT, s + 2, PROV_COLBOURN_I_EQ))
    else:
        s = (t - 1) // 2
        if s >= 1 and N == (s + 1) ** 2:
            recs.append(BoundsRecord(SCN, key, LOWER, s + 2, PROV_COLBOURN_II))
            if s >= 3:
                recs.append(BoundsRecord(SCN, key, EXACT, s + 2, PROV_ODD_STRENGTH))
    if key in _CATALOG_BOUNDS:
        value, name = _CATALOG_BOUNDS[key]
        recs.append(BoundsRecord(SCN, key, LOWER, value, PROV_CATALOG.format(name=name)))
    return recs


def n_table(v: int, t: int) -> list[BoundsRecord]:
    """Recorded facts about N(v, t) for t <= v."""
    key = (v, t)
    recs = []
    d = dushnik_N(v, t)
    if d is not None:
        recs.append(BoundsRecord(N_OF_V_T, key, EXACT, d, PROV_DUSHNIK))
    if t == v:
        recs.append(BoundsRecord(N_OF_V_T, key, EXACT, v, "t = v: every symbol must lead a row"))
    recs.append(BoundsRecord(N_OF_V_T, key, LOWER, t, "definition: t <= N"))
    recs.append(BoundsRecord(N_OF_V_T, key, UPPER, v, PROV_TRIVIAL))
    recs.append(BoundsRecord(N_OF_V_T, key, UPPER, round(furedi_kahn_upper(v, t), 6), PROV_FUREDI_KAHN))
    return recs


def as_sun(record: BoundsRecord) -> BoundsRecord:
    if record.quantity != SCN:
        raise ValueError("only scn records convert to sun")
    t, N = record.params
    return BoundsRecord(SUN, record.params, record.kind, sun_from_scn(record.value, N), record.provenance)


def summarize(records: list[BoundsRecord]) -> tuple[str, int | float | None, list[BoundsRecord]]:
    """Collapse records to (kind, value, supporting) with exact > tightest bounds."""
    exact = [r for r in records if r.kind == EXACT]
    if exact:
        return EXACT, exact[0].value, exact
    lows = [r for r in records if r.kind == LOWER]
    if lows:
        best = max(r.value for r in lows)
        return LOWER, best, [r for r in lows if r.value == best]
    return "unknown", None, []


def consistency_errors(records: list[BoundsRecord]) -> list[str]:
    """Pairs of records for the same quantity and params that contradict."""
    errs = []
    exact = [r for r in records if r.kind == EXACT]
    for a in exact:
        for b in exact:
            if a.value != b.value and a.provenance < b.provenance:
                errs.append(f"exact values disagree: {a} vs {b}")
        for r in records:
            if r.kind == LOWER and r.value > a.value:
                errs.append(f"lower bound {r.value} exceeds exact {a.value}: {r.provenance}")
            if r.kind == UPPER and r.value < a.value:
                errs.append(f"upper bound {r.value} below exact {a.value}: {r.provenance}")
    return errs


def core_contradictions(N: int, v: int, t: int, t_range=None, n_range=None) -> list[str]:
    """Recorded facts contradicted by the existence of an (N, v, t)-suitable core.

    Such a core implies scn(t', N') >= v for every t' <= t and N' >= N, since
    extra rows and a lower strength preserve suitability.
    """
    errs = []
    if N < prop_i_lower_bound(v, t):
        errs.append(f"({N},{v},{t})-core has fewer than {prop_i_lower_bound(v, t)} rows")
    if t >= 3 and N >= 1 and not spencer_check(t, N, v + N):
        errs.append(f"({N},{v},{t})-core breaks {PROV_SPENCER}")
    t_range = t_range if t_range is not None else range(1, t + 1)
    n_range = n_range if n_range is not None else range(N, N + 1)
    for tt in t_range:
        if tt > t:
            continue
        for nn in n_range:
            if nn < N:
                continue
            for r in theorem_table(tt, nn):
                if r.kind in (EXACT, UPPER) and r.value < v:
                    errs.append(f"({N},{v},{t})-core contradicts {r.kind} scn({tt},{nn}) = {r.value}: {r.provenance}")
    return errs
