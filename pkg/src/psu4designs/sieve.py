"""Arithmetic feasibility sieve over the PSU4(q) maximal-subgroup catalog.

For each (case line, q) the sieve enumerates the divisors k of the k-bound
2a*d*|H0| and keeps exactly those passing the symmetric-design constraints:

  (i)   (v-1) | k(k-1), which fixes lambda = k(k-1)/(v-1),
  (ii)  lambda < k,
  (iii) lambda*v < k^2,
  (iv)  4*lambda*(v-1) + 1 is a perfect square,
  (v)   k | lambda*D for each subdegree divisor D (for the parabolic lines
        D is first narrowed to gcd(D, v-1)),
  (vi)  for a non-parabolic stabiliser, gcd(p, v-1) = 1 must hold at all.

No lower bound beyond lambda >= 1 is imposed, so the scan is deliberately
conservative: surviving parameter triples are classified against the known
designs at q=2, and anything else feasible is reported as unresolved rather
than silently discarded.  The sieve never claims a nonexistence it cannot
certify arithmetically.
"""

from __future__ import annotations

import copy
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Optional

from . import catalog
from .catalog import SubgroupCase, case_for, cases_for, out_order, socle_order
from .exactmath import PrimePower, divisors, factorize, is_perfect_square, primes_up_to

__all__ = [
    "DesignParams",
    "CaseOutcome",
    "ScanReport",
    "complement_params",
    "feasible_candidates",
    "cube_prefilter",
    "scan_case",
    "scan_all",
    "bound_tables",
    "ELIMINATED",
    "SURVIVOR",
    "UNRESOLVED",
    "KNOWN_DESIGN_PARAMS",
]

# outcome statuses
ELIMINATED = "eliminated"
SURVIVOR = "survivor"
UNRESOLVED = "unresolved"

# rejection / elimination reason codes
NO_K_DIVISOR = "NO_K_DIVISOR"
LAMBDA_BOUND_FAIL = "LAMBDA_BOUND_FAIL"
SQUARE_FAIL = "SQUARE_FAIL"
SUBDEG_FAIL = "SUBDEG_FAIL"
TITS_FAIL = "TITS_FAIL"
CUBE_PREFILTER = "CUBE_PREFILTER"

# stage depth of the per-divisor rejection codes; an eliminated case is
# summarised by the deepest stage any divisor reached
_STAGE = {NO_K_DIVISOR: 0, LAMBDA_BOUND_FAIL: 1, SQUARE_FAIL: 2, SUBDEG_FAIL: 3}

# parameter triples of the known flag-transitive point-primitive designs,
# all at q=2
KNOWN_DESIGN_PARAMS = frozenset({(45, 12, 3), (40, 27, 18), (36, 15, 6)})


@dataclass(frozen=True)
class DesignParams:
    """A symmetric (v, k, lambda) parameter triple.

    Construction re-checks the arithmetic identities, so any triple that
    escapes the sieve is sound independently of the search path.
    """

    v: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        v, k, lam = self.v, self.k, self.lam
        if not 2 < k < v - 1:
            raise ValueError(f"nontriviality 2 < k < v-1 fails for {(v, k, lam)}")
        if k * (k - 1) != lam * (v - 1):
            raise ValueError(f"k(k-1) = lambda(v-1) fails for {(v, k, lam)}")
        if lam * v >= k * k:
            raise ValueError(f"lambda*v < k^2 fails for {(v, k, lam)}")
        if not is_perfect_square(4 * lam * (v - 1) + 1):
            raise ValueError(f"4*lambda*(v-1)+1 is not a square for {(v, k, lam)}")

    def triple(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam})"


def complement_params(params: DesignParams) -> DesignParams:
    """Parameters of the complementary design: (v, v-k, v-2k+lambda)."""
    v, k, lam = params.triple()
    return DesignParams(v, v - k, v - 2 * k + lam)


@dataclass
class FeasibilityResult:
    candidates: list[tuple[DesignParams, dict]]
    rejections: dict[str, int]
    tits_violated: bool = False


def _scan_divisors(
    v: int, k_bound: int, subdeg: list[int], p: int, parabolic: bool
) -> FeasibilityResult:
    if v < 4:
        raise ValueError("v must be >= 4")
    if k_bound < 1:
        raise ValueError("k_bound must be >= 1")
    if not parabolic and math.gcd(p, v - 1) != 1:
        return FeasibilityResult([], {}, tits_violated=True)
    vm1 = v - 1
    effective = [math.gcd(d, vm1) if parabolic else d for d in subdeg]
    rejections: Counter[str] = Counter()
    candidates: list[tuple[DesignParams, dict]] = []
    for k in divisors(factorize(k_bound)):
        if k <= 2 or k >= vm1:
            continue
        kk = k * (k - 1)
        if kk % vm1:
            rejections[NO_K_DIVISOR] += 1
            continue
        lam = kk // vm1
        if lam >= k or lam * v >= k * k:
            rejections[LAMBDA_BOUND_FAIL] += 1
            continue
        disc = 4 * lam * vm1 + 1
        root = isqrt(disc)
        if root * root != disc:
            rejections[SQUARE_FAIL] += 1
            continue
        checks = []
        ok = True
        for d_raw, d_eff in zip(subdeg, effective):
            if (lam * d_eff) % k:
                ok = False
                break
            checks.append(
                {"bound": d_raw, "applied": d_eff, "multiplier": lam * d_eff // k}
            )
        if not ok:
            rejections[SUBDEG_FAIL] += 1
            continue
        trace = {"square_root": root, "subdegree_checks": checks}
        candidates.append((DesignParams(v, k, lam), trace))
    return FeasibilityResult(candidates, dict(rejections))


def feasible_candidates(
    v: int, k_bound: int, subdeg: list[int], p: int, parabolic: bool
) -> list[tuple[DesignParams, dict]]:
    """The (k, lambda) candidates surviving constraints (i)-(vi), ascending in k."""
    return _scan_divisors(v, k_bound, subdeg, p, parabolic).candidates


def cube_prefilter(line: int, q: PrimePower) -> bool:
    """Order test |X| <= |Out(X)|^2 * |H0|^3 for the fixed-group lines 11-16.

    True means the case survives to the divisor stage.
    """
    if not 11 <= line <= 16:
        raise ValueError("cube prefilter applies to lines 11-16 only")
    case = case_for(line, q)
    return socle_order(q) <= out_order(q) ** 2 * case.h0_order(q) ** 3


@dataclass
class CaseOutcome:
    """Elimination certificate or candidate list for one (case, q) pair."""

    line: int
    q: PrimePower
    v: int
    k_bound: int
    status: str
    reason: Optional[str]
    candidates: list[tuple[DesignParams, dict]]
    rejections: dict[str, int] = field(default_factory=dict)
    subfield: Optional[tuple[PrimePower, int]] = None

    def sort_key(self) -> tuple:
        q0 = self.subfield[0].q if self.subfield else 0
        return (self.line, self.q.q, q0)


def _classify(params: DesignParams, q: PrimePower) -> str:
    if q.q == 2 and params.triple() in KNOWN_DESIGN_PARAMS:
        return SURVIVOR
    return UNRESOLVED


def scan_case(
    line: int, q: PrimePower, subfield: Optional[tuple[PrimePower, int]] = None
) -> CaseOutcome:
    """Run the sieve on one applicable (line, q) pair."""
    case = case_for(line, q, subfield)
    return _scan_instance(case, q)


def _scan_instance(case: SubgroupCase, q: PrimePower) -> CaseOutcome:
    line = case.line
    v = case.point_count(q)
    k_bound = case.k_divisor_bound(q)
    if 11 <= line <= 16 and not cube_prefilter(line, q):
        return CaseOutcome(
            line, q, v, k_bound, ELIMINATED, CUBE_PREFILTER, [], {}, case.subfield
        )
    result = _scan_divisors(v, k_bound, case.subdegree_divisors(q), q.p, case.parabolic)
    if result.tits_violated:
        return CaseOutcome(
            line, q, v, k_bound, ELIMINATED, TITS_FAIL, [], {}, case.subfield
        )
    if result.candidates:
        classes = []
        for params, trace in result.candidates:
            cls = _classify(params, q)
            trace["classification"] = cls
            classes.append(cls)
        status = SURVIVOR if all(c == SURVIVOR for c in classes) else UNRESOLVED
        return CaseOutcome(
            line, q, v, k_bound, status, None,
            result.candidates, result.rejections, case.subfield,
        )
    if result.rejections:
        reason = max(result.rejections, key=lambda r: _STAGE[r])
    else:
        reason = NO_K_DIVISOR
    return CaseOutcome(
        line, q, v, k_bound, ELIMINATED, reason, [], result.rejections, case.subfield
    )


@dataclass
class ScanReport:
    """All case outcomes over a (p, a) range, with aggregate candidate lists.

    Each outcome is a pure function of its own (line, q), so the report is
    independent of evaluation order; outcomes are stored sorted by
    (line, q, q0) and serialise deterministically.
    """

    p_max: int
    a_max: int
    outcomes: list[CaseOutcome]

    @property
    def survivors(self) -> list[tuple[int, int, tuple[int, int, int]]]:
        return self._aggregate(SURVIVOR)

    @property
    def unresolved(self) -> list[tuple[int, int, tuple[int, int, int]]]:
        return self._aggregate(UNRESOLVED)

    def _aggregate(self, cls: str) -> list[tuple[int, int, tuple[int, int, int]]]:
        out = []
        for oc in self.outcomes:
            for params, trace in oc.candidates:
                if trace.get("classification") == cls:
                    out.append((oc.line, oc.q.q, params.triple()))
        return out

    def outcome(self, line: int, q_value: int) -> CaseOutcome:
        for oc in self.outcomes:
            if oc.line == line and oc.q.q == q_value:
                return oc
        raise KeyError((line, q_value))


def scan_range(p_max: int, a_max: int) -> list[PrimePower]:
    """Prime powers p^a with p <= p_max and a <= a_max, sorted by value."""
    if p_max < 2 or a_max < 1:
        raise ValueError("need p_max >= 2 and a_max >= 1")
    qs = [
        PrimePower.of(p, a)
        for p in primes_up_to(p_max)
        for a in range(1, a_max + 1)
    ]
    qs.sort()
    return qs


def scan_all(p_max: int, a_max: int, lines: Optional[list[int]] = None) -> ScanReport:
    """Sieve every applicable (line, q) with p <= p_max, a <= a_max."""
    wanted = set(lines) if lines is not None else set(catalog.LINES)
    outcomes = []
    for q in scan_range(p_max, a_max):
        for case in cases_for(q):
            if case.line in wanted:
                outcomes.append(_scan_instance(case, q))
    outcomes.sort(key=CaseOutcome.sort_key)
    return ScanReport(p_max, a_max, outcomes)


# ---------------------------------------------------------------------------
# Bound-table reproduction.
#
# Tables 4, 6, 7 and 8 are q-range cut-offs derived from divisibility
# inequalities; the inequality expressions are data of this operation and
# are evaluated exactly.
# ---------------------------------------------------------------------------


def _t4_holds(x: int, a: int) -> bool:
    # line 5 cut-off: (q^2-q+1)(q^2+1) < 160*a*q^3
    return (x * x - x + 1) * (x * x + 1) < 160 * a * x**3


def _t6_holds(x: int, a: int) -> bool:
    # line 6 cut-off: (q^3+1)(q+1) < 96*a*q^3
    return (x**3 + 1) * (x + 1) < 96 * a * x**3


def _t7_holds(x: int, a: int) -> bool:
    # line 8, q = 2^a: v-1 < 2*e*a^2*(d(q) + e*a*h(q)) with
    # d(q) = q^4+q^3-q^2-q, h(q) = q^2-1, e = gcd(5, q-2)
    v = x * x * (x**3 + 1)
    e = math.gcd(5, x - 2)
    dq = x**4 + x**3 - x * x - x
    hq = x * x - 1
    return v - 1 < 2 * e * a * a * (dq + e * a * hq)


def _t8_holds(x: int, a: int) -> bool:
    # line 8, q odd: v-1 < 2*a^2*s*(d(q) + 2*a*s*f(q)*h(q)) with
    # d(q) = 8q^3-2q^2-6q, h(q) = 2q^3-2q^2-2q, f(q) = q-1,
    # s = gcd(q+2, 5)*gcd(q-1, 7)
    v = x * x * (x**3 + 1) // 2
    s = math.gcd(x + 2, 5) * math.gcd(x - 1, 7)
    f = x - 1
    dq = 8 * x**3 - 2 * x * x - 6 * x
    hq = 2 * x**3 - 2 * x * x - 2 * x
    return v - 1 < 2 * a * a * s * (dq + 2 * a * s * f * hq)


_A_LIMIT = 64


def _cap(holds, p: int) -> int:
    """Largest a with holds(p^a, a); 0 when even a=1 fails."""
    best = 0
    for a in range(1, _A_LIMIT + 1):
        if holds(p**a, a):
            best = a
    return best


def bound_tables() -> dict[str, dict]:
    """Recompute the golden bound tables from the catalog and inequalities.

    Keys are the table ids used by the ``tables`` CLI command:
      "3" - (v, k-bound) of line 4 at q in {2,3,4,5,8}
      "4" - (p, max a) caps for line 5
      "6" - (p, max a) caps for line 6
      "7" - (q, v, m-bound) rows for line 8 with q = 2^a, 1 < a
      "8" - (p, max a) caps for line 8 with q odd
      "9" - cube-prefilter survivors per fixed-group line
    """
    return copy.deepcopy(_bound_tables_cached())


@lru_cache(maxsize=1)
def _bound_tables_cached() -> dict[str, dict]:
    tables: dict[str, dict] = {}

    rows3 = {}
    for x in (2, 3, 4, 5, 8):
        q = PrimePower.from_value(x)
        case = case_for(4, q)
        rows3[x] = {"v": case.point_count(q), "k_divides": case.k_divisor_bound(q)}
    tables["3"] = {"rows": rows3}

    caps4 = {}
    for p in primes_up_to(10_000):
        c = _cap(_t4_holds, p)
        if c == 0:
            break
        caps4[p] = c
    tables["4"] = {"caps": caps4}

    caps6 = {}
    for p in primes_up_to(10_000):
        c = _cap(_t6_holds, p)
        if c == 0:
            break
        caps6[p] = c
    tables["6"] = {"caps": caps6}

    # the cut-off is one-sided: a_max is the largest exponent where the
    # inequality holds, and every 1 < a <= a_max is tabulated
    a_max7 = _cap(_t7_holds, 2)
    rows7 = {}
    for a in range(2, a_max7 + 1):
        x = 2**a
        rows7[x] = {
            "v": x * x * (x**3 + 1),
            "m_bound": math.gcd(5, x - 2) * a,
        }
    tables["7"] = {"rows": rows7}

    # the s = gcd(q+2,5)*gcd(q-1,7) factor makes pass/fail non-monotone in p,
    # so scan all odd primes below the analytic ceiling ~21000
    caps8 = {}
    for p in primes_up_to(21_000):
        if p == 2:
            continue
        c = _cap(_t8_holds, p)
        if c:
            caps8[p] = c
    tables["8"] = {"caps": caps8}

    lines9 = {}
    for line in range(11, 17):
        passing = []
        for p in primes_up_to(200):
            q = PrimePower.of(p, 1)
            if catalog.cases_for(q) and any(c.line == line for c in catalog.cases_for(q)):
                if cube_prefilter(line, q):
                    passing.append(p)
        lines9[line] = passing
    tables["9"] = {"lines": lines9}

    return tables
