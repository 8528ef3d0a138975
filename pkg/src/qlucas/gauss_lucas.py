"""Verification that critical points lie in the convex hull of the zero
set of the symmetrization, plus randomized verification campaigns and
the coefficient-based lower bound on the largest zero modulus."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .hull import (
    EPS_HULL,
    HullCertificate,
    Outside,
    _member2d,
    hull_membership_slice,
)
from .qpoly import QPoly, restrict_to_slice
from .quaternion import (
    I as UNIT_I,
    J as UNIT_J,
    K as UNIT_K,
    Quaternion,
    random_unit_imaginary,
)
from .roots import TAU_ZERO, NumericalBreakdown, ZeroSet, zero_set

_SQ3 = 1.0 / math.sqrt(3.0)
_SQ2 = 1.0 / math.sqrt(2.0)
_DEFAULT_SLICE_UNITS = (
    UNIT_I,
    UNIT_J,
    UNIT_K,
    Quaternion(0.0, _SQ3, _SQ3, _SQ3),
    Quaternion(0.0, _SQ2, 0.0, -_SQ2),
)


@dataclass(frozen=True)
class CriticalPointCheck:
    point: Quaternion
    kind: str  # "isolated" or "sphere"
    certificate: Optional[HullCertificate]
    violation: Optional[Outside]

    @property
    def inside(self) -> bool:
        return self.certificate is not None

    def to_json_dict(self) -> dict:
        d = {"q": self.point.to_list(), "kind": self.kind}
        if self.certificate is not None:
            d["certificate"] = self.certificate.to_json_dict()
        else:
            d["violation"] = self.violation.to_json_dict()
        return d


@dataclass(frozen=True)
class GLReport:
    verified: bool
    degree: int
    zeros: ZeroSet
    critical: ZeroSet
    checks: tuple[CriticalPointCheck, ...]
    eps_hull: float
    tau_zero: float
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "verdict": "verified" if self.verified else "violated",
            "degree": self.degree,
            "tolerances": {"eps_hull": self.eps_hull,
                           "tau_zero": self.tau_zero},
            "seed": self.seed,
            "zeros": self.zeros.to_json_dict(),
            "critical_points": [c.to_json_dict() for c in self.checks],
        }


def _sphere_representatives(x: float, y: float, rng: random.Random):
    reps = [Quaternion(x, y, 0.0, 0.0), Quaternion(x, -y, 0.0, 0.0)]
    u = random_unit_imaginary(rng)
    reps.append(Quaternion(x) + y * u)
    return reps


def _run_checks(hull_zeros: ZeroSet, crit: ZeroSet, eps_hull: float,
                rng: random.Random):
    checks: list[CriticalPointCheck] = []
    for z in crit.isolated:
        res = hull_membership_slice(z.point, hull_zeros, eps_hull)
        if isinstance(res, Outside):
            checks.append(CriticalPointCheck(z.point, "isolated", None, res))
        else:
            checks.append(CriticalPointCheck(z.point, "isolated", res, None))
    for s in crit.spheres:
        for rep in _sphere_representatives(s.sphere.x, s.sphere.y, rng):
            res = hull_membership_slice(rep, hull_zeros, eps_hull)
            if isinstance(res, Outside):
                checks.append(CriticalPointCheck(rep, "sphere", None, res))
            else:
                checks.append(CriticalPointCheck(rep, "sphere", res, None))
    return checks


def verify_gauss_lucas(p: QPoly, eps_hull: float = EPS_HULL,
                       tau_zero: float = TAU_ZERO,
                       seed: int = 0) -> GLReport:
    """Check that every zero of p' lies in the convex hull of the zero
    set of the symmetrization p^s, within an eps_hull collar.

    Isolated critical zeros are checked directly; critical spheres are
    checked at x +- iy and at one randomly drawn representative, which
    suffices because the hull of the (rotationally closed) zero set of
    p^s meets each candidate sphere either fully or not at all.
    """
    if p.is_zero or p.degree < 2:
        raise ValueError("verification needs a polynomial of degree >= 2")
    rng = random.Random(seed)
    zeros = zero_set(p.symmetrize(), tau_zero)
    crit = zero_set(p.derivative(), tau_zero)
    checks = _run_checks(zeros, crit, eps_hull, rng)
    verified = all(c.inside for c in checks)
    return GLReport(verified, p.degree, zeros, crit, tuple(checks),
                    eps_hull, tau_zero, seed)


def verify_real_case(p: QPoly, eps_hull: float = EPS_HULL,
                     tau_zero: float = TAU_ZERO, seed: int = 0) -> GLReport:
    """Variant for real-coefficient p: the hull is taken over the zero
    set of p itself, matching the classical statement."""
    if not p.is_real():
        raise ValueError("verify_real_case needs real coefficients")
    if p.is_zero or p.degree < 2:
        raise ValueError("verification needs a polynomial of degree >= 2")
    rng = random.Random(seed)
    zeros = zero_set(p, tau_zero)
    crit = zero_set(p.derivative(), tau_zero)
    checks = _run_checks(zeros, crit, eps_hull, rng)
    verified = all(c.inside for c in checks)
    return GLReport(verified, p.degree, zeros, crit, tuple(checks),
                    eps_hull, tau_zero, seed)


# ---------------------------------------------------------------------------
# slice-by-slice cross-check


def _trim_c(arr: np.ndarray) -> np.ndarray:
    if arr.size == 0:
        return arr
    top = float(np.max(np.abs(arr)))
    if top == 0.0:
        return arr[:0]
    keep = arr.size
    while keep > 0 and abs(arr[keep - 1]) <= 1e-12 * top:
        keep -= 1
    return arr[:keep]


def _slice_scale(coeffs, r: float) -> float:
    return float(sum(abs(c) * (1.0 + r) ** n for n, c in enumerate(coeffs)))


def _slice_critical(sp) -> list[complex]:
    """Common roots of the two component derivatives on the slice."""
    d1 = _trim_c(np.polynomial.polynomial.polyder(np.asarray(sp.p1,
                                                             dtype=complex)))
    d2 = _trim_c(np.polynomial.polynomial.polyder(np.asarray(sp.p2,
                                                             dtype=complex)))
    if d1.size == 0 and d2.size == 0:
        return []
    primary, other = (d1, d2) if d1.size >= d2.size else (d2, d1)
    if primary.size < 2:
        return []
    out = []
    for z in np.atleast_1d(np.roots(primary[::-1])):
        z = complex(z)
        if other.size == 0 or (abs(np.polynomial.polynomial.polyval(z, other))
                               <= 1e-8 * _slice_scale(other, abs(z))):
            out.append(z)
    out.sort(key=lambda w: (w.real, w.imag))
    return out


def slice_equivalence_check(p: QPoly, units=None,
                            eps_hull: float = EPS_HULL,
                            tau_zero: float = TAU_ZERO) -> dict:
    """Cross-check the verification slice by slice.

    On each sampled slice the critical points are the common roots of
    the derivatives of the two slice components, and the hull is the
    planar hull of the real zeros and the sphere trace points x +- iy.
    The per-slice verdicts must agree with verify_gauss_lucas.
    """
    if p.is_zero or p.degree < 2:
        raise ValueError("slice check needs a polynomial of degree >= 2")
    if units is None:
        units = _DEFAULT_SLICE_UNITS
    zeros = zero_set(p.symmetrize(), tau_zero)
    pts2 = [complex(z.point.w, 0.0) for z in zeros.isolated]
    for s in zeros.spheres:
        pts2.append(complex(s.sphere.x, s.sphere.y))
        pts2.append(complex(s.sphere.x, -s.sphere.y))

    reference = verify_gauss_lucas(p, eps_hull, tau_zero)
    slices = []
    all_inside = True
    for u in units:
        sp = restrict_to_slice(p, u)
        crits = _slice_critical(sp)
        inside = True
        worst = 0.0
        for z in crits:
            res = _member2d(z, pts2, eps_hull * (1.0 + abs(z)))
            if isinstance(res, Outside):
                inside = False
                worst = max(worst, res.distance)
        all_inside = all_inside and inside
        slices.append({"unit": u.to_list(), "critical_count": len(crits),
                       "inside": inside, "worst_distance": worst})
    return {
        "slices": slices,
        "all_slices_inside": all_inside,
        "reference_verified": reference.verified,
        "consistent": all_inside == reference.verified,
    }


# ---------------------------------------------------------------------------
# coefficient bound


def modulus_lower_bound_details(p: QPoly) -> dict:
    """Lower bound on the largest zero modulus from the coefficients of
    the symmetrization b_0 + ... + b_2m z^2m:

        max over 0 < n < 2m of (|b_{2m-n}| / (C(2m, n) |b_{2m}|))^(1/n)
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("bound needs a polynomial of degree >= 1")
    ps = p.symmetrize()
    b = ps.real_coeffs()
    two_m = len(b) - 1
    lead = abs(b[-1])
    best, best_n = 0.0, 0
    for n in range(1, two_m):
        num = abs(b[two_m - n])
        if num == 0.0:
            continue
        val = (num / (math.comb(two_m, n) * lead)) ** (1.0 / n)
        if val > best:
            best, best_n = val, n
    zs = zero_set(p)
    return {
        "bound": best,
        "n": best_n,
        "sym_degree": two_m,
        "observed_max_modulus": zs.max_modulus(),
    }


def modulus_lower_bound(p: QPoly) -> float:
    return modulus_lower_bound_details(p)["bound"]


# ---------------------------------------------------------------------------
# randomized campaigns


def random_quaternion_ball(rng: random.Random,
                           radius: float = 1.0) -> Quaternion:
    while True:
        v = [rng.uniform(-1.0, 1.0) for _ in range(4)]
        if sum(x * x for x in v) <= 1.0:
            return Quaternion(*(radius * x for x in v))


def random_factored_poly(rng: random.Random, degree_range=(2, 6),
                         radius: float = 5.0) -> QPoly:
    """Star product of random linear factors (q - a_i), so the a_i are
    zeros by construction of the leftmost factor and the zero structure
    is generically rich."""
    deg = rng.randint(*degree_range)
    acc = QPoly([1.0])
    for _ in range(deg):
        a = random_quaternion_ball(rng, radius)
        acc = acc * QPoly([-a, Quaternion(1.0)])
    return acc


def random_real_poly(rng: random.Random, degree_range=(2, 8)) -> QPoly:
    deg = rng.randint(*degree_range)
    coeffs = [rng.uniform(-3.0, 3.0) for _ in range(deg)]
    lead = 0.0
    while abs(lead) < 0.1:
        lead = rng.uniform(-3.0, 3.0)
    coeffs.append(lead)
    return QPoly(coeffs)


def run_verification_campaign(seed: int, trials: int,
                              eps_hull: float = 1e-6,
                              tau_zero: float = TAU_ZERO,
                              kind: str = "mixed") -> dict:
    """Run `trials` randomized verifications.

    kind selects the polynomial population: "factored" draws star
    products of random linear factors and checks against the hull of
    the symmetrization zeros, "real" draws real-coefficient polynomials
    and checks against the hull of their own zeros, "mixed" alternates
    randomly. Each trial draws its own generator from (seed, index), so
    the campaign is reproducible and insensitive to trial count changes.
    """
    if kind not in ("mixed", "factored", "real"):
        raise ValueError(f"unknown campaign kind {kind!r}")
    failures = []
    breakdowns = []
    for idx in range(trials):
        rng = random.Random(f"{seed}:{idx}")
        if kind == "mixed":
            factored = rng.random() < 0.7
        else:
            factored = kind == "factored"
        trial_kind = "factored" if factored else "real"
        try:
            if factored:
                p = random_factored_poly(rng)
                rep = verify_gauss_lucas(p, eps_hull, tau_zero, seed=idx)
            else:
                p = random_real_poly(rng)
                rep = verify_real_case(p, eps_hull, tau_zero, seed=idx)
            if not rep.verified:
                worst = max((c.violation.distance for c in rep.checks
                             if c.violation is not None), default=0.0)
                failures.append({
                    "trial": idx,
                    "kind": trial_kind,
                    "coeffs": [c.to_list() for c in p.coeffs],
                    "worst_distance": worst,
                })
        except NumericalBreakdown as ex:
            breakdowns.append({"trial": idx, "kind": trial_kind,
                               "reason": str(ex)})
        except ValueError as ex:
            breakdowns.append({"trial": idx, "kind": trial_kind,
                               "reason": "degenerate draw: " + str(ex)})
    return {
        "seed": seed,
        "trials": trials,
        "kind": kind,
        "eps_hull": eps_hull,
        "tau_zero": tau_zero,
        "verified": trials - len(failures) - len(breakdowns),
        "failures": failures,
        "breakdowns": breakdowns,
    }
