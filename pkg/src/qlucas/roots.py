"""Complex root extraction with multiplicities, and classification of the
zeros of a quaternionic polynomial into real points, isolated points, and
whole 2-spheres."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quaternion import (
    I as UNIT_I,
    J as UNIT_J,
    K as UNIT_K,
    Quaternion,
    TAU_UNIT,
    TwoSphere,
    is_unit_imaginary,
)
from .qpoly import QPoly, TAU_REAL

TAU_CLUSTER = 1e-6
TAU_ROOT = 1e-8
TAU_ZERO = 1e-8

# Companion-matrix eigenvalues of an exact m-fold root scatter like
# eps^(1/m): ~1e-8 for doubles but ~6e-6 for triples and ~2e-4 for
# quadruples, far outside TAU_CLUSTER. Merging beyond the base radius is
# therefore attempted down a ladder of radii and accepted only when the
# merged interpretation is backward-stable: all derivatives below the
# hypothesized multiplicity must vanish at the polished center within
# _TAU_VALIDATE of their magnitude bound. Two genuinely distinct roots
# fail that test unless they are within ~TAU_CLUSTER of each other, in
# which case merging is the contract anyway.
_RADII = (2e-2, 2e-3, 2e-4, 2e-5)
_TAU_VALIDATE = 1e-12
_IM_SNAP = 1e-12


class NumericalBreakdown(RuntimeError):
    """A numeric step violated an invariant that exact arithmetic
    guarantees. Carries diagnostics in .info."""

    def __init__(self, message: str, **info):
        super().__init__(message)
        self.info = info


@dataclass(frozen=True)
class RootCluster:
    center: complex
    multiplicity: int
    residual: float


def _polyval(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _scale_at(coeffs, z) -> float:
    base = 1.0 + abs(z)
    s = 0.0
    p = 1.0
    for c in coeffs:
        s += abs(c) * p
        p *= base
    return s


def _derivs(coeffs: np.ndarray) -> list[np.ndarray]:
    out = [coeffs]
    cur = coeffs
    while len(cur) > 1:
        cur = cur[1:] * np.arange(1, len(cur))
        out.append(cur)
    out.append(np.zeros(1, dtype=coeffs.dtype))
    return out


def _newton(derivs, order: int, z0: complex, max_iter: int = 80) -> complex:
    """Newton on the order-th derivative, where the hypothesized root is
    simple. Returns the start point if the iteration wanders."""
    d = derivs[min(order, len(derivs) - 1)]
    dp = derivs[min(order + 1, len(derivs) - 1)]
    z = z0
    for _ in range(max_iter):
        fp = _polyval(dp, z)
        if fp == 0:
            break
        step = _polyval(d, z) / fp
        z = z - step
        if abs(step) <= 1e-16 * (1.0 + abs(z)):
            break
    if not (abs(z - z0) <= 0.1 * (1.0 + abs(z0))):
        return z0
    return z


def _validated(derivs, z: complex, mu: int) -> bool:
    for j in range(mu):
        dj = derivs[min(j, len(derivs) - 1)]
        if abs(_polyval(dj, z)) > _TAU_VALIDATE * _scale_at(dj, z):
            return False
    return True


def _components(items, radius_rel: float):
    """Single-linkage components; edge when the gap is within the
    relative radius. Deterministic given the input order."""
    n = len(items)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        zi = items[i][0]
        for j in range(i + 1, n):
            zj = items[j][0]
            lim = 1.0 + max(abs(zi), abs(zj))
            if abs(zi - zj) <= radius_rel * lim:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(items[i])
    return [groups[k] for k in sorted(groups)]


def _centroid(group):
    m = sum(g[1] for g in group)
    z = sum(g[0] * g[1] for g in group) / m
    return z, m


def _agglomerate(items, derivs, tau_cluster: float):
    def rec(group, level):
        if len(group) == 1:
            return [group[0]]
        if level >= len(_RADII):
            # base radius: merging is mandated, no validation
            out = []
            for comp in _components(group, tau_cluster):
                z, m = _centroid(comp)
                out.append([z, m])
            return out
        radius = _RADII[level]
        out = []
        for comp in _components(group, radius):
            if len(comp) == 1:
                out.append(comp[0])
                continue
            z0, m = _centroid(comp)
            zp = _newton(derivs, m - 1, z0)
            if (abs(zp - z0) <= radius * (1.0 + abs(z0))
                    and _validated(derivs, zp, m)):
                out.append([zp, m])
            else:
                out.extend(rec(comp, level + 1))
        return out

    return rec(items, 0)


def complex_roots(coeffs, tau_cluster: float = TAU_CLUSTER,
                  tau_root: float = TAU_ROOT) -> list[RootCluster]:
    """All roots of a complex-coefficient polynomial with multiplicities.

    Ascending coefficients. Companion-matrix eigenvalues, agglomerative
    cluster merging (see note above), Newton polishing on the
    (multiplicity-1)-th derivative, and for real input conjugate closure
    enforced by exact pair symmetrization.
    """
    c = np.asarray(list(coeffs), dtype=complex)
    if c.size:
        top = float(np.max(np.abs(c)))
        keep = c.size
        while keep > 0 and abs(c[keep - 1]) <= 1e-12 * top:
            keep -= 1
        c = c[:keep]
    if c.size < 2:
        raise ValueError("root finding needs degree >= 1 after trimming")
    deg = c.size - 1
    top = float(np.max(np.abs(c)))
    is_real = float(np.max(np.abs(c.imag))) <= 1e-13 * top
    if is_real:
        c = c.real.astype(float) + 0j
        raw = np.roots(c.real[::-1])
    else:
        raw = np.roots(c[::-1])
    raw = np.atleast_1d(raw).astype(complex)
    derivs = _derivs(c)

    items = sorted(([complex(z), 1] for z in raw),
                   key=lambda it: (it[0].real, it[0].imag))
    clusters = _agglomerate(items, derivs, tau_cluster)
    clusters = [[_newton(derivs, m - 1, z), m] for z, m in clusters]

    if is_real:
        clusters = _enforce_conjugate_closure(clusters)

    out = []
    for z, m in sorted(clusters, key=lambda it: (it[0].real, it[0].imag)):
        z = complex(z)
        res = float(abs(_polyval(c, z))) / _scale_at(c, z)
        if res > tau_root:
            raise NumericalBreakdown(
                "root residual above tolerance",
                center=z, multiplicity=m, residual=res)
        out.append(RootCluster(z, m, res))
    if sum(r.multiplicity for r in out) != deg:
        raise NumericalBreakdown("multiplicities do not sum to the degree",
                                 degree=deg,
                                 found=sum(r.multiplicity for r in out))
    return out


def _enforce_conjugate_closure(clusters):
    """Snap near-axis centers to the real axis and average each
    conjugate pair of clusters so the multiset is exactly closed."""
    reals = []
    pos = []
    neg = []
    for z, m in clusters:
        if abs(z.imag) <= _IM_SNAP * (1.0 + abs(z)):
            reals.append([complex(z.real, 0.0), m])
        elif z.imag > 0:
            pos.append([z, m])
        else:
            neg.append([z, m])
    if len(pos) != len(neg):
        raise NumericalBreakdown(
            "conjugate pairing failed for a real polynomial",
            unpaired=len(pos) - len(neg))
    pos.sort(key=lambda it: (it[0].real, it[0].imag))
    neg.sort(key=lambda it: (it[0].real, -it[0].imag))
    out = list(reals)
    for (zp, mp), (zn, mn) in zip(pos, neg):
        lim = 1.0 + abs(zp)
        if mp != mn or abs(zp - zn.conjugate()) > 1e-9 * lim:
            raise NumericalBreakdown(
                "conjugate pairing failed for a real polynomial",
                upper=zp, lower=zn)
        z = (zp + zn.conjugate()) / 2
        out.append([z, mp])
        out.append([z.conjugate(), mp])
    return out


# ---------------------------------------------------------------------------
# quaternionic zero sets


_SQ2 = 1.0 / math.sqrt(2.0)
_SQ3 = 1.0 / math.sqrt(3.0)
_SAMPLE_UNITS = (
    UNIT_I,
    UNIT_J,
    UNIT_K,
    Quaternion(0.0, _SQ2, _SQ2, 0.0),
    Quaternion(0.0, _SQ3, -_SQ3, _SQ3),
)


@dataclass(frozen=True)
class IsolatedZero:
    point: Quaternion
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class SphereZero:
    sphere: TwoSphere
    multiplicity: int
    residual: float


@dataclass(frozen=True)
class ZeroSet:
    """Classified zeros: real zeros sit in `isolated` with zero vector
    part; spheres all have y > 0. Multiplicities satisfy
    sum(isolated) + 2 sum(spheres) = degree of the analyzed polynomial."""

    isolated: tuple[IsolatedZero, ...]
    spheres: tuple[SphereZero, ...]
    source_degree: int

    def zero_count(self) -> int:
        return (sum(z.multiplicity for z in self.isolated)
                + 2 * sum(s.multiplicity for s in self.spheres))

    def is_empty(self) -> bool:
        return not self.isolated and not self.spheres

    def is_points_and_spheres(self, tol: float = TAU_UNIT) -> bool:
        """True when every isolated zero is real (no off-axis points)."""
        return all(z.point.im_norm() <= tol for z in self.isolated)

    def points(self, samples_per_sphere: int = 50) -> list[Quaternion]:
        pts = [z.point for z in self.isolated]
        for s in self.spheres:
            pts.extend(s.sphere.sample(samples_per_sphere))
        return pts

    def max_modulus(self) -> float:
        vals = [z.point.norm() for z in self.isolated]
        vals += [math.hypot(s.sphere.x, s.sphere.y) for s in self.spheres]
        return max(vals, default=0.0)

    def to_json_dict(self) -> dict:
        return {
            "isolated": [{"q": z.point.to_list(), "mult": z.multiplicity,
                          "residual": z.residual} for z in self.isolated],
            "spheres": [{"x": s.sphere.x, "y": s.sphere.y,
                         "mult": s.multiplicity, "residual": s.residual}
                        for s in self.spheres],
        }


def _sphere_residual(p: QPoly, s: TwoSphere) -> float:
    worst = 0.0
    for u in _SAMPLE_UNITS:
        q = s.representative(u)
        worst = max(worst, p.evaluate(q).norm() / p.eval_scale(q.norm()))
    return worst


def classify_sphere(p: QPoly, s: TwoSphere, tau_zero: float = TAU_ZERO,
                    tau_unit: float = TAU_UNIT):
    """Classify a candidate sphere of zeros of p.

    Returns ("spherical", None), ("isolated", point) or
    ("not_a_zero", None).

    On [x + Iy] the polynomial takes the form P(x + Ky) = a + K b with a,
    b independent of K, recovered from the two evaluations
    A = P(x + iy), B = P(x - iy) as a = (A+B)/2, b = i (B-A)/2. Both
    vanishing means the whole sphere is zeros; otherwise the only
    candidate zero is at K = -a b^{-1}, valid when K is unit imaginary.
    """
    if s.y <= 0.0:
        q = Quaternion(s.x)
        if p.evaluate(q).norm() <= tau_zero * p.eval_scale(abs(s.x)):
            return ("isolated", q)
        return ("not_a_zero", None)
    zp = s.representative(UNIT_I)
    zm = s.representative(-UNIT_I)
    va = p.evaluate(zp)
    vb = p.evaluate(zm)
    a = (va + vb) / 2.0
    b = (UNIT_I * (vb - va)) / 2.0
    scale = p.eval_scale(zp.norm())
    if a.norm() <= tau_zero * scale and b.norm() <= tau_zero * scale:
        return ("spherical", None)
    if b.norm() > tau_zero * scale:
        k = -(a * b.inverse())
        if is_unit_imaginary(k, tau_unit):
            return ("isolated", s.representative(k))
    return ("not_a_zero", None)


def zero_set(p: QPoly, tau_zero: float = TAU_ZERO) -> ZeroSet:
    """Full zero set of p with multiplicities.

    Route: roots of the symmetrization P^s on C(i); real roots are real
    zeros (half the P^s multiplicity), conjugate pairs are candidate
    spheres classified by classify_sphere. Real-coefficient input skips
    the symmetrization: its own real roots and conjugate pairs already
    are the real zeros and the (always spherical) zero spheres.
    """
    if p.is_zero or p.degree < 1:
        raise ValueError("zero_set needs a polynomial of degree >= 1")
    if p.is_real():
        return _zero_set_real(p, tau_zero)

    ps = p.symmetrize()
    resid = ps.max_imag_norm()
    bound = TAU_REAL * (1.0 + p.max_coeff_norm() ** 2)
    if resid > bound:
        raise NumericalBreakdown(
            "symmetrization has a non-real coefficient residue",
            residue=resid, bound=bound)
    clusters = complex_roots(ps.real_coeffs())

    isolated: list[IsolatedZero] = []
    spheres: list[SphereZero] = []
    for cl in clusters:
        if cl.center.imag < 0:
            continue
        if cl.center.imag == 0:
            x, mu = cl.center.real, cl.multiplicity
            if mu % 2:
                raise NumericalBreakdown(
                    "odd multiplicity at a real root of the symmetrization",
                    x=x, multiplicity=mu)
            q = Quaternion(x)
            res = p.evaluate(q).norm() / p.eval_scale(abs(x))
            if res > tau_zero:
                raise NumericalBreakdown(
                    "real root of the symmetrization is not a zero",
                    x=x, residual=res)
            isolated.append(IsolatedZero(q, mu // 2, res))
            continue
        s = TwoSphere(cl.center.real, cl.center.imag)
        t = cl.multiplicity
        kind, pt = classify_sphere(p, s, tau_zero)
        if kind == "spherical":
            if t % 2:
                raise NumericalBreakdown(
                    "odd multiplicity at a spherical zero",
                    sphere=(s.x, s.y), multiplicity=t)
            spheres.append(SphereZero(s, t // 2, _sphere_residual(p, s)))
        elif kind == "isolated":
            res = p.evaluate(pt).norm() / p.eval_scale(pt.norm())
            if res > tau_zero:
                raise NumericalBreakdown(
                    "classified isolated zero fails its residual bound",
                    point=pt.to_list(), residual=res)
            isolated.append(IsolatedZero(pt, t, res))
        else:
            raise NumericalBreakdown(
                "sphere of the symmetrization carries no zero of p",
                sphere=(s.x, s.y), multiplicity=t)
    return _assemble(p, isolated, spheres)


def _zero_set_real(p: QPoly, tau_zero: float) -> ZeroSet:
    clusters = complex_roots(p.real_coeffs())
    isolated: list[IsolatedZero] = []
    spheres: list[SphereZero] = []
    for cl in clusters:
        if cl.center.imag < 0:
            continue
        if cl.center.imag == 0:
            q = Quaternion(cl.center.real)
            res = p.evaluate(q).norm() / p.eval_scale(abs(cl.center.real))
            isolated.append(IsolatedZero(q, cl.multiplicity, res))
        else:
            s = TwoSphere(cl.center.real, cl.center.imag)
            spheres.append(
                SphereZero(s, cl.multiplicity, _sphere_residual(p, s)))
    return _assemble(p, isolated, spheres)


def _assemble(p: QPoly, isolated, spheres) -> ZeroSet:
    isolated.sort(key=lambda z: (z.point.w, z.point.x, z.point.y, z.point.z))
    spheres.sort(key=lambda s: (s.sphere.x, s.sphere.y))
    zs = ZeroSet(tuple(isolated), tuple(spheres), p.degree)
    if zs.zero_count() != p.degree:
        raise NumericalBreakdown(
            "zero multiplicities do not account for the degree",
            degree=p.degree, counted=zs.zero_count())
    return zs


def critical_points(p: QPoly, tau_zero: float = TAU_ZERO) -> ZeroSet:
    """Zero set of the derivative. Empty for degree-1 input."""
    if p.is_zero or p.degree < 1:
        raise ValueError("critical_points needs degree >= 1")
    if p.degree == 1:
        return ZeroSet((), (), 0)
    return zero_set(p.derivative(), tau_zero)
