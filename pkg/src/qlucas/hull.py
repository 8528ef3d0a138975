"""Convex hull membership certificates, in a complex slice when the zero
configuration allows it and in the full 4-dimensional space otherwise."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import lsq_linear

from .quaternion import I as UNIT_I, Quaternion, imag_unit
from .roots import ZeroSet

EPS_HULL = 1e-8
_SPHERE_SAMPLES = 200


@dataclass(frozen=True)
class HullCertificate:
    """Convex combination of hull points equal to the query up to slack."""

    points: tuple[Quaternion, ...]
    weights: tuple[float, ...]
    slack: float

    def combination(self) -> Quaternion:
        acc = Quaternion()
        for w, p in zip(self.weights, self.points):
            acc = acc + w * p
        return acc

    def check(self, q: Quaternion, tol: float) -> bool:
        if any(w < -1e-15 for w in self.weights):
            return False
        if abs(sum(self.weights) - 1.0) > 1e-9:
            return False
        return (self.combination() - q).norm() <= tol

    def to_json_dict(self) -> dict:
        return {"points": [p.to_list() for p in self.points],
                "weights": list(self.weights),
                "slack": self.slack}


@dataclass(frozen=True)
class Outside:
    """Non-membership verdict. distance is the gap achieved by the best
    convex combination found, an upper bound on the true distance."""

    distance: float

    def to_json_dict(self) -> dict:
        return {"distance": self.distance}


# ---------------------------------------------------------------------------
# planar machinery


def _cross(o: complex, a: complex, b: complex) -> float:
    return ((a.real - o.real) * (b.imag - o.imag)
            - (a.imag - o.imag) * (b.real - o.real))


def _hull2d(pts: list[complex]) -> list[int]:
    """Indices of hull vertices, counter-clockwise (monotone chain)."""
    order = sorted(range(len(pts)), key=lambda i: (pts[i].real, pts[i].imag))
    uniq: list[int] = []
    for i in order:
        if not uniq or pts[i] != pts[uniq[-1]]:
            uniq.append(i)
    if len(uniq) <= 2:
        return uniq
    lower: list[int] = []
    for i in uniq:
        while len(lower) > 1 and _cross(pts[lower[-2]], pts[lower[-1]],
                                        pts[i]) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(uniq):
        while len(upper) > 1 and _cross(pts[upper[-2]], pts[upper[-1]],
                                        pts[i]) <= 0:
            upper.pop()
        upper.append(i)
    hull = lower[:-1] + upper[:-1]
    # collinear input collapses the chains; the segment endpoints are the
    # lexicographic extremes
    return hull if len(hull) >= 3 else [uniq[0], uniq[-1]]


def _proj_segment(z: complex, a: complex, b: complex):
    d = b - a
    den = abs(d) ** 2
    t = 0.0 if den == 0.0 else ((z - a) * d.conjugate()).real / den
    t = min(1.0, max(0.0, t))
    return t, abs(z - (a + t * d))


def _member2d(z: complex, pts: list[complex], eps: float):
    """Membership of z in conv(pts) with an eps collar.

    Returns (list of (index, weight), slack) or an Outside."""
    hull = _hull2d(pts)
    if len(hull) == 1:
        d = abs(z - pts[hull[0]])
        return ([(hull[0], 1.0)], d) if d <= eps else Outside(d)
    if len(hull) == 2:
        a, b = pts[hull[0]], pts[hull[1]]
        t, d = _proj_segment(z, a, b)
        if d <= eps:
            return ([(hull[0], 1.0 - t), (hull[1], t)], d)
        return Outside(d)

    h = len(hull)
    inside = all(_cross(pts[hull[i]], pts[hull[(i + 1) % h]], z) >= 0.0
                 for i in range(h))
    if inside:
        cert = _fan_certificate(z, pts, hull)
        if cert is not None:
            return cert
    # boundary projection covers both the eps collar and tiny float fuzz
    best = None
    for i in range(h):
        a, b = pts[hull[i]], pts[hull[(i + 1) % h]]
        t, d = _proj_segment(z, a, b)
        if best is None or d < best[0]:
            best = (d, i, t)
    d, i, t = best
    if d <= eps:
        return ([(hull[i], 1.0 - t), (hull[(i + 1) % h], t)], d)
    return Outside(d)


def _fan_certificate(z: complex, pts: list[complex], hull: list[int]):
    o = pts[hull[0]]
    for i in range(1, len(hull) - 1):
        a, b = pts[hull[i]], pts[hull[i + 1]]
        det = _cross(o, a, b)
        if det == 0.0:
            continue
        rz = z - o
        u = (rz.real * (b.imag - o.imag)
             - rz.imag * (b.real - o.real)) / det
        v = ((a.real - o.real) * rz.imag - (a.imag - o.imag) * rz.real) / det
        if u < -1e-9 or v < -1e-9 or u + v > 1.0 + 1e-9:
            continue
        w = [max(0.0, 1.0 - u - v), max(0.0, u), max(0.0, v)]
        tot = sum(w)
        w = [x / tot for x in w]
        comb = w[0] * o + w[1] * a + w[2] * b
        idx = [hull[0], hull[i], hull[i + 1]]
        return (list(zip(idx, w)), abs(comb - z))
    return None


# ---------------------------------------------------------------------------
# public routes


def hull_membership_slice(q: Quaternion, zs: ZeroSet,
                          eps_hull: float = EPS_HULL):
    """Certificate that q lies in the convex hull of the zero set.

    When every isolated zero is real the hull meets the slice through q
    in the planar hull of the real zeros and the pairs x +- I y, so the
    question reduces to exact planar geometry. Otherwise the hull is a
    genuinely 4-dimensional body and the query is delegated to the
    sampled 4-d route.
    """
    if zs.is_empty():
        raise ValueError("membership in the hull of an empty zero set")
    if not zs.is_points_and_spheres():
        return hull_membership_4d(q, zs.points(_SPHERE_SAMPLES), eps_hull)
    im = q.im_norm()
    unit = imag_unit(q) if im > 0.0 else UNIT_I
    zq = complex(q.w, im)
    pts2: list[complex] = []
    qpts: list[Quaternion] = []
    for z in zs.isolated:
        pts2.append(complex(z.point.w, 0.0))
        qpts.append(Quaternion(z.point.w))
    for s in zs.spheres:
        for sign in (1.0, -1.0):
            pts2.append(complex(s.sphere.x, sign * s.sphere.y))
            qpts.append(Quaternion(s.sphere.x) + (sign * s.sphere.y) * unit)
    eps = eps_hull * (1.0 + abs(zq))
    res = _member2d(zq, pts2, eps)
    if isinstance(res, Outside):
        return res
    pairs, slack = res
    return HullCertificate(tuple(qpts[i] for i, _ in pairs),
                           tuple(w for _, w in pairs), float(slack))


def hull_membership_4d(q: Quaternion, points: list[Quaternion],
                       eps_hull: float = EPS_HULL):
    """Certificate that q is a convex combination of the given points.

    Solved as a nonnegative least squares problem on the coordinates
    augmented with a heavily weighted row forcing the weights to sum to
    one, then reduced to at most five support points."""
    if not points:
        raise ValueError("membership in the hull of no points")
    tq = np.array([q.w, q.x, q.y, q.z])
    eps = eps_hull * (1.0 + q.norm())
    arr = np.array([[p.w, p.x, p.y, p.z] for p in points])

    if len(points) == 1:
        d = float(np.linalg.norm(arr[0] - tq))
        if d <= eps:
            return HullCertificate((points[0],), (1.0,), d)
        return Outside(d)
    if len(points) == 2:
        d0 = arr[1] - arr[0]
        den = float(d0 @ d0)
        t = 0.0 if den == 0.0 else float((tq - arr[0]) @ d0) / den
        t = min(1.0, max(0.0, t))
        d = float(np.linalg.norm(arr[0] + t * d0 - tq))
        if d <= eps:
            return HullCertificate(tuple(points), (1.0 - t, t), d)
        return Outside(d)

    # moderate weight on the sum row; the slack is recomputed honestly
    # below, so the verdict never depends on this scaling
    gamma = 10.0 * (1.0 + float(np.max(np.linalg.norm(arr, axis=1)))
                    + q.norm())
    a_mat = np.vstack([arr.T, gamma * np.ones(len(points))])
    b_vec = np.concatenate([tq, [gamma]])
    # the solver steps through invalid values on some exterior queries;
    # the recomputed slack below vouches for whatever it returns
    with np.errstate(invalid="ignore", divide="ignore"):
        lam = lsq_linear(a_mat, b_vec, bounds=(0.0, np.inf), tol=1e-14).x
    total = float(lam.sum())
    if total <= 0.0:
        d = float(np.min(np.linalg.norm(arr - tq, axis=1)))
        return Outside(d)
    lam = lam / total
    slack = float(np.linalg.norm(arr.T @ lam - tq))
    if slack > eps:
        return Outside(slack)
    support = [i for i in range(len(points)) if lam[i] > 1e-13]
    lam_s = _caratheodory(arr, lam.copy(), support)
    idx = [i for i in support if lam_s[i] > 1e-13]
    w = np.array([lam_s[i] for i in idx])
    w = w / w.sum()
    slack = float(np.linalg.norm(arr[idx].T @ w - tq))
    return HullCertificate(tuple(points[i] for i in idx),
                           tuple(float(x) for x in w), slack)


def _caratheodory(arr, lam, support):
    """Zero out weights along affine dependences until at most five
    support points remain. Keeps the combination and the weight sum."""
    support = list(support)
    guard = len(support)
    while len(support) > 5 and guard > 0:
        guard -= 1
        m = np.vstack([arr[support].T, np.ones(len(support))])
        _, _, vh = np.linalg.svd(m)
        v = vh[-1]
        cand = [(lam[i] / v[j], j) for j, i in enumerate(support)
                if v[j] > 1e-12]
        if not cand:
            v = -v
            cand = [(lam[i] / v[j], j) for j, i in enumerate(support)
                    if v[j] > 1e-12]
        if not cand:
            break
        t, jmin = min(cand)
        for j, i in enumerate(support):
            lam[i] -= t * v[j]
            if lam[i] < 0.0:
                lam[i] = 0.0
        lam[support[jmin]] = 0.0
        support = [i for i in support if lam[i] > 1e-13]
    return lam
