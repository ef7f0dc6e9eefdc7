"""Holomorphic differentials on the spectral curve and angle coordinates.

For the basis monomial with exponent e of an invariant of degree d, the
differential is

    x^e lambda^(n-d) dx / (dR/dlambda * y)   (even kind)
    x^e lambda^(n-d) dx / (dR/dlambda)       (odd kind)

i.e. ``m(x, y) lambda^(n-d) dx / (dR/dlambda * y)`` in both cases. Angle
coordinates are sums over the configuration of Abel integrals of these
differentials. Integrals are taken along polylines in the x-plane while y
and lambda are continued jointly; the polyline for each point is fixed by a
deterministic routing policy so that nearby configurations use homotopic
paths.

The factor 2 in dR/dlambda = 2 lambda (sl(2)) is kept. Angles normalised as
``sum int x^k dx / (lambda y)`` are twice these; see :func:`to_intro_angles`.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

import numpy as np

from .actions import PhaseConfiguration, solve_actions
from .curve import SheetPoint, y_continuation_step
from .errors import (
    LambdaCollision,
    NonConvergence,
    OnRamification,
    PathInstability,
    SheetAmbiguity,
)
from .family import BasisMonomial, SpectralCurve, SpectralPoint, _values, horner, lambda_poly_batch
from .quadrature import integrate

DifferentialIndex = BasisMonomial

RAMIFICATION_TOL = 1e-13
COLLISION_TOL = 1e-7


# ---------------------------------------------------------------------------
# differentials


def local_partials(sc: SpectralCurve, x, y, lam):
    """R and its partials along the spectral curve: R, R_x, R_lam, R_lamlam, R_lamx.

    x-derivatives are total derivatives along the base curve (y = y(x)).
    """
    layout = sc.layout
    h = sc.H
    n = layout.n
    pw = layout.lambda_powers
    m = layout.basis_values(x, y)
    dydx = sc.curve.dP(x) / (2 * y)
    dm = layout.basis_dx(x, y) + layout.basis_dy(x, y) * dydx
    p = lam**pw
    dp = np.where(pw >= 1, pw * lam ** np.maximum(pw - 1, 0), 0)
    ddp = np.where(pw >= 2, pw * (pw - 1) * lam ** np.maximum(pw - 2, 0), 0)
    R = lam**n + np.sum(h * m * p)
    Rx = np.sum(h * dm * p)
    Rl = n * lam ** (n - 1) + np.sum(h * m * dp)
    Rll = n * (n - 1) * lam ** (n - 2) + np.sum(h * m * ddp)
    Rlx = np.sum(h * dm * dp)
    return complex(R), complex(Rx), complex(Rl), complex(Rll), complex(Rlx)


def _dlambda_scale(sc: SpectralCurve, x, y, lam):
    c = sc.poly(x, y)
    k = np.arange(len(c) - 1, 0, -1)
    return float(np.sum(np.abs(c[:-1]) * k * abs(lam) ** (k - 1)))


def differential_values(sc: SpectralCurve, x, y, lam) -> np.ndarray:
    """Densities (against dx) of all N differentials at a point of the spectral curve."""
    layout = sc.layout
    rl = sc.dR_dlambda(x, y, lam)
    if abs(y) ** 2 <= RAMIFICATION_TOL * sc.curve.scale(x):
        raise OnRamification(f"y = {y:.3g} vanishes at x = {x}")
    if abs(rl) <= RAMIFICATION_TOL * _dlambda_scale(sc, x, y, lam):
        raise OnRamification(f"dR/dlambda = {rl:.3g} vanishes at x = {x}, lambda = {lam}")
    num = np.asarray(x, dtype=complex) ** layout.exponents * lam**layout.lambda_powers
    return num / (rl * np.where(layout.is_odd, 1.0, y))


def differential_values_batch(sc: SpectralCurve, x, y, lam) -> np.ndarray:
    """:func:`differential_values` over arrays of points (no ramification checks)."""
    layout = sc.layout
    c = lambda_poly_batch(layout, sc.H, x, y)
    _, rl = horner(c, lam)
    x, y, lam = (np.asarray(v, dtype=complex)[..., None] for v in (x, y, lam))
    num = x**layout.exponents * lam**layout.lambda_powers
    return num / (rl[..., None] * np.where(layout.is_odd, 1.0, y))


def differential_value(idx, curve, layout, H, pt: SpectralPoint) -> complex:
    """Density of one differential; ``idx`` is a :class:`BasisMonomial` or a column number."""
    sc = SpectralCurve(curve, layout, _values(H, layout))
    col = layout.monomials.index(idx) if isinstance(idx, BasisMonomial) else int(idx)
    return complex(differential_values(sc, pt.x, pt.y, pt.lam)[col])


def to_intro_angles(values, spec):
    """Rescale sl(2) angles to the ``int x^k dx / (lambda y)`` normalisation."""
    if spec.series != "A" or spec.rank != 1:
        raise ValueError("the rescaling is only defined for sl(2)")
    return 2 * np.asarray(values)


# ---------------------------------------------------------------------------
# branch points of the spectral cover


def discriminant_degree(sc: SpectralCurve) -> int:
    """Degree bound in x of disc(R(x, y, .)) * disc(R(x, -y, .))."""
    n = sc.n
    return 2 * (sc.curve.genus - 1) * n * (n - 1)


def _disc(roots):
    d = roots[:, None] - roots[None, :]
    iu = np.triu_indices(len(roots), 1)
    return np.prod(d[iu] ** 2)


def discriminant_norm_poly(sc: SpectralCurve, radius=None) -> np.ndarray:
    """Coefficients (highest first) of the product of the lambda-discriminants on both sheets.

    The product is invariant under y -> -y, hence a polynomial in x. It is
    recovered by sampling on a circle and an inverse FFT.
    """
    D = discriminant_degree(sc)
    radius = 1.0 + sc.curve.radius if radius is None else radius
    M = 1 << int(np.ceil(np.log2(2 * (D + 1))))
    xs = radius * np.exp(2j * np.pi * np.arange(M) / M)
    vals = np.empty(M, dtype=complex)
    for k, x in enumerate(xs):
        y = np.sqrt(complex(sc.curve.P(x)))
        vals[k] = _disc(sc.roots(x, y)) * _disc(sc.roots(x, -y))
    c = np.fft.fft(vals) / M / radius ** np.arange(M)
    c = c[: D + 1]
    big = np.max(np.abs(c * radius ** np.arange(D + 1)))
    keep = np.flatnonzero(np.abs(c * radius ** np.arange(D + 1)) > 1e-11 * big)
    if keep.size == 0:
        return np.zeros(1, dtype=complex)
    return c[: keep[-1] + 1][::-1]


def spectral_branch_projections(sc: SpectralCurve) -> np.ndarray:
    """x-coordinates over which the lambda-cover ramifies (on either y-sheet), deduplicated."""
    c = discriminant_norm_poly(sc)
    if len(c) <= 1:
        return np.empty(0, dtype=complex)
    xs = np.roots(c)
    # the y -> -y symmetric part of the product gives double roots, which
    # split by ~sqrt(eps); merge clusters and keep their centre
    tol = 1e-4 * (1 + sc.curve.radius)
    clusters = []
    for x in sorted(xs, key=lambda z: (round(z.real, 6), round(z.imag, 6))):
        for cl in clusters:
            if abs(x - np.mean(cl)) <= tol:
                cl.append(complex(x))
                break
        else:
            clusters.append([complex(x)])
    return np.array([np.mean(cl) for cl in clusters], dtype=complex)


def refine_branch_point(sc: SpectralCurve, x, y, lam, iters=30) -> SpectralPoint:
    """Newton on (R, dR/dlambda) = 0 in (x, lambda), y following its sheet."""
    pt = SheetPoint(complex(x), complex(y))
    lam = complex(lam)
    for _ in range(iters):
        R, Rx, Rl, Rll, Rlx = local_partials(sc, pt.x, pt.y, lam)
        J = np.array([[Rx, Rl], [Rlx, Rll]])
        try:
            dx, dl = np.linalg.solve(J, [-R, -Rl])
        except np.linalg.LinAlgError as exc:
            raise NonConvergence("singular Jacobian while refining a branch point") from exc
        root = np.sqrt(complex(sc.curve.P(pt.x + dx)))
        y_new = root if abs(root - pt.y) <= abs(root + pt.y) else -root
        pt = SheetPoint(pt.x + dx, y_new)
        lam += dl
        if abs(dx) <= 1e-14 * (1 + abs(pt.x)) and abs(dl) <= 1e-14 * (1 + abs(lam)):
            break
    return SpectralPoint(pt.x, pt.y, lam)


def spectral_branch_points(sc: SpectralCurve, min_base_distance=None) -> list:
    """Simple finite ramification points of the lambda-cover away from y = 0.

    Each returned point satisfies R = dR/dlambda = 0 with d^2R/dlambda^2 and
    dR/dx non-zero.
    """
    bps = sc.curve.branch_points()
    if min_base_distance is None:
        min_base_distance = 1e-3 * (1 + sc.curve.radius)
    found = []
    for x in spectral_branch_projections(sc):
        if np.min(np.abs(bps - x)) < min_base_distance:
            continue
        y0 = np.sqrt(complex(sc.curve.P(x)))
        for y in (y0, -y0):
            roots = sc.roots(x, y)
            d = np.abs(roots[:, None] - roots[None, :]) + np.diag(np.full(len(roots), np.inf))
            i, j = np.unravel_index(np.argmin(d), d.shape)
            if d[i, j] > 0.1 * (1 + np.max(np.abs(roots))):
                continue
            try:
                bp = refine_branch_point(sc, x, y, 0.5 * (roots[i] + roots[j]))
            except NonConvergence:
                continue
            R, Rx, Rl, Rll, _ = local_partials(sc, bp.x, bp.y, bp.lam)
            s = sc.scale(bp.x, bp.y, bp.lam)
            if abs(R) > 1e-10 * s or abs(Rl) > 1e-8 * _dlambda_scale(sc, bp.x, bp.y, bp.lam):
                continue
            if abs(Rll) < 1e-6 * s / (1 + abs(bp.lam)) ** 2 or abs(Rx) < 1e-6 * s / (1 + abs(bp.x)):
                continue
            if not any(abs(bp.x - q.x) < 1e-8 and abs(bp.y - q.y) < 1e-8 and abs(bp.lam - q.lam) < 1e-8 for q in found):
                found.append(bp)
    return found


# ---------------------------------------------------------------------------
# continuation


class _StepTooLong(Exception):
    def __init__(self, cause):
        super().__init__(str(cause))
        self.cause = cause


def continuation_step(sc: SpectralCurve, pt: SpectralPoint, x_next) -> SpectralPoint:
    """Move (y, lambda) to ``x_next`` on their current sheets.

    y follows the base-curve rule. lambda takes a first-order predictor
    ``-R_x/R_lambda dx``, is matched to the nearest root of R at the new
    base point, and is Newton-polished. The match must be unambiguous: the
    nearest root has to be at least four times closer than the runner-up.
    """
    try:
        sp = y_continuation_step(sc.curve, pt.sheet_point, x_next)
    except SheetAmbiguity as exc:
        raise _StepTooLong(exc) from exc
    _, Rx, Rl, _, _ = local_partials(sc, pt.x, pt.y, pt.lam)
    if Rl == 0:
        raise LambdaCollision(f"dR/dlambda vanishes at x={pt.x}")
    pred = pt.lam - Rx / Rl * (sp.x - pt.x)
    roots = sc.roots(sp.x, sp.y)
    dist = np.abs(roots - pred)
    order = np.argsort(dist)
    lam = roots[order[0]]
    if len(roots) > 1:
        if dist[order[1]] < 4 * dist[order[0]]:
            raise _StepTooLong(LambdaCollision(f"ambiguous lambda sheet near x={sp.x}"))
        gap = np.min(np.abs(np.delete(roots, order[0]) - lam))
        if gap < COLLISION_TOL * (1 + abs(lam)):
            raise LambdaCollision(f"lambda sheets collide (gap {gap:.3g}) near x={sp.x}")
    lam = sc.newton_lambda(sp.x, sp.y, lam, iters=2)
    return SpectralPoint(sp.x, sp.y, lam)


def continue_segment(sc: SpectralCurve, start: SpectralPoint, x_end, steps_hint=16, max_halvings=40, max_steps=20000):
    """Chain of points from ``start`` to ``x_end`` along a straight segment.

    Returns a list of ``(t, point)`` with t in [0, 1] the segment parameter.
    Steps shrink near branch points; a segment that needs more than
    ``max_steps`` steps, or a step below 1e-13 of its length, is running into
    a branch point and the step failure is raised.
    """
    x0 = start.x
    delta = complex(x_end) - x0
    if delta == 0:
        return [(0.0, start)]
    chain = [(0.0, start)]
    t = 0.0
    dt = 1.0 / steps_hint
    halvings = 0
    while t < 1.0:
        t_next = min(1.0, t + dt)
        try:
            pt = continuation_step(sc, chain[-1][1], x0 + t_next * delta)
        except _StepTooLong as exc:
            halvings += 1
            if halvings > max_halvings or dt < 1e-13 or len(chain) > max_steps:
                raise exc.cause
            dt *= 0.5
            continue
        chain.append((t_next, pt))
        t = t_next
        if halvings == 0:
            dt = min(1.0 / steps_hint, 2 * dt)
        halvings = 0
    # pin the endpoint exactly
    chain[-1] = (1.0, SpectralPoint(complex(x_end), chain[-1][1].y, chain[-1][1].lam))
    return chain


@dataclass(frozen=True)
class XPath:
    waypoints: tuple
    start: SpectralPoint

    def __post_init__(self):
        wps = tuple(complex(w) for w in self.waypoints)
        if not wps or wps[0] != self.start.x:
            raise ValueError("first waypoint must be the x-coordinate of the start point")
        if any(a == b for a, b in zip(wps, wps[1:])):
            raise ValueError("consecutive waypoints must be distinct")
        object.__setattr__(self, "waypoints", wps)


def continue_path(sc: SpectralCurve, path: XPath, steps_hint=16, margin=None) -> list:
    """All points of the continuation chain along the polyline.

    With ``margin`` set, the polyline is first checked against the branch
    points of both covers: passing within ``margin`` of a root of P raises
    :class:`SheetAmbiguity`, of a spectral branch projection
    :class:`LambdaCollision`. The start and end points are exempt.
    """
    if margin is not None:
        wps = path.waypoints
        ends = (wps[0], wps[-1])
        checks = (
            (sc.curve.branch_points(), SheetAmbiguity, "base"),
            (spectral_branch_projections(sc), LambdaCollision, "spectral"),
        )
        for obstacles, err, what in checks:
            for b in obstacles:
                if min(abs(b - e) for e in ends) <= margin:
                    continue
                for p, q in zip(wps, wps[1:]):
                    if _seg_distance(p, q, b)[0] < margin:
                        raise err(f"path passes within {margin:.3g} of the {what} branch point {b:.6g}")
    pts = [path.start]
    for xe in path.waypoints[1:]:
        seg = continue_segment(sc, pts[-1], xe, steps_hint)
        pts.extend(p for _, p in seg[1:])
    return pts


def _segment_integrand(sc: SpectralCurve, chain, delta):
    ts = np.array([t for t, _ in chain])
    gx = np.array([p.x for _, p in chain])
    gy = np.array([p.y for _, p in chain])
    glam = np.array([p.lam for _, p in chain])
    slopes = []
    for _, p in chain:
        _, Rx, Rl, _, _ = local_partials(sc, p.x, p.y, p.lam)
        slopes.append(-Rx / Rl)
    gdlam = np.array(slopes)
    gdy = sc.curve.dP(gx) / (2 * gy)
    mids = 0.5 * (ts[1:] + ts[:-1])
    x0 = chain[0][1].x

    def f(tt):
        tt = np.atleast_1d(tt)
        k = np.searchsorted(mids, tt)
        x = x0 + tt * delta
        root = np.sqrt(sc.curve.P(x).astype(complex))
        pred_y = gy[k] + gdy[k] * (x - gx[k])
        y = np.where(np.abs(root - pred_y) <= np.abs(root + pred_y), root, -root)
        lam = sc.newton_lambda_batch(x, y, glam[k] + gdlam[k] * (x - gx[k]))
        return differential_values_batch(sc, x, y, lam) * delta

    return f


def integrate_segment(sc: SpectralCurve, start: SpectralPoint, x_end, tol=1e-9, steps_hint=16, max_intervals=500):
    """Integrals of all N differentials from ``start`` to ``x_end`` (straight).

    Returns ``(values, error_estimate, end_point)``.
    """
    chain = continue_segment(sc, start, x_end, steps_hint)
    if len(chain) == 1:
        return np.zeros(sc.layout.N, dtype=complex), 0.0, start
    delta = complex(x_end) - start.x
    val, err, _ = integrate(_segment_integrand(sc, chain, delta), 0.0, 1.0, tol=tol, max_intervals=max_intervals)
    return val, float(np.max(err)), chain[-1][1]


def path_integral(sc: SpectralCurve, path: XPath, tol=1e-9, steps_hint=16):
    """Integrals of all N differentials along a polyline; returns ``(values, end_point)``."""
    total = np.zeros(sc.layout.N, dtype=complex)
    pt = path.start
    for xe in path.waypoints[1:]:
        val, _, pt = integrate_segment(sc, pt, xe, tol=tol, steps_hint=steps_hint)
        total += val
    return total, pt


# ---------------------------------------------------------------------------
# routing and angle coordinates


@dataclass(frozen=True)
class PathPolicy:
    """Routing and accuracy settings for Abel integrals.

    ``base_x`` defaults to ``3 (1 + max|branch point|)``; ``safety_margin``
    to ``0.05 (1 + max|branch point|)``.
    """

    base_x: complex | None = None
    safety_margin: float | None = None
    quad_tol: float = 1e-9
    steps_hint: int = 16

    def resolve(self, curve):
        rho = curve.radius
        bx = 3 * (1 + rho) if self.base_x is None else complex(self.base_x)
        margin = 0.05 * (1 + rho) if self.safety_margin is None else float(self.safety_margin)
        return complex(bx), margin


def _seg_distance(p, q, b):
    d = q - p
    if d == 0:
        return abs(b - p), p
    t = np.clip(((b - p) * np.conj(d)).real / abs(d) ** 2, 0.0, 1.0)
    foot = p + t * d
    return abs(b - foot), foot


def _detour_point(b, u, obs, margin):
    """Waypoint beside obstacle ``b``, preferably at ``b + 2 margin u``, clear of all obstacles."""
    for r in (2.0, 3.0, 4.0):
        for k in (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6):
            w = b + r * margin * u * np.exp(1j * np.pi * k / 12)
            if min(abs(w - o) for o in obs) >= 1.5 * margin:
                return w
    return b + 2 * margin * u


def _clearance(p, q, obs):
    """Smallest distance from each segment p[i]-q[i] to the obstacles (vectorised)."""
    d = (q - p)[..., None]
    rel = obs - p[..., None]
    dd = np.abs(d) ** 2
    t = np.clip(np.divide((rel * np.conj(d)).real, dd, out=np.zeros(rel.shape), where=dd > 0), 0.0, 1.0)
    return np.min(np.abs(rel - t * d), axis=-1)


def _graph_route(a, c, obs, margin):
    """Shortest polyline a -> c through rings of points around the obstacles."""
    ob = np.array(obs, dtype=complex)
    for radii in ((2.0,), (2.0, 3.5)):
        ring = np.exp(2j * np.pi * np.arange(12) / 12)
        cand = [(None, a), (None, c)]
        for j, b in enumerate(ob):
            for r in radii:
                for u in ring:
                    w = b + r * margin * u
                    if np.min(np.abs(ob - w)) >= 1.2 * margin:
                        cand.append(((j, u), w))
        pts = np.array([w for _, w in cand])
        m = len(pts)
        P, Q = np.meshgrid(pts, pts, indexing="ij")
        ok = _clearance(P, Q, ob) >= margin
        dist = np.where(ok, np.abs(P - Q), np.inf)
        best = np.full(m, np.inf)
        prev = np.full(m, -1)
        best[0] = 0.0
        heap = [(0.0, 0)]
        done = np.zeros(m, dtype=bool)
        while heap:
            dv, v = heapq.heappop(heap)
            if done[v]:
                continue
            done[v] = True
            if v == 1:
                break
            nd = dv + dist[v]
            better = (nd < best) & ~done
            for w in np.flatnonzero(better):
                best[w] = nd[w]
                prev[w] = v
                heapq.heappush(heap, (nd[w], int(w)))
        if np.isfinite(best[1]):
            path = [1]
            while path[-1] != 0:
                path.append(int(prev[path[-1]]))
            path = path[::-1]
            wps = tuple(pts[k] for k in path)
            detours = tuple((complex(ob[cand[k][0][0]]), complex(cand[k][0][1])) for k in path[1:-1])
            return wps, detours
    return None


def plan_route(a, c, obstacles, margin, max_detours=20):
    """Polyline from ``a`` to ``c`` keeping ``margin`` away from obstacles.

    Straight segment unless it passes within ``margin`` of an obstacle; then a
    waypoint is inserted at distance ``2 * margin`` from the obstacle, on the
    side of the segment's closest approach (rotated or pushed out if that spot
    is itself crowded by other obstacles). If this greedy repair does not
    settle, the route is the shortest polyline through rings of points around
    the obstacles. Obstacles within ``margin`` of either endpoint cannot be
    avoided and are ignored. Both stages are deterministic.
    Returns ``(waypoints, detours)`` with one ``(obstacle, direction)`` per
    inserted waypoint.
    """
    a, c = complex(a), complex(c)
    if a == c:
        return (a,), ()
    obs = [complex(b) for b in obstacles if abs(b - a) > margin and abs(b - c) > margin]
    wps = [a, c]
    detours = []
    for _ in range(max_detours + 1):
        hit = None
        for k in range(len(wps) - 1):
            for b in obs:
                dist, foot = _seg_distance(wps[k], wps[k + 1], b)
                if dist < margin:
                    hit = (k, b, dist, foot)
                    break
            if hit:
                break
        if hit is None:
            return tuple(wps), tuple(detours)
        k, b, dist, foot = hit
        if dist > 1e-12 * (1 + abs(b)):
            u = (foot - b) / dist
        else:
            d = wps[k + 1] - wps[k]
            u = 1j * d / abs(d)
        wps.insert(k + 1, _detour_point(b, u, obs, margin))
        detours.append((b, u))
    routed = _graph_route(a, c, obs, margin)
    if routed is None:
        raise PathInstability(f"no route {a} -> {c} keeps {margin:.3g} away from the branch points")
    return routed


def same_routes(detours_a, detours_b, tol) -> bool:
    if len(detours_a) != len(detours_b):
        return False
    for da, db in zip(detours_a, detours_b):
        if len(da) != len(db):
            return False
        for (b1, u1), (b2, u2) in zip(da, db):
            if abs(b1 - b2) > tol or abs(u1 - u2) > 0.5:
                return False
    return True


def canonical_base(sc: SpectralCurve, x0) -> SpectralPoint:
    """Principal y-sheet over x0, lambda the root of largest real (then imaginary) part."""
    y = np.sqrt(complex(sc.curve.P(x0)))
    roots = sc.roots(x0, y)
    lam = max(roots, key=lambda z: (round(z.real, 12), z.imag))
    return SpectralPoint(complex(x0), complex(y), complex(lam))


@dataclass(frozen=True, eq=False)
class AngleVector:
    """Angle coordinates with the data needed to reproduce them.

    ``starts[i]`` is the point over the base x reached by continuing back from
    the i-th configuration point along its route; the i-th Abel integral runs
    from there to the configuration point.
    """

    values: np.ndarray
    base_point: SpectralPoint
    starts: tuple
    routes: tuple
    detours: tuple = field(repr=False)
    error_estimate: float = 0.0

    def to_json(self, layout=None) -> dict:
        out = {
            "values": [[v.real, v.imag] for v in self.values],
            "base_point": self.base_point.to_json(),
            "starts": [s.to_json() for s in self.starts],
            "routes": [[[w.real, w.imag] for w in r] for r in self.routes],
            "error_estimate": self.error_estimate,
        }
        if layout is not None:
            out["layout"] = layout.to_json()
        return out


def obstacles_for(sc: SpectralCurve) -> np.ndarray:
    return np.concatenate([sc.curve.branch_points(), spectral_branch_projections(sc)])


def angle_coordinates(config: PhaseConfiguration, base: SpectralPoint | None = None, path_policy: PathPolicy | None = None, H=None) -> AngleVector:
    """Sum over the configuration of the Abel integrals of all N differentials.

    H defaults to :func:`solve_actions` of the configuration. Each point is
    joined to the base x along the route of :func:`plan_route` (obstacles:
    branch points of both covers); the integral is evaluated along the
    reversed route with (y, lambda) continued from the configuration point.
    """
    policy = path_policy or PathPolicy()
    x0, margin = policy.resolve(config.curve)
    if base is not None:
        x0 = base.x
    if H is None:
        H = solve_actions(config).values
    sc = SpectralCurve(config.curve, config.layout, _values(H, config.layout))
    if base is None:
        base = canonical_base(sc, x0)
    obstacles = obstacles_for(sc)
    total = np.zeros(sc.layout.N, dtype=complex)
    err = 0.0
    starts, routes, detours = [], [], []
    for gamma in config.points:
        wps, det = plan_route(gamma.x, x0, obstacles, margin)
        pt = gamma
        leg = np.zeros(sc.layout.N, dtype=complex)
        for xe in wps[1:]:
            val, e, pt = integrate_segment(sc, pt, xe, tol=policy.quad_tol, steps_hint=policy.steps_hint)
            leg += val
            err += e
        # integrated from gamma to the start; the Abel integral runs the other way
        total -= leg
        starts.append(pt)
        routes.append(wps[::-1])
        detours.append(det)
    return AngleVector(total, base, tuple(starts), tuple(routes), tuple(detours), err)
