"""The hyperelliptic base curve y^2 = P(x) with P monic of degree 2g+1."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateCurve, InputError, InvalidGenus, OnBranchPoint, SheetAmbiguity
from .polyroots import polyroots, residual_scale

ROOT_TOL = 1e-12
SEPARATION_REL = 1e-8


@dataclass(frozen=True)
class SheetPoint:
    x: complex
    y: complex


@dataclass(frozen=True, eq=False)
class HyperellipticCurve:
    """``y^2 = x^(2g+1) + a_{2g} x^(2g) + ... + a_0``.

    ``coeffs`` holds ``a_0 .. a_{2g}`` (lowest degree first, leading 1 implied).
    Construction fails with :class:`DegenerateCurve` when two roots of P are
    closer than ``1e-8 * (1 + max|root|)``.
    """

    genus: int
    coeffs: tuple
    _roots: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if isinstance(self.genus, bool) or int(self.genus) != self.genus:
            raise InvalidGenus(f"genus must be an integer, got {self.genus!r}")
        g = int(self.genus)
        if g < 2:
            raise InvalidGenus(f"genus must be >= 2 (no integrals for g <= 1), got {g}")
        coeffs = tuple(complex(c) for c in self.coeffs)
        if len(coeffs) != 2 * g + 1:
            raise InputError(f"genus {g} needs {2 * g + 1} coefficients a_0..a_{2 * g}, got {len(coeffs)}")
        object.__setattr__(self, "genus", g)
        object.__setattr__(self, "coeffs", coeffs)
        roots = polyroots(self.poly, tol=ROOT_TOL)
        sep = self.separation_tol_for(roots)
        d = np.abs(roots[:, None] - roots[None, :]) + np.diag(np.full(len(roots), np.inf))
        if d.min() <= sep:
            raise DegenerateCurve(
                f"branch points closer than {sep:.3g} (min distance {d.min():.3g})"
            )
        object.__setattr__(self, "_roots", roots)

    @staticmethod
    def separation_tol_for(roots):
        return SEPARATION_REL * (1 + np.max(np.abs(roots)))

    @property
    def poly(self) -> np.ndarray:
        """Coefficients of P, highest degree first (numpy convention)."""
        return np.concatenate([[1.0 + 0j], np.array(self.coeffs[::-1], dtype=complex)])

    @property
    def dpoly(self) -> np.ndarray:
        return np.polyder(self.poly)

    @property
    def separation_tol(self) -> float:
        return self.separation_tol_for(self._roots)

    @property
    def radius(self) -> float:
        """Largest branch-point modulus."""
        return float(np.max(np.abs(self._roots)))

    def P(self, x):
        return np.polyval(self.poly, x)

    def dP(self, x):
        return np.polyval(self.dpoly, x)

    def scale(self, x):
        return residual_scale(self.poly, x)

    def branch_points(self) -> np.ndarray:
        return self._roots.copy()

    def on_curve(self, pt: SheetPoint, tol=1e-10) -> bool:
        return abs(pt.y**2 - self.P(pt.x)) <= tol * self.scale(pt.x)

    def point(self, x, sheet=1) -> SheetPoint:
        """The point over ``x`` with y = ``sheet`` * principal sqrt(P(x))."""
        return SheetPoint(complex(x), complex(sheet * np.sqrt(complex(self.P(x)))))

    @classmethod
    def random(cls, genus, rng=None, spread=0.5):
        """Monic curve with complex Gaussian lower coefficients of size ``spread``."""
        rng = np.random.default_rng(rng)
        m = 2 * genus + 1
        c = spread * (rng.standard_normal(m) + 1j * rng.standard_normal(m)) / np.sqrt(2)
        return cls(genus, tuple(c))

    def to_json(self) -> dict:
        return {"genus": self.genus, "coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "HyperellipticCurve":
        return cls(int(obj["genus"]), tuple(complex(re, im) for re, im in obj["coeffs"]))


def evaluate_P(curve: HyperellipticCurve, x):
    """Horner evaluation of the monic base polynomial."""
    return curve.P(x)


def branch_points(curve: HyperellipticCurve) -> np.ndarray:
    return curve.branch_points()


def y_continuation_step(curve: HyperellipticCurve, start: SheetPoint, x_next) -> SheetPoint:
    """One step of sheet tracking for y.

    Picks the square root of P(x_next) nearest the first-order predictor
    ``y + P'(x) dx / (2y)``. The observed predictor error ``e`` is doubled to
    a bound; if the two candidate roots ``+-y`` are closer than twice that
    bound the step is refused with :class:`SheetAmbiguity`.
    """
    x_next = complex(x_next)
    if start.y == 0:
        raise SheetAmbiguity(f"cannot continue y from the branch point x={start.x}")
    pred = start.y + curve.dP(start.x) / (2 * start.y) * (x_next - start.x)
    root = complex(np.sqrt(complex(curve.P(x_next))))
    cand = root if abs(root - pred) <= abs(root + pred) else -root
    bound = 2 * abs(cand - pred)
    if abs(2 * cand) < 2 * bound or cand == 0:
        raise SheetAmbiguity(
            f"step {start.x} -> {x_next} passes too close to a branch point "
            f"(|y|={abs(cand):.3g}, predictor error bound {bound:.3g})"
        )
    return SheetPoint(x_next, cand)


def continue_y(curve: HyperellipticCurve, start: SheetPoint, x_target, nsteps=8, max_depth=30):
    """Continue y along the straight segment to ``x_target``, halving steps on ambiguity."""
    x_target = complex(x_target)
    pt = start
    depth = 0
    pieces = [start.x + (x_target - start.x) * (k + 1) / nsteps for k in range(nsteps)]
    stack = pieces[::-1]
    while stack:
        xn = stack.pop()
        try:
            pt = y_continuation_step(curve, pt, xn)
            depth = 0
        except SheetAmbiguity:
            depth += 1
            if depth > max_depth:
                raise
            stack.append(xn)
            stack.append(0.5 * (pt.x + xn))
    return pt


def dy_dx(curve: HyperellipticCurve, pt: SheetPoint):
    if pt.y == 0:
        raise OnBranchPoint(f"dy/dx undefined at branch point x={pt.x}")
    return curve.dP(pt.x) / (2 * pt.y)
