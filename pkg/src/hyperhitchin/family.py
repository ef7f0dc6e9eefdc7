"""Spectral curves R(x, y, lambda; H) = 0 over the hyperelliptic base.

For every basis invariant of degree d the coefficient r(x, y) is expanded in
the monomials

    1, x, ..., x^(d(g-1))            ("even" block)
    y, y x, ..., y x^((d-1)(g-1)-2)  ("odd" block, possibly empty)

and the curve is ``lambda^n + sum_i r_i(x, y) lambda^(n - d_i)``. The
expansion coefficients are the Hamiltonians H, ordered invariant by
invariant (ascending degree), even block before odd block, exponents
ascending.

Sign convention ("urav"): the Hamiltonians enter R with a plus sign. The
other common normalisation for sl(2), ``lambda^2 = H_0 + H_1 x + ...``, is
obtained with :func:`to_intro_hamiltonians`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .curve import HyperellipticCurve, SheetPoint
from .errors import InputError, InvalidGenus, OnBranchPoint
from .lie_data import LieAlgebraSpec
from .polyroots import RESIDUAL_TOL, polyroots

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class BasisMonomial:
    """``x^k`` (even kind) or ``y x^s`` (odd kind) in the block of invariant ``i``."""

    invariant_index: int
    kind: str
    exponent: int
    degree: int

    def __call__(self, x, y):
        m = np.power(x, self.exponent)
        return m * y if self.kind == ODD else m

    def __str__(self):
        if self.kind == EVEN:
            return f"x^{self.exponent}" if self.exponent else "1"
        return f"y*x^{self.exponent}" if self.exponent else "y"

    def to_json(self) -> dict:
        return {"i": self.invariant_index, "kind": self.kind, "exp": self.exponent}


@dataclass(frozen=True)
class SpectralPoint:
    x: complex
    y: complex
    lam: complex

    @property
    def sheet_point(self) -> SheetPoint:
        return SheetPoint(self.x, self.y)

    def to_json(self) -> dict:
        return {
            "x": [self.x.real, self.x.imag],
            "y": [self.y.real, self.y.imag],
            "lambda": [self.lam.real, self.lam.imag],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SpectralPoint":
        return cls(complex(*obj["x"]), complex(*obj["y"]), complex(*obj["lambda"]))


def block_sizes(d: int, g: int) -> tuple[int, int]:
    """Sizes of the even and odd monomial blocks for an invariant of degree ``d``."""
    return d * (g - 1) + 1, max(0, (d - 1) * (g - 1) - 1)


@dataclass(frozen=True, eq=False)
class CoefficientLayout:
    spec: LieAlgebraSpec
    genus: int
    monomials: tuple

    @property
    def N(self) -> int:
        return len(self.monomials)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.spec.degrees

    @cached_property
    def exponents(self) -> np.ndarray:
        return np.array([m.exponent for m in self.monomials])

    @cached_property
    def is_odd(self) -> np.ndarray:
        return np.array([m.kind == ODD for m in self.monomials])

    @cached_property
    def lambda_powers(self) -> np.ndarray:
        """``n - d`` for the invariant owning each column."""
        return np.array([self.n - m.degree for m in self.monomials])

    @cached_property
    def invariant_of(self) -> np.ndarray:
        return np.array([m.invariant_index for m in self.monomials])

    def block(self, i: int) -> slice:
        idx = np.flatnonzero(self.invariant_of == i)
        if idx.size == 0:
            raise InputError(f"invariant index {i} outside 1..{self.spec.rank}")
        return slice(int(idx[0]), int(idx[-1]) + 1)

    def basis_values(self, x, y) -> np.ndarray:
        """All N monomials at (x, y); trailing axis indexes the basis."""
        x = np.asarray(x, dtype=complex)[..., None]
        y = np.asarray(y, dtype=complex)[..., None]
        vals = x**self.exponents
        return np.where(self.is_odd, vals * y, vals)

    def basis_dx(self, x, y) -> np.ndarray:
        """Partial derivatives in x at fixed y."""
        x = np.asarray(x, dtype=complex)[..., None]
        y = np.asarray(y, dtype=complex)[..., None]
        k = self.exponents
        vals = k * x ** np.maximum(k - 1, 0)
        return np.where(self.is_odd, vals * y, vals)

    def basis_dy(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=complex)[..., None]
        vals = x**self.exponents
        return np.where(self.is_odd, vals, 0.0 + 0j) * np.ones_like(np.asarray(y, dtype=complex)[..., None])

    def to_json(self) -> list:
        return [m.to_json() for m in self.monomials]


def enumerate_basis(spec: LieAlgebraSpec, g: int) -> CoefficientLayout:
    if int(g) != g or g < 2:
        raise InvalidGenus(f"genus must be an integer >= 2, got {g!r}")
    g = int(g)
    monomials = []
    for i, d in enumerate(spec.degrees, start=1):
        n_even, n_odd = block_sizes(d, g)
        monomials += [BasisMonomial(i, EVEN, k, d) for k in range(n_even)]
        monomials += [BasisMonomial(i, ODD, s, d) for s in range(n_odd)]
    return CoefficientLayout(spec, g, tuple(monomials))


@dataclass(frozen=True, eq=False)
class HamiltonianVector:
    layout: CoefficientLayout
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).reshape(-1)
        if vals.size != self.layout.N:
            raise InputError(f"expected {self.layout.N} Hamiltonians, got {vals.size}")
        object.__setattr__(self, "values", vals)

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __len__(self):
        return self.layout.N

    def __getitem__(self, k):
        return self.values[k]

    def to_json(self) -> dict:
        return {
            "convention": "urav",
            "layout": self.layout.to_json(),
            "values": [[v.real, v.imag] for v in self.values],
        }

    @classmethod
    def from_json(cls, obj: dict, layout: CoefficientLayout) -> "HamiltonianVector":
        if obj.get("convention", "urav") != "urav":
            raise InputError(f"unknown sign convention {obj['convention']!r}")
        if "layout" in obj and obj["layout"] != layout.to_json():
            raise InputError("Hamiltonian layout does not match the canonical layout")
        return cls(layout, np.array([complex(re, im) for re, im in obj["values"]]))


def _values(H, layout: CoefficientLayout) -> np.ndarray:
    vals = np.asarray(H, dtype=complex).reshape(-1)
    if vals.size != layout.N:
        raise InputError(f"expected {layout.N} Hamiltonians, got {vals.size}")
    return vals


def to_intro_hamiltonians(H):
    """Flip to the ``lambda^2 = sum H_k x^k`` normalisation used for sl(2)."""
    return -np.asarray(H, dtype=complex)


def r_eval(layout: CoefficientLayout, H, i: int, pt) -> complex:
    """Coefficient r_i(x, y) of the invariant with 1-based index ``i``."""
    h = _values(H, layout)
    blk = layout.block(i)
    return complex(np.dot(layout.basis_values(pt.x, pt.y)[blk], h[blk]))


def r_all(layout: CoefficientLayout, H, x, y) -> np.ndarray:
    """All l coefficients r_1..r_l at (x, y)."""
    h = _values(H, layout)
    terms = layout.basis_values(x, y) * h
    return np.array([terms[..., layout.block(i)].sum(axis=-1) for i in range(1, layout.spec.rank + 1)])


def lambda_poly(layout: CoefficientLayout, H, x, y) -> np.ndarray:
    """Coefficients of R in lambda at a base point, highest power first."""
    n = layout.n
    c = np.zeros(n + 1, dtype=complex)
    c[0] = 1.0
    for d, r in zip(layout.degrees, r_all(layout, H, x, y)):
        c[d] += r
    return c


def lambda_poly_batch(layout: CoefficientLayout, H, x, y) -> np.ndarray:
    """:func:`lambda_poly` over arrays of base points; trailing axis holds the coefficients."""
    h = _values(H, layout)
    terms = layout.basis_values(x, y) * h
    c = np.zeros(terms.shape[:-1] + (layout.n + 1,), dtype=complex)
    c[..., 0] = 1.0
    for i, d in enumerate(layout.degrees, start=1):
        c[..., d] += terms[..., layout.block(i)].sum(axis=-1)
    return c


def horner(c, z):
    """Value and derivative of polynomials ``c[..., :]`` (highest first) at ``z``."""
    p = np.zeros(np.broadcast(c[..., 0], z).shape, dtype=complex)
    dp = np.zeros_like(p)
    for k in range(c.shape[-1]):
        dp = dp * z + p
        p = p * z + c[..., k]
    return p, dp


def R_eval(layout: CoefficientLayout, H, pt: SpectralPoint) -> complex:
    return complex(np.polyval(lambda_poly(layout, H, pt.x, pt.y), pt.lam))


def R_scale(layout: CoefficientLayout, H, pt: SpectralPoint) -> float:
    """Sum of moduli of the terms of R; the reference size for residuals."""
    h = _values(H, layout)
    terms = np.abs(h * layout.basis_values(pt.x, pt.y)) * np.abs(pt.lam) ** layout.lambda_powers
    return float(abs(pt.lam) ** layout.n + terms.sum())


def dR_dlambda(layout: CoefficientLayout, H, pt: SpectralPoint) -> complex:
    return complex(np.polyval(np.polyder(lambda_poly(layout, H, pt.x, pt.y)), pt.lam))


def dR_dx_on_curve(curve: HyperellipticCurve, layout: CoefficientLayout, H, pt: SpectralPoint) -> complex:
    """Total x-derivative of R along the base curve, lambda held fixed."""
    if pt.y == 0:
        raise OnBranchPoint(f"y = 0 at x={pt.x}; dy/dx is infinite")
    h = _values(H, layout)
    dydx = curve.dP(pt.x) / (2 * pt.y)
    dm = layout.basis_dx(pt.x, pt.y) + layout.basis_dy(pt.x, pt.y) * dydx
    return complex(np.sum(h * dm * pt.lam**layout.lambda_powers))


def lambda_roots(layout: CoefficientLayout, H, pt, init=None) -> np.ndarray:
    """The n roots in lambda of R(x, y, . ; H), residual-verified."""
    return polyroots(lambda_poly(layout, H, pt.x, pt.y), init=init, tol=RESIDUAL_TOL)


@dataclass(frozen=True, eq=False)
class SpectralCurve:
    """A base curve together with a point H of the spectral family."""

    curve: HyperellipticCurve
    layout: CoefficientLayout
    H: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.layout.genus != self.curve.genus:
            raise InputError("layout genus differs from curve genus")
        object.__setattr__(self, "H", _values(self.H, self.layout).copy())

    @property
    def n(self):
        return self.layout.n

    def poly(self, x, y):
        return lambda_poly(self.layout, self.H, x, y)

    def R(self, x, y, lam):
        return np.polyval(self.poly(x, y), lam)

    def dR_dlambda(self, x, y, lam):
        return np.polyval(np.polyder(self.poly(x, y)), lam)

    def dR_dx(self, x, y, lam):
        return dR_dx_on_curve(self.curve, self.layout, self.H, SpectralPoint(x, y, lam))

    def scale(self, x, y, lam):
        return R_scale(self.layout, self.H, SpectralPoint(x, y, lam))

    def roots(self, x, y, init=None):
        return polyroots(self.poly(x, y), init=init)

    def residual(self, pt: SpectralPoint) -> float:
        return abs(self.R(pt.x, pt.y, pt.lam)) / self.scale(pt.x, pt.y, pt.lam)

    def newton_lambda_batch(self, x, y, lam, iters=4):
        c = lambda_poly_batch(self.layout, self.H, x, y)
        lam = np.array(lam, dtype=complex)
        for _ in range(iters):
            p, dp = horner(c, lam)
            lam = lam - np.divide(p, dp, out=np.zeros_like(p), where=dp != 0)
        return lam

    def newton_lambda(self, x, y, lam, iters=4):
        c = self.poly(x, y)
        dc = np.polyder(c)
        for _ in range(iters):
            d = np.polyval(dc, lam)
            if d == 0:
                break
            step = np.polyval(c, lam) / d
            lam = lam - step
            if abs(step) <= 1e-15 * max(1.0, abs(lam)):
                break
        return complex(lam)
