"""Balayage measures of uniformly charged planar bodies, exterior moments,
hole energies, and gap/counting-probability asymptotics.

A balayage measure lives on the body's boundary and reproduces the body's
potential everywhere outside.  Energies here use the -log kernel so hole
energies are positive and gap probabilities decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._quad import adaptive_1d, gl_nodes
from .domains import (
    Annulus2D,
    Ball,
    Ellipse2D,
    UniformDomain,
    UnsupportedRegionError,
    background_potential,
)

__all__ = [
    "BalayageComponent",
    "BalayageMeasure",
    "HoleSpec",
    "annulus_weights",
    "balayage_measure",
    "exterior_moment",
    "hole_energy",
    "gap_and_tail",
]


@dataclass(frozen=True)
class BalayageComponent:
    """One boundary piece: a circle (radius) or an ellipse (a1, a2) carrying
    the angular density dmu/dtheta and its total mass."""

    kind: str
    params: tuple
    density: object  # theta -> dmu/dtheta
    mass: float

    def point(self, theta: float):
        if self.kind == "circle":
            (radius,) = self.params
            return np.array([radius * math.cos(theta), radius * math.sin(theta)])
        if self.kind == "ellipse":
            a1, a2 = self.params
            return np.array([a1 * math.cos(theta), a2 * math.sin(theta)])
        raise ValueError(f"unknown component kind {self.kind!r}")

    def potential(self, r) -> float:
        """-log-kernel potential of this component at a planar point."""
        p = np.asarray(r, dtype=float)
        if self.kind == "circle":
            (radius,) = self.params
            dens = self.density(0.0)
            uniform = abs(dens * 2.0 * math.pi - self.mass) < 1e-12 * max(1.0, self.mass)
            if uniform:
                return -self.mass * math.log(max(float(np.linalg.norm(p)), radius))

        def f(thetas):
            out = np.empty_like(thetas)
            for i, th in enumerate(thetas):
                q = self.point(th)
                out[i] = -math.log(float(np.linalg.norm(p - q))) * self.density(th)
            return out

        val, _ = adaptive_1d(f, 0.0, 2.0 * math.pi, 1e-10)
        return val


@dataclass(frozen=True)
class BalayageMeasure:
    components: tuple
    total_mass: float

    def __post_init__(self):
        s = sum(c.mass for c in self.components)
        if abs(s - self.total_mass) > 1e-10 * max(1.0, abs(self.total_mass)):
            raise ValueError("BalayageMeasure: component masses do not sum to Q")

    def potential(self, r) -> float:
        return sum(c.potential(r) for c in self.components)


@dataclass(frozen=True)
class HoleSpec:
    """A particle-free region inside a plasma: hole geometry, background
    density, and inverse temperature."""

    hole: object
    rho_b: float = 1.0
    beta: float = 2.0

    def __post_init__(self):
        if self.rho_b <= 0 or self.beta <= 0:
            raise ValueError("HoleSpec: rho_b and beta must be > 0")


def annulus_weights(c: float):
    """Boundary weights (alpha, beta) for the annulus balayage: the printed
    linear system alpha + beta = 1, -beta log c = 1/2 + c^2 log c/(1-c^2)."""
    beta_w = -(0.5 + c * c * math.log(c) / (1.0 - c * c)) / math.log(c)
    return 1.0 - beta_w, beta_w


def balayage_measure(dom: UniformDomain) -> BalayageMeasure:
    """Balayage measure of the uniformly charged body (total charge Q = N),
    supported on the boundary and matching the exterior potential."""
    geo, q_total = dom.geometry, dom.N
    if isinstance(geo, Ball) and geo.d == 2:
        dens = q_total / (2.0 * math.pi)
        comp = BalayageComponent("circle", (geo.R,), lambda th: dens, q_total)
        return BalayageMeasure((comp,), q_total)
    if isinstance(geo, Ball):
        # uniform shell in any dimension; represented as a single component
        from .domains import sphere_area

        sigma = q_total / (geo.R ** (geo.d - 1) * sphere_area(geo.d))
        comp = BalayageComponent("circle", (geo.R,), lambda th: sigma, q_total)
        return BalayageMeasure((comp,), q_total)
    if isinstance(geo, Annulus2D):
        alpha_w, beta_w = annulus_weights(geo.c)
        out_mass = q_total * alpha_w
        in_mass = q_total * beta_w
        comps = (
            BalayageComponent("circle", (geo.R,),
                              lambda th, m=out_mass: m / (2.0 * math.pi), out_mass),
            BalayageComponent("circle", (geo.c * geo.R,),
                              lambda th, m=in_mass: m / (2.0 * math.pi), in_mass),
        )
        return BalayageMeasure(comps, q_total)
    if isinstance(geo, Ellipse2D):
        a1, a2 = geo.a1, geo.a2
        kappa2 = (a1 ** 2 - a2 ** 2) / (a1 ** 2 + a2 ** 2)
        # the printed density integrates to Q a1 a2 over theta; rescaled so
        # the total mass is Q, then validated by exterior-potential matching
        def dens(th, q=q_total, k=kappa2):
            return q / (2.0 * math.pi) * (1.0 - k * math.cos(2.0 * th))

        comp = BalayageComponent("ellipse", (a1, a2), dens, q_total)
        return BalayageMeasure((comp,), q_total)
    raise UnsupportedRegionError(
        f"balayage_measure: unsupported geometry {type(geo).__name__}")


def exterior_moment(dom: UniformDomain, ell: int):
    """Raw area moment m_l = int_Omega w^l d^2w of the planar body (complex
    coordinates; independent of the charge)."""
    if ell < 0:
        raise ValueError("exterior_moment: l >= 0")
    geo = dom.geometry
    if isinstance(geo, (Ball, Annulus2D)):
        if not (isinstance(geo, Annulus2D) or geo.d == 2):
            raise UnsupportedRegionError("exterior_moment: planar bodies only")
        return geo.volume if ell == 0 else 0.0
    if isinstance(geo, Ellipse2D):
        a1, a2 = geo.a1, geo.a2
        x, w = gl_nodes(80)
        rho = 0.5 * (x + 1.0)
        wr = 0.5 * w
        th = math.pi * (x + 1.0)
        wt = math.pi * w
        rr, tt = np.meshgrid(rho, th, indexing="ij")
        zmat = rr * (a1 * np.cos(tt) + 1j * a2 * np.sin(tt))
        integ = zmat ** ell * rr * a1 * a2
        val = complex(np.einsum("i,j,ij->", wr, wt, integ))
        if abs(val.imag) < 1e-10 * max(1.0, abs(val)):
            val = val.real
        if isinstance(val, float) and abs(val) < 1e-12:
            return 0.0
        return val
    raise UnsupportedRegionError(
        f"exterior_moment: unsupported geometry {type(geo).__name__}")


def _unit_hole_potential(geo) -> object:
    """U(r) = int_hole -log|r - w| d^2w at unit density, as a callable."""
    dom = UniformDomain(geo, geo.volume)  # rho_b = 1

    def u(r):
        return -background_potential(dom, r)

    return u


def hole_energy(spec: HoleSpec) -> float:
    """Electrostatic energy E of the charge-neutral system formed by the
    unit-density hole and its oppositely charged balayage measure:
    E = (1/2)(int_hole U - int_boundary U dmu).  Callers scale by rho_b^2."""
    geo = spec.hole
    u = _unit_hole_potential(geo)
    measure = balayage_measure(UniformDomain(geo, geo.volume))

    if isinstance(geo, (Ball, Annulus2D)):
        lo = geo.c * geo.R if isinstance(geo, Annulus2D) else 0.0

        def f(rs):
            return np.array([u([r, 0.0]) * 2.0 * math.pi * r for r in rs])

        volume_term, _ = adaptive_1d(f, lo, geo.R, 1e-10)
    elif isinstance(geo, Ellipse2D):
        a1, a2 = geo.a1, geo.a2
        x, w = gl_nodes(64)
        rho = 0.5 * (x + 1.0)
        wr = 0.5 * w
        th = math.pi * (x + 1.0)
        wt = math.pi * w
        volume_term = 0.0
        for r_i, w_i in zip(rho, wr):
            vals = np.array([u([r_i * a1 * math.cos(t), r_i * a2 * math.sin(t)])
                             for t in th])
            volume_term += w_i * float(np.dot(wt, vals)) * r_i * a1 * a2
    else:
        raise UnsupportedRegionError(
            f"hole_energy: unsupported geometry {type(geo).__name__}")

    boundary_term = 0.0
    for comp in measure.components:
        def f(thetas, comp=comp):
            return np.array([u(comp.point(t)) * comp.density(t) for t in thetas])

        val, _ = adaptive_1d(f, 0.0, 2.0 * math.pi, 1e-10)
        boundary_term += val

    energy = 0.5 * (volume_term - boundary_term)
    if energy < -1e-10:
        raise RuntimeError(f"hole_energy: negative energy {energy}")
    return max(energy, 0.0)


def gap_and_tail(spec: HoleSpec, mode: str, gamma: float = None,
                 alpha_amp: float = None, R: float = None) -> float:
    """Gap mode: the predicted limit -beta E_hole of (1/rho_b^2) log of the
    gap-probability ratio.  Tail mode: the leading exponent of the counting
    probability, -(beta/4)(gamma-2) alpha^2 R^{2 gamma} log R, for gamma > 2.
    """
    if mode == "gap":
        return -spec.beta * hole_energy(spec)
    if mode == "tail":
        if gamma is None or alpha_amp is None or R is None:
            raise ValueError("gap_and_tail: tail mode needs gamma, alpha_amp, R")
        if gamma <= 2.0:
            raise ValueError("gap_and_tail: tail exponent requires gamma > 2")
        return -(spec.beta / 4.0) * (gamma - 2.0) * alpha_amp ** 2 \
            * R ** (2.0 * gamma) * math.log(R)
    raise ValueError(f"gap_and_tail: unknown mode {mode!r}")
