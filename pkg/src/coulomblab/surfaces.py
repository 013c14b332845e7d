"""Equilibrium surface charge densities and potentials for spheres and
hyperellipsoids, plus the projection identities linking uniform bodies to
lower-dimensional equilibrium measures."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._quad import adaptive_1d, gl_nodes, tensor_gl_2d
from .domains import (
    UnsupportedRegionError,
    _lambda_integral,
    _lambda_star,
    _s0,
    coulomb_radial,
    sphere_area,
)
from .specfun import gamma

__all__ = [
    "SurfaceChargeDensity",
    "OffSurfaceError",
    "shell_potential",
    "ellipsoid_surface_density",
    "ellipsoid_surface_potential",
    "projection_density",
    "projection_identities",
]


class OffSurfaceError(ValueError):
    """Surface quantity requested away from the surface."""


@dataclass(frozen=True)
class SurfaceChargeDensity:
    """A boundary-supported charge: geometry tag, total charge, density map."""

    geometry: object
    total: float

    def density(self, r) -> float:
        if isinstance(self.geometry, tuple) and self.geometry[0] == "sphere":
            _, d, radius = self.geometry
            return self.total / (radius ** (d - 1) * sphere_area(d))
        if isinstance(self.geometry, tuple) and self.geometry[0] == "ellipsoid":
            return ellipsoid_surface_density(self.geometry[1], self.total, r)
        raise UnsupportedRegionError("unknown surface geometry")


def shell_potential(d: int, R: float, Q: float, r) -> float:
    """Potential of total charge Q spread uniformly on the sphere |x| = R:
    constant inside, point-charge outside (Newton's shell theorem)."""
    if d < 2:
        raise ValueError("shell_potential: d >= 2")
    rr = float(np.linalg.norm(np.atleast_1d(np.asarray(r, dtype=float))))
    return Q * coulomb_radial(d, max(rr, R))


def ellipsoid_surface_density(axes, Q: float, r) -> float:
    """Equilibrium surface density on the hyperellipsoid shell:
    sigma = Q / (c_d a_1...a_d) * (sum x_j^2/a_j^4)^(-1/2)."""
    axes = tuple(float(a) for a in axes)
    d = len(axes)
    x = np.asarray(r, dtype=float)
    on_surface = sum((xi / a) ** 2 for xi, a in zip(x, axes))
    if abs(on_surface - 1.0) > 1e-10:
        raise OffSurfaceError(f"point not on the surface (residual {on_surface - 1.0:.2e})")
    grad = math.sqrt(sum(xi * xi / a ** 4 for xi, a in zip(x, axes)))
    return Q / (sphere_area(d) * math.prod(axes)) / grad


def ellipsoid_surface_potential(axes, Q: float, r) -> float:
    """Potential of the charged conducting hyperellipsoid shell (d > 2).

    (Q/2)(d-2) int_{lam*}^inf dlam / sqrt(S_0): constant inside (lam* = 0),
    decaying to the point-charge potential far away.
    """
    axes = tuple(float(a) for a in axes)
    d = len(axes)
    if d <= 2:
        raise ValueError("ellipsoid_surface_potential: valid for d > 2")
    x = np.asarray(r, dtype=float)
    lam0 = _lambda_star(axes, x)
    val, _ = _lambda_integral(axes, lambda lam: np.ones_like(lam), lam0)
    return 0.5 * Q * (d - 2) * val


def projection_density(d: int, R: float, r) -> float:
    """Density at r (a point of the (d-1)-ball of radius R) obtained by
    projecting the uniformly charged sphere of R^d; normalized to unit total
    charge.  This is the equilibrium measure of the (d-1)-ball for the
    d-dimensional Coulomb kernel (arcsine law at d = 2)."""
    if d < 2:
        raise ValueError("projection_density: d >= 2")
    x = np.atleast_1d(np.asarray(r, dtype=float))
    if x.size != d - 1:
        raise ValueError(f"projection_density: point must be in dimension {d - 1}")
    rho = float(np.linalg.norm(x))
    if rho >= R:
        raise ValueError("projection_density: |r| < R required")
    # normalization: c_{d-1} R^{d-1} int_0^1 u^{d-2} (1-u^2)^{-1/2} du
    c = sphere_area(d - 1) if d >= 3 else 2.0
    z = c * R ** (d - 1) * 0.5 * math.sqrt(math.pi) \
        * gamma((d - 1) / 2.0) / gamma(d / 2.0)
    return (1.0 - (rho / R) ** 2) ** -0.5 / z


# ----------------------------------------------------- identity machinery

def _disk_weighted_potential(point, R, weight_power, kernel, n_theta_tol=1e-8):
    """Integral over the 2-ball of radius R of w(|r'|) k(|pt - r'|) with
    w = (1 - (rho/R)^2)^{weight_power}; ray decomposition from the point,
    rim handled by the s = L - v^2 substitution.

    ``kernel`` must already include the polar Jacobian s (so the d = 3
    Coulomb kernel 1/s enters as the constant 1).
    """
    p = np.asarray(point, dtype=float)

    def ray_exit(e):
        b = float(np.dot(p, e))
        return -b + math.sqrt(b * b + (R * R - float(np.dot(p, p))))

    def angular(thetas):
        out = np.empty_like(thetas)
        for i, th in enumerate(thetas):
            e = np.array([math.cos(th), math.sin(th)])
            L = ray_exit(e)

            def radial(vs):
                s = L - vs * vs
                q = p[None, :] + s[:, None] * e[None, :]
                rho2 = np.sum(q * q, axis=1)
                w = np.maximum(1.0 - rho2 / (R * R), 0.0) ** weight_power
                return w * kernel(s) * 2.0 * vs

            val, _ = adaptive_1d(radial, 0.0, math.sqrt(L), n_theta_tol)
            out[i] = val
        return out

    total, _ = adaptive_1d(angular, 0.0, 2.0 * math.pi, n_theta_tol * 10)
    return total


def _ball3_weighted_log_potential(dist, R=1.0, tol=1e-7):
    """Integral over the 3-ball of (1-(rho/R)^2)^(-1/2) * (-log|r - r'|) for
    |r| = dist; axisymmetric reduction around the evaluation point."""
    p = np.array([dist, 0.0, 0.0])

    def angular(gammas):
        out = np.empty_like(gammas)
        for i, g in enumerate(gammas):
            e = np.array([math.cos(g), math.sin(g), 0.0])
            b = float(np.dot(p, e))
            L = -b + math.sqrt(b * b + (R * R - dist * dist))

            def radial(vs):
                s = L - vs * vs
                q = p[None, :] + s[:, None] * e[None, :]
                rho2 = np.sum(q * q, axis=1)
                w = np.maximum(1.0 - rho2 / (R * R), 0.0) ** -0.5
                safe = np.maximum(s, 1e-300)
                return w * (-np.log(safe)) * s * s * 2.0 * vs

            val, _ = adaptive_1d(radial, 0.0, math.sqrt(L), tol)
            out[i] = val * math.sin(g)
        return out

    total, _ = adaptive_1d(angular, 0.0, math.pi, tol * 10)
    return 2.0 * math.pi * total


def _thin_slab_coefficients(a1: float, a2: float, N: float = 1.0):
    """a3 -> 0 limit of the d = 3 quadratic coefficients (x3 dropped)."""
    axes = (a1, a2)

    def with_root(w):
        return lambda lam: w(lam) / np.sqrt(lam)

    pref = N * 0.75
    a0 = -pref * _lambda_integral(axes, with_root(lambda lam: np.ones_like(lam)))[0]
    al = [pref * _lambda_integral(axes, with_root(lambda lam, aj=aj: 1.0 / (aj * aj + lam)))[0]
          for aj in (a1, a2)]
    return a0, al


def projection_identities(case: str, **params) -> dict:
    """Evaluate both sides of the chosen projection identity on a grid and
    report the maximum residual.

    Cases: "constant-potential" (equilibrium measure of the (d-1)-ball is an
    equipotential), "riesz-quadratic" (inverse-square-root density on the
    d-ball with the s = d-3 kernel gives a quadratic), "semicircle" (the
    log-potential of the semicircle density), and "thin-slab" (thin-ellipsoid
    limit against the weighted 2d integral).
    """
    if case == "constant-potential":
        d = params.get("d", 3)
        R = params.get("R", 1.0)
        if d == 2:
            # arcsine measure on [-R, R] against -log|x - y|
            def potential(x):
                def f(ths):
                    return -np.log(np.abs(x - R * np.cos(ths)) + 1e-300) / math.pi
                lim = math.acos(max(min(x / R, 1.0), -1.0))
                v1, _ = adaptive_1d(f, 0.0, lim, 1e-8)
                v2, _ = adaptive_1d(f, lim, math.pi, 1e-8)
                return v1 + v2
            pts = np.linspace(-0.8 * R, 0.8 * R, 10)
            vals = np.array([potential(float(x)) for x in pts])
        elif d == 3:
            def potential(p):
                raw = _disk_weighted_potential(p, R, -0.5, lambda s: np.ones_like(s))
                return raw
            pts = [np.array([x, y]) for x, y in
                   [(0.0, 0.0), (0.2, 0.0), (0.0, 0.3), (0.4, 0.1), (-0.3, 0.2),
                    (0.5, 0.0), (0.1, -0.5), (-0.6, -0.1), (0.3, 0.3), (0.65, 0.0)]]
            pts = [p * R for p in pts]
            vals = np.array([potential(p) for p in pts])
        else:
            raise ValueError("constant-potential: d in {2, 3}")
        const = float(np.mean(vals))
        return {"case": case, "d": d, "constant": const,
                "max_residual": float(np.max(np.abs(vals - const)))}

    if case == "riesz-quadratic":
        d = params.get("d", 3)
        R = params.get("R", 1.0)
        if d == 3:
            dists = [0.0, 0.15, 0.3, 0.45, 0.6, 0.72]
            vals = np.array([_ball3_weighted_log_potential(x, R) for x in dists])
        elif d == 2:
            # kernel Psi_{-1} = -|r - r'| on the 2-ball (times the Jacobian s)
            dists = [0.0, 0.15, 0.3, 0.45, 0.6, 0.72]
            vals = np.array([
                _disk_weighted_potential(np.array([x, 0.0]), R, -0.5,
                                         lambda s: -s * s) for x in dists])
        else:
            raise ValueError("riesz-quadratic: d in {2, 3}")
        x2 = np.array([x * x for x in dists])
        design = np.vstack([np.ones_like(x2), x2]).T
        coef, *_ = np.linalg.lstsq(design, vals, rcond=None)
        resid = float(np.max(np.abs(vals - design @ coef)))
        return {"case": case, "d": d, "gamma": float(-coef[1]),
                "constant": float(coef[0]), "max_residual": resid}

    if case == "semicircle":
        a = params.get("a", 1.0)
        xs = params.get("xs", np.linspace(-0.8 * a, 0.8 * a, 9))
        resid = []
        for x in xs:
            lhs = x * x / 2.0 + (a * a / 2.0) * math.log(a / 2.0) - a * a / 4.0

            def f(ths):
                s = a * np.sin(ths)
                return np.log(np.abs(x - s) + 1e-300) * a * np.cos(ths) ** 2
            lim = math.asin(max(min(x / a, 1.0), -1.0))
            v1, _ = adaptive_1d(f, -math.pi / 2.0, lim, 1e-9)
            v2, _ = adaptive_1d(f, lim, math.pi / 2.0, 1e-9)
            rhs = (a / math.pi) * (v1 + v2)
            resid.append(abs(lhs - rhs))
        return {"case": case, "a": a, "max_residual": float(np.max(resid))}

    if case == "thin-slab":
        a1 = params.get("a1", 1.5)
        a2 = params.get("a2", 1.0)
        charge = params.get("N", 1.0)
        a0, al = _thin_slab_coefficients(a1, a2, charge)
        pref = -2.0 * charge * gamma(2.5) / (math.pi ** 1.5 * a1 * a2)
        pts = [(0.0, 0.0), (0.3, 0.0), (0.0, 0.4), (0.4, 0.3), (-0.5, 0.2)]
        resid = []
        for (x, y) in pts:
            lhs = a0 + al[0] * x * x + al[1] * y * y
            p = np.array([x, y])

            def kernel(s):
                return 1.0 / np.maximum(s, 1e-300)

            # integral over the ellipse: map to the unit disk first
            def weighted(point):
                def ray_exit(e):
                    # ellipse exit along direction e from point
                    A = (e[0] / a1) ** 2 + (e[1] / a2) ** 2
                    B = point[0] * e[0] / a1 ** 2 + point[1] * e[1] / a2 ** 2
                    C = (point[0] / a1) ** 2 + (point[1] / a2) ** 2 - 1.0
                    return (-B + math.sqrt(B * B - A * C)) / A

                def angular(thetas):
                    out = np.empty_like(thetas)
                    for i, th in enumerate(thetas):
                        e = np.array([math.cos(th), math.sin(th)])
                        L = ray_exit(e)

                        def radial(vs):
                            s = L - vs * vs
                            q = point[None, :] + s[:, None] * e[None, :]
                            w = np.maximum(
                                1.0 - (q[:, 0] / a1) ** 2 - (q[:, 1] / a2) ** 2,
                                0.0) ** 0.5
                            return w * 2.0 * vs

                        val, _ = adaptive_1d(radial, 0.0, math.sqrt(L), 1e-9)
                        out[i] = val
                    return out

                total, _ = adaptive_1d(angular, 0.0, 2.0 * math.pi, 1e-8)
                return total

            rhs = pref * weighted(p)
            resid.append(abs(lhs - rhs))
        return {"case": case, "a1": a1, "a2": a2,
                "max_residual": float(np.max(resid))}

    raise ValueError(f"projection_identities: unknown case {case!r}")
