"""Primal barrier oracles: value, gradient, Hessian action, inverse Hessian.

Each cone family gets a :class:`BarrierWorkspace` subclass that caches the
intermediates shared by the oracles at a fixed interior point (the residual
``zeta`` of the defining inequality, power products, eigen or singular value
decompositions, and the assembled Hessian factorization when the inverse has
no closed form).  Workspaces are valid only for the point they were built at.

Matrix-family Hessians act on the full (not symmetrized) matrix space, where
they remain symmetric positive definite; applied to symmetric directions they
agree with the lifted vector-cone Hessians.

The hypograph and radial power cones use closed-form inverse Hessian
operators; every other family assembles the dense Hessian and solves with a
Cholesky factorization.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .cones import (
    ConeDescriptor,
    ConeFamily,
    ConePoint,
    NotInteriorError,
    check_shape,
    pack,
    unpack,
)
from .linalg import cholesky_factor, sym_eigen, svd

__all__ = [
    "BarrierWorkspace",
    "value",
    "gradient",
    "hessian_apply",
    "inverse_hessian_apply",
    "hessian_dense",
]


class BarrierWorkspace:
    """Cached oracle intermediates at one interior point of one cone."""

    _registry: dict[ConeFamily, type] = {}

    def __init_subclass__(cls, family=None, **kwargs):
        super().__init_subclass__(**kwargs)
        if family is not None:
            families = family if isinstance(family, tuple) else (family,)
            for fam in families:
                BarrierWorkspace._registry[fam] = cls

    def __new__(cls, cone: ConeDescriptor, point: ConePoint):
        if cls is BarrierWorkspace:
            cls = BarrierWorkspace._registry[cone.family]
        return object.__new__(cls)

    def __init__(self, cone: ConeDescriptor, point: ConePoint):
        check_shape(cone, point)
        self.cone = cone
        self.point = point
        self._grad = None
        self._dense = None
        self._factor = None
        self._prepare()
        if not self._interior():
            raise NotInteriorError(
                f"point is not in the interior of the {cone.family.value} cone"
            )

    # subclasses implement _prepare/_interior/value/gradient/hessian_apply

    def gradient(self) -> ConePoint:
        if self._grad is None:
            self._grad = self._gradient()
        return self._grad

    def hessian_dense(self) -> np.ndarray:
        if self._dense is None:
            self._dense = self._hessian_dense()
        return self._dense

    def inverse_hessian_apply(self, x: ConePoint) -> ConePoint:
        if self._factor is None:
            self._factor = cholesky_factor(self.hessian_dense())
        sol = scipy.linalg.cho_solve(self._factor, pack(self.cone, x),
                                     check_finite=False)
        return unpack(self.cone, sol)


# --------------------------------------------------------------------------
# logarithm cone and log-determinant cone
# --------------------------------------------------------------------------

class _LogCommon(BarrierWorkspace):
    """Shared scalar algebra for the log families; `lam` is w or eig(W)."""

    def _scalars(self, u, v, lam):
        self.u, self.v, self.lam = u, v, lam
        self.slog = float(np.sum(np.log(lam))) if np.all(lam > 0.0) else np.nan
        self.phi = self.slog - lam.size * np.log(v) if v > 0.0 else np.nan
        self.zeta = v * self.phi - u if v > 0.0 else np.nan
        self.sigma = self.phi - lam.size

    def _interior(self) -> bool:
        return (self.v > 0.0 and np.all(self.lam > 0.0)
                and np.isfinite(self.zeta) and self.zeta > 0.0)

    def value(self) -> float:
        return -np.log(self.zeta) - np.log(self.v) - self.slog

    def _grad_scalars(self):
        gu = 1.0 / self.zeta
        gv = -self.sigma / self.zeta - 1.0 / self.v
        glam = -(self.v / self.zeta) / self.lam - 1.0 / self.lam
        return gu, gv, glam


class _LogW(_LogCommon, family=ConeFamily.LOG):
    def _prepare(self):
        p = self.point
        self._scalars(float(p.epi), float(p.persp), p.vec)

    def _gradient(self) -> ConePoint:
        gu, gv, gw = self._grad_scalars()
        return ConePoint(epi=gu, persp=gv, vec=gw)

    def hessian_apply(self, x: ConePoint) -> ConePoint:
        check_shape(self.cone, x)
        xu, xv, xw = float(x.epi), float(x.persp), x.vec
        v, w, zeta, sigma = self.v, self.lam, self.zeta, self.sigma
        sw = float(np.sum(xw / w))
        dzeta = -xu + sigma * xv + v * sw
        dsigma = sw - w.size * xv / v
        out_u = -dzeta / zeta**2
        out_v = -dsigma / zeta + sigma * dzeta / zeta**2 + xv / v**2
        out_w = (-(xv / zeta - v * dzeta / zeta**2) / w
                 + (v / zeta) * xw / w**2 + xw / w**2)
        return ConePoint(epi=out_u, persp=out_v, vec=out_w)

    def _hessian_dense(self) -> np.ndarray:
        v, w, zeta = self.v, self.lam, self.zeta
        xi = np.concatenate(([-1.0, self.sigma], v / w))
        h = np.outer(xi, xi) / zeta**2
        h[1, 1] += w.size / (v * zeta) + 1.0 / v**2
        h[1, 2:] -= 1.0 / (zeta * w)
        h[2:, 1] -= 1.0 / (zeta * w)
        idx = np.arange(2, 2 + w.size)
        h[idx, idx] += v / (zeta * w**2) + 1.0 / w**2
        return h


class _LogDetW(_LogCommon, family=ConeFamily.LOGDET):
    def _prepare(self):
        p = self.point
        self.eig = sym_eigen(p.mat)
        self._scalars(float(p.epi), float(p.persp), self.eig.values)
        self._inv = None

    def _winv(self) -> np.ndarray:
        if self._inv is None:
            u = self.eig.vectors
            self._inv = (u / self.lam) @ u.T
        return self._inv

    def _gradient(self) -> ConePoint:
        gu, gv, glam = self._grad_scalars()
        u = self.eig.vectors
        return ConePoint(epi=gu, persp=gv, mat=(u * glam) @ u.T)

    def hessian_apply(self, x: ConePoint) -> ConePoint:
        check_shape(self.cone, x)
        xu, xv, xm = float(x.epi), float(x.persp), x.mat
        v, zeta, sigma, d = self.v, self.zeta, self.sigma, self.lam.size
        t = self._winv()
        tx = t @ xm
        tr_tx = float(np.trace(tx))
        dzeta = -xu + sigma * xv + v * tr_tx
        dsigma = tr_tx - d * xv / v
        out_u = -dzeta / zeta**2
        out_v = -dsigma / zeta + sigma * dzeta / zeta**2 + xv / v**2
        c = v / zeta + 1.0
        dc = xv / zeta - v * dzeta / zeta**2
        out_m = -dc * t + c * (tx @ t)
        return ConePoint(epi=out_u, persp=out_v, mat=out_m)

    def _hessian_dense(self) -> np.ndarray:
        v, zeta, sigma, d = self.v, self.zeta, self.sigma, self.lam.size
        t = self._winv()
        vt = t.ravel()
        n = 2 + d * d
        h = np.empty((n, n))
        h[0, 0] = 1.0 / zeta**2
        h[0, 1] = h[1, 0] = -sigma / zeta**2
        h[0, 2:] = h[2:, 0] = -v * vt / zeta**2
        h[1, 1] = sigma**2 / zeta**2 + d / (v * zeta) + 1.0 / v**2
        h[1, 2:] = h[2:, 1] = (sigma * v / zeta**2 - 1.0 / zeta) * vt
        # W block: (v^2/zeta^2) vec(T) vec(T)^T + (v/zeta + 1) T (.) T
        h[2:, 2:] = (v / zeta)**2 * np.outer(vt, vt) \
            + (v / zeta + 1.0) * np.kron(t, t)
        return h


# --------------------------------------------------------------------------
# hypograph power cone, geometric mean cone, root-determinant cone
# --------------------------------------------------------------------------

class _HPowerBase(BarrierWorkspace):
    def _prepare(self):
        p = self.point
        self.u = float(p.epi)
        self.w = p.vec
        self.alpha = self.cone.alpha
        if np.all(self.w > 0.0):
            self.lw = np.log(self.w)
            self.phi = float(np.exp(np.dot(self.alpha, self.lw)))
            self.zeta = self.phi - self.u
        else:
            self.zeta = np.nan

    def _interior(self) -> bool:
        return np.all(self.w > 0.0) and self.zeta > 0.0

    def value(self) -> float:
        return -np.log(self.zeta) - float(np.sum(self.lw))

    def _gradient(self) -> ConePoint:
        gu = 1.0 / self.zeta
        gw = -(self.phi / self.zeta) * self.alpha / self.w - 1.0 / self.w
        return ConePoint(epi=gu, vec=gw)

    def hessian_apply(self, x: ConePoint) -> ConePoint:
        check_shape(self.cone, x)
        xu, xw = float(x.epi), x.vec
        w, alpha, phi, zeta = self.w, self.alpha, self.phi, self.zeta
        dphi = phi * float(np.dot(alpha, xw / w))
        dzeta = -xu + dphi
        out_u = -dzeta / zeta**2
        dk = dphi / zeta - phi * dzeta / zeta**2
        out_w = -alpha * dk / w + (phi / zeta) * alpha * xw / w**2 + xw / w**2
        return ConePoint(epi=out_u, vec=out_w)

    def _hessian_dense(self) -> np.ndarray:
        w, alpha, phi, zeta = self.w, self.alpha, self.phi, self.zeta
        xi = np.concatenate(([-1.0], alpha * phi / w))
        h = np.outer(xi, xi) / zeta**2
        aw = alpha / w
        h[1:, 1:] -= (phi / zeta) * np.outer(aw, aw)
        idx = np.arange(1, 1 + w.size)
        h[idx, idx] += alpha * phi / (zeta * w**2) + 1.0 / w**2
        return h


class _HPowerW(_HPowerBase, family=ConeFamily.HPOWER):
    def inverse_hessian_apply(self, x: ConePoint) -> ConePoint:
        # closed form derived by differentiating the conjugate-gradient map
        check_shape(self.cone, x)
        xu, z = float(x.epi), x.vec
        w, alpha, phi, zeta = self.w, self.alpha, self.phi, self.zeta
        gu = 1.0 / zeta
        k1 = 1.0 + alpha * phi * gu
        k2 = float(np.sum(alpha**2 / k1))
        k3 = 1.0 - phi * gu * k2
        s = float(np.dot(z, alpha * w / k1))
        out_u = (zeta**2 + (k2 / k3) * phi**2) * xu + (phi / k3) * s
        out_w = (w**2 / k1) * z \
            + (alpha * w / k1) * (phi / k3) * xu \
            + (gu * phi / k3) * s * (alpha * w / k1)
        return ConePoint(epi=out_u, vec=out_w)


class _HGeomW(_HPowerBase, family=ConeFamily.HGEOM):
    pass  # dense-factorization inverse from the base class


class _RtDetW(BarrierWorkspace, family=ConeFamily.RTDET):
    def _prepare(self):
        p = self.point
        self.u = float(p.epi)
        self.eig = sym_eigen(p.mat)
        self.lam = self.eig.values
        if np.all(self.lam > 0.0):
            self.llam = np.log(self.lam)
            self.phi = float(np.exp(np.mean(self.llam)))
            self.zeta = self.phi - self.u
        else:
            self.zeta = np.nan
        self._inv = None

    def _interior(self) -> bool:
        return np.all(self.lam > 0.0) and self.zeta > 0.0

    def _winv(self) -> np.ndarray:
        if self._inv is None:
            u = self.eig.vectors
            self._inv = (u / self.lam) @ u.T
        return self._inv

    def value(self) -> float:
        return -np.log(self.zeta) - float(np.sum(self.llam))

    def _gradient(self) -> ConePoint:
        d = self.lam.size
        glam = -(self.phi / d) / (self.zeta * self.lam) - 1.0 / self.lam
        u = self.eig.vectors
        return ConePoint(epi=1.0 / self.zeta, mat=(u * glam) @ u.T)

    def hessian_apply(self, x: ConePoint) -> ConePoint:
        check_shape(self.cone, x)
        xu, xm = float(x.epi), x.mat
        phi, zeta, d = self.phi, self.zeta, self.lam.size
        t = self._winv()
        tx = t @ xm
        dphi = (phi / d) * float(np.trace(tx))
        dzeta = -xu + dphi
        out_u = -dzeta / zeta**2
        c = phi / (d * zeta) + 1.0
        dc = dphi / (d * zeta) - phi * dzeta / (d * zeta**2)
        out_m = -dc * t + c * (tx @ t)
        return ConePoint(epi=out_u, mat=out_m)

    def _hessian_dense(self) -> np.ndarray:
        phi, zeta, d = self.phi, self.zeta, self.lam.size
        u = self.u
        t = self._winv()
        vt = t.ravel()
        n = 1 + d * d
        h = np.empty((n, n))
        h[0, 0] = 1.0 / zeta**2
        h[0, 1:] = h[1:, 0] = -(phi / d) * vt / zeta**2
        # W block couples through d(phi) = (phi/d) tr(T X) and dT = -T X T
        h[1:, 1:] = (phi * u / (d**2 * zeta**2)) * np.outer(vt, vt) \
            + (phi / (d * zeta) + 1.0) * np.kron(t, t)
        return h


# --------------------------------------------------------------------------
# radial power cone
# --------------------------------------------------------------------------

class _RPowerBase(BarrierWorkspace):
    def _prepare(self):
        p = self.point
        self.u = np.atleast_1d(np.asarray(p.epi, dtype=float))
        self.w = p.vec
        self.alpha = self.cone.alpha
        self.nrm2 = float(np.dot(self.u, self.u))
        if np.all(self.w > 0.0):
            self.lw = np.log(self.w)
            self.phi = float(np.exp(2.0 * np.dot(self.alpha, self.lw)))
            self.zeta = self.phi - self.nrm2
        else:
            self.zeta = np.nan

    def _interior(self) -> bool:
        return np.all(self.w > 0.0) and self.zeta > 0.0

    def _epi_out(self, arr: np.ndarray):
        return arr if self.cone.family is ConeFamily.RPOWER else float(arr[0])

    def value(self) -> float:
        return -np.log(self.zeta) - float(np.dot(1.0 - self.alpha, self.lw))

    def _gw(self) -> np.ndarray:
        return (-2.0 * self.alpha * self.phi / (self.w * self.zeta)
                - (1.0 - self.alpha) / self.w)

    def _gradient(self) -> ConePoint:
        gu = 2.0 * self.u / self.zeta
        return ConePoint(epi=self._epi_out(gu), vec=self._gw())

    def hessian_apply(self, x: ConePoint) -> ConePoint:
        check_shape(self.cone, x)
        xu = np.atleast_1d(np.asarray(x.epi, dtype=float))
        xw = x.vec
        u, w, alpha, phi, zeta = self.u, self.w, self.alpha, self.phi, self.zeta
        dphi = 2.0 * phi * float(np.dot(alpha, xw / w))
        dzeta = dphi - 2.0 * float(np.dot(u, xu))
        out_u = 2.0 * xu / zeta - 2.0 * u * dzeta / zeta**2
        dk = dphi / zeta - phi * dzeta / zeta**2
        out_w = (-2.0 * alpha * dk / w
                 + 2.0 * alpha * phi * xw / (zeta * w**2)
                 + (1.0 - alpha) * xw / w**2)
        return ConePoint(epi=self._epi_out(out_u), vec=out_w)

    def _hessian_dense(self) -> np.ndarray:
        u, w, alpha, phi, zeta = self.u, self.w, self.alpha, self.phi, self.zeta
        d1 = u.size
        xi = np.concatenate((-2.0 * u, 2.0 * alpha * phi / w))
        h = np.outer(xi, xi) / zeta**2
        iu = np.arange(d1)
        h[iu, iu] += 2.0 / zeta
        aw = alpha / w
        h[d1:, d1:] -= (4.0 * phi / zeta) * np.outer(aw, aw)
        iw = np.arange(d1, d1 + w.size)
        h[iw, iw] += 2.0 * alpha * phi / (zeta * w**2) + (1.0 - alpha) / w**2
        return h

    def inverse_hessian_apply(self, x: ConePoint) -> ConePoint:
        # closed form derived by differentiating the conjugate-gradient map
        check_shape(self.cone, x)
        xu = np.atleast_1d(np.asarray(x.epi, dtype=float))
        z = x.vec
        u, w, alpha, phi, zeta = self.u, self.w, self.alpha, self.phi, self.zeta
        gw = self._gw()
        k1 = phi + self.nrm2
        k2 = float(np.sum(alpha**2 / (w * gw)))
        k3 = k1 / (2.0 * phi) + 2.0 * k2 * self.nrm2 / zeta
        xu_u = float(np.dot(xu, u))
        s = float(np.sum(alpha * z / gw))
        out_u = 0.5 * zeta * xu - (u / k3) * (((2.0 * k2 * phi + zeta * k3) / k1) * xu_u + s)
        out_w = -(w / gw) * z - (alpha / (k3 * gw)) * (xu_u - (2.0 * self.nrm2 / zeta) * s)
        return ConePoint(epi=self._epi_out(out_u), vec=out_w)


class _RPowerW(_RPowerBase, family=ConeFamily.RPOWER):
    pass


class _RGeomW(_RPowerBase, family=ConeFamily.RGEOM):
    pass


# --------------------------------------------------------------------------
# infinity norm cone and spectral norm cone
# --------------------------------------------------------------------------

class _LInfW(BarrierWorkspace, family=ConeFamily.LINF):
    def _prepare(self):
        p = self.point
        self.u = float(p.epi)
        self.w = p.vec
        self.zi = self.u**2 - self.w**2

    def _interior(self) -> bool:
        return self.u > 0.0 and np.all(self.zi > 0.0)

    def value(self) -> float:
        return -float(np.sum(np.log(self.zi))) + (self.w.size - 1) * np.log(self.u)

    def _gradient(self) -> ConePoint:
        d = self.w.size
        gu = (d - 1) / self.u - 2.0 * self.u * float(np.sum(1.0 / self.zi))
        return ConePoint(epi=gu, vec=2.0 * self.w / self.zi)

    def hessian_apply(self, x: ConePoint) -> ConePoint:
        check_shape(self.cone, x)
        xu, xw = float(x.epi), x.vec
        u, w, zi = self.u, self.w, self.zi
        d = w.size
        dz = 2.0 * u * xu - 2.0 * w * xw
        out_u = -(d - 1) * xu / u**2 - float(np.sum(2.0 * xu / zi - 2.0 * u * dz / zi**2))
        out_w = 2.0 * xw / zi - 2.0 * w * dz / zi**2
        return ConePoint(epi=out_u, vec=out_w)

    def _hessian_dense(self) -> np.ndarray:
        u, w, zi = self.u, self.w, self.zi
        d = w.size
        h = np.zeros((1 + d, 1 + d))
        h[0, 0] = -(d - 1) / u**2 + float(np.sum(2.0 * (u**2 + w**2) / zi**2))
        h[0, 1:] = -4.0 * u * w / zi**2
        h[1:, 0] = h[0, 1:]
        idx = np.arange(1, 1 + d)
        h[idx, idx] = 2.0 * (u**2 + w**2) / zi**2
        return h


class _LSpecW(BarrierWorkspace, family=ConeFamily.LSPEC):
    def _prepare(self):
        p = self.point
        self.u = float(p.epi)
        self.W = p.mat
        self.svd = svd(p.mat)
        self.zi = self.u**2 - self.svd.sigma**2

    def _interior(self) -> bool:
        return self.u > 0.0 and np.all(self.zi > 0.0)

    def value(self) -> float:
        d1 = self.svd.sigma.size
        return -float(np.sum(np.log(self.zi))) + (d1 - 1) * np.log(self.u)

    def _t(self) -> np.ndarray:
        # inverse of u^2 I - W W^T in the left singular basis
        u = self.svd.U
        return (u / self.zi) @ u.T

    def _gradient(self) -> ConePoint:
        d1 = self.svd.sigma.size
        gu = (d1 - 1) / self.u - 2.0 * self.u * float(np.sum(1.0 / self.zi))
        gr = 2.0 * self.svd.sigma / self.zi
        gm = (self.svd.U * gr) @ self.svd.V.T
        return ConePoint(epi=gu, mat=gm)

    def hessian_apply(self, x: ConePoint) -> ConePoint:
        check_shape(self.cone, x)
        xu, xm = float(x.epi), x.mat
        u, w = self.u, self.W
        d1 = self.svd.sigma.size
        t = self._t()
        tr_t = float(np.sum(1.0 / self.zi))
        tr_t2 = float(np.sum(1.0 / self.zi**2))
        t2w = (self.svd.U * (self.svd.sigma / self.zi**2)) @ self.svd.V.T
        out_u = (-2.0 * tr_t - (d1 - 1) / u**2 + 4.0 * u**2 * tr_t2) * xu \
            - 4.0 * u * float(np.sum(t2w * xm))
        tw = t @ w
        out_m = -4.0 * u * xu * (t @ tw) \
            + 2.0 * t @ (xm @ w.T + w @ xm.T) @ tw + 2.0 * t @ xm
        return ConePoint(epi=out_u, mat=out_m)

    def _hessian_dense(self) -> np.ndarray:
        u, w = self.u, self.W
        d1, d2 = w.shape
        t = self._t()
        tr_t = float(np.sum(1.0 / self.zi))
        tr_t2 = float(np.sum(1.0 / self.zi**2))
        t2w = (self.svd.U * (self.svd.sigma / self.zi**2)) @ self.svd.V.T
        tw = t @ w
        n = 1 + d1 * d2
        h = np.empty((n, n))
        h[0, 0] = -2.0 * tr_t - (d1 - 1) / u**2 + 4.0 * u**2 * tr_t2
        h[0, 1:] = h[1:, 0] = -4.0 * u * t2w.ravel()
        # row-major operator forms of X -> 2T X (W^T T W), 2(TW) X^T (TW), 2T X
        wtw = w.T @ tw
        block = np.kron(2.0 * t, wtw) + np.kron(2.0 * t, np.eye(d2))
        block += 2.0 * np.einsum("ik,lj->ijlk", tw, tw).reshape(n - 1, n - 1)
        h[1:, 1:] = block
        return h


# --------------------------------------------------------------------------
# module-level wrappers
# --------------------------------------------------------------------------

def value(cone: ConeDescriptor, point: ConePoint) -> float:
    """Barrier value ``f(point)``; raises away from the interior."""
    return BarrierWorkspace(cone, point).value()


def gradient(cone: ConeDescriptor, point: ConePoint) -> ConePoint:
    """Barrier gradient ``g(point)``."""
    return BarrierWorkspace(cone, point).gradient()


def hessian_apply(cone: ConeDescriptor, point: ConePoint, x: ConePoint) -> ConePoint:
    """Hessian action ``H(point) x`` (exact, not finite differenced)."""
    return BarrierWorkspace(cone, point).hessian_apply(x)


def inverse_hessian_apply(cone: ConeDescriptor, point: ConePoint, x: ConePoint) -> ConePoint:
    """Inverse Hessian action ``H(point)^{-1} x``."""
    return BarrierWorkspace(cone, point).inverse_hessian_apply(x)


def hessian_dense(cone: ConeDescriptor, point: ConePoint) -> np.ndarray:
    """Dense Hessian in packed ambient coordinates (for tests and factorization)."""
    return BarrierWorkspace(cone, point).hessian_dense()
