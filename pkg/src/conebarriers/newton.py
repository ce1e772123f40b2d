"""Generic conjugate-gradient computation by damped/full Newton steps.

Minimizes the self-concordant objective ``<r, w> + f(w)`` over the cone
interior.  The local norm of the objective gradient,

    lambda = sqrt(<g(w) + r, H(w)^{-1} (g(w) + r)>),

drives everything: steps are damped by ``1/(1+lambda)`` until ``lambda``
drops below ``(3 - sqrt(5))/2``, after which full Newton steps converge
quadratically; the iteration stops at ``lambda <= eps``, on a
slow-progress (stall) test, on an iteration cap, or if a step cannot be
kept inside the cone.  The minimizer negated is the conjugate gradient.

``lambda`` is evaluated from its definition above with the same solve that
produces the step.  The algebraically equal form
``sqrt(nu - 2 <w, r> + <r, H^{-1} r>)`` cancels catastrophically once
``lambda`` is small (the radicand is a difference of numbers of size
``nu``), so it could never reach the default tolerance of 1000 times
machine epsilon; it is exposed separately as :func:`local_norm_lambda`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .barriers import BarrierWorkspace
from .cones import (
    ConeDescriptor,
    ConeFamily,
    ConePoint,
    NotInteriorError,
    dual_in_interior,
    in_interior,
    pack,
    unpack,
)
from .conjugate import ConjugateResult
from .linalg import NonPositiveDefiniteError

__all__ = [
    "NewtonStatus",
    "NewtonTrace",
    "DAMPED_THRESHOLD",
    "DEFAULT_EPS",
    "local_norm_lambda",
    "default_initial_point",
    "generic_conjugate_gradient",
]

DAMPED_THRESHOLD = (3.0 - math.sqrt(5.0)) / 2.0
DEFAULT_EPS = 1000.0 * np.finfo(float).eps
_MAX_ITER = 1000
_MAX_BACKTRACKS = 20


class NewtonStatus(Enum):
    CONVERGED = "converged"
    STALLED = "stalled"
    ITERATION_CAP = "iteration_cap"
    LEFT_INTERIOR = "left_interior"


@dataclass(frozen=True)
class NewtonTrace:
    iterations: int
    lambdas: list[float]
    status: NewtonStatus


def local_norm_lambda(cone: ConeDescriptor, w: ConePoint, r: ConePoint) -> float:
    """Local norm of the objective gradient via the simplified radicand
    ``nu - 2 <w, r> + <r, H(w)^{-1} r>``, clamped at zero against round-off.
    """
    ws = BarrierWorkspace(cone, w)
    rf = pack(cone, r)
    wf = pack(cone, w)
    hinv_r = pack(cone, ws.inverse_hessian_apply(r))
    rad = cone.nu - 2.0 * float(np.dot(wf, rf)) + float(np.dot(rf, hinv_r))
    return math.sqrt(max(rad, 0.0))


def _canonical_interior(cone: ConeDescriptor) -> ConePoint:
    fam = cone.family
    if fam is ConeFamily.LOG:
        return ConePoint(epi=-1.0, persp=1.0, vec=np.ones(cone.d))
    if fam is ConeFamily.LOGDET:
        return ConePoint(epi=-1.0, persp=1.0, mat=np.eye(cone.d))
    if fam in (ConeFamily.HPOWER, ConeFamily.HGEOM):
        return ConePoint(epi=-1.0, vec=np.ones(cone.d))
    if fam is ConeFamily.RTDET:
        return ConePoint(epi=-1.0, mat=np.eye(cone.d))
    if fam is ConeFamily.RPOWER:
        return ConePoint(epi=np.zeros(cone.d1), vec=np.ones(cone.d2))
    if fam is ConeFamily.RGEOM:
        return ConePoint(epi=0.0, vec=np.ones(cone.d2))
    if fam is ConeFamily.LINF:
        return ConePoint(epi=1.0, vec=np.zeros(cone.d))
    return ConePoint(epi=1.0, mat=np.zeros(cone.mat_shape))


def default_initial_point(cone: ConeDescriptor, r: ConePoint) -> ConePoint:
    """Canonical interior point rescaled so that ``<w0, r> = nu``.

    The scaling factor is positive because a primal interior point and a
    dual interior point have positive pairing, and cones are invariant
    under positive scaling, so the result stays interior.
    """
    wc = _canonical_interior(cone)
    theta = cone.nu / float(np.dot(pack(cone, wc), pack(cone, r)))
    return unpack(cone, theta * pack(cone, wc))


def _symmetrize_inplace(cone: ConeDescriptor, wf: np.ndarray) -> np.ndarray:
    # round-off can drift the matrix block of an iterate off the symmetric
    # subspace, which the membership test rejects
    if cone.family in (ConeFamily.LOGDET, ConeFamily.RTDET):
        pt = unpack(cone, wf)
        m = 0.5 * (pt.mat + pt.mat.T)
        return pack(cone, ConePoint(epi=pt.epi, persp=pt.persp, vec=pt.vec, mat=m))
    return wf


def generic_conjugate_gradient(
    cone: ConeDescriptor,
    r: ConePoint,
    eps: float = DEFAULT_EPS,
    w0: ConePoint | None = None,
) -> tuple[ConjugateResult, NewtonTrace]:
    """Compute g*(r) by Newton iteration on ``<r, w> + f(w)``.

    Returns the conjugate result (``iterations`` counts Newton steps) and
    the solver trace with the sequence of local norms.  A stalled run
    returns the best iterate seen, mirroring the use of stalling as a
    stopping rather than failure condition.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if not dual_in_interior(cone, r):
        raise NotInteriorError(
            f"dual point is not interior to the {cone.family.value} dual cone"
        )
    if w0 is not None and not in_interior(cone, w0):
        raise NotInteriorError("supplied initial point is not interior")

    rf = pack(cone, r)
    wf = pack(cone, w0 if w0 is not None else default_initial_point(cone, r))

    def lam_and_direction(ws: BarrierWorkspace):
        grad_obj = pack(cone, ws.gradient()) + rf
        step = pack(cone, ws.inverse_hessian_apply(unpack(cone, grad_obj)))
        rad = float(np.dot(grad_obj, step))
        return math.sqrt(max(rad, 0.0)), step

    status = NewtonStatus.CONVERGED
    iterations = 0
    try:
        ws = BarrierWorkspace(cone, unpack(cone, wf))
        lam, step = lam_and_direction(ws)
    except (NotInteriorError, NonPositiveDefiniteError):
        # the constructed initial point is interior by design; only extreme
        # scaling can break it in floating point
        status = NewtonStatus.LEFT_INTERIOR
        lam, step = math.inf, None
    lambdas = [lam]
    best_lam, best_wf = lam, wf.copy()

    while status is NewtonStatus.CONVERGED and lam > eps:
        if iterations >= _MAX_ITER:
            status = NewtonStatus.ITERATION_CAP
            break
        alpha = 1.0 / (1.0 + lam) if lam > DAMPED_THRESHOLD else 1.0
        accepted = None
        for _ in range(_MAX_BACKTRACKS + 1):
            cand = _symmetrize_inplace(cone, wf - alpha * step)
            try:
                cand_ws = BarrierWorkspace(cone, unpack(cone, cand))
                accepted = (cand, cand_ws)
                break
            except (NotInteriorError, NonPositiveDefiniteError):
                alpha *= 0.5
        if accepted is None:
            status = NewtonStatus.LEFT_INTERIOR
            break
        wf, ws = accepted[0], accepted[1]
        iterations += 1
        lam_prev = lam
        try:
            lam, step = lam_and_direction(ws)
        except NonPositiveDefiniteError:
            status = NewtonStatus.LEFT_INTERIOR
            break
        lambdas.append(lam)
        if lam < best_lam:
            best_lam, best_wf = lam, wf.copy()
        # insufficient progress between consecutive iterations; near the
        # boundary the local norm floors above eps at round-off level, so
        # this is the stop that ends deep-offset runs
        if lam_prev != 1.0 and lam > 1000.0 * (lam_prev / (1.0 - lam_prev)) ** 2:
            status = NewtonStatus.STALLED
            break

    if status in (NewtonStatus.STALLED, NewtonStatus.ITERATION_CAP,
                  NewtonStatus.LEFT_INTERIOR):
        wf = best_wf
    g_star = unpack(cone, -wf)
    residual = abs(float(np.dot(-wf, rf)) + cone.nu)
    result = ConjugateResult(
        g_star=g_star,
        iterations=iterations,
        residual=residual,
        converged=status is NewtonStatus.CONVERGED,
    )
    return result, NewtonTrace(iterations=iterations, lambdas=lambdas, status=status)
