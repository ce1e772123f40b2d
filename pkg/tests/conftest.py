"""Shared sampling helpers for the test suite."""

import numpy as np
import pytest

from conebarriers import ConeDescriptor, ConeFamily, ConePoint, pack, unpack


def rand_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def rand_frame(rng, rows, cols):
    q, _ = np.linalg.qr(rng.standard_normal((rows, cols)))
    return q


def random_cone(family, rng, d=None):
    """Descriptor with random dimensions (and weights where applicable)."""
    fam = ConeFamily(family)
    if fam in (ConeFamily.LOGDET, ConeFamily.RTDET):
        d = d or int(rng.integers(2, 7))
        return ConeDescriptor(fam, d=d)
    if fam is ConeFamily.LSPEC:
        d1 = int(rng.integers(2, 5))
        d2 = d1 + int(rng.integers(0, 4))
        return ConeDescriptor.lspec(d1, d2)
    d = d or int(rng.integers(2, 9))
    if fam is ConeFamily.HPOWER:
        a = rng.uniform(0.05, 1.0, d)
        return ConeDescriptor.hpower(a / a.sum())
    if fam is ConeFamily.RPOWER:
        a = rng.uniform(0.05, 1.0, d)
        return ConeDescriptor.rpower(int(rng.integers(1, 4)), a / a.sum())
    if fam is ConeFamily.RGEOM:
        return ConeDescriptor.rgeom(d)
    return ConeDescriptor(fam, d=d)


def interior_point(cone, rng, scale=1.0):
    """Random strictly interior primal point with an O(1) boundary margin."""
    fam = cone.family
    if fam is ConeFamily.LOG:
        w = rng.uniform(0.3, 3.0, cone.d) * scale
        v = rng.uniform(0.3, 3.0) * scale
        u = v * (np.sum(np.log(w)) - cone.d * np.log(v)) - rng.uniform(0.2, 2.0) * scale
        return ConePoint(epi=u, persp=v, vec=w)
    if fam is ConeFamily.LOGDET:
        lam = rng.uniform(0.3, 3.0, cone.d) * scale
        v = rng.uniform(0.3, 3.0) * scale
        u = v * (np.sum(np.log(lam)) - cone.d * np.log(v)) - rng.uniform(0.2, 2.0) * scale
        q = rand_orthogonal(rng, cone.d)
        m = (q * lam) @ q.T
        return ConePoint(epi=u, persp=v, mat=0.5 * (m + m.T))
    if fam in (ConeFamily.HPOWER, ConeFamily.HGEOM):
        w = rng.uniform(0.3, 3.0, cone.d) * scale
        u = np.exp(np.dot(cone.alpha, np.log(w))) - rng.uniform(0.2, 2.0) * scale
        return ConePoint(epi=u, vec=w)
    if fam is ConeFamily.RTDET:
        lam = rng.uniform(0.3, 3.0, cone.d) * scale
        u = np.exp(np.mean(np.log(lam))) - rng.uniform(0.2, 2.0) * scale
        q = rand_orthogonal(rng, cone.d)
        m = (q * lam) @ q.T
        return ConePoint(epi=u, mat=0.5 * (m + m.T))
    if fam in (ConeFamily.RPOWER, ConeFamily.RGEOM):
        w = rng.uniform(0.3, 3.0, cone.d2) * scale
        cap = np.exp(np.dot(cone.alpha, np.log(w)))
        t = rng.uniform(0.0, 0.9)
        if fam is ConeFamily.RGEOM:
            return ConePoint(epi=float(rng.choice([-1.0, 1.0])) * t * cap, vec=w)
        direction = rng.standard_normal(cone.d1)
        direction /= np.linalg.norm(direction)
        return ConePoint(epi=t * cap * direction, vec=w)
    if fam is ConeFamily.LINF:
        w = rng.uniform(-1.0, 1.0, cone.d) * scale
        u = np.max(np.abs(w)) + rng.uniform(0.1, 1.5) * scale
        return ConePoint(epi=u, vec=w)
    sigma = rng.uniform(0.2, 2.0, cone.d1) * scale
    u = sigma.max() + rng.uniform(0.1, 1.5) * scale
    q = rand_orthogonal(rng, cone.d1)
    v = rand_frame(rng, cone.d2, cone.d1)
    return ConePoint(epi=u, mat=(q * sigma) @ v.T)


def random_direction(cone, rng):
    """Unit direction in packed coordinates; the matrix block is symmetric
    for the symmetric-matrix families so it stays in the barrier's domain."""
    x = rng.standard_normal(cone.ambient_dim)
    if cone.family in (ConeFamily.LOGDET, ConeFamily.RTDET):
        pt = unpack(cone, x)
        m = 0.5 * (pt.mat + pt.mat.T)
        x = pack(cone, ConePoint(epi=pt.epi, persp=pt.persp, vec=pt.vec, mat=m))
    return x / np.linalg.norm(x)


ALL_FAMILIES = [f.value for f in ConeFamily]
VECTOR_FAMILIES = ["log", "hpower", "hgeom", "rpower", "rgeom", "linf"]
MATRIX_FAMILIES = ["logdet", "rtdet", "lspec"]


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
