"""Tour of the primal barrier oracles.

Each cone family carries a logarithmically homogeneous self-concordant
barrier f on its interior.  This script evaluates f, its gradient g, the
Hessian action, and the inverse Hessian action at interior points, and
checks the identities every such barrier satisfies:

    <-g(w), w> = nu             (the barrier parameter)
    f(theta w) = f(w) - nu log(theta)
    H(w) w     = -g(w)
"""

import numpy as np

import conebarriers as cb

rng = np.random.default_rng(0)

print("=" * 64)
print("1. A hypograph geometric-mean cone in dimension 4")
print("=" * 64)

cone = cb.ConeDescriptor.hgeom(4)
w = cb.ConePoint(epi=0.3, vec=np.array([1.0, 1.5, 0.8, 1.2]))
print("barrier parameter nu =", cb.barrier_parameter(cone))
print("interior?            ", cb.in_interior(cone, w))
print("f(w)                 =", cb.value(cone, w))

g = cb.gradient(cone, w)
print("g(w) epi block       =", g.epi)
print("g(w) vec block       =", g.vec)
print("<-g(w), w>           =", -cb.inner(cone, g, w), " (equals nu)")

theta = 7.0
w_scaled = cb.unpack(cone, theta * cb.pack(cone, w))
print("f(7 w) - f(w)        =", cb.value(cone, w_scaled) - cb.value(cone, w))
print("-nu log 7            =", -cone.nu * np.log(theta))

print()
print("=" * 64)
print("2. Hessian and inverse Hessian agree with each other")
print("=" * 64)

x = cb.ConePoint(epi=0.5, vec=rng.standard_normal(4))
hx = cb.hessian_apply(cone, w, x)
back = cb.inverse_hessian_apply(cone, w, hx)
print("||Hinv(H x) - x|| =", np.linalg.norm(cb.pack(cone, back) - cb.pack(cone, x)))

hw = cb.hessian_apply(cone, w, w)
print("||H w + g||       =", np.linalg.norm(cb.pack(cone, hw) + cb.pack(cone, g)))

print()
print("=" * 64)
print("3. The same oracles on a matrix cone (root-determinant)")
print("=" * 64)

cone_m = cb.ConeDescriptor.rtdet(3)
q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
lam = np.array([0.9, 1.4, 2.2])
W = (q * lam) @ q.T
point = cb.ConePoint(epi=0.5, mat=0.5 * (W + W.T))
print("interior?  ", cb.in_interior(cone_m, point))
print("f(u, W)    =", cb.value(cone_m, point))
G = cb.gradient(cone_m, point)
print("<-G, point> =", -cb.inner(cone_m, G, point), " (equals nu =", cone_m.nu, ")")

# restricted to diagonal matrices the oracle is the vector-cone oracle
diag_cone = cb.ConeDescriptor.hgeom(3)
diag_point = cb.ConePoint(epi=0.5, vec=lam)
w_diag = cb.ConePoint(epi=0.5, mat=np.diag(lam))
print("value on diag(W) - vector value =",
      cb.value(cone_m, w_diag) - cb.value(diag_cone, diag_point))
