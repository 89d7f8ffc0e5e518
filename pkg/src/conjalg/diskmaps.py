"""Mobius self-maps of the closed unit disk.

Classification into the elliptic / parabolic / hyperbolic families, normal
forms with their conjugation invariants, and the analytic-conjugacy and
algebra-isomorphism decisions with explicit automorphism witnesses.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

TOL = 1e-9
WITNESS_TOL = 1e-10
BOUNDARY_PROBES = 720
INTERIOR_PROBES = 360


class MobiusError(ValueError):
    pass


class PoleError(MobiusError):
    pass


class NotDiskMapError(MobiusError):
    pass


class NotDecidableError(MobiusError):
    """Conjugacy of non-Mobius elliptic homeomorphisms is not decided here."""


def _normalize(a, b, c, d):
    det = a * d - b * c
    if det == 0:
        raise MobiusError("matrix is singular")
    s = cmath.sqrt(det)
    a, b, c, d = a / s, b / s, c / s, d / s
    tr = a + d
    flip = False
    if abs(tr) > TOL:
        if tr.real < -TOL or (abs(tr.real) <= TOL and tr.imag < 0):
            flip = True
    else:
        for w in (a, b, c, d):
            if abs(w) > TOL:
                if w.real < -TOL or (abs(w.real) <= TOL and w.imag < 0):
                    flip = True
                break
    if flip:
        a, b, c, d = -a, -b, -c, -d
    return a, b, c, d


@dataclass(frozen=True)
class MobiusMap:
    """z -> (az + b)/(cz + d), stored with determinant one."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = _normalize(
            complex(self.a), complex(self.b), complex(self.c), complex(self.d)
        )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __call__(self, z: complex) -> complex:
        return mobius_apply(self, z)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def rotation(cls, c: complex) -> "MobiusMap":
        return cls(c, 0, 0, 1)

    @classmethod
    def dilation(cls, lam: complex) -> "MobiusMap":
        return cls(lam, 0, 0, 1)

    @classmethod
    def blaschke(cls, p: complex) -> "MobiusMap":
        """phi_p(z) = (z - p)/(1 - conj(p) z), swapping p and 0."""
        return cls(1, -p, -p.conjugate(), 1)

    @classmethod
    def from_json(cls, obj) -> "MobiusMap":
        if "preset" in obj:
            name = obj["preset"]
            if name == "rotation":
                return cls.rotation(complex(*obj["c"]))
            if name == "dilation":
                return cls.dilation(complex(*obj["lambda"]))
            if name == "blaschke_half":
                return cls(1, -0.5, -0.5, 1)
            if name == "blaschke_quarter":
                return cls(1, -0.25, -0.25, 1)
            raise MobiusError("unknown preset %r" % (name,))
        (ar, ai), (br, bi), (cr, ci), (dr, di) = obj["matrix"]
        return cls(complex(ar, ai), complex(br, bi), complex(cr, ci), complex(dr, di))

    def to_json(self):
        return {
            "matrix": [[w.real, w.imag] for w in (self.a, self.b, self.c, self.d)]
        }


def mobius_apply(m: MobiusMap, z: complex) -> complex:
    den = m.c * z + m.d
    if abs(den) < 1e-300:
        raise PoleError("evaluation at a pole")
    return (m.a * z + m.b) / den


def mobius_derivative(m: MobiusMap, z: complex) -> complex:
    den = m.c * z + m.d
    if abs(den) < 1e-300:
        raise PoleError("derivative at a pole")
    return 1.0 / (den * den)  # det is one


def mobius_compose(m1: MobiusMap, m2: MobiusMap) -> MobiusMap:
    """The map z -> m1(m2(z))."""
    return MobiusMap(
        m1.a * m2.a + m1.b * m2.c,
        m1.a * m2.b + m1.b * m2.d,
        m1.c * m2.a + m1.d * m2.c,
        m1.c * m2.b + m1.d * m2.d,
    )


def mobius_inverse(m: MobiusMap) -> MobiusMap:
    return MobiusMap(m.d, -m.b, -m.c, m.a)


def _probe_points(n_boundary=BOUNDARY_PROBES, n_interior=INTERIOR_PROBES):
    ang = np.linspace(0.0, 2 * math.pi, n_boundary, endpoint=False)
    boundary = np.exp(1j * ang)
    k = np.arange(n_interior)
    radii = (k + 0.5) / n_interior
    interior = radii * np.exp(2j * math.pi * k * 0.6180339887498949)
    return boundary, interior


def maps_disk_to_disk(m: MobiusMap, tol: float = TOL) -> bool:
    boundary, interior = _probe_points()
    for pts in (boundary, interior):
        den = m.c * pts + m.d
        if np.min(np.abs(den)) < 1e-12:
            return False
        if np.max(np.abs((m.a * pts + m.b) / den)) > 1 + tol:
            return False
    return True


def is_disk_automorphism(m: MobiusMap, tol: float = TOL) -> bool:
    if not maps_disk_to_disk(m, tol):
        return False
    boundary, _ = _probe_points()
    vals = np.abs((m.a * boundary + m.b) / (m.c * boundary + m.d))
    return bool(np.max(np.abs(vals - 1)) <= tol)


# a double boundary fixed point splits by about sqrt(machine eps) under
# conjugation, so the boundary band must be much wider than TOL
def _location(z: complex, tol: float = 1e-6) -> str:
    r = abs(z)
    if abs(r - 1) <= tol:
        return "boundary"
    return "interior" if r < 1 else "exterior"


_INFINITY = complex("inf")


def mobius_fixed_points(m: MobiusMap):
    """Fixed points in the extended plane, as (value, location) pairs."""
    if abs(m.c) > TOL:
        roots = np.roots([m.c, m.d - m.a, -m.b])
        return [(complex(z), _location(complex(z))) for z in roots]
    pts = []
    if abs(m.d - m.a) > TOL:
        z = m.b / (m.d - m.a)
        pts.append((z, _location(z)))
    pts.append((_INFINITY, "exterior"))
    return pts


KIND_IDENTITY = "identity"
KIND_ELLIPTIC_AUTO = "elliptic_automorphism"
KIND_PARABOLIC = "parabolic"
KIND_HYPERBOLIC = "hyperbolic"
KIND_ELLIPTIC_NONAUTO = "elliptic_nonautomorphism"
KIND_NONELLIPTIC_NONAUTO = "nonelliptic_nonautomorphism"


@dataclass(frozen=True)
class DiskClassification:
    kind: str
    fixed_points: tuple       # ((value, location), ...), distinguished first
    multiplier: complex       # derivative at the distinguished fixed point

    @property
    def distinguished(self) -> complex:
        return self.fixed_points[0][0]

    def to_json(self):
        fps = [
            {"z": None if z == _INFINITY else [z.real, z.imag], "location": loc}
            for z, loc in self.fixed_points
        ]
        return {
            "kind": self.kind,
            "fixed_points": fps,
            "multiplier": [self.multiplier.real, self.multiplier.imag],
        }


def _is_identity(m: MobiusMap) -> bool:
    return (
        abs(m.b) <= TOL and abs(m.c) <= TOL and abs(m.a - m.d) <= TOL
    )


def classify(m: MobiusMap, tol: float = TOL) -> DiskClassification:
    """Classify a Mobius self-map of the closed disk.

    The distinguished fixed point is the interior one for elliptic maps,
    the attracting one otherwise.
    """
    if not maps_disk_to_disk(m, max(tol, TOL)):
        raise NotDiskMapError("not a self-map of the closed unit disk")
    if _is_identity(m):
        return DiskClassification(KIND_IDENTITY, ((0.0 + 0.0j, "interior"),), 1.0 + 0j)

    fps = mobius_fixed_points(m)
    auto = is_disk_automorphism(m, max(tol, TOL))

    def mult(z):
        return mobius_derivative(m, z)

    interior = [p for p in fps if p[1] == "interior"]
    boundary = [p for p in fps if p[1] == "boundary"]

    if interior:
        z = interior[0][0]
        lam = mult(z)
        rest = [p for p in fps if p is not interior[0]]
        kind = KIND_ELLIPTIC_AUTO if auto else KIND_ELLIPTIC_NONAUTO
        return DiskClassification(kind, tuple([interior[0]] + rest), lam)

    if auto:
        # parabolic iff the squared trace is 4 (double boundary fixed point)
        t2 = (m.a + m.d) ** 2
        if abs(t2 - 4) <= 1e-7:
            z = (m.a - m.d) / (2 * m.c) if abs(m.c) > TOL else boundary[0][0]
            return DiskClassification(
                KIND_PARABOLIC, ((z, "boundary"),), 1.0 + 0.0j
            )
        attracting = min(boundary, key=lambda p: abs(mult(p[0])))
        rest = [p for p in fps if p is not attracting]
        lam = mult(attracting[0])
        return DiskClassification(
            KIND_HYPERBOLIC, tuple([attracting] + rest), lam.real
        )

    # non-elliptic non-automorphism: a double fixed point is detected from
    # the trace, which is stable under conjugation, rather than from the
    # numerically split roots
    t2 = (m.a + m.d) ** 2
    if abs(m.c) > TOL and abs(t2 - 4) <= 1e-7:
        z = (m.a - m.d) / (2 * m.c)
        return DiskClassification(
            KIND_NONELLIPTIC_NONAUTO, ((z, "boundary"),), mult(z)
        )
    # otherwise the Denjoy-Wolff point is the boundary fixed point with
    # derivative of modulus at most one
    candidates = [p for p in boundary if abs(mult(p[0])) <= 1 + 1e-7]
    if not candidates:
        raise MobiusError("no attracting boundary fixed point found")
    dw = min(candidates, key=lambda p: abs(mult(p[0])))
    rest = [p for p in fps if p is not dw]
    return DiskClassification(
        KIND_NONELLIPTIC_NONAUTO, tuple([dw] + rest), mult(dw[0])
    )


def _halfplane_chart(p: complex) -> MobiusMap:
    """Disk onto the upper half-plane, sending the boundary point p to infinity."""
    return MobiusMap(1j, 1j * p, -1, p)


def _halfplane_form(m: MobiusMap, p: complex):
    """Coefficients (A, B) of the conjugated map w -> A w + B fixing infinity."""
    g = _halfplane_chart(p)
    t = mobius_compose(mobius_compose(g, m), mobius_inverse(g))
    if abs(t.c) > 1e-6:
        raise MobiusError("conjugated map does not fix infinity")
    return t.a / t.d, t.b / t.d


def normal_form(m: MobiusMap):
    """Kind plus the conjugation-invariant tuple of the map."""
    cl = classify(m)
    if cl.kind == KIND_IDENTITY:
        return cl.kind, ()
    if cl.kind in (KIND_ELLIPTIC_AUTO, KIND_ELLIPTIC_NONAUTO):
        phi = MobiusMap.blaschke(cl.distinguished)
        n = mobius_compose(mobius_compose(phi, m), mobius_inverse(phi))
        lam = n.a / n.d
        kappa = -n.c / n.d
        return cl.kind, (complex(lam), abs(kappa))
    if cl.kind == KIND_HYPERBOLIC:
        return cl.kind, (float(cl.multiplier.real),)
    if cl.kind == KIND_PARABOLIC:
        _, B = _halfplane_form(m, cl.distinguished)
        return cl.kind, (1.0 if B.real >= 0 else -1.0,)
    # non-elliptic non-automorphism
    A, B = _halfplane_form(m, cl.distinguished)
    if len(cl.fixed_points) == 1:  # double fixed point: parabolic type
        return cl.kind, ("parabolic_type", complex(B / abs(B)))
    return cl.kind, ("two_fixed_points", float((1.0 / A).real))


def _invariants_match(inv1, inv2, tol=1e-8) -> bool:
    if len(inv1) != len(inv2):
        return False
    for u, v in zip(inv1, inv2):
        if isinstance(u, str) or isinstance(v, str):
            if u != v:
                return False
        elif abs(complex(u) - complex(v)) > tol:
            return False
    return True


def verify_conjugacy_witness(gamma, m1, m2, samples) -> float:
    """max over samples of |gamma(m1(z)) - m2(gamma(z))|.

    gamma, m1 and m2 may be MobiusMap instances or plain point maps.
    """
    g = gamma if callable(gamma) else (lambda z: mobius_apply(gamma, z))
    f1 = m1 if callable(m1) else (lambda z: mobius_apply(m1, z))
    f2 = m2 if callable(m2) else (lambda z: mobius_apply(m2, z))
    worst = 0.0
    for z in samples:
        worst = max(worst, abs(g(f1(z)) - f2(g(z))))
    return float(worst)


def disk_samples(count: int = 1000, seed: int = 0) -> list:
    """Deterministic sample points of the closed disk (boundary included)."""
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.random(count))
    r[: count // 4] = 1.0  # keep a boundary share
    theta = rng.random(count) * 2 * math.pi
    return list(r * np.exp(1j * theta))


def _verified(gamma: MobiusMap, m1: MobiusMap, m2: MobiusMap):
    if not is_disk_automorphism(gamma, 1e-8):
        return None
    dev = verify_conjugacy_witness(gamma, m1, m2, disk_samples(400, seed=7))
    return gamma if dev <= WITNESS_TOL else None


def _elliptic_witness(m1, m2, cl1, cl2):
    phi1 = MobiusMap.blaschke(cl1.distinguished)
    phi2 = MobiusMap.blaschke(cl2.distinguished)
    n1 = mobius_compose(mobius_compose(phi1, m1), mobius_inverse(phi1))
    n2 = mobius_compose(mobius_compose(phi2, m2), mobius_inverse(phi2))
    k1 = -n1.c / n1.d
    k2 = -n2.c / n2.d
    if abs(k1) > 1e-10 and abs(k2) > 1e-10:
        c = (k1 / k2) / abs(k1 / k2)
    else:
        c = 1.0
    rot = MobiusMap.rotation(c)
    return _verified(
        mobius_compose(mobius_inverse(phi2), mobius_compose(rot, phi1)), m1, m2
    )


def _hyperbolic_witness(m1, m2, cl1, cl2):
    def chart(cl):
        att = cl.fixed_points[0][0]
        rep = cl.fixed_points[1][0]
        return MobiusMap(1, -att, 1, -rep)

    psi1, psi2 = chart(cl1), chart(cl2)
    # align the two half-plane images by a scalar; probe a free boundary point
    def probe(cl, psi):
        for k in range(8):
            b = cmath.exp(2j * math.pi * (k + 0.3) / 8)
            if min(abs(b - p[0]) for p in cl.fixed_points) > 0.2:
                return mobius_apply(psi, b)
        raise MobiusError("no free boundary probe found")

    c0 = probe(cl2, psi2) / probe(cl1, psi1)
    for c in (c0, -c0):
        gamma = mobius_compose(
            mobius_inverse(psi2),
            mobius_compose(MobiusMap.dilation(c), psi1),
        )
        w = _verified(gamma, m1, m2)
        if w is not None:
            return w
    return None


def _halfplane_witness(m1, m2, cl1, cl2, a: float, b: float):
    g1 = _halfplane_chart(cl1.distinguished)
    g2 = _halfplane_chart(cl2.distinguished)
    aff = MobiusMap(a, b, 0, 1)
    return _verified(
        mobius_compose(mobius_inverse(g2), mobius_compose(aff, g1)), m1, m2
    )


def analytically_conjugate(m1: MobiusMap, m2: MobiusMap):
    """Witness automorphism gamma with gamma o m1 = m2 o gamma, or None."""
    cl1 = classify(m1)
    cl2 = classify(m2)
    if cl1.kind != cl2.kind:
        return None
    kind1, inv1 = normal_form(m1)
    _, inv2 = normal_form(m2)
    if not _invariants_match(inv1, inv2):
        return None
    if kind1 == KIND_IDENTITY:
        return MobiusMap.identity()
    if kind1 in (KIND_ELLIPTIC_AUTO, KIND_ELLIPTIC_NONAUTO):
        return _elliptic_witness(m1, m2, cl1, cl2)
    if kind1 == KIND_HYPERBOLIC:
        return _hyperbolic_witness(m1, m2, cl1, cl2)
    A1, B1 = _halfplane_form(m1, cl1.distinguished)
    A2, B2 = _halfplane_form(m2, cl2.distinguished)
    if kind1 == KIND_PARABOLIC:
        return _halfplane_witness(m1, m2, cl1, cl2, (B2 / B1).real, 0.0)
    if len(cl1.fixed_points) == 1:  # parabolic-type contraction
        return _halfplane_witness(m1, m2, cl1, cl2, abs(B2) / abs(B1), 0.0)
    a = B2.imag / B1.imag
    b = ((B2 - a * B1) / (1 - A1)).real
    return _halfplane_witness(m1, m2, cl1, cl2, a, b)


VERDICT_CONJUGATE = "Conjugate"
VERDICT_INVERSE = "InverseConjugate"
VERDICT_NOT_ISOMORPHIC = "NotIsomorphic"


def semicrossed_iso_verdict(m1: MobiusMap, m2: MobiusMap):
    """Isomorphism verdict for the semicrossed products of two disk maps.

    The inverse branch applies only to elliptic automorphisms, where the
    algebra remembers the map up to inversion; everywhere else isomorphism
    forces plain analytic conjugacy.
    """
    w = analytically_conjugate(m1, m2)
    if w is not None:
        return VERDICT_CONJUGATE, w
    cl1 = classify(m1)
    cl2 = classify(m2)
    if cl1.kind == KIND_ELLIPTIC_AUTO and cl2.kind == KIND_ELLIPTIC_AUTO:
        w = analytically_conjugate(m1, mobius_inverse(m2))
        if w is not None:
            return VERDICT_INVERSE, w
    return VERDICT_NOT_ISOMORPHIC, None


def iso_verdict_general(map1, map2):
    """Verdict entry point that refuses non-Mobius inputs."""
    if not isinstance(map1, MobiusMap) or not isinstance(map2, MobiusMap):
        raise NotDecidableError(
            "conjugacy of general analytic self-maps is not decided; "
            "supply Mobius maps or use verify_conjugacy_witness"
        )
    return semicrossed_iso_verdict(map1, map2)
