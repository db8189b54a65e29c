"""The T-duality crossed module and the intertwiner view of 2-group data.

The crossed module has G = R^{2n} (evaluated at rational points),
H = Z^{2n} x U(1), t(m, s) = m, and action

    alpha(a, (m, s)) = (m, s - [a, m]),    [a, b] = a^T J b.

An object (A, X) acts as the crossed intertwiner (phi, f, eta) with
phi(a) = A a, f(m, s) = (A m, iso(A) s), eta(a, a') = a^T X a' mod 1.
A morphism acts as a crossed transformation.  The checkers verify the
four intertwiner axioms and the two transformation axioms exactly at
seeded sample points; the closed-form identity X - X^T == B_A (which is
equivalent to the third axiom) is enforced separately by `Obj` itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .groups import j_matrix
from .intlinalg import IntMat, Phase, RatVec, phase_bilinear
from .rng import XorShift64Star
from .twogroup import Mor, Obj, eval_mor

__all__ = [
    "TDGroupElement",
    "TDHElement",
    "TDMorphism",
    "pairing",
    "td_t",
    "td_alpha",
    "td_h_mul",
    "td_source",
    "td_target",
    "td_compose",
    "CrossedIntertwiner",
    "ci_from_obj",
    "check_ci_axioms",
    "ci_axiom_failures",
    "check_ct_axioms",
    "ct_axiom_failures",
    "functor_eval",
]


@dataclass(frozen=True)
class TDGroupElement:
    """A point of the base group R^{2n}, restricted to rational coordinates."""

    a: RatVec


@dataclass(frozen=True)
class TDHElement:
    """An element (m, s) of Z^{2n} x U(1)."""

    m: tuple[int, ...]
    s: Phase


@dataclass(frozen=True)
class TDMorphism:
    """Groupoid morphism (h, g): g -> t(h) + g."""

    h: TDHElement
    g: TDGroupElement


def td_t(h: TDHElement) -> tuple[int, ...]:
    return h.m


def pairing(n: int, a: RatVec, b: RatVec) -> Phase:
    """[a, b] = a^T J b mod 1."""
    return phase_bilinear(j_matrix(n), a, b)


def td_alpha(a: TDGroupElement, h: TDHElement) -> TDHElement:
    """alpha(a, (m, s)) = (m, s - [a, m])."""
    n2 = a.a.dim
    if len(h.m) != n2:
        raise ValueError("dimension mismatch")
    shift = pairing(n2 // 2, a.a, RatVec.from_ints(h.m))
    return TDHElement(h.m, h.s - shift)


def td_h_mul(h1: TDHElement, h2: TDHElement) -> TDHElement:
    return TDHElement(tuple(x + y for x, y in zip(h1.m, h2.m)), h1.s + h2.s)


def td_source(mor: TDMorphism) -> TDGroupElement:
    return mor.g


def td_target(mor: TDMorphism) -> TDGroupElement:
    return TDGroupElement(mor.g.a + RatVec.from_ints(mor.h.m))


def td_compose(m2: TDMorphism, m1: TDMorphism) -> TDMorphism:
    """(h2, g2) o (h1, g1) = (h2 h1, g1), defined when g2 == t(h1) + g1."""
    if m2.g != td_target(m1):
        raise ValueError("morphisms are not composable")
    return TDMorphism(td_h_mul(m2.h, m1.h), m1.g)


class CrossedIntertwiner:
    """Evaluator triple (phi, f, eta) over the T-duality crossed module.

    Built from a matrix A with sign epsilon and a bilinear phase matrix X;
    no validity is assumed, so corrupted data can be probed by the axiom
    checkers.
    """

    __slots__ = ("amat", "eps", "xmat")

    def __init__(self, amat: IntMat, eps: int, xmat: IntMat):
        object.__setattr__(self, "amat", amat)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "xmat", xmat)

    def __setattr__(self, name, value):
        raise AttributeError("CrossedIntertwiner is immutable")

    @property
    def dim(self) -> int:
        return self.amat.rows

    def phi(self, g: TDGroupElement) -> TDGroupElement:
        return TDGroupElement(self.amat.mul_ratvec(g.a))

    def f(self, h: TDHElement) -> TDHElement:
        return TDHElement(self.amat.mul_vec(h.m), h.s.scale(self.eps))

    def eta(self, a: TDGroupElement, b: TDGroupElement) -> Phase:
        return phase_bilinear(self.xmat, a.a, b.a)


def ci_from_obj(o: Obj) -> CrossedIntertwiner:
    return CrossedIntertwiner(o.g.mat, o.g.iso, o.x)


def _rand_lattice(rng: XorShift64Star, dim: int) -> RatVec:
    return RatVec.from_ints([rng.int_in(-5, 5) for _ in range(dim)])


def _rand_rational(rng: XorShift64Star, dim: int) -> RatVec:
    return RatVec([rng.fraction(6, 7) for _ in range(dim)])


def ci_axiom_failures(
    ci: CrossedIntertwiner | Obj, samples: int = 20, seed: int = 0
) -> list[str]:
    """Check the four crossed-intertwiner axioms at seeded sample points.

    The first two are lattice statements and are sampled on Z^{2n}; the
    equivariance and cocycle axioms are sampled at rational points with
    fresh denominators per trial.
    """
    if isinstance(ci, Obj):
        ci = ci_from_obj(ci)
    dim = ci.dim
    failures: list[str] = []
    rng = XorShift64Star(seed)
    for trial in range(samples):
        mints = tuple(rng.int_in(-5, 5) for _ in range(dim))
        mvec = RatVec.from_ints(mints)
        m2 = _rand_lattice(rng, dim)
        h = TDHElement(mints, Phase(rng.fraction()))
        # CI1: phi(t(h)) == t(f(h))
        if ci.phi(TDGroupElement(mvec)).a != RatVec.from_ints(ci.f(h).m):
            failures.append(f"CI1 at trial {trial}")
        # CI2: eta vanishes on lattice pairs
        if not ci.eta(TDGroupElement(mvec), TDGroupElement(m2)).is_zero():
            failures.append(f"CI2 at trial {trial}")
        # CI3: eta(a, m-a) + f(alpha(a,h)).s == eta(m-a, a) + alpha(phi(a), f(h)).s
        a = TDGroupElement(_rand_rational(rng, dim))
        ma = TDGroupElement(mvec - a.a)
        lhs = ci.eta(a, ma) + ci.f(td_alpha(a, h)).s
        rhs = ci.eta(ma, a) + td_alpha(ci.phi(a), ci.f(h)).s
        if lhs != rhs:
            failures.append(f"CI3 at trial {trial}")
        # CI4: eta(a,b) + eta(a+b,c) == eta(b,c) + eta(a,b+c)
        b = TDGroupElement(_rand_rational(rng, dim))
        c = TDGroupElement(_rand_rational(rng, dim))
        ab = TDGroupElement(a.a + b.a)
        bc = TDGroupElement(b.a + c.a)
        if ci.eta(a, b) + ci.eta(ab, c) != ci.eta(b, c) + ci.eta(a, bc):
            failures.append(f"CI4 at trial {trial}")
    return failures


def check_ci_axioms(ci: CrossedIntertwiner | Obj, samples: int = 20, seed: int = 0) -> bool:
    return not ci_axiom_failures(ci, samples, seed)


def ct_axiom_failures(
    m: Mor | tuple,
    samples: int = 20,
    seed: int = 0,
    beta: Callable[[RatVec], Phase] | None = None,
) -> list[str]:
    """Check the two crossed-transformation axioms at seeded sample points.

    Accepts a morphism, or a raw triple (x_src, x_dst, dim) together with
    an explicit `beta` evaluator for negative controls.
    """
    if isinstance(m, Mor):
        x_src, x_dst, dim = m.src.x, m.dst.x, 2 * m.n
        beta_fn = beta or (lambda v: eval_mor(m, v))
    else:
        x_src, x_dst, dim = m
        if beta is None:
            raise ValueError("raw triple requires an explicit beta evaluator")
        beta_fn = beta
    failures: list[str] = []
    rng = XorShift64Star(seed)
    for trial in range(samples):
        # CT1: beta vanishes on t(H) = Z^{2n}
        mvec = _rand_lattice(rng, dim)
        if not beta_fn(mvec).is_zero():
            failures.append(f"CT1 at trial {trial}")
        # CT2: beta(a1) + beta(a2) + eta(a1,a2) == eta'(a1,a2) + beta(a1+a2)
        a1 = _rand_rational(rng, dim)
        a2 = _rand_rational(rng, dim)
        lhs = beta_fn(a1) + beta_fn(a2) + phase_bilinear(x_src, a1, a2)
        rhs = phase_bilinear(x_dst, a1, a2) + beta_fn(a1 + a2)
        if lhs != rhs:
            failures.append(f"CT2 at trial {trial}")
    return failures


def check_ct_axioms(
    m: Mor | tuple,
    samples: int = 20,
    seed: int = 0,
    beta: Callable[[RatVec], Phase] | None = None,
) -> bool:
    return not ct_axiom_failures(m, samples, seed, beta)


def functor_eval(o: Obj, mor: TDMorphism) -> TDMorphism:
    """The induced functor on the groupoid: (h, g) |-> (eta(t(h), g)^{-1} f(h), phi(g))."""
    ci = ci_from_obj(o)
    if len(mor.h.m) != ci.dim or mor.g.a.dim != ci.dim:
        raise ValueError("dimension mismatch")
    corr = ci.eta(TDGroupElement(RatVec.from_ints(mor.h.m)), mor.g)
    fh = ci.f(mor.h)
    return TDMorphism(TDHElement(fh.m, fh.s - corr), ci.phi(mor.g))
