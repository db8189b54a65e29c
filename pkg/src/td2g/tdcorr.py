"""T-duality local cocycle data on a discrete nerve, and the 2-group action on it.

A cocycle consists of rational transition data a, ahat per (point, i, j),
global integer vectors m, mhat per index triple, and phases t per
(point, i, j, k), subject to five pointwise conditions.  Identities from
the correspondence picture (bundle-gerbe cocycles on both legs, the
correspondence cochain, and the transformation identities for the flip,
GL, rotation and so-shift actions) are verified exactly at rational
sample points.

Random valid cocycles are built generatively: free rational lifts per
(point, chart) plus antisymmetric integer offsets produce a and ahat and
determine m, mhat; t is a coboundary of an antisymmetric rational
1-cochain plus the particular twist t_ijk -= m_ijk . lift_hat_k, which
solves the fifth condition identically mod 1.  The generated a, ahat, m,
mhat (and the 1-cochain) are fully index-antisymmetric with vanishing
repeated indices; t vanishes on repeated indices and is antisymmetric in
its first index pair.  Full S3-antisymmetry of t is *not* imposed: for
generic data it is incompatible with the fifth condition holding at all
ordered index tuples, which `validate` checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .groups import (
    embed_gl,
    embed_so,
    flip_element,
    rotation_n1,
)
from .intlinalg import (
    IntMat,
    Phase,
    RatVec,
    phase_bilinear,
    strict_lower_split,
    unimodular_inverse,
)
from .rng import XorShift64Star
from .twogroup import Obj, section

__all__ = [
    "NerveModel",
    "TDCocycle",
    "validate",
    "first_violation",
    "random_cocycle",
    "default_nerve",
    "act",
    "gerbe_left",
    "gerbe_right",
    "corr_cochain",
    "check_gerbe_cocycle",
    "check_corr_delta",
    "check_poincare",
    "check_flip_identities",
    "check_gl_identities",
    "check_rotation_identities",
    "check_so_shift_data",
    "check_so_shift_gerbes",
    "check_eps_cech",
    "eps_cech_defect",
    "check_so_shift_identities",
]

IntVec = tuple[int, ...]
PairKey = tuple[str, int, int]
TripleKey = tuple[int, int, int]
TKey = tuple[str, int, int, int]


@dataclass(frozen=True)
class NerveModel:
    """Finite point set with, per point, the set of cover indices containing it."""

    points: tuple[str, ...]
    cover: Mapping[str, tuple[int, ...]]

    def __post_init__(self):
        if not self.points:
            raise ValueError("nerve needs at least one point")
        for p in self.points:
            idx = self.cover.get(p, ())
            if not idx:
                raise ValueError(f"point {p!r} is not covered")
            if len(set(idx)) != len(idx):
                raise ValueError(f"duplicate cover indices at point {p!r}")

    def indices(self) -> tuple[int, ...]:
        out: set[int] = set()
        for p in self.points:
            out.update(self.cover[p])
        return tuple(sorted(out))


class TDCocycle:
    """Local T-duality data (a, ahat, m, mhat, t) over a nerve model."""

    __slots__ = ("nerve", "n", "a", "ahat", "m", "mhat", "t")

    def __init__(
        self,
        nerve: NerveModel,
        n: int,
        a: Mapping[PairKey, RatVec],
        ahat: Mapping[PairKey, RatVec],
        m: Mapping[TripleKey, IntVec],
        mhat: Mapping[TripleKey, IntVec],
        t: Mapping[TKey, Phase],
    ):
        object.__setattr__(self, "nerve", nerve)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", dict(a))
        object.__setattr__(self, "ahat", dict(ahat))
        object.__setattr__(self, "m", dict(m))
        object.__setattr__(self, "mhat", dict(mhat))
        object.__setattr__(self, "t", dict(t))
        for p in nerve.points:
            idx = nerve.cover[p]
            for i in idx:
                for j in idx:
                    if (p, i, j) not in self.a or (p, i, j) not in self.ahat:
                        raise ValueError(f"missing transition data at {(p, i, j)}")
                    for k in idx:
                        if (p, i, j, k) not in self.t:
                            raise ValueError(f"missing phase data at {(p, i, j, k)}")
                        if (i, j, k) not in self.m or (i, j, k) not in self.mhat:
                            raise ValueError(f"missing integer data at {(i, j, k)}")

    def __setattr__(self, name, value):
        raise AttributeError("TDCocycle is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TDCocycle)
            and self.nerve == other.nerve
            and self.n == other.n
            and self.a == other.a
            and self.ahat == other.ahat
            and self.m == other.m
            and self.mhat == other.mhat
            and self.t == other.t
        )

    __hash__ = None


def _vec_int(v: IntVec) -> RatVec:
    return RatVec.from_ints(v)


def first_violation(c: TDCocycle) -> dict | None:
    """The first failing cocycle condition with its location, or None."""
    for p in c.nerve.points:
        idx = c.nerve.cover[p]
        for i in idx:
            for j in idx:
                for k in idx:
                    if c.a[(p, i, k)] != _vec_int(c.m[(i, j, k)]) + c.a[(p, j, k)] + c.a[(p, i, j)]:
                        return {"condition": 1, "point": p, "indices": (i, j, k)}
                    if c.ahat[(p, i, k)] != _vec_int(c.mhat[(i, j, k)]) + c.ahat[(p, j, k)] + c.ahat[(p, i, j)]:
                        return {"condition": 2, "point": p, "indices": (i, j, k)}
        for i in idx:
            for j in idx:
                for k in idx:
                    for l in idx:
                        m = c.m
                        if tuple(
                            x + y for x, y in zip(m[(i, k, l)], m[(i, j, k)])
                        ) != tuple(x + y for x, y in zip(m[(i, j, l)], m[(j, k, l)])):
                            return {"condition": 3, "point": p, "indices": (i, j, k, l)}
                        mh = c.mhat
                        if tuple(
                            x + y for x, y in zip(mh[(i, k, l)], mh[(i, j, k)])
                        ) != tuple(x + y for x, y in zip(mh[(i, j, l)], mh[(j, k, l)])):
                            return {"condition": 4, "point": p, "indices": (i, j, k, l)}
                        lhs = c.t[(p, i, k, l)] + c.t[(p, i, j, k)] - _vec_int(
                            c.m[(i, j, k)]
                        ).dot(c.ahat[(p, k, l)])
                        rhs = c.t[(p, i, j, l)] + c.t[(p, j, k, l)]
                        if lhs != rhs:
                            return {"condition": 5, "point": p, "indices": (i, j, k, l)}
    return None


def validate(c: TDCocycle) -> bool:
    """All five cocycle conditions at every point and ordered index tuple."""
    return first_violation(c) is None


def default_nerve() -> NerveModel:
    """Small test nerve with triple overlaps and a singleton-covered point."""
    return NerveModel(
        points=("p0", "p1", "p2", "p3"),
        cover={"p0": (0, 1, 2, 3), "p1": (0, 1, 2), "p2": (1, 2, 3), "p3": (2,)},
    )


def random_cocycle(nerve: NerveModel, n: int, seed: int) -> TDCocycle:
    """Seeded valid cocycle, antisymmetric as described in the module docstring."""
    rng = XorShift64Star(seed)
    indices = nerve.indices()

    def asym_int_table() -> dict[tuple[int, int], IntVec]:
        table: dict[tuple[int, int], IntVec] = {}
        for i in indices:
            table[(i, i)] = (0,) * n
            for j in indices:
                if i < j:
                    v = tuple(rng.int_in(-2, 2) for _ in range(n))
                    table[(i, j)] = v
                    table[(j, i)] = tuple(-x for x in v)
        return table

    off = asym_int_table()
    off_hat = asym_int_table()

    lift: dict[tuple[str, int], RatVec] = {}
    lift_hat: dict[tuple[str, int], RatVec] = {}
    for p in nerve.points:
        for i in nerve.cover[p]:
            lift[(p, i)] = RatVec([rng.fraction(4, 6) for _ in range(n)])
            lift_hat[(p, i)] = RatVec([rng.fraction(4, 6) for _ in range(n)])

    s: dict[PairKey, Fraction] = {}
    for p in nerve.points:
        idx = nerve.cover[p]
        for i in idx:
            s[(p, i, i)] = Fraction(0)
            for j in idx:
                if i < j:
                    v = rng.fraction(4, 6)
                    s[(p, i, j)] = v
                    s[(p, j, i)] = -v

    def m_of(i: int, j: int, k: int, table) -> IntVec:
        return tuple(
            x - y - z for x, y, z in zip(table[(i, k)], table[(j, k)], table[(i, j)])
        )

    m = {(i, j, k): m_of(i, j, k, off) for i in indices for j in indices for k in indices}
    mhat = {
        (i, j, k): m_of(i, j, k, off_hat) for i in indices for j in indices for k in indices
    }

    a: dict[PairKey, RatVec] = {}
    ahat: dict[PairKey, RatVec] = {}
    t: dict[TKey, Phase] = {}
    for p in nerve.points:
        idx = nerve.cover[p]
        for i in idx:
            for j in idx:
                a[(p, i, j)] = lift[(p, j)] - lift[(p, i)] + _vec_int(off[(i, j)])
                ahat[(p, i, j)] = (
                    lift_hat[(p, j)] - lift_hat[(p, i)] + _vec_int(off_hat[(i, j)])
                )
        for i in idx:
            for j in idx:
                for k in idx:
                    coboundary = s[(p, j, k)] - s[(p, i, k)] + s[(p, i, j)]
                    twist = _vec_int(m[(i, j, k)]).dot(lift_hat[(p, k)])
                    t[(p, i, j, k)] = Phase(coboundary - twist)
    return TDCocycle(nerve, n, a, ahat, m, mhat, t)


# -- the action of automorphism objects --------------------------------


def act(o: Obj, c: TDCocycle) -> TDCocycle:
    """Transform a cocycle by an automorphism object (A, X).

    The pair data and integer data transform linearly by A; the phase
    data picks up two bilinear corrections from X:

        t' = iso(A) t - eta(m + mhat, u) - eta(v_jk, v_ij),

    with u the concatenated (a_jk + a_ij, ahat_jk + ahat_ij) and v_pq the
    concatenated transition vectors.  Acting by the unit object is the
    identity, and act(o1 * o2, c) == act(o1, act(o2, c)) exactly.
    """
    if o.n != c.n:
        raise ValueError("rank mismatch")
    amat = o.g.mat
    n = c.n
    new_a: dict[PairKey, RatVec] = {}
    new_ahat: dict[PairKey, RatVec] = {}
    for key, av in c.a.items():
        both = amat.mul_ratvec(av.concat(c.ahat[key]))
        new_a[key], new_ahat[key] = both.split(n)
    new_m: dict[TripleKey, IntVec] = {}
    new_mhat: dict[TripleKey, IntVec] = {}
    for key, mv in c.m.items():
        both_i = amat.mul_vec(mv + c.mhat[key])
        new_m[key], new_mhat[key] = both_i[:n], both_i[n:]
    new_t: dict[TKey, Phase] = {}
    for (p, i, j, k), tv in c.t.items():
        mvec = _vec_int(c.m[(i, j, k)] + c.mhat[(i, j, k)])
        u = (c.a[(p, j, k)] + c.a[(p, i, j)]).concat(
            c.ahat[(p, j, k)] + c.ahat[(p, i, j)]
        )
        v_jk = c.a[(p, j, k)].concat(c.ahat[(p, j, k)])
        v_ij = c.a[(p, i, j)].concat(c.ahat[(p, i, j)])
        corr = phase_bilinear(o.x, mvec, u) + phase_bilinear(o.x, v_jk, v_ij)
        new_t[(p, i, j, k)] = tv.scale(o.g.iso) - corr
    return TDCocycle(c.nerve, n, new_a, new_ahat, new_m, new_mhat, new_t)


# -- derived gerbe and correspondence cochains --------------------------


def _require_cover(c: TDCocycle, point: str, indices: Sequence[int]) -> None:
    cov = c.nerve.cover.get(point)
    if cov is None:
        raise ValueError(f"unknown point {point!r}")
    if any(i not in cov for i in indices):
        raise ValueError(f"indices {tuple(indices)} do not cover point {point!r}")


def gerbe_left(c: TDCocycle, point: str, ijk: TripleKey, a: RatVec) -> Phase:
    """Left-leg gerbe cocycle: -t_ijk - a . mhat_ijk + a_ij . ahat_jk."""
    i, j, k = ijk
    _require_cover(c, point, ijk)
    if a.dim != c.n:
        raise ValueError("fiber coordinate has wrong dimension")
    val = (
        -c.t[(point, i, j, k)].frac
        - a.dot(_vec_int(c.mhat[(i, j, k)]))
        + c.a[(point, i, j)].dot(c.ahat[(point, j, k)])
    )
    return Phase(val)


def gerbe_right(c: TDCocycle, point: str, ijk: TripleKey, ahat: RatVec) -> Phase:
    """Right-leg gerbe cocycle: -t_ijk - m_ijk . (ahat_ik + ahat)."""
    i, j, k = ijk
    _require_cover(c, point, ijk)
    if ahat.dim != c.n:
        raise ValueError("fiber coordinate has wrong dimension")
    val = -c.t[(point, i, j, k)].frac - _vec_int(c.m[(i, j, k)]).dot(
        c.ahat[(point, i, k)] + ahat
    )
    return Phase(val)


def corr_cochain(
    c: TDCocycle,
    point: str,
    ij: tuple[int, int],
    a: RatVec,
    ahat: RatVec,
    m2: IntVec,
    mhat2: IntVec,
) -> Phase:
    """Correspondence cochain: -m2 . ahat - ahat_ij . m2 - ahat_ij . a.

    The hatted integer shift mhat2 is part of the fiber-product
    coordinates but does not enter the formula.
    """
    i, j = ij
    _require_cover(c, point, ij)
    if a.dim != c.n or ahat.dim != c.n or len(m2) != c.n or len(mhat2) != c.n:
        raise ValueError("dimension mismatch")
    aij_hat = c.ahat[(point, i, j)]
    val = -ahat.dot(_vec_int(m2)) - aij_hat.dot(_vec_int(m2)) - aij_hat.dot(a)
    return Phase(val)


# -- sampling helpers ---------------------------------------------------


def _rand_fiber(rng: XorShift64Star, n: int) -> RatVec:
    return RatVec([rng.fraction(5, 7) for _ in range(n)])


def _rand_ints(rng: XorShift64Star, n: int) -> IntVec:
    return tuple(rng.int_in(-3, 3) for _ in range(n))


def _rand_site(rng: XorShift64Star, c: TDCocycle, arity: int) -> tuple[str, tuple[int, ...]]:
    p = c.nerve.points[rng.below(len(c.nerve.points))]
    idx = c.nerve.cover[p]
    return p, tuple(idx[rng.below(len(idx))] for _ in range(arity))


def check_gerbe_cocycle(c: TDCocycle, samples: int = 50, seed: int = 0) -> bool:
    """Both legs satisfy the groupoid Cech 2-cocycle condition at samples."""
    rng = XorShift64Star(seed)
    for _ in range(samples):
        p, (i, j, k, l) = _rand_site(rng, c, 4)
        a = _rand_fiber(rng, c.n)
        lhs = (
            gerbe_left(c, p, (j, k, l), c.a[(p, i, j)] + a)
            - gerbe_left(c, p, (i, k, l), a)
            + gerbe_left(c, p, (i, j, l), a)
            - gerbe_left(c, p, (i, j, k), a)
        )
        if not lhs.is_zero():
            return False
        ahat = _rand_fiber(rng, c.n)
        lhs_hat = (
            gerbe_right(c, p, (j, k, l), c.ahat[(p, i, j)] + ahat)
            - gerbe_right(c, p, (i, k, l), ahat)
            + gerbe_right(c, p, (i, j, l), ahat)
            - gerbe_right(c, p, (i, j, k), ahat)
        )
        if not lhs_hat.is_zero():
            return False
    return True


def check_corr_delta(c: TDCocycle, samples: int = 50, seed: int = 0) -> bool:
    """The correspondence identity: hat-leg minus leg equals the cochain coboundary.

    Evaluated on fiber-product coordinates (a, ahat, m2, mhat2, m3, mhat3);
    the middle chart carries the shifted coordinates and integer offsets
    m3 - m2 + m_ijk, mhat3 - mhat2 + mhat_ijk.
    """
    rng = XorShift64Star(seed)
    for _ in range(samples):
        p, (i, j, k) = _rand_site(rng, c, 3)
        a, ahat = _rand_fiber(rng, c.n), _rand_fiber(rng, c.n)
        m2, mh2 = _rand_ints(rng, c.n), _rand_ints(rng, c.n)
        m3, mh3 = _rand_ints(rng, c.n), _rand_ints(rng, c.n)
        lhs = gerbe_right(c, p, (i, j, k), ahat) - gerbe_left(c, p, (i, j, k), a)
        a_mid = a + c.a[(p, i, j)] + _vec_int(m2)
        ahat_mid = ahat + c.ahat[(p, i, j)] + _vec_int(mh2)
        m_mid = tuple(x - y + z for x, y, z in zip(m3, m2, c.m[(i, j, k)]))
        mh_mid = tuple(x - y + z for x, y, z in zip(mh3, mh2, c.mhat[(i, j, k)]))
        rhs = (
            corr_cochain(c, p, (i, j), a, ahat, m2, mh2)
            + corr_cochain(c, p, (j, k), a_mid, ahat_mid, m_mid, mh_mid)
            - corr_cochain(c, p, (i, k), a, ahat, m3, mh3)
        )
        if lhs != rhs:
            return False
    return True


def check_poincare(c: TDCocycle, samples: int = 20, seed: int = 0) -> bool:
    """Single-chart restriction: gerbe cocycles vanish and xi reduces to -m2 . ahat.

    Meaningful for index-normalized cocycles (vanishing repeated-index
    data), which the generator produces.
    """
    rng = XorShift64Star(seed)
    zero = RatVec.zero(c.n)
    for p in c.nerve.points:
        for i in c.nerve.cover[p]:
            if c.a[(p, i, i)] != zero or c.ahat[(p, i, i)] != zero:
                return False
            if not c.t[(p, i, i, i)].is_zero():
                return False
            if not gerbe_left(c, p, (i, i, i), _rand_fiber(rng, c.n)).is_zero():
                return False
            if not gerbe_right(c, p, (i, i, i), _rand_fiber(rng, c.n)).is_zero():
                return False
            for _ in range(samples):
                a, ahat = _rand_fiber(rng, c.n), _rand_fiber(rng, c.n)
                m2, mh2 = _rand_ints(rng, c.n), _rand_ints(rng, c.n)
                got = corr_cochain(c, p, (i, i), a, ahat, m2, mh2)
                if got != Phase(-ahat.dot(_vec_int(m2))):
                    return False
    return True


# -- transformation identities ------------------------------------------


def check_flip_identities(
    c: TDCocycle,
    samples: int = 50,
    seed: int = 0,
    transformed: TDCocycle | None = None,
) -> bool:
    """The leg-flip action swaps all data and shifts gerbe cocycles by a coboundary."""
    c2 = act(section(flip_element(c.n)), c) if transformed is None else transformed
    for key in c.a:
        if c2.a[key] != c.ahat[key] or c2.ahat[key] != c.a[key]:
            return False
    for key in c.m:
        if c2.m[key] != c.mhat[key] or c2.mhat[key] != c.m[key]:
            return False
    for (p, i, j, k), tv in c.t.items():
        expected = Phase(
            tv.frac
            - _vec_int(c.mhat[(i, j, k)]).dot(c.a[(p, i, k)])
            - c.ahat[(p, j, k)].dot(c.a[(p, i, j)])
        )
        if c2.t[(p, i, j, k)] != expected:
            return False
    rng = XorShift64Star(seed)
    for _ in range(samples):
        p, (i, j, k) = _rand_site(rng, c, 3)
        x = _rand_fiber(rng, c.n)

        def cross(pair_i, pair_j):
            return c.a[(p, pair_i, pair_j)].dot(c.ahat[(p, pair_i, pair_j)])

        side = gerbe_right(c, p, (i, j, k), x) - cross(i, j) - cross(j, k) + cross(i, k)
        if gerbe_left(c2, p, (i, j, k), x) != side:
            return False
        if gerbe_right(c2, p, (i, j, k), x) != gerbe_left(c, p, (i, j, k), x):
            return False
    return True


def check_gl_identities(
    c: TDCocycle, g: IntMat, samples: int = 50, seed: int = 0
) -> bool:
    """The GL(n,Z) action extends both legs: data maps by g and g^{-T}, t is fixed."""
    if g.rows != c.n or g.cols != c.n:
        raise ValueError("GL element has wrong size")
    ginv = unimodular_inverse(g)
    ginv_t = ginv.transpose()
    c2 = act(section(embed_gl(g)), c)
    for key, av in c.a.items():
        if c2.a[key] != g.mul_ratvec(av) or c2.ahat[key] != ginv_t.mul_ratvec(c.ahat[key]):
            return False
    for key, mv in c.m.items():
        if c2.m[key] != g.mul_vec(mv) or c2.mhat[key] != ginv_t.mul_vec(c.mhat[key]):
            return False
    if any(c2.t[key] != c.t[key] for key in c.t):
        return False
    rng = XorShift64Star(seed)
    for _ in range(samples):
        p, (i, j, k) = _rand_site(rng, c, 3)
        a = _rand_fiber(rng, c.n)
        if gerbe_left(c2, p, (i, j, k), a) != gerbe_left(c, p, (i, j, k), ginv.mul_ratvec(a)):
            return False
        ahat = _rand_fiber(rng, c.n)
        if gerbe_right(c2, p, (i, j, k), ahat) != gerbe_right(
            c, p, (i, j, k), g.transpose().mul_ratvec(ahat)
        ):
            return False
    return True


def check_rotation_identities(c: TDCocycle, samples: int = 50, seed: int = 0) -> bool:
    """The order-4 rotation at n=1 dualizes legs: data and gerbe identities."""
    if c.n != 1:
        raise ValueError("rotation identities are defined for n == 1 only")
    c2 = act(section(rotation_n1()), c)
    for key, av in c.a.items():
        if c2.a[key] != -c.ahat[key] or c2.ahat[key] != av:
            return False
    for key, mv in c.m.items():
        if c2.m[key] != tuple(-x for x in c.mhat[key]) or c2.mhat[key] != mv:
            return False
    for (p, i, j, k), tv in c.t.items():
        expected = Phase(
            -tv.frac
            + _vec_int(c.mhat[(i, j, k)]).dot(c.a[(p, i, k)])
            + c.ahat[(p, j, k)].dot(c.a[(p, i, j)])
        )
        if c2.t[(p, i, j, k)] != expected:
            return False
    rng = XorShift64Star(seed)
    for _ in range(samples):
        p, (i, j, k) = _rand_site(rng, c, 3)
        x = _rand_fiber(rng, c.n)

        def cross(pi, pj):
            return c.a[(p, pi, pj)].dot(c.ahat[(p, pi, pj)])

        lhs = gerbe_left(c2, p, (i, j, k), x)
        rhs = -gerbe_right(c, p, (i, j, k), -x) + cross(i, j) + cross(j, k) - cross(i, k)
        if lhs != rhs:
            return False
        if gerbe_right(c2, p, (i, j, k), x) != -gerbe_left(c, p, (i, j, k), x):
            return False
    return True


def _low_bracket(b_low: IntMat, u: RatVec, v: RatVec) -> Fraction:
    return sum(
        (
            ue * be * ve
            for ue, row in zip(u.entries, b_low.data)
            for be, ve in zip(row, v.entries)
            if be
        ),
        Fraction(0),
    )


def _so_eps(c: TDCocycle, b_low: IntMat, p: str, i: int, j: int, k: int) -> Fraction:
    """eps_ijk = <a_ik|B|m_ijk> + <a_ij|B|a_jk>, lower-split brackets."""
    m_ijk = _vec_int(c.m[(i, j, k)])
    return _low_bracket(b_low, c.a[(p, i, k)], m_ijk) + _low_bracket(
        b_low, c.a[(p, i, j)], c.a[(p, j, k)]
    )


def _check_so_skew(c: TDCocycle, b: IntMat) -> IntMat:
    if b.rows != c.n or b != -b.transpose():
        raise ValueError("so shift requires a skew n x n matrix")
    return strict_lower_split(b)


def check_so_shift_data(c: TDCocycle, b: IntMat, transformed: TDCocycle | None = None) -> bool:
    """Transformed data: a and m fixed, ahat and mhat shifted by B, t corrected."""
    b_low = _check_so_skew(c, b)
    c2 = act(section(embed_so(b)), c) if transformed is None else transformed
    for key, av in c.a.items():
        if c2.a[key] != av or c2.ahat[key] != b.mul_ratvec(av) + c.ahat[key]:
            return False
    for key, mv in c.m.items():
        if c2.m[key] != mv or c2.mhat[key] != tuple(
            x + y for x, y in zip(b.mul_vec(mv), c.mhat[key])
        ):
            return False
    for (p, i, j, k), tv in c.t.items():
        m_ijk = _vec_int(c.m[(i, j, k)])
        expected = Phase(
            tv.frac
            - _low_bracket(b_low, m_ijk, c.a[(p, i, k)])
            - _low_bracket(b_low, c.a[(p, j, k)], c.a[(p, i, j)])
        )
        if c2.t[(p, i, j, k)] != expected:
            return False
    return True


def check_so_shift_gerbes(
    c: TDCocycle, b: IntMat, samples: int = 50, seed: int = 0
) -> bool:
    """Left-leg three-term correction, and the right-leg discrepancy gamma:
    gerbe values against the closed form, and the closed form against its
    decomposition into a shifted coboundary of a_ij . v plus eps."""
    b_low = _check_so_skew(c, b)
    c2 = act(section(embed_so(b)), c)
    rng = XorShift64Star(seed)
    for _ in range(samples):
        p, (i, j, k) = _rand_site(rng, c, 3)
        m_ijk = _vec_int(c.m[(i, j, k)])
        a = _rand_fiber(rng, c.n)
        lhs = gerbe_left(c2, p, (i, j, k), a)
        rhs = gerbe_left(c, p, (i, j, k), a) + Phase(
            _low_bracket(b_low, m_ijk, c.a[(p, i, k)])
            + _low_bracket(b_low, c.a[(p, i, j)], c.a[(p, j, k)])
            - a.dot(b.mul_ratvec(m_ijk))
        )
        if lhs != rhs:
            return False
        v = _rand_fiber(rng, c.n)
        gamma_gerbe = gerbe_right(c2, p, (i, j, k), v) - gerbe_right(
            c, p, (i, j, k), RatVec.zero(c.n)
        )
        gamma_closed = (
            _low_bracket(b_low, c.a[(p, i, k)], m_ijk)
            + _low_bracket(b_low, c.a[(p, j, k)], c.a[(p, i, j)])
            - v.dot(m_ijk)
        )
        if gamma_gerbe != Phase(gamma_closed):
            return False
        decomposition = (
            c.a[(p, i, j)].dot(v)
            + c.a[(p, j, k)].dot(v + b.mul_ratvec(c.a[(p, i, j)]))
            - c.a[(p, i, k)].dot(v)
            + _so_eps(c, b_low, p, i, j, k)
        )
        if gamma_closed != decomposition:
            return False
    return True


def check_eps_cech(c: TDCocycle, b: IntMat) -> bool:
    """Whether eps satisfies the plain Cech 3-cocycle identity exactly over Q.

    This encodes a claimed identity that is FALSE for generic valid
    cocycles with nonvanishing left-leg lattice classes: the honest
    coboundary is delta eps == a_kl . (B m_ijk) mod Z (see
    `eps_cech_defect` for the exact statement).  It does hold when all
    m_ijk vanish, and trivially for b == 0.
    """
    b_low = _check_so_skew(c, b)
    for p in c.nerve.points:
        idx = c.nerve.cover[p]
        for i in idx:
            for j in idx:
                for k in idx:
                    for l in idx:
                        d = (
                            _so_eps(c, b_low, p, j, k, l)
                            - _so_eps(c, b_low, p, i, k, l)
                            + _so_eps(c, b_low, p, i, j, l)
                            - _so_eps(c, b_low, p, i, j, k)
                        )
                        if d != 0:
                            return False
    return True


def eps_cech_defect(
    c: TDCocycle, b: IntMat, point: str, ijkl: tuple[int, int, int, int]
) -> tuple[Fraction, Fraction]:
    """(delta eps, its exact closed form) at one quadruple.

    The true coboundary of eps is

        delta eps_ijkl = a_kl . (B m_ijk) + m_ikl . (B m_ijk)
                         + <m_ijl|B|m_ijl> - <m_ijl|B|m_ikl>
                         - <m_ijl|B|m_ijk> + <m_ijk|B|m_ikl>,

    integer except for the first term; hence delta eps == a_kl . (B m_ijk)
    mod Z.  The plain cocycle identity fails whenever that term is not an
    integer.
    """
    b_low = _check_so_skew(c, b)
    i, j, k, l = ijkl
    _require_cover(c, point, ijkl)
    d = (
        _so_eps(c, b_low, point, j, k, l)
        - _so_eps(c, b_low, point, i, k, l)
        + _so_eps(c, b_low, point, i, j, l)
        - _so_eps(c, b_low, point, i, j, k)
    )
    p_, q_, r_ = c.m[(i, j, k)], c.m[(i, k, l)], c.m[(i, j, l)]

    def ibrak(u: IntVec, mat: IntMat, v: IntVec) -> int:
        return sum(ue * me * ve for ue, row in zip(u, mat.data) for me, ve in zip(row, v))

    closed = (
        c.a[(point, k, l)].dot(_vec_int(b.mul_vec(p_)))
        + ibrak(q_, b, p_)
        + ibrak(r_, b_low, r_)
        - ibrak(r_, b_low, q_)
        - ibrak(r_, b_low, p_)
        + ibrak(p_, b_low, q_)
    )
    return d, closed


def check_so_shift_identities(
    c: TDCocycle, b: IntMat, samples: int = 50, seed: int = 0
) -> bool:
    """All so-shift checks: transformed data, gerbe corrections and the
    gamma decomposition, plus the plain eps Cech-cocycle identity.

    The last clause fails for generic cocycles; see `check_eps_cech`.
    The first three are theorems and are exercised separately by
    `check_so_shift_data` and `check_so_shift_gerbes`.
    """
    return (
        check_so_shift_data(c, b)
        and check_so_shift_gerbes(c, b, samples, seed)
        and check_eps_cech(c, b)
    )
