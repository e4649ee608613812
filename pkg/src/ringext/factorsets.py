"""Singular extensions of a module by a ring, via normalized factor sets.

A factor set is a pair of tables ``(f, g)`` on R x R with values in the
module A, recording how far a chosen set-section of the quotient map fails
to be additive (f) and multiplicative (g).  The checker, the coboundary
action, the equivalence search, the class enumeration and the two-way
bridge between factor sets and concrete extension rings all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (BimoduleAction, FinAbGroup, FinRing, Violation,
                   validate_ring, _check_table)
from .errors import ConstructionError, GuardExceeded, StructuralError

DEFAULT_GUARD = 10 ** 7


class TwoCochain:
    """Tables f, g : R x R -> A.  Construction checks shape only; the
    normalization rules are part of :func:`check_factor_set` so that broken
    inputs are reported with witnesses instead of being unrepresentable."""

    def __init__(self, bimodule: BimoduleAction, f: Sequence[Sequence[int]],
                 g: Sequence[Sequence[int]], relaxed: bool = False):
        n, m = bimodule.ring.order, bimodule.group.order
        self.bimodule = bimodule
        self.f = _check_table(f, n, n, m, "f table")
        self.g = _check_table(g, n, n, m, "g table")
        self.relaxed = relaxed

    def key(self) -> tuple:
        return (self.f, self.g)

    def __eq__(self, other):
        return isinstance(other, TwoCochain) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"TwoCochain(f={self.f}, g={self.g})"

    @classmethod
    def zero(cls, bm: BimoduleAction) -> "TwoCochain":
        n = bm.ring.order
        z = [[0] * n for _ in range(n)]
        return cls(bm, z, z)


class OneCochain:
    """Table t : R -> A with t(0)=0, and t(1)=0 unless ``relaxed``.

    The strict form matches sections that preserve both the zero and the
    identity; the relaxed form drops the identity constraint, which enlarges
    the coboundary group (useful when comparing arbitrary sections).
    """

    def __init__(self, bimodule: BimoduleAction, t: Sequence[int], relaxed: bool = False):
        n, m = bimodule.ring.order, bimodule.group.order
        if len(t) != n or any(not (0 <= v < m) for v in t):
            raise StructuralError("t table malformed")
        if t[0] != 0:
            raise StructuralError("t(0) must be 0")
        if not relaxed and t[bimodule.ring.one] != 0:
            raise StructuralError("t(1) must be 0 for a strict one-cochain")
        self.bimodule = bimodule
        self.t = tuple(t)
        self.relaxed = relaxed

    def neg(self) -> "OneCochain":
        g = self.bimodule.group
        return OneCochain(self.bimodule, tuple(g.neg_of(v) for v in self.t), self.relaxed)

    def __repr__(self):
        return f"OneCochain(t={self.t})"


def check_factor_set(c: TwoCochain) -> list[Violation]:
    """All violated factor-set relations, numbered 2..6 with witnesses.

    2: normalization; 3: symmetry of f; 4: additive cocycle rule for f;
    5: multiplicative cocycle rule for g; 6: the two mixed rules tying f
    and g through the distributive laws.
    """
    out = []
    bm = c.bimodule
    R, A = bm.ring, bm.group
    e = R.one
    f, g = c.f, c.g
    for x in R.elements():
        if f[x][0] != 0 or f[0][x] != 0:
            out.append(Violation("relation 2: f(x,0)=f(0,y)=0", (x,)))
        if g[x][0] != 0 or g[0][x] != 0:
            out.append(Violation("relation 2: g(x,0)=g(0,y)=0", (x,)))
        if g[e][x] != 0 or g[x][e] != 0:
            out.append(Violation("relation 2: g(1,y)=g(y,1)=0", (x,)))
    for x in R.elements():
        for y in R.elements():
            if f[x][y] != f[y][x]:
                out.append(Violation("relation 3: f(x,y)=f(y,x)", (x, y)))
    for x, y, z in itertools.product(R.elements(), repeat=3):
        v = A.sum([f[y][z], A.neg_of(f[R.plus(x, y)][z]), f[x][R.plus(y, z)],
                   A.neg_of(f[x][y])])
        if v != 0:
            out.append(Violation("relation 4: additive cocycle for f", (x, y, z)))
        v = A.sum([bm.act_left(x, g[y][z]), A.neg_of(g[R.times(x, y)][z]),
                   g[x][R.times(y, z)], A.neg_of(bm.act_right(g[x][y], z))])
        if v != 0:
            out.append(Violation("relation 5: multiplicative cocycle for g", (x, y, z)))
        lhs = A.minus(bm.act_left(x, f[y][z]), f[R.times(x, y)][R.times(x, z)])
        rhs = A.sum([g[x][y], g[x][z], A.neg_of(g[x][R.plus(y, z)])])
        if lhs != rhs:
            out.append(Violation("relation 6: left distributive link", (x, y, z)))
        lhs = A.minus(bm.act_right(f[x][y], z), f[R.times(x, z)][R.times(y, z)])
        rhs = A.sum([g[x][z], g[y][z], A.neg_of(g[R.plus(x, y)][z])])
        if lhs != rhs:
            out.append(Violation("relation 6: right distributive link", (x, y, z)))
    return out


def coboundary1(t: OneCochain) -> TwoCochain:
    """The cochain (d1 t, d2 t): d1 t(x,y) = t(x)+t(y)-t(x+y) and
    d2 t(x,y) = x t(y) - t(xy) + t(x) y."""
    bm = t.bimodule
    R, A = bm.ring, bm.group
    n = R.order
    f = [[A.sum([t.t[x], t.t[y], A.neg_of(t.t[R.plus(x, y)])]) for y in range(n)]
         for x in range(n)]
    g = [[A.sum([bm.act_left(x, t.t[y]), A.neg_of(t.t[R.times(x, y)]),
                 bm.act_right(t.t[x], y)]) for y in range(n)]
         for x in range(n)]
    return TwoCochain(bm, f, g, relaxed=t.relaxed)


def shift(c: TwoCochain, t: OneCochain) -> TwoCochain:
    """Add the coboundary of ``t`` to ``c``."""
    d = coboundary1(t)
    A = c.bimodule.group
    n = c.bimodule.ring.order
    f = [[A.plus(c.f[x][y], d.f[x][y]) for y in range(n)] for x in range(n)]
    g = [[A.plus(c.g[x][y], d.g[x][y]) for y in range(n)] for x in range(n)]
    return TwoCochain(c.bimodule, f, g, relaxed=c.relaxed or t.relaxed)


def _one_cochain_slots(R: FinRing, relaxed: bool) -> list[int]:
    fixed = {0} if relaxed else {0, R.one}
    return [x for x in R.elements() if x not in fixed]


def are_equivalent(c1: TwoCochain, c2: TwoCochain, relaxed: bool = False,
                   guard: int = DEFAULT_GUARD) -> Optional[OneCochain]:
    """Search for a one-cochain t with ``shift(c1, t) == c2``.

    Exhaustive over the free slots of t; deterministic first match.
    """
    if c1.bimodule is not c2.bimodule and c1.bimodule.left != c2.bimodule.left:
        raise StructuralError("cochains over different bimodules")
    bm = c1.bimodule
    R, A = bm.ring, bm.group
    relaxed = relaxed or c1.relaxed or c2.relaxed
    slots = _one_cochain_slots(R, relaxed)
    size = A.order ** len(slots)
    if size > guard:
        raise GuardExceeded("are_equivalent", size, guard)
    for values in itertools.product(A.elements(), repeat=len(slots)):
        t_table = [0] * R.order
        for s, v in zip(slots, values):
            t_table[s] = v
        t = OneCochain(bm, t_table, relaxed=relaxed)
        if shift(c1, t).key() == c2.key():
            return t
    return None


def _normalized_candidates(bm: BimoduleAction, guard: int):
    """All normalized (f, g) tables; the free slots are the positions not
    pinned to zero by the normalization rules."""
    R, A = bm.ring, bm.group
    e = R.one
    f_slots = [(x, y) for x in R.elements() for y in R.elements() if x != 0 and y != 0]
    g_slots = [(x, y) for x in R.elements() for y in R.elements()
               if x not in (0, e) and y not in (0, e)]
    size = A.order ** (len(f_slots) + len(g_slots))
    if size > guard:
        raise GuardExceeded("h2_classes", size, guard)
    n = R.order
    for values in itertools.product(A.elements(), repeat=len(f_slots) + len(g_slots)):
        f = [[0] * n for _ in range(n)]
        g = [[0] * n for _ in range(n)]
        for (x, y), v in zip(f_slots, values[:len(f_slots)]):
            f[x][y] = v
        for (x, y), v in zip(g_slots, values[len(f_slots):]):
            g[x][y] = v
        yield TwoCochain(bm, f, g)


def h2_classes(bm: BimoduleAction, guard: int = DEFAULT_GUARD) -> tuple[int, list[TwoCochain]]:
    """Enumerate all normalized factor sets, partition them by coboundary
    shifts, and return (class count, lexicographically least representatives).
    """
    R, A = bm.ring, bm.group
    cocycles = [c for c in _normalized_candidates(bm, guard) if not check_factor_set(c)]
    slots = _one_cochain_slots(R, relaxed=False)
    shifts = []
    for values in itertools.product(A.elements(), repeat=len(slots)):
        t_table = [0] * R.order
        for s, v in zip(slots, values):
            t_table[s] = v
        shifts.append(OneCochain(bm, t_table))
    seen: set = set()
    reps: list[TwoCochain] = []
    for c in sorted(cocycles, key=TwoCochain.key):
        if c.key() in seen:
            continue
        orbit = {shift(c, t).key() for t in shifts}
        seen |= orbit
        reps.append(c)
    return len(reps), reps


@dataclass
class SingularExtension:
    """An extension ring S presented with its ingredient maps: the kernel
    embedding ``chi``, the quotient map ``sigma`` and a chosen section ``u``.
    The kernel squares to zero inside S."""

    S: FinRing
    A: FinAbGroup
    R: FinRing
    chi: tuple
    sigma: tuple
    u: tuple
    bimodule: Optional[BimoduleAction] = None

    def chi_inv(self, s: int) -> int:
        for a, img in enumerate(self.chi):
            if img == s:
                return a
        raise StructuralError(f"element {s} not in the embedded kernel")

    def induced_bimodule(self) -> BimoduleAction:
        """Action of R on A through the section; independent of the section
        because the kernel squares to zero."""
        left = [[self.chi_inv(self.S.times(self.u[x], self.chi[a]))
                 for a in self.A.elements()] for x in self.R.elements()]
        right = [[self.chi_inv(self.S.times(self.chi[a], self.u[x]))
                  for a in self.A.elements()] for x in self.R.elements()]
        return BimoduleAction(self.R, self.A, left, right)


def validate_singular_extension(E: SingularExtension) -> list[Violation]:
    out = list(validate_ring(E.S))
    S, A, R = E.S, E.A, E.R
    if len(E.chi) != A.order or len(E.sigma) != S.order or len(E.u) != R.order:
        raise StructuralError("map table lengths do not match the carriers")
    if len(set(E.chi)) != A.order:
        out.append(Violation("chi injective", ()))
    for a in A.elements():
        for b in A.elements():
            if E.chi[A.plus(a, b)] != S.plus(E.chi[a], E.chi[b]):
                out.append(Violation("chi additive", (a, b)))
            if S.times(E.chi[a], E.chi[b]) != 0:
                out.append(Violation("kernel squares to zero", (a, b)))
    for s in S.elements():
        for t in S.elements():
            if E.sigma[S.plus(s, t)] != R.plus(E.sigma[s], E.sigma[t]):
                out.append(Violation("sigma additive", (s, t)))
            if E.sigma[S.times(s, t)] != R.times(E.sigma[s], E.sigma[t]):
                out.append(Violation("sigma multiplicative", (s, t)))
    if set(E.sigma) != set(R.elements()):
        out.append(Violation("sigma surjective", ()))
    if S.one is None or E.sigma[S.one] != R.one:
        out.append(Violation("sigma(1)=1", ()))
    image = set(E.chi)
    kernel = {s for s in S.elements() if E.sigma[s] == 0}
    if image != kernel:
        out.append(Violation("image(chi) = kernel(sigma)", (tuple(sorted(image)), tuple(sorted(kernel)))))
    if E.u[0] != 0 or (S.one is not None and E.u[R.one] != S.one):
        out.append(Violation("section preserves 0 and 1", ()))
    for x in R.elements():
        if E.sigma[E.u[x]] != x:
            out.append(Violation("u is a section of sigma", (x,)))
    return out


def build_singular_extension(c: TwoCochain) -> SingularExtension:
    """Crossed-sum ring on pairs (a, x): addition twists by f, products by
    the action plus g.  Refuses on a broken factor set, and refuses with the
    ring report when the tables cannot satisfy the ring axioms (which
    happens exactly when the action is not additive in the ring argument).
    """
    report = check_factor_set(c)
    if report:
        raise ConstructionError("factor set fails its relations", report)
    bm = c.bimodule
    R, A = bm.ring, bm.group
    nR, nA = R.order, A.order

    def idx(a, x):
        return a * nR + x

    order = nA * nR
    add = [[0] * order for _ in range(order)]
    mul = [[0] * order for _ in range(order)]
    for a, x, b, y in itertools.product(A.elements(), R.elements(), A.elements(), R.elements()):
        add[idx(a, x)][idx(b, y)] = idx(A.plus(A.plus(a, b), c.f[x][y]), R.plus(x, y))
        lab = A.sum([bm.act_right(a, y), bm.act_left(x, b), c.g[x][y]])
        mul[idx(a, x)][idx(b, y)] = idx(lab, R.times(x, y))
    S = FinRing(FinAbGroup(add, name=f"ext({A.name};{R.name})"), mul,
                one=idx(0, R.one), name=f"ext({A.name};{R.name})")
    ring_report = validate_ring(S)
    if ring_report:
        raise ConstructionError("crossed tables do not form a ring", ring_report)
    ext = SingularExtension(
        S=S, A=A, R=R,
        chi=tuple(idx(a, 0) for a in A.elements()),
        sigma=tuple(x % nR for x in range(order)),
        u=tuple(idx(0, x) for x in R.elements()),
        bimodule=bm,
    )
    return ext


def extract_factor_set(E: SingularExtension, u: Optional[Sequence[int]] = None,
                       relaxed: bool = False) -> TwoCochain:
    """Read the factor set off an extension along a section.

    The strict form requires u(0)=0 and u(1)=1; pass ``relaxed`` to allow
    sections that move the identity (the result is then only normalized at
    zero and compares equal up to a relaxed coboundary).
    """
    S, A, R = E.S, E.A, E.R
    u = tuple(u) if u is not None else E.u
    if len(u) != R.order:
        raise StructuralError("section table length mismatch")
    for x in R.elements():
        if E.sigma[u[x]] != x:
            raise StructuralError(f"u({x}) is not a preimage of {x}")
    if u[0] != 0:
        raise StructuralError("section must send 0 to 0")
    if not relaxed and S.one is not None and u[R.one] != S.one:
        raise StructuralError("section must send 1 to 1 (or pass relaxed)")
    bm = E.bimodule if E.bimodule is not None else E.induced_bimodule()
    n = R.order
    f = [[E.chi_inv(S.minus(S.plus(u[x], u[y]), u[R.plus(x, y)])) for y in range(n)]
         for x in range(n)]
    g = [[E.chi_inv(S.minus(S.times(u[x], u[y]), u[R.times(x, y)])) for y in range(n)]
         for x in range(n)]
    return TwoCochain(bm, f, g, relaxed=relaxed)
