"""Finite abelian groups, rings and bimodules as explicit operation tables.

Elements are dense indices ``0..n-1`` and index ``0`` is always the additive
zero.  Everything is immutable after construction and every operation is a
pure function, so values can be shared freely.

Constructors check *shape* only (raising :class:`StructuralError`); the axiom
checkers (``validate_group``, ``validate_ring``, ``validate_bimodule``) return
a list of :class:`Violation` with witnesses instead of raising, because the
test surface depends on the witnesses.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import GuardExceeded, StructuralError

#: largest group for which the full endomorphism ring is materialized
ENDO_BOUND = 8


@dataclass(frozen=True)
class Violation:
    """One broken axiom together with the witnessing elements."""

    law: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        msg = f"{self.law}: witness {self.witness}"
        return f"{msg} ({self.detail})" if self.detail else msg

    def to_obj(self):
        return {"law": self.law, "witness": list(self.witness), "detail": self.detail}


def _check_table(table, rows: int, cols: int, rng: int, what: str) -> tuple:
    if len(table) != rows:
        raise StructuralError(f"{what}: expected {rows} rows, got {len(table)}")
    out = []
    for i, row in enumerate(table):
        if len(row) != cols:
            raise StructuralError(f"{what}: row {i} has {len(row)} entries, expected {cols}")
        for v in row:
            if not isinstance(v, int) or not (0 <= v < rng):
                raise StructuralError(f"{what}: entry {v!r} out of range 0..{rng - 1}")
        out.append(tuple(row))
    return tuple(out)


class FinAbGroup:
    """Finite abelian group given by its addition table.

    ``neg`` is derived from the table; an element with no inverse gets a
    ``None`` slot there and is reported by :func:`validate_group`.
    """

    def __init__(self, add: Sequence[Sequence[int]], name: str = ""):
        add = _check_table(add, len(add), len(add), len(add), "add table")
        self.order = len(add)
        if self.order == 0:
            raise StructuralError("empty group")
        self.add = add
        self.zero = 0
        self.name = name or f"group{self.order}"
        neg = []
        for a in range(self.order):
            inv = next((b for b in range(self.order) if add[a][b] == 0), None)
            neg.append(inv)
        self.neg = tuple(neg)

    def plus(self, a: int, b: int) -> int:
        return self.add[a][b]

    def minus(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def neg_of(self, a: int) -> int:
        return self.neg[a]

    def sum(self, items: Iterable[int]) -> int:
        acc = 0
        for a in items:
            acc = self.add[acc][a]
        return acc

    def times(self, n: int, a: int) -> int:
        """Integer multiple ``n*a`` (n may be negative)."""
        if n < 0:
            return self.times(-n, self.neg[a])
        acc = 0
        for _ in range(n):
            acc = self.add[acc][a]
        return acc

    def element_order(self, a: int) -> int:
        acc, n = a, 1
        while acc != 0:
            acc = self.add[acc][a]
            n += 1
        return n

    def elements(self) -> range:
        return range(self.order)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FinAbGroup({self.name}, order={self.order})"

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls([[(i + j) % n for j in range(n)] for i in range(n)], name=f"Z{n}")

    @classmethod
    def direct_product(cls, g: "FinAbGroup", h: "FinAbGroup") -> "FinAbGroup":
        n, m = g.order, h.order
        add = [[0] * (n * m) for _ in range(n * m)]
        for a1, a2, b1, b2 in itertools.product(range(n), range(m), range(n), range(m)):
            add[a1 * m + a2][b1 * m + b2] = g.add[a1][b1] * m + h.add[a2][b2]
        return cls(add, name=f"{g.name}x{h.name}")


def validate_group(g: FinAbGroup) -> list[Violation]:
    out = []
    n = g.order
    if g.add[0][0] != 0:
        out.append(Violation("zero is neutral", (0,), "0+0 != 0"))
    for a in range(n):
        if g.add[0][a] != a or g.add[a][0] != a:
            out.append(Violation("zero is neutral", (a,)))
        if g.neg[a] is None:
            out.append(Violation("additive inverses", (a,), "no b with a+b=0"))
    for a in range(n):
        for b in range(a + 1, n):
            if g.add[a][b] != g.add[b][a]:
                out.append(Violation("addition commutative", (a, b)))
    for a in range(n):
        for b in range(n):
            ab = g.add[a][b]
            for c in range(n):
                if g.add[ab][c] != g.add[a][g.add[b][c]]:
                    out.append(Violation("addition associative", (a, b, c)))
    return out


class FinRing:
    """Finite ring (associativity and distributivity *not* enforced here;
    run :func:`validate_ring`).  ``one`` is optional: rings that merely sit
    inside an extension as the kernel ideal need no identity."""

    def __init__(self, group: FinAbGroup, mul: Sequence[Sequence[int]],
                 one: Optional[int] = None, name: str = ""):
        self.group = group
        n = group.order
        self.mul = _check_table(mul, n, n, n, "mul table")
        if one is not None and not (0 <= one < n):
            raise StructuralError(f"one={one} out of range")
        self.one = one
        self.order = n
        self.name = name or (group.name + "-ring")

    # thin delegates so ring users never touch .group directly
    def plus(self, a, b):
        return self.group.plus(a, b)

    def minus(self, a, b):
        return self.group.minus(a, b)

    def neg_of(self, a):
        return self.group.neg_of(a)

    def times(self, a, b):
        return self.mul[a][b]

    def elements(self) -> range:
        return range(self.order)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FinRing({self.name}, order={self.order}, one={self.one})"

    def has_identity_ne_zero(self) -> bool:
        return self.one is not None and self.one != 0


def validate_ring(r: FinRing) -> list[Violation]:
    """All broken ring axioms with witnesses; empty iff ``r`` is a ring."""
    out = list(validate_group(r.group))
    n = r.order
    add, mul = r.group.add, r.mul
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            for c in range(n):
                if mul[ab][c] != mul[a][mul[b][c]]:
                    out.append(Violation("multiplication associative", (a, b, c)))
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    out.append(Violation("left distributive", (a, b, c)))
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                    out.append(Violation("right distributive", (a, b, c)))
    if r.one is not None:
        e = r.one
        for a in range(n):
            if mul[e][a] != a or mul[a][e] != a:
                out.append(Violation("identity law", (a,), f"one={e}"))
    return out


class BimoduleAction:
    """Unital two-sided action of a ring with identity on an abelian group.

    The checked laws are the ones every consumer of this type relies on:
    additivity in the module argument, mixed associativity, unitality and
    the zero laws.  Additivity in the *ring* argument holds for genuine
    module structures but not for the section-induced actions this
    workbench also has to carry, so it is validated separately by
    :func:`is_additive_in_ring`.
    """

    def __init__(self, ring: FinRing, group: FinAbGroup,
                 left: Sequence[Sequence[int]], right: Sequence[Sequence[int]],
                 name: str = ""):
        if ring.one is None:
            raise StructuralError("acting ring must have an identity")
        self.ring = ring
        self.group = group
        self.left = _check_table(left, ring.order, group.order, group.order, "left action")
        self.right = _check_table(right, ring.order, group.order, group.order, "right action")
        self.name = name or f"{ring.name}-on-{group.name}"

    def act_left(self, x: int, a: int) -> int:
        return self.left[x][a]

    def act_right(self, a: int, x: int) -> int:
        return self.right[x][a]

    def __repr__(self):
        return f"BimoduleAction({self.name})"


def validate_bimodule(act: BimoduleAction) -> list[Violation]:
    out = []
    R, A = act.ring, act.group
    e = R.one
    for x in R.elements():
        lx, rx = act.left[x], act.right[x]
        for a in A.elements():
            for b in A.elements():
                if lx[A.add[a][b]] != A.add[lx[a]][lx[b]]:
                    out.append(Violation("x(a+b) = xa+xb", (x, a, b)))
                if rx[A.add[a][b]] != A.add[rx[a]][rx[b]]:
                    out.append(Violation("(a+b)x = ax+bx", (x, a, b)))
        if lx[0] != 0:
            out.append(Violation("x0 = 0", (x,)))
        if rx[0] != 0:
            out.append(Violation("0x = 0", (x,)))
    for x in R.elements():
        for y in R.elements():
            xy = R.mul[x][y]
            for a in A.elements():
                if act.left[xy][a] != act.left[x][act.left[y][a]]:
                    out.append(Violation("(xy)a = x(ya)", (x, y, a)))
                if act.right[xy][a] != act.right[y][act.right[x][a]]:
                    out.append(Violation("a(xy) = (ax)y", (x, y, a)))
                if act.right[y][act.left[x][a]] != act.left[x][act.right[y][a]]:
                    out.append(Violation("(xa)y = x(ay)", (x, y, a)))
    for a in A.elements():
        if act.left[e][a] != a:
            out.append(Violation("1a = a", (a,)))
        if act.right[e][a] != a:
            out.append(Violation("a1 = a", (a,)))
        if act.left[0][a] != 0:
            out.append(Violation("0a = 0", (a,)))
        if act.right[0][a] != 0:
            out.append(Violation("a0 = 0", (a,)))
    return out


def is_additive_in_ring(act: BimoduleAction) -> list[Violation]:
    """Violations of ``(x+y)a = xa+ya`` and its right analogue."""
    out = []
    R, A = act.ring, act.group
    for x in R.elements():
        for y in R.elements():
            s = R.group.add[x][y]
            for a in A.elements():
                if act.left[s][a] != A.add[act.left[x][a]][act.left[y][a]]:
                    out.append(Violation("(x+y)a = xa+ya", (x, y, a)))
                if act.right[s][a] != A.add[act.right[x][a]][act.right[y][a]]:
                    out.append(Violation("a(x+y) = ax+ay", (x, y, a)))
    return out


@dataclass(frozen=True)
class AdditiveEndo:
    """Additive self-map of a group, stored as a value table."""

    group: FinAbGroup = field(compare=False)
    map: tuple

    def __post_init__(self):
        if len(self.map) != self.group.order:
            raise StructuralError("endo table length mismatch")

    def __call__(self, a: int) -> int:
        return self.map[a]

    def is_additive(self) -> bool:
        add = self.group.add
        m = self.map
        n = self.group.order
        return m[0] == 0 and all(
            m[add[a][b]] == add[m[a]][m[b]] for a in range(n) for b in range(n)
        )

    def compose(self, other: "AdditiveEndo") -> "AdditiveEndo":
        return AdditiveEndo(self.group, tuple(self.map[other.map[a]] for a in range(self.group.order)))

    def add(self, other: "AdditiveEndo") -> "AdditiveEndo":
        g = self.group
        return AdditiveEndo(g, tuple(g.add[self.map[a]][other.map[a]] for a in range(g.order)))

    def sub(self, other: "AdditiveEndo") -> "AdditiveEndo":
        g = self.group
        return AdditiveEndo(g, tuple(g.minus(self.map[a], other.map[a]) for a in range(g.order)))

    def neg(self) -> "AdditiveEndo":
        g = self.group
        return AdditiveEndo(g, tuple(g.neg[a] for a in self.map))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.map)

    def __hash__(self):
        return hash(self.map)


def zero_endo(g: FinAbGroup) -> AdditiveEndo:
    return AdditiveEndo(g, (0,) * g.order)


def identity_endo(g: FinAbGroup) -> AdditiveEndo:
    return AdditiveEndo(g, tuple(range(g.order)))


class EndoSubring:
    """A finite set of additive endomorphisms closed under +, - and
    composition.  ``witness`` optionally records, for each map, a ring
    element producing it (used for the left/right multiplication sets)."""

    def __init__(self, group: FinAbGroup, endos: Iterable[AdditiveEndo],
                 witness: Optional[dict] = None, name: str = ""):
        self.group = group
        self.endos = tuple(sorted(set(endos), key=lambda e: e.map))
        self.map_set = frozenset(e.map for e in self.endos)
        self.witness = dict(witness) if witness else {}
        self.name = name

    def __contains__(self, endo: AdditiveEndo) -> bool:
        return endo.map in self.map_set

    def contains_map(self, m: tuple) -> bool:
        return m in self.map_set

    def __len__(self):
        return len(self.endos)

    def __iter__(self):
        return iter(self.endos)

    def validate_closure(self) -> list[Violation]:
        out = []
        if (0,) * self.group.order not in self.map_set:
            out.append(Violation("contains zero endomorphism", ()))
        for e1 in self.endos:
            if e1.neg().map not in self.map_set:
                out.append(Violation("closed under negation", (e1.map,)))
            for e2 in self.endos:
                if e1.add(e2).map not in self.map_set:
                    out.append(Violation("closed under addition", (e1.map, e2.map)))
                if e1.compose(e2).map not in self.map_set:
                    out.append(Violation("closed under composition", (e1.map, e2.map)))
        return out


def _generating_sequence(g: FinAbGroup) -> tuple[list[int], dict[int, list[int]]]:
    """Greedy generators plus, for every element, one coefficient vector
    expressing it as an integer combination of those generators."""
    gens: list[int] = []
    expr: dict[int, list[int]] = {0: []}
    while len(expr) < g.order:
        a = min(x for x in g.elements() if x not in expr)
        gens.append(a)
        k = len(gens)
        new_expr: dict[int, list[int]] = {}
        for e, coeffs in expr.items():
            acc = e
            for m in range(g.element_order(a)):
                vec = coeffs + [0] * (k - 1 - len(coeffs)) + [m]
                if acc not in expr and acc not in new_expr:
                    new_expr[acc] = vec
                acc = g.add[acc][a]
        expr.update(new_expr)
        for e in expr:
            expr[e] = expr[e] + [0] * (k - len(expr[e]))
    return gens, expr


def additive_endos(g: FinAbGroup, bound: int = ENDO_BOUND) -> EndoSubring:
    """The full endomorphism ring of ``g``, materialized.

    Guarded: groups above ``bound`` would produce unwieldy tables, and every
    use in this workbench is desk scale.
    """
    if g.order > bound:
        raise GuardExceeded("additive_endos", g.order, bound)
    gens, expr = _generating_sequence(g)
    endos = []
    seen = set()
    for images in itertools.product(g.elements(), repeat=len(gens)):
        m = tuple(
            g.sum(g.times(c, img) for c, img in zip(expr[a], images))
            for a in g.elements()
        )
        if m in seen:
            continue
        e = AdditiveEndo(g, m)
        if e.is_additive():
            seen.add(m)
            endos.append(e)
    return EndoSubring(g, endos, name=f"End({g.name})")


def left_mults(r: FinRing) -> EndoSubring:
    """All left multiplication operators of the ring, with witnesses."""
    g = r.group
    witness: dict = {}
    endos = []
    for a in r.elements():
        m = tuple(r.mul[a][b] for b in r.elements())
        if m not in witness:
            witness[m] = a
            endos.append(AdditiveEndo(g, m))
    return EndoSubring(g, endos, witness=witness, name=f"L({r.name})")


def right_mults(r: FinRing) -> EndoSubring:
    """All right multiplication operators of the ring, with witnesses."""
    g = r.group
    witness: dict = {}
    endos = []
    for a in r.elements():
        m = tuple(r.mul[b][a] for b in r.elements())
        if m not in witness:
            witness[m] = a
            endos.append(AdditiveEndo(g, m))
    return EndoSubring(g, endos, witness=witness, name=f"R({r.name})")


def bicenter(r: FinRing) -> tuple[int, ...]:
    """Elements annihilated by every left and right multiplication."""
    out = [c for c in r.elements()
           if all(r.mul[c][a] == 0 and r.mul[a][c] == 0 for a in r.elements())]
    return tuple(out)


@dataclass
class CosetSpace:
    ambient: EndoSubring
    subgroup: EndoSubring
    representatives: tuple
    coset_of: dict  # endo map -> representative index

    def __len__(self):
        return len(self.representatives)


def coset_space(ambient: EndoSubring, sub: EndoSubring) -> CosetSpace:
    """Additive cosets of ``sub`` inside ``ambient``, with a canonical
    (table-lexicographic) representative per coset."""
    for e in sub:
        if e not in ambient:
            raise StructuralError("subgroup not contained in ambient")
    reps: list[AdditiveEndo] = []
    coset_of: dict = {}
    for e in ambient:  # already sorted by map table
        for i, r in enumerate(reps):
            if e.sub(r).map in sub.map_set:
                coset_of[e.map] = i
                break
        else:
            coset_of[e.map] = len(reps)
            reps.append(e)
    return CosetSpace(ambient, sub, tuple(reps), coset_of)
