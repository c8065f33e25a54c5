"""Finite quantaloids: hom lattices, composition, residuation, negation.

Everything here is table-driven.  A quantaloid is a small category whose
hom-sets are finite complete lattices and whose composition preserves joins
in both arguments.  Arrows are integer indices into per-hom lattices; all
comparisons are exact (no floating point anywhere).
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    InternalCheckError,
    InvalidSize,
    NotCyclic,
    NotDivisible,
    NotDualizing,
    ObjectMismatch,
    StructureError,
)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """A finite complete lattice presented by an order relation on indices.

    The supplied relation is closed reflexively and transitively.  Joins and
    meets of all pairs (plus a global bottom and top) are computed eagerly;
    any subset without a least upper bound raises StructureError, so a
    successfully constructed Lattice really is a complete lattice.
    """

    __slots__ = ("labels", "n", "_up", "_down", "_join", "_meet", "bottom", "top")

    def __init__(self, labels: Sequence[str], leq: Iterable[tuple[int, int]]):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise StructureError(f"duplicate lattice labels: {labels}")
        n = len(labels)
        if n == 0:
            raise StructureError("a complete lattice needs at least one element")
        up = [1 << i for i in range(n)]
        for i, j in leq:
            if not (0 <= i < n and 0 <= j < n):
                raise StructureError(f"order pair ({i},{j}) out of range")
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in _bits(acc):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in _bits(up[i]):
                if i != j and (up[j] >> i) & 1:
                    raise StructureError(
                        f"order is not antisymmetric: {labels[i]} and {labels[j]}"
                    )
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i
        self.labels = labels
        self.n = n
        self._up = up
        self._down = down
        full = (1 << n) - 1
        self.bottom = self._least(full)
        self.top = self._greatest(full)
        self._join = [
            tuple(self._least(up[i] & up[j]) for j in range(n)) for i in range(n)
        ]
        self._meet = [
            tuple(self._greatest(down[i] & down[j]) for j in range(n))
            for i in range(n)
        ]

    def _least(self, candidates: int) -> int:
        found = [c for c in _bits(candidates) if candidates & ~self._up[c] == 0]
        if len(found) != 1:
            names = [self.labels[c] for c in _bits(candidates)]
            raise StructureError(f"no least element among {names}")
        return found[0]

    def _greatest(self, candidates: int) -> int:
        found = [c for c in _bits(candidates) if candidates & ~self._down[c] == 0]
        if len(found) != 1:
            names = [self.labels[c] for c in _bits(candidates)]
            raise StructureError(f"no greatest element among {names}")
        return found[0]

    def leq(self, i: int, j: int) -> bool:
        return bool((self._up[i] >> j) & 1)

    def join(self, i: int, j: int) -> int:
        return self._join[i][j]

    def meet(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def join_all(self, items: Iterable[int]) -> int:
        acc = self.bottom
        for x in items:
            acc = self._join[acc][x]
        return acc

    def meet_all(self, items: Iterable[int]) -> int:
        acc = self.top
        for x in items:
            acc = self._meet[acc][x]
        return acc

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StructureError(f"unknown lattice element {label!r}") from None

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Lattice({list(self.labels)!r})"


class Arrow(NamedTuple):
    """An arrow of a quantaloid: source object, target object, hom index."""

    src: int
    tgt: int
    idx: int


class Quantaloid:
    """A finite quantaloid given by hom lattices, composition tables and units.

    The constructor performs structural checks only (every table present,
    every index in range); the algebraic laws are the business of
    ``validate_quantaloid`` so that deliberately broken copies can be built
    for mutation testing.
    """

    def __init__(
        self,
        objects: Sequence[str],
        homs: dict,
        compose_tables: dict,
        units: Sequence[int],
        name: str = "",
    ):
        self.objects = tuple(str(x) for x in objects)
        if len(set(self.objects)) != len(self.objects):
            raise StructureError("duplicate quantaloid object labels")
        self.name = name
        n = len(self.objects)
        self.homs = {}
        for i in range(n):
            for j in range(n):
                if (i, j) not in homs:
                    raise StructureError(f"missing hom table for ({i},{j})")
                lat = homs[(i, j)]
                if not isinstance(lat, Lattice):
                    raise StructureError(f"hom ({i},{j}) is not a Lattice")
                self.homs[(i, j)] = lat
        self.compose_tables = {}
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    key = (i, j, k)
                    if key not in compose_tables:
                        raise StructureError(f"missing composition table {key}")
                    tab = tuple(tuple(row) for row in compose_tables[key])
                    ng, nf, nh = (
                        self.homs[(j, k)].n,
                        self.homs[(i, j)].n,
                        self.homs[(i, k)].n,
                    )
                    if len(tab) != ng or any(len(r) != nf for r in tab):
                        raise StructureError(f"composition table {key} has wrong shape")
                    if any(not (0 <= v < nh) for r in tab for v in r):
                        raise StructureError(f"composition table {key} value out of range")
                    self.compose_tables[key] = tab
        units = tuple(units)
        if len(units) != n:
            raise StructureError("one unit per object is required")
        for i, u in enumerate(units):
            if not (0 <= u < self.homs[(i, i)].n):
                raise StructureError(f"unit for object {self.objects[i]} out of range")
        self.units = units
        self._residual_tables: dict = {}

    # -- basic accessors ----------------------------------------------------

    def object_index(self, label: str) -> int:
        try:
            return self.objects.index(str(label))
        except ValueError:
            raise StructureError(f"unknown object {label!r}") from None

    def hom(self, i: int, j: int) -> Lattice:
        return self.homs[(i, j)]

    def arrows(self, i: int, j: int):
        for idx in range(self.homs[(i, j)].n):
            yield Arrow(i, j, idx)

    def unit(self, i: int) -> Arrow:
        return Arrow(i, i, self.units[i])

    def top(self, i: int, j: int) -> Arrow:
        return Arrow(i, j, self.homs[(i, j)].top)

    def bottom(self, i: int, j: int) -> Arrow:
        return Arrow(i, j, self.homs[(i, j)].bottom)

    def arrow_label(self, f: Arrow) -> str:
        return self.homs[(f.src, f.tgt)].labels[f.idx]

    def _same_hom(self, f: Arrow, g: Arrow):
        if (f.src, f.tgt) != (g.src, g.tgt):
            raise ObjectMismatch(f"arrows {f} and {g} live in different homs")

    def leq(self, f: Arrow, g: Arrow) -> bool:
        self._same_hom(f, g)
        return self.homs[(f.src, f.tgt)].leq(f.idx, g.idx)

    def join(self, src: int, tgt: int, arrows: Iterable[Arrow]) -> Arrow:
        lat = self.homs[(src, tgt)]
        acc = lat.bottom
        for f in arrows:
            if (f.src, f.tgt) != (src, tgt):
                raise ObjectMismatch(f"arrow {f} not in hom ({src},{tgt})")
            acc = lat.join(acc, f.idx)
        return Arrow(src, tgt, acc)

    def meet(self, src: int, tgt: int, arrows: Iterable[Arrow]) -> Arrow:
        lat = self.homs[(src, tgt)]
        acc = lat.top
        for f in arrows:
            if (f.src, f.tgt) != (src, tgt):
                raise ObjectMismatch(f"arrow {f} not in hom ({src},{tgt})")
            acc = lat.meet(acc, f.idx)
        return Arrow(src, tgt, acc)

    # -- composition and residuation -----------------------------------------

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        if f.tgt != g.src:
            raise ObjectMismatch(
                f"cannot compose {g} after {f}: middle objects differ"
            )
        tab = self.compose_tables[(f.src, f.tgt, g.tgt)]
        return Arrow(f.src, g.tgt, tab[g.idx][f.idx])

    def _residual_table(self, side: str, i: int, j: int, k: int):
        key = (side, i, j, k)
        cached = self._residual_tables.get(key)
        if cached is not None:
            return cached
        comp = self.compose_tables[(i, j, k)]
        hik, hij, hjk = self.homs[(i, k)], self.homs[(i, j)], self.homs[(j, k)]
        if side == "left":
            # table[h][f] = largest g in hom(j,k) with g∘f ≤ h
            table = tuple(
                tuple(
                    hjk.join_all(
                        g for g in range(hjk.n) if hik.leq(comp[g][f], h)
                    )
                    for f in range(hij.n)
                )
                for h in range(hik.n)
            )
        else:
            # table[g][h] = largest f in hom(i,j) with g∘f ≤ h
            table = tuple(
                tuple(
                    hij.join_all(
                        f for f in range(hij.n) if hik.leq(comp[g][f], h)
                    )
                    for h in range(hik.n)
                )
                for g in range(hjk.n)
            )
        self._residual_tables[key] = table
        return table

    def residual(self, side: str, a: Arrow, b: Arrow) -> Arrow:
        """Largest solution of a one-sided composition inequality.

        side='left'  takes a = h: X→Z, b = f: X→Y and returns the largest
        g: Y→Z with g∘f ≤ h.  side='right' takes a = g: Y→Z, b = h: X→Z and
        returns the largest f: X→Y with g∘f ≤ h.
        """
        if side == "left":
            h, f = a, b
            if h.src != f.src:
                raise ObjectMismatch(f"{h} and {f} must share their source")
            tab = self._residual_table("left", f.src, f.tgt, h.tgt)
            return Arrow(f.tgt, h.tgt, tab[h.idx][f.idx])
        if side == "right":
            g, h = a, b
            if g.tgt != h.tgt:
                raise ObjectMismatch(f"{g} and {h} must share their target")
            tab = self._residual_table("right", h.src, g.src, g.tgt)
            return Arrow(h.src, g.src, tab[g.idx][h.idx])
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    # -- mutation support (law-harness self tests) ---------------------------

    def with_patched_compose(self, key, g_idx: int, f_idx: int, value: int) -> "Quantaloid":
        """A copy with one composition-table entry replaced (for mutation tests)."""
        tables = {k: [list(row) for row in v] for k, v in self.compose_tables.items()}
        tables[key][g_idx][f_idx] = value
        return Quantaloid(
            self.objects, dict(self.homs), tables, self.units, name=self.name + "+mutant"
        )

    def __repr__(self) -> str:
        label = self.name or f"{len(self.objects)} objects"
        return f"Quantaloid({label})"


def compose(Q: Quantaloid, g: Arrow, f: Arrow) -> Arrow:
    return Q.compose(g, f)


def residual(Q: Quantaloid, side: str, a: Arrow, b: Arrow) -> Arrow:
    return Q.residual(side, a, b)


def validate_quantaloid(Q: Quantaloid) -> list[str]:
    """Every violated quantaloid law, with witnesses; empty means valid."""
    report = []
    n = len(Q.objects)
    names = Q.objects

    def lab(f: Arrow) -> str:
        return f"{Q.arrow_label(f)}:{names[f.src]}->{names[f.tgt]}"

    # unit laws
    for i in range(n):
        for j in range(n):
            for f in Q.arrows(i, j):
                if Q.compose(Q.unit(j), f) != f:
                    report.append(f"unit law fails: 1∘{lab(f)} ≠ {lab(f)}")
                if Q.compose(f, Q.unit(i)) != f:
                    report.append(f"unit law fails: {lab(f)}∘1 ≠ {lab(f)}")
    # associativity
    for i, j, k, l in itertools.product(range(n), repeat=4):
        for f in Q.arrows(i, j):
            for g in Q.arrows(j, k):
                gf = Q.compose(g, f)
                for h in Q.arrows(k, l):
                    if Q.compose(h, gf) != Q.compose(Q.compose(h, g), f):
                        report.append(
                            "associativity fails: "
                            f"h={lab(h)} g={lab(g)} f={lab(f)}"
                        )
    # join preservation in each variable (binary joins and bottom suffice
    # for finite lattices)
    for i, j, k in itertools.product(range(n), repeat=3):
        hij, hjk = Q.homs[(i, j)], Q.homs[(j, k)]
        for g in Q.arrows(j, k):
            if Q.compose(g, Q.bottom(i, j)) != Q.bottom(i, k):
                report.append(f"g∘⊥ ≠ ⊥ for g={lab(g)} at ({names[i]},{names[j]})")
            for f1 in Q.arrows(i, j):
                for f2_idx in range(f1.idx + 1, hij.n):
                    f2 = Arrow(i, j, f2_idx)
                    joined = Arrow(i, j, hij.join(f1.idx, f2.idx))
                    lhs = Q.compose(g, joined)
                    rhs = Q.join(i, k, [Q.compose(g, f1), Q.compose(g, f2)])
                    if lhs != rhs:
                        report.append(
                            f"∘ not join-preserving on the right: g={lab(g)} "
                            f"f1={lab(f1)} f2={lab(f2)}"
                        )
        for f in Q.arrows(i, j):
            if Q.compose(Q.bottom(j, k), f) != Q.bottom(i, k):
                report.append(f"⊥∘f ≠ ⊥ for f={lab(f)} at ({names[j]},{names[k]})")
            for g1 in Q.arrows(j, k):
                for g2_idx in range(g1.idx + 1, hjk.n):
                    g2 = Arrow(j, k, g2_idx)
                    joined = Arrow(j, k, hjk.join(g1.idx, g2.idx))
                    lhs = Q.compose(joined, f)
                    rhs = Q.join(i, k, [Q.compose(g1, f), Q.compose(g2, f)])
                    if lhs != rhs:
                        report.append(
                            f"∘ not join-preserving on the left: f={lab(f)} "
                            f"g1={lab(g1)} g2={lab(g2)}"
                        )
    return report


def arrow_adjoint_check(Q: Quantaloid, f: Arrow, g: Arrow) -> bool:
    """True iff f and g form an adjoint pair (f left, g right).

    On success also asserts the closed descriptions of each adjoint in terms
    of the other and the units; those are theorems, so their failure means a
    bug and raises InternalCheckError.
    """
    if f.src != g.tgt or f.tgt != g.src:
        raise ObjectMismatch(f"{f} and {g} are not antiparallel")
    x, y = f.src, f.tgt
    ok = Q.leq(Q.unit(x), Q.compose(g, f)) and Q.leq(Q.compose(f, g), Q.unit(y))
    if ok:
        if g != Q.residual("right", f, Q.unit(y)):
            raise InternalCheckError("right adjoint is not f↘1")
        if f != Q.residual("left", Q.unit(y), g):
            raise InternalCheckError("left adjoint is not 1↙g")
    return ok


# ---------------------------------------------------------------------------
#  Quantales (one-object data) and chain/boolean builders
# ---------------------------------------------------------------------------


class QuantaleSpec:
    """A finite complete lattice with a join-preserving monoid structure."""

    def __init__(
        self,
        labels: Sequence[str],
        leq: Iterable[tuple[int, int]],
        tensor_table: Sequence[Sequence[int]],
        unit: int,
        name: str = "",
    ):
        self.lattice = Lattice(labels, leq)
        n = self.lattice.n
        tab = tuple(tuple(row) for row in tensor_table)
        if len(tab) != n or any(len(r) != n for r in tab):
            raise StructureError("tensor table has wrong shape")
        if any(not (0 <= v < n) for r in tab for v in r):
            raise StructureError("tensor table value out of range")
        if not (0 <= unit < n):
            raise StructureError("unit out of range")
        self.tensor_table = tab
        self.unit = unit
        self.name = name

    @property
    def labels(self):
        return self.lattice.labels

    def tensor(self, a: int, b: int) -> int:
        return self.tensor_table[a][b]

    def ldiv(self, a: int, b: int) -> int:
        """Largest c with a&c ≤ b."""
        lat = self.lattice
        return lat.join_all(
            c for c in range(lat.n) if lat.leq(self.tensor(a, c), b)
        )

    def rdiv(self, b: int, a: int) -> int:
        """Largest c with c&a ≤ b."""
        lat = self.lattice
        return lat.join_all(
            c for c in range(lat.n) if lat.leq(self.tensor(c, a), b)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QuantaleSpec)
            and self.labels == other.labels
            and self.lattice._up == other.lattice._up
            and self.tensor_table == other.tensor_table
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.labels, self.lattice._up, self.tensor_table, self.unit))

    def __repr__(self) -> str:
        return f"QuantaleSpec({self.name or list(self.labels)!r})"


def validate_quantale(q: QuantaleSpec) -> list[str]:
    report = []
    lat = q.lattice
    n = lat.n
    for a in range(n):
        if q.tensor(q.unit, a) != a or q.tensor(a, q.unit) != a:
            report.append(f"unit law fails at {lat.labels[a]}")
    for a, b, c in itertools.product(range(n), repeat=3):
        if q.tensor(a, q.tensor(b, c)) != q.tensor(q.tensor(a, b), c):
            report.append(
                "tensor not associative at "
                f"({lat.labels[a]},{lat.labels[b]},{lat.labels[c]})"
            )
    for a in range(n):
        if q.tensor(a, lat.bottom) != lat.bottom or q.tensor(lat.bottom, a) != lat.bottom:
            report.append(f"tensor does not absorb bottom at {lat.labels[a]}")
        for b, c in itertools.combinations(range(n), 2):
            j = lat.join(b, c)
            if q.tensor(a, j) != lat.join(q.tensor(a, b), q.tensor(a, c)):
                report.append(
                    f"tensor not join-preserving on the right at "
                    f"({lat.labels[a]}; {lat.labels[b]}∨{lat.labels[c]})"
                )
            if q.tensor(j, a) != lat.join(q.tensor(b, a), q.tensor(c, a)):
                report.append(
                    f"tensor not join-preserving on the left at "
                    f"({lat.labels[b]}∨{lat.labels[c]}; {lat.labels[a]})"
                )
    return report


def check_divisible(q: QuantaleSpec):
    """(True, None) when the two-sided division identity holds, else a witness.

    The identity checked for every pair (a,b) is
    (b/a)&a = a∧b = a&(a↘b); the first pair violating it is returned.
    Divisors are scanned from the top of the lattice downwards (large
    divisors are the interesting ones), dividends from the bottom up.
    """
    lat = q.lattice
    order = sorted(range(lat.n), key=lambda x: (-bin(lat._down[x]).count("1"), x))
    for a in order:
        for b in range(lat.n):
            wedge = lat.meet(a, b)
            if q.tensor(q.rdiv(b, a), a) != wedge:
                return False, (lat.labels[a], lat.labels[b])
            if q.tensor(a, q.ldiv(a, b)) != wedge:
                return False, (lat.labels[a], lat.labels[b])
    return True, None


def _chain_leq(n: int):
    return [(i, j) for i in range(n) for j in range(n) if i <= j]


def _chain_labels(n: int):
    return [str(Fraction(k, n - 1)) for k in range(n)]


def build_lukasiewicz_chain(n: int) -> QuantaleSpec:
    """The n-element chain 0 < 1/(n-1) < ... < 1 with a&b = max(0, a+b-1)."""
    if n < 2:
        raise InvalidSize(f"a chain quantale needs at least 2 elements, got {n}")
    top = n - 1
    table = [[max(0, a + b - top) for b in range(n)] for a in range(n)]
    return QuantaleSpec(_chain_labels(n), _chain_leq(n), table, top, name=f"lukasiewicz-{n}")


def build_nilpotent_minimum_chain(n: int) -> QuantaleSpec:
    """The n-element chain with a&b = 0 when a+b ≤ 1 and min(a,b) otherwise."""
    if n < 2:
        raise InvalidSize(f"a chain quantale needs at least 2 elements, got {n}")
    top = n - 1
    table = [[0 if a + b <= top else min(a, b) for b in range(n)] for a in range(n)]
    return QuantaleSpec(
        _chain_labels(n), _chain_leq(n), table, top, name=f"nilpotent-minimum-{n}"
    )


def build_godel_chain(n: int) -> QuantaleSpec:
    """The n-element chain with a&b = min(a,b) (a frame)."""
    if n < 2:
        raise InvalidSize(f"a chain quantale needs at least 2 elements, got {n}")
    table = [[min(a, b) for b in range(n)] for a in range(n)]
    return QuantaleSpec(_chain_labels(n), _chain_leq(n), table, n - 1, name=f"godel-{n}")


def build_boolean_quantale() -> QuantaleSpec:
    """The two-element Boolean algebra with tensor = meet."""
    table = [[0, 0], [0, 1]]
    return QuantaleSpec(["0", "1"], [(0, 1)], table, 1, name="boolean")


def build_boolean_algebra_quantale(atoms: int) -> QuantaleSpec:
    """The powerset of `atoms` generators with tensor = intersection."""
    if atoms < 0:
        raise InvalidSize("atom count must be nonnegative")
    letters = "abcdefgh"
    if atoms > len(letters):
        raise InvalidSize(f"at most {len(letters)} atoms supported")
    n = 1 << atoms
    labels = [
        "0" if s == 0 else "".join(letters[i] for i in range(atoms) if (s >> i) & 1)
        for s in range(n)
    ]
    leq = [(i, j) for i in range(n) for j in range(n) if i & ~j == 0]
    table = [[a & b for b in range(n)] for a in range(n)]
    return QuantaleSpec(labels, leq, table, n - 1, name=f"boolean-{n}")


def one_object_quantaloid(q: QuantaleSpec, object_label: str = "*") -> Quantaloid:
    """View a quantale as a quantaloid with a single object."""
    lat = q.lattice
    hom = Lattice(lat.labels, [(i, j) for i in range(lat.n) for j in range(lat.n) if lat.leq(i, j)])
    return Quantaloid(
        [object_label],
        {(0, 0): hom},
        {(0, 0, 0): q.tensor_table},
        [q.unit],
        name=q.name or "quantale",
    )


def build_boolean() -> Quantaloid:
    """The one-object quantaloid with hom {0,1}, composition = meet, unit = 1."""
    return one_object_quantaloid(build_boolean_quantale(), object_label="*")


class DivisibleQuantaloid(Quantaloid):
    """Quantaloid of a divisible quantale, remembering the element mapping.

    Objects are the quantale elements; hom(X,Y) consists of the elements
    below X∧Y.  `hom_global[(i,j)]` maps local arrow indices back to quantale
    element indices, which is what file ingestion needs to type-check
    degrees.
    """

    def __init__(self, quantale: QuantaleSpec, *args, hom_global=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.quantale = quantale
        self.hom_global = hom_global or {}
        self._hom_local = {
            key: {g: loc for loc, g in enumerate(globs)}
            for key, globs in self.hom_global.items()
        }

    def arrow_from_element(self, i: int, j: int, element: int) -> Arrow:
        """The arrow X→Y carried by a quantale element, or ArrowTypeError."""
        local = self._hom_local[(i, j)].get(element)
        if local is None:
            from .errors import ArrowTypeError

            raise ArrowTypeError(
                f"element {self.quantale.labels[element]} is not below "
                f"{self.objects[i]}∧{self.objects[j]}"
            )
        return Arrow(i, j, local)

    def element_of_arrow(self, f: Arrow) -> int:
        return self.hom_global[(f.src, f.tgt)][f.idx]


def quantaloid_from_divisible_quantale(q: QuantaleSpec) -> DivisibleQuantaloid:
    """The quantaloid whose objects are the elements of a divisible quantale.

    hom(X,Y) = {α ≤ X∧Y} with composition β∘α = β&(Y↘α) and unit 1_X = X.
    Raises NotDivisible when the division identity fails.
    """
    ok, witness = check_divisible(q)
    if not ok:
        raise NotDivisible(witness)
    lat = q.lattice
    n = lat.n
    hom_elements = {}
    homs = {}
    for i in range(n):
        for j in range(n):
            bound = lat.meet(i, j)
            elems = [a for a in range(n) if lat.leq(a, bound)]
            hom_elements[(i, j)] = tuple(elems)
            local_leq = [
                (x, y)
                for x in range(len(elems))
                for y in range(len(elems))
                if lat.leq(elems[x], elems[y])
            ]
            homs[(i, j)] = Lattice([lat.labels[a] for a in elems], local_leq)
    compose_tables = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                src, mid, dst = hom_elements[(i, j)], j, hom_elements[(j, k)]
                out = hom_elements[(i, k)]
                out_pos = {a: p for p, a in enumerate(out)}
                table = []
                for beta in dst:
                    row = []
                    for alpha in src:
                        value = q.tensor(beta, q.ldiv(mid, alpha))
                        pos = out_pos.get(value)
                        if pos is None:
                            raise StructureError(
                                "composition left its hom; the quantale is not "
                                "divisible enough for the construction"
                            )
                        row.append(pos)
                    table.append(row)
                compose_tables[(i, j, k)] = table
    units = [hom_elements[(i, i)].index(i) for i in range(n)]
    return DivisibleQuantaloid(
        q,
        lat.labels,
        homs,
        compose_tables,
        units,
        hom_global=hom_elements,
        name=f"quantaloid({q.name})" if q.name else "divisible-quantaloid",
    )


# ---------------------------------------------------------------------------
#  Girard structure
# ---------------------------------------------------------------------------


class GirardReport:
    """A validated cyclic dualizing family together with its negation."""

    def __init__(self, Q: Quantaloid, family: Sequence[int], notes: Sequence[str] = ()):
        self.quantaloid = Q
        self.family = tuple(family)
        self.notes = list(notes)

    def dualizer(self, i: int) -> Arrow:
        return Arrow(i, i, self.family[i])

    def negate(self, f: Arrow) -> Arrow:
        """¬f: the residual of the dualizer at f's source through f."""
        Q = self.quantaloid
        return Q.residual("left", self.dualizer(f.src), f)

    def __repr__(self) -> str:
        Q = self.quantaloid
        members = {
            Q.objects[i]: Q.homs[(i, i)].labels[d] for i, d in enumerate(self.family)
        }
        return f"GirardReport({members})"


def girard_structure(Q: Quantaloid, family: Sequence[int]) -> GirardReport:
    """Validate a candidate dualizing family exhaustively.

    Raises NotCyclic / NotDualizing with a witness arrow on failure.  On
    success, when every unit is the top of its hom, additionally asserts the
    forced collapse of the family to the bottoms (a theorem; violation is an
    internal error).
    """
    n = len(Q.objects)
    family = tuple(family)
    if len(family) != n:
        raise StructureError("family must assign one endo-arrow per object")
    d = [Arrow(i, i, family[i]) for i in range(n)]
    for i, di in enumerate(d):
        if not (0 <= di.idx < Q.homs[(i, i)].n):
            raise StructureError(f"family member for {Q.objects[i]} out of range")
    for i in range(n):
        for j in range(n):
            for f in Q.arrows(i, j):
                if Q.residual("left", d[i], f) != Q.residual("right", f, d[j]):
                    raise NotCyclic(f)
    for i in range(n):
        for j in range(n):
            for f in Q.arrows(i, j):
                neg = Q.residual("left", d[i], f)
                if Q.residual("right", neg, d[i]) != f:
                    raise NotDualizing(f)
                co = Q.residual("right", f, d[j])
                if Q.residual("left", d[j], co) != f:
                    raise NotDualizing(f)
    notes = []
    if all(Q.units[i] == Q.homs[(i, i)].top for i in range(n)):
        for i in range(n):
            if family[i] != Q.homs[(i, i)].bottom:
                raise InternalCheckError(
                    "units are tops but a dualizer is not the bottom"
                )
        notes.append("units are tops; family is the bottom family as forced")
    return GirardReport(Q, family, notes)


def search_dualizing_families(Q: Quantaloid) -> list[tuple[int, ...]]:
    """All cyclic dualizing families, by exhaustive search.

    The underlying theory never singles out a preferred family, so the caller
    chooses; the list is in lexicographic order of hom indices.
    """
    n = len(Q.objects)
    found = []
    for family in itertools.product(*(range(Q.homs[(i, i)].n) for i in range(n))):
        try:
            girard_structure(Q, family)
        except (NotCyclic, NotDualizing):
            continue
        found.append(family)
    return found
