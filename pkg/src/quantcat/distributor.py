"""Bimodules between enriched categories, weights, and their categories."""

from __future__ import annotations

import itertools
import os
from typing import NamedTuple, Sequence

from .enriched import QCategory, QFunctor
from .errors import (
    ArrowTypeError,
    CategoryMismatch,
    InternalCheckError,
    InvalidInfomorphism,
    PresheafSpaceTooLarge,
    StructureError,
)
from .quantaloid import Arrow, Quantaloid

DEFAULT_CAP = 200_000
CAP_ENV_VAR = "QUANTCAT_PRESHEAF_CAP"


def default_cap() -> int:
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise StructureError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise StructureError(f"{CAP_ENV_VAR} must be positive")
    return value


class QDistributor:
    """A matrix of arrows phi(x,y) in Q(tx,ty) compatible with both hom actions.

    `dom` and `cod` are the source and target categories; `matrix[x][y]`
    indexes into Q(tx, ty).
    """

    __slots__ = ("dom", "cod", "matrix")

    def __init__(self, dom: QCategory, cod: QCategory, matrix: Sequence[Sequence[int]]):
        if dom.Q is not cod.Q:
            raise CategoryMismatch("distributor endpoints live over different quantaloids")
        self.dom = dom
        self.cod = cod
        self.matrix = tuple(tuple(row) for row in matrix)
        if len(self.matrix) != len(dom) or any(len(r) != len(cod) for r in self.matrix):
            raise StructureError("distributor matrix has wrong shape")

    @property
    def Q(self) -> Quantaloid:
        return self.dom.Q

    def arrow(self, x: int, y: int) -> Arrow:
        return Arrow(self.dom.types[x], self.cod.types[y], self.matrix[x][y])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QDistributor)
            and self.dom is other.dom
            and self.cod is other.cod
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((id(self.dom), id(self.cod), self.matrix))

    def __repr__(self) -> str:
        return f"QDistributor({len(self.dom)}x{len(self.cod)})"


def identity_distributor(A: QCategory) -> QDistributor:
    return QDistributor(A, A, A.hom_idx)


def validate_distributor(phi: QDistributor) -> list[str]:
    """Violated action constraints with witnesses; empty = valid."""
    Q = phi.Q
    A, B = phi.dom, phi.cod
    for x in range(len(A)):
        for y in range(len(B)):
            lat = Q.homs[(A.types[x], B.types[y])]
            if not (0 <= phi.matrix[x][y] < lat.n):
                raise ArrowTypeError(
                    f"entry ({A.labels[x]},{B.labels[y]}) is outside its hom lattice"
                )
    report = []
    for x in range(len(A)):
        for y in range(len(B)):
            target = phi.arrow(x, y)
            for yp in range(len(B)):
                if not Q.leq(Q.compose(B.hom(yp, y), phi.arrow(x, yp)), target):
                    report.append(
                        f"target action fails at ({A.labels[x]},{B.labels[yp]},{B.labels[y]})"
                    )
            for xp in range(len(A)):
                if not Q.leq(Q.compose(phi.arrow(xp, y), A.hom(x, xp)), target):
                    report.append(
                        f"source action fails at ({A.labels[x]},{A.labels[xp]},{B.labels[y]})"
                    )
    return report


def compose_distributors(psi: QDistributor, phi: QDistributor) -> QDistributor:
    """psi after phi: (psi . phi)(x,z) = join over y of psi(y,z) . phi(x,y)."""
    if phi.cod is not psi.dom:
        raise CategoryMismatch("distributors are not composable")
    Q = phi.Q
    A, B, C = phi.dom, phi.cod, psi.cod
    matrix = [
        [
            Q.join(
                A.types[x],
                C.types[z],
                [Q.compose(psi.arrow(y, z), phi.arrow(x, y)) for y in range(len(B))],
            ).idx
            for z in range(len(C))
        ]
        for x in range(len(A))
    ]
    return QDistributor(A, C, matrix)


def dist_residual(side: str, a: QDistributor, b: QDistributor) -> QDistributor:
    """Largest distributor solving a one-sided composition inequality.

    side='left': a : A -/-> C, b : A -/-> B, result : B -/-> C with
    result . b <= a.  side='right': a : B -/-> C, b : A -/-> C, result :
    A -/-> B with a . result <= b.
    """
    Q = a.Q
    if side == "left":
        if a.dom is not b.dom:
            raise CategoryMismatch("left residual needs a common source category")
        B, C, A = b.cod, a.cod, a.dom
        matrix = [
            [
                Q.meet(
                    B.types[y],
                    C.types[z],
                    [
                        Q.residual("left", a.arrow(x, z), b.arrow(x, y))
                        for x in range(len(A))
                    ],
                ).idx
                for z in range(len(C))
            ]
            for y in range(len(B))
        ]
        return QDistributor(B, C, matrix)
    if side == "right":
        if a.cod is not b.cod:
            raise CategoryMismatch("right residual needs a common target category")
        A, B, C = b.dom, a.dom, a.cod
        matrix = [
            [
                Q.meet(
                    A.types[x],
                    B.types[y],
                    [
                        Q.residual("right", a.arrow(y, z), b.arrow(x, z))
                        for z in range(len(C))
                    ],
                ).idx
                for y in range(len(B))
            ]
            for x in range(len(A))
        ]
        return QDistributor(A, B, matrix)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def dist_leq(phi: QDistributor, psi: QDistributor) -> bool:
    if phi.dom is not psi.dom or phi.cod is not psi.cod:
        raise CategoryMismatch("distributors are not parallel")
    Q = phi.Q
    return all(
        Q.leq(phi.arrow(x, y), psi.arrow(x, y))
        for x in range(len(phi.dom))
        for y in range(len(phi.cod))
    )


def dist_adjoint_check(phi: QDistributor, psi: QDistributor) -> bool:
    """True iff A <= psi.phi and phi.psi <= B (phi left adjoint to psi)."""
    if psi.dom is not phi.cod or psi.cod is not phi.dom:
        raise CategoryMismatch("adjoint candidate must run the other way")
    A, B = phi.dom, phi.cod
    return dist_leq(
        QDistributor(A, A, A.hom_idx), compose_distributors(psi, phi)
    ) and dist_leq(compose_distributors(phi, psi), QDistributor(B, B, B.hom_idx))


def graph_cograph(F: QFunctor) -> tuple[QDistributor, QDistributor]:
    """The adjoint pair of distributors induced by a functor.

    graph(x,y) = B(Fx,y) : A -/-> B and cograph(y,x) = B(y,Fx) : B -/-> A.
    """
    A, B = F.dom, F.cod
    graph = QDistributor(
        A, B, [[B.hom_idx[F(x)][y] for y in range(len(B))] for x in range(len(A))]
    )
    cograph = QDistributor(
        B, A, [[B.hom_idx[y][F(x)] for x in range(len(A))] for y in range(len(B))]
    )
    return graph, cograph


# ---------------------------------------------------------------------------
# Weights: contravariant (presheaf) and covariant (copresheaf)
# ---------------------------------------------------------------------------


class Presheaf(NamedTuple):
    """Contravariant weight on `base`: weights[x] in Q(tx, type_idx),
    closed under the right action of the base homs."""

    base: QCategory
    type_idx: int
    weights: tuple[int, ...]

    def arrow(self, x: int) -> Arrow:
        return Arrow(self.base.types[x], self.type_idx, self.weights[x])


class Copresheaf(NamedTuple):
    """Covariant weight on `base`: weights[x] in Q(type_idx, tx),
    closed under the left action of the base homs."""

    base: QCategory
    type_idx: int
    weights: tuple[int, ...]

    def arrow(self, x: int) -> Arrow:
        return Arrow(self.type_idx, self.base.types[x], self.weights[x])


def validate_presheaf(mu: Presheaf) -> list[str]:
    A, Q = mu.base, mu.base.Q
    report = []
    for x in range(len(A)):
        for xp in range(len(A)):
            if not Q.leq(Q.compose(mu.arrow(xp), A.hom(x, xp)), mu.arrow(x)):
                report.append(f"action fails at ({A.labels[x]},{A.labels[xp]})")
    return report


def validate_copresheaf(lam: Copresheaf) -> list[str]:
    A, Q = lam.base, lam.base.Q
    report = []
    for x in range(len(A)):
        for xp in range(len(A)):
            if not Q.leq(Q.compose(A.hom(x, xp), lam.arrow(x)), lam.arrow(xp)):
                report.append(f"action fails at ({A.labels[x]},{A.labels[xp]})")
    return report


def weight_leq(a, b) -> bool:
    """Pointwise comparison of two weights of the same variance/type/base."""
    if a.base is not b.base or a.type_idx != b.type_idx or type(a) is not type(b):
        raise CategoryMismatch("weights are not comparable")
    Q = a.base.Q
    return all(Q.leq(a.arrow(x), b.arrow(x)) for x in range(len(a.base)))


def presheaf_hom(mu: Presheaf, nu: Presheaf) -> Arrow:
    """Hom-arrow from mu to nu in the presheaf category:
    meet over a of nu(a) <-left- mu(a), in Q(type mu, type nu)."""
    if mu.base is not nu.base:
        raise CategoryMismatch("presheaves live on different categories")
    Q = mu.base.Q
    return Q.meet(
        mu.type_idx,
        nu.type_idx,
        [
            Q.residual("left", nu.arrow(x), mu.arrow(x))
            for x in range(len(mu.base))
        ],
    )


def copresheaf_hom(lam: Copresheaf, rho: Copresheaf) -> Arrow:
    """Hom-arrow from lam to rho in the copresheaf category:
    meet over a of rho(a) -right-> lam(a), in Q(type lam, type rho).

    The underlying order of this category reverses the pointwise order.
    """
    if lam.base is not rho.base:
        raise CategoryMismatch("copresheaves live on different categories")
    Q = lam.base.Q
    return Q.meet(
        lam.type_idx,
        rho.type_idx,
        [
            Q.residual("right", rho.arrow(x), lam.arrow(x))
            for x in range(len(lam.base))
        ],
    )


def top_presheaf(A: QCategory, type_idx: int) -> Presheaf:
    Q = A.Q
    return Presheaf(
        A, type_idx, tuple(Q.top(A.types[x], type_idx).idx for x in range(len(A)))
    )


def bottom_presheaf(A: QCategory, type_idx: int) -> Presheaf:
    Q = A.Q
    return Presheaf(
        A, type_idx, tuple(Q.bottom(A.types[x], type_idx).idx for x in range(len(A)))
    )


def top_copresheaf(A: QCategory, type_idx: int) -> Copresheaf:
    Q = A.Q
    return Copresheaf(
        A, type_idx, tuple(Q.top(type_idx, A.types[x]).idx for x in range(len(A)))
    )


def presheaf_meet(items: Sequence[Presheaf], A: QCategory, type_idx: int) -> Presheaf:
    """Pointwise meet; the empty meet is the all-top weight."""
    Q = A.Q
    weights = tuple(
        Q.meet(
            A.types[x], type_idx, [Arrow(A.types[x], type_idx, m.weights[x]) for m in items]
        ).idx
        for x in range(len(A))
    )
    return Presheaf(A, type_idx, weights)


def presheaf_join(items: Sequence[Presheaf], A: QCategory, type_idx: int) -> Presheaf:
    """Pointwise join; the empty join is the all-bottom weight."""
    Q = A.Q
    weights = tuple(
        Q.join(
            A.types[x], type_idx, [Arrow(A.types[x], type_idx, m.weights[x]) for m in items]
        ).idx
        for x in range(len(A))
    )
    return Presheaf(A, type_idx, weights)


def presheaf_space_bound(A: QCategory, type_idx: int) -> int:
    bound = 1
    for x in range(len(A)):
        bound *= A.Q.homs[(A.types[x], type_idx)].n
    return bound


def enumerate_presheaves(
    A: QCategory, variance: str = "contra", cap: int | None = None
) -> list:
    """All valid weights, grouped by type in quantaloid-object order.

    Raises PresheafSpaceTooLarge when the candidate space for some type
    exceeds the cap (env var QUANTCAT_PRESHEAF_CAP or 200000 by default).
    """
    if variance not in ("contra", "co"):
        raise ValueError(f"variance must be 'contra' or 'co', got {variance!r}")
    if cap is None:
        cap = default_cap()
    Q = A.Q
    out = []
    for t in range(len(Q.objects)):
        if variance == "contra":
            sizes = [Q.homs[(A.types[x], t)].n for x in range(len(A))]
        else:
            sizes = [Q.homs[(t, A.types[x])].n for x in range(len(A))]
        bound = 1
        for s in sizes:
            bound *= s
        if bound > cap:
            raise PresheafSpaceTooLarge(bound, cap)
        for weights in itertools.product(*(range(s) for s in sizes)):
            if variance == "contra":
                cand = Presheaf(A, t, weights)
                if not validate_presheaf(cand):
                    out.append(cand)
            else:
                cand = Copresheaf(A, t, weights)
                if not validate_copresheaf(cand):
                    out.append(cand)
    return out


class PresheafCategory(QCategory):
    """The category of all weights of one variance on a base category.

    Skeletal and complete; elements are labelled p0, p1, ... in
    enumeration order and typed by the weight's type object.
    """

    def __init__(self, base: QCategory, variance: str, weights: Sequence):
        self.base = base
        self.variance = variance
        self.weights_list = tuple(weights)
        self._index = {w.weights + (w.type_idx,): i for i, w in enumerate(self.weights_list)}
        if len(self._index) != len(self.weights_list):
            raise StructureError("duplicate weights")
        hom_fn = presheaf_hom if variance == "contra" else copresheaf_hom
        n = len(self.weights_list)
        hom = [
            [hom_fn(self.weights_list[i], self.weights_list[j]).idx for j in range(n)]
            for i in range(n)
        ]
        super().__init__(
            base.Q,
            [f"p{i}" for i in range(n)],
            [w.type_idx for w in self.weights_list],
            hom,
        )

    def index_of(self, w) -> int:
        if w.base is not self.base:
            raise CategoryMismatch("weight lives on a different base category")
        try:
            return self._index[w.weights + (w.type_idx,)]
        except KeyError:
            raise InternalCheckError(
                "weight is not in the enumerated category; action closure is broken"
            ) from None

    def weight_at(self, i: int):
        return self.weights_list[i]


def presheaf_category(
    A: QCategory, variance: str = "contra", cap: int | None = None
) -> PresheafCategory:
    return PresheafCategory(A, variance, enumerate_presheaves(A, variance, cap))


def yoneda_weight(A: QCategory, a: int) -> Presheaf:
    """The represented presheaf A(-, a)."""
    return Presheaf(
        A, A.types[a], tuple(A.hom_idx[x][a] for x in range(len(A)))
    )


def coyoneda_weight(A: QCategory, a: int) -> Copresheaf:
    """The represented copresheaf A(a, -)."""
    return Copresheaf(
        A, A.types[a], tuple(A.hom_idx[a][x] for x in range(len(A)))
    )


def yoneda(A: QCategory, P: PresheafCategory) -> QFunctor:
    """The embedding of A into its (co)presheaf category; fully faithful."""
    if P.base is not A:
        raise CategoryMismatch("presheaf category has a different base")
    if P.variance == "contra":
        mapping = [P.index_of(yoneda_weight(A, a)) for a in range(len(A))]
    else:
        mapping = [P.index_of(coyoneda_weight(A, a)) for a in range(len(A))]
    return QFunctor(A, P, mapping)


# ---------------------------------------------------------------------------
# Image of weights along a functor (four variants, two adjoint pairs)
# ---------------------------------------------------------------------------


def direct_image(F: QFunctor, mu: Presheaf) -> Presheaf:
    """Left adjoint on presheaves: (b) -> join over a of mu(a) . B(b,Fa)."""
    if mu.base is not F.dom:
        raise CategoryMismatch("presheaf does not live on the functor's source")
    A, B, Q = F.dom, F.cod, F.dom.Q
    weights = tuple(
        Q.join(
            B.types[b],
            mu.type_idx,
            [
                Q.compose(mu.arrow(a), Arrow(B.types[b], A.types[a], B.hom_idx[b][F(a)]))
                for a in range(len(A))
            ],
        ).idx
        for b in range(len(B))
    )
    return Presheaf(B, mu.type_idx, weights)


def inverse_image(F: QFunctor, lam: Presheaf) -> Presheaf:
    """Right adjoint on presheaves: restriction along F."""
    if lam.base is not F.cod:
        raise CategoryMismatch("presheaf does not live on the functor's target")
    return Presheaf(F.dom, lam.type_idx, tuple(lam.weights[F(a)] for a in range(len(F.dom))))


def codirect_image(F: QFunctor, nu: Copresheaf) -> Copresheaf:
    """Right adjoint on copresheaves: (b) -> join over a of B(Fa,b) . nu(a)."""
    if nu.base is not F.dom:
        raise CategoryMismatch("copresheaf does not live on the functor's source")
    A, B, Q = F.dom, F.cod, F.dom.Q
    weights = tuple(
        Q.join(
            nu.type_idx,
            B.types[b],
            [
                Q.compose(Arrow(A.types[a], B.types[b], B.hom_idx[F(a)][b]), nu.arrow(a))
                for a in range(len(A))
            ],
        ).idx
        for b in range(len(B))
    )
    return Copresheaf(B, nu.type_idx, weights)


def coinverse_image(F: QFunctor, gam: Copresheaf) -> Copresheaf:
    """Left adjoint on copresheaves: restriction along F."""
    if gam.base is not F.cod:
        raise CategoryMismatch("copresheaf does not live on the functor's target")
    return Copresheaf(F.dom, gam.type_idx, tuple(gam.weights[F(a)] for a in range(len(F.dom))))


_IMAGE_KINDS = {
    "ra": direct_image,
    "la": inverse_image,
    "nra": codirect_image,
    "nla": coinverse_image,
}


def image_functor(
    F: QFunctor, kind: str, source_ps: PresheafCategory, target_ps: PresheafCategory
) -> QFunctor:
    """The pointwise image operation as a functor between weight categories.

    kind: 'ra' direct image (left adjoint), 'la' inverse image (its right
    adjoint), 'nra' covariant direct image (right adjoint), 'nla' covariant
    restriction (its left adjoint).
    """
    try:
        op = _IMAGE_KINDS[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {sorted(_IMAGE_KINDS)}, got {kind!r}") from None
    forward = kind in ("ra", "nra")
    want_src = F.dom if forward else F.cod
    want_tgt = F.cod if forward else F.dom
    if source_ps.base is not want_src or target_ps.base is not want_tgt:
        raise CategoryMismatch("weight categories do not match the functor endpoints")
    want_var = "contra" if kind in ("ra", "la") else "co"
    if source_ps.variance != want_var or target_ps.variance != want_var:
        raise CategoryMismatch(f"kind {kind!r} needs {want_var}variant weight categories")
    mapping = [
        target_ps.index_of(op(F, source_ps.weight_at(i))) for i in range(len(source_ps))
    ]
    return QFunctor(source_ps, target_ps, mapping)


# ---------------------------------------------------------------------------
# Infomorphisms between distributors
# ---------------------------------------------------------------------------


class Infomorphism(NamedTuple):
    """A pair of functors (F on sources, G backwards on targets) with
    source(x, G y') = target(F x, y') for all x, y'."""

    source: QDistributor
    target: QDistributor
    F: QFunctor
    G: QFunctor


def validate_infomorphism(i: Infomorphism) -> list[str]:
    phi, psi, F, G = i
    if F.dom is not phi.dom or F.cod is not psi.dom:
        raise CategoryMismatch("forward functor endpoints do not match")
    if G.dom is not psi.cod or G.cod is not phi.cod:
        raise CategoryMismatch("backward functor endpoints do not match")
    report = []
    for x in range(len(phi.dom)):
        for yp in range(len(psi.cod)):
            if phi.matrix[x][G(yp)] != psi.matrix[F(x)][yp]:
                report.append(
                    f"exchange fails at ({phi.dom.labels[x]},{psi.cod.labels[yp]})"
                )
    return report


def infomorphism(
    source: QDistributor, target: QDistributor, F: QFunctor, G: QFunctor
) -> Infomorphism:
    i = Infomorphism(source, target, F, G)
    report = validate_infomorphism(i)
    if report:
        raise InvalidInfomorphism("; ".join(report[:3]))
    return i


def identity_infomorphism(phi: QDistributor) -> Infomorphism:
    from .enriched import identity_functor

    return Infomorphism(phi, phi, identity_functor(phi.dom), identity_functor(phi.cod))


def compose_infomorphisms(j: Infomorphism, i: Infomorphism) -> Infomorphism:
    """j after i; i.target must be j.source (same instance)."""
    from .enriched import compose_functors

    if i.target is not j.source:
        raise CategoryMismatch("infomorphisms are not composable")
    return Infomorphism(
        i.source,
        j.target,
        compose_functors(j.F, i.F),
        compose_functors(i.G, j.G),
    )


def membership_distributor(A: QCategory, P: PresheafCategory) -> QDistributor:
    """The evaluation distributor A -/-> PA, (x, mu) -> mu(x).

    This is the graph of the Yoneda embedding.
    """
    if P.base is not A or P.variance != "contra":
        raise CategoryMismatch("need the contravariant weight category of A")
    matrix = [
        [P.weight_at(i).weights[x] for i in range(len(P))] for x in range(len(A))
    ]
    return QDistributor(A, P, matrix)


def yoneda_infomorphism(
    F: QFunctor, PA: PresheafCategory, PB: PresheafCategory
) -> Infomorphism:
    """Every functor induces an infomorphism between the evaluation
    distributors of its endpoints, with inverse image as the backward leg."""
    phi = membership_distributor(F.dom, PA)
    psi = membership_distributor(F.cod, PB)
    G = image_functor(F, "la", PB, PA)
    return infomorphism(phi, psi, F, G)
