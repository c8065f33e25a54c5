"""Two adjunctions induced by a distributor, and their fixed-point lattices.

The contravariant adjunction pairs presheaves on the source with
copresheaves on the target; its fixed points form the concept lattice in
the polarity sense, and for the identity distributor the MacNeille
completion.  The covariant adjunction pairs presheaves on the source with
presheaves on the target; its fixed points form the concept lattice in the
property-oriented sense.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .completion import (
    Absent,
    is_absent,
    is_complete,
    join_tensor_closure,
    meet_cotensor_closure,
    sup_inf,
    weighted_colimit_limit,
)
from .distributor import (
    Copresheaf,
    Presheaf,
    QDistributor,
    compose_distributors,
    default_cap,
    direct_image,
    enumerate_presheaves,
    inverse_image,
    presheaf_hom,
    copresheaf_hom,
    top_presheaf,
    validate_copresheaf,
    validate_presheaf,
)
from .enriched import (
    QCategory,
    QFunctor,
    identity_functor,
    objects_isomorphic,
    underlying_preorder,
    validate_functor,
)
from .errors import (
    CategoryMismatch,
    InternalCheckError,
    StructureError,
)
from .quantaloid import Arrow, GirardReport


def _column(phi: QDistributor, y: int) -> Presheaf:
    """phi(-, y) as a presheaf on the source, typed by ty."""
    return Presheaf(
        phi.dom,
        phi.cod.types[y],
        tuple(phi.matrix[x][y] for x in range(len(phi.dom))),
    )


def _row(phi: QDistributor, x: int) -> Copresheaf:
    """phi(x, -) as a copresheaf on the target, typed by tx."""
    return Copresheaf(phi.cod, phi.dom.types[x], tuple(phi.matrix[x]))


def isbell_transform(phi: QDistributor, direction: str, w):
    """The contravariant Galois pair of a distributor.

    'up' sends a presheaf on the source to the copresheaf of its upper
    bounds relative to phi; 'down' sends a copresheaf on the target to the
    presheaf of lower bounds.  The pair is adjoint: hom(up(mu), lam) in the
    covariant weight category equals hom(mu, down(lam)) in the
    contravariant one.
    """
    Q = phi.Q
    A, B = phi.dom, phi.cod
    if direction == "up":
        if not isinstance(w, Presheaf) or w.base is not A:
            raise CategoryMismatch("'up' needs a presheaf on the source category")
        weights = tuple(
            Q.meet(
                w.type_idx,
                B.types[y],
                [
                    Q.residual("left", phi.arrow(x, y), w.arrow(x))
                    for x in range(len(A))
                ],
            ).idx
            for y in range(len(B))
        )
        return Copresheaf(B, w.type_idx, weights)
    if direction == "down":
        if not isinstance(w, Copresheaf) or w.base is not B:
            raise CategoryMismatch("'down' needs a copresheaf on the target category")
        weights = tuple(
            Q.meet(
                A.types[x],
                w.type_idx,
                [
                    Q.residual("right", w.arrow(y), phi.arrow(x, y))
                    for y in range(len(B))
                ],
            ).idx
            for x in range(len(A))
        )
        return Presheaf(A, w.type_idx, weights)
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def kan_transform(phi: QDistributor, kind: str, w):
    """The four covariant lifting/extension operators of a distributor.

    'star': presheaf on the target -> presheaf on the source, by
    composition; 'lower': presheaf on the source -> presheaf on the target,
    its right adjoint, by left residuation; 'dag': copresheaf on the source
    -> copresheaf on the target, by composition; 'lower_dag': copresheaf on
    the target -> copresheaf on the source, its left adjoint, by right
    residuation.
    """
    Q = phi.Q
    A, B = phi.dom, phi.cod
    if kind == "star":
        if not isinstance(w, Presheaf) or w.base is not B:
            raise CategoryMismatch("'star' needs a presheaf on the target category")
        weights = tuple(
            Q.join(
                A.types[x],
                w.type_idx,
                [Q.compose(w.arrow(y), phi.arrow(x, y)) for y in range(len(B))],
            ).idx
            for x in range(len(A))
        )
        return Presheaf(A, w.type_idx, weights)
    if kind == "lower":
        if not isinstance(w, Presheaf) or w.base is not A:
            raise CategoryMismatch("'lower' needs a presheaf on the source category")
        weights = tuple(
            Q.meet(
                B.types[y],
                w.type_idx,
                [
                    Q.residual("left", w.arrow(x), phi.arrow(x, y))
                    for x in range(len(A))
                ],
            ).idx
            for y in range(len(B))
        )
        return Presheaf(B, w.type_idx, weights)
    if kind == "dag":
        if not isinstance(w, Copresheaf) or w.base is not A:
            raise CategoryMismatch("'dag' needs a copresheaf on the source category")
        weights = tuple(
            Q.join(
                w.type_idx,
                B.types[y],
                [Q.compose(phi.arrow(x, y), w.arrow(x)) for x in range(len(A))],
            ).idx
            for y in range(len(B))
        )
        return Copresheaf(B, w.type_idx, weights)
    if kind == "lower_dag":
        if not isinstance(w, Copresheaf) or w.base is not B:
            raise CategoryMismatch("'lower_dag' needs a copresheaf on the target category")
        weights = tuple(
            Q.meet(
                w.type_idx,
                A.types[x],
                [
                    Q.residual("right", phi.arrow(x, y), w.arrow(y))
                    for y in range(len(B))
                ],
            ).idx
            for x in range(len(A))
        )
        return Copresheaf(A, w.type_idx, weights)
    raise ValueError(
        f"kind must be 'star', 'lower', 'dag' or 'lower_dag', got {kind!r}"
    )


class ConceptPair(NamedTuple):
    """A fixed pair of the adjunction of a distributor.

    For the contravariant kind, `extent` is a presheaf on the source and
    `intent` a copresheaf on the target; for the covariant kind both are
    presheaves (source and target respectively).
    """

    extent: Presheaf
    intent: object


class ConceptLattice(QCategory):
    """Fixed pairs of a distributor's adjunction, as a complete category.

    Concepts are sorted by (type, extent weights) and labelled c0, c1, ...;
    the hom between concepts is computed on the extent side and
    cross-checked against the intent side.
    """

    def __init__(
        self,
        source: QDistributor,
        kind: str,
        pairs: Sequence[ConceptPair],
        provenance: Sequence[str],
    ):
        order = sorted(
            range(len(pairs)),
            key=lambda i: (pairs[i].extent.type_idx, pairs[i].extent.weights),
        )
        self.kind = kind
        self.source = source
        self.pairs = tuple(pairs[i] for i in order)
        self.provenance = tuple(provenance[i] for i in order)
        n = len(self.pairs)
        hom = [[0] * n for _ in range(n)]
        intent_hom = copresheaf_hom if kind == "isbell" else presheaf_hom
        for i in range(n):
            for j in range(n):
                a = presheaf_hom(self.pairs[i].extent, self.pairs[j].extent)
                b = intent_hom(self.pairs[i].intent, self.pairs[j].intent)
                if a != b:
                    raise InternalCheckError(
                        "extent-side and intent-side homs disagree"
                    )
                hom[i][j] = a.idx
        super().__init__(
            source.Q,
            [f"c{i}" for i in range(n)],
            [p.extent.type_idx for p in self.pairs],
            hom,
        )
        self._by_extent = {
            (p.extent.type_idx,) + p.extent.weights: i for i, p in enumerate(self.pairs)
        }
        self._by_intent = {
            (p.intent.type_idx,) + p.intent.weights: i for i, p in enumerate(self.pairs)
        }

    def concept(self, i: int) -> ConceptPair:
        return self.pairs[i]

    def index_by_extent(self, mu: Presheaf) -> int:
        try:
            return self._by_extent[(mu.type_idx,) + mu.weights]
        except KeyError:
            raise InternalCheckError("weight is not the extent of any concept") from None

    def index_by_intent(self, lam) -> int:
        try:
            return self._by_intent[(lam.type_idx,) + lam.weights]
        except KeyError:
            raise InternalCheckError("weight is not the intent of any concept") from None

    def per_type_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for p in self.pairs:
            label = self.Q.objects[p.extent.type_idx]
            counts[label] = counts.get(label, 0) + 1
        return counts


def _isbell_fixed(phi: QDistributor, cap: int | None, algorithm: str):
    A, B = phi.dom, phi.cod
    if algorithm == "brute":
        fixed = []
        for mu in enumerate_presheaves(A, "contra", cap):
            if isbell_transform(phi, "down", isbell_transform(phi, "up", mu)) == mu:
                fixed.append(mu)
        return fixed, ["fixed-point-scan"] * len(fixed)
    if algorithm == "generated":
        seeds = [_column(phi, y) for y in range(len(B))]
        fixed = meet_cotensor_closure(A, seeds)
        return fixed, [_describe_meet_generator(phi, mu) for mu in fixed]
    raise ValueError(f"algorithm must be 'brute' or 'generated', got {algorithm!r}")


def _kan_fixed(phi: QDistributor, cap: int | None, algorithm: str):
    A, B = phi.dom, phi.cod
    if algorithm == "brute":
        fixed = []
        for mu in enumerate_presheaves(A, "contra", cap):
            if kan_transform(phi, "star", kan_transform(phi, "lower", mu)) == mu:
                fixed.append(mu)
        return fixed, ["fixed-point-scan"] * len(fixed)
    if algorithm == "generated":
        seeds = [_column(phi, y) for y in range(len(B))]
        fixed = join_tensor_closure(A, seeds)
        return fixed, [_describe_join_generator(phi, mu) for mu in fixed]
    raise ValueError(f"algorithm must be 'brute' or 'generated', got {algorithm!r}")


def _describe_meet_generator(phi: QDistributor, mu: Presheaf) -> str:
    from .completion import cotensor_weight

    A, B, Q = phi.dom, phi.cod, phi.Q
    if mu == top_presheaf(A, mu.type_idx):
        return "empty-meet"
    for y in range(len(B)):
        col = _column(phi, y)
        for g_idx in range(Q.homs[(mu.type_idx, col.type_idx)].n):
            g = Arrow(mu.type_idx, col.type_idx, g_idx)
            if cotensor_weight(g, col) == mu:
                return f"cotensor[{Q.arrow_label(g)}]column[{B.labels[y]}]"
    return "meet-of-generators"


def _describe_join_generator(phi: QDistributor, mu: Presheaf) -> str:
    from .completion import tensor_weight
    from .distributor import bottom_presheaf

    A, B, Q = phi.dom, phi.cod, phi.Q
    if mu == bottom_presheaf(A, mu.type_idx):
        return "empty-join"
    for y in range(len(B)):
        col = _column(phi, y)
        for g_idx in range(Q.homs[(col.type_idx, mu.type_idx)].n):
            g = Arrow(col.type_idx, mu.type_idx, g_idx)
            if tensor_weight(g, col) == mu:
                return f"tensor[{Q.arrow_label(g)}]column[{B.labels[y]}]"
    return "join-of-generators"


def concept_lattice(
    phi: QDistributor,
    kind: str,
    algorithm: str = "generated",
    cap: int | None = None,
) -> ConceptLattice:
    """All fixed pairs of the chosen adjunction, as a complete category.

    kind='isbell' uses the contravariant Galois adjunction (polarity-style
    concepts); kind='kan' uses the covariant extension/lifting adjunction
    (property-oriented concepts).  algorithm='brute' filters every weight
    in the capped enumeration; 'generated' closes the distributor columns
    under the operations that fixed points are stable under, which avoids
    enumerating the weight space.
    """
    if kind == "isbell":
        fixed, provenance = _isbell_fixed(phi, cap, algorithm)
        pairs = [ConceptPair(mu, isbell_transform(phi, "up", mu)) for mu in fixed]
        for mu, pair in zip(fixed, pairs):
            if isbell_transform(phi, "down", pair.intent) != mu:
                raise InternalCheckError("generated weight is not a fixed point")
    elif kind == "kan":
        fixed, provenance = _kan_fixed(phi, cap, algorithm)
        pairs = [ConceptPair(mu, kan_transform(phi, "lower", mu)) for mu in fixed]
        for mu, pair in zip(fixed, pairs):
            if kan_transform(phi, "star", pair.intent) != mu:
                raise InternalCheckError("generated weight is not a fixed point")
    else:
        raise ValueError(f"kind must be 'isbell' or 'kan', got {kind!r}")
    return ConceptLattice(phi, kind, pairs, provenance)


def macneille_completion(
    A: QCategory, algorithm: str = "generated", cap: int | None = None
) -> tuple[ConceptLattice, QFunctor]:
    """The two-sided cut completion of a category and its embedding.

    Cuts are the fixed pairs of the identity distributor's contravariant
    adjunction; the embedding sends an object to its represented cut and is
    fully faithful, preserving all sups and infs that already exist.
    """
    from .distributor import identity_distributor, yoneda_weight

    ident = identity_distributor(A)
    lattice = concept_lattice(ident, "isbell", algorithm, cap)
    mapping = [lattice.index_by_extent(yoneda_weight(A, x)) for x in range(len(A))]
    embedding = QFunctor(A, lattice, mapping)
    report, fully_faithful = validate_functor(embedding)
    if report or not fully_faithful:
        raise InternalCheckError("cut embedding is not fully faithful")
    return lattice, embedding


# ---------------------------------------------------------------------------
# Duality over a Girard quantaloid
# ---------------------------------------------------------------------------


def negate_presheaf(G: GirardReport, mu: Presheaf) -> Copresheaf:
    """Pointwise negation turns a presheaf into a copresheaf of the same type."""
    return Copresheaf(
        mu.base, mu.type_idx, tuple(G.negate(mu.arrow(x)).idx for x in range(len(mu.base)))
    )


def negate_copresheaf(G: GirardReport, lam: Copresheaf) -> Presheaf:
    return Presheaf(
        lam.base,
        lam.type_idx,
        tuple(G.negate(lam.arrow(x)).idx for x in range(len(lam.base))),
    )


def negate_distributor(G: GirardReport, phi: QDistributor) -> QDistributor:
    """The dual distributor running the other way: (y,x) -> not phi(x,y)."""
    A, B = phi.dom, phi.cod
    matrix = [
        [G.negate(phi.arrow(x, y)).idx for x in range(len(A))] for y in range(len(B))
    ]
    return QDistributor(B, A, matrix)


def girard_duality_check(
    G: GirardReport, phi: QDistributor, cap: int | None = None
):
    """Verify that the covariant adjunction is the contravariant one of the
    dual distributor, and exhibit the lattice isomorphism.

    Checks, for every presheaf lam on the target: star(lam) equals the
    negation of up_{dual}(lam); and for every presheaf mu on the source:
    lower(mu) equals down_{dual} of the negation of mu.  Then matches each
    covariant concept (mu, lam) with the contravariant concept (lam, not mu)
    of the dual and compares homs.  Returns (ok, pairing).
    """
    neg = negate_distributor(G, phi)
    for lam in enumerate_presheaves(phi.cod, "contra", cap):
        via_dual = negate_copresheaf(G, isbell_transform(neg, "up", lam))
        if kan_transform(phi, "star", lam) != via_dual:
            return False, (lam, "star")
    for mu in enumerate_presheaves(phi.dom, "contra", cap):
        via_dual = isbell_transform(neg, "down", negate_presheaf(G, mu))
        if kan_transform(phi, "lower", mu) != via_dual:
            return False, (mu, "lower")
    K = concept_lattice(phi, "kan", "generated", cap)
    M = concept_lattice(neg, "isbell", "generated", cap)
    if len(K) != len(M):
        return False, (len(K), len(M))
    pairing = []
    for i in range(len(K)):
        mu, lam = K.concept(i)
        j = M.index_by_extent(lam)
        if M.concept(j).intent != negate_presheaf(G, mu):
            return False, (i, j)
        pairing.append((i, j))
    for i, j in pairing:
        for k, l in pairing:
            if K.hom_idx[i][k] != M.hom_idx[j][l]:
                return False, ((i, k), (j, l))
    return True, pairing


# ---------------------------------------------------------------------------
# Functoriality of the two lattices in infomorphisms
# ---------------------------------------------------------------------------


def concept_functor_image(
    info,
    kind: str,
    source_lattice: ConceptLattice | None = None,
    target_lattice: ConceptLattice | None = None,
    cap: int | None = None,
) -> tuple[QFunctor, QFunctor]:
    """The adjoint pair of functors a concept lattice assigns to an
    infomorphism.

    kind='M' (contravariant lattices, covariant assignment): the left
    functor runs source lattice -> target lattice by closing the direct
    image of the extent, the right functor restricts extents backwards.
    kind='K' (covariant lattices, contravariant assignment): the left
    functor runs target lattice -> source lattice by closing the direct
    image of the intent along the backward functor, the right functor
    restricts intents.
    """
    phi, psi, F, Gf = info
    if kind == "M":
        if source_lattice is None:
            source_lattice = concept_lattice(phi, "isbell", "generated", cap)
        if target_lattice is None:
            target_lattice = concept_lattice(psi, "isbell", "generated", cap)
        if source_lattice.source != phi or target_lattice.source != psi:
            raise CategoryMismatch("lattices do not belong to the infomorphism")
        left_map = []
        for i in range(len(source_lattice)):
            nu = direct_image(F, source_lattice.concept(i).extent)
            closed = isbell_transform(psi, "down", isbell_transform(psi, "up", nu))
            left_map.append(target_lattice.index_by_extent(closed))
        right_map = [
            source_lattice.index_by_extent(
                inverse_image(F, target_lattice.concept(j).extent)
            )
            for j in range(len(target_lattice))
        ]
        left = QFunctor(source_lattice, target_lattice, left_map)
        right = QFunctor(target_lattice, source_lattice, right_map)
        return left, right
    if kind == "K":
        if source_lattice is None:
            source_lattice = concept_lattice(phi, "kan", "generated", cap)
        if target_lattice is None:
            target_lattice = concept_lattice(psi, "kan", "generated", cap)
        if source_lattice.source != phi or target_lattice.source != psi:
            raise CategoryMismatch("lattices do not belong to the infomorphism")
        left_map = []
        for j in range(len(target_lattice)):
            lam = direct_image(Gf, target_lattice.concept(j).intent)
            closed = kan_transform(phi, "lower", kan_transform(phi, "star", lam))
            left_map.append(source_lattice.index_by_intent(closed))
        right_map = [
            target_lattice.index_by_intent(
                inverse_image(Gf, source_lattice.concept(i).intent)
            )
            for i in range(len(source_lattice))
        ]
        left = QFunctor(target_lattice, source_lattice, left_map)
        right = QFunctor(source_lattice, target_lattice, right_map)
        return left, right
    raise ValueError(f"kind must be 'M' or 'K', got {kind!r}")


# ---------------------------------------------------------------------------
# Density and the canonical factorization through the concept lattice
# ---------------------------------------------------------------------------


def density_check(F: QFunctor, direction: str, cap: int | None = None):
    """Whether every object of the target is a weighted (co)limit of F.

    direction='sup': tests each x against the canonical weight a -> X(Fa,x);
    an object is a colimit for some weight iff it is for this one.
    direction='inf' dually uses a -> X(x,Fa) and limits.  Returns
    (True, {label: weight}) or (False, [missing labels]).
    """
    A, X = F.dom, F.cod
    witnesses = {}
    missing = []
    for x in range(len(X)):
        if direction == "sup":
            w = Presheaf(
                A, X.types[x], tuple(X.hom_idx[F(a)][x] for a in range(len(A)))
            )
            if validate_presheaf(w):
                raise InternalCheckError("canonical weight is not a presheaf")
            value = weighted_colimit_limit(F, "colim", w)
        elif direction == "inf":
            w = Copresheaf(
                A, X.types[x], tuple(X.hom_idx[x][F(a)] for a in range(len(A)))
            )
            if validate_copresheaf(w):
                raise InternalCheckError("canonical weight is not a copresheaf")
            value = weighted_colimit_limit(F, "lim", w)
        else:
            raise ValueError(f"direction must be 'sup' or 'inf', got {direction!r}")
        if is_absent(value) or not objects_isomorphic(X, value, x):
            missing.append(X.labels[x])
        else:
            witnesses[X.labels[x]] = w
    if missing:
        return False, missing
    return True, witnesses


def dense_factorization(
    phi: QDistributor,
    lattice: ConceptLattice | None = None,
    cap: int | None = None,
) -> tuple[QFunctor, QFunctor, ConceptLattice]:
    """Factor a distributor through its contravariant concept lattice.

    The source maps in by closing rows, the target by columns; the hom of
    the lattice between the two images recovers the distributor exactly
    (checked), the source leg is colimit-dense and the target leg is
    limit-dense (checkable with density_check).
    """
    if lattice is None:
        lattice = concept_lattice(phi, "isbell", "generated", cap)
    elif lattice.source != phi or lattice.kind != "isbell":
        raise CategoryMismatch("lattice does not belong to the distributor")
    A, B = phi.dom, phi.cod
    F = QFunctor(
        A,
        lattice,
        [
            lattice.index_by_extent(isbell_transform(phi, "down", _row(phi, a)))
            for a in range(len(A))
        ],
    )
    Gf = QFunctor(
        B,
        lattice,
        [lattice.index_by_extent(_column(phi, b)) for b in range(len(B))],
    )
    for rep, name in ((validate_functor(F)[0], "source"), (validate_functor(Gf)[0], "target")):
        if rep:
            raise InternalCheckError(f"{name} leg of the factorization is not a functor")
    for a in range(len(A)):
        for b in range(len(B)):
            if lattice.hom_idx[F(a)][Gf(b)] != phi.matrix[a][b]:
                raise InternalCheckError(
                    "factorization does not reproduce the distributor"
                )
    return F, Gf, lattice


def state_property_system_check(
    A: QCategory, B: QCategory, phi: QDistributor, cap: int | None = None
):
    """Whether (A, B, phi) relates states to properties in the closed sense.

    Requires B skeletal and complete; every covariant weight's infimum in B
    must evaluate under phi to the weight's lower bound transform, and the
    hom of B must equal the hom of columns in the weight category of A.
    Returns (True, None) or (False, witness).
    """
    if phi.dom is not A or phi.cod is not B:
        raise CategoryMismatch("distributor endpoints do not match")
    _, skeletal = underlying_preorder(B)
    if not skeletal:
        return False, "target category is not skeletal"
    complete, witness = is_complete(B, cap)
    if not complete:
        return False, ("incomplete", witness)
    for lam in enumerate_presheaves(B, "co", cap):
        b = sup_inf(B, "inf", lam)
        low = isbell_transform(phi, "down", lam)
        for x in range(len(A)):
            if phi.matrix[x][b] != low.weights[x]:
                return False, ("evaluation", lam, A.labels[x])
    for y in range(len(B)):
        for yp in range(len(B)):
            if B.hom_idx[y][yp] != presheaf_hom(_column(phi, y), _column(phi, yp)).idx:
                return False, ("hom", B.labels[y], B.labels[yp])
    return True, None
