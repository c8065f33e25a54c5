"""Registered law suites with deterministic instance generators.

Every suite draws its instances from random.Random seeded with the pair
(seed, law id), so a fixed seed reproduces byte-identical reports.  The
`medium` profile uses the reference instance counts; `small` is a quick
subset with the same coverage shape.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import NamedTuple

from .adjunction import (
    concept_lattice,
    dense_factorization,
    density_check,
    girard_duality_check,
    isbell_transform,
    kan_transform,
    macneille_completion,
    negate_distributor,
    state_property_system_check,
)
from .completion import (
    ClosureOperator,
    ClosureSpace,
    closure_from_system,
    closure_to_context,
    identity_closure,
    is_complete,
    meet_cotensor_closure,
    trivial_closure,
    validate_closure_space,
)
from .distributor import (
    Copresheaf,
    Presheaf,
    QDistributor,
    codirect_image,
    coinverse_image,
    compose_infomorphisms,
    direct_image,
    dist_adjoint_check,
    enumerate_presheaves,
    graph_cograph,
    identity_infomorphism,
    Infomorphism,
    inverse_image,
    presheaf_category,
    presheaf_hom,
    copresheaf_hom,
    presheaf_space_bound,
    validate_distributor,
    validate_infomorphism,
    weight_leq,
    yoneda_weight,
    coyoneda_weight,
)
from .adjunction import concept_functor_image
from .enriched import (
    QCategory,
    QFunctor,
    QTypedSet,
    compose_functors,
    discrete_category,
    functor_adjoint_check,
    functor_is_isomorphism,
    identity_functor,
    validate_category,
    validate_functor,
)
from .errors import NotDivisible
from .quantaloid import (
    Arrow,
    Quantaloid,
    build_boolean,
    build_boolean_algebra_quantale,
    build_lukasiewicz_chain,
    build_nilpotent_minimum_chain,
    check_divisible,
    girard_structure,
    quantaloid_from_divisible_quantale,
    validate_quantale,
    validate_quantaloid,
)


class Profile(NamedTuple):
    name: str
    categories: int
    triples: int
    functors: int
    crisp_limit: int
    fuzzy_contexts: int
    factorizations: int
    girard_contexts: int
    infomorphism_pairs: int
    macneille_categories: int
    closure_spaces: int


PROFILES = {
    "small": Profile("small", 4, 20, 8, 2, 6, 4, 10, 6, 4, 6),
    "medium": Profile("medium", 20, 200, 50, 3, 30, 20, 50, 30, 20, 20),
}


class LawResult(NamedTuple):
    law_id: str
    instances: int
    passed: bool
    witness: str | None


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def fixture_two() -> Quantaloid:
    return build_boolean()


@lru_cache(maxsize=None)
def fixture_ql(n: int) -> Quantaloid:
    return quantaloid_from_divisible_quantale(build_lukasiewicz_chain(n))


@lru_cache(maxsize=None)
def fixture_b4() -> Quantaloid:
    return quantaloid_from_divisible_quantale(build_boolean_algebra_quantale(2))


@lru_cache(maxsize=None)
def fixture_girard(which: str):
    Q = fixture_two() if which == "two" else fixture_b4()
    family = tuple(Q.homs[(i, i)].bottom for i in range(len(Q.objects)))
    return girard_structure(Q, family)


@lru_cache(maxsize=None)
def fixture_ctx1() -> QDistributor:
    Q = fixture_two()
    A = discrete_category(Q, QTypedSet(("1", "2"), (0, 0)))
    B = discrete_category(Q, QTypedSet(("a", "b"), (0, 0)))
    return QDistributor(A, B, [[1, 1], [0, 1]])


@lru_cache(maxsize=None)
def fixture_fuzzy_ctx() -> QDistributor:
    """Small graded context over the three-element chain."""
    Q = fixture_ql(3)
    one = Q.object_index("1")
    half = Q.object_index("1/2")
    A = discrete_category(Q, QTypedSet(("x", "y"), (one, half)))
    B = discrete_category(Q, QTypedSet(("u", "v"), (half, one)))
    matrix = [
        [
            Q.arrow_from_element(A.types[i], B.types[j], deg).idx
            for j, deg in enumerate(row)
        ]
        for i, row in enumerate(
            [[Q.quantale.labels.index("1/2"), Q.quantale.labels.index("1")],
             [Q.quantale.labels.index("0"), Q.quantale.labels.index("1/2")]]
        )
    ]
    return QDistributor(A, B, matrix)


def mutated_ql3() -> Quantaloid:
    """The three-chain quantaloid with one corrupted composition entry."""
    Q = fixture_ql(3)
    one = Q.object_index("1")
    top = Q.homs[(one, one)].n - 1
    return Q.with_patched_compose((one, one, one), top, top, 0)


# ---------------------------------------------------------------------------
# Deterministic instance generators
# ---------------------------------------------------------------------------


def rand_category(
    rng: random.Random, Q: Quantaloid, max_objects: int = 3, min_objects: int = 0
) -> QCategory:
    n = rng.randint(min_objects, max_objects)
    types = [rng.randrange(len(Q.objects)) for _ in range(n)]
    hom = [
        [rng.randrange(Q.homs[(types[i], types[j])].n) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        hom[i][i] = Q.join(
            types[i],
            types[i],
            [Arrow(types[i], types[i], hom[i][i]), Q.unit(types[i])],
        ).idx
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    c = Q.compose(
                        Arrow(types[j], types[k], hom[j][k]),
                        Arrow(types[i], types[j], hom[i][j]),
                    )
                    m = Q.join(types[i], types[k], [Arrow(types[i], types[k], hom[i][k]), c]).idx
                    if m != hom[i][k]:
                        hom[i][k] = m
                        changed = True
    return QCategory(Q, [f"x{i}" for i in range(n)], types, hom)


def rand_presheaf(rng: random.Random, A: QCategory, type_idx: int | None = None) -> Presheaf:
    Q = A.Q
    t = rng.randrange(len(Q.objects)) if type_idx is None else type_idx
    weights = [rng.randrange(Q.homs[(A.types[x], t)].n) for x in range(len(A))]
    changed = True
    while changed:
        changed = False
        for x in range(len(A)):
            for xp in range(len(A)):
                c = Q.compose(Arrow(A.types[xp], t, weights[xp]), A.hom(x, xp))
                m = Q.join(A.types[x], t, [Arrow(A.types[x], t, weights[x]), c]).idx
                if m != weights[x]:
                    weights[x] = m
                    changed = True
    return Presheaf(A, t, tuple(weights))


def rand_copresheaf(rng: random.Random, A: QCategory, type_idx: int | None = None) -> Copresheaf:
    Q = A.Q
    t = rng.randrange(len(Q.objects)) if type_idx is None else type_idx
    weights = [rng.randrange(Q.homs[(t, A.types[x])].n) for x in range(len(A))]
    changed = True
    while changed:
        changed = False
        for x in range(len(A)):
            for xp in range(len(A)):
                c = Q.compose(A.hom(x, xp), Arrow(t, A.types[x], weights[x]))
                m = Q.join(t, A.types[xp], [Arrow(t, A.types[xp], weights[xp]), c]).idx
                if m != weights[xp]:
                    weights[xp] = m
                    changed = True
    return Copresheaf(A, t, tuple(weights))


def rand_distributor(rng: random.Random, A: QCategory, B: QCategory) -> QDistributor:
    Q = A.Q
    matrix = [
        [rng.randrange(Q.homs[(A.types[x], B.types[y])].n) for y in range(len(B))]
        for x in range(len(A))
    ]

    def arrow(x, y):
        return Arrow(A.types[x], B.types[y], matrix[x][y])

    changed = True
    while changed:
        changed = False
        for x in range(len(A)):
            for y in range(len(B)):
                acc = arrow(x, y)
                for yp in range(len(B)):
                    acc = Q.join(
                        A.types[x], B.types[y], [acc, Q.compose(B.hom(yp, y), arrow(x, yp))]
                    )
                for xp in range(len(A)):
                    acc = Q.join(
                        A.types[x], B.types[y], [acc, Q.compose(arrow(xp, y), A.hom(x, xp))]
                    )
                if acc.idx != matrix[x][y]:
                    matrix[x][y] = acc.idx
                    changed = True
    return QDistributor(A, B, matrix)


def rand_functor_into(rng: random.Random, B: QCategory, n: int, prefix: str = "a") -> QFunctor:
    """A random functor with target B, synthesizing a valid source."""
    Q = B.Q
    if n > 0 and len(B) == 0:
        raise ValueError("cannot map a nonempty category into an empty one")
    mapping = [rng.randrange(len(B)) for _ in range(n)]
    types = [B.types[m] for m in mapping]
    hom = []
    for i in range(n):
        row = []
        for j in range(n):
            lat = Q.homs[(types[i], types[j])]
            bound = B.hom_idx[mapping[i]][mapping[j]]
            row.append(rng.choice([v for v in range(lat.n) if lat.leq(v, bound)]))
        hom.append(row)
    for i in range(n):
        hom[i][i] = Q.join(
            types[i], types[i], [Arrow(types[i], types[i], hom[i][i]), Q.unit(types[i])]
        ).idx
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    c = Q.compose(
                        Arrow(types[j], types[k], hom[j][k]),
                        Arrow(types[i], types[j], hom[i][j]),
                    )
                    m = Q.join(types[i], types[k], [Arrow(types[i], types[k], hom[i][k]), c]).idx
                    if m != hom[i][k]:
                        hom[i][k] = m
                        changed = True
    A = QCategory(Q, [f"{prefix}{i}" for i in range(n)], types, hom)
    return QFunctor(A, B, mapping)


def rand_infomorphism_pair(
    rng: random.Random, Q: Quantaloid, max_objects: int = 2
) -> tuple[Infomorphism, Infomorphism]:
    """Two composable infomorphisms built by restricting one distributor.

    All three contexts are restrictions of a single distributor theta along
    chains of functors on both sides, which makes every exchange identity
    hold by construction.
    """
    A2 = rand_category(rng, Q, max_objects, 1)
    B0 = rand_category(rng, Q, max_objects, 1)
    theta = rand_distributor(rng, A2, B0)
    F1 = rand_functor_into(rng, A2, rng.randint(1, max_objects), "m")
    F0 = rand_functor_into(rng, F1.dom, rng.randint(1, max_objects), "a")
    G0 = rand_functor_into(rng, B0, rng.randint(1, max_objects), "n")
    G1 = rand_functor_into(rng, G0.dom, rng.randint(1, max_objects), "b")
    A0, A1 = F0.dom, F1.dom
    B1, B2 = G0.dom, G1.dom
    phi = QDistributor(
        A0,
        B0,
        [[theta.matrix[F1(F0(x))][y] for y in range(len(B0))] for x in range(len(A0))],
    )
    psi = QDistributor(
        A1,
        B1,
        [[theta.matrix[F1(x)][G0(y)] for y in range(len(B1))] for x in range(len(A1))],
    )
    chi = QDistributor(
        A2,
        B2,
        [[theta.matrix[x][G0(G1(y))] for y in range(len(B2))] for x in range(len(A2))],
    )
    i1 = Infomorphism(phi, psi, F0, G0)
    i2 = Infomorphism(psi, chi, F1, G1)
    return i1, i2


def rand_closure_space(rng: random.Random, A: QCategory, PA) -> ClosureSpace:
    kind = rng.choice(("identity", "trivial", "induced", "system"))
    if kind == "identity":
        op = identity_closure(PA)
    elif kind == "trivial":
        op = trivial_closure(PA)
    elif kind == "induced":
        B = rand_category(rng, A.Q, 2, 1)
        phi = rand_distributor(rng, A, B)
        op = ClosureOperator(
            PA,
            [
                PA.index_of(
                    isbell_transform(
                        phi, "down", isbell_transform(phi, "up", PA.weight_at(i))
                    )
                )
                for i in range(len(PA))
            ],
        )
    else:
        seeds = [rand_presheaf(rng, A) for _ in range(rng.randint(0, 3))]
        closed = meet_cotensor_closure(A, seeds)
        op = closure_from_system(PA, [PA.index_of(p) for p in closed])
    return ClosureSpace(A, op)


# ---------------------------------------------------------------------------
# Law suites
# ---------------------------------------------------------------------------


def _residuation_witness(Q: Quantaloid) -> str | None:
    objs = range(len(Q.objects))
    for i, j, k in itertools.product(objs, objs, objs):
        for f_idx in range(Q.homs[(i, j)].n):
            f = Arrow(i, j, f_idx)
            for g_idx in range(Q.homs[(j, k)].n):
                g = Arrow(j, k, g_idx)
                for h_idx in range(Q.homs[(i, k)].n):
                    h = Arrow(i, k, h_idx)
                    lhs = Q.leq(Q.compose(g, f), h)
                    via_left = Q.leq(g, Q.residual("left", h, f))
                    via_right = Q.leq(f, Q.residual("right", g, h))
                    if not (lhs == via_left == via_right):
                        return (
                            f"f={Q.arrow_label(f)} g={Q.arrow_label(g)} "
                            f"h={Q.arrow_label(h)} compose-le={lhs} "
                            f"left-le={via_left} right-le={via_right}"
                        )
    return None


def law_residuation(rng, profile: Profile, mutate: str | None = None) -> LawResult:
    fixtures = [
        ("two", fixture_two()),
        ("ql3", fixture_ql(3)),
        ("ql5", fixture_ql(5)),
        ("b4", fixture_b4()),
    ]
    if mutate == "compose":
        fixtures.append(("ql3-mutant", mutated_ql3()))
    for name, Q in fixtures:
        witness = _residuation_witness(Q)
        if witness is not None:
            return LawResult(
                "residuation-adjointness", len(fixtures), False, f"{name}: {witness}"
            )
    return LawResult("residuation-adjointness", len(fixtures), True, None)


def law_divisible(rng, profile: Profile) -> LawResult:
    law_id = "divisible-builder"
    instances = 0
    for n in range(2, 7):
        q = build_lukasiewicz_chain(n)
        instances += 1
        if validate_quantale(q):
            return LawResult(law_id, instances, False, f"lukasiewicz-{n}: quantale laws")
        ok, _ = check_divisible(q)
        if not ok:
            return LawResult(law_id, instances, False, f"lukasiewicz-{n}: not divisible")
        report = validate_quantaloid(quantaloid_from_divisible_quantale(q))
        if report:
            return LawResult(law_id, instances, False, f"lukasiewicz-{n}: {report[0]}")
    for atoms in range(0, 4):
        q = build_boolean_algebra_quantale(atoms)
        instances += 1
        if validate_quantale(q):
            return LawResult(law_id, instances, False, f"boolean-{atoms}: quantale laws")
        ok, _ = check_divisible(q)
        if not ok:
            return LawResult(law_id, instances, False, f"boolean-{atoms}: not divisible")
        report = validate_quantaloid(quantaloid_from_divisible_quantale(q))
        if report:
            return LawResult(law_id, instances, False, f"boolean-{atoms}: {report[0]}")
    nm = build_nilpotent_minimum_chain(5)
    instances += 1
    ok, witness = check_divisible(nm)
    if ok or witness != ("3/4", "1/4"):
        return LawResult(
            law_id, instances, False, f"nilpotent-minimum-5: expected witness (3/4,1/4), got {witness}"
        )
    try:
        quantaloid_from_divisible_quantale(nm)
    except NotDivisible:
        pass
    else:
        return LawResult(
            law_id, instances, False, "nilpotent-minimum-5: builder accepted a non-divisible quantale"
        )
    return LawResult(law_id, instances, True, None)


def law_yoneda(rng, profile: Profile) -> LawResult:
    law_id = "yoneda-lemma"
    count = profile.categories
    for idx in range(count):
        Q = fixture_two() if idx % 2 == 0 else fixture_ql(3)
        A = rand_category(rng, Q, 3)
        if validate_category(A):
            return LawResult(law_id, count, False, f"#{idx}: generator produced an invalid category")
        presheaves = enumerate_presheaves(A, "contra")
        copresheaves = enumerate_presheaves(A, "co")
        for a in range(len(A)):
            ya = yoneda_weight(A, a)
            ca = coyoneda_weight(A, a)
            for mu in presheaves:
                if presheaf_hom(ya, mu).idx != mu.weights[a]:
                    return LawResult(
                        law_id, count, False, f"#{idx}: reduction fails at ({A.labels[a]},{mu.weights})"
                    )
            for lam in copresheaves:
                if copresheaf_hom(lam, ca).idx != lam.weights[a]:
                    return LawResult(
                        law_id, count, False, f"#{idx}: coreduction fails at ({A.labels[a]},{lam.weights})"
                    )
            for b in range(len(A)):
                if (
                    presheaf_hom(ya, yoneda_weight(A, b)).idx != A.hom_idx[a][b]
                    or copresheaf_hom(coyoneda_weight(A, a), coyoneda_weight(A, b)).idx
                    != A.hom_idx[a][b]
                ):
                    return LawResult(
                        law_id, count, False, f"#{idx}: embedding not fully faithful at ({a},{b})"
                    )
    return LawResult(law_id, count, True, None)


def law_adjointness(rng, profile: Profile) -> LawResult:
    law_id = "isbell-kan-adjointness"
    count = profile.triples
    for idx in range(count):
        Q = fixture_two() if idx % 2 == 0 else fixture_ql(3)
        A = rand_category(rng, Q, 3)
        B = rand_category(rng, Q, 3)
        phi = rand_distributor(rng, A, B)
        mu = rand_presheaf(rng, A)
        lam = rand_copresheaf(rng, B)
        up_mu = isbell_transform(phi, "up", mu)
        down_lam = isbell_transform(phi, "down", lam)
        if copresheaf_hom(up_mu, lam) != presheaf_hom(mu, down_lam):
            return LawResult(law_id, count, False, f"#{idx}: contravariant hom equality fails")
        closed = isbell_transform(phi, "down", up_mu)
        if not weight_leq(mu, closed):
            return LawResult(law_id, count, False, f"#{idx}: contravariant unit fails")
        # Counit in the copresheaf category, whose order is reversed pointwise.
        reopened = isbell_transform(phi, "up", down_lam)
        if not weight_leq(lam, reopened):
            return LawResult(law_id, count, False, f"#{idx}: contravariant counit fails")
        nu = rand_presheaf(rng, B)
        mu2 = rand_presheaf(rng, A)
        star_nu = kan_transform(phi, "star", nu)
        lower_mu2 = kan_transform(phi, "lower", mu2)
        if presheaf_hom(star_nu, mu2) != presheaf_hom(nu, lower_mu2):
            return LawResult(law_id, count, False, f"#{idx}: covariant hom equality fails")
        if not weight_leq(nu, kan_transform(phi, "lower", star_nu)):
            return LawResult(law_id, count, False, f"#{idx}: covariant unit fails")
        if not weight_leq(kan_transform(phi, "star", lower_mu2), mu2):
            return LawResult(law_id, count, False, f"#{idx}: covariant counit fails")
    return LawResult(law_id, count, True, None)


def law_image_functors(rng, profile: Profile) -> LawResult:
    law_id = "image-functors-via-kan"
    count = profile.functors
    for idx in range(count):
        Q = fixture_two() if idx % 2 == 0 else fixture_ql(3)
        B = rand_category(rng, Q, 3, 1)
        F = rand_functor_into(rng, B, rng.randint(0, 3))
        A = F.dom
        graph, cograph = graph_cograph(F)
        if not dist_adjoint_check(graph, cograph):
            return LawResult(law_id, count, False, f"#{idx}: graph not left adjoint to cograph")
        for mu in enumerate_presheaves(A, "contra"):
            if kan_transform(cograph, "star", mu) != direct_image(F, mu):
                return LawResult(law_id, count, False, f"#{idx}: direct image mismatch")
        for lam in enumerate_presheaves(B, "contra"):
            if kan_transform(graph, "star", lam) != inverse_image(F, lam):
                return LawResult(law_id, count, False, f"#{idx}: inverse image mismatch")
        for gam in enumerate_presheaves(B, "co"):
            if kan_transform(cograph, "dag", gam) != coinverse_image(F, gam):
                return LawResult(law_id, count, False, f"#{idx}: covariant restriction mismatch")
        for nu in enumerate_presheaves(A, "co"):
            if kan_transform(graph, "dag", nu) != codirect_image(F, nu):
                return LawResult(law_id, count, False, f"#{idx}: covariant direct image mismatch")
    return LawResult(law_id, count, True, None)


def _lattice_extents(lat):
    return [(p.extent.type_idx, p.extent.weights) for p in lat.pairs]


def law_concept_enumeration(rng, profile: Profile) -> LawResult:
    law_id = "concept-enumeration-agreement"
    Q = fixture_two()
    instances = 0
    limit = profile.crisp_limit
    for m in range(limit + 1):
        for n in range(limit + 1):
            A = discrete_category(Q, QTypedSet(tuple(f"x{i}" for i in range(m)), (0,) * m))
            B = discrete_category(Q, QTypedSet(tuple(f"y{j}" for j in range(n)), (0,) * n))
            for bits in range(1 << (m * n)):
                matrix = [
                    [(bits >> (i * n + j)) & 1 for j in range(n)] for i in range(m)
                ]
                phi = QDistributor(A, B, matrix)
                instances += 1
                for kind in ("isbell", "kan"):
                    brute = concept_lattice(phi, kind, "brute")
                    generated = concept_lattice(phi, kind, "generated")
                    if _lattice_extents(brute) != _lattice_extents(generated):
                        return LawResult(
                            law_id,
                            instances,
                            False,
                            f"crisp {m}x{n} bits={bits} kind={kind}: enumerations differ",
                        )
    ctx1 = fixture_ctx1()
    instances += 1
    isbell = concept_lattice(ctx1, "isbell", "generated")
    kan = concept_lattice(ctx1, "kan", "generated")
    if [(p.extent.weights, p.intent.weights) for p in isbell.pairs] != [
        ((1, 0), (1, 1)),
        ((1, 1), (0, 1)),
    ]:
        return LawResult(law_id, instances, False, "reference context: contravariant concepts wrong")
    if [(p.extent.weights, p.intent.weights) for p in kan.pairs] != [
        ((0, 0), (0, 0)),
        ((1, 0), (1, 0)),
        ((1, 1), (1, 1)),
    ]:
        return LawResult(law_id, instances, False, "reference context: covariant concepts wrong")
    QL = fixture_ql(3)
    for idx in range(profile.fuzzy_contexts):
        m = rng.randint(1, 3)
        n = rng.randint(1, 3)
        a_types = tuple(rng.randrange(len(QL.objects)) for _ in range(m))
        b_types = tuple(rng.randrange(len(QL.objects)) for _ in range(n))
        A = discrete_category(QL, QTypedSet(tuple(f"x{i}" for i in range(m)), a_types))
        B = discrete_category(QL, QTypedSet(tuple(f"y{j}" for j in range(n)), b_types))
        matrix = [
            [rng.randrange(QL.homs[(a_types[i], b_types[j])].n) for j in range(n)]
            for i in range(m)
        ]
        phi = QDistributor(A, B, matrix)
        if validate_distributor(phi):
            return LawResult(law_id, instances, False, f"fuzzy #{idx}: invalid generator output")
        space = sum(presheaf_space_bound(A, t) for t in range(len(QL.objects)))
        if space > 10_000:
            return LawResult(law_id, instances, False, f"fuzzy #{idx}: space {space} too large")
        instances += 1
        for kind in ("isbell", "kan"):
            brute = concept_lattice(phi, kind, "brute")
            generated = concept_lattice(phi, kind, "generated")
            if _lattice_extents(brute) != _lattice_extents(generated):
                return LawResult(
                    law_id, instances, False, f"fuzzy #{idx} kind={kind}: enumerations differ"
                )
    return LawResult(law_id, instances, True, None)


def law_completeness(rng, profile: Profile) -> LawResult:
    law_id = "concept-lattice-completeness"
    Q = fixture_two()
    ctx1 = fixture_ctx1()
    fuzzy = fixture_fuzzy_ctx()
    chain = QCategory(Q, ("x", "y"), (0, 0), [[1, 1], [0, 1]])
    anti = discrete_category(Q, QTypedSet(("x", "y"), (0, 0)))
    empty = discrete_category(Q, QTypedSet((), ()))
    lattices = [
        ("ctx1-contravariant", concept_lattice(ctx1, "isbell")),
        ("ctx1-covariant", concept_lattice(ctx1, "kan")),
        ("fuzzy-contravariant", concept_lattice(fuzzy, "isbell")),
        ("fuzzy-covariant", concept_lattice(fuzzy, "kan")),
        ("cut-chain", macneille_completion(chain)[0]),
        ("cut-antichain", macneille_completion(anti)[0]),
        ("cut-empty", macneille_completion(empty)[0]),
    ]
    for name, lat in lattices:
        complete, witness = is_complete(lat)
        if not complete:
            return LawResult(law_id, len(lattices), False, f"{name}: missing (co)limit for {witness}")
    return LawResult(law_id, len(lattices), True, None)


def law_dense_factorization(rng, profile: Profile) -> LawResult:
    law_id = "dense-factorization"
    QL = fixture_ql(3)
    contexts = [("ctx1", fixture_ctx1())]
    for idx in range(profile.factorizations):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        a_types = tuple(rng.randrange(len(QL.objects)) for _ in range(m))
        b_types = tuple(rng.randrange(len(QL.objects)) for _ in range(n))
        A = discrete_category(QL, QTypedSet(tuple(f"x{i}" for i in range(m)), a_types))
        B = discrete_category(QL, QTypedSet(tuple(f"y{j}" for j in range(n)), b_types))
        matrix = [
            [rng.randrange(QL.homs[(a_types[i], b_types[j])].n) for j in range(n)]
            for i in range(m)
        ]
        contexts.append((f"fuzzy-{idx}", QDistributor(A, B, matrix)))
    for name, phi in contexts:
        F, G, lattice = dense_factorization(phi)
        ok_sup, wit_sup = density_check(F, "sup")
        if not ok_sup:
            return LawResult(law_id, len(contexts), False, f"{name}: source leg misses {wit_sup}")
        ok_inf, wit_inf = density_check(G, "inf")
        if not ok_inf:
            return LawResult(law_id, len(contexts), False, f"{name}: target leg misses {wit_inf}")
    return LawResult(law_id, len(contexts), True, None)


def law_girard(rng, profile: Profile) -> LawResult:
    law_id = "girard-duality"
    count = profile.girard_contexts
    for idx in range(count):
        which = "two" if idx % 2 == 0 else "b4"
        G = fixture_girard(which)
        Q = G.quantaloid
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        a_types = tuple(rng.randrange(len(Q.objects)) for _ in range(m))
        b_types = tuple(rng.randrange(len(Q.objects)) for _ in range(n))
        A = discrete_category(Q, QTypedSet(tuple(f"x{i}" for i in range(m)), a_types))
        B = discrete_category(Q, QTypedSet(tuple(f"y{j}" for j in range(n)), b_types))
        matrix = [
            [rng.randrange(Q.homs[(a_types[i], b_types[j])].n) for j in range(n)]
            for i in range(m)
        ]
        phi = QDistributor(A, B, matrix)
        if negate_distributor(G, negate_distributor(G, phi)).matrix != phi.matrix:
            return LawResult(law_id, count, False, f"#{idx}: negation is not involutive")
        ok, witness = girard_duality_check(G, phi)
        if not ok:
            return LawResult(law_id, count, False, f"#{idx}: {witness}")
    return LawResult(law_id, count, True, None)


def law_concept_functoriality(rng, profile: Profile) -> LawResult:
    law_id = "concept-functoriality"
    count = profile.infomorphism_pairs
    for idx in range(count):
        Q = fixture_two() if idx % 2 == 0 else fixture_ql(3)
        i1, i2 = rand_infomorphism_pair(rng, Q, 2)
        if validate_infomorphism(i1) or validate_infomorphism(i2):
            return LawResult(law_id, count, False, f"#{idx}: generator produced invalid infomorphisms")
        composite = compose_infomorphisms(i2, i1)
        for kind in ("M", "K"):
            lat_phi = concept_lattice(i1.source, "isbell" if kind == "M" else "kan")
            lat_psi = concept_lattice(i1.target, "isbell" if kind == "M" else "kan")
            lat_chi = concept_lattice(i2.target, "isbell" if kind == "M" else "kan")
            l1, r1 = concept_functor_image(i1, kind, lat_phi, lat_psi)
            l2, r2 = concept_functor_image(i2, kind, lat_psi, lat_chi)
            lc, rc = concept_functor_image(composite, kind, lat_phi, lat_chi)
            for func in (l1, r1, l2, r2, lc, rc):
                report, _ = validate_functor(func)
                if report:
                    return LawResult(law_id, count, False, f"#{idx} {kind}: image is not a functor")
            if not (functor_adjoint_check(l1, r1) and functor_adjoint_check(l2, r2)
                    and functor_adjoint_check(lc, rc)):
                return LawResult(law_id, count, False, f"#{idx} {kind}: images are not adjoint")
            if kind == "M":
                if lc != compose_functors(l2, l1) or rc != compose_functors(r1, r2):
                    return LawResult(law_id, count, False, f"#{idx} M: composition not preserved")
                li, ri = concept_functor_image(
                    identity_infomorphism(i1.source), "M", lat_phi, lat_phi
                )
                if li != identity_functor(lat_phi) or ri != identity_functor(lat_phi):
                    return LawResult(law_id, count, False, f"#{idx} M: identity not preserved")
            else:
                if lc != compose_functors(l1, l2) or rc != compose_functors(r2, r1):
                    return LawResult(law_id, count, False, f"#{idx} K: composition not reversed")
                li, ri = concept_functor_image(
                    identity_infomorphism(i1.source), "K", lat_phi, lat_phi
                )
                if li != identity_functor(lat_phi) or ri != identity_functor(lat_phi):
                    return LawResult(law_id, count, False, f"#{idx} K: identity not preserved")
    return LawResult(law_id, count, True, None)


def law_macneille(rng, profile: Profile) -> LawResult:
    law_id = "macneille"
    Q = fixture_two()
    chain = QCategory(Q, ("x", "y"), (0, 0), [[1, 1], [0, 1]])
    anti = discrete_category(Q, QTypedSet(("x", "y"), (0, 0)))
    empty = discrete_category(Q, QTypedSet((), ()))
    instances = 0
    for cat, expected in ((chain, 2), (anti, 4), (empty, 1)):
        for algorithm in ("brute", "generated"):
            lattice, _ = macneille_completion(cat, algorithm)
            instances += 1
            if len(lattice) != expected:
                return LawResult(
                    law_id, instances, False,
                    f"{algorithm} cut count {len(lattice)} != {expected} on {cat.labels}",
                )
    for idx in range(profile.macneille_categories):
        if idx % 2 == 0:
            A = rand_category(rng, fixture_two(), 3)
        else:
            A = rand_category(rng, fixture_ql(3), 2)
        lattice, _ = macneille_completion(A)
        _, embedding2 = macneille_completion(lattice)
        instances += 1
        if not functor_is_isomorphism(embedding2):
            return LawResult(law_id, instances, False, f"#{idx}: completion is not idempotent")
    for which, Qx, size in (("two", fixture_two(), 2), ("ql3", fixture_ql(3), 1)):
        A = rand_category(rng, Qx, size, size)
        PA = presheaf_category(A)
        _, embedding = macneille_completion(PA)
        instances += 1
        if not functor_is_isomorphism(embedding):
            return LawResult(
                law_id, instances, False,
                f"{which}: complete skeletal category not isomorphic to its completion",
            )
    return LawResult(law_id, instances, True, None)


def law_closure_reconstruction(rng, profile: Profile) -> LawResult:
    law_id = "closure-reconstruction"
    count = profile.closure_spaces
    for idx in range(count):
        if idx % 5 < 3:
            A = rand_category(rng, fixture_two(), 3)
        else:
            A = rand_category(rng, fixture_ql(3), 1, 1)
        PA = presheaf_category(A)
        space = rand_closure_space(rng, A, PA)
        if validate_closure_space(space):
            return LawResult(law_id, count, False, f"#{idx}: generator produced an invalid operator")
        zeta = closure_to_context(space)
        for i in range(len(PA)):
            mu = PA.weight_at(i)
            closed = isbell_transform(zeta, "down", isbell_transform(zeta, "up", mu))
            if PA.index_of(closed) != space.operator(i):
                return LawResult(
                    law_id, count, False,
                    f"#{idx}: reconstruction differs at weight {mu.weights}",
                )
        ok, witness = state_property_system_check(A, zeta.cod, zeta)
        if not ok:
            return LawResult(law_id, count, False, f"#{idx}: axioms fail: {witness}")
    return LawResult(law_id, count, True, None)


LAWS = {
    "residuation-adjointness": law_residuation,
    "divisible-builder": law_divisible,
    "yoneda-lemma": law_yoneda,
    "isbell-kan-adjointness": law_adjointness,
    "image-functors-via-kan": law_image_functors,
    "concept-enumeration-agreement": law_concept_enumeration,
    "concept-lattice-completeness": law_completeness,
    "dense-factorization": law_dense_factorization,
    "girard-duality": law_girard,
    "concept-functoriality": law_concept_functoriality,
    "macneille": law_macneille,
    "closure-reconstruction": law_closure_reconstruction,
}


def run_law(law_id: str, seed: int, profile_name: str, mutate: str | None = None) -> LawResult:
    profile = PROFILES[profile_name]
    rng = random.Random(f"{seed}:{law_id}")
    fn = LAWS[law_id]
    if law_id == "residuation-adjointness":
        return fn(rng, profile, mutate)
    return fn(rng, profile)


def run_all(seed: int, profile_name: str, mutate: str | None = None) -> list[LawResult]:
    return [run_law(law_id, seed, profile_name, mutate) for law_id in LAWS]


def format_result(result: LawResult, seed: int, profile_name: str) -> str:
    line = (
        f"law={result.law_id} seed={seed} profile={profile_name} "
        f"instances={result.instances} status={'PASS' if result.passed else 'FAIL'}"
    )
    if not result.passed:
        line += f" witness={result.witness}"
    return line
