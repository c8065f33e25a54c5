"""YAML document formats for quantales, categories, contexts and lattices.

Every document carries a `schema` tag (e.g. `context/v1`).  Degrees are
written as quantale element labels -- exact rationals like `1/2` or names
like `ab` -- never as floating-point decimals.  Serialization is canonical:
parsing a serialized document and serializing again is the identity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

import yaml

from .adjunction import ConceptLattice
from .distributor import Infomorphism, QDistributor, enumerate_presheaves
from .enriched import QCategory, QFunctor, QTypedSet, discrete_category
from .errors import ArrowTypeError, DegreeOutOfHom, SchemaError
from .quantaloid import (
    Arrow,
    DivisibleQuantaloid,
    Lattice,
    QuantaleSpec,
    Quantaloid,
    build_boolean,
    build_boolean_algebra_quantale,
    build_boolean_quantale,
    build_godel_chain,
    build_lukasiewicz_chain,
    build_nilpotent_minimum_chain,
    quantaloid_from_divisible_quantale,
)

SCHEMAS = (
    "quantale/v1",
    "quantaloid/v1",
    "category/v1",
    "distributor/v1",
    "context/v1",
    "infomorphism/v1",
    "lattice/v1",
)


def load_document(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise SchemaError(f"{path}: not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: document must be a mapping")
    return doc


def write_document(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        yaml.safe_dump(doc, fh, sort_keys=False)


def document_bytes(doc: dict) -> bytes:
    return yaml.safe_dump(doc, sort_keys=False).encode()


def check_schema(doc: dict, expected: str) -> None:
    tag = doc.get("schema")
    if tag != expected:
        raise SchemaError(f"schema: expected {expected!r}, found {tag!r}")


def _req(doc: dict, key: str, where: str):
    if key not in doc:
        raise SchemaError(f"{where}: missing required field {key!r}")
    return doc[key]


def _as_mapping(value, where: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise SchemaError(f"{where}: expected a mapping")
    return value


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------


def normalize_degree(raw, where: str) -> str:
    """Canonical string form of a degree: a label or a reduced fraction."""
    text = str(raw).strip()
    if not text:
        raise SchemaError(f"{where}: empty degree")
    if "." in text:
        raise SchemaError(
            f"{where}: decimal degree {text!r} not allowed; use an exact "
            "rational like 1/2 or an element label"
        )
    return text


def degree_index(q: QuantaleSpec, raw, where: str) -> int:
    text = normalize_degree(raw, where)
    if text in q.labels:
        return q.labels.index(text)
    try:
        reduced = str(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: unknown degree {text!r}") from None
    if reduced in q.labels:
        return q.labels.index(reduced)
    raise SchemaError(f"{where}: unknown degree {text!r}")


def arrow_degree_label(Q: Quantaloid, f: Arrow) -> str:
    """The degree an arrow carries, for writing documents."""
    if isinstance(Q, DivisibleQuantaloid):
        return Q.quantale.labels[Q.element_of_arrow(f)]
    return Q.homs[(f.src, f.tgt)].labels[f.idx]


# ---------------------------------------------------------------------------
# Quantales
# ---------------------------------------------------------------------------

_CHAIN_BUILDERS = {
    "lukasiewicz": build_lukasiewicz_chain,
    "nilpotent-minimum": build_nilpotent_minimum_chain,
    "godel": build_godel_chain,
}


def parse_quantale(doc: dict, where: str = "quantale") -> QuantaleSpec:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected a mapping")
    kind = _req(doc, "kind", where)
    if kind in _CHAIN_BUILDERS:
        n = _req(doc, "n", where)
        if not isinstance(n, int):
            raise SchemaError(f"{where}.n: expected an integer")
        return _CHAIN_BUILDERS[kind](n)
    if kind == "boolean":
        return build_boolean_quantale()
    if kind == "boolean-algebra":
        atoms = _req(doc, "atoms", where)
        if not isinstance(atoms, int):
            raise SchemaError(f"{where}.atoms: expected an integer")
        return build_boolean_algebra_quantale(atoms)
    if kind == "table":
        elements = _req(doc, "elements", where)
        if not isinstance(elements, list) or not elements:
            raise SchemaError(f"{where}.elements: expected a nonempty list")
        labels = [normalize_degree(e, f"{where}.elements") for e in elements]
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise SchemaError(f"{where}.elements: duplicate labels")

        def look(raw, field):
            text = normalize_degree(raw, field)
            if text not in index:
                raise SchemaError(f"{field}: unknown element {text!r}")
            return index[text]

        leq_raw = _req(doc, "leq", where)
        if not isinstance(leq_raw, list):
            raise SchemaError(f"{where}.leq: expected a list of pairs")
        pairs = []
        for entry in leq_raw:
            if not isinstance(entry, list) or len(entry) != 2:
                raise SchemaError(f"{where}.leq: entries must be [lower, upper] pairs")
            pairs.append((look(entry[0], f"{where}.leq"), look(entry[1], f"{where}.leq")))
        tensor_raw = _req(doc, "tensor", where)
        if not isinstance(tensor_raw, list) or len(tensor_raw) != len(labels):
            raise SchemaError(f"{where}.tensor: expected one row per element")
        table = []
        for row in tensor_raw:
            if not isinstance(row, list) or len(row) != len(labels):
                raise SchemaError(f"{where}.tensor: expected one column per element")
            table.append([look(v, f"{where}.tensor") for v in row])
        unit = look(_req(doc, "unit", where), f"{where}.unit")
        return QuantaleSpec(labels, pairs, table, unit)
    raise SchemaError(f"{where}.kind: unknown kind {kind!r}")


def serialize_quantale(q: QuantaleSpec) -> dict:
    lat = q.lattice
    return {
        "kind": "table",
        "elements": list(q.labels),
        "leq": [
            [q.labels[i], q.labels[j]]
            for i in range(lat.n)
            for j in range(lat.n)
            if lat.leq(i, j)
        ],
        "tensor": [[q.labels[v] for v in row] for row in q.tensor_table],
        "unit": q.labels[q.unit],
    }


def parse_quantale_document(doc: dict) -> QuantaleSpec:
    check_schema(doc, "quantale/v1")
    return parse_quantale(doc, "quantale")


def quantale_document(q: QuantaleSpec) -> dict:
    return {"schema": "quantale/v1", **serialize_quantale(q)}


# ---------------------------------------------------------------------------
# Quantaloids (explicit tables)
# ---------------------------------------------------------------------------


def parse_quantaloid_document(doc: dict) -> Quantaloid:
    check_schema(doc, "quantaloid/v1")
    objects_raw = _req(doc, "objects", "quantaloid")
    if not isinstance(objects_raw, list) or not objects_raw:
        raise SchemaError("quantaloid.objects: expected a nonempty list")
    objects = [str(o) for o in objects_raw]
    obj_index = {o: i for i, o in enumerate(objects)}
    if len(obj_index) != len(objects):
        raise SchemaError("quantaloid.objects: duplicate labels")
    homs_raw = _as_mapping(_req(doc, "homs", "quantaloid"), "quantaloid.homs")
    homs: dict[tuple[int, int], Lattice] = {}
    for i, src in enumerate(objects):
        row = _as_mapping(homs_raw.get(src), f"quantaloid.homs.{src}")
        for j, tgt in enumerate(objects):
            cell = row.get(tgt)
            if cell is None:
                raise SchemaError(f"quantaloid.homs.{src}.{tgt}: missing hom lattice")
            cell = _as_mapping(cell, f"quantaloid.homs.{src}.{tgt}")
            elements = _req(cell, "elements", f"quantaloid.homs.{src}.{tgt}")
            labels = [str(e) for e in elements]
            idx = {lab: k for k, lab in enumerate(labels)}
            pairs = []
            for entry in cell.get("leq", []):
                if not isinstance(entry, list) or len(entry) != 2:
                    raise SchemaError(
                        f"quantaloid.homs.{src}.{tgt}.leq: entries must be pairs"
                    )
                a, b = str(entry[0]), str(entry[1])
                if a not in idx or b not in idx:
                    raise SchemaError(
                        f"quantaloid.homs.{src}.{tgt}.leq: unknown element"
                    )
                pairs.append((idx[a], idx[b]))
            homs[(i, j)] = Lattice(labels, pairs)
    compose_raw = _as_mapping(_req(doc, "compose", "quantaloid"), "quantaloid.compose")
    tables = {}
    for i, x in enumerate(objects):
        xrow = _as_mapping(compose_raw.get(x), f"quantaloid.compose.{x}")
        for j, y in enumerate(objects):
            yrow = _as_mapping(xrow.get(y), f"quantaloid.compose.{x}.{y}")
            for k, z in enumerate(objects):
                table = yrow.get(z)
                where = f"quantaloid.compose.{x}.{y}.{z}"
                if table is None:
                    raise SchemaError(f"{where}: missing composition table")
                if not isinstance(table, list):
                    raise SchemaError(f"{where}: expected a table")
                out = []
                for row in table:
                    if not isinstance(row, list):
                        raise SchemaError(f"{where}: expected rows to be lists")
                    out_row = []
                    for v in row:
                        lab = str(v)
                        if lab not in homs[(i, k)].labels:
                            raise SchemaError(f"{where}: unknown result element {lab!r}")
                        out_row.append(homs[(i, k)].labels.index(lab))
                    out.append(out_row)
                tables[(i, j, k)] = out
    units_raw = _as_mapping(_req(doc, "units", "quantaloid"), "quantaloid.units")
    units = []
    for i, x in enumerate(objects):
        if x not in units_raw:
            raise SchemaError(f"quantaloid.units: missing unit for {x!r}")
        lab = str(units_raw[x])
        if lab not in homs[(i, i)].labels:
            raise SchemaError(f"quantaloid.units.{x}: unknown element {lab!r}")
        units.append(homs[(i, i)].labels.index(lab))
    return Quantaloid(objects, homs, tables, units)


def quantaloid_document(Q: Quantaloid) -> dict:
    n = len(Q.objects)
    return {
        "schema": "quantaloid/v1",
        "objects": list(Q.objects),
        "homs": {
            Q.objects[i]: {
                Q.objects[j]: {
                    "elements": list(Q.homs[(i, j)].labels),
                    "leq": [
                        [Q.homs[(i, j)].labels[a], Q.homs[(i, j)].labels[b]]
                        for a in range(Q.homs[(i, j)].n)
                        for b in range(Q.homs[(i, j)].n)
                        if Q.homs[(i, j)].leq(a, b)
                    ],
                }
                for j in range(n)
            }
            for i in range(n)
        },
        "compose": {
            Q.objects[i]: {
                Q.objects[j]: {
                    Q.objects[k]: [
                        [
                            Q.homs[(i, k)].labels[v]
                            for v in row
                        ]
                        for row in Q.compose_tables[(i, j, k)]
                    ]
                    for k in range(n)
                }
                for j in range(n)
            }
            for i in range(n)
        },
        "units": {Q.objects[i]: Q.homs[(i, i)].labels[Q.units[i]] for i in range(n)},
    }


# ---------------------------------------------------------------------------
# Categories over a divisible quantale
# ---------------------------------------------------------------------------


class CategoryBundle(NamedTuple):
    quantale: QuantaleSpec
    quantaloid: Quantaloid
    category: QCategory


def _parse_elements(q: QuantaleSpec, raw, where: str) -> QTypedSet:
    mapping = _as_mapping(raw, where)
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: expected a mapping of element to degree")
    labels = tuple(str(k) for k in mapping)
    if len(set(labels)) != len(labels):
        raise SchemaError(f"{where}: duplicate element labels")
    types = tuple(degree_index(q, v, f"{where}.{k}") for k, v in mapping.items())
    return QTypedSet(labels, types)


def _str_keys(mapping: dict, known, where: str) -> dict:
    out = {}
    for key, value in mapping.items():
        text = str(key)
        if text not in known:
            raise SchemaError(f"{where}: unknown label {text!r}")
        out[text] = value
    return out


def _crisp_quantaloid(q: QuantaleSpec, element_docs, wheres) -> Quantaloid | None:
    """The one-object Boolean quantaloid if every listed element set is a
    full-membership set over the Boolean quantale, else None.

    Classical (crisp) data is modeled over one object so that its concept
    lattices and completions agree with ordinary subset-based analysis.
    """
    if q != build_boolean_quantale():
        return None
    for raw, where in zip(element_docs, wheres):
        typed = _parse_elements(q, raw, where)
        if any(t != q.unit for t in typed.types):
            return None
    return build_boolean()


def _parse_category_part(q: QuantaleSpec, QD: Quantaloid, doc: dict, where: str) -> QCategory:
    typed = _parse_elements(q, _req(doc, "elements", where), f"{where}.elements")
    divisible = isinstance(QD, DivisibleQuantaloid)
    obj_types = typed.types if divisible else (0,) * len(typed.labels)
    pos = {lab: i for i, lab in enumerate(typed.labels)}
    hom_raw = _str_keys(_as_mapping(doc.get("hom"), f"{where}.hom"), pos, f"{where}.hom")
    hom_idx = []
    for i, x in enumerate(typed.labels):
        row_raw = _str_keys(
            _as_mapping(hom_raw.get(x), f"{where}.hom.{x}"), pos, f"{where}.hom.{x}"
        )
        row = []
        for j, y in enumerate(typed.labels):
            raw = row_raw.get(y)
            if raw is None:
                deg = typed.types[i] if i == j else q.lattice.bottom
            else:
                deg = degree_index(q, raw, f"{where}.hom.{x}.{y}")
            if divisible:
                row.append(QD.arrow_from_element(obj_types[i], obj_types[j], deg).idx)
            else:
                # One-object quantaloid: hom indices are quantale elements.
                row.append(deg)
        hom_idx.append(row)
    return QCategory(QD, typed.labels, obj_types, hom_idx)


def parse_category_document(doc: dict) -> CategoryBundle:
    check_schema(doc, "category/v1")
    q = parse_quantale(_req(doc, "quantale", "category"))
    QD = _crisp_quantaloid(
        q, [_req(doc, "elements", "category")], ["category.elements"]
    ) or quantaloid_from_divisible_quantale(q)
    cat = _parse_category_part(q, QD, doc, "category")
    return CategoryBundle(q, QD, cat)


def _membership_label(q: QuantaleSpec, QD: Quantaloid, type_idx: int) -> str:
    if isinstance(QD, DivisibleQuantaloid):
        return q.labels[type_idx]
    return q.labels[q.unit]


def _serialize_category_part(bundle_q: QuantaleSpec, Q: Quantaloid, A: QCategory) -> dict:
    return {
        "elements": {
            A.labels[i]: _membership_label(bundle_q, Q, A.types[i]) for i in range(len(A))
        },
        "hom": {
            A.labels[i]: {
                A.labels[j]: arrow_degree_label(Q, A.hom(i, j)) for j in range(len(A))
            }
            for i in range(len(A))
        },
    }


def category_document(bundle: CategoryBundle) -> dict:
    return {
        "schema": "category/v1",
        "quantale": serialize_quantale(bundle.quantale),
        **_serialize_category_part(bundle.quantale, bundle.quantaloid, bundle.category),
    }


# ---------------------------------------------------------------------------
# Contexts (distributors between discrete categories)
# ---------------------------------------------------------------------------


class ContextBundle(NamedTuple):
    quantale: QuantaleSpec
    quantaloid: Quantaloid
    distributor: QDistributor


def _parse_incidence(
    q: QuantaleSpec,
    QD: Quantaloid,
    A: QCategory,
    B: QCategory,
    raw,
    where: str,
) -> QDistributor:
    pos_a = {lab: i for i, lab in enumerate(A.labels)}
    pos_b = {lab: j for j, lab in enumerate(B.labels)}
    mapping = _str_keys(_as_mapping(raw, where), pos_a, where)
    divisible = isinstance(QD, DivisibleQuantaloid)
    matrix = []
    for i, x in enumerate(A.labels):
        row_raw = _str_keys(
            _as_mapping(mapping.get(x), f"{where}.{x}"), pos_b, f"{where}.{x}"
        )
        row = []
        for j, y in enumerate(B.labels):
            raw_deg = row_raw.get(y)
            deg = (
                q.lattice.bottom
                if raw_deg is None
                else degree_index(q, raw_deg, f"{where}.{x}.{y}")
            )
            if not divisible:
                # One-object quantaloid: hom indices are quantale elements.
                row.append(deg)
                continue
            try:
                row.append(QD.arrow_from_element(A.types[i], B.types[j], deg).idx)
            except ArrowTypeError:
                raise DegreeOutOfHom(
                    f"{where}.{x}.{y}: degree {q.labels[deg]} exceeds "
                    f"{q.labels[A.types[i]]}∧{q.labels[B.types[j]]}"
                ) from None
        matrix.append(row)
    return QDistributor(A, B, matrix)


def parse_context_document(doc: dict) -> ContextBundle:
    """Read a context document.

    A Boolean-quantale context in which every membership is 1 is the
    classical crisp case: it is modeled over the one-object quantaloid, so
    its concept lattices agree with ordinary subset-based analysis.  Any
    other context is modeled over the quantaloid of the divisible quantale,
    with elements typed by their membership degrees.
    """
    check_schema(doc, "context/v1")
    q = parse_quantale(_req(doc, "quantale", "context"))
    objects = _parse_elements(q, _req(doc, "objects", "context"), "context.objects")
    attributes = _parse_elements(
        q, _req(doc, "attributes", "context"), "context.attributes"
    )
    QD = _crisp_quantaloid(
        q,
        [_req(doc, "objects", "context"), _req(doc, "attributes", "context")],
        ["context.objects", "context.attributes"],
    ) or quantaloid_from_divisible_quantale(q)
    if not isinstance(QD, DivisibleQuantaloid):
        objects = QTypedSet(objects.labels, (0,) * len(objects.labels))
        attributes = QTypedSet(attributes.labels, (0,) * len(attributes.labels))
    A = discrete_category(QD, objects)
    B = discrete_category(QD, attributes)
    phi = _parse_incidence(q, QD, A, B, doc.get("incidence"), "context.incidence")
    return ContextBundle(q, QD, phi)


def context_document(bundle: ContextBundle) -> dict:
    q, QD, phi = bundle
    A, B = phi.dom, phi.cod
    return {
        "schema": "context/v1",
        "quantale": serialize_quantale(q),
        "objects": {
            A.labels[i]: _membership_label(q, QD, A.types[i]) for i in range(len(A))
        },
        "attributes": {
            B.labels[j]: _membership_label(q, QD, B.types[j]) for j in range(len(B))
        },
        "incidence": {
            A.labels[i]: {
                B.labels[j]: arrow_degree_label(QD, phi.arrow(i, j))
                for j in range(len(B))
            }
            for i in range(len(A))
        },
    }


def contexts_equal(a: ContextBundle, b: ContextBundle) -> bool:
    return (
        a.quantale == b.quantale
        and a.distributor.dom.labels == b.distributor.dom.labels
        and a.distributor.dom.types == b.distributor.dom.types
        and a.distributor.cod.labels == b.distributor.cod.labels
        and a.distributor.cod.types == b.distributor.cod.types
        and a.distributor.matrix == b.distributor.matrix
    )


# ---------------------------------------------------------------------------
# General distributors
# ---------------------------------------------------------------------------


class DistributorBundle(NamedTuple):
    quantale: QuantaleSpec
    quantaloid: Quantaloid
    distributor: QDistributor


def parse_distributor_document(doc: dict) -> DistributorBundle:
    check_schema(doc, "distributor/v1")
    q = parse_quantale(_req(doc, "quantale", "distributor"))
    QD = _crisp_quantaloid(
        q,
        [
            _req(_as_mapping(_req(doc, key, "distributor"), f"distributor.{key}"),
                 "elements", f"distributor.{key}")
            for key in ("source", "target")
        ],
        ["distributor.source.elements", "distributor.target.elements"],
    ) or quantaloid_from_divisible_quantale(q)
    A = _parse_category_part(q, QD, _req(doc, "source", "distributor"), "distributor.source")
    B = _parse_category_part(q, QD, _req(doc, "target", "distributor"), "distributor.target")
    phi = _parse_incidence(q, QD, A, B, doc.get("matrix"), "distributor.matrix")
    return DistributorBundle(q, QD, phi)


def distributor_document(bundle: DistributorBundle) -> dict:
    q, QD, phi = bundle
    A, B = phi.dom, phi.cod
    return {
        "schema": "distributor/v1",
        "quantale": serialize_quantale(q),
        "source": _serialize_category_part(q, QD, A),
        "target": _serialize_category_part(q, QD, B),
        "matrix": {
            A.labels[i]: {
                B.labels[j]: arrow_degree_label(QD, phi.arrow(i, j))
                for j in range(len(B))
            }
            for i in range(len(A))
        },
    }


# ---------------------------------------------------------------------------
# Infomorphisms between contexts
# ---------------------------------------------------------------------------


class InfomorphismBundle(NamedTuple):
    quantale: QuantaleSpec
    quantaloid: Quantaloid
    source: ContextBundle
    target: ContextBundle
    infomorphism: Infomorphism


def _parse_label_map(raw, dom: QCategory, cod: QCategory, where: str) -> QFunctor:
    mapping = _as_mapping(raw, where)
    normalized = {str(k): str(v) for k, v in mapping.items()}
    values = []
    for lab in dom.labels:
        if lab not in normalized:
            raise SchemaError(f"{where}: missing image for {lab!r}")
        image = normalized[lab]
        if image not in cod.labels:
            raise SchemaError(f"{where}.{lab}: unknown image {image!r}")
        values.append(cod.labels.index(image))
    return QFunctor(dom, cod, values)


def parse_infomorphism_document(doc: dict) -> InfomorphismBundle:
    check_schema(doc, "infomorphism/v1")
    q = parse_quantale(_req(doc, "quantale", "infomorphism"))
    element_docs = []
    wheres = []
    for key in ("source", "target"):
        sub = _as_mapping(_req(doc, key, "infomorphism"), f"infomorphism.{key}")
        for part in ("objects", "attributes"):
            element_docs.append(_req(sub, part, f"infomorphism.{key}"))
            wheres.append(f"infomorphism.{key}.{part}")
    QD = _crisp_quantaloid(q, element_docs, wheres) or quantaloid_from_divisible_quantale(q)
    divisible = isinstance(QD, DivisibleQuantaloid)

    def sub_context(key: str) -> ContextBundle:
        sub = _req(doc, key, "infomorphism")
        if not isinstance(sub, dict):
            raise SchemaError(f"infomorphism.{key}: expected a mapping")
        objects = _parse_elements(
            q, _req(sub, "objects", f"infomorphism.{key}"), f"infomorphism.{key}.objects"
        )
        attributes = _parse_elements(
            q,
            _req(sub, "attributes", f"infomorphism.{key}"),
            f"infomorphism.{key}.attributes",
        )
        if not divisible:
            objects = QTypedSet(objects.labels, (0,) * len(objects.labels))
            attributes = QTypedSet(attributes.labels, (0,) * len(attributes.labels))
        A = discrete_category(QD, objects)
        B = discrete_category(QD, attributes)
        phi = _parse_incidence(
            q, QD, A, B, sub.get("incidence"), f"infomorphism.{key}.incidence"
        )
        return ContextBundle(q, QD, phi)

    source = sub_context("source")
    target = sub_context("target")
    F = _parse_label_map(
        _req(doc, "object_map", "infomorphism"),
        source.distributor.dom,
        target.distributor.dom,
        "infomorphism.object_map",
    )
    G = _parse_label_map(
        _req(doc, "attribute_map", "infomorphism"),
        target.distributor.cod,
        source.distributor.cod,
        "infomorphism.attribute_map",
    )
    info = Infomorphism(source.distributor, target.distributor, F, G)
    return InfomorphismBundle(q, QD, source, target, info)


def infomorphism_document(bundle: InfomorphismBundle) -> dict:
    info = bundle.infomorphism
    src_doc = context_document(bundle.source)
    tgt_doc = context_document(bundle.target)
    for sub in (src_doc, tgt_doc):
        sub.pop("schema")
        sub.pop("quantale")
    return {
        "schema": "infomorphism/v1",
        "quantale": serialize_quantale(bundle.quantale),
        "source": src_doc,
        "target": tgt_doc,
        "object_map": {
            info.F.dom.labels[i]: info.F.cod.labels[info.F(i)]
            for i in range(len(info.F.dom))
        },
        "attribute_map": {
            info.G.dom.labels[j]: info.G.cod.labels[info.G(j)]
            for j in range(len(info.G.dom))
        },
    }


# ---------------------------------------------------------------------------
# Lattice output documents
# ---------------------------------------------------------------------------


def _weight_entry(Q: Quantaloid, base: QCategory, w) -> dict:
    return {
        base.labels[x]: arrow_degree_label(Q, w.arrow(x)) for x in range(len(base))
    }


def _completeness_certificate(lattice: ConceptLattice, cap: int | None) -> dict:
    from .completion import is_absent, sup_inf
    from .errors import PresheafSpaceTooLarge

    Q = lattice.Q
    try:
        presheaves = enumerate_presheaves(lattice, "contra", cap)
        copresheaves = enumerate_presheaves(lattice, "co", cap)
    except PresheafSpaceTooLarge as exc:
        return {"checked": False, "reason": str(exc)}
    sup_witnesses = []
    inf_witnesses = []
    complete = True
    for mu in presheaves:
        s = sup_inf(lattice, "sup", mu)
        entry = {
            "type": Q.objects[mu.type_idx],
            "weight": _weight_entry(Q, lattice, mu),
        }
        if is_absent(s):
            complete = False
            entry["sup"] = None
        else:
            entry["sup"] = lattice.labels[s]
        sup_witnesses.append(entry)
    for lam in copresheaves:
        b = sup_inf(lattice, "inf", lam)
        entry = {
            "type": Q.objects[lam.type_idx],
            "weight": _weight_entry(Q, lattice, lam),
        }
        if is_absent(b):
            complete = False
            entry["inf"] = None
        else:
            entry["inf"] = lattice.labels[b]
        inf_witnesses.append(entry)
    return {
        "checked": True,
        "complete": complete,
        "weights_checked": len(presheaves) + len(copresheaves),
        "sup_witnesses": sup_witnesses,
        "inf_witnesses": inf_witnesses,
    }


def lattice_document(
    lattice: ConceptLattice,
    quantale: QuantaleSpec,
    mode: str,
    algorithm: str,
    cap: int | None = None,
) -> dict:
    Q = lattice.Q
    phi = lattice.source
    A, B = phi.dom, phi.cod
    concepts = []
    for i, pair in enumerate(lattice.pairs):
        concepts.append(
            {
                "id": lattice.labels[i],
                "type": Q.objects[pair.extent.type_idx],
                "extent": _weight_entry(Q, A, pair.extent),
                "intent": _weight_entry(Q, B, pair.intent),
                "provenance": lattice.provenance[i],
            }
        )
    per_type = lattice.per_type_counts()
    return {
        "schema": "lattice/v1",
        "mode": mode,
        "algorithm": algorithm,
        "quantale": serialize_quantale(quantale),
        "objects": {A.labels[i]: Q.objects[A.types[i]] for i in range(len(A))},
        "attributes": {B.labels[j]: Q.objects[B.types[j]] for j in range(len(B))},
        "concepts": concepts,
        "hom": [
            [arrow_degree_label(Q, lattice.hom(i, j)) for j in range(len(lattice))]
            for i in range(len(lattice))
        ],
        "completeness": _completeness_certificate(lattice, cap),
        "summary": {
            "concepts": len(lattice),
            "per_type": {k: per_type[k] for k in Q.objects if k in per_type},
        },
    }


def macneille_document(
    lattice: ConceptLattice,
    embedding: QFunctor,
    quantale: QuantaleSpec,
    algorithm: str,
    cap: int | None = None,
) -> dict:
    doc = lattice_document(lattice, quantale, "macneille", algorithm, cap)
    A = embedding.dom
    doc["embedding"] = {
        A.labels[i]: lattice.labels[embedding(i)] for i in range(len(A))
    }
    return doc
