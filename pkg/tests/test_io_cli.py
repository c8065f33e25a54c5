"""Document round-trips, schema rejection, and the command-line surface."""

from __future__ import annotations

import yaml
import pytest
from click.testing import CliRunner

from quantcat import (
    DegreeOutOfHom,
    DivisibleQuantaloid,
    SchemaError,
    build_boolean,
    build_boolean_algebra_quantale,
    build_boolean_quantale,
    build_godel_chain,
    build_lukasiewicz_chain,
    build_nilpotent_minimum_chain,
    validate_infomorphism,
)
from quantcat.cli import main
from quantcat.io import (
    category_document,
    context_document,
    contexts_equal,
    distributor_document,
    document_bytes,
    infomorphism_document,
    lattice_document,
    load_document,
    parse_category_document,
    parse_context_document,
    parse_distributor_document,
    parse_infomorphism_document,
    parse_quantale_document,
    parse_quantaloid_document,
    quantale_document,
    quantaloid_document,
    write_document,
)
from quantcat.adjunction import concept_lattice


def ctx1_doc() -> dict:
    return {
        "schema": "context/v1",
        "quantale": {"kind": "boolean"},
        "objects": {"1": "1", "2": "1"},
        "attributes": {"a": "1", "b": "1"},
        "incidence": {"1": {"a": "1", "b": "1"}, "2": {"b": "1"}},
    }


def fuzzy_ctx_doc() -> dict:
    return {
        "schema": "context/v1",
        "quantale": {"kind": "lukasiewicz", "n": 3},
        "objects": {"x": "1", "y": "1/2"},
        "attributes": {"u": "1/2", "v": "1"},
        "incidence": {"x": {"u": "1/2", "v": "1"}, "y": {"v": "1/2"}},
    }


def chain_cat_doc() -> dict:
    return {
        "schema": "category/v1",
        "quantale": {"kind": "boolean"},
        "elements": {"x": "1", "y": "1"},
        "hom": {"x": {"y": "1"}},
    }


def identity_info_doc() -> dict:
    ctx = ctx1_doc()
    part = {k: ctx[k] for k in ("objects", "attributes", "incidence")}
    return {
        "schema": "infomorphism/v1",
        "quantale": {"kind": "boolean"},
        "source": part,
        "target": {k: dict(v) for k, v in part.items()},
        "object_map": {"1": "1", "2": "2"},
        "attribute_map": {"a": "a", "b": "b"},
    }


class TestQuantaleDocuments:
    @pytest.mark.parametrize(
        "q",
        [
            build_boolean_quantale(),
            build_lukasiewicz_chain(4),
            build_godel_chain(3),
            build_nilpotent_minimum_chain(5),
            build_boolean_algebra_quantale(2),
        ],
    )
    def test_round_trip(self, q):
        assert parse_quantale_document(quantale_document(q)) == q

    def test_builder_kinds(self):
        doc = {"schema": "quantale/v1", "kind": "lukasiewicz", "n": 3}
        assert parse_quantale_document(doc) == build_lukasiewicz_chain(3)
        doc = {"schema": "quantale/v1", "kind": "boolean-algebra", "atoms": 2}
        assert parse_quantale_document(doc) == build_boolean_algebra_quantale(2)

    def test_malformed_tables_are_rejected(self):
        base = {"schema": "quantale/v1", "kind": "table"}
        with pytest.raises(SchemaError):
            parse_quantale_document({**base, "elements": []})
        with pytest.raises(SchemaError):
            parse_quantale_document(
                {**base, "elements": ["0", "0"], "leq": [], "tensor": [], "unit": "0"}
            )
        with pytest.raises(SchemaError):
            parse_quantale_document(
                {
                    **base,
                    "elements": ["0", "1"],
                    "leq": [["0"]],
                    "tensor": [["0", "0"], ["0", "1"]],
                    "unit": "1",
                }
            )
        with pytest.raises(SchemaError):
            parse_quantale_document({**base, "elements": ["0", "1"], "leq": []})

    def test_unknown_kind(self):
        with pytest.raises(SchemaError):
            parse_quantale_document({"schema": "quantale/v1", "kind": "heyting"})


class TestQuantaloidDocuments:
    def test_round_trip(self):
        for Q in (build_boolean(),):
            doc = quantaloid_document(Q)
            again = quantaloid_document(parse_quantaloid_document(doc))
            assert doc == again


class TestCategoryDocuments:
    def test_crisp_categories_use_the_one_object_model(self):
        bundle = parse_category_document(chain_cat_doc())
        assert not isinstance(bundle.quantaloid, DivisibleQuantaloid)
        assert bundle.category.types == (0, 0)
        assert bundle.category.hom_idx == ((1, 1), (0, 1))

    def test_fuzzy_categories_type_objects_by_membership(self):
        doc = {
            "schema": "category/v1",
            "quantale": {"kind": "lukasiewicz", "n": 3},
            "elements": {"s": "1", "t": "1/2"},
            "hom": {"s": {"t": "1/2"}},
        }
        bundle = parse_category_document(doc)
        QD = bundle.quantaloid
        assert isinstance(QD, DivisibleQuantaloid)
        assert bundle.category.types == (
            QD.object_index("1"),
            QD.object_index("1/2"),
        )

    def test_zero_membership_disables_the_crisp_model(self):
        doc = chain_cat_doc()
        doc["elements"]["y"] = "0"
        doc["hom"] = {}
        bundle = parse_category_document(doc)
        assert isinstance(bundle.quantaloid, DivisibleQuantaloid)

    @pytest.mark.parametrize("make", [chain_cat_doc])
    def test_round_trip_and_byte_stability(self, make):
        first = parse_category_document(make())
        doc = category_document(first)
        second = parse_category_document(doc)
        assert first.category.labels == second.category.labels
        assert first.category.types == second.category.types
        assert first.category.hom_idx == second.category.hom_idx
        assert document_bytes(doc) == document_bytes(category_document(second))


class TestContextDocuments:
    @pytest.mark.parametrize("make", [ctx1_doc, fuzzy_ctx_doc])
    def test_round_trip(self, make):
        bundle = parse_context_document(make())
        again = parse_context_document(context_document(bundle))
        assert contexts_equal(bundle, again)
        assert document_bytes(context_document(bundle)) == document_bytes(
            context_document(again)
        )

    def test_crisp_detection(self):
        crisp = parse_context_document(ctx1_doc())
        assert not isinstance(crisp.quantaloid, DivisibleQuantaloid)
        doc = ctx1_doc()
        doc["objects"]["2"] = "0"
        doc["incidence"] = {"1": {"a": "1", "b": "1"}}
        graded = parse_context_document(doc)
        assert isinstance(graded.quantaloid, DivisibleQuantaloid)
        fuzzy = parse_context_document(fuzzy_ctx_doc())
        assert isinstance(fuzzy.quantaloid, DivisibleQuantaloid)

    def test_missing_incidence_entries_default_to_bottom(self):
        bundle = parse_context_document(ctx1_doc())
        assert bundle.distributor.matrix == ((1, 1), (0, 1))

    def test_schema_tag_is_required(self):
        doc = ctx1_doc()
        doc["schema"] = "context/v2"
        with pytest.raises(SchemaError):
            parse_context_document(doc)
        del doc["schema"]
        with pytest.raises(SchemaError):
            parse_context_document(doc)

    def test_unknown_labels_are_rejected(self):
        doc = ctx1_doc()
        doc["incidence"]["3"] = {"a": "1"}
        with pytest.raises(SchemaError):
            parse_context_document(doc)
        doc = ctx1_doc()
        doc["incidence"]["1"]["z"] = "1"
        with pytest.raises(SchemaError):
            parse_context_document(doc)

    def test_decimal_and_unknown_degrees_are_rejected(self):
        doc = fuzzy_ctx_doc()
        doc["incidence"]["x"]["u"] = "0.5"
        with pytest.raises(SchemaError, match="decimal"):
            parse_context_document(doc)
        doc = fuzzy_ctx_doc()
        doc["incidence"]["x"]["u"] = "2/3"
        with pytest.raises(SchemaError, match="unknown degree"):
            parse_context_document(doc)

    def test_degrees_above_the_membership_bound_are_rejected(self):
        doc = fuzzy_ctx_doc()
        doc["incidence"]["y"]["v"] = "1"
        with pytest.raises(DegreeOutOfHom, match="exceeds 1/2∧1"):
            parse_context_document(doc)

    def test_fraction_degrees_are_normalized(self):
        doc = fuzzy_ctx_doc()
        doc["incidence"]["x"]["u"] = "2/4"
        assert contexts_equal(
            parse_context_document(doc), parse_context_document(fuzzy_ctx_doc())
        )


class TestDistributorDocuments:
    def test_round_trip(self):
        doc = {
            "schema": "distributor/v1",
            "quantale": {"kind": "lukasiewicz", "n": 3},
            "source": {"elements": {"s": "1", "t": "1/2"}, "hom": {"s": {"t": "1/2"}}},
            "target": {"elements": {"p": "1"}, "hom": {}},
            "matrix": {"s": {"p": "1/2"}, "t": {"p": "1/2"}},
        }
        bundle = parse_distributor_document(doc)
        again = parse_distributor_document(distributor_document(bundle))
        assert bundle.distributor.matrix == again.distributor.matrix
        assert bundle.distributor.dom.hom_idx == again.distributor.dom.hom_idx

    def test_crisp_distributors_use_the_one_object_model(self):
        doc = {
            "schema": "distributor/v1",
            "quantale": {"kind": "boolean"},
            "source": {"elements": {"s": "1"}},
            "target": {"elements": {"p": "1"}},
            "matrix": {"s": {"p": "1"}},
        }
        bundle = parse_distributor_document(doc)
        assert not isinstance(bundle.quantaloid, DivisibleQuantaloid)


class TestInfomorphismDocuments:
    def test_round_trip_and_validity(self):
        bundle = parse_infomorphism_document(identity_info_doc())
        assert validate_infomorphism(bundle.infomorphism) == []
        again = parse_infomorphism_document(infomorphism_document(bundle))
        assert contexts_equal(bundle.source, again.source)
        assert contexts_equal(bundle.target, again.target)
        assert again.infomorphism.F.mapping == bundle.infomorphism.F.mapping
        assert again.infomorphism.G.mapping == bundle.infomorphism.G.mapping

    def test_maps_must_cover_and_hit_known_labels(self):
        doc = identity_info_doc()
        del doc["object_map"]["1"]
        with pytest.raises(SchemaError, match="missing image"):
            parse_infomorphism_document(doc)
        doc = identity_info_doc()
        doc["attribute_map"]["a"] = "zzz"
        with pytest.raises(SchemaError, match="unknown image"):
            parse_infomorphism_document(doc)


class TestLatticeDocuments:
    def test_document_is_deterministic(self):
        bundle = parse_context_document(ctx1_doc())
        lattice = concept_lattice(bundle.distributor, "isbell")
        doc = lattice_document(lattice, bundle.quantale, "isbell", "generated")
        doc2 = lattice_document(
            concept_lattice(bundle.distributor, "isbell"),
            bundle.quantale,
            "isbell",
            "generated",
        )
        assert document_bytes(doc) == document_bytes(doc2)
        assert doc["schema"] == "lattice/v1"
        assert doc["summary"] == {"concepts": 2, "per_type": {"*": 2}}
        assert doc["completeness"]["checked"] is True
        assert doc["completeness"]["complete"] is True


class TestLoadDocument:
    def test_rejects_non_mappings_and_bad_yaml(self, tmp_path):
        listy = tmp_path / "list.yaml"
        listy.write_text("- 1\n- 2\n")
        with pytest.raises(SchemaError, match="mapping"):
            load_document(str(listy))
        broken = tmp_path / "broken.yaml"
        broken.write_text("a: [1, 2\n")
        with pytest.raises(SchemaError, match="YAML"):
            load_document(str(broken))


@pytest.fixture()
def runner():
    return CliRunner()


def write(tmp_path, name, doc) -> str:
    path = tmp_path / name
    write_document(doc, str(path))
    return str(path)


class TestValidateCommand:
    def test_valid_documents(self, runner, tmp_path):
        cases = [
            (ctx1_doc(), "context"),
            (fuzzy_ctx_doc(), "context"),
            (chain_cat_doc(), "category"),
            (identity_info_doc(), "infomorphism"),
            ({"schema": "quantale/v1", "kind": "lukasiewicz", "n": 4}, "quantale"),
        ]
        for i, (doc, kind) in enumerate(cases):
            path = write(tmp_path, f"ok{i}.yaml", doc)
            result = runner.invoke(main, ["validate", path, "--kind", kind])
            assert result.exit_code == 0, result.output
            assert result.output == "OK\n"

    def test_divisibility_flag(self, runner, tmp_path):
        luk = write(
            tmp_path, "luk.yaml", {"schema": "quantale/v1", "kind": "lukasiewicz", "n": 5}
        )
        result = runner.invoke(main, ["validate", luk, "--kind", "quantale", "--require-divisible"])
        assert result.exit_code == 0 and result.output == "OK\n"
        nm = write(
            tmp_path,
            "nm.yaml",
            {"schema": "quantale/v1", "kind": "nilpotent-minimum", "n": 5},
        )
        result = runner.invoke(main, ["validate", nm, "--kind", "quantale", "--require-divisible"])
        assert result.exit_code == 1
        assert "violation: divisibility fails at (3/4, 1/4)" in result.output

    def test_law_violations_are_printed(self, runner, tmp_path):
        doc = {
            "schema": "category/v1",
            "quantale": {"kind": "boolean"},
            "elements": {"x": "1", "y": "1", "z": "1"},
            "hom": {"x": {"y": "1"}, "y": {"z": "1"}},
        }
        path = write(tmp_path, "badcat.yaml", doc)
        result = runner.invoke(main, ["validate", path, "--kind", "category"])
        assert result.exit_code == 1
        assert "violation:" in result.output and "transitivity" in result.output

    def test_broken_infomorphism(self, runner, tmp_path):
        doc = identity_info_doc()
        doc["target"]["incidence"] = {}
        path = write(tmp_path, "badinfo.yaml", doc)
        result = runner.invoke(main, ["validate", path, "--kind", "infomorphism"])
        assert result.exit_code == 1
        assert "violation:" in result.output

    def test_rejected_documents_fail_with_a_message(self, runner, tmp_path):
        doc = fuzzy_ctx_doc()
        doc["incidence"]["y"]["v"] = "1"
        path = write(tmp_path, "bad.yaml", doc)
        result = runner.invoke(main, ["validate", path, "--kind", "context"])
        assert result.exit_code == 1
        assert result.stderr.startswith("error:")
        assert "exceeds" in result.stderr

    def test_usage_errors_exit_2(self, runner, tmp_path):
        path = write(tmp_path, "c.yaml", ctx1_doc())
        assert runner.invoke(main, ["validate", path, "--kind", "poset"]).exit_code == 2
        assert runner.invoke(main, ["validate", path]).exit_code == 2
        assert runner.invoke(main, ["validate", "/nonexistent.yaml", "--kind", "context"]).exit_code == 2


class TestConceptsCommand:
    def test_crisp_counts(self, runner, tmp_path):
        path = write(tmp_path, "ctx1.yaml", ctx1_doc())
        result = runner.invoke(main, ["concepts", path, "--mode", "isbell"])
        assert result.exit_code == 0, result.output
        assert result.output == "2 concepts\npotential concepts of type *: 2\n"
        result = runner.invoke(main, ["concepts", path, "--mode", "kan"])
        assert result.output == "3 concepts\npotential concepts of type *: 3\n"

    def test_fuzzy_counts_and_algorithm_agreement(self, runner, tmp_path):
        path = write(tmp_path, "fuzzy.yaml", fuzzy_ctx_doc())
        out = runner.invoke(main, ["concepts", path, "--mode", "isbell"])
        assert out.exit_code == 0 and out.output.startswith("4 concepts\n")
        assert "potential concepts of type" in out.output
        brute = runner.invoke(
            main, ["concepts", path, "--mode", "isbell", "--algorithm", "brute"]
        )
        assert brute.exit_code == 0 and brute.output == out.output

    def test_output_document_is_byte_stable(self, runner, tmp_path):
        path = write(tmp_path, "ctx1.yaml", ctx1_doc())
        out1, out2 = str(tmp_path / "a.yaml"), str(tmp_path / "b.yaml")
        assert runner.invoke(
            main, ["concepts", path, "--mode", "isbell", "--out", out1]
        ).exit_code == 0
        assert runner.invoke(
            main, ["concepts", path, "--mode", "isbell", "--out", out2]
        ).exit_code == 0
        b1 = open(out1, "rb").read()
        assert b1 == open(out2, "rb").read()
        doc = yaml.safe_load(b1)
        assert doc["schema"] == "lattice/v1"
        assert doc["summary"]["concepts"] == 2
        assert len(doc["concepts"]) == 2
        assert all("provenance" in c for c in doc["concepts"])

    def test_tiny_cap_suggests_the_generated_algorithm(self, runner, tmp_path):
        path = write(tmp_path, "ctx1.yaml", ctx1_doc())
        result = runner.invoke(
            main, ["concepts", path, "--mode", "isbell", "--algorithm", "brute", "--cap", "1"]
        )
        assert result.exit_code == 1
        assert "algorithm=generated" in result.stderr

    def test_cap_environment_variable(self, runner, tmp_path, monkeypatch):
        path = write(tmp_path, "ctx1.yaml", ctx1_doc())
        monkeypatch.setenv("QUANTCAT_PRESHEAF_CAP", "3")
        result = runner.invoke(
            main, ["concepts", path, "--mode", "isbell", "--algorithm", "brute"]
        )
        assert result.exit_code == 1 and "cap 3" in result.stderr
        monkeypatch.setenv("QUANTCAT_PRESHEAF_CAP", "abc")
        result = runner.invoke(
            main, ["concepts", path, "--mode", "isbell", "--algorithm", "brute"]
        )
        assert result.exit_code == 1 and "integer" in result.stderr

    def test_mode_is_required(self, runner, tmp_path):
        path = write(tmp_path, "ctx1.yaml", ctx1_doc())
        assert runner.invoke(main, ["concepts", path]).exit_code == 2


class TestMacneilleCommand:
    def test_chain_cuts_and_embedding(self, runner, tmp_path):
        path = write(tmp_path, "chain.yaml", chain_cat_doc())
        result = runner.invoke(main, ["macneille", path])
        assert result.exit_code == 0, result.output
        assert result.output == "2 cuts\nembed x -> c0\nembed y -> c1\n"
        out = str(tmp_path / "cuts.yaml")
        assert runner.invoke(main, ["macneille", path, "--out", out]).exit_code == 0
        doc = yaml.safe_load(open(out))
        assert doc["embedding"] == {"x": "c0", "y": "c1"}
        assert doc["mode"] == "macneille"

    def test_brute_algorithm_agrees(self, runner, tmp_path):
        path = write(tmp_path, "chain.yaml", chain_cat_doc())
        gen = runner.invoke(main, ["macneille", path])
        brute = runner.invoke(main, ["macneille", path, "--algorithm", "brute"])
        assert brute.exit_code == 0 and brute.output == gen.output


class TestLawsCommand:
    def test_fixed_seed_is_byte_identical_and_passes(self, runner):
        first = runner.invoke(main, ["laws", "--seed", "3"])
        second = runner.invoke(main, ["laws", "--seed", "3"])
        assert first.exit_code == 0, first.output
        assert first.output == second.output
        lines = first.output.strip().splitlines()
        assert len(lines) == 12
        for line in lines:
            assert line.startswith("law=")
            assert " seed=3 profile=small instances=" in line
            assert line.endswith("status=PASS")

    def test_mutated_composition_fails_with_a_witness(self, runner):
        result = runner.invoke(main, ["laws", "--seed", "3", "--mutate", "compose"])
        assert result.exit_code == 1
        failing = [l for l in result.output.splitlines() if "status=FAIL" in l]
        assert failing
        assert any(
            l.startswith("law=residuation-adjointness") and "witness=" in l
            for l in failing
        )

    def test_unknown_profile_exits_2(self, runner):
        assert runner.invoke(main, ["laws", "--profile", "huge"]).exit_code == 2
