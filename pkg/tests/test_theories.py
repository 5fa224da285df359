import pytest

from causal_games.games import GamesModel
from causal_games.multirel import MRelModel, RelModel
from causal_games.sigcat import Generator, Signature, parse_term
from causal_games.theories import (
    EquationalTheory,
    ModelTypeError,
    Monotone,
    Relation,
    Renamed,
    SimplexModel,
    builtin_theory,
    check_model,
    derived_g_relations,
    derived_g_theory,
    mate,
    polarize,
)

COUNTS = {"M": (3, 2), "B": (22, 5), "R": (23, 5), "D": (2, 2), "G": (31, 13)}


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_builtin_theory_sizes(name):
    th = builtin_theory(name)
    assert (len(th.relations), len(th.signature.generators)) == COUNTS[name]


def test_unknown_theory():
    with pytest.raises(KeyError):
        builtin_theory("Q")


def test_relations_are_typechecked():
    sig = Signature.build(["1"], [("mu", "11", "1")])
    with pytest.raises(TypeError):
        EquationalTheory("bad", sig, (Relation("r", Generator("mu"), parse_term("id(1)", sig)),))


def test_relation_ids_unique_and_dump_is_json():
    import json

    th = builtin_theory("G")
    ids = [r.id for r in th.relations]
    assert len(ids) == len(set(ids))
    doc = json.loads(th.dumps())
    assert [r["id"] for r in doc["relations"]] == ids


def test_polarize_renames_generators_and_objects():
    assert polarize("mu ; id(1) * eta", "P") == "muP ; id(P) * etaP"


def test_mate_types():
    g = builtin_theory("G").signature
    from causal_games.sigcat import typecheck

    # f: O^a -> O^b has its mate P^b -> P^a
    t = parse_term(mate("deltaO", 1, 2), g)
    assert typecheck(t, g) == (("P", "P"), ("P",))


def test_derived_family_size():
    assert len(derived_g_relations()) == 39


@pytest.mark.parametrize(
    "theory,model",
    [
        ("B", MRelModel()),
        ("R", RelModel()),
        ("M", SimplexModel()),
        ("G", GamesModel()),
    ],
)
def test_models_satisfy_theories(theory, model):
    report = check_model(builtin_theory(theory), model)
    assert report.ok, report.failures


def test_derived_equations_hold_in_games():
    assert check_model(derived_g_theory(), GamesModel()).ok


def test_dual_objects_in_games():
    model = Renamed(GamesModel(), {"L": "P", "R": "O"}, {"eta": "etaOP", "eps": "epsOP"})
    assert check_model(builtin_theory("D"), model).ok


def test_multirelations_are_not_qualitative():
    report = check_model(builtin_theory("R"), MRelModel())
    assert report.failures == ["qualitative"]
    assert "22/23" in str(report)


def test_model_signature_mismatch():
    with pytest.raises(ModelTypeError):
        check_model(builtin_theory("B"), SimplexModel())


def test_monotone_validation():
    with pytest.raises(ValueError):
        Monotone(2, 2, (1, 0))
    with pytest.raises(ValueError):
        Monotone(1, 1, (1,))
