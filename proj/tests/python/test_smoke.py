import math

import pytest

import narmkit


@pytest.fixture(scope="module")
def planted():
    dataset, truth = narmkit.generate_planted(attributes=4, rows=400, frequency=0.6, seed=7)
    return dataset, truth


def test_dataset_loading(tmp_path):
    path = tmp_path / "tiny.csv"
    path.write_text("x,y\n1.0,a\n2.0,b\n3.0,a\n")
    ds = narmkit.Dataset.load_csv(str(path), header=True)
    assert ds.attribute_count == 2
    assert ds.transaction_count == 3
    kinds = [attr.kind for attr in ds.attributes]
    assert kinds == ["numeric", "categorical"]
    assert ds.attributes[0].min == 1.0
    assert ds.attributes[0].max == 3.0
    assert ds.attributes[1].categories == ["a", "b"]


def test_load_errors(tmp_path):
    with pytest.raises(narmkit.IoError):
        narmkit.Dataset.load_csv(str(tmp_path / "missing.csv"))
    bad = tmp_path / "bad.csv"
    bad.write_text("only_one_column\n1\n")
    with pytest.raises(narmkit.FormatError):
        narmkit.Dataset.load_csv(str(bad))


def test_planted_structure(planted):
    dataset, truth = planted
    assert dataset.transaction_count == 400
    metrics = narmkit.evaluate_rule(dataset, truth["antecedent"], truth["consequent"])
    assert metrics["support"] == pytest.approx(0.6, abs=0.06)
    assert metrics["confidence"] >= 0.85
    assert 0.0 <= metrics["amplitude"] <= 1.0


def test_evaluate_matches_known_values():
    ds = narmkit.Dataset.from_columns(["x", "y"], [[1, 2, 3, 4], [0, 1, 1, 0]])
    metrics = narmkit.evaluate_rule(
        ds,
        [{"attribute": "x", "interval": (2.0, 3.0)}],
        [{"attribute": "y", "interval": (1.0, 1.0)}],
    )
    assert metrics["support"] == pytest.approx(0.5)
    assert metrics["confidence"] == pytest.approx(1.0)
    assert metrics["comprehensibility"] == pytest.approx(math.log(2) / math.log(3))


def test_decode_roundtrip(planted):
    dataset, _ = planted
    dim = narmkit.genotype_dimension("triplet", dataset.attribute_count)
    assert dim == 12
    decoded = narmkit.decode(dataset, [0.2, 0.1, 0.9, 0.5, 0.0, 1.0] + [0.9, 0.5, 0.5] * 2,
                             "triplet")
    assert decoded["feasible"]
    rule = decoded["rule"]
    assert rule["antecedent"][0]["attribute"] == "a0"
    assert rule["consequent"][0]["attribute"] == "a1"

    infeasible = narmkit.decode(dataset, [0.9, 0.5, 0.5] * 4, "triplet")
    assert not infeasible["feasible"]
    assert infeasible["reason"] == "empty_antecedent"


def test_mine_weighted(planted):
    dataset, _ = planted
    result = narmkit.mine(
        dataset,
        algorithm="pso",
        encoding="triplet",
        objectives=["support", "confidence"],
        mode="weighted",
        weights=[0.5, 0.5],
        seed=3,
        population=20,
        evaluations=1500,
        min_support=0.1,
        min_confidence=0.2,
    )
    assert result["evaluations"] == 1500
    assert result["rules"], "expected at least one mined rule"
    for record in result["rules"]:
        assert record["metrics"]["support"] >= 0.1
        assert record["metrics"]["confidence"] >= 0.2
    scores = [record["score"] for record in result["rules"]]
    assert scores == sorted(scores, reverse=True)
    assert '"provenance"' in result["json"]


def test_mine_is_deterministic(planted):
    dataset, _ = planted
    kwargs = dict(algorithm="bat", encoding="gaussian", objectives=["support", "confidence"],
                  mode="pareto", weights=[], seed=11, population=15, evaluations=600)
    a = narmkit.mine(dataset, **kwargs)
    b = narmkit.mine(dataset, **kwargs)
    assert a["json"] == b["json"]


def test_optimize_bowl():
    target = [0.3, 0.7, 0.5]

    def objective(x):
        return -sum((xi - ti) ** 2 for xi, ti in zip(x, target))

    result = narmkit.optimize(objective, dimension=3, algorithm="acor",
                              population=20, evaluations=4000, seed=2)
    assert result["fitness"] > -1e-4
    assert len(result["best"]) == 3
    trace = result["trace"]
    assert all(b >= a for a, b in zip(trace, trace[1:]))


def test_config_errors(planted):
    dataset, _ = planted
    with pytest.raises(narmkit.ConfigError):
        narmkit.mine(dataset, algorithm="cso")
    with pytest.raises(narmkit.ConfigError):
        narmkit.mine(dataset, mode="pareto", weights=[0.5, 0.5])
