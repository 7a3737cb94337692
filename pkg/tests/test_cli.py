import json

from clusterline.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_tubular(capsys):
    code, data = run_json(capsys, "classify", "--weights", "2,2,2,2")
    assert code == 0
    assert data["chi"] == "0" and data["type"] == "tubular"
    assert data["weights"] == "2,2,2,2"


def test_usage_error_exits_2(capsys):
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
    assert main([]) == 2
    capsys.readouterr()


def test_domain_error_exits_1_with_json(capsys):
    code, data = run_json(capsys, "classify", "--weights", "1,2")
    assert code == 1
    assert data["error"] == "invalid_weight_vector"


def test_bad_object_exits_1(capsys):
    code, data = run_json(capsys, "hom", "--weights", "2,3,5",
                          "L(0,0,0;0)", "nonsense")
    assert code == 1
    assert data["error"] == "invalid_input"


def test_interval(capsys):
    code, data = run_json(capsys, "interval", "inf", "3", "1")
    assert code == 0 and data["contains"] is True
    _, data = run_json(capsys, "interval", "2", "3", "1")
    assert data["contains"] is False


def test_slope_word(capsys):
    code, data = run_json(capsys, "slope-word", "--weights", "2,2,2,2",
                          "7/3")
    assert code == 0
    assert data["check"] == "7/3" == data["slope"]


def test_tube_hom(capsys):
    code, data = run_json(capsys, "tube", "hom", "3", "0", "2", "0", "2")
    assert code == 0
    assert data["hom"] == 1


def test_hom_and_ideal(capsys):
    code, data = run_json(capsys, "hom", "--weights", "2,3,5",
                          "L(0,0,0;0)", "L(0,0,0;1)")
    assert code == 0 and data["hom"] == 2 and data["ext"] == 0
    code, data = run_json(capsys, "ideal", "--weights", "2,3,5",
                          "L(0,0,0;1)", "L(0,0,0;0)")
    assert code == 0 and data["ideal_dim"] == 1


def test_replay_squid_steps(capsys):
    code, data = run_json(capsys, "replay-squid", "--weights", "2,3,5")
    assert code == 0
    assert data["steps"] == 7
    assert all(step["tilting"] for step in data["trace"])


def test_tilt_roundtrip(capsys, tmp_path):
    code, data = run_json(capsys, "tilt", "--weights", "2,3,4", "canonical")
    assert code == 0 and data["tilting"] is True
    f = tmp_path / "set.json"
    f.write_text(json.dumps(data["set"]))
    code, data2 = run_json(capsys, "tilt", "--weights", "2,3,4", "check",
                           str(f))
    assert code == 0 and data2["tilting"] is True


def test_mutate_cli(capsys, tmp_path):
    code, data = run_json(capsys, "tilt", "--weights", "2,3,5", "canonical")
    f = tmp_path / "set.json"
    f.write_text(json.dumps(data["set"]))
    code, data = run_json(capsys, "mutate", "--weights", "2,3,5",
                          str(f), "L(0,0,4;0)")
    assert code == 0
    assert data["added"] == "T(3,0,1)"
    assert sorted(data["ext_dims"]) == [0, 1]


def test_exchange_writes_outputs(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    png = tmp_path / "g.png"
    csv = tmp_path / "g.csv"
    code, data = run_json(capsys, "exchange", "--weights", "2,2,2",
                          "--depth", "2", "--dot", str(dot),
                          "--png", str(png), "--csv", str(csv))
    assert code == 0
    assert data["nodes"] > 1 and data["edges"] > 0
    assert dot.read_text().startswith("graph")
    assert png.stat().st_size > 0
    assert len(csv.read_text().splitlines()) == data["edges"] + 1


def test_fz_presentation_and_mutate(capsys, tmp_path):
    code, data = run_json(capsys, "fz", "canonical-presentation",
                          "2", "3", "5")
    assert code == 0
    assert len(data["labels"]) == 9 and len(data["relations"]) == 11
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"labels": data["labels"], "B": data["B"]}))
    code, data2 = run_json(capsys, "fz", "mutate", str(f), "0")
    assert code == 0 and data2["labels"] == data["labels"]
    code, data3 = run_json(capsys, "fz", "class", str(f), "--depth", "0")
    assert code == 0 and data3["class_size"] == 1


def test_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out = run(capsys, "kth", "--weights", "2,3,5", "gram")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_verify_single_suite(capsys):
    code, data = run_json(capsys, "verify", "--suite", "classification")
    assert code == 0
    assert data["ok"] is True and len(data["results"]) == 1
