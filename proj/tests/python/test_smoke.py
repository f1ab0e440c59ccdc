"""End-to-end smoke test of the python bindings."""
import json

import socev_py


SCRIPT = json.dumps({
    "scenarios": [
        {"kind": "PassThenGoal", "v0": 14, "mu": 2, "seed": 31, "offset": 0},
        {"kind": "TackleLost", "v0": 12, "mu": 3, "seed": 32, "offset": 900},
    ]
})


def test_pipeline_round_trip():
    trace_csv, truth_jsonl = socev_py.generate(SCRIPT)
    assert trace_csv.splitlines()[0].startswith("0,0,ball,none,0,")

    detected = socev_py.detect(trace_csv)
    report = json.loads(socev_py.evaluate(detected, truth_jsonl))
    assert report["macro"]["f1"] == 1.0
    for key, metrics in report["per_type"].items():
        assert metrics["f1"] == 1.0, key

    types = {json.loads(line)["type"] for line in detected.splitlines()}
    assert {"KickingTheBall", "Pass", "PassThenGoal", "Goal", "LostTackle"} <= types


def test_custom_rules_and_params():
    params = json.loads(socev_py.reference_params())
    assert set(params["rules"]) == {"KickingTheBall", "BallPossession", "Tackle", "BallDeflection"}

    rules = socev_py.builtin_rules()
    assert "complex Pass:" in rules

    trace_csv, _ = socev_py.generate(SCRIPT)
    only_pass = (
        "complex Pass:\n"
        "  seq(atomic KickingTheBall as k, atomic BallPossession as p)\n"
        "  within 90\n"
        "  where team(k.KickingPlayer) == team(p.PossessingPlayer) "
        "and k.KickingPlayer != p.PossessingPlayer\n"
        "  emit roles { KickingPlayer: k.KickingPlayer, ReceivingPlayer: p.PossessingPlayer }\n"
    )
    detected = socev_py.detect(trace_csv, rules=only_pass)
    types = {json.loads(line)["type"] for line in detected.splitlines()}
    assert "Pass" in types and "Shot" not in types


def test_stats_csv():
    trace_csv, truth = socev_py.generate(SCRIPT)
    detected = socev_py.detect(trace_csv)
    csv = socev_py.stats(detected)
    assert csv.splitlines()[0] == "type,count,min_frames,mean_frames,max_frames,mean_seconds"
    assert any(line.startswith("Pass,") for line in csv.splitlines())
