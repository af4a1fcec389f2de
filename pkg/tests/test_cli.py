import json
import subprocess
import sys

import pytest

import gleafkit.suites as su
from gleafkit.cli import main
from gleafkit.metric import MetricCompository, metric_compose

P01 = '{"points":[0,1],"symmetric":true,"d":[[0,1,"1"]]}'
P012 = '{"points":[0,1,2],"symmetric":true,"d":[[0,1,"1"],[0,2,"2"],[1,2,"1"]]}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_probability_both(capsys):
    code, out, _ = run(capsys, "check", "--instance", "probability", "--mode", "both",
                       "--samples", "200", "--seed", "1")
    report = json.loads(out)
    assert code == 0 and report["failure_count"] == 0
    assert {r["axiom"] for r in report["results"]} >= set(su.GLEAF_LAWS)


def test_check_nerve_compository(capsys):
    code, out, _ = run(capsys, "check", "--instance", "nerve", "--mode", "compository")
    assert code == 0 and json.loads(out)["failure_count"] == 0


class _Broken(MetricCompository):
    def compose(self, a, k, b):
        out = metric_compose(a, k, b)
        # forget the last point: the composite no longer has dimension m + n - k
        return out if len(out.points) < 2 else self.act(out, _drop_last(len(out.points) - 1))


def _drop_last(n):
    from gleafkit.simplex import face
    return face(n, n)


def test_broken_instance_reports_failures(capsys, monkeypatch, tmp_path):
    monkeypatch.setattr(su, "_compository_for", lambda instance: [("broken", _Broken())])
    out_file = tmp_path / "report.json"
    code, _, _ = run(capsys, "check", "--instance", "metric", "--mode", "compository",
                     "--samples", "20", "--out", str(out_file))
    report = json.loads(out_file.read_text())
    assert code == 1 and report["failure_count"] > 0
    record = next(r for r in report["results"] if r["failures"])["failures"][0]
    assert {"input", "equation", "lhs", "rhs"} <= set(record)


def test_compose_names_the_mismatched_face(capsys):
    other = '{"points":[0,1],"symmetric":true,"d":[[0,1,"3"]]}'
    code, _, err = run(capsys, "compose", "--instance", "metric", P01, "1", other)
    assert code == 2 and "terminal 1-face of A" in err and "initial 1-face of B" in err
    code, _, err = run(capsys, "compose", "--instance", "nerve", '{"objects":["a","b"],"arrows":["f"]}',
                       "0", '{"objects":["c","d"],"arrows":["g"]}')
    assert code == 2 and "terminal 0-face" in err


def test_compose_outputs_rational_strings(capsys):
    code, out, _ = run(capsys, "compose", "--instance", "metric", P01, "0", P01)
    assert code == 0
    assert ["0", "2", "2"] in [[str(x) for x in row] for row in json.loads(out)["d"]]


def test_glue_and_act(capsys):
    a = '{"attrs":{"a":[0,1],"b":[0,1]},"tuples":[{"a":0,"b":1}]}'
    b = '{"attrs":{"b":[0,1],"c":[0,1]},"tuples":[{"b":1,"c":0},{"b":1,"c":1}]}'
    code, out, _ = run(capsys, "glue", "--instance", "relational", a, b)
    assert code == 0 and len(json.loads(out)["tuples"]) == 2
    code, out, _ = run(capsys, "act", "--instance", "metric", P012, '{"0": 0, "1": 2}')
    assert code == 0 and json.loads(out)["d"] == [[0, 1, "2"]]
    code, out, _ = run(capsys, "glue", "--instance", "spans",
                       '{"n":1,"val":{"0,0":"bot","0,1":"alpha","1,1":"bot"}}',
                       '{"n":1,"val":{"0,0":"bot","0,1":"beta","1,1":"bot"}}', "--cover", '{"j": 2}')
    assert code == 0 and json.loads(out)["val"]["0,2"] == "top"


@pytest.mark.parametrize("which", ["span-horn", "metric-horn", "prob-triple", "topology-triple"])
def test_counterexamples_certify(capsys, which):
    code, out, _ = run(capsys, "counterexample", which)
    assert code == 0 and json.loads(out)["certified"] is True


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "check", "--instance", "metric", "--mode", "sideways")[0] == 2
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "check", "--instance", "metric", "--dims", "40")[0] == 2
    assert run(capsys, "glue", "--instance", "metric", "{bad", P01)[0] == 2


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"instance": "topology", "mode": "gleaf", "dims": 2}')
    code, out, _ = run(capsys, "check", "--config", str(cfg))
    assert code == 0 and json.loads(out)["config"]["dims"] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gleafkit", "counterexample", "prob-triple"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and '"certified": true' in proc.stdout
