import csv
import io
import json

import pytest

from quatcusps.cli import main
from quatcusps.orders import hurwitz_order, order_to_json, standard_order
from quatcusps.quaternion import QuaternionAlgebra


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_report_p2_level3(capsys):
    data = run_json(capsys, "report", "--p", "2", "--level", "3", "--e", "1")
    assert data["cusp_count"] == "149760"
    assert data["cohomology"]["r2"] == "449280"
    assert data["cohomology"]["r13_sum"] == "599040"
    assert data["index"]["value"] == "12130560"
    assert data["algebra"]["ramification"] == ["inf", "2"]
    assert data["class_number"] == {"source": "eichler", "value": "1"}
    assert data["boundary"]["total_manifold_dim"] == "5"


def test_report_p11(capsys):
    data = run_json(capsys, "report", "--p", "11", "--level", "3", "--e", "1")
    assert data["cusp_count"] == "599040"
    assert data["class_number"]["value"] == "2"


def test_report_integers_are_strings(capsys):
    data = run_json(capsys, "report", "--p", "5", "--level", "7", "--e", "3")

    def walk(obj):
        if isinstance(obj, dict):
            for v in obj.values():
                walk(v)
        elif isinstance(obj, list):
            for v in obj:
                walk(v)
        else:
            assert isinstance(obj, (str, bool)), obj

    walk(data)


def test_report_is_deterministic(capsys):
    argv = ("report", "--p", "13", "--level", "5", "--e", "2", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_report_with_oracle(capsys):
    data = run_json(capsys, "report", "--p", "3", "--level", "2", "--e", "1", "--oracle")
    assert data["oracle"]["sl4"] == {"enumerated": "20160", "formula": "20160", "match": True, "q": "2"}
    assert data["oracle"]["hilbert"]["agree"] is True


def test_report_exit_codes(capsys):
    code, _, err = run(capsys, "report", "--p", "2", "--level", "2", "--e", "1")
    assert code == 2 and "splits" in err
    with pytest.raises(SystemExit) as exc:
        main(["report", "--p", "2", "--level", "3", "--e", "0"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["report", "--p", "4", "--level", "3", "--e", "1"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["report", "--p", "2"])
    assert exc.value.code == 1


def test_hilbert(capsys):
    data = run_json(capsys, "hilbert", "--a", "-1", "--b", "-1", "--oracle")
    assert [(r["place"], r["symbol"]) for r in data["places"]] == [("inf", "-1"), ("2", "-1")]
    assert data["product"] == "1" and data["agree"] is True


def test_hilbert_single_place(capsys):
    data = run_json(capsys, "hilbert", "--a", "-12", "--b", "-3", "--place", "3", "--oracle")
    assert data["places"] == [{"agree": True, "oracle": "-1", "place": "3", "symbol": "-1"}]


def test_ramify(capsys):
    data = run_json(capsys, "ramify", "--a", "-1", "--b", "-3")
    assert data["ramification"] == ["inf", "3"]
    assert data["discriminant"] == "3"


def test_classnumber(capsys):
    data = run_json(capsys, "classnumber", "--p", "11")
    assert data["class_number"] == "2"
    assert data["algebra"] == {"a": "-1", "b": "-11"}


def test_maximalize(capsys):
    data = run_json(capsys, "maximalize", "--a", "-1", "--b", "-7")
    assert data["reduced_discriminant"] == "7"
    assert data["input_reduced_discriminant"] == "28"
    assert data["contains_input"] is True


def test_maximalize_from_order_file(capsys, tmp_path):
    path = tmp_path / "order.json"
    path.write_text(order_to_json(standard_order(QuaternionAlgebra(-1, -1))))
    data = run_json(capsys, "maximalize", "--order", str(path))
    assert data["reduced_discriminant"] == "2"
    path.write_text(order_to_json(hurwitz_order()))
    data = run_json(capsys, "maximalize", "--order", str(path))
    assert data["basis"][3] == ["1/2", "1/2", "1/2", "1/2"]


def test_maximalize_needs_input(capsys):
    code, _, err = run(capsys, "maximalize", "--a", "-1")
    assert code == 1 and "--order" in err


def test_oracle_sl4(capsys):
    data = run_json(capsys, "oracle", "sl4", "--q", "2")
    assert data["enumerated"] == "20160" and data["match"] is True


def test_oracle_hilbert(capsys):
    data = run_json(capsys, "oracle", "hilbert", "--a", "-1", "--b", "-3", "--place", "3")
    assert data["oracle"] == data["symbol"] == "-1"


def test_cusps_indefinite(capsys):
    data = run_json(capsys, "cusps", "--a", "-1", "--b", "3", "--h", "1", "--level", "5", "--mu", "24")
    assert data["cusp_count"] == "1934400"
    code, _, _ = run(capsys, "cusps", "--a", "-1", "--b", "3", "--h", "1", "--level", "5", "--mu", "7")
    assert code == 2
    code, _, _ = run(capsys, "cusps", "--a", "1", "--b", "1", "--h", "1")
    assert code == 2


def test_csv_and_text_formats(capsys):
    code, out, _ = run(capsys, "ramify", "--a", "-1", "--b", "-1", "--format", "csv")
    rows = dict(csv.reader(io.StringIO(out)))
    assert rows["discriminant"] == "2" and rows["ramification[0]"] == "inf"
    code, out, _ = run(capsys, "ramify", "--a", "-1", "--b", "-1")
    assert code == 0 and "discriminant" in out
