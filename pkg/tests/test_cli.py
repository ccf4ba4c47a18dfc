import csv
import json
from pathlib import Path

import pytest

from gewi.cli import CSV_COLUMNS, main, parse_int_list

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.reader(fh))


def test_parse_int_list():
    assert parse_int_list("1,3,5,10") == [1, 3, 5, 10]
    assert parse_int_list("0:104:8") == list(range(0, 105, 8))
    assert parse_int_list("0:3,7") == [0, 1, 2, 3, 7]
    assert parse_int_list("") == []
    assert parse_int_list(4) == [4]


def test_run_reference_point(capsys):
    rc = main(
        ["run", "--burst-packets", "1", "--packet-bits", "168", "--epr-frames", "10",
         "--epr-frame-len", "8", "--mode", "oracle"]
    )
    out = capsys.readouterr().out
    assert rc == 0
    assert "measured bits per data qubit : 1.909091" in out
    assert "analytic C                   : 1.909091" in out


def test_run_without_epr_frames(capsys):
    assert main(["run", "--epr-frames", "0"]) == 0
    assert "measured bits per data qubit : 1.000000" in capsys.readouterr().out


def test_run_rejects_unaligned_packet():
    with pytest.raises(SystemExit) as exc:
        main(["run", "--packet-bits", "167"])
    assert exc.value.code == 2


def test_run_appends_csv(tmp_path, capsys):
    out = tmp_path / "runs.csv"
    for _ in range(2):
        main(["run", "--epr-frames", "3", "--out", str(out)])
    rows = read_csv(out)
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 3 and rows[1] == rows[2]


def test_sweep_upper_grid(tmp_path, capsys):
    out = tmp_path / "upper.csv"
    rc = main(["sweep", "--config", str(CONFIGS / "sweep_frame_length.json"), "--out", str(out)])
    assert rc == 0
    rows = read_csv(out)
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 57
    first = dict(zip(rows[0], rows[2]))
    assert (first["B"], first["L"], first["measured_C"]) == ("1", "8", "1.9090909091")


def test_sweep_lower_grid_rows(capsys):
    main(["sweep", "--config", str(CONFIGS / "sweep_frame_count.json")])
    rows = list(csv.reader(capsys.readouterr().out.splitlines()))
    assert len(rows) == 37
    by_key = {(r[0], r[1]): r for r in rows[1:]}
    assert float(by_key[("10", "4")][7]) == pytest.approx(1.6153, abs=1e-3)


def test_sweep_empty_values_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    assert main(["sweep", "--param", "E", "--values", "", "--out", str(out)]) == 0
    assert read_csv(out) == [CSV_COLUMNS]


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"burst_packets": 10, "epr_frames": 10, "epr_frame_len": 8, "mode": "oracle"}))
    main(["run", "--config", str(cfg)])
    assert "1.050000" in capsys.readouterr().out
    main(["run", "--config", str(cfg), "--burst-packets", "1"])
    assert "1.909091" in capsys.readouterr().out


def test_sweep_row_equals_run(tmp_path, capsys):
    sweep_out = tmp_path / "s.csv"
    run_out = tmp_path / "r.csv"
    common = ["--burst-packets", "3", "--epr-frames", "4", "--mode", "uniform", "--seed", "4"]
    main(["sweep", *common, "--param", "L", "--values", "8,40", "--out", str(sweep_out)])
    main(["run", *common, "--epr-frame-len", "40", "--out", str(run_out)])
    assert read_csv(sweep_out)[2] == read_csv(run_out)[1]


def test_parallel_sweep_matches_serial(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--burst-packets", "1,5", "--param", "L", "--values", "0:40:20"]
    main([*args, "--out", str(a)])
    main([*args, "--jobs", "2", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_unwritable_output(capsys):
    rc = main(["sweep", "--param", "L", "--values", "8", "--out", "/nonexistent/dir/x.csv"])
    assert rc == 1
    assert "cannot write" in capsys.readouterr().err


def test_analytic_points(capsys):
    main(["analytic", "--burst-packets", "1", "--packet-bits", "168", "--epr-frames", "10", "--epr-frame-len", "8"])
    assert "C=1.909091" in capsys.readouterr().out
    main(["analytic", "--burst-packets", "10", "--packet-bits", "168", "--epr-frames", "10", "--epr-frame-len", "80"])
    assert "C=1.909091" in capsys.readouterr().out
    main(["analytic", "--burst-packets", "3", "--packet-bits", "168", "--epr-frames", "10", "--epr-frame-len", "16"])
    assert "C=1.465116" in capsys.readouterr().out


def test_analytic_overlay_csv(tmp_path):
    out = tmp_path / "curve.csv"
    main(["analytic", "--burst-packets", "5", "--epr-frames", "10", "--epr-frame-len", "0:104", "--out", str(out)])
    rows = read_csv(out)
    assert rows[0] == ["B", "E", "D", "L", "burst_transmissions", "C"]
    assert len(rows) == 106
