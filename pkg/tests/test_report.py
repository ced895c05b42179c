import json

import pytest

import report
from exactalg import DegreeError, HypermonoError


def test_registry():
    assert report.REGISTRY["theta7"].value.order == 28
    assert report.REGISTRY["pi7s_sphere"].to_dict()["value"]["label"] == "Z/240"
    assert report.REGISTRY["sigma_f3_adams_filtration"].value == 2
    assert "w_g1_framed_h1_kernel" in report.REGISTRY.names()
    assert all(entry["anchor"] for entry in report.REGISTRY.to_dict().values())
    with pytest.raises(KeyError):
        report.REGISTRY["pi8s_sphere"]


def test_report_quintic_odd_degree():
    result = report.build_report(3, charts=False)
    assert result.passed
    assert result.outcome("quadform").data["arf"] == 1
    assert result.outcome("pham").checks
    assert result.outcome("jtheory").status == "skipped"
    assert result.outcome("steenrod_ext").reason == "charts disabled"
    summary = result.theorem_summary
    assert summary["kernel"]["group"]["label"] == "Z/2"
    assert summary["extension"] == report.EXTENSION
    assert summary["not_residually_finite"]
    assert summary["order_consistent"]


def test_report_degree_one_is_degenerate():
    result = report.build_report(1, charts=False)
    assert result.passed
    assert result.outcome("quadform").status == "skipped"
    assert result.outcome("pham").status == "skipped"
    summary = result.theorem_summary
    assert "Z/4" in summary["degenerate"]
    assert summary["image"] == "trivial"
    assert summary["theorem_b"]["residually_finite"]


def test_report_obstruction():
    result = report.build_report(12, charts=False)
    assert result.theorem_summary["obstruction"]["group"]["label"] == "Z/6"
    assert result.outcome("jtheory").status == "ok"
    assert "above the Pham degree bound" in result.outcome("pham").reason
    assert result.passed


def test_report_with_charts():
    result = report.build_report(12)
    assert result.passed
    assert [chart.p for chart in result.charts] == [2, 3]
    checks = dict(result.outcome("steenrod_ext").checks)
    assert checks["p2_einf_stem7"]
    assert checks["p3_einf_stem7"]
    assert checks["p3_stem7_below_filtration2"]
    assert "E_inf stem 7: order 9 or 3" in report.render_text(result)


def test_chart_for_odd_degree_at_p2():
    with pytest.raises(DegreeError):
        report.chart_for_degree(2, 5)


def test_report_rejects_degree_zero():
    with pytest.raises(DegreeError):
        report.build_report(0)


def test_failed_section_is_reported():
    def broken(d):
        raise HypermonoError("no data", module="pham")

    def crashing(d):
        raise ValueError("bad")

    outcome = report._run("pham", broken, 3)
    assert outcome.status == "failed"
    assert outcome.reason == "pham: no data"
    assert report._run("pham", crashing, 3).reason == "pham: ValueError: bad"


def test_json_is_deterministic():
    first = report.to_json(report.build_report(4, charts=False))
    second = report.to_json(report.build_report(4, charts=False))
    assert first == second
    assert first.endswith("\n")
    document = json.loads(first)
    assert document["schema"] == report.SCHEMA
    assert list(document["modules"]) == [
        "hypersurface", "kreck_su", "quadform", "pham", "jtheory", "steenrod_ext"
    ]


def test_render_text():
    text = report.render_text(report.build_report(3, charts=False))
    assert "hypermono report d=3" in text
    assert "Z/2" in text


def test_batch():
    result = report.batch(3, 100)
    assert result["passed"]
    assert result["degenerate"] == []
    assert len(result["rows"]) == 98
    assert report.batch(1, 2)["degenerate"] == [1, 2]
    assert "theta7_order" in report.render_batch(result)
    with pytest.raises(HypermonoError):
        report.batch(5, 4)


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], 0),
        (["--help"], 0),
        (["nope"], 2),
        (["jtheory", "--d", "8"], 2),
        (["report", "--d", "x"], 2),
        (["report", "--emit", "svg"], 2),
        (["report", "--bogus"], 2),
    ],
)
def test_parse_args_exits(argv, code):
    with pytest.raises(SystemExit) as err:
        report.parse_args(argv)
    assert err.value.code == code


def test_parse_args():
    command, options = report.parse_args(["ext", "--p", "3", "--d", "9", "-e", "svg", "--smax", "4"])
    assert command == "ext"
    assert (options["p"], options["d"], options["emit"], options["smax"]) == (3, 9, "svg", 4)
    assert options["nmax"] == 9
    command, options = report.parse_args(["quadform", "scan", "--n", "3", "--no-charts"])
    assert command == "quadform"
    assert options["n"] == 3
    assert not options["charts"]


def test_missing_required_option(tmp_path):
    with pytest.raises(SystemExit) as err:
        report.run(["report", "-l", str(tmp_path / "log")])
    assert err.value.code == 2


def test_run_mcg_table(tmp_path):
    out = tmp_path / "table.json"
    code = report.run(
        ["mcg-table", "--from", "1", "--to", "8", "-f", str(out), "-l", str(tmp_path / "log")]
    )
    assert code == 0
    document = json.loads(out.read_text())
    assert [row["d"] for row in document["rows"]] == list(range(1, 9))


def test_run_jtheory(tmp_path):
    out = tmp_path / "james.txt"
    log = str(tmp_path / "log")
    assert report.run(["jtheory", "check", "--d", "8", "-e", "text", "-f", str(out), "-l", log]) == 0
    assert "holds" in out.read_text()
    assert report.run(["jtheory", "check", "--d", "6", "-l", log]) == 1


def test_run_quadform_and_pham(tmp_path, capsys):
    log = str(tmp_path / "log")
    assert report.run(["quadform", "scan", "--n", "2", "-l", log]) == 0
    assert json.loads(capsys.readouterr().out)["all_of_form_k_times_lattice"]
    dump = tmp_path / "pham.txt"
    assert report.run(["pham", "--d", "2", "--dump", str(dump), "-l", log]) == 0
    assert dump.read_text().startswith("%pham-sparse 1\n")
    assert json.loads(capsys.readouterr().out)["h0_pham"] == "Z/2"


def test_run_full_report(tmp_path):
    out = tmp_path / "report_4.json"
    code = report.run(["report", "--d", "4", "-f", str(out), "-l", str(tmp_path / "log")])
    document = json.loads(out.read_text())
    assert document["d"] == 4
    assert document["modules"]["jtheory"]["status"] == "ok"
    assert document["modules"]["jtheory"]["checks"]["james_periodicity"]
    assert document["modules"]["steenrod_ext"]["status"] == "ok"
    assert document["passed"]
    assert code == 0


def test_registry_quotes():
    for entry in report.REGISTRY.entries:
        assert entry.quote
        assert entry.to_dict()["quote"] == entry.quote
        if entry.quote != report.SPLIT_SEQUENCE_QUOTE:
            assert str(entry.value.order if hasattr(entry.value, "order") else entry.value) in entry.quote
    assert report.REGISTRY["w_g1_framed_h1_kernel"].quote == report.SPLIT_SEQUENCE_QUOTE


def test_progress_lines(capsys):
    progress = report.ProgressBar()
    result = report.build_report(3, charts=False, progress=progress)
    err = capsys.readouterr().err
    assert progress.steps_count == progress.steps_total == 5
    assert "hypersurface (d=3)" in err
    assert "[5/5]" in err
    assert "✔" in err
    assert err.count("\033[33m-\033[0m") == sum(
        1 for o in result.outcomes[:5] if o.status == "skipped"
    )


def test_progress_without_counter(capsys):
    progress = report.ProgressBar()
    progress.log_title("title")
    progress.log_failure("step", display_pbar=False)
    err = capsys.readouterr().err
    assert " title ".center(report.ProgressBar.WIDTH, "-") in err
    assert "✖" in err
    assert "[" not in err.replace("\033[", "")
