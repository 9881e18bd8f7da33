"""CLI harness: determinism, exit codes, report shape."""

import json

from askeykit.cli import SuiteConfig, main, render_report, run_verify


def test_verify_grid_case_count(tmp_path):
    out = tmp_path / "report.json"
    rc = main([
        "verify", "--identities", "hermite-expansion",
        "--max-n", "3", "--max-m", "3", "--seed", "7", "--output", str(out),
    ])
    assert rc == 0
    report = json.loads(out.read_text())
    assert report["schema"] == 1
    assert report["totals"] == {"cases": 16, "passed": 16, "failed": 0}


def test_verify_byte_identical(tmp_path):
    args = [
        "verify", "--families", "charlier", "--trials", "2", "--seed", "11",
        "--max-n", "2", "--max-m", "2",
    ]
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_seed_changes_report(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    base = ["verify", "--identities", "laguerre-expansion", "--max-n", "2", "--max-m", "1"]
    assert main(base + ["--seed", "1", "--output", str(a)]) == 0
    assert main(base + ["--seed", "2", "--output", str(b)]) == 0
    ra = json.loads(a.read_text())
    rb = json.loads(b.read_text())
    assert ra["cases"][0]["params"] != rb["cases"][0]["params"]


def test_verify_rational_serialization(tmp_path):
    out = tmp_path / "report.json"
    main([
        "verify", "--identities", "meixner-expansion-eta1",
        "--max-n", "1", "--max-m", "1", "--seed", "3", "--output", str(out),
    ])
    report = json.loads(out.read_text())
    for case in report["cases"]:
        for v in case["params"].values():
            num, _, den = v.partition("/")
            int(num), int(den)


def test_verify_unknown_identity_usage_error(capsys):
    assert main(["verify", "--identities", "nope"]) == 2
    assert "unknown identities" in capsys.readouterr().err


def test_verify_unknown_family_usage_error():
    assert main(["verify", "--families", "nope"]) == 2


def test_verify_toda_identity():
    config = SuiteConfig(identities=["toda-flows"], max_n=4, seed=5)
    report = run_verify(config)
    assert report["totals"]["failed"] == 0
    fams = {c["family"] for c in report["cases"]}
    assert len(fams) == 6


def test_markdown_render():
    config = SuiteConfig(identities=["hermite-expansion"], max_n=1, max_m=1, seed=1)
    report = run_verify(config)
    text = render_report(report, "markdown")
    assert "| case | pass | residual |" in text
    assert "hermite-expansion" in text


def test_expand_zero_residual(capsys):
    rc = main(["expand", "hermite-expansion", "--n", "1", "--m", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "residual: 0" in out
    assert "k=0" in out and "k=1" in out


def test_expand_needs_params(capsys):
    rc = main(["expand", "laguerre-expansion", "--n", "1", "--m", "1"])
    assert rc == 2
    assert "needs --param" in capsys.readouterr().err


def test_expand_inadmissible_param(capsys):
    rc = main(["expand", "laguerre-expansion", "--n", "1", "--m", "1", "--param", "nu=-2"])
    assert rc == 2
    assert "inadmissible" in capsys.readouterr().err


def test_expand_modified_identity(capsys):
    rc = main([
        "expand", "charlier-toda-eta1", "--n", "2",
        "--param", "a=3", "--param", "u=1/2",
    ])
    assert rc == 0
    assert "residual: 0" in capsys.readouterr().out


def test_toda_command(capsys):
    rc = main(["toda", "--families", "hermite", "meixner", "--max-n", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "residuals zero" in out
    assert "NONZERO" not in out


def test_toda_unknown_family():
    assert main(["toda", "--families", "wilson"]) == 2


def test_list_command(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "askey-wilson" in out
    assert "toda-flows" in out


def test_failing_case_gives_error_entry_and_exit_1(tmp_path, monkeypatch):
    # a case that blows up mid-run becomes a per-case error entry, not a crash
    import dataclasses

    from askeykit import burchnall

    broken = dataclasses.replace(
        burchnall.EXPANSIONS["hermite-expansion"],
        build=lambda pt, n, m: (_ for _ in ()).throw(ValueError("inadmissible")),
    )
    monkeypatch.setitem(burchnall.EXPANSIONS, "hermite-expansion", broken)
    out = tmp_path / "r.json"
    rc = main([
        "verify", "--identities", "hermite-expansion",
        "--max-n", "0", "--max-m", "0", "--output", str(out),
    ])
    assert rc == 1
    report = json.loads(out.read_text())
    assert report["totals"]["failed"] == 1
    assert report["cases"][0]["residual_summary"].startswith("error:")


def test_bad_bounds_usage_error():
    assert main(["verify", "--max-n", "-1"]) == 2
    assert main(["verify", "--trials", "0"]) == 2


def test_full_default_suite_small():
    # every registered identity runs clean on a small grid
    config = SuiteConfig(max_n=2, max_m=1, seed=13)
    report = run_verify(config)
    assert report["totals"]["failed"] == 0, [
        c["id"] for c in report["cases"] if not c["pass"]
    ][:5]
    idents = {c["identity"] for c in report["cases"]}
    assert len(idents) == len(json.loads(json.dumps(sorted(idents))))
    assert "adjointness" in idents and "leibniz" in idents
