import json
from fractions import Fraction

import pytest

from qrank.catalog import (
    CATALOG,
    REQUIRED_ENTRY_IDS,
    CatalogEntry,
    Instance,
    run_suite,
    verify,
)
from qrank.cli import main, parse_root_spec
from qrank.errors import UnknownName
from qrank.series import Monomial, QSeries


def test_catalog_matches_manifest():
    assert set(CATALOG) == set(REQUIRED_ENTRY_IDS)
    assert len(REQUIRED_ENTRY_IDS) == len(set(REQUIRED_ENTRY_IDS))


def test_catalog_entries_well_formed():
    for entry in CATALOG.values():
        assert entry.instances, entry.id
        assert entry.description
        assert entry.default_order > 0
        assert entry.root_order >= 1
        assert entry.puiseux_den >= 1


def test_verify_produces_reports():
    reports = verify(CATALOG["appell-half-constant"], 10)
    assert len(reports) == 1
    r = reports[0]
    assert r.verdict == "pass"
    assert r.order == "10"
    assert r.wall_ms >= 0
    doc = r.to_dict()
    assert set(doc) == {"entry", "instantiation", "order", "verdict",
                        "first_mismatch", "note", "wall_ms"}


def test_verify_reports_failure_with_mismatch():
    entry = CatalogEntry(
        "synthetic-fail", "always fails", Fraction(5),
        [Instance({}, lambda o: QSeries.one(o),
                  lambda o: QSeries.one(o) + QSeries.from_monomial(Monomial.q(2), o))])
    reports = verify(entry)
    assert reports[0].verdict == "fail"
    assert reports[0].first_mismatch["exponent"] == "2"


def test_verify_reports_non_generic():
    from qrank.appell import o_d_direct

    entry = CatalogEntry(
        "synthetic-pole", "hits a pole", Fraction(5),
        [Instance({}, lambda o: o_d_direct(1, Monomial.one(), o),
                  lambda o: QSeries.zero(o))])
    reports = verify(entry)
    assert reports[0].verdict == "non-generic"


def test_run_suite_filter_and_exit_logic():
    res = run_suite("root-*", order=1)
    assert res.all_pass
    assert res.counts["total"] == 6
    with pytest.raises(UnknownName):
        run_suite("no-such-entry-*")


def test_run_suite_deterministic():
    a = run_suite("theta-vanishing", order=6)
    b = run_suite("theta-vanishing", order=6)

    def strip(reports):
        return [{k: v for k, v in r.items() if k != "wall_ms"} for r in reports]

    assert strip(a.reports) == strip(b.reports)


def test_run_suite_parallel_matches_serial():
    a = run_suite("theta-cube-root*", order=8, jobs=1)
    b = run_suite("theta-cube-root*", order=8, jobs=2)

    def strip(reports):
        return [{k: v for k, v in r.items() if k != "wall_ms"} for r in reports]

    assert strip(a.reports) == strip(b.reports)


def test_run_suite_writes_reports(tmp_path):
    jpath = tmp_path / "run.json"
    cpath = tmp_path / "run.csv"
    run_suite("root-power-sums", order=1, json_path=str(jpath), csv_path=str(cpath))
    doc = json.loads(jpath.read_text())
    assert doc["run"]["filter"] == "root-power-sums"
    assert doc["summary"]["pass"] == 6
    assert len(doc["reports"]) == 6
    lines = cpath.read_text().splitlines()
    assert lines[0] == "entry,instantiation,order,verdict,wall_ms"
    assert len(lines) == 7


def test_vanishing_note_in_reports():
    reports = verify(CATALOG["psi-vanishing"], 20)
    assert reports[0].verdict == "pass"
    assert "truncation" in reports[0].note


# -- CLI ----------------------------------------------------------------------


def test_parse_root_spec():
    assert parse_root_spec("zeta7") == Monomial.zeta(1, 7)
    assert parse_root_spec("zeta7^3") == Monomial.zeta(3, 7)
    assert parse_root_spec("zeta7^3*q^2") == Monomial.zeta(3, 7, 2)
    assert parse_root_spec("zeta5*q^1/2") == Monomial.zeta(1, 5, Fraction(1, 2))
    assert parse_root_spec("-1") == Monomial.minus_one()
    assert parse_root_spec("1") == Monomial.one()
    with pytest.raises(ValueError):
        parse_root_spec("zeta")


def test_cli_expand(capsys):
    assert main(["expand", "--series", "J2", "--order", "5"]) == 0
    out = capsys.readouterr().out
    assert "q^2: -1" in out and "q^4: -1" in out


def test_cli_expand_od(capsys):
    assert main(["expand", "--series", "Od", "--d", "1", "--z", "zeta5",
                 "--order", "3"]) == 0
    out = capsys.readouterr().out
    assert "q^1: 2" in out


def test_cli_expand_json(capsys):
    assert main(["expand", "--series", "Od", "--d", "1", "--z", "zeta5",
                 "--order", "3", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["L"] == 5 and doc["D"] == 1 and doc["order"] == "3"
    assert [1, ["2", "0", "0", "0"]] in doc["terms"]


def test_cli_expand_unknown_series(capsys):
    assert main(["expand", "--series", "nope", "--order", "3"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_deviation_both(capsys):
    assert main(["deviation", "--d", "1", "--a", "0", "--M", "2",
                 "--order", "6", "--method", "both"]) == 0
    out = capsys.readouterr().out
    assert "agrees" in out


def test_cli_dissect(capsys):
    assert main(["dissect", "--series", "dis1-lhs", "--parts", "3",
                 "--order", "9"]) == 0
    out = capsys.readouterr().out
    assert "component 0" in out and "component 2" in out


def test_cli_verify(capsys, tmp_path):
    jpath = tmp_path / "r.json"
    code = main(["verify", "--filter", "root-power-sums", "--order", "1",
                 "--json", str(jpath)])
    out = capsys.readouterr().out
    assert code == 0
    assert "6 pass, 0 fail" in out
    assert jpath.exists()


def test_cli_tables(capsys, tmp_path):
    path = tmp_path / "t.csv"
    assert main(["tables", "--d", "1", "--maxN", "4", "--csv", str(path)]) == 0
    text = path.read_text()
    assert text.startswith("d,m,n,count")
    assert "1,0,1,2" in text


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "deviation-pair-even-even" in out
    assert "Bbar0" in out


def test_env_default_order(capsys, monkeypatch):
    monkeypatch.setenv("QRANK_DEFAULT_ORDER", "4")
    assert main(["expand", "--series", "J1"]) == 0
    out = capsys.readouterr().out
    assert "# order 4" in out
