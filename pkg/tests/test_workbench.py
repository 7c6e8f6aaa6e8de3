import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from gradedbass.workbench import (
    DimensionMismatch,
    ParseError,
    RunOptions,
    UnknownCatalogEntry,
    UnknownName,
    catalog,
    parse_script,
    render,
    run_text,
)
from gradedbass.workbench.cli import main


def test_valid_definitions():
    s = parse_script("ring R = F32003[x,y]/(x^2)\nmodule M over R = cokernel [[y]]\n")
    assert s.rings["R"].nvars == 2
    assert s.modules["M"].rank == 1


def test_non_homogeneous_is_parse_error():
    with pytest.raises(ParseError) as e:
        parse_script("ring R = F32003[x]/(x^2+x)")
    assert "NonHomogeneous" in str(e.value)
    assert e.value.line == 1 and e.value.col > 1


@pytest.mark.parametrize("text, cls, line, col", [
    ("ring R = k[x]\nbetti Q\n", UnknownName, 2, 7),
    ("ring R = k[x]\nmodule M over S = free\n", UnknownName, 2, 15),
    ("ring R = k[x,y]\nmodule M over R = cokernel [[x, y], [x]]\n", DimensionMismatch, 2, None),
    ("ring R = k[x]\nmodule A over R = free (0, 0)\nmodule B over R = free\nmap f : A -> B = [[x]]\n",
     DimensionMismatch, 4, None),
    ("rng R = k[x]\n", ParseError, 1, 1),
    ("ring R = k[x]/(x^2 + $)\n", ParseError, 1, 22),
    ("ring R = k[x]\nring R = k[y]\n", ParseError, 2, 6),
])
def test_diagnostics_have_positions(text, cls, line, col):
    with pytest.raises(cls) as e:
        parse_script(text)
    assert e.value.line == line
    if col is not None:
        assert e.value.col == col


def test_render_parse_identity_on_catalog():
    for name in catalog():
        text = catalog(name)
        once = render(parse_script(text))
        assert render(parse_script(once)) == once


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(["x^2", "x*y", "y^3", "x^2*y", "y^2"]), min_size=0, max_size=3, unique=True),
       st.sampled_from(["", " ", "  "]))
def test_render_normalizes_whitespace(gens, pad):
    ideal = f"/({(',' + pad).join(gens)})" if gens else ""
    text = f"ring{pad} R = k[x,{pad}y]{ideal}\nmodule k over R = residue\nbetti  k  3\n"
    once = render(parse_script(text))
    assert render(parse_script(once)) == once
    assert once.splitlines()[-1] == "betti k 3"


def test_exit_codes():
    assert run_text(catalog("max-ideal-kxy")).exit_code == 0
    assert run_text("ring R = k[x]\nmodule F over R = free\nbetti F 2 expect 1,1,0\n").exit_code == 1
    assert run_text("ring R = k[x]/(x^2+x)\n").exit_code == 2
    cap = "ring R = k[x,y]\nmodule F over R = free\nbass F 3\n"
    rep = run_text(cap, RunOptions(degree_cap=3))
    assert rep.exit_code == 3 and rep.commands[0].verdict == "undetermined"
    # hypothesis violations are input errors unless expected
    bad = "ring R = k[x]\nmodule F over R = free\nmodule t over R = top F\nmap p : F -> t = natural\n"
    assert run_text(bad + "verify zero-map p\n").exit_code == 2
    assert run_text(bad + "verify zero-map p expect violated\n").exit_code == 0


def test_exit_code_priority():
    fail = "betti F 1 expect 9\n"
    undet = "bass F 3\n"
    head = "ring R = k[x,y]\nmodule F over R = free\n"
    assert run_text(head + fail + undet, RunOptions(degree_cap=3)).exit_code == 1
    err = "verify zero-map q\n"
    with_map = head + "module t over R = top F\nmap q : F -> t = natural\n"
    assert run_text(with_map + fail + err).exit_code == 2


def test_remark_table_in_report():
    rep = run_text(catalog("max-ideal-kxy"))
    bass = [c for c in rep.commands if c.name == "bass"][0]
    assert bass.result["values"][:4] == [0, 1, 2, 0]


def test_json_schema_and_determinism():
    text = catalog("hypersurface-dim1")
    a = run_text(text).to_json()
    b = run_text(text).to_json()
    assert a == b
    doc = json.loads(a)
    assert set(doc) >= {"version", "commands"}
    for c in doc["commands"]:
        assert set(c) == {"name", "inputs", "result", "verdict", "window", "millis"}
        assert c["millis"] is None
    timed = json.loads(run_text(text, RunOptions(timings=True)).to_json())
    assert all(isinstance(c["millis"], float) for c in timed["commands"])


def test_series_rendered_as_pairs():
    rep = run_text("ring R = k[x,y]\nmodule k over R = residue\nseries poincare k 4\n")
    assert rep.commands[0].result["series"] == [[0, 1], [1, 2], [2, 1]]


def test_catalog_listing():
    names = catalog()
    for required in ("regular-2", "hypersurface-dim1", "fiber-x2-y2", "max-ideal-kxy", "bass-decomposition-dim1"):
        assert required in names
    assert catalog("remark-3.4-kxy") == catalog("max-ideal-kxy")
    assert run_text(catalog("thm-3.1-hypersurface")).exit_code == 0
    with pytest.raises(UnknownCatalogEntry):
        catalog("no-such-entry")


def test_field_flag():
    from gradedbass import Field
    rep = run_text("ring R = k[x,y]/(x^2)\nmodule k over R = residue\nbetti k 3 expect 1,2,2,2\n",
                   RunOptions(field=Field.rationals()))
    assert rep.exit_code == 0


def test_cli_main(tmp_path, capsys):
    script = tmp_path / "s.gb"
    script.write_text("ring R = k[x]/(x^2)\nmodule k over R = residue\nbetti k 3 expect 1,1,1,1\n")
    assert main(["run", str(script)]) == 0
    assert "[pass]" in capsys.readouterr().out
    out = tmp_path / "r.json"
    assert main(["run", str(script), "--json", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["commands"][0]["verdict"] == "pass"
    assert main(["catalog", "no-such-entry"]) == 2
    assert main(["catalog"]) == 0
    assert "regular-2" in capsys.readouterr().out
    bad = tmp_path / "bad.gb"
    bad.write_text("ring R = k[x]/(x+x^2)\n")
    assert main(["run", str(bad)]) == 2
    assert main(["fmt", str(script)]) == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gradedbass", "catalog", "regular-2", "--run"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stdout + proc.stderr
