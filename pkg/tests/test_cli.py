import io
import json
import subprocess
import sys

import pytest

from tessella.cli import EXIT_BUDGET, EXIT_OK, EXIT_UNTILEABLE, EXIT_USAGE, run_command
from tessella.formats import emit_region, emit_tileset
from tessella.lattice import DOMINO, Symmetry, TileSet

from regions import BUMPED_BAR, BENT_CHAIN_CENTERS, GREEDY_COUNTEREXAMPLE, MOVE2_REGION, PLUS, plus_union, rect


def _run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run_command(argv)
    out, err = capsys.readouterr()
    return code, out, err


def _file(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text.strip("\n") + "\n")
    return str(p)


GOLDEN = [
    # (picture, tileset, extra flags, exit code)
    ("##", "domino-l", [], EXIT_OK),  # top left corner, case 1
    (".#\n##", "domino-l", [], EXIT_OK),  # the lone L
    ("..#\n###\n##.", "domino-l", [], EXIT_UNTILEABLE),  # case 2 corner leading nowhere
    (MOVE2_REGION, "domino-l", [], EXIT_OK),
    (GREEDY_COUNTEREXAMPLE, "domino-l", [], EXIT_UNTILEABLE),  # the greedy's miss
    (GREEDY_COUNTEREXAMPLE, "domino-l", ["--search"], EXIT_OK),
    (GREEDY_COUNTEREXAMPLE, "domino-l", ["--exact"], EXIT_OK),
    (PLUS, "sa", [], EXIT_UNTILEABLE),
    (PLUS, "s2", [], EXIT_OK),
    (BUMPED_BAR, "sa", [], EXIT_UNTILEABLE),
    (emit_region(plus_union(BENT_CHAIN_CENTERS)), "sa", [], EXIT_UNTILEABLE),
    (BUMPED_BAR, "sa", ["--exact"], EXIT_UNTILEABLE),
    (emit_region(rect(3, 3)), "sa", [], EXIT_OK),
    (emit_region(rect(3, 3)), "domino-l", [], EXIT_UNTILEABLE),
    (emit_region(rect(6, 3)), "domino-l", [], EXIT_OK),
    (emit_region(rect(5, 1)), "s2", [], EXIT_OK),
    ("#", "s2", [], EXIT_UNTILEABLE),
]


@pytest.mark.parametrize("picture,tileset,flags,code", GOLDEN)
@pytest.mark.parametrize("command", ["check", "tile"])
def test_golden_exit_codes(tmp_path, capsys, command, picture, tileset, flags, code):
    path = _file(tmp_path, "r.txt", picture)
    got, out, err = _run(capsys, [command, "--tileset", tileset, "--in", path] + flags)
    assert got == code
    if command == "check":
        assert out.strip() == ("tileable" if code == EXIT_OK else "untileable")
    elif code == EXIT_UNTILEABLE:
        assert out == "" and "untileable" in err


@pytest.mark.parametrize("picture,tileset,flags,code", [g for g in GOLDEN if g[3] == EXIT_OK])
def test_tile_output_validates(tmp_path, capsys, monkeypatch, picture, tileset, flags, code):
    path = _file(tmp_path, "r.txt", picture)
    _, tiling, _ = _run(capsys, ["tile", "--tileset", tileset, "--in", path] + flags)
    got, out, _ = _run(capsys, ["check", "--validate", "--tileset", tileset, "--in", "-"],
                       stdin=tiling, monkeypatch=monkeypatch)
    assert (got, out.strip()) == (EXIT_OK, "valid")


def test_move2_region_tiling(tmp_path, capsys):
    path = _file(tmp_path, "r.txt", MOVE2_REGION)
    code, out, _ = _run(capsys, ["tile", "--tileset", "domino-l", "--in", path])
    assert code == EXIT_OK and out == ".abb\naacc\n"
    assert len(set(out) - set(".\n")) == 3


def test_invalid_tiling_exits_one(tmp_path, capsys):
    # JSON tilings can leave a cell bare; that is an invalid tiling
    bare = {"region": {"dim": 2, "cells": [[0, 0], [1, 0], [2, 0]]},
            "tiles": [{"name": "domino", "cells": [[0, 0], [1, 0]]}]}
    path = _file(tmp_path, "t.json", json.dumps(bare))
    code, out, _ = _run(capsys, ["check", "--validate", "--json", "--tileset", "s2", "--in", path])
    assert code == EXIT_UNTILEABLE and out.startswith("invalid: uncovered")
    # in ASCII a block of the wrong shape cannot even be read
    path = _file(tmp_path, "t.txt", "a\na")
    assert _run(capsys, ["check", "--validate", "--in", path])[0] == EXIT_USAGE


def test_json_both_ways(tmp_path, capsys):
    region = {"dim": 2, "cells": [[0, 0], [1, 0], [1, 1]]}
    path = _file(tmp_path, "r.json", json.dumps(region))
    code, out, _ = _run(capsys, ["tile", "--json", "--in", path])
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["tiles"] == [{"name": "L", "cells": [[0, 0], [1, 0], [1, 1]]}]


def test_subtiles(capsys):
    assert _run(capsys, ["subtiles", "--dim", "4", "--count"])[:2] == (EXIT_OK, "14\n")
    assert _run(capsys, ["subtiles", "--dim", "6", "--size", "5"])[:2] == (EXIT_OK, "3\n")
    code, out, _ = _run(capsys, ["subtiles", "--dim", "2"])
    assert code == EXIT_OK and len(json.loads(out)["tiles"]) == 5
    assert _run(capsys, ["subtiles", "--dim", "0"])[0] == EXIT_USAGE


def test_fsgen(tmp_path, capsys):
    code, out, _ = _run(capsys, ["fsgen", "--dim", "3"])
    assert code == EXIT_OK and len(json.loads(out)["tiles"]) == 9
    bar = TileSet((DOMINO,), Symmetry.ROTATIONS)
    path = _file(tmp_path, "g.json", emit_tileset(bar))
    code, out, _ = _run(capsys, ["fsgen", "--in", path])
    assert code == EXIT_OK and len(json.loads(out)["tiles"]) == 5


def test_fsgen_cap_exits_three(tmp_path, capsys):
    three_bar = json.dumps({"dim": 2, "symmetry": "rotations",
                            "tiles": [{"name": "bar3", "cells": [[0, 0], [1, 0], [2, 0]]}]})
    path = _file(tmp_path, "g.json", three_bar)
    code, out, err = _run(capsys, ["fsgen", "--in", path])
    assert code == EXIT_BUDGET and "caps" in err
    assert json.loads(out)["tiles"]  # the partial set is still written


def test_oracle_budget_exits_three(tmp_path, capsys):
    path = _file(tmp_path, "r.txt", emit_region(rect(40, 40)))
    assert _run(capsys, ["check", "--exact", "--tileset", "sa", "--in", path])[0] == EXIT_BUDGET


def test_enumerate_and_random(capsys):
    assert _run(capsys, ["enumerate", "--size", "5", "--count"])[:2] == (EXIT_OK, "63\n")
    code, out, _ = _run(capsys, ["enumerate", "--size", "3", "--json"])
    assert code == EXIT_OK and len(out.strip().splitlines()) == 6
    assert _run(capsys, ["enumerate", "--size", "0"])[0] == EXIT_USAGE
    a = _run(capsys, ["random", "--size", "300", "--seed", "5"])
    b = _run(capsys, ["random", "--size", "300", "--seed", "5"])
    assert a == b and a[1].count("#") == 300
    assert _run(capsys, ["random", "--size", "0"])[0] == EXIT_USAGE


def test_bench(capsys):
    code, out, _ = _run(capsys, ["bench", "--tileset", "s2", "--size", "10000", "--count", "2", "--json"])
    assert code == EXIT_OK
    obj = json.loads(out)
    assert len(obj["records"]) == 4 and set(obj["medians"]) == {"1000", "10000"}
    assert _run(capsys, ["bench", "--tileset", "sa"])[0] == EXIT_USAGE
    assert _run(capsys, ["bench", "--size", "10"])[0] == EXIT_USAGE


def test_render(tmp_path, capsys):
    path = _file(tmp_path, "t.txt", ".abb\naacc")
    code, out, _ = _run(capsys, ["render", "--in", path])
    assert code == EXIT_OK and out.startswith("<svg") and out.count("<rect") == 7
    code, out, _ = _run(capsys, ["render", "--format", "ascii", "--in", path])
    # letters follow placement order, so they may be handed out afresh
    assert code == EXIT_OK and out in (".abb\naacc\n", ".acc\naabb\n")


def test_output_file_and_determinism(tmp_path, capsys):
    region = _file(tmp_path, "r.txt", emit_region(rect(9, 7)))
    outs = []
    for i in range(2):
        target = tmp_path / f"o{i}.txt"
        assert _run(capsys, ["tile", "--tileset", "sa", "--in", region, "--out", str(target)])[0] == EXIT_OK
        outs.append(target.read_bytes())
    assert outs[0] == outs[1] and outs[0]


@pytest.mark.parametrize("argv", [
    [], ["paint"], ["check", "--in", "/no/such/file"], ["check", "--tileset", "/no/such/set"],
    ["check", "--tileset", "s2", "--in", "-"],
])
def test_usage_errors(capsys, monkeypatch, argv):
    code, _, err = _run(capsys, argv, stdin="#.#\n", monkeypatch=monkeypatch)
    assert code == EXIT_USAGE and err


def test_bad_region_text(tmp_path, capsys):
    path = _file(tmp_path, "r.txt", "#?#")
    code, _, err = _run(capsys, ["check", "--in", path])
    assert code == EXIT_USAGE and "error" in err


def test_console_entry_point(tmp_path):
    path = _file(tmp_path, "r.txt", PLUS)
    proc = subprocess.run([sys.executable, "-m", "tessella.cli", "check", "--tileset", "sa", "--in", path],
                          capture_output=True, text=True)
    assert proc.returncode == EXIT_UNTILEABLE and proc.stdout.strip() == "untileable"
