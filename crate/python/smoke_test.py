"""Smoke test for the comvar extension module.

Build it first, e.g. `maturin build -m crates/python/Cargo.toml` and install the wheel, or
copy target/release/libcomvar.so next to this file as comvar.so.
"""

import json
import pathlib
import sys

import comvar

ROOT = pathlib.Path(__file__).resolve().parent.parent


def main():
    c3 = comvar.cycle_om(3)
    assert c3.is_com() and c3.is_om() and c3.is_simple()
    assert len(c3.topes()) == 6
    rows = c3.matrix()
    assert len(rows) == 6 and all(rows[i][i] == "1" for i in range(6))
    assert c3.det() == c3.det()

    report = json.loads(c3.verify())
    assert report["match"] and report["chainHolds"] and report["blocksHold"]

    q = (ROOT / "fixtures" / "Q.json").read_text()
    ideals = comvar.ideals_com(q)
    assert len(ideals.topes()) == 12
    formula = ideals.closed_form(signed=False)
    print("ideals(Q):", formula)
    assert "^5" in formula

    for order in ("a,b,c,d,e", "e,d,c,b,a"):
        assert sorted(ideals.exponents(order)) == sorted(ideals.exponents())

    ranking = comvar.ranking_com(q)
    assert len(ranking.topes()) == 14

    again = comvar.SignSystem.from_json(c3.to_json())
    assert again.topes() == c3.topes()

    try:
        comvar.SignSystem(["a"], ["+-"])
        raise AssertionError("length mismatch accepted")
    except ValueError as e:
        print("rejected:", e)

    print("K4:", comvar.k4_subdivision_det()[:60], "...")
    print("random:", comvar.random_com(1))
    print("ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
