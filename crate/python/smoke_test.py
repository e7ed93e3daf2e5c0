"""Smoke test for the loccodes Python bindings.

Build and install first, e.g. `maturin build --release -m crates/python/Cargo.toml`
followed by `pip install target/wheels/loccodes-*.whl`.
"""

from fractions import Fraction

import loccodes


def main():
    q4 = loccodes.Graph.hypercube(4)
    code = ["0000", "0100", "0010", "0111", "1111", "1101"]
    assert loccodes.verify(q4, code, "lid")["valid"]

    bad = loccodes.verify(loccodes.Graph.hypercube(3), ["000", "011", "100", "111"], "lid")
    assert not bad["valid"]
    assert bad["failure"]["kind"] == "unseparated_pair"

    res = loccodes.solve(loccodes.Graph.hypercube(4), "lid")
    assert res["optimal"] and res["size"] == 6

    fig2 = loccodes.Graph.from_uri("fig:2")
    assert loccodes.share(fig2, ["v1", "v2", "v3", "v4"], "v2") == Fraction(13, 6)
    assert sum(loccodes.share_profile(fig2, ["v1", "v2", "v3", "v4"]).values()) == fig2.n

    fig1 = loccodes.Graph.from_uri("fig:1")
    assert loccodes.admits(fig1, "id", 2) is not None
    assert loccodes.admits(fig1, "lid", 2) is None

    assert loccodes.lid_lower_bound(9) == 62
    assert loccodes.lid_upper_bound(3, 2) == 64
    assert len(loccodes.hamming(3)) == 16
    assert len(loccodes.hamming_lift(2, 2)) == 8
    assert len(loccodes.lift_covering_to_lid(["000", "111"])) == 8

    f6 = loccodes.explicit("f6-lid15")
    assert f6["size"] == 15

    pattern, cls = loccodes.builtin_pattern("king-lld-3/16")
    assert pattern.density == Fraction(3, 16)
    torus, members = pattern.realize(8, 8)
    assert len(members) == 12 and torus.n == 64
    assert loccodes.verify(torus, members, "lld")["valid"]

    found = loccodes.search_lattices("square", 5, 1, "covering")
    assert found is not None and found.density == Fraction(1, 5)

    rows = loccodes.paper_check("grids")
    assert rows and all(r["passed"] for r in rows)
    print(f"ok: {len(rows)} grid rows, {pattern!r}")


if __name__ == "__main__":
    main()
